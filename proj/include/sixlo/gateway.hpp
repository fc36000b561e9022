/*
 *    Copyright 2026 The sixlo Authors. All Rights Reserved.
 *
 *    Licensed under the Apache License, Version 2.0 (the "License");
 *    you may not use this file except in compliance with the License.
 *    You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *    Unless required by applicable law or agreed to in writing, software
 *    distributed under the License is distributed on an "AS IS" BASIS,
 *    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *    See the License for the specific language governing permissions and
 *    limitations under the License.
 */

/**
 * @file
 *   Gateway translation between a LoWPAN and a wired IPv6 domain.
 *
 *   Everything here is single-owner state plus pure transforms; the simulator
 *   decides when each operation runs.
 */

#ifndef SIXLO_GATEWAY_HPP_
#define SIXLO_GATEWAY_HPP_

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "sixlo/addressing.hpp"
#include "sixlo/lowpan.hpp"
#include "sixlo/reassembly.hpp"

namespace sixlo {

enum class GatewayMode : uint8_t
{
    kSixLowpanBorder,
    kDevidTranslation,
    kZigbeeMapping,
    kZedBridge,
    kDual, ///< border and mapping behind one radio, selected per frame by Demux()
};

const char *GatewayModeName(GatewayMode aMode);

/// Accepts the long names above and the short forms sixlowpan/devid/zigbee/bridge/dual.
GatewayMode ParseGatewayMode(std::string_view aText);

enum class FrameFamily : uint8_t
{
    kLowpan,
    kZigbeeNwk,
};

/**
 * Classifies a MAC payload by its first octet.
 *
 * 00xxxxxx is a Zigbee NWK frame; any recognized dispatch is 6LoWPAN.
 * Throws kInvalidArgument when empty and kUnknownDispatch for reserved values.
 */
FrameFamily Demux(ByteSpan aPayload);

// Synthetic Zigbee network-layer frame.

constexpr uint16_t    kNwkFrameControlData    = 0x0008;
constexpr uint16_t    kNwkFrameControlCommand = 0x0009;
constexpr uint16_t    kNwkBroadcast           = 0xffff;
constexpr std::size_t kNwkHeaderSize          = 8;

struct NwkFrame
{
    uint16_t mFrameControl = kNwkFrameControlData;
    uint16_t mDst          = 0;
    uint16_t mSrc          = 0;
    uint8_t  mRadius       = 0;
    uint8_t  mSequence     = 0;
    Bytes    mPayload;

    bool operator==(const NwkFrame &) const = default;
};

/// Throws kInvalidArgument when the frame control would not classify as NotLowpan.
Bytes EncodeNwk(const NwkFrame &aFrame);

/// Throws kMalformedHeader.
NwkFrame DecodeNwk(ByteSpan aBytes);

// devid translation.

constexpr std::size_t kAppHeaderSize = 4;
constexpr uint16_t    kDevidUdpPort  = 5750;

struct AppHeader
{
    uint16_t mSrcDevid = 0;
    uint16_t mDstDevid = 0;

    bool operator==(const AppHeader &) const = default;
};

Bytes     EncodeAppHeader(const AppHeader &aHeader);
AppHeader DecodeAppHeader(ByteSpan aBytes); ///< throws kMalformedHeader

using DevidEndpoint = std::variant<Ipv6Address, NodeAddress>;

std::string ToString(const DevidEndpoint &aEndpoint);

class DevidRegistry
{
public:
    /// Throws kDuplicateDevid.
    void Register(uint16_t aDevid, const DevidEndpoint &aEndpoint);

    /// Throws kUnknownDevid.
    const DevidEndpoint &Resolve(uint16_t aDevid) const;

    std::optional<uint16_t> Find(const DevidEndpoint &aEndpoint) const;
    std::size_t             Size(void) const { return mEntries.size(); }

private:
    std::map<uint16_t, DevidEndpoint> mEntries;
};

/// Application-level translator: terminates IP at the gateway and keeps only the payload.
class DevidTranslator
{
public:
    DevidTranslator(const Ipv6Address &aWiredAddress,
                    const NodeAddress &aLinkAddress,
                    uint16_t           aPanId,
                    SecurityMode       aSecurity);

    DevidRegistry       &Registry(void) { return mRegistry; }
    const DevidRegistry &Registry(void) const { return mRegistry; }

    /// 802.15.4 frame from a node to a UDP packet from the gateway. Throws kUnknownDevid.
    Ipv6Packet ToWired(const MacFrame &aFrame) const;

    /// Wired UDP packet to a single 802.15.4 frame. Throws kUnknownDevid or kNoFragmentation.
    MacFrame ToWpan(const Ipv6Packet &aPacket, uint8_t aSequence) const;

private:
    DevidRegistry mRegistry;
    Ipv6Address   mWiredAddress;
    NodeAddress   mLinkAddress;
    uint16_t      mPanId;
    SecurityMode  mSecurity;
};

// Zigbee mapping.

constexpr std::size_t kMaxAplSize     = 94;
constexpr std::size_t kDefaultPadSize = kIpv6MinMtu - kIpv6HeaderSize - kUdpHeaderSize;
constexpr uint16_t    kMappingUdpPort = 5751;
constexpr uint16_t    kRelayUdpPort   = 5752; ///< broadcast payloads re-emitted to wired subscribers

/// Delegated prefix followed by the extended address as is.
Ipv6Address PseudoIpv6(const Ipv6Prefix &aPrefix, const Eui64 &aExt);

class MappingTable
{
public:
    MappingTable(const Ipv6Prefix &aPrefix, uint16_t aPanId, uint16_t aPoolFirst, uint16_t aPoolSize);

    const Ipv6Prefix &Prefix(void) const { return mPrefix; }

    /// Idempotent for a given extended address.
    Ipv6Address          AssignPseudo(const Eui64 &aExt);
    std::optional<Eui64> LookupPseudo(const Ipv6Address &aAddress) const;

    /// Idempotent for a given host. Throws kPoolExhausted.
    Short16                    AssignShort(const Ipv6Address &aHost);
    void                       ReleaseShort(const Ipv6Address &aHost);
    std::optional<Ipv6Address> LookupShort(uint16_t aShort) const;

private:
    Ipv6Prefix                       mPrefix;
    uint16_t                         mPanId;
    uint16_t                         mPoolFirst;
    uint16_t                         mPoolSize;
    std::map<Ipv6Address, Eui64>     mPseudo;
    std::map<uint16_t, Ipv6Address>  mShortToHost;
    std::map<Ipv6Address, uint16_t>  mHostToShort;
};

/// Length octet, data, zero fill up to aPadSize. Throws kAplTooLarge.
Bytes PadTransform(ByteSpan aApl, std::size_t aPadSize = kDefaultPadSize);

/// Reads only the length octet. Throws kMalformedHeader.
Bytes StripTransform(ByteSpan aWired);

// Service discovery between the two domains.

constexpr double   kDefaultDiscoveryTtl = 60.0;
constexpr uint16_t kDiscoveryUdpPort    = 1900;
constexpr uint8_t  kDiscoveryQuery      = 0xd0;
constexpr uint8_t  kDiscoveryResponse   = 0xd1;

struct DiscoveryMessage
{
    uint8_t  mType    = kDiscoveryQuery;
    uint32_t mQueryId = 0;
    uint16_t mKey     = 0; ///< PAN ID for wired queries, service number for LoWPAN queries

    bool operator==(const DiscoveryMessage &) const = default;
};

Bytes            EncodeDiscovery(const DiscoveryMessage &aMessage);
DiscoveryMessage DecodeDiscovery(ByteSpan aBytes); ///< throws kMalformedHeader

using Requester = std::variant<Ipv6Address, NodeAddress>;

class DiscoveryTranslator
{
public:
    explicit DiscoveryTranslator(double aTtl = kDefaultDiscoveryTtl);

    void AddPan(uint16_t aPanId, const NodeAddress &aCoordinator);
    void AddWiredService(uint16_t aService, const Ipv6Address &aProvider);

    /// Wired query for a PAN; returns the coordinator that receives it. Throws kUnknownPanId.
    NodeAddress TranslateWiredQuery(const DiscoveryMessage &aQuery, const Ipv6Address &aHost, double aNow);

    /// LoWPAN query for a wired service; returns its provider. Throws kNoSuchNode.
    Ipv6Address TranslateWpanQuery(const DiscoveryMessage &aQuery, const NodeAddress &aNode, double aNow);

    /// Consumes the record. Throws kStaleRecord when missing or older than the TTL.
    Requester TranslateResponse(const DiscoveryMessage &aResponse, double aNow);

    std::size_t Pending(void) const { return mRecords.size(); }

private:
    struct Record
    {
        Requester mRequester;
        double    mCreatedAt;
    };

    double                         mTtl;
    std::map<uint16_t, NodeAddress> mPans;
    std::map<uint16_t, Ipv6Address> mServices;
    std::map<uint32_t, Record>      mRecords;
};

// Zigbee bridge over UDP.

constexpr uint16_t kDefaultTunnelPort = 7654;

struct Tunnel
{
    Ipv6Address mLocal;
    Ipv6Address mPeer;
    uint16_t    mPort = kDefaultTunnelPort;
};

Ipv6Packet BridgeEncapsulate(const NwkFrame &aFrame, const Tunnel &aTunnel);

/// Throws kNotTunnelTraffic unless the packet is UDP to aPort.
NwkFrame BridgeDecapsulate(const Ipv6Packet &aPacket, uint16_t aPort);

// IP-layer border gateway.

class BorderGateway
{
public:
    BorderGateway(const Ipv6Prefix &aPrefix, const NodeAddress &aLinkAddress, SecurityMode aSecurity);

    const Ipv6Prefix  &Prefix(void) const { return mPrefix; }
    const NodeAddress &LinkAddress(void) const { return mLinkAddress; }

    void AddNode(const NodeAddress &aNode);

    /// Global address of an attached node.
    Ipv6Address AddressOf(const NodeAddress &aNode) const;

    /// Attached node owning aAddress. Throws kNoSuchNode.
    NodeAddress Resolve(const Ipv6Address &aAddress) const;

    /// Decompresses a complete datagram; the packet is forwarded unchanged.
    Ipv6Packet LowpanToWired(ByteSpan aDatagram, const NodeAddress &aLinkSrc) const;

    struct Downlink
    {
        NodeAddress        mDestination;
        std::vector<Bytes> mFrames; ///< MAC payloads
        std::size_t        mDatagramSize = 0;
    };

    /**
     * Compresses and fragments a wired packet toward an attached node.
     *
     * With aMeshHops set every frame starts with a mesh header from the
     * gateway to the node and the fragment budget shrinks by its size.
     */
    Downlink WiredToLowpan(const Ipv6Packet          &aPacket,
                           std::optional<uint8_t>     aMeshHops,
                           FragmentationContext      &aContext) const;

private:
    Ipv6Prefix              mPrefix;
    NodeAddress             mLinkAddress;
    SecurityMode            mSecurity;
    std::vector<NodeAddress> mNodes;
};

} // namespace sixlo

#endif // SIXLO_GATEWAY_HPP_
