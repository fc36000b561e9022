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
 *   Deterministic discrete-event simulation of 802.15.4 PANs, a wired IPv6
 *   segment and the gateways between them.
 */

#ifndef SIXLO_NETSIM_HPP_
#define SIXLO_NETSIM_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sixlo/gateway.hpp"

namespace sixlo {

enum class NodeRole : uint8_t
{
    kCoordinator,
    kFfd,
    kRfd,
};

const char *NodeRoleName(NodeRole aRole);
NodeRole    ParseNodeRole(std::string_view aText);

enum class StackKind : uint8_t
{
    kLowpan, ///< 6LoWPAN with mesh-under forwarding
    kZigbee, ///< synthetic NWK frames routed on short addresses
    kRaw,    ///< single-hop MAC payloads, used by devid nodes
};

const char *StackKindName(StackKind aStack);
StackKind   ParseStackKind(std::string_view aText);

/// Periodic duty cycle starting awake at t = 0. A zero sleep period means always awake.
struct SleepSchedule
{
    double mAwakeMs  = 0;
    double mAsleepMs = 0;

    bool   IsAwake(double aNow) const;
    double NextWake(double aNow) const;
};

struct PanConfig
{
    uint16_t                  mPanId    = 0;
    bool                      mExtended = false; ///< link addressing with EUI-64 instead of short addresses
    StackKind                 mStack    = StackKind::kLowpan;
    SecurityMode              mSecurity = SecurityMode::kNone;
    std::optional<Ipv6Prefix> mPrefix;
};

struct NodeConfig
{
    std::string   mName;
    uint16_t      mPanId = 0;
    NodeRole      mRole  = NodeRole::kFfd;
    uint16_t      mShort = 0;
    Eui64         mExt;
    SleepSchedule mSleep;
    double        mResponseDelay = 0; ///< seconds before a coordinator answers a discovery query
};

struct HostConfig
{
    std::string mName;
    Ipv6Address mAddress;
};

struct GatewayConfig
{
    std::string                                  mName;
    std::string                                  mNode; ///< radio node hosting the gateway
    GatewayMode                                  mMode = GatewayMode::kSixLowpanBorder;
    Ipv6Address                                  mWiredAddress;
    std::optional<Ipv6Prefix>                    mPrefix; ///< defaults to the PAN prefix
    uint16_t                                     mPoolFirst  = 0x8000;
    uint16_t                                     mPoolSize   = 64;
    double                                       mTtl        = kDefaultDiscoveryTtl;
    std::size_t                                  mPadSize    = kDefaultPadSize;
    uint16_t                                     mTunnelPort = kDefaultTunnelPort;
    std::optional<Ipv6Address>                   mTunnelPeer;
    std::vector<std::string>                     mSubscribers;
    std::vector<std::pair<uint16_t, std::string>> mDevids;   ///< devid to node or host name
    std::vector<std::pair<uint16_t, std::string>> mServices; ///< wired discovery services to host name
};

enum class SendKind : uint8_t
{
    kUdp,
    kBroadcast,
    kZigbee,
    kDevid,
    kDiscover,
};

const char *SendKindName(SendKind aKind);
SendKind    ParseSendKind(std::string_view aText);

struct SendSpec
{
    double      mAt = 0;
    std::string mFrom;
    std::string mTo; ///< node, host or gateway name; unused for broadcasts
    SendKind    mKind = SendKind::kUdp;
    Bytes       mPayload;
    uint16_t    mSrcPort = 0xf0b1;
    uint16_t    mDstPort = 0xf0b2;
    uint8_t     mHops    = kMaxHopsLeft;
    uint16_t    mKey     = 0; ///< PAN ID or service number for discovery
};

struct TraceRecord
{
    double      mTime = 0;
    std::string mNode;
    std::string mKind; ///< Tx, Rx, Fwd, Drop, Deliver, Defer, FragStart, ReasmComplete, GwTranslate, WiredTx, WiredRx
    std::string mDetail;
    std::size_t mBytes = 0;
    Bytes       mData;
};

/// One line per record: time, node, kind, detail, byte count, hex prefix; tab separated.
std::string FormatTrace(const std::vector<TraceRecord> &aTrace);

struct Delivery
{
    double      mTime = 0;
    std::string mAt;
    std::string mFrom;
    SendKind    mKind = SendKind::kUdp;
    Bytes       mPayload;
};

struct Metrics
{
    uint64_t                        mAppSent            = 0;
    uint64_t                        mAppDelivered       = 0;
    uint64_t                        mBroadcastSent      = 0;
    uint64_t                        mBroadcastDelivered = 0;
    uint64_t                        mFramesTx           = 0;
    uint64_t                        mFramesRx           = 0;
    uint64_t                        mFragmentsTx        = 0;
    uint64_t                        mReassemblies       = 0;
    uint64_t                        mForwarded          = 0;
    uint64_t                        mWiredPackets       = 0;
    uint64_t                        mTranslations       = 0;
    uint64_t                        mHeaderOctets       = 0; ///< frame octets not carrying application data
    uint64_t                        mHeaderFrames       = 0;
    uint64_t                        mUncompressedHeader = 0; ///< IPv6 + transport header octets before compression
    uint64_t                        mCompressedHeader   = 0;
    std::map<std::string, uint64_t> mDrops;

    double DeliveryRatio(void) const;
    double MeanHeaderOctets(void) const;
    double CompressionRatio(void) const;

    /// `key value` lines in a fixed order.
    std::string ToText(void) const;
};

class World
{
public:
    explicit World(uint64_t aSeed = 1);
    ~World(void);

    World(World &&) noexcept;
    World &operator=(World &&) noexcept;

    void SetWiredLatency(double aSeconds);

    // Configuration. Every node, host or gateway name must be unique.
    void AddPan(const PanConfig &aPan);
    void AddNode(const NodeConfig &aNode);
    void AddHost(const HostConfig &aHost);
    void AddLink(const std::string &aA, const std::string &aB, double aLoss, BandId aBand);
    void AddRoute(const std::string &aAt, const std::string &aTo, const std::string &aVia);
    void AddGateway(const GatewayConfig &aGateway);
    void Schedule(const SendSpec &aSend);

    /// Processes every event with time <= aEnd.
    void   RunUntil(double aEnd);
    double Now(void) const;

    const std::vector<TraceRecord> &Trace(void) const;
    const std::vector<Delivery>    &Deliveries(void) const;
    const Metrics                  &GetMetrics(void) const;

    NodeAddress LinkAddressOf(const std::string &aNode) const;
    Ipv6Address AddressOf(const std::string &aName) const;
    std::size_t ReassemblyBuffers(const std::string &aNode) const;

private:
    struct Impl;
    std::unique_ptr<Impl> mImpl;
};

} // namespace sixlo

#endif // SIXLO_NETSIM_HPP_
