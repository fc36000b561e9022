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

#include "sixlo/gateway.hpp"

#include <algorithm>

namespace sixlo {

namespace {

struct ModeName
{
    GatewayMode mMode;
    const char *mName;
    const char *mShort;
};

constexpr ModeName kModeNames[] = {
    {GatewayMode::kSixLowpanBorder, "SixLowpanBorder", "sixlowpan"},
    {GatewayMode::kDevidTranslation, "DevidTranslation", "devid"},
    {GatewayMode::kZigbeeMapping, "ZigbeeMapping", "zigbee"},
    {GatewayMode::kZedBridge, "ZedBridge", "bridge"},
    {GatewayMode::kDual, "Dual", "dual"},
};

} // namespace

const char *GatewayModeName(GatewayMode aMode)
{
    for (const ModeName &entry : kModeNames)
    {
        if (entry.mMode == aMode)
        {
            return entry.mName;
        }
    }
    return "?";
}

GatewayMode ParseGatewayMode(std::string_view aText)
{
    for (const ModeName &entry : kModeNames)
    {
        if (aText == entry.mName || aText == entry.mShort)
        {
            return entry.mMode;
        }
    }
    Fail(Errc::kInvalidArgument, "unknown gateway mode '" + std::string(aText) + "'");
}

FrameFamily Demux(ByteSpan aPayload)
{
    Require(!aPayload.empty(), Errc::kInvalidArgument, "empty frame payload");

    switch (ParseDispatch(aPayload[0]).mKind)
    {
    case DispatchKind::kNotLowpan:
        return FrameFamily::kZigbeeNwk;
    case DispatchKind::kUnknown:
        Fail(Errc::kUnknownDispatch, "reserved dispatch " + ToHex(aPayload.first(1)));
    default:
        return FrameFamily::kLowpan;
    }
}

//---------------------------------------------------------------------------------------------------------------------
// NwkFrame

Bytes EncodeNwk(const NwkFrame &aFrame)
{
    Require((aFrame.mFrameControl & 0xc0) == 0, Errc::kInvalidArgument, "NWK frame control must start with 00");

    Bytes out;
    ByteWriter(out)
        .U16Le(aFrame.mFrameControl)
        .U16Le(aFrame.mDst)
        .U16Le(aFrame.mSrc)
        .U8(aFrame.mRadius)
        .U8(aFrame.mSequence)
        .Append(aFrame.mPayload);
    return out;
}

NwkFrame DecodeNwk(ByteSpan aBytes)
{
    ByteReader reader(aBytes, Errc::kMalformedHeader);
    NwkFrame   frame;

    frame.mFrameControl = reader.U16Le();
    Require((frame.mFrameControl & 0xc0) == 0, Errc::kMalformedHeader, "not a NWK frame");
    frame.mDst      = reader.U16Le();
    frame.mSrc      = reader.U16Le();
    frame.mRadius   = reader.U8();
    frame.mSequence = reader.U8();
    auto rest       = reader.Rest();
    frame.mPayload.assign(rest.begin(), rest.end());
    return frame;
}

//---------------------------------------------------------------------------------------------------------------------
// devid translation

Bytes EncodeAppHeader(const AppHeader &aHeader)
{
    Bytes out;
    ByteWriter(out).U16(aHeader.mSrcDevid).U16(aHeader.mDstDevid);
    return out;
}

AppHeader DecodeAppHeader(ByteSpan aBytes)
{
    ByteReader reader(aBytes, Errc::kMalformedHeader);
    AppHeader  header;

    header.mSrcDevid = reader.U16();
    header.mDstDevid = reader.U16();
    return header;
}

std::string ToString(const DevidEndpoint &aEndpoint)
{
    if (const auto *address = std::get_if<Ipv6Address>(&aEndpoint))
    {
        return address->ToString();
    }
    return ToString(std::get<NodeAddress>(aEndpoint));
}

void DevidRegistry::Register(uint16_t aDevid, const DevidEndpoint &aEndpoint)
{
    if (!mEntries.emplace(aDevid, aEndpoint).second)
    {
        Fail(Errc::kDuplicateDevid, "devid " + std::to_string(aDevid) + " already registered");
    }
}

const DevidEndpoint &DevidRegistry::Resolve(uint16_t aDevid) const
{
    auto it = mEntries.find(aDevid);

    if (it == mEntries.end())
    {
        Fail(Errc::kUnknownDevid, "devid " + std::to_string(aDevid) + " is not registered");
    }
    return it->second;
}

std::optional<uint16_t> DevidRegistry::Find(const DevidEndpoint &aEndpoint) const
{
    for (const auto &[devid, endpoint] : mEntries)
    {
        if (endpoint == aEndpoint)
        {
            return devid;
        }
    }
    return std::nullopt;
}

DevidTranslator::DevidTranslator(const Ipv6Address &aWiredAddress,
                                 const NodeAddress &aLinkAddress,
                                 uint16_t           aPanId,
                                 SecurityMode       aSecurity)
    : mWiredAddress(aWiredAddress)
    , mLinkAddress(aLinkAddress)
    , mPanId(aPanId)
    , mSecurity(aSecurity)
{
}

Ipv6Packet DevidTranslator::ToWired(const MacFrame &aFrame) const
{
    AppHeader header = DecodeAppHeader(aFrame.mPayload);

    mRegistry.Resolve(header.mSrcDevid);
    const auto *host = std::get_if<Ipv6Address>(&mRegistry.Resolve(header.mDstDevid));

    if (host == nullptr)
    {
        Fail(Errc::kUnknownDevid, "devid " + std::to_string(header.mDstDevid) + " is not a wired endpoint");
    }
    return MakeUdpPacket(mWiredAddress, *host, kDevidUdpPort, kDevidUdpPort, aFrame.mPayload);
}

MacFrame DevidTranslator::ToWpan(const Ipv6Packet &aPacket, uint8_t aSequence) const
{
    Require(aPacket.mNextHeader == kProtoUdp, Errc::kInvalidArgument, "devid traffic must be UDP");

    UdpDatagram udp    = DecodeUdp(aPacket.mPayload);
    AppHeader   header = DecodeAppHeader(udp.mPayload);
    const auto *node   = std::get_if<NodeAddress>(&mRegistry.Resolve(header.mDstDevid));

    if (node == nullptr)
    {
        Fail(Errc::kUnknownDevid, "devid " + std::to_string(header.mDstDevid) + " is not a LoWPAN endpoint");
    }
    if (udp.mPayload.size() > MacPayloadBudget(mSecurity))
    {
        Fail(Errc::kNoFragmentation, std::to_string(udp.mPayload.size()) + "-octet payload exceeds the " +
                                         std::to_string(MacPayloadBudget(mSecurity)) + "-octet frame budget");
    }

    MacFrame frame;
    frame.mSequence = aSequence;
    frame.mPanId    = mPanId;
    frame.mSrc      = mLinkAddress;
    frame.mDst      = *node;
    frame.mSecurity = mSecurity;
    frame.mPayload  = std::move(udp.mPayload);
    return frame;
}

//---------------------------------------------------------------------------------------------------------------------
// Zigbee mapping

Ipv6Address PseudoIpv6(const Ipv6Prefix &aPrefix, const Eui64 &aExt)
{
    Ipv6Address address;

    std::copy(aPrefix.mBytes.begin(), aPrefix.mBytes.end(), address.mBytes.begin());
    for (int i = 0; i < 8; i++)
    {
        address.mBytes[8 + i] = static_cast<uint8_t>(aExt.mValue >> (56 - 8 * i));
    }
    return address;
}

MappingTable::MappingTable(const Ipv6Prefix &aPrefix, uint16_t aPanId, uint16_t aPoolFirst, uint16_t aPoolSize)
    : mPrefix(aPrefix)
    , mPanId(aPanId)
    , mPoolFirst(aPoolFirst)
    , mPoolSize(aPoolSize)
{
    Require(aPoolFirst + aPoolSize <= 0xfffe, Errc::kInvalidArgument, "short-address pool overlaps 0xfffe/0xffff");
}

Ipv6Address MappingTable::AssignPseudo(const Eui64 &aExt)
{
    Ipv6Address pseudo = PseudoIpv6(mPrefix, aExt);

    mPseudo.emplace(pseudo, aExt);
    return pseudo;
}

std::optional<Eui64> MappingTable::LookupPseudo(const Ipv6Address &aAddress) const
{
    auto it = mPseudo.find(aAddress);
    return it == mPseudo.end() ? std::nullopt : std::optional(it->second);
}

Short16 MappingTable::AssignShort(const Ipv6Address &aHost)
{
    if (auto it = mHostToShort.find(aHost); it != mHostToShort.end())
    {
        return Short16{mPanId, it->second};
    }

    for (uint32_t i = 0; i < mPoolSize; i++)
    {
        uint16_t candidate = static_cast<uint16_t>(mPoolFirst + i);

        if (!mShortToHost.contains(candidate))
        {
            mShortToHost.emplace(candidate, aHost);
            mHostToShort.emplace(aHost, candidate);
            return Short16{mPanId, candidate};
        }
    }
    Fail(Errc::kPoolExhausted, "no free short address for " + aHost.ToString());
}

void MappingTable::ReleaseShort(const Ipv6Address &aHost)
{
    if (auto it = mHostToShort.find(aHost); it != mHostToShort.end())
    {
        mShortToHost.erase(it->second);
        mHostToShort.erase(it);
    }
}

std::optional<Ipv6Address> MappingTable::LookupShort(uint16_t aShort) const
{
    auto it = mShortToHost.find(aShort);
    return it == mShortToHost.end() ? std::nullopt : std::optional(it->second);
}

Bytes PadTransform(ByteSpan aApl, std::size_t aPadSize)
{
    if (aApl.size() > kMaxAplSize)
    {
        Fail(Errc::kAplTooLarge, std::to_string(aApl.size()) + " octets of APL data, limit is 94");
    }
    Require(aPadSize > kMaxAplSize, Errc::kInvalidArgument, "pad size must exceed 94 octets");

    Bytes out;
    out.reserve(aPadSize);
    out.push_back(static_cast<uint8_t>(aApl.size()));
    out.insert(out.end(), aApl.begin(), aApl.end());
    out.resize(aPadSize, 0);
    return out;
}

Bytes StripTransform(ByteSpan aWired)
{
    Require(!aWired.empty(), Errc::kMalformedHeader, "empty wired payload");

    std::size_t length = aWired[0];

    Require(length <= kMaxAplSize && 1 + length <= aWired.size(), Errc::kMalformedHeader, "bad APL length prefix");
    return Bytes(aWired.begin() + 1, aWired.begin() + 1 + static_cast<std::ptrdiff_t>(length));
}

//---------------------------------------------------------------------------------------------------------------------
// Service discovery

Bytes EncodeDiscovery(const DiscoveryMessage &aMessage)
{
    Bytes out;
    ByteWriter(out).U8(aMessage.mType).U32(aMessage.mQueryId).U16(aMessage.mKey);
    return out;
}

DiscoveryMessage DecodeDiscovery(ByteSpan aBytes)
{
    ByteReader       reader(aBytes, Errc::kMalformedHeader);
    DiscoveryMessage message;

    message.mType = reader.U8();
    Require(message.mType == kDiscoveryQuery || message.mType == kDiscoveryResponse, Errc::kMalformedHeader,
            "not a discovery message");
    message.mQueryId = reader.U32();
    message.mKey     = reader.U16();
    return message;
}

DiscoveryTranslator::DiscoveryTranslator(double aTtl)
    : mTtl(aTtl)
{
}

void DiscoveryTranslator::AddPan(uint16_t aPanId, const NodeAddress &aCoordinator)
{
    mPans.insert_or_assign(aPanId, aCoordinator);
}

void DiscoveryTranslator::AddWiredService(uint16_t aService, const Ipv6Address &aProvider)
{
    mServices.insert_or_assign(aService, aProvider);
}

NodeAddress DiscoveryTranslator::TranslateWiredQuery(const DiscoveryMessage &aQuery,
                                                     const Ipv6Address      &aHost,
                                                     double                  aNow)
{
    auto it = mPans.find(aQuery.mKey);

    if (it == mPans.end())
    {
        Fail(Errc::kUnknownPanId, "no PAN " + ToHex(Bytes{static_cast<uint8_t>(aQuery.mKey >> 8),
                                                           static_cast<uint8_t>(aQuery.mKey)}));
    }
    mRecords.insert_or_assign(aQuery.mQueryId, Record{aHost, aNow});
    return it->second;
}

Ipv6Address DiscoveryTranslator::TranslateWpanQuery(const DiscoveryMessage &aQuery,
                                                    const NodeAddress      &aNode,
                                                    double                  aNow)
{
    auto it = mServices.find(aQuery.mKey);

    if (it == mServices.end())
    {
        Fail(Errc::kNoSuchNode, "no wired provider for service " + std::to_string(aQuery.mKey));
    }
    mRecords.insert_or_assign(aQuery.mQueryId, Record{aNode, aNow});
    return it->second;
}

Requester DiscoveryTranslator::TranslateResponse(const DiscoveryMessage &aResponse, double aNow)
{
    auto it = mRecords.find(aResponse.mQueryId);

    if (it == mRecords.end())
    {
        Fail(Errc::kStaleRecord, "no record for query " + std::to_string(aResponse.mQueryId));
    }

    Record record = it->second;
    mRecords.erase(it);
    if (aNow - record.mCreatedAt > mTtl)
    {
        Fail(Errc::kStaleRecord, "record for query " + std::to_string(aResponse.mQueryId) + " expired");
    }
    return record.mRequester;
}

//---------------------------------------------------------------------------------------------------------------------
// Zigbee bridge

Ipv6Packet BridgeEncapsulate(const NwkFrame &aFrame, const Tunnel &aTunnel)
{
    return MakeUdpPacket(aTunnel.mLocal, aTunnel.mPeer, aTunnel.mPort, aTunnel.mPort, EncodeNwk(aFrame));
}

NwkFrame BridgeDecapsulate(const Ipv6Packet &aPacket, uint16_t aPort)
{
    if (aPacket.mNextHeader != kProtoUdp)
    {
        Fail(Errc::kNotTunnelTraffic, "not UDP");
    }

    UdpDatagram udp = DecodeUdp(aPacket.mPayload);

    if (udp.mDstPort != aPort)
    {
        Fail(Errc::kNotTunnelTraffic, "UDP port " + std::to_string(udp.mDstPort) + " is not the tunnel port");
    }
    return DecodeNwk(udp.mPayload);
}

//---------------------------------------------------------------------------------------------------------------------
// BorderGateway

BorderGateway::BorderGateway(const Ipv6Prefix &aPrefix, const NodeAddress &aLinkAddress, SecurityMode aSecurity)
    : mPrefix(aPrefix)
    , mLinkAddress(aLinkAddress)
    , mSecurity(aSecurity)
{
}

void BorderGateway::AddNode(const NodeAddress &aNode)
{
    if (std::find(mNodes.begin(), mNodes.end(), aNode) == mNodes.end())
    {
        mNodes.push_back(aNode);
    }
}

Ipv6Address BorderGateway::AddressOf(const NodeAddress &aNode) const
{
    return GlobalAddress(mPrefix, IidFromLinkAddress(aNode));
}

NodeAddress BorderGateway::Resolve(const Ipv6Address &aAddress) const
{
    if (aAddress.HasPrefix(mPrefix) || aAddress.IsLinkLocal())
    {
        NodeAddress node = LinkAddressFromIid(IidOf(aAddress));

        if (std::find(mNodes.begin(), mNodes.end(), node) != mNodes.end())
        {
            return node;
        }
    }
    Fail(Errc::kNoSuchNode, "no LoWPAN node owns " + aAddress.ToString());
}

Ipv6Packet BorderGateway::LowpanToWired(ByteSpan aDatagram, const NodeAddress &aLinkSrc) const
{
    return DecompressIpv6(aDatagram, aLinkSrc, mLinkAddress);
}

BorderGateway::Downlink BorderGateway::WiredToLowpan(const Ipv6Packet     &aPacket,
                                                     std::optional<uint8_t> aMeshHops,
                                                     FragmentationContext &aContext) const
{
    Downlink    downlink;
    Bytes       mesh;
    std::size_t budget = MacPayloadBudget(mSecurity);

    downlink.mDestination = Resolve(aPacket.mDst);
    if (aMeshHops)
    {
        mesh = EncodeMesh(MeshHeader{*aMeshHops, mLinkAddress, downlink.mDestination});
        budget -= mesh.size();
    }

    Bytes datagram         = CompressIpv6(aPacket, mLinkAddress, downlink.mDestination);
    downlink.mDatagramSize = datagram.size();

    for (Bytes &fragment : Fragment(datagram, budget, aContext))
    {
        Bytes frame = mesh;
        frame.insert(frame.end(), fragment.begin(), fragment.end());
        downlink.mFrames.push_back(std::move(frame));
    }
    return downlink;
}

} // namespace sixlo
