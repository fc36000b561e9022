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

#include "sixlo/netsim.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <queue>
#include <random>
#include <set>

namespace sixlo {

namespace {

constexpr std::size_t kBc0CacheSize        = 64;
constexpr double      kDefaultWiredLatency = 1e-3;
constexpr std::size_t kTraceHexLimit       = 32;
constexpr double      kWakeEpsilon         = 1e-9;

std::string Fixed(double aValue)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", aValue);
    return buf;
}

bool IsBroadcastLink(const NodeAddress &aAddress)
{
    const auto *s = std::get_if<Short16>(&aAddress);
    return s != nullptr && s->mShort == kShortAddrBroadcast;
}

template <typename Enum, std::size_t N>
Enum ParseName(const std::pair<Enum, const char *> (&aTable)[N], std::string_view aText, const char *aWhat)
{
    for (const auto &[value, name] : aTable)
    {
        if (aText == name)
        {
            return value;
        }
    }
    Fail(Errc::kInvalidArgument, std::string("unknown ") + aWhat + " '" + std::string(aText) + "'");
}

template <typename Enum, std::size_t N> const char *NameOf(const std::pair<Enum, const char *> (&aTable)[N], Enum aValue)
{
    for (const auto &[value, name] : aTable)
    {
        if (value == aValue)
        {
            return name;
        }
    }
    return "?";
}

constexpr std::pair<NodeRole, const char *> kRoleNames[] = {
    {NodeRole::kCoordinator, "coordinator"},
    {NodeRole::kFfd, "ffd"},
    {NodeRole::kRfd, "rfd"},
};

constexpr std::pair<StackKind, const char *> kStackNames[] = {
    {StackKind::kLowpan, "lowpan"},
    {StackKind::kZigbee, "zigbee"},
    {StackKind::kRaw, "raw"},
};

constexpr std::pair<SendKind, const char *> kSendNames[] = {
    {SendKind::kUdp, "udp"},           {SendKind::kBroadcast, "broadcast"}, {SendKind::kZigbee, "zigbee"},
    {SendKind::kDevid, "devid"},       {SendKind::kDiscover, "discover"},
};

} // namespace

const char *NodeRoleName(NodeRole aRole) { return NameOf(kRoleNames, aRole); }
NodeRole    ParseNodeRole(std::string_view aText) { return ParseName(kRoleNames, aText, "node role"); }
const char *StackKindName(StackKind aStack) { return NameOf(kStackNames, aStack); }
StackKind   ParseStackKind(std::string_view aText) { return ParseName(kStackNames, aText, "stack"); }
const char *SendKindName(SendKind aKind) { return NameOf(kSendNames, aKind); }
SendKind    ParseSendKind(std::string_view aText) { return ParseName(kSendNames, aText, "send kind"); }

//---------------------------------------------------------------------------------------------------------------------
// SleepSchedule

bool SleepSchedule::IsAwake(double aNow) const
{
    if (mAsleepMs <= 0)
    {
        return true;
    }

    double period = (mAwakeMs + mAsleepMs) / 1000.0;
    double phase  = aNow - std::floor(aNow / period) * period;

    if (period - phase < kWakeEpsilon)
    {
        phase = 0;
    }
    return phase < mAwakeMs / 1000.0;
}

double SleepSchedule::NextWake(double aNow) const
{
    if (IsAwake(aNow))
    {
        return aNow;
    }

    double period = (mAwakeMs + mAsleepMs) / 1000.0;
    return (std::floor(aNow / period + kWakeEpsilon) + 1) * period;
}

//---------------------------------------------------------------------------------------------------------------------
// Trace and metrics

std::string FormatTrace(const std::vector<TraceRecord> &aTrace)
{
    std::string out = "# time\tnode\tkind\tdetail\tbytes\thex\n";

    for (const TraceRecord &record : aTrace)
    {
        ByteSpan data = record.mData;
        bool     cut  = data.size() > kTraceHexLimit;

        out += Fixed(record.mTime);
        out += '\t' + record.mNode + '\t' + record.mKind + '\t' + record.mDetail + '\t';
        out += std::to_string(record.mBytes) + '\t';
        out += ToHex(cut ? data.first(kTraceHexLimit) : data);
        out += cut ? "..\n" : "\n";
    }
    return out;
}

double Metrics::DeliveryRatio(void) const
{
    return mAppSent == 0 ? 0.0 : static_cast<double>(mAppDelivered) / static_cast<double>(mAppSent);
}

double Metrics::MeanHeaderOctets(void) const
{
    return mHeaderFrames == 0 ? 0.0 : static_cast<double>(mHeaderOctets) / static_cast<double>(mHeaderFrames);
}

double Metrics::CompressionRatio(void) const
{
    return mCompressedHeader == 0 ? 0.0
                                  : static_cast<double>(mUncompressedHeader) / static_cast<double>(mCompressedHeader);
}

std::string Metrics::ToText(void) const
{
    std::string out;
    auto        line = [&out](const std::string &aKey, const std::string &aValue) {
        out += aKey + ' ' + aValue + '\n';
    };

    line("app_sent", std::to_string(mAppSent));
    line("app_delivered", std::to_string(mAppDelivered));
    line("delivery_ratio", Fixed(DeliveryRatio()));
    line("broadcast_sent", std::to_string(mBroadcastSent));
    line("broadcast_delivered", std::to_string(mBroadcastDelivered));
    line("frames_tx", std::to_string(mFramesTx));
    line("frames_rx", std::to_string(mFramesRx));
    line("frames_forwarded", std::to_string(mForwarded));
    line("fragments_tx", std::to_string(mFragmentsTx));
    line("reassemblies", std::to_string(mReassemblies));
    line("wired_packets", std::to_string(mWiredPackets));
    line("gateway_translations", std::to_string(mTranslations));
    line("mean_header_octets", Fixed(MeanHeaderOctets()));
    line("compression_ratio", Fixed(CompressionRatio()));
    for (const auto &[reason, count] : mDrops)
    {
        line("drop." + reason, std::to_string(count));
    }
    return out;
}

//---------------------------------------------------------------------------------------------------------------------
// World internals

struct World::Impl
{
    enum class EntityKind : uint8_t
    {
        kNode,
        kHost,
        kGateway,
    };

    using SeenKey = std::pair<NodeAddress, uint8_t>;

    struct Node
    {
        NodeConfig                         mConfig;
        PanConfig                          mPan;
        NodeAddress                        mLink;
        uint8_t                            mMacSeq = 0;
        uint8_t                            mBc0Seq = 0;
        uint8_t                            mNwkSeq = 0;
        FragmentationContext               mFrag;
        ReassemblyTable                    mReassembly;
        std::deque<SeenKey>                mSeenOrder;
        std::set<SeenKey>                  mSeen;
        std::vector<std::size_t>           mLinks;
        std::map<std::size_t, std::size_t> mNextHop;
        std::optional<std::size_t>         mPanGateway;
        std::optional<std::size_t>         mHostedGateway;
        double                             mBusyUntil = 0;

        const std::string &Name(void) const { return mConfig.mName; }
        bool               IsForwarder(void) const { return mConfig.mRole != NodeRole::kRfd; }
        uint16_t           PanId(void) const { return mPan.mPanId; }
    };

    struct Link
    {
        std::size_t mA;
        std::size_t mB;
        double      mLoss;
        BandId      mBand;
    };

    struct Gateway
    {
        GatewayConfig                  mConfig;
        std::size_t                    mNode = 0;
        std::optional<BorderGateway>   mBorder;
        std::optional<DevidTranslator> mDevid;
        std::optional<MappingTable>    mMapping;
        std::optional<Tunnel>          mTunnel;
        DiscoveryTranslator            mDiscovery;

        const std::string &Name(void) const { return mConfig.mName; }
    };

    struct Event
    {
        double                mTime;
        uint64_t              mSeq;
        std::function<void()> mAction;
    };

    struct Later
    {
        bool operator()(const Event &aLeft, const Event &aRight) const
        {
            return std::tie(aLeft.mTime, aLeft.mSeq) > std::tie(aRight.mTime, aRight.mSeq);
        }
    };

    explicit Impl(uint64_t aSeed)
        : mRng(aSeed)
    {
    }

    std::mt19937_64                                            mRng;
    double                                                     mNow          = 0;
    uint64_t                                                   mEventSeq     = 0;
    double                                                     mWiredLatency = kDefaultWiredLatency;
    bool                                                       mPrepared     = false;
    uint32_t                                                   mNextQueryId  = 1;
    std::map<uint16_t, PanConfig>                              mPans;
    std::vector<Node>                                          mNodes;
    std::vector<Link>                                          mLinks;
    std::vector<HostConfig>                                    mHosts;
    std::vector<Gateway>                                       mGateways;
    std::map<std::string, std::pair<EntityKind, std::size_t>> mNames;
    std::map<NodeAddress, std::size_t>                         mNodeByAddress;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mLinkBetween;
    std::vector<std::array<std::size_t, 3>>                    mManualRoutes;
    std::priority_queue<Event, std::vector<Event>, Later>      mQueue;
    std::vector<TraceRecord>                                   mTrace;
    std::vector<Delivery>                                      mDeliveries;
    Metrics                                                    mMetrics;

    //-----------------------------------------------------------------------------------------------------------------
    // Bookkeeping

    void At(double aTime, std::function<void()> aAction)
    {
        mQueue.push(Event{aTime, mEventSeq++, std::move(aAction)});
    }

    void Record(const std::string &aNode, const char *aKind, std::string aDetail, std::size_t aBytes, ByteSpan aData)
    {
        mTrace.push_back(TraceRecord{mNow, aNode, aKind, std::move(aDetail), aBytes, Bytes(aData.begin(), aData.end())});
    }

    void Drop(const std::string &aNode, const std::string &aReason, const std::string &aDetail = {})
    {
        Record(aNode, "Drop", "reason=" + aReason + (aDetail.empty() ? "" : " " + aDetail), 0, {});
        mMetrics.mDrops[aReason]++;
    }

    /// Runs aAction; codec and gateway errors become drops at aNode.
    void Guard(const std::string &aNode, const std::function<void()> &aAction)
    {
        try
        {
            aAction();
        }
        catch (const Error &e)
        {
            std::string what   = e.what();
            std::string reason = std::string(ErrcName(e.Code()));
            std::string detail = what.substr(std::min(what.size(), reason.size() + 2));

            for (char &c : detail)
            {
                c = (c == ' ' || c == '\t') ? '_' : c;
            }
            Drop(aNode, reason, "what=" + detail);
        }
    }

    void Deliver(const std::string &aAt, const std::string &aFrom, SendKind aKind, ByteSpan aPayload)
    {
        Record(aAt, "Deliver", std::string("kind=") + SendKindName(aKind) + " from=" + aFrom, aPayload.size(),
               aPayload);
        mDeliveries.push_back(Delivery{mNow, aAt, aFrom, aKind, Bytes(aPayload.begin(), aPayload.end())});

        if (aKind == SendKind::kBroadcast)
        {
            mMetrics.mBroadcastDelivered++;
        }
        else if (aKind != SendKind::kDiscover)
        {
            mMetrics.mAppDelivered++;
        }
    }

    double Uniform(void) { return static_cast<double>(mRng() >> 11) * 0x1.0p-53; }

    //-----------------------------------------------------------------------------------------------------------------
    // Lookups

    std::pair<EntityKind, std::size_t> Entity(const std::string &aName) const
    {
        auto it = mNames.find(aName);

        if (it == mNames.end())
        {
            Fail(Errc::kInvalidArgument, "unknown name '" + aName + "'");
        }
        return it->second;
    }

    std::size_t NodeIndex(const std::string &aName) const
    {
        auto [kind, index] = Entity(aName);

        Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "expected a node name");
        return index;
    }

    void ClaimName(const std::string &aName, EntityKind aKind, std::size_t aIndex)
    {
        Require(!aName.empty(), Errc::kInvalidArgument, "empty name");
        if (!mNames.emplace(aName, std::pair{aKind, aIndex}).second)
        {
            Fail(Errc::kInvalidArgument, "duplicate name '" + aName + "'");
        }
    }

    std::optional<std::size_t> NodeByAddress(const NodeAddress &aAddress) const
    {
        auto it = mNodeByAddress.find(aAddress);
        return it == mNodeByAddress.end() ? std::nullopt : std::optional(it->second);
    }

    std::optional<std::size_t> NodeByShort(uint16_t aPanId, uint16_t aShort) const
    {
        return NodeByAddress(Short16{aPanId, aShort});
    }

    Gateway *HostedGateway(std::size_t aNode)
    {
        auto index = mNodes[aNode].mHostedGateway;
        return index ? &mGateways[*index] : nullptr;
    }

    Gateway *PanGateway(std::size_t aNode)
    {
        auto index = mNodes[aNode].mPanGateway;
        return index ? &mGateways[*index] : nullptr;
    }

    /// Global address when the PAN has a prefix, link-local otherwise.
    Ipv6Address NodeAddressV6(std::size_t aNode) const
    {
        const Node &node = mNodes[aNode];
        InterfaceId iid  = IidFromLinkAddress(node.mLink);

        return node.mPan.mPrefix ? GlobalAddress(*node.mPan.mPrefix, iid) : LinkLocal(iid);
    }

    bool IsOwnAddress(std::size_t aNode, const Ipv6Address &aAddress) const
    {
        InterfaceId iid = IidFromLinkAddress(mNodes[aNode].mLink);
        return aAddress.IsMulticast() || aAddress == LinkLocal(iid) || aAddress == NodeAddressV6(aNode);
    }

    std::optional<std::size_t> NextHop(std::size_t aFrom, const NodeAddress &aFinal) const
    {
        const Node &node = mNodes[aFrom];

        if (auto target = NodeByAddress(aFinal))
        {
            if (auto it = node.mNextHop.find(*target); it != node.mNextHop.end())
            {
                return it->second;
            }
        }
        if (node.mPanGateway)
        {
            std::size_t gatewayNode = mGateways[*node.mPanGateway].mNode;

            if (auto it = node.mNextHop.find(gatewayNode); it != node.mNextHop.end())
            {
                return it->second;
            }
        }
        return std::nullopt;
    }

    bool Reachable(std::size_t aFrom, std::size_t aTo) const { return mNodes[aFrom].mNextHop.contains(aTo); }

    //-----------------------------------------------------------------------------------------------------------------
    // Setup

    void Prepare(void)
    {
        if (mPrepared)
        {
            return;
        }
        mPrepared = true;

        std::map<uint16_t, int> coordinators;
        for (const Node &node : mNodes)
        {
            coordinators[node.PanId()] += node.mConfig.mRole == NodeRole::kCoordinator ? 1 : 0;
        }
        for (const auto &[pan, count] : coordinators)
        {
            if (count != 1)
            {
                Fail(Errc::kInvalidArgument, "PAN " + ToString(NodeAddress(Short16{pan, 0})).substr(0, 4) + " has " +
                                                 std::to_string(count) + " coordinators, expected exactly one");
            }
        }

        for (std::size_t source = 0; source < mNodes.size(); source++)
        {
            ComputeRoutes(source);
        }
        for (const auto &[at, to, via] : mManualRoutes)
        {
            Require(mLinkBetween.contains({at, via}), Errc::kInvalidArgument, "route via a node that is not a neighbor");
            mNodes[at].mNextHop[to] = via;
        }
    }

    /// Breadth-first search where only forwarding-capable nodes relay; the first hop of each shortest path is kept.
    void ComputeRoutes(std::size_t aSource)
    {
        std::map<std::size_t, std::size_t> firstHop;
        std::deque<std::size_t>            frontier{aSource};
        std::set<std::size_t>              visited{aSource};

        while (!frontier.empty())
        {
            std::size_t current = frontier.front();
            frontier.pop_front();

            for (std::size_t linkIndex : mNodes[current].mLinks)
            {
                const Link &link = mLinks[linkIndex];
                std::size_t next = link.mA == current ? link.mB : link.mA;

                if (!visited.insert(next).second)
                {
                    continue;
                }
                firstHop[next] = current == aSource ? next : firstHop[current];
                if (mNodes[next].IsForwarder())
                {
                    frontier.push_back(next);
                }
            }
        }
        mNodes[aSource].mNextHop = std::move(firstHop);
    }

    //-----------------------------------------------------------------------------------------------------------------
    // Radio

    MacFrame MakeMac(std::size_t aFrom, std::optional<std::size_t> aTo, Bytes aPayload)
    {
        Node    &node = mNodes[aFrom];
        MacFrame frame;

        frame.mSequence = node.mMacSeq++;
        frame.mPanId    = node.PanId();
        frame.mSrc      = node.mLink;
        frame.mDst      = aTo ? mNodes[*aTo].mLink : NodeAddress(Short16{node.PanId(), kShortAddrBroadcast});
        frame.mSecurity = node.mPan.mSecurity;
        frame.mPayload  = std::move(aPayload);
        return frame;
    }

    /// Queues a frame behind any transmission in progress, deferring it while the sender sleeps.
    void Transmit(std::size_t aFrom, std::optional<std::size_t> aTo, const MacFrame &aFrame, std::string aDetail)
    {
        Node  &node  = mNodes[aFrom];
        Bytes  psdu  = EncodeMacFrame(aFrame);
        Bytes  ppdu  = EncodePpdu(psdu);
        double start = std::max(mNow, node.mBusyUntil);
        double air   = 0;

        if (!node.mConfig.mSleep.IsAwake(start))
        {
            double wake = node.mConfig.mSleep.NextWake(start);

            Record(node.Name(), "Defer", "until=" + Fixed(wake), ppdu.size(), {});
            start = wake;
        }
        for (std::size_t linkIndex : node.mLinks)
        {
            air = std::max(air, FrameAirtime(GetPhyBand(mLinks[linkIndex].mBand), ppdu.size()));
        }
        node.mBusyUntil = start + air;

        At(start, [this, aFrom, aTo, psdu = std::move(psdu), ppdu = std::move(ppdu), detail = std::move(aDetail)] {
            DoTransmit(aFrom, aTo, psdu, ppdu.size(), detail);
        });
    }

    void DoTransmit(std::size_t aFrom, std::optional<std::size_t> aTo, const Bytes &aPsdu, std::size_t aPpduSize,
                    const std::string &aDetail)
    {
        Node &node    = mNodes[aFrom];
        bool  reached = false;

        Record(node.Name(), "Tx", aDetail, aPpduSize, aPsdu);
        mMetrics.mFramesTx++;

        for (std::size_t linkIndex : node.mLinks)
        {
            const Link &link = mLinks[linkIndex];
            std::size_t peer = link.mA == aFrom ? link.mB : link.mA;

            if (aTo && peer != *aTo)
            {
                continue;
            }

            double arrival = mNow + FrameAirtime(GetPhyBand(link.mBand), aPpduSize);
            bool   lost    = link.mLoss > 0 && Uniform() < link.mLoss;

            reached = true;
            At(arrival, [this, peer, aFrom, aPsdu, lost] { Receive(peer, aFrom, aPsdu, lost); });
        }
        if (aTo && !reached)
        {
            Drop(node.Name(), "NoLink", "to=" + mNodes[*aTo].Name());
        }
    }

    void Receive(std::size_t aNode, std::size_t aFrom, const Bytes &aPsdu, bool aLost)
    {
        Node &node = mNodes[aNode];

        if (!node.mConfig.mSleep.IsAwake(mNow))
        {
            Drop(node.Name(), "Asleep", "from=" + mNodes[aFrom].Name());
            return;
        }
        if (aLost)
        {
            Drop(node.Name(), "Loss", "from=" + mNodes[aFrom].Name());
            return;
        }

        Record(node.Name(), "Rx", "from=" + mNodes[aFrom].Name(), aPsdu.size() + kPhyOverhead, aPsdu);
        mMetrics.mFramesRx++;
        Guard(node.Name(), [&] { HandleFrame(aNode, DecodeMacFrame(aPsdu)); });
    }

    void HandleFrame(std::size_t aNode, const MacFrame &aMac)
    {
        Node       &node    = mNodes[aNode];
        Gateway    *gateway = HostedGateway(aNode);
        NodeAddress macSrc  = aMac.mSrc.value_or(NodeAddress{});

        if (gateway == nullptr)
        {
            switch (node.mPan.mStack)
            {
            case StackKind::kLowpan:
                HandleLowpan(aNode, macSrc, aMac.mPayload);
                break;
            case StackKind::kZigbee:
                HandleNwk(aNode, aMac.mPayload);
                break;
            case StackKind::kRaw:
                HandleRaw(aNode, aMac);
                break;
            }
            return;
        }

        GatewayMode mode = gateway->mConfig.mMode;

        if (mode == GatewayMode::kDevidTranslation)
        {
            HandleRaw(aNode, aMac);
            return;
        }

        FrameFamily family = Demux(aMac.mPayload);

        if (family == FrameFamily::kLowpan && gateway->mBorder)
        {
            Record(gateway->Name(), "GwTranslate", "demux=Lowpan", aMac.mPayload.size(), {});
            HandleLowpan(aNode, macSrc, aMac.mPayload);
        }
        else if (family == FrameFamily::kZigbeeNwk && (gateway->mMapping || gateway->mTunnel))
        {
            Record(gateway->Name(), "GwTranslate", "demux=ZigbeeNwk", aMac.mPayload.size(), {});
            HandleNwk(aNode, aMac.mPayload);
        }
        else
        {
            Drop(gateway->Name(), "WrongStack",
                 std::string("family=") + (family == FrameFamily::kLowpan ? "Lowpan" : "ZigbeeNwk") +
                     " mode=" + GatewayModeName(mode));
        }
    }

    //-----------------------------------------------------------------------------------------------------------------
    // 6LoWPAN

    void MarkSeen(Node &aNode, const SeenKey &aKey)
    {
        aNode.mSeen.insert(aKey);
        aNode.mSeenOrder.push_back(aKey);
        if (aNode.mSeenOrder.size() > kBc0CacheSize)
        {
            aNode.mSeen.erase(aNode.mSeenOrder.front());
            aNode.mSeenOrder.pop_front();
        }
    }

    void HandleLowpan(std::size_t aNode, const NodeAddress &aMacSrc, const Bytes &aPayload)
    {
        Node       &node  = mNodes[aNode];
        LowpanFrame frame = ParseLowpanFrame(aPayload, node.PanId());

        if (frame.mMesh)
        {
            const MeshHeader &mesh = *frame.mMesh;

            if (IsBroadcastLink(mesh.mFinal))
            {
                HandleLowpanBroadcast(aNode, frame, aPayload);
                return;
            }
            if (mesh.mFinal != node.mLink)
            {
                ForwardMesh(aNode, mesh, ByteSpan(aPayload).subspan(mesh.Size()));
                return;
            }
        }

        NodeAddress origin = frame.mMesh ? frame.mMesh->mOriginator : aMacSrc;
        Bytes       datagram;

        if (frame.mFrag)
        {
            auto complete = AcceptFragment(aNode, origin, frame);
            if (!complete)
            {
                return;
            }
            datagram = std::move(*complete);
        }
        else
        {
            datagram = std::move(frame.mRest);
        }
        OnDatagram(aNode, origin, node.mLink, datagram);
    }

    std::optional<Bytes> AcceptFragment(std::size_t aNode, const NodeAddress &aOrigin, const LowpanFrame &aFrame)
    {
        Node &node  = mNodes[aNode];
        Bytes bytes = EncodeFrag(*aFrame.mFrag);

        bytes.insert(bytes.end(), aFrame.mRest.begin(), aFrame.mRest.end());

        AcceptResult result = node.mReassembly.Accept(aOrigin, bytes, mNow);
        std::string  key    = "origin=" + ToString(aOrigin) + " tag=" + std::to_string(aFrame.mFrag->mTag);

        if (std::size_t purged = node.mReassembly.Purge(mNow))
        {
            Drop(node.Name(), "Timeout", "purged=" + std::to_string(purged));
        }

        switch (result.mStatus)
        {
        case AcceptResult::Status::kDropped:
            Drop(node.Name(), "Timeout", key);
            return std::nullopt;
        case AcceptResult::Status::kPending:
            return std::nullopt;
        case AcceptResult::Status::kComplete:
            break;
        }

        Record(node.Name(), "ReasmComplete", key, result.mDatagram.size(), {});
        mMetrics.mReassemblies++;
        return std::move(result.mDatagram);
    }

    void ForwardMesh(std::size_t aNode, const MeshHeader &aMesh, ByteSpan aRest)
    {
        Node &node = mNodes[aNode];

        if (!node.IsForwarder())
        {
            Drop(node.Name(), "NotForwarder", "final=" + ToString(aMesh.mFinal));
            return;
        }

        std::string hops = "hops_left=" + std::to_string(aMesh.mHopsLeft) + "->" +
                           std::to_string(aMesh.mHopsLeft > 0 ? aMesh.mHopsLeft - 1 : 0);

        if (aMesh.mHopsLeft <= 1)
        {
            Drop(node.Name(), "HopsExhausted", hops + " final=" + ToString(aMesh.mFinal));
            return;
        }

        auto next = NextHop(aNode, aMesh.mFinal);
        if (!next)
        {
            Drop(node.Name(), "NoRoute", "final=" + ToString(aMesh.mFinal));
            return;
        }

        MeshHeader forwarded = aMesh;
        forwarded.mHopsLeft--;

        Bytes payload = EncodeMesh(forwarded);
        payload.insert(payload.end(), aRest.begin(), aRest.end());

        Record(node.Name(), "Fwd", hops + " final=" + ToString(aMesh.mFinal) + " next=" + mNodes[*next].Name(),
               payload.size(), {});
        mMetrics.mForwarded++;
        Transmit(aNode, next, MakeMac(aNode, next, std::move(payload)), "mesh");
    }

    void HandleLowpanBroadcast(std::size_t aNode, const LowpanFrame &aFrame, const Bytes &aPayload)
    {
        Node             &node = mNodes[aNode];
        const MeshHeader &mesh = *aFrame.mMesh;

        Require(aFrame.mBc0Sequence.has_value(), Errc::kMalformedHeader, "mesh broadcast without BC0 header");
        Require(!aFrame.mFrag, Errc::kUnsupported, "fragmented broadcast");

        SeenKey key{mesh.mOriginator, *aFrame.mBc0Sequence};

        if (node.mSeen.contains(key))
        {
            Drop(node.Name(), "Duplicate",
                 "origin=" + ToString(mesh.mOriginator) + " bc0=" + std::to_string(*aFrame.mBc0Sequence));
            return;
        }
        MarkSeen(node, key);

        if (node.IsForwarder() && mesh.mHopsLeft > 1)
        {
            MeshHeader forwarded = mesh;
            forwarded.mHopsLeft--;

            Bytes payload = EncodeMesh(forwarded);
            payload.insert(payload.end(), aPayload.begin() + static_cast<std::ptrdiff_t>(mesh.Size()), aPayload.end());

            Record(node.Name(), "Fwd",
                   "hops_left=" + std::to_string(mesh.mHopsLeft) + "->" + std::to_string(forwarded.mHopsLeft) +
                       " bc0=" + std::to_string(*aFrame.mBc0Sequence),
                   payload.size(), {});
            mMetrics.mForwarded++;
            Transmit(aNode, std::nullopt, MakeMac(aNode, std::nullopt, std::move(payload)), "mesh-bcast");
        }

        Ipv6Packet packet = DecompressIpv6(aFrame.mRest, mesh.mOriginator, mesh.mFinal);
        DeliverPacket(aNode, packet, SendKind::kBroadcast);
        if (Gateway *gateway = HostedGateway(aNode))
        {
            UdpDatagram udp = DecodeUdp(packet.mPayload);
            Relay(*gateway, mesh.mOriginator, udp.mPayload);
        }
    }

    void OnDatagram(std::size_t aNode, const NodeAddress &aOrigin, const NodeAddress &aFinal, const Bytes &aDatagram)
    {
        Gateway *gateway = HostedGateway(aNode);

        if (gateway != nullptr && gateway->mBorder)
        {
            Ipv6Packet packet = gateway->mBorder->LowpanToWired(aDatagram, aOrigin);

            if (!IsOwnAddress(aNode, packet.mDst))
            {
                Record(gateway->Name(), "GwTranslate",
                       "mode=SixLowpanBorder dir=up src=" + packet.mSrc.ToString() + " dst=" + packet.mDst.ToString(),
                       aDatagram.size(), {});
                mMetrics.mTranslations++;
                WiredSend(gateway->Name(), packet);
                return;
            }
            DeliverPacket(aNode, packet, SendKind::kUdp);
            return;
        }
        DeliverPacket(aNode, DecompressIpv6(aDatagram, aOrigin, aFinal), SendKind::kUdp);
    }

    void DeliverPacket(std::size_t aNode, const Ipv6Packet &aPacket, SendKind aKind)
    {
        const std::string &name = mNodes[aNode].Name();

        if (aPacket.mNextHeader != kProtoUdp)
        {
            Deliver(name, aPacket.mSrc.ToString(), aKind, aPacket.mPayload);
            return;
        }

        UdpDatagram udp = DecodeUdp(aPacket.mPayload);
        if (UdpChecksum(aPacket.mSrc, aPacket.mDst, udp) != udp.mChecksum)
        {
            Drop(name, "BadChecksum", "src=" + aPacket.mSrc.ToString());
            return;
        }
        Deliver(name, aPacket.mSrc.ToString(), aKind, udp.mPayload);
    }

    /// Sends a datagram as one or more frames, with a mesh header when the final hop is not a neighbor.
    void SendDatagram(std::size_t aNode, const NodeAddress &aFinal, const Ipv6Packet &aPacket, uint8_t aHops,
                      std::size_t aAppSize)
    {
        Node &node = mNodes[aNode];
        auto  next = NextHop(aNode, aFinal);

        if (!next)
        {
            Drop(node.Name(), "NoRoute", "final=" + ToString(aFinal));
            return;
        }

        Bytes mesh;
        if (mNodes[*next].mLink != aFinal)
        {
            mesh = EncodeMesh(MeshHeader{aHops, node.mLink, aFinal});
        }

        Bytes datagram = CompressIpv6(aPacket, node.mLink, aFinal);
        auto  frames   = Fragment(datagram, MacPayloadBudget(node.mPan.mSecurity) - mesh.size(), node.mFrag);

        mMetrics.mUncompressedHeader += EncodeIpv6(aPacket).size() - aAppSize;
        mMetrics.mCompressedHeader += datagram.size() - aAppSize;
        TransmitDatagram(aNode, *next, mesh, frames, datagram.size(), aAppSize);
    }

    void TransmitDatagram(std::size_t aNode, std::size_t aNext, const Bytes &aMesh, const std::vector<Bytes> &aFrames,
                          std::size_t aDatagramSize, std::size_t aAppSize)
    {
        Node       &node  = mNodes[aNode];
        std::size_t total = 0;

        if (aFrames.size() > 1)
        {
            FragHeader header = DecodeFrag(aFrames.front());
            Record(node.Name(), "FragStart",
                   "tag=" + std::to_string(header.mTag) + " count=" + std::to_string(aFrames.size()) +
                       " size=" + std::to_string(aDatagramSize),
                   aDatagramSize, {});
            mMetrics.mFragmentsTx += aFrames.size();
        }

        for (const Bytes &fragment : aFrames)
        {
            Bytes payload = aMesh;
            payload.insert(payload.end(), fragment.begin(), fragment.end());

            MacFrame mac = MakeMac(aNode, aNext, std::move(payload));
            total += EncodeMacFrame(mac).size();
            Transmit(aNode, aNext, mac, aMesh.empty() ? "lowpan" : "mesh");
        }
        mMetrics.mHeaderOctets += total - aAppSize;
        mMetrics.mHeaderFrames += aFrames.size();
    }

    void SendLowpanBroadcast(std::size_t aNode, const SendSpec &aSend)
    {
        Node       &node      = mNodes[aNode];
        NodeAddress broadcast = Short16{node.PanId(), kShortAddrBroadcast};
        Ipv6Packet  packet    = MakeUdpPacket(LinkLocal(IidFromLinkAddress(node.mLink)), Ipv6Address::Parse("ff02::1"),
                                              aSend.mSrcPort, aSend.mDstPort, aSend.mPayload);
        uint8_t     sequence  = node.mBc0Seq++;
        Bytes       payload   = EncodeMesh(MeshHeader{aSend.mHops, node.mLink, broadcast});
        Bytes       bc0       = EncodeBc0(sequence);
        Bytes       datagram  = CompressIpv6(packet, node.mLink, broadcast);

        payload.insert(payload.end(), bc0.begin(), bc0.end());
        if (payload.size() + datagram.size() > MacPayloadBudget(node.mPan.mSecurity))
        {
            Fail(Errc::kPayloadTooLarge, "broadcast datagram does not fit one frame");
        }
        payload.insert(payload.end(), datagram.begin(), datagram.end());

        MarkSeen(node, {node.mLink, sequence});
        mMetrics.mBroadcastSent++;
        mMetrics.mUncompressedHeader += EncodeIpv6(packet).size() - aSend.mPayload.size();
        mMetrics.mCompressedHeader += datagram.size() - aSend.mPayload.size();

        MacFrame mac = MakeMac(aNode, std::nullopt, std::move(payload));
        mMetrics.mHeaderOctets += EncodeMacFrame(mac).size() - aSend.mPayload.size();
        mMetrics.mHeaderFrames++;
        Transmit(aNode, std::nullopt, mac, "mesh-bcast bc0=" + std::to_string(sequence));
    }

    //-----------------------------------------------------------------------------------------------------------------
    // Zigbee NWK

    void RouteNwk(std::size_t aNode, const NwkFrame &aFrame, const char *aDetail)
    {
        Node &node = mNodes[aNode];

        if (aFrame.mDst == kNwkBroadcast)
        {
            Transmit(aNode, std::nullopt, MakeMac(aNode, std::nullopt, EncodeNwk(aFrame)), aDetail);
            return;
        }

        auto next = NextHop(aNode, Short16{node.PanId(), aFrame.mDst});
        if (!next)
        {
            Drop(node.Name(), "NoRoute", "nwk_dst=" + ToString(NodeAddress(Short16{node.PanId(), aFrame.mDst})));
            return;
        }
        Transmit(aNode, next, MakeMac(aNode, next, EncodeNwk(aFrame)), aDetail);
    }

    void HandleNwk(std::size_t aNode, const Bytes &aPayload)
    {
        Node       &node    = mNodes[aNode];
        Gateway    *gateway = HostedGateway(aNode);
        NwkFrame    frame   = DecodeNwk(aPayload);
        NodeAddress source  = Short16{node.PanId(), frame.mSrc};
        uint16_t    self    = std::get<Short16>(node.mLink).mShort;

        if (frame.mDst == kNwkBroadcast)
        {
            SeenKey key{source, frame.mSequence};

            if (node.mSeen.contains(key))
            {
                Drop(node.Name(), "Duplicate", "origin=" + ToString(source) + " seq=" + std::to_string(frame.mSequence));
                return;
            }
            MarkSeen(node, key);
            if (node.IsForwarder() && frame.mRadius > 1)
            {
                NwkFrame forwarded = frame;
                forwarded.mRadius--;
                Record(node.Name(), "Fwd",
                       "radius=" + std::to_string(frame.mRadius) + "->" + std::to_string(forwarded.mRadius) +
                           " seq=" + std::to_string(frame.mSequence),
                       aPayload.size(), {});
                mMetrics.mForwarded++;
                RouteNwk(aNode, forwarded, "nwk-bcast");
            }
            Deliver(node.Name(), ToString(source), SendKind::kBroadcast, frame.mPayload);
            if (gateway != nullptr)
            {
                Relay(*gateway, source, frame.mPayload);
            }
            return;
        }

        if (frame.mDst == self)
        {
            OnNwk(aNode, frame);
            return;
        }

        if (gateway != nullptr && gateway->mMapping && gateway->mMapping->LookupShort(frame.mDst))
        {
            ZigbeeUplink(*gateway, aNode, frame);
            return;
        }

        auto target = NodeByShort(node.PanId(), frame.mDst);
        if (gateway != nullptr && gateway->mTunnel && !(target && Reachable(aNode, *target)))
        {
            Ipv6Packet packet = BridgeEncapsulate(frame, *gateway->mTunnel);

            Record(gateway->Name(), "GwTranslate",
                   "mode=ZedBridge dir=out nwk_dst=" + std::to_string(frame.mDst) + " peer=" +
                       gateway->mTunnel->mPeer.ToString(),
                   aPayload.size(), aPayload);
            mMetrics.mTranslations++;
            WiredSend(gateway->Name(), packet);
            return;
        }

        if (!node.IsForwarder())
        {
            Drop(node.Name(), "NotForwarder", "nwk_dst=" + std::to_string(frame.mDst));
            return;
        }

        std::string radius = "radius=" + std::to_string(frame.mRadius) + "->" +
                             std::to_string(frame.mRadius > 0 ? frame.mRadius - 1 : 0);
        if (frame.mRadius <= 1)
        {
            Drop(node.Name(), "HopsExhausted", radius);
            return;
        }

        NwkFrame forwarded = frame;
        forwarded.mRadius--;
        auto next = NextHop(aNode, Short16{node.PanId(), frame.mDst});
        if (!next)
        {
            Drop(node.Name(), "NoRoute", "nwk_dst=" + std::to_string(frame.mDst));
            return;
        }
        Record(node.Name(), "Fwd", radius + " nwk_dst=" + std::to_string(frame.mDst) + " next=" + mNodes[*next].Name(),
               aPayload.size(), {});
        mMetrics.mForwarded++;
        Transmit(aNode, next, MakeMac(aNode, next, EncodeNwk(forwarded)), "nwk");
    }

    void OnNwk(std::size_t aNode, const NwkFrame &aFrame)
    {
        Node       &node    = mNodes[aNode];
        Gateway    *gateway = HostedGateway(aNode);
        NodeAddress source  = Short16{node.PanId(), aFrame.mSrc};

        if (aFrame.mFrameControl != kNwkFrameControlCommand)
        {
            Deliver(node.Name(), ToString(source), SendKind::kZigbee, aFrame.mPayload);
            return;
        }

        DiscoveryMessage message = DecodeDiscovery(aFrame.mPayload);

        if (gateway != nullptr && message.mType == kDiscoveryQuery)
        {
            Ipv6Address provider = gateway->mDiscovery.TranslateWpanQuery(message, source, mNow);

            Record(gateway->Name(), "GwTranslate",
                   "discovery=wpan-query id=" + std::to_string(message.mQueryId) + " provider=" + provider.ToString(),
                   aFrame.mPayload.size(), {});
            mMetrics.mTranslations++;
            WiredSend(gateway->Name(), MakeUdpPacket(gateway->mConfig.mWiredAddress, provider, kDiscoveryUdpPort,
                                                     kDiscoveryUdpPort, EncodeDiscovery(message)));
            return;
        }
        if (gateway != nullptr && message.mType == kDiscoveryResponse)
        {
            Requester requester = gateway->mDiscovery.TranslateResponse(message, mNow);
            const auto *host    = std::get_if<Ipv6Address>(&requester);

            Require(host != nullptr, Errc::kStaleRecord, "response for a LoWPAN requester arrived over the radio");
            Record(gateway->Name(), "GwTranslate",
                   "discovery=response id=" + std::to_string(message.mQueryId) + " host=" + host->ToString(),
                   aFrame.mPayload.size(), {});
            mMetrics.mTranslations++;
            WiredSend(gateway->Name(), MakeUdpPacket(gateway->mConfig.mWiredAddress, *host, kDiscoveryUdpPort,
                                                     kDiscoveryUdpPort, EncodeDiscovery(message)));
            return;
        }

        Deliver(node.Name(), ToString(source), SendKind::kDiscover, aFrame.mPayload);

        if (message.mType == kDiscoveryQuery && node.mConfig.mRole == NodeRole::kCoordinator)
        {
            NwkFrame response;
            response.mFrameControl = kNwkFrameControlCommand;
            response.mDst          = aFrame.mSrc;
            response.mSrc          = std::get<Short16>(node.mLink).mShort;
            response.mRadius       = kMaxHopsLeft;
            response.mSequence     = node.mNwkSeq++;
            response.mPayload      = EncodeDiscovery({kDiscoveryResponse, message.mQueryId, node.PanId()});

            At(mNow + node.mConfig.mResponseDelay, [this, aNode, response] {
                Guard(mNodes[aNode].Name(), [&] { RouteNwk(aNode, response, "nwk-cmd"); });
            });
        }
    }

    void ZigbeeUplink(Gateway &aGateway, std::size_t aNode, const NwkFrame &aFrame)
    {
        auto source = NodeByShort(mNodes[aNode].PanId(), aFrame.mSrc);
        if (!source)
        {
            Fail(Errc::kNoSuchNode, "NWK source " + std::to_string(aFrame.mSrc) + " is not in the PAN");
        }

        Ipv6Address pseudo = aGateway.mMapping->AssignPseudo(Eui64{mNodes[*source].mConfig.mExt});
        Ipv6Address host   = *aGateway.mMapping->LookupShort(aFrame.mDst);
        Bytes       wired  = PadTransform(aFrame.mPayload, aGateway.mConfig.mPadSize);

        Record(aGateway.Name(), "GwTranslate",
               "mode=ZigbeeMapping dir=up short=" + std::to_string(aFrame.mDst) + " src=" + pseudo.ToString() +
                   " dst=" + host.ToString(),
               aFrame.mPayload.size(), {});
        mMetrics.mTranslations++;
        WiredSend(aGateway.Name(), MakeUdpPacket(pseudo, host, kMappingUdpPort, kMappingUdpPort, wired));
    }

    //-----------------------------------------------------------------------------------------------------------------
    // Raw (devid) stack

    void HandleRaw(std::size_t aNode, const MacFrame &aMac)
    {
        Node    &node    = mNodes[aNode];
        Gateway *gateway = HostedGateway(aNode);

        if (gateway != nullptr && gateway->mDevid)
        {
            Ipv6Packet packet = gateway->mDevid->ToWired(aMac);
            AppHeader  header = DecodeAppHeader(aMac.mPayload);

            Record(gateway->Name(), "GwTranslate",
                   "mode=DevidTranslation dir=up devid=" + std::to_string(header.mSrcDevid) + "->" +
                       std::to_string(header.mDstDevid) + " dst=" + packet.mDst.ToString(),
                   aMac.mPayload.size(), {});
            mMetrics.mTranslations++;
            WiredSend(gateway->Name(), packet);
            return;
        }

        AppHeader header = DecodeAppHeader(aMac.mPayload);
        Deliver(node.Name(), "devid:" + std::to_string(header.mSrcDevid), SendKind::kDevid,
                ByteSpan(aMac.mPayload).subspan(kAppHeaderSize));
    }

    //-----------------------------------------------------------------------------------------------------------------
    // Wired segment

    void WiredSend(const std::string &aFrom, const Ipv6Packet &aPacket)
    {
        Bytes wire = EncodeIpv6(aPacket);

        mMetrics.mWiredPackets++;
        Record(aFrom, "WiredTx", "src=" + aPacket.mSrc.ToString() + " dst=" + aPacket.mDst.ToString(), wire.size(),
               wire);

        for (std::size_t h = 0; h < mHosts.size(); h++)
        {
            if (mHosts[h].mAddress == aPacket.mDst)
            {
                At(mNow + mWiredLatency, [this, h, wire] {
                    Guard(mHosts[h].mName, [&] { HostReceive(h, DecodeIpv6(wire)); });
                });
                return;
            }
        }
        for (std::size_t g = 0; g < mGateways.size(); g++)
        {
            const Gateway &gateway = mGateways[g];
            bool           match   = gateway.mConfig.mWiredAddress == aPacket.mDst ||
                           (gateway.mBorder && aPacket.mDst.HasPrefix(gateway.mBorder->Prefix())) ||
                           (gateway.mMapping && aPacket.mDst.HasPrefix(gateway.mMapping->Prefix()));

            if (match)
            {
                At(mNow + mWiredLatency, [this, g, wire] {
                    Guard(mGateways[g].Name(), [&] { GatewayWiredReceive(mGateways[g], DecodeIpv6(wire)); });
                });
                return;
            }
        }
        Drop(aFrom, "NoRoute", "dst=" + aPacket.mDst.ToString());
    }

    void HostReceive(std::size_t aHost, const Ipv6Packet &aPacket)
    {
        const HostConfig &host = mHosts[aHost];

        Record(host.mName, "WiredRx", "src=" + aPacket.mSrc.ToString(), EncodeIpv6(aPacket).size(), {});
        if (aPacket.mNextHeader != kProtoUdp)
        {
            Deliver(host.mName, aPacket.mSrc.ToString(), SendKind::kUdp, aPacket.mPayload);
            return;
        }

        UdpDatagram udp = DecodeUdp(aPacket.mPayload);
        if (UdpChecksum(aPacket.mSrc, aPacket.mDst, udp) != udp.mChecksum)
        {
            Drop(host.mName, "BadChecksum", "src=" + aPacket.mSrc.ToString());
            return;
        }

        std::string from = aPacket.mSrc.ToString();

        switch (udp.mDstPort)
        {
        case kDiscoveryUdpPort:
        {
            DiscoveryMessage message = DecodeDiscovery(udp.mPayload);

            Deliver(host.mName, from, SendKind::kDiscover, udp.mPayload);
            if (message.mType == kDiscoveryQuery)
            {
                message.mType = kDiscoveryResponse;
                WiredSend(host.mName, MakeUdpPacket(host.mAddress, aPacket.mSrc, kDiscoveryUdpPort, kDiscoveryUdpPort,
                                                    EncodeDiscovery(message)));
            }
            break;
        }
        case kMappingUdpPort:
            Deliver(host.mName, from, SendKind::kZigbee, StripTransform(udp.mPayload));
            break;
        case kDevidUdpPort:
            Deliver(host.mName, from, SendKind::kDevid, ByteSpan(udp.mPayload).subspan(kAppHeaderSize));
            break;
        case kRelayUdpPort:
            Deliver(host.mName, from, SendKind::kBroadcast, udp.mPayload);
            break;
        default:
            Deliver(host.mName, from, SendKind::kUdp, udp.mPayload);
            break;
        }
    }

    void GatewayWiredReceive(Gateway &aGateway, const Ipv6Packet &aPacket)
    {
        std::size_t node   = aGateway.mNode;
        bool        toSelf = aPacket.mDst == aGateway.mConfig.mWiredAddress;

        Record(aGateway.Name(), "WiredRx", "src=" + aPacket.mSrc.ToString() + " dst=" + aPacket.mDst.ToString(),
               EncodeIpv6(aPacket).size(), {});

        std::optional<UdpDatagram> udp;
        if (aPacket.mNextHeader == kProtoUdp)
        {
            udp = DecodeUdp(aPacket.mPayload);
        }

        if (toSelf && udp && udp->mDstPort == kDiscoveryUdpPort)
        {
            GatewayDiscovery(aGateway, aPacket, DecodeDiscovery(udp->mPayload));
            return;
        }

        if (toSelf && aGateway.mDevid)
        {
            MacFrame    mac    = aGateway.mDevid->ToWpan(aPacket, mNodes[node].mMacSeq++);
            AppHeader   header = DecodeAppHeader(mac.mPayload);
            std::size_t target = *NodeByAddress(*mac.mDst);

            Record(aGateway.Name(), "GwTranslate",
                   "mode=DevidTranslation dir=down devid=" + std::to_string(header.mSrcDevid) + "->" +
                       std::to_string(header.mDstDevid) + " node=" + mNodes[target].Name(),
                   mac.mPayload.size(), {});
            mMetrics.mTranslations++;
            Transmit(node, target, mac, "raw");
            return;
        }

        if (toSelf && aGateway.mTunnel)
        {
            NwkFrame frame = BridgeDecapsulate(aPacket, aGateway.mTunnel->mPort);

            Record(aGateway.Name(), "GwTranslate", "mode=ZedBridge dir=in nwk_dst=" + std::to_string(frame.mDst),
                   EncodeNwk(frame).size(), EncodeNwk(frame));
            mMetrics.mTranslations++;
            RouteNwk(node, frame, "nwk");
            return;
        }

        if (aGateway.mMapping)
        {
            if (auto ext = aGateway.mMapping->LookupPseudo(aPacket.mDst))
            {
                Require(udp.has_value(), Errc::kInvalidArgument, "mapping traffic must be UDP");

                std::size_t target = *NodeByAddress(*ext);
                NwkFrame    frame;

                frame.mDst      = mNodes[target].mConfig.mShort;
                frame.mSrc      = aGateway.mMapping->AssignShort(aPacket.mSrc).mShort;
                frame.mRadius   = kMaxHopsLeft;
                frame.mSequence = mNodes[node].mNwkSeq++;
                frame.mPayload  = StripTransform(udp->mPayload);

                Record(aGateway.Name(), "GwTranslate",
                       "mode=ZigbeeMapping dir=down host=" + aPacket.mSrc.ToString() +
                           " short=" + std::to_string(frame.mSrc) + " node=" + mNodes[target].Name(),
                       frame.mPayload.size(), {});
                mMetrics.mTranslations++;
                RouteNwk(node, frame, "nwk");
                return;
            }
        }

        if (aGateway.mBorder && aPacket.mDst.HasPrefix(aGateway.mBorder->Prefix()))
        {
            BorderDownlink(aGateway, aPacket);
            return;
        }

        if (toSelf && aGateway.mConfig.mMode == GatewayMode::kZedBridge)
        {
            Fail(Errc::kNotTunnelTraffic, "no tunnel configured");
        }
        Drop(aGateway.Name(), "NoRoute", "dst=" + aPacket.mDst.ToString());
    }

    void GatewayDiscovery(Gateway &aGateway, const Ipv6Packet &aPacket, const DiscoveryMessage &aMessage)
    {
        std::size_t node = aGateway.mNode;

        if (aMessage.mType == kDiscoveryQuery)
        {
            NodeAddress coordinator = aGateway.mDiscovery.TranslateWiredQuery(aMessage, aPacket.mSrc, mNow);
            NwkFrame    frame;

            frame.mFrameControl = kNwkFrameControlCommand;
            frame.mDst          = std::get<Short16>(coordinator).mShort;
            frame.mSrc          = std::get<Short16>(mNodes[node].mLink).mShort;
            frame.mRadius       = kMaxHopsLeft;
            frame.mSequence     = mNodes[node].mNwkSeq++;
            frame.mPayload      = EncodeDiscovery(aMessage);

            Record(aGateway.Name(), "GwTranslate",
                   "discovery=wired-query id=" + std::to_string(aMessage.mQueryId) +
                       " coordinator=" + ToString(coordinator),
                   frame.mPayload.size(), {});
            mMetrics.mTranslations++;
            RouteNwk(node, frame, "nwk-cmd");
            return;
        }

        Requester   requester = aGateway.mDiscovery.TranslateResponse(aMessage, mNow);
        const auto *target    = std::get_if<NodeAddress>(&requester);

        Require(target != nullptr, Errc::kStaleRecord, "wired response for a wired requester");

        NwkFrame frame;
        frame.mFrameControl = kNwkFrameControlCommand;
        frame.mDst          = std::get<Short16>(*target).mShort;
        frame.mSrc          = std::get<Short16>(mNodes[node].mLink).mShort;
        frame.mRadius       = kMaxHopsLeft;
        frame.mSequence     = mNodes[node].mNwkSeq++;
        frame.mPayload      = EncodeDiscovery(aMessage);

        Record(aGateway.Name(), "GwTranslate",
               "discovery=response id=" + std::to_string(aMessage.mQueryId) + " node=" + ToString(*target),
               frame.mPayload.size(), {});
        mMetrics.mTranslations++;
        RouteNwk(node, frame, "nwk-cmd");
    }

    void BorderDownlink(Gateway &aGateway, const Ipv6Packet &aPacket)
    {
        std::size_t node   = aGateway.mNode;
        NodeAddress dest   = aGateway.mBorder->Resolve(aPacket.mDst);
        auto        next   = NextHop(node, dest);
        std::size_t target = *NodeByAddress(dest);

        if (!next)
        {
            Drop(aGateway.Name(), "NoRoute", "final=" + ToString(dest));
            return;
        }

        std::optional<uint8_t> hops;
        if (*next != target)
        {
            hops = kMaxHopsLeft;
        }

        auto        downlink = aGateway.mBorder->WiredToLowpan(aPacket, hops, mNodes[node].mFrag);
        Bytes       mesh     = hops ? EncodeMesh(MeshHeader{*hops, aGateway.mBorder->LinkAddress(), dest}) : Bytes{};
        std::size_t appSize  = aPacket.mNextHeader == kProtoUdp ? aPacket.mPayload.size() - kUdpHeaderSize
                                                                : aPacket.mPayload.size();
        std::vector<Bytes> fragments;

        for (const Bytes &frame : downlink.mFrames)
        {
            fragments.emplace_back(frame.begin() + static_cast<std::ptrdiff_t>(mesh.size()), frame.end());
        }

        Record(aGateway.Name(), "GwTranslate",
               "mode=SixLowpanBorder dir=down dst=" + aPacket.mDst.ToString() +
                   " frames=" + std::to_string(downlink.mFrames.size()),
               downlink.mDatagramSize, {});
        mMetrics.mTranslations++;
        mMetrics.mUncompressedHeader += EncodeIpv6(aPacket).size() - appSize;
        mMetrics.mCompressedHeader += downlink.mDatagramSize - appSize;
        TransmitDatagram(node, *next, mesh, fragments, downlink.mDatagramSize, appSize);
    }

    void Relay(Gateway &aGateway, const NodeAddress &aOrigin, ByteSpan aPayload)
    {
        if (aGateway.mConfig.mSubscribers.empty())
        {
            return;
        }

        Ipv6Address source = aGateway.mConfig.mWiredAddress;
        if (aGateway.mBorder)
        {
            source = aGateway.mBorder->AddressOf(aOrigin);
        }
        else if (auto origin = NodeByAddress(aOrigin); origin && aGateway.mMapping)
        {
            source = aGateway.mMapping->AssignPseudo(Eui64{mNodes[*origin].mConfig.mExt});
        }

        for (const std::string &subscriber : aGateway.mConfig.mSubscribers)
        {
            const HostConfig &host = mHosts[Entity(subscriber).second];

            Record(aGateway.Name(), "GwTranslate", "relay=broadcast host=" + host.mName, aPayload.size(), {});
            mMetrics.mTranslations++;
            WiredSend(aGateway.Name(),
                      MakeUdpPacket(source, host.mAddress, kRelayUdpPort, kRelayUdpPort, aPayload));
        }
    }

    //-----------------------------------------------------------------------------------------------------------------
    // Traffic

    /// Endpoint of aName as a devid registry entry.
    DevidEndpoint EndpointOf(const std::string &aName) const
    {
        auto [kind, index] = Entity(aName);
        if (kind == EntityKind::kHost)
        {
            return mHosts[index].mAddress;
        }
        Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "devid endpoints are nodes or hosts");
        return mNodes[index].mLink;
    }

    std::optional<uint16_t> FindDevid(const DevidEndpoint &aEndpoint, const Gateway *aOnly = nullptr) const
    {
        for (const Gateway &gateway : mGateways)
        {
            if (gateway.mDevid && (aOnly == nullptr || aOnly == &gateway))
            {
                if (auto devid = gateway.mDevid->Registry().Find(aEndpoint))
                {
                    return devid;
                }
            }
        }
        return std::nullopt;
    }

    Gateway &RequireGateway(Gateway *aGateway, const std::string &aNode, const char *aWhat)
    {
        if (aGateway == nullptr)
        {
            Fail(Errc::kNoSuchNode, "no " + std::string(aWhat) + " gateway serves " + aNode);
        }
        return *aGateway;
    }

    /// Address a host uses to reach node aNode.
    Ipv6Address WiredAddressOfNode(std::size_t aNode)
    {
        Gateway *gateway = PanGateway(aNode);
        if (gateway != nullptr && gateway->mBorder)
        {
            return gateway->mBorder->AddressOf(mNodes[aNode].mLink);
        }
        return NodeAddressV6(aNode);
    }

    void RunSend(const SendSpec &aSend)
    {
        auto [kind, index] = Entity(aSend.mFrom);
        std::string from   = aSend.mFrom;

        if (aSend.mKind == SendKind::kBroadcast)
        {
            Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "broadcasts originate at nodes");
            if (mNodes[index].mPan.mStack == StackKind::kZigbee)
            {
                SendNwk(index, kNwkBroadcast, aSend, kNwkFrameControlData);
                mMetrics.mBroadcastSent++;
                return;
            }
            SendLowpanBroadcast(index, aSend);
            return;
        }

        if (aSend.mKind != SendKind::kDiscover)
        {
            mMetrics.mAppSent++;
        }

        if (kind == EntityKind::kHost)
        {
            HostSend(index, aSend);
        }
        else
        {
            Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "sends originate at nodes or hosts");
            NodeSend(index, aSend);
        }
    }

    void NodeSend(std::size_t aNode, const SendSpec &aSend)
    {
        Node &node = mNodes[aNode];

        switch (aSend.mKind)
        {
        case SendKind::kUdp:
        {
            auto [kind, index] = Entity(aSend.mTo);

            if (kind == EntityKind::kNode && mNodes[index].PanId() == node.PanId())
            {
                Ipv6Packet packet = MakeUdpPacket(LinkLocal(IidFromLinkAddress(node.mLink)),
                                                  LinkLocal(IidFromLinkAddress(mNodes[index].mLink)), aSend.mSrcPort,
                                                  aSend.mDstPort, aSend.mPayload);
                SendDatagram(aNode, mNodes[index].mLink, packet, aSend.mHops, aSend.mPayload.size());
                return;
            }

            Gateway    &gateway = RequireGateway(PanGateway(aNode), node.Name(), "border");
            Ipv6Address dst     = kind == EntityKind::kHost ? mHosts[index].mAddress : WiredAddressOfNode(index);
            Ipv6Address src     = gateway.mBorder ? gateway.mBorder->AddressOf(node.mLink) : NodeAddressV6(aNode);
            Ipv6Packet  packet  = MakeUdpPacket(src, dst, aSend.mSrcPort, aSend.mDstPort, aSend.mPayload);

            SendDatagram(aNode, mNodes[gateway.mNode].mLink, packet, aSend.mHops, aSend.mPayload.size());
            return;
        }
        case SendKind::kZigbee:
            SendNwk(aNode, ResolveNwkDestination(aNode, aSend.mTo), aSend, kNwkFrameControlData);
            return;
        case SendKind::kDevid:
        {
            Gateway &gateway = RequireGateway(PanGateway(aNode), node.Name(), "devid");
            auto     src     = FindDevid(node.mLink, &gateway);
            auto     dst     = FindDevid(EndpointOf(aSend.mTo));

            if (!src || !dst)
            {
                Fail(Errc::kUnknownDevid, "no devid for " + std::string(!src ? node.Name() : aSend.mTo));
            }

            Bytes payload = EncodeAppHeader({*src, *dst});
            payload.insert(payload.end(), aSend.mPayload.begin(), aSend.mPayload.end());
            Transmit(aNode, gateway.mNode, MakeMac(aNode, gateway.mNode, std::move(payload)), "raw");
            return;
        }
        case SendKind::kDiscover:
        {
            Gateway &gateway = RequireGateway(PanGateway(aNode), node.Name(), "discovery");
            NwkFrame frame;

            frame.mFrameControl = kNwkFrameControlCommand;
            frame.mDst          = std::get<Short16>(mNodes[gateway.mNode].mLink).mShort;
            frame.mSrc          = std::get<Short16>(node.mLink).mShort;
            frame.mRadius       = aSend.mHops;
            frame.mSequence     = node.mNwkSeq++;
            frame.mPayload      = EncodeDiscovery({kDiscoveryQuery, mNextQueryId++, aSend.mKey});
            RouteNwk(aNode, frame, "nwk-cmd");
            return;
        }
        case SendKind::kBroadcast:
            break;
        }
    }

    uint16_t ResolveNwkDestination(std::size_t aNode, const std::string &aTo)
    {
        Node &node         = mNodes[aNode];
        auto [kind, index] = Entity(aTo);

        if (kind == EntityKind::kNode && mNodes[index].PanId() == node.PanId())
        {
            return mNodes[index].mConfig.mShort;
        }

        Gateway &gateway = RequireGateway(PanGateway(aNode), node.Name(), "mapping");

        if (gateway.mTunnel && kind == EntityKind::kNode)
        {
            return mNodes[index].mConfig.mShort;
        }
        Require(gateway.mMapping.has_value(), Errc::kNoSuchNode, "PAN gateway does not map Zigbee traffic");

        Ipv6Address remote;
        if (kind == EntityKind::kHost)
        {
            remote = mHosts[index].mAddress;
        }
        else
        {
            Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "Zigbee peers are nodes or hosts");
            Gateway &far = RequireGateway(PanGateway(index), mNodes[index].Name(), "mapping");
            Require(far.mMapping.has_value(), Errc::kNoSuchNode, "remote PAN gateway does not map Zigbee traffic");
            remote = far.mMapping->AssignPseudo(Eui64{mNodes[index].mConfig.mExt});
        }

        Short16 assigned = gateway.mMapping->AssignShort(remote);
        Record(gateway.Name(), "GwTranslate",
               "mode=ZigbeeMapping assign-short host=" + remote.ToString() + " short=" + std::to_string(assigned.mShort),
               0, {});
        return assigned.mShort;
    }

    void SendNwk(std::size_t aNode, uint16_t aDst, const SendSpec &aSend, uint16_t aFrameControl)
    {
        Node    &node = mNodes[aNode];
        NwkFrame frame;

        frame.mFrameControl = aFrameControl;
        frame.mDst          = aDst;
        frame.mSrc          = std::get<Short16>(node.mLink).mShort;
        frame.mRadius       = aSend.mHops;
        frame.mSequence     = node.mNwkSeq++;
        frame.mPayload      = aSend.mPayload;

        if (aDst == kNwkBroadcast)
        {
            MarkSeen(node, {node.mLink, frame.mSequence});
        }
        RouteNwk(aNode, frame, aDst == kNwkBroadcast ? "nwk-bcast" : "nwk");
    }

    void HostSend(std::size_t aHost, const SendSpec &aSend)
    {
        const HostConfig &host = mHosts[aHost];
        auto [kind, index]     = Entity(aSend.mTo);

        switch (aSend.mKind)
        {
        case SendKind::kUdp:
        {
            Ipv6Address dst = kind == EntityKind::kNode   ? WiredAddressOfNode(index)
                              : kind == EntityKind::kHost ? mHosts[index].mAddress
                                                          : mGateways[index].mConfig.mWiredAddress;
            WiredSend(host.mName, MakeUdpPacket(host.mAddress, dst, aSend.mSrcPort, aSend.mDstPort, aSend.mPayload));
            return;
        }
        case SendKind::kZigbee:
        {
            Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "Zigbee targets are nodes");
            Gateway &gateway = RequireGateway(PanGateway(index), mNodes[index].Name(), "mapping");
            Require(gateway.mMapping.has_value(), Errc::kNoSuchNode, "PAN gateway does not map Zigbee traffic");

            Ipv6Address dst = gateway.mMapping->AssignPseudo(Eui64{mNodes[index].mConfig.mExt});
            WiredSend(host.mName, MakeUdpPacket(host.mAddress, dst, kMappingUdpPort, kMappingUdpPort,
                                                PadTransform(aSend.mPayload, gateway.mConfig.mPadSize)));
            return;
        }
        case SendKind::kDevid:
        {
            Require(kind == EntityKind::kNode, Errc::kInvalidArgument, "devid targets from hosts are nodes");
            Gateway &gateway = RequireGateway(PanGateway(index), mNodes[index].Name(), "devid");
            auto     src     = FindDevid(host.mAddress, &gateway);
            auto     dst     = FindDevid(mNodes[index].mLink, &gateway);

            if (!src || !dst)
            {
                Fail(Errc::kUnknownDevid, "no devid for " + std::string(!src ? host.mName : aSend.mTo));
            }

            Bytes payload = EncodeAppHeader({*src, *dst});
            payload.insert(payload.end(), aSend.mPayload.begin(), aSend.mPayload.end());
            WiredSend(host.mName, MakeUdpPacket(host.mAddress, gateway.mConfig.mWiredAddress, kDevidUdpPort,
                                                kDevidUdpPort, payload));
            return;
        }
        case SendKind::kDiscover:
        {
            Require(kind == EntityKind::kGateway, Errc::kInvalidArgument, "wired discovery queries go to a gateway");
            DiscoveryMessage query{kDiscoveryQuery, mNextQueryId++, aSend.mKey};
            WiredSend(host.mName, MakeUdpPacket(host.mAddress, mGateways[index].mConfig.mWiredAddress,
                                                kDiscoveryUdpPort, kDiscoveryUdpPort, EncodeDiscovery(query)));
            return;
        }
        case SendKind::kBroadcast:
            break;
        }
    }
};

//---------------------------------------------------------------------------------------------------------------------
// World

World::World(uint64_t aSeed)
    : mImpl(std::make_unique<Impl>(aSeed))
{
}

World::~World(void)                            = default;
World::World(World &&) noexcept            = default;
World &World::operator=(World &&) noexcept = default;

void World::SetWiredLatency(double aSeconds)
{
    Require(aSeconds >= 0, Errc::kInvalidArgument, "negative wired latency");
    mImpl->mWiredLatency = aSeconds;
}

void World::AddPan(const PanConfig &aPan)
{
    Require(!mImpl->mPans.contains(aPan.mPanId), Errc::kInvalidArgument, "duplicate PAN");
    mImpl->mPans.emplace(aPan.mPanId, aPan);
}

void World::AddNode(const NodeConfig &aNode)
{
    Impl &impl = *mImpl;
    auto  pan  = impl.mPans.find(aNode.mPanId);

    Require(!impl.mPrepared, Errc::kInvalidArgument, "world already running");
    if (pan == impl.mPans.end())
    {
        Fail(Errc::kInvalidArgument, "node '" + aNode.mName + "' references an undeclared PAN");
    }
    Require(aNode.mShort < 0xfffe, Errc::kInvalidArgument, "short address 0xfffe/0xffff is reserved");

    Impl::Node node;
    node.mConfig = aNode;
    node.mPan    = pan->second;
    node.mLink   = pan->second.mExtended && pan->second.mStack != StackKind::kZigbee
                       ? NodeAddress(aNode.mExt)
                       : NodeAddress(Short16{aNode.mPanId, aNode.mShort});

    std::size_t index = impl.mNodes.size();
    impl.ClaimName(aNode.mName, Impl::EntityKind::kNode, index);
    for (NodeAddress address : {NodeAddress(Short16{aNode.mPanId, aNode.mShort}), NodeAddress(aNode.mExt)})
    {
        if (!impl.mNodeByAddress.emplace(address, index).second)
        {
            Fail(Errc::kInvalidArgument, "node '" + aNode.mName + "' reuses address " + ToString(address));
        }
    }
    impl.mNodes.push_back(std::move(node));
}

void World::AddHost(const HostConfig &aHost)
{
    Impl &impl = *mImpl;

    impl.ClaimName(aHost.mName, Impl::EntityKind::kHost, impl.mHosts.size());
    impl.mHosts.push_back(aHost);
}

void World::AddLink(const std::string &aA, const std::string &aB, double aLoss, BandId aBand)
{
    Impl       &impl = *mImpl;
    std::size_t a    = impl.NodeIndex(aA);
    std::size_t b    = impl.NodeIndex(aB);

    Require(!impl.mPrepared, Errc::kInvalidArgument, "world already running");
    Require(a != b, Errc::kInvalidArgument, "link from a node to itself");
    Require(aLoss >= 0 && aLoss <= 1, Errc::kInvalidArgument, "loss probability outside [0, 1]");
    Require(!impl.mLinkBetween.contains({a, b}), Errc::kInvalidArgument, "duplicate link");

    std::size_t index = impl.mLinks.size();
    impl.mLinks.push_back(Impl::Link{a, b, aLoss, aBand});
    impl.mLinkBetween[{a, b}] = index;
    impl.mLinkBetween[{b, a}] = index;
    impl.mNodes[a].mLinks.push_back(index);
    impl.mNodes[b].mLinks.push_back(index);
}

void World::AddRoute(const std::string &aAt, const std::string &aTo, const std::string &aVia)
{
    Impl &impl = *mImpl;
    impl.mManualRoutes.push_back({impl.NodeIndex(aAt), impl.NodeIndex(aTo), impl.NodeIndex(aVia)});
}

void World::AddGateway(const GatewayConfig &aGateway)
{
    Impl         &impl  = *mImpl;
    std::size_t   node  = impl.NodeIndex(aGateway.mNode);
    Impl::Node   &host  = impl.mNodes[node];
    std::size_t   index = impl.mGateways.size();
    GatewayMode   mode  = aGateway.mMode;
    Impl::Gateway gateway{aGateway, node, {}, {}, {}, {}, DiscoveryTranslator(aGateway.mTtl)};

    Require(!host.mHostedGateway, Errc::kInvalidArgument, "node already hosts a gateway");
    impl.ClaimName(aGateway.mName, Impl::EntityKind::kGateway, index);

    std::optional<Ipv6Prefix> prefix = aGateway.mPrefix ? aGateway.mPrefix : host.mPan.mPrefix;

    if (mode == GatewayMode::kSixLowpanBorder || mode == GatewayMode::kDual)
    {
        Require(prefix.has_value(), Errc::kInvalidArgument, "border gateway needs a prefix");
        Require(host.mPan.mStack == StackKind::kLowpan || mode == GatewayMode::kDual, Errc::kInvalidArgument,
                "border gateway on a non-6LoWPAN PAN");
        gateway.mBorder.emplace(*prefix, host.mLink, host.mPan.mSecurity);
    }
    if (mode == GatewayMode::kZigbeeMapping || mode == GatewayMode::kDual)
    {
        Require(prefix.has_value(), Errc::kInvalidArgument, "mapping gateway needs a prefix");
        gateway.mMapping.emplace(*prefix, host.PanId(), aGateway.mPoolFirst, aGateway.mPoolSize);
    }
    if (mode == GatewayMode::kDevidTranslation)
    {
        gateway.mDevid.emplace(aGateway.mWiredAddress, host.mLink, host.PanId(), host.mPan.mSecurity);
        for (const auto &[devid, name] : aGateway.mDevids)
        {
            gateway.mDevid->Registry().Register(devid, impl.EndpointOf(name));
        }
    }
    if (mode == GatewayMode::kZedBridge)
    {
        Require(aGateway.mTunnelPeer.has_value(), Errc::kInvalidArgument, "bridge gateway needs a tunnel peer");
        gateway.mTunnel = Tunnel{aGateway.mWiredAddress, *aGateway.mTunnelPeer, aGateway.mTunnelPort};
    }
    for (const auto &[service, name] : aGateway.mServices)
    {
        auto [kind, hostIndex] = impl.Entity(name);
        Require(kind == Impl::EntityKind::kHost, Errc::kInvalidArgument, "discovery providers are hosts");
        gateway.mDiscovery.AddWiredService(service, impl.mHosts[hostIndex].mAddress);
    }
    for (const std::string &subscriber : aGateway.mSubscribers)
    {
        Require(impl.Entity(subscriber).first == Impl::EntityKind::kHost, Errc::kInvalidArgument,
                "subscribers are hosts");
    }

    for (std::size_t i = 0; i < impl.mNodes.size(); i++)
    {
        Impl::Node &member = impl.mNodes[i];

        if (member.PanId() != host.PanId())
        {
            continue;
        }
        if (!member.mPanGateway)
        {
            member.mPanGateway = index;
        }
        if (gateway.mBorder)
        {
            gateway.mBorder->AddNode(member.mLink);
        }
        if (gateway.mMapping)
        {
            gateway.mMapping->AssignPseudo(member.mConfig.mExt);
        }
        if (member.mConfig.mRole == NodeRole::kCoordinator)
        {
            gateway.mDiscovery.AddPan(member.PanId(), Short16{member.PanId(), member.mConfig.mShort});
        }
    }

    host.mHostedGateway = index;
    impl.mGateways.push_back(std::move(gateway));
}

void World::Schedule(const SendSpec &aSend)
{
    Impl &impl = *mImpl;

    impl.Entity(aSend.mFrom);
    if (aSend.mKind != SendKind::kBroadcast)
    {
        impl.Entity(aSend.mTo);
    }
    Require(aSend.mAt >= impl.mNow, Errc::kInvalidArgument, "send scheduled in the past");
    Require(aSend.mHops <= kMaxHopsLeft, Errc::kInvalidArgument, "hops above 15");

    impl.At(aSend.mAt, [&impl, aSend] { impl.Guard(aSend.mFrom, [&] { impl.RunSend(aSend); }); });
}

void World::RunUntil(double aEnd)
{
    Impl &impl = *mImpl;

    impl.Prepare();
    while (!impl.mQueue.empty() && impl.mQueue.top().mTime <= aEnd)
    {
        Impl::Event event = impl.mQueue.top();
        impl.mQueue.pop();
        impl.mNow = event.mTime;
        event.mAction();
    }
    impl.mNow = std::max(impl.mNow, aEnd);
}

double World::Now(void) const { return mImpl->mNow; }

const std::vector<TraceRecord> &World::Trace(void) const { return mImpl->mTrace; }

const std::vector<Delivery> &World::Deliveries(void) const { return mImpl->mDeliveries; }

const Metrics &World::GetMetrics(void) const { return mImpl->mMetrics; }

NodeAddress World::LinkAddressOf(const std::string &aNode) const { return mImpl->mNodes[mImpl->NodeIndex(aNode)].mLink; }

Ipv6Address World::AddressOf(const std::string &aName) const
{
    auto [kind, index] = mImpl->Entity(aName);

    switch (kind)
    {
    case Impl::EntityKind::kNode:
        return mImpl->WiredAddressOfNode(index);
    case Impl::EntityKind::kHost:
        return mImpl->mHosts[index].mAddress;
    case Impl::EntityKind::kGateway:
        break;
    }
    return mImpl->mGateways[index].mConfig.mWiredAddress;
}

std::size_t World::ReassemblyBuffers(const std::string &aNode) const
{
    return mImpl->mNodes[mImpl->NodeIndex(aNode)].mReassembly.Size();
}

} // namespace sixlo
