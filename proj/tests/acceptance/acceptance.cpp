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
 *   Acceptance checks. Prints one PASS or FAIL line per criterion.
 *
 *   Usage: acceptance [N]. With N only criterion N runs. The exit status is
 *   zero when every criterion that ran passed.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sixlo/addressing.hpp"
#include "sixlo/gateway.hpp"
#include "sixlo/lowpan.hpp"
#include "sixlo/netsim.hpp"
#include "sixlo/reassembly.hpp"
#include "sixlo/scenario.hpp"

using namespace sixlo;

namespace {

namespace fs = std::filesystem;

/// Collects the first failed expectation of a criterion.
class Outcome
{
public:
    void Expect(bool aCondition, const std::string &aWhat)
    {
        if (!aCondition && mPass)
        {
            mPass = false;
            mWhy  = aWhat;
        }
    }

    bool               Passed(void) const { return mPass; }
    const std::string &Why(void) const { return mWhy; }

private:
    bool        mPass = true;
    std::string mWhy;
};

template <typename Fn> std::optional<Errc> CodeOf(Fn &&aFn)
{
    try
    {
        aFn();
    }
    catch (const Error &e)
    {
        return e.Code();
    }
    return std::nullopt;
}

Bytes RandomBytes(std::mt19937_64 &aRng, std::size_t aSize)
{
    Bytes out(aSize);
    for (auto &b : out)
    {
        b = static_cast<uint8_t>(aRng());
    }
    return out;
}

fs::path ScenarioPath(const std::string &aName) { return fs::path(SIXLO_SCENARIO_DIR) / (aName + ".scn"); }

World RunWorld(const std::string &aName)
{
    Scenario scenario = LoadScenario(ScenarioPath(aName));
    World    world    = BuildWorld(scenario);
    world.RunUntil(scenario.mEnd);
    return world;
}

std::vector<const TraceRecord *> Records(const World &aWorld, const std::string &aKind, const std::string &aNode = {})
{
    std::vector<const TraceRecord *> out;
    for (const TraceRecord &record : aWorld.Trace())
    {
        if (record.mKind == aKind && (aNode.empty() || record.mNode == aNode))
        {
            out.push_back(&record);
        }
    }
    return out;
}

std::vector<const Delivery *> DeliveriesAt(const World &aWorld, const std::string &aNode)
{
    std::vector<const Delivery *> out;
    for (const Delivery &delivery : aWorld.Deliveries())
    {
        if (delivery.mAt == aNode)
        {
            out.push_back(&delivery);
        }
    }
    return out;
}

uint64_t DropCount(const World &aWorld, const std::string &aReason)
{
    auto it = aWorld.GetMetrics().mDrops.find(aReason);
    return it == aWorld.GetMetrics().mDrops.end() ? 0 : it->second;
}

/// Reads "hops_left=A->B" from a Fwd detail; {-1, -1} when absent.
std::pair<int, int> HopsOf(const std::string &aDetail)
{
    int from = -1, to = -1;
    std::size_t at = aDetail.find("hops_left=");
    if (at != std::string::npos)
    {
        std::sscanf(aDetail.c_str() + at, "hops_left=%d->%d", &from, &to);
    }
    return {from, to};
}

/// Ones-complement UDP checksum over the IPv6 pseudo-header, written from the definition.
uint16_t ReferenceUdpChecksum(const Ipv6Packet &aPacket)
{
    Bytes buffer;
    buffer.insert(buffer.end(), aPacket.mSrc.mBytes.begin(), aPacket.mSrc.mBytes.end());
    buffer.insert(buffer.end(), aPacket.mDst.mBytes.begin(), aPacket.mDst.mBytes.end());

    uint32_t length = static_cast<uint32_t>(aPacket.mPayload.size());
    for (int shift = 24; shift >= 0; shift -= 8)
    {
        buffer.push_back(static_cast<uint8_t>(length >> shift));
    }
    buffer.insert(buffer.end(), {0, 0, 0, kProtoUdp});

    Bytes segment = aPacket.mPayload;
    segment[6] = segment[7] = 0;
    buffer.insert(buffer.end(), segment.begin(), segment.end());
    if (buffer.size() % 2)
    {
        buffer.push_back(0);
    }

    uint32_t sum = 0;
    for (std::size_t i = 0; i < buffer.size(); i += 2)
    {
        sum += (static_cast<uint32_t>(buffer[i]) << 8) | buffer[i + 1];
    }
    while (sum >> 16)
    {
        sum = (sum & 0xffff) + (sum >> 16);
    }
    uint16_t result = static_cast<uint16_t>(~sum);
    return result == 0 ? 0xffff : result;
}

/// Frames needed for a datagram: chunks are multiples of 8 beside a 4- or 5-octet header.
std::size_t ReferenceFragmentCount(std::size_t aSize, std::size_t aBudget)
{
    if (aSize <= aBudget)
    {
        return 1;
    }
    std::size_t first = (aBudget - 4) / 8 * 8;
    std::size_t next  = (aBudget - 5) / 8 * 8;
    return 1 + (aSize - first + next - 1) / next;
}

void CheckBudget(Outcome &aOut)
{
    // 2 frame control + 1 sequence + 2 x (2 PAN + 8 EUI-64) + 2 FCS
    constexpr std::size_t kMacWorstCase = 2 + 1 + 2 * (2 + 8) + 2;
    // 5-octet auxiliary security header plus a 4-, 8- or 16-octet MIC
    const std::pair<SecurityMode, std::size_t> cases[] = {
        {SecurityMode::kNone, 0},
        {SecurityMode::kAesCcm32, 5 + 4},
        {SecurityMode::kAesCcm64, 5 + 8},
        {SecurityMode::kAesCcm128, 5 + 16},
    };

    for (const auto &[mode, overhead] : cases)
    {
        std::size_t expected = kMaxPsduSize - kMacWorstCase - overhead;
        aOut.Expect(MacPayloadBudget(mode) == expected,
                    std::string(SecurityModeName(mode)) + " budget " + std::to_string(MacPayloadBudget(mode)));
    }
    aOut.Expect(MacPayloadBudget(SecurityMode::kNone) == 102, "unsecured budget is not 102");
    aOut.Expect(MacPayloadBudget(SecurityMode::kAesCcm32) == 93, "AES-CCM-32 budget is not 93");
    aOut.Expect(MacPayloadBudget(SecurityMode::kAesCcm64) == 89, "AES-CCM-64 budget is not 89");
    aOut.Expect(MacPayloadBudget(SecurityMode::kAesCcm128) == 81, "AES-CCM-128 budget is not 81");
}

void CheckDispatch(Outcome &aOut)
{
    std::ifstream  in(fs::path(SIXLO_TEST_DATA_DIR) / "dispatch.golden");
    std::string    line;
    std::set<int>  seen;

    aOut.Expect(in.good(), "dispatch.golden missing");
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        std::istringstream fields(line);
        std::string        octet, kind;
        fields >> octet >> kind;

        int value = std::stoi(octet, nullptr, 16);
        seen.insert(value);
        std::string actual = DispatchKindName(ParseDispatch(static_cast<uint8_t>(value)).mKind);
        aOut.Expect(actual == kind, "octet " + octet + " classified " + actual + ", golden " + kind);
    }
    aOut.Expect(seen.size() == 256 && *seen.begin() == 0 && *seen.rbegin() == 255, "golden file is not exhaustive");
}

void CheckTwoOctetHeader(Outcome &aOut)
{
    const NodeAddress linkSrc = Short16{0xabcd, 0x0001};
    const NodeAddress linkDst = Eui64{0x00124b0001020304};
    const Ipv6Address src     = LinkLocal(IidFromLinkAddress(linkSrc));
    const Ipv6Address dst     = LinkLocal(IidFromLinkAddress(linkDst));
    const Bytes       data    = {0x01, 0x02, 0x03, 0x04, 0x05};

    Ipv6Packet icmp;
    icmp.mNextHeader = kProtoIcmpv6;
    icmp.mSrc        = src;
    icmp.mDst        = dst;
    icmp.mPayload    = data;

    Bytes out = CompressIpv6(icmp, linkSrc, linkDst);
    aOut.Expect(out.size() == 1 + 2 + data.size(), "header after dispatch is " + std::to_string(out.size() - 1 - data.size()));
    aOut.Expect(out[0] == kDispatchHc1, "dispatch is not HC1");
    aOut.Expect(Bytes(out.end() - data.size(), out.end()) == data, "payload not carried verbatim");
    aOut.Expect(DecompressIpv6(out, linkSrc, linkDst) == icmp, "ICMP packet does not round trip");

    Ipv6Packet udp = MakeUdpPacket(src, dst, 0xf0b1, 0xf0b2, data);
    Bytes      c   = CompressIpv6(udp, linkSrc, linkDst);
    aOut.Expect(c.size() == 1 + 2 + 4 + data.size(), "UDP packet does not compress to 2 + 4 octets");
    aOut.Expect(DecompressIpv6(c, linkSrc, linkDst) == udp, "UDP packet does not round trip");
}

void CheckUdpCompression(Outcome &aOut)
{
    std::mt19937_64 rng(4);

    for (uint16_t s = 0xf0b0; s <= 0xf0bf; s++)
    {
        for (uint16_t d = 0xf0b0; d <= 0xf0bf; d++)
        {
            UdpDatagram udp;
            udp.mSrcPort  = s;
            udp.mDstPort  = d;
            udp.mChecksum = static_cast<uint16_t>(rng());
            udp.mPayload  = RandomBytes(rng, rng() % 32);

            Bytes out = CompressUdp(udp);
            aOut.Expect(out.size() == 4 + udp.mPayload.size(), "in-range ports did not give 4 octets");
            aOut.Expect(DecompressUdp(out) == udp, "in-range ports do not round trip");
        }
    }

    for (int i = 0; i < 5000; i++)
    {
        UdpDatagram udp;
        udp.mSrcPort  = static_cast<uint16_t>(rng());
        udp.mDstPort  = i % 2 ? static_cast<uint16_t>(0xf0b0 | (rng() & 0xf)) : static_cast<uint16_t>(rng());
        udp.mChecksum = static_cast<uint16_t>(rng());
        udp.mPayload  = RandomBytes(rng, rng() % 32);
        if ((udp.mSrcPort & 0xfff0) == 0xf0b0 && (udp.mDstPort & 0xfff0) == 0xf0b0)
        {
            continue;
        }

        std::optional<Errc> error;
        Bytes               out;
        error = CodeOf([&] { out = CompressUdp(udp); });
        aOut.Expect(!error, "out-of-range ports raised an error");
        if (error)
        {
            return;
        }
        aOut.Expect(out.size() > 4 + udp.mPayload.size(), "out-of-range ports compressed to 4 octets");
        aOut.Expect(DecompressUdp(out) == udp, "out-of-range ports do not round trip");
    }
}

NodeAddress RandomLink(std::mt19937_64 &aRng)
{
    if (aRng() % 2)
    {
        return Short16{static_cast<uint16_t>(aRng()), static_cast<uint16_t>(aRng())};
    }
    return Eui64{aRng()};
}

Ipv6Address RandomAddress(std::mt19937_64 &aRng, const NodeAddress &aLink)
{
    Ipv6Address any;
    for (auto &b : any.mBytes)
    {
        b = static_cast<uint8_t>(aRng());
    }
    switch (aRng() % 4)
    {
    case 0:
        return any;
    case 1:
        return GlobalAddress(any.Prefix(), IidFromLinkAddress(aLink));
    case 2:
        return GlobalAddress(kLinkLocalPrefix, IidOf(any));
    default:
        return LinkLocal(IidFromLinkAddress(aLink));
    }
}

void CheckCodecSoundness(Outcome &aOut)
{
    std::mt19937_64 rng(5);

    for (int i = 0; i < 10000 && aOut.Passed(); i++)
    {
        NodeAddress linkSrc = RandomLink(rng);
        NodeAddress linkDst = RandomLink(rng);
        auto        port    = [&] {
            return rng() % 2 ? static_cast<uint16_t>(0xf0b0 | (rng() & 0xf)) : static_cast<uint16_t>(rng());
        };

        Ipv6Packet packet = MakeUdpPacket(RandomAddress(rng, linkSrc), RandomAddress(rng, linkDst), port(), port(),
                                          RandomBytes(rng, rng() % 80), static_cast<uint8_t>(rng()));
        if (rng() % 4 == 0)
        {
            packet.mTrafficClass = static_cast<uint8_t>(rng());
            packet.mFlowLabel    = static_cast<uint32_t>(rng() & 0xfffff);
        }

        uint16_t checksum = static_cast<uint16_t>((packet.mPayload[6] << 8) | packet.mPayload[7]);
        aOut.Expect(checksum == ReferenceUdpChecksum(packet), "generated checksum disagrees with the reference");

        Bytes      wire = EncodeIpv6(packet);
        Ipv6Packet back = DecompressIpv6(CompressIpv6(packet, linkSrc, linkDst), linkSrc, linkDst);
        aOut.Expect(EncodeIpv6(back) == wire, "packet " + std::to_string(i) + " does not round trip");
        aOut.Expect(ReferenceUdpChecksum(back) == checksum, "checksum changed across the codec");
    }
}

void CheckFragmentation(Outcome &aOut)
{
    std::mt19937_64 rng(6);
    NodeAddress     source = Short16{0xabcd, 0x0007};

    for (int i = 0; i < 1000 && aOut.Passed(); i++)
    {
        std::size_t budget = 16 + rng() % (kMaxPsduSize - 16 + 1);
        Bytes       datagram = RandomBytes(rng, 1 + rng() % kMaxDatagramSize);
        datagram[0]          = kDispatchHc1;

        FragmentationContext context;
        context.mNextTag          = static_cast<uint16_t>(rng());
        std::vector<Bytes> frames = Fragment(datagram, budget, context);
        std::string        where  = "datagram " + std::to_string(datagram.size()) + " at budget " + std::to_string(budget);

        aOut.Expect(frames.size() == ReferenceFragmentCount(datagram.size(), budget), where + ": wrong frame count");
        for (const Bytes &frame : frames)
        {
            aOut.Expect(frame.size() <= budget, where + ": frame over budget");
        }
        if (frames.size() == 1)
        {
            aOut.Expect(frames[0] == datagram, where + ": single frame altered");
            continue;
        }

        std::shuffle(frames.begin(), frames.end(), rng);
        ReassemblyTable table;
        for (std::size_t k = 0; k < frames.size(); k++)
        {
            AcceptResult result = table.Accept(source, frames[k], 0.001 * static_cast<double>(k));
            if (k + 1 < frames.size())
            {
                aOut.Expect(result.mStatus == AcceptResult::Status::kPending, where + ": completed early");
            }
            else
            {
                aOut.Expect(result.mStatus == AcceptResult::Status::kComplete, where + ": did not complete");
                aOut.Expect(result.mDatagram == datagram, where + ": reassembled bytes differ");
            }
        }
        aOut.Expect(table.Size() == 0, where + ": buffer left behind");
    }

    Bytes mtu(kIpv6MinMtu, 0x5a);
    mtu[0] = kDispatchIpv6;
    FragmentationContext context;
    std::vector<Bytes>   frames = Fragment(mtu, MacPayloadBudget(SecurityMode::kNone), context);
    aOut.Expect(frames.size() == 14, "1280 octets at budget 102 gave " + std::to_string(frames.size()) + " frames");

    ReassemblyTable table;
    AcceptResult    last;
    for (const Bytes &frame : frames)
    {
        last = table.Accept(source, frame, 0);
    }
    aOut.Expect(last.mStatus == AcceptResult::Status::kComplete && last.mDatagram == mtu, "1280 octets not reassembled");

    ReassemblyTable late;
    late.Accept(source, frames[0], 0);
    AcceptResult after = late.Accept(source, frames[1], 61);
    aOut.Expect(after.mStatus == AcceptResult::Status::kDropped && after.mReason == DropReason::kTimeout,
                "fragment at 61 s was not a timeout drop");

    ReassemblyTable onTime;
    onTime.Accept(source, frames[0], 0);
    aOut.Expect(onTime.Accept(source, frames[1], 60).mStatus == AcceptResult::Status::kPending,
                "fragment at exactly 60 s was dropped");
}

void CheckMesh(Outcome &aOut)
{
    World line = RunWorld("line4");

    auto b = Records(line, "Fwd", "B");
    auto c = Records(line, "Fwd", "C");
    aOut.Expect(b.size() == 2, "B forwarded " + std::to_string(b.size()) + " frames");
    aOut.Expect(c.size() == 1, "C forwarded " + std::to_string(c.size()) + " frames");
    if (!aOut.Passed())
    {
        return;
    }
    aOut.Expect(HopsOf(b[0]->mDetail) == std::pair{4, 3}, "B did not decrement 4 to 3");
    aOut.Expect(HopsOf(c[0]->mDetail) == std::pair{3, 2}, "C did not decrement 3 to 2");
    aOut.Expect(HopsOf(b[1]->mDetail) == std::pair{2, 1}, "B did not decrement 2 to 1");
    aOut.Expect(Records(line, "Fwd", "A").empty() && Records(line, "Fwd", "D").empty(), "an endpoint forwarded");

    auto atD = DeliveriesAt(line, "D");
    aOut.Expect(atD.size() == 1 && atD[0]->mTime < 2, "hops_left 4 was not delivered exactly once");

    auto drops = Records(line, "Drop");
    aOut.Expect(drops.size() == 1 && drops[0]->mNode == "C" && drops[0]->mDetail.starts_with("reason=HopsExhausted"),
                "hops_left 2 did not drop at the second forwarder");

    // Random meshes with reduced-function devices mixed in.
    std::mt19937_64 rng(7);
    for (int round = 0; round < 40 && aOut.Passed(); round++)
    {
        const std::size_t n = 4 + rng() % 8;
        World             world(rng());
        std::set<std::string> rfds;

        world.AddPan(PanConfig{0x7a7a, false, StackKind::kLowpan, SecurityMode::kNone, std::nullopt});
        for (std::size_t i = 0; i < n; i++)
        {
            NodeConfig node;
            node.mName  = "N" + std::to_string(i);
            node.mPanId = 0x7a7a;
            node.mRole  = i == 0 ? NodeRole::kCoordinator : rng() % 3 == 0 ? NodeRole::kRfd : NodeRole::kFfd;
            node.mShort = static_cast<uint16_t>(i + 1);
            node.mExt   = Eui64{0x0200000000000000 | i};
            if (node.mRole == NodeRole::kRfd)
            {
                rfds.insert(node.mName);
            }
            world.AddNode(node);
        }
        std::set<std::pair<std::size_t, std::size_t>> links;
        for (std::size_t i = 1; i < n; i++)
        {
            links.insert({rng() % i, i});
        }
        for (std::size_t extra = rng() % n; extra > 0; extra--)
        {
            std::size_t x = rng() % n, y = rng() % n;
            if (x != y)
            {
                links.insert({std::min(x, y), std::max(x, y)});
            }
        }
        for (const auto &[x, y] : links)
        {
            world.AddLink("N" + std::to_string(x), "N" + std::to_string(y), 0, BandId::kB2450);
        }
        for (int s = 0; s < 10; s++)
        {
            SendSpec send;
            send.mAt      = 1 + 0.2 * s;
            send.mFrom    = "N" + std::to_string(rng() % n);
            send.mTo      = "N" + std::to_string(rng() % n);
            send.mKind    = rng() % 4 == 0 ? SendKind::kBroadcast : SendKind::kUdp;
            send.mPayload = RandomBytes(rng, 1 + rng() % 150);
            if (send.mKind == SendKind::kBroadcast)
            {
                send.mPayload.resize(std::min<std::size_t>(send.mPayload.size(), 40));
            }
            if (send.mKind == SendKind::kUdp && send.mFrom == send.mTo)
            {
                continue;
            }
            world.Schedule(send);
        }
        world.RunUntil(100);

        for (const TraceRecord *fwd : Records(world, "Fwd"))
        {
            aOut.Expect(!rfds.contains(fwd->mNode), "RFD " + fwd->mNode + " forwarded");
        }
    }
}

void CheckBroadcast(Outcome &aOut)
{
    Scenario scenario = LoadScenario(ScenarioPath("mesh10"));
    World    world    = BuildWorld(scenario);
    world.RunUntil(scenario.mEnd);

    std::map<std::string, int> copies;
    for (const Delivery &delivery : world.Deliveries())
    {
        if (delivery.mKind == SendKind::kBroadcast)
        {
            copies[delivery.mAt]++;
        }
    }
    aOut.Expect(scenario.mNodes.size() == 10, "mesh does not have ten nodes");
    for (const auto &node : scenario.mNodes)
    {
        int expected = node.mName == scenario.mSends[0].mFrom ? 0 : 1;
        aOut.Expect(copies[node.mName] == expected,
                    node.mName + " delivered " + std::to_string(copies[node.mName]) + " copies");
    }
    aOut.Expect(Records(world, "Tx").size() == 10, "each node should transmit the flood once");
    aOut.Expect(DropCount(world, "Duplicate") > 0, "no duplicate was suppressed");

    // Termination: nothing happens long after the flood, however long the run.
    world.RunUntil(10000);
    aOut.Expect(world.Trace().back().mTime < scenario.mSends[0].mAt + 1, "flood still active after one second");
}

void CheckBorderEndToEnd(Outcome &aOut)
{
    Scenario scenario = LoadScenario(ScenarioPath("border_e2e"));
    World    world    = BuildWorld(scenario);
    world.RunUntil(scenario.mEnd);

    const SendSpec &up   = scenario.mSends[0];
    const SendSpec &down = scenario.mSends[1];

    aOut.Expect(scenario.mNodes[3].mName == "R" && scenario.mNodes[3].mRole == NodeRole::kRfd, "R is not an RFD");
    aOut.Expect(Records(world, "Fwd", "F1").size() >= 1 && Records(world, "Fwd", "F2").size() >= 1,
                "uplink did not cross the mesh");

    auto atHost = DeliveriesAt(world, "H");
    aOut.Expect(atHost.size() == 1 && atHost[0]->mPayload == up.mPayload, "uplink payload not delivered byte-identical");

    auto wired = Records(world, "WiredTx", "H");
    aOut.Expect(wired.size() == 1 && wired[0]->mBytes == kIpv6MinMtu, "host did not send a 1280-octet packet");

    auto frag = Records(world, "FragStart", "G");
    aOut.Expect(frag.size() == 1, "downlink was not fragmented");

    auto atNode = DeliveriesAt(world, "R");
    aOut.Expect(atNode.size() == 1 && atNode[0]->mPayload == down.mPayload,
                "1280-octet downlink not delivered byte-identical");
    aOut.Expect(Records(world, "ReasmComplete", "R").size() == 1, "R did not reassemble the downlink");
    aOut.Expect(world.GetMetrics().mDrops.empty(), "unexpected drops");
}

void CheckModeContrast(Outcome &aOut)
{
    World devid = RunWorld("cross_devid");
    bool  crossed = false;
    for (const Delivery *delivery : DeliveriesAt(devid, "T"))
    {
        crossed |= delivery->mPayload == FromHex("63726f73732d726567696f6e");
    }
    aOut.Expect(!crossed, "devid gateways delivered across regions");
    aOut.Expect(DropCount(devid, "UnknownDevid") >= 1, "cross-region devid send was not refused");
    aOut.Expect(DropCount(devid, "NoFragmentation") >= 1, "over-budget devid packet was not refused");
    aOut.Expect(DeliveriesAt(devid, "H").size() == 1, "in-region devid send failed");

    const NodeAddress node = Short16{0x0c01, 0x0010};
    const Ipv6Address host = Ipv6Address::Parse("2001:db8:ff::10");
    const Ipv6Address wire = Ipv6Address::Parse("2001:db8:ff::1");
    DevidTranslator   translator(wire, Short16{0x0c01, 0x0001}, 0x0c01, SecurityMode::kNone);
    translator.Registry().Register(10, node);
    translator.Registry().Register(100, host);

    std::size_t budget = MacPayloadBudget(SecurityMode::kNone);
    for (std::size_t size : {budget - kAppHeaderSize, budget - kAppHeaderSize + 1})
    {
        Bytes payload = EncodeAppHeader({100, 10});
        payload.resize(kAppHeaderSize + size, 0x33);
        Ipv6Packet packet = MakeUdpPacket(host, wire, kDevidUdpPort, kDevidUdpPort, payload);
        auto       error  = CodeOf([&] { translator.ToWpan(packet, 1); });
        if (payload.size() <= budget)
        {
            aOut.Expect(!error, "devid refused a packet that fits");
        }
        else
        {
            aOut.Expect(error == Errc::kNoFragmentation, "devid accepted an over-budget packet");
        }
    }

    for (const char *name : {"cross_border", "cross_zigbee"})
    {
        Scenario scenario = LoadScenario(ScenarioPath(name));
        World    world    = BuildWorld(scenario);
        world.RunUntil(scenario.mEnd);
        for (const SendSpec &send : scenario.mSends)
        {
            auto at = DeliveriesAt(world, send.mTo);
            bool ok = std::any_of(at.begin(), at.end(), [&](const Delivery *d) { return d->mPayload == send.mPayload; });
            aOut.Expect(ok, std::string(name) + ": " + send.mFrom + " to " + send.mTo + " not delivered");
        }
    }

    std::mt19937_64 rng(10);
    for (std::size_t size = 0; size <= kMaxAplSize; size++)
    {
        Bytes apl    = RandomBytes(rng, size);
        Bytes padded = PadTransform(apl);
        aOut.Expect(padded.size() == kIpv6MinMtu - kIpv6HeaderSize - kUdpHeaderSize, "pad size is not 1232");
        aOut.Expect(StripTransform(padded) == apl, "pad/strip lost data at size " + std::to_string(size));
    }
    aOut.Expect(CodeOf([&] { PadTransform(Bytes(kMaxAplSize + 1, 0)); }) == Errc::kAplTooLarge, "95 octets accepted");
}

void CheckDeterminism(Outcome &aOut)
{
    const fs::path base = fs::temp_directory_path() / "sixlo-acceptance";
    std::size_t    count = 0;

    auto slurp = [](const fs::path &aPath) {
        std::ifstream      in(aPath, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        return text.str();
    };

    std::vector<fs::path> paths;
    for (const auto &entry : fs::directory_iterator(SIXLO_SCENARIO_DIR))
    {
        if (entry.path().extension() == ".scn")
        {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    for (const fs::path &path : paths)
    {
        std::string name = path.stem().string();
        for (int run = 0; run < 2; run++)
        {
            WriteRunOutput(RunScenario(LoadScenario(path)), base / name / std::to_string(run));
        }
        for (const char *file : {"trace.tsv", "metrics.txt"})
        {
            std::string first  = slurp(base / name / "0" / file);
            std::string second = slurp(base / name / "1" / file);
            aOut.Expect(!first.empty() && first == second, name + "/" + file + " differs between runs");
        }
        count++;
    }
    fs::remove_all(base);
    aOut.Expect(count > 0, "no scenarios found");
}

void CheckAirtime(Outcome &aOut)
{
    const std::pair<BandId, double> cases[] = {
        {BandId::kB2450, 4.256e-3},
        {BandId::kB915, 13.3e-3},
        {BandId::kB868, 53.2e-3},
    };

    for (const auto &[band, expected] : cases)
    {
        const PhyBand &phy    = GetPhyBand(band);
        double         actual = FrameAirtime(phy, kMaxPpduSize);
        char           text[160];
        std::snprintf(text, sizeof(text), "%s at %u b/s: %.3f ms, expected %.3f ms", phy.mName,
                      static_cast<unsigned>(phy.mBitRate), actual * 1e3, expected * 1e3);
        aOut.Expect(std::fabs(actual - expected) <= 1e-6, text);
    }
}

struct Criterion
{
    const char *mName;
    void (*mCheck)(Outcome &);
};

const Criterion kCriteria[] = {
    {"budget arithmetic", CheckBudget},
    {"dispatch table", CheckDispatch},
    {"two-octet header", CheckTwoOctetHeader},
    {"UDP compression", CheckUdpCompression},
    {"codec soundness", CheckCodecSoundness},
    {"fragmentation", CheckFragmentation},
    {"mesh invariants", CheckMesh},
    {"broadcast", CheckBroadcast},
    {"end-to-end gateway", CheckBorderEndToEnd},
    {"mode contrast", CheckModeContrast},
    {"determinism", CheckDeterminism},
    {"airtime", CheckAirtime},
};

} // namespace

int main(int argc, char **argv)
{
    const int total = static_cast<int>(std::size(kCriteria));
    int       only  = 0;
    bool      ok    = true;

    if (argc > 2 || (argc == 2 && ((only = std::atoi(argv[1])) < 1 || only > total)))
    {
        std::fprintf(stderr, "usage: %s [1-%d]\n", argv[0], total);
        return 2;
    }

    for (int i = 1; i <= total; i++)
    {
        if (only != 0 && i != only)
        {
            continue;
        }

        Outcome out;
        try
        {
            kCriteria[i - 1].mCheck(out);
        }
        catch (const std::exception &e)
        {
            out.Expect(false, std::string("exception: ") + e.what());
        }

        if (out.Passed())
        {
            std::printf("PASS %2d %s\n", i, kCriteria[i - 1].mName);
        }
        else
        {
            std::printf("FAIL %2d %s: %s\n", i, kCriteria[i - 1].mName, out.Why().c_str());
            ok = false;
        }
    }
    return ok ? 0 : 1;
}
