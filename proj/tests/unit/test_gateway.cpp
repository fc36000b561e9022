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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sixlo/gateway.hpp"

using namespace sixlo;

namespace {

const Ipv6Prefix  kPrefix = ParseIpv6Prefix("2001:db8:1::/64");
const Ipv6Address kHost   = Ipv6Address::Parse("2001:db8:ff::10");
const Ipv6Address kWired  = Ipv6Address::Parse("2001:db8:ff::1");
const NodeAddress kGwLink = Short16{0xabcd, 0x0000};

Errc CodeOf(auto &&aFn)
{
    try
    {
        aFn();
    }
    catch (const Error &e)
    {
        return e.Code();
    }
    FAIL("expected an Error");
    return Errc::kInvalidArgument;
}

Bytes Pattern(std::size_t aSize, uint8_t aSeed = 0)
{
    Bytes out(aSize);
    for (std::size_t i = 0; i < aSize; i++)
    {
        out[i] = static_cast<uint8_t>(aSeed + i * 7);
    }
    return out;
}

} // namespace

TEST_CASE("mode names")
{
    for (GatewayMode mode : {GatewayMode::kSixLowpanBorder, GatewayMode::kDevidTranslation, GatewayMode::kZigbeeMapping,
                             GatewayMode::kZedBridge, GatewayMode::kDual})
    {
        CHECK(ParseGatewayMode(GatewayModeName(mode)) == mode);
    }
    CHECK(ParseGatewayMode("sixlowpan") == GatewayMode::kSixLowpanBorder);
    CHECK(ParseGatewayMode("devid") == GatewayMode::kDevidTranslation);
    CHECK(ParseGatewayMode("zigbee") == GatewayMode::kZigbeeMapping);
    CHECK(ParseGatewayMode("bridge") == GatewayMode::kZedBridge);
    CHECK(CodeOf([] { ParseGatewayMode("router"); }) == Errc::kInvalidArgument);
}

TEST_CASE("demux follows the dispatch golden file")
{
    std::ifstream file(SIXLO_TEST_DATA_DIR "/dispatch.golden");
    std::string   line;
    int           rows = 0;

    REQUIRE(file);
    while (std::getline(file, line))
    {
        if (line.empty() || line[0] == '#')
        {
            continue;
        }

        std::istringstream fields(line);
        std::string        hex, kind;
        fields >> hex >> kind;

        Bytes payload{static_cast<uint8_t>(std::stoul(hex, nullptr, 16)), 0x00};
        CAPTURE(hex);
        if (kind == "NotLowpan")
        {
            CHECK(Demux(payload) == FrameFamily::kZigbeeNwk);
        }
        else if (kind == "Unknown")
        {
            CHECK(CodeOf([&] { Demux(payload); }) == Errc::kUnknownDispatch);
        }
        else
        {
            CHECK(Demux(payload) == FrameFamily::kLowpan);
        }
        rows++;
    }
    CHECK(rows == 256);
    CHECK(CodeOf([] { Demux({}); }) == Errc::kInvalidArgument);
}

TEST_CASE("NWK frame layout")
{
    NwkFrame frame{kNwkFrameControlData, 0x1234, 0xbeef, 7, 9, {0xaa, 0xbb}};
    Bytes    wire = EncodeNwk(frame);

    CHECK(wire == Bytes{0x08, 0x00, 0x34, 0x12, 0xef, 0xbe, 0x07, 0x09, 0xaa, 0xbb});
    CHECK(DecodeNwk(wire) == frame);
    CHECK(Demux(wire) == FrameFamily::kZigbeeNwk);

    frame.mFrameControl = 0x0048;
    CHECK(CodeOf([&] { EncodeNwk(frame); }) == Errc::kInvalidArgument);
    wire[0] = 0x41;
    CHECK(CodeOf([&] { DecodeNwk(wire); }) == Errc::kMalformedHeader);
    CHECK(CodeOf([] { DecodeNwk(Bytes(kNwkHeaderSize - 1, 0)); }) == Errc::kMalformedHeader);

    std::mt19937 rng(4);
    for (int i = 0; i < 1000; i++)
    {
        NwkFrame random{static_cast<uint16_t>(rng() & 0xff3f),
                        static_cast<uint16_t>(rng()),
                        static_cast<uint16_t>(rng()),
                        static_cast<uint8_t>(rng()),
                        static_cast<uint8_t>(rng()),
                        Pattern(rng() % 100, static_cast<uint8_t>(i))};
        CHECK(DecodeNwk(EncodeNwk(random)) == random);
    }
}

TEST_CASE("devid registry")
{
    DevidRegistry registry;

    registry.Register(1, kHost);
    registry.Register(2, NodeAddress(Short16{0xabcd, 0x0010}));
    CHECK(registry.Size() == 2);
    CHECK(std::get<Ipv6Address>(registry.Resolve(1)) == kHost);
    CHECK(registry.Find(NodeAddress(Short16{0xabcd, 0x0010})) == 2);
    CHECK_FALSE(registry.Find(Ipv6Address::Parse("::1")).has_value());
    CHECK(CodeOf([&] { registry.Register(1, kWired); }) == Errc::kDuplicateDevid);
    CHECK(CodeOf([&] { registry.Resolve(3); }) == Errc::kUnknownDevid);
}

TEST_CASE("devid translation terminates IP at the gateway")
{
    const NodeAddress node = Short16{0xabcd, 0x0010};
    DevidTranslator   translator(kWired, kGwLink, 0xabcd, SecurityMode::kNone);

    translator.Registry().Register(10, node);
    translator.Registry().Register(100, kHost);

    SUBCASE("uplink")
    {
        MacFrame frame;
        frame.mPanId   = 0xabcd;
        frame.mSrc     = node;
        frame.mDst     = kGwLink;
        frame.mPayload = EncodeAppHeader({10, 100});
        frame.mPayload.insert(frame.mPayload.end(), {1, 2, 3});

        Ipv6Packet packet = translator.ToWired(frame);
        UdpDatagram udp   = DecodeUdp(packet.mPayload);

        CHECK(packet.mSrc == kWired);
        CHECK(packet.mDst == kHost);
        CHECK(udp.mSrcPort == kDevidUdpPort);
        CHECK(udp.mDstPort == kDevidUdpPort);
        CHECK(udp.mPayload == frame.mPayload);
        CHECK(UdpChecksum(packet.mSrc, packet.mDst, udp) == udp.mChecksum);

        frame.mPayload = EncodeAppHeader({10, 10});
        CHECK(CodeOf([&] { translator.ToWired(frame); }) == Errc::kUnknownDevid);
        frame.mPayload = EncodeAppHeader({10, 99});
        CHECK(CodeOf([&] { translator.ToWired(frame); }) == Errc::kUnknownDevid);
    }

    SUBCASE("downlink fits one frame or fails")
    {
        std::size_t budget = MacPayloadBudget(SecurityMode::kNone);

        for (std::size_t size : {std::size_t{0}, budget - kAppHeaderSize, budget - kAppHeaderSize + 1, std::size_t{1232}})
        {
            Bytes payload = EncodeAppHeader({100, 10});
            Bytes data    = Pattern(size);
            payload.insert(payload.end(), data.begin(), data.end());

            Ipv6Packet packet = MakeUdpPacket(kHost, kWired, kDevidUdpPort, kDevidUdpPort, payload);
            CAPTURE(size);
            if (payload.size() <= budget)
            {
                MacFrame frame = translator.ToWpan(packet, 5);
                CHECK(frame.mDst == node);
                CHECK(frame.mSequence == 5);
                CHECK(frame.mPayload == payload);
                CHECK(EncodeMacFrame(frame).size() <= kMaxPsduSize);
            }
            else
            {
                CHECK(CodeOf([&] { translator.ToWpan(packet, 5); }) == Errc::kNoFragmentation);
            }
        }
    }
}

TEST_CASE("pseudo IPv6 is the prefix followed by the EUI-64")
{
    Eui64       ext{0x00124b0001020304};
    Ipv6Address pseudo = PseudoIpv6(kPrefix, ext);
    Ipv6Address expected;

    for (std::size_t i = 0; i < 8; i++)
    {
        expected.mBytes[i]     = kPrefix.mBytes[i];
        expected.mBytes[8 + i] = static_cast<uint8_t>(ext.mValue >> (56 - 8 * i));
    }
    CHECK(pseudo == expected);
    CHECK(pseudo.ToString() == "2001:db8:1:0:12:4b00:102:304");
}

TEST_CASE("mapping table")
{
    MappingTable table(kPrefix, 0xabcd, 0x8000, 3);
    Eui64        ext{0x00124b0000000001};

    Ipv6Address pseudo = table.AssignPseudo(ext);
    CHECK(table.AssignPseudo(ext) == pseudo);
    CHECK(table.LookupPseudo(pseudo) == ext);
    CHECK_FALSE(table.LookupPseudo(kHost).has_value());

    Ipv6Address hosts[4] = {Ipv6Address::Parse("2001:db8:ff::1"), Ipv6Address::Parse("2001:db8:ff::2"),
                            Ipv6Address::Parse("2001:db8:ff::3"), Ipv6Address::Parse("2001:db8:ff::4")};

    CHECK(table.AssignShort(hosts[0]).mShort == 0x8000);
    CHECK(table.AssignShort(hosts[1]).mShort == 0x8001);
    CHECK(table.AssignShort(hosts[0]).mShort == 0x8000);
    CHECK(table.AssignShort(hosts[2]).mShort == 0x8002);
    CHECK(table.AssignShort(hosts[2]).mPanId == 0xabcd);
    CHECK(CodeOf([&] { table.AssignShort(hosts[3]); }) == Errc::kPoolExhausted);
    CHECK(table.LookupShort(0x8001) == hosts[1]);

    table.ReleaseShort(hosts[1]);
    CHECK_FALSE(table.LookupShort(0x8001).has_value());
    CHECK(table.AssignShort(hosts[3]).mShort == 0x8001);

    CHECK(CodeOf([] { MappingTable(kPrefix, 0xabcd, 0xfff0, 0x20); }) == Errc::kInvalidArgument);
}

TEST_CASE("pad and strip")
{
    for (std::size_t size = 0; size <= kMaxAplSize; size++)
    {
        Bytes apl    = Pattern(size, static_cast<uint8_t>(size));
        Bytes padded = PadTransform(apl);
        Bytes expected(kDefaultPadSize, 0);

        expected[0] = static_cast<uint8_t>(size);
        std::copy(apl.begin(), apl.end(), expected.begin() + 1);
        CHECK(padded == expected);
        CHECK(StripTransform(padded) == apl);
    }
    CHECK(kDefaultPadSize == 1232);
    CHECK(CodeOf([] { PadTransform(Bytes(kMaxAplSize + 1, 0)); }) == Errc::kAplTooLarge);
    CHECK(PadTransform(Bytes(3, 1), 100).size() == 100);
    CHECK(CodeOf([] { StripTransform({}); }) == Errc::kMalformedHeader);
    CHECK(CodeOf([] { StripTransform(Bytes{95, 0}); }) == Errc::kMalformedHeader);
    CHECK(CodeOf([] { StripTransform(Bytes{5, 1, 2}); }) == Errc::kMalformedHeader);
}

TEST_CASE("discovery records")
{
    const NodeAddress coordinator = Short16{0xabcd, 0x0000};
    const NodeAddress node        = Short16{0xabcd, 0x0022};
    DiscoveryTranslator translator(60);

    translator.AddPan(0xabcd, coordinator);
    translator.AddWiredService(7, kHost);

    DiscoveryMessage message{kDiscoveryQuery, 0x01020304, 0xabcd};
    CHECK(EncodeDiscovery(message) == Bytes{0xd0, 0x01, 0x02, 0x03, 0x04, 0xab, 0xcd});
    CHECK(DecodeDiscovery(EncodeDiscovery(message)) == message);
    CHECK(CodeOf([] { DecodeDiscovery(Bytes{0xd2, 0, 0, 0, 0, 0, 0}); }) == Errc::kMalformedHeader);

    SUBCASE("wired query answered in time")
    {
        CHECK(translator.TranslateWiredQuery(message, kWired, 10) == coordinator);
        CHECK(translator.Pending() == 1);
        message.mType = kDiscoveryResponse;
        CHECK(std::get<Ipv6Address>(translator.TranslateResponse(message, 70)) == kWired);
        CHECK(translator.Pending() == 0);
        CHECK(CodeOf([&] { translator.TranslateResponse(message, 70); }) == Errc::kStaleRecord);
    }

    SUBCASE("late response is stale")
    {
        translator.TranslateWiredQuery(message, kWired, 10);
        message.mType = kDiscoveryResponse;
        CHECK(CodeOf([&] { translator.TranslateResponse(message, 70.5); }) == Errc::kStaleRecord);
    }

    SUBCASE("LoWPAN query for a wired service")
    {
        DiscoveryMessage query{kDiscoveryQuery, 9, 7};
        CHECK(translator.TranslateWpanQuery(query, node, 0) == kHost);
        query.mType = kDiscoveryResponse;
        CHECK(std::get<NodeAddress>(translator.TranslateResponse(query, 1)) == node);
        CHECK(CodeOf([&] { translator.TranslateWpanQuery({kDiscoveryQuery, 10, 8}, node, 0); }) == Errc::kNoSuchNode);
    }

    CHECK(CodeOf([&] { translator.TranslateWiredQuery({kDiscoveryQuery, 11, 0x1111}, kWired, 0); }) ==
          Errc::kUnknownPanId);
}

TEST_CASE("bridge tunnel")
{
    Tunnel   tunnel{kWired, kHost, kDefaultTunnelPort};
    NwkFrame frame{kNwkFrameControlData, 0x22, 0x11, 5, 1, Pattern(20)};

    Ipv6Packet  packet = BridgeEncapsulate(frame, tunnel);
    UdpDatagram udp    = DecodeUdp(packet.mPayload);

    CHECK(packet.mSrc == kWired);
    CHECK(packet.mDst == kHost);
    CHECK(udp.mSrcPort == kDefaultTunnelPort);
    CHECK(udp.mDstPort == kDefaultTunnelPort);
    CHECK(udp.mPayload == EncodeNwk(frame));
    CHECK(BridgeDecapsulate(packet, kDefaultTunnelPort) == frame);
    CHECK(CodeOf([&] { BridgeDecapsulate(packet, 1234); }) == Errc::kNotTunnelTraffic);

    packet.mNextHeader = kProtoIcmpv6;
    CHECK(CodeOf([&] { BridgeDecapsulate(packet, kDefaultTunnelPort); }) == Errc::kNotTunnelTraffic);
}

TEST_CASE("border gateway")
{
    const NodeAddress node = Short16{0xabcd, 0x0004};
    BorderGateway     gateway(kPrefix, kGwLink, SecurityMode::kNone);

    gateway.AddNode(node);

    Ipv6Address global = gateway.AddressOf(node);
    CHECK(global == GlobalAddress(kPrefix, IidFromLinkAddress(node)));
    CHECK(gateway.Resolve(global) == node);
    CHECK(gateway.Resolve(LinkLocal(IidFromLinkAddress(node))) == node);
    CHECK(CodeOf([&] { gateway.Resolve(gateway.AddressOf(Short16{0xabcd, 0x0005})); }) == Errc::kNoSuchNode);
    CHECK(CodeOf([&] { gateway.Resolve(kHost); }) == Errc::kNoSuchNode);

    SUBCASE("uplink restores the packet")
    {
        Ipv6Packet packet = MakeUdpPacket(global, kHost, 0xf0b1, 5683, Pattern(30));
        CHECK(gateway.LowpanToWired(CompressIpv6(packet, node, kGwLink), node) == packet);
    }

    SUBCASE("1280-octet downlink")
    {
        Ipv6Packet packet = MakeUdpPacket(kHost, global, 5683, 0xf0b2, Pattern(kIpv6MinMtu - 48));
        REQUIRE(EncodeIpv6(packet).size() == kIpv6MinMtu);

        FragmentationContext context;
        auto                 single = gateway.WiredToLowpan(packet, std::nullopt, context);
        auto                 meshed = gateway.WiredToLowpan(packet, 15, context);

        CHECK(single.mDestination == node);
        CHECK(single.mFrames.size() == 14);
        CHECK(meshed.mFrames.size() == 15);

        for (const auto *downlink : {&single, &meshed})
        {
            ReassemblyTable table;
            AcceptResult    result;
            std::size_t     skip = downlink == &meshed ? EncodeMesh({15, kGwLink, node}).size() : 0;

            for (const Bytes &frame : downlink->mFrames)
            {
                CHECK(frame.size() <= MacPayloadBudget(SecurityMode::kNone));
                if (skip != 0)
                {
                    CHECK(DecodeMesh(frame, 0xabcd) == MeshHeader{15, kGwLink, node});
                }
                result = table.Accept(kGwLink, ByteSpan(frame).subspan(skip), 0);
            }
            REQUIRE(result.mStatus == AcceptResult::Status::kComplete);
            CHECK(DecompressIpv6(result.mDatagram, kGwLink, node) == packet);
        }
    }

    SUBCASE("secured budget")
    {
        BorderGateway secured(kPrefix, kGwLink, SecurityMode::kAesCcm128);
        secured.AddNode(node);

        FragmentationContext context;
        Ipv6Packet packet = MakeUdpPacket(kHost, global, 5683, 0xf0b2, Pattern(500));
        for (const Bytes &frame : secured.WiredToLowpan(packet, std::nullopt, context).mFrames)
        {
            CHECK(frame.size() <= 81);
        }
    }
}
