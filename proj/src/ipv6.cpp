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

#include "sixlo/ipv6.hpp"

#include <arpa/inet.h>

#include <algorithm>

namespace sixlo {

const Ipv6Prefix kLinkLocalPrefix = {{0xfe, 0x80, 0, 0, 0, 0, 0, 0}};

Ipv6Prefix Ipv6Address::Prefix(void) const
{
    Ipv6Prefix prefix;
    std::copy_n(mBytes.begin(), 8, prefix.mBytes.begin());
    return prefix;
}

bool Ipv6Address::IsLinkLocal(void) const { return HasPrefix(kLinkLocalPrefix); }

std::string Ipv6Address::ToString(void) const
{
    char buf[INET6_ADDRSTRLEN];

    inet_ntop(AF_INET6, mBytes.data(), buf, sizeof(buf));
    return buf;
}

Ipv6Address Ipv6Address::Parse(std::string_view aText)
{
    Ipv6Address address;
    std::string text(aText);

    if (inet_pton(AF_INET6, text.c_str(), address.mBytes.data()) != 1)
    {
        Fail(Errc::kInvalidArgument, "bad IPv6 address '" + text + "'");
    }
    return address;
}

Ipv6Prefix ParseIpv6Prefix(std::string_view aText)
{
    std::size_t slash = aText.find('/');

    if (slash != std::string_view::npos)
    {
        Require(aText.substr(slash + 1) == "64", Errc::kInvalidArgument, "only /64 prefixes are supported");
        aText = aText.substr(0, slash);
    }
    return Ipv6Address::Parse(aText).Prefix();
}

std::string ToString(const Ipv6Prefix &aPrefix)
{
    Ipv6Address address;

    std::copy(aPrefix.mBytes.begin(), aPrefix.mBytes.end(), address.mBytes.begin());
    return address.ToString() + "/64";
}

Bytes EncodeIpv6(const Ipv6Packet &aPacket)
{
    Require(aPacket.mFlowLabel < (1u << 20), Errc::kInvalidArgument, "flow label wider than 20 bits");
    Require(aPacket.mPayload.size() <= 0xffff, Errc::kInvalidArgument, "payload longer than 65535 octets");

    Bytes      out;
    ByteWriter writer(out);
    uint32_t   word = (6u << 28) | (static_cast<uint32_t>(aPacket.mTrafficClass) << 20) | aPacket.mFlowLabel;

    out.reserve(kIpv6HeaderSize + aPacket.mPayload.size());
    writer.U16(static_cast<uint16_t>(word >> 16)).U16(static_cast<uint16_t>(word));
    writer.U16(aPacket.PayloadLength()).U8(aPacket.mNextHeader).U8(aPacket.mHopLimit);
    writer.Append(aPacket.mSrc.mBytes).Append(aPacket.mDst.mBytes).Append(aPacket.mPayload);
    return out;
}

Ipv6Packet DecodeIpv6(ByteSpan aBytes)
{
    ByteReader reader(aBytes, Errc::kTruncatedHeader);
    Ipv6Packet packet;
    uint32_t   word = static_cast<uint32_t>(reader.U16()) << 16;

    word |= reader.U16();
    Require((word >> 28) == 6, Errc::kBadVersion, "version field is not 6");
    packet.mTrafficClass = static_cast<uint8_t>(word >> 20);
    packet.mFlowLabel    = word & 0xfffff;

    uint16_t length      = reader.U16();
    packet.mNextHeader   = reader.U8();
    packet.mHopLimit     = reader.U8();

    ByteSpan src = reader.Take(16);
    ByteSpan dst = reader.Take(16);
    std::copy(src.begin(), src.end(), packet.mSrc.mBytes.begin());
    std::copy(dst.begin(), dst.end(), packet.mDst.mBytes.begin());

    ByteSpan payload = reader.Take(length);
    packet.mPayload.assign(payload.begin(), payload.end());
    return packet;
}

Bytes EncodeUdp(const UdpDatagram &aDatagram)
{
    Bytes      out;
    ByteWriter writer(out);

    writer.U16(aDatagram.mSrcPort).U16(aDatagram.mDstPort).U16(aDatagram.Length()).U16(aDatagram.mChecksum);
    writer.Append(aDatagram.mPayload);
    return out;
}

UdpDatagram DecodeUdp(ByteSpan aBytes)
{
    ByteReader  reader(aBytes, Errc::kTruncatedHeader);
    UdpDatagram datagram;

    datagram.mSrcPort  = reader.U16();
    datagram.mDstPort  = reader.U16();
    uint16_t length    = reader.U16();
    datagram.mChecksum = reader.U16();

    Require(length >= kUdpHeaderSize, Errc::kTruncatedHeader, "UDP length below header size");
    ByteSpan payload = reader.Take(length - kUdpHeaderSize);
    datagram.mPayload.assign(payload.begin(), payload.end());
    return datagram;
}

uint16_t UdpChecksum(const Ipv6Address &aSrc, const Ipv6Address &aDst, const UdpDatagram &aDatagram)
{
    uint32_t sum = 0;

    auto addWords = [&sum](ByteSpan aBytes) {
        for (std::size_t i = 0; i < aBytes.size(); i += 2)
        {
            uint16_t word = static_cast<uint16_t>(aBytes[i] << 8);
            if (i + 1 < aBytes.size())
            {
                word |= aBytes[i + 1];
            }
            sum += word;
        }
    };

    addWords(aSrc.mBytes);
    addWords(aDst.mBytes);
    sum += aDatagram.Length();
    sum += kProtoUdp;
    sum += aDatagram.mSrcPort;
    sum += aDatagram.mDstPort;
    sum += aDatagram.Length();
    addWords(aDatagram.mPayload);

    while (sum >> 16)
    {
        sum = (sum & 0xffff) + (sum >> 16);
    }

    uint16_t checksum = static_cast<uint16_t>(~sum);
    return checksum == 0 ? 0xffff : checksum;
}

Ipv6Packet MakeUdpPacket(const Ipv6Address &aSrc,
                         const Ipv6Address &aDst,
                         uint16_t           aSrcPort,
                         uint16_t           aDstPort,
                         ByteSpan           aPayload,
                         uint8_t            aHopLimit)
{
    UdpDatagram datagram;

    datagram.mSrcPort = aSrcPort;
    datagram.mDstPort = aDstPort;
    datagram.mPayload.assign(aPayload.begin(), aPayload.end());
    datagram.mChecksum = UdpChecksum(aSrc, aDst, datagram);

    Ipv6Packet packet;
    packet.mNextHeader = kProtoUdp;
    packet.mHopLimit   = aHopLimit;
    packet.mSrc        = aSrc;
    packet.mDst        = aDst;
    packet.mPayload    = EncodeUdp(datagram);
    return packet;
}

} // namespace sixlo
