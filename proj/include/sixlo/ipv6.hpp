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
 *   Wired-side IPv6 and UDP packet model.
 */

#ifndef SIXLO_IPV6_HPP_
#define SIXLO_IPV6_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "sixlo/bytes.hpp"

namespace sixlo {

constexpr std::size_t kIpv6HeaderSize = 40;
constexpr std::size_t kUdpHeaderSize  = 8;
constexpr std::size_t kTcpHeaderSize  = 20; ///< budget constant only; TCP is not modelled as a transport
constexpr std::size_t kIpv6MinMtu     = 1280;

constexpr uint8_t kProtoTcp    = 6;
constexpr uint8_t kProtoUdp    = 17;
constexpr uint8_t kProtoIcmpv6 = 58;

/**
 * 64-bit routing prefix (the upper half of an address).
 */
struct Ipv6Prefix
{
    std::array<uint8_t, 8> mBytes{};

    auto operator<=>(const Ipv6Prefix &) const = default;
};

struct Ipv6Address
{
    std::array<uint8_t, 16> mBytes{};

    auto operator<=>(const Ipv6Address &) const = default;

    Ipv6Prefix Prefix(void) const;
    bool       HasPrefix(const Ipv6Prefix &aPrefix) const { return Prefix() == aPrefix; }
    bool       IsLinkLocal(void) const;
    bool       IsMulticast(void) const { return mBytes[0] == 0xff; }

    /// RFC 5952 text form.
    std::string ToString(void) const;

    /// Accepts any textual form inet_pton accepts; throws kInvalidArgument otherwise.
    static Ipv6Address Parse(std::string_view aText);
};

/// Parses "2001:db8::" or "2001:db8::/64"; only the upper 64 bits are kept.
Ipv6Prefix ParseIpv6Prefix(std::string_view aText);

std::string ToString(const Ipv6Prefix &aPrefix);

extern const Ipv6Prefix kLinkLocalPrefix;

struct Ipv6Packet
{
    uint8_t     mTrafficClass = 0;
    uint32_t    mFlowLabel    = 0; ///< 20 bits
    uint8_t     mNextHeader   = kProtoUdp;
    uint8_t     mHopLimit     = 64;
    Ipv6Address mSrc;
    Ipv6Address mDst;
    Bytes       mPayload;

    uint16_t PayloadLength(void) const { return static_cast<uint16_t>(mPayload.size()); }

    bool operator==(const Ipv6Packet &) const = default;
};

struct UdpDatagram
{
    uint16_t mSrcPort  = 0;
    uint16_t mDstPort  = 0;
    uint16_t mChecksum = 0;
    Bytes    mPayload;

    uint16_t Length(void) const { return static_cast<uint16_t>(kUdpHeaderSize + mPayload.size()); }

    bool operator==(const UdpDatagram &) const = default;
};

/// 40 header octets followed by the payload.
Bytes      EncodeIpv6(const Ipv6Packet &aPacket);
Ipv6Packet DecodeIpv6(ByteSpan aBytes);

Bytes       EncodeUdp(const UdpDatagram &aDatagram);
UdpDatagram DecodeUdp(ByteSpan aBytes);

/**
 * Internet checksum over the IPv6 pseudo-header, the UDP header (checksum
 * field taken as zero) and the payload. A computed zero is sent as 0xffff.
 */
uint16_t UdpChecksum(const Ipv6Address &aSrc, const Ipv6Address &aDst, const UdpDatagram &aDatagram);

/// Builds a UDP/IPv6 packet with a correct length and checksum.
Ipv6Packet MakeUdpPacket(const Ipv6Address &aSrc,
                         const Ipv6Address &aDst,
                         uint16_t           aSrcPort,
                         uint16_t           aDstPort,
                         ByteSpan           aPayload,
                         uint8_t            aHopLimit = 64);

} // namespace sixlo

#endif // SIXLO_IPV6_HPP_
