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
 *   Interface identifiers and IPv6 addresses formed from 802.15.4 link addresses.
 */

#ifndef SIXLO_ADDRESSING_HPP_
#define SIXLO_ADDRESSING_HPP_

#include <array>
#include <optional>

#include "sixlo/frame.hpp"
#include "sixlo/ipv6.hpp"

namespace sixlo {

struct InterfaceId
{
    std::array<uint8_t, 8> mBytes{};

    auto operator<=>(const InterfaceId &) const = default;

    std::string ToString(void) const;
};

/// 48-bit MAC-style address, most significant octet first.
using Mac48 = std::array<uint8_t, 6>;

/// Complements the universal/local bit of the first octet.
InterfaceId IidFromEui64(Eui64 aEui);

/// 16 zero bits, then the PAN ID, then the short address.
Mac48 Pseudo48(uint16_t aPanId, uint16_t aShort);

/// Ethernet rule: 0xFFFE between octets 2 and 3, universal/local bit complemented.
InterfaceId IidFromPseudo48(const Mac48 &aAddress);

/// Picks the derivation matching the address form present on the link.
InterfaceId IidFromLinkAddress(const NodeAddress &aAddress);

/**
 * Inverse of IidFromLinkAddress. Identifiers with the FFFE marker and zero
 * leading octets come back as short addresses; everything else is treated as
 * an EUI-64 derivation.
 */
NodeAddress LinkAddressFromIid(const InterfaceId &aIid);

Ipv6Address LinkLocal(const InterfaceId &aIid);
Ipv6Address GlobalAddress(const Ipv6Prefix &aPrefix, const InterfaceId &aIid);
InterfaceId IidOf(const Ipv6Address &aAddress);

} // namespace sixlo

#endif // SIXLO_ADDRESSING_HPP_
