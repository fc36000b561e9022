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

#include "sixlo/addressing.hpp"

#include <algorithm>
#include <cstdio>

namespace sixlo {

namespace {

constexpr uint8_t kUniversalLocalBit = 0x02;

} // namespace

std::string InterfaceId::ToString(void) const
{
    char buf[24];

    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x:%02x:%02x", mBytes[0], mBytes[1], mBytes[2],
                  mBytes[3], mBytes[4], mBytes[5], mBytes[6], mBytes[7]);
    return buf;
}

InterfaceId IidFromEui64(Eui64 aEui)
{
    InterfaceId iid;

    for (int i = 0; i < 8; i++)
    {
        iid.mBytes[i] = static_cast<uint8_t>(aEui.mValue >> (56 - 8 * i));
    }
    iid.mBytes[0] ^= kUniversalLocalBit;
    return iid;
}

Mac48 Pseudo48(uint16_t aPanId, uint16_t aShort)
{
    return {0,
            0,
            static_cast<uint8_t>(aPanId >> 8),
            static_cast<uint8_t>(aPanId),
            static_cast<uint8_t>(aShort >> 8),
            static_cast<uint8_t>(aShort)};
}

InterfaceId IidFromPseudo48(const Mac48 &aAddress)
{
    InterfaceId iid{{aAddress[0], aAddress[1], aAddress[2], 0xff, 0xfe, aAddress[3], aAddress[4], aAddress[5]}};

    iid.mBytes[0] ^= kUniversalLocalBit;
    return iid;
}

InterfaceId IidFromLinkAddress(const NodeAddress &aAddress)
{
    if (const auto *shortAddr = std::get_if<Short16>(&aAddress))
    {
        return IidFromPseudo48(Pseudo48(shortAddr->mPanId, shortAddr->mShort));
    }
    return IidFromEui64(std::get<Eui64>(aAddress));
}

NodeAddress LinkAddressFromIid(const InterfaceId &aIid)
{
    const auto &b = aIid.mBytes;

    if (b[0] == kUniversalLocalBit && b[1] == 0 && b[3] == 0xff && b[4] == 0xfe)
    {
        return Short16{static_cast<uint16_t>((b[2] << 8) | b[5]), static_cast<uint16_t>((b[6] << 8) | b[7])};
    }

    uint64_t value = 0;
    for (uint8_t byte : b)
    {
        value = (value << 8) | byte;
    }
    return Eui64{value ^ (static_cast<uint64_t>(kUniversalLocalBit) << 56)};
}

Ipv6Address LinkLocal(const InterfaceId &aIid) { return GlobalAddress(kLinkLocalPrefix, aIid); }

Ipv6Address GlobalAddress(const Ipv6Prefix &aPrefix, const InterfaceId &aIid)
{
    Ipv6Address address;

    std::copy(aPrefix.mBytes.begin(), aPrefix.mBytes.end(), address.mBytes.begin());
    std::copy(aIid.mBytes.begin(), aIid.mBytes.end(), address.mBytes.begin() + 8);
    return address;
}

InterfaceId IidOf(const Ipv6Address &aAddress)
{
    InterfaceId iid;

    std::copy(aAddress.mBytes.begin() + 8, aAddress.mBytes.end(), iid.mBytes.begin());
    return iid;
}

} // namespace sixlo
