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
 *   IEEE 802.15.4 PHY/MAC frame model and the link-layer byte budget.
 */

#ifndef SIXLO_FRAME_HPP_
#define SIXLO_FRAME_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "sixlo/bytes.hpp"

namespace sixlo {

/**
 * @addtogroup frame-core
 *
 * @{
 */

constexpr std::size_t kPreambleSize      = 4;
constexpr std::size_t kPhyOverhead       = 6; ///< preamble + SFD + PHY header
constexpr std::size_t kMaxPsduSize       = 127;
constexpr std::size_t kMaxPpduSize       = kMaxPsduSize + kPhyOverhead;
constexpr std::size_t kMacMaxOverhead    = 25; ///< frame control, sequence, two EUI-64 addresses with PANs, FCS
constexpr std::size_t kAckFrameSize      = 5;
constexpr std::size_t kFcsSize           = 2;
constexpr uint16_t    kShortAddrBroadcast = 0xffff;

constexpr uint8_t kSfd = 0xe6; ///< start-of-frame delimiter

enum class BandId : uint8_t
{
    kB868,
    kB915,
    kB2450,
};

struct PhyBand
{
    BandId      mId;
    const char *mName;
    uint32_t    mBitRate; ///< bits/s
    uint8_t     mFirstChannel;
    uint8_t     mLastChannel;
};

const PhyBand &GetPhyBand(BandId aId);

/// Parses "B868", "B915" or "B2450".
BandId ParseBandId(std::string_view aName);

/**
 * Seconds needed to put @p aPpduOctets on the air. Throws kInvalidArgument
 * above kMaxPpduSize.
 */
double FrameAirtime(const PhyBand &aBand, std::size_t aPpduOctets);

enum class SecurityMode : uint8_t
{
    kNone,
    kAesCcm32,
    kAesCcm64,
    kAesCcm128,
};

/// Auxiliary security header plus MIC, in octets.
std::size_t SecurityOverhead(SecurityMode aMode);

/// Octets left for the MAC payload after worst-case addressing and security.
std::size_t MacPayloadBudget(SecurityMode aMode);

const char  *SecurityModeName(SecurityMode aMode);
SecurityMode ParseSecurityMode(std::string_view aName);

/**
 * 16-bit short address scoped to a PAN.
 */
struct Short16
{
    uint16_t mPanId = 0;
    uint16_t mShort = 0;

    auto operator<=>(const Short16 &) const = default;
};

/**
 * 64-bit extended (EUI-64) address, most significant octet first.
 */
struct Eui64
{
    uint64_t mValue = 0;

    auto operator<=>(const Eui64 &) const = default;
};

using NodeAddress = std::variant<Short16, Eui64>;

inline bool IsShort(const NodeAddress &aAddress) { return std::holds_alternative<Short16>(aAddress); }

/// Short addresses print as "pan:short" ("abcd:0001"), extended ones as colon-separated octets.
std::string ToString(const NodeAddress &aAddress);

/// Inverse of ToString(const NodeAddress&).
NodeAddress ParseNodeAddress(std::string_view aText);

Eui64 ParseEui64(std::string_view aText);

struct Ppdu
{
    std::array<uint8_t, kPreambleSize> mPreamble{};
    uint8_t                            mSfd         = kSfd;
    uint8_t                            mFrameLength = 0; ///< 7 bits
    Bytes                              mPsdu;

    bool operator==(const Ppdu &) const = default;
};

Bytes EncodePpdu(ByteSpan aPsdu);
Ppdu  DecodePpdu(ByteSpan aPpdu);

enum class FrameType : uint8_t
{
    kBeacon  = 0,
    kData    = 1,
    kAck     = 2,
    kCommand = 3,
};

/**
 * MAC frame. PAN identifiers for short addresses live in the address itself;
 * mPanId is written next to any extended address and is restored on decode
 * from the first PAN field present.
 */
struct MacFrame
{
    FrameType                  mType     = FrameType::kData;
    uint8_t                    mSequence = 0;
    uint16_t                   mPanId    = 0;
    std::optional<NodeAddress> mSrc;
    std::optional<NodeAddress> mDst;
    SecurityMode               mSecurity = SecurityMode::kNone;
    Bytes                      mPayload;

    bool operator==(const MacFrame &) const = default;
};

/// Header, security and FCS octets this frame will occupy.
std::size_t MacOverhead(const MacFrame &aFrame);

Bytes    EncodeMacFrame(const MacFrame &aFrame);
MacFrame DecodeMacFrame(ByteSpan aPsdu);

/// CRC-16/KERMIT (CCITT polynomial, reflected, zero initial value).
uint16_t Crc16(ByteSpan aBytes);

/**
 * @}
 */

} // namespace sixlo

#endif // SIXLO_FRAME_HPP_
