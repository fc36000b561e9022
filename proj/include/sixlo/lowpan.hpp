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
 *   6LoWPAN adaptation-layer headers: dispatch, HC1/HC2 compression, mesh,
 *   broadcast and fragmentation.
 */

#ifndef SIXLO_LOWPAN_HPP_
#define SIXLO_LOWPAN_HPP_

#include <optional>

#include "sixlo/frame.hpp"
#include "sixlo/ipv6.hpp"

namespace sixlo {

/**
 * @addtogroup lowpan-codec
 *
 * @brief
 *   Every encoder here has a decoder that inverts it exactly. Multi-octet
 *   fields are big-endian.
 *
 * @{
 */

constexpr uint8_t kDispatchIpv6       = 0x41;
constexpr uint8_t kDispatchHc1        = 0x42;
constexpr uint8_t kDispatchBc0        = 0x50;
constexpr uint8_t kDispatchEscape     = 0x7f;
constexpr uint8_t kDispatchMesh       = 0x80; ///< 10xxxxxx
constexpr uint8_t kDispatchFragFirst  = 0xc0; ///< 11000xxx
constexpr uint8_t kDispatchFragNext   = 0xe0; ///< 11100xxx

constexpr uint16_t kMaxDatagramSize   = 2047; ///< 11-bit datagram_size
constexpr std::size_t kFragFirstSize  = 4;
constexpr std::size_t kFragNextSize   = 5;
constexpr uint8_t  kMaxHopsLeft       = 15;
constexpr uint16_t kHc2PortBase       = 0xf0b0;

enum class DispatchKind : uint8_t
{
    kNotLowpan,
    kUncompressedIpv6,
    kHc1,
    kBc0,
    kAdditionalDispatch,
    kMesh,
    kFragFirst,
    kFragSubsequent,
    kUnknown,
};

struct Dispatch
{
    DispatchKind mKind;
    uint8_t      mRaw;
};

/// Total over all 256 values; reserved patterns classify as kUnknown.
Dispatch ParseDispatch(uint8_t aFirstByte);

const char  *DispatchKindName(DispatchKind aKind);
DispatchKind ParseDispatchKind(std::string_view aName);

/**
 * Source/destination address encoding in the HC1 byte.
 */
enum class Hc1AddrMode : uint8_t
{
    kInline         = 0, ///< prefix and IID carried
    kIidFromLink    = 1, ///< prefix carried, IID derived from the link address
    kLinkLocalIid   = 2, ///< link-local prefix, IID carried
    kLinkLocalElided = 3, ///< link-local prefix, IID derived from the link address
};

enum class Hc1NextHeader : uint8_t
{
    kInline = 0,
    kUdp    = 1,
    kIcmp   = 2,
    kTcp    = 3,
};

/**
 * The HC1 encoding octet. Bit 0 is the most significant bit:
 * bits 0-1 source mode, 2-3 destination mode, 4 traffic class and flow label
 * elided, 5-6 next header, 7 HC2 follows.
 */
struct Hc1Header
{
    Hc1AddrMode   mSrcMode    = Hc1AddrMode::kInline;
    Hc1AddrMode   mDstMode    = Hc1AddrMode::kInline;
    bool          mTcFlZero   = false;
    Hc1NextHeader mNextHeader = Hc1NextHeader::kInline;
    bool          mHc2        = false;

    uint8_t          Encode(void) const;
    static Hc1Header Decode(uint8_t aByte);

    bool operator==(const Hc1Header &) const = default;
};

/**
 * Compresses a packet to dispatch 0x42 + HC1 + hop limit + inline fields
 * (+ HC2 UDP header when at least one port is compressible) + payload.
 *
 * The link addresses are the ones the receiver will see: the MAC addresses
 * for a single hop, or the mesh originator and final address under mesh-under.
 */
Bytes CompressIpv6(const Ipv6Packet &aPacket, const NodeAddress &aLinkSrc, const NodeAddress &aLinkDst);

/// Dispatch 0x41 followed by the 40-octet header and payload verbatim.
Bytes EncodeUncompressedIpv6(const Ipv6Packet &aPacket);

struct LinkInfo
{
    /// When set, the buffer must be exactly this long (datagram_size of a reassembled datagram).
    std::optional<std::size_t> mDatagramSize;
};

/**
 * Rebuilds the full packet from a 0x41 or 0x42 datagram. The payload length
 * comes from the buffer length.
 *
 * @param[out] aHc1  When non-null and the datagram is HC1, receives the decoded HC1 octet.
 */
Ipv6Packet DecompressIpv6(ByteSpan           aDatagram,
                          const NodeAddress &aLinkSrc,
                          const NodeAddress &aLinkDst,
                          const LinkInfo    &aLink = {},
                          Hc1Header         *aHc1  = nullptr);

/// True when the port can travel as a nibble over 0xF0B0.
inline bool IsCompressiblePort(uint16_t aPort) { return (aPort & 0xfff0) == kHc2PortBase; }

/**
 * HC2 UDP header: encoding octet (S, D, L flags in the top three bits), then
 * any 16-bit port carried in full, then one octet of port nibbles (source high,
 * destination low) if either port is compressed, then the checksum.
 * The length is always elided.
 */
Bytes CompressUdp(const UdpDatagram &aDatagram);

/// Size CompressUdp would produce for these ports.
std::size_t CompressedUdpHeaderSize(uint16_t aSrcPort, uint16_t aDstPort);

/**
 * Inverse of CompressUdp. @p aBytes holds the HC2 header followed by the UDP
 * payload; the elided length is recovered from its size.
 */
UdpDatagram DecompressUdp(ByteSpan aBytes);

/**
 * Mesh addressing header. A Short16 address is written as its 16-bit short
 * value; the PAN is supplied again at decode time.
 */
struct MeshHeader
{
    uint8_t     mHopsLeft = 0;
    NodeAddress mOriginator;
    NodeAddress mFinal;

    std::size_t Size(void) const;

    bool operator==(const MeshHeader &) const = default;
};

Bytes      EncodeMesh(const MeshHeader &aHeader);
MeshHeader DecodeMesh(ByteSpan aBytes, uint16_t aPanId, std::size_t *aConsumed = nullptr);

Bytes   EncodeBc0(uint8_t aSequence);
uint8_t DecodeBc0(ByteSpan aBytes);

struct FragHeader
{
    uint16_t               mDatagramSize = 0;
    uint16_t               mTag          = 0;
    std::optional<uint8_t> mOffset; ///< units of 8 octets; absent in the first fragment

    std::size_t Size(void) const { return mOffset ? kFragNextSize : kFragFirstSize; }
    std::size_t ByteOffset(void) const { return mOffset.value_or(0) * 8u; }

    bool operator==(const FragHeader &) const = default;
};

Bytes      EncodeFragFirst(uint16_t aDatagramSize, uint16_t aTag);
Bytes      EncodeFragSubsequent(uint16_t aDatagramSize, uint16_t aTag, uint8_t aOffset);
Bytes      EncodeFrag(const FragHeader &aHeader);
FragHeader DecodeFrag(ByteSpan aBytes, std::size_t *aConsumed = nullptr);

/**
 * A MAC payload split into its optional mesh, broadcast and fragmentation
 * headers, which must appear in that order, and whatever follows them.
 */
struct LowpanFrame
{
    std::optional<MeshHeader> mMesh;
    std::optional<uint8_t>    mBc0Sequence;
    std::optional<FragHeader> mFrag;
    Bytes                     mRest; ///< fragment payload, or the datagram starting at its dispatch octet

    bool operator==(const LowpanFrame &) const = default;
};

LowpanFrame ParseLowpanFrame(ByteSpan aPayload, uint16_t aPanId);
Bytes       EncodeLowpanFrame(const LowpanFrame &aFrame);

/**
 * @}
 */

} // namespace sixlo

#endif // SIXLO_LOWPAN_HPP_
