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
 *   Implements the 802.15.4 PPDU and MAC frame codecs.
 */

#include "sixlo/frame.hpp"

#include <charconv>
#include <cstdio>

namespace sixlo {

namespace {

constexpr PhyBand kBands[] = {
    {BandId::kB868, "B868", 20000, 0, 0},
    {BandId::kB915, "B915", 40000, 1, 10},
    {BandId::kB2450, "B2450", 250000, 11, 26},
};

// Frame control, little-endian on the wire.
constexpr uint16_t kFcTypeMask        = 0x0007;
constexpr uint16_t kFcSecurityEnabled = 1 << 3;
constexpr int      kFcDstModeShift    = 10;
constexpr int      kFcSrcModeShift    = 14;
constexpr uint16_t kAddrModeNone      = 0;
constexpr uint16_t kAddrModeShort     = 2;
constexpr uint16_t kAddrModeExt       = 3;

constexpr std::size_t kAuxSecurityHeaderSize = 5; // security control + frame counter

uint8_t SecurityLevel(SecurityMode aMode)
{
    switch (aMode)
    {
    case SecurityMode::kAesCcm32:
        return 5;
    case SecurityMode::kAesCcm64:
        return 6;
    case SecurityMode::kAesCcm128:
        return 7;
    case SecurityMode::kNone:
        break;
    }
    return 0;
}

std::size_t AddressFieldSize(const std::optional<NodeAddress> &aAddress)
{
    if (!aAddress)
    {
        return 0;
    }
    return 2 + (IsShort(*aAddress) ? 2 : 8);
}

uint16_t AddressMode(const std::optional<NodeAddress> &aAddress)
{
    if (!aAddress)
    {
        return kAddrModeNone;
    }
    return IsShort(*aAddress) ? kAddrModeShort : kAddrModeExt;
}

void WriteAddress(ByteWriter &aWriter, const NodeAddress &aAddress, uint16_t aPanId)
{
    if (const auto *shortAddr = std::get_if<Short16>(&aAddress))
    {
        aWriter.U16Le(shortAddr->mPanId).U16Le(shortAddr->mShort);
    }
    else
    {
        uint64_t eui = std::get<Eui64>(aAddress).mValue;

        aWriter.U16Le(aPanId);
        for (int i = 0; i < 8; i++)
        {
            aWriter.U8(static_cast<uint8_t>(eui >> (8 * i)));
        }
    }
}

std::optional<NodeAddress> ReadAddress(ByteReader &aReader, uint16_t aMode, std::optional<uint16_t> &aPanOut)
{
    if (aMode == kAddrModeNone)
    {
        return std::nullopt;
    }

    uint16_t pan = aReader.U16Le();

    if (!aPanOut)
    {
        aPanOut = pan;
    }

    if (aMode == kAddrModeShort)
    {
        return Short16{pan, aReader.U16Le()};
    }

    if (aMode != kAddrModeExt)
    {
        Fail(Errc::kMalformedMacFrame, "reserved addressing mode");
    }

    uint64_t eui = 0;
    for (int i = 0; i < 8; i++)
    {
        eui |= static_cast<uint64_t>(aReader.U8()) << (8 * i);
    }
    return Eui64{eui};
}

} // namespace

const PhyBand &GetPhyBand(BandId aId) { return kBands[static_cast<int>(aId)]; }

BandId ParseBandId(std::string_view aName)
{
    for (const PhyBand &band : kBands)
    {
        if (aName == band.mName)
        {
            return band.mId;
        }
    }
    Fail(Errc::kInvalidArgument, "unknown band '" + std::string(aName) + "'");
}

double FrameAirtime(const PhyBand &aBand, std::size_t aPpduOctets)
{
    Require(aPpduOctets <= kMaxPpduSize, Errc::kInvalidArgument, "PPDU longer than 133 octets");
    return static_cast<double>(aPpduOctets * 8) / static_cast<double>(aBand.mBitRate);
}

std::size_t SecurityOverhead(SecurityMode aMode)
{
    switch (aMode)
    {
    case SecurityMode::kNone:
        return 0;
    case SecurityMode::kAesCcm32:
        return 9;
    case SecurityMode::kAesCcm64:
        return 13;
    case SecurityMode::kAesCcm128:
        return 21;
    }
    return 0;
}

std::size_t MacPayloadBudget(SecurityMode aMode) { return kMaxPsduSize - kMacMaxOverhead - SecurityOverhead(aMode); }

const char *SecurityModeName(SecurityMode aMode)
{
    switch (aMode)
    {
    case SecurityMode::kNone:
        return "None";
    case SecurityMode::kAesCcm32:
        return "AES-CCM-32";
    case SecurityMode::kAesCcm64:
        return "AES-CCM-64";
    case SecurityMode::kAesCcm128:
        return "AES-CCM-128";
    }
    return "?";
}

SecurityMode ParseSecurityMode(std::string_view aName)
{
    for (SecurityMode mode :
         {SecurityMode::kNone, SecurityMode::kAesCcm32, SecurityMode::kAesCcm64, SecurityMode::kAesCcm128})
    {
        if (aName == SecurityModeName(mode))
        {
            return mode;
        }
    }
    if (aName == "none")
    {
        return SecurityMode::kNone;
    }
    Fail(Errc::kInvalidArgument, "unknown security mode '" + std::string(aName) + "'");
}

std::string ToString(const NodeAddress &aAddress)
{
    char buf[32];

    if (const auto *shortAddr = std::get_if<Short16>(&aAddress))
    {
        std::snprintf(buf, sizeof(buf), "%04x:%04x", shortAddr->mPanId, shortAddr->mShort);
    }
    else
    {
        uint64_t v = std::get<Eui64>(aAddress).mValue;
        std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x:%02x:%02x", static_cast<unsigned>(v >> 56) & 0xff,
                      static_cast<unsigned>(v >> 48) & 0xff, static_cast<unsigned>(v >> 40) & 0xff,
                      static_cast<unsigned>(v >> 32) & 0xff, static_cast<unsigned>(v >> 24) & 0xff,
                      static_cast<unsigned>(v >> 16) & 0xff, static_cast<unsigned>(v >> 8) & 0xff,
                      static_cast<unsigned>(v) & 0xff);
    }
    return buf;
}

Eui64 ParseEui64(std::string_view aText)
{
    Bytes bytes = FromHex(aText);

    Require(bytes.size() == 8, Errc::kInvalidArgument, "EUI-64 must be 8 octets");

    uint64_t value = 0;
    for (uint8_t b : bytes)
    {
        value = (value << 8) | b;
    }
    return Eui64{value};
}

NodeAddress ParseNodeAddress(std::string_view aText)
{
    Bytes bytes = FromHex(aText);

    if (bytes.size() == 4)
    {
        return Short16{static_cast<uint16_t>((bytes[0] << 8) | bytes[1]),
                       static_cast<uint16_t>((bytes[2] << 8) | bytes[3])};
    }
    return ParseEui64(aText);
}

Bytes EncodePpdu(ByteSpan aPsdu)
{
    Require(aPsdu.size() <= kMaxPsduSize, Errc::kOversizePsdu, "PSDU longer than 127 octets");

    Bytes      out;
    ByteWriter writer(out);

    out.reserve(kPhyOverhead + aPsdu.size());
    for (std::size_t i = 0; i < kPreambleSize; i++)
    {
        writer.U8(0);
    }
    writer.U8(kSfd).U8(static_cast<uint8_t>(aPsdu.size())).Append(aPsdu);
    return out;
}

Ppdu DecodePpdu(ByteSpan aPpdu)
{
    ByteReader reader(aPpdu, Errc::kBadLength);
    Ppdu       ppdu;

    for (std::size_t i = 0; i < kPreambleSize; i++)
    {
        ppdu.mPreamble[i] = reader.U8();
        Require(ppdu.mPreamble[i] == 0, Errc::kBadPreamble, "preamble must be all zero");
    }

    ppdu.mSfd = reader.U8();
    Require(ppdu.mSfd == kSfd, Errc::kBadSfd, "unexpected start-of-frame delimiter");

    uint8_t phr = reader.U8();
    Require((phr & 0x80) == 0, Errc::kBadLength, "reserved PHY header bit set");
    ppdu.mFrameLength = phr;
    Require(reader.Remaining() == phr, Errc::kBadLength, "frame length does not match PSDU");

    ByteSpan psdu = reader.Rest();
    ppdu.mPsdu.assign(psdu.begin(), psdu.end());
    return ppdu;
}

std::size_t MacOverhead(const MacFrame &aFrame)
{
    std::size_t size = 3 + AddressFieldSize(aFrame.mDst) + AddressFieldSize(aFrame.mSrc) + kFcsSize;
    return size + SecurityOverhead(aFrame.mSecurity);
}

Bytes EncodeMacFrame(const MacFrame &aFrame)
{
    if (aFrame.mType == FrameType::kAck)
    {
        Require(!aFrame.mSrc && !aFrame.mDst && aFrame.mPayload.empty() && aFrame.mSecurity == SecurityMode::kNone,
                Errc::kInvalidArgument, "ack frames carry no addressing, security or payload");
    }

    Require(aFrame.mPayload.size() <= MacPayloadBudget(aFrame.mSecurity), Errc::kPayloadTooLarge,
            "MAC payload exceeds the budget for its security mode");

    uint16_t fc = static_cast<uint16_t>(aFrame.mType) & kFcTypeMask;

    if (aFrame.mSecurity != SecurityMode::kNone)
    {
        fc |= kFcSecurityEnabled;
    }
    fc |= AddressMode(aFrame.mDst) << kFcDstModeShift;
    fc |= AddressMode(aFrame.mSrc) << kFcSrcModeShift;

    Bytes      out;
    ByteWriter writer(out);

    writer.U16Le(fc).U8(aFrame.mSequence);
    if (aFrame.mDst)
    {
        WriteAddress(writer, *aFrame.mDst, aFrame.mPanId);
    }
    if (aFrame.mSrc)
    {
        WriteAddress(writer, *aFrame.mSrc, aFrame.mPanId);
    }

    std::size_t micSize = 0;

    if (aFrame.mSecurity != SecurityMode::kNone)
    {
        // No cipher is applied: the auxiliary header and a zero MIC occupy the right number of octets.
        writer.U8(SecurityLevel(aFrame.mSecurity));
        writer.U16Le(aFrame.mSequence).U16Le(0);
        micSize = SecurityOverhead(aFrame.mSecurity) - kAuxSecurityHeaderSize;
    }

    writer.Append(aFrame.mPayload);
    out.insert(out.end(), micSize, 0);
    writer.U16Le(Crc16(out));
    return out;
}

MacFrame DecodeMacFrame(ByteSpan aPsdu)
{
    Require(aPsdu.size() >= kAckFrameSize, Errc::kMalformedMacFrame, "MAC frame shorter than 5 octets");
    Require(aPsdu.size() <= kMaxPsduSize, Errc::kOversizePsdu, "MAC frame longer than 127 octets");

    ByteSpan body = aPsdu.first(aPsdu.size() - kFcsSize);
    uint16_t fcs  = static_cast<uint16_t>(aPsdu[aPsdu.size() - 2] | (aPsdu[aPsdu.size() - 1] << 8));

    Require(Crc16(body) == fcs, Errc::kBadFcs, "frame check sequence mismatch");

    ByteReader              reader(body, Errc::kMalformedMacFrame);
    MacFrame                frame;
    std::optional<uint16_t> pan;
    uint16_t                fc = reader.U16Le();

    uint16_t type = fc & kFcTypeMask;
    Require(type <= static_cast<uint16_t>(FrameType::kCommand), Errc::kMalformedMacFrame, "reserved frame type");
    frame.mType     = static_cast<FrameType>(type);
    frame.mSequence = reader.U8();
    frame.mDst      = ReadAddress(reader, (fc >> kFcDstModeShift) & 0x3, pan);
    frame.mSrc      = ReadAddress(reader, (fc >> kFcSrcModeShift) & 0x3, pan);
    frame.mPanId    = pan.value_or(0);

    std::size_t micSize = 0;

    if (fc & kFcSecurityEnabled)
    {
        uint8_t level = reader.U8();

        switch (level)
        {
        case 5:
            frame.mSecurity = SecurityMode::kAesCcm32;
            break;
        case 6:
            frame.mSecurity = SecurityMode::kAesCcm64;
            break;
        case 7:
            frame.mSecurity = SecurityMode::kAesCcm128;
            break;
        default:
            Fail(Errc::kMalformedMacFrame, "unsupported security level");
        }
        reader.Take(kAuxSecurityHeaderSize - 1);
        micSize = SecurityOverhead(frame.mSecurity) - kAuxSecurityHeaderSize;
    }

    Require(reader.Remaining() >= micSize, Errc::kMalformedMacFrame, "truncated MIC");
    ByteSpan payload = reader.Take(reader.Remaining() - micSize);
    frame.mPayload.assign(payload.begin(), payload.end());

    if (frame.mType == FrameType::kAck)
    {
        Require(!frame.mSrc && !frame.mDst && frame.mPayload.empty(), Errc::kMalformedMacFrame,
                "ack frame with addressing or payload");
    }
    return frame;
}

uint16_t Crc16(ByteSpan aBytes)
{
    uint16_t crc = 0;

    for (uint8_t byte : aBytes)
    {
        crc ^= byte;
        for (int bit = 0; bit < 8; bit++)
        {
            crc = (crc & 1) ? static_cast<uint16_t>((crc >> 1) ^ 0x8408) : static_cast<uint16_t>(crc >> 1);
        }
    }
    return crc;
}

} // namespace sixlo
