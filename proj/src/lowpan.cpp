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
 *   Implements the 6LoWPAN header codecs.
 */

#include "sixlo/lowpan.hpp"

#include <algorithm>

#include "sixlo/addressing.hpp"

namespace sixlo {

namespace {

constexpr uint8_t kMeshOrigShort  = 0x20;
constexpr uint8_t kMeshFinalShort = 0x10;

constexpr uint8_t kHc2SrcCompressed = 0x80;
constexpr uint8_t kHc2DstCompressed = 0x40;
constexpr uint8_t kHc2LengthElided  = 0x20;

constexpr const char *kDispatchNames[] = {
    "NotLowpan", "UncompressedIpv6", "Hc1", "Bc0", "AdditionalDispatch", "Mesh", "FragFirst", "FragSubsequent", "Unknown",
};

Hc1AddrMode ChooseAddrMode(const Ipv6Address &aAddress, const NodeAddress &aLink)
{
    bool linkLocal = aAddress.IsLinkLocal();
    bool fromLink  = IidOf(aAddress) == IidFromLinkAddress(aLink);

    if (linkLocal)
    {
        return fromLink ? Hc1AddrMode::kLinkLocalElided : Hc1AddrMode::kLinkLocalIid;
    }
    return fromLink ? Hc1AddrMode::kIidFromLink : Hc1AddrMode::kInline;
}

void WriteAddress(ByteWriter &aWriter, const Ipv6Address &aAddress, Hc1AddrMode aMode)
{
    ByteSpan bytes(aAddress.mBytes);

    switch (aMode)
    {
    case Hc1AddrMode::kInline:
        aWriter.Append(bytes);
        break;
    case Hc1AddrMode::kIidFromLink:
        aWriter.Append(bytes.first(8));
        break;
    case Hc1AddrMode::kLinkLocalIid:
        aWriter.Append(bytes.last(8));
        break;
    case Hc1AddrMode::kLinkLocalElided:
        break;
    }
}

Ipv6Address ReadAddress(ByteReader &aReader, Hc1AddrMode aMode, const NodeAddress &aLink)
{
    Ipv6Address address;
    Ipv6Prefix  prefix = kLinkLocalPrefix;
    InterfaceId iid;

    switch (aMode)
    {
    case Hc1AddrMode::kInline:
    {
        ByteSpan bytes = aReader.Take(16);
        std::copy(bytes.begin(), bytes.end(), address.mBytes.begin());
        return address;
    }
    case Hc1AddrMode::kIidFromLink:
    {
        ByteSpan bytes = aReader.Take(8);
        std::copy(bytes.begin(), bytes.end(), prefix.mBytes.begin());
        iid = IidFromLinkAddress(aLink);
        break;
    }
    case Hc1AddrMode::kLinkLocalIid:
    {
        ByteSpan bytes = aReader.Take(8);
        std::copy(bytes.begin(), bytes.end(), iid.mBytes.begin());
        break;
    }
    case Hc1AddrMode::kLinkLocalElided:
        iid = IidFromLinkAddress(aLink);
        break;
    }
    return GlobalAddress(prefix, iid);
}

Hc1NextHeader NextHeaderCode(uint8_t aNextHeader)
{
    switch (aNextHeader)
    {
    case kProtoUdp:
        return Hc1NextHeader::kUdp;
    case kProtoIcmpv6:
        return Hc1NextHeader::kIcmp;
    case kProtoTcp:
        return Hc1NextHeader::kTcp;
    default:
        return Hc1NextHeader::kInline;
    }
}

// UDP header worth HC2-compressing: consistent length and at least one nibble port.
bool UseHc2(const Ipv6Packet &aPacket)
{
    if (aPacket.mNextHeader != kProtoUdp || aPacket.mPayload.size() < kUdpHeaderSize)
    {
        return false;
    }

    const Bytes &p       = aPacket.mPayload;
    uint16_t     srcPort = static_cast<uint16_t>((p[0] << 8) | p[1]);
    uint16_t     dstPort = static_cast<uint16_t>((p[2] << 8) | p[3]);
    uint16_t     length  = static_cast<uint16_t>((p[4] << 8) | p[5]);

    return length == p.size() && (IsCompressiblePort(srcPort) || IsCompressiblePort(dstPort));
}

void WriteMeshAddress(ByteWriter &aWriter, const NodeAddress &aAddress)
{
    if (const auto *shortAddr = std::get_if<Short16>(&aAddress))
    {
        aWriter.U16(shortAddr->mShort);
    }
    else
    {
        aWriter.U64(std::get<Eui64>(aAddress).mValue);
    }
}

NodeAddress ReadMeshAddress(ByteReader &aReader, bool aShort, uint16_t aPanId)
{
    if (aShort)
    {
        return Short16{aPanId, aReader.U16()};
    }
    return Eui64{aReader.U64()};
}

} // namespace

Dispatch ParseDispatch(uint8_t aFirstByte)
{
    DispatchKind kind = DispatchKind::kUnknown;

    switch (aFirstByte >> 6)
    {
    case 0:
        kind = DispatchKind::kNotLowpan;
        break;
    case 1:
        switch (aFirstByte)
        {
        case kDispatchIpv6:
            kind = DispatchKind::kUncompressedIpv6;
            break;
        case kDispatchHc1:
            kind = DispatchKind::kHc1;
            break;
        case kDispatchBc0:
            kind = DispatchKind::kBc0;
            break;
        case kDispatchEscape:
            kind = DispatchKind::kAdditionalDispatch;
            break;
        default:
            break;
        }
        break;
    case 2:
        kind = DispatchKind::kMesh;
        break;
    case 3:
        if ((aFirstByte & 0xf8) == kDispatchFragFirst)
        {
            kind = DispatchKind::kFragFirst;
        }
        else if ((aFirstByte & 0xf8) == kDispatchFragNext)
        {
            kind = DispatchKind::kFragSubsequent;
        }
        break;
    }

    return Dispatch{kind, aFirstByte};
}

const char *DispatchKindName(DispatchKind aKind) { return kDispatchNames[static_cast<int>(aKind)]; }

DispatchKind ParseDispatchKind(std::string_view aName)
{
    for (int i = 0; i <= static_cast<int>(DispatchKind::kUnknown); i++)
    {
        if (aName == kDispatchNames[i])
        {
            return static_cast<DispatchKind>(i);
        }
    }
    Fail(Errc::kInvalidArgument, "unknown dispatch kind '" + std::string(aName) + "'");
}

uint8_t Hc1Header::Encode(void) const
{
    return static_cast<uint8_t>((static_cast<uint8_t>(mSrcMode) << 6) | (static_cast<uint8_t>(mDstMode) << 4) |
                                (mTcFlZero ? 0x08 : 0) | (static_cast<uint8_t>(mNextHeader) << 1) | (mHc2 ? 1 : 0));
}

Hc1Header Hc1Header::Decode(uint8_t aByte)
{
    Hc1Header header;

    header.mSrcMode    = static_cast<Hc1AddrMode>(aByte >> 6);
    header.mDstMode    = static_cast<Hc1AddrMode>((aByte >> 4) & 0x3);
    header.mTcFlZero   = (aByte & 0x08) != 0;
    header.mNextHeader = static_cast<Hc1NextHeader>((aByte >> 1) & 0x3);
    header.mHc2        = (aByte & 0x01) != 0;
    return header;
}

Bytes CompressIpv6(const Ipv6Packet &aPacket, const NodeAddress &aLinkSrc, const NodeAddress &aLinkDst)
{
    Require(aPacket.mFlowLabel < (1u << 20), Errc::kInvalidArgument, "flow label wider than 20 bits");

    Hc1Header hc1;

    hc1.mSrcMode    = ChooseAddrMode(aPacket.mSrc, aLinkSrc);
    hc1.mDstMode    = ChooseAddrMode(aPacket.mDst, aLinkDst);
    hc1.mTcFlZero   = aPacket.mTrafficClass == 0 && aPacket.mFlowLabel == 0;
    hc1.mNextHeader = NextHeaderCode(aPacket.mNextHeader);
    hc1.mHc2        = UseHc2(aPacket);

    Bytes      out;
    ByteWriter writer(out);

    writer.U8(kDispatchHc1).U8(hc1.Encode()).U8(aPacket.mHopLimit);
    WriteAddress(writer, aPacket.mSrc, hc1.mSrcMode);
    WriteAddress(writer, aPacket.mDst, hc1.mDstMode);

    if (!hc1.mTcFlZero)
    {
        writer.U8(aPacket.mTrafficClass);
        writer.U8(static_cast<uint8_t>(aPacket.mFlowLabel >> 16)).U16(static_cast<uint16_t>(aPacket.mFlowLabel));
    }

    if (hc1.mNextHeader == Hc1NextHeader::kInline)
    {
        writer.U8(aPacket.mNextHeader);
    }

    if (hc1.mHc2)
    {
        writer.Append(CompressUdp(DecodeUdp(aPacket.mPayload)));
    }
    else
    {
        writer.Append(aPacket.mPayload);
    }

    return out;
}

Bytes EncodeUncompressedIpv6(const Ipv6Packet &aPacket)
{
    Bytes out{kDispatchIpv6};
    Bytes raw = EncodeIpv6(aPacket);

    out.insert(out.end(), raw.begin(), raw.end());
    return out;
}

Ipv6Packet DecompressIpv6(ByteSpan           aDatagram,
                          const NodeAddress &aLinkSrc,
                          const NodeAddress &aLinkDst,
                          const LinkInfo    &aLink,
                          Hc1Header         *aHc1)
{
    Require(!aDatagram.empty(), Errc::kMalformedHeader, "empty datagram");

    if (aLink.mDatagramSize)
    {
        Require(aDatagram.size() == *aLink.mDatagramSize, Errc::kMalformedHeader,
                "datagram length disagrees with datagram_size");
    }

    Dispatch dispatch = ParseDispatch(aDatagram[0]);

    if (dispatch.mKind == DispatchKind::kUncompressedIpv6)
    {
        ByteSpan raw = aDatagram.subspan(1);

        Require(raw.size() >= kIpv6HeaderSize, Errc::kMalformedHeader, "truncated IPv6 header");
        uint16_t payloadLength = static_cast<uint16_t>((raw[4] << 8) | raw[5]);
        Require(raw.size() == kIpv6HeaderSize + payloadLength, Errc::kMalformedHeader,
                "payload length disagrees with the frame length");
        return DecodeIpv6(raw);
    }

    if (dispatch.mKind == DispatchKind::kAdditionalDispatch)
    {
        Fail(Errc::kUnsupported, "additional dispatch octet is not supported");
    }

    if (dispatch.mKind != DispatchKind::kHc1)
    {
        Fail(Errc::kUnknownDispatch, "expected an IPv6 dispatch");
    }

    ByteReader reader(aDatagram.subspan(1), Errc::kMalformedHeader);
    Hc1Header  hc1 = Hc1Header::Decode(reader.U8());
    Ipv6Packet packet;

    if (aHc1 != nullptr)
    {
        *aHc1 = hc1;
    }

    packet.mHopLimit = reader.U8();
    packet.mSrc      = ReadAddress(reader, hc1.mSrcMode, aLinkSrc);
    packet.mDst      = ReadAddress(reader, hc1.mDstMode, aLinkDst);

    if (!hc1.mTcFlZero)
    {
        packet.mTrafficClass = reader.U8();
        uint8_t high         = reader.U8();
        Require((high & 0xf0) == 0, Errc::kMalformedHeader, "flow label wider than 20 bits");
        packet.mFlowLabel = (static_cast<uint32_t>(high) << 16) | reader.U16();
    }

    switch (hc1.mNextHeader)
    {
    case Hc1NextHeader::kInline:
        packet.mNextHeader = reader.U8();
        break;
    case Hc1NextHeader::kUdp:
        packet.mNextHeader = kProtoUdp;
        break;
    case Hc1NextHeader::kIcmp:
        packet.mNextHeader = kProtoIcmpv6;
        break;
    case Hc1NextHeader::kTcp:
        packet.mNextHeader = kProtoTcp;
        break;
    }

    if (hc1.mHc2)
    {
        Require(hc1.mNextHeader == Hc1NextHeader::kUdp, Errc::kMalformedHeader, "HC2 without UDP next header");
        packet.mPayload = EncodeUdp(DecompressUdp(reader.Rest()));
    }
    else
    {
        ByteSpan rest = reader.Rest();
        packet.mPayload.assign(rest.begin(), rest.end());
    }

    Require(packet.mPayload.size() <= 0xffff, Errc::kMalformedHeader, "payload too long");
    return packet;
}

std::size_t CompressedUdpHeaderSize(uint16_t aSrcPort, uint16_t aDstPort)
{
    bool srcCompressed = IsCompressiblePort(aSrcPort);
    bool dstCompressed = IsCompressiblePort(aDstPort);

    return 1 + (srcCompressed ? 0 : 2) + (dstCompressed ? 0 : 2) + ((srcCompressed || dstCompressed) ? 1 : 0) + 2;
}

Bytes CompressUdp(const UdpDatagram &aDatagram)
{
    bool    srcCompressed = IsCompressiblePort(aDatagram.mSrcPort);
    bool    dstCompressed = IsCompressiblePort(aDatagram.mDstPort);
    uint8_t encoding      = kHc2LengthElided;

    encoding |= srcCompressed ? kHc2SrcCompressed : 0;
    encoding |= dstCompressed ? kHc2DstCompressed : 0;

    Bytes      out;
    ByteWriter writer(out);

    writer.U8(encoding);
    if (!srcCompressed)
    {
        writer.U16(aDatagram.mSrcPort);
    }
    if (!dstCompressed)
    {
        writer.U16(aDatagram.mDstPort);
    }
    if (srcCompressed || dstCompressed)
    {
        uint8_t nibbles = static_cast<uint8_t>(((srcCompressed ? aDatagram.mSrcPort & 0xf : 0) << 4) |
                                               (dstCompressed ? aDatagram.mDstPort & 0xf : 0));
        writer.U8(nibbles);
    }
    writer.U16(aDatagram.mChecksum).Append(aDatagram.mPayload);
    return out;
}

UdpDatagram DecompressUdp(ByteSpan aBytes)
{
    ByteReader  reader(aBytes, Errc::kMalformedHc2);
    UdpDatagram datagram;
    uint8_t     encoding = reader.U8();

    Require((encoding & 0x1f) == 0, Errc::kMalformedHc2, "reserved HC2 bits set");

    bool srcCompressed = (encoding & kHc2SrcCompressed) != 0;
    bool dstCompressed = (encoding & kHc2DstCompressed) != 0;
    bool lengthElided  = (encoding & kHc2LengthElided) != 0;

    if (!srcCompressed)
    {
        datagram.mSrcPort = reader.U16();
    }
    if (!dstCompressed)
    {
        datagram.mDstPort = reader.U16();
    }
    if (srcCompressed || dstCompressed)
    {
        uint8_t nibbles = reader.U8();

        Require(srcCompressed || (nibbles & 0xf0) == 0, Errc::kMalformedHc2, "unused source nibble set");
        Require(dstCompressed || (nibbles & 0x0f) == 0, Errc::kMalformedHc2, "unused destination nibble set");
        if (srcCompressed)
        {
            datagram.mSrcPort = static_cast<uint16_t>(kHc2PortBase | (nibbles >> 4));
        }
        if (dstCompressed)
        {
            datagram.mDstPort = static_cast<uint16_t>(kHc2PortBase | (nibbles & 0x0f));
        }
    }

    std::optional<uint16_t> length;
    if (!lengthElided)
    {
        length = reader.U16();
    }

    datagram.mChecksum = reader.U16();

    ByteSpan payload = reader.Rest();
    datagram.mPayload.assign(payload.begin(), payload.end());

    if (length)
    {
        Require(*length == datagram.Length(), Errc::kMalformedHc2, "inline UDP length disagrees with payload");
    }
    return datagram;
}

std::size_t MeshHeader::Size(void) const
{
    return 1 + (IsShort(mOriginator) ? 2 : 8) + (IsShort(mFinal) ? 2 : 8);
}

Bytes EncodeMesh(const MeshHeader &aHeader)
{
    Require(aHeader.mHopsLeft <= kMaxHopsLeft, Errc::kInvalidArgument, "hops_left exceeds 4 bits");

    uint8_t first = kDispatchMesh | aHeader.mHopsLeft;

    first |= IsShort(aHeader.mOriginator) ? kMeshOrigShort : 0;
    first |= IsShort(aHeader.mFinal) ? kMeshFinalShort : 0;

    Bytes      out;
    ByteWriter writer(out);

    writer.U8(first);
    WriteMeshAddress(writer, aHeader.mOriginator);
    WriteMeshAddress(writer, aHeader.mFinal);
    return out;
}

MeshHeader DecodeMesh(ByteSpan aBytes, uint16_t aPanId, std::size_t *aConsumed)
{
    ByteReader reader(aBytes, Errc::kMalformedMesh);
    uint8_t    first = reader.U8();
    MeshHeader header;

    Require((first & 0xc0) == kDispatchMesh, Errc::kMalformedMesh, "not a mesh header");
    header.mHopsLeft   = first & 0x0f;
    header.mOriginator = ReadMeshAddress(reader, (first & kMeshOrigShort) != 0, aPanId);
    header.mFinal      = ReadMeshAddress(reader, (first & kMeshFinalShort) != 0, aPanId);

    if (aConsumed != nullptr)
    {
        *aConsumed = reader.Position();
    }
    return header;
}

Bytes EncodeBc0(uint8_t aSequence) { return Bytes{kDispatchBc0, aSequence}; }

uint8_t DecodeBc0(ByteSpan aBytes)
{
    Require(aBytes.size() >= 2, Errc::kMalformedBc0, "truncated broadcast header");
    Require(aBytes[0] == kDispatchBc0, Errc::kMalformedBc0, "not a broadcast header");
    return aBytes[1];
}

Bytes EncodeFragFirst(uint16_t aDatagramSize, uint16_t aTag)
{
    Require(aDatagramSize <= kMaxDatagramSize, Errc::kSizeOverflow, "datagram_size exceeds 11 bits");

    Bytes      out;
    ByteWriter writer(out);

    writer.U8(static_cast<uint8_t>(kDispatchFragFirst | (aDatagramSize >> 8)));
    writer.U8(static_cast<uint8_t>(aDatagramSize)).U16(aTag);
    return out;
}

Bytes EncodeFragSubsequent(uint16_t aDatagramSize, uint16_t aTag, uint8_t aOffset)
{
    Require(aDatagramSize <= kMaxDatagramSize, Errc::kSizeOverflow, "datagram_size exceeds 11 bits");
    Require(aOffset * 8u < aDatagramSize, Errc::kInvalidArgument, "offset lies beyond the datagram");

    Bytes      out;
    ByteWriter writer(out);

    writer.U8(static_cast<uint8_t>(kDispatchFragNext | (aDatagramSize >> 8)));
    writer.U8(static_cast<uint8_t>(aDatagramSize)).U16(aTag).U8(aOffset);
    return out;
}

Bytes EncodeFrag(const FragHeader &aHeader)
{
    if (aHeader.mOffset)
    {
        return EncodeFragSubsequent(aHeader.mDatagramSize, aHeader.mTag, *aHeader.mOffset);
    }
    return EncodeFragFirst(aHeader.mDatagramSize, aHeader.mTag);
}

FragHeader DecodeFrag(ByteSpan aBytes, std::size_t *aConsumed)
{
    ByteReader reader(aBytes, Errc::kMalformedFrag);
    uint8_t    first = reader.U8();
    Dispatch   dispatch = ParseDispatch(first);
    FragHeader header;

    Require(dispatch.mKind == DispatchKind::kFragFirst || dispatch.mKind == DispatchKind::kFragSubsequent,
            Errc::kMalformedFrag, "not a fragmentation header");

    header.mDatagramSize = static_cast<uint16_t>(((first & 0x07) << 8) | reader.U8());
    header.mTag          = reader.U16();

    if (dispatch.mKind == DispatchKind::kFragSubsequent)
    {
        header.mOffset = reader.U8();
        Require(*header.mOffset * 8u < header.mDatagramSize, Errc::kMalformedFrag, "offset beyond datagram_size");
    }

    if (aConsumed != nullptr)
    {
        *aConsumed = reader.Position();
    }
    return header;
}

LowpanFrame ParseLowpanFrame(ByteSpan aPayload, uint16_t aPanId)
{
    LowpanFrame frame;
    ByteSpan    rest  = aPayload;
    int         stage = 0; // 0: mesh allowed, 1: bc0 allowed, 2: frag allowed, 3: done

    while (!rest.empty() && stage < 3)
    {
        Dispatch    dispatch = ParseDispatch(rest[0]);
        std::size_t consumed = 0;

        switch (dispatch.mKind)
        {
        case DispatchKind::kMesh:
            Require(stage == 0, Errc::kMalformedHeader, "mesh header out of order");
            frame.mMesh = DecodeMesh(rest, aPanId, &consumed);
            stage       = 1;
            break;
        case DispatchKind::kBc0:
            Require(stage <= 1, Errc::kMalformedHeader, "broadcast header out of order");
            frame.mBc0Sequence = DecodeBc0(rest);
            consumed           = 2;
            stage              = 2;
            break;
        case DispatchKind::kFragFirst:
        case DispatchKind::kFragSubsequent:
            frame.mFrag = DecodeFrag(rest, &consumed);
            stage       = 3;
            break;
        case DispatchKind::kUncompressedIpv6:
        case DispatchKind::kHc1:
            stage = 3;
            break;
        case DispatchKind::kAdditionalDispatch:
            Fail(Errc::kUnsupported, "additional dispatch octet is not supported");
        case DispatchKind::kNotLowpan:
        case DispatchKind::kUnknown:
            Fail(Errc::kUnknownDispatch, "unrecognised dispatch octet");
        }
        rest = rest.subspan(consumed);
    }

    Require(!rest.empty(), Errc::kMalformedHeader, "no datagram after adaptation headers");
    frame.mRest.assign(rest.begin(), rest.end());
    return frame;
}

Bytes EncodeLowpanFrame(const LowpanFrame &aFrame)
{
    Bytes      out;
    ByteWriter writer(out);

    if (aFrame.mMesh)
    {
        writer.Append(EncodeMesh(*aFrame.mMesh));
    }
    if (aFrame.mBc0Sequence)
    {
        writer.Append(EncodeBc0(*aFrame.mBc0Sequence));
    }
    if (aFrame.mFrag)
    {
        writer.Append(EncodeFrag(*aFrame.mFrag));
    }
    writer.Append(aFrame.mRest);
    return out;
}

} // namespace sixlo
