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

#include "sixlo/bytes.hpp"

namespace sixlo {

std::string_view ErrcName(Errc aErrc)
{
    switch (aErrc)
    {
    case Errc::kInvalidArgument:
        return "InvalidArgument";
    case Errc::kUnsupported:
        return "Unsupported";
    case Errc::kOversizePsdu:
        return "OversizePsdu";
    case Errc::kBadPreamble:
        return "BadPreamble";
    case Errc::kBadSfd:
        return "BadSfd";
    case Errc::kBadLength:
        return "BadLength";
    case Errc::kBadFcs:
        return "BadFcs";
    case Errc::kPayloadTooLarge:
        return "PayloadTooLarge";
    case Errc::kMalformedMacFrame:
        return "MalformedMacFrame";
    case Errc::kBadVersion:
        return "BadVersion";
    case Errc::kTruncatedHeader:
        return "TruncatedHeader";
    case Errc::kUnknownDispatch:
        return "UnknownDispatch";
    case Errc::kMalformedHeader:
        return "MalformedHeader";
    case Errc::kMalformedHc2:
        return "MalformedHc2";
    case Errc::kMalformedMesh:
        return "MalformedMesh";
    case Errc::kMalformedBc0:
        return "MalformedBc0";
    case Errc::kMalformedFrag:
        return "MalformedFrag";
    case Errc::kSizeOverflow:
        return "SizeOverflow";
    case Errc::kDatagramTooLarge:
        return "DatagramTooLarge";
    case Errc::kBudgetTooSmall:
        return "BudgetTooSmall";
    case Errc::kInconsistentSize:
        return "InconsistentSize";
    case Errc::kOverlapMismatch:
        return "OverlapMismatch";
    case Errc::kNoSuchNode:
        return "NoSuchNode";
    case Errc::kDuplicateDevid:
        return "DuplicateDevid";
    case Errc::kUnknownDevid:
        return "UnknownDevid";
    case Errc::kNoFragmentation:
        return "NoFragmentation";
    case Errc::kPoolExhausted:
        return "PoolExhausted";
    case Errc::kAplTooLarge:
        return "AplTooLarge";
    case Errc::kUnknownPanId:
        return "UnknownPanId";
    case Errc::kStaleRecord:
        return "StaleRecord";
    case Errc::kNotTunnelTraffic:
        return "NotTunnelTraffic";
    case Errc::kScenario:
        return "ScenarioError";
    case Errc::kIo:
        return "IoError";
    }
    return "Unknown";
}

std::string ToHex(ByteSpan aBytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string           out;

    out.reserve(aBytes.size() * 2);
    for (uint8_t byte : aBytes)
    {
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0x0f]);
    }
    return out;
}

namespace {

int HexValue(char aChar)
{
    if (aChar >= '0' && aChar <= '9')
        return aChar - '0';
    if (aChar >= 'a' && aChar <= 'f')
        return aChar - 'a' + 10;
    if (aChar >= 'A' && aChar <= 'F')
        return aChar - 'A' + 10;
    return -1;
}

} // namespace

Bytes FromHex(std::string_view aHex)
{
    Bytes out;
    int   high = -1;

    for (std::size_t i = 0; i < aHex.size(); i++)
    {
        char c = aHex[i];

        if (c == ' ' || c == '\t' || c == ':' || c == '-' || c == '\n' || c == '\r')
        {
            continue;
        }

        int value = HexValue(c);

        if (value < 0)
        {
            Fail(Errc::kInvalidArgument, "non-hex character at position " + std::to_string(i));
        }

        if (high < 0)
        {
            high = value;
        }
        else
        {
            out.push_back(static_cast<uint8_t>((high << 4) | value));
            high = -1;
        }
    }

    if (high >= 0)
    {
        Fail(Errc::kInvalidArgument, "odd number of hex digits");
    }

    return out;
}

} // namespace sixlo
