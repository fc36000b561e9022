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
 *   Octet buffers, big-endian readers/writers and hex conversion.
 */

#ifndef SIXLO_BYTES_HPP_
#define SIXLO_BYTES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sixlo/error.hpp"

namespace sixlo {

using Bytes     = std::vector<uint8_t>;
using ByteSpan  = std::span<const uint8_t>;

std::string ToHex(ByteSpan aBytes);

/**
 * Parses a hex string. Whitespace, ':' and '-' separators are ignored.
 *
 * Throws Errc::kInvalidArgument on odd length or a non-hex character.
 */
Bytes FromHex(std::string_view aHex);

/**
 * Appends big-endian fields to a byte vector.
 */
class ByteWriter
{
public:
    explicit ByteWriter(Bytes &aOut)
        : mOut(aOut)
    {
    }

    ByteWriter &U8(uint8_t aValue)
    {
        mOut.push_back(aValue);
        return *this;
    }

    ByteWriter &U16(uint16_t aValue)
    {
        mOut.push_back(static_cast<uint8_t>(aValue >> 8));
        mOut.push_back(static_cast<uint8_t>(aValue));
        return *this;
    }

    ByteWriter &U16Le(uint16_t aValue)
    {
        mOut.push_back(static_cast<uint8_t>(aValue));
        mOut.push_back(static_cast<uint8_t>(aValue >> 8));
        return *this;
    }

    ByteWriter &U32(uint32_t aValue)
    {
        U16(static_cast<uint16_t>(aValue >> 16));
        return U16(static_cast<uint16_t>(aValue));
    }

    ByteWriter &U64(uint64_t aValue)
    {
        for (int shift = 56; shift >= 0; shift -= 8)
        {
            mOut.push_back(static_cast<uint8_t>(aValue >> shift));
        }
        return *this;
    }

    ByteWriter &Append(ByteSpan aBytes)
    {
        mOut.insert(mOut.end(), aBytes.begin(), aBytes.end());
        return *this;
    }

private:
    Bytes &mOut;
};

/**
 * Cursor over a byte span. Reading past the end throws Error with the code
 * given at construction so each codec reports its own malformation kind.
 */
class ByteReader
{
public:
    ByteReader(ByteSpan aBytes, Errc aUnderflow)
        : mBytes(aBytes)
        , mUnderflow(aUnderflow)
    {
    }

    uint8_t U8(void)
    {
        Need(1);
        return mBytes[mPos++];
    }

    uint16_t U16(void)
    {
        Need(2);
        uint16_t value = static_cast<uint16_t>((mBytes[mPos] << 8) | mBytes[mPos + 1]);
        mPos += 2;
        return value;
    }

    uint16_t U16Le(void)
    {
        Need(2);
        uint16_t value = static_cast<uint16_t>(mBytes[mPos] | (mBytes[mPos + 1] << 8));
        mPos += 2;
        return value;
    }

    uint32_t U32(void)
    {
        uint32_t high = U16();
        return (high << 16) | U16();
    }

    uint64_t U64(void)
    {
        Need(8);
        uint64_t value = 0;
        for (int i = 0; i < 8; i++)
        {
            value = (value << 8) | mBytes[mPos++];
        }
        return value;
    }

    ByteSpan Take(std::size_t aLength)
    {
        Need(aLength);
        ByteSpan out = mBytes.subspan(mPos, aLength);
        mPos += aLength;
        return out;
    }

    ByteSpan Rest(void)
    {
        ByteSpan out = mBytes.subspan(mPos);
        mPos         = mBytes.size();
        return out;
    }

    std::size_t Position(void) const { return mPos; }
    std::size_t Remaining(void) const { return mBytes.size() - mPos; }
    bool        AtEnd(void) const { return mPos == mBytes.size(); }

private:
    void Need(std::size_t aLength) const
    {
        if (mBytes.size() - mPos < aLength)
        {
            Fail(mUnderflow, "truncated at offset " + std::to_string(mPos));
        }
    }

    ByteSpan    mBytes;
    std::size_t mPos = 0;
    Errc        mUnderflow;
};

} // namespace sixlo

#endif // SIXLO_BYTES_HPP_
