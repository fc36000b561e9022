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

#include "sixlo/reassembly.hpp"

#include <algorithm>

namespace sixlo {

std::vector<Bytes> Fragment(ByteSpan aDatagram, std::size_t aBudget, FragmentationContext &aContext)
{
    Require(aDatagram.size() <= kMaxDatagramSize, Errc::kDatagramTooLarge, "datagram longer than 2047 octets");
    Require(aBudget >= kMinFragmentBudget, Errc::kBudgetTooSmall, "fragment budget below 16 octets");

    std::vector<Bytes> frames;

    if (aDatagram.size() <= aBudget)
    {
        frames.emplace_back(aDatagram.begin(), aDatagram.end());
        return frames;
    }

    const uint16_t    size      = static_cast<uint16_t>(aDatagram.size());
    const uint16_t    tag       = aContext.mNextTag++;
    const std::size_t firstSize = (aBudget - kFragFirstSize) / 8 * 8;
    const std::size_t nextSize  = (aBudget - kFragNextSize) / 8 * 8;

    Bytes first = EncodeFragFirst(size, tag);
    first.insert(first.end(), aDatagram.begin(), aDatagram.begin() + firstSize);
    frames.push_back(std::move(first));

    for (std::size_t offset = firstSize; offset < aDatagram.size(); offset += nextSize)
    {
        std::size_t chunk = std::min(nextSize, aDatagram.size() - offset);
        Bytes       frame = EncodeFragSubsequent(size, tag, static_cast<uint8_t>(offset / 8));

        frame.insert(frame.end(), aDatagram.begin() + offset, aDatagram.begin() + offset + chunk);
        frames.push_back(std::move(frame));
    }

    return frames;
}

AcceptResult ReassemblyTable::Accept(const NodeAddress &aSource, ByteSpan aFrame, double aNow)
{
    std::size_t  headerSize = 0;
    FragHeader   header     = DecodeFrag(aFrame, &headerSize);
    ByteSpan     chunk      = aFrame.subspan(headerSize);
    std::size_t  offset     = header.ByteOffset();
    AcceptResult result;

    Require(offset + chunk.size() <= header.mDatagramSize, Errc::kMalformedFrag, "fragment runs past datagram_size");

    Key  key{aSource, header.mTag};
    auto it = mBuffers.find(key);

    if (it != mBuffers.end() && aNow - it->second.mStartedAt > kReassemblyTimeout)
    {
        mBuffers.erase(it);
        it             = mBuffers.end();
        result.mStatus = AcceptResult::Status::kDropped;
        result.mReason = DropReason::kTimeout;
    }

    if (it == mBuffers.end())
    {
        Buffer buffer;

        buffer.mDatagramSize = header.mDatagramSize;
        buffer.mStartedAt    = aNow;
        buffer.mData.assign(header.mDatagramSize, 0);
        buffer.mHave.assign(header.mDatagramSize, false);
        it = mBuffers.emplace(key, std::move(buffer)).first;
    }

    Buffer &buffer = it->second;

    Require(buffer.mDatagramSize == header.mDatagramSize, Errc::kInconsistentSize,
            "fragments disagree on datagram_size");

    for (std::size_t i = 0; i < chunk.size(); i++)
    {
        if (buffer.mHave[offset + i] && buffer.mData[offset + i] != chunk[i])
        {
            Fail(Errc::kOverlapMismatch, "overlapping fragment carries different octets");
        }
    }

    for (std::size_t i = 0; i < chunk.size(); i++)
    {
        if (!buffer.mHave[offset + i])
        {
            buffer.mHave[offset + i] = true;
            buffer.mData[offset + i] = chunk[i];
            buffer.mReceived++;
        }
    }

    if (buffer.mReceived == buffer.mDatagramSize)
    {
        result.mStatus   = AcceptResult::Status::kComplete;
        result.mReason   = DropReason::kNone;
        result.mDatagram = std::move(buffer.mData);
        mBuffers.erase(it);
    }

    return result;
}

std::size_t ReassemblyTable::Purge(double aNow)
{
    return std::erase_if(mBuffers, [aNow](const auto &aEntry) {
        return aNow - aEntry.second.mStartedAt > kReassemblyTimeout;
    });
}

double ReassemblyTable::OldestAge(double aNow) const
{
    double oldest = 0;

    for (const auto &[key, buffer] : mBuffers)
    {
        oldest = std::max(oldest, aNow - buffer.mStartedAt);
    }
    return oldest;
}

} // namespace sixlo
