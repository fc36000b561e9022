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
 *   Link-layer fragmentation and timed reassembly of 6LoWPAN datagrams.
 */

#ifndef SIXLO_REASSEMBLY_HPP_
#define SIXLO_REASSEMBLY_HPP_

#include <map>
#include <utility>
#include <vector>

#include "sixlo/frame.hpp"
#include "sixlo/lowpan.hpp"

namespace sixlo {

constexpr double      kReassemblyTimeout = 60.0; ///< seconds
constexpr std::size_t kMinFragmentBudget = 16;

/**
 * Per-source tag counter. Tags are handed out sequentially, wrapping at 2^16.
 */
struct FragmentationContext
{
    uint16_t mNextTag = 0;
};

/**
 * Splits @p aDatagram (starting with its own dispatch octet) into frame
 * payloads of at most @p aBudget octets.
 *
 * A datagram that fits is returned unchanged as the only element and consumes
 * no tag. Otherwise every fragment except the last carries the largest
 * multiple of 8 octets that fits beside its header.
 */
std::vector<Bytes> Fragment(ByteSpan aDatagram, std::size_t aBudget, FragmentationContext &aContext);

enum class DropReason : uint8_t
{
    kNone,
    kTimeout,
};

struct AcceptResult
{
    enum class Status : uint8_t
    {
        kPending,
        kComplete,
        kDropped,
    };

    Status     mStatus = Status::kPending;
    DropReason mReason = DropReason::kNone;
    Bytes      mDatagram; ///< set when kComplete
};

/**
 * Reassembly buffers keyed by (link source, tag).
 *
 * A fragment arriving more than kReassemblyTimeout seconds after its buffer
 * was started discards that buffer (reported as kDropped/kTimeout) and starts
 * a fresh one holding the new fragment.
 */
class ReassemblyTable
{
public:
    using Key = std::pair<NodeAddress, uint16_t>;

    /**
     * Feeds one frame payload beginning with a fragmentation header.
     *
     * Throws kInconsistentSize when datagram_size disagrees with the buffer,
     * kOverlapMismatch when overlapping octets differ, kMalformedFrag when the
     * fragment runs past datagram_size.
     */
    AcceptResult Accept(const NodeAddress &aSource, ByteSpan aFrame, double aNow);

    /// Drops every buffer older than the timeout; returns how many were dropped.
    std::size_t Purge(double aNow);

    std::size_t Size(void) const { return mBuffers.size(); }

    /// Age in seconds of the oldest live buffer, or 0 when empty.
    double OldestAge(double aNow) const;

private:
    struct Buffer
    {
        uint16_t          mDatagramSize = 0;
        double            mStartedAt    = 0;
        Bytes             mData;
        std::vector<bool> mHave;
        std::size_t       mReceived = 0;
    };

    std::map<Key, Buffer> mBuffers;
};

} // namespace sixlo

#endif // SIXLO_REASSEMBLY_HPP_
