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
 *   Error codes shared by every sixlo module.
 */

#ifndef SIXLO_ERROR_HPP_
#define SIXLO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sixlo {

enum class Errc
{
    // generic
    kInvalidArgument,
    kUnsupported,

    // frame-core
    kOversizePsdu,
    kBadPreamble,
    kBadSfd,
    kBadLength,
    kBadFcs,
    kPayloadTooLarge,
    kMalformedMacFrame,

    // ipv6-model
    kBadVersion,
    kTruncatedHeader,

    // lowpan-codec
    kUnknownDispatch,
    kMalformedHeader,
    kMalformedHc2,
    kMalformedMesh,
    kMalformedBc0,
    kMalformedFrag,
    kSizeOverflow,

    // reassembly
    kDatagramTooLarge,
    kBudgetTooSmall,
    kInconsistentSize,
    kOverlapMismatch,

    // gateway
    kNoSuchNode,
    kDuplicateDevid,
    kUnknownDevid,
    kNoFragmentation,
    kPoolExhausted,
    kAplTooLarge,
    kUnknownPanId,
    kStaleRecord,
    kNotTunnelTraffic,

    // cli
    kScenario,
    kIo,
};

std::string_view ErrcName(Errc aErrc);

/**
 * Exception carrying an Errc. Every failing operation in the library throws this type.
 */
class Error : public std::runtime_error
{
public:
    Error(Errc aCode, const std::string &aWhat)
        : std::runtime_error(std::string(ErrcName(aCode)) + ": " + aWhat)
        , mCode(aCode)
    {
    }

    Errc Code(void) const noexcept { return mCode; }

private:
    Errc mCode;
};

[[noreturn]] inline void Fail(Errc aCode, const std::string &aWhat) { throw Error(aCode, aWhat); }

inline void Require(bool aCondition, Errc aCode, const char *aWhat)
{
    if (!aCondition)
    {
        Fail(aCode, aWhat);
    }
}

} // namespace sixlo

#endif // SIXLO_ERROR_HPP_
