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
 *   Scenario files: parsing, world construction and batch runs.
 *
 *   The grammar is documented in docs/scenario-format.md.
 */

#ifndef SIXLO_SCENARIO_HPP_
#define SIXLO_SCENARIO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "sixlo/netsim.hpp"

namespace sixlo {

struct LinkSpec
{
    std::string mA;
    std::string mB;
    double      mLoss = 0;
    BandId      mBand = BandId::kB2450;
};

struct RouteSpec
{
    std::string mAt;
    std::string mTo;
    std::string mVia;
};

struct Scenario
{
    uint64_t                   mSeed         = 1;
    double                     mEnd          = 10;
    double                     mWiredLatency = 1e-3;
    std::vector<PanConfig>     mPans;
    std::vector<NodeConfig>    mNodes;
    std::vector<HostConfig>    mHosts;
    std::vector<LinkSpec>      mLinks;
    std::vector<RouteSpec>     mRoutes;
    std::vector<GatewayConfig> mGateways;
    std::vector<SendSpec>      mSends;
};

/// Throws kScenario with "line N: ..." messages.
Scenario ParseScenario(std::string_view aText);

/// Reads and parses a file. Throws kScenario.
Scenario LoadScenario(const std::filesystem::path &aPath);

/// Builds a ready-to-run world. Reference and configuration errors become kScenario.
World BuildWorld(const Scenario &aScenario);

struct RunOutput
{
    std::string mTrace;
    std::string mMetrics;
};

/// Runs to mEnd and renders the trace and metrics files.
RunOutput RunScenario(const Scenario &aScenario);

/// Writes trace.tsv and metrics.txt under aDir, creating it when needed. Throws kIo.
void WriteRunOutput(const RunOutput &aOutput, const std::filesystem::path &aDir);

} // namespace sixlo

#endif // SIXLO_SCENARIO_HPP_
