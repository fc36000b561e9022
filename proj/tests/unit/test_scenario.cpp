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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sixlo/scenario.hpp"

using namespace sixlo;

namespace {

const char *kMinimal = R"(
# two nodes
[world]
seed = 9
t_end = 3

[pan 0x00aa]

[node A]
pan = 0x00aa
role = coordinator
short = 1

[node B]
pan = 0xaa
role = rfd
short = 2
ext = 00:11:22:33:44:55:66:77
sleep = 100/400

[link]
a = A
b = B
loss = 0.25
band = B868

[send]
at = 1
from = A
to = B
payload = 01 02 03
repeat = 3
interval = 0.5
)";

/// Message of the kScenario error raised while parsing aText.
std::string ParseError(const std::string &aText)
{
    try
    {
        ParseScenario(aText);
    }
    catch (const Error &e)
    {
        CHECK(e.Code() == Errc::kScenario);
        return e.what();
    }
    FAIL("expected a scenario error");
    return {};
}

std::string ReadFile(const std::filesystem::path &aPath)
{
    std::ifstream      file(aPath, std::ios::binary);
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("minimal scenario")
{
    Scenario scenario = ParseScenario(kMinimal);

    CHECK(scenario.mSeed == 9);
    CHECK(scenario.mEnd == 3);
    REQUIRE(scenario.mPans.size() == 1);
    CHECK(scenario.mPans[0].mPanId == 0x00aa);
    CHECK(scenario.mPans[0].mStack == StackKind::kLowpan);
    REQUIRE(scenario.mNodes.size() == 2);
    CHECK(scenario.mNodes[0].mExt.mValue == 0x02000000'00aa'0001);
    CHECK(scenario.mNodes[1].mRole == NodeRole::kRfd);
    CHECK(scenario.mNodes[1].mExt.mValue == 0x0011223344556677);
    CHECK(scenario.mNodes[1].mSleep.mAwakeMs == 100);
    CHECK(scenario.mNodes[1].mSleep.mAsleepMs == 400);
    REQUIRE(scenario.mLinks.size() == 1);
    CHECK(scenario.mLinks[0].mLoss == 0.25);
    CHECK(scenario.mLinks[0].mBand == BandId::kB868);
    REQUIRE(scenario.mSends.size() == 3);
    CHECK(scenario.mSends[2].mAt == doctest::Approx(2.0));
    CHECK(scenario.mSends[0].mPayload == Bytes{1, 2, 3});
}

TEST_CASE("chains and generated payloads")
{
    Scenario scenario = ParseScenario(R"(
[link]
chain = A, B, C
[send]
at = 0
from = A
to = C
size = 5
)");
    REQUIRE(scenario.mLinks.size() == 2);
    CHECK(scenario.mLinks[1].mA == "B");
    CHECK(scenario.mLinks[1].mB == "C");
    CHECK(scenario.mSends[0].mPayload == Bytes{0, 1, 2, 3, 4});
}

TEST_CASE("parse errors carry line numbers")
{
    CHECK(ParseError("[world]\nseed = x\n").find("line 2") != std::string::npos);
    CHECK(ParseError("[planet]\n").find("line 1: unknown section") != std::string::npos);
    CHECK(ParseError("\n\nseed = 1\n").find("line 3: key outside") != std::string::npos);
    CHECK(ParseError("[world]\nseed 1\n").find("line 2: expected key = value") != std::string::npos);
    CHECK(ParseError("[world]\nseed = 1\nseed = 2\n").find("line 3: duplicate key") != std::string::npos);
    CHECK(ParseError("[world]\ncolour = red\n").find("line 2: unknown key 'colour'") != std::string::npos);
    CHECK(ParseError("[node A]\npan = 1\nrole = ffd\n").find("line 1: [node] needs 'short'") != std::string::npos);
    CHECK(ParseError("[node]\n").find("needs a name") != std::string::npos);
    CHECK(ParseError("[link x]\n").find("takes no name") != std::string::npos);
    CHECK(ParseError("[pan 0x10000]\n").find("line 1") != std::string::npos);
    CHECK(ParseError("[world\n").find("unterminated") != std::string::npos);
    CHECK(ParseError("[link]\na = A\nb = B\nloss = 2\n").find("loss") != std::string::npos);
    CHECK(ParseError("[send]\nat = 1\nfrom = A\nto = B\nsize = 2\npayload = 00\n").find("exclusive") !=
          std::string::npos);
    CHECK(ParseError("[send]\nat = 1\nfrom = A\nto = B\npayload = 0g\n").find("line 5") != std::string::npos);
    CHECK(ParseError("[world]\n[world]\n").find("duplicate [world]") != std::string::npos);
}

TEST_CASE("reference errors surface as scenario errors")
{
    auto buildError = [](const std::string &aText) {
        try
        {
            BuildWorld(ParseScenario(aText));
        }
        catch (const Error &e)
        {
            CHECK(e.Code() == Errc::kScenario);
            return std::string(e.what());
        }
        FAIL("expected a scenario error");
        return std::string();
    };

    std::string base = "[pan 1]\n[node A]\npan = 1\nrole = coordinator\nshort = 1\n";

    CHECK(buildError(base + "[link]\na = A\nb = Z\n").find("unknown name 'Z'") != std::string::npos);
    CHECK(buildError(base + "[node B]\npan = 2\nrole = ffd\nshort = 2\n").find("undeclared PAN") != std::string::npos);
    CHECK(buildError(base + "[node B]\npan = 1\nrole = coordinator\nshort = 2\n").find("coordinators") !=
          std::string::npos);
    CHECK(buildError(base + "[send]\nat = 1\nfrom = A\nto = nobody\n").find("nobody") != std::string::npos);
    CHECK(buildError(base + "[gateway g]\nnode = A\nmode = sixlowpan\nwired_address = ::1\n").find("prefix") !=
          std::string::npos);
}

TEST_CASE("every shipped scenario runs and is deterministic")
{
    std::size_t count = 0;

    for (const auto &entry : std::filesystem::directory_iterator(SIXLO_SCENARIO_DIR))
    {
        if (entry.path().extension() != ".scn")
        {
            continue;
        }
        CAPTURE(entry.path().string());

        Scenario  scenario = LoadScenario(entry.path());
        RunOutput first    = RunScenario(scenario);
        RunOutput second   = RunScenario(scenario);

        CHECK(first.mTrace == second.mTrace);
        CHECK(first.mMetrics == second.mMetrics);
        CHECK(first.mTrace.find("\tDeliver\t") != std::string::npos);
        count++;
    }
    CHECK(count >= 7);
}

TEST_CASE("reference scenario matches its golden metrics")
{
    Scenario scenario = LoadScenario(std::filesystem::path(SIXLO_SCENARIO_DIR) / "demo.scn");
    CHECK(RunScenario(scenario).mMetrics ==
          ReadFile(std::filesystem::path(SIXLO_TEST_DATA_DIR) / "demo.metrics.golden"));
}

TEST_CASE("output files")
{
    std::filesystem::path dir = std::filesystem::temp_directory_path() / "sixlo-test-scenario-out";
    std::filesystem::remove_all(dir);

    RunOutput output = RunScenario(ParseScenario(kMinimal));
    WriteRunOutput(output, dir / "nested");
    CHECK(ReadFile(dir / "nested" / "trace.tsv") == output.mTrace);
    CHECK(ReadFile(dir / "nested" / "metrics.txt") == output.mMetrics);
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS(LoadScenario("/nonexistent/file.scn"), Error);
}
