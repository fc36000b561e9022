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

#include "sixlo/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace sixlo {

namespace {

std::string_view Trim(std::string_view aText)
{
    const char *space = " \t\r";

    std::size_t first = aText.find_first_not_of(space);
    if (first == std::string_view::npos)
    {
        return {};
    }
    return aText.substr(first, aText.find_last_not_of(space) - first + 1);
}

std::vector<std::string> SplitList(std::string_view aText, char aSeparator = ',')
{
    std::vector<std::string> out;

    while (!aText.empty())
    {
        std::size_t      cut  = aText.find(aSeparator);
        std::string_view item = Trim(aText.substr(0, cut));

        if (!item.empty())
        {
            out.emplace_back(item);
        }
        if (cut == std::string_view::npos)
        {
            break;
        }
        aText.remove_prefix(cut + 1);
    }
    return out;
}

std::string LinePrefix(std::size_t aLine) { return aLine == 0 ? std::string() : "line " + std::to_string(aLine) + ": "; }

/// Key/value pairs of one section, consumed as they are read so leftovers can be reported.
class Section
{
public:
    Section(std::string aKind, std::string aName, std::size_t aLine)
        : mKind(std::move(aKind))
        , mName(std::move(aName))
        , mLine(aLine)
    {
    }

    const std::string &Kind(void) const { return mKind; }
    const std::string &Name(void) const { return mName; }
    std::size_t        Line(void) const { return mLine; }

    void Set(const std::string &aKey, std::string aValue, std::size_t aLine)
    {
        if (mValues.contains(aKey))
        {
            Fail(Errc::kScenario, LinePrefix(aLine) + "duplicate key '" + aKey + "'");
        }
        mValues.emplace(aKey, std::pair{std::move(aValue), aLine});
    }

    bool Has(const std::string &aKey) const { return mValues.contains(aKey); }

    std::optional<std::string> Take(const std::string &aKey)
    {
        auto it = mValues.find(aKey);

        if (it == mValues.end())
        {
            return std::nullopt;
        }
        mCurrentLine = it->second.second;
        std::string value = std::move(it->second.first);
        mValues.erase(it);
        return value;
    }

    std::string Need(const std::string &aKey)
    {
        auto value = Take(aKey);

        if (!value)
        {
            Fail(Errc::kScenario, LinePrefix(mLine) + "[" + mKind + "] needs '" + aKey + "'");
        }
        return *value;
    }

    /// Runs aParse on the value of aKey, reporting failures at the key's line.
    template <typename T, typename Fn> std::optional<T> Get(const std::string &aKey, Fn &&aParse)
    {
        auto value = Take(aKey);

        if (!value)
        {
            return std::nullopt;
        }
        try
        {
            return aParse(*value);
        }
        catch (const Error &e)
        {
            Fail(Errc::kScenario, LinePrefix(mCurrentLine) + aKey + ": " + e.what());
        }
    }

    template <typename T, typename Fn> T Require(const std::string &aKey, Fn &&aParse)
    {
        if (!Has(aKey))
        {
            Fail(Errc::kScenario, LinePrefix(mLine) + "[" + mKind + "] needs '" + aKey + "'");
        }
        return *Get<T>(aKey, std::forward<Fn>(aParse));
    }

    void CheckConsumed(void) const
    {
        if (!mValues.empty())
        {
            const auto &[key, value] = *mValues.begin();
            Fail(Errc::kScenario, LinePrefix(value.second) + "unknown key '" + key + "' in [" + mKind + "]");
        }
    }

private:
    std::string                                                mKind;
    std::string                                                mName;
    std::size_t                                                mLine;
    std::size_t                                                mCurrentLine = 0;
    std::map<std::string, std::pair<std::string, std::size_t>> mValues;
};

uint64_t ParseUnsigned(std::string_view aText, uint64_t aMax)
{
    int      base = 10;
    uint64_t value = 0;

    if (aText.starts_with("0x") || aText.starts_with("0X"))
    {
        base = 16;
        aText.remove_prefix(2);
    }

    auto [end, ec] = std::from_chars(aText.data(), aText.data() + aText.size(), value, base);
    if (aText.empty() || ec != std::errc() || end != aText.data() + aText.size() || value > aMax)
    {
        Fail(Errc::kInvalidArgument, "expected an integer up to " + std::to_string(aMax));
    }
    return value;
}

double ParseReal(std::string_view aText)
{
    std::string text(aText);
    std::size_t used  = 0;
    double      value = 0;

    try
    {
        value = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value))
    {
        Fail(Errc::kInvalidArgument, "expected a number, got '" + text + "'");
    }
    return value;
}

double ParseNonNegative(std::string_view aText)
{
    double value = ParseReal(aText);
    sixlo::Require(value >= 0, Errc::kInvalidArgument, "expected a non-negative number");
    return value;
}

auto U16 = [](const std::string &aText) { return static_cast<uint16_t>(ParseUnsigned(aText, 0xffff)); };
auto U8  = [](const std::string &aText) { return static_cast<uint8_t>(ParseUnsigned(aText, 0xff)); };

/// Default EUI-64 for a node without one: 02:00:00:00 ‖ PAN ID ‖ short address.
Eui64 DerivedEui64(uint16_t aPanId, uint16_t aShort)
{
    return Eui64{(uint64_t{0x02} << 56) | (uint64_t{aPanId} << 16) | aShort};
}

/// Deterministic filler for `size = N`: octet i is i mod 256.
Bytes FillPayload(std::size_t aSize)
{
    Bytes out(aSize);
    for (std::size_t i = 0; i < aSize; i++)
    {
        out[i] = static_cast<uint8_t>(i);
    }
    return out;
}

void ParseWorld(Section &aSection, Scenario &aScenario)
{
    if (auto seed = aSection.Get<uint64_t>("seed", [](const std::string &t) { return ParseUnsigned(t, UINT64_MAX); }))
    {
        aScenario.mSeed = *seed;
    }
    if (auto end = aSection.Get<double>("t_end", ParseNonNegative))
    {
        aScenario.mEnd = *end;
    }
    if (auto latency = aSection.Get<double>("wired_latency_ms", ParseNonNegative))
    {
        aScenario.mWiredLatency = *latency / 1000.0;
    }
}

void ParsePan(Section &aSection, Scenario &aScenario)
{
    PanConfig pan;

    try
    {
        pan.mPanId = U16(aSection.Name());
    }
    catch (const Error &e)
    {
        Fail(Errc::kScenario, LinePrefix(aSection.Line()) + "[pan ID]: " + e.what());
    }
    if (auto addressing = aSection.Get<bool>("addressing", [](const std::string &t) {
            sixlo::Require(t == "short" || t == "extended", Errc::kInvalidArgument, "expected short or extended");
            return t == "extended";
        }))
    {
        pan.mExtended = *addressing;
    }
    pan.mStack    = aSection.Get<StackKind>("stack", ParseStackKind).value_or(StackKind::kLowpan);
    pan.mSecurity = aSection.Get<SecurityMode>("security", ParseSecurityMode).value_or(SecurityMode::kNone);
    pan.mPrefix   = aSection.Get<Ipv6Prefix>("prefix", ParseIpv6Prefix);
    aScenario.mPans.push_back(pan);
}

void ParseNode(Section &aSection, Scenario &aScenario)
{
    NodeConfig node;

    node.mName  = aSection.Name();
    node.mPanId = aSection.Require<uint16_t>("pan", U16);
    node.mRole  = aSection.Require<NodeRole>("role", ParseNodeRole);
    node.mShort = aSection.Require<uint16_t>("short", U16);
    node.mExt   = aSection.Get<Eui64>("ext", ParseEui64).value_or(DerivedEui64(node.mPanId, node.mShort));

    if (auto sleep = aSection.Get<SleepSchedule>("sleep", [](const std::string &t) {
            auto parts = SplitList(t, '/');
            sixlo::Require(parts.size() == 2, Errc::kInvalidArgument, "expected awake_ms/asleep_ms");
            SleepSchedule schedule{ParseNonNegative(parts[0]), ParseNonNegative(parts[1])};
            sixlo::Require(schedule.mAwakeMs > 0, Errc::kInvalidArgument, "awake period must be positive");
            return schedule;
        }))
    {
        node.mSleep = *sleep;
    }
    node.mResponseDelay = aSection.Get<double>("response_delay", ParseNonNegative).value_or(0.0);
    aScenario.mNodes.push_back(node);
}

void ParseLink(Section &aSection, Scenario &aScenario)
{
    double loss = aSection.Get<double>("loss", ParseNonNegative).value_or(0.0);
    BandId band = aSection.Get<BandId>("band", ParseBandId).value_or(BandId::kB2450);

    if (loss > 1)
    {
        Fail(Errc::kScenario, LinePrefix(aSection.Line()) + "loss must lie in [0, 1]");
    }

    if (auto chain = aSection.Take("chain"))
    {
        auto names = SplitList(*chain);

        if (names.size() < 2 || aSection.Has("a") || aSection.Has("b"))
        {
            Fail(Errc::kScenario, LinePrefix(aSection.Line()) + "chain needs two or more names and excludes a/b");
        }
        for (std::size_t i = 0; i + 1 < names.size(); i++)
        {
            aScenario.mLinks.push_back(LinkSpec{names[i], names[i + 1], loss, band});
        }
        return;
    }
    aScenario.mLinks.push_back(LinkSpec{aSection.Need("a"), aSection.Need("b"), loss, band});
}

void ParseGateway(Section &aSection, Scenario &aScenario)
{
    GatewayConfig gateway;

    gateway.mName         = aSection.Name();
    gateway.mNode         = aSection.Need("node");
    gateway.mMode         = aSection.Require<GatewayMode>("mode", ParseGatewayMode);
    gateway.mWiredAddress = aSection.Require<Ipv6Address>("wired_address", Ipv6Address::Parse);
    gateway.mPrefix       = aSection.Get<Ipv6Prefix>("prefix", ParseIpv6Prefix);
    gateway.mTtl          = aSection.Get<double>("ttl", ParseNonNegative).value_or(kDefaultDiscoveryTtl);
    gateway.mPadSize      = aSection.Get<std::size_t>("pad_size", [](const std::string &t) {
                                     return static_cast<std::size_t>(ParseUnsigned(t, kDefaultPadSize));
                                 }).value_or(kDefaultPadSize);
    gateway.mTunnelPort   = aSection.Get<uint16_t>("tunnel_port", U16).value_or(kDefaultTunnelPort);
    gateway.mTunnelPeer   = aSection.Get<Ipv6Address>("tunnel_peer", Ipv6Address::Parse);

    if (auto pool = aSection.Get<std::pair<uint16_t, uint16_t>>("short_pool", [](const std::string &t) {
            auto parts = SplitList(t, '/');
            sixlo::Require(parts.size() == 2, Errc::kInvalidArgument, "expected first/size");
            return std::pair{U16(parts[0]), U16(parts[1])};
        }))
    {
        gateway.mPoolFirst = pool->first;
        gateway.mPoolSize  = pool->second;
    }
    if (auto subscribers = aSection.Take("subscribers"))
    {
        gateway.mSubscribers = SplitList(*subscribers);
    }

    auto pairs = [](const std::string &aText) {
        std::vector<std::pair<uint16_t, std::string>> out;
        for (const std::string &item : SplitList(aText))
        {
            auto parts = SplitList(item, ':');
            sixlo::Require(parts.size() == 2, Errc::kInvalidArgument, "expected number:name items");
            out.emplace_back(U16(parts[0]), parts[1]);
        }
        return out;
    };
    using Pairs       = std::vector<std::pair<uint16_t, std::string>>;
    gateway.mDevids   = aSection.Get<Pairs>("register", pairs).value_or(Pairs{});
    gateway.mServices = aSection.Get<Pairs>("services", pairs).value_or(Pairs{});
    aScenario.mGateways.push_back(gateway);
}

void ParseSend(Section &aSection, Scenario &aScenario)
{
    SendSpec send;

    send.mAt   = aSection.Require<double>("at", ParseNonNegative);
    send.mFrom = aSection.Need("from");
    send.mKind = aSection.Get<SendKind>("kind", ParseSendKind).value_or(SendKind::kUdp);
    if (send.mKind != SendKind::kBroadcast)
    {
        send.mTo = aSection.Need("to");
    }

    auto payload = aSection.Get<Bytes>("payload", FromHex);
    auto size    = aSection.Get<std::size_t>("size", [](const std::string &t) {
        return static_cast<std::size_t>(ParseUnsigned(t, kMaxDatagramSize));
    });
    if (payload && size)
    {
        Fail(Errc::kScenario, LinePrefix(aSection.Line()) + "payload and size are exclusive");
    }
    send.mPayload = payload ? *payload : FillPayload(size.value_or(0));
    send.mSrcPort = aSection.Get<uint16_t>("sport", U16).value_or(send.mSrcPort);
    send.mDstPort = aSection.Get<uint16_t>("dport", U16).value_or(send.mDstPort);
    send.mHops    = aSection.Get<uint8_t>("hops", U8).value_or(send.mHops);
    send.mKey     = aSection.Get<uint16_t>("key", U16).value_or(0);

    std::size_t repeat   = aSection.Get<std::size_t>("repeat", [](const std::string &t) {
                             return static_cast<std::size_t>(ParseUnsigned(t, 100000));
                         }).value_or(1);
    double      interval = aSection.Get<double>("interval", ParseNonNegative).value_or(1.0);

    for (std::size_t i = 0; i < repeat; i++)
    {
        aScenario.mSends.push_back(send);
        send.mAt += interval;
    }
}

void Finish(Section &aSection, Scenario &aScenario)
{
    static const std::map<std::string, void (*)(Section &, Scenario &)> kParsers = {
        {"world", ParseWorld}, {"pan", ParsePan},   {"node", ParseNode},       {"host", nullptr},
        {"link", ParseLink},   {"route", nullptr},  {"gateway", ParseGateway}, {"send", ParseSend},
    };

    const std::string &kind  = aSection.Kind();
    bool               named = kind == "pan" || kind == "node" || kind == "host" || kind == "gateway";

    if (named == aSection.Name().empty())
    {
        Fail(Errc::kScenario, LinePrefix(aSection.Line()) + "[" + kind + "] " +
                                  (named ? "needs a name" : "takes no name"));
    }

    if (kind == "host")
    {
        aScenario.mHosts.push_back(
            HostConfig{aSection.Name(), aSection.Require<Ipv6Address>("address", Ipv6Address::Parse)});
    }
    else if (kind == "route")
    {
        aScenario.mRoutes.push_back(RouteSpec{aSection.Need("at"), aSection.Need("to"), aSection.Need("via")});
    }
    else
    {
        kParsers.at(kind)(aSection, aScenario);
    }
    aSection.CheckConsumed();
}

} // namespace

Scenario ParseScenario(std::string_view aText)
{
    static const std::set<std::string> kKinds = {"world", "pan", "node", "host", "link", "route", "gateway", "send"};

    Scenario               scenario;
    std::optional<Section> current;
    std::istringstream     input{std::string(aText)};
    std::string            raw;
    std::size_t            lineNumber = 0;
    bool                   sawWorld   = false;

    while (std::getline(input, raw))
    {
        lineNumber++;

        std::string_view line = raw;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        line = Trim(line);
        if (line.empty())
        {
            continue;
        }

        if (line.front() == '[')
        {
            if (line.back() != ']')
            {
                Fail(Errc::kScenario, LinePrefix(lineNumber) + "unterminated section header");
            }
            if (current)
            {
                Finish(*current, scenario);
            }

            std::string_view header = Trim(line.substr(1, line.size() - 2));
            std::size_t      space  = header.find_first_of(" \t");
            std::string      kind(header.substr(0, space));
            std::string      name(space == std::string_view::npos ? "" : Trim(header.substr(space)));

            if (!kKinds.contains(kind))
            {
                Fail(Errc::kScenario, LinePrefix(lineNumber) + "unknown section [" + kind + "]");
            }
            if (kind == "world")
            {
                if (sawWorld)
                {
                    Fail(Errc::kScenario, LinePrefix(lineNumber) + "duplicate [world] section");
                }
                sawWorld = true;
            }
            current.emplace(kind, name, lineNumber);
            continue;
        }

        std::size_t equals = line.find('=');
        if (equals == std::string_view::npos)
        {
            Fail(Errc::kScenario, LinePrefix(lineNumber) + "expected key = value");
        }
        if (!current)
        {
            Fail(Errc::kScenario, LinePrefix(lineNumber) + "key outside any section");
        }

        std::string key(Trim(line.substr(0, equals)));
        std::string value(Trim(line.substr(equals + 1)));

        if (key.empty() || value.empty())
        {
            Fail(Errc::kScenario, LinePrefix(lineNumber) + "empty key or value");
        }
        current->Set(key, value, lineNumber);
    }
    if (current)
    {
        Finish(*current, scenario);
    }
    return scenario;
}

Scenario LoadScenario(const std::filesystem::path &aPath)
{
    std::ifstream file(aPath, std::ios::binary);

    if (!file)
    {
        Fail(Errc::kScenario, "cannot open " + aPath.string());
    }

    std::ostringstream text;
    text << file.rdbuf();
    try
    {
        return ParseScenario(text.str());
    }
    catch (const Error &e)
    {
        Fail(Errc::kScenario, aPath.string() + ": " + std::string(e.what()).substr(ErrcName(e.Code()).size() + 2));
    }
}

World BuildWorld(const Scenario &aScenario)
{
    World world(aScenario.mSeed);

    try
    {
        world.SetWiredLatency(aScenario.mWiredLatency);
        for (const PanConfig &pan : aScenario.mPans)
        {
            world.AddPan(pan);
        }
        for (const NodeConfig &node : aScenario.mNodes)
        {
            world.AddNode(node);
        }
        for (const HostConfig &host : aScenario.mHosts)
        {
            world.AddHost(host);
        }
        for (const LinkSpec &link : aScenario.mLinks)
        {
            world.AddLink(link.mA, link.mB, link.mLoss, link.mBand);
        }
        for (const RouteSpec &route : aScenario.mRoutes)
        {
            world.AddRoute(route.mAt, route.mTo, route.mVia);
        }
        for (const GatewayConfig &gateway : aScenario.mGateways)
        {
            world.AddGateway(gateway);
        }
        for (const SendSpec &send : aScenario.mSends)
        {
            world.Schedule(send);
        }
        world.RunUntil(0);
    }
    catch (const Error &e)
    {
        if (e.Code() == Errc::kScenario)
        {
            throw;
        }
        Fail(Errc::kScenario, e.what());
    }
    return world;
}

RunOutput RunScenario(const Scenario &aScenario)
{
    World world = BuildWorld(aScenario);

    world.RunUntil(aScenario.mEnd);
    return RunOutput{FormatTrace(world.Trace()), world.GetMetrics().ToText()};
}

void WriteRunOutput(const RunOutput &aOutput, const std::filesystem::path &aDir)
{
    std::error_code error;

    std::filesystem::create_directories(aDir, error);
    if (error)
    {
        Fail(Errc::kIo, "cannot create " + aDir.string() + ": " + error.message());
    }

    for (const auto &[name, text] : {std::pair{"trace.tsv", &aOutput.mTrace}, std::pair{"metrics.txt", &aOutput.mMetrics}})
    {
        std::ofstream file(aDir / name, std::ios::binary | std::ios::trunc);

        file << *text;
        if (!file.flush())
        {
            Fail(Errc::kIo, "cannot write " + (aDir / name).string());
        }
    }
}

} // namespace sixlo
