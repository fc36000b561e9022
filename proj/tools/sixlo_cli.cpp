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
 *   The `sixlo` command: scenario runner, codec tool and budget table.
 */

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sixlo/scenario.hpp"

using namespace sixlo;

namespace {

enum ExitCode : int
{
    kExitOk       = 0,
    kExitUsage    = 1,
    kExitScenario = 2,
    kExitRuntime  = 3,
};

/// Usage problems found after CLI11 has parsed the command line.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Decode failure at a known position in the input.
struct OffsetError : std::runtime_error
{
    OffsetError(std::size_t aOffset, const std::string &aWhat)
        : std::runtime_error("byte " + std::to_string(aOffset) + ": " + aWhat)
    {
    }
};

std::string Hex16(uint16_t aValue)
{
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0x%04x", aValue);
    return buf;
}

std::string Hex8(uint8_t aValue)
{
    char buf[8];
    std::snprintf(buf, sizeof(buf), "0x%02x", aValue);
    return buf;
}

Bytes HexArgument(const std::string &aText)
{
    try
    {
        return FromHex(aText);
    }
    catch (const Error &e)
    {
        throw UsageError(std::string("invalid hex input: ") + e.what());
    }
}

//---------------------------------------------------------------------------------------------------------------------
// run

struct RunOptions
{
    std::string                mScenario;
    std::optional<uint64_t>    mSeed;
    std::optional<double>      mEnd;
    std::string                mOut = "sixlo-out";
    std::vector<std::string>   mModeOverrides;
};

/// "MODE" applies to every gateway, "NAME=MODE" to one.
void ApplyModeOverride(Scenario &aScenario, const std::string &aOverride)
{
    std::size_t equals = aOverride.find('=');
    std::string name   = equals == std::string::npos ? "" : aOverride.substr(0, equals);
    GatewayMode mode;
    bool        matched = false;

    try
    {
        mode = ParseGatewayMode(equals == std::string::npos ? aOverride : aOverride.substr(equals + 1));
    }
    catch (const Error &e)
    {
        throw UsageError(std::string("--mode-override: ") + e.what());
    }

    for (GatewayConfig &gateway : aScenario.mGateways)
    {
        if (name.empty() || gateway.mName == name)
        {
            gateway.mMode = mode;
            matched       = true;
        }
    }
    if (!matched)
    {
        Fail(Errc::kScenario, "--mode-override names no gateway of the scenario");
    }
}

int CmdRun(const RunOptions &aOptions)
{
    Scenario scenario = LoadScenario(aOptions.mScenario);

    if (aOptions.mSeed)
    {
        scenario.mSeed = *aOptions.mSeed;
    }
    if (aOptions.mEnd)
    {
        scenario.mEnd = *aOptions.mEnd;
    }
    for (const std::string &entry : aOptions.mModeOverrides)
    {
        ApplyModeOverride(scenario, entry);
    }

    RunOutput output = RunScenario(scenario);
    WriteRunOutput(output, aOptions.mOut);
    std::cout << output.mMetrics;
    return kExitOk;
}

//---------------------------------------------------------------------------------------------------------------------
// codec

struct CodecOptions
{
    std::string mInput;
    std::string mPan     = "0xabcd";
    std::string mLinkSrc = "abcd:0001";
    std::string mLinkDst = "abcd:0002";
    bool        mUncompressed = false;
};

NodeAddress AddressOption(const std::string &aName, const std::string &aText)
{
    try
    {
        return ParseNodeAddress(aText);
    }
    catch (const Error &e)
    {
        throw UsageError(aName + ": " + e.what());
    }
}

uint16_t PanOption(const std::string &aText)
{
    try
    {
        std::size_t used  = 0;
        unsigned long pan = std::stoul(aText, &used, 0);

        if (used == aText.size() && pan <= 0xffff)
        {
            return static_cast<uint16_t>(pan);
        }
    }
    catch (const std::exception &)
    {
    }
    throw UsageError("--pan: expected a 16-bit PAN ID");
}

const char *AddrModeName(Hc1AddrMode aMode)
{
    switch (aMode)
    {
    case Hc1AddrMode::kInline:
        return "inline";
    case Hc1AddrMode::kIidFromLink:
        return "prefix-inline-iid-elided";
    case Hc1AddrMode::kLinkLocalIid:
        return "link-local-iid-inline";
    case Hc1AddrMode::kLinkLocalElided:
        return "link-local-elided";
    }
    return "?";
}

const char *NextHeaderName(Hc1NextHeader aNext)
{
    switch (aNext)
    {
    case Hc1NextHeader::kInline:
        return "inline";
    case Hc1NextHeader::kUdp:
        return "udp";
    case Hc1NextHeader::kIcmp:
        return "icmp";
    case Hc1NextHeader::kTcp:
        return "tcp";
    }
    return "?";
}

void DumpIpv6(const Ipv6Packet &aPacket)
{
    std::cout << "ipv6 version=6 traffic_class=" << Hex8(aPacket.mTrafficClass) << " flow_label=" << aPacket.mFlowLabel
              << " payload_length=" << aPacket.PayloadLength() << " next_header=" << unsigned(aPacket.mNextHeader)
              << " hop_limit=" << unsigned(aPacket.mHopLimit) << "\n";
    std::cout << "  src=" << aPacket.mSrc.ToString() << "\n  dst=" << aPacket.mDst.ToString() << "\n";

    if (aPacket.mNextHeader == kProtoUdp && aPacket.mPayload.size() >= kUdpHeaderSize)
    {
        UdpDatagram udp = DecodeUdp(aPacket.mPayload);
        std::cout << "udp src_port=" << Hex16(udp.mSrcPort) << " dst_port=" << Hex16(udp.mDstPort)
                  << " length=" << udp.Length() << " checksum=" << Hex16(udp.mChecksum) << " checksum_ok="
                  << (UdpChecksum(aPacket.mSrc, aPacket.mDst, udp) == udp.mChecksum ? "yes" : "no") << "\n";
        std::cout << "payload " << udp.mPayload.size() << " octets " << ToHex(udp.mPayload) << "\n";
    }
    else
    {
        std::cout << "payload " << aPacket.mPayload.size() << " octets " << ToHex(aPacket.mPayload) << "\n";
    }
    std::cout << "ipv6_hex " << ToHex(EncodeIpv6(aPacket)) << "\n";
}

/// Walks the header stack of a MAC payload, printing each header with its offset.
void DecodeLowpan(ByteSpan aInput, uint16_t aPanId, NodeAddress aLinkSrc, NodeAddress aLinkDst)
{
    std::size_t offset     = 0;
    bool        fragmented = false;
    bool        first      = false;

    auto step = [&](auto &&aFn) {
        try
        {
            return aFn();
        }
        catch (const Error &e)
        {
            throw OffsetError(offset, e.what());
        }
    };

    if (aInput.empty())
    {
        throw OffsetError(0, "empty input");
    }

    Dispatch dispatch = ParseDispatch(aInput[0]);

    if (dispatch.mKind == DispatchKind::kMesh)
    {
        std::size_t used = 0;
        MeshHeader  mesh = step([&] { return DecodeMesh(aInput, aPanId, &used); });

        std::cout << "[" << offset << "] Mesh hops_left=" << unsigned(mesh.mHopsLeft)
                  << " originator=" << ToString(mesh.mOriginator) << " final=" << ToString(mesh.mFinal) << "\n";
        aLinkSrc = mesh.mOriginator;
        aLinkDst = mesh.mFinal;
        offset += used;
    }
    if (offset < aInput.size() && ParseDispatch(aInput[offset]).mKind == DispatchKind::kBc0)
    {
        uint8_t sequence = step([&] { return DecodeBc0(aInput.subspan(offset)); });

        std::cout << "[" << offset << "] Bc0 sequence=" << unsigned(sequence) << "\n";
        offset += 2;
    }
    if (offset < aInput.size())
    {
        DispatchKind kind = ParseDispatch(aInput[offset]).mKind;

        if (kind == DispatchKind::kFragFirst || kind == DispatchKind::kFragSubsequent)
        {
            std::size_t used = 0;
            FragHeader  frag = step([&] { return DecodeFrag(aInput.subspan(offset), &used); });

            std::cout << "[" << offset << "] " << DispatchKindName(kind) << " datagram_size=" << frag.mDatagramSize
                      << " tag=" << Hex16(frag.mTag);
            if (frag.mOffset)
            {
                std::cout << " offset=" << unsigned(*frag.mOffset) << " (" << frag.ByteOffset() << " octets)";
            }
            std::cout << "\n";
            fragmented = true;
            first      = !frag.mOffset;
            offset += used;
        }
    }

    if (offset >= aInput.size())
    {
        if (fragmented)
        {
            return;
        }
        throw OffsetError(offset, "missing dispatch");
    }

    ByteSpan rest = aInput.subspan(offset);
    dispatch      = ParseDispatch(rest[0]);

    if (fragmented)
    {
        std::cout << "[" << offset << "] fragment payload " << rest.size() << " octets";
        if (first)
        {
            std::cout << " starting with " << DispatchKindName(dispatch.mKind);
        }
        std::cout << "\n";
        return;
    }

    switch (dispatch.mKind)
    {
    case DispatchKind::kUncompressedIpv6:
    {
        std::cout << "[" << offset << "] UncompressedIpv6\n";
        offset++;
        DumpIpv6(step([&] { return DecodeIpv6(rest.subspan(1)); }));
        break;
    }
    case DispatchKind::kHc1:
    {
        Hc1Header hc1;

        if (rest.size() < 2)
        {
            throw OffsetError(offset + 1, "missing HC1 encoding octet");
        }
        hc1 = Hc1Header::Decode(rest[1]);
        std::cout << "[" << offset << "] Hc1 encoding=" << Hex8(rest[1]) << " src=" << AddrModeName(hc1.mSrcMode)
                  << " dst=" << AddrModeName(hc1.mDstMode) << " tc_fl_zero=" << (hc1.mTcFlZero ? 1 : 0)
                  << " next_header=" << NextHeaderName(hc1.mNextHeader) << " hc2=" << (hc1.mHc2 ? 1 : 0) << "\n";
        std::cout << "  link_src=" << ToString(aLinkSrc) << " link_dst=" << ToString(aLinkDst) << "\n";
        DumpIpv6(step([&] { return DecompressIpv6(rest, aLinkSrc, aLinkDst); }));
        break;
    }
    default:
        throw OffsetError(offset, std::string("dispatch ") + Hex8(rest[0]) + " (" +
                                      DispatchKindName(dispatch.mKind) + ") carries no IPv6 datagram");
    }
}

int CmdCodecDecode(const CodecOptions &aOptions)
{
    Bytes input = HexArgument(aOptions.mInput);

    DecodeLowpan(input, PanOption(aOptions.mPan), AddressOption("--link-src", aOptions.mLinkSrc),
                 AddressOption("--link-dst", aOptions.mLinkDst));
    return kExitOk;
}

int CmdCodecEncode(const CodecOptions &aOptions)
{
    Bytes      input = HexArgument(aOptions.mInput);
    Ipv6Packet packet;

    try
    {
        packet = DecodeIpv6(input);
    }
    catch (const Error &e)
    {
        throw OffsetError(0, e.what());
    }

    Bytes out = aOptions.mUncompressed ? EncodeUncompressedIpv6(packet)
                                       : CompressIpv6(packet, AddressOption("--link-src", aOptions.mLinkSrc),
                                                      AddressOption("--link-dst", aOptions.mLinkDst));

    std::cout << ToHex(out) << "\n";
    std::cout << "# " << input.size() << " -> " << out.size() << " octets\n";
    return kExitOk;
}

/// Checks one golden line; returns an empty string on success.
std::string VerifyVector(const std::string &aInput, const std::string &aKind, const std::string &aExpected)
{
    const NodeAddress kSrc = Short16{0xabcd, 0x0001};
    const NodeAddress kDst = Short16{0xabcd, 0x0002};

    Bytes        input = FromHex(aInput);
    DispatchKind kind  = ParseDispatchKind(aKind);
    Bytes        got;

    if (aExpected == "-")
    {
        Require(input.size() == 1, Errc::kInvalidArgument, "dispatch vectors hold one octet");
        DispatchKind actual = ParseDispatch(input[0]).mKind;
        return actual == kind ? "" : std::string("classified as ") + DispatchKindName(actual);
    }

    Bytes expected = FromHex(aExpected);

    switch (kind)
    {
    case DispatchKind::kHc1:
    case DispatchKind::kUncompressedIpv6:
    {
        Ipv6Packet packet = DecodeIpv6(input);

        got = kind == DispatchKind::kHc1 ? CompressIpv6(packet, kSrc, kDst) : EncodeUncompressedIpv6(packet);
        if (got == expected && DecompressIpv6(expected, kSrc, kDst) != packet)
        {
            return "decompression does not restore the input";
        }
        break;
    }
    case DispatchKind::kMesh:
        got = EncodeMesh(DecodeMesh(input, 0xabcd));
        break;
    case DispatchKind::kBc0:
        got = EncodeBc0(DecodeBc0(input));
        break;
    case DispatchKind::kFragFirst:
    case DispatchKind::kFragSubsequent:
        got = EncodeFrag(DecodeFrag(input));
        break;
    default:
        return "no codec vector form for this kind";
    }
    if (!input.empty() && kind != DispatchKind::kHc1 && kind != DispatchKind::kUncompressedIpv6 &&
        ParseDispatch(input[0]).mKind != kind)
    {
        return "input dispatch does not match the kind";
    }
    return got == expected ? "" : "got " + ToHex(got);
}

int CmdCodecVerify(const CodecOptions &aOptions)
{
    std::ifstream file(aOptions.mInput);
    std::string   line;
    std::size_t   lineNumber = 0;
    std::size_t   checked    = 0;
    std::size_t   failed     = 0;

    if (!file)
    {
        throw UsageError("cannot open " + aOptions.mInput);
    }

    while (std::getline(file, line))
    {
        lineNumber++;
        if (line.empty() || line[0] == '#')
        {
            continue;
        }

        std::istringstream fields(line);
        std::string        input, kind, expected, extra;
        std::string        problem;

        if (!(fields >> input >> kind >> expected) || (fields >> extra))
        {
            problem = "expected three fields";
        }
        else
        {
            try
            {
                problem = VerifyVector(input, kind, expected);
            }
            catch (const Error &e)
            {
                problem = e.what();
            }
        }

        checked++;
        if (!problem.empty())
        {
            failed++;
            std::cout << "FAIL line " << lineNumber << ": " << problem << "\n";
        }
    }

    std::cout << (failed == 0 ? "ok " : "failed ") << checked - failed << "/" << checked << " vectors\n";
    return failed == 0 && checked > 0 ? kExitOk : kExitRuntime;
}

//---------------------------------------------------------------------------------------------------------------------
// budget

int CmdBudget(void)
{
    char line[128];

    std::cout << "security      mac_overhead  mac_payload_budget\n";
    for (SecurityMode mode :
         {SecurityMode::kNone, SecurityMode::kAesCcm32, SecurityMode::kAesCcm64, SecurityMode::kAesCcm128})
    {
        std::snprintf(line, sizeof(line), "%-12s  %12zu  %18zu\n", SecurityModeName(mode),
                      kMaxPsduSize - MacPayloadBudget(mode), MacPayloadBudget(mode));
        std::cout << line;
    }

    std::cout << "\nband    bit_rate   airtime(" << kMaxPpduSize << " octets)\n";
    for (BandId id : {BandId::kB868, BandId::kB915, BandId::kB2450})
    {
        const PhyBand &band = GetPhyBand(id);

        std::snprintf(line, sizeof(line), "%-6s  %3u kb/s   %.3f ms\n", band.mName, band.mBitRate / 1000,
                      FrameAirtime(band, kMaxPpduSize) * 1000.0);
        std::cout << line;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"6LoWPAN codec, mesh simulator and gateway models"};
    app.require_subcommand(1);

    RunOptions runOptions;
    auto      *run = app.add_subcommand("run", "Run a scenario and write trace.tsv and metrics.txt");
    run->add_option("scenario", runOptions.mScenario, "Scenario file")->required();
    run->add_option("--seed", runOptions.mSeed, "Override the scenario seed");
    run->add_option("--t-end", runOptions.mEnd, "Override the end time in seconds")->check(CLI::NonNegativeNumber);
    run->add_option("--out", runOptions.mOut, "Output directory")->capture_default_str();
    run->add_option("--mode-override", runOptions.mModeOverrides,
                    "Gateway mode for every gateway (MODE) or one gateway (NAME=MODE); repeatable");

    CodecOptions codecOptions;
    auto        *codec = app.add_subcommand("codec", "Encode, decode or verify 6LoWPAN headers");
    codec->require_subcommand(1);

    auto *decode = codec->add_subcommand("decode", "Dump the headers of a hex MAC payload");
    decode->add_option("hex", codecOptions.mInput, "MAC payload in hex")->required();
    decode->add_option("--pan", codecOptions.mPan, "PAN ID for short mesh addresses")->capture_default_str();
    decode->add_option("--link-src", codecOptions.mLinkSrc, "Link source when no mesh header")->capture_default_str();
    decode->add_option("--link-dst", codecOptions.mLinkDst, "Link destination when no mesh header")
        ->capture_default_str();

    auto *encode = codec->add_subcommand("encode", "Compress a hex IPv6 packet");
    encode->add_option("hex", codecOptions.mInput, "IPv6 packet in hex")->required();
    encode->add_option("--link-src", codecOptions.mLinkSrc, "Link source address")->capture_default_str();
    encode->add_option("--link-dst", codecOptions.mLinkDst, "Link destination address")->capture_default_str();
    encode->add_flag("--uncompressed", codecOptions.mUncompressed, "Emit the 0x41 form instead of HC1");

    auto *verify = codec->add_subcommand("verify", "Check a golden vector file");
    verify->add_option("file", codecOptions.mInput, "Golden file")->required();

    app.add_subcommand("budget", "Print MAC payload budgets and frame airtimes");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (run->parsed())
        {
            return CmdRun(runOptions);
        }
        if (decode->parsed())
        {
            return CmdCodecDecode(codecOptions);
        }
        if (encode->parsed())
        {
            return CmdCodecEncode(codecOptions);
        }
        if (verify->parsed())
        {
            return CmdCodecVerify(codecOptions);
        }
        return CmdBudget();
    }
    catch (const UsageError &e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const OffsetError &e)
    {
        std::cerr << "decode error at " << e.what() << "\n";
        return kExitRuntime;
    }
    catch (const Error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return e.Code() == Errc::kScenario ? kExitScenario : kExitRuntime;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
