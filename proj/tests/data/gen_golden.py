#!/usr/bin/env python3
# Copyright 2026 The sixlo Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes dispatch.golden and codec.golden.

Expected values are built here from the dispatch bit patterns and the header
layouts, without touching the C++ code, so the files act as an independent
reference for the codec and the `sixlo codec verify` subcommand.
"""

import ipaddress
import os
import struct

HERE = os.path.dirname(os.path.abspath(__file__))

DISPATCH_ROWS = [
    ("00xxxxxx", "NotLowpan"),
    ("01000001", "UncompressedIpv6"),
    ("01000010", "Hc1"),
    ("01010000", "Bc0"),
    ("01111111", "AdditionalDispatch"),
    ("10xxxxxx", "Mesh"),
    ("11000xxx", "FragFirst"),
    ("11100xxx", "FragSubsequent"),
]


def classify(value):
    bits = format(value, "08b")
    for pattern, kind in DISPATCH_ROWS:
        if all(p in ("x", b) for p, b in zip(pattern, bits)):
            return kind
    return "Unknown"


def write_dispatch():
    with open(os.path.join(HERE, "dispatch.golden"), "w") as f:
        f.write("# <dispatch octet> <kind> -\n")
        for value in range(256):
            f.write(f"{value:02x} {classify(value)} -\n")


PAN = 0xABCD
L2_SRC = 0x0001
L2_DST = 0x0002


def iid_short(pan, short):
    return bytes([0x02, 0x00, pan >> 8, 0xFF, 0xFE, pan & 0xFF, short >> 8, short & 0xFF])


def addr(text):
    return ipaddress.IPv6Address(text).packed


def checksum(src, dst, sport, dport, payload):
    length = 8 + len(payload)
    data = src + dst + struct.pack("!IxxxB", length, 17)
    data += struct.pack("!HHHH", sport, dport, length, 0) + payload
    if len(data) % 2:
        data += b"\0"
    total = sum(struct.unpack(f"!{len(data) // 2}H", data))
    while total >> 16:
        total = (total & 0xFFFF) + (total >> 16)
    value = ~total & 0xFFFF
    return value or 0xFFFF


def udp_packet(src, dst, sport, dport, payload, hop=64, tc=0, fl=0):
    udp = struct.pack("!HHHH", sport, dport, 8 + len(payload), checksum(src, dst, sport, dport, payload))
    udp += payload
    head = struct.pack("!IHBB", (6 << 28) | (tc << 20) | fl, len(udp), 17, hop)
    return head + src + dst + udp, udp


def raw_packet(src, dst, nh, payload, hop=64):
    head = struct.pack("!IHBB", 6 << 28, len(payload), nh, hop)
    return head + src + dst + payload


LL_SRC = b"\xfe\x80" + bytes(6) + iid_short(PAN, L2_SRC)
LL_DST = b"\xfe\x80" + bytes(6) + iid_short(PAN, L2_DST)


def write_codec():
    rows = []

    # Best case: link-local, link-derived IIDs, TC = FL = 0, nibble ports.
    payload = b"hi"
    packet, udp = udp_packet(LL_SRC, LL_DST, 0xF0B3, 0xF0BF, payload)
    out = bytes([0x42, 0xFB, 64, 0xE0, 0x3F]) + udp[6:8] + payload
    rows.append((packet, "Hc1", out))

    # Global source carried in full, link-local destination elided.
    src = addr("2001:db8::1")
    packet, udp = udp_packet(src, LL_DST, 0xF0B1, 0xF0B2, b"abc", hop=3)
    out = bytes([0x42, 0x3B, 3]) + src + bytes([0xE0, 0x12]) + udp[6:8] + b"abc"
    rows.append((packet, "Hc1", out))

    # Non-zero traffic class forces TC and flow label inline.
    packet, udp = udp_packet(LL_SRC, LL_DST, 0xF0B3, 0xF0BF, b"", tc=0x20)
    out = bytes([0x42, 0xF3, 64, 0x20, 0, 0, 0, 0xE0, 0x3F]) + udp[6:8]
    rows.append((packet, "Hc1", out))

    # Global prefix with link-derived IID on both sides, source port inline.
    prefix = addr("2001:db8:1::")[:8]
    src = prefix + iid_short(PAN, L2_SRC)
    dst = prefix + iid_short(PAN, L2_DST)
    packet, udp = udp_packet(src, dst, 5683, 0xF0B7, b"\x01\x02", tc=0, fl=0)
    out = bytes([0x42, 0x5B, 64]) + prefix + prefix + bytes([0x60]) + struct.pack("!H", 5683) + bytes([0x07])
    out += udp[6:8] + b"\x01\x02"
    rows.append((packet, "Hc1", out))

    # Neither port compressible: UDP header travels uncompressed after HC1.
    packet, udp = udp_packet(LL_SRC, LL_DST, 5683, 5684, b"zz")
    out = bytes([0x42, 0xFA, 64]) + udp
    rows.append((packet, "Hc1", out))

    # ICMPv6 and an unknown next header pass through uncompressed.
    icmp = bytes([128, 0, 0x12, 0x34, 0, 1, 0, 1])
    packet = raw_packet(LL_SRC, LL_DST, 58, icmp, hop=255)
    rows.append((packet, "Hc1", bytes([0x42, 0xFC, 255]) + icmp))
    packet = raw_packet(LL_SRC, LL_DST, 59, b"", hop=1)
    rows.append((packet, "Hc1", bytes([0x42, 0xF8, 1, 59])))

    # Flow label wider than one octet.
    packet, udp = udp_packet(LL_SRC, LL_DST, 0xF0B0, 0xF0B0, b"", tc=0xB8, fl=0xABCDE)
    out = bytes([0x42, 0xF3, 64, 0xB8, 0x0A, 0xBC, 0xDE, 0xE0, 0x00]) + udp[6:8]
    rows.append((packet, "Hc1", out))

    # Uncompressed dispatch.
    packet, _ = udp_packet(addr("2001:db8::1"), addr("2001:db8::2"), 1, 2, b"x")
    rows.append((packet, "UncompressedIpv6", b"\x41" + packet))

    # Mesh: short/short hops 4, ext/ext hops 15, mixed.
    mesh = bytes([0x80 | 0x20 | 0x10 | 4, 0x00, 0x01, 0x00, 0x04])
    rows.append((mesh, "Mesh", mesh))
    mesh = bytes([0x80 | 15]) + bytes.fromhex("00124b0001020304") + bytes.fromhex("00124b0001020305")
    rows.append((mesh, "Mesh", mesh))
    mesh = bytes([0x80 | 0x20 | 1, 0x12, 0x34]) + bytes.fromhex("0102030405060708")
    rows.append((mesh, "Mesh", mesh))

    rows.append((b"\x50\x00", "Bc0", b"\x50\x00"))
    rows.append((b"\x50\xff", "Bc0", b"\x50\xff"))

    rows.append((bytes([0xC5, 0x00, 0x00, 0x07]), "FragFirst", bytes([0xC5, 0x00, 0x00, 0x07])))
    size, tag = 2047, 0xBEEF
    first = bytes([0xC0 | (size >> 8), size & 0xFF]) + struct.pack("!H", tag)
    rows.append((first, "FragFirst", first))
    nxt = bytes([0xE0 | (1280 >> 8), 1280 & 0xFF, 0x00, 0x07, 0x0C])
    rows.append((nxt, "FragSubsequent", nxt))

    with open(os.path.join(HERE, "codec.golden"), "w") as f:
        f.write("# <input hex> <kind> <expected output hex>\n")
        f.write("# Hc1: input is an IPv6 packet compressed with link source abcd:0001 and\n")
        f.write("#      link destination abcd:0002; output is the 6LoWPAN datagram.\n")
        f.write("# UncompressedIpv6: input is an IPv6 packet; output is the 0x41 datagram.\n")
        f.write("# Mesh/Bc0/FragFirst/FragSubsequent: input is decoded (PAN abcd) and re-encoded.\n")
        for inp, kind, out in rows:
            f.write(f"{inp.hex()} {kind} {out.hex()}\n")


if __name__ == "__main__":
    write_dispatch()
    write_codec()
