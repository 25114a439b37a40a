#!/usr/bin/env python3
"""Generate include/polyocr/unicode_data.hpp plus normalization test fixtures.

The library only needs exact Unicode data for the scripts that occur in the
target documents: Latin, polytonic Greek, combining marks and general
punctuation. Everything outside the scanned blocks passes through the
normalizer unchanged.

Usage: python3 scripts/gen_unicode_tables.py [repo-root]
"""

import itertools
import os
import sys
import unicodedata

BLOCKS = [
    (0x0000, 0x024F),  # Basic Latin .. Latin Extended-B
    (0x0300, 0x036F),  # Combining Diacritical Marks
    (0x0370, 0x03FF),  # Greek and Coptic
    (0x1E00, 0x1EFF),  # Latin Extended Additional
    (0x1F00, 0x1FFF),  # Greek Extended
    (0x2000, 0x206F),  # General Punctuation
    (0x2E00, 0x2E7F),  # Supplemental Punctuation
]
GREEK_BLOCKS = [(0x0370, 0x03FF), (0x1F00, 0x1FFF)]
LATIN_BLOCKS = [(0x0000, 0x024F), (0x1E00, 0x1EFF)]

# Marks that occur in canonical decompositions of Greek-block letters.
GREEK_MARKS = {0x0300, 0x0301, 0x0304, 0x0306, 0x0308, 0x0313, 0x0314, 0x0342, 0x0345}


def in_blocks(cp, blocks):
    return any(lo <= cp <= hi for lo, hi in blocks)


def scanned():
    for lo, hi in BLOCKS:
        for cp in range(lo, hi + 1):
            yield cp


def assigned(cp):
    return unicodedata.category(chr(cp)) != "Cn"


def is_letter(cp):
    return unicodedata.category(chr(cp)).startswith("L")


def ranges_of(cps):
    out = []
    for cp in sorted(cps):
        if out and cp == out[-1][1] + 1:
            out[-1][1] = cp
        else:
            out.append([cp, cp])
    return out


def canonical_decomp(cp):
    d = unicodedata.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    parts = [int(p, 16) for p in d.split()]
    assert 1 <= len(parts) <= 2, hex(cp)
    return parts


def main():
    root = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..")

    greek_letters = [cp for b in GREEK_BLOCKS for cp in range(b[0], b[1] + 1)
                     if assigned(cp) and is_letter(cp)]
    latin_letters = [cp for b in LATIN_BLOCKS for cp in range(b[0], b[1] + 1)
                     if assigned(cp) and is_letter(cp)]
    punct = [cp for cp in scanned()
             if assigned(cp) and unicodedata.category(chr(cp)).startswith("P")]

    decomps = []
    for cp in scanned():
        if not assigned(cp):
            continue
        d = canonical_decomp(cp)
        if d:
            decomps.append((cp, d[0], d[1] if len(d) == 2 else 0))

    compose = []
    for cp, a, b in decomps:
        if b == 0 or unicodedata.combining(chr(a)) != 0:
            continue
        # Pairs subject to composition exclusion round-trip to the decomposed
        # form; only keep pairs the NFC algorithm actually composes.
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            compose.append((a, b, cp))
    compose.sort()

    ccc = [(cp, unicodedata.combining(chr(cp))) for cp in scanned()
           if assigned(cp) and unicodedata.combining(chr(cp)) != 0]

    lower = []
    for cp in scanned():
        if not assigned(cp) or not is_letter(cp):
            continue
        lo = chr(cp).lower()
        if len(lo) == 1 and ord(lo) != cp:
            lower.append((cp, ord(lo)))

    # Sanity: every mark used by Greek-block letter decompositions is known.
    for cp in greek_letters:
        nfd = unicodedata.normalize("NFD", chr(cp))
        for c in nfd[1:]:
            assert ord(c) in GREEK_MARKS, f"unexpected mark {ord(c):04X} in {cp:04X}"

    hpp = os.path.join(root, "include", "polyocr", "unicode_data.hpp")
    os.makedirs(os.path.dirname(hpp), exist_ok=True)
    with open(hpp, "w", encoding="utf-8") as f:
        w = f.write
        w("// Copyright the polyocr contributors. Licensed under the Apache License 2.0.\n")
        w("// See LICENSE in the project root.\n//\n")
        w(f"// Generated by scripts/gen_unicode_tables.py from UCD {unicodedata.unidata_version}.\n")
        w("// Do not edit by hand; rerun the generator instead.\n")
        w("#pragma once\n\n#include <cstdint>\n\nnamespace polyocr::unidata {\n\n")
        w("struct Range { char32_t lo; char32_t hi; };\n")
        w("struct Decomp { char32_t cp; char32_t a; char32_t b; };  // b == 0: singleton\n")
        w("struct ComposePair { char32_t a; char32_t b; char32_t composed; };\n")
        w("struct CombiningClass { char32_t cp; std::uint8_t ccc; };\n")
        w("struct CaseMap { char32_t cp; char32_t lower; };\n\n")

        def emit_ranges(name, cps):
            rs = ranges_of(cps)
            w(f"inline constexpr Range {name}[] = {{\n")
            for i in range(0, len(rs), 6):
                row = ", ".join(f"{{0x{lo:04X}, 0x{hi:04X}}}" for lo, hi in rs[i:i + 6])
                w(f"    {row},\n")
            w("};\n\n")

        emit_ranges("kGreekLetterRanges", greek_letters)
        emit_ranges("kLatinLetterRanges", latin_letters)
        emit_ranges("kPunctuationRanges", punct)

        w("// One-level canonical decompositions, sorted by codepoint.\n")
        w("inline constexpr Decomp kCanonicalDecomp[] = {\n")
        for i in range(0, len(decomps), 4):
            row = ", ".join(f"{{0x{cp:04X}, 0x{a:04X}, 0x{b:04X}}}" for cp, a, b in decomps[i:i + 4])
            w(f"    {row},\n")
        w("};\n\n")

        w("// Primary composites, sorted by (a, b); exclusions already filtered out.\n")
        w("inline constexpr ComposePair kComposePairs[] = {\n")
        for i in range(0, len(compose), 4):
            row = ", ".join(f"{{0x{a:04X}, 0x{b:04X}, 0x{c:04X}}}" for a, b, c in compose[i:i + 4])
            w(f"    {row},\n")
        w("};\n\n")

        w("inline constexpr CombiningClass kCombiningClasses[] = {\n")
        for i in range(0, len(ccc), 8):
            row = ", ".join(f"{{0x{cp:04X}, {k}}}" for cp, k in ccc[i:i + 8])
            w(f"    {row},\n")
        w("};\n\n")

        w("inline constexpr CaseMap kToLower[] = {\n")
        for i in range(0, len(lower), 6):
            row = ", ".join(f"{{0x{cp:04X}, 0x{lo:04X}}}" for cp, lo in lower[i:i + 6])
            w(f"    {row},\n")
        w("};\n\n")
        w("}  // namespace polyocr::unidata\n")

    # --- fixtures ------------------------------------------------------------
    fixdir = os.path.join(root, "tests", "data")
    os.makedirs(fixdir, exist_ok=True)

    def hexes(s):
        return " ".join(f"{ord(c):04X}" for c in s)

    sweep = os.path.join(fixdir, "nfc_greek_sweep.tsv")
    seen = set()
    with open(sweep, "w", encoding="utf-8") as f:
        f.write("# input-codepoints<TAB>nfc-codepoints (hex), generated via Python unicodedata\n")

        def case(s):
            if s in seen:
                return
            seen.add(s)
            f.write(f"{hexes(s)}\t{hexes(unicodedata.normalize('NFC', s))}\n")

        for b in GREEK_BLOCKS:
            for cp in range(b[0], b[1] + 1):
                if not assigned(cp):
                    continue
                case(chr(cp))
                case(unicodedata.normalize("NFD", chr(cp)))
        marks = [0x0313, 0x0314, 0x0300, 0x0301, 0x0342, 0x0308, 0x0345]
        bases = "αεηιουωρΑΕΗΙΟΥΩΡ"
        for base in bases:
            for n in (1, 2, 3):
                for perm in itertools.permutations(marks, n):
                    case(base + "".join(chr(m) for m in perm))

    strip = os.path.join(fixdir, "greek_strip_sweep.tsv")
    with open(strip, "w", encoding="utf-8") as f:
        f.write("# greek-letter<TAB>bare-base (hex), generated via Python unicodedata\n")
        for cp in greek_letters:
            nfd = unicodedata.normalize("NFD", chr(cp))
            base = "".join(c for c in nfd if unicodedata.combining(c) == 0)
            assert len(base) == 1
            f.write(f"{cp:04X}\t{ord(base):04X}\n")

    print(f"wrote {hpp}")
    print(f"  greek letter ranges: {len(ranges_of(greek_letters))}, latin: {len(ranges_of(latin_letters))}")
    print(f"  decomps: {len(decomps)}, compose pairs: {len(compose)}, ccc: {len(ccc)}, lower: {len(lower)}")
    print(f"wrote {sweep} ({len(seen)} cases) and {strip}")


if __name__ == "__main__":
    main()
