#!/usr/bin/env python3
"""Regenerates src/unicode_tables.inc from Python's unicodedata.

The tokenizer needs three classifications that must not depend on the
host locale: general-category P* (punctuation), whitespace, and a
codepoint-to-lowercase map. Run from the repository root:

    python3 scripts/generate_unicode_tables.py > src/unicode_tables.inc
"""

import sys
import unicodedata


def category_ranges(pred):
    ranges = []
    start = prev = None
    for cp in range(0x110000):
        if pred(cp):
            if start is None:
                start = cp
            prev = cp
        elif start is not None:
            ranges.append((start, prev))
            start = None
    if start is not None:
        ranges.append((start, prev))
    return ranges


def main():
    punct = category_ranges(
        lambda cp: unicodedata.category(chr(cp)).startswith("P"))

    # Separator categories plus the ASCII/Latin-1 control whitespace.
    extra_space = {0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x85}
    space = category_ranges(
        lambda cp: cp in extra_space
        or unicodedata.category(chr(cp)) in ("Zs", "Zl", "Zp"))

    lower = []
    for cp in range(0x110000):
        low = chr(cp).lower()
        if low == chr(cp):
            continue
        if len(low) == 1:
            lower.append((cp, ord(low)))
        elif cp == 0x130:
            # LATIN CAPITAL LETTER I WITH DOT ABOVE expands to "i" plus a
            # combining dot; map it to plain "i" (locale-insensitive
            # approximation). Other multi-codepoint expansions are left as-is.
            lower.append((cp, ord("i")))

    out = sys.stdout
    out.write("// Generated by scripts/generate_unicode_tables.py "
              "(Python %d.%d, Unicode %s).\n"
              % (sys.version_info[0], sys.version_info[1],
                 unicodedata.unidata_version))
    out.write("// Do not edit by hand.\n\n")

    def emit_ranges(name, ranges):
        out.write("inline constexpr CodepointRange %s[] = {\n" % name)
        for i in range(0, len(ranges), 4):
            row = ", ".join("{0x%X, 0x%X}" % r for r in ranges[i:i + 4])
            out.write("    %s,\n" % row)
        out.write("};\n\n")

    emit_ranges("kPunctuationRanges", punct)
    emit_ranges("kWhitespaceRanges", space)

    out.write("inline constexpr CaseMapping kLowercaseMap[] = {\n")
    for i in range(0, len(lower), 4):
        row = ", ".join("{0x%X, 0x%X}" % m for m in lower[i:i + 4])
        out.write("    %s,\n" % row)
    out.write("};\n")


if __name__ == "__main__":
    main()
