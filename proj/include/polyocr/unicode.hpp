// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
#pragma once

#include <string>
#include <string_view>

#include "polyocr/errors.hpp"

namespace polyocr {

/// Decodes UTF-8 into codepoints. Rejects overlong forms, surrogates and
/// truncated sequences; the error message carries the byte offset.
inline std::u32string utf8_decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    auto fail = [&](std::size_t at) -> char32_t {
        throw InputError("invalid UTF-8 at byte offset " + std::to_string(at));
    };
    while (i < bytes.size()) {
        const std::size_t start = i;
        const unsigned char b0 = static_cast<unsigned char>(bytes[i++]);
        char32_t cp;
        int cont;
        if (b0 < 0x80) {
            cp = b0;
            cont = 0;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            cont = 1;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            cont = 2;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            cont = 3;
        } else {
            cp = fail(start);
            cont = 0;
        }
        for (int k = 0; k < cont; ++k) {
            if (i >= bytes.size() || (static_cast<unsigned char>(bytes[i]) & 0xC0) != 0x80)
                fail(start);
            cp = (cp << 6) | (static_cast<unsigned char>(bytes[i++]) & 0x3F);
        }
        static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
        if (cont > 0 && cp < kMin[cont]) fail(start);
        if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail(start);
        out.push_back(cp);
    }
    return out;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string utf8_encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size() * 2);
    for (char32_t cp : cps) utf8_append(out, cp);
    return out;
}

/// Number of codepoints in a UTF-8 string.
inline std::size_t codepoint_count(std::string_view bytes) {
    return utf8_decode(bytes).size();
}

}  // namespace polyocr
