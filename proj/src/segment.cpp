#include "correg/segment.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "correg/errors.hpp"

namespace correg {

namespace {

// First Unicode code point of a UTF-8 string; malformed bytes fall back to the
// raw first byte so classification stays total.
char32_t first_codepoint(std::string_view s) {
    const auto b0 = static_cast<unsigned char>(s[0]);
    if (b0 < 0x80) return b0;
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return b0;
    }
    if (s.size() < len) return b0;
    for (std::size_t i = 1; i < len; ++i) {
        const auto bi = static_cast<unsigned char>(s[i]);
        if ((bi & 0xc0) != 0x80) return b0;
        cp = (cp << 6) | (bi & 0x3f);
    }
    return cp;
}

const std::unordered_set<char32_t>& vowel_codepoints() {
    static const std::unordered_set<char32_t> set = [] {
        std::unordered_set<char32_t> v;
        for (char c : std::string_view("aeiouyAEIOUY")) v.insert(static_cast<char32_t>(c));
        // Latin-1 vowel letters with diacritics (Ø excluded: reserved symbol).
        static constexpr std::array<char32_t, 12> latin1_upper = {
            0xc0, 0xc1, 0xc2, 0xc3, 0xc4, 0xc5, 0xc6, 0xc8, 0xc9, 0xca, 0xcb, 0xcc};
        for (char32_t c : latin1_upper) v.insert(c);
        for (char32_t c = 0xcd; c <= 0xcf; ++c) v.insert(c);
        for (char32_t c = 0xd2; c <= 0xd6; ++c) v.insert(c);
        for (char32_t c = 0xd9; c <= 0xdd; ++c) v.insert(c);
        for (char32_t c = 0xe0; c <= 0xe6; ++c) v.insert(c);
        for (char32_t c = 0xe8; c <= 0xef; ++c) v.insert(c);
        for (char32_t c = 0xf2; c <= 0xf6; ++c) v.insert(c);
        v.insert(0xf8);  // ø
        for (char32_t c = 0xf9; c <= 0xfd; ++c) v.insert(c);
        v.insert(0xff);
        // Latin Extended-A vowels (macron, breve, ogonek, ... variants).
        static constexpr std::array<char32_t, 26> extended = {
            0x100, 0x101, 0x102, 0x103, 0x104, 0x105, 0x112, 0x113, 0x114,
            0x115, 0x116, 0x117, 0x118, 0x119, 0x11a, 0x11b, 0x128, 0x129,
            0x12a, 0x12b, 0x12c, 0x12d, 0x12e, 0x12f, 0x130, 0x131};
        for (char32_t c : extended) v.insert(c);
        static constexpr std::array<char32_t, 18> extended2 = {
            0x14c, 0x14d, 0x14e, 0x14f, 0x150, 0x151, 0x152, 0x153, 0x168,
            0x169, 0x16a, 0x16b, 0x16c, 0x16d, 0x16e, 0x16f, 0x170, 0x171};
        for (char32_t c : extended2) v.insert(c);
        v.insert(0x172);  // Ų
        v.insert(0x173);  // ų
        v.insert(0x176);  // Ŷ
        v.insert(0x177);  // ŷ
        // IPA vowel letters.
        static constexpr std::array<char32_t, 24> ipa = {
            0x250, 0x251, 0x252, 0x258, 0x259, 0x25a, 0x25b, 0x25c,
            0x25d, 0x25e, 0x264, 0x268, 0x26a, 0x26f, 0x275, 0x276,
            0x289, 0x28a, 0x28c, 0x28f, 0x27f, 0x285, 0x1d00, 0x1d07};
        for (char32_t c : ipa) v.insert(c);
        return v;
    }();
    return set;
}

bool is_tone_codepoint(char32_t c) {
    if (c >= U'0' && c <= U'9') return true;
    if (c >= 0x2e5 && c <= 0x2e9) return true;  // tone letters ˥..˩
    if (c == 0xb9 || c == 0xb2 || c == 0xb3) return true;  // ¹ ² ³
    if (c == 0x2070 || (c >= 0x2074 && c <= 0x2079)) return true;  // ⁰ ⁴..⁹
    return false;
}

bool is_marker_codepoint(char32_t c) { return c == U'+' || c == U'_' || c == U'#'; }

}  // namespace

SegmentClass classify(std::string_view token) {
    if (token.empty()) throw InvalidSegment("empty segment token");
    if (token == kGapSymbol) throw InvalidSegment("gap symbol is not a segment");
    if (token == kMissingSymbol) throw InvalidSegment("missing symbol is not a segment");
    const char32_t base = first_codepoint(token);
    if (vowel_codepoints().contains(base)) return SegmentClass::Vowel;
    if (is_tone_codepoint(base)) return SegmentClass::Tone;
    if (is_marker_codepoint(base)) return SegmentClass::Marker;
    return SegmentClass::Consonant;
}

bool valid_token(std::string_view token) {
    if (token.empty() || token == kGapSymbol || token == kMissingSymbol) return false;
    for (char c : token) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Segment make_segment(std::string_view token) {
    if (!valid_token(token)) {
        throw InvalidSegment("invalid segment token: '" + std::string(token) + "'");
    }
    return Segment{std::string(token), classify(token)};
}

}  // namespace correg
