#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace correg {

enum class SegmentClass { Consonant, Vowel, Tone, Marker };

// Reserved symbols; never valid segment tokens.
inline constexpr std::string_view kGapSymbol = "-";
inline constexpr std::string_view kMissingSymbol = "Ø";  // Ø

// Coarse sound class of a segment token, decided by its first code point:
// vowel letters (plain and phonetic) are vowels, digits and tone letters are
// tones, morpheme boundaries (+ _ #) are markers, everything else is a
// consonant. Total and deterministic. Throws InvalidSegment for the empty
// string, the gap symbol and the missing symbol.
SegmentClass classify(std::string_view token);

// True for a token that may appear in a TOKENS column: non-empty, free of
// whitespace, and not a reserved symbol.
bool valid_token(std::string_view token);

// One phonetic segment.
struct Segment {
    std::string token;
    SegmentClass klass;

    bool operator==(const Segment& other) const { return token == other.token; }
    auto operator<=>(const Segment& other) const { return token <=> other.token; }
};

// Builds a Segment, classifying the token. Throws InvalidSegment on invalid input.
Segment make_segment(std::string_view token);

}  // namespace correg
