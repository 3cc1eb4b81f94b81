#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "correg/cell.hpp"
#include "correg/segment.hpp"

namespace correg {

// One lexical entry of a comparative wordlist.
struct WordForm {
    std::int64_t id = 0;
    std::string doculect;
    std::string gloss;
    std::vector<Segment> segments;
    std::int64_t cogid = 0;

    bool operator==(const WordForm&) const = default;
};

// Matrix view of one cognate set: rows are word forms, columns are sites.
// Invariants: all rows have length width >= 1; removing gaps from a row
// reproduces that word form's segments; no column is all gaps.
struct Alignment {
    std::int64_t cogid = 0;
    std::vector<std::pair<std::int64_t, std::vector<CellValue>>> rows;  // (form id, cells)
    std::size_t width = 0;

    bool operator==(const Alignment&) const = default;
};

struct Wordlist {
    std::vector<std::string> doculects;  // ordered set, by first appearance
    std::vector<WordForm> forms;
    std::map<std::int64_t, Alignment> alignments;  // cogid -> alignment, groups of >= 2 only

    bool operator==(const Wordlist&) const = default;

    // Index of a doculect in `doculects`, or nullopt.
    std::optional<std::size_t> doculect_index(std::string_view name) const;
};

struct CognateSet {
    std::int64_t cogid = 0;
    std::vector<const WordForm*> members;  // ordered by doculect order in the wordlist
};

// Per-doculect segment inventory (tone and marker segments excluded).
struct Inventory {
    std::string doculect;
    std::set<Segment> consonants;
    std::set<Segment> vowels;
};

// Parses a UTF-8 tab-separated wordlist. The first line must be a header with
// at least ID, DOCULECT, CONCEPT, TOKENS, COGID (case-insensitive); an
// ALIGNMENT column is optional. TOKENS and ALIGNMENT are single-space
// separated; "-" marks a gap. Rows with COGID <= 0 are kept as non-cognate
// singletons. Non-fatal anomalies (duplicate (doculect, cogid) pairs,
// partially aligned groups) are appended to `warnings` when given.
Wordlist parse_wordlist(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Inverse of parse_wordlist up to field-wise equality of the parsed result.
std::string serialize_wordlist(const Wordlist& wl);

// Cognate groups of size >= 2, ordered by cogid ascending.
std::vector<CognateSet> cognate_sets(const Wordlist& wl);

// Restriction of the wordlist to k doculects drawn uniformly without
// replacement; doculect order, form order and form ids are preserved.
// Provided alignment rows are kept, all-gap columns dropped.
Wordlist subsample(const Wordlist& wl, std::size_t k, std::uint64_t seed);

// Deduplicated attested segments of one doculect, partitioned by class.
Inventory inventory(const Wordlist& wl, std::string_view doculect);

}  // namespace correg
