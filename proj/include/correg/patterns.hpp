#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "correg/wordlist.hpp"

namespace correg {

// Identifies one alignment column: (cognate set, column index).
struct SiteId {
    std::int64_t cogid = 0;
    int column = 0;

    auto operator<=>(const SiteId&) const = default;
};

// One alignment column as a doculect-indexed vector over the whole wordlist.
// Doculects without a word in the cognate set hold `missing`.
struct Site {
    SiteId id;
    std::vector<CellValue> values;
    int n_concrete = 0;

    bool operator==(const Site&) const = default;
};

// A correspondence pattern: the fused value vector of its assigned sites.
// A slot is missing ("unresolved") iff every assigned site is missing there.
struct Pattern {
    std::vector<CellValue> values;
    std::vector<SiteId> site_ids;

    std::size_t recurrence() const { return site_ids.size(); }
};

struct PatternCollection {
    std::vector<Pattern> patterns;  // creation order
    std::map<SiteId, std::size_t> assignment;
    std::size_t total_sites = 0;
    // Pattern indices sorted by recurrence descending (ties by creation order);
    // lets recurrence lookups stop at the first compatible pattern.
    std::vector<std::size_t> by_size;
};

// One Site per column of every alignment in the wordlist, ordered by
// (cogid, column). A doculect with several rows in one set contributes its
// first row's cell (a warning is recorded when `warnings` is given).
// Every cognate group of size >= 2 must already have an Alignment.
std::vector<Site> extract_sites(const Wordlist& wl,
                                std::vector<std::string>* warnings = nullptr);

// Two value vectors agree on every doculect where both are concrete;
// missing/unresolved slots match anything.
bool compatible(std::span<const CellValue> a, std::span<const CellValue> b);
inline bool compatible(const Site& a, const Site& b) { return compatible(a.values, b.values); }
inline bool compatible(const Site& a, const Pattern& b) { return compatible(a.values, b.values); }
inline bool compatible(const Pattern& a, const Pattern& b) { return compatible(a.values, b.values); }

// Greedy clique cover of the sites. Sites are visited most-concrete first
// (ties by site id); each joins the first compatible pattern in creation
// order, fusing its concrete values into unresolved slots, or opens a new
// one. A refinement pass then moves sites to the currently largest
// compatible pattern when that pattern is strictly larger than their own;
// value vectors are recomputed after each pass and passes repeat until no
// site moves (at most 10 iterations). Deterministic.
PatternCollection infer_patterns(std::span<const Site> sites);

// Size of the largest pattern compatible with the site; 1 when none is
// (possible only for masked or novel sites).
std::size_t site_recurrence(const Site& site, const PatternCollection& pc);

// The pattern's expected value for one doculect; a missing result means the
// slot is unresolved. Throws UnknownDoculect.
CellValue predict_reflex(const Pattern& pattern, const std::vector<std::string>& doculects,
                         std::string_view doculect);

// Sites grouped by cognate set, in (cogid, column) order. Views into `sites`.
std::map<std::int64_t, std::span<const Site>> sites_by_cogset(std::span<const Site> sites);

}  // namespace correg
