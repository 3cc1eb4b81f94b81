#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "correg/wordlist.hpp"

namespace correg {

// Generator settings for fully regular wordlists: proto-forms over a small
// phoneme inventory, evolved into daughters by regular mergers.
struct SimulationConfig {
    int n_concepts = 200;
    int n_consonants = 10;
    int n_vowels = 4;
    int n_daughters = 10;
    int max_mergers = 2;
    std::uint64_t seed = 0;

    static constexpr std::string_view syllable_template = "CVCV";

    // Throws Error when the inventory cannot support mergers (needs at least
    // two phones per class) or a count is out of range.
    void validate() const;
    std::vector<Segment> consonant_inventory() const;
    std::vector<Segment> vowel_inventory() const;
};

// A regular sound change collapsing two phones: source is rewritten to target.
struct Merger {
    Segment source;
    Segment target;

    bool operator==(const Merger&) const = default;
};

// Which forms were tampered with, for scoring a detection run.
struct GroundTruth {
    std::map<std::int64_t, std::int64_t> replaced;  // cogid -> injected form id
    std::set<std::pair<std::int64_t, int>> noise_positions;  // (form id, segment index)
};

// One CVCV form per concept, drawn uniformly from the inventory; cogid equals
// the concept index. Single doculect "proto".
Wordlist generate_proto(const SimulationConfig& cfg);

// 0..max_mergers mergers for one daughter: each picks two distinct phones of
// one class, the survivor chosen uniformly among the two. The stream is
// derived from (cfg.seed, daughter index), so daughters are independent.
std::vector<Merger> sample_mergers(const SimulationConfig& cfg, int daughter_index);

// Applies each daughter's mergers position-wise to every proto form (in draw
// order) and assembles the daughters into one wordlist with column-identical
// alignments. Daughters are named L01, L02, ...
Wordlist evolve(const Wordlist& proto, const std::vector<std::vector<Merger>>& mergers);

// generate_proto + sample_mergers + evolve under cfg.seed.
Wordlist simulate_regular(const SimulationConfig& cfg);

// Replaces floor(rate * total segments) segment slots, drawn uniformly
// without replacement, each by a different same-class phone from its
// doculect's (pre-noise) inventory. Alignment shape is preserved. Returns the
// positions actually changed.
std::pair<Wordlist, std::set<std::pair<std::int64_t, int>>> inject_noise(
    const Wordlist& wl, double rate, std::uint64_t seed);

// Replaces one uniformly chosen member in floor(fraction * eligible) cognate
// sets (eligible: size >= 3; at least one set when fraction > 0 and any are
// eligible): every consonant/vowel segment becomes a different same-class
// phone from the doculect's pre-injection inventory, keeping the alignment
// row shape. Infeasible sets are skipped and resampled.
std::pair<Wordlist, std::map<std::int64_t, std::int64_t>> inject_replacements(
    const Wordlist& wl, double fraction, std::uint64_t seed,
    std::vector<std::string>* warnings = nullptr);

}  // namespace correg
