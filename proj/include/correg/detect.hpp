#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "correg/patterns.hpp"

namespace correg {

// Leave-one-out result for one cognate set. `best` maximizes the gain with
// ties broken by the lowest form id, and is absent when the set has fewer
// than 3 members or no masking improves the score.
struct DetectionResult {
    std::int64_t cogid = 0;
    double baseline = 0.0;  // mean log-recurrence of the set's sites
    std::vector<std::pair<std::int64_t, double>> per_word;  // (form id, gain)
    std::optional<std::int64_t> best;
    double best_gain = 0.0;
};

// Copies of the set's sites with one doculect set to missing. Sites left
// without correspondence evidence (fewer than two concrete values) are
// dropped. Throws UnknownMember when the doculect holds no value in the set.
std::vector<Site> mask_word(std::span<const Site> set_sites, std::size_t doculect_idx);

// Leave-one-out gains for one cognate set: for each member word, the change
// in mean log-recurrence when its reflexes are masked. Masked sites are
// matched against the existing collection without re-inference. Throws
// TooSmall for sets of fewer than 2 members.
DetectionResult loo_gains(const Wordlist& wl, std::int64_t cogid,
                          std::span<const Site> set_sites, const PatternCollection& pc);

struct DetectOptions {
    // Only sets whose score is strictly below the threshold are analyzed.
    double score_threshold = std::numeric_limits<double>::infinity();
    // Re-infer the whole pattern collection per masking instead of matching
    // against the fixed one. Exact but quadratic; meant for small data.
    bool reinfer = false;
};

// Leave-one-out results for every cognate set below the score threshold,
// sorted by baseline ascending (most irregular first).
std::vector<DetectionResult> detect_irregular(const Wordlist& wl,
                                              std::span<const Site> all_sites,
                                              const PatternCollection& pc,
                                              const DetectOptions& options = {});

}  // namespace correg
