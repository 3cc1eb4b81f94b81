#pragma once

#include <span>
#include <vector>

#include "correg/wordlist.hpp"

namespace correg {

// Result of a global pairwise alignment; both rows have equal length and
// removing gaps reproduces the inputs.
struct PairwiseAlignment {
    std::vector<CellValue> x;
    std::vector<CellValue> y;
    int score = 0;
};

// Cell score used by the aligner: identical token +2, same class +1,
// different class -2; a gap costs -1 (gap against gap is never produced).
int cell_score(const Segment& a, const Segment& b);
inline constexpr int kGapScore = -1;

// Global alignment maximizing the summed cell scores. Ties are broken by
// preferring a match/mismatch over a gap in y over a gap in x during
// traceback, which makes the result deterministic.
PairwiseAlignment pairwise_align(std::span<const Segment> x, std::span<const Segment> y);

// Progressive multiple alignment of one cognate set. The guide order sorts
// members by average pairwise score against the others (descending, ties by
// doculect order); each next sequence is aligned against the majority
// consensus of the growing profile. Rows come back in member order.
// Pre: members.size() >= 2.
Alignment progressive_align(const Wordlist& wl, const std::vector<const WordForm*>& members);

// Copy of the wordlist with an Alignment for every cognate group of size
// >= 2; provided alignments take precedence, missing ones are computed.
Wordlist ensure_alignments(const Wordlist& wl);

}  // namespace correg
