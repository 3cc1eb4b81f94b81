#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "correg/patterns.hpp"

namespace correg {

struct CogsetRegularity {
    std::int64_t cogid = 0;
    std::vector<std::size_t> recurrences;  // one per site, in column order
    double score = 0.0;                    // geometric mean of the recurrences
};

struct SiteRecurrenceRow {
    SiteId id;
    std::size_t recurrence = 0;
    double normalized_log = 0.0;  // ln(recurrence / total sites)
};

struct RegularityReport {
    double dataset_score = 0.0;  // in (0, 1]
    std::vector<CogsetRegularity> per_cogset;  // cogid ascending
    std::vector<SiteRecurrenceRow> per_site;   // site order
    std::size_t total_sites = 0;
};

// Geometric mean of the site recurrences: exp(mean(ln r)). The log transform
// keeps one highly recurrent site from hiding several unique ones; [1,1,1,15]
// scores below [2,2,2,2] although the plain means order the other way.
// Throws EmptyCognateSet on empty input.
double cogset_score(std::span<const std::size_t> recurrences);

// Cross-dataset score: exp(mean(ln(r / total))) = geometric mean / total,
// in (0, 1]. Throws InconsistentReport when the lengths disagree or an entry
// is outside [1, total].
double dataset_score(std::span<const std::size_t> all_recurrences, std::size_t total_sites);

// Recurrence of every site against the collection, grouped per cognate set,
// plus the normalized log values used for plotting.
RegularityReport report(std::span<const Site> sites, const PatternCollection& pc);

}  // namespace correg
