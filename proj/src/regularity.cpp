#include "correg/regularity.hpp"

#include <cmath>

#include "correg/errors.hpp"

namespace correg {

double cogset_score(std::span<const std::size_t> recurrences) {
    if (recurrences.empty()) throw EmptyCognateSet("no site recurrences");
    double log_sum = 0.0;
    for (std::size_t r : recurrences) {
        if (r < 1) throw InconsistentReport("site recurrence below 1");
        log_sum += std::log(static_cast<double>(r));
    }
    return std::exp(log_sum / static_cast<double>(recurrences.size()));
}

double dataset_score(std::span<const std::size_t> all_recurrences, std::size_t total_sites) {
    if (all_recurrences.size() != total_sites || total_sites == 0) {
        throw InconsistentReport("recurrence count does not match the total number of sites");
    }
    double log_sum = 0.0;
    for (std::size_t r : all_recurrences) {
        if (r < 1 || r > total_sites) {
            throw InconsistentReport("site recurrence outside [1, total sites]");
        }
        log_sum += std::log(static_cast<double>(r) / static_cast<double>(total_sites));
    }
    return std::exp(log_sum / static_cast<double>(total_sites));
}

RegularityReport report(std::span<const Site> sites, const PatternCollection& pc) {
    RegularityReport rep;
    rep.total_sites = sites.size();

    std::vector<std::size_t> all;
    all.reserve(sites.size());
    for (const Site& site : sites) {
        const std::size_t r = site_recurrence(site, pc);
        all.push_back(r);
        rep.per_site.push_back(SiteRecurrenceRow{
            site.id, r,
            std::log(static_cast<double>(r) / static_cast<double>(sites.size()))});
    }

    for (const auto& [cogid, span] : sites_by_cogset(sites)) {
        CogsetRegularity entry;
        entry.cogid = cogid;
        for (const Site& site : span) {
            entry.recurrences.push_back(site_recurrence(site, pc));
        }
        entry.score = cogset_score(entry.recurrences);
        rep.per_cogset.push_back(std::move(entry));
    }

    rep.dataset_score = dataset_score(all, sites.size());
    return rep;
}

}  // namespace correg
