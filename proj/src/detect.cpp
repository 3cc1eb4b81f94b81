#include "correg/detect.hpp"

#include <algorithm>
#include <cmath>

#include "correg/errors.hpp"
#include "correg/regularity.hpp"

namespace correg {

namespace {

struct Member {
    std::int64_t form_id = 0;
    std::size_t doculect_idx = 0;
};

std::vector<Member> members_of(const Wordlist& wl, std::int64_t cogid) {
    std::vector<Member> members;
    for (const WordForm& form : wl.forms) {
        if (form.cogid != cogid) continue;
        members.push_back(Member{form.id, *wl.doculect_index(form.doculect)});
    }
    std::stable_sort(members.begin(), members.end(),
                     [](const Member& a, const Member& b) {
                         return a.doculect_idx < b.doculect_idx;
                     });
    return members;
}

double mean_log_recurrence(std::span<const Site> sites, const PatternCollection& pc) {
    double sum = 0.0;
    for (const Site& site : sites) {
        sum += std::log(static_cast<double>(site_recurrence(site, pc)));
    }
    return sum / static_cast<double>(sites.size());
}

void finish_result(DetectionResult& result, std::size_t n_members) {
    result.best.reset();
    result.best_gain = 0.0;
    if (n_members < 3) return;
    for (const auto& [form_id, gain] : result.per_word) {
        if (gain > result.best_gain) {
            result.best = form_id;
            result.best_gain = gain;
        }
    }
}

}  // namespace

std::vector<Site> mask_word(std::span<const Site> set_sites, std::size_t doculect_idx) {
    bool member = false;
    for (const Site& site : set_sites) {
        if (doculect_idx < site.values.size() && site.values[doculect_idx].concrete()) {
            member = true;
            break;
        }
    }
    if (!member) throw UnknownMember("doculect holds no value in this cognate set");

    std::vector<Site> masked;
    for (const Site& site : set_sites) {
        Site next = site;
        if (next.values[doculect_idx].concrete()) {
            next.values[doculect_idx] = CellValue::missing();
            --next.n_concrete;
        }
        if (next.n_concrete >= 2) masked.push_back(std::move(next));
    }
    return masked;
}

DetectionResult loo_gains(const Wordlist& wl, std::int64_t cogid,
                          std::span<const Site> set_sites, const PatternCollection& pc) {
    const std::vector<Member> members = members_of(wl, cogid);
    if (members.size() < 2) {
        throw TooSmall("cognate set " + std::to_string(cogid) + " has fewer than 2 members");
    }

    DetectionResult result;
    result.cogid = cogid;
    result.baseline = mean_log_recurrence(set_sites, pc);
    for (const Member& member : members) {
        const std::vector<Site> masked = mask_word(set_sites, member.doculect_idx);
        const double gain =
            masked.empty() ? 0.0 : mean_log_recurrence(masked, pc) - result.baseline;
        result.per_word.emplace_back(member.form_id, gain);
    }
    std::stable_sort(result.per_word.begin(), result.per_word.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    finish_result(result, members.size());
    return result;
}

namespace {

// Exhaustive variant: re-infers the whole collection for every masking.
DetectionResult loo_gains_reinferred(const Wordlist& wl, std::int64_t cogid,
                                     std::span<const Site> all_sites,
                                     const PatternCollection& pc) {
    const std::vector<Member> members = members_of(wl, cogid);
    if (members.size() < 2) {
        throw TooSmall("cognate set " + std::to_string(cogid) + " has fewer than 2 members");
    }

    std::vector<const Site*> set_sites;
    for (const Site& site : all_sites) {
        if (site.id.cogid == cogid) set_sites.push_back(&site);
    }

    DetectionResult result;
    result.cogid = cogid;
    {
        std::vector<Site> own;
        for (const Site* s : set_sites) own.push_back(*s);
        result.baseline = mean_log_recurrence(own, pc);
    }

    for (const Member& member : members) {
        std::vector<Site> modified;
        std::vector<Site> masked_own;
        modified.reserve(all_sites.size());
        for (const Site& site : all_sites) {
            if (site.id.cogid != cogid) {
                modified.push_back(site);
                continue;
            }
            Site next = site;
            if (next.values[member.doculect_idx].concrete()) {
                next.values[member.doculect_idx] = CellValue::missing();
                --next.n_concrete;
            }
            if (next.n_concrete >= 2) {
                masked_own.push_back(next);
                modified.push_back(std::move(next));
            }
        }
        double gain = 0.0;
        if (!masked_own.empty()) {
            const PatternCollection refreshed = infer_patterns(modified);
            gain = mean_log_recurrence(masked_own, refreshed) - result.baseline;
        }
        result.per_word.emplace_back(member.form_id, gain);
    }
    std::stable_sort(result.per_word.begin(), result.per_word.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    finish_result(result, members.size());
    return result;
}

}  // namespace

std::vector<DetectionResult> detect_irregular(const Wordlist& wl,
                                              std::span<const Site> all_sites,
                                              const PatternCollection& pc,
                                              const DetectOptions& options) {
    std::vector<DetectionResult> results;
    for (const auto& [cogid, span] : sites_by_cogset(all_sites)) {
        std::vector<std::size_t> recurrences;
        recurrences.reserve(span.size());
        for (const Site& site : span) recurrences.push_back(site_recurrence(site, pc));
        if (!(cogset_score(recurrences) < options.score_threshold)) continue;
        results.push_back(options.reinfer
                              ? loo_gains_reinferred(wl, cogid, all_sites, pc)
                              : loo_gains(wl, cogid, span, pc));
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const DetectionResult& a, const DetectionResult& b) {
                         if (a.baseline != b.baseline) return a.baseline < b.baseline;
                         return a.cogid < b.cogid;
                     });
    return results;
}

}  // namespace correg
