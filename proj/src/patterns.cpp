#include "correg/patterns.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>

#include "correg/errors.hpp"

namespace correg {

std::vector<Site> extract_sites(const Wordlist& wl, std::vector<std::string>* warnings) {
    std::unordered_map<std::int64_t, const WordForm*> by_id;
    for (const WordForm& form : wl.forms) by_id.emplace(form.id, &form);

    std::vector<Site> sites;
    for (const CognateSet& set : cognate_sets(wl)) {
        const auto it = wl.alignments.find(set.cogid);
        if (it == wl.alignments.end()) {
            throw Error("cognate set " + std::to_string(set.cogid) +
                        " has no alignment; run ensure_alignments first");
        }
        const Alignment& alig = it->second;

        // First row per doculect; duplicates contribute nothing further.
        std::vector<const std::vector<CellValue>*> row_of(wl.doculects.size(), nullptr);
        for (const auto& [form_id, cells] : alig.rows) {
            const WordForm* form = by_id.at(form_id);
            const std::size_t d = *wl.doculect_index(form->doculect);
            if (row_of[d] != nullptr) {
                if (warnings) {
                    warnings->push_back("cognate set " + std::to_string(set.cogid) +
                                        ": doculect " + form->doculect +
                                        " has several rows; using the first");
                }
                continue;
            }
            row_of[d] = &cells;
        }

        for (std::size_t c = 0; c < alig.width; ++c) {
            Site site;
            site.id = SiteId{set.cogid, static_cast<int>(c)};
            site.values.reserve(wl.doculects.size());
            for (std::size_t d = 0; d < wl.doculects.size(); ++d) {
                if (row_of[d] == nullptr) {
                    site.values.push_back(CellValue::missing());
                } else {
                    site.values.push_back((*row_of[d])[c]);
                    ++site.n_concrete;
                }
            }
            sites.push_back(std::move(site));
        }
    }
    return sites;
}

bool compatible(std::span<const CellValue> a, std::span<const CellValue> b) {
    assert(a.size() == b.size());
    for (std::size_t d = 0; d < a.size(); ++d) {
        if (!a[d].concrete() || !b[d].concrete()) continue;
        if (!(a[d] == b[d])) return false;
    }
    return true;
}

namespace {

// Adds the site's concrete values to the pattern's unresolved slots.
// Pre: compatible(site, pattern).
void fuse_into(Pattern& pattern, const Site& site) {
    for (std::size_t d = 0; d < pattern.values.size(); ++d) {
        if (pattern.values[d].is_missing() && site.values[d].concrete()) {
            pattern.values[d] = site.values[d];
        }
    }
}

// Rebuilds a pattern's value vector from its member sites.
void recompute_values(Pattern& pattern,
                      const std::map<SiteId, const Site*>& site_index) {
    for (auto& value : pattern.values) value = CellValue::missing();
    for (const SiteId& sid : pattern.site_ids) {
        const Site& site = *site_index.at(sid);
        for (std::size_t d = 0; d < pattern.values.size(); ++d) {
            if (!site.values[d].concrete()) continue;
            if (pattern.values[d].is_missing()) {
                pattern.values[d] = site.values[d];
            } else if (!(pattern.values[d] == site.values[d])) {
                throw std::logic_error("pattern fusion conflict");
            }
        }
    }
}

}  // namespace

PatternCollection infer_patterns(std::span<const Site> sites) {
    PatternCollection pc;
    pc.total_sites = sites.size();
    if (sites.empty()) return pc;

    std::map<SiteId, const Site*> site_index;
    for (const Site& s : sites) site_index.emplace(s.id, &s);

    // Most-concrete sites first; ties by site id.
    std::vector<std::size_t> order(sites.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sites[a].n_concrete != sites[b].n_concrete) {
            return sites[a].n_concrete > sites[b].n_concrete;
        }
        return sites[a].id < sites[b].id;
    });

    // Greedy assignment.
    for (std::size_t i : order) {
        const Site& site = sites[i];
        bool placed = false;
        for (std::size_t p = 0; p < pc.patterns.size(); ++p) {
            if (compatible(site, pc.patterns[p])) {
                fuse_into(pc.patterns[p], site);
                pc.patterns[p].site_ids.push_back(site.id);
                pc.assignment[site.id] = p;
                placed = true;
                break;
            }
        }
        if (!placed) {
            Pattern pattern;
            pattern.values = site.values;
            pattern.site_ids.push_back(site.id);
            pc.assignment[site.id] = pc.patterns.size();
            pc.patterns.push_back(std::move(pattern));
        }
    }

    // Refinement: move sites to the currently largest compatible pattern.
    // Sizes are tracked live; a site moving in fuses its values immediately,
    // while slots freed by departures are only reclaimed by the recompute
    // after the pass. That keeps every pattern at least as concrete as the
    // fusion of its members, so the cover stays sound mid-pass.
    for (int pass = 0; pass < 10; ++pass) {
        bool moved = false;
        for (std::size_t i : order) {
            const Site& site = sites[i];
            const std::size_t current = pc.assignment[site.id];
            std::size_t best = current;
            std::size_t best_size = pc.patterns[current].recurrence();
            for (std::size_t p = 0; p < pc.patterns.size(); ++p) {
                if (p == current || pc.patterns[p].recurrence() <= best_size) continue;
                if (compatible(site, pc.patterns[p])) {
                    best = p;
                    best_size = pc.patterns[p].recurrence();
                }
            }
            if (best != current) {
                auto& ids = pc.patterns[current].site_ids;
                ids.erase(std::find(ids.begin(), ids.end(), site.id));
                fuse_into(pc.patterns[best], site);
                pc.patterns[best].site_ids.push_back(site.id);
                pc.assignment[site.id] = best;
                moved = true;
            }
        }

        // Drop emptied patterns and rebuild value vectors.
        std::vector<Pattern> kept;
        std::vector<std::size_t> remap(pc.patterns.size());
        for (std::size_t p = 0; p < pc.patterns.size(); ++p) {
            if (pc.patterns[p].site_ids.empty()) continue;
            remap[p] = kept.size();
            kept.push_back(std::move(pc.patterns[p]));
        }
        pc.patterns = std::move(kept);
        for (auto& [sid, p] : pc.assignment) p = remap[p];
        for (Pattern& pattern : pc.patterns) recompute_values(pattern, site_index);

        if (!moved) break;
    }

    pc.by_size.resize(pc.patterns.size());
    for (std::size_t p = 0; p < pc.by_size.size(); ++p) pc.by_size[p] = p;
    std::stable_sort(pc.by_size.begin(), pc.by_size.end(), [&](std::size_t a, std::size_t b) {
        return pc.patterns[a].recurrence() > pc.patterns[b].recurrence();
    });
    return pc;
}

std::size_t site_recurrence(const Site& site, const PatternCollection& pc) {
    for (std::size_t p : pc.by_size) {
        if (compatible(site, pc.patterns[p])) return pc.patterns[p].recurrence();
    }
    return 1;
}

CellValue predict_reflex(const Pattern& pattern, const std::vector<std::string>& doculects,
                         std::string_view doculect) {
    for (std::size_t d = 0; d < doculects.size(); ++d) {
        if (doculects[d] == doculect) return pattern.values[d];
    }
    throw UnknownDoculect(std::string(doculect));
}

std::map<std::int64_t, std::span<const Site>> sites_by_cogset(std::span<const Site> sites) {
    std::map<std::int64_t, std::span<const Site>> out;
    if (sites.empty()) return out;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= sites.size(); ++i) {
        if (i == sites.size() || sites[i].id.cogid != sites[start].id.cogid) {
            out.emplace(sites[start].id.cogid, sites.subspan(start, i - start));
            start = i;
        }
    }
    return out;
}

}  // namespace correg
