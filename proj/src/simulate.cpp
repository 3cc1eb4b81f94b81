#include "correg/simulate.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "correg/errors.hpp"
#include "correg/rng.hpp"

namespace correg {

namespace {

constexpr std::array<std::string_view, 20> kConsonantPool = {
    "p", "t", "k", "r", "l", "m", "n", "s", "j", "w",
    "b", "d", "g", "f", "v", "z", "h", "x", "c", "q"};
constexpr std::array<std::string_view, 8> kVowelPool = {"a", "e", "i", "u",
                                                        "o", "y", "ø", "ɛ"};

std::string padded_label(const char* prefix, int index, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, index);
    return std::string(buf);
}

// Uniform draw from `pool` different from `original`. Pre: pool holds another
// same-class phone. The pool must be sorted so draws are reproducible.
Segment draw_different(const std::vector<Segment>& pool, const Segment& original, Rng& rng) {
    std::size_t original_at = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool[i] == original) {
            original_at = i;
            break;
        }
    }
    std::size_t idx = rng.below(pool.size() - (original_at < pool.size() ? 1 : 0));
    if (original_at < pool.size() && idx >= original_at) ++idx;
    return pool[idx];
}

struct DoculectPools {
    std::vector<Segment> consonants;
    std::vector<Segment> vowels;
};

std::vector<DoculectPools> inventory_pools(const Wordlist& wl) {
    std::vector<DoculectPools> pools;
    pools.reserve(wl.doculects.size());
    for (const std::string& doc : wl.doculects) {
        const Inventory inv = inventory(wl, doc);
        DoculectPools p;
        p.consonants.assign(inv.consonants.begin(), inv.consonants.end());
        p.vowels.assign(inv.vowels.begin(), inv.vowels.end());
        pools.push_back(std::move(p));
    }
    return pools;
}

const std::vector<Segment>* pool_for(const DoculectPools& pools, SegmentClass klass) {
    if (klass == SegmentClass::Consonant) return &pools.consonants;
    if (klass == SegmentClass::Vowel) return &pools.vowels;
    return nullptr;  // tones and markers are left untouched
}

// Rewrites the alignment cell behind a form's segment after a replacement.
void sync_alignment_cell(Wordlist& wl, const WordForm& form, int segment_index) {
    const auto it = wl.alignments.find(form.cogid);
    if (it == wl.alignments.end()) return;
    for (auto& [row_id, cells] : it->second.rows) {
        if (row_id != form.id) continue;
        int sound_index = -1;
        for (CellValue& cell : cells) {
            if (!cell.is_sound()) continue;
            if (++sound_index == segment_index) {
                cell = CellValue::sound(form.segments[segment_index]);
                return;
            }
        }
    }
}

}  // namespace

void SimulationConfig::validate() const {
    if (n_concepts < 1 || n_daughters < 1 || max_mergers < 0) {
        throw Error("simulation config: counts must be positive");
    }
    if (n_consonants < 2 || n_consonants > static_cast<int>(kConsonantPool.size())) {
        throw Error("simulation config: n_consonants out of range");
    }
    if (n_vowels < 2 || n_vowels > static_cast<int>(kVowelPool.size())) {
        throw Error("simulation config: n_vowels out of range");
    }
}

std::vector<Segment> SimulationConfig::consonant_inventory() const {
    std::vector<Segment> out;
    for (int i = 0; i < n_consonants; ++i) out.push_back(make_segment(kConsonantPool[i]));
    return out;
}

std::vector<Segment> SimulationConfig::vowel_inventory() const {
    std::vector<Segment> out;
    for (int i = 0; i < n_vowels; ++i) out.push_back(make_segment(kVowelPool[i]));
    return out;
}

Wordlist generate_proto(const SimulationConfig& cfg) {
    cfg.validate();
    const std::vector<Segment> consonants = cfg.consonant_inventory();
    const std::vector<Segment> vowels = cfg.vowel_inventory();
    Rng rng(mix_seed(cfg.seed, hash_str("proto")));

    Wordlist wl;
    wl.doculects.push_back("proto");
    for (int c = 0; c < cfg.n_concepts; ++c) {
        WordForm form;
        form.id = c + 1;
        form.doculect = "proto";
        form.gloss = padded_label("c", c + 1, 3);
        form.cogid = c + 1;
        for (char slot : SimulationConfig::syllable_template) {
            if (slot == 'C') {
                form.segments.push_back(consonants[rng.below(consonants.size())]);
            } else {
                form.segments.push_back(vowels[rng.below(vowels.size())]);
            }
        }
        wl.forms.push_back(std::move(form));
    }
    return wl;
}

std::vector<Merger> sample_mergers(const SimulationConfig& cfg, int daughter_index) {
    cfg.validate();
    Rng rng(mix_seed(cfg.seed, hash_str("mergers"), static_cast<std::uint64_t>(daughter_index)));
    const std::vector<Segment> consonants = cfg.consonant_inventory();
    const std::vector<Segment> vowels = cfg.vowel_inventory();

    const std::size_t k = rng.below(static_cast<std::size_t>(cfg.max_mergers) + 1);
    std::vector<Merger> mergers;
    for (std::size_t m = 0; m < k; ++m) {
        const std::vector<Segment>& pool = rng.coin() ? vowels : consonants;
        const std::size_t first = rng.below(pool.size());
        std::size_t second = rng.below(pool.size() - 1);
        if (second >= first) ++second;
        const bool keep_first = rng.coin();
        Merger merger;
        merger.target = keep_first ? pool[first] : pool[second];
        merger.source = keep_first ? pool[second] : pool[first];
        mergers.push_back(std::move(merger));
    }
    return mergers;
}

Wordlist evolve(const Wordlist& proto, const std::vector<std::vector<Merger>>& mergers) {
    const int n_daughters = static_cast<int>(mergers.size());
    Wordlist out;
    for (int d = 0; d < n_daughters; ++d) {
        out.doculects.push_back(padded_label("L", d + 1, 2));
    }

    std::int64_t next_id = 1;
    for (const WordForm& proto_form : proto.forms) {
        Alignment alig;
        alig.cogid = proto_form.cogid;
        alig.width = proto_form.segments.size();
        for (int d = 0; d < n_daughters; ++d) {
            WordForm form;
            form.id = next_id++;
            form.doculect = out.doculects[d];
            form.gloss = proto_form.gloss;
            form.cogid = proto_form.cogid;
            form.segments = proto_form.segments;
            for (const Merger& merger : mergers[d]) {
                for (Segment& seg : form.segments) {
                    if (seg == merger.source) seg = merger.target;
                }
            }
            std::vector<CellValue> cells;
            for (const Segment& seg : form.segments) cells.push_back(CellValue::sound(seg));
            alig.rows.emplace_back(form.id, std::move(cells));
            out.forms.push_back(std::move(form));
        }
        if (n_daughters >= 2) out.alignments.emplace(alig.cogid, std::move(alig));
    }
    return out;
}

Wordlist simulate_regular(const SimulationConfig& cfg) {
    const Wordlist proto = generate_proto(cfg);
    std::vector<std::vector<Merger>> mergers;
    for (int d = 0; d < cfg.n_daughters; ++d) mergers.push_back(sample_mergers(cfg, d));
    return evolve(proto, mergers);
}

std::pair<Wordlist, std::set<std::pair<std::int64_t, int>>> inject_noise(
    const Wordlist& wl, double rate, std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0) throw Error("noise rate must be within [0, 1]");
    Wordlist out = wl;
    std::set<std::pair<std::int64_t, int>> positions;
    const std::vector<DoculectPools> pools = inventory_pools(wl);

    std::vector<std::pair<std::size_t, int>> slots;  // (form index, segment index)
    for (std::size_t f = 0; f < out.forms.size(); ++f) {
        for (int s = 0; s < static_cast<int>(out.forms[f].segments.size()); ++s) {
            slots.emplace_back(f, s);
        }
    }
    const auto n_changes =
        static_cast<std::size_t>(rate * static_cast<double>(slots.size()));

    Rng rng(mix_seed(seed, hash_str("noise")));
    const std::vector<std::size_t> chosen = rng.sample_indices(slots.size(), n_changes);
    for (std::size_t slot_idx : chosen) {
        const auto [f, s] = slots[slot_idx];
        WordForm& form = out.forms[f];
        const Segment& original = form.segments[s];
        const std::size_t d = *out.doculect_index(form.doculect);
        const std::vector<Segment>* pool = pool_for(pools[d], original.klass);
        if (pool == nullptr || pool->size() < 2) continue;  // no alternative phone
        form.segments[s] = draw_different(*pool, original, rng);
        sync_alignment_cell(out, form, s);
        positions.emplace(form.id, s);
    }
    return {std::move(out), std::move(positions)};
}

std::pair<Wordlist, std::map<std::int64_t, std::int64_t>> inject_replacements(
    const Wordlist& wl, double fraction, std::uint64_t seed,
    std::vector<std::string>* warnings) {
    if (fraction < 0.0 || fraction > 1.0) throw Error("fraction must be within [0, 1]");
    Wordlist out = wl;
    std::map<std::int64_t, std::int64_t> replaced;
    const std::vector<DoculectPools> pools = inventory_pools(wl);

    std::vector<CognateSet> eligible;
    for (CognateSet& set : cognate_sets(out)) {
        if (set.members.size() >= 3) eligible.push_back(std::move(set));
    }
    std::size_t target =
        static_cast<std::size_t>(fraction * static_cast<double>(eligible.size()));
    if (target == 0 && fraction > 0.0 && !eligible.empty()) target = 1;
    if (target == 0) return {std::move(out), std::move(replaced)};

    Rng rng(mix_seed(seed, hash_str("replace")));
    rng.shuffle(eligible);

    std::size_t done = 0;
    for (const CognateSet& set : eligible) {
        if (done == target) break;
        const WordForm* victim = set.members[rng.below(set.members.size())];

        // Feasibility: every consonant/vowel slot needs an alternative phone.
        const std::size_t d = *out.doculect_index(victim->doculect);
        bool feasible = true;
        for (const Segment& seg : victim->segments) {
            const std::vector<Segment>* pool = pool_for(pools[d], seg.klass);
            if (pool != nullptr && pool->size() < 2) {
                feasible = false;
                break;
            }
        }
        if (!feasible) {
            if (warnings) {
                warnings->push_back(InjectionImpossible(set.cogid).what() +
                                    std::string("; set skipped"));
            }
            continue;
        }

        for (WordForm& form : out.forms) {
            if (form.id != victim->id) continue;
            for (int s = 0; s < static_cast<int>(form.segments.size()); ++s) {
                const std::vector<Segment>* pool = pool_for(pools[d], form.segments[s].klass);
                if (pool == nullptr) continue;
                form.segments[s] = draw_different(*pool, form.segments[s], rng);
                sync_alignment_cell(out, form, s);
            }
            replaced.emplace(set.cogid, form.id);
            ++done;
            break;
        }
    }
    if (done < target && warnings) {
        warnings->push_back("only " + std::to_string(done) + " of " + std::to_string(target) +
                            " cognate sets could be perturbed");
    }
    return {std::move(out), std::move(replaced)};
}

}  // namespace correg
