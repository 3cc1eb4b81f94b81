#include "correg/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

#include "correg/alignment.hpp"
#include "correg/detect.hpp"
#include "correg/errors.hpp"
#include "correg/rng.hpp"

namespace correg {

namespace {

std::string format_condition(const char* fmt, double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return std::string(buf);
}

// Runs fn(i) for i in [0, n) on up to `jobs` worker threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(jobs, 1), n == 0 ? 1 : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

// Injects replacements into a ready wordlist and scores the leave-one-out
// identification against the ground truth.
TrialResult score_injection_trial(const Wordlist& base, const std::string& dataset,
                                  const std::string& condition, int run,
                                  double fraction, std::uint64_t inject_seed) {
    TrialResult trial;
    trial.dataset = dataset;
    trial.condition = condition;
    trial.run = run;

    auto [perturbed, replaced] = inject_replacements(base, fraction, inject_seed);
    if (replaced.empty()) {
        trial.skipped = true;
        return trial;
    }

    const std::vector<Site> sites = extract_sites(perturbed);
    const PatternCollection pc = infer_patterns(sites);
    const auto by_cogset = sites_by_cogset(sites);

    trial.n_injected = static_cast<int>(replaced.size());
    for (const auto& [cogid, injected_id] : replaced) {
        const DetectionResult result =
            loo_gains(perturbed, cogid, by_cogset.at(cogid), pc);
        if (result.best && *result.best == injected_id) ++trial.n_correct;
    }
    trial.accuracy = static_cast<double>(trial.n_correct) /
                     static_cast<double>(trial.n_injected);
    return trial;
}

}  // namespace

std::vector<TrialResult> run_simulated(const SimulationConfig& cfg,
                                       std::span<const double> noise_rates,
                                       int runs_per_rate, double fraction, int jobs) {
    struct Spec {
        double rate;
        std::string condition;
        int run;
    };
    std::vector<Spec> specs;
    for (double rate : noise_rates) {
        if (rate < 0.0 || rate > 1.0) throw Error("noise rate must be within [0, 1]");
        for (int run = 1; run <= runs_per_rate; ++run) {
            specs.push_back(Spec{rate, format_condition("noise=%.2f", rate), run});
        }
    }

    std::vector<TrialResult> trials(specs.size());
    parallel_for(specs.size(), jobs, [&](std::size_t i) {
        const Spec& spec = specs[i];
        const std::uint64_t trial_seed =
            mix_seed(cfg.seed, hash_str("simulated"), hash_str(spec.condition),
                     static_cast<std::uint64_t>(spec.run));
        SimulationConfig trial_cfg = cfg;
        trial_cfg.seed = mix_seed(trial_seed, hash_str("generate"));
        const Wordlist regular = simulate_regular(trial_cfg);
        auto [noised, positions] =
            inject_noise(regular, spec.rate, mix_seed(trial_seed, hash_str("phones")));
        trials[i] = score_injection_trial(noised, "simulated", spec.condition, spec.run,
                                          fraction, mix_seed(trial_seed, hash_str("words")));
    });
    return trials;
}

std::vector<TrialResult> run_injection(const Wordlist& wl, const std::string& dataset_label,
                                       std::size_t sample_size, int runs,
                                       double fraction, std::uint64_t seed, int jobs) {
    if (sample_size > wl.doculects.size()) {
        throw InvalidSample("sample size exceeds the number of doculects");
    }
    const std::string condition =
        "k=" + std::to_string(static_cast<long long>(sample_size));

    std::vector<TrialResult> trials(static_cast<std::size_t>(std::max(runs, 0)));
    parallel_for(trials.size(), jobs, [&](std::size_t i) {
        const int run = static_cast<int>(i) + 1;
        const std::uint64_t trial_seed =
            mix_seed(seed, hash_str(dataset_label), hash_str(condition),
                     static_cast<std::uint64_t>(run));
        const Wordlist sampled =
            subsample(wl, sample_size, mix_seed(trial_seed, hash_str("sample")));
        const Wordlist aligned = ensure_alignments(sampled);
        trials[i] = score_injection_trial(aligned, dataset_label, condition, run, fraction,
                                          mix_seed(trial_seed, hash_str("words")));
    });
    return trials;
}

std::vector<SummaryRow> summarize(std::span<const TrialResult> trials) {
    std::vector<SummaryRow> rows;
    auto find_row = [&](const TrialResult& t) -> SummaryRow& {
        for (SummaryRow& row : rows) {
            if (row.dataset == t.dataset && row.condition == t.condition) return row;
        }
        rows.push_back(SummaryRow{t.dataset, t.condition, 0, 0, 0.0, 0.0});
        return rows.back();
    };

    for (const TrialResult& t : trials) {
        SummaryRow& row = find_row(t);
        if (t.skipped) {
            ++row.n_skipped;
        } else {
            ++row.n_runs;
            row.mean_accuracy += t.accuracy;
        }
    }
    for (SummaryRow& row : rows) {
        if (row.n_runs > 0) row.mean_accuracy /= row.n_runs;
    }
    for (const TrialResult& t : trials) {
        if (t.skipped) continue;
        SummaryRow& row = find_row(t);
        const double d = t.accuracy - row.mean_accuracy;
        row.sd_accuracy += d * d;
    }
    for (SummaryRow& row : rows) {
        row.sd_accuracy = row.n_runs > 1
                              ? std::sqrt(row.sd_accuracy / (row.n_runs - 1))
                              : 0.0;
    }
    return rows;
}

SweepResult regularity_sweep(
    const std::vector<std::pair<std::string, std::string>>& labeled_texts) {
    SweepResult result;
    for (const auto& [label, text] : labeled_texts) {
        try {
            const Wordlist wl = ensure_alignments(parse_wordlist(text));
            const std::vector<Site> sites = extract_sites(wl);
            if (sites.empty()) throw EmptyCognateSet("no cognate sets of size >= 2");
            const PatternCollection pc = infer_patterns(sites);
            const RegularityReport rep = report(sites, pc);
            result.datasets.push_back(SweepDatasetRow{label, rep.total_sites, rep.dataset_score});
            for (const SiteRecurrenceRow& row : rep.per_site) {
                result.sites.push_back(
                    SweepSiteRow{label, row.id, row.recurrence, row.normalized_log});
            }
        } catch (const Error& e) {
            result.errors.emplace_back(label, e.what());
        }
    }
    return result;
}

std::string trials_to_tsv(std::span<const TrialResult> trials) {
    std::string out = "DATASET\tCONDITION\tRUN\tN_INJECTED\tN_CORRECT\tACCURACY\tSTATUS\n";
    char buf[64];
    for (const TrialResult& t : trials) {
        out += t.dataset;
        out += '\t';
        out += t.condition;
        out += '\t';
        out += std::to_string(t.run);
        out += '\t';
        out += std::to_string(t.n_injected);
        out += '\t';
        out += std::to_string(t.n_correct);
        out += '\t';
        if (t.skipped) {
            out += "NA\tskipped";
        } else {
            std::snprintf(buf, sizeof(buf), "%.4f", t.accuracy);
            out += buf;
            out += "\tok";
        }
        out += '\n';
    }
    return out;
}

std::string summary_to_tsv(std::span<const SummaryRow> rows) {
    std::string out =
        "DATASET\tCONDITION\tN_RUNS\tN_SKIPPED\tMEAN_ACCURACY\tSD_ACCURACY\n";
    char buf[64];
    for (const SummaryRow& row : rows) {
        out += row.dataset;
        out += '\t';
        out += row.condition;
        out += '\t';
        out += std::to_string(row.n_runs);
        out += '\t';
        out += std::to_string(row.n_skipped);
        out += '\t';
        std::snprintf(buf, sizeof(buf), "%.4f\t%.4f", row.mean_accuracy, row.sd_accuracy);
        out += buf;
        out += '\n';
    }
    return out;
}

}  // namespace correg
