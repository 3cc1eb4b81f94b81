#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "correg/regularity.hpp"
#include "correg/simulate.hpp"

namespace correg {

// One experimental trial: inject replacements, detect, score the detection.
struct TrialResult {
    std::string dataset;
    std::string condition;  // "noise=0.10" or "k=5"
    int run = 0;            // 1-based
    int n_injected = 0;
    int n_correct = 0;
    double accuracy = 0.0;  // n_correct / n_injected
    bool skipped = false;   // no eligible cognate set in this trial

    bool operator==(const TrialResult&) const = default;
};

struct SummaryRow {
    std::string dataset;
    std::string condition;
    int n_runs = 0;  // non-skipped
    int n_skipped = 0;
    double mean_accuracy = 0.0;
    double sd_accuracy = 0.0;  // sample standard deviation
};

// Simulated-data experiment: per noise rate and run, generate a regular
// wordlist from cfg, add phone noise, replace one word in `fraction` of the
// cognate sets, and count how often the leave-one-out pick is the injected
// form. Per-trial seeds are derived from (cfg.seed, condition, run), so the
// result table is identical for any job count.
std::vector<TrialResult> run_simulated(const SimulationConfig& cfg,
                                       std::span<const double> noise_rates,
                                       int runs_per_rate, double fraction = 0.2,
                                       int jobs = 1);

// Injection experiment on an existing wordlist: per run, subsample
// `sample_size` doculects, align what lacks alignments, inject replacements,
// detect. Runs without an eligible cognate set are recorded as skipped.
std::vector<TrialResult> run_injection(const Wordlist& wl, const std::string& dataset_label,
                                       std::size_t sample_size, int runs,
                                       double fraction, std::uint64_t seed, int jobs = 1);

// Mean and standard deviation per (dataset, condition), in first-seen order.
std::vector<SummaryRow> summarize(std::span<const TrialResult> trials);

struct SweepDatasetRow {
    std::string dataset;
    std::size_t total_sites = 0;
    double dataset_score = 0.0;
};

struct SweepSiteRow {
    std::string dataset;
    SiteId site;
    std::size_t recurrence = 0;
    double normalized_log = 0.0;
};

struct SweepResult {
    std::vector<SweepDatasetRow> datasets;
    std::vector<SweepSiteRow> sites;
    std::vector<std::pair<std::string, std::string>> errors;  // (dataset, message)
};

// Regularity scores for a labeled set of wordlist documents; per-dataset
// failures are recorded and the sweep continues.
SweepResult regularity_sweep(const std::vector<std::pair<std::string, std::string>>& labeled_texts);

// TSV renderings shared by the CLI and the test suites.
std::string trials_to_tsv(std::span<const TrialResult> trials);
std::string summary_to_tsv(std::span<const SummaryRow> rows);

}  // namespace correg
