// Command-line front end: align, patterns, regularity, detect, simulate,
// evaluate. Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics
// go to stderr; every run is deterministic given its flags and inputs.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "correg/alignment.hpp"
#include "correg/detect.hpp"
#include "correg/errors.hpp"
#include "correg/harness.hpp"
#include "correg/regularity.hpp"
#include "correg/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw correg::Error("cannot open input file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
}

// Tracks files written by one command; on failure the whole set is removed
// so no partial result directory is left behind.
class OutputSet {
public:
    ~OutputSet() {
        if (committed_) return;
        for (const fs::path& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

    void write(const fs::path& path, const std::string& content) {
        if (path.has_parent_path()) fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw correg::Error("cannot write output file: " + path.string());
        out << content;
        if (!out) throw correg::Error("failed writing output file: " + path.string());
        written_.push_back(path);
    }

    void commit() { committed_ = true; }

private:
    std::vector<fs::path> written_;
    bool committed_ = false;
};

void print_warnings(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct Analysis {
    correg::Wordlist wl;
    std::vector<correg::Site> sites;
    correg::PatternCollection pc;
};

Analysis analyze_file(const std::string& input) {
    std::vector<std::string> warnings;
    Analysis a;
    a.wl = correg::ensure_alignments(correg::parse_wordlist(read_file(input), &warnings));
    a.sites = correg::extract_sites(a.wl, &warnings);
    print_warnings(warnings);
    if (a.sites.empty()) {
        throw correg::Error("no cognate sets of size >= 2 in " + input);
    }
    a.pc = correg::infer_patterns(a.sites);
    return a;
}

enum class Format { Tsv, Json };

// ---------------------------------------------------------------------------
// align

int cmd_align(const std::string& input, const std::string& output) {
    std::vector<std::string> warnings;
    const correg::Wordlist wl =
        correg::ensure_alignments(correg::parse_wordlist(read_file(input), &warnings));
    print_warnings(warnings);
    OutputSet out;
    out.write(output, correg::serialize_wordlist(wl));
    out.commit();
    return 0;
}

// ---------------------------------------------------------------------------
// patterns

int cmd_patterns(const std::string& input, const std::string& outdir, Format format) {
    const Analysis a = analyze_file(input);
    OutputSet out;

    if (format == Format::Tsv) {
        std::string table = "PATTERN_ID\tRECURRENCE";
        for (const std::string& d : a.wl.doculects) table += "\t" + d;
        table += '\n';
        for (std::size_t p = 0; p < a.pc.patterns.size(); ++p) {
            table += std::to_string(p + 1) + "\t" +
                     std::to_string(a.pc.patterns[p].recurrence());
            for (const correg::CellValue& v : a.pc.patterns[p].values) {
                table += '\t';
                table += v.is_missing() ? "?" : v.display();
            }
            table += '\n';
        }
        out.write(fs::path(outdir) / "patterns.tsv", table);

        std::string assigned = "COGID\tCOLUMN\tPATTERN_ID\n";
        for (const auto& [sid, p] : a.pc.assignment) {
            assigned += std::to_string(sid.cogid) + "\t" + std::to_string(sid.column + 1) +
                        "\t" + std::to_string(p + 1) + "\n";
        }
        out.write(fs::path(outdir) / "assignments.tsv", assigned);
    } else {
        json patterns = json::array();
        for (std::size_t p = 0; p < a.pc.patterns.size(); ++p) {
            json values = json::object();
            for (std::size_t d = 0; d < a.wl.doculects.size(); ++d) {
                const correg::CellValue& v = a.pc.patterns[p].values[d];
                values[a.wl.doculects[d]] = v.is_missing() ? "?" : v.display();
            }
            patterns.push_back({{"pattern_id", p + 1},
                                {"recurrence", a.pc.patterns[p].recurrence()},
                                {"values", values}});
        }
        json assigned = json::array();
        for (const auto& [sid, p] : a.pc.assignment) {
            assigned.push_back(
                {{"cogid", sid.cogid}, {"column", sid.column + 1}, {"pattern_id", p + 1}});
        }
        out.write(fs::path(outdir) / "patterns.json", patterns.dump(2) + "\n");
        out.write(fs::path(outdir) / "assignments.json", assigned.dump(2) + "\n");
    }
    out.commit();
    return 0;
}

// ---------------------------------------------------------------------------
// regularity

int cmd_regularity(const std::string& input, const std::string& outdir, Format format) {
    const Analysis a = analyze_file(input);
    const correg::RegularityReport rep = correg::report(a.sites, a.pc);

    if (!outdir.empty()) {
        OutputSet out;
        if (format == Format::Tsv) {
            std::string cogsets = "COGID\tN_SITES\tSCORE\n";
            for (const correg::CogsetRegularity& row : rep.per_cogset) {
                cogsets += std::to_string(row.cogid) + "\t" +
                           std::to_string(row.recurrences.size()) + "\t" + fmt4(row.score) +
                           "\n";
            }
            out.write(fs::path(outdir) / "cogsets.tsv", cogsets);

            std::string sites = "COGID\tCOLUMN\tRECURRENCE\tNORMALIZED_LOG\n";
            for (const correg::SiteRecurrenceRow& row : rep.per_site) {
                sites += std::to_string(row.id.cogid) + "\t" +
                         std::to_string(row.id.column + 1) + "\t" +
                         std::to_string(row.recurrence) + "\t" + fmt4(row.normalized_log) +
                         "\n";
            }
            out.write(fs::path(outdir) / "sites.tsv", sites);
        } else {
            json doc;
            doc["dataset_score"] = fmt4(rep.dataset_score);
            doc["total_sites"] = rep.total_sites;
            doc["cogsets"] = json::array();
            for (const correg::CogsetRegularity& row : rep.per_cogset) {
                doc["cogsets"].push_back({{"cogid", row.cogid},
                                          {"n_sites", row.recurrences.size()},
                                          {"score", fmt4(row.score)}});
            }
            doc["sites"] = json::array();
            for (const correg::SiteRecurrenceRow& row : rep.per_site) {
                doc["sites"].push_back({{"cogid", row.id.cogid},
                                        {"column", row.id.column + 1},
                                        {"recurrence", row.recurrence},
                                        {"normalized_log", fmt4(row.normalized_log)}});
            }
            out.write(fs::path(outdir) / "regularity.json", doc.dump(2) + "\n");
        }
        out.commit();
    }
    std::cout << fmt4(rep.dataset_score) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// detect

int cmd_detect(const std::string& input, double threshold, bool all_gains, bool reinfer,
               const std::string& outdir, Format format) {
    const Analysis a = analyze_file(input);
    correg::DetectOptions options;
    options.score_threshold = threshold;
    options.reinfer = reinfer;
    const std::vector<correg::DetectionResult> results =
        correg::detect_irregular(a.wl, a.sites, a.pc, options);

    std::map<std::int64_t, const correg::WordForm*> by_id;
    for (const correg::WordForm& form : a.wl.forms) by_id.emplace(form.id, &form);
    auto doculect_of = [&](std::int64_t id) { return by_id.at(id)->doculect; };

    std::string table = "COGID\tBASELINE\tBEST_FORM_ID\tBEST_DOCULECT\tGAIN\n";
    for (const correg::DetectionResult& r : results) {
        table += std::to_string(r.cogid) + "\t" + fmt4(r.baseline) + "\t";
        if (r.best) {
            table += std::to_string(*r.best) + "\t" + doculect_of(*r.best);
        } else {
            table += "\t";
        }
        table += "\t" + fmt4(r.best_gain) + "\n";
    }

    if (outdir.empty()) {
        std::cout << table;
        return 0;
    }
    OutputSet out;
    if (format == Format::Tsv) {
        out.write(fs::path(outdir) / "detect.tsv", table);
        if (all_gains) {
            std::string gains = "COGID\tFORM_ID\tDOCULECT\tGAIN\n";
            for (const correg::DetectionResult& r : results) {
                for (const auto& [form_id, gain] : r.per_word) {
                    gains += std::to_string(r.cogid) + "\t" + std::to_string(form_id) + "\t" +
                             doculect_of(form_id) + "\t" + fmt4(gain) + "\n";
                }
            }
            out.write(fs::path(outdir) / "gains.tsv", gains);
        }
    } else {
        json doc = json::array();
        for (const correg::DetectionResult& r : results) {
            json entry = {{"cogid", r.cogid}, {"baseline", fmt4(r.baseline)},
                          {"gain", fmt4(r.best_gain)}};
            if (r.best) {
                entry["best_form_id"] = *r.best;
                entry["best_doculect"] = doculect_of(*r.best);
            } else {
                entry["best_form_id"] = nullptr;
                entry["best_doculect"] = nullptr;
            }
            if (all_gains) {
                json words = json::array();
                for (const auto& [form_id, gain] : r.per_word) {
                    words.push_back({{"form_id", form_id},
                                     {"doculect", doculect_of(form_id)},
                                     {"gain", fmt4(gain)}});
                }
                entry["per_word"] = words;
            }
            doc.push_back(entry);
        }
        out.write(fs::path(outdir) / "detect.json", doc.dump(2) + "\n");
    }
    out.commit();
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const correg::SimulationConfig& cfg, double noise, double fraction,
                 const std::string& outdir) {
    const correg::Wordlist regular = correg::simulate_regular(cfg);
    auto [noised, positions] =
        correg::inject_noise(regular, noise, correg::mix_seed(cfg.seed, correg::hash_str("phones")));
    std::vector<std::string> warnings;
    auto [final_wl, replaced] = correg::inject_replacements(
        noised, fraction, correg::mix_seed(cfg.seed, correg::hash_str("words")), &warnings);
    print_warnings(warnings);

    OutputSet out;
    out.write(fs::path(outdir) / "wordlist.tsv", correg::serialize_wordlist(final_wl));

    std::string truth = "COGID\tREPLACED_FORM_ID\n";
    for (const auto& [cogid, form_id] : replaced) {
        truth += std::to_string(cogid) + "\t" + std::to_string(form_id) + "\n";
    }
    out.write(fs::path(outdir) / "truth_replacements.tsv", truth);

    std::string noise_rows = "FORM_ID\tPOSITION\n";
    for (const auto& [form_id, position] : positions) {
        noise_rows += std::to_string(form_id) + "\t" + std::to_string(position + 1) + "\n";
    }
    out.write(fs::path(outdir) / "truth_noise.tsv", noise_rows);
    out.commit();
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

void write_trials(OutputSet& out, const std::string& outdir, Format format,
                  const std::vector<correg::TrialResult>& trials) {
    const std::vector<correg::SummaryRow> rows = correg::summarize(trials);
    if (format == Format::Tsv) {
        out.write(fs::path(outdir) / "trials.tsv", correg::trials_to_tsv(trials));
        out.write(fs::path(outdir) / "summary.tsv", correg::summary_to_tsv(rows));
        return;
    }
    json jt = json::array();
    for (const correg::TrialResult& t : trials) {
        jt.push_back({{"dataset", t.dataset},
                      {"condition", t.condition},
                      {"run", t.run},
                      {"n_injected", t.n_injected},
                      {"n_correct", t.n_correct},
                      {"accuracy", t.skipped ? json(nullptr) : json(fmt4(t.accuracy))},
                      {"status", t.skipped ? "skipped" : "ok"}});
    }
    json js = json::array();
    for (const correg::SummaryRow& row : rows) {
        js.push_back({{"dataset", row.dataset},
                      {"condition", row.condition},
                      {"n_runs", row.n_runs},
                      {"n_skipped", row.n_skipped},
                      {"mean_accuracy", fmt4(row.mean_accuracy)},
                      {"sd_accuracy", fmt4(row.sd_accuracy)}});
    }
    out.write(fs::path(outdir) / "trials.json", jt.dump(2) + "\n");
    out.write(fs::path(outdir) / "summary.json", js.dump(2) + "\n");
}

int cmd_evaluate_sim(const correg::SimulationConfig& cfg, const std::vector<double>& rates,
                     int runs, double fraction, int jobs, const std::string& outdir,
                     Format format) {
    const std::vector<correg::TrialResult> trials =
        correg::run_simulated(cfg, rates, runs, fraction, jobs);
    OutputSet out;
    write_trials(out, outdir, format, trials);

    std::string plot = "RATE\tRUN\tACCURACY\n";
    for (const correg::TrialResult& t : trials) {
        if (t.skipped) continue;
        plot += t.condition.substr(t.condition.find('=') + 1) + "\t" +
                std::to_string(t.run) + "\t" + fmt4(t.accuracy) + "\n";
    }
    out.write(fs::path(outdir) / "plotdata" / "sim_accuracy.tsv", plot);
    out.commit();
    return 0;
}

int cmd_evaluate_inject(const std::string& input, const std::vector<std::size_t>& sample_sizes,
                        int runs, double fraction, std::uint64_t seed, int jobs,
                        const std::string& outdir, Format format) {
    std::vector<std::string> warnings;
    const correg::Wordlist wl = correg::parse_wordlist(read_file(input), &warnings);
    print_warnings(warnings);
    const std::string label = fs::path(input).stem().string();

    std::vector<correg::TrialResult> trials;
    for (std::size_t k : sample_sizes) {
        const std::vector<correg::TrialResult> part =
            correg::run_injection(wl, label, k, runs, fraction, seed, jobs);
        trials.insert(trials.end(), part.begin(), part.end());
    }

    OutputSet out;
    write_trials(out, outdir, format, trials);
    std::string plot = "DATASET\tK\tRUN\tACCURACY\n";
    for (const correg::TrialResult& t : trials) {
        if (t.skipped) continue;
        plot += t.dataset + "\t" + t.condition.substr(t.condition.find('=') + 1) + "\t" +
                std::to_string(t.run) + "\t" + fmt4(t.accuracy) + "\n";
    }
    out.write(fs::path(outdir) / "plotdata" / "inject_accuracy.tsv", plot);
    out.commit();
    return 0;
}

int cmd_evaluate_sweep(const std::vector<std::string>& inputs, std::size_t min_doculects,
                       std::size_t min_concepts, const std::string& outdir) {
    std::vector<std::pair<std::string, std::string>> labeled;
    std::vector<std::pair<std::string, std::string>> filtered;
    for (const std::string& input : inputs) {
        const std::string label = fs::path(input).stem().string();
        std::string text;
        try {
            text = read_file(input);
        } catch (const correg::Error& e) {
            filtered.emplace_back(label, e.what());
            continue;
        }
        if (min_doculects > 0 || min_concepts > 0) {
            try {
                const correg::Wordlist wl = correg::parse_wordlist(text);
                std::set<std::string> concepts;
                for (const correg::WordForm& f : wl.forms) concepts.insert(f.gloss);
                if (wl.doculects.size() < min_doculects) {
                    filtered.emplace_back(label, "below --min-doculects; skipped");
                    continue;
                }
                if (concepts.size() < min_concepts) {
                    filtered.emplace_back(label, "below --min-concepts; skipped");
                    continue;
                }
            } catch (const correg::Error&) {
                // let the sweep report the parse failure uniformly
            }
        }
        labeled.emplace_back(label, std::move(text));
    }

    correg::SweepResult sweep = correg::regularity_sweep(labeled);
    sweep.errors.insert(sweep.errors.end(), filtered.begin(), filtered.end());
    for (const auto& [label, message] : sweep.errors) {
        std::cerr << "sweep: " << label << ": " << message << "\n";
    }
    if (sweep.datasets.empty()) {
        throw correg::Error("no dataset in the sweep produced a score");
    }

    OutputSet out;
    std::string scores = "DATASET\tN_SITES\tSCORE\n";
    for (const correg::SweepDatasetRow& row : sweep.datasets) {
        scores += row.dataset + "\t" + std::to_string(row.total_sites) + "\t" +
                  fmt4(row.dataset_score) + "\n";
    }
    out.write(fs::path(outdir) / "plotdata" / "dataset_scores.tsv", scores);

    std::string sites = "DATASET\tCOGID\tCOLUMN\tRECURRENCE\tNORMALIZED_LOG\n";
    for (const correg::SweepSiteRow& row : sweep.sites) {
        sites += row.dataset + "\t" + std::to_string(row.site.cogid) + "\t" +
                 std::to_string(row.site.column + 1) + "\t" + std::to_string(row.recurrence) +
                 "\t" + fmt4(row.normalized_log) + "\n";
    }
    out.write(fs::path(outdir) / "plotdata" / "site_recurrence.tsv", sites);

    if (!sweep.errors.empty()) {
        std::string errors = "DATASET\tMESSAGE\n";
        for (const auto& [label, message] : sweep.errors) {
            errors += label + "\t" + message + "\n";
        }
        out.write(fs::path(outdir) / "sweep_errors.tsv", errors);
    }
    out.commit();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sound-correspondence regularity toolkit"};
    app.require_subcommand(1);

    std::string input;
    std::vector<std::string> inputs;
    std::string output;
    std::string outdir;
    std::string format_name = "tsv";
    std::uint64_t seed = 0;
    double threshold = std::numeric_limits<double>::infinity();
    bool all_gains = false;
    bool reinfer = false;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    correg::SimulationConfig cfg;
    double noise = 0.0;
    double fraction = 0.0;
    std::vector<double> rates = {0.00, 0.05, 0.10, 0.15, 0.20, 0.25,
                                 0.30, 0.35, 0.40, 0.45, 0.50};
    std::vector<std::size_t> sample_sizes = {5, 10};
    int runs = 10;
    std::string mode;
    std::size_t min_doculects = 0;
    std::size_t min_concepts = 0;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_name, "Output format")
            ->check(CLI::IsMember({"tsv", "json"}))
            ->capture_default_str();
    };
    auto add_sim_flags = [&](CLI::App* sub) {
        sub->add_option("--concepts", cfg.n_concepts, "Number of simulated concepts")
            ->capture_default_str();
        sub->add_option("--consonants", cfg.n_consonants, "Consonant inventory size")
            ->capture_default_str();
        sub->add_option("--vowels", cfg.n_vowels, "Vowel inventory size")
            ->capture_default_str();
        sub->add_option("--daughters", cfg.n_daughters, "Number of daughter languages")
            ->capture_default_str();
        sub->add_option("--max-mergers", cfg.max_mergers, "Maximum mergers per daughter")
            ->capture_default_str();
    };

    CLI::App* align = app.add_subcommand("align", "Add alignments where missing");
    align->add_option("--input", input, "Wordlist TSV")->required();
    align->add_option("--output", output, "Aligned wordlist TSV")->required();

    CLI::App* patterns = app.add_subcommand("patterns", "Infer correspondence patterns");
    patterns->add_option("--input", input, "Wordlist TSV")->required();
    patterns->add_option("--out", outdir, "Output directory")->required();
    add_format(patterns);

    CLI::App* regularity = app.add_subcommand("regularity", "Score dataset regularity");
    regularity->add_option("--input", input, "Wordlist TSV")->required();
    regularity->add_option("--out", outdir, "Output directory for the per-set tables");
    add_format(regularity);

    CLI::App* detect = app.add_subcommand("detect", "Find irregular word forms");
    detect->add_option("--input", input, "Wordlist TSV")->required();
    detect->add_option("--threshold", threshold,
                       "Analyze only cognate sets scoring below this value");
    CLI::Option* detect_out = detect->add_option("--out", outdir, "Output directory");
    detect->add_flag("--all-gains", all_gains, "Also write the per-word gain table")
        ->needs(detect_out);
    detect->add_flag("--reinfer", reinfer,
                     "Re-infer patterns per masking (exact, slow; small data only)");
    add_format(detect);

    CLI::App* simulate = app.add_subcommand("simulate", "Write a simulated wordlist");
    simulate->add_option("--out", outdir, "Output directory")->required();
    add_sim_flags(simulate);
    simulate->add_option("--noise", noise, "Phone noise rate")->capture_default_str();
    simulate->add_option("--fraction", fraction, "Fraction of cognate sets to perturb")
        ->capture_default_str();
    simulate->add_option("--seed", seed, "Master seed")->capture_default_str();

    CLI::App* evaluate = app.add_subcommand("evaluate", "Run the experiments");
    evaluate->add_option("--mode", mode, "sim, inject, or sweep")
        ->required()
        ->check(CLI::IsMember({"sim", "inject", "sweep"}));
    evaluate->add_option("--input", inputs, "Wordlist TSV (inject: one; sweep: many)");
    evaluate->add_option("--out", outdir, "Output directory")->required();
    evaluate->add_option("--runs", runs, "Runs per condition")->capture_default_str();
    evaluate->add_option("--noise", rates, "Noise rates for sim mode")->delimiter(',');
    evaluate->add_option("--sample-size", sample_sizes, "Subsample sizes for inject mode")
        ->delimiter(',');
    evaluate->add_option("--fraction", fraction, "Fraction of cognate sets to perturb");
    evaluate->add_option("--seed", seed, "Master seed")->capture_default_str();
    evaluate->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    evaluate->add_option("--min-doculects", min_doculects,
                         "Sweep: skip datasets with fewer doculects");
    evaluate->add_option("--min-concepts", min_concepts,
                         "Sweep: skip datasets with fewer concepts");
    add_sim_flags(evaluate);
    add_format(evaluate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        const Format format = format_name == "json" ? Format::Json : Format::Tsv;
        if (app.got_subcommand(align)) return cmd_align(input, output);
        if (app.got_subcommand(patterns)) return cmd_patterns(input, outdir, format);
        if (app.got_subcommand(regularity)) return cmd_regularity(input, outdir, format);
        if (app.got_subcommand(detect)) {
            return cmd_detect(input, threshold, all_gains, reinfer, outdir, format);
        }
        if (app.got_subcommand(simulate)) {
            cfg.seed = seed;
            return cmd_simulate(cfg, noise, fraction, outdir);
        }
        if (app.got_subcommand(evaluate)) {
            cfg.seed = seed;
            if (mode == "sim") {
                if (fraction == 0.0) fraction = 0.2;
                return cmd_evaluate_sim(cfg, rates, runs, fraction, jobs, outdir, format);
            }
            if (mode == "inject") {
                if (fraction == 0.0) fraction = 0.2;
                if (inputs.size() != 1) {
                    throw CLI::ValidationError("--mode inject needs exactly one --input");
                }
                return cmd_evaluate_inject(inputs[0], sample_sizes, runs, fraction, seed,
                                           jobs, outdir, format);
            }
            if (inputs.empty()) {
                throw CLI::ValidationError("--mode sweep needs at least one --input");
            }
            return cmd_evaluate_sweep(inputs, min_doculects, min_concepts, outdir);
        }
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const correg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
