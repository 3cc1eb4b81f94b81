// End-to-end checks of the command-line tool. Takes the binary path as
// argv[1], works in a scratch directory, and exercises exit codes, output
// formats, and determinism.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;
std::string cli;
fs::path scratch;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string command = cli + " " + args + " 2>" + (scratch / "stderr.txt").string();
    command += stdout_file.empty() ? " >" + (scratch / "stdout.txt").string()
                                   : " >" + stdout_file;
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string last_stdout() { return slurp(scratch / "stdout.txt"); }

void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-correg>\n";
        return 2;
    }
    cli = argv[1];
    scratch = fs::temp_directory_path() / "correg-cli-tests";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    // --- exit codes -------------------------------------------------------
    check(run("") == 1, "no subcommand exits 1");
    check(run("regularity --no-such-flag") == 1, "unknown flag exits 1");
    check(run("regularity --input " + (scratch / "absent.tsv").string()) == 2,
          "missing input file exits 2");
    write(scratch / "broken.tsv", "not\ta\twordlist\n1\t2\t3\n");
    check(run("regularity --input " + (scratch / "broken.tsv").string()) == 2,
          "malformed input exits 2");
    check(run("--help") == 0, "--help exits 0");

    // --- simulate ---------------------------------------------------------
    const fs::path sim = scratch / "sim";
    const std::string simulate_args =
        "simulate --out " + sim.string() + " --seed 11 --noise 0.05 --fraction 0.2";
    check(run(simulate_args) == 0, "simulate exits 0");
    check(fs::exists(sim / "wordlist.tsv") && fs::exists(sim / "truth_replacements.tsv") &&
              fs::exists(sim / "truth_noise.tsv"),
          "simulate writes wordlist and ground-truth tables");
    const std::string first = slurp(sim / "wordlist.tsv");
    const fs::path sim2 = scratch / "sim2";
    run("simulate --out " + sim2.string() + " --seed 11 --noise 0.05 --fraction 0.2");
    check(slurp(sim2 / "wordlist.tsv") == first, "simulate is deterministic per seed");

    // --- regularity: stdout, formats, input immutability -------------------
    const std::string input = (sim / "wordlist.tsv").string();
    const std::string before = slurp(input);
    check(run("regularity --input " + input) == 0, "regularity exits 0");
    {
        const std::string out = last_stdout();
        const bool four_decimals =
            out.size() >= 7 && out.find('.') != std::string::npos &&
            out.substr(out.find('.') + 1).size() >= 5;  // 4 digits + newline
        check(four_decimals, "dataset score printed with 4 decimals: " + out.substr(0, 6));
    }
    const fs::path reg_tsv = scratch / "reg-tsv";
    const fs::path reg_json = scratch / "reg-json";
    check(run("regularity --input " + input + " --out " + reg_tsv.string()) == 0,
          "regularity --out writes tables");
    check(run("regularity --input " + input + " --out " + reg_json.string() +
              " --format json") == 0,
          "regularity --format json");
    {
        // TSV and JSON carry identical values.
        const json doc = json::parse(slurp(reg_json / "regularity.json"));
        std::istringstream tsv(slurp(reg_tsv / "cogsets.tsv"));
        std::string line;
        std::getline(tsv, line);  // header
        std::size_t row = 0;
        bool equal = true;
        while (std::getline(tsv, line)) {
            std::istringstream fields(line);
            std::string cogid, n_sites, score;
            std::getline(fields, cogid, '\t');
            std::getline(fields, n_sites, '\t');
            std::getline(fields, score, '\t');
            const json& j = doc["cogsets"][row];
            equal &= std::to_string(j["cogid"].get<long long>()) == cogid;
            equal &= j["score"].get<std::string>() == score;
            ++row;
        }
        equal &= row == doc["cogsets"].size();
        check(equal && row > 0, "TSV and JSON regularity outputs carry identical values");
    }
    check(slurp(input) == before, "inputs are never mutated");

    // --- align -------------------------------------------------------------
    write(scratch / "plain.tsv",
          "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
          "1\tL1\thand\tk a n\t1\n"
          "2\tL2\thand\tk a n a\t1\n"
          "3\tL1\tsun\ts o l\t2\n"
          "4\tL2\tsun\ts o\t2\n");
    const fs::path aligned = scratch / "aligned.tsv";
    check(run("align --input " + (scratch / "plain.tsv").string() + " --output " +
              aligned.string()) == 0,
          "align exits 0");
    {
        const std::string text = slurp(aligned);
        check(text.find("ALIGNMENT") != std::string::npos &&
                  text.find("k a n -") != std::string::npos,
              "align adds an ALIGNMENT column with gap padding");
    }

    // --- patterns -----------------------------------------------------------
    const fs::path pat = scratch / "patterns";
    write(scratch / "fixture.tsv",
          "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
          "1\tL1\tA\tk a n\t1\n2\tL2\tA\tk a n\t1\n3\tL3\tA\tk a n\t1\n4\tL4\tA\tk a n\t1\n"
          "5\tL1\tB\tk u n\t2\n6\tL2\tB\tk u n\t2\n7\tL3\tB\tk u n\t2\n");
    check(run("patterns --input " + (scratch / "fixture.tsv").string() + " --out " +
              pat.string()) == 0,
          "patterns exits 0");
    {
        const std::string table = slurp(pat / "patterns.tsv");
        check(table.find("PATTERN_ID\tRECURRENCE\tL1\tL2\tL3\tL4") == 0 &&
                  table.find('?') != std::string::npos,
              "patterns table has per-doculect columns and ? for unresolved");
        const std::string assigned = slurp(pat / "assignments.tsv");
        check(assigned.find("COGID\tCOLUMN\tPATTERN_ID") == 0,
              "assignments table written");
    }

    // --- detect -------------------------------------------------------------
    const fs::path clean = scratch / "clean";
    run("simulate --out " + clean.string() + " --seed 3");
    check(run("detect --input " + (clean / "wordlist.tsv").string() + " --threshold 1.5") == 0,
          "detect exits 0 on regular data");
    {
        const std::string out = last_stdout();
        check(out == "COGID\tBASELINE\tBEST_FORM_ID\tBEST_DOCULECT\tGAIN\n",
              "regular data under a low threshold yields an empty detect body");
    }
    const fs::path det = scratch / "det";
    check(run("detect --input " + input + " --out " + det.string() + " --all-gains") == 0,
          "detect --all-gains writes the long table");
    check(fs::exists(det / "detect.tsv") && fs::exists(det / "gains.tsv"),
          "detect output files exist");

    // --- evaluate: determinism across runs and job counts --------------------
    const fs::path ev1 = scratch / "ev1";
    const fs::path ev2 = scratch / "ev2";
    const fs::path ev4 = scratch / "ev4";
    const std::string ev_args =
        "evaluate --mode sim --runs 2 --noise 0.0,0.2 --concepts 40 --seed 7 --fraction 0.2";
    check(run(ev_args + " --jobs 1 --out " + ev1.string()) == 0, "evaluate sim exits 0");
    run(ev_args + " --jobs 1 --out " + ev2.string());
    run(ev_args + " --jobs 4 --out " + ev4.string());
    check(slurp(ev1 / "trials.tsv") == slurp(ev2 / "trials.tsv"),
          "evaluate twice gives identical trials.tsv");
    check(slurp(ev1 / "trials.tsv") == slurp(ev4 / "trials.tsv"),
          "evaluate --jobs 1 and --jobs 4 give identical trials.tsv");
    check(fs::exists(ev1 / "summary.tsv") && fs::exists(ev1 / "plotdata" / "sim_accuracy.tsv"),
          "evaluate writes summary and plot data");

    // --- evaluate: inject and sweep ------------------------------------------
    const fs::path inj = scratch / "inj";
    check(run("evaluate --mode inject --input " + input + " --sample-size 4,6 --runs 2 " +
              "--seed 5 --out " + inj.string()) == 0,
          "evaluate inject exits 0");
    check(fs::exists(inj / "plotdata" / "inject_accuracy.tsv"), "inject plot data written");

    const fs::path sweep = scratch / "sweep";
    check(run("evaluate --mode sweep --input " + input + " --input " +
              (scratch / "broken.tsv").string() + " --out " + sweep.string()) == 0,
          "sweep continues past a broken dataset");
    check(fs::exists(sweep / "plotdata" / "dataset_scores.tsv") &&
              fs::exists(sweep / "sweep_errors.tsv"),
          "sweep writes scores and an error table");

    // --- failure leaves no partial outputs -----------------------------------
    const fs::path never = scratch / "never";
    check(run("patterns --input " + (scratch / "broken.tsv").string() + " --out " +
              never.string()) == 2,
          "patterns on broken input exits 2");
    check(!fs::exists(never / "patterns.tsv"), "failed command leaves no partial outputs");

    if (failures == 0) std::printf("cli: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
