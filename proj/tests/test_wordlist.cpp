#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"

#include "correg/errors.hpp"
#include "correg/simulate.hpp"
#include "correg/wordlist.hpp"

using namespace correg;

TEST_CASE("parse accepts a minimal document") {
    const Wordlist wl = parse_wordlist(fixtures::kMinimal);
    REQUIRE(wl.forms.size() == 1);
    CHECK(wl.forms[0].id == 1);
    CHECK(wl.forms[0].doculect == "L1");
    CHECK(wl.forms[0].gloss == "hand");
    CHECK(wl.forms[0].cogid == 7);
    REQUIRE(wl.forms[0].segments.size() == 3);
    CHECK(wl.forms[0].segments[1].token == "a");
    CHECK(wl.doculects == std::vector<std::string>{"L1"});
}

TEST_CASE("parse handles CRLF and a case-insensitive header") {
    const Wordlist wl = parse_wordlist(
        "id\tDoculect\tConcept\tTokens\tCogID\r\n1\tL1\thand\tk a n\t7\r\n");
    CHECK(wl.forms.size() == 1);
}

TEST_CASE("provided alignments are attached to groups") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tL1\thand\tk a n\t7\tk a n -\n"
        "2\tL2\thand\tk a n a\t7\tk a n a\n");
    REQUIRE(wl.alignments.contains(7));
    const Alignment& alig = wl.alignments.at(7);
    CHECK(alig.width == 4);
    CHECK(alig.rows.size() == 2);
    CHECK(alig.rows[0].second[3].is_gap());
}

TEST_CASE("a gap-padded alignment on a singleton row is validated but not stored") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tL1\thand\tk a n\t7\tk a n -\n");
    CHECK(wl.alignments.empty());
}

TEST_CASE("alignment whose sounds disagree with TOKENS is rejected") {
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
                                   "1\tL1\thand\tk a n\t7\tk a m -\n"),
                    AlignmentMismatch);
}

TEST_CASE("alignment widths must agree within a group") {
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
                                   "1\tL1\thand\tk a n\t7\tk a n\n"
                                   "2\tL2\thand\tk a n a\t7\tk a n a\n"),
                    AlignmentMismatch);
}

TEST_CASE("partially aligned groups fall back to unaligned with a warning") {
    std::vector<std::string> warnings;
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tL1\thand\tk a n\t7\tk a n\n"
        "2\tL2\thand\tk a n\t7\t\n",
        &warnings);
    CHECK(wl.alignments.empty());
    CHECK(!warnings.empty());
}

TEST_CASE("parse errors carry the offending line") {
    // Missing required column.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\n1\tL1\tx\tk\n"), ParseError);
    // Wrong column count.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tk\n"),
                    ParseError);
    // Empty TOKENS.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\t\t1\n"),
                    ParseError);
    // Non-integer ID / COGID.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\nx\tL1\tx\tk\t1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tk\ty\n"),
                    ParseError);
    // Duplicate ID.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
                                   "1\tL1\tx\tk\t1\n1\tL2\tx\tk\t1\n"),
                    ParseError);
    // Reserved symbols inside TOKENS.
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tk -\t1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tØ\t1\n"),
                    ParseError);
    try {
        parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tk\t1\n2\tL1\tx\t\t1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("duplicate (doculect, cogid) pairs warn but keep both rows") {
    std::vector<std::string> warnings;
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
        "1\tL1\tx\tk a\t1\n"
        "2\tL1\tx\tt a\t1\n"
        "3\tL2\tx\tk a\t1\n",
        &warnings);
    CHECK(wl.forms.size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("duplicate") != std::string::npos);
}

TEST_CASE("cognate grouping excludes singletons and non-coded rows") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
        "1\tL1\tx\tk a\t5\n"
        "2\tL2\tx\tk a\t5\n"
        "3\tL3\tx\tk a\t5\n"
        "4\tL1\ty\tt a\t6\n"
        "5\tL2\tz\tp a\t0\n"
        "6\tL3\tz\tp a\t-1\n");
    const std::vector<CognateSet> groups = cognate_sets(wl);
    REQUIRE(groups.size() == 1);
    CHECK(groups[0].cogid == 5);
    CHECK(groups[0].members.size() == 3);
    CHECK(wl.forms.size() == 6);  // non-coded rows stay in the wordlist
}

TEST_CASE("the four-language fixture groups as expected") {
    const Wordlist wl = parse_wordlist(fixtures::kFourLanguages);
    const std::vector<CognateSet> groups = cognate_sets(wl);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].members.size() == 4);
    CHECK(groups[1].members.size() == 3);  // L4 missing from concept B
    CHECK(groups[2].members.size() == 4);
    // Members follow doculect order.
    CHECK(groups[0].members.front()->doculect == "L1");
    CHECK(groups[0].members.back()->doculect == "L4");
}

TEST_CASE("empty wordlist yields no cognate sets") {
    const Wordlist wl = parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n");
    CHECK(cognate_sets(wl).empty());
}

TEST_CASE("serialize/parse round trip") {
    auto roundtrip = [](const Wordlist& wl) {
        const Wordlist again = parse_wordlist(serialize_wordlist(wl));
        CHECK(again == wl);
    };
    roundtrip(parse_wordlist(fixtures::kFourLanguages));
    roundtrip(parse_wordlist("ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
                             "1\tL1\tx\tk a\t0\n2\tL2\tx\tkʰ aː ²¹\t-3\n"));
    SimulationConfig cfg;
    cfg.n_concepts = 12;
    cfg.n_daughters = 4;
    cfg.seed = 5;
    roundtrip(simulate_regular(cfg));  // includes alignments
}

TEST_CASE("subsample with k equal to the doculect count is the identity") {
    const Wordlist wl = parse_wordlist(fixtures::kFourLanguages);
    const Wordlist sub = subsample(wl, 4, 123);
    CHECK(sub == wl);
}

TEST_CASE("subsample is deterministic and seed-sensitive") {
    SimulationConfig cfg;
    cfg.n_concepts = 10;
    cfg.n_daughters = 20;
    cfg.seed = 9;
    const Wordlist wl = simulate_regular(cfg);

    CHECK(subsample(wl, 5, 42) == subsample(wl, 5, 42));

    int differing = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        if (subsample(wl, 5, seed).doculects != subsample(wl, 5, seed + 1000).doculects) {
            ++differing;
        }
    }
    CHECK(differing >= 99);
}

TEST_CASE("subsample is a projection of the input") {
    SimulationConfig cfg;
    cfg.n_concepts = 15;
    cfg.n_daughters = 8;
    cfg.seed = 77;
    const Wordlist wl = simulate_regular(cfg);
    const Wordlist sub = subsample(wl, 3, 1);
    CHECK(sub.doculects.size() == 3);
    for (const WordForm& form : sub.forms) {
        CHECK(std::find(wl.forms.begin(), wl.forms.end(), form) != wl.forms.end());
    }
    // Doculect order preserved relative to the input.
    std::vector<std::size_t> positions;
    for (const std::string& d : sub.doculects) positions.push_back(*wl.doculect_index(d));
    CHECK(std::is_sorted(positions.begin(), positions.end()));
}

TEST_CASE("subsample rejects oversized samples") {
    const Wordlist wl = parse_wordlist(fixtures::kFourLanguages);
    CHECK_THROWS_AS(subsample(wl, 5, 0), InvalidSample);
}

TEST_CASE("subsample drops all-gap alignment columns after row removal") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\tALIGNMENT\n"
        "1\tL1\tx\tk a n a\t1\tk a n a\n"
        "2\tL2\tx\tk a n\t1\tk a n -\n"
        "3\tL3\tx\tk a n\t1\tk a n -\n");
    // Remove L1; the trailing column is now all gaps.
    Wordlist sub = wl;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        sub = subsample(wl, 2, seed);
        if (!sub.doculect_index("L1")) break;
    }
    REQUIRE_FALSE(sub.doculect_index("L1"));
    REQUIRE(sub.alignments.contains(1));
    CHECK(sub.alignments.at(1).width == 3);
}

TEST_CASE("inventory partitions attested segments by class") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n"
        "1\tL1\tx\tk a n\t1\n"
        "2\tL1\ty\tr a l e\t2\n"
        "3\tL2\tz\ta\t3\n");
    const Inventory inv = inventory(wl, "L1");
    std::set<std::string> consonants;
    for (const Segment& s : inv.consonants) consonants.insert(s.token);
    std::set<std::string> vowels;
    for (const Segment& s : inv.vowels) vowels.insert(s.token);
    CHECK(consonants == std::set<std::string>{"k", "n", "r", "l"});
    CHECK(vowels == std::set<std::string>{"a", "e"});

    const Inventory only_vowel = inventory(wl, "L2");
    CHECK(only_vowel.consonants.empty());
    CHECK(only_vowel.vowels.size() == 1);

    CHECK_THROWS_AS(inventory(wl, "L9"), UnknownDoculect);
}

TEST_CASE("inventory excludes tone and marker segments") {
    const Wordlist wl = parse_wordlist(
        "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID\n1\tL1\tx\tm a ²¹ +\t1\n");
    const Inventory inv = inventory(wl, "L1");
    CHECK(inv.consonants.size() == 1);
    CHECK(inv.vowels.size() == 1);
}

TEST_CASE("inventory equals a brute-force scan") {
    SimulationConfig cfg;
    cfg.n_concepts = 30;
    cfg.seed = 3;
    const Wordlist wl = simulate_regular(cfg);
    for (const std::string& doc : wl.doculects) {
        const Inventory inv = inventory(wl, doc);
        std::set<Segment> consonants;
        std::set<Segment> vowels;
        for (const WordForm& form : wl.forms) {
            if (form.doculect != doc) continue;
            for (const Segment& seg : form.segments) {
                if (seg.klass == SegmentClass::Consonant) consonants.insert(seg);
                if (seg.klass == SegmentClass::Vowel) vowels.insert(seg);
            }
        }
        CHECK(inv.consonants == consonants);
        CHECK(inv.vowels == vowels);
        // Simulated inventories stay within the configured pools.
        CHECK(inv.vowels.size() <= 4);
        CHECK(inv.consonants.size() <= 10);
    }
}
