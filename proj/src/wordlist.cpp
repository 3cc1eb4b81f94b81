#include "correg/wordlist.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

#include "correg/errors.hpp"
#include "correg/rng.hpp"

namespace correg {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::int64_t parse_int(std::string_view field, std::size_t line, const char* what) {
    std::int64_t value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw ParseError(line, std::string("non-integer ") + what + ": '" +
                                   std::string(field) + "'");
    }
    return value;
}

// Drops columns that consist entirely of gaps; keeps row order.
void drop_all_gap_columns(Alignment& alig) {
    if (alig.rows.empty()) {
        alig.width = 0;
        return;
    }
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < alig.width; ++c) {
        bool all_gaps = true;
        for (const auto& [id, cells] : alig.rows) {
            if (!cells[c].is_gap()) {
                all_gaps = false;
                break;
            }
        }
        if (!all_gaps) keep.push_back(c);
    }
    if (keep.size() == alig.width) return;
    for (auto& [id, cells] : alig.rows) {
        std::vector<CellValue> next;
        next.reserve(keep.size());
        for (std::size_t c : keep) next.push_back(cells[c]);
        cells = std::move(next);
    }
    alig.width = keep.size();
}

}  // namespace

std::optional<std::size_t> Wordlist::doculect_index(std::string_view name) const {
    for (std::size_t i = 0; i < doculects.size(); ++i) {
        if (doculects[i] == name) return i;
    }
    return std::nullopt;
}

Wordlist parse_wordlist(std::string_view text, std::vector<std::string>* warnings) {
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    std::vector<std::string_view> lines = split(text, '\n');
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(1, "empty document");
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    }

    // Header.
    const std::vector<std::string_view> header = split(lines[0], '\t');
    std::unordered_map<std::string, std::size_t> columns;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = upper(header[i]);
        if (!columns.emplace(name, i).second) {
            throw ParseError(1, "duplicate column: " + name);
        }
    }
    auto column = [&](const char* name) -> std::size_t {
        const auto it = columns.find(name);
        if (it == columns.end()) {
            throw ParseError(1, std::string("missing required column: ") + name);
        }
        return it->second;
    };
    const std::size_t col_id = column("ID");
    const std::size_t col_doculect = column("DOCULECT");
    const std::size_t col_concept = column("CONCEPT");
    const std::size_t col_tokens = column("TOKENS");
    const std::size_t col_cogid = column("COGID");
    const auto it_alignment = columns.find("ALIGNMENT");
    const bool has_alignment = it_alignment != columns.end();
    const std::size_t col_alignment = has_alignment ? it_alignment->second : 0;

    Wordlist wl;
    std::unordered_map<std::string, std::size_t> doculect_idx;
    std::unordered_set<std::int64_t> seen_ids;
    std::set<std::pair<std::string, std::int64_t>> seen_pairs;
    // Per form: provided alignment cells (empty when the field was blank).
    std::vector<std::vector<CellValue>> provided;

    for (std::size_t n = 1; n < lines.size(); ++n) {
        const std::size_t line_no = n + 1;
        if (lines[n].empty()) continue;
        const std::vector<std::string_view> fields = split(lines[n], '\t');
        if (fields.size() != header.size()) {
            throw ParseError(line_no, "expected " + std::to_string(header.size()) +
                                          " columns, got " + std::to_string(fields.size()));
        }

        WordForm form;
        form.id = parse_int(fields[col_id], line_no, "ID");
        form.doculect = std::string(fields[col_doculect]);
        form.gloss = std::string(fields[col_concept]);
        form.cogid = parse_int(fields[col_cogid], line_no, "COGID");
        if (form.doculect.empty()) throw ParseError(line_no, "empty DOCULECT");

        const std::string_view tokens = fields[col_tokens];
        if (tokens.empty()) throw ParseError(line_no, "empty TOKENS");
        for (std::string_view tok : split(tokens, ' ')) {
            if (!valid_token(tok)) {
                throw ParseError(line_no, "invalid segment token: '" + std::string(tok) + "'");
            }
            form.segments.push_back(make_segment(tok));
        }

        if (!seen_ids.insert(form.id).second) {
            throw ParseError(line_no, "duplicate ID " + std::to_string(form.id));
        }
        if (form.cogid > 0 &&
            !seen_pairs.emplace(form.doculect, form.cogid).second) {
            warn("duplicate (doculect, cogid) pair (" + form.doculect + ", " +
                 std::to_string(form.cogid) + "); keeping the first row");
        }
        if (!doculect_idx.contains(form.doculect)) {
            doculect_idx.emplace(form.doculect, wl.doculects.size());
            wl.doculects.push_back(form.doculect);
        }

        std::vector<CellValue> cells;
        if (has_alignment && !fields[col_alignment].empty()) {
            std::vector<Segment> non_gap;
            for (std::string_view tok : split(fields[col_alignment], ' ')) {
                if (tok == kGapSymbol) {
                    cells.push_back(CellValue::gap());
                } else {
                    if (!valid_token(tok)) {
                        throw ParseError(line_no,
                                         "invalid alignment token: '" + std::string(tok) + "'");
                    }
                    cells.push_back(CellValue::sound(make_segment(tok)));
                    non_gap.push_back(cells.back().segment());
                }
            }
            if (non_gap != form.segments) {
                throw AlignmentMismatch(form.id,
                                        "ALIGNMENT does not reproduce TOKENS when ungapped");
            }
        }
        provided.push_back(std::move(cells));
        wl.forms.push_back(std::move(form));
    }

    // Assemble provided alignments per cognate group: a group alignment is
    // kept only when every member row carries one and the widths agree.
    std::map<std::int64_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < wl.forms.size(); ++i) {
        if (wl.forms[i].cogid > 0) groups[wl.forms[i].cogid].push_back(i);
    }
    for (const auto& [cogid, rows] : groups) {
        if (rows.size() < 2) continue;
        const bool any = std::any_of(rows.begin(), rows.end(),
                                     [&](std::size_t i) { return !provided[i].empty(); });
        if (!any) continue;
        const bool all = std::all_of(rows.begin(), rows.end(),
                                     [&](std::size_t i) { return !provided[i].empty(); });
        if (!all) {
            warn("cognate set " + std::to_string(cogid) +
                 ": ALIGNMENT present on some rows only; ignoring it");
            continue;
        }
        Alignment alig;
        alig.cogid = cogid;
        alig.width = provided[rows[0]].size();
        for (std::size_t i : rows) {
            if (provided[i].size() != alig.width) {
                throw AlignmentMismatch(wl.forms[i].id,
                                        "ALIGNMENT width differs within cognate set " +
                                            std::to_string(cogid));
            }
            alig.rows.emplace_back(wl.forms[i].id, provided[i]);
        }
        drop_all_gap_columns(alig);
        wl.alignments.emplace(cogid, std::move(alig));
    }
    return wl;
}

std::string serialize_wordlist(const Wordlist& wl) {
    const bool with_alignment = !wl.alignments.empty();
    std::string out = "ID\tDOCULECT\tCONCEPT\tTOKENS\tCOGID";
    if (with_alignment) out += "\tALIGNMENT";
    out += '\n';
    for (const WordForm& form : wl.forms) {
        out += std::to_string(form.id);
        out += '\t';
        out += form.doculect;
        out += '\t';
        out += form.gloss;
        out += '\t';
        for (std::size_t i = 0; i < form.segments.size(); ++i) {
            if (i > 0) out += ' ';
            out += form.segments[i].token;
        }
        out += '\t';
        out += std::to_string(form.cogid);
        if (with_alignment) {
            out += '\t';
            const auto it = wl.alignments.find(form.cogid);
            if (it != wl.alignments.end()) {
                for (const auto& [id, cells] : it->second.rows) {
                    if (id != form.id) continue;
                    for (std::size_t c = 0; c < cells.size(); ++c) {
                        if (c > 0) out += ' ';
                        out += cells[c].display();
                    }
                    break;
                }
            }
        }
        out += '\n';
    }
    return out;
}

std::vector<CognateSet> cognate_sets(const Wordlist& wl) {
    std::map<std::int64_t, std::vector<const WordForm*>> groups;
    for (const WordForm& form : wl.forms) {
        if (form.cogid > 0) groups[form.cogid].push_back(&form);
    }
    std::vector<CognateSet> out;
    for (auto& [cogid, members] : groups) {
        if (members.size() < 2) continue;
        std::stable_sort(members.begin(), members.end(),
                         [&](const WordForm* a, const WordForm* b) {
                             return *wl.doculect_index(a->doculect) <
                                    *wl.doculect_index(b->doculect);
                         });
        out.push_back(CognateSet{cogid, std::move(members)});
    }
    return out;
}

Wordlist subsample(const Wordlist& wl, std::size_t k, std::uint64_t seed) {
    if (k > wl.doculects.size()) {
        throw InvalidSample("sample size " + std::to_string(k) + " exceeds " +
                            std::to_string(wl.doculects.size()) + " doculects");
    }
    Rng rng(mix_seed(seed, hash_str("subsample")));
    const std::vector<std::size_t> chosen = rng.sample_indices(wl.doculects.size(), k);

    Wordlist out;
    std::unordered_set<std::string> kept;
    for (std::size_t i : chosen) {
        out.doculects.push_back(wl.doculects[i]);
        kept.insert(wl.doculects[i]);
    }
    std::unordered_set<std::int64_t> kept_ids;
    for (const WordForm& form : wl.forms) {
        if (kept.contains(form.doculect)) {
            out.forms.push_back(form);
            kept_ids.insert(form.id);
        }
    }
    for (const auto& [cogid, alig] : wl.alignments) {
        Alignment next;
        next.cogid = cogid;
        next.width = alig.width;
        for (const auto& row : alig.rows) {
            if (kept_ids.contains(row.first)) next.rows.push_back(row);
        }
        if (next.rows.size() < 2) continue;
        drop_all_gap_columns(next);
        out.alignments.emplace(cogid, std::move(next));
    }
    return out;
}

Inventory inventory(const Wordlist& wl, std::string_view doculect) {
    if (!wl.doculect_index(doculect)) throw UnknownDoculect(std::string(doculect));
    Inventory inv;
    inv.doculect = std::string(doculect);
    for (const WordForm& form : wl.forms) {
        if (form.doculect != doculect) continue;
        for (const Segment& seg : form.segments) {
            if (seg.klass == SegmentClass::Consonant) {
                inv.consonants.insert(seg);
            } else if (seg.klass == SegmentClass::Vowel) {
                inv.vowels.insert(seg);
            }
        }
    }
    return inv;
}

}  // namespace correg
