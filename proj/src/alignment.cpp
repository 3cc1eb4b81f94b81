#include "correg/alignment.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "correg/errors.hpp"

namespace correg {

int cell_score(const Segment& a, const Segment& b) {
    if (a.token == b.token) return 2;
    if (a.klass == b.klass) return 1;
    return -2;
}

PairwiseAlignment pairwise_align(std::span<const Segment> x, std::span<const Segment> y) {
    const std::size_t m = x.size();
    const std::size_t n = y.size();
    if (m == 0 || n == 0) throw Error("pairwise_align: empty sequence");

    std::vector<std::vector<int>> f(m + 1, std::vector<int>(n + 1, 0));
    for (std::size_t i = 1; i <= m; ++i) f[i][0] = f[i - 1][0] + kGapScore;
    for (std::size_t j = 1; j <= n; ++j) f[0][j] = f[0][j - 1] + kGapScore;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            f[i][j] = std::max({f[i - 1][j - 1] + cell_score(x[i - 1], y[j - 1]),
                                f[i - 1][j] + kGapScore, f[i][j - 1] + kGapScore});
        }
    }

    PairwiseAlignment out;
    out.score = f[m][n];
    std::size_t i = m;
    std::size_t j = n;
    std::vector<CellValue> rx;
    std::vector<CellValue> ry;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 &&
            f[i][j] == f[i - 1][j - 1] + cell_score(x[i - 1], y[j - 1])) {
            rx.push_back(CellValue::sound(x[i - 1]));
            ry.push_back(CellValue::sound(y[j - 1]));
            --i;
            --j;
        } else if (i > 0 && f[i][j] == f[i - 1][j] + kGapScore) {
            rx.push_back(CellValue::sound(x[i - 1]));
            ry.push_back(CellValue::gap());
            --i;
        } else {
            rx.push_back(CellValue::gap());
            ry.push_back(CellValue::sound(y[j - 1]));
            --j;
        }
    }
    out.x.assign(rx.rbegin(), rx.rend());
    out.y.assign(ry.rbegin(), ry.rend());
    return out;
}

namespace {

// Most frequent non-gap segment of each profile column; ties go to the value
// seen first scanning rows top-down.
std::vector<Segment> profile_consensus(
    const std::vector<std::vector<CellValue>>& rows, std::size_t width) {
    std::vector<Segment> consensus;
    consensus.reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
        std::map<std::string, std::pair<int, std::size_t>> counts;  // token -> (count, first row)
        const Segment* first_best = nullptr;
        int best_count = 0;
        std::size_t best_first = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const CellValue& cell = rows[r][c];
            if (!cell.is_sound()) continue;
            auto [it, inserted] = counts.try_emplace(cell.segment().token, 0, r);
            it->second.first += 1;
            if (it->second.first > best_count ||
                (it->second.first == best_count && it->second.second < best_first)) {
                best_count = it->second.first;
                best_first = it->second.second;
                first_best = &cell.segment();
            }
        }
        if (first_best == nullptr) throw Error("progressive_align: all-gap profile column");
        consensus.push_back(*first_best);
    }
    return consensus;
}

}  // namespace

Alignment progressive_align(const Wordlist& wl, const std::vector<const WordForm*>& members) {
    if (members.size() < 2) throw TooSmall("progressive alignment needs >= 2 members");

    const std::size_t n = members.size();

    // Guide order: average pairwise score, descending; ties by doculect order.
    std::vector<double> avg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int s = pairwise_align(members[i]->segments, members[j]->segments).score;
            avg[i] += s;
            avg[j] += s;
        }
    }
    for (double& a : avg) a /= static_cast<double>(n - 1);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (avg[a] != avg[b]) return avg[a] > avg[b];
        const std::size_t da = wl.doculect_index(members[a]->doculect).value_or(a);
        const std::size_t db = wl.doculect_index(members[b]->doculect).value_or(b);
        if (da != db) return da < db;
        return members[a]->id < members[b]->id;
    });

    // Grow a profile, one sequence at a time, against the running consensus.
    std::vector<std::vector<CellValue>> rows;  // in guide order
    std::size_t width = members[order[0]]->segments.size();
    rows.emplace_back();
    for (const Segment& seg : members[order[0]]->segments) {
        rows.back().push_back(CellValue::sound(seg));
    }
    for (std::size_t k = 1; k < n; ++k) {
        const std::vector<Segment> consensus = profile_consensus(rows, width);
        const PairwiseAlignment pa =
            pairwise_align(consensus, members[order[k]]->segments);
        // Where the consensus row gained a gap, splice a gap column into every
        // existing profile row; existing gaps are never removed.
        std::vector<std::vector<CellValue>> next(rows.size());
        std::vector<CellValue> added;
        std::size_t src = 0;
        for (std::size_t c = 0; c < pa.x.size(); ++c) {
            if (pa.x[c].is_gap()) {
                for (std::size_t r = 0; r < rows.size(); ++r) next[r].push_back(CellValue::gap());
            } else {
                for (std::size_t r = 0; r < rows.size(); ++r) next[r].push_back(rows[r][src]);
                ++src;
            }
            added.push_back(pa.y[c]);
        }
        rows = std::move(next);
        rows.push_back(std::move(added));
        width = pa.x.size();
    }

    // Emit rows in doculect order so the result does not depend on the order
    // the members were passed in.
    Alignment alig;
    alig.cogid = members[0]->cogid;
    alig.width = width;
    std::vector<std::size_t> position(n);
    for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;
    std::vector<std::size_t> emit(n);
    for (std::size_t i = 0; i < n; ++i) emit[i] = i;
    std::sort(emit.begin(), emit.end(), [&](std::size_t a, std::size_t b) {
        const std::size_t da = wl.doculect_index(members[a]->doculect).value_or(a);
        const std::size_t db = wl.doculect_index(members[b]->doculect).value_or(b);
        if (da != db) return da < db;
        return members[a]->id < members[b]->id;
    });
    for (std::size_t i : emit) {
        alig.rows.emplace_back(members[i]->id, rows[position[i]]);
    }

    // Profile merging cannot create all-gap columns, but normalize anyway.
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
    if (keep.size() != alig.width) {
        for (auto& [id, cells] : alig.rows) {
            std::vector<CellValue> trimmed;
            for (std::size_t c : keep) trimmed.push_back(cells[c]);
            cells = std::move(trimmed);
        }
        alig.width = keep.size();
    }
    return alig;
}

Wordlist ensure_alignments(const Wordlist& wl) {
    Wordlist out = wl;
    for (const CognateSet& set : cognate_sets(out)) {
        if (out.alignments.contains(set.cogid)) continue;
        out.alignments.emplace(set.cogid, progressive_align(out, set.members));
    }
    return out;
}

}  // namespace correg
