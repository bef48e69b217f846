#pragma once

#include "bounds.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace bstlab {

// Exact minimum arborally-satisfied superset search. Feasible for tiny
// grids only; everything else in the library is measured against it.
struct OracleLimits {
    long long max_nodes = 200000; // search-tree nodes before giving up
    int max_cells = 64;           // grid cells (n*m) the exact search accepts
};

struct OracleResult {
    bool optimal = false;         // true when minimality was certified by exhaustion
    long long nodes_explored = 0;
    PointSet superset;            // the found (or fallback) superset, an ASS
    std::vector<Point> added;     // superset minus the input, row-major order

    int min_size() const { return superset.size(); }
};

namespace detail {

// First unsatisfied pair in row-major order of the second point, then the
// first; nullopt when the set is arborally satisfied.
inline std::optional<std::pair<Point, Point>> first_unsatisfied(const PointSet &S) {
    const auto &pts = S.points();
    for (std::size_t b = 1; b < pts.size(); ++b)
        for (std::size_t a = 0; a < b; ++a) {
            const Point p = pts[a], q = pts[b];
            if (p.key == q.key || p.time == q.time)
                continue;
            if (!rect_has_witness(S, p, q))
                return std::make_pair(p, q);
        }
    return std::nullopt;
}

inline std::uint64_t grid_bit(const PointSet &S, Point p) {
    return 1ULL << (static_cast<std::uint64_t>(p.time - 1) * S.n() + (p.key - 1));
}

struct OracleSearch {
    long long max_nodes;
    long long nodes = 0;
    bool budget_hit = false;
    std::unordered_set<std::uint64_t> seen; // states already expanded this round

    bool dfs(PointSet &S, std::uint64_t state, int remaining, std::vector<Point> &added) {
        if (nodes >= max_nodes) {
            budget_hit = true;
            return false;
        }
        ++nodes;
        const auto bad = first_unsatisfied(S);
        if (!bad)
            return true;
        if (remaining == 0)
            return false;
        if (!seen.insert(state).second)
            return false;
        const auto [p, q] = *bad;
        const Key klo = std::min(p.key, q.key), khi = std::max(p.key, q.key);
        const Time tlo = std::min(p.time, q.time), thi = std::max(p.time, q.time);
        for (Time t = tlo; t <= thi; ++t)
            for (Key k = klo; k <= khi; ++k) {
                const Point c{k, t};
                if ((c == p) || (c == q) || S.contains(c))
                    continue;
                S.insert(c);
                added.push_back(c);
                if (dfs(S, state | grid_bit(S, c), remaining - 1, added))
                    return true;
                added.pop_back();
                S.erase(c);
            }
        return false;
    }
};

// An always-valid superset to fall back on: the greedy sweep when the input
// is one-point-per-row, the full grid otherwise (a complete grid is an ASS).
inline PointSet fallback_superset(const PointSet &G) {
    if (G.size() == G.m()) {
        bool shaped = true;
        const auto &pts = G.points();
        for (int i = 0; i < G.size(); ++i)
            if (pts[i].time != i + 1)
                shaped = false;
        if (shaped)
            return greedy_superset(G);
    }
    std::vector<Point> all;
    for (Time t = 1; t <= G.m(); ++t)
        for (Key k = 1; k <= G.n(); ++k)
            all.push_back({k, t});
    return PointSet::from_points(G.n(), G.m(), all);
}

inline std::vector<Point> set_difference(const PointSet &big, const PointSet &small) {
    std::vector<Point> out;
    for (const Point &p : big.points())
        if (!small.contains(p))
            out.push_back(p);
    return out;
}

} // namespace detail

// Iterative deepening on the number of added grid points, branching on the
// first unsatisfied pair and trying every grid point of its closed
// rectangle. States are deduplicated per deepening round, so the search is
// bounded by the number of addition subsets even on adversarial inputs.
// When the node budget (or the grid-size gate) is exceeded the result is
// the fallback superset, explicitly marked non-optimal.
inline OracleResult min_ass_superset(const PointSet &G, OracleLimits limits = {}) {
    OracleResult res;
    if (G.size() == 0) {
        res.optimal = true;
        res.superset = G;
        return res;
    }
    const PointSet fallback = detail::fallback_superset(G);
    if (static_cast<long long>(G.n()) * G.m() > limits.max_cells) {
        res.superset = fallback;
        res.added = detail::set_difference(fallback, G);
        return res; // non-optimal: grid too large for the exact search
    }
    detail::OracleSearch search{limits.max_nodes};
    const int kmax = fallback.size() - G.size();
    for (int k = 0; k <= kmax; ++k) {
        if (k == kmax) {
            // every smaller addition count was exhausted: the fallback is minimal
            res.superset = fallback;
            res.added = detail::set_difference(fallback, G);
            res.optimal = !search.budget_hit;
            break;
        }
        PointSet S = G;
        std::vector<Point> added;
        search.seen.clear();
        if (search.dfs(S, 0, k, added)) {
            std::sort(added.begin(), added.end(), row_less);
            res.superset = S;
            res.added = std::move(added);
            res.optimal = true;
            break;
        }
        if (search.budget_hit) {
            res.superset = fallback;
            res.added = detail::set_difference(fallback, G);
            res.optimal = false;
            break;
        }
    }
    res.nodes_explored = search.nodes;
    return res;
}

struct TransposeDuality {
    OracleResult primal, dual;
    bool both_optimal = false;
    bool sizes_match = false;

    bool verified() const { return both_optimal && sizes_match; }
};

// The minimum superset size is invariant under swapping the key and time
// axes; exact whenever both searches complete.
inline TransposeDuality verify_transpose_duality(const SearchSequence &x,
                                                 OracleLimits limits = {}) {
    const PointSet G = from_sequence(x);
    TransposeDuality td;
    td.primal = min_ass_superset(G, limits);
    td.dual = min_ass_superset(transpose(G), limits);
    td.both_optimal = td.primal.optimal && td.dual.optimal;
    td.sizes_match = td.primal.min_size() == td.dual.min_size();
    return td;
}

// One row of the exhaustive ground-truth table.
struct CensusRow {
    std::string x;       // the sequence as a digit string
    int min_ass = 0;     // oracle minimum superset size
    bool optimal = false;
    int greedy = 0;      // greedy superset size
    long long irb = 0;   // independent-rectangle total
    long long alt = 0;   // alternation bound
    long long funnel = 0;
};

// Every sequence in [1..n]^m, with oracle, greedy, and lower-bound columns.
inline std::vector<CensusRow> exhaustive_small_census(int n, int m, OracleLimits limits = {}) {
    if (n < 1 || n > 9)
        throw std::invalid_argument("census: n must be in [1..9] for digit-string encoding");
    if (m < 1)
        throw std::invalid_argument("census: m must be positive");
    std::vector<CensusRow> rows;
    std::vector<Key> keys(m, 1);
    for (;;) {
        const SearchSequence x = make_sequence(n, keys);
        const PointSet G = from_sequence(x);
        CensusRow row;
        for (Key k : keys)
            row.x += static_cast<char>('0' + k);
        const OracleResult orc = min_ass_superset(G, limits);
        row.min_ass = orc.min_size();
        row.optimal = orc.optimal;
        row.greedy = greedy_superset(G).size();
        row.irb = irb_total(G);
        row.alt = alternation_bound(G);
        row.funnel = funnel_bound(G);
        rows.push_back(std::move(row));
        int i = m - 1;
        while (i >= 0 && keys[i] == n)
            keys[i--] = 1;
        if (i < 0)
            break;
        ++keys[i];
    }
    return rows;
}

inline void write_census_csv(std::ostream &os, const std::vector<CensusRow> &rows) {
    os << "X,min_ass,greedy,irb,alt,funnel\n";
    for (const auto &r : rows)
        os << r.x << ',' << r.min_ass << ',' << r.greedy << ',' << r.irb << ',' << r.alt
           << ',' << r.funnel << '\n';
}

// Necessary minimality condition checkable without re-running the search:
// removing any single added point breaks satisfaction.
inline bool witness_locally_minimal(const PointSet &G, const OracleResult &res) {
    PointSet S = res.superset;
    for (const Point &p : res.added) {
        S.erase(p);
        const bool still = is_ass(S);
        S.insert(p);
        if (still)
            return false;
    }
    (void)G;
    return true;
}

} // namespace bstlab
