#pragma once

#include "bst_machine.hpp"
#include "geometry.hpp"
#include "sequence.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace bstlab {

// An axis-aligned rectangle spanned by two points of the plane view. Sign
// convention: "plus" means the upper point lies to the right of the lower
// one, "minus" the mirror image.
struct Rect {
    Point lower, upper;

    bool plus() const { return upper.key > lower.key; }

    std::array<Point, 4> corners() const {
        return {lower, upper, Point{lower.key, upper.time}, Point{upper.key, lower.time}};
    }
};

// No corner of any rectangle may lie strictly inside another rectangle
// (strictly in both coordinates).
inline bool is_independent(const std::vector<Rect> &rects) {
    auto strictly_inside = [](Point c, const Rect &r) {
        const Key klo = std::min(r.lower.key, r.upper.key), khi = std::max(r.lower.key, r.upper.key);
        const Time tlo = r.lower.time, thi = r.upper.time;
        return c.key > klo && c.key < khi && c.time > tlo && c.time < thi;
    };
    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = 0; j < rects.size(); ++j) {
            if (i == j)
                continue;
            for (Point c : rects[i].corners())
                if (strictly_inside(c, rects[j]))
                    return false;
        }
    return true;
}

struct IrbSweep {
    std::vector<Rect> rects; // processed rectangles, in processing order
    PointSet added;          // the corners placed (upper row, lower point's column)
    PointSet result;         // input plus additions
};

namespace detail {

// One signed half of the independent-rectangle sweep. Processes empty
// rectangles lowest-upper-time first (ties: smaller lower key, then smaller
// upper key), placing the missing corner on the upper row in the lower
// point's column. Additions can spawn new empty rectangles whose upper row
// is the current one, never a lower one, so a single bottom-to-top pass with
// per-row fixpoints implements the global ordering.
inline IrbSweep irb_sweep(const PointSet &G, bool plus) {
    IrbSweep out{{}, PointSet(G.n(), G.m()), G};
    PointSet &P = out.result;
    for (Time t = 1; t <= G.m(); ++t) {
        for (;;) {
            std::optional<std::pair<Point, Point>> pick; // (lower, upper)
            for (Point u : P.row(t)) {
                for (Point p : funnel(P, u)) {
                    const bool side_ok = plus ? p.key < u.key : p.key > u.key;
                    if (!side_ok)
                        continue;
                    if (!pick || p.key < pick->first.key ||
                        (p.key == pick->first.key && u.key < pick->second.key))
                        pick = {p, u};
                }
            }
            if (!pick)
                break;
            out.rects.push_back({pick->first, pick->second});
            const Point corner{pick->first.key, t};
            P.insert(corner);
            out.added.insert(corner);
        }
    }
    return out;
}

} // namespace detail

inline IrbSweep irb_sweep_plus(const PointSet &G) { return detail::irb_sweep(G, true); }
inline IrbSweep irb_sweep_minus(const PointSet &G) { return detail::irb_sweep(G, false); }

// Size of the signed independent-rectangle family: additions of both signed
// sweeps, each run on the original set.
inline long long irb_total(const PointSet &G) {
    return static_cast<long long>(irb_sweep_plus(G).rects.size()) +
           static_cast<long long>(irb_sweep_minus(G).rects.size());
}

// --- alternation lower bound -----------------------------------------------

// Recursive median split of the key range: the dividing line of [lo, hi]
// runs between floor((lo+hi)/2) and the next key. Counts, per range, how
// often consecutive searches inside the range switch sides of its line.
inline long long alternation_bound(const PointSet &G) {
    require_sequence_shaped(G);
    std::vector<Key> keys;
    keys.reserve(G.size());
    for (Point p : G.points()) // row-major == time order
        keys.push_back(p.key);
    // Recurse with index lists to keep each level O(items).
    std::vector<Key> cur = std::move(keys);
    struct Frame {
        Key lo, hi;
        std::vector<Key> items;
    };
    std::vector<Frame> work;
    work.push_back({1, G.n(), std::move(cur)});
    long long total = 0;
    while (!work.empty()) {
        Frame f = std::move(work.back());
        work.pop_back();
        if (f.lo >= f.hi || f.items.empty())
            continue;
        const Key mid = (f.lo + f.hi) / 2;
        int prev = -1;
        std::vector<Key> left, right;
        for (Key k : f.items) {
            const int side = k <= mid ? 0 : 1;
            if (prev != -1 && side != prev)
                ++total;
            prev = side;
            (side == 0 ? left : right).push_back(k);
        }
        work.push_back({f.lo, mid, std::move(left)});
        work.push_back({static_cast<Key>(mid + 1), f.hi, std::move(right)});
    }
    return total;
}

// The same number, computed the tree way: a balanced hierarchy whose nodes
// are the key ranges of the median recursion, each holding a preferred-side
// mark. A search walks from the top range to its key's singleton range; each
// time it enters a range on the other side of that range's line than the
// previous visitor did, the mark flips and counts. First settings are free.
inline long long alternation_by_reference_tree(const SearchSequence &x) {
    validate(x);
    // Build the range ladder once; node 0 is [1..n].
    struct Node {
        Key lo, hi, mid;
        int child[2]; // -1 = singleton below
        int preferred = -1;
    };
    std::vector<Node> nodes;
    auto build = [&](auto &&self, Key lo, Key hi) -> int {
        if (lo >= hi)
            return -1;
        const Key mid = (lo + hi) / 2;
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({lo, hi, mid, {-1, -1}, -1});
        const int l = self(self, lo, mid);
        const int r = self(self, static_cast<Key>(mid + 1), hi);
        nodes[id].child[0] = l;
        nodes[id].child[1] = r;
        return id;
    };
    build(build, 1, x.n);
    long long changes = 0;
    for (Key k : x.keys) {
        int v = nodes.empty() ? -1 : 0;
        while (v != -1) {
            Node &nd = nodes[v];
            const int side = k <= nd.mid ? 0 : 1;
            if (nd.preferred != -1 && nd.preferred != side)
                ++changes;
            nd.preferred = side;
            v = nd.child[side];
        }
    }
    return changes;
}

// --- funnel lower bound ------------------------------------------------------

// The funnel of search i: points of G strictly below (x_i, i), with a
// different key, whose rectangle with (x_i, i) is empty in G.
inline std::vector<Point> funnel_of(const PointSet &G, Time i) {
    require_sequence_shaped(G);
    if (i < 1 || i > G.m())
        throw std::invalid_argument("funnel_of: row outside sequence");
    return funnel(G, G.row(i).front());
}

// Total, over all searches, of the side alternations within each funnel
// taken in time order (left/right of the searched key).
inline long long funnel_bound(const PointSet &G) {
    require_sequence_shaped(G);
    long long total = 0;
    for (Time i = 1; i <= G.m(); ++i) {
        const Point q = G.row(i).front();
        int prev = -1;
        for (Point p : funnel(G, q)) { // already in time order
            const int side = p.key < q.key ? 0 : 1;
            if (prev != -1 && side != prev)
                ++total;
            prev = side;
        }
    }
    return total;
}

// One move-to-root search: counts the direction changes (turns) on the
// root-to-x path, then walks down and rotates x all the way up. Shared by
// the tree flavor of the funnel bound and the move-to-root algorithm.
inline int move_to_root_once(BstMachine &m, Key x) {
    int turns = 0, prev = -1;
    for (Key c = m.root(); c != x;) {
        const int dir = x < c ? 0 : 1;
        if (prev != -1 && dir != prev)
            ++turns;
        prev = dir;
        c = dir == 0 ? m.left(c) : m.right(c);
    }
    walk_from_root(m, x);
    while (m.parent(x))
        m.apply(UnitOp::rotate_with_parent);
    return turns;
}

struct MtrFunnelRun {
    long long turns_total = 0;
    std::vector<int> per_search_turns;
    Trace trace;
};

// Tree view of the funnel bound: run move-to-root from the canonical left
// path and count turns on each search path. Equals the geometric funnel
// count up to the additive start-up difference caused by the initial tree.
inline MtrFunnelRun funnel_by_move_to_root(const SearchSequence &x) {
    validate(x);
    MtrFunnelRun run;
    BstMachine m(x.n);
    run.trace = execute_with(m, x, [&](BstMachine &mm, Key k) {
        const int t = move_to_root_once(mm, k);
        run.per_search_turns.push_back(t);
        run.turns_total += t;
    });
    return run;
}

// --- classic cost formulas ---------------------------------------------------

// Distinct keys searched in the window reaching back through the previous
// occurrence of x_i (the current search included); n when x_i is new.
inline double working_set_bound(const SearchSequence &x) {
    validate(x);
    double total = 0;
    std::vector<int> last_of(x.n + 1, -1); // latest position of each key so far
    for (int i = 0; i < x.length(); ++i) {
        const Key k = x.keys[i];
        const int prev = last_of[k];
        last_of[k] = i;
        long long w = x.n;
        if (prev != -1) {
            w = 0;
            for (Key c = 1; c <= x.n; ++c)
                if (last_of[c] > prev)
                    ++w;
        }
        total += std::log2(static_cast<double>(w) + 1.0);
    }
    return total;
}

// Sum over consecutive searches of log2(key distance + 2).
inline double dynamic_finger_bound(const SearchSequence &x) {
    validate(x);
    double total = 0;
    for (int i = 1; i < x.length(); ++i)
        total += std::log2(std::abs(x.keys[i] - x.keys[i - 1]) + 2.0);
    return total;
}

// Per search, the cheapest mixed term over all anchor keys j: the anchor's
// working-set age plus the key distance. Dominated (up to 2 per term) by
// both formulas above.
inline double unified_bound(const SearchSequence &x) {
    validate(x);
    double total = 0;
    std::vector<int> last_of(x.n + 1, -1);
    std::vector<int> sorted_last(x.n);
    for (int i = 0; i < x.length(); ++i) {
        const Key k = x.keys[i];
        const int prev_cur = last_of[k];
        last_of[k] = i; // the window of any anchor ends at the current search
        for (Key c = 1; c <= x.n; ++c)
            sorted_last[c - 1] = last_of[c];
        std::sort(sorted_last.begin(), sorted_last.end());
        auto distinct_since = [&](int p) { // #keys whose latest occurrence is > p
            return static_cast<long long>(sorted_last.end() -
                                          std::upper_bound(sorted_last.begin(),
                                                           sorted_last.end(), p));
        };
        double best = std::numeric_limits<double>::infinity();
        for (Key j = 1; j <= x.n; ++j) {
            const int pj = j == k ? prev_cur : last_of[j];
            const long long w = pj == -1 ? x.n : distinct_since(pj);
            best = std::min(best,
                            std::log2(static_cast<double>(w) + std::abs(k - j) + 2.0));
        }
        total += best;
    }
    return total;
}

// --- report ------------------------------------------------------------------

struct BoundReport {
    int n = 0, m = 0;
    long long greedy_size = 0;
    long long irb_plus = 0, irb_minus = 0, irb_total = 0;
    long long alternation = 0;
    long long funnel = 0;
    double working_set = 0, dynamic_finger = 0, unified = 0;
};

inline BoundReport compute_bound_report(const SearchSequence &x) {
    validate(x);
    const PointSet G = from_sequence(x);
    BoundReport r;
    r.n = x.n;
    r.m = x.length();
    r.greedy_size = greedy_superset(G).size();
    r.irb_plus = static_cast<long long>(irb_sweep_plus(G).rects.size());
    r.irb_minus = static_cast<long long>(irb_sweep_minus(G).rects.size());
    r.irb_total = r.irb_plus + r.irb_minus;
    r.alternation = alternation_bound(G);
    r.funnel = funnel_bound(G);
    r.working_set = working_set_bound(x);
    r.dynamic_finger = dynamic_finger_bound(x);
    r.unified = unified_bound(x);
    return r;
}

} // namespace bstlab
