#pragma once

#include "sequence.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace bstlab {

// A point (key, time) of the plane view: "key was touched at time t".
struct Point {
    Key key = 0;
    Time time = 0;

    friend bool operator==(const Point &, const Point &) = default;
};

// Row-major order: by time, then by key. This is the storage and enumeration
// order used everywhere (sweeps go row by row, bottom row = time 1 first).
inline bool row_less(Point a, Point b) {
    return a.time != b.time ? a.time < b.time : a.key < b.key;
}

// A finite set of points inside the grid [1..n] x [1..m], kept sorted in
// row-major order with no duplicates.
class PointSet {
  public:
    PointSet() = default;
    PointSet(int n, int m) : n_(n), m_(m) {
        if (n < 0 || m < 0)
            throw std::invalid_argument("point set: negative bounds");
    }

    static PointSet from_points(int n, int m, std::vector<Point> pts) {
        PointSet p(n, m);
        std::sort(pts.begin(), pts.end(), row_less);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i] == pts[i + 1])
                throw std::invalid_argument("point set: duplicate point");
        for (Point q : pts)
            p.check_bounds(q);
        p.pts_ = std::move(pts);
        return p;
    }

    int n() const { return n_; }
    int m() const { return m_; }
    int size() const { return static_cast<int>(pts_.size()); }
    bool empty() const { return pts_.empty(); }
    const std::vector<Point> &points() const { return pts_; }

    bool contains(Point q) const {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), q, row_less);
        return it != pts_.end() && *it == q;
    }

    // Inserts q; returns false if it was already present.
    bool insert(Point q) {
        check_bounds(q);
        auto it = std::lower_bound(pts_.begin(), pts_.end(), q, row_less);
        if (it != pts_.end() && *it == q)
            return false;
        pts_.insert(it, q);
        return true;
    }

    bool erase(Point q) {
        auto it = std::lower_bound(pts_.begin(), pts_.end(), q, row_less);
        if (it == pts_.end() || !(*it == q))
            return false;
        pts_.erase(it);
        return true;
    }

    // All points with the given time, in key order.
    std::vector<Point> row(Time t) const {
        std::vector<Point> out;
        auto lo = std::lower_bound(pts_.begin(), pts_.end(), Point{0, t}, row_less);
        for (auto it = lo; it != pts_.end() && it->time == t; ++it)
            out.push_back(*it);
        return out;
    }

    friend bool operator==(const PointSet &, const PointSet &) = default;

  private:
    void check_bounds(Point q) const {
        if (q.key < 1 || q.key > n_ || q.time < 1 || q.time > m_)
            throw std::invalid_argument("point set: point (" + std::to_string(q.key) + "," +
                                        std::to_string(q.time) + ") outside grid [1.." +
                                        std::to_string(n_) + "]x[1.." + std::to_string(m_) + "]");
    }

    int n_ = 0, m_ = 0;
    std::vector<Point> pts_; // row-major sorted, unique
};

// Plane view of a search sequence: one point (x_i, i) per search.
inline PointSet from_sequence(const SearchSequence &x) {
    validate(x);
    PointSet p(x.n, x.length());
    std::vector<Point> pts;
    pts.reserve(x.keys.size());
    for (int i = 0; i < x.length(); ++i)
        pts.push_back({x.keys[i], i + 1});
    return PointSet::from_points(x.n, x.length(), std::move(pts));
}

// Reflection across the main diagonal: keys become times and vice versa.
inline PointSet transpose(const PointSet &p) {
    std::vector<Point> pts;
    pts.reserve(p.points().size());
    for (Point q : p.points())
        pts.push_back({q.time, q.key});
    return PointSet::from_points(p.m(), p.n(), std::move(pts));
}

// True if the closed rectangle spanned by a and b contains a point of P other
// than a and b themselves. Points sharing a coordinate with a or b do count.
inline bool rect_has_witness(const PointSet &P, Point a, Point b) {
    const Key klo = std::min(a.key, b.key), khi = std::max(a.key, b.key);
    const Time tlo = std::min(a.time, b.time), thi = std::max(a.time, b.time);
    for (Point r : P.points()) {
        if (r.time < tlo)
            continue;
        if (r.time > thi)
            break;
        if (r.key < klo || r.key > khi || r == a || r == b)
            continue;
        return true;
    }
    return false;
}

// A pair is satisfied if it shares a coordinate (nothing to fix) or some third
// point lies in its closed rectangle. Both points must belong to P.
inline bool is_pair_satisfied(const PointSet &P, Point a, Point b) {
    if (!P.contains(a) || !P.contains(b))
        throw std::invalid_argument("is_pair_satisfied: point not in set");
    if (a.key == b.key || a.time == b.time)
        return true;
    return rect_has_witness(P, a, b);
}

// Every coordinate-distinct unsatisfied pair, reported as (lower, upper) and
// ordered row-major by lower point then upper point. Quadratic; meant for
// small instances and as the reference for the sweep checker below.
inline std::vector<std::pair<Point, Point>> unsatisfied_pairs(const PointSet &P) {
    std::vector<std::pair<Point, Point>> out;
    const auto &pts = P.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Point a = pts[i], b = pts[j];
            if (a.key == b.key || a.time == b.time)
                continue;
            if (!rect_has_witness(P, a, b))
                out.emplace_back(a, b);
        }
    return out;
}

inline bool is_ass_naive(const PointSet &P) { return unsatisfied_pairs(P).empty(); }

// Row sweep: walk rows bottom to top keeping, per column, the time of the
// latest point seen so far. A pair (p, q) with p below q is unsatisfied
// exactly when p is the latest point of its column and no column strictly
// between p and q (nor q's own column, nor p's row... any blocker in the
// closed rectangle) has been touched at or after p's time. Scanning columns
// outward from q with a running maximum finds any such pair in O(n) per point.
inline bool is_ass(const PointSet &P) {
    const int n = P.n();
    std::vector<Time> last(n + 1, 0); // last[c] = latest time of a point in column c, below current row
    const auto &pts = P.points();
    std::vector<Time> row_mark(n + 1, 0); // row_mark[c] = t if (c, t) in current row
    std::size_t i = 0;
    while (i < pts.size()) {
        const Time t = pts[i].time;
        std::size_t j = i;
        while (j < pts.size() && pts[j].time == t)
            ++j;
        for (std::size_t k = i; k < j; ++k)
            row_mark[pts[k].key] = t;
        auto eff = [&](Key c) { return row_mark[c] == t ? t : last[c]; };
        for (std::size_t k = i; k < j; ++k) {
            const Key x = pts[k].key;
            // Left side, then right side: any strictly-below latest point that
            // pokes over the running maximum forms an empty rectangle with (x, t).
            Time cur = last[x];
            for (Key c = x - 1; c >= 1; --c) {
                const Time e = eff(c);
                if (e > cur) {
                    if (e < t)
                        return false;
                    cur = e;
                }
            }
            cur = last[x];
            for (Key c = x + 1; c <= n; ++c) {
                const Time e = eff(c);
                if (e > cur) {
                    if (e < t)
                        return false;
                    cur = e;
                }
            }
        }
        for (std::size_t k = i; k < j; ++k) {
            row_mark[pts[k].key] = 0;
            last[pts[k].key] = t;
        }
        i = j;
    }
    return true;
}

// Points strictly below q that form empty (unsatisfied) rectangles with it,
// in time order. q itself need not belong to P. Points sharing q's column are
// never members but do block, as do points in q's own row.
inline std::vector<Point> funnel(const PointSet &P, Point q) {
    const int n = P.n();
    std::vector<Time> last(n + 1, 0);
    std::vector<Time> row_mark(n + 1, 0);
    for (Point r : P.points()) {
        if (r.time < q.time)
            last[r.key] = std::max(last[r.key], r.time);
        else if (r.time == q.time && !(r == q))
            row_mark[r.key] = r.time;
    }
    auto eff = [&](Key c) { return row_mark[c] ? row_mark[c] : last[c]; };
    std::vector<Point> left, right;
    Time cur = last[q.key];
    for (Key c = q.key - 1; c >= 1; --c) {
        const Time e = eff(c);
        if (e > cur) {
            if (e < q.time)
                left.push_back({c, e});
            cur = e;
        }
    }
    cur = last[q.key];
    for (Key c = q.key + 1; c <= n; ++c) {
        const Time e = eff(c);
        if (e > cur) {
            if (e < q.time)
                right.push_back({c, e});
            cur = e;
        }
    }
    std::vector<Point> out;
    out.reserve(left.size() + right.size());
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    std::sort(out.begin(), out.end(), row_less);
    return out;
}

// Reference implementation of funnel membership by direct rectangle scans.
inline std::vector<Point> funnel_naive(const PointSet &P, Point q) {
    std::vector<Point> out;
    for (Point p : P.points()) {
        if (p.time >= q.time || p.key == q.key)
            continue;
        if (!rect_has_witness(P, p, q))
            out.push_back(p);
    }
    std::sort(out.begin(), out.end(), row_less);
    return out;
}

// The sweep requires a sequence-shaped input: exactly one point per row.
inline void require_sequence_shaped(const PointSet &G) {
    if (G.size() != G.m())
        throw std::invalid_argument("expected one point per row (a sequence plane view)");
    Time prev = 0;
    for (Point p : G.points()) {
        if (p.time != prev + 1)
            throw std::invalid_argument("expected one point per row (a sequence plane view)");
        prev = p.time;
    }
}

// Bottom-to-top sweep that adds, on each row, the columns of the funnel of
// that row's point with respect to everything placed so far. The result is
// the smallest superset this online rule can produce; it is always
// arborally satisfied (tested, not assumed).
inline PointSet greedy_superset(const PointSet &G) {
    require_sequence_shaped(G);
    const int n = G.n(), m = G.m();
    std::vector<Time> last(n + 1, 0);
    std::vector<Point> out;
    out.reserve(G.size() * 2);
    for (Point p : G.points()) {
        const Key x = p.key;
        const Time t = p.time;
        out.push_back(p);
        Time cur = last[x];
        for (Key c = x - 1; c >= 1; --c)
            if (last[c] > cur) {
                cur = last[c];
                out.push_back({c, t});
                last[c] = t;
            }
        cur = last[x];
        for (Key c = x + 1; c <= n; ++c)
            if (last[c] > cur) {
                cur = last[c];
                out.push_back({c, t});
                last[c] = t;
            }
        last[x] = t;
    }
    (void)m;
    return PointSet::from_points(n, m, std::move(out));
}

// True when P is row-for-row reproducible by running `augment` on each prefix
// of G: the additions on row i may only depend on rows 1..i. The default
// reproduces the greedy sweep.
inline bool is_online_superset(
    const PointSet &G, const PointSet &P,
    const std::function<PointSet(const PointSet &)> &augment = [](const PointSet &g) {
        return greedy_superset(g);
    }) {
    require_sequence_shaped(G);
    if (P.n() != G.n() || P.m() != G.m())
        return false;
    for (Time t = 1; t <= G.m(); ++t) {
        std::vector<Point> prefix;
        for (Point p : G.points())
            if (p.time <= t)
                prefix.push_back(p);
        PointSet g_t = PointSet::from_points(G.n(), t, std::move(prefix));
        std::vector<Point> got = augment(g_t).row(t);
        if (got != P.row(t))
            return false;
    }
    return true;
}

// --- text round-trip: header "n m", then one "key time" line per point ---

inline void save_point_set(std::ostream &os, const PointSet &P) {
    os << P.n() << ' ' << P.m() << '\n';
    for (Point p : P.points())
        os << p.key << ' ' << p.time << '\n';
}

inline PointSet load_point_set(std::istream &is) {
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument("point set: empty input");
    std::istringstream head(line);
    int n = 0, m = 0;
    if (!(head >> n >> m))
        throw std::invalid_argument("point set: bad header, expected 'n m'");
    std::vector<Point> pts;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream row(line);
        Point p;
        if (!(row >> p.key >> p.time))
            throw std::invalid_argument("point set: bad point at line " + std::to_string(line_no));
        pts.push_back(p);
    }
    return PointSet::from_points(n, m, std::move(pts));
}

} // namespace bstlab
