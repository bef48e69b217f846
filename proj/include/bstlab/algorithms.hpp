#pragma once

#include "bounds.hpp"
#include "bst_machine.hpp"
#include "sequence.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bstlab {

// Children links of the balanced tree built by splitting [lo..hi] at
// floor((lo+hi)/2), recursively. This is the shape behind the static
// algorithm, the reference hierarchy, and the offline greedy's start state;
// its height is at most ceil(log2(n+1)).
inline std::vector<std::array<Key, 2>> median_split_links(int n, Key *root_out) {
    std::vector<std::array<Key, 2>> links(n + 1, {0, 0});
    auto build = [&](auto &&self, Key lo, Key hi) -> Key {
        if (lo > hi)
            return 0;
        const Key r = (lo + hi) / 2;
        links[r][0] = self(self, lo, static_cast<Key>(r - 1));
        links[r][1] = self(self, static_cast<Key>(r + 1), hi);
        return r;
    };
    *root_out = build(build, 1, n);
    return links;
}

// The static balanced tree with per-node preferred-child marks; the shape
// never changes, only the marks do. Used by the path-decomposed algorithm.
struct ReferenceTree {
    int n = 0;
    Key root = 0;
    std::vector<Key> left, right, parent;
    std::vector<int> depth;
    std::vector<std::int8_t> preferred; // -1 left, +1 right, 0 none

    static ReferenceTree build(int n) {
        ReferenceTree t;
        t.n = n;
        auto links = median_split_links(n, &t.root);
        t.left.assign(n + 1, 0);
        t.right.assign(n + 1, 0);
        t.parent.assign(n + 1, 0);
        t.depth.assign(n + 1, 0);
        t.preferred.assign(n + 1, 0);
        for (Key k = 1; k <= n; ++k) {
            t.left[k] = links[k][0];
            t.right[k] = links[k][1];
            if (t.left[k])
                t.parent[t.left[k]] = k;
            if (t.right[k])
                t.parent[t.right[k]] = k;
        }
        // depths by walking down from the root
        std::vector<Key> stack{t.root};
        while (!stack.empty()) {
            Key k = stack.back();
            stack.pop_back();
            for (Key c : {t.left[k], t.right[k]})
                if (c) {
                    t.depth[c] = t.depth[k] + 1;
                    stack.push_back(c);
                }
        }
        return t;
    }

    Key preferred_child(Key k) const {
        if (preferred[k] < 0)
            return left[k];
        if (preferred[k] > 0)
            return right[k];
        return 0;
    }

    // Nodes on the preferred chain starting at k (k included).
    int preferred_path_length(Key k) const {
        int len = 1;
        for (Key c = preferred_child(k); c; c = preferred_child(c))
            ++len;
        return len;
    }

    int max_preferred_path_length() const {
        int best = 0;
        for (Key k = 1; k <= n; ++k)
            best = std::max(best, preferred_path_length(k));
        return best;
    }
};

// --- splay -------------------------------------------------------------------

// Bottom-up splay of x (cursor must be on x): zig-zig rotates the parent
// first, which costs two extra cursor moves per step in this model; zig-zag
// rotates x twice in place.
inline void splay_to_root(BstMachine &m, Key x) {
    while (m.parent(x)) {
        const Key p = m.parent(x);
        const Key g = m.parent(p);
        if (!g) {
            m.apply(UnitOp::rotate_with_parent);
        } else if ((m.left(g) == p) == (m.left(p) == x)) {
            m.apply(UnitOp::move_parent);
            m.apply(UnitOp::rotate_with_parent);
            m.apply(m.left(p) == x ? UnitOp::move_left : UnitOp::move_right);
            m.apply(UnitOp::rotate_with_parent);
        } else {
            m.apply(UnitOp::rotate_with_parent);
            m.apply(UnitOp::rotate_with_parent);
        }
    }
}

inline void splay_search(BstMachine &m, Key x) {
    walk_from_root(m, x);
    splay_to_root(m, x);
}

inline Trace splay_execute(const SearchSequence &x) {
    validate(x);
    BstMachine m(x.n);
    return execute_with(m, x, [](BstMachine &mm, Key k) { splay_search(mm, k); });
}

// --- move to root --------------------------------------------------------------

inline Trace move_to_root_execute(const SearchSequence &x) {
    validate(x);
    BstMachine m(x.n);
    return execute_with(m, x, [](BstMachine &mm, Key k) { move_to_root_once(mm, k); });
}

// Shape oracle for the move-to-root invariant: the unique heap-ordered tree
// for the given priorities (higher priority closer to the root), built by
// plain BST insertion in decreasing priority order.
inline std::vector<std::array<Key, 2>> treap_links(const std::vector<long long> &priority,
                                                   Key *root_out) {
    const int n = static_cast<int>(priority.size()) - 1; // 1-based
    std::vector<Key> order;
    for (Key k = 1; k <= n; ++k)
        order.push_back(k);
    std::sort(order.begin(), order.end(),
              [&](Key a, Key b) { return priority[a] > priority[b]; });
    std::vector<std::array<Key, 2>> links(n + 1, {0, 0});
    Key root = 0;
    for (Key k : order) {
        if (!root) {
            root = k;
            continue;
        }
        Key c = root;
        for (;;) {
            const int side = k < c ? 0 : 1;
            if (!links[c][side]) {
                links[c][side] = k;
                break;
            }
            c = links[c][side];
        }
    }
    *root_out = root;
    return links;
}

// Priorities that make the canonical left path the starting treap: accessed
// keys carry their last access time, untouched keys sit below every real
// time, ordered by key so that n stays on top initially.
inline std::vector<long long> move_to_root_priorities(int n, const std::vector<int> &last_access) {
    std::vector<long long> pr(n + 1, 0);
    for (Key k = 1; k <= n; ++k)
        pr[k] = last_access[k] > 0 ? last_access[k] : k - (n + 1);
    return pr;
}

// --- static balanced -----------------------------------------------------------

inline Trace static_balanced_execute(const SearchSequence &x) {
    validate(x);
    Key root = 0;
    auto links = median_split_links(x.n, &root);
    BstMachine m = BstMachine::with_links(x.n, root, links);
    return execute_with(m, x, [](BstMachine &mm, Key k) { walk_from_root(mm, k); });
}

// --- offline greedy (path rearrangement) ---------------------------------------

// After each search the nodes of the search path are rearranged: the deepest
// path node whose walk interval contains the next searched key is promoted,
// and each key side recurses with its own next target. Off-path subtrees
// hang back in their key gaps. The whole step is charged 2 * |path| unit
// ops: the downward walk plus the rearrangement.
inline Trace lucas_greedy_execute(const SearchSequence &x) {
    validate(x);
    Key root = 0;
    auto start = median_split_links(x.n, &root);
    BstMachine m = BstMachine::with_links(x.n, root, start);
    Trace tr;
    tr.n = x.n;

    struct PathNode {
        Key key;
        Key lo, hi; // exclusive interval the walk was confined to at this node
        int depth;
    };

    for (int i = 0; i < x.length(); ++i) {
        const Key target = x.keys[i];
        m.begin_search(target);
        std::vector<PathNode> path;
        Key lo = 0, hi = x.n + 1;
        for (Key c = m.cursor();;) {
            path.push_back({c, lo, hi, static_cast<int>(path.size())});
            if (c == target)
                break;
            if (target < c) {
                hi = c;
                m.apply(UnitOp::move_left);
            } else {
                lo = c;
                m.apply(UnitOp::move_right);
            }
            c = m.cursor();
        }

        // Off-path subtrees, addressable by the key gap they occupy.
        std::vector<Key> hanging; // roots; each lies in a unique gap between path keys
        std::vector<char> on_path(x.n + 1, false);
        for (const auto &p : path)
            on_path[p.key] = true;
        for (const auto &p : path)
            for (Key c : {m.left(p.key), m.right(p.key)})
                if (c && !on_path[c])
                    hanging.push_back(c);
        auto hanging_in = [&](Key glo, Key ghi) -> Key {
            for (Key h : hanging)
                if (h > glo && h < ghi)
                    return h;
            return 0;
        };

        // First future search landing strictly inside (glo, ghi).
        auto next_target = [&](Key glo, Key ghi) -> int {
            for (int j = i + 1; j < x.length(); ++j)
                if (x.keys[j] > glo && x.keys[j] < ghi)
                    return j;
            return -1;
        };

        std::vector<PathNode> by_key(path.begin(), path.end());
        std::sort(by_key.begin(), by_key.end(),
                  [](const PathNode &a, const PathNode &b) { return a.key < b.key; });

        std::vector<std::array<Key, 3>> relink;
        auto build = [&](auto &&self, int first, int last, Key glo, Key ghi) -> Key {
            if (first > last)
                return hanging_in(glo, ghi);
            int pivot = -1;
            const int j = next_target(glo, ghi);
            if (j != -1) {
                const Key want = x.keys[j];
                for (int s = first; s <= last; ++s) {
                    const auto &nd = by_key[s];
                    if (nd.lo < want && want < nd.hi)
                        if (pivot == -1 || nd.depth > by_key[pivot].depth)
                            pivot = s;
                }
            }
            if (pivot == -1) { // no future interest: keep the original top node
                pivot = first;
                for (int s = first + 1; s <= last; ++s)
                    if (by_key[s].depth < by_key[pivot].depth)
                        pivot = s;
            }
            const Key pk = by_key[pivot].key;
            const Key l = self(self, first, pivot - 1, glo, pk);
            const Key r = self(self, pivot + 1, last, pk, ghi);
            relink.push_back({pk, l, r});
            return pk;
        };
        const Key new_root = build(build, 0, static_cast<int>(by_key.size()) - 1, 0,
                                   static_cast<Key>(x.n + 1));
        m.rewire(new_root, relink);
        m.charge(static_cast<long long>(path.size()) + 1); // walk paid |path|-1
        TraceRecord rec = m.end_search();
        rec.index = i + 1;
        tr.records.push_back(std::move(rec));
    }
    return tr;
}

} // namespace bstlab
