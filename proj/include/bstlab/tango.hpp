#pragma once

#include "algorithms.hpp"
#include "bst_machine.hpp"
#include "sequence.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace bstlab {

// Path-decomposed search tree driven by a static balanced reference
// hierarchy. The live tree is partitioned into auxiliary subtrees, one per
// preferred path of the reference; auxiliary roots other than the live root
// carry a boundary mark. Each search updates the preferred marks along the
// reference root-to-target walk and mirrors every mark change in the live
// tree with a cut (isolate the abandoned lower path part behind a new mark)
// and a join (absorb the newly preferred path by clearing its mark).
// Auxiliary trees are restructured by splaying, so cuts and joins reduce to
// boundary splays plus a single mark flip; every cursor move and rotation is
// paid at unit cost on the machine.
class TangoState {
    static int require_positive(int n) {
        if (n < 1)
            throw std::invalid_argument("path-decomposed tree: size must be positive");
        return n;
    }

public:
    explicit TangoState(int n)
        : ref_(ReferenceTree::build(require_positive(n))), ilo_(n + 1, 0), ihi_(n + 1, 0),
          marked_(n + 1, 0), anc_stamp_(n + 1, 0) {
        // reference key interval of every node (open bounds)
        std::vector<std::array<Key, 3>> stack{{ref_.root, 0, static_cast<Key>(n + 1)}};
        while (!stack.empty()) {
            auto [k, lo, hi] = stack.back();
            stack.pop_back();
            ilo_[k] = lo;
            ihi_[k] = hi;
            if (ref_.left[k])
                stack.push_back({ref_.left[k], lo, k});
            if (ref_.right[k])
                stack.push_back({ref_.right[k], k, hi});
        }
        // initial preference: left wherever a left child exists
        for (Key k = 1; k <= n; ++k)
            ref_.preferred[k] = ref_.left[k] ? -1 : 0;
        build_initial_shape();
    }

    Key initial_root() const { return init_root_; }
    const std::vector<std::array<Key, 2>> &initial_links() const { return init_links_; }

    // Relink triples for BstMachine::rewire covering every node.
    std::vector<std::array<Key, 3>> initial_relinks() const {
        std::vector<std::array<Key, 3>> out;
        for (Key k = 1; k <= ref_.n; ++k)
            out.push_back({k, init_links_[k][0], init_links_[k][1]});
        return out;
    }

    // Reset mark bookkeeping to match a machine freshly shaped by
    // initial_root/initial_links (used when an epoch restarts the algorithm).
    void reset() {
        for (Key k = 1; k <= ref_.n; ++k)
            ref_.preferred[k] = ref_.left[k] ? -1 : 0;
        marked_ = init_marked_;
    }

    const ReferenceTree &reference() const { return ref_; }
    bool is_marked(Key k) const { return marked_[k] != 0; }

    long long switches_total() const { return switches_total_; }
    long long first_settings_total() const { return first_settings_total_; }
    long long cuts_total() const { return cuts_total_; }
    long long joins_total() const { return joins_total_; }
    int last_switches() const { return last_switches_; }
    int last_first_settings() const { return last_first_settings_; }
    int last_cuts() const { return last_cuts_; }
    int last_joins() const { return last_joins_; }

    // One search on the live machine; the machine shape must be the one this
    // state has been tracking. Ends with the target at the live root.
    void search(BstMachine &m, Key x) {
        last_switches_ = last_first_settings_ = last_cuts_ = last_joins_ = 0;
        for (Key v = ref_.root;;) {
            std::int8_t want = 0;
            if (x < v)
                want = -1;
            else if (x > v)
                want = +1;
            else
                want = ref_.left[v] ? -1 : ref_.preferred[v]; // settle on the left half, else keep
            if (want != ref_.preferred[v]) {
                const Key c_old = ref_.preferred_child(v);
                const Key c_new = want < 0 ? ref_.left[v] : ref_.right[v];
                if (ref_.preferred[v] != 0) {
                    ++last_switches_;
                    ++switches_total_;
                } else {
                    ++last_first_settings_;
                    ++first_settings_total_;
                }
                if (c_old)
                    cut(m, c_old);
                ref_.preferred[v] = 0;
                if (c_new)
                    join(m, c_new);
                ref_.preferred[v] = want;
            }
            if (v == x)
                break;
            v = x < v ? ref_.left[v] : ref_.right[v];
        }
        splay_in_aux(m, x); // x is now on the top path; finish with x at the root
    }

    // Structural invariant: live-tree regions delimited by marks coincide
    // with the preferred paths of the reference.
    bool marks_consistent(const BstMachine &m) const {
        const Key top = path_top(ref_.root); // == ref_.root
        for (Key k = 1; k <= ref_.n; ++k) {
            Key a = k;
            while (m.parent(a) && !marked_[a])
                a = m.parent(a);
            if (path_top(k) != path_top(a))
                return false;
            if (marked_[k]) {
                const Key p = m.parent(k);
                if (!p || path_top(p) == path_top(k))
                    return false;
            }
            if (!m.parent(k) && (marked_[k] || path_top(k) != top))
                return false;
        }
        return true;
    }

private:
    ReferenceTree ref_;
    std::vector<Key> ilo_, ihi_;
    std::vector<char> marked_;
    Key init_root_ = 0;
    std::vector<std::array<Key, 2>> init_links_;
    std::vector<char> init_marked_;

    long long switches_total_ = 0, first_settings_total_ = 0;
    long long cuts_total_ = 0, joins_total_ = 0;
    int last_switches_ = 0, last_first_settings_ = 0, last_cuts_ = 0, last_joins_ = 0;

    mutable std::vector<int> anc_stamp_;
    mutable int stamp_ = 0;

    // Start of the preferred path containing k, per current marks.
    Key path_top(Key k) const {
        for (Key p = ref_.parent[k]; p; p = ref_.parent[k]) {
            if (ref_.preferred_child(p) != k)
                break;
            k = p;
        }
        return k;
    }

    // Extremes of the top preferred path around an interval: the largest
    // path key <= lo and the smallest path key >= hi (0 when absent).
    std::pair<Key, Key> top_path_neighbors(Key lo, Key hi) const {
        Key best_l = 0, best_r = 0;
        for (Key w = ref_.root; w; w = ref_.preferred_child(w)) {
            if (w <= lo && w > best_l)
                best_l = w;
            if (w >= hi && (best_r == 0 || w < best_r))
                best_r = w;
        }
        return {best_l, best_r};
    }

    // Walk the cursor to k: climb to the nearest ancestor of k, then descend.
    void cursor_to(BstMachine &m, Key k) const {
        ++stamp_;
        for (Key a = k; a; a = m.parent(a))
            anc_stamp_[a] = stamp_;
        while (anc_stamp_[m.cursor()] != stamp_)
            m.apply(UnitOp::move_parent);
        while (m.cursor() != k)
            m.apply(k < m.cursor() ? UnitOp::move_left : UnitOp::move_right);
    }

    // Rotation that keeps the mark on whichever node currently tops the aux.
    void rotate_cursor(BstMachine &m) {
        const Key x = m.cursor();
        const Key p = m.parent(x);
        if (marked_[p] && !marked_[x]) {
            marked_[p] = 0;
            marked_[x] = 1;
        }
        m.apply(UnitOp::rotate_with_parent);
    }

    bool at_aux_top(const BstMachine &m, Key x) const {
        return marked_[x] || m.parent(x) == 0;
    }

    // Splay x to the top of its auxiliary tree.
    void splay_in_aux(BstMachine &m, Key x) {
        cursor_to(m, x);
        while (!at_aux_top(m, x)) {
            const Key p = m.parent(x);
            if (at_aux_top(m, p)) {
                rotate_cursor(m);
            } else if ((m.left(m.parent(p)) == p) == (m.left(p) == x)) {
                m.apply(UnitOp::move_parent);
                rotate_cursor(m);
                m.apply(m.left(p) == x ? UnitOp::move_left : UnitOp::move_right);
                rotate_cursor(m);
            } else {
                rotate_cursor(m);
                rotate_cursor(m);
            }
        }
    }

    // Splay x upward until it becomes a child of `top` (which must be a
    // proper ancestor of x inside the same auxiliary tree).
    void splay_under(BstMachine &m, Key x, Key top) {
        cursor_to(m, x);
        while (m.parent(x) != top) {
            const Key p = m.parent(x);
            const Key g = m.parent(p);
            if (g == top) {
                rotate_cursor(m);
            } else if ((m.left(g) == p) == (m.left(p) == x)) {
                m.apply(UnitOp::move_parent);
                rotate_cursor(m);
                m.apply(m.left(p) == x ? UnitOp::move_left : UnitOp::move_right);
                rotate_cursor(m);
            } else {
                rotate_cursor(m);
                rotate_cursor(m);
            }
        }
    }

    // Expose, at the top of the live tree, the boundary around the open
    // interval of reference node c, and return the subtree holding exactly
    // the keys strictly inside that interval. l/r are top-path neighbors.
    Key isolate_interval(BstMachine &m, Key c) {
        const auto [l, r] = top_path_neighbors(ilo_[c], ihi_[c]);
        if (l && r) {
            splay_in_aux(m, l);
            splay_under(m, r, l);
            return m.left(r);
        }
        if (l) {
            splay_in_aux(m, l);
            return m.right(l);
        }
        splay_in_aux(m, r);
        return m.left(r);
    }

    // Detach the path part inside c's interval from the top auxiliary tree.
    void cut(BstMachine &m, Key c) {
        const Key d = isolate_interval(m, c);
        marked_[d] = 1;
        ++last_cuts_;
        ++cuts_total_;
    }

    // Absorb the auxiliary tree of the path starting at c into the top one.
    void join(BstMachine &m, Key c) {
        const Key b = isolate_interval(m, c);
        marked_[b] = 0;
        ++last_joins_;
        ++joins_total_;
    }

    void build_initial_shape() {
        const int n = ref_.n;
        init_links_.assign(n + 1, {0, 0});
        init_marked_.assign(n + 1, 0);
        init_root_ = build_path_tree(ref_.root);
        marked_ = init_marked_;
    }

    // Balanced arrangement of one preferred path; non-preferred child paths
    // are built recursively and hung at their unique key slot, marked.
    Key build_path_tree(Key top) {
        std::vector<Key> pk;
        for (Key w = top; w; w = ref_.preferred_child(w))
            pk.push_back(w);
        std::sort(pk.begin(), pk.end());
        auto arrange = [&](auto &&self, int a, int b) -> Key {
            if (a > b)
                return 0;
            const int mid = (a + b) / 2;
            init_links_[pk[mid]][0] = self(self, a, mid - 1);
            init_links_[pk[mid]][1] = self(self, mid + 1, b);
            return pk[mid];
        };
        const Key root = arrange(arrange, 0, static_cast<int>(pk.size()) - 1);
        for (Key w : pk)
            for (Key c : {ref_.left[w], ref_.right[w]}) {
                if (!c || c == ref_.preferred_child(w))
                    continue;
                const Key sub = build_path_tree(c);
                init_marked_[sub] = 1;
                Key q = root;
                for (;;) {
                    const int side = c < q ? 0 : 1;
                    if (!init_links_[q][side]) {
                        init_links_[q][side] = sub;
                        break;
                    }
                    q = init_links_[q][side];
                }
            }
        return root;
    }
};

inline Trace tango_execute(const SearchSequence &x, TangoState *state_out = nullptr) {
    validate(x);
    TangoState st(x.n);
    BstMachine m = BstMachine::with_links(x.n, st.initial_root(), st.initial_links());
    Trace tr = execute_with(m, x, [&](BstMachine &mm, Key k) { st.search(mm, k); });
    if (state_out)
        *state_out = std::move(st);
    return tr;
}

} // namespace bstlab
