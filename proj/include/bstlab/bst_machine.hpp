#pragma once

#include "geometry.hpp"
#include "sequence.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bstlab {

// The five unit-cost operations of the single-cursor tree model. Every call
// costs exactly one; everything else (reading the shape, deciding what to do)
// is free computation.
enum class UnitOp { move_left, move_right, move_parent, rotate_with_parent, end_step };

inline const char *to_string(UnitOp op) {
    switch (op) {
    case UnitOp::move_left: return "move_left";
    case UnitOp::move_right: return "move_right";
    case UnitOp::move_parent: return "move_parent";
    case UnitOp::rotate_with_parent: return "rotate_with_parent";
    case UnitOp::end_step: return "end_step";
    }
    return "?";
}

struct illegal_move : std::logic_error {
    using std::logic_error::logic_error;
};

struct invalid_execution : std::logic_error {
    using std::logic_error::logic_error;
};

// One executed search: which key, which nodes the cursor visited, and how
// many unit ops were charged to this search.
struct TraceRecord {
    int index = 0;             // 1-based position in the sequence
    Key key = 0;               // the searched key
    std::vector<Key> touched;  // distinct visited keys, ascending
    long long cost = 0;
};

struct Trace {
    int n = 0;
    std::vector<TraceRecord> records;

    long long total_cost() const {
        long long c = 0;
        for (const auto &r : records)
            c += r.cost;
        return c;
    }

    long long touched_total() const {
        long long c = 0;
        for (const auto &r : records)
            c += static_cast<long long>(r.touched.size());
        return c;
    }
};

// A binary search tree over keys 1..n with a single cursor. The shape is
// stored as parent/left/right link arrays indexed by key; 0 means "none".
// All mutation goes through apply() so that op counting and per-search touch
// recording cannot drift from the shape.
class BstMachine {
  public:
    // Canonical state: the left path rooted at n (every key k > 1 has left
    // child k-1), cursor at the root.
    explicit BstMachine(int n) : BstMachine(n, make_left_path(n), n) {}

    // A machine with an arbitrary starting shape. links[k] = {left, right}
    // for k in 1..n (index 0 unused). Validates that the links describe a
    // binary search tree over exactly 1..n.
    static BstMachine with_links(int n, Key root, const std::vector<std::array<Key, 2>> &links) {
        return BstMachine(n, links, root);
    }

    int size() const { return n_; }
    Key root() const { return root_; }
    Key cursor() const { return cursor_; }
    Key left(Key k) const { return links_[check_key(k)][0]; }
    Key right(Key k) const { return links_[check_key(k)][1]; }
    Key parent(Key k) const { return parent_[check_key(k)]; }
    long long op_count() const { return op_count_; }

    int depth(Key k) const { // edges from the root
        int d = 0;
        for (Key p = parent(k); p; p = parent_[p])
            ++d;
        return d;
    }

    bool is_canonical() const {
        if (root_ != n_)
            return false;
        for (Key k = 1; k <= n_; ++k)
            if (links_[k][0] != k - 1 || links_[k][1] != 0)
                return false;
        return true;
    }

    void apply(UnitOp op) {
        switch (op) {
        case UnitOp::move_left:
            if (!links_[cursor_][0])
                throw illegal_move("move_left: cursor has no left child");
            set_cursor(links_[cursor_][0]);
            break;
        case UnitOp::move_right:
            if (!links_[cursor_][1])
                throw illegal_move("move_right: cursor has no right child");
            set_cursor(links_[cursor_][1]);
            break;
        case UnitOp::move_parent:
            if (!parent_[cursor_])
                throw illegal_move("move_parent: cursor is at the root");
            set_cursor(parent_[cursor_]);
            break;
        case UnitOp::rotate_with_parent:
            rotate_cursor_up();
            break;
        case UnitOp::end_step:
            break;
        }
        charge(1);
    }

    // Adds synthetic unit ops without moving anything. Used by algorithms
    // whose restructuring is charged as a lump sum rather than performed
    // rotation by rotation.
    void charge(long long ops) {
        op_count_ += ops;
        if (in_search_)
            search_cost_ += ops;
    }

    // The model's free cursor reset: every search starts with the cursor on
    // the root at no cost, and the canonical rebuild uses the same
    // convention since it runs between searches.
    void reset_cursor() { set_cursor(root_); }

    void begin_search(Key x) {
        check_key(x);
        if (in_search_)
            throw invalid_execution("begin_search: previous search not finished");
        in_search_ = true;
        search_key_ = x;
        search_cost_ = 0;
        touched_.assign(n_ + 1, false);
        touched_list_.clear();
        reset_cursor();
        touch(cursor_);
    }

    TraceRecord end_search() {
        if (!in_search_)
            throw invalid_execution("end_search: no search in progress");
        in_search_ = false;
        if (!touched_[search_key_])
            throw invalid_execution("search for key " + std::to_string(search_key_) +
                                    " never touched it");
        TraceRecord rec;
        rec.key = search_key_;
        rec.touched = touched_list_;
        std::sort(rec.touched.begin(), rec.touched.end());
        rec.cost = search_cost_;
        return rec;
    }

    // Offline surgery: re-link the given nodes (each entry is {node, left,
    // right}) and make new_root the tree root. Children not mentioned keep
    // their own subtrees; the caller is responsible for handing over a
    // complete, consistent rearrangement. The whole tree is re-validated and
    // a rejected surgery leaves the machine untouched. No ops are charged —
    // callers charge() whatever their model says.
    void rewire(Key new_root, const std::vector<std::array<Key, 3>> &links) {
        const std::vector<std::array<Key, 2>> saved_links = links_;
        const Key saved_root = root_;
        try {
            for (const auto &e : links) {
                check_key(e[0]);
                links_[e[0]][0] = e[1];
                links_[e[0]][1] = e[2];
            }
            root_ = new_root;
            rebuild_parents_and_validate();
        } catch (...) {
            links_ = saved_links;
            root_ = saved_root;
            rebuild_parents_and_validate();
            throw;
        }
        // the cursor stays on its node wherever the surgery moved it
    }

  private:
    BstMachine(int n, const std::vector<std::array<Key, 2>> &links, Key root)
        : n_(n), links_(links), root_(root) {
        if (n <= 0)
            throw std::invalid_argument("machine: size must be positive");
        if (static_cast<int>(links_.size()) != n + 1)
            throw std::invalid_argument("machine: links must cover keys 1..n");
        rebuild_parents_and_validate();
        cursor_ = root_;
    }

    static std::vector<std::array<Key, 2>> make_left_path(int n) {
        if (n <= 0)
            throw std::invalid_argument("machine: size must be positive");
        std::vector<std::array<Key, 2>> links(n + 1, {0, 0});
        for (Key k = 2; k <= n; ++k)
            links[k][0] = k - 1;
        return links;
    }

    Key check_key(Key k) const {
        if (k < 1 || k > n_)
            throw std::invalid_argument("machine: key " + std::to_string(k) + " outside [1.." +
                                        std::to_string(n_) + "]");
        return k;
    }

    void set_cursor(Key k) {
        cursor_ = k;
        if (in_search_)
            touch(k);
    }

    void touch(Key k) {
        if (!touched_[k]) {
            touched_[k] = true;
            touched_list_.push_back(k);
        }
    }

    // Rotation between the cursor's node and its parent; the cursor's node
    // moves up, the cursor stays on it. Only the cursor's node counts as
    // visited — the reattached subtree is not touched.
    void rotate_cursor_up() {
        const Key x = cursor_;
        const Key p = parent_[x];
        if (!p)
            throw illegal_move("rotate_with_parent: cursor is at the root");
        const Key g = parent_[p];
        const bool x_is_left = links_[p][0] == x;
        const Key b = x_is_left ? links_[x][1] : links_[x][0]; // subtree that changes sides
        if (x_is_left) {
            links_[p][0] = b;
            links_[x][1] = p;
        } else {
            links_[p][1] = b;
            links_[x][0] = p;
        }
        if (b)
            parent_[b] = p;
        parent_[p] = x;
        parent_[x] = g;
        if (g)
            links_[g][links_[g][0] == p ? 0 : 1] = x;
        else
            root_ = x;
    }

    void rebuild_parents_and_validate() {
        parent_.assign(n_ + 1, 0);
        check_key(root_);
        // In-order walk must produce exactly 1..n; that simultaneously
        // verifies the search-tree property, reachability and acyclicity.
        std::vector<std::pair<Key, int>> stack; // (node, state)
        std::vector<char> seen(n_ + 1, false);
        Key expect = 1;
        stack.push_back({root_, 0});
        while (!stack.empty()) {
            auto &[k, state] = stack.back();
            if (state == 0) {
                state = 1;
                if (seen[k])
                    throw std::invalid_argument("machine: node " + std::to_string(k) +
                                                " linked twice");
                seen[k] = true;
                if (links_[k][0]) {
                    parent_[links_[k][0]] = k;
                    stack.push_back({links_[k][0], 0});
                }
            } else if (state == 1) {
                state = 2;
                if (k != expect)
                    throw std::invalid_argument("machine: links are not a search tree over 1..n");
                ++expect;
                if (links_[k][1]) {
                    parent_[links_[k][1]] = k;
                    stack.push_back({links_[k][1], 0});
                }
            } else {
                stack.pop_back();
            }
        }
        if (expect != n_ + 1)
            throw std::invalid_argument("machine: links do not reach all of 1..n");
    }

    int n_ = 0;
    std::vector<std::array<Key, 2>> links_; // [k] = {left, right}
    std::vector<Key> parent_;
    Key root_ = 0;
    Key cursor_ = 0;
    long long op_count_ = 0;

    bool in_search_ = false;
    Key search_key_ = 0;
    long long search_cost_ = 0;
    std::vector<char> touched_;
    std::vector<Key> touched_list_;
};

// Runs the whole sequence through the machine. The strategy is called once
// per search as strategy(machine, x) and must make the cursor visit x using
// unit ops; costs and touched sets are recorded per search.
template <class Strategy>
Trace execute_with(BstMachine &m, const SearchSequence &x, Strategy &&strategy) {
    validate(x);
    if (x.n != m.size())
        throw std::invalid_argument("execute: sequence universe does not match machine size");
    Trace tr;
    tr.n = m.size();
    tr.records.reserve(x.keys.size());
    for (int i = 0; i < x.length(); ++i) {
        m.begin_search(x.keys[i]);
        strategy(m, x.keys[i]);
        TraceRecord rec = m.end_search();
        rec.index = i + 1;
        tr.records.push_back(std::move(rec));
    }
    return tr;
}

// Walks the cursor from the root to x along tree edges (the plain BST
// descent). The cursor must currently be at the root.
inline void walk_from_root(BstMachine &m, Key x) {
    Key c = m.cursor();
    while (c != x) {
        if (x < c) {
            m.apply(UnitOp::move_left);
        } else {
            m.apply(UnitOp::move_right);
        }
        c = m.cursor();
    }
}

// Restores the canonical left path and returns the unit ops spent, at most
// 3n. Mirrored tree-to-vine: walk the left spine, lifting right children
// until none remain. Each lift permanently extends the spine, so there are
// at most n-1 rotations, each preceded by one move; descents along the
// finished spine stop as soon as no right edges remain below.
inline long long rebuild_to_canonical(BstMachine &m) {
    if (m.is_canonical())
        return 0;
    const long long before = m.op_count();
    m.reset_cursor(); // between-searches reset, zero cost by convention
    // any_right[k]: whether k's subtree still contains a right edge; kept
    // fresh by recomputation on the free (uncharged) side of the model.
    auto subtree_has_right_edge = [&](Key k) {
        std::vector<Key> stack{k};
        while (!stack.empty()) {
            Key c = stack.back();
            stack.pop_back();
            if (m.right(c))
                return true;
            if (m.left(c))
                stack.push_back(m.left(c));
        }
        return false;
    };
    while (true) {
        Key c = m.cursor();
        if (m.right(c)) {
            m.apply(UnitOp::move_right);
            m.apply(UnitOp::rotate_with_parent);
        } else if (m.left(c) && subtree_has_right_edge(m.left(c))) {
            m.apply(UnitOp::move_left);
        } else {
            break;
        }
    }
    return m.op_count() - before;
}

// The trace as a point set: (key, i) for every key touched by search i.
inline PointSet touched_point_set(const Trace &tr) {
    std::vector<Point> pts;
    for (const auto &r : tr.records)
        for (Key k : r.touched)
            pts.push_back({k, r.index});
    return PointSet::from_points(tr.n, static_cast<int>(tr.records.size()), std::move(pts));
}

// --- text round-trip: one line per search, "i x k t_1 ... t_k cost" ---

inline void save_trace(std::ostream &os, const Trace &tr) {
    for (const auto &r : tr.records) {
        os << r.index << ' ' << r.key << ' ' << r.touched.size();
        for (Key k : r.touched)
            os << ' ' << k;
        os << ' ' << r.cost << '\n';
    }
}

// The text form carries no universe size; the loader infers the smallest
// universe containing every touched key.
inline Trace load_trace(std::istream &is) {
    Trace tr;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        TraceRecord r;
        std::size_t k = 0;
        if (!(ls >> r.index >> r.key >> k))
            throw std::invalid_argument("trace: bad record at line " + std::to_string(line_no));
        r.touched.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            if (!(ls >> r.touched[i]))
                throw std::invalid_argument("trace: truncated touch list at line " +
                                            std::to_string(line_no));
        if (!(ls >> r.cost))
            throw std::invalid_argument("trace: missing cost at line " + std::to_string(line_no));
        for (Key t : r.touched)
            tr.n = std::max(tr.n, t);
        tr.n = std::max(tr.n, r.key);
        tr.records.push_back(std::move(r));
    }
    return tr;
}

} // namespace bstlab
