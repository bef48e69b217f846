// Lower bounds: signed independent-rectangle sweeps, the alternation bound in
// both flavors, the funnel bound in both flavors, and the classic formulas.

#include <bstlab/bstlab.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace bstlab;

namespace {

SearchSequence random_sequence(int n, int m, std::mt19937_64 &gen) {
    std::vector<Key> keys(m);
    for (auto &k : keys)
        k = 1 + static_cast<int>(gen() % n);
    return make_sequence(n, keys);
}

} // namespace

TEST_CASE("worked instance X=(1,2,1,2): rectangle 3, alternation 3, funnel 0") {
    const SearchSequence x = make_sequence(2, {1, 2, 1, 2});
    const PointSet G = from_sequence(x);
    REQUIRE(irb_total(G) == 3);
    REQUIRE(alternation_bound(G) == 3);
    REQUIRE(alternation_by_reference_tree(x) == 3);
    REQUIRE(funnel_bound(G) == 0);
    REQUIRE(funnel_by_move_to_root(x).turns_total == 0);
}

TEST_CASE("worked instance X=(1,3,2): one move-to-root turn") {
    const MtrFunnelRun run = funnel_by_move_to_root(make_sequence(3, {1, 3, 2}));
    REQUIRE(run.turns_total == 1);
    REQUIRE(run.per_search_turns == std::vector<int>{0, 0, 1});
}

TEST_CASE("signed sweeps produce independent rectangles with in-rectangle corners") {
    std::mt19937_64 gen(606);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 10);
        const int m = 1 + static_cast<int>(gen() % 14);
        const PointSet G = from_sequence(random_sequence(n, m, gen));
        for (bool plus : {true, false}) {
            const IrbSweep sweep = plus ? irb_sweep_plus(G) : irb_sweep_minus(G);
            REQUIRE(is_independent(sweep.rects));
            REQUIRE(sweep.added.size() <= sweep.rects.size());
            for (const Rect &r : sweep.rects) {
                REQUIRE(r.lower.time < r.upper.time);
                if (plus)
                    REQUIRE(r.lower.key < r.upper.key);
                else
                    REQUIRE(r.lower.key > r.upper.key);
            }
        }
    }
}

TEST_CASE("a mutually overlapping rectangle family is flagged as dependent") {
    // two plus-rects where the first's corner lies strictly inside the second
    const std::vector<Rect> dependent{{{1, 1}, {3, 4}}, {{2, 2}, {4, 6}}};
    REQUIRE(!is_independent(dependent));
    const std::vector<Rect> side_by_side{{{1, 1}, {2, 2}}, {{3, 3}, {4, 4}}};
    REQUIRE(is_independent(side_by_side));
}

TEST_CASE("the two alternation flavors agree exactly") {
    std::mt19937_64 gen(707);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 32);
        const int m = 1 + static_cast<int>(gen() % 24);
        const SearchSequence x = random_sequence(n, m, gen);
        REQUIRE(alternation_bound(from_sequence(x)) == alternation_by_reference_tree(x));
    }
}

TEST_CASE("the two funnel flavors agree up to the 2n start-up difference") {
    std::mt19937_64 gen(808);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 1 + static_cast<int>(gen() % 24);
        const int m = 1 + static_cast<int>(gen() % 40);
        const SearchSequence x = random_sequence(n, m, gen);
        const long long geometric = funnel_bound(from_sequence(x));
        const long long tree = funnel_by_move_to_root(x).turns_total;
        REQUIRE(std::llabs(geometric - tree) <= 2LL * n);
    }
}

TEST_CASE("move-to-root search costs twice the depth and roots the key") {
    std::mt19937_64 gen(909);
    BstMachine m(16);
    for (int step = 0; step < 200; ++step) {
        const Key x = 1 + static_cast<int>(gen() % 16);
        const int d = m.depth(x);
        const long long before = m.op_count();
        const int turns = move_to_root_once(m, x);
        REQUIRE(m.root() == x);
        REQUIRE(m.op_count() - before == 2LL * d);
        REQUIRE(turns >= 0);
        REQUIRE(turns <= std::max(0, d - 1));
    }
}

TEST_CASE("classic formulas: frozen values and dominance") {
    // repeated single key: log2(n+1) for the first touch, 1 per repeat
    const SearchSequence rep = make_sequence(7, {4, 4, 4});
    REQUIRE(working_set_bound(rep) == Catch::Approx(std::log2(8.0) + 2.0));

    const SearchSequence pair = make_sequence(4, {1, 4});
    REQUIRE(dynamic_finger_bound(pair) == Catch::Approx(std::log2(5.0)));
    REQUIRE(dynamic_finger_bound(make_sequence(4, {2, 2})) == Catch::Approx(1.0));

    std::mt19937_64 gen(1010);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(gen() % 16);
        const int m = 1 + static_cast<int>(gen() % 24);
        const SearchSequence x = random_sequence(n, m, gen);
        const double ws = working_set_bound(x);
        const double uni = unified_bound(x);
        REQUIRE(ws >= 0);
        // anchor j = x_i gives log2(w+2) per term vs the working-set log2(w+1)
        REQUIRE(uni <= ws + m * std::log2(1.5) + 1e-9);
    }
}

TEST_CASE("the bound report matches its parts") {
    std::mt19937_64 gen(1111);
    const SearchSequence x = random_sequence(9, 15, gen);
    const PointSet G = from_sequence(x);
    const BoundReport b = compute_bound_report(x);
    REQUIRE(b.n == 9);
    REQUIRE(b.m == 15);
    REQUIRE(b.greedy_size == static_cast<long long>(greedy_superset(G).size()));
    REQUIRE(b.irb_plus == static_cast<long long>(irb_sweep_plus(G).rects.size()));
    REQUIRE(b.irb_minus == static_cast<long long>(irb_sweep_minus(G).rects.size()));
    REQUIRE(b.irb_total == b.irb_plus + b.irb_minus);
    REQUIRE(b.alternation == alternation_bound(G));
    REQUIRE(b.funnel == funnel_bound(G));
    REQUIRE(b.working_set == Catch::Approx(working_set_bound(x)));
    REQUIRE(b.dynamic_finger == Catch::Approx(dynamic_finger_bound(x)));
    REQUIRE(b.unified == Catch::Approx(unified_bound(x)));
}
