// A five-minute tour: generate a sequence, race three algorithms on the
// unit-cost machine, compare against the lower bounds, and draw the plane
// view of the sequence next to its greedy superset.

#include <bstlab/bstlab.hpp>

#include <fstream>
#include <iostream>

int main() {
    using namespace bstlab;

    const SearchSequence x = generate({GeneratorKind::alt_gap_adversary, 64, 512, 7});
    std::cout << "sequence: n=" << x.n << " m=" << x.length() << " (adversarial gaps)\n\n";

    for (AlgorithmId alg : {AlgorithmId::splay, AlgorithmId::move_to_root,
                            AlgorithmId::static_balanced, AlgorithmId::lucas_greedy,
                            AlgorithmId::tango}) {
        const Trace tr = run_algorithm(alg, x);
        std::cout << "  " << to_string(alg) << ": total cost " << tr.total_cost() << '\n';
    }

    const BoundReport b = compute_bound_report(x);
    std::cout << "\nlower bounds: greedy-derived " << b.greedy_size - x.length()
              << ", independent-rectangle " << b.irb_total << ", alternation " << b.alternation
              << ", funnel " << b.funnel << '\n';

    const SearchSequence tiny = generate({GeneratorKind::uniform_random, 8, 16, 3});
    std::ofstream svg("tour.svg");
    svg << emit_sequence_svg(tiny);
    std::cout << "\nwrote tour.svg (black: searches; colored dots: greedy additions;\n"
                 "squares: signed-sweep corners)\n";
    return 0;
}
