// Runs the containment-order peeling on a random K_{2,2}-free dyadic
// configuration and prints the per-step bookkeeping.

#include <iostream>

#include "zlab/zlab.hpp"

int main() {
  using namespace zlab;
  const Configuration cfg = generate_random(120, 120, 2, /*seed=*/7, /*k=*/2);
  std::cout << "input: " << cfg.points.size() << " points, " << cfg.n_regions()
            << " dyadic rectangles\n";
  const PeelTrace trace = peel_run(cfg, 2, 8.0);
  std::cout << "preprocessing removed " << trace.preprocess.chain_removed_copies
            << " nested copies and " << trace.preprocess.dedup_dropped_copies
            << " duplicates; poset size " << trace.n1 << "\n";
  std::cout << "m=" << trace.m << " t=" << trace.t
            << " termination_guaranteed=" << trace.termination_guaranteed << "\n";
  std::cout << peel_trace_to_csv(trace);
  std::cout << "sum |l| = " << trace.sum_l_total << " <= " << trace.final_bound_rhs
            << (trace.final_bound_ok ? "  (bound holds)" : "  (bound violated)") << "\n";
  return 0;
}
