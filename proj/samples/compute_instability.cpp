// Computes the instability minimum of the two-vertex graph a => b (2 edges),
// b -> a (1 edge) with each exact method and prints an infinite witness.

#include <iostream>

#include "chipfire/chipfire.hpp"

int main() {
  using namespace chipfire;
  const Multigraph g = parse_graph("a b 2\nb a 1\n");
  const PeriodData period = primitive_period_vector(g);
  std::cout << "v_G = (" << period.vector[0] << ", " << period.vector[1] << "), P = " << period.length
            << "\n";

  const InstabilityResult by_strategies = instability_by_strategies(g);
  const InstabilityResult by_extension = instability_by_extension(g);
  const OracleResult by_oracle = instability_oracle(g);
  std::cout << "strategies: " << by_strategies.c << "\nextension: " << by_extension.c
            << "\noracle: " << by_oracle.c << "\n";

  const Configuration witness = extract_witness(g, *by_strategies.optimal_sequence);
  std::cout << "witness: a=" << witness[0] << " b=" << witness[1] << "\n";
  return 0;
}
