// Prints the bid and ask mean-occupancy curves around the previous close,
// together with their intersection. Pipe the CSV into any plotting tool for a
// depth-profile figure.

#include <iostream>

#include "ordergas/ordergas.hpp"

int main() {
  using namespace ordergas;
  const GasParams bid(2.0, -4.0, Side::bid);
  const GasParams ask(3.0, -5.0, Side::ask);

  const EquilibriumPoint eq = equilibrium_point(bid, ask);
  std::cerr << "intersection: offset " << eq.price_offset << ", volume " << eq.volume << "\n";

  std::cout << "offset,bid_occupancy,ask_occupancy\n";
  for (int k = -39; k <= 49; ++k) {
    const double eps = k / 10.0;
    std::cout << detail::format_double(eps) << ',';
    if (eps > bid.chemical_potential)
      std::cout << detail::format_double(mean_bid_occupancy(eps, bid));
    std::cout << ',';
    if (eps < -ask.chemical_potential)
      std::cout << detail::format_double(mean_ask_occupancy(eps, ask));
    std::cout << '\n';
  }
  return 0;
}
