// Draws a random order book from the gas model, clears it, and compares the
// outcome with the noise-free prediction. Re-run with another seed to watch
// the clearing price fluctuate around the model equilibrium.

#include <cstdlib>
#include <iostream>

#include "ordergas/ordergas.hpp"

int main(int argc, char** argv) {
  using namespace ordergas;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;
  const double prev_close = 100.0;
  const double tick = 0.05;
  const GasParams bid(0.8, -2.0, Side::bid);
  const GasParams ask(1.1, -2.5, Side::ask);

  const EquilibriumPoint eq = equilibrium_point(bid, ask);
  std::cout << "model equilibrium: price " << prev_close + eq.price_offset << ", volume "
            << eq.volume << "\n";

  const OrderBookSnapshot ideal = model_book(bid, ask, prev_close, tick);
  const ClearingResult ideal_clear = clearing_price(ideal, prev_close);
  std::cout << "noise-free book clears at " << ideal_clear.price << " ("
            << ideal_clear.tradeable << " tradeable)\n";

  const OrderBookSnapshot sampled = sample_synthetic_book(bid, ask, prev_close, tick, seed);
  std::cout << "sampled book (seed " << seed << "): " << sampled.levels().size() << " levels\n";
  try {
    const ClearingResult cl = clearing_price(sampled, prev_close);
    std::cout << "clears at " << cl.price << " (" << cl.tradeable << " tradeable)\n";
  } catch (const NoTradeError&) {
    std::cout << "no crossing volume this draw\n";
  }
  return 0;
}
