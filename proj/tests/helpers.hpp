#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ordergas/ordergas.hpp"

namespace testutil {

// Deterministic parameter source for property tests. Ranges keep the shared
// reduced exponent small enough that nothing overflows and closed forms stay
// well inside double precision.
class ParamSource {
public:
  explicit ParamSource(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  ordergas::GasParams bid(double t_lo = 0.5, double t_hi = 50.0, double mu_lo = -20.0,
                          double mu_hi = -0.5) {
    return {uniform(t_lo, t_hi), uniform(mu_lo, mu_hi), ordergas::Side::bid};
  }

  ordergas::GasParams ask(double t_lo = 0.5, double t_hi = 50.0, double mu_lo = -20.0,
                          double mu_hi = -0.5) {
    return {uniform(t_lo, t_hi), uniform(mu_lo, mu_hi), ordergas::Side::ask};
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

}  // namespace testutil
