#pragma once

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ordergas/errors.hpp"

namespace ordergas {

enum class Side { bid, ask };

inline std::string_view to_string(Side s) { return s == Side::bid ? "bid" : "ask"; }

/// Price offset from the previous closure price, in currency units. May be
/// negative: bid depth lives mostly below the previous close, ask depth above.
using PriceOffset = double;

/// Share quantity. Mean occupancies are real-valued; sampled books hold whole
/// shares.
using Quantity = double;

/// Temperature and chemical potential of one side's order gas.
///
/// The temperature is the decay scale of that side's depth curve, in price
/// units (the Boltzmann constant is fixed at 1). The chemical potential is
/// the offset at which the mean occupancy diverges: the minimum bid offset
/// for the bid gas, minus the maximum ask offset for the ask gas. It is
/// always negative, i.e. the bid floor sits below the previous close and the
/// ask ceiling above it.
struct GasParams {
  double temperature;
  double chemical_potential;
  Side side;

  GasParams(double temperature, double chemical_potential, Side side)
      : temperature(temperature), chemical_potential(chemical_potential), side(side) {
    if (!std::isfinite(temperature) || !(temperature > 0.0))
      throw InvariantError("GasParams: temperature must be a positive finite number, got " +
                           std::to_string(temperature));
    if (!std::isfinite(chemical_potential) || !(chemical_potential < 0.0))
      throw InvariantError("GasParams: chemical potential must be a negative finite number, got " +
                           std::to_string(chemical_potential));
  }
};

namespace detail {

// Dimensionless decay exponent of the side's occupancy law at offset eps:
// (eps - mu)/T for bids, (-mu - eps)/T for asks. Positive inside the domain,
// zero on the singular boundary, negative outside.
inline double reduced_exponent(PriceOffset eps, const GasParams& g) {
  return g.side == Side::bid ? (eps - g.chemical_potential) / g.temperature
                             : (-g.chemical_potential - eps) / g.temperature;
}

inline double checked_exponent(PriceOffset eps, const GasParams& g) {
  const double x = reduced_exponent(eps, g);
  if (x < 0.0)
    throw OutOfDomainError("offset " + std::to_string(eps) + " is outside the " +
                           std::string(to_string(g.side)) + " gas domain");
  if (x == 0.0)
    throw DivergenceError("occupancy diverges at offset " + std::to_string(eps) +
                          " (singular boundary of the " + std::string(to_string(g.side)) +
                          " gas)");
  return x;
}

inline void require_side(const GasParams& g, Side expected, std::string_view fn) {
  if (g.side != expected)
    throw InvariantError(std::string(fn) + ": expected " + std::string(to_string(expected)) +
                         "-side parameters, got " + std::string(to_string(g.side)));
}

}  // namespace detail

/// Mean aggregate share quantity proposed at offset `eps` on the gas's own
/// side: 1 / (exp(x) - 1) with x the side's reduced exponent. Strictly
/// monotone in `eps` and divergent toward the singular boundary.
inline Quantity mean_occupancy(PriceOffset eps, const GasParams& g) {
  return 1.0 / std::expm1(detail::checked_exponent(eps, g));
}

/// Bid-side mean occupancy, decreasing in `eps` on (mu_b, +inf).
inline Quantity mean_bid_occupancy(PriceOffset eps, const GasParams& bid) {
  detail::require_side(bid, Side::bid, "mean_bid_occupancy");
  return mean_occupancy(eps, bid);
}

/// Ask-side mean occupancy, increasing in `eps` on (-inf, -mu_a).
inline Quantity mean_ask_occupancy(PriceOffset eps, const GasParams& ask) {
  detail::require_side(ask, Side::ask, "mean_ask_occupancy");
  return mean_occupancy(eps, ask);
}

/// Probability of finding exactly `n` aggregate shares at offset `eps`:
/// the geometric law (1 - q) q^n with q = exp(-x). Sums to one over n >= 0
/// and its mean is `mean_occupancy`.
inline double level_occupation_probability(long long n, PriceOffset eps, const GasParams& g) {
  if (n < 0) throw InvariantError("occupation number must be non-negative");
  const double x = detail::checked_exponent(eps, g);
  return -std::expm1(-x) * std::exp(-static_cast<double>(n) * x);
}

/// Per-level grand potential T ln(1 - q), in price units. Always negative on
/// the domain; its negated derivative over the chemical potential recovers
/// the mean occupancy.
inline double grand_potential(PriceOffset eps, const GasParams& g) {
  const double x = detail::checked_exponent(eps, g);
  return g.temperature * std::log1p(-std::exp(-x));
}

/// Offset and volume at which the bid and ask occupancy curves intersect.
struct EquilibriumPoint {
  PriceOffset price_offset;
  Quantity volume;
};

/// Solves mean_bid_occupancy(eps) == mean_ask_occupancy(eps) in closed form:
///
///   eps = (T_a mu_b - T_b mu_a) / (T_a + T_b)
///   n   = 1 / (exp(-(mu_a + mu_b)/(T_a + T_b)) - 1)
///
/// Both curves evaluate to exactly `volume` at `price_offset`; this is the
/// offset that maximizes the tradeable quantity under the model, so it plays
/// the role of the next closure price (relative to the previous close).
inline EquilibriumPoint equilibrium_point(const GasParams& bid, const GasParams& ask) {
  detail::require_side(bid, Side::bid, "equilibrium_point");
  detail::require_side(ask, Side::ask, "equilibrium_point");
  if (!(bid.chemical_potential < -ask.chemical_potential))
    throw NoIntersectionError("gas domains are disjoint: mu_b = " +
                              std::to_string(bid.chemical_potential) + " >= -mu_a = " +
                              std::to_string(-ask.chemical_potential));
  const double temp_sum = bid.temperature + ask.temperature;
  const double eps = (ask.temperature * bid.chemical_potential -
                      bid.temperature * ask.chemical_potential) /
                     temp_sum;
  const double x = -(bid.chemical_potential + ask.chemical_potential) / temp_sum;
  return {eps, 1.0 / std::expm1(x)};
}

/// One trading interval seen through the model: previous and current closure
/// prices, the extreme quoted prices, and the exchanged volume. The price
/// bounds are absolute prices, not offsets.
struct MarketObservables {
  double prev_close;
  double close;
  double min_bid_price;
  double max_ask_price;
  Quantity volume;

  MarketObservables(double prev_close, double close, double min_bid_price,
                    double max_ask_price, Quantity volume)
      : prev_close(prev_close),
        close(close),
        min_bid_price(min_bid_price),
        max_ask_price(max_ask_price),
        volume(volume) {
    if (!std::isfinite(prev_close) || !std::isfinite(close) || !std::isfinite(min_bid_price) ||
        !std::isfinite(max_ask_price))
      throw InvariantError("MarketObservables: prices must be finite");
    if (!std::isfinite(volume) || !(volume >= 0.0))
      throw InvariantError("MarketObservables: volume must be non-negative, got " +
                           std::to_string(volume));
    if (!(min_bid_price <= close && close <= max_ask_price))
      throw InvariantError("MarketObservables: close " + std::to_string(close) +
                           " outside [min_bid_price, max_ask_price] = [" +
                           std::to_string(min_bid_price) + ", " + std::to_string(max_ask_price) +
                           "]");
    if (!(min_bid_price < prev_close && prev_close < max_ask_price))
      throw InvariantError("MarketObservables: prev_close " + std::to_string(prev_close) +
                           " outside (min_bid_price, max_ask_price) = (" +
                           std::to_string(min_bid_price) + ", " + std::to_string(max_ask_price) +
                           ")");
  }
};

/// Bid and ask gas temperatures for one interval. A degenerate flag marks a
/// close sitting exactly on the corresponding price bound; the temperature is
/// then reported as 0 rather than failing, so pipelines over real data keep
/// running.
struct Temperatures {
  double bid = 0.0;
  double ask = 0.0;
  bool bid_degenerate = false;
  bool ask_degenerate = false;
};

/// Recovers the gas temperatures from interval observables:
///
///   T_b = (close - min_bid_price) / ln(1 + 1/volume)
///   T_a = (max_ask_price - close) / ln(1 + 1/volume)
///
/// This is the assignment under which ask-minus-bid equals the midpoint form
/// of `temperature_difference` and, linearized, the VAO increment.
inline Temperatures temperatures_from_observables(const MarketObservables& m) {
  if (m.volume == 0.0)
    throw ZeroVolumeError("temperatures are undefined at zero exchanged volume");
  const double scale = std::log1p(1.0 / m.volume);
  Temperatures t;
  t.bid = (m.close - m.min_bid_price) / scale;
  t.ask = (m.max_ask_price - m.close) / scale;
  t.bid_degenerate = m.close == m.min_bid_price;
  t.ask_degenerate = m.close == m.max_ask_price;
  return t;
}

/// Ask temperature minus bid temperature, computed as the literal difference
/// of the two `temperatures_from_observables` values so the identity holds to
/// the last bit. Algebraically equals
/// 2 [ (min_bid_price + max_ask_price)/2 - close ] / ln(1 + 1/volume).
inline double temperature_difference(const MarketObservables& m) {
  const Temperatures t = temperatures_from_observables(m);
  return t.ask - t.bid;
}

/// First-order (large volume) approximations of the temperatures:
/// T_b ~ volume (close - min), T_a ~ volume (max - close). `difference` is
/// the literal subtraction ask - bid, the per-interval VAO increment.
struct LinearizedTemperatures {
  double bid = 0.0;
  double ask = 0.0;
  double difference = 0.0;
};

inline LinearizedTemperatures linearized_temperatures(const MarketObservables& m) {
  if (m.volume == 0.0)
    throw ZeroVolumeError("linearized temperatures are undefined at zero exchanged volume");
  LinearizedTemperatures t;
  t.bid = m.volume * (m.close - m.min_bid_price);
  t.ask = m.volume * (m.max_ask_price - m.close);
  t.difference = t.ask - t.bid;
  return t;
}

struct CurvePoint {
  PriceOffset offset;
  Quantity quantity;
};

/// Mean occupancy sampled on an offset grid, for depth-curve emission.
struct OccupancyCurve {
  std::vector<CurvePoint> points;
  std::size_t omitted = 0;  // grid offsets on or beyond the singular boundary
};

/// Evaluates the side's mean occupancy at every in-domain offset of `grid`
/// (expected sorted ascending). Out-of-domain offsets, including the singular
/// boundary itself, are dropped and counted in `omitted`.
inline OccupancyCurve occupancy_curve(std::span<const PriceOffset> grid, const GasParams& g) {
  OccupancyCurve curve;
  curve.points.reserve(grid.size());
  for (const PriceOffset eps : grid) {
    if (detail::reduced_exponent(eps, g) > 0.0)
      curve.points.push_back({eps, mean_occupancy(eps, g)});
    else
      ++curve.omitted;
  }
  return curve;
}

}  // namespace ordergas
