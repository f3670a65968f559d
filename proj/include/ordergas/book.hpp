#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordergas/errors.hpp"
#include "ordergas/gas.hpp"

namespace ordergas {

/// One resting limit order. Bids execute at or below the limit, asks at or
/// above it.
struct LimitOrder {
  Side side;
  double limit_price;   // > 0; snapped to the book tick on aggregation
  long long quantity;   // shares, > 0
};

/// Per-level quantities before aggregation, used when reading serialized
/// books.
struct LevelQuantities {
  double price;
  Quantity bid_qty;
  Quantity ask_qty;
};

/// Tick-quantized book snapshot. Levels are sorted by ascending price and
/// carry both the shares resting at the level and the aggregates that drive
/// clearing: agg_bid(p) sums bids with limit >= p (non-increasing in p),
/// agg_ask(p) sums asks with limit <= p (non-decreasing in p).
class OrderBookSnapshot {
public:
  struct Level {
    long long index;   // price / tick
    double price;
    Quantity bid_qty;
    Quantity ask_qty;
    Quantity agg_bid;
    Quantity agg_ask;
  };

  double tick() const { return tick_; }
  std::span<const Level> levels() const { return levels_; }
  bool empty() const { return levels_.empty(); }

  /// Level whose tick-quantized price matches `price`, or nullptr. A price
  /// more than a millionth of a tick off the grid never matches.
  const Level* find(double price) const {
    const long long idx = std::llround(price / tick_);
    if (std::abs(price - static_cast<double>(idx) * tick_) > 1e-6 * tick_) return nullptr;
    const auto it = std::lower_bound(
        levels_.begin(), levels_.end(), idx,
        [](const Level& lvl, long long key) { return lvl.index < key; });
    if (it == levels_.end() || it->index != idx) return nullptr;
    return &*it;
  }

  /// Builds a snapshot from already-aggregated per-level quantities (the
  /// serialized "levels" form). Prices must be strictly increasing, positive
  /// and tick-aligned; quantities non-negative.
  static OrderBookSnapshot from_per_level(double tick, std::span<const LevelQuantities> levels) {
    check_tick(tick);
    if (levels.empty()) throw EmptyBookError("book has no levels");
    std::vector<Level> rows;
    rows.reserve(levels.size());
    long long prev_index = std::numeric_limits<long long>::min();
    for (const LevelQuantities& lq : levels) {
      if (!std::isfinite(lq.price) || lq.price <= 0.0)
        throw InvariantError("level price must be positive, got " + std::to_string(lq.price));
      const long long idx = std::llround(lq.price / tick);
      if (std::abs(lq.price - static_cast<double>(idx) * tick) > 1e-6 * tick)
        throw InvariantError("level price " + std::to_string(lq.price) +
                             " is not aligned to tick " + std::to_string(tick));
      if (idx <= prev_index)
        throw InvariantError("level prices must be strictly increasing at price " +
                             std::to_string(lq.price));
      if (!(lq.bid_qty >= 0.0) || !(lq.ask_qty >= 0.0) || !std::isfinite(lq.bid_qty) ||
          !std::isfinite(lq.ask_qty))
        throw InvariantError("level quantities must be non-negative at price " +
                             std::to_string(lq.price));
      prev_index = idx;
      rows.push_back({idx, lq.price, lq.bid_qty, lq.ask_qty, 0.0, 0.0});
    }
    fill_aggregates(rows);
    return OrderBookSnapshot(tick, std::move(rows));
  }

private:
  OrderBookSnapshot(double tick, std::vector<Level> levels)
      : tick_(tick), levels_(std::move(levels)) {}

  static void check_tick(double tick) {
    if (!std::isfinite(tick) || !(tick > 0.0))
      throw NonPositiveTickError("tick must be positive, got " + std::to_string(tick));
  }

  // agg_ask accumulates upward in price, agg_bid downward.
  static void fill_aggregates(std::vector<Level>& rows) {
    double running = 0.0;
    for (Level& lvl : rows) {
      running += lvl.ask_qty;
      lvl.agg_ask = running;
    }
    running = 0.0;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      running += it->bid_qty;
      it->agg_bid = running;
    }
  }

  double tick_ = 0.0;
  std::vector<Level> levels_;

  friend OrderBookSnapshot aggregate_book(std::span<const LimitOrder>, double);
  friend OrderBookSnapshot sample_synthetic_book(const GasParams&, const GasParams&, double,
                                                 double, std::uint64_t);
  friend OrderBookSnapshot model_book(const GasParams&, const GasParams&, double, double);
};

/// Snaps raw limit orders onto the tick grid (round half-up), sums per level
/// and fills the aggregate columns.
inline OrderBookSnapshot aggregate_book(std::span<const LimitOrder> orders, double tick) {
  if (!std::isfinite(tick) || !(tick > 0.0))
    throw NonPositiveTickError("tick must be positive, got " + std::to_string(tick));
  if (orders.empty()) throw EmptyBookError("no orders to aggregate");
  std::map<long long, std::pair<Quantity, Quantity>> per_level;  // index -> (bid, ask)
  for (const LimitOrder& o : orders) {
    if (!std::isfinite(o.limit_price) || o.limit_price <= 0.0)
      throw InvariantError("limit price must be positive, got " + std::to_string(o.limit_price));
    if (o.quantity <= 0)
      throw InvariantError("order quantity must be positive, got " + std::to_string(o.quantity));
    const long long idx = std::llround(o.limit_price / tick);
    if (idx <= 0)
      throw InvariantError("limit price " + std::to_string(o.limit_price) +
                           " quantizes to a non-positive level");
    auto& cell = per_level[idx];
    (o.side == Side::bid ? cell.first : cell.second) += static_cast<Quantity>(o.quantity);
  }
  std::vector<OrderBookSnapshot::Level> rows;
  rows.reserve(per_level.size());
  for (const auto& [idx, qty] : per_level)
    rows.push_back({idx, static_cast<double>(idx) * tick, qty.first, qty.second, 0.0, 0.0});
  OrderBookSnapshot::fill_aggregates(rows);
  return OrderBookSnapshot(tick, std::move(rows));
}

/// Shares that would change hands if the session cleared at `price`:
/// min(agg_bid, agg_ask) there. `price` must be an existing level.
inline Quantity tradeable_quantity(const OrderBookSnapshot& book, double price) {
  const OrderBookSnapshot::Level* lvl = book.find(price);
  if (lvl == nullptr)
    throw UnknownLevelError("no book level at price " + std::to_string(price));
  return std::min(lvl->agg_bid, lvl->agg_ask);
}

struct ClearingResult {
  double price;
  Quantity tradeable;
};

/// The level that maximizes the tradeable quantity. Ties go to the level
/// closest to `prev_close`, then to the lower price.
inline ClearingResult clearing_price(const OrderBookSnapshot& book, double prev_close) {
  if (book.empty()) throw EmptyBookError("cannot clear an empty book");
  const OrderBookSnapshot::Level* best = nullptr;
  Quantity best_qty = -1.0;
  double best_dist = 0.0;
  for (const OrderBookSnapshot::Level& lvl : book.levels()) {
    const Quantity qty = std::min(lvl.agg_bid, lvl.agg_ask);
    const double dist = std::abs(lvl.price - prev_close);
    if (best == nullptr || qty > best_qty || (qty == best_qty && dist < best_dist)) {
      best = &lvl;
      best_qty = qty;
      best_dist = dist;
    }
  }
  if (!(best_qty > 0.0))
    throw NoTradeError("no level has positive tradeable quantity");
  return {best->price, best_qty};
}

namespace detail {

// Tick-grid indices strictly inside the open offset interval
// (mu_b, -mu_a) around prev_close, clipped to positive prices.
inline std::pair<long long, long long> book_grid(const GasParams& bid, const GasParams& ask,
                                                 double prev_close, double tick) {
  if (!std::isfinite(tick) || !(tick > 0.0))
    throw NonPositiveTickError("tick must be positive, got " + std::to_string(tick));
  if (!std::isfinite(prev_close))
    throw InvariantError("prev_close must be finite");
  const double lo = prev_close + bid.chemical_potential;
  const double hi = prev_close - ask.chemical_potential;
  const double guard = tick * 1e-9;
  long long k_lo = static_cast<long long>(std::floor(lo / tick)) + 1;
  while (static_cast<double>(k_lo) * tick <= lo + guard) ++k_lo;
  k_lo = std::max<long long>(k_lo, 1);
  long long k_hi = static_cast<long long>(std::ceil(hi / tick)) - 1;
  while (static_cast<double>(k_hi) * tick >= hi - guard) --k_hi;
  if (k_hi < k_lo)
    throw EmptyGridError("no tick level fits strictly inside the offset interval (" +
                         std::to_string(bid.chemical_potential) + ", " +
                         std::to_string(-ask.chemical_potential) + ") around " +
                         std::to_string(prev_close));
  return {k_lo, k_hi};
}

// Geometric draw by inverted CDF: u is a 53-bit uniform in [0, 1),
// P(n) = (1 - q) q^n with q = exp(-x). Documented in the README as the
// seed-to-stream contract.
inline long long geometric_draw(std::mt19937_64& rng, double x) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return static_cast<long long>(std::floor(-std::log1p(-u) / x));
}

}  // namespace detail

/// One random book consistent with the gas model: at every grid level the
/// resting quantity on each side is an independent draw from that side's
/// geometric occupation law. Reproducible from the seed; see the README for
/// the exact stream contract.
inline OrderBookSnapshot sample_synthetic_book(const GasParams& bid, const GasParams& ask,
                                               double prev_close, double tick,
                                               std::uint64_t seed) {
  detail::require_side(bid, Side::bid, "sample_synthetic_book");
  detail::require_side(ask, Side::ask, "sample_synthetic_book");
  const auto [k_lo, k_hi] = detail::book_grid(bid, ask, prev_close, tick);
  std::mt19937_64 rng(seed);
  std::vector<OrderBookSnapshot::Level> rows;
  rows.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double price = static_cast<double>(k) * tick;
    const double eps = price - prev_close;
    const double x_bid = detail::reduced_exponent(eps, bid);
    const double x_ask = detail::reduced_exponent(eps, ask);
    if (x_bid <= 0.0 || x_ask <= 0.0) continue;  // grid guard leaves these out
    const auto bid_qty = static_cast<Quantity>(detail::geometric_draw(rng, x_bid));
    const auto ask_qty = static_cast<Quantity>(detail::geometric_draw(rng, x_ask));
    rows.push_back({k, price, bid_qty, ask_qty, 0.0, 0.0});
  }
  if (rows.empty()) throw EmptyGridError("all grid levels fell outside the gas domains");
  OrderBookSnapshot::fill_aggregates(rows);
  return OrderBookSnapshot(tick, std::move(rows));
}

/// Noise-free book: the aggregate columns hold the exact mean occupancies of
/// the two gases on the grid, as reals. Clearing such a book lands within one
/// tick of `equilibrium_point`. Per-level quantities are the increments
/// between adjacent aggregate values.
inline OrderBookSnapshot model_book(const GasParams& bid, const GasParams& ask, double prev_close,
                                    double tick) {
  detail::require_side(bid, Side::bid, "model_book");
  detail::require_side(ask, Side::ask, "model_book");
  const auto [k_lo, k_hi] = detail::book_grid(bid, ask, prev_close, tick);
  const auto count = static_cast<std::size_t>(k_hi - k_lo + 1);
  std::vector<OrderBookSnapshot::Level> rows;
  rows.reserve(count);
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double price = static_cast<double>(k) * tick;
    const double eps = price - prev_close;
    rows.push_back({k, price, 0.0, 0.0, mean_occupancy(eps, bid), mean_occupancy(eps, ask)});
  }
  for (std::size_t i = 0; i < count; ++i) {
    rows[i].bid_qty = i + 1 < count ? std::max(0.0, rows[i].agg_bid - rows[i + 1].agg_bid)
                                    : rows[i].agg_bid;
    rows[i].ask_qty = i > 0 ? std::max(0.0, rows[i].agg_ask - rows[i - 1].agg_ask)
                            : rows[i].agg_ask;
  }
  return OrderBookSnapshot(tick, std::move(rows));
}

}  // namespace ordergas
