#pragma once

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordergas/detail/text.hpp"
#include "ordergas/errors.hpp"
#include "ordergas/gas.hpp"

namespace ordergas {

/// One averaged depth observation: mean aggregate quantity resting at a price
/// offset from the reference price. Operations reject or exclude points with
/// mean_quantity <= 0 (the transform below needs positive depth).
struct DepthPoint {
  PriceOffset price_offset;
  Quantity mean_quantity;
};

/// Transforms depth to the line coordinate: y = ln(1 + 1/n). Exact inverse of
/// the occupancy law, so model-generated depth maps onto a straight line in
/// the offset.
inline std::vector<std::pair<PriceOffset, double>> linearize_depth(
    std::span<const DepthPoint> points) {
  std::vector<std::pair<PriceOffset, double>> out;
  out.reserve(points.size());
  for (const DepthPoint& p : points) {
    if (!(p.mean_quantity > 0.0) || !std::isfinite(p.mean_quantity))
      throw NonPositiveQuantityError("depth at offset " + std::to_string(p.price_offset) +
                                     " must be positive, got " + std::to_string(p.mean_quantity));
    out.emplace_back(p.price_offset, std::log1p(1.0 / p.mean_quantity));
  }
  return out;
}

enum class FitStatus {
  ok,
  wrong_slope_sign,      // depth grows away from the reference price; data
                         // contradicts the model on this side
  wrong_intercept_sign,  // slope fine but implied potential would be >= 0
};

inline const char* to_string(FitStatus s) {
  switch (s) {
    case FitStatus::ok: return "ok";
    case FitStatus::wrong_slope_sign: return "WrongSlopeSign";
    case FitStatus::wrong_intercept_sign: return "WrongInterceptSign";
  }
  return "?";
}

/// Outcome of a per-side regression. A non-ok status is a result, not an
/// error: it says the observed depth is inconsistent with the model, and
/// `params` is absent. slope/intercept/r_squared describe the regression line
/// either way.
struct FitResult {
  FitStatus status = FitStatus::ok;
  double slope = 0.0;
  double intercept = 0.0;
  std::optional<GasParams> params;
  double r_squared = 0.0;        // in [0, 1]
  double rmse_transformed = 0.0; // residual RMS in y space
  std::size_t points_used = 0;
};

/// Ordinary least squares in the transformed space. Bid depth is regressed on
/// the offset itself, ask depth on its negation, so a model-consistent fit has
/// positive slope 1/T and positive intercept -mu/T on both sides; recovery is
/// T = 1/slope, mu = -intercept/slope. Zero-quantity points are excluded, not
/// clamped, and the exclusion shows up in points_used.
inline FitResult fit_gas(std::span<const DepthPoint> points, Side side) {
  std::vector<DepthPoint> used;
  used.reserve(points.size());
  for (const DepthPoint& p : points)
    if (p.mean_quantity > 0.0 && std::isfinite(p.mean_quantity)) used.push_back(p);
  if (used.size() < 2)
    throw InsufficientDataError("need at least 2 positive-depth points, got " +
                                std::to_string(used.size()));

  const auto transformed = linearize_depth(used);
  const double n = static_cast<double>(transformed.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [eps, y] : transformed) {
    sx += side == Side::bid ? eps : -eps;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [eps, y] : transformed) {
    const double dx = (side == Side::bid ? eps : -eps) - mx;
    sxx += dx * dx;
    sxy += dx * (y - my);
  }
  if (!(sxx > 0.0))
    throw InsufficientDataError("all depth points share one price offset");

  FitResult result;
  result.points_used = transformed.size();
  result.slope = sxy / sxx;
  result.intercept = my - result.slope * mx;

  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [eps, y] : transformed) {
    const double x = (side == Side::bid ? eps : -eps);
    const double r = y - (result.slope * x + result.intercept);
    ss_res += r * r;
    ss_tot += (y - my) * (y - my);
  }
  result.rmse_transformed = std::sqrt(ss_res / n);
  result.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;

  if (!(result.slope > 0.0)) {
    result.status = FitStatus::wrong_slope_sign;
    return result;
  }
  if (!(result.intercept > 0.0)) {
    result.status = FitStatus::wrong_intercept_sign;
    return result;
  }
  const double temperature = 1.0 / result.slope;
  const double potential = -result.intercept / result.slope;
  result.params.emplace(temperature, potential, side);
  return result;
}

struct Goodness {
  double r_squared;         // reported as-is; <= 0 (even -inf on constant-y
                            // data) means the line explains nothing
  double rmse_transformed;
};

/// Evaluates a given parameter set against depth observations, in the same
/// transformed space the fit uses. The comparison line is y = x(eps) for the
/// side stored in params, extended over all offsets.
inline Goodness goodness_of_fit(const GasParams& params, std::span<const DepthPoint> points) {
  std::vector<DepthPoint> used;
  used.reserve(points.size());
  for (const DepthPoint& p : points)
    if (p.mean_quantity > 0.0 && std::isfinite(p.mean_quantity)) used.push_back(p);
  if (used.size() < 2)
    throw InsufficientDataError("need at least 2 positive-depth points, got " +
                                std::to_string(used.size()));
  const auto transformed = linearize_depth(used);
  double sy = 0.0;
  for (const auto& [eps, y] : transformed) sy += y;
  const double my = sy / static_cast<double>(transformed.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [eps, y] : transformed) {
    const double r = y - detail::reduced_exponent(eps, params);
    ss_res += r * r;
    ss_tot += (y - my) * (y - my);
  }
  const double rmse = std::sqrt(ss_res / static_cast<double>(transformed.size()));
  if (ss_res == 0.0) return {1.0, rmse};
  return {1.0 - ss_res / ss_tot, rmse};  // ss_tot == 0 yields -inf, by design
}

/// Depth CSV: header `offset,quantity`, one observation per line. Zero
/// quantities pass through (the fit excludes them); negatives are rejected.
inline std::vector<DepthPoint> read_depth_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line))
    throw ParseError(1, "", "empty depth file");
  ++line_no;
  detail::strip_cr(line);
  if (line != "offset,quantity")
    throw ParseError(1, "", "expected header \"offset,quantity\", got \"" + line + "\"");
  std::vector<DepthPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 2)
      throw ParseError(line_no, "", "expected 2 fields, got " + std::to_string(fields.size()));
    double offset, quantity;
    if (!detail::parse_double_strict(fields[0], offset) || !std::isfinite(offset))
      throw ParseError(line_no, "offset", "cannot parse offset \"" + std::string(fields[0]) + "\"");
    if (!detail::parse_double_strict(fields[1], quantity) || !std::isfinite(quantity))
      throw ParseError(line_no, "quantity",
                       "cannot parse quantity \"" + std::string(fields[1]) + "\"");
    if (quantity < 0.0)
      throw ParseError(line_no, "quantity", "aggregate depth cannot be negative");
    points.push_back({offset, quantity});
  }
  return points;
}

inline void write_depth_csv(std::ostream& out, std::span<const DepthPoint> points) {
  out << "offset,quantity\n";
  for (const DepthPoint& p : points)
    out << detail::format_double(p.price_offset) << ',' << detail::format_double(p.mean_quantity)
        << '\n';
}

}  // namespace ordergas
