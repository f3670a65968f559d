#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordergas/book.hpp"
#include "ordergas/detail/text.hpp"
#include "ordergas/errors.hpp"

namespace ordergas {

namespace detail {

// Integral quantities serialize as JSON integers, everything else as doubles.
inline nlohmann::json json_quantity(double v) {
  if (std::isfinite(v) && std::abs(v) < 9e15 && v == std::floor(v))
    return nlohmann::json(static_cast<long long>(v));
  return nlohmann::json(v);
}

inline double require_number(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key))
    throw ParseError(0, key, std::string("missing field \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number())
    throw ParseError(0, key, std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

inline nlohmann::json parse_json_document(std::istream& in) {
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, "", std::string("invalid JSON: ") + e.what());
  }
}

// Snap a grid price to the double nearest its decimal rendering so that
// serialized prices read back as written (98.05, not 98.05000000000001).
inline double json_price(double price, double tick) {
  return std::stod(format_price(price, tick));
}

}  // namespace detail

/// Reads a book from either serialized form:
///   {"tick": t, "orders": [{"side": "bid"|"ask", "price": p, "qty": n}, ...]}
///   {"tick": t, "levels": [{"price": p, "bid": b, "ask": a}, ...]}
/// The levels form carries per-level resting quantities; aggregates are
/// recomputed on load.
inline OrderBookSnapshot read_book_json(std::istream& in) {
  const nlohmann::json doc = detail::parse_json_document(in);
  if (!doc.is_object())
    throw ParseError(0, "", "book document must be a JSON object");
  const double tick = detail::require_number(doc, "tick");
  if (doc.contains("orders")) {
    const auto& arr = doc.at("orders");
    if (!arr.is_array())
      throw ParseError(0, "orders", "field \"orders\" must be an array");
    std::vector<LimitOrder> orders;
    orders.reserve(arr.size());
    for (const auto& entry : arr) {
      if (!entry.is_object())
        throw ParseError(0, "orders", "each order must be a JSON object");
      if (!entry.contains("side") || !entry.at("side").is_string())
        throw ParseError(0, "side", "order field \"side\" must be \"bid\" or \"ask\"");
      const std::string side_str = entry.at("side").get<std::string>();
      Side side;
      if (side_str == "bid")
        side = Side::bid;
      else if (side_str == "ask")
        side = Side::ask;
      else
        throw ParseError(0, "side", "unknown side \"" + side_str + "\"");
      const double price = detail::require_number(entry, "price");
      const double qty = detail::require_number(entry, "qty");
      if (!(qty > 0.0) || qty != std::floor(qty) || qty >= 9e15)
        throw ParseError(0, "qty", "order quantity must be a positive integer");
      orders.push_back({side, price, static_cast<long long>(qty)});
    }
    return aggregate_book(orders, tick);
  }
  if (doc.contains("levels")) {
    const auto& arr = doc.at("levels");
    if (!arr.is_array())
      throw ParseError(0, "levels", "field \"levels\" must be an array");
    std::vector<LevelQuantities> levels;
    levels.reserve(arr.size());
    for (const auto& entry : arr) {
      if (!entry.is_object())
        throw ParseError(0, "levels", "each level must be a JSON object");
      levels.push_back({detail::require_number(entry, "price"),
                        detail::require_number(entry, "bid"),
                        detail::require_number(entry, "ask")});
    }
    std::sort(levels.begin(), levels.end(),
              [](const LevelQuantities& a, const LevelQuantities& b) { return a.price < b.price; });
    return OrderBookSnapshot::from_per_level(tick, levels);
  }
  throw ParseError(0, "", "book document needs an \"orders\" or \"levels\" array");
}

/// Writes the levels form with per-level quantities.
inline void write_book_json(std::ostream& out, const OrderBookSnapshot& book) {
  nlohmann::json doc;
  doc["tick"] = book.tick();
  auto& arr = doc["levels"] = nlohmann::json::array();
  for (const auto& lvl : book.levels()) {
    nlohmann::json row;
    row["price"] = detail::json_price(lvl.price, book.tick());
    row["bid"] = detail::json_quantity(lvl.bid_qty);
    row["ask"] = detail::json_quantity(lvl.ask_qty);
    arr.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

/// Writes the orders form, one order per populated side of each level.
inline void write_orders_json(std::ostream& out, const OrderBookSnapshot& book) {
  nlohmann::json doc;
  doc["tick"] = book.tick();
  auto& arr = doc["orders"] = nlohmann::json::array();
  for (const auto& lvl : book.levels()) {
    if (lvl.bid_qty > 0.0) {
      nlohmann::json row;
      row["side"] = "bid";
      row["price"] = detail::json_price(lvl.price, book.tick());
      row["qty"] = detail::json_quantity(lvl.bid_qty);
      arr.push_back(std::move(row));
    }
    if (lvl.ask_qty > 0.0) {
      nlohmann::json row;
      row["side"] = "ask";
      row["price"] = detail::json_price(lvl.price, book.tick());
      row["qty"] = detail::json_quantity(lvl.ask_qty);
      arr.push_back(std::move(row));
    }
  }
  out << doc.dump(2) << '\n';
}

}  // namespace ordergas
