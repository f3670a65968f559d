#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ordergas {

// Base of every domain error thrown by this library. `name()` is the stable
// identifier printed by the CLI and asserted in tests; `what()` carries the
// context of the particular failure.
class Error : public std::runtime_error {
public:
  Error(std::string_view name, const std::string& what)
      : std::runtime_error(what), name_(name) {}

  std::string_view name() const noexcept { return name_; }

private:
  std::string_view name_;  // always a string literal
};

// A constructor argument violated a documented type invariant.
struct InvariantError : Error {
  explicit InvariantError(const std::string& what) : Error("InvariantError", what) {}
};

// --- gas model ---

struct OutOfDomainError : Error {
  explicit OutOfDomainError(const std::string& what) : Error("OutOfDomain", what) {}
};

// Offset sits exactly on the singular boundary where the occupancy law blows
// up. Reported as an error so downstream arithmetic never sees infinities.
struct DivergenceError : Error {
  explicit DivergenceError(const std::string& what) : Error("Divergence", what) {}
};

struct NoIntersectionError : Error {
  explicit NoIntersectionError(const std::string& what) : Error("NoIntersection", what) {}
};

struct ZeroVolumeError : Error {
  explicit ZeroVolumeError(const std::string& what) : Error("ZeroVolume", what) {}
};

// --- order book ---

struct EmptyBookError : Error {
  explicit EmptyBookError(const std::string& what) : Error("EmptyBook", what) {}
};

struct NonPositiveTickError : Error {
  explicit NonPositiveTickError(const std::string& what) : Error("NonPositiveTick", what) {}
};

struct UnknownLevelError : Error {
  explicit UnknownLevelError(const std::string& what) : Error("UnknownLevel", what) {}
};

struct NoTradeError : Error {
  explicit NoTradeError(const std::string& what) : Error("NoTrade", what) {}
};

struct EmptyGridError : Error {
  explicit EmptyGridError(const std::string& what) : Error("EmptyGrid", what) {}
};

// --- calibration ---

struct NonPositiveQuantityError : Error {
  explicit NonPositiveQuantityError(const std::string& what)
      : Error("NonPositiveQuantity", what) {}
};

struct InsufficientDataError : Error {
  explicit InsufficientDataError(const std::string& what) : Error("InsufficientData", what) {}
};

// --- input files ---

// Malformed text or JSON input. `line()` is 1-based; 0 means the location is
// not line-addressable (e.g. a whole-document JSON problem). `column()` names
// the offending field when known.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::string column, const std::string& what)
      : Error("ParseError", what), line_(line), column_(std::move(column)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::string column_;
};

struct OrderingError : Error {
  explicit OrderingError(const std::string& what) : Error("OrderingError", what) {}
};

struct TooFewBarsError : Error {
  explicit TooFewBarsError(const std::string& what) : Error("TooFewBars", what) {}
};

}  // namespace ordergas
