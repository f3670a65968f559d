#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace ordergas::detail {

// Shortest decimal form that parses back to the same double. Keeps emitted
// files byte-stable across platforms.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Quantities are conceptually share counts; print whole values without the
// trailing ".0" that to_chars would keep.
inline std::string format_quantity(double v) {
  if (std::floor(v) == v && std::abs(v) < 9.0e15) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), static_cast<long long>(v));
    return std::string(buf, res.ptr);
  }
  return format_double(v);
}

// Number of fractional digits needed to write the tick (and any tick-aligned
// price) exactly, capped at 9.
inline int tick_decimals(double tick) {
  double scaled = tick;
  for (int d = 0; d <= 9; ++d) {
    if (std::abs(scaled - std::round(scaled)) < 1e-6 * std::max(1.0, std::abs(scaled))) return d;
    scaled *= 10.0;
  }
  return 9;
}

inline std::string format_price(double price, double tick) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", tick_decimals(tick), price);
  return std::string(buf);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// from_chars that must consume the whole field; rejects empty input and
// trailing junk.
inline bool parse_double_strict(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_ll_strict(std::string_view s, long long& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Strict ISO-8601 calendar date: YYYY-MM-DD, zero-padded, valid calendar day.
inline bool parse_date(std::string_view s, std::chrono::year_month_day& out) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  int y = 0, m = 0, d = 0;
  if (!([&] {
        long long v = 0;
        if (!parse_ll_strict(s.substr(0, 4), v)) return false;
        y = static_cast<int>(v);
        if (!parse_ll_strict(s.substr(5, 2), v)) return false;
        m = static_cast<int>(v);
        if (!parse_ll_strict(s.substr(8, 2), v)) return false;
        d = static_cast<int>(v);
        return true;
      }()))
    return false;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return false;
  out = ymd;
  return true;
}

inline std::string format_date(std::chrono::year_month_day ymd) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return std::string(buf);
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace ordergas::detail
