#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "ordergas/detail/text.hpp"
#include "ordergas/errors.hpp"
#include "ordergas/gas.hpp"

namespace ordergas {

/// One OHLCV bar. The bar interval is whatever the input file uses; every
/// computation here treats it as one step.
struct DailyBar {
  std::chrono::year_month_day date;
  double open;
  double high;
  double low;
  double close;
  long long volume;
};

struct RecordFlags {
  bool zero_volume = false;
  bool degenerate_bid = false;   // close hit the session low
  bool degenerate_ask = false;   // close hit the session high

  bool any() const { return zero_volume || degenerate_bid || degenerate_ask; }

  std::string joined() const {
    std::string out;
    const auto append = [&out](const char* token) {
      if (!out.empty()) out += '|';
      out += token;
    };
    if (zero_volume) append("ZERO_VOLUME");
    if (degenerate_bid) append("DEGENERATE_BID");
    if (degenerate_ask) append("DEGENERATE_ASK");
    return out;
  }
};

/// Per-bar output row. All value fields are null on zero-volume bars that
/// were skipped rather than rejected; vao is additionally null until its
/// window fills.
struct ThermoRecord {
  std::chrono::year_month_day date;
  std::optional<double> t_bid;
  std::optional<double> t_ask;
  std::optional<double> delta_t;
  std::optional<double> t_bid_lin;
  std::optional<double> t_ask_lin;
  std::optional<double> delta_t_lin;
  std::optional<double> vao;
  RecordFlags flags;
};

struct PipelineConfig {
  std::size_t vao_window = 10;
  bool skip_zero_volume = true;
};

/// Input CSV: header exactly `date,open,high,low,close,volume`, ISO dates,
/// strictly ascending, volumes non-negative integers. CRLF tolerated, blank
/// lines skipped.
inline std::vector<DailyBar> parse_ohlcv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line))
    throw ParseError(1, "", "empty bar file");
  ++line_no;
  detail::strip_cr(line);
  if (line != "date,open,high,low,close,volume")
    throw ParseError(1, "", "expected header \"date,open,high,low,close,volume\", got \"" + line +
                            "\"");
  std::vector<DailyBar> bars;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 6)
      throw ParseError(line_no, "", "expected 6 fields, got " + std::to_string(fields.size()));
    DailyBar bar{};
    if (!detail::parse_date(fields[0], bar.date))
      throw ParseError(line_no, "date", "cannot parse date \"" + std::string(fields[0]) + "\"");
    const char* names[] = {"open", "high", "low", "close"};
    double* slots[] = {&bar.open, &bar.high, &bar.low, &bar.close};
    for (int i = 0; i < 4; ++i)
      if (!detail::parse_double_strict(fields[i + 1], *slots[i]) || !std::isfinite(*slots[i]))
        throw ParseError(line_no, names[i],
                         "cannot parse " + std::string(names[i]) + " \"" +
                             std::string(fields[i + 1]) + "\"");
    if (!detail::parse_ll_strict(fields[5], bar.volume))
      throw ParseError(line_no, "volume",
                       "volume must be an integer, got \"" + std::string(fields[5]) + "\"");
    const std::string where = " (line " + std::to_string(line_no) + ", " +
                              detail::format_date(bar.date) + ")";
    if (bar.volume < 0)
      throw InvariantError("volume must be non-negative" + where);
    if (!(bar.low > 0.0))
      throw InvariantError("prices must be positive" + where);
    if (!(bar.low <= bar.open && bar.open <= bar.high))
      throw InvariantError("open outside [low, high]" + where);
    if (!(bar.low <= bar.close && bar.close <= bar.high))
      throw InvariantError("close outside [low, high]" + where);
    if (!bars.empty() && !(bars.back().date < bar.date))
      throw OrderingError("dates must be strictly ascending" + where);
    bars.push_back(bar);
  }
  return bars;
}

/// Computes per-bar temperatures. The first bar only supplies the previous
/// close, so n bars give n-1 records. vao stays null here; see vao_series.
inline std::vector<ThermoRecord> thermo_series(std::span<const DailyBar> bars,
                                               const PipelineConfig& cfg) {
  if (bars.size() < 2)
    throw TooFewBarsError("need at least 2 bars, got " + std::to_string(bars.size()));
  std::vector<ThermoRecord> records;
  records.reserve(bars.size() - 1);
  for (std::size_t t = 1; t < bars.size(); ++t) {
    const DailyBar& bar = bars[t];
    const double prev_close = bars[t - 1].close;
    ThermoRecord rec{};
    rec.date = bar.date;
    if (bar.volume == 0) {
      if (!cfg.skip_zero_volume)
        throw ZeroVolumeError("zero volume on " + detail::format_date(bar.date));
      rec.flags.zero_volume = true;
      records.push_back(rec);
      continue;
    }
    if (!(bar.low < prev_close && prev_close < bar.high))
      throw InvariantError("previous close " + std::to_string(prev_close) +
                           " falls outside (low, high) of " + detail::format_date(bar.date) +
                           "; the model needs both sides of the reference price");
    const MarketObservables m(prev_close, bar.close, bar.low, bar.high,
                              static_cast<double>(bar.volume));
    const Temperatures temps = temperatures_from_observables(m);
    const LinearizedTemperatures lin = linearized_temperatures(m);
    rec.t_bid = temps.bid;
    rec.t_ask = temps.ask;
    rec.delta_t = temps.ask - temps.bid;
    rec.t_bid_lin = lin.bid;
    rec.t_ask_lin = lin.ask;
    rec.delta_t_lin = lin.difference;
    rec.flags.degenerate_bid = temps.bid_degenerate;
    rec.flags.degenerate_ask = temps.ask_degenerate;
    records.push_back(rec);
  }
  return records;
}

/// Fills vao as the rolling sum of delta_t_lin over the most recent
/// `vao_window` records that carry a value. Records before the window first
/// fills keep vao null, as do records whose own delta_t_lin is null. Each
/// window is summed afresh left to right.
inline std::vector<ThermoRecord> vao_series(std::vector<ThermoRecord> records,
                                            const PipelineConfig& cfg) {
  if (cfg.vao_window < 1)
    throw InvariantError("vao_window must be at least 1");
  std::vector<double> deltas;  // non-null delta_t_lin values in order
  deltas.reserve(records.size());
  for (ThermoRecord& rec : records) {
    rec.vao.reset();
    if (!rec.delta_t_lin) continue;
    deltas.push_back(*rec.delta_t_lin);
    if (deltas.size() < cfg.vao_window) continue;
    double sum = 0.0;
    for (std::size_t i = deltas.size() - cfg.vao_window; i < deltas.size(); ++i) sum += deltas[i];
    rec.vao = sum;
  }
  return records;
}

enum class OutputFormat { csv, json };

namespace detail {

inline void write_output_csv(std::ostream& out, std::span<const ThermoRecord> records) {
  out << "date,t_bid,t_ask,delta_t,t_bid_lin,t_ask_lin,delta_t_lin,vao,flags\n";
  for (const ThermoRecord& rec : records) {
    out << format_date(rec.date);
    for (const auto* field : {&rec.t_bid, &rec.t_ask, &rec.delta_t, &rec.t_bid_lin, &rec.t_ask_lin,
                              &rec.delta_t_lin, &rec.vao}) {
      out << ',';
      if (*field) out << format_double(**field);
    }
    out << ',' << rec.flags.joined() << '\n';
  }
}

inline void write_output_json(std::ostream& out, std::span<const ThermoRecord> records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ThermoRecord& rec : records) {
    nlohmann::json row;
    row["date"] = format_date(rec.date);
    const std::pair<const char*, const std::optional<double>*> fields[] = {
        {"t_bid", &rec.t_bid},         {"t_ask", &rec.t_ask},
        {"delta_t", &rec.delta_t},     {"t_bid_lin", &rec.t_bid_lin},
        {"t_ask_lin", &rec.t_ask_lin}, {"delta_t_lin", &rec.delta_t_lin},
        {"vao", &rec.vao}};
    for (const auto& [name, value] : fields)
      row[name] = *value ? nlohmann::json(**value) : nlohmann::json();
    auto& flags = row["flags"] = nlohmann::json::array();
    if (rec.flags.zero_volume) flags.push_back("ZERO_VOLUME");
    if (rec.flags.degenerate_bid) flags.push_back("DEGENERATE_BID");
    if (rec.flags.degenerate_ask) flags.push_back("DEGENERATE_ASK");
    arr.push_back(std::move(row));
  }
  out << arr.dump(2) << '\n';
}

}  // namespace detail

/// Serializes records. CSV nulls are empty fields; JSON nulls are null.
/// Numeric formatting round-trips exactly, so identical records always
/// produce identical bytes.
inline void write_output(std::ostream& out, std::span<const ThermoRecord> records,
                         OutputFormat format) {
  if (format == OutputFormat::csv)
    detail::write_output_csv(out, records);
  else
    detail::write_output_json(out, records);
}

}  // namespace ordergas
