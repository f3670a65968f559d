// Command-line front end: occupancy curves, book clearing, synthetic book
// generation, depth-curve fitting, and the OHLCV thermo/VAO pipeline.
//
// Exit codes: 0 success (model-falsification outcomes included), 1 domain
// errors (the error name and context go to stderr), 2 malformed invocations.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordergas/ordergas.hpp"

namespace {

// "-" selects the standard stream, anything else is opened as a file.
class InputStream {
public:
  explicit InputStream(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open input file: " + path);
    }
  }
  std::istream& get() { return file_.is_open() ? file_ : std::cin; }

private:
  std::ifstream file_;
};

class OutputStream {
public:
  explicit OutputStream(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

struct CurveOptions {
  std::string side;
  double t_bid = 0.0, mu_bid = 0.0, t_ask = 0.0, mu_ask = 0.0;
  double eps_min = 0.0, eps_max = 0.0;
  double step = 0.0;
  long long points = 0;
  std::string output = "-";
  CLI::Option* t_bid_opt = nullptr;
  CLI::Option* mu_bid_opt = nullptr;
  CLI::Option* t_ask_opt = nullptr;
  CLI::Option* mu_ask_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* points_opt = nullptr;
};

void run_curve(const CurveOptions& o) {
  const bool bid = o.side == "bid";
  if (bid && (!*o.t_bid_opt || !*o.mu_bid_opt))
    throw CLI::ValidationError("curve", "--side bid needs --t-bid and --mu-bid");
  if (!bid && (!*o.t_ask_opt || !*o.mu_ask_opt))
    throw CLI::ValidationError("curve", "--side ask needs --t-ask and --mu-ask");
  if (*o.step_opt && *o.points_opt)
    throw CLI::ValidationError("curve", "--step and --points are mutually exclusive");
  if (!(o.eps_max >= o.eps_min))
    throw CLI::ValidationError("curve", "--eps-max must be at least --eps-min");

  const ordergas::GasParams params =
      bid ? ordergas::GasParams(o.t_bid, o.mu_bid, ordergas::Side::bid)
          : ordergas::GasParams(o.t_ask, o.mu_ask, ordergas::Side::ask);

  std::vector<double> grid;
  if (*o.step_opt) {
    if (!(o.step > 0.0)) throw CLI::ValidationError("curve", "--step must be positive");
    const double guard = o.step * 1e-9;
    for (double eps = o.eps_min; eps <= o.eps_max + guard; eps += o.step) grid.push_back(eps);
  } else {
    const long long n = *o.points_opt ? o.points : 200;
    if (n < 2) throw CLI::ValidationError("curve", "--points must be at least 2");
    for (long long i = 0; i < n; ++i)
      grid.push_back(o.eps_min +
                     (o.eps_max - o.eps_min) * static_cast<double>(i) / static_cast<double>(n - 1));
  }

  // Evaluate directly rather than through the omit-and-count helper: a grid
  // reaching outside the domain is an error here, not something to silently
  // trim.
  std::vector<ordergas::DepthPoint> points;
  points.reserve(grid.size());
  for (const double eps : grid) points.push_back({eps, ordergas::mean_occupancy(eps, params)});
  OutputStream out(o.output);
  ordergas::write_depth_csv(out.get(), points);
}

struct ClearOptions {
  std::string book = "-";
  double prev_close = 0.0;
  double at = 0.0;
  bool levels = false;
  CLI::Option* at_opt = nullptr;
};

void run_clear(const ClearOptions& o) {
  InputStream in(o.book);
  const ordergas::OrderBookSnapshot book = ordergas::read_book_json(in.get());
  const double tick = book.tick();
  if (o.levels) {
    std::cout << "price,bid,ask,agg_bid,agg_ask,tradeable\n";
    for (const auto& lvl : book.levels())
      std::cout << ordergas::detail::format_price(lvl.price, tick) << ','
                << ordergas::detail::format_quantity(lvl.bid_qty) << ','
                << ordergas::detail::format_quantity(lvl.ask_qty) << ','
                << ordergas::detail::format_quantity(lvl.agg_bid) << ','
                << ordergas::detail::format_quantity(lvl.agg_ask) << ','
                << ordergas::detail::format_quantity(std::min(lvl.agg_bid, lvl.agg_ask)) << '\n';
    return;
  }
  std::cout << "price,tradeable\n";
  if (*o.at_opt) {
    const ordergas::Quantity qty = ordergas::tradeable_quantity(book, o.at);
    std::cout << ordergas::detail::format_price(o.at, tick) << ','
              << ordergas::detail::format_quantity(qty) << '\n';
    return;
  }
  const ordergas::ClearingResult result = ordergas::clearing_price(book, o.prev_close);
  std::cout << ordergas::detail::format_price(result.price, tick) << ','
            << ordergas::detail::format_quantity(result.tradeable) << '\n';
}

struct SampleOptions {
  double t_bid = 0.0, mu_bid = 0.0, t_ask = 0.0, mu_ask = 0.0;
  double prev_close = 0.0, tick = 0.0;
  std::uint64_t seed = 0;
  std::string output = "-";
};

void run_sample(const SampleOptions& o) {
  const ordergas::GasParams bid(o.t_bid, o.mu_bid, ordergas::Side::bid);
  const ordergas::GasParams ask(o.t_ask, o.mu_ask, ordergas::Side::ask);
  const ordergas::OrderBookSnapshot book =
      ordergas::sample_synthetic_book(bid, ask, o.prev_close, o.tick, o.seed);
  OutputStream out(o.output);
  ordergas::write_book_json(out.get(), book);
}

struct FitOptions {
  std::string depth = "-";
  std::string side;
  std::string output = "-";
};

void run_fit(const FitOptions& o) {
  InputStream in(o.depth);
  const std::vector<ordergas::DepthPoint> points = ordergas::read_depth_csv(in.get());
  const ordergas::Side side = o.side == "bid" ? ordergas::Side::bid : ordergas::Side::ask;
  const ordergas::FitResult result = ordergas::fit_gas(points, side);
  nlohmann::json doc;
  doc["status"] = ordergas::to_string(result.status);
  doc["side"] = o.side;
  doc["slope"] = result.slope;
  doc["intercept"] = result.intercept;
  doc["temperature"] =
      result.params ? nlohmann::json(result.params->temperature) : nlohmann::json();
  doc["chemical_potential"] =
      result.params ? nlohmann::json(result.params->chemical_potential) : nlohmann::json();
  doc["r_squared"] = result.r_squared;
  doc["rmse_transformed"] = result.rmse_transformed;
  doc["points_used"] = result.points_used;
  OutputStream out(o.output);
  out.get() << doc.dump(2) << '\n';
}

struct ThermoOptions {
  std::string input = "-";
  std::string output = "-";
  std::string format = "csv";
  long long vao_window = 10;
  bool keep_zero_volume = false;
};

void run_thermo(const ThermoOptions& o) {
  InputStream in(o.input);
  const std::vector<ordergas::DailyBar> bars = ordergas::parse_ohlcv(in.get());
  const auto format =
      o.format == "csv" ? ordergas::OutputFormat::csv : ordergas::OutputFormat::json;
  OutputStream out(o.output);
  if (bars.empty()) {
    ordergas::write_output(out.get(), {}, format);
    return;
  }
  ordergas::PipelineConfig cfg;
  cfg.vao_window = static_cast<std::size_t>(o.vao_window);
  // Zero-volume bars are normally carried through as flagged null records;
  // keeping them in the computation makes them hard errors instead, since the
  // model has no temperatures at zero exchanged volume.
  cfg.skip_zero_volume = !o.keep_zero_volume;
  const auto records = ordergas::vao_series(ordergas::thermo_series(bars, cfg), cfg);
  ordergas::write_output(out.get(), records, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grand-canonical order-book model tools"};
  app.set_version_flag("--version", "ordergas 1.0.0");
  app.require_subcommand(1);

  CurveOptions curve;
  CLI::App* curve_cmd = app.add_subcommand("curve", "Emit a mean-occupancy depth curve as CSV");
  curve_cmd->add_option("--side", curve.side, "Which gas to evaluate")
      ->required()
      ->check(CLI::IsMember({"bid", "ask"}));
  curve.t_bid_opt = curve_cmd->add_option("--t-bid", curve.t_bid, "Bid gas temperature");
  curve.mu_bid_opt = curve_cmd->add_option("--mu-bid", curve.mu_bid, "Bid chemical potential");
  curve.t_ask_opt = curve_cmd->add_option("--t-ask", curve.t_ask, "Ask gas temperature");
  curve.mu_ask_opt = curve_cmd->add_option("--mu-ask", curve.mu_ask, "Ask chemical potential");
  curve_cmd->add_option("--eps-min", curve.eps_min, "Lowest price offset")->required();
  curve_cmd->add_option("--eps-max", curve.eps_max, "Highest price offset")->required();
  curve.step_opt = curve_cmd->add_option("--step", curve.step, "Grid spacing");
  curve.points_opt =
      curve_cmd->add_option("--points", curve.points, "Grid size (default 200)");
  curve_cmd->add_option("--output", curve.output, "Output path, - for stdout");
  curve_cmd->callback([&curve] { run_curve(curve); });

  ClearOptions clear;
  CLI::App* clear_cmd =
      app.add_subcommand("clear", "Clear a book: the price maximizing the tradeable quantity");
  clear_cmd->add_option("--book", clear.book, "Book JSON path, - for stdin");
  clear_cmd->add_option("--prev-close", clear.prev_close, "Previous closure price (tie-break)")
      ->required();
  clear.at_opt =
      clear_cmd->add_option("--at", clear.at, "Report the tradeable quantity at this level only");
  clear_cmd->add_flag("--levels", clear.levels, "Print the full per-level table instead");
  clear.at_opt->excludes("--levels");
  clear_cmd->callback([&clear] { run_clear(clear); });

  SampleOptions sample;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw a random book from the gas model (book JSON)");
  sample_cmd->add_option("--t-bid", sample.t_bid, "Bid gas temperature")->required();
  sample_cmd->add_option("--mu-bid", sample.mu_bid, "Bid chemical potential")->required();
  sample_cmd->add_option("--t-ask", sample.t_ask, "Ask gas temperature")->required();
  sample_cmd->add_option("--mu-ask", sample.mu_ask, "Ask chemical potential")->required();
  sample_cmd->add_option("--prev-close", sample.prev_close, "Previous closure price")->required();
  sample_cmd->add_option("--tick", sample.tick, "Price grid increment")->required();
  sample_cmd->add_option("--seed", sample.seed, "Generator seed (default 0)");
  sample_cmd->add_option("--output", sample.output, "Output path, - for stdout");
  sample_cmd->callback([&sample] { run_sample(sample); });

  FitOptions fit;
  CLI::App* fit_cmd =
      app.add_subcommand("fit", "Fit gas parameters to a depth CSV, result as JSON");
  fit_cmd->add_option("--depth", fit.depth, "Depth CSV path, - for stdin");
  fit_cmd->add_option("--side", fit.side, "Which side the depth belongs to")
      ->required()
      ->check(CLI::IsMember({"bid", "ask"}));
  fit_cmd->add_option("--output", fit.output, "Output path, - for stdout");
  fit_cmd->callback([&fit] { run_fit(fit); });

  ThermoOptions thermo;
  CLI::App* thermo_cmd =
      app.add_subcommand("thermo", "OHLCV bars to per-interval temperatures and VAO");
  thermo_cmd->add_option("--input", thermo.input, "OHLCV CSV path, - for stdin");
  thermo_cmd->add_option("--output", thermo.output, "Output path, - for stdout");
  thermo_cmd->add_option("--format", thermo.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  thermo_cmd->add_option("--vao-window", thermo.vao_window, "Rolling window length (bars)")
      ->check(CLI::PositiveNumber);
  thermo_cmd->add_flag("--keep-zero-volume", thermo.keep_zero_volume,
                       "Treat zero-volume bars as data (fails on them) instead of "
                       "flagging and skipping");
  thermo_cmd->callback([&thermo] { run_thermo(thermo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ordergas::Error& e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
