// End-to-end acceptance checks. Each check prints one [PASS]/[FAIL] line;
// the process exits nonzero if any check fails. Run via ctest or directly:
//
//   build/tests/acceptance

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ordergas/ordergas.hpp"
#include "subprocess.hpp"

namespace {

const std::string kCli = ORDERGAS_CLI_PATH;
const std::string kData = ORDERGAS_DATA_DIR;

std::string fmt(double v) { return ordergas::detail::format_double(v); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

struct PairSchedule {
  std::mt19937_64 rng;
  explicit PairSchedule(std::uint64_t seed) : rng(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  std::pair<ordergas::GasParams, ordergas::GasParams> next() {
    const double tb = uniform(0.5, 50.0);
    const double mb = uniform(-20.0, -0.5);
    const double ta = uniform(0.5, 50.0);
    const double ma = uniform(-20.0, -0.5);
    return {ordergas::GasParams(tb, mb, ordergas::Side::bid),
            ordergas::GasParams(ta, ma, ordergas::Side::ask)};
  }
};

// --- 1: worked clearing example ------------------------------------------

bool check_clearing(std::string& detail) {
  const std::string book = kData + "/three_level_book.json";
  const auto r = testutil::run_command(kCli + " clear --book " + testutil::quoted(book) +
                                       " --prev-close 23.90");
  if (r.exit_code != 0 || r.output != "price,tradeable\n24.00,1000\n") {
    detail = "cli clear gave exit " + std::to_string(r.exit_code) + ", output " + r.output;
    return false;
  }
  std::ifstream in(book);
  const auto snapshot = ordergas::read_book_json(in);
  const long long want[3] = {400, 1000, 200};
  const double prices[3] = {23.95, 24.00, 24.05};
  for (int i = 0; i < 3; ++i) {
    const double got = ordergas::tradeable_quantity(snapshot, prices[i]);
    if (got != static_cast<double>(want[i])) {
      detail = "tradeable at " + fmt(prices[i]) + " = " + fmt(got);
      return false;
    }
  }
  detail = "clearing price 24.00, volume 1000, per-level tradeable 400/1000/200";
  return true;
}

// --- 2: equilibrium fixed point ------------------------------------------

bool check_equilibrium(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  PairSchedule pairs(20260301);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [bid, ask] = pairs.next();
    const auto eq = ordergas::equilibrium_point(bid, ask);
    worst = std::max(worst, rel_err(ordergas::mean_occupancy(eq.price_offset, bid), eq.volume));
    worst = std::max(worst, rel_err(ordergas::mean_occupancy(eq.price_offset, ask), eq.volume));
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  detail = "1000 pairs, worst rel err " + fmt(worst) + ", " + std::to_string(ms) + " ms";
  return worst <= 1e-12 && ms < 1000;
}

// --- 3: temperature round trip -------------------------------------------

bool check_temperature_round_trip(std::string& detail) {
  PairSchedule pairs(20260301);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto [bid, ask] = pairs.next();
    const auto eq = ordergas::equilibrium_point(bid, ask);
    const double pc = pairs.uniform(10.0, 500.0);
    const ordergas::MarketObservables obs(pc, pc + eq.price_offset,
                                          pc + bid.chemical_potential,
                                          pc - ask.chemical_potential, eq.volume);
    const auto temps = ordergas::temperatures_from_observables(obs);
    worst = std::max(worst, rel_err(temps.bid, bid.temperature));
    worst = std::max(worst, rel_err(temps.ask, ask.temperature));
    if (ordergas::temperature_difference(obs) != temps.ask - temps.bid) {
      detail = "difference identity broken at pair " + std::to_string(i);
      return false;
    }
  }
  detail = "1000 pairs, worst rel err " + fmt(worst) + ", difference identity exact";
  return worst <= 1e-9;
}

// --- 4: rolling accumulation ---------------------------------------------

std::vector<ordergas::DailyBar> walk_bars(std::uint64_t seed, int count, double grid,
                                          long long max_volume) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(-8, 8);
  std::uniform_int_distribution<long long> volume(1, max_volume);
  std::vector<ordergas::DailyBar> bars;
  std::chrono::sys_days day{std::chrono::year(2015) / 3 / 2};
  double prev = 100.0;
  for (int i = 0; i < count; ++i) {
    const double close = prev + step(rng) * grid;
    const double low = std::min(close, prev) - 2 * grid;
    const double high = std::max(close, prev) + 2 * grid;
    bars.push_back({std::chrono::year_month_day(day), close, high, low, close, volume(rng)});
    prev = close;
    day += std::chrono::days(1);
  }
  return bars;
}

bool check_rolling_accumulation(std::string& detail) {
  ordergas::PipelineConfig cfg;
  cfg.vao_window = 7;

  // Quarter-grid prices with bounded volumes keep every product and sum
  // exact, so the telescoping identity must hold bitwise.
  const auto exact_bars = walk_bars(17, 60, 0.25, 1000000);
  const auto exact = ordergas::vao_series(ordergas::thermo_series(exact_bars, cfg), cfg);
  for (std::size_t t = 1; t < exact.size(); ++t) {
    if (!exact[t].vao || !exact[t - 1].vao) continue;
    const double lhs = *exact[t].vao - *exact[t - 1].vao;
    const double rhs = *exact[t].delta_t_lin - *exact[t - cfg.vao_window].delta_t_lin;
    if (lhs != rhs) {
      detail = "telescoping broken at record " + std::to_string(t);
      return false;
    }
  }

  // Penny-grid prices are not exactly representable; compare against a
  // window sum taken in the opposite order.
  const auto penny_bars = walk_bars(18, 80, 0.01, 50);
  const auto penny = ordergas::vao_series(ordergas::thermo_series(penny_bars, cfg), cfg);
  double worst = 0.0;
  int checked = 0;
  for (std::size_t t = 0; t < penny.size(); ++t) {
    if (!penny[t].vao) continue;
    double sum = 0.0;
    for (int k = 0; k < cfg.vao_window; ++k)
      sum += *penny[t - static_cast<std::size_t>(k)].delta_t_lin;
    worst = std::max(worst, std::abs(sum - *penny[t].vao));
    ++checked;
  }
  detail = "telescoping exact on " + std::to_string(exact.size()) + " records, " +
           std::to_string(checked) + " window sums within " + fmt(worst);
  return checked > 0 && worst <= 1e-12;
}

// --- 5: calibration round trip -------------------------------------------

bool check_calibration(std::string& detail) {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> temp(0.1, 100.0);
  std::uniform_real_distribution<double> mu(-50.0, -0.1);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto side = i % 2 == 0 ? ordergas::Side::bid : ordergas::Side::ask;
    const ordergas::GasParams truth(temp(rng), mu(rng), side);
    std::vector<ordergas::DepthPoint> depth;
    for (int k = 1; k <= 5; ++k) {
      const double eps = side == ordergas::Side::bid
                             ? truth.chemical_potential + truth.temperature * k
                             : -truth.chemical_potential - truth.temperature * k;
      depth.push_back({eps, ordergas::mean_occupancy(eps, truth)});
    }
    const auto fit = ordergas::fit_gas(depth, side);
    if (fit.status != ordergas::FitStatus::ok || !fit.params || fit.r_squared != 1.0) {
      detail = "draw " + std::to_string(i) + " status " + ordergas::to_string(fit.status) +
               ", r_squared " + fmt(fit.r_squared);
      return false;
    }
    worst = std::max(worst, rel_err(fit.params->temperature, truth.temperature));
    worst = std::max(worst, rel_err(fit.params->chemical_potential, truth.chemical_potential));
  }
  detail = "100 draws recovered, worst rel err " + fmt(worst) + ", r_squared exactly 1";
  return worst <= 1e-9;
}

// --- 6: sampled books match the law --------------------------------------

bool check_sampling_statistics(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const ordergas::GasParams bid(1.0, -2.5, ordergas::Side::bid);
  const ordergas::GasParams ask(1.3, -2.5, ordergas::Side::ask);
  const double prev_close = 100.0;
  const double tick = 0.125;
  const int draws = 100000;

  std::vector<double> bid_sum, ask_sum, prices;
  for (int d = 0; d < draws; ++d) {
    const auto book = ordergas::sample_synthetic_book(bid, ask, prev_close, tick,
                                                      500000 + static_cast<unsigned>(d));
    if (prices.empty()) {
      for (const auto& level : book.levels()) prices.push_back(level.price);
      bid_sum.assign(prices.size(), 0.0);
      ask_sum.assign(prices.size(), 0.0);
    }
    const auto levels = book.levels();
    for (std::size_t i = 0; i < levels.size(); ++i) {
      bid_sum[i] += levels[i].bid_qty;
      ask_sum[i] += levels[i].ask_qty;
    }
  }

  int cells = 0, within = 0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const double eps = prices[i] - prev_close;
    for (int side = 0; side < 2; ++side) {
      const auto& g = side == 0 ? bid : ask;
      const double mean = ordergas::mean_occupancy(eps, g);
      const double q = std::exp(-ordergas::detail::reduced_exponent(eps, g));
      const double se = std::sqrt(q / ((1.0 - q) * (1.0 - q)) / draws);
      const double got = (side == 0 ? bid_sum[i] : ask_sum[i]) / draws;
      ++cells;
      if (std::abs(got - mean) <= 3.0 * se) ++within;
    }
  }
  const auto sec = std::chrono::duration_cast<std::chrono::duration<double>>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  const double frac = static_cast<double>(within) / cells;
  detail = std::to_string(within) + "/" + std::to_string(cells) +
           " level sides within 3 standard errors, " + fmt(sec) + " s";
  return frac >= 0.95 && sec < 30.0;
}

// --- 7: linearization error bracket --------------------------------------

bool check_linearization_bracket(std::string& detail) {
  const double frozen[3] = {0.0049669146831917152, 0.00049966691646683319,
                            4.9996666916646668e-5};
  const double volumes[3] = {100.0, 1000.0, 10000.0};
  for (int i = 0; i < 3; ++i) {
    const double n = volumes[i];
    const ordergas::MarketObservables obs(100.0, 100.0, 99.0, 102.0, n);
    const auto exact = ordergas::temperatures_from_observables(obs);
    const auto lin = ordergas::linearized_temperatures(obs);
    const double diff_exact = ordergas::temperature_difference(obs);
    const double rels[3] = {rel_err(lin.bid, exact.bid), rel_err(lin.ask, exact.ask),
                            rel_err(lin.difference, diff_exact)};
    for (double r : rels) {
      if (r > 1.0 / n || r < 1.0 / (4.0 * n)) {
        detail = "volume " + fmt(n) + ": rel err " + fmt(r) + " outside bracket";
        return false;
      }
      if (rel_err(r, frozen[i]) > 1e-11) {
        detail = "volume " + fmt(n) + ": rel err " + fmt(r) + " != " + fmt(frozen[i]);
        return false;
      }
    }
  }
  detail = "error within [1/(4n), 1/n] at n = 100, 1000, 10000";
  return true;
}

// --- 8: occupancy distribution -------------------------------------------

bool check_occupancy_distribution(std::string& detail) {
  double worst_norm = 0.0, worst_mean = 0.0;
  for (double t : {0.5, 1.0, 5.0}) {
    for (double gap : {0.1, 1.0, 3.0}) {
      const ordergas::GasParams g(t, -1.0, ordergas::Side::bid);
      const double eps = g.chemical_potential + gap;
      const double q = std::exp(-gap / t);
      double norm = 0.0, mean = 0.0, qn = 1.0;
      for (long long n = 0; qn >= 1e-15; ++n, qn *= q) {
        const double w = ordergas::level_occupation_probability(n, eps, g);
        norm += w;
        mean += static_cast<double>(n) * w;
      }
      worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
      worst_mean = std::max(worst_mean, rel_err(mean, ordergas::mean_occupancy(eps, g)));
    }
  }
  detail = "9 parameter points, normalization off by " + fmt(worst_norm) +
           ", mean rel err " + fmt(worst_mean);
  return worst_norm <= 1e-12 && worst_mean <= 1e-9;
}

// --- 9: golden regression ------------------------------------------------

bool check_golden_regression(std::string& detail) {
  const std::string cmd = kCli + " thermo --input " +
                          testutil::quoted(kData + "/synthetic_ohlcv_250.csv") + " --output -";
  const auto first = testutil::run_command(cmd);
  const auto second = testutil::run_command(cmd);
  if (first.exit_code != 0 || second.exit_code != 0) {
    detail = "exit codes " + std::to_string(first.exit_code) + ", " +
             std::to_string(second.exit_code);
    return false;
  }
  if (first.output != second.output) {
    detail = "two runs differ";
    return false;
  }
  const std::string golden = read_file(kData + "/thermo_golden.csv");
  if (golden.empty() || first.output != golden) {
    detail = "output differs from bundled golden file (" +
             std::to_string(first.output.size()) + " vs " + std::to_string(golden.size()) +
             " bytes)";
    return false;
  }
  detail = std::to_string(golden.size()) + " bytes, byte-identical across runs";
  return true;
}

}  // namespace

int main() {
  const std::pair<std::string, std::function<bool(std::string&)>> checks[] = {
      {"worked clearing example", check_clearing},
      {"equilibrium fixed point", check_equilibrium},
      {"temperature round trip", check_temperature_round_trip},
      {"rolling accumulation identity", check_rolling_accumulation},
      {"calibration round trip", check_calibration},
      {"sampled books match the law", check_sampling_statistics},
      {"linearization error bracket", check_linearization_bracket},
      {"occupancy distribution", check_occupancy_distribution},
      {"golden regression", check_golden_regression},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : checks) {
    ++index;
    std::string note;
    bool ok = false;
    try {
      ok = fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                note.c_str());
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
