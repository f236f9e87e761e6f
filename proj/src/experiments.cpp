#include "freefib/experiments.hpp"

#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "freefib/core.hpp"
#include "freefib/error.hpp"
#include "freefib/fibmod.hpp"

namespace freefib::experiments {

namespace {

// SplitMix64 finalizer (Steele, Lea, Flood). Trial seeds are derived as
// splitmix64(master + GOLDEN * (trial + 1)), making every trial's stream a
// pure function of (master_seed, trial index).
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return splitmix64(master + kGolden * (static_cast<std::uint64_t>(trial) + 1));
}

// Rejection-sampled uniform in [lo, hi]; std::uniform_int_distribution is
// implementation-defined, this is reproducible across standard libraries.
std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo,
                        std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

void check_config(const ExperimentConfig& config) {
  if (config.n < 2)
    raise(ErrorKind::WrongDomain, "modulus must be at least 2");
  if (config.trials < 1)
    raise(ErrorKind::WrongDomain, "need at least one trial");
  if (config.length < config.tail_skip + 10)
    raise(ErrorKind::WrongDomain,
          "length must be at least tail_skip + 10");
  if (config.init_low < 1 || config.init_high < config.init_low)
    raise(ErrorKind::WrongDomain, "need 1 <= init_low <= init_high");
}

unsigned worker_count(const ExperimentConfig& config) {
  unsigned threads = config.threads;
  if (threads == 0) {
    threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
  }
  return static_cast<unsigned>(
      std::min<std::size_t>(threads, config.trials));
}

// Simulate one trial, adding a_k into sums[k-1] for k = 1..length.
void run_trial(const ExperimentConfig& config, std::size_t trial, Term* sums) {
  std::mt19937_64 rng(trial_seed(config.master_seed, trial));
  Term a = uniform_in(rng, config.init_low, config.init_high);
  Term b = uniform_in(rng, config.init_low, config.init_high);
  sums[0] += a;
  sums[1] += b;
  core::TermPair pair{std::move(a), std::move(b)};
  for (std::size_t k = 2; k < config.length; ++k) {
    pair = core::next_state(pair, config.n).first;
    sums[k] += pair.second;
  }
}

// Exact per-index term sums over all trials. Workers accumulate disjoint
// trial subsets; integer addition commutes, so any schedule produces the
// identical totals.
std::vector<Term> term_sums(const ExperimentConfig& config) {
  const unsigned workers = worker_count(config);
  if (workers <= 1) {
    std::vector<Term> sums(config.length, Term(0));
    for (std::size_t t = 0; t < config.trials; ++t)
      run_trial(config, t, sums.data());
    return sums;
  }
  std::vector<std::vector<Term>> partials(
      workers, std::vector<Term>(config.length, Term(0)));
  std::vector<std::future<void>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t t = w; t < config.trials; t += workers)
        run_trial(config, t, partials[w].data());
    }));
  }
  for (auto& future : futures) future.get();
  std::vector<Term> sums = std::move(partials[0]);
  for (unsigned w = 1; w < workers; ++w)
    for (std::size_t k = 0; k < config.length; ++k) sums[k] += partials[w][k];
  return sums;
}

}  // namespace

ExperimentConfig desk_scale(std::int64_t n, std::uint64_t seed) {
  ExperimentConfig config;
  config.n = n;
  config.trials = 1000;
  config.length = 300;
  config.master_seed = seed;
  return config;
}

ExperimentConfig paper_scale(std::int64_t n, std::uint64_t seed) {
  ExperimentConfig config;
  config.n = n;
  config.master_seed = seed;
  return config;
}

GrowthFit mc_growth(const ExperimentConfig& config) {
  check_config(config);
  const std::vector<Term> sums = term_sums(config);

  // Average each term over the trials, then fit the averaged curve as an
  // exponential: least squares of log(mean term) against the index over
  // positions past tail_skip.
  const double log_trials = std::log(static_cast<double>(config.trials));
  std::vector<double> log_mean(config.length);
  for (std::size_t k = 0; k < config.length; ++k)
    log_mean[k] = log_term(sums[k]) - log_trials;

  const std::size_t first = config.tail_skip;  // 0-based; position tail_skip+1
  const std::size_t count = config.length - first;
  double x_bar = 0.0, y_bar = 0.0;
  for (std::size_t i = first; i < config.length; ++i) {
    x_bar += static_cast<double>(i + 1);
    y_bar += log_mean[i];
  }
  x_bar /= static_cast<double>(count);
  y_bar /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = first; i < config.length; ++i) {
    const double dx = static_cast<double>(i + 1) - x_bar;
    sxx += dx * dx;
    sxy += dx * (log_mean[i] - y_bar);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = first; i < config.length; ++i) {
    const double fitted = y_bar + slope * (static_cast<double>(i + 1) - x_bar);
    const double r = log_mean[i] - fitted;
    rss += r * r;
  }
  const double slope_se =
      count > 2 ? std::sqrt(rss / static_cast<double>(count - 2) / sxx) : 0.0;

  GrowthFit fit;
  fit.n = config.n;
  fit.g = std::exp(slope);
  fit.std_error = fit.g * slope_se;  // delta method through exp
  fit.trials_used = config.trials;
  fit.seed = config.master_seed;
  return fit;
}

double division_free_tail_fraction(const ExperimentConfig& config,
                                   std::size_t window) {
  check_config(config);
  if (window + 2 > config.length)
    raise(ErrorKind::WrongDomain, "window longer than the run");
  std::size_t clean = 0;
  for (std::size_t t = 0; t < config.trials; ++t) {
    std::mt19937_64 rng(trial_seed(config.master_seed, t));
    Term a = uniform_in(rng, config.init_low, config.init_high);
    Term b = uniform_in(rng, config.init_low, config.init_high);
    core::TermPair pair{std::move(a), std::move(b)};
    std::size_t last_division = 0;  // position of the latest dividing step
    for (std::size_t k = 2; k < config.length; ++k) {
      auto [next, record] = core::next_state(pair, config.n);
      pair = std::move(next);
      if (record.power > 0) last_division = k + 1;
    }
    if (last_division + window <= config.length) ++clean;
  }
  return static_cast<double>(clean) / static_cast<double>(config.trials);
}

double avg_division_factor(std::int64_t n) {
  if (n < 2)
    raise(ErrorKind::WrongDomain, "division factor needs n >= 2");
  const double nd = static_cast<double>(n);
  return std::pow(nd, nd / (nd - 1.0));
}

double avg_division_per_step(std::int64_t n, const Rational& avg_steps) {
  if (n < 2 || avg_steps <= 0)
    raise(ErrorKind::WrongDomain, "need n >= 2 and positive average steps");
  const double nd = static_cast<double>(n);
  const double a = avg_steps.convert_to<double>();
  return std::pow(nd, nd / ((nd - 1.0) * a));
}

double recurrence_growth(double d) {
  if (!(d > 0.0))
    raise(ErrorKind::WrongDomain, "divisor must be positive");
  return (1.0 + std::sqrt(1.0 + 4.0 * d)) / (2.0 * d);
}

Model3Result model3_bound(std::uint64_t seed, std::size_t flip_pairs) {
  Model3Result result;
  result.case_growth = {2.0 / 5.0, 7.0 / 5.0, 3.0 / 5.0, 13.0 / 5.0};
  result.closed_form = std::pow(2.0 * 3.0 * 7.0 * 13.0, 0.25) / 5.0;
  // Geometric mean over uniformly drawn two-flip cases.
  std::mt19937_64 rng(splitmix64(seed));
  double log_sum = 0.0;
  for (std::size_t i = 0; i < flip_pairs; ++i) {
    const auto pick = static_cast<std::size_t>(uniform_in(rng, 0, 3));
    log_sum += std::log(result.case_growth[pick]);
  }
  result.simulated = std::exp(log_sum / static_cast<double>(flip_pairs));
  return result;
}

Model4Result model4_bound() {
  const double x = std::pow(4.0, 4.0 / 3.0);
  Model4Result result;
  // b > a regime: continuations of lengths 1, 3, 4 weighted equally.
  result.r_up = std::cbrt(1.0 * (((x + 2.0) + 2.0 / (x + 1.0)) / x) *
                          (((2.0 * x + 3.0) + 3.0 / (x + 1.0)) / x));
  // b <= a regime.
  const double denom = (1.0 + x) * x * x;
  result.r_down = std::cbrt(((2.0 + 2.0 * x + x * x) / denom) *
                            ((3.0 * x * x + 6.0 * x + 4.0) / denom) *
                            ((5.0 * x * x + 10.0 * x + 6.0) / denom));
  // The b <= a regime is at most half as likely, hence the squared factor;
  // growth per block is the cube root of this product.
  result.overall = result.r_up * result.r_up * result.r_down;
  return result;
}

std::vector<GrowthTableRow> growth_table(const std::vector<std::int64_t>& ns,
                                         const ExperimentConfig& base) {
  std::vector<GrowthTableRow> rows;
  rows.reserve(ns.size());
  for (const std::int64_t n : ns) {
    ExperimentConfig config = base;
    config.n = n;
    GrowthTableRow row;
    row.n = n;
    row.fit = mc_growth(config);
    row.z = fibmod::entry_point(n);
    if (fibmod::count_zero_pairs(n).zero_free == 0) {
      row.avg_steps = fibmod::avg_steps_between_divisions(n);
      row.division_per_step = avg_division_per_step(n, *row.avg_steps);
      row.recurrence = recurrence_growth(*row.division_per_step);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::int64_t>& deviated_exponent_ns() {
  static const std::vector<std::int64_t> ns{4, 6, 7, 9, 14, 23, 27, 43, 49};
  return ns;
}

}  // namespace freefib::experiments
