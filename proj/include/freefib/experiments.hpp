#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "freefib/term.hpp"

namespace freefib::experiments {

/// Monte-Carlo run parameters. Defaults are the full-scale experiment
/// (10000 trials of length 500, starts uniform in [1, 1000]); desk_scale()
/// gives the lighter settings used in CI.
struct ExperimentConfig {
  std::int64_t n = 0;
  std::size_t trials = 10000;
  std::size_t length = 500;
  std::int64_t init_low = 1;
  std::int64_t init_high = 1000;
  std::uint64_t master_seed = 0;
  std::size_t tail_skip = 50;
  unsigned threads = 0;  // 0 = hardware concurrency
};

ExperimentConfig desk_scale(std::int64_t n, std::uint64_t seed);
ExperimentConfig paper_scale(std::int64_t n, std::uint64_t seed);

/// Fitted per-step growth factor g with its least-squares standard error.
/// The terms at each index are averaged across trials and the averaged
/// curve is fitted as an exponential. Bit-identical for a given
/// (config, master_seed) regardless of thread count: trial seeds are a pure
/// function of (master_seed, trial index) and the per-index sums are exact
/// integers.
struct GrowthFit {
  std::int64_t n = 0;
  double g = 0.0;
  double std_error = 0.0;
  std::size_t trials_used = 0;
  std::uint64_t seed = 0;
};

GrowthFit mc_growth(const ExperimentConfig& config);

/// Fraction of trials whose final `window` steps contain no division.
double division_free_tail_fraction(const ExperimentConfig& config,
                                   std::size_t window);

/// Expected divisor per division under the geometric model: n^(n/(n-1)).
double avg_division_factor(std::int64_t n);

/// Per-step division estimate n^(n/((n-1)*a)) where a is the average number
/// of steps between divisions.
double avg_division_per_step(std::int64_t n, const Rational& avg_steps);

/// Dominant root of d*t^2 = t + 1, the growth of x_k = (x_{k-1}+x_{k-2})/d.
double recurrence_growth(double d);

/// Coin-flip model for the 3-free recurrence with divisor 5.
struct Model3Result {
  double closed_form = 0.0;               // (2*3*7*13)^(1/4) / 5
  double simulated = 0.0;                 // Monte-Carlo geometric mean
  std::array<double, 4> case_growth{};    // the four two-flip bounds
};

Model3Result model3_bound(std::uint64_t seed = 0x51D2B5u,
                          std::size_t flip_pairs = 1000000);

/// Growth-model constants for the 4-free recurrence with divisor x=4^(4/3).
struct Model4Result {
  double r_up = 0.0;     // expected 1.51023
  double r_down = 0.0;   // expected 0.453822
  double overall = 0.0;  // r_up^2 * r_down, expected 1.03507 (> 1 = growth)
};

Model4Result model4_bound();

/// One row of the growth summary: measured growth plus the analytic columns.
/// The division columns are absent for non-omni-factors, where divisions
/// eventually stop.
struct GrowthTableRow {
  std::int64_t n = 0;
  GrowthFit fit;
  std::int64_t z = 0;
  std::optional<Rational> avg_steps;
  std::optional<double> division_per_step;
  std::optional<double> recurrence;
};

std::vector<GrowthTableRow> growth_table(const std::vector<std::int64_t>& ns,
                                         const ExperimentConfig& base);

/// The n values of the deviated-exponent table.
const std::vector<std::int64_t>& deviated_exponent_ns();

}  // namespace freefib::experiments
