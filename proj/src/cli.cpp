#include "freefib/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "freefib/construct.hpp"
#include "freefib/core.hpp"
#include "freefib/error.hpp"
#include "freefib/experiments.hpp"
#include "freefib/fibmod.hpp"
#include "freefib/oeis.hpp"

namespace freefib::cli {

namespace {

std::string fmt_double(double value, int precision = 17) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
  return buffer;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (const char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

core::TermPair parse_pair(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 == text.size())
    throw CLI::ValidationError(
        flag, "expected two comma-separated integers, got '" + text + "'");
  try {
    return {Term(text.substr(0, comma)), Term(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "could not parse '" + text + "'");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text,
                                         const std::string& flag) {
  std::vector<std::int64_t> values;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    try {
      values.push_back(std::stoll(piece));
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "could not parse '" + piece + "'");
    }
  }
  if (values.empty())
    throw CLI::ValidationError(flag, "expected at least one value");
  return values;
}

std::string join_terms(const std::vector<Term>& terms, std::size_t digits,
                       char separator = ',') {
  std::string text;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) text += separator;
    text += format_term(terms[i], digits);
  }
  return text;
}

std::uint64_t fresh_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

struct CommonOpts {
  std::string format = "plain";
  std::size_t digits = 0;

  bool csv() const { return format == "csv"; }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_digits = true) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"plain", "csv"}))
      ->capture_default_str();
  if (with_digits)
    cmd->add_option("--digits", opts.digits,
                    "Truncate printed terms to this many leading digits");
}

void run_sequence_output(std::ostream& out, const core::SequenceRun& run,
                         const CommonOpts& opts) {
  if (opts.csv()) {
    csv_row(out, {"index", "term", "power", "residue"});
    for (std::size_t i = 0; i < run.size(); ++i) {
      const auto& step = run.steps[i];
      csv_row(out, {std::to_string(i + 1), format_term(step.term, opts.digits),
                    std::to_string(step.power), std::to_string(step.residue)});
    }
  } else {
    for (const auto& step : run.steps)
      out << format_term(step.term, opts.digits) << '\n';
  }
}

// ---- gen ----------------------------------------------------------------

struct GenOpts {
  std::int64_t n = 0;
  std::string start;
  std::size_t count = 0;
  CommonOpts common;
};

void register_gen(CLI::App& app, std::ostream& out) {
  auto opts = std::make_shared<GenOpts>();
  auto* cmd = app.add_subcommand("gen", "Generate an n-free Fibonacci sequence");
  cmd->add_option("--n", opts->n, "Modulus n >= 2")->required();
  cmd->add_option("--start", opts->start, "Starting pair a1,a2")->required();
  cmd->add_option("--count", opts->count, "Number of terms (including the start)")
      ->required();
  add_common(cmd, opts->common);
  cmd->callback([opts, &out] {
    const auto [a1, a2] = parse_pair(opts->start, "--start");
    run_sequence_output(out, core::generate(a1, a2, opts->n, opts->count),
                        opts->common);
  });
}

// ---- cycle --------------------------------------------------------------

struct CycleOpts {
  std::int64_t n = 0;
  std::string start;
  std::size_t budget = 1000000;
  CommonOpts common;
};

void register_cycle(CLI::App& app, std::ostream& out) {
  auto opts = std::make_shared<CycleOpts>();
  auto* cmd = app.add_subcommand(
      "cycle", "Detect an exact cycle of the consecutive-term pair");
  cmd->add_option("--n", opts->n, "Modulus n >= 2")->required();
  cmd->add_option("--start", opts->start, "Starting pair a1,a2")->required();
  cmd->add_option("--budget", opts->budget, "Maximum number of steps")
      ->capture_default_str();
  add_common(cmd, opts->common);
  cmd->callback([opts, &out] {
    const auto [a1, a2] = parse_pair(opts->start, "--start");
    const auto outcome = core::detect_cycle(a1, a2, opts->n, opts->budget);
    const std::size_t digits = opts->common.digits;
    if (const auto* report = std::get_if<core::CycleReport>(&outcome)) {
      const auto primitive = core::primitive_cycle(report->cycle_terms);
      if (opts->common.csv()) {
        csv_row(out, {"status", "preperiod", "period", "content_gcd", "cycle",
                      "primitive"});
        csv_row(out, {"cycle", std::to_string(report->preperiod),
                      std::to_string(report->period),
                      format_term(report->content_gcd, digits),
                      join_terms(report->cycle_terms, digits),
                      join_terms(primitive.primitive, digits)});
      } else {
        out << "preperiod: " << report->preperiod << '\n';
        out << "period: " << report->period << '\n';
        out << "content_gcd: " << format_term(report->content_gcd, digits)
            << '\n';
        out << "cycle: " << join_terms(report->cycle_terms, digits) << '\n';
        out << "primitive: " << join_terms(primitive.primitive, digits) << '\n';
      }
    } else {
      const auto& exhausted = std::get<core::Exhausted>(outcome);
      const std::string pair =
          format_term(exhausted.last_pair.first, digits) + "," +
          format_term(exhausted.last_pair.second, digits);
      if (opts->common.csv()) {
        csv_row(out, {"status", "budget", "last_pair"});
        csv_row(out, {"exhausted", std::to_string(exhausted.budget), pair});
      } else {
        out << "exhausted: budget=" << exhausted.budget << '\n';
        out << "last_pair: " << pair << '\n';
      }
    }
  });
}

// ---- construct ----------------------------------------------------------

struct RichOpts {
  std::int64_t n = 0;
  std::size_t length = 0;
  std::string terminal;
  CommonOpts common;
};

struct PredecessorOpts {
  std::string start;
  std::size_t count = 0;
  CommonOpts common;
};

struct PrescribeOpts {
  std::int64_t n = 0;
  std::string remainders;
  std::string powers;
  std::string terminal;
  std::optional<unsigned> adjust;
  CommonOpts common;
};

void register_construct(CLI::App& app, std::ostream& out) {
  auto* cmd = app.add_subcommand(
      "construct", "Build sequences backward with prescribed division behavior");
  cmd->require_subcommand(1);

  auto rich = std::make_shared<RichOpts>();
  auto* rich_cmd = cmd->add_subcommand(
      "rich", "Division at every step, built backward from a terminal pair");
  rich_cmd->add_option("--n", rich->n, "Modulus n >= 2")->required();
  rich_cmd->add_option("--length", rich->length, "Run length")->required();
  rich_cmd->add_option("--terminal", rich->terminal, "Terminal pair a,b")
      ->required();
  add_common(rich_cmd, rich->common);
  rich_cmd->callback([rich, &out] {
    const auto terminal = parse_pair(rich->terminal, "--terminal");
    const auto run = construct::build_division_rich(rich->n, rich->length, terminal);
    if (!rich->common.csv()) {
      out << "direction: forward\n";
      out << "signature: " << construct::signature_of(run).to_string() << '\n';
    }
    run_sequence_output(out, run, rich->common);
  });

  auto pred = std::make_shared<PredecessorOpts>();
  auto* pred_cmd = cmd->add_subcommand(
      "predecessor", "Extend a 2-free sequence backward from an odd pair");
  pred_cmd->add_option("--start", pred->start, "Odd pair a1,a2")->required();
  pred_cmd->add_option("--count", pred->count, "Number of terms to emit")
      ->required();
  add_common(pred_cmd, pred->common);
  pred_cmd->callback([pred, &out] {
    auto [first, second] = parse_pair(pred->start, "--start");
    // Emitted in reverse-index order: a2, a1, then predecessors.
    std::vector<Term> chain;
    if (pred->count >= 1) chain.push_back(second);
    if (pred->count >= 2) chain.push_back(first);
    while (chain.size() < pred->count) {
      Term previous = construct::build_2free_predecessor(first, second);
      chain.push_back(previous);
      second = std::move(first);
      first = std::move(previous);
    }
    if (pred->common.csv()) {
      csv_row(out, {"index", "term"});
      for (std::size_t i = 0; i < chain.size(); ++i)
        csv_row(out, {std::to_string(i + 1),
                      format_term(chain[i], pred->common.digits)});
    } else {
      out << "direction: reverse-index (latest term first)\n";
      for (const auto& term : chain)
        out << format_term(term, pred->common.digits) << '\n';
    }
  });

  auto pre = std::make_shared<PrescribeOpts>();
  auto* pre_cmd = cmd->add_subcommand(
      "prescribe", "Realize a legal remainder/signature prescription");
  pre_cmd->add_option("--n", pre->n, "Modulus n >= 2")->required();
  pre_cmd->add_option("--remainders", pre->remainders,
                      "Remainders r1,...,rL (mod n)")
      ->required();
  pre_cmd
      ->add_option("--powers", pre->powers,
                   "Powers of n divided out at positions 3..L, comma-separated")
      ->required();
  pre_cmd->add_option("--terminal", pre->terminal,
                      "Terminal pair congruent to rL-1,rL")
      ->required();
  pre_cmd->add_option("--adjust", pre->adjust,
                      "Also print the positive run shifted by multiples of n^M");
  add_common(pre_cmd, pre->common);
  pre_cmd->callback([pre, &out] {
    construct::RemainderPrescription prescription;
    prescription.modulus = pre->n;
    prescription.remainders = parse_int_list(pre->remainders, "--remainders");
    prescription.powers.assign(2, std::nullopt);
    for (const std::int64_t p : parse_int_list(pre->powers, "--powers")) {
      if (p < 0)
        throw CLI::ValidationError("--powers", "powers must be non-negative");
      prescription.powers.push_back(static_cast<unsigned>(p));
    }
    const auto terminal = parse_pair(pre->terminal, "--terminal");
    const auto raw = construct::build_from_prescription(prescription, terminal);

    std::optional<core::SequenceRun> adjusted;
    if (pre->adjust)
      adjusted = construct::adjust_positive(raw, pre->n, *pre->adjust);

    const std::size_t digits = pre->common.digits;
    if (pre->common.csv()) {
      csv_row(out, adjusted
                       ? std::vector<std::string>{"index", "raw", "adjusted"}
                       : std::vector<std::string>{"index", "raw"});
      for (std::size_t i = 0; i < raw.size(); ++i) {
        std::vector<std::string> row{std::to_string(i + 1),
                                     format_term(raw[i], digits)};
        if (adjusted)
          row.push_back(format_term(adjusted->steps[i].term, digits));
        csv_row(out, row);
      }
    } else {
      out << "direction: forward\n";
      out << "raw: " << join_terms(raw, digits) << '\n';
      if (adjusted) {
        out << "adjusted: " << join_terms(adjusted->terms(), digits) << '\n';
        out << "signature: " << construct::signature_of(*adjusted).to_string()
            << '\n';
      }
    }
  });
}

// ---- classify -----------------------------------------------------------

struct ClassifyOpts {
  std::int64_t min = 2;
  std::int64_t max = 0;
  std::int64_t cap = fibmod::kDefaultOrbitCap;
  CommonOpts common;
};

void register_classify(CLI::App& app, std::ostream& out) {
  auto opts = std::make_shared<ClassifyOpts>();
  auto* cmd = app.add_subcommand(
      "classify", "Omni-factor classification over a range of moduli");
  cmd->add_option("--min", opts->min, "Smallest n")->capture_default_str();
  cmd->add_option("--max", opts->max, "Largest n")->required();
  cmd->add_option("--cap", opts->cap, "Orbit size cap")->capture_default_str();
  add_common(cmd, opts->common, false);
  cmd->callback([opts, &out] {
    if (opts->common.csv())
      csv_row(out, {"n", "omni_factor", "zero_free", "lucas_witness",
                    "witness_a", "witness_b"});
    for (std::int64_t n = opts->min; n <= opts->max; ++n) {
      const auto record = fibmod::is_omni_factor(n, opts->cap);
      const auto census = fibmod::count_zero_pairs(n, opts->cap);
      if (opts->common.csv()) {
        std::vector<std::string> row{
            std::to_string(n), record.omni_factor ? "true" : "false",
            std::to_string(census.zero_free),
            record.lucas_witness ? "true" : "false"};
        if (record.witness_start) {
          row.push_back(std::to_string(record.witness_start->first));
          row.push_back(std::to_string(record.witness_start->second));
        } else {
          row.push_back("");
          row.push_back("");
        }
        csv_row(out, row);
      } else {
        out << "n=" << n
            << " omni=" << (record.omni_factor ? "true" : "false")
            << " zero_free=" << census.zero_free
            << " lucas_witness=" << (record.lucas_witness ? "true" : "false");
        if (record.witness_start)
          out << " witness=" << record.witness_start->first << ','
              << record.witness_start->second;
        out << '\n';
      }
    }
  });
}

// ---- orbits -------------------------------------------------------------

struct OrbitOpts {
  std::int64_t n = 0;
  std::int64_t cap = fibmod::kDefaultOrbitCap;
  bool pairs = false;
  bool successors = false;
  CommonOpts common;
};

void register_orbits(CLI::App& app, std::ostream& out) {
  auto opts = std::make_shared<OrbitOpts>();
  auto* cmd = app.add_subcommand(
      "orbits", "Decompose all residue pairs mod n into cycles");
  cmd->add_option("--n", opts->n, "Modulus n >= 2")->required();
  cmd->add_option("--cap", opts->cap, "Orbit size cap")->capture_default_str();
  cmd->add_flag("--pairs", opts->pairs, "Print every pair of every cycle");
  cmd->add_flag("--successors", opts->successors,
                "Print the division-free successor map instead");
  add_common(cmd, opts->common, false);
  cmd->callback([opts, &out] {
    if (opts->successors) {
      const auto successors = fibmod::division_free_successors(opts->n, opts->cap);
      if (opts->common.csv()) {
        csv_row(out, {"residue", "successors"});
        for (const auto& [r, next] : successors) {
          std::string list;
          for (const auto s : next) {
            if (!list.empty()) list += ';';
            list += std::to_string(s);
          }
          csv_row(out, {std::to_string(r), list});
        }
      } else {
        if (successors.empty())
          out << "omni-factor: no division-free pairs\n";
        for (const auto& [r, next] : successors) {
          out << r << ":";
          for (const auto s : next) out << ' ' << s;
          out << '\n';
        }
      }
      return;
    }

    const auto orbits = fibmod::orbit_decomposition(opts->n, opts->cap);
    const auto census = fibmod::count_zero_pairs(opts->n, opts->cap);
    const auto moments = fibmod::cycle_length_moments(opts->n, opts->cap);
    if (opts->common.csv()) {
      csv_row(out, {"cycle", "length", "contains_zero", "pairs"});
      for (std::size_t i = 0; i < orbits.cycles.size(); ++i) {
        const auto& cycle = orbits.cycles[i];
        std::string pair_list;
        const std::size_t limit = opts->pairs ? cycle.pairs.size() : 1;
        for (std::size_t j = 0; j < limit; ++j) {
          if (j) pair_list += ' ';
          pair_list += std::to_string(cycle.pairs[j].first) + ";" +
                       std::to_string(cycle.pairs[j].second);
        }
        csv_row(out, {std::to_string(i + 1), std::to_string(cycle.length()),
                      cycle.contains_zero ? "true" : "false", pair_list});
      }
      return;
    }
    out << "modulus: " << opts->n << '\n';
    out << "cycles: " << orbits.cycle_count() << '\n';
    out << "distinct_lengths: " << orbits.distinct_length_count() << '\n';
    out << "lengths:";
    for (const auto length : orbits.length_multiset()) out << ' ' << length;
    out << '\n';
    out << "with_zero: " << census.with_zero << '\n';
    out << "zero_free: " << census.zero_free << '\n';
    out << "sum_squares: " << moments.sum_squares << '\n';
    out << "rounded_half_mean: " << moments.rounded_half_mean << '\n';
    for (std::size_t i = 0; i < orbits.cycles.size(); ++i) {
      const auto& cycle = orbits.cycles[i];
      out << "cycle " << i + 1 << ": length=" << cycle.length()
          << " zero=" << (cycle.contains_zero ? "true" : "false")
          << " start=" << cycle.pairs.front().first << ','
          << cycle.pairs.front().second;
      if (opts->pairs) {
        out << " pairs=";
        for (std::size_t j = 0; j < cycle.pairs.size(); ++j) {
          if (j) out << ' ';
          out << cycle.pairs[j].first << ',' << cycle.pairs[j].second;
        }
      }
      out << '\n';
    }
  });
}

// ---- oeis ---------------------------------------------------------------

struct OeisOpts {
  std::string id;
  std::size_t count = 0;
  std::string bfile;
  bool list = false;
  CommonOpts common;
};

void register_oeis(CLI::App& app, std::ostream& out) {
  auto opts = std::make_shared<OeisOpts>();
  auto* cmd = app.add_subcommand("oeis", "Emit a supported integer sequence");
  cmd->add_option("--id", opts->id, "Sequence id, e.g. A224382");
  cmd->add_option("--count", opts->count, "Number of terms");
  cmd->add_option("--bfile", opts->bfile, "Write a b-file to this path");
  cmd->add_flag("--list", opts->list, "List supported sequence ids");
  add_common(cmd, opts->common);
  cmd->callback([opts, &out] {
    if (opts->list) {
      for (const auto& meta : oeis::supported())
        out << meta.id << " offset=" << meta.offset << " " << meta.description
            << '\n';
      return;
    }
    if (opts->id.empty())
      throw CLI::RequiredError("--id (or --list)");
    if (!opts->bfile.empty()) {
      oeis::export_bfile(opts->id, opts->count, opts->bfile);
      return;
    }
    const auto terms = oeis::emit(opts->id, opts->count);
    const std::int64_t offset = oeis::descriptor(opts->id).offset;
    if (opts->common.csv()) {
      csv_row(out, {"index", "value"});
      for (std::size_t i = 0; i < terms.size(); ++i)
        csv_row(out, {std::to_string(offset + static_cast<std::int64_t>(i)),
                      format_term(terms[i], opts->common.digits)});
    } else {
      for (const auto& term : terms)
        out << format_term(term, opts->common.digits) << '\n';
    }
  });
}

// ---- experiment ---------------------------------------------------------

struct ExperimentOpts {
  std::vector<std::int64_t> ns;
  std::size_t trials = 1000;
  std::size_t length = 300;
  std::size_t tail_skip = 50;
  std::int64_t init_low = 1;
  std::int64_t init_high = 1000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  bool paper_scale = false;
  CommonOpts common;

  experiments::ExperimentConfig config(std::int64_t n,
                                       std::uint64_t chosen_seed) const {
    experiments::ExperimentConfig config;
    config.n = n;
    config.trials = paper_scale ? 10000 : trials;
    config.length = paper_scale ? 500 : length;
    config.tail_skip = tail_skip;
    config.init_low = init_low;
    config.init_high = init_high;
    config.master_seed = chosen_seed;
    config.threads = threads;
    return config;
  }
};

void add_experiment_options(CLI::App* cmd, ExperimentOpts& opts) {
  cmd->add_option("--trials", opts.trials, "Trials per modulus")
      ->capture_default_str();
  cmd->add_option("--length", opts.length, "Terms per trial")
      ->capture_default_str();
  cmd->add_option("--tail-skip", opts.tail_skip,
                  "Indices skipped before fitting")
      ->capture_default_str();
  cmd->add_option("--init-low", opts.init_low, "Smallest starting value")
      ->capture_default_str();
  cmd->add_option("--init-high", opts.init_high, "Largest starting value")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed,
                  "Master seed (auto-chosen and echoed when omitted)");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)")
      ->capture_default_str();
  cmd->add_flag("--paper-scale", opts.paper_scale,
                "Use the full 10000-trial, length-500 setup");
}

std::uint64_t resolve_seed(const ExperimentOpts& opts, std::ostream& out) {
  if (opts.seed) return *opts.seed;
  const std::uint64_t seed = fresh_seed();
  // Echo auto-chosen seeds so every printed number stays reproducible.
  if (!opts.common.csv()) out << "seed: " << seed << '\n';
  return seed;
}

void register_experiment(CLI::App& app, std::ostream& out) {
  auto* cmd = app.add_subcommand(
      "experiment", "Monte-Carlo growth measurements and model constants");
  cmd->require_subcommand(1);

  auto growth = std::make_shared<ExperimentOpts>();
  auto* growth_cmd =
      cmd->add_subcommand("growth", "Fit per-step growth for a list of moduli");
  growth_cmd
      ->add_option("--n", growth->ns, "Moduli, comma-separated")
      ->required()
      ->delimiter(',');
  add_experiment_options(growth_cmd, *growth);
  add_common(growth_cmd, growth->common, false);
  growth_cmd->callback([growth, &out] {
    const std::uint64_t seed = resolve_seed(*growth, out);
    if (growth->common.csv())
      csv_row(out, {"n", "g", "std_error", "trials", "length", "tail_skip",
                    "seed"});
    for (const std::int64_t n : growth->ns) {
      const auto config = growth->config(n, seed);
      const auto fit = experiments::mc_growth(config);
      if (growth->common.csv()) {
        csv_row(out, {std::to_string(n), fmt_double(fit.g),
                      fmt_double(fit.std_error), std::to_string(config.trials),
                      std::to_string(config.length),
                      std::to_string(config.tail_skip), std::to_string(seed)});
      } else {
        out << "n=" << n << " g=" << fmt_double(fit.g, 6)
            << " std_error=" << fmt_double(fit.std_error, 3)
            << " trials=" << config.trials << " length=" << config.length
            << " seed=" << seed << '\n';
      }
    }
  });

  auto table = std::make_shared<ExperimentOpts>();
  auto* table_cmd = cmd->add_subcommand(
      "table3", "Growth summary with entry points and division estimates");
  table_cmd->add_option("--n", table->ns, "Moduli (defaults to the omni-factor set)")
      ->delimiter(',');
  add_experiment_options(table_cmd, *table);
  add_common(table_cmd, table->common, false);
  table_cmd->callback([table, &out] {
    const std::uint64_t seed = resolve_seed(*table, out);
    const auto& ns =
        table->ns.empty() ? experiments::deviated_exponent_ns() : table->ns;
    const auto rows = experiments::growth_table(ns, table->config(2, seed));
    if (table->common.csv())
      csv_row(out, {"n", "mc_growth", "std_error", "entry_point", "avg_steps",
                    "avg_division_per_step", "recurrence_growth", "seed"});
    for (const auto& row : rows) {
      const std::string steps =
          row.avg_steps ? numerator(*row.avg_steps).str() +
                              (denominator(*row.avg_steps) == 1
                                   ? ""
                                   : "/" + denominator(*row.avg_steps).str())
                        : "";
      if (table->common.csv()) {
        csv_row(out,
                {std::to_string(row.n), fmt_double(row.fit.g),
                 fmt_double(row.fit.std_error), std::to_string(row.z), steps,
                 row.division_per_step ? fmt_double(*row.division_per_step) : "",
                 row.recurrence ? fmt_double(*row.recurrence) : "",
                 std::to_string(seed)});
      } else {
        out << "n=" << row.n << " growth=" << fmt_double(row.fit.g, 6)
            << " Z=" << row.z << " a=" << (steps.empty() ? "n/a" : steps)
            << " division="
            << (row.division_per_step ? fmt_double(*row.division_per_step, 6)
                                      : "n/a")
            << " recurrence="
            << (row.recurrence ? fmt_double(*row.recurrence, 6) : "n/a")
            << '\n';
      }
    }
  });

  auto models = std::make_shared<ExperimentOpts>();
  auto flips = std::make_shared<std::size_t>(1000000);
  auto* models_cmd = cmd->add_subcommand(
      "models", "Closed-form probabilistic-model constants");
  models_cmd->add_option("--seed", models->seed,
                         "Seed for the coin-flip simulation");
  models_cmd->add_option("--flips", *flips, "Flip pairs for the simulation")
      ->capture_default_str();
  add_common(models_cmd, models->common, false);
  models_cmd->callback([models, flips, &out] {
    const std::uint64_t seed = resolve_seed(*models, out);
    const auto m3 = experiments::model3_bound(seed, *flips);
    const auto m4 = experiments::model4_bound();
    const std::vector<std::pair<std::string, double>> rows = {
        {"model3_closed", m3.closed_form},
        {"model3_simulated", m3.simulated},
        {"model3_case_hh", m3.case_growth[0]},
        {"model3_case_ht", m3.case_growth[1]},
        {"model3_case_th", m3.case_growth[2]},
        {"model3_case_tt", m3.case_growth[3]},
        {"model4_r_up", m4.r_up},
        {"model4_r_down", m4.r_down},
        {"model4_overall", m4.overall},
        {"division_factor_3", experiments::avg_division_factor(3)},
        {"division_factor_4", experiments::avg_division_factor(4)},
    };
    if (models->common.csv()) {
      csv_row(out, {"quantity", "value"});
      csv_row(out, {"seed", std::to_string(seed)});
      for (const auto& [name, value] : rows)
        csv_row(out, {name, fmt_double(value)});
    } else {
      for (const auto& [name, value] : rows)
        out << name << ": " << fmt_double(value, 8) << '\n';
    }
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"n-free Fibonacci sequences: generation, cycles, modular "
               "analytics, and growth experiments"};
  app.set_config("--manifest", "",
                 "Config file with key = flag-name lines; flags override");
  app.require_subcommand(1);

  register_gen(app, out);
  register_cycle(app, out);
  register_construct(app, out);
  register_classify(app, out);
  register_orbits(app, out);
  register_oeis(app, out);
  register_experiment(app, out);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("freefib");
  for (const auto& arg : args) argv_storage.push_back(arg);
  std::vector<char*> argv;
  argv.reserve(argv_storage.size());
  for (auto& arg : argv_storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << error_slug(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace freefib::cli
