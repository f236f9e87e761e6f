#include "freefib/oeis.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>

#include "freefib/construct.hpp"
#include "freefib/core.hpp"
#include "freefib/error.hpp"
#include "freefib/fibmod.hpp"

namespace freefib::oeis {

namespace {

using Generator = std::function<std::vector<Term>(std::size_t)>;

std::vector<Term> fibonacci_like(Term a, Term b, std::size_t count) {
  std::vector<Term> out;
  out.reserve(count);
  if (count >= 1) out.push_back(a);
  if (count >= 2) out.push_back(b);
  while (out.size() < count) {
    Term next = a + b;
    a = std::move(b);
    b = next;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<Term> n_free_numbers(std::int64_t n, std::size_t count) {
  auto terms = core::generate(0, 1, n, std::max<std::size_t>(count, 2)).terms();
  terms.resize(count);
  return terms;
}

// Values of f(n) for n = 1, 2, 3, ...
std::vector<Term> by_index(std::size_t count,
                           const std::function<Term(std::int64_t)>& f) {
  std::vector<Term> out;
  out.reserve(count);
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(count); ++n)
    out.push_back(f(n));
  return out;
}

// Members of a predicate over n = 1, 2, 3, ... in increasing order.
std::vector<Term> by_filter(std::size_t count,
                            const std::function<bool(std::int64_t)>& keep) {
  constexpr std::int64_t kScanLimit = 2000000;
  std::vector<Term> out;
  out.reserve(count);
  for (std::int64_t n = 1; out.size() < count; ++n) {
    if (n > kScanLimit)
      raise(ErrorKind::ResourceBound,
            "gave up scanning past " + std::to_string(kScanLimit));
    if (keep(n)) out.emplace_back(n);
  }
  return out;
}

std::vector<Term> over_primes(std::size_t count,
                              const std::function<Term(std::int64_t)>& f) {
  std::vector<Term> out;
  out.reserve(count);
  for (std::int64_t p = 2; out.size() < count; ++p)
    if (fibmod::is_prime(p)) out.push_back(f(p));
  return out;
}

std::int64_t pisano_or_one(std::int64_t n) {
  return n == 1 ? 1 : fibmod::pisano_period(n);
}

std::int64_t entry_or_one(std::int64_t n) {
  return n == 1 ? 1 : fibmod::entry_point(n);
}

bool omni_factor(std::int64_t n) {
  return fibmod::count_zero_pairs(n).zero_free == 0;
}

bool lucas_divides_or_one(std::int64_t n) {
  return n == 1 || fibmod::lucas_divides(n);
}

std::int64_t orbit_cycle_count(std::int64_t n) {
  if (n == 1) return 1;
  return static_cast<std::int64_t>(fibmod::orbit_decomposition(n).cycle_count());
}

std::int64_t orbit_distinct_lengths(std::int64_t n) {
  if (n == 1) return 1;
  return static_cast<std::int64_t>(
      fibmod::orbit_decomposition(n).distinct_length_count());
}

// Reverse-index 2-free extension from (3, 1): a2, a1, then predecessors.
std::vector<Term> two_free_chain(std::size_t count) {
  std::vector<Term> out;
  out.reserve(count);
  Term first = 3, second = 1;
  if (count >= 1) out.push_back(second);
  if (count >= 2) out.push_back(first);
  while (out.size() < count) {
    Term previous = construct::build_2free_predecessor(first, second);
    out.push_back(previous);
    second = std::move(first);
    first = std::move(previous);
  }
  return out;
}

std::vector<Term> division_rich_chain(std::size_t count) {
  auto terms =
      construct::build_division_rich(3, std::max<std::size_t>(count, 2), {1, 1})
          .terms();
  std::reverse(terms.begin(), terms.end());
  terms.resize(count);
  return terms;
}

struct Entry {
  SequenceDescriptor meta;
  Generator generate;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> list;
    auto add = [&list](std::string id, std::int64_t offset,
                       std::string description, Generator fn) {
      list.push_back(
          {{std::move(id), offset, std::move(description)}, std::move(fn)});
    };

    add("A000032", 0, "Lucas numbers",
        [](std::size_t c) { return fibonacci_like(2, 1, c); });
    add("A000045", 0, "Fibonacci numbers",
        [](std::size_t c) { return fibonacci_like(0, 1, c); });
    add("A000057", 1, "primes p such that every Fibonacci-like sequence has a multiple of p",
        [](std::size_t c) {
          return by_filter(c, [](std::int64_t n) {
            return fibmod::is_prime(n) && fibmod::prime_omni_test(n);
          });
        });
    add("A000285", 0, "Fibonacci-like sequence starting 1, 4",
        [](std::size_t c) { return fibonacci_like(1, 4, c); });
    add("A001175", 1, "Pisano periods",
        [](std::size_t c) { return by_index(c, pisano_or_one); });
    add("A001177", 1, "Fibonacci entry points",
        [](std::size_t c) { return by_index(c, entry_or_one); });
    add("A001602", 1, "Fibonacci entry points of primes",
        [](std::size_t c) { return over_primes(c, fibmod::entry_point); });
    add("A015134", 1, "number of Fibonacci-pair cycles mod n",
        [](std::size_t c) { return by_index(c, orbit_cycle_count); });
    add("A015135", 1, "number of distinct Fibonacci-pair cycle lengths mod n",
        [](std::size_t c) { return by_index(c, orbit_distinct_lengths); });
    add("A060305", 1, "Pisano periods of primes",
        [](std::size_t c) { return over_primes(c, fibmod::pisano_period); });
    add("A064362", 1, "numbers with no Lucas multiple",
        [](std::size_t c) {
          return by_filter(
              c, [](std::int64_t n) { return !lucas_divides_or_one(n); });
        });
    add("A064414", 1, "Fibonacci omni-factors",
        [](std::size_t c) { return by_filter(c, omni_factor); });
    add("A065156", 1, "numbers dividing some Lucas number",
        [](std::size_t c) { return by_filter(c, lucas_divides_or_one); });
    add("A078414", 0, "7-free Fibonacci numbers",
        [](std::size_t c) { return n_free_numbers(7, c); });
    add("A214684", 0, "5-free Fibonacci numbers",
        [](std::size_t c) { return n_free_numbers(5, c); });
    add("A224382", 0, "4-free Fibonacci numbers",
        [](std::size_t c) { return n_free_numbers(4, c); });
    add("A230359", 1, "primes that are not omni-factors",
        [](std::size_t c) {
          return by_filter(c, [](std::int64_t n) {
            return fibmod::is_prime(n) && !fibmod::prime_omni_test(n);
          });
        });
    add("A230457", 1, "numbers that are not omni-factors",
        [](std::size_t c) {
          return by_filter(c,
                           [](std::int64_t n) { return !omni_factor(n); });
        });
    add("A232357", 1, "pairs below n generating a zero-free sequence mod n",
        [](std::size_t c) {
          return by_index(c, [](std::int64_t n) {
            return Term(fibmod::count_zero_pairs(n).zero_free);
          });
        });
    add("A232656", 1, "pairs below n generating a sequence mod n with zeros",
        [](std::size_t c) {
          return by_index(c, [](std::int64_t n) {
            return Term(fibmod::count_zero_pairs(n).with_zero);
          });
        });
    add("A232658", 1, "non-omni-factors that divide some Lucas number",
        [](std::size_t c) {
          return by_filter(c, [](std::int64_t n) {
            return !omni_factor(n) && lucas_divides_or_one(n);
          });
        });
    add("A232666", 0, "6-free Fibonacci numbers",
        [](std::size_t c) { return n_free_numbers(6, c); });
    add("A233246", 1, "sum of squares of Fibonacci-pair cycle lengths mod n",
        [](std::size_t c) {
          return by_index(c, [](std::int64_t n) {
            return fibmod::cycle_length_moments(n).sum_squares;
          });
        });
    add("A233248", 1, "rounded mean steps to a multiple: sum of squared cycle lengths / (2n^2)",
        [](std::size_t c) {
          return by_index(c, [](std::int64_t n) {
            return fibmod::cycle_length_moments(n).rounded_half_mean;
          });
        });
    add("A233525", 1, "3-free sequence dividing at every step, built backward from 1, 1",
        division_rich_chain);
    add("A233526", 1, "2-free sequence extended backward from 3, 1, read in reverse",
        two_free_chain);
    return list;
  }();
  return entries;
}

const Entry& find_entry(const std::string& id) {
  for (const auto& entry : registry())
    if (entry.meta.id == id) return entry;
  raise(ErrorKind::UnsupportedSequence, "unsupported sequence id " + id);
}

}  // namespace

const std::vector<SequenceDescriptor>& supported() {
  static const std::vector<SequenceDescriptor> metas = [] {
    std::vector<SequenceDescriptor> out;
    for (const auto& entry : registry()) out.push_back(entry.meta);
    return out;
  }();
  return metas;
}

bool is_supported(const std::string& id) {
  for (const auto& entry : registry())
    if (entry.meta.id == id) return true;
  return false;
}

const SequenceDescriptor& descriptor(const std::string& id) {
  return find_entry(id).meta;
}

std::vector<Term> emit(const std::string& id, std::size_t count) {
  if (count == 0) return {};
  return find_entry(id).generate(count);
}

void export_bfile(const std::string& id, std::size_t count,
                  const std::filesystem::path& destination) {
  const Entry& entry = find_entry(id);
  const std::vector<Term> terms = emit(id, count);
  std::ofstream out(destination);
  if (!out)
    raise(ErrorKind::Io, "cannot open " + destination.string() + " for writing");
  std::int64_t index = entry.meta.offset;
  for (const auto& term : terms) out << index++ << ' ' << term << '\n';
  out.flush();
  if (!out)
    raise(ErrorKind::Io, "write failed for " + destination.string());
}

}  // namespace freefib::oeis
