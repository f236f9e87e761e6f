#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "freefib/term.hpp"

namespace testutil {

inline std::vector<freefib::Term> terms(std::initializer_list<long long> values) {
  return {values.begin(), values.end()};
}

// Deterministic generator for the hand-rolled property tests.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::int64_t draw(std::mt19937_64& gen, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
}

}  // namespace testutil
