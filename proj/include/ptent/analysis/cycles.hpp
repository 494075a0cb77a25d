#pragma once

// Orbit structure of the finite-state map. Every orbit is eventually
// periodic; cycle_detect finds transient and period in constant memory
// (Brent's algorithm) and cycle_census runs it over every seed.

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "ptent/core_map.hpp"
#include "ptent/errors.hpp"

namespace ptent {

struct CycleReport {
  Word seed = 0;
  std::uint64_t transient = 0;
  std::uint64_t period = 0;
  bool reaches_zero = false;

  friend bool operator==(const CycleReport&, const CycleReport&) = default;
};

inline CycleReport cycle_detect(const MapConfig& config, Word seed) {
  detail::require_word(seed, config.width);
  auto f = [&](Word w) { return step(config, w); };

  std::uint64_t power = 1, period = 1;
  Word tortoise = seed;
  Word hare = f(seed);
  while (tortoise != hare) {
    if (power == period) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
    hare = f(hare);
    ++period;
  }

  tortoise = hare = seed;
  for (std::uint64_t i = 0; i < period; ++i) hare = f(hare);
  std::uint64_t transient = 0;
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++transient;
  }
  // tortoise is now the first state on the cycle.
  return {seed, transient, period, period == 1 && tortoise == 0};
}

inline constexpr int kMaxCensusBits = 20;

struct CycleCensus {
  BitWidth width{2};
  bool perturbed = true;
  std::vector<CycleReport> reports;  // indexed by seed
  double mean_period = 0.0;
  std::uint64_t max_period = 0;
  std::vector<Word> zero_reaching_seeds;
};

/// Exhaustive census over all 2^k seeds, split across worker threads.
inline CycleCensus cycle_census(BitWidth width, bool perturbed,
                                unsigned threads = std::thread::hardware_concurrency()) {
  if (width.bits() > kMaxCensusBits) {
    throw RangeError("exhaustive census limited to k <= " +
                     std::to_string(kMaxCensusBits));
  }
  const MapConfig config{width, perturbed};
  const std::size_t n = static_cast<std::size_t>(width.mask()) + 1;

  CycleCensus census;
  census.width = width;
  census.perturbed = perturbed;
  census.reports.resize(n);

  threads = std::clamp<unsigned>(threads, 1, 64);
  const std::size_t chunk = (n + threads - 1) / threads;
  {
    std::vector<std::jthread> workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      workers.emplace_back([&, begin] {
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t s = begin; s < end; ++s) {
          census.reports[s] = cycle_detect(config, static_cast<Word>(s));
        }
      });
    }
  }

  double sum = 0.0;
  for (const auto& r : census.reports) {
    sum += static_cast<double>(r.period);
    census.max_period = std::max(census.max_period, r.period);
    if (r.reaches_zero) census.zero_reaching_seeds.push_back(r.seed);
  }
  census.mean_period = sum / static_cast<double>(n);
  return census;
}

}  // namespace ptent
