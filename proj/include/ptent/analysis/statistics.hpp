#pragma once

// Randomness statistics over generated sequences: entropy, autocorrelation,
// histogram and first-return pairs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ptent/core_map.hpp"
#include "ptent/errors.hpp"

namespace ptent {

/// Decoded trajectory, the real-valued series every analysis consumes.
inline std::vector<double> decode_series(std::span<const Word> words,
                                         BitWidth width) {
  std::vector<double> out;
  out.reserve(words.size());
  for (Word w : words) out.push_back(decode(w, width));
  return out;
}

inline std::vector<int> output_bits(std::span<const Word> words, BitWidth width,
                                    Tap tap = Tap::msb) {
  std::vector<int> out;
  out.reserve(words.size());
  for (Word w : words) out.push_back(output_bit(w, width, tap));
  return out;
}

struct EntropyResult {
  double h = 0.0;  // normalized to [0, 1]
  std::size_t bins = 0;
  std::vector<double> probabilities;
};

/// -sum p_i log_b p_i with b = number of bins, so a uniform histogram scores 1.
inline EntropyResult shannon_entropy(std::span<const std::uint64_t> counts) {
  const std::uint64_t total =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (counts.empty() || total == 0) {
    throw RangeError("entropy needs at least one nonzero count");
  }
  EntropyResult r;
  r.bins = counts.size();
  r.probabilities.reserve(counts.size());
  double h = 0.0;
  for (std::uint64_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    r.probabilities.push_back(p);
    if (p > 0.0) h -= p * std::log(p);
  }
  // A single symbol carries no information.
  r.h = r.bins > 1 ? std::clamp(h / std::log(static_cast<double>(r.bins)), 0.0, 1.0)
                   : 0.0;
  return r;
}

/// Entropy of a 0/1 stream.
inline EntropyResult bit_entropy(std::span<const int> bits) {
  std::uint64_t counts[2] = {0, 0};
  for (int b : bits) ++counts[b ? 1 : 0];
  return shannon_entropy(counts);
}

struct AutocorrResult {
  std::vector<double> r;  // r[lag] for lag = 0 .. max_lag

  std::size_t max_lag() const { return r.empty() ? 0 : r.size() - 1; }

  /// Largest |r(lag)| over lags 1..max_lag and where it occurs.
  std::pair<std::size_t, double> peak_off_zero() const {
    std::size_t at = 0;
    double best = 0.0;
    for (std::size_t lag = 1; lag < r.size(); ++lag) {
      if (std::abs(r[lag]) > best) { best = std::abs(r[lag]); at = lag; }
    }
    return {at, best};
  }
};

// r(lag) = sum_{i<N-lag} (x_i - m)(x_{i+lag} - m) / sum_i (x_i - m)^2
inline AutocorrResult autocorrelation(std::span<const double> x,
                                      std::size_t max_lag) {
  const std::size_t n = x.size();
  if (max_lag < 1 || n <= max_lag) {
    throw RangeError("autocorrelation needs 1 <= max_lag < N");
  }
  if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) {
    throw EstimationError("constant series has undefined variance");
  }
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  std::vector<double> dev(n);
  for (std::size_t i = 0; i < n; ++i) dev[i] = x[i] - mean;
  double var = 0.0;
  for (double d : dev) var += d * d;
  if (!(var > 0.0)) throw EstimationError("constant series has undefined variance");

  AutocorrResult out;
  out.r.resize(max_lag + 1);
  out.r[0] = 1.0;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += dev[i] * dev[i + lag];
    out.r[lag] = s / var;
  }
  return out;
}

struct HistogramResult {
  std::vector<std::uint64_t> counts;
  double expected = 0.0;  // N / bins
  double chi_square = 0.0;

  /// Largest |count - expected| / expected over all bins.
  double max_relative_deviation() const {
    double worst = 0.0;
    for (auto c : counts) {
      worst = std::max(worst, std::abs(static_cast<double>(c) - expected) / expected);
    }
    return worst;
  }
};

/// Bin b holds [b/bins, (b+1)/bins); the last bin also takes x = 1.
inline HistogramResult histogram(std::span<const double> x, std::size_t bins) {
  if (bins < 2) throw RangeError("histogram needs at least 2 bins");
  if (x.empty()) throw RangeError("histogram of an empty series");
  HistogramResult h;
  h.counts.assign(bins, 0);
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw RangeError("sample outside [0, 1]");
    auto b = static_cast<std::size_t>(v * static_cast<double>(bins));
    ++h.counts[std::min(b, bins - 1)];
  }
  h.expected = static_cast<double>(x.size()) / static_cast<double>(bins);
  for (auto c : h.counts) {
    const double d = static_cast<double>(c) - h.expected;
    h.chi_square += d * d / h.expected;
  }
  return h;
}

inline std::vector<std::pair<double, double>> first_return_pairs(
    std::span<const double> x) {
  if (x.size() < 2) throw RangeError("first-return map needs N >= 2");
  std::vector<std::pair<double, double>> out;
  out.reserve(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) out.emplace_back(x[i], x[i + 1]);
  return out;
}

/// Largest vertical distance of the pairs from the mu = 2 tent graph.
inline double max_tent_deviation(std::span<const std::pair<double, double>> pairs) {
  double worst = 0.0;
  for (auto [x, y] : pairs) worst = std::max(worst, std::abs(y - tent_exact(x)));
  return worst;
}

}  // namespace ptent
