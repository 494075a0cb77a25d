#pragma once

// Largest Lyapunov exponent from a scalar time series (Rosenstein et al.):
// delay-embed, pair every reference point with its nearest neighbour outside
// a Theiler window, follow both forward and average ln(distance) per step.
// The slope of that divergence curve over the fit range is the exponent, in
// natural-log units per iteration.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "ptent/errors.hpp"

namespace ptent {

struct RosensteinParams {
  std::size_t embed_dim = 2;
  std::size_t delay = 1;
  std::size_t theiler_window = 10;
  std::size_t max_steps = 12;
  std::size_t fit_first = 1;
  std::size_t fit_last = 8;
};

struct LyapunovEstimate {
  double lambda = 0.0;
  std::size_t fit_first = 0;
  std::size_t fit_last = 0;
  std::size_t neighbor_count = 0;
  // Mean ln(divergence) for steps 0 .. max_steps (NaN where no pair survived).
  std::vector<double> divergence;
};

inline constexpr std::size_t kMinLyapunovSeries = 1000;

/// Mean ln|F'(x)| along any tent trajectory avoiding the breakpoint: ln 2.
inline double lyapunov_direct(std::size_t series_length) {
  if (series_length < 1) throw RangeError("series length must be positive");
  return std::log(2.0);
}

namespace detail {

class DelayEmbedding {
 public:
  DelayEmbedding(std::span<const double> x, std::size_t dim, std::size_t delay)
      : x_(x), dim_(dim), delay_(delay) {}

  std::size_t size() const { return x_.size() - (dim_ - 1) * delay_; }

  double coord(std::size_t i, std::size_t c) const { return x_[i + c * delay_]; }

  double dist2(std::size_t i, std::size_t j) const {
    double s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const double d = coord(i, c) - coord(j, c);
      s += d * d;
    }
    return s;
  }

 private:
  std::span<const double> x_;
  std::size_t dim_;
  std::size_t delay_;
};

// Least-squares slope of y over x = first..last.
inline double fit_slope(const std::vector<double>& y, std::size_t first,
                        std::size_t last) {
  const double n = static_cast<double>(last - first + 1);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t s = first; s <= last; ++s) {
    const double xs = static_cast<double>(s);
    sx += xs;
    sy += y[s];
    sxx += xs * xs;
    sxy += xs * y[s];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

// Neighbours are searched by sweeping outward along the first embedding
// coordinate, which is exact (not approximate) for the Euclidean metric.
// Pairs at distance zero are skipped: a quantized orbit revisits states, and
// an exact repeat carries no divergence information.
inline LyapunovEstimate lyapunov_rosenstein(std::span<const double> series,
                                            const RosensteinParams& p = {}) {
  if (p.embed_dim < 1 || p.delay < 1) throw RangeError("embedding parameters must be >= 1");
  if (p.fit_first >= p.fit_last || p.fit_last > p.max_steps) {
    throw RangeError("fit range must satisfy first < last <= max_steps");
  }
  if (series.size() < kMinLyapunovSeries) {
    throw EstimationError("series too short for Lyapunov estimation");
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  if (*lo == *hi) throw EstimationError("constant series");

  detail::DelayEmbedding emb(series, p.embed_dim, p.delay);
  if (emb.size() <= p.max_steps + p.theiler_window + 1) {
    throw EstimationError("series too short for the embedding and horizon");
  }
  // Only points that can be followed for max_steps take part.
  const std::size_t m = emb.size() - p.max_steps;

  std::vector<std::size_t> by_x(m);
  std::iota(by_x.begin(), by_x.end(), 0);
  std::stable_sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) {
    return emb.coord(a, 0) < emb.coord(b, 0);
  });

  std::vector<double> sum(p.max_steps + 1, 0.0);
  std::vector<std::size_t> count(p.max_steps + 1, 0);
  std::size_t pairs = 0;

  for (std::size_t pos = 0; pos < m; ++pos) {
    const std::size_t i = by_x[pos];
    const double xi = emb.coord(i, 0);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = m;

    auto consider = [&](std::size_t j) {
      const std::size_t sep = i > j ? i - j : j - i;
      if (sep <= p.theiler_window) return;
      const double d2 = emb.dist2(i, j);
      if (d2 <= 0.0) return;
      if (d2 < best || (d2 == best && j < best_j)) {
        best = d2;
        best_j = j;
      }
    };
    // The first-coordinate gap bounds the full distance from below.
    for (std::size_t q = pos + 1; q < m; ++q) {
      const double dx = emb.coord(by_x[q], 0) - xi;
      if (dx * dx > best) break;
      consider(by_x[q]);
    }
    for (std::size_t q = pos; q-- > 0;) {
      const double dx = xi - emb.coord(by_x[q], 0);
      if (dx * dx > best) break;
      consider(by_x[q]);
    }
    if (best_j == m) continue;

    ++pairs;
    for (std::size_t s = 0; s <= p.max_steps; ++s) {
      const double d2 = emb.dist2(i + s, best_j + s);
      if (d2 > 0.0) {
        sum[s] += 0.5 * std::log(d2);
        ++count[s];
      }
    }
  }
  if (pairs == 0) throw EstimationError("no valid neighbour pairs");

  LyapunovEstimate est;
  est.fit_first = p.fit_first;
  est.fit_last = p.fit_last;
  est.neighbor_count = pairs;
  est.divergence.resize(p.max_steps + 1);
  for (std::size_t s = 0; s <= p.max_steps; ++s) {
    est.divergence[s] = count[s] ? sum[s] / static_cast<double>(count[s])
                                 : std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t s = p.fit_first; s <= p.fit_last; ++s) {
    if (std::isnan(est.divergence[s])) {
      throw EstimationError("divergence curve undefined inside the fit range");
    }
  }
  est.lambda = detail::fit_slope(est.divergence, p.fit_first, p.fit_last);
  return est;
}

}  // namespace ptent
