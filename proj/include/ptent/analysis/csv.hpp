#pragma once

// CSV emitters for the analysis results: one header row, dot decimal point,
// doubles written with enough digits to round-trip.

#include <limits>
#include <locale>
#include <ostream>
#include <span>
#include <utility>

#include "ptent/analysis/lyapunov.hpp"
#include "ptent/analysis/statistics.hpp"

namespace ptent::csv {

namespace detail {

class Writer {
 public:
  explicit Writer(std::ostream& os) : os_(os), saved_(os.getloc()), prec_(os.precision()) {
    os_.imbue(std::locale::classic());
    os_.precision(std::numeric_limits<double>::max_digits10);
  }
  ~Writer() {
    os_.imbue(saved_);
    os_.precision(prec_);
  }
  Writer(const Writer&) = delete;
  Writer& operator=(const Writer&) = delete;

  std::ostream& out() { return os_; }

 private:
  std::ostream& os_;
  std::locale saved_;
  std::streamsize prec_;
};

}  // namespace detail

inline void write_histogram(std::ostream& os, const HistogramResult& h) {
  detail::Writer w(os);
  w.out() << "bin,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) w.out() << b << ',' << h.counts[b] << '\n';
}

inline void write_autocorrelation(std::ostream& os, const AutocorrResult& a) {
  detail::Writer w(os);
  w.out() << "lag,r\n";
  for (std::size_t lag = 0; lag < a.r.size(); ++lag) w.out() << lag << ',' << a.r[lag] << '\n';
}

inline void write_divergence(std::ostream& os, const LyapunovEstimate& e) {
  detail::Writer w(os);
  w.out() << "step,mean_log_divergence\n";
  for (std::size_t s = 0; s < e.divergence.size(); ++s) {
    w.out() << s << ',' << e.divergence[s] << '\n';
  }
}

inline void write_first_return(std::ostream& os,
                               std::span<const std::pair<double, double>> pairs) {
  detail::Writer w(os);
  w.out() << "x_n,x_next\n";
  for (auto [x, y] : pairs) w.out() << x << ',' << y << '\n';
}

}  // namespace ptent::csv
