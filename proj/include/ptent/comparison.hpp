#pragma once

// Elements-per-bit comparison against published tent-map generators. The
// literature rows are fixed reference constants; rows for this design come
// from the netlist census.

#include <cmath>
#include <string>
#include <vector>

#include "ptent/netlist.hpp"

namespace ptent {

struct ComparisonRow {
  std::string source;
  int bits = 0;
  std::size_t elements = 0;
  double ratio = 0.0;  // elements / bits, rounded half-up to 3 decimals
};

inline double round3(double v) { return std::floor(v * 1000.0 + 0.5) / 1000.0; }

inline ComparisonRow make_row(std::string source, int bits, std::size_t elements) {
  return {std::move(source), bits, elements,
          round3(static_cast<double>(elements) / static_cast<double>(bits))};
}

inline ComparisonRow this_design_row(BitWidth width) {
  return make_row("this design", width.bits(),
                  element_stats(build_tent_netlist(width)).total());
}

inline std::vector<ComparisonRow> literature_rows() {
  return {
      make_row("Khani and Ahmadi (2013)", 10, 55),
      make_row("Sreenath and Narayanan (2018)", 32, 161),
      make_row("Sreenath and Narayanan (2018)", 64, 321),
  };
}

/// This design at each requested width, followed by the literature rows.
inline std::vector<ComparisonRow> comparison_table(const std::vector<int>& widths) {
  std::vector<ComparisonRow> rows;
  for (int k : widths) rows.push_back(this_design_row(BitWidth(k)));
  auto lit = literature_rows();
  rows.insert(rows.end(), lit.begin(), lit.end());
  return rows;
}

}  // namespace ptent
