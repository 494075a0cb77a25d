#pragma once

#include <stdexcept>
#include <string>

namespace ptent {

// Value outside its declared domain (bit width, word, sample, count).
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// Malformed or inconsistent netlist topology.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text netlist that cannot be read.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A statistical estimator has no meaningful answer for its input.
struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ptent
