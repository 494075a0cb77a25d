#pragma once

// Word-level model of the tent map on polarized fixed-point registers.
//
// A k-bit register w = b_0 b_1 ... b_{k-1} (b_0 is the MSB) represents the
// real value w / (2^k - 1). Under that reading the all-ones word is exactly
// 1, so 1 - x is the bitwise complement and the mu = 2 tent map becomes
//
//     next = (b_0 ? ~w : w) << 1      (masked to k bits)
//
// with an optional perturbation bit b_{k-1} ^ b_{k-2} shifted in at the LSB.

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ptent/errors.hpp"

namespace ptent {

using Word = std::uint64_t;

class BitWidth {
 public:
  static constexpr int kMin = 2;
  static constexpr int kMax = 64;

  constexpr explicit BitWidth(int bits) : bits_(bits) {
    if (bits < kMin || bits > kMax) {
      throw RangeError("bit width " + std::to_string(bits) +
                       " outside [2, 64]");
    }
  }

  constexpr int bits() const noexcept { return bits_; }

  // All-ones word, 2^k - 1. Also the polarized representation of 1.
  constexpr Word mask() const noexcept {
    return bits_ == 64 ? ~Word{0} : (Word{1} << bits_) - 1;
  }

  constexpr Word msb() const noexcept { return Word{1} << (bits_ - 1); }

  // Value of one step of the last place under the w / (2^k - 1) reading.
  long double ulp_star() const noexcept {
    return 1.0L / static_cast<long double>(mask());
  }

  constexpr bool contains(Word w) const noexcept { return w <= mask(); }

  friend constexpr bool operator==(BitWidth, BitWidth) = default;

 private:
  int bits_;
};

struct MapConfig {
  BitWidth width;
  bool perturbed = true;

  // The shift register realizes multiplication by exactly two.
  static constexpr int mu = 2;
};

// Which register bit is tapped as the generator's binary output.
enum class Tap { msb, lsb };

namespace detail {

inline void require_word(Word w, BitWidth width) {
  if (!width.contains(w)) {
    throw RangeError("word " + std::to_string(w) + " does not fit in " +
                     std::to_string(width.bits()) + " bits");
  }
}

}  // namespace detail

/// Bit b_i of w, with b_0 the most significant of the k bits.
inline int bit(Word w, BitWidth width, int i) {
  if (i < 0 || i >= width.bits()) {
    throw RangeError("bit index " + std::to_string(i) + " out of range");
  }
  return static_cast<int>((w >> (width.bits() - 1 - i)) & 1U);
}

/// Real value of a register: w / (2^k - 1). decode(0) = 0, decode(all ones) = 1.
inline double decode(Word w, BitWidth width) {
  detail::require_word(w, width);
  return static_cast<double>(static_cast<long double>(w) /
                             static_cast<long double>(width.mask()));
}

/// Nearest register to x, rounding half up. Inverse of decode on words.
inline Word encode(double x, BitWidth width) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("sample outside [0, 1]");
  }
  const long double top = static_cast<long double>(width.mask());
  const long double scaled = std::floor(static_cast<long double>(x) * top + 0.5L);
  if (scaled >= top) return width.mask();
  return static_cast<Word>(scaled);
}

/// 1 - x in the polarized format: bitwise NOT restricted to k bits.
inline Word complement(Word w, BitWidth width) {
  detail::require_word(w, width);
  return ~w & width.mask();
}

/// b_{k-1} ^ b_{k-2}. Unchanged by complement, since both bits flip.
inline int perturbation_bit(Word w, BitWidth width) {
  detail::require_word(w, width);
  return static_cast<int>((w ^ (w >> 1)) & 1U);
}

inline Word step(const MapConfig& config, Word w) {
  const BitWidth width = config.width;
  detail::require_word(w, width);
  const Word folded = (w & width.msb()) ? complement(w, width) : w;
  // Folding leaves the MSB clear, so the shift never drops a set bit.
  assert((folded & width.msb()) == 0);
  const Word serial_in =
      config.perturbed ? static_cast<Word>(perturbation_bit(w, width)) : 0;
  return ((folded << 1) | serial_in) & width.mask();
}

/// [w0, step(w0), ..., step^n(w0)], length n + 1.
inline std::vector<Word> iterate(const MapConfig& config, Word w0,
                                 std::size_t n) {
  if (n < 1) throw RangeError("iterate needs at least one step");
  detail::require_word(w0, config.width);
  std::vector<Word> out;
  out.reserve(n + 1);
  out.push_back(w0);
  for (std::size_t i = 0; i < n; ++i) out.push_back(step(config, out.back()));
  return out;
}

/// Real-valued tent map; the reference the register model is checked against.
inline double tent_exact(double x, double mu = 2.0) {
  return x < 0.5 ? mu * x : mu * (1.0 - x);
}

inline int output_bit(Word w, BitWidth width, Tap tap) {
  return tap == Tap::msb ? bit(w, width, 0) : bit(w, width, width.bits() - 1);
}

/// Seeds 0 and all-ones fall into the absorbing fixed point 0.
inline bool is_degenerate_seed(Word w, BitWidth width) {
  return w == 0 || w == width.mask();
}

}  // namespace ptent
