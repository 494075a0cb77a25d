// Generate a short 16-bit trajectory, check it against the gate-level model
// and print a few statistics.

#include <cstdio>

#include "ptent/ptent.hpp"

int main() {
  const ptent::BitWidth width(16);
  const ptent::MapConfig config{width, /*perturbed=*/true};

  const auto words = ptent::iterate(config, 0x5A3C, 1 << 16);
  const auto circuit = ptent::build_tent_netlist(width);
  const bool same = ptent::run(circuit, 0x5A3C, 1 << 16) == words;

  const auto series = ptent::decode_series(words, width);
  const auto bits = ptent::output_bits(words, width);
  std::printf("gate-level model agrees: %s\n", same ? "yes" : "no");
  std::printf("elements: %zu\n", ptent::element_stats(circuit).total());
  std::printf("output-bit entropy: %.5f\n", ptent::bit_entropy(bits).h);
  std::printf("lyapunov (rosenstein): %.4f\n", ptent::lyapunov_rosenstein(series).lambda);
  return 0;
}
