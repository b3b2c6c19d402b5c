// Enumerates order 27 and prints one skew Hadamard matrix order per class.

#include <iostream>

#include "goodmat/pipeline.hpp"
#include "goodmat/verify.hpp"

int main() {
  const auto result = goodmat::enumerate_good_matrices(27);
  std::cout << "#G_27 = " << result.quads.size() << '\n';
  for (const auto& c : result.quads) {
    std::cout << goodmat::format_row(c.quad.a()) << "  -> order " << goodmat::build_skew_hadamard(c.quad).rows()
              << '\n';
  }
}
