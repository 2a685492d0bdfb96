#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scatterqual/error.hpp"

namespace scatterqual {

/// Deterministic low-discrepancy sequence in [0,1)^dim (van der Corput per
/// coordinate, coprime prime bases). Index 0 maps to sequence element 1 so the
/// all-zero point is skipped.
class HaltonSequence {
 public:
  explicit HaltonSequence(int dim) : dim_(dim) {
    static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};
    if (dim < 1 || dim > static_cast<int>(sizeof(primes) / sizeof(primes[0]))) {
      throw InputError("Halton sequence supports dimensions 1..16");
    }
    bases_.assign(primes, primes + dim);
  }

  int dim() const { return dim_; }

  void point(std::size_t index, std::span<double> out) const {
    for (int j = 0; j < dim_; ++j) out[j] = radical_inverse(index + 1, bases_[j]);
  }

 private:
  static double radical_inverse(std::size_t n, int base) {
    double inv = 1.0 / base;
    double scale = inv;
    double value = 0.0;
    while (n > 0) {
      value += static_cast<double>(n % static_cast<std::size_t>(base)) * scale;
      n /= static_cast<std::size_t>(base);
      scale *= inv;
    }
    return value;
  }

  int dim_;
  std::vector<int> bases_;
};

}  // namespace scatterqual
