#pragma once

#include <random>

#include <vector>

#include "critgroup/int_matrix.hpp"

namespace critgroup::testing {

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                               long lo = -9, long hi = 9) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
  }
  return m;
}

}  // namespace critgroup::testing

namespace critgroup::testing {

inline std::vector<Integer> ints(std::initializer_list<long> values) {
  return std::vector<Integer>(values.begin(), values.end());
}

inline std::vector<std::size_t> sizes_of(std::initializer_list<std::size_t> values) {
  return std::vector<std::size_t>(values);
}

}  // namespace critgroup::testing
