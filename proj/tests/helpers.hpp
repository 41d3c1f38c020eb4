#pragma once

#include "mblo/numerics.hpp"

#include <random>

namespace testing_helpers {

inline mblo::RealMatrix random_real(int r, int c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  mblo::RealMatrix A(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) A(i, j) = g(rng);
  return A;
}

inline mblo::ComplexMatrix random_complex_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  mblo::ComplexMatrix A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) A(i, j) = A(j, i) = mblo::cplx(g(rng), g(rng));
  return A;
}

inline mblo::RealMatrix random_psd(int n, std::mt19937_64& rng) {
  const mblo::RealMatrix B = random_real(n, n, rng);
  return B * B.transpose();
}

}  // namespace testing_helpers
