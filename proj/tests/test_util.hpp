#pragma once

#include <doctest.h>
#include <random>

#include "squeezemap/core.hpp"

namespace sqz::testutil {

inline Mat random_complex(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
  return m;
}

inline Mat random_unitary(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Mat> qr(random_complex(n, n, rng));
  Mat q = qr.householderQ();
  // fix phases so Q is Haar-ish rather than QR-convention biased
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    cplx d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace sqz::testutil
