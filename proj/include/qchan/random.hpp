#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qchan/common.hpp"

namespace qchan {

// seeded generators for sampling states, unitaries and channels; every
// stochastic routine in the library takes an explicit seed so results
// are reproducible
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform() { return uniform_(gen_); }
  std::uint64_t integer() { return gen_(); }

  cplx cnormal() { return cplx(normal(), normal()); }

  cmat gaussian_matrix(int rows, int cols) {
    cmat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

  cvec gaussian_vector(int n) {
    cvec v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }

  // Haar unitary via QR of a Ginibre matrix with phase correction
  cmat unitary(int d) {
    cmat g = gaussian_matrix(d, d);
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
      cplx rjj = r(j, j);
      cplx phase = (std::abs(rjj) > 0) ? rjj / std::abs(rjj) : cplx(1, 0);
      q.col(j) *= phase;
    }
    return q;
  }

  cvec pure_state(int d) {
    cvec v = gaussian_vector(d);
    return v / v.norm();
  }

  // two orthonormal vectors spanning a random 2-plane
  std::pair<cvec, cvec> orthonormal_pair(int d) {
    cmat u = unitary(d);
    return {u.col(0), u.col(1)};
  }

  cmat hermitian(int d) {
    return hermitize(gaussian_matrix(d, d));
  }

  cmat traceless_hermitian(int d) {
    cmat h = hermitian(d);
    h -= (h.trace() / static_cast<double>(d)) * identity(d);
    return h;
  }

  // random full-rank (or rank-limited) density matrix
  cmat density(int d, int rank = 0) {
    if (rank <= 0 || rank > d) rank = d;
    cmat g = gaussian_matrix(d, rank);
    cmat m = g * g.adjoint();
    return m / m.trace();
  }

  // random Kraus set of m operators: slices of a Haar-random isometry
  std::vector<cmat> kraus_operators(int dim_in, int dim_out, int m) {
    cmat g = gaussian_matrix(dim_out * m, dim_in);
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    cmat v = q.leftCols(dim_in);  // isometry dim_in -> dim_out*m
    std::vector<cmat> ops;
    ops.reserve(m);
    for (int a = 0; a < m; ++a) {
      cmat op(dim_out, dim_in);
      for (int i = 0; i < dim_out; ++i) op.row(i) = v.row(i * m + a);
      ops.push_back(op);
    }
    return ops;
  }

  // random probability vector of length n
  rvec probabilities(int n) {
    rvec p(n);
    for (int i = 0; i < n; ++i) p(i) = -std::log(std::max(uniform(), 1e-300));
    return p / p.sum();
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace qchan
