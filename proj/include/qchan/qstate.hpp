#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qchan/common.hpp"

namespace qchan {

/// Validated density operator: Hermitian, positive semidefinite, unit trace.
/// Roundoff-sized negative eigenvalues (within tolerance) are clamped to zero
/// at construction; anything worse is rejected.
class DensityMatrix {
 public:
  static DensityMatrix validated(const cmat& m, double tol = kValidationTol) {
    if (m.rows() != m.cols())
      throw DimensionMismatch("density matrix must be square, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    double herm = hermiticity_defect(m);
    if (herm > tol)
      throw NotHermitian("Hermiticity violated: max|M - M^dag| = " + std::to_string(herm) +
                         " exceeds " + std::to_string(tol));
    cmat h = hermitize(m);
    Eigen::SelfAdjointEigenSolver<cmat> es(h);
    double min_ev = es.eigenvalues().minCoeff();
    if (min_ev < -tol)
      throw NotPositive("positivity violated: min eigenvalue " + std::to_string(min_ev) +
                        " below -" + std::to_string(tol));
    double tr = h.trace().real();
    if (std::abs(tr - 1.0) > tol)
      throw TraceNotOne("unit trace violated: |tr - 1| = " + std::to_string(std::abs(tr - 1.0)) +
                        " exceeds " + std::to_string(tol));
    rvec ev = es.eigenvalues().cwiseMax(0.0);
    cmat clamped = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    clamped /= clamped.trace().real();
    return DensityMatrix(std::move(clamped));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const cmat& matrix() const { return m_; }

 private:
  explicit DensityMatrix(cmat m) : m_(std::move(m)) {}
  cmat m_;
};

struct PureState {
  cvec amplitudes;
  int dim() const { return static_cast<int>(amplitudes.size()); }
};

struct SchmidtDecomposition {
  rvec coefficients;   // descending, zeros dropped
  cmat left_vectors;   // dA x r, orthonormal columns
  cmat right_vectors;  // dB x r, orthonormal columns
  int schmidt_number() const { return static_cast<int>(coefficients.size()); }
};

enum class Subsys { A, B };

inline DensityMatrix make_density(const cmat& m, double tol = kValidationTol) {
  return DensityMatrix::validated(m, tol);
}

inline PureState make_pure(const cvec& amps, double tol = kValidationTol) {
  double n = amps.norm();
  if (std::abs(n - 1.0) > tol)
    throw ParameterOutOfRange("pure state norm deviates from 1 by " + std::to_string(std::abs(n - 1.0)));
  return PureState{amps / n};
}

inline DensityMatrix pure_density(const cvec& psi, double tol = kValidationTol) {
  cvec v = make_pure(psi, tol).amplitudes;
  return make_density(v * v.adjoint(), tol);
}

inline DensityMatrix maximally_mixed(int d) {
  return make_density(identity(d) / static_cast<double>(d));
}

// Pauli matrices; pauli(0) is the identity
inline cmat pauli(int i) {
  cmat s(2, 2);
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw ParameterOutOfRange("pauli index " + std::to_string(i) + " not in 0..3");
  }
  return s;
}

// Bell basis vectors in the order Psi1+, Psi2+, Psi1-, Psi2-
inline cvec bell_state(int which) {
  cvec v = cvec::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v(0) = s; v(3) = s; break;
    case 1: v(1) = s; v(2) = s; break;
    case 2: v(0) = s; v(3) = -s; break;
    case 3: v(1) = s; v(2) = -s; break;
    default: throw ParameterOutOfRange("bell index " + std::to_string(which) + " not in 0..3");
  }
  return v;
}

inline DensityMatrix tensor_states(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return make_density(kron(rho.matrix(), sigma.matrix()));
}

// reduced state on the kept factor; composite index is (i, mu) -> i*dB + mu
inline cmat partial_trace_matrix(const cmat& m, int da, int db, Subsys keep) {
  if (m.rows() != static_cast<Eigen::Index>(da) * db || m.rows() != m.cols())
    throw DimensionMismatch(dims_msg("partial_trace dimension", m.rows(),
                                     static_cast<long>(da) * db));
  if (keep == Subsys::A) {
    cmat out = cmat::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int mu = 0; mu < db; ++mu) out(i, j) += m(i * db + mu, j * db + mu);
    return out;
  }
  cmat out = cmat::Zero(db, db);
  for (int mu = 0; mu < db; ++mu)
    for (int nu = 0; nu < db; ++nu)
      for (int i = 0; i < da; ++i) out(mu, nu) += m(i * db + mu, i * db + nu);
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, int da, int db, Subsys keep) {
  return make_density(partial_trace_matrix(rho.matrix(), da, db, keep));
}

// purification on a dim x rank space; zero eigenvalues of rho are omitted
inline PureState purify(const DensityMatrix& rho, double rank_tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<cmat> es(rho.matrix());
  const int d = rho.dim();
  std::vector<int> keep;
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) > rank_tol) keep.push_back(i);
  const int r = static_cast<int>(keep.size());
  cvec psi = cvec::Zero(static_cast<Eigen::Index>(d) * r);
  for (int a = 0; a < r; ++a) {
    double q = es.eigenvalues()(keep[a]);
    cvec e = es.eigenvectors().col(keep[a]);
    for (int i = 0; i < d; ++i) psi(static_cast<Eigen::Index>(i) * r + a) += std::sqrt(q) * e(i);
  }
  return PureState{psi};
}

inline SchmidtDecomposition schmidt(const PureState& psi, int da, int db,
                                    double rank_tol = 1e-10) {
  if (psi.dim() != da * db)
    throw DimensionMismatch(dims_msg("schmidt dimension", psi.dim(), static_cast<long>(da) * db));
  cmat a = undket(psi.amplitudes, da, db);
  Eigen::JacobiSVD<cmat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const rvec& sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) > rank_tol) ++r;
  SchmidtDecomposition out;
  out.coefficients = sv.head(r);
  out.left_vectors = svd.matrixU().leftCols(r);
  // psi = sum_k s_k u_k (x) conj(w_k), so the right vectors are conjugated
  out.right_vectors = svd.matrixV().leftCols(r).conjugate();
  return out;
}

struct MaxEntResult {
  bool maximally_entangled;
  cmat witness_unitary;  // psi = (1/sqrt(d)) |U>> when maximally entangled
};

inline MaxEntResult is_maximally_entangled(const PureState& psi, int d, double tol = 1e-8) {
  if (psi.dim() != d * d)
    throw DimensionMismatch(dims_msg("is_maximally_entangled dimension", psi.dim(),
                                     static_cast<long>(d) * d));
  cmat proj = psi.amplitudes * psi.amplitudes.adjoint();
  cmat ra = partial_trace_matrix(proj, d, d, Subsys::A);
  cmat rb = partial_trace_matrix(proj, d, d, Subsys::B);
  cmat mm = identity(d) / static_cast<double>(d);
  bool ok = (ra - mm).cwiseAbs().maxCoeff() <= tol && (rb - mm).cwiseAbs().maxCoeff() <= tol;
  if (!ok) return {false, cmat()};
  cmat u = std::sqrt(static_cast<double>(d)) * undket(psi.amplitudes, d, d);
  return {true, u};
}

inline Eigen::Vector3d bloch_from_density(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionMismatch(dims_msg("bloch dimension", rho.dim(), 2));
  Eigen::Vector3d r;
  for (int i = 0; i < 3; ++i) r(i) = (rho.matrix() * pauli(i + 1)).trace().real();
  return r;
}

inline DensityMatrix density_from_bloch(const Eigen::Vector3d& r, double tol = kValidationTol) {
  if (r.norm() > 1.0 + tol)
    throw BlochOutOfBall("Bloch vector norm " + std::to_string(r.norm()) + " exceeds 1");
  cmat m = 0.5 * identity(2);
  for (int i = 0; i < 3; ++i) m += 0.5 * r(i) * pauli(i + 1);
  return make_density(m, std::max(tol, 1e-12));
}

// von Neumann entropy in nats; 0 ln 0 = 0, tolerance-sized negatives clamp to 0
inline double von_neumann_entropy(const DensityMatrix& rho) {
  rvec ev = hermitian_eigenvalues(rho.matrix());
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i) {
    double l = std::max(ev(i), 0.0);
    if (l > 0) s -= l * std::log(l);
  }
  return std::max(s, 0.0);
}

inline double entropy_of_spectrum(const rvec& p) {
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i)
    if (p(i) > 0) s -= p(i) * std::log(p(i));
  return s;
}

// S(rho|sigma) = tr(rho ln rho - rho ln sigma); +infinity when the support of
// rho leaks outside the support of sigma
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double support_tol = 1e-12, double weight_tol = kValidationTol) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch(dims_msg("relative_entropy dimension", sigma.dim(), rho.dim()));
  Eigen::SelfAdjointEigenSolver<cmat> es(sigma.matrix());
  double tr_rho_ln_sigma = 0.0;
  double null_weight = 0.0;
  for (int k = 0; k < sigma.dim(); ++k) {
    double s = es.eigenvalues()(k);
    double w = (es.eigenvectors().col(k).adjoint() * rho.matrix() * es.eigenvectors().col(k))(0).real();
    if (s < support_tol) {
      null_weight += std::max(w, 0.0);
    } else {
      tr_rho_ln_sigma += w * std::log(s);
    }
  }
  if (null_weight > weight_tol) return std::numeric_limits<double>::infinity();
  return std::max(-von_neumann_entropy(rho) - tr_rho_ln_sigma, 0.0);
}

}  // namespace qchan
