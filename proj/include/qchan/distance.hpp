#pragma once

#include <cmath>
#include <string>

#include "qchan/common.hpp"
#include "qchan/qstate.hpp"

namespace qchan {

// trace norm of a Hermitian matrix: sum of |eigenvalues|
inline double trace_norm_hermitian(const cmat& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

// the convention here ranges over [0, 2] for state pairs (twice the
// Nielsen-Chuang trace distance)
inline double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch(dims_msg("trace_norm_distance dimension", sigma.dim(), rho.dim()));
  return trace_norm_hermitian(rho.matrix() - sigma.matrix());
}

inline double hs_norm(const cmat& m) { return std::sqrt((m.adjoint() * m).trace().real()); }

inline double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch(dims_msg("hs_distance dimension", sigma.dim(), rho.dim()));
  return hs_norm(rho.matrix() - sigma.matrix());
}

// Jozsa-Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; the inner
// product is re-Hermitized before the outer square root so roundoff drift
// cannot break positivity
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch(dims_msg("fidelity dimension", sigma.dim(), rho.dim()));
  cmat root = psd_sqrt(rho.matrix());
  cmat inner = hermitize(root * sigma.matrix() * root);
  rvec ev = hermitian_eigenvalues(inner).cwiseMax(0.0);
  double tr_sqrt = ev.cwiseSqrt().sum();
  double f = tr_sqrt * tr_sqrt;
  return std::min(std::max(f, 0.0), 1.0 + 1e-12);
}

struct FvdgBounds {
  double lower;
  double upper;
};

// Fuchs-van de Graaf sandwich on the trace-norm distance
inline FvdgBounds fvdg_bounds(const DensityMatrix& rho, const DensityMatrix& sigma) {
  double f = fidelity(rho, sigma);
  return {2.0 - 2.0 * std::sqrt(f), 2.0 * std::sqrt(std::max(1.0 - f, 0.0))};
}

struct DetectionResult {
  double p_correct;      // in [1/2, 1]
  cmat povm_projector;   // projector onto the nonnegative eigenspace of p1 rho1 - p2 rho2
};

// optimum binary detection: P_c = 1/2 + (1/2)||p1 rho1 - p2 rho2||_1, POVM
// {P, 1-P}; eigenvalue ties below 1e-12 are assigned to the positive side
inline DetectionResult optimal_binary_detection(const DensityMatrix& rho1,
                                                const DensityMatrix& rho2, double p1,
                                                double tie_tol = 1e-12) {
  if (rho1.dim() != rho2.dim())
    throw DimensionMismatch(dims_msg("optimal_binary_detection dimension", rho2.dim(), rho1.dim()));
  if (p1 < 0.0 || p1 > 1.0)
    throw ProbabilityOutOfRange("prior p1 = " + std::to_string(p1) + " not in [0, 1]");
  const double p2 = 1.0 - p1;
  cmat diff = hermitize(p1 * rho1.matrix() - p2 * rho2.matrix());
  Eigen::SelfAdjointEigenSolver<cmat> es(diff);
  cmat proj = cmat::Zero(rho1.dim(), rho1.dim());
  double norm1 = 0.0;
  for (int i = 0; i < rho1.dim(); ++i) {
    double l = es.eigenvalues()(i);
    norm1 += std::abs(l);
    if (l >= -tie_tol) proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  }
  return {0.5 + 0.5 * norm1, proj};
}

}  // namespace qchan
