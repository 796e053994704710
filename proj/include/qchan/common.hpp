#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qchan {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

// default tolerances: validation of state/channel invariants, and the
// tighter one used when comparing two computational routes
inline constexpr double kValidationTol = 1e-9;
inline constexpr double kOracleTol = 1e-10;
inline constexpr double kChannelTol = 1e-8;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct TraceNotOne : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct BlochOutOfBall : Error { using Error::Error; };
struct ProbabilityOutOfRange : Error { using Error::Error; };
struct ChoiNotPSD : Error { using Error::Error; };
struct TraceConditionViolated : Error { using Error::Error; };
struct ParameterOutOfRange : Error { using Error::Error; };
struct NotBistochastic : Error { using Error::Error; };
struct NotErgodic : Error { using Error::Error; };
struct NoFixedPointFound : Error { using Error::Error; };
struct CodeNotOrthonormal : Error { using Error::Error; };
struct NotCommuting : Error { using Error::Error; };
struct OverlapExceedsKappa : Error { using Error::Error; };
struct NotTraceless : Error { using Error::Error; };
struct ConditionViolated : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

inline cmat hermitize(const cmat& m) { return 0.5 * (m + m.adjoint()); }

inline double hermiticity_defect(const cmat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline cmat identity(int d) { return cmat::Identity(d, d); }

// Kronecker product with the left factor major: (A (x) B)[i*dB+mu, j*dB+nu] = A(i,j) B(mu,nu)
inline cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline cvec kron_vec(const cvec& a, const cvec& b) {
  cvec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// |A>> vectorization: component at i*cols+mu holds A(i,mu), so that
// |A>> = sum_{i,mu} A(i,mu) e_i (x) f_mu and dket(AXB) = (A (x) B^T) dket(X)
inline cvec dket(const cmat& a) {
  cvec v(a.rows() * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index mu = 0; mu < a.cols(); ++mu) v(i * a.cols() + mu) = a(i, mu);
  return v;
}

inline cmat undket(const cvec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols)
    throw DimensionMismatch("undket: vector of size " + std::to_string(v.size()) +
                            " cannot be reshaped to " + std::to_string(rows) + "x" +
                            std::to_string(cols));
  cmat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int mu = 0; mu < cols; ++mu) a(i, mu) = v(i * cols + mu);
  return a;
}

// eigenvalues of a Hermitian matrix, ascending
inline rvec hermitian_eigenvalues(const cmat& m) {
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// sqrt of a Hermitian PSD matrix; eigenvalues in [-clamp_tol, 0] are treated as 0
inline cmat psd_sqrt(const cmat& m, double clamp_tol = kValidationTol) {
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(m));
  const rvec& ev = es.eigenvalues();
  if (ev.minCoeff() < -clamp_tol)
    throw NotPositive("psd_sqrt: min eigenvalue " + std::to_string(ev.minCoeff()) +
                      " below -" + std::to_string(clamp_tol));
  rvec root = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

inline std::string dims_msg(const std::string& what, long got, long expected) {
  return what + ": got " + std::to_string(got) + ", expected " + std::to_string(expected);
}

}  // namespace qchan
