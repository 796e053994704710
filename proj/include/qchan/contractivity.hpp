#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/common.hpp"
#include "qchan/distance.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"

namespace qchan {

// exact contractivity modulus of a qubit channel: largest singular value of
// the 3x3 block of the Pauli transfer matrix
inline double modulus_qubit(const Channel& phi) {
  if (phi.dim_in() != 2 || phi.dim_out() != 2)
    throw DimensionMismatch("modulus_qubit requires a qubit channel");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(phi.ptm().tmat());
  return svd.singularValues()(0);
}

// transfer matrix of the channel as a linear map on matrices, in the dket
// basis; the Heisenberg map is its conjugate transpose
inline cmat transfer_matrix(const Channel& phi) {
  const Eigen::Index n = static_cast<Eigen::Index>(phi.dim_in()) * phi.dim_in();
  cmat m = cmat::Zero(static_cast<Eigen::Index>(phi.dim_out()) * phi.dim_out(), n);
  for (const cmat& v : phi.kraus().ops) m += kron(v, v.conjugate());
  return m;
}

struct TransferSpectrum {
  cvec eigenvalues;
  double mixing_rate = 0.0;  // max |mu| over eigenvalues away from 1
};

inline TransferSpectrum transfer_spectrum(const Channel& phi, double one_tol = 1e-8) {
  if (phi.dim_in() != phi.dim_out())
    throw DimensionMismatch("transfer_spectrum requires dim_in == dim_out");
  Eigen::ComplexEigenSolver<cmat> es(transfer_matrix(phi));
  TransferSpectrum out;
  out.eigenvalues = es.eigenvalues();
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i) {
    cplx mu = out.eigenvalues(i);
    if (std::abs(mu - cplx(1, 0)) > one_tol) out.mixing_rate = std::max(out.mixing_rate, std::abs(mu));
  }
  return out;
}

struct FixedPointReport {
  DensityMatrix rho_fixed;
  double residual = 0.0;
  bool unique = true;
  int eigenvalue_1_multiplicity = 1;
  std::vector<DensityMatrix> fixed_points;  // representatives when not unique
};

namespace detail {

inline std::optional<DensityMatrix> state_if_fixed(const Channel& phi, const cmat& cand,
                                                   double residual_tol) {
  cmat h = hermitize(cand);
  double tr = h.trace().real();
  if (std::abs(tr) < 1e-10) return std::nullopt;
  h /= tr;
  rvec ev = hermitian_eigenvalues(h);
  if (ev.minCoeff() < -1e-8) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<cmat> es(h);
  cmat m = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).asDiagonal() *
           es.eigenvectors().adjoint();
  m /= m.trace().real();
  if ((phi.apply_matrix(m) - m).cwiseAbs().maxCoeff() > residual_tol) return std::nullopt;
  return make_density(m);
}

}  // namespace detail

// fixed point via the eigenvector of the transfer matrix at eigenvalue 1,
// cross-checked by power iteration from the maximally mixed state;
// a degenerate eigenvalue-1 cluster is reported, not rejected
inline FixedPointReport fixed_point(const Channel& phi, double cluster_tol = 1e-8,
                                    std::uint64_t seed = 7) {
  if (phi.dim_in() != phi.dim_out())
    throw DimensionMismatch("fixed_point requires dim_in == dim_out");
  const int d = phi.dim_in();
  Eigen::ComplexEigenSolver<cmat> es(transfer_matrix(phi));
  int closest = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> cluster;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double dist = std::abs(es.eigenvalues()(i) - cplx(1, 0));
    if (dist < best) {
      best = dist;
      closest = i;
    }
    if (dist <= cluster_tol) cluster.push_back(i);
  }
  if (best > 1e-6)
    throw NoFixedPointFound("no transfer eigenvalue within 1e-6 of 1; closest at distance " +
                            std::to_string(best));
  if (cluster.empty()) cluster.push_back(closest);

  // Hermitize the leading eigenvector and normalize its trace
  cmat x = undket(es.eigenvectors().col(closest), d, d);
  cmat h = hermitize(x);
  if (h.cwiseAbs().maxCoeff() < 1e-12) h = hermitize(cplx(0, -1) * x);
  double tr = h.trace().real();
  cmat rho_m;
  if (std::abs(tr) > 1e-10) {
    rho_m = h / tr;
  } else {
    rho_m = identity(d) / static_cast<double>(d);
  }
  // power iteration from 1/d as an independent route (also the fallback)
  cmat pw = identity(d) / static_cast<double>(d);
  for (int it = 0; it < 20000; ++it) {
    cmat next = phi.apply_matrix(pw);
    if ((next - pw).cwiseAbs().maxCoeff() < 1e-14) {
      pw = next;
      break;
    }
    pw = next;
  }
  auto clean = [&](const cmat& m) {
    Eigen::SelfAdjointEigenSolver<cmat> se(hermitize(m));
    cmat c = se.eigenvectors() * se.eigenvalues().cwiseMax(0.0).asDiagonal() *
             se.eigenvectors().adjoint();
    return cmat(c / c.trace().real());
  };
  rho_m = clean(rho_m);
  double res_eig = trace_norm_hermitian(phi.apply_matrix(rho_m) - rho_m);
  cmat pw_clean = clean(pw);
  double res_pw = trace_norm_hermitian(phi.apply_matrix(pw_clean) - pw_clean);
  if (res_pw < res_eig) {
    rho_m = pw_clean;
    std::swap(res_eig, res_pw);
  }

  FixedPointReport rep{make_density(rho_m), res_eig,
                       cluster.size() == 1, static_cast<int>(cluster.size()), {}};
  if (rep.unique) {
    rep.fixed_points.push_back(rep.rho_fixed);
    return rep;
  }
  // degenerate cluster: extract state representatives from the eigenspace
  std::vector<cmat> herm_basis;
  for (int idx : cluster) {
    cmat b = undket(es.eigenvectors().col(idx), d, d);
    herm_basis.push_back(hermitize(b));
    herm_basis.push_back(hermitize(cplx(0, -1) * b));
  }
  Rng rng(seed);
  cmat combo = cmat::Zero(d, d);
  for (const cmat& b : herm_basis) combo += rng.normal() * b;
  std::vector<cmat> candidates;
  Eigen::SelfAdjointEigenSolver<cmat> ce(hermitize(combo));
  for (int i = 0; i < d; ++i)
    candidates.push_back(ce.eigenvectors().col(i) * ce.eigenvectors().col(i).adjoint());
  for (const cmat& b : herm_basis) {
    Eigen::SelfAdjointEigenSolver<cmat> be(b);
    cmat pos = be.eigenvectors() * be.eigenvalues().cwiseMax(0.0).asDiagonal() *
               be.eigenvectors().adjoint();
    candidates.push_back(pos);
  }
  candidates.push_back(pw_clean);
  candidates.push_back(rho_m);
  for (const cmat& cand : candidates) {
    auto st = detail::state_if_fixed(phi, cand, 1e-8);
    if (!st) continue;
    bool dup = false;
    for (const DensityMatrix& seen : rep.fixed_points)
      if (trace_norm_distance(*st, seen) < 1e-6) dup = true;
    if (!dup) rep.fixed_points.push_back(*st);
  }
  if (rep.fixed_points.empty()) rep.fixed_points.push_back(rep.rho_fixed);
  return rep;
}

// spectral gap of a bistochastic channel: 1 minus the second largest
// eigenvalue of the self-adjoint map adj(Phi) o Phi
inline double spectral_gap(const Channel& phi, double tol = kChannelTol) {
  if (!is_bistochastic(phi, tol))
    throw NotBistochastic("spectral_gap requires a bistochastic channel");
  cmat m = transfer_matrix(phi);
  Eigen::SelfAdjointEigenSolver<cmat> es(cmat(m.adjoint() * m), Eigen::EigenvaluesOnly);
  rvec ev = es.eigenvalues();  // ascending
  const Eigen::Index n = ev.size();
  if (ev.minCoeff() < -1e-9 || ev.maxCoeff() > 1.0 + 1e-9)
    throw Error("spectrum of adj(Phi) o Phi escaped [0, 1]: [" + std::to_string(ev.minCoeff()) +
                ", " + std::to_string(ev.maxCoeff()) + "]");
  double second = (n >= 2) ? ev(n - 2) : 0.0;
  return std::clamp(1.0 - second, 0.0, 1.0);
}

struct ContractivityReport {
  std::optional<double> k_exact;  // qubit path only
  double k_lower = 0.0;           // certified sampled lower bound
  cvec certificate_psi;
  cvec certificate_phi;
  std::string method;
  int samples = 0;
  int refine_steps = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double pair_contraction(const Channel& phi, const cmat& frame) {
  cmat diff = frame.col(0) * frame.col(0).adjoint() - frame.col(1) * frame.col(1).adjoint();
  return 0.5 * trace_norm_hermitian(phi.apply_matrix(diff));
}

inline cmat reorthonormalize(const cmat& frame) {
  Eigen::HouseholderQR<cmat> qr(frame);
  cmat q = qr.householderQ();
  return q.leftCols(2);
}

}  // namespace detail

// sampled lower bound on the contractivity modulus: max over orthonormal pure
// pairs of (1/2)||Phi(psi psi - phi phi)||_1, refined by a local hill climb;
// exact only on the qubit path
inline ContractivityReport modulus_estimate(const Channel& phi, int samples = 2000,
                                            int refine_steps = 1500,
                                            std::uint64_t seed = 12345) {
  if (phi.dim_in() != phi.dim_out())
    throw DimensionMismatch("modulus_estimate requires dim_in == dim_out");
  const int d = phi.dim_in();
  Rng rng(seed);
  cmat best_frame;
  double best = -1.0;
  for (int s = 0; s < std::max(samples, 1); ++s) {
    cmat u = rng.unitary(d);
    cmat frame = u.leftCols(2);
    double val = detail::pair_contraction(phi, frame);
    if (val > best) {
      best = val;
      best_frame = frame;
    }
  }
  // hill climb with a shrinking step
  double eps = 0.25;
  int proposals = 0;
  const int batch = 12;
  while (proposals < refine_steps && eps > 1e-10) {
    double batch_best = best;
    cmat batch_frame = best_frame;
    for (int b = 0; b < batch && proposals < refine_steps; ++b, ++proposals) {
      cmat g = rng.gaussian_matrix(d, 2);
      cmat cand = detail::reorthonormalize(best_frame + eps * g);
      double val = detail::pair_contraction(phi, cand);
      if (val > batch_best) {
        batch_best = val;
        batch_frame = cand;
      }
    }
    if (batch_best > best + 1e-15) {
      best = batch_best;
      best_frame = batch_frame;
    } else {
      eps *= 0.5;
    }
  }
  ContractivityReport rep;
  rep.k_lower = std::max(best, 0.0);
  rep.certificate_psi = best_frame.col(0);
  rep.certificate_phi = best_frame.col(1);
  rep.samples = samples;
  rep.refine_steps = refine_steps;
  rep.seed = seed;
  if (d == 2) {
    rep.k_exact = modulus_qubit(phi);
    rep.method = "qubit-exact+sampled";
  } else {
    rep.method = "sampled-lower-bound";
  }
  return rep;
}

struct StrictifyResult {
  Channel channel;
  double modulus_bound;      // 1 - 1/(2n)
  double cb_distance_bound;  // 1/n
};

// T_n = (1/2n) K_sigma + (1 - 1/2n) T: strictly contractive approximation of
// an arbitrary channel
inline StrictifyResult strictify(const Channel& phi, const DensityMatrix& sigma, int n) {
  if (n < 1) throw ParameterOutOfRange("strictify requires n >= 1");
  if (phi.dim_in() != phi.dim_out() || sigma.dim() != phi.dim_in())
    throw DimensionMismatch("strictify requires matching square dimensions");
  const double lambda = 1.0 / (2.0 * n);
  Channel k_sigma = degenerate(sigma);
  std::vector<cmat> ops;
  for (const cmat& v : k_sigma.kraus().ops) ops.push_back(std::sqrt(lambda) * v);
  for (const cmat& v : phi.kraus().ops) ops.push_back(std::sqrt(1.0 - lambda) * v);
  return {make_channel(std::move(ops)), 1.0 - lambda, 1.0 / n};
}

struct CommutantReport {
  int dimension = 0;
  bool irreducible = false;
  std::vector<cmat> basis;
  rvec singular_values;  // full spectrum of the constraint system, for audit
};

// commutant of the interaction algebra: null space of {XV - VX, XV* - V*X}
// by singular-value thresholding
inline CommutantReport commutant(const KrausSet& k, double rank_tol = 1e-8) {
  if (k.dim_in != k.dim_out) throw DimensionMismatch("commutant requires dim_in == dim_out");
  const int d = k.dim_in;
  const Eigen::Index n2 = static_cast<Eigen::Index>(d) * d;
  cmat sys(2 * static_cast<Eigen::Index>(k.ops.size()) * n2, n2);
  Eigen::Index row = 0;
  cmat eye = identity(d);
  for (const cmat& v : k.ops) {
    // dket(XV - VX) = (1 (x) V^T - V (x) 1) dket(X)
    sys.middleRows(row, n2) = kron(eye, v.transpose()) - kron(v, eye);
    row += n2;
    cmat va = v.adjoint();
    sys.middleRows(row, n2) = kron(eye, va.transpose()) - kron(va, eye);
    row += n2;
  }
  Eigen::JacobiSVD<cmat> svd(sys, Eigen::ComputeThinV);
  CommutantReport rep;
  rep.singular_values = svd.singularValues();
  for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i)
    if (rep.singular_values(i) < rank_tol) rep.basis.push_back(undket(svd.matrixV().col(i), d, d));
  rep.dimension = static_cast<int>(rep.basis.size());
  rep.irreducible = (rep.dimension == 1);
  return rep;
}

struct KnillLaflammeResult {
  bool pass = false;
  cmat c_matrix;
  double max_deviation = 0.0;
};

// Knill-Laflamme condition P V_a^dag V_b P = c_ab P on the given code basis
inline KnillLaflammeResult knill_laflamme_check(const KrausSet& k,
                                                const std::vector<cvec>& code_basis,
                                                double tol = 1e-7,
                                                double ortho_tol = 1e-8) {
  if (code_basis.empty()) throw CodeNotOrthonormal("code basis is empty");
  const int d = k.dim_in;
  const int kdim = static_cast<int>(code_basis.size());
  for (int i = 0; i < kdim; ++i) {
    if (code_basis[i].size() != d)
      throw DimensionMismatch(dims_msg("code vector dimension", code_basis[i].size(), d));
    for (int j = 0; j < kdim; ++j) {
      cplx ip = code_basis[i].adjoint() * code_basis[j];
      double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - cplx(target, 0)) > ortho_tol)
        throw CodeNotOrthonormal("code vectors " + std::to_string(i) + "," + std::to_string(j) +
                                 " have inner product deviating by " +
                                 std::to_string(std::abs(ip - cplx(target, 0))));
    }
  }
  cmat p = cmat::Zero(d, d);
  for (const cvec& v : code_basis) p += v * v.adjoint();
  const int m = static_cast<int>(k.ops.size());
  KnillLaflammeResult res;
  res.c_matrix = cmat::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      cmat mm = p * k.ops[a].adjoint() * k.ops[b] * p;
      cplx c = mm.trace() / static_cast<double>(kdim);
      res.c_matrix(a, b) = c;
      res.max_deviation = std::max(res.max_deviation, (mm - c * p).cwiseAbs().maxCoeff());
    }
  res.pass = res.max_deviation <= tol;
  return res;
}

}  // namespace qchan
