#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qchan/common.hpp"
#include "qchan/distance.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"

namespace qchan {

/// Kraus decomposition of a completely positive trace-preserving map.
struct KrausSet {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<cmat> ops;
};

inline double trace_preservation_defect(const KrausSet& k) {
  cmat sum = cmat::Zero(k.dim_in, k.dim_in);
  for (const cmat& v : k.ops) sum += v.adjoint() * v;
  return (sum - identity(k.dim_in)).cwiseAbs().maxCoeff();
}

inline KrausSet make_kraus_set(std::vector<cmat> ops, double tol = kChannelTol) {
  if (ops.empty()) throw ParameterOutOfRange("Kraus set must contain at least one operator");
  int dout = static_cast<int>(ops[0].rows());
  int din = static_cast<int>(ops[0].cols());
  for (const cmat& v : ops)
    if (v.rows() != dout || v.cols() != din)
      throw DimensionMismatch("Kraus operators must share a common shape");
  KrausSet k{din, dout, std::move(ops)};
  double defect = trace_preservation_defect(k);
  if (defect > tol)
    throw TraceConditionViolated("sum V^dag V deviates from identity by " + std::to_string(defect));
  return k;
}

/// Choi operator R = (Phi (x) id)(|I>><<I|) on out (x) in, left factor major.
/// The raw form satisfies Tr_out R = identity(dim_in); the normalized form is
/// the channel state R / dim_in.
struct ChoiMatrix {
  int dim_in = 0;
  int dim_out = 0;
  cmat m;
  bool normalized = false;
};

struct PauliTransferMatrix {
  Eigen::Matrix4d m;  // basis (1, sx, sy, sz); first row (1, 0, 0, 0)
  Eigen::Vector3d translation() const { return m.block<3, 1>(1, 0); }
  Eigen::Matrix3d tmat() const { return m.block<3, 3>(1, 1); }
};

struct KingRuskaiForm {
  cmat u;               // 2x2 unitary (left conjugation)
  cmat v;               // 2x2 unitary (right conjugation)
  Eigen::Vector3d t;    // translation of the normal form
  Eigen::Vector3d vvec; // signed scaling of the normal form
};

namespace detail {
struct ChannelCache {
  std::once_flag choi_once;
  std::optional<ChoiMatrix> choi;
  std::once_flag ptm_once;
  std::optional<PauliTransferMatrix> ptm;
};
}  // namespace detail

inline cmat apply_kraus(const KrausSet& k, const cmat& x) {
  if (x.rows() != k.dim_in || x.cols() != k.dim_in)
    throw DimensionMismatch(dims_msg("apply dimension", x.rows(), k.dim_in));
  cmat out = cmat::Zero(k.dim_out, k.dim_out);
  for (const cmat& v : k.ops) out += v * x * v.adjoint();
  return out;
}

// Heisenberg-picture action X -> sum V^dag X V
inline cmat apply_adjoint_kraus(const KrausSet& k, const cmat& x) {
  if (x.rows() != k.dim_out || x.cols() != k.dim_out)
    throw DimensionMismatch(dims_msg("adjoint apply dimension", x.rows(), k.dim_out));
  cmat out = cmat::Zero(k.dim_in, k.dim_in);
  for (const cmat& v : k.ops) out += v.adjoint() * x * v;
  return out;
}

inline ChoiMatrix kraus_to_choi(const KrausSet& k) {
  cmat r = cmat::Zero(static_cast<Eigen::Index>(k.dim_out) * k.dim_in,
                      static_cast<Eigen::Index>(k.dim_out) * k.dim_in);
  for (const cmat& v : k.ops) {
    cvec dv = dket(v);
    r += dv * dv.adjoint();
  }
  return ChoiMatrix{k.dim_in, k.dim_out, std::move(r), false};
}

inline double choi_min_eigenvalue(const ChoiMatrix& c) {
  return hermitian_eigenvalues(c.m).minCoeff();
}

inline double choi_trace_condition_defect(const ChoiMatrix& c) {
  cmat raw = c.normalized ? cmat(c.m * static_cast<double>(c.dim_in)) : c.m;
  cmat tr_out = partial_trace_matrix(raw, c.dim_out, c.dim_in, Subsys::B);
  return (tr_out - identity(c.dim_in)).cwiseAbs().maxCoeff();
}

// minimal Kraus set from the Choi eigenvectors (eigenvalues above 1e-10)
inline KrausSet choi_to_kraus(const ChoiMatrix& c, double tol = kChannelTol,
                              double rank_tol = 1e-10) {
  cmat raw = c.normalized ? cmat(c.m * static_cast<double>(c.dim_in)) : c.m;
  if (hermiticity_defect(raw) > tol)
    throw ChoiNotPSD("Choi matrix is not Hermitian; defect " + std::to_string(hermiticity_defect(raw)));
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(raw));
  double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -tol)
    throw ChoiNotPSD("Choi matrix not PSD: min eigenvalue " + std::to_string(min_ev));
  std::vector<cmat> ops;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > rank_tol)
      ops.push_back(std::sqrt(l) * undket(es.eigenvectors().col(i), c.dim_out, c.dim_in));
  }
  return make_kraus_set(std::move(ops), tol);
}

inline DensityMatrix apply_via_choi(const ChoiMatrix& c, const DensityMatrix& rho) {
  if (rho.dim() != c.dim_in)
    throw DimensionMismatch(dims_msg("apply_via_choi dimension", rho.dim(), c.dim_in));
  cmat raw = c.normalized ? cmat(c.m * static_cast<double>(c.dim_in)) : c.m;
  cmat lifted = kron(identity(c.dim_out), rho.matrix().transpose()) * raw;
  return make_density(partial_trace_matrix(lifted, c.dim_out, c.dim_in, Subsys::A));
}

/// Immutable channel; the Kraus set is canonical, the Choi and Pauli-transfer
/// forms are derived once on demand and shared across copies.
class Channel {
 public:
  explicit Channel(KrausSet k)
      : k_(std::make_shared<const KrausSet>(std::move(k))),
        cache_(std::make_shared<detail::ChannelCache>()) {}

  int dim_in() const { return k_->dim_in; }
  int dim_out() const { return k_->dim_out; }
  const KrausSet& kraus() const { return *k_; }

  const ChoiMatrix& choi() const {
    std::call_once(cache_->choi_once, [this] { cache_->choi = kraus_to_choi(*k_); });
    return *cache_->choi;
  }

  const PauliTransferMatrix& ptm() const;

  cmat apply_matrix(const cmat& x) const { return apply_kraus(*k_, x); }

 private:
  std::shared_ptr<const KrausSet> k_;
  std::shared_ptr<detail::ChannelCache> cache_;
};

inline Channel make_channel(std::vector<cmat> ops, double tol = kChannelTol) {
  return Channel(make_kraus_set(std::move(ops), tol));
}

inline DensityMatrix apply(const Channel& phi, const DensityMatrix& rho) {
  return make_density(phi.apply_matrix(rho.matrix()));
}

// Heisenberg-picture map of a channel, as a Kraus set of the adjoints;
// trace-preserving exactly when the channel is unital
inline KrausSet adjoint_channel(const Channel& phi) {
  std::vector<cmat> ops;
  ops.reserve(phi.kraus().ops.size());
  for (const cmat& v : phi.kraus().ops) ops.push_back(v.adjoint());
  return KrausSet{phi.dim_out(), phi.dim_in(), std::move(ops)};
}

inline bool is_bistochastic(const Channel& phi, double tol = kChannelTol) {
  if (phi.dim_in() != phi.dim_out()) return false;
  cmat img = phi.apply_matrix(identity(phi.dim_in()));
  return (img - identity(phi.dim_out())).cwiseAbs().maxCoeff() <= tol;
}

inline Channel compose(const Channel& phi, const Channel& psi) {
  if (psi.dim_out() != phi.dim_in())
    throw DimensionMismatch(dims_msg("compose dimension", psi.dim_out(), phi.dim_in()));
  std::vector<cmat> ops;
  ops.reserve(phi.kraus().ops.size() * psi.kraus().ops.size());
  for (const cmat& v : phi.kraus().ops)
    for (const cmat& w : psi.kraus().ops) ops.push_back(v * w);
  return make_channel(std::move(ops));
}

inline Channel tensor_channels(const Channel& phi, const Channel& psi) {
  std::vector<cmat> ops;
  ops.reserve(phi.kraus().ops.size() * psi.kraus().ops.size());
  for (const cmat& v : phi.kraus().ops)
    for (const cmat& w : psi.kraus().ops) ops.push_back(kron(v, w));
  return make_channel(std::move(ops));
}

// isometry V: dim_in -> dim_out * |K| with V psi = sum_a (V_a psi) (x) xi_a
inline cmat stinespring_isometry(const KrausSet& k) {
  const int m = static_cast<int>(k.ops.size());
  cmat v(static_cast<Eigen::Index>(k.dim_out) * m, k.dim_in);
  for (int i = 0; i < k.dim_out; ++i)
    for (int a = 0; a < m; ++a) v.row(static_cast<Eigen::Index>(i) * m + a) = k.ops[a].row(i);
  return v;
}

struct AncillaDilation {
  cmat unitary;   // on dim * env_dim
  cvec ancilla;   // environment unit vector Omega
  int env_dim = 0;
};

// unitary completion of the Stinespring isometry columns; requires dim_in == dim_out
inline AncillaDilation ancilla_dilation(const KrausSet& k) {
  if (k.dim_in != k.dim_out)
    throw DimensionMismatch("ancilla dilation needs dim_in == dim_out");
  const int d = k.dim_in;
  const int m = static_cast<int>(k.ops.size());
  const Eigen::Index n = static_cast<Eigen::Index>(d) * m;
  cmat v = stinespring_isometry(k);  // n x d
  // orthonormal completion of the isometry columns; unpivoted QR keeps the
  // first d columns of Q spanning col(V)
  cmat b(n, n + d);
  b.leftCols(d) = v;
  b.rightCols(n) = cmat::Identity(n, n);
  Eigen::HouseholderQR<cmat> qr(b);
  cmat q = qr.householderQ();
  cmat u = cmat::Zero(n, n);
  for (int mu = 0; mu < d; ++mu) u.col(static_cast<Eigen::Index>(mu) * m) = v.col(mu);
  int next = d;  // complement columns of q follow the d columns spanning col(V)
  for (int mu = 0; mu < d; ++mu)
    for (int e = 1; e < m; ++e) u.col(static_cast<Eigen::Index>(mu) * m + e) = q.col(next++);
  cvec omega = cvec::Zero(m);
  omega(0) = 1.0;
  return {std::move(u), std::move(omega), m};
}

inline DensityMatrix apply_via_dilation(const AncillaDilation& dil, const DensityMatrix& rho) {
  const int d = rho.dim();
  cmat omega = dil.ancilla * dil.ancilla.adjoint();
  cmat big = dil.unitary * kron(rho.matrix(), omega) * dil.unitary.adjoint();
  return make_density(partial_trace_matrix(big, d, dil.env_dim, Subsys::A));
}

inline PauliTransferMatrix pauli_transfer(const Channel& phi) {
  if (phi.dim_in() != 2 || phi.dim_out() != 2)
    throw DimensionMismatch("Pauli transfer matrix requires a qubit channel");
  PauliTransferMatrix out;
  for (int j = 0; j < 4; ++j) {
    cmat img = phi.apply_matrix(pauli(j));
    for (int i = 0; i < 4; ++i) out.m(i, j) = 0.5 * (pauli(i) * img).trace().real();
  }
  return out;
}

inline const PauliTransferMatrix& Channel::ptm() const {
  std::call_once(cache_->ptm_once, [this] { cache_->ptm = pauli_transfer(*this); });
  return *cache_->ptm;
}

// SU(2) element whose Bloch rotation matrix equals the given SO(3) matrix;
// the theta = pi branch recovers the axis from R + I
inline cmat su2_from_so3(const Eigen::Matrix3d& r, double tol = 1e-9) {
  double c = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  double theta = std::acos(c);
  Eigen::Vector3d axis;
  if (theta < tol) {
    return identity(2);
  } else if (M_PI - theta > 1e-6) {
    axis << r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1);
    axis /= 2.0 * std::sin(theta);
  } else {
    Eigen::Matrix3d s = 0.5 * (r + Eigen::Matrix3d::Identity());
    int imax = 0;
    s.diagonal().maxCoeff(&imax);
    axis = s.col(imax) / std::sqrt(s(imax, imax));
    axis.normalize();
  }
  cmat adots = cmat::Zero(2, 2);
  for (int i = 0; i < 3; ++i) adots += axis(i) * pauli(i + 1);
  return std::cos(theta / 2.0) * identity(2) - cplx(0, 1) * std::sin(theta / 2.0) * adots;
}

// normal-form action: w0 1 + sum w_i s_i -> w0 1 + sum (w0 t_i + v_i w_i) s_i
inline cmat apply_tv_normal_form(const Eigen::Vector3d& t, const Eigen::Vector3d& v,
                                 const cmat& x) {
  cplx w0 = 0.5 * x.trace();
  cmat out = w0 * identity(2);
  for (int i = 0; i < 3; ++i) {
    cplx wi = 0.5 * (pauli(i + 1) * x).trace();
    out += (w0 * t(i) + v(i) * wi) * pauli(i + 1);
  }
  return out;
}

inline KingRuskaiForm king_ruskai_decompose(const Channel& phi) {
  PauliTransferMatrix p = pauli_transfer(phi);
  Eigen::Matrix3d tt = p.tmat();
  Eigen::Vector3d u = p.translation();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(tt, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r1 = svd.matrixU();
  Eigen::Matrix3d r2 = svd.matrixV();
  Eigen::Vector3d d = svd.singularValues();
  // absorb reflections into the diagonal so both rotations land in SO(3)
  if (r1.determinant() < 0) {
    r1.col(2) *= -1.0;
    d(2) *= -1.0;
  }
  if (r2.determinant() < 0) {
    r2.col(2) *= -1.0;
    d(2) *= -1.0;
  }
  KingRuskaiForm form;
  form.u = su2_from_so3(r1);
  form.v = su2_from_so3(r2.transpose());
  form.t = r1.transpose() * u;
  form.vvec = d;
  return form;
}

inline cmat apply_king_ruskai(const KingRuskaiForm& f, const cmat& rho) {
  cmat inner = f.v * rho * f.v.adjoint();
  cmat mid = apply_tv_normal_form(f.t, f.vvec, inner);
  return f.u * mid * f.u.adjoint();
}

inline DensityMatrix choi_state(const Channel& phi) {
  return make_density(phi.choi().m / static_cast<double>(phi.dim_in()));
}

// Jozsa-Uhlmann fidelity between the normalized Choi states
inline double channel_fidelity(const Channel& s, const Channel& t) {
  if (s.dim_in() != t.dim_in() || s.dim_out() != t.dim_out())
    throw DimensionMismatch("channel_fidelity requires matching dimensions");
  return fidelity(choi_state(s), choi_state(t));
}

// fidelity-derived lower bound on the cb-distance ||S - T||_cb
inline double cb_lower_bound(const Channel& s, const Channel& t) {
  return 2.0 - 2.0 * std::sqrt(channel_fidelity(s, t));
}

// ancilla-assisted sampling estimate of ||S - T||_cb from below: max over
// sampled pure inputs on d (x) d of the output trace-norm distance; the
// maximally entangled input is always included
inline double cb_distance_estimate(const Channel& s, const Channel& t, int samples,
                                   std::uint64_t seed) {
  if (s.dim_in() != t.dim_in() || s.dim_out() != t.dim_out())
    throw DimensionMismatch("cb_distance_estimate requires matching dimensions");
  const int d = s.dim_in();
  Channel s_ext = tensor_channels(s, make_channel({identity(d)}));
  Channel t_ext = tensor_channels(t, make_channel({identity(d)}));
  cvec ment = dket(identity(d) / std::sqrt(static_cast<double>(d)));
  Rng rng(seed);
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    cvec psi = (i == 0) ? ment : rng.pure_state(d * d);
    cmat proj = psi * psi.adjoint();
    best = std::max(best,
                    trace_norm_hermitian(s_ext.apply_matrix(proj) - t_ext.apply_matrix(proj)));
  }
  return best;
}

struct FcbBounds {
  double lower;
  double upper;
};

// bounds on F(T, id) from a cb-distance value c: ((1 - c/2)^2, 1 - c^2/16)
inline FcbBounds fcb_bounds(double c) {
  return {(1.0 - 0.5 * c) * (1.0 - 0.5 * c), 1.0 - c * c / 16.0};
}

// ---------------------------------------------------------------------------
// named example channels
// ---------------------------------------------------------------------------

inline Channel identity_channel(int d) { return make_channel({identity(d)}); }

inline Channel unitary_channel(const cmat& u, double tol = kChannelTol) {
  if (u.rows() != u.cols()) throw DimensionMismatch("unitary must be square");
  return make_channel({u}, tol);
}

// degenerate channel K_sigma: every input maps to sigma
inline Channel degenerate(const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<cmat> es(sigma.matrix());
  const int d = sigma.dim();
  std::vector<cmat> ops;
  for (int k = 0; k < d; ++k) {
    double s = std::max(es.eigenvalues()(k), 0.0);
    if (s <= 0) continue;
    for (int j = 0; j < d; ++j) {
      cmat op = cmat::Zero(d, d);
      op.col(j) = std::sqrt(s) * es.eigenvectors().col(k);
      ops.push_back(std::move(op));
    }
  }
  return make_channel(std::move(ops));
}

// D_p(rho) = (1-p) rho + p 1/d
inline Channel depolarizing(int d, double p) {
  if (d < 2) throw ParameterOutOfRange("depolarizing dimension must be >= 2");
  if (p < 0.0 || p > 1.0)
    throw ParameterOutOfRange("depolarizing p = " + std::to_string(p) + " not in [0, 1]");
  std::vector<cmat> ops;
  if (p < 1.0) ops.push_back(std::sqrt(1.0 - p) * identity(d));
  if (p > 0.0)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) {
        cmat op = cmat::Zero(d, d);
        op(k, j) = std::sqrt(p / d);
        ops.push_back(std::move(op));
      }
  return make_channel(std::move(ops));
}

// Kraus operators sqrt(p) 1, sqrt((1-p)/2) sx, -i sqrt((1-p)/2) sy
inline Channel two_pauli(double p) {
  if (p < 0.0 || p > 1.0)
    throw ParameterOutOfRange("two_pauli p = " + std::to_string(p) + " not in [0, 1]");
  std::vector<cmat> ops;
  ops.push_back(std::sqrt(p) * identity(2));
  ops.push_back(std::sqrt((1.0 - p) / 2.0) * pauli(1));
  ops.push_back(cplx(0, -1) * std::sqrt((1.0 - p) / 2.0) * pauli(2));
  return make_channel(std::move(ops));
}

inline Channel amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw ParameterOutOfRange("amplitude_damping gamma = " + std::to_string(gamma) + " not in [0, 1]");
  cmat v1(2, 2), v2(2, 2);
  v1 << 1, 0, 0, std::sqrt(1.0 - gamma);
  v2 << 0, std::sqrt(gamma), 0, 0;
  return make_channel({v1, v2});
}

// qubit thermalization toward the Gibbs state of H = E sz at inverse temperature beta
inline Channel thermalizing(double beta, double e, double gamma) {
  if (beta < 0.0) throw ParameterOutOfRange("thermalizing beta must be >= 0");
  if (e <= 0.0) throw ParameterOutOfRange("thermalizing E must be > 0");
  if (gamma < 0.0 || gamma > 1.0)
    throw ParameterOutOfRange("thermalizing gamma = " + std::to_string(gamma) + " not in [0, 1]");
  double p = std::exp(-beta * e) / (2.0 * std::cosh(beta * e));
  cmat v1(2, 2), v2(2, 2), v3(2, 2), v4(2, 2);
  double root = std::sqrt(1.0 - gamma);
  v1 << 1, 0, 0, root;
  v2 << 0, std::sqrt(gamma), 0, 0;
  v3 << root, 0, 0, 1;
  v4 << 0, 0, std::sqrt(gamma), 0;
  return make_channel({std::sqrt(p) * v1, std::sqrt(p) * v2,
                       std::sqrt(1.0 - p) * v3, std::sqrt(1.0 - p) * v4});
}

// Kraus operators sqrt(lambda) 1 and sqrt(1-lambda) sz; two fixed points
inline Channel phase_damping(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw ParameterOutOfRange("phase_damping lambda = " + std::to_string(lambda) + " not in [0, 1]");
  return make_channel({std::sqrt(lambda) * identity(2), std::sqrt(1.0 - lambda) * pauli(3)});
}

inline DensityMatrix qubit_gibbs_state(double beta, double e) {
  double z = 2.0 * std::cosh(beta * e);
  cmat m(2, 2);
  m << std::exp(-beta * e) / z, 0, 0, std::exp(beta * e) / z;
  return make_density(m);
}

}  // namespace qchan
