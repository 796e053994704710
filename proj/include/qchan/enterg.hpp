#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/common.hpp"
#include "qchan/contractivity.hpp"
#include "qchan/distance.hpp"
#include "qchan/qstate.hpp"

namespace qchan {

struct EntropyEnergyParams {
  double beta = 0.0;    // inverse temperature
  double e_max = 0.0;   // energy budget
  double epsilon = 1.0; // effective-pure-state weight
  int n_qubits = 1;
  double k = 0.0;       // contractivity modulus of the single-site noise
  double delta = 1.0;   // weak-noise mixing weight
};

inline void validate(const EntropyEnergyParams& p) {
  if (p.beta < 0.0) throw ParameterOutOfRange("beta must be >= 0");
  if (p.e_max < 0.0) throw ParameterOutOfRange("E_max must be >= 0");
  if (p.epsilon <= 0.0 || p.epsilon > 1.0) throw ParameterOutOfRange("epsilon must be in (0, 1]");
  if (p.n_qubits < 1) throw ParameterOutOfRange("N must be >= 1");
  if (p.k < 0.0 || p.k >= 1.0) throw ParameterOutOfRange("k must be in [0, 1)");
  if (p.delta <= 0.0 || p.delta > 1.0) throw ParameterOutOfRange("delta must be in (0, 1]");
}

struct GibbsSystem {
  cmat hamiltonian;
  double beta = 0.0;
  DensityMatrix gibbs;
  double partition_function = 0.0;  // Z_beta
  double phi_beta = 0.0;            // -(1/beta) ln Z_beta
};

// canonical state exp(-beta H)/Z via eigendecomposition; the spectrum is
// shifted before exponentiating to avoid overflow
inline GibbsSystem gibbs_state(const cmat& h, double beta) {
  if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian must be square");
  double defect = hermiticity_defect(h);
  if (defect > kValidationTol)
    throw NotHermitian("Hamiltonian Hermiticity defect " + std::to_string(defect));
  if (beta < 0.0) throw ParameterOutOfRange("beta must be >= 0");
  Eigen::SelfAdjointEigenSolver<cmat> es(hermitize(h));
  const rvec& e = es.eigenvalues();
  double emin = e.minCoeff();
  rvec w(e.size());
  for (int i = 0; i < e.size(); ++i) w(i) = std::exp(-beta * (e(i) - emin));
  double zshift = w.sum();
  cmat rho = es.eigenvectors() * (w / zshift).asDiagonal() * es.eigenvectors().adjoint();
  double log_z = std::log(zshift) - beta * emin;
  GibbsSystem g{hermitize(h), beta, make_density(rho), std::exp(log_z),
                beta > 0.0 ? -log_z / beta : -std::numeric_limits<double>::infinity()};
  return g;
}

// free-energy functional F_beta(rho) = tr(rho H) - S(rho)/beta
inline double free_energy(const DensityMatrix& rho, const GibbsSystem& g) {
  if (rho.dim() != g.hamiltonian.rows())
    throw DimensionMismatch(dims_msg("free_energy dimension", rho.dim(), g.hamiltonian.rows()));
  if (g.beta <= 0.0) throw ParameterOutOfRange("free_energy requires beta > 0");
  double energy = (rho.matrix() * g.hamiltonian).trace().real();
  return energy - von_neumann_entropy(rho) / g.beta;
}

struct FannesBound {
  bool applicable = false;  // requires ||rho - sigma||_1 < 1/3
  double distance = 0.0;
  double bound = 0.0;
  double entropy_difference = 0.0;
  bool satisfied = false;
};

// |S(rho) - S(sigma)| <= ln(d) D - D ln D for D = ||rho - sigma||_1 < 1/3
inline FannesBound fannes_bound(const DensityMatrix& rho, const DensityMatrix& sigma) {
  FannesBound fb;
  fb.distance = trace_norm_distance(rho, sigma);
  fb.entropy_difference = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  if (fb.distance >= 1.0 / 3.0) return fb;
  fb.applicable = true;
  double eta = (fb.distance > 0.0) ? fb.distance * std::log(fb.distance) : 0.0;
  fb.bound = std::log(static_cast<double>(rho.dim())) * fb.distance - eta;
  fb.satisfied = fb.entropy_difference <= fb.bound + 1e-9;
  return fb;
}

struct EntropyGainBound {
  double gap = 0.0;    // spectral gap of the channel itself
  double gap_n = 0.0;  // gap bound for n applications, 1 - (1-gap)^n
  double bound = 0.0;  // (gap_n / 2) ||rho - 1/d||_2^2
  double actual = 0.0; // S(Phi^n(rho)) - S(rho)
  bool satisfied = false;
};

// entropy production of an ergodic bistochastic channel over n steps
inline EntropyGainBound entropy_gain_bound(const Channel& phi, const DensityMatrix& rho, int n) {
  if (n < 1) throw ParameterOutOfRange("entropy_gain_bound requires n >= 1");
  if (!is_bistochastic(phi)) throw NotBistochastic("entropy_gain_bound requires a bistochastic channel");
  if (phi.dim_in() != rho.dim())
    throw DimensionMismatch(dims_msg("entropy_gain_bound dimension", rho.dim(), phi.dim_in()));
  FixedPointReport fp = fixed_point(phi);
  if (!fp.unique) throw NotErgodic("channel has a degenerate fixed-point space");
  EntropyGainBound out;
  out.gap = spectral_gap(phi);
  if (out.gap <= 0.0) throw NotErgodic("channel has no spectral gap");
  out.gap_n = 1.0 - std::pow(1.0 - out.gap, n);
  const int d = rho.dim();
  cmat dev = rho.matrix() - identity(d) / static_cast<double>(d);
  out.bound = 0.5 * out.gap_n * hs_norm(dev) * hs_norm(dev);
  DensityMatrix cur = rho;
  for (int t = 0; t < n; ++t) cur = apply(phi, cur);
  out.actual = von_neumann_entropy(cur) - von_neumann_entropy(rho);
  out.satisfied = out.actual >= out.bound - 1e-8;
  return out;
}

// maximum step count before entropy gain beats the energy budget:
// floor(log(1 - 2 beta E_max / [eps^2 (1 - 2^-N)]) / (2 log k))
inline long n_max_entropy(const EntropyEnergyParams& p) {
  validate(p);
  if (p.k <= 0.0) throw ParameterOutOfRange("n_max_entropy requires k in (0, 1)");
  double budget = p.beta * p.e_max;
  double scale = p.epsilon * p.epsilon * (1.0 - std::pow(2.0, -p.n_qubits));
  if (budget >= scale / 2.0)
    throw ConditionViolated("beta E_max = " + std::to_string(budget) +
                            " is not below eps^2 (1 - 2^-N)/2 = " + std::to_string(scale / 2.0) +
                            "; the entropy-energy argument does not apply");
  double raw = std::log(1.0 - 2.0 * budget / scale) / (2.0 * std::log(p.k));
  return static_cast<long>(std::floor(raw + 1e-12));
}

// weak-noise variant: 2 beta E_max / (delta eps^2 (1 - k^2))
inline double n_max_weak_noise(const EntropyEnergyParams& p) {
  validate(p);
  double denom = p.delta * p.epsilon * p.epsilon * (1.0 - p.k * p.k);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * p.beta * p.e_max / denom;
}

struct MixtureEntropyBound {
  double kappa = 0.0;
  double bound = 0.0;   // mean entropy + ln n - 2 sqrt(kappa)
  double actual = 0.0;  // S(mean)
  bool satisfied = false;
};

// entropy of a uniform mixture of almost-disjoint commuting states
inline MixtureEntropyBound mixture_entropy_bound(const std::vector<DensityMatrix>& rhos,
                                                 double kappa, double commute_tol = 1e-8) {
  if (rhos.size() < 2) throw ParameterOutOfRange("mixture needs at least two states");
  if (kappa < 0.0) throw ParameterOutOfRange("kappa must be >= 0");
  const int n = static_cast<int>(rhos.size());
  const int d = rhos[0].dim();
  for (const DensityMatrix& r : rhos)
    if (r.dim() != d) throw DimensionMismatch("mixture states must share a dimension");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      cmat comm = rhos[i].matrix() * rhos[j].matrix() - rhos[j].matrix() * rhos[i].matrix();
      if (comm.cwiseAbs().maxCoeff() > commute_tol)
        throw NotCommuting("states " + std::to_string(i) + "," + std::to_string(j) +
                           " fail to commute by " + std::to_string(comm.cwiseAbs().maxCoeff()));
    }
  for (int i = 0; i < n; ++i) {
    double overlap = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) overlap += (rhos[j].matrix() * rhos[i].matrix()).trace().real();
    if (overlap > kappa + 1e-9)
      throw OverlapExceedsKappa("state " + std::to_string(i) + " has overlap " +
                                std::to_string(overlap) + " above kappa = " + std::to_string(kappa));
  }
  cmat mean = cmat::Zero(d, d);
  for (const DensityMatrix& r : rhos) mean += r.matrix();
  mean /= static_cast<double>(n);
  MixtureEntropyBound out;
  out.kappa = kappa;
  double mean_entropy = 0.0;
  for (const DensityMatrix& r : rhos) mean_entropy += von_neumann_entropy(r);
  mean_entropy /= n;
  out.bound = mean_entropy + std::log(static_cast<double>(n)) - 2.0 * std::sqrt(kappa);
  out.actual = von_neumann_entropy(make_density(mean));
  out.satisfied = out.actual >= out.bound - 1e-8;
  return out;
}

// rho_alpha = (1 - alpha) 1/d + alpha |psi><psi|
inline DensityMatrix effective_pure_state(const PureState& psi, double alpha) {
  if (alpha <= 0.0 || alpha > 1.0) throw ParameterOutOfRange("alpha must be in (0, 1]");
  const int d = psi.dim();
  cmat m = (1.0 - alpha) * identity(d) / static_cast<double>(d) +
           alpha * psi.amplitudes * psi.amplitudes.adjoint();
  return make_density(m);
}

struct EpsCheck {
  double lhs = 0.0;  // tr[Phi(rho_alpha) X]
  double rhs = 0.0;  // alpha <psi| adj(Phi)(X) |psi>
  bool holds = false;
};

// effective-pure-state identity for bistochastic noise and traceless observables
inline EpsCheck verify_eps(const PureState& psi, double alpha, const Channel& phi, const cmat& x,
                           double tol = 1e-9) {
  if (!is_bistochastic(phi)) throw NotBistochastic("verify_eps requires a bistochastic channel");
  if (std::abs(x.trace()) > tol) throw NotTraceless("observable trace " + std::to_string(std::abs(x.trace())));
  if (x.rows() != psi.dim()) throw DimensionMismatch("observable dimension mismatch");
  DensityMatrix rho = effective_pure_state(psi, alpha);
  EpsCheck c;
  c.lhs = (phi.apply_matrix(rho.matrix()) * x).trace().real();
  cmat heis = apply_adjoint_kraus(phi.kraus(), x);
  c.rhs = alpha * (psi.amplitudes.adjoint() * heis * psi.amplitudes)(0).real();
  c.holds = std::abs(c.lhs - c.rhs) <= tol;
  return c;
}

// effective-pure-state weight of an N-spin room-temperature ensemble:
// alpha = N (hbar Omega beta / 2) / 2^N with Omega = 2 pi f
inline double boltzmann_alpha(int n_spins, double frequency_hz, double temperature_k) {
  if (n_spins < 1 || frequency_hz <= 0.0 || temperature_k <= 0.0)
    throw ParameterOutOfRange("boltzmann_alpha requires positive arguments");
  const double hbar = 1.054571817e-34;
  const double kb = 1.380649e-23;
  double factor = hbar * 2.0 * M_PI * frequency_hz / (2.0 * kb * temperature_k);
  return n_spins * factor / std::pow(2.0, n_spins);
}

struct SpatialFreeEnergy {
  double beta_delta_f_bound = 0.0;  // beta E_c - ln n + 2
  bool negative = false;
  long n_crit = 0;  // ceil(exp(beta E_c + 2))
};

// free-energy increment of depolarizing one of n cluster sets, and the
// smallest n that makes it negative
inline SpatialFreeEnergy spatial_free_energy_check(int n, double beta_e_c) {
  if (n < 2) throw ParameterOutOfRange("spatial_free_energy_check requires n >= 2");
  SpatialFreeEnergy out;
  out.beta_delta_f_bound = beta_e_c - std::log(static_cast<double>(n)) + 2.0;
  out.negative = out.beta_delta_f_bound < 0.0;
  out.n_crit = static_cast<long>(std::ceil(std::exp(beta_e_c + 2.0)));
  return out;
}

}  // namespace qchan
