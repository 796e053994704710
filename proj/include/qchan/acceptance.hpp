#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/common.hpp"
#include "qchan/contractivity.hpp"
#include "qchan/distance.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/enterg.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"
#include "qchan/toric.hpp"

namespace qchan::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;
};

namespace detail {

struct Checker {
  bool ok = true;
  std::ostringstream msg;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (msg.tellp() > 0) msg << "; ";
      msg << what;
    }
  }
};

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// random qubit Pauli channel conjugated by unitaries: bistochastic, with the
// modulus read off the exact qubit path
inline Channel random_bistochastic_qubit(Rng& rng, double max_k = 0.999) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    rvec p = rng.probabilities(4);
    std::vector<cmat> ops;
    for (int i = 0; i < 4; ++i) ops.push_back(std::sqrt(p(i)) * pauli(i));
    cmat u = rng.unitary(2), v = rng.unitary(2);
    for (cmat& op : ops) op = u * op * v;
    Channel c = make_channel(std::move(ops));
    if (modulus_qubit(c) <= max_k) return c;
  }
  throw Error("failed to sample a strictly contractive bistochastic qubit channel");
}

inline Channel random_channel(Rng& rng, int d, int m) {
  return make_channel(rng.kraus_operators(d, d, m));
}

inline DensityMatrix random_state(Rng& rng, int d, int rank = 0) {
  return make_density(rng.density(d, rank));
}

}  // namespace detail

// --- criterion 1: threshold table ------------------------------------------

inline CriterionResult criterion_threshold_table() {
  detail::Checker c;
  auto t0 = std::chrono::steady_clock::now();
  ThresholdTable t = threshold_table();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  // printed table; the first log-row entry is quoted as ~1 and the tolerance
  // is one unit in the last printed digit of each cell
  struct Cell { double value; double unit; };
  const std::vector<std::vector<Cell>> paper = {
      {{1.0, 1e-2}, {0.999, 1e-3}, {0.999, 1e-3}, {0.998, 1e-3}, {0.998, 1e-3}},
      {{0.863, 1e-3}, {0.630, 1e-3}, {0.485, 1e-3}, {0.392, 1e-3}, {0.328, 1e-3}},
      {{4.96e-3, 1e-5}, {6.22e-4, 1e-6}, {1.84e-4, 1e-6}, {7.78e-5, 1e-7}, {3.98e-5, 1e-7}},
      {{0.038, 1e-3}, {3.80e-5, 1e-7}, {3.71e-8, 1e-10}, {3.62e-11, 1e-13}, {3.53e-14, 1e-16}},
  };
  for (std::size_t r = 0; r < paper.size(); ++r)
    for (std::size_t col = 0; col < paper[r].size(); ++col) {
      double got = t.cells[r][col];
      const Cell& want = paper[r][col];
      c.require(std::abs(got - want.value) <= 1.000001 * want.unit,
                "cell [" + t.row_names[r] + ", n=" + std::to_string(t.n_values[col]) +
                    "] = " + detail::fmt(got) + " vs " + detail::fmt(want.value));
    }
  c.require(std::abs(t.cells[1][0] - 0.863) <= 1e-3, "anchor D=n, n=20");
  c.require(std::abs(t.cells[2][0] - 4.96e-3) <= 1e-5, "anchor D=n^3, n=20");
  c.require(std::abs(t.cells[3][4] - 3.53e-14) <= 1e-16, "anchor D=sqrt(2^n), n=100");
  c.require(ms < 1000, "runtime " + std::to_string(ms) + " ms exceeds 1 s");
  return {1, "threshold table (20 cells, 3 sig figs)", c.ok, c.msg.str()};
}

// --- criterion 2: NMR case study --------------------------------------------

inline CriterionResult criterion_nmr() {
  detail::Checker c;
  NmrCaseStudy low = nmr_case_study(1e23, 0.045, 2.8);
  NmrCaseStudy high = nmr_case_study(1e23, 0.045, 45.4);
  c.require(std::abs(low.epsilon_order - 1e-12) < 1e-24,
            "epsilon order " + detail::fmt(low.epsilon_order));
  c.require(low.epsilon_exact > 1e-12 && low.epsilon_exact < 2e-12,
            "epsilon exact " + detail::fmt(low.epsilon_exact));
  c.require(low.n_max >= 3525 * 0.99 && low.n_max <= 3525 * 1.01,
            "n_max(T_th=2.8) = " + detail::fmt(low.n_max));
  c.require(high.n_max >= 57152 * 0.99 && high.n_max <= 57152 * 1.01,
            "n_max(T_th=45.4) = " + detail::fmt(high.n_max));
  return {2, "NMR case study (3525..57152 operations)", c.ok, c.msg.str()};
}

// --- criterion 3: worked register numbers -----------------------------------

inline CriterionResult criterion_worked_numbers() {
  detail::Checker c;
  Channel noise = depolarizing(2, 0.1);  // k = 0.9
  cvec e0 = cvec::Zero(2), e1 = cvec::Zero(2);
  e0(0) = 1;
  e1(1) = 1;
  OrbitRecord a = simulate_register(pure_density(e0), noise, 10);
  OrbitRecord b = simulate_register(pure_density(e1), noise, 10);
  double initial = trace_norm_distance(a.states[0], b.states[0]);
  double final_dist = trace_norm_distance(a.states[10], b.states[10]);
  c.require(std::abs(initial - 2.0) < 1e-12, "initial distance " + detail::fmt(initial));
  c.require(final_dist <= 0.697 + 1e-3, "distance at n=10 is " + detail::fmt(final_dist));
  DetectionResult det = optimal_binary_detection(a.states[10], b.states[10], 0.5);
  c.require(det.p_correct <= 0.674 + 1e-3, "P_c = " + detail::fmt(det.p_correct));
  NMaxResult n0 = n_max_operations(0.9, 0.01);
  c.require(n0.steps == 51, "N0 = " + std::to_string(n0.steps));
  c.require(n0.paper_discrepancy, "discrepancy warning missing");
  return {3, "worked numbers: distance 0.697, P_c 0.674, N0 = 51 + warning", c.ok, c.msg.str()};
}

// --- criterion 4: example-channel moduli ------------------------------------

inline CriterionResult criterion_moduli() {
  detail::Checker c;
  auto check_family = [&](const std::string& name, int idx, int count, auto make,
                          auto expected) {
    for (int i = 0; i < count; ++i) {
      double x = 0.05 + 0.90 * i / (count - 1.0);
      if (name == "two_pauli") x = 0.34 + 0.63 * i / (count - 1.0);  // max(p, 2p-1) branch
      Channel phi = make(x);
      double exact = modulus_qubit(phi);
      c.require(std::abs(exact - expected(x)) <= 1e-9,
                name + "(" + detail::fmt(x) + ") exact " + detail::fmt(exact) + " vs formula " +
                    detail::fmt(expected(x)));
      ContractivityReport est =
          modulus_estimate(phi, 2000, 1500, 900 + 131 * idx + i);
      c.require(std::abs(est.k_lower - exact) <= 1e-5,
                name + "(" + detail::fmt(x) + ") sampled " + detail::fmt(est.k_lower) +
                    " vs exact " + detail::fmt(exact));
    }
  };
  check_family("depolarizing", 0, 10, [](double p) { return depolarizing(2, p); },
               [](double p) { return 1.0 - p; });
  check_family("two_pauli", 1, 10, [](double p) { return two_pauli(p); },
               [](double p) { return std::max(p, 2.0 * p - 1.0); });
  check_family("amplitude_damping", 2, 10, [](double g) { return amplitude_damping(g); },
               [](double g) { return std::sqrt(1.0 - g); });
  check_family("thermalizing", 3, 10, [](double g) { return thermalizing(0.7, 1.3, g); },
               [](double g) { return std::sqrt(1.0 - g); });
  return {4, "example-channel moduli, exact and sampled", c.ok, c.msg.str()};
}

// --- criterion 5: fixed points ----------------------------------------------

inline CriterionResult criterion_fixed_points() {
  detail::Checker c;
  {
    FixedPointReport fp = fixed_point(depolarizing(3, 0.4));
    c.require(fp.unique, "depolarizing fixed point not unique");
    c.require(trace_norm_distance(fp.rho_fixed, maximally_mixed(3)) <= 1e-8,
              "depolarizing fixed point misses 1/d");
  }
  {
    FixedPointReport fp = fixed_point(amplitude_damping(0.3));
    cvec psi_plus = cvec::Zero(2);
    psi_plus(0) = 1;  // sz eigenvector with eigenvalue +1
    c.require(fp.unique, "amplitude damping fixed point not unique");
    c.require(trace_norm_distance(fp.rho_fixed, pure_density(psi_plus)) <= 1e-8,
              "amplitude damping fixed point misses |psi+><psi+|");
  }
  {
    double beta = 0.8, e = 1.1;
    FixedPointReport fp = fixed_point(thermalizing(beta, e, 0.35));
    c.require(fp.unique, "thermalizing fixed point not unique");
    c.require(trace_norm_distance(fp.rho_fixed, qubit_gibbs_state(beta, e)) <= 1e-8,
              "thermalizing fixed point misses rho_beta");
  }
  {
    FixedPointReport fp = fixed_point(phase_damping(0.75));
    c.require(!fp.unique, "phase damping reported unique");
    cvec e0 = cvec::Zero(2), e1 = cvec::Zero(2);
    e0(0) = 1;
    e1(1) = 1;
    bool found0 = false, found1 = false;
    for (const DensityMatrix& s : fp.fixed_points) {
      if (trace_norm_distance(s, pure_density(e0)) <= 1e-8) found0 = true;
      if (trace_norm_distance(s, pure_density(e1)) <= 1e-8) found1 = true;
    }
    c.require(found0 && found1, "phase damping fixed pair not identified (" +
                                    std::to_string(fp.fixed_points.size()) + " found)");
  }
  return {5, "fixed points of the example channels", c.ok, c.msg.str()};
}

// --- criterion 6: spectral-gap law ------------------------------------------

inline CriterionResult criterion_spectral_gap() {
  detail::Checker c;
  Rng rng(606);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    Channel phi = detail::random_bistochastic_qubit(rng);
    double k = modulus_qubit(phi);
    double gamma = spectral_gap(phi);
    worst = std::max(worst, std::abs(gamma - (1.0 - k * k)));
  }
  c.require(worst <= 1e-9, "max |gamma - (1 - k^2)| = " + detail::fmt(worst));
  return {6, "spectral gap gamma = 1 - k^2 on 50 random channels", c.ok, c.msg.str()};
}

// --- criterion 7: property suites -------------------------------------------

inline CriterionResult criterion_property_suites() {
  detail::Checker c;
  // (a) Ruskai contraction and fidelity monotonicity
  {
    Rng rng(7001);
    double worst_tn = 0.0, worst_fid = 0.0;
    for (int i = 0; i < 500; ++i) {
      int d = 2 + static_cast<int>(rng.integer() % 3);
      Channel phi = detail::random_channel(rng, d, 2 + static_cast<int>(rng.integer() % 2));
      DensityMatrix rho = detail::random_state(rng, d), sigma = detail::random_state(rng, d);
      worst_tn = std::max(worst_tn, trace_norm_distance(apply(phi, rho), apply(phi, sigma)) -
                                        trace_norm_distance(rho, sigma));
      worst_fid = std::max(worst_fid,
                           fidelity(rho, sigma) - fidelity(apply(phi, rho), apply(phi, sigma)));
    }
    c.require(worst_tn <= 1e-9, "(a) contraction slack " + detail::fmt(worst_tn));
    c.require(worst_fid <= 1e-9, "(a) fidelity monotonicity slack " + detail::fmt(worst_fid));
  }
  // (b) Fuchs-van de Graaf sandwich
  {
    Rng rng(7002);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      int d = 2 + static_cast<int>(rng.integer() % 3);
      DensityMatrix rho = detail::random_state(rng, d), sigma = detail::random_state(rng, d);
      double dist = trace_norm_distance(rho, sigma);
      FvdgBounds b = fvdg_bounds(rho, sigma);
      worst = std::max(worst, std::max(b.lower - dist, dist - b.upper));
    }
    c.require(worst <= 1e-9, "(b) sandwich slack " + detail::fmt(worst));
  }
  // (c) Choi / Kraus / dilation three-way agreement
  {
    Rng rng(7003);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      int d = 2 + static_cast<int>(rng.integer() % 3);
      Channel phi = detail::random_channel(rng, d, 2 + static_cast<int>(rng.integer() % 3));
      AncillaDilation dil = ancilla_dilation(phi.kraus());
      DensityMatrix rho = detail::random_state(rng, d);
      DensityMatrix via_kraus = apply(phi, rho);
      DensityMatrix via_choi = apply_via_choi(phi.choi(), rho);
      DensityMatrix via_dil = apply_via_dilation(dil, rho);
      worst = std::max(worst,
                       (via_kraus.matrix() - via_choi.matrix()).cwiseAbs().maxCoeff());
      worst = std::max(worst,
                       (via_kraus.matrix() - via_dil.matrix()).cwiseAbs().maxCoeff());
    }
    c.require(worst <= 1e-9, "(c) three-way disagreement " + detail::fmt(worst));
  }
  // (d) channel-fidelity axioms
  {
    Rng rng(7004);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      Channel s1 = detail::random_channel(rng, 2, 2), t1 = detail::random_channel(rng, 2, 2);
      Channel s2 = detail::random_channel(rng, 2, 2), t2 = detail::random_channel(rng, 2, 2);
      worst = std::max(worst, std::abs(channel_fidelity(s1, t1) - channel_fidelity(t1, s1)));
      double product = channel_fidelity(s1, t1) * channel_fidelity(s2, t2);
      double joint = channel_fidelity(tensor_channels(s1, s2), tensor_channels(t1, t2));
      worst = std::max(worst, std::abs(joint - product));
      Channel u = unitary_channel(rng.unitary(2));
      worst = std::max(worst, std::abs(channel_fidelity(compose(u, s1), compose(u, t1)) -
                                       channel_fidelity(s1, t1)));
      worst = std::max(worst, std::abs(channel_fidelity(compose(s1, u), compose(t1, u)) -
                                       channel_fidelity(s1, t1)));
    }
    c.require(worst <= 1e-8, "(d) channel-fidelity axiom deviation " + detail::fmt(worst));
  }
  // (e) Fannes and Streater entropy bounds
  {
    Rng rng(7005);
    double worst_streater = 0.0;
    int fannes_checked = 0;
    for (int i = 0; i < 1000; ++i) {
      int d = 2 + static_cast<int>(rng.integer() % 3);
      DensityMatrix rho = detail::random_state(rng, d);
      cmat pert = rho.matrix() + 0.02 * hermitize(rng.gaussian_matrix(d, d));
      Eigen::SelfAdjointEigenSolver<cmat> es(pert);
      cmat pos = es.eigenvectors() * es.eigenvalues().cwiseMax(1e-12).asDiagonal() *
                 es.eigenvectors().adjoint();
      DensityMatrix sigma = make_density(pos / pos.trace().real());
      FannesBound fb = fannes_bound(rho, sigma);
      if (fb.applicable) {
        ++fannes_checked;
        c.require(fb.satisfied, "(e) Fannes violated: |dS| = " + detail::fmt(fb.entropy_difference) +
                                    " > bound " + detail::fmt(fb.bound));
      }
      DensityMatrix tau = detail::random_state(rng, d);
      double lhs = relative_entropy(rho, tau);
      if (std::isfinite(lhs)) {
        double rhs = 0.5 * hs_distance(rho, tau) * hs_distance(rho, tau);
        worst_streater = std::max(worst_streater, rhs - lhs);
      }
    }
    c.require(fannes_checked >= 900, "(e) too few applicable Fannes pairs: " +
                                         std::to_string(fannes_checked));
    c.require(worst_streater <= 1e-9, "(e) Streater slack " + detail::fmt(worst_streater));
  }
  // (f) Knill-Laflamme: repetition code passes, random codes against
  //     strictly contractive two-qubit noise all fail
  {
    // 3-qubit repetition code vs single bit flips
    double q = 0.3;
    cmat eye8 = identity(8);
    auto sx_on = [&](int which) {
      cmat op = cmat::Ones(1, 1);
      for (int i = 0; i < 3; ++i) op = kron(op, i == which ? pauli(1) : identity(2));
      return op;
    };
    std::vector<cmat> ops = {std::sqrt(1.0 - q) * eye8, std::sqrt(q / 3.0) * sx_on(0),
                             std::sqrt(q / 3.0) * sx_on(1), std::sqrt(q / 3.0) * sx_on(2)};
    KrausSet flips = make_kraus_set(ops);
    cvec v000 = cvec::Zero(8), v111 = cvec::Zero(8);
    v000(0) = 1;
    v111(7) = 1;
    KnillLaflammeResult rep = knill_laflamme_check(flips, {v000, v111});
    c.require(rep.pass, "(f) repetition code rejected, deviation " + detail::fmt(rep.max_deviation));

    Rng rng(7006);
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
      double p = 0.05 + 0.90 * rng.uniform();
      Channel noise = tensor_channels(depolarizing(2, p), depolarizing(2, p));
      cmat u = rng.unitary(4);
      KnillLaflammeResult r = knill_laflamme_check(noise.kraus(), {u.col(0), u.col(1)});
      if (!r.pass) ++failures;
    }
    c.require(failures == 200, "(f) " + std::to_string(200 - failures) +
                                   " random codes passed against D_p (x) D_p");
  }
  return {7, "property suites (a)-(f)", c.ok, c.msg.str()};
}

// --- criterion 8: entropy-energy --------------------------------------------

inline CriterionResult criterion_entropy_energy() {
  detail::Checker c;
  {
    Rng rng(801);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      Channel r = detail::random_bistochastic_qubit(rng, 0.995);
      int n = 1 + static_cast<int>(rng.integer() % 3);
      if (i % 5 == 0) {
        // two-qubit tensor power, bound via 1 - k^(2n)
        Channel t = tensor_channels(r, r);
        DensityMatrix rho = detail::random_state(rng, 4);
        double k = modulus_qubit(r);
        double gap_n = 1.0 - std::pow(k, 2.0 * n);
        cmat dev = rho.matrix() - identity(4) / 4.0;
        double bound = 0.5 * gap_n * hs_norm(dev) * hs_norm(dev);
        DensityMatrix cur = rho;
        for (int tstep = 0; tstep < n; ++tstep) cur = apply(t, cur);
        double actual = von_neumann_entropy(cur) - von_neumann_entropy(rho);
        worst = std::max(worst, bound - actual);
      } else {
        DensityMatrix rho = detail::random_state(rng, 2);
        EntropyGainBound b = entropy_gain_bound(r, rho, n);
        worst = std::max(worst, b.bound - b.actual);
      }
    }
    c.require(worst <= 1e-8, "entropy-gain slack " + detail::fmt(worst));
  }
  {
    // hand-evaluated n_max_entropy points: floor(ln(1 - 2bE/(eps^2(1-2^-N))) / (2 ln k))
    struct Point { double be, eps; int nq; double k; long want; };
    const std::vector<Point> pts = {
        {0.002, 0.1, 30, 0.9, 2},  {0.001, 0.1, 20, 0.9, 1},  {0.0005, 0.1, 10, 0.95, 1},
        {0.004, 0.2, 16, 0.8, 0},  {0.0001, 0.05, 25, 0.99, 4},
    };
    for (const Point& p : pts) {
      EntropyEnergyParams params{1.0, p.be, p.eps, p.nq, p.k, 1.0};
      long got = n_max_entropy(params);
      double raw = std::log(1.0 - 2.0 * p.be / (p.eps * p.eps * (1.0 - std::pow(2.0, -p.nq)))) /
                   (2.0 * std::log(p.k));
      long want = static_cast<long>(std::floor(raw + 1e-12));
      c.require(got == want && got == p.want,
                "n_max_entropy(" + detail::fmt(p.be) + ") = " + std::to_string(got) + " vs " +
                    std::to_string(p.want));
    }
  }
  {
    // orthogonal mixture at kappa = 0: equality S = ln n
    const int n = 4;
    std::vector<DensityMatrix> states;
    for (int i = 0; i < n; ++i) {
      cvec e = cvec::Zero(n);
      e(i) = 1;
      states.push_back(pure_density(e));
    }
    MixtureEntropyBound b = mixture_entropy_bound(states, 0.0);
    c.require(std::abs(b.actual - std::log(static_cast<double>(n))) <= 1e-9,
              "mixture entropy " + detail::fmt(b.actual) + " vs ln n");
    c.require(std::abs(b.actual - b.bound) <= 1e-9, "kappa = 0 bound not tight");
  }
  return {8, "entropy-energy bounds and n_max calculators", c.ok, c.msg.str()};
}

// --- criterion 9: toric code -------------------------------------------------

inline CriterionResult criterion_toric() {
  detail::Checker c;
  ToricLattice lat2 = build_lattice(2);
  StabilizerGroupReport rep2 = protected_dimension(lat2);
  GroundSpaceReport gs = ground_space_degeneracy_bruteforce(lat2);
  c.require(std::abs(gs.ground_energy - (-8.0)) <= 1e-8,
            "ground energy " + detail::fmt(gs.ground_energy));
  c.require(gs.degeneracy == 4, "degeneracy " + std::to_string(gs.degeneracy));
  c.require(rep2.code_dimension == 4, "k=2 GF(2) dimension " + std::to_string(rep2.code_dimension));
  c.require(static_cast<std::uint64_t>(gs.degeneracy) == rep2.code_dimension,
            "brute force and GF(2) disagree");
  for (int k = 2; k <= 4; ++k) {
    ToricLattice lat = build_lattice(k);
    c.require(check_commutation(lat).all_commute, "k=" + std::to_string(k) + " stabilizers fail to commute");
    StabilizerGroupReport rep = protected_dimension(lat);
    c.require(rep.code_dimension == 4,
              "k=" + std::to_string(k) + " dimension " + std::to_string(rep.code_dimension));
  }
  return {9, "toric code: degeneracy 4 at energy -8, GF(2) dimension 4", c.ok, c.msg.str()};
}

// --- criterion 10: density theorem ------------------------------------------

inline CriterionResult criterion_density_theorem() {
  detail::Checker c;
  StrictifyResult s = strictify(identity_channel(2), maximally_mixed(2), 50);
  double fid = channel_fidelity(identity_channel(2), s.channel);
  c.require(fid > 0.99, "channel fidelity " + detail::fmt(fid));
  double k = modulus_qubit(s.channel);
  c.require(k <= 0.99 + 1e-12, "modulus " + detail::fmt(k));
  Rng rng(1001);
  double worst_plain = 0.0, worst_scaled = 0.0, worst_orbit = 0.0;
  for (int i = 0; i < 500; ++i) {
    DensityMatrix rho = detail::random_state(rng, 2), sigma = detail::random_state(rng, 2);
    double before = trace_norm_distance(rho, sigma);
    double after = trace_norm_distance(apply(s.channel, rho), apply(s.channel, sigma));
    worst_plain = std::max(worst_plain, after - before);
    worst_scaled = std::max(worst_scaled, after - k * before);
  }
  {
    DensityMatrix rho = detail::random_state(rng, 2), sigma = detail::random_state(rng, 2);
    double base = trace_norm_distance(rho, sigma);
    DensityMatrix a = rho, b = sigma;
    for (int n = 1; n <= 30; ++n) {
      a = apply(s.channel, a);
      b = apply(s.channel, b);
      worst_orbit = std::max(worst_orbit,
                             trace_norm_distance(a, b) - std::pow(k, n) * base);
    }
  }
  c.require(worst_plain <= 1e-9, "contraction slack " + detail::fmt(worst_plain));
  c.require(worst_scaled <= 1e-9, "k-contraction slack " + detail::fmt(worst_scaled));
  c.require(worst_orbit <= 1e-8, "orbit contraction slack " + detail::fmt(worst_orbit));
  return {10, "density theorem: strictify(id, 1/2, 50)", c.ok, c.msg.str()};
}

inline std::vector<CriterionResult> run_all() {
  return {
      criterion_threshold_table(), criterion_nmr(),           criterion_worked_numbers(),
      criterion_moduli(),          criterion_fixed_points(),  criterion_spectral_gap(),
      criterion_property_suites(), criterion_entropy_energy(), criterion_toric(),
      criterion_density_theorem(),
  };
}

}  // namespace qchan::acceptance
