#include <catch_amalgamated.hpp>

#include <cmath>

#include "qchan/channel.hpp"
#include "qchan/distance.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"

using namespace qchan;

TEST_CASE("simulate_register") {
  Rng rng(81);
  SECTION("zero steps returns the initial state only") {
    OrbitRecord rec = simulate_register(make_density(rng.density(2)), depolarizing(2, 0.2), 0);
    CHECK(rec.states.size() == 1);
    CHECK(rec.pairwise_distance.empty());
  }
  SECTION("worked numbers: k = 0.9 halves nothing but shrinks 10x to 0.697") {
    // two orbits launched from orthogonal pure states under k = 0.9 noise
    cvec e0 = cvec::Zero(2), e1 = cvec::Zero(2);
    e0(0) = 1;
    e1(1) = 1;
    Channel noise = depolarizing(2, 0.1);
    OrbitRecord a = simulate_register(pure_density(e0), noise, 10);
    OrbitRecord b = simulate_register(pure_density(e1), noise, 10);
    double dist = trace_norm_distance(a.states[10], b.states[10]);
    CHECK(dist <= 0.697 + 1e-3);
    CHECK(std::abs(dist - 2.0 * std::pow(0.9, 10)) < 1e-12);  // exact for depolarizing
  }
  SECTION("unitary noise keeps consecutive distances constant") {
    cmat u = rng.unitary(2);
    OrbitRecord rec = simulate_register(make_density(rng.density(2)), unitary_channel(u), 15);
    for (double d : rec.pairwise_distance)
      CHECK(std::abs(d - rec.pairwise_distance[0]) < 1e-9);
  }
  SECTION("distances to the unique fixed point never increase") {
    OrbitRecord rec = simulate_register(make_density(rng.density(2)), amplitude_damping(0.2), 25);
    REQUIRE(rec.fixed_point.has_value());
    for (std::size_t t = 1; t < rec.distances_to_fixed_point.size(); ++t)
      CHECK(rec.distances_to_fixed_point[t] <= rec.distances_to_fixed_point[t - 1] + 1e-9);
  }
  SECTION("decoherence rate stays below k^n, independent of register size") {
    Channel single = depolarizing(2, 0.15);
    double k = 0.85;
    Channel noise = single;
    for (int qubits = 1; qubits <= 3; ++qubits) {
      if (qubits > 1) noise = tensor_channels(noise, single);
      DensityMatrix rho = make_density(rng.density(1 << qubits));
      OrbitRecord rec = simulate_register(rho, noise, 12);
      REQUIRE(rec.fixed_point.has_value());
      double base = rec.distances_to_fixed_point[0];
      for (std::size_t n = 1; n < rec.distances_to_fixed_point.size(); ++n)
        CHECK(rec.distances_to_fixed_point[n] <= std::pow(k, n) * base + 1e-8);
    }
  }
}

TEST_CASE("simulate_circuit") {
  Rng rng(82);
  SECTION("identity noise leaves the entropy constant") {
    std::vector<cmat> gates;
    for (int i = 0; i < 6; ++i) gates.push_back(rng.unitary(2));
    NoisyCircuit circuit = make_circuit(gates, identity_channel(2));
    DensityMatrix rho = make_density(rng.density(2));
    CircuitResult res = simulate_circuit(rho, circuit);
    double s0 = von_neumann_entropy(rho);
    for (const DensityMatrix& s : res.orbit.states)
      CHECK(std::abs(von_neumann_entropy(s) - s0) < 1e-9);
  }
  SECTION("static algorithm converges to the fixed point of noise o gate") {
    cmat u = rng.unitary(2);
    Channel noise = amplitude_damping(0.5);
    std::vector<cmat> gates(40, u);
    NoisyCircuit circuit = make_circuit(gates, noise);
    CircuitResult res = simulate_circuit(make_density(rng.density(2)), circuit);
    REQUIRE(res.orbit.fixed_point.has_value());
    CHECK(res.orbit.distances_to_fixed_point.back() < 1e-4);
    double k = modulus_qubit(noise);
    double base = res.orbit.distances_to_fixed_point[0];
    for (std::size_t n = 1; n < res.orbit.distances_to_fixed_point.size(); ++n)
      CHECK(res.orbit.distances_to_fixed_point[n] <= std::pow(k, n) * base + 1e-8);
  }
  SECTION("bistochastic contractive noise drives any circuit to 1/d") {
    std::vector<cmat> gates;
    for (int i = 0; i < 60; ++i) gates.push_back(rng.unitary(2));
    NoisyCircuit circuit = make_circuit(gates, depolarizing(2, 0.35));
    CircuitResult res = simulate_circuit(make_density(rng.density(2)), circuit);
    CHECK(trace_norm_distance(res.final_state, maximally_mixed(2)) < 1e-6);
  }
  SECTION("two circuits differing in the input contract pairwise") {
    std::vector<cmat> gates;
    for (int i = 0; i < 12; ++i) gates.push_back(rng.unitary(2));
    Channel noise = two_pauli(0.6);
    double k = modulus_qubit(noise);
    NoisyCircuit circuit = make_circuit(gates, noise);
    DensityMatrix r0 = make_density(rng.density(2));
    DensityMatrix r1 = make_density(rng.density(2));
    CircuitResult a = simulate_circuit(r0, circuit);
    CircuitResult b = simulate_circuit(r1, circuit);
    double base = trace_norm_distance(r0, r1);
    for (std::size_t n = 1; n < a.orbit.states.size(); ++n)
      CHECK(trace_norm_distance(a.orbit.states[n], b.orbit.states[n]) <=
            std::pow(k, n) * base + 1e-8);
  }
  SECTION("non-unitary gates are rejected") {
    std::vector<cmat> gates = {2.0 * identity(2)};
    CHECK_THROWS_AS(make_circuit(gates, identity_channel(2)), ParameterOutOfRange);
  }
}

TEST_CASE("n_max_operations") {
  NMaxResult res = n_max_operations(0.9, 0.01);
  CHECK(res.steps == 51);  // ceil(log 0.005 / log 0.9) = ceil(50.29)
  CHECK(res.paper_discrepancy);

  CHECK(n_max_operations(0.5, 2.0).steps == 0);
  CHECK_FALSE(n_max_operations(0.5, 0.5).paper_discrepancy);

  // thermal-relaxation parametrization: n_max ~ 1258.85 T_th at eps = 1e-12
  double tth = 10.0;
  double k = std::exp(-0.045 / (2.0 * tth));
  CHECK(std::abs(n_max_operations(k, 1e-12).steps - 1258.85 * tth) < 1.0);

  CHECK_THROWS_AS(n_max_operations(1.1, 0.1), ParameterOutOfRange);
  CHECK_THROWS_AS(n_max_operations(0.9, 3.0), ParameterOutOfRange);
}

TEST_CASE("required_precision") {
  CHECK(required_precision(0.9, 0) == 2.0);
  CHECK(std::abs(required_precision(0.9, 10) - 0.6974) < 1e-4);
  // algebraic inverse at exact powers
  for (long depth : {1L, 5L, 17L}) {
    double eps = required_precision(0.8, depth);
    CHECK(n_max_operations(0.8, eps).steps == depth);
  }
  CHECK_THROWS_AS(required_precision(1.0, 5), ParameterOutOfRange);
}

TEST_CASE("threshold_error_rate") {
  CHECK(std::abs(threshold_error_rate(1e-17, 20.0) - 0.863) < 1e-3);
  CHECK(std::abs(threshold_error_rate(1e-17, 8000.0) - 4.96e-3) < 1e-5);
  CHECK(threshold_error_rate(2.0, 7.0) == 0.0);
  CHECK_THROWS_AS(threshold_error_rate(0.0, 5.0), ParameterOutOfRange);
}

TEST_CASE("threshold_table reproduces the printed cells") {
  ThresholdTable t = threshold_table();
  REQUIRE(t.row_names.size() == 4);
  REQUIRE(t.n_values.size() == 5);
  CHECK(std::abs(t.cells[3][4] - 3.53e-14) <= 1e-16);   // sqrt(2^n), n = 100
  CHECK(std::abs(t.cells[1][4] - 0.328) <= 1e-3);       // n, n = 100
  CHECK(std::abs(t.cells[0][0] - 1.0) <= 1e-2);         // log n, n = 20: ~1
  CHECK(std::abs(t.cells[2][1] - 6.22e-4) <= 1e-6);     // n^3, n = 40
}

TEST_CASE("nmr_case_study") {
  NmrCaseStudy s = nmr_case_study(1e23, 0.045, 2.8);
  CHECK(std::abs(s.epsilon_exact - 1.58e-12) < 1e-14);
  CHECK(s.epsilon_order == 1e-12);
  CHECK(std::abs(s.n_max - 3525) < 3525 * 0.01);

  NmrCaseStudy s2 = nmr_case_study(1e23, 0.045, 45.4);
  CHECK(std::abs(s2.n_max - 57152) < 57152 * 0.01);

  // noiseless limit: k -> 1 and n_max diverges
  NmrCaseStudy s3 = nmr_case_study(1e23, 0.045, 1e9);
  CHECK(s3.k > 1.0 - 1e-6);
  CHECK(s3.n_max > 1e9);

  CHECK_THROWS_AS(nmr_case_study(-1.0, 0.045, 2.8), ParameterOutOfRange);
}
