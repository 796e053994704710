#include <catch_amalgamated.hpp>

#include <cmath>

#include "qchan/distance.hpp"
#include "qchan/qstate.hpp"
#include "qchan/random.hpp"

using namespace qchan;

namespace {
cvec basis_vec(int d, int i) {
  cvec v = cvec::Zero(d);
  v(i) = 1.0;
  return v;
}
}  // namespace

TEST_CASE("make_density validates the state axioms") {
  CHECK(make_density(identity(2) / 2.0).dim() == 2);

  cmat bad_trace = identity(3);
  CHECK_THROWS_AS(make_density(bad_trace), TraceNotOne);

  cmat neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS(make_density(neg), NotPositive);

  cmat nonherm(2, 2);
  nonherm << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(make_density(nonherm), NotHermitian);

  cmat rect(2, 3);
  CHECK_THROWS_AS(make_density(rect), DimensionMismatch);

  // roundoff-sized negativity is clamped, not rejected
  cmat close(2, 2);
  close << 1.0 + 5e-10, 0, 0, -5e-10;
  DensityMatrix rho = make_density(close);
  CHECK(hermitian_eigenvalues(rho.matrix()).minCoeff() >= 0.0);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("random PSD normalized input matches an independent eigensolver") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + static_cast<int>(rng.integer() % 4);
    cmat g = rng.gaussian_matrix(d, d);
    cmat psd = g * g.adjoint();
    psd /= psd.trace().real();
    DensityMatrix rho = make_density(psd);
    rvec expected = hermitian_eigenvalues(psd);
    rvec got = hermitian_eigenvalues(rho.matrix());
    CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("tensor product entries follow the index formula") {
  CHECK((tensor_states(maximally_mixed(2), maximally_mixed(2)).matrix() - identity(4) / 4.0)
            .cwiseAbs()
            .maxCoeff() < 1e-12);

  DensityMatrix p0 = pure_density(basis_vec(2, 0));
  DensityMatrix p1 = pure_density(basis_vec(2, 1));
  DensityMatrix p01 = tensor_states(p0, p1);
  CHECK(std::abs(p01.matrix()(1, 1).real() - 1.0) < 1e-12);  // |01> at index 0*2+1

  Rng rng(12);
  DensityMatrix a = make_density(rng.density(2)), b = make_density(rng.density(3));
  DensityMatrix ab = tensor_states(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int mu = 0; mu < 3; ++mu)
        for (int nu = 0; nu < 3; ++nu)
          CHECK(std::abs(ab.matrix()(i * 3 + mu, j * 3 + nu) -
                         a.matrix()(i, j) * b.matrix()(mu, nu)) < 1e-12);
}

TEST_CASE("partial trace") {
  SECTION("Bell state reduces to the maximally mixed state on both sides") {
    DensityMatrix bell = pure_density(bell_state(0));
    for (Subsys s : {Subsys::A, Subsys::B}) {
      DensityMatrix red = partial_trace(bell, 2, 2, s);
      CHECK(trace_norm_distance(red, maximally_mixed(2)) < 1e-12);
    }
  }
  SECTION("product state reduces to its factors") {
    Rng rng(13);
    DensityMatrix a = make_density(rng.density(2)), b = make_density(rng.density(3));
    DensityMatrix ab = tensor_states(a, b);
    CHECK(trace_norm_distance(partial_trace(ab, 2, 3, Subsys::A), a) < 1e-10);
    CHECK(trace_norm_distance(partial_trace(ab, 2, 3, Subsys::B), b) < 1e-10);
  }
  SECTION("random dim-6 state matches the index-summation oracle") {
    Rng rng(14);
    DensityMatrix rho = make_density(rng.density(6));
    cmat oracle = cmat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int mu = 0; mu < 3; ++mu) oracle(i, j) += rho.matrix()(i * 3 + mu, j * 3 + mu);
    CHECK((partial_trace(rho, 2, 3, Subsys::A).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("dimension mismatch is rejected") {
    CHECK_THROWS_AS(partial_trace(maximally_mixed(6), 2, 2, Subsys::A), DimensionMismatch);
  }
}

TEST_CASE("purification") {
  SECTION("pure input purifies with Schmidt number 1") {
    Rng rng(15);
    cvec psi = rng.pure_state(3);
    PureState purified = purify(pure_density(psi));
    CHECK(purified.dim() == 3);  // rank-1 ancilla collapses
  }
  SECTION("maximally mixed qubit purifies to a maximally entangled pair") {
    PureState purified = purify(maximally_mixed(2));
    CHECK(purified.dim() == 4);
    CHECK(is_maximally_entangled(purified, 2).maximally_entangled);
  }
  SECTION("roundtrip through the partial trace") {
    Rng rng(16);
    for (int d : {2, 3, 5}) {
      DensityMatrix rho = make_density(rng.density(d));
      PureState psi = purify(rho);
      int rank = psi.dim() / d;
      DensityMatrix back =
          partial_trace(pure_density(psi.amplitudes), d, rank, Subsys::A);
      CHECK(trace_norm_distance(back, rho) < 1e-10);
    }
  }
}

TEST_CASE("Schmidt decomposition") {
  SECTION("product vector has a single unit coefficient") {
    Rng rng(17);
    cvec phi = rng.pure_state(2), chi = rng.pure_state(3);
    SchmidtDecomposition sd = schmidt(make_pure(kron_vec(phi, chi)), 2, 3);
    REQUIRE(sd.schmidt_number() == 1);
    CHECK(std::abs(sd.coefficients(0) - 1.0) < 1e-9);
  }
  SECTION("Bell vector has coefficients (1/sqrt2, 1/sqrt2)") {
    SchmidtDecomposition sd = schmidt(make_pure(bell_state(0)), 2, 2);
    REQUIRE(sd.schmidt_number() == 2);
    CHECK(std::abs(sd.coefficients(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(sd.coefficients(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
  }
  SECTION("random vector reconstructs and matches reduced spectra") {
    Rng rng(18);
    for (int trial = 0; trial < 10; ++trial) {
      PureState psi = make_pure(rng.pure_state(6));
      SchmidtDecomposition sd = schmidt(psi, 2, 3);
      cvec rebuilt = cvec::Zero(6);
      for (int kidx = 0; kidx < sd.schmidt_number(); ++kidx)
        rebuilt += sd.coefficients(kidx) *
                   kron_vec(sd.left_vectors.col(kidx), sd.right_vectors.col(kidx));
      cplx phase = rebuilt.adjoint() * psi.amplitudes;
      CHECK((rebuilt * (phase / std::abs(phase)) - psi.amplitudes).norm() < 1e-9);

      // coefficients match the eigenvalue square roots of either reduced state
      cmat proj = psi.amplitudes * psi.amplitudes.adjoint();
      rvec evals = hermitian_eigenvalues(partial_trace_matrix(proj, 2, 3, Subsys::A));
      for (int kidx = 0; kidx < sd.schmidt_number(); ++kidx) {
        double sq = sd.coefficients(kidx) * sd.coefficients(kidx);
        CHECK(std::abs(evals(evals.size() - 1 - kidx) - sq) < 1e-9);
      }
    }
  }
  SECTION("dimension mismatch is rejected") {
    CHECK_THROWS_AS(schmidt(make_pure(bell_state(0)), 2, 3), DimensionMismatch);
  }
}

TEST_CASE("maximally entangled states and the witness unitary") {
  for (int which = 0; which < 4; ++which)
    CHECK(is_maximally_entangled(make_pure(bell_state(which)), 2).maximally_entangled);

  Rng rng(19);
  cvec prod = kron_vec(rng.pure_state(2), rng.pure_state(2));
  CHECK_FALSE(is_maximally_entangled(make_pure(prod), 2).maximally_entangled);

  for (int d : {2, 3}) {
    cmat u = rng.unitary(d);
    cvec psi = dket(u) / std::sqrt(static_cast<double>(d));
    MaxEntResult res = is_maximally_entangled(make_pure(psi), d);
    REQUIRE(res.maximally_entangled);
    cplx phase = (res.witness_unitary.adjoint() * u).trace() / static_cast<double>(d);
    CHECK((res.witness_unitary * phase - u).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("Bloch representation") {
  CHECK(bloch_from_density(maximally_mixed(2)).norm() < 1e-12);

  DensityMatrix up = pure_density(basis_vec(2, 0));
  Eigen::Vector3d r = bloch_from_density(up);
  CHECK(std::abs(r(2) - 1.0) < 1e-12);
  CHECK(std::abs(r(0)) + std::abs(r(1)) < 1e-12);

  Rng rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    v *= rng.uniform() / std::max(v.norm(), 1e-12);
    DensityMatrix rho = density_from_bloch(v);
    CHECK((bloch_from_density(rho) - v).norm() < 1e-12);
  }
  CHECK_THROWS_AS(density_from_bloch(Eigen::Vector3d(1.2, 0, 0)), BlochOutOfBall);
  CHECK_THROWS_AS(bloch_from_density(maximally_mixed(3)), DimensionMismatch);

  // trace-norm distance equals the Euclidean Bloch distance
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector3d a(rng.normal(), rng.normal(), rng.normal());
    Eigen::Vector3d b(rng.normal(), rng.normal(), rng.normal());
    a *= rng.uniform() / std::max(a.norm(), 1e-12);
    b *= rng.uniform() / std::max(b.norm(), 1e-12);
    double dist = trace_norm_distance(density_from_bloch(a), density_from_bloch(b));
    CHECK(std::abs(dist - (a - b).norm()) < 1e-10);
  }
}

TEST_CASE("von Neumann entropy") {
  Rng rng(21);
  CHECK(von_neumann_entropy(pure_density(rng.pure_state(4))) < 1e-9);
  for (int d : {2, 3, 4}) CHECK(std::abs(von_neumann_entropy(maximally_mixed(d)) - std::log(d)) < 1e-12);

  cmat spec(2, 2);
  spec << 0.75, 0, 0, 0.25;
  CHECK(std::abs(von_neumann_entropy(make_density(spec)) - 0.5623) < 1e-4);

  // bounds: 0 <= S <= ln d, lower bound tight only near purity
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng.integer() % 3);
    DensityMatrix rho = make_density(rng.density(d));
    double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(d) + 1e-12);
    if (s < 1e-9) CHECK(hermitian_eigenvalues(rho.matrix()).maxCoeff() >= 1.0 - 1e-9);
  }
}

TEST_CASE("relative entropy") {
  Rng rng(22);
  DensityMatrix rho = make_density(rng.density(3));
  CHECK(relative_entropy(rho, rho) < 1e-9);

  // qubit pure state against 1/2
  DensityMatrix pure = pure_density(rng.pure_state(2));
  CHECK(std::abs(relative_entropy(pure, maximally_mixed(2)) - std::log(2.0)) < 1e-9);

  // support leak means +infinity
  DensityMatrix p0 = pure_density(basis_vec(2, 0));
  DensityMatrix p1 = pure_density(basis_vec(2, 1));
  CHECK(std::isinf(relative_entropy(p0, p1)));

  CHECK_THROWS_AS(relative_entropy(p0, maximally_mixed(3)), DimensionMismatch);

  // Streater lower bound on 1000 random pairs in dims 2..5
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    int d = 2 + static_cast<int>(rng.integer() % 4);
    DensityMatrix a = make_density(rng.density(d));
    DensityMatrix b = make_density(rng.density(d));
    double lhs = relative_entropy(a, b);
    if (!std::isfinite(lhs)) continue;
    double hs = hs_distance(a, b);
    worst = std::max(worst, 0.5 * hs * hs - lhs);
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("module invariants: partial trace and purification roundtrips") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    DensityMatrix a = make_density(rng.density(2));
    DensityMatrix b = make_density(rng.density(3));
    CHECK(trace_norm_distance(partial_trace(tensor_states(a, b), 2, 3, Subsys::A), a) < 1e-10);
    CHECK(trace_norm_distance(partial_trace(tensor_states(a, b), 2, 3, Subsys::B), b) < 1e-10);
  }
}
