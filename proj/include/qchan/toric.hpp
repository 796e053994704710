#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qchan/common.hpp"
#include "qchan/qstate.hpp"

namespace qchan {

// Pauli string over {I, X, Z} with +1 sign, stored as GF(2) symplectic bits
struct PauliString {
  std::vector<std::uint8_t> x_bits;
  std::vector<std::uint8_t> z_bits;

  int n() const { return static_cast<int>(x_bits.size()); }

  std::string text() const {
    std::string s(x_bits.size(), 'I');
    for (std::size_t i = 0; i < x_bits.size(); ++i) {
      if (x_bits[i] && z_bits[i]) s[i] = 'Y';
      else if (x_bits[i]) s[i] = 'X';
      else if (z_bits[i]) s[i] = 'Z';
    }
    return s;
  }

  int weight() const {
    int w = 0;
    for (std::size_t i = 0; i < x_bits.size(); ++i)
      if (x_bits[i] || z_bits[i]) ++w;
    return w;
  }
};

// symplectic inner product over GF(2); zero means the operators commute
inline int symplectic_product(const PauliString& a, const PauliString& b) {
  int acc = 0;
  for (int i = 0; i < a.n(); ++i) acc ^= (a.x_bits[i] & b.z_bits[i]) ^ (a.z_bits[i] & b.x_bits[i]);
  return acc;
}

struct ToricLattice {
  int k = 0;
  int n = 0;  // 2 k^2 qubits, one per edge
  std::vector<PauliString> vertex_stabilizers;  // A_v, four X's each
  std::vector<PauliString> face_stabilizers;    // B_F, four Z's each

  // edges carry the qubit index: horizontal edge right of (r, c) and
  // vertical edge below (r, c)
  int h_edge(int r, int c) const { return 2 * (mod(r) * k + mod(c)); }
  int v_edge(int r, int c) const { return 2 * (mod(r) * k + mod(c)) + 1; }
  int mod(int i) const { return ((i % k) + k) % k; }

  std::vector<PauliString> all_stabilizers() const {
    std::vector<PauliString> all = vertex_stabilizers;
    all.insert(all.end(), face_stabilizers.begin(), face_stabilizers.end());
    return all;
  }
};

inline ToricLattice build_lattice(int k) {
  if (k < 2) throw ParameterOutOfRange("toric lattice requires k >= 2");
  ToricLattice lat;
  lat.k = k;
  lat.n = 2 * k * k;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      PauliString a{std::vector<std::uint8_t>(lat.n, 0), std::vector<std::uint8_t>(lat.n, 0)};
      a.x_bits[lat.h_edge(r, c)] = 1;
      a.x_bits[lat.v_edge(r, c)] = 1;
      a.x_bits[lat.h_edge(r, c - 1)] = 1;
      a.x_bits[lat.v_edge(r - 1, c)] = 1;
      lat.vertex_stabilizers.push_back(std::move(a));

      PauliString b{std::vector<std::uint8_t>(lat.n, 0), std::vector<std::uint8_t>(lat.n, 0)};
      b.z_bits[lat.h_edge(r, c)] = 1;
      b.z_bits[lat.v_edge(r, c)] = 1;
      b.z_bits[lat.h_edge(r + 1, c)] = 1;
      b.z_bits[lat.v_edge(r, c + 1)] = 1;
      lat.face_stabilizers.push_back(std::move(b));
    }
  return lat;
}

struct CommutationReport {
  bool all_commute = true;
  std::vector<std::pair<int, int>> violations;  // indices into all_stabilizers()
};

inline CommutationReport check_commutation(const ToricLattice& lat) {
  CommutationReport rep;
  std::vector<PauliString> all = lat.all_stabilizers();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (symplectic_product(all[i], all[j]) != 0) {
        rep.all_commute = false;
        rep.violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
  return rep;
}

// rank of GF(2) row vectors by Gaussian elimination
inline int gf2_rank(std::vector<std::vector<std::uint8_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != row && rows[r][col])
        for (std::size_t c = 0; c < cols; ++c) rows[r][c] ^= rows[row][c];
    ++row;
    ++rank;
  }
  return rank;
}

struct StabilizerGroupReport {
  int generator_count = 0;
  int independent_count = 0;  // GF(2) symplectic rank
  int n = 0;
  std::uint64_t code_dimension = 0;  // 2^(n - rank)
};

inline std::vector<std::uint8_t> symplectic_row(const PauliString& p) {
  std::vector<std::uint8_t> row(2 * p.n());
  for (int i = 0; i < p.n(); ++i) {
    row[i] = p.x_bits[i];
    row[p.n() + i] = p.z_bits[i];
  }
  return row;
}

inline StabilizerGroupReport protected_dimension(const ToricLattice& lat) {
  std::vector<std::vector<std::uint8_t>> rows;
  for (const PauliString& p : lat.all_stabilizers()) rows.push_back(symplectic_row(p));
  StabilizerGroupReport rep;
  rep.generator_count = static_cast<int>(rows.size());
  rep.independent_count = gf2_rank(std::move(rows));
  rep.n = lat.n;
  rep.code_dimension = std::uint64_t{1} << (lat.n - rep.independent_count);
  return rep;
}

// dense matrix of a Pauli string; only usable at small n
inline cmat pauli_string_matrix(const PauliString& p) {
  cmat op = cmat::Ones(1, 1);
  for (int i = 0; i < p.n(); ++i) {
    int idx = 0;
    if (p.x_bits[i] && p.z_bits[i]) idx = 2;
    else if (p.x_bits[i]) idx = 1;
    else if (p.z_bits[i]) idx = 3;
    op = kron(op, pauli(idx));
  }
  return op;
}

struct GroundSpaceReport {
  double ground_energy = 0.0;
  int degeneracy = 0;
  double gap = 0.0;
  cmat ground_vectors;  // columns span the ground space
};

// dense diagonalization of H = -sum A_v - sum B_F; the 2^(2k^2) growth
// restricts this route to k = 2
inline GroundSpaceReport ground_space_degeneracy_bruteforce(const ToricLattice& lat,
                                                            double degeneracy_tol = 1e-8) {
  if (lat.k != 2)
    throw ParameterOutOfRange("brute-force diagonalization only supported at k = 2, got k = " +
                              std::to_string(lat.k));
  const Eigen::Index dim = Eigen::Index{1} << lat.n;
  cmat h = cmat::Zero(dim, dim);
  for (const PauliString& p : lat.vertex_stabilizers) h -= pauli_string_matrix(p);
  for (const PauliString& p : lat.face_stabilizers) h -= pauli_string_matrix(p);
  Eigen::SelfAdjointEigenSolver<cmat> es(h);
  const rvec& ev = es.eigenvalues();
  GroundSpaceReport rep;
  rep.ground_energy = ev(0);
  int deg = 1;
  while (deg < ev.size() && ev(deg) - ev(0) <= degeneracy_tol) ++deg;
  rep.degeneracy = deg;
  rep.gap = (deg < ev.size()) ? ev(deg) - ev(0) : 0.0;
  rep.ground_vectors = es.eigenvectors().leftCols(deg);
  return rep;
}

}  // namespace qchan
