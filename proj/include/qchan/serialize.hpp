#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qchan/channel.hpp"
#include "qchan/common.hpp"
#include "qchan/contractivity.hpp"
#include "qchan/dynamics.hpp"
#include "qchan/enterg.hpp"
#include "qchan/qstate.hpp"
#include "qchan/toric.hpp"

namespace qchan {

using json = nlohmann::ordered_json;

// doubles in reports carry 12 significant digits
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

inline json matrix_to_json(const cmat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(round12(m(i, j).real()));
      irow.push_back(round12(m(i, j).imag()));
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

inline cmat matrix_from_json(const json& j) {
  if (!j.contains("re")) throw ParseError("matrix object needs a 're' field");
  const json& re = j.at("re");
  if (!re.is_array() || re.empty() || !re[0].is_array())
    throw ParseError("matrix 're' must be a nonempty 2D array");
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(re[0].size());
  cmat m = cmat::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(re[i].size()) != cols)
      throw ParseError("matrix rows have inconsistent lengths");
    for (Eigen::Index j2 = 0; j2 < cols; ++j2) m(i, j2) = cplx(re[i][j2].get<double>(), 0.0);
  }
  if (j.contains("im")) {
    const json& im = j.at("im");
    if (static_cast<Eigen::Index>(im.size()) != rows)
      throw ParseError("matrix 'im' shape differs from 're'");
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j2 = 0; j2 < cols; ++j2)
        m(i, j2) += cplx(0.0, im[i][j2].get<double>());
  }
  return m;
}

inline json state_to_json(const DensityMatrix& rho) {
  json j = matrix_to_json(rho.matrix());
  json out;
  out["dim"] = rho.dim();
  out["re"] = j["re"];
  out["im"] = j["im"];
  return out;
}

inline DensityMatrix state_from_json(const json& j) {
  cmat m = matrix_from_json(j);
  if (j.contains("dim") && j.at("dim").get<int>() != m.rows())
    throw ParseError("state 'dim' disagrees with matrix shape");
  return make_density(m);
}

inline json channel_to_json(const Channel& phi) {
  json ops = json::array();
  for (const cmat& v : phi.kraus().ops) ops.push_back(matrix_to_json(v));
  json out;
  out["dim_in"] = phi.dim_in();
  out["dim_out"] = phi.dim_out();
  out["kraus"] = std::move(ops);
  return out;
}

// accepts either an explicit Kraus list or a named builtin with parameters
inline Channel channel_from_json(const json& j) {
  if (j.contains("builtin")) {
    std::string name = j.at("builtin").get<std::string>();
    json p = j.value("params", json::object());
    if (name == "depolarizing") return depolarizing(p.value("d", 2), p.at("p").get<double>());
    if (name == "two_pauli") return two_pauli(p.at("p").get<double>());
    if (name == "amplitude_damping") return amplitude_damping(p.at("gamma").get<double>());
    if (name == "thermalizing")
      return thermalizing(p.at("beta").get<double>(), p.at("E").get<double>(),
                          p.at("gamma").get<double>());
    if (name == "phase_damping") return phase_damping(p.at("lambda").get<double>());
    if (name == "degenerate") return degenerate(state_from_json(p.at("sigma")));
    if (name == "identity") return identity_channel(p.value("d", 2));
    throw ParseError("unknown builtin channel '" + name + "'");
  }
  if (!j.contains("kraus")) throw ParseError("channel object needs 'kraus' or 'builtin'");
  std::vector<cmat> ops;
  for (const json& op : j.at("kraus")) ops.push_back(matrix_from_json(op));
  Channel phi = make_channel(std::move(ops));
  if (j.contains("dim_in") && j.at("dim_in").get<int>() != phi.dim_in())
    throw ParseError("channel 'dim_in' disagrees with the Kraus operators");
  if (j.contains("dim_out") && j.at("dim_out").get<int>() != phi.dim_out())
    throw ParseError("channel 'dim_out' disagrees with the Kraus operators");
  return phi;
}

inline NoisyCircuit circuit_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("gates") || !j.contains("noise"))
    throw ParseError("circuit object needs 'dim', 'gates' and 'noise'");
  std::vector<cmat> gates;
  for (const json& g : j.at("gates")) gates.push_back(matrix_from_json(g));
  Channel noise = channel_from_json(j.at("noise"));
  if (noise.dim_in() != j.at("dim").get<int>())
    throw ParseError("circuit 'dim' disagrees with the noise channel");
  return make_circuit(std::move(gates), std::move(noise), j.value("noise_first", false));
}

inline EntropyEnergyParams params_from_json(const json& j) {
  EntropyEnergyParams p;
  p.beta = j.at("beta").get<double>();
  p.e_max = j.at("E_max").get<double>();
  p.epsilon = j.at("epsilon").get<double>();
  p.n_qubits = j.at("N").get<int>();
  p.k = j.at("k").get<double>();
  p.delta = j.value("delta", 1.0);
  validate(p);
  return p;
}

inline json params_to_json(const EntropyEnergyParams& p) {
  json j;
  j["beta"] = round12(p.beta);
  j["E_max"] = round12(p.e_max);
  j["epsilon"] = round12(p.epsilon);
  j["N"] = p.n_qubits;
  j["k"] = round12(p.k);
  j["delta"] = round12(p.delta);
  return j;
}

inline json contractivity_to_json(const ContractivityReport& r) {
  json j;
  if (r.k_exact) j["k_exact"] = round12(*r.k_exact);
  j["k_lower"] = round12(r.k_lower);
  j["method"] = r.method;
  j["samples"] = r.samples;
  j["refine_steps"] = r.refine_steps;
  j["seed"] = r.seed;
  cmat cert(r.certificate_psi.size(), 2);
  cert.col(0) = r.certificate_psi;
  cert.col(1) = r.certificate_phi;
  j["certificate_pair"] = matrix_to_json(cert);
  return j;
}

inline json fixed_point_to_json(const FixedPointReport& r) {
  json j;
  j["rho_fixed"] = state_to_json(r.rho_fixed);
  j["residual"] = round12(r.residual);
  j["unique"] = r.unique;
  j["eigenvalue_1_multiplicity"] = r.eigenvalue_1_multiplicity;
  json pts = json::array();
  for (const DensityMatrix& s : r.fixed_points) pts.push_back(state_to_json(s));
  j["fixed_points"] = std::move(pts);
  return j;
}

inline json commutant_to_json(const CommutantReport& r) {
  json j;
  j["dimension"] = r.dimension;
  j["irreducible"] = r.irreducible;
  json basis = json::array();
  for (const cmat& b : r.basis) basis.push_back(matrix_to_json(b));
  j["basis"] = std::move(basis);
  json sv = json::array();
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i)
    sv.push_back(round12(r.singular_values(i)));
  j["singular_values"] = std::move(sv);
  return j;
}

inline json table_to_json(const ThresholdTable& t) {
  json j;
  j["epsilon"] = round12(t.epsilon);
  j["n_values"] = t.n_values;
  json rows = json::array();
  for (std::size_t r = 0; r < t.row_names.size(); ++r) {
    json row;
    row["depth"] = t.row_names[r];
    json cells = json::array();
    for (double c : t.cells[r]) cells.push_back(round12(c));
    row["cells"] = std::move(cells);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline json lattice_to_json(const ToricLattice& lat) {
  json j;
  j["k"] = lat.k;
  j["n"] = lat.n;
  json av = json::array(), bf = json::array();
  for (const PauliString& p : lat.vertex_stabilizers) av.push_back(p.text());
  for (const PauliString& p : lat.face_stabilizers) bf.push_back(p.text());
  j["vertex_stabilizers"] = std::move(av);
  j["face_stabilizers"] = std::move(bf);
  return j;
}

// FNV-1a digest of the canonical input text, echoed in reports
inline std::string input_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qchan
