#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qchan/acceptance.hpp"
#include "qchan/serialize.hpp"

namespace qchan::cli {

// exit codes: 0 success, 1 analysis-negative, 2 input error
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;

namespace detail {

inline std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%FT%TZ");
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
  return j;
}

inline json report_skeleton(const std::string& command, const std::string& digest,
                            std::uint64_t seed) {
  json rep;
  rep["command"] = command;
  rep["input_digest"] = digest;
  rep["seed"] = seed;
  rep["timestamp"] = iso_timestamp();
  rep["warnings"] = json::array();
  rep["results"] = json::object();
  return rep;
}

inline void emit(const json& rep, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << rep.dump(2) << "\n";
  } else {
    std::ofstream f(output);
    if (!f) throw ParseError("cannot write to '" + output + "'");
    f << rep.dump(2) << "\n";
  }
}

inline void emit_text(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream f(output);
    if (!f) throw ParseError("cannot write to '" + output + "'");
    f << text;
  }
}

inline std::string sig3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace detail

struct Options {
  std::uint64_t seed = 0;
  double tolerance = kValidationTol;
  bool as_json = false;
  bool as_csv = false;
  std::string output;
};

inline int cmd_analyze(const std::string& channel_file, const Options& opt, std::ostream& out) {
  std::string text = detail::read_file(channel_file);
  Channel phi = channel_from_json(detail::parse_json(text, channel_file));
  json rep = detail::report_skeleton("analyze " + channel_file, input_digest(text), opt.seed);
  json& res = rep["results"];
  res["dim_in"] = phi.dim_in();
  res["dim_out"] = phi.dim_out();
  res["trace_preservation_defect"] = round12(trace_preservation_defect(phi.kraus()));
  res["choi_min_eigenvalue"] = round12(choi_min_eigenvalue(phi.choi()));
  res["completely_positive"] = choi_min_eigenvalue(phi.choi()) >= -kChannelTol;
  res["bistochastic"] = is_bistochastic(phi);
  if (phi.dim_in() == phi.dim_out()) {
    ContractivityReport mod = modulus_estimate(phi, 2000, 1500, opt.seed + 1);
    res["modulus"] = contractivity_to_json(mod);
    FixedPointReport fp = fixed_point(phi);
    res["fixed_point"] = fixed_point_to_json(fp);
    if (!fp.unique)
      rep["warnings"].push_back("fixed point is not unique (eigenvalue-1 multiplicity " +
                                std::to_string(fp.eigenvalue_1_multiplicity) + ")");
    if (is_bistochastic(phi)) res["spectral_gap"] = round12(spectral_gap(phi));
    TransferSpectrum ts = transfer_spectrum(phi);
    json eigs = json::array();
    for (Eigen::Index i = 0; i < ts.eigenvalues.size(); ++i)
      eigs.push_back(json{{"re", round12(ts.eigenvalues(i).real())},
                          {"im", round12(ts.eigenvalues(i).imag())}});
    res["transfer_eigenvalues"] = std::move(eigs);
    res["mixing_rate"] = round12(ts.mixing_rate);
    CommutantReport com = commutant(phi.kraus());
    res["commutant"] = json{{"dimension", com.dimension}, {"irreducible", com.irreducible}};
  }
  detail::emit(rep, opt.output, out);
  return kExitOk;
}

inline int cmd_simulate(const std::string& state_file, const std::string& channel_file, int steps,
                        const Options& opt, std::ostream& out) {
  std::string stext = detail::read_file(state_file);
  std::string ctext = detail::read_file(channel_file);
  DensityMatrix rho0 = state_from_json(detail::parse_json(stext, state_file));
  Channel phi = channel_from_json(detail::parse_json(ctext, channel_file));
  OrbitRecord orbit = simulate_register(rho0, phi, steps);
  double k = (phi.dim_in() == 2) ? modulus_qubit(phi)
                                 : modulus_estimate(phi, 800, 600, opt.seed + 1).k_lower;
  double d0 = orbit.distances_to_fixed_point.empty() ? 0.0 : orbit.distances_to_fixed_point[0];
  if (opt.as_csv || !opt.as_json) {
    std::ostringstream csv;
    csv << "step,distance_to_fixed_point,entropy,k_power_bound\n";
    for (std::size_t t = 0; t < orbit.states.size(); ++t) {
      csv << t << ",";
      if (t < orbit.distances_to_fixed_point.size())
        csv << round12(orbit.distances_to_fixed_point[t]);
      csv << "," << round12(von_neumann_entropy(orbit.states[t])) << ","
          << round12(std::pow(k, static_cast<double>(t)) * d0) << "\n";
    }
    detail::emit_text(csv.str(), opt.output, out);
    return kExitOk;
  }
  json rep = detail::report_skeleton("simulate " + state_file + " " + channel_file,
                                     input_digest(stext + ctext), opt.seed);
  json& res = rep["results"];
  res["steps"] = steps;
  res["contraction_rate"] = round12(k);
  json rows = json::array();
  for (std::size_t t = 0; t < orbit.states.size(); ++t) {
    json row;
    row["step"] = t;
    if (t < orbit.distances_to_fixed_point.size())
      row["distance_to_fixed_point"] = round12(orbit.distances_to_fixed_point[t]);
    row["entropy"] = round12(von_neumann_entropy(orbit.states[t]));
    row["k_power_bound"] = round12(std::pow(k, static_cast<double>(t)) * d0);
    rows.push_back(std::move(row));
  }
  res["orbit"] = std::move(rows);
  if (orbit.fixed_point) res["fixed_point"] = state_to_json(*orbit.fixed_point);
  detail::emit(rep, opt.output, out);
  return kExitOk;
}

inline int cmd_table(double eps, std::vector<int> qubits, const Options& opt, std::ostream& out) {
  if (qubits.empty()) qubits = {20, 40, 60, 80, 100};
  ThresholdTable t = threshold_table(eps, qubits, default_depth_functions());
  if (opt.as_json) {
    json rep = detail::report_skeleton("table", input_digest("table"), opt.seed);
    rep["results"] = table_to_json(t);
    detail::emit(rep, opt.output, out);
    return kExitOk;
  }
  std::ostringstream text;
  if (opt.as_csv) {
    text << "depth";
    for (int n : qubits) text << ",n=" << n;
    text << "\n";
    for (std::size_t r = 0; r < t.row_names.size(); ++r) {
      text << t.row_names[r];
      for (double cell : t.cells[r]) text << "," << detail::sig3(cell);
      text << "\n";
    }
  } else {
    text << "threshold error rate, epsilon = " << detail::sig3(eps) << "\n";
    text << std::left << std::setw(12) << "D(n)";
    for (int n : qubits) text << std::setw(12) << ("n=" + std::to_string(n));
    text << "\n";
    for (std::size_t r = 0; r < t.row_names.size(); ++r) {
      text << std::left << std::setw(12) << t.row_names[r];
      for (double cell : t.cells[r]) text << std::setw(12) << detail::sig3(cell);
      text << "\n";
    }
  }
  detail::emit_text(text.str(), opt.output, out);
  return kExitOk;
}

inline int cmd_nmr(double ns, double tau, double tth, const Options& opt, std::ostream& out) {
  NmrCaseStudy s = nmr_case_study(ns, tau, tth);
  json rep = detail::report_skeleton("nmr", input_digest("nmr"), opt.seed);
  json& res = rep["results"];
  res["N_S"] = round12(ns);
  res["tau_s"] = round12(tau);
  res["T_th_s"] = round12(tth);
  res["epsilon_exact"] = round12(s.epsilon_exact);
  res["epsilon_order"] = round12(s.epsilon_order);
  res["k"] = round12(s.k);
  res["n_max"] = round12(s.n_max);
  detail::emit(rep, opt.output, out);
  return kExitOk;
}

inline int cmd_entropy_budget(const std::string& params_file, const Options& opt,
                              std::ostream& out) {
  std::string text = detail::read_file(params_file);
  EntropyEnergyParams p = params_from_json(detail::parse_json(text, params_file));
  json rep = detail::report_skeleton("entropy-budget " + params_file, input_digest(text), opt.seed);
  json& res = rep["results"];
  res["params"] = params_to_json(p);
  res["n_max_weak_noise"] = round12(n_max_weak_noise(p));
  try {
    res["n_max_entropy"] = n_max_entropy(p);
  } catch (const ConditionViolated& e) {
    rep["warnings"].push_back(std::string("condition violated: ") + e.what());
    detail::emit(rep, opt.output, out);
    return kExitNegative;
  }
  detail::emit(rep, opt.output, out);
  return kExitOk;
}

inline int cmd_toric(int k, bool brute, const Options& opt, std::ostream& out) {
  ToricLattice lat = build_lattice(k);
  StabilizerGroupReport sg = protected_dimension(lat);
  CommutationReport comm = check_commutation(lat);
  json rep = detail::report_skeleton("toric k=" + std::to_string(k),
                                     input_digest("toric" + std::to_string(k)), opt.seed);
  json& res = rep["results"];
  res["lattice"] = lattice_to_json(lat);
  res["all_commute"] = comm.all_commute;
  res["generator_count"] = sg.generator_count;
  res["independent_count"] = sg.independent_count;
  res["code_dimension"] = sg.code_dimension;
  if (brute) {
    GroundSpaceReport gs = ground_space_degeneracy_bruteforce(lat);
    res["ground_energy"] = round12(gs.ground_energy);
    res["ground_degeneracy"] = gs.degeneracy;
    res["excitation_gap"] = round12(gs.gap);
  }
  detail::emit(rep, opt.output, out);
  return kExitOk;
}

inline int cmd_paper_check(const Options& opt, std::ostream& out) {
  auto results = acceptance::run_all();
  std::ostringstream text;
  bool all = true;
  for (const auto& r : results) {
    text << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name;
    if (!r.pass) text << " [" << r.detail << "]";
    text << "\n";
    all = all && r.pass;
  }
  text << (all ? "all criteria passed\n" : "some criteria FAILED\n");
  detail::emit_text(text.str(), opt.output, out);
  return all ? kExitOk : kExitNegative;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"analysis of finite-dimensional quantum channels as relaxation dynamics"};
  app.require_subcommand(0, 1);

  Options opt;
  if (const char* env = std::getenv("QCHAN_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  app.add_option("--seed", opt.seed, "seed for all sampling");
  app.add_option("--tolerance", opt.tolerance, "validation tolerance");
  app.add_flag("--json", opt.as_json, "emit a JSON report");
  app.add_flag("--csv", opt.as_csv, "emit CSV where applicable");
  app.add_option("--output", opt.output, "write the report to a file");
  bool paper_check = false;
  app.add_flag("--paper-check", paper_check, "run the built-in acceptance scenarios");

  std::string channel_file, state_file, params_file;
  int steps = 10;
  double eps = 1e-17;
  std::vector<int> qubits;
  double ns = 1e23, tau = 0.045, tth = 2.8;
  int toric_k = 2;
  bool toric_brute = false;

  CLI::App* analyze = app.add_subcommand("analyze", "validate a channel and report its relaxation profile");
  analyze->add_option("channel", channel_file, "channel JSON file (Kraus list or builtin spec)")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "iterate noise on a register state");
  simulate->add_option("state", state_file, "initial state JSON file")->required();
  simulate->add_option("channel", channel_file, "noise channel JSON file")->required();
  simulate->add_option("--steps", steps, "number of iterations");

  CLI::App* table = app.add_subcommand("table", "threshold error-rate table");
  table->add_option("--epsilon", eps, "measurement precision");
  table->add_option("--qubits", qubits, "qubit counts (columns)");

  CLI::App* nmr = app.add_subcommand("nmr", "bulk spin-resonance case study");
  nmr->add_option("--ns", ns, "number of molecules in the sample");
  nmr->add_option("--tau", tau, "single-step duration in seconds");
  nmr->add_option("--tth", tth, "thermal relaxation time in seconds");

  CLI::App* budget = app.add_subcommand("entropy-budget", "entropy-energy n_max calculators");
  budget->add_option("params", params_file, "parameter JSON file")->required();

  CLI::App* toric = app.add_subcommand("toric", "toric-code stabilizer report");
  toric->add_option("--k", toric_k, "lattice size");
  toric->add_flag("--brute", toric_brute, "dense ground-space check (k = 2 only)");

  CLI::App* check = app.add_subcommand("paper-check", "run the built-in acceptance scenarios");

  std::vector<const char*> argv;
  argv.push_back("qchan");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "argument error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (paper_check || check->parsed()) return cmd_paper_check(opt, out);
    if (analyze->parsed()) return cmd_analyze(channel_file, opt, out);
    if (simulate->parsed()) return cmd_simulate(state_file, channel_file, steps, opt, out);
    if (table->parsed()) return cmd_table(eps, qubits, opt, out);
    if (nmr->parsed()) return cmd_nmr(ns, tau, tth, opt, out);
    if (budget->parsed()) return cmd_entropy_budget(params_file, opt, out);
    if (toric->parsed()) return cmd_toric(toric_k, toric_brute, opt, out);
    out << app.help();
    return kExitOk;
  } catch (const ConditionViolated& e) {
    err << "analysis negative: " << e.what() << "\n";
    return kExitNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace qchan::cli
