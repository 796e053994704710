#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qchan/cli.hpp"

using namespace qchan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qchan_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& content) {
    fs::path p = path / name;
    std::ofstream f(p);
    f << content;
    return p.string();
  }
};

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json strip_timestamp(const std::string& text) {
  json j = json::parse(text);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("analyze a builtin depolarizing channel") {
  TempDir tmp;
  std::string file = tmp.write("dep.json", R"({"builtin":"depolarizing","params":{"d":2,"p":0.3}})");
  CliRun r = run_cli({"--seed", "5", "analyze", file});
  REQUIRE(r.exit_code == cli::kExitOk);
  json rep = json::parse(r.out);
  const json& res = rep["results"];
  CHECK(res["completely_positive"] == true);
  CHECK(res["bistochastic"] == true);
  CHECK(std::abs(res["modulus"]["k_exact"].get<double>() - 0.7) < 1e-9);
  CHECK(std::abs(res["spectral_gap"].get<double>() - 0.51) < 1e-9);
  CHECK(res["commutant"]["dimension"] == 1);
  CHECK(std::abs(res["mixing_rate"].get<double>() - 0.7) < 1e-9);
  // fixed point is 1/2
  json fp = res["fixed_point"]["rho_fixed"];
  CHECK(std::abs(fp["re"][0][0].get<double>() - 0.5) < 1e-9);
  CHECK(std::abs(fp["re"][1][1].get<double>() - 0.5) < 1e-9);
  CHECK(res["fixed_point"]["unique"] == true);
}

TEST_CASE("analyze amplitude damping: k = 0.9 and a pure fixed point") {
  TempDir tmp;
  std::string file =
      tmp.write("ad.json", R"({"builtin":"amplitude_damping","params":{"gamma":0.19}})");
  CliRun r = run_cli({"analyze", file});
  REQUIRE(r.exit_code == cli::kExitOk);
  json rep = json::parse(r.out);
  CHECK(std::abs(rep["results"]["modulus"]["k_exact"].get<double>() - 0.9) < 1e-9);
  json fp = rep["results"]["fixed_point"]["rho_fixed"];
  CHECK(std::abs(fp["re"][0][0].get<double>() - 1.0) < 1e-8);
}

TEST_CASE("analyze rejects malformed input with exit 2") {
  TempDir tmp;
  std::string file = tmp.write("bad.json", "{not json");
  CliRun r = run_cli({"analyze", file});
  CHECK(r.exit_code == cli::kExitInput);
  CHECK(r.err.find("error") != std::string::npos);

  CliRun missing = run_cli({"analyze", (tmp.path / "does_not_exist.json").string()});
  CHECK(missing.exit_code == cli::kExitInput);

  std::string nonchannel = tmp.write("notch.json", R"({"kraus":[{"re":[[1,0],[0,0]]}]})");
  CliRun invalid = run_cli({"analyze", nonchannel});
  CHECK(invalid.exit_code == cli::kExitInput);
  CHECK(invalid.err.find("identity") != std::string::npos);  // names the violated invariant
}

TEST_CASE("simulate emits the orbit CSV") {
  TempDir tmp;
  std::string state = tmp.write("state.json", R"({"dim":2,"re":[[1,0],[0,0]]})");
  std::string channel =
      tmp.write("dep.json", R"({"builtin":"depolarizing","params":{"d":2,"p":0.1}})");
  CliRun r = run_cli({"simulate", state, channel, "--steps", "10", "--csv"});
  REQUIRE(r.exit_code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "step,distance_to_fixed_point,entropy,k_power_bound");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  REQUIRE(rows.size() == 11);
  // distance to 1/2 starts at 1 and contracts by 0.9 each step
  CHECK(std::abs(rows[0][1] - 1.0) < 1e-9);
  CHECK(std::abs(rows[10][1] - std::pow(0.9, 10)) < 1e-9);
  // entropy never decreases for bistochastic noise
  for (std::size_t t = 1; t < rows.size(); ++t) CHECK(rows[t][2] >= rows[t - 1][2] - 1e-9);
  // the k^n bound column dominates the distance column
  for (const auto& row : rows) CHECK(row[1] <= row[3] + 1e-9);
}

TEST_CASE("simulate with steps 0 prints header plus one row") {
  TempDir tmp;
  std::string state = tmp.write("state.json", R"({"dim":2,"re":[[0.5,0],[0,0.5]]})");
  std::string channel =
      tmp.write("dep.json", R"({"builtin":"depolarizing","params":{"d":2,"p":0.1}})");
  CliRun r = run_cli({"simulate", state, channel, "--steps", "0", "--csv"});
  REQUIRE(r.exit_code == cli::kExitOk);
  int newlines = 0;
  for (char ch : r.out) newlines += (ch == '\n');
  CHECK(newlines == 2);
}

TEST_CASE("table defaults reproduce the printed threshold cells") {
  CliRun r = run_cli({"table"});
  REQUIRE(r.exit_code == cli::kExitOk);
  // rendered at 3 significant figures; each cell sits within one unit in the
  // third digit of the printed table
  CHECK(r.out.find("0.864") != std::string::npos);
  CHECK(r.out.find("0.00497") != std::string::npos);
  CHECK(r.out.find("3.54e-14") != std::string::npos);

  CliRun rj = run_cli({"--json", "table"});
  json rep = json::parse(rj.out);
  CHECK(std::abs(rep["results"]["rows"][1]["cells"][0].get<double>() - 0.863) < 1e-3);
}

TEST_CASE("nmr command reports the case-study numbers") {
  CliRun r = run_cli({"nmr", "--ns", "1e23", "--tau", "0.045", "--tth", "2.8"});
  REQUIRE(r.exit_code == cli::kExitOk);
  json rep = json::parse(r.out);
  CHECK(std::abs(rep["results"]["n_max"].get<double>() - 3525) < 36);
  CliRun r2 = run_cli({"nmr", "--tth", "45.4"});
  json rep2 = json::parse(r2.out);
  CHECK(std::abs(rep2["results"]["n_max"].get<double>() - 57152) < 572);
}

TEST_CASE("entropy-budget exit codes distinguish negative analyses") {
  TempDir tmp;
  std::string good = tmp.write(
      "good.json", R"({"beta":1.0,"E_max":0.002,"epsilon":0.1,"N":30,"k":0.9,"delta":0.01})");
  CliRun r = run_cli({"entropy-budget", good});
  REQUIRE(r.exit_code == cli::kExitOk);
  json rep = json::parse(r.out);
  CHECK(rep["results"]["n_max_entropy"] == 2);

  std::string violated = tmp.write(
      "bad.json", R"({"beta":1.0,"E_max":0.1,"epsilon":0.1,"N":30,"k":0.9,"delta":0.01})");
  CliRun rv = run_cli({"entropy-budget", violated});
  CHECK(rv.exit_code == cli::kExitNegative);

  std::string malformed = tmp.write("malformed.json", "[1, 2");
  CHECK(run_cli({"entropy-budget", malformed}).exit_code == cli::kExitInput);
}

TEST_CASE("toric command") {
  CliRun r = run_cli({"toric", "--k", "2", "--brute"});
  REQUIRE(r.exit_code == cli::kExitOk);
  json rep = json::parse(r.out);
  CHECK(rep["results"]["code_dimension"] == 4);
  CHECK(rep["results"]["all_commute"] == true);
  CHECK(rep["results"]["ground_degeneracy"] == 4);
  CHECK(std::abs(rep["results"]["ground_energy"].get<double>() + 8.0) < 1e-8);

  CliRun r3 = run_cli({"toric", "--k", "3"});
  json rep3 = json::parse(r3.out);
  CHECK(rep3["results"]["code_dimension"] == 4);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  TempDir tmp;
  std::string file = tmp.write("ad.json", R"({"builtin":"amplitude_damping","params":{"gamma":0.3}})");
  CliRun a = run_cli({"--seed", "42", "analyze", file});
  CliRun b = run_cli({"--seed", "42", "analyze", file});
  REQUIRE(a.exit_code == cli::kExitOk);
  CHECK(strip_timestamp(a.out).dump() == strip_timestamp(b.out).dump());

  CliRun c = run_cli({"--seed", "43", "analyze", file});
  CHECK(strip_timestamp(a.out)["seed"] != strip_timestamp(c.out)["seed"]);
}

TEST_CASE("output file writing") {
  TempDir tmp;
  std::string out_path = (tmp.path / "report.json").string();
  CliRun r = run_cli({"--output", out_path, "nmr"});
  REQUIRE(r.exit_code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(out_path);
  REQUIRE(f.good());
  json rep;
  f >> rep;
  CHECK(rep.contains("results"));
}
