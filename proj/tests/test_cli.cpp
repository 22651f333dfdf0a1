// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcmor/analysis.hpp"
#include "rcmor/mna.hpp"
#include "rcmor/model_io.hpp"
#include "rcmor/netlist.hpp"
#include "rcmor/reduce.hpp"

using namespace rcmor;
using nlohmann::json;

namespace
{

namespace fs = std::filesystem;

fs::path scratch()
{
  fs::path dir = fs::temp_directory_path() / "rcmor-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string cli_path()
{
  const char *env = std::getenv("RCMOR_BIN");
  return env ? env : RCMOR_BIN_PATH;
}

struct RunResult
{
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string &args)
{
  static int counter = 0;
  fs::path capture = scratch() / ("stdout-" + std::to_string(counter++) + ".txt");
  std::string cmd = cli_path() + " " + args + " > " + capture.string() + " 2> /dev/null";
  int raw = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  return res;
}

std::string read_file(const fs::path &path)
{
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string &text)
{
  int n = 0;
  for (char ch : text)
  {
    if (ch == '\n')
    {
      n++;
    }
  }
  return n;
}

fs::path write_two_node_netlist()
{
  fs::path path = scratch() / "two_node.sp";
  std::ofstream out(path);
  out << "R1 1 2 1\nR2 2 0 1\nC1 2 0 1\n.ports 1\n";
  return path;
}

fs::path write_dc_singular_netlist()
{
  fs::path path = scratch() / "dc_singular.sp";
  std::ofstream out(path);
  out << "R1 p 0 1\nC1 p x 1p\nC2 x 0 1p\n.ports p\n";
  return path;
}

}  // namespace

TEST_CASE("running without a subcommand is a usage error")
{
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("gen writes a parseable deterministic netlist")
{
  fs::path a = scratch() / "gen-a.sp";
  fs::path b = scratch() / "gen-b.sp";
  std::string flags = "gen --topology mesh --nodes 25 --ports 2 --seed 7 --out ";
  CHECK(run_cli(flags + a.string()).code == 0);
  CHECK(run_cli(flags + b.string()).code == 0);
  CHECK(read_file(a) == read_file(b));

  MnaSystem sys = assemble_mna(parse_netlist_file(a.string()));
  CHECK(sys.dim() == 25);
  CHECK(sys.ports == 2);

  RunResult piped = run_cli("gen --nodes 8 --out -");
  CHECK(piped.code == 0);
  Netlist nl = parse_netlist(piped.out);
  CHECK(nl.ports.size() == 1);
}

TEST_CASE("reduce produces the same model as the library")
{
  fs::path net = scratch() / "reduce-in.sp";
  REQUIRE(run_cli("gen --topology mesh --nodes 36 --ports 2 --seed 11 --out " + net.string())
              .code == 0);
  fs::path model = scratch() / "cli-model.json";
  RunResult res =
      run_cli("reduce --netlist " + net.string() + " --points 0,1e9 --out " + model.string());
  REQUIRE(res.code == 0);

  json report = json::parse(res.out);
  CHECK(report.at("schema").get<int>() == 1);
  CHECK(report.at("method").get<std::string>() == "smp");
  CHECK(report.at("input").at("dim").get<int>() == 36);
  CHECK(report.at("options").at("eta").get<double>() == 20.0);
  CHECK(report.at("wall_ms").get<double>() >= 0.0);

  ReducedSystem from_cli = load_reduced(model.string());
  MnaSystem sys = assemble_mna(parse_netlist_file(net.string()));
  ReducedSystem direct = smp_reduce(sys, ExpansionSchedule({0.0, 1e9}), ReductionOptions{});
  CHECK(report.at("model").at("dim").get<int>() == direct.dim());
  REQUIRE(from_cli.g_hat.nnz_lower() == direct.g_hat.nnz_lower());
  CHECK((from_cli.g_hat.to_dense() - direct.g_hat.to_dense()).norm() == 0.0);
  CHECK((from_cli.c_hat.to_dense() - direct.c_hat.to_dense()).norm() == 0.0);
  CHECK(from_cli.points == direct.points);
  CHECK(from_cli.block_sizes == direct.block_sizes);
}

TEST_CASE("reduce reads config files and explicit flags win")
{
  fs::path net = write_two_node_netlist();
  fs::path cfg = scratch() / "settings.json";
  {
    std::ofstream out(cfg);
    out << R"({"points": [0, 0], "eta": 25.0, "deflation": false})" << '\n';
  }
  fs::path model = scratch() / "cfg-model.json";

  RunResult res = run_cli("reduce --netlist " + net.string() + " --config " + cfg.string() +
                          " --eta 30 --out " + model.string());
  REQUIRE(res.code == 0);
  json report = json::parse(res.out);
  CHECK(report.at("options").at("eta").get<double>() == 30.0);
  CHECK(report.at("options").at("delta").get<double>() == 1e-6);
  CHECK(report.at("options").at("deflation").get<bool>() == false);
  CHECK(report.at("options").at("points").get<std::vector<double>>() ==
        std::vector<double>{0.0, 0.0});
  CHECK(report.at("model").at("blocks").get<std::vector<int>>() == std::vector<int>{1, 1});
}

TEST_CASE("reduce validates its inputs")
{
  fs::path net = write_two_node_netlist();
  CHECK(run_cli("reduce --points 0").code == 2);
  CHECK(run_cli("reduce --netlist " + net.string() + " --method warp").code == 2);
  CHECK(run_cli("reduce --netlist " + net.string() + " --method sip --points 0,1e9").code == 2);
  CHECK(run_cli("reduce --netlist " + net.string() + " --method turbomor --points 1e9").code == 2);
  CHECK(run_cli("reduce --netlist " + net.string() + " --points 0 --eta 0.5").code == 2);
  CHECK(run_cli("reduce --netlist missing.sp --points 0").code == 2);
}

TEST_CASE("reduce reports numerical failure separately")
{
  fs::path net = write_dc_singular_netlist();
  fs::path model = scratch() / "never.json";
  RunResult res =
      run_cli("reduce --netlist " + net.string() + " --points 0 --out " + model.string());
  CHECK(res.code == 1);
}

TEST_CASE("alternative methods run end to end")
{
  fs::path net = scratch() / "methods-in.sp";
  REQUIRE(run_cli("gen --topology ladder --nodes 20 --ports 2 --seed 3 --out " + net.string())
              .code == 0);
  for (std::string flags : {std::string("--method sip --points 0"),
                            std::string("--method turbomor --points 0,0"),
                            std::string("--method prima --points 1e6,1e6")})
  {
    fs::path model = scratch() / "method-model.json";
    RunResult res =
        run_cli("reduce --netlist " + net.string() + " " + flags + " --out " + model.string());
    REQUIRE(res.code == 0);
    json report = json::parse(res.out);
    CHECK(report.at("model").at("dim").get<int>() >= 2);
  }
}

TEST_CASE("sweep writes csv for networks and models")
{
  fs::path net = write_two_node_netlist();
  fs::path csv = scratch() / "sweep.csv";
  RunResult res = run_cli("sweep --netlist " + net.string() + " --grid 1:1e6:5 --out " +
                          csv.string());
  REQUIRE(res.code == 0);
  std::string text = read_file(csv);
  CHECK(count_lines(text) == 1 + 6);
  CHECK(text.rfind("f,i,j,re,im\n", 0) == 0);

  fs::path model = scratch() / "sweep-model.json";
  REQUIRE(run_cli("reduce --netlist " + net.string() + " --points 0 --out " + model.string())
              .code == 0);
  RunResult piped =
      run_cli("sweep --model " + model.string() + " --grid 1:1e3:3 --no-zero --axis real --out -");
  REQUIRE(piped.code == 0);
  CHECK(count_lines(piped.out) == 1 + 3);

  CHECK(run_cli("sweep --netlist " + net.string() + " --model " + model.string() +
                " --out -").code == 2);
  CHECK(run_cli("sweep --netlist " + net.string() + " --grid nonsense --out -").code == 2);
}

TEST_CASE("compare reports the worked example error")
{
  fs::path net = write_two_node_netlist();
  fs::path model = scratch() / "compare-model.json";
  REQUIRE(run_cli("reduce --netlist " + net.string() + " --method sip --points 0 --out " +
                  model.string())
              .code == 0);

  fs::path csv = scratch() / "compare.csv";
  RunResult res = run_cli("compare --netlist " + net.string() + " --model " + model.string() +
                          " --grid 1:1:1 --no-zero --axis real --out " + csv.string());
  REQUIRE(res.code == 0);
  json report = json::parse(res.out);
  CHECK(report.at("axis").get<std::string>() == "real");
  CHECK(report.at("used_points").get<int>() == 1);
  CHECK(report.at("max_rel_error").get<double>() == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  std::string text = read_file(csv);
  CHECK(count_lines(text) == 2);
  CHECK(text.rfind("f,axis,metric,value\n", 0) == 0);

  CHECK(run_cli("compare --netlist " + net.string() + " --grid 1:1:1").code == 2);
}

TEST_CASE("moments prints the worked example series")
{
  fs::path net = write_two_node_netlist();
  RunResult res = run_cli("moments --netlist " + net.string() + " --count 3");
  REQUIRE(res.code == 0);
  json report = json::parse(res.out);
  CHECK(report.at("point").get<double>() == 0.0);
  CHECK(report.at("ports").get<int>() == 1);
  auto ms = report.at("moments");
  REQUIRE(ms.size() == 3);
  CHECK(ms[0][0][0].get<double>() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(ms[1][0][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(ms[2][0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-13));

  CHECK(run_cli("moments --netlist " + net.string() + " --point -1").code == 2);
}
