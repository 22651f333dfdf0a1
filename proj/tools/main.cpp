// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcmor/analysis.hpp"
#include "rcmor/errors.hpp"
#include "rcmor/mna.hpp"
#include "rcmor/model_io.hpp"
#include "rcmor/netlist.hpp"
#include "rcmor/reduce.hpp"
#include "rcmor/synthetic.hpp"

namespace
{

using namespace rcmor;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNumericalError = 1;
constexpr int kUsageError = 2;

std::vector<double> parse_point_list(const std::string &text)
{
  std::vector<double> points;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
  {
    if (tok.empty())
    {
      throw std::invalid_argument("empty entry in point list '" + text + "'");
    }
    points.push_back(parse_engineering_value(tok));
  }
  if (points.empty())
  {
    throw std::invalid_argument("no points given");
  }
  return points;
}

int parse_int_token(const std::string &tok)
{
  int v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
  {
    throw std::invalid_argument("bad integer: '" + tok + "'");
  }
  return v;
}

FrequencyGrid parse_grid(const std::string &text, bool include_zero)
{
  auto first = text.find(':');
  auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos)
  {
    throw std::invalid_argument("grid must be lo:hi:count, got '" + text + "'");
  }
  double lo = parse_engineering_value(text.substr(0, first));
  double hi = parse_engineering_value(text.substr(first + 1, second - first - 1));
  int count = parse_int_token(text.substr(second + 1));
  return FrequencyGrid::log_points(lo, hi, count, include_zero);
}

Axis parse_axis(const std::string &name)
{
  return name == "real" ? Axis::kReal : Axis::kImaginary;
}

// Owns whichever representation was loaded; ref() views it.
struct LoadedSystem
{
  std::optional<MnaSystem> mna;
  std::optional<ReducedSystem> reduced;

  SystemRef ref() const { return mna ? SystemRef(*mna) : SystemRef(*reduced); }
};

LoadedSystem load_input(const std::string &netlist, const std::vector<std::string> &triplets,
                        const std::string &model)
{
  int given = int(!netlist.empty()) + int(!triplets.empty()) + int(!model.empty());
  if (given != 1)
  {
    throw std::invalid_argument("give exactly one input: --netlist, --triplets, or --model");
  }
  LoadedSystem in;
  if (!netlist.empty())
  {
    in.mna = assemble_mna(parse_netlist_file(netlist));
  }
  else if (!triplets.empty())
  {
    in.mna = load_sparse_triplets(triplets[0], triplets[1], triplets[2]);
  }
  else
  {
    in.reduced = load_reduced(model);
  }
  return in;
}

struct GenArgs
{
  std::string topology = "ladder";
  int nodes = 16;
  int ports = 1;
  std::uint64_t seed = 0;
  double r_min = 1.0;
  double r_max = 1e4;
  double c_min = 1e-15;
  double c_max = 1e-12;
  std::string out;
};

int run_gen(const GenArgs &a)
{
  SyntheticSpec spec;
  spec.topology = a.topology == "mesh"   ? Topology::kMesh
                  : a.topology == "tree" ? Topology::kTree
                                         : Topology::kLadder;
  spec.nodes = a.nodes;
  spec.ports = a.ports;
  spec.seed = a.seed;
  spec.r_min = a.r_min;
  spec.r_max = a.r_max;
  spec.c_min = a.c_min;
  spec.c_max = a.c_max;
  Netlist nl = gen_synthetic(spec);
  std::string title = a.topology + " nodes=" + std::to_string(a.nodes) +
                      " ports=" + std::to_string(a.ports) + " seed=" + std::to_string(a.seed);
  if (a.out == "-")
  {
    std::cout << to_netlist_text(nl, title);
  }
  else
  {
    save_netlist(nl, a.out, title);
  }
  return kOk;
}

struct ReduceArgs
{
  std::string netlist;
  std::vector<std::string> triplets;
  std::string method = "smp";
  std::string points_text = "0";
  double eta = 20.0;
  double delta = 1e-6;
  bool no_sparsity = false;
  bool no_deflation = false;
  std::string config;
  std::string out = "model.json";
};

struct ReduceOptionSet
{
  CLI::Option *method = nullptr;
  CLI::Option *points = nullptr;
  CLI::Option *eta = nullptr;
  CLI::Option *delta = nullptr;
  CLI::Option *no_sparsity = nullptr;
  CLI::Option *no_deflation = nullptr;
};

int run_reduce(ReduceArgs &a, const ReduceOptionSet &set)
{
  std::vector<double> points;
  bool points_from_cli = set.points->count() > 0;
  bool sparsity = !a.no_sparsity;
  bool deflation = !a.no_deflation;

  if (!a.config.empty())
  {
    std::ifstream in(a.config);
    if (!in)
    {
      throw std::runtime_error("cannot read " + a.config);
    }
    json cfg;
    try
    {
      in >> cfg;
    }
    catch (const json::exception &e)
    {
      throw std::runtime_error(a.config + ": " + e.what());
    }
    try
    {
      if (!set.method->count() && cfg.contains("method"))
      {
        a.method = cfg.at("method").get<std::string>();
      }
      if (!points_from_cli && cfg.contains("points"))
      {
        points = cfg.at("points").get<std::vector<double>>();
      }
      if (!set.eta->count() && cfg.contains("eta"))
      {
        a.eta = cfg.at("eta").get<double>();
      }
      if (!set.delta->count() && cfg.contains("delta"))
      {
        a.delta = cfg.at("delta").get<double>();
      }
      if (!set.no_sparsity->count() && cfg.contains("sparsity_control"))
      {
        sparsity = cfg.at("sparsity_control").get<bool>();
      }
      if (!set.no_deflation->count() && cfg.contains("deflation"))
      {
        deflation = cfg.at("deflation").get<bool>();
      }
    }
    catch (const json::exception &e)
    {
      throw std::invalid_argument(a.config + ": " + e.what());
    }
  }
  if (points.empty())
  {
    points = parse_point_list(a.points_text);
  }
  static const std::vector<std::string> kMethods = {"smp", "sip", "turbomor", "prima"};
  if (std::find(kMethods.begin(), kMethods.end(), a.method) == kMethods.end())
  {
    throw std::invalid_argument("unknown method '" + a.method + "'");
  }

  LoadedSystem in = load_input(a.netlist, a.triplets, "");
  const MnaSystem &sys = *in.mna;

  ReductionOptions opts;
  opts.eta = a.eta;
  opts.delta = a.delta;
  opts.sparsity_control = sparsity;
  opts.deflation = deflation;

  auto start = std::chrono::steady_clock::now();
  ReducedSystem rs;
  if (a.method == "smp")
  {
    rs = smp_reduce(sys, ExpansionSchedule(points), opts);
  }
  else if (a.method == "sip")
  {
    if (points.size() != 1)
    {
      throw std::invalid_argument("sip takes exactly one expansion point");
    }
    rs = sip_reduce(sys, points[0]);
  }
  else if (a.method == "turbomor")
  {
    for (double s : points)
    {
      if (s != 0.0)
      {
        throw std::invalid_argument("turbomor expands at zero; give one 0 per stage");
      }
    }
    rs = turbomor_reduce(sys, static_cast<int>(points.size()));
  }
  else
  {
    for (double s : points)
    {
      if (s != points[0])
      {
        throw std::invalid_argument("prima uses a single expansion point; repeat it per block");
      }
    }
    rs = prima_reduce(sys, static_cast<int>(points.size()), points[0]);
  }
  auto stop = std::chrono::steady_clock::now();

  save_reduced(rs, a.out);

  json report;
  report["schema"] = 1;
  report["method"] = a.method;
  report["input"] = {{"dim", sys.dim()},
                     {"ports", sys.ports},
                     {"nnz_g", sys.g.nnz_full()},
                     {"nnz_c", sys.c.nnz_full()}};
  report["model"] = {{"dim", rs.dim()},
                     {"ports", rs.ports},
                     {"blocks", rs.block_sizes},
                     {"points", rs.points},
                     {"nnz_g", rs.g_hat.nnz_full()},
                     {"nnz_c", rs.c_hat.nnz_full()},
                     {"nnz_union", SymSparse::pattern_union_nnz_full(rs.g_hat, rs.c_hat)}};
  report["options"] = {{"eta", opts.eta},
                       {"delta", opts.delta},
                       {"sparsity_control", opts.sparsity_control},
                       {"deflation", opts.deflation},
                       {"points", points}};
  report["wall_ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
  report["out"] = a.out;
  std::cout << report.dump(2) << '\n';
  return kOk;
}

struct SweepArgs
{
  std::string netlist;
  std::vector<std::string> triplets;
  std::string model;
  std::string grid = "1:1e13:100";
  std::string axis = "imag";
  bool no_zero = false;
  std::string out;
};

int run_sweep(const SweepArgs &a)
{
  LoadedSystem in = load_input(a.netlist, a.triplets, a.model);
  FrequencyGrid grid = parse_grid(a.grid, !a.no_zero);
  Sweep sw = sweep(in.ref(), grid, parse_axis(a.axis));
  if (a.out == "-")
  {
    write_sweep_csv(sw, std::cout);
  }
  else
  {
    save_sweep_csv(sw, a.out);
  }
  return kOk;
}

struct CompareArgs
{
  std::string netlist;
  std::vector<std::string> triplets;
  std::string model;
  std::string grid = "1:1e13:100";
  std::string axis = "imag";
  bool no_zero = false;
  std::string out;
};

int run_compare(const CompareArgs &a)
{
  LoadedSystem full = load_input(a.netlist, a.triplets, "");
  if (a.model.empty())
  {
    throw std::invalid_argument("--model is required");
  }
  ReducedSystem rs = load_reduced(a.model);
  FrequencyGrid grid = parse_grid(a.grid, !a.no_zero);
  Axis axis = parse_axis(a.axis);
  ErrorCurve curve = relative_errors(full.ref(), SystemRef(rs), grid, axis);
  if (!a.out.empty())
  {
    save_error_csv(curve, axis, a.out);
  }

  json report;
  report["schema"] = 1;
  report["axis"] = a.axis;
  report["grid_points"] = grid.freqs.size();
  report["used_points"] = curve.freqs.size();
  report["max_rel_error"] = curve.max_error;
  std::cout << report.dump(2) << '\n';
  return kOk;
}

struct MomentsArgs
{
  std::string netlist;
  std::vector<std::string> triplets;
  std::string model;
  std::string point = "0";
  int count = 3;
};

int run_moments(const MomentsArgs &a)
{
  LoadedSystem in = load_input(a.netlist, a.triplets, a.model);
  double s0 = parse_engineering_value(a.point);
  std::vector<DenseMatrix> ms = moments(in.ref(), s0, a.count);

  json rows = json::array();
  for (const DenseMatrix &m : ms)
  {
    json mat = json::array();
    for (Eigen::Index i = 0; i < m.rows(); i++)
    {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); j++)
      {
        row.push_back(m(i, j));
      }
      mat.push_back(row);
    }
    rows.push_back(mat);
  }

  json report;
  report["schema"] = 1;
  report["point"] = s0;
  report["count"] = a.count;
  report["ports"] = in.ref().ports;
  report["moments"] = rows;
  std::cout << report.dump(2) << '\n';
  return kOk;
}

void add_input_options(CLI::App *cmd, std::string &netlist, std::vector<std::string> &triplets,
                       std::string *model)
{
  cmd->add_option("--netlist", netlist, "RC netlist file");
  cmd->add_option("--triplets", triplets, "G, C, and port-name files")->expected(3);
  if (model)
  {
    cmd->add_option("--model", *model, "reduced model descriptor (JSON)");
  }
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"moment-matching reduction of many-port RC networks"};
  app.require_subcommand(1);

  GenArgs ga;
  CLI::App *gen = app.add_subcommand("gen", "generate a synthetic RC netlist");
  gen->add_option("--topology", ga.topology, "ladder, mesh, or tree")
      ->check(CLI::IsMember({"ladder", "mesh", "tree"}));
  gen->add_option("--nodes", ga.nodes, "non-ground node count");
  gen->add_option("--ports", ga.ports, "port count");
  gen->add_option("--seed", ga.seed, "generator seed");
  gen->add_option("--r-min", ga.r_min, "resistor range low (ohms)");
  gen->add_option("--r-max", ga.r_max, "resistor range high (ohms)");
  gen->add_option("--c-min", ga.c_min, "capacitor range low (farads)");
  gen->add_option("--c-max", ga.c_max, "capacitor range high (farads)");
  gen->add_option("--out", ga.out, "output netlist path, - for stdout")->required();

  ReduceArgs ra;
  ReduceOptionSet rset;
  CLI::App *reduce = app.add_subcommand("reduce", "reduce a network to a compact model");
  add_input_options(reduce, ra.netlist, ra.triplets, nullptr);
  rset.method = reduce->add_option("--method", ra.method, "smp, sip, turbomor, or prima")
                    ->check(CLI::IsMember({"smp", "sip", "turbomor", "prima"}));
  rset.points = reduce->add_option("--points", ra.points_text,
                                   "comma-separated expansion points, e.g. 0,1e9,1e12");
  rset.eta = reduce->add_option("--eta", ra.eta, "fill budget per retained column");
  rset.delta = reduce->add_option("--delta", ra.delta, "deflation cutoff");
  rset.no_sparsity = reduce->add_flag("--no-sparsity-control", ra.no_sparsity,
                                      "eliminate the whole interior regardless of fill");
  rset.no_deflation =
      reduce->add_flag("--no-deflation", ra.no_deflation, "keep rank-deficient couplings");
  reduce->add_option("--config", ra.config, "JSON settings file; explicit flags win");
  reduce->add_option("--out", ra.out, "model descriptor path");

  SweepArgs sa;
  CLI::App *sweep_cmd = app.add_subcommand("sweep", "tabulate H over a frequency grid");
  add_input_options(sweep_cmd, sa.netlist, sa.triplets, &sa.model);
  sweep_cmd->add_option("--grid", sa.grid, "lo:hi:count, log spaced");
  sweep_cmd->add_option("--axis", sa.axis, "real or imag")
      ->check(CLI::IsMember({"real", "imag"}));
  sweep_cmd->add_flag("--no-zero", sa.no_zero, "omit the f = 0 grid point");
  sweep_cmd->add_option("--out", sa.out, "CSV path, - for stdout")->required();

  CompareArgs ca;
  CLI::App *compare = app.add_subcommand("compare", "error of a model against its network");
  add_input_options(compare, ca.netlist, ca.triplets, &ca.model);
  compare->add_option("--grid", ca.grid, "lo:hi:count, log spaced");
  compare->add_option("--axis", ca.axis, "real or imag")
      ->check(CLI::IsMember({"real", "imag"}));
  compare->add_flag("--no-zero", ca.no_zero, "omit the f = 0 grid point");
  compare->add_option("--out", ca.out, "also write the error curve as CSV");

  MomentsArgs ma;
  CLI::App *moments_cmd = app.add_subcommand("moments", "Taylor coefficients about a point");
  add_input_options(moments_cmd, ma.netlist, ma.triplets, &ma.model);
  moments_cmd->add_option("--point", ma.point, "expansion point");
  moments_cmd->add_option("--count", ma.count, "number of moments");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  try
  {
    if (gen->parsed())
    {
      return run_gen(ga);
    }
    if (reduce->parsed())
    {
      return run_reduce(ra, rset);
    }
    if (sweep_cmd->parsed())
    {
      return run_sweep(sa);
    }
    if (compare->parsed())
    {
      return run_compare(ca);
    }
    return run_moments(ma);
  }
  catch (const NotPositiveDefinite &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  catch (const SingularAtPoint &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericalError;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
