// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "rcmor/errors.hpp"
#include "number_format.hpp"

namespace rcmor
{

namespace
{

namespace fs = std::filesystem;

std::ofstream open_out(const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write " + path);
  }
  return out;
}

std::ifstream open_in(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot read " + path);
  }
  return in;
}

void finish_out(std::ofstream &out, const std::string &path)
{
  out.flush();
  if (!out.good())
  {
    throw std::runtime_error("write failed: " + path);
  }
}

[[noreturn]] void bad_line(const std::string &path, int lineno, const std::string &what)
{
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

bool next_tokens(std::istream &in, std::string &line, int &lineno)
{
  while (std::getline(in, line))
  {
    lineno++;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
    {
      return true;
    }
  }
  return false;
}

double parse_double_token(const std::string &token)
{
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
  {
    throw std::invalid_argument("bad float: '" + token + "'");
  }
  return v;
}

struct PairAccum
{
  bool has_lower = false;
  bool has_upper = false;
  double lower = 0.0;
  double upper = 0.0;
};

}  // namespace

void save_triplets(const SymSparse &m, const std::string &path)
{
  std::ofstream out = open_out(path);
  out << m.dim() << ' ' << m.nnz_lower() << '\n';
  for (const Triplet &t : m.lower())
  {
    out << t.row << ' ' << t.col << ' ' << format_double(t.value) << '\n';
  }
  finish_out(out, path);
}

SymSparse load_triplets(const std::string &path, LoadStats *stats)
{
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  if (!next_tokens(in, line, lineno))
  {
    bad_line(path, lineno, "missing 'dim nnz' header");
  }
  int dim = 0;
  long long count = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> dim >> count) || dim < 0 || count < 0)
    {
      bad_line(path, lineno, "bad 'dim nnz' header: " + line);
    }
  }

  std::map<std::pair<int, int>, PairAccum> pairs;
  for (long long k = 0; k < count; k++)
  {
    if (!next_tokens(in, line, lineno))
    {
      bad_line(path, lineno, "expected " + std::to_string(count) + " entries, file ended early");
    }
    std::istringstream row(line);
    int i = 0, j = 0;
    std::string vtok;
    if (!(row >> i >> j >> vtok))
    {
      bad_line(path, lineno, "bad triplet line: " + line);
    }
    double v = 0.0;
    try
    {
      v = parse_double_token(vtok);
    }
    catch (const std::invalid_argument &e)
    {
      bad_line(path, lineno, e.what());
    }
    PairAccum &acc = pairs[{std::max(i, j), std::min(i, j)}];
    if (i >= j)
    {
      acc.lower += v;
      acc.has_lower = true;
    }
    else
    {
      acc.upper += v;
      acc.has_upper = true;
    }
  }

  std::vector<Triplet> trips;
  trips.reserve(pairs.size());
  for (const auto &[coord, acc] : pairs)
  {
    double v = 0.0;
    if (acc.has_lower && acc.has_upper)
    {
      double scale = std::max(std::abs(acc.lower), std::abs(acc.upper));
      double rel = scale > 0.0 ? std::abs(acc.lower - acc.upper) / scale : 0.0;
      if (stats)
      {
        stats->max_rel_asymmetry = std::max(stats->max_rel_asymmetry, rel);
        if (rel > 1e-12)
        {
          stats->asymmetric_pairs++;
        }
      }
      v = 0.5 * (acc.lower + acc.upper);
    }
    else
    {
      v = acc.has_lower ? acc.lower : acc.upper;
    }
    trips.push_back({coord.first, coord.second, v});
  }
  return SymSparse::from_triplets(dim, std::move(trips));
}

void save_dense(const DenseMatrix &m, const std::string &path)
{
  std::ofstream out = open_out(path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); i++)
  {
    for (Eigen::Index j = 0; j < m.cols(); j++)
    {
      out << format_double(m(i, j)) << '\n';
    }
  }
  finish_out(out, path);
}

DenseMatrix load_dense(const std::string &path)
{
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  if (!next_tokens(in, line, lineno))
  {
    bad_line(path, lineno, "missing 'rows cols' header");
  }
  long long rows = 0, cols = 0;
  {
    std::istringstream hdr(line);
    if (!(hdr >> rows >> cols) || rows < 0 || cols < 0)
    {
      bad_line(path, lineno, "bad 'rows cols' header: " + line);
    }
  }
  DenseMatrix m(rows, cols);
  for (long long i = 0; i < rows; i++)
  {
    for (long long j = 0; j < cols; j++)
    {
      if (!next_tokens(in, line, lineno))
      {
        bad_line(path, lineno, "file ended before all values were read");
      }
      std::istringstream row(line);
      std::string vtok;
      row >> vtok;
      try
      {
        m(i, j) = parse_double_token(vtok);
      }
      catch (const std::invalid_argument &e)
      {
        bad_line(path, lineno, e.what());
      }
    }
  }
  return m;
}

void save_ports(const std::vector<std::string> &names, const std::string &path)
{
  std::ofstream out = open_out(path);
  for (const std::string &name : names)
  {
    out << name << '\n';
  }
  finish_out(out, path);
}

std::vector<std::string> load_ports(const std::string &path)
{
  std::ifstream in = open_in(path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line))
  {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
    {
      line.pop_back();
    }
    if (!line.empty())
    {
      names.push_back(line);
    }
  }
  return names;
}

void save_mna(const MnaSystem &sys, const std::string &g_path, const std::string &c_path,
              const std::string &ports_path)
{
  save_triplets(sys.g, g_path);
  save_triplets(sys.c, c_path);
  std::vector<std::string> port_names(sys.node_names.begin(),
                                      sys.node_names.begin() + sys.ports);
  save_ports(port_names, ports_path);
}

MnaSystem load_sparse_triplets(const std::string &g_path, const std::string &c_path,
                               const std::string &ports_path, LoadStats *stats)
{
  MnaSystem sys;
  sys.g = load_triplets(g_path, stats);
  sys.c = load_triplets(c_path, stats);
  if (sys.g.dim() != sys.c.dim())
  {
    throw DimensionMismatch("conductance is " + std::to_string(sys.g.dim()) + "-dimensional but capacitance is " +
                            std::to_string(sys.c.dim()) + "-dimensional");
  }
  sys.node_names = load_ports(ports_path);
  sys.ports = static_cast<int>(sys.node_names.size());
  if (sys.ports > sys.g.dim())
  {
    throw DimensionMismatch("ports file names " + std::to_string(sys.ports) +
                            " nodes but the system has " + std::to_string(sys.g.dim()));
  }
  for (int k = sys.ports; k < sys.g.dim(); k++)
  {
    sys.node_names.push_back("n" + std::to_string(k));
  }
  return sys;
}

void save_reduced(const ReducedSystem &sys, const std::string &meta_path)
{
  fs::path meta(meta_path);
  fs::path base = meta;
  if (base.extension() == ".json")
  {
    base.replace_extension();
  }
  std::string stem = base.filename().string();
  if (stem.empty())
  {
    throw std::runtime_error("cannot write " + meta_path);
  }
  fs::path dir = meta.parent_path();

  std::string g_name = stem + ".G.mtx";
  std::string c_name = stem + ".C.mtx";
  save_triplets(sys.g_hat, (dir / g_name).string());
  save_triplets(sys.c_hat, (dir / c_name).string());

  std::vector<std::string> port_names = sys.port_names;
  if (static_cast<int>(port_names.size()) != sys.ports)
  {
    port_names.clear();
    for (int i = 0; i < sys.ports; i++)
    {
      port_names.push_back("p" + std::to_string(i));
    }
  }

  nlohmann::json j;
  j["schema"] = 1;
  j["blocks"] = sys.block_sizes;
  j["points"] = sys.points;
  j["ports"] = port_names;
  j["files"] = {{"G", g_name}, {"C", c_name}};
  if (sys.b_dense)
  {
    std::string b_name = stem + ".B.mtx";
    save_dense(*sys.b_dense, (dir / b_name).string());
    j["files"]["B"] = b_name;
  }

  std::ofstream out = open_out(meta_path);
  out << j.dump(2) << '\n';
  finish_out(out, meta_path);
}

ReducedSystem load_reduced(const std::string &meta_path)
{
  std::ifstream in = open_in(meta_path);
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch (const nlohmann::json::exception &e)
  {
    throw std::runtime_error(meta_path + ": " + e.what());
  }

  ReducedSystem sys;
  try
  {
    if (j.at("schema").get<int>() != 1)
    {
      throw std::runtime_error(meta_path + ": unsupported schema");
    }
    sys.block_sizes = j.at("blocks").get<std::vector<int>>();
    sys.points = j.at("points").get<std::vector<double>>();
    sys.port_names = j.at("ports").get<std::vector<std::string>>();
    sys.ports = static_cast<int>(sys.port_names.size());

    fs::path dir = fs::path(meta_path).parent_path();
    const nlohmann::json &files = j.at("files");
    sys.g_hat = load_triplets((dir / files.at("G").get<std::string>()).string());
    sys.c_hat = load_triplets((dir / files.at("C").get<std::string>()).string());
    if (files.contains("B"))
    {
      sys.b_dense = load_dense((dir / files.at("B").get<std::string>()).string());
    }
  }
  catch (const nlohmann::json::exception &e)
  {
    throw std::runtime_error(meta_path + ": " + e.what());
  }

  if (sys.g_hat.dim() != sys.c_hat.dim())
  {
    throw DimensionMismatch(meta_path + ": G and C dimensions differ");
  }
  int total = std::accumulate(sys.block_sizes.begin(), sys.block_sizes.end(), 0);
  if (total != sys.g_hat.dim())
  {
    throw DimensionMismatch(meta_path + ": block sizes sum to " + std::to_string(total) +
                            " but the matrices are " + std::to_string(sys.g_hat.dim()) +
                            "-dimensional");
  }
  if (sys.points.size() != sys.block_sizes.size())
  {
    throw std::runtime_error(meta_path + ": points and blocks disagree in length");
  }
  if (sys.b_dense)
  {
    if (sys.b_dense->rows() != sys.g_hat.dim() || sys.b_dense->cols() != sys.ports)
    {
      throw DimensionMismatch(meta_path + ": input matrix shape does not fit the system");
    }
  }
  else if (sys.ports > sys.g_hat.dim())
  {
    throw DimensionMismatch(meta_path + ": more ports than rows");
  }
  return sys;
}

}  // namespace rcmor
