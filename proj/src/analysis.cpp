// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/analysis.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include "rcmor/errors.hpp"
#include "rcmor/spd_factor.hpp"
#include "number_format.hpp"

namespace rcmor
{

namespace
{

constexpr double kTwoPi = 6.283185307179586476925286766559;

using ComplexSparse = Eigen::SparseMatrix<std::complex<double>>;

double spectral_norm(const ComplexMatrix &m)
{
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix dense_eval(const DenseMatrix &g, const DenseMatrix &c, const DenseMatrix &b,
                         std::complex<double> s)
{
  ComplexMatrix a = g.cast<std::complex<double>>() + s * c.cast<std::complex<double>>();
  ComplexMatrix bc = b.cast<std::complex<double>>();
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  return bc.transpose() * lu.solve(bc);
}

// Ten probes spanning three decades either side of the corner frequency
// ||G|| / (2 pi ||C||), where the resistive and capacitive parts are of
// comparable size and the solves stay well conditioned.
std::vector<double> probe_frequencies(const SymSparse &g, const SymSparse &c)
{
  double gn = g.frobenius_norm();
  double cn = c.frobenius_norm();
  double corner = (gn > 0.0 && cn > 0.0) ? gn / (kTwoPi * cn) : 1.0;
  std::vector<double> freqs;
  for (int k = 0; k < 10; k++)
  {
    freqs.push_back(corner * std::pow(10.0, -3.0 + 6.0 * k / 9.0));
  }
  return freqs;
}

const char *axis_name(Axis axis)
{
  return axis == Axis::kReal ? "real" : "imag";
}

}  // namespace

DenseMatrix SystemRef::selector() const
{
  if (input)
  {
    return *input;
  }
  DenseMatrix b = DenseMatrix::Zero(g->dim(), ports);
  for (int i = 0; i < ports; i++)
  {
    b(i, i) = 1.0;
  }
  return b;
}

FrequencyGrid FrequencyGrid::log_points(double lo, double hi, int count, bool include_zero)
{
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi))
  {
    throw std::invalid_argument("frequency span must satisfy 0 < lo <= hi");
  }
  if (count < 1 || (count == 1 && hi != lo))
  {
    throw std::invalid_argument("need at least two grid points to span a range");
  }
  FrequencyGrid grid;
  if (include_zero)
  {
    grid.freqs.push_back(0.0);
  }
  double la = std::log10(lo);
  double lb = std::log10(hi);
  for (int k = 0; k < count; k++)
  {
    double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    grid.freqs.push_back(std::pow(10.0, la + t * (lb - la)));
  }
  return grid;
}

std::complex<double> axis_point(Axis axis, double freq)
{
  if (axis == Axis::kReal)
  {
    return {freq, 0.0};
  }
  return {0.0, kTwoPi * freq};
}

ComplexMatrix eval_transfer(const SystemRef &sys, std::complex<double> s)
{
  int n = sys.dim();
  if (sys.c->dim() != n)
  {
    throw DimensionMismatch("conductance and capacitance dimensions differ");
  }

  std::vector<Eigen::Triplet<std::complex<double>>> trips;
  trips.reserve(2 * (sys.g->nnz_lower() + sys.c->nnz_lower()));
  auto add = [&trips](const SymSparse &m, std::complex<double> weight) {
    for (const Triplet &t : m.lower())
    {
      std::complex<double> v = weight * t.value;
      trips.emplace_back(t.row, t.col, v);
      if (t.row != t.col)
      {
        trips.emplace_back(t.col, t.row, v);
      }
    }
  };
  add(*sys.g, 1.0);
  add(*sys.c, s);

  ComplexSparse a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();

  Eigen::SparseLU<ComplexSparse> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
  {
    throw SingularAtPoint(s);
  }
  ComplexMatrix b = sys.selector().cast<std::complex<double>>();
  ComplexMatrix x = lu.solve(b);
  if (lu.info() != Eigen::Success)
  {
    throw SingularAtPoint(s);
  }
  return b.transpose() * x;
}

std::vector<DenseMatrix> moments(const SystemRef &sys, double s0, int count)
{
  if (!std::isfinite(s0) || s0 < 0.0)
  {
    throw std::invalid_argument("expansion point must be finite and nonnegative");
  }
  if (count < 0)
  {
    throw std::invalid_argument("moment count must be nonnegative");
  }
  std::vector<DenseMatrix> out;
  if (count == 0)
  {
    return out;
  }

  SpdFactor f = SpdFactor::factorize(sys.g->scaled_add(s0, *sys.c));
  Eigen::SparseMatrix<double> ce = sys.c->to_eigen();
  DenseMatrix b = sys.selector();

  out.reserve(count);
  DenseMatrix v = f.solve(b);
  double sign = 1.0;
  for (int k = 0; k < count; k++)
  {
    out.push_back(sign * (b.transpose() * v));
    if (k + 1 < count)
    {
      v = f.solve(DenseMatrix(ce * v));
    }
    sign = -sign;
  }
  return out;
}

Sweep sweep(const SystemRef &sys, const FrequencyGrid &grid, Axis axis)
{
  int p = static_cast<int>(sys.selector().cols());
  Sweep out;
  out.freqs = grid.freqs;
  out.values.reserve(grid.freqs.size());
  out.singular.reserve(grid.freqs.size());
  for (double f : grid.freqs)
  {
    try
    {
      out.values.push_back(eval_transfer(sys, axis_point(axis, f)));
      out.singular.push_back(0);
    }
    catch (const SingularAtPoint &)
    {
      double nan = std::numeric_limits<double>::quiet_NaN();
      out.values.push_back(ComplexMatrix::Constant(p, p, std::complex<double>(nan, nan)));
      out.singular.push_back(1);
    }
  }
  return out;
}

ErrorCurve relative_errors(const SystemRef &full, const SystemRef &reduced,
                           const FrequencyGrid &grid, Axis axis)
{
  if (full.ports != reduced.ports)
  {
    throw DimensionMismatch("port counts differ between the two systems");
  }
  ErrorCurve out;
  for (double f : grid.freqs)
  {
    std::complex<double> s = axis_point(axis, f);
    ComplexMatrix href;
    try
    {
      href = eval_transfer(full, s);
    }
    catch (const SingularAtPoint &)
    {
      continue;
    }
    double ref = spectral_norm(href);
    if (ref == 0.0)
    {
      continue;
    }
    double err = 0.0;
    try
    {
      err = spectral_norm(eval_transfer(reduced, s) - href) / ref;
    }
    catch (const SingularAtPoint &)
    {
      err = std::numeric_limits<double>::infinity();
    }
    out.freqs.push_back(f);
    out.errors.push_back(err);
    out.max_error = std::max(out.max_error, err);
  }
  return out;
}

CascadeReport verify_cascade(const MnaSystem &sys, const ExpansionSchedule &schedule,
                             const ReductionOptions &opts)
{
  std::vector<StageTrace> trace;
  ReducedSystem rs = smp_reduce_traced(sys, schedule, opts, &trace);

  CascadeReport rep;
  rep.stages = static_cast<int>(trace.size());
  rep.reduced_dim = rs.dim();

  for (std::size_t k = 0; k < trace.size(); k++)
  {
    const StageResult &st = trace[k].stage;
    double gn = k == 0 ? sys.g.frobenius_norm() : trace[k - 1].stage.g_interior.frobenius_norm();
    double cn = k == 0 ? sys.c.frobenius_norm() : trace[k - 1].stage.c_interior.frobenius_norm();
    double scale = gn + std::abs(st.point) * cn;
    rep.max_decoupling_residual = std::max(rep.max_decoupling_residual, st.decoupling_residual);
    if (scale > 0.0)
    {
      rep.max_decoupling_relative =
          std::max(rep.max_decoupling_relative, st.decoupling_residual / scale);
    }
  }

  // Replay every stage transform on dense copies of the full matrices
  // without dropping anything, then compare transfers. Each stage acts on
  // the trailing block as rotation, then permutation, then the port
  // congruence; earlier port blocks are untouched.
  int n = sys.g.dim();
  DenseMatrix gd = sys.g.to_dense();
  DenseMatrix cd = sys.c.to_dense();
  int off = 0;
  for (std::size_t k = 0; k < trace.size(); k++)
  {
    const StageResult &st = trace[k].stage;
    int nk = n - off;
    DenseMatrix acc = k == 0 ? DenseMatrix::Identity(nk, nk) : trace[k].deflation_q;
    DenseMatrix pm = DenseMatrix::Zero(nk, nk);
    for (int j = 0; j < nk; j++)
    {
      pm(st.arrangement.forward[j], j) = 1.0;
    }
    acc = acc * pm;
    DenseMatrix w = DenseMatrix::Identity(nk, nk);
    w.block(st.retained, 0, nk - st.retained, st.retained) = -st.elim.multipliers;
    acc = acc * w;

    DenseMatrix t = DenseMatrix::Identity(n, n);
    t.block(off, off, nk, nk) = acc;
    gd = DenseMatrix(t.transpose() * gd * t);
    cd = DenseMatrix(t.transpose() * cd * t);
    off += st.retained;
  }

  DenseMatrix b = DenseMatrix::Zero(n, sys.ports);
  for (int i = 0; i < sys.ports; i++)
  {
    b(i, i) = 1.0;
  }
  DenseMatrix g0 = sys.g.to_dense();
  DenseMatrix c0 = sys.c.to_dense();
  std::vector<double> probes = probe_frequencies(sys.g, sys.c);
  for (double f : probes)
  {
    std::complex<double> s = axis_point(Axis::kImaginary, f);
    ComplexMatrix href = dense_eval(g0, c0, b, s);
    ComplexMatrix hchain = dense_eval(gd, cd, b, s);
    double ref = href.norm();
    if (ref > 0.0)
    {
      rep.max_chain_gap = std::max(rep.max_chain_gap, (hchain - href).norm() / ref);
    }
  }

  // Fold the reduced block tridiagonal from the bottom up and compare with
  // a direct solve of the assembled model. The link between neighbouring
  // blocks enters as (s - s_k)^2 around the inner inverse.
  int m = rs.blocks();
  std::vector<int> boff(m + 1, 0);
  for (int k = 0; k < m; k++)
  {
    boff[k + 1] = boff[k] + rs.block_sizes[k];
  }
  DenseMatrix gr = rs.g_hat.to_dense();
  DenseMatrix cr = rs.c_hat.to_dense();
  ComplexMatrix b1 = ComplexMatrix::Zero(rs.block_sizes[0], rs.ports);
  for (int i = 0; i < rs.ports; i++)
  {
    b1(i, i) = 1.0;
  }
  for (double f : probes)
  {
    std::complex<double> s = axis_point(Axis::kImaginary, f);
    auto diag = [&](int k) -> ComplexMatrix {
      DenseMatrix gk = gr.block(boff[k], boff[k], rs.block_sizes[k], rs.block_sizes[k]);
      DenseMatrix ck = cr.block(boff[k], boff[k], rs.block_sizes[k], rs.block_sizes[k]);
      return gk.cast<std::complex<double>>() + s * ck.cast<std::complex<double>>();
    };
    ComplexMatrix folded = diag(m - 1);
    for (int k = m - 2; k >= 0; k--)
    {
      DenseMatrix link = cr.block(boff[k + 1], boff[k], rs.block_sizes[k + 1], rs.block_sizes[k]);
      ComplexMatrix lc = link.cast<std::complex<double>>();
      std::complex<double> wk = s - rs.points[k];
      Eigen::PartialPivLU<ComplexMatrix> lu(folded);
      folded = diag(k) - (wk * wk) * (lc.transpose() * lu.solve(lc));
    }
    Eigen::PartialPivLU<ComplexMatrix> lu(folded);
    ComplexMatrix hrec = b1.transpose() * lu.solve(b1);
    ComplexMatrix hdir = eval_transfer(rs, s);
    double ref = hdir.norm();
    if (ref > 0.0)
    {
      rep.max_recurrence_gap = std::max(rep.max_recurrence_gap, (hrec - hdir).norm() / ref);
    }
  }
  return rep;
}

void write_sweep_csv(const Sweep &sw, std::ostream &out)
{
  out << "f,i,j,re,im\n";
  for (std::size_t k = 0; k < sw.freqs.size(); k++)
  {
    const ComplexMatrix &h = sw.values[k];
    for (Eigen::Index i = 0; i < h.rows(); i++)
    {
      for (Eigen::Index j = 0; j < h.cols(); j++)
      {
        out << format_double(sw.freqs[k]) << ',' << i << ',' << j << ','
            << format_double(h(i, j).real()) << ',' << format_double(h(i, j).imag()) << '\n';
      }
    }
  }
}

void write_error_csv(const ErrorCurve &curve, Axis axis, std::ostream &out)
{
  out << "f,axis,metric,value\n";
  for (std::size_t k = 0; k < curve.freqs.size(); k++)
  {
    out << format_double(curve.freqs[k]) << ',' << axis_name(axis) << ",rel_error,"
        << format_double(curve.errors[k]) << '\n';
  }
}

void save_sweep_csv(const Sweep &sw, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write " + path);
  }
  write_sweep_csv(sw, out);
  out.flush();
  if (!out.good())
  {
    throw std::runtime_error("write failed: " + path);
  }
}

void save_error_csv(const ErrorCurve &curve, Axis axis, const std::string &path)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write " + path);
  }
  write_error_csv(curve, axis, out);
  out.flush();
  if (!out.good())
  {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace rcmor
