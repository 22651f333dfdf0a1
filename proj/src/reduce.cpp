// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>

#include "rcmor/errors.hpp"
#include "rcmor/ordering.hpp"
#include "rcmor/rrqr.hpp"
#include "rcmor/spd_factor.hpp"

namespace rcmor
{

ExpansionSchedule::ExpansionSchedule(std::vector<double> points) : points_(std::move(points))
{
  if (points_.empty())
  {
    throw EmptySchedule();
  }
  for (double s : points_)
  {
    if (!std::isfinite(s) || s < 0.0)
    {
      throw std::invalid_argument("expansion points must be finite and nonnegative");
    }
  }
}

int ExpansionSchedule::multiplicity(double s) const
{
  return static_cast<int>(std::count(points_.begin(), points_.end(), s));
}

namespace
{

void check_pair(const SymSparse &g, const SymSparse &c)
{
  if (g.dim() != c.dim())
  {
    throw DimensionMismatch("G and C dimensions differ");
  }
}

void check_budget(double eta)
{
  if (!(eta >= 1.0))
  {
    throw std::invalid_argument("fill budget must be at least one");
  }
}

void check_cutoff(double delta)
{
  if (!(delta > 0.0) || !(delta < 1.0))
  {
    throw std::invalid_argument("rank cutoff must lie in (0, 1)");
  }
}

// Congruence stage over matrices already arranged retained-first. The
// residual measures how far the transformed couplings of G and C are from
// cancelling at the expansion point.
StageResult stage_on_arranged(const SymSparse &g, const SymSparse &c, int retained, double s,
                              Permutation arrangement)
{
  StageResult st;
  st.retained = retained;
  st.point = s;
  st.arrangement = std::move(arrangement);
  SymSparse a = g.scaled_add(s, c);
  SchurResult sr;
  try
  {
    sr = schur_port_block(a, retained);
  }
  catch (const NotPositiveDefinite &e)
  {
    int pos = retained + e.index();
    throw NotPositiveDefinite(st.arrangement.forward[std::size_t(pos)], e.pivot());
  }
  st.elim = std::move(sr.elim);
  CongruenceBlocks gb = congruence_blocks(st.elim, g);
  CongruenceBlocks cb = congruence_blocks(st.elim, c);
  st.decoupling_residual = (gb.coupling + s * cb.coupling).norm();
  st.gp = std::move(gb.port);
  st.cp = std::move(cb.port);
  st.coupling_c = std::move(cb.coupling);
  st.g_interior = g.trailing(retained);
  st.c_interior = c.trailing(retained);
  return st;
}

// Symbolic pattern of the working pair during one-at-a-time elimination.
// Rows hold the full symmetric adjacency of active nodes only; nnz counts
// the union pattern of both matrices, off-diagonals twice.
struct FillState
{
  std::vector<std::set<int>> pa;
  std::vector<std::set<int>> pc;
  std::size_t nnz = 0;

  bool has(int i, int j) const
  {
    return pa[std::size_t(i)].count(j) != 0 || pc[std::size_t(i)].count(j) != 0;
  }
};

FillState make_fill_state(const SymSparse &a, const SymSparse &c)
{
  int n = a.dim();
  FillState fs;
  fs.pa.assign(std::size_t(n), {});
  fs.pc.assign(std::size_t(n), {});
  for (const auto &t : a.lower())
  {
    fs.pa[std::size_t(t.row)].insert(t.col);
    fs.pa[std::size_t(t.col)].insert(t.row);
  }
  for (const auto &t : c.lower())
  {
    fs.pc[std::size_t(t.row)].insert(t.col);
    fs.pc[std::size_t(t.col)].insert(t.row);
  }
  for (int i = 0; i < n; i++)
  {
    fs.nnz += fs.pa[std::size_t(i)].size();
    for (int j : fs.pc[std::size_t(i)])
    {
      if (fs.pa[std::size_t(i)].count(j) == 0)
      {
        fs.nnz++;
      }
    }
  }
  return fs;
}

// Fill caused by eliminating node u, collected without touching the state.
// The pivot row of A drives every update, so a pair gains an entry only if
// at least one side sits in the A support; pairs entirely inside the
// C-only support stay untouched.
struct StepPlan
{
  std::size_t nnz_after = 0;
  std::vector<std::pair<int, int>> a_fill;
  std::vector<std::pair<int, int>> c_fill;
};

StepPlan plan_step(const FillState &fs, int u)
{
  const std::set<int> &ra = fs.pa[std::size_t(u)];
  const std::set<int> &rc = fs.pc[std::size_t(u)];
  bool ctt = rc.count(u) != 0;

  std::vector<int> sa(ra.begin(), ra.end());
  sa.erase(std::remove(sa.begin(), sa.end(), u), sa.end());
  std::set<int> joined(ra.begin(), ra.end());
  joined.insert(rc.begin(), rc.end());
  std::size_t row_total = joined.size();
  bool diag = joined.count(u) != 0;
  joined.erase(u);
  std::vector<int> su(joined.begin(), joined.end());

  std::size_t removed = 2 * row_total - (diag ? 1 : 0);
  std::size_t added = 0;
  StepPlan plan;
  for (int i : sa)
  {
    for (int j : su)
    {
      int x, y;
      if (j >= i)
      {
        x = i;
        y = j;
      }
      else if (ra.count(j) == 0)
      {
        x = j;
        y = i;
      }
      else
      {
        continue;
      }
      bool xa = ra.count(x) != 0, ya = ra.count(y) != 0;
      bool xc = rc.count(x) != 0, yc = rc.count(y) != 0;
      bool a_pair = xa && ya;
      bool c_pair = (xa && yc) || (xc && ya) || (ctt && a_pair);
      if (!fs.has(x, y))
      {
        added += (x == y) ? 1 : 2;
      }
      if (a_pair && fs.pa[std::size_t(x)].count(y) == 0)
      {
        plan.a_fill.emplace_back(x, y);
      }
      if (c_pair && fs.pc[std::size_t(x)].count(y) == 0)
      {
        plan.c_fill.emplace_back(x, y);
      }
    }
  }
  plan.nnz_after = fs.nnz - removed + added;
  return plan;
}

void apply_step(FillState &fs, int u, const StepPlan &plan)
{
  for (auto [i, j] : plan.a_fill)
  {
    fs.pa[std::size_t(i)].insert(j);
    fs.pa[std::size_t(j)].insert(i);
  }
  for (auto [i, j] : plan.c_fill)
  {
    fs.pc[std::size_t(i)].insert(j);
    fs.pc[std::size_t(j)].insert(i);
  }
  for (int j : fs.pa[std::size_t(u)])
  {
    if (j != u)
    {
      fs.pa[std::size_t(j)].erase(u);
    }
  }
  for (int j : fs.pc[std::size_t(u)])
  {
    if (j != u)
    {
      fs.pc[std::size_t(j)].erase(u);
    }
  }
  fs.pa[std::size_t(u)].clear();
  fs.pc[std::size_t(u)].clear();
  fs.nnz = plan.nnz_after;
}

DeflationResult split_coupling(const DenseMatrix &cc, double delta, bool pivoted)
{
  RrqrResult qr = pivoted ? rrqr(cc, delta) : qr_no_pivot(cc);
  DeflationResult out;
  out.rank = qr.rank;
  out.q = std::move(qr.q);
  out.b_next = DenseMatrix::Zero(qr.rank, cc.cols());
  for (int j = 0; j < cc.cols(); j++)
  {
    out.b_next.col(qr.col_perm.forward[std::size_t(j)]) = qr.r_top.col(j);
  }
  return out;
}

ReducedSystem assemble_cascade(const std::vector<DenseMatrix> &g_blocks,
                               const std::vector<DenseMatrix> &c_blocks,
                               const std::vector<DenseMatrix> &links, std::vector<double> points,
                               int ports, std::vector<std::string> names)
{
  int total = 0;
  std::vector<int> sizes;
  for (const auto &blk : g_blocks)
  {
    sizes.push_back(static_cast<int>(blk.rows()));
    total += static_cast<int>(blk.rows());
  }
  std::vector<Triplet> gt, ct;
  int off = 0;
  for (std::size_t b = 0; b < g_blocks.size(); b++)
  {
    int nb = sizes[b];
    for (int i = 0; i < nb; i++)
    {
      for (int j = 0; j <= i; j++)
      {
        gt.push_back({off + i, off + j, g_blocks[b](i, j)});
        ct.push_back({off + i, off + j, c_blocks[b](i, j)});
      }
    }
    if (b > 0)
    {
      const DenseMatrix &lk = links[b - 1];
      double sp = points[b - 1];
      int prev = off - sizes[b - 1];
      for (int i = 0; i < lk.rows(); i++)
      {
        for (int j = 0; j < lk.cols(); j++)
        {
          ct.push_back({off + i, prev + j, lk(i, j)});
          gt.push_back({off + i, prev + j, -sp * lk(i, j)});
        }
      }
    }
    off += nb;
  }
  ReducedSystem rs;
  rs.g_hat = SymSparse::from_triplets(total, std::move(gt));
  rs.c_hat = SymSparse::from_triplets(total, std::move(ct));
  rs.block_sizes = std::move(sizes);
  rs.points = std::move(points);
  rs.ports = ports;
  rs.port_names = std::move(names);
  return rs;
}

std::vector<std::string> leading_names(const MnaSystem &sys)
{
  return {sys.node_names.begin(), sys.node_names.begin() + sys.ports};
}

}  // namespace

StageResult full_sip_stage(const SymSparse &g, const SymSparse &c, int ports, double s)
{
  check_pair(g, c);
  if (ports < 0 || ports > g.dim())
  {
    throw std::invalid_argument("port count out of range");
  }
  return stage_on_arranged(g, c, ports, s, Permutation::identity(g.dim()));
}

StageResult sparse_sip(const SymSparse &g, const SymSparse &c, int ports, double s, double eta)
{
  check_pair(g, c);
  check_budget(eta);
  int n = g.dim();
  if (ports < 0 || ports > n)
  {
    throw std::invalid_argument("port count out of range");
  }

  // Ports first, then the eliminable nodes so the next victim is always the
  // last active position.
  std::vector<int> order = amd_order_constrained(g, c, ports);
  int q = n - ports;
  std::vector<int> fwd(static_cast<std::size_t>(n));
  for (int i = 0; i < ports; i++)
  {
    fwd[std::size_t(i)] = i;
  }
  for (int t = 0; t < q; t++)
  {
    fwd[std::size_t(ports + t)] = order[std::size_t(q - 1 - t)];
  }
  Permutation arrangement{std::move(fwd)};

  SymSparse ga = g.permuted(arrangement);
  SymSparse ca = c.permuted(arrangement);

  FillState fs = make_fill_state(ga.scaled_add(s, ca), ca);
  int active = n;
  while (active > ports)
  {
    StepPlan plan = plan_step(fs, active - 1);
    if (static_cast<double>(plan.nnz_after) > eta * static_cast<double>(active - 1))
    {
      break;
    }
    apply_step(fs, active - 1, plan);
    active--;
  }
  return stage_on_arranged(ga, ca, active, s, std::move(arrangement));
}

DeflationResult deflate_coupling(const DenseMatrix &cc, double delta)
{
  check_cutoff(delta);
  return split_coupling(cc, delta, true);
}

ReducedSystem smp_reduce(const MnaSystem &sys, const ExpansionSchedule &schedule,
                         const ReductionOptions &opts)
{
  return smp_reduce_traced(sys, schedule, opts, nullptr);
}

ReducedSystem smp_reduce_traced(const MnaSystem &sys, const ExpansionSchedule &schedule,
                                const ReductionOptions &opts, std::vector<StageTrace> *trace)
{
  check_budget(opts.eta);
  check_cutoff(opts.delta);
  check_pair(sys.g, sys.c);
  if (sys.ports < 1)
  {
    throw std::invalid_argument("system has no ports");
  }
  if (trace)
  {
    trace->clear();
  }

  const std::vector<double> &pts = schedule.points();
  std::vector<DenseMatrix> g_blocks, c_blocks, links;
  std::vector<double> used;

  SymSparse gi, ci;
  DenseMatrix coupling;
  for (int k = 1; k <= schedule.size(); k++)
  {
    double sk = pts[std::size_t(k - 1)];
    StageTrace entry;
    StageResult st;
    try
    {
      if (k == 1)
      {
        st = opts.sparsity_control ? sparse_sip(sys.g, sys.c, sys.ports, sk, opts.eta)
                                   : full_sip_stage(sys.g, sys.c, sys.ports, sk);
      }
      else
      {
        if (gi.dim() == 0)
        {
          break;
        }
        DeflationResult d = split_coupling(coupling, opts.delta, opts.deflation);
        if (d.rank == 0)
        {
          break;
        }
        DenseMatrix gq = d.q.transpose() * (gi.to_eigen() * d.q);
        DenseMatrix cq = d.q.transpose() * (ci.to_eigen() * d.q);
        gq = 0.5 * (gq + gq.transpose()).eval();
        cq = 0.5 * (cq + cq.transpose()).eval();
        st = full_sip_stage(SymSparse::from_dense(gq), SymSparse::from_dense(cq), d.rank, sk);
        links.push_back(std::move(d.b_next));
        entry.deflation_q = std::move(d.q);
        entry.b_in = links.back();
      }
    }
    catch (const NotPositiveDefinite &e)
    {
      throw NotPositiveDefinite(e.index(), e.pivot(), k);
    }
    used.push_back(sk);
    g_blocks.push_back(st.gp);
    c_blocks.push_back(st.cp);
    gi = st.g_interior;
    ci = st.c_interior;
    coupling = st.coupling_c;
    if (trace)
    {
      entry.stage = std::move(st);
      trace->push_back(std::move(entry));
    }
  }
  return assemble_cascade(g_blocks, c_blocks, links, std::move(used), sys.ports,
                          leading_names(sys));
}

ReducedSystem sip_reduce(const MnaSystem &sys, double s0)
{
  if (sys.ports < 1)
  {
    throw std::invalid_argument("system has no ports");
  }
  StageResult st = full_sip_stage(sys.g, sys.c, sys.ports, s0);
  return assemble_cascade({st.gp}, {st.cp}, {}, {s0}, sys.ports, leading_names(sys));
}

ReducedSystem turbomor_reduce(const MnaSystem &sys, int stages)
{
  int p = sys.ports;
  int n = sys.g.dim();
  check_pair(sys.g, sys.c);
  if (p < 1)
  {
    throw std::invalid_argument("system has no ports");
  }
  if (stages < 1)
  {
    throw std::invalid_argument("stage count must be positive");
  }
  if (stages * p > n)
  {
    throw std::invalid_argument("requested order exceeds the system dimension");
  }

  std::vector<DenseMatrix> g_blocks, c_blocks, links;
  int ni = n - p;
  if (ni == 0)
  {
    g_blocks.push_back(sys.g.to_dense());
    c_blocks.push_back(sys.c.to_dense());
  }
  else
  {
    DenseMatrix g = sys.g.to_dense();
    DenseMatrix c = sys.c.to_dense();
    DenseMatrix gi = g.bottomRightCorner(ni, ni);
    DenseMatrix gc = g.bottomLeftCorner(ni, p);
    DenseMatrix ldl = dense_ldlt(gi, p);
    DenseMatrix x = dense_ldlt_solve(ldl, gc);

    DenseMatrix gp = g.topLeftCorner(p, p) - gc.transpose() * x;
    gp = 0.5 * (gp + gp.transpose()).eval();

    DenseMatrix ci = c.bottomRightCorner(ni, ni);
    DenseMatrix cc = c.bottomLeftCorner(ni, p);
    DenseMatrix cctx = cc.transpose() * x;
    DenseMatrix cp = c.topLeftCorner(p, p) - cctx - cctx.transpose() + x.transpose() * (ci * x);
    cp = 0.5 * (cp + cp.transpose()).eval();

    // Whitening the interior of G to the identity turns every later stage
    // into plain orthogonal work on C alone.
    DenseMatrix kf = DenseMatrix::Identity(ni, ni);
    kf.triangularView<Eigen::StrictlyLower>() = ldl.triangularView<Eigen::StrictlyLower>();
    Vector droot = ldl.diagonal().cwiseSqrt();
    kf = kf * droot.asDiagonal();

    DenseMatrix cur_cc = kf.triangularView<Eigen::Lower>().solve((cc - ci * x).eval());
    DenseMatrix tmp = kf.triangularView<Eigen::Lower>().solve(ci);
    DenseMatrix cur_ci = kf.triangularView<Eigen::Lower>().solve(tmp.transpose()).transpose();
    cur_ci = 0.5 * (cur_ci + cur_ci.transpose()).eval();

    g_blocks.push_back(std::move(gp));
    c_blocks.push_back(std::move(cp));
    for (int k = 2; k <= stages; k++)
    {
      RrqrResult qr = qr_no_pivot(cur_cc);
      links.push_back(qr.r_top);
      DenseMatrix t = qr.q.transpose() * (cur_ci * qr.q);
      t = 0.5 * (t + t.transpose()).eval();
      g_blocks.push_back(DenseMatrix::Identity(p, p));
      c_blocks.push_back(t.topLeftCorner(p, p));
      int rest = static_cast<int>(t.rows()) - p;
      cur_cc = t.block(p, 0, rest, p);
      cur_ci = t.bottomRightCorner(rest, rest);
    }
  }
  std::vector<double> pts(g_blocks.size(), 0.0);
  return assemble_cascade(g_blocks, c_blocks, links, std::move(pts), p, leading_names(sys));
}

ReducedSystem prima_reduce(const MnaSystem &sys, int blocks, double s0)
{
  int p = sys.ports;
  int n = sys.g.dim();
  check_pair(sys.g, sys.c);
  if (p < 1)
  {
    throw std::invalid_argument("system has no ports");
  }
  if (blocks < 1)
  {
    throw std::invalid_argument("block count must be positive");
  }
  if (!std::isfinite(s0) || s0 < 0.0)
  {
    throw std::invalid_argument("expansion point must be finite and nonnegative");
  }

  constexpr double kOrthTol = 1e-12;
  SymSparse a = sys.g.scaled_add(s0, sys.c);
  SpdFactor f = SpdFactor::factorize(a);
  DenseMatrix b = DenseMatrix::Zero(n, p);
  b.topLeftCorner(p, p).setIdentity();
  Eigen::SparseMatrix<double> csp = sys.c.to_eigen();

  RrqrResult first = rrqr(f.solve(b), kOrthTol);
  DenseMatrix v = first.q.leftCols(first.rank);
  DenseMatrix w = v;
  for (int k = 2; k <= blocks && w.cols() > 0; k++)
  {
    DenseMatrix z = f.solve(DenseMatrix(csp * w));
    z -= v * (v.transpose() * z).eval();
    z -= v * (v.transpose() * z).eval();
    RrqrResult qr = rrqr(z, kOrthTol);
    if (qr.rank == 0)
    {
      break;
    }
    w = qr.q.leftCols(qr.rank);
    DenseMatrix grown(n, v.cols() + w.cols());
    grown << v, w;
    v = std::move(grown);
  }

  DenseMatrix gh = v.transpose() * (sys.g.to_eigen() * v);
  DenseMatrix ch = v.transpose() * (csp * v);
  gh = 0.5 * (gh + gh.transpose()).eval();
  ch = 0.5 * (ch + ch.transpose()).eval();

  ReducedSystem rs;
  rs.g_hat = SymSparse::from_dense(gh);
  rs.c_hat = SymSparse::from_dense(ch);
  rs.block_sizes = {static_cast<int>(v.cols())};
  rs.points = {s0};
  rs.ports = p;
  rs.port_names = leading_names(sys);
  rs.b_dense = v.transpose() * b;
  return rs;
}

}  // namespace rcmor
