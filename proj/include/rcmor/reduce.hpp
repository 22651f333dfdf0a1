// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_REDUCE_HPP
#define RCMOR_REDUCE_HPP

#include <vector>

#include "rcmor/mna.hpp"
#include "rcmor/reduced_system.hpp"
#include "rcmor/schur.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

// Ordered list of real expansion points. Points must be finite and
// nonnegative; a value may repeat, and multiplicity() counts exact
// occurrences of one value.
class ExpansionSchedule
{
public:
  ExpansionSchedule() = default;
  explicit ExpansionSchedule(std::vector<double> points);

  const std::vector<double> &points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  int multiplicity(double s) const;

private:
  std::vector<double> points_;
};

struct ReductionOptions
{
  // Fill budget: interior elimination stops once nnz(G_hat) + nnz(C_hat)
  // would exceed eta times the remaining dimension. Infinity disables the
  // budget and eliminates every interior node.
  double eta = 20.0;
  // Relative spectral-norm cutoff for the coupling rank decision.
  double delta = 1e-6;
  bool sparsity_control = true;
  bool deflation = true;
};

//
// One congruence stage: the first `retained` rows of the arranged system
// keep their meaning, the rest are decoupled interior. gp/cp are the
// retained blocks of G and C, coupling_c the interior-to-retained block of
// C after the transform (the matching block of G is exactly -point times
// it, up to decoupling_residual). g_interior/c_interior are the untouched
// trailing blocks in arranged order.
//
struct StageResult
{
  int retained = 0;
  double point = 0.0;
  DenseMatrix gp;
  DenseMatrix cp;
  DenseMatrix coupling_c;
  SymSparse g_interior;
  SymSparse c_interior;
  EliminationRecord elim;
  Permutation arrangement;
  double decoupling_residual = 0.0;
};

// Decouples all interior nodes from the first `ports` rows at expansion
// point s in one block elimination.
StageResult full_sip_stage(const SymSparse &g, const SymSparse &c, int ports, double s);

// Same contract, but interior nodes are ordered by constrained minimum
// degree and eliminated only while the fill budget holds, so the retained
// block may keep interior nodes beyond the first `ports`. eta = infinity
// reproduces full_sip_stage up to interior ordering.
StageResult sparse_sip(const SymSparse &g, const SymSparse &c, int ports, double s, double eta);

// Rank-revealing split of a coupling block: cc = q * [b_next; 0] with
// b_next in the original column order and rank rows.
struct DeflationResult
{
  DenseMatrix q;
  DenseMatrix b_next;
  int rank = 0;
};

DeflationResult deflate_coupling(const DenseMatrix &cc, double delta);

// Per-stage record kept by smp_reduce_traced: the stage itself, the
// orthogonal map applied to the stage input (empty for stage 1), and the
// coupling block linking this stage to the previous one (empty for stage 1).
struct StageTrace
{
  StageResult stage;
  DenseMatrix deflation_q;
  DenseMatrix b_in;
};

// Multipoint reduction: one congruence stage per schedule entry, coupling
// blocks compressed between stages, assembled into a block-tridiagonal
// reduced model. Stages end early once a coupling block has rank zero.
ReducedSystem smp_reduce(const MnaSystem &sys, const ExpansionSchedule &schedule,
                         const ReductionOptions &opts = {});
ReducedSystem smp_reduce_traced(const MnaSystem &sys, const ExpansionSchedule &schedule,
                                const ReductionOptions &opts, std::vector<StageTrace> *trace);

// Single-point full elimination: one dense block of size ports.
ReducedSystem sip_reduce(const MnaSystem &sys, double s0);

// Expansion at zero with `stages` blocks of exactly `ports` rows each:
// Cholesky-whitened interior, then repeated plain QR on the coupling.
ReducedSystem turbomor_reduce(const MnaSystem &sys, int stages);

// Block Krylov projection at s0 with `blocks` moment blocks: the reduced
// model is dense with an explicit input matrix.
ReducedSystem prima_reduce(const MnaSystem &sys, int blocks, double s0);

}  // namespace rcmor

#endif  // RCMOR_REDUCE_HPP
