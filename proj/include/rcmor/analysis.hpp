// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_ANALYSIS_HPP
#define RCMOR_ANALYSIS_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "rcmor/mna.hpp"
#include "rcmor/reduce.hpp"
#include "rcmor/reduced_system.hpp"

namespace rcmor
{

// Non-owning view of anything evaluable in the frequency domain: an
// assembled network or a reduced model. The input selector is [I_p; 0]
// unless the model carries an explicit one.
struct SystemRef
{
  const SymSparse *g = nullptr;
  const SymSparse *c = nullptr;
  int ports = 0;
  const DenseMatrix *input = nullptr;

  SystemRef(const MnaSystem &sys) : g(&sys.g), c(&sys.c), ports(sys.ports) {}
  SystemRef(const ReducedSystem &rs)
    : g(&rs.g_hat), c(&rs.c_hat), ports(rs.ports), input(rs.b_dense ? &*rs.b_dense : nullptr)
  {
  }

  int dim() const { return g->dim(); }
  DenseMatrix selector() const;
};

// Frequencies in hertz. The stock grid is zero plus 100 points log-spaced
// over [1, 1e13].
struct FrequencyGrid
{
  std::vector<double> freqs;

  static FrequencyGrid log_points(double lo, double hi, int count, bool include_zero = true);
  static FrequencyGrid standard() { return log_points(1.0, 1e13, 100); }
};

// Evaluation axis: s = f on the real axis, s = 2*pi*i*f on the imaginary.
enum class Axis
{
  kReal,
  kImaginary
};

std::complex<double> axis_point(Axis axis, double freq);

// H(s) = B^T (G + sC)^{-1} B. Throws SingularAtPoint when the factorization
// breaks down at s.
ComplexMatrix eval_transfer(const SystemRef &sys, std::complex<double> s);

// Taylor coefficients of H about s0: moment k is
// (-1)^k B^T (A^{-1} C)^k A^{-1} B with A = G + s0 C.
std::vector<DenseMatrix> moments(const SystemRef &sys, double s0, int count);

struct Sweep
{
  std::vector<double> freqs;
  std::vector<ComplexMatrix> values;
  // 1 where the solve failed; the matching value is all NaN.
  std::vector<char> singular;
};

Sweep sweep(const SystemRef &sys, const FrequencyGrid &grid, Axis axis);

// Pointwise ||H_red - H_full||_2 / ||H_full||_2 over the grid. Points where
// the reference norm is zero or the reference solve fails are left out; a
// failed reduced solve records an infinite error.
struct ErrorCurve
{
  std::vector<double> freqs;
  std::vector<double> errors;
  double max_error = 0.0;
};

ErrorCurve relative_errors(const SystemRef &full, const SystemRef &reduced,
                           const FrequencyGrid &grid, Axis axis);

//
// Cascade self-check. Runs the traced reduction, then measures three
// invariants the construction promises: per-stage couplings of G and C
// cancel at the stage point (decoupling), the accumulated congruence with
// nothing truncated preserves the transfer (chain gap), and the nested
// two-sided recurrence over the reduced blocks reproduces a direct solve
// of the assembled model (recurrence gap). All gaps are relative.
//
struct CascadeReport
{
  int stages = 0;
  int reduced_dim = 0;
  double max_decoupling_residual = 0.0;
  double max_decoupling_relative = 0.0;
  double max_chain_gap = 0.0;
  double max_recurrence_gap = 0.0;
};

CascadeReport verify_cascade(const MnaSystem &sys, const ExpansionSchedule &schedule,
                             const ReductionOptions &opts);

// CSV writers. Sweeps: "f,i,j,re,im" with one row per port pair per
// frequency. Error curves: "f,axis,metric,value" with metric "rel_error".
void write_sweep_csv(const Sweep &sw, std::ostream &out);
void write_error_csv(const ErrorCurve &curve, Axis axis, std::ostream &out);
void save_sweep_csv(const Sweep &sw, const std::string &path);
void save_error_csv(const ErrorCurve &curve, Axis axis, const std::string &path);

}  // namespace rcmor

#endif  // RCMOR_ANALYSIS_HPP
