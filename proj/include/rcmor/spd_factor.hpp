// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_SPD_FACTOR_HPP
#define RCMOR_SPD_FACTOR_HPP

#include <vector>

#include "rcmor/errors.hpp"
#include "rcmor/permutation.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

//
// LDL^T factorization of a symmetric positive definite matrix. The matrix is
// reordered by minimum degree first; small systems skip the sparse machinery
// and factor densely. A pivot at or below 1e-14 times the largest diagonal
// raises NotPositiveDefinite with the offending row in original indexing.
//
class SpdFactor
{
public:
  static constexpr int kDenseLimit = 64;
  static constexpr double kPivotRel = 1e-14;

  static SpdFactor factorize(const SymSparse &a);

  int dim() const { return dim_; }

  Vector solve(const Vector &b) const;
  DenseMatrix solve(const DenseMatrix &rhs) const;

private:
  void factor_sparse(const SymSparse &perm_a, double pivot_tol);
  void factor_dense(const SymSparse &perm_a, double pivot_tol);

  int dim_ = 0;
  bool dense_ = false;
  Permutation perm_;
  // Sparse factor, CSC with unit diagonal implied.
  std::vector<int> col_ptr_, row_idx_;
  std::vector<double> values_, d_;
  // Dense factor, unit lower triangle with D on the diagonal.
  DenseMatrix dense_l_;
};

// Unit lower triangular LDL^T of a dense symmetric matrix, L with D on its
// diagonal. Shares the pivot rule with SpdFactor. row_offset only shifts the
// indices reported on failure.
DenseMatrix dense_ldlt(const DenseMatrix &a, int row_offset = 0);
DenseMatrix dense_ldlt_solve(const DenseMatrix &ldl, const DenseMatrix &rhs);

}  // namespace rcmor

#endif  // RCMOR_SPD_FACTOR_HPP
