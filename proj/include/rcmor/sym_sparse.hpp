// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_SYM_SPARSE_HPP
#define RCMOR_SYM_SPARSE_HPP

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "rcmor/permutation.hpp"

namespace rcmor
{

using DenseMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

struct Triplet
{
  int row;
  int col;
  double value;
};

//
// Symmetric sparse matrix. Only the lower triangle is stored; (i, j) and
// (j, i) are the same logical entry, so symmetry holds by construction.
// Entries are kept sorted by (row, col) with no duplicates and no explicit
// zeros, which makes equal matrices bitwise-identical containers.
//
class SymSparse
{
public:
  SymSparse() = default;
  explicit SymSparse(int dim) : dim_(dim) {}

  // Assembles from arbitrary triplets: either triangle (or both) may be
  // given, duplicates accumulate. Addends for one coordinate are summed in
  // value order so the result does not depend on input order.
  static SymSparse from_triplets(int dim, std::vector<Triplet> entries);

  static SymSparse identity(int dim);

  int dim() const { return dim_; }
  const std::vector<Triplet> &lower() const { return lower_; }
  std::size_t nnz_lower() const { return lower_.size(); }
  // Nonzero count of the full matrix: off-diagonal entries count twice.
  std::size_t nnz_full() const;

  double value(int i, int j) const;
  double max_diagonal() const;
  double frobenius_norm() const;

  DenseMatrix to_dense() const;
  Eigen::SparseMatrix<double> to_eigen() const;
  static SymSparse from_dense(const DenseMatrix &m, double drop_tol = 0.0);

  // B(i, j) = A(perm.forward[i], perm.forward[j])
  SymSparse permuted(const Permutation &perm) const;

  // this + alpha * other
  SymSparse scaled_add(double alpha, const SymSparse &other) const;

  // Leading k x k principal block.
  SymSparse principal(int k) const;
  // Trailing (dim - k) x (dim - k) block starting at row/col k.
  SymSparse trailing(int k) const;
  // Off-diagonal block rows k..dim-1 by cols 0..k-1 with full values.
  Eigen::SparseMatrix<double> coupling(int k) const;
  DenseMatrix dense_block(int row0, int rows, int col0, int cols) const;

  // Nonzero count of the full matrix carrying the union of both patterns.
  static std::size_t pattern_union_nnz_full(const SymSparse &a, const SymSparse &b);

private:
  int dim_ = 0;
  std::vector<Triplet> lower_;
};

}  // namespace rcmor

#endif  // RCMOR_SYM_SPARSE_HPP
