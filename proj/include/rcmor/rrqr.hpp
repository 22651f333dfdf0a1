// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_RRQR_HPP
#define RCMOR_RRQR_HPP

#include "rcmor/permutation.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

// M * P = Q * [R; ~0] with R = r_top of size rank x cols. Q is the full
// square orthogonal factor; the rows of QᵀMP below rank have spectral norm
// at most delta times that of the leading rank x rank block.
struct RrqrResult
{
  DenseMatrix q;
  DenseMatrix r_top;
  Permutation col_perm;
  int rank = 0;
};

// Householder QR with column pivoting, stopped by the relative spectral-norm
// rule ||R22||_2 <= delta * ||R11||_2.
RrqrResult rrqr(const DenseMatrix &m, double delta);

// Householder QR without pivoting or truncation; rank = min(rows, cols).
RrqrResult qr_no_pivot(const DenseMatrix &m);

// Largest singular value by power iteration on MᵀM, at most max_iter sweeps.
double spectral_norm_estimate(const DenseMatrix &m, int max_iter = 20);

}  // namespace rcmor

#endif  // RCMOR_RRQR_HPP
