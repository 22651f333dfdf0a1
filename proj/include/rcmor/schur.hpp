// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_SCHUR_HPP
#define RCMOR_SCHUR_HPP

#include "rcmor/spd_factor.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

// One-shot block elimination of the interior against the leading port block.
// Records the multipliers X = A_I^{-1} A_C, which define the congruence
//   W = [ I  0 ]
//       [ -X I ]
// so the same elimination can be replayed on other matrices.
struct EliminationRecord
{
  int ports = 0;
  int dim = 0;
  DenseMatrix multipliers;  // (dim - ports) x ports

  bool is_identity() const { return dim == ports; }
};

struct SchurResult
{
  DenseMatrix port_block;  // A_p - A_C^T A_I^{-1} A_C
  EliminationRecord elim;
};

SchurResult schur_port_block(const SymSparse &a, int ports);

// Blocks of W^T M W for the recorded elimination. The interior block of the
// result equals M's and is not copied here.
struct CongruenceBlocks
{
  DenseMatrix port;      // ports x ports, symmetric
  DenseMatrix coupling;  // (dim - ports) x ports
};
CongruenceBlocks congruence_blocks(const EliminationRecord &rec, const SymSparse &m);

// Full W^T M W as a symmetric sparse matrix.
SymSparse congruence_transform(const EliminationRecord &rec, const SymSparse &m);

}  // namespace rcmor

#endif  // RCMOR_SCHUR_HPP
