// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_REDUCED_SYSTEM_HPP
#define RCMOR_REDUCED_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

//
// Reduced model: block-tridiagonal G_hat, C_hat with one diagonal block per
// expansion point. C_hat's lower off-diagonal block k is the stage coupling
// B_k; G_hat's is -points[k-1] * B_k, entry for entry. Block k has size
// block_sizes[k] and external ports are the first `ports` rows of block 0.
// The input selector is [I_p; 0] unless b_dense is set (dense projections
// carry an explicit input matrix).
//
struct ReducedSystem
{
  SymSparse g_hat;
  SymSparse c_hat;
  std::vector<int> block_sizes;
  std::vector<double> points;
  int ports = 0;
  std::vector<std::string> port_names;
  std::optional<DenseMatrix> b_dense;

  int dim() const { return g_hat.dim(); }
  int blocks() const { return static_cast<int>(block_sizes.size()); }
};

}  // namespace rcmor

#endif  // RCMOR_REDUCED_SYSTEM_HPP
