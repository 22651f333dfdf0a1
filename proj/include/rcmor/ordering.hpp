// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_ORDERING_HPP
#define RCMOR_ORDERING_HPP

#include <vector>

#include "rcmor/permutation.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

// Fill-reducing elimination order by minimum degree on the quotient graph.
// Exact external degrees; ties prefer fewer adjacent elements, then the
// lowest node index, so the result is deterministic. forward[k] is the node
// eliminated at step k.
Permutation amd_order(const SymSparse &m);

// Same process on the union pattern of two matrices, with the first nports
// nodes pinned (they take part in degree counts but are never eliminated).
// Returns only the eliminable nodes, in elimination order.
std::vector<int> amd_order_constrained(const SymSparse &g, const SymSparse &c, int nports);

}  // namespace rcmor

#endif  // RCMOR_ORDERING_HPP
