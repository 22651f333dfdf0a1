// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_MNA_HPP
#define RCMOR_MNA_HPP

#include <string>
#include <vector>

#include "rcmor/netlist.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

//
// Nodal system G + sC over the non-ground nodes, ports occupying indices
// 0..ports-1 in `.ports` order so the input selector is [I_p; 0]. Remaining
// nodes follow in lexicographic name order, which makes assembly independent
// of element order in the source netlist.
//
struct MnaSystem
{
  SymSparse g;  // siemens
  SymSparse c;  // farads
  int ports = 0;
  std::vector<std::string> node_names;

  int dim() const { return g.dim(); }
};

MnaSystem assemble_mna(const Netlist &nl);

}  // namespace rcmor

#endif  // RCMOR_MNA_HPP
