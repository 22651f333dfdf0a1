// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_SYNTHETIC_HPP
#define RCMOR_SYNTHETIC_HPP

#include <cstdint>

#include "rcmor/netlist.hpp"

namespace rcmor
{

enum class Topology
{
  kLadder,
  kMesh,
  kTree
};

//
// Generator input. `nodes` counts non-ground nodes; ports are spread evenly
// across them. Element values are log-uniform over the given ranges, drawn
// from a fixed-seed generator, so equal specs produce identical netlists on
// any platform.
//
struct SyntheticSpec
{
  Topology topology = Topology::kLadder;
  int nodes = 16;
  int ports = 1;
  std::uint64_t seed = 0;
  double r_min = 1.0;
  double r_max = 1e4;
  double c_min = 1e-15;
  double c_max = 1e-12;
};

// Every node gets a capacitor to ground and a resistive path to ground, so
// G + sC stays positive definite for s >= 0. Ladders are series-R shunt-C
// chains; meshes are grids with coupling capacitors across vertical edges;
// trees attach node k to a random earlier node. Throws std::invalid_argument
// on an infeasible spec (ports > nodes, empty or negative value ranges).
Netlist gen_synthetic(const SyntheticSpec &spec);

}  // namespace rcmor

#endif  // RCMOR_SYNTHETIC_HPP
