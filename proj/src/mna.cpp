// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/mna.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rcmor/errors.hpp"

namespace rcmor
{

MnaSystem assemble_mna(const Netlist &nl)
{
  std::set<std::string> nodes;
  for (const Element &e : nl.elements)
  {
    if (e.node_a != kGroundNode)
    {
      nodes.insert(e.node_a);
    }
    if (e.node_b != kGroundNode)
    {
      nodes.insert(e.node_b);
    }
  }
  for (const std::string &port : nl.ports)
  {
    if (!nodes.count(port))
    {
      throw IsolatedPortNode(port);
    }
  }

  std::vector<std::string> node_names = nl.ports;
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < node_names.size(); i++)
  {
    index.emplace(node_names[i], static_cast<int>(i));
  }
  for (const std::string &name : nodes)
  {
    if (index.emplace(name, static_cast<int>(node_names.size())).second)
    {
      node_names.push_back(name);
    }
  }

  int n = static_cast<int>(node_names.size());
  std::vector<Triplet> gt, ct;
  for (const Element &e : nl.elements)
  {
    double w = e.kind == ElementKind::kResistor ? 1.0 / e.value : e.value;
    std::vector<Triplet> &dst = e.kind == ElementKind::kResistor ? gt : ct;
    int ia = e.node_a == kGroundNode ? -1 : index.at(e.node_a);
    int ib = e.node_b == kGroundNode ? -1 : index.at(e.node_b);
    if (ia >= 0)
    {
      dst.push_back({ia, ia, w});
    }
    if (ib >= 0)
    {
      dst.push_back({ib, ib, w});
    }
    if (ia >= 0 && ib >= 0)
    {
      dst.push_back({std::max(ia, ib), std::min(ia, ib), -w});
    }
  }

  MnaSystem sys;
  sys.g = SymSparse::from_triplets(n, std::move(gt));
  sys.c = SymSparse::from_triplets(n, std::move(ct));
  sys.ports = static_cast<int>(nl.ports.size());
  sys.node_names = std::move(node_names);
  return sys;
}

}  // namespace rcmor
