// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/synthetic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace rcmor
{

namespace
{

// mt19937_64 output is pinned by the standard; mapping its bits to doubles
// directly keeps netlists identical across standard libraries.
class ValueDraw
{
public:
  explicit ValueDraw(std::uint64_t seed) : rng_(seed) {}

  double log_uniform(double lo, double hi)
  {
    double u = static_cast<double>(rng_() >> 11) * 0x1p-53;
    return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
  }

  int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

private:
  std::mt19937_64 rng_;
};

void check(bool ok, const std::string &what)
{
  if (!ok)
  {
    throw std::invalid_argument("synthetic spec: " + what);
  }
}

}  // namespace

Netlist gen_synthetic(const SyntheticSpec &spec)
{
  check(spec.nodes >= 1, "need at least one node");
  check(spec.ports >= 1 && spec.ports <= spec.nodes, "ports must lie in [1, nodes]");
  check(spec.r_min > 0.0 && spec.r_min <= spec.r_max, "resistor range must be positive");
  check(spec.c_min > 0.0 && spec.c_min <= spec.c_max, "capacitor range must be positive");

  ValueDraw draw(spec.seed);
  auto r = [&] { return draw.log_uniform(spec.r_min, spec.r_max); };
  auto c = [&] { return draw.log_uniform(spec.c_min, spec.c_max); };
  auto name = [](int k) { return std::to_string(k); };

  Netlist nl;
  auto add = [&](ElementKind kind, int a, int b, double v) {
    nl.elements.push_back({kind, name(a), name(b), v});
  };
  int n = spec.nodes;

  switch (spec.topology)
  {
    case Topology::kLadder:
      for (int k = 1; k < n; k++)
      {
        add(ElementKind::kResistor, k, k + 1, r());
      }
      add(ElementKind::kResistor, n, 0, r());
      for (int k = 1; k <= n; k++)
      {
        add(ElementKind::kCapacitor, k, 0, c());
      }
      break;

    case Topology::kMesh:
    {
      int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
      int cols = (n + rows - 1) / rows;
      for (int k = 1; k <= n; k++)
      {
        bool row_end = (k - 1) % cols == cols - 1;
        if (!row_end && k + 1 <= n)
        {
          add(ElementKind::kResistor, k, k + 1, r());
        }
        if (k + cols <= n)
        {
          add(ElementKind::kResistor, k, k + cols, r());
        }
      }
      add(ElementKind::kResistor, n, 0, r());
      for (int k = 1; k <= n; k++)
      {
        add(ElementKind::kCapacitor, k, 0, c());
      }
      for (int k = 1; k + cols <= n; k++)
      {
        add(ElementKind::kCapacitor, k, k + cols, c());
      }
      break;
    }

    case Topology::kTree:
      for (int k = 2; k <= n; k++)
      {
        int parent = 1 + draw.below(k - 1);
        add(ElementKind::kResistor, k, parent, r());
      }
      add(ElementKind::kResistor, 1, 0, r());
      for (int k = 1; k <= n; k++)
      {
        add(ElementKind::kCapacitor, k, 0, c());
      }
      break;
  }

  for (int i = 0; i < spec.ports; i++)
  {
    nl.ports.push_back(name(1 + static_cast<int>((static_cast<long long>(i) * n) / spec.ports)));
  }
  return nl;
}

}  // namespace rcmor
