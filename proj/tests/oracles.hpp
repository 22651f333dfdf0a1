// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Reference computations for tests. Everything here goes through dense Eigen
// decompositions or plain graph bookkeeping, independent of the library's
// sparse kernels, so the two routes can check each other.

#ifndef RCMOR_TESTS_ORACLES_HPP
#define RCMOR_TESTS_ORACLES_HPP

#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "rcmor/sym_sparse.hpp"

namespace oracles
{

using rcmor::DenseMatrix;
using rcmor::SymSparse;
using rcmor::Triplet;

// Fill-in edge count of symbolic elimination in the given node order.
inline int symbolic_fill(int n, const std::vector<std::pair<int, int>> &edges,
                         const std::vector<int> &order)
{
  std::set<std::pair<int, int>> adj;
  for (auto [a, b] : edges)
  {
    if (a != b)
    {
      adj.insert({std::min(a, b), std::max(a, b)});
    }
  }
  std::vector<bool> gone(n, false);
  int fill = 0;
  for (int v : order)
  {
    std::vector<int> nb;
    for (int u = 0; u < n; u++)
    {
      if (!gone[u] && u != v && adj.count({std::min(u, v), std::max(u, v)}))
      {
        nb.push_back(u);
      }
    }
    gone[v] = true;
    for (size_t i = 0; i < nb.size(); i++)
    {
      for (size_t j = i + 1; j < nb.size(); j++)
      {
        auto e = std::make_pair(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
        if (adj.insert(e).second)
        {
          fill++;
        }
      }
    }
  }
  return fill;
}

// Schur complement onto the leading p rows, dense route.
inline DenseMatrix dense_schur(const DenseMatrix &a, int p)
{
  int n = static_cast<int>(a.rows());
  if (p == n)
  {
    return a;
  }
  DenseMatrix ai = a.bottomRightCorner(n - p, n - p);
  DenseMatrix ac = a.bottomLeftCorner(n - p, p);
  return a.topLeftCorner(p, p) - ac.transpose() * ai.fullPivLu().solve(ac);
}

// Moment k about s0: (-1)^k B^T (A^{-1} C)^k A^{-1} B with A = G + s0 C,
// done with a dense LU so it shares nothing with the library solvers.
inline std::vector<DenseMatrix> dense_moments(const DenseMatrix &g, const DenseMatrix &c,
                                              const DenseMatrix &b, double s0, int count)
{
  Eigen::PartialPivLU<DenseMatrix> lu(g + s0 * c);
  std::vector<DenseMatrix> out;
  DenseMatrix v = lu.solve(b);
  double sign = 1.0;
  for (int k = 0; k < count; k++)
  {
    out.push_back(sign * b.transpose() * v);
    v = lu.solve((c * v).eval());
    sign = -sign;
  }
  return out;
}

// [I_p; 0] input selector.
inline DenseMatrix port_selector(int n, int p)
{
  DenseMatrix b = DenseMatrix::Zero(n, p);
  b.topLeftCorner(p, p).setIdentity();
  return b;
}

// H(s) = B^T (G + sC)^{-1} B by a dense complex LU.
inline Eigen::MatrixXcd dense_transfer(const DenseMatrix &g, const DenseMatrix &c,
                                       const DenseMatrix &b, std::complex<double> s)
{
  Eigen::MatrixXcd a = g.cast<std::complex<double>>() + s * c.cast<std::complex<double>>();
  Eigen::MatrixXcd bc = b.cast<std::complex<double>>();
  return bc.transpose() * a.partialPivLu().solve(bc);
}

inline int svd_rank(const DenseMatrix &m, double delta)
{
  if (m.rows() == 0 || m.cols() == 0)
  {
    return 0;
  }
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  auto sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0)
  {
    return 0;
  }
  int r = 0;
  for (int i = 0; i < sv.size(); i++)
  {
    if (sv(i) > delta * sv(0))
    {
      r++;
    }
  }
  return r;
}

// Small deterministic generator, kept apart from everything in the library.
struct Rng
{
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next()
  {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform() { return double(next() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int index(int n) { return int(next() % uint64_t(n)); }
};

// Random sparse SPD matrix: random symmetric pattern made strictly
// diagonally dominant.
inline SymSparse random_spd(int n, double density, Rng &rng)
{
  std::vector<Triplet> trips;
  std::vector<double> diag(n, 0.0);
  for (int i = 0; i < n; i++)
  {
    for (int j = 0; j < i; j++)
    {
      if (rng.uniform() < density)
      {
        double v = rng.uniform(-1.0, 1.0);
        trips.push_back({i, j, v});
        diag[i] += std::abs(v);
        diag[j] += std::abs(v);
      }
    }
  }
  for (int i = 0; i < n; i++)
  {
    trips.push_back({i, i, diag[i] + rng.uniform(0.5, 1.5)});
  }
  return SymSparse::from_triplets(n, std::move(trips));
}

}  // namespace oracles

#endif  // RCMOR_TESTS_ORACLES_HPP
