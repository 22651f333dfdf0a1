// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/schur.hpp"

#include <stdexcept>

namespace rcmor
{

SchurResult schur_port_block(const SymSparse &a, int ports)
{
  int n = a.dim();
  if (ports < 0 || ports > n)
  {
    throw std::invalid_argument("port count out of range");
  }
  SchurResult res;
  res.elim.ports = ports;
  res.elim.dim = n;
  if (ports == n)
  {
    res.port_block = a.to_dense();
    res.elim.multipliers = DenseMatrix::Zero(0, ports);
    return res;
  }
  SymSparse a_int = a.trailing(ports);
  Eigen::SparseMatrix<double> a_cpl = a.coupling(ports);
  DenseMatrix rhs = DenseMatrix(a_cpl);

  SpdFactor f = SpdFactor::factorize(a_int);
  DenseMatrix x = f.solve(rhs);
  // One refinement sweep keeps the decoupling residual near machine level.
  DenseMatrix resid = rhs - a_int.to_eigen() * x;
  x += f.solve(resid);

  res.elim.multipliers = x;
  DenseMatrix ap = a.dense_block(0, ports, 0, ports);
  res.port_block = ap - rhs.transpose() * x;
  res.port_block = 0.5 * (res.port_block + res.port_block.transpose()).eval();
  return res;
}

CongruenceBlocks congruence_blocks(const EliminationRecord &rec, const SymSparse &m)
{
  if (m.dim() != rec.dim)
  {
    throw std::invalid_argument("matrix does not match elimination record");
  }
  int p = rec.ports, n = rec.dim;
  const DenseMatrix &x = rec.multipliers;
  CongruenceBlocks out;
  DenseMatrix mp = m.dense_block(0, p, 0, p);
  if (n == p)
  {
    out.port = mp;
    out.coupling = DenseMatrix::Zero(0, p);
    return out;
  }
  Eigen::SparseMatrix<double> mc = m.coupling(p);
  Eigen::SparseMatrix<double> mi = m.trailing(p).to_eigen();
  DenseMatrix mix = mi * x;
  DenseMatrix mctx = DenseMatrix(mc).transpose() * x;
  out.port = mp - mctx - mctx.transpose() + x.transpose() * mix;
  out.port = 0.5 * (out.port + out.port.transpose()).eval();
  out.coupling = DenseMatrix(mc) - mix;
  return out;
}

SymSparse congruence_transform(const EliminationRecord &rec, const SymSparse &m)
{
  CongruenceBlocks blocks = congruence_blocks(rec, m);
  int p = rec.ports, n = rec.dim;
  std::vector<Triplet> trips;
  for (int i = 0; i < p; i++)
  {
    for (int j = 0; j <= i; j++)
    {
      trips.push_back({i, j, blocks.port(i, j)});
    }
  }
  for (int i = 0; i < n - p; i++)
  {
    for (int j = 0; j < p; j++)
    {
      trips.push_back({p + i, j, blocks.coupling(i, j)});
    }
  }
  for (const auto &t : m.lower())
  {
    if (t.col >= p)
    {
      trips.push_back(t);
    }
  }
  return SymSparse::from_triplets(n, std::move(trips));
}

}  // namespace rcmor
