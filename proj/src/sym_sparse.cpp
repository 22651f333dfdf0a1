// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/sym_sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcmor
{

SymSparse SymSparse::from_triplets(int dim, std::vector<Triplet> entries)
{
  if (dim < 0)
  {
    throw std::invalid_argument("negative dimension");
  }
  for (auto &t : entries)
  {
    if (t.row < 0 || t.row >= dim || t.col < 0 || t.col >= dim)
    {
      throw std::out_of_range("triplet index out of range");
    }
    if (!std::isfinite(t.value))
    {
      throw std::invalid_argument("triplet value is not finite");
    }
    if (t.row < t.col)
    {
      std::swap(t.row, t.col);
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet &a, const Triplet &b)
            {
              if (a.row != b.row)
              {
                return a.row < b.row;
              }
              if (a.col != b.col)
              {
                return a.col < b.col;
              }
              return a.value < b.value;
            });
  SymSparse m(dim);
  m.lower_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size())
  {
    int r = entries[i].row, c = entries[i].col;
    double sum = 0.0;
    while (i < entries.size() && entries[i].row == r && entries[i].col == c)
    {
      sum += entries[i].value;
      i++;
    }
    if (sum != 0.0)
    {
      m.lower_.push_back({r, c, sum});
    }
  }
  return m;
}

SymSparse SymSparse::identity(int dim)
{
  SymSparse m(dim);
  m.lower_.reserve(dim);
  for (int i = 0; i < dim; i++)
  {
    m.lower_.push_back({i, i, 1.0});
  }
  return m;
}

std::size_t SymSparse::nnz_full() const
{
  std::size_t n = 0;
  for (const auto &t : lower_)
  {
    n += (t.row == t.col) ? 1 : 2;
  }
  return n;
}

double SymSparse::value(int i, int j) const
{
  if (i < j)
  {
    std::swap(i, j);
  }
  auto it = std::lower_bound(lower_.begin(), lower_.end(), std::pair<int, int>(i, j),
                             [](const Triplet &t, const std::pair<int, int> &key)
                             {
                               if (t.row != key.first)
                               {
                                 return t.row < key.first;
                               }
                               return t.col < key.second;
                             });
  if (it != lower_.end() && it->row == i && it->col == j)
  {
    return it->value;
  }
  return 0.0;
}

double SymSparse::max_diagonal() const
{
  double d = 0.0;
  for (const auto &t : lower_)
  {
    if (t.row == t.col && t.value > d)
    {
      d = t.value;
    }
  }
  return d;
}

double SymSparse::frobenius_norm() const
{
  double s = 0.0;
  for (const auto &t : lower_)
  {
    double v2 = t.value * t.value;
    s += (t.row == t.col) ? v2 : 2.0 * v2;
  }
  return std::sqrt(s);
}

DenseMatrix SymSparse::to_dense() const
{
  DenseMatrix m = DenseMatrix::Zero(dim_, dim_);
  for (const auto &t : lower_)
  {
    m(t.row, t.col) = t.value;
    m(t.col, t.row) = t.value;
  }
  return m;
}

Eigen::SparseMatrix<double> SymSparse::to_eigen() const
{
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(nnz_full());
  for (const auto &t : lower_)
  {
    trips.emplace_back(t.row, t.col, t.value);
    if (t.row != t.col)
    {
      trips.emplace_back(t.col, t.row, t.value);
    }
  }
  Eigen::SparseMatrix<double> m(dim_, dim_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SymSparse SymSparse::from_dense(const DenseMatrix &m, double drop_tol)
{
  if (m.rows() != m.cols())
  {
    throw std::invalid_argument("matrix is not square");
  }
  SymSparse out(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); i++)
  {
    for (int j = 0; j <= i; j++)
    {
      // Off-diagonal values are folded to their symmetric average so the
      // stored matrix is exactly symmetric even if the input is not quite.
      double v = (i == j) ? m(i, i) : 0.5 * (m(i, j) + m(j, i));
      if (std::abs(v) > drop_tol || (drop_tol == 0.0 && v != 0.0))
      {
        out.lower_.push_back({i, j, v});
      }
    }
  }
  return out;
}

SymSparse SymSparse::permuted(const Permutation &perm) const
{
  std::vector<Triplet> trips;
  trips.reserve(lower_.size());
  for (const auto &t : lower_)
  {
    trips.push_back({perm.inverse[t.row], perm.inverse[t.col], t.value});
  }
  return from_triplets(dim_, std::move(trips));
}

SymSparse SymSparse::scaled_add(double alpha, const SymSparse &other) const
{
  if (other.dim_ != dim_)
  {
    throw std::invalid_argument("dimension mismatch in scaled_add");
  }
  std::vector<Triplet> trips = lower_;
  trips.reserve(trips.size() + other.lower_.size());
  for (const auto &t : other.lower_)
  {
    trips.push_back({t.row, t.col, alpha * t.value});
  }
  return from_triplets(dim_, std::move(trips));
}

SymSparse SymSparse::principal(int k) const
{
  SymSparse out(k);
  for (const auto &t : lower_)
  {
    if (t.row < k)
    {
      out.lower_.push_back(t);
    }
  }
  return out;
}

SymSparse SymSparse::trailing(int k) const
{
  SymSparse out(dim_ - k);
  for (const auto &t : lower_)
  {
    if (t.col >= k)
    {
      out.lower_.push_back({t.row - k, t.col - k, t.value});
    }
  }
  return out;
}

Eigen::SparseMatrix<double> SymSparse::coupling(int k) const
{
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto &t : lower_)
  {
    if (t.row >= k && t.col < k)
    {
      trips.emplace_back(t.row - k, t.col, t.value);
    }
  }
  Eigen::SparseMatrix<double> m(dim_ - k, k);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

DenseMatrix SymSparse::dense_block(int row0, int rows, int col0, int cols) const
{
  DenseMatrix m = DenseMatrix::Zero(rows, cols);
  for (const auto &t : lower_)
  {
    for (int pass = 0; pass < 2; pass++)
    {
      int i = pass == 0 ? t.row : t.col;
      int j = pass == 0 ? t.col : t.row;
      if (i >= row0 && i < row0 + rows && j >= col0 && j < col0 + cols)
      {
        m(i - row0, j - col0) = t.value;
      }
      if (t.row == t.col)
      {
        break;
      }
    }
  }
  return m;
}

std::size_t SymSparse::pattern_union_nnz_full(const SymSparse &a, const SymSparse &b)
{
  std::size_t n = 0;
  auto ia = a.lower_.begin(), ib = b.lower_.begin();
  auto count = [&n](const Triplet &t) { n += (t.row == t.col) ? 1 : 2; };
  while (ia != a.lower_.end() || ib != b.lower_.end())
  {
    if (ib == b.lower_.end())
    {
      count(*ia++);
    }
    else if (ia == a.lower_.end())
    {
      count(*ib++);
    }
    else if (ia->row == ib->row && ia->col == ib->col)
    {
      count(*ia);
      ia++;
      ib++;
    }
    else if (ia->row < ib->row || (ia->row == ib->row && ia->col < ib->col))
    {
      count(*ia++);
    }
    else
    {
      count(*ib++);
    }
  }
  return n;
}

}  // namespace rcmor
