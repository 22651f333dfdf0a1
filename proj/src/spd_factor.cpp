// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/spd_factor.hpp"

#include <algorithm>
#include <cmath>

#include "rcmor/ordering.hpp"

namespace rcmor
{

SpdFactor SpdFactor::factorize(const SymSparse &a)
{
  SpdFactor f;
  f.dim_ = a.dim();
  if (f.dim_ == 0)
  {
    f.perm_ = Permutation::identity(0);
    return f;
  }
  double pivot_tol = kPivotRel * a.max_diagonal();
  f.perm_ = amd_order(a);
  SymSparse pa = a.permuted(f.perm_);
  if (f.dim_ <= kDenseLimit)
  {
    f.dense_ = true;
    f.factor_dense(pa, pivot_tol);
  }
  else
  {
    f.factor_sparse(pa, pivot_tol);
  }
  return f;
}

void SpdFactor::factor_dense(const SymSparse &perm_a, double pivot_tol)
{
  DenseMatrix m = perm_a.to_dense();
  int n = dim_;
  dense_l_ = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; j++)
  {
    double dj = m(j, j);
    for (int k = 0; k < j; k++)
    {
      dj -= dense_l_(j, k) * dense_l_(j, k) * dense_l_(k, k);
    }
    if (dj <= pivot_tol)
    {
      throw NotPositiveDefinite(perm_.forward[j], dj);
    }
    dense_l_(j, j) = dj;
    for (int i = j + 1; i < n; i++)
    {
      double v = m(i, j);
      for (int k = 0; k < j; k++)
      {
        v -= dense_l_(i, k) * dense_l_(j, k) * dense_l_(k, k);
      }
      dense_l_(i, j) = v / dj;
    }
  }
}

void SpdFactor::factor_sparse(const SymSparse &perm_a, double pivot_tol)
{
  int n = dim_;
  // Lower triangle sorted row-major reads as the upper triangle in CSC.
  std::vector<int> ap(n + 1, 0), ai;
  std::vector<double> ax;
  ai.reserve(perm_a.nnz_lower());
  ax.reserve(perm_a.nnz_lower());
  for (const auto &t : perm_a.lower())
  {
    ap[t.row + 1]++;
  }
  for (int j = 0; j < n; j++)
  {
    ap[j + 1] += ap[j];
  }
  for (const auto &t : perm_a.lower())
  {
    ai.push_back(t.col);
    ax.push_back(t.value);
  }

  // Symbolic pass: elimination tree and column counts.
  std::vector<int> parent(n, -1), flag(n, -1), lnz(n, 0);
  for (int j = 0; j < n; j++)
  {
    flag[j] = j;
    for (int p = ap[j]; p < ap[j + 1]; p++)
    {
      int i = ai[p];
      while (i < j && flag[i] != j)
      {
        if (parent[i] == -1)
        {
          parent[i] = j;
        }
        lnz[i]++;
        flag[i] = j;
        i = parent[i];
      }
    }
  }
  col_ptr_.assign(n + 1, 0);
  for (int j = 0; j < n; j++)
  {
    col_ptr_[j + 1] = col_ptr_[j] + lnz[j];
  }
  row_idx_.assign(col_ptr_[n], 0);
  values_.assign(col_ptr_[n], 0.0);
  d_.assign(n, 0.0);

  // Numeric pass, up-looking: row j of L solves a sparse triangular system
  // whose pattern is the union of etree paths from the entries of column j.
  std::vector<double> y(n, 0.0);
  std::vector<int> pattern(n), stack(n), lfill(n, 0);
  std::fill(flag.begin(), flag.end(), -1);
  for (int j = 0; j < n; j++)
  {
    int top = n;
    flag[j] = j;
    for (int p = ap[j]; p < ap[j + 1]; p++)
    {
      int i = ai[p];
      y[i] += ax[p];
      int len = 0;
      while (flag[i] != j)
      {
        pattern[len++] = i;
        flag[i] = j;
        i = parent[i];
      }
      while (len > 0)
      {
        stack[--top] = pattern[--len];
      }
    }
    d_[j] = y[j];
    y[j] = 0.0;
    for (; top < n; top++)
    {
      int i = stack[top];
      double yi = y[i];
      y[i] = 0.0;
      int pend = col_ptr_[i] + lfill[i];
      for (int p = col_ptr_[i]; p < pend; p++)
      {
        y[row_idx_[p]] -= values_[p] * yi;
      }
      double lji = yi / d_[i];
      d_[j] -= lji * yi;
      row_idx_[pend] = j;
      values_[pend] = lji;
      lfill[i]++;
    }
    if (d_[j] <= pivot_tol)
    {
      throw NotPositiveDefinite(perm_.forward[j], d_[j]);
    }
  }
}

Vector SpdFactor::solve(const Vector &b) const
{
  DenseMatrix rhs = b;
  return solve(rhs).col(0);
}

DenseMatrix SpdFactor::solve(const DenseMatrix &rhs) const
{
  if (rhs.rows() != dim_)
  {
    throw std::invalid_argument("right-hand side has wrong dimension");
  }
  int n = dim_;
  DenseMatrix x(n, rhs.cols());
  for (int i = 0; i < n; i++)
  {
    x.row(i) = rhs.row(perm_.forward[i]);
  }
  if (dense_)
  {
    for (int j = 0; j < n; j++)
    {
      for (int i = j + 1; i < n; i++)
      {
        x.row(i) -= dense_l_(i, j) * x.row(j);
      }
    }
    for (int j = 0; j < n; j++)
    {
      x.row(j) /= dense_l_(j, j);
    }
    for (int j = n - 1; j >= 0; j--)
    {
      for (int i = j + 1; i < n; i++)
      {
        x.row(j) -= dense_l_(i, j) * x.row(i);
      }
    }
  }
  else
  {
    for (int j = 0; j < n; j++)
    {
      for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; p++)
      {
        x.row(row_idx_[p]) -= values_[p] * x.row(j);
      }
    }
    for (int j = 0; j < n; j++)
    {
      x.row(j) /= d_[j];
    }
    for (int j = n - 1; j >= 0; j--)
    {
      for (int p = col_ptr_[j]; p < col_ptr_[j + 1]; p++)
      {
        x.row(j) -= values_[p] * x.row(row_idx_[p]);
      }
    }
  }
  DenseMatrix out(n, rhs.cols());
  for (int i = 0; i < n; i++)
  {
    out.row(perm_.forward[i]) = x.row(i);
  }
  return out;
}

DenseMatrix dense_ldlt(const DenseMatrix &a, int row_offset)
{
  int n = static_cast<int>(a.rows());
  double pivot_tol = 0.0;
  for (int i = 0; i < n; i++)
  {
    pivot_tol = std::max(pivot_tol, a(i, i));
  }
  pivot_tol *= SpdFactor::kPivotRel;
  DenseMatrix l = DenseMatrix::Zero(n, n);
  for (int j = 0; j < n; j++)
  {
    double dj = a(j, j);
    for (int k = 0; k < j; k++)
    {
      dj -= l(j, k) * l(j, k) * l(k, k);
    }
    if (dj <= pivot_tol)
    {
      throw NotPositiveDefinite(row_offset + j, dj);
    }
    l(j, j) = dj;
    for (int i = j + 1; i < n; i++)
    {
      double v = a(i, j);
      for (int k = 0; k < j; k++)
      {
        v -= l(i, k) * l(j, k) * l(k, k);
      }
      l(i, j) = v / dj;
    }
  }
  return l;
}

DenseMatrix dense_ldlt_solve(const DenseMatrix &ldl, const DenseMatrix &rhs)
{
  int n = static_cast<int>(ldl.rows());
  DenseMatrix x = rhs;
  for (int j = 0; j < n; j++)
  {
    for (int i = j + 1; i < n; i++)
    {
      x.row(i) -= ldl(i, j) * x.row(j);
    }
  }
  for (int j = 0; j < n; j++)
  {
    x.row(j) /= ldl(j, j);
  }
  for (int j = n - 1; j >= 0; j--)
  {
    for (int i = j + 1; i < n; i++)
    {
      x.row(j) -= ldl(i, j) * x.row(i);
    }
  }
  return x;
}

}  // namespace rcmor
