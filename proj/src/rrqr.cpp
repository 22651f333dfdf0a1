// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/rrqr.hpp"

#include <algorithm>
#include <cmath>

namespace rcmor
{

double spectral_norm_estimate(const DenseMatrix &m, int max_iter)
{
  if (m.rows() == 0 || m.cols() == 0)
  {
    return 0.0;
  }
  int jmax = 0;
  double cmax = 0.0;
  for (int j = 0; j < m.cols(); j++)
  {
    double cn = m.col(j).norm();
    if (cn > cmax)
    {
      cmax = cn;
      jmax = j;
    }
  }
  if (cmax == 0.0)
  {
    return 0.0;
  }
  Vector v = Vector::Ones(m.cols()) / std::sqrt(double(m.cols()));
  if ((m * v).norm() < 1e-30 * cmax)
  {
    // The all-ones start can sit in the null space; a coordinate vector
    // aligned with the heaviest column cannot.
    v = Vector::Zero(m.cols());
    v(jmax) = 1.0;
  }
  for (int it = 0; it < max_iter; it++)
  {
    Vector w = m.transpose() * (m * v);
    double wn = w.norm();
    if (wn == 0.0)
    {
      break;
    }
    v = w / wn;
  }
  return (m * v).norm();
}

namespace
{

struct QrState
{
  DenseMatrix work;
  DenseMatrix q;
  std::vector<int> cols;
};

// Householder reflector for column k based at row k; updates the trailing
// block of work and accumulates Q.
void apply_reflector(QrState &st, int k)
{
  int rows = static_cast<int>(st.work.rows());
  Vector x = st.work.col(k).segment(k, rows - k);
  double xn = x.norm();
  if (xn == 0.0)
  {
    return;
  }
  double alpha = x(0) >= 0.0 ? -xn : xn;
  Vector v = x;
  v(0) -= alpha;
  double vtv = v.squaredNorm();
  if (vtv == 0.0)
  {
    return;
  }
  double beta = 2.0 / vtv;
  auto tail = st.work.block(k, k, rows - k, st.work.cols() - k);
  tail -= (beta * v) * (v.transpose() * tail).eval();
  auto qtail = st.q.rightCols(rows - k);
  qtail -= (qtail * v).eval() * (beta * v).transpose();
  st.work(k, k) = alpha;
  st.work.col(k).segment(k + 1, rows - k - 1).setZero();
}

RrqrResult finish(QrState &&st, int rank)
{
  RrqrResult res;
  res.rank = rank;
  res.q = std::move(st.q);
  res.r_top = st.work.topRows(rank);
  res.col_perm = Permutation(std::move(st.cols));
  return res;
}

}  // namespace

RrqrResult rrqr(const DenseMatrix &m, double delta)
{
  int rows = static_cast<int>(m.rows());
  int cols = static_cast<int>(m.cols());
  QrState st;
  st.work = m;
  st.q = DenseMatrix::Identity(rows, rows);
  st.cols.resize(cols);
  for (int j = 0; j < cols; j++)
  {
    st.cols[j] = j;
  }

  int kmax = std::min(rows, cols);
  double r11_frob2 = 0.0;
  double r11_diag_max = 0.0;
  for (int k = 0; k < kmax; k++)
  {
    // Trailing column norms drive both the pivot choice and the stop rule.
    double trail_frob2 = 0.0;
    int jpiv = k;
    double cpiv = -1.0;
    for (int j = k; j < cols; j++)
    {
      double cn2 = st.work.col(j).segment(k, rows - k).squaredNorm();
      trail_frob2 += cn2;
      if (cn2 > cpiv)
      {
        cpiv = cn2;
        jpiv = j;
      }
    }

    // ||R22||_2 <= delta * ||R11||_2 decides the numerical rank. Frobenius
    // bounds resolve the clear cases; power iteration settles the rest.
    double trail_frob = std::sqrt(trail_frob2);
    bool stop = false;
    if (trail_frob <= delta * r11_diag_max)
    {
      stop = true;
    }
    else
    {
      double r22_lower = trail_frob / std::sqrt(double(std::min(rows - k, cols - k)));
      double r11_frob = std::sqrt(r11_frob2);
      if (!(r22_lower > delta * r11_frob))
      {
        double n22 = spectral_norm_estimate(st.work.block(k, k, rows - k, cols - k));
        double n11 = spectral_norm_estimate(st.work.topLeftCorner(k, k));
        stop = n22 <= delta * n11;
      }
    }
    if (stop)
    {
      return finish(std::move(st), k);
    }

    if (jpiv != k)
    {
      st.work.col(k).swap(st.work.col(jpiv));
      std::swap(st.cols[k], st.cols[jpiv]);
    }
    apply_reflector(st, k);
    r11_frob2 += st.work.col(k).head(k + 1).squaredNorm();
    r11_diag_max = std::max(r11_diag_max, std::abs(st.work(k, k)));
  }
  return finish(std::move(st), kmax);
}

RrqrResult qr_no_pivot(const DenseMatrix &m)
{
  int rows = static_cast<int>(m.rows());
  int cols = static_cast<int>(m.cols());
  QrState st;
  st.work = m;
  st.q = DenseMatrix::Identity(rows, rows);
  st.cols.resize(cols);
  for (int j = 0; j < cols; j++)
  {
    st.cols[j] = j;
  }
  int kmax = std::min(rows, cols);
  for (int k = 0; k < kmax; k++)
  {
    apply_reflector(st, k);
  }
  return finish(std::move(st), kmax);
}

}  // namespace rcmor
