// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "rcmor/errors.hpp"
#include "rcmor/ordering.hpp"
#include "rcmor/rrqr.hpp"
#include "rcmor/schur.hpp"
#include "rcmor/spd_factor.hpp"
#include "rcmor/sym_sparse.hpp"

#include "oracles.hpp"

using namespace rcmor;

namespace
{

SymSparse worked_example_a()
{
  return SymSparse::from_triplets(2, {{0, 0, 1.0}, {1, 0, -1.0}, {1, 1, 2.0}});
}

}  // namespace

TEST_CASE("symmetric storage folds both triangles into one entry")
{
  SymSparse m = SymSparse::from_triplets(3, {{0, 1, 2.0}, {1, 0, 3.0}, {2, 2, 1.0}});
  CHECK(m.nnz_lower() == 2);
  CHECK(m.value(0, 1) == 5.0);
  CHECK(m.value(1, 0) == 5.0);
  CHECK(m.nnz_full() == 3);
}

TEST_CASE("assembly result does not depend on triplet order")
{
  std::vector<Triplet> fwd = {{0, 0, 0.1}, {1, 0, 0.2}, {1, 0, 0.3}, {1, 1, 0.4}, {1, 0, -0.05}};
  std::vector<Triplet> rev(fwd.rbegin(), fwd.rend());
  SymSparse a = SymSparse::from_triplets(2, fwd);
  SymSparse b = SymSparse::from_triplets(2, rev);
  REQUIRE(a.nnz_lower() == b.nnz_lower());
  for (size_t i = 0; i < a.lower().size(); i++)
  {
    CHECK(a.lower()[i].value == b.lower()[i].value);
  }
}

TEST_CASE("assembly drops entries that cancel exactly")
{
  SymSparse m = SymSparse::from_triplets(2, {{1, 0, 1.0}, {0, 1, -1.0}, {0, 0, 2.0}});
  CHECK(m.nnz_lower() == 1);
  CHECK(m.value(1, 0) == 0.0);
}

TEST_CASE("assembly rejects bad input")
{
  CHECK_THROWS_AS(SymSparse::from_triplets(2, {{2, 0, 1.0}}), std::out_of_range);
  CHECK_THROWS_AS(SymSparse::from_triplets(1, {{0, 0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("pattern union nnz counts both triangles once")
{
  SymSparse a = SymSparse::from_triplets(3, {{0, 0, 1.0}, {1, 0, 1.0}});
  SymSparse b = SymSparse::from_triplets(3, {{1, 0, 2.0}, {2, 2, 1.0}});
  // union pattern: (0,0), (1,0)/(0,1), (2,2) -> 4 entries of the full matrix
  CHECK(SymSparse::pattern_union_nnz_full(a, b) == 4);
}

TEST_CASE("permuted matrix relocates values")
{
  SymSparse m = worked_example_a();
  Permutation swap(std::vector<int>{1, 0});
  SymSparse pm = m.permuted(swap);
  CHECK(pm.value(0, 0) == 2.0);
  CHECK(pm.value(1, 1) == 1.0);
  CHECK(pm.value(0, 1) == -1.0);
}

TEST_CASE("minimum degree order on a diagonal matrix is the identity")
{
  std::vector<Triplet> trips;
  for (int i = 0; i < 5; i++)
  {
    trips.push_back({i, i, 1.0 + i});
  }
  Permutation p = amd_order(SymSparse::from_triplets(5, trips));
  REQUIRE(p.valid());
  for (int i = 0; i < 5; i++)
  {
    CHECK(p.forward[i] == i);
  }
}

TEST_CASE("minimum degree order eliminates a star centre last")
{
  std::vector<Triplet> trips;
  for (int i = 0; i < 10; i++)
  {
    trips.push_back({i, i, 4.0});
  }
  for (int leaf = 1; leaf < 10; leaf++)
  {
    trips.push_back({leaf, 0, -1.0});
  }
  Permutation p = amd_order(SymSparse::from_triplets(10, trips));
  REQUIRE(p.valid());
  CHECK(p.forward.back() == 0);
  for (int k = 0; k < 9; k++)
  {
    CHECK(p.forward[k] == k + 1);
  }
}

TEST_CASE("minimum degree order on a path graph has zero fill")
{
  const int n = 24;
  std::vector<Triplet> trips;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; i++)
  {
    trips.push_back({i, i, 2.0});
  }
  for (int i = 0; i + 1 < n; i++)
  {
    trips.push_back({i + 1, i, -1.0});
    edges.push_back({i, i + 1});
  }
  Permutation p = amd_order(SymSparse::from_triplets(n, trips));
  REQUIRE(p.valid());
  CHECK(oracles::symbolic_fill(n, edges, p.forward) == 0);
}

TEST_CASE("minimum degree order beats the natural order on a grid")
{
  const int side = 8, n = side * side;
  std::vector<Triplet> trips;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; i++)
  {
    trips.push_back({i, i, 4.0});
  }
  auto connect = [&](int a, int b)
  {
    trips.push_back({std::max(a, b), std::min(a, b), -1.0});
    edges.push_back({a, b});
  };
  for (int r = 0; r < side; r++)
  {
    for (int c = 0; c < side; c++)
    {
      if (c + 1 < side)
      {
        connect(r * side + c, r * side + c + 1);
      }
      if (r + 1 < side)
      {
        connect(r * side + c, (r + 1) * side + c);
      }
    }
  }
  Permutation p = amd_order(SymSparse::from_triplets(n, trips));
  REQUIRE(p.valid());
  std::vector<int> natural(n);
  for (int i = 0; i < n; i++)
  {
    natural[i] = i;
  }
  int fill_md = oracles::symbolic_fill(n, edges, p.forward);
  int fill_nat = oracles::symbolic_fill(n, edges, natural);
  CHECK(fill_md < fill_nat);
}

TEST_CASE("ordering is reproducible")
{
  oracles::Rng rng(77);
  SymSparse m = oracles::random_spd(60, 0.08, rng);
  Permutation p1 = amd_order(m);
  Permutation p2 = amd_order(m);
  CHECK(p1.forward == p2.forward);
}

TEST_CASE("factorization solves against a dense reference")
{
  oracles::Rng rng(1234);
  for (int trial = 0; trial < 6; trial++)
  {
    int n = 8 + 30 * trial;  // crosses the dense/sparse split at 64
    SymSparse a = oracles::random_spd(n, 0.1, rng);
    SpdFactor f = SpdFactor::factorize(a);
    DenseMatrix b(n, 2);
    for (int i = 0; i < n; i++)
    {
      b(i, 0) = rng.uniform(-1.0, 1.0);
      b(i, 1) = rng.uniform(-1.0, 1.0);
    }
    DenseMatrix x = f.solve(b);
    DenseMatrix ad = a.to_dense();
    double resid = (ad * x - b).norm() / b.norm();
    CHECK(resid < 1e-10);
    DenseMatrix xref = ad.fullPivLu().solve(b);
    CHECK((x - xref).norm() / xref.norm() < 1e-9);
  }
}

TEST_CASE("factorization of the identity returns the right-hand side")
{
  SpdFactor f = SpdFactor::factorize(SymSparse::identity(5));
  Vector b(5);
  b << 1, 2, 3, 4, 5;
  CHECK((f.solve(b) - b).norm() == 0.0);
}

TEST_CASE("semidefinite matrix is rejected with the failing row")
{
  SymSparse a = SymSparse::from_triplets(2, {{0, 0, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS(SpdFactor::factorize(a), NotPositiveDefinite);
  oracles::Rng rng(5);
  SymSparse big = oracles::random_spd(80, 0.05, rng);
  // plant an exact linear dependence between the last two rows
  DenseMatrix bd = big.to_dense();
  bd.row(79) = bd.row(78);
  bd.col(79) = bd.col(78);
  CHECK_THROWS_AS(SpdFactor::factorize(SymSparse::from_dense(bd)), NotPositiveDefinite);
}

TEST_CASE("schur port block matches the worked example")
{
  SchurResult r = schur_port_block(worked_example_a(), 1);
  REQUIRE(r.port_block.rows() == 1);
  CHECK(r.port_block(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r.elim.multipliers.rows() == 1);
  CHECK(r.elim.multipliers(0, 0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("schur port block equals the dense formula")
{
  oracles::Rng rng(99);
  for (int trial = 0; trial < 4; trial++)
  {
    int n = 30 + 25 * trial;
    int p = 2 + trial;
    SymSparse a = oracles::random_spd(n, 0.1, rng);
    SchurResult r = schur_port_block(a, p);
    DenseMatrix ref = oracles::dense_schur(a.to_dense(), p);
    CHECK((r.port_block - ref).norm() / ref.norm() < 1e-10);
  }
}

TEST_CASE("schur port block with all ports returns the matrix")
{
  SymSparse a = worked_example_a();
  SchurResult r = schur_port_block(a, 2);
  CHECK((r.port_block - a.to_dense()).norm() == 0.0);
  CHECK(r.elim.is_identity());
}

TEST_CASE("congruence transform agrees with the explicit dense transform")
{
  oracles::Rng rng(41);
  int n = 40, p = 3;
  SymSparse a = oracles::random_spd(n, 0.12, rng);
  SymSparse c = oracles::random_spd(n, 0.12, rng);
  SchurResult r = schur_port_block(a, p);
  SymSparse tc = congruence_transform(r.elim, c);

  DenseMatrix w = DenseMatrix::Identity(n, n);
  w.bottomLeftCorner(n - p, p) = -r.elim.multipliers;
  DenseMatrix ref = w.transpose() * c.to_dense() * w;
  CHECK((tc.to_dense() - ref).norm() / ref.norm() < 1e-12);

  // applying it to A itself reproduces the Schur complement in the port
  // block and decouples the interior
  SymSparse ta = congruence_transform(r.elim, a);
  CHECK((ta.dense_block(0, p, 0, p) - r.port_block).norm() / r.port_block.norm() < 1e-12);
  CHECK(ta.dense_block(p, n - p, 0, p).norm() < 1e-11 * a.frobenius_norm());
}

TEST_CASE("congruence transform with an identity record is a no-op")
{
  SymSparse a = worked_example_a();
  EliminationRecord rec;
  rec.ports = 2;
  rec.dim = 2;
  rec.multipliers = DenseMatrix::Zero(0, 2);
  SymSparse t = congruence_transform(rec, a);
  CHECK((t.to_dense() - a.to_dense()).norm() == 0.0);
}

TEST_CASE("congruence output is symmetric to the bit")
{
  oracles::Rng rng(7);
  SymSparse a = oracles::random_spd(30, 0.2, rng);
  SymSparse c = oracles::random_spd(30, 0.2, rng);
  SchurResult r = schur_port_block(a, 4);
  SymSparse tc = congruence_transform(r.elim, c);
  for (const auto &t : tc.lower())
  {
    CHECK(tc.value(t.row, t.col) == tc.value(t.col, t.row));
  }
}

TEST_CASE("rrqr reconstructs and reveals rank")
{
  oracles::Rng rng(2024);
  DenseMatrix u(6, 2), v(5, 2);
  for (int i = 0; i < u.size(); i++)
  {
    u(i) = rng.uniform(-1, 1);
  }
  for (int i = 0; i < v.size(); i++)
  {
    v(i) = rng.uniform(-1, 1);
  }
  DenseMatrix m = u * v.transpose();  // rank 2 by construction
  RrqrResult r = rrqr(m, 1e-8);
  CHECK(r.rank == 2);
  CHECK(r.rank == oracles::svd_rank(m, 1e-8));

  DenseMatrix mp(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); j++)
  {
    mp.col(j) = m.col(r.col_perm.forward[j]);
  }
  DenseMatrix rfull = DenseMatrix::Zero(m.rows(), m.cols());
  rfull.topRows(r.rank) = r.r_top;
  CHECK((mp - r.q * rfull).norm() / m.norm() < 1e-12);
  CHECK((r.q.transpose() * r.q - DenseMatrix::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("rrqr separates singular values across the delta threshold")
{
  // singular values 1 and 1e-9 with delta 1e-6 leave rank 1
  DenseMatrix m = DenseMatrix::Zero(4, 3);
  Eigen::HouseholderQR<DenseMatrix> qa(DenseMatrix::Random(4, 4));
  Eigen::HouseholderQR<DenseMatrix> qb(DenseMatrix::Random(3, 3));
  DenseMatrix qu = qa.householderQ();
  DenseMatrix qv = qb.householderQ();
  DenseMatrix s = DenseMatrix::Zero(4, 3);
  s(0, 0) = 1.0;
  s(1, 1) = 1e-9;
  m = qu * s * qv.transpose();
  RrqrResult r = rrqr(m, 1e-6);
  CHECK(r.rank == 1);
  CHECK(r.rank == oracles::svd_rank(m, 1e-6));
}

TEST_CASE("rrqr of a zero matrix has rank zero")
{
  RrqrResult r = rrqr(DenseMatrix::Zero(4, 3), 1e-6);
  CHECK(r.rank == 0);
  CHECK(r.r_top.rows() == 0);
}

TEST_CASE("full-rank rrqr keeps every column")
{
  oracles::Rng rng(5150);
  DenseMatrix m(8, 4);
  for (int i = 0; i < m.size(); i++)
  {
    m(i) = rng.uniform(-1, 1);
  }
  RrqrResult r = rrqr(m, 1e-6);
  CHECK(r.rank == 4);
}

TEST_CASE("unpivoted qr reconstructs the input")
{
  oracles::Rng rng(31);
  DenseMatrix m(7, 3);
  for (int i = 0; i < m.size(); i++)
  {
    m(i) = rng.uniform(-1, 1);
  }
  RrqrResult r = qr_no_pivot(m);
  CHECK(r.rank == 3);
  DenseMatrix rfull = DenseMatrix::Zero(7, 3);
  rfull.topRows(3) = r.r_top;
  CHECK((m - r.q * rfull).norm() / m.norm() < 1e-13);
  for (int j = 0; j < 3; j++)
  {
    CHECK(r.col_perm.forward[j] == j);
  }
}

TEST_CASE("spectral norm estimate tracks the svd")
{
  oracles::Rng rng(404);
  DenseMatrix m(10, 6);
  for (int i = 0; i < m.size(); i++)
  {
    m(i) = rng.uniform(-1, 1);
  }
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  double ref = svd.singularValues()(0);
  double est = spectral_norm_estimate(m);
  CHECK(est <= ref * (1.0 + 1e-12));
  CHECK(est == doctest::Approx(ref).epsilon(1e-3));
  // a matrix whose row sums vanish defeats the uniform start vector
  DenseMatrix tricky(1, 2);
  tricky << 1.0, -1.0;
  CHECK(spectral_norm_estimate(tricky) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}
