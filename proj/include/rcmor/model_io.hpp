// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_MODEL_IO_HPP
#define RCMOR_MODEL_IO_HPP

#include <string>
#include <vector>

#include "rcmor/mna.hpp"
#include "rcmor/reduced_system.hpp"
#include "rcmor/sym_sparse.hpp"

namespace rcmor
{

//
// Triplet files: header `dim nnz`, then one `i j value` line per stored
// lower-triangle entry, 0-based, floats printed in shortest round-trip form.
// Loading accepts either triangle or both; mismatched (i,j)/(j,i) pairs are
// averaged and counted in LoadStats.
//
struct LoadStats
{
  int asymmetric_pairs = 0;
  double max_rel_asymmetry = 0.0;
};

void save_triplets(const SymSparse &m, const std::string &path);
SymSparse load_triplets(const std::string &path, LoadStats *stats = nullptr);

// Dense rectangular matrix: header `rows cols`, then row-major values, one
// per line.
void save_dense(const DenseMatrix &m, const std::string &path);
DenseMatrix load_dense(const std::string &path);

// Port files hold one node name per line, in port order.
void save_ports(const std::vector<std::string> &names, const std::string &path);
std::vector<std::string> load_ports(const std::string &path);

void save_mna(const MnaSystem &sys, const std::string &g_path, const std::string &c_path,
              const std::string &ports_path);
MnaSystem load_sparse_triplets(const std::string &g_path, const std::string &c_path,
                               const std::string &ports_path, LoadStats *stats = nullptr);

//
// Reduced models are a JSON descriptor next to the matrix files it names:
//   { "schema": 1, "blocks": [...], "points": [...], "ports": [...],
//     "files": { "G": ..., "C": ..., "B": optional } }
// Matrix files sit in the descriptor's directory; save derives their names
// from the descriptor path.
//
void save_reduced(const ReducedSystem &sys, const std::string &meta_path);
ReducedSystem load_reduced(const std::string &meta_path);

}  // namespace rcmor

#endif  // RCMOR_MODEL_IO_HPP
