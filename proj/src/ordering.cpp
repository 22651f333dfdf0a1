// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/ordering.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <tuple>
#include <utility>

namespace rcmor
{

namespace
{

std::vector<std::vector<int>> adjacency_union(const SymSparse &g, const SymSparse *c)
{
  int n = g.dim();
  std::vector<std::vector<int>> adj(n);
  auto add = [&adj](const SymSparse &m)
  {
    for (const auto &t : m.lower())
    {
      if (t.row != t.col)
      {
        adj[t.row].push_back(t.col);
        adj[t.col].push_back(t.row);
      }
    }
  };
  add(g);
  if (c != nullptr)
  {
    add(*c);
  }
  for (auto &row : adj)
  {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return adj;
}

// George/Liu style quotient graph. Eliminated nodes become elements; a
// variable's reachable set is its variable neighbours plus the variables of
// its adjacent elements. Elements adjacent to the pivot are absorbed into the
// new element, and variable adjacencies covered by it are pruned, which keeps
// storage bounded by the input pattern.
//
// Ties in the exact degree prefer the variable touching fewer elements (its
// pivot is cheaper and merges nothing), then the lowest original index.
class QuotientGraph
{
public:
  QuotientGraph(std::vector<std::vector<int>> adj, const std::vector<bool> &eliminable)
    : adj_var_(std::move(adj)), eliminable_(eliminable),
      n_(static_cast<int>(adj_var_.size()))
  {
    adj_elem_.resize(n_);
    elem_vars_.resize(n_);
    degree_.resize(n_);
    nelems_.assign(n_, 0);
    for (int v = 0; v < n_; v++)
    {
      degree_[v] = static_cast<int>(adj_var_[v].size());
      if (eliminable_[v])
      {
        queue_.insert({degree_[v], 0, v});
      }
    }
  }

  std::vector<int> run()
  {
    std::vector<int> order;
    order.reserve(queue_.size());
    while (!queue_.empty())
    {
      int v = std::get<2>(*queue_.begin());
      queue_.erase(queue_.begin());
      eliminate(v);
      order.push_back(v);
    }
    return order;
  }

private:
  std::vector<int> reach(int v) const
  {
    std::vector<int> r = adj_var_[v];
    for (int e : adj_elem_[v])
    {
      std::vector<int> merged;
      merged.reserve(r.size() + elem_vars_[e].size());
      std::set_union(r.begin(), r.end(), elem_vars_[e].begin(), elem_vars_[e].end(),
                     std::back_inserter(merged));
      r = std::move(merged);
    }
    r.erase(std::remove(r.begin(), r.end(), v), r.end());
    return r;
  }

  void eliminate(int v)
  {
    std::vector<int> lv = reach(v);
    std::vector<int> absorbed = adj_elem_[v];
    elem_vars_[v] = lv;
    adj_var_[v].clear();
    adj_elem_[v].clear();
    for (int e : absorbed)
    {
      elem_vars_[e].clear();
    }
    for (int u : lv)
    {
      // Drop v and anything now covered by the new element.
      std::vector<int> kept;
      kept.reserve(adj_var_[u].size());
      std::set_difference(adj_var_[u].begin(), adj_var_[u].end(), lv.begin(), lv.end(),
                          std::back_inserter(kept));
      kept.erase(std::remove(kept.begin(), kept.end(), v), kept.end());
      adj_var_[u] = std::move(kept);

      std::vector<int> elems;
      elems.reserve(adj_elem_[u].size() + 1);
      std::set_difference(adj_elem_[u].begin(), adj_elem_[u].end(), absorbed.begin(),
                          absorbed.end(), std::back_inserter(elems));
      auto pos = std::lower_bound(elems.begin(), elems.end(), v);
      elems.insert(pos, v);
      adj_elem_[u] = std::move(elems);
    }
    for (int u : lv)
    {
      int d = static_cast<int>(reach(u).size());
      int ne = static_cast<int>(adj_elem_[u].size());
      if (eliminable_[u])
      {
        queue_.erase({degree_[u], nelems_[u], u});
        queue_.insert({d, ne, u});
      }
      degree_[u] = d;
      nelems_[u] = ne;
    }
  }

  std::vector<std::vector<int>> adj_var_;
  std::vector<std::vector<int>> adj_elem_;
  std::vector<std::vector<int>> elem_vars_;
  std::vector<bool> eliminable_;
  std::vector<int> degree_;
  std::vector<int> nelems_;
  std::set<std::tuple<int, int, int>> queue_;
  int n_;
};

}  // namespace

Permutation amd_order(const SymSparse &m)
{
  std::vector<bool> eliminable(m.dim(), true);
  QuotientGraph qg(adjacency_union(m, nullptr), eliminable);
  return Permutation(qg.run());
}

std::vector<int> amd_order_constrained(const SymSparse &g, const SymSparse &c, int nports)
{
  std::vector<bool> eliminable(g.dim(), true);
  for (int v = 0; v < nports && v < g.dim(); v++)
  {
    eliminable[v] = false;
  }
  QuotientGraph qg(adjacency_union(g, &c), eliminable);
  return qg.run();
}

}  // namespace rcmor
