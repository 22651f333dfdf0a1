// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_PERMUTATION_HPP
#define RCMOR_PERMUTATION_HPP

#include <cstddef>
#include <vector>

namespace rcmor
{

// Node permutation. forward[k] is the original index placed at position k of
// the reordered system; inverse[v] is the position of original index v.
struct Permutation
{
  std::vector<int> forward;
  std::vector<int> inverse;

  Permutation() = default;
  explicit Permutation(std::vector<int> fwd) : forward(std::move(fwd))
  {
    inverse.assign(forward.size(), -1);
    for (std::size_t k = 0; k < forward.size(); k++)
    {
      inverse[forward[k]] = static_cast<int>(k);
    }
  }

  static Permutation identity(int n)
  {
    std::vector<int> fwd(n);
    for (int i = 0; i < n; i++)
    {
      fwd[i] = i;
    }
    return Permutation(std::move(fwd));
  }

  int size() const { return static_cast<int>(forward.size()); }

  bool valid() const
  {
    for (std::size_t k = 0; k < forward.size(); k++)
    {
      if (inverse[forward[k]] != static_cast<int>(k))
      {
        return false;
      }
    }
    for (int v : inverse)
    {
      if (v < 0)
      {
        return false;
      }
    }
    return true;
  }
};

}  // namespace rcmor

#endif  // RCMOR_PERMUTATION_HPP
