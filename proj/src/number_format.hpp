// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_SRC_NUMBER_FORMAT_HPP
#define RCMOR_SRC_NUMBER_FORMAT_HPP

#include <charconv>
#include <string>

namespace rcmor
{

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v)
{
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace rcmor

#endif  // RCMOR_SRC_NUMBER_FORMAT_HPP
