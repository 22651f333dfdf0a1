// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_ERRORS_HPP
#define RCMOR_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace rcmor
{

// Factorization hit a pivot at or below the positive-definiteness threshold.
// The index refers to the row of the input matrix, not the permuted one.
// Stage is the 1-based cascade stage when the failure happened inside a
// multipoint reduction, 0 otherwise.
class NotPositiveDefinite : public std::runtime_error
{
public:
  NotPositiveDefinite(int index, double pivot, int stage = 0)
    : std::runtime_error(describe(index, pivot, stage)),
      index_(index), pivot_(pivot), stage_(stage)
  {
  }
  int index() const { return index_; }
  double pivot() const { return pivot_; }
  int stage() const { return stage_; }

private:
  static std::string describe(int index, double pivot, int stage)
  {
    std::string msg = "matrix is not positive definite: pivot " + std::to_string(pivot) +
                      " at row " + std::to_string(index);
    if (stage > 0)
    {
      msg += " during stage " + std::to_string(stage);
    }
    return msg;
  }

  int index_;
  double pivot_;
  int stage_;
};

// G + sC could not be solved at the requested point.
class SingularAtPoint : public std::runtime_error
{
public:
  explicit SingularAtPoint(std::complex<double> s)
    : std::runtime_error("system matrix is singular at s = (" + std::to_string(s.real()) +
                         ", " + std::to_string(s.imag()) + ")"),
      point_(s)
  {
  }
  std::complex<double> point() const { return point_; }

private:
  std::complex<double> point_;
};

class NetlistError : public std::runtime_error
{
public:
  NetlistError(int line, const std::string &reason)
    : std::runtime_error("netlist line " + std::to_string(line) + ": " + reason),
      line_(line)
  {
  }
  int line() const { return line_; }

private:
  int line_;
};

class SyntaxError : public NetlistError
{
public:
  using NetlistError::NetlistError;
};

class NonpositiveValue : public NetlistError
{
public:
  using NetlistError::NetlistError;
};

class UnknownNodeInPorts : public NetlistError
{
public:
  using NetlistError::NetlistError;
};

class IsolatedPortNode : public std::runtime_error
{
public:
  explicit IsolatedPortNode(const std::string &node)
    : std::runtime_error("port node has no incident element: " + node), node_(node)
  {
  }
  const std::string &node() const { return node_; }

private:
  std::string node_;
};

class DimensionMismatch : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class EmptySchedule : public std::invalid_argument
{
public:
  EmptySchedule() : std::invalid_argument("expansion schedule has no points") {}
};

}  // namespace rcmor

#endif  // RCMOR_ERRORS_HPP
