// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef RCMOR_NETLIST_HPP
#define RCMOR_NETLIST_HPP

#include <string>
#include <vector>

namespace rcmor
{

inline constexpr const char *kGroundNode = "0";

enum class ElementKind
{
  kResistor,
  kCapacitor
};

struct Element
{
  ElementKind kind;
  std::string node_a;
  std::string node_b;
  double value;  // ohms for resistors, farads for capacitors
};

struct Netlist
{
  std::vector<Element> elements;
  std::vector<std::string> ports;
};

//
// Line-oriented RC netlist. Element cards are `R<id> <n1> <n2> <value>` and
// `C<id> <n1> <n2> <value>`; `.ports <n1> ...` names the external nodes (in
// column order) and is required; `.end` stops reading; `*` starts a comment.
// Node "0" is ground. Values take SI suffixes f p n u m k meg g t, any case.
//
Netlist parse_netlist(const std::string &text);
Netlist parse_netlist_file(const std::string &path);

std::string to_netlist_text(const Netlist &nl, const std::string &title = "");
void save_netlist(const Netlist &nl, const std::string &path, const std::string &title = "");

// "4.7k" -> 4700. Throws std::invalid_argument on malformed or non-finite
// input; sign checks are the caller's business.
double parse_engineering_value(const std::string &token);

}  // namespace rcmor

#endif  // RCMOR_NETLIST_HPP
