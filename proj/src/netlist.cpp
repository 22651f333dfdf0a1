// Copyright (c) 2026 the rcmor developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "rcmor/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "rcmor/errors.hpp"
#include "number_format.hpp"

namespace rcmor
{

namespace
{

std::string lowercase(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> tokenize(const std::string &line)
{
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string t;
  while (in >> t)
  {
    tokens.push_back(t);
  }
  return tokens;
}

// Decimal exponent of each suffix, or INT_MIN for an unknown one.
int suffix_exponent(const std::string &suffix)
{
  if (suffix == "meg")
  {
    return 6;
  }
  if (suffix.size() != 1)
  {
    return INT_MIN;
  }
  switch (suffix[0])
  {
    case 'f': return -15;
    case 'p': return -12;
    case 'n': return -9;
    case 'u': return -6;
    case 'm': return -3;
    case 'k': return 3;
    case 'g': return 9;
    case 't': return 12;
    default: return INT_MIN;
  }
}

}  // namespace

double parse_engineering_value(const std::string &token)
{
  const char *begin = token.c_str();
  char *end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin)
  {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  std::string suffix = lowercase(std::string(end));
  if (!suffix.empty())
  {
    int exp = suffix_exponent(suffix);
    if (exp == INT_MIN)
    {
      throw std::invalid_argument("unknown value suffix '" + suffix + "' in '" + token + "'");
    }
    std::string mantissa(begin, static_cast<std::size_t>(end - begin));
    if (mantissa.find_first_of("eE") == std::string::npos)
    {
      // One decimal rounding: the suffixed token denotes mantissa * 10^exp,
      // so "1.5n" parses to exactly the double that "1.5e-9" would.
      mantissa += 'e' + std::to_string(exp);
      v = std::strtod(mantissa.c_str(), nullptr);
    }
    else
    {
      v *= std::pow(10.0, exp);
    }
  }
  if (!std::isfinite(v))
  {
    throw std::invalid_argument("value is not finite: '" + token + "'");
  }
  return v;
}

Netlist parse_netlist(const std::string &text)
{
  Netlist nl;
  std::unordered_set<std::string> element_nodes;
  bool saw_ports = false;
  int ports_line = 0;
  int lineno = 0;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw))
  {
    lineno++;
    std::string line = raw.substr(0, raw.find('*'));
    std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty())
    {
      continue;
    }

    if (tokens[0][0] == '.')
    {
      std::string directive = lowercase(tokens[0]);
      if (directive == ".end")
      {
        break;
      }
      if (directive != ".ports")
      {
        throw SyntaxError(lineno, "unknown directive: " + tokens[0]);
      }
      if (saw_ports)
      {
        throw SyntaxError(lineno, "duplicate .ports directive");
      }
      if (tokens.size() < 2)
      {
        throw SyntaxError(lineno, ".ports needs at least one node");
      }
      for (size_t i = 1; i < tokens.size(); i++)
      {
        const std::string &name = tokens[i];
        if (name == kGroundNode)
        {
          throw SyntaxError(lineno, "ground cannot be a port");
        }
        if (std::find(nl.ports.begin(), nl.ports.end(), name) != nl.ports.end())
        {
          throw SyntaxError(lineno, "duplicate port node: " + name);
        }
        nl.ports.push_back(name);
      }
      saw_ports = true;
      ports_line = lineno;
      continue;
    }

    char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(tokens[0][0])));
    if (kind != 'R' && kind != 'C')
    {
      throw SyntaxError(lineno, "unknown card: " + tokens[0]);
    }
    if (tokens[0].size() < 2)
    {
      throw SyntaxError(lineno, "element needs a name after its kind letter");
    }
    if (tokens.size() != 4)
    {
      throw SyntaxError(lineno, "element card must read 'name node node value'");
    }
    const std::string &a = tokens[1];
    const std::string &b = tokens[2];
    if (a == b)
    {
      throw SyntaxError(lineno, "element shorts node '" + a + "' to itself");
    }
    double value = 0.0;
    try
    {
      value = parse_engineering_value(tokens[3]);
    }
    catch (const std::invalid_argument &e)
    {
      throw SyntaxError(lineno, e.what());
    }
    if (value <= 0.0)
    {
      throw NonpositiveValue(lineno, "element value must be positive, got " + tokens[3]);
    }
    nl.elements.push_back(
        {kind == 'R' ? ElementKind::kResistor : ElementKind::kCapacitor, a, b, value});
    element_nodes.insert(a);
    element_nodes.insert(b);
  }

  if (nl.elements.empty())
  {
    throw SyntaxError(lineno, "netlist has no elements");
  }
  if (!saw_ports)
  {
    throw SyntaxError(lineno, "missing .ports directive");
  }
  for (const std::string &port : nl.ports)
  {
    if (!element_nodes.count(port))
    {
      throw UnknownNodeInPorts(ports_line, "port is not a node of any element: " + port);
    }
  }
  return nl;
}

Netlist parse_netlist_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot read netlist file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_netlist(buf.str());
}

std::string to_netlist_text(const Netlist &nl, const std::string &title)
{
  std::ostringstream out;
  out << "* " << (title.empty() ? "rcmor netlist" : title) << '\n';
  int r_count = 0;
  int c_count = 0;
  for (const Element &e : nl.elements)
  {
    if (e.kind == ElementKind::kResistor)
    {
      out << 'R' << ++r_count;
    }
    else
    {
      out << 'C' << ++c_count;
    }
    out << ' ' << e.node_a << ' ' << e.node_b << ' ' << format_double(e.value) << '\n';
  }
  out << ".ports";
  for (const std::string &p : nl.ports)
  {
    out << ' ' << p;
  }
  out << "\n.end\n";
  return out.str();
}

void save_netlist(const Netlist &nl, const std::string &path, const std::string &title)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot write netlist file: " + path);
  }
  out << to_netlist_text(nl, title);
  if (!out.good())
  {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace rcmor
