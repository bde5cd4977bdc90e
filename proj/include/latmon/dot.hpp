#pragma once

#include <sstream>
#include <string>

#include "latmon/algebra.hpp"
#include "latmon/lattice.hpp"
#include "latmon/poset.hpp"

namespace latmon {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

inline void dot_nodes(std::ostringstream& out, const FinitePoset& p) {
  for (Elem x = 0; x < p.size(); ++x) out << "  n" << x << " [label=" << dot_quote(p.label(x)) << "];\n";
}

}  // namespace detail

/// Hasse diagram: cover edges only, drawn bottom to top.
inline std::string emit_dot_order(const std::string& name, const FinitePoset& p) {
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=BT;\n";
  detail::dot_nodes(out, p);
  for (const auto& [lo, hi] : p.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

/// The totally-below relation, one edge y -> x per pair y ⋘ x, self-loops
/// included.
inline std::string emit_dot_totally_below(const std::string& name, const Lattice& l) {
  const auto r = totally_below(l);
  std::ostringstream out;
  out << "digraph " << detail::dot_quote(name) << " {\n  rankdir=BT;\n";
  detail::dot_nodes(out, l.order());
  for (Elem y = 0; y < l.size(); ++y)
    for (Elem x = 0; x < l.size(); ++x)
      if (r.related(y, x)) out << "  n" << y << " -> n" << x << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace latmon
