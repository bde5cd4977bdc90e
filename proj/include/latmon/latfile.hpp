#pragma once

// The .lat text format:
//
//   # comment
//   object chain3
//   kind: dlat
//   elements: 0 m 1
//   covers: 0<m m<1
//
// One key per line; `covers:` may repeat and accumulates. Whitespace inside
// a line is insignificant apart from separating labels.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latmon/corpus.hpp"
#include "latmon/error.hpp"
#include "latmon/lattice.hpp"
#include "latmon/poset.hpp"

namespace latmon {

struct LatFile {
  std::string name;
  CarrierKind kind = CarrierKind::Poset;
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(std::move(w));
  return out;
}

inline bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '<' || ch == '#' || ch == ':') return false;
  return true;
}

}  // namespace detail

/// Parses the text of a .lat file. Checks syntax and labels only; whether
/// the relation is a carrier of the declared kind is load_carrier's job.
inline LatFile parse_lat(std::string_view text) {
  LatFile f;
  bool have_object = false, have_kind = false, have_elements = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    std::string_view key, value;
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      key = detail::trim(line.substr(0, colon));
      value = detail::trim(line.substr(colon + 1));
    } else {
      const auto space = line.find_first_of(" \t");
      key = line.substr(0, space);
      value = space == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(space));
    }

    if (key == "object") {
      if (have_object) throw ParseError(line_no, "duplicate 'object'");
      if (value.empty()) throw ParseError(line_no, "'object' needs a name");
      f.name = std::string(value);
      have_object = true;
    } else if (key == "kind") {
      if (have_kind) throw ParseError(line_no, "duplicate 'kind'");
      auto k = carrier_kind_from(value);
      if (!k) throw ParseError(line_no, "unknown kind '" + std::string(value) + "'");
      f.kind = *k;
      have_kind = true;
    } else if (key == "elements") {
      if (have_elements) throw ParseError(line_no, "duplicate 'elements'");
      f.elements = detail::words(value);
      if (f.elements.empty()) throw ParseError(line_no, "'elements' is empty");
      for (std::size_t i = 0; i < f.elements.size(); ++i) {
        if (!detail::valid_label(f.elements[i])) throw ParseError(line_no, "bad label '" + f.elements[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
          if (f.elements[i] == f.elements[j]) throw ParseError(line_no, "duplicate label '" + f.elements[i] + "'");
      }
      have_elements = true;
    } else if (key == "covers") {
      if (!have_elements) throw ParseError(line_no, "'covers' before 'elements'");
      static const std::regex around_lt(R"(\s*<\s*)");
      const std::string compact = std::regex_replace(std::string(value), around_lt, "<");
      for (const auto& pair : detail::words(compact)) {
        const auto lt = pair.find('<');
        if (lt == std::string::npos || pair.find('<', lt + 1) != std::string::npos)
          throw ParseError(line_no, "expected 'a<b', got '" + pair + "'");
        std::string lo = pair.substr(0, lt), hi = pair.substr(lt + 1);
        for (const auto* l : {&lo, &hi})
          if (std::find(f.elements.begin(), f.elements.end(), *l) == f.elements.end())
            throw ParseError(line_no, "unknown label '" + *l + "'");
        if (lo == hi) throw ParseError(line_no, "self-cover '" + pair + "'");
        f.covers.emplace_back(std::move(lo), std::move(hi));
      }
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  const std::size_t end = line_no + 1;
  if (!have_object) throw ParseError(end, "missing 'object'");
  if (!have_kind) throw ParseError(end, "missing 'kind'");
  if (!have_elements) throw ParseError(end, "missing 'elements'");
  return f;
}

/// A parsed file validated against its declared kind. `lattice` is set for
/// every kind but poset.
struct Carrier {
  LatFile file;
  FinitePoset poset;
  LatticePtr lattice;
};

/// Builds the order and checks the declared kind. Throws KindMismatch when
/// the covers do not generate a partial order or the kind fails.
inline Carrier load_carrier(LatFile f) {
  Carrier c;
  try {
    c.poset = poset_from_covers(f.elements, f.covers);
  } catch (const CycleDetected& e) {
    throw KindMismatch(std::string("not a partial order: ") + e.what());
  }
  if (f.kind != CarrierKind::Poset) {
    try {
      c.lattice = lattice_from_poset(c.poset);
    } catch (const NotALattice& e) {
      throw KindMismatch("declared " + std::string(to_string(f.kind)) + " but " + e.what());
    }
    if (f.kind == CarrierKind::DLat) {
      if (auto d = is_distributive(*c.lattice); !d.holds) {
        const auto& [a, b, x] = *d.witness;
        throw KindMismatch("declared dlat but distributivity fails at (" + c.lattice->label(a) + ", " +
                           c.lattice->label(b) + ", " + c.lattice->label(x) + ")");
      }
    }
  }
  c.file = std::move(f);
  return c;
}

inline Carrier read_carrier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_carrier(parse_lat(text.str()));
}

/// The most specific kind a poset admits.
inline CarrierKind strongest_kind(const FinitePoset& p) {
  const LatticePtr l = try_lattice(p);
  if (!l) return CarrierKind::Poset;
  return is_distributive(*l).holds ? CarrierKind::DLat : CarrierKind::Lattice;
}

/// Renders a poset in .lat form, listing only its covers.
inline std::string emit_lat(const std::string& name, CarrierKind kind, const FinitePoset& p) {
  std::ostringstream out;
  out << "object " << name << "\n";
  out << "kind: " << to_string(kind) << "\n";
  out << "elements:";
  for (const auto& l : p.labels()) out << ' ' << l;
  out << "\n";
  const auto covers = p.covers();
  if (!covers.empty()) {
    out << "covers:";
    for (const auto& [lo, hi] : covers) out << ' ' << p.label(lo) << '<' << p.label(hi);
    out << "\n";
  }
  return out.str();
}

}  // namespace latmon
