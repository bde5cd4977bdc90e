#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/lattice.hpp"

namespace latmon {

/// A subset of a lattice with the induced order, its own tables, the
/// inclusion map and the position of each parent element inside it.
struct SubCarrier {
  LatticePtr carrier;
  Hom inclusion;
  std::vector<std::optional<Elem>> position;

  Elem index_of(Elem parent) const {
    const auto& p = position.at(parent);
    if (!p) throw Error("element is outside the sub-carrier");
    return *p;
  }
};

/// First operation of `cat` under which `members` is not closed in `l`, with
/// its witness. Meets and the top for MLat; also joins and the bottom for
/// DLat and Frm.
inline std::optional<std::pair<std::string, std::string>> closure_failure(const Lattice& l, const Bitset& members,
                                                                         Category cat) {
  if (preserves_meets(cat) && !members.test(l.top())) return std::pair{std::string("top"), l.label(l.top())};
  if (preserves_joins(cat) && !members.test(l.bottom())) return std::pair{std::string("bottom"), l.label(l.bottom())};
  std::optional<std::pair<std::string, std::string>> out;
  members.for_each([&](Elem x) {
    members.for_each([&](Elem y) {
      if (out) return;
      if (preserves_meets(cat) && !members.test(l.meet(x, y)))
        out = std::pair{std::string("meet"), l.label(x) + ", " + l.label(y)};
      else if (preserves_joins(cat) && !members.test(l.join(x, y)))
        out = std::pair{std::string("join"), l.label(x) + ", " + l.label(y)};
    });
  });
  return out;
}

/// The sub-carrier on `members`. Throws PreconditionViolated naming the
/// operation when members is not closed under `cat`, or NotALattice when
/// the induced order is not a lattice.
inline SubCarrier make_sub_carrier(const LatticePtr& parent, const Bitset& members, Category cat) {
  if (members.none()) throw PreconditionViolated("empty sub-carrier");
  if (auto bad = closure_failure(*parent, members, cat))
    throw PreconditionViolated("sub-carrier not closed under " + bad->first + " at " + bad->second);
  const auto elems = members.elements();
  const std::size_t n = elems.size();
  std::vector<std::string> labels;
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(parent->label(elems[i]));
    for (std::size_t j = 0; j < n; ++j)
      if (parent->leq(elems[i], elems[j])) up[i].set(j);
  }
  SubCarrier s;
  s.carrier = lattice_from_poset(FinitePoset::from_relation(std::move(labels), std::move(up)));
  s.inclusion = Hom{s.carrier, parent, std::vector<Elem>(elems.begin(), elems.end()), cat};
  s.position.assign(parent->size(), std::nullopt);
  for (std::size_t i = 0; i < n; ++i) s.position[elems[i]] = static_cast<Elem>(i);
  if (auto r = validate_hom(s.inclusion); !r.ok())
    throw PreconditionViolated("inclusion is not a hom: " + r.violations[0].law);
  return s;
}

}  // namespace latmon
