#pragma once

#include <string>
#include <vector>

#include "sect/poly.hpp"

namespace sect {

/// A (quasi-)projective or affine model: a list of defining polynomials over a
/// field or a truncated DVR. Projective models use homogeneous generators in
/// nvars coordinates (ambient P^{nvars-1}).
struct SchemeModel {
  RingPtr ring;
  int nvars = 0;
  bool projective = true;
  std::vector<Poly> gens;
  std::vector<std::string> varnames;  // optional display names

  int ambient_dim() const { return projective ? nvars - 1 : nvars; }
  int codim() const { return (int)gens.size(); }

  SchemeModel map_coeffs(const RingPtr& target, const std::function<Elem(const Elem&)>& f) const {
    SchemeModel m = *this;
    m.ring = target;
    m.gens.clear();
    for (const auto& g : gens) m.gens.push_back(g.map_coeffs(target, f));
    return m;
  }

  /// Special fibre equations (DVR models).
  SchemeModel reduce_mod_pi() const {
    SchemeModel m = *this;
    m.ring = ring->residue_field();
    m.gens.clear();
    for (const auto& g : gens) {
      Poly r = g.reduce_mod_pi();
      if (!r.is_zero()) m.gens.push_back(r);
    }
    return m;
  }
};

}  // namespace sect
