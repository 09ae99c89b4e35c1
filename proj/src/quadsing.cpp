#include "sect/quadsing.hpp"

#include <algorithm>

#include "sect/errors.hpp"

namespace sect {

namespace {

struct Split {
  Elem c0;
  std::vector<Elem> lin;
  Poly quad, higher;
};

Split split_parts(const Poly& f) {
  const RingPtr& R = f.ring();
  int nv = f.nvars();
  Split s{R->zero(), std::vector<Elem>((size_t)nv, R->zero()), Poly(R, nv), Poly(R, nv)};
  for (const auto& [mono, coeff] : f.terms()) {
    uint32_t d = total_degree(mono);
    if (d == 0) {
      s.c0 = coeff;
    } else if (d == 1) {
      for (int i = 0; i < nv; ++i)
        if (mono[i]) s.lin[i] = coeff;
    } else if (d == 2) {
      s.quad.add_term(mono, coeff);
    } else {
      s.higher.add_term(mono, coeff);
    }
  }
  return s;
}

/// Symmetric matrix S with quad = (1/2) x^T S x (odd residue characteristic).
std::vector<std::vector<Elem>> sym_matrix(const Poly& quad) {
  const RingPtr& R = quad.ring();
  int nv = quad.nvars();
  std::vector<std::vector<Elem>> S((size_t)nv, std::vector<Elem>((size_t)nv, R->zero()));
  for (const auto& [mono, coeff] : quad.terms()) {
    int i = -1, j = -1;
    for (int v = 0; v < nv; ++v) {
      if (mono[v] == 2) i = j = v;
      if (mono[v] == 1) (i < 0 ? i : j) = v;
    }
    if (i == j) {
      S[i][i] = R->add(coeff, coeff);
    } else {
      S[i][j] = coeff;
      S[j][i] = coeff;
    }
  }
  return S;
}

std::optional<std::vector<std::vector<Elem>>> mat_inverse(const RingPtr& R,
                                                          std::vector<std::vector<Elem>> m) {
  size_t n = m.size();
  std::vector<std::vector<Elem>> inv(n, std::vector<Elem>(n, R->zero()));
  for (size_t i = 0; i < n; ++i) inv[i][i] = R->one();
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = n;
    for (size_t r = c; r < n; ++r)
      if (R->is_unit(m[r][c])) {
        pivot = r;
        break;
      }
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    Elem s = R->inv(m[c][c]);
    for (size_t j = 0; j < n; ++j) {
      m[c][j] = R->mul(m[c][j], s);
      inv[c][j] = R->mul(inv[c][j], s);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || R->is_zero(m[r][c])) continue;
      Elem f = m[r][c];
      for (size_t j = 0; j < n; ++j) {
        m[r][j] = R->sub(m[r][j], R->mul(f, m[c][j]));
        inv[r][j] = R->sub(inv[r][j], R->mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

Poly shift_origin(const Poly& f, const std::vector<Elem>& v) {
  const RingPtr& R = f.ring();
  int nv = f.nvars();
  std::vector<Poly> images;
  for (int i = 0; i < nv; ++i)
    images.push_back(Poly::variable(R, nv, i) + Poly::constant(R, nv, v[i]));
  return f.substitute(images);
}

/// Smoothness of the residue quadric of `quad` in its projectivized space.
bool residue_quadric_smooth(const Poly& quad, int proj_vars) {
  if (quad.is_zero()) return false;
  Poly qbar = quad.ring()->is_dvr() ? quad.reduce_mod_pi() : quad;
  if (qbar.is_zero()) return false;
  // restrict to the first proj_vars variables; reject stray occurrences
  Poly q(qbar.ring(), proj_vars);
  for (const auto& [mono, coeff] : qbar.terms()) {
    for (int v = proj_vars; v < (int)mono.size(); ++v)
      if (mono[v]) return false;
    Mono m(mono.begin(), mono.begin() + proj_vars);
    q.add_term(m, coeff);
  }
  SchemeModel Qm{qbar.ring(), proj_vars, true, {q}, {}};
  return is_smooth(Qm).ok();
}

}  // namespace

Elem LocalModel::unit() const {
  return ring->unit_part(oq_case == OqCase::NonDegenerate ? c : b);
}

int LocalModel::order() const {
  const Elem& e = oq_case == OqCase::NonDegenerate ? c : b;
  auto v = ring->valuation(e);
  if (!v) throw PrecisionExhausted("singularity order is not visible at this precision");
  return *v;
}

bool LocalModel::normalized() const {
  if (oq_case == OqCase::NonDegenerate) return order() % 2 == 0;
  return ring->is_zero(c);
}

Poly LocalModel::realize() const {
  int nv = n + 1;
  Poly f = quad;
  if (oq_case == OqCase::NonDegenerate) {
    f = f - Poly::constant(ring, nv, c);
  } else {
    Mono sq(nv, 0), ln(nv, 0);
    sq[n] = 2;
    ln[n] = 1;
    f.add_term(sq, ring->one());
    f.add_term(ln, b);
    f = f + Poly::constant(ring, nv, c);
  }
  return f;
}

LocalModel make_local_model(const RingPtr& ring, OqCase oq_case, int n, Poly quad, Elem b, Elem c) {
  if (quad.nvars() != n + 1) throw ArityMismatch("quadratic form must live in n+1 variables");
  if (quad.is_zero() || quad.degree() != 2 || !quad.is_homogeneous())
    throw Unsupported("local model needs a nonzero homogeneous quadratic form");
  if (oq_case == OqCase::NonDegenerate) {
    if (!residue_quadric_smooth(quad, n + 1)) throw Unsupported("degenerate quadratic form");
    if (ring->is_dvr()) {
      if (!ring->residue_field()->is_zero(ring->residue(c)))
        throw Unsupported("constant term must lie in the maximal ideal");
      if (!ring->is_zero(b)) throw Unsupported("no linear datum in the nondegenerate case");
    }
  } else {
    if (!ring->is_dvr()) throw Unsupported("degenerate case needs a DVR");
    if (ring->p() != 2) throw Unsupported("degenerate case occurs only in residue characteristic 2");
    if (n < 2 || n % 2 != 0) throw Unsupported("degenerate case needs even positive fibre dimension");
    if (!residue_quadric_smooth(quad, n)) throw Unsupported("degenerate quadratic form");
    Elem disc = ring->sub(ring->mul(b, b), ring->mul(ring->from_int(4), c));
    if (!ring->residue_field()->is_zero(ring->residue(disc)))
      throw Unsupported("discriminant must lie in the maximal ideal");
  }
  return LocalModel{ring, oq_case, n, std::move(quad), std::move(b), std::move(c), ""};
}

namespace {

SingularityVerdict try_char2_pattern(const RingPtr& A, const Poly& f) {
  int nv = f.nvars();
  for (int j = 0; j < nv; ++j) {
    Elem u = A->zero(), bj = A->zero(), c0 = A->zero();
    Poly P(A, nv);
    bool matches = true;
    for (const auto& [mono, coeff] : f.terms()) {
      uint32_t d = total_degree(mono);
      if (mono[j] == 2 && d == 2) {
        u = coeff;
      } else if (mono[j] == 1 && d == 1) {
        bj = coeff;
      } else if (mono[j] != 0) {
        matches = false;
        break;
      } else if (d == 0) {
        c0 = coeff;
      } else if (d == 2) {
        P.add_term(mono, coeff);
      } else {
        matches = false;  // linear or higher-order in the remaining variables
        break;
      }
    }
    if (!matches || !A->is_unit(u)) continue;
    int n = nv - 1;
    if (n < 2 || n % 2 != 0) continue;
    Elem ui = A->inv(u);
    // move the distinguished variable to the last slot
    std::vector<Poly> images;
    for (int i = 0; i < nv; ++i) {
      int target = i == j ? n : (i < j ? i : i - 1);
      images.push_back(Poly::variable(A, nv, target));
    }
    Poly Pre = P.scaled(ui).substitute(images);
    Elem b = A->mul(bj, ui);
    Elem c = A->mul(c0, ui);
    if (!residue_quadric_smooth(Pre, n)) continue;
    SingularityVerdict v;
    v.kind = SingularityVerdict::Kind::OrdinaryQuadratic;
    v.model = make_local_model(A, OqCase::DegenerateChar2, n, Pre, b, c);
    return v;
  }
  SingularityVerdict v;
  v.kind = SingularityVerdict::Kind::NotOrdinary;
  v.reason = "no ordinary quadratic pattern in residue characteristic 2";
  return v;
}

}  // namespace

SingularityVerdict classify_point(const SchemeModel& X, const std::vector<Elem>& x, int jet_bound) {
  if (X.gens.size() != 1) throw NotHypersurface("classification needs a single defining equation");
  const RingPtr& R = X.ring;
  bool dvr = R->is_dvr();
  RingPtr F = dvr ? R->residue_field() : R;

  Poly f = X.gens[0];
  std::vector<Elem> pt = x;
  if (X.projective) {
    pt = normalize_projective(F, pt);
    int pivot = 0;
    while (pivot < (int)pt.size() && F->is_zero(pt[pivot])) ++pivot;
    if (pivot == (int)pt.size()) throw PointNotOnFibre("zero vector is not a projective point");
    f = f.dehomogenize(pivot);
    pt.erase(pt.begin() + pivot);
  }
  int nv = f.nvars();
  if ((int)pt.size() != nv) throw ArityMismatch("point has the wrong number of coordinates");
  Poly fbar = dvr ? f.reduce_mod_pi() : f;
  if (!F->is_zero(fbar.evaluate(pt))) throw PointNotOnFibre("point is not on the special fibre");

  // translate the point to the chart origin
  std::vector<Elem> lifted;
  for (const auto& a : pt) lifted.push_back(dvr ? R->lift(a) : a);
  f = shift_origin(f, lifted);

  Split s = split_parts(f);
  for (const auto& l : s.lin) {
    Elem lbar = dvr ? R->residue(l) : l;
    if (!F->is_zero(lbar)) return SingularityVerdict{SingularityVerdict::Kind::Smooth, {}, ""};
  }

  SingularityVerdict v;
  if (!dvr) {
    // field sense: the quadratic part alone decides (higher terms are
    // absorbable by a formal change of coordinates)
    if (residue_quadric_smooth(s.quad, nv)) {
      v.kind = SingularityVerdict::Kind::OrdinaryQuadratic;
      v.model = LocalModel{R, OqCase::NonDegenerate, nv - 1, s.quad, R->zero(), R->zero(), ""};
    } else {
      v.kind = SingularityVerdict::Kind::NotOrdinary;
      v.reason = "quadratic part does not define a smooth quadric";
    }
    return v;
  }

  if (R->p() == 2) {
    if (residue_quadric_smooth(s.quad, nv)) {
      bool lin_zero = true;
      for (const auto& l : s.lin)
        if (!R->is_zero(l)) lin_zero = false;
      if (lin_zero && s.higher.is_zero()) {
        v.kind = SingularityVerdict::Kind::OrdinaryQuadratic;
        v.model = make_local_model(R, OqCase::NonDegenerate, nv - 1, s.quad, R->zero(), R->neg(s.c0));
        return v;
      }
    }
    if (!s.higher.is_zero()) {
      v.kind = SingularityVerdict::Kind::Undecidable;
      v.reason = "higher-order terms in residue characteristic 2 are not absorbable here";
      return v;
    }
    return try_char2_pattern(R, f);
  }

  // odd residue characteristic: eliminate the linear part and absorb
  // higher-order terms by successive coordinate changes over the DVR
  if (!residue_quadric_smooth(s.quad, nv)) {
    v.kind = SingularityVerdict::Kind::NotOrdinary;
    v.reason = "quadratic part does not define a smooth quadric";
    return v;
  }
  if (s.higher.degree() > jet_bound) {
    v.kind = SingularityVerdict::Kind::Undecidable;
    v.reason = "input beyond the jet bound";
    return v;
  }

  int guard = 6 * R->k() + 10;
  for (int it = 0;; ++it) {
    if (it > guard) {
      v.kind = SingularityVerdict::Kind::Undecidable;
      v.reason = "coordinate changes did not stabilize";
      return v;
    }
    s = split_parts(f);
    auto Sinv = mat_inverse(R, sym_matrix(s.quad));
    if (!Sinv) {
      v.kind = SingularityVerdict::Kind::NotOrdinary;
      v.reason = "quadratic part degenerated during reduction";
      return v;
    }
    bool lin_zero = true;
    for (const auto& l : s.lin)
      if (!R->is_zero(l)) lin_zero = false;
    if (!lin_zero) {
      std::vector<Elem> shift((size_t)nv, R->zero());
      for (int i = 0; i < nv; ++i) {
        Elem acc = R->zero();
        for (int j = 0; j < nv; ++j) acc = R->add(acc, R->mul((*Sinv)[i][j], s.lin[j]));
        shift[i] = R->neg(acc);
      }
      f = shift_origin(f, shift);
      continue;
    }
    if (s.higher.is_zero()) break;
    // kill the lowest higher-degree part with a substitution x -> x + phi
    int d = 1 << 20;
    for (const auto& [mono, coeff] : s.higher.terms()) d = std::min(d, (int)total_degree(mono));
    if (d > 64) {
      v.kind = SingularityVerdict::Kind::Undecidable;
      v.reason = "absorption exceeded the degree cap";
      return v;
    }
    std::vector<Poly> psi((size_t)nv, Poly(R, nv));
    for (const auto& [mono, coeff] : s.higher.terms()) {
      if ((int)total_degree(mono) != d) continue;
      int i = 0;
      while (!mono[i]) ++i;
      Mono q = mono;
      --q[i];
      psi[i].add_term(q, coeff);
    }
    std::vector<Poly> images;
    for (int i = 0; i < nv; ++i) {
      Poly phi(R, nv);
      for (int j = 0; j < nv; ++j)
        if (!psi[j].is_zero()) phi = phi + psi[j].scaled((*Sinv)[i][j]);
      images.push_back(Poly::variable(R, nv, i) - phi);
    }
    f = f.substitute(images);
  }

  s = split_parts(f);
  Elem c = R->neg(s.c0);
  if (R->is_zero(c)) {
    v.kind = SingularityVerdict::Kind::Undecidable;
    v.reason = "constant term vanishes at this precision";
    return v;
  }
  v.kind = SingularityVerdict::Kind::OrdinaryQuadratic;
  v.model = make_local_model(R, OqCase::NonDegenerate, nv - 1, s.quad, R->zero(), c);
  return v;
}

LocalModel normalize(const LocalModel& m) {
  const RingPtr& A = m.ring;
  if (m.oq_case == OqCase::NonDegenerate) {
    if (m.order() % 2 == 0) return m;
    Embedding E = extend_ramified_sqrt(A);  // Unsupported in mixed characteristic
    LocalModel out = make_local_model(E.to, m.oq_case, m.n, m.quad.map_coeffs(E.to, E.map),
                                      E.to->zero(), E.map(m.c));
    out.provenance = m.provenance + "ramified-sqrt;";
    return out;
  }
  if (A->is_zero(m.c)) return m;
  auto shift_by_root = [&](const RingPtr& B, const Poly& quad, const Elem& b, const Elem& c,
                           const Elem& rho) {
    Elem b2 = B->add(b, B->add(rho, rho));
    LocalModel out = make_local_model(B, OqCase::DegenerateChar2, m.n, quad, b2, B->zero());
    return out;
  };
  for (int64_t i = 0; i < A->size(); ++i) {
    Elem rho = A->element(i);
    Elem val = A->add(A->mul(rho, rho), A->add(A->mul(m.b, rho), m.c));
    if (A->is_zero(val)) {
      LocalModel out = shift_by_root(A, m.quad, m.b, m.c, rho);
      out.provenance = m.provenance + "root-shift;";
      return out;
    }
  }
  if (A->kind() == RingKind::EquiDVR) {
    Embedding E = extend_unramified(A, 2);
    Poly quad2 = m.quad.map_coeffs(E.to, E.map);
    Elem b2 = E.map(m.b), c2 = E.map(m.c);
    for (int64_t i = 0; i < E.to->size(); ++i) {
      Elem rho = E.to->element(i);
      Elem val = E.to->add(E.to->mul(rho, rho), E.to->add(E.to->mul(b2, rho), c2));
      if (E.to->is_zero(val)) {
        LocalModel out = shift_by_root(E.to, quad2, b2, c2, rho);
        out.provenance = m.provenance + "unramified-ext-2;root-shift;";
        return out;
      }
    }
  }
  throw Unsupported("x^2 + bx + c does not split at this precision");
}

bool hyperplane_preserves_oq(const LocalModel& m, const Poly& g) {
  const RingPtr& R = g.ring();
  bool dvr = R->is_dvr();
  RingPtr F = dvr ? R->residue_field() : R;
  int nv = m.n + 1;
  if (g.nvars() != nv) throw ArityMismatch("hyperplane in the wrong chart");
  Poly gbar = dvr ? g.reduce_mod_pi() : g;
  if (!F->is_zero(gbar.constant_term()))
    throw PointNotOnFibre("hyperplane does not pass through the singular point");
  Poly glin(F, nv);
  for (const auto& [mono, coeff] : gbar.terms())
    if (total_degree(mono) == 1) glin.add_term(mono, coeff);
  if (glin.is_zero()) return false;

  Poly qfull = m.quad;
  if (m.oq_case == OqCase::DegenerateChar2) {
    Mono sq(nv, 0);
    sq[m.n] = 2;
    qfull.add_term(sq, m.ring->one());
  }
  Poly qbar = m.ring->is_dvr() ? qfull.reduce_mod_pi() : qfull;
  SchemeModel Qm{F, nv, true, {qbar}, {}};
  SchemeModel Hm{F, nv, true, {glin}, {}};
  return is_transversal(Qm, Hm).ok();
}

std::vector<Poly> good_hyperplane_locus_at_singularity(const LocalModel& m, int64_t budget) {
  RingPtr F = m.ring->is_dvr() ? m.ring->residue_field() : m.ring;
  int nv = m.n + 1;
  int64_t q = F->size();
  double total = 0;
  {
    double lvl = 1;
    for (int i = 0; i < nv; ++i) {
      total += lvl;
      lvl *= (double)q;
    }
  }
  if (total > (double)budget) throw BudgetExceeded("too many hyperplanes through the point");
  std::vector<Poly> out;
  for (int lead = 0; lead < nv; ++lead) {
    int free = nv - lead - 1;
    std::vector<int64_t> idx(free, 0);
    for (;;) {
      Poly g(F, nv);
      Mono mo(nv, 0);
      mo[lead] = 1;
      g.add_term(mo, F->one());
      for (int i = 0; i < free; ++i) {
        Elem c = F->element(idx[i]);
        if (!F->is_zero(c)) {
          Mono mi(nv, 0);
          mi[lead + 1 + i] = 1;
          g.add_term(mi, c);
        }
      }
      if (hyperplane_preserves_oq(m, g)) out.push_back(g);
      int i = free - 1;
      while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

Poly restrict_to_hyperplane(const Poly& f, const Poly& g) {
  const RingPtr& R = f.ring();
  int nv = f.nvars();
  if (g.nvars() != nv) throw ArityMismatch("hyperplane in the wrong chart");
  std::vector<Elem> a((size_t)nv, R->zero());
  for (const auto& [mono, coeff] : g.terms()) {
    uint32_t d = total_degree(mono);
    if (d == 0) {
      if (!R->is_zero(coeff)) throw PointNotOnFibre("hyperplane misses the origin");
    } else if (d == 1) {
      for (int i = 0; i < nv; ++i)
        if (mono[i]) a[i] = coeff;
    } else {
      throw Unsupported("not a linear form");
    }
  }
  int pivot = -1;
  for (int i = 0; i < nv; ++i)
    if (R->is_unit(a[i])) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw Unsupported("linear form has no unit coefficient");
  Elem s = R->neg(R->inv(a[pivot]));
  std::vector<Poly> images;
  for (int i = 0; i < nv; ++i) {
    if (i != pivot) {
      images.push_back(Poly::variable(R, nv - 1, i < pivot ? i : i - 1));
    } else {
      Poly sub(R, nv - 1);
      for (int j = 0; j < nv; ++j) {
        if (j == pivot || R->is_zero(a[j])) continue;
        Mono mo(nv - 1, 0);
        mo[j < pivot ? j : j - 1] = 1;
        sub.add_term(mo, R->mul(s, a[j]));
      }
      images.push_back(sub);
    }
  }
  return f.substitute(images);
}

}  // namespace sect
