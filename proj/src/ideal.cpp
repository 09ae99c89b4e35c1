#include "sect/ideal.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sect/errors.hpp"

namespace sect {

bool mono_divides(const Mono& a, const Mono& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Mono mono_quotient(const Mono& b, const Mono& a) {
  Mono q(b.size());
  for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
  return q;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono l(a.size());
  for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, int64_t step_budget) {
  if (f.is_zero()) return f;
  const RingPtr& F = f.ring();
  if (!F->is_field()) throw Unsupported("normal_form requires field coefficients");
  Poly rem(F, f.nvars());
  Poly p = f;
  int64_t steps = 0;
  while (!p.is_zero()) {
    if (++steps > step_budget) throw BudgetExceeded("normal form step budget exhausted");
    const Mono& lm = p.leading_mono();
    const Poly* red = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && mono_divides(g.leading_mono(), lm)) {
        red = &g;
        break;
      }
    }
    if (red) {
      Elem c = F->mul(p.leading_coeff(), F->inv(red->leading_coeff()));
      p = p - red->scaled(c) * Poly::monomial(F, mono_quotient(lm, red->leading_mono()), F->one());
    } else {
      rem.add_term(lm, p.leading_coeff());
      Poly t = Poly::monomial(F, lm, p.leading_coeff());
      p = p - t;
    }
  }
  return rem;
}

namespace {

Poly s_poly(const Poly& f, const Poly& g) {
  const RingPtr& F = f.ring();
  Mono l = mono_lcm(f.leading_mono(), g.leading_mono());
  Poly mf = Poly::monomial(F, mono_quotient(l, f.leading_mono()), F->inv(f.leading_coeff()));
  Poly mg = Poly::monomial(F, mono_quotient(l, g.leading_mono()), F->inv(g.leading_coeff()));
  return f * mf - g * mg;
}

bool coprime_leads(const Poly& f, const Poly& g) {
  const Mono& a = f.leading_mono();
  const Mono& b = g.leading_mono();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

}  // namespace

std::vector<Poly> buchberger(std::vector<Poly> gens, int64_t step_budget) {
  std::vector<Poly> basis;
  RingPtr F;
  int nvars = 0;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    F = g.ring();
    nvars = g.nvars();
    basis.push_back(std::move(g));
  }
  if (basis.empty()) return {};
  if (!F->is_field()) throw Unsupported("Groebner bases require field coefficients");

  // pairs ordered by (grevlex lcm, indices) for a deterministic normal strategy
  struct Pair {
    Mono lcm;
    size_t i, j;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    GrevlexGreater gt;
    if (gt(a.lcm, b.lcm) != gt(b.lcm, a.lcm)) return gt(b.lcm, a.lcm);  // smaller lcm first
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::vector<Pair> queue;
  auto push_pairs = [&](size_t j) {
    for (size_t i = 0; i < j; ++i)
      queue.push_back({mono_lcm(basis[i].leading_mono(), basis[j].leading_mono()), i, j});
  };
  for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

  int64_t steps = 0;
  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair pr = *it;
    queue.erase(it);
    if (++steps > step_budget) throw BudgetExceeded("Buchberger step budget exhausted");
    if (coprime_leads(basis[pr.i], basis[pr.j])) continue;
    Poly s = normal_form(s_poly(basis[pr.i], basis[pr.j]), basis, step_budget);
    if (!s.is_zero()) {
      basis.push_back(s);
      push_pairs(basis.size() - 1);
    }
  }

  // minimize: drop generators whose lead is divisible by another lead
  std::vector<Poly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (mono_divides(basis[j].leading_mono(), basis[i].leading_mono())) {
        if (basis[j].leading_mono() == basis[i].leading_mono() && j > i) continue;
        redundant = true;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  // reduce tails against the rest and scale monic
  std::vector<Poly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly r = normal_form(minimal[i], others, step_budget);
    if (!r.is_zero()) reduced.push_back(r.scaled(F->inv(r.leading_coeff())));
  }
  std::sort(reduced.begin(), reduced.end(), [](const Poly& a, const Poly& b) {
    return GrevlexGreater{}(a.leading_mono(), b.leading_mono());
  });
  (void)nvars;
  return reduced;
}

Ideal::Ideal(RingPtr field, int nvars, std::vector<Poly> gens)
    : ring_(std::move(field)), nvars_(nvars), gens_(std::move(gens)) {
  if (!ring_->is_field()) throw Unsupported("Ideal requires field coefficients");
  for (const auto& g : gens_) {
    if (!g.ring()->same(*ring_)) throw RingMismatch("ideal generator over a different ring");
    if (g.nvars() != nvars_) throw ArityMismatch("ideal generator with wrong variable count");
  }
}

const std::vector<Poly>& Ideal::groebner_basis() const {
  if (!gb_) gb_ = buchberger(gens_);
  return *gb_;
}

bool Ideal::contains(const Poly& f) const { return normal_form(f, groebner_basis()).is_zero(); }

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb[0].is_constant() && !gb[0].is_zero();
}

std::optional<int> Ideal::dimension() const {
  if (is_unit()) return std::nullopt;
  const auto& gb = groebner_basis();
  std::vector<Mono> leads;
  for (const auto& g : gb) leads.push_back(g.leading_mono());
  // dim = size of the largest variable subset S such that no leading monomial
  // is supported inside S
  int best = 0;
  for (uint32_t mask = 0; mask < (1u << nvars_); ++mask) {
    bool independent = true;
    for (const auto& l : leads) {
      bool inside = true;
      for (int v = 0; v < nvars_ && inside; ++v)
        if (l[v] && !(mask & (1u << v))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

int matrix_rank(const RingPtr& field, std::vector<std::vector<Elem>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && field->is_zero(m[pivot][c])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    Elem inv = field->inv(m[rank][c]);
    for (size_t j = c; j < cols; ++j) m[rank][j] = field->mul(m[rank][j], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || field->is_zero(m[r][c])) continue;
      Elem f = m[r][c];
      for (size_t j = c; j < cols; ++j)
        m[r][j] = field->sub(m[r][j], field->mul(f, m[rank][j]));
    }
    ++rank;
  }
  return (int)rank;
}

Poly poly_determinant(const std::vector<std::vector<Poly>>& m, const RingPtr& ring, int nvars) {
  size_t n = m.size();
  if (n == 0) return Poly::constant(ring, nvars, 1);
  if (n == 1) return m[0][0];
  Poly det(ring, nvars);
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    Poly cof = m[0][j] * poly_determinant(sub, ring, nvars);
    det = (j % 2 == 0) ? det + cof : det - cof;
  }
  return det;
}

namespace {

void column_subsets(int n, int c, std::vector<int>& cur, int start, const std::function<void(const std::vector<int>&)>& f) {
  if ((int)cur.size() == c) {
    f(cur);
    return;
  }
  for (int i = start; i <= n - (c - (int)cur.size()); ++i) {
    cur.push_back(i);
    column_subsets(n, c, cur, i + 1, f);
    cur.pop_back();
  }
}

struct ExtCtx {
  RingPtr field;
  std::function<Elem(const Elem&)> emb;
};

ExtCtx extension_of(const RingPtr& F, int e) {
  if (e == 1) return {F, [](const Elem& a) { return a; }};
  Embedding E = extend_unramified(F, e);
  return {E.to, E.map};
}

}  // namespace

std::vector<Poly> jacobian_minors(const std::vector<Poly>& gens, int nvars) {
  if (gens.empty()) return {};
  const RingPtr& R = gens.front().ring();
  int c = (int)gens.size();
  std::vector<Poly> out;
  if (c > nvars) return out;
  std::vector<std::vector<Poly>> jac(c, std::vector<Poly>());
  for (int r = 0; r < c; ++r)
    for (int v = 0; v < nvars; ++v) jac[r].push_back(gens[r].derivative(v));
  std::vector<int> cur;
  column_subsets(nvars, c, cur, 0, [&](const std::vector<int>& cols) {
    std::vector<std::vector<Poly>> sub(c);
    for (int r = 0; r < c; ++r)
      for (int col : cols) sub[r].push_back(jac[r][col]);
    Poly d = poly_determinant(sub, R, nvars);
    if (!d.is_zero()) out.push_back(d);
  });
  return out;
}

std::vector<Poly> singular_locus_gens(const std::vector<Poly>& gens, int nvars) {
  if (gens.empty()) return {};
  std::vector<Poly> out = gens;
  for (auto& m : jacobian_minors(gens, nvars)) out.push_back(std::move(m));
  return out;
}

Ideal singular_locus(const SchemeModel& X) {
  if (X.projective) throw Unsupported("singular_locus expects an affine model; use charts");
  if (!X.ring->is_field()) throw Unsupported("singular_locus requires field coefficients");
  Ideal I(X.ring, X.nvars, X.gens);
  int c = (int)X.gens.size();
  if (!I.is_unit()) {
    auto d = I.dimension();
    if (!d || *d != X.nvars - c)
      throw NotCompleteIntersection("dimension " + (d ? std::to_string(*d) : std::string("empty")) +
                                    " contradicts " + std::to_string(c) + " generators in " +
                                    std::to_string(X.nvars) + " variables");
  }
  return Ideal(X.ring, X.nvars, singular_locus_gens(X.gens, X.nvars));
}

namespace {

/// Groebner-side verdict for one affine chart. Returns nothing when the chart
/// is empty.
struct ChartResult {
  bool empty = false;
  std::optional<int> dim;
  bool sing_locus_empty = true;
};

ChartResult chart_groebner(const RingPtr& F, int nvars, const std::vector<Poly>& gens,
                           int64_t step_budget) {
  ChartResult res;
  Ideal I(F, nvars, gens);
  if (I.is_unit()) {
    res.empty = true;
    return res;
  }
  res.dim = I.dimension();
  Ideal S(F, nvars, singular_locus_gens(gens, nvars));
  res.sing_locus_empty = S.is_unit();
  return res;
}

/// Enumeration-side witnesses: points of V(gens) over F_{q^e}, e = 1..bound,
/// where the Jacobian drops below full rank c.
std::vector<std::vector<Elem>> enum_witnesses(const SchemeModel& X, int ext_bound, int64_t budget,
                                              RingPtr* witness_field) {
  int c = (int)X.gens.size();
  std::vector<Poly> derivs;
  for (const auto& g : X.gens)
    for (int v = 0; v < X.nvars; ++v) derivs.push_back(g.derivative(v));
  std::vector<std::vector<Elem>> found;
  for (int e = 1; e <= ext_bound; ++e) {
    ExtCtx ext = extension_of(X.ring, e);
    std::vector<Poly> gens_e, derivs_e;
    for (const auto& g : X.gens) gens_e.push_back(g.map_coeffs(ext.field, ext.emb));
    for (const auto& d : derivs) derivs_e.push_back(d.map_coeffs(ext.field, ext.emb));
    PointSet ps = enumerate_zeros(gens_e, ext.field, X.nvars, X.projective, 1, budget);
    for (const auto& pt : ps.points) {
      std::vector<std::vector<Elem>> jac(c);
      for (int r = 0; r < c; ++r)
        for (int v = 0; v < X.nvars; ++v)
          jac[r].push_back(derivs_e[(size_t)r * X.nvars + v].evaluate(pt));
      if (matrix_rank(ext.field, jac) < c) {
        found.push_back(pt);
        *witness_field = ext.field;
      }
    }
    if (!found.empty()) break;  // report witnesses over the smallest extension
  }
  return found;
}

}  // namespace

SmoothnessCertificate is_smooth(const SchemeModel& X, CheckMode mode, int ext_bound, int64_t budget) {
  if (!X.ring->is_field()) throw Unsupported("smoothness checks run over the residue/base field");
  SmoothnessCertificate cert;
  cert.mode = mode;
  cert.expected_dim = X.ambient_dim() - (int)X.gens.size();

  bool gb_empty = true, gb_smooth = true, gb_right_dim = true;
  std::optional<int> gb_dim;
  if (mode == CheckMode::Groebner || mode == CheckMode::Both) {
    std::vector<std::vector<Poly>> charts;
    if (X.projective) {
      for (int i = 0; i < X.nvars; ++i) {
        std::vector<Poly> cg;
        for (const auto& g : X.gens) cg.push_back(g.dehomogenize(i));
        charts.push_back(std::move(cg));
      }
    } else {
      charts.push_back(X.gens);
    }
    int chart_nvars = X.projective ? X.nvars - 1 : X.nvars;
    for (const auto& cg : charts) {
      ChartResult r = chart_groebner(X.ring, chart_nvars, cg, budget);
      if (r.empty) continue;
      gb_empty = false;
      if (!gb_dim || *r.dim > *gb_dim) gb_dim = r.dim;
      if (*r.dim != cert.expected_dim) gb_right_dim = false;
      if (!r.sing_locus_empty) gb_smooth = false;
    }
    cert.found_dim = gb_dim;
    if (gb_empty) {
      cert.empty = true;
      cert.verdict = SmoothnessCertificate::Verdict::Smooth;
    } else if (!gb_right_dim) {
      cert.verdict = SmoothnessCertificate::Verdict::WrongCodimension;
    } else if (!gb_smooth) {
      cert.verdict = SmoothnessCertificate::Verdict::SingularAt;
    } else {
      cert.verdict = SmoothnessCertificate::Verdict::Smooth;
    }
  }

  if (mode == CheckMode::Enumeration || mode == CheckMode::Both) {
    RingPtr wf;
    auto witnesses = enum_witnesses(X, ext_bound, budget, &wf);
    cert.projective_witnesses = X.projective;
    if (mode == CheckMode::Enumeration) {
      if (!witnesses.empty()) {
        cert.verdict = SmoothnessCertificate::Verdict::SingularAt;
        cert.witnesses = std::move(witnesses);
        cert.witness_field = wf;
      } else {
        cert.verdict = SmoothnessCertificate::Verdict::Smooth;
        cert.note = "no singular point over extensions of degree <= " + std::to_string(ext_bound);
      }
      return cert;
    }
    // Both: enumeration may not see points over larger fields, so only a
    // witness against a Smooth claim (or a point on an "empty" scheme) is a
    // contradiction.
    if (!witnesses.empty() &&
        (cert.verdict == SmoothnessCertificate::Verdict::Smooth || cert.empty)) {
      throw OracleDisagreement("Groebner verdict smooth/empty but enumeration found singular point " +
                               point_to_string(wf, witnesses.front(), X.projective));
    }
    if (cert.empty) {
      for (int e = 1; e <= ext_bound; ++e) {
        ExtCtx ext = extension_of(X.ring, e);
        std::vector<Poly> gens_e;
        for (const auto& g : X.gens) gens_e.push_back(g.map_coeffs(ext.field, ext.emb));
        PointSet ps = enumerate_zeros(gens_e, ext.field, X.nvars, X.projective, 1, budget);
        if (!ps.points.empty())
          throw OracleDisagreement("Groebner says empty but enumeration found point " +
                                   point_to_string(ext.field, ps.points.front(), X.projective));
      }
    }
    if (cert.verdict == SmoothnessCertificate::Verdict::SingularAt && !witnesses.empty()) {
      cert.witnesses = std::move(witnesses);
      cert.witness_field = wf;
    } else if (cert.verdict != SmoothnessCertificate::Verdict::Smooth && witnesses.empty()) {
      cert.note = "singular locus has no point over extensions of degree <= " + std::to_string(ext_bound);
    }
  }
  return cert;
}

SmoothnessCertificate is_transversal(const SchemeModel& X, const SchemeModel& Z, CheckMode mode,
                                     int ext_bound, int64_t budget) {
  if (!X.ring->same(*Z.ring)) throw RingMismatch("transversality of models over different rings");
  if (X.nvars != Z.nvars || X.projective != Z.projective)
    throw ArityMismatch("transversality of models in different ambient spaces");
  SchemeModel inter = X;
  for (const auto& g : Z.gens) inter.gens.push_back(g);
  return is_smooth(inter, mode, ext_bound, budget);
}

SncReport check_snc(const std::vector<SchemeModel>& components, CheckMode mode, int ext_bound,
                    int64_t budget) {
  SncReport rep;
  if (components.empty()) return rep;
  size_t n = components.size();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    SchemeModel inter = components[0];
    inter.gens.clear();
    for (size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      subset.push_back((int)i);
      for (const auto& g : components[i].gens) inter.gens.push_back(g);
    }
    SmoothnessCertificate cert = is_smooth(inter, mode, ext_bound, budget);
    if (!cert.ok()) rep.ok = false;
    rep.strata.emplace_back(std::move(subset), std::move(cert));
  }
  std::sort(rep.strata.begin(), rep.strata.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return rep;
}

std::string SmoothnessCertificate::report() const {
  std::ostringstream os;
  os << "verdict: ";
  switch (verdict) {
    case Verdict::Smooth: os << (empty ? "Smooth (empty)" : "Smooth"); break;
    case Verdict::SingularAt: os << "SingularAt"; break;
    case Verdict::WrongCodimension: os << "WrongCodimension"; break;
  }
  os << "\nexpected_dim: " << expected_dim;
  if (found_dim) os << "\nfound_dim: " << *found_dim;
  if (!witnesses.empty()) {
    os << "\nwitnesses:";
    for (const auto& w : witnesses) os << " " << point_to_string(witness_field, w, projective_witnesses);
  }
  if (!note.empty()) os << "\nnote: " << note;
  return os.str();
}

std::string SncReport::report() const {
  std::ostringstream os;
  os << (ok ? "snc: true" : "snc: false");
  for (const auto& [subset, cert] : strata) {
    os << "\nstratum {";
    for (size_t i = 0; i < subset.size(); ++i) os << (i ? "," : "") << subset[i];
    os << "}: ";
    std::string r = cert.report();
    os << r.substr(r.find(' ') + 1, r.find('\n') - r.find(' ') - 1);
  }
  return os.str();
}

}  // namespace sect
