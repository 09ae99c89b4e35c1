#include "sect/lefschetz.hpp"

#include <algorithm>
#include <sstream>

#include "sect/errors.hpp"

namespace sect {

namespace {

Elem elem_pow(const RingPtr& R, Elem a, int64_t e) {
  Elem r = R->one();
  while (e > 0) {
    if (e & 1) r = R->mul(r, a);
    a = R->mul(a, a);
    e >>= 1;
  }
  return r;
}

/// Is a fixed by Frobenius^{m'} for a proper divisor m' of m (relative to a
/// base field of size q)?
bool in_proper_subfield(const RingPtr& E, const Elem& a, int64_t q, int m) {
  for (int mp = 1; mp < m; ++mp) {
    if (m % mp) continue;
    int64_t e = 1;
    for (int i = 0; i < mp; ++i) e *= q;
    if (elem_pow(E, a, e) == a) return true;
  }
  return false;
}

bool proportional(const Poly& a, const Poly& b) {
  // over a field: every 2x2 minor of the coefficient rows vanishes
  const RingPtr& F = a.ring();
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      // the 2x2 minor on columns ma, mb
      if (F->mul(ca, cb) != F->mul(a.coeff(mb), b.coeff(ma))) return false;
    }
  return true;  // all 2x2 coefficient minors vanish: the rows are dependent
}

std::vector<Elem> embed_point(const std::vector<Elem>& x, const Embedding& emb) {
  std::vector<Elem> out;
  for (const auto& c : x) out.push_back(emb.map(c));
  return out;
}

/// Affine localization of a homogeneous form at a normalized projective point:
/// dehomogenize at the first nonzero coordinate and translate the point to the
/// origin.
Poly localize_at(const Poly& g, const std::vector<Elem>& x, int* chart_out = nullptr) {
  const RingPtr& F = g.ring();
  int nv = g.nvars();
  int c = 0;
  while (c < nv && F->is_zero(x[c])) ++c;
  if (c == nv) throw Error("zero projective point");
  if (chart_out) *chart_out = c;
  Poly aff = g.dehomogenize(c);
  std::vector<Poly> images;
  for (int i = 0, a = 0; i < nv; ++i) {
    if (i == c) continue;
    images.push_back(Poly::variable(F, nv - 1, a) + Poly::constant(F, nv - 1, x[i]));
    ++a;
  }
  return aff.substitute(images);
}

Poly degree_part(const Poly& f, uint32_t d) {
  Poly out(f.ring(), f.nvars());
  for (const auto& [mono, coeff] : f.terms())
    if (total_degree(mono) == d) out.add_term(mono, coeff);
  return out;
}

/// Local intersection multiplicity of two plane curves at the origin, by
/// stabilized colength of (f, g, u^D, v^D); nullopt when it does not
/// stabilize within the cap (non-isolated intersection).
std::optional<int> local_multiplicity(const Poly& f, const Poly& g, int cap = 12) {
  const RingPtr& F = f.ring();
  int prev = -1;
  for (int D = 2; D <= cap; ++D) {
    Mono uD{(uint32_t)D, 0}, vD{0, (uint32_t)D};
    std::vector<Poly> gens{f, g, Poly::monomial(F, uD, F->one()), Poly::monomial(F, vD, F->one())};
    auto gb = buchberger(gens);
    int cnt = 0;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        Mono mo{(uint32_t)a, (uint32_t)b};
        bool top = false;
        for (const auto& q : gb)
          if (mono_divides(q.leading_mono(), mo)) {
            top = true;
            break;
          }
        if (!top) ++cnt;
      }
    if (cnt == prev) return cnt;
    prev = cnt;
  }
  return std::nullopt;
}

std::string kind_name(SingularityVerdict::Kind k) {
  switch (k) {
    case SingularityVerdict::Kind::Smooth: return "Smooth";
    case SingularityVerdict::Kind::OrdinaryQuadratic: return "OrdinaryQuadratic";
    case SingularityVerdict::Kind::NotOrdinary: return "NotOrdinary";
    default: return "Undecidable";
  }
}

}  // namespace

Pencil make_pencil(int d, Poly f0, Poly finf) {
  if (d < 1) throw Error("pencil degree must be >= 1");
  if (f0.is_zero() || finf.is_zero()) throw Error("pencil forms must be nonzero");
  if (f0.degree() != d || finf.degree() != d || !f0.is_homogeneous() || !finf.is_homogeneous())
    throw Error("pencil forms must be homogeneous of the declared degree");
  const RingPtr& R = f0.ring();
  if (!R->same(*finf.ring())) throw RingMismatch("pencil forms over different rings");
  Poly a = R->is_dvr() ? f0.reduce_mod_pi() : f0;
  Poly b = R->is_dvr() ? finf.reduce_mod_pi() : finf;
  if (proportional(a, b)) throw Error("pencil forms are proportional");
  return Pencil{R, f0.nvars(), d, std::move(f0), std::move(finf)};
}

Poly pencil_member(const Pencil& p, const Elem& t0, const Elem& t1) {
  return p.f0.scaled(t0) + p.finf.scaled(t1);
}

SchemeModel axis_of(const Pencil& p) {
  return SchemeModel{p.ring, p.nvars, true, {p.f0, p.finf}, {}};
}

SingularityVerdict classify_section_point(const SchemeModel& X, const Poly& g,
                                          const std::vector<Elem>& x) {
  const RingPtr& F = X.ring;
  if (!F->is_field()) throw Unsupported("section classification runs over a field");
  if (X.gens.size() != 1 || !X.projective) throw NotHypersurface("section of a non-hypersurface");
  std::vector<Elem> pt = normalize_projective(F, x);
  if (!F->is_zero(X.gens[0].evaluate(pt)) || !F->is_zero(g.evaluate(pt)))
    throw PointNotOnFibre("point not on the section");

  if (X.nvars == 3) {
    // plane curve: local intersection multiplicity decides
    Poly floc = localize_at(X.gens[0], pt);
    Poly gloc = localize_at(g, pt);
    auto mu = local_multiplicity(floc, gloc);
    SingularityVerdict v;
    if (!mu) {
      v.kind = SingularityVerdict::Kind::Undecidable;
      v.reason = "intersection multiplicity did not stabilize";
    } else if (*mu <= 1) {
      v.kind = SingularityVerdict::Kind::Smooth;
    } else if (*mu == 2) {
      v.kind = SingularityVerdict::Kind::OrdinaryQuadratic;
      v.reason = "intersection multiplicity 2";
    } else {
      v.kind = SingularityVerdict::Kind::NotOrdinary;
      v.reason = "intersection multiplicity " + std::to_string(*mu);
    }
    return v;
  }

  if (g.degree() == 1) {
    Poly restricted = restrict_to_hyperplane(X.gens[0], g);
    if (restricted.is_zero()) {
      SingularityVerdict v;
      v.kind = SingularityVerdict::Kind::Undecidable;
      v.reason = "member contains the hypersurface";
      return v;
    }
    // pivot convention matches restrict_to_hyperplane: first unit coefficient
    int pivot = -1;
    for (int i = 0; i < g.nvars() && pivot < 0; ++i) {
      Mono mo(g.nvars(), 0);
      mo[i] = 1;
      if (F->is_unit(g.coeff(mo))) pivot = i;
    }
    std::vector<Elem> rest;
    for (int i = 0; i < (int)pt.size(); ++i)
      if (i != pivot) rest.push_back(pt[i]);
    SchemeModel S{F, X.nvars - 1, true, {restricted}, {}};
    return classify_point(S, rest);
  }

  SingularityVerdict v;
  v.kind = SingularityVerdict::Kind::Undecidable;
  v.reason = "nonlinear members are classified only on plane curves";
  return v;
}

TangencyTable dual_table(const SchemeModel& X, int d, int ext_bound, int64_t budget) {
  const RingPtr& F = X.ring;
  if (!F->is_field()) throw Unsupported("dual tabulation runs over a finite field");
  auto monos = degree_monomials(X.nvars, d);
  int M = (int)monos.size();
  int64_t q = F->size();
  double count = 0, lvl = 1;
  for (int i = 0; i < M; ++i) {
    count += lvl;
    lvl *= (double)q;
  }
  if (count > (double)budget) throw BudgetExceeded("too many degree-d forms");

  TangencyTable table;
  table.d = d;
  table.ext_bound = ext_bound;
  Ideal IX(F, X.nvars, X.gens);

  for (int lead = 0; lead < M; ++lead) {
    int free = M - lead - 1;
    std::vector<int64_t> idx(free, 0);
    for (;;) {
      Poly g = Poly::monomial(F, monos[lead], F->one());
      for (int i = 0; i < free; ++i) {
        Elem c = F->element(idx[i]);
        if (!F->is_zero(c)) g.add_term(monos[lead + 1 + i], c);
      }
      TangencyEntry e;
      e.form = g;
      if (IX.contains(g)) {
        e.contained = true;
      } else {
        SchemeModel Hm{F, X.nvars, true, {g}, X.varnames};
        auto cert = is_transversal(X, Hm, CheckMode::Both, ext_bound, budget);
        e.tangent = !cert.ok();
        if (e.tangent) {
          e.points = cert.witnesses;
          e.point_field = cert.witness_field;
          if (!e.points.empty()) {
            int deg = e.point_field->m() / F->m();
            Embedding emb = extend_unramified(F, deg);
            SchemeModel Xw = X.map_coeffs(emb.to, emb.map);
            Poly gw = g.map_coeffs(emb.to, emb.map);
            for (const auto& pt : e.points) e.verdicts.push_back(classify_section_point(Xw, gw, pt));
          }
          e.open_stratum = e.points.size() == 1 && e.verdicts[0].is_oq();
        }
      }
      table.entries.push_back(std::move(e));
      int i = free - 1;
      while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
      if (i < 0) break;
    }
  }
  return table;
}

std::string TangencyTable::to_text(const std::vector<std::string>& varnames) const {
  std::vector<std::string> rows;
  for (const auto& e : entries) {
    std::ostringstream os;
    os << e.form.to_string(varnames) << " ; ";
    os << (e.contained ? "contained" : e.tangent ? (e.open_stratum ? "tangent(open)" : "tangent")
                                                 : "transversal");
    os << " ; ";
    for (size_t i = 0; i < e.points.size(); ++i)
      os << (i ? " " : "") << point_to_string(e.point_field, e.points[i], true);
    os << " ; ";
    for (size_t i = 0; i < e.verdicts.size(); ++i)
      os << (i ? " " : "") << kind_name(e.verdicts[i].kind);
    rows.push_back(os.str());
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

std::vector<MemberVerdict> singular_members(const SchemeModel& X, const Pencil& p, int ext_bound,
                                            const std::vector<std::vector<Elem>>& declared,
                                            int64_t budget) {
  const RingPtr& F = X.ring;
  if (!F->is_field()) throw Unsupported("member scan runs over a finite field");
  int64_t q = F->size();
  std::vector<MemberVerdict> out;

  for (int m = 1; m <= ext_bound; ++m) {
    Embedding emb = extend_unramified(F, m);
    RingPtr E = emb.to;
    SchemeModel XE = X.map_coeffs(E, emb.map);
    Poly f0 = p.f0.map_coeffs(E, emb.map), finf = p.finf.map_coeffs(E, emb.map);
    Ideal IX(E, X.nvars, XE.gens);
    // singular points are sought in extensions of the parameter field; shrink
    // the reach until the point enumeration fits the budget
    int point_ext = std::max(1, ext_bound - (m - 1));
    auto enum_cost = [&](int e) {
      double cand = 1;
      for (int i = 0; i < e * X.nvars; ++i) cand *= (double)E->size();
      return cand;
    };
    while (point_ext > 1 && enum_cost(point_ext) > (double)budget) --point_ext;
    CheckMode mode =
        enum_cost(point_ext) <= (double)budget ? CheckMode::Both : CheckMode::Groebner;

    int64_t n_t = (m == 1) ? q + 1 : E->size();
    for (int64_t ti = 0; ti < n_t; ++ti) {
      Elem t0, t1;
      if (m == 1 && ti == q) {
        t0 = E->zero();
        t1 = E->one();
      } else {
        Elem tau = E->element(ti);
        if (m > 1 && in_proper_subfield(E, tau, q, m)) continue;
        t0 = E->one();
        t1 = tau;
      }
      Poly g = pencil_member(Pencil{E, p.nvars, p.d, f0, finf}, t0, t1);
      if (IX.contains(g)) continue;  // degenerate member equal to (part of) X
      SchemeModel Hm{E, X.nvars, true, {g}, X.varnames};
      auto cert = is_transversal(XE, Hm, mode, point_ext, budget);
      if (cert.ok()) continue;

      MemberVerdict mv;
      mv.field = E;
      mv.t = {t0, t1};
      mv.point_field = cert.witness_field ? cert.witness_field : E;
      // drop witnesses at declared singular points of X
      int wdeg = mv.point_field->m() / E->m();
      Embedding emb2 = extend_unramified(E, wdeg);
      std::vector<std::vector<Elem>> declared_w;
      for (const auto& x : declared)
        declared_w.push_back(normalize_projective(mv.point_field, embed_point(embed_point(x, emb), emb2)));
      bool hit_declared = false;
      for (const auto& w : cert.witnesses) {
        auto wn = normalize_projective(mv.point_field, w);
        bool is_declared = false;
        for (const auto& dx : declared_w)
          if (dx == wn) is_declared = true;
        if (is_declared)
          hit_declared = true;
        else
          mv.points.push_back(wn);
      }
      if (mv.points.empty() && hit_declared) continue;  // singular only at declared points

      if (!mv.points.empty()) {
        SchemeModel Xw = XE.map_coeffs(emb2.to, emb2.map);
        Poly gw = g.map_coeffs(emb2.to, emb2.map);
        for (const auto& pt : mv.points) mv.verdicts.push_back(classify_section_point(Xw, gw, pt));
        mv.certified = mv.points.size() == 1 && mv.verdicts[0].is_oq();
        if (!mv.certified)
          mv.note = mv.points.size() != 1 ? "more than one new singular point"
                                          : "singular point is " + kind_name(mv.verdicts[0].kind);
      } else {
        mv.certified = false;
        mv.note = "non-transversal member with no singular point within the enumeration bound";
      }
      out.push_back(std::move(mv));
    }
  }
  return out;
}

std::string LefschetzReport::report() const {
  std::ostringstream os;
  os << "lefschetz: " << (lefschetz ? "yes" : "no") << "\n";
  os << "ext-bound: " << ext_bound << "\n";
  os << "members-scanned: " << members_scanned << "\n";
  os << "sigma-size: " << sigma.size() << "\n";
  for (const auto& mv : sigma) {
    os << "sigma-member: t=" << point_to_string(mv.field, mv.t, true) << " points=";
    for (size_t i = 0; i < mv.points.size(); ++i)
      os << (i ? " " : "") << point_to_string(mv.point_field, mv.points[i], true);
    os << " verdicts=";
    for (size_t i = 0; i < mv.verdicts.size(); ++i)
      os << (i ? " " : "") << kind_name(mv.verdicts[i].kind);
    os << "\n";
  }
  if (!failure.empty()) os << "failure: " << failure << "\n";
  return os.str();
}

LefschetzReport is_lefschetz(const SchemeModel& X, const Pencil& p,
                             const std::vector<std::vector<Elem>>& oq_points, int ext_bound,
                             int64_t budget) {
  const RingPtr& F = X.ring;
  if (!F->is_field()) throw Unsupported("pencil verification runs over a finite field");
  if (!F->same(*p.ring) || X.nvars != p.nvars) throw RingMismatch("pencil does not match the model");
  LefschetzReport rep;
  rep.ext_bound = ext_bound;
  int64_t q = F->size();
  {
    int64_t qe = 1;
    for (int i = 0; i < ext_bound; ++i) qe *= q;
    rep.members_scanned = qe + 1;
  }
  auto fail = [&rep](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };

  // validate the model
  std::vector<LocalModel> oq_models;
  if (oq_points.empty()) {
    auto cert = is_smooth(X, CheckMode::Both, 2, budget);
    if (!cert.ok()) return fail("model is not smooth; declare its singular points");
  } else {
    for (const auto& x : oq_points) {
      auto v = classify_point(X, x);
      if (!v.is_oq())
        return fail("declared point " + point_to_string(F, x, true) + " is not ordinary quadratic");
      oq_models.push_back(*v.model);
    }
  }

  // axis conditions
  for (const auto& x : oq_points)
    if (F->is_zero(p.f0.evaluate(x)) && F->is_zero(p.finf.evaluate(x)))
      return fail("axis meets the declared singular point " + point_to_string(F, x, true));
  rep.axis_cert = is_transversal(X, axis_of(p), CheckMode::Both, 2, budget);
  if (!rep.axis_cert.ok()) return fail("axis is not transversal to the model");

  // members through a declared point: unique t with g_t(x) = 0
  for (size_t i = 0; i < oq_points.size(); ++i) {
    const auto& x = oq_points[i];
    Elem t0 = p.finf.evaluate(x), t1 = F->neg(p.f0.evaluate(x));
    Poly g = pencil_member(p, t0, t1);
    std::string label = "member through " + point_to_string(F, x, true);
    std::vector<Elem> xn = normalize_projective(F, x);
    Poly gloc = localize_at(g, xn);
    Poly lin = degree_part(gloc, 1);
    if (lin.is_zero()) return fail(label + ": member is singular at the point");
    if (!hyperplane_preserves_oq(oq_models[i], lin))
      return fail(label + ": tangent-space criterion fails");
    auto sv = classify_section_point(X, g, xn);
    if (!sv.is_oq()) return fail(label + ": section point is " + kind_name(sv.kind));
  }

  // the bad locus Sigma
  rep.sigma = singular_members(X, p, ext_bound, oq_points, budget);
  for (const auto& mv : rep.sigma)
    if (!mv.certified)
      return fail("member t=" + point_to_string(mv.field, mv.t, true) + ": " + mv.note);
  rep.lefschetz = true;
  return rep;
}

namespace {

/// Enumerate canonical two-flags of degree-d forms (reduced row-echelon bases
/// of lines in the dual space), calling fn on each until it returns true.
/// Returns the number of candidates tried.
int64_t scan_two_flags(const RingPtr& E, int nvars, int d, int64_t cap,
                       const std::function<bool(const Poly&, const Poly&)>& fn) {
  auto monos = degree_monomials(nvars, d);
  int M = (int)monos.size();
  int64_t q = E->size(), tried = 0;
  for (int i = 0; i < M; ++i)
    for (int j = i + 1; j < M; ++j) {
      std::vector<int> free0, free1;
      for (int c = i + 1; c < M; ++c)
        if (c != j) free0.push_back(c);
      for (int c = j + 1; c < M; ++c) free1.push_back(c);
      int nfree = (int)(free0.size() + free1.size());
      std::vector<int64_t> idx(nfree, 0);
      for (;;) {
        if (tried >= cap) return tried;
        ++tried;
        Poly f0 = Poly::monomial(E, monos[i], E->one());
        for (size_t a = 0; a < free0.size(); ++a) {
          Elem c = E->element(idx[a]);
          if (!E->is_zero(c)) f0.add_term(monos[free0[a]], c);
        }
        Poly finf = Poly::monomial(E, monos[j], E->one());
        for (size_t a = 0; a < free1.size(); ++a) {
          Elem c = E->element(idx[free0.size() + a]);
          if (!E->is_zero(c)) finf.add_term(monos[free1[a]], c);
        }
        if (fn(f0, finf)) return tried;
        int t = nfree - 1;
        while (t >= 0 && ++idx[t] == q) idx[t--] = 0;
        if (t < 0) break;
      }
    }
  return tried;
}

}  // namespace

PencilSearch find_pencil(const SchemeModel& X, int d, int ell, int max_ext,
                         const std::vector<std::vector<Elem>>& oq_points, int ext_bound,
                         int64_t candidate_budget, int64_t budget) {
  const RingPtr& F = X.ring;
  if (!F->is_field()) throw Unsupported("pencil search runs over a finite field");
  PencilSearch res;
  int deg = 1;
  for (int level = 0; level <= max_ext; ++level, deg *= ell) {
    Embedding emb = extend_unramified(F, deg);
    RingPtr E = emb.to;
    SchemeModel XE = X.map_coeffs(E, emb.map);
    std::vector<std::vector<Elem>> oq_E;
    for (const auto& x : oq_points) oq_E.push_back(embed_point(x, emb));
    int64_t tried = scan_two_flags(E, X.nvars, d, candidate_budget, [&](const Poly& f0, const Poly& finf) {
      Pencil p = make_pencil(d, f0, finf);
      LefschetzReport rep = is_lefschetz(XE, p, oq_E, ext_bound, budget);
      if (!rep.lefschetz) return false;
      res.found = true;
      res.pencil = std::move(p);
      res.ext_degree = deg;
      res.report = std::move(rep);
      return true;
    });
    res.scanned.emplace_back(deg, tried);
    if (res.found) return res;
  }
  return res;
}

PencilSearch find_pencil_dvr(const StratifiedModel& model, int d, int ell, int max_ext,
                             const std::vector<std::vector<Elem>>& oq_points, int ext_bound,
                             int64_t candidate_budget, int64_t budget) {
  const RingPtr& A = model.X.ring;
  if (!A->is_dvr()) throw NotDVR("DVR pencil search needs a DVR model");
  if (d != 1) throw Unsupported("only hyperplane pencils are supported over a DVR");
  if (model.X.gens.size() != 1) throw NotHypersurface("DVR pencil search needs a hypersurface");
  RingPtr F = A->residue_field();
  int nv = model.X.nvars;
  SchemeModel Xs = model.X.reduce_mod_pi();

  PencilSearch res;
  int deg = 1;
  for (int level = 0; level <= max_ext; ++level, deg *= ell) {
    if (deg > 1 && A->kind() == RingKind::MixedDVR) {
      res.note += "extension scan not representable over " + A->descriptor() + "; ";
      break;
    }
    Embedding embF = extend_unramified(F, deg);
    RingPtr Fd = embF.to;
    Embedding embA = extend_unramified(A, deg);
    RingPtr Ad = embA.to;
    SchemeModel Xs_d = Xs.map_coeffs(Fd, embF.map);
    SchemeModel X_d = model.X.map_coeffs(Ad, embA.map);
    std::vector<std::vector<Elem>> oq_d;
    for (const auto& x : oq_points) oq_d.push_back(embed_point(x, embF));

    int64_t tried = scan_two_flags(Fd, nv, d, candidate_budget, [&](const Poly& h0, const Poly& hinf) {
      Pencil ps = make_pencil(d, h0, hinf);
      LefschetzReport rep = is_lefschetz(Xs_d, ps, oq_d, ext_bound, budget);
      if (!rep.lefschetz) return false;

      // coefficientwise lift
      Poly f0A = h0.map_coeffs(Ad, [&](const Elem& e) { return Ad->lift(e); });
      Poly finfA = hinf.map_coeffs(Ad, [&](const Elem& e) { return Ad->lift(e); });
      Pencil pA = make_pencil(d, f0A, finfA);
      std::string note;

      // condition (1): the axis section is smooth over the ring
      if (!model.proper) {
        SchemeModel ax = X_d;
        ax.gens.push_back(f0A);
        ax.gens.push_back(finfA);
        if (!generic_fibre_obstruction(ax, CheckMode::Groebner, 2, budget).empty()) return false;
      }

      // members through declared points keep ordinary quadratic reduction
      auto classify_section_over_ring = [&](const RingPtr& R, const Poly& f, const Poly& g,
                                            const std::vector<Elem>& pt) {
        Poly section = restrict_to_hyperplane(f, g);
        int pivot = -1;
        for (int i = 0; i < nv && pivot < 0; ++i) {
          Mono mo(nv, 0);
          mo[i] = 1;
          if (R->is_unit(g.coeff(mo))) pivot = i;
        }
        std::vector<Elem> rest;
        for (int i = 0; i < nv; ++i)
          if (i != pivot) rest.push_back(pt[i]);
        SchemeModel S{R, nv - 1, true, {section}, {}};
        return classify_point(S, rest);
      };
      std::vector<std::pair<RingPtr, std::vector<Elem>>> handled_t;
      for (const auto& x : oq_d) {
        Elem t0 = hinf.evaluate(x), t1 = Fd->neg(h0.evaluate(x));
        handled_t.emplace_back(Fd, normalize_projective(Fd, {t0, t1}));
        Poly g = pencil_member(pA, Ad->lift(t0), Ad->lift(t1));
        auto sv = classify_section_over_ring(Ad, X_d.gens[0], g, normalize_projective(Fd, x));
        if (sv.kind == SingularityVerdict::Kind::Undecidable) {
          // precision limit; the special-fibre verdict from the residue scan stands
          note += "member through a declared point: ring-level order undetermined (" + sv.reason +
                  "); special-fibre verdict used; ";
        } else if (!sv.is_oq() && sv.kind != SingularityVerdict::Kind::Smooth) {
          return false;
        }
      }

      // Sigma members: ordinary quadratic reduction at the new point
      for (const auto& mv : rep.sigma) {
        int tdeg = mv.field->m() / Fd->m();
        int pdeg = mv.point_field->m() / Fd->m();
        if (pdeg > 1 && Ad->kind() == RingKind::MixedDVR) {
          note += "member over an extension parameter left uncertified; ";
          continue;
        }
        RingPtr Aw = pdeg == 1 ? Ad : extend_unramified(Ad, pdeg).to;
        Embedding embW = extend_unramified(Ad, pdeg);
        Embedding embTW = extend_unramified(mv.field, pdeg / tdeg);
        Poly fW = X_d.gens[0].map_coeffs(Aw, embW.map);
        Elem t0 = Aw->lift(embTW.map(mv.t[0])), t1 = Aw->lift(embTW.map(mv.t[1]));
        Poly g = pencil_member(Pencil{Aw, nv, 1, pA.f0.map_coeffs(Aw, embW.map),
                                      pA.finf.map_coeffs(Aw, embW.map)},
                               t0, t1);
        auto sv = classify_section_over_ring(Aw, fW, g, mv.points[0]);
        if (sv.kind == SingularityVerdict::Kind::Undecidable) {
          note += "member t=" + point_to_string(mv.field, mv.t, true) +
                  ": ring-level order undetermined (" + sv.reason +
                  "); special-fibre verdict used; ";
        } else if (!sv.is_oq() && sv.kind != SingularityVerdict::Kind::Smooth) {
          return false;
        }
        handled_t.emplace_back(mv.field, normalize_projective(mv.field, mv.t));
      }

      // members outside Sigma: transversal on both fibres
      if (!model.proper) {
        int64_t qd = Fd->size();
        for (int64_t ti = 0; ti <= qd; ++ti) {
          Elem t0 = ti == qd ? Fd->zero() : Fd->one();
          Elem t1 = ti == qd ? Fd->one() : Fd->element(ti);
          auto tn = normalize_projective(Fd, {t0, t1});
          bool skip = false;
          for (const auto& [fld, ht] : handled_t)
            if (fld->same(*Fd) && ht == tn) skip = true;
          if (skip) continue;
          SchemeModel sec = X_d;
          sec.gens.push_back(pencil_member(pA, Ad->lift(t0), Ad->lift(t1)));
          if (!generic_fibre_obstruction(sec, CheckMode::Groebner, 2, budget).empty()) return false;
        }
        if (ext_bound > 1 && Ad->kind() == RingKind::MixedDVR) {
          note += "good members over extension parameters checked on the special fibre only; ";
        } else {
          // equicharacteristic: extension-parameter members verified over the
          // extended ring
          for (int m2 = 2; m2 <= ext_bound; ++m2) {
            Embedding embF2 = extend_unramified(Fd, m2);
            Embedding embA2 = extend_unramified(Ad, m2);
            SchemeModel X2 = X_d.map_coeffs(embA2.to, embA2.map);
            Poly f02 = pA.f0.map_coeffs(embA2.to, embA2.map);
            Poly finf2 = pA.finf.map_coeffs(embA2.to, embA2.map);
            for (int64_t ti = 0; ti < embF2.to->size(); ++ti) {
              Elem tau = embF2.to->element(ti);
              if (in_proper_subfield(embF2.to, tau, qd, m2)) continue;
              auto tn = normalize_projective(embF2.to, {embF2.to->one(), tau});
              bool skip = false;
              for (const auto& [fld, ht] : handled_t)
                if (fld->same(*embF2.to) && ht == tn) skip = true;
              if (skip) continue;
              SchemeModel sec = X2;
              sec.gens.push_back(f02 + finf2.scaled(embA2.to->lift(tau)));
              if (!generic_fibre_obstruction(sec, CheckMode::Groebner, 2, budget).empty())
                return false;
            }
          }
        }
      }

      res.found = true;
      res.pencil = std::move(pA);
      res.ext_degree = deg;
      res.report = std::move(rep);
      res.note += note;
      return true;
    });
    res.scanned.emplace_back(deg, tried);
    if (res.found) return res;
  }
  return res;
}

}  // namespace sect
