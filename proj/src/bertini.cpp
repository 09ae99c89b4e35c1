#include "sect/bertini.hpp"

#include <algorithm>
#include <sstream>

#include "sect/errors.hpp"

namespace sect {

Poly HyperplaneA::to_poly() const {
  Poly h(ring, (int)coeffs.size());
  for (int i = 0; i < (int)coeffs.size(); ++i) {
    Mono m(coeffs.size(), 0);
    m[i] = 1;
    h.add_term(m, coeffs[i]);
  }
  return h;
}

HyperplaneA make_hyperplane(const RingPtr& dvr, std::vector<Elem> coeffs) {
  if (!dvr->is_dvr()) throw NotDVR("hyperplane coefficients must live in a DVR");
  int first_unit = -1;
  for (int i = 0; i < (int)coeffs.size(); ++i) {
    if (dvr->is_unit(coeffs[i])) {
      first_unit = i;
      break;
    }
  }
  if (first_unit < 0) throw Unsupported("all hyperplane coefficients lie in the maximal ideal");
  Elem scale = dvr->inv(coeffs[first_unit]);
  for (auto& c : coeffs) c = dvr->mul(c, scale);
  return HyperplaneA{dvr, std::move(coeffs)};
}

std::vector<Elem> specialize(const HyperplaneA& H) {
  std::vector<Elem> h;
  for (const auto& c : H.coeffs) h.push_back(H.ring->residue(c));
  return h;
}

HyperplaneA lift_hyperplane(const RingPtr& dvr, const std::vector<Elem>& h) {
  RingPtr F = dvr->residue_field();
  int first = -1;
  for (int i = 0; i < (int)h.size(); ++i) {
    if (!F->is_zero(h[i])) {
      first = i;
      break;
    }
  }
  if (first < 0) throw Unsupported("cannot lift the zero hyperplane");
  Elem scale = F->inv(h[first]);
  std::vector<Elem> lifted;
  for (const auto& c : h) lifted.push_back(dvr->lift(F->mul(c, scale)));
  return HyperplaneA{dvr, std::move(lifted)};
}

StratifiedModel load_stratified(SchemeModel X, std::vector<SchemeModel> components, bool proper,
                                int64_t budget) {
  if (!X.ring->is_dvr()) throw NotDVR("stratified models are defined over a DVR");
  RingPtr F = X.ring->residue_field();
  for (const auto& Y : components) {
    if (!Y.ring->same(*F)) throw RingMismatch("component not over the residue field");
    if (Y.nvars != X.nvars || Y.projective != X.projective)
      throw ArityMismatch("component in a different ambient space");
    auto cert = is_smooth(Y, CheckMode::Groebner, 1, budget);
    if (!cert.ok() || cert.empty)
      throw ChartInconsistency("declared component is not smooth and nonempty");
  }
  // pointwise support agreement over the residue field
  SchemeModel fibre = X.reduce_mod_pi();
  PointSet fib_pts = enumerate_zeros(fibre.gens, F, X.nvars, X.projective, 1, budget);
  auto on_component = [&](const std::vector<Elem>& pt) {
    for (const auto& Y : components) {
      bool all = true;
      for (const auto& g : Y.gens)
        if (!F->is_zero(g.evaluate(pt))) {
          all = false;
          break;
        }
      if (all) return true;
    }
    return false;
  };
  for (const auto& pt : fib_pts.points)
    if (!on_component(pt))
      throw ChartInconsistency("special-fibre point " + point_to_string(F, pt, X.projective) +
                               " lies on no declared component");
  for (const auto& Y : components) {
    PointSet ypts = enumerate_zeros(Y.gens, F, X.nvars, X.projective, 1, budget);
    for (const auto& pt : ypts.points)
      if (!fib_pts.contains(pt))
        throw ChartInconsistency("component point " + point_to_string(F, pt, X.projective) +
                                 " is not on the special fibre");
  }
  return StratifiedModel{std::move(X), std::move(components), proper};
}

std::vector<Stratum> strata(const StratifiedModel& model) {
  std::vector<Stratum> out;
  size_t n = model.components.size();
  if (n == 0) return out;
  RingPtr F = model.X.ring->residue_field();
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    Stratum s;
    s.model = model.components[0];
    s.model.gens.clear();
    for (size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      s.indices.push_back((int)i);
      for (const auto& g : model.components[i].gens) s.model.gens.push_back(g);
    }
    Ideal I(F, s.model.nvars, s.model.gens);
    if (s.model.projective) {
      auto d = I.dimension();
      s.empty = !d || *d <= 0;  // the affine cone is at most the origin
    } else {
      s.empty = I.is_unit();
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const Stratum& a, const Stratum& b) {
    if (a.indices.size() != b.indices.size()) return a.indices.size() < b.indices.size();
    return a.indices < b.indices;
  });
  return out;
}

namespace {

std::string subset_label(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
  os << "}";
  return os.str();
}

}  // namespace

HyperplaneVerdict is_good_hyperplane(const StratifiedModel& model, const HyperplaneA& H,
                                     CheckMode mode, int ext_bound, int64_t budget) {
  const RingPtr& A = model.X.ring;
  if (!A->same(*H.ring)) throw RingMismatch("hyperplane over a different ring than the model");
  RingPtr F = A->residue_field();
  int nv = model.X.nvars;
  std::vector<Elem> h = specialize(H);
  Poly hbar(F, nv);
  for (int i = 0; i < nv; ++i)
    if (!F->is_zero(h[i])) {
      Mono m(nv, 0);
      m[i] = 1;
      hbar.add_term(m, h[i]);
    }
  SchemeModel Hm{F, nv, model.X.projective, {hbar}, model.X.varnames};

  HyperplaneVerdict v;
  // condition (i): transversality with every stratum of the component arrangement
  for (const auto& s : strata(model)) {
    if (s.empty) continue;
    auto cert = is_transversal(s.model, Hm, mode, ext_bound, budget);
    if (!cert.ok()) {
      v.reason = "stratum " + subset_label(s.indices) + ": " +
                 (cert.verdict == SmoothnessCertificate::Verdict::WrongCodimension
                      ? "wrong codimension"
                      : "non-transversal intersection");
      return v;
    }
  }

  if (model.proper) {
    v.route = "generic-fibre condition implied by properness";
    v.good = true;
    return v;
  }

  SchemeModel sectionA = model.X;
  sectionA.gens.push_back(H.to_poly());
  std::string obstruction = generic_fibre_obstruction(sectionA, mode, ext_bound, budget);
  if (!obstruction.empty()) {
    v.reason = obstruction;
    return v;
  }
  v.route = "uniformizer-as-variable Jacobian + section special-fibre smoothness";
  v.good = true;
  return v;
}

std::string generic_fibre_obstruction(const SchemeModel& X, CheckMode mode, int ext_bound,
                                      int64_t budget) {
  const RingPtr& A = X.ring;
  if (!A->is_dvr()) throw NotDVR("generic-fibre check needs a DVR model");
  RingPtr F = A->residue_field();
  int nv = X.nvars;

  // part 1: the special fibre is smooth of the expected dimension
  auto cert = is_smooth(X.reduce_mod_pi(), mode, ext_bound, budget);
  if (!cert.ok()) return "special fibre: not smooth of expected dimension";

  // part 2: chart-by-chart Jacobian ideal over the DVR, with the uniformizer
  // as an extra variable z subject to z^k = 0
  int charts = X.projective ? nv : 1;
  for (int chart = 0; chart < charts; ++chart) {
    std::vector<Poly> cg;
    for (const auto& g : X.gens) cg.push_back(X.projective ? g.dehomogenize(chart) : g);
    int cn = X.projective ? nv - 1 : nv;
    std::vector<Poly> zgens;
    for (const auto& g : cg) zgens.push_back(pi_to_variable(g));
    for (const auto& m : jacobian_minors(cg, cn)) zgens.push_back(pi_to_variable(m));
    Mono zk(cn + 1, 0);
    zk.back() = (uint32_t)A->k();
    zgens.push_back(Poly::monomial(F, zk, F->one()));
    Ideal J(F, cn + 1, zgens);
    if (!J.is_unit())
      return "chart " + std::to_string(chart) + ": uniformizer-adic Jacobian ideal not unit";
  }
  return "";
}

namespace {

StratifiedModel base_change(const StratifiedModel& model, int deg) {
  Embedding EA = extend_unramified(model.X.ring, deg);
  Embedding EF = extend_unramified(model.X.ring->residue_field(), deg);
  StratifiedModel out;
  out.X = model.X.map_coeffs(EA.to, EA.map);
  for (const auto& Y : model.components) out.components.push_back(Y.map_coeffs(EF.to, EF.map));
  out.proper = model.proper;
  return out;
}

}  // namespace

HyperplaneSearch find_good_hyperplane(const StratifiedModel& model, int ell, int max_ext,
                                      CheckMode mode, int64_t budget) {
  HyperplaneSearch res;
  int nv = model.X.nvars;
  int deg = 1;
  for (int level = 0; level <= max_ext; ++level, deg *= ell) {
    StratifiedModel m = level == 0 ? model : base_change(model, deg);
    RingPtr A = m.X.ring;
    RingPtr F = A->residue_field();
    int64_t q = F->size();
    double total = 0;
    for (int lead = 0; lead < nv; ++lead) {
      double lvl = 1;
      for (int i = lead + 1; i < nv; ++i) lvl *= (double)q;
      total += lvl;
    }
    if (total > (double)budget) throw BudgetExceeded("too many residue hyperplanes to enumerate");

    int64_t count = 0;
    for (int lead = 0; lead < nv; ++lead) {
      int free = nv - lead - 1;
      std::vector<int64_t> idx(free, 0);
      for (;;) {
        std::vector<Elem> h(nv, F->zero());
        h[lead] = F->one();
        for (int i = 0; i < free; ++i) h[lead + 1 + i] = F->element(idx[i]);
        ++count;
        HyperplaneA H = lift_hyperplane(A, h);
        if (is_good_hyperplane(m, H, mode, 2, budget).ok()) {
          res.good_locus.push_back(h);
          if (!res.found) {
            res.found = true;
            res.best = H;
            res.ring = A;
            res.ext_degree = deg;
          }
        }
        int i = free - 1;
        while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
        if (i < 0) break;
      }
    }
    res.scanned.emplace_back(deg, count);
    if (res.found) return res;
  }
  return res;
}

HypersurfaceSearch find_good_hypersurface(const SchemeModel& X, int d,
                                          const std::vector<SchemeModel>& components, int64_t budget,
                                          uint64_t seed, int sample_size) {
  if (!X.ring->is_field()) throw Unsupported("hypersurface search runs over a finite field");
  const RingPtr& F = X.ring;
  int nv = X.nvars;
  std::vector<Mono> monos = degree_monomials(nv, d);
  int M = (int)monos.size();
  int64_t q = F->size();

  auto passes = [&](const Poly& form) {
    SchemeModel Hm{F, nv, X.projective, {form}, X.varnames};
    if (!is_transversal(X, Hm).ok()) return false;
    if (!components.empty()) {
      size_t n = components.size();
      for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        SchemeModel inter = components[0];
        inter.gens.clear();
        for (size_t i = 0; i < n; ++i)
          if (mask & (1u << i))
            for (const auto& g : components[i].gens) inter.gens.push_back(g);
        if (!is_transversal(inter, Hm).ok()) return false;
      }
    }
    return true;
  };
  auto from_coeffs = [&](const std::vector<Elem>& c) {
    Poly f(F, nv);
    for (int i = 0; i < M; ++i)
      if (!F->is_zero(c[i])) f.add_term(monos[i], c[i]);
    return f;
  };

  HypersurfaceSearch res;
  double total = 1;
  for (int i = 0; i < M; ++i) total *= (double)q;
  if (total - 1 <= (double)budget) {
    // exhaustive, normalized: first nonzero coefficient equal to 1
    for (int lead = 0; lead < M; ++lead) {
      int free = M - lead - 1;
      std::vector<int64_t> idx(free, 0);
      for (;;) {
        std::vector<Elem> c(M, F->zero());
        c[lead] = F->one();
        for (int i = 0; i < free; ++i) c[lead + 1 + i] = F->element(idx[i]);
        ++res.scanned;
        Poly form = from_coeffs(c);
        if (passes(form)) {
          res.good.push_back(form);
          if (!res.found) {
            res.found = true;
            res.form = form;
          }
        }
        int i = free - 1;
        while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  } else {
    res.exhaustive = false;
    uint64_t state = seed ? seed : 1;
    auto next = [&]() {  // splitmix64
      state += 0x9e3779b97f4a7c15ull;
      uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    for (int s = 0; s < sample_size; ++s) {
      std::vector<Elem> c(M, F->zero());
      bool nonzero = false;
      for (int i = 0; i < M; ++i) {
        c[i] = F->element((int64_t)(next() % (uint64_t)q));
        if (!F->is_zero(c[i])) nonzero = true;
      }
      if (!nonzero) continue;
      ++res.scanned;
      Poly form = from_coeffs(c);
      if (passes(form)) {
        res.found = true;
        res.form = form;
        break;
      }
    }
  }
  return res;
}

}  // namespace sect
