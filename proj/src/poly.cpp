#include "sect/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace sect {

Poly Poly::constant(const RingPtr& ring, int nvars, const Elem& c) {
  Poly f(ring, nvars);
  f.add_term(Mono(nvars, 0), c);
  return f;
}

Poly Poly::constant(const RingPtr& ring, int nvars, int64_t c) {
  return constant(ring, nvars, ring->from_int(c));
}

Poly Poly::variable(const RingPtr& ring, int nvars, int i) {
  Mono m(nvars, 0);
  m[i] = 1;
  return monomial(ring, m, ring->one());
}

Poly Poly::monomial(const RingPtr& ring, Mono m, const Elem& c) {
  Poly f(ring, (int)m.size());
  f.add_term(m, c);
  return f;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, (int)total_degree(m));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  uint32_t d = total_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (total_degree(m) != d) return false;
  return true;
}

Elem Poly::constant_term() const {
  Mono z(nvars_, 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? ring_->zero() : it->second;
}

Elem Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ring_->zero() : it->second;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const Elem& Poly::leading_coeff() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->second;
}

void Poly::add_term(const Mono& m, const Elem& c) {
  if ((int)m.size() != nvars_) throw ArityMismatch();
  if (ring_->is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    Elem s = ring_->add(it->second, c);
    if (ring_->is_zero(s)) terms_.erase(it);
    else it->second = s;
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_) throw ArityMismatch();
  if (!ring_->same(*o.ring_)) throw RingMismatch();
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r(ring_, nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_->neg(c));
  return r;
}

Poly Poly::scaled(const Elem& c) const {
  Poly r(ring_, nvars_);
  for (const auto& [m, cc] : terms_) r.add_term(m, ring_->mul(cc, c));
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_) throw ArityMismatch();
  if (!ring_->same(*o.ring_)) throw RingMismatch();
  Poly r(ring_, nvars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(nvars_);
      for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ring_->mul(ca, cb));
    }
  return r;
}

Poly Poly::derivative(int i) const {
  Poly r(ring_, nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Mono d = m;
    d[i] -= 1;
    r.add_term(d, ring_->mul(c, ring_->from_int(m[i])));
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if ((int)images.size() != nvars_) throw ArityMismatch("substitution must assign every variable");
  if (nvars_ == 0) return *this;
  const RingPtr& R = images.empty() ? ring_ : images[0].ring();
  int nv = images.empty() ? nvars_ : images[0].nvars();
  Poly r(R, nv);
  for (const auto& [m, c] : terms_) {
    if (!c.ring()->same(*R)) throw RingMismatch("map coefficients before substituting into a different ring");
    Poly term = Poly::constant(R, nv, c);
    for (int i = 0; i < nvars_; ++i)
      for (uint32_t e = 0; e < m[i]; ++e) term = term * images[i];
    r = r + term;
  }
  return r;
}

Poly Poly::subst_var(int i, const Poly& g) const {
  std::vector<Poly> images;
  images.reserve(nvars_);
  for (int j = 0; j < nvars_; ++j)
    images.push_back(j == i ? g : Poly::variable(ring_, nvars_, j));
  return substitute(images);
}

Poly Poly::dehomogenize(int chart) const {
  Poly r(ring_, nvars_ - 1);
  for (const auto& [m, c] : terms_) {
    Mono d;
    d.reserve(nvars_ - 1);
    for (int i = 0; i < nvars_; ++i)
      if (i != chart) d.push_back(m[i]);
    r.add_term(d, c);
  }
  return r;
}

Poly Poly::extend_vars(int new_nvars, int pos) const {
  Poly r(ring_, new_nvars);
  for (const auto& [m, c] : terms_) {
    Mono d(new_nvars, 0);
    for (int i = 0; i < nvars_; ++i) d[i < pos ? i : i + (new_nvars - nvars_)] = m[i];
    r.add_term(d, c);
  }
  return r;
}

Elem Poly::evaluate(std::span<const Elem> point) const {
  if ((int)point.size() != nvars_) throw ArityMismatch();
  const RingPtr& R = ring_;
  Elem acc = R->zero();
  for (const auto& [m, c] : terms_) {
    Elem t = c;
    for (int i = 0; i < nvars_; ++i)
      for (uint32_t e = 0; e < m[i]; ++e) t = R->mul(t, point[i]);
    acc = R->add(acc, t);
  }
  return acc;
}

Poly Poly::map_coeffs(const RingPtr& target, const std::function<Elem(const Elem&)>& f) const {
  Poly r(target, nvars_);
  for (const auto& [m, c] : terms_) r.add_term(m, f(c));
  return r;
}

Poly Poly::reduce_mod_pi() const {
  return map_coeffs(ring_->residue_field(), [this](const Elem& c) { return ring_->residue(c); });
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = ring_->to_string(c);
    if (!first) os << " + ";
    bool has_vars = total_degree(m) > 0;
    bool unit_coeff = ring_->is_one(c);
    bool composite = cs.find('+') != std::string::npos;
    if (!has_vars || !unit_coeff) os << (composite && has_vars ? "(" + cs + ")" : cs);
    bool printed = !has_vars || !unit_coeff;
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << (names.empty() ? "x" + std::to_string(i) : names[i]);
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  const RingPtr& ring;
  const std::vector<std::string>& names;

  void skip() {
    while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }

  Poly parse_expr() {
    skip();
    bool neg = eat('-');
    Poly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip();
      if (eat('+')) acc = acc + parse_term();
      else if (eat('-')) acc = acc - parse_term();
      else break;
    }
    return acc;
  }

  Poly parse_term() {
    Poly acc = parse_factor();
    for (;;) {
      skip();
      if (eat('*')) acc = acc * parse_factor();
      else break;
    }
    return acc;
  }

  Poly parse_factor() {
    Poly base = parse_base();
    skip();
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
      if (pos == start) throw ParseError("expected exponent", pos);
      int e = std::stoi(s.substr(start, pos - start));
      Poly r = Poly::constant(ring, base.nvars(), 1);
      for (int i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly parse_base() {
    skip();
    int nv = (int)names.size();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    if (eat('(')) {
      Poly inner = parse_expr();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return inner;
    }
    if (isdigit((unsigned char)s[pos])) {
      size_t start = pos;
      while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
      return Poly::constant(ring, nv, std::stoll(s.substr(start, pos - start)));
    }
    if (isalpha((unsigned char)s[pos]) || s[pos] == '_') {
      size_t start = pos;
      while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
      std::string id = s.substr(start, pos - start);
      if (id == "pi") {
        if (!ring->is_dvr()) throw ParseError("'pi' needs a DVR coefficient ring", start);
        return Poly::constant(ring, nv, ring->uniformizer());
      }
      for (int i = 0; i < nv; ++i)
        if (names[i] == id) return Poly::variable(ring, nv, i);
      throw ParseError("unknown variable '" + id + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + s[pos] + "'", pos);
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const RingPtr& ring, const std::vector<std::string>& varnames) {
  Parser p{text, 0, ring, varnames};
  Poly f = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return f;
}

// ---------------------------------------------------------------- point sets

std::vector<Elem> normalize_projective(const RingPtr& field, std::vector<Elem> pt) {
  for (auto& c : pt) {
    if (!field->is_zero(c)) {
      Elem s = field->inv(c);
      for (auto& d : pt) d = field->mul(d, s);
      return pt;
    }
  }
  throw Error("zero vector is not a projective point");
}

bool PointSet::contains(const std::vector<Elem>& pt) const {
  auto key = [this](const std::vector<Elem>& q) {
    std::vector<int64_t> v;
    for (const auto& c : q) v.push_back(field->index_of(c));
    return v;
  };
  auto target = key(projective ? normalize_projective(field, pt) : pt);
  for (const auto& q : points)
    if (key(q) == target) return true;
  return false;
}

std::string point_to_string(const RingPtr& field, const std::vector<Elem>& pt, bool projective) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < pt.size(); ++i) {
    if (i) os << (projective ? ":" : ",");
    os << field->to_string(pt[i]);
  }
  os << ")";
  return os.str();
}

PointSet enumerate_zeros(const std::vector<Poly>& polys, bool projective, int ext_degree, int64_t budget) {
  if (polys.empty()) throw Error("enumerate_zeros needs a ring and variable count for an empty system");
  return enumerate_zeros(polys, polys.front().ring(), polys.front().nvars(), projective, ext_degree, budget);
}

PointSet enumerate_zeros(const std::vector<Poly>& polys, const RingPtr& base, int nv, bool projective,
                         int ext_degree, int64_t budget) {
  for (const auto& f : polys) {
    if (f.nvars() != nv) throw ArityMismatch();
    if (!base->same(*f.ring())) throw RingMismatch();
  }
  if (!base->is_field()) throw Error("enumeration requires field coefficients");

  Embedding emb = extend_unramified(base, ext_degree);
  RingPtr F = emb.to;
  std::vector<Poly> lifted;
  lifted.reserve(polys.size());
  for (const auto& f : polys) lifted.push_back(f.map_coeffs(F, emb.map));

  int64_t q = F->size();
  // candidate budget
  double cand = 1;
  for (int i = 0; i < nv; ++i) cand *= (double)q;
  if (cand > (double)budget)
    throw BudgetExceeded("enumeration over " + std::to_string((int64_t)cand) + " candidates exceeds budget " +
                         std::to_string(budget));

  PointSet out;
  out.field = F;
  out.projective = projective;

  std::vector<Elem> pt(nv, F->zero());
  auto test = [&]() {
    for (const auto& f : lifted)
      if (!F->is_zero(f.evaluate(pt))) return false;
    return true;
  };

  if (!projective) {
    std::vector<int64_t> idx(nv, 0);
    for (;;) {
      for (int i = 0; i < nv; ++i) pt[i] = F->element(idx[i]);
      if (test()) out.points.push_back(pt);
      int i = nv - 1;
      while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
      if (i < 0) break;
    }
  } else {
    // lead coordinate = 1, earlier coordinates = 0
    for (int lead = 0; lead < nv; ++lead) {
      int free = nv - lead - 1;
      std::vector<int64_t> idx(free, 0);
      for (;;) {
        for (int i = 0; i < lead; ++i) pt[i] = F->zero();
        pt[lead] = F->one();
        for (int i = 0; i < free; ++i) pt[lead + 1 + i] = F->element(idx[i]);
        if (test()) out.points.push_back(pt);
        int i = free - 1;
        while (i >= 0 && ++idx[i] == q) idx[i--] = 0;
        if (i < 0) break;
      }
    }
  }
  return out;
}

std::vector<Elem> pi_digits(const Elem& a) {
  const RingPtr& A = a.ring();
  if (!A->is_dvr()) throw NotDVR("pi_digits of a field element");
  RingPtr F = A->residue_field();
  std::vector<Elem> d;
  if (A->kind() == RingKind::MixedDVR) {
    // Balanced digits from the centered integer lift: d_j in (-p/2, p/2], so
    // that sum d_j pi^j reproduces the centered lift exactly (no wrap-around
    // at pi^k). This keeps small negative coefficients small, which the
    // untruncated uniformizer-as-variable checks rely on.
    int64_t p = A->p(), pk = 1;
    for (int j = 0; j < A->k(); ++j) pk *= p;
    int64_t v = a.data()[0];
    if (2 * v > pk) v -= pk;
    for (int j = 0; j < A->k(); ++j) {
      int64_t r = v % p;
      if (2 * r > p) r -= p;
      if (2 * r < -p) r += p;
      d.push_back(F->from_int(r));
      v = (v - r) / p;
    }
  } else {
    int m = A->m();
    for (int j = 0; j < A->k(); ++j) {
      std::vector<int64_t> block(a.data().begin() + (size_t)j * m, a.data().begin() + (size_t)(j + 1) * m);
      d.push_back(F->make(std::move(block)));
    }
  }
  return d;
}

std::vector<Mono> degree_monomials(int nvars, int d) {
  std::vector<Mono> out;
  Mono cur(nvars, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == nvars - 1) {
      cur[pos] = (uint32_t)left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = (uint32_t)e;
      rec(pos + 1, left - e);
    }
  };
  rec(0, d);
  return out;
}

Poly pi_to_variable(const Poly& f) {
  const RingPtr& A = f.ring();
  if (!A->is_dvr()) throw NotDVR("pi_to_variable of a field polynomial");
  RingPtr F = A->residue_field();
  Poly out(F, f.nvars() + 1);
  for (const auto& [mono, coeff] : f.terms()) {
    std::vector<Elem> d = pi_digits(coeff);
    Mono ext = mono;
    ext.push_back(0);
    for (int j = 0; j < (int)d.size(); ++j) {
      if (F->is_zero(d[j])) continue;
      ext.back() = (uint32_t)j;
      out.add_term(ext, d[j]);
    }
  }
  return out;
}

}  // namespace sect
