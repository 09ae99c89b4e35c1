#include "sect/ring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sect {

namespace {

bool is_prime(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int64_t mod(int64_t a, int64_t n) {
  int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// extended euclid: returns g, sets x with a*x = g (mod n)
int64_t inv_mod(int64_t a, int64_t n) {
  int64_t old_r = mod(a, n), r = n;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    int64_t q = old_r / r;
    int64_t t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  if (old_r != 1) throw NonUnit();
  return mod(old_s, n);
}

// ----- dense F_p[x] helpers (coefficients c[0] + c[1] x + ...) -----

using FpPoly = std::vector<int64_t>;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly pmul(const FpPoly& a, const FpPoly& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  trim(r);
  return r;
}

// remainder of a by monic b
FpPoly prem(FpPoly a, const FpPoly& b, int64_t p) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    int64_t c = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] = mod(a[i + shift] - c * b[i], p);
    trim(a);
  }
  return a;
}

// extended euclid in F_p[x]: inverse of a modulo monic f (both reduced)
FpPoly pinv_mod(FpPoly a, FpPoly f, int64_t p) {
  FpPoly r0 = f, r1 = a, s0 = {}, s1 = {1};
  trim(r1);
  if (r1.empty()) throw NonUnit();
  while (!r1.empty()) {
    // divide r0 by r1
    FpPoly q;
    FpPoly rem = r0;
    trim(rem);
    int64_t lead_inv = inv_mod(r1.back(), p);
    if (rem.size() >= r1.size()) q.assign(rem.size() - r1.size() + 1, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      int64_t c = mod(rem.back() * lead_inv, p);
      size_t shift = rem.size() - r1.size();
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) rem[i + shift] = mod(rem[i + shift] - c * r1[i], p);
      trim(rem);
    }
    FpPoly s2 = s0;
    FpPoly qs = pmul(q, s1, p);
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (size_t i = 0; i < qs.size(); ++i) s2[i] = mod(s2[i] - qs[i], p);
    trim(s2);
    r0 = r1; r1 = rem;
    s0 = s1; s1 = s2;
  }
  if (r0.size() != 1) throw NonUnit();
  int64_t c = inv_mod(r0[0], p);
  for (auto& x : s0) x = mod(x * c, p);
  trim(s0);
  return s0;
}

// irreducibility by trial division against all monic polynomials of degree <= m/2
bool irreducible(const FpPoly& f, int64_t p, int m) {
  for (int d = 1; 2 * d <= m; ++d) {
    int64_t count = ipow(p, d);
    for (int64_t idx = 0; idx < count; ++idx) {
      FpPoly g(d + 1, 0);
      int64_t v = idx;
      for (int i = 0; i < d; ++i) { g[i] = v % p; v /= p; }
      g[d] = 1;
      FpPoly r = prem(f, g, p);
      if (r.empty()) return false;
    }
  }
  return true;
}

// lexicographically first irreducible monic polynomial of degree m over F_p
// (smallest value of sum c_i p^i over the non-leading coefficients)
FpPoly first_irreducible(int64_t p, int m) {
  int64_t count = ipow(p, m);
  for (int64_t idx = 0; idx < count; ++idx) {
    FpPoly f(m + 1, 0);
    int64_t v = idx;
    for (int i = 0; i < m; ++i) { f[i] = v % p; v /= p; }
    f[m] = 1;
    if (irreducible(f, p, m)) { f.pop_back(); return f; }  // store c_0..c_{m-1}
  }
  throw Error("no irreducible polynomial found");  // unreachable
}

}  // namespace

// ---------------------------------------------------------------- factories

RingPtr Ring::prime_field(int64_t p) {
  if (!is_prime(p)) throw Error("p must be prime");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::PrimeField;
  r->p_ = p;
  return r;
}

RingPtr Ring::ext_field(int64_t p, int m) {
  if (!is_prime(p)) throw Error("p must be prime");
  if (m < 1) throw Error("extension degree must be >= 1");
  if (m == 1) return prime_field(p);
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::ExtField;
  r->p_ = p;
  r->m_ = m;
  r->minpoly_ = first_irreducible(p, m);
  return r;
}

RingPtr Ring::mixed_dvr(int64_t p, int k) {
  if (!is_prime(p)) throw Error("p must be prime");
  if (k < 1) throw Error("precision must be >= 1");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::MixedDVR;
  r->p_ = p;
  r->k_ = k;
  r->pk_ = ipow(p, k);
  return r;
}

RingPtr Ring::equi_dvr(int64_t p, int m, int k) {
  if (!is_prime(p)) throw Error("p must be prime");
  if (m < 1 || k < 1) throw Error("degree and precision must be >= 1");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->kind_ = RingKind::EquiDVR;
  r->p_ = p;
  r->m_ = m;
  r->k_ = k;
  if (m > 1) r->minpoly_ = first_irreducible(p, m);
  return r;
}

// ---------------------------------------------------------------- basics

int64_t Ring::size() const {
  switch (kind_) {
    case RingKind::PrimeField: return p_;
    case RingKind::ExtField: return ipow(p_, m_);
    case RingKind::MixedDVR: return pk_;
    case RingKind::EquiDVR: return ipow(p_, m_ * k_);
  }
  return 0;
}

int64_t Ring::residue_size() const { return ipow(p_, m_); }

bool Ring::same(const Ring& o) const {
  return kind_ == o.kind_ && p_ == o.p_ && m_ == o.m_ && k_ == o.k_;
}

void Ring::check(const Elem& a) const {
  if (!a.ring() || !same(*a.ring())) throw RingMismatch();
}

void Ring::check2(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
}

Elem Ring::zero() const {
  switch (kind_) {
    case RingKind::PrimeField: return Elem(shared_from_this(), {0});
    case RingKind::ExtField: return Elem(shared_from_this(), std::vector<int64_t>(m_, 0));
    case RingKind::MixedDVR: return Elem(shared_from_this(), {0});
    case RingKind::EquiDVR: return Elem(shared_from_this(), std::vector<int64_t>(int64_t(m_) * k_, 0));
  }
  return {};
}

Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(int64_t v) const {
  Elem z = zero();
  switch (kind_) {
    case RingKind::PrimeField:
    case RingKind::ExtField: z.c_[0] = mod(v, p_); break;
    case RingKind::MixedDVR: z.c_[0] = mod(v, pk_); break;
    case RingKind::EquiDVR: {
      // integer values land in the residue field (prime subfield)
      z.c_[0] = mod(v, p_);
      break;
    }
  }
  return z;
}

Elem Ring::uniformizer() const {
  if (!is_dvr()) throw NotDVR();
  Elem z = zero();
  if (kind_ == RingKind::MixedDVR) {
    if (k_ > 1) z.c_[0] = p_;  // at precision 1 the uniformizer is already 0
  } else {
    if (k_ > 1) z.c_[size_t(m_)] = 1;
  }
  return z;
}

Elem Ring::make(std::vector<int64_t> raw) const {
  Elem z = zero();
  for (size_t i = 0; i < z.c_.size() && i < raw.size(); ++i) z.c_[i] = raw[i];
  int64_t q = kind_ == RingKind::MixedDVR ? pk_ : p_;
  for (auto& v : z.c_) v = mod(v, q);
  return z;
}

// ---------------------------------------------------------------- residue-field blocks

bool Ring::fzero(const std::vector<int64_t>& a) const {
  return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
}

std::vector<int64_t> Ring::fadd(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] + b[i], p_);
  return r;
}

std::vector<int64_t> Ring::fsub(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  std::vector<int64_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mod(a[i] - b[i], p_);
  return r;
}

std::vector<int64_t> Ring::fmul(const std::vector<int64_t>& a, const std::vector<int64_t>& b) const {
  if (m_ == 1) return {mod(a[0] * b[0], p_)};
  FpPoly prod = pmul(a, b, p_);
  FpPoly f = minpoly_;
  f.push_back(1);  // monic
  FpPoly r = prem(prod, f, p_);
  r.resize(m_, 0);
  return r;
}

std::vector<int64_t> Ring::finv(const std::vector<int64_t>& a) const {
  if (fzero(a)) throw NonUnit();
  if (m_ == 1) return {inv_mod(a[0], p_)};
  FpPoly f = minpoly_;
  f.push_back(1);
  FpPoly r = pinv_mod(a, f, p_);
  r.resize(m_, 0);
  return r;
}

// ---------------------------------------------------------------- arithmetic

Elem Ring::add(const Elem& a, const Elem& b) const {
  check2(a, b);
  Elem z = zero();
  if (kind_ == RingKind::MixedDVR) { z.c_[0] = mod(a.c_[0] + b.c_[0], pk_); return z; }
  for (size_t i = 0; i < z.c_.size(); ++i) z.c_[i] = mod(a.c_[i] + b.c_[i], p_);
  return z;
}

Elem Ring::sub(const Elem& a, const Elem& b) const {
  check2(a, b);
  Elem z = zero();
  if (kind_ == RingKind::MixedDVR) { z.c_[0] = mod(a.c_[0] - b.c_[0], pk_); return z; }
  for (size_t i = 0; i < z.c_.size(); ++i) z.c_[i] = mod(a.c_[i] - b.c_[i], p_);
  return z;
}

Elem Ring::neg(const Elem& a) const { return sub(zero(), a); }

Elem Ring::mul(const Elem& a, const Elem& b) const {
  check2(a, b);
  Elem z = zero();
  switch (kind_) {
    case RingKind::PrimeField: z.c_[0] = mod(a.c_[0] * b.c_[0], p_); break;
    case RingKind::MixedDVR: {
      // p^k <= 5^7; products fit in __int128 comfortably, int64 at this scale
      __int128 prod = (__int128)a.c_[0] * b.c_[0];
      z.c_[0] = (int64_t)(prod % pk_);
      break;
    }
    case RingKind::ExtField: z.c_ = fmul(a.c_, b.c_); break;
    case RingKind::EquiDVR: {
      for (int i = 0; i < k_; ++i) {
        std::vector<int64_t> ai(a.c_.begin() + i * m_, a.c_.begin() + (i + 1) * m_);
        if (fzero(ai)) continue;
        for (int j = 0; j + i < k_; ++j) {
          std::vector<int64_t> bj(b.c_.begin() + j * m_, b.c_.begin() + (j + 1) * m_);
          if (fzero(bj)) continue;
          auto prod = fmul(ai, bj);
          for (int l = 0; l < m_; ++l)
            z.c_[(i + j) * m_ + l] = mod(z.c_[(i + j) * m_ + l] + prod[l], p_);
        }
      }
      break;
    }
  }
  return z;
}

bool Ring::is_zero(const Elem& a) const {
  check(a);
  return std::all_of(a.c_.begin(), a.c_.end(), [](int64_t v) { return v == 0; });
}

bool Ring::is_one(const Elem& a) const { return a == one(); }

bool Ring::is_unit(const Elem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::PrimeField:
    case RingKind::ExtField: return !is_zero(a);
    case RingKind::MixedDVR: return a.c_[0] % p_ != 0;
    case RingKind::EquiDVR: {
      std::vector<int64_t> a0(a.c_.begin(), a.c_.begin() + m_);
      return !fzero(a0);
    }
  }
  return false;
}

Elem Ring::inv(const Elem& a) const {
  check(a);
  if (!is_unit(a)) throw NonUnit();
  Elem z = zero();
  switch (kind_) {
    case RingKind::PrimeField: z.c_[0] = inv_mod(a.c_[0], p_); break;
    case RingKind::MixedDVR: z.c_[0] = inv_mod(a.c_[0], pk_); break;
    case RingKind::ExtField: z.c_ = finv(a.c_); break;
    case RingKind::EquiDVR: {
      // truncated series inversion: b_0 = a_0^{-1}, b_j = -a_0^{-1} sum a_i b_{j-i}
      std::vector<int64_t> a0(a.c_.begin(), a.c_.begin() + m_);
      auto a0inv = finv(a0);
      std::vector<std::vector<int64_t>> b(k_);
      b[0] = a0inv;
      for (int j = 1; j < k_; ++j) {
        std::vector<int64_t> acc(m_, 0);
        for (int i = 1; i <= j; ++i) {
          std::vector<int64_t> ai(a.c_.begin() + i * m_, a.c_.begin() + (i + 1) * m_);
          acc = fadd(acc, fmul(ai, b[j - i]));
        }
        b[j] = fmul(a0inv, fsub(std::vector<int64_t>(m_, 0), acc));
      }
      for (int j = 0; j < k_; ++j)
        for (int l = 0; l < m_; ++l) z.c_[j * m_ + l] = b[j][l];
      break;
    }
  }
  return z;
}

// ---------------------------------------------------------------- valuation / residue

std::optional<int> Ring::valuation(const Elem& a) const {
  check(a);
  if (!is_dvr()) throw NotDVR();
  if (is_zero(a)) return std::nullopt;
  if (kind_ == RingKind::MixedDVR) {
    int v = 0;
    int64_t x = a.c_[0];
    while (x % p_ == 0) { x /= p_; ++v; }
    return v;
  }
  for (int j = 0; j < k_; ++j) {
    std::vector<int64_t> blk(a.c_.begin() + j * m_, a.c_.begin() + (j + 1) * m_);
    if (!fzero(blk)) return j;
  }
  return std::nullopt;
}

RingPtr Ring::residue_field() const {
  if (!is_dvr()) throw NotDVR();
  if (!residue_) residue_ = m_ == 1 ? prime_field(p_) : ext_field(p_, m_);
  return residue_;
}

Elem Ring::residue(const Elem& a) const {
  check(a);
  auto F = residue_field();
  if (kind_ == RingKind::MixedDVR) return F->from_int(a.c_[0] % p_);
  return F->make(std::vector<int64_t>(a.c_.begin(), a.c_.begin() + m_));
}

Elem Ring::lift(const Elem& res) const {
  if (!is_dvr()) throw NotDVR();
  auto F = residue_field();
  if (!res.ring() || !F->same(*res.ring())) throw RingMismatch();
  if (kind_ == RingKind::MixedDVR) return from_int(res.data()[0]);
  Elem z = zero();
  for (int l = 0; l < m_; ++l) z.c_[l] = res.data()[l];
  return z;
}

Elem Ring::unit_part(const Elem& a) const {
  auto v = valuation(a);
  if (!v) throw PrecisionExhausted("unit part of zero at precision k");
  Elem z = zero();
  if (kind_ == RingKind::MixedDVR) {
    z.c_[0] = a.c_[0] / ipow(p_, *v);
  } else {
    for (int j = *v; j < k_; ++j)
      for (int l = 0; l < m_; ++l) z.c_[(j - *v) * m_ + l] = a.c_[j * m_ + l];
  }
  return z;
}

// ---------------------------------------------------------------- enumeration

Elem Ring::element(int64_t index) const {
  Elem z = zero();
  if (kind_ == RingKind::MixedDVR) { z.c_[0] = index; return z; }
  for (auto& v : z.c_) { v = index % p_; index /= p_; }
  return z;
}

int64_t Ring::index_of(const Elem& a) const {
  check(a);
  if (kind_ == RingKind::MixedDVR) return a.c_[0];
  int64_t idx = 0;
  for (auto it = a.c_.rbegin(); it != a.c_.rend(); ++it) idx = idx * p_ + *it;
  return idx;
}

// ---------------------------------------------------------------- printing

namespace {

std::string block_to_string(const std::vector<int64_t>& blk, const char* gen) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = blk.size(); i-- > 0;) {
    if (blk[i] == 0) continue;
    if (!first) os << "+";
    if (i == 0) os << blk[i];
    else {
      if (blk[i] != 1) os << blk[i] << "*";
      os << gen;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

std::string Ring::to_string(const Elem& a) const {
  check(a);
  switch (kind_) {
    case RingKind::PrimeField:
    case RingKind::MixedDVR: return std::to_string(a.c_[0]);
    case RingKind::ExtField: return block_to_string(a.c_, "a");
    case RingKind::EquiDVR: {
      std::ostringstream os;
      bool first = true;
      for (int j = 0; j < k_; ++j) {
        std::vector<int64_t> blk(a.c_.begin() + j * m_, a.c_.begin() + (j + 1) * m_);
        if (fzero(blk)) continue;
        if (!first) os << "+";
        std::string b = block_to_string(blk, "a");
        bool needs_paren = m_ > 1 && b.find('+') != std::string::npos && j > 0;
        if (j == 0) os << b;
        else {
          if (b != "1") os << (needs_paren ? "(" + b + ")" : b) << "*";
          os << "t";
          if (j > 1) os << "^" << j;
        }
        first = false;
      }
      if (first) os << "0";
      return os.str();
    }
  }
  return "";
}

std::string Ring::descriptor() const {
  std::ostringstream os;
  switch (kind_) {
    case RingKind::PrimeField: os << "GF(" << p_ << ")"; break;
    case RingKind::ExtField: os << "GF(" << ipow(p_, m_) << ")=GF(" << p_ << "," << m_ << ")"; break;
    case RingKind::MixedDVR: os << "Zmod(" << p_ << "^" << k_ << ")"; break;
    case RingKind::EquiDVR:
      if (m_ == 1) os << "GF(" << p_ << ")[[t]]/t^" << k_;
      else os << "GF(" << ipow(p_, m_) << ")[[t]]/t^" << k_;
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------- extensions

Embedding extend_unramified(const RingPtr& R, int m) {
  if (m < 1) throw Error("extension degree must be >= 1");
  if (m == 1) return {R, R, [](const Elem& a) { return a; }};
  switch (R->kind()) {
    case RingKind::PrimeField: {
      auto T = Ring::ext_field(R->p(), m);
      return {R, T, [T](const Elem& a) { return T->from_int(a.data()[0]); }};
    }
    case RingKind::ExtField: {
      auto T = Ring::ext_field(R->p(), R->m() * m);
      // image of the generator: a root of R's minimal polynomial in T, found by scan;
      // the smallest-index root gives a deterministic embedding
      auto mp = R->min_poly();
      Elem root;
      bool found = false;
      for (int64_t idx = 0; idx < T->size() && !found; ++idx) {
        Elem x = T->element(idx);
        Elem acc = T->zero();
        Elem pw = T->one();
        for (size_t i = 0; i < mp.size(); ++i) {
          acc = T->add(acc, T->mul(T->from_int(mp[i]), pw));
          pw = T->mul(pw, x);
        }
        acc = T->add(acc, pw);  // monic leading term
        if (T->is_zero(acc)) { root = x; found = true; }
      }
      if (!found) throw Error("no root of minimal polynomial in extension");
      return {R, T, [T, root, mR = R->m()](const Elem& a) {
                Elem acc = T->zero();
                Elem pw = T->one();
                for (int i = 0; i < mR; ++i) {
                  acc = T->add(acc, T->mul(T->from_int(a.data()[i]), pw));
                  pw = T->mul(pw, root);
                }
                return acc;
              }};
    }
    case RingKind::MixedDVR: {
      if (R->k() == 1) {
        // precision-1 mixed ring behaves as its residue field
        throw Unsupported("unramified extension of Zmod(p^1): use the residue field");
      }
      throw Unsupported("unramified extension of a mixed-characteristic truncated DVR is not representable");
    }
    case RingKind::EquiDVR: {
      auto T = Ring::equi_dvr(R->p(), R->m() * m, R->k());
      auto emb = extend_unramified(R->residue_field(), m);
      // residue fields of R and T: extend coefficientwise
      auto TF = T->residue_field();
      return {R, T, [R, T, emb, TF](const Elem& a) {
                auto F = R->residue_field();
                Elem z = T->zero();
                Elem acc = T->zero();
                Elem tp = T->one();
                Elem uni = T->uniformizer();
                // rebuild sum of lift(embed(block_j)) * t^j
                for (int j = 0; j < R->k(); ++j) {
                  std::vector<int64_t> blk(a.data().begin() + j * R->m(), a.data().begin() + (j + 1) * R->m());
                  Elem fj = F->make(blk);
                  Elem tj = T->lift(emb.map(fj));
                  acc = T->add(acc, T->mul(tj, tp));
                  tp = T->mul(tp, uni);
                }
                return acc;
              }};
    }
  }
  throw Error("unreachable");
}

Embedding extend_ramified_sqrt(const RingPtr& R) {
  if (R->kind() != RingKind::EquiDVR)
    throw Unsupported("ramified extensions are supported only in equal characteristic");
  auto T = Ring::equi_dvr(R->p(), R->m(), 2 * R->k());
  return {R, T, [R, T](const Elem& a) {
            Elem z = T->zero();
            std::vector<int64_t> raw(size_t(T->m()) * T->k(), 0);
            for (int j = 0; j < R->k(); ++j)
              for (int l = 0; l < R->m(); ++l) raw[size_t(2 * j) * R->m() + l] = a.data()[size_t(j) * R->m() + l];
            return T->make(raw);
          }};
}

// ---------------------------------------------------------------- descriptor parsing

RingPtr parse_ring(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace((unsigned char)c)) s += c;
  auto fail = [&]() -> RingPtr { throw ParseError("invalid ring descriptor '" + s + "'", 0); };
  if (s.rfind("Zmod(", 0) == 0) {
    size_t close = s.find(')');
    if (close == std::string::npos) return fail();
    std::string body = s.substr(5, close - 5);
    size_t caret = body.find('^');
    int64_t p = std::stoll(caret == std::string::npos ? body : body.substr(0, caret));
    int k = caret == std::string::npos ? 1 : std::stoi(body.substr(caret + 1));
    return Ring::mixed_dvr(p, k);
  }
  if (s.rfind("GF(", 0) == 0) {
    size_t close = s.find(')');
    if (close == std::string::npos) return fail();
    std::string body = s.substr(3, close - 3);
    int64_t p;
    int m = 1;
    size_t comma = body.find(',');
    if (comma != std::string::npos) {
      p = std::stoll(body.substr(0, comma));
      m = std::stoi(body.substr(comma + 1));
    } else {
      int64_t q = std::stoll(body);
      // q = p^m: factor
      p = q;
      for (int64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
      int64_t t = q;
      m = 0;
      while (t > 1) { t /= p; ++m; }
      if (ipow(p, m) != q) return fail();
    }
    std::string rest = s.substr(close + 1);
    if (rest.empty()) return m == 1 ? Ring::prime_field(p) : Ring::ext_field(p, m);
    if (rest.rfind("=GF(", 0) == 0) {
      size_t c2 = rest.find(')');
      rest = rest.substr(c2 + 1);
      if (rest.empty()) return m == 1 ? Ring::prime_field(p) : Ring::ext_field(p, m);
    }
    if (rest.rfind("[[t]]/t^", 0) == 0) {
      int k = std::stoi(rest.substr(8));
      return Ring::equi_dvr(p, m, k);
    }
    return fail();
  }
  return fail();
}

}  // namespace sect
