#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "sect/ring.hpp"

namespace sect {

using Mono = std::vector<uint32_t>;

inline uint32_t total_degree(const Mono& m) {
  uint32_t d = 0;
  for (auto e : m) d += e;
  return d;
}

/// Graded reverse-lexicographic order, "greater" form so that std::map
/// iterates leading term first.
struct GrevlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];  // last nonzero of a-b negative => a > b
    }
    return false;
  }
};

/// Sparse multivariate polynomial over a CoeffRing. No zero coefficients are
/// stored; terms are kept in grevlex order, leading term first.
class Poly {
 public:
  Poly() = default;
  Poly(RingPtr ring, int nvars) : ring_(std::move(ring)), nvars_(nvars) {}

  static Poly constant(const RingPtr& ring, int nvars, const Elem& c);
  static Poly constant(const RingPtr& ring, int nvars, int64_t c);
  static Poly variable(const RingPtr& ring, int nvars, int i);
  static Poly monomial(const RingPtr& ring, Mono m, const Elem& c);

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  const std::map<Mono, Elem, GrevlexGreater>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }
  Elem constant_term() const;
  Elem coeff(const Mono& m) const;

  const Mono& leading_mono() const;
  const Elem& leading_coeff() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Elem& c) const;
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly derivative(int i) const;

  /// Full substitution: images[i] replaces variable i; images live in a common
  /// ring/variable count which becomes that of the result.
  Poly substitute(const std::vector<Poly>& images) const;
  /// Replace one variable, keep the others (same nvars).
  Poly subst_var(int i, const Poly& g) const;
  /// Set x_chart = 1 and drop the variable (projective chart).
  Poly dehomogenize(int chart) const;
  /// Insert a fresh variable at position pos (exponent 0 everywhere).
  Poly extend_vars(int new_nvars, int pos) const;

  Elem evaluate(std::span<const Elem> point) const;
  Poly map_coeffs(const RingPtr& target, const std::function<Elem(const Elem&)>& f) const;
  /// Coefficient-wise residue; DVR coefficients only.
  Poly reduce_mod_pi() const;

  void add_term(const Mono& m, const Elem& c);  // accumulate and renormalize

  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  RingPtr ring_;
  int nvars_ = 0;
  std::map<Mono, Elem, GrevlexGreater> terms_;
};

/// Parse the polynomial grammar: variables (default x0..xN), integer literals,
/// `pi` for the uniformizer of a DVR coefficient ring, operators + - * ^ and
/// parentheses, e.g. "x0*x1 - 3*x2^2".
Poly parse_poly(const std::string& text, const RingPtr& ring, const std::vector<std::string>& varnames);

/// Exact zero sets over small finite fields; the brute-force oracle.
struct PointSet {
  RingPtr field;
  bool projective = false;
  std::vector<std::vector<Elem>> points;  // canonical, sorted, duplicate-free
  bool contains(const std::vector<Elem>& pt) const;
};

/// Normalize a projective point: first nonzero coordinate scaled to 1.
std::vector<Elem> normalize_projective(const RingPtr& field, std::vector<Elem> pt);

/// Exhaustively enumerate the common zero set of `polys` over F_{q^ext_degree}.
/// All polys share a field-kind ring and variable count. Throws BudgetExceeded
/// when the candidate count exceeds `budget` (default 10^7). An empty list
/// yields the whole space.
PointSet enumerate_zeros(const std::vector<Poly>& polys, const RingPtr& field, int nvars, bool projective,
                         int ext_degree = 1, int64_t budget = 10000000);
PointSet enumerate_zeros(const std::vector<Poly>& polys, bool projective, int ext_degree = 1,
                         int64_t budget = 10000000);

std::string point_to_string(const RingPtr& field, const std::vector<Elem>& pt, bool projective);

/// All exponent vectors of total degree exactly d, deterministic order
/// (first variable's exponent decreasing).
std::vector<Mono> degree_monomials(int nvars, int d);

/// The uniformizer-power digits of a DVR element: k residue-field elements
/// d_0..d_{k-1} with a = sum d_j pi^j (canonical representatives).
std::vector<Elem> pi_digits(const Elem& a);

/// Rewrite a polynomial with truncated-DVR coefficients as a polynomial over
/// the residue field with one extra variable z (appended last) standing for
/// the uniformizer.
Poly pi_to_variable(const Poly& f);

}  // namespace sect
