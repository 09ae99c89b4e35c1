#pragma once

#include <optional>
#include <utility>

#include "sect/scheme.hpp"

namespace sect {

bool mono_divides(const Mono& a, const Mono& b);
Mono mono_quotient(const Mono& b, const Mono& a);
Mono mono_lcm(const Mono& a, const Mono& b);

/// Fully reduced normal form of f modulo a list of polynomials with field
/// coefficients. Every term of the result is outside the leading-term ideal
/// of `basis`. Throws BudgetExceeded when the reduction-step budget runs out.
Poly normal_form(const Poly& f, const std::vector<Poly>& basis, int64_t step_budget = 2000000);

/// Reduced grevlex Groebner basis via Buchberger's algorithm (normal pair
/// selection, coprime-leading-term criterion). Deterministic output order:
/// decreasing leading monomial, monic generators.
std::vector<Poly> buchberger(std::vector<Poly> gens, int64_t step_budget = 2000000);

/// Polynomial ideal over a field with a lazily computed, cached reduced
/// Groebner basis.
class Ideal {
 public:
  Ideal(RingPtr field, int nvars, std::vector<Poly> gens);

  const RingPtr& ring() const { return ring_; }
  int nvars() const { return nvars_; }
  const std::vector<Poly>& gens() const { return gens_; }

  const std::vector<Poly>& groebner_basis() const;
  bool contains(const Poly& f) const;
  bool is_unit() const;
  /// Krull dimension of the vanishing locus; nullopt when it is empty.
  std::optional<int> dimension() const;

 private:
  RingPtr ring_;
  int nvars_ = 0;
  std::vector<Poly> gens_;
  mutable std::optional<std::vector<Poly>> gb_;
};

/// How geometric predicates are certified: by Groebner computation, by
/// exhaustive point enumeration over bounded field extensions, or both with a
/// mandatory cross-check (OracleDisagreement on mismatch).
enum class CheckMode { Groebner, Enumeration, Both };

int matrix_rank(const RingPtr& field, std::vector<std::vector<Elem>> m);

/// Determinant of a square polynomial matrix (Laplace expansion); entries may
/// live over any coefficient ring.
Poly poly_determinant(const std::vector<std::vector<Poly>>& m, const RingPtr& ring, int nvars);

/// All c-by-c minors of the Jacobian of c polynomials in nvars variables
/// (zero minors omitted); empty when c > nvars.
std::vector<Poly> jacobian_minors(const std::vector<Poly>& gens, int nvars);

struct SmoothnessCertificate {
  enum class Verdict { Smooth, SingularAt, WrongCodimension };
  Verdict verdict = Verdict::Smooth;
  CheckMode mode = CheckMode::Groebner;
  bool empty = false;  // the locus is empty (vacuously smooth)
  int expected_dim = 0;
  std::optional<int> found_dim;          // Groebner modes only
  std::vector<std::vector<Elem>> witnesses;  // singular points found by enumeration
  RingPtr witness_field;
  bool projective_witnesses = false;
  std::string note;

  bool ok() const { return verdict == Verdict::Smooth; }
  std::string report() const;
};

/// Generators of the non-smooth locus of a complete intersection: the defining
/// equations together with all maximal minors of their Jacobian matrix.
std::vector<Poly> singular_locus_gens(const std::vector<Poly>& gens, int nvars);

/// Singular locus of an affine complete intersection over a field. Throws
/// NotCompleteIntersection when the computed dimension contradicts the
/// generator count.
Ideal singular_locus(const SchemeModel& X);

/// Smoothness of a complete intersection model over a field, of the expected
/// dimension ambient_dim - #gens. Projective models are checked chart by
/// chart. A locus of wrong dimension yields Verdict::WrongCodimension.
SmoothnessCertificate is_smooth(const SchemeModel& X, CheckMode mode = CheckMode::Groebner,
                                int ext_bound = 2, int64_t budget = 10000000);

/// Transversality of two complete intersections in a common ambient space:
/// their scheme intersection must be smooth of codimension codim(X)+codim(Z),
/// or empty.
SmoothnessCertificate is_transversal(const SchemeModel& X, const SchemeModel& Z,
                                     CheckMode mode = CheckMode::Groebner, int ext_bound = 2,
                                     int64_t budget = 10000000);

/// Simple-normal-crossings check for a list of components in a common ambient
/// space: every intersection of a subset of components is smooth of the
/// expected codimension (sum of the subset codimensions) or empty.
struct SncReport {
  bool ok = true;
  std::vector<std::pair<std::vector<int>, SmoothnessCertificate>> strata;
  std::string report() const;
};
SncReport check_snc(const std::vector<SchemeModel>& components, CheckMode mode = CheckMode::Groebner,
                    int ext_bound = 2, int64_t budget = 10000000);

}  // namespace sect
