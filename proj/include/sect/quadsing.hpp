#pragma once

#include "sect/ideal.hpp"

namespace sect {

enum class OqCase { NonDegenerate, DegenerateChar2 };

/// Local normal form of an ordinary quadratic singularity at the origin of an
/// affine chart:
///   NonDegenerate:    Q(x_1..x_{n+1}) - c           (c in the maximal ideal)
///   DegenerateChar2:  P(x_1..x_n) + x_{n+1}^2 + b x_{n+1} + c   (n even)
/// The quadratic form is stored as a polynomial in n+1 variables; in the
/// degenerate case the last variable does not occur in P.
struct LocalModel {
  RingPtr ring;
  OqCase oq_case = OqCase::NonDegenerate;
  int n = 0;  // fibre dimension at the point
  Poly quad;  // Q (NonDegenerate) or P (DegenerateChar2)
  Elem b, c;
  std::string provenance;  // extensions applied to reach this model

  /// eta = unit part of c, or epsilon = unit part of b.
  Elem unit() const;
  /// r = v(c) (NonDegenerate) or q = v(b) (DegenerateChar2); throws
  /// PrecisionExhausted when the valuation is beyond the ring precision.
  int order() const;
  /// Ready for blow-up: r even, resp. c = 0.
  bool normalized() const;
  /// The defining polynomial of the model hypersurface in n+1 variables.
  Poly realize() const;
};

/// Validate and build a LocalModel: the residue quadric must be smooth, the
/// degenerate case requires residue characteristic 2 and even n, and the
/// discriminant data must sit strictly inside the maximal ideal.
LocalModel make_local_model(const RingPtr& ring, OqCase oq_case, int n, Poly quad, Elem b, Elem c);

struct SingularityVerdict {
  enum class Kind { Smooth, OrdinaryQuadratic, NotOrdinary, Undecidable };
  Kind kind = Kind::Smooth;
  std::optional<LocalModel> model;  // set for OrdinaryQuadratic
  std::string reason;               // set for NotOrdinary / Undecidable

  bool is_oq() const { return kind == Kind::OrdinaryQuadratic; }
};

/// Classify a rational point of a hypersurface model. Over a DVR the point is
/// a residue-field point of the special fibre and the classification works
/// over the DVR (translation, linear-part elimination, absorption of
/// higher-order terms up to the jet bound); over a field only the quadratic
/// part decides. Throws NotHypersurface / PointNotOnFibre.
SingularityVerdict classify_point(const SchemeModel& X, const std::vector<Elem>& x,
                                  int jet_bound = 4);

/// Normalization for blow-up: NonDegenerate with odd order passes to the
/// ramified quadratic extension (equicharacteristic only); DegenerateChar2
/// shifts the last coordinate by a root of x^2 + bx + c (found by exhaustive
/// search, extending the residue field quadratically if needed) so that c = 0.
LocalModel normalize(const LocalModel& m);

/// Tangent-space criterion for a hyperplane through the singular point: the residue
/// linear part must be nonzero and transversal to the residue quadric in the
/// projectivized tangent space.
bool hyperplane_preserves_oq(const LocalModel& m, const Poly& g);

/// All residue hyperplanes through the singular point that preserve the
/// ordinary quadratic singularity (normalized linear forms over the residue
/// field, deterministic order).
std::vector<Poly> good_hyperplane_locus_at_singularity(const LocalModel& m, int64_t budget = 10000000);

/// Substitute the hyperplane g = 0 (a linear form through the origin with a
/// unit coefficient) into f by eliminating the pivot variable; the result has
/// one variable fewer.
Poly restrict_to_hyperplane(const Poly& f, const Poly& g);

}  // namespace sect
