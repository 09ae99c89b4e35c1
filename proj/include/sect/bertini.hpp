#pragma once

#include "sect/ideal.hpp"

namespace sect {

/// A hyperplane sum a_i x_i = 0 with coefficients in a truncated DVR, in
/// canonical form: not all coefficients in the maximal ideal, and the first
/// unit coefficient scaled to 1.
struct HyperplaneA {
  RingPtr ring;
  std::vector<Elem> coeffs;

  Poly to_poly() const;  // the linear form over the DVR
};

/// Normalize arbitrary coefficients into canonical form. Throws Unsupported
/// when every coefficient lies in the maximal ideal.
HyperplaneA make_hyperplane(const RingPtr& dvr, std::vector<Elem> coeffs);

/// Coefficient-wise residue; nonzero by the canonical-form invariant.
std::vector<Elem> specialize(const HyperplaneA& H);

/// Canonical coefficient lift of a nonzero residue hyperplane;
/// specialize(lift_hyperplane(A, h)) == h.
HyperplaneA lift_hyperplane(const RingPtr& dvr, const std::vector<Elem>& h);

/// A hypersurface model over a DVR together with the declared smooth
/// components of the reduced special fibre.
struct StratifiedModel {
  SchemeModel X;                        // over the DVR, projective
  std::vector<SchemeModel> components;  // over the residue field
  bool proper = false;
};

/// Verify a stratified model: every component smooth, and the component union
/// supports exactly the rational points of the special fibre. Throws
/// ChartInconsistency on support mismatch.
StratifiedModel load_stratified(SchemeModel X, std::vector<SchemeModel> components, bool proper,
                                int64_t budget = 10000000);

struct Stratum {
  std::vector<int> indices;  // component indices (0-based)
  SchemeModel model;         // intersection of those components
  bool empty = false;
};

/// All nonempty component-index subsets with their intersection models; empty
/// intersections are reported with the flag set.
std::vector<Stratum> strata(const StratifiedModel& model);

/// Two-part smoothness surrogate for a complete intersection over a DVR:
/// the special fibre must be smooth of the expected dimension, and in every
/// affine chart the Jacobian ideal with the uniformizer as an extra variable z
/// (subject to z^k = 0) must be the unit ideal. Returns the empty string on
/// success, otherwise the failing condition.
std::string generic_fibre_obstruction(const SchemeModel& X, CheckMode mode = CheckMode::Groebner,
                                      int ext_bound = 2, int64_t budget = 10000000);

struct HyperplaneVerdict {
  bool good = false;
  std::string reason;  // first failure, stable text; empty when good
  std::string route;   // how the generic-fibre condition was certified
  bool ok() const { return good; }
};

/// Good-hyperplane test: the residue hyperplane must be transversal to every
/// stratum; unless the model is proper, the hyperplane section must in
/// addition pass the generic-fibre transversality check at the ring's
/// precision (uniformizer-as-variable Jacobian ideal plus smoothness of the
/// special fibre of the section).
HyperplaneVerdict is_good_hyperplane(const StratifiedModel& model, const HyperplaneA& H,
                                     CheckMode mode = CheckMode::Groebner, int ext_bound = 2,
                                     int64_t budget = 10000000);

struct HyperplaneSearch {
  bool found = false;
  int ext_degree = 1;  // degree of the unramified extension used
  RingPtr ring;        // the (possibly extended) DVR
  HyperplaneA best;    // first good hyperplane in scan order
  std::vector<std::vector<Elem>> good_locus;      // all passing residue hyperplanes at that level
  std::vector<std::pair<int, int64_t>> scanned;   // (ext degree, candidates examined)
};

/// Deterministic lexicographic scan of all residue hyperplanes, lifting and
/// testing each; on exhaustion the residue field is extended by unramified
/// degree ell, up to ell^max_ext.
HyperplaneSearch find_good_hyperplane(const StratifiedModel& model, int ell = 2, int max_ext = 2,
                                      CheckMode mode = CheckMode::Groebner, int64_t budget = 10000000);

struct HypersurfaceSearch {
  bool found = false;
  Poly form;
  int64_t scanned = 0;
  bool exhaustive = true;       // false when the candidate space was sampled
  std::vector<Poly> good;       // every passing form (exhaustive scans only)
};

/// Degree-d form over a finite field transversal to the model and to every
/// stratum of the declared components. Exhaustive in deterministic order when
/// the candidate count fits the budget, otherwise a seeded random sample.
HypersurfaceSearch find_good_hypersurface(const SchemeModel& X, int d,
                                          const std::vector<SchemeModel>& components = {},
                                          int64_t budget = 2000000, uint64_t seed = 1,
                                          int sample_size = 2000);

}  // namespace sect
