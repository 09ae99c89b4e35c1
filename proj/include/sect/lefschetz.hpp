#pragma once

#include "sect/bertini.hpp"
#include "sect/quadsing.hpp"

namespace sect {

/// A line in the space of degree-d forms: members are t0*f0 + t1*finf for
/// (t0:t1) in P^1. d >= 2 plays the role of the d-fold embedding (degree-d
/// sections instead of an explicit re-embedding).
struct Pencil {
  RingPtr ring;
  int nvars = 0;  // ambient projective coordinate count
  int d = 1;
  Poly f0, finf;
};

/// Validate and build: both forms homogeneous of degree d, not proportional
/// (over a DVR: residues not proportional).
Pencil make_pencil(int d, Poly f0, Poly finf);

Poly pencil_member(const Pencil& p, const Elem& t0, const Elem& t1);

/// The axis {f0 = finf = 0}.
SchemeModel axis_of(const Pencil& p);

/// Classify a point of the section X . {g = 0} over a field:
///   - plane curves (any member degree): by local intersection multiplicity mu
///     at the point -- 1 smooth, 2 ordinary quadratic, >= 3 not ordinary;
///   - hypersurfaces with linear g: restrict to the hyperplane and classify.
SingularityVerdict classify_section_point(const SchemeModel& X, const Poly& g,
                                          const std::vector<Elem>& x);

struct TangencyEntry {
  Poly form;       // normalized (monic leading coefficient), over the base field
  bool contained = false;  // form vanishes on X: degenerate member
  bool tangent = false;    // section not transversal
  RingPtr point_field;
  std::vector<std::vector<Elem>> points;  // singular points of the section
  std::vector<SingularityVerdict> verdicts;
  bool open_stratum = false;  // exactly one singular point, ordinary quadratic
};

struct TangencyTable {
  int d = 1;
  int ext_bound = 2;
  std::vector<TangencyEntry> entries;  // every normalized degree-d form, scan order
  std::string to_text(const std::vector<std::string>& varnames = {}) const;
};

/// Exhaustive tangency table over all normalized degree-d forms over the base
/// field: the brute-force dual variety, with the open stratum tagged.
TangencyTable dual_table(const SchemeModel& X, int d, int ext_bound = 2,
                         int64_t budget = 10000000);

struct MemberVerdict {
  RingPtr field;          // field of the parameter t
  std::vector<Elem> t;    // normalized (t0:t1)
  RingPtr point_field;
  std::vector<std::vector<Elem>> points;  // singular section points not among the declared ones
  std::vector<SingularityVerdict> verdicts;
  bool certified = true;  // exactly one new point and it is ordinary quadratic
  std::string note;
};

/// Members of the pencil with a non-transversal section, t scanned over
/// P^1(F_{q^m}) for m <= ext_bound: the computable realization of Sigma. Declared
/// singular points of X are not counted as new section singularities.
std::vector<MemberVerdict> singular_members(const SchemeModel& X, const Pencil& p,
                                            int ext_bound = 3,
                                            const std::vector<std::vector<Elem>>& declared = {},
                                            int64_t budget = 10000000);

struct LefschetzReport {
  bool lefschetz = false;
  std::string failure;  // first failing condition, stable text
  int ext_bound = 3;
  SmoothnessCertificate axis_cert;
  std::vector<MemberVerdict> sigma;
  int64_t members_scanned = 0;
  std::string report() const;
};

/// Lefschetz-pencil verification. With no declared points (smooth X): axis
/// transversal, members outside Sigma transversal, Sigma members carrying
/// exactly one ordinary quadratic point. With declared ordinary quadratic
/// points: additionally the axis avoids them, and every member through such a
/// point keeps it ordinary quadratic (linear-part criterion and direct
/// section classification).
LefschetzReport is_lefschetz(const SchemeModel& X, const Pencil& p,
                             const std::vector<std::vector<Elem>>& oq_points = {},
                             int ext_bound = 3, int64_t budget = 10000000);

struct PencilSearch {
  bool found = false;
  Pencil pencil;  // valid when found
  int ext_degree = 1;
  std::vector<std::pair<int, int64_t>> scanned;  // (extension degree, candidates tried)
  std::optional<LefschetzReport> report;         // evidence for the found pencil
  std::string note;                              // uncertified corners, stable text
};

/// Deterministic scan over canonical two-flags of degree-d forms (reduced
/// row-echelon bases of the candidate lines), first pencil passing
/// is_lefschetz wins; on exhaustion the field is extended by unramified
/// degree ell, up to ell^max_ext. candidate_budget caps the scan per level.
PencilSearch find_pencil(const SchemeModel& X, int d, int ell = 2, int max_ext = 0,
                         const std::vector<std::vector<Elem>>& oq_points = {}, int ext_bound = 3,
                         int64_t candidate_budget = 100000, int64_t budget = 10000000);

/// Pencil over a DVR model: scans residue pencils passing is_lefschetz on the
/// special fibre (declared points treated as known ordinary quadratic
/// singularities), lifts coefficientwise
/// and verifies at precision k: axis section smooth on both fibres, members
/// outside the lifted Sigma transversal on both fibres, Sigma members with
/// ordinary quadratic reduction. Only d = 1 members are supported over a DVR.
PencilSearch find_pencil_dvr(const StratifiedModel& model, int d, int ell = 2, int max_ext = 0,
                             const std::vector<std::vector<Elem>>& oq_points = {},
                             int ext_bound = 2, int64_t candidate_budget = 100000,
                             int64_t budget = 10000000);

}  // namespace sect
