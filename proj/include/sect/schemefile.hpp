#pragma once

#include "sect/bertini.hpp"
#include "sect/quadsing.hpp"

namespace sect {

/// Declared singular point with its expected classification.
struct OqDecl {
  std::vector<Elem> point;  // residue-field coordinates, projective
  OqCase oq_case = OqCase::NonDegenerate;
  std::optional<int> order;  // expected uniformizer order; DVR models only
};

/// Line-oriented scheme description:
///   ring: Zmod(3^3)
///   ambient: P2
///   eq f1 = x0*x1 - 3*x2^2
///   component Y1 = x0
///   oq at (0:0:1) expect case=i order=1
///   proper: true
///   budget points=1000000
/// Blank lines and lines starting with '#' are ignored. Components live over
/// the residue field of a DVR ring (over the ring itself for field models).
struct SchemeFile {
  RingPtr ring;
  int ambient = 0;  // N of the ambient P^N
  std::vector<std::string> eq_names;
  std::vector<std::string> eq_texts;  // polynomial text verbatim (canonical form)
  SchemeModel model;  // projective in ambient+1 coordinates x0..xN
  std::vector<std::string> component_names;
  std::vector<std::string> component_texts;
  std::vector<SchemeModel> components;
  std::vector<OqDecl> oq;
  bool proper = false;
  int64_t budget_points = 10000000;
  int ext_bound = 2;
  int jet_bound = 4;

  /// Points of the declared singularities (for pencil routines).
  std::vector<std::vector<Elem>> oq_points() const;
  /// The component field: residue field for DVR models, the ring otherwise.
  RingPtr point_field() const;
};

/// Parse the grammar above. Throws ParseError carrying the line number.
SchemeFile parse_scheme_file(const std::string& text);

/// Canonical form; parse_scheme_file(print_scheme_file(f)) reproduces f and
/// printing a parsed canonical file is the identity.
std::string print_scheme_file(const SchemeFile& f);

/// Re-verify every declaration: components smooth (and supporting exactly the
/// special fibre for DVR models), declared points classified as expected.
/// Throws ChartInconsistency on any mismatch.
void verify_scheme_file(const SchemeFile& f);

/// parse + verify.
SchemeFile load_scheme_file(const std::string& text);

}  // namespace sect
