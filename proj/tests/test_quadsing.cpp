#include "doctest.h"

#include "sect/quadsing.hpp"

using namespace sect;

namespace {
std::vector<std::string> p2{"x0", "x1", "x2"};
std::vector<std::string> xy{"x", "y"};
std::vector<std::string> xyz{"x", "y", "z"};
}  // namespace

TEST_CASE("node of x0*x1 - 9*x2^2 over Z/3^5 at (0:0:1)") {
  auto A = Ring::mixed_dvr(3, 5);
  auto F = A->residue_field();
  SchemeModel X{A, 3, true, {parse_poly("x0*x1 - 9*x2^2", A, p2)}, p2};
  auto v = classify_point(X, {F->zero(), F->zero(), F->one()});
  REQUIRE(v.is_oq());
  CHECK(v.model->oq_case == OqCase::NonDegenerate);
  CHECK(v.model->n == 1);
  CHECK(v.model->quad == parse_poly("x*y", A, xy));
  CHECK(v.model->c == A->from_int(9));
  CHECK(v.model->order() == 2);
  CHECK(v.model->normalized());
}

TEST_CASE("sphere with small constant over Z/5^3") {
  auto A = Ring::mixed_dvr(5, 3);
  SchemeModel X{A, 3, false, {parse_poly("x^2 + y^2 + z^2 - 5", A, xyz)}, xyz};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero(), F->zero()});
  REQUIRE(v.is_oq());
  CHECK(v.model->c == A->from_int(5));
  CHECK(v.model->order() == 1);
  CHECK(!v.model->normalized());
}

TEST_CASE("smooth point detected from a unit residue partial") {
  auto A = Ring::mixed_dvr(5, 2);
  SchemeModel X{A, 2, false, {parse_poly("x - 5*y^2", A, xy)}, xy};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero()});
  CHECK(v.kind == SingularityVerdict::Kind::Smooth);
}

TEST_CASE("linear part over the ring is eliminated before matching") {
  auto A = Ring::mixed_dvr(5, 3);
  // (x+5)(y+5) - 5 = xy + 5x + 5y + 20: node hidden behind a translation
  SchemeModel X{A, 2, false, {parse_poly("x*y + 5*x + 5*y + 20", A, xy)}, xy};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero()});
  REQUIRE(v.is_oq());
  CHECK(v.model->quad == parse_poly("x*y", A, xy));
  CHECK(v.model->order() == 1);  // c = 5
  CHECK(v.model->c == A->from_int(5));
}

TEST_CASE("degenerate quadratic part is rejected") {
  auto A = Ring::mixed_dvr(5, 3);
  SchemeModel X{A, 3, false, {parse_poly("x^2 + y^2 - 5", A, xyz)}, xyz};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero(), F->zero()});
  CHECK(v.kind == SingularityVerdict::Kind::NotOrdinary);
}

TEST_CASE("char-2 degenerate pattern") {
  auto A = Ring::equi_dvr(2, 1, 4);
  std::vector<std::string> v3{"x1", "x2", "x3"};
  SchemeModel X{A, 3, false, {parse_poly("x1*x2 + x3^2 + pi*x3 + pi^3", A, v3)}, v3};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero(), F->zero()});
  REQUIRE(v.is_oq());
  CHECK(v.model->oq_case == OqCase::DegenerateChar2);
  CHECK(v.model->n == 2);
  CHECK(v.model->b == A->uniformizer());
  CHECK(v.model->order() == 1);
  CHECK(!v.model->normalized());  // c = t^3 != 0
}

TEST_CASE("orders and precision exhaustion") {
  auto A = Ring::mixed_dvr(3, 5);
  auto m = make_local_model(A, OqCase::NonDegenerate, 1, parse_poly("x*y", A, xy), A->zero(),
                            A->from_int(9));
  CHECK(m.order() == 2);
  CHECK(m.unit() == A->one());

  auto B = Ring::equi_dvr(2, 1, 4);
  auto m2 = make_local_model(B, OqCase::DegenerateChar2, 2,
                             parse_poly("x1*x2", B, {"x1", "x2", "x3"}), B->uniformizer(), B->zero());
  CHECK(m2.order() == 1);

  auto C = Ring::mixed_dvr(3, 3);
  auto m3 = make_local_model(C, OqCase::NonDegenerate, 1, parse_poly("x*y", C, xy), C->zero(),
                             C->from_int(27));
  CHECK_THROWS_AS((void)m3.order(), PrecisionExhausted);
}

TEST_CASE("order is invariant under unit rescaling of the discriminant datum") {
  auto A = Ring::mixed_dvr(5, 4);
  Poly Q = parse_poly("x*y", A, xy);
  for (int64_t u : {1, 2, 3, 4, 6, 7, 123}) {
    if (!A->is_unit(A->from_int(u))) continue;
    auto m = make_local_model(A, OqCase::NonDegenerate, 1, Q, A->zero(),
                              A->mul(A->from_int(u), A->from_int(25)));
    CHECK(m.order() == 2);
  }
}

TEST_CASE("normalize: ramified square root doubles an odd order") {
  auto A = Ring::equi_dvr(3, 1, 3);
  auto m = make_local_model(A, OqCase::NonDegenerate, 1, parse_poly("x^2 + y^2", A, xy), A->zero(),
                            A->uniformizer());
  CHECK(m.order() == 1);
  auto n = normalize(m);
  CHECK(n.ring->k() == 6);
  CHECK(n.order() == 2);
  CHECK(n.normalized());
  CHECK(n.provenance == "ramified-sqrt;");

  auto even = make_local_model(A, OqCase::NonDegenerate, 1, parse_poly("x^2 + y^2", A, xy),
                               A->zero(), A->mul(A->uniformizer(), A->uniformizer()));
  CHECK(normalize(even).ring->same(*A));  // identity

  auto M = Ring::mixed_dvr(3, 2);
  auto mm = make_local_model(M, OqCase::NonDegenerate, 1, parse_poly("x*y", M, xy), M->zero(),
                             M->from_int(3));
  CHECK_THROWS_AS(normalize(mm), Unsupported);
}

TEST_CASE("normalize: char-2 root shift clears c") {
  auto A = Ring::equi_dvr(2, 1, 4);
  Elem t = A->uniformizer();
  Elem t3 = A->mul(t, A->mul(t, t));
  auto m = make_local_model(A, OqCase::DegenerateChar2, 2,
                            parse_poly("x1*x2", A, {"x1", "x2", "x3"}), t, t3);
  auto n = normalize(m);
  CHECK(n.ring->is_zero(n.c));
  CHECK(n.order() == 1);
  CHECK(n.normalized());
  // oracle: rho = t^2 is a root of x^2 + tx + t^3 in F_2[t]/(t^4)
  Elem rho = A->mul(t, t);
  CHECK(A->is_zero(A->add(A->mul(rho, rho), A->add(A->mul(t, rho), t3))));
}

TEST_CASE("hyperplanes through a sphere singularity over F_5") {
  auto A = Ring::mixed_dvr(5, 2);
  std::vector<std::string> v3{"x1", "x2", "x3"};
  auto m = make_local_model(A, OqCase::NonDegenerate, 2,
                            parse_poly("x1^2 + x2^2 + x3^2", A, v3), A->zero(), A->from_int(5));
  auto F = A->residue_field();
  CHECK(hyperplane_preserves_oq(m, parse_poly("x3", F, v3)));
  CHECK(!hyperplane_preserves_oq(m, parse_poly("x1 + 2*x2", F, v3)));  // tangent: 1^2+2^2 = 0
  CHECK(!hyperplane_preserves_oq(m, Poly(F, 3)));                      // zero form

  auto locus = good_hyperplane_locus_at_singularity(m);
  CHECK(locus.size() == 25);  // 31 hyperplanes, 6 tangent to the smooth conic

  // sufficiency direction: every passing hyperplane keeps an ordinary quadratic
  // singularity on the section through the origin
  Poly f = m.realize();
  for (const auto& g : locus) {
    Poly gA = g.map_coeffs(A, [&](const Elem& e) { return A->lift(e); });
    Poly section = restrict_to_hyperplane(f, gA);
    SchemeModel S{A, 2, false, {section}, {}};
    auto v = classify_point(S, {F->zero(), F->zero()});
    REQUIRE(v.is_oq());
    CHECK(v.model->order() == 1);
  }
}

TEST_CASE("hyperplane locus is nonempty over F_3") {
  auto A = Ring::mixed_dvr(3, 2);
  std::vector<std::string> v3{"x1", "x2", "x3"};
  auto m = make_local_model(A, OqCase::NonDegenerate, 2,
                            parse_poly("x1^2 + x2^2 + x3^2", A, v3), A->zero(), A->from_int(3));
  CHECK(!good_hyperplane_locus_at_singularity(m).empty());
}

TEST_CASE("degenerate quadratic data is rejected by the model invariants") {
  auto A = Ring::mixed_dvr(5, 2);
  CHECK_THROWS_AS(make_local_model(A, OqCase::NonDegenerate, 2,
                                   parse_poly("x1^2 + x2^2", A, {"x1", "x2", "x3"}), A->zero(),
                                   A->from_int(5)),
                  Unsupported);
  CHECK_THROWS_AS(make_local_model(A, OqCase::NonDegenerate, 1, parse_poly("x*y", A, xy),
                                   A->zero(), A->from_int(2)),
                  Unsupported);  // c a unit
}

TEST_CASE("field-sense classification of a nodal cubic") {
  auto F = Ring::prime_field(5);
  SchemeModel X{F, 3, true, {parse_poly("x1^2*x2 - x0^3 - x0^2*x2", F, p2)}, p2};
  auto v = classify_point(X, {F->zero(), F->zero(), F->one()});
  REQUIRE(v.is_oq());  // the cubic tail is ignored in the field sense
  CHECK(v.model->quad == parse_poly("y^2 - x^2", F, xy));

  // a cusp is not ordinary quadratic
  SchemeModel C{F, 3, true, {parse_poly("x1^2*x2 - x0^3", F, p2)}, p2};
  auto w = classify_point(C, {F->zero(), F->zero(), F->one()});
  CHECK(w.kind == SingularityVerdict::Kind::NotOrdinary);
}

TEST_CASE("classification round-trips through realize") {
  auto A = Ring::mixed_dvr(7, 3);
  std::vector<std::string> v3{"x1", "x2", "x3"};
  auto m = make_local_model(A, OqCase::NonDegenerate, 2,
                            parse_poly("x1*x2 + x3^2", A, v3), A->zero(), A->from_int(49));
  SchemeModel X{A, 3, false, {m.realize()}, v3};
  auto F = A->residue_field();
  auto v = classify_point(X, {F->zero(), F->zero(), F->zero()});
  REQUIRE(v.is_oq());
  CHECK(v.model->oq_case == m.oq_case);
  CHECK(v.model->order() == 2);
  CHECK(v.model->c == m.c);
}
