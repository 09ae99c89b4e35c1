#include "doctest.h"

#include "sect/blowup.hpp"

using namespace sect;

namespace {
std::vector<std::string> xy{"x", "y"};

LocalModel node(const RingPtr& A, int r) {
  Elem c = A->one();
  for (int i = 0; i < r; ++i) c = A->mul(c, A->uniformizer());
  return make_local_model(A, OqCase::NonDegenerate, 1, parse_poly("x*y", A, xy), A->zero(), c);
}

LocalModel char2_model(const RingPtr& B, int q) {
  Elem b = B->one();
  for (int i = 0; i < q; ++i) b = B->mul(b, B->uniformizer());
  return make_local_model(B, OqCase::DegenerateChar2, 2,
                          parse_poly("x1*x2", B, {"x1", "x2", "x3"}), b, B->zero());
}
}  // namespace

TEST_CASE("charts of an order-2 node over Z/5^4") {
  auto A = Ring::mixed_dvr(5, 4);
  auto charts = blow_up(node(A, 2));
  REQUIRE(charts.size() == 3);  // n + 2
  CHECK(charts[0].name == "U1");
  CHECK(charts[1].name == "U2");
  CHECK(charts[2].name == "T");

  const Chart& u2 = charts[1];
  REQUIRE(u2.nvars == 3);
  CHECK(u2.varnames == std::vector<std::string>{"u1", "x2", "t"});
  std::vector<std::string> vn{"u1", "x2", "t"};
  REQUIRE(u2.relations.size() == 2);
  CHECK(u2.relations[0] == parse_poly("u1 - t^2", A, vn));
  CHECK(u2.relations[1] == parse_poly("x2*t - 5", A, vn));
  CHECK(u2.principal == "x2");
  CHECK(u2.ambient_images.size() == 3);  // x1, x2, pi
  CHECK(u2.ambient_images[0] == parse_poly("x2*u1", A, vn));
  CHECK(u2.ambient_images[2] == parse_poly("x2*t", A, vn));

  const Chart& tc = charts[2];
  REQUIRE(tc.nvars == 2);
  REQUIRE(tc.relations.size() == 1);
  CHECK(tc.relations[0] == parse_poly("u1*u2 - 1", A, {"u1", "u2"}));
  CHECK(tc.principal == "pi");
}

TEST_CASE("order-2 blow-up is terminal: distinguished point off the scheme") {
  auto A = Ring::mixed_dvr(5, 4);
  auto m = node(A, 2);
  auto rep = analyze_charts(m, blow_up(m));
  CHECK(rep.ok);
  CHECK(rep.terminal);
  CHECK(!rep.xtilde_on_scheme);
  for (const auto& an : rep.analyses) {
    if (an.has_xtilde) continue;
    CHECK(an.strict_transform.ok());
    CHECK(an.exceptional.ok());
    CHECK(an.meeting.ok());
  }
}

TEST_CASE("order-4 node blows down to an order-2 node") {
  auto A = Ring::mixed_dvr(5, 5);
  auto m = node(A, 4);
  auto charts = blow_up(m);
  CHECK(charts[2].relations[0] == parse_poly("u1*u2 - 25", A, {"u1", "u2"}));
  auto rep = analyze_charts(m, charts);
  CHECK(rep.ok);
  CHECK(!rep.terminal);
  CHECK(rep.xtilde_on_scheme);
  REQUIRE(rep.at_xtilde.is_oq());
  CHECK(rep.at_xtilde.model->order() == 2);
  CHECK(rep.at_xtilde.model->normalized());
  // the exceptional fibre in the T chart is singular only at the origin
  CHECK(rep.analyses.back().has_xtilde);
  CHECK(rep.analyses.back().smooth_away_from_xtilde);
}

TEST_CASE("char-2 degenerate charts and terminal step") {
  auto B = Ring::equi_dvr(2, 1, 4);
  auto m = char2_model(B, 1);
  auto charts = blow_up(m);
  REQUIRE(charts.size() == 4);  // n + 2 with n = 2
  const Chart& tc = charts.back();
  CHECK(tc.relations[0] == parse_poly("u1*u2 + u3^2 + u3", B, {"u1", "u2", "u3"}));
  auto rep = analyze_charts(m, charts);
  CHECK(rep.ok);
  CHECK(rep.terminal);  // linear term is a unit: smooth at the distinguished point
  CHECK(rep.xtilde_on_scheme);
}

TEST_CASE("char-2 order drops by one per blow-up") {
  auto B = Ring::equi_dvr(2, 1, 4);
  auto m = char2_model(B, 2);
  auto rep = analyze_charts(m, blow_up(m));
  CHECK(rep.ok);
  CHECK(!rep.terminal);
  REQUIRE(rep.at_xtilde.is_oq());
  CHECK(rep.at_xtilde.model->oq_case == OqCase::DegenerateChar2);
  CHECK(rep.at_xtilde.model->order() == 1);
  CHECK(rep.at_xtilde.model->normalized());
}

TEST_CASE("presentation certificates pass, tampered chart fails") {
  auto A = Ring::mixed_dvr(5, 4);
  auto m = node(A, 2);
  auto charts = blow_up(m);
  auto v = verify_presentation(m, charts);
  CHECK(v.ok);

  auto tampered = charts;
  tampered[1].relations.pop_back();  // drop x2*t - pi from U2
  auto w = verify_presentation(m, tampered);
  CHECK(!w.ok);
  CHECK(w.failure.find("U2") == 0);
}

TEST_CASE("presentation certificates for the char-2 case") {
  auto B = Ring::equi_dvr(2, 1, 4);
  auto m = char2_model(B, 1);
  CHECK(verify_presentation(m, blow_up(m)).ok);
}

TEST_CASE("resolution step counts") {
  SUBCASE("nondegenerate: order/2 steps") {
    CHECK(resolve(node(Ring::mixed_dvr(5, 4), 2)).steps.size() == 1);
    CHECK(resolve(node(Ring::mixed_dvr(5, 5), 4)).steps.size() == 2);
    auto res = resolve(node(Ring::mixed_dvr(5, 7), 6));
    CHECK(res.steps.size() == 3);
    CHECK(res.semistable);
  }
  SUBCASE("char-2 degenerate: order steps") {
    auto B = Ring::equi_dvr(2, 1, 4);
    CHECK(resolve(char2_model(B, 1)).steps.size() == 1);
    auto res = resolve(char2_model(B, 2));
    CHECK(res.steps.size() == 2);
    CHECK(res.semistable);
  }
}

TEST_CASE("blow-up preconditions") {
  auto A = Ring::mixed_dvr(5, 4);
  CHECK_THROWS_AS(blow_up(node(A, 3)), NotNormalized);  // odd order
  auto B = Ring::mixed_dvr(5, 2);
  CHECK_THROWS_AS(blow_up(node(B, 2)), PrecisionExhausted);  // pi^2 = 0 at precision 2
}
