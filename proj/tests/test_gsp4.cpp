#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gsp/gsp4_example.hpp"
#include "gsp/oracles.hpp"
#include "gsp/symplectic.hpp"

using namespace gsp;

namespace {

const GaloisRing* ring(int64_t p, int m) { return GaloisRing::get(prime_field(p), m); }

bool throws_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// Largest pattern exponent over the support of X_r.
int root_exponent(const RootDatum& rd, const Root& r) {
  int e = 0;
  const Mat& X = rd.X(r);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!X(i, j).is_zero()) e = std::max(e, h_pattern()[i][j]);
  return e;
}

ExamplePlan generic_plan(int64_t p) {
  ExamplePlan s;
  s.p = p;
  s.precision = 1;
  s.exponents = {3, 0, -12, -9};
  s.similitude_exponent = -9;
  return s;
}

}  // namespace

TEST_CASE("plan validation") {
  ExamplePlan plan;
  CHECK_NOTHROW(plan.validate());
  CHECK(plan.kappa_k() == 23 * 22);

  ExamplePlan small = plan;
  small.p = 19;
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { small.validate(); }));
  CHECK_NOTHROW(small.validate_shape());

  ExamplePlan composite = plan;
  composite.p = 25;
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { composite.validate_shape(); }));

  ExamplePlan bad = plan;
  bad.exponents = {3, 0, 6, 8};
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { bad.validate_shape(); }));

  ExamplePlan k = plan;
  k.k = 22;
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { k.validate(); }));
  k.general_k = true;
  CHECK_NOTHROW(k.validate());
  k.k = 21;
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { k.validate(); }));

  ExamplePlan deep = plan;
  deep.precision = 0;
  CHECK(throws_kind(ErrorKind::PlanInvalid, [&] { deep.validate(); }));
}

TEST_CASE("h_m spans") {
  const GaloisRing* F = ring(23, 1);
  RootDatum rd(2, F);
  auto span_of = [&](const std::vector<std::string>& names) {
    Mat S = zeros(F, rd.dim(), 0);
    for (int i = 0; i < 2; ++i) S = hstack(S, Mat(identity(F, rd.dim()).col(rd.torus_index(i))));
    for (const std::string& s : names)
      for (const Root& r : {Root::parse(s, 2), -Root::parse(s, 2)})
        S = hstack(S, Mat(identity(F, rd.dim()).col(rd.index_of(r))));
    return S;
  };
  const Mat h1 = h_subspace(1, F), h2 = h_subspace(2, F), h3 = h_subspace(3, F);
  CHECK(h1.cols() == 6);
  CHECK(h2.cols() == 8);
  CHECK(h3.cols() == 10);
  const Mat want1 = span_of({"L1-L2", "2L2"});
  CHECK(contains_span(h1, want1));
  CHECK(contains_span(want1, h1));
  const Mat want2 = span_of({"L1-L2", "2L2", "L1+L2"});
  CHECK(contains_span(h2, want2));
  CHECK(contains_span(want2, h2));
  CHECK(h_subspace(7, F).cols() == 10);
}

TEST_CASE("H pattern membership") {
  const GaloisRing* R = ring(23, 3);
  RootDatum rd(2, R);
  CHECK(verify_h_pattern(diagonal({R->from_int(2), R->one(), R->from_int(5), R->from_int(10)})));
  CHECK(verify_h_pattern(Mat(identity(R, 4) + scale(rd.X(short_root(2, 0, 1, 1, -1)), R->from_int(23)))));
  Mat e21 = identity(R, 4);
  e21(1, 0) = R->one();
  CHECK_FALSE(verify_h_pattern(e21));
  CHECK(throws_kind(ErrorKind::SpecMismatch, [&] { verify_h_pattern(identity(R, 2)); }));
  CHECK(throws_kind(ErrorKind::NotInU1, [&] { d_conjugate_residue(e21); }));
  CHECK(throws_kind(ErrorKind::PrecisionIncrease, [&] { d_conjugate_residue(identity(R, 4)); }));
  const GaloisRing* R4 = ring(23, 4);
  CHECK(equal(d_conjugate_residue(identity(R4, 4)), identity(ring(23, 1), 4)));
}

TEST_CASE("H is closed under products (randomized)") {
  std::mt19937_64 rng(11);
  for (int m = 1; m <= 4; ++m) {
    const GaloisRing* R = ring(23, m);
    RootDatum rd(2, R);
    std::uniform_int_distribution<int64_t> coef(0, 22 * 23);
    std::uniform_int_distribution<size_t> pick(0, rd.roots().size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const GR a = teichmuller(R->from_int(1 + coef(rng) % 22), m);
      Mat prod = diagonal({a, R->one(), a.inverse(), R->one()});
      for (int f = 0; f < 6; ++f) {
        const Root& r = rd.roots()[pick(rng)];
        const GR c = R->from_int(coef(rng)) * R->from_int(23).pow(root_exponent(rd, r));
        prod = prod * cayley(scale(rd.X(r), c));
      }
      CAPTURE(m);
      CHECK(verify_h_pattern(prod));
    }
    // One power of p short of the pattern leaves H.
    {
      const Root r = short_root(2, 0, 1, 1, -1);
      const GR c = R->from_int(23).pow(root_exponent(rd, r) - 1);
      CHECK_FALSE(verify_h_pattern(cayley(scale(rd.X(r), c))));
    }
  }
}

TEST_CASE("eigencharacter table") {
  const auto table = eigencharacter_table(ExamplePlan{});
  std::map<std::string, int64_t> want = {{"L1-L2", 3}, {"2L2", -9}, {"2L1", -3}, {"L1+L2", -6}};
  int checked = 0;
  for (const CharacterExponent& c : table) {
    if (c.root.one) {
      CHECK(c.exponent == 0);
      continue;
    }
    for (const auto& [name, e] : want) {
      const Root r = Root::parse(name, 2);
      if (c.root == r) {
        CHECK(c.exponent == e);
        ++checked;
      }
      if (c.root == -r) {
        CHECK(c.exponent == -e);
        ++checked;
      }
    }
  }
  CHECK(checked == 8);
}

TEST_CASE("example build at p = 23") {
  const ExampleBuild B = build_example(ExamplePlan{});
  const Report& rep = B.report;
  for (const char* name : {"h_m filtration", "ladder", "H pattern", "Phi(r2) components", "rho-bar"}) {
    const Check* c = rep.find(name);
    REQUIRE_MESSAGE(c != nullptr, name);
    CHECK_MESSAGE(c->verdict == Verdict::Pass, name);
  }
  for (const char* id : {"1", "2", "3", "5", "8"}) {
    const Check* c = rep.find(std::string("hypothesis.") + id);
    REQUIRE(c != nullptr);
    CHECK_MESSAGE(c->verdict == Verdict::Pass, id);
  }
  // sigma_{-2L1} and sigma_{L1-L2} are both chi^3, for every p.
  const Check* c4 = rep.find("hypothesis.4");
  REQUIRE(c4 != nullptr);
  CHECK(c4->verdict == Verdict::Fail);
  CHECK(c4->witnesses.size() == 2);
  CHECK(rep.find("hypothesis.6")->verdict == Verdict::Assumed);

  REQUIRE(B.trace.size() == 4);
  CHECK(B.trace[0].name == "r-bar");
  CHECK(B.trace.back().name == "r3");
  CHECK(B.trace.back().ladder.precision() == 3);
  CHECK(B.phi.cols() == 2);
  for (const Mat& X : B.residual.images) CHECK(in_borel(X));

  const std::string text = rep.str();
  CHECK(text.rfind("format = gsp-report/1\n", 0) == 0);
  CHECK(text.find("[assumed, not verified]") != std::string::npos);
  CHECK(text.find("[ladder r2]") != std::string::npos);

  ExamplePlan irregular;
  irregular.regular_prime = false;
  CHECK(build_example(irregular).report.find("regular prime input")->verdict == Verdict::Fail);
}

TEST_CASE("condition 4 at p = 13 shows the mod 12 collision") {
  ExamplePlan plan;
  plan.p = 13;
  plan.precision = 1;
  const HypothesisReport h = check_hypotheses(example_group_data(plan));
  const ConditionResult& c4 = h.get("4");
  CHECK(c4.verdict == Verdict::Fail);
  bool found = false;
  for (const std::string& w : c4.witnesses)
    if (w.find("2L2") != std::string::npos && w.find("L1-L2") != std::string::npos &&
        w.find("mod 12") != std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("generic exponents pass every checked hypothesis") {
  for (int64_t p : {37, 41}) {
    const HypothesisReport h = check_hypotheses(example_group_data(generic_plan(p)));
    CAPTURE(p);
    CHECK(h.all_pass());
  }
}

TEST_CASE("saturation oracle") {
  CHECK(throws_kind(ErrorKind::PrimeTooSmall, [] { saturation_oracle(3, 1, 0); }));
  const SaturationResult r = saturation_oracle(5, 5, 3);
  CHECK(r.ok());
  CHECK(r.pairs == 4 * 4 * 4 * 4);
  CHECK(r.u1_order == 625);
  CHECK(r.example_order == 625);
  CHECK(r.trial_orders.size() == 5);

  // Generators that miss U_1/U_2 give a proper subgroup.
  const GaloisRing* F = ring(5, 1);
  RootDatum rd(2, F);
  const int64_t partial = subgroup_order(
      {exp_filtered(rd.X(long_root(2, 1, 1))), exp_filtered(rd.X(short_root(2, 0, 1, 1, 1)))}, 2000);
  CHECK(partial < 625);
  CHECK(throws_kind(ErrorKind::Unsupported, [&] {
    subgroup_order({exp_filtered(rd.X(short_root(2, 0, 1, 1, -1))), exp_filtered(rd.X(long_root(2, 1, 1)))}, 100);
  }));
}

TEST_CASE("closure oracle") {
  for (int64_t p : {5, 7}) {
    const ClosureOracleResult r = closure_oracle(p, 30, 5);
    CAPTURE(p);
    CHECK(r.ok());
    CHECK(r.eigen_seeds > 0);
    CHECK(r.random_seeds == 30);
  }
}

TEST_CASE("hom oracle") {
  const HomOracleResult good = hom_count_oracle(generic_plan(37));
  CHECK(good.ok());
  CHECK(good.subsets == 1023);
  CHECK(good.dual_modules > 1);

  // Colliding characters: extra Homs appear on the dual side.
  ExamplePlan collide;
  collide.precision = 1;
  const HomOracleResult bad = hom_count_oracle(collide);
  CHECK_FALSE(bad.ok());
  CHECK(bad.dual_failures > 0);
  CHECK(bad.cross_failures == 0);
}

TEST_CASE("config parsing") {
  const Config c = Config::parse(
      "format = gsp-config/1\n"
      "# comment\n"
      "p = 23   # trailing\n"
      "list = 1, -2, 3\n"
      "flag = yes\n"
      "m = 1 -2; 0 1\n"
      "word = abc\n");
  CHECK(c.get_int("p") == 23);
  CHECK(c.get_int_list("list") == std::vector<int64_t>{1, -2, 3});
  CHECK(c.get_bool("flag", false));
  CHECK_FALSE(c.get_bool("missing", false));
  CHECK(c.get_int("missing", 4) == 4);
  const Mat m = c.get_matrix("m", ring(5, 2));
  CHECK(equal(m, from_ints(ring(5, 2), 2, 2, {1, -2, 0, 1})));
  CHECK(c.keys_with_prefix("l").size() == 1);

  try {
    c.get_int("word");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    CHECK(std::string(e.what()).find("line 7, field 'word'") != std::string::npos);
  }
  CHECK(throws_kind(ErrorKind::ConfigError, [&] { c.require_known({"format", "p", "list", "flag", "m"}); }));
  CHECK_NOTHROW(c.require_known({"format", "p", "list", "flag", "m", "word"}));
  CHECK(throws_kind(ErrorKind::ConfigError, [] { Config::parse("p = 1\np = 2\n"); }));
  CHECK(throws_kind(ErrorKind::ConfigError, [] { Config::parse("just text\n"); }));
  CHECK(throws_kind(ErrorKind::ConfigError, [] { Config::parse("format = other/2\n"); }));
  CHECK(throws_kind(ErrorKind::ConfigError, [] { Config::parse("m = 1 2; 3\n").get_matrix("m", ring(5, 1)); }));
  CHECK(throws_kind(ErrorKind::ConfigError, [] { Config::load("/nonexistent/gsp.cfg"); }));
}

TEST_CASE("matrix text round trip") {
  const GaloisRing* R = ring(7, 3);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int64_t> coef(-171, 171);
  for (int t = 0; t < 20; ++t) {
    std::vector<int64_t> v(9);
    for (int64_t& x : v) x = coef(rng);
    const Mat X = from_ints(R, 3, 3, v);
    CHECK(equal(parse_matrix(matrix_text(X), R), X));
  }
  CHECK(matrix_text(from_ints(R, 1, 2, {-1, 342})) == "-1 -1");
}
