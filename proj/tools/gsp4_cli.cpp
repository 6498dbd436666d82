#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "gsp/gsp4_example.hpp"
#include "gsp/local_tame.hpp"
#include "gsp/oracles.hpp"
#include "gsp/symplectic.hpp"

using namespace gsp;

namespace {

struct Options {
  std::optional<int64_t> p;
  std::optional<int> n, q_degree, precision;
  std::string config, report;
  uint64_t seed = 1;
};

class Inputs {
 public:
  Inputs(const Options& o, Config c) : opt_(o), cfg_(std::move(c)) {}

  const Config& cfg() const { return cfg_; }
  int64_t p(std::optional<int64_t> fallback = std::nullopt) const {
    if (opt_.p) return *opt_.p;
    if (fallback && !cfg_.has("p")) return *fallback;
    return cfg_.get_int("p");
  }
  int n() const { return opt_.n ? *opt_.n : static_cast<int>(cfg_.get_int("n", 2)); }
  int q_degree() const { return opt_.q_degree ? *opt_.q_degree : static_cast<int>(cfg_.get_int("q_degree", 1)); }
  int precision(int fallback) const {
    return opt_.precision ? *opt_.precision : static_cast<int>(cfg_.get_int("precision", fallback));
  }
  uint64_t seed() const { return cfg_.has("seed") && opt_.seed == 1 ? cfg_.get_int("seed") : opt_.seed; }

  const GaloisRing* ring(int m) const {
    const int64_t pp = p();
    if (!is_prime(pp)) cfg_.fail("p", std::to_string(pp) + " is not prime");
    return GaloisRing::get(default_field(pp, q_degree()), m);
  }
  void check_verb(const std::string& verb) const {
    if (cfg_.has("verb") && cfg_.get("verb") != verb)
      cfg_.fail("verb", "config is for '" + cfg_.get("verb") + "', not '" + verb + "'");
  }

 private:
  Options opt_;
  Config cfg_;
};

const std::vector<std::string> kCommon = {"format", "verb", "p", "n", "q_degree", "precision", "seed"};

std::vector<std::string> with_common(std::vector<std::string> keys) {
  keys.insert(keys.end(), kCommon.begin(), kCommon.end());
  return keys;
}

std::vector<std::string> generator_labels(const Config& c) {
  const auto labels = c.get_list("generators");
  if (labels.empty()) c.fail("generators", "at least one generator is required");
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (labels[i] == labels[j]) c.fail("generators", "duplicate label '" + labels[i] + "'");
  return labels;
}

Mat matrix_field(const Config& c, const std::string& key, const GaloisRing* R, int n) {
  const Mat X = c.get_matrix(key, R);
  if (X.rows() != 2 * n || X.cols() != 2 * n)
    c.fail(key, "expected a " + std::to_string(2 * n) + "x" + std::to_string(2 * n) + " matrix");
  return X;
}

std::string chi_power(int64_t e) { return e == 0 ? "1" : "chi^" + std::to_string(e); }

// ---------------------------------------------------------------- verbs

Report run_example(const Inputs& in) {
  in.check_verb("gsp4-example");
  const Config& c = in.cfg();
  c.require_known(with_common({"exponents", "similitude_exponent", "regular_prime", "general_k", "k"}));
  if (in.n() != 2) c.fail("n", "the example is defined for n = 2");
  ExamplePlan plan;
  plan.p = in.p(plan.p);
  plan.precision = in.precision(plan.precision);
  if (c.has("exponents")) {
    const auto e = c.get_int_list("exponents");
    if (e.size() != 4) c.fail("exponents", "expected four exponents");
    std::copy(e.begin(), e.end(), plan.exponents.begin());
  }
  plan.similitude_exponent = c.get_int("similitude_exponent", plan.similitude_exponent);
  plan.regular_prime = c.get_bool("regular_prime", true);
  plan.general_k = c.get_bool("general_k", false);
  plan.k = c.get_int("k", 0);
  return build_example(plan).report;
}

GroupData read_group_data(const Inputs& in) {
  const Config& c = in.cfg();
  GroupData G;
  G.n = in.n();
  if (G.n < 1) c.fail("n", "n must be positive");
  G.F = in.ring(1);
  if (c.get("source", "explicit") == "example") {
    if (G.n != 2 || in.q_degree() != 1) c.fail("source", "the example data needs n = 2 and q = p");
    ExamplePlan shape;
    shape.p = G.F->p();
    shape.precision = 1;
    if (c.has("exponents")) {
      const auto e = c.get_int_list("exponents");
      if (e.size() != 4) c.fail("exponents", "expected four exponents");
      std::copy(e.begin(), e.end(), shape.exponents.begin());
    }
    shape.similitude_exponent = c.get_int("similitude_exponent", shape.similitude_exponent);
    return example_group_data(shape);
  }
  G.labels = generator_labels(c);
  for (const std::string& l : G.labels) {
    const std::string k = "generator." + l + ".";
    G.images.push_back(matrix_field(c, k + "image", G.F, G.n));
    G.torus.push_back(c.get_bool(k + "torus", false));
    G.chi.push_back(G.F->from_int(c.get_int(k + "chi", 1)));
    G.kappa.push_back(c.has(k + "kappa") ? G.F->from_int(c.get_int(k + "kappa")) : similitude(G.images.back()));
  }
  if (c.has("complex_conjugation")) G.complex_conjugation = matrix_field(c, "complex_conjugation", G.F, G.n);
  if (c.has("decomposition_at_p"))
    for (const std::string& l : c.get_list("decomposition_at_p")) {
      const auto it = std::find(G.labels.begin(), G.labels.end(), l);
      if (it == G.labels.end()) c.fail("decomposition_at_p", "unknown generator '" + l + "'");
      G.decomposition_at_p.push_back(static_cast<int>(it - G.labels.begin()));
    }
  try {
    G.validate();
  } catch (const Error& e) {
    c.fail("generators", e.what());
  }
  return G;
}

Report run_check_hypotheses(const Inputs& in) {
  in.check_verb("check-hypotheses");
  const Config& c = in.cfg();
  c.require_known(with_common({"source", "exponents", "similitude_exponent", "generators", "generator.",
                               "complex_conjugation", "decomposition_at_p"}));
  const GroupData G = read_group_data(in);
  Report rep("check-hypotheses");
  rep.set("p", std::to_string(G.F->p()));
  rep.set("q", std::to_string(G.F->q()));
  rep.set("n", std::to_string(G.n));
  rep.set("generators", std::to_string(G.size()));
  rep.add_hypotheses(check_hypotheses(G));

  const CharacterTable T = character_table(G);
  std::vector<int> torus;
  for (int i = 0; i < G.size(); ++i)
    if (G.torus[i]) torus.push_back(i);
  ReportSection& s = rep.section("characters");
  for (size_t r = 0; r < T.labels.size(); ++r) {
    std::string vals;
    for (int i : torus) vals += (vals.empty() ? "" : ", ") + G.labels[i] + " -> " + T.values[r][i].str();
    s.entries.emplace_back("sigma_{" + T.labels[r].name() + "}", vals);
  }
  for (int i = 0; i < G.size(); ++i) s.entries.emplace_back("image." + G.labels[i], matrix_text(G.images[i]));
  return rep;
}

Report run_lift(const Inputs& in) {
  in.check_verb("lift");
  const Config& c = in.cfg();
  c.require_known(with_common({"generators", "relation.", "generator."}));
  const int n = in.n();
  const int target = in.precision(2);
  if (target < 1 || target + 1 > precision_ceiling())
    c.fail("precision", "must lie in [1, " + std::to_string(precision_ceiling() - 1) + "]");
  const GaloisRing* F = in.ring(1);
  const GaloisRing* Rtop = in.ring(target + 1);

  LiftLadder L;
  L.group.labels = generator_labels(c);
  for (const std::string& k : c.keys_with_prefix("relation.")) {
    try {
      L.group.relations.push_back(parse_word(c.get(k), L.group.labels));
    } catch (const Error& e) {
      c.fail(k, e.what());
    }
  }
  for (const std::string& l : L.group.labels) {
    const std::string k = "generator." + l + ".";
    L.images.push_back(matrix_field(c, k + "image", F, n));
    GR kappa = teichmuller(similitude(L.images.back()).lift(Rtop), target + 1);
    if (c.has(k + "kappa")) kappa = Rtop->from_int(c.get_int(k + "kappa"));
    if (c.get_bool(k + "kappa_teichmuller", false)) kappa = teichmuller(kappa, target + 1);
    L.kappa.push_back(kappa);
  }
  try {
    validate(L);
  } catch (const Error& e) {
    c.fail("generators", std::string("residual data: ") + e.what());
  }

  Report rep("lift");
  rep.set("p", std::to_string(F->p()));
  rep.set("q", std::to_string(F->q()));
  rep.set("n", std::to_string(n));
  rep.set("target precision", std::to_string(target));
  std::string rels;
  for (const Word& w : L.group.relations) rels += (rels.empty() ? "" : ", ") + word_string(w, L.group.labels);
  rep.set("relations", rels.empty() ? "none" : rels);
  rep.add_ladder("ladder m=1", L);
  bool ok = true;
  std::vector<std::string> witnesses;
  while (L.precision() < target) {
    const LiftOutcome out = lift_step(L);
    if (!out.lifted()) {
      ok = false;
      witnesses.push_back(out.obstruction->str(L.group));
      break;
    }
    L = *out.ladder;
    rep.add_ladder("ladder m=" + std::to_string(L.precision()), L);
  }
  rep.add_check("lift", ok,
                "reached precision " + std::to_string(L.precision()) + " of " + std::to_string(target) +
                    "; relations hold and similitudes match kappa at every step",
                witnesses);
  return rep;
}

Report run_local_tame(const Inputs& in) {
  in.check_verb("local-tame");
  const Config& c = in.cfg();
  c.require_known(with_common({"v", "condition", "sigma", "tau", "kappa_sigma", "split_assumed", "tangent"}));
  const int n = in.n();
  const int m = in.precision(2);
  const int64_t v = c.get_int("v");
  LocalCondition cond;
  try {
    cond = parse_condition(c.get("condition", "nr"));
  } catch (const Error& e) {
    c.fail("condition", e.what());
  }
  const GaloisRing* R = in.ring(m);
  const int64_t p = R->p();

  TameRep r;
  r.v = v;
  r.A = matrix_field(c, "sigma", R, n);
  r.B = matrix_field(c, "tau", R, n);
  if (c.has("kappa_sigma")) r.kappa_sigma = R->from_int(c.get_int("kappa_sigma"));

  Report rep("local-tame");
  rep.set("p", std::to_string(p));
  rep.set("q", std::to_string(R->q()));
  rep.set("n", std::to_string(n));
  rep.set("v", std::to_string(v));
  rep.set("precision", std::to_string(m));
  rep.set("condition", condition_name(cond));

  rep.add_check("trivial prime", is_trivial_prime(v, p), "v = 1 mod p and v != 1 mod p^2");
  if (c.get_bool("split_assumed", true))
    rep.assume("v splits completely in the field cut out by rho-bar and mu_p");
  else
    rep.add_check("split input", false, "splitting of v is not asserted");

  bool valid = true;
  try {
    validate(r);
  } catch (const Error& e) {
    valid = false;
    rep.add_check("tame representation", false, e.what());
  }
  if (valid) rep.add_check("tame representation", true, "sigma tau sigma^-1 = tau^v, symplectic, trivial mod p");
  if (!valid) return rep;

  rep.add_check("representative in condition", in_condition(r, cond),
                std::string("representative lies in the explicit ") + condition_name(cond) + " family");
  const bool decidable = m <= 3;
  if (decidable) {
    const auto K = class_conjugator(r, cond);
    rep.add_check("class in condition", K.has_value(),
                  K ? "conjugator " + matrix_text(*K) : "no conjugate by the congruence kernel lies in the family");
  } else {
    rep.section("notes").entries.emplace_back("class membership", "not decided above precision 3");
  }

  if (c.get_bool("tangent", true)) {
    RootDatum rd(n, R->residue_field());
    const int d = rd.dim();
    const Mat N = cond == LocalCondition::Nr ? tangent_nr(rd) : tangent_ram_adapted(r);
    const int h1 = static_cast<int>(tame_z1(rd, v).cols());
    rep.add_check("tangent dimension", N.cols() == d && contains_span(tame_z1(rd, v), N),
                  "dim N = " + std::to_string(N.cols()) + " = h0 = " + std::to_string(d) + ", h1 = " +
                      std::to_string(h1) + ", N inside Z1");
    if (cond == LocalCondition::Nr) {
      std::vector<std::string> bad;
      for (Eigen::Index k = 0; k < N.cols(); ++k)
        if (!lemma55_criterion(rd, unstack_cocycle(N.col(k), 2, d))) bad.push_back("basis vector " + std::to_string(k));
      rep.add_check("exclusion criterion", bad.empty(), "a_{2L1} = -(cd)^-1 a_1 on every basis vector of N", bad);
    }
    if (decidable && m >= 2) {
      std::vector<std::string> bad;
      for (Eigen::Index k = 0; k < N.cols(); ++k)
        if (!class_in_condition(twist(r, unstack_cocycle(N.col(k), 2, d)), cond))
          bad.push_back("twist by basis vector " + std::to_string(k));
      rep.add_check("twist stability", bad.empty(),
                    "(Id + p^{m-1} f) r stays in the condition for every basis vector f of N", bad);
    }
  }
  return rep;
}

Report run_oracle(const Inputs& in) {
  in.check_verb("oracle");
  const Config& c = in.cfg();
  c.require_known(with_common({"which", "trials", "random_seeds", "exponents", "similitude_exponent"}));
  if (in.n() != 2 || in.q_degree() != 1) c.fail("n", "the oracles run at n = 2, q = p");
  const int64_t p = in.p();
  std::vector<std::string> which = {"saturation", "closure", "hom"};
  if (c.has("which")) which = c.get_list("which");
  const int trials = static_cast<int>(c.get_int("trials", 100));
  const int random_seeds = static_cast<int>(c.get_int("random_seeds", 200));
  const uint64_t seed = in.seed();

  Report rep("oracle");
  rep.set("p", std::to_string(p));
  rep.set("seed", std::to_string(seed));
  for (const std::string& w : which) {
    if (w == "saturation") {
      const SaturationResult r = saturation_oracle(p, trials, seed);
      rep.add_check("saturation", r.ok(),
                    std::to_string(r.pairs) + " commutator pairs (" + std::to_string(r.commutator_failures) +
                        " identity failures, " + std::to_string(r.exact_failures) + " three-factor failures); |U_1| = " +
                        std::to_string(r.u1_order) + ", example subgroup " + std::to_string(r.example_order) + ", " +
                        std::to_string(r.trial_orders.size()) + " random trials",
                    r.witnesses);
    } else if (w == "closure") {
      const ClosureOracleResult r = closure_oracle(p, random_seeds, seed);
      rep.add_check("closure", r.ok(),
                    std::to_string(r.eigen_seeds) + " eigenvector seeds and " + std::to_string(r.random_seeds) +
                        " random seeds with nonzero X_{-2L1} coordinate close to Ad0",
                    r.witnesses);
    } else if (w == "hom") {
      ExamplePlan shape;
      shape.p = p;
      shape.precision = 1;
      if (c.has("exponents")) {
        const auto e = c.get_int_list("exponents");
        if (e.size() != 4) c.fail("exponents", "expected four exponents");
        std::copy(e.begin(), e.end(), shape.exponents.begin());
      }
      shape.similitude_exponent = c.get_int("similitude_exponent", shape.similitude_exponent);
      const HomOracleResult r = hom_count_oracle(shape);
      rep.set("hom exponents", std::to_string(shape.exponents[0]) + ", " + std::to_string(shape.exponents[1]) + ", " +
                                   std::to_string(shape.exponents[2]) + ", " + std::to_string(shape.exponents[3]) +
                                   " (similitude " + chi_power(shape.similitude_exponent) + ")");
      rep.add_check("hom", r.ok(),
                    std::to_string(r.dual_modules) + " stable dual submodules with hom(P, Ad0*) = 1 checked, " +
                        std::to_string(r.adjoint_modules) + " adjoint submodules with hom(Q, Ad0*) = 0 checked",
                    r.witnesses);
    } else {
      c.fail("which", "unknown oracle '" + w + "' (saturation, closure, hom)");
    }
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual GSp_2n data: hypothesis checks, lifting ladders, local tame conditions and oracles"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--p", o.p, "residue characteristic");
  app.add_option("--n", o.n, "rank n of GSp_2n");
  app.add_option("--q-degree", o.q_degree, "residue field degree over F_p");
  app.add_option("--precision", o.precision, "target precision m");
  app.add_option("--config", o.config, "configuration file (gsp-config/1)");
  app.add_option("--report", o.report, "write the report here instead of stdout");
  app.add_option("--seed", o.seed, "seed for randomized oracles");

  using Runner = Report (*)(const Inputs&);
  const std::vector<std::tuple<std::string, std::string, Runner>> verbs = {
      {"check-hypotheses", "check conditions (1)-(5), (8) on residual group data", run_check_hypotheses},
      {"gsp4-example", "build the GSp_4 example and its lifting ladder", run_example},
      {"lift", "lift residual data of a finitely presented group step by step", run_lift},
      {"local-tame", "local conditions at a trivial prime", run_local_tame},
      {"oracle", "brute-force structural oracles", run_oracle},
  };
  Runner chosen = nullptr;
  for (const auto& [name, help, fn] : verbs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&chosen, f = fn] { chosen = f; });
  }
  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = o.config.empty() ? Config::parse("") : Config::load(o.config);
    const Report rep = chosen(Inputs(o, std::move(cfg)));
    const std::string text = rep.str();
    if (o.report.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.report);
      if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + o.report);
      out << text;
      std::cout << "result = " << (rep.all_pass() ? "PASS" : "FAIL") << ", report written to " << o.report << "\n";
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
