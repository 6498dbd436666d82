#pragma once

// Mod p^m lifts of a representation of a finitely presented group into
// GSp_2n, one precision at a time: obstruction solving, twisting by
// cocycles, strict equivalence, and the hypothesis checker for residual
// group data.

#include <optional>
#include <string>
#include <vector>

#include "gsp/cohomology.hpp"

namespace gsp {

struct LiftLadder {
  FPGroup group;
  std::vector<Mat> images;  // at precision m
  // Similitude targets kappa(g), known to at least the precision being
  // lifted to.
  std::vector<GR> kappa;

  int n() const { return static_cast<int>(images.at(0).rows() / 2); }
  const GaloisRing* ring() const { return ring_of(images.at(0)); }
  int precision() const { return ring()->precision(); }
};

// Relations evaluate to Id and similitudes match kappa at precision m.
void validate(const LiftLadder& L);
bool is_valid(const LiftLadder& L);
LiftLadder reduce(const LiftLadder& L, int m);
// The ladder's residual action on Ad0.
GMod residual_adjoint(const LiftLadder& L);

// Relation residues c_r in Ad0 coordinates over F_q, one column each.
struct ObstructionWitness {
  int precision = 0;  // the precision that could not be reached
  std::vector<Mat> residues;
  std::string str(const FPGroup& G) const;
};

struct LiftOutcome {
  std::optional<LiftLadder> ladder;
  std::optional<ObstructionWitness> obstruction;
  bool lifted() const { return ladder.has_value(); }
};

// A lift of X to R with similitude exactly kappa. Diagonal matrices with
// Teichmuller entries go to Teichmuller lifts; everything else is lifted
// coefficient-wise and then corrected by Id + p^m Y.
Mat set_lift(const Mat& X, const GR& kappa, const GaloisRing* R);

// One step m -> m+1. When `directions` is given (columns in Ad0
// coordinates over F_q), the adjustments Id + p^m x_g are restricted to
// its span.
LiftOutcome lift_step(const LiftLadder& L, const std::optional<Mat>& directions = std::nullopt);

// g -> (Id + p^{m-1} f(g)) image(g); f must be a cocycle for the residual
// action (NotACocycle otherwise).
LiftLadder twist(const LiftLadder& L, const Cocycle1& f);

// A congruence-kernel K with K L1 K^{-1} = L2, searched level by level.
// The search branches over H^0 choices and throws Unsupported after
// `cap` nodes without a decision.
std::optional<Mat> strict_conjugator(const LiftLadder& L1, const LiftLadder& L2, size_t cap = 4096);
bool strict_equivalent(const LiftLadder& L1, const LiftLadder& L2, size_t cap = 4096);

enum class Verdict { Pass, Fail, Assumed };
const char* verdict_name(Verdict v);

struct ConditionResult {
  std::string id;  // "1" .. "8"
  std::string title;
  Verdict verdict = Verdict::Fail;
  std::string certificate;
  std::vector<std::string> witnesses;
};

struct HypothesisReport {
  int p = 0;
  std::vector<ConditionResult> conditions;
  const ConditionResult& get(const std::string& id) const;
  // Every checked condition passes; assumptions do not count.
  bool all_pass() const;
};

// Conditions (1)-(5) and (8) on the residual data; (6) and (7) are
// recorded as assumptions. Needs the complex conjugation image and the
// decomposition group at p (MissingDesignation otherwise).
HypothesisReport check_hypotheses(const GroupData& G);

// Characters sigma_lambda for lambda in Phi and the trivial character, as
// value tuples over the generators.
struct CharacterTable {
  std::vector<Root> labels;  // trivial root first
  std::vector<std::vector<GR>> values;
};
CharacterTable character_table(const GroupData& G);

}  // namespace gsp
