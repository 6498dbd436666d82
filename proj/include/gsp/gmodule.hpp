#pragma once

// F_q-modules for a finitely generated group given by generator matrices:
// the adjoint module Ad0, its chi-twisted dual, subquotients, eigenspaces
// for the diagonal (torus) generators, and equivariant Hom dimensions.
//
// Vectors are columns of coordinates. Subspaces are matrices whose columns
// form a basis; an empty subspace has zero columns.

#include <optional>
#include <string>
#include <vector>

#include "gsp/roots.hpp"

namespace gsp {

struct GroupData {
  int n = 2;
  const GaloisRing* F = nullptr;  // residue field F_q
  std::vector<std::string> labels;
  std::vector<Mat> images;  // 2n x 2n over F
  std::vector<bool> torus;  // generator lies in the torus preimage
  std::vector<GR> chi;      // mod-p cyclotomic character per generator
  std::vector<GR> kappa;    // similitude character per generator
  std::optional<Mat> complex_conjugation;
  std::vector<int> decomposition_at_p;  // generator indices
  size_t cap = 1000000;

  int size() const { return static_cast<int>(images.size()); }
  int index(const std::string& label) const;
  // Torus generators diagonal, list lengths consistent, images symplectic.
  void validate() const;
  std::vector<Mat> torus_images() const;
};

enum class Side { Adjoint, Dual, Other };

struct GMod {
  const GaloisRing* F = nullptr;
  std::vector<Mat> action;  // one d x d matrix per generator
  std::vector<bool> torus;
  Side side = Side::Other;

  int dim() const { return action.empty() ? 0 : static_cast<int>(action[0].rows()); }
  int gens() const { return static_cast<int>(action.size()); }
};

// Matrix of Y -> g Y g^{-1} on sp_2n coordinates.
Mat adjoint_action(const RootDatum& rd, const Mat& g);
// Matrix of f -> chi * f(g^{-1} .) on dual coordinates.
Mat dual_action(const Mat& adjoint_matrix, const GR& chi);

GMod adjoint_module(const GroupData& G, const RootDatum& rd);
GMod dual_module(const GMod& M, const std::vector<GR>& chi);
// Action multiplied by a character value per generator.
GMod twist(const GMod& M, const std::vector<GR>& values);
// Action on the stable subspace S, in the basis given by its columns.
GMod submodule(const GMod& M, const Mat& S);
// Action on M / S, on the standard-basis complement of S.
GMod quotient(const GMod& M, const Mat& S);
GMod zero_module(const GaloisRing* F, int gens);

Mat empty_subspace(const GaloisRing* F, int dim);
bool is_stable(const GMod& M, const Mat& S);
Mat stable_closure(const GMod& M, const Mat& seeds);

// Simultaneous fixed space of the given d x d matrices.
Mat fixed_subspace(const GaloisRing* F, int dim, const std::vector<Mat>& elements);
// Fixed space of the listed generators (all of them when gens is empty).
Mat fixed_subspace(const GMod& M, const std::vector<int>& gens = {});

struct Eigenspace {
  std::vector<GR> values;  // eigenvalue per torus generator, in generator order
  Mat basis;
};

// Simultaneous splitting under the torus generators, ordered by the first
// pivot coordinate. Throws NotSemisimple when the splitting is incomplete.
std::vector<Eigenspace> eigenspace_decomposition(const GMod& M);

// F_p-dimension of G-equivariant F_p-linear maps M1 -> M2.
int hom_invariants(const GMod& M1, const GMod& M2);

}  // namespace gsp
