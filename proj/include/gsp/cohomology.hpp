#pragma once

// First cohomology of finitely presented groups with coefficients in a
// GMod, via Fox derivatives of the relations. Words are lists of syllables
// x_i^e so that relations like t u t^{-1} u^{-a} with large a stay short.

#include <string>
#include <utility>
#include <vector>

#include "gsp/gmodule.hpp"

namespace gsp {

struct Syllable {
  int gen;
  int64_t exp;
  bool operator==(const Syllable&) const = default;
};
using Word = std::vector<Syllable>;

// Merge adjacent syllables in the same generator and drop zero exponents.
Word reduce_word(Word w);
Word inverse_word(const Word& w);
std::string word_string(const Word& w, const std::vector<std::string>& labels);
// Inverse of word_string: "s t s^-1 t^-11". ConfigError on unknown labels.
Word parse_word(const std::string& text, const std::vector<std::string>& labels);

struct FPGroup {
  std::vector<std::string> labels;
  std::vector<Word> relations;

  int gens() const { return static_cast<int>(labels.size()); }
  int index(const std::string& label) const;

  static FPGroup free_group(int rank);
  static FPGroup trivial_group();
  static FPGroup cyclic(int64_t order);
  // <sigma, tau | sigma tau sigma^{-1} tau^{-v}>.
  static FPGroup tame(int64_t v);
  // Recognizes the tame presentation and returns v, or 0.
  int64_t tame_parameter() const;
};

// Image of a word; inverses are computed once per generator.
Mat evaluate(const Word& w, const std::vector<Mat>& images);
Mat evaluate(const Word& w, const std::vector<Mat>& images, const std::vector<Mat>& inverses);
// 1 + A + ... + A^{e-1}, by doubling.
Mat geometric_sum(const Mat& A, int64_t e);

// Rows: relations x module dimension. Columns: generators x module
// dimension. Block (r, j) is the Fox derivative d r / d x_j acting on M.
Mat fox_matrix(const FPGroup& G, const GMod& M);

struct Cocycle1 {
  std::vector<Mat> values;  // one column per generator
};

Mat stack_cocycle(const Cocycle1& f);
Cocycle1 unstack_cocycle(const Mat& v, int gens, int dim);

// Columns are stacked cocycles.
Mat z1_basis(const FPGroup& G, const GMod& M);
// Coboundaries g -> g.X - X for the standard basis X of M.
Mat b1_span(const FPGroup& G, const GMod& M);
int h1_dim(const FPGroup& G, const GMod& M);
bool is_cocycle(const FPGroup& G, const GMod& M, const Cocycle1& f);
bool is_coboundary(const FPGroup& G, const GMod& M, const Cocycle1& f);

// pair(f(sigma), g(tau)) - pair(f(tau), g(sigma)) for cocycles on the tame
// group with values in Ad0 and in its dual.
GR local_cup(const FPGroup& G, const RootDatum& rd, const Cocycle1& f, const Cocycle1& g);

struct LocalTerm {
  int tangent_dim;  // dim N_v
  int h0;           // dim H^0(G_v, Ad0)
};
int wiles_difference(int h0, int h0_dual, const std::vector<LocalTerm>& locals);

}  // namespace gsp
