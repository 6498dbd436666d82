#include "gsp/cohomology.hpp"

#include <algorithm>
#include <sstream>

namespace gsp {

Word reduce_word(Word w) {
  Word out;
  for (const Syllable& s : w) {
    if (s.exp == 0) continue;
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

std::string word_string(const Word& w, const std::vector<std::string>& labels) {
  std::string s;
  for (const Syllable& x : w) {
    if (!s.empty()) s += " ";
    s += labels.at(x.gen);
    if (x.exp != 1) s += "^" + std::to_string(x.exp);
  }
  return s.empty() ? "1" : s;
}

Word parse_word(const std::string& text, const std::vector<std::string>& labels) {
  std::istringstream is(text);
  std::string tok;
  Word w;
  while (is >> tok) {
    if (tok == "1") continue;
    const auto caret = tok.find('^');
    const std::string name = tok.substr(0, caret);
    int64_t e = 1;
    if (caret != std::string::npos) {
      const std::string es = tok.substr(caret + 1);
      size_t used = 0;
      try {
        e = std::stoll(es, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != es.size()) throw Error(ErrorKind::ConfigError, "bad exponent in '" + tok + "'");
    }
    const auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw Error(ErrorKind::ConfigError, "unknown generator '" + name + "'");
    w.push_back({static_cast<int>(it - labels.begin()), e});
  }
  return reduce_word(std::move(w));
}

int FPGroup::index(const std::string& label) const {
  for (int i = 0; i < gens(); ++i)
    if (labels[i] == label) return i;
  throw Error(ErrorKind::MissingDesignation, "no generator labelled " + label);
}

FPGroup FPGroup::free_group(int rank) {
  FPGroup G;
  for (int i = 0; i < rank; ++i) G.labels.push_back("x" + std::to_string(i + 1));
  return G;
}

FPGroup FPGroup::trivial_group() { return FPGroup{}; }

FPGroup FPGroup::cyclic(int64_t order) {
  FPGroup G;
  G.labels = {"t"};
  G.relations = {{{0, order}}};
  return G;
}

FPGroup FPGroup::tame(int64_t v) {
  FPGroup G;
  G.labels = {"sigma", "tau"};
  G.relations = {{{0, 1}, {1, 1}, {0, -1}, {1, -v}}};
  return G;
}

int64_t FPGroup::tame_parameter() const {
  if (gens() != 2 || relations.size() != 1) return 0;
  const Word& r = relations[0];
  if (r.size() != 4) return 0;
  if (r[0] != Syllable{0, 1} || r[1] != Syllable{1, 1} || r[2] != Syllable{0, -1} || r[3].gen != 1) return 0;
  return -r[3].exp;
}

Mat evaluate(const Word& w, const std::vector<Mat>& images, const std::vector<Mat>& inverses) {
  const GaloisRing* R = ring_of(images.at(0));
  Mat x = identity(R, images[0].rows());
  for (const Syllable& s : w) {
    x = x * (s.exp > 0 ? power(images.at(s.gen), s.exp) : power(inverses.at(s.gen), -s.exp));
  }
  return x;
}

Mat evaluate(const Word& w, const std::vector<Mat>& images) {
  std::vector<Mat> inv;
  for (const Mat& A : images) inv.push_back(inverse(A));
  return evaluate(w, images, inv);
}

Mat geometric_sum(const Mat& A, int64_t e) {
  const GaloisRing* R = ring_of(A);
  const Eigen::Index d = A.rows();
  if (e <= 0) return zeros(R, d, d);
  if (e == 1) return identity(R, d);
  // S(2k) = S(k)(1 + A^k), S(2k+1) = 1 + A S(2k).
  Mat half = geometric_sum(A, e / 2);
  Mat Ak = power(A, e / 2);
  Mat even = half * (identity(R, d) + Ak);
  if (e % 2 == 0) return even;
  return identity(R, d) + A * even;
}

Mat fox_matrix(const FPGroup& G, const GMod& M) {
  const int d = M.dim(), k = G.gens();
  const Eigen::Index rows = static_cast<Eigen::Index>(G.relations.size()) * d;
  Mat F = zeros(M.F, rows, static_cast<Eigen::Index>(k) * d);
  if (d == 0) return F;
  std::vector<Mat> inv;
  for (const Mat& A : M.action) inv.push_back(inverse(A));
  for (size_t r = 0; r < G.relations.size(); ++r) {
    Mat prefix = identity(M.F, d);
    for (const Syllable& s : G.relations[r]) {
      const Mat& A = M.action.at(s.gen);
      Mat block;
      Mat step;
      if (s.exp > 0) {
        block = geometric_sum(A, s.exp);
        step = power(A, s.exp);
      } else {
        // d(x^{-e})/dx = -(x^{-1} + ... + x^{-e}) = -x^{-e} (1 + ... + x^{e-1})
        step = power(inv[s.gen], -s.exp);
        block = -(step * geometric_sum(A, -s.exp));
      }
      F.block(r * d, static_cast<Eigen::Index>(s.gen) * d, d, d) += prefix * block;
      prefix = prefix * step;
    }
  }
  return F;
}

Mat stack_cocycle(const Cocycle1& f) {
  Mat v(0, 1);
  for (const Mat& x : f.values) v = vstack(v, x);
  return v;
}

Cocycle1 unstack_cocycle(const Mat& v, int gens, int dim) {
  Cocycle1 f;
  for (int g = 0; g < gens; ++g) f.values.push_back(v.block(static_cast<Eigen::Index>(g) * dim, 0, dim, 1));
  return f;
}

Mat z1_basis(const FPGroup& G, const GMod& M) {
  const int n = G.gens() * M.dim();
  if (n == 0) return Mat(0, 0);
  if (G.relations.empty()) return identity(M.F, n);
  return nullspace(fox_matrix(G, M));
}

Mat b1_span(const FPGroup& G, const GMod& M) {
  const int d = M.dim(), k = G.gens();
  if (d == 0 || k == 0) return Mat(static_cast<Eigen::Index>(k) * d, 0);
  Mat B = zeros(M.F, static_cast<Eigen::Index>(k) * d, d);
  for (int g = 0; g < k; ++g) B.block(static_cast<Eigen::Index>(g) * d, 0, d, d) = M.action[g] - identity(M.F, d);
  return B;
}

int h1_dim(const FPGroup& G, const GMod& M) {
  const int z = static_cast<int>(z1_basis(G, M).cols());
  if (G.gens() == 0 || M.dim() == 0) return z;
  return z - rank(b1_span(G, M));
}

bool is_cocycle(const FPGroup& G, const GMod& M, const Cocycle1& f) {
  if (G.relations.empty() || M.dim() == 0) return true;
  return is_zero(Mat(fox_matrix(G, M) * stack_cocycle(f)));
}

bool is_coboundary(const FPGroup& G, const GMod& M, const Cocycle1& f) {
  return in_span(b1_span(G, M), stack_cocycle(f));
}

GR local_cup(const FPGroup& G, const RootDatum& rd, const Cocycle1& f, const Cocycle1& g) {
  if (G.tame_parameter() == 0) throw Error(ErrorKind::NotTame, "group is not the tame presentation");
  const int64_t v = G.tame_parameter();
  if ((v - 1) % rd.ring()->p() != 0) throw Error(ErrorKind::NotTame, "v is not 1 mod p");
  return rd.pair(f.values.at(0), g.values.at(1)) - rd.pair(f.values.at(1), g.values.at(0));
}

int wiles_difference(int h0, int h0_dual, const std::vector<LocalTerm>& locals) {
  int total = h0 - h0_dual;
  for (const LocalTerm& t : locals) total += t.tangent_dim - t.h0;
  return total;
}

}  // namespace gsp
