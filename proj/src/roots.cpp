#include "gsp/roots.hpp"

#include <algorithm>
#include <climits>
#include <regex>

namespace gsp {

Root Root::trivial(int n) { return Root{std::vector<int>(n, 0), true}; }

Root Root::operator-() const {
  Root r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

int Root::height() const {
  if (one) return 0;
  const int n = static_cast<int>(c.size());
  int h2 = 0, partial = 0;  // twice the height
  for (int i = 0; i < n; ++i) {
    partial += c[i];
    h2 += (i < n - 1) ? 2 * partial : partial;
  }
  return h2 / 2;
}

std::string Root::name() const {
  if (one) return "1";
  std::vector<int> nz;
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    if (c[i] != 0) nz.push_back(i);
  auto L = [](int i) { return "L" + std::to_string(i + 1); };
  if (nz.size() == 1) {
    const int i = nz[0];
    return (c[i] < 0 ? "-2" : "2") + L(i);
  }
  const int i = nz.at(0), j = nz.at(1);
  if (c[i] > 0) return L(i) + (c[j] > 0 ? "+" : "-") + L(j);
  return "-(" + L(i) + (c[j] < 0 ? "+" : "-") + L(j) + ")";
}

Root Root::parse(const std::string& s0, int n) {
  std::string s;
  for (char ch : s0)
    if (ch != ' ') s += ch;
  if (s == "1") return trivial(n);
  bool neg = false;
  if (s.size() > 3 && s.rfind("-(", 0) == 0 && s.back() == ')') {
    neg = true;
    s = s.substr(2, s.size() - 3);
  }
  std::smatch m;
  Root r{std::vector<int>(n, 0), false};
  auto idx = [&](const std::string& t) {
    const int i = std::stoi(t) - 1;
    if (i < 0 || i >= n) throw Error(ErrorKind::NotARoot, "index out of range in " + s0);
    return i;
  };
  static const std::regex longre(R"((-?)2L(\d+))");
  static const std::regex shortre(R"(L(\d+)([+-])L(\d+))");
  if (std::regex_match(s, m, longre)) {
    r.c[idx(m[2])] = m[1].str().empty() ? 2 : -2;
  } else if (std::regex_match(s, m, shortre)) {
    if (m[1] == m[3]) throw Error(ErrorKind::NotARoot, "repeated index in " + s0);
    r.c[idx(m[1])] += 1;
    r.c[idx(m[3])] += (m[2] == "+") ? 1 : -1;
  } else {
    throw Error(ErrorKind::NotARoot, "cannot parse root " + s0);
  }
  if (neg) r = -r;
  if (!is_root(r)) throw Error(ErrorKind::NotARoot, s0);
  return r;
}

Root long_root(int n, int i, int sign) {
  Root r{std::vector<int>(n, 0), false};
  r.c[i] = 2 * sign;
  return r;
}

Root short_root(int n, int i, int j, int si, int sj) {
  Root r{std::vector<int>(n, 0), false};
  r.c[i] = si;
  r.c[j] = sj;
  return r;
}

bool is_root(const Root& r) {
  if (r.one) return false;
  int nz = 0, sum_abs = 0;
  for (int x : r.c) {
    if (x != 0) ++nz;
    sum_abs += std::abs(x);
    if (std::abs(x) > 2) return false;
  }
  if (nz == 1) return sum_abs == 2;
  if (nz == 2) return sum_abs == 2;
  return false;
}

bool root_less(const Root& a, const Root& b) {
  const int ha = a.height(), hb = b.height();
  if (ha != hb) return ha < hb;
  if (a.one != b.one) return a.one;  // "1" sits first among height 0
  return a.c < b.c;
}

std::vector<Root> roots(int n) {
  std::vector<Root> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(long_root(n, i, 1));
    out.push_back(long_root(n, i, -1));
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) out.push_back(short_root(n, i, j, si, sj));
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

Mat root_vector(const Root& r, int n, const GaloisRing* R) {
  if (!is_root(r) || static_cast<int>(r.c.size()) != n)
    throw Error(ErrorKind::NotARoot, r.name());
  const int d = 2 * n;
  Mat X = zeros(R, d, d);
  std::vector<int> nz;
  for (int i = 0; i < n; ++i)
    if (r.c[i] != 0) nz.push_back(i);
  const bool negative = r.height() < 0;
  const Root pos = negative ? -r : r;
  if (nz.size() == 1) {
    const int i = nz[0];
    X(i, n + i) = R->one();
  } else {
    const int i = nz[0], j = nz[1];
    if (pos.c[i] == 1 && pos.c[j] == 1) {
      X(i, n + j) = R->one();
      X(j, n + i) = R->one();
    } else {
      // pos = L_i - L_j with i < j
      X(i, j) = R->one();
      X(n + j, n + i) = -R->one();
    }
  }
  if (negative) X.transposeInPlace();
  return X;
}

Mat bracket(const Mat& A, const Mat& B) { return A * B - B * A; }

Mat symplectic_form(int n, const GaloisRing* R) {
  Mat J = zeros(R, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    J(i, n + i) = R->one();
    J(n + i, i) = -R->one();
  }
  return J;
}

RootDatum::RootDatum(int n, const GaloisRing* R, GR zeta) : n_(n), R_(R), zeta_(zeta.in(R)) {
  if (n < 1) throw Error(ErrorKind::NotARoot, "rank must be >= 1");
  if (!zeta_.is_unit()) throw Error(ErrorKind::NotInvertible, "zeta must be nonzero");
  roots_ = gsp::roots(n);
  for (const Root& r : roots_) X_.push_back(root_vector(r, n, R));
  for (int i = 0; i < n; ++i) {
    Mat H = zeros(R, 2 * n, 2 * n);
    H(i, i) = R->one();
    H(n + i, n + i) = -R->one();
    H_.push_back(H);
  }
  basis_ = X_;
  basis_.insert(basis_.end(), H_.begin(), H_.end());
  for (const Mat& B : basis_) {
    std::pair<int, int> piv{-1, -1};
    for (int i = 0; i < 2 * n && piv.first < 0; ++i)
      for (int j = 0; j < 2 * n && piv.first < 0; ++j) {
        if (B(i, j).is_zero()) continue;
        bool alone = true;
        for (const Mat& C : basis_)
          if (&C != &B && !C(i, j).is_zero()) alone = false;
        if (alone) piv = {i, j};
      }
    pivots_.push_back(piv);
  }
}

std::vector<Root> RootDatum::positive_roots() const {
  std::vector<Root> out;
  for (const Root& r : roots_)
    if (r.height() > 0) out.push_back(r);
  return out;
}

std::vector<Root> RootDatum::simple_roots() const {
  std::vector<Root> out;
  for (int i = 0; i + 1 < n_; ++i) out.push_back(short_root(n_, i, i + 1, 1, -1));
  out.push_back(long_root(n_, n_ - 1, 1));
  return out;
}

const Root& RootDatum::highest_root() const { return roots_.back(); }

int RootDatum::index_of(const Root& r) const {
  for (int k = 0; k < num_roots(); ++k)
    if (roots_[k] == r) return k;
  throw Error(ErrorKind::NotARoot, r.name());
}

const Mat& RootDatum::X(const Root& r) const { return X_.at(index_of(r)); }

Mat RootDatum::coords(const Mat& Y0) const {
  Mat Y = normalize(Y0, R_);
  Mat v = zeros(R_, dim(), 1);
  for (int k = 0; k < dim(); ++k) {
    auto [i, j] = pivots_[k];
    v(k, 0) = Y(i, j) * basis_[k](i, j).inverse();
  }
  if (!equal(from_coords(v), Y)) throw Error(ErrorKind::NotSymplectic, "matrix is not in sp_2n");
  return v;
}

Mat RootDatum::from_coords(const Mat& v) const {
  Mat Y = zeros(R_, 2 * n_, 2 * n_);
  for (int k = 0; k < dim(); ++k)
    if (!v(k, 0).is_zero()) Y += scale(basis_[k], v(k, 0));
  return Y;
}

bool RootDatum::in_sp(const Mat& Y) const {
  Mat J = symplectic_form(n_, R_);
  return is_zero(Mat(Y.transpose() * J + J * Y));
}

Mat RootDatum::filtration(int k) const {
  std::vector<int> idx;
  for (int t = 0; t < num_roots(); ++t)
    if (roots_[t].height() >= k) idx.push_back(t);
  if (k <= 0)
    for (int i = 0; i < n_; ++i) idx.push_back(torus_index(i));
  Mat B = zeros(R_, dim(), static_cast<Eigen::Index>(idx.size()));
  for (size_t c = 0; c < idx.size(); ++c) B(idx[c], c) = R_->one();
  return B;
}

Mat RootDatum::filtration_perp(int k) const {
  Mat F = filtration(k);
  std::vector<bool> inside(dim(), false);
  for (Eigen::Index c = 0; c < F.cols(); ++c)
    for (int r = 0; r < dim(); ++r)
      if (!F(r, c).is_zero()) inside[r] = true;
  std::vector<int> idx;
  for (int r = 0; r < dim(); ++r)
    if (!inside[r]) idx.push_back(r);
  Mat B = zeros(R_, dim(), static_cast<Eigen::Index>(idx.size()));
  for (size_t c = 0; c < idx.size(); ++c) B(idx[c], c) = R_->one();
  return B;
}

int RootDatum::level_of(const Mat& v) const {
  int level = INT_MAX;
  for (int k = 0; k < dim(); ++k) {
    if (v(k, 0).is_zero()) continue;
    level = std::min(level, k < num_roots() ? roots_[k].height() : 0);
  }
  return level;
}

GR RootDatum::pair(const Mat& v, const Mat& f) const {
  GR s = R_->zero();
  for (int k = 0; k < dim(); ++k) s += v(k, 0) * f(k, 0);
  return s * zeta_;
}

Mat RootDatum::trace_dual(const Mat& X) const {
  Mat f = zeros(R_, dim(), 1);
  const GR zinv = zeta_.inverse();
  for (int k = 0; k < dim(); ++k) f(k, 0) = Mat(X * basis_[k]).trace() * zinv;
  return f;
}

std::vector<Root> RootDatum::bracket_support(const Root& alpha) const {
  std::vector<Root> out;
  const Mat& Xa = X(alpha);
  for (int k = 0; k < num_roots(); ++k)
    if (!is_zero(bracket(Xa, X_[k]))) out.push_back(roots_[k]);
  return out;
}

GR RootDatum::character(const Root& r, const Mat& g) const {
  if (r.one) return g(0, 0).ring()->one();
  auto [i, j] = pivots_.at(index_of(r));
  return g(i, i) * g(j, j).inverse();
}

}  // namespace gsp
