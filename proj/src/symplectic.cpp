#include "gsp/symplectic.hpp"

#include <deque>
#include <unordered_map>

namespace gsp {

namespace {

int rank_of(const Mat& X) {
  if (X.rows() != X.cols() || X.rows() % 2 != 0)
    throw Error(ErrorKind::NotSymplectic, "matrix must be 2n x 2n");
  return static_cast<int>(X.rows() / 2);
}

void require_large_prime(const GaloisRing* R, int n) {
  if (R->p() <= 2 * n)
    throw Error(ErrorKind::PrimeTooSmall, "need p > 2n, got p=" + std::to_string(R->p()));
}

bool is_nilpotent(const Mat& N) {
  Mat P = N;
  for (Eigen::Index k = 1; k < N.rows(); ++k) P = P * N;
  return is_zero(P);
}

}  // namespace

GR similitude(const Mat& X0) {
  const int n = rank_of(X0);
  const GaloisRing* R = ring_of(X0);
  Mat X = normalize(X0, R);
  Mat J = symplectic_form(n, R);
  Mat S = X.transpose() * J * X;
  GR nu = S(0, n);
  if (!nu.is_unit() || !equal(S, scale(J, nu)))
    throw Error(ErrorKind::NotSymplectic, "X^T J X is not a unit multiple of J");
  return nu;
}

bool is_symplectic(const Mat& X) {
  try {
    similitude(X);
    return true;
  } catch (const Error&) {
    return false;
  }
}

SympMatrix::SympMatrix(Mat X) : X_(std::move(X)), nu_(similitude(X_)) {}

SympMatrix SympMatrix::inverse() const { return SympMatrix(gsp::inverse(X_), nu_.inverse()); }

SympMatrix SympMatrix::reduce(int m) const { return SympMatrix(gsp::reduce(X_, m), nu_.reduce(m)); }

Mat borel_element(const Mat& C, const Mat& D, const GR& xi) {
  const Eigen::Index n = C.rows();
  const GaloisRing* R = ring_of(C);
  Mat X = zeros(R, 2 * n, 2 * n);
  X.topLeftCorner(n, n) = C;
  X.topRightCorner(n, n) = C * D;
  X.bottomRightCorner(n, n) = scale(Mat(inverse(C).transpose()), xi);
  return X;
}

bool in_borel(const Mat& X) {
  const int n = rank_of(X);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      const bool lower_left = i >= n && j < n;
      const bool below_C = i < n && j < n && i > j;
      const bool above_lower_right = i >= n && j >= n && j > i;
      if ((lower_left || below_C || above_lower_right) && !X(i, j).is_zero()) return false;
    }
  return is_symplectic(X);
}

Mat torus_part(const Mat& X) {
  Mat T = zeros(ring_of(X), X.rows(), X.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) T(i, i) = X(i, i);
  return T;
}

Mat exp_filtered(const Mat& Y0, int k) {
  const int n = rank_of(Y0);
  const GaloisRing* R = ring_of(Y0);
  if (!R) return Y0;  // bare zero matrix
  require_large_prime(R, n);
  Mat Y = normalize(Y0, R);
  if (k >= 1) {
    RootDatum rd(n, R);
    Mat v = rd.coords(Y);
    if (!is_zero(v) && rd.level_of(v) < k)
      throw Error(ErrorKind::NotUnipotent, "argument is not in the requested filtration piece");
  }
  Mat result = identity(R, 2 * n);
  Mat term = identity(R, 2 * n);
  for (int j = 1; j < 2 * n; ++j) {
    term = scale(Mat(term * Y), R->from_int(j).inverse());
    result += term;
  }
  if (!is_zero(Mat(term * Y))) throw Error(ErrorKind::NotUnipotent, "argument is not nilpotent");
  return result;
}

Mat log_unipotent(const Mat& U0) {
  const int n = rank_of(U0);
  const GaloisRing* R = ring_of(U0);
  require_large_prime(R, n);
  Mat U = normalize(U0, R);
  Mat N = U - identity(R, 2 * n);
  if (!is_nilpotent(N)) throw Error(ErrorKind::NotUnipotent, "U - Id is not nilpotent");
  Mat result = zeros(R, 2 * n, 2 * n);
  Mat power = identity(R, 2 * n);
  for (int j = 1; j < 2 * n; ++j) {
    power = power * N;
    GR c = R->from_int(j).inverse();
    if (j % 2 == 0) c = -c;
    result += scale(power, c);
  }
  return result;
}

int filtration_level(const Mat& U) {
  const int n = rank_of(U);
  const GaloisRing* R = ring_of(U);
  Mat L;
  try {
    L = log_unipotent(U);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotUnipotent) throw Error(ErrorKind::NotInU1, "not unipotent");
    throw;
  }
  RootDatum rd(n, R);
  Mat v;
  try {
    v = rd.coords(L);
  } catch (const Error&) {
    throw Error(ErrorKind::NotInU1, "logarithm is not in sp_2n");
  }
  if (is_zero(v)) return kLevelInfinity;
  const int level = rd.level_of(v);
  if (level < 1) throw Error(ErrorKind::NotInU1, "logarithm is not in n");
  return level;
}

bool in_U(const Mat& U, int k) {
  try {
    return filtration_level(U) >= k;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotInU1) return false;
    throw;
  }
}

Mat commutator(const Mat& x, const Mat& y) { return x * y * inverse(x) * inverse(y); }

Mat cayley(const Mat& Z0) {
  const GaloisRing* R = ring_of(Z0);
  Mat Z = normalize(Z0, R);
  Mat half = scale(Z, R->from_int(2).inverse());
  Mat I = identity(R, Z.rows());
  return inverse(Mat(I - half)) * (I + half);
}

size_t MatHash::operator()(const std::vector<int64_t>& v) const noexcept {
  size_t h = 1469598103934665603ULL;
  for (int64_t x : v) {
    h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupEnumeration enumerate_group(const std::vector<Mat>& gens, size_t cap) {
  GroupEnumeration out;
  if (gens.empty()) return out;
  const GaloisRing* R = ring_of(gens[0]);
  std::vector<Mat> g;
  for (const Mat& x : gens) g.push_back(normalize(x, R));
  std::unordered_set<std::vector<int64_t>, MatHash> seen;
  std::deque<Mat> queue;
  Mat I = identity(R, g[0].rows());
  seen.insert(to_int_vector(I));
  queue.push_back(I);
  out.elements.push_back(I);
  // A finite group is closed under right multiplication by generators alone.
  while (!queue.empty()) {
    Mat x = std::move(queue.front());
    queue.pop_front();
    for (const Mat& s : g) {
      Mat y = x * s;
      auto key = to_int_vector(y);
      if (seen.insert(std::move(key)).second) {
        if (out.elements.size() >= cap) {
          out.complete = false;
          return out;
        }
        out.elements.push_back(y);
        queue.push_back(std::move(y));
      }
    }
  }
  return out;
}

std::vector<Mat> enumerate_U1(int n, const GaloisRing* F, size_t cap) {
  RootDatum rd(n, F);
  const auto pos = rd.positive_roots();
  const int64_t q = F->size();
  size_t total = 1;
  for (size_t i = 0; i < pos.size(); ++i) {
    total *= static_cast<size_t>(q);
    if (total > cap) throw Error(ErrorKind::Unsupported, "U_1 exceeds enumeration cap");
  }
  // exp(c X_lambda) = Id + c X_lambda for every root of C_n at n <= 2; the
  // general case goes through the series.
  std::vector<std::vector<Mat>> factors;
  for (const Root& r : pos) {
    std::vector<Mat> f;
    for (int64_t c = 0; c < q; ++c) f.push_back(exp_filtered(scale(rd.X(r), F->element(c)), 1));
    factors.push_back(std::move(f));
  }
  std::vector<Mat> out;
  out.reserve(total);
  std::vector<size_t> idx(pos.size(), 0);
  for (size_t t = 0; t < total; ++t) {
    Mat x = factors[0][idx[0]];
    for (size_t k = 1; k < pos.size(); ++k) x = x * factors[k][idx[k]];
    out.push_back(std::move(x));
    for (size_t k = 0; k < pos.size(); ++k) {
      if (++idx[k] < static_cast<size_t>(q)) break;
      idx[k] = 0;
    }
  }
  return out;
}

}  // namespace gsp
