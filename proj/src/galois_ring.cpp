#include "gsp/galois_ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

namespace gsp {

const char* error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::BadModulus: return "BadModulus";
    case ErrorKind::PrecisionIncrease: return "PrecisionIncrease";
    case ErrorKind::PrecisionCeiling: return "PrecisionCeiling";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorKind::NotUnipotent: return "NotUnipotent";
    case ErrorKind::NotInU1: return "NotInU1";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::HypothesesNotVerified: return "HypothesesNotVerified";
    case ErrorKind::NotTame: return "NotTame";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::MissingDesignation: return "MissingDesignation";
    case ErrorKind::PlanInvalid: return "PlanInvalid";
    case ErrorKind::NotASquare: return "NotASquare";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int64_t FieldSpec::q() const { return ipow(p, M); }

namespace {

int64_t mod(int64_t a, int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

int64_t mulmod(int64_t a, int64_t b, int64_t n) {
  return static_cast<int64_t>((static_cast<__int128>(a) * b) % n);
}

// Dense polynomials over F_p, low to high, trimmed.
using Poly = std::vector<int64_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int64_t inv_mod_p(int64_t a, int64_t p) {
  int64_t r = 1, b = mod(a, p);
  for (int64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& f, int64_t p) {
  trim(a);
  const size_t df = f.size() - 1;
  const int64_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() > df) {
    const int64_t c = mulmod(a.back(), lead_inv, p);
    const size_t shift = a.size() - 1 - df;
    for (size_t i = 0; i <= df; ++i) a[shift + i] = mod(a[shift + i] - c * f[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + a[i] * b[j], p);
  return poly_mod(r, f, p);
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^i) - x has a common factor with f iff f has a factor of degree dividing i.
bool irreducible(const Poly& f, int64_t p) {
  const int M = static_cast<int>(f.size()) - 1;
  Poly xp = {0, 1};
  for (int i = 1; i <= M / 2; ++i) {
    Poly acc = {1};
    Poly base = xp;
    for (int64_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    xp = acc;
    Poly g = xp;
    g.resize(std::max<size_t>(g.size(), 2), 0);
    g[1] = mod(g[1] - 1, p);
    trim(g);
    if (g.empty()) return false;
    if (poly_gcd(f, g, p).size() > 1) return false;
  }
  return true;
}

int g_ceiling = kDefaultPrecisionCeiling;

}  // namespace

FieldSpec make_field(int64_t p, int M, std::vector<int64_t> modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorKind::NotPrime, "p must be odd");
  if (M < 1 || M > kMaxDegree) throw Error(ErrorKind::BadModulus, "degree out of range");
  if (static_cast<int>(modulus.size()) != M + 1 || mod(modulus.back(), p) != 1)
    throw Error(ErrorKind::BadModulus, "modulus must be monic of degree M");
  for (auto& c : modulus) c = mod(c, p);
  if (!irreducible(modulus, p))
    throw Error(ErrorKind::ReducibleModulus, "modulus is reducible mod " + std::to_string(p));
  return FieldSpec{p, M, std::move(modulus)};
}

FieldSpec prime_field(int64_t p) { return make_field(p, 1, {0, 1}); }

FieldSpec default_field(int64_t p, int M) {
  if (M == 1) return prime_field(p);
  if (!is_prime(p) || p == 2) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  if (M < 1 || M > kMaxDegree) throw Error(ErrorKind::BadModulus, "degree out of range");
  // Lower coefficients as base-p digits, constant term first.
  Poly f(M + 1, 0);
  f[M] = 1;
  const int64_t count = ipow(p, M);
  for (int64_t idx = 0; idx < count; ++idx) {
    int64_t r = idx;
    for (int i = 0; i < M; ++i, r /= p) f[i] = r % p;
    if (f[0] != 0 && irreducible(f, p)) return FieldSpec{p, M, f};
  }
  throw Error(ErrorKind::BadModulus, "no irreducible polynomial found");
}

int precision_ceiling() { return g_ceiling; }
void set_precision_ceiling(int m) { g_ceiling = std::max(1, m); }

GaloisRing::GaloisRing(FieldSpec spec, int m) : spec_(std::move(spec)), m_(m) {
  pm_ = ipow(spec_.p, m_);
  mod_ = spec_.modulus;
}

const GaloisRing* GaloisRing::get(const FieldSpec& spec, int m) {
  if (m < 1) throw Error(ErrorKind::PrecisionCeiling, "precision must be >= 1");
  if (m > g_ceiling) throw Error(ErrorKind::PrecisionCeiling, "precision exceeds ceiling");
  long double bound = 1;
  for (int i = 0; i < m; ++i) bound *= static_cast<long double>(spec.p);
  if (bound > 4.0e18L) throw Error(ErrorKind::PrecisionCeiling, "p^m does not fit in 62 bits");
  static std::mutex mu;
  static std::map<std::tuple<int64_t, int, std::vector<int64_t>, int>, std::unique_ptr<GaloisRing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(spec.p, spec.M, spec.modulus, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<GaloisRing>(new GaloisRing(spec, m))).first;
  return it->second.get();
}

GR GaloisRing::zero() const { return GR(this, {}); }

GR GaloisRing::one() const { return from_int(1); }

GR GaloisRing::from_int(int64_t v) const {
  std::array<int64_t, kMaxDegree> c{};
  c[0] = mod(v, pm_);
  return GR(this, c);
}

GR GaloisRing::from_coeffs(const std::vector<int64_t>& v) const {
  if (static_cast<int>(v.size()) > spec_.M)
    throw Error(ErrorKind::SpecMismatch, "too many coefficients");
  std::array<int64_t, kMaxDegree> c{};
  for (size_t i = 0; i < v.size(); ++i) c[i] = mod(v[i], pm_);
  return GR(this, c);
}

GR GaloisRing::gen() const {
  if (spec_.M == 1) return from_int(mod(-spec_.modulus[0], spec_.p));
  std::array<int64_t, kMaxDegree> c{};
  c[1] = 1;
  return GR(this, c);
}

int64_t GaloisRing::size() const { return ipow(pm_, spec_.M); }

GR GaloisRing::element(int64_t index) const {
  std::array<int64_t, kMaxDegree> c{};
  for (int i = 0; i < spec_.M; ++i) {
    c[i] = index % pm_;
    index /= pm_;
  }
  return GR(this, c);
}

std::vector<GR> GaloisRing::elements() const {
  std::vector<GR> out;
  const int64_t n = size();
  out.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) out.push_back(element(i));
  return out;
}

GR GR::in(const GaloisRing* R) const {
  if (R_ == R) return *this;
  if (R_ == nullptr) return R->from_int(c_[0]);
  throw Error(ErrorKind::SpecMismatch, "elements of different rings");
}

bool GR::is_zero() const {
  for (int i = 0; i < kMaxDegree; ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool GR::is_one() const {
  if (c_[0] != 1) return false;
  for (int i = 1; i < kMaxDegree; ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool GR::is_unit() const {
  if (!R_) return c_[0] == 1 || c_[0] == -1;
  const int64_t p = R_->p();
  for (int i = 0; i < R_->degree(); ++i)
    if (c_[i] % p != 0) return true;
  return false;
}

int GR::valuation() const {
  if (!R_) throw Error(ErrorKind::SpecMismatch, "valuation of a bare constant");
  const int64_t p = R_->p();
  int v = R_->precision();
  for (int i = 0; i < R_->degree(); ++i) {
    int64_t c = c_[i];
    if (c == 0) continue;
    int k = 0;
    while (c % p == 0) {
      c /= p;
      ++k;
    }
    v = std::min(v, k);
  }
  return v;
}

GR GR::operator-() const {
  if (!R_) return GR(-static_cast<int>(c_[0]));
  GR r = *this;
  for (int i = 0; i < R_->degree(); ++i) r.c_[i] = r.c_[i] == 0 ? 0 : R_->pm() - r.c_[i];
  return r;
}

GR& GR::operator+=(const GR& o) {
  if (!R_ && !o.R_) {
    c_[0] += o.c_[0];
    return *this;
  }
  const GaloisRing* R = R_ ? R_ : o.R_;
  GR b = o.in(R);
  if (!R_) *this = in(R);
  const int64_t n = R->pm();
  for (int i = 0; i < R->degree(); ++i) {
    c_[i] += b.c_[i];
    if (c_[i] >= n) c_[i] -= n;
  }
  return *this;
}

GR& GR::operator-=(const GR& o) { return *this += -o; }

GR& GR::operator*=(const GR& o) {
  if (!R_ && !o.R_) {
    c_[0] *= o.c_[0];
    return *this;
  }
  const GaloisRing* R = R_ ? R_ : o.R_;
  GR b = o.in(R);
  if (!R_) *this = in(R);
  const int M = R->degree();
  const int64_t n = R->pm();
  if (M == 1) {
    c_[0] = mulmod(c_[0], b.c_[0], n);
    return *this;
  }
  std::array<__int128, 2 * kMaxDegree> t{};
  for (int i = 0; i < M; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < M; ++j) t[i + j] += static_cast<__int128>(c_[i]) * b.c_[j];
    for (int j = 0; j < 2 * M; ++j) t[j] %= n;
  }
  const auto& f = R->modulus_lift();
  for (int k = 2 * M - 2; k >= M; --k) {
    const __int128 ck = t[k] % n;
    if (ck == 0) continue;
    for (int i = 0; i < M; ++i) t[k - M + i] = (t[k - M + i] - ck * f[i]) % n;
    t[k] = 0;
  }
  for (int i = 0; i < M; ++i) c_[i] = mod(static_cast<int64_t>(t[i] % n), n);
  return *this;
}

GR& GR::operator/=(const GR& o) { return *this *= o.in(R_ ? R_ : o.R_).inverse(); }

bool operator==(const GR& a, const GR& b) {
  if (!a.R_ && !b.R_) return a.c_[0] == b.c_[0];
  const GaloisRing* R = a.R_ ? a.R_ : b.R_;
  GR x = a.in(R), y = b.in(R);
  return x.c_ == y.c_;
}

GR GR::pow(int64_t e) const {
  if (!R_) throw Error(ErrorKind::SpecMismatch, "pow of a bare constant");
  if (e < 0) return inverse().pow(-e);
  GR r = R_->one(), b = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

GR GR::inverse() const {
  if (!R_) throw Error(ErrorKind::SpecMismatch, "inverse of a bare constant");
  if (!is_unit()) throw Error(ErrorKind::NotInvertible, "element " + str() + " is not a unit");
  const GaloisRing* F = R_->residue_field();
  GR a = reduce(1);
  GR y0 = a.pow(F->q() - 2);  // inverse in F_q
  GR y = y0.lift(R_);
  GR two = R_->from_int(2);
  for (int k = 1; k < R_->precision(); k *= 2) y = y * (two - *this * y);
  return y;
}

GR GR::reduce(int m) const {
  if (!R_) return *this;
  if (m > R_->precision())
    throw Error(ErrorKind::PrecisionIncrease, "cannot reduce to a higher precision");
  if (m == R_->precision()) return *this;
  const GaloisRing* S = R_->at_precision(m);
  std::array<int64_t, kMaxDegree> c{};
  for (int i = 0; i < R_->degree(); ++i) c[i] = c_[i] % S->pm();
  return GR(S, c);
}

GR GR::lift(const GaloisRing* R) const {
  if (!R_) return R->from_int(c_[0]);
  if (!(R_->spec() == R->spec())) throw Error(ErrorKind::SpecMismatch, "lift across specs");
  if (R->precision() < R_->precision()) return reduce(R->precision());
  return GR(R, c_);
}

int64_t GR::to_int() const {
  if (R_ && R_->degree() != 1) throw Error(ErrorKind::SpecMismatch, "to_int on an extension");
  return c_[0];
}

int64_t GR::to_signed() const {
  const int64_t v = to_int();
  if (!R_) return v;
  return v > R_->pm() / 2 ? v - R_->pm() : v;
}

std::string GR::str() const {
  if (!R_ || R_->degree() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < R_->degree(); ++i) os << (i ? "," : "") << c_[i];
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GR& x) { return os << x.str(); }

GR reduce_precision(const GR& x, int m) { return x.reduce(m); }

GR teichmuller(const GR& a, int m) {
  if (!a.ring()) throw Error(ErrorKind::SpecMismatch, "teichmuller of a bare constant");
  const GaloisRing* R = a.ring()->at_precision(m);
  GR x = a.residue().lift(R);
  const int64_t q = R->q();
  for (int it = 0; it <= m * R->degree() + 1; ++it) {
    GR y = x.pow(q);
    if (y == x) return x;
    x = y;
  }
  return x;
}

GR frobenius(const GR& a, int times) {
  GR x = a;
  for (int i = 0; i < times; ++i) x = x.pow(a.ring()->p());
  return x;
}

int64_t multiplicative_order(const GR& a) {
  GR x = a.residue();
  if (x.is_zero()) throw Error(ErrorKind::NotInvertible, "order of zero");
  GR y = x;
  int64_t k = 1;
  while (!y.is_one()) {
    y *= x;
    ++k;
  }
  return k;
}

int64_t discrete_log(const GR& a, const GR& g) {
  GR x = a.residue(), h = g.residue();
  GR y = h.ring()->one();
  const int64_t ord = multiplicative_order(h);
  for (int64_t k = 0; k < ord; ++k) {
    if (y == x) return k;
    y *= h;
  }
  return -1;
}

GR primitive_element(const GaloisRing* F) {
  const GaloisRing* K = F->residue_field();
  const int64_t n = K->q() - 1;
  for (int64_t i = 1; i < K->size(); ++i) {
    GR x = K->element(i);
    if (x.is_zero()) continue;
    if (multiplicative_order(x) == n) return x;
  }
  throw Error(ErrorKind::NotInvertible, "no primitive element found");
}

}  // namespace gsp
