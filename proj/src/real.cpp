#include "rmtgap/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>

namespace rmtgap {

namespace {
thread_local mpfr_prec_t g_working_bits = 128;
}  // namespace

mpfr_prec_t working_bits() noexcept { return g_working_bits; }

PrecisionGuard::PrecisionGuard(mpfr_prec_t bits) noexcept : saved_(g_working_bits) {
  g_working_bits = bits;
}

PrecisionGuard::~PrecisionGuard() { g_working_bits = saved_; }

Real::Real() {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double value) {
  mpfr_init2(v_, g_working_bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(std::string_view decimal) {
  mpfr_init2(v_, g_working_bits);
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw std::invalid_argument("not a decimal number: " + s);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

// Moved-from values keep a null limb pointer; they may only be destroyed or
// assigned to.
void Real::adopt(Real& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

Real::Real(Real&& other) noexcept { adopt(other); }

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (v_->_mpfr_d == nullptr) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
  adopt(other);
  return *this;
}

Real::~Real() {
  if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

Real& Real::operator+=(const Real& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Rg", std::max(digits, 1), v_) < 0) {
    throw std::runtime_error("mpfr_asprintf failed");
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

#define RMTGAP_BINOP(op, fn)                         \
  Real operator op(const Real& a, const Real& b) {   \
    Real r;                                          \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);        \
    return r;                                        \
  }
RMTGAP_BINOP(+, mpfr_add)
RMTGAP_BINOP(-, mpfr_sub)
RMTGAP_BINOP(*, mpfr_mul)
RMTGAP_BINOP(/, mpfr_div)
#undef RMTGAP_BINOP

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.get(), b.get());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 20);
}

#define RMTGAP_UNARY(name, fn)        \
  Real name(const Real& x) {          \
    Real r;                           \
    fn(r.get(), x.get(), MPFR_RNDN);  \
    return r;                         \
  }
RMTGAP_UNARY(abs, mpfr_abs)
RMTGAP_UNARY(sqrt, mpfr_sqrt)
RMTGAP_UNARY(exp, mpfr_exp)
RMTGAP_UNARY(log, mpfr_log)
RMTGAP_UNARY(sin, mpfr_sin)
RMTGAP_UNARY(cos, mpfr_cos)
RMTGAP_UNARY(sinh, mpfr_sinh)
RMTGAP_UNARY(cosh, mpfr_cosh)
RMTGAP_UNARY(asinh, mpfr_asinh)
RMTGAP_UNARY(log1p, mpfr_log1p)
RMTGAP_UNARY(expm1, mpfr_expm1)
RMTGAP_UNARY(tgamma, mpfr_gamma)
#undef RMTGAP_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}

Real lgamma(const Real& x) {
  Real r;
  int sign = 0;
  mpfr_lgamma(r.get(), &sign, x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a < b ? a : b; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Real log2_const() {
  Real r;
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

Real machine_epsilon() { return ldexp(Real(1), 1 - static_cast<long>(working_bits())); }

Real pow10_neg(int digits) {
  Real r(10);
  mpfr_pow_si(r.get(), r.get(), -digits, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator/(const Complex& a, const Complex& b) {
  // Smith's algorithm.
  if (abs(b.re) >= abs(b.im)) {
    Real r = b.im / b.re;
    Real d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  Real r = b.re / b.im;
  Real d = b.re * r + b.im;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real abs(const Complex& z) {
  Real r;
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real arg(const Complex& z) {
  Real r;
  mpfr_atan2(r.get(), z.im.get(), z.re.get(), MPFR_RNDN);
  return r;
}

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

Complex sqrt(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sign() >= 0) return {sqrt(z.re), Real(0)};
    return {Real(0), sqrt(-z.re)};
  }
  Real m = abs(z);
  Real t = sqrt(ldexp(m + abs(z.re), -1));
  if (z.re.sign() >= 0) return {t, z.im / ldexp(t, 1)};
  Real im = z.im.sign() >= 0 ? t : -t;
  return {abs(z.im) / ldexp(t, 1), im};
}

Complex root_of_unity(long num, long den) {
  // Reduce to an angle in [0, 2 pi) and use exact values on the axes.
  long n = ((num % den) + den) % den;
  if (n == 0) return {Real(1), Real(0)};
  if (2 * n == den) return {Real(-1), Real(0)};
  if (4 * n == den) return {Real(0), Real(1)};
  if (4 * n == 3 * den) return {Real(0), Real(-1)};
  Real theta = ldexp(pi(), 1) * Real(n) / Real(den);
  Real c;
  Real s;
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {c, s};
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << '(' << z.re << ", " << z.im << ')';
}

// ---------------------------------------------------------------------------

PrecisionContext PrecisionContext::for_size(int n, int target_digits) {
  PrecisionContext ctx;
  ctx.bits = std::max(128, 10 * n + 64);
  ctx.target_digits = target_digits;
  return ctx;
}

void PrecisionContext::validate() const {
  if (bits < 64) throw std::invalid_argument("precision below 64 bits");
  if (target_digits < 1) throw std::invalid_argument("target_digits must be positive");
  if (max_escalations < 0) throw std::invalid_argument("max_escalations must be non-negative");
}

double PrecisionContext::epsilon() const { return std::ldexp(1.0, 1 - bits); }

}  // namespace rmtgap
