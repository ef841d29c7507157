#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace rmtgap {

/// Working precision of the calling thread, in bits. New `Real` values and
/// the results of arithmetic are created at this precision.
mpfr_prec_t working_bits() noexcept;

/// Scoped override of the calling thread's working precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(mpfr_prec_t bits) noexcept;
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  mpfr_prec_t saved_;
};

/// Arbitrary-precision real number (RAII owner of an mpfr_t), rounded to nearest.
class Real {
 public:
  Real();
  Real(double value);  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  Real(I value) : Real() {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
    } else {
      mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
    }
  }
  /// Parses a decimal literal at the working precision ("0.1" is rounded once).
  explicit Real(std::string_view decimal);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  Real operator-() const;

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDZ); }
  /// Decimal rendering with `digits` significant digits.
  std::string to_string(int digits = 20) const;

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  /// Base-2 exponent e with 0.5 <= |x| / 2^e < 1 (undefined for zero).
  long exponent2() const noexcept { return mpfr_get_exp(v_); }

 private:
  void adopt(Real& other) noexcept;
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real asinh(const Real& x);
Real log1p(const Real& x);
Real expm1(const Real& x);
Real floor(const Real& x);
/// Gamma function; 1/Gamma(0) style poles are the caller's concern.
Real tgamma(const Real& x);
Real lgamma(const Real& x);
/// x * 2^e exactly.
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real pi();
Real euler_gamma();
Real log2_const();
/// 2^(1-bits) at the working precision.
Real machine_epsilon();
/// 10^(-digits) at the working precision.
Real pow10_neg(int digits);

/// Complex number with arbitrary-precision parts.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(double r) : re(r), im(0) {}           // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return {-re, -im}; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator*(const Real& a, const Complex& b);
Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Real arg(const Complex& z);
Complex polar(const Real& r, const Real& theta);
/// Principal square root.
Complex sqrt(const Complex& z);
/// exp(2 pi i num / den) computed from exact rational angle.
Complex root_of_unity(long num, long den);
std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Precision policy shared by every computation in the library.
struct PrecisionContext {
  int bits = 128;
  int target_digits = 16;
  int max_escalations = 3;
  /// Upper bound on worker threads for data-parallel loops (0 = hardware).
  int workers = 0;

  /// Default policy for an N-dimensional problem: bits = max(128, 10 N + 64).
  static PrecisionContext for_size(int n, int target_digits = 16);
  /// Throws std::invalid_argument if bits < 64 or target_digits < 1.
  void validate() const;
  double epsilon() const;
  PrecisionContext with_bits(int b) const {
    PrecisionContext c = *this;
    c.bits = b;
    return c;
  }
};

}  // namespace rmtgap
