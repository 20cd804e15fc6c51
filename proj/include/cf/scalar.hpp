#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace cf {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// two arithmetic modes met in one expression without an explicit conversion
struct mode_error : error {
    using error::error;
};
// malformed text/JSON input
struct parse_error : error {
    using error::error;
};

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Decimal digits to MPFR precision in bits, with guard bits.
mpfr_prec_t bits_for_digits(int digits);

// Thin RAII wrapper over mpfr_t. Precision is fixed at construction; all
// rounding is to nearest. Copy preserves precision and value.
class BigFloat {
  public:
    BigFloat();
    explicit BigFloat(mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static BigFloat from_long(long x, mpfr_prec_t prec);
    static BigFloat from_rational(const Rational& q, mpfr_prec_t prec);
    static BigFloat from_str(const std::string& s, mpfr_prec_t prec);

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // significand formatted with `digits` significant decimal digits
    std::string str(int digits) const;

  private:
    mpfr_t v_;
};

int cmp(const BigFloat& a, const BigFloat& b);
int cmp_rational(const BigFloat& a, const Rational& q);  // exact comparison

// High-precision complex value. `digits` is the declared decimal precision;
// arithmetic between different precisions rounds to the minimum and sets the
// sticky `mixed` flag. Parts may carry more bits than bits_for_digits(digits)
// requires; `digits` is what the value claims, not what it stores.
class BigComplex {
  public:
    BigComplex(BigFloat re, BigFloat im, int digits, bool mixed = false);

    static BigComplex zero(int digits);
    static BigComplex from_long(long re, int digits);
    static BigComplex from_rational(const Rational& q, int digits);
    static BigComplex from_parts(const std::string& re, const std::string& im, int digits);

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    int digits() const { return digits_; }
    bool mixed() const { return mixed_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator-(const BigComplex& a);

    bool equals(const BigComplex& o) const;  // bitwise value equality

  private:
    BigFloat re_, im_;
    int digits_;
    bool mixed_;
};

BigFloat abs(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // principal branch
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal: Im in (-pi, pi]
BigComplex pow(const BigComplex& z, const BigComplex& w);
BigComplex powi(const BigComplex& z, long n);
BigComplex scale2(const BigComplex& z, long e);  // z * 2^e, exact

// A value in exactly one of the two arithmetic modes. Operations on two
// rationals are exact; operations on two complex values follow BigComplex
// precision rules; mixing modes throws mode_error.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    explicit Scalar(Rational q) : v_(std::move(q)) {}
    explicit Scalar(BigComplex z) : v_(std::move(z)) {}
    static Scalar from_long(long x) { return Scalar(Rational(x)); }

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const;
    const BigComplex& cplx() const;
    int digits() const;  // complex mode only
    bool is_zero() const;

    Scalar to_complex(int digits) const;  // explicit mode/precision conversion

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);

    bool operator==(const Scalar& o) const;  // exact; modes must match
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

  private:
    std::variant<Rational, BigComplex> v_;
};

Scalar powi(const Scalar& x, long n);

// 1 and 0 in the same mode (and precision) as x
Scalar one_like(const Scalar& x);
Scalar zero_like(const Scalar& x);

// |x| as a real value: exact for rationals, a BigFloat for complex.
// cmp_abs compares |x| against an exact rational bound; the complex case
// rounds |x| once (to x's working precision) before the exact comparison.
int cmp_abs(const Scalar& x, const Rational& bound);
Rational abs_rational(const Rational& q);

// |x - y| <= 10^(slack_pow10 - digits) * max(1, |x|, |y|) in complex mode;
// exact equality in rational mode.
bool near(const Scalar& x, const Scalar& y, int slack_pow10 = 2);

// Magnitude of x - y as a double (diagnostic use).
double gap_magnitude(const Scalar& x, const Scalar& y);

// Text forms: rationals "p" or "p/q"; complex "re", "re+imi", "re-imi"
// (pure-imaginary shorthand like "0.5i" is accepted on input).
Scalar parse_scalar(const std::string& text, int digits);
std::string format_scalar(const Scalar& x);

// Tolerances may be written as "p/q", "p", decimal, or scientific text and are
// always exact rationals internally.
Rational parse_tolerance(const std::string& text);

// sqrt of a rational if it is a perfect square; nullopt handled via bool flag
bool exact_sqrt(const Rational& q, Rational& out);

}  // namespace cf
