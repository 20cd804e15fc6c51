#include "cf/scalar.hpp"

#include <cmath>
#include <cstdio>
#include <regex>
#include <utility>

namespace cf {

mpfr_prec_t bits_for_digits(int digits) {
    if (digits < 1) throw error("precision digits must be positive");
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 32;
}

namespace {

constexpr int kMinDigits = 30;  // complex-float mode floor

void require_digits(int digits) {
    if (digits < kMinDigits) throw error("complex-float precision_digits must be >= 30");
}

}  // namespace

// ---- BigFloat ---------------------------------------------------------------

BigFloat::BigFloat() {
    mpfr_init2(v_, MPFR_PREC_MIN);
}

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() {
    mpfr_clear(v_);
}

BigFloat BigFloat::from_long(long x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_rational(const Rational& q, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_q(r.v_, q.backend().data(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::from_str(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0') throw parse_error("malformed real literal: " + s);
    return r;
}

std::string BigFloat::str(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string r(s);
    mpfr_free_str(s);
    return r;
}

int cmp(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.get(), b.get());
}

int cmp_rational(const BigFloat& a, const Rational& q) {
    return mpfr_cmp_q(a.get(), const_cast<mpq_ptr>(static_cast<mpq_srcptr>(q.backend().data())));
}

// ---- BigComplex -------------------------------------------------------------

BigComplex::BigComplex(BigFloat re, BigFloat im, int digits, bool mixed)
    : re_(std::move(re)), im_(std::move(im)), digits_(digits), mixed_(mixed) {
    if (digits_ < 1) throw error("BigComplex digits must be positive");
}

BigComplex BigComplex::zero(int digits) {
    mpfr_prec_t p = bits_for_digits(digits);
    BigFloat re(p), im(p);
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    return BigComplex(std::move(re), std::move(im), digits);
}

BigComplex BigComplex::from_long(long re, int digits) {
    mpfr_prec_t p = bits_for_digits(digits);
    BigFloat r = BigFloat::from_long(re, p);
    BigFloat i(p);
    mpfr_set_zero(i.get(), 1);
    return BigComplex(std::move(r), std::move(i), digits);
}

BigComplex BigComplex::from_rational(const Rational& q, int digits) {
    mpfr_prec_t p = bits_for_digits(digits);
    BigFloat r = BigFloat::from_rational(q, p);
    BigFloat i(p);
    mpfr_set_zero(i.get(), 1);
    return BigComplex(std::move(r), std::move(i), digits);
}

BigComplex BigComplex::from_parts(const std::string& re, const std::string& im, int digits) {
    mpfr_prec_t p = bits_for_digits(digits);
    return BigComplex(BigFloat::from_str(re, p), BigFloat::from_str(im, p), digits);
}

namespace {

struct OpPrec {
    int digits;
    bool mixed;
    mpfr_prec_t prec;
};

OpPrec combine(const BigComplex& a, const BigComplex& b) {
    int d = std::min(a.digits(), b.digits());
    bool mixed = a.mixed() || b.mixed() || a.digits() != b.digits();
    return {d, mixed, bits_for_digits(d)};
}

}  // namespace

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    OpPrec c = combine(a, b);
    BigFloat re(c.prec), im(c.prec);
    mpfr_add(re.get(), a.re().get(), b.re().get(), MPFR_RNDN);
    mpfr_add(im.get(), a.im().get(), b.im().get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), c.digits, c.mixed);
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    OpPrec c = combine(a, b);
    BigFloat re(c.prec), im(c.prec);
    mpfr_sub(re.get(), a.re().get(), b.re().get(), MPFR_RNDN);
    mpfr_sub(im.get(), a.im().get(), b.im().get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), c.digits, c.mixed);
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    OpPrec c = combine(a, b);
    BigFloat re(c.prec), im(c.prec);
    // (ar*br - ai*bi, ar*bi + ai*br), one rounding per part
    mpfr_fmms(re.get(), a.re().get(), b.re().get(), a.im().get(), b.im().get(), MPFR_RNDN);
    mpfr_fmma(im.get(), a.re().get(), b.im().get(), a.im().get(), b.re().get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), c.digits, c.mixed);
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.is_zero()) throw error("complex division by zero");
    OpPrec c = combine(a, b);
    BigFloat den(c.prec), ren(c.prec), imn(c.prec), re(c.prec), im(c.prec);
    mpfr_fmma(den.get(), b.re().get(), b.re().get(), b.im().get(), b.im().get(), MPFR_RNDN);
    mpfr_fmma(ren.get(), a.re().get(), b.re().get(), a.im().get(), b.im().get(), MPFR_RNDN);
    mpfr_fmms(imn.get(), a.im().get(), b.re().get(), a.re().get(), b.im().get(), MPFR_RNDN);
    mpfr_div(re.get(), ren.get(), den.get(), MPFR_RNDN);
    mpfr_div(im.get(), imn.get(), den.get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), c.digits, c.mixed);
}

BigComplex operator-(const BigComplex& a) {
    BigFloat re(a.re().prec()), im(a.im().prec());
    mpfr_neg(re.get(), a.re().get(), MPFR_RNDN);
    mpfr_neg(im.get(), a.im().get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), a.digits(), a.mixed());
}

bool BigComplex::equals(const BigComplex& o) const {
    return mpfr_equal_p(re_.get(), o.re_.get()) && mpfr_equal_p(im_.get(), o.im_.get());
}

BigFloat abs(const BigComplex& z) {
    BigFloat r(bits_for_digits(z.digits()));
    mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    return r;
}

BigComplex sqrt(const BigComplex& z) {
    int d = z.digits();
    mpfr_prec_t p = bits_for_digits(d);
    if (z.is_zero()) return BigComplex::zero(d);
    BigFloat m(p), t(p), u(p);
    mpfr_hypot(m.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    if (mpfr_sgn(z.re().get()) >= 0) {
        // t = sqrt((m + re)/2), u = im/(2t)
        mpfr_add(t.get(), m.get(), z.re().get(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
        mpfr_sqrt(t.get(), t.get(), MPFR_RNDN);
        mpfr_div(u.get(), z.im().get(), t.get(), MPFR_RNDN);
        mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);
    } else {
        // u = sign(im)*sqrt((m - re)/2), t = im/(2u); im = +0 lands on the
        // principal branch (+i sqrt|re|)
        mpfr_sub(u.get(), m.get(), z.re().get(), MPFR_RNDN);
        mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);
        mpfr_sqrt(u.get(), u.get(), MPFR_RNDN);
        if (mpfr_signbit(z.im().get())) mpfr_neg(u.get(), u.get(), MPFR_RNDN);
        mpfr_div(t.get(), z.im().get(), u.get(), MPFR_RNDN);
        mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
        mpfr_abs(t.get(), t.get(), MPFR_RNDN);  // clear -0 when im = +0
    }
    return BigComplex(std::move(t), std::move(u), d, z.mixed());
}

BigComplex exp(const BigComplex& z) {
    mpfr_prec_t p = bits_for_digits(z.digits());
    BigFloat ea(p), s(p), c(p), re(p), im(p);
    mpfr_exp(ea.get(), z.re().get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), z.im().get(), MPFR_RNDN);
    mpfr_mul(re.get(), ea.get(), c.get(), MPFR_RNDN);
    mpfr_mul(im.get(), ea.get(), s.get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), z.digits(), z.mixed());
}

BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw error("log of zero");
    mpfr_prec_t p = bits_for_digits(z.digits());
    BigFloat re(p), im(p);
    mpfr_hypot(re.get(), z.re().get(), z.im().get(), MPFR_RNDN);
    mpfr_log(re.get(), re.get(), MPFR_RNDN);
    mpfr_atan2(im.get(), z.im().get(), z.re().get(), MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), z.digits(), z.mixed());
}

BigComplex pow(const BigComplex& z, const BigComplex& w) {
    if (z.is_zero()) {
        if (mpfr_sgn(w.re().get()) > 0) return BigComplex::zero(std::min(z.digits(), w.digits()));
        throw error("zero base requires exponent with positive real part");
    }
    return exp(w * log(z));
}

BigComplex powi(const BigComplex& z, long n) {
    if (n == 0) return BigComplex::from_long(1, z.digits());
    if (n < 0) return BigComplex::from_long(1, z.digits()) / powi(z, -n);
    BigComplex acc = BigComplex::from_long(1, z.digits());
    BigComplex base = z;
    unsigned long k = static_cast<unsigned long>(n);
    while (k) {
        if (k & 1) acc = acc * base;
        base = (k >>= 1) ? base * base : base;
    }
    return acc;
}

BigComplex scale2(const BigComplex& z, long e) {
    BigFloat re(z.re().prec()), im(z.im().prec());
    mpfr_mul_2si(re.get(), z.re().get(), e, MPFR_RNDN);
    mpfr_mul_2si(im.get(), z.im().get(), e, MPFR_RNDN);
    return BigComplex(std::move(re), std::move(im), z.digits(), z.mixed());
}

// ---- Scalar -----------------------------------------------------------------

const Rational& Scalar::rat() const {
    if (!is_rational()) throw mode_error("scalar is not exact-rational");
    return std::get<Rational>(v_);
}

const BigComplex& Scalar::cplx() const {
    if (is_rational()) throw mode_error("scalar is not complex-float");
    return std::get<BigComplex>(v_);
}

int Scalar::digits() const {
    return cplx().digits();
}

bool Scalar::is_zero() const {
    return is_rational() ? rat().is_zero() : cplx().is_zero();
}

Scalar Scalar::to_complex(int digits) const {
    require_digits(digits);
    if (is_rational()) return Scalar(BigComplex::from_rational(rat(), digits));
    const BigComplex& z = cplx();
    if (z.digits() == digits) return *this;
    mpfr_prec_t p = bits_for_digits(digits);
    BigFloat re(p), im(p);
    mpfr_set(re.get(), z.re().get(), MPFR_RNDN);
    mpfr_set(im.get(), z.im().get(), MPFR_RNDN);
    return Scalar(BigComplex(std::move(re), std::move(im), digits, z.mixed()));
}

namespace {

[[noreturn]] void mixed_modes() {
    throw mode_error("cannot mix exact-rational and complex-float scalars without explicit conversion");
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) mixed_modes();
    if (a.is_rational()) return Scalar(Rational(a.rat() + b.rat()));
    return Scalar(a.cplx() + b.cplx());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) mixed_modes();
    if (a.is_rational()) return Scalar(Rational(a.rat() - b.rat()));
    return Scalar(a.cplx() - b.cplx());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) mixed_modes();
    if (a.is_rational()) return Scalar(Rational(a.rat() * b.rat()));
    return Scalar(a.cplx() * b.cplx());
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.is_rational() != b.is_rational()) mixed_modes();
    if (a.is_rational()) {
        if (b.rat().is_zero()) throw error("rational division by zero");
        return Scalar(Rational(a.rat() / b.rat()));
    }
    return Scalar(a.cplx() / b.cplx());
}

Scalar operator-(const Scalar& a) {
    if (a.is_rational()) return Scalar(Rational(-a.rat()));
    return Scalar(-a.cplx());
}

bool Scalar::operator==(const Scalar& o) const {
    if (is_rational() != o.is_rational()) mixed_modes();
    if (is_rational()) return rat() == o.rat();
    return cplx().equals(o.cplx());
}

Scalar powi(const Scalar& x, long n) {
    if (!x.is_rational()) return Scalar(powi(x.cplx(), n));
    if (n == 0) return Scalar::from_long(1);
    bool invert = n < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Rational acc(1), base = x.rat();
    while (k) {
        if (k & 1) acc *= base;
        if (k >>= 1) base *= base;
    }
    if (invert) {
        if (acc.is_zero()) throw error("rational division by zero");
        acc = Rational(1) / acc;
    }
    return Scalar(acc);
}

Scalar one_like(const Scalar& x) {
    if (x.is_rational()) return Scalar::from_long(1);
    return Scalar(BigComplex::from_long(1, x.digits()));
}

Scalar zero_like(const Scalar& x) {
    if (x.is_rational()) return Scalar();
    return Scalar(BigComplex::zero(x.digits()));
}

Rational abs_rational(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

int cmp_abs(const Scalar& x, const Rational& bound) {
    if (x.is_rational()) {
        Rational a = abs_rational(x.rat());
        return a < bound ? -1 : (a == bound ? 0 : 1);
    }
    return cmp_rational(abs(x.cplx()), bound);
}

bool near(const Scalar& x, const Scalar& y, int slack_pow10) {
    if (x.is_rational() != y.is_rational()) mixed_modes();
    if (x.is_rational()) return x.rat() == y.rat();
    const BigComplex& a = x.cplx();
    const BigComplex& b = y.cplx();
    int d = std::min(a.digits(), b.digits());
    mpfr_prec_t p = bits_for_digits(d);
    BigFloat diff = abs(a - b);
    BigFloat scale(p), bx(p), by(p), tol(p);
    mpfr_set_ui(scale.get(), 1, MPFR_RNDN);
    mpfr_hypot(bx.get(), a.re().get(), a.im().get(), MPFR_RNDN);
    mpfr_hypot(by.get(), b.re().get(), b.im().get(), MPFR_RNDN);
    mpfr_max(scale.get(), scale.get(), bx.get(), MPFR_RNDN);
    mpfr_max(scale.get(), scale.get(), by.get(), MPFR_RNDN);
    mpfr_set_ui(tol.get(), 10, MPFR_RNDN);
    mpfr_pow_si(tol.get(), tol.get(), slack_pow10 - d, MPFR_RNDN);
    mpfr_mul(tol.get(), tol.get(), scale.get(), MPFR_RNDN);
    return mpfr_cmp(diff.get(), tol.get()) <= 0;
}

double gap_magnitude(const Scalar& x, const Scalar& y) {
    if (x.is_rational() != y.is_rational()) mixed_modes();
    if (x.is_rational()) {
        Rational d = abs_rational(Rational(x.rat() - y.rat()));
        return d.convert_to<double>();
    }
    return abs(x.cplx() - y.cplx()).to_double();
}

// ---- text forms -------------------------------------------------------------

namespace {

// GMP's string constructor auto-detects octal/hex from "0"/"0x" prefixes and
// rejects a leading '+'; normalize to plain base-10 first.
Integer int_from_decimal(const std::string& s) {
    size_t k = 0;
    bool neg = false;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) neg = s[k++] == '-';
    while (k + 1 < s.size() && s[k] == '0') ++k;
    if (k >= s.size()) throw parse_error("malformed integer: " + s);
    Integer v(s.substr(k));
    return neg ? Integer(-v) : v;
}

Rational rational_from_parts(const std::string& num, const std::string& den) {
    Integer n = int_from_decimal(num);
    Integer d = int_from_decimal(den);
    if (d.is_zero()) throw parse_error("rational with zero denominator");
    Rational r(n, d);
    mpq_canonicalize(r.backend().data());
    return r;
}

bool is_rational_text(const std::string& s) {
    static const std::regex re(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
    return std::regex_match(s, re);
}

// split "re+imi" / "re-imi" / "imi" / "re"; returns {re_text, im_text}
std::pair<std::string, std::string> split_complex(const std::string& s) {
    if (s.empty()) throw parse_error("empty scalar");
    if (s.back() != 'i') return {s, "0"};
    std::string body = s.substr(0, s.size() - 1);
    if (body.find('i') != std::string::npos) throw parse_error("malformed complex literal: " + s);
    // last top-level sign not at position 0 and not an exponent sign
    for (size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            std::string im = body.substr(k);
            if (im == "+" || im == "-") im += "1";
            return {body.substr(0, k), im};
        }
    }
    if (body.empty() || body == "+") return {"0", "1"};
    if (body == "-") return {"0", "-1"};
    return {"0", body};
}

}  // namespace

Scalar parse_scalar(const std::string& text, int digits) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw parse_error("empty scalar");
    if (is_rational_text(s)) {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return Scalar(rational_from_parts(s, "1"));
        return Scalar(rational_from_parts(s.substr(0, slash), s.substr(slash + 1)));
    }
    require_digits(digits);
    auto [re, im] = split_complex(s);
    try {
        return Scalar(BigComplex::from_parts(re, im, digits));
    } catch (const parse_error&) {
        throw parse_error("malformed scalar: " + text);
    }
}

std::string format_scalar(const Scalar& x) {
    return x.str();
}

std::string Scalar::str() const {
    if (is_rational()) {
        const Rational& q = rat();
        Integer n = boost::multiprecision::numerator(q);
        Integer d = boost::multiprecision::denominator(q);
        if (d == 1) return n.str();
        return n.str() + "/" + d.str();
    }
    const BigComplex& z = cplx();
    std::string re = z.re().str(z.digits());
    if (z.im().is_zero()) return re;
    mpfr_prec_t p = bits_for_digits(z.digits());
    BigFloat ia(p);
    mpfr_abs(ia.get(), z.im().get(), MPFR_RNDN);
    return re + (z.im().sign() < 0 ? "-" : "+") + ia.str(z.digits()) + "i";
}

Rational parse_tolerance(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (is_rational_text(s)) {
        size_t slash = s.find('/');
        if (slash == std::string::npos) return rational_from_parts(s, "1");
        return rational_from_parts(s.substr(0, slash), s.substr(slash + 1));
    }
    static const std::regex re(R"(^([+-]?)([0-9]*)(?:\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw parse_error("malformed tolerance: " + text);
    std::string ip = m[2].str(), fp = m[3].str();
    if (ip.empty() && fp.empty()) throw parse_error("malformed tolerance: " + text);
    Integer mant = int_from_decimal("0" + ip + fp);
    if (m[1].str() == "-") mant = -mant;
    long e10 = m[4].matched ? std::stol(m[4].str()) : 0;
    e10 -= static_cast<long>(fp.size());
    Rational r(mant);
    Integer ten(10);
    if (e10 >= 0)
        r *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(e10)));
    else
        r /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-e10)));
    return r;
}

bool exact_sqrt(const Rational& q, Rational& out) {
    if (q < 0) return false;
    Integer n = boost::multiprecision::numerator(q);
    Integer d = boost::multiprecision::denominator(q);
    if (!mpz_perfect_square_p(n.backend().data()) || !mpz_perfect_square_p(d.backend().data()))
        return false;
    Integer sn, sd;
    mpz_sqrt(sn.backend().data(), n.backend().data());
    mpz_sqrt(sd.backend().data(), d.backend().data());
    out = Rational(sn, sd);
    return true;
}

}  // namespace cf
