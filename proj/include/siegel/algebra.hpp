#pragma once

#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace siegel {

using Integer = mpz_class;

// x + y*alpha with alpha^2 = eps. The sign eps is not stored here; it is
// carried by the polynomial that owns the coefficient.
struct RingScalar {
    Integer x = 0;
    Integer y = 0;

    RingScalar() = default;
    RingScalar(long v) : x(v), y(0) {}
    RingScalar(Integer x_, Integer y_) : x(std::move(x_)), y(std::move(y_)) {}

    static RingScalar alpha() { return RingScalar(Integer(0), Integer(1)); }

    bool is_zero() const { return x == 0 && y == 0; }
    bool operator==(const RingScalar& o) const { return x == o.x && y == o.y; }

    RingScalar operator-() const { return RingScalar(Integer(-x), Integer(-y)); }
    RingScalar& operator+=(const RingScalar& o) { x += o.x; y += o.y; return *this; }
    RingScalar& operator-=(const RingScalar& o) { x -= o.x; y -= o.y; return *this; }
    friend RingScalar operator+(RingScalar a, const RingScalar& b) { return a += b; }
    friend RingScalar operator-(RingScalar a, const RingScalar& b) { return a -= b; }

    RingScalar scaled(const Integer& k) const { return RingScalar(Integer(x * k), Integer(y * k)); }

    // Multiplicative inverse when the scalar is a unit of Z[alpha], i.e. its
    // norm x^2 - eps*y^2 is +-1.
    std::optional<RingScalar> unit_inverse(int eps) const;
};

RingScalar mul(const RingScalar& a, const RingScalar& b, int eps);

// Monomial q^{a*s + b/2}.
struct ExponentKey {
    int a = 0;
    int b = 0;
    auto operator<=>(const ExponentKey&) const = default;
    ExponentKey operator+(const ExponentKey& o) const { return {a + o.a, b + o.b}; }
    ExponentKey operator-(const ExponentKey& o) const { return {a - o.a, b - o.b}; }
};

class QsPolynomial {
public:
    using TermMap = std::map<ExponentKey, RingScalar>;

    explicit QsPolynomial(int eps = -1);

    static QsPolynomial zero(int eps) { return QsPolynomial(eps); }
    static QsPolynomial constant(int eps, RingScalar c);
    static QsPolynomial monomial(int eps, ExponentKey key, RingScalar c = RingScalar(1));
    // q^{b/2} with an integer coefficient
    static QsPolynomial qpow(int eps, int b, long coeff = 1) { return monomial(eps, {0, b}, RingScalar(coeff)); }
    static QsPolynomial alpha(int eps) { return constant(eps, RingScalar::alpha()); }

    int eps() const { return eps_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    RingScalar coefficient(ExponentKey key) const;

    // Adds c*q^{key}; drops the entry if the coefficient cancels.
    void add_term(ExponentKey key, const RingScalar& c);

    QsPolynomial operator-() const;
    QsPolynomial& operator+=(const QsPolynomial& o);
    QsPolynomial& operator-=(const QsPolynomial& o);
    QsPolynomial& operator*=(const QsPolynomial& o);
    friend QsPolynomial operator+(QsPolynomial a, const QsPolynomial& b) { return a += b; }
    friend QsPolynomial operator-(QsPolynomial a, const QsPolynomial& b) { return a -= b; }
    friend QsPolynomial operator*(const QsPolynomial& a, const QsPolynomial& b);
    bool operator==(const QsPolynomial& o) const;

    QsPolynomial scaled(const RingScalar& c) const;
    QsPolynomial scaled(long k) const { return scaled(RingScalar(k)); }
    QsPolynomial times_monomial(ExponentKey key) const;
    QsPolynomial pow(unsigned k) const;

    // Substitutes s -> s + c.
    QsPolynomial shift_s(int c) const;

    // Divides every coefficient by d; throws std::domain_error if some
    // coefficient is not divisible.
    QsPolynomial divide_exact(const Integer& d) const;

    // Exact division by another polynomial. Returns nullopt if the quotient
    // does not exist (or the divisor's leading coefficient is not a unit).
    std::optional<QsPolynomial> divide_exact(const QsPolynomial& divisor) const;

    std::complex<double> eval(double q, std::complex<double> s, std::complex<double> alpha) const;
    // Same sum with every term replaced by its absolute value; used as an
    // error scale for floating-point comparisons.
    double eval_abs(double q, std::complex<double> s, std::complex<double> alpha) const;

    ExponentKey min_key() const;
    ExponentKey max_key() const;

private:
    int eps_;
    TermMap terms_;

    void check_eps(const QsPolynomial& o) const;
};

QsPolynomial poly_add(const QsPolynomial& p1, const QsPolynomial& p2);
QsPolynomial poly_mul(const QsPolynomial& p1, const QsPolynomial& p2);
QsPolynomial poly_shift_s(const QsPolynomial& p, int c);
std::complex<double> poly_eval_numeric(const QsPolynomial& p, double q_val,
                                       std::complex<double> s_val, std::complex<double> alpha_val);

// Common factors used throughout the formulas.
QsPolynomial one_minus_qinv(int eps);          // 1 - q^{-1}
QsPolynomial q_power_minus_one(int eps, int m); // q^m - 1

// num / (q^{qpow_b/2} * prod (q^m - 1)^{mult}); the denominator is s-free.
class QsRational {
public:
    explicit QsRational(int eps = -1) : num_(eps) {}
    QsRational(QsPolynomial num) : num_(std::move(num)) {}

    static QsRational one(int eps) { return QsRational(QsPolynomial::constant(eps, RingScalar(1))); }

    int eps() const { return num_.eps(); }
    const QsPolynomial& num() const { return num_; }
    const std::map<int, int>& qm1_factors() const { return qm1_; }
    int qpow_b() const { return qpow_b_; }
    bool has_denominator() const { return !qm1_.empty() || qpow_b_ != 0; }

    // Multiplies the denominator by (q^m - 1)^mult.
    QsRational& divide_by_qm1(int m, int mult = 1);
    // Multiplies the denominator by q^{b/2}.
    QsRational& divide_by_qpow(int b);

    QsPolynomial denominator_polynomial() const;

    QsRational& operator+=(const QsRational& o);
    QsRational& operator*=(const QsRational& o);
    friend QsRational operator+(QsRational a, const QsRational& b) { return a += b; }
    friend QsRational operator*(QsRational a, const QsRational& b) { return a *= b; }
    QsRational scaled(const QsPolynomial& p) const;
    QsRational shift_s(int c) const;

    // Moves q^{b/2} into the numerator and cancels every (q^m - 1) factor that
    // divides the numerator exactly. Never changes the value.
    QsRational normalized() const;

    std::complex<double> eval(double q, std::complex<double> s, std::complex<double> alpha) const;

private:
    QsPolynomial num_;
    std::map<int, int> qm1_;
    int qpow_b_ = 0;
};

bool rat_equal(const QsRational& r1, const QsRational& r2);

// Canonical renderings. Terms appear in descending ExponentKey order.
std::string render_scalar(const RingScalar& c);
std::string render_exponent(ExponentKey key);
std::string render_text(const QsPolynomial& p);
std::string render_text(const QsRational& r);
std::string render_latex(const QsPolynomial& p);
std::string render_latex(const QsRational& r);

}  // namespace siegel
