#include <complex>
#include <random>

#include "doctest.h"
#include "siegel/algebra.hpp"

using namespace siegel;

namespace {

QsPolynomial random_poly(std::mt19937& rng, int eps) {
    std::uniform_int_distribution<int> size(0, 4), key(-4, 4), coef(-3, 3);
    QsPolynomial p(eps);
    const int n = size(rng);
    for (int i = 0; i < n; ++i) p.add_term({key(rng), key(rng)}, RingScalar(coef(rng), coef(rng)));
    return p;
}

// numeric point with alpha^2 = eps
struct Point {
    double q;
    std::complex<double> s, alpha;
};

Point point(int eps, double q, std::complex<double> s) {
    return {q, s, eps > 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, 1.0)};
}

bool close(std::complex<double> a, std::complex<double> b, double scale) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, scale);
}

}  // namespace

TEST_CASE("scalar arithmetic in Z[alpha]") {
    const RingScalar a(2, 3), b(-1, 4);
    CHECK(mul(a, b, -1) == RingScalar(-2 - 12, 8 - 3));
    CHECK(mul(a, b, 1) == RingScalar(-2 + 12, 8 - 3));
    CHECK(mul(RingScalar::alpha(), RingScalar::alpha(), -1) == RingScalar(-1));
    CHECK(RingScalar::alpha().unit_inverse(-1) == RingScalar(0, -1));
    CHECK(RingScalar::alpha().unit_inverse(1) == RingScalar::alpha());
    CHECK_FALSE(RingScalar(2, 0).unit_inverse(1).has_value());
    CHECK(RingScalar(1, 1).unit_inverse(-1) == std::nullopt);  // norm 2
}

TEST_CASE("polynomial arithmetic agrees with numeric evaluation") {
    std::mt19937 rng(7);
    for (int eps : {1, -1}) {
        for (int trial = 0; trial < 100; ++trial) {
            const QsPolynomial f = random_poly(rng, eps), g = random_poly(rng, eps);
            const Point x = point(eps, 5.0, {0.37, 0.11});
            const auto fv = f.eval(x.q, x.s, x.alpha), gv = g.eval(x.q, x.s, x.alpha);
            const double scale = f.eval_abs(x.q, x.s, x.alpha) * g.eval_abs(x.q, x.s, x.alpha) + 1.0;
            CHECK(close((f + g).eval(x.q, x.s, x.alpha), fv + gv, scale));
            CHECK(close((f - g).eval(x.q, x.s, x.alpha), fv - gv, scale));
            CHECK(close((f * g).eval(x.q, x.s, x.alpha), fv * gv, scale));
            CHECK(close(f.shift_s(3).eval(x.q, x.s, x.alpha), f.eval(x.q, x.s + 3.0, x.alpha), scale * 1e6));
        }
    }
}

TEST_CASE("monomials and rendering") {
    const int eps = -1;
    const QsPolynomial m = QsPolynomial::monomial(eps, {-1, 1}, RingScalar::alpha());
    CHECK(render_text(m) == "a*q^{-s + 1/2}");
    CHECK(render_text(QsPolynomial::zero(eps)) == "0");
    CHECK(render_text(QsPolynomial::constant(eps, RingScalar(1))) == "1");
    CHECK(render_text(QsPolynomial::monomial(eps, {-2, 3}, RingScalar(1, 2))) == "(1 + 2a)*q^{-2s + 3/2}");
    CHECK(render_text(one_minus_qinv(eps)) == "1 - q^{-1}");
    CHECK(render_latex(m) == "\\alpha q^{-s+\\frac{1}{2}}");
    CHECK(render_exponent({0, 4}) == "2");
    CHECK(render_exponent({1, -1}) == "s - 1/2");
}

TEST_CASE("shift_s substitutes s -> s + c") {
    const int eps = 1;
    // q^{-s} at s -> s - 2 is q^{-s + 2}
    CHECK(QsPolynomial::monomial(eps, {-1, 0}).shift_s(-2) == QsPolynomial::monomial(eps, {-1, 4}));
    CHECK(poly_shift_s(QsPolynomial::qpow(eps, 3), 5) == QsPolynomial::qpow(eps, 3));
}

TEST_CASE("exact division") {
    const int eps = 1;
    std::mt19937 rng(11);
    const QsPolynomial d = one_minus_qinv(eps) * QsPolynomial::monomial(eps, {-2, 1});
    for (int trial = 0; trial < 50; ++trial) {
        const QsPolynomial f = random_poly(rng, eps);
        const auto q = (f * d).divide_exact(d);
        REQUIRE(q.has_value());
        CHECK(*q == f);
    }
    // 1 / (1 - q^{-2s}) is not a polynomial
    const QsPolynomial den = QsPolynomial::constant(eps, RingScalar(1)) - QsPolynomial::monomial(eps, {-2, 0});
    CHECK_FALSE(QsPolynomial::constant(eps, RingScalar(1)).divide_exact(den).has_value());
    CHECK(QsPolynomial::constant(eps, RingScalar(6)).divide_exact(Integer(3)) ==
          QsPolynomial::constant(eps, RingScalar(2)));
    CHECK_THROWS_AS(QsPolynomial::constant(eps, RingScalar(5)).divide_exact(Integer(3)), std::domain_error);
}

TEST_CASE("rationals with (q^m - 1) denominators") {
    const int eps = -1;
    // (1 - q^{-1}) q / (q - 1) = 1
    QsRational r(one_minus_qinv(eps).times_monomial({0, 2}));
    r.divide_by_qm1(1);
    CHECK(rat_equal(r, QsRational::one(eps)));
    CHECK(render_text(r.normalized()) == "1");

    QsRational a(QsPolynomial::constant(eps, RingScalar(1)));
    a.divide_by_qm1(1);
    QsRational b(QsPolynomial::constant(eps, RingScalar(1)));
    b.divide_by_qm1(3);
    const QsRational sum = a + b;
    const double q = 7.0;
    CHECK(std::abs(sum.eval(q, 0.3, {0, 1}) - (1.0 / (q - 1) + 1.0 / (q * q * q - 1))) < 1e-12);
    CHECK(render_text(b) == "1 / (q^{3} - 1)");

    QsRational c(QsPolynomial::constant(eps, RingScalar(2)));
    c.divide_by_qm1(2, 2).divide_by_qpow(1);
    CHECK(render_text(c) == "2 / (q^{1/2}*(q^{2} - 1)^{2})");
}
