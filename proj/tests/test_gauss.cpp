#include <cmath>

#include "doctest.h"
#include "siegel/gauss.hpp"

using namespace siegel;

namespace {

constexpr auto Sq = UnitClass::Square;
constexpr auto Ns = UnitClass::Nonsquare;

Rational scaled_unit(long u, long p, int k) {
    Rational r(u);
    for (int j = 0; j < std::abs(k); ++j) r = k > 0 ? Rational(r * p) : Rational(r / p);
    return r;
}

std::complex<double> at_p(const QsPolynomial& f, long p) {
    return f.eval(static_cast<double>(p), 0.0, weil_constant(Rational(1, p), p));
}

// the eps-sum written with concrete Gauss sums
std::complex<double> q_numeric(int i, int lambda, const BMatrix& B, long p, Omega omega) {
    std::complex<double> total = 0;
    for (UnitClass e : {Sq, Ns}) {
        const long eu = unit_representative(e, p);
        auto arg = [&](int k, int shift) {
            return scaled_unit(-eu * unit_representative(B.units[k], p), p, B.e[k] + lambda + shift);
        };
        std::complex<double> term = gauss_Istar_numeric(arg(i, 0), p);
        for (int k = 0; k < B.n(); ++k)
            if (k != i) term *= gauss_I_numeric(arg(k, k < i ? 0 : 2), p);
        total += (omega == Omega::Chi ? static_cast<double>(chi_of_unit(e)) : 1.0) * term;
    }
    return total;
}

}  // namespace

TEST_CASE("gauss integrals: tabulated values") {
    for (int eps : {1, -1}) {
        CHECK(gauss_I({Sq, 0}, eps) == QsPolynomial::constant(eps, 1));
        CHECK(gauss_I({Sq, -2}, eps) == QsPolynomial::qpow(eps, -2));
        CHECK(gauss_I({Ns, -1}, eps) == QsPolynomial::monomial(eps, {0, -1}, RingScalar(0, -1)));
        CHECK(gauss_Istar({Sq, 3}, eps) == one_minus_qinv(eps));
        CHECK(gauss_Istar({Ns, -5}, eps).is_zero());
        QsPolynomial expect = QsPolynomial::monomial(eps, {0, -1}, RingScalar::alpha());
        expect.add_term({0, -2}, RingScalar(-1));
        CHECK(gauss_Istar({Sq, -1}, eps) == expect);
    }
}

TEST_CASE("gauss integrals: finite sums") {
    CHECK(std::abs(gauss_I_numeric(Rational(1), 5) - 1.0) < 1e-12);
    CHECK(std::abs(gauss_I_numeric(Rational(1, 5), 5) - std::pow(5.0, -0.5)) < 1e-12);
    CHECK(std::abs(gauss_I_numeric(Rational(1, 9), 3) - 1.0 / 3) < 1e-12);
    for (long p : {3L, 5L, 7L})
        for (int k = -4; k <= 2; ++k)
            for (UnitClass u : {Sq, Ns}) {
                const Rational a = scaled_unit(unit_representative(u, p), p, k);
                const int eps = FieldParams::from_p(p).eps;
                CHECK(std::abs(at_p(gauss_I({u, k}, eps), p) - gauss_I_numeric(a, p)) < 1e-10);
                CHECK(std::abs(at_p(gauss_Istar({u, k}, eps), p) - gauss_Istar_numeric(a, p)) < 1e-10);
            }
}

TEST_CASE("xi case tables") {
    for (long q : {3L, 5L}) {
        const auto params = FieldParams::from_q(q);
        const int eps = params.eps;
        for (int e1 = 0; e1 <= 3; ++e1) {
            CHECK(xi_chi(0, -e1 - 1, BMatrix({e1}), params) == QsPolynomial::constant(eps, eps));
            CHECK(xi_chi(0, -e1 - 1, BMatrix({e1}, {Ns}), params) == QsPolynomial::constant(eps, -eps));
        }
        CHECK(xi_chi(0, 0, BMatrix({2}), params).is_zero());
        CHECK(xi_chi(1, -1, BMatrix({0, 5}), params) == one_minus_qinv(eps).scaled(eps));

        CHECK(xi_triv(0, 0, BMatrix({2}), params) == one_minus_qinv(eps));
        CHECK(xi_triv(1, -1, BMatrix({0, 5}), params).is_zero());
        CHECK(xi_triv(0, -1, BMatrix({0}), params) == QsPolynomial::qpow(eps, -1, -1));
        CHECK_THROWS_AS(xi_chi(0, -3, BMatrix({0}), params), std::invalid_argument);
    }
}

TEST_CASE("q_{i,lambda} tabulated values") {
    for (long q : {3L, 5L}) {
        const auto params = FieldParams::from_q(q);
        const int eps = params.eps;
        for (int e1 = 0; e1 <= 2; ++e1) {
            const BMatrix B({e1});
            const auto v = q_i_lambda(Involution::identity(1), 0, -e1 - 1, B, params, QPath::Closed);
            CHECK(v == QsPolynomial::monomial(eps, {0, -1}, RingScalar(0, 2 * eps)));
        }
        const BMatrix B({0, 5});
        const auto expect = one_minus_qinv(eps).times_monomial({0, -1}).scaled(RingScalar(0, 2 * eps));
        for (QPath path : {QPath::Closed, QPath::EpsilonSum})
            CHECK(q_i_lambda(Involution::identity(2), 1, -1, B, params, path) == expect);
        // e_i + lambda >= 0 with an empty B_i(lambda)
        CHECK(q_i_lambda(Involution::identity(2), 1, 0, BMatrix({2, 3}), params, QPath::Closed).is_zero());
        CHECK_THROWS_AS(q_i_lambda(Involution({1, 0}), 0, -1, B, params, QPath::Closed), std::invalid_argument);
    }
}

TEST_CASE("q_{i,lambda}: both paths against concrete Gauss sums") {
    const std::vector<std::vector<int>> grids{{0}, {2}, {0, 1}, {1, 1}, {0, 3}, {0, 0, 2}, {1, 2, 2}};
    for (long p : {3L, 5L, 7L}) {
        const auto params = FieldParams::from_p(p);
        for (const auto& e : grids) {
            const int n = static_cast<int>(e.size());
            for (int mask = 0; mask < (1 << n); ++mask) {
                std::vector<UnitClass> u(static_cast<std::size_t>(n));
                for (int k = 0; k < n; ++k) u[k] = (mask >> k) & 1 ? Ns : Sq;
                const BMatrix B(e, u);
                for (int i = 0; i < n; ++i)
                    for (int lambda = -e[i] - 1; lambda <= 0; ++lambda)
                        for (Omega omega : {Omega::Chi, Omega::Trivial}) {
                            const auto sigma = Involution::identity(n);
                            const auto closed = q_i_lambda(sigma, i, lambda, B, params, QPath::Closed, omega);
                            const auto esum = q_i_lambda(sigma, i, lambda, B, params, QPath::EpsilonSum, omega);
                            CHECK(closed == esum);
                            CHECK(std::abs(at_p(closed, p) - q_numeric(i, lambda, B, p, omega)) < 1e-10);
                        }
            }
        }
    }
}
