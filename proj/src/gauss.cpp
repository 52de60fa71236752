#include "siegel/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace siegel {

QsPolynomial gauss_I(const GaussArg& arg, int eps) {
    if (arg.k >= 0) return QsPolynomial::constant(eps, RingScalar(1));
    return QsPolynomial::monomial(eps, {0, arg.k}, weil_symbolic(arg.u, arg.k));
}

QsPolynomial gauss_Istar(const GaussArg& arg, int eps) {
    if (arg.k >= 0) return one_minus_qinv(eps);
    if (arg.k == -1) {
        QsPolynomial r = QsPolynomial::monomial(eps, {0, -1}, weil_symbolic(arg.u, -1));
        r.add_term({0, -2}, RingScalar(-1));
        return r;
    }
    return QsPolynomial::zero(eps);
}

std::complex<double> gauss_I_numeric(const Rational& a, long p) {
    if (a == 0) throw std::domain_error("gauss_I_numeric: zero argument");
    const int ord = valuation(a, p);
    if (ord >= 0) return 1.0;
    return weil_numeric(a, p) * std::pow(static_cast<double>(p), 0.5 * ord);
}

std::complex<double> gauss_Istar_numeric(const Rational& a, long p) {
    return gauss_I_numeric(a, p) - gauss_I_numeric(a * Rational(p * p), p) / static_cast<double>(p);
}

namespace {

void check_range(int i, int lambda, const BMatrix& B) {
    if (i < 0 || i >= B.n()) throw std::invalid_argument("xi: index out of range");
    if (B.e[i] + lambda < -1) throw std::invalid_argument("xi: needs e_i + lambda >= -1");
}

int sign_pow(int eps, int k) { return (eps < 0 && (k & 1)) ? -1 : 1; }

}  // namespace

QsPolynomial xi_chi(int i, int lambda, const BMatrix& B, const FieldParams& params) {
    check_range(i, lambda, B);
    const int eps = params.eps;
    const auto members = B_i_lambda(i, lambda, B);
    const int count = static_cast<int>(members.size());
    const int m = count / 2;
    int sign = sign_pow(eps, m + 1);
    for (int k : members) sign *= chi_of_unit(B.units[k]);
    if (B.e[i] + lambda >= 0) {
        if (count % 2 == 0) return QsPolynomial::zero(eps);
        return one_minus_qinv(eps).scaled(sign);
    }
    if (count % 2 == 0) return QsPolynomial::constant(eps, RingScalar(sign * chi_of_unit(B.units[i])));
    return QsPolynomial::qpow(eps, -1, -sign);
}

QsPolynomial xi_triv(int i, int lambda, const BMatrix& B, const FieldParams& params) {
    check_range(i, lambda, B);
    const int eps = params.eps;
    const auto members = B_i_lambda(i, lambda, B);
    const int count = static_cast<int>(members.size());
    const int m = count / 2;
    int prod = 1;
    for (int k : members) prod *= chi_of_unit(B.units[k]);
    if (B.e[i] + lambda >= 0) {
        if (count % 2 == 1) return QsPolynomial::zero(eps);
        return one_minus_qinv(eps).scaled(prod * sign_pow(eps, m));
    }
    if (count % 2 == 1)
        return QsPolynomial::constant(eps, RingScalar(prod * sign_pow(eps, m + 1) * chi_of_unit(B.units[i])));
    return QsPolynomial::qpow(eps, -1, -prod * sign_pow(eps, m));
}

namespace {

QsPolynomial q_closed(int i, int lambda, const BMatrix& B, const FieldParams& params, Omega omega) {
    const int eps = params.eps;
    if (B.e[i] + lambda <= -2) return QsPolynomial::zero(eps);
    // 2 r_i' + min{e_i + lambda, 0}
    int twice = std::min(B.e[i] + lambda, 0);
    for (int k = 0; k < B.n(); ++k) {
        if (k < i) twice += std::min(B.e[k] + lambda, 0);
        if (k > i) twice += std::min(B.e[k] + lambda + 2, 0);
    }
    const QsPolynomial pref = QsPolynomial::monomial(
        eps, {0, twice}, omega == Omega::Chi ? RingScalar(Integer(0), Integer(2)) : RingScalar(2));
    return pref * (omega == Omega::Chi ? xi_chi(i, lambda, B, params) : xi_triv(i, lambda, B, params));
}

QsPolynomial q_epsilon_sum(int i, int lambda, const BMatrix& B, const FieldParams& params, Omega omega) {
    const int eps = params.eps;
    const UnitClass minus_one = minus_one_class(eps);
    QsPolynomial total = QsPolynomial::zero(eps);
    for (UnitClass e : {UnitClass::Square, UnitClass::Nonsquare}) {
        const UnitClass sgn = minus_one * e;
        QsPolynomial term = gauss_Istar({sgn * B.units[i], B.e[i] + lambda}, eps);
        for (int k = 0; k < B.n(); ++k) {
            if (k == i) continue;
            const int shift = k < i ? 0 : 2;
            term *= gauss_I({sgn * B.units[k], B.e[k] + lambda + shift}, eps);
        }
        if (omega == Omega::Chi) term = term.scaled(chi_of_unit(e));
        total += term;
    }
    return total;
}

}  // namespace

QsPolynomial q_i_lambda(const Involution& sigma, int i, int lambda, const BMatrix& B, const FieldParams& params,
                        QPath path, Omega omega) {
    if (sigma.n() != B.n()) throw std::invalid_argument("q_i_lambda: size mismatch");
    if (!sigma.fixes(i)) throw std::invalid_argument("q_i_lambda: sigma(i) != i");
    return path == QPath::Closed ? q_closed(i, lambda, B, params, omega)
                                 : q_epsilon_sum(i, lambda, B, params, omega);
}

}  // namespace siegel
