#pragma once

#include <complex>

#include "siegel/combinatorics.hpp"

namespace siegel {

// Argument u * pi^k of the integrals I and I*.
struct GaussArg {
    UnitClass u = UnitClass::Square;
    int k = 0;
};

enum class Omega { Chi, Trivial };
enum class QPath { Closed, EpsilonSum };

// I(a) = int_o psi(a x^2) dx, as a monomial in q^{1/2} over Z[alpha].
QsPolynomial gauss_I(const GaussArg& arg, int eps);
// I*(a) = I(a) - q^{-1} I(a pi^2).
QsPolynomial gauss_Istar(const GaussArg& arg, int eps);

// Finite sums p^{-K} sum_{x mod p^K} psi(a x^2), K = max(0, -ord_p a).
std::complex<double> gauss_I_numeric(const Rational& a, long p);
std::complex<double> gauss_Istar_numeric(const Rational& a, long p);

// Case tables for the fixed-point factors; require e_i + lambda >= -1.
QsPolynomial xi_chi(int i, int lambda, const BMatrix& B, const FieldParams& params);
QsPolynomial xi_triv(int i, int lambda, const BMatrix& B, const FieldParams& params);

// Contribution of a fixed point i of sigma at level lambda. With omega = Chi
// the sum over eps in {1, delta} is weighted by chi(eps); with Trivial it is not.
QsPolynomial q_i_lambda(const Involution& sigma, int i, int lambda, const BMatrix& B, const FieldParams& params,
                        QPath path, Omega omega = Omega::Chi);

}  // namespace siegel
