#pragma once

#include <string>
#include <vector>

#include "siegel/combinatorics.hpp"

namespace siegel {

// num / prod(den); the denominators may depend on s.
struct ClosedValue {
    QsPolynomial num;
    std::vector<QsPolynomial> den;

    QsPolynomial den_product() const;
    std::complex<double> eval(double q, std::complex<double> s, std::complex<double> alpha) const;
};

// The odd-parity S_1 display for n = 2 is not a polynomial in q^{-s} as
// printed. Shifted reads its last brace term as q^{(3/2 - s)(e_2 - e_1 + 1)}.
enum class N2Reading { Verbatim, Shifted };

ClosedValue closed_value_n1(const BMatrix& B, const FieldParams& params);
ClosedValue closed_value_n2(const BMatrix& B, int t, const FieldParams& params,
                            N2Reading reading = N2Reading::Verbatim);
// S_{3,d}(B, s), i.e. the displayed Wh_{3,d}(B, s - 2).
ClosedValue closed_value_n3(const BMatrix& B, int d, const FieldParams& params);

QsPolynomial closed_n1(const BMatrix& B, const FieldParams& params);
// These divide out the s-dependent denominators exactly and throw
// std::domain_error when the quotient is not a polynomial in q^{-s}.
QsRational closed_n2(const BMatrix& B, int t, const FieldParams& params, N2Reading reading = N2Reading::Verbatim);
QsRational closed_n3(const BMatrix& B, int d, const FieldParams& params);

// Exact equality by cross-multiplication.
bool closed_matches(const ClosedValue& closed, const QsRational& value);

struct ClosedMismatch {
    BMatrix B;
    int eps = 0;
    int t = 0;
    std::string closed;
    std::string engine;
};

// Runs closed_n3 against the engine for e_3 <= max_e, every unit vector and
// both field signs, and returns the mismatches ordered by (sum e, e, units, eps).
std::vector<ClosedMismatch> n3_mismatches(int max_e, int t);

}  // namespace siegel
