#pragma once

#include <complex>
#include <optional>

#include <gmpxx.h>

#include "siegel/algebra.hpp"

namespace siegel {

using Rational = mpq_class;

// Residue cardinality q (odd prime power), the prime p when F = Q_p, and
// eps = chi(-1), which is +1 iff q = 1 mod 4.
struct FieldParams {
    long q = 3;
    std::optional<long> p;
    int eps = -1;

    static FieldParams from_q(long q);
    static FieldParams from_p(long p);
    // Symbolic work depends on the field only through eps; picks q = 5 or 3.
    static FieldParams from_sign(int eps);
};

enum class UnitClass { Square, Nonsquare };

inline UnitClass operator*(UnitClass a, UnitClass b) {
    return a == b ? UnitClass::Square : UnitClass::Nonsquare;
}

// Square-class of -1 in the residue field.
inline UnitClass minus_one_class(int eps) { return eps > 0 ? UnitClass::Square : UnitClass::Nonsquare; }

int chi_of_unit(UnitClass u);
int chi_minus_one(const FieldParams& params);

bool is_prime(long n);
bool is_odd_prime_power(long q);

// Legendre symbol (u | p); throws std::domain_error when p divides u.
int legendre(const Integer& u, long p);
int legendre(long u, long p);

// p-adic valuation of a nonzero rational.
int valuation(const Rational& a, long p);
// Unit part a / p^{ord a}.
Rational unit_part(const Rational& a, long p);

// Quadratic Hilbert symbol <a, b>_p for odd p.
int hilbert_symbol(const Rational& a, const Rational& b, long p);

// chi(x) = <p, x>_p for F = Q_p with uniformizer p.
int chi_numeric(const Rational& x, long p);

// alpha_psi(u * pi^k) in Z[alpha]: 1 when k is even, chi(u) * alpha when k is odd.
RingScalar weil_symbolic(UnitClass u, int k);

// Additive character psi(x) = exp(2 pi i {x}_p) on Q_p.
std::complex<double> psi_numeric(const Rational& x, long p);

// alpha_psi(a) = I(a) |a|^{1/2} from the finite sum
// p^{-level} * sum_{x mod p^level} psi(a x^2). Requires ord_p(a) < 0 and
// level >= -ord_p(a); throws std::domain_error otherwise.
std::complex<double> weil_numeric(const Rational& a, long p, int level);
std::complex<double> weil_numeric(const Rational& a, long p);

// alpha_psi(a) for any nonzero a, rescaling by p^{-2m} so the finite sum applies.
std::complex<double> weil_constant(const Rational& a, long p);

// Smallest positive quadratic non-residue mod p; the concrete delta.
long least_nonresidue(long p);
// Concrete integer representative of a unit class.
long unit_representative(UnitClass u, long p);

}  // namespace siegel
