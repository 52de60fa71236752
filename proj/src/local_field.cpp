#include "siegel/local_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace siegel {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_odd_prime_power(long q) {
    if (q < 3 || q % 2 == 0) return false;
    long p = 3;
    while (q % p != 0) p += 2;
    while (q % p == 0) q /= p;
    return q == 1;
}

FieldParams FieldParams::from_q(long q) {
    if (!is_odd_prime_power(q))
        throw std::invalid_argument("q must be an odd prime power >= 3, got " + std::to_string(q));
    FieldParams f;
    f.q = q;
    f.eps = (q % 4 == 1) ? 1 : -1;
    if (is_prime(q)) f.p = q;
    return f;
}

FieldParams FieldParams::from_p(long p) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
    return from_q(p);
}

FieldParams FieldParams::from_sign(int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("field sign must be +1 or -1");
    FieldParams f = from_q(eps > 0 ? 5 : 3);
    f.p.reset();
    return f;
}

int chi_of_unit(UnitClass u) { return u == UnitClass::Square ? 1 : -1; }

int chi_minus_one(const FieldParams& params) { return params.eps; }

int legendre(const Integer& u, long p) {
    Integer pp(p);
    Integer r = u % pp;
    if (r == 0) throw std::domain_error("legendre: p divides the argument");
    return mpz_legendre(r.get_mpz_t(), pp.get_mpz_t());
}

int legendre(long u, long p) { return legendre(Integer(u), p); }

int valuation(const Rational& a, long p) {
    if (a == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    Integer num = a.get_num(), den = a.get_den();
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) { num /= p; ++v; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) { den /= p; --v; }
    return v;
}

namespace {

Rational p_power(long p, int k) {
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::abs(k)));
    return k >= 0 ? Rational(pk) : Rational(Integer(1), pk);
}

// Legendre symbol of a p-adic unit given as a rational.
int unit_legendre(const Rational& u, long p) {
    return legendre(u.get_num(), p) * legendre(u.get_den(), p);
}

}  // namespace

Rational unit_part(const Rational& a, long p) {
    Rational u = a / p_power(p, valuation(a, p));
    u.canonicalize();
    return u;
}

int hilbert_symbol(const Rational& a, const Rational& b, long p) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("hilbert_symbol: p must be an odd prime");
    const int va = valuation(a, p), vb = valuation(b, p);
    const Rational ua = unit_part(a, p), ub = unit_part(b, p);
    // (-1)^{va vb (p-1)/2} (ua|p)^{vb} (ub|p)^{va}
    int sign = 1;
    if ((va & 1) && (vb & 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (vb & 1) sign *= unit_legendre(ua, p);
    if (va & 1) sign *= unit_legendre(ub, p);
    return sign;
}

int chi_numeric(const Rational& x, long p) { return hilbert_symbol(Rational(p), x, p); }

RingScalar weil_symbolic(UnitClass u, int k) {
    if (k % 2 == 0) return RingScalar(1);
    return RingScalar(Integer(0), Integer(chi_of_unit(u)));
}

std::complex<double> psi_numeric(const Rational& x, long p) {
    Integer den = x.get_den();
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= p;
    if (den != 1) throw std::domain_error("psi_numeric: denominator is not a power of p");
    Integer r = x.get_num() % x.get_den();
    if (r < 0) r += x.get_den();
    const double frac = Rational(r, x.get_den()).get_d();
    return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

namespace {

// {a x^2}_p summed over x mod p^level, with a = N / (p^m * D'), gcd(D', p) = 1.
std::complex<double> quadratic_exponential_sum(const Rational& a, long p, int level) {
    const int ord = valuation(a, p);
    const int m = -ord;  // > 0
    Integer pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
    // residue of the p-adic fractional part numerator: a * p^m mod p^m
    Rational scaled = a * Rational(pm);
    Integer d_inv;
    Integer den = scaled.get_den();
    if (mpz_invert(d_inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t()) == 0)
        throw std::logic_error("unit denominator not invertible");
    Integer c = (scaled.get_num() * d_inv) % pm;
    if (c < 0) c += pm;
    const long modulus = pm.get_si();
    const long cc = c.get_si();

    long count = 1;
    for (int i = 0; i < level; ++i) count *= p;
    std::complex<double> sum = 0;
    for (long x = 0; x < count; ++x) {
        const long xr = x % modulus;
        const __int128 v = static_cast<__int128>(cc) * xr % modulus * xr % modulus;
        sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(modulus));
    }
    return sum / static_cast<double>(count);
}

}  // namespace

std::complex<double> weil_numeric(const Rational& a, long p, int level) {
    if (a == 0) throw std::domain_error("weil_numeric: zero argument");
    const int ord = valuation(a, p);
    if (ord >= 0) throw std::domain_error("weil_numeric: needs ord_p(a) < 0");
    if (level < -ord) throw std::domain_error("weil_numeric: level below -ord_p(a)");
    const std::complex<double> integral = quadratic_exponential_sum(a, p, level);
    // |a|^{1/2} = p^{-ord/2}
    return integral * std::pow(static_cast<double>(p), -0.5 * ord);
}

std::complex<double> weil_numeric(const Rational& a, long p) { return weil_numeric(a, p, -valuation(a, p)); }

std::complex<double> weil_constant(const Rational& a, long p) {
    const int ord = valuation(a, p);
    // shift by an even power into ord in {-2, -1}
    const int shift = (ord >= 0) ? -2 * ((ord + 2) / 2) : 2 * ((-ord - 1) / 2);
    Rational b = a * p_power(p, shift);
    return weil_numeric(b, p);
}

long least_nonresidue(long p) {
    for (long d = 2; d < p; ++d)
        if (legendre(d, p) == -1) return d;
    throw std::logic_error("no non-residue found");
}

long unit_representative(UnitClass u, long p) {
    return u == UnitClass::Square ? 1 : least_nonresidue(p);
}

}  // namespace siegel
