#pragma once

#include <complex>
#include <string>
#include <vector>

#include "siegel/combinatorics.hpp"
#include "siegel/gauss.hpp"

namespace siegel {

// Symmetric matrix over Z_p whose entries are known modulo p^K.
struct PadicSymMatrix {
    long p = 3;
    int K = 8;
    std::vector<std::vector<Rational>> entries;

    PadicSymMatrix(long p_, int K_, std::vector<std::vector<Rational>> entries_);
    int n() const { return static_cast<int>(entries.size()); }
};

struct JordanForm {
    std::vector<int> valuations;      // ascending
    std::vector<UnitClass> classes;   // one per diagonal entry

    // Same invariants, with each valuation group written as (Square, ..., Square, product).
    JordanForm canonical() const;
    BMatrix to_bmatrix() const { return BMatrix(valuations, classes); }
};

// X = U^t Y U with U in GL_n(Z_p) and Y diagonal. Throws std::domain_error
// when every remaining entry vanishes modulo p^K.
JordanForm jordan_diagonalize(const PadicSymMatrix& S);

struct OracleConfig {
    long p = 3;
    double s_val = 4.0;
    int K = 6;
    int Vmax = 3;
    unsigned jobs = 1;

    // Throws std::invalid_argument unless p is an odd prime, s_val > n + 1 and
    // K is fine enough for the integrand to be constant on cosets mod p^K.
    void validate(int n) const;
    // Vmax covers every nonvanishing determinant valuation; K is the smallest
    // admissible level for n = 1 and 2 Vmax - 1 for n = 2.
    static OracleConfig defaults(const BMatrix& B, long p, double s_val);
};

struct NumericResult {
    std::complex<double> value;
    double tail_bound = 0.0;
    long long cosets_evaluated = 0;
    long long skipped_singular = 0;
};

// Integral of omega(det Y) |det Y|^{s-n-1} psi(-tr(B Y^{-1})) over p Sym_n(Z_p),
// as the Riemann sum over cosets mod p^K with 0 < ord det Y <= Vmax.
// B is diagonal with entries b_i = unit_i * p^{e_i}; n is 1 or 2.
NumericResult numeric_siegel_S0(const std::vector<Integer>& diag_B, Omega omega, const OracleConfig& cfg);
// Uses the least positive representative of each unit class.
NumericResult numeric_siegel_S0(const BMatrix& B, Omega omega, const OracleConfig& cfg);

struct OracleReport {
    long p = 0;
    double s = 0;
    int n = 0;
    int t = 0;
    Omega omega = Omega::Chi;
    std::complex<double> symbolic_value;
    std::complex<double> numeric_value;
    double abs_err = 0;
    double rel_err = 0;
    double tail_bound = 0;
    long long cosets_evaluated = 0;
    long long skipped_singular = 0;
    double tol = 0;
    bool pass = false;

    std::string to_text() const;
    std::string to_json() const;
};

OracleReport compare(const QsRational& symbolic, const BMatrix& B, Omega omega, const OracleConfig& cfg, double tol);

}  // namespace siegel
