#include "siegel/closed_forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "siegel/engine.hpp"

namespace siegel {

namespace {

// Builds the displayed terms; exponents are given as (s-multiplier, twice the constant).
struct Terms {
    int eps;

    QsPolynomial m(int a, int b2, long c = 1) const { return QsPolynomial::monomial(eps, {a, b2}, RingScalar(c)); }
    QsPolynomial one() const { return m(0, 0); }
    // 1 - q^{a s + b2/2}
    QsPolynomial om(int a, int b2) const { return one() - m(a, b2); }
    QsPolynomial alpha_pow(int k) const { return QsPolynomial::alpha(eps).pow(static_cast<unsigned>(k)); }
};

int spow(int v, int k) { return (v < 0 && (k % 2 != 0)) ? -1 : 1; }

void require_n(const BMatrix& B, int n) {
    if (B.n() != n) throw std::invalid_argument("closed form: wrong matrix size");
}

}  // namespace

QsPolynomial ClosedValue::den_product() const {
    QsPolynomial p = QsPolynomial::constant(num.eps(), RingScalar(1));
    for (const auto& d : den) p *= d;
    return p;
}

std::complex<double> ClosedValue::eval(double q, std::complex<double> s, std::complex<double> alpha) const {
    return num.eval(q, s, alpha) / den_product().eval(q, s, alpha);
}

ClosedValue closed_value_n1(const BMatrix& B, const FieldParams& params) {
    require_n(B, 1);
    const Terms T{params.eps};
    const int c = params.eps, e1 = B.e[0], x1 = chi_of_unit(B.units[0]);
    QsPolynomial v = T.alpha_pow(1) * T.m(-(e1 + 1), 2 * (e1 + 1) - 1, spow(c, e1) * x1);
    return {v, {}};
}

QsPolynomial closed_n1(const BMatrix& B, const FieldParams& params) { return closed_value_n1(B, params).num; }

ClosedValue closed_value_n2(const BMatrix& B, int t, const FieldParams& params, N2Reading reading) {
    require_n(B, 2);
    if (t != 0 && t != 1) throw std::invalid_argument("closed_n2: t must be 0 or 1");
    const Terms T{params.eps};
    const int c = params.eps;
    const int e1 = B.e[0], e2 = B.e[1];
    const int x1 = chi_of_unit(B.units[0]), x2 = chi_of_unit(B.units[1]);
    const bool even = (e1 + e2) % 2 == 0;
    const QsPolynomial q_minus_1 = T.m(0, 2) - T.one();

    if (t == 0) {
        QsPolynomial body(c);
        const int top = even ? (e1 + e2) / 2 : (e1 + e2 + 1) / 2;
        for (int i = 1; i <= top; ++i) body += q_minus_1 * T.m(-2 * i, 6 * i - 4);
        if (even) {
            const int E = (e1 + e2) / 2 + 1;
            body -= T.m(-2 * E, 6 * E - 4);
        } else {
            // (3 - 2s)((e1 + e2)/2 + 1) - 3/2
            body += T.m(-(e1 + e2 + 2), 3 * (e1 + e2 + 2) - 3, c * x1 * x2);
        }
        return {body.scaled(c), {}};
    }

    const int D = e2 - e1;
    QsPolynomial pref = T.alpha_pow(1) * T.m(-(e1 + 1), 3 * (e1 + 1) + e1, spow(c, e1 + 1) * c * x1);
    if (even) return {pref * T.om(-2, 4) * T.om(-D, 3 * D), {T.om(-2, 6)}};
    const int w = c * x1 * x2;
    const int last = reading == N2Reading::Verbatim ? D : D + 1;
    QsPolynomial brace = T.one() - T.m(-1, 2, w) + T.m(-D, 3 * D - 1, w) - T.m(-last, 3 * last);
    return {pref * (T.one() + T.m(-1, 2, w)) * brace, {T.om(-2, 6)}};
}

namespace {

ClosedValue wh_n3(const BMatrix& B, int d, const Terms& T) {
    const int c = T.eps;
    const int e1 = B.e[0], e2 = B.e[1], e3 = B.e[2];
    const int x1 = chi_of_unit(B.units[0]), x2 = chi_of_unit(B.units[1]), x3 = chi_of_unit(B.units[2]);
    const int a12 = x1 * x2;
    const int n12 = c * x1 * x2;
    const bool even = (e1 + e2) % 2 == 0;
    const QsPolynomial one = T.one();

    if (d == 0 && even) {
        QsPolynomial pref = T.alpha_pow(3) * T.m(-(e1 + 3), -5, spow(c, e1));
        QsPolynomial t1 = T.m(0, 2 * (e1 + 1), x1) * T.om(0, -2) * T.om(-2, -2) * T.om(-(e2 - e1), e2 - e1);
        QsPolynomial t2 = T.m(-(e3 - e1), 0, c * x3 * spow(a12, e2 + e3 + 1)) * T.om(-2, 2) *
                          (T.m(0, e1 + e2) * T.om(0, -2) - T.m(-(e1 + e2), 0) * T.om(-2, -4));
        return {pref * (t1 + t2), {T.om(-2, -2), T.om(-2, 2)}};
    }
    if (d == 0) {
        QsPolynomial pref = T.alpha_pow(3) * T.m(-(e1 + 3), -5, spow(c, e1));
        const QsPolynomial tail = T.m(-(e3 - e2), 0, spow(n12, e2 + e3));
        QsPolynomial t1 = T.m(-(e2 - e1), e1 + e2 + 1, c * x2) * T.om(0, -2) * T.om(-2, -2) * T.om(-2, 2) *
                          (one - tail);
        QsPolynomial t2 = T.m(-(e2 - e1 + 1), e1 + e2 + 1, x1) * T.om(0, -2).pow(2) *
                          (T.m(0, 2) * T.om(-2, -2) + tail * T.om(-2, 2));
        QsPolynomial t3 = T.m(0, 2 * (e1 + 1), x1) * T.om(0, -2) * T.om(-2, 0) * T.om(-2, -2);
        QsPolynomial t4 = T.m(-(e2 + e3), 0, x1 * spow(n12, e2 + e3)) * T.om(-2, 0) * T.om(-2, -4) * T.om(-2, 2);
        return {pref * (t1 - t2 + t3 - t4), {T.om(-2, -2), T.om(-2, 0), T.om(-2, 2)}};
    }
    if (d == 1 && even) {
        QsPolynomial pref = T.m(-2, -2);
        QsPolynomial t1 = T.m(0, 2, c) * T.om(0, -6) * T.om(-2, -2);
        QsPolynomial t2 = T.m(-(e1 + e2), e1 + e2 + 2, c) * T.om(-2, -2) * T.om(-2, -4);
        QsPolynomial t3 = T.m(-(e1 + e3), e1 + e2, x2 * x3 * spow(a12, e2 + e3)) * T.om(-2, 2) * T.om(-2, -4) *
                          T.om(-(e2 - e1), -(e2 - e1));
        return {pref * (t1 - t2 + t3), {T.om(-2, -2), T.om(-2, 2)}};
    }
    if (d == 1) {
        QsPolynomial pref = T.m(-2, -2, c);
        const QsPolynomial tail = T.m(-(e3 - e2), 0, spow(n12, e2 + e3));
        QsPolynomial t1 = T.m(0, 2) * T.om(0, -6) * T.om(-2, 0) * T.om(-2, -2);
        QsPolynomial t2 = T.m(-(e1 + e2 + 1), e1 + e2 + 3) * T.om(0, -4) * T.om(-2, 0) * T.om(-2, -4);
        QsPolynomial t3 = T.m(-(e2 + e3), 2 * e1, spow(n12, e2 + e3)) * T.om(-2, 0) * T.om(-2, 2) * T.om(-2, -4);
        QsPolynomial t4 = (one - tail) * T.m(-(e1 + e2 + 1), e1 + e2 + 1) * T.om(0, -2) * T.om(-2, 2) * T.om(-2, -4);
        QsPolynomial t5 = (one - tail) * T.m(-(e1 + e2), e1 + e2 + 1, n12) * T.om(-2, -4) * T.om(-2, -2) *
                          T.om(-2, 2);
        return {pref * (t1 - t2 - t3 + t4 + t5), {T.om(-2, -2), T.om(-2, 0), T.om(-2, 2)}};
    }
    if (d == 2 && even) {
        QsPolynomial pref = T.alpha_pow(1) * T.m(-(e1 + 1), 2 * e1 - 1, spow(c, e1 + 1));
        QsPolynomial t1 = T.m(0, 2, c * x1) * T.om(-2, -2) * T.om(-(e2 - e1), e2 - e1);
        QsPolynomial t2 = T.m(-(e3 - e1), e2 - e1, spow(a12, e2 + e3 + 1) * x3) * T.om(-2, 2);
        return {pref * (t1 + t2), {T.om(-2, 2)}};
    }
    // d == 2, odd
    QsPolynomial pref = T.alpha_pow(1) * T.m(-(e1 + 1), 2 * e1, spow(c, e1));
    const QsPolynomial tail = T.m(-(e3 - e2), 0, spow(n12, e2 + e3));
    QsPolynomial t1 = T.m(-(e2 - e1), e2 - e1, c * x2) * T.om(-2, -2) * T.om(-2, 2) * (one - tail);
    QsPolynomial t2 = T.m(0, 1, x1) * T.om(-2, -2) * (T.om(-2, 0) - T.m(-(e2 - e1 + 1), e2 - e1 + 1) * T.om(0, -2));
    QsPolynomial t3 = T.m(-(e3 - e1 + 1), e2 - e1, x1 * spow(n12, e2 + e3)) * T.om(0, -2) * T.om(-2, 2);
    return {pref * (t1 + t2 - t3), {T.om(-2, 0), T.om(-2, 2)}};
}

QsRational divide_out(const ClosedValue& v) {
    auto q = v.num.divide_exact(v.den_product());
    if (!q) throw std::domain_error("closed form: numerator not divisible by its denominator");
    return QsRational(*q);
}

}  // namespace

ClosedValue closed_value_n3(const BMatrix& B, int d, const FieldParams& params) {
    require_n(B, 3);
    if (d < 0 || d > 3) throw std::invalid_argument("closed_n3: d must be in 0..3");
    const Terms T{params.eps};
    if (d == 3) return {T.one(), {}};
    ClosedValue wh = wh_n3(B, d, T);
    ClosedValue out{wh.num.shift_s(-2), {}};
    for (const auto& den : wh.den) out.den.push_back(den.shift_s(-2));
    return out;
}

QsRational closed_n2(const BMatrix& B, int t, const FieldParams& params, N2Reading reading) {
    return divide_out(closed_value_n2(B, t, params, reading));
}

QsRational closed_n3(const BMatrix& B, int d, const FieldParams& params) {
    return divide_out(closed_value_n3(B, d, params));
}

bool closed_matches(const ClosedValue& closed, const QsRational& value) {
    const QsRational norm = value.normalized();
    // closed.num * den(value) == value.num * prod closed.den
    return closed.num * norm.denominator_polynomial() == norm.num() * closed.den_product();
}

std::vector<ClosedMismatch> n3_mismatches(int max_e, int t) {
    std::vector<ClosedMismatch> out;
    for (int eps : {1, -1}) {
        const FieldParams fp = FieldParams::from_sign(eps);
        for (int e1 = 0; e1 <= max_e; ++e1)
            for (int e2 = e1; e2 <= max_e; ++e2)
                for (int e3 = e2; e3 <= max_e; ++e3)
                    for (int mask = 0; mask < 8; ++mask) {
                        std::vector<UnitClass> u(3);
                        for (int i = 0; i < 3; ++i)
                            u[i] = (mask >> i) & 1 ? UnitClass::Nonsquare : UnitClass::Square;
                        const BMatrix B({e1, e2, e3}, u);
                        const ClosedValue cv = closed_value_n3(B, t, fp);
                        const QsRational ev = siegel_St_chi(B, t, fp);
                        if (closed_matches(cv, ev)) continue;
                        auto q = cv.num.divide_exact(cv.den_product());
                        ClosedMismatch mm{B, eps, t, q ? render_text(*q) : render_text(cv.num) + " / (" +
                                                                              render_text(cv.den_product()) + ")",
                                          render_text(ev)};
                        out.push_back(std::move(mm));
                    }
    }
    std::stable_sort(out.begin(), out.end(), [](const ClosedMismatch& a, const ClosedMismatch& b) {
        int sa = 0, sb = 0;
        for (int v : a.B.e) sa += v;
        for (int v : b.B.e) sb += v;
        return sa < sb;
    });
    return out;
}

}  // namespace siegel
