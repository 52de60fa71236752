#include "siegel/algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace siegel {

std::optional<RingScalar> RingScalar::unit_inverse(int eps) const {
    Integer norm = x * x - eps * y * y;
    if (norm == 1) return RingScalar(x, Integer(-y));
    if (norm == -1) return RingScalar(Integer(-x), y);
    return std::nullopt;
}

RingScalar mul(const RingScalar& a, const RingScalar& b, int eps) {
    Integer yy = a.y * b.y;
    if (eps < 0) yy = -yy;
    return RingScalar(Integer(a.x * b.x + yy), Integer(a.x * b.y + a.y * b.x));
}

// ---------------------------------------------------------------------------
// QsPolynomial

QsPolynomial::QsPolynomial(int eps) : eps_(eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
}

QsPolynomial QsPolynomial::constant(int eps, RingScalar c) {
    return monomial(eps, {0, 0}, std::move(c));
}

QsPolynomial QsPolynomial::monomial(int eps, ExponentKey key, RingScalar c) {
    QsPolynomial p(eps);
    p.add_term(key, c);
    return p;
}

RingScalar QsPolynomial::coefficient(ExponentKey key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? RingScalar() : it->second;
}

void QsPolynomial::add_term(ExponentKey key, const RingScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void QsPolynomial::check_eps(const QsPolynomial& o) const {
    if (eps_ != o.eps_) throw std::invalid_argument("QsPolynomial: mismatched eps");
}

QsPolynomial QsPolynomial::operator-() const {
    QsPolynomial r(eps_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

QsPolynomial& QsPolynomial::operator+=(const QsPolynomial& o) {
    check_eps(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

QsPolynomial& QsPolynomial::operator-=(const QsPolynomial& o) {
    check_eps(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

QsPolynomial operator*(const QsPolynomial& a, const QsPolynomial& b) {
    a.check_eps(b);
    QsPolynomial r(a.eps_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, mul(ca, cb, a.eps_));
    return r;
}

QsPolynomial& QsPolynomial::operator*=(const QsPolynomial& o) {
    *this = *this * o;
    return *this;
}

bool QsPolynomial::operator==(const QsPolynomial& o) const {
    return eps_ == o.eps_ && terms_ == o.terms_;
}

QsPolynomial QsPolynomial::scaled(const RingScalar& c) const {
    QsPolynomial r(eps_);
    for (const auto& [k, v] : terms_) r.add_term(k, mul(v, c, eps_));
    return r;
}

QsPolynomial QsPolynomial::times_monomial(ExponentKey key) const {
    QsPolynomial r(eps_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(k + key, v);
    return r;
}

QsPolynomial QsPolynomial::pow(unsigned k) const {
    QsPolynomial result = constant(eps_, RingScalar(1));
    QsPolynomial base = *this;
    while (k > 0) {
        if (k & 1u) result *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return result;
}

QsPolynomial QsPolynomial::shift_s(int c) const {
    // q^{a(s+c) + b/2} = q^{as + (b + 2ac)/2}
    QsPolynomial r(eps_);
    for (const auto& [k, v] : terms_) r.terms_.emplace(ExponentKey{k.a, k.b + 2 * k.a * c}, v);
    return r;
}

QsPolynomial QsPolynomial::divide_exact(const Integer& d) const {
    if (d == 0) throw std::domain_error("division by zero");
    QsPolynomial r(eps_);
    for (const auto& [k, v] : terms_) {
        if (!mpz_divisible_p(v.x.get_mpz_t(), d.get_mpz_t()) ||
            !mpz_divisible_p(v.y.get_mpz_t(), d.get_mpz_t()))
            throw std::domain_error("coefficient not divisible");
        r.terms_.emplace(k, RingScalar(Integer(v.x / d), Integer(v.y / d)));
    }
    return r;
}

std::optional<QsPolynomial> QsPolynomial::divide_exact(const QsPolynomial& divisor) const {
    check_eps(divisor);
    if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return QsPolynomial(eps_);

    const auto& [lead_key, lead_coeff] = *divisor.terms_.rbegin();
    auto inv = lead_coeff.unit_inverse(eps_);
    if (!inv) return std::nullopt;

    // Every quotient exponent lies in this box when the division is exact.
    auto bounds = [](const QsPolynomial& p) {
        int amin = std::numeric_limits<int>::max(), amax = std::numeric_limits<int>::min();
        int bmin = amin, bmax = amax;
        for (const auto& [k, _] : p.terms_) {
            amin = std::min(amin, k.a);
            amax = std::max(amax, k.a);
            bmin = std::min(bmin, k.b);
            bmax = std::max(bmax, k.b);
        }
        return std::array<int, 4>{amin, amax, bmin, bmax};
    };
    auto nb = bounds(*this);
    auto db = bounds(divisor);
    const int qa_lo = nb[0] - db[0], qa_hi = nb[1] - db[1];
    const int qb_lo = nb[2] - db[2], qb_hi = nb[3] - db[3];

    QsPolynomial quotient(eps_);
    QsPolynomial rem = *this;
    while (!rem.is_zero()) {
        const auto& [rk, rc] = *rem.terms_.rbegin();
        ExponentKey qk = rk - lead_key;
        if (qk.a < qa_lo || qk.a > qa_hi || qk.b < qb_lo || qk.b > qb_hi) return std::nullopt;
        RingScalar qc = mul(rc, *inv, eps_);
        quotient.add_term(qk, qc);
        rem -= divisor.times_monomial(qk).scaled(qc);
    }
    return quotient;
}

std::complex<double> QsPolynomial::eval(double q, std::complex<double> s,
                                        std::complex<double> alpha) const {
    std::complex<double> sum = 0;
    const double lq = std::log(q);
    for (const auto& [k, v] : terms_) {
        std::complex<double> coeff = v.x.get_d() + v.y.get_d() * alpha;
        std::complex<double> expo = (static_cast<double>(k.a) * s + 0.5 * k.b) * lq;
        sum += coeff * std::exp(expo);
    }
    return sum;
}

double QsPolynomial::eval_abs(double q, std::complex<double> s, std::complex<double> alpha) const {
    double sum = 0;
    const double lq = std::log(q);
    for (const auto& [k, v] : terms_) {
        double coeff = std::abs(v.x.get_d()) + std::abs(v.y.get_d()) * std::abs(alpha);
        sum += coeff * std::exp((k.a * s.real() + 0.5 * k.b) * lq);
    }
    return sum;
}

ExponentKey QsPolynomial::min_key() const {
    if (terms_.empty()) throw std::domain_error("min_key of zero polynomial");
    return terms_.begin()->first;
}

ExponentKey QsPolynomial::max_key() const {
    if (terms_.empty()) throw std::domain_error("max_key of zero polynomial");
    return terms_.rbegin()->first;
}

QsPolynomial poly_add(const QsPolynomial& p1, const QsPolynomial& p2) { return p1 + p2; }
QsPolynomial poly_mul(const QsPolynomial& p1, const QsPolynomial& p2) { return p1 * p2; }
QsPolynomial poly_shift_s(const QsPolynomial& p, int c) { return p.shift_s(c); }

std::complex<double> poly_eval_numeric(const QsPolynomial& p, double q_val,
                                       std::complex<double> s_val, std::complex<double> alpha_val) {
    return p.eval(q_val, s_val, alpha_val);
}

QsPolynomial one_minus_qinv(int eps) {
    QsPolynomial p = QsPolynomial::qpow(eps, 0);
    p.add_term({0, -2}, RingScalar(-1));
    return p;
}

QsPolynomial q_power_minus_one(int eps, int m) {
    QsPolynomial p = QsPolynomial::qpow(eps, 2 * m);
    p.add_term({0, 0}, RingScalar(-1));
    return p;
}

// ---------------------------------------------------------------------------
// QsRational

QsRational& QsRational::divide_by_qm1(int m, int mult) {
    if (m < 1) throw std::invalid_argument("q^m - 1 needs m >= 1");
    if (mult == 0) return *this;
    int& slot = qm1_[m];
    slot += mult;
    if (slot == 0) qm1_.erase(m);
    return *this;
}

QsRational& QsRational::divide_by_qpow(int b) {
    qpow_b_ += b;
    return *this;
}

QsPolynomial QsRational::denominator_polynomial() const {
    QsPolynomial d = QsPolynomial::qpow(eps(), qpow_b_);
    for (const auto& [m, mult] : qm1_) d *= q_power_minus_one(eps(), m).pow(static_cast<unsigned>(mult));
    return d;
}

QsRational& QsRational::operator+=(const QsRational& o) {
    if (eps() != o.eps()) throw std::invalid_argument("QsRational: mismatched eps");
    // Common denominator: factor-wise maximum of the two multisets.
    std::map<int, int> lcm = qm1_;
    for (const auto& [m, mult] : o.qm1_) lcm[m] = std::max(lcm[m], mult);
    const int qpow = std::max(qpow_b_, o.qpow_b_);

    auto lift = [&](const QsRational& r) {
        QsPolynomial n = r.num_.times_monomial({0, qpow - r.qpow_b_});
        for (const auto& [m, mult] : lcm) {
            auto it = r.qm1_.find(m);
            int have = it == r.qm1_.end() ? 0 : it->second;
            if (mult > have) n *= q_power_minus_one(eps(), m).pow(static_cast<unsigned>(mult - have));
        }
        return n;
    };
    num_ = lift(*this) + lift(o);
    qm1_ = std::move(lcm);
    qpow_b_ = qpow;
    return *this;
}

QsRational& QsRational::operator*=(const QsRational& o) {
    num_ *= o.num_;
    for (const auto& [m, mult] : o.qm1_) divide_by_qm1(m, mult);
    qpow_b_ += o.qpow_b_;
    return *this;
}

QsRational QsRational::scaled(const QsPolynomial& p) const {
    QsRational r = *this;
    r.num_ *= p;
    return r;
}

QsRational QsRational::shift_s(int c) const {
    QsRational r = *this;
    r.num_ = num_.shift_s(c);
    return r;
}

QsRational QsRational::normalized() const {
    QsRational r(num_.times_monomial({0, -qpow_b_}));
    for (const auto& [m, mult] : qm1_) {
        QsPolynomial factor = q_power_minus_one(eps(), m);
        int left = mult;
        while (left > 0) {
            auto quotient = r.num_.divide_exact(factor);
            if (!quotient) break;
            r.num_ = std::move(*quotient);
            --left;
        }
        if (left > 0) r.qm1_[m] = left;
    }
    return r;
}

std::complex<double> QsRational::eval(double q, std::complex<double> s, std::complex<double> alpha) const {
    std::complex<double> d = std::pow(q, 0.5 * qpow_b_);
    for (const auto& [m, mult] : qm1_) d *= std::pow(std::pow(q, m) - 1.0, mult);
    return num_.eval(q, s, alpha) / d;
}

bool rat_equal(const QsRational& r1, const QsRational& r2) {
    if (r1.eps() != r2.eps()) throw std::invalid_argument("rat_equal: mismatched eps");
    return r1.num() * r2.denominator_polynomial() == r2.num() * r1.denominator_polynomial();
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_scalar(const RingScalar& c) {
    std::ostringstream os;
    auto alpha_part = [](const Integer& y) {
        if (y == 1) return std::string("a");
        if (y == -1) return std::string("-a");
        return y.get_str() + "a";
    };
    if (c.y == 0) {
        os << c.x.get_str();
    } else if (c.x == 0) {
        os << alpha_part(c.y);
    } else {
        os << '(' << c.x.get_str() << (c.y > 0 ? " + " : " - ") << alpha_part(Integer(abs(c.y))) << ')';
    }
    return os.str();
}

std::string render_exponent(ExponentKey key) {
    std::string out;
    if (key.a != 0) {
        if (key.a == 1) out = "s";
        else if (key.a == -1) out = "-s";
        else out = std::to_string(key.a) + "s";
    }
    if (key.b != 0) {
        const int mag = std::abs(key.b);
        std::string c = (mag % 2 == 0) ? std::to_string(mag / 2) : std::to_string(mag) + "/2";
        if (out.empty()) out = (key.b < 0 ? "-" : "") + c;
        else out += (key.b < 0 ? " - " : " + ") + c;
    }
    return out;
}

namespace {

std::string render_term(ExponentKey key, const RingScalar& c) {
    if (key.a == 0 && key.b == 0) return render_scalar(c);
    std::string mono = "q^{" + render_exponent(key) + "}";
    if (c == RingScalar(1)) return mono;
    if (c == RingScalar(-1)) return "-" + mono;
    return render_scalar(c) + "*" + mono;
}

std::string render_qm1_den(const QsRational& r) {
    std::vector<std::string> factors;
    if (r.qpow_b() != 0) {
        factors.push_back("q^{" + render_exponent({0, r.qpow_b()}) + "}");
    }
    for (const auto& [m, mult] : r.qm1_factors()) {
        std::string f = m == 1 ? "(q - 1)" : "(q^{" + std::to_string(m) + "} - 1)";
        if (mult > 1) f += "^{" + std::to_string(mult) + "}";
        factors.push_back(f);
    }
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
    return out;
}

std::string latex_scalar(const RingScalar& c) {
    std::string s = render_scalar(c);
    std::string out;
    for (char ch : s) {
        if (ch == 'a') out += "\\alpha";
        else out += ch;
    }
    return out;
}

std::string latex_exponent(ExponentKey key) {
    std::string out;
    if (key.a != 0) {
        if (key.a == 1) out = "s";
        else if (key.a == -1) out = "-s";
        else out = std::to_string(key.a) + "s";
    }
    if (key.b != 0) {
        const int mag = std::abs(key.b);
        std::string c = (mag % 2 == 0) ? std::to_string(mag / 2) : "\\frac{" + std::to_string(mag) + "}{2}";
        if (out.empty()) out = (key.b < 0 ? "-" : "") + c;
        else out += (key.b < 0 ? "-" : "+") + c;
    }
    return out;
}

}  // namespace

std::string render_text(const QsPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        std::string t = render_term(it->first, it->second);
        if (first) out = t;
        else if (t.front() == '-') out += " - " + t.substr(1);
        else out += " + " + t;
        first = false;
    }
    return out;
}

std::string render_text(const QsRational& r) {
    if (!r.has_denominator()) return render_text(r.num());
    std::string n = render_text(r.num());
    if (r.num().size() > 1) n = "(" + n + ")";
    std::string d = render_qm1_den(r);
    if (r.qm1_factors().size() + (r.qpow_b() != 0 ? 1 : 0) > 1) d = "(" + d + ")";
    return n + " / " + d;
}

std::string render_latex(const QsPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [key, c] = *it;
        std::string t;
        if (key.a == 0 && key.b == 0) {
            t = latex_scalar(c);
        } else {
            std::string mono = "q^{" + latex_exponent(key) + "}";
            if (c == RingScalar(1)) t = mono;
            else if (c == RingScalar(-1)) t = "-" + mono;
            else t = latex_scalar(c) + " " + mono;
        }
        if (first) out = t;
        else if (t.front() == '-') out += " - " + t.substr(1);
        else out += " + " + t;
        first = false;
    }
    return out;
}

std::string render_latex(const QsRational& r) {
    if (!r.has_denominator()) return render_latex(r.num());
    std::string d = render_qm1_den(r);
    std::string dl;
    for (char ch : d) dl += (ch == '*') ? ' ' : ch;
    return "\\frac{" + render_latex(r.num()) + "}{" + dl + "}";
}

}  // namespace siegel
