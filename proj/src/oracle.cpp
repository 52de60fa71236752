#include "siegel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace siegel {

PadicSymMatrix::PadicSymMatrix(long p_, int K_, std::vector<std::vector<Rational>> entries_)
    : p(p_), K(K_), entries(std::move(entries_)) {
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("PadicSymMatrix: p must be an odd prime");
    if (K < 1) throw std::invalid_argument("PadicSymMatrix: precision K must be >= 1");
    const std::size_t n = entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (entries[i].size() != n) throw std::invalid_argument("PadicSymMatrix: not square");
        for (std::size_t j = 0; j < n; ++j) {
            if (entries[i][j] != entries[j][i]) throw std::invalid_argument("PadicSymMatrix: not symmetric");
            if (entries[i][j] != 0 && valuation(entries[i][j], p) < 0)
                throw std::invalid_argument("PadicSymMatrix: entry is not p-integral");
        }
    }
}

JordanForm JordanForm::canonical() const {
    JordanForm out = *this;
    std::size_t i = 0;
    while (i < out.valuations.size()) {
        std::size_t j = i;
        UnitClass prod = UnitClass::Square;
        while (j < out.valuations.size() && out.valuations[j] == out.valuations[i]) prod = prod * out.classes[j++];
        for (std::size_t k = i; k < j; ++k) out.classes[k] = UnitClass::Square;
        out.classes[j - 1] = prod;
        i = j;
    }
    return out;
}

JordanForm jordan_diagonalize(const PadicSymMatrix& S) {
    const long p = S.p;
    auto M = S.entries;
    const int n = S.n();
    auto val = [&](const Rational& x) { return x == 0 ? std::numeric_limits<int>::max() : valuation(x, p); };

    std::vector<bool> done(static_cast<std::size_t>(n), false);
    std::vector<std::pair<int, UnitClass>> diag;
    for (int step = 0; step < n; ++step) {
        int best = std::numeric_limits<int>::max(), bi = -1, bj = -1;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            for (int j = i; j < n; ++j) {
                if (done[j]) continue;
                const int v = val(M[i][j]);
                // a diagonal entry wins ties
                if (v < best || (v == best && i == j && bi != bj)) { best = v; bi = i; bj = j; }
            }
        }
        if (best >= S.K) throw std::domain_error("jordan_diagonalize: precision exhausted");
        if (bi != bj) {
            // row/col bi += row/col bj makes the diagonal entry 2 M_ij + ... of valuation best
            for (int k = 0; k < n; ++k) M[bi][k] += M[bj][k];
            for (int k = 0; k < n; ++k) M[k][bi] += M[k][bj];
        }
        const int i = bi;
        const Rational pivot = M[i][i];
        for (int k = 0; k < n; ++k) {
            if (done[k] || k == i || M[k][i] == 0) continue;
            const Rational f = M[k][i] / pivot;
            for (int j = 0; j < n; ++j) M[k][j] -= f * M[i][j];
            for (int j = 0; j < n; ++j) M[j][k] -= f * M[j][i];
        }
        done[i] = true;
        const Rational u = unit_part(pivot, p);
        const int leg = legendre(u.get_num(), p) * legendre(u.get_den(), p);
        diag.emplace_back(valuation(pivot, p), leg == 1 ? UnitClass::Square : UnitClass::Nonsquare);
    }
    std::stable_sort(diag.begin(), diag.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    JordanForm out;
    for (const auto& [v, c] : diag) {
        out.valuations.push_back(v);
        out.classes.push_back(c);
    }
    return out;
}

void OracleConfig::validate(int n) const {
    if (n != 1 && n != 2) throw std::invalid_argument("oracle: n must be 1 or 2");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("oracle: p must be an odd prime");
    if (!(s_val > n + 1)) throw std::invalid_argument("oracle: needs s > n + 1");
    if (Vmax < 1) throw std::invalid_argument("oracle: Vmax must be >= 1");
    if (K <= Vmax || K < 2 * Vmax - 2 * (n - 1))
        throw std::invalid_argument("oracle: K must satisfy K > Vmax and K >= 2 Vmax - 2(n - 1)");
    if (jobs < 1) throw std::invalid_argument("oracle: jobs must be >= 1");
}

OracleConfig OracleConfig::defaults(const BMatrix& B, long p, double s_val) {
    OracleConfig cfg;
    cfg.p = p;
    cfg.s_val = s_val;
    if (B.n() == 1) {
        cfg.Vmax = B.e[0] + 3;
        cfg.K = 2 * cfg.Vmax;
    } else {
        int reach = 0;
        for (int e : B.e) reach += e + 1;
        cfg.Vmax = std::max(3, reach);
        cfg.K = 2 * cfg.Vmax - 1;
    }
    return cfg;
}

namespace {

using i128 = __int128;

long long ipow(long p, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

long long mod(i128 a, long long m) {
    i128 r = a % m;
    if (r < 0) r += m;
    return static_cast<long long>(r);
}

long long inverse_mod(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        const long long q = g / a1;
        std::tie(g, a1) = std::make_pair(a1, g - q * a1);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::logic_error("inverse_mod: not a unit");
    return mod(x, m);
}

// Signed coset counts indexed by [ord det][k], for phase exp(2 pi i k / p^ord).
struct Tally {
    std::vector<std::vector<long long>> counts;
    long long evaluated = 0;
    long long singular = 0;

    Tally(long p, int Vmax) : counts(static_cast<std::size_t>(Vmax + 1)) {
        for (int v = 0; v <= Vmax; ++v) counts[v].assign(static_cast<std::size_t>(ipow(p, v)), 0);
    }
    void merge(const Tally& o) {
        for (std::size_t v = 0; v < counts.size(); ++v)
            for (std::size_t k = 0; k < counts[v].size(); ++k) counts[v][k] += o.counts[v][k];
        evaluated += o.evaluated;
        singular += o.singular;
    }
};

struct Context {
    long p;
    int K;
    int Vmax;
    Omega omega;
    int eps;                 // chi(-1)
    std::vector<int> chi_mod_p;  // Legendre symbol of residues

    // Adds the coset with determinant det and numerator N of tr(B Y^{-1}) = N / det.
    void add(Tally& tally, i128 det, i128 N) const {
        if (det == 0) { ++tally.singular; return; }
        int v = 0;
        while (v < K && det % p == 0) { det /= p; ++v; }
        if (v >= K) { ++tally.singular; return; }
        if (v > Vmax) return;
        ++tally.evaluated;
        const long long pv = ipow(p, v);
        int sign = 1;
        if (omega == Omega::Chi) {
            sign = chi_mod_p[static_cast<std::size_t>(mod(det, p))];
            if (eps < 0 && (v & 1)) sign = -sign;
        }
        // {-N / (p^v u)} = (-N u^{-1} mod p^v) / p^v
        const long long k = pv == 1 ? 0 : mod(-N % pv * inverse_mod(mod(det, pv), pv), pv);
        tally.counts[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)] += sign;
    }
};

// Neumaier summation
struct CompensatedSum {
    double sum = 0, c = 0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) c += (sum - t) + x;
        else c += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

template <class Body>
Tally run_chunks(const Context& ctx, long long chunks, unsigned jobs, Body body) {
    Tally total(ctx.p, ctx.Vmax);
    const unsigned workers = static_cast<unsigned>(std::min<long long>(jobs, std::max<long long>(chunks, 1)));
    std::vector<Tally> partial(workers, Tally(ctx.p, ctx.Vmax));
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&, w]() {
            for (long long c = w; c < chunks; c += workers) body(partial[w], c);
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& t : partial) total.merge(t);
    return total;
}

}  // namespace

NumericResult numeric_siegel_S0(const std::vector<Integer>& diag_B, Omega omega, const OracleConfig& cfg) {
    const int n = static_cast<int>(diag_B.size());
    cfg.validate(n);
    const long p = cfg.p;
    for (const auto& b : diag_B)
        if (b == 0) throw std::invalid_argument("oracle: B must be nondegenerate");
    if (static_cast<double>(cfg.K) * std::log(static_cast<double>(p)) > 40.0)
        throw std::invalid_argument("oracle: p^K too large for 64-bit coset arithmetic");

    Context ctx{p, cfg.K, cfg.Vmax, omega, (p % 4 == 1) ? 1 : -1, std::vector<int>(static_cast<std::size_t>(p), 0)};
    for (long r = 1; r < p; ++r) ctx.chi_mod_p[static_cast<std::size_t>(r)] = legendre(r, p);

    const long long pK = ipow(p, cfg.K);
    const long long steps = pK / p;  // elements of p Z_p / p^K
    std::vector<long long> b;
    for (const auto& x : diag_B) b.push_back(mod(static_cast<i128>(Integer(x % Integer(static_cast<long>(pK))).get_si()), pK));

    Tally tally(p, cfg.Vmax);
    if (n == 1) {
        const long long chunk = 4096;
        const long long chunks = (steps + chunk - 1) / chunk;
        tally = run_chunks(ctx, chunks, cfg.jobs, [&](Tally& t, long long c) {
            for (long long i = c * chunk; i < std::min(steps, (c + 1) * chunk); ++i) ctx.add(t, i128(i) * p, b[0]);
        });
    } else {
        tally = run_chunks(ctx, steps, cfg.jobs, [&](Tally& t, long long ia) {
            const i128 a = i128(ia) * p;
            for (long long ib = 0; ib < steps; ++ib) {
                const i128 bb = i128(ib) * p;
                for (long long ic = 0; ic < steps; ++ic) {
                    const i128 c = i128(ic) * p;
                    // Y = [[a, bb], [bb, c]], tr(B Y^{-1}) = (b1 c + b2 a) / det
                    ctx.add(t, a * c - bb * bb, b[0] * c + b[1] * a);
                }
            }
        });
    }

    const double sigma = cfg.s_val - n - 1;
    const double weight_log = -static_cast<double>(cfg.K) * n * (n + 1) / 2.0;
    CompensatedSum re, im;
    for (int v = 1; v <= cfg.Vmax; ++v) {
        const double pv = static_cast<double>(ipow(p, v));
        const double scale = std::pow(static_cast<double>(p), weight_log - v * sigma);
        for (std::size_t k = 0; k < tally.counts[v].size(); ++k) {
            const long long cnt = tally.counts[v][k];
            if (cnt == 0) continue;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / pv;
            re.add(scale * static_cast<double>(cnt) * std::cos(angle));
            im.add(scale * static_cast<double>(cnt) * std::sin(angle));
        }
    }
    NumericResult out;
    out.value = {re.value(), im.value()};
    const double pd = static_cast<double>(p);
    out.tail_bound = std::pow(pd, -n * (n + 1) / 2.0) * std::pow(pd, -(cfg.Vmax + 1) * sigma) / (1.0 - std::pow(pd, -sigma));
    out.cosets_evaluated = tally.evaluated;
    out.skipped_singular = tally.singular;
    return out;
}

NumericResult numeric_siegel_S0(const BMatrix& B, Omega omega, const OracleConfig& cfg) {
    std::vector<Integer> diag;
    for (int i = 0; i < B.n(); ++i) {
        Integer pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(cfg.p), static_cast<unsigned long>(B.e[i]));
        diag.push_back(Integer(unit_representative(B.units[i], cfg.p)) * pe);
    }
    return numeric_siegel_S0(diag, omega, cfg);
}

OracleReport compare(const QsRational& symbolic, const BMatrix& B, Omega omega, const OracleConfig& cfg, double tol) {
    const NumericResult num = numeric_siegel_S0(B, omega, cfg);
    OracleReport r;
    r.p = cfg.p;
    r.s = cfg.s_val;
    r.n = B.n();
    r.omega = omega;
    r.symbolic_value = symbolic.eval(static_cast<double>(cfg.p), cfg.s_val, weil_constant(Rational(1, cfg.p), cfg.p));
    r.numeric_value = num.value;
    r.abs_err = std::abs(r.symbolic_value - r.numeric_value);
    const double mag = std::abs(r.symbolic_value);
    r.rel_err = mag > 0 ? r.abs_err / mag : r.abs_err;
    r.tail_bound = num.tail_bound;
    r.cosets_evaluated = num.cosets_evaluated;
    r.skipped_singular = num.skipped_singular;
    r.tol = tol;
    r.pass = r.rel_err < tol;
    return r;
}

namespace {

std::string complex_text(std::complex<double> z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

}  // namespace

std::string OracleReport::to_text() const {
    std::ostringstream os;
    os.precision(6);
    os << "p = " << p << ", s = " << s << ", n = " << n << ", t = " << t
       << ", omega = " << (omega == Omega::Chi ? "chi" : "triv") << "\n"
       << "symbolic: " << complex_text(symbolic_value) << "\n"
       << "numeric:  " << complex_text(numeric_value) << "\n"
       << std::scientific << "abs_err = " << abs_err << ", rel_err = " << rel_err << ", tail_bound = " << tail_bound
       << "\n"
       << "cosets = " << cosets_evaluated << ", singular = " << skipped_singular << "\n"
       << (pass ? "PASS" : "FAIL") << ": rel_err " << (pass ? "< " : ">= ") << tol << "\n";
    return os.str();
}

std::string OracleReport::to_json() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["s"] = s;
    j["n"] = n;
    j["t"] = t;
    j["omega"] = omega == Omega::Chi ? "chi" : "triv";
    j["symbolic_value"] = {symbolic_value.real(), symbolic_value.imag()};
    j["numeric_value"] = {numeric_value.real(), numeric_value.imag()};
    j["abs_err"] = abs_err;
    j["rel_err"] = rel_err;
    j["tail_bound"] = tail_bound;
    j["cosets_evaluated"] = cosets_evaluated;
    j["skipped_singular"] = skipped_singular;
    j["tol"] = tol;
    j["pass"] = pass;
    return j.dump(2);
}

}  // namespace siegel
