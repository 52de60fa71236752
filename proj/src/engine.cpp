#include "siegel/engine.hpp"

#include <stdexcept>

namespace siegel {

namespace {

// chi(-1)^k
int minus_one_pow(int eps, long k) { return (eps < 0 && (k % 2 != 0)) ? -1 : 1; }

QsPolynomial alpha_pow(int eps, int n) { return QsPolynomial::alpha(eps).pow(static_cast<unsigned>(n)); }

// prod over fixed points i in the block of xi_{i, lambda}
QsPolynomial xi_product(const Involution& sigma, const std::vector<int>& block, int lambda, const BMatrix& B,
                        const FieldParams& params, Omega omega) {
    QsPolynomial prod = QsPolynomial::constant(params.eps, RingScalar(1));
    for (int i : block) {
        if (!sigma.fixes(i)) continue;
        prod *= omega == Omega::Chi ? xi_chi(i, lambda, B, params) : xi_triv(i, lambda, B, params);
        if (prod.is_zero()) break;
    }
    return prod;
}

QsPolynomial siegel_S0(const BMatrix& B, const FieldParams& params, Omega omega) {
    const int eps = params.eps;
    const int n = B.n();
    QsPolynomial total = QsPolynomial::zero(eps);
    for (const Involution& sigma : enumerate_involutions(n)) {
        QsPolynomial per_sigma = QsPolynomial::zero(eps);
        for (const StablePartition& part : enumerate_stable_partitions(sigma)) {
            const PartitionStats st = partition_stats(sigma, part);
            QsPolynomial nu_sum = QsPolynomial::zero(eps);
            for (const NuTuple& nu : enumerate_nu(sigma, part, B)) {
                QsPolynomial term = QsPolynomial::constant(eps, RingScalar(1));
                for (int l = 0; l <= part.r() && !term.is_zero(); ++l) {
                    const int lam = nu.lambda[l];
                    const int nl = st.n_up[l];
                    const int sign = omega == Omega::Chi ? minus_one_pow(eps, static_cast<long>(nu.nu[l]) * nl) : 1;
                    const ExponentKey key{nu.nu[l] * nl,
                                          -2 * nu.nu[l] * st.n_tri[l] + rho_tilde(sigma, part.blocks[l], lam, B).twice};
                    term = term.times_monomial(key).scaled(sign) *
                           xi_product(sigma, part.blocks[l], lam, B, params, omega);
                }
                nu_sum += term;
            }
            per_sigma += nu_sum.times_monomial({0, -2 * (st.c2 + st.tau + st.t_stat)});
        }
        total += per_sigma * one_minus_qinv(eps).pow(static_cast<unsigned>(sigma.transpositions()));
    }
    if (omega == Omega::Chi) total *= alpha_pow(eps, n);
    return total;
}

bool within_bounds(const OrbitRep& rep, const BMatrix& B) {
    for (int i = 0; i < rep.sigma.n(); ++i)
        if (rep.h[i] < h_lower_bound(rep.sigma, i, B)) return false;
    return true;
}

// product of the I* and I factors over the fixed points of sigma
QsPolynomial fixed_point_product(const OrbitRep& rep, const BMatrix& B, int eps) {
    const UnitClass minus_one = minus_one_class(eps);
    QsPolynomial prod = QsPolynomial::constant(eps, RingScalar(1));
    const int n = B.n();
    for (int i = 0; i < n && !prod.is_zero(); ++i) {
        if (!rep.sigma.fixes(i)) continue;
        const UnitClass sgn = minus_one * rep.epsv[i];
        prod *= gauss_Istar({sgn * B.units[i], rep.h[i] + B.e[i]}, eps);
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            prod *= gauss_I({sgn * B.units[k], rep.h[i] + B.e[k] + (k < i ? 0 : 2)}, eps);
        }
    }
    return prod;
}

int sum_h(const OrbitRep& rep) {
    int s = 0;
    for (int v : rep.h) s += v;
    return s;
}

}  // namespace

QsPolynomial siegel_S0_chi(const BMatrix& B, const FieldParams& params) { return siegel_S0(B, params, Omega::Chi); }

QsPolynomial siegel_S0_triv(const BMatrix& B, const FieldParams& params) {
    return siegel_S0(B, params, Omega::Trivial);
}

QsRational siegel_St_chi(const BMatrix& B, int t, const FieldParams& params) {
    const int n = B.n();
    if (t < 0 || t > n) throw std::invalid_argument("siegel_St_chi: t out of range");
    const int eps = params.eps;
    QsRational total(eps);
    for (const Involution& sigma : enumerate_involutions(n)) {
        for (const StablePartition& part : enumerate_stable_partitions(sigma)) {
            const PartitionStats st = partition_stats(sigma, part);
            const int r = part.r();
            for (int k = 0; k <= r + 1; ++k) {
                if (st.n_up[k] != t) continue;
                QsPolynomial nu_sum = QsPolynomial::zero(eps);
                for (const NuTuple& nu : enumerate_nu_k_t(sigma, part, k, B)) {
                    QsPolynomial term = QsPolynomial::constant(eps, RingScalar(1));
                    for (int l = 0; l < k && !term.is_zero(); ++l) {
                        const int lam = nu.lambda[l];
                        const int dn = st.n_up[l] - st.n_up[k];
                        const ExponentKey key{nu.nu[l] * dn, 2 * nu.nu[l] * (st.n_tri[k] - st.n_tri[l]) +
                                                                 rho_tilde(sigma, part.blocks[l], lam, B).twice};
                        term = term.times_monomial(key).scaled(minus_one_pow(eps, static_cast<long>(nu.nu[l]) * dn)) *
                               xi_product(sigma, part.blocks[l], lam, B, params, Omega::Chi);
                    }
                    nu_sum += term;
                }
                if (nu_sum.is_zero()) continue;
                int c1_tail = 0;
                for (int l = k; l <= r; ++l) c1_tail += st.c1_per_block[l];
                QsPolynomial num = nu_sum.times_monomial({0, 2 * (st.n_tri[k] - st.c2 - st.tau - st.t_stat)}) *
                                   one_minus_qinv(eps).pow(static_cast<unsigned>(st.c2 + c1_tail));
                QsRational term(num);
                for (int l = k; l <= r; ++l) term.divide_by_qm1(st.n_tri[l]);
                total += term;
            }
        }
    }
    total = total.scaled(alpha_pow(eps, n - t));
    return total.normalized();
}

QsPolynomial det_factor(const OrbitRep& rep, Omega omega, const FieldParams& params) {
    const int eps = params.eps;
    const int hs = sum_h(rep);
    int sign = 1;
    if (omega == Omega::Chi) {
        sign = minus_one_pow(eps, rep.sigma.transpositions()) * minus_one_pow(eps, hs);
        for (UnitClass e : rep.epsv) sign *= chi_of_unit(e);
    }
    return QsPolynomial::monomial(eps, {hs, 0}, RingScalar(sign));
}

QsPolynomial gauss_character_sum(const OrbitRep& rep, const BMatrix& B, const FieldParams& params) {
    const int eps = params.eps;
    if (!within_bounds(rep, B)) return QsPolynomial::zero(eps);
    const int n = B.n();
    const int c2 = rep.sigma.transpositions();
    const int d = d_stat(rep.sigma, rep.h, B);
    return fixed_point_product(rep, B, eps).times_monomial({0, 2 * d - n * (n - 1)}) *
           one_minus_qinv(eps).pow(static_cast<unsigned>(2 * c2));
}

QsPolynomial siegel_S0_orbit_sum(const BMatrix& B, Omega omega, const FieldParams& params) {
    const int eps = params.eps;
    const int n = B.n();
    const auto reps = enumerate_orbit_reps(n, B);
    QsPolynomial total = QsPolynomial::zero(eps);
    // reps arrive grouped by sigma; each group is divided by 2^{c1} once
    std::size_t pos = 0;
    while (pos < reps.size()) {
        const Involution& sigma = reps[pos].sigma;
        QsPolynomial group = QsPolynomial::zero(eps);
        for (; pos < reps.size() && reps[pos].sigma == sigma; ++pos) {
            const OrbitRep& rep = reps[pos];
            if (!within_bounds(rep, B)) continue;
            QsPolynomial prod = fixed_point_product(rep, B, eps);
            if (prod.is_zero()) continue;
            NuTuple nu;
            const StablePartition part = level_partition(rep.h, &nu);
            const PartitionStats st = partition_stats(sigma, part);
            int nu_n = 0;
            for (int l = 0; l <= part.r(); ++l) nu_n += nu.nu[l] * st.n_tri[l];
            // G / alpha with (1 - q^{-1})^{c2} cancelled and 2^{c1} deferred
            const int d = d_stat(sigma, rep.h, B);
            const int expo = d - st.tau - st.t_stat - st.c2 - nu_n;
            group += det_factor(rep, omega, params) * prod.times_monomial({0, 2 * expo});
        }
        const int c1 = sigma.fixed_points();
        const int c2 = sigma.transpositions();
        Integer two_c1 = Integer(1) << c1;
        total += group.divide_exact(two_c1) * one_minus_qinv(eps).pow(static_cast<unsigned>(c2));
    }
    return total;
}

QsRational identity_prop52(int n, const FieldParams& params) {
    if (n < 1) throw std::invalid_argument("identity_prop52: n >= 1");
    const int eps = params.eps;
    QsRational total(eps);
    for (const Involution& sigma : enumerate_involutions(n)) {
        const int c2 = sigma.transpositions();
        for (const StablePartition& part : enumerate_stable_partitions(sigma)) {
            const PartitionStats st = partition_stats(sigma, part);
            QsPolynomial num = one_minus_qinv(eps)
                                   .pow(static_cast<unsigned>(n - c2))
                                   .times_monomial({0, 2 * (st.n_tri[0] - c2 - st.tau - st.t_stat)});
            QsRational term(num);
            for (int l = 0; l <= part.r(); ++l) term.divide_by_qm1(st.n_tri[l]);
            total += term;
        }
    }
    return total.normalized();
}

QsRational evaluate(const SeriesRequest& req) {
    if (req.t < 0 || req.t > req.B.n()) throw std::invalid_argument("t must satisfy 0 <= t <= n");
    if (req.omega == Omega::Trivial) {
        if (req.t != 0) throw std::invalid_argument("the trivial character is supported only for t = 0");
        return QsRational(siegel_S0_triv(req.B, req.params));
    }
    if (req.t == 0) return QsRational(siegel_S0_chi(req.B, req.params));
    return siegel_St_chi(req.B, req.t, req.params);
}

}  // namespace siegel
