#include "siegel/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace siegel {

BMatrix::BMatrix(std::vector<int> e_, std::vector<UnitClass> units_) : e(std::move(e_)), units(std::move(units_)) {
    if (e.size() != units.size()) throw std::invalid_argument("BMatrix: valuations and units differ in length");
    if (e.empty()) throw std::invalid_argument("BMatrix: empty");
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] < 0) throw std::invalid_argument("BMatrix: negative valuation");
        if (i > 0 && e[i] < e[i - 1]) throw std::invalid_argument("BMatrix: valuations must be ascending");
    }
}

BMatrix::BMatrix(std::vector<int> e_) : BMatrix(e_, std::vector<UnitClass>(e_.size(), UnitClass::Square)) {}

Involution::Involution(std::vector<int> p) : perm(std::move(p)) {
    const int n = static_cast<int>(perm.size());
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n || perm[perm[i]] != i)
            throw std::invalid_argument("Involution: not a self-inverse permutation");
    }
}

Involution Involution::identity(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[i] = i;
    return Involution(std::move(p));
}

int Involution::fixed_points() const {
    int c = 0;
    for (int i = 0; i < n(); ++i) c += fixes(i);
    return c;
}

std::vector<Involution> enumerate_involutions(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_involutions: n >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> perm(static_cast<std::size_t>(n), -1);
    // The first unassigned point is either fixed or paired with a later one.
    std::function<void()> rec = [&]() {
        auto it = std::find(perm.begin(), perm.end(), -1);
        if (it == perm.end()) {
            out.push_back(perm);
            return;
        }
        const int i = static_cast<int>(it - perm.begin());
        perm[i] = i;
        rec();
        for (int j = i + 1; j < n; ++j) {
            if (perm[j] != -1) continue;
            perm[i] = j;
            perm[j] = i;
            rec();
            perm[j] = -1;
        }
        perm[i] = -1;
    };
    rec();
    std::sort(out.begin(), out.end());
    std::vector<Involution> result;
    result.reserve(out.size());
    for (auto& p : out) result.emplace_back(std::move(p));
    return result;
}

std::vector<StablePartition> enumerate_stable_partitions(const Involution& sigma) {
    // sigma-orbits, in order of their smallest element
    std::vector<std::vector<int>> orbits;
    for (int i = 0; i < sigma.n(); ++i) {
        if (sigma(i) < i) continue;
        if (sigma.fixes(i)) orbits.push_back({i});
        else orbits.push_back({i, sigma(i)});
    }
    const int m = static_cast<int>(orbits.size());

    std::vector<StablePartition> result;
    // Unordered set partitions of the orbits as restricted growth strings,
    // then every ordering of the blocks.
    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int pos, int nblocks) {
        if (pos == m) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nblocks));
            for (int o = 0; o < m; ++o)
                for (int x : orbits[o]) blocks[rgs[o]].push_back(x);
            for (auto& b : blocks) std::sort(b.begin(), b.end());
            std::vector<int> order(static_cast<std::size_t>(nblocks));
            for (int i = 0; i < nblocks; ++i) order[i] = i;
            do {
                StablePartition sp;
                for (int idx : order) sp.blocks.push_back(blocks[idx]);
                result.push_back(std::move(sp));
            } while (std::next_permutation(order.begin(), order.end()));
            return;
        }
        for (int b = 0; b <= nblocks; ++b) {
            rgs[pos] = b;
            rec(pos + 1, std::max(nblocks, b + 1));
        }
    };
    rec(0, 0);
    return result;
}

PartitionStats partition_stats(const Involution& sigma, const StablePartition& partition) {
    PartitionStats st;
    const int n = sigma.n();
    const int nb = static_cast<int>(partition.blocks.size());
    st.c1 = sigma.fixed_points();
    st.c2 = sigma.transpositions();
    std::vector<int> block_of(static_cast<std::size_t>(n), -1);
    for (int l = 0; l < nb; ++l) {
        int fixed = 0;
        for (int i : partition.blocks[l]) {
            block_of[i] = l;
            fixed += sigma.fixes(i);
        }
        st.c1_per_block.push_back(fixed);
        st.n_k.push_back(static_cast<int>(partition.blocks[l].size()));
    }
    st.n_up.assign(static_cast<std::size_t>(nb + 1), 0);
    for (int l = nb - 1; l >= 0; --l) st.n_up[l] = st.n_up[l + 1] + st.n_k[l];
    for (int v : st.n_up) st.n_tri.push_back(v * (v + 1) / 2);

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (block_of[j] < block_of[i]) ++st.tau;

    for (const auto& block : partition.blocks)
        for (int i : block)
            for (int j : block)
                if (i < j && j < sigma(i) && sigma(j) < sigma(i)) ++st.t_stat;
    return st;
}

int e_sigma_ik(const Involution& sigma, int i, int k) {
    const int si = sigma(i);
    if (k <= i && k <= si) return 0;
    if (i < k && si < k) return 2;
    return 1;
}

int b_l(const Involution& sigma, const std::vector<int>& block, const BMatrix& B) {
    int best = std::numeric_limits<int>::max();
    for (int i : block) best = std::min(best, sigma(i) > i ? B.e[i] : B.e[i] + 1);
    return best;
}

namespace {
bool parity_differs(int a, int b) { return ((a - b) % 2) != 0; }
}  // namespace

std::vector<int> B_i_lambda(int i, int lambda, const BMatrix& B) {
    std::vector<int> out;
    for (int k = 0; k < B.n(); ++k) {
        if (k == i) continue;
        const int shift = k < i ? 0 : 2;
        if (B.e[k] + lambda + shift < 0 && parity_differs(B.e[k], lambda)) out.push_back(k);
    }
    return out;
}

HalfInteger rho_tilde(const Involution& sigma, const std::vector<int>& block, int lambda, const BMatrix& B) {
    int sum = 0;
    for (int i : block)
        for (int k = 0; k < B.n(); ++k) sum += std::min(B.e[k] + e_sigma_ik(sigma, i, k) + lambda, 0);
    return HalfInteger{sum};
}

int d_stat(const Involution& sigma, const std::vector<int>& h, const BMatrix& B) {
    int d = 0;
    const int n = sigma.n();
    for (int i = 0; i < n; ++i) {
        const int si = sigma(i);
        if (si <= i) continue;
        for (int k = 0; k < i; ++k) d += std::min(h[i] + B.e[k], 0);
        for (int k = i + 1; k < si; ++k) d += std::min(h[i] + B.e[k] + 1, 0);
        for (int k = si + 1; k < n; ++k) d += std::min(h[i] + B.e[k] + 2, 0);
    }
    return d;
}

std::vector<NuTuple> enumerate_nu_k_t(const Involution& sigma, const StablePartition& partition, int k,
                                      const BMatrix& B) {
    if (k < 0 || k > static_cast<int>(partition.blocks.size()))
        throw std::invalid_argument("enumerate_nu_k_t: k out of range");
    std::vector<int> lower(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) lower[l] = -b_l(sigma, partition.blocks[l], B);

    std::vector<NuTuple> out;
    NuTuple cur;
    // lambda strictly increasing with lambda_l in [-b_l, -1]
    std::function<void(int)> rec = [&](int l) {
        if (l == k) {
            out.push_back(cur);
            return;
        }
        const int lo = (l == 0) ? lower[0] : std::max(lower[l], cur.lambda.back() + 1);
        for (int lam = lo; lam <= -1; ++lam) {
            cur.lambda.push_back(lam);
            cur.nu.push_back(l == 0 ? lam : lam - cur.lambda[cur.lambda.size() - 2]);
            rec(l + 1);
            cur.lambda.pop_back();
            cur.nu.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<NuTuple> enumerate_nu(const Involution& sigma, const StablePartition& partition, const BMatrix& B) {
    return enumerate_nu_k_t(sigma, partition, static_cast<int>(partition.blocks.size()), B);
}

int h_lower_bound(const Involution& sigma, int i, const BMatrix& B) {
    return sigma(i) > i ? -B.e[i] : -B.e[i] - 1;
}

std::vector<OrbitRep> enumerate_orbit_reps(int n, const BMatrix& B) {
    if (B.n() != n) throw std::invalid_argument("enumerate_orbit_reps: size mismatch");
    std::vector<OrbitRep> out;
    for (const Involution& sigma : enumerate_involutions(n)) {
        // one exponent per orbit, bounded by both members' constraints
        std::vector<int> reps;
        for (int i = 0; i < n; ++i)
            if (sigma(i) >= i) reps.push_back(i);
        std::vector<int> lo(reps.size());
        for (std::size_t r = 0; r < reps.size(); ++r) {
            const int i = reps[r];
            lo[r] = std::max(h_lower_bound(sigma, i, B), h_lower_bound(sigma, sigma(i), B));
        }
        std::vector<int> fixed;
        for (int i = 0; i < n; ++i)
            if (sigma.fixes(i)) fixed.push_back(i);

        std::vector<int> h(static_cast<std::size_t>(n), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t r) {
            if (r == reps.size()) {
                const std::size_t count = std::size_t{1} << fixed.size();
                for (std::size_t mask = 0; mask < count; ++mask) {
                    std::vector<UnitClass> epsv(static_cast<std::size_t>(n), UnitClass::Square);
                    for (std::size_t f = 0; f < fixed.size(); ++f)
                        if (mask & (std::size_t{1} << f)) epsv[fixed[f]] = UnitClass::Nonsquare;
                    out.push_back(OrbitRep{sigma, h, std::move(epsv)});
                }
                return;
            }
            for (int v = lo[r]; v <= -1; ++v) {
                h[reps[r]] = v;
                h[sigma(reps[r])] = v;
                rec(r + 1);
            }
        };
        rec(0);
    }
    return out;
}

StablePartition level_partition(const std::vector<int>& h, NuTuple* nu_out) {
    std::map<int, std::vector<int>> levels;
    for (int i = 0; i < static_cast<int>(h.size()); ++i) levels[h[i]].push_back(i);
    StablePartition sp;
    NuTuple nu;
    for (const auto& [value, members] : levels) {
        sp.blocks.push_back(members);
        nu.nu.push_back(nu.lambda.empty() ? value : value - nu.lambda.back());
        nu.lambda.push_back(value);
    }
    if (nu_out) *nu_out = std::move(nu);
    return sp;
}

}  // namespace siegel
