#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "siegel/combinatorics.hpp"

using namespace siegel;

namespace {

// involutions by filtering all permutations
std::vector<std::vector<int>> brute_involutions(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < n; ++i) ok = ok && p[p[i]] == i;
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// ordered set partitions: assign each point a block label, keep surjective
// labellings, then keep the sigma-stable ones
std::set<std::vector<std::vector<int>>> brute_stable_partitions(const Involution& sigma) {
    const int n = sigma.n();
    std::set<std::vector<std::vector<int>>> out;
    std::vector<int> label(static_cast<std::size_t>(n), 0);
    for (int nb = 1; nb <= n; ++nb) {
        long total = 1;
        for (int i = 0; i < n; ++i) total *= nb;
        for (long code = 0; code < total; ++code) {
            long c = code;
            for (int i = 0; i < n; ++i) { label[i] = static_cast<int>(c % nb); c /= nb; }
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nb));
            for (int i = 0; i < n; ++i) blocks[label[i]].push_back(i);
            bool ok = std::none_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); });
            for (int i = 0; i < n && ok; ++i) ok = label[i] == label[sigma(i)];
            if (ok) out.insert(blocks);
        }
    }
    return out;
}

BMatrix bm(std::vector<int> e) { return BMatrix(std::move(e)); }

}  // namespace

TEST_CASE("involution counts are telephone numbers") {
    const int telephone[] = {1, 2, 4, 10, 26, 76};
    for (int n = 1; n <= 6; ++n) {
        const auto inv = enumerate_involutions(n);
        CHECK(static_cast<int>(inv.size()) == telephone[n - 1]);
        const auto brute = brute_involutions(n);
        REQUIRE(inv.size() == brute.size());
        for (std::size_t k = 0; k < inv.size(); ++k) CHECK(inv[k].perm == brute[k]);
    }
    CHECK_THROWS_AS(Involution({1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_involutions(0), std::invalid_argument);
}

TEST_CASE("stable partitions") {
    CHECK(enumerate_stable_partitions(Involution::identity(2)).size() == 3);
    const auto swap = enumerate_stable_partitions(Involution({1, 0}));
    REQUIRE(swap.size() == 1);
    CHECK(swap[0].blocks == std::vector<std::vector<int>>{{0, 1}});
    CHECK(enumerate_stable_partitions(Involution::identity(1)).size() == 1);
    for (int n = 1; n <= 5; ++n)
        for (const auto& sigma : enumerate_involutions(n)) {
            std::set<std::vector<std::vector<int>>> got;
            for (const auto& sp : enumerate_stable_partitions(sigma)) got.insert(sp.blocks);
            CHECK(got == brute_stable_partitions(sigma));
        }
}

TEST_CASE("partition statistics") {
    const auto st = partition_stats(Involution::identity(3), StablePartition{{{1}, {0, 2}}});
    CHECK(st.tau == 1);
    CHECK(st.c1 == 3);
    CHECK(st.n_k == std::vector<int>{1, 2});
    CHECK(st.n_up == std::vector<int>{3, 2, 0});
    CHECK(st.n_tri == std::vector<int>{6, 3, 0});
    CHECK(st.c1_per_block == std::vector<int>{1, 2});

    const auto st13 = partition_stats(Involution({2, 1, 0}), StablePartition{{{0, 1, 2}}});
    CHECK(st13.t_stat == 1);
    CHECK(st13.c2 == 1);
    CHECK(st13.c1 == 1);

    for (int n = 1; n <= 4; ++n)
        for (const auto& sigma : enumerate_involutions(n))
            for (const auto& sp : enumerate_stable_partitions(sigma)) {
                const auto s = partition_stats(sigma, sp);
                CHECK(s.c1 + 2 * s.c2 == n);
                CHECK(std::accumulate(s.c1_per_block.begin(), s.c1_per_block.end(), 0) == s.c1);
                CHECK(s.n_up.front() == n);
            }
}

TEST_CASE("index statistics") {
    const auto id3 = Involution::identity(3);
    CHECK(e_sigma_ik(id3, 1, 0) == 0);
    CHECK(e_sigma_ik(id3, 1, 1) == 0);
    CHECK(e_sigma_ik(id3, 1, 2) == 2);
    CHECK(e_sigma_ik(Involution({2, 1, 0}), 0, 1) == 1);
    CHECK(e_sigma_ik(Involution({2, 1, 0}), 0, 2) == 1);

    CHECK(b_l(Involution::identity(2), {0, 1}, bm({2, 4})) == 3);
    CHECK(b_l(Involution({1, 0}), {0, 1}, bm({2, 4})) == 2);
    CHECK(b_l(Involution::identity(1), {0}, bm({0})) == 1);

    CHECK(B_i_lambda(1, -1, bm({0, 5})) == std::vector<int>{0});
    CHECK(B_i_lambda(2, -1, bm({0, 0, 5})) == std::vector<int>{0, 1});
    for (int i = 0; i < 3; ++i) CHECK(B_i_lambda(i, 0, bm({0, 1, 4})).empty());

    CHECK(rho_tilde(Involution::identity(1), {0}, -1, bm({0})).twice == -1);
    CHECK(rho_tilde(Involution::identity(1), {0}, -3, bm({2})).twice == -1);
    CHECK(rho_tilde(Involution::identity(2), {0}, -1, bm({0, 0})).twice == -1);
    CHECK(rho_tilde(Involution({1, 0}), {0, 1}, 0, bm({0, 3})).twice == 0);

    CHECK(d_stat(Involution::identity(3), {-1, -2, -3}, bm({0, 0, 0})) == 0);
    CHECK(d_stat(Involution({1, 0}), {-1, -1}, bm({0, 0})) == 0);
    // the only inner term is min{-1 + 0 + 1, 0} = 0
    CHECK(d_stat(Involution({2, 1, 0}), {-1, -1, -1}, bm({0, 0, 0})) == 0);
    CHECK(d_stat(Involution({0, 2, 1}), {-3, -1, -1}, bm({0, 0, 0})) == -1);
}

TEST_CASE("nu tuples") {
    const auto id1 = Involution::identity(1);
    const StablePartition one{{{0}}};
    auto nus = enumerate_nu(id1, one, bm({0}));
    REQUIRE(nus.size() == 1);
    CHECK(nus[0].nu == std::vector<int>{-1});
    nus = enumerate_nu(id1, one, bm({2}));
    REQUIRE(nus.size() == 3);
    std::set<int> firsts;
    for (const auto& t : nus) firsts.insert(t.nu[0]);
    CHECK(firsts == std::set<int>{-3, -2, -1});

    const StablePartition two{{{0}, {1}}};
    const auto id2 = Involution::identity(2);
    CHECK(enumerate_nu_k_t(id2, two, 0, bm({0, 3})).size() == 1);
    const auto k1 = enumerate_nu_k_t(id2, two, 1, bm({0, 3}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].nu == std::vector<int>{-1});
    CHECK(enumerate_nu_k_t(id2, two, 2, bm({0, 0})).empty());
    // b_1 = 0 for a transposition block with e = 0
    const StablePartition split{{{2}, {0, 1}}};
    CHECK(enumerate_nu_k_t(Involution({1, 0, 2}), split, 1, bm({0, 0, 3})).size() == 4);
    CHECK(enumerate_nu(Involution({1, 0, 2}), split, bm({0, 0, 3})).empty());
    CHECK_THROWS_AS(enumerate_nu_k_t(id2, two, 3, bm({0, 0})), std::invalid_argument);
}

TEST_CASE("orbit representatives against a filtered box") {
    auto reps = enumerate_orbit_reps(1, bm({0}));
    CHECK(reps.size() == 2);
    for (const auto& r : reps) CHECK(r.h == std::vector<int>{-1});
    CHECK(enumerate_orbit_reps(1, bm({1})).size() == 4);
    std::size_t swaps = 0;
    for (const auto& r : enumerate_orbit_reps(2, bm({0, 0})))
        swaps += !r.sigma.fixes(0);
    CHECK(swaps == 0);

    for (const auto& e : std::vector<std::vector<int>>{{0, 0}, {0, 2}, {1, 3}, {0, 1, 1}, {0, 0, 2}, {1, 1, 2}}) {
        const BMatrix B = bm(e);
        const int n = B.n();
        std::size_t expected = 0;
        for (const auto& sigma : enumerate_involutions(n)) {
            const int lo = -e.back() - 2;
            std::vector<int> h(static_cast<std::size_t>(n), lo);
            while (true) {
                bool ok = true;
                for (int i = 0; i < n && ok; ++i) {
                    ok = h[i] == h[sigma(i)];
                    if (sigma(i) > i) ok = ok && h[i] >= -e[i];
                    else if (sigma(i) == i) ok = ok && h[i] >= -e[i] - 1;
                    else ok = ok && h[i] >= -e[i];
                }
                if (ok) expected += std::size_t{1} << sigma.fixed_points();
                int pos = 0;
                while (pos < n && h[pos] == -1) h[pos++] = lo;
                if (pos == n) break;
                ++h[pos];
            }
        }
        CHECK(enumerate_orbit_reps(n, B).size() == expected);
    }
}

TEST_CASE("level partition") {
    NuTuple nu;
    const auto sp = level_partition({-1, -3, -1, -2}, &nu);
    CHECK(sp.blocks == std::vector<std::vector<int>>{{1}, {3}, {0, 2}});
    CHECK(nu.lambda == std::vector<int>{-3, -2, -1});
    CHECK(nu.nu == std::vector<int>{-3, 1, 1});
}

TEST_CASE("B validation") {
    CHECK_THROWS_AS(bm({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(bm({-1}), std::invalid_argument);
    CHECK_THROWS_AS(BMatrix({0, 1}, {UnitClass::Square}), std::invalid_argument);
}
