#include <cmath>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "siegel/engine.hpp"
#include "siegel/oracle.hpp"

using namespace siegel;

namespace {

constexpr auto Sq = UnitClass::Square;
constexpr auto Ns = UnitClass::Nonsquare;

PadicSymMatrix mat(long p, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rational>> e;
    for (const auto& r : rows) {
        e.emplace_back();
        for (long v : r) e.back().emplace_back(v);
    }
    return PadicSymMatrix(p, 12, e);
}

}  // namespace

TEST_CASE("jordan splitting examples") {
    auto j = jordan_diagonalize(mat(5, {{1, 0}, {0, 5}}));
    CHECK(j.valuations == std::vector<int>{0, 1});
    CHECK(j.classes == std::vector<UnitClass>{Sq, Sq});

    j = jordan_diagonalize(mat(5, {{0, 1}, {1, 0}}));
    CHECK(j.valuations == std::vector<int>{0, 0});
    CHECK(j.classes == std::vector<UnitClass>{Ns, Ns});
    CHECK(j.canonical().classes == std::vector<UnitClass>{Sq, Sq});

    j = jordan_diagonalize(mat(3, {{3, 0}, {0, 1}}));
    CHECK(j.valuations == std::vector<int>{0, 1});
    CHECK(j.classes == std::vector<UnitClass>{Sq, Sq});

    CHECK_THROWS_AS(jordan_diagonalize(mat(3, {{0, 0}, {0, 0}})), std::domain_error);
    CHECK_THROWS_AS(PadicSymMatrix(3, 4, {{Rational(1), Rational(2)}, {Rational(1), Rational(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PadicSymMatrix(3, 4, {{Rational(1, 3)}}), std::invalid_argument);
}

TEST_CASE("jordan splitting is congruence invariant") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> entry(-6, 6);
    for (long p : {3L, 5L, 7L}) {
        const auto params = FieldParams::from_p(p);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 2 + trial % 2;
            std::vector<int> e(static_cast<std::size_t>(n));
            std::vector<UnitClass> u(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) {
                e[k] = static_cast<int>(rng() % 3);
                u[k] = rng() % 2 ? Ns : Sq;
            }
            std::sort(e.begin(), e.end());
            const BMatrix B(e, u);
            // U upper unitriangular times a random lower part that keeps det a unit
            std::vector<std::vector<long>> U(n, std::vector<long>(n, 0));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) U[a][b] = a == b ? 1 : (a < b ? entry(rng) : p * entry(rng));
            std::vector<long> d(n);
            for (int k = 0; k < n; ++k) {
                d[k] = unit_representative(u[k], p);
                for (int r = 0; r < e[k]; ++r) d[k] *= p;
            }
            std::vector<std::vector<Rational>> X(n, std::vector<Rational>(n, Rational(0)));
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int k = 0; k < n; ++k) X[a][b] += Rational(U[k][a] * d[k] * U[k][b]);
            const auto j = jordan_diagonalize(PadicSymMatrix(p, 12, X));
            const BMatrix B2 = j.to_bmatrix();
            CHECK(j.valuations == e);
            CHECK(siegel_S0_chi(B2, params) == siegel_S0_chi(B, params));
            CHECK(siegel_S0_triv(B2, params) == siegel_S0_triv(B, params));
        }
    }
}

TEST_CASE("oracle configuration") {
    OracleConfig cfg;
    cfg.p = 5; cfg.s_val = 3; cfg.K = 6; cfg.Vmax = 3;
    CHECK_NOTHROW(cfg.validate(1));
    cfg.s_val = 2;
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg.s_val = 3;
    cfg.K = 5;
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg.K = 6;
    cfg.p = 9;
    CHECK_THROWS_AS(cfg.validate(1), std::invalid_argument);
    cfg.p = 3;
    CHECK_THROWS_AS(cfg.validate(3), std::invalid_argument);
    const auto d = OracleConfig::defaults(BMatrix({0, 1}), 3, 4.0);
    CHECK(d.Vmax == 3);
    CHECK(d.K == 5);
    CHECK_NOTHROW(d.validate(2));
}

TEST_CASE("oracle reproduces the n = 1 reference values") {
    OracleConfig cfg = OracleConfig::defaults(BMatrix({0}), 5, 3.0);
    auto r = numeric_siegel_S0(BMatrix({0}), Omega::Chi, cfg);
    CHECK(std::abs(r.value - std::pow(5.0, -2.5)) < 1e-12);
    cfg = OracleConfig::defaults(BMatrix({0}), 3, 3.0);
    r = numeric_siegel_S0(BMatrix({0}), Omega::Chi, cfg);
    CHECK(std::abs(r.value - std::complex<double>(0, std::pow(3.0, -2.5))) < 1e-12);
    CHECK(r.cosets_evaluated > 0);
}

TEST_CASE("oracle agrees with the engine for n = 1") {
    for (long p : {3L, 5L})
        for (int e = 0; e <= 2; ++e)
            for (UnitClass u : {Sq, Ns})
                for (double s : {3.0, 4.0})
                    for (Omega omega : {Omega::Chi, Omega::Trivial}) {
                        const BMatrix B({e}, {u});
                        const auto params = FieldParams::from_p(p);
                        const QsPolynomial sym = omega == Omega::Chi ? siegel_S0_chi(B, params) : siegel_S0_triv(B, params);
                        const auto rep = compare(QsRational(sym), B, omega, OracleConfig::defaults(B, p, s), 1e-6);
                        CHECK(rep.pass);
                        CHECK(rep.rel_err < 1e-6);
                    }
}

TEST_CASE("a corrupted symbolic value is rejected") {
    const BMatrix B({2});
    const auto params = FieldParams::from_p(5);
    QsPolynomial sym = siegel_S0_chi(B, params);
    const auto key = sym.max_key();
    sym.add_term(key, RingScalar(1));
    const auto rep = compare(QsRational(sym), B, Omega::Chi, OracleConfig::defaults(B, 5, 4.0), 1e-6);
    CHECK_FALSE(rep.pass);
    CHECK(rep.to_text().find("FAIL") != std::string::npos);
}

TEST_CASE("refining the oracle stays within the tail bound") {
    for (long p : {3L, 5L}) {
        const BMatrix B({1}, {Ns});
        OracleConfig cfg = OracleConfig::defaults(B, p, 3.0);
        cfg.Vmax = 2;
        cfg.K = 4;
        const auto base = numeric_siegel_S0(B, Omega::Chi, cfg);
        OracleConfig finer = cfg;
        finer.K *= 2;
        const auto rk = numeric_siegel_S0(B, Omega::Chi, finer);
        CHECK(std::abs(rk.value - base.value) <= base.tail_bound + 1e-12);
        OracleConfig deeper = finer;
        deeper.Vmax *= 2;
        const auto rv = numeric_siegel_S0(B, Omega::Chi, deeper);
        CHECK(std::abs(rv.value - base.value) <= base.tail_bound + 1e-12);
        CHECK(rv.tail_bound < base.tail_bound);
    }
}

TEST_CASE("threaded oracle is deterministic") {
    const BMatrix B({0, 0});
    OracleConfig cfg = OracleConfig::defaults(B, 3, 4.0);
    cfg.jobs = 1;
    const auto one = numeric_siegel_S0(B, Omega::Chi, cfg);
    cfg.jobs = 4;
    const auto four = numeric_siegel_S0(B, Omega::Chi, cfg);
    CHECK(one.value == four.value);
    CHECK(one.cosets_evaluated == four.cosets_evaluated);
    CHECK(one.skipped_singular == four.skipped_singular);
    const auto rep = compare(QsRational(siegel_S0_chi(B, FieldParams::from_p(3))), B, Omega::Chi, cfg, 1e-4);
    CHECK(rep.pass);
    const auto json = nlohmann::json::parse(rep.to_json());
    for (const char* field : {"p", "s", "n", "t", "omega", "symbolic_value", "numeric_value", "abs_err", "rel_err",
                              "tail_bound", "cosets_evaluated", "skipped_singular"})
        CHECK(json.contains(field));
}
