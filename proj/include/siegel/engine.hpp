#pragma once

#include "siegel/gauss.hpp"

namespace siegel {

struct SeriesRequest {
    BMatrix B;
    int t = 0;
    Omega omega = Omega::Chi;
    FieldParams params;
};

// S_0(B, s)^chi from the partition/nu expansion.
QsPolynomial siegel_S0_chi(const BMatrix& B, const FieldParams& params);
// S_0(B, s)^1, same expansion with the trivial-character factors.
QsPolynomial siegel_S0_triv(const BMatrix& B, const FieldParams& params);
// S_t(B, s)^chi for 0 <= t <= n.
QsRational siegel_St_chi(const BMatrix& B, int t, const FieldParams& params);

// Independent path: sum over Gamma_0-orbit representatives (sigma, h, eps).
QsPolynomial siegel_S0_orbit_sum(const BMatrix& B, Omega omega, const FieldParams& params);
// Character sum G(S_{sigma,h,eps}, B); zero outside the nonvanishing bounds.
QsPolynomial gauss_character_sum(const OrbitRep& rep, const BMatrix& B, const FieldParams& params);
// omega(det S) |det S|^{-s}.
QsPolynomial det_factor(const OrbitRep& rep, Omega omega, const FieldParams& params);

// Sum over sigma and ordered partitions that evaluates to 1.
QsRational identity_prop52(int n, const FieldParams& params);

// Dispatches on omega and t; throws std::invalid_argument for unsupported requests.
QsRational evaluate(const SeriesRequest& req);

}  // namespace siegel
