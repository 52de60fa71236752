#pragma once

#include <vector>

#include "siegel/local_field.hpp"

// Index conventions: positions are 0-based throughout (position i here is
// the index i+1 of the usual 1-based notation). Every statistic below only
// compares indices, so the shift is harmless.

namespace siegel {

// B = diag(u_1 pi^{e_1}, ..., u_n pi^{e_n}) with 0 <= e_1 <= ... <= e_n.
struct BMatrix {
    std::vector<int> e;
    std::vector<UnitClass> units;

    BMatrix() = default;
    BMatrix(std::vector<int> e_, std::vector<UnitClass> units_);
    // All units square.
    explicit BMatrix(std::vector<int> e_);

    int n() const { return static_cast<int>(e.size()); }
};

struct Involution {
    std::vector<int> perm;

    explicit Involution(std::vector<int> p);
    static Involution identity(int n);

    int n() const { return static_cast<int>(perm.size()); }
    int operator()(int i) const { return perm[static_cast<std::size_t>(i)]; }
    bool fixes(int i) const { return (*this)(i) == i; }
    int fixed_points() const;
    int transpositions() const { return (n() - fixed_points()) / 2; }
    int sign() const { return transpositions() % 2 == 0 ? 1 : -1; }
    bool operator==(const Involution&) const = default;
};

// Ordered partition I_0, ..., I_r into nonempty sigma-stable blocks; each
// block is sorted.
struct StablePartition {
    std::vector<std::vector<int>> blocks;
    int r() const { return static_cast<int>(blocks.size()) - 1; }
    bool operator==(const StablePartition&) const = default;
};

struct PartitionStats {
    int c1 = 0;
    std::vector<int> c1_per_block;
    int c2 = 0;
    int tau = 0;
    int t_stat = 0;
    std::vector<int> n_k;    // block sizes
    std::vector<int> n_up;   // n^{(l)} for l = 0..r+1 (n^{(r+1)} = 0)
    std::vector<int> n_tri;  // n(l) = n^{(l)}(n^{(l)}+1)/2 for l = 0..r+1
};

// (sigma, h, eps) in Lambda_n; eps is Square off the fixed points.
struct OrbitRep {
    Involution sigma;
    std::vector<int> h;
    std::vector<UnitClass> epsv;
};

// nu_0 in Z, nu_l >= 1 for l >= 1; lambda holds the partial sums.
struct NuTuple {
    std::vector<int> nu;
    std::vector<int> lambda;
};

// Exact half-integer stored as twice its value.
struct HalfInteger {
    int twice = 0;
    bool operator==(const HalfInteger&) const = default;
    double value() const { return twice / 2.0; }
};

std::vector<Involution> enumerate_involutions(int n);
std::vector<StablePartition> enumerate_stable_partitions(const Involution& sigma);
PartitionStats partition_stats(const Involution& sigma, const StablePartition& partition);

int e_sigma_ik(const Involution& sigma, int i, int k);
int b_l(const Involution& sigma, const std::vector<int>& block, const BMatrix& B);
std::vector<int> B_i_lambda(int i, int lambda, const BMatrix& B);
HalfInteger rho_tilde(const Involution& sigma, const std::vector<int>& block, int lambda, const BMatrix& B);
int d_stat(const Involution& sigma, const std::vector<int>& h, const BMatrix& B);

std::vector<NuTuple> enumerate_nu(const Involution& sigma, const StablePartition& partition, const BMatrix& B);
// Prefixes (nu_0, ..., nu_{k-1}) with the same constraints on l < k.
std::vector<NuTuple> enumerate_nu_k_t(const Involution& sigma, const StablePartition& partition, int k,
                                      const BMatrix& B);

// Lower bound on h_i for a non-vanishing character sum (B plays the role of T).
int h_lower_bound(const Involution& sigma, int i, const BMatrix& B);
std::vector<OrbitRep> enumerate_orbit_reps(int n, const BMatrix& B);

// Level-set partition of h ordered by increasing value, and the nu's with
// nu_0 = lambda_0, nu_l = lambda_l - lambda_{l-1}.
StablePartition level_partition(const std::vector<int>& h, NuTuple* nu_out = nullptr);

}  // namespace siegel
