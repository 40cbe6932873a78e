#pragma once

#include "pscat/bruhat.hpp"
#include "pscat/invariant.hpp"
#include "pscat/kernel.hpp"
#include "pscat/mult_function.hpp"

#include <cstdint>
#include <random>

namespace pscat {

// Seeded generators of random test objects; equal seeds give equal objects.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi);
    Rational rational(int max_num = 5, int max_den = 4);
    // Rational, sometimes with an i = zeta_4 part.
    Scalar scalar(const LocalField& K);

    // Vanishes near 0; terms on |x| = p^{-v}, v in [vmin, vmax], conductor <= max_e.
    BruhatFunction s0_function(const LocalField& K, unsigned max_e, int vmin = -1, int vmax = 1, int terms = 3);
    // In S_0 with integral zero, so that its Fourier transform is in S_0 as well.
    BruhatFunction s0_dual_function(const LocalField& K, unsigned max_e);
    // Supported in Z_p with integral zero.
    BruhatFunction d_minus_function(const LocalField& K, int depth = 2, int terms = 3);
    // Cells with |t| = q^m, m in [mmin, mmax], at the given level.
    MultFunction mult_function(const LocalField& K, unsigned level, int mmin, int mmax, int terms = 3);
    // Unit-invariant vector in S_0 whose Fourier transform is also in S_0.
    InvariantVector invariant_s0_dual(const LocalField& K, int lo, int hi);
    // Laurent polynomial with exponents in [lo, hi].
    RationalSpectral laurent(const LocalField& K, int lo, int hi);
    LaurentKernel laurent_kernel(const LocalField& K, int lo, int hi, int terms = 6);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace pscat
