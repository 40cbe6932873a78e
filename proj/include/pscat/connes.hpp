#pragma once

#include "pscat/kernel.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/scattering.hpp"

#include <map>
#include <optional>

namespace pscat {

// Cutoff traces for Q_n = P~_n P_n, Lambda = q^n. Values in log q units.
class ConnesTrace {
public:
    explicit ConnesTrace(const Scattering& S) : S_(S), K_(S.field()) {}

    const LocalField& field() const { return K_; }

    // Kernel of Q_n on the component chi.
    SeparableKernel q_kernel(int n, const UnitCharacter& chi) const;
    // sum over components of the circle integral of Q_n(z, z) f^(chi; z)
    Scalar trace_Qn_Uf(int n, const MultFunction& f) const;
    // Keeps the spectral components of conductor <= m.
    MultFunction conductor_cutoff(const MultFunction& f, unsigned m) const;
    // (2n + 1) g(1) - H(g)(1) with g the conductor cutoff of f at 2n - delta.
    Scalar closed_form_trace(int n, const MultFunction& f) const;

    // Trace of P~_n P_n U(f) on the grid space V_{M,M}; needs Q_p.
    Scalar brute_force_trace(int n, const MultFunction& f, int M, bool parallel = true) const;
    // Trace on the span of the omega_j; needs f invariant under units.
    Scalar sector_trace(int n, const MultFunction& f) const;
    // Grid level large enough for every intermediate support.
    int default_grid_level(int n, const MultFunction& f) const;

    // Values of f on the spheres |t| = q^m when f is unit invariant.
    std::optional<std::map<int, Scalar>> sphere_values(const MultFunction& f) const;

private:
    const Scattering& S_;
    const LocalField& K_;
};

}  // namespace pscat
