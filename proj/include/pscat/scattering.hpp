#pragma once

#include "pscat/bruhat.hpp"
#include "pscat/kernel.hpp"
#include "pscat/matrix.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/spectral.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace pscat {

struct SpectralPoint {
    UnitCharacter chi;
    Scalar z;  // a point of the unit circle
};

// The component K_chi of the interacting space. The basis is orthogonal and
// kept unnormalized with exact squared norms: for trivial chi it is
// 1/(1 - 1/(z sqrt q)) (norm^2 1/(1 - 1/q), the odd vector) followed by
// z^1..z^delta; for ramified chi it is z^1..z^{e + delta - 1}.
class InteractingBlock {
public:
    InteractingBlock(const LocalField& K, const UnitCharacter& chi);

    const UnitCharacter& character() const { return chi_; }
    std::size_t dimension() const { return basis_.size(); }
    const std::vector<RationalSpectral>& basis() const { return basis_; }
    const std::vector<Scalar>& squared_norms() const { return norms_; }
    // +1 for even basis vectors, -1 for the odd one.
    const std::vector<int>& grading() const { return grading_; }

    // Matrix of g -> K(g * b_j) in the basis: entry (i, j) = <b_i | g b_j> / |b_i|^2.
    ScalarMatrix compress(const RationalSpectral& g) const;
    // Z(1/pi), the compression of multiplication by z.
    const ScalarMatrix& z_step() const { return z_step_; }

    // Orthogonal projection onto the block.
    RationalSpectral project(const RationalSpectral& g) const;
    // sum_i b_i(z) conj(b_i(w)) / |b_i|^2
    SeparableKernel kernel() const;

private:
    UnitCharacter chi_;
    std::vector<RationalSpectral> basis_;
    std::vector<Scalar> norms_;
    std::vector<int> grading_;
    ScalarMatrix z_step_;
};

// Incoming/outgoing spaces, the interacting space and the contraction
// semigroup over one local field. Values of traces are in log q units.
class Scattering {
public:
    explicit Scattering(const LocalField& K);

    const LocalField& field() const { return K_; }
    const SpectralCalculus& calculus() const { return calc_; }

    // Support in |x| <= 1 and integral zero.
    bool in_D_minus(const BruhatFunction& phi) const;
    bool in_D_plus(const BruhatFunction& phi) const;
    // The same membership read off the spectral picture: every component has
    // only non-positive powers and the trivial one vanishes at z = sqrt q.
    bool in_D_minus_spectral(const BruhatFunction& phi) const;

    const InteractingBlock& block(const UnitCharacter& chi) const;
    // Dimension of K_chi from the count delta + e - 1 + 2 [chi = 1].
    std::size_t expected_dimension(const UnitCharacter& chi) const;

    // The printed kernel of K on the component chi (zero across components).
    SeparableKernel kernel_closed_form(const UnitCharacter& chi) const;
    Scalar kernel_K(const SpectralPoint& a, const SpectralPoint& b) const;

    // Block matrices of Z(f); the part of f on |t| < 1 enters through t -> 1/t.
    std::map<UnitCharacter, ScalarMatrix> z_smear(const MultFunction& f) const;
    Scalar trace_Z(const MultFunction& f) const;
    Scalar supertrace_Z(const MultFunction& f) const;
    // sum over components of the circle integral of f^ T
    Scalar trace_formula_rhs(const MultFunction& f) const;
    // sum over components of the circle integral of f^ H
    Scalar weil_local_term(const MultFunction& f) const;
    Scalar weil_local_term(const SpectralElement& fhat) const;

    // sum_{|j| <= J} ||K U(pi^{-j}) f||^2 and its limit <T f | f>.
    Scalar time_delay_partial_sum(const MultFunction& f, int J) const;
    Scalar time_delay_exact(const MultFunction& f) const;

private:
    const LocalField& K_;
    SpectralCalculus calc_;
    mutable std::mutex mu_;
    mutable std::map<UnitCharacter, std::unique_ptr<InteractingBlock>> blocks_;
};

// Non-positive powers only, no pole at sqrt(q): the spectral model of D_-^0.
bool in_exterior_hardy(const RationalSpectral& r);

}  // namespace pscat
