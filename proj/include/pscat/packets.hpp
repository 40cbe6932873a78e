#pragma once

#include "pscat/local_field.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/qp.hpp"
#include "pscat/scalar.hpp"

#include <cstddef>
#include <vector>

namespace pscat {

// coeff * lambda(freq x) * 1_ball(x); freq is reduced modulo the dual
// lattice of the ball so that equal packets compare equal.
struct Packet {
    Scalar coeff;
    QpNum freq;
    Ball ball;
};
using PacketList = std::vector<Packet>;

// Exact calculus of modulated ball indicators on Q_p: closed under the
// Fourier transform, support cutoffs, dilation smears and log|x|.
class PacketCalculus {
public:
    explicit PacketCalculus(const LocalField& K);

    const LocalField& field() const { return K_; }

    Packet make(const Scalar& coeff, const QpNum& freq, const Ball& ball) const;
    // Normalized indicator p^{M/2} 1_{y p^{-M} + p^M Z_p} of V_{M,M}, up to
    // the factor p^{M/2}, which callers fold into their inner products.
    PacketList grid_indicator(int M, std::int64_t y) const;

    PacketList fourier(const PacketList& in) const;
    PacketList fourier_inverse(const PacketList& in) const;
    // Multiplication by 1_{|x| <= p^n}.
    PacketList cutoff(const PacketList& in, int n) const;
    // U(f) = int f(t) U(t) d*t (one power of log q omitted).
    PacketList smear(const PacketList& in, const MultFunction& f) const;
    // Multiplication by log|x| / log q; throws if a packet meets 0.
    PacketList apply_A(const PacketList& in) const;

    Scalar inner(const PacketList& a, const PacketList& b) const;
    // Merges packets with identical frequency and ball.
    PacketList simplify(const PacketList& in) const;
    // Splits modulated packets into plain ball indicators.
    PacketList unmodulate(const PacketList& in) const;
    // True when every packet lies in V_{M,M}.
    bool inside_grid(const PacketList& in, int M) const;

private:
    const LocalField& K_;
    const PadicOps& P_;
};

enum class OracleOp { Fourier, FourierInverse, Cutoff, Smear, ApplyA };

struct OracleStep {
    OracleOp op;
    int n = 0;                       // for Cutoff
    const MultFunction* f = nullptr;  // for Smear
};

// Composite operator written left to right as a product: the last step acts first.
using OracleChain = std::vector<OracleStep>;

struct BruteMatrix {
    int M = 0;
    std::size_t dim = 0;
    std::vector<Scalar> entries;  // row-major, entries[i * dim + j] = <e_i | T e_j>
    int logq_power = 0;
    bool leaks = false;
    const Scalar& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
    Scalar trace() const;
};

int chain_logq_power(const OracleChain& chain);
PacketList apply_chain(const PacketCalculus& pc, const OracleChain& chain, PacketList v);

// Full matrix on V_{M,M} in the orthonormal grid basis; columns in parallel.
BruteMatrix brute_matrix(const LocalField& K, const OracleChain& chain, int M, bool parallel = true);
// Trace over V_{M,M} from the diagonal alone. Exact when the range of the
// operator lies in V_{M,M}.
Scalar brute_trace(const LocalField& K, const OracleChain& chain, int M, bool parallel = true);

}  // namespace pscat
