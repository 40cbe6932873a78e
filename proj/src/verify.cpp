#include "pscat/verify.hpp"

#include "pscat/connes.hpp"
#include "pscat/invariant.hpp"
#include "pscat/random.hpp"
#include "pscat/scattering.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pscat {

bool SuiteReport::exact_passed() const {
    for (const auto& c : checks)
        if (!c.exact_ok) return false;
    return true;
}

bool SuiteReport::numeric_passed() const {
    for (const auto& c : checks)
        if (!c.numeric_ok) return false;
    return true;
}

std::size_t SuiteReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed() ? 0 : 1;
    return n;
}

bool numerically_close(std::complex<double> a, std::complex<double> b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

namespace {

constexpr int kCircleSamples = 2048;

std::vector<std::complex<double>> sample_points(int count) {
    std::vector<std::complex<double>> pts;
    for (int k = 0; k < count; ++k) pts.push_back(std::polar(1.0, 2 * std::numbers::pi * (k + 0.37) / count));
    return pts;
}

std::string describe(const Scalar& x) {
    std::ostringstream os;
    os << x.debug_string() << " ~ " << x.embed();
    return os.str();
}

class Checker {
public:
    explicit Checker(SuiteReport& report) : r_(report) {}

    void record(std::string name, bool exact, bool numeric, std::string detail = {}) {
        r_.checks.push_back({std::move(name), exact, numeric, std::move(detail)});
    }

    void scalars(std::string name, const Scalar& a, const Scalar& b) {
        scalars_vs(std::move(name), a, b, b.embed());
    }

    // b_numeric is an independent floating point evaluation of b.
    void scalars_vs(std::string name, const Scalar& a, const Scalar& b, std::complex<double> b_numeric) {
        bool exact = a == b;
        bool numeric = numerically_close(a.embed(), b_numeric);
        std::string detail;
        if (!exact || !numeric) {
            std::ostringstream os;
            os << "lhs " << describe(a) << ", rhs " << describe(b) << ", rhs numeric " << b_numeric;
            detail = os.str();
        }
        record(std::move(name), exact, numeric, detail);
    }

    void functions(std::string name, const RationalSpectral& a, const RationalSpectral& b) {
        bool exact = a == b;
        bool numeric = true;
        for (auto z : sample_points(8)) numeric = numeric && numerically_close(a.eval_numeric(z), b.eval_numeric(z));
        record(std::move(name), exact, numeric, exact && numeric ? "" : "rational functions differ");
    }

    void elements(std::string name, const SpectralElement& a, const SpectralElement& b) {
        bool exact = spectral_equal(a, b);
        bool numeric = true;
        std::set<UnitCharacter> keys;
        for (const auto& [chi, r] : a) keys.insert(chi);
        for (const auto& [chi, r] : b) keys.insert(chi);
        for (const auto& chi : keys) {
            auto ia = a.find(chi);
            auto ib = b.find(chi);
            for (auto z : sample_points(6)) {
                std::complex<double> va = ia == a.end() ? 0.0 : ia->second.eval_numeric(z);
                std::complex<double> vb = ib == b.end() ? 0.0 : ib->second.eval_numeric(z);
                numeric = numeric && numerically_close(va, vb);
            }
        }
        record(std::move(name), exact, numeric, exact && numeric ? "" : "spectral elements differ");
    }

    void guarded(const std::string& name, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            record(name, false, false, std::string("exception: ") + e.what());
        }
    }

private:
    SuiteReport& r_;
};

std::vector<UnitCharacter> characters_of_conductor(const LocalField& K, unsigned e) {
    std::vector<UnitCharacter> out;
    for (const auto& chi : K.enumerate_characters(e))
        if (chi.e == e) out.push_back(chi);
    return out;
}

std::string field_tag(const LocalField& K) {
    return "q=" + std::to_string(K.q()) + " delta=" + std::to_string(K.delta());
}

// Independent floating point value of sum_chi int f^ M dtheta/2pi.
std::complex<double> numeric_spectral_integral(const SpectralCalculus& calc, const MultFunction& f, MultiplierKind kind) {
    std::complex<double> total = 0;
    for (const auto& [chi, r] : mellin(calc.field(), f))
        total += (r * calc.multiplier(kind, chi)).circle_integral_numeric(kCircleSamples);
    return total;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ull + salt; }

// Random admissible functions shared by the trace and supertrace suites.
std::vector<MultFunction> trace_test_functions(const LocalField& K, const VerifyOptions& o, int count) {
    RandomSource rng(mix(o.seed, 7000 + K.q() * 10 + K.delta()));
    std::vector<MultFunction> fs;
    for (int i = 0; i < count; ++i) {
        unsigned level = static_cast<unsigned>(rng.uniform(0, 2));
        fs.push_back(rng.mult_function(K, level, -2, 2, rng.uniform(1, 4)));
    }
    return fs;
}

const std::vector<FieldParams>& trace_fields() {
    static const std::vector<FieldParams> fields{{2, 1, 0}, {3, 1, 0}, {2, 1, 1}, {3, 1, 2}};
    return fields;
}

int per_field(const VerifyOptions& o, std::size_t fields) {
    return std::max(1, static_cast<int>((o.random_cases + static_cast<int>(fields) - 1) / static_cast<int>(fields)));
}

void suite_functional_equation(Checker& ck, const VerifyOptions& o) {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        unsigned max_e = p == 2 ? 3 : 2;
        LocalField K({p, 1, 0}, 6, 6);
        SpectralCalculus calc(K);
        RandomSource rng(mix(o.seed, 100 + p));
        for (int i = 0; i < o.random_cases; ++i) {
            std::string name = "p=" + std::to_string(p) + " case " + std::to_string(i) + ": spectral(F phi) = Gamma-action";
            ck.guarded(name, [&] {
                BruhatFunction phi = rng.s0_function(K, max_e);
                SpectralElement lhs = spectral_transform(K, fourier(K, phi));
                SpectralElement rhs = calc.apply_fourier(spectral_transform(K, phi));
                ck.elements(name, lhs, rhs);
            });
        }
        for (unsigned e = 1; e <= max_e; ++e)
            for (const auto& chi : characters_of_conductor(K, e)) {
                std::string name = "p=" + std::to_string(p) + " root number " + chi.id() + " unimodular";
                ck.guarded(name, [&] {
                    Scalar w = calc.root_number(chi);
                    ck.scalars_vs(name, w * w.conj(), Scalar(1), std::norm(w.embed()));
                });
            }
    }
}

void suite_conductor_operator(Checker& ck, const VerifyOptions& o) {
    int cases = std::max(1, o.random_cases / 2);
    for (std::uint64_t p : {2u, 3u}) {
        LocalField K({p, 1, 0}, 6, 6);
        SpectralCalculus calc(K);
        RandomSource rng(mix(o.seed, 200 + p));
        for (int i = 0; i < cases; ++i) {
            std::string tag = "p=" + std::to_string(p) + " case " + std::to_string(i);
            ck.guarded(tag + ": spectral(A phi) = D spectral(phi)", [&] {
                BruhatFunction phi = rng.s0_dual_function(K, 2);
                SpectralElement sphi = spectral_transform(K, phi);
                ck.elements(tag + ": spectral(A phi) = D spectral(phi)", spectral_transform(K, apply_A(K, phi)),
                            spectral_derivative(sphi));
                BruhatFunction b = fourier(K, apply_A(K, fourier_inverse(K, phi)));
                BruhatFunction h = apply_A(K, phi) + b;
                ck.elements(tag + ": spectral((A + F A F^-1) phi) = H spectral(phi)", spectral_transform(K, h),
                            calc.apply_multiplier(MultiplierKind::H, sphi));
            });
        }
    }
    for (FieldParams fp : {FieldParams{2, 1, 1}, FieldParams{3, 1, 2}, FieldParams{2, 1, 2}}) {
        LocalField K(fp, 6, 3);
        SpectralCalculus calc(K);
        RandomSource rng(mix(o.seed, 300 + fp.p * 10 + fp.delta));
        for (int i = 0; i < cases; ++i) {
            std::string tag = field_tag(K) + " sector case " + std::to_string(i);
            ck.guarded(tag, [&] {
                InvariantVector v = rng.invariant_s0_dual(K, -2, 3);
                RationalSpectral sv = invariant_spectral(K, v);
                InvariantVector av = invariant_apply_A(K, v);
                ck.functions(tag + ": A-part is z d/dz", invariant_spectral(K, av), sv.derivative());
                InvariantVector hv = av + invariant_fourier(K, invariant_apply_A(K, invariant_fourier(K, v)));
                ck.functions(tag + ": conductor operator is H(1; z)", invariant_spectral(K, hv),
                             calc.multiplier(MultiplierKind::H, K.trivial()) * sv);
            });
        }
    }
}

void suite_orthogonality(Checker& ck, const VerifyOptions& o) {
    for (std::uint64_t p : {2u, 3u}) {
        LocalField K({p, 1, 0}, 6, 3);
        Scattering S(K);
        const auto& P = K.padic();
        RandomSource rng(mix(o.seed, 400 + p));
        BruhatFunction omega;
        omega.add_term(K, P.make(0, 0), 0, Scalar(1));
        ck.record("p=" + std::to_string(p) + " omega is not incoming", !S.in_D_minus(omega), true);
        BruhatFunction phi;
        phi.add_term(K, P.make(0, 0), 1, Scalar(1));
        phi.add_term(K, P.make(0, 0), 0, Scalar(Rational(-1, static_cast<unsigned long>(p))));
        ck.record("p=" + std::to_string(p) + " 1_{pZ_p} - 1_{Z_p}/p is incoming", S.in_D_minus(phi), true);
        int pairs = 25;
        for (int i = 0; i < pairs; ++i) {
            std::string tag = "p=" + std::to_string(p) + " pair " + std::to_string(i);
            ck.guarded(tag, [&] {
                BruhatFunction a = rng.d_minus_function(K);
                BruhatFunction b = rng.d_minus_function(K);
                ck.record(tag + ": samples are incoming", S.in_D_minus(a) && S.in_D_minus(b),
                          S.in_D_minus_spectral(a) && S.in_D_minus_spectral(b));
                Scalar ip = inner_product(K, fourier(K, a), b);
                ck.scalars(tag + ": <F psi | psi'> = 0", ip, Scalar());
                ck.record(tag + ": F psi is outgoing", S.in_D_plus(fourier(K, a)), true);
                SpectralCalculus calc(K);
                SpectralElement sa = calc.apply_multiplier(MultiplierKind::Alpha, spectral_transform(K, a));
                bool hardy = true;
                for (const auto& [chi, r] : sa) hardy = hardy && in_exterior_hardy(r);
                ck.record(tag + ": alpha maps it into the exterior Hardy model", hardy, true);
            });
        }
    }
}

void suite_interacting_space(Checker& ck, const VerifyOptions& o) {
    for (std::uint64_t p : {2u, 3u})
        for (unsigned d = 0; d <= 2; ++d) {
            LocalField K({p, 1, d}, 6, 3);
            Scattering S(K);
            const std::string tag = field_tag(K);
            RandomSource rng(mix(o.seed, 500 + p * 10 + d));
            for (unsigned e = 0; e <= 3; ++e) {
                auto chars = characters_of_conductor(K, e);
                if (chars.size() > 2) chars.resize(2);
                for (const auto& chi : chars) {
                    std::string name = tag + " " + chi.id();
                    ck.guarded(name, [&] {
                        const InteractingBlock& b = S.block(chi);
                        ck.record(name + ": dimension", b.dimension() == S.expected_dimension(chi), true);
                        bool ortho = true;
                        for (std::size_t i = 0; i < b.dimension(); ++i)
                            for (std::size_t j = 0; j < b.dimension(); ++j) {
                                Scalar g = (b.basis()[i].conj() * b.basis()[j]).circle_integral();
                                ortho = ortho && g == (i == j ? b.squared_norms()[i] : Scalar());
                            }
                        ck.record(name + ": basis orthogonal", ortho, true);
                        SeparableKernel closed = S.kernel_closed_form(chi);
                        SeparableKernel outer = b.kernel();
                        bool numeric = true;
                        auto pts = sample_points(4);
                        for (auto z : pts)
                            for (auto w : pts)
                                numeric = numeric && numerically_close(closed.eval_numeric(z, w), outer.eval_numeric(z, w));
                        ck.record(name + ": kernel equals basis outer product", closed.equals(outer), numeric);
                        ck.record(name + ": kernel hermitian", closed.is_hermitian(), true);
                        ck.functions(name + ": diagonal is T", closed.diagonal(),
                                     S.calculus().multiplier(MultiplierKind::T, chi));
                        auto cp = b.z_step().characteristic_polynomial();
                        std::vector<Scalar> expect(b.dimension() + 1);
                        std::size_t dim = b.dimension();
                        expect[dim] = Scalar(1);
                        if (chi.is_trivial()) expect[dim - 1] = -K.sqrt_q_power(-1);
                        bool cp_ok = cp == expect;
                        ck.record(name + ": spectrum of Z(1/pi)", cp_ok, true);
                        if (!chi.is_trivial())
                            ck.record(name + ": Z(1/pi) nilpotent", b.z_step().power(static_cast<unsigned>(dim)).is_zero(),
                                      true);
                        bool proj = true;
                        for (int i = 0; i < 3; ++i) {
                            RationalSpectral g = rng.laurent(K, -3, 4);
                            RationalSpectral once = closed.apply(g);
                            proj = proj && closed.apply(once) == once && b.project(g) == once;
                        }
                        ck.record(name + ": kernel is the orthogonal projection", proj, true);
                    });
                }
            }
            if (d == 0) {
                ck.guarded(tag + " interacting space orthogonal to D-/D+", [&] {
                    bool ok = true;
                    for (int i = 0; i < 5; ++i) {
                        BruhatFunction a = rng.d_minus_function(K);
                        for (const BruhatFunction& x : {a, fourier(K, a)}) {
                            SpectralElement sx = spectral_transform(K, x);
                            for (const auto& [chi, r] : sx) {
                                const InteractingBlock& b = S.block(chi);
                                for (const auto& bi : b.basis()) ok = ok && (bi.conj() * r).circle_integral().is_zero();
                            }
                        }
                    }
                    ck.record(tag + " interacting space orthogonal to D-/D+", ok, true);
                });
                if (p == 2) {
                    ck.guarded("q=2 kernel at z=w=1", [&] {
                        Scalar v = S.kernel_K({K.trivial(), Scalar(1)}, {K.trivial(), Scalar(1)});
                        ck.scalars_vs("q=2 kernel at z=w=1 is 3 + 2 sqrt 2", v, Scalar(3) + Scalar(2) * K.s(),
                                      3 + 2 * std::sqrt(2.0));
                    });
                }
            }
        }
    LocalField K3({3, 1, 0}, 6, 3);
    Scattering S3(K3);
    auto chi = characters_of_conductor(K3, 2).front();
    ck.guarded("ramified diagonal value", [&] {
        Scalar z = K3.root_of_unity(1, 9);
        ck.scalars("q=3 e=2 kernel diagonal is 1", S3.kernel_K({chi, z}, {chi, z}), Scalar(1));
    });
}

void suite_time_delay(Checker& ck, const VerifyOptions& o) {
    for (std::uint64_t p : {2u, 3u})
        for (unsigned d = 0; d <= 2; ++d) {
            LocalField K({p, 1, d}, 6, 3);
            Scattering S(K);
            const SpectralCalculus& calc = S.calculus();
            const std::string tag = field_tag(K);
            for (unsigned e = 0; e <= 3; ++e) {
                auto chars = characters_of_conductor(K, e);
                if (chars.empty()) continue;
                const auto& chi = chars.front();
                std::string name = tag + " " + chi.id();
                ck.guarded(name, [&] {
                    RationalSpectral T = calc.multiplier(MultiplierKind::T, chi);
                    RationalSpectral H = calc.multiplier(MultiplierKind::H, chi);
                    RationalSpectral Sm = calc.multiplier(MultiplierKind::S, chi);
                    ck.functions(name + ": T = S D(conj S)", T, Sm * Sm.conj().derivative());
                    RationalSpectral delta = RationalSpectral::constant(K.ctx(), Scalar(static_cast<long>(d)));
                    RationalSpectral delta1 = RationalSpectral::constant(K.ctx(), Scalar(static_cast<long>(d) + 1));
                    if (chi.is_trivial())
                        ck.functions(name + ": T - delta = (delta + 1) - H", T - delta, delta1 - H);
                    else
                        ck.functions(name + ": T - delta = H - (delta + 1)", T - delta, H - delta1);
                    bool nonneg = true;
                    for (auto z : sample_points(64)) nonneg = nonneg && T.eval_numeric(z).real() >= -1e-12;
                    ck.record(name + ": T >= 0 on the circle", true, nonneg);
                });
            }
            if (d > 1) continue;
            RandomSource rng(mix(o.seed, 600 + p * 10 + d));
            std::vector<std::pair<std::string, MultFunction>> fs{{"1_units", MultFunction::sphere(0)}};
            auto ram = characters_of_conductor(K, 2);
            if (!ram.empty()) fs.push_back({"ramified e=2", MultFunction::character_on_units(K, ram.front())});
            fs.push_back({"random", rng.mult_function(K, 1, -1, 1, 3)});
            for (const auto& [label, f] : fs) {
                std::string name = tag + " time delay " + label;
                ck.guarded(name, [&] {
                    Scalar exact = S.time_delay_exact(f);
                    Scalar partial = S.time_delay_partial_sum(f, 40);
                    bool numeric = std::abs(partial.embed() - exact.embed()) <= 1e-8;
                    bool exact_ok = label.starts_with("ramified") ? partial == exact : true;
                    ck.record(name + ": partial sums reach <Tf|f>", exact_ok, numeric);
                });
            }
        }
}

void pinned_trace_checks(Checker& ck, const Scattering& S, bool super) {
    const LocalField& K = S.field();
    const std::string tag = field_tag(K);
    MultFunction units = MultFunction::sphere(0);
    long d = K.delta();
    if (!super) {
        ck.scalars(tag + " trace of Z(1_units) is delta + 1", S.trace_Z(units), Scalar(d + 1));
    } else {
        ck.scalars(tag + " Weil term of 1_units is delta", S.weil_local_term(units), Scalar(d));
    }
    if (d == 0) {
        MultFunction sphere = MultFunction::sphere(1);
        if (!super)
            ck.scalars(tag + " trace of Z(1_{|t|=q}) is q^{-1/2}", S.trace_Z(sphere), K.sqrt_q_power(-1));
        else
            ck.scalars(tag + " Weil term of 1_{|t|=q} is -q^{-1/2}", S.weil_local_term(sphere), -K.sqrt_q_power(-1));
    }
    for (unsigned e = 1; e <= 2; ++e) {
        auto chars = characters_of_conductor(K, e);
        if (chars.empty()) continue;
        MultFunction f = MultFunction::character_on_units(K, chars.front());
        if (!super)
            ck.scalars(tag + " trace of Z(chi on units) is dim K_conj(chi), e=" + std::to_string(e), S.trace_Z(f),
                       Scalar(static_cast<long>(S.block(K.conj(chars.front())).dimension())));
        else
            ck.scalars(tag + " Weil term of chi on units is delta + e, e=" + std::to_string(e), S.weil_local_term(f),
                       Scalar(d + static_cast<long>(e)));
    }
}

void suite_trace_formula(Checker& ck, const VerifyOptions& o, bool super) {
    const auto& fields = trace_fields();
    int count = per_field(o, fields.size());
    for (const auto& fp : fields) {
        LocalField K(fp, 6, 3);
        Scattering S(K);
        const std::string tag = field_tag(K);
        ck.guarded(tag + " pinned values", [&] { pinned_trace_checks(ck, S, super); });
        auto fs = trace_test_functions(K, o, count);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const MultFunction& f = fs[i];
            std::string name = tag + " random f " + std::to_string(i);
            ck.guarded(name, [&] {
                if (!super) {
                    ck.scalars_vs(name + ": Tr Z(f) = int f^ T", S.trace_Z(f), S.trace_formula_rhs(f),
                                  numeric_spectral_integral(S.calculus(), f, MultiplierKind::T));
                } else {
                    Scalar lhs = S.supertrace_Z(f) + f.at_one(K);
                    ck.scalars_vs(name + ": sTr Z(f) + f(1) = int f^ H", lhs, S.weil_local_term(f),
                                  numeric_spectral_integral(S.calculus(), f, MultiplierKind::H));
                }
            });
        }
    }
}

void suite_connes(Checker& ck, const VerifyOptions& o) {
    // Kernel shape: hermitian where Q_n is a projection, vanishing rule, Q_0 = K_1 at delta = 0.
    for (std::uint64_t p : {2u, 3u})
        for (unsigned d = 0; d <= 2; ++d) {
            LocalField K({p, 1, d}, 6, 3);
            Scattering S(K);
            ConnesTrace C(S);
            const std::string tag = field_tag(K);
            ck.guarded(tag + " kernel shape", [&] {
                bool herm = true, vanish = true;
                for (unsigned e = 0; e <= 3; ++e)
                    for (const auto& chi : characters_of_conductor(K, e))
                        for (int n = 0; n <= 3; ++n) {
                            SeparableKernel k = C.q_kernel(n, chi);
                            if (2 * n >= static_cast<int>(d)) herm = herm && k.is_hermitian();
                            if (!chi.is_trivial() && 2 * n < static_cast<int>(e + d)) vanish = vanish && k.is_zero();
                        }
                ck.record(tag + " Q_n kernels hermitian for 2n >= delta", herm, true);
                ck.record(tag + " ramified Q_n kernels vanish for 2n < e + delta", vanish, true);
                if (d == 0)
                    ck.record(tag + " Q_0 is the interacting projection", C.q_kernel(0, K.trivial()).equals(S.block(K.trivial()).kernel()),
                              true);
            });
        }
    // Three-way agreement on Q_p.
    for (std::uint64_t p : {2u, 3u}) {
        LocalField K({p, 1, 0}, 6, 3);
        Scattering S(K);
        ConnesTrace C(S);
        std::vector<std::pair<std::string, MultFunction>> fs{{"1_units", MultFunction::sphere(0)},
                                                             {"1_{|t|=q}", MultFunction::sphere(1)}};
        for (unsigned e = 1; e <= 2; ++e) {
            auto chars = characters_of_conductor(K, e);
            if (!chars.empty())
                fs.push_back({"ramified e=" + std::to_string(e), MultFunction::character_on_units(K, chars.front())});
        }
        for (const auto& [label, f] : fs) {
            unsigned ef = 0;
            for (const auto& [chi, r] : mellin(K, f)) ef = std::max(ef, chi.e);
            for (int n = 0; n <= 2; ++n) {
                std::string name = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " f=" + label;
                ck.guarded(name, [&] {
                    Scalar spectral = C.trace_Qn_Uf(n, f);
                    Scalar brute = C.brute_force_trace(n, f, n + 3);
                    ck.scalars(name + ": grid oracle = spectral trace", brute, spectral);
                    if (2 * n >= static_cast<int>(ef))
                        ck.scalars(name + ": closed form = spectral trace", C.closed_form_trace(n, f), spectral);
                    Scalar stable = spectral - Scalar(2 * n + 1) * f.at_one(K);
                    if (2 * n >= static_cast<int>(ef))
                        ck.scalars(name + ": stabilizes at minus the Weil term", stable, -S.weil_local_term(f));
                });
            }
        }
    }
    // Sector oracle on (q, delta) = (3, 2).
    LocalField K({3, 1, 2}, 6, 3);
    Scattering S(K);
    ConnesTrace C(S);
    RandomSource rng(mix(o.seed, 800));
    std::vector<std::pair<std::string, MultFunction>> fs{{"1_units", MultFunction::sphere(0)},
                                                         {"1_{|t|=q}", MultFunction::sphere(1)},
                                                         {"random invariant", rng.mult_function(K, 0, -2, 2, 3)}};
    for (const auto& [label, f] : fs)
        for (int n = 0; n <= 1; ++n) {
            std::string name = "q=3 delta=2 n=" + std::to_string(n) + " f=" + label;
            ck.guarded(name, [&] {
                ck.scalars(name + ": sector oracle = spectral trace", C.sector_trace(n, f), C.trace_Qn_Uf(n, f));
            });
        }
}

void suite_kernel_lemma(Checker& ck, const VerifyOptions& o) {
    LocalField K({3, 1, 0}, 6, 3);
    RandomSource rng(mix(o.seed, 900));
    auto pts = sample_points(256);
    for (int i = 0; i < o.random_cases; ++i) {
        std::string name = "random kernel " + std::to_string(i);
        ck.guarded(name, [&] {
            LaurentKernel A = rng.laurent_kernel(K, -3, 3);
            std::complex<double> numeric = 0;
            for (auto z : pts) {
                std::complex<double> v = 0;
                for (const auto& [idx, c] : A.coeffs())
                    v += c.embed() * std::pow(z, idx.first) * std::pow(std::conj(z), idx.second);
                numeric += v;
            }
            numeric /= static_cast<double>(pts.size());
            ck.scalars_vs(name + ": shifted double integrals sum to the diagonal integral",
                          A.shifted_double_integral_sum(), A.diagonal_integral(), numeric);
        });
    }
}

struct SuiteEntry {
    std::string name;
    std::string summary;
    std::function<void(Checker&, const VerifyOptions&)> run;
};

const std::vector<SuiteEntry>& registry() {
    static const std::vector<SuiteEntry> suites{
        {"functional-equation", "Fourier transform acts by the Gamma factors; root numbers unimodular",
         suite_functional_equation},
        {"conductor-operator", "log|x| is z d/dz and A + F A F^-1 acts by H", suite_conductor_operator},
        {"orthogonality", "incoming space is orthogonal to its Fourier transform", suite_orthogonality},
        {"interacting-space", "dimensions, bases, kernel and projector of the interacting space",
         suite_interacting_space},
        {"time-delay", "T = S D(conj S), T against H, and the time delay sums", suite_time_delay},
        {"trace-formula", "trace of the contraction semigroup against T",
         [](Checker& c, const VerifyOptions& o) { suite_trace_formula(c, o, false); }},
        {"weil-term", "graded trace plus f(1) against H",
         [](Checker& c, const VerifyOptions& o) { suite_trace_formula(c, o, true); }},
        {"connes", "cutoff traces: spectral, closed form, grid and sector oracles", suite_connes},
        {"kernel-lemma", "summed shifted double integrals equal the diagonal integral", suite_kernel_lemma},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& s : registry()) out.push_back(s.name);
        return out;
    }();
    return names;
}

const std::string& suite_summary(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return s.summary;
    throw std::invalid_argument("unknown suite: " + name);
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& options) {
    for (const auto& s : registry()) {
        if (s.name != name) continue;
        SuiteReport report;
        report.suite = s.name;
        report.summary = s.summary;
        auto start = std::chrono::steady_clock::now();
        Checker ck(report);
        ck.guarded(name, [&] { s.run(ck, options); });
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    }
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<SuiteReport> run_all_suites(const VerifyOptions& options) {
    const auto& names = suite_names();
    std::vector<SuiteReport> out(names.size());
    const int count = static_cast<int>(names.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = run_suite(names[static_cast<std::size_t>(i)], options);
    return out;
}

}  // namespace pscat
