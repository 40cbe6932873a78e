#include "cli.hpp"

#include "pscat/connes.hpp"
#include "pscat/json_io.hpp"
#include "pscat/scattering.hpp"
#include "pscat/verify.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

namespace pscat::cli {

namespace {

struct SessionConfig {
    std::uint64_t p = 2;
    unsigned f = 1;
    unsigned delta = 0;
    unsigned max_level = 6;
    unsigned max_conductor = 3;
    std::string mode = "both";
    std::uint64_t seed = 1;
    std::string out;
    std::string function;
    std::string suite = "all";
    std::string multiplier;
    int n = 0;
    int grid_level = -1;
    int samples = 16;
    bool oracle = false;
};

// Errors in the inputs rather than in the mathematics.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::unique_ptr<LocalField> make_field(const SessionConfig& c) {
    if (!is_prime(c.p)) throw UsageError("--p must be prime");
    if (c.f == 0) throw UsageError("--f must be positive");
    return std::make_unique<LocalField>(FieldParams{c.p, c.f, c.delta}, c.max_level, c.max_conductor);
}

Json field_json(const LocalField& K) {
    return Json{{"p", K.p()}, {"f", K.params().f}, {"delta", K.delta()}, {"q", K.q()}, {"N", K.ctx()->n()}};
}

Json load_function_file(const SessionConfig& c) {
    if (c.function.empty()) throw UsageError("--function <file.json> is required");
    try {
        return read_json_file(c.function);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

MultFunction load_mult(const LocalField& K, const SessionConfig& c) {
    Json j = load_function_file(c);
    try {
        if (j.contains("terms")) return to_mult(K, bruhat_from_json(K, j));
        return mult_from_json(K, j);
    } catch (const Json::exception& e) {
        throw UsageError(std::string("bad function file: ") + e.what());
    }
}

std::string complex_text(std::complex<double> z) {
    std::ostringstream os;
    os << std::setprecision(12) << z.real();
    if (std::abs(z.imag()) > 1e-15) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

// Adds the exact and numeric forms of a value to a report, per --mode.
// Returns false when --mode both finds exact and numeric disagreeing.
bool add_value(Json& report, const std::string& key, const LocalField& K, const Scalar& exact,
               std::complex<double> numeric, const SessionConfig& c) {
    double logq = std::log(static_cast<double>(K.q()));
    Json v;
    if (c.mode != "numeric") v["value_logq_units"] = scalar_to_json(K, exact);
    v["embedded"] = (c.mode == "numeric" ? numeric : exact.embed()).real() * logq;
    if (std::abs(numeric.imag()) > 1e-12) v["embedded_imag"] = numeric.imag() * logq;
    v["logq_factor"] = logq;
    bool ok = true;
    if (c.mode == "both") {
        ok = numerically_close(exact.embed(), numeric);
        v["numeric_logq_units"] = numeric.real();
        v["numeric_agrees"] = ok;
    }
    report[key] = v;
    return ok;
}

void write_output(const SessionConfig& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw UsageError("cannot write " + c.out);
    file << text;
}

std::complex<double> numeric_integral(const SpectralCalculus& calc, const MultFunction& f, MultiplierKind kind,
                                      int samples) {
    std::complex<double> total = 0;
    for (const auto& [chi, r] : mellin(calc.field(), f))
        total += (r * calc.multiplier(kind, chi)).circle_integral_numeric(samples);
    return total;
}

int cmd_gamma(const SessionConfig& c, std::ostream& out) {
    auto K = make_field(c);
    SpectralCalculus calc(*K);
    Json rows = Json::array();
    bool ok = true;
    for (unsigned e = 0; e <= c.max_conductor; ++e)
        for (const auto& chi : K->enumerate_characters(e)) {
            if (chi.e != e) continue;
            Json row{{"character", character_to_json(chi)}};
            std::string expo = std::to_string(e + c.delta);
            if (chi.is_trivial()) {
                row["form"] = "z^" + std::to_string(c.delta) + " (1 - z/sqrt(q)) / (1 - 1/(z sqrt(q)))";
                row["gamma"] = spectral_to_json(*K, calc.multiplier(MultiplierKind::Gamma, chi));
            } else if (calc.has_root_numbers()) {
                Scalar w = calc.root_number(chi);
                row["form"] = "w z^" + expo;
                if (c.mode != "numeric") row["root_number"] = scalar_to_json(*K, w);
                row["root_number_embedded"] = {w.embed().real(), w.embed().imag()};
                row["root_number_text"] = complex_text(w.embed());
                row["gamma"] = spectral_to_json(*K, calc.multiplier(MultiplierKind::Gamma, chi));
                if (c.mode == "both") {
                    bool unit = (w * w.conj()) == Scalar(1) && std::abs(std::abs(w.embed()) - 1) < kNumericTolerance;
                    row["unimodular"] = unit;
                    ok = ok && unit;
                }
            } else {
                row["form"] = "w z^" + expo + " (root number needs concrete additive arithmetic)";
            }
            rows.push_back(row);
        }
    Json report{{"field", field_json(*K)}, {"gamma", rows}};
    write_output(c, out, report.dump(2) + "\n");
    return ok ? kPass : kVerificationFailure;
}

int cmd_spectral_sample(const SessionConfig& c, std::ostream& out) {
    auto K = make_field(c);
    if (c.samples <= 0) throw UsageError("--samples must be positive");
    SpectralCalculus calc(*K);
    SpectralElement l;
    if (!c.multiplier.empty()) {
        static const std::map<std::string, MultiplierKind> kinds{{"gamma", MultiplierKind::Gamma},
                                                                {"H", MultiplierKind::H},
                                                                {"T", MultiplierKind::T},
                                                                {"S", MultiplierKind::S},
                                                                {"alpha", MultiplierKind::Alpha}};
        auto it = kinds.find(c.multiplier);
        if (it == kinds.end()) throw UsageError("--multiplier must be one of gamma, H, T, S, alpha");
        for (unsigned e = 0; e <= c.max_conductor; ++e)
            for (const auto& chi : K->enumerate_characters(e)) {
                if (chi.e != e) continue;
                if (it->second == MultiplierKind::Gamma && !chi.is_trivial() && !calc.has_root_numbers()) continue;
                l.emplace(chi, calc.multiplier(it->second, chi));
            }
    } else {
        Json j = load_function_file(c);
        l = j.contains("terms") ? spectral_transform(*K, bruhat_from_json(*K, j)) : mellin(*K, mult_from_json(*K, j));
    }
    std::ostringstream os;
    os << std::setprecision(15) << "chi_id,theta,re,im\n";
    for (const auto& [chi, r] : l)
        for (int k = 0; k < c.samples; ++k) {
            double theta = 2 * std::numbers::pi * k / c.samples;
            std::complex<double> v = r.eval_numeric(std::polar(1.0, theta));
            os << chi.id() << "," << theta << "," << v.real() << "," << v.imag() << "\n";
        }
    write_output(c, out, os.str());
    return kPass;
}

int cmd_verify(const SessionConfig& c, std::ostream& out) {
    VerifyOptions opts;
    opts.seed = c.seed;
    std::vector<SuiteReport> reports;
    if (c.suite == "all") {
        reports = run_all_suites(opts);
    } else {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), c.suite) == names.end())
            throw UsageError("unknown suite '" + c.suite + "'");
        reports.push_back(run_suite(c.suite, opts));
    }
    std::ostringstream os;
    bool ok = true;
    for (const auto& r : reports) {
        bool pass = c.mode == "exact" ? r.exact_passed() : c.mode == "numeric" ? r.numeric_passed() : r.passed();
        ok = ok && pass;
        os << (pass ? "PASS " : "FAIL ") << r.suite << " (" << r.checks.size() << " checks): " << r.summary << "\n";
        for (const auto& ch : r.checks) {
            bool bad = c.mode == "exact" ? !ch.exact_ok : c.mode == "numeric" ? !ch.numeric_ok : !ch.passed();
            if (!bad) continue;
            os << "  failed: " << ch.name << " [exact " << (ch.exact_ok ? "ok" : "FAIL") << ", numeric "
               << (ch.numeric_ok ? "ok" : "FAIL") << "]";
            if (!ch.detail.empty()) os << " " << ch.detail;
            os << "\n";
        }
    }
    os << (ok ? "all suites passed" : "verification failed") << " (seed " << c.seed << ")\n";
    write_output(c, out, os.str());
    return ok ? kPass : kVerificationFailure;
}

int cmd_trace_like(const SessionConfig& c, std::ostream& out, const std::string& which) {
    auto K = make_field(c);
    Scattering S(*K);
    MultFunction f = load_mult(*K, c);
    Json report{{"field", field_json(*K)}, {"command", which}};
    bool ok = true;
    if (which == "trace") {
        Scalar tr = S.trace_Z(f);
        Scalar rhs = S.trace_formula_rhs(f);
        ok = add_value(report, "trace", *K, tr, numeric_integral(S.calculus(), f, MultiplierKind::T, 4096), c);
        report["identity_holds"] = tr == rhs;
        ok = ok && tr == rhs;
    } else if (which == "supertrace") {
        Scalar st = S.supertrace_Z(f);
        Scalar rhs = S.weil_local_term(f) - f.at_one(*K);
        std::complex<double> num = numeric_integral(S.calculus(), f, MultiplierKind::H, 4096) - f.at_one(*K).embed();
        ok = add_value(report, "supertrace", *K, st, num, c);
        report["identity_holds"] = st == rhs;
        ok = ok && st == rhs;
    } else {
        Scalar w = S.weil_local_term(f);
        Scalar lhs = S.supertrace_Z(f) + f.at_one(*K);
        ok = add_value(report, "weil", *K, w, numeric_integral(S.calculus(), f, MultiplierKind::H, 4096), c);
        report["identity_holds"] = w == lhs;
        ok = ok && w == lhs;
    }
    // The headline value sits at the top level as well.
    for (const char* key : {"value_logq_units", "embedded"})
        if (report[which].contains(key)) report[key] = report[which][key];
    write_output(c, out, report.dump(2) + "\n");
    return ok ? kPass : kVerificationFailure;
}

int cmd_connes(const SessionConfig& c, std::ostream& out) {
    auto K = make_field(c);
    if (c.n < 0) throw UsageError("--n must be non-negative");
    Scattering S(*K);
    ConnesTrace C(S);
    MultFunction f = load_mult(*K, c);
    Json report{{"field", field_json(*K)}, {"n", c.n}};
    Scalar spectral = C.trace_Qn_Uf(c.n, f);
    std::complex<double> spectral_num = 0;
    for (const auto& [chi, r] : mellin(*K, f))
        spectral_num += (C.q_kernel(c.n, chi).diagonal() * r).circle_integral_numeric(4096);
    bool ok = add_value(report, "spectral_trace", *K, spectral, spectral_num, c);
    Json diffs = Json::object();
    if (2 * c.n >= static_cast<int>(c.delta)) {
        Scalar closed = C.closed_form_trace(c.n, f);
        ok = add_value(report, "closed_form_trace", *K, closed, closed.embed(), c) && ok;
        diffs["closed_form_minus_spectral"] = scalar_to_json(*K, closed - spectral);
        ok = ok && closed == spectral;
    } else {
        report["closed_form_trace"] = "not defined for 2n < delta";
    }
    if (c.oracle) {
        Scalar oracle;
        if (K->params().concrete()) {
            int M = c.grid_level >= 0 ? c.grid_level : C.default_grid_level(c.n, f);
            report["grid_level"] = M;
            try {
                oracle = C.brute_force_trace(c.n, f, M);
            } catch (const std::length_error& e) {
                throw UsageError(std::string("infeasible grid: ") + e.what());
            }
        } else {
            if (!C.sphere_values(f)) throw UsageError("outside Q_p the oracle needs a unit-invariant function");
            oracle = C.sector_trace(c.n, f);
        }
        ok = add_value(report, "oracle_trace", *K, oracle, oracle.embed(), c) && ok;
        diffs["oracle_minus_spectral"] = scalar_to_json(*K, oracle - spectral);
        ok = ok && oracle == spectral;
    }
    report["differences"] = diffs;
    report["all_agree"] = ok;
    write_output(c, out, report.dump(2) + "\n");
    return ok ? kPass : kVerificationFailure;
}

void add_field_flags(CLI::App* sub, SessionConfig& c) {
    sub->add_option("--p", c.p, "residue characteristic")->capture_default_str();
    sub->add_option("--f", c.f, "residue degree (q = p^f)")->capture_default_str();
    sub->add_option("--delta", c.delta, "different exponent")->capture_default_str();
    sub->add_option("--max-conductor", c.max_conductor, "largest character conductor")->capture_default_str();
    sub->add_option("--max-level", c.max_level, "deepest ball level")->capture_default_str();
    sub->add_option("--mode", c.mode, "exact, numeric or both")
        ->check(CLI::IsMember({"exact", "numeric", "both"}))
        ->capture_default_str();
    sub->add_option("--out", c.out, "write the report to this file");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    SessionConfig c;
    CLI::App app{"exact p-adic scattering and trace identities"};
    app.name("pscat");
    app.require_subcommand(1);

    auto* gamma = app.add_subcommand("gamma", "table of Gamma factors and root numbers");
    add_field_flags(gamma, c);

    auto* sample = app.add_subcommand("spectral-sample", "CSV samples of a spectral function on the circles");
    add_field_flags(sample, c);
    sample->add_option("--function", c.function, "function JSON (Schwartz-Bruhat or multiplicative)");
    sample->add_option("--multiplier", c.multiplier, "sample a multiplier instead: gamma, H, T, S, alpha");
    sample->add_option("--samples", c.samples, "points per circle")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", c.suite, "suite name or 'all'")->capture_default_str();
    verify->add_option("--seed", c.seed, "seed of the randomized cases")->capture_default_str();
    verify->add_option("--mode", c.mode, "exact, numeric or both")
        ->check(CLI::IsMember({"exact", "numeric", "both"}))
        ->capture_default_str();
    verify->add_option("--out", c.out, "write the report to this file");

    std::vector<std::pair<std::string, CLI::App*>> traces;
    for (const char* name : {"trace", "supertrace", "weil"}) {
        const char* help = std::string(name) == "trace"        ? "trace of Z(f) and its spectral integral"
                           : std::string(name) == "supertrace" ? "graded trace of Z(f)"
                                                               : "local Weil term of f";
        auto* sub = app.add_subcommand(name, help);
        add_field_flags(sub, c);
        sub->add_option("--function", c.function, "function JSON")->required();
        traces.emplace_back(name, sub);
    }

    auto* connes = app.add_subcommand("connes", "cutoff trace Tr(Q_n U(f)) three ways");
    add_field_flags(connes, c);
    connes->add_option("--n", c.n, "cutoff exponent (Lambda = q^n)")->required();
    connes->add_option("--function", c.function, "function JSON")->required();
    connes->add_flag("--oracle", c.oracle, "also run the brute-force oracle");
    connes->add_option("--grid-level", c.grid_level, "grid level M of the oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kPass : kUsageError;
    }

    try {
        if (*gamma) return cmd_gamma(c, out);
        if (*sample) {
            if (c.function.empty() == c.multiplier.empty())
                throw UsageError("give exactly one of --function and --multiplier");
            return cmd_spectral_sample(c, out);
        }
        if (*verify) return cmd_verify(c, out);
        for (const auto& [name, sub] : traces)
            if (*sub) return cmd_trace_like(c, out, name);
        if (*connes) return cmd_connes(c, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::length_error& e) {
        err << "error: size bound exceeded: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
    return kUsageError;
}

}  // namespace pscat::cli
