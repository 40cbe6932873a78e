#include "pscat/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pscat {

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return rational_from_int(j.get<std::int64_t>());
    throw std::invalid_argument("expected a rational as \"num/den\" or an integer");
}

Json scalar_to_json(const LocalField& K, const Scalar& x) {
    const ScalarContext* ctx = K.ctx();
    Json coords = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json list = Json::array();
        for (const auto& t : x.coords()[static_cast<std::size_t>(i)].terms())
            list.push_back(Json::array({ctx->field().key_to_exponent(t.key), rational_to_json(t.coeff)}));
        coords.push_back(std::move(list));
    }
    return Json{{"N", ctx->n()}, {"p", ctx->p()}, {"f", ctx->f()}, {"delta", ctx->delta()}, {"coords", coords}};
}

Scalar scalar_from_json(const LocalField& K, const Json& j) {
    if (!j.is_object()) return Scalar(rational_from_json(j));
    const ScalarContext* ctx = K.ctx();
    if (j.at("N").get<std::uint64_t>() != ctx->n() || j.at("p").get<std::uint64_t>() != ctx->p() ||
        j.at("f").get<unsigned>() != ctx->f() || j.at("delta").get<unsigned>() != ctx->delta())
        throw std::invalid_argument("scalar was written for a different field");
    const Json& coords = j.at("coords");
    if (!coords.is_array() || coords.size() != 4) throw std::invalid_argument("scalar needs four coordinate lists");
    std::array<CycloNumber, 4> c;
    for (std::size_t i = 0; i < 4; ++i)
        for (const auto& term : coords[i]) {
            auto e = term.at(0).get<std::int64_t>();
            c[i] = c[i] + ctx->field().root(e).scaled(rational_from_json(term.at(1)));
        }
    return Scalar(ctx, c);
}

Json bruhat_to_json(const LocalField& K, const BruhatFunction& phi) {
    const auto& P = K.padic();
    Json terms = Json::array();
    for (const auto& t : phi.terms())
        terms.push_back({{"center", rational_to_json(P.to_rational(t.ball.center))},
                         {"radius_exp", t.ball.r},
                         {"coeff", scalar_to_json(K, t.coeff)}});
    return Json{{"terms", terms}};
}

BruhatFunction bruhat_from_json(const LocalField& K, const Json& j) {
    K.require_concrete("Schwartz-Bruhat input");
    const auto& P = K.padic();
    BruhatFunction phi;
    for (const auto& t : j.at("terms")) {
        QpNum c = P.from_rational(rational_from_json(t.at("center")));
        Scalar coeff = t.contains("coeff") ? scalar_from_json(K, t.at("coeff")) : Scalar(1);
        phi.add_term(K, c, t.at("radius_exp").get<int>(), coeff);
    }
    return phi;
}

Json mult_to_json(const LocalField& K, const MultFunction& f) {
    Json entries = Json::array();
    for (const auto& [key, v] : f.entries())
        entries.push_back({{"m", key.first}, {"coset", key.second}, {"coeff", scalar_to_json(K, v)}});
    return Json{{"level", f.level()}, {"entries", entries}};
}

MultFunction mult_from_json(const LocalField& K, const Json& j) {
    unsigned level = j.value("level", 0u);
    if (level > K.max_conductor()) throw std::length_error("function level exceeds the configured conductor bound");
    MultFunction f(level);
    for (const auto& e : j.at("entries")) {
        Scalar coeff = e.contains("coeff") ? scalar_from_json(K, e.at("coeff")) : Scalar(1);
        f.add(K, e.at("m").get<int>(), e.value("coset", std::int64_t{1}), coeff);
    }
    return f.pruned();
}

Json character_to_json(const UnitCharacter& chi) {
    return Json{{"id", chi.id()}, {"conductor", chi.e}, {"exps", chi.exps}};
}

UnitCharacter character_from_json(const LocalField& K, const Json& j) {
    return K.character_from_level(j.at("conductor").get<unsigned>(), j.at("exps").get<std::vector<std::int64_t>>());
}

Json spectral_to_json(const LocalField& K, const RationalSpectral& r) {
    Json num = Json::array();
    for (const auto& [m, c] : r.numerator()) num.push_back(Json::array({m, scalar_to_json(K, c)}));
    return Json{{"numerator", num}, {"u_exp", r.u_exp()}, {"v_exp", r.v_exp()}};
}

Json value_report(const LocalField& K, const Scalar& x) {
    std::complex<double> v = x.embed() * std::log(static_cast<double>(K.q()));
    Json out{{"value_logq_units", scalar_to_json(K, x)}, {"embedded", v.real()}};
    if (std::abs(v.imag()) > 1e-12) out["embedded_imag"] = v.imag();
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

}  // namespace pscat
