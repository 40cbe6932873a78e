#pragma once

#include "pscat/bruhat.hpp"
#include "pscat/local_field.hpp"
#include "pscat/mult_function.hpp"
#include "pscat/spectral.hpp"

#include "json.hpp"

#include <string>

namespace pscat {

using Json = nlohmann::json;

// Rationals are strings "num/den"; integers are also accepted on input.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// {"N", "p", "f", "delta", "coords": [four sparse lists of [exponent of zeta_N, rational]]}
// for x0 + x1 s + x2 a + x3 s a. Input also accepts a bare rational.
Json scalar_to_json(const LocalField& K, const Scalar& x);
Scalar scalar_from_json(const LocalField& K, const Json& j);

// {"terms": [{"center": rational, "radius_exp": r, "coeff": scalar}]}
Json bruhat_to_json(const LocalField& K, const BruhatFunction& phi);
BruhatFunction bruhat_from_json(const LocalField& K, const Json& j);

// {"level": e, "entries": [{"m": m, "coset": u, "coeff": scalar}]}
Json mult_to_json(const LocalField& K, const MultFunction& f);
MultFunction mult_from_json(const LocalField& K, const Json& j);

// {"id", "conductor", "exps"}
Json character_to_json(const UnitCharacter& chi);
UnitCharacter character_from_json(const LocalField& K, const Json& j);

// {"numerator": [[m, scalar]], "u_exp": j, "v_exp": k}
Json spectral_to_json(const LocalField& K, const RationalSpectral& r);

// {"value_logq_units": scalar, "embedded": real part times log q, "embedded_imag": ...}
Json value_report(const LocalField& K, const Scalar& x);

Json read_json_file(const std::string& path);

}  // namespace pscat
