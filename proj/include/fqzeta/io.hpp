#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "fqzeta/analysis.hpp"
#include "fqzeta/polyring.hpp"
#include "fqzeta/special.hpp"

namespace fqzeta {

using Json = nlohmann::ordered_json;

// -- JSON schemas --------------------------------------------------------------

Json field_to_json(const FieldCtx& f);

/// {p, e, modulus, num_vars, terms: [{exp: [...], coeff: [...]}]} with terms
/// in graded-lexicographic order and coefficients as F_p coordinate vectors.
Json poly_to_json(const MultiPoly& P);
MultiPoly poly_from_json(const Json& j);

Json zero_report_to_json(const ZeroReport& rep, const FieldCtx& f);
Json invariance_report_to_json(const InvarianceReport& rep, const std::vector<DigitPerm>& perms,
                               const FieldCtx& f);

// -- text ----------------------------------------------------------------------

/// "1 + 2*t0 + t0^2*t1" with graded-lex term order; extension coefficients
/// print as coordinate vectors "(c0,c1)".
std::string pretty(const MultiPoly& P);
std::string coeff_string(const FieldCtx& f, std::uint16_t code);

// -- result cache ----------------------------------------------------------------

/// Content address for a computation: FNV-1a over "p=..|e=..|betas=..|method=..".
std::string cache_key(const FieldCtx& f, const BetaTuple& betas, const std::string& method);

/// Load a cached polynomial, verifying the stored key fields.
std::optional<MultiPoly> cache_load(const std::string& dir, const FieldCtx& f, const BetaTuple& betas,
                                    const std::string& method);
void cache_store(const std::string& dir, const FieldCtx& f, const BetaTuple& betas,
                 const std::string& method, const MultiPoly& poly);

} // namespace fqzeta
