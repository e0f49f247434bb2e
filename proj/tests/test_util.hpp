#pragma once

#include <initializer_list>
#include <vector>

#include "fqzeta/polyring.hpp"

namespace fqzeta::testutil {

struct TermSpec {
    std::vector<Exp> exp;
    std::uint16_t coeff;
};

inline MultiPoly make_poly(const FieldCtx* f, std::uint32_t nvars, std::initializer_list<TermSpec> terms) {
    MultiPoly out(f, nvars);
    for (auto& t : terms) out.push_term(t.exp, t.coeff);
    out.normalize();
    return out;
}

} // namespace fqzeta::testutil
