#include "fqzeta/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fqzeta/errors.hpp"

namespace fqzeta {

Json field_to_json(const FieldCtx& f) {
    return Json{{"p", f.p}, {"e", f.e}, {"modulus", f.modulus}};
}

Json poly_to_json(const MultiPoly& P) {
    const FieldCtx& f = *P.field();
    Json j = field_to_json(f);
    j["num_vars"] = P.num_vars();
    Json terms = Json::array();
    for (std::size_t i = 0; i < P.term_count(); ++i) {
        auto ex = P.exp(i);
        terms.push_back(Json{{"exp", std::vector<Exp>(ex.begin(), ex.end())},
                             {"coeff", f.coords(P.coeff(i))}});
    }
    j["terms"] = std::move(terms);
    return j;
}

MultiPoly poly_from_json(const Json& j) {
    auto f = field_create(j.at("p").get<std::uint32_t>(), j.at("e").get<std::uint32_t>());
    if (j.at("modulus").get<std::vector<std::uint32_t>>() != f->modulus)
        throw InvalidArgument("polynomial JSON carries an unexpected modulus");
    MultiPoly out(f.get(), j.at("num_vars").get<std::uint32_t>());
    for (auto& t : j.at("terms")) {
        auto exp = t.at("exp").get<std::vector<Exp>>();
        auto coords = t.at("coeff").get<std::vector<std::uint32_t>>();
        out.push_term(exp, f->from_coords(coords));
    }
    out.normalize();
    return out;
}

std::string coeff_string(const FieldCtx& f, std::uint16_t code) {
    if (f.e == 1) return std::to_string(code);
    auto c = f.coords(code);
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    return out + ")";
}

std::string pretty(const MultiPoly& P) {
    if (P.is_zero()) return "0";
    const FieldCtx& f = *P.field();
    std::string out;
    for (std::size_t i = 0; i < P.term_count(); ++i) {
        if (i) out += " + ";
        auto ex = P.exp(i);
        std::string mono;
        for (std::size_t v = 0; v < ex.size(); ++v) {
            if (!ex[v]) continue;
            if (!mono.empty()) mono += "*";
            mono += "t" + std::to_string(v);
            if (ex[v] > 1) mono += "^" + std::to_string(ex[v]);
        }
        std::uint16_t c = P.coeff(i);
        if (mono.empty()) {
            out += coeff_string(f, c);
        } else if (c == 1) {
            out += mono;
        } else {
            out += coeff_string(f, c) + "*" + mono;
        }
    }
    return out;
}

Json zero_report_to_json(const ZeroReport& rep, const FieldCtx& f) {
    Json j;
    Json betas = Json::array();
    for (auto& b : rep.betas.betas) betas.push_back(b.get_str());
    j["betas"] = std::move(betas);
    j["q"] = f.q;
    j["phi"] = rep.phi;
    j["degree"] = rep.degree;
    j["multiplicity_at_one"] = rep.multiplicity;
    j["predicted_zero"] = rep.predicted_zero;
    j["status"] = "ok";
    j["value_at_one"] = pretty(rep.value_at_one);
    return j;
}

Json invariance_report_to_json(const InvarianceReport& rep, const std::vector<DigitPerm>& perms,
                               const FieldCtx& f) {
    Json j;
    Json betas = Json::array(), images = Json::array(), ps = Json::array();
    for (auto& b : rep.betas.betas) betas.push_back(b.get_str());
    for (auto& b : rep.images.betas) images.push_back(b.get_str());
    for (auto& p : perms) ps.push_back(p.to_string());
    j["betas"] = std::move(betas);
    j["perms"] = std::move(ps);
    j["images"] = std::move(images);
    j["q"] = f.q;
    j["phi_before"] = rep.phi_before;
    j["phi_after"] = rep.phi_after;
    j["mode"] = rep.computed ? "computed" : "formula-level";
    if (rep.computed) {
        j["degree_before"] = rep.degree_before;
        j["degree_after"] = rep.degree_after;
    }
    j["status"] = rep.ok() ? "ok" : "VIOLATION";
    return j;
}

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string key_string(const FieldCtx& f, const BetaTuple& betas, const std::string& method) {
    std::string key = "p=" + std::to_string(f.p) + "|e=" + std::to_string(f.e) + "|betas=";
    for (std::size_t i = 0; i < betas.betas.size(); ++i) {
        if (i) key += ",";
        key += betas.betas[i].get_str();
    }
    key += "|method=" + method;
    return key;
}

} // namespace

std::string cache_key(const FieldCtx& f, const BetaTuple& betas, const std::string& method) {
    return hex64(fnv1a64(key_string(f, betas, method)));
}

std::optional<MultiPoly> cache_load(const std::string& dir, const FieldCtx& f, const BetaTuple& betas,
                                    const std::string& method) {
    std::filesystem::path path = std::filesystem::path(dir) / (cache_key(f, betas, method) + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    Json j = Json::parse(in, nullptr, true);
    if (j.at("key") != key_string(f, betas, method)) return std::nullopt; // hash collision
    return poly_from_json(j.at("poly"));
}

void cache_store(const std::string& dir, const FieldCtx& f, const BetaTuple& betas,
                 const std::string& method, const MultiPoly& poly) {
    std::filesystem::create_directories(dir);
    std::filesystem::path path = std::filesystem::path(dir) / (cache_key(f, betas, method) + ".json");
    Json j;
    j["key"] = key_string(f, betas, method);
    j["poly"] = poly_to_json(poly);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

} // namespace fqzeta
