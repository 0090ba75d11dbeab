#include "cartan/json_io.hpp"

#include <sstream>

#include "cartan/invariants.hpp"
#include "cartan/slices.hpp"

namespace cartan {

namespace {

std::uint32_t get_u32(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw ParseError(std::string("missing or non-integer field \"") + key + "\"");
    const std::int64_t v = j[key].get<std::int64_t>();
    if (v < 0) throw ParseError(std::string("field \"") + key + "\" must be nonnegative");
    return static_cast<std::uint32_t>(v);
}

Ambient ambient_from(const Json& j) {
    try {
        return Ambient(get_u32(j, "p"), get_u32(j, "n"));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

TruncPoly<Fp> poly_from_coeffs(const Json& coeffs, const Ambient& amb) {
    if (!coeffs.is_array()) throw ParseError("\"coeffs\" must be an array");
    if (coeffs.size() > amb.ring_dim())
        throw ParseError("coefficient list longer than the ring dimension");
    TruncPoly<Fp> f(amb, Fp(amb.p, 0));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.set_coeff(i, scalar_from_json(coeffs[i], amb.p));
    return f;
}

} // namespace

Json scalar_to_json(const Fp& a) { return Json(a.value()); }

Json scalar_to_json(const FpExt& a) {
    Json arr = Json::array();
    for (auto c : a.coeffs()) arr.push_back(c);
    return arr;
}

Fp scalar_from_json(const Json& j, std::uint32_t p) {
    if (!j.is_number_integer()) throw ParseError("scalar must be a decimal integer");
    return Fp(p, j.get<std::int64_t>());
}

FpExt scalar_from_json(const Json& j, const std::shared_ptr<const FpExtCtx>& ctx) {
    if (j.is_number_integer()) return FpExt::from_int(ctx, j.get<std::int64_t>());
    if (!j.is_array()) throw ParseError("extension scalar must be an integer or a list");
    std::vector<std::int64_t> coeffs;
    for (const auto& c : j) {
        if (!c.is_number_integer()) throw ParseError("extension scalar entries must be integers");
        coeffs.push_back(c.get<std::int64_t>());
    }
    return FpExt(ctx, std::move(coeffs));
}

Json poly_to_json(const TruncPoly<Fp>& f) {
    const Ambient& amb = f.ambient();
    std::uint64_t last = 0;
    for (std::uint64_t i = 0; i < amb.ring_dim(); ++i)
        if (!f.coeff(i).is_zero()) last = i + 1;
    Json coeffs = Json::array();
    for (std::uint64_t i = 0; i < last; ++i) coeffs.push_back(scalar_to_json(f.coeff(i)));
    return Json{{"p", amb.p}, {"n", amb.n}, {"coeffs", std::move(coeffs)}};
}

TruncPoly<Fp> poly_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("polynomial must be an object");
    const Ambient amb = ambient_from(j);
    if (!j.contains("coeffs")) throw ParseError("polynomial needs a \"coeffs\" array");
    return poly_from_coeffs(j["coeffs"], amb);
}

TruncPoly<FpExt> poly_ext_from_json(const Json& j, std::uint32_t m) {
    if (!j.is_object()) throw ParseError("polynomial must be an object");
    const Ambient amb = ambient_from(j);
    auto ctx = FpExtCtx::get(amb.p, m);
    FpExt zero = FpExt::from_int(ctx, 0);
    TruncPoly<FpExt> f(amb, zero);
    const Json& coeffs = j.at("coeffs");
    if (!coeffs.is_array()) throw ParseError("\"coeffs\" must be an array");
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.set_coeff(i, scalar_from_json(coeffs[i], ctx));
    return f;
}

Json derivation_to_json(const Derivation<Fp>& x) {
    const Ambient& amb = x.ambient();
    Json comps = Json::array();
    for (std::uint32_t i = 0; i < amb.n; ++i) comps.push_back(poly_to_json(x.component(i)));
    return Json{
        {"type", "derivation"}, {"p", amb.p}, {"n", amb.n}, {"comps", std::move(comps)}};
}

Json derivation_to_json(const Derivation<Fp>& x, const std::string& algebra_tag) {
    Json j = derivation_to_json(x);
    j["algebra"] = algebra_tag;
    return j;
}

Derivation<Fp> derivation_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("derivation must be an object");
    const Ambient amb = ambient_from(j);
    if (!j.contains("comps") || !j["comps"].is_array())
        throw ParseError("derivation needs a \"comps\" array");
    const Json& comps = j["comps"];
    if (comps.size() != amb.n)
        throw ParseError("derivation needs exactly n component polynomials");
    Derivation<Fp> x(amb, Fp(amb.p, 0));
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        const Json& c = comps[i];
        if (c.is_array())
            x.set_component(i, poly_from_coeffs(c, amb));
        else if (c.is_object()) {
            TruncPoly<Fp> f = poly_from_json(c);
            require_same(amb, f.ambient());
            x.set_component(i, std::move(f));
        } else {
            throw ParseError("component must be a polynomial object or coefficient array");
        }
    }
    return x;
}

Json automorphism_to_json(const Automorphism<Fp>& g) {
    const Ambient& amb = g.ambient();
    Json imgs = Json::array();
    for (std::uint32_t i = 0; i < amb.n; ++i) imgs.push_back(poly_to_json(g.images()[i]));
    return Json{
        {"type", "automorphism"}, {"p", amb.p}, {"n", amb.n}, {"images", std::move(imgs)}};
}

Automorphism<Fp> automorphism_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("automorphism must be an object");
    const Ambient amb = ambient_from(j);
    if (!j.contains("images") || !j["images"].is_array())
        throw ParseError("automorphism needs an \"images\" array");
    const Json& imgs = j["images"];
    if (imgs.size() != amb.n) throw ParseError("automorphism needs exactly n images");
    std::vector<TruncPoly<Fp>> images;
    for (std::uint32_t i = 0; i < amb.n; ++i) {
        const Json& c = imgs[i];
        if (c.is_array())
            images.push_back(poly_from_coeffs(c, amb));
        else if (c.is_object())
            images.push_back(poly_from_json(c));
        else
            throw ParseError("image must be a polynomial object or coefficient array");
    }
    try {
        return Automorphism<Fp>(std::move(images));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

Json invariants_to_json(const std::vector<Fp>& values, const std::string& algebra) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(scalar_to_json(v));
    return Json{{"algebra", algebra}, {"values", std::move(arr)}};
}

Json delta_eps_to_json(std::uint32_t p, std::uint32_t n, const std::vector<Fp>& eps) {
    Json arr = Json::array();
    for (const auto& e : eps) arr.push_back(scalar_to_json(e));
    return Json{{"kind", "delta-eps"}, {"p", p}, {"n", n}, {"eps", std::move(arr)}};
}

Json omega_to_json(const std::vector<Fp>& eps, const std::vector<TruncPoly<Fp>>& f) {
    if (f.empty()) throw DomainError("omega document needs the parameter polynomials");
    const Ambient& amb = f[0].ambient();
    Json earr = Json::array(), farr = Json::array();
    for (const auto& e : eps) earr.push_back(scalar_to_json(e));
    for (const auto& fi : f) farr.push_back(poly_to_json(fi));
    return Json{{"kind", "omega"},
                {"p", amb.p},
                {"n", amb.n},
                {"eps", std::move(earr)},
                {"f", std::move(farr)}};
}

Derivation<Fp> slice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ParseError("slice document needs \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    const Ambient amb = ambient_from(j);
    auto read_eps = [&](std::uint32_t expected) {
        if (!j.contains("eps") || !j["eps"].is_array() || j["eps"].size() != expected)
            throw ParseError("slice document needs " + std::to_string(expected) +
                             " \"eps\" entries");
        std::vector<Fp> eps;
        for (const auto& e : j["eps"]) eps.push_back(scalar_from_json(e, amb.p));
        return eps;
    };
    try {
        if (kind == "delta-eps") {
            if (amb.n < 2) throw ParseError("delta-eps documents need n >= 2");
            const Ambient sub(amb.p, amb.n - 1);
            return delta_eps<Fp>(sub, read_eps(sub.n));
        }
        if (kind == "omega") {
            if (amb.n < 2) throw ParseError("omega documents need n >= 2");
            std::vector<Fp> eps = read_eps(amb.n - 1);
            if (!j.contains("f") || !j["f"].is_array() || j["f"].size() != amb.n - 1)
                throw ParseError("omega documents need n-1 \"f\" polynomials");
            std::vector<TruncPoly<Fp>> f;
            for (const auto& c : j["f"]) {
                if (c.is_array())
                    f.push_back(poly_from_coeffs(c, amb));
                else
                    f.push_back(poly_from_json(c));
            }
            return omega_element<Fp>(amb, eps, f);
        }
        if (kind == "torus") {
            if (!j.contains("index") || !j["index"].is_number_integer())
                throw ParseError("torus documents need an \"index\"");
            const std::uint32_t i = get_u32(j, "index");
            if (i + 1 >= amb.n) throw ParseError("torus index out of range");
            const Fp one(amb.p, 1);
            Derivation<Fp> t(amb, Fp(amb.p, 0));
            t.set_component(i, TruncPoly<Fp>::variable(amb, i, one));
            t.set_component(amb.n - 1, -TruncPoly<Fp>::variable(amb, amb.n - 1, one));
            return t;
        }
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown slice kind: " + kind);
}

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what()); // carries the byte position
    }
}

namespace {

std::string inspect_derivation(const Derivation<Fp>& x, std::ostringstream& out);

} // namespace

std::string inspect_element(const Json& doc) {
    if (!doc.is_object()) throw ParseError("element document must be a JSON object");
    std::ostringstream out;
    if (doc.contains("kind")) {
        Derivation<Fp> x = slice_from_json(doc);
        out << "slice element, kind " << doc["kind"].get<std::string>() << "\n";
        return inspect_derivation(x, out);
    }
    if (!doc.contains("type")) throw ParseError("element document needs a \"type\" field");
    const std::string type = doc["type"].get<std::string>();
    if (type == "automorphism") {
        Automorphism<Fp> g = automorphism_from_json(doc);
        out << "automorphism of B_n, ambient " << g.ambient().str() << "\n";
        for (std::uint32_t i = 0; i < g.ambient().n; ++i)
            out << "  x" << (i + 1) << " -> " << g.images()[i].str() << "\n";
        out << "special (constant Jacobian): " << (is_special(g) ? "yes" : "no") << "\n";
        return out.str();
    }
    if (type != "derivation") throw ParseError("unsupported element type: " + type);
    return inspect_derivation(derivation_from_json(doc), out);
}

namespace {

std::string inspect_derivation(const Derivation<Fp>& x, std::ostringstream& out) {
    const Ambient& amb = x.ambient();
    out << "derivation in W_" << amb.n << ", ambient " << amb.str() << "\n";
    out << "  element: " << x.str() << "\n";
    if (x.is_zero()) {
        out << "  zero element: invariants all zero, nilpotent, no filtration degree\n";
        return out.str();
    }
    out << "  filtration degree: " << filtration_degree(x) << "\n";
    std::vector<Fp> phis = phi_vector(x);
    out << "  invariants (W): [";
    for (std::size_t i = 0; i < phis.size(); ++i) out << (i ? ", " : "") << phis[i].value();
    out << "]\n";
    out << "  nilpotent: " << (is_nilpotent(x) ? "true" : "false") << "\n";
    auto ker = constants_subring(x);
    out << "  constants subring dimension: " << ker.size() << "\n";
    out << "  centralizer dimension: " << centralizer_dim(x) << "\n";
    Regularity reg = regularity_classify(x);
    out << "  regularity flags: trivial-constants=" << (reg.trivial_constants ? "true" : "false")
        << " minimal-centralizer=" << (reg.minimal_centralizer ? "true" : "false")
        << " independent-differentials=" << (reg.independent_differentials ? "true" : "false")
        << "\n";
    if (amb.n >= 2) {
        SnContext<Fp> ctx(amb, Fp(amb.p, 1));
        SnMembership mem = ctx.classify(x);
        const char* tag = mem == SnMembership::InSn
                              ? "in S_n"
                              : (mem == SnMembership::StildeOnly ? "divergence-free, outside S_n"
                                                                 : "outside (nonzero divergence)");
        out << "  special-algebra membership: " << tag << "\n";
        if (mem == SnMembership::InSn) {
            std::vector<Fp> q = quotient_s(ctx, x);
            out << "  invariants (S): [";
            for (std::size_t i = 0; i < q.size(); ++i) out << (i ? ", " : "") << q[i].value();
            out << "]\n";
        }
    }
    return out.str();
}

} // namespace

} // namespace cartan
