#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cartan/invariants.hpp"
#include "cartan/json_io.hpp"
#include "cartan/sampling.hpp"
#include "cartan/slices.hpp"
#include "cartan/suites.hpp"

namespace py = pybind11;
using namespace cartan;

namespace {

Ambient make_ambient(std::uint32_t p, std::uint32_t n) { return Ambient(p, n); }

std::vector<std::int64_t> fp_values(const std::vector<Fp>& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.value());
    return out;
}

std::vector<Fp> fp_scalars(const Ambient& amb, const std::vector<std::int64_t>& v) {
    std::vector<Fp> out;
    out.reserve(v.size());
    for (auto x : v) out.emplace_back(amb.p, x);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computations in the Jacobson-Witt and special Lie algebras over F_p";

    py::register_exception<MismatchError>(m, "MismatchError");
    py::register_exception<DomainError>(m, "MathDomainError");
    py::register_exception<InternalCheckError>(m, "InternalCheckError");
    py::register_exception<ParseError>(m, "ElementParseError");

    py::class_<Ambient>(m, "Ambient")
        .def(py::init(&make_ambient), py::arg("p"), py::arg("n"))
        .def_readonly("p", &Ambient::p)
        .def_readonly("n", &Ambient::n)
        .def_property_readonly("ring_dim", &Ambient::ring_dim)
        .def("__repr__", [](const Ambient& a) { return "Ambient" + a.str(); });

    py::class_<TruncPoly<Fp>>(m, "TruncPoly")
        .def(py::init([](const Ambient& amb, const std::vector<std::int64_t>& coeffs) {
                 TruncPoly<Fp> f(amb, Fp(amb.p, 0));
                 if (coeffs.size() > amb.ring_dim())
                     throw DomainError("coefficient list longer than the ring dimension");
                 for (std::size_t i = 0; i < coeffs.size(); ++i)
                     f.set_coeff(i, Fp(amb.p, coeffs[i]));
                 return f;
             }),
             py::arg("ambient"), py::arg("coeffs"))
        .def_static("variable",
                    [](const Ambient& amb, std::uint32_t axis) {
                        return TruncPoly<Fp>::variable(amb, axis, Fp(amb.p, 1));
                    })
        .def_property_readonly("ambient", &TruncPoly<Fp>::ambient)
        .def("coeffs",
             [](const TruncPoly<Fp>& f) {
                 std::vector<std::int64_t> out;
                 for (std::uint64_t i = 0; i < f.ambient().ring_dim(); ++i)
                     out.push_back(f.coeff(i).value());
                 return out;
             })
        .def("min_degree", &TruncPoly<Fp>::min_degree)
        .def("is_zero", &TruncPoly<Fp>::is_zero)
        .def("__add__", [](const TruncPoly<Fp>& a, const TruncPoly<Fp>& b) { return a + b; })
        .def("__sub__", [](const TruncPoly<Fp>& a, const TruncPoly<Fp>& b) { return a - b; })
        .def("__mul__", [](const TruncPoly<Fp>& a, const TruncPoly<Fp>& b) { return a * b; })
        .def("__eq__", [](const TruncPoly<Fp>& a, const TruncPoly<Fp>& b) { return a == b; })
        .def("partial_derivative", &TruncPoly<Fp>::partial_derivative, py::arg("axis"))
        .def("__repr__", [](const TruncPoly<Fp>& f) { return f.str(); });

    py::class_<Derivation<Fp>>(m, "Derivation")
        .def(py::init([](const std::vector<TruncPoly<Fp>>& comps) {
            return Derivation<Fp>(comps);
        }))
        .def_static("partial",
                    [](const Ambient& amb, std::uint32_t axis) {
                        return Derivation<Fp>::partial(amb, axis, Fp(amb.p, 1));
                    })
        .def_static("from_json",
                    [](const std::string& text) {
                        return derivation_from_json(parse_document(text));
                    })
        .def_property_readonly("ambient", &Derivation<Fp>::ambient)
        .def("component", &Derivation<Fp>::component, py::arg("axis"))
        .def("apply", &Derivation<Fp>::apply)
        .def("is_zero", &Derivation<Fp>::is_zero)
        .def("__add__", [](const Derivation<Fp>& a, const Derivation<Fp>& b) { return a + b; })
        .def("__sub__", [](const Derivation<Fp>& a, const Derivation<Fp>& b) { return a - b; })
        .def("__eq__", [](const Derivation<Fp>& a, const Derivation<Fp>& b) { return a == b; })
        .def("scaled",
             [](const Derivation<Fp>& a, std::int64_t c) {
                 return a.scaled(Fp(a.ambient().p, c));
             })
        .def("to_json", [](const Derivation<Fp>& x) { return derivation_to_json(x).dump(); })
        .def("__repr__", [](const Derivation<Fp>& x) { return x.str(); });

    m.def("bracket", &bracket<Fp>, "commutator of two derivations");
    m.def("p_power", &p_power<Fp>, "restricted p-th power");
    m.def("divergence", &divergence<Fp>);
    m.def("filtration_degree", &filtration_degree<Fp>);
    m.def("witt_dim", &witt_dim);
    m.def("is_nilpotent", &is_nilpotent<Fp>);
    m.def("centralizer_dim", &centralizer_dim<Fp>);
    m.def("constants_dim",
          [](const Derivation<Fp>& x) { return constants_subring(x).size(); });

    m.def("phi_vector", [](const Derivation<Fp>& x) { return fp_values(phi_vector(x)); });
    m.def("quotient_w", [](const Derivation<Fp>& x) { return fp_values(quotient_w(x)); });
    m.def("phi_differential", [](const Derivation<Fp>& x, const Derivation<Fp>& y) {
        return fp_values(phi_differential(x, y));
    });
    m.def("regularity", [](const Derivation<Fp>& x) {
        Regularity r = regularity_classify(x);
        return py::make_tuple(r.trivial_constants, r.minimal_centralizer,
                              r.independent_differentials);
    });
    m.def("jordan_chevalley", &jordan_chevalley<Fp>);
    m.def("minimal_p_polynomial", [](const Derivation<Fp>& x) {
        auto mp = minimal_p_polynomial(x);
        return py::make_tuple(mp.degree_exp, fp_values(mp.coeffs));
    });

    py::class_<SnContext<Fp>>(m, "SnContext")
        .def(py::init([](const Ambient& amb) { return SnContext<Fp>(amb, Fp(amb.p, 1)); }))
        .def_property_readonly("ambient", &SnContext<Fp>::ambient)
        .def_property_readonly("dim", &SnContext<Fp>::dim)
        .def_property_readonly("stilde_dim", &SnContext<Fp>::stilde_dim)
        .def("basis", &SnContext<Fp>::basis)
        .def("torus", &SnContext<Fp>::torus)
        .def("classify", [](const SnContext<Fp>& ctx, const Derivation<Fp>& x) {
            switch (ctx.classify(x)) {
            case SnMembership::InSn:
                return "S";
            case SnMembership::StildeOnly:
                return "S-tilde";
            default:
                return "outside";
            }
        });

    m.def("special_generator",
          [](std::uint32_t i, std::uint32_t j, const TruncPoly<Fp>& u) {
              return special_generator(i, j, u);
          });
    m.def("sigma_embed", [](const Derivation<Fp>& x, const Ambient& target) {
        return sigma_embed(x, target);
    });
    m.def("quotient_s", [](const SnContext<Fp>& ctx, const Derivation<Fp>& x) {
        return fp_values(quotient_s(ctx, x));
    });

    py::class_<Automorphism<Fp>>(m, "Automorphism")
        .def(py::init([](const std::vector<TruncPoly<Fp>>& images) {
            return Automorphism<Fp>(images);
        }))
        .def_static("identity",
                    [](const Ambient& amb) {
                        return Automorphism<Fp>::identity(amb, Fp(amb.p, 1));
                    })
        .def_static("scaling",
                    [](const Ambient& amb, std::uint32_t axis, std::int64_t c) {
                        return Automorphism<Fp>::scaling(amb, axis, Fp(amb.p, c));
                    })
        .def_property_readonly("ambient", &Automorphism<Fp>::ambient)
        .def("images", &Automorphism<Fp>::images)
        .def("inverse", &Automorphism<Fp>::inverse)
        .def("is_special", [](const Automorphism<Fp>& g) { return is_special(g); });

    m.def("act", &act<Fp>, "induced action of a B_n automorphism on W_n");
    m.def("compose", [](const Automorphism<Fp>& g, const Automorphism<Fp>& h) {
        return compose(g, h);
    });
    m.def(
        "random_automorphism",
        [](const Ambient& amb, std::uint64_t seed, std::uint32_t depth, bool special) {
            Rng rng(seed);
            return random_automorphism(rng, amb, depth, special);
        },
        py::arg("ambient"), py::arg("seed"), py::arg("depth") = 2, py::arg("special") = false);

    m.def("delta_eps", [](const Ambient& amb, const std::vector<std::int64_t>& eps) {
        return delta_eps<Fp>(amb, fp_scalars(amb, eps));
    });
    m.def("omega_element", [](const SnContext<Fp>& ctx, const std::vector<std::int64_t>& eps,
                              const std::vector<TruncPoly<Fp>>& f) {
        return omega_element(ctx, fp_scalars(ctx.ambient(), eps), f);
    });
    m.def("tangent_decomposition", [](const Derivation<Fp>& x) {
        TangentReport r = tangent_decomposition(x);
        return py::make_tuple(r.orbit_dim, r.slice_dim, r.intersection_dim, r.sum_dim);
    });

    m.def(
        "run_suite",
        [](const std::string& id, std::uint32_t p, std::uint32_t n, std::uint64_t seed,
           std::uint32_t trials, std::uint32_t jobs) {
            suites::SuiteParams params{p, n, seed, trials, jobs};
            suites::SuiteReport rep = suites::run_suite(id, params);
            return py::make_tuple(!rep.failed(), rep.to_json().dump());
        },
        py::arg("suite"), py::arg("p") = 5, py::arg("n") = 0, py::arg("seed") = 1,
        py::arg("trials") = 100, py::arg("jobs") = 1,
        "run a verification suite; returns (ok, report_json)");
    m.def("list_suites", [] {
        std::vector<std::string> out;
        for (const auto& s : suites::all_suites()) out.push_back(s.id);
        return out;
    });
    m.def("inspect_json", [](const std::string& text) {
        return inspect_element(parse_document(text));
    });
}
