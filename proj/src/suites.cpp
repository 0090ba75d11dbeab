#include "cartan/suites.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <thread>

#include "cartan/invariants.hpp"
#include "cartan/json_io.hpp"
#include "cartan/sampling.hpp"
#include "cartan/slices.hpp"

namespace cartan::suites {

namespace {

using cartan::Json;

struct Event {
    std::string name;
    std::string anchor;
    bool ok;
    CheckStatus on_mismatch;
    Json witness; // null unless !ok
};

using Events = std::vector<Event>;

struct Ctx {
    SuiteParams pr;
    Ambient amb;               // the suite's principal ambient
    CheckStatus mismatch;      // Fail, or Anomaly for report-only S-side runs at n = 2
    Fp zero() const { return Fp(amb.p, 0); }
    Fp one() const { return Fp(amb.p, 1); }
};

void push(Events& ev, std::string name, std::string anchor, bool ok, CheckStatus on_mismatch,
          Json witness = {}) {
    ev.push_back({std::move(name), std::move(anchor), ok, on_mismatch,
                  ok ? Json() : std::move(witness)});
}

constexpr std::size_t kMaxWitnesses = 8;

std::vector<CheckRecord> merge(const std::vector<Events>& batches) {
    std::vector<CheckRecord> out;
    std::map<std::string, std::size_t> index;
    for (const auto& evs : batches)
        for (const auto& e : evs) {
            auto [it, fresh] = index.emplace(e.name, out.size());
            if (fresh) out.push_back(CheckRecord{e.name, e.anchor, CheckStatus::Pass, 0, {}});
            CheckRecord& rec = out[it->second];
            if (e.ok) {
                ++rec.passes;
            } else {
                if (e.on_mismatch == CheckStatus::Fail)
                    rec.status = CheckStatus::Fail;
                else if (rec.status == CheckStatus::Pass)
                    rec.status = CheckStatus::Anomaly;
                if (rec.witnesses.size() < kMaxWitnesses) rec.witnesses.push_back(e.witness);
            }
        }
    return out;
}

using TrialFn = std::function<Events(std::uint32_t, Rng&)>;

std::vector<Events> run_trials(const Ctx& c, std::uint32_t count, const TrialFn& fn) {
    std::vector<Events> slots(count);
    auto work = [&](std::uint32_t t) {
        Rng rng = Rng::stream(c.pr.seed, t);
        try {
            slots[t] = fn(t, rng);
        } catch (const Error& e) {
            Events ev;
            push(ev, "unexpected-error", "no check in this suite may throw", false, c.mismatch,
                 Json{{"trial", t}, {"error", e.what()}});
            slots[t] = std::move(ev);
        }
    };
    const std::uint32_t jobs = std::max<std::uint32_t>(1, c.pr.jobs);
    if (jobs == 1 || count <= 1) {
        for (std::uint32_t t = 0; t < count; ++t) work(t);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        const std::uint32_t threads = std::min(jobs, count);
        pool.reserve(threads);
        for (std::uint32_t i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                for (std::uint32_t t = next.fetch_add(1); t < count; t = next.fetch_add(1))
                    work(t);
            });
        for (auto& th : pool) th.join();
    }
    return slots;
}

Json witness_xy(std::uint32_t trial, const Derivation<Fp>& x, const Derivation<Fp>* y = nullptr) {
    Json w{{"trial", trial}, {"x", derivation_to_json(x)}};
    if (y) w["y"] = derivation_to_json(*y);
    return w;
}

std::vector<Fp> fp_vector(const Ctx& c, std::initializer_list<int> vals) {
    std::vector<Fp> out;
    for (int v : vals) out.push_back(Fp(c.amb.p, v));
    return out;
}

bool vectors_equal(const std::vector<Fp>& a, const std::vector<Fp>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

Json fp_list(const std::vector<Fp>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(x.value());
    return arr;
}

// --------------------------------------------------------------------------
// dimensions
// --------------------------------------------------------------------------

std::vector<Events> suite_dimensions(const Ctx& c) {
    Events ev;
    const Ambient& amb = c.amb;
    const Fp one = c.one();
    push(ev, "dim-W", "dim W_n = n p^n", witt_dim(amb) == amb.n * amb.ring_dim(),
         CheckStatus::Fail);
    SnContext<Fp> ctx(amb, one);
    const std::uint64_t expect_s = static_cast<std::uint64_t>(amb.n - 1) * (amb.ring_dim() - 1);
    push(ev, "dim-S", "dim S_n = (n-1)(p^n - 1)", ctx.dim() == expect_s, CheckStatus::Fail,
         Json{{"computed", ctx.dim()}, {"expected", expect_s}});
    const std::uint64_t expect_st = static_cast<std::uint64_t>(amb.n - 1) * amb.ring_dim() + 1;
    push(ev, "dim-S-tilde", "dim of the divergence-free subalgebra = (n-1)p^n + 1",
         ctx.stilde_dim() == expect_st, CheckStatus::Fail,
         Json{{"computed", ctx.stilde_dim()}, {"expected", expect_st}});
    push(ev, "dim-gap", "codim of S_n in its divergence-free hull = n",
         ctx.stilde_dim() - ctx.dim() == amb.n, CheckStatus::Fail);
    bool div_free = true;
    for (const auto& b : ctx.basis())
        if (!divergence(b).is_zero()) div_free = false;
    push(ev, "basis-divergence-free", "every S_n basis element is divergence-free", div_free,
         CheckStatus::Fail);
    // torus generators
    auto torus = ctx.torus();
    bool torus_ok = torus.size() == amb.n - 1;
    for (const auto& t : torus) {
        torus_ok = torus_ok && ctx.contains(t) && p_power(t) == t;
        for (const auto& u : torus) torus_ok = torus_ok && bracket(t, u).is_zero();
    }
    push(ev, "torus-generators", "n-1 commuting p-fixed torus generators lie in S_n", torus_ok,
         CheckStatus::Fail);
    // Lie(G) at the numerical level: (W_n)_0 has dim n p^n - n and ad is
    // injective on it, so orbit tangents never exceed dim G.
    const auto w0 = filtration_basis_indices(amb, 0);
    bool lie_ok = w0.size() == witt_dim(amb) - amb.n;
    {
        // ad restricted to (W_n)_0 against a generic element
        Rng rng = Rng::stream(c.pr.seed, 0x1eadbeef);
        Derivation<Fp> x = random_derivation(rng, amb);
        Matrix<Fp> m(static_cast<std::size_t>(witt_dim(amb)), w0.size(), c.zero());
        for (std::size_t j = 0; j < w0.size(); ++j) {
            auto v = to_coords(bracket(witt_basis_element(amb, w0[j], one), x));
            for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = v[i];
        }
        lie_ok = lie_ok && rank(m) <= w0.size();
    }
    push(ev, "lieG-dim", "dim (W_n)_0 = n p^n - n bounds every orbit tangent", lie_ok,
         CheckStatus::Fail);
    return {std::move(ev)};
}

// --------------------------------------------------------------------------
// charpoly-shape
// --------------------------------------------------------------------------

std::vector<Events> suite_charpoly_shape(const Ctx& c) {
    auto slots = detail::p_power_slots(c.amb);
    TrialFn fn = [&, slots](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        Derivation<Fp> x = random_derivation(rng, amb);
        std::vector<Fp> phis;
        bool shape_ok = true;
        try {
            phis = phi_vector(x);
        } catch (const InternalCheckError&) {
            shape_ok = false;
        }
        push(ev, "p-support", "charpoly of rho(x) is a p-polynomial", shape_ok, c.mismatch,
             witness_xy(t, x));
        if (!shape_ok) return ev;
        // operator Cayley-Hamilton
        Matrix<Fp> rho = rho_matrix(x);
        Matrix<Fp> lhs = mat_power(rho, slots[amb.n]);
        Matrix<Fp> rhs(rho.rows(), rho.cols(), c.zero());
        for (std::uint32_t i = 0; i < amb.n; ++i)
            rhs += mat_power(rho, slots[i]).scaled(phis[i]);
        push(ev, "operator-cayley-hamilton", "rho(x)^(p^n) = sum phi_i(x) rho(x)^(p^i)",
             lhs == rhs, c.mismatch, witness_xy(t, x));
        // restricted Cayley-Hamilton at the derivation level
        auto iters = p_power_iterates(x, amb.n + 1);
        Derivation<Fp> acc(amb, c.zero());
        for (std::uint32_t i = 0; i < amb.n; ++i) acc += iters[i].scaled(phis[i]);
        push(ev, "restricted-cayley-hamilton", "x^[p]^n = sum phi_i(x) x^[p]^i",
             iters[amb.n] == acc, c.mismatch, witness_xy(t, x));
        if (t < 3) {
            auto a = charpoly_hessenberg(rho);
            auto b = charpoly_berkowitz(rho);
            bool agree = a.size() == b.size();
            for (std::size_t i = 0; agree && i < a.size(); ++i) agree = a[i] == b[i];
            push(ev, "charpoly-two-routes", "division-free and division-based charpoly agree",
                 agree, CheckStatus::Fail, witness_xy(t, x));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// lemma-for-1
// --------------------------------------------------------------------------

std::vector<Events> suite_lemma_for_1(const Ctx& c) {
    TrialFn fn = [&](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        Derivation<Fp> x = random_derivation(rng, amb);
        Derivation<Fp> y = random_derivation(rng, amb);
        Derivation<Fp> lhs = adjoint_reduced_apply(x, y);
        auto iters = p_power_iterates(x, amb.n);
        const bool small = amb.ring_dim() <= 32;
        if (small || t < 2) {
            std::vector<Fp> d = phi_differential(x, y);
            Derivation<Fp> rhs(amb, c.zero());
            for (std::uint32_t i = 0; i < amb.n; ++i) rhs += iters[i].scaled(d[i]);
            push(ev, "reduced-adjoint-identity",
                 "M_ad(x)(y) = sum (dphi_i)_x(y) x^[p]^i, dual-number route", lhs == rhs,
                 c.mismatch, witness_xy(t, x, &y));
            if (t < 2) {
                // adjugate-route cross-check of the same derivatives
                Matrix<Fp> jac = phi_jacobian(x);
                std::vector<Fp> yc = to_coords(y);
                std::vector<Fp> via_jac = jac.apply(yc);
                push(ev, "jacobian-route-agreement",
                     "adjugate-route differentials match the dual-number route",
                     vectors_equal(via_jac, d), CheckStatus::Fail, witness_xy(t, x, &y));
            }
        }
        if (!small) {
            // span route: the identity forces M_ad(x)(y) into the span of the
            // p-power iterates whenever those are independent
            SpanSolver<Fp> span(static_cast<std::size_t>(witt_dim(amb)));
            bool independent = true;
            for (const auto& it : iters) independent = independent && span.add(to_coords(it));
            if (independent) {
                auto coords = span.coordinates(to_coords(lhs));
                push(ev, "reduced-adjoint-in-span",
                     "M_ad(x)(y) lies in the span of x, x^[p], ..., x^[p]^(n-1)",
                     coords.has_value(), c.mismatch, witness_xy(t, x, &y));
            } else {
                std::vector<Fp> d = phi_differential(x, y);
                Derivation<Fp> rhs(amb, c.zero());
                for (std::uint32_t i = 0; i < amb.n; ++i) rhs += iters[i].scaled(d[i]);
                push(ev, "reduced-adjoint-identity",
                     "M_ad(x)(y) = sum (dphi_i)_x(y) x^[p]^i, dual-number route", lhs == rhs,
                     c.mismatch, witness_xy(t, x, &y));
            }
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// prop-pro-1
// --------------------------------------------------------------------------

std::vector<Events> suite_prop_pro_1(const Ctx& c) {
    TrialFn fn = [&](std::uint32_t t, Rng& rng) {
        Events ev;
        Derivation<Fp> x = random_regularity_mix(rng, c.amb, t);
        bool u1_eq_u3 = true;
        Regularity reg{};
        try {
            reg = regularity_classify(x);
        } catch (const InternalCheckError&) {
            u1_eq_u3 = false;
        }
        push(ev, "u1-equals-u3",
             "trivial constants subring iff independent invariant differentials", u1_eq_u3,
             c.mismatch, witness_xy(t, x));
        if (u1_eq_u3)
            push(ev, "u1-u2-agreement",
                 "trivial constants iff minimal centralizer (externally established)",
                 reg.trivial_constants == reg.minimal_centralizer, CheckStatus::Anomaly,
                 witness_xy(t, x));
        if (u1_eq_u3 && t < 12) {
            const bool dim_n = adjoint_reduced_image_dim(x) == c.amb.n;
            push(ev, "reduced-image-dim", "B^x = k iff the reduced adjoint image has dim n",
                 dim_n == reg.trivial_constants, c.mismatch, witness_xy(t, x));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// prop-pro-2-evidence
// --------------------------------------------------------------------------

std::vector<Events> suite_prop_pro_2(const Ctx& c) {
    Events fixed;
    push(fixed, "evidence-scope",
         "sampled tangent-rank evidence for the smoothness criterion; not a proof", true,
         CheckStatus::Fail);
    TrialFn fn = [&](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        if (t % 2 == 0) {
            std::vector<Fp> eps;
            eps.push_back(rng.fp_nonzero(amb.p));
            for (std::uint32_t i = 1; i < amb.n; ++i) eps.push_back(rng.fp(amb.p));
            Derivation<Fp> x = act(random_automorphism(rng, amb, 2, false),
                                   delta_eps<Fp>(amb, eps));
            push(ev, "smooth-fiber-rank",
                 "points over a base with phi_0 != 0 have full differential rank",
                 rank(phi_jacobian(x)) == amb.n, c.mismatch, witness_xy(t, x));
        } else {
            Derivation<Fp> x = (t % 4 == 1)
                                   ? act(random_automorphism(rng, amb, 2, false),
                                         random_in_filtration(rng, amb, 1))
                                   : act(random_automorphism(rng, amb, 2, false),
                                         Derivation<Fp>::partial(amb, 0, c.one()));
            push(ev, "constructed-nilpotent", "the degenerate sample really is nilpotent",
                 is_nilpotent(x), c.mismatch, witness_xy(t, x));
            push(ev, "nilpotent-nonregular-rank",
                 "nilpotent points outside the regular locus have deficient differential rank",
                 rank(phi_jacobian(x)) < amb.n, c.mismatch, witness_xy(t, x));
        }
        return ev;
    };
    auto batches = run_trials(c, c.pr.trials, fn);
    batches.insert(batches.begin(), std::move(fixed));
    return batches;
}

// --------------------------------------------------------------------------
// invariance
// --------------------------------------------------------------------------

std::vector<Events> suite_invariance(const Ctx& c) {
    auto sn = std::make_shared<SnContext<Fp>>(c.amb, c.one());
    TrialFn fn = [&, sn](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        const bool special = t % 2 == 0;
        Automorphism<Fp> g = random_automorphism(rng, amb, 2, special);
        Derivation<Fp> x = random_derivation(rng, amb);
        push(ev, "quotient-invariance", "the invariants are constant on automorphism orbits",
             vectors_equal(quotient_w(act(g, x)), quotient_w(x)), c.mismatch,
             Json{{"trial", t}, {"g", automorphism_to_json(g)}, {"x", derivation_to_json(x)}});
        if (t < 8) {
            Automorphism<Fp> h = random_automorphism(rng, amb, 2, false);
            push(ev, "action-composition", "act(g o h) = act(g) act(h)",
                 act(compose(g, h), x) == act(g, act(h, x)), CheckStatus::Fail,
                 witness_xy(t, x));
            Derivation<Fp> y = random_derivation(rng, amb);
            push(ev, "bracket-equivariance", "the action preserves the bracket",
                 act(g, bracket(x, y)) == bracket(act(g, x), act(g, y)), CheckStatus::Fail,
                 witness_xy(t, x, &y));
            push(ev, "p-power-equivariance", "the action preserves the p-map",
                 act(g, p_power(x)) == p_power(act(g, x)), CheckStatus::Fail, witness_xy(t, x));
        }
        if (special && t < 8 && amb.n >= 2) {
            Derivation<Fp> s = random_sn_element(rng, *sn);
            push(ev, "special-preserves-S", "special automorphisms stabilize S_n",
                 sn->classify(act(g, s)) == SnMembership::InSn, c.mismatch, witness_xy(t, s));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// prop-2-4
// --------------------------------------------------------------------------

std::vector<Events> suite_prop_2_4(const Ctx& c) {
    auto sn = std::make_shared<SnContext<Fp>>(c.amb, c.one());
    TrialFn fn = [&, sn](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        Derivation<Fp> x = random_sn_element(rng, *sn);
        std::vector<Fp> phis = phi_vector(x);
        push(ev, "phi0-vanishes-on-S", "phi_0 = 0 on S_n", phis[0].is_zero(), c.mismatch,
             witness_xy(t, x));
        auto iters = p_power_iterates(x, amb.n + 1);
        Derivation<Fp> acc(amb, c.zero());
        for (std::uint32_t i = 1; i < amb.n; ++i) acc += iters[i].scaled(phis[i]);
        push(ev, "restricted-cayley-hamilton-S", "x^[p]^n = sum_(i>=1) phi_i(x) x^[p]^i on S_n",
             iters[amb.n] == acc, c.mismatch, witness_xy(t, x));
        if (t < 6) {
            push(ev, "p-closure", "S_n is closed under the p-map",
                 sn->classify(p_power(x)) == SnMembership::InSn, c.mismatch, witness_xy(t, x));
            Derivation<Fp> y = random_sn_element(rng, *sn);
            push(ev, "bracket-closure", "S_n is closed under the bracket",
                 sn->classify(bracket(x, y)) == SnMembership::InSn, c.mismatch,
                 witness_xy(t, x, &y));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// commutative-diagram
// --------------------------------------------------------------------------

std::vector<Events> suite_commutative_diagram(const Ctx& c) {
    auto sn = std::make_shared<SnContext<Fp>>(c.amb, c.one());
    const Ambient sub(c.amb.p, c.amb.n - 1);
    TrialFn fn = [&, sn, sub](std::uint32_t t, Rng& rng) {
        Events ev;
        Derivation<Fp> y = random_derivation(rng, sub);
        Derivation<Fp> sy = sigma_embed(y, c.amb);
        const bool in_s = sn->classify(sy) == SnMembership::InSn;
        push(ev, "sigma-image-in-S", "sigma lands in S_n", in_s, c.mismatch, witness_xy(t, y));
        if (in_s) {
            push(ev, "diagram-commutes", "quotient_S(sigma(y)) = quotient_W(y)",
                 vectors_equal(quotient_s(*sn, sy), quotient_w(y)), c.mismatch,
                 witness_xy(t, y));
            push(ev, "phi0-zero-on-sigma", "phi_0 vanishes on the image of sigma",
                 phi_vector(sy)[0].is_zero(), c.mismatch, witness_xy(t, y));
        }
        if (t < 6) {
            Derivation<Fp> z = random_derivation(rng, sub);
            push(ev, "sigma-bracket-homomorphism", "sigma([y, z]) = [sigma(y), sigma(z)]",
                 sigma_embed(bracket(y, z), c.amb) == bracket(sy, sigma_embed(z, c.amb)),
                 c.mismatch, witness_xy(t, y, &z));
            push(ev, "sigma-p-homomorphism", "sigma(y^[p]) = sigma(y)^[p]",
                 sigma_embed(p_power(y), c.amb) == p_power(sy), c.mismatch, witness_xy(t, y));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

// --------------------------------------------------------------------------
// phig-delta
// --------------------------------------------------------------------------

std::vector<Events> suite_phig_delta(const Ctx& c) {
    const Ambient sub(c.amb.p, c.amb.n - 1);
    const std::uint64_t space = [&] {
        std::uint64_t s = 1;
        for (std::uint32_t i = 0; i < sub.n; ++i) s *= sub.p;
        return s;
    }();
    const bool exhaustive = space <= c.pr.trials;
    const std::uint32_t count =
        exhaustive ? static_cast<std::uint32_t>(space) : c.pr.trials;
    TrialFn fn = [&, sub, exhaustive](std::uint32_t t, Rng& rng) {
        Events ev;
        std::vector<Fp> eps;
        if (exhaustive) {
            std::uint64_t code = t;
            for (std::uint32_t i = 0; i < sub.n; ++i) {
                eps.push_back(Fp(sub.p, static_cast<std::int64_t>(code % sub.p)));
                code /= sub.p;
            }
        } else {
            for (std::uint32_t i = 0; i < sub.n; ++i) eps.push_back(rng.fp(sub.p));
        }
        Derivation<Fp> x = delta_eps<Fp>(sub, eps);
        push(ev, "slice-quotient", "quotient(Delta_eps) = eps",
             vectors_equal(quotient_w(x), eps), c.mismatch,
             Json{{"trial", t}, {"eps", fp_list(eps)}});
        push(ev, "slice-regular", "the constants subring of Delta_eps is k",
             constants_subring(x).size() == 1, c.mismatch,
             Json{{"trial", t}, {"eps", fp_list(eps)}});
        if (t < 4) {
            auto iters = p_power_iterates(x, sub.n);
            bool cong = true;
            for (std::uint32_t i = 0; i < sub.n; ++i) {
                Derivation<Fp> lead = Derivation<Fp>::partial(sub, i, c.one());
                if (i % 2 == 1) lead = -lead;
                Derivation<Fp> diff = iters[i] - lead;
                if (!diff.is_zero() && filtration_degree(diff) < 0) cong = false;
            }
            push(ev, "iterate-congruence",
                 "Delta_eps^[p]^i = (-1)^i D_(i+1) modulo positive filtration", cong, c.mismatch,
                 Json{{"trial", t}, {"eps", fp_list(eps)}});
            auto mp = minimal_p_polynomial(x);
            bool mp_ok = mp.degree_exp == sub.n && vectors_equal(mp.coeffs, eps);
            push(ev, "minimal-p-polynomial",
                 "on the slice the minimal p-polynomial is the characteristic one", mp_ok,
                 c.mismatch, Json{{"trial", t}, {"eps", fp_list(eps)}});
        }
        return ev;
    };
    return run_trials(c, count, fn);
}

// --------------------------------------------------------------------------
// omega-fiber
// --------------------------------------------------------------------------

std::vector<Events> suite_omega_fiber(const Ctx& c) {
    auto sn = std::make_shared<SnContext<Fp>>(c.amb, c.one());
    const Ambient& amb = c.amb;
    Events fixed;
    {
        // parameter dimension: the f-coefficient directions are independent
        const std::uint32_t m = amb.n - 1;
        std::vector<Fp> eps0(m, c.zero());
        std::vector<TruncPoly<Fp>> fz(m, TruncPoly<Fp>(amb, c.zero()));
        Derivation<Fp> base = omega_element(*sn, eps0, fz);
        SpanSolver<Fp> span(static_cast<std::size_t>(witt_dim(amb)));
        std::uint64_t dirs = 0;
        bool independent = true;
        TruncPoly<Fp> xn = TruncPoly<Fp>::variable(amb, amb.n - 1, c.one());
        for (std::uint32_t i = 0; i < m; ++i)
            for (std::uint32_t e = 2; e < amb.p; ++e) {
                auto f = fz;
                f[i] = xn.pow(e);
                Derivation<Fp> dir = omega_element(*sn, eps0, f) - base;
                independent = independent && span.add(to_coords(dir));
                ++dirs;
            }
        push(fixed, "parameter-dimension", "the fiber family has (n-1)(p-2) free directions",
             independent && dirs == omega_parameter_dim(amb), c.mismatch,
             Json{{"directions", dirs}});
    }
    TrialFn fn = [&, sn](std::uint32_t t, Rng& rng) {
        Events ev;
        const std::uint32_t m = amb.n - 1;
        std::vector<Fp> eps;
        for (std::uint32_t i = 0; i < m; ++i)
            eps.push_back(t % 5 == 0 ? c.zero() : rng.fp(amb.p));
        std::vector<TruncPoly<Fp>> f;
        TruncPoly<Fp> xn = TruncPoly<Fp>::variable(amb, amb.n - 1, c.one());
        for (std::uint32_t i = 0; i < m; ++i) {
            TruncPoly<Fp> fi(amb, c.zero());
            if (t >= 2) // first trials keep f = 0
                for (std::uint32_t e = 2; e < amb.p; ++e) {
                    Fp coeff = rng.fp(amb.p);
                    if (!coeff.is_zero()) fi += xn.pow(e).scaled(coeff);
                }
            f.push_back(std::move(fi));
        }
        Derivation<Fp> x = omega_element(*sn, eps, f);
        push(ev, "omega-in-S", "the fiber family lies in S_n",
             sn->classify(x) == SnMembership::InSn, c.mismatch, witness_xy(t, x));
        push(ev, "omega-fiber-membership", "quotient_S(Omega_f^eps) = eps",
             vectors_equal(quotient_s(*sn, x), eps), c.mismatch,
             Json{{"trial", t}, {"eps", fp_list(eps)}, {"x", derivation_to_json(x)}});
        bool eps_zero = true;
        for (const auto& e : eps) eps_zero = eps_zero && e.is_zero();
        if (eps_zero)
            push(ev, "omega-nilpotent", "the eps = 0 members are nilpotent", is_nilpotent(x),
                 c.mismatch, witness_xy(t, x));
        if (t < 2) {
            const Ambient sub(amb.p, m);
            std::vector<Fp> ev2(eps);
            push(ev, "omega-reduces-to-sigma-delta", "f = 0 gives sigma(Delta_eps)",
                 x == sigma_embed(delta_eps<Fp>(sub, ev2), amb), c.mismatch, witness_xy(t, x));
        }
        return ev;
    };
    auto batches = run_trials(c, c.pr.trials, fn);
    batches.insert(batches.begin(), std::move(fixed));
    return batches;
}

// --------------------------------------------------------------------------
// tangent-sum
// --------------------------------------------------------------------------

std::vector<Events> suite_tangent_sum(const Ctx& c) {
    const Ambient sub(c.amb.p, c.amb.n - 1);
    const std::uint64_t space = [&] {
        std::uint64_t s = 1;
        for (std::uint32_t i = 0; i < sub.n; ++i) s *= sub.p;
        return s;
    }();
    const bool exhaustive = space <= c.pr.trials;
    const std::uint32_t count =
        exhaustive ? static_cast<std::uint32_t>(space) : c.pr.trials;
    auto eps_for = [&, sub, exhaustive](std::uint32_t t) {
        std::vector<Fp> eps;
        if (exhaustive) {
            std::uint64_t code = t;
            for (std::uint32_t i = 0; i < sub.n; ++i) {
                eps.push_back(Fp(sub.p, static_cast<std::int64_t>(code % sub.p)));
                code /= sub.p;
            }
        } else {
            Rng rng = Rng::stream(c.pr.seed ^ 0x657073ULL, t);
            for (std::uint32_t i = 0; i < sub.n; ++i) eps.push_back(rng.fp(sub.p));
        }
        return eps;
    };
    TrialFn fn = [&, sub, eps_for](std::uint32_t t, Rng& rng) {
        Events ev;
        std::vector<Fp> eps = eps_for(t);
        Derivation<Fp> x = delta_eps<Fp>(sub, eps);
        bool dims_ok = false;
        bool no_throw = true;
        TangentReport rep{};
        try {
            rep = tangent_decomposition(x);
            const std::size_t wd = static_cast<std::size_t>(witt_dim(sub));
            dims_ok = rep.orbit_dim == wd - sub.n && rep.slice_dim == sub.n &&
                      rep.intersection_dim == 0 && rep.sum_dim == wd;
        } catch (const InternalCheckError&) {
            no_throw = false;
        }
        push(ev, "tangent-direct-sum",
             "W_m = orbit tangent + slice tangent, direct, with dims (dim G', m)",
             no_throw && dims_ok, c.mismatch, Json{{"trial", t}, {"eps", fp_list(eps)}});
        push(ev, "ker-ad-trivial", "ker(ad Delta_eps) meets Lie(G') trivially", no_throw,
             c.mismatch, Json{{"trial", t}, {"eps", fp_list(eps)}});
        // the quotient differential kills orbit directions
        const auto w0 = filtration_basis_indices(sub, 0);
        bool kills = true;
        const std::uint32_t samples = 3;
        for (std::uint32_t s = 0; s < samples; ++s) {
            const std::uint64_t b = w0[rng.below(w0.size())];
            Derivation<Fp> y = witt_basis_element(sub, b, c.one()).scaled(rng.fp_nonzero(sub.p));
            std::vector<Fp> d = phi_differential(x, bracket(y, x));
            for (const auto& v : d) kills = kills && v.is_zero();
        }
        push(ev, "differential-kills-orbit", "(dphi)_x([y, x]) = 0 for y in Lie(G')", kills,
             c.mismatch, Json{{"trial", t}, {"eps", fp_list(eps)}});
        return ev;
    };
    auto batches = run_trials(c, count, fn);
    // slice injectivity across the swept eps values
    Events fixed;
    {
        std::set<std::vector<std::uint32_t>> eps_seen, quot_seen;
        for (std::uint32_t t = 0; t < count; ++t) {
            std::vector<Fp> eps = eps_for(t);
            std::vector<std::uint32_t> ekey;
            for (const auto& v : eps) ekey.push_back(v.value());
            if (!eps_seen.insert(ekey).second) continue;
            std::vector<Fp> q = quotient_w(delta_eps<Fp>(sub, eps));
            std::vector<std::uint32_t> qkey;
            for (const auto& v : q) qkey.push_back(v.value());
            quot_seen.insert(qkey);
        }
        push(fixed, "slice-injective", "distinct eps give distinct quotient values",
             quot_seen.size() == eps_seen.size(), c.mismatch,
             Json{{"distinct", quot_seen.size()}});
    }
    batches.push_back(std::move(fixed));
    return batches;
}

// --------------------------------------------------------------------------
// bukong-degeneration
// --------------------------------------------------------------------------

std::vector<Events> suite_bukong(const Ctx& c) {
    auto sn = std::make_shared<SnContext<Fp>>(c.amb, c.one());
    Events fixed;
    {
        // inadmissible input must be rejected
        const Ambient& amb = c.amb;
        Derivation<Fp> bad(amb, c.zero());
        for (std::uint32_t i = 0; i < amb.n; ++i)
            bad.set_component(i, TruncPoly<Fp>::constant(amb, c.one()));
        bool rejected = false;
        try {
            degeneration_family(bad);
        } catch (const DomainError&) {
            rejected = true;
        }
        push(fixed, "no-admissible-axis", "inputs without the divisibility hypothesis are "
                                          "rejected",
             rejected, CheckStatus::Fail);
    }
    TrialFn fn = [&, sn](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        Derivation<Fp> x = random_degeneration_input(rng, *sn);
        std::optional<std::uint32_t> request;
        if (t % 2 == 1 && amb.n >= 2) {
            // move the divisible axis somewhere else and let the scan find it
            const std::uint32_t target = static_cast<std::uint32_t>(rng.below(amb.n - 1));
            x = act(Automorphism<Fp>::swap_axes(amb, target, amb.n - 1, c.one()), x);
            request = std::nullopt;
        }
        push(ev, "input-in-S", "the constructed inputs lie in S_n",
             sn->classify(x) == SnMembership::InSn, c.mismatch, witness_xy(t, x));
        Degeneration<Fp> deg = degeneration_family(x, request);
        std::vector<Fp> q0 = quotient_s(*sn, x);
        bool constant = true;
        for (std::uint32_t v = 1; v < amb.p; ++v) {
            Derivation<Fp> gc = deg.at(Fp(amb.p, v));
            constant = constant && sn->classify(gc) == SnMembership::InSn &&
                       vectors_equal(quotient_s(*sn, gc), q0);
        }
        push(ev, "family-quotient-constant", "the degeneration family stays in one fiber",
             constant, c.mismatch, witness_xy(t, x));
        Derivation<Fp> expect = sigma_embed(deg.delta1, amb);
        push(ev, "limit-is-sigma-delta", "the c = 0 member equals sigma(Delta_1)",
             deg.limit == expect, c.mismatch, witness_xy(t, x));
        push(ev, "limit-in-S", "the limit lies in S_n",
             sn->classify(deg.limit) == SnMembership::InSn, c.mismatch, witness_xy(t, x));
        if (t < 3) {
            // the family equals conjugation by x_n -> c x_n
            bool match = true;
            for (std::uint32_t v = 1; v < amb.p && match; ++v) {
                Fp cv(amb.p, v);
                Automorphism<Fp> g = Automorphism<Fp>::scaling(amb, amb.n - 1, cv);
                match = deg.at(cv) == act(g, deg.normalized);
            }
            push(ev, "family-matches-scaling", "the family equals conjugation by x_n -> c x_n",
                 match, CheckStatus::Fail, witness_xy(t, x));
        }
        return ev;
    };
    auto batches = run_trials(c, c.pr.trials, fn);
    batches.insert(batches.begin(), std::move(fixed));
    return batches;
}

// --------------------------------------------------------------------------
// nilpotency
// --------------------------------------------------------------------------

std::vector<Events> suite_nilpotency(const Ctx& c) {
    TrialFn fn = [&](std::uint32_t t, Rng& rng) {
        Events ev;
        const Ambient& amb = c.amb;
        Derivation<Fp> x = [&] {
            switch (t % 3) {
            case 0:
                return random_derivation(rng, amb);
            case 1:
                return act(random_automorphism(rng, amb, 2, false),
                           random_in_filtration(rng, amb, 1));
            default:
                return act(random_automorphism(rng, amb, 2, false),
                           Derivation<Fp>::partial(amb, 0, c.one()).scaled(rng.fp_nonzero(amb.p)));
            }
        }();
        const bool nil = is_nilpotent(x);
        std::vector<Fp> phis = phi_vector(x);
        bool phi_zero = true;
        for (const auto& v : phis) phi_zero = phi_zero && v.is_zero();
        push(ev, "p-iterate-vs-quotient", "n-fold p-power vanishes iff all invariants vanish",
             nil == phi_zero, c.mismatch, witness_xy(t, x));
        if (t < 12) {
            Matrix<Fp> rho = rho_matrix(x);
            const bool op_nil = mat_power(rho, c.amb.ring_dim()).is_zero();
            push(ev, "p-iterate-vs-operator", "nilpotency matches rho(x)^(p^n) = 0",
                 nil == op_nil, c.mismatch, witness_xy(t, x));
        }
        return ev;
    };
    return run_trials(c, c.pr.trials, fn);
}

} // namespace

const std::vector<SuiteInfo>& all_suites() {
    static const std::vector<SuiteInfo> infos = {
        {"dimensions", false, "basis counts for W_n, S_n and the divergence-free hull"},
        {"charpoly-shape", false, "p-polynomial support and Cayley-Hamilton identities"},
        {"lemma-for-1", false, "the reduced-adjoint / differential identity"},
        {"prop-pro-1", false, "equivalence of the regularity criteria"},
        {"prop-pro-2-evidence", false, "sampled smoothness evidence on fibers"},
        {"invariance", false, "orbit invariance of the quotient map"},
        {"prop-2-4", true, "vanishing of phi_0 on S_n"},
        {"commutative-diagram", true, "compatibility of the two quotients through sigma"},
        {"phig-delta", true, "quotient values and regularity of the slice elements"},
        {"omega-fiber", true, "the explicit family inside each fiber"},
        {"tangent-sum", true, "transversality of the slice"},
        {"bukong-degeneration", true, "one-parameter degeneration towards sigma(W_(n-1))"},
        {"nilpotency", false, "p-power, quotient and operator nilpotency agree"},
    };
    return infos;
}

SuiteReport run_suite(const std::string& id, SuiteParams params) {
    const SuiteInfo* info = nullptr;
    for (const auto& s : all_suites())
        if (s.id == id) info = &s;
    if (!info) throw DomainError("unknown suite: " + id);
    if (params.n == 0) params.n = info->s_side ? 3 : 2;
    if (params.n < 2) throw DomainError("suites need n >= 2");
    require_valid_characteristic(params.p);
    if (params.trials == 0) throw DomainError("trials must be positive");
    Ambient amb(params.p, params.n);
    // S-side statements below the standing hypothesis n >= 3 are reported,
    // not asserted.
    const CheckStatus mismatch =
        info->s_side && params.n == 2 ? CheckStatus::Anomaly : CheckStatus::Fail;
    Ctx ctx{params, amb, mismatch};
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Events> batches;
    if (id == "dimensions")
        batches = suite_dimensions(ctx);
    else if (id == "charpoly-shape")
        batches = suite_charpoly_shape(ctx);
    else if (id == "lemma-for-1")
        batches = suite_lemma_for_1(ctx);
    else if (id == "prop-pro-1")
        batches = suite_prop_pro_1(ctx);
    else if (id == "prop-pro-2-evidence")
        batches = suite_prop_pro_2(ctx);
    else if (id == "invariance")
        batches = suite_invariance(ctx);
    else if (id == "prop-2-4")
        batches = suite_prop_2_4(ctx);
    else if (id == "commutative-diagram")
        batches = suite_commutative_diagram(ctx);
    else if (id == "phig-delta")
        batches = suite_phig_delta(ctx);
    else if (id == "omega-fiber")
        batches = suite_omega_fiber(ctx);
    else if (id == "tangent-sum")
        batches = suite_tangent_sum(ctx);
    else if (id == "bukong-degeneration")
        batches = suite_bukong(ctx);
    else if (id == "nilpotency")
        batches = suite_nilpotency(ctx);
    const auto t1 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = id;
    rep.params = params;
    rep.checks = merge(batches);
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

nlohmann::json SuiteReport::to_json() const {
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json rec{{"name", c.name},
                           {"anchor", c.anchor},
                           {"status", status_name(c.status)},
                           {"passes", c.passes}};
        if (!c.witnesses.empty()) rec["witness"] = c.witnesses;
        checks_json.push_back(std::move(rec));
    }
    return nlohmann::json{{"schema", 1},
                          {"suite", suite},
                          {"params",
                           {{"p", params.p},
                            {"n", params.n},
                            {"seed", params.seed},
                            {"trials", params.trials},
                            {"rng", kRngName}}},
                          {"checks", std::move(checks_json)},
                          {"elapsed_ms", elapsed_ms}};
}

std::string SuiteReport::render_text() const {
    std::string out;
    std::uint64_t fails = 0, anomalies = 0;
    for (const auto& c : checks) {
        out += "  [";
        out += status_name(c.status);
        out += "] ";
        out += c.name;
        out += " (" + std::to_string(c.passes) + " pass";
        if (!c.witnesses.empty())
            out += ", " + std::to_string(c.witnesses.size()) + " recorded mismatch(es)";
        out += ") - " + c.anchor + "\n";
        if (c.status == CheckStatus::Fail) ++fails;
        if (c.status == CheckStatus::Anomaly) ++anomalies;
    }
    out += "suite " + suite + ": " +
           (fails ? "FAIL" : (anomalies ? "PASS with anomalies" : "PASS")) + " (" +
           std::to_string(checks.size()) + " checks, " + std::to_string(elapsed_ms) + " ms)\n";
    return out;
}

} // namespace cartan::suites
