"""Smoke tests for the python bindings."""

import json

import pytest

cartanlie = pytest.importorskip("cartanlie")


@pytest.fixture(scope="module")
def w2():
    return cartanlie.Ambient(5, 2)


def test_ambient_and_dims(w2):
    assert w2.ring_dim == 25
    assert cartanlie.witt_dim(w2) == 50
    with pytest.raises(cartanlie.MathDomainError):
        cartanlie.Ambient(4, 2)


def test_bracket_and_p_power(w2):
    d1 = cartanlie.Derivation.partial(w2, 0)
    x1 = cartanlie.TruncPoly.variable(w2, 0)
    e = cartanlie.Derivation([x1, cartanlie.TruncPoly(w2, [])])  # x1 D1
    assert cartanlie.bracket(d1, e) == d1
    assert cartanlie.p_power(d1).is_zero()
    assert cartanlie.p_power(e) == e
    assert cartanlie.divergence(e).coeffs()[0] == 1


def test_invariants_and_regularity(w2):
    d1 = cartanlie.Derivation.partial(w2, 0)
    assert cartanlie.phi_vector(d1) == [0, 0]
    assert cartanlie.is_nilpotent(d1)
    assert cartanlie.regularity(d1) == (False, False, False)
    x = cartanlie.delta_eps(w2, [1, 2])
    assert cartanlie.quotient_w(x) == [1, 2]
    assert cartanlie.regularity(x) == (True, True, True)
    assert cartanlie.constants_dim(x) == 1
    assert cartanlie.centralizer_dim(x) == 2


def test_w1_example():
    w1 = cartanlie.Ambient(5, 1)
    one_plus_x = cartanlie.TruncPoly(w1, [1, 1])
    g = cartanlie.Derivation([one_plus_x])
    assert cartanlie.phi_vector(g) == [1]
    r, coeffs = cartanlie.minimal_p_polynomial(g)
    assert r == 1 and coeffs == [1]


def test_special_algebra_and_diagram():
    s3 = cartanlie.Ambient(5, 3)
    w2 = cartanlie.Ambient(5, 2)
    ctx = cartanlie.SnContext(s3)
    assert ctx.dim == 248
    assert ctx.stilde_dim == 251
    x = cartanlie.delta_eps(w2, [3, 4])
    sx = cartanlie.sigma_embed(x, s3)
    assert ctx.classify(sx) == "S"
    assert cartanlie.quotient_s(ctx, sx) == [3, 4]
    assert cartanlie.quotient_w(x) == [3, 4]


def test_omega_and_tangent():
    s3 = cartanlie.Ambient(5, 3)
    w2 = cartanlie.Ambient(5, 2)
    ctx = cartanlie.SnContext(s3)
    x3 = cartanlie.TruncPoly.variable(s3, 2)
    f = [x3 * x3, cartanlie.TruncPoly(s3, [])]
    omega = cartanlie.omega_element(ctx, [0, 0], f)
    assert ctx.classify(omega) == "S"
    assert cartanlie.is_nilpotent(omega)
    dims = cartanlie.tangent_decomposition(cartanlie.delta_eps(w2, [1, 0]))
    assert dims == (48, 2, 0, 50)


def test_automorphism_action(w2):
    g = cartanlie.random_automorphism(w2, seed=9, depth=2, special=True)
    assert g.is_special()
    x = cartanlie.delta_eps(w2, [2, 1])
    y = cartanlie.act(g, x)
    assert cartanlie.quotient_w(y) == [2, 1]


def test_element_json_round_trip(w2):
    x = cartanlie.delta_eps(w2, [1, 2])
    text = x.to_json()
    back = cartanlie.Derivation.from_json(text)
    assert back == x
    report = cartanlie.inspect_json(text)
    assert "invariants (W): [1, 2]" in report


def test_run_suite():
    ok, report_text = cartanlie.run_suite("dimensions", p=5, n=2)
    assert ok
    report = json.loads(report_text)
    assert report["schema"] == 1
    assert report["suite"] == "dimensions"
    assert all(c["status"] != "fail" for c in report["checks"])
    assert "dimensions" in cartanlie.list_suites()
