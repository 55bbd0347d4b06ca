import math

import pytest

import heatctl

T = 3.0


def example_target():
    initial = heatctl.exp_mixture((0.5, 1 / (6 * T)), (0.5, 1 / (3 * T)))
    final = heatctl.exp_mixture((3 / 14, 1 / (7 * T)))
    return heatctl.linear_combination(1.0, final, -1.0, heatctl.free_evolution(initial, T))


def test_transform_closed_form():
    out = heatctl.phi(heatctl.exp_mixture((1.0, 1.0)))
    assert out(0.0) == pytest.approx(0.5, rel=1e-15)
    assert out(4.0) == pytest.approx(0.5 * math.exp(-1.0), rel=1e-15)
    assert out.kind == "exp_mixture"


def test_coefficients_of_the_example():
    g, d = heatctl.expand(example_target(), T, 6)
    for n, value in enumerate(g):
        assert value == pytest.approx((-1) ** (n + 1) * (3 / 7) ** (n + 1) * math.sqrt(2 * T), rel=1e-12)
    assert len(d) == 7


def test_synthesis_and_report():
    g = example_target()
    u = heatctl.synthesize(g, T, 3, 20)
    assert u.levels[0] == pytest.approx(4171487.587754723, rel=1e-6)
    assert u.breakpoints[-1] == T
    rep = heatctl.report(g, u, T, 3, 20)
    assert rep.residual_norm <= rep.budget.total
    assert rep.plane_residual == pytest.approx(math.sqrt(math.pi) * rep.residual_norm)


def test_moments_and_entire_bound():
    u = heatctl.Control.constant(1.0, 2.0)
    assert heatctl.control_moments(u, 2) == pytest.approx([2.0, 1.0, 2.0 / 3.0])
    z = complex(1.0, 2.0)
    assert abs(heatctl.entire_eval(u, z)) <= heatctl.entire_bound(u.sup_norm, 1.0, z)
    g = heatctl.exp_mixture((1.0, 0.25))
    assert heatctl.gamma_moments(g, 1.0, 3) == pytest.approx([-2 * math.pi] * 4, rel=1e-13)


def test_witness_condition():
    g = heatctl.exp_mixture((-2 / math.pi, 0.5))
    assert heatctl.necessary_condition(g, 1.0) <= 4 / math.pi


def test_json_round_trip():
    u = heatctl.Control(2.0, [0.0, 0.5, 2.0], [1.0, -1.0])
    back = heatctl.Control.from_json(u.to_json())
    assert back.levels == u.levels
    g = heatctl.RadialProfile.sampled([0.1, 1.0, 2.0], [1.0, 0.5, 0.2])
    assert heatctl.RadialProfile.from_json(g.to_json())(1.0) == 0.5


def test_errors_are_exceptions():
    with pytest.raises(heatctl.PreconditionError):
        heatctl.synthesize(heatctl.exp_mixture((1.0, 1.0)), 3.0, 3, 1)
    with pytest.raises(heatctl.DomainError):
        heatctl.exp_integral_e1(0.0)
    with pytest.raises(ValueError):
        heatctl.Control(1.0, [0.0, 2.0], [1.0])
    with pytest.raises(heatctl.ParseError):
        heatctl.RadialProfile.from_json('{"kind": "spline"}')
