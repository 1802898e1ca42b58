"""Second chart derivatives, the projection to kappa, and trace-part tests."""

from fractions import Fraction

import pytest

from agdeform.curvature import (
    kappa_closed_form,
    kappa_closed_form_check,
    nabla2_phi,
    not_pure_trace,
    project_kappa,
    sorted_triples,
    trace_subspace,
)
from agdeform.deform import build_Phi, build_q
from agdeform.exactalg import UsageError
from agdeform.model import Chart, ChartPoint

CHART = Chart(3)


def _phi_and_projection():
    phi = build_Phi(CHART)
    d2 = nabla2_phi(phi)
    return phi, d2, project_kappa(d2)


PHI, D2, PROJ = _phi_and_projection()


def test_sorted_triples():
    triples = sorted_triples(3)
    assert len(triples) == 10
    assert triples[0] == (1, 1, 1)
    assert triples[-1] == (3, 3, 3)
    assert all(j <= m <= o for (j, m, o) in triples)


def test_second_derivatives_swap_symmetric():
    assert D2.swap_symmetric()


def test_displayed_second_derivatives():
    """The three closed-form second derivatives, valid for r >= 2 only."""
    q = build_q(CHART)
    qinv = q.inverse()
    x11, x12 = CHART.x(1, 1), CHART.x(1, 2)
    e = x11 * x11 + x12 * x12
    for r in (2, 3):
        xr1 = CHART.x(r, 1)
        a_expected = CHART.const(0)
        b_expected = CHART.const(0)
        c_expected = CHART.const(0)
        for i in (2, 3):
            ci = CHART.param(f"c{i}")
            base = ci * CHART.x(i, 1) * xr1
            a_expected = a_expected + base * (
                qinv
                - CHART.const(2) * e * qinv * qinv
                + CHART.const(8) * x12 * x12 * x11 * x11 * qinv * qinv * qinv
            )
            b_expected = b_expected + base * (
                CHART.const(2) * qinv
                - CHART.const(10) * x12 * x12 * qinv * qinv
                + CHART.const(8) * x12 ** 4 * qinv * qinv * qinv
            )
            c_expected = c_expected - base * (
                CHART.const(2) * qinv
                - CHART.const(10) * x11 * x11 * qinv * qinv
                + CHART.const(8) * x11 ** 4 * qinv * qinv * qinv
            )
        assert D2.entry(2, 1, 1, 1, 1, 1, 1, r) == a_expected
        assert D2.entry(2, 1, 2, 1, 2, 1, 1, r) == b_expected
        assert D2.entry(1, 1, 1, 1, 1, 1, 2, r) == c_expected

    # at r = 1 the derivative variables collide with x_{r1} and the closed
    # forms fail; pin the restriction
    xr1 = CHART.x(1, 1)
    a_at_one = CHART.const(0)
    for i in (2, 3):
        a_at_one = a_at_one + CHART.param(f"c{i}") * CHART.x(i, 1) * xr1 * (
            qinv
            - CHART.const(2) * e * qinv * qinv
            + CHART.const(8) * x12 * x12 * x11 * x11 * qinv * qinv * qinv
        )
    assert D2.entry(2, 1, 1, 1, 1, 1, 1, 1) != a_at_one


def test_trace_free_relation():
    for r in (1, 2, 3):
        assert D2.entry(2, 1, 1, 1, 1, 1, 1, r) == -D2.entry(1, 1, 2, 1, 2, 1, 2, r)


def test_projection_reduces_to_three_displays():
    half = Fraction(1, 2)
    for r in (2, 3):
        a = D2.entry(2, 1, 1, 1, 1, 1, 1, r)
        b = D2.entry(2, 1, 2, 1, 2, 1, 1, r)
        c = D2.entry(1, 1, 1, 1, 1, 1, 2, r)
        combo = (a + a + b - c).scale(half)
        assert PROJ.component(2, 1, 1, 1, 1, r) == combo


def test_component_sign_conventions():
    assert PROJ.component(1, 1, 1, 1, 1, 2).is_zero()
    assert PROJ.component(2, 2, 1, 1, 1, 2).is_zero()
    assert PROJ.component(1, 2, 1, 1, 1, 2) == -PROJ.component(2, 1, 1, 1, 1, 2)
    assert PROJ.component(2, 1, 1, 3, 2, 1) == PROJ.component(2, 1, 3, 1, 2, 1)


def test_kappa_closed_form_identity():
    for r in (2, 3):
        check = kappa_closed_form_check(PHI, r, projection=PROJ)
        assert check.matches_closed_form
        assert check.computed.r == r
    with pytest.raises(UsageError):
        kappa_closed_form_check(PHI, 1, projection=PROJ)
    with pytest.raises(UsageError):
        kappa_closed_form(CHART, 4)


def test_kappa_spot_values():
    formula = kappa_closed_form(CHART, 2)
    c = (Fraction(1), Fraction(0))
    generic = ChartPoint.parse(CHART, "2,1;1,0;2,0")
    assert formula.evaluate(generic.evaluation_vector(c=c)) == Fraction(1, 20)
    # x21 = 0 kills every term when c = (1, 0)
    degenerate = ChartPoint.parse(CHART, "2,1;0,0;2,0")
    assert formula.evaluate(degenerate.evaluation_vector(c=c)) == 0
    assert PROJ.component(2, 1, 1, 1, 1, 2).evaluate(degenerate.evaluation_vector(c=c)) == 0


def test_projection_zero_at_zero_deformation():
    proj0 = project_kappa(nabla2_phi(build_Phi(CHART, [0, 0])))
    assert all(value.is_zero() for value in proj0.values.values())


def test_trace_subspace_dimension():
    assert trace_subspace(3).dim == 6
    assert trace_subspace(2).dim == 3


def test_not_pure_trace():
    n = 3
    sub = trace_subspace(n)
    triples = sorted_triples(n)
    zero_slice = [[Fraction(0)] * n for _ in triples]
    assert not not_pure_trace(zero_slice, n, subspace=sub)

    # a manufactured pure-trace slice must stay inside the subspace
    s_matrix = {(1, 1): Fraction(2), (1, 2): Fraction(-1), (2, 2): Fraction(3),
                (1, 3): Fraction(0), (2, 3): Fraction(5), (3, 3): Fraction(-2)}

    def s_val(a, b):
        return s_matrix[tuple(sorted((a, b)))]

    trace_slice = [
        [
            s_val(j, m) * (1 if o == r else 0)
            + s_val(j, o) * (1 if m == r else 0)
            + s_val(m, o) * (1 if j == r else 0)
            for r in range(1, n + 1)
        ]
        for (j, m, o) in triples
    ]
    assert not not_pure_trace(trace_slice, n, subspace=sub)

    point = ChartPoint.parse(CHART, "2,1;1,0;2,0")
    generic_slice = PROJ.evaluate_slice(point, c=(Fraction(1), Fraction(0)))
    assert not_pure_trace(generic_slice, n, subspace=sub)

    with pytest.raises(UsageError):
        not_pure_trace([[Fraction(0)]], n, subspace=sub)
