"""Torsion of the deformed structure: brackets, D-expansion, rank-one lemma."""

import random
from fractions import Fraction

import pytest

from agdeform.deform import build_Phi, build_q
from agdeform.exactalg import PoleAtPoint, RationalFunction, UsageError
from agdeform.model import Chart, ChartPoint
from agdeform.reptheory import pair_index
from agdeform.torsion import (
    TorsionAssembler,
    VectorField,
    assemble_full_torsion,
    flat_index,
    lemma_criterion,
    lie_bracket,
    pulled_frame,
    torsion_component,
    unflatten_index,
)

CHART = Chart(3)


def test_flat_index_roundtrip():
    seen = set()
    for i in range(1, 5):
        for jp in (1, 2):
            a = flat_index(i, jp)
            assert unflatten_index(a) == (i, jp)
            seen.add(a)
    assert seen == set(range(8))


def test_vector_field_algebra():
    zero = VectorField.zero(CHART)
    e = VectorField.coordinate(CHART, 2, 1)
    assert zero.is_zero()
    assert (e - e).is_zero()
    assert (e + (-e)).is_zero()
    scaled = e.scale(CHART.x(1, 1))
    assert scaled.components[flat_index(2, 1)] == CHART.x(1, 1)
    point = ChartPoint.parse(CHART, "1,2;3,4;5,6")
    assert e.evaluate(point.evaluation_vector())[flat_index(2, 1)] == 1


def _random_field(chart, rng):
    comps = []
    for _ in range(2 * chart.n):
        poly = RationalFunction.constant(chart.table, Fraction(rng.randint(-2, 2)))
        for v in range(2 * chart.n):
            if rng.random() < 0.4:
                poly = poly + RationalFunction.variable(chart.table, v) * RationalFunction.constant(
                    chart.table, Fraction(rng.randint(-2, 2))
                )
        comps.append(poly)
    return VectorField(chart, comps)


def test_lie_bracket_properties():
    e1 = VectorField.coordinate(CHART, 1, 1)
    e2 = VectorField.coordinate(CHART, 2, 2)
    assert lie_bracket(e1, e2).is_zero()

    chart2 = Chart(2)
    rng = random.Random(7)
    for _ in range(5):
        a, b, c = (_random_field(chart2, rng) for _ in range(3))
        assert lie_bracket(a, b) == -lie_bracket(b, a)
        jacobi = (
            lie_bracket(a, lie_bracket(b, c))
            + lie_bracket(b, lie_bracket(c, a))
            + lie_bracket(c, lie_bracket(a, b))
        )
        assert jacobi.is_zero()


def test_pulled_frame_matches_coefficients():
    phi = build_Phi(CHART, [1, 0])
    frame = pulled_frame(phi)
    for a in range(6):
        i, jp = unflatten_index(a)
        field = frame[a]
        for b in range(6):
            k, pp = unflatten_index(b)
            expected = -phi.coefficient(pp, i, jp, k)
            if b == a:
                expected = expected + CHART.const(1)
            assert field.components[b] == expected

    trivial = pulled_frame(build_Phi(CHART, [0, 0]))
    for a in range(6):
        assert trivial[a] == VectorField.coordinate(CHART, *unflatten_index(a))


def test_torsion_component_closed_forms():
    """D = psi exactly: the Phi-correction annihilates the bracket section."""
    phi = build_Phi(CHART)
    q = build_q(CHART)
    x11, x12 = CHART.x(1, 1), CHART.x(1, 2)
    for s in (2, 3):
        comp = torsion_component(phi, s)
        cs = CHART.param(f"c{s}")
        tilde = -comp.bracket
        psi = tuple(
            tuple(tilde.components[flat_index(k, pp)] for k in range(1, 4))
            for pp in (1, 2)
        )
        assert all(f.is_zero() for row in phi.apply(psi) for f in row)
        for k in range(1, 4):
            xk1 = CHART.x(k, 1)
            assert comp.d_of_e1prime[k - 1] == (
                CHART.const(2) * cs * x11 ** 3 * x12 * xk1 / (q * q)
            )
            assert comp.d_section[1][k - 1] == (
                -cs * x11 * x11 * xk1 / q
                + CHART.const(2) * cs * x11 * x11 * x12 * x12 * xk1 / (q * q)
            )
    with pytest.raises(UsageError):
        torsion_component(phi, 1)
    with pytest.raises(UsageError):
        torsion_component(phi, 4)


def test_torsion_value_antisymmetry_and_vectorize():
    phi = build_Phi(CHART)
    point = ChartPoint.parse(CHART, "1,2;3,4;5,6")
    value = assemble_full_torsion(phi, point, c=(Fraction(1), Fraction(0)))
    size = 2 * CHART.n
    assert all(v == 0 for v in value.entry(3, 3))
    flat = value.vectorize()
    assert len(flat) == (size * (size - 1) // 2) * size
    for a in range(size):
        for b in range(size):
            ab = value.entry(a, b)
            ba = value.entry(b, a)
            assert ab == tuple(-v for v in ba)
            if a < b:
                offset = pair_index(a, b, size) * size
                assert flat[offset : offset + size] == ab


def test_assembler_matches_one_shot():
    phi = build_Phi(CHART)
    assembler = TorsionAssembler(phi)
    c = (Fraction(2), Fraction(-3))
    for text in ("1,2;3,4;5,6", "1,1;1,0;0,1"):
        point = ChartPoint.parse(CHART, text)
        a = assembler.evaluate(point, c=c)
        b = assemble_full_torsion(phi, point, c=c)
        assert a.vectorize() == b.vectorize()


def test_zero_deformation_torsion_free():
    assembler = TorsionAssembler(build_Phi(CHART, [0, 0]))
    assert all(f.is_zero() for comps in assembler.symbolic.values() for f in comps)


def test_lemma_criterion():
    phi = build_Phi(CHART)
    point = ChartPoint.parse(CHART, "1,2;3,4;5,6")
    value = assemble_full_torsion(phi, point, c=(Fraction(1), Fraction(0)))
    assert lemma_criterion(value, 2)
    with pytest.raises(UsageError):
        lemma_criterion(value, 1)
    flat_value = assemble_full_torsion(phi, point, c=(Fraction(0), Fraction(0)))
    assert flat_value.is_zero()
    assert not lemma_criterion(flat_value, 2)


def test_pole_on_singular_set():
    phi = build_Phi(CHART)
    point = ChartPoint.parse(CHART, "0,0;0,1;0,1")  # q = 0 there
    with pytest.raises(PoleAtPoint):
        assemble_full_torsion(phi, point, c=(Fraction(1), Fraction(0)))
