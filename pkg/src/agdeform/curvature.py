"""Second derivatives of the deformation and the projected curvature component.

The distinguished background connection is flat and torsion-free, so second
covariant derivatives reduce to pure partials in the chart; nabla^j_{i'} is
differentiation along d/dx_{j i'}.  The harmonic-curvature candidate is
obtained from the full second-derivative tensor by contracting one primed
pair, skew-symmetrizing the remaining primed pair, and symmetrizing the three
unprimed covariant slots; trace removal is handled as a membership test
against the explicitly embedded trace subspace of S^3 R^{n*} (x) R^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .exactalg import RationalFunction, UsageError
from .linalg import Subspace, span_subspace, membership
from .model import Chart, ChartPoint
from .deform import EndomorphismField, build_q


class SecondDerivativeTensor:
    """components[(ip, j, lp, m, pp, o, qp, r)] = nabla^j_{i'} nabla^m_{l'} Phi^{p'o}_{q'r}.

    Primed indices and the unprimed j, m, o, r are all 1-based.  Both
    derivative orders are computed independently; the mixed-partial symmetry
    (i',j) <-> (l',m) is a checkable property, not an assumption.
    """

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Mapping[tuple, RationalFunction]):
        self.chart = chart
        self.components = dict(components)

    def entry(self, ip: int, j: int, lp: int, m: int, pp: int, o: int, qp: int, r: int) -> RationalFunction:
        return self.components[(ip, j, lp, m, pp, o, qp, r)]

    def swap_symmetric(self) -> bool:
        """Exact (i',j) <-> (l',m) symmetry over every index combination."""
        n = self.chart.n
        for ip in (1, 2):
            for j in range(1, n + 1):
                for lp in (1, 2):
                    for m in range(1, n + 1):
                        if (ip, j) >= (lp, m):
                            continue
                        for pp in (1, 2):
                            for o in range(1, n + 1):
                                for qp in (1, 2):
                                    for r in range(1, n + 1):
                                        a = self.entry(ip, j, lp, m, pp, o, qp, r)
                                        b = self.entry(lp, m, ip, j, pp, o, qp, r)
                                        if not (a == b):
                                            return False
        return True


def nabla2_phi(phi: EndomorphismField) -> SecondDerivativeTensor:
    chart = phi.chart
    n = chart.n
    table = chart.table
    first: dict[tuple, RationalFunction] = {}
    for pp in (1, 2):
        for o in range(1, n + 1):
            for qp in (1, 2):
                for r in range(1, n + 1):
                    coeff = phi.coefficient(pp, o, qp, r)
                    for lp in (1, 2):
                        for m in range(1, n + 1):
                            first[(lp, m, pp, o, qp, r)] = coeff.differentiate(
                                table.x_index(m, lp)
                            )
    components: dict[tuple, RationalFunction] = {}
    for key, inner in first.items():
        for ip in (1, 2):
            for j in range(1, n + 1):
                components[(ip, j) + key] = inner.differentiate(table.x_index(j, ip))
    return SecondDerivativeTensor(chart, components)


def sorted_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """All 1-based triples j <= m <= o, lexicographic."""
    return tuple(
        (j, m, o)
        for j in range(1, n + 1)
        for m in range(j, n + 1)
        for o in range(m, n + 1)
    )


class KappaProjection:
    """Result of contraction, skew-symmetrization, and symmetrization.

    Only the independent skew slot (2', 1') is stored; component() applies
    the sign for the swapped slot and returns zero on the diagonal.  The
    unprimed slots are stored on sorted triples.
    """

    __slots__ = ("chart", "values")

    def __init__(self, chart: Chart, values: Mapping[tuple, RationalFunction]):
        self.chart = chart
        self.values = dict(values)

    def component(self, ip: int, qp: int, j: int, m: int, o: int, r: int) -> RationalFunction:
        if ip == qp:
            return RationalFunction.zero(self.chart.table)
        value = self.values[(tuple(sorted((j, m, o))), r)]
        return value if (ip, qp) == (2, 1) else -value

    def evaluate_slice(
        self, point: ChartPoint, c: Sequence[Fraction] | None = None
    ) -> tuple[tuple[Fraction, ...], ...]:
        """Numeric symmetric slice [triple index][r-1] at a chart point."""
        vec = point.evaluation_vector(c=c)
        n = self.chart.n
        return tuple(
            tuple(self.values[(triple, r)].evaluate(vec) for r in range(1, n + 1))
            for triple in sorted_triples(n)
        )


def project_kappa(d2: SecondDerivativeTensor) -> KappaProjection:
    """Steps 1..3 of the projection recipe, in order.

    (1) contract p' with l'; (2) skew-symmetrize (i', q') with factor 1/2;
    (3) symmetrize (j, m, o) by averaging over all six permutations.
    """
    chart = d2.chart
    n = chart.n

    def contracted(ip: int, j: int, m: int, o: int, qp: int, r: int) -> RationalFunction:
        acc = RationalFunction.zero(chart.table)
        for lp in (1, 2):
            acc = acc + d2.entry(ip, j, lp, m, lp, o, qp, r)
        return acc

    half = Fraction(1, 2)
    sixth = Fraction(1, 6)
    values: dict[tuple, RationalFunction] = {}
    for triple in sorted_triples(n):
        for r in range(1, n + 1):
            acc = RationalFunction.zero(chart.table)
            for j, m, o in permutations(triple):
                skew = contracted(2, j, m, o, 1, r) - contracted(1, j, m, o, 2, r)
                acc = acc + skew.scale(half)
            values[(triple, r)] = acc.scale(sixth)
    return KappaProjection(chart, values)


def kappa_closed_form(chart: Chart, r: int) -> RationalFunction:
    """Sum over i > 1 of c_i x_{i1} x_{r1} (3/q - 7(x11^2+x12^2)/q^2 + 4(x11^2+x12^2)^2/q^3)."""
    n = chart.n
    if not (2 <= r <= n):
        raise UsageError(f"index r must be in 2..{n}")
    q = build_q(chart)
    qinv = q.inverse()
    e = chart.x(1, 1) * chart.x(1, 1) + chart.x(1, 2) * chart.x(1, 2)
    shape = (
        chart.const(3) * qinv
        - chart.const(7) * e * qinv * qinv
        + chart.const(4) * e * e * qinv * qinv * qinv
    )
    acc = RationalFunction.zero(chart.table)
    for i in range(2, n + 1):
        acc = acc + chart.param(f"c{i}") * chart.x(i, 1) * chart.x(r, 1) * shape
    return acc


@dataclass(frozen=True)
class KappaComponent:
    r: int
    value: RationalFunction


@dataclass(frozen=True)
class KappaCheck:
    computed: KappaComponent
    matches_closed_form: bool


def kappa_closed_form_check(
    phi: EndomorphismField, r: int, projection: KappaProjection | None = None
) -> KappaCheck:
    """Compare the fully projected component kappa^{111}_{2'1'r} with the
    closed form, as an exact identity in x and c.  Restricted to r >= 2; at
    r = 1 the derivative variables collide with x_{r1} and the closed form
    does not apply."""
    chart = phi.chart
    if not (2 <= r <= chart.n):
        raise UsageError(f"index r must be in 2..{chart.n}")
    if projection is None:
        projection = project_kappa(nabla2_phi(phi))
    computed = projection.component(2, 1, 1, 1, 1, r)
    return KappaCheck(
        computed=KappaComponent(r=r, value=computed),
        matches_closed_form=computed == kappa_closed_form(chart, r),
    )


def trace_subspace(n: int) -> Subspace:
    """Span of S (x) Id symmetrized: vectors T(S)^{jmo}_r = S^{jm} d^o_r +
    S^{jo} d^m_r + S^{mo} d^j_r over the S^2 basis, in slice coordinates."""
    triples = sorted_triples(n)
    index = {t: i for i, t in enumerate(triples)}
    ambient = len(triples) * n
    vectors = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            # S = e^a . e^b symmetric basis element: S^{jm} = [{j,m} == {a,b}]
            vec = [Fraction(0)] * ambient
            for (j, m, o) in triples:
                for r in range(1, n + 1):
                    value = 0
                    if tuple(sorted((j, m))) == (a, b) and o == r:
                        value += 1
                    if tuple(sorted((j, o))) == (a, b) and m == r:
                        value += 1
                    if tuple(sorted((m, o))) == (a, b) and j == r:
                        value += 1
                    if value:
                        vec[index[(j, m, o)] * n + (r - 1)] = Fraction(value)
            vectors.append(vec)
    return span_subspace(vectors, ambient)


def not_pure_trace(
    slice_values: Sequence[Sequence[Fraction]], n: int, subspace: Subspace | None = None
) -> bool:
    """True iff the evaluated symmetric slice lies outside the trace subspace.

    A zero slice returns False: it lies in every subspace, so nothing is
    certified.  slice_values comes from KappaProjection.evaluate_slice.
    """
    if subspace is None:
        subspace = trace_subspace(n)
    flat = [value for row in slice_values for value in row]
    if len(flat) != subspace.ambient_dim:
        raise UsageError("slice shape does not match the trace subspace")
    return not membership(subspace, flat)
