"""Eigen-sections, the endomorphism fields phi', phi_i, and the deformation Phi_c.

Phi_c = sum_i c_i Phi_i with Phi_i = (1/q) phi' (x) phi_i is a section of
End_0(E*) (x) End_0(F); it is nilpotent of order two and invariant under the
flow.  Coefficients are stored in the frame E^{i'l}_{j'k} = E^{i'}_{j'} (x)
E_k^l, where E^{i'}_{j'} sends E^{j'} to E^{i'} and E_k^l sends E_l to E_k,
so the action on a section psi of E* (x) F reads
(Phi psi)^{i'}_k = sum_{j',l} Phi^{i'l}_{j'k} psi^{j'}_l.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import (
    Polynomial,
    RationalFunction,
    UsageError,
    VariableTable,
)
from .model import BundleActionMatrices, Chart, ChartPoint, SymbolicMatrix, bundle_actions, flow_point


class InvalidDeformation(ValueError):
    """The endomorphism field is not nilpotent of order two."""


# -- eigen-sections ------------------------------------------------------------------


@dataclass(frozen=True)
class EigenSections:
    """Component vectors of the flow eigen-sections at the generic point.

    E-frame {E_1', E_2'} for v, iota; E*-frame {E^1', E^2'} for v_tilde,
    iota_tilde; F-frame {E_1..E_n} for w and kappa[i]; F*-frame for w_tilde
    and kappa_tilde[i].  kappa and kappa_tilde are indexed by i = 2..n
    (position i-2).
    """

    v: tuple[RationalFunction, ...]
    iota: tuple[RationalFunction, ...]
    v_tilde: tuple[RationalFunction, ...]
    iota_tilde: tuple[RationalFunction, ...]
    w: tuple[RationalFunction, ...]
    kappa: tuple[tuple[RationalFunction, ...], ...]
    w_tilde: tuple[RationalFunction, ...]
    kappa_tilde: tuple[tuple[RationalFunction, ...], ...]


def eigen_sections(chart: Chart) -> EigenSections:
    n = chart.n
    zero = chart.const(0)
    one = chart.const(1)

    def unit(size: int, idx: int) -> tuple[RationalFunction, ...]:
        return tuple(one if k == idx else zero for k in range(size))

    w = tuple(chart.x(k, 1) for k in range(1, n + 1))
    kappa = tuple(unit(n, i - 1) for i in range(2, n + 1))
    kappa_tilde = []
    for i in range(2, n + 1):
        comp = [zero] * n
        comp[0] = -chart.x(i, 1)
        comp[i - 1] = chart.x(1, 1)
        kappa_tilde.append(tuple(comp))
    return EigenSections(
        v=(-chart.x(1, 2), chart.x(1, 1)),
        iota=unit(2, 0),
        v_tilde=unit(2, 1),
        iota_tilde=(chart.x(1, 1), chart.x(1, 2)),
        w=w,
        kappa=kappa,
        w_tilde=unit(n, 0),
        kappa_tilde=tuple(kappa_tilde),
    )


@dataclass(frozen=True)
class TransformationLaw:
    """One eigen-section law: action . sec(X) = factor . sec(z^t X)."""

    name: str
    factor: RationalFunction
    holds: bool


def transformation_check(chart: Chart, t=None) -> tuple[TransformationLaw, ...]:
    """Verify all eight transformation laws as exact identities in x (and t).

    E-sections transform by the E action, dual sections by the stored
    column-convention dual matrices.  The scale factors are (1 + t x11) for
    v, iota, w_tilde, kappa_tilde^i and 1 for v_tilde, iota_tilde, w,
    kappa_i.
    """
    t = chart.param("t") if t is None else chart.lift(t)
    sections = eigen_sections(chart)
    generic = ChartPoint.generic(chart)
    actions = bundle_actions(generic, t)
    flowed = flow_point(generic, t).substitution()
    one = chart.const(1)
    u = one + t * chart.x(1, 1)

    cases: list[tuple[str, SymbolicMatrix, tuple[RationalFunction, ...], RationalFunction]] = [
        ("v", actions.on_e, sections.v, u),
        ("iota", actions.on_e, sections.iota, u),
        ("v_tilde", actions.on_estar, sections.v_tilde, one),
        ("iota_tilde", actions.on_estar, sections.iota_tilde, one),
        ("w", actions.on_f, sections.w, one),
        ("w_tilde", actions.on_fstar, sections.w_tilde, u),
    ]
    for i in range(2, chart.n + 1):
        cases.append((f"kappa_{i}", actions.on_f, sections.kappa[i - 2], one))
        cases.append(
            (f"kappa_tilde^{i}", actions.on_fstar, sections.kappa_tilde[i - 2], u)
        )

    laws = []
    for name, matrix, components, factor in cases:
        moved = matrix.apply(components)
        target = tuple(factor * comp.substitute(flowed) for comp in components)
        laws.append(
            TransformationLaw(
                name=name,
                factor=factor,
                holds=all(a == b for a, b in zip(moved, target)),
            )
        )
    return tuple(laws)


# -- q and the endomorphism fields ----------------------------------------------------


def q_polynomial(chart: Chart) -> Polynomial:
    table = chart.table
    x12 = Polynomial.variable(table, table.x_index(1, 2))
    out = x12 * x12
    for i in range(1, chart.n + 1):
        xi1 = Polynomial.variable(table, table.x_index(i, 1))
        out = out + xi1 * xi1
    return out


def build_q(chart: Chart) -> RationalFunction:
    """q(X) = x12^2 + x11^2 + ... + xn1^2; its zero set is exactly SF."""
    return RationalFunction.from_polynomial(q_polynomial(chart))


def phi_prime_matrix(chart: Chart) -> SymbolicMatrix:
    """phi' = v (x) iota_tilde as an endomorphism of E*: xi |-> xi(v) iota_tilde.

    Column j' holds the components of phi'(E^{j'}).
    """
    x11 = chart.x(1, 1)
    x12 = chart.x(1, 2)
    return SymbolicMatrix(
        chart.table,
        [[-x11 * x12, x11 * x11], [-x12 * x12, x11 * x12]],
    )


def phi_i_matrix(chart: Chart, i: int) -> SymbolicMatrix:
    """phi_i = kappa_tilde^i (x) w as an endomorphism of F: u |-> kappa_tilde^i(u) w.

    Column 1 is -x_{i1} w, column i is x11 w, all others vanish.
    """
    n = chart.n
    if not (2 <= i <= n):
        raise UsageError(f"phi_i index must be in 2..{n}")
    zero = chart.const(0)
    x11 = chart.x(1, 1)
    xi1 = chart.x(i, 1)
    rows = []
    for k in range(1, n + 1):
        xk1 = chart.x(k, 1)
        row = [zero] * n
        row[0] = -xi1 * xk1
        row[i - 1] = x11 * xk1
        rows.append(row)
    return SymbolicMatrix(chart.table, rows)


class EndomorphismField:
    """Section of End(E*) (x) End(F) as coefficients Phi^{i'l}_{j'k}.

    Internal storage coeffs[ip][jp][l][k] is 0-based: ip, jp over the primed
    frame (1', 2'), l, k over 1..n.
    """

    __slots__ = ("chart", "coeffs")

    def __init__(self, chart: Chart, coeffs):
        n = chart.n
        self.chart = chart
        self.coeffs = tuple(
            tuple(
                tuple(tuple(coeffs[ip][jp][l][k] for k in range(n)) for l in range(n))
                for jp in range(2)
            )
            for ip in range(2)
        )

    def coefficient(self, i_prime: int, ell: int, j_prime: int, k: int) -> RationalFunction:
        """Coefficient of E^{i'l}_{j'k}; all arguments 1-based."""
        return self.coeffs[i_prime - 1][j_prime - 1][ell - 1][k - 1]

    @staticmethod
    def zero(chart: Chart) -> "EndomorphismField":
        z = RationalFunction.zero(chart.table)
        n = chart.n
        return EndomorphismField(
            chart,
            [[[[z] * n for _ in range(n)] for _ in range(2)] for _ in range(2)],
        )

    @staticmethod
    def identity(chart: Chart) -> "EndomorphismField":
        z = RationalFunction.zero(chart.table)
        one = chart.const(1)
        n = chart.n
        coeffs = [[[[z] * n for _ in range(n)] for _ in range(2)] for _ in range(2)]
        for ip in range(2):
            for l in range(n):
                row = list(coeffs[ip][ip][l])
                row[l] = one
                coeffs[ip][ip][l] = row
        return EndomorphismField(chart, coeffs)

    def is_zero(self) -> bool:
        return all(
            v.is_zero()
            for plane in self.coeffs
            for block in plane
            for row in block
            for v in row
        )

    def __add__(self, other: "EndomorphismField") -> "EndomorphismField":
        n = self.chart.n
        return EndomorphismField(
            self.chart,
            [
                [
                    [
                        [
                            self.coeffs[ip][jp][l][k] + other.coeffs[ip][jp][l][k]
                            for k in range(n)
                        ]
                        for l in range(n)
                    ]
                    for jp in range(2)
                ]
                for ip in range(2)
            ],
        )

    def __neg__(self) -> "EndomorphismField":
        n = self.chart.n
        return EndomorphismField(
            self.chart,
            [
                [
                    [[-self.coeffs[ip][jp][l][k] for k in range(n)] for l in range(n)]
                    for jp in range(2)
                ]
                for ip in range(2)
            ],
        )

    def compose(self, other: "EndomorphismField") -> "EndomorphismField":
        """(self o other)^{i'l}_{j'k} = sum_{a',b} self^{i'b}_{a'k} other^{a'l}_{j'b}."""
        n = self.chart.n
        zero = RationalFunction.zero(self.chart.table)
        out = [[[[zero] * n for _ in range(n)] for _ in range(2)] for _ in range(2)]
        for ip in range(2):
            for jp in range(2):
                for l in range(n):
                    for k in range(n):
                        acc = zero
                        for ap in range(2):
                            for b in range(n):
                                left = self.coeffs[ip][ap][b][k]
                                right = other.coeffs[ap][jp][l][b]
                                if not (left.is_zero() or right.is_zero()):
                                    acc = acc + left * right
                        out[ip][jp][l][k] = acc
        return EndomorphismField(self.chart, out)

    def apply(self, psi) -> tuple[tuple[RationalFunction, ...], ...]:
        """Action on section components psi[j'][l]: returns (Phi psi)[i'][k]."""
        n = self.chart.n
        zero = RationalFunction.zero(self.chart.table)
        out = []
        for ip in range(2):
            row = []
            for k in range(n):
                acc = zero
                for jp in range(2):
                    for l in range(n):
                        coeff = self.coeffs[ip][jp][l][k]
                        if not (coeff.is_zero() or psi[jp][l].is_zero()):
                            acc = acc + coeff * psi[jp][l]
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def partial_trace_primed(self, ell: int, k: int) -> RationalFunction:
        """sum_{i'} Phi^{i'l}_{i'k} (1-based l, k); vanishes for Phi_c."""
        return (
            self.coeffs[0][0][ell - 1][k - 1] + self.coeffs[1][1][ell - 1][k - 1]
        )

    def partial_trace_unprimed(self, i_prime: int, j_prime: int) -> RationalFunction:
        """sum_l Phi^{i'l}_{j'l}; vanishes for Phi_c."""
        acc = RationalFunction.zero(self.chart.table)
        for l in range(self.chart.n):
            acc = acc + self.coeffs[i_prime - 1][j_prime - 1][l][l]
        return acc

    def operator_matrix(self) -> SymbolicMatrix:
        """Matrix on E* (x) F in the flat basis (l, j') -> 2 l + j' (0-based).

        The flattening matches the chart variable order x11, x12, x21, ...,
        which is also the g_{-1} ordering used by the torsion and the
        representation-theory modules.
        """
        n = self.chart.n
        size = 2 * n
        zero = RationalFunction.zero(self.chart.table)
        rows = [[zero] * size for _ in range(size)]
        for ip in range(2):
            for jp in range(2):
                for l in range(n):
                    for k in range(n):
                        rows[2 * k + ip][2 * l + jp] = self.coeffs[ip][jp][l][k]
        return SymbolicMatrix(self.chart.table, rows)

    def substitute(self, mapping) -> "EndomorphismField":
        n = self.chart.n
        return EndomorphismField(
            self.chart,
            [
                [
                    [
                        [self.coeffs[ip][jp][l][k].substitute(mapping) for k in range(n)]
                        for l in range(n)
                    ]
                    for jp in range(2)
                ]
                for ip in range(2)
            ],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EndomorphismField):
            return NotImplemented
        n = self.chart.n
        return all(
            self.coeffs[ip][jp][l][k] == other.coeffs[ip][jp][l][k]
            for ip in range(2)
            for jp in range(2)
            for l in range(n)
            for k in range(n)
        )


def build_Phi(chart: Chart, c: Sequence | None = None) -> EndomorphismField:
    """Phi_c = sum_{i=2..n} c_i (1/q) phi' (x) phi_i.

    c is the vector (c_2, ..., c_n): length n-1, entries rational scalars
    (or strings); None keeps the parameters symbolic.  Requires n >= 3.
    """
    n = chart.n
    if n < 3:
        raise UsageError("the deformation family needs n >= 3")
    table = chart.table
    if c is None:
        c_polys = [
            Polynomial.variable(table, table.c_index(i)) for i in range(2, n + 1)
        ]
    else:
        if len(c) != n - 1:
            raise UsageError(f"expected {n - 1} deformation parameters, got {len(c)}")
        c_polys = [Polynomial.constant(table, value) for value in c]

    x = lambda i, j: Polynomial.variable(table, table.x_index(i, j))
    x11 = x(1, 1)
    x12 = x(1, 2)
    # phi' on E* (columns indexed by j'), phi_i on F, both as polynomials.
    m = ((-x11 * x12, x11 * x11), (-x12 * x12, x11 * x12))
    q = q_polynomial(chart)

    zero_poly = Polynomial.zero(table)
    nums = [
        [[[zero_poly] * n for _ in range(n)] for _ in range(2)] for _ in range(2)
    ]
    for idx, ci in enumerate(c_polys):
        i = idx + 2
        if ci.is_zero():
            continue
        xi1 = x(i, 1)
        for k in range(1, n + 1):
            xk1 = x(k, 1)
            # phi_i columns: l = 1 carries -x_{i1} x_{k1}, l = i carries x11 x_{k1}
            col_entries = ((0, -(xi1 * xk1)), (i - 1, x11 * xk1))
            for l, n_entry in col_entries:
                scaled = ci * n_entry
                for ip in range(2):
                    for jp in range(2):
                        nums[ip][jp][l][k - 1] = nums[ip][jp][l][k - 1] + m[ip][jp] * scaled

    coeffs = [
        [
            [
                [RationalFunction(nums[ip][jp][l][k], ((q, 1),)) for k in range(n)]
                for l in range(n)
            ]
            for jp in range(2)
        ]
        for ip in range(2)
    ]
    return EndomorphismField(chart, coeffs)


@dataclass(frozen=True)
class DeformedTheta:
    """Frame maps of the deformed structure (Id + Phi) o theta."""

    forward: EndomorphismField
    inverse: EndomorphismField


def deformed_theta(phi: EndomorphismField) -> DeformedTheta:
    """Forward map Id + Phi and its inverse Id - Phi (exact, by nilpotency)."""
    if not phi.compose(phi).is_zero():
        raise InvalidDeformation("endomorphism field is not nilpotent of order two")
    ident = EndomorphismField.identity(phi.chart)
    return DeformedTheta(forward=ident + phi, inverse=ident + (-phi))


# -- flow invariance ---------------------------------------------------------------


def _conjugation(field_matrix: SymbolicMatrix, actions: BundleActionMatrices) -> SymbolicMatrix:
    """(A (x) B) M (A (x) B)^{-1} in the flat (l,j') basis, A = on_estar, B = on_f.

    The inverses come from the stored duals: on_estar^{-1} = on_e^T and
    on_f^{-1} = on_fstar^T, so no symbolic matrix inversion is needed.
    """
    table = field_matrix.table
    a = actions.on_estar
    b = actions.on_f
    a_inv = actions.on_e.transpose()
    b_inv = actions.on_fstar.transpose()
    n = b.nrows
    size = 2 * n

    def kron(e_part: SymbolicMatrix, f_part: SymbolicMatrix) -> SymbolicMatrix:
        rows = []
        for k in range(n):
            for ip in range(2):
                row = []
                for l in range(n):
                    for jp in range(2):
                        row.append(e_part[ip, jp] * f_part[k, l])
                rows.append(row)
        return SymbolicMatrix(table, rows)

    t_mat = kron(a, b)
    t_inv = kron(a_inv, b_inv)
    assert t_mat.nrows == size
    return t_mat * field_matrix * t_inv


def invariance_check(phi: EndomorphismField, t=None) -> bool:
    """Exact identity (A (x) B) Phi(X) (A (x) B)^{-1} = Phi(z^t X) in x, t, c."""
    chart = phi.chart
    t = chart.param("t") if t is None else chart.lift(t)
    generic = ChartPoint.generic(chart)
    actions = bundle_actions(generic, t)
    conjugated = _conjugation(phi.operator_matrix(), actions)
    flowed = flow_point(generic, t).substitution()
    target = phi.substitute(flowed).operator_matrix()
    return conjugated == target


def unscaled_flow_factor_check(chart: Chart, i: int, t=None) -> bool:
    """(z^t)_* (phi' (x) phi_i)(X) = (1 + t x11)^2 (phi' (x) phi_i)(z^t X).

    This is the intermediate law behind invariance: the (1+t x11)^2 factor
    cancels against q(z^t X) = (1 + t x11)^{-2} q(X).
    """
    t = chart.param("t") if t is None else chart.lift(t)
    n = chart.n
    table = chart.table
    m = phi_prime_matrix(chart)
    nm = phi_i_matrix(chart, i)
    zero = RationalFunction.zero(table)
    size = 2 * n
    rows = [[zero] * size for _ in range(size)]
    for ip in range(2):
        for jp in range(2):
            for l in range(n):
                for k in range(n):
                    rows[2 * k + ip][2 * l + jp] = m[ip, jp] * nm[k, l]
    unscaled = SymbolicMatrix(table, rows)

    generic = ChartPoint.generic(chart)
    actions = bundle_actions(generic, t)
    conjugated = _conjugation(unscaled, actions)
    flowed = flow_point(generic, t).substitution()
    u = chart.const(1) + t * chart.x(1, 1)
    factor = u * u
    moved = unscaled.substitute(flowed)
    scaled = SymbolicMatrix(
        table, [[factor * v for v in row] for row in moved.rows]
    )
    return conjugated == scaled


def parse_c(chart: Chart, text: str) -> tuple[Fraction, ...]:
    """Parse the CLI form of c: comma-separated rationals, e.g. "1,0,0"."""
    parts = [p for p in text.split(",")]
    if len(parts) != chart.n - 1:
        raise UsageError(
            f"expected {chart.n - 1} comma-separated values for c, got {len(parts)}"
        )
    from .exactalg import parse_rational

    return tuple(parse_rational(p) for p in parts)
