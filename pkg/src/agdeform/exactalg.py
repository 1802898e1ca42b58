"""Exact multivariate polynomial and rational-function arithmetic over Q.

Values live in a localization of the polynomial ring in the chart
coordinates x_{ij'} (i = 1..n, j' = 1,2), a flow parameter t, an auxiliary
flow parameter s, and deformation parameters c_2..c_n.  Denominators are
kept as factored multisets rather than expanded products, equality is
decided by cross-multiplication, and the only simplification performed is
trial division by stored factors.  No general gcd or factorization is
attempted; every computation in this package stays inside the localization
generated by the factors that actually occur (q, 1 + t*x11 and friends,
x11), so this is enough to reach canonical zero.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

#: Exact scalar type: arbitrary-precision rationals with canonical
#: (coprime, positive-denominator) representation guaranteed by the stdlib.
RationalScalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class UsageError(ValueError):
    """A caller violated a precondition (bad variable, table mismatch...)."""


class MismatchedTables(UsageError):
    """Two values built over different variable tables were combined."""


class PoleAtPoint(ArithmeticError):
    """A denominator factor vanishes at the requested evaluation point."""

    def __init__(self, factor_text: str, point: tuple[Fraction, ...]):
        self.factor_text = factor_text
        self.point = point
        super().__init__(f"denominator factor {factor_text} vanishes at point")


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational literal of the form "p/q" or "p"."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid rational literal {text!r}") from exc


class VariableTable:
    """Fixed, ordered list of variable identifiers for one chart size n.

    Order: x11, x12, x21, x22, ..., xn1, xn2, t, s, c2, ..., cn.  The x
    variables carry weight 1 for degree bookkeeping; t, s and the c_i carry
    weight 0 (degrees are counted in chart variables only).
    """

    __slots__ = ("n", "names", "size", "chart_weights", "_index")

    def __init__(self, n: int):
        if n < 2:
            raise UsageError(f"chart size n must be >= 2, got {n}")
        self.n = n
        names: list[str] = []
        for i in range(1, n + 1):
            names.append(f"x{i}1")
            names.append(f"x{i}2")
        names.append("t")
        names.append("s")
        for i in range(2, n + 1):
            names.append(f"c{i}")
        self.names = tuple(names)
        self.size = len(names)
        self.chart_weights = tuple(1 if k < 2 * n else 0 for k in range(self.size))
        self._index = {name: k for k, name in enumerate(names)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VariableTable) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("VariableTable", self.n))

    def __repr__(self) -> str:
        return f"VariableTable(n={self.n})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r}") from None

    def x_index(self, i: int, j: int) -> int:
        """Index of the chart coordinate x_{ij'} (1-based i in 1..n, j in 1..2)."""
        if not (1 <= i <= self.n and 1 <= j <= 2):
            raise UsageError(f"coordinate x[{i}][{j}] outside n x 2 chart")
        return 2 * (i - 1) + (j - 1)

    @property
    def t_index(self) -> int:
        return 2 * self.n

    @property
    def s_index(self) -> int:
        return 2 * self.n + 1

    def c_index(self, i: int) -> int:
        if not (2 <= i <= self.n):
            raise UsageError(f"deformation parameter c{i} outside c2..c{self.n}")
        return 2 * self.n + 2 + (i - 2)

    def is_chart(self, idx: int) -> bool:
        return self.chart_weights[idx] == 1

    def render(self, idx: int, latex: bool = False) -> str:
        name = self.names[idx]
        if not latex:
            return name
        head = name.rstrip("0123456789")
        tail = name[len(head):]
        return f"{head}_{{{tail}}}" if tail else head

    def point(
        self,
        x: Sequence[Sequence[Fraction | int | str]] | None = None,
        t: Fraction | int | str = 0,
        s: Fraction | int | str = 0,
        c: Sequence[Fraction | int | str] | None = None,
    ) -> tuple[Fraction, ...]:
        """Build a full evaluation vector; unspecified variables are 0."""
        values = [_ZERO] * self.size
        if x is not None:
            if len(x) != self.n or any(len(row) != 2 for row in x):
                raise UsageError(f"point must have shape {self.n} x 2")
            for i, row in enumerate(x):
                for j, entry in enumerate(row):
                    values[2 * i + j] = _coerce(entry)
        values[self.t_index] = _coerce(t)
        values[self.s_index] = _coerce(s)
        if c is not None:
            if len(c) != self.n - 1:
                raise UsageError(f"expected {self.n - 1} deformation parameters")
            for k, entry in enumerate(c):
                values[2 * self.n + 2 + k] = _coerce(entry)
        return tuple(values)


def _coerce(value: Fraction | int | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise UsageError(f"cannot interpret {value!r} as an exact rational")


Monomial = tuple[int, ...]


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Coefficients are keyed by exponent tuples of length table.size; zero
    coefficients are never stored, so the zero polynomial is the empty map.
    Monomial order anywhere ordering matters is lexicographic in the fixed
    table order, which keeps every rendering deterministic.
    """

    __slots__ = ("table", "coeffs", "_key")

    def __init__(self, table: VariableTable, coeffs: dict[Monomial, Fraction]):
        self.table = table
        self.coeffs = {m: c for m, c in coeffs.items() if c}
        self._key: tuple | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(table: VariableTable) -> "Polynomial":
        return Polynomial(table, {})

    @staticmethod
    def constant(table: VariableTable, value: Fraction | int | str) -> "Polynomial":
        value = _coerce(value)
        if not value:
            return Polynomial.zero(table)
        return Polynomial(table, {(0,) * table.size: value})

    @staticmethod
    def variable(table: VariableTable, idx: int) -> "Polynomial":
        if not (0 <= idx < table.size):
            raise UsageError(f"variable index {idx} out of range")
        mono = tuple(1 if k == idx else 0 for k in range(table.size))
        return Polynomial(table, {mono: _ONE})

    # -- basic structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return not self.coeffs or self.coeffs.keys() == {(0,) * self.table.size}

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return _ZERO
        if not self.is_constant():
            raise UsageError("polynomial is not constant")
        return next(iter(self.coeffs.values()))

    def key(self) -> tuple:
        """Canonical hashable form (sorted coefficient items)."""
        if self._key is None:
            self._key = tuple(sorted(self.coeffs.items()))
        return self._key

    def leading(self) -> tuple[Monomial, Fraction]:
        """Lexicographically greatest monomial and its coefficient."""
        if self.is_zero():
            raise UsageError("zero polynomial has no leading monomial")
        mono = max(self.coeffs)
        return mono, self.coeffs[mono]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.table == self.table
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.table, self.key()))

    def __repr__(self) -> str:
        return f"Polynomial({render_polynomial(self)})"

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.table != other.table:
            raise MismatchedTables("operands use different variable tables")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.coeffs)
        for mono, coeff in other.coeffs.items():
            acc = out.get(mono)
            if acc is None:
                out[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
        return Polynomial(self.table, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.table, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                acc = out.get(mono)
                if acc is None:
                    out[mono] = prod
                else:
                    acc = acc + prod
                    if acc:
                        out[mono] = acc
                    else:
                        del out[mono]
        return Polynomial(self.table, out)

    def scale(self, value: Fraction) -> "Polynomial":
        if not value:
            return Polynomial.zero(self.table)
        return Polynomial(self.table, {m: c * value for m, c in self.coeffs.items()})

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise UsageError("polynomial powers must be nonnegative")
        result = Polynomial.constant(self.table, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus and evaluation ----------------------------------------------

    def differentiate(self, idx: int) -> "Polynomial":
        if not (0 <= idx < self.table.size):
            raise UsageError(f"variable index {idx} out of range")
        out: dict[Monomial, Fraction] = {}
        for mono, coeff in self.coeffs.items():
            e = mono[idx]
            if e == 0:
                continue
            lowered = mono[:idx] + (e - 1,) + mono[idx + 1:]
            acc = out.get(lowered)
            term = coeff * e
            out[lowered] = term if acc is None else acc + term
        return Polynomial(self.table, {m: c for m, c in out.items() if c})

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.table.size:
            raise UsageError("evaluation point does not bind every variable")
        powers: list[list[Fraction]] = [[_ONE] for _ in range(self.table.size)]
        total = _ZERO
        for mono, coeff in self.coeffs.items():
            term = coeff
            for idx, e in enumerate(mono):
                if e:
                    cache = powers[idx]
                    while len(cache) <= e:
                        cache.append(cache[-1] * point[idx])
                    term = term * cache[e]
            total += term
        return total

    def substitute(self, mapping: Mapping[int, "RationalFunction"]) -> "RationalFunction":
        """Replace variables by rational functions (composition)."""
        table = self.table
        result = RationalFunction.zero(table)
        for mono, coeff in self.coeffs.items():
            term = RationalFunction.constant(table, coeff)
            for idx, e in enumerate(mono):
                if not e:
                    continue
                sub = mapping.get(idx)
                if sub is None:
                    term = term * RationalFunction(
                        Polynomial.variable(table, idx) ** e, ()
                    )
                else:
                    term = term * sub**e
            result = result + term
        return result

    # -- degree bookkeeping ----------------------------------------------------

    def chart_degree_range(self) -> tuple[int, int] | None:
        """(min, max) total degree in chart variables, or None for zero."""
        if self.is_zero():
            return None
        weights = self.table.chart_weights
        degrees = [
            sum(e * w for e, w in zip(mono, weights)) for mono in self.coeffs
        ]
        return min(degrees), max(degrees)


def _divide_exact(dividend: Polynomial, divisor: Polynomial) -> Polynomial | None:
    """Exact multivariate division; None if divisor does not divide evenly."""
    if divisor.is_zero():
        raise UsageError("division by the zero polynomial")
    if dividend.is_zero():
        return dividend
    lead_mono, lead_coeff = divisor.leading()
    remainder = dict(dividend.coeffs)
    quotient: dict[Monomial, Fraction] = {}
    while remainder:
        mono = max(remainder)
        diff = tuple(a - b for a, b in zip(mono, lead_mono))
        if any(e < 0 for e in diff):
            return None
        q = remainder[mono] / lead_coeff
        quotient[diff] = q
        for dm, dc in divisor.coeffs.items():
            target = tuple(a + b for a, b in zip(diff, dm))
            acc = remainder.get(target, _ZERO) - q * dc
            if acc:
                remainder[target] = acc
            else:
                remainder.pop(target, None)
    return Polynomial(dividend.table, quotient)


DenominatorFactors = tuple[tuple[Polynomial, int], ...]


class RationalFunction:
    """numerator / product of denominator factors, each with an exponent.

    Factors are kept monic (leading coefficient 1 in lex order) and sorted
    canonically; scalars are folded into the numerator.  The represented
    value is num / prod(f**e); two values compare equal by
    cross-multiplication, which is decidable without gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Iterable[tuple[Polynomial, int]] = ()):
        table = num.table
        if num.is_zero():
            self.num = num
            self.den = ()
            return
        merged: dict[tuple, list] = {}
        scale = _ONE
        for factor, exponent in den:
            if factor.table != table:
                raise MismatchedTables("denominator factor uses a different table")
            if exponent == 0:
                continue
            if exponent < 0:
                raise UsageError("denominator exponents must be positive")
            if factor.is_zero():
                raise UsageError("zero polynomial cannot be a denominator factor")
            if factor.is_constant():
                scale = scale * factor.constant_value() ** exponent
                continue
            _, lead = factor.leading()
            if lead != 1:
                factor = factor.scale(1 / lead)
                scale = scale * lead**exponent
            entry = merged.get(factor.key())
            if entry is None:
                merged[factor.key()] = [factor, exponent]
            else:
                entry[1] += exponent
        if scale != 1:
            num = num.scale(1 / scale)
        # Trial division: the only reduction performed, and enough to reach
        # canonical zero because equality testing never relies on it.
        factors: list[list] = sorted(merged.values(), key=lambda e: e[0].key())
        for entry in factors:
            factor = entry[0]
            while entry[1] > 0:
                quotient = _divide_exact(num, factor)
                if quotient is None:
                    break
                num = quotient
                entry[1] -= 1
        self.num = num
        self.den = tuple((f, e) for f, e in factors if e > 0)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(table: VariableTable) -> "RationalFunction":
        return RationalFunction(Polynomial.zero(table), ())

    @staticmethod
    def constant(table: VariableTable, value: Fraction | int | str) -> "RationalFunction":
        return RationalFunction(Polynomial.constant(table, value), ())

    @staticmethod
    def variable(table: VariableTable, idx: int) -> "RationalFunction":
        return RationalFunction(Polynomial.variable(table, idx), ())

    @staticmethod
    def from_polynomial(num: Polynomial) -> "RationalFunction":
        return RationalFunction(num, ())

    @classmethod
    def _raw(cls, num: Polynomial, den: DenominatorFactors) -> "RationalFunction":
        """Skip normalization for values already in canonical form."""
        out = object.__new__(cls)
        out.num = num
        out.den = den if not num.is_zero() else ()
        return out

    # -- structure -------------------------------------------------------------

    @property
    def table(self) -> VariableTable:
        return self.num.table

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def denominator_polynomial(self) -> Polynomial:
        out = Polynomial.constant(self.table, 1)
        for factor, exponent in self.den:
            out = out * factor**exponent
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.table != other.table:
            raise MismatchedTables("operands use different variable tables")
        # Cross-multiplication after cancelling shared factors.
        mine = {f.key(): (f, e) for f, e in self.den}
        theirs = {f.key(): (f, e) for f, e in other.den}
        left = self.num
        right = other.num
        for key, (factor, exponent) in theirs.items():
            shared = mine.get(key)
            extra = exponent - (shared[1] if shared else 0)
            if extra > 0:
                left = left * factor**extra
        for key, (factor, exponent) in mine.items():
            shared = theirs.get(key)
            extra = exponent - (shared[1] if shared else 0)
            if extra > 0:
                right = right * factor**extra
        return left == right

    def __hash__(self) -> int:  # pragma: no cover - not used as dict keys
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({render_rational_function(self)})"

    # -- arithmetic ---------------------------------------------------------------

    def _check(self, other: "RationalFunction") -> None:
        if self.table != other.table:
            raise MismatchedTables("operands use different variable tables")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        mine = {f.key(): (f, e) for f, e in self.den}
        theirs = {f.key(): (f, e) for f, e in other.den}
        union: dict[tuple, tuple[Polynomial, int]] = {}
        for key, (factor, exponent) in mine.items():
            rival = theirs.get(key)
            union[key] = (factor, max(exponent, rival[1] if rival else 0))
        for key, (factor, exponent) in theirs.items():
            if key not in union:
                union[key] = (factor, exponent)
        left = self.num
        right = other.num
        for key, (factor, exponent) in union.items():
            have = mine.get(key)
            lack = exponent - (have[1] if have else 0)
            if lack > 0:
                left = left * factor**lack
            have = theirs.get(key)
            lack = exponent - (have[1] if have else 0)
            if lack > 0:
                right = right * factor**lack
        return RationalFunction(left + right, tuple(union.values()))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.num, self.den)

    def scale(self, value) -> "RationalFunction":
        """Multiply by a rational constant without re-normalizing factors."""
        value = Fraction(value)
        if not value:
            return RationalFunction.zero(self.table)
        return RationalFunction._raw(self.num.scale(value), self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RationalFunction.zero(self.table)
        return RationalFunction(self.num * other.num, self.den + other.den)

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero rational function")
        num = self.denominator_polynomial()
        return RationalFunction(num, ((self.num, 1),))

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = RationalFunction.constant(self.table, 1)
        for _ in range(exponent):
            out = out * self
        return out

    # -- calculus, evaluation, composition -----------------------------------------

    def differentiate(self, var: int | str) -> "RationalFunction":
        idx = self.table.index(var) if isinstance(var, str) else var
        if not (0 <= idx < self.table.size):
            raise UsageError(f"variable index {idx} out of range")
        if not self.den:
            return RationalFunction(self.num.differentiate(idx), ())
        # d(num / prod f_i^e_i) has numerator
        #   num' * prod f_i  -  num * sum_i e_i f_i' prod_{j != i} f_j
        # over prod f_i^(e_i + 1): each exponent grows by at most one.
        table = self.table
        factors = [f for f, _ in self.den]
        all_prod = Polynomial.constant(table, 1)
        for f in factors:
            all_prod = all_prod * f
        correction = Polynomial.zero(table)
        for i, (factor, exponent) in enumerate(self.den):
            partial = Polynomial.constant(table, exponent)
            for j, other in enumerate(factors):
                if j != i:
                    partial = partial * other
            correction = correction + partial * factor.differentiate(idx)
        new_num = self.num.differentiate(idx) * all_prod - self.num * correction
        new_den = tuple((f, e + 1) for f, e in self.den)
        return RationalFunction(new_num, new_den)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        point = tuple(point)
        value = _ONE
        for factor, exponent in self.den:
            fval = factor.evaluate(point)
            if not fval:
                raise PoleAtPoint(render_polynomial(factor), point)
            value = value * fval**exponent
        return self.num.evaluate(point) / value

    def substitute(self, mapping: Mapping[int, "RationalFunction"]) -> "RationalFunction":
        result = self.num.substitute(mapping)
        for factor, exponent in self.den:
            result = result * factor.substitute(mapping).inverse() ** exponent
        return result


# -- module-level operation wrappers ---------------------------------------------


def arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Exact field arithmetic; op is one of add, sub, mul."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown arithmetic op {op!r}")


def differentiate(f: RationalFunction, var: int | str) -> RationalFunction:
    return f.differentiate(var)


def evaluate(f: RationalFunction, point: Sequence[Fraction]) -> Fraction:
    return f.evaluate(point)


@dataclass(frozen=True)
class DegreeInfo:
    """Degree facts counted in chart variables only (t, s, c have weight 0).

    net_degree is numerator total degree minus denominator total degree;
    min_net_degree uses the numerator's lowest monomial degree instead and
    is what "vanishes to order >= k at the origin" arguments need.  The
    zero function reports the +infinity sentinel for both.
    """

    numerator_total_degree: int | None
    is_numerator_homogeneous: bool
    net_degree: float
    min_net_degree: float


def degree_info(f: RationalFunction) -> DegreeInfo:
    num_range = f.num.chart_degree_range()
    if num_range is None:
        return DegreeInfo(None, True, math.inf, math.inf)
    den_degree = 0
    for factor, exponent in f.den:
        frange = factor.chart_degree_range()
        den_degree += exponent * frange[1]
    return DegreeInfo(
        numerator_total_degree=num_range[1],
        is_numerator_homogeneous=num_range[0] == num_range[1],
        net_degree=num_range[1] - den_degree,
        min_net_degree=num_range[0] - den_degree,
    )


@dataclass(frozen=True)
class FdCheck:
    symbolic: Fraction
    central_difference: float
    rel_error: float


def fd_check(
    f: RationalFunction,
    var: int | str,
    point: Sequence[Fraction],
    step: Fraction,
) -> FdCheck:
    """Compare the exact derivative against a central finite difference.

    The stencil values f(point +/- step e_var) are computed exactly and the
    difference quotient is formed in floats only at the end, so the reported
    error is pure truncation error of order step**2.
    """
    table = f.table
    idx = table.index(var) if isinstance(var, str) else var
    step = _coerce(step)
    if not step:
        raise UsageError("finite-difference step must be nonzero")
    point = tuple(point)
    symbolic = f.differentiate(idx).evaluate(point)
    plus = list(point)
    minus = list(point)
    plus[idx] = point[idx] + step
    minus[idx] = point[idx] - step
    quotient = (f.evaluate(plus) - f.evaluate(minus)) / (2 * step)
    central = float(quotient)
    if symbolic:
        rel_error = abs(float((quotient - symbolic) / symbolic))
    else:
        rel_error = abs(central)
    return FdCheck(symbolic=symbolic, central_difference=central, rel_error=rel_error)


# -- rendering -----------------------------------------------------------------


def _render_scalar(value: Fraction, latex: bool) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    if latex:
        sign = "-" if value < 0 else ""
        return f"{sign}\\frac{{{abs(value.numerator)}}}{{{value.denominator}}}"
    return f"{value.numerator}/{value.denominator}"


def _render_monomial(table: VariableTable, mono: Monomial, latex: bool) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if not e:
            continue
        name = table.render(idx, latex=latex)
        if e == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{e}}}")
        else:
            parts.append(f"{name}^{e}")
    joiner = " " if latex else "*"
    return joiner.join(parts)


def render_polynomial(p: Polynomial, latex: bool = False) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for mono in sorted(p.coeffs, reverse=True):
        coeff = p.coeffs[mono]
        body = _render_monomial(p.table, mono, latex)
        if not body:
            text = _render_scalar(coeff, latex)
        elif coeff == 1:
            text = body
        elif coeff == -1:
            text = f"-{body}"
        else:
            joiner = " " if latex else "*"
            text = f"{_render_scalar(coeff, latex)}{joiner}{body}"
        terms.append(text)
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def render_rational_function(f: RationalFunction, latex: bool = False) -> str:
    num = render_polynomial(f.num, latex)
    if not f.den:
        return num
    if latex:
        den_parts = []
        for factor, exponent in f.den:
            body = render_polynomial(factor, latex=True)
            den_parts.append(f"({body})^{{{exponent}}}" if exponent > 1 else f"({body})")
        return f"\\frac{{{num}}}{{{' '.join(den_parts)}}}"
    den_parts = []
    for factor, exponent in f.den:
        body = render_polynomial(factor)
        den_parts.append(f"({body})^{exponent}" if exponent > 1 else f"({body})")
    num_text = f"({num})" if (" + " in num or " - " in num) else num
    return f"{num_text}/{'/'.join(den_parts)}"
