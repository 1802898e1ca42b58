"""Matrix realizations of the graded matrix algebra and its differential.

g = g_{-1} + g_0 + g_1 sits inside sl(2+n) by block structure: g_{-1} the
lower-left n x 2 block, g_1 the upper-right, g_0 the pairs (A, B) of diagonal
blocks with tr A + tr B = 0 acting on g_{-1} by X -> BX - XA.  The
differential partial1 : g_{-1}* (x) g_0 -> Lambda^2 g_{-1}* (x) g_{-1},
(partial1 f)(w, v) = f(w).v - f(v).w, is realized as one exact integer
matrix per n; its image is the obstruction space behind the rank-one torsion
criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactalg import UsageError
from .linalg import MatrixQ, Subspace, image_subspace, sparse_rank


def flat_basis_index(i: int, j_prime: int) -> int:
    """Position of the g_{-1} basis matrix unit at (row i, column j'), 1-based in,
    0-based out; identical to the chart variable order."""
    return 2 * (i - 1) + (j_prime - 1)


def pair_index(b: int, c: int, size: int) -> int:
    """Position of the ordered pair b < c in the lexicographic pair list."""
    if not (0 <= b < c < size):
        raise UsageError(f"need 0 <= b < c < {size}")
    return b * size - b * (b + 1) // 2 + (c - b - 1)


class GradedAlgebraSpec:
    """Fixed ordered bases for the three graded pieces at a given n.

    The g_0 basis order: the two strictly triangular 2x2 units; the n(n-1)
    off-diagonal n x n units in lexicographic order; diag(1,-1) in the 2x2
    slot; the n-1 consecutive diagonal differences in the n x n slot; and one
    mixed trace-balanced element (diag(1,0), -E_11).  Total n^2 + 3.
    """

    def __init__(self, n: int):
        if n < 2:
            raise UsageError("graded algebra needs n >= 2")
        self.n = n
        self.dim_gminus = 2 * n
        self.dim_gzero = n * n + 3
        self.dim_gplus = 2 * n
        self.gzero_basis = self._build_gzero_basis()

    def _build_gzero_basis(self) -> tuple[tuple[MatrixQ, MatrixQ], ...]:
        n = self.n

        def unit2(r, c):
            return MatrixQ(
                [[1 if (i, j) == (r, c) else 0 for j in range(2)] for i in range(2)]
            )

        def unitn(r, c):
            return MatrixQ(
                [[1 if (i, j) == (r, c) else 0 for j in range(n)] for i in range(n)]
            )

        zero2 = MatrixQ.zero(2, 2)
        zeron = MatrixQ.zero(n, n)
        basis = [(unit2(0, 1), zeron), (unit2(1, 0), zeron)]
        for j in range(n):
            for k in range(n):
                if j != k:
                    basis.append((zero2, unitn(j, k)))
        basis.append((MatrixQ([[1, 0], [0, -1]]), zeron))
        for j in range(n - 1):
            diff = MatrixQ(
                [
                    [
                        (1 if i == j else -1 if i == j + 1 else 0) if i == c else 0
                        for c in range(n)
                    ]
                    for i in range(n)
                ]
            )
            basis.append((zero2, diff))
        basis.append((MatrixQ([[1, 0], [0, 0]]), MatrixQ(
            [[-1 if (i, j) == (0, 0) else 0 for j in range(n)] for i in range(n)]
        )))
        assert len(basis) == self.dim_gzero
        return tuple(basis)

    def gminus_basis_matrix(self, a: int) -> MatrixQ:
        """The n x 2 matrix unit for flat index a."""
        n = self.n
        i, jp = a // 2, a % 2
        return MatrixQ(
            [[1 if (r, c) == (i, jp) else 0 for c in range(2)] for r in range(n)]
        )

    def gplus_basis_matrix(self, a: int) -> MatrixQ:
        """The 2 x n matrix unit for flat index a = n*(row) + col."""
        n = self.n
        jp, i = a // n, a % n
        return MatrixQ(
            [[1 if (r, c) == (jp, i) else 0 for c in range(n)] for r in range(2)]
        )

    def action_matrix(self, m: int) -> MatrixQ:
        """rho(g_m) on g_{-1} in the flat basis: column b holds B m_b - m_b A."""
        n = self.n
        a_mat, b_mat = self.gzero_basis[m]
        size = 2 * n
        cols = []
        for b in range(size):
            i, jp = b // 2, b % 2
            col = [Fraction(0)] * size
            for r in range(n):
                if b_mat[(r, i)]:
                    col[2 * r + jp] += b_mat[(r, i)]
            for c in range(2):
                if a_mat[(jp, c)]:
                    col[2 * i + c] -= a_mat[(jp, c)]
            cols.append(col)
        return MatrixQ([[cols[b][d] for b in range(size)] for d in range(size)])

    def embed(self, a2: MatrixQ | None, bn: MatrixQ | None,
              x: MatrixQ | None, z: MatrixQ | None) -> MatrixQ:
        """Block matrix [[A, Z], [X, B]] in sl(2+n)."""
        n = self.n
        size = 2 + n
        rows = [[Fraction(0)] * size for _ in range(size)]
        if a2 is not None:
            for i in range(2):
                for j in range(2):
                    rows[i][j] = a2[(i, j)]
        if z is not None:
            for i in range(2):
                for j in range(n):
                    rows[i][2 + j] = z[(i, j)]
        if x is not None:
            for i in range(n):
                for j in range(2):
                    rows[2 + i][j] = x[(i, j)]
        if bn is not None:
            for i in range(n):
                for j in range(n):
                    rows[2 + i][2 + j] = bn[(i, j)]
        return MatrixQ(rows)

    def grade_of_blocks(self, mat: MatrixQ) -> set[int]:
        """Which graded pieces a block matrix touches (subset of {-1, 0, 1})."""
        n = self.n
        grades = set()
        if any(mat[(2 + i, j)] for i in range(n) for j in range(2)):
            grades.add(-1)
        if any(mat[(i, 2 + j)] for i in range(2) for j in range(n)):
            grades.add(1)
        diag = any(mat[(i, j)] for i in range(2) for j in range(2)) or any(
            mat[(2 + i, 2 + j)] for i in range(n) for j in range(n)
        )
        if diag:
            grades.add(0)
        return grades

    def verify_grading(self) -> bool:
        """[g_i, g_j] lands in g_{i+j} (zero when |i+j| > 1) on all basis pairs."""
        pieces = {
            -1: [self.embed(None, None, self.gminus_basis_matrix(a), None)
                 for a in range(self.dim_gminus)],
            0: [self.embed(a2, bn, None, None) for a2, bn in self.gzero_basis],
            1: [self.embed(None, None, None, self.gplus_basis_matrix(a))
                for a in range(self.dim_gplus)],
        }
        for gi, lefts in pieces.items():
            for gj, rights in pieces.items():
                target = gi + gj
                for lm in lefts:
                    for rm in rights:
                        comm = lm * rm - rm * lm
                        grades = self.grade_of_blocks(comm)
                        if target in (-1, 0, 1):
                            if not grades <= {target}:
                                return False
                        elif grades:
                            return False
        return True

    def gzero_coordinates(self, a2: MatrixQ, bn: MatrixQ) -> tuple[Fraction, ...]:
        """Coefficients of (A, B) with tr A + tr B = 0 in the fixed basis."""
        n = self.n
        trace = sum(a2[(i, i)] for i in range(2)) + sum(bn[(i, i)] for i in range(n))
        if trace != 0:
            raise UsageError("element is not trace-balanced")
        coeffs = [a2[(0, 1)], a2[(1, 0)]]
        for j in range(n):
            for k in range(n):
                if j != k:
                    coeffs.append(bn[(j, k)])
        u = -a2[(1, 1)]
        v = a2[(0, 0)] + a2[(1, 1)]
        coeffs.append(u)
        partial = Fraction(0)
        tail = [Fraction(0)] * (n - 1)
        for j in range(n - 1, 0, -1):
            partial -= bn[(j, j)]
            tail[j - 1] = partial
        coeffs.extend(tail)
        coeffs.append(v)
        return tuple(coeffs)

    def gzero_from_coordinates(self, coeffs: Sequence[Fraction]) -> tuple[MatrixQ, MatrixQ]:
        if len(coeffs) != self.dim_gzero:
            raise UsageError("wrong coefficient count")
        n = self.n
        a_rows = [[Fraction(0)] * 2 for _ in range(2)]
        b_rows = [[Fraction(0)] * n for _ in range(n)]
        a_rows[0][1] = Fraction(coeffs[0])
        a_rows[1][0] = Fraction(coeffs[1])
        pos = 2
        for j in range(n):
            for k in range(n):
                if j != k:
                    b_rows[j][k] = Fraction(coeffs[pos])
                    pos += 1
        u = Fraction(coeffs[pos])
        pos += 1
        for j in range(n - 1):
            w = Fraction(coeffs[pos])
            b_rows[j][j] += w
            b_rows[j + 1][j + 1] -= w
            pos += 1
        v = Fraction(coeffs[pos])
        a_rows[0][0] += u + v
        a_rows[1][1] -= u
        b_rows[0][0] -= v
        return MatrixQ(a_rows), MatrixQ(b_rows)

    def gzero_bracket(self, m1: int, m2: int) -> tuple[Fraction, ...]:
        """Structure constants: [g_{m1}, g_{m2}] in basis coordinates."""
        a1, b1 = self.gzero_basis[m1]
        a2, b2 = self.gzero_basis[m2]
        return self.gzero_coordinates(a1 * a2 - a2 * a1, b1 * b2 - b2 * b1)


@dataclass
class Partial1Map:
    """The differential as an exact matrix, with cached image data."""

    n: int
    matrix: MatrixQ
    rank: int
    domain_dim: int
    target_dim: int
    _image: Subspace | None = None

    @property
    def kernel_dim(self) -> int:
        return self.domain_dim - self.rank

    def image(self) -> Subspace:
        """Column space as a Subspace; computed densely on first use."""
        if self._image is None:
            self._image = image_subspace(self.matrix)
            assert self._image.dim == self.rank
        return self._image


def build_partial1(n: int, spec: GradedAlgebraSpec | None = None) -> Partial1Map:
    """Exact matrix of (partial1 f)(w_b, w_c) = f(w_b).w_c - f(w_c).w_b.

    Columns indexed by (a, m) -> a*dim_gzero + m for f = xi^a (x) g_m; rows
    by pair_index(b, c)*2n + d over pairs b < c and outputs d.  The rank is
    computed by fraction-free sparse elimination, so this stays fast through
    n = 5; the dense image subspace is deferred to Partial1Map.image().
    """
    spec = spec or GradedAlgebraSpec(n)
    size = 2 * n
    dim0 = spec.dim_gzero
    domain = size * dim0
    npairs = size * (size - 1) // 2
    target = npairs * size
    actions = [spec.action_matrix(m) for m in range(dim0)]

    entries: dict[tuple[int, int], Fraction] = {}
    for a in range(size):
        for m in range(dim0):
            col = a * dim0 + m
            action = actions[m]
            for other in range(size):
                if other == a:
                    continue
                # pair containing a: (a, other) ordered; sign - when a sits second
                b, c, sign = (a, other, 1) if a < other else (other, a, -1)
                base = pair_index(b, c, size) * size
                for d in range(size):
                    value = action[(d, other)]
                    if value:
                        entries[(base + d, col)] = sign * value
    rows = [[Fraction(0)] * domain for _ in range(target)]
    for (r, col), value in entries.items():
        rows[r][col] = Fraction(value)
    matrix = MatrixQ(rows)
    rank = sparse_rank(
        {key: value.numerator for key, value in entries.items()}, target, domain
    )
    return Partial1Map(
        n=n, matrix=matrix, rank=rank, domain_dim=domain, target_dim=target
    )


@dataclass(frozen=True)
class DecompositionDims:
    """Dimension bookkeeping of the two-form decomposition at a given n."""

    n: int
    lambda_split: tuple[int, int]
    torsion_module_dim: int
    trace_family_dims: tuple[int, int]
    trace_overlap_dim: int
    trace_span_dim: int


def decomposition_dims(n: int) -> DecompositionDims:
    if n < 2:
        raise UsageError("needs n >= 2")
    return DecompositionDims(
        n=n,
        lambda_split=(n * (n + 1) // 2, 3 * n * (n - 1) // 2),
        torsion_module_dim=2 * n * (n - 2) * (n + 1) if n >= 3 else 0,
        trace_family_dims=(n * n * (n - 1), 6 * n),
        trace_overlap_dim=2 * n,
        trace_span_dim=n * (n * n - n + 4),
    )


@dataclass(frozen=True)
class TraceEmbeddings:
    """Embedded basis vectors of the two trace families, flattened to the
    pair-major coordinate order of Partial1Map."""

    n: int
    family_one: tuple[tuple[Fraction, ...], ...]
    family_two: tuple[tuple[Fraction, ...], ...]

    def all_vectors(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.family_one + self.family_two


def _target_vector_from_values(values, n: int) -> tuple[Fraction, ...]:
    """values[(b, c)] for b < c is a 2n output vector; flatten pair-major."""
    size = 2 * n
    out = []
    for b in range(size):
        for c in range(b + 1, size):
            out.extend(values[(b, c)])
    return tuple(out)


def trace_embedding_vectors(n: int) -> TraceEmbeddings:
    """The two families of identity-contracted trace vectors in the target space.

    Family one, indexed by (p', i < j, k): the R^2 vector e_{p'} tensored
    with identity and symmetrized in the primed slots, against the wedge
    basis (e^i ^ e^j) (x) e_k; the value on (alpha (x) a, beta (x) b) is
    (1/2)(alpha(e_{p'}) beta + beta(e_{p'}) alpha) (x) (a_i b_j - a_j b_i) e_k.

    Family two, indexed by (j' <= k', l', m): the covector e^m tensored with
    identity and alternated, against the symmetric basis of primed forms; the
    value is (e_{j'} . e_{k'})(alpha, beta) e^{l'} (x) (1/2)(a_m b - b_m a).

    The normalizations are the naive symmetrization and alternation constants;
    only the spanned subspace is meaningful downstream.
    """
    if n < 2:
        raise UsageError("needs n >= 2")
    size = 2 * n
    half = Fraction(1, 2)

    def basis_data(a: int) -> tuple[int, int]:
        # returns (row index i, primed index j'), both 0-based
        return a // 2, a % 2

    family_one = []
    for p_prime in range(2):
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    values = {}
                    for b in range(size):
                        ib, jb = basis_data(b)
                        for c in range(b + 1, size):
                            ic, jc = basis_data(c)
                            wedge = (
                                (1 if (ib, ic) == (i, j) else 0)
                                - (1 if (ib, ic) == (j, i) else 0)
                            )
                            vec = [Fraction(0)] * size
                            if wedge:
                                if jb == p_prime:
                                    vec[2 * k + jc] += half * wedge
                                if jc == p_prime:
                                    vec[2 * k + jb] += half * wedge
                            values[(b, c)] = vec
                    family_one.append(_target_vector_from_values(values, n))

    family_two = []
    for j_prime in range(2):
        for k_prime in range(j_prime, 2):
            for l_prime in range(2):
                for m in range(n):
                    values = {}
                    for b in range(size):
                        ib, jb = basis_data(b)
                        for c in range(b + 1, size):
                            ic, jc = basis_data(c)
                            sym = half * (
                                (1 if (jb, jc) == (j_prime, k_prime) else 0)
                                + (1 if (jb, jc) == (k_prime, j_prime) else 0)
                            )
                            vec = [Fraction(0)] * size
                            if sym:
                                if ib == m:
                                    vec[2 * ic + l_prime] += sym * half
                                if ic == m:
                                    vec[2 * ib + l_prime] -= sym * half
                            values[(b, c)] = vec
                    family_two.append(_target_vector_from_values(values, n))

    return TraceEmbeddings(n=n, family_one=tuple(family_one), family_two=tuple(family_two))


def evaluate_two_form(
    t_vec: Sequence[Fraction],
    xi: Sequence[Fraction],
    eta: Sequence[Fraction],
    n: int,
) -> tuple[Fraction, ...]:
    """Value T(xi, eta) in g_{-1} for T given in pair-major coordinates."""
    size = 2 * n
    out = [Fraction(0)] * size
    for b in range(size):
        for c in range(b + 1, size):
            weight = xi[b] * eta[c] - xi[c] * eta[b]
            if weight:
                base = pair_index(b, c, size) * size
                for d in range(size):
                    if t_vec[base + d]:
                        out[d] += weight * t_vec[base + d]
    return tuple(out)


def rank_one_span_test(
    t_vec: Sequence[Fraction], s: int, n: int
) -> bool:
    """The Lemma conclusion for xi = e^{2'} (x) e_s, eta = e^{2'} (x) e_1.

    Both inputs kill e_{1'}; returns True iff T(xi, eta)(e_{1'}) stays inside
    span{e_1, e_s}, i.e. every component along E_k with k outside {1, s}
    vanishes.  Image vectors of partial1 must all return True.
    """
    if not (2 <= s <= n):
        raise UsageError(f"index s must be in 2..{n}")
    size = 2 * n
    xi = [Fraction(0)] * size
    eta = [Fraction(0)] * size
    xi[flat_basis_index(s, 2)] = Fraction(1)
    eta[flat_basis_index(1, 2)] = Fraction(1)
    value = evaluate_two_form(t_vec, xi, eta, n)
    for k in range(1, n + 1):
        if k in (1, s):
            continue
        if value[flat_basis_index(k, 1)] != 0:
            return False
    return True


def act_on_domain(
    spec: GradedAlgebraSpec, a_idx: int, f_vec: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """g_0 action on f in g_{-1}* (x) g_0: (a.f)(w) = [a, f(w)] - f(rho(a) w)."""
    n = spec.n
    size = 2 * n
    dim0 = spec.dim_gzero
    rho_a = spec.action_matrix(a_idx)
    out = [Fraction(0)] * (size * dim0)
    for c in range(size):
        for m in range(dim0):
            coeff = f_vec[c * dim0 + m]
            if coeff:
                for m2, value in enumerate(spec.gzero_bracket(a_idx, m)):
                    if value:
                        out[c * dim0 + m2] += coeff * value
        for d in range(size):
            weight = rho_a[(d, c)]
            if weight:
                for m in range(dim0):
                    if f_vec[d * dim0 + m]:
                        out[c * dim0 + m] -= weight * f_vec[d * dim0 + m]
    return tuple(out)


def act_on_target(
    spec: GradedAlgebraSpec, a_idx: int, t_vec: Sequence[Fraction]
) -> tuple[Fraction, ...]:
    """g_0 action on T in Lambda^2 g_{-1}* (x) g_{-1}:
    (a.T)(w, v) = rho(a) T(w, v) - T(rho(a) w, v) - T(w, rho(a) v)."""
    n = spec.n
    size = 2 * n
    rho_a = spec.action_matrix(a_idx)

    def lookup(b: int, c: int) -> list[Fraction]:
        if b == c:
            return [Fraction(0)] * size
        sign = 1 if b < c else -1
        lo, hi = (b, c) if b < c else (c, b)
        base = pair_index(lo, hi, size) * size
        return [sign * t_vec[base + d] for d in range(size)]

    values = {}
    for b in range(size):
        for c in range(b + 1, size):
            vec = [Fraction(0)] * size
            tv = lookup(b, c)
            for d in range(size):
                if tv[d]:
                    for e in range(size):
                        if rho_a[(e, d)]:
                            vec[e] += rho_a[(e, d)] * tv[d]
            for e in range(size):
                wb = rho_a[(e, b)]
                if wb:
                    tv2 = lookup(e, c)
                    for d in range(size):
                        if tv2[d]:
                            vec[d] -= wb * tv2[d]
                wc = rho_a[(e, c)]
                if wc:
                    tv3 = lookup(b, e)
                    for d in range(size):
                        if tv3[d]:
                            vec[d] -= wc * tv3[d]
            values[(b, c)] = vec
    return _target_vector_from_values(values, n)
