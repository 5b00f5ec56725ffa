"""Exact linear algebra over the ground field.

Vectors and matrices hold Scalar entries; everything is done by Gaussian
elimination with exact arithmetic, so ranks, nullspaces and membership tests
are certificates, not approximations.  Matrices are lists of row lists; a
handful of solver-style helpers cover what the module layer needs: rank,
nullspace, span membership, and intersecting a span with a coordinate
subspace.
"""

from __future__ import annotations

from .scalars import Scalar, ScalarField


def _complexity(s: Scalar) -> int:
    # pivot preference: fewer terms keeps later rows small
    return len(s.num.coeffs) + len(s.den.coeffs)


def row_reduce(rows, field: ScalarField):
    """Return (rref_rows, pivot_columns) of a copy of ``rows``."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                if best is None or _complexity(mat[i][c]) < _complexity(mat[best][c]):
                    best = i
        if best is None:
            continue
        mat[r], mat[best] = mat[best], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows, field: ScalarField) -> int:
    reduced, pivots = row_reduce(rows, field)
    return len(pivots)


def nullspace(rows, ncols: int, field: ScalarField):
    """Basis of {x : rows @ x = 0} as a list of coordinate vectors."""
    reduced, pivots = row_reduce(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for row, pc in zip(reduced, pivots):
            v = row[fc]
            if not v.is_zero():
                vec[pc] = -v
        basis.append(vec)
    return basis


class RowSpace:
    """Incrementally maintained row space in reduced echelon form.

    ``add`` returns True when the vector enlarged the space; ``contains``
    is an exact membership test.
    """

    def __init__(self, ncols: int, field: ScalarField):
        self.ncols = ncols
        self.field = field
        self.rows = []       # reduced rows
        self.pivots = []     # pivot column per row

    def _eliminate(self, vec):
        vec = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            v = vec[pc]
            if not v.is_zero():
                vec = [a - v * b for a, b in zip(vec, row)]
        return vec

    def add(self, vec) -> bool:
        vec = self._eliminate(vec)
        for c in range(self.ncols):
            if not vec[c].is_zero():
                inv = vec[c].inverse()
                vec = [x * inv for x in vec]
                for i, row in enumerate(self.rows):
                    v = row[c]
                    if not v.is_zero():
                        self.rows[i] = [a - v * b for a, b in zip(row, vec)]
                # keep rows ordered by pivot column
                pos = 0
                while pos < len(self.pivots) and self.pivots[pos] < c:
                    pos += 1
                self.rows.insert(pos, vec)
                self.pivots.insert(pos, c)
                return True
        return False

    def contains(self, vec) -> bool:
        return all(x.is_zero() for x in self._eliminate(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


def span_dimension(vectors, ncols, field) -> int:
    space = RowSpace(ncols, field)
    for v in vectors:
        space.add(v)
    return space.rank


def intersect_span_with_coordinates(vectors, keep_cols, ncols, field):
    """Basis of span(vectors) ∩ {x : x[c] = 0 for c not in keep_cols}.

    Solves for combinations of the given vectors whose coordinates vanish
    outside ``keep_cols``; returns the combined vectors.
    """
    keep = set(keep_cols)
    drop = [c for c in range(ncols) if c not in keep]
    if not vectors:
        return []
    if all(all(vec[c].is_zero() for c in drop) for vec in vectors):
        return [list(v) for v in vectors]
    # rows of the constraint system: one per dropped coordinate
    rows = [[vec[c] for vec in vectors] for c in drop]
    combos = nullspace(rows, len(vectors), field)
    out = []
    for combo in combos:
        acc = [field.zero] * ncols
        for coeff, vec in zip(combo, vectors):
            if not coeff.is_zero():
                acc = [a + coeff * b for a, b in zip(acc, vec)]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# rank certificates by exact rational evaluation
#
# Substituting q -> c (an exact rational with no denominator vanishing) is a
# ring homomorphism on the subring of scalars defined at c, so the rank of
# the evaluated matrix is a lower bound for the true rank.  When that lower
# bound meets the trivial upper bound min(rows, cols) -- or an expected
# value that is also an upper bound -- the rank is certified exactly, with
# all arithmetic still exact (coefficients in Q(zeta_N)).

_EVAL_POINTS = (2, 3, 5, 7, -2)


def _cyclo_rank(rows) -> int:
    mat = [list(r) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(r + 1, len(mat)):
            v = mat[i][c]
            if not v.is_zero():
                mat[i] = [a - v * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def evaluated_rank_lower_bound(rows, field: ScalarField) -> int:
    """max over a few exact rational points of rank(rows | q=c)."""
    from .scalars import RAT, ScalarDivisionError
    best = 0
    for point in _EVAL_POINTS:
        c = RAT(point)
        try:
            ev = [[x.evaluate_at(c) for x in row] for row in rows]
        except ScalarDivisionError:
            continue
        best = max(best, _cyclo_rank(ev))
        if best == min(len(rows), len(rows[0]) if rows else 0):
            break
    return best


def certified_full_rank(rows, field: ScalarField) -> bool:
    """True iff the rows are linearly independent (certificate, exact).

    Evaluation rank is a lower bound; reaching len(rows) certifies
    independence.  Falls back to symbolic elimination when no evaluation
    point certifies it (which also settles genuine dependence).
    """
    if not rows:
        return True
    if evaluated_rank_lower_bound(rows, field) == len(rows):
        return True
    return rank(rows, field) == len(rows)
