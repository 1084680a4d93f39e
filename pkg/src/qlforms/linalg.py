"""F^p-linear algebra over Frobenius coordinate vectors.

A field element x corresponds to its coordinate row {lam: g_lam} with
x = sum g_lam^p t^lam; F^p-linear dependence of elements is F-linear
dependence of these rows (the correspondence twists scalars: c^p x has
row c * coords(x), which is why ranks and spans transfer directly).

Two elimination flavors live here:

  * FpSpan — incremental fraction-free echelon over cleared, content-stripped
    Poly rows, kept mutually reduced (RREF shape up to row scaling). This is
    the hot path for rank / greedy bases / membership.
  * FieldElem Gaussian elimination (rref, solve_linear, kernel_basis) and
    ExactProjector for the places where the reduction map itself must be
    linear in the input (fraction-free reduction rescales each vector by an
    input-dependent factor, which would corrupt kernel computations).
"""

from __future__ import annotations

from typing import Callable, Optional

from .groundfield import (
    FieldElem,
    GroundField,
    Poly,
    frobenius_coords,
    grlex_key,
    poly_gcd,
    poly_lcm,
)


def element_from_coords(field: GroundField, coords: dict) -> FieldElem:
    """Rebuild sum g_lam^p * t^lam from a coordinate row."""
    acc = field.zero()
    for lam in sorted(coords, key=grlex_key):
        g = coords[lam]
        if isinstance(g, Poly):
            g = FieldElem.make(g, field.poly_one())
        if not g.is_zero():
            acc = acc + g.frobenius() * field.monomial(lam)
    return acc


def _row_content(row: dict) -> Poly:
    # fewest-term entries first: a constant entry settles it immediately
    polys = sorted(row.values(), key=lambda q: len(q.terms))
    g = polys[0].monic()
    for poly in polys[1:]:
        if g.is_one():
            break
        g = poly_gcd(g, poly)
    return g


def _strip_row(row: dict) -> dict:
    """Divide a Poly row by the gcd of its entries (and drop zeros)."""
    row = {lam: p for lam, p in row.items() if not p.is_zero()}
    if not row:
        return row
    g = _row_content(row)
    if g is not None and not g.is_one():
        row = {lam: p.exact_div(g) for lam, p in row.items()}
    return row


class FpSpan:
    """Incrementally built span over F^p of field elements.

    Rows are cleared of denominators, content-stripped, and kept mutually
    reduced: each row is zero at every other row's pivot column. Pivot
    choice (graded-lex smallest support column) is deterministic, so the
    normalized rows are the unique reduced echelon basis of the span.
    """

    def __init__(self, field: GroundField, elems=()):
        self.field = field
        self.rows: list[tuple[tuple, dict]] = []  # (pivot_lam, {lam: Poly})
        self.members: list[FieldElem] = []
        for e in elems:
            self.add(e)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _cleared_row(self, x: FieldElem) -> dict:
        coords = frobenius_coords(x)
        if not coords:
            return {}
        if all(g.den.is_one() for g in coords.values()):
            return _strip_row({lam: g.num for lam, g in coords.items()})
        dens = [g.den for g in coords.values()]
        lcm = dens[0]
        for d in dens[1:]:
            lcm = poly_lcm(lcm, d)
        row = {}
        for lam, g in coords.items():
            row[lam] = g.num * lcm.exact_div(g.den)
        return _strip_row(row)

    def _reduce(self, row: dict) -> dict:
        changed = False
        for pivot, stored in self.rows:
            c = row.get(pivot)
            if c is None or c.is_zero():
                continue
            changed = True
            lead = stored[pivot]
            new = {}
            for lam in set(row) | set(stored):
                a = row.get(lam)
                b = stored.get(lam)
                v = (lead * a if a is not None else None)
                w = (c * b if b is not None else None)
                if v is None:
                    entry = -w
                elif w is None:
                    entry = v
                else:
                    entry = v - w
                if not entry.is_zero():
                    new[lam] = entry
            row = new
            if not row:
                return row
        # one content strip at the end instead of per elimination
        return _strip_row(row) if changed else row

    def add(self, x: FieldElem) -> bool:
        """Add x to the span; True iff the rank grew."""
        row = self._reduce(self._cleared_row(x))
        if not row:
            return False
        pivot = min(row, key=grlex_key)
        # keep the stored rows reduced at the new pivot
        lead = row[pivot]
        for i, (piv_i, stored) in enumerate(self.rows):
            c = stored.get(pivot)
            if c is None or c.is_zero():
                continue
            new = {}
            for lam in set(stored) | set(row):
                a = stored.get(lam)
                b = row.get(lam)
                v = (lead * a if a is not None else None)
                w = (c * b if b is not None else None)
                if v is None:
                    entry = -w
                elif w is None:
                    entry = v
                else:
                    entry = v - w
                if not entry.is_zero():
                    new[lam] = entry
            self.rows[i] = (piv_i, _strip_row(new))
        self.rows.append((pivot, row))
        self.members.append(x)
        return True

    def contains(self, x: FieldElem) -> bool:
        return not self._reduce(self._cleared_row(x))

    def rref_elements(self) -> list[FieldElem]:
        """The canonical basis: elements rebuilt from the pivot-normalized
        reduced echelon rows, in pivot order. Unique for a given span."""
        out = []
        for pivot, row in sorted(self.rows, key=lambda pr: grlex_key(pr[0])):
            lead = row[pivot]
            coords = {lam: FieldElem.make(p, lead) for lam, p in row.items()}
            out.append(element_from_coords(self.field, coords))
        return out


def fp_rank(elems) -> tuple[int, list[int]]:
    """Rank over F^p of the span of elems, with the greedy left-to-right
    maximal independent sublist's indices."""
    elems = list(elems)
    if not elems:
        return 0, []
    span = FpSpan(elems[0].field)
    indices = [i for i, e in enumerate(elems) if span.add(e)]
    return span.rank, indices


def fp_solve(target: FieldElem, basis) -> Optional[list[FieldElem]]:
    """Solve target = sum_i c_i^p * basis_i over F^p.

    Returns the p-th roots x_i (so c_i = x_i^p), with free variables set to
    zero; None when target is outside the span. The solution is unique when
    the basis is F^p-independent.
    """
    basis = list(basis)
    field = target.field
    cols = [frobenius_coords(b) for b in basis]
    tc = frobenius_coords(target)
    support = set(tc)
    for c in cols:
        support |= set(c)
    support = sorted(support, key=grlex_key)
    zero = field.zero()
    matrix = [[col.get(lam, zero) for col in cols] for lam in support]
    rhs = [tc.get(lam, zero) for lam in support]
    return solve_linear(field, matrix, rhs)


# -- exact (FieldElem) Gaussian elimination ----------------------------------


def rref(field: GroundField, matrix: list[list[FieldElem]]) -> tuple[list[list[FieldElem]], list[int]]:
    """Reduced row echelon form (in a copy) and the pivot column list."""
    m = [row[:] for row in matrix]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_linear(field: GroundField, matrix: list[list[FieldElem]], rhs: list[FieldElem]) -> Optional[list[FieldElem]]:
    """Solve matrix @ x = rhs exactly; free variables zero; None if unsolvable."""
    if not matrix:
        return [] if all(r.is_zero() for r in rhs) else None
    aug = [row[:] + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    reduced, pivots = rref(field, aug)
    if ncols in pivots:  # pivot in the rhs column: inconsistent
        return None
    sol = [field.zero()] * ncols
    for row, c in zip(reduced, pivots):
        sol[c] = row[ncols]
    return sol


def kernel_basis(field: GroundField, matrix: list[list[FieldElem]]) -> list[list[FieldElem]]:
    """Basis of the right kernel, one vector per free column, deterministic."""
    if not matrix or not matrix[0]:
        return []
    ncols = len(matrix[0])
    reduced, pivots = rref(field, matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [field.zero()] * ncols
        vec[free] = field.one()
        for row, c in zip(reduced, pivots):
            vec[c] = -row[free]
        basis.append(vec)
    return basis


class ExactProjector:
    """Exact reduction modulo the F-row-space of given coordinate rows.

    The residual map is linear in the input vector — unlike fraction-free
    reduction, which rescales by an input-dependent factor. Downstream
    kernel computations (similarity groups, radical harvests) require this.
    """

    def __init__(self, field: GroundField, coord_rows: list[dict]):
        self.field = field
        self.rows: list[tuple[tuple, dict]] = []  # (pivot, {lam: FieldElem}), pivot entry = 1
        for coords in coord_rows:
            self._insert(dict(coords))

    def _insert(self, row: dict):
        row = self.residual(row)
        row = {lam: v for lam, v in row.items() if not v.is_zero()}
        if not row:
            return
        pivot = min(row, key=grlex_key)
        inv = row[pivot].inverse()
        row = {lam: v * inv for lam, v in row.items()}
        for i, (piv_i, stored) in enumerate(self.rows):
            c = stored.get(pivot)
            if c is None or c.is_zero():
                continue
            new = dict(stored)
            for lam, v in row.items():
                cur = new.get(lam)
                val = (cur - c * v) if cur is not None else -(c * v)
                if val.is_zero():
                    new.pop(lam, None)
                else:
                    new[lam] = val
            self.rows[i] = (piv_i, new)
        self.rows.append((pivot, row))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def residual(self, coords: dict) -> dict:
        """coords minus its projection onto the row space; exact and linear."""
        v = {lam: c for lam, c in coords.items() if not c.is_zero()}
        for pivot, row in self.rows:
            c = v.get(pivot)
            if c is None or c.is_zero():
                continue
            for lam, w in row.items():
                cur = v.get(lam)
                val = (cur - c * w) if cur is not None else -(c * w)
                if val.is_zero():
                    v.pop(lam, None)
                else:
                    v[lam] = val
        return v

    def contains(self, coords: dict) -> bool:
        return not self.residual(coords)
