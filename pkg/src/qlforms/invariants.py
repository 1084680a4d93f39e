"""Field-theoretic invariants of quasilinear forms.

Norm field (the extension of F^p generated by entry ratios), norm degree and
norm form, minimality, quasi-Pfister neighbor codimension, the similarity
factor group, and division by it.

A finite extension E of F^p inside F is represented by a reduced p-basis
(b_1,...,b_r): each b_i lies outside the subfield generated by the earlier
ones, hence [E : F^p] = p^r and the p^r products b^e, e in {0..p-1}^r, are
an F^p-vector space basis of E.
"""

from __future__ import annotations

from typing import Optional

from .groundfield import FieldElem, GroundField, frobenius_coords
from .linalg import ExactProjector, FpSpan, kernel_basis
from .qform import QuasiForm, diagonalize, is_isometric, normalize_entry, quasi_pfister


def _pbasis_sweep(field: GroundField, elems):
    """Greedy reduced p-basis of F^p(elems).

    Returns (kept, span, monomials): the accepted generators (normalized
    square-class representatives, which generate the same extension), the
    FpSpan of all basis monomials, and the monomials themselves.
    """
    span = FpSpan(field)
    span.add(field.one())
    monoms = [field.one()]
    kept: list[FieldElem] = []
    for e in elems:
        if e.is_zero():
            continue
        g = normalize_entry(e)
        if g.is_one() or span.contains(g):
            continue
        kept.append(g)
        snapshot = list(monoms)
        gj = field.one()
        for _ in range(field.p - 1):
            gj = gj * g
            for m in snapshot:
                nm = m * gj
                span.add(nm)
                monoms.append(nm)
        assert span.rank == len(monoms), "generators lost p-independence"
    return kept, span, monoms


class Subfield:
    """F^p(b_1,...,b_r) inside F, with membership testing."""

    __slots__ = ("field", "pbasis", "_span", "_monoms")

    def __init__(self, field: GroundField, generators=()):
        kept, span, monoms = _pbasis_sweep(field, generators)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "pbasis", tuple(kept))
        object.__setattr__(self, "_span", span)
        object.__setattr__(self, "_monoms", monoms)

    def __setattr__(self, name, value):
        raise AttributeError("Subfield is immutable")

    @property
    def degree(self) -> int:
        return self.field.p ** len(self.pbasis)

    def contains(self, x: FieldElem) -> bool:
        if x.is_zero():
            return True
        return self._span.contains(x)

    def monomials(self) -> list[FieldElem]:
        """F^p-vector space basis: all products of p-basis powers."""
        return list(self._monoms)

    def same_as(self, other: "Subfield") -> bool:
        if self.field != other.field or self.degree != other.degree:
            return False
        return all(self.contains(b) for b in other.pbasis)

    def __eq__(self, other):
        return (
            isinstance(other, Subfield)
            and self.field == other.field
            and self.pbasis == other.pbasis
        )

    def __hash__(self):
        return hash((self.field, self.pbasis))

    def __str__(self):
        base = f"F^{self.field.p}"
        if not self.pbasis:
            return base
        return base + "(" + ",".join(str(b) for b in self.pbasis) + ")"

    def __repr__(self):
        return f"Subfield({self})"


def is_p_independent(field: GroundField, elems) -> bool:
    """True iff the elements are p-independent over F^p (none lies in the
    subfield generated by the others; tested via pfister-form defect)."""
    elems = list(elems)
    if any(e.is_zero() for e in elems):
        return False
    form = quasi_pfister(field, elems)
    return diagonalize(form).defect == 0


def norm_field(form: QuasiForm) -> Subfield:
    """F^p extended by the ratios a_i/a_0, a_0 the first nonzero entry."""
    nz = [e for e in form.entries if not e.is_zero()]
    if not nz:
        raise ValueError("norm field needs a form with a nonzero entry")
    a0 = nz[0]
    return Subfield(form.field, [e / a0 for e in nz[1:]])


def norm_degree(form: QuasiForm) -> int:
    return norm_field(form).degree


def norm_form(form: QuasiForm) -> QuasiForm:
    """The quasi-Pfister form generated by a norm-field p-basis."""
    return quasi_pfister(form.field, norm_field(form).pbasis)


def is_minimal(form: QuasiForm) -> bool:
    """Anisotropic with the largest possible norm degree p^(dim-1)."""
    if form.dim == 0 or diagonalize(form).defect != 0:
        return False
    return norm_degree(form) == form.field.p ** (form.dim - 1)


def is_quasi_pfister_neighbor(form: QuasiForm) -> Optional[int]:
    """Codimension inside the norm form, or None when the form is too small.

    An anisotropic form is a neighbor of its norm form iff p * dim exceeds
    the norm degree; the codimension is then norm_degree - dim.
    """
    if diagonalize(form).defect != 0:
        raise ValueError("quasi-Pfister neighbor test needs an anisotropic form")
    nd = norm_degree(form)
    if form.field.p * form.dim > nd:
        return nd - form.dim
    return None


def _transporter(src_basis, dst_basis) -> list[FieldElem]:
    """F^p-basis of {c : c * s in span(dst) for all s in src}.

    Requires 1 in the F^p-span of src so that candidates necessarily lie in
    span(dst); c is parametrized as sum y_j^p dst_j, and each constraint
    row is exactly linear in the y_j (coords(y^p u) = y * coords(u)).
    """
    field = dst_basis[0].field
    proj = ExactProjector(field, [frobenius_coords(d) for d in dst_basis])
    zero = field.zero()
    seen = set()
    rows = []
    for s in src_basis:
        residuals = [proj.residual(frobenius_coords(d * s)) for d in dst_basis]
        support = set()
        for res in residuals:
            support |= set(res)
        for lam in support:
            row = tuple(res.get(lam, zero) for res in residuals)
            if any(not v.is_zero() for v in row) and row not in seen:
                seen.add(row)
                rows.append(list(row))
    if not rows:
        kernel = [[field.one() if i == j else zero for j in range(len(dst_basis))]
                  for i in range(len(dst_basis))]
    else:
        kernel = kernel_basis(field, rows)
    out = []
    for vec in kernel:
        c = field.zero()
        for y, d in zip(vec, dst_basis):
            if not y.is_zero():
                c = c + (y ** field.p) * d
        out.append(c)
    return out


def similarity_group(form: QuasiForm) -> Subfield:
    """The field E = {c : c * form isometric to form} united with 0.

    Input must be anisotropic. E is a finite extension of F^p inside F and
    is invariant under scaling the form.
    """
    diag = diagonalize(form)
    if diag.defect != 0:
        raise ValueError("similarity group needs an anisotropic form")
    if form.dim == 0:
        return Subfield(form.field, ())
    a0 = form.entries[0]
    basis = [normalize_entry(e / a0) for e in form.entries]
    cands = _transporter(basis, basis)
    group = Subfield(form.field, cands)
    assert group.degree == len(cands), "similarity factors do not form a field"
    return group


def is_similar(a: QuasiForm, b: QuasiForm) -> Optional[FieldElem]:
    """Scalar c with a isometric to c * b (canonical square-class
    representative), or None when the forms are not similar."""
    if a.field != b.field:
        raise ValueError("similarity test needs forms over the same field")
    if a.dim != b.dim:
        return None
    da = diagonalize(a)
    db = diagonalize(b)
    if da.defect != db.defect:
        return None
    an_a, an_b = da.anisotropic, db.anisotropic
    if an_a.dim == 0:
        return a.field.one()
    e = an_b.entries[0]
    src = [normalize_entry(x / e) for x in an_b.entries]
    cands = [c for c in _transporter(src, list(an_a.entries)) if not c.is_zero()]
    if not cands:
        return None
    # c * (1/e) b_an has the value span of a_an, so a is isometric to (c/e) b
    return min((normalize_entry(c / e) for c in cands), key=str)


def divide_by_similarity(form: QuasiForm) -> tuple[QuasiForm, QuasiForm, FieldElem]:
    """Factor an anisotropic form as scalar * (pfister tensor cofactor).

    The pfister factor is generated by a p-basis of the similarity group E;
    the cofactor entries are a basis of the value span as an E-module,
    found in one greedy sweep. Returns (pfister, cofactor, scalar) with
    form isometric to scalar * (pfister tensor cofactor) and the cofactor
    representing 1.
    """
    group = similarity_group(form)
    pfister = quasi_pfister(form.field, group.pbasis)
    span = FpSpan(form.field)
    kept: list[FieldElem] = []
    for e in form.entries:
        if span.contains(e):
            continue
        kept.append(e)
        for s in pfister.entries:
            span.add(s * e)
    assert pfister.dim * len(kept) == form.dim, "similarity division size mismatch"
    scalar = kept[0]
    cofactor = QuasiForm(form.field, [k / scalar for k in kept])
    assert is_isometric(pfister.tensor(cofactor).scale(scalar), form)
    return pfister, cofactor, scalar
