"""Diagonal quasilinear p-forms over rational function fields.

A form <a_1,...,a_n> evaluates as sum a_i x_i^p. Its value set D(phi) is the
F^p-span of the entries, and every isometry question reduces to comparing
dimension and value span. Entries are stored as canonical square-class
representatives: the zero element, or the unique monic p-th-power-free
polynomial in a * (F^*)^p. Construction normalizes, so forms whose entry
lists differ by nonzero p-th power factors compare equal entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groundfield import FieldElem, GroundField, frobenius_coords, poly_gcd
from .linalg import FpSpan, fp_rank, fp_solve


def normalize_entry(x: FieldElem) -> FieldElem:
    """Canonical representative of the square class x * (F^*)^p.

    Clears the denominator (d^p-scaling), strips the largest p-th power
    polynomial factor, and scales monic (constants in F_p are their own
    p-th powers). Idempotent; zero maps to zero.
    """
    field = x.field
    if x.is_zero():
        return field.zero()
    p = field.p
    big = x.num * x.den ** (p - 1)
    coords = frobenius_coords(FieldElem._raw(big, field.poly_one()))
    g = None
    for part in coords.values():
        g = part.num.monic() if g is None else poly_gcd(g, part.num)
        if g.is_one():
            break
    if g is not None and not g.is_one():
        big = big.exact_div(g ** p)
    return FieldElem._raw(big.monic(), field.poly_one())


class QuasiForm:
    """Immutable diagonal form over a GroundField, entries normalized."""

    __slots__ = ("field", "entries")

    def __init__(self, field: GroundField, entries, _normalized=False):
        entries = tuple(entries)
        for e in entries:
            if not isinstance(e, FieldElem) or e.field != field:
                raise ValueError("form entries must be elements of the given field")
        if not _normalized:
            entries = tuple(normalize_entry(e) for e in entries)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QuasiForm is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def orth_sum(self, other: "QuasiForm") -> "QuasiForm":
        if other.field != self.field:
            raise ValueError("orthogonal sum needs forms over the same field")
        return QuasiForm(self.field, self.entries + other.entries, _normalized=True)

    def tensor(self, other: "QuasiForm") -> "QuasiForm":
        if other.field != self.field:
            raise ValueError("tensor product needs forms over the same field")
        prods = [a * b for a in self.entries for b in other.entries]
        return QuasiForm(self.field, prods)

    def scale(self, c: FieldElem) -> "QuasiForm":
        if c.is_zero():
            raise ValueError("cannot scale a form by zero")
        return QuasiForm(self.field, [c * e for e in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, QuasiForm)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __str__(self):
        return "<" + ",".join(str(e) for e in self.entries) + ">"

    def __repr__(self):
        return f"QuasiForm({self.field!r}, {self})"


def quasi_pfister(field: GroundField, slots) -> QuasiForm:
    """<<a_1,...,a_r>> = tensor of the <1, a_i, ..., a_i^{p-1}>; <1> for r=0."""
    form = QuasiForm(field, [field.one()])
    for a in slots:
        if not isinstance(a, FieldElem) or a.field != field:
            raise ValueError("pfister slots must be elements of the given field")
        if a.is_zero():
            raise ValueError("pfister slots must be nonzero")
        factor = QuasiForm(field, [a ** k for k in range(field.p)])
        form = factor.tensor(form)  # entries ordered 1, a_1, ..., with later slots outermost
    return form


@dataclass(frozen=True)
class Diagonalization:
    """Result of splitting a form into anisotropic part plus zero slots."""

    form: QuasiForm
    rank: int
    defect: int
    anisotropic: QuasiForm


def diagonalize(form: QuasiForm) -> Diagonalization:
    """Greedy F^p-basis of the value span; defect = dim - rank."""
    rank, idx = fp_rank([e for e in form.entries if not e.is_zero()])
    nonzero = [e for e in form.entries if not e.is_zero()]
    an = QuasiForm(form.field, [nonzero[i] for i in idx], _normalized=True)
    return Diagonalization(form=form, rank=rank, defect=form.dim - rank, anisotropic=an)


def defect(form: QuasiForm) -> int:
    return diagonalize(form).defect


def is_anisotropic(form: QuasiForm) -> bool:
    return diagonalize(form).defect == 0


def represents(form: QuasiForm, value: FieldElem) -> Optional[list[FieldElem]]:
    """Witness x with form(x) = value (entrywise p-th roots), or None.

    Zero is represented by the zero vector; a form of dimension 0
    represents only zero.
    """
    if value.field != form.field:
        raise ValueError("value must lie in the form's field")
    if value.is_zero():
        return [form.field.zero()] * form.dim
    return fp_solve(value, form.entries)


def value_span(form: QuasiForm) -> FpSpan:
    span = FpSpan(form.field)
    for e in form.entries:
        if not e.is_zero():
            span.add(e)
    return span


def is_isometric(a: QuasiForm, b: QuasiForm) -> bool:
    """Equal dimension and equal value span."""
    if a.field != b.field:
        raise ValueError("isometry needs forms over the same field")
    if a.dim != b.dim:
        return False
    sa = value_span(a)
    sb = value_span(b)
    if sa.rank != sb.rank:
        return False
    # equal ranks + containment one way forces equal spans
    return all(sa.contains(e) for e in b.entries)


def is_subform(a: QuasiForm, b: QuasiForm) -> bool:
    """True iff b is isometric to a orth-sum some form.

    Holds iff D(a) is contained in D(b) and the defect of a is at most the
    defect of b; the dimension-0 form is a subform of everything.
    """
    if a.field != b.field:
        raise ValueError("subform test needs forms over the same field")
    if a.dim > b.dim:
        return False
    sb = value_span(b)
    if not all(sb.contains(e) for e in a.entries):
        return False
    da = diagonalize(a)
    db = diagonalize(b)
    return da.defect <= db.defect
