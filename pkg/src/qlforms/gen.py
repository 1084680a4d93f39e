"""Seeded random generation of polynomials, field elements, and forms.

Every function takes an explicit random.Random instance so that test suites
and CLI budgets stay reproducible. Scramblers return the scalar they applied
so callers can check classification output against it.
"""

from __future__ import annotations

import random

from .groundfield import FieldElem, GroundField, Poly
from .linalg import FpSpan
from .qform import QuasiForm, normalize_entry

_SAFETY = 10_000


def random_monomial(rng: random.Random, field: GroundField, degree: int) -> tuple:
    mono = [0] * field.nvars
    if field.nvars:
        for _ in range(rng.randint(0, degree)):
            mono[rng.randrange(field.nvars)] += 1
    return tuple(mono)


def random_poly(rng: random.Random, field: GroundField, degree: int = 2, terms: int = 3) -> Poly:
    acc: dict = {}
    for _ in range(terms):
        mono = random_monomial(rng, field, degree)
        c = rng.randrange(field.p)
        if c:
            acc[mono] = (acc.get(mono, 0) + c) % field.p
    return field.poly(acc)


def random_nonzero_poly(rng: random.Random, field: GroundField, degree: int = 2, terms: int = 3) -> Poly:
    for _ in range(_SAFETY):
        p = random_poly(rng, field, degree, terms)
        if not p.is_zero():
            return p
    raise RuntimeError("failed to generate a nonzero polynomial")


def random_elem(rng: random.Random, field: GroundField, degree: int = 2, terms: int = 3) -> FieldElem:
    num = random_poly(rng, field, degree, terms)
    den = random_nonzero_poly(rng, field, degree, terms)
    return field.fraction(num, den)


def random_nonzero_elem(rng: random.Random, field: GroundField, degree: int = 2, terms: int = 3) -> FieldElem:
    for _ in range(_SAFETY):
        e = random_elem(rng, field, degree, terms)
        if not e.is_zero():
            return e
    raise RuntimeError("failed to generate a nonzero element")


def random_form(rng: random.Random, field: GroundField, dim: int, degree: int = 2, terms: int = 3) -> QuasiForm:
    return QuasiForm(field, [random_nonzero_elem(rng, field, degree, terms) for _ in range(dim)])


def random_anisotropic_form(
    rng: random.Random, field: GroundField, dim: int, degree: int = 2, terms: int = 3
) -> QuasiForm:
    """Entries accepted greedily so the value span has full dimension."""
    if dim > field.p ** field.nvars:
        raise ValueError("anisotropic dimension cannot exceed p^(number of variables)")
    span = FpSpan(field)
    entries = []
    for _ in range(_SAFETY):
        if len(entries) == dim:
            break
        e = normalize_entry(random_nonzero_elem(rng, field, degree, terms))
        if span.add(e):
            entries.append(e)
    if len(entries) < dim:
        raise RuntimeError("failed to generate an anisotropic form")
    return QuasiForm(field, entries, _normalized=True)


def permuted(rng: random.Random, form: QuasiForm) -> QuasiForm:
    entries = list(form.entries)
    rng.shuffle(entries)
    return QuasiForm(form.field, entries, _normalized=True)


def basis_moves(rng: random.Random, form: QuasiForm, count: int, full: bool = False) -> QuasiForm:
    """Replace entries by entry + c^p * other_entry, `count` times.

    With full=False the coefficient c is 1 (safe for span-sensitive
    normal-form searches); full=True draws random nonzero c. Both preserve
    the isometry class.
    """
    entries = list(form.entries)
    if len(entries) < 2:
        return form
    p = form.field.p
    for _ in range(count):
        i, j = rng.sample(range(len(entries)), 2)
        if entries[j].is_zero():
            continue
        c = form.field.one() if not full else random_nonzero_elem(rng, form.field, degree=1, terms=2)
        moved = entries[i] + (c ** p) * entries[j]
        if moved.is_zero():
            continue
        entries[i] = moved
    return QuasiForm(form.field, entries)


def scrambled(
    rng: random.Random,
    form: QuasiForm,
    *,
    full: bool = False,
    moves: int | None = None,
    scalar: bool = True,
) -> tuple[QuasiForm, FieldElem]:
    """Disguise a form: basis moves + permutation + optional global scalar.

    Returns (disguised, c) with disguised isometric to c * form.
    """
    if moves is None:
        moves = 2 * form.dim
    out = basis_moves(rng, form, moves, full=full)
    out = permuted(rng, out)
    c = form.field.one()
    if scalar:
        c = random_nonzero_elem(rng, form.field, degree=1, terms=2)
        out = out.scale(c)
    return out, c
