"""Forms over exponent-one purely inseparable extensions.

E = F(p-th roots of a_1,...,a_r) is encoded by its adjoined elements; every
defect over E is computed back down over F through the tensor identity:
adjoining the p-th root of a multiplies the defect of <<a>> tensor phi by
1/p. Iterating over a reduced p-basis of the adjoined set gives

    defect_over(phi, E) = defect(<<b_1,...,b_r>> tensor phi) / p^r.

For extensions adjoining roots of generator variables only, an independent
substitution route exists (rewrite t -> t^p in an isomorphic field and
rediagonalize); the test suite uses it as a cross-check oracle.

The weak Vishik checker compares defects over all single-root extensions it
can reach: necessary-condition filters first (dimension, base defect, norm
field, similarity group), then a seeded witness search, then certificates
(similarity, or common 1-fold quasi-Pfister neighborhood). A verdict of
Unknown is the honest outcome when no filter fires and no certificate
applies; the search is explicitly budget-bounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

from .gen import random_poly
from .groundfield import FieldElem, GroundField, in_pth_powers
from .linalg import FpSpan
from .invariants import (
    Subfield,
    is_quasi_pfister_neighbor,
    is_similar,
    norm_field,
    similarity_group,
    _pbasis_sweep,
)
from .qform import QuasiForm, diagonalize, normalize_entry, quasi_pfister

CERTIFIED = "CertifiedEquivalent"
INEQUIVALENT = "Inequivalent"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Budget:
    """Search budget for witness sampling; seed makes runs reproducible."""

    max_subset: Optional[int] = None
    samples: int = 64
    degree: int = 2
    seed: int = 0xC0FFEE

    def to_json(self) -> dict:
        return {
            "max_subset": self.max_subset,
            "samples": self.samples,
            "degree": self.degree,
            "seed": self.seed,
        }


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class InsepExtension:
    """F with the p-th roots of `adjoined` added; redundant generators are
    permitted and reduced away by the computations."""

    field: GroundField
    adjoined: tuple

    def __post_init__(self):
        object.__setattr__(self, "adjoined", tuple(self.adjoined))
        for a in self.adjoined:
            if not isinstance(a, FieldElem) or a.field != self.field:
                raise ValueError("adjoined elements must lie in the ground field")
            if a.is_zero():
                raise ValueError("cannot adjoin a p-th root of zero")

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.adjoined) + ")"


@dataclass(frozen=True)
class VishikVerdict:
    status: str
    rule: Optional[str] = None
    witness: Optional[FieldElem] = None
    budget: Budget = DEFAULT_BUDGET

    @property
    def seed(self) -> int:
        return self.budget.seed

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rule": self.rule,
            "witness": None if self.witness is None else str(self.witness),
            "seed": self.budget.seed,
            "budget": self.budget.to_json(),
        }


def _adjoined_list(field: GroundField, ext) -> list[FieldElem]:
    if isinstance(ext, InsepExtension):
        if ext.field != field:
            raise ValueError("extension is over a different ground field")
        return list(ext.adjoined)
    adj = list(ext)
    for a in adj:
        if not isinstance(a, FieldElem) or a.field != field:
            raise ValueError("adjoined elements must lie in the ground field")
        if a.is_zero():
            raise ValueError("cannot adjoin a p-th root of zero")
    return adj


def defect_over(form: QuasiForm, ext) -> int:
    """Defect of the form over F(p-th roots of the adjoined elements).

    The adjoined set is first reduced to a p-basis (dependent generators
    extend the field by nothing); the result is the tensor defect divided
    by p^(basis size), which the identity guarantees to be exact. The
    tensor's value span is ranked directly from the raw entry products:
    square-class normalization cannot change any rank and is skipped here.
    """
    adj = _adjoined_list(form.field, ext)
    if len(adj) == 1:
        # hot path (witness searches): no sweep needed for one generator
        if in_pth_powers(adj[0]):
            kept: list[FieldElem] = []
        else:
            xn = normalize_entry(adj[0])
            kept = [xn]
            monoms = [form.field.one()]
            for _ in range(form.field.p - 1):
                monoms.append(monoms[-1] * xn)
    else:
        kept, _, monoms = _pbasis_sweep(form.field, adj)
    if not kept:
        return diagonalize(form).defect
    span = FpSpan(form.field)
    rank = 0
    for m in monoms:
        for e in form.entries:
            if not e.is_zero() and span.add(m * e):
                rank += 1
    scale = form.field.p ** len(kept)
    total = scale * form.dim - rank
    assert total % scale == 0, "tensor defect not divisible by the extension degree"
    return total // scale


def anisotropic_dim_over(form: QuasiForm, ext) -> int:
    return form.dim - defect_over(form, ext)


def substitute_pth_roots(form: QuasiForm, names) -> QuasiForm:
    """Rewrite t -> t^p for each named generator variable.

    The resulting form over the same-named field is the original seen over
    F(p-th roots of those variables), with the new t playing the root; its
    defect over F equals defect_over(form, the variables).
    """
    field = form.field
    idxs = []
    for n in names:
        if n not in field.variables:
            raise ValueError(f"unknown variable {n!r}")
        idxs.append(field.variables.index(n))
    idxset = set(idxs)

    def sub(poly):
        terms = {}
        for mono, c in poly.terms.items():
            new = tuple(e * field.p if i in idxset else e for i, e in enumerate(mono))
            terms[new] = c
        return field.poly(terms)

    entries = [field.fraction(sub(e.num), sub(e.den)) for e in form.entries]
    return QuasiForm(field, entries)


def variable_extension_names(field: GroundField, ext) -> list[str]:
    """The variable names when every adjoined element is a generator
    variable; raises otherwise."""
    names = []
    gens = {str(g): n for n, g in zip(field.variables, field.gens())}
    for a in _adjoined_list(field, ext):
        name = gens.get(str(a))
        if name is None or a != field.var(name):
            raise ValueError(
                "extension is not realizable by a variable substitution: "
                f"{a} is not a generator variable"
            )
        names.append(name)
    return names


def isotropy_implies_normfield_check(form: QuasiForm, a: FieldElem) -> bool:
    """Isotropy over F(p-th root of a) forces a into the norm field; exposed
    as an always-true predicate for property testing."""
    if diagonalize(form).defect != 0:
        raise ValueError("check requires an anisotropic form")
    if in_pth_powers(a):
        raise ValueError("check requires a outside F^p")
    if defect_over(form, [a]) == 0:
        return True
    return norm_field(form).contains(a)


def pfister_slot_isotropy(form: QuasiForm, x: FieldElem) -> bool:
    """Whether form tensor <<x>> is isotropic; for quasi-Pfister neighbors
    this coincides with x lying in the norm field, and both routes are
    computed and compared."""
    if x.is_zero():
        raise ValueError("slot element must be nonzero")
    if is_quasi_pfister_neighbor(form) is None:
        raise ValueError("form is not a quasi-Pfister neighbor")
    tensored = quasi_pfister(form.field, [x]).tensor(form)
    by_defect = diagonalize(tensored).defect > 0
    by_normfield = norm_field(form).contains(x)
    assert by_defect == by_normfield, "slot isotropy disagrees with norm membership"
    return by_defect


def _random_span_element(rng: random.Random, nf: Subfield, degree: int) -> FieldElem:
    field = nf.field
    x = field.zero()
    for m in nf.monomials():
        coeff = random_poly(rng, field, degree=degree, terms=2)
        if coeff.is_zero():
            continue
        x = x + (field.fraction(coeff, field.poly_one()) ** field.p) * m
    return x


def _candidate_witnesses(nf: Subfield, budget: Budget) -> list[FieldElem]:
    """Monomials of the norm field's p-basis, then seeded random norm-field
    elements; anything in F^p adjoins nothing and is dropped."""
    rng = random.Random(budget.seed)
    cands = []
    seen = set()
    for m in nf.monomials():
        if m.is_one():
            continue
        key = str(normalize_entry(m))
        if key not in seen:
            seen.add(key)
            cands.append(m)
    for _ in range(budget.samples):
        x = _random_span_element(rng, nf, budget.degree)
        if x.is_zero() or in_pth_powers(x):
            continue
        # the normalized representative adjoins the same root and has
        # lower-degree powers, so search with it
        xn = normalize_entry(x)
        key = str(xn)
        if key not in seen:
            seen.add(key)
            cands.append(xn)
    return cands


def weak_vishik(a: QuasiForm, b: QuasiForm, budget: Optional[Budget] = None) -> VishikVerdict:
    """Decide equal-defect-over-every-single-root-extension as far as the
    implemented filters and certificates reach.

    Pipeline: dimension filter, base defect filter, norm-field filter,
    similarity-group filter, then the seeded witness search (any defect
    mismatch is a definitive Inequivalent with witness), then certificates:
    similarity, or both forms being same-dimension neighbors of the same
    1-fold quasi-Pfister form. Otherwise Unknown.
    """
    if a.field != b.field:
        raise ValueError("weak Vishik check needs forms over the same field")
    budget = budget or DEFAULT_BUDGET
    if a.dim != b.dim:
        return VishikVerdict(INEQUIVALENT, rule="dim", budget=budget)
    da, db = diagonalize(a), diagonalize(b)
    if da.defect != db.defect:
        return VishikVerdict(INEQUIVALENT, rule="defect", budget=budget)
    an_a, an_b = da.anisotropic, db.anisotropic
    if an_a.dim == 0:
        # both totally split: equal defects over every extension
        return VishikVerdict(CERTIFIED, rule="similarity", budget=budget)
    nf_a, nf_b = norm_field(an_a), norm_field(an_b)
    if not nf_a.same_as(nf_b):
        return VishikVerdict(INEQUIVALENT, rule="norm-field", budget=budget)
    if not similarity_group(an_a).same_as(similarity_group(an_b)):
        return VishikVerdict(INEQUIVALENT, rule="similarity-group", budget=budget)
    for x in _candidate_witnesses(nf_a, budget):
        if defect_over(an_a, [x]) != defect_over(an_b, [x]):
            return VishikVerdict(INEQUIVALENT, witness=normalize_entry(x), budget=budget)
    if is_similar(a, b) is not None:
        return VishikVerdict(CERTIFIED, rule="similarity", budget=budget)
    if (
        nf_a.degree == a.field.p
        and is_quasi_pfister_neighbor(an_a) is not None
        and is_quasi_pfister_neighbor(an_b) is not None
    ):
        return VishikVerdict(CERTIFIED, rule="qpn-of-1fold-pfister", budget=budget)
    return VishikVerdict(UNKNOWN, budget=budget)


def vishik_anisotropic_transfer_check(
    a: QuasiForm, b: QuasiForm, ext, budget: Optional[Budget] = None
) -> bool:
    """Re-run the weak Vishik pipeline on the anisotropic parts over a
    variable-substitution extension; True when no contradiction surfaces.

    The extension must adjoin generator variables only, and the pair must
    not already be Inequivalent over the base field.
    """
    budget = budget or DEFAULT_BUDGET
    names = variable_extension_names(a.field, ext)
    base = weak_vishik(a, b, budget)
    if base.status == INEQUIVALENT:
        raise ValueError("pair is already Inequivalent over the base field")
    sub_a = substitute_pth_roots(a, names)
    sub_b = substitute_pth_roots(b, names)
    an_a = diagonalize(sub_a).anisotropic
    an_b = diagonalize(sub_b).anisotropic
    if an_a.dim != an_b.dim:
        return False
    return weak_vishik(an_a, an_b, budget).status != INEQUIVALENT


def insep_splitting_pattern(form: QuasiForm, budget: Optional[Budget] = None) -> set[int]:
    """Anisotropic dimensions over the searched exponent-one extensions.

    Searched: every subset of the norm-field p-basis up to budget.max_subset,
    plus single-generator extras (pairwise products and sums of basis
    elements and budget.samples seeded random norm-field elements). This is
    a lower approximation of the full splitting pattern: separable and
    purely transcendental extensions cannot shrink the anisotropic part,
    but higher-exponent and function-field extensions are not searched.
    Always contains dim(form); monotone under budget increase.
    """
    if diagonalize(form).defect != 0:
        raise ValueError("splitting pattern needs an anisotropic form")
    budget = budget or DEFAULT_BUDGET
    if form.dim == 0:
        return {0}
    nf = norm_field(form)
    pb = nf.pbasis
    limit = len(pb) if budget.max_subset is None else min(budget.max_subset, len(pb))
    pattern = set()
    for k in range(limit + 1):
        for subset in combinations(pb, k):
            pattern.add(anisotropic_dim_over(form, list(subset)))
    extras = []
    for i in range(len(pb)):
        for j in range(i + 1, len(pb)):
            extras.append(pb[i] * pb[j])
            extras.append(pb[i] + pb[j])
    rng = random.Random(budget.seed)
    for _ in range(budget.samples):
        extras.append(_random_span_element(rng, nf, budget.degree))
    for x in extras:
        if x.is_zero() or in_pth_powers(x):
            continue
        pattern.add(anisotropic_dim_over(form, [x]))
    return pattern


_SPECIAL_QPN_FSP = {
    3: frozenset({1, 2, 3}),
    5: frozenset({1, 2, 3, 4, 5}),
    6: frozenset({1, 2, 3, 4, 6}),
    7: frozenset({1, 2, 4, 7}),
    9: frozenset({1, 2, 3, 4, 5, 8, 9}),
    10: frozenset({1, 2, 3, 4, 5, 6, 8, 10}),
    11: frozenset({1, 2, 3, 4, 6, 7, 8, 11}),
}


def fsp_special_qpn(dim: int) -> frozenset:
    """Tabulated full splitting pattern of a dim-dimensional special
    quasi-Pfister neighbor (p = 2); the oracle the computed patterns are
    compared against."""
    try:
        return _SPECIAL_QPN_FSP[dim]
    except KeyError:
        raise ValueError(f"no tabulated pattern for dimension {dim}") from None


def special_qpn_consistent(andim: int, pattern) -> Optional[bool]:
    """Whether a computed (lower-approximation) pattern is consistent with
    the form being a special quasi-Pfister neighbor of that dimension;
    None when no table row applies."""
    if andim not in _SPECIAL_QPN_FSP:
        return None
    return set(pattern) <= _SPECIAL_QPN_FSP[andim]
