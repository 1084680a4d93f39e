"""Exact arithmetic in F = F_p(t_1,...,t_m) and Frobenius-coordinate plumbing.

Representation invariants:
  * Poly: sparse map exponent-tuple -> coefficient in {1,...,p-1}; no zero
    coefficients stored; every exponent tuple has length m (the number of
    declared variables).
  * FieldElem: reduced fraction num/den of Polys with den != 0,
    gcd(num, den) = 1 and den monic under graded-lex order (declared
    variable order); the zero element is (0, 1).
  * Frobenius coordinates of f: the unique map lam -> g_lam for
    lam in {0,...,p-1}^m with f = sum_lam g_lam^p * t^lam.

All values are immutable after construction and all operations are pure,
so concurrent readers need no coordination.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional

Mono = tuple  # exponent vector, length = number of field variables

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

DEFAULT_TERM_LIMIT = 10**6


class QlformsError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(QlformsError):
    """A polynomial outgrew the field's configured term budget."""


def grlex_key(mono: Mono):
    """Sort key realizing graded-lex order: total degree first, then lex."""
    return (sum(mono), mono)


class GroundField:
    """The rational function field F_p(t_1,...,t_m) with a fixed variable order.

    The variable order is part of the field's identity: it defines the
    graded-lex monomial order and with it every canonical choice downstream
    (monic denominators, pivoting, rendering).
    """

    __slots__ = ("p", "variables", "term_limit")

    def __init__(self, p: int, variables: Iterable[str] = (), term_limit: int = DEFAULT_TERM_LIMIT):
        if p not in _SMALL_PRIMES:
            raise ValueError(f"p must be a prime with 2 <= p <= 31, got {p!r}")
        variables = tuple(variables)
        if len(variables) > 8:
            raise ValueError("at most 8 variables are supported")
        seen = set()
        for v in variables:
            if not isinstance(v, str) or not v.isidentifier():
                raise ValueError(f"invalid variable name {v!r}")
            if v in seen:
                raise ValueError(f"duplicate variable {v!r}")
            seen.add(v)
        self.p = p
        self.variables = variables
        self.term_limit = term_limit

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroundField)
            and self.p == other.p
            and self.variables == other.variables
        )

    def __hash__(self) -> int:
        return hash((self.p, self.variables))

    def __repr__(self) -> str:
        if self.variables:
            return f"F_{self.p}({','.join(self.variables)})"
        return f"F_{self.p}"

    # -- constructors ------------------------------------------------------

    def poly(self, terms) -> "Poly":
        """Build a Poly from ``int`` or ``{mono: coeff}``; validates and cleans."""
        if isinstance(terms, int):
            c = terms % self.p
            return Poly._make(self, {self._zero_mono(): c} if c else {})
        clean = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono!r} for {self!r}")
            c = int(c) % self.p
            if c:
                clean[mono] = c
        return Poly._make(self, clean)

    def poly_zero(self) -> "Poly":
        return Poly._make(self, {})

    def poly_one(self) -> "Poly":
        return Poly._make(self, {self._zero_mono(): 1})

    def zero(self) -> "FieldElem":
        return FieldElem._raw(self.poly_zero(), self.poly_one())

    def one(self) -> "FieldElem":
        return FieldElem._raw(self.poly_one(), self.poly_one())

    def const(self, c: int) -> "FieldElem":
        return FieldElem._raw(self.poly(c), self.poly_one())

    def var(self, name: str) -> "FieldElem":
        i = self.variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return FieldElem._raw(self.poly({mono: 1}), self.poly_one())

    def gens(self) -> list["FieldElem"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, lam: Mono) -> "FieldElem":
        """The monomial t^lam as a field element."""
        lam = tuple(int(e) for e in lam)
        if len(lam) != self.nvars or any(e < 0 for e in lam):
            raise ValueError(f"bad exponent vector {lam!r}")
        return FieldElem._raw(self.poly({lam: 1}), self.poly_one())

    def fraction(self, num: "Poly", den: "Poly") -> "FieldElem":
        return FieldElem.make(num, den)

    def _zero_mono(self) -> Mono:
        return (0,) * self.nvars


class Poly:
    """Sparse multivariate polynomial over F_p.

    Internal constructor ``_make`` assumes a clean terms dict (no zero
    coefficients, valid exponent tuples); use ``GroundField.poly`` otherwise.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: GroundField, terms: dict):
        self.field = field
        self.terms = terms
        self._hash = None

    @classmethod
    def _make(cls, field: GroundField, terms: dict) -> "Poly":
        if len(terms) > field.term_limit:
            raise ResourceLimitError(
                f"polynomial with {len(terms)} terms exceeds the limit {field.term_limit}"
            )
        return cls(field, terms)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.field._zero_mono(): 1}

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def leading(self) -> tuple[Mono, int]:
        """Leading (monomial, coefficient) under graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def deg_in(self, v: int) -> int:
        """Degree in variable index v; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(m[v] for m in self.terms)

    # -- arithmetic --------------------------------------------------------

    def _same_field(self, other: "Poly"):
        if self.field != other.field:
            raise ValueError("polynomials from different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        p = self.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = (res.get(m, 0) + c) % p
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Poly._make(self.field, res)

    def __neg__(self) -> "Poly":
        p = self.field.p
        if p == 2:
            return self
        return Poly._make(self.field, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._same_field(other)
        p = self.field.p
        if not self.terms or not other.terms:
            return Poly._make(self.field, {})
        if len(other.terms) == 1 and len(self.terms) > 1:
            return other * self
        if len(self.terms) == 1:
            # monomial factor: a pure shift-and-scale, no collisions possible
            ((m1, c1),) = self.terms.items()
            if not any(m1):
                return other.scale(c1)
            return Poly._make(
                self.field,
                {
                    tuple(a + b for a, b in zip(m1, m2)): (c1 * c2) % p
                    for m2, c2 in other.terms.items()
                },
            )
        res: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = (res.get(m, 0) + c1 * c2) % p
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Poly._make(self.field, res)

    def scale(self, c: int) -> "Poly":
        c %= self.field.p
        if c == 0:
            return Poly._make(self.field, {})
        if c == 1:
            return self
        p = self.field.p
        return Poly._make(self.field, {m: (k * c) % p for m, k in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.field.poly_one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def frobenius(self) -> "Poly":
        """The p-th power, computed by exponent scaling (coefficients are fixed
        by Fermat: c^p = c in F_p)."""
        p = self.field.p
        return Poly._make(self.field, {tuple(e * p for e in m): c for m, c in self.terms.items()})

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        p = self.field.p
        return self.scale(pow(lc, p - 2, p))

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Exact polynomial division; raises ValueError if not divisible."""
        self._same_field(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return self
        p = self.field.p
        if divisor.is_constant():
            ((_, dc),) = divisor.terms.items()
            return self.scale(pow(dc, p - 2, p))
        occurring = [
            i
            for i in range(self.field.nvars)
            if self.deg_in(i) > 0 or divisor.deg_in(i) > 0
        ]
        if len(occurring) == 1:
            return _univariate_exact_div(self, divisor, occurring[0])
        dm, dc = divisor.leading()
        dc_inv = pow(dc, p - 2, p)
        quot: dict = {}
        rem = dict(self.terms)
        while rem:
            lm = max(rem, key=grlex_key)
            qm = tuple(a - b for a, b in zip(lm, dm))
            if any(e < 0 for e in qm):
                raise ValueError("not an exact divisor")
            qc = rem[lm] * dc_inv % p
            quot[qm] = qc
            for m2, c2 in divisor.terms.items():
                m = tuple(a + b for a, b in zip(qm, m2))
                s = (rem.get(m, 0) - qc * c2) % p
                if s:
                    rem[m] = s
                elif m in rem:
                    del rem[m]
        return Poly._make(self.field, quot)

    # -- structure ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return f"Poly({poly_str(self)})"


def _coeff_in(a: Poly, v: int, k: int) -> Poly:
    """Coefficient of t_v^k in a, as a Poly with the v-exponent zeroed."""
    terms = {}
    for m, c in a.terms.items():
        if m[v] == k:
            terms[m[:v] + (0,) + m[v + 1:]] = c
    return Poly._make(a.field, terms)


def _shift(a: Poly, v: int, k: int) -> Poly:
    """Multiply a by t_v^k."""
    if k == 0:
        return a
    return Poly._make(a.field, {m[:v] + (m[v] + k,) + m[v + 1:]: c for m, c in a.terms.items()})


def _content_in(a: Poly, v: int) -> Poly:
    """gcd of the t_v-coefficients of a (the content w.r.t. t_v), monic."""
    content = None
    for k in sorted({m[v] for m in a.terms}):
        coeff = _coeff_in(a, v, k)
        content = coeff.monic() if content is None else poly_gcd(content, coeff)
        if content.is_one():
            return content
    assert content is not None
    return content


def _prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b w.r.t. variable index v (naive scaling)."""
    db = b.deg_in(v)
    lb = _coeff_in(b, v, db)
    r = a
    while not r.is_zero() and r.deg_in(v) >= db:
        dr = r.deg_in(v)
        lr = _coeff_in(r, v, dr)
        r = lb * r - lr * _shift(b, v, dr - db)
    return r


def _univariate_exact_div(a: Poly, b: Poly, v: int) -> Poly:
    """Dense synthetic division for effectively univariate operands."""
    p = a.field.p
    da, db = a.deg_in(v), b.deg_in(v)
    if da < db:
        raise ValueError("not an exact divisor")
    big = [0] * (da + 1)
    for m, c in a.terms.items():
        big[m[v]] = c
    small = [0] * (db + 1)
    for m, c in b.terms.items():
        small[m[v]] = c
    inv = pow(small[-1], p - 2, p)
    quot = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = big[i]
        if c:
            f = c * inv % p
            quot[i - db] = f
            off = i - db
            for j in range(db + 1):
                if small[j]:
                    big[off + j] = (big[off + j] - f * small[j]) % p
    if any(big):
        raise ValueError("not an exact divisor")
    zero_m = [0] * a.field.nvars
    terms = {}
    for i, c in enumerate(quot):
        if c:
            mono = list(zero_m)
            mono[v] = i
            terms[tuple(mono)] = c
    return Poly._make(a.field, terms)


def _univariate_gcd(a: Poly, b: Poly, v: int) -> Poly:
    """Euclid on dense coefficient arrays; coefficients lie in the field F_p,
    so no pseudo-division or content bookkeeping is needed."""
    p = a.field.p

    def coeffs(poly: Poly) -> list:
        arr = [0] * (poly.deg_in(v) + 1)
        for m, c in poly.terms.items():
            arr[m[v]] = c
        return arr

    def rem(big: list, small: list) -> list:
        big = big[:]
        ds = len(small) - 1
        inv = pow(small[-1], p - 2, p)
        for i in range(len(big) - 1, ds - 1, -1):
            c = big[i]
            if c:
                f = c * inv % p
                off = i - ds
                for j in range(ds):
                    if small[j]:
                        big[off + j] = (big[off + j] - f * small[j]) % p
                big[i] = 0
        while big and big[-1] == 0:
            big.pop()
        return big

    A, B = coeffs(a), coeffs(b)
    while B:
        A, B = B, rem(A, B)
    inv = pow(A[-1], p - 2, p)
    zero_m = [0] * a.field.nvars
    terms = {}
    for i, c in enumerate(A):
        if c:
            mono = list(zero_m)
            mono[v] = i
            terms[tuple(mono)] = c * inv % p
    return Poly._make(a.field, terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd: Euclid for effectively univariate inputs, otherwise a
    primitive pseudo-remainder sequence with the last declared variable
    occurring in either input as the main variable."""
    a._same_field(b)
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    occurring = [i for i in range(a.field.nvars) if a.deg_in(i) > 0 or b.deg_in(i) > 0]
    if not occurring:
        return a.field.poly_one()  # two nonzero constants
    if len(occurring) == 1:
        return _univariate_gcd(a, b, occurring[0])
    v = occurring[-1]
    if a.deg_in(v) == 0:
        return poly_gcd(a, _content_in(b, v))
    if b.deg_in(v) == 0:
        return poly_gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    c = poly_gcd(ca, cb)
    A = a if ca.is_one() else a.exact_div(ca)
    B = b if cb.is_one() else b.exact_div(cb)
    if A.deg_in(v) < B.deg_in(v):
        A, B = B, A
    while not B.is_zero():
        R = _prem(A, B, v)
        A = B
        if R.is_zero():
            B = R
        else:
            cr = _content_in(R, v)
            B = R if cr.is_one() else R.exact_div(cr)
    return (c * A).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return a.field.poly_zero()
    return (a * b).exact_div(poly_gcd(a, b)).monic()


class FieldElem:
    """Element of F_p(t_1,...,t_m) as a canonical reduced fraction."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "FieldElem":
        """Trusted constructor: caller guarantees the canonical invariants."""
        return cls(num, den)

    @classmethod
    def make(cls, num: Poly, den: Poly) -> "FieldElem":
        """Reducing constructor."""
        num._same_field(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        f = num.field
        if num.is_zero():
            return cls._raw(f.poly_zero(), f.poly_one())
        if den.is_one():
            return cls._raw(num, den)
        g = poly_gcd(num, den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
        _, lc = den.leading()
        if lc != 1:
            inv = pow(lc, f.p - 2, f.p)
            num, den = num.scale(inv), den.scale(inv)
        return cls._raw(num, den)

    @property
    def field(self) -> GroundField:
        return self.num.field

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _same_field(self, other: "FieldElem"):
        if self.field != other.field:
            raise ValueError("elements from different fields")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._same_field(other)
        return FieldElem.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "FieldElem":
        return FieldElem._raw(-self.num, self.den)

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        return self + (-other)

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._same_field(other)
        return FieldElem.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._same_field(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        return FieldElem.make(self.num * other.den, self.den * other.num)

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElem.make(self.den, self.num)

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElem.make(self.num**n, self.den**n)

    def frobenius(self) -> "FieldElem":
        """The p-th power (stays canonical: exponent scaling preserves both
        coprimality and the monic leading coefficient)."""
        return FieldElem._raw(self.num.frobenius(), self.den.frobenius())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElem)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        return elem_str(self)

    def __repr__(self) -> str:
        return f"FieldElem({elem_str(self)})"


# -- Frobenius coordinates --------------------------------------------------


def frobenius_coords(x: FieldElem) -> dict:
    """Coordinates of x over the monomial p-basis of F over F^p.

    Returns {lam: g_lam} with lam in {0,...,p-1}^m, all g_lam nonzero, and
    x = sum_lam g_lam^p * t^lam exactly. Keys run in graded-lex order.
    """
    f = x.field
    p = f.p
    if x.is_zero():
        return {}
    big = x.num * x.den ** (p - 1)  # x = big / den^p
    buckets: dict = {}
    for mono, c in big.terms.items():
        lam = tuple(e % p for e in mono)
        q = tuple(e // p for e in mono)
        buckets.setdefault(lam, {})[q] = c  # (lam, q) <-> mono is a bijection
    out = {}
    for lam in sorted(buckets, key=grlex_key):
        out[lam] = FieldElem.make(Poly._make(f, buckets[lam]), x.den)
    return out


def pth_root(x: FieldElem) -> Optional[FieldElem]:
    """The g with g^p = x, or None when x is not a p-th power in F."""
    if x.is_zero():
        return x
    coords = frobenius_coords(x)
    zero_lam = x.field._zero_mono()
    if set(coords) != {zero_lam}:
        return None
    return coords[zero_lam]


def in_pth_powers(x: FieldElem) -> bool:
    """Membership test for F^p (zero counts as a p-th power)."""
    if x.is_zero():
        return True
    zero_lam = x.field._zero_mono()
    return set(frobenius_coords(x)) <= {zero_lam}


# -- canonical text rendering ------------------------------------------------


def _mono_str(field: GroundField, mono: Mono) -> str:
    parts = []
    for name, e in zip(field.variables, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_str(a: Poly) -> str:
    """Canonical rendering: graded-lex descending, explicit '*' and '^',
    no spaces, coefficients in {1,...,p-1} (no minus signs)."""
    if a.is_zero():
        return "0"
    parts = []
    for mono in sorted(a.terms, key=grlex_key, reverse=True):
        c = a.terms[mono]
        ms = _mono_str(a.field, mono)
        if not ms:
            parts.append(str(c))
        elif c == 1:
            parts.append(ms)
        else:
            parts.append(f"{c}*{ms}")
    return "+".join(parts)


def elem_str(x: FieldElem) -> str:
    ns = poly_str(x.num)
    if x.den.is_one():
        return ns
    if "+" in ns:
        ns = f"({ns})"
    ds = poly_str(x.den)
    if "+" in ds or "*" in ds:
        ds = f"({ds})"
    return f"{ns}/{ds}"
