"""Exact arithmetic in a totally real cubic field Q[t]/(q).

Elements are rational coefficient triples r0 + r1*t + r2*t^2 reduced modulo a
monic cubic q with three distinct real roots.  Every inequality the rest of
the package decides (tile membership, window tests, quadrant signs) bottoms
out in `sign_at`: the exact sign of an element under one of the three real
embeddings, computed by shrinking an isolating interval of the chosen root
until the evaluated enclosure excludes zero.  There is no floating point on
any decision path; floats appear only as display annotations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class DomainError(ValueError):
    """Argument outside the family handled here (e.g. generator index < 6)."""


class NotTotallyReal(ValueError):
    """Cubic without three distinct real roots."""


class MixedFields(ValueError):
    """Operands live in fields with different defining polynomials."""


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero element."""


class RefinementBudgetExceeded(RuntimeError):
    """Bisection cap hit; indicates a zero value under the chosen embedding."""


REFINEMENT_CAP = 10_000

Rational = Fraction


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic x^3 + c2*x^2 + c1*x + c0 with integer coefficients."""

    c0: int
    c1: int
    c2: int

    def __call__(self, t) -> Fraction:
        t = _frac(t)
        return ((t + self.c2) * t + self.c1) * t + self.c0

    def coeffs(self) -> tuple[int, int, int, int]:
        """Low-to-high coefficient tuple including the leading 1."""
        return (self.c0, self.c1, self.c2, 1)

    def discriminant(self) -> int:
        b, c, d = self.c2, self.c1, self.c0
        return 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d

    def is_totally_real(self) -> bool:
        return self.discriminant() > 0

    def is_irreducible(self) -> bool:
        """Irreducibility over Q for the constant-term-±1 case.

        A monic integer cubic has a rational root only among divisors of its
        constant term, so for |c0| = 1 it is reducible iff ±1 is a root.
        """
        if abs(self.c0) != 1:
            raise DomainError("irreducibility shortcut requires constant term ±1")
        return self(1) != 0 and self(-1) != 0

    def __str__(self) -> str:
        return f"x^3 + ({self.c2})x^2 + ({self.c1})x + ({self.c0})"


def poly_for_generator(n: int) -> CubicPoly:
    """Characteristic cubic x^3 - (n+1)x^2 + nx - 1 of the n-th generator."""
    if n < 6:
        raise DomainError(f"generator index must be >= 6, got {n}")
    return CubicPoly(c0=-1, c1=n, c2=-(n + 1))


def discriminant_q(n: int) -> int:
    """Closed-form discriminant n^4 - 6n^3 + 7n^2 + 6n - 31 of that cubic."""
    return n**4 - 6 * n**3 + 7 * n**2 + 6 * n - 31


# ---------------------------------------------------------------------------
# Sturm sequences over the rationals


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p: list[Fraction], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * t + c
    return acc


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _poly_trim(a):
        da, la = len(a) - 1, a[-1]
        f = la / lb
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a.pop()
        _poly_trim(a)
    return a


def sturm_chain(coeffs: Iterable) -> list[list[Fraction]]:
    p0 = _poly_trim([_frac(c) for c in coeffs])
    p1 = _poly_trim([i * c for i, c in enumerate(p0)][1:])
    chain = [p0, p1]
    while chain[-1]:
        r = [-c for c in _poly_rem(chain[-2], chain[-1])]
        if not _poly_trim(r):
            break
        chain.append(r)
    return chain


def _variations(chain, t: Fraction) -> int:
    signs = [v for p in chain if (v := _poly_eval(p, t)) != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(coeffs, a, b) -> int:
    """Number of distinct real roots in the half-open interval (a, b]."""
    chain = sturm_chain(coeffs)
    return _variations(chain, _frac(a)) - _variations(chain, _frac(b))


class RootIsolation:
    """Three shrinking rational brackets, one per real root, ordered ascending.

    Root indices are 1, 2, 3 by increasing value.  Refinement only ever
    bisects, so an interval never loses its root and nonzero signs computed
    from it are stable.
    """

    def __init__(self, poly: CubicPoly, intervals: list[list[Fraction]]):
        self.poly = poly
        self.intervals = intervals
        for lo, hi in intervals:
            if not (poly(lo) != 0 and poly(hi) != 0 and (poly(lo) > 0) != (poly(hi) > 0)):
                raise NotTotallyReal(f"bad bracket [{lo}, {hi}] for {poly}")
        for (_, h1), (l2, _) in zip(intervals, intervals[1:]):
            if not h1 < l2:
                raise NotTotallyReal("brackets out of order")

    @classmethod
    def isolate(cls, poly: CubicPoly) -> "RootIsolation":
        if not poly.is_totally_real():
            raise NotTotallyReal(f"discriminant {poly.discriminant()} <= 0 for {poly}")
        n = poly.c1
        if poly.c0 == -1 and poly.c2 == -(n + 1) and n >= 6:
            # Companion-family cubic: proven brackets, no Sturm needed.
            brackets = [
                [Fraction(1, n - 1), Fraction(1, n - 2)],
                [1 - Fraction(1, n - 3), 1 - Fraction(1, n - 2)],
                [Fraction(n), Fraction(n + 1)],
            ]
            return cls(poly, brackets)
        return cls(poly, _isolate_by_sturm(poly))

    def interval(self, root_index: int) -> tuple[Fraction, Fraction]:
        lo, hi = self.intervals[root_index - 1]
        return lo, hi

    def refine(self, root_index: int, width: Fraction) -> tuple[Fraction, Fraction]:
        iv = self.intervals[root_index - 1]
        p = self.poly
        while iv[1] - iv[0] > width:
            mid = (iv[0] + iv[1]) / 2
            v = p(mid)
            if v == 0:  # rational root; impossible for irreducible ambient polys
                mid = (2 * iv[0] + iv[1]) / 3
                v = p(mid)
            if (v > 0) == (p(iv[0]) > 0):
                iv[0] = mid
            else:
                iv[1] = mid
        return iv[0], iv[1]


def _isolate_by_sturm(poly: CubicPoly) -> list[list[Fraction]]:
    coeffs = [_frac(c) for c in poly.coeffs()]
    chain = sturm_chain(coeffs)
    bound = Fraction(1 + max(abs(poly.c0), abs(poly.c1), abs(poly.c2)))
    while poly(bound) == 0 or poly(-bound) == 0:
        bound += 1

    def var(t):
        return _variations(chain, t)

    work = [(-bound, bound, var(-bound), var(bound))]
    found: list[list[Fraction]] = []
    while work:
        lo, hi, vlo, vhi = work.pop()
        k = vlo - vhi
        if k == 0:
            continue
        if k == 1:
            found.append([lo, hi])
            continue
        mid = (lo + hi) / 2
        while poly(mid) == 0:
            mid = (2 * lo + hi) / 3
        vm = var(mid)
        work.append((lo, mid, vlo, vm))
        work.append((mid, hi, vm, vhi))
    if len(found) != 3:
        raise NotTotallyReal(f"isolated {len(found)} real roots for {poly}")
    found.sort(key=lambda iv: iv[0])
    return found


def isolate_roots(poly: CubicPoly) -> RootIsolation:
    return RootIsolation.isolate(poly)


# ---------------------------------------------------------------------------
# Field elements


class FieldElement:
    """r0 + r1*t + r2*t^2 in Q[t]/(poly), always reduced (degree < 3).

    Zero iff all coefficients are zero; valid because the ambient polynomial
    is irreducible of degree 3, so 1, t, t^2 are linearly independent over Q.
    Immutable and hashable.
    """

    __slots__ = ("poly", "r0", "r1", "r2", "_hash")

    def __init__(self, poly: CubicPoly, r0, r1=0, r2=0):
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "r0", _frac(r0))
        object.__setattr__(self, "r1", _frac(r1))
        object.__setattr__(self, "r2", _frac(r2))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.r0, self.r1, self.r2)

    def is_zero(self) -> bool:
        return self.r0 == 0 and self.r1 == 0 and self.r2 == 0

    def _check(self, other: "FieldElement"):
        if self.poly != other.poly:
            raise MixedFields(f"{self.poly} vs {other.poly}")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return FieldElement(self.poly, self.r0 + other.r0, self.r1 + other.r1, self.r2 + other.r2)

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return FieldElement(self.poly, self.r0 - other.r0, self.r1 - other.r1, self.r2 - other.r2)

    def __neg__(self):
        return FieldElement(self.poly, -self.r0, -self.r1, -self.r2)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        a0, a1, a2 = self.r0, self.r1, self.r2
        b0, b1, b2 = other.r0, other.r1, other.r2
        # convolution up to degree 4, then reduce t^3 and t^4
        d0 = a0 * b0
        d1 = a0 * b1 + a1 * b0
        d2 = a0 * b2 + a1 * b1 + a2 * b0
        d3 = a1 * b2 + a2 * b1
        d4 = a2 * b2
        c0, c1, c2 = self.poly.c0, self.poly.c1, self.poly.c2
        # t^3 = -c2 t^2 - c1 t - c0 ;  t^4 = (c2^2 - c1) t^2 + (c1 c2 - c0) t + c0 c2
        return FieldElement(
            self.poly,
            d0 - d3 * c0 + d4 * (c0 * c2),
            d1 - d3 * c1 + d4 * (c1 * c2 - c0),
            d2 - d3 * c2 + d4 * (c2 * c2 - c1),
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero element")
        # extended gcd of self against the (irreducible) ambient polynomial
        a = _poly_trim([self.r0, self.r1, self.r2])
        m = [_frac(c) for c in self.poly.coeffs()]
        r_prev, r_cur = m, a
        s_prev, s_cur = [], [Fraction(1)]
        while r_cur:
            q, r_next = _poly_divmod(r_prev, r_cur)
            s_next = _poly_sub(s_prev, _poly_mul(q, s_cur))
            r_prev, r_cur = r_cur, r_next
            s_prev, s_cur = s_cur, s_next
        if len(r_prev) != 1:
            raise DomainError(f"ambient polynomial {self.poly} is not irreducible")
        g = r_prev[0]
        inv = [c / g for c in s_prev] + [Fraction(0)] * 3
        out = FieldElement(self.poly, inv[0], inv[1], inv[2])
        assert (out * self - 1).is_zero()
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = FieldElement(self.poly, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def _coerce(self, v):
        if isinstance(v, FieldElement):
            return v
        return FieldElement(self.poly, _frac(v))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.poly == other.poly and self.coeffs() == other.coeffs()

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.poly, self.r0, self.r1, self.r2))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"FieldElement({self.r0} + {self.r1}t + {self.r2}t^2)"


def fe(poly: CubicPoly, r0, r1=0, r2=0) -> FieldElement:
    return FieldElement(poly, r0, r1, r2)


def zero(poly: CubicPoly) -> FieldElement:
    return FieldElement(poly, 0)


def one(poly: CubicPoly) -> FieldElement:
    return FieldElement(poly, 1)


def gen(poly: CubicPoly) -> FieldElement:
    """The class of t itself (the field generator)."""
    return FieldElement(poly, 0, 1, 0)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inverse(a: FieldElement) -> FieldElement:
    return a.inverse()


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _poly_trim(a):
        da, la = len(a) - 1, a[-1]
        f = la / lb
        q[da - db] = f
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a.pop()
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _poly_trim(out)


# ---------------------------------------------------------------------------
# Embeddings: exact signs and refinable enclosures

_ISOLATIONS: dict[CubicPoly, RootIsolation] = {}
_SIGN_CACHE: dict[tuple, int] = {}


def get_isolation(poly: CubicPoly) -> RootIsolation:
    iso = _ISOLATIONS.get(poly)
    if iso is None:
        iso = RootIsolation.isolate(poly)
        _ISOLATIONS[poly] = iso
    return iso


def _interval_value(e: FieldElement, lo: Fraction, hi: Fraction):
    """Range of r0 + r1*t + r2*t^2 over t in [lo, hi] (outward, exact)."""
    if lo >= 0:
        sq = (lo * lo, hi * hi)
    elif hi <= 0:
        sq = (hi * hi, lo * lo)
    else:
        sq = (Fraction(0), max(lo * lo, hi * hi))
    t1a, t1b = e.r1 * lo, e.r1 * hi
    t2a, t2b = e.r2 * sq[0], e.r2 * sq[1]
    return (e.r0 + min(t1a, t1b) + min(t2a, t2b), e.r0 + max(t1a, t1b) + max(t2a, t2b))


def sign_at(e: FieldElement, root_index: int) -> int:
    """Exact sign of e under the embedding sending t to root #root_index.

    Returns 0 iff e is the zero element (coefficient test; sound because the
    ambient polynomial is irreducible).  Otherwise bisects the root bracket
    until the evaluated enclosure excludes zero.  Stable under further
    refinement by construction.
    """
    if e.is_zero():
        return 0
    key = (e.poly, e.r0, e.r1, e.r2, root_index)
    s = _SIGN_CACHE.get(key)
    if s is not None:
        return s
    iso = get_isolation(e.poly)
    lo, hi = iso.interval(root_index)
    for _ in range(REFINEMENT_CAP):
        vlo, vhi = _interval_value(e, lo, hi)
        if vlo > 0:
            s = 1
            break
        if vhi < 0:
            s = -1
            break
        lo, hi = iso.refine(root_index, (hi - lo) / 2)
    else:
        raise RefinementBudgetExceeded(
            f"sign of {e!r} at root {root_index} undecided after {REFINEMENT_CAP} refinements"
        )
    _SIGN_CACHE[key] = s
    return s


def compare_at(a: FieldElement, b: FieldElement, root_index: int) -> int:
    return sign_at(a - b, root_index)


def enclose_at(e: FieldElement, root_index: int, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational enclosure of the embedded value, of width at most `width`."""
    iso = get_isolation(e.poly)
    lo, hi = iso.interval(root_index)
    for _ in range(REFINEMENT_CAP):
        vlo, vhi = _interval_value(e, lo, hi)
        if vhi - vlo <= width:
            return vlo, vhi
        lo, hi = iso.refine(root_index, (hi - lo) / 2)
    raise RefinementBudgetExceeded(f"enclosure of {e!r} did not reach width {width}")


_APPROX_WIDTH = Fraction(1, 10**18)


def approx_at(e: FieldElement, root_index: int) -> float:
    """Float annotation (never authoritative) of the embedded value."""
    lo, hi = enclose_at(e, root_index, _APPROX_WIDTH)
    return float((lo + hi) / 2)


def root_approx(poly: CubicPoly, root_index: int) -> float:
    return approx_at(gen(poly), root_index)


@dataclass
class EmbeddedValue:
    """A field element read under one fixed real embedding."""

    element: FieldElement
    root_index: int

    def sign(self) -> int:
        return sign_at(self.element, self.root_index)

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        return enclose_at(self.element, self.root_index, width)

    def approx(self) -> float:
        return approx_at(self.element, self.root_index)


# ---------------------------------------------------------------------------
# JSON wire format: exact rational strings, floats only as annotations


def element_to_json(e: FieldElement) -> list[str]:
    return [str(e.r0), str(e.r1), str(e.r2)]


def element_from_json(poly: CubicPoly, triple) -> FieldElement:
    return FieldElement(poly, Fraction(triple[0]), Fraction(triple[1]), Fraction(triple[2]))


def poly_to_json(poly: CubicPoly) -> list[int]:
    return [poly.c0, poly.c1, poly.c2]


def poly_from_json(coeffs) -> CubicPoly:
    return CubicPoly(int(coeffs[0]), int(coeffs[1]), int(coeffs[2]))
