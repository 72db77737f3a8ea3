"""The Galois lattice walk: window membership, z-ordered enumeration, steps.

Integer triples (a, b, c) stand for a + b*t + c*t^2.  A frame (eigendata or
a stage frame) supplies the projection to the window plane: the xy-image of
a triple is the single field element a + b*xi1 + c*xi2 read under roots 1
and 2, and the z-image is a + b*t + c*t^2 read under root 3.  Enumeration
bounds come from inverting the embedding box with outward-rounded rational
interval arithmetic; membership of every candidate is then decided exactly,
so the rounding can only cost time, never correctness.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .numberfield import FieldElement, compare_at, enclose_at, gen, sign_at
from .rectgeo import ExactPoint2

Triple = tuple[int, int, int]

# The seven canonical steps of the square-window walk, ordered by increasing
# z-projection; eta2 = eta0+eta1, eta4 = eta0+eta3, eta5 = eta1+eta3,
# eta6 = eta0+eta1+eta3.
STANDARD_STEPS: tuple[Triple, ...] = (
    (-1, 1, 0),
    (0, 1, 0),
    (-1, 2, 0),
    (1, -3, 1),
    (0, -2, 1),
    (1, -2, 1),
    (0, -1, 1),
)


class InsufficientPoints(RuntimeError):
    """Too few window points to produce any walk step."""


class NoValidStep(RuntimeError):
    """No step keeps the projection inside the window: wrong step set."""


class OutOfWindow(ValueError):
    """Point projects outside the half-open unit square."""


def lattice_element(frame, p: Triple) -> FieldElement:
    """a + b*xi1 + c*xi2 — the xy-image, same element for both axes."""
    a, b, c = p
    return a + b * frame.xi[1] + c * frame.xi[2]


def project_xy(p: Triple, frame) -> ExactPoint2:
    e = lattice_element(frame, p)
    return ExactPoint2(e, e)


def project_z(p: Triple, frame) -> FieldElement:
    """a + b*t + c*t^2, to be read under root 3."""
    a, b, c = p
    poly = frame.poly
    lam = gen(poly)
    return a + b * lam + c * lam * lam


def in_window(frame, p: Triple) -> bool:
    """Exact membership of the xy-projection in [0,1) x [0,1)."""
    e = lattice_element(frame, p)
    for axis in (1, 2):
        if sign_at(e, axis) < 0 or sign_at(e - 1, axis) >= 0:
            return False
    return True


# -- rational interval helpers (outward by construction: exact endpoints) ---

IV = tuple[Fraction, Fraction]


def _iadd(a: IV, b: IV) -> IV:
    return (a[0] + b[0], a[1] + b[1])


def _isub(a: IV, b: IV) -> IV:
    return (a[0] - b[1], a[1] - b[0])


def _iscale(k: int, a: IV) -> IV:
    return (k * a[0], k * a[1]) if k >= 0 else (k * a[1], k * a[0])


def _imul(a: IV, b: IV) -> IV:
    vals = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(vals), max(vals))


def _idiv(a: IV, b: IV) -> IV:
    if b[0] <= 0 <= b[1]:
        raise ZeroDivisionError("interval denominator straddles zero")
    vals = (a[0] / b[0], a[0] / b[1], a[1] / b[0], a[1] / b[1])
    return (min(vals), max(vals))


def _int_range(iv: IV, pad: int = 1) -> range:
    return range(math.floor(iv[0]) - pad, math.ceil(iv[1]) + pad + 1)


_BOUND_WIDTH = Fraction(1, 10**30)


def _frame_enclosures(frame):
    w = _BOUND_WIDTH
    lam = gen(frame.poly)
    x1 = enclose_at(frame.xi[1], 1, w)
    x2 = enclose_at(frame.xi[2], 1, w)
    y1 = enclose_at(frame.xi[1], 2, w)
    y2 = enclose_at(frame.xi[2], 2, w)
    z1 = enclose_at(lam, 3, w)
    z2 = enclose_at(lam * lam, 3, w)
    return x1, x2, y1, y2, z1, z2


def enumerate_window(frame, zmax) -> list[Triple]:
    """All triples with xy-image in [0,1)^2 and 0 <= z-image <= zmax, z-sorted.

    z-values are pairwise distinct (the z-projection is injective on the
    lattice), so the order is strict; a tie would be an arithmetic fault and
    trips an assertion.
    """
    zmax = Fraction(zmax)
    if zmax < 0:
        raise ValueError("zmax must be nonnegative")
    x1, x2, y1, y2, z1, z2 = _frame_enclosures(frame)
    d2, e2 = _isub(y1, x1), _isub(y2, x2)
    d3, e3 = _isub(z1, x1), _isub(z2, x2)
    det = _isub(_imul(d2, e3), _imul(e2, d3))
    u: IV = (Fraction(-1), Fraction(1))
    v: IV = (Fraction(-1), zmax)
    c_iv = _idiv(_isub(_imul(d2, v), _imul(d3, u)), det)

    poly = frame.poly
    lam = gen(poly)
    lam2 = lam * lam
    out: list[tuple[FieldElement, Triple]] = []
    for c in _int_range(c_iv):
        b1 = _idiv(_isub(u, _iscale(c, e2)), d2)
        b2 = _idiv(_isub(v, _iscale(c, e3)), d3)
        blo, bhi = max(b1[0], b2[0]), min(b1[1], b2[1])
        if blo > bhi:
            continue
        for b in _int_range((blo, bhi)):
            a_iv = _isub((Fraction(0), Fraction(1)), _iadd(_iscale(b, x1), _iscale(c, x2)))
            for a in _int_range(a_iv):
                p = (a, b, c)
                if not in_window(frame, p):
                    continue
                ze = a + b * lam + c * lam2
                if sign_at(ze, 3) < 0 or sign_at(ze - zmax, 3) > 0:
                    continue
                out.append((ze, p))
    out.sort(key=functools.cmp_to_key(lambda s, t: compare_at(s[0], t[0], 3)))
    for (za, _), (zb, _) in zip(out, out[1:]):
        assert compare_at(za, zb, 3) < 0, "z-projection tie: injectivity violated"
    return [p for _, p in out]


@dataclass(frozen=True)
class StepSet:
    """Walk steps ordered by strictly increasing z-projection."""

    poly: object
    steps: tuple[Triple, ...]

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)


def discover_step_set(frame, zmax) -> StepSet:
    pts = enumerate_window(frame, zmax)
    if len(pts) < 2:
        raise InsufficientPoints(f"{len(pts)} window point(s) up to z={zmax}")
    diffs = {tuple(q[i] - p[i] for i in range(3)) for p, q in zip(pts, pts[1:])}
    lam = gen(frame.poly)
    zval = {d: d[0] + d[1] * lam + d[2] * lam * lam for d in diffs}
    ordered = sorted(diffs, key=functools.cmp_to_key(lambda s, t: compare_at(zval[s], zval[t], 3)))
    return StepSet(poly=frame.poly, steps=tuple(ordered))


def enumerate_at_least(frame, count: int, zmax_start=64) -> tuple[list[Triple], Fraction]:
    """Grow zmax until at least `count` window points are found."""
    zmax = Fraction(zmax_start)
    for _ in range(40):
        pts = enumerate_window(frame, zmax)
        if len(pts) >= count:
            return pts, zmax
        zmax *= 2
    raise InsufficientPoints(f"could not reach {count} points (zmax={zmax})")


def walk_next(p: Triple, steps: StepSet, frame) -> Triple:
    """Minimum-index valid step from p; must agree with the z-order successor."""
    if not in_window(frame, p):
        raise OutOfWindow(f"{p} does not project into the window")
    for eta in steps:
        q = (p[0] + eta[0], p[1] + eta[1], p[2] + eta[2])
        if in_window(frame, q):
            return q
    raise NoValidStep(f"no step from {p} stays in the window")


def walk_jsonl(frame, zmax) -> str:
    """One JSON object per walk point: exact triple, z annotation, step index."""
    pts = enumerate_window(frame, zmax)
    steps = discover_step_set(frame, zmax) if len(pts) >= 2 else StepSet(frame.poly, ())
    index = {s: i for i, s in enumerate(steps.steps)}
    lines = []
    for i, p in enumerate(pts):
        z = project_z(p, frame)
        lo, hi = enclose_at(z, 3, Fraction(1, 10**12))
        step_index = None
        if i + 1 < len(pts):
            d = tuple(pts[i + 1][j] - p[j] for j in range(3))
            step_index = index.get(d)
        lines.append(
            json.dumps({"point": list(p), "z": f"{float((lo + hi) / 2):.12f}", "step_index": step_index})
        )
    return "\n".join(lines) + "\n"
