"""Exact rectilinear regions with cubic-field coordinates.

A point's x-coordinate is always read under root 1 of the ambient cubic and
its y-coordinate under root 2; all comparisons go through `sign_at`, so set
operations are exact.  Regions are closures of their interiors: boolean
operations are interpreted up to measure zero and then re-closed, which is
the right semantics for exchange-map tiles (the dynamics is undefined on
tile boundaries anyway).

Canonical form: a region is stored as maximal vertical slabs — sorted
distinct x-cuts, maximally merged y-intervals inside each slab, and adjacent
slabs with identical y-structure fused.  Two regions are equal iff their
canonical forms are identical, which makes equality of differently-built
decompositions decidable by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .numberfield import (
    CubicPoly,
    FieldElement,
    MixedFields,
    approx_at,
    compare_at,
    element_from_json,
    element_to_json,
    enclose_at,
    sign_at,
)

AXIS_X = 1  # root index backing x-comparisons
AXIS_Y = 2  # root index backing y-comparisons


class DegenerateRect(ValueError):
    """Rectangle with empty interior."""


@dataclass(frozen=True)
class ExactPoint2:
    x: FieldElement
    y: FieldElement

    def translate(self, vx: FieldElement, vy: FieldElement) -> "ExactPoint2":
        return ExactPoint2(self.x + vx, self.y + vy)

    def approx(self) -> tuple[float, float]:
        return (approx_at(self.x, AXIS_X), approx_at(self.y, AXIS_Y))


@dataclass(frozen=True)
class ExactRect:
    """Closed axis-aligned rectangle [x0,x1] x [y0,y1] with x0<x1, y0<y1."""

    x0: FieldElement
    x1: FieldElement
    y0: FieldElement
    y1: FieldElement

    def __post_init__(self):
        if compare_at(self.x0, self.x1, AXIS_X) >= 0 or compare_at(self.y0, self.y1, AXIS_Y) >= 0:
            raise DegenerateRect(f"empty interior: {self}")

    def translate(self, vx, vy) -> "ExactRect":
        return ExactRect(self.x0 + vx, self.x1 + vx, self.y0 + vy, self.y1 + vy)

    def approx(self) -> tuple[float, float, float, float]:
        return (
            approx_at(self.x0, AXIS_X),
            approx_at(self.x1, AXIS_X),
            approx_at(self.y0, AXIS_Y),
            approx_at(self.y1, AXIS_Y),
        )


def _maybe_rect(x0, x1, y0, y1) -> ExactRect | None:
    if compare_at(x0, x1, AXIS_X) < 0 and compare_at(y0, y1, AXIS_Y) < 0:
        return ExactRect(x0, x1, y0, y1)
    return None


def _emax(a: FieldElement, b: FieldElement, axis: int) -> FieldElement:
    return a if compare_at(a, b, axis) >= 0 else b


def _emin(a: FieldElement, b: FieldElement, axis: int) -> FieldElement:
    return a if compare_at(a, b, axis) <= 0 else b


def _sort_unique(values, axis: int) -> list[FieldElement]:
    uniq = list({v.coeffs(): v for v in values}.values())
    uniq.sort(key=cmp_to_key(lambda a, b: compare_at(a, b, axis)))
    return uniq


def _merge_y(intervals) -> tuple:
    """Merge closed y-intervals that overlap or touch."""
    ivs = sorted(intervals, key=cmp_to_key(lambda a, b: compare_at(a[0], b[0], AXIS_Y)))
    out: list[list[FieldElement]] = []
    for y0, y1 in ivs:
        if out and compare_at(y0, out[-1][1], AXIS_Y) <= 0:
            if compare_at(y1, out[-1][1], AXIS_Y) > 0:
                out[-1][1] = y1
        else:
            out.append([y0, y1])
    return tuple((a, b) for a, b in out)


class RectRegion:
    """Finite union of axis-aligned rectangles, kept in canonical slab form."""

    __slots__ = ("poly", "slabs", "_hash")

    def __init__(self, poly: CubicPoly, slabs: tuple):
        self.poly = poly
        self.slabs = slabs
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def empty(cls, poly: CubicPoly) -> "RectRegion":
        return cls(poly, ())

    @classmethod
    def from_rects(cls, poly: CubicPoly, rects) -> "RectRegion":
        rects = list(rects)
        for r in rects:
            for c in (r.x0, r.x1, r.y0, r.y1):
                if c.poly != poly:
                    raise MixedFields("rectangle coordinates from a different field")
        if not rects:
            return cls.empty(poly)
        cuts = _sort_unique(
            [r.x0 for r in rects] + [r.x1 for r in rects], AXIS_X
        )
        index = {c.coeffs(): i for i, c in enumerate(cuts)}
        raw_slabs = []
        for i in range(len(cuts) - 1):
            cover = [
                (r.y0, r.y1)
                for r in rects
                if index[r.x0.coeffs()] <= i < index[r.x1.coeffs()]
            ]
            if cover:
                raw_slabs.append([cuts[i], cuts[i + 1], _merge_y(cover)])
        return cls(poly, _fuse_slabs(raw_slabs))

    @classmethod
    def rect(cls, x0, x1, y0, y1) -> "RectRegion":
        r = ExactRect(x0, x1, y0, y1)
        return cls.from_rects(x0.poly, [r])

    @classmethod
    def unit_square(cls, poly: CubicPoly) -> "RectRegion":
        z, o = FieldElement(poly, 0), FieldElement(poly, 1)
        return cls.rect(z, o, z, o)

    # -- basic queries -------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.slabs

    @property
    def rects(self) -> list[ExactRect]:
        out = []
        for x0, x1, ys in self.slabs:
            for y0, y1 in ys:
                out.append(ExactRect(x0, x1, y0, y1))
        return out

    def __eq__(self, other):
        if not isinstance(other, RectRegion):
            return NotImplemented
        return self.poly == other.poly and self.slabs == other.slabs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.poly, self.slabs))
        return self._hash

    def __repr__(self):
        return f"RectRegion({len(self.rects)} rects)"

    def _check(self, other: "RectRegion"):
        if self.poly != other.poly:
            raise MixedFields("regions from different fields")

    # -- boolean operations (up to measure zero, then re-closed) -------------

    def intersect(self, other: "RectRegion") -> "RectRegion":
        self._check(other)
        pieces = []
        for a in self.rects:
            for b in other.rects:
                r = _maybe_rect(
                    _emax(a.x0, b.x0, AXIS_X),
                    _emin(a.x1, b.x1, AXIS_X),
                    _emax(a.y0, b.y0, AXIS_Y),
                    _emin(a.y1, b.y1, AXIS_Y),
                )
                if r is not None:
                    pieces.append(r)
        return RectRegion.from_rects(self.poly, pieces)

    def subtract(self, other: "RectRegion") -> "RectRegion":
        self._check(other)
        pieces = self.rects
        for s in other.rects:
            nxt = []
            for p in pieces:
                nxt.extend(_rect_minus_rect(p, s))
            pieces = nxt
        return RectRegion.from_rects(self.poly, pieces)

    def union(self, other: "RectRegion") -> "RectRegion":
        self._check(other)
        return RectRegion.from_rects(self.poly, self.rects + other.rects)

    def translate(self, vx: FieldElement, vy: FieldElement) -> "RectRegion":
        return RectRegion.from_rects(self.poly, [r.translate(vx, vy) for r in self.rects])

    def scale_shift(self, sx, sy, ox, oy) -> "RectRegion":
        """Image under (x, y) -> (sx*x + ox, sy*y + oy) with sx, sy > 0."""
        if sign_at(sx, AXIS_X) <= 0 or sign_at(sy, AXIS_Y) <= 0:
            raise ValueError("scale factors must be positive")
        return RectRegion.from_rects(
            self.poly,
            [
                ExactRect(sx * r.x0 + ox, sx * r.x1 + ox, sy * r.y0 + oy, sy * r.y1 + oy)
                for r in self.rects
            ],
        )

    def contains_region(self, other: "RectRegion") -> bool:
        """other ⊆ self up to measure zero."""
        return other.subtract(self).is_empty()

    # -- point classification -------------------------------------------------

    def classify_point(self, p: ExactPoint2) -> str:
        """'interior', 'boundary', or 'outside' — exact."""
        slabs = self.slabs
        n = len(slabs)
        for i, (x0, x1, ys) in enumerate(slabs):
            c0 = compare_at(p.x, x0, AXIS_X)
            if c0 < 0:
                return "outside"
            c1 = compare_at(p.x, x1, AXIS_X)
            if c1 > 0:
                continue
            if c0 > 0 and c1 < 0:
                return _classify_y(ys, p.y)
            if c0 == 0:
                left = None
                if i > 0 and slabs[i - 1][1] == x0:
                    left = slabs[i - 1][2]
                return _edge_classify(left, ys, p.y)
            # c1 == 0: right edge of this slab
            right = None
            if i + 1 < n and slabs[i + 1][0] == x1:
                right = slabs[i + 1][2]
            return _edge_classify(ys, right, p.y)
        return "outside"

    # -- measurements (annotations only) --------------------------------------

    def area_enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """Rational interval containing the area, of width at most `width`.

        Areas mix the two embeddings, so they are not field elements; this
        is the exact-enclosure substitute for identity checks on areas.
        """
        rects = self.rects
        if not rects:
            return (Fraction(0), Fraction(0))
        w = width / (len(rects) * 8)
        while True:
            lo_total = Fraction(0)
            hi_total = Fraction(0)
            for r in rects:
                wlo, whi = enclose_at(r.x1 - r.x0, AXIS_X, w)
                hlo, hhi = enclose_at(r.y1 - r.y0, AXIS_Y, w)
                wlo, hlo = max(wlo, Fraction(0)), max(hlo, Fraction(0))
                lo_total += wlo * hlo
                hi_total += whi * hhi
            if hi_total - lo_total <= width:
                return (lo_total, hi_total)
            w /= 4

    def approx_area(self) -> float:
        lo, hi = self.area_enclosure(Fraction(1, 10**12))
        return float((lo + hi) / 2)


def _fuse_slabs(raw_slabs) -> tuple:
    """Fuse contiguous slabs with identical y-structure."""
    fused = []
    for x0, x1, ys in raw_slabs:
        if fused and fused[-1][1] == x0 and fused[-1][2] == ys:
            fused[-1][1] = x1
        else:
            fused.append([x0, x1, ys])
    return tuple((x0, x1, ys) for x0, x1, ys in fused)


def _rect_minus_rect(r: ExactRect, s: ExactRect) -> list[ExactRect]:
    ox0 = _emax(r.x0, s.x0, AXIS_X)
    ox1 = _emin(r.x1, s.x1, AXIS_X)
    oy0 = _emax(r.y0, s.y0, AXIS_Y)
    oy1 = _emin(r.y1, s.y1, AXIS_Y)
    if compare_at(ox0, ox1, AXIS_X) >= 0 or compare_at(oy0, oy1, AXIS_Y) >= 0:
        return [r]
    out = []
    for cand in (
        _maybe_rect(r.x0, ox0, r.y0, r.y1),
        _maybe_rect(ox1, r.x1, r.y0, r.y1),
        _maybe_rect(ox0, ox1, r.y0, oy0),
        _maybe_rect(ox0, ox1, oy1, r.y1),
    ):
        if cand is not None:
            out.append(cand)
    return out


def _classify_y(ys, y: FieldElement) -> str:
    for y0, y1 in ys:
        c0 = compare_at(y, y0, AXIS_Y)
        if c0 < 0:
            return "outside"
        c1 = compare_at(y, y1, AXIS_Y)
        if c1 > 0:
            continue
        return "interior" if c0 > 0 and c1 < 0 else "boundary"
    return "outside"


def _strictly_inside(ys, y: FieldElement) -> bool:
    return ys is not None and _classify_y(ys, y) == "interior"


def _member(ys, y: FieldElement) -> bool:
    return ys is not None and _classify_y(ys, y) != "outside"


def _edge_classify(left_ys, right_ys, y: FieldElement) -> str:
    if _strictly_inside(left_ys, y) and _strictly_inside(right_ys, y):
        return "interior"
    if _member(left_ys, y) or _member(right_ys, y):
        return "boundary"
    return "outside"


# ---------------------------------------------------------------------------
# Operation-style aliases


def region_intersect(r: RectRegion, s: RectRegion) -> RectRegion:
    return r.intersect(s)


def region_subtract(r: RectRegion, s: RectRegion) -> RectRegion:
    return r.subtract(s)


def region_translate(r: RectRegion, v: tuple[FieldElement, FieldElement]) -> RectRegion:
    return r.translate(v[0], v[1])


def region_equal(r: RectRegion, s: RectRegion) -> bool:
    return r == s


# ---------------------------------------------------------------------------
# Wire format


def rect_to_json(r: ExactRect) -> dict:
    return {
        "x0": element_to_json(r.x0),
        "x1": element_to_json(r.x1),
        "y0": element_to_json(r.y0),
        "y1": element_to_json(r.y1),
        "approx": list(r.approx()),
    }


def rect_from_json(poly: CubicPoly, d: dict) -> ExactRect:
    return ExactRect(
        element_from_json(poly, d["x0"]),
        element_from_json(poly, d["x1"]),
        element_from_json(poly, d["y0"]),
        element_from_json(poly, d["y1"]),
    )


def region_to_json(r: RectRegion) -> list[dict]:
    return [rect_to_json(x) for x in r.rects]


def region_from_json(poly: CubicPoly, data) -> RectRegion:
    return RectRegion.from_rects(poly, [rect_from_json(poly, d) for d in data])
