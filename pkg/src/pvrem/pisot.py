"""The companion-matrix monoid, its words, and their exact eigendata.

Generators are the integer matrices M_n = [[0,1,0],[0,0,1],[1,-n,n+1]] for
n >= 6; a word is a product M_{n_L} ... M_{n_1}, written left to right in
that display order.  Every word has determinant one, an irreducible cubic
characteristic polynomial, and eigenvalues 0 < l1 < l2 < 1 < l3; the checks
in this module certify those facts instance by instance with exact
arithmetic instead of assuming them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .numberfield import (
    CubicPoly,
    DomainError,
    FieldElement,
    RootIsolation,
    count_roots,
    gen,
    get_isolation,
    poly_for_generator,
)

LETTER_CAP = 10**6


class DegenerateEigenvector(RuntimeError):
    """Eigenvector has vanishing leading coordinate; cannot normalize."""


@dataclass(frozen=True)
class Mat3:
    """Immutable 3x3 integer matrix."""

    rows: tuple[tuple[int, int, int], ...]

    @classmethod
    def of(cls, rows) -> "Mat3":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def identity(cls) -> "Mat3":
        return cls.of([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def __mul__(self, other: "Mat3") -> "Mat3":
        a, b = self.rows, other.rows
        return Mat3.of(
            [[sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        )

    def apply(self, v) -> tuple:
        """Matrix times column vector; works for int and field entries."""
        return tuple(
            self.rows[i][0] * v[0] + self.rows[i][1] * v[1] + self.rows[i][2] * v[2]
            for i in range(3)
        )

    def transpose(self) -> "Mat3":
        return Mat3.of([[self.rows[j][i] for j in range(3)] for i in range(3)])

    def det(self) -> int:
        r = self.rows
        return (
            r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
        )

    def trace(self) -> int:
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def minor(self, i: int, j: int) -> int:
        """Determinant of the 2x2 submatrix with row i and column j deleted."""
        rs = [r for k, r in enumerate(self.rows) if k != i]
        cols = [c for c in range(3) if c != j]
        return rs[0][cols[0]] * rs[1][cols[1]] - rs[0][cols[1]] * rs[1][cols[0]]

    def principal_minor_sum(self) -> int:
        return self.minor(0, 0) + self.minor(1, 1) + self.minor(2, 2)

    def adjugate(self) -> "Mat3":
        return Mat3.of(
            [[(-1) ** (i + j) * self.minor(j, i) for j in range(3)] for i in range(3)]
        )

    def inverse_unimodular(self) -> "Mat3":
        d = self.det()
        if d not in (1, -1):
            raise DomainError(f"determinant {d} is not ±1")
        adj = self.adjugate()
        if d == 1:
            return adj
        return Mat3.of([[-v for v in r] for r in adj.rows])

    def is_positive(self) -> bool:
        return all(v > 0 for r in self.rows for v in r)


def generator_matrix(n: int) -> Mat3:
    if n < 6:
        raise DomainError(f"generator index must be >= 6, got {n}")
    return Mat3.of([[0, 1, 0], [0, 0, 1], [1, -n, n + 1]])


S_MAT = Mat3.of([[1, 0, 0], [0, 1, 0], [0, 1, 1]])
A_MAT = Mat3.of([[0, 2, 1], [0, 1, 0], [1, 0, 0]])


def conjugations(n: int) -> tuple[Mat3, Mat3]:
    """The two nonnegative conjugates of M_n and its inverse.

    P_n = S^-1 M_n S and Q_n = A^-1 M_n^-1 A; both are primitive, certified
    here by the strict positivity of their cubes.
    """
    M = generator_matrix(n)
    P = Mat3.of([[0, 1, 0], [0, 1, 1], [1, 0, n]])
    Q = Mat3.of([[0, 1, 0], [0, 2, 1], [1, n - 5, n - 2]])
    assert P == S_MAT.inverse_unimodular() * M * S_MAT
    assert Q == A_MAT.inverse_unimodular() * M.inverse_unimodular() * A_MAT
    if not (P * P * P).is_positive():
        raise DomainError(f"P_{n} cube not positive")
    if not (Q * Q * Q).is_positive():
        raise DomainError(f"Q_{n} cube not positive")
    return P, Q


@dataclass(frozen=True)
class Word:
    """A product of generators, stored in display order (n_L, ..., n_1).

    The comma-separated text form "7,7,8,6" reads left to right as
    n_L, ..., n_1, i.e. the matrix product M_7 M_7 M_8 M_6 as written.
    Partial products W_k = M_{n_k} ... M_{n_1} therefore take the *last*
    k letters of the display tuple.
    """

    letters: tuple[int, ...]

    def __post_init__(self):
        if not self.letters:
            raise DomainError("word must be nonempty")
        for n in self.letters:
            if n < 6:
                raise DomainError(f"letter {n} below 6")
            if n > LETTER_CAP:
                raise DomainError(f"letter {n} above cap {LETTER_CAP}")

    @classmethod
    def parse(cls, text: str) -> "Word":
        try:
            letters = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise DomainError(f"cannot parse word {text!r}") from exc
        return cls(letters)

    @property
    def L(self) -> int:
        return len(self.letters)

    def letter(self, k: int) -> int:
        """n_k in the product indexing (k = 1 is the rightmost factor)."""
        return self.letters[self.L - k]

    def prefix_matrix(self, k: int) -> Mat3:
        """W_k = M_{n_k} ... M_{n_1}."""
        if not 1 <= k <= self.L:
            raise DomainError(f"stage {k} outside 1..{self.L}")
        return word_matrix_of_letters(self.letters[self.L - k :])

    def matrix(self) -> Mat3:
        return self.prefix_matrix(self.L)

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.letters)


def as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, int):
        return Word((w,))
    if isinstance(w, str):
        return Word.parse(w)
    return Word(tuple(w))


@lru_cache(maxsize=4096)
def word_matrix_of_letters(letters: tuple[int, ...]) -> Mat3:
    out = Mat3.identity()
    for n in letters:
        out = out * generator_matrix(n)
    return out


def word_matrix(word) -> Mat3:
    return as_word(word).matrix()


def char_poly(M: Mat3) -> CubicPoly:
    """x^3 - Tr(M) x^2 + b(M) x - 1 for a determinant-one matrix.

    b(M) is the sum of the three principal 2x2 minors (= the second
    elementary symmetric function of the eigenvalues).
    """
    if M.det() != 1:
        raise DomainError(f"determinant {M.det()} != 1")
    return CubicPoly(c0=-1, c1=M.principal_minor_sum(), c2=-M.trace())


# ---------------------------------------------------------------------------
# Reports


@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class PisotReport:
    word: Word
    poly: CubicPoly
    checks: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if not c.passed]


def check_pisot(word) -> PisotReport:
    """Certify 0 < l1 < l2 < 1 < l3 for the word's eigenvalues.

    Uses exact Sturm counts on the characteristic cubic: two roots in (0,1),
    one above 1, none at or below 0, with 0 and 1 certified non-roots.  Every
    word of the monoid is expected to pass; a failure here means an
    implementation fault, which is why this is a report, not an assumption.
    """
    word = as_word(word)
    q = char_poly(word.matrix())
    rep = PisotReport(word=word, poly=q)
    add = rep.checks.append
    disc = q.discriminant()
    add(CheckItem("discriminant_positive", disc > 0, f"disc={disc}"))
    add(CheckItem("irreducible", q.is_irreducible(), f"q(1)={q(1)}, q(-1)={q(-1)}"))
    add(CheckItem("q_at_0_negative", q(0) < 0, f"q(0)={q(0)}"))
    add(CheckItem("q_at_1_negative", q(1) < 0, f"q(1)={q(1)}"))
    if disc > 0:
        coeffs = q.coeffs()
        bound = 1 + max(abs(q.c0), abs(q.c1), abs(q.c2))
        in_unit = count_roots(coeffs, 0, 1)
        above = count_roots(coeffs, 1, bound)
        below = count_roots(coeffs, -bound, 0)
        add(CheckItem("two_roots_in_(0,1)", in_unit == 2, f"count={in_unit}"))
        add(CheckItem("one_root_above_1", above == 1, f"count={above}"))
        add(CheckItem("no_root_at_or_below_0", below == 0, f"count={below}"))
    return rep


@dataclass
class EigenData:
    """Defining cubic plus the normalized eigenvector (1, x, x').

    The eigenvector is solved once over the abstract field Q[t]/(q); reading
    its entries under root 1 gives xi_1 and under root 2 gives xi_2, so both
    eigenvectors share the same coefficient triples.  The relation
    W xi = t * xi holds exactly, coordinate by coordinate.
    """

    poly: CubicPoly
    xi: tuple[FieldElement, FieldElement, FieldElement]
    word: Word | None = None

    @property
    def x(self) -> FieldElement:
        return self.xi[1]

    @property
    def xp(self) -> FieldElement:
        return self.xi[2]

    @property
    def lam(self) -> FieldElement:
        return gen(self.poly)

    @property
    def roots(self) -> RootIsolation:
        return get_isolation(self.poly)


def _cross(u, v, poly) -> tuple[FieldElement, FieldElement, FieldElement]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def eigenvectors(word) -> EigenData:
    """Kernel of (W - t*I) over Q[t]/(q_W), scaled to leading coordinate 1.

    For a single generator this reproduces (1, t, t^2).  The result is
    verified exactly against W xi = t xi before being returned.
    """
    word = as_word(word)
    W = word.matrix()
    q = char_poly(W)
    lam = gen(q)
    one_e = FieldElement(q, 1)
    rows = [
        tuple(FieldElement(q, W.rows[i][j]) - (lam if i == j else 0) for j in range(3))
        for i in range(3)
    ]
    for i, j in ((0, 1), (0, 2), (1, 2)):
        v = _cross(rows[i], rows[j], q)
        if all(c.is_zero() for c in v):
            continue
        if v[0].is_zero():
            raise DegenerateEigenvector(f"leading coordinate vanishes for word {word}")
        inv = v[0].inverse()
        xi = (one_e, v[1] * inv, v[2] * inv)
        got = W.apply(xi)
        want = tuple(lam * c for c in xi)
        if all((a - b).is_zero() for a, b in zip(got, want)):
            return EigenData(poly=q, xi=xi, word=word)
    raise DegenerateEigenvector(f"no eigenvector found for word {word}")


# ---------------------------------------------------------------------------
# Structure checks used by the monoid argument


@dataclass
class MinorReport:
    word: Word
    conjugate: Mat3
    checks: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckItem]:
        return [c for c in self.checks if not c.passed]


# sign pattern of the inverse of the conjugated product: entries at these
# (row, col) positions are <= 0, all others >= 0
_NONPOS = {(0, 1), (1, 1), (2, 0), (2, 2)}


def monoid_minor_checks(word) -> MinorReport:
    """Exact integer checks on P = S^-1 W S that drive the eigenvalue bounds.

    Verifies b(P) < Tr(P), the principal-minor inequalities, the alternating
    sign pattern of P^-1, and the first-row dominance a_1j > 3 a_2j,
    a_1j > 3 a_3j of the absolute values of the inverse entries.
    """
    word = as_word(word)
    P = Mat3.identity()
    for n in word.letters:
        P = P * conjugations(n)[0]
    W = word.matrix()
    assert P == S_MAT.inverse_unimodular() * W * S_MAT
    rep = MinorReport(word=word, conjugate=P)
    add = rep.checks.append

    tr, b = P.trace(), P.principal_minor_sum()
    add(CheckItem("b_less_than_trace", b < tr, f"b={b}, tr={tr}"))
    add(CheckItem("minor11_le_entry33", P.minor(0, 0) <= P.rows[2][2],
                  f"[P]11={P.minor(0, 0)}, P33={P.rows[2][2]}"))
    add(CheckItem("minor22_nonpositive", P.minor(1, 1) <= 0, f"[P]22={P.minor(1, 1)}"))
    add(CheckItem("minor33_nonpositive", P.minor(2, 2) <= 0, f"[P]33={P.minor(2, 2)}"))

    Pinv = P.inverse_unimodular()
    pattern_ok = all(
        (v <= 0 if (i, j) in _NONPOS else v >= 0)
        for i, r in enumerate(Pinv.rows)
        for j, v in enumerate(r)
    )
    add(CheckItem("inverse_sign_pattern", pattern_ok, f"P^-1={Pinv.rows}"))

    a = [[abs(v) for v in r] for r in Pinv.rows]
    dom = all(a[0][j] > 3 * a[1][j] and a[0][j] > 3 * a[2][j] for j in range(3))
    add(CheckItem("inverse_first_row_dominance", dom, f"|P^-1|={a}"))
    return rep
