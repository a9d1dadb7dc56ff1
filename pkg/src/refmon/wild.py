"""Exact arithmetic for the two wild refinement monoids of this workbench.

The *ladder monoid* is generated by x_l, y_l, z_l (l >= 0) and rungs a_l
(l >= 1), subject to

    x0 + y0 = x0 + z0
    y_l = y_{l+1} + a_{l+1}      z_l = z_{l+1} + a_{l+1}
    x_l = x_{l+1} + y_{l+1} = x_{l+1} + z_{l+1}

The *bar monoid* is its quotient by the o-ideal generated by the rungs:
generators xbar_l, ybar0, zbar0 with

    xbar0 + ybar0 = xbar0 + zbar0
    xbar_l = xbar_{l+1} + ybar0 = xbar_{l+1} + zbar0

Every element of the ladder monoid has a representation at some level n,

    m*x_n + i*y_n + j*z_n + sum_l k_l * a_l,

and two such representations at the same level denote the same element iff
(m = m' = 0, i = i', j = j', k = k') or (m = m' > 0, i + j = i' + j', k = k').
We store the unique canonical representative: j is folded into i whenever
m > 0, and the level is lowered greedily by inverting the raising rules.
Everything here is validated against the bounded rewriting oracle on the
truncated presentations (see tests); the order criterion and the congruence
closed forms are derived, not taken on faith.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .presentation import Presentation, make_presentation
from .targets import (
    INF,
    CertificateHom,
    FreeAbelian,
    FreeAbelianWithInfinity,
    NonnegIntegers,
    NonnegPlaneWithInfinity,
    NonnegRationals,
    PairMonoid,
    build_certificate,
    vec,
)
from .words import Word


# ---------------------------------------------------------------------------
# Ladder monoid elements


@dataclass(frozen=True)
class LadderElem:
    """Canonical element of the ladder monoid.

    level: n of the representation; m, i, j: coefficients of x_n, y_n, z_n;
    rungs: coefficients of a_1..a_n.  Raw field equality of canonical forms
    coincides with monoid equality (checked exhaustively against the oracle).
    """

    level: int
    m: int
    i: int
    j: int
    rungs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if min(self.level, self.m, self.i, self.j, *(self.rungs or (0,))) < 0:
            raise ValueError("negative coefficient")
        if len(self.rungs) != self.level:
            raise ValueError("rung vector length must equal level")

    @staticmethod
    def make(level: int, m: int, i: int, j: int, rungs: tuple[int, ...] = ()) -> "LadderElem":
        """Build and canonicalize."""
        rungs = tuple(rungs)
        if len(rungs) < level:
            rungs = rungs + (0,) * (level - len(rungs))
        if m > 0:
            i, j = i + j, 0
        while level >= 1:
            top = rungs[-1]
            if m > 0 and i == m + top:
                i = top
                level, rungs = level - 1, rungs[:-1]
            elif m == 0 and top == i + j:
                level, rungs = level - 1, rungs[:-1]
            else:
                break
        return LadderElem(level, m, i, j, rungs)

    # -- constructors for the named generators
    @staticmethod
    def zero() -> "LadderElem":
        return LadderElem(0, 0, 0, 0)

    @staticmethod
    def x(n: int) -> "LadderElem":
        return LadderElem.make(n, 1, 0, 0)

    @staticmethod
    def y(n: int) -> "LadderElem":
        return LadderElem.make(n, 0, 1, 0)

    @staticmethod
    def z(n: int) -> "LadderElem":
        return LadderElem.make(n, 0, 0, 1)

    @staticmethod
    def a(n: int) -> "LadderElem":
        if n < 1:
            raise ValueError("rungs start at 1")
        return LadderElem.make(n, 0, 0, 0, (0,) * (n - 1) + (1,))

    @staticmethod
    def unit() -> "LadderElem":
        """The order-unit x0 + y0."""
        return LadderElem.make(0, 1, 1, 0)

    def raised(self, target: int) -> tuple[int, int, int, tuple[int, ...]]:
        """Coefficients of this element represented at `target` >= level.

        One raising step: x_n = x_{n+1} + y_{n+1}, y_n = y_{n+1} + a_{n+1},
        z_n = z_{n+1} + a_{n+1}.
        """
        if target < self.level:
            raise ValueError("target level below stored level")
        m, i, j = self.m, self.i, self.j
        rungs = list(self.rungs)
        for _ in range(target - self.level):
            rungs.append(i + j)
            i = m + i
        return m, i, j, tuple(rungs)

    def raise_to(self, target: int) -> "RawLadder":
        m, i, j, rungs = self.raised(target)
        return RawLadder(target, m, i, j, rungs)

    def degree(self) -> int:
        return self.m + self.i + self.j + sum(self.rungs)

    def is_zero(self) -> bool:
        return self.degree() == 0

    def equal(self, other: "LadderElem") -> bool:
        """Raise-and-compare equality (agrees with canonical-form identity)."""
        n = max(self.level, other.level)
        m1, i1, j1, k1 = self.raised(n)
        m2, i2, j2, k2 = other.raised(n)
        if m1 != m2 or k1 != k2:
            return False
        if m1 == 0:
            return i1 == i2 and j1 == j2
        return i1 + j1 == i2 + j2

    def add(self, other: "LadderElem") -> "LadderElem":
        n = max(self.level, other.level)
        m1, i1, j1, k1 = self.raised(n)
        m2, i2, j2, k2 = other.raised(n)
        return LadderElem.make(n, m1 + m2, i1 + i2, j1 + j2, tuple(p + q for p, q in zip(k1, k2)))

    def scale(self, c: int) -> "LadderElem":
        if c < 0:
            raise ValueError("negative multiplier")
        return LadderElem.make(self.level, c * self.m, c * self.i, c * self.j, tuple(c * k for k in self.rungs))

    def leq(self, other: "LadderElem") -> "LadderElem | None":
        """Algebraic order; returns a complement witness c with self + c = other,
        or None.

        Derived criterion (validated against complement search on truncations):
        at the common level, m1 <= m2, rung coefficients componentwise <=, and
        i1 + j1 <= i2 + j2 when m2 > 0, respectively i1 <= i2 and j1 <= j2 when
        m2 = 0.
        """
        n = max(self.level, other.level)
        m1, i1, j1, k1 = self.raised(n)
        m2, i2, j2, k2 = other.raised(n)
        if any(p > q for p, q in zip(k1, k2)):
            return None
        dk = tuple(q - p for p, q in zip(k1, k2))
        if m2 == 0:
            if m1 == 0 and i1 <= i2 and j1 <= j2:
                return LadderElem.make(n, 0, i2 - i1, j2 - j1, dk)
            return None
        if m1 <= m2 and i1 + j1 <= i2 + j2:
            return LadderElem.make(n, m2 - m1, i2 + j2 - i1 - j1, 0, dk)
        return None

    def format(self) -> str:
        return _format(self.level, self.m, self.i, self.j, self.rungs, names=("x", "y", "z", "a"))

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class RawLadder:
    """A (possibly non-canonical) leveled representation; plumbing for refine
    and word conversion."""

    level: int
    m: int
    i: int
    j: int
    rungs: tuple[int, ...]

    def elem(self) -> LadderElem:
        return LadderElem.make(self.level, self.m, self.i, self.j, self.rungs)


# ---------------------------------------------------------------------------
# Bar monoid elements


@dataclass(frozen=True)
class BarElem:
    """Canonical element of the bar monoid.

    level: n; i, j: coefficients of ybar0, zbar0; k: coefficient of xbar_n.
    Canonical form: j folded into i when k > 0; level lowered while i >= k;
    level 0 when k = 0.
    """

    level: int
    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if min(self.level, self.i, self.j, self.k) < 0:
            raise ValueError("negative coefficient")

    @staticmethod
    def make(level: int, i: int, j: int, k: int) -> "BarElem":
        if k == 0:
            return BarElem(0, i, j, 0)
        i, j = i + j, 0
        while level >= 1 and i >= k:
            i -= k
            level -= 1
        return BarElem(level, i, j, k)

    @staticmethod
    def zero() -> "BarElem":
        return BarElem(0, 0, 0, 0)

    @staticmethod
    def xbar(n: int) -> "BarElem":
        return BarElem.make(n, 0, 0, 1)

    @staticmethod
    def ybar() -> "BarElem":
        return BarElem(0, 1, 0, 0)

    @staticmethod
    def zbar() -> "BarElem":
        return BarElem(0, 0, 1, 0)

    def raised(self, target: int) -> tuple[int, int, int]:
        """(i, j) coefficients at `target`; raising uses xbar_n = xbar_{n+1} + ybar0."""
        if target < self.level:
            raise ValueError("target level below stored level")
        return self.i + self.k * (target - self.level), self.j, self.k

    def degree(self) -> int:
        return self.i + self.j + self.k

    def is_zero(self) -> bool:
        return self.degree() == 0

    def equal(self, other: "BarElem") -> bool:
        n = max(self.level, other.level)
        i1, j1, k1 = self.raised(n)
        i2, j2, k2 = other.raised(n)
        if k1 != k2:
            return False
        if k1 == 0:
            return i1 == i2 and j1 == j2
        return i1 + j1 == i2 + j2

    def add(self, other: "BarElem") -> "BarElem":
        n = max(self.level, other.level)
        i1, j1, k1 = self.raised(n)
        i2, j2, k2 = other.raised(n)
        return BarElem.make(n, i1 + i2, j1 + j2, k1 + k2)

    def scale(self, c: int) -> "BarElem":
        if c < 0:
            raise ValueError("negative multiplier")
        return BarElem.make(self.level, c * self.i, c * self.j, c * self.k)

    def leq(self, other: "BarElem") -> "BarElem | None":
        """Derived order criterion: with k = xbar coefficient, self <= other iff
        k1 < k2, or k1 = k2 > 0 with i1 + j1 <= i2 + j2 (at a common level),
        or k1 = k2 = 0 with i1 <= i2 and j1 <= j2."""
        n = max(self.level, other.level)
        i1, j1, k1 = self.raised(n)
        i2, j2, k2 = other.raised(n)
        if k1 > k2:
            return None
        if k2 == 0:
            if i1 <= i2 and j1 <= j2:
                return BarElem.make(0, i2 - i1, j2 - j1, 0)
            return None
        if k1 == k2:
            if i1 + j1 <= i2 + j2:
                return BarElem.make(n, i2 + j2 - i1 - j1, 0, 0)
            return None
        # k1 < k2: raise until the y/z budget of `other` catches up
        gap = (i1 + j1) - (i2 + j2)
        t = 0 if gap <= 0 else -(-gap // (k2 - k1))
        i1t, j1t, _ = self.raised(n + t)
        i2t, j2t, _ = other.raised(n + t)
        return BarElem.make(n + t, (i2t + j2t) - (i1t + j1t), 0, k2 - k1)

    def format(self) -> str:
        return _format(self.level, self.k, self.i, self.j, None, names=("xbar", "ybar", "zbar", None))

    def __str__(self) -> str:
        return self.format()


def _format(level, m, i, j, rungs, names) -> str:
    xn, yn, zn, an = names
    parts = []

    def term(c, name):
        if c:
            parts.append(name if c == 1 else f"{c}*{name}")

    term(m, f"{xn}{level}")
    term(i, f"{yn}0" if an is None else f"{yn}{level}")
    term(j, f"{zn}0" if an is None else f"{zn}{level}")
    if rungs:
        for l, c in enumerate(rungs, start=1):
            term(c, f"{an}{l}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Refinement


def _min_refine(u1: int, u2: int, v1: int, v2: int) -> tuple[int, int, int, int]:
    """Refinement of u1 + u2 = v1 + v2 in the naturals."""
    z11 = min(u1, v1)
    return z11, u1 - z11, v1 - z11, u2 - (v1 - z11)


def _refine_triples(p1, p2, q1, q2):
    """Refine (m, i, j) triples at a common level under the leveled equality law.

    Returns (extra_levels, matrix): if extra_levels > 0 the caller must raise
    all inputs by that many levels and call again (matrix is None).  The
    normalization (which inputs play which role) is deterministic: rows and
    columns are swapped or transposed only as needed, preferring the identity.
    """
    triples = [p1, p2, q1, q2]
    if all(t[2] == 0 for t in triples):
        mm = _min_refine(p1[0], p2[0], q1[0], q2[0])
        ii = _min_refine(p1[1], p2[1], q1[1], q2[1])
        return 0, tuple((mm[s], ii[s], 0) for s in range(4))
    if all(t[0] == 0 for t in triples):
        ii = _min_refine(p1[1], p2[1], q1[1], q2[1])
        jj = _min_refine(p1[2], p2[2], q1[2], q2[2])
        return 0, tuple((0, ii[s], jj[s]) for s in range(4))

    # mixed case: one side must hold a (m=0, j>0) element at slot 2 and an
    # (m>0) element at slot 1
    transpose = not any(t[0] == 0 and t[2] > 0 for t in (p1, p2))
    if transpose:
        p1, p2, q1, q2 = q1, q2, p1, p2
    swap_p = p1[0] == 0
    if swap_p:
        p1, p2 = p2, p1
    swap_q = q1[0] == 0
    if swap_q:
        q1, q2 = q2, q1
    b10, b11, _ = p1
    _, b21, b22 = p2
    g10, g11, g12 = q1
    g20, g21, g22 = q2
    if g20 == 0:
        need = g21 + g22 - b11
        denom = b10
    else:
        need = g21 - b11
        denom = b10 - g20  # = g10 > 0
    if need > 0:
        return -(-need // denom), None
    if g20 == 0:
        z11 = (b10, b11 - g21 - g22, 0)
        z12 = (0, g21, g22)
    else:
        z11 = (g10, b11 - g21, 0)
        z12 = (g20, g21, 0)
    z21 = (0, b21, b22)
    z22 = (0, 0, 0)
    mat = [[z11, z12], [z21, z22]]
    if swap_q:
        mat[0].reverse()
        mat[1].reverse()
    if swap_p:
        mat.reverse()
    if transpose:
        mat = [[mat[0][0], mat[1][0]], [mat[0][1], mat[1][1]]]
    return 0, (mat[0][0], mat[0][1], mat[1][0], mat[1][1])


def ladder_refine(a: LadderElem, b: LadderElem, c: LadderElem, d: LadderElem):
    """Total refinement in the ladder monoid: a + b = c + d yields a 2x2 matrix
    of elements whose rows sum to a, b and columns to c, d.

    Follows the constructive proof that the monoid has refinement: split off
    the rung parts (free refinement), raise the level until the mixed-case
    formulas apply, and emit the matrix.  All four sums are re-verified.
    """
    if not a.add(b).equal(c.add(d)):
        raise ValueError("precondition a + b = c + d does not hold")
    zero = LadderElem.zero()
    if a.equal(c) and b.equal(d):
        return ((a, zero), (zero, b))
    if a.equal(d) and b.equal(c):
        return ((zero, a), (b, zero))
    n = max(e.level for e in (a, b, c, d))
    while True:
        raws = [e.raise_to(n) for e in (a, b, c, d)]
        triples = [(r.m, r.i, r.j) if r.m == 0 else (r.m, r.i + r.j, 0) for r in raws]
        extra, mat = _refine_triples(*triples)
        if extra == 0:
            break
        n += extra
    kvecs = [r.rungs for r in raws]
    kmat = [[None, None], [None, None]]
    for l in range(n):
        z11, z12, z21, z22 = _min_refine(kvecs[0][l], kvecs[1][l], kvecs[2][l], kvecs[3][l])
        for slot, val in zip(((0, 0), (0, 1), (1, 0), (1, 1)), (z11, z12, z21, z22)):
            row, col = slot
            cur = kmat[row][col] or ()
            kmat[row][col] = cur + (val,)
    entries = []
    for s in range(4):
        row, col = divmod(s, 2)
        m, i, j = mat[s]
        entries.append(LadderElem.make(n, m, i, j, kmat[row][col] or (0,) * n))
    matrix = ((entries[0], entries[1]), (entries[2], entries[3]))
    _verify_matrix(matrix, a, b, c, d)
    return matrix


def bar_refine(a: BarElem, b: BarElem, c: BarElem, d: BarElem):
    """Total refinement in the bar monoid (same scheme, no rung parts)."""
    if not a.add(b).equal(c.add(d)):
        raise ValueError("precondition a + b = c + d does not hold")
    zero = BarElem.zero()
    if a.equal(c) and b.equal(d):
        return ((a, zero), (zero, b))
    if a.equal(d) and b.equal(c):
        return ((zero, a), (b, zero))
    n = max(e.level for e in (a, b, c, d))
    while True:
        raised = [e.raised(n) for e in (a, b, c, d)]
        triples = [(k, i, j) if k == 0 else (k, i + j, 0) for i, j, k in raised]
        extra, mat = _refine_triples(*triples)
        if extra == 0:
            break
        n += extra
    entries = [BarElem.make(n, i, j, k) for k, i, j in mat]
    matrix = ((entries[0], entries[1]), (entries[2], entries[3]))
    _verify_matrix(matrix, a, b, c, d)
    return matrix


def _verify_matrix(matrix, a, b, c, d) -> None:
    (z11, z12), (z21, z22) = matrix
    checks = [
        (z11.add(z12), a, "row 1"),
        (z21.add(z22), b, "row 2"),
        (z11.add(z21), c, "column 1"),
        (z12.add(z22), d, "column 2"),
    ]
    for got, want, label in checks:
        if not got.equal(want):
            raise AssertionError(f"refinement {label} does not verify: {got} != {want}")


# ---------------------------------------------------------------------------
# O-ideals, congruences, quotient map


class Ideal(Enum):
    RUNGS = "rungs"  # submonoid generated by all a_n (ladder)
    XFREE = "xfree"  # elements with no x-part (ladder)
    XFREE_BAR = "xfree-bar"  # elements with no xbar-part (bar)
    ZBAR_ONLY = "zbar-only"  # multiples of zbar0 (bar)


LADDER_IDEALS = (Ideal.RUNGS, Ideal.XFREE)
BAR_IDEALS = (Ideal.XFREE_BAR, Ideal.ZBAR_ONLY)


def ideal_member(e, ideal: Ideal) -> bool:
    if ideal in LADDER_IDEALS:
        if not isinstance(e, LadderElem):
            raise TypeError(f"{ideal.value} lives in the ladder monoid")
        if ideal is Ideal.RUNGS:
            return e.m == 0 and e.i == 0 and e.j == 0
        return e.m == 0
    if not isinstance(e, BarElem):
        raise TypeError(f"{ideal.value} lives in the bar monoid")
    if ideal is Ideal.XFREE_BAR:
        return e.k == 0
    return e.k == 0 and e.i == 0


def cong_mod_ideal(e1, e2, ideal: Ideal) -> bool:
    """e1 == e2 modulo the o-ideal: exists a, b in the ideal with e1+a = e2+b.

    Closed forms (derived; validated by bounded a,b-search on truncations):
    RUNGS: equal bar-images; XFREE: equal x-coefficients; XFREE_BAR: equal
    xbar-coefficients; ZBAR_ONLY: equal xbar-coefficients and, when those are
    zero, equal ybar0-coefficients.
    """
    if ideal in LADDER_IDEALS:
        if not (isinstance(e1, LadderElem) and isinstance(e2, LadderElem)):
            raise TypeError(f"{ideal.value} lives in the ladder monoid")
        if ideal is Ideal.RUNGS:
            return to_bar(e1).equal(to_bar(e2))
        return e1.m == e2.m
    if not (isinstance(e1, BarElem) and isinstance(e2, BarElem)):
        raise TypeError(f"{ideal.value} lives in the bar monoid")
    if ideal is Ideal.XFREE_BAR:
        return e1.k == e2.k
    if e1.k != e2.k:
        return False
    return e1.k > 0 or e1.i == e2.i


def to_bar(e: LadderElem) -> BarElem:
    """The quotient map: drop the rungs; x_n, y_n, z_n map to xbar_n, ybar0, zbar0."""
    return BarElem.make(e.level, e.i, e.j, e.m)


# ---------------------------------------------------------------------------
# Truncated presentations and the standard certificates


@lru_cache(maxsize=None)
def m0_presentation() -> Presentation:
    """The level-0 monoid on x0, y0, z0 with the single mixing relation."""
    w = Word.of
    return make_presentation(
        "M0", ["x0", "y0", "z0"], [(w([(0, 1), (1, 1)]), w([(0, 1), (2, 1)]))]
    )


@lru_cache(maxsize=None)
def truncation_presentation(n: int, kind: str = "ladder") -> Presentation:
    """Finitely presented truncation at level n (the oracle domain).

    kind "ladder": generators x0,y0,z0, then a_l,x_l,y_l,z_l for l <= n, with
    the defining relations restricted to levels below n.  kind "bar":
    generators xbar0, ybar0, zbar0, xbar1..xbarn.
    """
    if n < 1:
        raise ValueError("truncation level must be >= 1")
    if kind == "ladder":
        names = ["x0", "y0", "z0"]
        for l in range(1, n + 1):
            names += [f"a{l}", f"x{l}", f"y{l}", f"z{l}"]
        gi = {nm: ix for ix, nm in enumerate(names)}

        def w(*pairs):
            return Word.of([(gi[nm], c) for nm, c in pairs])

        rels = [(w(("x0", 1), ("y0", 1)), w(("x0", 1), ("z0", 1)))]
        for l in range(n):
            rels.append((w((f"y{l}", 1)), w((f"y{l+1}", 1), (f"a{l+1}", 1))))
            rels.append((w((f"z{l}", 1)), w((f"z{l+1}", 1), (f"a{l+1}", 1))))
            rels.append((w((f"x{l}", 1)), w((f"x{l+1}", 1), (f"y{l+1}", 1))))
            rels.append((w((f"x{l}", 1)), w((f"x{l+1}", 1), (f"z{l+1}", 1))))
        return make_presentation(f"ladder{n}", names, rels)
    if kind == "bar":
        names = ["xbar0", "ybar0", "zbar0"] + [f"xbar{l}" for l in range(1, n + 1)]
        gi = {nm: ix for ix, nm in enumerate(names)}

        def w(*pairs):
            return Word.of([(gi[nm], c) for nm, c in pairs])

        rels = [(w(("xbar0", 1), ("ybar0", 1)), w(("xbar0", 1), ("zbar0", 1)))]
        for l in range(n):
            rels.append((w((f"xbar{l}", 1)), w((f"xbar{l+1}", 1), ("ybar0", 1))))
            rels.append((w((f"xbar{l}", 1)), w((f"xbar{l+1}", 1), ("zbar0", 1))))
        return make_presentation(f"bar{n}", names, rels)
    raise ValueError(f"unknown kind {kind!r}")


def ladder_word(e: LadderElem, n: int) -> Word:
    """Word for e over truncation_presentation(n, 'ladder'); requires e.level <= n."""
    p = truncation_presentation(n, "ladder")
    m, i, j, rungs = e.raised(n)
    pairs = [(p.gens.index(f"x{n}"), m), (p.gens.index(f"y{n}"), i), (p.gens.index(f"z{n}"), j)]
    pairs += [(p.gens.index(f"a{l}"), c) for l, c in enumerate(rungs, start=1)]
    return Word.of(pairs)


def bar_word(e: BarElem, n: int) -> Word:
    p = truncation_presentation(n, "bar")
    i, j, k = e.raised(n)
    return Word.of([(p.gens.index(f"xbar{n}"), k), (p.gens.index("ybar0"), i), (p.gens.index("zbar0"), j)])


def ladder_from_word(w: Word, n: int) -> LadderElem:
    """Interpret a word over the level-n truncation presentation as an element."""
    p = truncation_presentation(n, "ladder")
    acc = LadderElem.zero()
    for idx, exp in w.exps:
        name = p.gens.names[idx]
        kind, lvl = name[0], int(name[1:])
        gen = {"x": LadderElem.x, "y": LadderElem.y, "z": LadderElem.z, "a": LadderElem.a}[kind](lvl)
        acc = acc.add(gen.scale(exp))
    return acc


def bar_from_word(w: Word, n: int) -> BarElem:
    p = truncation_presentation(n, "bar")
    acc = BarElem.zero()
    for idx, exp in w.exps:
        name = p.gens.names[idx]
        if name.startswith("xbar"):
            gen = BarElem.xbar(int(name[4:]))
        elif name == "ybar0":
            gen = BarElem.ybar()
        else:
            gen = BarElem.zbar()
        acc = acc.add(gen.scale(exp))
    return acc


@lru_cache(maxsize=None)
def standard_certificates(n: int, kind: str = "ladder") -> dict[str, CertificateHom]:
    """The separating homomorphisms for the level-n truncation.

    ladder: "state" (positive state into the nonnegative rationals, halving per
    level), "xcount" (counts the x-part), "yz_split" (separates y from z when
    no x is present), "xmix" (pins the y/z budget when an x is present),
    "rung_basis" (sends rungs to independent basis vectors).
    bar: "pair_state", "xcount_bar", "yz_split_bar".
    """
    p = truncation_presentation(n, kind)
    certs: dict[str, CertificateHom] = {}
    if kind == "ladder":
        img_s = {}
        img_f = {}
        img_g = {}
        img_h = {}
        img_r = {}
        for name in p.gens.names:
            letter, l = name[0], int(name[1:])
            img_s[name] = Fraction(1, 2**l)
            img_f[name] = 1 if letter == "x" else 0
            if letter == "x":
                img_g[name] = INF
                img_r[name] = INF
                img_h[name] = vec(**{"b": -l, **{f"a{t}": t - l - 1 for t in range(1, l + 1)}})
            elif letter in ("y", "z"):
                base = "b" if letter == "y" else "c"
                img_g[name] = vec(**{base: 1, **{f"a{t}": 1 for t in range(1, l + 1)}})
                img_r[name] = INF
                img_h[name] = vec(**{"b": 1, **{f"a{t}": 1 for t in range(1, l + 1)}})
            else:  # rungs
                img_g[name] = vec(**{f"a{l}": -1})
                img_r[name] = vec(**{f"a{l}": 1})
                img_h[name] = vec(**{f"a{l}": -1})
        certs["state"] = build_certificate(p, NonnegRationals(), img_s, "state")
        certs["xcount"] = build_certificate(p, NonnegIntegers(), img_f, "xcount")
        certs["yz_split"] = build_certificate(p, FreeAbelianWithInfinity(), img_g, "yz_split")
        certs["xmix"] = build_certificate(p, FreeAbelian(), img_h, "xmix")
        certs["rung_basis"] = build_certificate(p, FreeAbelianWithInfinity(), img_r, "rung_basis")
    else:
        img_t = {"ybar0": (1, 0), "zbar0": (1, 0)}
        img_f = {"ybar0": 0, "zbar0": 0}
        img_g = {"ybar0": (1, 0), "zbar0": (0, 1)}
        for l in range(n + 1):
            img_t[f"xbar{l}"] = (1 - l, 1)
            img_f[f"xbar{l}"] = 1
            img_g[f"xbar{l}"] = INF
        certs["pair_state"] = build_certificate(p, PairMonoid(), img_t, "pair_state")
        certs["xcount_bar"] = build_certificate(p, NonnegIntegers(), img_f, "xcount_bar")
        certs["yz_split_bar"] = build_certificate(p, NonnegPlaneWithInfinity(), img_g, "yz_split_bar")
    return certs


# ---------------------------------------------------------------------------
# Enumeration and term parsing


def _tuples(total_vars: int, max_degree: int) -> Iterator[tuple[int, ...]]:
    if total_vars == 0:
        yield ()
        return
    for first in range(max_degree + 1):
        for rest in _tuples(total_vars - 1, max_degree - first):
            yield (first,) + rest


def enumerate_ladder(max_level: int, max_degree: int) -> list[LadderElem]:
    """All canonical ladder elements of level <= max_level and degree <= max_degree."""
    out = []
    seen = set()
    for n in range(max_level + 1):
        for t in _tuples(3 + n, max_degree):
            e = LadderElem.make(n, t[0], t[1], t[2], t[3:])
            if e not in seen:
                seen.add(e)
                out.append(e)
    return out


def enumerate_bar(max_level: int, max_degree: int) -> list[BarElem]:
    out = []
    seen = set()
    for n in range(max_level + 1):
        for t in _tuples(3, max_degree):
            e = BarElem.make(n, t[0], t[1], t[2])
            if e not in seen:
                seen.add(e)
                out.append(e)
    return out


_TERM_RE = re.compile(r"^(?:(\d+)\s*\*\s*)?([A-Za-z]+)(\d*)$")


def parse_elem(text: str):
    """Parse `x0 + y0`, `3*a3`, `xbar2 + 2*ybar0`, `u`, `0` into an element.

    Returns a LadderElem or BarElem depending on the generator names used;
    mixing the two families is an error.
    """
    text = text.strip()
    if text == "0" or not text:
        return LadderElem.zero()
    ladder_terms: list[LadderElem] = []
    bar_terms: list[BarElem] = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"bad term {chunk!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        name, digits = m.group(2), m.group(3)
        if name == "u" and not digits:
            ladder_terms.append(LadderElem.unit().scale(coeff))
            continue
        if not digits:
            raise ValueError(f"generator {chunk!r} needs a level index")
        lvl = int(digits)
        if name in ("x", "y", "z", "a"):
            gen = {"x": LadderElem.x, "y": LadderElem.y, "z": LadderElem.z, "a": LadderElem.a}[name](lvl)
            ladder_terms.append(gen.scale(coeff))
        elif name in ("xbar", "ybar", "zbar"):
            if name == "xbar":
                gen = BarElem.xbar(lvl)
            elif name == "ybar":
                if lvl != 0:
                    raise ValueError("ybar only exists at index 0")
                gen = BarElem.ybar()
            else:
                if lvl != 0:
                    raise ValueError("zbar only exists at index 0")
                gen = BarElem.zbar()
            bar_terms.append(gen.scale(coeff))
        else:
            raise ValueError(f"unknown generator {chunk!r}")
    if ladder_terms and bar_terms:
        raise ValueError("cannot mix ladder and bar generators in one term")
    acc = BarElem.zero() if bar_terms else LadderElem.zero()
    for t in ladder_terms or bar_terms:
        acc = acc.add(t)
    return acc
