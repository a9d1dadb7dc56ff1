"""A uniform facade over the workbench's monoids for the property lab.

Every oracle exposes elements up to a degree bound, three-valued equal/leq,
total add, and zero.  Exact oracles (the ladder and bar monoids, free
monoids, primitive monoids) have canonical hashable elements and never answer
Unknown; presentation oracles delegate to the bounded rewriting engine and
may.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import primitive, wild
from .decisions import Decision, SearchBound
from .presentation import Presentation
from .rewrite import ClassCache, decide_equal, decide_leq, find_refinement
from .words import Word


@dataclass
class MonoidOracle:
    name: str
    zero: object
    add: Callable
    equal: Callable  # (x, y) -> Decision
    leq: Callable  # (x, y) -> Decision; Holds witness is a complement
    elements: Callable  # max_degree -> list
    # optional capabilities
    refine: Callable | None = None  # (a, b, c, d) -> Decision with matrix witness
    positive_state: Callable | None = None  # element -> positive rational; None if no state
    extended_elements: Callable | None = None  # larger candidate pool for decompositions
    exact: bool = False  # canonical hashable elements, decisions never Unknown
    key: Callable | None = None  # canonical hash key (exact oracles only)
    fmt: Callable = str

    def is_zero(self, x) -> Decision:
        return self.equal(x, self.zero)


def _exact_equal(eq):
    def f(x, y):
        return Decision.holds() if eq(x, y) else Decision.fails()

    return f


def _exact_leq(leq):
    def f(x, y):
        c = leq(x, y)
        return Decision.holds(witness=c) if c is not None else Decision.fails()

    return f


def ladder_oracle(level: int) -> MonoidOracle:
    """Exact oracle for the ladder monoid, elements enumerated up to `level`."""

    def refine(a, b, c, d):
        return Decision.holds(witness=wild.ladder_refine(a, b, c, d), note="exact refinement")

    def state(e: wild.LadderElem) -> Fraction:
        m, i, j, rungs = e.raised(e.level)
        total = Fraction(m + i + j, 2**e.level)
        for l, k in enumerate(rungs, start=1):
            total += Fraction(k, 2**l)
        return total

    return MonoidOracle(
        name=f"ladder(level={level})",
        zero=wild.LadderElem.zero(),
        add=lambda x, y: x.add(y),
        equal=_exact_equal(lambda x, y: x.equal(y)),
        leq=_exact_leq(lambda x, y: x.leq(y)),
        elements=lambda d: wild.enumerate_ladder(level, d),
        refine=refine,
        positive_state=state,
        extended_elements=lambda d: wild.enumerate_ladder(level + 2, d),
        exact=True,
        key=lambda e: e,
    )


def bar_oracle(level: int) -> MonoidOracle:
    """Exact oracle for the bar monoid.  Deliberately has no positive state:
    the monoid is not archimedean, and stable finiteness is established by
    exhaustive sweep instead."""

    def refine(a, b, c, d):
        return Decision.holds(witness=wild.bar_refine(a, b, c, d), note="exact refinement")

    return MonoidOracle(
        name=f"bar(level={level})",
        zero=wild.BarElem.zero(),
        add=lambda x, y: x.add(y),
        equal=_exact_equal(lambda x, y: x.equal(y)),
        leq=_exact_leq(lambda x, y: x.leq(y)),
        elements=lambda d: wild.enumerate_bar(level, d),
        refine=refine,
        extended_elements=lambda d: wild.enumerate_bar(level + 2, d),
        exact=True,
        key=lambda e: e,
    )


def free_oracle(rank: int) -> MonoidOracle:
    """The free commutative monoid of the given rank, as integer tuples."""

    zero = (0,) * rank

    def elements(max_degree: int):
        out = []

        def rec(pos, left, acc):
            if pos == rank:
                out.append(tuple(acc))
                return
            for c in range(left + 1):
                acc.append(c)
                rec(pos + 1, left - c, acc)
                acc.pop()

        rec(0, max_degree, [])
        return out

    def leq(x, y):
        if all(a <= b for a, b in zip(x, y)):
            return tuple(b - a for a, b in zip(x, y))
        return None

    def refine(a, b, c, d):
        if tuple(p + q for p, q in zip(a, b)) != tuple(p + q for p, q in zip(c, d)):
            raise ValueError("precondition a + b = c + d does not hold")
        z11 = tuple(min(p, q) for p, q in zip(a, c))
        z12 = tuple(p - m for p, m in zip(a, z11))
        z21 = tuple(q - m for q, m in zip(c, z11))
        z22 = tuple(p - q for p, q in zip(b, z21))
        return Decision.holds(witness=((z11, z12), (z21, z22)), note="free refinement")

    return MonoidOracle(
        name=f"free({rank})",
        zero=zero,
        add=lambda x, y: tuple(a + b for a, b in zip(x, y)),
        equal=_exact_equal(lambda x, y: x == y),
        leq=_exact_leq(leq),
        elements=elements,
        refine=refine,
        positive_state=lambda x: Fraction(sum(x)),
        exact=True,
        key=lambda e: e,
    )


def primitive_oracle(poset: primitive.PrimePoset, name: str = "prim") -> MonoidOracle:
    return MonoidOracle(
        name=name,
        zero=primitive.normalize(poset, {}),
        add=primitive.prim_add,
        equal=_exact_equal(primitive.prim_equal),
        leq=_exact_leq(primitive.prim_leq),
        elements=lambda d: primitive.enumerate_elements(poset, d),
        exact=True,
        key=lambda e: e.coeffs,
    )


def presentation_oracle(
    p: Presentation,
    bound: SearchBound,
    certs: Sequence = (),
) -> MonoidOracle:
    """Three-valued oracle over a finitely presented monoid via bounded
    rewriting; elements are raw words (not canonical)."""

    cache = ClassCache(p, bound)

    def elements(max_degree: int):
        out = []

        def rec(pos, left, acc):
            if pos == len(p.gens):
                out.append(Word.of([(i, c) for i, c in enumerate(acc) if c]))
                return
            for c in range(left + 1):
                acc.append(c)
                rec(pos + 1, left - c, acc)
                acc.pop()

        rec(0, max_degree, [])
        return out

    return MonoidOracle(
        name=p.name,
        zero=Word(),
        add=lambda x, y: x.add(y),
        equal=lambda x, y: decide_equal(p, x, y, bound, certs, cache),
        leq=lambda x, y: decide_leq(p, x, y, bound, cache),
        elements=elements,
        refine=lambda a, b, c, d: find_refinement(p, a, b, c, d, bound, certs, cache),
        exact=False,
        fmt=lambda w: w.format(p.gens),
    )
