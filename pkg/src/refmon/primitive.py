"""Monoids presented by a finite set of primes with a transitive antisymmetric
relation: generators D, one relation e + f = f per related pair e < f
(self-pairs p < p are allowed and make p idempotent).

The canonical form keeps only the maximal primes of the support and caps
idempotent coefficients at one.  It is derived, not quoted from anywhere:
the tests gate it behind exhaustive agreement with the rewriting oracle on
the exported presentation.

Poset file format (UTF-8, `#` comments):

    poset <name>
    primes <id> <id> ...
    below <e> <f>        # meaning e is absorbed by f

Transitive closure is NOT taken automatically; non-transitive input is
rejected to force explicitness.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .presentation import Presentation, make_presentation
from .targets import INF, CertificateHom, NonnegIntegersWithInfinity, build_certificate
from .words import ParseError, Word


@dataclass(frozen=True)
class PrimePoset:
    primes: tuple[str, ...]
    below: frozenset  # pairs (e, f) meaning e < f; (p, p) allowed

    def __post_init__(self) -> None:
        ps = set(self.primes)
        if len(ps) != len(self.primes):
            raise ValueError("duplicate prime")
        for e, f in self.below:
            if e not in ps or f not in ps:
                raise ValueError(f"relation pair ({e!r}, {f!r}) uses unknown prime")
        for e, f in self.below:
            if e != f and (f, e) in self.below:
                raise ValueError(f"antisymmetry violated by pair ({e!r}, {f!r})")
        for e, f in self.below:
            for f2, g in self.below:
                if f2 == f and (e, g) not in self.below:
                    raise ValueError(f"transitivity violated by triple ({e!r}, {f!r}, {g!r})")

    def lt(self, e: str, f: str) -> bool:
        return (e, f) in self.below

    def idempotent(self, p: str) -> bool:
        return (p, p) in self.below


def validate_poset(primes, rel) -> PrimePoset:
    return PrimePoset(tuple(primes), frozenset(tuple(p) for p in rel))


@dataclass(frozen=True)
class PrimElem:
    """Canonical element: sorted (prime, coefficient) pairs, support an
    antichain, idempotent coefficients capped at 1."""

    poset: PrimePoset
    coeffs: tuple[tuple[str, int], ...]

    def coeff(self, p: str) -> int:
        for q, c in self.coeffs:
            if q == p:
                return c
        return 0

    def degree(self) -> int:
        return sum(c for _, c in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(p if c == 1 else f"{c}*{p}" for p, c in self.coeffs)

    def __str__(self) -> str:
        return self.format()


def normalize(poset: PrimePoset, raw) -> PrimElem:
    """Delete every supported prime strictly below another supported prime
    (one simultaneous pass; a fixed point since the relation is transitive),
    then cap idempotents at 1."""
    support = {p for p, c in dict(raw).items() if c}
    kept = {}
    for p in support:
        if any(q != p and poset.lt(p, q) for q in support):
            continue
        c = dict(raw)[p]
        kept[p] = 1 if poset.idempotent(p) else c
    return PrimElem(poset, tuple(sorted(kept.items())))


def prim_add(e1: PrimElem, e2: PrimElem) -> PrimElem:
    if e1.poset != e2.poset:
        raise ValueError("poset mismatch")
    acc = dict(e1.coeffs)
    for p, c in e2.coeffs:
        acc[p] = acc.get(p, 0) + c
    return normalize(e1.poset, acc)


def prim_equal(e1: PrimElem, e2: PrimElem) -> bool:
    if e1.poset != e2.poset:
        raise ValueError("poset mismatch")
    return e1.coeffs == e2.coeffs


def prim_leq(e1: PrimElem, e2: PrimElem) -> PrimElem | None:
    """Complement search: c with e1 + c = e2, coefficients bounded by
    max coefficient of e2 plus 1 (enough, since adding more of an absorbed or
    idempotent prime never changes the sum; validated against the oracle)."""
    if e1.poset != e2.poset:
        raise ValueError("poset mismatch")
    poset = e1.poset
    cap = max([c for _, c in e2.coeffs], default=0) + 1
    primes = poset.primes

    def rec(pos: int, acc: dict):
        if pos == len(primes):
            cand = normalize(poset, acc)
            if prim_equal(prim_add(e1, cand), e2):
                return cand
            return None
        for c in range(cap + 1):
            acc[primes[pos]] = c
            got = rec(pos + 1, acc)
            if got is not None:
                return got
        del acc[primes[pos]]
        return None

    return rec(0, {})


def presentation_of(poset: PrimePoset) -> Presentation:
    gi = {p: ix for ix, p in enumerate(poset.primes)}
    rels = []
    for e, f in sorted(poset.below):
        lhs = Word.of([(gi[e], 1), (gi[f], 1)])
        rhs = Word.single(gi[f])
        rels.append((lhs, rhs))
    return make_presentation("prim", list(poset.primes), rels)


def elem_word(e: PrimElem) -> Word:
    gi = {p: ix for ix, p in enumerate(e.poset.primes)}
    return Word.of([(gi[p], c) for p, c in e.coeffs])


def elem_from_word(poset: PrimePoset, w: Word) -> PrimElem:
    return normalize(poset, {poset.primes[i]: c for i, c in w.exps})


def prime_certificates(poset: PrimePoset) -> dict[str, CertificateHom]:
    """One separating certificate per prime p: counts p, absorbs everything
    strictly above p into infinity, ignores the rest.  Jointly these separate
    all distinct canonical forms (pick a maximal prime where they differ)."""
    p_pres = presentation_of(poset)
    target = NonnegIntegersWithInfinity()
    certs = {}
    for p in poset.primes:
        images = {}
        for q in poset.primes:
            if q == p:
                images[q] = INF if poset.idempotent(p) else 1
            elif poset.lt(p, q):
                images[q] = INF
            else:
                images[q] = 0
        certs[f"count_{p}"] = build_certificate(p_pres, target, images, f"count_{p}")
    return certs


def finite_subsystem(poset: PrimePoset, subset):
    """Restricted poset on a nonempty subset, plus the transition homomorphism
    into the full monoid induced by inclusion."""
    sub = tuple(p for p in poset.primes if p in set(subset))
    if not sub:
        raise ValueError("subset must be nonempty")
    sub_poset = PrimePoset(sub, frozenset((e, f) for e, f in poset.below if e in sub and f in sub))

    def transition(e: PrimElem) -> PrimElem:
        if e.poset != sub_poset:
            raise ValueError("element not over the restricted poset")
        return normalize(poset, dict(e.coeffs))

    return sub_poset, transition


def enumerate_elements(poset: PrimePoset, max_degree: int) -> list[PrimElem]:
    """All canonical elements with a raw representative of degree <= max_degree."""
    seen = []

    def rec(pos: int, left: int, acc: dict):
        if pos == len(poset.primes):
            e = normalize(poset, acc)
            if e not in seen:
                seen.append(e)
            return
        for c in range(left + 1):
            acc[poset.primes[pos]] = c
            rec(pos + 1, left - c, acc)

    rec(0, max_degree, {})
    return seen


def enumerate_posets(names) -> list[PrimePoset]:
    """Every transitive antisymmetric relation on the given primes (self-pairs
    included).  Exponential in len(names)**2; intended for small test sweeps."""
    names = tuple(names)
    pairs = [(e, f) for e in names for f in names]
    out = []
    for size in range(len(pairs) + 1):
        for chosen in combinations(pairs, size):
            try:
                out.append(PrimePoset(names, frozenset(chosen)))
            except ValueError:
                continue
    return out


def parse_poset(text: str) -> PrimePoset:
    primes: list[str] | None = None
    rel: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "poset":
            continue
        if key == "primes":
            if primes is not None:
                raise ParseError("duplicate primes line", lineno)
            primes = rest.split()
        elif key == "below":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError("expected: below <e> <f>", lineno)
            rel.append((parts[0], parts[1]))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if primes is None:
        raise ParseError("no primes line")
    try:
        return PrimePoset(tuple(primes), frozenset(rel))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_poset(poset: PrimePoset, name: str = "P") -> str:
    lines = [f"poset {name}", "primes " + " ".join(poset.primes)]
    lines += [f"below {e} {f}" for e, f in sorted(poset.below)]
    return "\n".join(lines) + "\n"
