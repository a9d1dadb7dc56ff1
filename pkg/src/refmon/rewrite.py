"""Bounded word-problem engine for finitely presented commutative monoids.

The congruence generated by the relations is explored breadth-first: a
relation side that embeds componentwise into a word may be replaced by the
other side, in either direction.  Classes are typically infinite, so every
answer is a three-valued Decision; `exhausted=True` means the returned set is
the entire congruence class.

Degree caps apply to intermediate words too: an equality whose shortest proof
passes through a high-degree word may come back Unknown.  That is documented
behaviour, not a bug.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .decisions import Decision, SearchBound
from .presentation import Presentation
from .words import Word


@dataclass(frozen=True)
class ClassResult:
    words: frozenset[Word]
    exhausted: bool
    # parent pointers for path extraction: word -> (previous word) or None for the root
    parents: dict | None = None
    root: Word | None = None


def _neighbors(p: Presentation, w: Word) -> Iterable[Word]:
    for rel in p.relations:
        for src, dst in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            if w.contains(src):
                yield w.sub(src).add(dst)


def enumerate_class(p: Presentation, w: Word, b: SearchBound) -> ClassResult:
    """Breadth-first closure of {w} under the relations, capped by b.

    exhausted is True iff no word was discarded for degree and the frontier
    was never truncated by max_class_size; in that case the returned set is
    the entire congruence class of w.
    """
    if w.degree() > b.max_degree:
        return ClassResult(frozenset([w]), exhausted=False, parents={w: None}, root=w)
    seen: dict[Word, Word | None] = {w: None}
    order = [w]
    frontier = [w]
    exhausted = True
    while frontier:
        nxt = []
        # deterministic order: lexicographic by (degree, exponent tuple)
        for cur in sorted(frontier, key=Word.sort_key):
            for new in _neighbors(p, cur):
                if new in seen:
                    continue
                if new.degree() > b.max_degree:
                    exhausted = False
                    continue
                if len(seen) >= b.max_class_size:
                    exhausted = False
                    continue
                seen[new] = cur
                order.append(new)
                nxt.append(new)
        frontier = nxt
    return ClassResult(frozenset(seen), exhausted, parents=seen, root=w)


class ClassCache:
    """Memoizes enumerate_class per (presentation, bound)."""

    def __init__(self, p: Presentation, b: SearchBound):
        self.p = p
        self.b = b
        self._cache: dict[Word, ClassResult] = {}

    def get(self, w: Word) -> ClassResult:
        if w not in self._cache:
            self._cache[w] = enumerate_class(self.p, w, self.b)
        return self._cache[w]


def _path_to(res: ClassResult, target: Word) -> list[Word]:
    path = [target]
    while res.parents[path[-1]] is not None:
        path.append(res.parents[path[-1]])
    path.reverse()
    return path


def decide_equal(
    p: Presentation,
    u: Word,
    v: Word,
    b: SearchBound,
    certs: Sequence = (),
    cache: ClassCache | None = None,
) -> Decision:
    """Bounded equality in the presented monoid.

    Holds carries a rewrite path u -> ... -> v.  Fails carries either a
    separating certificate homomorphism or the two exhausted, disjoint classes.
    """
    if u == v:
        return Decision.holds(witness=[u], note="raw-equal")
    for h in certs:
        if h.presentation is not p and h.presentation.gens != p.gens:
            raise ValueError("certificate over wrong presentation")
        iu, iv = h.apply(u), h.apply(v)
        if not h.target.eq(iu, iv):
            return Decision.fails(
                counterexample={"certificate": h.name, "image_u": iu, "image_v": iv},
                note="separated by certificate",
            )
    cache = cache or ClassCache(p, b)
    cu = cache.get(u)
    if v in cu.words:
        return Decision.holds(witness=_path_to(cu, v), note="rewrite path")
    cv = cache.get(v)
    meet = cu.words & cv.words
    if meet:
        m = min(meet, key=Word.sort_key)
        path = _path_to(cu, m) + list(reversed(_path_to(cv, m)))[1:]
        return Decision.holds(witness=path, note="rewrite path via common word")
    if cu.exhausted and cv.exhausted:
        return Decision.fails(
            counterexample={"class_u_size": len(cu.words), "class_v_size": len(cv.words)},
            note="exhausted disjoint classes",
        )
    return Decision.unknown(b)


def decide_leq(
    p: Presentation,
    u: Word,
    v: Word,
    b: SearchBound,
    cache: ClassCache | None = None,
) -> Decision:
    """Algebraic order: u <= v iff u + z = v for some z.

    Holds carries the complement word z (w - u for a class representative w of
    v that dominates u componentwise).
    """
    cache = cache or ClassCache(p, b)
    cv = cache.get(v)
    for w in sorted(cv.words, key=Word.sort_key):
        if w.contains(u):
            return Decision.holds(witness=w.sub(u), note=f"via representative")
    if cv.exhausted:
        return Decision.fails(counterexample={"class_v_size": len(cv.words)}, note="no dominating representative")
    return Decision.unknown(b)


def find_refinement(
    p: Presentation,
    a: Word,
    bw: Word,
    c: Word,
    d: Word,
    b: SearchBound,
    certs: Sequence = (),
    cache: ClassCache | None = None,
) -> Decision:
    """Search for a 2x2 refinement matrix for a + bw = c + d.

    Candidates: for class representatives ra of a and rc of c, split ra as
    z11 + z12 with z11 embedded in rc; z21 := rc - z11; then z22 ranges over
    rb - z21 for representatives rb of bw, and d = z12 + z22 is checked.
    The search is complete relative to the enumerated classes, so Fails is
    only returned when every involved class is exhausted and every candidate
    was rejected definitively.
    """
    cache = cache or ClassCache(p, b)
    pre = decide_equal(p, a.add(bw), c.add(d), b, certs, cache)
    if not pre.is_holds:
        raise ValueError("precondition a + b = c + d does not hold (or is unknown at this bound)")
    ca, cb, cc = cache.get(a), cache.get(bw), cache.get(c)
    all_definite = ca.exhausted and cb.exhausted and cc.exhausted
    for ra in sorted(ca.words, key=Word.sort_key):
        for rc in sorted(cc.words, key=Word.sort_key):
            for z11 in ra.meet(rc).subwords():
                z12 = ra.sub(z11)
                z21 = rc.sub(z11)
                for rb in sorted(cb.words, key=Word.sort_key):
                    if not rb.contains(z21):
                        continue
                    z22 = rb.sub(z21)
                    chk = decide_equal(p, z12.add(z22), d, b, certs, cache)
                    if chk.is_holds:
                        matrix = ((z11, z12), (z21, z22))
                        ver = verify_refinement(p, matrix, a, bw, c, d, b, certs, cache)
                        if ver.is_holds:
                            return Decision.holds(witness=matrix, note="verified refinement")
                        all_definite = False
                    elif chk.is_unknown:
                        all_definite = False
    if all_definite:
        return Decision.fails(note="search space exhausted, no refinement")
    return Decision.unknown(b)


def verify_refinement(
    p: Presentation,
    matrix,
    a: Word,
    bw: Word,
    c: Word,
    d: Word,
    b: SearchBound,
    certs: Sequence = (),
    cache: ClassCache | None = None,
) -> Decision:
    """Re-verify the four row/column equalities of a refinement matrix."""
    cache = cache or ClassCache(p, b)
    (z11, z12), (z21, z22) = matrix
    checks = [
        (z11.add(z12), a),
        (z21.add(z22), bw),
        (z11.add(z21), c),
        (z12.add(z22), d),
    ]
    for got, want in checks:
        dec = decide_equal(p, got, want, b, certs, cache)
        if not dec.is_holds:
            return dec
    return Decision.holds(witness=matrix)
