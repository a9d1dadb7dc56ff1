"""Bounded, three-valued property checkers over any MonoidOracle.

Universal properties are instantiated over the oracle's elements of degree at
most bound.max_degree, with multipliers up to bound.max_coefficient; a Holds
verdict therefore always means "no counterexample at this bound" and the
bound travels with the report.  Existential inner quantifiers are likewise
bounded, so a Fails on a forall-exists property means "no witness within the
bound" (documented semantics, printed in the note).

The archimedean property is special: enumeration can only refute it, so Holds
is granted solely on a positive-state certificate.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .decisions import Decision, SearchBound
from .oracles import MonoidOracle

CONICAL = "conical"
STABLY_FINITE = "stably-finite"
SEPARATIVE = "separative"
STRONGLY_SEPARATIVE = "strongly-separative"
CANCELLATIVE = "cancellative"
UNPERFORATED = "unperforated"
ANTISYMMETRIC = "antisymmetric"
ARCHIMEDEAN = "archimedean"
REFINEMENT = "refinement"
RIESZ_DECOMPOSITION = "riesz-decomposition"
RIESZ_INTERPOLATION = "riesz-interpolation"

PROPERTIES = (
    CONICAL,
    STABLY_FINITE,
    SEPARATIVE,
    STRONGLY_SEPARATIVE,
    CANCELLATIVE,
    UNPERFORATED,
    ANTISYMMETRIC,
    ARCHIMEDEAN,
    REFINEMENT,
    RIESZ_DECOMPOSITION,
    RIESZ_INTERPOLATION,
)

_SEED = 20260823


@dataclass
class PropertyReport:
    property: str
    verdict: Decision
    witnesses: list = field(default_factory=list)
    bound: SearchBound | None = None
    elapsed: float = 0.0

    def line(self, monoid: str = "") -> str:
        prefix = f"{monoid}: " if monoid else ""
        return f"{prefix}{self.property}: {self.verdict.verdict} ({self.verdict.note or 'at bound'})"


class _Sweep:
    """Accumulates Unknown verdicts during an exhaustive pass."""

    def __init__(self) -> None:
        self.unknowns = 0

    def definite(self, dec: Decision) -> bool | None:
        if dec.is_unknown:
            self.unknowns += 1
            return None
        return dec.is_holds

    def close(self, b: SearchBound, note: str) -> Decision:
        if self.unknowns:
            return Decision.unknown(b, note=f"{note}; {self.unknowns} unknown oracle verdicts")
        return Decision.holds(note=note)


def check_property(
    o: MonoidOracle,
    prop: str,
    b: SearchBound,
    samples: int = 200,
) -> PropertyReport:
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property id {prop!r}")
    t0 = time.monotonic()
    fn = _CHECKERS[prop]
    verdict, witnesses = fn(o, b, samples)
    return PropertyReport(prop, verdict, witnesses, b, time.monotonic() - t0)


def _elems(o: MonoidOracle, b: SearchBound):
    return o.elements(b.max_degree)


def _check_conical(o, b, samples):
    if o.positive_state is not None:
        return Decision.holds(note="positive state certificate"), []
    E = _elems(o, b)
    sw = _Sweep()
    for x in E:
        zx = sw.definite(o.is_zero(x))
        if zx:
            continue
        for y in E:
            s = o.add(x, y)
            got = sw.definite(o.is_zero(s))
            if got:
                return (
                    Decision.fails(counterexample=(x, y), note="x + y = 0 with x nonzero"),
                    [x, y],
                )
    return sw.close(b, "exhaustive at bound"), []


def _check_stably_finite(o, b, samples):
    if o.positive_state is not None:
        return Decision.holds(note="positive state certificate"), []
    E = _elems(o, b)
    sw = _Sweep()
    for x in E:
        for y in E:
            zy = sw.definite(o.is_zero(y))
            if zy or zy is None:
                continue
            got = sw.definite(o.equal(o.add(x, y), x))
            if got:
                return (
                    Decision.fails(counterexample=(x, y), note="x + y = x with y nonzero"),
                    [x, y],
                )
    return sw.close(b, "exhaustive at bound"), []


def _check_cancellative(o, b, samples):
    E = _elems(o, b)
    if o.exact:
        for z in E:
            groups: dict = {}
            for x in E:
                k = o.key(o.add(x, z))
                if k in groups and o.key(groups[k]) != o.key(x):
                    y = groups[k]
                    return (
                        Decision.fails(counterexample=(x, y, z), note="x + z = y + z with x != y"),
                        [x, y, z],
                    )
                groups.setdefault(k, x)
        return Decision.holds(note="exhaustive at bound"), []
    sw = _Sweep()
    for ix, x in enumerate(E):
        for y in E[ix + 1:]:
            eq = sw.definite(o.equal(x, y))
            if eq or eq is None:
                continue
            for z in E:
                got = sw.definite(o.equal(o.add(x, z), o.add(y, z)))
                if got:
                    return (
                        Decision.fails(counterexample=(x, y, z), note="x + z = y + z with x != y"),
                        [x, y, z],
                    )
    return sw.close(b, "exhaustive at bound"), []


def _check_separative(o, b, samples):
    E = _elems(o, b)
    if o.exact:
        groups: dict = {}
        for x in E:
            groups.setdefault(o.key(o.add(x, x)), []).append(x)
        for members in groups.values():
            for i, x in enumerate(members):
                for y in members[i + 1:]:
                    # 2x = 2y by grouping; need 2x = x + y as well
                    if o.key(o.add(x, y)) == o.key(o.add(x, x)) and not o.equal(x, y).is_holds:
                        return (
                            Decision.fails(counterexample=(x, y), note="2x = 2y = x + y with x != y"),
                            [x, y],
                        )
        return Decision.holds(note="exhaustive at bound"), []
    sw = _Sweep()
    for ix, x in enumerate(E):
        for y in E[ix + 1:]:
            c1 = sw.definite(o.equal(o.add(x, x), o.add(y, y)))
            if not c1:
                continue
            c2 = sw.definite(o.equal(o.add(x, x), o.add(x, y)))
            if not c2:
                continue
            eq = sw.definite(o.equal(x, y))
            if eq is False:
                return Decision.fails(counterexample=(x, y), note="2x = 2y = x + y with x != y"), [x, y]
    return sw.close(b, "exhaustive at bound"), []


def _check_strongly_separative(o, b, samples):
    E = _elems(o, b)
    sw = _Sweep()
    for x in E:
        xx = o.add(x, x)
        for y in E:
            got = sw.definite(o.equal(xx, o.add(x, y)))
            if not got:
                continue
            eq = sw.definite(o.equal(x, y))
            if eq is False:
                return Decision.fails(counterexample=(x, y), note="2x = x + y with x != y"), [x, y]
    return sw.close(b, "exhaustive at bound"), []


def _scaled(o, x, m: int):
    acc = o.zero
    for _ in range(m):
        acc = o.add(acc, x)
    return acc


def _check_unperforated(o, b, samples):
    E = _elems(o, b)
    sw = _Sweep()
    multiples = {m: [_scaled(o, x, m) for x in E] for m in range(2, b.max_coefficient + 1)}
    for ix, x in enumerate(E):
        for iy, y in enumerate(E):
            base = sw.definite(o.leq(x, y))
            if base or base is None:
                continue
            for m in range(2, b.max_coefficient + 1):
                got = sw.definite(o.leq(multiples[m][ix], multiples[m][iy]))
                if got:
                    return (
                        Decision.fails(counterexample=(x, y, m), note="m*x <= m*y but not x <= y"),
                        [x, y, m],
                    )
    return sw.close(b, "exhaustive at bound"), []


def _check_antisymmetric(o, b, samples):
    E = _elems(o, b)
    sw = _Sweep()
    for ix, x in enumerate(E):
        for y in E[ix + 1:]:
            d1 = sw.definite(o.leq(x, y))
            if not d1:
                continue
            d2 = sw.definite(o.leq(y, x))
            if not d2:
                continue
            eq = sw.definite(o.equal(x, y))
            if eq is False:
                return Decision.fails(counterexample=(x, y), note="x <= y <= x with x != y"), [x, y]
    return sw.close(b, "exhaustive at bound"), []


def _check_archimedean(o, b, samples):
    if o.positive_state is not None:
        return Decision.holds(note="positive state certificate"), []
    E = _elems(o, b)
    sw = _Sweep()
    # refutation needs n well past the degree bound, or small-y artifacts
    # like n*x <= degree_bound * x would masquerade as infinitesimals
    n_max = max(2, b.max_degree * b.max_coefficient)
    for x in E:
        zx = sw.definite(o.is_zero(x))
        if zx or zx is None:
            continue
        for y in E:
            ok = True
            for n in range(1, n_max + 1):
                got = sw.definite(o.leq(_scaled(o, x, n), y))
                if not got:
                    ok = False
                    break
            if ok:
                return (
                    Decision.fails(
                        counterexample=(x, y, n_max),
                        note="n*x <= y for all tested n with x nonzero",
                    ),
                    [x, y],
                )
    return Decision.unknown(b, note="enumeration cannot certify archimedean; no state available"), []


def _sample_equations(o, E, rng, samples):
    """Random valid equations a + b = c + d, built from the algebraic order:
    pick a, b; pick c below a + b; take d from the leq witness."""
    out = []
    attempts = 0
    while len(out) < samples and attempts < samples * 30:
        attempts += 1
        a, bb = rng.choice(E), rng.choice(E)
        s = o.add(a, bb)
        c = rng.choice(E)
        dec = o.leq(c, s)
        if dec.is_holds:
            out.append((a, bb, c, dec.witness))
    return out


def search_refine(o: MonoidOracle, a, bb, c, d, b: SearchBound) -> Decision:
    """Generic bounded refinement search for oracles with no native refine."""
    E = _elems(o, b)
    sw = _Sweep()
    cand11 = []
    for z in E:
        la = sw.definite(o.leq(z, a))
        if not la:
            continue
        lc = sw.definite(o.leq(z, c))
        if lc:
            cand11.append(z)
    for z11 in cand11:
        z12 = o.leq(z11, a).witness
        z21 = o.leq(z11, c).witness
        # complete inner search: any bounded z22 closing both remaining sums
        for z22 in E:
            if (
                o.equal(o.add(z21, z22), bb).is_holds
                and o.equal(o.add(z12, z22), d).is_holds
            ):
                return Decision.holds(witness=((z11, z12), (z21, z22)), note="searched refinement")
    if sw.unknowns:
        return Decision.unknown(b, note="refinement search inconclusive")
    return Decision.fails(note="no refinement with all four parts at bound")


def _check_refinement(o, b, samples):
    E = _elems(o, b)
    rng = random.Random(_SEED)
    eqs = _sample_equations(o, E, rng, samples)
    sw = _Sweep()
    for a, bb, c, d in eqs:
        if o.refine is not None:
            try:
                dec = o.refine(a, bb, c, d)
            except (AssertionError, ValueError) as exc:
                return Decision.fails(counterexample=(a, bb, c, d), note=str(exc)), [a, bb, c, d]
        else:
            dec = search_refine(o, a, bb, c, d, b)
        got = sw.definite(dec)
        if got is False:
            return Decision.fails(counterexample=(a, bb, c, d), note=dec.note), [a, bb, c, d]
    note = f"{len(eqs)} sampled equations refined"
    if sw.unknowns:
        return Decision.unknown(b, note=f"{note}; {sw.unknowns} unknown"), []
    return Decision.holds(note=note), []


def _check_riesz_decomposition(o, b, samples):
    E = _elems(o, b)
    rng = random.Random(_SEED + 1)
    sw = _Sweep()
    tried = 0
    attempts = 0
    while tried < max(1, samples // 4) and attempts < samples * 10:
        attempts += 1
        x, y1, y2 = rng.choice(E), rng.choice(E), rng.choice(E)
        hyp = sw.definite(o.leq(x, o.add(y1, y2)))
        if not hyp:
            continue
        tried += 1
        found = False
        l1 = [e for e in E if o.leq(e, y1).is_holds and o.leq(e, x).is_holds]
        for x1 in l1:
            x2 = o.leq(x1, x).witness
            if o.leq(x2, y2).is_holds:
                found = True
                break
            # the canonical complement may fail where another works: search
            for x2 in E:
                if o.equal(o.add(x1, x2), x).is_holds and o.leq(x2, y2).is_holds:
                    found = True
                    break
            if found:
                break
        if not found:
            return (
                Decision.fails(counterexample=(x, y1, y2), note="no bounded decomposition found"),
                [x, y1, y2],
            )
    note = f"{tried} sampled instances decomposed"
    if sw.unknowns:
        return Decision.unknown(b, note=f"{note}; {sw.unknowns} unknown"), []
    return Decision.holds(note=note), []


def _check_riesz_interpolation(o, b, samples):
    E = _elems(o, b)
    rng = random.Random(_SEED + 2)
    sw = _Sweep()
    tried = 0
    attempts = 0
    while tried < max(1, samples // 4) and attempts < samples * 10:
        attempts += 1
        y1, y2 = rng.choice(E), rng.choice(E)
        below = [e for e in E if o.leq(e, y1).is_holds and o.leq(e, y2).is_holds]
        if not below:
            continue
        x1, x2 = rng.choice(below), rng.choice(below)
        tried += 1
        found = False
        for z in E:
            if (
                o.leq(x1, z).is_holds
                and o.leq(x2, z).is_holds
                and o.leq(z, y1).is_holds
                and o.leq(z, y2).is_holds
            ):
                found = True
                break
        if not found:
            return (
                Decision.fails(counterexample=(x1, x2, y1, y2), note="no bounded interpolant found"),
                [x1, x2, y1, y2],
            )
    note = f"{tried} sampled instances interpolated"
    if sw.unknowns:
        return Decision.unknown(b, note=f"{note}; {sw.unknowns} unknown"), []
    return Decision.holds(note=note), []


_CHECKERS = {
    CONICAL: _check_conical,
    STABLY_FINITE: _check_stably_finite,
    SEPARATIVE: _check_separative,
    STRONGLY_SEPARATIVE: _check_strongly_separative,
    CANCELLATIVE: _check_cancellative,
    UNPERFORATED: _check_unperforated,
    ANTISYMMETRIC: _check_antisymmetric,
    ARCHIMEDEAN: _check_archimedean,
    REFINEMENT: _check_refinement,
    RIESZ_DECOMPOSITION: _check_riesz_decomposition,
    RIESZ_INTERPOLATION: _check_riesz_interpolation,
}


# ---------------------------------------------------------------------------
# Irreducibles, pedestal, o-ideals, quotients


def irreducibles(o: MonoidOracle, b: SearchBound):
    """Elements with no nontrivial bounded decomposition.

    Uses the order: x is decomposable iff some nonzero a != x has a <= x (the
    complement witness is then nonzero in a stably finite monoid).  The
    candidate pool is extended beyond the element bound when the oracle offers
    it, so that decompositions through larger representations are seen.
    Returns (found, unknown) lists.
    """
    E = _elems(o, b)
    pool_src = o.extended_elements if o.extended_elements is not None else o.elements
    pool = [a for a in pool_src(b.max_degree) if not o.is_zero(a).is_holds]
    found, unknown = [], []
    for x in E:
        if o.is_zero(x).is_holds:
            continue
        # x = x + x is a decomposition the a != x scan below cannot see
        idem = o.equal(o.add(x, x), x)
        if idem.is_holds:
            continue
        verdict = None if idem.is_unknown else True
        for a in pool:
            la = o.leq(a, x)
            if la.is_unknown:
                verdict = None
                continue
            if not la.is_holds:
                continue
            eq = o.equal(a, x)
            if eq.is_unknown:
                verdict = None
            elif not eq.is_holds:
                verdict = False
                break
        if verdict is True:
            if not any(o.equal(x, y).is_holds for y in found):
                found.append(x)
        elif verdict is None:
            unknown.append(x)
    return found, unknown


def pedestal(o: MonoidOracle, b: SearchBound):
    """Generating set of the o-ideal generated by the irreducibles."""
    return irreducibles(o, b)[0]


def o_ideal_closure(o: MonoidOracle, gens, b: SearchBound):
    """Bounded membership predicate for the o-ideal generated by `gens`:
    x is a member iff x <= some combination of the generators (coefficients
    up to max_coefficient)."""
    combos = [o.zero]
    for g in gens:
        combos = [o.add(c, _scaled(o, g, n)) for c in combos for n in range(b.max_coefficient + 1)]

    def member(x) -> Decision:
        unknowns = 0
        for s in combos:
            dec = o.leq(x, s)
            if dec.is_holds:
                return Decision.holds(witness=s, note="below a generator combination")
            if dec.is_unknown:
                unknowns += 1
        if unknowns:
            return Decision.unknown(b)
        return Decision.fails(note=f"not below any of {len(combos)} combinations at bound")

    return member


def quotient_equal(o: MonoidOracle, member, x, y, b: SearchBound) -> Decision:
    """x == y modulo the o-ideal given by `member`: bounded search for ideal
    elements a, b with x + a = y + b."""
    J = []
    unknowns = 0
    for e in _elems(o, b):
        dec = member(e)
        if dec.is_holds:
            J.append(e)
        elif dec.is_unknown:
            unknowns += 1
    for a in J:
        xa = o.add(x, a)
        for bb in J:
            dec = o.equal(xa, o.add(y, bb))
            if dec.is_holds:
                return Decision.holds(witness=(a, bb), note="ideal shift found")
            if dec.is_unknown:
                unknowns += 1
    if unknowns:
        return Decision.unknown(b)
    return Decision.fails(note="no ideal shift at bound")


def max_antisym_equal(o: MonoidOracle, x, y, b: SearchBound) -> Decision:
    """Congruence of the maximal antisymmetric quotient: x == y iff x <= y <= x."""
    d1, d2 = o.leq(x, y), o.leq(y, x)
    if d1.is_holds and d2.is_holds:
        return Decision.holds(witness=(d1.witness, d2.witness))
    if d1.is_fails or d2.is_fails:
        return Decision.fails(note="order separates the pair")
    return Decision.unknown(b)


def max_cancel_equal(o: MonoidOracle, x, y, b: SearchBound) -> Decision:
    """Congruence of the maximal cancellative quotient: x ~ y iff x+z = y+z
    for some z (bounded search)."""
    unknowns = 0
    for z in _elems(o, b):
        dec = o.equal(o.add(x, z), o.add(y, z))
        if dec.is_holds:
            return Decision.holds(witness=z)
        if dec.is_unknown:
            unknowns += 1
    if unknowns:
        return Decision.unknown(b)
    return Decision.fails(note="no cancelling element at bound")


def wildness_certificate(o: MonoidOracle, b: SearchBound, samples: int = 200) -> PropertyReport:
    """Evidence of wildness: stable finiteness (state or exhaustive) together
    with a cancellation counterexample, or a separativity/unperforation
    failure.  Never certifies tameness."""
    t0 = time.monotonic()
    sf = check_property(o, STABLY_FINITE, b, samples)
    if sf.verdict.is_holds:
        canc = check_property(o, CANCELLATIVE, b, samples)
        if canc.verdict.is_fails:
            verdict = Decision.holds(
                witness={"stably_finite": sf.verdict.note, "noncancellation": canc.verdict.counterexample},
                note="stably finite but not cancellative",
            )
            return PropertyReport("wildness", verdict, canc.witnesses, b, time.monotonic() - t0)
    for prop in (SEPARATIVE, UNPERFORATED):
        rep = check_property(o, prop, b, samples)
        if rep.verdict.is_fails:
            verdict = Decision.holds(
                witness={prop: rep.verdict.counterexample},
                note=f"{prop} fails",
            )
            return PropertyReport("wildness", verdict, rep.witnesses, b, time.monotonic() - t0)
    return PropertyReport(
        "wildness",
        Decision.unknown(b, note="no wildness evidence at bound (consistent with tame)"),
        [],
        b,
        time.monotonic() - t0,
    )


def further_tame_checks(o: MonoidOracle, b: SearchBound, samples: int = 200):
    """Two consequences of tameness, checked on sampled instances.

    Clause 1: a + c <= b + c implies some a1 with a1 + c = c and a <= b + a1.
    Clause 2: a <= c + d1 and a <= c + d2 imply some d with a <= c + d and
    d <= d1, d <= d2.
    """
    E = _elems(o, b)
    rng = random.Random(_SEED + 3)
    reports = []
    t0 = time.monotonic()
    sw = _Sweep()
    tried = 0
    attempts = 0
    fail = None
    while tried < max(1, samples // 4) and attempts < samples * 10 and fail is None:
        attempts += 1
        a, bb, c = rng.choice(E), rng.choice(E), rng.choice(E)
        hyp = sw.definite(o.leq(o.add(a, c), o.add(bb, c)))
        if not hyp:
            continue
        tried += 1
        if not any(
            o.equal(o.add(a1, c), c).is_holds and o.leq(a, o.add(bb, a1)).is_holds for a1 in E
        ):
            fail = (a, bb, c)
    if fail is not None:
        verdict = Decision.fails(counterexample=fail, note="clause 1 witness search failed at bound")
    else:
        verdict = sw.close(b, f"clause 1 held on {tried} sampled instances")
    reports.append(PropertyReport("tame-consequence-1", verdict, [fail] if fail else [], b, time.monotonic() - t0))

    t0 = time.monotonic()
    sw = _Sweep()
    tried = 0
    attempts = 0
    fail = None
    while tried < max(1, samples // 4) and attempts < samples * 10 and fail is None:
        attempts += 1
        a, c, d1, d2 = (rng.choice(E) for _ in range(4))
        if not (sw.definite(o.leq(a, o.add(c, d1))) and sw.definite(o.leq(a, o.add(c, d2)))):
            continue
        tried += 1
        if not any(
            o.leq(a, o.add(c, d)).is_holds and o.leq(d, d1).is_holds and o.leq(d, d2).is_holds
            for d in E
        ):
            fail = (a, c, d1, d2)
    if fail is not None:
        verdict = Decision.fails(counterexample=fail, note="clause 2 witness search failed at bound")
    else:
        verdict = sw.close(b, f"clause 2 held on {tried} sampled instances")
    reports.append(PropertyReport("tame-consequence-2", verdict, [fail] if fail else [], b, time.monotonic() - t0))
    return tuple(reports)
