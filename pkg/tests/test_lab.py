"""Property lab: bounded checkers over the oracle facade."""
import pytest

from refmon import lab, wild
from refmon.decisions import Decision, SearchBound
from refmon.oracles import (
    bar_oracle,
    free_oracle,
    ladder_oracle,
    presentation_oracle,
    primitive_oracle,
)
from refmon.primitive import normalize, validate_poset
from refmon.wild import BarElem, Ideal, LadderElem

B = SearchBound(max_degree=3, max_coefficient=3)


@pytest.fixture(scope="module")
def ladder():
    return ladder_oracle(2)


@pytest.fixture(scope="module")
def bar():
    return bar_oracle(2)


@pytest.fixture(scope="module")
def free2():
    return free_oracle(2)


# -- oracle facade basics


def test_exact_oracle_decisions_never_unknown(ladder):
    E = ladder.elements(2)
    for x in E[:10]:
        for y in E[:10]:
            assert not ladder.equal(x, y).is_unknown
            assert not ladder.leq(x, y).is_unknown


def test_ladder_state_is_additive_and_positive(ladder):
    E = ladder.elements(3)
    for x in E:
        for y in E[:15]:
            assert ladder.positive_state(ladder.add(x, y)) == ladder.positive_state(
                x
            ) + ladder.positive_state(y)
        if not ladder.is_zero(x).is_holds:
            assert ladder.positive_state(x) > 0


def test_bar_oracle_has_no_state(bar):
    assert bar.positive_state is None


def test_presentation_oracle_three_valued():
    p = wild.m0_presentation()
    o = presentation_oracle(p, SearchBound(max_degree=6))
    assert o.equal(p.word("x0 + y0"), p.word("x0 + z0")).is_holds
    assert o.equal(p.word("y0"), p.word("z0")).is_fails
    assert not o.exact
    assert o.fmt(p.word("2*x0")) == "2*x0"


# -- property checkers on the free monoid (everything good holds)


@pytest.mark.parametrize("prop", lab.PROPERTIES)
def test_free_monoid_has_all_properties(free2, prop):
    rep = lab.check_property(free2, prop, B, samples=60)
    assert rep.verdict.is_holds, rep.line()


def test_report_line_format(free2):
    rep = lab.check_property(free2, lab.CONICAL, B)
    assert "conical: holds" in rep.line("free(2)")
    assert rep.line("free(2)").startswith("free(2): ")


def test_unknown_property_id_rejected(free2):
    with pytest.raises(ValueError, match="unknown property id"):
        lab.check_property(free2, "frobnicate", B)


# -- the ladder monoid: the headline verdict pattern


def test_ladder_stably_finite_but_not_cancellative(ladder):
    assert lab.check_property(ladder, lab.STABLY_FINITE, B).verdict.is_holds
    rep = lab.check_property(ladder, lab.CANCELLATIVE, B)
    assert rep.verdict.is_fails
    x, y, z = rep.verdict.counterexample
    assert ladder.equal(ladder.add(x, z), ladder.add(y, z)).is_holds
    assert ladder.equal(x, y).is_fails


def test_ladder_refinement_and_order_properties(ladder):
    assert lab.check_property(ladder, lab.REFINEMENT, B, samples=40).verdict.is_holds
    assert lab.check_property(ladder, lab.CONICAL, B).verdict.is_holds
    assert lab.check_property(ladder, lab.ARCHIMEDEAN, B).verdict.is_holds
    assert lab.check_property(ladder, lab.ANTISYMMETRIC, B).verdict.is_holds


def test_ladder_separative_at_bound(ladder):
    # non-cancellation here never takes the 2x = 2y = x + y shape: whenever
    # both squares and the mixed sum agree the summands already agree
    rep = lab.check_property(ladder, lab.SEPARATIVE, B)
    assert rep.verdict.is_holds
    assert "exhaustive" in rep.verdict.note


# -- the bar monoid: non-archimedean, still stably finite


def test_bar_stably_finite_by_sweep(bar):
    rep = lab.check_property(bar, lab.STABLY_FINITE, B)
    assert rep.verdict.is_holds
    assert "exhaustive" in rep.verdict.note


def test_bar_not_archimedean(bar):
    rep = lab.check_property(bar, lab.ARCHIMEDEAN, B)
    assert rep.verdict.is_fails
    x, y, _ = rep.verdict.counterexample
    # every tested multiple of x fits below y
    assert bar.leq(lab._scaled(bar, x, B.max_coefficient), y).is_holds


def test_bar_not_cancellative(bar):
    assert lab.check_property(bar, lab.CANCELLATIVE, B).verdict.is_fails


def test_archimedean_never_holds_by_enumeration():
    # without a state, enumeration alone must not certify archimedean
    poset = validate_poset(["p"], [])
    o = primitive_oracle(poset)
    rep = lab.check_property(o, lab.ARCHIMEDEAN, B)
    assert rep.verdict.is_unknown


# -- primitive monoids


def test_primitive_idempotent_breaks_cancellation():
    poset = validate_poset(["p", "q"], [("p", "p"), ("p", "q")])
    o = primitive_oracle(poset)
    assert lab.check_property(o, lab.CANCELLATIVE, B).verdict.is_fails
    assert lab.check_property(o, lab.CONICAL, B).verdict.is_holds
    assert lab.check_property(o, lab.STABLY_FINITE, B).verdict.is_fails


# -- consistency invariants across oracles


@pytest.mark.parametrize("make", [lambda: free_oracle(2), lambda: ladder_oracle(1), lambda: bar_oracle(1)])
def test_property_implications(make):
    o = make()
    reps = {p: lab.check_property(o, p, B, samples=40).verdict for p in lab.PROPERTIES}
    # cancellative implies separative implies strongly separative's converse etc.
    if reps[lab.CANCELLATIVE].is_holds:
        assert not reps[lab.SEPARATIVE].is_fails
        assert not reps[lab.STRONGLY_SEPARATIVE].is_fails
    if reps[lab.STRONGLY_SEPARATIVE].is_holds:
        assert not reps[lab.SEPARATIVE].is_fails
    if reps[lab.CANCELLATIVE].is_holds and reps[lab.CONICAL].is_holds:
        assert not reps[lab.ANTISYMMETRIC].is_fails


# -- irreducibles and pedestal


def test_ladder_irreducibles_are_deep_rungs(ladder):
    found, unknown = lab.irreducibles(ladder, SearchBound(max_degree=2))
    assert not unknown
    assert set(found) == {LadderElem.a(1), LadderElem.a(2)}
    assert lab.pedestal(ladder, SearchBound(max_degree=2)) == found


def test_bar_irreducibles(bar):
    found, unknown = lab.irreducibles(bar, SearchBound(max_degree=2))
    assert not unknown
    assert set(found) == {BarElem.ybar(), BarElem.zbar()}


def test_free_irreducibles(free2):
    found, _ = lab.irreducibles(free2, SearchBound(max_degree=2))
    assert set(found) == {(1, 0), (0, 1)}


# -- o-ideals and quotients


def test_o_ideal_closure_matches_closed_forms(ladder):
    b = SearchBound(max_degree=3, max_coefficient=6)
    member = lab.o_ideal_closure(ladder, [LadderElem.a(1), LadderElem.a(2)], b)
    for e in ladder.elements(3):
        dec = member(e)
        if dec.is_unknown:
            continue
        assert dec.is_holds == wild.ideal_member(e, Ideal.RUNGS), e


def test_quotient_equal_examples(ladder):
    b = SearchBound(max_degree=3, max_coefficient=4)
    member = lab.o_ideal_closure(ladder, [LadderElem.a(1), LadderElem.a(2)], b)
    y0, z0 = LadderElem.y(0), LadderElem.z(0)
    # y0 and y2 merge modulo the rung ideal; y0 and z0 stay apart
    assert lab.quotient_equal(ladder, member, y0, LadderElem.y(2), b).is_holds
    assert lab.quotient_equal(ladder, member, y0, z0, b).is_fails


def test_quotient_equal_bar_z_ideal(bar):
    b = SearchBound(max_degree=3, max_coefficient=4)
    member = lab.o_ideal_closure(bar, [BarElem.zbar()], b)
    xb, yb = BarElem.xbar(0), BarElem.ybar()
    assert lab.quotient_equal(bar, member, xb.add(yb), xb, b).is_holds
    assert lab.quotient_equal(bar, member, yb, BarElem.zero(), b).is_fails


def test_max_antisym_and_max_cancel(ladder, free2):
    b = SearchBound(max_degree=3)
    y0, z0 = LadderElem.y(0), LadderElem.z(0)
    # the order does not separate y0 and z0... but they are not mutually below
    assert lab.max_antisym_equal(ladder, y0, z0, b).is_fails
    # one x0 cancels the y0/z0 difference
    dec = lab.max_cancel_equal(ladder, y0, z0, b)
    assert dec.is_holds
    assert ladder.equal(ladder.add(y0, dec.witness), ladder.add(z0, dec.witness)).is_holds
    assert lab.max_cancel_equal(free2, (1, 0), (0, 1), b).is_fails


# -- wildness certificates and tame consequences


def test_wildness_certificates(ladder, bar, free2):
    rep = lab.wildness_certificate(ladder, B, samples=60)
    assert rep.verdict.is_holds
    assert "not cancellative" in rep.verdict.note
    rep2 = lab.wildness_certificate(bar, B, samples=60)
    assert rep2.verdict.is_holds
    rep3 = lab.wildness_certificate(free2, B, samples=60)
    assert rep3.verdict.is_unknown
    assert "consistent with tame" in rep3.verdict.note


def test_further_tame_checks_on_free(free2):
    r1, r2 = lab.further_tame_checks(free2, B, samples=60)
    assert r1.verdict.is_holds
    assert r2.verdict.is_holds
    assert r1.property == "tame-consequence-1"
    assert r2.property == "tame-consequence-2"


def test_search_refine_on_presentation_oracle():
    p = wild.m0_presentation()
    o = presentation_oracle(p, SearchBound(max_degree=6))
    # drop the native refine to exercise the generic search
    o.refine = None
    dec = lab.search_refine(
        o, p.word("x0"), p.word("y0"), p.word("y0"), p.word("x0"), SearchBound(max_degree=2)
    )
    assert dec.is_holds
    (z11, z12), (z21, z22) = dec.witness
    assert o.equal(o.add(z11, z12), p.word("x0")).is_holds
    dec2 = lab.search_refine(
        o, p.word("x0"), p.word("y0"), p.word("x0"), p.word("z0"), SearchBound(max_degree=2)
    )
    assert dec2.is_fails  # the mixing equation has no refinement in M0 itself
