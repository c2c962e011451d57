import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import KNOTS, LINKS, diagram, diagram_and_regions, diagrams
from regionmoves.diagram import (
    PreconditionError,
    change_crossings,
    descending_target,
    is_descending,
    mirror,
    serialize_pd,
)
from regionmoves.moves import (
    PATH_ODD_INEFFECTIVE,
    PATH_STAR_PARITY,
    apply_rcc,
    apply_rfcc,
    incidence_matrix,
    ineffective_sets,
    rcc_effect,
    rfcc_effect,
    rfcc_realizability,
    solve_rcc,
    solve_rfcc,
    star_condition,
    untie_by_rcc,
    untie_by_rfcc,
    untie_knot,
)

# frozen from the exhaustive oracle over all 32 region subsets
TREFOIL_C0_RCC = [{0, 4}, {3, 4}, {0, 1, 2}, {1, 2, 3}]
TREFOIL_C0_RFCC = [{4}, {0, 4}, {3, 4}, {0, 3, 4}]
TREFOIL_INEFFECTIVE = [set(), {0, 3}, {1, 2, 4}, {0, 1, 2, 3, 4}]
KNOT_8_13_STARS = (0, 3, 7)


def test_trefoil_incidence_rows():
    a = incidence_matrix(diagram("trefoil"))
    assert a.shape == (3, 5)
    assert all(row.bit_count() == 4 for row in a.rows)


def test_kink_incidence():
    a = incidence_matrix(diagram("unknot_kink"))
    # the doubled region contributes 0
    assert sorted(a.to_lists()[0]) == [0, 1, 1]


def test_trefoil_frozen_solutions():
    d = diagram("trefoil")
    assert solve_rcc(d, {0}) == [frozenset(s) for s in TREFOIL_C0_RCC]
    assert solve_rfcc(d, {0}) == [frozenset(s) for s in TREFOIL_C0_RFCC]
    assert ineffective_sets(d) == [frozenset(s) for s in TREFOIL_INEFFECTIVE]
    for s in TREFOIL_C0_RCC:
        assert apply_rcc(d, s) == change_crossings(d, {0})


def test_single_region_effect_reads_incidence():
    d = diagram("trefoil")
    for r in range(d.m):
        odd = {c for c in range(d.n) if d.regions[r].corner_count(c) % 2}
        assert rcc_effect(d, {r}) == odd
        assert rfcc_effect(d, {r}) == set(range(d.n)) - odd


def test_empty_sets():
    d = diagram("figure_eight")
    assert rcc_effect(d, ()) == rfcc_effect(d, ()) == frozenset()
    assert frozenset() in solve_rfcc(d, ())
    assert solve_rcc(d, ()) == ineffective_sets(d)


def test_out_of_range_indices():
    d = diagram("trefoil")
    with pytest.raises(IndexError):
        rcc_effect(d, {5})
    with pytest.raises(IndexError):
        solve_rcc(d, {3})


def test_hopf_single_crossing_unreachable():
    d = diagram("hopf")
    assert solve_rcc(d, {0}) == []
    assert solve_rcc(d, {1}) == []


def test_star_condition():
    d = diagram("knot_8_13")
    assert tuple(c for c in range(d.n) if star_condition(d, c)) == KNOT_8_13_STARS
    with pytest.raises(PreconditionError):
        star_condition(diagram("trefoil"), 0)
    with pytest.raises(PreconditionError):
        star_condition(diagram("hopf"), 0)


def test_realizability_reports():
    t = rfcc_realizability(diagram("trefoil"))
    assert t.path == PATH_ODD_INEFFECTIVE and t.unrealizable == ()
    k = rfcc_realizability(diagram("knot_8_13"))
    assert k.path == PATH_STAR_PARITY
    assert all(len(s) % 2 == 0 for s in k.ineffective)
    assert k.star_crossings == KNOT_8_13_STARS == k.unrealizable
    # even number of star crossings: everything realizable
    even = rfcc_realizability(diagram("trefoil_sum_trefoil"))
    assert even.path == PATH_STAR_PARITY and even.star_count == 4 and even.unrealizable == ()


def test_report_json_schema():
    payload = rfcc_realizability(diagram("trefoil")).to_dict()
    assert set(payload) == {"diagram", "n", "m", "ineffective", "path", "star_crossings", "per_crossing"}
    assert payload["diagram"] == serialize_pd(diagram("trefoil"))
    assert payload["per_crossing"][0] == {
        "crossing": 0,
        "rcc_witnesses": [sorted(s) for s in TREFOIL_C0_RCC],
        "rfcc_witnesses": [sorted(s) for s in TREFOIL_C0_RFCC],
    }


@pytest.mark.parametrize("name", KNOTS)
def test_knot_laws(name):
    d = diagram(name)
    kernel = ineffective_sets(d)
    assert len(kernel) == 4 and frozenset() in kernel
    for c in range(d.n):
        witnesses = solve_rcc(d, {c})
        assert len(witnesses) == 4
        first = witnesses[0]
        assert {first ^ k for k in kernel} == set(witnesses)
        # s -> A s + |s| 1 is linear of rank n or n - 1
        assert len(solve_rfcc(d, {c})) in (0, 4, 8)


@pytest.mark.parametrize("name", KNOTS)
def test_remark_law(name):
    d = diagram(name)
    kernel = ineffective_sets(d)
    for e in d.edges:
        left, right = d.side_region(e, 0), d.side_region(e, 1)
        assert left != right
        assert sum(left in s for s in kernel) == 2
        assert sum(right in s for s in kernel) == 2
        assert sum(left in s and right in s for s in kernel) == 1


def test_untie_links():
    assert untie_by_rcc(diagram("hopf")) == (False, None)
    assert untie_by_rfcc(diagram("hopf")) == (False, None)
    for name in ("solomon", "whitehead"):
        d = diagram(name)
        for untie, apply in ((untie_by_rcc, apply_rcc), (untie_by_rfcc, apply_rfcc)):
            ok, witness = untie(d)
            assert ok and witness is not None
            out = apply(d, witness)
            assert any(is_descending(x) for x in (out, mirror(out))) or untie is untie_by_rcc
    assert untie_by_rcc(diagram("unlink_kinks")) == (True, frozenset())
    assert untie_by_rfcc(diagram("unlink_kinks")) == (True, frozenset())
    with pytest.raises(PreconditionError):
        untie_by_rcc(diagram("trefoil"))


def test_solomon_witness_is_descending():
    d = diagram("solomon")
    _, witness = untie_by_rcc(d)
    assert rcc_effect(d, witness) == descending_target(d)


@pytest.mark.parametrize("name", KNOTS)
@pytest.mark.parametrize("mode", ["rcc", "rfcc"])
def test_untie_knot(name, mode):
    d = diagram(name)
    witness = untie_knot(d, mode)
    out = apply_rcc(d, witness) if mode == "rcc" else apply_rfcc(d, witness)
    assert is_descending(out) or is_descending(mirror(out))


def test_untie_knot_rejects_links_and_bad_mode():
    with pytest.raises(PreconditionError):
        untie_knot(diagram("hopf"))
    with pytest.raises(ValueError):
        untie_knot(diagram("trefoil"), "other")


@settings(max_examples=300, deadline=None)
@given(diagram_and_regions(), st.data())
def test_linearity(pair, data):
    d, s = pair
    t = frozenset(data.draw(st.sets(st.integers(0, d.m - 1))))
    assert rcc_effect(d, s ^ t) == rcc_effect(d, s) ^ rcc_effect(d, t)


@settings(max_examples=300, deadline=None)
@given(diagram_and_regions())
def test_freeze_versus_plain(pair):
    d, s = pair
    expected = apply_rcc(d, s) if len(s) % 2 == 0 else mirror(apply_rcc(d, s))
    assert apply_rfcc(d, s) == expected


@settings(max_examples=300, deadline=None)
@given(diagram_and_regions())
def test_involutions(pair):
    d, s = pair
    assert apply_rcc(apply_rcc(d, s), s) == d
    # region indexing survives crossing changes, so RFCC about a single region undoes itself
    for r in list(s)[:2]:
        assert apply_rfcc(apply_rfcc(d, {r}), {r}) == d


@settings(max_examples=300, deadline=None)
@given(diagram_and_regions(), st.data())
def test_commutativity(pair, data):
    d, s = pair
    t = frozenset(data.draw(st.sets(st.integers(0, d.m - 1))))
    assert apply_rcc(apply_rcc(d, s), t) == apply_rcc(apply_rcc(d, t), s)
    assert apply_rfcc(apply_rfcc(d, s), t) == apply_rfcc(apply_rfcc(d, t), s)


@settings(max_examples=100, deadline=None)
@given(diagrams(knots_only=True), st.data())
def test_solutions_hit_target(d, data):
    target = frozenset(data.draw(st.sets(st.integers(0, d.n - 1))))
    witnesses = solve_rcc(d, target)
    assert len(witnesses) == 4
    assert all(rcc_effect(d, s) == target for s in witnesses)
    assert all(rfcc_effect(d, s) == target for s in solve_rfcc(d, target))


@pytest.mark.parametrize("name", LINKS)
def test_link_criterion_matches_witness(name):
    d = diagram(name)
    for untie in (untie_by_rcc, untie_by_rfcc):
        criterion, witness = untie(d)
        assert criterion == (witness is not None)
