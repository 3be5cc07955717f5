from itertools import product

import pytest

from computads.constructions import e_omega, standard_e, walking_arrow, walking_iso
from computads.core import Gen, Id
from computads.invertibility import (
    COMPLETE, INCOMPLETE, Fragment, InverseTower, WitnessFunction, WitnessMissing,
    canonical_witness_e, copy_witness_e_omega, identity_tower, search_tower,
    unfold_witness, verify_tower, witness_closure, witness_to_map,
)
from computads.morphisms import identity_map, maps_equal, stage_inclusion, validate_map

E4 = standard_e(4)
u0 = Gen("u(0)")


def g(*signs):
    return Gen("u(" + ",".join(signs) + ")")


def test_one_level_tower():
    t = InverseTower(u0, g("-"), g("+"), InverseTower(g("+", "0")), InverseTower(g("-", "0")))
    assert t.depth == 1
    assert verify_tower(E4, t, 1).valid
    assert not verify_tower(E4, t, 2).valid


def test_swapped_h_rejected():
    t = InverseTower(u0, g("-"), g("+"), InverseTower(g("-", "0")), InverseTower(g("+", "0")))
    report = verify_tower(E4, t)
    assert not report.valid
    assert report.issues


def test_identity_tower():
    x = Gen("0")
    for depth in (0, 1, 4):
        t = identity_tower(E4, x, depth)
        assert t.depth == depth
        assert verify_tower(E4, t, depth).valid
    assert identity_tower(E4, x, 2).g_plus == Id(x)


def test_canonical_witness():
    w = canonical_witness_e(4)
    assert tuple(w.get(u0)) == (g("-"), g("+"), g("+", "0"), g("-", "0"))
    assert tuple(w.get(g("+", "0"))) == (g("+", "-"), g("+", "+"), g("+", "+", "0"),
                                         g("+", "-", "0"))
    assert w.get(g("+", "+")) is None
    assert w.check().valid


def test_unfold():
    w = canonical_witness_e(4)
    t = unfold_witness(E4, w, u0, 2)
    assert t.depth == 2
    leaves = {node.subject for _, level, node in t.nodes() if level == 2}
    assert leaves == {g(a, b, "0") for a, b in product("-+", repeat=2)}
    assert verify_tower(E4, t, 2).valid
    assert unfold_witness(E4, w, u0, 0) == InverseTower(u0)
    with pytest.raises(WitnessMissing):
        unfold_witness(E4, w, u0, 4)


def test_unfold_copy_runs_out():
    c = e_omega(3, 5)
    w = copy_witness_e_omega(3, 5, 3)
    with pytest.raises(WitnessMissing) as err:
        unfold_witness(c, w, Gen("u"), 3)
    assert err.value.depth == 2
    assert err.value.cell.name.startswith("u_3(") and err.value.cell.name.count(",") == 2


@pytest.mark.parametrize("d", [1, 3, 6])
def test_witness_to_map_is_stage_inclusion(d):
    m = witness_to_map(standard_e(8), canonical_witness_e(8), d)
    assert validate_map(m).valid
    assert maps_equal(m, stage_inclusion(d + 1, 8))


def test_witness_to_map_depth_zero_and_iso():
    m = witness_to_map(E4, canonical_witness_e(4), 0)
    assert m.assign == {"0": Gen("0"), "1": Gen("1"), "u(0)": u0}
    i = walking_iso()
    w = WitnessFunction(i, {"f": ("g-", "g+", "h+", "h-")})
    m = witness_to_map(i, w, 1, arrow=Gen("f"))
    assert validate_map(m).valid
    assert {k: v.name for k, v in m.assign.items()} == {
        "0": "0", "1": "1", "u(0)": "f", "u(-)": "g-", "u(+)": "g+",
        "u(-,0)": "h-", "u(+,0)": "h+"}


@pytest.mark.parametrize("D", [2, 5, 8])
def test_search_on_e(D):
    r = search_tower(standard_e(D), u0, D + 2)
    assert r.best_depth == D - 1
    assert {x.reason for x in r.frontier} == {"dimension-cap"}
    assert verify_tower(standard_e(D), r.tower, D - 1).valid


def test_search_identity():
    r = search_tower(E4, Id(Gen("0")), 6)
    assert r.best_depth == 6
    assert r.frontier == []


@pytest.mark.parametrize("N", [2, 4])
def test_search_on_e_omega(N):
    r = search_tower(e_omega(N, N + 3), Gen("u"), N + 3)
    assert r.best_depth == N - 1
    expected = {"u_%d(%s)" % (N, ",".join(s + ("0",))) for s in product("-+", repeat=N - 1)}
    assert {x.cell.name for x in r.frontier} == expected
    assert all(x.reason == "no-g" and x.budget == 3 for x in r.frontier)


def test_fragment():
    assert Fragment.parse("generators") == Fragment()
    assert Fragment.parse("generators+comp:3").max_parts == 3
    with pytest.raises(ValueError):
        Fragment.parse("everything")
    r = search_tower(standard_e(3), u0, 5, Fragment(3))
    assert r.best_depth == 2
    assert "composites" in r.fragment


def test_closure_on_e():
    report = witness_closure(standard_e(8), u0)
    assert report.status == COMPLETE and report.complete
    (branch,) = report.branches
    assert branch.closure_sizes == [2 ** k for k in range(8)]


def test_closure_on_e_omega():
    report = witness_closure(e_omega(4, 8), Gen("u"))
    assert report.status == INCOMPLETE
    copy3 = [b for b in report.branches
             if b.choice.g_minus.name == "u_3(-)" and b.choice.g_plus.name == "u_3(+)"]
    assert len(copy3) == 1 and copy3[0].depth == 2
    for b in copy3:
        assert b.status == "incomplete"
        assert {x.dim for x in b.dying} == {3}
        assert {x.budget for x in b.dying} == {5}
    assert "budget 5 remaining" in report.summary()


def test_closure_on_walking_arrow():
    report = witness_closure(walking_arrow(), Gen("u"))
    assert report.status == INCOMPLETE
    (branch,) = report.branches
    assert branch.depth == 0 and branch.dying[0].reason == "no-g"


def test_identity_witness_is_identity_map():
    assert maps_equal(identity_map(E4), identity_map(E4))
    with pytest.raises(ValueError):
        search_tower(E4, Gen("0"), 3)
