"""Acceptance checks, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line.  Run directly with
``python tests/test_acceptance.py`` for just the summary lines.
"""
import json
import sys
import time
from itertools import product
from pathlib import Path


sys.path.insert(0, str(Path(__file__).parent))

from laws import LAWS  # noqa: E402

from computads import cli  # noqa: E402
from computads.constructions import (  # noqa: E402
    boundary_globe, composable_pair, e_omega, e_stage, e_stage_by_pushout, e_truncation_1,
    globe, standard_e, suspend, walking_arrow, walking_iso,
)
from computads.core import Gen, Id, empty, point, validate_computad  # noqa: E402
from computads.dsl import format_computad, parse_dsl  # noqa: E402
from computads.invertibility import (  # noqa: E402
    INCOMPLETE, canonical_witness_e, search_tower, witness_closure, witness_to_map,
)
from computads.morphisms import (  # noqa: E402
    apply_map, compose_maps, identity_map, iso_check, maps_equal, stage_inclusion,
    suspension_comparison, tau1, validate_map,
)
from computads.serialize import computad_from_json, computad_to_json  # noqa: E402
from computads.span_model import certify_distinct, certify_noninvertible  # noqa: E402

PROPERTY_CASES = 10_000


def _announce(line, capsys):
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


def criterion(number, title):
    def wrap(check):
        def test(capsys):
            try:
                detail = check()
            except Exception as exc:
                _announce(f"[FAIL] criterion {number}: {title}: {type(exc).__name__}: {exc}", capsys)
                raise
            _announce(f"[PASS] criterion {number}: {title}" + (f" ({detail})" if detail else ""),
                      capsys)
        test.__name__ = check.__name__
        test.number = number
        return test
    return wrap


def admissible(k):
    # independent of the builder: filter all {-,0,+}-words of length k
    return {"u(" + ",".join(w) + ")" for w in product("-0+", repeat=k) if "0" not in w[:-1]}


@criterion(1, "cell census of standard_e for D = 1..14")
def test_cell_census():
    oracle = {k: admissible(k) for k in range(1, 12)}
    start = time.perf_counter()
    for D in range(1, 15):
        e = standard_e(D)
        report = validate_computad(e)
        assert report.valid, report.issues[:3]
        for k in range(1, D + 1):
            got = [g.name for g in e.of_dim(k)]
            assert len(got) == 3 * 2 ** (k - 1)
            if k in oracle:
                assert set(got) == oracle[k]
            else:
                # 3^k words get large; check the shape of each name instead
                for n in got:
                    word = n[2:-1].split(",")
                    assert len(word) == k and set(word[:-1]) <= {"-", "+"} and word[-1] in "-0+"
                assert len(set(got)) == len(got)
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"took {elapsed:.1f}s"
    return f"{elapsed:.1f}s, {len(standard_e(14))} generators at D=14"


@criterion(2, "filtration pushout matches the next stage by name, d = 1..10")
def test_filtration_pushout():
    for d in range(1, 11):
        m = iso_check(e_stage_by_pushout(d), e_stage(d + 1))
        assert m is not None, f"no isomorphism at d={d}"
        assert all(v == Gen(k) for k, v in m.assign.items()), f"not the identity at d={d}"


@criterion(3, "suspension comparison maps validate, d = 2..8")
def test_suspension_comparison():
    for d in range(2, 9):
        m = suspension_comparison(d)
        report = validate_map(m)
        assert report.valid, (d, report.issues[:3])
        assert m.assign["L.S(0)"] == Id(Gen("0"))
        assert str(m.assign["L.S(1)"]) == "comp0(u(0), u(+))"
        assert m.assign["L.S(u(0))"] == Gen("u(+,0)")
        assert m.assign["R.S(u(0))"] == Gen("u(-,0)")


@criterion(4, "witness unfolding equals the stage inclusion, d = 1..9")
def test_witness_unfolding():
    D = 10
    e, w = standard_e(D), canonical_witness_e(D)
    for d in range(1, 10):
        m = witness_to_map(e, w, d)
        inc = stage_inclusion(d + 1, D)
        assert set(m.assign) == set(inc.assign)
        for name in inc.assign:
            assert m.assign[name] == inc.assign[name], (d, name)


@criterion(5, "E versus E^(omega) separation by tower search")
def test_separation():
    for D in range(2, 11):
        r = search_tower(standard_e(D), Gen("u(0)"), D + 2)
        assert r.best_depth == D - 1, (D, r.best_depth)
    for N in range(2, 7):
        c = e_omega(N, N + 3)
        r = search_tower(c, Gen("u"), N + 3)
        assert r.best_depth == N - 1, (N, r.best_depth)
        expected = {"u_%d(%s)" % (N, ",".join(s + ("0",))) for s in product("-+", repeat=N - 1)}
        assert {x.cell.name for x in r.frontier} == expected
        assert all(x.budget > 0 and x.intrinsic for x in r.frontier)
        report = witness_closure(c, Gen("u"))
        assert report.status == INCOMPLETE
        assert "remaining" in report.summary()
        assert any(x.budget > 0 for b in report.branches for x in b.dying)


@criterion(6, "span-model certificates")
def test_certificates():
    e = standard_e(3)
    cert = certify_distinct(e, "u(-)", "u(+)")
    assert cert.certified and cert.values == [0, 1]
    assert certify_noninvertible(e, Gen("u(0)")).kind == "noninvertible"
    assert certify_noninvertible(e, Id(Gen("0"))).kind == "inconclusive"


@criterion(7, "tau1 is a non-trivial involution fixing u")
def test_tau1():
    t = tau1()
    ident = identity_map(e_truncation_1())
    assert validate_map(t).valid
    assert maps_equal(compose_maps(t, t), ident)
    assert apply_map(t, Gen("u(+)")) != apply_map(ident, Gen("u(+)"))
    assert apply_map(t, Gen("u(0)")) == apply_map(ident, Gen("u(0)")) == Gen("u(0)")


@criterion(8, f"property suites, {PROPERTY_CASES} cases each")
def test_property_suites():
    start = time.perf_counter()
    for name, law in LAWS.items():
        for seed in range(PROPERTY_CASES):
            try:
                law(seed)
            except AssertionError:
                raise AssertionError(f"{name} fails at seed {seed}") from None
    for d in range(13):
        assert iso_check(suspend(globe(d)), globe(d + 1)) is not None
    return f"{len(LAWS)} suites in {time.perf_counter() - start:.0f}s"


BUILT_INS = {
    "point": point(), "empty": empty(), "arrow": walking_arrow(), "I": walking_iso(),
    "globe5": globe(5), "bglobe4": boundary_globe(4), "E6": standard_e(6),
    "stage5": e_stage(5), "E1": e_truncation_1(), "omega4": e_omega(4, 6),
    "pair3": composable_pair(3), "pushout3": e_stage_by_pushout(3),
}


def _cli(*argv):
    return cli.run(list(argv))


@criterion(9, "DSL/JSON round trip and CLI exit codes")
def test_round_trip_and_exit_codes():
    for name, c in BUILT_INS.items():
        text = format_computad(c, name)
        parsed = parse_dsl(text).blocks[name]
        again = computad_from_json(json.loads(json.dumps(computad_to_json(parsed))))
        assert format_computad(again, name) == text, name
        assert again == c, name

    import tempfile
    with tempfile.TemporaryDirectory() as tmp:
        e4 = f"{tmp}/e4.json"
        bad = Path(tmp, "bad.dsl")
        bad.write_text("computad B { 0; 1; f : 0 -> 1; g : 1 -> 0; h : f -> g; }")
        codes = {
            "build": _cli("build", "E", "--dim", "4", "-o", e4),
            "check": _cli("check", e4),
            "check invalid": _cli("check", str(bad)),
            "inconclusive": _cli("certify", "noninv", "--complex", e4, "id(0)"),
            "missing flag": _cli("build", "E", "-o", e4),
            "unknown command": _cli("frobnicate"),
        }
    assert codes == {"build": 0, "check": 0, "check invalid": 1, "inconclusive": 1,
                     "missing flag": 2, "unknown command": 2}, codes


if __name__ == "__main__":
    import contextlib
    import io

    failed = 0
    tests = sorted((v for v in list(globals().values()) if hasattr(v, "number")),
                   key=lambda t: t.number)
    for test in tests:
        sink = io.StringIO()
        try:
            with contextlib.redirect_stdout(sink), contextlib.redirect_stderr(io.StringIO()):
                test(None)
        except Exception:
            failed += 1
        lines = [ln for ln in sink.getvalue().splitlines() if ln.startswith("[")]
        print(lines[-1] if lines else f"[FAIL] criterion {test.number}")
    sys.exit(1 if failed else 0)
