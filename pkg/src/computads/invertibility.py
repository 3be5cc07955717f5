"""Inverse towers, witness functions and bounded tower search.

An arrow ``f: x -> y`` of dimension k is given one level of inverse data by
k-arrows ``g_-, g_+: y -> x`` and (k+1)-arrows

    h_+ : id(x) => comp(f, g_+)        h_- : comp(g_-, f) => id(y)

(composites written in diagrammatic order).  Asking the h's to carry such
data again, recursively, gives an inverse tower.  Depth 0 is the bare arrow;
a tower of depth n has g's and two children of depth at least n - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, NamedTuple, Optional

from . import constructions as cx
from .core import (
    SOURCE, TARGET, Comp, Computad, ComputadError, Gen, Id, Term, ValidationReport,
    boundary, dim_of, normalize,
)
from .morphisms import ComputadMap

GENERATOR_FRAGMENT = "candidate fragment: generators + iterated identities"


class WitnessMissing(ComputadError):
    def __init__(self, cell: Term, depth: int):
        super().__init__(f"no witness for {cell} (tower complete to depth {depth})")
        self.cell = cell
        self.depth = depth


@dataclass(frozen=True)
class InverseTower:
    subject: Term
    g_minus: Optional[Term] = None
    g_plus: Optional[Term] = None
    h_plus: Optional["InverseTower"] = None
    h_minus: Optional["InverseTower"] = None

    @property
    def is_leaf(self) -> bool:
        return self.h_plus is None and self.h_minus is None

    @property
    def depth(self) -> int:
        if self.h_plus is None or self.h_minus is None:
            return 0
        return 1 + min(self.h_plus.depth, self.h_minus.depth)

    def nodes(self, level: int = 0, path: tuple[str, ...] = ()) -> Iterator[tuple[tuple[str, ...], int, "InverseTower"]]:
        """Pre-order walk yielding (sign path, level, node)."""
        yield path, level, self
        if self.h_plus is not None:
            yield from self.h_plus.nodes(level + 1, path + ("+",))
        if self.h_minus is not None:
            yield from self.h_minus.nodes(level + 1, path + ("-",))

    def truncate(self, depth: int) -> "InverseTower":
        if depth <= 0:
            return InverseTower(self.subject)
        return InverseTower(
            self.subject, self.g_minus, self.g_plus,
            None if self.h_plus is None else self.h_plus.truncate(depth - 1),
            None if self.h_minus is None else self.h_minus.truncate(depth - 1),
        )


def expected_h_boundaries(c: Computad, f: Term, g_minus: Term, g_plus: Term):
    """((src, tgt) of h_+, (src, tgt) of h_-) for the given arrow and g's."""
    k = dim_of(f, c)
    x = boundary(f, k - 1, SOURCE, c)
    y = boundary(f, k - 1, TARGET, c)
    plus = (Id(x), normalize(Comp(k - 1, [f, g_plus]), c))
    minus = (normalize(Comp(k - 1, [g_minus, f]), c), Id(y))
    return plus, minus


def identity_tower(c: Computad, x: Term, depth: int) -> InverseTower:
    """The self-similar tower on ``id(x)``: every datum is an identity."""
    f = normalize(Id(x), c)
    if depth <= 0:
        return InverseTower(f)
    child = identity_tower(c, f, depth - 1)
    return InverseTower(f, f, f, child, child)


def verify_tower(c: Computad, t: InverseTower, min_depth: int = 0) -> ValidationReport:
    report = ValidationReport()
    _verify_node(c, t, "root", report)
    if report.valid and t.depth < min_depth:
        report.issues.append(f"tower has depth {t.depth}, required {min_depth}")
    return report


def _verify_node(c: Computad, t: InverseTower, path: str, report: ValidationReport) -> None:
    try:
        f = normalize(t.subject, c)
        k = dim_of(f, c)
    except ComputadError as exc:
        report.issues.append(f"{path}: subject {t.subject} is ill-typed: {exc}")
        return
    if k < 1:
        report.issues.append(f"{path}: subject {f} is an object, not an arrow")
        return
    data = (t.g_minus, t.g_plus, t.h_plus, t.h_minus)
    if all(v is None for v in data):
        return
    if any(v is None for v in data):
        report.issues.append(f"{path}: incomplete inverse data (need g-, g+, h+, h-)")
        return
    x = boundary(f, k - 1, SOURCE, c)
    y = boundary(f, k - 1, TARGET, c)
    for label, g in (("g-", t.g_minus), ("g+", t.g_plus)):
        try:
            gn = normalize(g, c)
            ok = (dim_of(gn, c) == k and boundary(gn, k - 1, SOURCE, c) == y
                  and boundary(gn, k - 1, TARGET, c) == x)
        except ComputadError as exc:
            report.issues.append(f"{path}.{label}: {g} is ill-typed: {exc}")
            return
        if not ok:
            report.issues.append(f"{path}.{label}: {g} is not a {k}-arrow {y} -> {x}")
            return
    plus, minus = expected_h_boundaries(c, f, t.g_minus, t.g_plus)
    for label, child, (s, tg) in (("h+", t.h_plus, plus), ("h-", t.h_minus, minus)):
        try:
            h = normalize(child.subject, c)
            dh = dim_of(h, c)
            actual = (boundary(h, k, SOURCE, c), boundary(h, k, TARGET, c)) if dh == k + 1 else None
        except ComputadError as exc:
            report.issues.append(f"{path}.{label}: {child.subject} is ill-typed: {exc}")
            continue
        if actual != (s, tg):
            got = "dimension %d" % dh if actual is None else f"{actual[0]} => {actual[1]}"
            report.issues.append(f"{path}.{label}: {h} should be {s} => {tg}, got {got}")
            continue
        _verify_node(c, child, f"{path}.{label}", report)


# ---------------------------------------------------------------------------
# witness functions


class WitnessEntry(NamedTuple):
    g_minus: Term
    g_plus: Term
    h_plus: Term
    h_minus: Term


@dataclass
class WitnessFunction:
    """Partial assignment arrow -> (g-, g+, h+, h-), keyed by normal form."""

    domain: Computad
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {normalize(_as_term(k), self.domain): WitnessEntry(*map(_as_term, v))
                        for k, v in self.entries.items()}

    def get(self, f: Term) -> Optional[WitnessEntry]:
        return self.entries.get(normalize(f, self.domain))

    def check(self) -> ValidationReport:
        """Every entry type-checks as one level of inverse data."""
        report = ValidationReport()
        for f, e in self.entries.items():
            leaf = lambda t: InverseTower(t)  # noqa: E731
            sub = _verify_node_report(self.domain, InverseTower(f, e.g_minus, e.g_plus,
                                                                leaf(e.h_plus), leaf(e.h_minus)))
            report.issues.extend(f"{f}: {msg}" for msg in sub.issues)
        return report


def _verify_node_report(c: Computad, t: InverseTower) -> ValidationReport:
    report = ValidationReport()
    _verify_node(c, t, "root", report)
    return report


def _as_term(v) -> Term:
    return Gen(v) if isinstance(v, str) else v


def canonical_witness_e(D: int) -> WitnessFunction:
    """On E truncated at D: u(σ,0) ↦ (u(σ,-), u(σ,+), u(σ,+,0), u(σ,-,0))."""
    if D < 1:
        raise ValueError("canonical_witness_e needs D >= 1")
    e = cx.standard_e(D)
    return WitnessFunction(e, _stage_entries(D - 1, copy=None))


def _stage_entries(top_level: int, copy: Optional[int]) -> dict:
    entries = {}
    for level in range(top_level):
        for sigma in product(cx.SIGNS, repeat=level):
            name = lambda *s: cx.u_name(sigma + s, copy)  # noqa: E731
            key = "u" if copy is not None and level == 0 else name("0")
            entries[key] = (name("-"), name("+"), name("+", "0"), name("-", "0"))
    return entries


def copy_witness_e_omega(N: int, D: int, copy: int) -> WitnessFunction:
    """On E^(ω): follow copy ``copy`` wherever it has cells."""
    if not 2 <= copy <= N:
        raise ValueError("copy index must lie in 2..N")
    c = cx.e_omega(N, D)
    top = min(copy, D)
    entries = _stage_entries(top - 1, copy)
    # level-0 key is the shared arrow; deeper keys need u_i(σ,0) images of h's
    return WitnessFunction(c, entries)


def unfold_witness(c: Computad, w: WitnessFunction, f: Term, depth: int) -> InverseTower:
    return _unfold(c, w, normalize(f, c), depth, 0)


def _unfold(c: Computad, w: WitnessFunction, f: Term, depth: int, level: int) -> InverseTower:
    if depth <= 0:
        return InverseTower(f)
    e = w.get(f)
    if e is None:
        raise WitnessMissing(f, level)
    return InverseTower(f, e.g_minus, e.g_plus,
                        _unfold(c, w, normalize(e.h_plus, c), depth - 1, level + 1),
                        _unfold(c, w, normalize(e.h_minus, c), depth - 1, level + 1))


def _wrap(name: str, times: int) -> str:
    return "S(" * times + name + ")" * times


def witness_to_map(c: Computad, w: WitnessFunction, depth: int, arrow: Term = Gen("u(0)")) -> ComputadMap:
    """Classifying map Susp^(k-1) E^(depth+1) -> c of the unfolded tower.

    The tautological arrow goes to ``arrow`` and every stage generator to the
    matching tower datum: u(σ,0) ↦ node subject, u(σ,±) ↦ node g±.
    """
    tower = unfold_witness(c, w, arrow, depth)
    k = dim_of(tower.subject, c)
    source = cx.suspend_n(cx.e_stage(depth + 1), k - 1)
    assign: dict[str, Term] = {}
    top = Gen(_wrap("u(0)", k - 1))
    for i in range(k):
        for side in (SOURCE, TARGET):
            cell = boundary(top, i, side, source)
            assert isinstance(cell, Gen)
            assign[cell.name] = boundary(tower.subject, i, side, c)
    for path, level, node in tower.nodes():
        sigma = path
        assign[_wrap(cx.u_name(sigma + ("0",)), k - 1)] = node.subject
        if level < depth:
            assign[_wrap(cx.u_name(sigma + ("-",)), k - 1)] = normalize(node.g_minus, c)
            assign[_wrap(cx.u_name(sigma + ("+",)), k - 1)] = normalize(node.g_plus, c)
    return ComputadMap(source, c, assign)


# ---------------------------------------------------------------------------
# bounded search in a candidate fragment


@dataclass(frozen=True)
class Fragment:
    """Candidate terms for inverse data: generators with the required
    boundary, iterated identities, and optionally composites of up to
    ``max_parts`` generators along the top boundary."""

    max_parts: int = 0

    @classmethod
    def parse(cls, text: str) -> "Fragment":
        if text == "generators":
            return cls()
        prefix = "generators+comp:"
        if text.startswith(prefix):
            n = int(text[len(prefix):])
            if n < 2:
                raise ValueError("composite size bound must be at least 2")
            return cls(n)
        raise ValueError(f"unknown fragment {text!r}")

    def describe(self) -> str:
        if self.max_parts < 2:
            return GENERATOR_FRAGMENT
        return f"{GENERATOR_FRAGMENT} + composites of <= {self.max_parts} generators"


class _Candidates:
    def __init__(self, c: Computad, fragment: Fragment):
        self.c = c
        self.fragment = fragment
        self.by_boundary: dict[tuple, list[Term]] = {}
        self.by_source: dict[tuple, list[tuple[Term, Term]]] = {}
        for g in c.generators:
            if g.dim == 0:
                continue
            self.by_boundary.setdefault((g.dim, g.src, g.tgt), []).append(Gen(g.name))
            self.by_source.setdefault((g.dim, g.src), []).append((Gen(g.name), g.tgt))
        self._memo: dict[tuple, list[Term]] = {}

    def __call__(self, k: int, src: Term, tgt: Term) -> list[Term]:
        """k-dimensional candidate terms src => tgt, in canonical order."""
        key = (k, src, tgt)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out = list(self.by_boundary.get(key, ()))
        if src == tgt:
            out.append(Id(src))
        if self.fragment.max_parts >= 2:
            seen = set(out)
            for t in self._paths(k, src, tgt):
                if t not in seen:
                    seen.add(t)
                    out.append(t)
        self._memo[key] = out
        return out

    def _paths(self, k: int, src: Term, tgt: Term) -> Iterator[Term]:
        limit = self.fragment.max_parts

        def walk(at: Term, parts: list[Term]):
            if len(parts) >= 2 and at == tgt:
                yield normalize(Comp(k - 1, parts), self.c)
            if len(parts) == limit:
                return
            for g, end in self.by_source.get((k, at), ()):
                yield from walk(end, parts + [g])

        yield from walk(src, [])


@dataclass
class FrontierCell:
    cell: Term
    level: int
    dim: int
    reason: str  # "no-g", "no-h", "dimension-cap" or "depth-limit"
    budget: int  # max_dim - dim

    @property
    def intrinsic(self) -> bool:
        return self.reason in ("no-g", "no-h")


@dataclass
class SearchResult:
    best_depth: int
    tower: InverseTower
    frontier: list[FrontierCell]
    fragment: str

    @property
    def complete(self) -> bool:
        return not self.frontier


class _Search:
    def __init__(self, c: Computad, fragment: Fragment):
        self.c = c
        self.cands = _Candidates(c, fragment)
        self.memo: dict[tuple, InverseTower] = {}
        self.reasons: dict[Term, str] = {}

    def side_options(self, f: Term, k: int, plus: bool) -> Iterator[tuple[Term, Term]]:
        c = self.c
        x = boundary(f, k - 1, SOURCE, c)
        y = boundary(f, k - 1, TARGET, c)
        for g in self.cands(k, y, x):
            if plus:
                s, t = Id(x), normalize(Comp(k - 1, [f, g]), c)
            else:
                s, t = normalize(Comp(k - 1, [g, f]), c), Id(y)
            for h in self.cands(k + 1, s, t):
                yield g, h

    def best(self, f: Term, budget: int) -> InverseTower:
        key = (f, budget)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = self._best(f, budget)
        self.memo[key] = result
        return result

    def best_side(self, f: Term, k: int, budget: int, plus: bool):
        best = None
        for g, h in self.side_options(f, k, plus):
            sub = self.best(h, budget - 1)
            if best is None or sub.depth > best[1].depth:
                best = (g, sub)
                if sub.depth >= budget - 1:
                    break
        return best

    def _best(self, f: Term, budget: int) -> InverseTower:
        if budget <= 0:
            return InverseTower(f)
        k = dim_of(f, self.c)
        plus = self.best_side(f, k, budget, True)
        minus = self.best_side(f, k, budget, False) if plus is not None else None
        if plus is None or minus is None:
            self.reasons[f] = self._failure_reason(f, k)
            return InverseTower(f)
        return InverseTower(f, minus[0], plus[0], plus[1], minus[1])

    def _failure_reason(self, f: Term, k: int) -> str:
        x = boundary(f, k - 1, SOURCE, self.c)
        y = boundary(f, k - 1, TARGET, self.c)
        if not self.cands(k, y, x):
            return "no-g"
        if k + 1 > self.c.max_dim:
            return "dimension-cap"
        return "no-h"

    def frontier(self, tower: InverseTower, max_depth: int) -> list[FrontierCell]:
        out = []
        for _, level, node in tower.nodes():
            if not node.is_leaf:
                continue
            d = dim_of(node.subject, self.c)
            reason = "depth-limit" if level >= max_depth else self.reasons.get(node.subject, "no-g")
            out.append(FrontierCell(node.subject, level, d, reason, self.c.max_dim - d))
        return out


def search_tower(c: Computad, f: Term, max_depth: int,
                 fragment: Fragment = Fragment()) -> SearchResult:
    """Deterministic depth-first search for a deepest uniform tower on ``f``.

    Candidates are tried in canonical order and the first one reaching the
    best depth wins.  The frontier lists the leaves where the search ran out
    of candidates (empty when ``max_depth`` was reached everywhere).
    """
    f = normalize(f, c)
    if dim_of(f, c) < 1:
        raise ValueError(f"{f} is an object, not an arrow")
    s = _Search(c, fragment)
    tower = s.best(f, max_depth)
    frontier = [cell for cell in s.frontier(tower, max_depth) if cell.reason != "depth-limit"]
    return SearchResult(tower.depth, tower, frontier, fragment.describe())


# ---------------------------------------------------------------------------
# closure analysis


@dataclass
class BranchReport:
    choice: Optional[WitnessEntry]
    depth: int
    status: str  # "complete-to-cap" or "incomplete"
    closure_sizes: list[int]
    dying: list[FrontierCell]


@dataclass
class ClosureReport:
    arrow: Term
    max_dim: int
    status: str
    branches: list[BranchReport]
    fragment: str

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def summary(self) -> str:
        lines = [f"status: {self.status}"]
        for b in self.branches:
            label = "none" if b.choice is None else ", ".join(str(t) for t in b.choice)
            lines.append(f"branch ({label}): depth {b.depth}, {b.status}")
            for cell in b.dying:
                lines.append(f"  dies at {cell.cell}: level {cell.level}, dimension {cell.dim}, "
                             f"{cell.reason}, budget {cell.budget} remaining")
        return "\n".join(lines)


COMPLETE = "complete up to dimension cap"
INCOMPLETE = "intrinsically incomplete"


def witness_closure(c: Computad, f: Term, fragment: Fragment = Fragment()) -> ClosureReport:
    """Follow every root choice of inverse data as far as the truncation allows.

    A branch is complete-to-cap when its only dead ends are cells whose
    inverse data would exceed ``max_dim``; otherwise some cell runs out of
    candidates while dimension budget remains.
    """
    f = normalize(f, c)
    k = dim_of(f, c)
    max_depth = max(c.max_dim - k + 1, 0)
    s = _Search(c, fragment)
    plus_opts = list(s.side_options(f, k, True))
    minus_opts = list(s.side_options(f, k, False))
    branches: list[BranchReport] = []
    if not plus_opts or not minus_opts:
        reason = s._failure_reason(f, k)
        dead = FrontierCell(f, 0, k, reason, c.max_dim - k)
        status = "complete-to-cap" if not dead.intrinsic else "incomplete"
        branches.append(BranchReport(None, 0, status, [1], [dead]))
    for (gm, hm), (gp, hp) in product(minus_opts, plus_opts):
        tower = InverseTower(f, gm, gp, s.best(hp, max_depth - 1), s.best(hm, max_depth - 1))
        dying = [cell for cell in s.frontier(tower, max_depth) if cell.reason != "depth-limit"]
        intrinsic = [cell for cell in dying if cell.intrinsic]
        sizes: dict[int, int] = {}
        for _, level, node in tower.nodes():
            if level <= tower.depth:
                sizes[level] = sizes.get(level, 0) + 1
        branches.append(BranchReport(
            WitnessEntry(gm, gp, hp, hm), tower.depth,
            "incomplete" if intrinsic else "complete-to-cap",
            [sizes[i] for i in sorted(sizes)], intrinsic or dying))
    status = COMPLETE if any(b.status == "complete-to-cap" for b in branches) else INCOMPLETE
    return ClosureReport(f, c.max_dim, status, branches, fragment.describe())
