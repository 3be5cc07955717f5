"""Maps of computads defined on generators.

A map out of a free computad is determined by where it sends each
generator; it is well defined exactly when every image has the right
dimension and is compatible with the images of the generator's boundary.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from . import constructions as _cx
from .core import (
    SIDES, Comp, Computad, ComputadError, Gen, Id, Term, ValidationReport, boundary,
    count_cells, dim_of, normalize, rename, substitute,
)


class Mismatch(ComputadError):
    pass


class SizeLimitExceeded(ComputadError):
    pass


@dataclass(frozen=True)
class ComputadMap:
    source: Computad
    target: Computad
    assign: Mapping[str, Term]

    def __call__(self, term: Term) -> Term:
        return apply_map(self, term)


def identity_map(c: Computad) -> ComputadMap:
    return ComputadMap(c, c, {g.name: Gen(g.name) for g in c.generators})


def renaming_map(source: Computad, target: Computad, names: Mapping[str, str]) -> ComputadMap:
    return ComputadMap(source, target, {n: Gen(names.get(n, n)) for n in source.names})


def apply_map(m: ComputadMap, t: Term) -> Term:
    return substitute(t, m.assign, m.target)


def validate_map(m: ComputadMap) -> ValidationReport:
    report = ValidationReport()
    for g in m.source.generators:
        if g.name not in m.assign:
            report.issues.append(f"{g.name}: no image assigned")
            continue
        image = m.assign[g.name]
        try:
            nf = normalize(image, m.target)
            d = dim_of(nf, m.target)
        except ComputadError as exc:
            report.issues.append(f"{g.name}: image {image} is ill-typed in the target: {exc}")
            continue
        if d != g.dim:
            report.issues.append(f"{g.name}: image {image} has dimension {d}, expected {g.dim}")
            continue
        if g.dim == 0:
            continue
        for side, stored in zip(SIDES, (g.src, g.tgt)):
            try:
                expected = apply_map(m, stored)
                actual = boundary(nf, g.dim - 1, side, m.target)
            except ComputadError as exc:
                report.issues.append(f"{g.name}: cannot compare {side}s: {exc}")
                continue
            if expected != actual:
                report.issues.append(
                    f"{g.name}: {side} of image is {actual}, but image of {side} is {expected}")
    extra = set(m.assign) - set(m.source.names)
    for name in sorted(extra):
        report.issues.append(f"{name}: assigned but not a generator of the source")
    return report


def compose_maps(f: ComputadMap, g: ComputadMap) -> ComputadMap:
    """The composite ``g ∘ f`` (first f, then g)."""
    if f.target.names != g.source.names or f.target.max_dim != g.source.max_dim:
        raise Mismatch("target of the first map is not the source of the second")
    return ComputadMap(f.source, g.target,
                       {n: apply_map(g, t) for n, t in f.assign.items()})


def maps_equal(f: ComputadMap, g: ComputadMap) -> bool:
    if f.source.names != g.source.names:
        return False
    return all(normalize(f.assign[n], f.target) == normalize(g.assign[n], g.target)
               for n in f.source.names)


def iso_check(a: Computad, b: Computad, max_generators: int = 20000) -> Optional[ComputadMap]:
    """Search for a generator bijection ``a -> b`` commuting with boundaries.

    Backtracking over generators in dimension order.  Candidates with the
    same name are tried first, so a name-identical isomorphism is found
    without backtracking whenever it exists.
    """
    if len(a) > max_generators or len(b) > max_generators:
        raise SizeLimitExceeded(
            f"iso_check limited to {max_generators} generators ({len(a)}, {len(b)} given)")
    if count_cells(a) != count_cells(b):
        return None

    # target generators indexed by (dim, src, tgt)
    index: dict[tuple, list[str]] = {}
    for g in b.generators:
        index.setdefault((g.dim, g.src, g.tgt), []).append(g.name)

    order = list(a.generators)
    names: dict[str, str] = {}
    used: set[str] = set()
    budget = [50 * max_generators + 1000]

    def candidates(i: int) -> list[str]:
        g = order[i]
        if g.dim == 0:
            key = (0, None, None)
        else:
            key = (g.dim, rename(g.src, names), rename(g.tgt, names))
        cands = [n for n in index.get(key, ()) if n not in used]
        if g.name in cands:
            cands.remove(g.name)
            cands.insert(0, g.name)
        return cands

    # iterative backtracking keeps deep searches off the Python stack
    stack: list[list[str]] = []
    i = 0
    while i < len(order):
        if i == len(stack):
            stack.append(candidates(i))
        if not stack[i]:
            stack.pop()
            i -= 1
            if i < 0:
                return None
            prev = names.pop(order[i].name)
            used.discard(prev)
            continue
        budget[0] -= 1
        if budget[0] < 0:
            raise SizeLimitExceeded("iso_check backtracking budget exhausted")
        choice = stack[i].pop(0)
        names[order[i].name] = choice
        used.add(choice)
        i += 1
    return renaming_map(a, b, names)


# ---------------------------------------------------------------------------
# named comparison maps

def stage_inclusion(d: int, D: int) -> ComputadMap:
    """The filtration inclusion E^(d) ⊂ E, truncated at dimension D."""
    if not 1 <= d <= D:
        raise ValueError("stage_inclusion needs 1 <= d <= D")
    src = _cx.e_stage(d)
    return ComputadMap(src, _cx.standard_e(D), {n: Gen(n) for n in src.names})


def tau1() -> ComputadMap:
    """The automorphism of the 1-truncation of E swapping u(-) and u(+)."""
    e1 = _cx.e_truncation_1()
    swap = {"u(-)": "u(+)", "u(+)": "u(-)"}
    return ComputadMap(e1, e1, {n: Gen(swap.get(n, n)) for n in e1.names})


def _drop_copy(name: str) -> str:
    if name == "u":
        return "u(0)"
    if name.startswith("u_"):
        return "u" + name[name.index("("):]
    return name


def omega_projection(N: int, D: int) -> ComputadMap:
    """E^(ω) -> E forgetting the copy index: u_i(σ) ↦ u(σ), u ↦ u(0)."""
    src = _cx.e_omega(N, D)
    return ComputadMap(src, _cx.standard_e(D), {n: Gen(_drop_copy(n)) for n in src.names})


def suspension_comparison(d: int) -> ComputadMap:
    """Susp E^(d-1) ⊔ Susp E^(d-1) -> E^(d).

    The left summand lands in the endomorphisms of 0 (0_E ↦ id_0,
    1_E ↦ u(0) then u(+), u(σ) ↦ u(+,σ)), the right summand in those of 1.
    """
    if d < 2:
        raise ValueError("suspension_comparison needs d >= 2")
    sus = _cx.suspend(_cx.e_stage(d - 1))
    src = _cx.coproduct(sus, sus)
    zero, one, u = Gen("0"), Gen("1"), Gen("u(0)")
    images = {
        "L": {"0": zero, "1": zero, "S(0)": Id(zero), "S(1)": Comp(0, [u, Gen("u(+)")])},
        "R": {"0": one, "1": one, "S(0)": Comp(0, [Gen("u(-)"), u]), "S(1)": Id(one)},
    }
    sign = {"L": "+", "R": "-"}
    assign: dict[str, Term] = {}
    for name in src.names:
        side, inner = name[0], name[2:]
        if inner in images[side]:
            assign[name] = images[side][inner]
        else:
            # S(u(σ)) ↦ u(±,σ)
            seq = inner[len("S(u("):-2]
            assign[name] = Gen(f"u({sign[side]},{seq})")
    return ComputadMap(src, _cx.e_stage(d), assign)
