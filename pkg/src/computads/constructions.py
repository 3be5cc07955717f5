"""Builders for the named complexes and presentation-level colimits.

Naming scheme (stable, used by golden tests):

* standard complex E: objects ``0``, ``1`` and cells ``u(σ)`` with σ written
  as comma-separated signs, e.g. ``u(+,-,0)``;
* copies inside E^(ω): ``u_i(σ)``, with the shared arrow called ``u``;
* suspension: fresh objects ``0``, ``1`` and ``S(g)`` for each old ``g``;
* amalgamation: ``L.``/``R.`` prefixes, only on name collisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import TYPE_CHECKING, Iterable, Iterator, Literal, Mapping, Sequence

from .core import (
    SOURCE, TARGET, Comp, Computad, ComputadError, Gen, Generator, Id, IllTyped,
    NameCollision, NotParallel, Term, boundary, dim_of, empty, is_parallel, normalize,
    point, rename, substitute,
)

if TYPE_CHECKING:
    from .morphisms import ComputadMap


class InvalidGluing(ComputadError):
    pass


SIGNS = ("-", "+")
# canonical order of sequence entries
ORDER = ("-", "0", "+")


def base(kind: Literal["point", "empty"]) -> Computad:
    if kind == "point":
        return point()
    if kind == "empty":
        return empty()
    raise ValueError(f"unknown base kind {kind!r}")


# ---------------------------------------------------------------------------
# suspension and globes


def suspend_term(t: Term) -> Term:
    if isinstance(t, Gen):
        return Gen(f"S({t.name})")
    if isinstance(t, Id):
        return Id(suspend_term(t.inner))
    return Comp._raw(t.level + 1, tuple(suspend_term(p) for p in t.parts))


def suspend(c: Computad) -> Computad:
    gens = [Generator("0", 0), Generator("1", 0)]
    for g in c.generators:
        if g.dim == 0:
            gens.append(Generator(f"S({g.name})", 1, Gen("0"), Gen("1")))
        else:
            gens.append(Generator(f"S({g.name})", g.dim + 1,
                                  suspend_term(g.src), suspend_term(g.tgt)))
    return Computad(c.max_dim + 1, tuple(gens))


def suspend_n(c: Computad, n: int) -> Computad:
    for _ in range(n):
        c = suspend(c)
    return c


def globe(d: int) -> Computad:
    return suspend_n(point(), d)


def boundary_globe(d: int) -> Computad:
    return suspend_n(empty(), d)


def globe_boundary_inclusion(d: int) -> "ComputadMap":
    from .morphisms import ComputadMap
    src, tgt = boundary_globe(d), globe(d)
    return ComputadMap(src, tgt, {n: Gen(n) for n in src.names})


# ---------------------------------------------------------------------------
# cell attachment and amalgamation


@dataclass(frozen=True)
class Cell:
    name: str
    dim: int
    src: Term
    tgt: Term


CellBatch = Sequence[Cell]


def attach_cells(c: Computad, batch: Iterable[Cell], max_dim: int | None = None) -> Computad:
    """Extend ``c`` by a batch of cells, each attached along a parallel pair.

    Batch entries may refer to earlier entries of lower dimension.  The
    result has ``max_dim`` (default: that of ``c``); cells above it are
    rejected.
    """
    batch = list(batch)
    top = c.max_dim if max_dim is None else max_dim
    current = Computad(top, c.generators)
    seen = set(current.names)
    # cells only refer to strictly lower dimensions, so each dimension can be
    # checked against the computad built so far in one sweep
    for d in sorted({cell.dim for cell in batch}):
        layer = []
        for cell in batch:
            if cell.dim != d:
                continue
            if cell.name in seen:
                raise NameCollision(f"generator {cell.name!r} already exists")
            seen.add(cell.name)
            if d < 1:
                layer.append(Generator(cell.name, 0))
                continue
            src, tgt = normalize(cell.src, current), normalize(cell.tgt, current)
            for side, t in (("source", src), ("target", tgt)):
                if dim_of(t, current) != d - 1:
                    raise IllTyped(f"{cell.name}: {side} {t} has dimension "
                                   f"{dim_of(t, current)}, expected {d - 1}", t)
            if not is_parallel(src, tgt, current):
                raise NotParallel(f"{cell.name}: {src} and {tgt} are not parallel")
            layer.append(Generator(cell.name, d, src, tgt))
        current = _extend(current, layer)
    return current


def _extend(c: Computad, gens: Sequence[Generator]) -> Computad:
    out = Computad(c.max_dim, c.generators + tuple(gens))
    # boundaries of old generators are unchanged by adding a new one
    out._cache.update(c._cache)
    out._nf.update(c._nf)
    return out


@dataclass(frozen=True)
class GluingData:
    """A span ``x <- shared -> y``; the left leg is an injective renaming of
    generators, the right leg an arbitrary computad map."""

    shared: Computad
    into_left: Mapping[str, str]
    into_right: "ComputadMap"


def amalgamate(x: Computad, glue: GluingData, y: Computad) -> Computad:
    """Pushout of ``x <- shared -> y`` when the left leg is a free inclusion."""
    from .morphisms import validate_map

    left = glue.into_left
    if set(left) != set(glue.shared.names):
        raise InvalidGluing("into_left must be defined on every shared generator")
    if len(set(left.values())) != len(left):
        raise InvalidGluing("into_left is not injective")
    for s in glue.shared.generators:
        if left[s.name] not in x:
            raise InvalidGluing(f"into_left sends {s.name!r} outside the left computad")
        xg = x[left[s.name]]
        if xg.dim != s.dim:
            raise InvalidGluing(f"into_left changes the dimension of {s.name!r}")
        if s.dim and (rename(s.src, left) != xg.src or rename(s.tgt, left) != xg.tgt):
            raise InvalidGluing(f"into_left does not preserve the boundary of {s.name!r}")
    if glue.into_right.source is not glue.shared and glue.into_right.source.names != glue.shared.names:
        raise InvalidGluing("into_right does not start at the shared computad")
    if glue.into_right.target is not y and glue.into_right.target.names != y.names:
        raise InvalidGluing("into_right does not land in the right computad")
    report = validate_map(glue.into_right)
    if not report.valid:
        raise InvalidGluing("into_right is not a valid map: " + "; ".join(report.issues))

    image = {v: k for k, v in left.items()}
    rest = [g for g in x.generators if g.name not in image]
    collide = {g.name for g in rest} & set(y.names)
    y_names = {n: (f"R.{n}" if n in collide else n) for n in y.names}
    x_names = {g.name: (f"L.{g.name}" if g.name in collide else g.name) for g in rest}

    assign: dict[str, Term] = {g.name: Gen(x_names[g.name]) for g in rest}
    for xn, sn in image.items():
        assign[xn] = rename(glue.into_right.assign[sn], y_names)

    gens = [Generator(y_names[g.name], g.dim,
                      None if g.src is None else rename(g.src, y_names),
                      None if g.tgt is None else rename(g.tgt, y_names))
            for g in y.generators]
    out = Computad(max(x.max_dim, y.max_dim), tuple(gens))
    for d in sorted({g.dim for g in rest}):
        layer = []
        for g in rest:
            if g.dim != d:
                continue
            if d == 0:
                layer.append(Generator(x_names[g.name], 0))
            else:
                layer.append(Generator(x_names[g.name], d, substitute(g.src, assign, out),
                                       substitute(g.tgt, assign, out)))
        out = _extend(out, layer)
    return out


def coproduct(a: Computad, b: Computad) -> Computad:
    from .morphisms import ComputadMap
    e = empty()
    return amalgamate(a, GluingData(e, {}, ComputadMap(e, b, {})), b)


# ---------------------------------------------------------------------------
# the walking isomorphism and the standard complex E


def walking_arrow() -> Computad:
    return Computad(1, (Generator("0", 0), Generator("1", 0),
                        Generator("u", 1, Gen("0"), Gen("1"))))


def walking_iso() -> Computad:
    f, gm, gp = Gen("f"), Gen("g-"), Gen("g+")
    return Computad(2, (
        Generator("0", 0),
        Generator("1", 0),
        Generator("f", 1, Gen("0"), Gen("1")),
        Generator("g-", 1, Gen("1"), Gen("0")),
        Generator("g+", 1, Gen("1"), Gen("0")),
        Generator("h+", 2, Id(Gen("0")), Comp(0, [f, gp])),
        Generator("h-", 2, Comp(0, [gm, f]), Id(Gen("1"))),
    ))


def u_name(seq: Sequence[str], copy: int | None = None) -> str:
    head = "u" if copy is None else f"u_{copy}"
    return f"{head}({','.join(seq)})"


def sequences(d: int) -> Iterator[tuple[str, ...]]:
    """Admissible sequences of length d in canonical order (- < 0 < +)."""
    for prefix in product(SIGNS, repeat=d - 1):
        for last in ORDER:
            yield prefix + (last,)


def _e_cells(d: int, only_zero: bool = False, copy: int | None = None) -> Iterator[Generator]:
    """The d-dimensional generators of E (d >= 1)."""
    name = lambda seq: u_name(seq, copy)  # noqa: E731
    for seq in sequences(d):
        if only_zero and seq[-1] != "0":
            continue
        if d == 1:
            if seq == ("0",):
                yield Generator(name(seq), 1, Gen("0"), Gen("1"))
            else:
                yield Generator(name(seq), 1, Gen("1"), Gen("0"))
            continue
        sigma, sign, last = seq[:-2], seq[-2], seq[-1]
        f = Gen(name(sigma + ("0",)))
        g = Gen(name(sigma + (sign,)))
        j = d - 2
        if sign == "+":
            unit = Id(_stage_boundary(sigma, j, SOURCE, copy))
            loop = Comp(j, [f, g])
            src, tgt = (unit, loop) if last == "0" else (loop, unit)
        else:
            unit = Id(_stage_boundary(sigma, j, TARGET, copy))
            loop = Comp(j, [g, f])
            src, tgt = (loop, unit) if last == "0" else (unit, loop)
        yield Generator(name(seq), d, src, tgt)


@lru_cache(maxsize=None)
def _stage_boundary(sigma: tuple[str, ...], level: int, side: str, copy: int | None) -> Term:
    """The ``level``-boundary of u(σ,0) where ``level = len(σ)``.

    Computed symbolically from the attaching rules, so builders need not
    consult a partially built computad.
    """
    if not sigma:
        return Gen("0") if side == SOURCE else Gen("1")
    parent, sign = sigma[:-1], sigma[-1]
    f = Gen(u_name(parent + ("0",), copy))
    g = Gen(u_name(parent + (sign,), copy))
    j = len(parent)
    if sign == "+":
        unit = Id(_stage_boundary(parent, j, SOURCE, copy))
        return unit if side == SOURCE else Comp(j, [f, g])
    unit = Id(_stage_boundary(parent, j, TARGET, copy))
    return Comp(j, [g, f]) if side == SOURCE else unit


def _objects() -> list[Generator]:
    return [Generator("0", 0), Generator("1", 0)]


def standard_e(max_dim: int) -> Computad:
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    gens = _objects()
    for d in range(1, max_dim + 1):
        gens.extend(_e_cells(d))
    return Computad(max_dim, tuple(gens))


def e_stage(d: int, copy: int | None = None) -> Computad:
    """E^(d): all cells of E below dimension d plus the u(σ,0) in dimension d."""
    if d < 1:
        raise ValueError("e_stage needs d >= 1")
    gens = _objects()
    for k in range(1, d):
        gens.extend(_e_cells(k, copy=copy))
    gens.extend(_e_cells(d, only_zero=True, copy=copy))
    return Computad(d, tuple(gens))


def e_truncation_1() -> Computad:
    """The 1-truncation E^1: objects and the three 1-cells."""
    return standard_e(1)


def e_omega(copies: int, max_dim: int) -> Computad:
    """Truncation of E^(ω) keeping copies 2..N and cells up to ``max_dim``.

    Assembled by iterated amalgamation of the stages E^(i) over the walking
    arrow, identifying every u_i(0) with the shared arrow ``u``.
    """
    from .morphisms import ComputadMap

    if copies < 1 or max_dim < 1:
        raise ValueError("e_omega needs copies >= 1 and max_dim >= 1")
    arrow = walking_arrow()
    acc = Computad(max_dim, arrow.generators)
    for i in range(2, copies + 1):
        stage = e_stage(min(i, max_dim), copy=i)
        glue = GluingData(
            shared=arrow,
            into_left={"0": "0", "1": "1", "u": u_name(("0",), i)},
            into_right=ComputadMap(arrow, acc, {n: Gen(n) for n in arrow.names}),
        )
        acc = amalgamate(stage, glue, acc)
    return acc


def composable_pair(max_dim: int) -> Computad:
    """E' : two copies of E glued target-of-first to source-of-second."""
    from .morphisms import ComputadMap

    e = standard_e(max_dim)
    pt = point()
    glue = GluingData(pt, {"∗": "1"}, ComputadMap(pt, e, {"∗": Gen("0")}))
    return amalgamate(e, glue, e)


# ---------------------------------------------------------------------------
# the filtration step as a pushout


def iso_batch(stage: Computad, sigma: tuple[str, ...]) -> list[Cell]:
    """Cells attached to E^(d) for one σ in the pushout building E^(d+1).

    Σ^(d-1) I is glued along its top globe, sending f to u(σ,0); the new
    cells are the images of g±, h± named u(σ,±) and u(σ,±,0).
    """
    d = len(sigma) + 1
    sus = suspend_n(walking_iso(), d - 1)
    wrap = lambda n: "S(" * (d - 1) + n + ")" * (d - 1)  # noqa: E731
    top = u_name(sigma + ("0",))
    assign: dict[str, Term] = {wrap("f"): Gen(top)}
    for i in range(d):
        for side in (SOURCE, TARGET):
            cell = boundary(Gen(wrap("f")), i, side, sus)
            assert isinstance(cell, Gen)
            assign[cell.name] = boundary(Gen(top), i, side, stage)
    new = {"g-": u_name(sigma + ("-",)), "g+": u_name(sigma + ("+",)),
           "h+": u_name(sigma + ("+", "0")), "h-": u_name(sigma + ("-", "0"))}
    for old, name in new.items():
        assign[wrap(old)] = Gen(name)
    batch = []
    for old in ("g-", "g+", "h+", "h-"):
        g = sus[wrap(old)]
        batch.append(Cell(new[old], g.dim, _plain_subst(g.src, assign),
                          _plain_subst(g.tgt, assign)))
    return batch


def _plain_subst(t: Term, assign: Mapping[str, Term]) -> Term:
    if isinstance(t, Gen):
        return assign[t.name]
    if isinstance(t, Id):
        return Id(_plain_subst(t.inner, assign))
    return Comp._raw(t.level, tuple(_plain_subst(p, assign) for p in t.parts))


def e_stage_by_pushout(d: int) -> Computad:
    """E^(d+1) obtained from E^(d) by attaching one suspended copy of I per σ."""
    stage = e_stage(d)
    batch: list[Cell] = []
    for sigma in product(SIGNS, repeat=d - 1):
        batch.extend(iso_batch(stage, sigma))
    # g-cells first, then h-cells, so references resolve
    batch.sort(key=lambda cell: cell.dim)
    return attach_cells(stage, batch, max_dim=d + 1)
