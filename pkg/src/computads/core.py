"""Computads, pasting terms, globular boundaries and term normalization.

A computad is a graded list of named generators.  Every generator of
dimension ``d >= 1`` is attached along a parallel pair of normalized pasting
terms of dimension ``d - 1``.  Pasting terms are built from generators,
identities and n-ary composites along a chosen boundary level.

Composites are stored in diagrammatic order: ``Comp(j, [f, g])`` is "first f,
then g" along their j-dimensional boundary.

Equality of terms is structural equality of normal forms modulo the strict
unit and associativity laws (plus the rule that a composite of identities is
the identity of the composite).  Interchange is not decided.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping, Optional, Sequence, Union

Side = Literal["source", "target"]
SOURCE: Side = "source"
TARGET: Side = "target"
SIDES: tuple[Side, Side] = (SOURCE, TARGET)

EQUALITY_FRAGMENT = "equality fragment: unit+assoc"


class ComputadError(Exception):
    """Base class for all errors raised by this package."""


class UnknownGenerator(ComputadError):
    pass


class LevelOutOfRange(ComputadError):
    pass


class IllTyped(ComputadError):
    def __init__(self, message: str, term: Optional["Term"] = None):
        super().__init__(message)
        self.term = term


class NotParallel(ComputadError):
    pass


class NameCollision(ComputadError):
    pass


# ---------------------------------------------------------------------------
# pasting terms


@dataclass(frozen=True, slots=True)
class Gen:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Id:
    inner: "Term"

    def __str__(self) -> str:
        return f"id({self.inner})"


class Comp:
    """An n-ary composite (n >= 2) along the ``level``-dimensional boundary."""

    __slots__ = ("level", "parts", "_hash")

    def __init__(self, level: int, parts: Iterable["Term"]):
        parts = tuple(parts)
        if len(parts) < 2:
            raise IllTyped(f"comp{level} needs at least two parts, got {len(parts)}")
        if level < 0:
            raise IllTyped(f"negative composition level {level}")
        self.level = level
        self.parts = parts
        self._hash = None

    @classmethod
    def _raw(cls, level: int, parts: tuple["Term", ...]) -> "Comp":
        obj = object.__new__(cls)
        obj.level = level
        obj.parts = parts
        obj._hash = None
        return obj

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Comp):
            return NotImplemented
        return self.level == other.level and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((Comp, self.level, self.parts))
        return self._hash

    def __setattr__(self, key, value):
        if key != "_hash" and hasattr(self, "_hash"):
            raise AttributeError("Comp is immutable")
        object.__setattr__(self, key, value)

    def __repr__(self) -> str:
        return f"Comp(level={self.level}, parts={list(self.parts)!r})"

    def __str__(self) -> str:
        return f"comp{self.level}(" + ", ".join(str(p) for p in self.parts) + ")"


Term = Union[Gen, Id, Comp]


def iterated_id(term: Term, times: int) -> Term:
    for _ in range(times):
        term = Id(term)
    return term


def peel_ids(term: Term, times: int) -> Optional[Term]:
    """Strip exactly ``times`` identity layers, or return None."""
    for _ in range(times):
        if not isinstance(term, Id):
            return None
        term = term.inner
    return term


def generators_in(term: Term) -> Iterator[str]:
    if isinstance(term, Gen):
        yield term.name
    elif isinstance(term, Id):
        yield from generators_in(term.inner)
    else:
        for p in term.parts:
            yield from generators_in(p)


def term_size(term: Term) -> int:
    if isinstance(term, Gen):
        return 1
    if isinstance(term, Id):
        return 1 + term_size(term.inner)
    return 1 + sum(term_size(p) for p in term.parts)


# ---------------------------------------------------------------------------
# computads


@dataclass(frozen=True, slots=True)
class Generator:
    name: str
    dim: int
    src: Optional[Term] = None
    tgt: Optional[Term] = None


@dataclass(frozen=True)
class Computad:
    """A finite computad.  Generators are kept grouped by dimension; the
    relative order inside one dimension is the insertion order."""

    max_dim: int
    generators: tuple[Generator, ...]
    _index: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _nf: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.max_dim < 0:
            raise LevelOutOfRange("max_dim must be non-negative")
        gens = tuple(sorted(self.generators, key=lambda g: g.dim))
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.name in self._index:
                raise NameCollision(f"duplicate generator name {g.name!r}")
            if g.dim < 0 or g.dim > self.max_dim:
                raise LevelOutOfRange(
                    f"generator {g.name!r} has dimension {g.dim} outside 0..{self.max_dim}")
            self._index[g.name] = g

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def of_dim(self, d: int) -> list[Generator]:
        return [g for g in self.generators if g.dim == d]

    def restrict(self, keep: Iterable[str], max_dim: Optional[int] = None) -> "Computad":
        """Sub-presentation on the given names (boundary closure is not checked)."""
        keep = set(keep)
        return Computad(self.max_dim if max_dim is None else max_dim,
                        tuple(g for g in self.generators if g.name in keep))


def point() -> Computad:
    return Computad(0, (Generator("∗", 0),))


def empty() -> Computad:
    return Computad(0, ())


# ---------------------------------------------------------------------------
# dimensions, boundaries, normalization


def dim_of(term: Term, ctx: Computad) -> int:
    if isinstance(term, Gen):
        g = ctx._index.get(term.name)
        return g.dim if g is not None else ctx[term.name].dim
    if isinstance(term, Id):
        return dim_of(term.inner, ctx) + 1
    return dim_of(term.parts[0], ctx)


def _gen_boundary(name: str, level: int, side: Side, ctx: Computad) -> Term:
    key = (name, level, side)
    cached = ctx._cache.get(key)
    if cached is not None:
        return cached
    g = ctx[name]
    if level >= g.dim:
        raise LevelOutOfRange(f"{name!r} has dimension {g.dim}; no {level}-boundary")
    stored = g.src if side == SOURCE else g.tgt
    if stored is None:
        raise IllTyped(f"generator {name!r} of dimension {g.dim} has no {side}")
    out = stored if level == g.dim - 1 else boundary(stored, level, side, ctx)
    ctx._cache[key] = out
    return out


def boundary(term: Term, level: int, side: Side, ctx: Computad) -> Term:
    """The normalized ``level``-dimensional source or target of ``term``."""
    if level < 0:
        raise LevelOutOfRange(f"negative boundary level {level}")
    if isinstance(term, Gen):
        return _gen_boundary(term.name, level, side, ctx)
    if isinstance(term, Id):
        d = dim_of(term.inner, ctx)
        if level > d:
            raise LevelOutOfRange(f"level {level} >= dimension {d + 1} of {term}")
        if level == d:
            return normalize(term.inner, ctx)
        return boundary(term.inner, level, side, ctx)
    j = term.level
    if level == j:
        part = term.parts[0] if side == SOURCE else term.parts[-1]
        return boundary(part, level, side, ctx)
    if level < j:
        return boundary(term.parts[0], level, side, ctx)
    d = dim_of(term.parts[0], ctx)
    if level >= d:
        raise LevelOutOfRange(f"level {level} >= dimension {d} of {term}")
    return _normalize_comp(j, [boundary(p, level, side, ctx) for p in term.parts], ctx)


def normalize(term: Term, ctx: Computad) -> Term:
    """Unique normal form modulo unit and associativity laws.

    Raises IllTyped when a composite is not composable.
    """
    if isinstance(term, Gen):
        ctx[term.name]
        return term
    if isinstance(term, Id):
        inner = normalize(term.inner, ctx)
        return term if inner is term.inner else Id(inner)
    return _normalize_comp(term.level, [normalize(p, ctx) for p in term.parts], ctx)


def _normalize_comp(j: int, parts: Sequence[Term], ctx: Computad) -> Term:
    # parts are already normal
    key = (j, tuple(parts))
    hit = ctx._nf.get(key)
    if hit is not None:
        return hit
    out = _normalize_comp_uncached(j, key[1], ctx)
    ctx._nf[key] = out
    return out


def _normalize_comp_uncached(j: int, parts: Sequence[Term], ctx: Computad) -> Term:
    flat: list[Term] = []
    for p in parts:
        if isinstance(p, Comp) and p.level == j:
            flat.extend(p.parts)
        else:
            flat.append(p)
    dims = [dim_of(p, ctx) for p in flat]
    k = dims[0]
    for p, d in zip(flat, dims):
        if d != k:
            raise IllTyped(f"comp{j} mixes dimensions {k} and {d} (part {p})", p)
    if j >= k:
        raise IllTyped(f"comp{j} of {k}-dimensional terms: level must be below {k}")
    for a, b in zip(flat, flat[1:]):
        ta = boundary(a, j, TARGET, ctx)
        sb = boundary(b, j, SOURCE, ctx)
        if ta != sb:
            raise IllTyped(
                f"not {j}-composable: tgt{j}({a}) = {ta} but src{j}({b}) = {sb}",
                Comp._raw(j, tuple(flat)))
    units = [peel_ids(p, k - j) is not None for p in flat]
    kept = [p for p, u in zip(flat, units) if not u]
    if not kept:
        return flat[0]
    # adjacent identities merge: id(a) *j id(b) = id(a *j b)
    merged: list[Term] = []
    run: list[Term] = []
    for p in kept + [None]:
        if isinstance(p, Id):
            run.append(p.inner)
            continue
        if len(run) == 1:
            merged.append(Id(run[0]))
        elif run:
            merged.append(Id(_normalize_comp(j, run, ctx)))
        run = []
        if p is not None:
            merged.append(p)
    if len(merged) == 1:
        return merged[0]
    return Comp._raw(j, tuple(merged))


def terms_equal(a: Term, b: Term, ctx: Computad) -> bool:
    return normalize(a, ctx) == normalize(b, ctx)


def is_parallel(a: Term, b: Term, ctx: Computad, top_only: bool = False) -> bool:
    """Equal dimension and equal boundaries at every level.

    With ``top_only`` only the highest boundaries are compared; for terms over
    a valid computad the lower ones then agree by globularity.
    """
    da, db = dim_of(a, ctx), dim_of(b, ctx)
    if da != db:
        return False
    for i in range(da - 1 if top_only and da else 0, da):
        for side in SIDES:
            if boundary(a, i, side, ctx) != boundary(b, i, side, ctx):
                return False
    return True


def is_well_typed(term: Term, ctx: Computad) -> bool:
    try:
        normalize(term, ctx)
    except ComputadError:
        return False
    return True


# ---------------------------------------------------------------------------
# substitution


def substitute(term: Term, assign: Mapping[str, Term], target: Computad) -> Term:
    """Replace generators by terms of ``target`` and renormalize there."""
    return normalize(_subst(term, assign), target)


def _subst(term: Term, assign: Mapping[str, Term]) -> Term:
    if isinstance(term, Gen):
        try:
            return assign[term.name]
        except KeyError:
            raise UnknownGenerator(f"no image for generator {term.name!r}") from None
    if isinstance(term, Id):
        return Id(_subst(term.inner, assign))
    return Comp._raw(term.level, tuple(_subst(p, assign) for p in term.parts))


def rename(term: Term, names: Mapping[str, str]) -> Term:
    """Purely syntactic renaming; no normalization needed."""
    if isinstance(term, Gen):
        return Gen(names.get(term.name, term.name))
    if isinstance(term, Id):
        return Id(rename(term.inner, names))
    return Comp._raw(term.level, tuple(rename(p, names) for p in term.parts))


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    issues: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=lambda: [EQUALITY_FRAGMENT])

    @property
    def valid(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        return {"valid": self.valid, "issues": list(self.issues), "notes": list(self.notes)}


def check_generator(g: Generator, ctx: Computad) -> list[str]:
    if g.dim == 0:
        if g.src is not None or g.tgt is not None:
            return [f"{g.name}: 0-dimensional generator must not have a boundary"]
        return []
    if g.src is None or g.tgt is None:
        return [f"{g.name}: {g.dim}-dimensional generator lacks source or target"]
    issues: list[str] = []
    for side, t in ((SOURCE, g.src), (TARGET, g.tgt)):
        for ref in generators_in(t):
            if ref not in ctx:
                issues.append(f"{g.name}: {side} refers to unknown generator {ref!r}")
            elif ctx[ref].dim >= g.dim:
                issues.append(f"{g.name}: {side} refers to {ref!r} of dimension {ctx[ref].dim}")
    if issues:
        return issues
    for side, t in ((SOURCE, g.src), (TARGET, g.tgt)):
        try:
            nf = normalize(t, ctx)
        except ComputadError as exc:
            issues.append(f"{g.name}: {side} is ill-typed: {exc}")
            continue
        d = dim_of(t, ctx)
        if d != g.dim - 1:
            issues.append(f"{g.name}: {side} has dimension {d}, expected {g.dim - 1}")
        if nf != t:
            issues.append(f"{g.name}: {side} is not in normal form (normal form {nf})")
    if issues:
        return issues
    try:
        parallel = is_parallel(g.src, g.tgt, ctx, top_only=True)
    except ComputadError as exc:
        return [f"{g.name}: boundary computation failed: {exc}"]
    if not parallel:
        issues.append(f"{g.name}: source {g.src} and target {g.tgt} are not parallel")
    return issues


def validate_computad(c: Computad) -> ValidationReport:
    report = ValidationReport()
    for g in c.generators:
        report.issues.extend(check_generator(g, c))
    return report


def count_cells(c: Computad) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in c.generators:
        counts[g.dim] = counts.get(g.dim, 0) + 1
    return counts
