"""Cardinality evaluation of pasting terms in finite-set spans.

Send every generator below dimension k to the trivial span over the point
and every k-generator to a finite set.  Composites at any level are then
products and identities are singletons, so a k-dimensional term evaluates to
a natural number.  Two k-generators with different values are distinct; a
k-term of value 0 (other than an identity) is not invertible, since an
invertible cell would have to evaluate to an invertible span, i.e. to 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import Computad, ComputadError, Gen, Id, Term, dim_of, normalize

SPAN_ARGUMENT = "finite-set span model: lower cells trivial, k-cells sent to finite sets"


class LevelMismatch(ComputadError):
    pass


class SameGenerator(ComputadError):
    pass


@dataclass(frozen=True)
class CardinalityAssignment:
    level: int
    cards: dict = field(default_factory=dict)

    @classmethod
    def constant(cls, c: Computad, level: int, value: int) -> "CardinalityAssignment":
        return cls(level, {g.name: value for g in c.of_dim(level)})

    def missing(self, c: Computad) -> list[str]:
        return [g.name for g in c.of_dim(self.level) if g.name not in self.cards]


def eval_term(a: CardinalityAssignment, t: Term, c: Computad) -> int:
    d = dim_of(t, c)
    if d != a.level:
        raise LevelMismatch(f"{t} has dimension {d}, assignment is at level {a.level}")
    return _eval(a, t)


def _eval(a: CardinalityAssignment, t: Term) -> int:
    if isinstance(t, Gen):
        try:
            return a.cards[t.name]
        except KeyError:
            raise LevelMismatch(f"no cardinality for generator {t.name!r}") from None
    if isinstance(t, Id):
        return 1
    value = 1
    for p in t.parts:
        value *= _eval(a, p)
    return value


@dataclass
class Certificate:
    kind: str  # "distinct", "noninvertible" or "inconclusive"
    assignment: CardinalityAssignment
    terms: list[Term]
    values: list[int]
    argument: str = SPAN_ARGUMENT

    @property
    def certified(self) -> bool:
        return self.kind != "inconclusive"


def certify_noninvertible(c: Computad, t: Term) -> Certificate:
    nf = normalize(t, c)
    k = dim_of(nf, c)
    if k < 1:
        raise LevelMismatch(f"{t} is an object; invertibility concerns arrows")
    a = CardinalityAssignment.constant(c, k, 0)
    value = eval_term(a, nf, c)
    kind = "noninvertible" if value == 0 and not isinstance(nf, Id) else "inconclusive"
    return Certificate(kind, a, [nf], [value])


def certify_distinct(c: Computad, f: str, g: str) -> Certificate:
    if f == g:
        raise SameGenerator(f"{f!r} and {g!r} are the same generator")
    df, dg = c[f].dim, c[g].dim
    if df != dg:
        raise LevelMismatch(f"{f!r} has dimension {df} but {g!r} has dimension {dg}")
    cards = {h.name: 1 for h in c.of_dim(df)}
    cards[f] = 0
    a = CardinalityAssignment(df, cards)
    values = [eval_term(a, Gen(f), c), eval_term(a, Gen(g), c)]
    return Certificate("distinct", a, [Gen(f), Gen(g)], values)

