"""Law checks driven by an integer seed; shared by the property suites and the acceptance run."""
import random
from math import prod

from termgen import COMPLEXES, random_term, seeded

from computads import (
    apply_map, globe, identity_map, iso_check, omega_projection, stage_inclusion, suspend,
    suspension_comparison, tau1, validate_map,
)
from computads.constructions import globe_boundary_inclusion
from computads.core import SIDES, Computad, Gen, Generator, boundary, dim_of, is_well_typed, normalize, rename
from computads.span_model import CardinalityAssignment, eval_term

MAPS = {
    "susp3": suspension_comparison(3),
    "incl24": stage_inclusion(2, 4),
    "proj33": omega_projection(3, 3),
    "tau1": tau1(),
    "id_E3": identity_map(COMPLEXES["E3"]),
    "globe_bd3": globe_boundary_inclusion(3),
}


def check_globularity(seed):
    rng, _, c = seeded(seed)
    t = random_term(rng, c)
    n = dim_of(t, c)
    for j in range(n):
        for s in SIDES:
            b = boundary(t, j, s, c)
            assert dim_of(b, c) == j
            assert is_well_typed(b, c)
            for i in range(j):
                for s2 in SIDES:
                    assert boundary(b, i, s2, c) == boundary(t, i, s2, c)


def check_normalize(seed):
    rng, _, c = seeded(seed)
    t = random_term(rng, c)
    nf = normalize(t, c)
    assert normalize(nf, c) == nf
    assert dim_of(nf, c) == dim_of(t, c)
    for j in range(dim_of(t, c)):
        for s in SIDES:
            assert boundary(nf, j, s, c) == boundary(t, j, s, c)


def _top_occurrences(t, c, k):
    # k-dimensional generator occurrences, counted by a plain walk over the syntax tree
    stack, out = [t], []
    while stack:
        x = stack.pop()
        if isinstance(x, Gen):
            if c[x.name].dim == k:
                out.append(x.name)
        elif hasattr(x, "inner"):
            stack.append(x.inner)
        else:
            stack.extend(x.parts)
    return out


def check_eval(seed):
    rng, _, c = seeded(seed)
    k = rng.randint(1, c.max_dim)
    t = random_term(rng, c, dim=k)
    cards = {g.name: rng.randint(0, 4) for g in c.of_dim(k)}
    a = CardinalityAssignment(k, cards)
    value = eval_term(a, t, c)
    assert value == prod(cards[n] for n in _top_occurrences(t, c, k))
    assert eval_term(a, normalize(t, c), c) == value
    if hasattr(t, "parts"):
        assert value == prod(eval_term(a, p, c) for p in t.parts)


def check_map_boundary(seed):
    rng = random.Random(seed)
    m = MAPS[rng.choice(sorted(MAPS))]
    t = random_term(rng, m.source)
    image = apply_map(m, t)
    for j in range(dim_of(t, m.source)):
        for s in SIDES:
            assert apply_map(m, boundary(t, j, s, m.source)) == boundary(image, j, s, m.target)


def check_suspended_globe(seed):
    rng = random.Random(seed)
    d = rng.randint(0, 12)
    s = suspend(globe(d))
    names = [g.name for g in s.generators]
    fresh = [f"x{i}" for i in rng.sample(range(1000), len(names))]
    table = dict(zip(names, fresh))
    gens = [Generator(table[g.name], g.dim,
                      None if g.src is None else rename(g.src, table),
                      None if g.tgt is None else rename(g.tgt, table)) for g in s.generators]
    rng.shuffle(gens)
    renamed = Computad(s.max_dim, tuple(gens))
    m = iso_check(renamed, globe(d + 1))
    assert m is not None
    assert validate_map(m).valid


LAWS = {
    "globularity": check_globularity,
    "normalize": check_normalize,
    "eval": check_eval,
    "map_boundary": check_map_boundary,
    "suspended_globe": check_suspended_globe,
}
