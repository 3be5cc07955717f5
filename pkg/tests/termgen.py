"""Random well-typed terms, built from a seed so hypothesis can shrink the seed."""
import random

from computads import (
    composable_pair, e_omega, e_stage, globe, standard_e, walking_iso,
)
from computads.core import SOURCE, TARGET, Comp, Id, Gen, boundary, dim_of

COMPLEXES = {
    "E3": e_stage(3),
    "E4": standard_e(4),
    "I": walking_iso(),
    "pair3": composable_pair(3),
    "omega2": e_omega(2, 3),
    "globe3": globe(3),
}


def random_term(rng, c, steps=14, dim=None):
    """Grow a pool of terms by whiskering, composing and adding identities.

    Composites are built on unnormalized parts, so results carry nested
    composites and identities for the normalizer to chew on.
    """
    pool = [Gen(g.name) for g in c.generators]
    pool += [Id(Gen(g.name)) for g in c.generators if g.dim < c.max_dim]
    dims = [dim_of(t, c) for t in pool]
    start = len(pool)
    for _ in range(steps):
        i = rng.randrange(len(pool))
        a, d = pool[i], dims[i]
        if rng.random() < 0.15 and d < c.max_dim:
            pool.append(Id(a))
            dims.append(d + 1)
            continue
        if d == 0:
            continue
        j = rng.randrange(d)
        if rng.random() < 0.5:
            ta = boundary(a, j, TARGET, c)
            cands = [b for b, e in zip(pool, dims) if e == d and boundary(b, j, SOURCE, c) == ta]
            parts = lambda b: [a, b]  # noqa: E731
        else:
            sa = boundary(a, j, SOURCE, c)
            cands = [b for b, e in zip(pool, dims) if e == d and boundary(b, j, TARGET, c) == sa]
            parts = lambda b: [b, a]  # noqa: E731
        if cands:
            pool.append(Comp(j, parts(rng.choice(cands))))
            dims.append(d)
    ok = [i for i, e in enumerate(dims) if dim is None or e == dim]
    grown = [i for i in ok if i >= start][-4:]
    i = rng.choice(grown) if grown and rng.random() < 0.8 else rng.choice(ok)
    return pool[i]


def seeded(seed, names=None):
    rng = random.Random(seed)
    key = rng.choice(sorted(names or COMPLEXES))
    return rng, key, COMPLEXES[key]
