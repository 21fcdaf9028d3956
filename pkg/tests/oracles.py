"""Independent reference implementations used to cross-check the package.

These deliberately reimplement the checked operations from their
definitions, by different algorithms than the package uses.
"""

import random
from itertools import product

from pluralrw.terms import BOT, app, var
from pluralrw.disjsubst import image_of


def brute_force_compressible(thetas):
    """Definition form: materialize the full product of per-variable image
    sets and compare it against the realized image tuples as sets."""
    pool = [dict(t) for t in thetas]
    if not pool:
        return True
    names = sorted(set().union(*pool))
    if not names:
        return True
    realized = {tuple(image_of(t, x) for x in names) for t in pool}
    columns = [{image_of(t, x) for t in pool} for x in names]
    full = set(product(*columns))
    return realized == full


_TERM_POOL = (
    BOT,
    app("0"),
    app("1"),
    app("c", (app("0"),)),
    app("c", (app("1"),)),
    app("c", (BOT,)),
    app("d", (app("0"), app("1"))),
)


def random_theta_set(seed, max_substs=5, names=("X", "Y", "Z")):
    """A small random set of plain substitutions; some bindings are left
    out so identity images get exercised."""
    rng = random.Random(seed)
    chosen = rng.sample(names, rng.randint(1, len(names)))
    out = []
    for _ in range(rng.randint(1, max_substs)):
        theta = {}
        for x in chosen:
            if rng.random() < 0.8:
                theta[x] = rng.choice(_TERM_POOL)
        out.append(theta)
    return out
