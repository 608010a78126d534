"""Shared helpers for the test suite."""

import random
from itertools import product

from weakind import tables


def tripartitions(names, dedup=False):
    """All (X, Z, Y) splits with X, Z nonempty, lexicographic over role vectors."""
    out = []
    for vec in product("XZY", repeat=len(names)):
        groups = {"X": [], "Z": [], "Y": []}
        for name, role in zip(names, vec):
            groups[role].append(name)
        if not groups["X"] or not groups["Z"]:
            continue
        x, z, y = tuple(groups["X"]), tuple(groups["Z"]), tuple(groups["Y"])
        if dedup and tuple(sorted(x)) > tuple(sorted(z)):
            continue
        out.append((x, z, y))
    return out


def random_tables(seed, count, sizes=((3, 2), (3, 3), (4, 2))):
    """Deterministic stream of random joint tables over small schemas."""
    rng = random.Random(seed)
    for _ in range(count):
        n_vars, max_dom = sizes[rng.randrange(len(sizes))]
        names = [f"V{i}" for i in range(n_vars)]
        spec = [(n, rng.randint(2, max_dom)) for n in names]
        yield tables.random_joint_table(rng, spec)


def random_factorized_table(rng, names, max_dom=3):
    """A joint table that factorizes over a random grouping of the variables.

    Within each group the distribution is random; across groups it is a
    product, so exact strong independencies are guaranteed to exist.
    """
    from fractions import Fraction
    from itertools import product as iproduct

    spec = [(n, rng.randint(2, max_dom)) for n in names]
    groups = []
    remaining = list(names)
    rng.shuffle(remaining)
    while remaining:
        size = rng.randint(1, len(remaining))
        groups.append(remaining[:size])
        remaining = remaining[size:]

    sizes = dict(spec)
    factors = []
    for group in groups:
        configs = list(iproduct(*(range(sizes[n]) for n in group)))
        weights = [rng.randint(0, 5) for _ in configs]
        if not any(weights):
            weights[0] = 1
        total = sum(weights)
        factors.append(
            (group, {c: Fraction(w, total) for c, w in zip(configs, weights)})
        )

    schema = tables.VariableSchema(
        tuple(tables.Variable(n, tuple(str(i) for i in range(sizes[n]))) for n in names)
    )
    rows = {}
    for config in schema.configs():
        value = Fraction(1)
        by_name = dict(zip(names, config))
        for group, dist in factors:
            value *= dist[tuple(int(by_name[n]) for n in group)]
        if value > 0:
            rows[config] = value
    return tables.Table(schema, rows, "joint")
