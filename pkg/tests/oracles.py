"""Brute-force reference implementations used only as test oracles.

Everything here recomputes results from first principles with naive
enumeration: explicit pair sets built by double loops, composition by
triple loops, connected components by traversal, and conditionals by
direct summation over table rows. The package's partition machinery is
deliberately not used, so agreement between the two paths is meaningful.
"""

from fractions import Fraction

ZERO = Fraction(0)


def agree_pairs(rows, positions):
    """Ordered index pairs whose configs agree on the given positions."""
    n = len(rows)
    pairs = set()
    for i in range(n):
        for j in range(n):
            if all(rows[i][p] == rows[j][p] for p in positions):
                pairs.add((i, j))
    return pairs


def compose_pairs(p_pairs, q_pairs, n):
    out = set()
    for i in range(n):
        for j in range(n):
            if (i, j) not in p_pairs:
                continue
            for k in range(n):
                if (j, k) in q_pairs:
                    out.add((i, k))
    return out


def components(pairs, n):
    adj = {i: set() for i in range(n)}
    for i, k in pairs:
        adj[i].add(k)
        adj[k].add(i)
    seen: set[int] = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        comp: set[int] = set()
        stack = [start]
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adj[v] - comp)
        seen |= comp
        out.append(frozenset(comp))
    return sorted(out, key=min)


def join_partition(blocks_a, blocks_b, n):
    """Transitive-closure join of two partitions, as canonical blocks."""
    pairs = set()
    for blocks in (blocks_a, blocks_b):
        for block in blocks:
            for i in block:
                for j in block:
                    pairs.add((i, j))
    return tuple(components(pairs, n))


def _positions(table, names):
    schema_names = table.schema.names
    return [schema_names.index(v) for v in names]


def _matches(config, positions, wanted):
    return all(config[p] == w for p, w in zip(positions, wanted))


def _mass(table, positions, wanted):
    total = ZERO
    for config, value in table.rows.items():
        if _matches(config, positions, wanted):
            total += value
    return total


def cond_oracle(table, x_map, g_map):
    """P(x | g) for a joint table by direct summation; None when undefined."""
    g_pos = _positions(table, list(g_map))
    g_vals = list(g_map.values())
    pg = _mass(table, g_pos, g_vals)
    if pg == 0:
        return None
    both_pos = g_pos + _positions(table, list(x_map))
    both_vals = g_vals + list(x_map.values())
    return _mass(table, both_pos, both_vals) / pg


def ci_oracle(table, x_vars, z_vars, y_vars):
    """Strong conditional independence on a joint table, direct enumeration."""
    schema = table.schema
    for y_cfg in schema.configs(y_vars):
        y_map = dict(zip(y_vars, y_cfg))
        for z_cfg in schema.configs(z_vars):
            z_map = dict(zip(z_vars, z_cfg))
            yz_map = {**y_map, **z_map}
            if table.partial_mass(yz_map) == 0:
                continue
            for x_cfg in schema.configs(x_vars):
                x_map = dict(zip(x_vars, x_cfg))
                lhs = cond_oracle(table, x_map, yz_map)
                rhs = cond_oracle(table, x_map, y_map)
                if lhs != rhs:
                    return False
    return True


def _class_ci(table, rows, block, x_vars, y_vars, z_vars):
    """Class-restricted check: conditionals constant across the class's z-values."""
    x_pos = _positions(table, x_vars)
    y_pos = _positions(table, y_vars)
    z_pos = _positions(table, z_vars)
    xs = sorted({tuple(rows[i][p] for p in x_pos) for i in block})
    ys = sorted({tuple(rows[i][p] for p in y_pos) for i in block})
    zs = sorted({tuple(rows[i][p] for p in z_pos) for i in block})
    assert len(ys) == 1
    y_map = dict(zip(y_vars, ys[0]))
    joint = table.kind == "joint"
    if joint:
        block_mass = sum((table.rows[rows[i]] for i in block), ZERO)
    for x_cfg in xs:
        x_map = dict(zip(x_vars, x_cfg))
        values = []
        for z_cfg in zs:
            z_map = dict(zip(z_vars, z_cfg))
            if joint:
                values.append(cond_oracle(table, x_map, {**y_map, **z_map}))
            else:
                full = table.schema.merge(x_map, y_map, z_map)
                values.append(table.rows.get(full, ZERO))
        if any(v != values[0] for v in values):
            return False
        if joint:
            x_mass = sum(
                (
                    table.rows[rows[i]]
                    for i in block
                    if tuple(rows[i][p] for p in x_pos) == x_cfg
                ),
                ZERO,
            )
            if values[0] != x_mass / block_mass:
                return False
    return True


def _weak_parts(table, rows, x_vars, y_vars, z_vars):
    """(commutes, classes) for the composition over the given rows."""
    n = len(rows)
    p = agree_pairs(rows, _positions(table, tuple(x_vars) + tuple(y_vars)))
    q = agree_pairs(rows, _positions(table, tuple(y_vars) + tuple(z_vars)))
    pq = compose_pairs(p, q, n)
    qp = compose_pairs(q, p, n)
    if pq != qp:
        return False, []
    return True, components(pq, n)


def wi_oracle(table, x_vars, z_vars, y_vars):
    rows = list(table.rows)
    if not rows:
        return True
    ok, classes = _weak_parts(table, rows, x_vars, y_vars, z_vars)
    if not ok:
        return False
    return all(
        _class_ci(table, rows, block, x_vars, y_vars, z_vars) for block in classes
    )


def cwi_oracle(table, x_vars, z_vars, context):
    ctx_vars = tuple(table.schema.order(context))
    ctx_pos = _positions(table, ctx_vars)
    wanted = [context[v] for v in ctx_vars]
    rows = [cfg for cfg in table.rows if _matches(cfg, ctx_pos, wanted)]
    if not rows:
        return True
    ok, classes = _weak_parts(table, rows, x_vars, ctx_vars, z_vars)
    if not ok:
        return False
    z_pos = _positions(table, z_vars)
    witnesses = 0
    satisfied = []
    for block in classes:
        good = _class_ci(table, rows, block, x_vars, ctx_vars, z_vars)
        satisfied.append(good)
        zs = {tuple(rows[i][p] for p in z_pos) for i in block}
        if good and len(zs) >= 2:
            witnesses += 1
    return witnesses > 0 or (len(classes) == 1 and satisfied[0])
