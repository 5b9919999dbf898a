"""Closure and exhaustive subgroup searches over abstract hashable elements.

Everything here takes the group operation as a callable so the same code
serves coordinate tuples (abelian presentations) and table indices.
"""


def closure(gens, op, identity):
    """Subgroup generated by ``gens`` (finite, so closing under ``op`` suffices)."""
    elems = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = op(a, g)
                if b not in elems:
                    elems.add(b)
                    nxt.append(b)
        frontier = nxt
    return elems


def extend(sub, x, op):
    """``<sub, x>`` for an ``x`` commuting with every member of ``sub``."""
    out = set(sub)
    power = x
    while power not in sub:
        out.update(op(s, power) for s in sub)
        power = op(power, x)
    return out


def find_complement(elements, op, identity, z_set):
    """Lexicographically first complement of ``z_set`` inside the abelian group ``elements``.

    ``elements`` must be in the caller's lexicographic order.  Returns a set
    or ``None``; the search visits every subgroup meeting ``z_set``
    trivially whose order divides the index, so ``None`` is definite.
    """
    n, nz = len(elements), len(z_set)
    if n % nz:
        return None
    target = n // nz
    start = {identity}
    if target == 1:
        return start
    seen = {frozenset(start)}

    def dfs(current):
        for x in elements:
            if x in current or x in z_set:
                continue
            grown = extend(current, x, op)
            if target % len(grown):
                continue
            key = frozenset(grown)
            if key in seen:
                continue
            seen.add(key)
            if len(grown & z_set) != 1:
                continue
            if len(grown) == target:
                return grown
            found = dfs(grown)
            if found is not None:
                return found
        return None

    return dfs(start)


def subgroups_where(elements, op, identity, admissible, start=None):
    """All subgroups reachable from ``start`` by adding admissible elements one at a time.

    ``admissible(current, x)`` decides whether ``x`` may join ``current``
    and must be such that the admissible family is closed under the
    generated-subgroup step (e.g. isotropy, commutativity).  Returns the
    list of frozensets in discovery order.
    """
    start = frozenset(start if start is not None else {identity})
    seen = {start}
    order = [start]
    stack = [start]
    while stack:
        current = stack.pop()
        for x in elements:
            if x in current or not admissible(current, x):
                continue
            grown = frozenset(extend(current, x, op))
            if grown not in seen:
                seen.add(grown)
                order.append(grown)
                stack.append(grown)
    return order


def maximal_sets(family):
    """Members of ``family`` not strictly contained in another member."""
    family = list(family)
    by_size = sorted(family, key=len, reverse=True)
    out = []
    for s in family:
        if not any(len(t) > len(s) and s < t for t in by_size):
            out.append(s)
    return out
