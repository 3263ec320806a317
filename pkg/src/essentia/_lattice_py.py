"""Pure-Python submodule-lattice kernel.

Fallback for the compiled core in ``_lattice``: identical interface and
identical output, an order of magnitude slower on large modules.
Submodule element sets are Python-int bitmasks over element indices;
index 0 must be the zero element, so a trivial intersection of two
masks is exactly the value 1.
"""

from __future__ import annotations


def _as_rows(table) -> list[list[int]]:
    return [list(map(int, row)) for row in table]


def _translate(mask: int, row: list[int]) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        m ^= low
        out |= 1 << row[low.bit_length() - 1]
    return out


def _join(h: int, c: int, add_rows: list[list[int]]) -> int:
    """Sum of two submodules: union of translates of h by elements of c."""
    out = h
    m = c & ~1  # skip the zero element
    while m:
        low = m & -m
        m ^= low
        out |= _translate(h, add_rows[low.bit_length() - 1])
    return out


def _span(gens, add_rows, action_rows) -> int:
    """Closure of a generating set under addition and the scalar actions."""
    closed = 1
    queue = list(gens)
    while queue:
        g = queue.pop()
        if closed >> g & 1:
            continue
        # extend by the additive orbit of g
        orbit = []
        cur = g
        row = add_rows[g]
        while cur != 0:
            orbit.append(cur)
            cur = row[cur]
        grown = closed
        for o in orbit:
            grown |= _translate(closed, add_rows[o])
        closed = grown
        for act in action_rows:
            m = closed
            while m:
                low = m & -m
                m ^= low
                img = act[low.bit_length() - 1]
                if not closed >> img & 1:
                    queue.append(img)
    return closed


def enumerate_masks(add_table, action_tables) -> list[int]:
    """All submodule bitmasks, canonically sorted by (popcount, value).

    Seeds every cyclic submodule and closes the member list under joins
    with the seeds; every submodule is a finite join of cyclics, so the
    fixpoint is the full lattice.
    """
    add_rows = _as_rows(add_table)
    action_rows = _as_rows(action_tables)
    n = len(add_rows)
    seeds = sorted({_span([x], add_rows, action_rows) for x in range(n)})
    members: dict[int, int] = {}
    order: list[int] = []
    for s in seeds:
        if s not in members:
            members[s] = len(order)
            order.append(s)
    qi = 0
    while qi < len(order):
        h = order[qi]
        qi += 1
        for c in seeds:
            if c & h == c:
                continue
            j = _join(h, c, add_rows)
            if j not in members:
                members[j] = len(order)
                order.append(j)
    order.sort(key=lambda m: (m.bit_count(), m))
    return order


def compute_flags(masks: list[int], add_table) -> tuple[list[bool], list[bool], list[bool], list[bool]]:
    """Definitional flags for a canonically sorted lattice.

    essential(E): E meets every non-zero member non-trivially.
    simple(E): exactly two members are contained in E.
    direct summand(E): some member B has trivial intersection with E and
    joins with it to the whole module.
    """
    add_rows = _as_rows(add_table)
    n = len(add_rows)
    count = len(masks)
    full = masks[count - 1]
    pcs = [m.bit_count() for m in masks]

    essential = []
    for e in masks:
        ok = True
        for j in range(1, count):
            if e & masks[j] == 1:
                ok = False
                break
        essential.append(ok)

    proper = [essential[i] and masks[i] != full and pcs[i] > 1 for i in range(count)]

    simple = []
    for i, e in enumerate(masks):
        below = 0
        for j in range(count):
            if pcs[j] > pcs[i]:
                break
            if masks[j] & e == masks[j]:
                below += 1
                if below > 2:
                    break
        simple.append(below == 2)

    by_pc: dict[int, list[int]] = {}
    for m, pc in zip(masks, pcs):
        by_pc.setdefault(pc, []).append(m)
    summand = []
    for i, e in enumerate(masks):
        found = False
        if n % pcs[i] == 0:
            for b in by_pc.get(n // pcs[i], ()):
                if e & b == 1 and _join(e, b, add_rows) == full:
                    found = True
                    break
        summand.append(found)

    return essential, proper, simple, summand
