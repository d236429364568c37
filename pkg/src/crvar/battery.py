"""A curated battery of small completely regular tables.

Used as separating witnesses and as the test bed for the operator-route
cross-checks.  Everything is order 1..8: left/right zero semigroups, chain
and diamond semilattices, rectangular bands, small groups, free bands,
direct products, left/right groups, an eight-element left regular band that
is not left normal (three-generated), and duals.
"""

from __future__ import annotations

from typing import Dict

from .semigroups import (
    UnaryCayleyTable,
    adjoin_zero,
    direct_product,
    dual,
    free_band,
    right_zero_extension,
    table,
)


def left_zero(n: int) -> UnaryCayleyTable:
    return table([[a] * n for a in range(n)], range(n), f"LZ{n}")


def right_zero(n: int) -> UnaryCayleyTable:
    return table([list(range(n)) for _ in range(n)], range(n), f"RZ{n}")


def chain_semilattice(n: int) -> UnaryCayleyTable:
    return table([[min(a, b) for b in range(n)] for a in range(n)], range(n), f"SL{n}")


def rectangular_band(p: int, q: int) -> UnaryCayleyTable:
    S = direct_product(left_zero(p), right_zero(q))
    return UnaryCayleyTable(S.op, S.inv, f"RB{p}{q}")


def cyclic_group(n: int) -> UnaryCayleyTable:
    return table(
        [[(a + b) % n for b in range(n)] for a in range(n)],
        [(-a) % n for a in range(n)],
        f"C{n}",
    )


def _first_occurrence(word: str) -> str:
    seen = []
    for ch in word:
        if ch not in seen:
            seen.append(ch)
    return "".join(seen)


def left_regular_band(generators) -> UnaryCayleyTable:
    """Closure of generator words under first-occurrence concatenation.

    Free left regular bands have distinct-letter sequences as normal forms;
    a suitable generator choice gives small members outside LNB.
    """
    elems = sorted({_first_occurrence(g) for g in generators}, key=lambda w: (len(w), w))
    while True:
        new = sorted(
            {_first_occurrence(u + v) for u in elems for v in elems} - set(elems),
            key=lambda w: (len(w), w),
        )
        if not new:
            break
        elems = sorted(elems + new, key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(elems)}
    op = [[index[_first_occurrence(u + v)] for v in elems] for u in elems]
    return table(op, range(len(elems)), "LRB" + str(len(elems)))


def battery() -> Dict[str, UnaryCayleyTable]:
    lz2, rz2 = left_zero(2), right_zero(2)
    sl2 = chain_semilattice(2)
    c2 = cyclic_group(2)
    fb2 = free_band(2)
    lrb8 = left_regular_band(["a", "b", "bc"])
    out = [
        left_zero(2),
        left_zero(3),
        right_zero(2),
        right_zero(3),
        chain_semilattice(2),
        chain_semilattice(3),
        direct_product(sl2, sl2),
        rectangular_band(2, 2),
        rectangular_band(2, 3),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        direct_product(c2, c2),
        free_band(1),
        fb2,
        dual(fb2),
        direct_product(lz2, c2),
        direct_product(rz2, c2),
        direct_product(sl2, c2),
        direct_product(lz2, sl2),
        direct_product(rz2, sl2),
        adjoin_zero(c2),
        right_zero_extension(sl2),
        lrb8,
        dual(lrb8),
    ]
    named = {}
    for S in out:
        name = S.name or f"T{len(named)}"
        named[name] = S
    return named
