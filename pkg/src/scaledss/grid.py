"""Label conventions for the square-tower family.

Vertices are "ijk" strings: a two-character row code followed by a column
index.  The plus-side grid uses rows 00 < 01 < 11 with the product order;
the minus side lives in the three-block join whose middle row is reversed,
with rows 00, 10, 11.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .complexes import (
    ComplexMap,
    FinitePoset,
    OrderedComplex,
    Simplex,
    _poset_from_leq,
    nerve,
)
from .errors import InputError

PLUS_ROWS = ("00", "01", "11")
MINUS_ROWS = ("00", "10", "11")
ALL_ROWS = ("00", "01", "10", "11")


def vlabel(row: str, col: int) -> str:
    return f"{row}{col}"


def vrow(label: str) -> str:
    return label[:2]


def vcol(label: str) -> int:
    return int(label[2:])


def grid_poset(rows: Sequence[str], n: int) -> FinitePoset:
    """Product order on rows x columns, rows ordered as given."""
    if n < 0:
        raise InputError("n must be >= 0")
    ridx = {r: i for i, r in enumerate(rows)}
    elems = [vlabel(r, k) for r in rows for k in range(n + 1)]

    def leq(a: str, b: str) -> bool:
        return ridx[vrow(a)] <= ridx[vrow(b)] and vcol(a) <= vcol(b)

    elems.sort(key=lambda v: (ridx[vrow(v)], vcol(v)))
    return _poset_from_leq(elems, leq)


def plus_nerve(n: int) -> OrderedComplex:
    """Nerve of the full three-row grid (rows 00, 01, 11)."""
    return nerve(grid_poset(PLUS_ROWS, n))


def join_position(label: str, n: int) -> tuple[int, int]:
    """Position in the three-block join order (middle row reversed)."""
    row, col = vrow(label), vcol(label)
    if row == "00":
        return (0, col)
    if row == "10":
        return (1, n - col)
    if row == "11":
        return (2, col)
    raise InputError(f"label {label!r} is not a minus-side vertex")


def join_sort(vset: Iterable[str], n: int) -> Simplex:
    return tuple(sorted(vset, key=lambda v: join_position(v, n)))


OMEGA_ROW = {"00": "00", "01": "10", "11": "11"}


def omega(k: OrderedComplex, n: int) -> tuple[OrderedComplex, ComplexMap]:
    """Relabel a subcomplex of the three-row grid into the join.

    Each tuple's vertex set is pushed through 00->00, 01->10, 11->11 (columns
    unchanged) and re-sorted by the join order.  The image is face-closed;
    this is checked rather than assumed.  The returned map is the vertex
    assignment, which is injective but not order-preserving.
    """
    ambient = plus_nerve(n)
    if not k.is_subcomplex_of(ambient):
        raise InputError("omega input must be a subcomplex of the three-row grid nerve")
    vmap = {}
    for v in k.vertices:
        row = vrow(v)
        if row not in OMEGA_ROW:
            raise InputError(f"vertex {v!r} is not a grid vertex")
        vmap[v] = vlabel(OMEGA_ROW[row], vcol(v))
    imgs = frozenset(join_sort((vmap[v] for v in t), n) for t in k.tuples)
    for t in imgs:
        if len(t) > 1:
            for f in (t[:j] + t[j + 1:] for j in range(len(t))):
                if f not in imgs:
                    raise InputError("omega image failed face closure")
    image = OrderedComplex(imgs, _validated=True)
    return image, ComplexMap(k, image, vmap, vertexwise=True)
