"""Thin-triangle scalings and scaled-map checking.

Degenerate 2-simplices are thin by convention and never stored; the stored
thin set holds nondegenerate triangles only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .complexes import ComplexMap, OrderedComplex, Simplex, dedup_word, simplex_key
from .errors import InputError

ThinSet = frozenset[Simplex]


class ScaledComplex:
    """An ordered complex with a chosen set of thin 2-simplices."""

    __slots__ = ("complex", "thin", "_hash")

    def __init__(self, complex: OrderedComplex, thin: Iterable[Simplex] = ()):
        thin = frozenset(tuple(t) for t in thin)
        for t in thin:
            if len(t) != 3 or t not in complex.tuples:
                raise InputError(f"thin triple {t} is not a 2-simplex of the complex")
        self.complex = complex
        self.thin = thin
        self._hash = hash((complex, thin))

    def is_thin(self, t: Sequence[str]) -> bool:
        """Thin or degenerate; accepts arbitrary triples."""
        word = dedup_word(t)
        if word is None or len(word) < 3:
            return True
        return word in self.thin

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ScaledComplex)
            and self.complex == other.complex
            and self.thin == other.thin
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ScaledComplex({len(self.complex.tuples)} tuples, {len(self.thin)} thin)"

    def thin_sorted(self) -> list[Simplex]:
        return sorted(self.thin, key=simplex_key)


@dataclass(frozen=True)
class Violation:
    """A thin triangle whose image is neither thin nor degenerate."""

    triangle: Simplex

    def __bool__(self) -> bool:  # a Violation is falsy as a check result
        return False


class ScaledMap:
    """A complex map that carries thin triangles to thin triangles."""

    __slots__ = ("map", "source", "target")

    def __init__(self, map: ComplexMap, source: ScaledComplex, target: ScaledComplex):
        if map.source != source.complex or map.target != target.complex:
            raise InputError("underlying map does not match the scaled complexes")
        bad = check_scaled_map(map, source, target)
        if bad is not None:
            raise InputError(f"map is not scaled: thin {bad.triangle} maps to a non-thin triangle")
        self.map = map
        self.source = source
        self.target = target

    def __call__(self, v: str) -> str:
        return self.map(v)


def scale(k: OrderedComplex, mode: str = "flat", thin: Iterable[Simplex] = ()) -> ScaledComplex:
    """flat: no stored thin triangles; sharp: all; explicit: as given."""
    if mode == "flat":
        return ScaledComplex(k, ())
    if mode == "sharp":
        return ScaledComplex(k, k.simplices(2))
    if mode == "explicit":
        return ScaledComplex(k, thin)
    raise InputError(f"unknown scaling mode {mode!r}")


def restrict_scaling(sub: OrderedComplex, ambient: ScaledComplex) -> ScaledComplex:
    """`sub` with the scaling induced from an ambient scaled complex."""
    if not sub.is_subcomplex_of(ambient.complex):
        raise InputError("not a subcomplex of the ambient complex")
    return ScaledComplex(sub, ambient.thin & sub.tuples)


def check_scaled_map(
    f: ComplexMap, s: ScaledComplex, t: ScaledComplex
) -> Optional[Violation]:
    """None if every thin triangle maps to a thin or degenerate triangle."""
    if f.source != s.complex or f.target != t.complex:
        raise InputError("map endpoints do not match the scaled complexes")
    for tri in s.thin_sorted():
        if not t.is_thin(f.apply(tri) if f.vertexwise else [f(v) for v in tri]):
            return Violation(tri)
    return None


def add_thin(s: ScaledComplex, triples: Iterable[Simplex]) -> ScaledComplex:
    return ScaledComplex(s.complex, s.thin | frozenset(tuple(t) for t in triples))


def push_thin(f: ComplexMap, thin: Iterable[Simplex]) -> ThinSet:
    """Image thin set of a scaled complex: nondegenerate images only."""
    out = set()
    for t in thin:
        img = f.apply(t)
        if len(img) == 3:
            out.add(img)
    return frozenset(out)
