"""The pushout generators: inner-horn, scaling, quotient-horn kinds, the
generalized-horn family, and the special trivial-cofibration primitive."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .complexes import (
    ComplexMap,
    Simplex,
    horn,
    quotient_vertex_map,
    simplex_complex,
)
from .errors import InputError
from .scaling import ScaledComplex, ScaledMap, push_thin, restrict_scaling, scale

PosTriple = tuple[int, int, int]


@dataclass(frozen=True)
class Admissible:
    """Witness index for a generalized-horn instance."""

    s: int


@dataclass(frozen=True)
class NotAdmissible:
    clause: str

    def __bool__(self) -> bool:
        return False


def gen_horn_admissible(
    r: int, m: Iterable[int], thin: Iterable[PosTriple]
):
    """Decide the generalized-horn criterion for positions M on the r-simplex.

    Returns Admissible(s) with the unique index s below the run of M ending
    at t = max(M), or NotAdmissible naming the first failed clause.  `thin`
    is a set of position triples of the r-simplex.
    """
    mset = frozenset(m)
    if r < 3:
        raise InputError("generalized horns need r >= 3")
    if not mset:
        raise InputError("M must be nonempty")
    if not mset <= set(range(r)):
        raise InputError("M must be a subset of {0..r-1}")
    thin_set = {tuple(t) for t in thin}
    t = max(mset)
    a = t
    while a - 1 in mset:
        a -= 1
    s = a - 1
    if s < 0:
        return NotAdmissible("no index below the run ending at max(M)")
    if len(mset) > r - 2:
        return NotAdmissible("|M| exceeds r-2")
    if len(mset) == r - 2:
        missing_triangle = tuple(sorted(set(range(r + 1)) - mset))
        if missing_triangle in thin_set:
            return NotAdmissible("the face opposite M is thin")
    for i in range(s, t):
        if (i, t, t + 1) not in thin_set:
            return NotAdmissible(f"triangle ({i},{t},{t + 1}) is not thin")
    return Admissible(s)


@dataclass(frozen=True)
class GeneratorInstance:
    """A fully built generator with instantiated source/target complexes.

    Source and target share a vertex label set, so one attach map both
    restricts to the source and realizes the target.
    """

    kind: str
    params: tuple[tuple[str, object], ...]
    source: ScaledComplex
    target: ScaledComplex
    inclusion: ScaledMap = field(compare=False)

    def param(self, name: str):
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)

    @property
    def added_tuples(self) -> frozenset[Simplex]:
        return self.target.complex.tuples - self.source.complex.tuples

    @property
    def added_thin(self) -> frozenset[Simplex]:
        return self.target.thin - self.source.thin


AN2_SOURCE_THIN = (("0", "2", "4"), ("1", "2", "3"), ("0", "1", "3"), ("1", "3", "4"), ("0", "1", "2"))
AN2_EXTRA_THIN = (("0", "3", "4"), ("0", "1", "4"))


def _labels(n: int) -> list[str]:
    return [str(j) for j in range(n + 1)]


def _instance(kind: str, params: dict, source: ScaledComplex, target: ScaledComplex) -> GeneratorInstance:
    incl = ScaledMap(
        ComplexMap(source.complex, target.complex, {v: v for v in source.complex.vertices}),
        source,
        target,
    )
    return GeneratorInstance(kind, tuple(sorted(params.items())), source, target, incl)


def instantiate(kind: str, **params) -> GeneratorInstance:
    """Build a generator instance; validates all parameter constraints."""
    if kind == "an1":
        n, i = params["n"], params["i"]
        if not 0 < i < n:
            raise InputError("an1 requires 0 < i < n")
        labels = _labels(n)
        mid = (str(i - 1), str(i), str(i + 1))
        src_cx = horn(labels, {str(i)})
        tgt_cx = simplex_complex(labels)
        src = ScaledComplex(src_cx, {mid} & src_cx.tuples)
        tgt = ScaledComplex(tgt_cx, {mid})
        return _instance("an1", {"n": n, "i": i}, src, tgt)

    if kind == "an2":
        cx = simplex_complex(_labels(4))
        src = ScaledComplex(cx, AN2_SOURCE_THIN)
        tgt = ScaledComplex(cx, AN2_SOURCE_THIN + AN2_EXTRA_THIN)
        return _instance("an2", {}, src, tgt)

    if kind == "an3":
        n = params["n"]
        if n <= 2:
            raise InputError("an3 requires n > 2")
        labels = _labels(n)
        vmap = {v: v for v in labels}
        vmap["1"] = "0"
        src_q, src_map = quotient_vertex_map(horn(labels, {"0"}), vmap)
        tgt_q, tgt_map = quotient_vertex_map(simplex_complex(labels), vmap)
        marked = ("0", "1", str(n))
        src = ScaledComplex(src_q, push_thin(src_map, [marked]))
        tgt = ScaledComplex(tgt_q, push_thin(tgt_map, [marked]))
        return _instance("an3", {"n": n}, src, tgt)

    if kind == "gen_horn":
        r = params["r"]
        m = frozenset(params["m"])
        thin = frozenset(tuple(t) for t in params.get("thin", ()))
        verdict = gen_horn_admissible(r, m, thin)
        if not isinstance(verdict, Admissible):
            raise InputError(f"inadmissible generalized horn: {verdict.clause}")
        labels = _labels(r)
        tgt_cx = simplex_complex(labels)
        src_cx = horn(labels, {str(j) for j in m})
        to_tuples = frozenset(tuple(str(j) for j in t) for t in thin)
        tgt = ScaledComplex(tgt_cx, to_tuples)
        src = restrict_scaling(src_cx, tgt)
        inst = _instance("gen_horn", {"r": r, "m": tuple(sorted(m)),
                                      "thin": tuple(sorted(thin)),
                                      "witness_s": verdict.s}, src, tgt)
        return inst

    if kind == "special_tc":
        vmap = {"0": "0", "1": "0", "2": "2"}
        src_q, _ = quotient_vertex_map(horn(_labels(2), {"0"}), vmap)
        tgt_q, _ = quotient_vertex_map(simplex_complex(_labels(2)), vmap)
        src = scale(src_q, "sharp")
        tgt = scale(tgt_q, "sharp")
        return _instance("special_tc", {}, src, tgt)

    raise InputError(f"unknown generator kind {kind!r}")
