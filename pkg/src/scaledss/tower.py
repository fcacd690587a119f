"""The two-sided square tower: both halves, their glue, boundary faces, horns,
structure maps, latching objects, and the auxiliary complexes used by the
trivial-cofibration chains."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable

from .complexes import (
    ComplexMap,
    OrderedComplex,
    Simplex,
    close_tuples,
    inclusion_map,
    simplex_key,
)
from .errors import AuditFailure, InputError
from .grid import (
    MINUS_ROWS,
    PLUS_ROWS,
    join_sort,
    plus_nerve,
    vcol,
    vlabel,
    vrow,
)
from .scaling import ScaledComplex, ScaledMap, push_thin, restrict_scaling
from .complexes import nerve, quotient_vertex_map, glue_pushout


def _rows(t: Simplex) -> set[str]:
    return {vrow(v) for v in t}


def _cols(t: Simplex) -> set[int]:
    return {vcol(v) for v in t}


# ---------------------------------------------------------------------------
# The two halves


@lru_cache(maxsize=None)
def ts_plus(n: int) -> ScaledComplex:
    """Three-row grid nerve with the four thin families."""
    if n < 0:
        raise InputError("n must be >= 0")
    cx = plus_nerve(n)
    return ScaledComplex(cx, plus_thin_families(n)["all"])


def plus_thin_families(n: int) -> dict[str, frozenset[Simplex]]:
    """The four plus-side families, generated from their index predicates."""
    same_row: set[Simplex] = set()
    for r in PLUS_ROWS:
        for k, k1, k2 in combinations(range(n + 1), 3):
            same_row.add((vlabel(r, k), vlabel(r, k1), vlabel(r, k2)))
    low_bend: set[Simplex] = set()    # 00k, 01k', 01k'' with k <= k' < k''
    for k in range(n + 1):
        for k1 in range(k, n + 1):
            for k2 in range(k1 + 1, n + 1):
                low_bend.add((vlabel("00", k), vlabel("01", k1), vlabel("01", k2)))
    high_bend: set[Simplex] = set()   # 01k, 01k', 11k'' with k < k' <= k''
    for k in range(n + 1):
        for k1 in range(k + 1, n + 1):
            for k2 in range(k1, n + 1):
                high_bend.add((vlabel("01", k), vlabel("01", k1), vlabel("11", k2)))
    cross: set[Simplex] = set()       # 00k, 01k', 11k'' with k <= k' <= k''
    for k in range(n + 1):
        for k1 in range(k, n + 1):
            for k2 in range(k1, n + 1):
                cross.add((vlabel("00", k), vlabel("01", k1), vlabel("11", k2)))
    fams = {
        "same_row": frozenset(same_row),
        "low_bend": frozenset(low_bend),
        "high_bend": frozenset(high_bend),
        "cross": frozenset(cross),
    }
    fams["all"] = frozenset().union(*fams.values())
    return fams


def sigma_plus(n: int, s: int, k: int) -> Simplex:
    """The (n+2)-dimensional plus-side sweep simplex with bend at columns k, k+s."""
    if not (0 <= s <= n and 0 <= k <= n - s):
        raise InputError("sigma indices out of range")
    return (
        tuple(vlabel("00", j) for j in range(k + 1))
        + tuple(vlabel("01", j) for j in range(k, k + s + 1))
        + tuple(vlabel("11", j) for j in range(k + s, n + 1))
    )


def sigma_minus(n: int, s: int, k: int) -> Simplex:
    """The minus-side sweep simplex; middle row appears in reversed order."""
    if not (0 <= s <= n and 0 <= k <= n - s):
        raise InputError("sigma indices out of range")
    return (
        tuple(vlabel("00", j) for j in range(k + 1))
        + tuple(vlabel("10", j) for j in range(k + s, k - 1, -1))
        + tuple(vlabel("11", j) for j in range(k + s, n + 1))
    )


@lru_cache(maxsize=None)
def ts_minus(n: int) -> ScaledComplex:
    """Span of the sweep simplices inside the three-block join."""
    if n < 0:
        raise InputError("n must be >= 0")
    gens = [sigma_minus(n, kp - k, k) for k in range(n + 1) for kp in range(k, n + 1)]
    cx = OrderedComplex(close_tuples(gens), _validated=True)
    return ScaledComplex(cx, minus_thin_families(n)["all"])


def minus_thin_families(n: int) -> dict[str, frozenset[Simplex]]:
    same_row: set[Simplex] = set()
    for r in MINUS_ROWS:
        for k, k1, k2 in combinations(range(n + 1), 3):
            vs = [vlabel(r, k), vlabel(r, k1), vlabel(r, k2)]
            same_row.add(join_sort(vs, n))
    late_turn: set[Simplex] = set()   # 00k, 00k', 10k'' with k < k' <= k''
    for k in range(n + 1):
        for k1 in range(k + 1, n + 1):
            for k2 in range(k1, n + 1):
                late_turn.add((vlabel("00", k), vlabel("00", k1), vlabel("10", k2)))
    early_turn: set[Simplex] = set()  # 10k, 11k', 11k'' with k <= k' < k''
    for k in range(n + 1):
        for k1 in range(k, n + 1):
            for k2 in range(k1 + 1, n + 1):
                early_turn.add((vlabel("10", k), vlabel("11", k1), vlabel("11", k2)))
    fams = {
        "same_row": frozenset(same_row),
        "late_turn": frozenset(late_turn),
        "early_turn": frozenset(early_turn),
    }
    fams["all"] = frozenset().union(*fams.values())
    return fams


# ---------------------------------------------------------------------------
# The glued object


@dataclass(frozen=True)
class TsLevel:
    scaled: ScaledComplex
    from_plus: ScaledMap
    from_minus: ScaledMap


@lru_cache(maxsize=None)
def ts_glued(n: int) -> TsLevel:
    plus, minus = ts_plus(n), ts_minus(n)
    shared_rows = {"00", "11"}
    prism_p = OrderedComplex(
        frozenset(t for t in plus.complex.tuples if _rows(t) <= shared_rows), _validated=True
    )
    prism_m = OrderedComplex(
        frozenset(t for t in minus.complex.tuples if _rows(t) <= shared_rows), _validated=True
    )
    if prism_p != prism_m:
        raise AuditFailure("the two halves disagree on the shared flat prism")
    ip = inclusion_map(prism_p, plus.complex)
    im = inclusion_map(prism_p, minus.complex)
    total, from_p, from_m = glue_pushout(plus.complex, minus.complex, prism_p, ip, im)
    scaled = ScaledComplex(total, plus.thin | minus.thin)
    return TsLevel(
        scaled,
        ScaledMap(from_p, plus, scaled),
        ScaledMap(from_m, minus, scaled),
    )


def ts(n: int) -> ScaledComplex:
    return ts_glued(n).scaled


def _part(n: int, part: str) -> ScaledComplex:
    if part == "plus":
        return ts_plus(n)
    if part == "minus":
        return ts_minus(n)
    if part == "full":
        return ts(n)
    raise InputError(f"unknown part {part!r}")


def thin_audit(n: int, part: str) -> dict:
    """Recompute the thin families from their predicates and compare."""
    sc = _part(n, part)
    if part == "plus":
        fams = plus_thin_families(n)
        groups = [fams]
    elif part == "minus":
        fams = minus_thin_families(n)
        groups = [fams]
    else:
        pf, mf = plus_thin_families(n), minus_thin_families(n)
        fams = {f"plus_{k}": v for k, v in pf.items() if k != "all"}
        fams.update({f"minus_{k}": v for k, v in mf.items() if k != "all"})
        fams["all"] = pf["all"] | mf["all"]
        groups = [pf, mf]  # the halves share same-row triangles on the glued rows
    named = [(k, v) for k, v in sorted(fams.items()) if k != "all"]
    non_simplices = sorted(
        {t for _, fam in named for t in fam if t not in sc.complex.tuples},
        key=simplex_key,
    )
    disjoint = all(
        not (a & b)
        for g in groups
        for (ka, a), (kb, b) in combinations(
            [(k, v) for k, v in sorted(g.items()) if k != "all"], 2
        )
    )
    recomputed = fams["all"]
    failures = sorted(recomputed ^ sc.thin, key=simplex_key)
    report = {
        "n": n,
        "part": part,
        "total": len(sc.complex.simplices(2)),
        "thin": len(sc.thin),
        "families_disjoint": disjoint,
        "family_members_are_simplices": not non_simplices,
        "failures": [list(t) for t in failures] + [list(t) for t in non_simplices],
        "ok": not failures and not non_simplices,
    }
    if not report["ok"]:
        raise AuditFailure(f"thin audit failed: {report}")
    return report


# ---------------------------------------------------------------------------
# Boundary faces and horn variants

FACE_ROWS = {"T": {"00", "01"}, "F": {"01", "11"}, "R": {"00", "10"}, "B": {"10", "11"}}


def boundary_face(n: int, f: str) -> tuple[ScaledComplex, ScaledMap]:
    """The four edge prisms of the glued object, with induced scaling."""
    if f not in FACE_ROWS:
        raise InputError("face must be one of T, F, R, B")
    total = ts(n)
    rows = FACE_ROWS[f]
    sub = OrderedComplex(
        frozenset(t for t in total.complex.tuples if _rows(t) <= rows), _validated=True
    )
    scaled = restrict_scaling(sub, total)
    incl = ScaledMap(inclusion_map(sub, total.complex), scaled, total)
    return scaled, incl


def _cols_in_horn(t: Simplex, n: int, i: int) -> bool:
    cols = _cols(t)
    return any(s not in cols for s in range(n + 1) if s != i)


def horn_variants(n: int, i: int, which: str) -> ScaledComplex:
    """The named horn-type subcomplexes with induced scaling."""
    if not 0 < i < n:
        raise InputError("horn variants require 0 < i < n")
    if which == "full":
        amb = ts(n)
        keep = frozenset(t for t in amb.complex.tuples if _cols_in_horn(t, n, i))
    elif which == "plus":
        amb = ts_plus(n)
        keep = frozenset(t for t in amb.complex.tuples if _cols_in_horn(t, n, i))
    elif which == "hat_minus":
        amb = ts_minus(n)
        keep = frozenset(
            t for t in amb.complex.tuples
            if _cols_in_horn(t, n, i) or _rows(t) <= {"00", "11"}
        )
    elif which == "bar_plus":
        amb = ts_plus(n)
        keep = frozenset(
            t for t in amb.complex.tuples
            if _cols_in_horn(t, n, i) or _rows(t) <= {"00", "01"} or _rows(t) <= {"01", "11"}
        )
    elif which == "bar_minus":
        amb = ts_minus(n)
        keep = frozenset(
            t for t in amb.complex.tuples
            if _cols_in_horn(t, n, i) or _rows(t) <= {"00", "11"}
            or _rows(t) <= {"00", "10"} or _rows(t) <= {"10", "11"}
        )
    else:
        raise InputError(f"unknown horn variant {which!r}")
    return restrict_scaling(OrderedComplex(keep, _validated=True), amb)


# ---------------------------------------------------------------------------
# Cosimplicial structure


def _col_map(vertices: Iterable[str], f: Callable[[int], int]) -> dict[str, str]:
    return {v: vlabel(vrow(v), f(vcol(v))) for v in vertices}


def coface_vmap(n: int, j: int, vertices: Iterable[str]) -> dict[str, str]:
    if not 0 <= j <= n + 1:
        raise InputError("coface index out of range")
    return _col_map(vertices, lambda k: k if k < j else k + 1)


def codegeneracy_vmap(n: int, j: int, vertices: Iterable[str]) -> dict[str, str]:
    if not 0 <= j <= n - 1:
        raise InputError("codegeneracy index out of range")
    return _col_map(vertices, lambda k: k if k <= j else k - 1)


def coface(n: int, j: int, tower: str = "ts") -> ScaledMap:
    src, tgt = _tower_level(tower, n), _tower_level(tower, n + 1)
    vmap = coface_vmap(n, j, src.complex.vertices)
    return ScaledMap(ComplexMap(src.complex, tgt.complex, vmap), src, tgt)


def codegeneracy(n: int, j: int, tower: str = "ts") -> ScaledMap:
    if n < 1:
        raise InputError("codegeneracy needs n >= 1")
    src, tgt = _tower_level(tower, n), _tower_level(tower, n - 1)
    vmap = codegeneracy_vmap(n, j, src.complex.vertices)
    return ScaledMap(ComplexMap(src.complex, tgt.complex, vmap), src, tgt)


def _tower_level(tower: str, n: int) -> ScaledComplex:
    if tower == "ts":
        return ts(n)
    if tower in FACE_ROWS:
        return boundary_face(n, tower)[0]
    raise InputError(f"unknown tower {tower!r}")


TOWERS = ("ts", "T", "F", "R", "B")


@dataclass(frozen=True)
class CosimplicialLevel:
    """One tower level bundled with its structure maps."""

    n: int
    object: ScaledComplex
    cofaces: tuple[ScaledMap, ...]
    codegeneracies: tuple[ScaledMap, ...]


def cosimplicial_level(n: int, tower: str = "ts") -> CosimplicialLevel:
    return CosimplicialLevel(
        n=n,
        object=_tower_level(tower, n),
        cofaces=tuple(coface(n, j, tower) for j in range(n + 2)),
        codegeneracies=tuple(codegeneracy(n, j, tower) for j in range(n)),
    )


def check_cosimplicial_identities(max_n: int, towers: Iterable[str] = TOWERS) -> dict:
    """Verify all structure maps are scaled and the simplicial identities hold.

    Identities are checked as vertex-map equalities on each level up to
    max_n; every coface and codegeneracy is built as a ScaledMap, which
    already enforces the scaled-map condition.
    """
    checked = 0
    for tower in towers:
        for n in range(0, max_n + 1):
            verts = _tower_level(tower, n).complex.vertices
            dmaps = {j: coface_vmap(n, j, verts) for j in range(n + 2)}
            dmaps_next = {
                j: coface_vmap(n + 1, j, _tower_level(tower, n + 1).complex.vertices)
                for j in range(n + 3)
            }
            for j in range(n + 2):
                coface(n, j, tower)
                checked += 1
            if n >= 1:
                for j in range(n):
                    codegeneracy(n, j, tower)
                    checked += 1
            # d^j d^i = d^i d^{j-1} for i < j
            for j in range(n + 3):
                for i in range(j):
                    left = {v: dmaps_next[j][dmaps[i][v]] for v in verts}
                    right = {
                        v: dmaps_next[i][coface_vmap(n, j - 1, verts)[v]] for v in verts
                    }
                    if left != right:
                        raise AuditFailure(f"coface identity fails: tower={tower} n={n} i={i} j={j}")
                    checked += 1
            # s^j s^i = s^i s^{j+1} for i <= j (maps out of level n+2)
            up = _tower_level(tower, n + 2).complex.vertices
            for j in range(n + 1):
                for i in range(j + 1):
                    via_j = codegeneracy_vmap(n + 2, j + 1, up)
                    left = {v: codegeneracy_vmap(n + 1, i, set(via_j.values()))[via_j[v]] for v in up}
                    via_i = codegeneracy_vmap(n + 2, i, up)
                    right = {v: codegeneracy_vmap(n + 1, j, set(via_i.values()))[via_i[v]] for v in up}
                    if left != right:
                        raise AuditFailure(f"codegeneracy identity fails: tower={tower} n={n} i={i} j={j}")
                    checked += 1
            # mixed identities s^j d^i on level n+1 -> n+1
            mid = _tower_level(tower, n + 1).complex.vertices
            for j in range(n + 1):
                for i in range(n + 3):
                    dv = coface_vmap(n + 1, i, mid)
                    left = {v: codegeneracy_vmap(n + 2, j, set(dv.values()))[dv[v]] for v in mid}
                    if i < j:
                        sv = codegeneracy_vmap(n + 1, j - 1, mid)
                        right = {v: coface_vmap(n, i, set(sv.values()))[sv[v]] for v in mid}
                    elif i in (j, j + 1):
                        right = {v: v for v in mid}
                    else:
                        sv = codegeneracy_vmap(n + 1, j, mid)
                        right = {v: coface_vmap(n, i - 1, set(sv.values()))[sv[v]] for v in mid}
                    if left != right:
                        raise AuditFailure(f"mixed identity fails: tower={tower} n={n} i={i} j={j}")
                    checked += 1
    return {"max_n": max_n, "towers": list(towers), "checked": checked, "ok": True}


def coface_image(n: int, j: int) -> OrderedComplex:
    src = ts(n).complex
    vmap = coface_vmap(n, j, src.vertices)
    return OrderedComplex(
        frozenset(tuple(vmap[v] for v in t) for t in src.tuples), _validated=True
    )


def latching(n: int) -> tuple[OrderedComplex, dict]:
    """Union of all coface images; must equal the column-boundary subcomplex."""
    if n < 1:
        raise InputError("latching needs n >= 1")
    total = ts(n).complex
    union: set[Simplex] = set()
    for j in range(n + 1):
        union |= coface_image(n - 1, j).tuples
    explicit = frozenset(t for t in total.tuples if _cols(t) != set(range(n + 1)))
    report = {"n": n, "tuples": len(union), "ok": frozenset(union) == explicit}
    if not report["ok"]:
        raise AuditFailure(f"latching object mismatch at n={n}")
    return OrderedComplex(frozenset(union), _validated=True), report


# ---------------------------------------------------------------------------
# Completeness-chain objects


TILDE_EXTRA_VSETS = (
    ("000", "001", "011"),
    ("010", "110", "111"),
    ("000", "100", "101"),
    ("100", "101", "111"),
    ("000", "001", "111"),
    ("000", "110", "111"),
)


@lru_cache(maxsize=None)
def tilde_ts1() -> ScaledComplex:
    """Level one with six extra thin triangles."""
    base = ts(1)
    extras = []
    for vs in TILDE_EXTRA_VSETS:
        t = base.complex.tuple_on(vs)
        if t is None:
            raise AuditFailure(f"extra thin triple {vs} is not a 2-simplex")
        extras.append(t)
    return ScaledComplex(base.complex, base.thin | frozenset(extras))


def _sub_with_diamond(tuples: frozenset[Simplex]) -> ScaledComplex:
    return restrict_scaling(OrderedComplex(tuples, _validated=True), tilde_ts1())


@lru_cache(maxsize=None)
def fsr(i: int) -> ScaledComplex:
    """Front/right frame around one end: the F and R prisms plus one coface square."""
    if i not in (0, 1):
        raise InputError("fsr index must be 0 or 1")
    f_rows = frozenset(
        t for t in ts(1).complex.tuples if _rows(t) <= FACE_ROWS["F"]
    )
    r_rows = frozenset(
        t for t in ts(1).complex.tuples if _rows(t) <= FACE_ROWS["R"]
    )
    square = coface_image(0, i).tuples
    return _sub_with_diamond(f_rows | r_rows | square)


@lru_cache(maxsize=None)
def tbr(i: int) -> ScaledComplex:
    """The column-reflected counterpart of fsr: T and B prisms plus a square."""
    if i not in (0, 1):
        raise InputError("tbr index must be 0 or 1")
    t_rows = frozenset(
        t for t in ts(1).complex.tuples if _rows(t) <= FACE_ROWS["T"]
    )
    b_rows = frozenset(
        t for t in ts(1).complex.tuples if _rows(t) <= FACE_ROWS["B"]
    )
    square = coface_image(0, i).tuples
    return _sub_with_diamond(t_rows | b_rows | square)


def _closure_of(*sets: Iterable[Simplex]) -> frozenset[Simplex]:
    out: set[Simplex] = set()
    for s in sets:
        out |= close_tuples(s)
    return frozenset(out)


@dataclass(frozen=True)
class ThetaChain:
    """Everything the end-collapse trivial-cofibration certificate needs."""

    index: int
    collapse_edge: Simplex
    collapsed_label: str
    collapse_vmap: tuple[tuple[str, str], ...]
    f_stages: tuple[ScaledComplex, ScaledComplex, ScaledComplex]
    g_stages: tuple[ScaledComplex, ScaledComplex, ScaledComplex]
    e0: ScaledComplex
    e1: ScaledComplex
    e2: ScaledComplex
    special_edges: tuple[Simplex, Simplex]

    @property
    def source(self) -> ScaledComplex:
        return self.e0

    @property
    def target(self) -> ScaledComplex:
        return self.e2


def _collapse_scaled(sc: ScaledComplex, vmap: dict[str, str]) -> ScaledComplex:
    q, qmap = quotient_vertex_map(sc.complex, vmap)
    return ScaledComplex(q, push_thin(qmap, sc.thin))


@lru_cache(maxsize=None)
def theta_complexes(i: int) -> ThetaChain:
    """Stage objects for the end-collapse chains.

    The index-1 chain grows out of the F/R frame and collapses the initial
    bottom edge.  The index-0 chain is its column reflection: it grows out
    of the T/B frame and collapses the terminal top edge; the reflection is
    forced because the unreflected frame leaves the opposite corner
    unreachable by pushouts that stay inside the target.
    """
    if i not in (0, 1):
        raise InputError("theta index must be 0 or 1")
    tilde = tilde_ts1()
    minus_tuples = frozenset(
        ts_glued(1).from_minus.map.apply(t) for t in ts_minus(1).complex.tuples
    )
    if i == 1:
        base = fsr(1)
        edge = ("000", "001")
        # skip the sweep cell containing the collapsed edge
        f_cells = (sigma_minus(1, 0, 0), sigma_minus(1, 1, 0))
        g_cells = (sigma_plus(1, 0, 0), sigma_plus(1, 1, 0))
        special = (("000", "111"), ("000", "011"))
    else:
        base = tbr(0)
        edge = ("110", "111")
        f_cells = (sigma_minus(1, 0, 1), sigma_minus(1, 1, 0))
        g_cells = (sigma_plus(1, 0, 1), sigma_plus(1, 1, 0))
        special = (("000", "110"), ("010", "110"))
    collapsed = edge[0]
    vmap = {v: (collapsed if v in edge else v) for v in ts(1).complex.vertices}

    f0 = base
    f1 = _sub_with_diamond(_closure_of(f0.complex.tuples, [f_cells[0]]))
    f2 = _sub_with_diamond(_closure_of(f1.complex.tuples, [f_cells[1]]))
    g0 = _sub_with_diamond(f0.complex.tuples | minus_tuples)
    g1 = _sub_with_diamond(_closure_of(g0.complex.tuples, [g_cells[0]]))
    g2 = _sub_with_diamond(_closure_of(g1.complex.tuples, [g_cells[1]]))
    e0 = _collapse_scaled(f0, vmap)
    e1 = _collapse_scaled(g0, vmap)
    e2 = _collapse_scaled(tilde, vmap)
    return ThetaChain(
        index=i,
        collapse_edge=edge,
        collapsed_label=collapsed,
        collapse_vmap=tuple(sorted(vmap.items())),
        f_stages=(f0, f1, f2),
        g_stages=(g0, g1, g2),
        e0=e0,
        e1=e1,
        e2=e2,
        special_edges=special,
    )


# ---------------------------------------------------------------------------
# Duality and the spine


def rev_duality_vmap(n: int) -> dict[str, str]:
    out = {}
    for k in range(n + 1):
        out[vlabel("11", k)] = vlabel("00", n - k)
        out[vlabel("10", k)] = vlabel("10", n - k)
    return out


def rev_duality_check(n: int) -> dict:
    """Order-reversing isomorphism between the B and R faces.

    Checks tuple bijectivity, thin preservation, and that it intertwines
    coface j with coface n+1-j.
    """
    b_face, _ = boundary_face(n, "B")
    r_face, _ = boundary_face(n, "R")
    vmap = rev_duality_vmap(n)
    images = set()
    for t in b_face.complex.tuples:
        img = tuple(vmap[v] for v in t)[::-1]
        if img not in r_face.complex.tuples:
            raise AuditFailure(f"duality image {img} of {t} is not an R-face simplex")
        images.add(img)
    if images != set(r_face.complex.tuples):
        raise AuditFailure("duality map is not a tuple bijection")
    for t in b_face.thin:
        img = tuple(vmap[v] for v in t)[::-1]
        if img not in r_face.thin:
            raise AuditFailure(f"duality fails thin preservation on {t}")
    thin_back = {tuple(vmap[v] for v in t)[::-1] for t in b_face.thin}
    if thin_back != set(r_face.thin):
        raise AuditFailure("duality thin sets do not correspond")
    intertwined = 0
    vmap_next = rev_duality_vmap(n + 1)
    for j in range(n + 2):
        d_b = coface_vmap(n, j, b_face.complex.vertices)
        d_r = coface_vmap(n, n + 1 - j, r_face.complex.vertices)
        for v in b_face.complex.vertices:
            if vmap_next[d_b[v]] != d_r[vmap[v]]:
                raise AuditFailure(f"duality does not intertwine cofaces {j} and {n + 1 - j}")
        intertwined += 1
    return {
        "n": n,
        "tuples": len(images),
        "cofaces_intertwined": intertwined,
        "vmap": {k: vmap[k] for k in sorted(vmap)},
        "order_reversing": True,
        "ok": True,
    }


def cosegal_source(n: int) -> tuple[ScaledComplex, ScaledMap]:
    """Union of the consecutive-column segments, with induced scaling."""
    if n < 1:
        raise InputError("cosegal source needs n >= 1")
    total = ts(n)
    keep = frozenset(
        t for t in total.complex.tuples
        if any(_cols(t) <= {c, c + 1} for c in range(n))
    )
    sub = restrict_scaling(OrderedComplex(keep, _validated=True), total)
    incl = ScaledMap(inclusion_map(sub.complex, total.complex), sub, total)
    return sub, incl


def segment_image(n: int, c: int) -> frozenset[Simplex]:
    """Image of level one under the columns {c, c+1} embedding."""
    if not 0 <= c < n:
        raise InputError("segment index out of range")
    src = ts(1).complex
    vmap = {v: vlabel(vrow(v), vcol(v) + c) for v in src.vertices}
    return frozenset(tuple(vmap[v] for v in t) for t in src.tuples)


def oplax_square() -> ScaledComplex:
    """The 2x2 grid square scaled with exactly one thin triangle."""
    from .complexes import _poset_from_leq

    elems = ["00", "01", "10", "11"]
    square = _poset_from_leq(
        elems, lambda a, b: a[0] <= b[0] and a[1] <= b[1]
    )
    cx = nerve(square)
    tri = cx.tuple_on(("00", "10", "11"))
    if tri is None:
        raise AuditFailure("square is missing its lower triangle")
    return ScaledComplex(cx, {tri})
