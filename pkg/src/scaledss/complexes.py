"""Finite vertex-determined simplicial complexes and maps between them.

A complex stores its nondegenerate simplices as ordered tuples of distinct
vertex labels, closed under vertex deletion.  Every object here is a
subquotient of the nerve of a finite poset, where this representation is
faithful; degeneracies are never stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import AmbientMismatch, GlueConflict, InputError, IrregularCollapse

Simplex = tuple[str, ...]


def label_key(label: str) -> tuple[int, str]:
    """Fixed total order on labels, used for all canonical output."""
    return (len(label), label)


def simplex_key(t: Simplex) -> tuple:
    return (len(t), tuple(label_key(v) for v in t))


def dedup_word(word: Sequence[str]) -> Optional[Simplex]:
    """Collapse adjacent repeats; None if a repeat is non-adjacent.

    The result is the nondegenerate core of the image of a simplex under a
    vertex map, provided repeats only ever occur in contiguous runs.
    """
    out: list[str] = []
    for v in word:
        if not out or out[-1] != v:
            out.append(v)
    if len(set(out)) != len(out):
        return None
    return tuple(out)


def faces(t: Simplex) -> list[Simplex]:
    """All codimension-1 faces (delete one vertex)."""
    return [t[:j] + t[j + 1:] for j in range(len(t))]


def close_tuples(tuples: Iterable[Simplex]) -> frozenset[Simplex]:
    """Downward closure under vertex deletion, excluding the empty tuple."""
    seen: set[Simplex] = set()
    stack = [tuple(t) for t in tuples]
    while stack:
        t = stack.pop()
        if not t or t in seen:
            continue
        seen.add(t)
        if len(t) > 1:
            stack.extend(faces(t))
    return frozenset(seen)


class OrderedComplex:
    """Face-closed set of ordered tuples of distinct vertices.

    Tuple equality is simplex equality: two stored tuples never share a
    vertex set.  Construction validates face closure and that invariant.
    """

    __slots__ = ("tuples", "vertices", "_by_vset", "_by_dim", "_hash")

    def __init__(self, tuples: Iterable[Simplex], *, _validated: bool = False):
        tset = frozenset(tuple(t) for t in tuples)
        by_vset: dict[frozenset[str], Simplex] = {}
        for t in tset:
            if len(set(t)) != len(t):
                raise InputError(f"repeated vertex in tuple {t}")
            vs = frozenset(t)
            other = by_vset.get(vs)
            if other is not None and other != t:
                raise AmbientMismatch(f"tuples {other} and {t} share a vertex set")
            by_vset[vs] = t
        if not _validated:
            for t in tset:
                if len(t) > 1:
                    for f in faces(t):
                        if f not in tset:
                            raise InputError(f"missing face {f} of {t}")
        by_dim: dict[int, list[Simplex]] = {}
        for t in tset:
            by_dim.setdefault(len(t) - 1, []).append(t)
        for d in by_dim:
            by_dim[d].sort(key=simplex_key)
        self.tuples = tset
        self.vertices = frozenset(t[0] for t in tset if len(t) == 1)
        self._by_vset = by_vset
        self._by_dim = by_dim
        self._hash = hash(tset)

    @classmethod
    def from_tuples(cls, tuples: Iterable[Simplex]) -> "OrderedComplex":
        """Build the smallest complex containing the given tuples."""
        return cls(close_tuples(tuples), _validated=True)

    @classmethod
    def empty(cls) -> "OrderedComplex":
        return cls(frozenset(), _validated=True)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OrderedComplex) and self.tuples == other.tuples

    def __hash__(self) -> int:
        return self._hash

    def __contains__(self, t: Simplex) -> bool:
        return tuple(t) in self.tuples

    def __repr__(self) -> str:
        return f"OrderedComplex({len(self.vertices)} vertices, {len(self.tuples)} tuples)"

    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    def simplices(self, dim: int) -> list[Simplex]:
        """All simplices of the given dimension, canonically sorted."""
        return list(self._by_dim.get(dim, []))

    def is_simplex(self, t: Sequence[str]) -> bool:
        return tuple(t) in self.tuples

    def tuple_on(self, vset: Iterable[str]) -> Optional[Simplex]:
        """The unique stored tuple on this vertex set, if any."""
        return self._by_vset.get(frozenset(vset))

    def triangles(self) -> list[Simplex]:
        return self.simplices(2)

    def maximal(self) -> list[Simplex]:
        """Tuples that are not a face of any other stored tuple."""
        non_max: set[Simplex] = set()
        for t in self.tuples:
            if len(t) > 1:
                non_max.update(faces(t))
        out = [t for t in self.tuples if t not in non_max]
        out.sort(key=simplex_key)
        return out

    def is_subcomplex_of(self, other: "OrderedComplex") -> bool:
        return self.tuples <= other.tuples

    def union(self, other: "OrderedComplex") -> "OrderedComplex":
        for t in other.tuples:
            mine = self._by_vset.get(frozenset(t))
            if mine is not None and mine != t:
                raise AmbientMismatch(f"conflicting tuples {mine} and {t}")
        return OrderedComplex(self.tuples | other.tuples, _validated=True)

    def intersection(self, other: "OrderedComplex") -> "OrderedComplex":
        for t in self.tuples:
            theirs = other._by_vset.get(frozenset(t))
            if theirs is not None and theirs != t:
                raise AmbientMismatch(f"conflicting tuples {t} and {theirs}")
        return OrderedComplex(self.tuples & other.tuples, _validated=True)


def simplices(k: OrderedComplex, dim: int) -> list[Simplex]:
    return k.simplices(dim)


def is_simplex(k: OrderedComplex, t: Sequence[str]) -> bool:
    return k.is_simplex(t)


def combine(k1: OrderedComplex, k2: OrderedComplex, mode: str) -> OrderedComplex:
    """Union or intersection of two complexes in a shared label space."""
    if mode == "union":
        return k1.union(k2)
    if mode == "intersection":
        return k1.intersection(k2)
    raise InputError(f"unknown combine mode {mode!r}")


class ComplexMap:
    """A vertex map inducing a simplicial map between complexes.

    With ``vertexwise=True`` the map is only required to send the vertex set
    of every source tuple onto the vertex set of some target tuple (used for
    relabelings that re-sort tuple order, which are injective on vertices).
    """

    __slots__ = ("source", "target", "vmap", "vertexwise")

    def __init__(
        self,
        source: OrderedComplex,
        target: OrderedComplex,
        vmap: Mapping[str, str],
        *,
        vertexwise: bool = False,
    ):
        vmap = dict(vmap)
        missing = source.vertices - vmap.keys()
        if missing:
            raise InputError(f"vmap missing vertices {sorted(missing)}")
        for t in source.tuples:
            word = [vmap[v] for v in t]
            if vertexwise:
                if target.tuple_on(word) is None:
                    raise InputError(f"image of {t} spans no target simplex")
            else:
                img = dedup_word(word)
                if img is None or img not in target.tuples:
                    raise InputError(f"image {tuple(word)} of {t} is not a target simplex")
        self.source = source
        self.target = target
        self.vmap = vmap
        self.vertexwise = vertexwise

    def __call__(self, v: str) -> str:
        return self.vmap[v]

    def apply(self, t: Sequence[str]) -> Simplex:
        """Image tuple of a source tuple (deduplicated / re-sorted)."""
        word = [self.vmap[v] for v in t]
        if self.vertexwise:
            img = self.target.tuple_on(word)
            if img is None:
                raise InputError(f"image of {tuple(t)} spans no target simplex")
            return img
        img = dedup_word(word)
        if img is None:
            raise InputError(f"image of {tuple(t)} has a non-adjacent repeat")
        return img

    def image_complex(self) -> OrderedComplex:
        return OrderedComplex(
            frozenset(self.apply(t) for t in self.source.tuples), _validated=True
        )

    def is_injective(self) -> bool:
        vals = [self.vmap[v] for v in self.source.vertices]
        return len(set(vals)) == len(vals)

    def same_as(self, other: "ComplexMap") -> bool:
        return (
            self.source == other.source
            and self.target == other.target
            and all(self.vmap[v] == other.vmap[v] for v in self.source.vertices)
        )

    def __repr__(self) -> str:
        return f"ComplexMap({len(self.source.vertices)} -> {len(self.target.vertices)} vertices)"


def identity_map(k: OrderedComplex) -> ComplexMap:
    return ComplexMap(k, k, {v: v for v in k.vertices})


def inclusion_map(sub: OrderedComplex, ambient: OrderedComplex) -> ComplexMap:
    if not sub.is_subcomplex_of(ambient):
        raise InputError("not a subcomplex")
    return ComplexMap(sub, ambient, {v: v for v in sub.vertices})


def opposite(k: OrderedComplex) -> OrderedComplex:
    """The same complex with every tuple reversed."""
    return OrderedComplex(frozenset(t[::-1] for t in k.tuples), _validated=True)


# ---------------------------------------------------------------------------
# Finite posets and their nerves


@dataclass(frozen=True)
class FinitePoset:
    """A finite poset with a fixed element order (a linear extension)."""

    elements: tuple[str, ...]
    relation: frozenset[tuple[str, str]]

    def __post_init__(self):
        elems = self.elements
        if len(set(elems)) != len(elems):
            raise InputError("poset elements must be distinct")
        rel = self.relation
        es = set(elems)
        for a, b in rel:
            if a not in es or b not in es:
                raise InputError(f"relation pair ({a},{b}) uses unknown element")
        for a in elems:
            if (a, a) not in rel:
                raise InputError("relation is not reflexive")
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise InputError(f"antisymmetry fails on ({a},{b})")
            for c in elems:
                if (b, c) in rel and (a, c) not in rel:
                    raise InputError(f"transitivity fails on ({a},{b},{c})")
        pos = {e: i for i, e in enumerate(elems)}
        for a, b in rel:
            if a != b and pos[a] > pos[b]:
                raise InputError("element order is not a linear extension")

    def leq(self, a: str, b: str) -> bool:
        return (a, b) in self.relation

    def lt(self, a: str, b: str) -> bool:
        return a != b and (a, b) in self.relation


def _poset_from_leq(elements: Sequence[str], leq: Callable[[str, str], bool]) -> FinitePoset:
    rel = frozenset(
        (a, b) for a in elements for b in elements if a == b or leq(a, b)
    )
    return FinitePoset(tuple(elements), rel)


def delta_poset(n: int, labels: Optional[Sequence[str]] = None) -> FinitePoset:
    """The total order [n]."""
    if n < 0:
        raise InputError("n must be >= 0")
    if labels is None:
        labels = [str(i) for i in range(n + 1)]
    elif len(labels) != n + 1:
        raise InputError("wrong number of labels")
    idx = {v: i for i, v in enumerate(labels)}
    return _poset_from_leq(labels, lambda a, b: idx[a] <= idx[b])


def poset_product(p: FinitePoset, q: FinitePoset,
                  label: Callable[[str, str], str] = lambda a, b: f"({a},{b})") -> FinitePoset:
    """Product order; element labels composed from operand labels."""
    elems = [label(a, b) for a in p.elements for b in q.elements]
    back = {label(a, b): (a, b) for a in p.elements for b in q.elements}
    if len(back) != len(elems):
        raise InputError("label collision in product")

    def leq(x: str, y: str) -> bool:
        (a, b), (c, d) = back[x], back[y]
        return p.leq(a, c) and q.leq(b, d)

    return _poset_from_leq(elems, leq)


def poset_reverse(p: FinitePoset) -> FinitePoset:
    rel = frozenset((b, a) for (a, b) in p.relation)
    return FinitePoset(tuple(reversed(p.elements)), rel)


def ordinal_sum(*parts: FinitePoset,
                label: Callable[[int, str], str] = lambda i, a: f"{i}.{a}") -> FinitePoset:
    """Blocks in sequence: everything in an earlier block is below every later one."""
    if not parts:
        raise InputError("ordinal_sum needs at least one operand")
    elems: list[str] = []
    block: dict[str, int] = {}
    back: dict[str, str] = {}
    for i, p in enumerate(parts):
        for a in p.elements:
            e = label(i, a)
            if e in block:
                raise InputError("label collision in ordinal sum")
            elems.append(e)
            block[e] = i
            back[e] = a

    def leq(x: str, y: str) -> bool:
        if block[x] != block[y]:
            return block[x] < block[y]
        return parts[block[x]].leq(back[x], back[y])

    return _poset_from_leq(elems, leq)


_TOKEN = re.compile(r"\s*([A-Za-z_]+|\d+|[(),])")


def build_poset(expr) -> FinitePoset:
    """Build a poset from an expression over delta / product / ordinal_sum / reverse.

    Accepts either a nested tuple form, e.g. ``("product", ("delta", 2),
    ("delta", 1))``, or the equivalent string ``"product(delta(2),delta(1))"``.
    """
    if isinstance(expr, str):
        expr = _parse_poset_expr(expr)
    return _eval_poset(expr)


def _parse_poset_expr(text: str):
    tokens = _TOKEN.findall(text)
    if "".join(_TOKEN.findall(text)) != "".join(text.split()):
        raise InputError(f"cannot tokenize {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise InputError("unexpected end of poset expression")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise InputError(f"expected {expected!r}, got {tok!r}")
        pos += 1
        return tok

    def expr():
        head = take()
        if head.isdigit():
            return int(head)
        take("(")
        args = []
        if peek() != ")":
            args.append(expr())
            while peek() == ",":
                take(",")
                args.append(expr())
        take(")")
        return (head, *args)

    out = expr()
    if pos != len(tokens):
        raise InputError(f"trailing tokens in {text!r}")
    return out


def _eval_poset(node) -> FinitePoset:
    if isinstance(node, FinitePoset):
        return node
    if not isinstance(node, (tuple, list)) or not node:
        raise InputError(f"malformed poset expression {node!r}")
    head, *args = node
    if head == "delta":
        if len(args) != 1 or not isinstance(args[0], int):
            raise InputError("delta takes one natural number")
        return delta_poset(args[0])
    if head == "product":
        if len(args) != 2:
            raise InputError("product takes two operands")
        return poset_product(_eval_poset(args[0]), _eval_poset(args[1]))
    if head == "reverse":
        if len(args) != 1:
            raise InputError("reverse takes one operand")
        return poset_reverse(_eval_poset(args[0]))
    if head == "ordinal_sum":
        if not args:
            raise InputError("ordinal_sum takes at least one operand")
        return ordinal_sum(*[_eval_poset(a) for a in args])
    raise InputError(f"unknown poset constructor {head!r}")


def nerve(p: FinitePoset) -> OrderedComplex:
    """All nonempty strictly increasing chains of the poset."""
    elems = list(p.elements)
    above: dict[str, list[str]] = {
        a: [b for b in elems if p.lt(a, b)] for a in elems
    }
    chains: list[Simplex] = []

    def extend(chain: tuple[str, ...]):
        chains.append(chain)
        for b in above[chain[-1]]:
            extend(chain + (b,))

    for a in elems:
        extend((a,))
    return OrderedComplex(frozenset(chains), _validated=True)


def chain_count(p: FinitePoset, length: int) -> int:
    """Brute-force count of strictly increasing chains with `length` elements."""
    return sum(
        1
        for c in combinations(p.elements, length)
        if all(p.lt(c[i], c[i + 1]) for i in range(length - 1))
    )


def span(k: OrderedComplex, generators: Iterable[Simplex]) -> OrderedComplex:
    """Smallest face-closed sub-collection of `k` containing the generators."""
    gens = [tuple(g) for g in generators]
    for g in gens:
        if g not in k.tuples:
            raise InputError(f"generator {g} is not a simplex of the ambient complex")
    return OrderedComplex.from_tuples(gens)


def simplex_complex(labels: Sequence[str]) -> OrderedComplex:
    """The full simplex on an ordered list of distinct labels."""
    t = tuple(labels)
    if len(set(t)) != len(t):
        raise InputError("simplex labels must be distinct")
    return OrderedComplex.from_tuples([t])


def horn(s: Sequence[str], n: Iterable[str], include_all_faces: bool = False) -> OrderedComplex:
    """Union of the codimension-1 faces of the simplex on `s` opposite to
    the vertices outside `n`; with ``include_all_faces`` (and empty `n`)
    this is the full boundary."""
    s = tuple(s)
    nset = set(n)
    if not nset <= set(s):
        raise InputError("horn subset must consist of simplex vertices")
    if nset == set(s):
        raise InputError("horn subset must be proper")
    if not include_all_faces and not nset:
        raise InputError("horn subset must be nonempty (or request all faces)")
    gens = [tuple(v for v in s if v != drop) for drop in s if drop not in nset]
    return OrderedComplex.from_tuples(gens)


def glue_pushout(
    b: OrderedComplex,
    c: OrderedComplex,
    a: OrderedComplex,
    i: ComplexMap,
    j: ComplexMap,
) -> tuple[OrderedComplex, ComplexMap, ComplexMap]:
    """Amalgamated union of `b` and `c` along injective maps out of `a`.

    Vertices of `c` outside the image of `a` keep their labels and must not
    clash with labels of `b`.
    """
    if i.source != a or j.source != a or i.target != b or j.target != c:
        raise InputError("glue maps must go a -> b and a -> c")
    if not i.is_injective() or not j.is_injective():
        raise InputError("glue maps must be injective on vertices")
    j_back = {j(v): i(v) for v in a.vertices}
    cmap: dict[str, str] = {}
    for v in c.vertices:
        if v in j_back:
            cmap[v] = j_back[v]
        else:
            if v in b.vertices:
                raise GlueConflict(f"unglued vertex label {v!r} collides with the other leg")
            cmap[v] = v
    tuples: dict[frozenset[str], Simplex] = {frozenset(t): t for t in b.tuples}
    for t in c.tuples:
        img = tuple(cmap[v] for v in t)
        prior = tuples.get(frozenset(img))
        if prior is not None and prior != img:
            raise GlueConflict(f"identification forces {prior} against {img}")
        tuples[frozenset(img)] = img
    out = OrderedComplex(frozenset(tuples.values()), _validated=True)
    from_b = ComplexMap(b, out, {v: v for v in b.vertices})
    from_c = ComplexMap(c, out, cmap)
    return out, from_b, from_c


def quotient_vertex_map(
    k: OrderedComplex, vmap: Mapping[str, str]
) -> tuple[OrderedComplex, ComplexMap]:
    """Collapse-regular vertex quotient: image tuples are deduplicated.

    Raises IrregularCollapse when some tuple maps to a word whose equal
    letters are not contiguous, i.e. when dedup semantics would disagree
    with the intended identification.
    """
    vmap = dict(vmap)
    missing = k.vertices - vmap.keys()
    if missing:
        raise InputError(f"vmap missing vertices {sorted(missing)}")
    imgs: set[Simplex] = set()
    for t in k.tuples:
        word = [vmap[v] for v in t]
        img = dedup_word(word)
        if img is None:
            raise IrregularCollapse(f"tuple {t} maps to irregular word {tuple(word)}")
        imgs.add(img)
    out = OrderedComplex(close_tuples(imgs), _validated=True)
    if out.tuples != frozenset(imgs):
        raise IrregularCollapse("quotient image is not face-closed")
    return out, ComplexMap(k, out, vmap)


@dataclass(frozen=True)
class IsoResult:
    """A vertex bijection matching K onto L.

    When ``reversed`` is true the bijection carries each tuple of K to the
    reverse of a tuple of L (an order-reversing isomorphism).
    """

    vmap: dict[str, str]
    reversed: bool

    def as_map(self, k: OrderedComplex, l: OrderedComplex) -> ComplexMap:
        src = opposite(k) if self.reversed else k
        return ComplexMap(src, l, self.vmap)


def find_isomorphism(
    k: OrderedComplex,
    l: OrderedComplex,
    vertex_hint: Optional[Mapping[str, str]] = None,
    *,
    include_reversal: bool = True,
    thin_source: Optional[Iterable[Simplex]] = None,
    thin_target: Optional[Iterable[Simplex]] = None,
) -> Optional[IsoResult]:
    """Backtracking search for a vertex bijection inducing a tuple bijection.

    Tries order-preserving assignments first; when ``include_reversal`` is
    set it falls back to order-reversing ones (tuples map to reversed
    tuples).  A partial ``vertex_hint`` constrains the search.  When thin
    sets are supplied the bijection must also match them exactly.
    """
    hint = dict(vertex_hint or {})
    thin_k = None if thin_source is None else frozenset(tuple(t) for t in thin_source)
    thin_l = None if thin_target is None else frozenset(tuple(t) for t in thin_target)
    for rev in ([False, True] if include_reversal else [False]):
        src = opposite(k) if rev else k
        thin_src = thin_k
        if thin_k is not None and rev:
            thin_src = frozenset(t[::-1] for t in thin_k)
        vmap = _search_iso(src, l, hint, thin_src, thin_l)
        if vmap is not None:
            return IsoResult(vmap, rev)
    return None


def _search_iso(
    k: OrderedComplex,
    l: OrderedComplex,
    hint: Mapping[str, str],
    thin_k: Optional[frozenset[Simplex]] = None,
    thin_l: Optional[frozenset[Simplex]] = None,
) -> Optional[dict[str, str]]:
    if len(k.vertices) != len(l.vertices) or len(k.tuples) != len(l.tuples):
        return None
    for d in range(max(k.dimension(), l.dimension()) + 1):
        if len(k.simplices(d)) != len(l.simplices(d)):
            return None
    check_thin = thin_k is not None and thin_l is not None
    if check_thin and len(thin_k) != len(thin_l):
        return None
    kverts = sorted(k.vertices, key=label_key)
    lverts = sorted(l.vertices, key=label_key)
    for a, b in hint.items():
        if a not in k.vertices or b not in l.vertices:
            return None

    # Order source vertices so that constrained ones come first.
    def degree(v: str, kk: OrderedComplex) -> tuple:
        return tuple(sum(1 for t in kk.simplices(d) if v in t) for d in range(kk.dimension() + 1))

    kdeg = {v: degree(v, k) for v in kverts}
    ldeg = {v: degree(v, l) for v in lverts}
    order = sorted(kverts, key=lambda v: (v not in hint, kdeg[v], label_key(v)))

    assign: dict[str, str] = {}
    used: set[str] = set()

    tuples_by_vertex: dict[str, list[Simplex]] = {v: [] for v in kverts}
    for t in k.tuples:
        for v in t:
            tuples_by_vertex[v].append(t)

    def consistent(v: str) -> bool:
        for t in tuples_by_vertex[v]:
            if all(u in assign for u in t):
                img = tuple(assign[u] for u in t)
                if img not in l.tuples:
                    return False
                if check_thin and len(t) == 3 and (t in thin_k) != (img in thin_l):
                    return False
        return True

    def backtrack(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        candidates = [hint[v]] if v in hint else [w for w in lverts if ldeg[w] == kdeg[v]]
        for w in candidates:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            if consistent(v) and backtrack(idx + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    if backtrack(0):
        return dict(assign)
    return None
