"""Cartan types, root systems, and Levi subsystem classification.

Roots are stored as integer coordinate tuples in the simple-root basis,
so all arithmetic in this package is exact.  Simple roots are numbered
0..rank-1 internally; file formats and the CLI print them 1-based.
The simple-root numbering follows Bourbaki (for type E the chain is
1-3-4-5-6-7-8 with node 2 attached to node 4).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import InvalidTypeError

FAMILIES = "ABCDEFG"

#: printed form of the rank-zero (torus) type
TORUS_NAME = "T"

_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2, "F": 4, "G": 2}
_MAX_RANK = {"F": 4, "G": 2}

_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: sorted(list(range(2, 2 * n - 1, 2)) + [n]),
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12],
                    7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


@dataclass(frozen=True, order=True)
class CartanType:
    """A multiset of simple components, canonically ordered.

    Components are sorted by family letter, then rank descending, so the
    printed form is a stable name for the isomorphism class of the type.
    """

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for fam, rank in self.components:
            if fam not in FAMILIES:
                raise InvalidTypeError("unknown family %r" % fam)
            if rank < _MIN_RANK.get(fam, 1):
                raise InvalidTypeError("rank %d too small for family %s" % (rank, fam))
            if fam == "E" and rank not in (6, 7, 8):
                raise InvalidTypeError("E-rank must be 6, 7 or 8 (got %d)" % rank)
            if fam in _MAX_RANK and rank != _MAX_RANK[fam]:
                raise InvalidTypeError("%s-rank must be %d" % (fam, _MAX_RANK[fam]))
        canon = tuple(sorted(self.components, key=lambda c: (c[0], -c[1])))
        object.__setattr__(self, "components", canon)

    @classmethod
    def of(cls, *components) -> "CartanType":
        return cls(tuple(components))

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse a `+`-separated type string such as ``E8`` or ``A4+A3``.

        Case-insensitive.  ``T`` (or the empty string) names the
        rank-zero torus type.
        """
        text = text.strip()
        if text.upper() in ("", TORUS_NAME):
            return cls(())
        comps = []
        for piece in text.split("+"):
            piece = piece.strip().upper()
            if not piece or piece[0] not in FAMILIES or not piece[1:].isdigit():
                raise InvalidTypeError("cannot parse type component %r" % piece)
            comps.append((piece[0], int(piece[1:])))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_torus(self) -> bool:
        return not self.components

    @property
    def text(self) -> str:
        if self.is_torus:
            return TORUS_NAME
        return "+".join("%s%d" % c for c in self.components)

    def __str__(self):
        return self.text


def _cartan_matrix_simple(fam: str, n: int) -> list[list[int]]:
    """Cartan matrix A with A[i][j] = <alpha_j, alpha_i^vee> (0-based)."""
    a = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam == "A" or (fam in "BC" and n == 1):
        for i in range(n - 1):
            bond(i, i + 1)
    elif fam == "B":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            bond(n - 2, n - 1, -1, -2)
    elif fam == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            bond(n - 2, n - 1, -2, -1)
    elif fam == "D":
        if n == 2:
            pass
        else:
            for i in range(n - 3):
                bond(i, i + 1)
            bond(n - 3, n - 2)
            bond(n - 3, n - 1)
    elif fam == "E":
        # chain 1-3-4-5-..., node 2 attached to node 4 (Bourbaki), 0-based
        chain = [0] + list(range(2, n))
        for x, y in zip(chain, chain[1:]):
            bond(x, y)
        bond(1, 3)
    elif fam == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_3 short
        bond(2, 3)
    elif fam == "G":
        bond(0, 1, -1, -3)  # alpha_1 long, alpha_2 short
    return a


def cartan_matrix(t: CartanType) -> tuple[tuple[int, ...], ...]:
    """Block-diagonal Cartan matrix of a (possibly reducible) type."""
    n = t.rank
    a = [[0] * n for _ in range(n)]
    off = 0
    for fam, r in t.components:
        block = _cartan_matrix_simple(fam, r)
        for i in range(r):
            for j in range(r):
                a[off + i][off + j] = block[i][j]
        off += r
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class RootSystem:
    """Closed root system of a Cartan type, in simple-root coordinates."""

    cartan_type: CartanType
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]      # positives first, then negatives
    n_positive: int

    @property
    def positive_roots(self):
        return self.roots[: self.n_positive]

    @property
    def simple_root_indices(self) -> tuple[int, ...]:
        """Indices in ``roots`` of the simple roots, in order."""
        return self._simple_indices

    @property
    def index_of(self):
        """Dict mapping root coordinate tuple to its index in ``roots``."""
        return self._index

    def reflect(self, i: int, root: tuple[int, ...]) -> tuple[int, ...]:
        """Apply the simple reflection s_i to a coordinate vector."""
        c = sum(self.cartan[i][j] * root[j] for j in range(self.rank))
        new = list(root)
        new[i] -= c
        return tuple(new)

    def negative(self, idx: int) -> int:
        n = self.n_positive
        return idx + n if idx < n else idx - n


def _finish(rs: RootSystem):
    index = {r: i for i, r in enumerate(rs.roots)}
    simple = []
    for i in range(rs.rank):
        e = tuple(1 if j == i else 0 for j in range(rs.rank))
        simple.append(index[e])
    object.__setattr__(rs, "_index", index)
    object.__setattr__(rs, "_simple_indices", tuple(simple))
    return rs


@functools.lru_cache(maxsize=None)
def _build_root_system_cached(text: str) -> RootSystem:
    t = CartanType.parse(text)
    n = t.rank
    a = cartan_matrix(t)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(n):
                c = sum(a[i][j] * root[j] for j in range(n))
                new = list(root)
                new[i] -= c
                new = tuple(new)
                if new not in seen:
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    positives = sorted((r for r in seen if sum(r) > 0),
                       key=lambda r: (sum(r), r))
    roots = tuple(positives) + tuple(tuple(-x for x in r) for r in positives)
    rs = RootSystem(cartan_type=t, rank=n, cartan=a, roots=roots,
                    n_positive=len(positives))
    return _finish(rs)


def build_root_system(t: CartanType | str) -> RootSystem:
    """Construct the closed root system of ``t`` with deterministic ordering."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    return _build_root_system_cached(t.text)


def degrees(rs: RootSystem | CartanType) -> list[int]:
    """Fundamental degrees, ascending per component, concatenated."""
    t = rs if isinstance(rs, CartanType) else rs.cartan_type
    out = []
    for fam, r in t.components:
        out.extend(_DEGREES[fam](r))
    return out


def weyl_order(t: CartanType) -> int:
    """Order of the Weyl group, as the product of the degrees."""
    n = 1
    for d in degrees(t):
        n *= d
    return n


# ---------------------------------------------------------------------------
# Subsystem classification


def _classify_component(nodes, a):
    """Classify one connected subdiagram.

    ``nodes`` is a list of ambient indices, ``a`` the ambient Cartan
    matrix.  Returns (family, rank, standard_order) where standard_order
    lists the ambient indices in the standard (Bourbaki) numbering of the
    classified family.
    """
    k = len(nodes)
    adj = {u: [] for u in nodes}
    multiple = []
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            m = a[u][v] * a[v][u]
            if m:
                adj[u].append(v)
                adj[v].append(u)
                if m > 1:
                    multiple.append((u, v, m))
    if k == 1:
        return "A", 1, [nodes[0]]
    deg = {u: len(adj[u]) for u in nodes}
    ends = sorted(u for u in nodes if deg[u] == 1)
    branch = [u for u in nodes if deg[u] == 3]

    def path_from(start, avoid=None):
        out = [start]
        prev = avoid
        cur = start
        while True:
            nxt = [v for v in adj[cur] if v != prev]
            if not nxt:
                return out
            prev, cur = cur, nxt[0]
            out.append(cur)

    if multiple:
        (u, v, m) = multiple[0]
        if m == 3:
            # G2: node order (long, short); a[u][v] = -1 means v short rel. u
            long_, short = (u, v) if a[u][v] == -1 else (v, u)
            return "G", 2, [long_, short]
        # one double bond: B, C or F4.  a[x][y] = -2 iff y long, x short.
        short, long_ = (u, v) if a[u][v] == -2 else (v, u)
        if k == 2:
            return "B", 2, [long_, short]
        # path with the double bond somewhere; F4 iff it is in the middle
        if deg[short] == 2 and deg[long_] == 2:
            half_long = path_from(long_, avoid=short)[::-1]
            half_short = path_from(short, avoid=long_)
            return "F", 4, half_long + half_short
        if deg[short] == 1:
            # short root at the end: type B, standard order ends short
            return "B", k, path_from(short)[::-1]
        return "C", k, path_from(long_)[::-1]
    # simply laced
    if not branch:
        p = path_from(ends[0])
        return "A", k, p
    c = branch[0]
    branches = sorted((path_from(v, avoid=c) for v in adj[c]),
                      key=lambda b: (len(b), b))
    b1, b2, b3 = branches
    if len(b2) == 1:
        # D_k: trunk = longest branch reversed, then centre, then two leaves
        trunk = b3[::-1] + [c]
        return "D", k, trunk + [b1[0], b2[0]]
    # E_k: len(b1) == 1, len(b2) == 2
    order = [b2[1], b1[0], b2[0], c] + b3
    return "E", k, order


def classify_subset(rs: RootSystem, subset) -> tuple[CartanType, tuple[tuple[int, ...], ...]]:
    """Cartan type of the subsystem spanned by a set of simple-root indices.

    Returns the canonical type together with, per canonical component, the
    tuple of ambient simple-root indices in standard numbering.
    """
    nodes = sorted(subset)
    unseen = set(nodes)
    comps = []
    while unseen:
        start = min(unseen)
        stack = [start]
        comp = []
        while stack:
            u = stack.pop()
            if u not in unseen:
                continue
            unseen.remove(u)
            comp.append(u)
            for v in nodes:
                if v in unseen and rs.cartan[u][v]:
                    stack.append(v)
        comps.append(_classify_component(sorted(comp), rs.cartan))
    # D2/D3 never arise from classification (classified as A1+A1 / A3)
    comps.sort(key=lambda c: (c[0], -c[1], c[2]))
    t = CartanType(tuple((fam, r) for fam, r, _ in comps))
    maps = tuple(tuple(order) for _, _, order in comps)
    return t, maps


def subsystem_type(rs: RootSystem, subset) -> CartanType:
    """Cartan type of the subsystem generated by a subset of simple roots."""
    return classify_subset(rs, subset)[0]


# ---------------------------------------------------------------------------
# Levi classes


@dataclass(frozen=True)
class LeviClass:
    """One W-orbit of subsets of simple roots."""

    subset: frozenset[int]          # lexicographically least representative
    cartan_type: CartanType
    tag: int                        # 1-based; disambiguates equal types
    ambiguous: bool                 # True when several classes share the type

    @property
    def name(self) -> str:
        if self.ambiguous:
            return "%s#%d" % (self.cartan_type.text, self.tag)
        return self.cartan_type.text

    def __str__(self):
        return self.name


def _diagram_move(ctx, positions: frozenset, s: int) -> tuple[frozenset, object]:
    """Conjugate the standard subset ``positions`` by w0(positions + {s}).

    The longest element of a standard parabolic maps its simple roots to
    negatives of its simple roots, so the image is again a subset of
    simple-root positions.  Returns (new positions, conjugating element).
    """
    from .permgrp import GroupElement, compose  # deferred import

    rs = ctx.rs
    simple = rs.simple_root_indices
    m = sorted(positions | {s})
    perm = ctx.chain.identity
    # ascend to the longest element of the standard parabolic on m
    while True:
        for p in m:
            if perm[simple[p]] < rs.n_positive:
                perm = compose(perm, ctx.generators[p].perm)
                break
        else:
            break
    new = frozenset(
        simple.index(rs.negative(perm[simple[p]])) for p in positions)
    return new, perm


def _subset_class_orbit(ctx, start: frozenset):
    """Orbit of a set of simple-root positions under diagram moves.

    Elementary conjugations J -> -w0(J + {s})(J) generate W-conjugacy on
    subsets of the simple roots, so the orbit is exactly the W-class of
    the standard parabolic, enumerated without touching large root-set
    orbits.  Returns {positions: witness perm conjugating start to it}.
    """
    from .permgrp import compose

    rank = ctx.rank
    seen = {start: ctx.chain.identity}
    frontier = [start]
    while frontier:
        nxt = []
        for j in frontier:
            for s in range(rank):
                if s in j:
                    continue
                img, w = _diagram_move(ctx, j, s)
                if img not in seen:
                    seen[img] = compose(w, seen[j])
                    nxt.append(img)
        frontier = nxt
    return seen


@functools.lru_cache(maxsize=None)
def _levi_representatives_cached(text: str) -> tuple[LeviClass, ...]:
    rs = build_root_system(CartanType.parse(text))
    from .permgrp import build_group  # deferred: permgrp imports rootsys

    ctx = build_group(rs)
    simple = rs.simple_root_indices
    n = rs.rank
    all_subsets = [frozenset(i for i in range(n) if mask >> i & 1)
                   for mask in range(1 << n)]
    unassigned = set(all_subsets)
    reps = []
    for s in sorted(all_subsets, key=sorted):
        if s not in unassigned:
            continue
        orbit = _subset_class_orbit(ctx, s)
        for x in orbit:
            unassigned.discard(x)
        reps.append(frozenset(simple[i] for i in s))
    simple_pos = {idx: i for i, idx in enumerate(simple)}
    typed = []
    for s in reps:
        t, _ = classify_subset(rs, [simple_pos[i] for i in s])
        typed.append((t, s))
    by_type = {}
    for t, s in typed:
        by_type.setdefault(t.text, []).append(s)
    out = []
    for t, s in typed:
        group = sorted(by_type[t.text], key=lambda x: sorted(x))
        tag = group.index(s) + 1
        out.append(LeviClass(subset=s, cartan_type=t, tag=tag,
                             ambiguous=len(group) > 1))
    out.sort(key=lambda lc: (lc.cartan_type.rank, lc.cartan_type.text, lc.tag))
    return tuple(out)


def levi_representatives(rs: RootSystem) -> list[LeviClass]:
    """One representative per W-orbit of subsets of simple roots."""
    return list(_levi_representatives_cached(rs.cartan_type.text))


def levi_by_name(rs: RootSystem, name: str) -> LeviClass:
    """Resolve a Levi class by its printed name (e.g. ``A1`` or ``A1#2``)."""
    name = name.strip()
    tag = None
    if "#" in name:
        name, tagtext = name.split("#", 1)
        tag = int(tagtext)
    t = CartanType.parse(name)
    matches = [lc for lc in levi_representatives(rs)
               if lc.cartan_type == t and (tag is None or lc.tag == tag)]
    if not matches:
        raise InvalidTypeError("no Levi class %r in %s" % (name, rs.cartan_type))
    if len(matches) > 1:
        raise InvalidTypeError(
            "Levi type %s is ambiguous in %s; use one of: %s"
            % (t.text, rs.cartan_type,
               ", ".join(m.name for m in matches)))
    return matches[0]
