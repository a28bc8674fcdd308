"""The Weyl group as a permutation group on the roots.

A stabilizer chain over the base of simple-root indices provides exact
orders, membership tests, uniform random elements, and the backbone for
the conjugacy backtrack.  Permutations are index tuples over the root
list; matrices are exact integer matrices in the reflection
representation (simple-root coordinates).
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field

from .errors import BudgetExceededError, EngineError
from .rootsys import RootSystem, build_root_system, degrees, weyl_order

DEFAULT_BUDGET = 10 ** 7


def compose(p, q):
    """Permutation p∘q: apply q first, then p."""
    return tuple(p[x] for x in q)


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_order(p):
    n = len(p)
    seen = [False] * n
    order = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = _lcm(order, length)
    return order


def cycle_type(p):
    """Sorted multiset of cycle lengths as ((length, count), ...)."""
    n = len(p)
    seen = [False] * n
    counts = {}
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        counts[length] = counts.get(length, 0) + 1
    return tuple(sorted(counts.items()))


def _lcm(a, b):
    from math import gcd
    return a // gcd(a, b) * b


def mat_mul(a, b):
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def charpoly(a):
    """Characteristic polynomial of an integer matrix, low degree first.

    Faddeev-LeVerrier; all divisions are exact for integer input.
    Returns coefficients (c_0, ..., c_n) of det(qI - A) = sum c_k q^k.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = mat_identity(n)
    c = 1
    for k in range(1, n + 1):
        if k > 1:
            m = tuple(tuple(m[i][j] + (c if i == j else 0) for j in range(n))
                      for i in range(n))
            m = mat_mul(a, m)
        else:
            m = a
        tr = sum(m[i][i] for i in range(n))
        if tr % k:
            raise EngineError("non-exact division in charpoly")
        c = -tr // k
        coeffs[n - k] = c
    return tuple(coeffs)


@dataclass(frozen=True)
class GroupElement:
    """A Weyl group element: root permutation plus reflection matrix."""

    perm: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...] | None = None

    def __mul__(self, other):
        return GroupElement(compose(self.perm, other.perm),
                            mat_mul(self.matrix, other.matrix))

    def inv(self):
        return GroupElement(inverse(self.perm), _mat_inverse_via_perm(self))

    @property
    def is_identity(self):
        return all(i == x for i, x in enumerate(self.perm))

    @property
    def order(self):
        return perm_order(self.perm)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)


def _mat_inverse_via_perm(g: GroupElement):
    # The matrix has finite order; the inverse is a power.  Cheaper and
    # exact: invert via the permutation order.
    k = perm_order(g.perm)
    m = g.matrix
    out = mat_identity(len(m))
    for _ in range(k - 1):
        out = mat_mul(out, m)
    return out


@dataclass
class _ChainLevel:
    point: int
    orbit: dict = field(default_factory=dict)   # point -> transversal perm
    gens: list = field(default_factory=list)    # (serial, perm) pairs
    done: set = field(default_factory=set)      # processed (point, serial)
    keys_cache: tuple | None = None


class StabilizerChain:
    """Deterministic Schreier-Sims over a fixed base.

    Generators stored at level i fix the first i base points as raw
    permutations, so the generating set of the i-th stabilizer is the
    union of the generator lists at levels >= i.  Processed Schreier
    pairs stay valid when the chain grows (transversals are only ever
    added), so each pair is sifted exactly once.
    """

    def __init__(self, n_points: int, base: list[int]):
        self.n = n_points
        self.base = list(base)
        self.levels: list[_ChainLevel] = []
        self.identity = tuple(range(n_points))
        self._serial = 0

    # -- construction ------------------------------------------------------

    def extend(self, gen_perms):
        for g in gen_perms:
            self._add_generator(g)

    def _is_identity(self, p):
        return all(i == x for i, x in enumerate(p))

    def _level(self, i) -> _ChainLevel:
        while len(self.levels) <= i:
            k = len(self.levels)
            if k >= len(self.base):
                raise EngineError("base exhausted; representation not faithful")
            lvl = _ChainLevel(point=self.base[k])
            lvl.orbit[lvl.point] = self.identity
            self.levels.append(lvl)
        return self.levels[i]

    def _strip(self, p, start=0):
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            img = p[lvl.point]
            u = lvl.orbit.get(img)
            if u is None:
                return p, i
            p = compose(inverse(u), p)
        return p, len(self.levels)

    def _raw_level(self, p) -> int:
        """Number of initial base points fixed by p as a raw permutation."""
        j = 0
        while j < len(self.base) and p[self.base[j]] == self.base[j]:
            j += 1
        return j

    def _add_generator(self, g):
        if self._is_identity(g):
            return
        residue, idx = self._strip(g)
        if idx == len(self.levels) and self._is_identity(residue):
            return  # already in the group
        j = self._raw_level(g)
        self._level(j)
        self._serial += 1
        self.levels[j].gens.append((self._serial, g))
        for i in range(j, -1, -1):
            self._complete_level(i)

    def _gens_at(self, idx):
        out = []
        for lvl in self.levels[idx:]:
            out.extend(lvl.gens)
        return out

    def _complete_level(self, idx):
        lvl = self._level(idx)
        while True:
            gens = self._gens_at(idx)
            # expand the orbit under the full stabilizer generating set
            frontier = list(lvl.orbit)
            while frontier:
                nxt = []
                for x in frontier:
                    ux = lvl.orbit[x]
                    for _, g in gens:
                        y = g[x]
                        if y not in lvl.orbit:
                            lvl.orbit[y] = compose(g, ux)
                            nxt.append(y)
                frontier = nxt
            # process unseen Schreier generators
            failing = None
            for x in list(lvl.orbit):
                ux = lvl.orbit[x]
                for serial, g in gens:
                    if (x, serial) in lvl.done:
                        continue
                    y = g[x]
                    schreier = compose(inverse(lvl.orbit[y]), compose(g, ux))
                    lvl.done.add((x, serial))
                    if self._is_identity(schreier):
                        continue
                    residue, ridx = self._strip(schreier, idx + 1)
                    if ridx == len(self.levels) and self._is_identity(residue):
                        continue
                    failing = residue
                    break
                if failing is not None:
                    break
            if failing is None:
                return
            j = self._raw_level(failing)
            self._level(j)
            self._serial += 1
            self.levels[j].gens.append((self._serial, failing))
            for k in range(j, idx, -1):
                self._complete_level(k)
            # restart this level: the new generators may enlarge the orbit

    # -- queries -----------------------------------------------------------

    @property
    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.orbit)
        return n

    def contains(self, p) -> bool:
        residue, idx = self._strip(p)
        return idx == len(self.levels) and all(i == v for i, v in enumerate(residue))

    def random(self, rng: random.Random):
        p = self.identity
        for lvl in self.levels:
            keys = lvl.keys_cache
            if keys is None or len(keys) != len(lvl.orbit):
                keys = tuple(lvl.orbit)
                lvl.keys_cache = keys
            u = lvl.orbit[keys[rng.randrange(len(keys))]]
            p = compose(p, u)
        return p


@dataclass(frozen=True)
class GroupContext:
    """Immutable handle for W acting on the roots of a root system."""

    rs: RootSystem
    generators: tuple[GroupElement, ...]
    chain: StabilizerChain
    order: int

    @property
    def rank(self):
        return self.rs.rank

    @property
    def n_roots(self):
        return len(self.rs.roots)

    def identity(self) -> GroupElement:
        n = self.rank
        return GroupElement(self.chain.identity, mat_identity(n), word=())

    def random_element(self, rng: random.Random) -> GroupElement:
        return self.element_from_perm(self.chain.random(rng))

    def element_from_perm(self, perm, word=None) -> GroupElement:
        return GroupElement(perm, matrix_from_perm(self.rs, perm), word=word)

    def contains(self, g: GroupElement) -> bool:
        return self.chain.contains(g.perm)


def matrix_from_perm(rs: RootSystem, perm):
    """Reconstruct the reflection-representation matrix from a root permutation."""
    cols = []
    for idx in rs.simple_root_indices:
        cols.append(rs.roots[perm[idx]])
    return tuple(tuple(cols[j][i] for j in range(rs.rank)) for i in range(rs.rank))


def _generator_elements(rs: RootSystem):
    n = rs.rank
    gens = []
    for i in range(n):
        perm = tuple(rs.index_of[rs.reflect(i, r)] for r in rs.roots)
        mat = tuple(tuple((1 if k == j else 0) - (rs.cartan[i][j] if k == i else 0)
                          for j in range(n)) for k in range(n))
        gens.append(GroupElement(perm, mat, word=(i,)))
    return gens


@functools.lru_cache(maxsize=None)
def _build_group_cached(text: str) -> GroupContext:
    rs = build_root_system(text)
    gens = _generator_elements(rs)
    chain = StabilizerChain(len(rs.roots), list(rs.simple_root_indices))
    chain.extend([g.perm for g in gens])
    order = chain.order
    expected = weyl_order(rs.cartan_type)
    if order != expected:
        raise EngineError(
            "stabilizer-chain order %d does not match degree product %d for %s"
            % (order, expected, rs.cartan_type))
    return GroupContext(rs=rs, generators=tuple(gens), chain=chain, order=order)


def build_group(rs: RootSystem) -> GroupContext:
    """Build the stabilizer chain for W(rs); order is cross-checked."""
    return _build_group_cached(rs.cartan_type.text)


def element_of_word(ctx: GroupContext, word) -> GroupElement:
    """Product of simple reflections in word order (empty word = identity)."""
    n = ctx.rank
    for i in word:
        if not 0 <= i < n:
            raise EngineError("reflection index %d out of range 0..%d" % (i, n - 1))
    g = ctx.identity()
    for i in word:
        g = g * ctx.generators[i]
    return GroupElement(g.perm, g.matrix, word=tuple(word))


def word_of_element(ctx: GroupContext, g: GroupElement) -> tuple[int, ...]:
    """A reduced word for g (descent algorithm; deterministic)."""
    rs = ctx.rs
    npos = rs.n_positive
    perm = g.perm
    rights = []
    while not all(i == x for i, x in enumerate(perm)):
        for i, idx in enumerate(rs.simple_root_indices):
            if perm[idx] >= npos:  # image of alpha_i is negative
                break
        else:
            raise EngineError("no descent found; permutation not in W?")
        rights.append(i)
        perm = compose(perm, ctx.generators[i].perm)
    return tuple(reversed(rights))


# ---------------------------------------------------------------------------
# Invariant keys


@dataclass(frozen=True)
class InvariantKey:
    order: int
    root_cycle_type: tuple
    charpolys: tuple

    def __lt__(self, other):
        return (self.order, self.root_cycle_type, self.charpolys) < \
            (other.order, other.root_cycle_type, other.charpolys)


def invariant_key(ctx: GroupContext, g: GroupElement) -> InvariantKey:
    """Conjugacy-invariant fingerprint of g.

    Combines element order, the cycle type on roots, and characteristic
    polynomials of the powers g^k for k dividing the order.
    """
    order = perm_order(g.perm)
    ctype = cycle_type(g.perm)
    polys = []
    divisors = [k for k in range(1, order) if order % k == 0] or [1]
    mk = g.matrix
    pk = g.perm
    power = 1
    by_power = {1: (g.perm, g.matrix)}
    for k in divisors:
        while power < k:
            pk = compose(pk, g.perm)
            mk = mat_mul(mk, g.matrix)
            power += 1
        perm_k, mat_k = (g.perm, g.matrix) if k == 1 else (pk, mk)
        polys.append((k, charpoly(mat_k)))
    return InvariantKey(order=order, root_cycle_type=ctype,
                        charpolys=tuple(polys))


# ---------------------------------------------------------------------------
# Conjugacy backtrack


def conjugating_element(ctx: GroupContext, a: GroupElement, b: GroupElement,
                        budget: int = DEFAULT_BUDGET):
    """Find w with w a w^{-1} = b, or None.

    Depth-first search through the stabilizer chain; a partial point map
    is closed under the constraint w(a(p)) = b(w(p)) and under root
    negation, which prunes almost all branches immediately.  Candidates
    are tried in increasing image order, so the returned witness is the
    one whose base-image sequence is lexicographically least.  Raises
    BudgetExceededError when more than ``budget`` nodes are visited.
    """
    if invariant_key(ctx, a) != invariant_key(ctx, b):
        return None
    ap, bp = a.perm, b.perm
    n = ctx.n_roots
    npos = ctx.rs.n_positive

    def neg(i):
        return i + npos if i < npos else i - npos

    # cycle lengths for the cheap pre-check
    def cyclens(p):
        out = [0] * n
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            for x in cyc:
                out[x] = len(cyc)
        return out

    alen, blen = cyclens(ap), cyclens(bp)
    pmap = [-1] * n
    rmap = [-1] * n
    nodes = 0

    def assign(p, q, trail):
        stack = [(p, q)]
        while stack:
            p, q = stack.pop()
            cur = pmap[p]
            if cur != -1:
                if cur != q:
                    return False
                continue
            if rmap[q] != -1 or alen[p] != blen[q]:
                return False
            pmap[p] = q
            rmap[q] = p
            trail.append((p, q))
            stack.append((ap[p], bp[q]))
            stack.append((neg(p), neg(q)))
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            p, q = trail.pop()
            pmap[p] = -1
            rmap[q] = -1

    levels = ctx.chain.levels
    trail = []

    def search(level, prefix):
        nonlocal nodes
        if level == len(levels):
            w = prefix
            for p in range(n):
                if w[ap[p]] != bp[w[p]]:
                    return None
            return w
        lvl = levels[level]
        beta = lvl.point
        cands = sorted((prefix[x], x) for x in lvl.orbit)
        for c, x in cands:
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    "conjugacy backtrack exceeded %d nodes" % budget)
            if pmap[beta] != -1 and pmap[beta] != c:
                continue
            mark = len(trail)
            if assign(beta, c, trail):
                res = search(level + 1, compose(prefix, lvl.orbit[x]))
                if res is not None:
                    return res
            undo(trail, mark)
        return None

    w = search(0, ctx.chain.identity)
    if w is None:
        return None
    return ctx.element_from_perm(w)


def are_conjugate(ctx: GroupContext, a: GroupElement, b: GroupElement,
                  budget: int = DEFAULT_BUDGET):
    """(True, witness) when a and b are W-conjugate, else (False, None)."""
    w = conjugating_element(ctx, a, b, budget=budget)
    if w is None:
        return False, None
    return True, w


# ---------------------------------------------------------------------------
# Subset transporter


def subset_conjugator(ctx: GroupContext, s1, s2, limit: int = 5 * 10 ** 6):
    """An element mapping the subsystem of s1 onto that of s2, or None.

    Subsets of the simple roots are handled by diagram moves (conjugation
    by parabolic longest elements), which generate W-conjugacy of
    standard parabolics while only ever visiting subsets of the simple
    roots.  General root subsets fall back to a breadth-first orbit
    search with parent pointers; such orbits stay small because the
    setwise stabilizer contains the reflection subgroup of the
    complement.
    """
    start = frozenset(s1)
    target = frozenset(s2)
    if start == target:
        return ctx.identity()
    simple = set(ctx.rs.simple_root_indices)
    if start <= simple and target <= simple:
        from .rootsys import _subset_class_orbit

        pos = {idx: i for i, idx in enumerate(ctx.rs.simple_root_indices)}
        orbit = _subset_class_orbit(ctx, frozenset(pos[i] for i in start))
        w = orbit.get(frozenset(pos[i] for i in target))
        return None if w is None else ctx.element_from_perm(w)
    gens = [g.perm for g in ctx.generators]
    parent = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            for gi, g in enumerate(gens):
                img = frozenset(g[i] for i in s)
                if img not in parent:
                    parent[img] = (s, gi)
                    if img == target:
                        word = []
                        cur = img
                        while parent[cur] is not None:
                            prev, gi2 = parent[cur]
                            word.append(gi2)
                            cur = prev
                        return element_of_word(ctx, tuple(word))
                    nxt.append(img)
                    if len(parent) > limit:
                        raise BudgetExceededError(
                            "subset orbit exceeded %d sets" % limit)
        frontier = nxt
    return None
