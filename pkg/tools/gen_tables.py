#!/usr/bin/env python3
"""Generate bundled WCT character-table files.

Pipeline per type: find the conjugacy classes of W on the root
permutation action (seeded search + invariant keys + exact conjugacy
backtrack, certified by the class equation), then run Dixon-Schneider
modulo a large prime with exact integer lifting, label irreps by
(dimension, b-invariant from exact fake degrees), and name classes in
Carter style from root decompositions.  Every emitted file is verified
with the package validator (orthogonality, class sizes, orders) before
it is written.

Usage: python tools/gen_tables.py A1 A2 ... D4 ... E8
"""

import math
import random
import sys
import time
from fractions import Fraction

sys.path.insert(0, "src")

from weylstrata.chartab import (CharacterTable, ClassRecord, IrrepLabel,
                                dump_character_table, validate_table)
from weylstrata.jind import fake_degree, poly_mul
from weylstrata.permgrp import (GroupElement, StabilizerChain, build_group,
                                charpoly, compose, conjugating_element,
                                element_of_word, invariant_key, inverse,
                                mat_identity, mat_mul, perm_order,
                                word_of_element)
from weylstrata.rootsys import build_root_system, degrees

# ---------------------------------------------------------------------------
# small number theory


def is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    n += 1
    while not is_prime(n):
        n += 1
    return n


# ---------------------------------------------------------------------------
# invariant bilinear form and arbitrary root reflections


def bilinear_form(rs):
    n = rs.rank
    d = [None] * n
    a = rs.cartan
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] and d[j] is None:
                    d[j] = d[i] * Fraction(a[i][j], a[j][i])
                    stack.append(j)
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    dd = [int(x * lcm) for x in d]
    return [[dd[i] * a[i][j] for j in range(n)] for i in range(n)]


def root_reflection(ctx, root_idx, form):
    rs = ctx.rs
    beta = rs.roots[root_idx]
    n = rs.rank

    def pair(u, v):
        return sum(u[i] * form[i][j] * v[j] for i in range(n) for j in range(n))

    bb = pair(beta, beta)
    perm = []
    for r in rs.roots:
        c = 2 * pair(r, beta)
        assert c % bb == 0
        coef = c // bb
        img = tuple(r[i] - coef * beta[i] for i in range(n))
        perm.append(rs.index_of[img])
    return ctx.element_from_perm(tuple(perm))


# ---------------------------------------------------------------------------
# conjugacy classes


def cheap_key(ctx, g):
    return (perm_order(g.perm), tuple(sorted(
        _cycle_counts(g.perm).items())), charpoly(g.matrix))


def _cycle_counts(p):
    n = len(p)
    seen = [False] * n
    counts = {}
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            ln += 1
        counts[ln] = counts.get(ln, 0) + 1
    return counts


BFS_CAP = 60000
MEMBER_BUDGET = 1_500_000   # max enumerated elements retained for O(1) lookup


class ClassFinder:
    def __init__(self, ctx, seed=0, verbose=True):
        self.ctx = ctx
        self.rng = random.Random(seed)
        self.size_rng = random.Random(seed + 1)
        self.by_cheap = {}
        self.full_keys = {}     # idx -> full invariant key
        self.ext_keys = {}      # idx -> reflection-multiset key (lazy)
        self.reps = []
        self.sizes = []
        self.harvested = []     # idx list where size came from harvesting
        self.member_of = {}     # perm bytes -> idx, for enumerated classes
        self.retained = set()   # class indices fully present in member_of
        self.stored = 0
        self.verbose = verbose
        self.form = bilinear_form(ctx.rs)
        self.minus_one = self._central_minus_one()
        self.reflections = None

    def ext_key(self, g):
        """Multiset of cheap keys of g*s over all reflections s.

        Conjugation permutes the reflections, so this is a class
        invariant; it separates almost every pair of classes that share
        the power-charpoly key, at about a millisecond per evaluation.
        """
        if self.reflections is None:
            self.reflections = [
                root_reflection(self.ctx, r, self.form).perm
                for r in range(self.ctx.rs.n_positive)]
        out = {}
        for s in self.reflections:
            q = compose(g.perm, s)
            k = (perm_order(q), tuple(sorted(_cycle_counts(q).items())))
            out[k] = out.get(k, 0) + 1
        return tuple(sorted(out.items()))

    def _ext_of(self, idx):
        if idx not in self.ext_keys:
            self.ext_keys[idx] = self.ext_key(self.reps[idx])
        return self.ext_keys[idx]

    def _central_minus_one(self):
        rs = self.ctx.rs
        perm = tuple(rs.negative(i) for i in range(len(rs.roots)))
        if self.ctx.chain.contains(perm):
            return self.ctx.element_from_perm(perm)
        return None

    def classify(self, g, paranoid=False):
        """Class index of g, registering a new class when unseen.

        The fast path assigns a candidate to the unique known class with
        the same invariant key without running the conjugacy backtrack;
        a genuinely new class sharing a key with a known one would then
        be missed, which the caller detects through the class equation
        and repairs with paranoid=True rounds (backtrack proofs).
        """
        b = bytes(g.perm)
        idx = self.member_of.get(b)
        if idx is not None:
            return idx
        ck = cheap_key(self.ctx, g)
        bucket = self.by_cheap.setdefault(ck, [])
        if bucket:
            key = invariant_key(self.ctx, g)
            matches = [idx for idx in bucket if self.full_keys[idx] == key]
            cands = [idx for idx in matches if idx not in self.retained]
            if len(cands) >= 1:
                ek = self.ext_key(g)
                cands = [idx for idx in cands if self._ext_of(idx) == ek]
            if cands:
                if not paranoid and len(cands) == 1:
                    return cands[0]
                for idx in cands:
                    if conjugating_element(self.ctx, g,
                                           self.reps[idx]) is not None:
                        return idx
        return self._register(g, bucket)

    def _register(self, g, bucket):
        idx = len(self.reps)
        self.reps.append(g)
        bucket.append(idx)
        self.full_keys[idx] = invariant_key(self.ctx, g)
        orbit = conj_orbit_capped(self.ctx, g, BFS_CAP)
        if orbit is not None:
            self.sizes.append(len(orbit))
            if self.stored + len(orbit) <= MEMBER_BUDGET:
                for x in orbit:
                    self.member_of[x] = idx
                self.stored += len(orbit)
                self.retained.add(idx)
        else:
            z = centralizer_order(self.ctx, g, self.size_rng)
            if self.ctx.order % z:
                raise RuntimeError("centralizer order does not divide |W|")
            self.sizes.append(self.ctx.order // z)
            self.harvested.append(idx)
        return idx

    def add_with_closure(self, g, paranoid=False):
        """Classify g, its powers, and (when central) -1 times those."""
        todo = [g]
        if self.minus_one is not None:
            todo.append(self.minus_one * g)
        for h in todo:
            o = perm_order(h.perm)
            power = h
            for _ in range(o):
                self.classify(power, paranoid=paranoid)
                power = power * h

    def seed_subsets(self):
        ctx = self.ctx
        n = ctx.rank
        for mask in range(1 << n):
            word = [i for i in range(n) if mask >> i & 1]
            self.add_with_closure(element_of_word(ctx, word))
        if self.verbose:
            print("  after subset seeds: %d classes" % len(self.reps))

    def seed_random_roots(self, rounds, paranoid=False):
        ctx = self.ctx
        if ctx.rank < 2:
            return
        npos = ctx.rs.n_positive
        refl_cache = {}
        for _ in range(rounds):
            k = self.rng.randint(2, ctx.rank)
            picks = self.rng.sample(range(npos), k)
            g = ctx.identity()
            for r in picks:
                if r not in refl_cache:
                    refl_cache[r] = root_reflection(ctx, r, self.form)
                g = g * refl_cache[r]
            self.add_with_closure(g, paranoid=paranoid)

    def seed_random_elements(self, rounds, paranoid=False):
        for _ in range(rounds):
            self.add_with_closure(self.ctx.random_element(self.rng),
                                  paranoid=paranoid)


def conj_orbit_capped(ctx, g, cap):
    """Conjugation orbit of g as a set of byte strings, or None beyond cap."""
    n = len(ctx.rs.roots)
    rng_idx = range(n)
    gens = [(bytes(h.perm), bytes(inverse(h.perm))) for h in ctx.generators]
    start = bytes(g.perm)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for h, hi in gens:
                y = bytes(hi[x[h[i]]] for i in rng_idx)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return seen


def centralizer_order(ctx, g, rng, scale=8, floor=600):
    """Order of Z_W(g) by collision harvesting, certified by the caller.

    Conjugates of g by uniform random elements collide after about
    sqrt(|C|) samples; each collision yields a uniform centralizer
    element.  Sampling continues until no growth was seen for
    scale*sqrt(|W|/|Z'|) consecutive samples, so the expected number of
    missed-subgroup collisions at the stopping point is large.  The
    result is a lower bound on |Z|, certified exact by the caller's
    global class equation.
    """
    chain = StabilizerChain(len(ctx.rs.roots), list(ctx.rs.simple_root_indices))
    chain.extend([g.perm])
    minus = tuple(ctx.rs.negative(i) for i in range(len(ctx.rs.roots)))
    if ctx.chain.contains(minus):
        chain.extend([minus])
    seen = {}
    since_growth = 0
    while True:
        est_class = ctx.order // chain.order
        need = max(floor, int(scale * math.isqrt(est_class)))
        if since_growth >= need:
            return chain.order
        w = ctx.chain.random(rng)
        gp = compose(compose(inverse(w), g.perm), w)
        since_growth += 1
        prev = seen.get(gp)
        if prev is None:
            seen[gp] = w
            continue
        z = compose(prev, inverse(w))
        before = chain.order
        chain.extend([z])
        if chain.order != before:
            since_growth = 0


TOPUP_CAP = 1_200_000


def find_classes(ctx, seed=0, verbose=True):
    """All conjugacy classes with exact sizes; certified by the class equation."""
    finder = ClassFinder(ctx, seed=seed, verbose=verbose)
    finder.add_with_closure(ctx.identity())
    finder.seed_subsets()
    rng = random.Random(seed + 2)
    exact = set()
    stalls = 0
    for attempt in range(40):
        total = sum(finder.sizes)
        if verbose:
            print("  attempt %d: %d classes, mass %d / %d"
                  % (attempt, len(finder.reps), total, ctx.order))
        if total == ctx.order:
            return finder
        if total > ctx.order:
            # a harvested centralizer is under-generated.  Re-harvest with
            # a stricter stopping rule, keeping the best subgroup found;
            # if that stalls, enumerate the smallest suspects exactly.
            pending = [i for i in finder.harvested if i not in exact]
            pending.sort(key=lambda i: finder.sizes[i])
            changed = False
            for idx in pending:
                z = centralizer_order(ctx, finder.reps[idx], rng,
                                      scale=16 * (attempt + 1))
                best = max(z, ctx.order // finder.sizes[idx])
                if ctx.order // best != finder.sizes[idx]:
                    changed = True
                finder.sizes[idx] = ctx.order // best
            if not changed:
                for idx in pending:
                    if finder.sizes[idx] <= TOPUP_CAP:
                        orbit = conj_orbit_capped(ctx, finder.reps[idx],
                                                  TOPUP_CAP)
                        if orbit is not None:
                            finder.sizes[idx] = len(orbit)
                            exact.add(idx)
                            if sum(finder.sizes) == ctx.order:
                                break
        else:
            before = len(finder.reps)
            paranoid = stalls >= 1
            finder.seed_random_roots(60 * (attempt + 1), paranoid=paranoid)
            finder.seed_random_elements(60 * (attempt + 1), paranoid=paranoid)
            if len(finder.reps) == before:
                stalls += 1
                if verbose and paranoid:
                    print("  (paranoid round: backtrack proofs enabled)")
            else:
                stalls = 0
    raise RuntimeError("class search did not converge")


# ---------------------------------------------------------------------------
# mod-p linear algebra


def mat_mul_mod(a, b, p):
    n, m, k = len(a), len(b[0]), len(b)
    bt = list(zip(*b))
    return [[sum(ar[t] * bc[t] for t in range(k)) % p for bc in bt] for ar in a]


def solve_mod(a, rhs, p):
    """Solve a x = rhs (a square invertible) mod p for matrix rhs."""
    n = len(a)
    m = [list(row) + list(rrow) for row, rrow in zip(a, rhs)]
    w = len(m[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if m[i][c] % p), None)
        if piv is None:
            raise RuntimeError("singular system")
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return [row[n:] for row in m]


def kernel_mod(a, p):
    """Basis of the kernel of a (rows = vectors) mod p."""
    n = len(a)
    m = [list(row) for row in a]
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-m[ri][fc]) % p
        basis.append(v)
    return basis


def charpoly_mod(a, p):
    """Characteristic polynomial mod p via Hessenberg reduction."""
    n = len(a)
    h = [[x % p for x in row] for row in a]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for row in h:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        inv = pow(h[c + 1][c], p - 2, p)
        for i in range(c + 2, n):
            if h[i][c]:
                f = h[i][c] * inv % p
                h[i] = [(x - f * y) % p for x, y in zip(h[i], h[c + 1])]
                for row in h:  # inverse column operation keeps similarity
                    row[c + 1] = (row[c + 1] + f * row[i]) % p
    # charpoly of Hessenberg by recurrence
    polys = [[1]]
    for k in range(1, n + 1):
        # p_k(x) = (x - h[k-1][k-1]) p_{k-1}(x) - sum over products of subdiagonals
        term = poly_mul(polys[k - 1], [(-h[k - 1][k - 1]) % p, 1])
        term = [x % p for x in term]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            if prod == 0:
                break
            coef = prod * h[i - 1][k - 1] % p
            if coef:
                sub = [x * coef % p for x in polys[i - 1]]
                term = [(x - y) % p for x, y in
                        zip(term, sub + [0] * (len(term) - len(sub)))]
        polys.append(term)
    return polys[n]


def poly_mod(a, f, p):
    a = [x % p for x in a]
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(a) > df:
        c = a[-1] * inv % p
        if c:
            off = len(a) - 1 - df
            for i in range(df + 1):
                a[off + i] = (a[off + i] - c * f[i]) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mulmod(a, b, f, p):
    return poly_mod([x % p for x in poly_mul(a, b)], f, p)


def poly_powmod(base, e, f, p):
    out = [1]
    b = poly_mod(list(base), f, p)
    while e:
        if e & 1:
            out = poly_mulmod(out, b, f, p)
        b = poly_mulmod(b, b, f, p)
        e >>= 1
    return out


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_gcd(a, b, p):
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _trim(poly_mod(a, b, p))
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def poly_roots(f, p, rng):
    """All roots in GF(p) of f (which splits into linear factors there)."""
    f = [x % p for x in f]
    while f and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        return []
    inv = pow(f[-1], p - 2, p)
    f = [x * inv % p for x in f]
    # strip multiplicities: distinct roots are the roots of gcd(x^p - x, f)
    xp = poly_powmod([0, 1], p, f, p)
    xp = xp + [0] * (2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    g = poly_gcd(f, xp, p)
    if len(g) <= 1:
        return []

    def split(poly):
        d = len(poly) - 1
        if d == 0:
            return []
        if d == 1:
            return [(-poly[0]) * pow(poly[1], p - 2, p) % p]
        while True:
            shift = rng.randrange(p)
            base = [shift, 1]
            h = poly_powmod(base, (p - 1) // 2, poly, p)
            h = [(x - y) % p for x, y in zip(h + [0], [1] + [0] * len(h))]
            while h and h[-1] == 0:
                h.pop()
            g1 = poly_gcd(poly, h, p)
            if 0 < len(g1) - 1 < d:
                g2 = _poly_div_exact_mod(poly, g1, p)
                return split(g1) + split(g2)

    roots = split(g)
    out = []
    for r in roots:
        # multiplicity via repeated synthetic division
        q = f
        while True:
            qq, rem = _synth_div(q, r, p)
            if rem:
                break
            out.append(r)
            q = qq
    return out


def _synth_div(poly, r, p):
    out = [0] * (len(poly) - 1)
    acc = 0
    for i in range(len(poly) - 1, 0, -1):
        acc = (acc * r + poly[i]) % p
        out[i - 1] = acc
    rem = (acc * r + poly[0]) % p
    return out, rem


def _poly_div_exact_mod(num, den, p):
    num = [x % p for x in num]
    dn = len(den) - 1
    inv = pow(den[-1], p - 2, p)
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] * inv % p
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] = (num[i - dn + j] - c * den[j]) % p
    return out


# ---------------------------------------------------------------------------
# Dixon-Schneider


def enumerate_class(ctx, rep, size_hint):
    """All elements of a class as byte strings (BFS under conjugation)."""
    seen = conj_orbit_capped(ctx, rep, size_hint)
    if seen is None or len(seen) != size_hint:
        raise RuntimeError("class enumeration disagrees with claimed size %d"
                           % size_hint)
    return seen


def class_matrix(ctx, reps, sizes, j, classify_perm):
    """M[k][i] = #{x in C_j : x^{-1} g_i in C_k} (class-algebra action)."""
    k = len(reps)
    elems = enumerate_class(ctx, reps[j], sizes[j])
    m = [[0] * k for _ in range(k)]
    for x in elems:
        xi = inverse(x)
        for i in range(k):
            y = compose(xi, reps[i].perm)
            m[classify_perm(y)][i] += 1
    return m


def dixon_schneider(ctx, reps, sizes, member_of=None, verbose=True):
    """Exact character table values via eigenvector splitting mod p."""
    k = len(reps)
    p = next_prime(max(ctx.order, 4 * k * k))
    rng = random.Random(12345)
    ident = next(i for i in range(k) if perm_order(reps[i].perm) == 1)
    member_of = dict(member_of or {})

    # classify arbitrary permutations into classes, cheap key first
    cheap = {}
    for i, g in enumerate(reps):
        cheap.setdefault((perm_order(g.perm),
                          tuple(sorted(_cycle_counts(g.perm).items()))), []).append(i)
    full_keys = {}
    for i, g in enumerate(reps):
        full_keys.setdefault(invariant_key(ctx, g), []).append(i)
    # pre-enumerate every class that shares a full key with another, so
    # ambiguous products resolve by dictionary lookup; very large ones
    # fall back to the reflection-multiset key, then to the backtrack
    finder = ClassFinder(ctx, verbose=False)
    ext_cache = {}
    for key, cands in full_keys.items():
        if len(cands) < 2:
            continue
        for i in cands:
            if sizes[i] <= min(TOPUP_CAP, BFS_CAP):
                for x in enumerate_class(ctx, reps[i], sizes[i]):
                    member_of[x] = i
            else:
                ext_cache[i] = finder.ext_key(reps[i])
                if verbose:
                    print("  note: ambiguous class %d resolved by ext key" % i)

    def classify_perm(perm):
        b = bytes(perm)
        idx = member_of.get(b)
        if idx is not None:
            return idx
        ck = (perm_order(perm), tuple(sorted(_cycle_counts(perm).items())))
        cands = cheap.get(ck)
        if not cands:
            raise RuntimeError("element matches no class (cheap key)")
        if len(cands) == 1:
            return cands[0]
        g = ctx.element_from_perm(perm)
        key = invariant_key(ctx, g)
        cands = full_keys.get(key)
        if not cands:
            raise RuntimeError("element matches no class (full key)")
        if len(cands) == 1:
            return cands[0]
        # enumerated candidates were already excluded by the member_of miss
        open_cands = [i for i in cands if i in ext_cache]
        if open_cands:
            ek = finder.ext_key(g)
            matches = [i for i in open_cands if ext_cache[i] == ek]
            if len(matches) == 1:
                return matches[0]
            if matches:
                open_cands = matches
        for i in open_cands:
            if conjugating_element(ctx, g, reps[i]) is not None:
                return i
        raise RuntimeError("conjugacy resolution failed")

    inv_class = [classify_perm(inverse(g.perm)) for g in reps]

    # a subspace is a list of basis column vectors; start with the full space
    subspaces = [[_unit(k, i) for i in range(k)]]
    order = sorted(range(k), key=lambda i: sizes[i])
    used = 0
    for j in order:
        if all(len(s) == 1 for s in subspaces):
            break
        if j == ident:
            continue
        if verbose:
            print("  class matrix for class %d (size %d); blocks: %s"
                  % (j, sizes[j], sorted(len(s) for s in subspaces)[-5:]))
        m = class_matrix(ctx, reps, sizes, j, classify_perm)
        mt = [[m[r][c] % p for c in range(k)] for r in range(k)]
        used += 1
        new_subspaces = []
        for basis in subspaces:
            if len(basis) == 1:
                new_subspaces.append(basis)
                continue
            img = [_mat_vec(mt, v, p) for v in basis]
            x = _express(basis, img, p)           # M . b_i = sum_j x[j][i] b_j
            f = charpoly_mod(x, p)
            roots = poly_roots(f, p, rng)
            dim_total = 0
            for lam in sorted(set(roots)):
                a = [[(x[r][c] - (lam if r == c else 0)) % p
                      for c in range(len(basis))] for r in range(len(basis))]
                kb = kernel_mod(a, p)
                dim_total += len(kb)
                sub = [_combine(kv, basis, p) for kv in kb]
                new_subspaces.append(sub)
            if dim_total != len(basis):
                raise RuntimeError(
                    "eigen split lost dimensions (%d of %d)"
                    % (dim_total, len(basis)))
        subspaces = new_subspaces
    if any(len(s) != 1 for s in subspaces):
        raise RuntimeError("splitting incomplete after all class matrices")
    if verbose:
        print("  split complete with %d class matrices" % used)

    table = []
    for (v,) in subspaces:
        if v[ident] % p == 0:
            raise RuntimeError("eigenvector vanishes at the identity class")
        inv = pow(v[ident], p - 2, p)
        omega = [x * inv % p for x in v]
        s = 0
        for i in range(k):
            s = (s + omega[i] * omega[inv_class[i]] *
                 pow(sizes[i], p - 2, p)) % p
        d2 = ctx.order * pow(s, p - 2, p) % p
        d2_lift = d2 if d2 <= p // 2 else d2 - p
        d = math.isqrt(d2_lift)
        if d2_lift <= 0 or d * d != d2_lift:
            raise RuntimeError("character degree is not a perfect square: %s"
                               % d2_lift)
        row = []
        for i in range(k):
            val = d * omega[i] % p * pow(sizes[i], p - 2, p) % p
            row.append(val if val <= p // 2 else val - p)
        table.append(row)
    return table


def _unit(k, i):
    return [1 if j == i else 0 for j in range(k)]


def _mat_vec(m, v, p):
    k = len(m)
    return [sum(m[r][c] * v[c] for c in range(k)) % p for r in range(k)]


def _express(basis, img, p):
    """Coordinates of img vectors in terms of basis vectors.

    Returns x with img[i] = sum_j x[j][i] basis[j]; the basis vectors
    must be independent and img must lie in their span.
    """
    nb = len(basis)
    k = len(basis[0])
    # pick nb coordinate positions where the basis has full rank
    m = [list(v) for v in basis]
    rows = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, nb) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        rows.append(c)
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(nb):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == nb:
            break
    if r < nb:
        raise RuntimeError("dependent basis")
    bsq = [[basis[j][c] % p for j in range(nb)] for c in rows]
    rsq = [[img[i][c] % p for i in range(len(img))] for c in rows]
    return solve_mod(bsq, rsq, p)


def _combine(coef, basis, p):
    k = len(basis[0])
    return [sum(coef[i] * basis[i][c] for i in range(len(basis))) % p
            for c in range(k)]


# ---------------------------------------------------------------------------
# Carter-style class names


def one_minus(mat):
    n = len(mat)
    return [[(1 if i == j else 0) - mat[i][j] for j in range(n)] for i in range(n)]


def _rref(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    out = []
    for row in m:
        for piv_col, piv_row in out:
            if row[piv_col]:
                f = row[piv_col]
                row = [x - f * y for x, y in zip(row, piv_row)]
        nz = next((c for c, x in enumerate(row) if x), None)
        if nz is not None:
            row = [x / row[nz] for x in row]
            out.append((nz, row))
    return out


def _in_span(rref_rows, vec):
    row = [Fraction(x) for x in vec]
    for piv_col, piv_row in rref_rows:
        if row[piv_col]:
            f = row[piv_col]
            row = [x - f * y for x, y in zip(row, piv_row)]
    return not any(row)


def carter_roots(ctx, g, form, tries=8):
    """Decompose g into rank(1-g) reflections, preferring tree diagrams.

    A root beta strictly decreases reflection length exactly when beta
    lies in the moved space Im(1-g); among those candidates we prefer one
    that keeps the Gram graph of the chosen roots acyclic (union-find),
    retrying with shuffled root orders before accepting a cyclic diagram.
    """
    rs = ctx.rs
    npos = rs.n_positive
    n = rs.rank
    refl = {}

    def pair(u, v):
        return sum(u[a] * form[a][b] * v[b] for a in range(n) for b in range(n))

    def attempt(order):
        cur = g
        chosen = []
        comp = {}

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        went_cyclic = False
        while True:
            moved = [tuple(col) for col in zip(*one_minus(cur.matrix))]
            space = _rref(moved)
            if not space:
                break
            cands = [r for r in order if _in_span(space, rs.roots[r])]
            if not cands:
                raise RuntimeError("no reflection decreases the length")
            best = None
            for r in cands:
                nbrs = [c for c in chosen if pair(rs.roots[c], rs.roots[r]) != 0]
                if len({find(c) for c in nbrs}) == len(nbrs):
                    # all neighbours in distinct components: stays a forest
                    best = r
                    break
            if best is None:
                best = cands[0]
                went_cyclic = True
            if best not in refl:
                refl[best] = root_reflection(ctx, best, form)
            cur = refl[best] * cur
            comp[best] = best
            for c in chosen:
                if pair(rs.roots[c], rs.roots[best]) != 0:
                    comp[find(c)] = find(best)
            chosen.append(best)
        # verify the decomposition multiplies back to g
        acc = ctx.identity()
        for r in reversed(chosen):
            acc = refl[r] * acc
        if acc.perm != g.perm:
            raise RuntimeError("reflection decomposition does not multiply back")
        return chosen, went_cyclic

    rng = random.Random(hash(invariant_key(ctx, g)) & 0xFFFFFFFF)
    order = list(range(npos))
    first = None
    for t in range(tries):
        chosen, cyclic = attempt(order)
        if not cyclic:
            return chosen
        if first is None:
            first = chosen
        order = list(range(npos))
        rng.shuffle(order)
    return first


def subsystem_closure(ctx, root_indices, form):
    """Root indices of the subsystem generated by the given roots."""
    rs = ctx.rs
    seen = set()
    refl = {}
    for r in root_indices:
        seen.add(r)
        seen.add(rs.negative(r))
    while True:
        for r in list(seen):
            if r not in refl:
                refl[r] = root_reflection(ctx, r, form)
        add = {s.perm[r] for r in seen for s in refl.values()} - seen
        if not add:
            return seen
        seen |= add


def classify_root_set(ctx, root_indices, form):
    """Cartan type text of a set of linearly independent roots (their span type)."""
    rs = ctx.rs
    n = rs.rank
    roots = [rs.roots[i] for i in root_indices]

    def pair(u, v):
        return sum(u[a] * form[a][b] * v[b] for a in range(n) for b in range(n))

    comps = []
    unseen = list(range(len(roots)))
    adj = {i: [] for i in unseen}
    for i in unseen:
        for j in unseen:
            if i < j and pair(roots[i], roots[j]) != 0:
                adj[i].append(j)
                adj[j].append(i)
    remaining = set(unseen)
    names = []
    while remaining:
        start = min(remaining)
        comp = []
        stack = [start]
        while stack:
            u = stack.pop()
            if u not in remaining:
                continue
            remaining.remove(u)
            comp.append(u)
            stack.extend(adj[u])
        names.append(_component_type(comp, roots, pair))
    return sorted(names, key=lambda t: (t[0], -t[1]))


def _component_type(comp, roots, pair):
    k = len(comp)
    if k == 1:
        return ("A", 1)
    # build normalized Cartan-like integers n_ij = 2(bi,bj)/(bj,bj)
    deg = {}
    bonds = {}
    for i in comp:
        deg[i] = 0
    mult_bond = None
    for x, i in enumerate(comp):
        for j in comp[x + 1:]:
            cij = pair(roots[i], roots[j])
            if cij == 0:
                continue
            m = 4 * cij * cij // (pair(roots[i], roots[i]) * pair(roots[j], roots[j]))
            deg[i] += 1
            deg[j] += 1
            bonds[(i, j)] = bonds[(j, i)] = m
            if m > 1:
                mult_bond = (i, j, m)
    cyclic = sum(deg.values()) // 2 >= k
    if cyclic:
        return ("Z", k)   # cyclic admissible diagram; named later by span
    if mult_bond:
        i, j, m = mult_bond
        if m == 3:
            return ("G", 2)
        # distinguish B/C by which end of the path is short
        short = i if pair(roots[i], roots[i]) < pair(roots[j], roots[j]) else j
        long_ = j if short == i else i
        if k == 2:
            return ("B", 2)
        if deg[short] == 2 and deg[long_] == 2:
            return ("F", 4)
        return ("B", k) if deg[short] == 1 else ("C", k)
    if max(deg.values()) <= 2:
        return ("A", k)
    # star node
    branches = sorted(_branch_lengths(comp, deg, bonds))
    if branches[1] == 1:
        return ("D", k)
    return ("E", k)


def _branch_lengths(comp, deg, bonds):
    centre = next(i for i in comp if deg[i] == 3)
    lens = []
    for j in comp:
        if (centre, j) in bonds:
            ln = 1
            prev, cur = centre, j
            while True:
                nxt = [t for t in comp if (cur, t) in bonds and t != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                ln += 1
            lens.append(ln)
    return lens


def type_text(parts):
    """Carter-style name from component list [('A',1),('A',1),('D',4)]."""
    from collections import Counter
    c = Counter(parts)
    terms = []
    for (fam, rank), mult in sorted(c.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        body = "%s_%d" % (fam, rank)
        terms.append(("%d" % mult if mult > 1 else "") + body)
    return "+".join(terms)


def simple_system_of(ctx, root_indices, form):
    """Indices of the simple roots of the subsystem spanned by the given roots."""
    rs = ctx.rs
    closure = subsystem_closure(ctx, root_indices, form)
    pos = sorted(r for r in closure if r < rs.n_positive)
    vecs = {r: rs.roots[r] for r in pos}
    sums = set()
    for a in pos:
        for b in pos:
            sums.add(tuple(x + y for x, y in zip(vecs[a], vecs[b])))
    return [r for r in pos if vecs[r] not in sums]


def carter_names(ctx, reps, sizes):
    """Best-effort Carter names: tree diagrams exactly, cycles by span type.

    Classes sharing a name get prime marks (two) or #k tags (more), in a
    deterministic invariant order.
    """
    form = bilinear_form(ctx.rs)
    raw = []
    for g in reps:
        if perm_order(g.perm) == 1:
            raw.append(("A_0", False))
            continue
        roots = carter_roots(ctx, g, form)
        parts = classify_root_set(ctx, roots, form)
        if any(fam == "Z" for fam, _ in parts):
            span = classify_root_set(
                ctx, simple_system_of(ctx, roots, form), form)
            raw.append((type_text(span), True))
        else:
            raw.append((type_text(parts), False))
    by_name = {}
    for i, (name, cyc) in enumerate(raw):
        by_name.setdefault((name, cyc), []).append(i)
    names = [None] * len(reps)
    # cyclic diagrams of the same span get (a1), (a2), ... after the
    # undecorated (tree) classes of that span name
    for (name, cyc), idxs in sorted(by_name.items()):
        idxs = sorted(idxs, key=lambda i: (-perm_order(reps[i].perm), sizes[i],
                                           invariant_key(ctx, reps[i])))
        if cyc:
            for k, i in enumerate(idxs, start=1):
                names[i] = "%s(a%d)" % (name, k)
        else:
            for i in idxs:
                names[i] = name
    # disambiguate duplicates (after decoration) with primes
    final_groups = {}
    for i, n in enumerate(names):
        final_groups.setdefault(n, []).append(i)
    for n, idxs in final_groups.items():
        if len(idxs) == 1:
            continue
        idxs = sorted(idxs, key=lambda i: (sizes[i], invariant_key(ctx, reps[i])))
        for primes, i in enumerate(idxs, start=1):
            names[i] = "(%s)%s" % (n, "'" * primes)
    return names


# ---------------------------------------------------------------------------
# driver


def generate(type_text_arg, out_dir="src/weylstrata/data", seed=0, verbose=True):
    t0 = time.time()
    rs = build_root_system(type_text_arg)
    ctx = build_group(rs)
    print("%s: |W| = %d" % (type_text_arg, ctx.order))
    finder = find_classes(ctx, seed=seed, verbose=verbose)
    reps, sizes = finder.reps, finder.sizes
    k = len(reps)
    print("  %d classes found and certified (%.1fs)" % (k, time.time() - t0))
    values = dixon_schneider(ctx, reps, sizes, member_of=finder.member_of,
                             verbose=verbose)
    print("  character values done (%.1fs)" % (time.time() - t0))

    # canonical class order: identity first, then by size/order/key
    order_key = [(sizes[i], perm_order(reps[i].perm),
                  invariant_key(ctx, reps[i])) for i in range(k)]
    perm_cls = sorted(range(k), key=lambda i: order_key[i])
    names = carter_names(ctx, reps, sizes)
    classes = []
    for i in perm_cls:
        word = word_of_element(ctx, reps[i])
        classes.append(ClassRecord(name=names[i], size=sizes[i],
                                   rep_word=word,
                                   element_order=perm_order(reps[i].perm)))
    rows = [tuple(row[i] for i in perm_cls) for row in values]

    # preliminary table for fake degrees (labels provisional)
    prem = CharacterTable(
        cartan_type=rs.cartan_type, classes=tuple(classes),
        irreps=tuple((IrrepLabel(max(r[0], 1), j), r)
                     for j, r in enumerate(rows)))
    ident = prem.identity_index
    dims = [r[ident] for r in rows]
    bs = []
    for j in range(k):
        fd = fake_degree(prem, rs, ctx, j)
        bs.append(fd.b)
    by_dimb = {}
    for j in range(k):
        by_dimb.setdefault((dims[j], bs[j]), []).append(j)
    labels = [None] * k
    for (d, b), idxs in by_dimb.items():
        if len(idxs) == 1:
            labels[idxs[0]] = IrrepLabel(d, b)
        elif len(idxs) <= 4:
            for mark, j in zip(("'", "''", "'''", "''''"),
                               sorted(idxs, key=lambda j: rows[j])):
                labels[j] = IrrepLabel(d, b, mark)
        else:
            raise RuntimeError("more than four irreps share (dim,b)=(%d,%d)" % (d, b))
    irrep_order = sorted(range(k), key=lambda j: (-labels[j].b, labels[j].dim,
                                                  labels[j].mark))
    table = CharacterTable(
        cartan_type=rs.cartan_type, classes=tuple(classes),
        irreps=tuple((labels[j], rows[j]) for j in irrep_order))
    report = validate_table(table, ctx)
    if not report.ok:
        raise RuntimeError("generated table fails validation: %s"
                           % report.failures[:5])
    print("  validation clean; warnings: %d" % len(report.warnings))
    for w in report.warnings:
        print("    note:", w)
    path = "%s/%s.wct" % (out_dir, type_text_arg.lower())
    with open(path, "w") as f:
        f.write("# Character table of W(%s); machine-generated and "
                "machine-verified.\n" % type_text_arg)
        f.write(dump_character_table(table))
    print("  wrote %s (%.1fs total)" % (path, time.time() - t0))
    return table


if __name__ == "__main__":
    for arg in sys.argv[1:]:
        generate(arg)
