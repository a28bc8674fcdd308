"""Fake degrees, b-invariants, and truncated induction.

The fake degree of an irreducible character is computed exactly: the
graded character of the coinvariant algebra is a quotient of integer
polynomials, and every characteristic polynomial of a group element
divides the product of (q^{d_i} - 1) over the degrees, so only exact
integer polynomial division is needed (no power series).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .chartab import CharacterTable, label_sort_key
from .errors import DataInconsistencyError, EngineError
from .fusion import (FusionMap, LeviEmbedding, class_fusion, embed_subset,
                     induced_multiplicity)
from .permgrp import GroupContext, charpoly, element_of_word
from .rootsys import RootSystem, degrees


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def poly_divmod_exact(num, den):
    """Exact division of integer polynomials (den monic); remainder must vanish."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - dn] = c
        for j, y in enumerate(den):
            num[i - dn + j] -= c * y
    if any(num):
        raise DataInconsistencyError("non-exact polynomial division")
    return out


@dataclass(frozen=True)
class FakeDegree:
    """Graded multiplicity polynomial of an irrep in the coinvariant algebra."""

    coeffs: tuple[int, ...]

    @property
    def b(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise DataInconsistencyError("fake degree is zero")

    @property
    def degree(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return 0

    def at_one(self) -> int:
        return sum(self.coeffs)


def _class_quotients(t: CharacterTable, rs: RootSystem, ctx: GroupContext):
    """Per class C, det(w_C) * prod_i(q^{d_i}-1) / det(qI - M_C).

    Rewriting the graded coinvariant character in terms of det(qI - w)
    instead of det(1 - qw) costs exactly a factor det(w) per class
    (eigenvalue sets of Weyl group elements are closed under inversion).
    The result is cached on the table object.
    """
    cached = t.__dict__.get("_class_quotients")
    if cached is None:
        prod = [1]
        for d in degrees(rs):
            factor = [0] * (d + 1)
            factor[0], factor[d] = -1, 1
            prod = poly_mul(prod, factor)
        n = rs.rank
        cached = []
        for c in t.classes:
            m = element_of_word(ctx, c.rep_word).matrix
            p = list(charpoly(m))
            det = (-1) ** n * p[0] if n else 1
            cached.append([det * x for x in poly_divmod_exact(prod, p)])
        object.__setattr__(t, "_class_quotients", cached)
    return cached


def fake_degree(t: CharacterTable, rs: RootSystem, ctx: GroupContext,
                chi: int) -> FakeDegree:
    """R_chi(q), exactly.

    R_chi(q) = (1/|W|) sum over classes of |C| chi(C) prod_i(q^{d_i}-1)
    / det(qI - M_C); the per-class quotient is an exact integer
    polynomial because eigenvalue multiplicities of Weyl group elements
    are bounded by the degree counts.
    """
    quots = _class_quotients(t, rs, ctx)
    n = max(len(q) for q in quots)
    acc = [0] * n
    row = t.values(chi)
    for i, c in enumerate(t.classes):
        w = c.size * row[i]
        if w:
            q = quots[i]
            for j, y in enumerate(q):
                if y:
                    acc[j] += w * y
    order = t.order
    coeffs = []
    for x in acc:
        if x % order:
            raise DataInconsistencyError(
                "fake degree of %s is not a polynomial over Z"
                % t.irreps[chi][0].text)
        coeffs.append(x // order)
    fd = FakeDegree(tuple(coeffs))
    label = t.irreps[chi][0]
    if fd.at_one() != label.dim or any(c < 0 for c in coeffs):
        raise DataInconsistencyError(
            "fake degree of %s is inconsistent with its dimension" % label.text)
    if fd.degree > rs.n_positive:
        raise DataInconsistencyError(
            "fake degree of %s exceeds the number of positive roots" % label.text)
    return fd


def b_invariant(t: CharacterTable, chi: int, rs: RootSystem = None,
                ctx: GroupContext = None, certify: bool = False) -> int:
    """The b from the label; with certify=True it must match the fake degree."""
    label = t.irreps[chi][0]
    if certify:
        fd = fake_degree(t, rs, ctx, chi)
        if fd.b != label.b:
            raise DataInconsistencyError(
                "irrep %s: label b=%d but fake degree starts at %d"
                % (label.text, label.b, fd.b))
    return label.b


def certify_b_invariants(t: CharacterTable, rs: RootSystem, ctx: GroupContext,
                         sample: int | None = None, seed: int = 0):
    """Check label b against computed fake degrees; hard failure on mismatch.

    ``sample=None`` certifies every irrep; an integer certifies at least
    that many, chosen deterministically from ``seed``.  Results are
    cached on the table object.
    """
    done = t.__dict__.setdefault("_b_certified", set())
    if None in done or sample in done:
        return
    indices = range(len(t.irreps))
    if sample is not None and sample < len(t.irreps):
        rng = random.Random(seed)
        indices = sorted(rng.sample(range(len(t.irreps)), sample))
    for chi in indices:
        b_invariant(t, chi, rs, ctx, certify=True)
    done.add(sample)


def j_induce(emb: LeviEmbedding, fus: FusionMap, t_G: CharacterTable,
             chi: int):
    """Truncated induction: the unique constituent of Ind(chi) with b(psi)=b(chi).

    Hard failure when the candidate is missing, non-unique, or has
    multiplicity different from 1 (the theory guarantees uniqueness, so
    any violation signals corrupted data).
    """
    b = emb.table.irreps[chi][0].b
    hits = []
    for psi, (label, _) in enumerate(t_G.irreps):
        if label.b != b:
            continue
        m = induced_multiplicity(emb, fus, chi, t_G, psi)
        if m:
            hits.append((psi, m))
    if len(hits) != 1 or hits[0][1] != 1:
        raise DataInconsistencyError(
            "truncated induction of %s from %s is not a unique multiplicity-one "
            "constituent: %s"
            % (emb.table.irreps[chi][0].text, emb.table.cartan_type,
               [(t_G.irreps[p][0].text, m) for p, m in hits]))
    return t_G.irreps[hits[0][0]][0]


def j_induce_label(emb: LeviEmbedding, fus: FusionMap, t_G: CharacterTable,
                   label) -> object:
    """j-induction by label instead of row index."""
    from .chartab import lookup_irrep

    return j_induce(emb, fus, t_G, lookup_irrep(emb.table, label))


def _translate_label(label, from_emb, to_emb, from_amb_maps, to_amb_maps):
    """Rewrite a product label between two embeddings of the same subset.

    Equal-type factors can come out in different canonical orders, so
    factors are matched by their ambient position sets.
    """
    from .chartab import IrrepLabel, ProductLabel

    parts = label.parts
    out = [None] * len(parts)
    to_sets = [frozenset(m) for m in to_amb_maps]
    for k, m in enumerate(from_amb_maps):
        j = to_sets.index(frozenset(m))
        out[j] = parts[k]
    if len(out) == 1:
        return out[0]
    return ProductLabel(tuple(out))


def check_transitivity(ambient_type, m_positions, l_positions_in_m,
                       chi_label_text: str, data_dir=None) -> bool:
    """Whether j-induction L -> G agrees with the route L -> M -> G.

    ``m_positions`` are ambient simple positions of the intermediate
    Levi; ``l_positions_in_m`` select a sub-Levi in the standard
    numbering of M's subsystem type; ``chi_label_text`` names an irrep
    of W_L in the standard copy of M.
    """
    from .chartab import lookup_irrep
    from .fusion import class_fusion, embed_subset
    from .rootsys import classify_subset
    from .tables import factor_tables, get_context, get_table

    ctx = get_context(ambient_type if isinstance(ambient_type, str)
                      else ambient_type.text)
    t_G = get_table(ctx.rs.cartan_type, data_dir)
    m_type, m_maps = classify_subset(ctx.rs, m_positions)
    gen_map_m = [p for comp in m_maps for p in comp]

    # route 1: L directly inside G
    l_ambient = sorted(gen_map_m[p] for p in l_positions_in_m)
    emb_l = embed_subset(ctx, l_ambient,
                         factor_tables(classify_subset(ctx.rs, l_ambient)[0],
                                       data_dir))
    # route 2: L inside the standard copy of M, then M inside G
    ctx_m = get_context(m_type.text)
    t_M = get_table(m_type, data_dir)
    l_in_m = sorted(l_positions_in_m)
    emb_lm = embed_subset(ctx_m, l_in_m,
                          factor_tables(classify_subset(ctx_m.rs, l_in_m)[0],
                                        data_dir))
    fus_lm = class_fusion(emb_lm, t_M)
    chi_lm = lookup_irrep(emb_lm.table, chi_label_text)
    mid = j_induce(emb_lm, fus_lm, t_M, chi_lm)

    emb_m = embed_subset(ctx, sorted(m_positions),
                         factor_tables(m_type, data_dir))
    fus_m = class_fusion(emb_m, t_G)
    via = j_induce_label(emb_m, fus_m, t_G, mid.text)

    # match the two L-embeddings factorwise through ambient positions
    from_amb = [tuple(gen_map_m[p] for p in comp) for comp in emb_lm.factor_maps]
    chi_direct_label = _translate_label(
        emb_lm.table.irreps[chi_lm][0], emb_lm, emb_l, from_amb,
        emb_l.factor_maps)
    fus_l = class_fusion(emb_l, t_G)
    direct = j_induce_label(emb_l, fus_l, t_G, chi_direct_label.text)
    return direct.text == via.text
