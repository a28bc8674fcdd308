"""Class fusion from Levi reflection subgroups and character transfer.

The fusion map identifies each W_L-class, given by a translated
representative word, with the ambient class whose invariant key matches;
key collisions are resolved by an exact conjugacy backtrack.  Induction
and restriction multiplicities are exact big-integer inner products; any
non-exact division aborts.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .chartab import CharacterTable, product_table
from .errors import DataInconsistencyError, EngineError
from .permgrp import (GroupContext, conjugating_element, element_of_word,
                      invariant_key)
from .rootsys import LeviClass, classify_subset


@dataclass(frozen=True)
class LeviEmbedding:
    """A Levi reflection subgroup W_L inside W with its product table."""

    ambient: GroupContext
    levi: LeviClass | None           # None when built from a raw subset
    positions: tuple[int, ...]       # ambient simple positions, subset order
    gen_map: tuple[int, ...]         # W_L generator position -> ambient position
    factor_maps: tuple[tuple[int, ...], ...]   # ambient positions per factor
    table: CharacterTable            # product of the factor tables
    index: int                       # [W : W_L]

    def translate_word(self, word):
        return tuple(self.gen_map[i] for i in word)

    def ambient_element(self, word):
        return element_of_word(self.ambient, self.translate_word(word))


def embed_subset(ctx: GroupContext, positions, factor_tables,
                 levi: LeviClass | None = None) -> LeviEmbedding:
    """Embed the standard parabolic on a set of simple-root positions.

    ``factor_tables`` must list one table per canonical component of the
    subsystem type, in canonical order; a type mismatch is an error.
    """
    positions = tuple(sorted(positions))
    t, maps = classify_subset(ctx.rs, positions)
    factor_tables = list(factor_tables)
    comps = t.components
    if len(factor_tables) != len(comps):
        raise EngineError("expected %d factor tables, got %d"
                          % (len(comps), len(factor_tables)))
    for (fam, rank), ft in zip(comps, factor_tables):
        if ft.cartan_type.components != ((fam, rank),):
            raise EngineError(
                "factor table of type %s does not match subsystem component %s%d"
                % (ft.cartan_type, fam, rank))
    table = product_table(factor_tables)
    gen_map = tuple(pos for comp_map in maps for pos in comp_map)
    if table.order == 0 or ctx.order % table.order:
        raise DataInconsistencyError(
            "|W_L| = %d does not divide |W| = %d" % (table.order, ctx.order))
    return LeviEmbedding(ambient=ctx, levi=levi, positions=positions,
                         gen_map=gen_map, factor_maps=maps, table=table,
                         index=ctx.order // table.order)


def embed_levi(ctx: GroupContext, levi: LeviClass, factor_tables) -> LeviEmbedding:
    """Embed a Levi class via its canonical representative subset."""
    simple = ctx.rs.simple_root_indices
    pos = {idx: i for i, idx in enumerate(simple)}
    return embed_subset(ctx, [pos[i] for i in levi.subset], factor_tables,
                        levi=levi)


@dataclass(frozen=True)
class FusionMap:
    """Per W_L-class index, the ambient class index containing it."""

    embedding: LeviEmbedding
    ambient_table: CharacterTable
    classes: tuple[int, ...]

    def __getitem__(self, i):
        return self.classes[i]


def ambient_class_keys(t_G: CharacterTable, ctx: GroupContext):
    """Invariant keys of the ambient class representatives, by key.

    Cached on the table object (key -> class indices, plus the list of
    representative elements).
    """
    cached = t_G.__dict__.get("_class_keys")
    if cached is None:
        keys = {}
        reps = []
        for i, c in enumerate(t_G.classes):
            g = element_of_word(ctx, c.rep_word)
            reps.append(g)
            keys.setdefault(invariant_key(ctx, g), []).append(i)
        cached = (keys, reps)
        object.__setattr__(t_G, "_class_keys", cached)
    return cached


def class_fusion(emb: LeviEmbedding, t_G: CharacterTable) -> FusionMap:
    """Fuse every W_L-class into its ambient class.

    Raises DataInconsistencyError when no ambient class matches (corrupt
    data) and propagates BudgetExceededError from the conjugacy
    backtrack.
    """
    ctx = emb.ambient
    keys, reps = ambient_class_keys(t_G, ctx)
    out = []
    for c in emb.table.classes:
        g = emb.ambient_element(c.rep_word)
        key = invariant_key(ctx, g)
        cands = keys.get(key)
        if not cands:
            raise DataInconsistencyError(
                "no ambient class matches Levi class %s (type %s)"
                % (c.name, emb.table.cartan_type))
        if len(cands) == 1:
            out.append(cands[0])
            continue
        for i in cands:
            if conjugating_element(ctx, g, reps[i]) is not None:
                out.append(i)
                break
        else:
            raise DataInconsistencyError(
                "invariant-key candidates all fail conjugacy for Levi class %s"
                % c.name)
    fus = FusionMap(embedding=emb, ambient_table=t_G, classes=tuple(out))
    _validate_fusion(fus)
    return fus


def _validate_fusion(fus: FusionMap):
    emb = fus.embedding
    t_L, t_G = emb.table, fus.ambient_table
    if fus.classes[t_L.identity_index] != t_G.identity_index:
        raise DataInconsistencyError("fusion does not preserve the identity")
    per_ambient = {}
    total = 0
    for i, c in enumerate(t_L.classes):
        j = fus.classes[i]
        if c.element_order != t_G.classes[j].element_order:
            raise DataInconsistencyError(
                "fusion changes element order for class %s" % c.name)
        per_ambient[j] = per_ambient.get(j, 0) + c.size
        total += c.size
    if total != t_L.order:
        raise DataInconsistencyError("Levi class sizes do not sum to |W_L|")
    for j, s in per_ambient.items():
        if s > t_G.classes[j].size:
            raise DataInconsistencyError(
                "fused mass exceeds ambient class size for %s"
                % t_G.classes[j].name)


def restrict_character(emb: LeviEmbedding, fus: FusionMap, psi: int,
                       t_G: CharacterTable):
    """Values of the restricted ambient irrep on the W_L classes."""
    row = t_G.values(psi)
    return tuple(row[fus[i]] for i in range(len(emb.table.classes)))


def induce_decomposition(emb: LeviEmbedding, fus: FusionMap, chi: int,
                         t_G: CharacterTable):
    """Multiplicity vector of Ind_{W_L}^W(chi) over the ambient irreps."""
    mults = tuple(
        induced_multiplicity(emb, fus, chi, t_G, psi)
        for psi in range(len(t_G.irreps)))
    total = sum(m * t_G.irreps[p][0].dim for p, m in enumerate(mults))
    want = emb.index * emb.table.irreps[chi][0].dim
    if total != want:
        raise DataInconsistencyError(
            "dimension bookkeeping fails: induced dimension %d != %d"
            % (total, want))
    return mults


def induced_multiplicity(emb: LeviEmbedding, fus: FusionMap, chi: int,
                         t_G: CharacterTable, psi: int) -> int:
    """Single multiplicity <Ind chi, psi> by exact inner product."""
    t_L = emb.table
    chirow = t_L.values(chi)
    psirow = t_G.values(psi)
    acc = 0
    for i, c in enumerate(t_L.classes):
        acc += c.size * chirow[i] * psirow[fus[i]]
    if acc % t_L.order:
        raise DataInconsistencyError(
            "non-integer multiplicity for %s in Ind(%s)"
            % (t_G.irreps[psi][0].text, t_L.irreps[chi][0].text))
    m = acc // t_L.order
    if m < 0:
        raise DataInconsistencyError(
            "negative multiplicity for %s" % t_G.irreps[psi][0].text)
    return m
