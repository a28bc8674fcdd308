import itertools
import random

import pytest

from weylstrata.errors import BudgetExceededError, EngineError
from weylstrata.permgrp import (are_conjugate, build_group, compose,
                                conjugating_element, element_of_word,
                                invariant_key, inverse, perm_order,
                                subset_conjugator, word_of_element)
from weylstrata.rootsys import build_root_system


def ctx_for(text):
    return build_group(build_root_system(text))


ORDERS = {"A2": 6, "A1+A1": 4, "A3": 24, "B3": 48, "D4": 192, "G2": 12,
          "F4": 1152, "E6": 51840}


@pytest.mark.parametrize("text,order", sorted(ORDERS.items()))
def test_group_orders(text, order):
    assert ctx_for(text).order == order


def test_generators_are_involutions_fixing_root_set():
    ctx = ctx_for("D4")
    for g in ctx.generators:
        assert perm_order(g.perm) == 2
        assert sorted(g.perm) == list(range(len(ctx.rs.roots)))


def test_element_of_word():
    ctx = ctx_for("A2")
    assert element_of_word(ctx, []).is_identity
    s = element_of_word(ctx, [0])
    ct = dict(invariant_key(ctx, s).root_cycle_type)
    assert ct == {1: 2, 2: 2}
    assert element_of_word(ctx, [0, 1]).order == 3
    with pytest.raises(EngineError):
        element_of_word(ctx, [5])


def test_matrix_agrees_with_perm():
    ctx = ctx_for("D4")
    rng = random.Random(0)
    for _ in range(10):
        g = ctx.random_element(rng)
        for idx, r in enumerate(ctx.rs.roots):
            img = tuple(sum(g.matrix[i][j] * r[j] for j in range(ctx.rank))
                        for i in range(ctx.rank))
            assert ctx.rs.index_of[img] == g.perm[idx]


def test_invariant_key_examples():
    ctx = ctx_for("A2")
    e = ctx.identity()
    k = invariant_key(ctx, e)
    assert k.order == 1 and dict(k.root_cycle_type) == {1: 6}
    assert k.charpolys[0][1] == (1, -2, 1)  # (x-1)^2
    s = element_of_word(ctx, [0])
    ks = invariant_key(ctx, s)
    assert ks.charpolys[0][1] == (-1, 0, 1)  # (x+1)(x-1)
    cox = element_of_word(ctx, [0, 1])
    assert invariant_key(ctx, cox).charpolys[0][1] == (1, 1, 1)


def test_invariant_key_constant_on_classes():
    for text in ("A3", "D4", "B3"):
        ctx = ctx_for(text)
        rng = random.Random(1)
        for _ in range(100):
            g = ctx.random_element(rng)
            w = ctx.random_element(rng)
            conj = w * g * w.inv()
            assert invariant_key(ctx, g) == invariant_key(ctx, conj)


def test_are_conjugate_basic():
    ctx = ctx_for("A2")
    s0, s1 = element_of_word(ctx, [0]), element_of_word(ctx, [1])
    ok, w = are_conjugate(ctx, s0, s0)
    assert ok and w.is_identity
    ok, w = are_conjugate(ctx, s0, s1)
    assert ok and (w * s0 * w.inv()).perm == s1.perm
    ctx2 = ctx_for("A1+A1")
    a, b = element_of_word(ctx2, [0]), element_of_word(ctx2, [1])
    assert are_conjugate(ctx2, a, b) == (False, None)


def brute_force_conjugate(ctx, a, b):
    frontier = [ctx.identity()]
    seen = {frontier[0].perm}
    while frontier:
        nxt = []
        for w in frontier:
            if (w * a * w.inv()).perm == b.perm:
                return True
            for g in ctx.generators:
                c = w * g
                if c.perm not in seen:
                    seen.add(c.perm)
                    nxt.append(c)
        frontier = nxt
    return False


@pytest.mark.parametrize("text", ["A3", "B3", "A1+A1", "D4"])
def test_are_conjugate_matches_brute_force(text):
    ctx = ctx_for(text)
    rng = random.Random(2)
    for _ in range(25):
        a = ctx.random_element(rng)
        b = ctx.random_element(rng)
        ok, w = are_conjugate(ctx, a, b)
        assert ok == brute_force_conjugate(ctx, a, b)
        if ok:
            assert (w * a * w.inv()).perm == b.perm


def test_conjugacy_witness_validates_on_e6():
    ctx = ctx_for("E6")
    rng = random.Random(3)
    for _ in range(10):
        g = ctx.random_element(rng)
        w0 = ctx.random_element(rng)
        conj = w0 * g * w0.inv()
        ok, w = are_conjugate(ctx, g, conj)
        assert ok and (w * g * w.inv()).perm == conj.perm


def test_budget_exceeded_is_distinguishable():
    ctx = ctx_for("E6")
    rng = random.Random(4)
    g = ctx.random_element(rng)
    conj = ctx.random_element(rng) * g * ctx.random_element(rng).inv()
    # budget of 0 nodes must abort rather than answer
    with pytest.raises(BudgetExceededError):
        conjugating_element(ctx, g, g, budget=0)


def test_subset_conjugator():
    ctx = ctx_for("A2")
    si = ctx.rs.simple_root_indices
    assert subset_conjugator(ctx, {si[0]}, {si[0]}).is_identity
    w = subset_conjugator(ctx, {si[0]}, {si[1]})
    assert w is not None
    ctx2 = ctx_for("A1+A1")
    si2 = ctx2.rs.simple_root_indices
    assert subset_conjugator(ctx2, {si2[0]}, {si2[1]}) is None


def test_word_roundtrip():
    ctx = ctx_for("B3")
    for word in itertools.product(range(3), repeat=4):
        g = element_of_word(ctx, word)
        back = word_of_element(ctx, g)
        assert element_of_word(ctx, back).perm == g.perm
        assert len(back) <= len(word)


def test_uniform_random_sampling_hits_whole_group():
    ctx = ctx_for("A2")
    rng = random.Random(5)
    seen = {ctx.random_element(rng).perm for _ in range(200)}
    assert len(seen) == 6
