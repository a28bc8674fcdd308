"""Full invariant suite behind the `selftest` CLI verb.

Each check prints one pass/fail line; the runner returns False as soon
as any check fails (after finishing the list).
"""

from __future__ import annotations

import random

from .chartab import lookup_irrep, symmetric_table, validate_table
from .errors import EngineError
from .fusion import class_fusion, embed_levi, induce_decomposition, restrict_character
from .jind import certify_b_invariants, check_transitivity, fake_degree, poly_mul
from .rootsys import CartanType, build_root_system, degrees, levi_representatives
from .strata import rigid_strata, strata_labels
from .tables import factor_tables, get_context, get_table, simple_table

BUNDLED_TYPES = ("A1", "A2", "A3", "A4", "A5",
                 "D4", "D5", "D6", "D7", "G2", "E6", "E7", "E8")


class Runner:
    def __init__(self, out=print):
        self.out = out
        self.ok = True

    def check(self, name, fn):
        try:
            result = fn()
            passed = result is None or bool(result)
            detail = ""
        except EngineError as e:
            passed = False
            detail = " (%s)" % e
        self.out("%s %s%s" % ("PASS" if passed else "FAIL", name, detail))
        self.ok = self.ok and passed
        return passed


def _table_suite(runner, data_dir):
    for text in BUNDLED_TYPES:
        t = CartanType.parse(text)
        fam, rank = t.components[0]

        def load(fam=fam, rank=rank, text=text):
            table = simple_table(fam, rank, data_dir)
            ctx = get_context(text)
            report = validate_table(table, ctx)
            if report.failures:
                raise EngineError("; ".join(report.failures[:3]))
            return True

        runner.check("table %s: orthogonality, class sizes, orders" % text, load)


def _mass_identity(runner, data_dir):
    for text in ("A1", "A2", "A3", "A4", "A5", "D4", "E6"):
        def run(text=text):
            ctx = get_context(text)
            rs = ctx.rs
            t = get_table(CartanType.parse(text), data_dir)
            n = sum(d - 1 for d in degrees(rs))
            mass = [0] * (n + 1)
            for i, (lab, _) in enumerate(t.irreps):
                fd = fake_degree(t, rs, ctx, i)
                for j, c in enumerate(fd.coeffs):
                    mass[j] += c * lab.dim
            want = [1]
            for d in degrees(rs):
                want = poly_mul(want, [1] * d)
            want = want + [0] * (len(mass) - len(want))
            return mass == want

        runner.check("fake-degree mass identity for %s" % text, run)


def _b_certification(runner, data_dir, deep):
    for text in ("E6", "E7"):
        def run(text=text):
            ctx = get_context(text)
            certify_b_invariants(get_table(CartanType.parse(text), data_dir),
                                 ctx.rs, ctx)
            return True

        runner.check("label b = computed b for all irreps of %s" % text, run)

    def run_e8():
        ctx = get_context("E8")
        sample = None if deep else 25
        certify_b_invariants(get_table(CartanType.parse("E8"), data_dir),
                             ctx.rs, ctx, sample=sample)
        return True

    runner.check("label b = computed b for %s irreps of E8"
                 % ("all 112" if deep else ">= 25 sampled"), run_e8)


def _transitivity(runner, data_dir):
    from .fusion import embed_subset
    from .rootsys import classify_subset

    rng = random.Random(7)
    triples = []
    for ambient, want in (("A5", 6), ("D5", 7), ("E6", 7)):
        rank = get_context(ambient).rank
        while sum(1 for t in triples if t[0] == ambient) < want:
            m = tuple(sorted(rng.sample(range(rank), rng.randint(2, rank - 1))))
            l_in_m = tuple(sorted(rng.sample(range(len(m)),
                                             rng.randint(1, len(m) - 1))))
            triples.append((ambient, m, l_in_m))
    for ambient, m, l_in_m in triples[:20]:
        def run(ambient=ambient, m=m, l_in_m=l_in_m):
            # random irrep of the sub-Levi, named in standard M coordinates
            m_type, _ = classify_subset(get_context(ambient).rs, m)
            ctx_m = get_context(m_type.text)
            lt, _ = classify_subset(ctx_m.rs, l_in_m)
            emb = embed_subset(ctx_m, l_in_m, factor_tables(lt, data_dir))
            label = emb.table.irreps[rng.randrange(len(emb.table.irreps))][0]
            return check_transitivity(ambient, m, l_in_m, label.text, data_dir)

        runner.check("j-transitivity %s: M=%s, L@%s"
                     % (ambient, list(m), list(l_in_m)), run)


def _frobenius_e6(runner, data_dir):
    def run():
        ctx = get_context("E6")
        t_g = get_table(CartanType.parse("E6"), data_dir)
        for levi in levi_representatives(ctx.rs):
            if levi.cartan_type.rank == ctx.rank:
                continue
            emb = embed_levi(ctx, levi, factor_tables(levi.cartan_type, data_dir))
            fus = class_fusion(emb, t_g)
            k_l = len(emb.table.irreps)
            k_g = len(t_g.irreps)
            for chi in range(k_l):
                mults = induce_decomposition(emb, fus, chi, t_g)
                # dimension bookkeeping is asserted inside; check Frobenius
                chirow = emb.table.values(chi)
                for psi in range(k_g):
                    rest = restrict_character(emb, fus, psi, t_g)
                    inner = sum(c.size * a * b for c, a, b in
                                zip(emb.table.classes, rest, chirow))
                    if inner % emb.table.order or mults[psi] != inner // emb.table.order:
                        raise EngineError(
                            "Frobenius reciprocity fails for Levi %s" % levi.name)
        return True

    runner.check("Frobenius reciprocity + dimension bookkeeping on every "
                 "Levi of E6", run)


def _degenerate(runner, data_dir):
    runner.check("torus ambient type has the single rigid label 1_0",
                 lambda: rigid_strata(CartanType.parse("T"), data_dir) == ["1_0"])

    def full_levi_identity():
        ctx = get_context("A2")
        t_g = get_table(CartanType.parse("A2"), data_dir)
        levi = [lc for lc in levi_representatives(ctx.rs)
                if lc.cartan_type.rank == 2][0]
        emb = embed_levi(ctx, levi, factor_tables(levi.cartan_type, data_dir))
        fus = class_fusion(emb, t_g)
        from .jind import j_induce
        return all(j_induce(emb, fus, t_g, i).text == lab.text
                   for i, (lab, _) in enumerate(t_g.irreps))

    runner.check("jind with levi = full group is the identity on labels",
                 full_levi_identity)

    def sign_rigid():
        for text in ("A2", "A3", "A4", "A5", "D4", "E6"):
            t = CartanType.parse(text)
            ctx = get_context(text)
            n = ctx.rs.n_positive
            sign = [lab.text for lab, _ in get_table(t, data_dir).irreps
                    if lab.dim == 1 and lab.b == n]
            if len(sign) != 1 or sign[0] not in rigid_strata(t, data_dir):
                return False
        return True

    runner.check("sign label is rigid for every sampled supported type",
                 sign_rigid)


def run_selftest(data_dir=None, deep=False, out=print) -> bool:
    runner = Runner(out=out)
    _table_suite(runner, data_dir)
    _mass_identity(runner, data_dir)
    _b_certification(runner, data_dir, deep)
    _transitivity(runner, data_dir)
    _frobenius_e6(runner, data_dir)
    _degenerate(runner, data_dir)
    out("selftest %s" % ("PASSED" if runner.ok else "FAILED"))
    return runner.ok
