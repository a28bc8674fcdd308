"""Character tables of Weyl groups.

Tables for D/E types ship as bundled `WCT 1` data files and are trusted
only after validation; type-A tables are computed from scratch with the
Murnaghan-Nakayama rule and double as a cross-check oracle for the
bundled files.  All values are exact integers.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DataInconsistencyError, EngineError, TableFormatError,
                     UnknownLabelError)
from .permgrp import GroupContext, element_of_word, invariant_key, perm_order
from .rootsys import CartanType


# ---------------------------------------------------------------------------
# Labels


MARKS = ("", "'", "''", "'''", "''''")


@dataclass(frozen=True)
class IrrepLabel:
    """Label ``dim_b`` with an optional prime mark, e.g. ``15_16`` or ``3_2''``.

    Exceptional-type tables need at most double primes; D-type tables
    can have up to four irreps sharing (dim, b) (split pairs), so longer
    marks are allowed there.
    """

    dim: int
    b: int
    mark: str = ""

    def __post_init__(self):
        if self.dim <= 0 or self.b < 0 or self.mark not in MARKS:
            raise EngineError("malformed irrep label %r_%r%s"
                              % (self.dim, self.b, self.mark))

    @property
    def text(self) -> str:
        return "%d_%d%s" % (self.dim, self.b, self.mark)

    @property
    def parts(self):
        return (self,)

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class ProductLabel:
    """Tensor label of a product table; factor labels joined with U+2297."""

    factors: tuple[IrrepLabel, ...]

    @property
    def dim(self) -> int:
        return math.prod(f.dim for f in self.factors)

    @property
    def b(self) -> int:
        return sum(f.b for f in self.factors)

    @property
    def text(self) -> str:
        return "⊗".join(f.text for f in self.factors)

    @property
    def parts(self):
        return self.factors

    def __str__(self):
        return self.text


def parse_label(text: str):
    """Parse ``dim_b``, ``dim_b'``, ``dim_b''`` or a U+2297-joined product."""
    text = text.strip()
    if "⊗" in text:
        return ProductLabel(tuple(parse_label(p) for p in text.split("⊗")))
    mark = ""
    body = text
    while body.endswith("'"):
        mark += "'"
        body = body[:-1]
    if mark not in MARKS or "_" not in body:
        raise UnknownLabelError(text)
    d, _, b = body.partition("_")
    if not (d.isdigit() and b.isdigit()):
        raise UnknownLabelError(text)
    return IrrepLabel(int(d), int(b), mark)


def label_sort_key(label):
    """Paper listing order: b descending, dim ascending, mark last."""
    return (-label.b, label.dim, label.text)


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class ClassRecord:
    name: str
    size: int
    rep_word: tuple[int, ...]
    element_order: int


@dataclass(frozen=True)
class CharacterTable:
    cartan_type: CartanType
    classes: tuple[ClassRecord, ...]
    irreps: tuple[tuple[object, tuple[int, ...]], ...]

    @property
    def order(self) -> int:
        return sum(c.size for c in self.classes)

    @property
    def identity_index(self) -> int:
        for i, c in enumerate(self.classes):
            if c.element_order == 1:
                return i
        raise DataInconsistencyError("table has no identity class")

    @functools.cached_property
    def _label_index(self):
        return {lab.text: i for i, (lab, _) in enumerate(self.irreps)}

    def labels(self):
        return [lab for lab, _ in self.irreps]

    def values(self, idx: int) -> tuple[int, ...]:
        return self.irreps[idx][1]


def lookup_irrep(t: CharacterTable, label) -> int:
    """Row index of an irrep label (object or text); exact match only."""
    text = label if isinstance(label, str) else label.text
    idx = t._label_index.get(text)
    if idx is None:
        want = parse_label(text) if isinstance(label, str) else label
        near = sorted(
            (lab.text for lab, _ in t.irreps
             if lab.dim == want.dim or lab.b == want.b),
            key=lambda s: s)[:6]
        raise UnknownLabelError(text, near)
    return idx


# ---------------------------------------------------------------------------
# WCT 1 file format


def load_character_table(content: str) -> CharacterTable:
    """Parse a `WCT 1` file.  Structural checks only; not yet validated."""
    lines = content.splitlines()
    header = {}
    classes = []
    rows = []
    stage = 0
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if stage == 0:
            if tok != ["WCT", "1"]:
                raise TableFormatError("expected 'WCT 1' header", lineno)
            stage = 1
            continue
        if stage == 1:
            if tok[0] in ("TYPE", "ORDER", "CLASSES") and len(tok) == 2:
                header[tok[0]] = tok[1]
                if len(header) == 3:
                    stage = 2
                continue
            raise TableFormatError("bad header line %r" % raw, lineno)
        if tok[0] == "C":
            if len(tok) < 4:
                raise TableFormatError("class line needs name, size, order", lineno)
            try:
                word = tuple(int(x) - 1 for x in tok[4:])
                classes.append(ClassRecord(name=tok[1], size=int(tok[2]),
                                           rep_word=word,
                                           element_order=int(tok[3])))
            except ValueError:
                raise TableFormatError("non-integer field in class line", lineno)
        elif tok[0] == "I":
            if len(tok) < 2:
                raise TableFormatError("irrep line needs a label", lineno)
            try:
                label = parse_label(tok[1])
                values = tuple(int(x) for x in tok[2:])
            except (ValueError, EngineError):
                raise TableFormatError("bad irrep line %r" % raw, lineno)
            rows.append((label, values, lineno))
        else:
            raise TableFormatError("unknown record %r" % tok[0], lineno)
    if stage != 2:
        raise TableFormatError("incomplete header")
    k = int(header["CLASSES"])
    if len(classes) != k:
        raise TableFormatError("expected %d class lines, found %d"
                               % (k, len(classes)))
    if len(rows) != k:
        raise TableFormatError("table not square: %d classes, %d irreps"
                               % (k, len(rows)))
    seen = set()
    for label, values, lineno in rows:
        if label.text in seen:
            raise TableFormatError("duplicate label %s" % label.text, lineno)
        seen.add(label.text)
        if len(values) != k:
            raise TableFormatError("irrep %s has %d values, expected %d"
                                   % (label.text, len(values), k), lineno)
    t = CharacterTable(cartan_type=CartanType.parse(header["TYPE"]),
                       classes=tuple(classes),
                       irreps=tuple((lab, vals) for lab, vals, _ in rows))
    if t.order != int(header["ORDER"]):
        raise TableFormatError("class sizes sum to %d, header says %s"
                               % (t.order, header["ORDER"]))
    return t


def dump_character_table(t: CharacterTable) -> str:
    out = ["WCT 1",
           "TYPE %s" % t.cartan_type.text,
           "ORDER %d" % t.order,
           "CLASSES %d" % len(t.classes)]
    for c in t.classes:
        word = " ".join(str(i + 1) for i in c.rep_word)
        out.append(("C %s %d %d %s" % (c.name, c.size, c.element_order, word)).rstrip())
    for label, values in t.irreps:
        out.append("I %s %s" % (label.text, " ".join(map(str, values))))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    failures: list[str]
    warnings: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_table(t: CharacterTable, ctx: GroupContext) -> ValidationReport:
    """Check every table invariant against the permutation group.

    Returns a report; an empty failure list means the table is trusted.
    Classes whose representatives share an invariant key are reported as
    warnings so fusion knows where conjugacy tests may be needed.
    """
    fail = []
    warn = []
    k = len(t.classes)
    if len(t.irreps) != k:
        fail.append("table not square")
    if t.order != ctx.order:
        fail.append("class sizes sum to %d but |W| = %d" % (t.order, ctx.order))
    idents = [i for i, c in enumerate(t.classes) if c.element_order == 1]
    if len(idents) != 1 or t.classes[idents[0]].size != 1:
        fail.append("identity class missing or malformed")
    reps = []
    for i, c in enumerate(t.classes):
        try:
            g = element_of_word(ctx, c.rep_word)
        except EngineError as e:
            fail.append("class %s: bad word (%s)" % (c.name, e))
            reps.append(None)
            continue
        reps.append(g)
        if perm_order(g.perm) != c.element_order:
            fail.append("class %s: representative has order %d, stated %d"
                        % (c.name, perm_order(g.perm), c.element_order))
    if idents:
        iid = idents[0]
        for label, values in t.irreps:
            if values[iid] != label.dim:
                fail.append("irrep %s: identity value %d != dim"
                            % (label.text, values[iid]))
    if sum(lab.dim ** 2 for lab, _ in t.irreps) != ctx.order:
        fail.append("sum of squared dimensions != |W|")
    sizes = [c.size for c in t.classes]
    for i, (li, vi) in enumerate(t.irreps):
        for j in range(i, k):
            lj, vj = t.irreps[j]
            s = sum(sz * a * b for sz, a, b in zip(sizes, vi, vj))
            want = ctx.order if i == j else 0
            if s != want:
                fail.append("row orthogonality fails for %s, %s (got %d)"
                            % (li.text, lj.text, s))
    # column orthogonality: sum over irreps of x(C)x(C') = |W|/|C| delta
    for a in range(k):
        for b in range(a, k):
            s = sum(row[a] * row[b] for _, row in t.irreps)
            want = ctx.order // sizes[a] if a == b else 0
            if a == b and ctx.order % sizes[a]:
                fail.append("class %s: size does not divide |W|"
                            % t.classes[a].name)
                continue
            if s != want:
                fail.append("column orthogonality fails for %s, %s"
                            % (t.classes[a].name, t.classes[b].name))
    if all(r is not None for r in reps):
        keys = {}
        for c, g in zip(t.classes, reps):
            keys.setdefault(invariant_key(ctx, g), []).append(c.name)
        for key, names in keys.items():
            if len(names) > 1:
                warn.append("classes share an invariant key: %s"
                            % ", ".join(names))
    return ValidationReport(failures=fail, warnings=warn)


# ---------------------------------------------------------------------------
# Symmetric group tables (type A oracle)


def partitions(n: int, _cap=None):
    """Partitions of n as descending tuples, in descending lex order."""
    if n == 0:
        return [()]
    out = []
    cap = n if _cap is None else min(_cap, n)
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def _beta(lam, length):
    padded = list(lam) + [0] * (length - len(lam))
    return tuple(padded[i] + (length - 1 - i) for i in range(length))


@functools.lru_cache(maxsize=None)
def _mn_value(lam: tuple, mu: tuple) -> int:
    """Murnaghan-Nakayama: character of S_n at class mu for partition lam."""
    if not mu:
        return 1
    k = mu[0]
    length = len(lam) if lam else 1
    beta = _beta(lam, length)
    total = 0
    bset = set(beta)
    for j, bj in enumerate(beta):
        nb = bj - k
        if nb < 0 or nb in bset:
            continue
        crossed = sum(1 for x in beta if nb < x < bj)
        newbeta = sorted((x for x in beta if x != bj), reverse=True)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newlam = tuple(x - (len(newbeta) - 1 - i)
                       for i, x in enumerate(newbeta))
        newlam = tuple(x for x in newlam if x > 0)
        total += (-1) ** crossed * _mn_value(newlam, mu[1:])
    return total


def type_a_class_name(mu) -> str:
    """Carter-style name of the S_n class with cycle type mu."""
    counts = {}
    for part in mu:
        if part >= 2:
            counts[part - 1] = counts.get(part - 1, 0) + 1
    if not counts:
        return "A_0"
    terms = []
    for k in sorted(counts, reverse=True):
        m = counts[k]
        terms.append(("%d" % m if m > 1 else "") + "A_%d" % k)
    return "+".join(terms)


def _zee(mu) -> int:
    z = 1
    counts = {}
    for p in mu:
        counts[p] = counts.get(p, 0) + 1
    for p, m in counts.items():
        z *= p ** m * math.factorial(m)
    return z


@functools.lru_cache(maxsize=None)
def symmetric_table(n: int) -> CharacterTable:
    """Character table of S_n = W(A_{n-1}), computed by Murnaghan-Nakayama.

    Classes and irreps are both indexed by partitions of n in descending
    lex order; the b-invariant of the irrep of partition lam is
    n(lam) = sum (i-1) lam_i.
    """
    if not 1 <= n <= 9:
        raise EngineError("symmetric_table supports 1 <= n <= 9, got %d" % n)
    parts = partitions(n)[::-1]   # ascending lex: identity class first
    nfact = math.factorial(n)
    classes = []
    for mu in parts:
        word = []
        start = 0
        for part in mu:
            word.extend(range(start, start + part - 1))
            start += part
        classes.append(ClassRecord(
            name=type_a_class_name(mu), size=nfact // _zee(mu),
            rep_word=tuple(word),
            element_order=math.lcm(*mu) if mu else 1))
    dims_bs = {}
    for lam in parts:
        dim = _mn_value(lam, (1,) * n)
        b = sum(i * li for i, li in enumerate(lam))
        dims_bs.setdefault((dim, b), []).append(lam)
    marks = {}
    for (dim, b), lams in dims_bs.items():
        if len(lams) == 1:
            marks[lams[0]] = ""
        else:
            if len(lams) > 2:
                raise EngineError("more than two irreps share (dim,b) in S_%d" % n)
            marks[lams[0]] = "'"
            marks[lams[1]] = "''"
    irreps = []
    for lam in parts:
        dim = _mn_value(lam, (1,) * n)
        b = sum(i * li for i, li in enumerate(lam))
        row = tuple(_mn_value(lam, mu) for mu in parts)
        irreps.append((IrrepLabel(dim, b, marks[lam]), row))
    t = CartanType(()) if n == 1 else CartanType.of(("A", n - 1))
    return CharacterTable(cartan_type=t, classes=tuple(classes),
                          irreps=tuple(irreps))


# ---------------------------------------------------------------------------
# Products


TRIVIAL_TABLE = CharacterTable(
    cartan_type=CartanType(()),
    classes=(ClassRecord(name="A_0", size=1, rep_word=(), element_order=1),),
    irreps=((IrrepLabel(1, 0), (1,)),))


def product_table(factors) -> CharacterTable:
    """Table of a direct product; empty product is the trivial group."""
    factors = list(factors)
    if not factors:
        return TRIVIAL_TABLE
    if len(factors) == 1:
        return factors[0]
    t = CartanType(tuple(c for f in factors for c in f.cartan_type.components))
    offsets = []
    off = 0
    for f in factors:
        offsets.append(off)
        off += f.cartan_type.rank
    classes = []
    import itertools
    for combo in itertools.product(*(range(len(f.classes)) for f in factors)):
        recs = [f.classes[i] for f, i in zip(factors, combo)]
        word = tuple(i + offsets[fi]
                     for fi, r in enumerate(recs) for i in r.rep_word)
        classes.append(ClassRecord(
            name="⊗".join(r.name for r in recs),
            size=math.prod(r.size for r in recs),
            rep_word=word,
            element_order=math.lcm(*(r.element_order for r in recs))))
    irreps = []
    for combo in itertools.product(*(range(len(f.irreps)) for f in factors)):
        labels = []
        for f, i in zip(factors, combo):
            labels.extend(f.irreps[i][0].parts)
        rows = [f.irreps[i][1] for f, i in zip(factors, combo)]
        values = tuple(math.prod(vals)
                       for vals in itertools.product(*rows))
        # itertools.product over value rows matches the class enumeration
        irreps.append((ProductLabel(tuple(labels)), values))
    return CharacterTable(cartan_type=t, classes=tuple(classes),
                          irreps=tuple(irreps))
