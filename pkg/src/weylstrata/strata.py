"""Strata label sets, rigid strata, and per-characteristic rigid classes.

Springer-image data ships as `SPI 1` files per (simple type,
characteristic); type-A images are generated by rule (the correspondence
is a bijection onto all irreducibles in every characteristic).  Strata
label sets are unions of images over the bundled characteristics, with
provenance; rigidity is the complement of all truncated-induction images
from proper Levi subgroups.  The label-to-class translation ships as
`SCM 1` files.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .chartab import label_sort_key, lookup_irrep, parse_label
from .errors import (DataInconsistencyError, TableFormatError,
                     UnsupportedDataError)
from .fusion import class_fusion, embed_levi
from .jind import j_induce
from .rootsys import CartanType, LeviClass, build_root_system, levi_representatives
from .tables import factor_tables, get_context, get_table, resolve_data_dir

#: characteristics probed when scanning for bundled data files
PROBE_CHARS = (0, 2, 3, 5, 7)


# ---------------------------------------------------------------------------
# SPI / SCM file formats


@dataclass(frozen=True)
class SpringerImage:
    """Image of the Springer map for one type and characteristic."""

    cartan_type: CartanType
    characteristic: int
    labels: frozenset[str]                 # label texts
    class_names: dict                      # label text -> unipotent class name

    def __contains__(self, label):
        text = label if isinstance(label, str) else label.text
        return text in self.labels


def parse_spi(content: str) -> tuple[CartanType, int, list]:
    header = {}
    rows = []
    stage = 0
    for lineno, raw in enumerate(content.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if stage == 0:
            if tok != ["SPI", "1"]:
                raise TableFormatError("expected 'SPI 1' header", lineno)
            stage = 1
            continue
        if stage == 1:
            if tok[0] in ("TYPE", "CHAR", "COUNT") and len(tok) == 2:
                header[tok[0]] = tok[1]
                if len(header) == 3:
                    stage = 2
                continue
            raise TableFormatError("bad header line %r" % raw, lineno)
        if len(tok) not in (1, 2):
            raise TableFormatError("expected '<label> [<class name>]'", lineno)
        rows.append((tok[0], tok[1] if len(tok) == 2 else None, lineno))
    if stage != 2:
        raise TableFormatError("incomplete SPI header")
    if len(rows) != int(header["COUNT"]):
        raise TableFormatError("SPI count mismatch: header %s, rows %d"
                               % (header["COUNT"], len(rows)))
    return CartanType.parse(header["TYPE"]), int(header["CHAR"]), rows


def parse_scm(content: str) -> tuple[CartanType, list]:
    header = {}
    rows = []
    stage = 0
    for lineno, raw in enumerate(content.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if stage == 0:
            if tok != ["SCM", "1"]:
                raise TableFormatError("expected 'SCM 1' header", lineno)
            stage = 1
            continue
        if stage == 1:
            if tok[0] in ("TYPE", "COUNT") and len(tok) == 2:
                header[tok[0]] = tok[1]
                if len(header) == 2:
                    stage = 2
                continue
            raise TableFormatError("bad header line %r" % raw, lineno)
        if len(tok) != 2:
            raise TableFormatError("expected '<label> <class name>'", lineno)
        rows.append((tok[0], tok[1], lineno))
    if stage != 2:
        raise TableFormatError("incomplete SCM header")
    if len(rows) != int(header["COUNT"]):
        raise TableFormatError("SCM count mismatch")
    return CartanType.parse(header["TYPE"]), rows


# ---------------------------------------------------------------------------
# Springer images


def _simple_springer_image(fam: str, rank: int, r: int, data_dir=None) -> SpringerImage:
    t = CartanType.of((fam, rank))
    if fam == "A":
        table = get_table(t, data_dir)
        return SpringerImage(
            cartan_type=t, characteristic=r,
            labels=frozenset(lab.text for lab, _ in table.irreps),
            class_names={})
    base = resolve_data_dir(data_dir)
    path = base / ("%s%d_p%d.spi" % (fam.lower(), rank, r))
    if not path.exists():
        raise UnsupportedDataError(
            "unsupported (type, characteristic): no Springer image data for "
            "(%s, %d)" % (t.text, r))
    ftype, fchar, rows = parse_spi(path.read_text())
    if ftype != t or fchar != r:
        raise DataInconsistencyError("file %s declares (%s, %d)"
                                     % (path, ftype, fchar))
    table = get_table(t, data_dir)
    labels = set()
    names = {}
    for text, cname, lineno in rows:
        lookup_irrep(table, text)   # raises UnknownLabelError if unresolvable
        if text in labels:
            raise TableFormatError("duplicate label %s" % text, lineno)
        labels.add(text)
        if cname:
            names[text] = cname
    return SpringerImage(cartan_type=t, characteristic=r,
                         labels=frozenset(labels), class_names=names)


def springer_image(t: CartanType, r: int, data_dir=None) -> SpringerImage:
    """Springer image of a (possibly reducible) type at characteristic r.

    Product types combine componentwise: labels join factorwise, with
    b-invariants adding.  The torus type has the single label 1_0.
    """
    if t.is_torus:
        return SpringerImage(cartan_type=t, characteristic=r,
                             labels=frozenset(["1_0"]), class_names={})
    factors = [_simple_springer_image(fam, rank, r, data_dir)
               for fam, rank in t.components]
    if len(factors) == 1:
        return factors[0]
    labels = [""]
    for f in factors:
        labels = [a + ("⊗" if a else "") + b
                  for a in labels for b in sorted(f.labels)]
    return SpringerImage(cartan_type=t, characteristic=r,
                         labels=frozenset(labels), class_names={})


def bundled_characteristics(t: CartanType, data_dir=None) -> tuple[int, ...]:
    """Characteristics for which every non-A component has a bundled image."""
    non_a = [(fam, rank) for fam, rank in t.components if fam != "A"]
    if not non_a:
        return (0,)
    base = resolve_data_dir(data_dir)
    out = []
    for r in PROBE_CHARS:
        if all((base / ("%s%d_p%d.spi" % (fam.lower(), rank, r))).exists()
               for fam, rank in non_a):
            out.append(r)
    if not out:
        raise UnsupportedDataError(
            "unsupported type %s: no Springer image data bundled" % t.text)
    return tuple(out)


@dataclass(frozen=True)
class StrataLabelSet:
    """Union of Springer images over the bundled characteristics."""

    cartan_type: CartanType
    labels: frozenset[str]
    provenance: dict            # label text -> tuple of characteristics

    def sorted_labels(self):
        return sorted(self.labels, key=lambda s: label_sort_key(parse_label(s)))


def strata_labels(t: CartanType, data_dir=None) -> StrataLabelSet:
    """All strata labels of a type, with per-characteristic provenance."""
    chars = bundled_characteristics(t, data_dir)
    prov = {}
    for r in chars:
        for text in springer_image(t, r, data_dir).labels:
            prov.setdefault(text, []).append(r)
    return StrataLabelSet(cartan_type=t,
                          labels=frozenset(prov),
                          provenance={k: tuple(v) for k, v in prov.items()})


def levi_strata_labels(levi: LeviClass, data_dir=None) -> StrataLabelSet:
    """Strata labels of a Levi: componentwise product of factor label sets."""
    t = levi.cartan_type
    if t.is_torus:
        return StrataLabelSet(cartan_type=t, labels=frozenset(["1_0"]),
                              provenance={"1_0": (0,)})
    factor_sets = [strata_labels(CartanType.of(comp), data_dir)
                   for comp in t.components]
    labels = [""]
    for f in factor_sets:
        labels = [a + ("⊗" if a else "") + b
                  for a in labels for b in sorted(f.labels)]
    return StrataLabelSet(cartan_type=t, labels=frozenset(labels),
                          provenance={})


# ---------------------------------------------------------------------------
# j-images from Levi subgroups


class StrataEngine:
    """Caches embeddings and fusions for repeated rigidity computations."""

    def __init__(self, t: CartanType, data_dir=None, deep=False):
        if len(t.components) > 1:
            raise UnsupportedDataError(
                "rigidity computations support simple or torus ambient types, "
                "got %s" % t.text)
        self.cartan_type = t
        self.data_dir = data_dir
        self.deep = deep
        if not t.is_torus:
            self.ctx = get_context(t.text)
            self.rs = self.ctx.rs
            from .tables import simple_table
            fam, rank = t.components[0]
            self.table = simple_table(fam, rank, data_dir, deep_certify=deep)
            self._levis = levi_representatives(self.rs)
        self._emb = {}

    def levis(self, proper=True):
        out = [lc for lc in self._levis]
        if proper:
            out = [lc for lc in out if lc.cartan_type != self.cartan_type]
        return out

    def embedding(self, levi: LeviClass):
        key = levi.name
        if key not in self._emb:
            emb = embed_levi(self.ctx, levi,
                             factor_tables(levi.cartan_type, self.data_dir))
            self._certify_factors(levi.cartan_type)
            fus = class_fusion(emb, self.table)
            self._emb[key] = (emb, fus)
        return self._emb[key]

    def _certify_factors(self, t: CartanType):
        from .jind import certify_b_invariants
        from .tables import simple_table

        for fam, rank in t.components:
            ft = simple_table(fam, rank, self.data_dir)
            fctx = get_context("%s%d" % (fam, rank))
            certify_b_invariants(ft, fctx.rs, fctx)

    def j_image(self, levi: LeviClass, label_text: str) -> str:
        emb, fus = self.embedding(levi)
        chi = lookup_irrep(emb.table, label_text)
        return j_induce(emb, fus, self.table, chi).text

    def j_images_of_set(self, levi: LeviClass, labels) -> dict:
        return {text: self.j_image(levi, text) for text in sorted(labels)}


@functools.lru_cache(maxsize=8)
def _engine(text: str, data_dir_text: str, deep: bool) -> StrataEngine:
    data_dir = data_dir_text or None
    return StrataEngine(CartanType.parse(text), data_dir, deep)


def engine_for(t: CartanType, data_dir=None, deep=False) -> StrataEngine:
    return _engine(t.text, str(data_dir) if data_dir else "", deep)


def rigid_strata(t: CartanType, data_dir=None) -> list[str]:
    """Strata labels not truncated-induced from any proper Levi.

    Returned in paper listing order (b descending, dimension ascending).
    """
    if t.is_torus:
        return ["1_0"]
    eng = engine_for(t, data_dir)
    labels = set(strata_labels(t, data_dir).labels)
    induced = set()
    for levi in eng.levis(proper=True):
        lset = levi_strata_labels(levi, data_dir)
        for text in lset.labels:
            out = eng.j_image(levi, text)
            if out not in labels:
                raise DataInconsistencyError(
                    "j-image %s of %s from Levi %s is not a stratum label of %s"
                    % (out, text, levi.name, t.text))
            induced.add(out)
    rigid = labels - induced
    return sorted(rigid, key=lambda s: label_sort_key(parse_label(s)))


def rigid_unipotent(t: CartanType, r: int, data_dir=None) -> list[str]:
    """Labels of rigid unipotent classes in characteristic r."""
    if t.is_torus:
        return ["1_0"]
    eng = engine_for(t, data_dir)
    image = springer_image(t, r, data_dir).labels
    induced = set()
    for levi in eng.levis(proper=True):
        lset = springer_image(levi.cartan_type, r, data_dir)
        for text in lset.labels:
            induced.add(eng.j_image(levi, text))
    return sorted(image - induced,
                  key=lambda s: label_sort_key(parse_label(s)))


def rigid_union_check(t: CartanType, data_dir=None) -> bool:
    """Whether rigid strata equal the union of per-characteristic rigid sets."""
    union = set()
    for r in bundled_characteristics(t, data_dir):
        union.update(rigid_unipotent(t, r, data_dir))
    return union == set(rigid_strata(t, data_dir))


def induce_stratum(t: CartanType, levi: LeviClass, label_text: str,
                   data_dir=None) -> str:
    """j-induction of a Levi stratum label; the image must be a stratum."""
    lset = levi_strata_labels(levi, data_dir)
    if label_text not in lset.labels:
        raise DataInconsistencyError(
            "%s is not a stratum label of the Levi %s" % (label_text, levi.name))
    if levi.cartan_type == t:
        return label_text
    eng = engine_for(t, data_dir)
    out = eng.j_image(levi, label_text)
    if out not in strata_labels(t, data_dir).labels:
        raise DataInconsistencyError(
            "induced label %s is not a stratum label of %s" % (out, t.text))
    return out


# ---------------------------------------------------------------------------
# label <-> class translation


@dataclass(frozen=True)
class StrataClassMap:
    cartan_type: CartanType
    to_class: dict          # label text -> Carter class name


def strata_class_map(t: CartanType, data_dir=None) -> StrataClassMap:
    base = resolve_data_dir(data_dir)
    if len(t.components) != 1:
        raise UnsupportedDataError("no strata-class map for %s" % t.text)
    fam, rank = t.components[0]
    path = base / ("%s%d.scm" % (fam.lower(), rank))
    if not path.exists():
        raise UnsupportedDataError("no bundled strata-class map for %s" % t.text)
    ftype, rows = parse_scm(path.read_text())
    if ftype != t:
        raise DataInconsistencyError("file %s declares type %s" % (path, ftype))
    table = get_table(t, data_dir)
    mapping = {}
    seen_names = set()
    for text, name, lineno in rows:
        lookup_irrep(table, text)
        if text in mapping or name in seen_names:
            raise TableFormatError("duplicate entry %s -> %s" % (text, name),
                                   lineno)
        mapping[text] = name
        seen_names.add(name)
    # total on the strata label set
    missing = set(strata_labels(t, data_dir).labels) - set(mapping)
    if missing:
        raise DataInconsistencyError(
            "strata-class map for %s is missing labels: %s"
            % (t.text, ", ".join(sorted(missing))))
    return StrataClassMap(cartan_type=t, to_class=mapping)


def strata_to_classes(t: CartanType, labels, data_dir=None) -> list[str]:
    """Carter class names of the given stratum labels, in listing order."""
    scm = strata_class_map(t, data_dir)
    ordered = sorted(labels, key=lambda s: label_sort_key(parse_label(s)))
    out = []
    for text in ordered:
        if text not in scm.to_class:
            raise DataInconsistencyError(
                "label %s is not in the strata-class map of %s" % (text, t.text))
        out.append(scm.to_class[text])
    return out


# ---------------------------------------------------------------------------
# structural checks from the classification argument


def char2_decomposition_check(t: CartanType, data_dir=None) -> dict:
    """Structural facts behind the rigidity classification for one type.

    Returns a report dict with the strata set size, the characteristic-2
    image, the extra labels beyond it, and whether every j-image from a
    proper Levi at characteristic 2 lands inside the characteristic-2
    image (so extras are never induced).
    """
    eng = engine_for(t, data_dir)
    all_labels = set(strata_labels(t, data_dir).labels)
    img2 = set(springer_image(t, 2, data_dir).labels)
    extras = sorted(all_labels - img2,
                    key=lambda s: label_sort_key(parse_label(s)))
    j_images = set()
    for levi in eng.levis(proper=True):
        for text in springer_image(levi.cartan_type, 2, data_dir).labels:
            j_images.add(eng.j_image(levi, text))
    return {
        "strata": len(all_labels),
        "char2": len(img2),
        "extras": extras,
        "j_images_inside_char2": j_images <= img2,
        "extras_never_induced": not (set(extras) & j_images),
    }
