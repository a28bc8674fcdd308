"""Runtime registry for character tables and group contexts.

Type-A tables are always computed (Murnaghan-Nakayama); all other
families load from bundled `WCT 1` files, which are validated against
the permutation group on first use and then cached.  The data directory
resolves as: explicit argument, then the WEYLSTRATA_DATA environment
variable, then the bundled package data.
"""

from __future__ import annotations

import functools
import os
import pathlib

from .chartab import (CharacterTable, load_character_table, product_table,
                      symmetric_table, validate_table)
from .errors import DataInconsistencyError, UnsupportedDataError
from .jind import certify_b_invariants
from .permgrp import GroupContext, build_group
from .rootsys import CartanType, build_root_system

#: irreps of E8 certified per table load by default (all of them under --deep)
E8_B_SAMPLE = 25

_BUNDLED = pathlib.Path(__file__).parent / "data"


def resolve_data_dir(data_dir=None) -> pathlib.Path:
    if data_dir is not None:
        return pathlib.Path(data_dir)
    env = os.environ.get("WEYLSTRATA_DATA")
    if env:
        return pathlib.Path(env)
    return _BUNDLED


@functools.lru_cache(maxsize=None)
def get_context(type_text: str) -> GroupContext:
    return build_group(build_root_system(CartanType.parse(type_text)))


_TABLES: dict[tuple[str, str], CharacterTable] = {}


def simple_table(fam: str, rank: int, data_dir=None,
                 deep_certify: bool = False) -> CharacterTable:
    """Validated character table of a simple type."""
    if fam == "A":
        key = (str(resolve_data_dir(data_dir)), "A%d" % rank)
        if key not in _TABLES:
            _TABLES[key] = symmetric_table(rank + 1)
        return _TABLES[key]
    base = resolve_data_dir(data_dir)
    text = "%s%d" % (fam, rank)
    key = (str(base), text)
    if key not in _TABLES:
        path = base / ("%s.wct" % text.lower())
        if not path.exists():
            raise UnsupportedDataError(
                "no bundled character table for %s (looked for %s)"
                % (text, path))
        t = load_character_table(path.read_text())
        if t.cartan_type.text != text:
            raise DataInconsistencyError(
                "file %s declares type %s" % (path, t.cartan_type))
        ctx = get_context(text)
        report = validate_table(t, ctx)
        if not report.ok:
            raise DataInconsistencyError(
                "character table %s failed validation: %s"
                % (path, "; ".join(report.failures[:5])))
        _TABLES[key] = t
    t = _TABLES[key]
    ctx = get_context(text)
    sample = None
    if text == "E8" and not deep_certify:
        sample = E8_B_SAMPLE
    certify_b_invariants(t, ctx.rs, ctx, sample=sample)
    return t


def factor_tables(t: CartanType, data_dir=None) -> list[CharacterTable]:
    """One validated table per canonical component."""
    return [simple_table(fam, rank, data_dir) for fam, rank in t.components]


def get_table(t: CartanType, data_dir=None) -> CharacterTable:
    """Validated (product) character table of an arbitrary supported type."""
    return product_table(factor_tables(t, data_dir))
