"""Exact character-theoretic engine for Weyl groups.

Builds root systems and their Weyl groups as permutation groups, models
character tables with exact integer arithmetic, computes class fusion
and truncated induction across Levi subgroups, and classifies rigid
strata of the corresponding reductive groups from bundled
Springer-image data.
"""

from .rootsys import (CartanType, RootSystem, LeviClass, build_root_system,
                      degrees, weyl_order, subsystem_type, levi_representatives)
from .permgrp import (GroupContext, GroupElement, build_group, element_of_word,
                      invariant_key, are_conjugate, subset_conjugator)

__version__ = "1.0.0"
