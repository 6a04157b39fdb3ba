"""Built-in worked example: the swap action on the two-way-quiver algebra,
extended by zero from the order-2 subgroup of S3 generated by (12).

The module carries two reference datasets for cross-checking: a claimed j/h
factorization table for this subgroup (17 rows, two of which are
inconsistent with the defining equality, with one pair of G x T absent), and
the six expected formulas of the enveloping action on three copies of the
block, in block order (1, (13), (23)).
"""

from __future__ import annotations

from .algebra_actions import GlobalizationResult, globalize_extension_by_zero
from .block_algebras import Block
from .groups import (
    CosetFactorization,
    DiscrepancyReport,
    FiniteGroup,
    Subgroup,
    coset_factorize,
    cross_validate_table,
    subgroup_closure,
    symmetric_group,
)

# Reference j/h table rows as claimed: ((g, g_i), j, h).
CLAIMED_ROWS: tuple = (
    (("1", "1"), "1", "1"),
    (("1", "(23)"), "(23)", "1"),
    (("1", "(13)"), "(13)", "1"),
    (("(12)", "1"), "(13)", "(12)"),
    (("(12)", "(23)"), "(13)", "(12)"),
    (("(23)", "1"), "(23)", "(23)"),
    (("(23)", "(23)"), "1", "1"),
    (("(23)", "(13)"), "(13)", "(12)"),
    (("(123)", "1"), "(13)", "(12)"),
    (("(123)", "(23)"), "1", "(12)"),
    (("(123)", "(13)"), "(23)", "1"),
    (("(13)", "1"), "(13)", "1"),
    (("(13)", "(23)"), "(23)", "(12)"),
    (("(13)", "(13)"), "1", "1"),
    (("(132)", "1"), "(23)", "(12)"),
    (("(132)", "(23)"), "(13)", "1"),
    (("(132)", "(13)"), "1", "(12)"),
)

# Reference enveloping-action formulas, block order (1, (13), (23)):
# for each group element, output position -> (source position, twisted?).
# E.g. (12) acts as (x,y,z) -> ((12)x, (12)z, (12)y).
BETA_FORMULAS: dict[str, tuple[tuple[int, bool], ...]] = {
    "1": ((0, False), (1, False), (2, False)),
    "(12)": ((0, True), (2, True), (1, True)),
    "(13)": ((1, False), (0, False), (2, True)),
    "(23)": ((2, False), (1, True), (0, False)),
    "(123)": ((2, True), (0, True), (1, False)),
    "(132)": ((1, True), (2, False), (0, True)),
}

BLOCK_LABEL = "two_way_quiver"


def build_setup() -> tuple[FiniteGroup, Subgroup, Block, dict[int, int]]:
    """S3, the subgroup generated by (12), the quiver block whose
    automorphism group is that subgroup, and the tautological homomorphism."""
    G = symmetric_group(3)
    H = subgroup_closure(G, ["(12)"])
    block = Block(BLOCK_LABEL, H.as_group())
    hom = {member: k for k, member in enumerate(H.members)}
    return G, H, block, hom


def factorization() -> CosetFactorization:
    G, H, _, _ = build_setup()
    return coset_factorize(G, H)


def run_table_section() -> DiscrepancyReport:
    """Recompute the 18-row j/h table and compare it with the claimed rows."""
    return cross_validate_table(factorization(), CLAIMED_ROWS)


def envelope() -> GlobalizationResult:
    _, H, block, hom = build_setup()
    return globalize_extension_by_zero(block, H, hom)


def formula_of(result: GlobalizationResult, g: int) -> tuple[tuple[int, bool], ...]:
    """Render beta_g as (source position, twisted?) per output position."""
    w = result.action[g]
    aut = result.envelope.blocks[0].aut_group
    out: list = [None] * result.envelope.n_blocks
    for src, tgt in w.position_map.items():
        out[tgt] = (src, w.twists[src] != aut.identity)
    return tuple(out)


def formula_text(formula: tuple[tuple[int, bool], ...]) -> str:
    symbols = "xyz"
    parts = [("(12)" if twisted else "") + symbols[src] for src, twisted in formula]
    return "(" + ",".join(parts) + ")"


def run_beta_section() -> list[tuple[str, str, str, bool]]:
    """Verify the six displayed enveloping-action formulas exactly.

    Returns (element, expected, computed, passed) per group element.
    """
    result = envelope()
    G = result.source.group
    rows = []
    for name, expected in BETA_FORMULAS.items():
        g = G.element_by_name(name)
        actual = formula_of(result, g)
        rows.append((name, formula_text(expected), formula_text(actual), actual == expected))
    return rows
