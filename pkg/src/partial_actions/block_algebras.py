"""Algebras modeled as products of labeled indecomposable blocks.

A block is abstract: an isomorphism-class label plus its automorphism group.
Ideals generated by central idempotents correspond to subsets of block
positions, and every blockwise isomorphism is a position bijection carrying a
per-position automorphism twist.  Elements are handled symbolically, as
formal sums of twisted tokens, so equality of maps is decidable without
materializing a base field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .errors import (
    ClassMismatch,
    CompositionMismatch,
    MalformedInput,
    SupportViolation,
)
from .groups import FiniteGroup, make_group


def trivial_group() -> FiniteGroup:
    return make_group([[0]], names=["1"])


@dataclass(frozen=True)
class Block:
    """One indecomposable factor: a class label and its automorphism group.

    Blocks with equal labels are declared isomorphic; scalar-line blocks
    carry the trivial automorphism group.
    """

    iso_class: str
    aut_group: FiniteGroup

    def is_line(self) -> bool:
        return self.aut_group.order == 1


def k_line_block(label: str = "K") -> Block:
    return Block(label, trivial_group())


@dataclass(frozen=True)
class BlockAlgebra:
    """An ordered product of blocks; position i carries the i-th primitive
    central idempotent."""

    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise MalformedInput("an algebra needs at least one block")
        by_class: dict[str, FiniteGroup] = {}
        for b in self.blocks:
            prior = by_class.setdefault(b.iso_class, b.aut_group)
            if prior != b.aut_group:
                raise MalformedInput(
                    f"blocks labeled {b.iso_class!r} carry different automorphism groups"
                )

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    def positions(self) -> range:
        return range(len(self.blocks))

    def block_at(self, position: int) -> Block:
        return self.blocks[position]

    def full_ideal(self) -> "BlockIdeal":
        return BlockIdeal(self, frozenset(self.positions()))

    def zero_ideal(self) -> "BlockIdeal":
        return BlockIdeal(self, frozenset())

    def ideal(self, support) -> "BlockIdeal":
        return BlockIdeal(self, frozenset(support))

    def all_line_blocks(self) -> bool:
        return all(b.is_line() for b in self.blocks)


def block_power(block: Block, n: int) -> BlockAlgebra:
    if n < 1:
        raise MalformedInput("need at least one copy")
    return BlockAlgebra((block,) * n)


@dataclass(frozen=True)
class BlockIdeal:
    """An ideal generated by central idempotents: a set of block positions."""

    algebra: BlockAlgebra
    support: frozenset

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        for p in self.support:
            if not (isinstance(p, int) and 0 <= p < self.algebra.n_blocks):
                raise MalformedInput(f"position {p!r} outside the algebra")

    @property
    def is_zero(self) -> bool:
        return not self.support

    def class_multiset(self) -> tuple[str, ...]:
        return tuple(sorted(self.algebra.blocks[p].iso_class for p in self.support))

    def __contains__(self, position: int) -> bool:
        return position in self.support


def ideal_psi(ideal: BlockIdeal) -> frozenset:
    """Support of an ideal: the positions whose idempotents do not kill it.
    The zero ideal maps to the empty set."""
    return ideal.support


def ideals_isomorphic(a: BlockIdeal, b: BlockIdeal) -> bool:
    """Whether two central-idempotent ideals are isomorphic: their supports
    carry the same multiset of block classes.  Over a single scalar-line
    class this reduces to equal support cardinality."""
    return a.class_multiset() == b.class_multiset()


@dataclass(frozen=True, eq=True)
class WreathMap:
    """A blockwise isomorphism: a class-preserving position bijection plus a
    per-source-position automorphism twist.

    ``position_map[p] = q`` moves block p of the source onto block q of the
    target; ``twists[p]`` is the automorphism (an element index of the
    block's automorphism group) applied to the payload in transit.
    """

    source: BlockIdeal
    target: BlockIdeal
    position_map: Mapping[int, int]
    twists: Mapping[int, int]

    def __post_init__(self):
        pm = dict(self.position_map)
        tw = dict(self.twists)
        object.__setattr__(self, "position_map", pm)
        object.__setattr__(self, "twists", tw)
        if set(pm) != set(self.source.support):
            raise MalformedInput("position map keys must be exactly the source support")
        if set(pm.values()) != set(self.target.support) or len(set(pm.values())) != len(pm):
            raise MalformedInput("position map is not a bijection onto the target support")
        for p, q in pm.items():
            src_block = self.source.algebra.blocks[p]
            tgt_block = self.target.algebra.blocks[q]
            if src_block.iso_class != tgt_block.iso_class:
                raise ClassMismatch(
                    f"position {p} ({src_block.iso_class}) cannot map onto "
                    f"position {q} ({tgt_block.iso_class})"
                )
            if src_block.aut_group != tgt_block.aut_group:
                raise ClassMismatch(
                    f"blocks at {p} and {q} share a label but not automorphisms"
                )
        if set(tw) != set(pm):
            raise MalformedInput("twists must be indexed exactly by the source support")
        for p, f in tw.items():
            if not (0 <= f < self.source.algebra.blocks[p].aut_group.order):
                raise MalformedInput(f"twist at {p} is not an automorphism index")

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and all(q == p for p, q in self.position_map.items())
            and all(
                f == self.source.algebra.blocks[p].aut_group.identity
                for p, f in self.twists.items()
            )
        )

    __hash__ = None  # value equality over dict fields; not hashable


def wreath_identity(ideal: BlockIdeal) -> WreathMap:
    return WreathMap(
        ideal,
        ideal,
        {p: p for p in ideal.support},
        {p: ideal.algebra.blocks[p].aut_group.identity for p in ideal.support},
    )


def wreath_inverse(w: WreathMap) -> WreathMap:
    pm = {q: p for p, q in w.position_map.items()}
    tw = {
        q: w.source.algebra.blocks[p].aut_group.inv(w.twists[p])
        for p, q in w.position_map.items()
    }
    return WreathMap(w.target, w.source, pm, tw)


Token = tuple[int, str]
FormalSum = dict[int, Token]


def formal_sum(payloads: Mapping[int, Union[str, Token]]) -> FormalSum:
    """Normalize a formal sum: each position carries (twist index, symbol);
    a bare symbol means the untwisted token."""
    out: FormalSum = {}
    for p, payload in payloads.items():
        if isinstance(payload, str):
            out[p] = (0, payload)
        else:
            f, s = payload
            out[p] = (int(f), str(s))
    return out


def symbolic_basis(ideal: BlockIdeal, prefix: str = "x") -> FormalSum:
    """One untwisted symbol per supported position (x0, x1, ...)."""
    return {
        p: (ideal.algebra.blocks[p].aut_group.identity, f"{prefix}{p}")
        for p in sorted(ideal.support)
    }


def wreath_apply(w: WreathMap, element: Mapping[int, Union[str, Token]]) -> FormalSum:
    """Push a formal sum through a wreath map: the payload at position p
    lands at position_map[p] with the twist applied on the left.

    Raises:
        SupportViolation: the element mentions positions outside the source.
    """
    elem = formal_sum(element)
    extra = set(elem) - set(w.source.support)
    if extra:
        raise SupportViolation(f"element supported outside the source at {sorted(extra)}")
    out: FormalSum = {}
    for p, (f, symbol) in elem.items():
        aut = w.source.algebra.blocks[p].aut_group
        out[w.position_map[p]] = (aut.mul(w.twists[p], f), symbol)
    return out


def wreath_compose(w2: WreathMap, w1: WreathMap) -> WreathMap:
    """The composite w2 ∘ w1: positions compose, twists multiply along the
    path (the w2 twist is applied after the w1 twist).

    Raises:
        CompositionMismatch: the target of w1 is not the source of w2.
    """
    if w1.target != w2.source:
        raise CompositionMismatch("target of the first map differs from source of the second")
    pm = {p: w2.position_map[w1.position_map[p]] for p in w1.position_map}
    tw = {}
    for p in w1.position_map:
        aut = w1.source.algebra.blocks[p].aut_group
        tw[p] = aut.mul(w2.twists[w1.position_map[p]], w1.twists[p])
    return WreathMap(w1.source, w2.target, pm, tw)


def make_ideal_iso(a: BlockIdeal, b: BlockIdeal, theta: Mapping[int, int]) -> WreathMap:
    """The coefficient-transport isomorphism along a support bijection theta:
    the payload at position p moves untwisted to theta(p).

    Raises:
        ClassMismatch: theta pairs blocks of different classes.
        MalformedInput: theta is not a bijection of the supports.
    """
    theta = dict(theta)
    if set(theta) != set(a.support) or set(theta.values()) != set(b.support):
        raise MalformedInput("theta is not a bijection between the supports")
    twists = {p: a.algebra.blocks[p].aut_group.identity for p in a.support}
    return WreathMap(a, b, theta, twists)


def decompose_isotypic(algebra: BlockAlgebra) -> list[tuple[str, tuple[int, ...]]]:
    """Partition of block positions by class label, ordered by first
    occurrence."""
    seen: dict[str, list[int]] = {}
    order: list[str] = []
    for p, block in enumerate(algebra.blocks):
        if block.iso_class not in seen:
            seen[block.iso_class] = []
            order.append(block.iso_class)
        seen[block.iso_class].append(p)
    return [(label, tuple(seen[label])) for label in order]
