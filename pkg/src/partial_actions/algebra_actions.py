"""Partial actions on block algebras and their enveloping actions.

Domains are ideals generated by central idempotents (so every action here
satisfies the globalizability criterion by construction) and the maps are
wreath maps: class-preserving position bijections with automorphism twists.
The envelope of a partial action on a power of one block is assembled from
the envelope of its restriction to the idempotent positions, with twists
transported along witness paths.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Optional, Sequence, Union

from .block_algebras import (
    Block,
    BlockAlgebra,
    BlockIdeal,
    WreathMap,
    block_power,
    wreath_compose,
    wreath_identity,
    wreath_inverse,
)
from .errors import (
    GroupMismatch,
    InternalInconsistency,
    MalformedInput,
    NotAHomomorphism,
    NotKBlocks,
    TwistTransportConflict,
)
from .groups import FiniteGroup, Subgroup
from .reporting import EnvelopingReport, VerificationReport
from .set_actions import (
    SetPartialAction,
    SetGlobalization,
    enumerate_partial_actions,
    globalize_set,
)


class AlgebraPartialAction:
    """Candidate partial action on a block algebra.

    ``domains[g]`` is the ideal S_g and ``maps[g]`` the wreath map
    alpha_g: S_{g^-1} -> S_g.  As with set actions, construction normalizes
    (missing domains are zero, the identity defaults to the identity map on
    the whole algebra) but the axioms are checked separately by
    :func:`verify_algebra_partial_action`.
    """

    def __init__(
        self,
        group: FiniteGroup,
        algebra: BlockAlgebra,
        domains: Optional[Mapping[int, Union[BlockIdeal, Iterable[int]]]] = None,
        maps: Optional[Mapping[int, WreathMap]] = None,
    ):
        self.group = group
        self.algebra = algebra
        e = group.identity
        doms: dict[int, BlockIdeal] = {}
        domains = dict(domains or {})
        maps = dict(maps or {})
        for g in list(domains) + list(maps):
            if not (0 <= g < group.order):
                raise MalformedInput(f"unknown group element {g}")
        for g in group.elements():
            if g in domains:
                d = domains[g]
                doms[g] = d if isinstance(d, BlockIdeal) else algebra.ideal(d)
                if doms[g].algebra != algebra:
                    raise MalformedInput("domain ideal belongs to a different algebra")
            elif g == e:
                doms[g] = algebra.full_ideal()
            else:
                doms[g] = algebra.zero_ideal()
        mps: dict[int, WreathMap] = {}
        for g in group.elements():
            if g in maps:
                mps[g] = maps[g]
            elif g == e:
                mps[g] = wreath_identity(doms[e])
            else:
                mps[g] = WreathMap(algebra.zero_ideal(), algebra.zero_ideal(), {}, {})
        self.domains = doms
        self.maps = mps

    def support(self, g: int) -> frozenset:
        return self.domains[g].support

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraPartialAction)
            and self.group == other.group
            and self.algebra == other.algebra
            and self.domains == other.domains
            and self.maps == other.maps
        )

    def __repr__(self) -> str:
        return (
            f"AlgebraPartialAction(group_order={self.group.order}, "
            f"blocks={self.algebra.n_blocks})"
        )


def verify_algebra_partial_action(pa: AlgebraPartialAction) -> VerificationReport:
    """Itemized axiom check for a partial action on a block algebra.

    The wreath maps themselves are validated at construction; this check
    covers their fit with the stated domains, the three axioms (twists
    included), and the derived identities.

    Raises:
        MalformedInput: a map's source or target is not the stated ideal.
    """
    G = pa.group
    e = G.identity
    for g in G.elements():
        w = pa.maps[g]
        if w.source != pa.domains[G.inv(g)] or w.target != pa.domains[g]:
            raise MalformedInput(
                f"map of {G.name(g)} does not run from S_{{{G.name(G.inv(g))}}} to S_{{{G.name(g)}}}"
            )
    report = VerificationReport("algebra partial action")

    witness = None
    if pa.support(e) != frozenset(pa.algebra.positions()):
        witness = "S_e is a proper ideal"
    elif not pa.maps[e].is_identity():
        witness = "alpha_e is not the identity map"
    report.add("axiom (i): identity domain and map", witness is None, witness)

    witness_ii = None
    witness_iii = None
    for g in G.elements():
        supp_g_inv = pa.support(G.inv(g))
        w_g = pa.maps[g]
        for h in G.elements():
            gh = G.mul(g, h)
            w_h = pa.maps[h]
            w_gh = pa.maps[gh]
            supp_ghinv = pa.support(G.inv(gh))
            for p, y in w_h.position_map.items():
                if y not in supp_g_inv:
                    continue
                if p not in supp_ghinv:
                    if witness_ii is None:
                        witness_ii = f"g={G.name(g)}, h={G.name(h)}, block {p}"
                    continue
                aut = pa.algebra.blocks[p].aut_group
                if w_g.position_map[y] != w_gh.position_map[p] or aut.mul(
                    w_g.twists[y], w_h.twists[p]
                ) != w_gh.twists[p]:
                    if witness_iii is None:
                        witness_iii = f"g={G.name(g)}, h={G.name(h)}, block {p}"
    report.add("axiom (ii): domain compatibility", witness_ii is None, witness_ii)
    report.add("axiom (iii): composition on overlaps", witness_iii is None, witness_iii)

    witness = None
    for g in G.elements():
        for h in G.elements():
            overlap = pa.support(G.inv(g)) & pa.support(h)
            lhs = {pa.maps[g].position_map[p] for p in overlap}
            rhs = pa.support(g) & pa.support(G.mul(g, h))
            if lhs != rhs:
                witness = f"g={G.name(g)}, h={G.name(h)}"
                break
        if witness:
            break
    report.add("derived: alpha_g(S_g^-1 ∩ S_h) = S_g ∩ S_gh", witness is None, witness)

    witness = None
    for g in G.elements():
        if pa.maps[G.inv(g)] != wreath_inverse(pa.maps[g]):
            witness = f"alpha of {G.name(G.inv(g))}"
            break
    report.add("derived: alpha_g^-1 = alpha_{g^-1}", witness is None, witness)

    witness = None
    for g in G.elements():
        for p, q in pa.maps[g].position_map.items():
            if pa.algebra.blocks[p].iso_class != pa.algebra.blocks[q].iso_class:
                witness = f"g={G.name(g)}, block {p}"
                break
        if witness:
            break
    report.add("blockwise class preservation", witness is None, witness)
    return report


class GlobalizabilityReport:
    """Outcome of the central-idempotent criterion.

    In the block model every domain is generated by central idempotents, so
    ``globalizable`` is always True; for a single-block algebra the report
    also records the zero-or-full dichotomy of each domain.
    """

    def __init__(self, globalizable: bool, dichotomy: Optional[dict[int, str]]):
        self.globalizable = globalizable
        self.dichotomy = dichotomy

    def __bool__(self) -> bool:
        return self.globalizable


def globalizable_check(pa: AlgebraPartialAction) -> GlobalizabilityReport:
    """Every block-model action is globalizable (the domains are supports of
    central idempotents by construction); on one block, also classify each
    domain as zero or full."""
    dichotomy = None
    if pa.algebra.n_blocks == 1:
        dichotomy = {
            g: ("full" if pa.support(g) else "zero") for g in pa.group.elements()
        }
    return GlobalizabilityReport(True, dichotomy)


def classify_indecomposable(pa: AlgebraPartialAction) -> tuple[Subgroup, dict[int, int]]:
    """For an action on a single block: the subgroup H on which the action is
    global, and the homomorphism H -> Aut(block) given by the twists.

    The reconstruction ``extend_by_zero_algebra(block, H, hom)`` equals the
    input for every valid action.
    """
    if pa.algebra.n_blocks != 1:
        raise MalformedInput("classification applies to single-block algebras")
    G = pa.group
    members = tuple(g for g in G.elements() if pa.support(g))
    H = Subgroup(G, members)  # raises NotASubgroup on invalid input actions
    hom = {g: pa.maps[g].twists[0] for g in members}
    aut = pa.algebra.blocks[0].aut_group
    for a in members:
        for b in members:
            if hom[G.mul(a, b)] != aut.mul(hom[a], hom[b]):
                raise InternalInconsistency("twists of a valid action must be a homomorphism")
    return H, hom


def extend_by_zero_algebra(
    block: Union[Block, BlockAlgebra],
    subgroup: Subgroup,
    hom: Mapping[int, int],
) -> AlgebraPartialAction:
    """Extension by zero of a global subgroup action on one block.

    ``hom`` maps each member of the subgroup (as a parent-group element
    index) to an automorphism index of the block; domains are the whole
    algebra on H and zero elsewhere.

    Raises:
        NotAHomomorphism: hom is not a homomorphism H -> Aut(block), is not
            total on H, or does not fix the identity.
    """
    if isinstance(block, BlockAlgebra):
        if block.n_blocks != 1:
            raise MalformedInput("extension by zero here takes a single block")
        algebra = block
        blk = block.blocks[0]
    else:
        blk = block
        algebra = BlockAlgebra((block,))
    G = subgroup.parent
    aut = blk.aut_group
    hom = dict(hom)
    if set(hom) != set(subgroup.members):
        raise NotAHomomorphism("hom must be defined exactly on the subgroup members")
    if hom[G.identity] != aut.identity:
        raise NotAHomomorphism("hom must send the identity to the identity")
    for a in subgroup.members:
        if not (0 <= hom[a] < aut.order):
            raise NotAHomomorphism(f"{hom[a]} is not an automorphism index")
        for b in subgroup.members:
            if hom[G.mul(a, b)] != aut.mul(hom[a], hom[b]):
                raise NotAHomomorphism(
                    f"hom({G.name(a)}*{G.name(b)}) != hom({G.name(a)})*hom({G.name(b)})"
                )
    full = algebra.full_ideal()
    domains = {}
    maps = {}
    for g in subgroup.members:
        domains[g] = full
        maps[g] = WreathMap(full, full, {0: 0}, {0: hom[g]})
    return AlgebraPartialAction(G, algebra, domains, maps)


class GlobalizationResult:
    """An enveloping action: the envelope algebra, a global action on it, the
    embedding of the original algebra, and the verification record.

    ``provenance[c]`` says which witness each envelope block came from.  Any
    instance returned by this module has all four checks passing.
    """

    def __init__(
        self,
        source: AlgebraPartialAction,
        envelope: BlockAlgebra,
        provenance: tuple,
        action: dict[int, WreathMap],
        embedding: WreathMap,
        checks: EnvelopingReport,
    ):
        self.source = source
        self.envelope = envelope
        self.provenance = provenance
        self.action = action
        self.embedding = embedding
        self.checks = checks

    @property
    def block_count(self) -> int:
        return self.envelope.n_blocks

    def __repr__(self) -> str:
        return f"GlobalizationResult(blocks={self.block_count}, ok={self.checks.ok})"


def _embedding_parts(embedding) -> tuple[dict, dict]:
    if isinstance(embedding, WreathMap):
        return dict(embedding.position_map), dict(embedding.twists)
    if isinstance(embedding, Mapping):
        return dict(embedding["position_map"]), dict(embedding.get("twists", {}))
    pm, tw = embedding
    return dict(pm), dict(tw)


def verify_enveloping(pa: AlgebraPartialAction, candidate) -> EnvelopingReport:
    """Run the four enveloping-action checks of a candidate against a partial
    action: the embedding lands on an ideal (a union of full blocks, hit
    injectively and class-correctly), the orbit of the embedded algebra
    covers the envelope, the embedded S_g equal the intersections
    phi(A) ∩ beta_g(phi(A)), and phi intertwines alpha_g with beta_g.

    ``candidate`` needs ``envelope`` (BlockAlgebra), ``action`` (one full-
    support wreath map per group element, forming a global action) and
    ``embedding`` (a wreath map, or raw position_map/twists data).

    Raises:
        MalformedInput: the candidate's action data is not a global action.
    """
    if isinstance(candidate, Mapping):
        envelope = candidate["envelope"]
        action = candidate["action"]
        embedding = candidate["embedding"]
    else:
        envelope = candidate.envelope
        action = candidate.action
        embedding = candidate.embedding
    G = pa.group
    env_positions = frozenset(envelope.positions())
    if set(action) != set(G.elements()):
        raise MalformedInput("action must assign a map to every group element")
    for g in G.elements():
        w = action[g]
        if w.source.support != env_positions or w.target.support != env_positions:
            raise MalformedInput(f"beta of {G.name(g)} is not defined on the whole envelope")
    if not action[G.identity].is_identity():
        raise MalformedInput("beta_e is not the identity")
    for g in G.elements():
        for t in G.elements():
            if wreath_compose(action[g], action[t]) != action[G.mul(g, t)]:
                raise MalformedInput(
                    f"beta is not a global action at {G.name(g)}*{G.name(t)}"
                )

    report = EnvelopingReport()
    pm, tw = _embedding_parts(embedding)
    src_positions = set(pa.algebra.positions())

    witness = None
    if set(pm) != src_positions:
        witness = "embedding is not defined on every block"
    elif len(set(pm.values())) != len(pm):
        witness = "embedding collapses blocks"
    elif not set(pm.values()) <= env_positions:
        witness = "embedding leaves the envelope"
    else:
        for p, q in pm.items():
            if pa.algebra.blocks[p].iso_class != envelope.blocks[q].iso_class:
                witness = f"block {p} lands on a block of another class"
                break
            f = tw.get(p)
            if f is None or not (0 <= f < pa.algebra.blocks[p].aut_group.order):
                witness = f"twist at block {p} is missing or invalid"
                break
    report.add("ideal", witness is None, witness)

    image = set(pm.values())
    covered = set()
    for g in G.elements():
        covered |= {action[g].position_map[q] for q in image if q in action[g].position_map}
    ok = covered == set(env_positions)
    report.add(
        "covers",
        ok,
        None if ok else f"orbit misses blocks {sorted(env_positions - covered)}",
    )

    witness = None
    for g in G.elements():
        lhs = {pm[p] for p in pa.support(g) if p in pm}
        rhs = image & {action[g].position_map[q] for q in image}
        if lhs != rhs:
            witness = f"g={G.name(g)}"
            break
    report.add("intersection", witness is None, witness)

    witness = None
    for g in G.elements():
        w_g = pa.maps[g]
        beta = action[g]
        for p in pa.support(G.inv(g)):
            if p not in pm or w_g.position_map[p] not in pm:
                witness = f"g={G.name(g)}, block {p}: embedding undefined"
                break
            aut = pa.algebra.blocks[p].aut_group
            pieces = (tw[w_g.position_map[p]], w_g.twists[p], beta.twists[pm[p]], tw[p])
            if any(not (0 <= f < aut.order) for f in pieces):
                witness = f"g={G.name(g)}, block {p}: twists live in different groups"
                break
            left_pos = pm[w_g.position_map[p]]
            right_pos = beta.position_map[pm[p]]
            left_tw = aut.mul(pieces[0], pieces[1])
            right_tw = aut.mul(pieces[2], pieces[3])
            if left_pos != right_pos or left_tw != right_tw:
                witness = f"g={G.name(g)}, block {p}"
                break
        if witness:
            break
    report.add("equivariance", witness is None, witness)
    return report


class _Candidate:
    def __init__(self, envelope, action, embedding):
        self.envelope = envelope
        self.action = action
        self.embedding = embedding


def globalize_extension_by_zero(
    block: Union[Block, BlockAlgebra],
    subgroup: Subgroup,
    hom: Mapping[int, int],
) -> GlobalizationResult:
    """Envelope of the extension by zero of a global subgroup action on one
    block: one copy of the block per transversal representative, with beta_g
    moving the g_i component to the j(g,g_i) component under the twist
    hom(h(g,g_i))."""
    from .groups import coset_factorize, left_transversal

    pa = extend_by_zero_algebra(block, subgroup, hom)
    blk = pa.algebra.blocks[0]
    G = subgroup.parent
    transversal = left_transversal(G, subgroup)
    cf = coset_factorize(G, subgroup, transversal)
    m = len(transversal)
    envelope = block_power(blk, m)
    full = envelope.full_ideal()
    hom = dict(hom)
    action = {}
    for g in G.elements():
        pm = {i: cf.j_table[g][i] for i in range(m)}
        twists = {i: hom[cf.h_table[g][i]] for i in range(m)}
        action[g] = WreathMap(full, full, pm, twists)
    embedding = WreathMap(
        pa.algebra.full_ideal(),
        envelope.ideal({0}),
        {0: 0},
        {0: blk.aut_group.identity},
    )
    checks = verify_enveloping(pa, _Candidate(envelope, action, embedding))
    if not checks.ok:
        raise InternalInconsistency("constructed envelope failed its own checks")
    provenance = tuple(G.name(r) for r in transversal.reps)
    return GlobalizationResult(pa, envelope, provenance, action, embedding, checks)


def envelope_block_count(pa: AlgebraPartialAction) -> int:
    """Number of blocks of the envelope of a single-block action: the index
    of the subgroup where the action is global.  Equals 1 exactly when the
    action is global."""
    H, _ = classify_indecomposable(pa)
    return pa.group.order // H.order


def split_partial_action(pa: AlgebraPartialAction) -> list[AlgebraPartialAction]:
    """Split an action on a class-grouped product into one action per class.

    Blocks of each class must occupy contiguous positions; wreath maps
    preserve classes, so each component is invariant and the restriction is
    well defined.  ``product_partial_action`` reassembles the input.
    """
    from .block_algebras import decompose_isotypic

    components = decompose_isotypic(pa.algebra)
    for _, positions in components:
        if positions != tuple(range(positions[0], positions[0] + len(positions))):
            raise MalformedInput("blocks of one class must be contiguous")
    out = []
    for label, positions in components:
        offset = positions[0]
        pos_set = frozenset(positions)
        algebra = BlockAlgebra(tuple(pa.algebra.blocks[p] for p in positions))
        domains = {}
        maps = {}
        for g in pa.group.elements():
            supp = pa.support(g) & pos_set
            src_supp = pa.support(pa.group.inv(g)) & pos_set
            domains[g] = algebra.ideal(p - offset for p in supp)
            source = algebra.ideal(p - offset for p in src_supp)
            pm = {p - offset: pa.maps[g].position_map[p] - offset for p in src_supp}
            tw = {p - offset: pa.maps[g].twists[p] for p in src_supp}
            maps[g] = WreathMap(source, domains[g], pm, tw)
        out.append(AlgebraPartialAction(pa.group, algebra, domains, maps))
    return out


def product_partial_action(components: Sequence[AlgebraPartialAction]) -> AlgebraPartialAction:
    """Blockwise concatenation of actions of one group.

    Raises:
        GroupMismatch: the components are over different groups.
    """
    if not components:
        raise MalformedInput("need at least one component")
    G = components[0].group
    for c in components[1:]:
        if c.group != G:
            raise GroupMismatch("components are over different groups")
    blocks = tuple(itertools.chain.from_iterable(c.algebra.blocks for c in components))
    algebra = BlockAlgebra(blocks)
    offsets = []
    total = 0
    for c in components:
        offsets.append(total)
        total += c.algebra.n_blocks
    domains = {}
    maps = {}
    for g in G.elements():
        supp = set()
        src = set()
        pm: dict[int, int] = {}
        tw: dict[int, int] = {}
        for c, off in zip(components, offsets):
            supp |= {p + off for p in c.support(g)}
            src |= {p + off for p in c.support(G.inv(g))}
            pm.update({p + off: q + off for p, q in c.maps[g].position_map.items()})
            tw.update({p + off: f for p, f in c.maps[g].twists.items()})
        domains[g] = algebra.ideal(supp)
        maps[g] = WreathMap(algebra.ideal(src), domains[g], pm, tw)
    return AlgebraPartialAction(G, algebra, domains, maps)


def restrict_to_idempotents(pa: AlgebraPartialAction) -> SetPartialAction:
    """The induced partial action on the primitive central idempotents: the
    carrier is the block positions, domains are the supports, and the maps
    are the position parts of the wreath maps."""
    G = pa.group
    n = pa.algebra.n_blocks
    domains = {g: pa.support(g) for g in G.elements()}
    maps = {g: dict(pa.maps[g].position_map) for g in G.elements()}
    return SetPartialAction(G, tuple(range(n)), domains, maps)


def lift_set_action(
    spa: SetPartialAction,
    block: Optional[Block] = None,
) -> AlgebraPartialAction:
    """The unique twist-free algebra action inducing a given set action:
    one scalar-line block per carrier point (point i of the carrier becomes
    position i), identity twists everywhere.

    ``restrict_to_idempotents`` inverts this lift; on carriers that are
    already 0..n-1 the round trip is the identity in both directions.
    """
    from .block_algebras import k_line_block

    if block is None:
        block = k_line_block()
    G = spa.group
    n = len(spa.carrier)
    algebra = block_power(block, n)
    pos = {x: i for i, x in enumerate(spa.carrier)}
    e_aut = block.aut_group.identity
    domains = {}
    maps = {}
    for g in G.elements():
        supp = frozenset(pos[x] for x in spa.domains[g])
        src = frozenset(pos[x] for x in spa.domains[G.inv(g)])
        pm = {pos[x]: pos[y] for x, y in spa.maps[g].items()}
        tw = {p: e_aut for p in src}
        domains[g] = algebra.ideal(supp)
        maps[g] = WreathMap(algebra.ideal(src), domains[g], pm, tw)
    return AlgebraPartialAction(G, algebra, domains, maps)


def _transport_twists(
    pa: AlgebraPartialAction,
    sg: SetGlobalization,
) -> dict[tuple[int, int], int]:
    """Assign to every (g, position) pair the accumulated automorphism with
    which a payload placed at that pair's envelope block arrives.

    Pairs embedded at the identity are seeded with the identity twist; the
    rest of each class is reached along the identification edges, and every
    edge is re-checked, so an inconsistent assignment cannot survive.

    Raises:
        TwistTransportConflict: two witness paths disagree — the input
            violates the composition axiom.
    """
    G = pa.group
    aut = pa.algebra.blocks[0].aut_group
    e = G.identity
    n = pa.algebra.n_blocks
    seeds: dict[int, tuple[int, int]] = {}
    for x in range(n):
        seeds.setdefault(sg.pair_class[(e, x)], (e, x))
    transport: dict[tuple[int, int], int] = {}
    for c, witness in enumerate(sg.orbit_witness):
        seed = seeds.get(c, witness)
        transport[seed] = aut.identity
        queue = [seed]
        while queue:
            t, x = queue.pop()
            base = transport[(t, x)]
            for s in G.elements():
                if x not in pa.support(s):
                    continue
                back = pa.maps[G.inv(s)]  # alpha_{s^-1}: S_s -> S_{s^-1}
                nb = (G.mul(t, s), back.position_map[x])
                value = aut.mul(base, aut.inv(back.twists[x]))
                known = transport.get(nb)
                if known is None:
                    transport[nb] = value
                    queue.append(nb)
                elif known != value:
                    raise TwistTransportConflict(
                        f"pair (g={G.name(nb[0])}, block {nb[1]}) receives twists "
                        f"{aut.name(known)} and {aut.name(value)}"
                    )
    return transport


def globalize_block_power(pa: AlgebraPartialAction) -> GlobalizationResult:
    """Envelope of a partial action on a power of one block: one envelope
    block per point of the envelope of the idempotent restriction, with
    twists transported from the original wreath maps along orbit witnesses.

    The result always has at most n·|G| blocks and passes all four
    enveloping checks; twist-transport conflicts (possible only for inputs
    violating the axioms) raise rather than being resolved silently.
    """
    classes = {b.iso_class for b in pa.algebra.blocks}
    if len(classes) != 1:
        raise MalformedInput("the algebra must be a power of a single block")
    blk = pa.algebra.blocks[0]
    G = pa.group
    gamma = restrict_to_idempotents(pa)
    sg = globalize_set(gamma)
    transport = _transport_twists(pa, sg)
    m = sg.size
    envelope = block_power(blk, m)
    full = envelope.full_ideal()
    aut = blk.aut_group
    action = {}
    for g in G.elements():
        pm = {}
        tw = {}
        for c, (t, x) in enumerate(sg.orbit_witness):
            moved = (G.mul(g, t), x)
            pm[c] = sg.pair_class[moved]
            tw[c] = aut.mul(transport[moved], aut.inv(transport[(t, x)]))
        action[g] = WreathMap(full, full, pm, tw)
    e = G.identity
    embed_pm = {x: sg.pair_class[(e, x)] for x in range(pa.algebra.n_blocks)}
    embedding = WreathMap(
        pa.algebra.full_ideal(),
        envelope.ideal(embed_pm.values()),
        embed_pm,
        {x: aut.identity for x in embed_pm},
    )
    checks = verify_enveloping(pa, _Candidate(envelope, action, embedding))
    if not checks.ok:
        raise InternalInconsistency("constructed envelope failed its own checks")
    provenance = tuple((G.name(t), x) for (t, x) in sg.orbit_witness)
    return GlobalizationResult(pa, envelope, provenance, action, embedding, checks)


def globalize_k_blocks(pa: AlgebraPartialAction) -> GlobalizationResult:
    """Envelope of an action on scalar-line blocks: one line block per point
    of the envelope set, permuted exactly as the envelope set action.

    Raises:
        NotKBlocks: some block has nontrivial automorphisms.
    """
    if not pa.algebra.all_line_blocks():
        raise NotKBlocks("all blocks must be scalar lines")
    G = pa.group
    gamma = restrict_to_idempotents(pa)
    sg = globalize_set(gamma)
    blocks = tuple(pa.algebra.blocks[x] for (_, x) in sg.orbit_witness)
    envelope = BlockAlgebra(blocks)
    full = envelope.full_ideal()
    action = {}
    for g in G.elements():
        pm = dict(sg.envelope.maps[g])
        tw = {c: envelope.blocks[c].aut_group.identity for c in envelope.positions()}
        action[g] = WreathMap(full, full, pm, tw)
    e = G.identity
    embed_pm = {x: sg.pair_class[(e, x)] for x in range(pa.algebra.n_blocks)}
    embedding = WreathMap(
        pa.algebra.full_ideal(),
        envelope.ideal(embed_pm.values()),
        embed_pm,
        {x: pa.algebra.blocks[x].aut_group.identity for x in embed_pm},
    )
    checks = verify_enveloping(pa, _Candidate(envelope, action, embedding))
    if not checks.ok:
        raise InternalInconsistency("constructed envelope failed its own checks")
    provenance = tuple((G.name(t), x) for (t, x) in sg.orbit_witness)
    return GlobalizationResult(pa, envelope, provenance, action, embedding, checks)


def globalizations_equivalent(
    a: GlobalizationResult, b: GlobalizationResult
) -> Optional[WreathMap]:
    """An equivariant wreath isomorphism between two envelopes of the same
    partial action, commuting with both embeddings; None if there is none.

    Forced assignments (from the embeddings, closed under both actions) are
    propagated first; blocks outside the orbit of the embedding, which do not
    arise from the pipelines here, are matched by backtracking.
    """
    if a.source.group != b.source.group:
        raise GroupMismatch("envelopes are over different groups")
    if a.source.algebra != b.source.algebra:
        raise MalformedInput("envelopes embed different algebras")
    if a.envelope.n_blocks != b.envelope.n_blocks:
        return None
    G = a.source.group
    n_env = a.envelope.n_blocks

    def propagate(fwd: dict[int, int], tws: dict[int, int]) -> Optional[tuple[dict, dict]]:
        fwd = dict(fwd)
        tws = dict(tws)
        if len(set(fwd.values())) != len(fwd):
            return None
        queue = list(fwd)
        while queue:
            q = queue.pop()
            aut = a.envelope.blocks[q].aut_group
            for g in G.elements():
                wa, wb = a.action[g], b.action[g]
                nq = wa.position_map[q]
                target = wb.position_map[fwd[q]]
                twist = aut.mul(
                    aut.mul(wb.twists[fwd[q]], tws[q]), aut.inv(wa.twists[q])
                )
                if nq in fwd:
                    if fwd[nq] != target or tws[nq] != twist:
                        return None
                else:
                    if target in set(fwd.values()):
                        return None
                    fwd[nq] = target
                    tws[nq] = twist
                    queue.append(nq)
        return fwd, tws

    pa_emb, pa_tw = dict(a.embedding.position_map), dict(a.embedding.twists)
    pb_emb, pb_tw = dict(b.embedding.position_map), dict(b.embedding.twists)
    seed_f = {}
    seed_t = {}
    for p in pa_emb:
        q = pa_emb[p]
        aut = a.source.algebra.blocks[p].aut_group
        seed_f[q] = pb_emb[p]
        seed_t[q] = aut.mul(pb_tw[p], aut.inv(pa_tw[p]))
    state = propagate(seed_f, seed_t)
    if state is None:
        return None

    def extend(fwd: dict[int, int], tws: dict[int, int]) -> Optional[tuple[dict, dict]]:
        remaining = [q for q in range(n_env) if q not in fwd]
        if not remaining:
            return fwd, tws
        q = remaining[0]
        used = set(fwd.values())
        for r in range(n_env):
            if r in used:
                continue
            if a.envelope.blocks[q] != b.envelope.blocks[r]:
                continue
            for c in a.envelope.blocks[q].aut_group.elements():
                nxt = propagate({**fwd, q: r}, {**tws, q: c})
                if nxt is not None:
                    res = extend(*nxt)
                    if res is not None:
                        return res
        return None

    final = extend(*state)
    if final is None:
        return None
    fwd, tws = final
    try:
        iso = WreathMap(a.envelope.full_ideal(), b.envelope.full_ideal(), fwd, tws)
    except Exception:
        return None
    for g in G.elements():
        if wreath_compose(iso, a.action[g]) != wreath_compose(b.action[g], iso):
            return None
    for p in pa_emb:
        aut = a.source.algebra.blocks[p].aut_group
        if iso.position_map[pa_emb[p]] != pb_emb[p]:
            return None
        if aut.mul(iso.twists[pa_emb[p]], pa_tw[p]) != pb_tw[p]:
            return None
    return iso


def _involution_elements(aut: FiniteGroup) -> list[int]:
    return [f for f in aut.elements() if aut.mul(f, f) == aut.identity]


def _twist_options_involution(spa: SetPartialAction, g: int, aut: FiniteGroup) -> list[dict]:
    """All twist assignments for alpha_g with g self-inverse, honoring
    f(alpha_g(p)) = f(p)^-1."""
    m = spa.maps[g]
    pos = {x: i for i, x in enumerate(spa.carrier)}
    fixed = [pos[p] for p in m if m[p] == p]
    two_cycles = sorted(
        {(min(pos[p], pos[m[p]]), max(pos[p], pos[m[p]])) for p in m if m[p] != p}
    )
    invs = _involution_elements(aut)
    options: list[dict] = []
    for fixed_choice in itertools.product(invs, repeat=len(fixed)):
        for pair_choice in itertools.product(aut.elements(), repeat=len(two_cycles)):
            tw = {}
            for p, f in zip(fixed, fixed_choice):
                tw[p] = f
            for (p, q), f in zip(two_cycles, pair_choice):
                tw[p] = f
                tw[q] = aut.inv(f)
            options.append(tw)
    return options


def enumerate_algebra_partial_actions(
    G: FiniteGroup,
    n: int,
    block: Block,
) -> list[AlgebraPartialAction]:
    """All partial actions of G on the n-th power of a block, enumerated as
    set actions on the idempotent positions decorated with every valid twist
    assignment.  Carriers are 0..n-1, so ``restrict_to_idempotents`` and
    ``lift_set_action`` round-trip exactly on the output.
    """
    aut = block.aut_group
    e = G.identity
    inv = [G.inv(g) for g in G.elements()]
    out: list[AlgebraPartialAction] = []
    for spa in enumerate_partial_actions(G, n):
        pos = {x: i for i, x in enumerate(spa.carrier)}
        slots: list[tuple[tuple[int, ...], list]] = []
        seen = set()
        for g in G.elements():
            if g == e or g in seen:
                continue
            seen.add(g)
            gi = inv[g]
            src = sorted(pos[x] for x in spa.domains[gi])
            if gi == g:
                slots.append(((g,), [(tw,) for tw in _twist_options_involution(spa, g, aut)]))
            else:
                seen.add(gi)
                opts = []
                for choice in itertools.product(aut.elements(), repeat=len(src)):
                    tw_g = dict(zip(src, choice))
                    tw_gi = {
                        pos[spa.maps[g][spa.carrier[p]]]: aut.inv(f)
                        for p, f in tw_g.items()
                    }
                    opts.append((tw_g, tw_gi))
                slots.append(((g, gi), opts))
        maps_pos = {
            g: {pos[x]: pos[y] for x, y in spa.maps[g].items()} for g in G.elements()
        }
        dom_pos = {g: frozenset(pos[x] for x in spa.domains[g]) for g in G.elements()}

        def twists_consistent(tw: dict[int, dict[int, int]]) -> bool:
            for g in G.elements():
                Dg_inv = dom_pos[inv[g]]
                for h in G.elements():
                    gh = G.mul(g, h)
                    tw_gh = tw[gh]
                    for p, y in maps_pos[h].items():
                        if y in Dg_inv:
                            if aut.mul(tw[g][y], tw[h][p]) != tw_gh[p]:
                                return False
            return True

        elems_order = [s[0] for s in slots]
        if slots:
            pools = [s[1] for s in slots]
            combos = itertools.product(*pools)
        else:
            combos = [()]
        for combo in combos:
            tw: dict[int, dict[int, int]] = {e: {p: aut.identity for p in range(n)}}
            for elems, choice in zip(elems_order, combo):
                for g, t in zip(elems, choice):
                    tw[g] = t
            if not twists_consistent(tw):
                continue
            domains = {g: dom_pos[g] for g in G.elements()}
            maps = {}
            algebra = block_power(block, n)
            for g in G.elements():
                source = algebra.ideal(dom_pos[inv[g]])
                target = algebra.ideal(dom_pos[g])
                maps[g] = WreathMap(source, target, dict(maps_pos[g]), dict(tw[g]))
            out.append(AlgebraPartialAction(G, algebra, domains, maps))
    return out
