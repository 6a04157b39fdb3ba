import itertools

import pytest

from partial_actions.algebra_actions import (
    AlgebraPartialAction,
    classify_indecomposable,
    enumerate_algebra_partial_actions,
    envelope_block_count,
    extend_by_zero_algebra,
    globalizable_check,
    globalizations_equivalent,
    globalize_block_power,
    globalize_extension_by_zero,
    globalize_k_blocks,
    lift_set_action,
    product_partial_action,
    restrict_to_idempotents,
    split_partial_action,
    verify_algebra_partial_action,
    verify_enveloping,
)
from partial_actions.block_algebras import (
    Block,
    BlockAlgebra,
    WreathMap,
    block_power,
    k_line_block,
    wreath_identity,
)
from partial_actions.errors import (
    GroupMismatch,
    MalformedInput,
    NotAHomomorphism,
    NotKBlocks,
    TwistTransportConflict,
)
from partial_actions.groups import (
    all_subgroups,
    cyclic_group,
    subgroup_closure,
    whole_group,
)
from partial_actions.set_actions import SetPartialAction, enumerate_partial_actions


@pytest.fixture
def quiver_setup(s3, s3_swap_subgroup):
    block = Block("two_way_quiver", s3_swap_subgroup.as_group())
    hom = {m: k for k, m in enumerate(s3_swap_subgroup.members)}
    return block, s3_swap_subgroup, hom


def all_homs(H_group, aut):
    """Brute-force list of homomorphisms between two small groups."""
    out = []
    for images in itertools.product(range(aut.order), repeat=H_group.order):
        if images[H_group.identity] != aut.identity:
            continue
        if all(
            images[H_group.mul(a, b)] == aut.mul(images[a], images[b])
            for a in H_group.elements()
            for b in H_group.elements()
        ):
            out.append(images)
    return out


class TestVerify:
    def test_global_product_action_passes(self, z2):
        algebra = block_power(Block("L", cyclic_group(2)), 2)
        full = algebra.full_ideal()
        swap = WreathMap(full, full, {0: 1, 1: 0}, {0: 1, 1: 1})
        pa = AlgebraPartialAction(z2, algebra, {0: full, 1: full}, {1: swap})
        assert verify_algebra_partial_action(pa).ok

    def test_proper_identity_domain_fails(self, z2):
        algebra = block_power(k_line_block(), 2)
        ideal = algebra.ideal({0})
        pa = AlgebraPartialAction(
            z2, algebra, {0: ideal}, {0: wreath_identity(ideal)}
        )
        report = verify_algebra_partial_action(pa)
        assert not report.items[0].passed

    def test_composition_failure_on_line_blocks(self, z4):
        # alpha_r = swap forces alpha_{r^2} = id; using swap breaks (iii)
        algebra = block_power(k_line_block(), 2)
        full = algebra.full_ideal()
        swap = WreathMap(full, full, {0: 1, 1: 0}, {0: 0, 1: 0})
        pa = AlgebraPartialAction(
            z4,
            algebra,
            {g: full for g in z4.elements()},
            {1: swap, 2: swap, 3: swap},
        )
        report = verify_algebra_partial_action(pa)
        assert any("(iii)" in i.name and not i.passed for i in report.items)

    def test_twist_composition_checked(self, z2):
        # position maps fine, but an order-two group cannot act by an
        # automorphism of order four
        algebra = block_power(Block("L", cyclic_group(4)), 1)
        full = algebra.full_ideal()
        quarter_turn = WreathMap(full, full, {0: 0}, {0: 1})
        pa = AlgebraPartialAction(z2, algebra, {0: full, 1: full}, {1: quarter_turn})
        report = verify_algebra_partial_action(pa)
        assert any("(iii)" in i.name and not i.passed for i in report.items)

    def test_source_mismatch_raises(self, z2):
        algebra = block_power(k_line_block(), 2)
        w = wreath_identity(algebra.ideal({0}))
        pa = AlgebraPartialAction(z2, algebra, {1: algebra.ideal({1})}, {1: w})
        with pytest.raises(MalformedInput):
            verify_algebra_partial_action(pa)


class TestGlobalizable:
    def test_always_globalizable(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0, 1), domains={1: [0]}, maps={1: {0: 0}}))
        assert globalizable_check(pa).globalizable

    def test_single_block_dichotomy(self, quiver_setup, s3):
        block, H, hom = quiver_setup
        pa = extend_by_zero_algebra(block, H, hom)
        check = globalizable_check(pa)
        assert check.dichotomy == {
            g: ("full" if g in (0, 1) else "zero") for g in s3.elements()
        }

    def test_no_dichotomy_for_products(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0, 1), domains={1: [0]}, maps={1: {0: 0}}))
        assert globalizable_check(pa).dichotomy is None


class TestClassifyIndecomposable:
    def test_global_action(self, z2):
        aut = cyclic_group(2)
        pa = extend_by_zero_algebra(Block("L", aut), whole_group(z2), {0: 0, 1: 1})
        H, hom = classify_indecomposable(pa)
        assert H.members == (0, 1)
        assert hom == {0: 0, 1: 1}

    def test_quiver_example(self, quiver_setup):
        block, H_in, hom_in = quiver_setup
        pa = extend_by_zero_algebra(block, H_in, hom_in)
        H, hom = classify_indecomposable(pa)
        assert H.members == H_in.members
        assert hom == hom_in
        assert extend_by_zero_algebra(block, H, hom) == pa

    def test_all_zero_off_identity(self, s3):
        block = Block("L", cyclic_group(2))
        pa = AlgebraPartialAction(s3, BlockAlgebra((block,)))
        H, hom = classify_indecomposable(pa)
        assert H.members == (s3.identity,)
        assert hom == {s3.identity: 0}


class TestExtendByZeroAlgebra:
    def test_not_a_homomorphism(self, s3, s3_swap_subgroup):
        block = Block("L", cyclic_group(4))
        with pytest.raises(NotAHomomorphism):
            extend_by_zero_algebra(block, s3_swap_subgroup, {0: 0, 1: 1})

    def test_hom_must_cover_subgroup(self, s3, s3_swap_subgroup):
        block = Block("L", cyclic_group(2))
        with pytest.raises(NotAHomomorphism):
            extend_by_zero_algebra(block, s3_swap_subgroup, {0: 0})

    def test_domains(self, quiver_setup, s3):
        block, H, hom = quiver_setup
        pa = extend_by_zero_algebra(block, H, hom)
        for g in s3.elements():
            assert pa.support(g) == (frozenset({0}) if g in H.members else frozenset())
        assert verify_algebra_partial_action(pa).ok


class TestGlobalizeExtensionByZero:
    def test_quiver_envelope(self, quiver_setup, s3):
        block, H, hom = quiver_setup
        res = globalize_extension_by_zero(block, H, hom)
        assert res.block_count == 3
        assert res.provenance == ("1", "(13)", "(23)")
        assert res.checks.ok
        beta = res.action[s3.element_by_name("(13)")]
        assert beta.position_map == {0: 1, 1: 0, 2: 2}
        assert beta.twists == {0: 0, 1: 0, 2: 1}

    def test_whole_group_gives_single_block(self, z3):
        block = Block("L", cyclic_group(3))
        res = globalize_extension_by_zero(block, whole_group(z3), {0: 0, 1: 1, 2: 2})
        assert res.block_count == 1
        assert res.action[1].twists == {0: 1}

    def test_trivial_subgroup_gives_regular_swap(self, z2):
        block = Block("L", cyclic_group(2))
        H = subgroup_closure(z2, [])
        res = globalize_extension_by_zero(block, H, {0: 0})
        assert res.block_count == 2
        assert res.action[1].position_map == {0: 1, 1: 0}
        assert set(res.action[1].twists.values()) == {0}


class TestVerifyEnveloping:
    def test_pipeline_output_passes(self, quiver_setup):
        block, H, hom = quiver_setup
        res = globalize_extension_by_zero(block, H, hom)
        pa = extend_by_zero_algebra(block, H, hom)
        assert verify_enveloping(pa, res).ok

    def test_orphan_block_fails_covers(self, z2):
        block = Block("L", cyclic_group(2))
        H = subgroup_closure(z2, [])
        res = globalize_extension_by_zero(block, H, {0: 0})
        pa = extend_by_zero_algebra(block, H, {0: 0})
        bigger = block_power(block, 3)
        full = bigger.full_ideal()
        action = {}
        for g in z2.elements():
            pm = dict(res.action[g].position_map)
            pm[2] = 2
            tw = dict(res.action[g].twists)
            tw[2] = 0
            action[g] = WreathMap(full, full, pm, tw)
        embedding = WreathMap(
            pa.algebra.full_ideal(), bigger.ideal({0}), {0: 0}, {0: 0}
        )
        report = verify_enveloping(
            pa, {"envelope": bigger, "action": action, "embedding": embedding}
        )
        assert not report.items["covers"].passed
        assert report.items["ideal"].passed

    def test_collapsing_embedding_fails_ideal(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0, 1), domains={1: [0]}, maps={1: {0: 0}}))
        res = globalize_k_blocks(pa)
        bad_embedding = {"position_map": {0: 0, 1: 0}, "twists": {0: 0, 1: 0}}
        report = verify_enveloping(
            pa, {"envelope": res.envelope, "action": res.action, "embedding": bad_embedding}
        )
        assert not report.items["ideal"].passed

    def test_wrong_restriction_fails_intersection(self, z2):
        # envelope of the empty-domain action used as a candidate for the
        # full swap action: embedded S_sigma does not match the intersection
        algebra = block_power(k_line_block(), 1)
        full = algebra.full_ideal()
        empty = AlgebraPartialAction(z2, algebra)
        res = globalize_k_blocks(empty)
        swap_action = AlgebraPartialAction(
            z2, algebra, {0: full, 1: full}, {1: wreath_identity(full)}
        )
        report = verify_enveloping(
            pa=swap_action,
            candidate={"envelope": res.envelope, "action": res.action, "embedding": res.embedding},
        )
        assert not report.items["intersection"].passed


class TestEnvelopeBlockCount:
    def test_global_action(self, z4):
        block = Block("L", cyclic_group(2))
        pa = extend_by_zero_algebra(block, whole_group(z4), {0: 0, 1: 1, 2: 0, 3: 1})
        assert envelope_block_count(pa) == 1

    def test_quiver_example(self, quiver_setup):
        block, H, hom = quiver_setup
        assert envelope_block_count(extend_by_zero_algebra(block, H, hom)) == 3

    def test_trivial_subgroup_z4(self, z4):
        block = Block("L", cyclic_group(2))
        H = subgroup_closure(z4, [])
        assert envelope_block_count(extend_by_zero_algebra(block, H, {0: 0})) == 4

    def test_one_iff_global_over_all_single_block_actions(self, s3):
        block = Block("L", cyclic_group(2))
        for pa in enumerate_algebra_partial_actions(s3, 1, block):
            count = envelope_block_count(pa)
            is_global = pa.support(0) and all(pa.support(g) for g in s3.elements())
            assert (count == 1) == bool(is_global)


class TestSplitProduct:
    def _two_component_action(self, z2):
        left = Block("L", cyclic_group(2))
        a1 = enumerate_algebra_partial_actions(z2, 2, left)[5]
        a2 = lift_set_action(SetPartialAction(z2, (0,), domains={1: [0]}, maps={1: {0: 0}}))
        return a1, a2

    def test_single_class_is_singleton(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0, 1)))
        parts = split_partial_action(pa)
        assert len(parts) == 1 and parts[0] == pa

    def test_split_product_round_trip(self, z2):
        a1, a2 = self._two_component_action(z2)
        combined = product_partial_action([a1, a2])
        parts = split_partial_action(combined)
        assert parts == [a1, a2]

    def test_zero_domains_split(self, z2):
        combined = product_partial_action(
            [
                AlgebraPartialAction(z2, block_power(Block("L", cyclic_group(2)), 2)),
                AlgebraPartialAction(z2, block_power(k_line_block(), 1)),
            ]
        )
        parts = split_partial_action(combined)
        assert all(not p.support(1) for p in parts)

    def test_group_mismatch(self, z2, z3):
        a = AlgebraPartialAction(z2, block_power(k_line_block(), 1))
        b = AlgebraPartialAction(z3, block_power(Block("L", cyclic_group(2)), 1))
        with pytest.raises(GroupMismatch):
            product_partial_action([a, b])

    def test_non_contiguous_classes_rejected(self, z2):
        blocks = (k_line_block(), Block("L", cyclic_group(2)), k_line_block())
        pa = AlgebraPartialAction(z2, BlockAlgebra(blocks))
        with pytest.raises(MalformedInput):
            split_partial_action(pa)


class TestRestrictLift:
    def test_lift_then_restrict_is_identity(self, z2):
        for spa in enumerate_partial_actions(z2, 2):
            assert restrict_to_idempotents(lift_set_action(spa)) == spa

    def test_restrict_then_lift_is_identity_on_line_actions(self, z2):
        for spa in enumerate_partial_actions(z2, 2):
            pa = lift_set_action(spa)
            assert lift_set_action(restrict_to_idempotents(pa)) == pa

    def test_global_action_restricts_globally(self, z2):
        algebra = block_power(Block("L", cyclic_group(2)), 2)
        full = algebra.full_ideal()
        swap = WreathMap(full, full, {0: 1, 1: 0}, {0: 1, 1: 1})
        pa = AlgebraPartialAction(z2, algebra, {0: full, 1: full}, {1: swap})
        gamma = restrict_to_idempotents(pa)
        assert gamma.is_global()
        assert gamma.maps[1] == {0: 1, 1: 0}

    def test_quiver_restriction_is_single_point(self, quiver_setup, s3):
        block, H, hom = quiver_setup
        pa = extend_by_zero_algebra(block, H, hom)
        gamma = restrict_to_idempotents(pa)
        assert gamma.carrier == (0,)
        assert gamma.domains[1] == frozenset({0})
        assert gamma.domains[2] == frozenset()


class TestGlobalizeBlockPower:
    def test_single_block_agrees_with_extension_pipeline(self, quiver_setup, s3):
        block, H, hom = quiver_setup
        via_extension = globalize_extension_by_zero(block, H, hom)
        via_power = globalize_block_power(extend_by_zero_algebra(block, H, hom))
        assert via_power.block_count == via_extension.block_count
        for g in s3.elements():
            assert via_power.action[g] == via_extension.action[g]
        assert via_power.embedding == via_extension.embedding
        assert globalizations_equivalent(via_extension, via_power) is not None

    def test_global_action_is_its_own_envelope(self, z2):
        algebra = block_power(Block("L", cyclic_group(2)), 2)
        full = algebra.full_ideal()
        swap = WreathMap(full, full, {0: 1, 1: 0}, {0: 1, 1: 1})
        pa = AlgebraPartialAction(z2, algebra, {0: full, 1: full}, {1: swap})
        res = globalize_block_power(pa)
        assert res.block_count == 2
        assert res.action[1].position_map == {0: 1, 1: 0}
        assert res.action[1].twists == {0: 1, 1: 1}

    def test_half_domain_line_action(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0, 1), domains={1: [0]}, maps={1: {0: 0}}))
        res = globalize_block_power(pa)
        assert res.block_count == 3

    def test_mixed_classes_rejected(self, z2):
        pa = AlgebraPartialAction(
            z2, BlockAlgebra((k_line_block(), Block("L", cyclic_group(2))))
        )
        with pytest.raises(MalformedInput):
            globalize_block_power(pa)

    def test_twist_transport_conflict_surfaces(self, z2):
        # an order-two element acting with an order-four twist is invalid;
        # the conflict must raise, not be absorbed
        algebra = block_power(Block("L", cyclic_group(4)), 1)
        full = algebra.full_ideal()
        quarter_turn = WreathMap(full, full, {0: 0}, {0: 1})
        pa = AlgebraPartialAction(z2, algebra, {0: full, 1: full}, {1: quarter_turn})
        with pytest.raises(TwistTransportConflict):
            globalize_block_power(pa)

    def test_twisted_inputs_all_verify(self, z3):
        block = Block("L", cyclic_group(3))
        for pa in enumerate_algebra_partial_actions(z3, 2, block):
            res = globalize_block_power(pa)
            assert res.checks.ok
            assert res.block_count <= 2 * z3.order


class TestGlobalizeKBlocks:
    def test_global_input_unchanged(self, z2):
        spa = SetPartialAction(z2, (0, 1), domains={1: [0, 1]}, maps={1: {0: 1, 1: 0}})
        pa = lift_set_action(spa)
        res = globalize_k_blocks(pa)
        assert res.block_count == 2

    def test_single_point_zero_domain(self, z2):
        pa = lift_set_action(SetPartialAction(z2, (0,)))
        res = globalize_k_blocks(pa)
        assert res.block_count == 2
        assert res.action[1].position_map == {0: 1, 1: 0}

    def test_all_enumerated_actions(self, z2):
        for spa in enumerate_partial_actions(z2, 2):
            res = globalize_k_blocks(lift_set_action(spa))
            assert res.checks.ok
            assert res.block_count <= 2 * z2.order

    def test_agrees_with_block_power(self, z2):
        for spa in enumerate_partial_actions(z2, 2):
            pa = lift_set_action(spa)
            a = globalize_k_blocks(pa)
            b = globalize_block_power(pa)
            assert a.block_count == b.block_count
            assert all(a.action[g] == b.action[g] for g in z2.elements())
            assert a.embedding == b.embedding

    def test_rejects_twisted_blocks(self, z2):
        pa = AlgebraPartialAction(z2, block_power(Block("L", cyclic_group(2)), 1))
        with pytest.raises(NotKBlocks):
            globalize_k_blocks(pa)


class TestEquivalenceSearch:
    def test_conjugated_envelope_is_equivalent(self, quiver_setup, s3):
        from partial_actions.algebra_actions import GlobalizationResult
        from partial_actions.block_algebras import wreath_compose, wreath_inverse

        block, H, hom = quiver_setup
        original = globalize_extension_by_zero(block, H, hom)
        pa = original.source
        full = original.envelope.full_ideal()
        # relabel the envelope through a nontrivial wreath map
        conjugator = WreathMap(full, full, {0: 2, 1: 0, 2: 1}, {0: 1, 1: 0, 2: 1})
        action = {
            g: wreath_compose(
                wreath_compose(conjugator, original.action[g]), wreath_inverse(conjugator)
            )
            for g in s3.elements()
        }
        emb = original.embedding
        pm = {p: conjugator.position_map[q] for p, q in emb.position_map.items()}
        aut = block.aut_group
        tw = {
            p: aut.mul(conjugator.twists[q], emb.twists[p])
            for p, q in emb.position_map.items()
        }
        embedding = WreathMap(
            emb.source, original.envelope.ideal(pm.values()), pm, tw
        )
        checks = verify_enveloping(
            pa, {"envelope": original.envelope, "action": action, "embedding": embedding}
        )
        assert checks.ok
        relabeled = GlobalizationResult(
            pa, original.envelope, original.provenance, action, embedding, checks
        )
        iso = globalizations_equivalent(original, relabeled)
        assert iso is not None
        assert not iso.is_identity()


class TestEnumerateAlgebraActions:
    def test_single_block_counts_match_subgroup_hom_oracle(self, s3):
        aut = cyclic_group(2)
        block = Block("L", aut)
        actions = enumerate_algebra_partial_actions(s3, 1, block)
        expected = sum(len(all_homs(H.as_group(), aut)) for H in all_subgroups(s3))
        assert len(actions) == expected == 10

    def test_outputs_verify_and_are_distinct(self, z4):
        block = Block("L", cyclic_group(2))
        actions = enumerate_algebra_partial_actions(z4, 2, block)
        for pa in actions:
            assert verify_algebra_partial_action(pa).ok
        for i, a in enumerate(actions):
            for b in actions[i + 1 :]:
                assert a != b

    def test_line_block_reduces_to_set_enumeration(self, z2):
        actions = enumerate_algebra_partial_actions(z2, 2, k_line_block())
        assert len(actions) == len(enumerate_partial_actions(z2, 2))
