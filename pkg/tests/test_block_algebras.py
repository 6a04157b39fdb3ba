import itertools

import pytest

from partial_actions.block_algebras import (
    Block,
    BlockAlgebra,
    block_power,
    decompose_isotypic,
    formal_sum,
    ideal_psi,
    ideals_isomorphic,
    k_line_block,
    make_ideal_iso,
    symbolic_basis,
    wreath_apply,
    wreath_compose,
    wreath_identity,
    wreath_inverse,
    WreathMap,
)
from partial_actions.errors import (
    ClassMismatch,
    CompositionMismatch,
    MalformedInput,
    SupportViolation,
)
from partial_actions.groups import cyclic_group, symmetric_group


@pytest.fixture
def k3():
    return block_power(k_line_block(), 3)


@pytest.fixture
def lambda_z2():
    return Block("L", cyclic_group(2))


class TestIdeals:
    def test_psi_zero(self, k3):
        assert ideal_psi(k3.zero_ideal()) == frozenset()

    def test_psi_full(self, k3):
        assert ideal_psi(k3.full_ideal()) == frozenset({0, 1, 2})

    def test_psi_partial_support(self, k3):
        assert ideal_psi(k3.ideal({0, 2})) == frozenset({0, 2})

    def test_isomorphic_by_cardinality(self, k3):
        assert ideals_isomorphic(k3.ideal({0}), k3.ideal({2}))

    def test_isomorphic_reflexive(self, k3):
        ideal = k3.ideal({1, 2})
        assert ideals_isomorphic(ideal, ideal)

    def test_not_isomorphic_sizes(self, k3):
        assert not ideals_isomorphic(k3.ideal({0}), k3.ideal({0, 1}))

    def test_equivalence_relation_on_line_algebra(self, k3):
        ideals = [k3.ideal(s) for r in range(4) for s in itertools.combinations(range(3), r)]
        for a in ideals:
            assert ideals_isomorphic(a, a)
            for b in ideals:
                assert ideals_isomorphic(a, b) == ideals_isomorphic(b, a)
                for c in ideals:
                    if ideals_isomorphic(a, b) and ideals_isomorphic(b, c):
                        assert ideals_isomorphic(a, c)

    def test_mixed_classes_require_matching_multisets(self, lambda_z2):
        algebra = BlockAlgebra((lambda_z2, lambda_z2, k_line_block()))
        assert not ideals_isomorphic(algebra.ideal({0}), algebra.ideal({2}))
        assert ideals_isomorphic(algebra.ideal({0}), algebra.ideal({1}))

    def test_out_of_range_support(self, k3):
        with pytest.raises(MalformedInput):
            k3.ideal({5})


class TestMakeIdealIso:
    def test_identity(self, k3):
        iso = make_ideal_iso(k3.ideal({0, 1}), k3.ideal({0, 1}), {0: 0, 1: 1})
        assert iso.is_identity()

    def test_relabeling(self, k3):
        iso = make_ideal_iso(k3.ideal({0}), k3.ideal({2}), {0: 2})
        out = wreath_apply(iso, {0: "a"})
        assert out == {2: (0, "a")}

    def test_class_mismatch(self, lambda_z2):
        algebra = BlockAlgebra((lambda_z2, k_line_block()))
        with pytest.raises(ClassMismatch):
            make_ideal_iso(algebra.ideal({0}), algebra.ideal({1}), {0: 1})

    def test_non_bijection_rejected(self, k3):
        with pytest.raises(MalformedInput):
            make_ideal_iso(k3.ideal({0, 1}), k3.ideal({0, 1}), {0: 0, 1: 0})


class TestWreathApply:
    def test_identity_map(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        w = wreath_identity(algebra.full_ideal())
        elem = symbolic_basis(algebra.full_ideal())
        assert wreath_apply(w, elem) == elem

    def test_swap_without_twists(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        full = algebra.full_ideal()
        w = WreathMap(full, full, {0: 1, 1: 0}, {0: 0, 1: 0})
        out = wreath_apply(w, {0: "a", 1: "b"})
        assert out == {1: (0, "a"), 0: (0, "b")}

    def test_swap_with_twists(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        full = algebra.full_ideal()
        w = WreathMap(full, full, {0: 1, 1: 0}, {0: 1, 1: 1})
        out = wreath_apply(w, {0: "a"})
        assert out == {1: (1, "a")}

    def test_twists_accumulate(self, lambda_z2):
        algebra = block_power(lambda_z2, 1)
        full = algebra.full_ideal()
        w = WreathMap(full, full, {0: 0}, {0: 1})
        once = wreath_apply(w, {0: "a"})
        twice = wreath_apply(w, once)
        assert once == {0: (1, "a")}
        assert twice == {0: (0, "a")}  # the twist has order two

    def test_support_violation(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        w = WreathMap(algebra.ideal({0}), algebra.ideal({0}), {0: 0}, {0: 0})
        with pytest.raises(SupportViolation):
            wreath_apply(w, {1: "b"})


class TestWreathCompose:
    def test_compose_with_identity(self, lambda_z2):
        algebra = block_power(lambda_z2, 3)
        full = algebra.full_ideal()
        w = WreathMap(full, full, {0: 1, 1: 2, 2: 0}, {0: 1, 1: 0, 2: 1})
        ident = wreath_identity(full)
        assert wreath_compose(w, ident) == w
        assert wreath_compose(ident, w) == w

    def test_disjoint_transpositions(self, lambda_z2):
        algebra = block_power(lambda_z2, 4)
        full = algebra.full_ideal()
        w1 = WreathMap(full, full, {0: 1, 1: 0, 2: 2, 3: 3}, {0: 1, 1: 0, 2: 0, 3: 0})
        w2 = WreathMap(full, full, {0: 0, 1: 1, 2: 3, 3: 2}, {0: 0, 1: 1, 2: 1, 3: 0})
        c = wreath_compose(w2, w1)
        elem = symbolic_basis(full)
        assert wreath_apply(c, elem) == wreath_apply(w2, wreath_apply(w1, elem))

    def test_inverse_composes_to_identity(self, lambda_z2):
        algebra = block_power(lambda_z2, 3)
        full = algebra.full_ideal()
        w = WreathMap(full, full, {0: 2, 1: 0, 2: 1}, {0: 1, 1: 1, 2: 0})
        assert wreath_compose(w, wreath_inverse(w)).is_identity()
        assert wreath_compose(wreath_inverse(w), w).is_identity()

    def test_mismatch(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        w1 = WreathMap(algebra.ideal({0}), algebra.ideal({1}), {0: 1}, {0: 0})
        w2 = WreathMap(algebra.ideal({0}), algebra.ideal({0}), {0: 0}, {0: 0})
        with pytest.raises(CompositionMismatch):
            wreath_compose(w2, w1)

    def test_apply_respects_composition_exhaustively(self):
        # all wreath maps on two blocks with an order-2 automorphism group
        algebra = block_power(Block("L", cyclic_group(2)), 2)
        full = algebra.full_ideal()
        maps = []
        for pm in ({0: 0, 1: 1}, {0: 1, 1: 0}):
            for t0 in (0, 1):
                for t1 in (0, 1):
                    maps.append(WreathMap(full, full, dict(pm), {0: t0, 1: t1}))
        elem = symbolic_basis(full)
        for w1 in maps:
            for w2 in maps:
                assert wreath_apply(wreath_compose(w2, w1), elem) == wreath_apply(
                    w2, wreath_apply(w1, elem)
                )


class TestWreathGroupStructure:
    @pytest.mark.parametrize("n,aut_order", [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3)])
    def test_full_support_maps_form_group(self, n, aut_order):
        algebra = block_power(Block("L", cyclic_group(aut_order)), n)
        full = algebra.full_ideal()
        perms = list(itertools.permutations(range(n)))
        maps = []
        for perm in perms:
            for twists in itertools.product(range(aut_order), repeat=n):
                maps.append(
                    WreathMap(full, full, {i: perm[i] for i in range(n)}, dict(enumerate(twists)))
                )
        import math

        assert len(maps) == math.factorial(n) * aut_order**n
        sample = maps[:: max(1, len(maps) // 12)]
        table_closed = all(
            any(wreath_compose(a, b) == c for c in maps) for a in sample for b in sample
        )
        assert table_closed
        for w in sample:
            assert wreath_compose(w, wreath_inverse(w)).is_identity()

    def test_no_map_between_mismatched_multisets(self, lambda_z2):
        algebra = BlockAlgebra((lambda_z2, k_line_block()))
        a = algebra.ideal({0})
        b = algebra.ideal({1})
        for theta in ({0: 1},):
            with pytest.raises(ClassMismatch):
                WreathMap(a, b, theta, {0: 0})


class TestDecompose:
    def test_single_class(self, k3):
        assert decompose_isotypic(k3) == [("K", (0, 1, 2))]

    def test_two_classes(self, lambda_z2):
        algebra = BlockAlgebra((lambda_z2, lambda_z2, k_line_block()))
        assert decompose_isotypic(algebra) == [("L", (0, 1)), ("K", (2,))]

    def test_five_line_blocks(self):
        algebra = block_power(k_line_block(), 5)
        assert decompose_isotypic(algebra) == [("K", (0, 1, 2, 3, 4))]


class TestValidation:
    def test_same_label_same_aut_required(self, lambda_z2):
        other = Block("L", symmetric_group(2))
        with pytest.raises(MalformedInput):
            BlockAlgebra((lambda_z2, other))

    def test_empty_algebra_rejected(self):
        with pytest.raises(MalformedInput):
            BlockAlgebra(())

    def test_twist_keys_must_match_source(self, lambda_z2):
        algebra = block_power(lambda_z2, 2)
        with pytest.raises(MalformedInput):
            WreathMap(algebra.ideal({0}), algebra.ideal({1}), {0: 1}, {1: 0})

    def test_formal_sum_normalization(self):
        out = formal_sum({0: "a", 1: (1, "b")})
        assert out == {0: (0, "a"), 1: (1, "b")}
