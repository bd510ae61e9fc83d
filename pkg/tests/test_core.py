import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapmss import (
    CapacityError,
    ConstantModel,
    ContractViolation,
    EmptyInstanceError,
    Feature,
    FunctionModel,
    GameOracle,
    Instance,
    ModelEvaluationError,
    NumericGame,
    OcclusionPolicy,
    SubsetMask,
    UnsupportedOcclusion,
    builtin_model,
    evaluate_subset,
    relevant_features,
    tokenize,
)
from shapmss.fixtures import CATALOG

from oracles import brute_relevant, game_table

X1 = "The movie was good, it was actually nice."
XT1 = "Tastes good, refreshing."
XT2 = "Tastes amazing. The smell is also amazing."


def positions_of(instance, *surfaces):
    return {f.position for f in instance if f.surface in surfaces}


class TestInstance:
    def test_positions_must_be_contiguous(self):
        with pytest.raises(ContractViolation):
            Instance((Feature(0, "a"), Feature(2, "b")))

    def test_empty(self):
        with pytest.raises(EmptyInstanceError):
            Instance(())

    def test_mixed_payloads_rejected(self):
        with pytest.raises(ContractViolation):
            Instance((Feature(0, "a"), Feature(1, "x2", 1.0)))

    def test_from_values(self):
        inst = Instance.from_values([5, 4, 0])
        assert inst.surfaces == ("x1", "x2", "x3")
        assert inst.values() == (5.0, 4.0, 0.0)

    def test_delete_absent_renumbers(self):
        inst = Instance.from_tokens("a b c d".split())
        kept = inst.delete_absent(SubsetMask.from_positions(4, [1, 3]))
        assert [(f.position, f.surface) for f in kept] == [(0, "b"), (1, "d")]


class TestSubsetMask:
    def test_full_and_empty(self):
        for n in range(0, 6):
            assert SubsetMask.full(n).cardinality == n
            assert SubsetMask.empty(n).cardinality == 0

    def test_bits_must_fit(self):
        with pytest.raises(ContractViolation):
            SubsetMask(2, 0b100)

    def test_flags_roundtrip(self):
        m = SubsetMask.from_flags([True, False, True])
        assert m.positions() == (0, 2)
        assert m.flags() == (True, False, True)
        assert 2 in m and 1 not in m

    @given(st.integers(1, 8).flatmap(lambda n: st.tuples(*[st.integers(0, 2**n - 1)] * 3).map(lambda t: (n, t))))
    def test_proper_subset_is_strict_partial_order(self, data):
        n, (a, b, c) = data
        A, B, C = (SubsetMask(n, x) for x in (a, b, c))
        assert not A.is_proper_subset(A)
        if A.is_proper_subset(B):
            assert not B.is_proper_subset(A)
            if B.is_proper_subset(C):
                assert A.is_proper_subset(C)
        assert A.is_proper_subset(B) == (set(A.positions()) < set(B.positions()))


class TestEvaluateSubset:
    def test_full_mask_fig1(self, oracle_for):
        o = oracle_for("fig1_m", X1)
        assert evaluate_subset(o, o.full_mask()) == 0.7

    def test_empty_mask_fig1(self, oracle_for):
        o = oracle_for("fig1_m", X1)
        assert evaluate_subset(o, o.empty_mask()) == 0.0

    def test_mss_of_xt1_is_sufficient(self, oracle_for):
        o = oracle_for("fig2_mT", XT1)
        keep = SubsetMask.from_positions(o.n, positions_of(o.instance, "Tastes", "good"))
        assert evaluate_subset(o, keep) == 0.6

    def test_length_mismatch(self, oracle_for):
        o = oracle_for("fig1_m", X1)
        with pytest.raises(ContractViolation):
            evaluate_subset(o, SubsetMask.full(3))

    def test_model_failure_carries_mask(self):
        def boom(features):
            if len(features) == 1:
                raise RuntimeError("nope")
            return 0.0

        o = GameOracle(FunctionModel(boom), Instance.from_tokens(["a", "b"]))
        bad = SubsetMask.from_positions(2, [1])
        with pytest.raises(ModelEvaluationError) as info:
            o(bad)
        assert info.value.mask == bad

    def test_cache_counts_distinct_calls(self, oracle_for):
        o = oracle_for("fig1_m", X1)
        m = SubsetMask.from_positions(o.n, [3])
        first = o(m)
        second = o(m)
        assert first == second
        assert o.eval_count == 1
        o(o.full_mask())
        assert o.eval_count == 2

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 2**7 - 1), min_size=1, max_size=40))
    def test_memoization_transparency(self, sequence):
        model = builtin_model("fig2_mT")
        inst = tokenize(XT2)
        o = GameOracle(model, inst)
        for bits in sequence:
            m = SubsetMask(len(inst), bits)
            assert o(m) == model.predict(inst, m)
        assert o.eval_count == len(set(sequence))


class TestOcclusionPolicy:
    def test_position_dependent_models_refuse_deletion(self):
        with pytest.raises(UnsupportedOcclusion):
            GameOracle(builtin_model("fig2_mT"), tokenize(XT1), OcclusionPolicy.DELETE)
        with pytest.raises(UnsupportedOcclusion):
            GameOracle(builtin_model("fig1_m"), tokenize(X1), OcclusionPolicy.DELETE)

    def test_deletion_renumbers(self):
        seen = []

        def fn(features):
            seen.append(tuple(f.position for f in features))
            return len(features)

        inst = Instance.from_tokens("a b c d".split())
        o = GameOracle(FunctionModel(fn), inst, OcclusionPolicy.DELETE)
        assert o(SubsetMask.from_positions(4, [1, 3])) == 2
        assert seen[-1] == (0, 1)
        assert o(o.empty_mask()) == 0

    def test_occlusion_keeps_positions(self):
        seen = []

        def fn(features):
            seen.append(tuple(f.position for f in features))
            return 0.0

        inst = Instance.from_tokens("a b c d".split())
        o = GameOracle(FunctionModel(fn), inst)
        o(SubsetMask.from_positions(4, [1, 3]))
        assert seen[-1] == (1, 3)

    @given(st.integers(0, 2**8 - 1))
    def test_positional_stability(self, bits):
        inst = Instance.from_tokens("a b c d e f g h".split())
        seen = []
        o = GameOracle(FunctionModel(lambda fs: seen.append(fs) or 0.0), inst)
        m = SubsetMask(8, bits)
        o(m)
        assert all(f == inst[f.position] for f in seen[-1])


class TestRelevantFeatures:
    def test_fig1_x1(self, oracle_for):
        o = oracle_for("fig1_m", X1)
        assert set(relevant_features(o)) == positions_of(o.instance, "good", "nice")

    def test_fig2_xt2(self, oracle_for):
        o = oracle_for("fig2_mT", XT2)
        assert set(relevant_features(o)) == positions_of(o.instance, "Tastes", "amazing", "smell")
        assert len(relevant_features(o)) == 4

    def test_constant_model(self):
        o = GameOracle(ConstantModel(0.3), tokenize(X1))
        assert relevant_features(o) == ()

    def test_without_candidate_hint(self):
        o = GameOracle(FunctionModel(lambda fs: float(any(f.surface == "b" for f in fs))),
                       Instance.from_tokens("a b c".split()))
        assert relevant_features(o) == (1,)

    def test_capacity(self):
        o = GameOracle(NumericGame("max", 21), Instance.from_values(range(1, 22)))
        with pytest.raises(CapacityError):
            relevant_features(o)

    def test_capacity_counts_relevant_not_length(self):
        tokens = ["good"] + ["filler"] * 40
        o = GameOracle(builtin_model("fig1_m"), Instance.from_tokens(tokens))
        assert relevant_features(o) == (0,)

    @pytest.mark.parametrize("name", list(CATALOG))
    def test_dummy_soundness(self, name):
        case = CATALOG[name]
        o = case.oracle()
        table = game_table(o.model, o.instance)
        assert list(relevant_features(o)) == brute_relevant(table, o.n)
