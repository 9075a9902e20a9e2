import pytest
from hypothesis import given, settings, strategies as st

from lowerq import (
    OperationSum,
    OperationWord,
    RelationTable,
    ThetaIndex,
    adem_rewrite,
    is_admissible,
    op_degree,
    rewrite_sum,
    theta_to_q,
)
from lowerq.errors import RelationDataError, RewriteBudgetError
from lowerq.operations import AffineExpr, RelationTerm, builtin_pair_terms


def w2(*indices):
    return OperationWord(tuple(indices), 2)


words_strategy = st.lists(
    st.integers(min_value=0, max_value=20), min_size=0, max_size=4
).map(lambda ix: OperationWord(tuple(ix), 2))


class TestThetaToQ:
    def test_p2_identity(self):
        assert theta_to_q(ThetaIndex(5, 2)) == 5
        assert theta_to_q(ThetaIndex(0, 2)) == 0

    def test_odd_p_retained_grid(self):
        assert theta_to_q(ThetaIndex(4, 3)) == 1
        assert theta_to_q(ThetaIndex(8, 3)) == 2
        assert theta_to_q(ThetaIndex(8, 5)) == 1

    def test_odd_p_vanishing(self):
        assert theta_to_q(ThetaIndex(3, 3)) is None
        assert theta_to_q(ThetaIndex(5, 3)) is None
        assert theta_to_q(ThetaIndex(2, 5)) is None


class TestOpDegree:
    def test_p2_single(self):
        for i in range(6):
            assert op_degree(w2(2), 2 * i, 1) == 4 * i + 4

    def test_base_cell(self):
        assert op_degree(w2(0), 0, 1) == 2

    def test_empty_word(self):
        for d in (-3, 0, 5):
            assert op_degree(w2(), d, 1) == d

    def test_right_to_left(self):
        # Q_1 then Q_2 on degree 0, dim_g = 1: 0 -> 3 -> 10
        assert op_degree(w2(2, 1), 0, 1) == 10

    def test_odd_p(self):
        w = OperationWord((1,), 3)
        # 3*d + 2*(dim_g+1) + 4
        assert op_degree(w, 2, 1) == 6 + 4 + 4


class TestAdmissibility:
    def test_examples(self):
        assert is_admissible(w2(1, 3))
        assert not is_admissible(w2(7, 1))
        assert is_admissible(w2(5))
        assert is_admissible(w2())

    def test_weakly_increasing_convention(self):
        assert is_admissible(w2(2, 2))
        assert not is_admissible(w2(4, 2))
        assert is_admissible(w2(0, 3, 3, 9))
        assert not is_admissible(w2(0, 3, 2, 9))

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            OperationWord((-1,), 2)


class TestOperationSum:
    def test_collapse_mod_2(self):
        s = OperationSum(2, [(w2(0), 1), (w2(0), 1)])
        assert s == OperationSum(2, {})
        assert s.terms == {}

    def test_singleton(self):
        s = OperationSum.from_word(w2(1, 2))
        assert s.terms == {w2(1, 2): 1}

    def test_mixed_p_rejected(self):
        with pytest.raises(ValueError):
            OperationSum(2, {OperationWord((1,), 3): 1})


class TestBuiltinRelations:
    def test_known_expansions(self):
        # Q_4 Q_0 = Q_0 Q_2 and Q_2 Q_0 = Q_0 Q_1
        assert builtin_pair_terms(2, 4, 0) == ((1, (0, 2)),)
        assert builtin_pair_terms(2, 2, 0) == ((1, (0, 1)),)
        # Q_1 Q_0 = 0 (empty expansion)
        assert builtin_pair_terms(2, 1, 0) == ()
        # Q_4 Q_2 = Q_2 Q_3
        assert builtin_pair_terms(2, 4, 2) == ((1, (2, 3)),)

    def test_outputs_always_admissible(self):
        for r in range(30):
            for s in range(r):
                for _, (outer, inner) in builtin_pair_terms(2, r, s):
                    assert outer <= inner

    def test_admissible_pair_has_no_relation(self):
        with pytest.raises(ValueError):
            builtin_pair_terms(2, 2, 2)

    def test_odd_p_unavailable(self):
        with pytest.raises(RelationDataError):
            builtin_pair_terms(3, 4, 0)


class TestAdemRewrite:
    def test_admissible_fixed(self):
        for word in (w2(), w2(3), w2(1, 3), w2(0, 0, 5)):
            assert adem_rewrite(word) == OperationSum.from_word(word)

    def test_pair_example(self):
        assert adem_rewrite(w2(4, 0)) == OperationSum.from_word(w2(0, 2))

    def test_projection(self):
        for word in (w2(9, 4), w2(7, 3, 1), w2(12, 6, 2)):
            once = adem_rewrite(word)
            assert rewrite_sum(once) == once

    @given(word=words_strategy)
    @settings(max_examples=100, deadline=None)
    def test_output_admissible(self, word):
        for out in adem_rewrite(word).terms:
            assert is_admissible(out)

    @given(word=words_strategy, d=st.integers(min_value=0, max_value=12))
    @settings(max_examples=100, deadline=None)
    def test_degree_preserved(self, word, d):
        want = op_degree(word, d, 1)
        for out in adem_rewrite(word).terms:
            assert op_degree(out, d, 1) == want

    def test_confluence_length_3(self):
        # identical normal forms under either reduction order
        for a in range(13):
            for b in range(13):
                for c in range(13):
                    word = w2(a, b, c)
                    left = rewrite_sum(OperationSum.from_word(word), order="leftmost")
                    right = rewrite_sum(OperationSum.from_word(word), order="rightmost")
                    assert left == right, (a, b, c)

    def test_budget_guard(self):
        with pytest.raises(RewriteBudgetError):
            adem_rewrite(w2(24, 12, 6, 3), budget=1)

    def test_budget_never_fires_for_small_indices(self):
        for r in range(65):
            for s in range(65):
                adem_rewrite(w2(r, s))
        for word in (w2(64, 48, 32, 16), w2(64, 63, 62, 61), w2(50, 40, 30, 20)):
            adem_rewrite(word)

    def test_odd_p_needs_override_data(self):
        bad = OperationWord((4, 0), 3)
        with pytest.raises(RelationDataError):
            adem_rewrite(bad)
        fine = OperationWord((0, 4), 3)
        assert adem_rewrite(fine) == OperationSum.from_word(fine)

    def test_unknown_order_rejected(self):
        with pytest.raises(ValueError):
            adem_rewrite(w2(3, 1), order="sideways")


class TestRelationOverrides:
    def test_explicit_override_replaces_pair(self):
        table = RelationTable(2, {(4, 0): (RelationTerm(1, AffineExpr(1), AffineExpr(1)),)})
        assert table.terms_for(4, 0) == ((1, (1, 1)),)
        # unlisted pairs fall back to the builtin family
        assert table.terms_for(2, 0) == ((1, (0, 1)),)

    def test_parametric_override_matches_builtin(self):
        r, s = 9, 4
        term = RelationTerm(
            coeff=(AffineExpr(-s - 1, 1), AffineExpr(-r - s, 2)),
            outer=AffineExpr(r + 2 * s, -2),
            inner=AffineExpr(0, 1),
        )
        table = RelationTable(2, {(r, s): (term,)})
        assert table.terms_for(r, s) == builtin_pair_terms(2, r, s)

    def test_unbounded_summation_rejected(self):
        term = RelationTerm(coeff=1, outer=AffineExpr(0, 1), inner=AffineExpr(0))
        with pytest.raises(RelationDataError):
            term.expand(2)

    def test_negative_indices_dropped(self):
        term = RelationTerm(1, AffineExpr(-2), AffineExpr(3))
        assert term.expand(2) == []
