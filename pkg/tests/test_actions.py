import pytest
from hypothesis import given, settings, strategies as st

from lowerq import (
    ActionTable,
    GeneratorFamily,
    GradedElement,
    JoinAlgebraSpec,
    ModuleSpec,
    OperationSum,
    OperationWord,
    builtin_module,
    flip_coefficient,
    op_degree,
    s1_action,
    s1_algebra,
    s1_candidate_table,
    s1_module,
)
from lowerq.actions import S1_FAMILY
from lowerq.errors import ActionRangeError

M = s1_module()


def x(i, c=1):
    return GradedElement.generator(S1_FAMILY, 2, i, c)


def w2(*indices):
    return OperationWord(tuple(indices), 2)


word_lists = st.lists(st.integers(min_value=0, max_value=12), min_size=0, max_size=3)


class TestS1Action:
    def test_base_cases(self):
        assert s1_action(0, 0) == x(1)
        assert s1_action(2, 1).is_zero()  # C(2,1) even
        assert s1_action(4, 1) == x(5)  # C(3,2) odd

    def test_odd_index_vanishes(self):
        for i in range(20):
            assert s1_action(1, i).is_zero()
            assert s1_action(7, i).is_zero()

    def test_base_row(self):
        for j in range(51):
            assert s1_action(2 * j, 0) == x(j + 1), j

    def test_degrees_match_op_degree(self):
        for op in range(51):
            for gen in range(51):
                out = s1_action(op, gen)
                if not out.is_zero():
                    assert out.degree() == op_degree(w2(op), 2 * gen, 1)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            s1_action(-2, 0)


class TestApplyWord:
    def test_empty_word(self):
        el = x(3) + x(5)
        assert M.apply_word(w2(), el) == el

    def test_two_step(self):
        # Q_0 Q_0 x_0 = Q_0 x_1 = x_3
        assert M.apply_word(w2(0, 0), x(0)) == x(3)

    def test_linearity_example(self):
        # Q_2 (x_1 + x_2) = 0 + C(3,1) x_6 = x_6
        assert M.apply_word(w2(2), x(1) + x(2)) == x(6)

    @given(w1=word_lists, w2_=word_lists, gen=st.integers(min_value=0, max_value=8))
    @settings(max_examples=80, deadline=None)
    def test_composition_coherence(self, w1, w2_, gen):
        word_cat = w2(*(w1 + w2_))
        via_two = M.apply_word(w2(*w1), M.apply_word(w2(*w2_), x(gen)))
        assert M.apply_word(word_cat, x(gen)) == via_two

    @given(
        word=word_lists,
        a=st.integers(min_value=0, max_value=8),
        b=st.integers(min_value=0, max_value=8),
    )
    @settings(max_examples=80, deadline=None)
    def test_linearity(self, word, a, b):
        lhs = M.apply_word(w2(*word), x(a) + x(b))
        rhs = M.apply_word(w2(*word), x(a)) + M.apply_word(w2(*word), x(b))
        assert lhs == rhs


class TestApplySum:
    def test_singleton(self):
        s = OperationSum.from_word(w2(4))
        assert M.apply_sum(s, x(1)) == M.apply_word(w2(4), x(1))

    def test_empty_sum(self):
        assert M.apply_sum(OperationSum(2, {}), x(3)).is_zero()

    def test_doubled_word_collapses(self):
        s = OperationSum(2, [(w2(0), 1), (w2(0), 1)])
        assert M.apply_sum(s, x(0)).is_zero()


class TestCartanExpand:
    def test_n0_single_summand(self):
        m = s1_module(s1_candidate_table("ones", 10))
        lhs = m.cartan_expand(0, x(0), x(1))
        rhs = m.algebra.join_product(m.apply_op(0, x(0)), m.apply_op(0, x(1)))
        assert lhs == rhs

    def test_ones_table_example(self):
        m = s1_module(s1_candidate_table("ones", 10))
        # both routes vanish at n = 2 on (x_0, x_0)
        assert m.cartan_expand(2, x(0), x(0)).is_zero()
        assert m.apply_op(2, m.algebra.join_product(x(0), x(0))).is_zero()

    def test_zero_argument(self):
        m = s1_module(s1_candidate_table("ones", 10))
        zero = GradedElement.zero(S1_FAMILY, 2)
        assert m.cartan_expand(5, zero, x(0)).is_zero()
        assert m.cartan_expand(5, x(0), zero).is_zero()


class TestCandidateTables:
    def test_kinds(self):
        ones = s1_candidate_table("ones", 6)
        bino = s1_candidate_table("binomial", 6)
        zero = s1_candidate_table("zero", 6)
        assert ones[(0, 0)] == ((1, 1),)
        assert bino[(0, 0)] == ((1, 1),)  # C(1,0) = 1
        assert bino[(1, 2)] == ()  # C(4,1) = 4 even
        assert zero[(2, 3)] == ()
        assert set(ones) == set(bino) == set(zero)

    def test_tables_satisfy_degree_law(self):
        for kind in ("ones", "binomial", "zero"):
            spec = s1_algebra(s1_candidate_table(kind, 12))
            assert spec.degree_law_violations() == []

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            s1_candidate_table("mystery", 4)


class TestActionTable:
    def algebra(self):
        return JoinAlgebraSpec(2, 1, S1_FAMILY)

    def test_lookup_and_range(self):
        table = ActionTable(4, 4, {(0, 0): [(1, 1)]})
        assert table.lookup(0, 0) == ((1, 1),)
        assert table.lookup(3, 3) == ()  # inside rectangle, omitted = zero
        with pytest.raises(ActionRangeError):
            table.lookup(5, 0)
        with pytest.raises(ActionRangeError):
            table.lookup(0, 5)

    def test_module_validates_degree_law(self):
        good = ActionTable(2, 2, {(0, 0): [(1, 1)]})
        ModuleSpec(self.algebra(), good)
        bad = ActionTable(2, 2, {(0, 0): [(1, 2)]})
        with pytest.raises(ValueError):
            ModuleSpec(self.algebra(), bad)

    def test_apply_word_out_of_range_errors(self):
        m = ModuleSpec(self.algebra(), ActionTable(2, 2, {(0, 0): [(1, 1)]}))
        with pytest.raises(ActionRangeError):
            m.apply_word(w2(4), x(0))

    def test_entry_outside_rectangle_rejected(self):
        with pytest.raises(ValueError):
            ActionTable(2, 2, {(3, 0): [(1, 1)]})

    def test_odd_p_tabulated_module(self):
        # p = 3, dim_g = 0, degree rule i -> i: op 0 sends degree d to 3d + 2
        fam = GeneratorFamily("e", 1, 0)
        algebra = JoinAlgebraSpec(3, 0, fam)
        module = ModuleSpec(algebra, ActionTable(2, 4, {(0, 0): [(2, 2)]}))
        e0 = GradedElement.generator(fam, 3, 0)
        out = module.apply_word(OperationWord((0,), 3), e0)
        assert out == GradedElement.generator(fam, 3, 2, 2)
        assert module.apply_word(OperationWord((0,), 3), 2 * e0) == GradedElement.generator(fam, 3, 2, 1)
        # inside the rectangle, unlisted cells act as zero
        assert module.apply_word(OperationWord((0, 0), 3), e0).is_zero()


class TestModulePlumbing:
    def test_builtin_registry(self):
        assert builtin_module("s1_p2").p == 2
        with pytest.raises(ValueError):
            builtin_module("nope")

    def test_builtin_requires_matching_algebra(self):
        wrong = JoinAlgebraSpec(2, 0, S1_FAMILY)
        with pytest.raises(ValueError):
            ModuleSpec(wrong, "s1_p2")

    def test_flip_coefficient(self):
        flipped = flip_coefficient(M, 4, 1)
        # true coefficient C(3,2) = 1 flips to 0
        assert M.act(4, 1) == x(5)
        assert flipped.act(4, 1).is_zero()
        # everything else untouched
        assert flipped.act(4, 0) == M.act(4, 0)
        assert flipped.act(0, 1) == M.act(0, 1)

    def test_flip_without_target_rejected(self):
        with pytest.raises(ValueError):
            flip_coefficient(M, 1, 0)  # odd op: target degree is odd
