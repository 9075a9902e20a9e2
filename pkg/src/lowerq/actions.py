"""Concrete operation actions on graded modules over a join algebra.

The headline module is the mod-2 homology of the circle group's
classifying space: generators x_i in degree 2i, with the closed-form
action

    Q_{2j}(x_i) = C(i+j, j) * x_{2i+j+1}        (p = 2, dim_g = 1)

and Q_odd = 0, forced by parity: the target degree would be odd while the
module is concentrated in even degrees. Other modules are supplied as
explicit action tables over a declared index rectangle; queries outside
the rectangle are errors, not zeros.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, Sequence

from .algebra import GeneratorFamily, GradedElement, JoinAlgebraSpec
from .errors import ActionRangeError, FamilyMismatchError
from .fields import lucas_binom
from .operations import OperationSum, OperationWord, single_op_degree

ActionEntry = tuple[tuple[int, int], ...]  # ((coeff, gen_index), ...)

S1_FAMILY = GeneratorFamily("x", 2, 0)


def s1_algebra(product_table=None) -> JoinAlgebraSpec:
    """The p=2, dim_g=1 join algebra over the x_i family."""
    return JoinAlgebraSpec(2, 1, S1_FAMILY, product_table)


def s1_action(op_index: int, gen_index: int) -> GradedElement:
    """Closed-form circle action: Q_{2j}(x_i) = C(i+j, j) x_{2i+j+1}, Q_odd = 0."""
    if op_index < 0 or gen_index < 0:
        raise ValueError("indices must be nonnegative")
    if op_index % 2:
        return GradedElement.zero(S1_FAMILY, 2)
    j = op_index // 2
    c = lucas_binom(gen_index + j, j, 2)
    return GradedElement(S1_FAMILY, 2, {2 * gen_index + j + 1: c})


class ActionTable:
    """Tabulated action over the rectangle op <= max_op, gen <= max_gen.

    Entries omitted inside the rectangle are zero; queries outside it raise.
    """

    def __init__(
        self,
        max_op: int,
        max_gen: int,
        entries: Mapping[tuple[int, int], Iterable[tuple[int, int]]],
    ):
        if max_op < 0 or max_gen < 0:
            raise ValueError("rectangle bounds must be nonnegative")
        self.max_op = max_op
        self.max_gen = max_gen
        table: dict[tuple[int, int], ActionEntry] = {}
        for (op, gen), terms in entries.items():
            if not (0 <= op <= max_op and 0 <= gen <= max_gen):
                raise ValueError(f"entry ({op}, {gen}) outside declared rectangle")
            table[(op, gen)] = tuple(terms)
        self.entries = table

    def lookup(self, op: int, gen: int) -> ActionEntry:
        if not (0 <= op <= self.max_op and 0 <= gen <= self.max_gen):
            raise ActionRangeError(
                f"action queried at ({op}, {gen}) outside rectangle "
                f"op <= {self.max_op}, gen <= {self.max_gen}"
            )
        return self.entries.get((op, gen), ())


ActionRule = str | ActionTable | Callable[[int, int], GradedElement]


class ModuleSpec:
    """A graded basis with an operation action over a JoinAlgebraSpec."""

    BUILTIN_ACTIONS = ("s1_p2",)

    def __init__(self, algebra: JoinAlgebraSpec, action: ActionRule):
        self.algebra = algebra
        self.action = action
        if isinstance(action, str):
            if action != "s1_p2":
                raise ValueError(f"unknown builtin action {action!r}")
            if algebra.p != 2 or algebra.dim_g != 1 or (
                algebra.family.degree_a,
                algebra.family.degree_b,
            ) != (2, 0):
                raise ValueError("s1_p2 action requires p=2, dim_g=1 and degree rule 2i")
        elif isinstance(action, ActionTable):
            self._check_table_degrees(action)
        elif not callable(action):
            raise TypeError("action must be a builtin name, an ActionTable or a callable")

    def _check_table_degrees(self, table: ActionTable) -> None:
        fam, p, dim_g = self.algebra.family, self.algebra.p, self.algebra.dim_g
        for (op, gen), terms in sorted(table.entries.items()):
            want = single_op_degree(p, op, fam.degree(gen), dim_g)
            for _, idx in terms:
                if fam.degree(idx) != want:
                    raise ValueError(
                        f"action entry ({op}, {gen}) -> index {idx} breaks the degree law"
                    )

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def family(self) -> GeneratorFamily:
        return self.algebra.family

    def basis_element(self, index: int, coeff: int = 1) -> GradedElement:
        return GradedElement.generator(self.family, self.p, index, coeff)

    def zero(self) -> GradedElement:
        return GradedElement.zero(self.family, self.p)

    def act(self, op_index: int, gen_index: int) -> GradedElement:
        """Apply a single operation to a single generator."""
        if isinstance(self.action, str):
            out = s1_action(op_index, gen_index)
            if self.family != S1_FAMILY:  # same rule under another generator name
                out = GradedElement(self.family, self.p, out.terms)
            return out
        if isinstance(self.action, ActionTable):
            return GradedElement(
                self.family, self.p, _entry_dict(self.action.lookup(op_index, gen_index))
            )
        return self.action(op_index, gen_index)

    def apply_op(self, op_index: int, x: GradedElement) -> GradedElement:
        acc: dict[int, int] = {}
        for idx, c in x.terms.items():
            for idx2, c2 in self.act(op_index, idx).terms.items():
                acc[idx2] = acc.get(idx2, 0) + c * c2
        return GradedElement(self.family, self.p, acc)

    def apply_word(self, w: OperationWord | Sequence[int], x: GradedElement) -> GradedElement:
        """Apply a word right to left, extended linearly."""
        if x.family != self.family or x.p != self.p:
            raise FamilyMismatchError("element does not live over this module")
        indices = w.indices if isinstance(w, OperationWord) else tuple(w)
        for i in reversed(indices):
            x = self.apply_op(i, x)
        return x

    def apply_sum(self, s: OperationSum, x: GradedElement) -> GradedElement:
        """Coefficient-weighted sum of apply_word over the terms of s."""
        acc = self.zero()
        for word, c in s.sorted_terms():
            acc = acc + c * self.apply_word(word, x)
        return acc

    def cartan_expand(self, n: int, a: GradedElement, b: GradedElement) -> GradedElement:
        """sum_{i+j=n} Q_i(a) * Q_j(b), the product-side of the Cartan formula."""
        if n < 0:
            raise ValueError("operation index must be nonnegative")
        acc = self.zero()
        for i in range(n + 1):
            qa = self.apply_op(i, a)
            qb = self.apply_op(n - i, b)
            if qa.is_zero() or qb.is_zero():
                continue
            acc = acc + self.algebra.join_product(qa, qb)
        return acc


def _entry_dict(entry: ActionEntry) -> dict[int, int]:
    acc: dict[int, int] = {}
    for coeff, idx in entry:
        acc[idx] = acc.get(idx, 0) + coeff
    return acc


def apply_word(m: ModuleSpec, w: OperationWord | Sequence[int], x: GradedElement) -> GradedElement:
    return m.apply_word(w, x)


def apply_sum(m: ModuleSpec, s: OperationSum, x: GradedElement) -> GradedElement:
    return m.apply_sum(s, x)


def cartan_expand(m: ModuleSpec, n: int, a: GradedElement, b: GradedElement) -> GradedElement:
    return m.cartan_expand(n, a, b)


# --- candidate product tables for the circle module -------------------

CANDIDATE_TABLE_KINDS = ("ones", "binomial", "zero")


def s1_candidate_table(kind: str, max_pair_sum: int) -> dict[tuple[int, int], ActionEntry]:
    """Candidate structure constants for x_a * x_b, for all a <= b with
    a + b <= max_pair_sum.

    The degree law forces the target x_{a+b+1}; what is unknown is the
    coefficient. "ones" puts C = 1 everywhere, "binomial" puts
    C(a+b+1, a), "zero" defines every product to vanish. None of these is
    privileged; the consistency checks and the solver adjudicate.
    """
    if kind not in CANDIDATE_TABLE_KINDS:
        raise ValueError(f"unknown candidate table {kind!r}")
    table: dict[tuple[int, int], ActionEntry] = {}
    for a in range(max_pair_sum + 1):
        for b in range(a, max_pair_sum - a + 1):
            if kind == "ones":
                coeff = 1
            elif kind == "binomial":
                coeff = lucas_binom(a + b + 1, a, 2)
            else:
                coeff = 0
            table[(a, b)] = ((coeff, a + b + 1),) if coeff else ()
    return table


def s1_module(product_table=None) -> ModuleSpec:
    """The circle module with the closed-form p=2 action."""
    return ModuleSpec(s1_algebra(product_table), "s1_p2")


BUILTIN_MODULES: dict[str, Callable[..., ModuleSpec]] = {"s1_p2": s1_module}


def builtin_module(name: str, product_table=None) -> ModuleSpec:
    try:
        factory = BUILTIN_MODULES[name]
    except KeyError:
        raise ValueError(f"unknown builtin module {name!r}") from None
    return factory(product_table)


def flip_coefficient(module: ModuleSpec, op_index: int, gen_index: int) -> ModuleSpec:
    """A copy of the module with one action coefficient changed by +1 mod p.

    The corrupted cell keeps its degree-lawful target index, so the
    corruption is invisible to degree checks and only relation
    verification can catch it. Used to confirm the harness is not
    vacuously green.
    """
    fam, p, dim_g = module.family, module.p, module.algebra.dim_g
    target_deg = single_op_degree(p, op_index, fam.degree(gen_index), dim_g)
    target = fam.index_for_degree(target_deg)
    if target is None:
        raise ValueError(
            f"cell ({op_index}, {gen_index}) has no degree-lawful target to corrupt"
        )
    base = module.act

    def corrupted(op: int, gen: int) -> GradedElement:
        out = base(op, gen)
        if (op, gen) != (op_index, gen_index):
            return out
        terms = dict(out.terms)
        terms[target] = terms.get(target, 0) + 1
        return GradedElement(fam, p, terms)

    return ModuleSpec(module.algebra, corrupted)
