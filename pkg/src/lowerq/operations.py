"""Lower-indexed operation words, degree bookkeeping and Adem rewriting.

Indexing convention. The raw operations theta_i come one per equivariant
chain degree i >= 0. For p = 2 every theta_i is kept and written Q_i; for
odd p only the indices i = 2t(p-1) survive and Q_t denotes theta_{2t(p-1)}.
A word (i_1, ..., i_k) means the composite Q_{i_1} o ... o Q_{i_k} with the
rightmost index applied first.

Degrees. Q_j raises the degree d of its argument to

    p = 2:    2*d + (dim_g + 1) + j
    p odd:    p*d + (p-1)*(dim_g + 1) + 2*j*(p-1)

Writing D = d + dim_g + 1 for the shifted degree, both cases read
D -> p*D + (index weight), which is why relation coefficients below can
depend on the indices alone and never on the degree of the argument.

Admissibility and relations. A word is admissible when its indices are
weakly increasing (adjacent pairs satisfy i_t <= i_{t+1}); admissible
words are the normal forms of the rewriting system. The shipped relation
family for p = 2 expands a non-admissible pair (r, s), r > s, as

    Q_r Q_s = sum_w C(w - s - 1, 2w - r - s) Q_{r + 2s - 2w} Q_w

with terms of negative outer index dropped (negative-degree chain classes
vanish, so Q_i = 0 for i < 0). Every surviving term satisfies
outer <= s < w, so a single expansion of a pair is already admissible.
The family is configuration, not an axiom: the test suite certifies it
against the closed-form circle-group action before it is trusted, and a
JSON override can replace individual pairs. No odd-p family is shipped;
rewriting at odd p requires override data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import RelationDataError, RewriteBudgetError
from .fields import check_prime, lucas_binom

DEFAULT_REWRITE_BUDGET = 1_000_000


@dataclass(frozen=True)
class OperationWord:
    """A composite of lower-indexed operations; rightmost index acts first."""

    indices: tuple[int, ...]
    p: int

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        check_prime(self.p)
        if any(i < 0 for i in self.indices):
            raise ValueError("operation indices must be nonnegative")

    def __len__(self):
        return len(self.indices)

    def __repr__(self):
        body = " ".join(f"Q_{i}" for i in self.indices) or "id"
        return f"<{body} (p={self.p})>"


@dataclass(frozen=True)
class ThetaIndex:
    """Chain-level operation index, before discarding the vanishing ones."""

    i: int
    p: int


def theta_to_q(t: ThetaIndex) -> int | None:
    """Operation index retained from theta_i, or None when theta_i vanishes.

    For p = 2 every index survives unchanged. For odd p only multiples of
    2(p-1) survive; the rest are identically zero and map to None.
    """
    check_prime(t.p)
    if t.i < 0:
        raise ValueError("theta index must be nonnegative")
    if t.p == 2:
        return t.i
    step = 2 * (t.p - 1)
    return t.i // step if t.i % step == 0 else None


def single_op_degree(p: int, op_index: int, input_degree: int, dim_g: int) -> int:
    """Degree after applying one operation to a class of the given degree."""
    if p == 2:
        return 2 * input_degree + dim_g + 1 + op_index
    return p * input_degree + (p - 1) * (dim_g + 1) + 2 * op_index * (p - 1)


def op_degree(w: OperationWord, input_degree: int, dim_g: int) -> int:
    """Degree after applying the whole word, rightmost index first."""
    d = input_degree
    for i in reversed(w.indices):
        d = single_op_degree(w.p, i, d, dim_g)
    return d


def is_admissible(w: OperationWord) -> bool:
    """True when every adjacent index pair is weakly increasing."""
    idx = w.indices
    return all(idx[t] <= idx[t + 1] for t in range(len(idx) - 1))


class OperationSum:
    """F_p-linear combination of operation words, in canonical sparse form."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: Mapping[OperationWord, int] | Iterable = ()):
        check_prime(p)
        items = terms.items() if isinstance(terms, Mapping) else terms
        canon: dict[OperationWord, int] = {}
        for word, c in items:
            if not isinstance(word, OperationWord):
                word = OperationWord(tuple(word), p)
            if word.p != p:
                raise ValueError("all words in a sum must share p")
            c = (canon.get(word, 0) + c) % p
            if c:
                canon[word] = c
            else:
                canon.pop(word, None)
        self.p = p
        self.terms = canon  # treat as read-only

    @classmethod
    def from_word(cls, word: OperationWord, coeff: int = 1) -> "OperationSum":
        return cls(word.p, {word: coeff})

    def __add__(self, other: "OperationSum") -> "OperationSum":
        if self.p != other.p:
            raise ValueError("sums over different primes")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return OperationSum(self.p, terms)

    def __rmul__(self, c: int) -> "OperationSum":
        return OperationSum(self.p, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OperationSum)
            and self.p == other.p
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self) -> list[tuple[OperationWord, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].indices)

    def __repr__(self):
        if not self.terms:
            return "<0>"
        parts = []
        for w, c in self.sorted_terms():
            body = " ".join(f"Q_{i}" for i in w.indices) or "id"
            parts.append(body if c == 1 else f"{c}*{body}")
        return "<" + " + ".join(parts) + f" (p={self.p})>"


# --- relation tables --------------------------------------------------


@dataclass(frozen=True)
class AffineExpr:
    """const + slope*w in the summation variable w."""

    const: int
    slope: int = 0

    def at(self, w: int) -> int:
        return self.const + self.slope * w

    @property
    def is_constant(self) -> bool:
        return self.slope == 0


@dataclass(frozen=True)
class RelationTerm:
    """One (possibly parametric) term of a relation right-hand side.

    coeff is either a plain integer or a pair (n_expr, k_expr) standing for
    the binomial coefficient C(n_expr(w), k_expr(w)); outer and inner give
    the replacement index pair. A term involving the summation variable
    expands over the (finite) range where the binomial is combinatorially
    nonzero; terms whose outer or inner index comes out negative are
    dropped as zero operations.
    """

    coeff: int | tuple[AffineExpr, AffineExpr]
    outer: AffineExpr
    inner: AffineExpr

    def uses_variable(self) -> bool:
        if isinstance(self.coeff, tuple) and not (
            self.coeff[0].is_constant and self.coeff[1].is_constant
        ):
            return True
        return not (self.outer.is_constant and self.inner.is_constant)

    def expand(self, p: int) -> list[tuple[int, tuple[int, int]]]:
        if not self.uses_variable():
            if isinstance(self.coeff, tuple):
                c = lucas_binom(self.coeff[0].at(0), self.coeff[1].at(0), p)
            else:
                c = self.coeff % p
            out, inn = self.outer.at(0), self.inner.at(0)
            if c == 0 or out < 0 or inn < 0:
                return []
            return [(c, (out, inn))]
        if not isinstance(self.coeff, tuple):
            raise RelationDataError(
                "parametric relation term needs a binomial coefficient to bound its range"
            )
        n_expr, k_expr = self.coeff
        lo, hi = _binom_support(n_expr, k_expr)
        terms = []
        for w in range(lo, hi + 1):
            c = lucas_binom(n_expr.at(w), k_expr.at(w), p)
            out, inn = self.outer.at(w), self.inner.at(w)
            if c and out >= 0 and inn >= 0:
                terms.append((c, (out, inn)))
        return terms


def _binom_support(n_expr: AffineExpr, k_expr: AffineExpr) -> tuple[int, int]:
    # Solve 0 <= k(w) and k(w) <= n(w) for w; both bounds must exist.
    lo: int | None = None
    hi: int | None = None

    def constrain(c0: int, c1: int):
        # c0 + c1*w >= 0
        nonlocal lo, hi
        if c1 > 0:
            b = (-c0 + c1 - 1) // c1  # ceil(-c0 / c1)
            lo = b if lo is None else max(lo, b)
        elif c1 < 0:
            b = c0 // (-c1)  # floor(c0 / -c1)
            hi = b if hi is None else min(hi, b)
        elif c0 < 0:
            lo, hi = 0, -1  # empty

    constrain(k_expr.const, k_expr.slope)
    constrain(n_expr.const - k_expr.const, n_expr.slope - k_expr.slope)
    if lo is None or hi is None:
        raise RelationDataError("relation term has unbounded summation range")
    return lo, hi


def builtin_pair_terms(p: int, r: int, s: int) -> tuple[tuple[int, tuple[int, int]], ...]:
    """Shipped expansion of the non-admissible pair (r, s); p = 2 only."""
    if p != 2:
        raise RelationDataError(
            f"no built-in relation family for p = {p}; supply an override table"
        )
    if r <= s:
        raise ValueError(f"pair ({r}, {s}) is admissible and has no relation")
    term = RelationTerm(
        coeff=(AffineExpr(-s - 1, 1), AffineExpr(-r - s, 2)),
        outer=AffineExpr(r + 2 * s, -2),
        inner=AffineExpr(0, 1),
    )
    return tuple(sorted(term.expand(p), key=lambda t: t[1]))


class RelationTable:
    """Per-pair Adem expansions: overrides where given, built-in data otherwise."""

    def __init__(
        self,
        p: int,
        overrides: Mapping[tuple[int, int], Iterable[RelationTerm]] | None = None,
    ):
        check_prime(p)
        self.p = p
        self.overrides = {k: tuple(v) for k, v in (overrides or {}).items()}
        self._cache: dict[tuple[int, int], tuple] = {}

    def terms_for(self, r: int, s: int) -> tuple[tuple[int, tuple[int, int]], ...]:
        """Expansion of Q_r Q_s as ((coeff, (outer, inner)), ...); r > s required."""
        key = (r, s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if key in self.overrides:
            acc: dict[tuple[int, int], int] = {}
            for term in self.overrides[key]:
                for c, pair in term.expand(self.p):
                    acc[pair] = (acc.get(pair, 0) + c) % self.p
            expansion = tuple(
                sorted(((c, pair) for pair, c in acc.items() if c), key=lambda t: t[1])
            )
        else:
            expansion = builtin_pair_terms(self.p, r, s)
        self._cache[key] = expansion
        return expansion


def adem_rewrite(
    w: OperationWord,
    relations: RelationTable | None = None,
    order: str = "leftmost",
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> OperationSum:
    """Rewrite a word into an equal sum of admissible words.

    order selects which non-admissible adjacent pair is expanded first
    ("leftmost" or "rightmost"); the normal form does not depend on it.
    budget bounds the number of pair expansions and exists only as a guard
    against malformed override tables.
    """
    return rewrite_sum(OperationSum.from_word(w), relations, order=order, budget=budget)


def rewrite_sum(
    s: OperationSum,
    relations: RelationTable | None = None,
    order: str = "leftmost",
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> OperationSum:
    """Linear extension of adem_rewrite to sums of words."""
    if order not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown reduction order {order!r}")
    if relations is None:
        relations = RelationTable(s.p)
    p = s.p
    done: dict[tuple[int, ...], int] = {}
    pending: dict[tuple[int, ...], int] = {}
    for word, c in s.terms.items():
        pending[word.indices] = (pending.get(word.indices, 0) + c) % p

    steps = 0
    while pending:
        idx = min(pending)
        c = pending.pop(idx)
        if c == 0:
            continue
        spots = [t for t in range(len(idx) - 1) if idx[t] > idx[t + 1]]
        if not spots:
            done[idx] = (done.get(idx, 0) + c) % p
            continue
        t = spots[0] if order == "leftmost" else spots[-1]
        steps += 1
        if steps > budget:
            raise RewriteBudgetError(
                f"rewrite budget of {budget} pair expansions exceeded"
            )
        for coeff, (outer, inner) in relations.terms_for(idx[t], idx[t + 1]):
            new = idx[:t] + (outer, inner) + idx[t + 2 :]
            pending[new] = (pending.get(new, 0) + c * coeff) % p
    return OperationSum(p, {OperationWord(idx, p): c for idx, c in done.items() if c})
