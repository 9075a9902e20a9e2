"""Exact linear solving for unknown product structure constants.

The degree law pins the target generator of every product slot
x_a * x_b, so the only unknowns are the scalar coefficients c_{a,b},
one per canonical pair a <= b within the degree bound. A pair whose
product degree holds no generator is forced to zero outright and is not
an unknown. Every Cartan instance Q_n(x_a * x_b) = sum_{i+j=n}
Q_i(x_a) * Q_j(x_b) is linear in the unknowns and contributes one
homogeneous equation per target generator. Instances that mention, with
nonzero coefficient, a slot beyond the degree bound are deferred
(counted, never silently dropped). The system is reduced by exact
Gaussian elimination over F_p to reduced row-echelon form with columns
ordered lexicographically by (a, b), so ranks, free slots and nullspace
bases are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import ModuleSpec
from .algebra import sign_exponent

Slot = tuple[int, int]


def rref_mod_p(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form over F_p; returns (nonzero rows, pivot columns)."""
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def nullspace_basis(
    rref_rows: list[list[int]], pivots: list[int], ncols: int, p: int
) -> list[list[int]]:
    """One basis vector per free column of an RREF matrix."""
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [0] * ncols
        vec[f] = 1
        for row, c in zip(rref_rows, pivots):
            vec[c] = (-row[f]) % p
        basis.append(vec)
    return basis


@dataclass
class LinearSystem:
    """Rows of F_p coefficients over an ordered list of structure-constant slots."""

    slots: list[Slot]
    rows: list[list[int]]
    rhs: list[int]
    p: int

    def residual(self, vec: list[int]) -> list[int]:
        """A*x - b mod p, for a direct check of emitted solutions."""
        return [
            (sum(a * x for a, x in zip(row, vec)) - b) % self.p
            for row, b in zip(self.rows, self.rhs)
        ]


@dataclass
class SolverResult:
    p: int
    max_degree: int
    slots: list[Slot]
    instances: int
    equations: int
    deferred: int
    rank: int
    pivot_slots: list[Slot]
    free_slots: list[Slot]
    basis: list[dict[Slot, int]]
    cartan_rectangle: tuple[int, int] | None
    system: LinearSystem = field(repr=False)
    targets: dict[Slot, int | None] = field(repr=False, default_factory=dict)

    @property
    def no_constraints(self) -> bool:
        return self.equations == 0

    def table_for(self, assignment: dict[Slot, int]) -> dict[Slot, tuple]:
        """Materialize an assignment as a product table covering every slot
        within the degree bound (forced-zero slots included as defined zeros)."""
        table: dict[Slot, tuple] = {}
        for slot, target in self.targets.items():
            c = assignment.get(slot, 0) % self.p
            if c and target is None:
                raise ValueError(f"slot {slot} is forced to zero by the degree law")
            table[slot] = ((c, target),) if c else ()
        return table

    def zero_table(self) -> dict[Slot, tuple]:
        return self.table_for({})

    def to_obj(self) -> dict:
        return {
            "p": self.p,
            "max_degree": self.max_degree,
            "unknowns": [list(s) for s in self.slots],
            "instances": self.instances,
            "equations": self.equations,
            "deferred": self.deferred,
            "rank": self.rank,
            "free": [list(s) for s in self.free_slots],
            "basis": [
                [[a, b, c] for (a, b), c in sorted(vec.items())] for vec in self.basis
            ],
            "cartan_rectangle": (
                None
                if self.cartan_rectangle is None
                else {
                    "max_n": self.cartan_rectangle[0],
                    "max_gen": self.cartan_rectangle[1],
                }
            ),
            "no_constraints": self.no_constraints,
        }


def _enumerate_pairs(m: ModuleSpec, max_degree: int):
    """Canonical pairs within the degree bound, split into unknown slots
    (target generator exists) and forced-zero pairs (no target degree)."""
    spec = m.algebra
    fam = spec.family
    if fam.degree_a <= 0:
        raise ValueError("solver needs an injective degree rule (degree_a > 0)")
    slots: list[Slot] = []
    zero_pairs: list[Slot] = []
    a = 0
    while fam.degree(a) * 2 + spec.dim_g + 1 <= max_degree:
        b = a
        while fam.degree(a) + fam.degree(b) + spec.dim_g + 1 <= max_degree:
            if spec.slot_target(a, b) is not None:
                slots.append((a, b))
            else:
                zero_pairs.append((a, b))
            b += 1
        a += 1
    return slots, zero_pairs


def _instance_rows(m: ModuleSpec, cols: dict[Slot, int], n: int, a: int, b: int):
    """Sparse rows (one per target generator) of one Cartan instance.

    Returns (rows, deferred): deferred is True when the instance mentions,
    with nonzero coefficient, an unknown outside the solved range.
    """
    spec = m.algebra
    p = spec.p
    fam = spec.family
    acc: dict[int, dict[int, int]] = {}
    deferred = False

    def add(target_gen: int, slot: Slot, coeff: int):
        nonlocal deferred
        coeff %= p
        if not coeff:
            return
        col = cols.get(slot)
        if col is None:
            deferred = True
            return
        row = acc.setdefault(target_gen, {})
        row[col] = (row.get(col, 0) + coeff) % p

    lhs_slot = (a, b) if a <= b else (b, a)
    lhs_sign = 1 if a <= b else spec.sign(fam.degree(a), fam.degree(b))
    lhs_target = spec.slot_target(a, b)
    if lhs_target is not None:
        for mgen, alpha in m.act(n, lhs_target).terms.items():
            add(mgen, lhs_slot, alpha * lhs_sign)
    for i in range(n + 1):
        qa = m.act(i, a)
        if qa.is_zero():
            continue
        qb = m.act(n - i, b)
        for u, beta in qa.terms.items():
            for v, gamma in qb.terms.items():
                slot = (u, v) if u <= v else (v, u)
                target = spec.slot_target(*slot)
                if target is None:
                    continue  # forced zero by the degree law
                sgn = 1 if u <= v else spec.sign(fam.degree(u), fam.degree(v))
                add(target, slot, -beta * gamma * sgn)
    rows = [row for _, row in sorted(acc.items()) if any(row.values())]
    return rows, deferred


def _cartan_rectangle(m: ModuleSpec, cols: dict[Slot, int], covered: set[Slot], max_degree: int) -> tuple[int, int] | None:
    """Largest-coverage rectangle (max_n, max_gen) whose every Cartan
    instance is expressible within the solved slots; None when no instance
    is coverable at all."""
    best = None
    best_score = -1
    g = 0
    while (g, g) in covered:
        n = 0
        while n <= max_degree:
            if any(
                _instance_rows(m, cols, n, a, b)[1]
                for a in range(g + 1)
                for b in range(g + 1)
            ):
                break
            n += 1
        max_n = n - 1
        if max_n >= 0:
            score = (max_n + 1) * (g + 1) * (g + 1)
            if score > best_score or (score == best_score and g > best[1]):
                best = (max_n, g)
                best_score = score
        g += 1
    return best


def solve_product_table(m: ModuleSpec, max_degree: int) -> SolverResult:
    """Set up and reduce the Cartan consistency system for the module's
    unknown structure constants, up to the given total degree.

    Deferral is counted over the window n <= max_degree per pair; beyond
    that window every instance mentions only out-of-range unknowns.
    """
    spec = m.algebra
    p = spec.p
    slots, zero_pairs = _enumerate_pairs(m, max_degree)
    cols = {slot: i for i, slot in enumerate(slots)}
    targets: dict[Slot, int | None] = {slot: spec.slot_target(*slot) for slot in slots}
    targets.update({pair: None for pair in zero_pairs})

    sparse_rows: list[dict[int, int]] = []
    instances = 0
    deferred = 0
    for (a, b) in sorted(slots + zero_pairs):
        for n in range(max_degree + 1):
            instances += 1
            rows, was_deferred = _instance_rows(m, cols, n, a, b)
            if was_deferred:
                deferred += 1
                continue
            sparse_rows.extend(rows)
    # An odd sign exponent forces diagonal entries to vanish outright.
    if p != 2:
        for (a, b) in slots:
            if a == b and sign_exponent(spec.family.degree(a), spec.family.degree(b), spec.dim_g) % 2:
                sparse_rows.append({cols[(a, b)]: 1})

    dense = [[row.get(c, 0) for c in range(len(slots))] for row in sparse_rows]
    system = LinearSystem(slots=slots, rows=dense, rhs=[0] * len(dense), p=p)
    rref, pivots = rref_mod_p(dense, len(slots), p)
    basis_vecs = nullspace_basis(rref, pivots, len(slots), p)
    pivot_set = set(pivots)
    covered = set(slots) | set(zero_pairs)
    return SolverResult(
        p=p,
        max_degree=max_degree,
        slots=slots,
        instances=instances,
        equations=len(dense),
        deferred=deferred,
        rank=len(pivots),
        pivot_slots=[slots[c] for c in pivots],
        free_slots=[slots[c] for c in range(len(slots)) if c not in pivot_set],
        basis=[{slots[i]: v for i, v in enumerate(vec) if v} for vec in basis_vecs],
        cartan_rectangle=_cartan_rectangle(m, cols, covered, max_degree),
        system=system,
        targets=targets,
    )
