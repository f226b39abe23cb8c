"""Which encoded information survives in a subset B of the carriers.

For every coset representative ``g0 = X^x0 Z^z0`` of the input-side
information group, ``g0`` is a member of the subset information group of B
exactly when some stabilizer lattice point ``x`` makes ``(x + x0 | z0) Q``
vanish on every qudit outside B.  Together with ``x @ M == 0`` that is one
linear system ``x @ T == u0`` over Z_D whose matrix T depends only on B, so a
single Smith decomposition of T serves all K^2 representatives.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graphcode import CosetRep, EncodedCode, TrivialForm, rep_arrays, rep_pairs, rep_to_pair
from .pauli import support_mask
from .zdlinalg import RightSolver, ZdMatrix, matmul_mod

MAX_LISTED_MEMBERS = 10**6


class Presence(str, Enum):
    PERFECT = "perfectly_present"
    ABSENT = "absent"
    PARTIAL = "partially_present"


@dataclass(frozen=True)
class Classification:
    status: Presence
    power: int | None = None  # smallest k' with rep^k' a member, for partial presence


@dataclass
class SubsetContext:
    """Everything about subset B that does not depend on the representative."""

    code: EncodedCode
    subset: frozenset[int]
    mask: np.ndarray  # diagonal of J
    T: ZdMatrix
    solver: RightSolver = field(repr=False)
    stab_in_subset: int
    N: Fraction
    rank_pb: int

    @property
    def complement(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.code.n) if j not in self.subset)

    @property
    def J(self) -> np.ndarray:
        return np.diag(self.mask)


def _normalize_subset(B: Iterable[int], n: int) -> frozenset[int]:
    B = frozenset(int(b) for b in B)
    bad = [b for b in B if not 0 <= b < n]
    if bad:
        raise ValueError(f"qudits {[b + 1 for b in bad]} are outside 1..{n}")
    return B


def build_context(code: EncodedCode, B: Iterable[int]) -> SubsetContext:
    """Assemble J, T, the Smith data of T and the normalization N for subset B (0-based)."""
    n, D, trivial = code.n, code.D, code.trivial
    B = _normalize_subset(B, n)
    mask = support_mask(B, n)
    QJ = code.Q.data * mask[None, :]
    T = np.concatenate([QJ[:n, :], trivial.membership_matrix().data], axis=1)
    Tm = ZdMatrix(T, D)
    solver = RightSolver(Tm)
    stab = solver.homogeneous_count
    # N = |S n B| D^|B^c| / |S| is rational in general; K / N = D^|B| / |S n B| is not.
    N = Fraction(stab * D ** (n - len(B)) * trivial.K, D**n)
    rank = trivial.K / N
    if rank.denominator != 1:
        raise ArithmeticError(f"rank K/N = {rank} is not an integer")
    return SubsetContext(code, B, mask, Tm, solver, stab, N, int(rank))


def _rhs(ctx: SubsetContext, pairs: np.ndarray) -> np.ndarray:
    D = ctx.code.D
    img = matmul_mod(np.atleast_2d(pairs), ctx.code.Q.data, D) * ctx.mask[None, :]
    zeros = np.zeros((img.shape[0], ctx.code.trivial.k), dtype=np.int64)
    return np.mod(np.concatenate([-img, zeros], axis=1), D)


def is_member(rep: CosetRep, ctx: SubsetContext) -> bool:
    """Membership of one representative in the subset information group."""
    return bool(ctx.solver.solvable_mask(_rhs(ctx, rep_to_pair(rep, ctx.code.trivial)))[0])


def members_mask(ctx: SubsetContext) -> np.ndarray:
    """Membership flags for all K^2 representatives, in representative order."""
    return ctx.solver.solvable_mask(_rhs(ctx, rep_pairs(ctx.code.trivial)))


# --------------------------------------------------------------------------
# group arithmetic on representatives


def compose(a: CosetRep, b: CosetRep, trivial: TrivialForm) -> CosetRep:
    d = trivial.d
    return CosetRep(
        tuple((x + y) % dj for x, y, dj in zip(a.xi, b.xi, d)),
        tuple((x + y) % dj for x, y, dj in zip(a.zeta, b.zeta, d)),
    )


def rep_power(rep: CosetRep, k: int, trivial: TrivialForm) -> CosetRep:
    d = trivial.d
    return CosetRep(
        tuple((k * x) % dj for x, dj in zip(rep.xi, d)),
        tuple((k * z) % dj for z, dj in zip(rep.zeta, d)),
    )


def rep_inverse(rep: CosetRep, trivial: TrivialForm) -> CosetRep:
    return rep_power(rep, -1, trivial)


def rep_order(rep: CosetRep, trivial: TrivialForm) -> int:
    order = 1
    for x, z, dj in zip(rep.xi, rep.zeta, trivial.d):
        for v in (x, z):
            order = math.lcm(order, dj // math.gcd(v, dj))
    return order


def commutation(a: CosetRep, b: CosetRep, trivial: TrivialForm) -> int:
    """Exponent c with ``g_a g_b = omega^c g_b g_a`` for the input-side Paulis."""
    return sum(
        mj * (x * z2 - z * x2) for x, z, x2, z2, mj in zip(a.xi, a.zeta, b.xi, b.zeta, trivial.m)
    ) % trivial.D


def is_abelian(members: Sequence[CosetRep], trivial: TrivialForm) -> bool:
    """True when every pair of members commutes.

    The commutation exponent is bilinear, so checking a generating set is enough.
    """
    if not members:
        raise ValueError("is_abelian needs a nonempty member set")
    gens = generating_set(members, trivial) if len(members) > 64 else list(members)
    return all(commutation(a, b, trivial) == 0 for a, b in itertools.combinations(gens, 2))


def _key(rep: CosetRep) -> tuple:
    return rep.xi + rep.zeta


def closure(gens: Iterable[CosetRep], trivial: TrivialForm) -> set[CosetRep]:
    """Subgroup generated by ``gens`` (composition is addition mod d_j)."""
    k = trivial.k
    group = {CosetRep((0,) * k, (0,) * k)}
    for g in gens:
        if g in group:
            continue
        cyc = [rep_power(g, t, trivial) for t in range(rep_order(g, trivial))]
        group = {compose(h, c, trivial) for h in group for c in cyc}
    return group


def generating_set(members: Iterable[CosetRep], trivial: TrivialForm) -> list[CosetRep]:
    """Greedy small generating set; single-factor representatives are tried first."""
    members = list(members)
    ordered = sorted(
        members,
        key=lambda r: (sum(1 for v in r.xi + r.zeta if v), _key(r)),
    )
    k = trivial.k
    group = {CosetRep((0,) * k, (0,) * k)}
    gens = []
    for m in ordered:
        if m in group:
            continue
        gens.append(m)
        cyc = [rep_power(m, t, trivial) for t in range(rep_order(m, trivial))]
        group = {compose(h, c, trivial) for h in group for c in cyc}
        if len(group) == len(members):
            break
    return gens


# --------------------------------------------------------------------------
# reports


@dataclass
class SubsetReport:
    subset: tuple[int, ...]  # 0-based, sorted
    K: int
    members: list[CosetRep]
    member_count: int
    generators: list[CosetRep]
    all_present: bool
    all_absent: bool
    is_abelian: bool
    classification: dict[CosetRep, Classification]
    N: Fraction
    rank_pb: int
    stab_in_subset: int

    @property
    def subset_1based(self) -> tuple[int, ...]:
        return tuple(b + 1 for b in self.subset)

    def case(self) -> str:
        if self.all_present:
            return "all_present"
        if self.all_absent:
            return "all_absent"
        return "partial"


def classify(rep: CosetRep, member_set: set[CosetRep], trivial: TrivialForm) -> Classification:
    """Presence of the information type of ``rep`` given the member set.

    A rep whose power ``rep^k'`` is a member for some ``1 <= k' < order(rep)``
    is not absent.  Powers equal to the identity are excluded: the identity is
    always a member and carries no information.
    """
    if rep in member_set:
        return Classification(Presence.PERFECT)
    for kp in range(2, rep_order(rep, trivial)):
        if rep_power(rep, kp, trivial) in member_set:
            return Classification(Presence.PARTIAL, kp)
    return Classification(Presence.ABSENT)


def subset_info_group(
    code: EncodedCode,
    B: Iterable[int],
    *,
    ctx: SubsetContext | None = None,
    classify_all: bool = True,
) -> SubsetReport:
    """Members, flags and per-type classification for subset B (0-based qudits)."""
    ctx = ctx if ctx is not None else build_context(code, B)
    trivial = code.trivial
    mask = members_mask(ctx)
    xi, zeta = rep_arrays(trivial)
    idx = np.flatnonzero(mask)
    members = [CosetRep(tuple(int(v) for v in xi[i]), tuple(int(v) for v in zeta[i])) for i in idx]
    K2 = trivial.K**2
    member_set = set(members)
    gens = generating_set(members, trivial)
    classification = {}
    if classify_all:
        for i in range(K2):
            rep = CosetRep(tuple(int(v) for v in xi[i]), tuple(int(v) for v in zeta[i]))
            classification[rep] = (
                Classification(Presence.PERFECT) if mask[i] else classify(rep, member_set, trivial)
            )
    return SubsetReport(
        subset=tuple(sorted(ctx.subset)),
        K=trivial.K,
        members=members if len(members) <= MAX_LISTED_MEMBERS else [],
        member_count=len(members),
        generators=gens,
        all_present=len(members) == K2,
        all_absent=len(members) == 1,
        is_abelian=is_abelian(members, trivial),
        classification=classification,
        N=ctx.N,
        rank_pb=ctx.rank_pb,
        stab_in_subset=ctx.stab_in_subset,
    )


def all_subsets(n: int, size: int | None = None, *, include_empty: bool = False) -> list[tuple[int, ...]]:
    sizes = [size] if size is not None else range(0 if include_empty else 1, n + 1)
    return [c for s in sizes for c in itertools.combinations(range(n), s)]


@dataclass
class SweepResult:
    reports: dict[tuple[int, ...], SubsetReport]
    duality_violations: list[tuple[tuple[int, ...], tuple[int, ...]]]


def sweep(code: EncodedCode, size: int | None = None, *, workers: int = 1) -> SweepResult:
    """Analyze every nonempty subset (or every subset of one size).

    The complement duality (all present in B exactly when all absent from the
    complement) is checked for every analyzed subset; complements not in the
    sweep are analyzed on the side.
    """
    subsets = all_subsets(code.n, size)

    def run(B):
        return B, subset_info_group(code, B, classify_all=False)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, subsets))
    else:
        results = [run(B) for B in subsets]
    reports = dict(results)
    extra: dict[tuple[int, ...], SubsetReport] = {}
    violations = []
    for B, rep in reports.items():
        Bc = tuple(j for j in range(code.n) if j not in B)
        other = reports.get(Bc) or extra.get(Bc)
        if other is None:
            other = extra[Bc] = subset_info_group(code, Bc, classify_all=False)
        if rep.all_present != other.all_absent or other.all_present != rep.all_absent:
            violations.append((B, Bc))
    return SweepResult(reports, violations)
