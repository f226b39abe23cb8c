"""Exact linear algebra over the ring Z_D of integers mod D.

Everything here works on integer numpy arrays reduced into ``[0, D)``.  The
Smith form routine records every column operation it performs, because the
encoding circuit of a graph code is read off from those operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_MODULUS = 2**15


class DegenerateInputError(ValueError):
    """Raised for inputs with no meaningful answer, e.g. gcd(0, 0)."""


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(a, b) = u*a + v*b`` over the integers."""
    if a < 0 or b < 0:
        raise ValueError("ext_gcd expects non-negative integers")
    if a == 0 and b == 0:
        raise DegenerateInputError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def is_unit(a: int, D: int) -> bool:
    return math.gcd(a % D, D) == 1


def inv_mod(a: int, D: int) -> int:
    """Multiplicative inverse of a unit ``a`` of Z_D."""
    a %= D
    if D == 1:
        return 0
    g, u, _ = ext_gcd(a, D) if a else (D, 0, 1)
    if g != 1:
        raise ValueError(f"{a} is not a unit mod {D}")
    return u % D


def unit_normalizer(a: int, D: int) -> tuple[int, int]:
    """Split ``a`` into ``(g, u)`` with ``g = gcd(a, D)``, ``u`` a unit and ``a = u*g mod D``.

    For ``a = 0`` this returns ``(D, 1)``.
    """
    a %= D
    if a == 0:
        return D, 1
    g = math.gcd(a, D)
    step = D // g
    base = (a // g) % step
    for j in range(g):
        u = base + j * step
        if math.gcd(u, D) == 1:
            return g, u % D
    raise AssertionError("unreachable: a unit lift always exists")


def divisors(D: int) -> list[int]:
    return [d for d in range(1, D + 1) if D % d == 0]


def _check_modulus(D: int) -> None:
    if not 2 <= D <= MAX_MODULUS:
        raise ValueError(f"modulus must satisfy 2 <= D <= {MAX_MODULUS}, got {D}")


class ZdMatrix:
    """Dense matrix over Z_D.

    Entries are kept in an ``int64`` array reduced into ``[0, D)``.  Instances
    are treated as immutable; operations return new matrices.
    """

    __slots__ = ("modulus", "data")

    def __init__(self, data, modulus: int):
        _check_modulus(modulus)
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("ZdMatrix data must be two-dimensional")
        self.modulus = modulus
        self.data = np.mod(arr, modulus)
        self.data.setflags(write=False)

    @classmethod
    def identity(cls, size: int, modulus: int) -> ZdMatrix:
        return cls(np.eye(size, dtype=np.int64), modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> ZdMatrix:
        return cls(np.zeros((rows, cols), dtype=np.int64), modulus)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def _same_ring(self, other: ZdMatrix) -> None:
        if not isinstance(other, ZdMatrix):
            raise TypeError("operand must be a ZdMatrix")
        if other.modulus != self.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: ZdMatrix) -> ZdMatrix:
        self._same_ring(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return ZdMatrix(matmul_mod(self.data, other.data, self.modulus), self.modulus)

    def __add__(self, other: ZdMatrix) -> ZdMatrix:
        self._same_ring(other)
        return ZdMatrix(self.data + other.data, self.modulus)

    def __sub__(self, other: ZdMatrix) -> ZdMatrix:
        self._same_ring(other)
        return ZdMatrix(self.data - other.data, self.modulus)

    def __neg__(self) -> ZdMatrix:
        return ZdMatrix(-self.data, self.modulus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZdMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash((self.modulus, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"ZdMatrix({self.data.tolist()}, modulus={self.modulus})"

    @property
    def T(self) -> ZdMatrix:
        return ZdMatrix(self.data.T, self.modulus)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def is_identity(self) -> bool:
        return self.rows == self.cols and np.array_equal(
            self.data, np.eye(self.rows, dtype=np.int64)
        )

    def determinant(self) -> int:
        """Determinant mod D, by fraction-free (Bareiss) elimination over the integers."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1 % self.modulus
        a = [[int(v) for v in row] for row in self.data]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return (sign * a[n - 1][n - 1]) % self.modulus

    def is_invertible(self) -> bool:
        return self.rows == self.cols and is_unit(self.determinant(), self.modulus)


def matmul_mod(a: np.ndarray, b: np.ndarray, D: int) -> np.ndarray:
    """Exact ``a @ b mod D`` for int64 arrays with entries in ``[0, D)``."""
    # D <= 2**15 keeps each product below 2**30; chunk the inner sum so it never overflows.
    inner = a.shape[-1]
    chunk = max(1, (2**62) // max(1, (D - 1) ** 2))
    if inner <= chunk:
        return np.mod(a @ b, D)
    out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    for start in range(0, inner, chunk):
        out = np.mod(out + a[..., start : start + chunk] @ b[start : start + chunk], D)
    return out


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class ColumnOp:
    """One elementary column operation on a matrix over Z_D.

    ``kind`` is ``"swap"`` (exchange columns ``a`` and ``b``), ``"scale"``
    (multiply column ``a`` by the unit ``factor``) or ``"add"`` (add
    ``factor`` times column ``b`` to column ``a``).  Columns are 0-based.
    """

    kind: str
    a: int
    b: int = -1
    factor: int = 1

    def inverse(self, D: int) -> ColumnOp:
        if self.kind == "swap":
            return self
        if self.kind == "scale":
            return ColumnOp("scale", self.a, factor=inv_mod(self.factor, D))
        return ColumnOp("add", self.a, self.b, (-self.factor) % D)


@dataclass(frozen=True)
class SmithDecomposition:
    """Result of :func:`smith_normal_form`: ``v @ f @ w == s`` mod D.

    ``diag`` lists the ``min(rows, cols)`` diagonal entries of ``s``; each
    nonzero entry is a divisor of D and zero stands for D itself.  ``rank``
    counts the nonzero ones, which always occupy the leading positions.
    ``column_ops`` is the ordered list of elementary operations whose product
    is ``w``.
    """

    s: ZdMatrix
    v: ZdMatrix
    w: ZdMatrix
    v_inv: ZdMatrix
    w_inv: ZdMatrix
    diag: tuple[int, ...]
    rank: int
    column_ops: tuple[ColumnOp, ...] = field(repr=False)

    @property
    def modulus(self) -> int:
        return self.s.modulus


class _Reducer:
    """Mutable state for one Smith reduction, with transform bookkeeping."""

    def __init__(self, f: np.ndarray, D: int):
        self.D = D
        self.a = [[int(x) for x in row] for row in f]
        self.rows, self.cols = f.shape
        self.v = np.eye(self.rows, dtype=np.int64)
        self.v_inv = np.eye(self.rows, dtype=np.int64)
        self.w = np.eye(self.cols, dtype=np.int64)
        self.w_inv = np.eye(self.cols, dtype=np.int64)
        self.ops: list[ColumnOp] = []

    # row operations: a <- E a, v <- E v, v_inv <- v_inv E^-1
    def row_add(self, i: int, j: int, c: int) -> None:
        """row_i += c * row_j."""
        D = self.D
        c %= D
        if not c:
            return
        ai, aj = self.a[i], self.a[j]
        for t in range(self.cols):
            ai[t] = (ai[t] + c * aj[t]) % D
        self.v[i] = (self.v[i] + c * self.v[j]) % D
        self.v_inv[:, j] = (self.v_inv[:, j] - c * self.v_inv[:, i]) % D

    def row_scale(self, i: int, u: int) -> None:
        D = self.D
        ui = inv_mod(u, D)
        self.a[i] = [(x * u) % D for x in self.a[i]]
        self.v[i] = (self.v[i] * u) % D
        self.v_inv[:, i] = (self.v_inv[:, i] * ui) % D

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.a[i], self.a[j] = self.a[j], self.a[i]
        self.v[[i, j]] = self.v[[j, i]]
        self.v_inv[:, [i, j]] = self.v_inv[:, [j, i]]

    # column operations: a <- a E, w <- w E, w_inv <- E^-1 w_inv
    def col_add(self, i: int, j: int, c: int) -> None:
        """col_i += c * col_j."""
        D = self.D
        c %= D
        if not c:
            return
        for row in self.a:
            row[i] = (row[i] + c * row[j]) % D
        self.w[:, i] = (self.w[:, i] + c * self.w[:, j]) % D
        self.w_inv[j] = (self.w_inv[j] - c * self.w_inv[i]) % D
        self.ops.append(ColumnOp("add", i, j, c))

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for row in self.a:
            row[i], row[j] = row[j], row[i]
        self.w[:, [i, j]] = self.w[:, [j, i]]
        self.w_inv[[i, j]] = self.w_inv[[j, i]]
        self.ops.append(ColumnOp("swap", i, j))

    def _clear_column(self, r: int, c: int, i: int) -> None:
        """Zero entry (i, c) using row operations against pivot row r."""
        D = self.D
        a = self.a
        while a[i][c]:
            p, b = a[r][c], a[i][c]
            if p:
                g, u = unit_normalizer(p, D)
                if b % g == 0:
                    self.row_add(i, r, -(b // g) * inv_mod(u, D))
                    return
            if p == 0:
                self.row_add(r, i, 1)
            elif p <= b:
                self.row_add(i, r, -(b // p))
            else:
                self.row_add(r, i, -(p // b))

    def _clear_row(self, r: int, c: int, j: int) -> None:
        """Zero entry (r, j) using column operations against pivot column c."""
        D = self.D
        a = self.a
        while a[r][j]:
            p, b = a[r][c], a[r][j]
            if p:
                g, u = unit_normalizer(p, D)
                if b % g == 0:
                    self.col_add(j, c, -(b // g) * inv_mod(u, D))
                    return
            if p == 0:
                self.col_add(c, j, 1)
            elif p <= b:
                self.col_add(j, c, -(b // p))
            else:
                self.col_add(c, j, -(p // b))

    def _choose_pivot(self, free_rows: list[int], free_cols: list[int]) -> tuple[int, int] | None:
        D = self.D
        best = None
        for i in free_rows:
            row = self.a[i]
            for j in free_cols:
                x = row[j]
                if not x:
                    continue
                g = math.gcd(x, D)
                # entries the pivot cannot eliminate in one step
                blockers = sum(1 for jj in free_cols if row[jj] % g) + sum(
                    1 for ii in free_rows if self.a[ii][j] % g
                )
                key = (blockers, g, i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else (best[2], best[3])

    def run(self) -> None:
        free_rows = list(range(self.rows))
        free_cols = list(range(self.cols))
        pivots: list[tuple[int, int]] = []
        while True:
            choice = self._choose_pivot(free_rows, free_cols)
            if choice is None:
                break
            r, c = choice
            while True:
                for i in free_rows:
                    if i != r:
                        self._clear_column(r, c, i)
                for j in free_cols:
                    if j != c:
                        self._clear_row(r, c, j)
                if all(self.a[i][c] == 0 for i in free_rows if i != r):
                    break
            free_rows.remove(r)
            free_cols.remove(c)
            pivots.append((r, c))
        for r, _ in pivots:
            # normalize by a row scaling so the pivot becomes a divisor of D
            c = next(j for j in range(self.cols) if self.a[r][j])
            _, u = unit_normalizer(self.a[r][c], self.D)
            self.row_scale(r, inv_mod(u, self.D))
        # move pivots onto the diagonal: rows freely, columns via recorded swaps
        pivots.sort(key=lambda rc: rc[1])
        for pos, (r, c) in enumerate(pivots):
            if c != pos:
                self.col_swap(pos, c)
        at = list(range(self.rows))  # at[p] = original row now sitting at position p
        for target, (r, _) in enumerate(pivots):
            cur = at.index(r)
            if cur != target:
                self.row_swap(target, cur)
                at[target], at[cur] = at[cur], at[target]
        self.rank = len(pivots)


def smith_normal_form(f: ZdMatrix) -> SmithDecomposition:
    """Diagonalize ``f`` over Z_D by elementary row and column operations.

    Returns a :class:`SmithDecomposition` with ``v @ f @ w == s``.  Nonzero
    diagonal entries are normalized to divisors of D.  No divisibility chain
    between successive diagonal entries is imposed; the reduction keeps the
    pivot order found by elimination so that as few column operations as
    possible are emitted.
    """
    if f.rows == 0 or f.cols == 0:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    D = f.modulus
    red = _Reducer(f.data, D)
    red.run()
    s = ZdMatrix(red.a, D)
    k = min(f.rows, f.cols)
    diag = tuple(int(s.data[i, i]) for i in range(k))
    return SmithDecomposition(
        s=s,
        v=ZdMatrix(red.v, D),
        w=ZdMatrix(red.w, D),
        v_inv=ZdMatrix(red.v_inv, D),
        w_inv=ZdMatrix(red.w_inv, D),
        diag=diag,
        rank=red.rank,
        column_ops=tuple(red.ops),
    )


# --------------------------------------------------------------------------
# solving x @ T == u


@dataclass(frozen=True)
class SolutionSet:
    """All solutions ``x`` of ``x @ T == u`` (mod D), summarized."""

    solvable: bool
    particular: np.ndarray | None
    count: int


class RightSolver:
    """Solver for ``x @ T == u`` mod D that reuses one Smith decomposition of T.

    After ``s = v @ T @ w`` the system becomes ``y @ s == u @ w`` with
    ``x = y @ v``, which decouples coordinate by coordinate.
    """

    def __init__(self, T: ZdMatrix, snf: SmithDecomposition | None = None):
        self.T = T
        self.D = T.modulus
        self.snf = snf if snf is not None else smith_normal_form(T)
        D = self.D
        r = len(self.snf.diag)
        g = np.array([math.gcd(d, D) if d else D for d in self.snf.diag], dtype=np.int64)
        self._gcd = g
        self._r = r
        # y_j = (u'_j / g_j) * inverse of (s_jj / g_j) modulo D / g_j
        inv = []
        for d, gj in zip(self.snf.diag, g):
            if d == 0:
                inv.append(0)
            else:
                mod = D // int(gj)
                inv.append(inv_mod(d // int(gj), mod) if mod > 1 else 0)
        self._inv = np.array(inv, dtype=np.int64)
        free = T.rows - r
        self.homogeneous_count = math.prod(int(x) for x in g) * D**free

    def solvable_mask(self, u: np.ndarray) -> np.ndarray:
        """Vectorized solvability test for a stack of right-hand sides (one per row)."""
        u = np.atleast_2d(np.asarray(u, dtype=np.int64))
        if u.shape[1] != self.T.cols:
            raise ValueError(f"right-hand side length {u.shape[1]} != {self.T.cols}")
        uw = matmul_mod(np.mod(u, self.D), self.snf.w.data, self.D)
        ok = np.all(uw[:, self._r :] == 0, axis=1)
        if self._r:
            ok &= np.all(uw[:, : self._r] % self._gcd == 0, axis=1)
        return ok

    def solve(self, u: Sequence[int] | np.ndarray) -> SolutionSet:
        D = self.D
        u = np.mod(np.asarray(u, dtype=np.int64).reshape(-1), D)
        if u.shape[0] != self.T.cols:
            raise ValueError(f"right-hand side length {u.shape[0]} != {self.T.cols}")
        uw = matmul_mod(u.reshape(1, -1), self.snf.w.data, D)[0]
        if np.any(uw[self._r :]):
            return SolutionSet(False, None, 0)
        y = np.zeros(self.T.rows, dtype=np.int64)
        for j in range(self._r):
            gj = int(self._gcd[j])
            if uw[j] % gj:
                return SolutionSet(False, None, 0)
            y[j] = ((int(uw[j]) // gj) * int(self._inv[j])) % (D // gj)
        x = matmul_mod(y.reshape(1, -1), self.snf.v.data, D)[0]
        return SolutionSet(True, x, self.homogeneous_count)


def solve_right(T: ZdMatrix, u: Sequence[int] | np.ndarray) -> SolutionSet:
    """Describe every ``x`` with ``x @ T == u`` (mod D)."""
    return RightSolver(T).solve(u)


def count_homogeneous(T: ZdMatrix) -> int:
    """Number of ``x`` with ``x @ T == 0`` (mod D)."""
    return RightSolver(T).homogeneous_count


def row_span(generators: Iterable[Sequence[int]], D: int, limit: int = 10**6) -> set[tuple[int, ...]]:
    """Brute-force closure of the additive group generated by ``generators``."""
    gens = [tuple(int(x) % D for x in g) for g in generators]
    if not gens:
        return set()
    zero = tuple(0 for _ in gens[0])
    group = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                s = tuple((a + b) % D for a, b in zip(h, g))
                if s not in group:
                    group.add(s)
                    nxt.append(s)
                    if len(group) > limit:
                        raise ValueError("row group exceeds enumeration limit")
        frontier = nxt
    return group
