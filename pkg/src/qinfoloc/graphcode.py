"""Additive graph codes, their reduction to trivial form, and the encoding circuit."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .pauli import GateSpec, SymplecticClifford, build_symplectic, cnot, cp, smult, swap
from .zdlinalg import ColumnOp, SmithDecomposition, ZdMatrix, smith_normal_form

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    """Multigraph on ``n`` qudits given by a symmetric adjacency matrix over Z_D."""

    n: int
    D: int
    adjacency: ZdMatrix

    def __post_init__(self):
        a = self.adjacency.data
        if a.shape != (self.n, self.n):
            raise ValueError(f"adjacency must be {self.n}x{self.n}")
        if self.adjacency.modulus != self.D:
            raise ValueError("adjacency modulus differs from D")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diag(a)):
            raise ValueError("self loops are not allowed")

    @classmethod
    def from_edges(cls, n: int, D: int, edges: Iterable[Sequence[int]]) -> Graph:
        """Build from ``(a, b)`` or ``(a, b, multiplicity)`` triples with 0-based vertices."""
        a = np.zeros((n, n), dtype=np.int64)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            mult = int(e[2]) if len(e) > 2 else 1
            if u == v:
                raise ValueError(f"self loop on vertex {u + 1}")
            if not 0 <= u < n or not 0 <= v < n:
                raise ValueError(f"edge ({u + 1}, {v + 1}) outside 1..{n}")
            if not 1 <= mult <= D - 1:
                raise ValueError(f"edge multiplicity {mult} outside 1..{D - 1}")
            a[u, v] = a[v, u] = mult
        return cls(n, D, ZdMatrix(a, D))

    @classmethod
    def empty(cls, n: int, D: int) -> Graph:
        return cls(n, D, ZdMatrix.zeros(n, n, D))

    def edges(self) -> list[tuple[int, int, int]]:
        """Edges ``(a, b, multiplicity)`` with ``a < b``, in lexicographic order."""
        a = self.adjacency.data
        return [(i, j, int(a[i, j])) for i in range(self.n) for j in range(i + 1, self.n) if a[i, j]]


@dataclass(frozen=True)
class TrivialForm:
    """A coding group brought to the form <Z_1^m_1, ..., Z_k^m_k> by Smith reduction.

    ``gates_w`` realizes the column operations: conjugating ``Z_j^m_j`` by the
    circuit yields an element of the original coding group.
    """

    n: int
    D: int
    m: tuple[int, ...]
    snf: SmithDecomposition | None
    gates_w: tuple[GateSpec, ...]
    dropped_rows: tuple[int, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def k(self) -> int:
        return len(self.m)

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(self.D // mj for mj in self.m)

    @property
    def K(self) -> int:
        return math.prod(self.d)

    @property
    def stabilizer_order(self) -> int:
        """``|S| = D^(n-k) * prod(m_j) = D^n / K``."""
        return self.D ** (self.n - self.k) * math.prod(self.m)

    def membership_matrix(self) -> ZdMatrix:
        """n x k matrix M with ``M_jj = m_j``; ``x @ M == 0`` characterizes the stabilizer X-lattice."""
        M = np.zeros((self.n, self.k), dtype=np.int64)
        for j, mj in enumerate(self.m):
            M[j, j] = mj
        return ZdMatrix(M, self.D) if self.k else ZdMatrix(np.zeros((self.n, 0), dtype=np.int64), self.D)

    def stabilizer_lattice_size(self) -> int:
        """Closed-form count of x with ``x @ M == 0``."""
        return self.D ** (self.n - self.k) * math.prod(self.m)


def column_op_gate(op: ColumnOp) -> GateSpec:
    """Clifford gate whose conjugation applies ``op`` to Z-exponent row vectors."""
    if op.kind == "swap":
        return swap(op.a, op.b)
    if op.kind == "scale":
        return smult(op.a, op.factor)
    return cnot(op.a, op.b, op.factor)


def reduce_to_trivial(f: Sequence[Sequence[int]] | np.ndarray, D: int, n: int | None = None) -> TrivialForm:
    """Smith-reduce the generator rows ``f`` of a coding group.

    Row operations only re-choose generators and are discarded.  Column
    operations become gates: since the reduced group is ``C w``, the circuit
    has to apply ``w^-1``, i.e. the inverse operations in reverse order.
    """
    rows = np.array(f, dtype=np.int64).reshape(-1, n if n is not None else np.shape(f)[-1])
    rows = np.mod(rows, D)
    if n is None:
        n = rows.shape[1]
    warnings = []
    zero = tuple(i for i, r in enumerate(rows) if not r.any())
    if zero:
        warnings.append(f"dropped {len(zero)} all-zero generator row(s): {[i + 1 for i in zero]}")
    rows = rows[[i for i in range(rows.shape[0]) if i not in zero]]
    if rows.shape[0] == 0:
        warnings.append("coding group is trivial (K = 1): no logical content")
        for w in warnings:
            log.warning(w)
        return TrivialForm(n, D, (), None, (), zero, tuple(warnings))
    snf = smith_normal_form(ZdMatrix(rows, D))
    m = tuple(snf.diag[: snf.rank])
    degenerate = [d for d in snf.diag[snf.rank :]]
    if degenerate:
        warnings.append(f"{len(degenerate)} dependent generator(s) reduced to the trivial factor D")
    gates = tuple(column_op_gate(op.inverse(D)) for op in reversed(snf.column_ops))
    for w in warnings:
        log.warning(w)
    return TrivialForm(n, D, m, snf, gates, zero, tuple(warnings))


@dataclass(frozen=True)
class CosetRep:
    """Input-side representative ``X^xi Z^(zeta * m)`` of one information-group coset."""

    xi: tuple[int, ...]
    zeta: tuple[int, ...]

    def is_identity(self) -> bool:
        return not any(self.xi) and not any(self.zeta)

    def label(self) -> str:
        parts = []
        for j, (a, b) in enumerate(zip(self.xi, self.zeta), start=1):
            if a:
                parts.append(f"X0{j}" + (f"^{a}" if a != 1 else ""))
            if b:
                parts.append(f"Z0{j}" + (f"^{b}" if b != 1 else ""))
        return " ".join(parts) or "I"


def rep_to_pair(rep: CosetRep, trivial: TrivialForm) -> np.ndarray:
    """``(x0|z0)`` on the carriers for a coset representative."""
    n, D = trivial.n, trivial.D
    v = np.zeros(2 * n, dtype=np.int64)
    for j, (a, b, mj) in enumerate(zip(rep.xi, rep.zeta, trivial.m)):
        v[j] = a % D
        v[n + j] = (b * mj) % D
    return v


def coset_representatives(trivial: TrivialForm) -> Iterator[CosetRep]:
    """All K^2 representatives, ordered lexicographically by ``(xi, zeta)``."""
    ranges = [range(dj) for dj in trivial.d]
    for xi in itertools.product(*ranges):
        for zeta in itertools.product(*ranges):
            yield CosetRep(tuple(xi), tuple(zeta))


def rep_arrays(trivial: TrivialForm) -> tuple[np.ndarray, np.ndarray]:
    """Arrays ``(xi, zeta)`` of shape (K^2, k) in :func:`coset_representatives` order."""
    d = trivial.d
    k = len(d)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64), np.zeros((1, 0), dtype=np.int64)
    grid = np.array(list(itertools.product(*[range(dj) for dj in d])), dtype=np.int64)
    K = grid.shape[0]
    xi = np.repeat(grid, K, axis=0)
    zeta = np.tile(grid, (K, 1))
    return xi, zeta


def rep_pairs(trivial: TrivialForm) -> np.ndarray:
    """All ``(x0|z0)`` vectors, shape (K^2, 2n), in representative order."""
    xi, zeta = rep_arrays(trivial)
    n, k = trivial.n, trivial.k
    out = np.zeros((xi.shape[0], 2 * n), dtype=np.int64)
    out[:, :k] = xi
    out[:, n : n + k] = zeta * np.array(trivial.m, dtype=np.int64)
    return np.mod(out, trivial.D)


@dataclass(frozen=True)
class EncodedCode:
    """An additive graph code together with its encoding circuit ``U W``."""

    graph: Graph
    generators: ZdMatrix
    trivial: TrivialForm
    gates_u: tuple[GateSpec, ...]
    clifford: SymplecticClifford = field(repr=False)
    name: str = ""

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def D(self) -> int:
        return self.graph.D

    @property
    def K(self) -> int:
        return self.trivial.K

    @property
    def Q(self) -> ZdMatrix:
        return self.clifford.Q

    @property
    def gates(self) -> tuple[GateSpec, ...]:
        return self.trivial.gates_w + self.gates_u

    @property
    def stabilizer_order(self) -> int:
        return self.trivial.stabilizer_order

    def representatives(self) -> list[CosetRep]:
        return list(coset_representatives(self.trivial))

    def coding_group(self) -> set[tuple[int, ...]]:
        """Brute-force closure of the generator rows (small codes only)."""
        from .zdlinalg import row_span

        if self.generators.rows == 0:
            return {(0,) * self.n}
        return row_span(self.generators.tolist(), self.D)


def graph_gates(graph: Graph) -> tuple[GateSpec, ...]:
    """One ``CP_ab^Gamma_ab`` per edge, in lexicographic edge order."""
    return tuple(cp(a, b, mult) for a, b, mult in graph.edges())


def synthesize_encoding(trivial: TrivialForm, graph: Graph) -> tuple[GateSpec, ...]:
    """Full encoding circuit: the W gates followed by the graph's CP gates."""
    return trivial.gates_w + graph_gates(graph)


def encode(graph: Graph, generators: Sequence[Sequence[int]] | np.ndarray, name: str = "") -> EncodedCode:
    """Build the :class:`EncodedCode` for a graph and coding-group generator rows."""
    n, D = graph.n, graph.D
    gen = np.array(generators, dtype=np.int64).reshape(-1, n)
    trivial = reduce_to_trivial(gen, D, n)
    gates_u = graph_gates(graph)
    clifford = build_symplectic(trivial.gates_w + gates_u, n, D)
    return EncodedCode(graph, ZdMatrix(gen, D) if gen.size else ZdMatrix(np.zeros((0, n)), D),
                       trivial, gates_u, clifford, name)
