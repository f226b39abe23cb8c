"""Dense state-vector oracle.

Everything here is built from explicit matrices on the D^n dimensional
carrier space, independently of the symplectic bookkeeping in the other
modules, so the two can be checked against each other.  Basis states are
ordered big-endian: qudit 1 is the most significant digit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphcode import CosetRep, EncodedCode, Graph, TrivialForm, coset_representatives
from .pauli import GateSpec
from .zdlinalg import matmul_mod

DEFAULT_DENSE_BUDGET = 1024
ATOL = 1e-9


class DenseBudgetError(RuntimeError):
    """Raised when a dense computation would exceed the configured dimension."""


def check_budget(n: int, D: int, budget: int = DEFAULT_DENSE_BUDGET) -> int:
    dim = D**n
    if dim > budget:
        raise DenseBudgetError(f"dense dimension {D}^{n} = {dim} exceeds the budget of {budget}")
    return dim


def omega(D: int) -> complex:
    return np.exp(2j * np.pi / D)


def shift_matrix(D: int) -> np.ndarray:
    """X = sum_j |j><j+1|."""
    X = np.zeros((D, D), dtype=complex)
    for j in range(D):
        X[j, (j + 1) % D] = 1
    return X


def clock_matrix(D: int) -> np.ndarray:
    return np.diag(omega(D) ** np.arange(D))


def _digits(n: int, D: int) -> np.ndarray:
    """Row i holds the base-D digits of basis index i, qudit 1 first."""
    return np.array(list(itertools.product(range(D), repeat=n)), dtype=np.int64).reshape(-1, n)


def _index(digits: np.ndarray, D: int) -> np.ndarray:
    n = digits.shape[-1]
    weights = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return np.mod(digits, D) @ weights


def pauli_matrix(pair: Sequence[int], D: int, lam: int = 0) -> np.ndarray:
    """Dense ``omega^lam X^x Z^z``; column k carries ``omega^(z.k)`` into row ``k - x``."""
    pair = np.asarray(pair, dtype=np.int64)
    n = pair.shape[0] // 2
    x, z = pair[:n], pair[n:]
    k = _digits(n, D)
    rows = _index(k - x, D)
    phase = omega(D) ** ((k @ z + lam) % D)
    M = np.zeros((D**n, D**n), dtype=complex)
    M[rows, np.arange(D**n)] = phase
    return M


def pauli_matrix_kron(pair: Sequence[int], D: int, lam: int = 0) -> np.ndarray:
    """Same operator as :func:`pauli_matrix`, built as a Kronecker product of single-qudit factors."""
    pair = np.asarray(pair, dtype=np.int64)
    n = pair.shape[0] // 2
    X, Z = shift_matrix(D), clock_matrix(D)
    out = np.ones((1, 1), dtype=complex)
    for a, b in zip(pair[:n], pair[n:]):
        out = np.kron(out, np.linalg.matrix_power(X, int(a) % D) @ np.linalg.matrix_power(Z, int(b) % D))
    return omega(D) ** (lam % D) * out


# --------------------------------------------------------------------------
# gates


def local_gate_matrix(gate: GateSpec, D: int) -> np.ndarray:
    """D x D (or D^2 x D^2) matrix of a gate on its own qudits, straight from the gate definitions."""
    w = omega(D)
    kind, m = gate.kind, gate.param
    if kind == "F":
        j = np.arange(D)
        return w ** np.outer(j, j) / np.sqrt(D)
    if kind == "S":
        M = np.zeros((D, D), dtype=complex)
        for j in range(D):
            M[j, (j * m) % D] = 1
        return M
    M = np.zeros((D * D, D * D), dtype=complex)
    for j, k in itertools.product(range(D), repeat=2):
        if kind == "CNOT":
            M[j * D + k, j * D + (k + m * j) % D] = 1
        elif kind == "SWAP":
            M[k * D + j, j * D + k] = 1
        elif kind == "CP":
            M[j * D + k, j * D + k] = w ** ((m * j * k) % D)
        else:
            raise ValueError(f"unknown gate kind {kind!r}")
    return M


def apply_gate(states: np.ndarray, gate: GateSpec, n: int, D: int) -> np.ndarray:
    """Apply a gate to a state vector or to the columns of a (D^n, batch) array."""
    gate.validate(n, D)
    vec = states.ndim == 1
    psi = states.reshape((D,) * n + (-1,))
    qs = list(gate.qudits)
    M = local_gate_matrix(gate, D).reshape((D,) * (2 * len(qs)))
    out = np.tensordot(M, psi, axes=(list(range(len(qs), 2 * len(qs))), qs))
    out = np.moveaxis(out, list(range(len(qs))), qs)
    out = out.reshape(D**n, -1)
    return out[:, 0] if vec else out


def apply_gates(states: np.ndarray, gates: Iterable[GateSpec], n: int, D: int) -> np.ndarray:
    for g in gates:
        states = apply_gate(states, g, n, D)
    return states


def gate_unitary(gate: GateSpec, n: int, D: int) -> np.ndarray:
    return apply_gate(np.eye(D**n, dtype=complex), gate, n, D)


def circuit_unitary(gates: Iterable[GateSpec], n: int, D: int) -> np.ndarray:
    return apply_gates(np.eye(D**n, dtype=complex), gates, n, D)


# --------------------------------------------------------------------------
# states and codewords


def plus_state(n: int, D: int) -> np.ndarray:
    return np.full(D**n, D ** (-n / 2), dtype=complex)


def graph_state(graph: Graph) -> np.ndarray:
    """CP gates along every edge applied to |+>^n, computed as a diagonal phase."""
    k = _digits(graph.n, graph.D)
    quad = np.einsum("ia,ab,ib->i", k, np.triu(graph.adjacency.data, 1), k)
    return plus_state(graph.n, graph.D) * omega(graph.D) ** (quad % graph.D)


def trivial_codewords(trivial: TrivialForm) -> np.ndarray:
    """Columns ``Z^(zeta m)|+>^n`` in representative (lexicographic zeta) order."""
    n, D = trivial.n, trivial.D
    k = _digits(n, D)
    cols = []
    for zeta in itertools.product(*[range(d) for d in trivial.d]):
        z = np.zeros(n, dtype=np.int64)
        z[: trivial.k] = np.array(zeta, dtype=np.int64) * np.array(trivial.m, dtype=np.int64)
        cols.append(plus_state(n, D) * omega(D) ** ((k @ z) % D))
    return np.array(cols).T.reshape(D**n, -1)


def encoded_codewords(code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    """The synthesized circuit applied to every trivial codeword; shape (D^n, K)."""
    check_budget(code.n, code.D, budget)
    return apply_gates(trivial_codewords(code.trivial), code.gates, code.n, code.D)


def codeword_exponents(code: EncodedCode) -> np.ndarray:
    """Rows ``c`` of the coding group matched to each trivial codeword via the Smith transforms."""
    tr = code.trivial
    n, D = code.n, code.D
    rows = []
    for zeta in itertools.product(*[range(d) for d in tr.d]):
        c0 = np.zeros(n, dtype=np.int64)
        c0[: tr.k] = np.array(zeta, dtype=np.int64) * np.array(tr.m, dtype=np.int64)
        rows.append(matmul_mod(c0, tr.snf.w_inv.data, D) if tr.snf is not None else c0)
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def expected_codewords(code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    """Columns ``Z^c |G>`` for the rows of :func:`codeword_exponents`."""
    check_budget(code.n, code.D, budget)
    G = graph_state(code.graph)
    k = _digits(code.n, code.D)
    return np.array([G * omega(code.D) ** ((k @ c) % code.D) for c in codeword_exponents(code)]).T


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """min over theta of ``||a - e^(i theta) b||``."""
    overlap = np.vdot(b, a)
    theta = np.angle(overlap) if abs(overlap) > 0 else 0.0
    return float(np.linalg.norm(a - np.exp(1j * theta) * b))


@dataclass
class EncodingCheck:
    max_deviation: float
    exponents_in_group: bool
    orthonormal: bool

    @property
    def ok(self) -> bool:
        return self.max_deviation <= ATOL and self.exponents_in_group and self.orthonormal


def verify_encoding(code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET) -> EncodingCheck:
    """Compare the simulated circuit output with ``Z^c|G>``, codeword by codeword, up to global phase."""
    got = encoded_codewords(code, budget)
    want = expected_codewords(code, budget)
    dev = max(phase_aligned_distance(got[:, j], want[:, j]) for j in range(got.shape[1]))
    group = code.coding_group()
    in_group = {tuple(int(v) for v in c) for c in codeword_exponents(code)} == group
    gram = got.conj().T @ got
    ortho = bool(np.allclose(gram, np.eye(got.shape[1]), atol=ATOL))
    return EncodingCheck(dev, in_group, ortho)


# --------------------------------------------------------------------------
# projector, information operators and partial traces


def apply_pauli(pair: Sequence[int], states: np.ndarray, D: int) -> np.ndarray:
    """``X^x Z^z`` applied to a vector or to the columns of a matrix, without forming the operator."""
    pair = np.asarray(pair, dtype=np.int64)
    n = pair.shape[0] // 2
    k = _digits(n, D)
    phase = omega(D) ** ((k @ pair[n:]) % D)
    out = np.empty_like(states, dtype=complex)
    rows = _index(k - pair[:n], D)
    out[rows] = (phase * states.T).T if states.ndim > 1 else phase * states
    return out


def partial_trace(op: np.ndarray, keep: Iterable[int], n: int, D: int) -> np.ndarray:
    """Trace out every qudit not in ``keep`` (0-based); the kept order is ascending."""
    keep = sorted(set(keep))
    t = op.reshape((D,) * (2 * n))
    letters = [chr(ord("a") + i) for i in range(2 * n)]
    row, col = letters[:n], letters[n:]
    for q in range(n):
        if q not in keep:
            col[q] = row[q]
    out = [row[q] for q in keep] + [col[q] for q in keep]
    res = np.einsum("".join(row + col) + "->" + "".join(out), t)
    d = D ** len(keep)
    return res.reshape(d, d)


class DenseCode:
    """Dense codewords of an encoded code plus cached helpers for traces down to subsets.

    Information operators are handled through their K x K matrices in the
    codeword basis: ``g_hat = V A V^dagger`` with V the encoded codewords.
    """

    def __init__(self, code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET):
        check_budget(code.n, code.D, budget)
        self.code = code
        self.n, self.D = code.n, code.D
        self.trivial = code.trivial
        self.C0 = trivial_codewords(code.trivial)
        self.V = apply_gates(self.C0, code.gates, self.n, self.D)
        self.K = self.V.shape[1]
        self._split: dict[tuple[int, ...], np.ndarray] = {}
        self._reduced: dict[tuple[int, ...], np.ndarray] = {}
        self._logical: dict[CosetRep, np.ndarray] = {}

    def logical_matrix(self, rep: CosetRep) -> np.ndarray:
        """Input-side ``X^xi Z^(zeta m)`` restricted to the trivial code, as a K x K matrix."""
        if rep not in self._logical:
            tr = self.trivial
            pair = np.zeros(2 * self.n, dtype=np.int64)
            pair[: tr.k] = rep.xi
            pair[self.n : self.n + tr.k] = np.array(rep.zeta, dtype=np.int64) * np.array(tr.m, dtype=np.int64)
            self._logical[rep] = self.C0.conj().T @ apply_pauli(pair, self.C0, self.D)
        return self._logical[rep]

    def info_operator(self, rep: CosetRep) -> np.ndarray:
        return self.V @ self.logical_matrix(rep) @ self.V.conj().T

    def projector(self) -> np.ndarray:
        return self.V @ self.V.conj().T

    def split(self, keep: Sequence[int]) -> np.ndarray:
        """Codewords reshaped to (dim B, dim B^c, K)."""
        keep = tuple(sorted(set(keep)))
        if keep not in self._split:
            n, D = self.n, self.D
            drop = [q for q in range(n) if q not in keep]
            W = self.V.reshape((D,) * n + (self.K,)).transpose(list(keep) + drop + [n])
            self._split[keep] = W.reshape(D ** len(keep), D ** len(drop), self.K)
        return self._split[keep]

    def traced(self, A: np.ndarray, keep: Sequence[int]) -> np.ndarray:
        """``Tr_{B^c}[V A V^dagger]`` without forming the full operator."""
        W = self.split(keep)
        dB = W.shape[0]
        left = (W @ A).reshape(dB, -1)
        return left @ W.reshape(dB, -1).conj().T

    def reduced_split(self, keep: Sequence[int]) -> np.ndarray:
        """Codewords as (r, dim B^c, K) after projecting B onto the span of the codeword slices.

        The span has dimension r <= min(dim B, dim B^c * K) and contains the
        support of every traced operator, so the projection is an isometry on
        everything computed from it: norms, products and traces are unchanged.
        """
        keep = tuple(sorted(set(keep)))
        if keep not in self._reduced:
            W = self.split(keep)
            u, s, _ = np.linalg.svd(W.reshape(W.shape[0], -1), full_matrices=False)
            basis = u[:, s > 1e-12 * max(float(s.max()), 1.0)]
            self._reduced[keep] = np.einsum("br,bck->rck", basis.conj(), W)
        return self._reduced[keep]

    def traced_reduced(self, A: np.ndarray, keep: Sequence[int]) -> np.ndarray:
        """:meth:`traced` expressed in the basis of :meth:`reduced_split`; accepts a stack of matrices."""
        Wc = self.reduced_split(keep)
        r = Wc.shape[0]
        flat = Wc.reshape(r, -1).conj().T
        A = np.asarray(A)
        if A.ndim == 2:
            return (Wc @ A).reshape(r, -1) @ flat
        out = np.empty((A.shape[0], r, r), dtype=complex)
        for start in range(0, A.shape[0], 64):
            chunk = A[start : start + 64]
            left = np.matmul(Wc[None], chunk[:, None]).reshape(chunk.shape[0], r, -1)
            out[start : start + 64] = left @ flat
        return out

    def is_member(self, rep: CosetRep, keep: Sequence[int]) -> bool:
        return bool(np.linalg.norm(self.traced(self.logical_matrix(rep), keep)) > ATOL)

    def members(self, keep: Sequence[int]) -> set[CosetRep]:
        return {r for r in coset_representatives(self.trivial) if self.is_member(r, keep)}

    def normalization(self, keep: Sequence[int]) -> float:
        """N in ``Tr_{B^c}[P] = N P_B``, read off from ``Tr[t^2] / Tr[t]`` for the traced projector t."""
        t = self.traced_reduced(np.eye(self.K), keep)
        return float(np.real(np.trace(t @ t) / np.trace(t)))


def code_projector(code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    return DenseCode(code, budget).projector()


def stabilizer_projector(code: EncodedCode, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    """Average of the encoded trivial stabilizer ``X^x``, x ranging over the stabilizer lattice."""
    n, D = code.n, code.D
    check_budget(n, D, budget)
    tr = code.trivial
    U = circuit_unitary(code.gates, n, D)
    ranges = [range(0, D, dj) for dj in tr.d] + [range(D)] * (n - tr.k)
    acc = np.zeros((D**n, D**n), dtype=complex)
    count = 0
    for x in itertools.product(*ranges):
        acc += pauli_matrix(list(x) + [0] * n, D)
        count += 1
    return U @ (acc / count) @ U.conj().T


def info_operator(code: EncodedCode, rep: CosetRep, budget: int = DEFAULT_DENSE_BUDGET) -> np.ndarray:
    """Dense information operator ``U W (E0 P0) (U W)^dagger`` for one representative."""
    return DenseCode(code, budget).info_operator(rep)


def dense_members(code: EncodedCode, keep: Sequence[int], budget: int = DEFAULT_DENSE_BUDGET) -> set[CosetRep]:
    return DenseCode(code, budget).members(keep)


# --------------------------------------------------------------------------
# isomorphism, type presence and the correctable algebra


@dataclass
class IsomorphismCheck:
    max_product_error: float
    normalization: float
    projector_error: float
    projector_rank: int
    distinct: bool
    pairs_checked: int


def trace_map(dense: DenseCode, keep: Sequence[int]) -> np.ndarray:
    """Matrix of ``A -> Tr_{B^c}[V A V^dagger]`` on row-major K x K matrices, in the reduced basis.

    Shape (r*r, K*K), with r the dimension of :meth:`DenseCode.reduced_split`.
    """
    Wc = dense.reduced_split(keep)
    r = Wc.shape[0]
    return np.einsum("bck,dcl->bdkl", Wc, Wc.conj()).reshape(r * r, dense.K * dense.K)


def verify_isomorphism(dense: DenseCode, keep: Sequence[int], members: Iterable[CosetRep],
                       generators: Iterable[CosetRep] | None = None) -> IsomorphismCheck:
    """Dense checks of the traced group: product rule, faithfulness and the traced projector.

    The product rule ``N Tr[a b] = Tr[a] Tr[b]`` is checked for every pair of
    members, or, when ``generators`` is given, for every (generator, member)
    pair.  The latter already implies the former: writing ``a = g1 g2`` gives
    ``N Tr[g1 (g2 b)] = Tr[g1] Tr[g2 b]`` and induction on word length does the rest.

    ``Tr[a b]`` is obtained from ``L_a L_b = c L_ab`` (checked densely, with
    ``ab`` the composed representative) whenever ``ab`` is among the members,
    and by a direct partial trace otherwise.
    """
    members = list(members)
    K, tr = dense.K, dense.trivial
    logical = np.array([dense.logical_matrix(r) for r in members])
    traced = dense.traced_reduced(logical, keep)
    t = dense.traced_reduced(np.eye(K), keep)
    N = float(np.real(np.trace(t @ t) / np.trace(t)))
    proj = t / N
    proj_err = float(np.linalg.norm(proj @ proj - proj))
    rank = int(np.linalg.matrix_rank(proj, tol=1e-8))
    index = {r: i for i, r in enumerate(members)}
    left = members if generators is None else list(generators)
    err = 0.0
    for a in left:
        La = dense.logical_matrix(a)
        prods = La @ logical
        ab = np.empty_like(traced)
        for j, b in enumerate(members):
            m = index.get(_compose(a, b, tr))
            if m is not None:
                c = np.vdot(logical[m], prods[j]) / K
                if np.abs(prods[j] - c * logical[m]).max() <= ATOL:
                    ab[j] = c * traced[m]
                    continue
            ab[j] = dense.traced_reduced(prods[j], keep)
        Ta = traced[index[a]] if a in index else dense.traced_reduced(La, keep)
        diff = ab * N - Ta @ traced
        err = max(err, float(np.abs(diff).max()))
    distinct = True
    if len(members) > 1:
        flat = traced.reshape(len(members), -1)
        flat = flat / np.linalg.norm(flat, axis=1, keepdims=True)
        gram = np.abs(flat @ flat.conj().T)
        np.fill_diagonal(gram, 0)
        distinct = bool(gram.max() < 1 - 1e-6)
    return IsomorphismCheck(err, N, proj_err, rank, distinct, len(left) * len(members))


def _compose(a: CosetRep, b: CosetRep, trivial) -> CosetRep:
    d = trivial.d
    return CosetRep(tuple((x + y) % dj for x, y, dj in zip(a.xi, b.xi, d)),
                    tuple((x + y) % dj for x, y, dj in zip(a.zeta, b.zeta, d)))


def traced_spectral_projectors(dense: DenseCode, rep: CosetRep, keep: Sequence[int],
                               reduced: bool = False) -> dict[int, np.ndarray]:
    """Partial traces of the eigenprojectors of an information operator.

    Key j stands for the eigenvalue ``exp(i pi j / D)``: for even D a product
    like ``X Z`` has order 2D, so its spectrum sits on the 2D-th roots of unity.
    The operator is unitary on the code space, so its spectral projectors are
    ``V Q Q^dagger V^dagger`` with Q spanning an eigenspace of the K x K matrix.
    With ``reduced`` the traces are returned in the basis of
    :meth:`DenseCode.reduced_split`.
    """
    D = dense.D
    evals, evecs = np.linalg.eig(dense.logical_matrix(rep))
    keys = np.mod(np.rint(np.angle(evals) * D / np.pi).astype(int), 2 * D)
    out: dict[int, np.ndarray] = {}
    for j in sorted(set(keys.tolist())):
        Q, _ = np.linalg.qr(evecs[:, keys == j])
        J = Q @ Q.conj().T
        out[j] = dense.traced_reduced(J, keep) if reduced else dense.traced(J, keep)
    return out


def correctable_algebra_dimension(dense: DenseCode, keep: Sequence[int]) -> int:
    """Dimension of the commutant, inside operators on the code space, of all ``P E_i^dagger E_j P``.

    With ``E_i = I_B (x) <i|`` the compressions ``V^dagger (I_B (x) |i><j|) V``
    are formed in the codeword basis, an orthonormal basis ``b`` of their span
    is extracted, and the kernel of ``a -> [b, a]`` for all ``b`` is measured
    through the Gram matrix ``sum_b L_b^dagger L_b`` of the row-major
    commutator maps ``L_b = b (x) I - I (x) b^T``.
    """
    K = dense.K
    W = dense.reduced_split(keep)
    A = np.einsum("bik,bjl->ijkl", W.conj(), W).reshape(-1, K * K)
    _, s, vh = np.linalg.svd(A, full_matrices=False)
    basis = vh[s > 1e-10 * max(s.max(), 1.0)].reshape(-1, K, K)
    eye = np.eye(K)
    bh = basis.conj().transpose(0, 2, 1)
    cross = np.einsum("nij,nlk->ikjl", bh, basis).reshape(K * K, K * K)
    gram = (
        np.kron(np.einsum("nij,njk->ik", bh, basis), eye)
        + np.kron(eye, np.einsum("nij,nkj->ik", basis.conj(), basis))
        - cross
        - cross.conj().T
    )
    ev = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    return int(np.sum(ev < 1e-8 * max(1.0, ev.max())))


@dataclass
class TypePresenceCheck:
    rep: CosetRep
    member: bool
    powers_absent: bool
    traces: dict[int, np.ndarray]
    orthogonality_error: float | None  # members: largest |Tr[t_i t_j]| over distinct eigenvalues
    proportionality_error: float | None  # absent types: distance of each normalized trace from P_B

    @property
    def ok(self) -> bool:
        errs = [e for e in (self.orthogonality_error, self.proportionality_error) if e is not None]
        return all(e <= ATOL for e in errs)


def verify_type_presence(dense: DenseCode, rep: CosetRep, keep: Sequence[int],
                         member: bool, powers_absent: bool) -> TypePresenceCheck:
    """Operational meaning of membership, checked on the traced spectral projectors.

    A perfectly present type traces its eigenprojectors to mutually
    orthogonal operators; an absent one traces them all to multiples of P_B.
    """
    traces = traced_spectral_projectors(dense, rep, keep, reduced=True)
    orth = prop = None
    if member:
        orth = 0.0
        for i, j in itertools.combinations(sorted(traces), 2):
            orth = max(orth, abs(np.sum(traces[i] * traces[j].T)))
    if powers_absent:
        PB = dense.traced_reduced(np.eye(dense.K), keep)
        PB = PB / np.linalg.norm(PB)
        prop = max(float(np.linalg.norm(t / np.linalg.norm(t) - PB)) for t in traces.values())
    return TypePresenceCheck(rep, member, powers_absent, traces, orth, prop)


@dataclass
class CorrectableAlgebraCheck:
    dimension: int
    max_commutator: float


def verify_correctable_algebra(dense: DenseCode, keep: Sequence[int],
                               members: Iterable[CosetRep]) -> CorrectableAlgebraCheck:
    """Members commute with every compressed Kraus product, and the commutant has the member count as dimension."""
    K = dense.K
    W = dense.reduced_split(keep)
    compressions = np.einsum("bik,bjl->ijkl", W.conj(), W).reshape(-1, K, K)
    worst = 0.0
    for r in members:
        A = dense.logical_matrix(r)
        comm = np.einsum("kl,nlm->nkm", A, compressions) - np.einsum("nkl,lm->nkm", compressions, A)
        worst = max(worst, float(np.abs(comm).max()) if comm.size else 0.0)
    return CorrectableAlgebraCheck(correctable_algebra_dimension(dense, keep), worst)
