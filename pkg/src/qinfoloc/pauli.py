"""Pauli products on n qudits and their conjugation by Clifford gates.

A Pauli product is ``omega**lam * X**x @ Z**z`` with ``omega = exp(2 pi i / D)``
and the X factors written to the left of the Z factors.  The exponent pair
``(x|z)`` is handled as a single length-2n row vector; Clifford conjugation
acts on it by right multiplication with a 2n x 2n symplectic matrix.

Qudit indices are 0-based throughout the library.  :meth:`GateSpec.label`
renders them 1-based for reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .zdlinalg import ZdMatrix, inv_mod, is_unit


@dataclass(frozen=True)
class PauliProduct:
    D: int
    lam: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        if len(self.x) != len(self.z):
            raise ValueError("x and z must have equal length")
        D = self.D
        object.__setattr__(self, "lam", self.lam % D)
        object.__setattr__(self, "x", tuple(int(v) % D for v in self.x))
        object.__setattr__(self, "z", tuple(int(v) % D for v in self.z))

    @classmethod
    def identity(cls, n: int, D: int) -> PauliProduct:
        return cls(D, 0, (0,) * n, (0,) * n)

    @classmethod
    def from_pair(cls, pair: Sequence[int], D: int, lam: int = 0) -> PauliProduct:
        pair = [int(v) for v in pair]
        n = len(pair) // 2
        return cls(D, lam, tuple(pair[:n]), tuple(pair[n:]))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def pair(self) -> np.ndarray:
        return np.array(self.x + self.z, dtype=np.int64)

    def _check(self, other: PauliProduct) -> None:
        if self.D != other.D or self.n != other.n:
            raise ValueError("Pauli products act on different systems")

    def __mul__(self, other: PauliProduct) -> PauliProduct:
        return multiply(self, other)

    def __pow__(self, k: int) -> PauliProduct:
        out = PauliProduct.identity(self.n, self.D)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        parts = []
        for i, (a, b) in enumerate(zip(self.x, self.z), start=1):
            if a:
                parts.append(f"X{i}" + (f"^{a}" if a != 1 else ""))
            if b:
                parts.append(f"Z{i}" + (f"^{b}" if b != 1 else ""))
        body = " ".join(parts) or "I"
        return f"w^{self.lam} {body}" if self.lam else body


def multiply(p: PauliProduct, q: PauliProduct) -> PauliProduct:
    """Normal form of the operator product ``p @ q``.

    Moving ``Z**z_p`` past ``X**x_q`` costs ``omega**(-z_p . x_q)``.
    """
    p._check(q)
    D = p.D
    cross = sum(a * b for a, b in zip(p.z, q.x))
    return PauliProduct(
        D,
        p.lam + q.lam - cross,
        tuple(a + b for a, b in zip(p.x, q.x)),
        tuple(a + b for a, b in zip(p.z, q.z)),
    )


def commutation_exponent(p: PauliProduct, q: PauliProduct) -> int:
    """``lam`` such that ``p q = omega**lam q p``."""
    p._check(q)
    return symplectic_form(p.pair, q.pair, p.D)


def symplectic_form(u: np.ndarray, v: np.ndarray, D: int) -> int:
    """``x_u . z_v - z_u . x_v`` mod D for length-2n exponent pairs."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    n = u.shape[-1] // 2
    return int((u[:n] @ v[n:] - u[n:] @ v[:n]) % D)


def symplectic_gram(rows: np.ndarray, D: int) -> np.ndarray:
    """Matrix of pairwise symplectic forms between the rows of ``rows``."""
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1] // 2
    x, z = rows[:, :n], rows[:, n:]
    return np.mod(x @ z.T - z @ x.T, D)


# --------------------------------------------------------------------------
# gates

GATE_KINDS = ("F", "S", "CNOT", "SWAP", "CP")


@dataclass(frozen=True)
class GateSpec:
    """A qudit Clifford gate.

    ``kind`` is one of ``F`` (Fourier), ``S`` (multiplicative gate with unit
    ``param``), ``CNOT`` (control, target), ``SWAP`` or ``CP``; for CNOT and CP
    ``param`` is the power.  ``qudits`` are 0-based.
    """

    kind: str
    qudits: tuple[int, ...]
    param: int = 1

    def validate(self, n: int, D: int) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 1 if self.kind in ("F", "S") else 2
        if len(self.qudits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qudit(s)")
        if any(not 0 <= q < n for q in self.qudits):
            raise ValueError(f"gate {self.label()} addresses a qudit outside 1..{n}")
        if arity == 2 and self.qudits[0] == self.qudits[1]:
            raise ValueError(f"{self.kind} needs two distinct qudits")
        if self.kind == "S" and not is_unit(self.param, D):
            raise ValueError(f"S_q needs a unit q, got {self.param} mod {D}")
        if self.kind in ("CNOT", "CP") and not 1 <= self.param < D:
            raise ValueError(f"{self.kind} power must be in [1, D), got {self.param}")

    def label(self) -> str:
        idx = "".join(str(q + 1) for q in self.qudits)
        if self.kind == "S":
            return f"S{self.param}_{idx}"
        power = f"^{self.param}" if self.kind in ("CNOT", "CP") and self.param != 1 else ""
        return f"{self.kind}_{idx}{power}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "qudits": [q + 1 for q in self.qudits], "param": self.param}

    @classmethod
    def from_json(cls, obj: dict) -> GateSpec:
        return cls(obj["kind"], tuple(int(q) - 1 for q in obj["qudits"]), int(obj.get("param", 1)))


def fourier(a: int) -> GateSpec:
    return GateSpec("F", (a,))


def smult(a: int, q: int) -> GateSpec:
    return GateSpec("S", (a,), q)


def cnot(control: int, target: int, power: int = 1) -> GateSpec:
    return GateSpec("CNOT", (control, target), power)


def swap(a: int, b: int) -> GateSpec:
    return GateSpec("SWAP", (a, b))


def cp(a: int, b: int, power: int = 1) -> GateSpec:
    return GateSpec("CP", (a, b), power)


def conjugate_pair(pair: Sequence[int], gate: GateSpec, D: int) -> np.ndarray:
    """Exponent pair of ``g E^(x|z) g^dagger`` with the phase dropped."""
    v = np.array(pair, dtype=np.int64) % D
    n = v.shape[0] // 2
    gate.validate(n, D)
    x, z = v[:n], v[n:]
    kind, m = gate.kind, gate.param
    if kind == "F":
        (a,) = gate.qudits
        x[a], z[a] = z[a], -x[a]  # Z -> X, X -> Z^(D-1)
    elif kind == "S":
        (a,) = gate.qudits
        x[a], z[a] = x[a] * inv_mod(m, D), z[a] * m
    elif kind == "CNOT":
        a, b = gate.qudits
        x[b] -= m * x[a]  # X_a -> X_a X_b^(-m)
        z[a] += m * z[b]  # Z_b -> Z_a^m Z_b
    elif kind == "SWAP":
        a, b = gate.qudits
        x[a], x[b] = x[b], x[a]
        z[a], z[b] = z[b], z[a]
    elif kind == "CP":
        a, b = gate.qudits
        za = z[a] - m * x[b]  # X_b -> Z_a^(-m) X_b
        zb = z[b] - m * x[a]  # X_a -> X_a Z_b^(-m)
        z[a], z[b] = za, zb
    return np.mod(v, D)


@dataclass(frozen=True)
class SymplecticClifford:
    """Symplectic matrix ``Q`` of a gate list: ``C E^p C^dagger ~ E^(p Q)``."""

    Q: ZdMatrix
    gates: tuple[GateSpec, ...]

    @property
    def n(self) -> int:
        return self.Q.rows // 2

    def apply(self, pairs: np.ndarray) -> np.ndarray:
        """Map one pair or a stack of pairs (rows) through ``Q``."""
        from .zdlinalg import matmul_mod

        pairs = np.mod(np.asarray(pairs, dtype=np.int64), self.Q.modulus)
        return matmul_mod(pairs, self.Q.data, self.Q.modulus)


def build_symplectic(gates: Iterable[GateSpec], n: int, D: int) -> SymplecticClifford:
    """Compose the gate list (time order, first gate innermost) into ``Q``."""
    gates = tuple(gates)
    for g in gates:
        g.validate(n, D)
    rows = np.eye(2 * n, dtype=np.int64)
    for g in gates:
        rows = np.array([conjugate_pair(r, g, D) for r in rows], dtype=np.int64)
    return SymplecticClifford(ZdMatrix(rows, D), gates)


def preserves_symplectic_form(Q: ZdMatrix) -> bool:
    D = Q.modulus
    n = Q.rows // 2
    omega = np.block(
        [[np.zeros((n, n), dtype=np.int64), np.eye(n, dtype=np.int64)],
         [-np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64)]]
    )
    return bool(np.array_equal(np.mod(Q.data @ omega @ Q.data.T - omega, D), np.zeros_like(omega)))


def support_mask(B: Iterable[int], n: int) -> np.ndarray:
    """Diagonal of the 2n x 2n selection matrix: 1 at j and n+j for qudits j outside B."""
    inside = set(B)
    out = np.array([0 if j in inside else 1 for j in range(n)], dtype=np.int64)
    return np.concatenate([out, out])


def is_based_in(pair: Sequence[int], B: Iterable[int], D: int | None = None) -> bool:
    """True when ``E^(x|z)`` acts as the identity on every qudit outside ``B``."""
    v = np.asarray(pair, dtype=np.int64)
    if D is not None:
        v = v % D
    mask = support_mask(B, v.shape[0] // 2)
    return not np.any(v * mask)
