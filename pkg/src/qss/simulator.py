"""Dense state-vector simulation of qudit registers.

Amplitude index ``i`` of an ``m``-qudit register encodes the base-``p``
digits of ``i`` big-endian: qudit 1 is the most significant digit.
Internally states are reshaped to tensors of shape ``(p,) * m`` so that
Pauli and subset operators act on single axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .pauli import PauliElement, StabilizerCode

DEFAULT_CAP = 2**14
NULL_TOL = 1e-8
CHECK_TOL = 1e-9

_cap = DEFAULT_CAP


class DimensionCapExceeded(ValueError):
    pass


class EmptyCodespace(ValueError):
    """No joint +1 eigenvector exists; the generator phases are inconsistent."""


def set_dimension_cap(cap: int) -> int:
    """Set the largest Hilbert-space dimension ``p**m`` the simulator will build; returns the old cap."""
    global _cap
    old, _cap = _cap, int(cap)
    return old


def get_dimension_cap() -> int:
    return _cap


def _check_cap(p: int, m: int) -> int:
    dim = p**m
    if dim > _cap:
        raise DimensionCapExceeded(f"dimension {p}^{m} = {dim} exceeds cap {_cap}")
    return dim


@dataclass(frozen=True, eq=False)
class StateVector:
    p: int
    m: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != self.p**self.m:
            raise ValueError(f"expected {self.p ** self.m} amplitudes, got {amps.size}")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, p: int, digits: Sequence[int]) -> StateVector:
        m = len(digits)
        amps = np.zeros(p**m, dtype=complex)
        amps[digits_to_index(digits, p)] = 1.0
        return cls(p, m, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> StateVector:
        return StateVector(self.p, self.m, self.amps / self.norm)

    def tensor(self, other: StateVector) -> StateVector:
        return StateVector(self.p, self.m + other.m, np.kron(self.amps, other.amps))

    def inner(self, other: StateVector) -> complex:
        """``<self|other>``."""
        return complex(np.vdot(self.amps, other.amps))

    def fidelity(self, other: StateVector) -> float:
        return abs(self.inner(other)) ** 2

    def to_json(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self.amps]

    @classmethod
    def from_json(cls, p: int, data) -> StateVector:
        amps = np.array([complex(re, im) for re, im in data])
        m = int(round(np.log(amps.size) / np.log(p))) if amps.size > 1 else 0
        return cls(p, m, amps)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    p: int
    m: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        d = self.p**self.m
        if mat.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {mat.shape}")
        object.__setattr__(self, "matrix", mat)

    @property
    def dagger(self) -> DenseOperator:
        return DenseOperator(self.p, self.m, self.matrix.conj().T)

    def unitarity_residual(self) -> float:
        d = self.matrix.shape[0]
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(d)), initial=0.0))

    def is_unitary(self, tol: float = CHECK_TOL) -> bool:
        return self.unitarity_residual() <= tol

    def is_projector(self, tol: float = CHECK_TOL) -> bool:
        m = self.matrix
        return bool(np.allclose(m @ m, m, atol=tol) and np.allclose(m, m.conj().T, atol=tol))

    def __call__(self, v: StateVector) -> StateVector:
        return StateVector(self.p, self.m, self.matrix @ v.amps)

    def to_json(self) -> list[list[list[float]]]:
        return [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix]


def digits_to_index(digits: Sequence[int], p: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * p + int(d)
    return idx


def index_to_digits(idx: int, p: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        idx, d = divmod(idx, p)
        out.append(d)
    return tuple(reversed(out))


def omega(p: int) -> complex:
    return np.exp(2j * np.pi / p)


def _single_qudit(p: int, x: int, z: int) -> np.ndarray:
    shift = np.roll(np.eye(p), x, axis=0)  # X^x |i> = |i+x>
    phases = np.diag(omega(p) ** (z * np.arange(p)))
    return shift @ phases


def pauli_matrix(g: PauliElement) -> DenseOperator:
    """Dense matrix of ``omega**phase * (X^a1 Z^b1) (x) ... (x) (X^an Z^bn)``."""
    _check_cap(g.p, g.n)
    mat = np.array([[omega(g.p) ** g.phase_exp]], dtype=complex)
    for x, z in zip(g.a, g.b):
        mat = np.kron(mat, _single_qudit(g.p, x, z))
    return DenseOperator(g.p, g.n, mat)


def apply_pauli(g: PauliElement, amps: np.ndarray) -> np.ndarray:
    """Apply ``g`` to the columns of ``amps`` (shape ``(p**n,)`` or ``(p**n, batch)``)."""
    p, n = g.p, g.n
    batch = amps.shape[1:] if amps.ndim > 1 else ()
    t = amps.reshape((p,) * n + batch)
    w = omega(p)
    digits = np.arange(p)
    for q in range(n):
        x, z = g.a[q], g.b[q]
        if z:
            shape = [1] * (n + len(batch))
            shape[q] = p
            t = t * (w ** (z * digits)).reshape(shape)
        if x:
            t = np.roll(t, x, axis=q)
    out = t.reshape(amps.shape)
    if g.phase_exp:
        out = out * w**g.phase_exp
    return out


def apply_projector(code: StabilizerCode, amps: np.ndarray) -> np.ndarray:
    """Apply ``prod_g (1/p) sum_t g^t`` to ``amps``."""
    out = np.asarray(amps, dtype=complex)
    for g in code.generators:
        acc = out.copy()
        cur = out
        for _ in range(1, code.p):
            cur = apply_pauli(g, cur)
            acc = acc + cur
        out = acc / code.p
    return out


def projector_matrix(code: StabilizerCode) -> DenseOperator:
    dim = _check_cap(code.p, code.n)
    return DenseOperator(code.p, code.n, apply_projector(code, np.eye(dim, dtype=complex)))


def canonical_phase(v: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Rotate the global phase so the first non-negligible amplitude is real positive."""
    nz = np.flatnonzero(np.abs(v) > tol)
    if nz.size == 0:
        return v
    a = v[nz[0]]
    return v * (abs(a) / a)


def gram_schmidt_columns(vectors: Iterable[np.ndarray], basis: list[np.ndarray], target: int,
                         null_tol: float = NULL_TOL) -> list[np.ndarray]:
    """Extend ``basis`` in place with orthonormalized ``vectors`` until it has ``target`` entries."""
    for v in vectors:
        if len(basis) >= target:
            break
        w = np.array(v, dtype=complex)
        for _ in range(2):
            for b in basis:
                w = w - np.vdot(b, w) * b
        nrm = np.linalg.norm(w)
        if nrm < null_tol:
            continue
        basis.append(canonical_phase(w / nrm))
    return basis


@lru_cache(maxsize=64)
def _codespace_cached(code: StabilizerCode, cap: int) -> tuple[np.ndarray, ...]:
    p, n = code.p, code.n
    dim = p**n
    target = p**code.k
    basis: list[np.ndarray] = []
    chunk = 64
    for start in range(0, dim, chunk):
        stop = min(dim, start + chunk)
        block = np.zeros((dim, stop - start), dtype=complex)
        block[np.arange(start, stop), np.arange(stop - start)] = 1.0
        proj = apply_projector(code, block)
        gram_schmidt_columns(proj.T, basis, target)
        if len(basis) >= target:
            break
    if not basis:
        raise EmptyCodespace("the stabilizer has no joint +1 eigenvector")
    if len(basis) != target:
        raise EmptyCodespace(f"found {len(basis)} codewords, expected {target}")
    for b in basis:
        b.setflags(write=False)
    return tuple(basis)


def codespace_basis(code: StabilizerCode) -> list[StateVector]:
    """Deterministic orthonormal basis of the joint +1 eigenspace.

    Standard basis vectors are projected in index order and Gram-Schmidt
    orthonormalized; each basis vector has its first nonzero amplitude
    real and positive.
    """
    _check_cap(code.p, code.n)
    return [StateVector(code.p, code.n, b) for b in _codespace_cached(code, _cap)]


def apply_on_subset(op: DenseOperator, J: Sequence[int], v: StateVector) -> StateVector:
    """Apply ``op`` to the 1-based qudits ``J`` of ``v`` (in the order listed) and identity elsewhere."""
    J = [int(j) for j in J]
    if op.p != v.p or op.m != len(J):
        raise ValueError(f"operator on {op.m} qudits cannot act on subset {J}")
    if len(set(J)) != len(J) or any(not 1 <= j <= v.m for j in J):
        raise ValueError(f"invalid subset {J} for a {v.m}-qudit register")
    if not J:
        return StateVector(v.p, v.m, v.amps * op.matrix[0, 0])
    p, k = v.p, len(J)
    axes = [j - 1 for j in J]
    t = v.amps.reshape((p,) * v.m)
    opt = op.matrix.reshape((p,) * (2 * k))
    out = np.tensordot(opt, t, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return StateVector(p, v.m, out.reshape(-1))


def permute_qudits(v: StateVector, order: Sequence[int]) -> StateVector:
    """Reorder qudits: position ``i`` of the result holds 1-based qudit ``order[i]`` of ``v``."""
    t = v.amps.reshape((v.p,) * v.m)
    t = np.transpose(t, [o - 1 for o in order])
    return StateVector(v.p, v.m, t.reshape(-1))


def reduced_density_matrix(v: StateVector, J: Iterable[int]) -> np.ndarray:
    """Partial trace over the complement of the 1-based qudits ``J`` (kept in increasing order)."""
    J = sorted(set(int(j) for j in J))
    if any(not 1 <= j <= v.m for j in J):
        raise ValueError(f"invalid subset {J} for a {v.m}-qudit register")
    rest = [j for j in range(1, v.m + 1) if j not in J]
    t = permute_qudits(v, J + rest).amps.reshape(v.p ** len(J), -1)
    return t @ t.conj().T


def forbidden_oracle(code: StabilizerCode, J: Iterable[int], tol: float = 1e-7) -> bool:
    """Operational check that the qudits ``J`` carry no information about the secret.

    Encodes a tomographically complete family of secrets and compares the
    reduced density matrices on ``J``.
    """
    from .protocol import encode_direct, secret_family

    if code.k < 1:
        raise ValueError("a code with k = 0 carries no secret")
    _check_cap(code.p, code.n)
    J = list(J)
    ref = None
    for secret in secret_family(code.p, code.k):
        rho = reduced_density_matrix(encode_direct(code, secret), J)
        if ref is None:
            ref = rho
        elif np.max(np.abs(rho - ref)) > tol:
            return False
    return True
