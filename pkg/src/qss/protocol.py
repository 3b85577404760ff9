"""Advance sharing for stabilizer-based secret sharing by a unitary on the qualified set.

For a forbidden set ``Jbar`` with qualified complement ``J`` every codeword
factorizes as

    |Psi_v> = p^(-l/2) sum_u |phi_Jbar(u)> |phi_J(u, v)>

where ``{|phi_Jbar(u)>}`` spans the code of the stabilizer shortened at
``J``.  A unitary ``U_J`` sends ``|u>|0...0>|v>`` to ``|phi_J(u, v)>``, so the
``Jbar`` part of the secret-independent state

    |Phi_J> = p^(-l/2) sum_u |phi_Jbar(u)> |u> |0...0>

can be handed out before the secret is known.  Applying ``U_J`` to the
remaining qudits together with the secret completes the codeword.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .pauli import StabilizerCode
from .simulator import (
    DenseOperator,
    StateVector,
    apply_on_subset,
    apply_projector,
    canonical_phase,
    codespace_basis,
    gram_schmidt_columns,
    index_to_digits,
    digits_to_index,
    permute_qudits,
    reduced_density_matrix,
)

ORTHO_TOL = 1e-7
DECOMP_TOL = 1e-9


class NotQualified(ValueError):
    """The proposed reconstruction set cannot recover the secret (its complement is not forbidden)."""


class PaddingError(ValueError):
    pass


class NotACodeword(ValueError):
    pass


def _index_set(J: Iterable[int], n: int) -> list[int]:
    idx = sorted(set(int(j) for j in J))
    for j in idx:
        if not 1 <= j <= n:
            raise IndexError(f"share index {j} outside 1..{n}")
    return idx


def complement(J: Iterable[int], n: int) -> list[int]:
    s = set(_index_set(J, n))
    return [i for i in range(1, n + 1) if i not in s]


def _log_p(dim: int, p: int) -> int:
    ell = 0
    while p**ell < dim:
        ell += 1
    if p**ell != dim:
        raise ValueError(f"{dim} is not a power of {p}")
    return ell


def encode_direct(code: StabilizerCode, secret: StateVector) -> StateVector:
    """Encode ``sum_v alpha(v)|v>`` as ``sum_v alpha(v)|Psi_v>`` using the canonical codespace basis."""
    if code.k == 0:
        raise ValueError("a code with k = 0 cannot carry a secret")
    if secret.p != code.p or secret.m != code.k:
        raise ValueError(f"secret must be on {code.k} qudits of dimension {code.p}")
    basis = np.array([b.amps for b in codespace_basis(code)])
    return StateVector(code.p, code.n, secret.amps @ basis)


def shortened_basis(code: StabilizerCode, J: Iterable[int]) -> list[StateVector]:
    """Basis of the code of the stabilizer shortened at ``J``; lives on the complement of ``J``."""
    return codespace_basis(code.shortened(J))


def _to_split_order(v: StateVector, jbar: list[int], J: list[int]) -> np.ndarray:
    """Amplitudes as a ``(p**|Jbar|, p**|J|)`` matrix."""
    w = permute_qudits(v, jbar + J)
    return w.amps.reshape(v.p ** len(jbar), v.p ** len(J))


def companion_basis(
    code: StabilizerCode,
    J: Iterable[int],
    code_basis: Sequence[StateVector],
    jbar_basis: Sequence[StateVector],
) -> dict[tuple[tuple[int, ...], tuple[int, ...]], StateVector]:
    """Extract ``|phi_J(u, v)> = sqrt(p^l) (<phi_Jbar(u)| x I)|Psi_v>`` for every ``(u, v)``.

    Keys are ``(u, v)`` digit tuples.  The family is orthonormal exactly
    when the complement of ``J`` is forbidden; otherwise NotQualified is
    raised.
    """
    p, n = code.p, code.n
    J = _index_set(J, n)
    jbar = complement(J, n)
    ell = _log_p(len(jbar_basis), p)
    k = code.k
    scale = np.sqrt(p**ell)
    phis = np.array([b.amps for b in jbar_basis]).reshape(len(jbar_basis), -1)

    out = {}
    vecs = []
    for vi, psi in enumerate(code_basis):
        mat = _to_split_order(psi, jbar, J)
        comp = scale * (phis.conj() @ mat)  # row u is phi_J(u, v)
        resynth = (phis.T @ comp) / scale
        if np.max(np.abs(resynth - mat)) > DECOMP_TOL:
            raise NotQualified(f"codeword {vi} is not spanned by the shortened basis on {jbar}")
        for ui in range(len(jbar_basis)):
            key = (index_to_digits(ui, p, ell), index_to_digits(vi, p, k))
            out[key] = StateVector(p, len(J), comp[ui])
            vecs.append(comp[ui])
    gram = np.array(vecs).conj() @ np.array(vecs).T
    err = np.max(np.abs(gram - np.eye(len(vecs))))
    if err > ORTHO_TOL:
        raise NotQualified(
            f"share set {J} is not qualified: companion family deviates from orthonormal by {err:.3g}"
        )
    return out


def build_unitary(
    code: StabilizerCode,
    J: Iterable[int],
    companion: dict[tuple[tuple[int, ...], tuple[int, ...]], StateVector],
) -> DenseOperator:
    """Unitary on ``J`` sending ``|u>|0...0>|v>`` to ``|phi_J(u, v)>``.

    Columns not fixed by the companion family are filled by Gram-Schmidt
    on the standard basis in index order.
    """
    p, k = code.p, code.k
    J = _index_set(J, code.n)
    m = len(J)
    ell = _log_p(len(companion), p) - k
    pad = m - k - ell
    if pad < 0:
        raise PaddingError(f"|J| = {m} < k + l = {k + ell}")
    dim = p**m
    cols: dict[int, np.ndarray] = {}
    for (u, v), vec in companion.items():
        cols[digits_to_index(u + (0,) * pad + v, p)] = vec.amps
    defined = [cols[i] for i in sorted(cols)]
    filled = gram_schmidt_columns(np.eye(dim, dtype=complex), list(defined), dim)
    extra = iter(filled[len(defined):])
    mat = np.zeros((dim, dim), dtype=complex)
    for i in range(dim):
        mat[:, i] = cols[i] if i in cols else next(extra)
    return DenseOperator(p, m, mat)


def initial_state(code: StabilizerCode, J: Iterable[int], jbar_basis: Sequence[StateVector]) -> StateVector:
    """``|Phi_J>`` on ``n - k`` qudits ordered (Jbar, l-register, padding)."""
    p, n, k = code.p, code.n, code.k
    J = _index_set(J, n)
    ell = _log_p(len(jbar_basis), p)
    pad = len(J) - k - ell
    if pad < 0:
        raise PaddingError(f"|J| = {len(J)} < k + l = {k + ell}")
    zeros = StateVector.basis(p, (0,) * pad)
    acc = np.zeros(p ** (n - k), dtype=complex)
    for ui, phi in enumerate(jbar_basis):
        reg = StateVector.basis(p, index_to_digits(ui, p, ell))
        acc += phi.tensor(reg).tensor(zeros).amps
    return StateVector(p, n - k, acc / np.sqrt(p**ell))


@dataclass(frozen=True, eq=False)
class ProtocolBundle:
    """Everything a dealer needs to share ``advance`` before the secret exists.

    Register order inside the bundle is the advance set first, then the
    qualified set, both in increasing index order; ``encode_advance``
    restores the code's own qudit order.
    """

    code: StabilizerCode
    J: tuple[int, ...]
    advance: tuple[int, ...]
    k: int
    ell: int
    basis_Jbar: list[StateVector]
    basis_J: dict[tuple[tuple[int, ...], tuple[int, ...]], StateVector]
    U: DenseOperator
    Phi: StateVector
    order: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "order", self.advance + self.J)

    @property
    def padding(self) -> int:
        return len(self.J) - self.k - self.ell

    def advance_shares(self) -> np.ndarray:
        """Reduced state of ``Phi`` on the advance qudits, i.e. what is handed out early."""
        return reduced_density_matrix(self.Phi, range(1, len(self.advance) + 1))

    def summary(self) -> dict:
        return {
            "status": "ok",
            "p": self.code.p,
            "n": self.code.n,
            "k": self.k,
            "ell": self.ell,
            "advance": list(self.advance),
            "qualified": list(self.J),
            "size_J": len(self.J),
            "padding": self.padding,
            "unitarity_residual": self.U.unitarity_residual(),
            "phi_norm_error": abs(self.Phi.norm - 1.0),
        }


def build_bundle(code: StabilizerCode, advance: Iterable[int]) -> ProtocolBundle:
    """Build the advance-sharing protocol for the 1-based share set ``advance``.

    Raises NotQualified when ``advance`` is not a forbidden set.
    """
    if code.k == 0:
        raise ValueError("a code with k = 0 cannot carry a secret")
    jbar = _index_set(advance, code.n)
    J = complement(jbar, code.n)
    jbar_basis = shortened_basis(code, J)
    cbasis = codespace_basis(code)
    companion = companion_basis(code, J, cbasis, jbar_basis)
    U = build_unitary(code, J, companion)
    Phi = initial_state(code, J, jbar_basis)
    return ProtocolBundle(
        code=code,
        J=tuple(J),
        advance=tuple(jbar),
        k=code.k,
        ell=_log_p(len(jbar_basis), code.p),
        basis_Jbar=list(jbar_basis),
        basis_J=companion,
        U=U,
        Phi=Phi,
    )


def _restore_order(w: StateVector, order: Sequence[int]) -> StateVector:
    pos = {q: i + 1 for i, q in enumerate(order)}
    return permute_qudits(w, [pos[q] for q in range(1, w.m + 1)])


def encode_advance(bundle: ProtocolBundle, secret: StateVector) -> StateVector:
    """``(I_Jbar x U_J)(|Phi_J> x |secret>)`` returned in the code's qudit order."""
    code = bundle.code
    if secret.p != code.p or secret.m != bundle.k:
        raise ValueError(f"secret must be on {bundle.k} qudits of dimension {code.p}")
    state = bundle.Phi.tensor(secret)
    nbar = len(bundle.advance)
    state = apply_on_subset(bundle.U, range(nbar + 1, code.n + 1), state)
    return _restore_order(state, bundle.order)


def reconstruct(bundle: ProtocolBundle, codeword: StateVector, purity_tol: float = 1e-8) -> StateVector:
    """Undo ``U_J`` on the qualified qudits and read the secret off the last ``k`` of them."""
    code = bundle.code
    if codeword.p != code.p or codeword.m != code.n:
        raise ValueError("codeword does not match the code's register")
    proj = apply_projector(code, codeword.amps)
    weight = float(np.real(np.vdot(codeword.amps, proj))) / codeword.norm**2
    if weight < 1 - 1e-6:
        raise NotACodeword(f"state has only {weight:.6f} weight in the code space")
    state = permute_qudits(codeword, bundle.order)
    nbar = len(bundle.advance)
    state = apply_on_subset(bundle.U.dagger, range(nbar + 1, code.n + 1), state)
    k = bundle.k
    rho = reduced_density_matrix(state, range(code.n - k + 1, code.n + 1))
    purity = float(np.real(np.trace(rho @ rho)))
    if purity < 1 - purity_tol:
        raise NotACodeword(f"secret register is mixed (purity {purity:.10f})")
    mat = state.amps.reshape(-1, code.p**k)
    secret = bundle.Phi.amps.conj() @ mat
    return StateVector(code.p, k, secret / np.linalg.norm(secret))


def secret_family(p: int, k: int) -> list[StateVector]:
    """Basis states plus ``(|v>+|w>)/sqrt2`` and ``(|v>+i|w>)/sqrt2`` for every pair ``v < w``."""
    dim = p**k
    out = []
    for v in range(dim):
        out.append(StateVector(p, k, np.eye(dim)[v]))
    for v, w in itertools.combinations(range(dim), 2):
        for c in (1.0, 1j):
            amps = np.zeros(dim, dtype=complex)
            amps[v] = 1 / np.sqrt(2)
            amps[w] = c / np.sqrt(2)
            out.append(StateVector(p, k, amps))
    return out


def random_secret(p: int, k: int, rng: np.random.Generator) -> StateVector:
    dim = p**k
    amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(p, k, canonical_phase(amps / np.linalg.norm(amps)))


def fidelity(a: StateVector, b: StateVector) -> float:
    return a.fidelity(b)
