"""Symplectic representation of the qudit Pauli group.

A Pauli element is ``omega**phase * X(a) Z(b)`` with ``omega = exp(2 pi i / p)``
and the X factor to the left of the Z factor on every qudit.  The f-map
drops the phase and keeps the vector ``(a|b)`` in F_p^{2n}.

Share indices are 1-based in every public function that takes an index
set; everything else is 0-based.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .gfmat import GfMatrix, check_prime, kernel, row_basis, solve_left


class PauliParseError(ValueError):
    pass


class NonCommutingError(ValueError):
    def __init__(self, i: int, j: int, value: int):
        self.pair = (i, j)
        self.value = value
        super().__init__(
            f"generators {i + 1} and {j + 1} do not commute (symplectic product {value})"
        )


class PhaseConventionError(ValueError):
    """The generated group contains a nontrivial multiple of the identity."""


class StabilizerFileError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class PauliElement:
    p: int
    phase_exp: int
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("X and Z parts must have equal length")
        p = self.p
        object.__setattr__(self, "phase_exp", int(self.phase_exp) % p)
        object.__setattr__(self, "a", tuple(int(x) % p for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) % p for x in self.b))

    @classmethod
    def from_vector(cls, p: int, vec, phase_exp: int = 0) -> PauliElement:
        vec = [int(x) for x in np.asarray(vec).reshape(-1)]
        if len(vec) % 2:
            raise ValueError("symplectic vector must have even length")
        n = len(vec) // 2
        return cls(p, phase_exp, tuple(vec[:n]), tuple(vec[n:]))

    @classmethod
    def identity(cls, p: int, n: int) -> PauliElement:
        return cls(p, 0, (0,) * n, (0,) * n)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def vector(self) -> np.ndarray:
        """The f-map image ``(a|b)``."""
        return np.array(self.a + self.b, dtype=np.int64)

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.b)

    def __mul__(self, other: PauliElement) -> PauliElement:
        # X^a Z^b X^c Z^d = omega^(b.c) X^(a+c) Z^(b+d)
        if self.p != other.p or self.n != other.n:
            raise ValueError("Pauli elements act on different registers")
        cross = sum(x * y for x, y in zip(self.b, other.a))
        return PauliElement(
            self.p,
            self.phase_exp + other.phase_exp + cross,
            tuple(x + y for x, y in zip(self.a, other.a)),
            tuple(x + y for x, y in zip(self.b, other.b)),
        )

    def __pow__(self, t: int) -> PauliElement:
        t = int(t)
        if t < 0:
            raise ValueError("negative powers are not supported; use p - t")
        out = PauliElement.identity(self.p, self.n)
        for _ in range(t):
            out = out * self
        return out

    def restrict(self, keep: Sequence[int]) -> PauliElement:
        """Restriction to the 0-based qudits ``keep`` (the rest must be identity)."""
        keep = list(keep)
        drop = set(range(self.n)) - set(keep)
        if any(self.a[i] or self.b[i] for i in drop):
            raise ValueError("element acts nontrivially on a discarded qudit")
        return PauliElement(
            self.p, self.phase_exp, tuple(self.a[i] for i in keep), tuple(self.b[i] for i in keep)
        )

    def to_string(self, form: str = "word") -> str:
        """Serialize as a Pauli word (``"XXIZ"``) or a symplectic row (``"1100|0001"``).

        A nonzero phase is written as a ``-`` prefix for p = 2 and as
        ``w^j*`` otherwise.
        """
        if self.phase_exp:
            prefix = "-" if self.p == 2 else f"w^{self.phase_exp}*"
            return prefix + PauliElement(self.p, 0, self.a, self.b).to_string(form)
        if form == "word":
            tokens = []
            for x, z in zip(self.a, self.b):
                if x and z:
                    raise ValueError("word form cannot express X and Z on the same qudit")
                if x:
                    tokens.append("X" if x == 1 else f"X^{x}")
                elif z:
                    tokens.append("Z" if z == 1 else f"Z^{z}")
                else:
                    tokens.append("I")
            sep = " " if any("^" in t for t in tokens) else ""
            return sep.join(tokens)
        if form == "symplectic":
            sep = "" if self.p <= 10 else ","
            return sep.join(map(str, self.a)) + "|" + sep.join(map(str, self.b))
        raise ValueError(f"unknown form {form!r}")

    def __str__(self) -> str:
        try:
            return self.to_string("word")
        except ValueError:
            return self.to_string("symplectic")


_TOKEN = re.compile(r"([IXZ])(?:\^(\d+))?")
_PHASE = re.compile(r"^(?:(\+)|(-)|w\^(\d+)\s*\*)\s*")


def _parse_digits(text: str, p: int) -> list[int]:
    text = text.strip()
    # multi-digit entries (p > 10) must be separated
    if p > 10 or "," in text or " " in text:
        parts = [t for t in re.split(r"[,\s]+", text) if t]
    else:
        parts = list(text)
    try:
        vals = [int(t) for t in parts]
    except ValueError:
        raise PauliParseError(f"non-numeric entry in {text!r}") from None
    for v in vals:
        if not 0 <= v < p:
            raise PauliParseError(f"entry {v} outside F_{p}")
    return vals


def pauli_parse(text: str, p: int) -> PauliElement:
    """Parse a Pauli word or an ``a|b`` symplectic row into a PauliElement.

    Words use one token per qudit from ``I``, ``X``, ``Z`` and, for p > 2,
    powers ``X^j``/``Z^j`` with ``0 < j < p``.  Tokens may be run together
    or separated by whitespace.

    An optional prefix sets the phase: ``-`` (p = 2 only) or ``w^j*`` for
    ``omega**j``.  Without a prefix the phase is 0.
    """
    p = check_prime(p)
    text = text.strip()
    phase = 0
    m = _PHASE.match(text)
    if m:
        if m.group(2):
            if p != 2:
                raise PauliParseError("'-' is not a power of omega for p > 2; use w^j*")
            phase = 1
        elif m.group(3):
            phase = int(m.group(3))
            if phase >= p:
                raise PauliParseError(f"phase exponent {phase} out of range for p={p}")
        text = text[m.end():]
    g = _parse_body(text, p)
    return PauliElement(p, phase, g.a, g.b)


def _parse_body(text: str, p: int) -> PauliElement:
    if not text:
        raise PauliParseError("empty generator")
    if "|" in text:
        left, _, right = text.partition("|")
        if "|" in right:
            raise PauliParseError(f"more than one '|' in {text!r}")
        a = _parse_digits(left, p)
        b = _parse_digits(right, p)
        if len(a) != len(b) or not a:
            raise PauliParseError(f"X and Z halves have lengths {len(a)} and {len(b)}")
        return PauliElement(p, 0, tuple(a), tuple(b))
    compact = re.sub(r"[\s⊗*]+", "", text)
    a: list[int] = []
    b: list[int] = []
    pos = 0
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if m is None:
            raise PauliParseError(f"unexpected symbol {compact[pos]!r} in {text!r}")
        sym, power = m.group(1), m.group(2)
        j = 1 if power is None else int(power)
        if power is not None and not 0 < j < p:
            raise PauliParseError(f"power {j} out of range for p={p}")
        a.append(j if sym == "X" else 0)
        b.append(j if sym == "Z" else 0)
        pos = m.end()
    return PauliElement(p, 0, tuple(a), tuple(b))


def symplectic_product(u, v, p: int) -> int:
    """``<a,d> - <b,c> mod p`` for ``u = (a|b)``, ``v = (c|d)``."""
    u = np.asarray(u, dtype=np.int64).reshape(-1)
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    if u.size != v.size or u.size % 2:
        raise ValueError(f"vectors of length {u.size} and {v.size} are not compatible")
    n = u.size // 2
    return int((u[:n] @ v[n:] - u[n:] @ v[:n]) % p)


def symplectic_form(m: GfMatrix) -> GfMatrix:
    """Gram matrix of the symplectic form on the rows of ``m``."""
    n = m.cols // 2
    a, b = m.entries[:, :n], m.entries[:, n:]
    return GfMatrix(m.p, a @ b.T - b @ a.T, cols=m.rows)


def symplectic_dual(c: GfMatrix) -> GfMatrix:
    """Basis of ``C^perp`` with respect to the symplectic form."""
    if c.cols % 2:
        raise ValueError("symplectic codes need an even number of columns")
    n = c.cols // 2
    # <x, c> = x_a . c_b - x_b . c_a, so C^perp = ker([c_b | -c_a])
    swapped = np.hstack([c.entries[:, n:], -c.entries[:, :n]])
    return kernel(GfMatrix(c.p, swapped, cols=c.cols))


def _coords(J: Iterable[int], n: int) -> list[int]:
    idx = sorted(set(int(j) for j in J))
    for j in idx:
        if not 1 <= j <= n:
            raise IndexError(f"share index {j} outside 1..{n}")
    return idx


def _shortening_combinations(c: GfMatrix, cols: list[int]) -> GfMatrix:
    # coefficient vectors t with (t @ c) vanishing on ``cols``
    if not cols:
        return GfMatrix.identity(c.p, c.rows)
    sub = GfMatrix(c.p, c.entries[:, cols], cols=len(cols))
    return kernel(sub.T)


def shorten(c: GfMatrix, J: Iterable[int]) -> GfMatrix:
    """Shorten the symplectic code ``c`` at the 1-based qudits ``J``.

    Keeps the codewords that vanish at coordinates ``i`` and ``n+i`` for
    every ``i`` in ``J`` and deletes those coordinates.  The result is
    returned in RREF with zero rows removed.
    """
    if c.cols % 2:
        raise ValueError("symplectic codes need an even number of columns")
    n = c.cols // 2
    idx = _coords(J, n)
    cols = [j - 1 for j in idx] + [n + j - 1 for j in idx]
    keep = [i for i in range(c.cols) if i not in set(cols)]
    t = _shortening_combinations(c, cols)
    words = (t.entries @ c.entries) % c.p
    return row_basis(GfMatrix(c.p, words[:, keep], cols=len(keep)))


@dataclass(frozen=True)
class StabilizerCode:
    """Independent, commuting generators with phases fixed by the +1 convention."""

    p: int
    n: int
    generators: tuple[PauliElement, ...]

    @cached_property
    def f_matrix(self) -> GfMatrix:
        return GfMatrix.from_rows(self.p, (g.vector for g in self.generators), cols=2 * self.n)

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def k(self) -> int:
        return self.n - self.r

    def group_element(self, coeffs) -> PauliElement:
        """The stabilizer element ``prod_i g_i^{t_i}``."""
        out = PauliElement.identity(self.p, self.n)
        for g, t in zip(self.generators, coeffs):
            t = int(t) % self.p
            if t:
                out = out * g**t
        return out

    def shortened(self, J: Iterable[int]) -> StabilizerCode:
        """The stabilizer of elements supported off ``J``, restricted to the remaining qudits.

        The phases are those of the actual group elements, so a state fixed
        by this code is what the complement of ``J`` sees of a codeword.
        """
        idx = _coords(J, self.n)
        cols = [j - 1 for j in idx] + [self.n + j - 1 for j in idx]
        keep = [i for i in range(self.n) if i + 1 not in set(idx)]
        t = _shortening_combinations(self.f_matrix, cols)
        gens = tuple(self.group_element(row).restrict(keep) for row in t.entries)
        return StabilizerCode(self.p, len(keep), gens)

    def __str__(self) -> str:
        lines = [f"p={self.p} n={self.n}"]
        lines += [str(g) for g in self.generators]
        return "\n".join(lines)


def validate_stabilizer(gens: Sequence[PauliElement]) -> StabilizerCode:
    """Check commutation and phase consistency and build a StabilizerCode.

    Generators that are products of earlier ones (up to a trivial phase)
    are dropped with a warning.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator is required")
    p, n = gens[0].p, gens[0].n
    for g in gens:
        if g.p != p or g.n != n:
            raise ValueError("generators must share p and n")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            sp = symplectic_product(gens[i].vector, gens[j].vector, p)
            if sp:
                raise NonCommutingError(i, j, sp)

    kept: list[PauliElement] = []
    for idx, g in enumerate(gens):
        if g.is_identity():
            if g.phase_exp:
                raise PhaseConventionError(f"generator {idx + 1} is a nontrivial multiple of I")
            warnings.warn(f"generator {idx + 1} is the identity; dropped", stacklevel=2)
            continue
        # g^p = omega^(p(p-1)/2 a.b) I, nontrivial only for p = 2
        if (g**p).phase_exp:
            raise PhaseConventionError(
                f"generator {idx + 1} squares to -I; it has no +1 eigenspace"
            )
        basis = GfMatrix.from_rows(p, (h.vector for h in kept), cols=2 * n)
        t = solve_left(basis, g.vector)
        if t is None:
            kept.append(g)
            continue
        prod = StabilizerCode(p, n, tuple(kept)).group_element(t)
        if prod.phase_exp != g.phase_exp:
            raise PhaseConventionError(
                f"generator {idx + 1} equals a product of earlier generators up to a "
                f"nontrivial phase, so the group contains a multiple of I"
            )
        warnings.warn(f"generator {idx + 1} is dependent on earlier ones; dropped", stacklevel=2)
    return StabilizerCode(p, n, tuple(kept))


def parse_stabilizer(text: str) -> StabilizerCode:
    """Parse the stabilizer file format.

    The first non-comment line reads ``p=<prime> n=<count>``; each further
    line holds one generator as a Pauli word or an ``a|b`` row.  ``#``
    starts a comment.
    """
    header = None
    gens: list[PauliElement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = re.fullmatch(r"p\s*=\s*(\d+)\s*[,\s]\s*n\s*=\s*(\d+)", line)
            if m is None:
                raise StabilizerFileError("expected header 'p=<prime> n=<count>'", lineno)
            try:
                header = (check_prime(int(m.group(1))), int(m.group(2)))
            except ValueError as exc:
                raise StabilizerFileError(str(exc), lineno) from None
            continue
        try:
            g = pauli_parse(line, header[0])
        except ValueError as exc:
            raise StabilizerFileError(str(exc), lineno) from None
        if g.n != header[1]:
            raise StabilizerFileError(f"generator acts on {g.n} qudits, header says {header[1]}", lineno)
        gens.append(g)
    if header is None:
        raise StabilizerFileError("empty stabilizer file")
    if not gens:
        raise StabilizerFileError("no generators given")
    return validate_stabilizer(gens)


def load_stabilizer(path) -> StabilizerCode:
    return parse_stabilizer(Path(path).read_text())


def stabilizer_from_words(words: Sequence[str], p: int = 2) -> StabilizerCode:
    return validate_stabilizer([pauli_parse(w, p) for w in words])
