"""Algebraic classification of share sets.

A share set ``J`` is qualified when every element of ``f(S)^perp``
supported off ``J`` already lies in ``f(S)``; in terms of codes, shortening
``f(S)`` and ``f(S)^perp`` at ``J`` gives the same code.  ``J`` is
forbidden when its complement is qualified.  The entanglement-assisted
advance-sharing criterion asks that shortening ``f(S)`` at ``J`` loses
exactly ``2|J|`` dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .gfmat import rank, row_space_equal
from .pauli import StabilizerCode, shorten, symplectic_dual

QUALIFIED = "qualified"
FORBIDDEN = "forbidden"
INTERMEDIATE = "intermediate"
BOTH = "both"

MAX_ALGEBRAIC_N = 20
MAX_ORACLE_N = 12


def _subset(J: Iterable[int], n: int) -> tuple[int, ...]:
    idx = tuple(sorted(set(int(j) for j in J)))
    for j in idx:
        if not 1 <= j <= n:
            raise IndexError(f"share index {j} outside 1..{n}")
    return idx


class _Duals:
    # symplectic dual per code, computed once
    _cache: dict[StabilizerCode, object] = {}

    @classmethod
    def get(cls, code: StabilizerCode):
        if code not in cls._cache:
            cls._cache[code] = symplectic_dual(code.f_matrix)
        return cls._cache[code]


def is_qualified(code: StabilizerCode, J: Iterable[int]) -> bool:
    J = _subset(J, code.n)
    return row_space_equal(shorten(code.f_matrix, J), shorten(_Duals.get(code), J))


def is_forbidden(code: StabilizerCode, J: Iterable[int]) -> bool:
    J = set(_subset(J, code.n))
    return is_qualified(code, [i for i in range(1, code.n + 1) if i not in J])


def is_eaqecc_shareable(code: StabilizerCode, J: Iterable[int]) -> bool:
    J = _subset(J, code.n)
    target = code.r - 2 * len(J)
    if target < 0:
        return False
    return rank(shorten(code.f_matrix, J)) == target


def classify(code: StabilizerCode, J: Iterable[int]) -> str:
    q, f = is_qualified(code, J), is_forbidden(code, J)
    if q and f:
        return BOTH
    if q:
        return QUALIFIED
    if f:
        return FORBIDDEN
    return INTERMEDIATE


def subsets(n: int):
    """All subsets of ``1..n`` by increasing size, then lexicographically."""
    for size in range(n + 1):
        yield from itertools.combinations(range(1, n + 1), size)


@dataclass
class AccessReport:
    n: int
    p: int
    k: int
    classes: dict[tuple[int, ...], str] = field(default_factory=dict)
    eaqecc_shareable: set[tuple[int, ...]] = field(default_factory=set)
    separating_witnesses: list[tuple[int, ...]] = field(default_factory=list)
    oracle_checked: bool = False

    @property
    def degenerate(self) -> bool:
        return self.k == 0

    def sets_of(self, cls: str) -> list[tuple[int, ...]]:
        return [J for J, c in self.classes.items() if c == cls]

    def minimal_qualified(self) -> list[tuple[int, ...]]:
        qual = [set(J) for J, c in self.classes.items() if c in (QUALIFIED, BOTH)]
        return [tuple(sorted(J)) for J in qual if not any(o < J for o in qual)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "degenerate": self.degenerate,
            "oracle_checked": self.oracle_checked,
            "subsets": [
                {"J": list(J), "class": c, "eaqecc_shareable": J in self.eaqecc_shareable}
                for J, c in self.classes.items()
            ],
            "separating_witnesses": [list(J) for J in self.separating_witnesses],
        }


class OracleMismatch(AssertionError):
    pass


def enumerate_access_structure(code: StabilizerCode, oracle: bool = False) -> AccessReport:
    """Classify every subset of shares.

    With ``oracle=True`` each forbidden/non-forbidden verdict is also
    checked against the density-matrix oracle.
    """
    n = code.n
    limit = MAX_ORACLE_N if oracle else MAX_ALGEBRAIC_N
    if n > limit:
        raise ValueError(f"n={n} too large for enumeration (limit {limit})")
    if oracle and code.k == 0:
        raise ValueError("the oracle needs k >= 1")
    qualified = {J: is_qualified(code, J) for J in subsets(n)}
    full = tuple(range(1, n + 1))
    report = AccessReport(n=n, p=code.p, k=code.k, oracle_checked=oracle)
    for J, q in qualified.items():
        comp = tuple(i for i in full if i not in J)
        f = qualified[comp]
        report.classes[J] = BOTH if q and f else QUALIFIED if q else FORBIDDEN if f else INTERMEDIATE
        ea = is_eaqecc_shareable(code, J)
        if ea:
            report.eaqecc_shareable.add(J)
        if f and not ea:
            report.separating_witnesses.append(J)
        if oracle:
            from .simulator import forbidden_oracle

            if forbidden_oracle(code, J) != f:
                raise OracleMismatch(f"oracle disagrees with the algebraic test on {list(J)}")
    return report
