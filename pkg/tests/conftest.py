import itertools
import re

import numpy as np
import pytest

from qss import codes
from qss.gfmat import GfMatrix

# Seven-qubit example: reference basis rows of f(S) and of its symplectic dual.
EX1_F_ROWS = [
    "1111000|0000000",
    "0000000|1100000",
    "0000000|0011000",
    "1100100|0000011",
    "0011010|0000101",
    "0000011|0110100",
]
EX1_DUAL_ROWS = EX1_F_ROWS + ["0000100|0000010", "0000011|0000011"]

# Reference codewords of the seven-qubit example, each scaled by 4*sqrt(2).
PSI0 = (
    "+0000000+0000001+0000010+0000011-0000100-0000101+0000110+0000111"
    "+1111000+1111001+1111010+1111011-1111100-1111101+1111110+1111111"
    "-0011000+0011001-0011010+0011011+0011100-0011101-0011110+0011111"
    "-1100000+1100001-1100010+1100011+1100100-1100101-1100110+1100111"
)
PSI1 = (
    "+0000000-0000001-0000010+0000011+0000100-0000101+0000110-0000111"
    "+1111000-1111001-1111010+1111011+1111100-1111101+1111110-1111111"
    "+0011000+0011001-0011010-0011011+0011100+0011101+0011110+0011111"
    "+1100000+1100001-1100010-1100011+1100100+1100101+1100110+1100111"
)
PHI_JBAR = {0: "+0000+1111", 1: "+0011+1100"}
# |phi_J(u, v)>, each scaled by 2*sqrt(2)
PHI_J = {
    ((0,), (0,)): "+000+001+010+011-100-101+110+111",
    ((0,), (1,)): "+000-001-010+011+100-101+110-111",
    ((1,), (0,)): "-000+001-010+011+100-101-110+111",
    ((1,), (1,)): "+000+001-010-011+100+101+110+111",
}
# reference columns of 2*sqrt(2) U_J, keyed by input basis state
U_J_COLUMNS = {
    "000": "+000+001+010+011-100-101+110+111",
    "100": "-000+001-010+011+100-101-110+111",
    "001": "+000-001-010+011+100-101+110-111",
    "101": "+000+001-010-011+100+101+110+111",
    "010": "-000-001+010+011+100+101+110+111",
    "011": "+000+001+010+011+100+101-110-111",
    "110": "+000-001+010-011+100-101-110+111",
    "111": "+000-001-010+011-100+101-110+111",
}


def rows_matrix(rows, p=2):
    return GfMatrix(p, [[int(c) for c in r.replace("|", "")] for r in rows])


def ket(expansion: str) -> np.ndarray:
    """Normalized qubit state from a signed sum like ``"+00-11"``."""
    terms = re.findall(r"([+-])([01]+)", expansion)
    n = len(terms[0][1])
    v = np.zeros(2**n)
    for sign, bits in terms:
        v[int(bits, 2)] += 1 if sign == "+" else -1
    return v / np.linalg.norm(v)


def span_residual(basis, v) -> float:
    B = np.array([b.amps for b in basis])
    return float(np.linalg.norm(B.T @ (B.conj() @ v) - v))


def brute_span(m: GfMatrix) -> set:
    """Every vector in the row space of ``m``, by enumerating coefficient tuples."""
    p = m.p
    out = set()
    for coeffs in itertools.product(range(p), repeat=m.rows):
        vec = (np.array(coeffs, dtype=np.int64) @ m.entries) % p if m.rows else np.zeros(m.cols, dtype=np.int64)
        out.add(tuple(int(x) for x in vec))
    return out


CORPUS_NAMES = ["five_qubit", "steane", "four_two_two", "example_one", "qutrit_five"]


@pytest.fixture(scope="session")
def ex1():
    return codes.example_one()


@pytest.fixture(scope="session")
def ex1_signed():
    return codes.example_one_signed()


@pytest.fixture(scope="session", params=CORPUS_NAMES)
def corpus_code(request):
    return codes.CORPUS[request.param]()


_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
