"""A few small stabilizer codes used in tests and demos."""

from __future__ import annotations

from importlib import resources

from .pauli import StabilizerCode, load_stabilizer, parse_stabilizer, stabilizer_from_words


def example_one() -> StabilizerCode:
    """The [[7,1]] qubit code whose shares {1,2,3,4} are forbidden yet fail the entanglement-assisted test."""
    return stabilizer_from_words(
        ["XXXXIII", "ZZIIIII", "IIZZIII", "XXIIXZZ", "IIXXZXZ", "IZZIZXX"]
    )


def example_one_signed() -> StabilizerCode:
    """``example_one`` with the fifth generator negated.

    The explicit reference codewords for this code are +1 eigenvectors
    of ``-IIXXZXZ`` rather than of ``IIXXZXZ``; this variant selects that
    eigenspace.
    """
    return stabilizer_from_words(
        ["XXXXIII", "ZZIIIII", "IIZZIII", "XXIIXZZ", "-IIXXZXZ", "IZZIZXX"]
    )


def five_qubit() -> StabilizerCode:
    """[[5,1,3]]: any three shares reconstruct."""
    return stabilizer_from_words(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])


def steane() -> StabilizerCode:
    return stabilizer_from_words(
        ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]
    )


def four_two_two() -> StabilizerCode:
    return stabilizer_from_words(["XXXX", "ZZZZ"])


def qutrit_five() -> StabilizerCode:
    """The [[5,1,3]]_3 cyclic code generated by shifts of X Z Z^2 X^2 I."""
    base = ["X", "Z", "Z^2", "X^2", "I"]
    words = [" ".join(base[-s:] + base[:-s]) if s else " ".join(base) for s in range(4)]
    return stabilizer_from_words(words, p=3)


def qutrit_three() -> StabilizerCode:
    """[[3,1]]_3 with stabilizers XXX and ZZZ; any two of three shares reconstruct."""
    return stabilizer_from_words(["XXX", "ZZZ"], p=3)


def bell() -> StabilizerCode:
    return stabilizer_from_words(["XX", "ZZ"])


CORPUS = {
    "example_one": example_one,
    "five_qubit": five_qubit,
    "steane": steane,
    "four_two_two": four_two_two,
    "qutrit_five": qutrit_five,
}


def bundled(name: str) -> StabilizerCode:
    """Load one of the ``.stab`` files shipped in ``qss/data``."""
    return parse_stabilizer(resources.files("qss.data").joinpath(f"{name}.stab").read_text())


def bundled_path(name: str):
    return resources.files("qss.data").joinpath(f"{name}.stab")


__all__ = [
    "CORPUS",
    "bell",
    "bundled",
    "bundled_path",
    "example_one",
    "example_one_signed",
    "five_qubit",
    "four_two_two",
    "load_stabilizer",
    "qutrit_five",
    "qutrit_three",
    "steane",
]
