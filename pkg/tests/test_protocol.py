import numpy as np
import pytest

from qss import codes
from qss.access import is_forbidden, subsets
from qss.pauli import stabilizer_from_words
from qss.protocol import (
    NotACodeword,
    NotQualified,
    PaddingError,
    build_bundle,
    build_unitary,
    companion_basis,
    encode_advance,
    encode_direct,
    initial_state,
    random_secret,
    reconstruct,
    secret_family,
    shortened_basis,
)
from qss.simulator import (
    StateVector,
    codespace_basis,
    pauli_matrix,
    reduced_density_matrix,
)

from conftest import PHI_J, PHI_JBAR, PSI0, PSI1, U_J_COLUMNS, ket, span_residual


def fixed_by_all(code, v, tol=1e-9):
    return all(np.max(np.abs(pauli_matrix(g).matrix @ v - v)) < tol for g in code.generators)


# --- encode_direct ---------------------------------------------------------


def test_encode_basis_secret_gives_basis_codeword(ex1):
    basis = codespace_basis(ex1)
    for v in range(2):
        out = encode_direct(ex1, StateVector.basis(2, [v]))
        np.testing.assert_allclose(out.amps, basis[v].amps)


def test_encode_one_free_qubit():
    code = stabilizer_from_words(["XX"])
    out = encode_direct(code, StateVector.basis(2, [0]))
    np.testing.assert_allclose(out.amps, np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-12)
    assert fixed_by_all(code, out.amps)


def test_encode_plus_example_one(ex1):
    plus = StateVector(2, 1, np.array([1, 1]) / np.sqrt(2))
    out = encode_direct(ex1, plus)
    assert abs(out.norm - 1) < 1e-12
    assert fixed_by_all(ex1, out.amps)


def test_encode_rejects_bad_secret(ex1):
    with pytest.raises(ValueError):
        encode_direct(ex1, StateVector.basis(2, [0, 0]))
    with pytest.raises(ValueError):
        encode_direct(codes.bell(), StateVector(2, 0, [1.0]))


# --- reference example data, in the eigenspace that contains the reference codewords -


def test_reference_codewords_need_negated_m5(ex1, ex1_signed):
    for psi in (ket(PSI0), ket(PSI1)):
        m5 = pauli_matrix(ex1.generators[4]).matrix
        np.testing.assert_allclose(m5 @ psi, -psi, atol=1e-12)
        assert fixed_by_all(ex1_signed, psi)
        assert span_residual(codespace_basis(ex1_signed), psi) < 1e-9


@pytest.mark.parametrize("name", ["ex1", "ex1_signed"])
def test_reference_jbar_states_in_shortened_span(name, request):
    code = request.getfixturevalue(name)
    basis = shortened_basis(code, [5, 6, 7])
    assert len(basis) == 2
    for expansion in PHI_JBAR.values():
        assert span_residual(basis, ket(expansion)) < 1e-9


def test_reference_decomposition_holds():
    phi = {u: ket(e) for u, e in PHI_JBAR.items()}
    comp = {key: ket(e) for key, e in PHI_J.items()}
    for v, psi in ((0, ket(PSI0)), (1, ket(PSI1))):
        rebuilt = (np.kron(phi[0], comp[((0,), (v,))]) + np.kron(phi[1], comp[((1,), (v,))])) / np.sqrt(2)
        np.testing.assert_allclose(rebuilt, psi, atol=1e-12)


def test_reference_companion_is_basis_of_shortened_code(ex1_signed):
    states = np.array([ket(e) for e in PHI_J.values()])
    np.testing.assert_allclose(states @ states.T, np.eye(4), atol=1e-12)
    q = codespace_basis(ex1_signed.shortened([1, 2, 3, 4]))
    assert len(q) == 4
    for s in states:
        assert span_residual(q, s) < 1e-9


def test_extracted_companion_reproduces_reference_one(ex1_signed):
    """With the reference codewords and Jbar basis as input, extraction returns the reference companion states."""
    code_basis = [StateVector(2, 7, ket(PSI0)), StateVector(2, 7, ket(PSI1))]
    jbar = [StateVector(2, 4, ket(PHI_JBAR[0])), StateVector(2, 4, ket(PHI_JBAR[1]))]
    comp = companion_basis(ex1_signed, [5, 6, 7], code_basis, jbar)
    for key, expansion in PHI_J.items():
        np.testing.assert_allclose(comp[key].amps, ket(expansion), atol=1e-12)


def test_build_unitary_defined_columns_match_reference(ex1_signed):
    comp = {key: StateVector(2, 3, ket(e)) for key, e in PHI_J.items()}
    U = build_unitary(ex1_signed, [5, 6, 7], comp)
    assert U.unitarity_residual() < 1e-10
    # |u>|0>|v> with u the first qubit, v the last
    for col in ("000", "001", "100", "101"):
        np.testing.assert_allclose(U.matrix[:, int(col, 2)], ket(U_J_COLUMNS[col]), atol=1e-12)


def test_reference_unitary_satisfies_encoding_identity():
    U = np.array([ket(U_J_COLUMNS[format(i, "03b")]) for i in range(8)]).T
    np.testing.assert_allclose(U.T @ U, np.eye(8), atol=1e-12)
    phi0, phi1 = ket(PHI_JBAR[0]), ket(PHI_JBAR[1])
    Phi = (np.kron(phi0, [1, 0, 0, 0]) + np.kron(phi1, [0, 0, 1, 0])) / np.sqrt(2)  # |u>|0>
    for v, psi in ((0, ket(PSI0)), (1, ket(PSI1))):
        state = np.kron(Phi, np.eye(2)[v])
        np.testing.assert_allclose(np.kron(np.eye(16), U) @ state, psi, atol=1e-12)


# --- shortened / companion / unitary / initial state on our own bases ------


def test_shortened_basis_empty_set_is_codespace(ex1):
    a = shortened_basis(ex1, [])
    b = codespace_basis(ex1)
    for x, y in zip(a, b):
        np.testing.assert_allclose(x.amps, y.amps)


def test_shortened_basis_fixed_by_shortened_generators(corpus_code):
    for J in subsets(corpus_code.n):
        if not is_forbidden(corpus_code, [i for i in range(1, corpus_code.n + 1) if i not in J]):
            continue
        sh = corpus_code.shortened(J)
        for v in shortened_basis(corpus_code, J):
            assert fixed_by_all(sh, v.amps)


def test_companion_decomposition_five_qubit():
    code = codes.five_qubit()
    for J in [(1, 2, 3), (2, 4, 5), (1, 3, 5)]:
        jbar_basis = shortened_basis(code, J)
        cb = codespace_basis(code)
        comp = companion_basis(code, J, cb, jbar_basis)
        ell = 2
        assert len(jbar_basis) == 2**ell
        assert len(comp) == 2 ** (ell + code.k)
        vecs = np.array([c.amps for c in comp.values()])
        np.testing.assert_allclose(vecs.conj() @ vecs.T, np.eye(len(vecs)), atol=1e-9)
        jbar = [i for i in range(1, 6) if i not in J]
        for vi, psi in enumerate(cb):
            total = sum(
                np.kron(jbar_basis[ui].amps, comp[((ui >> 1 & 1, ui & 1), (vi,))].amps)
                for ui in range(4)
            ) / 2
            # total is in (Jbar, J) order; put the codeword in that order too
            t = psi.amps.reshape((2,) * 5).transpose([j - 1 for j in jbar + list(J)]).reshape(-1)
            np.testing.assert_allclose(total, t, atol=1e-9)


def test_companion_rejects_non_qualified(ex1):
    J = [1, 2, 3]  # its complement {4,5,6,7} is not forbidden
    with pytest.raises(NotQualified):
        companion_basis(ex1, J, codespace_basis(ex1), shortened_basis(ex1, J))


def test_companion_ell_zero_product_structure():
    code = codes.five_qubit()
    J = [1, 2, 3, 4, 5]
    jbar = shortened_basis(code, J)
    assert len(jbar) == 1 and jbar[0].m == 0
    comp = companion_basis(code, J, codespace_basis(code), jbar)
    for v, psi in enumerate(codespace_basis(code)):
        np.testing.assert_allclose(comp[((), (v,))].amps, psi.amps)


def test_unitary_identity_case():
    comp = {((), (v,)): StateVector.basis(2, [v]) for v in range(2)}
    # one qudit register, k = 1, l = 0, no padding
    U = build_unitary(stabilizer_from_words(["ZI"]), [2], comp)
    np.testing.assert_allclose(U.matrix, np.eye(2))


def test_unitary_padding_error():
    code = stabilizer_from_words(["ZII"])
    comp = {((u,), (v,)): StateVector.basis(2, [u]) for u in range(2) for v in range(2)}
    with pytest.raises(PaddingError):
        build_unitary(code, [3], comp)
    with pytest.raises(PaddingError):
        initial_state(code, [3], [StateVector.basis(2, [0, 0]), StateVector.basis(2, [1, 1])])


def test_initial_state_example(ex1):
    jbar = shortened_basis(ex1, [5, 6, 7])
    Phi = initial_state(ex1, [5, 6, 7], jbar)
    assert Phi.m == 6
    expected = (np.kron(jbar[0].amps, [1, 0, 0, 0]) + np.kron(jbar[1].amps, [0, 0, 1, 0])) / np.sqrt(2)
    np.testing.assert_allclose(Phi.amps, expected)
    assert abs(Phi.norm - 1) < 1e-10


def test_initial_state_ell_zero():
    code = codes.five_qubit()
    jbar = shortened_basis(code, range(1, 6))
    Phi = initial_state(code, range(1, 6), jbar)
    np.testing.assert_allclose(Phi.amps, StateVector.basis(2, [0, 0, 0, 0]).amps)


# --- bundle, encode_advance, reconstruct -----------------------------------


def test_bundle_example_one(ex1):
    b = build_bundle(ex1, [1, 2, 3, 4])
    assert (b.k, b.ell, b.padding) == (1, 1, 1)
    assert b.J == (5, 6, 7)
    assert b.U.unitarity_residual() < 1e-10
    s = b.summary()
    assert s["status"] == "ok" and s["ell"] == 1


def test_advance_shares_are_secret_independent(ex1):
    b = build_bundle(ex1, [1, 2, 3, 4])
    rng = np.random.default_rng(0)
    for _ in range(3):
        w = encode_advance(b, random_secret(2, 1, rng))
        np.testing.assert_allclose(reduced_density_matrix(w, [1, 2, 3, 4]), b.advance_shares(), atol=1e-10)


def test_encode_advance_matches_direct_example(ex1_signed):
    b = build_bundle(ex1_signed, [1, 2, 3, 4])
    out = encode_advance(b, StateVector.basis(2, [0]))
    assert fixed_by_all(ex1_signed, out.amps)
    span = [StateVector(2, 7, ket(PSI0)), StateVector(2, 7, ket(PSI1))]
    assert span_residual(span, out.amps) < 1e-9


@pytest.mark.parametrize("name", ["five_qubit", "steane", "four_two_two", "example_one", "qutrit_five"])
def test_encode_advance_equals_direct(name):
    code = codes.CORPUS[name]()
    rng = np.random.default_rng(42)
    forbidden = [J for J in subsets(code.n) if is_forbidden(code, J)]
    largest = max(forbidden, key=len)
    b = build_bundle(code, largest)
    secrets = secret_family(code.p, code.k) + [random_secret(code.p, code.k, rng) for _ in range(20)]
    for s in secrets:
        a = encode_advance(b, s)
        d = encode_direct(code, s)
        assert abs(abs(a.inner(d)) - 1) < 1e-9


def test_reconstruct_round_trip(ex1):
    b = build_bundle(ex1, [1, 2, 3, 4])
    zero = StateVector.basis(2, [0])
    back = reconstruct(b, encode_advance(b, zero))
    np.testing.assert_allclose(back.amps, zero.amps, atol=1e-9)
    iplus = StateVector(2, 1, np.array([1, 1j]) / np.sqrt(2))
    assert abs(reconstruct(b, encode_advance(b, iplus)).fidelity(iplus) - 1) < 1e-9


def test_reconstruct_rejects_random_state(ex1):
    b = build_bundle(ex1, [1, 2, 3, 4])
    rng = np.random.default_rng(1)
    amps = rng.normal(size=128) + 1j * rng.normal(size=128)
    with pytest.raises(NotACodeword):
        reconstruct(b, StateVector(2, 7, amps / np.linalg.norm(amps)))


def test_bundle_rejects_non_forbidden(ex1):
    with pytest.raises(NotQualified):
        build_bundle(ex1, [4, 5, 6, 7])
    with pytest.raises(NotQualified):
        build_bundle(ex1, range(1, 8))


def test_bundle_empty_advance_is_direct_encoding(ex1):
    b = build_bundle(ex1, [])
    assert b.ell == 0 and b.padding == ex1.n - ex1.k
    s = StateVector(2, 1, np.array([0.6, 0.8j]))
    np.testing.assert_allclose(encode_advance(b, s).amps, encode_direct(ex1, s).amps, atol=1e-12)


def test_bundle_k_zero_rejected():
    with pytest.raises(ValueError):
        build_bundle(codes.bell(), [])


def test_arbitrary_advance_positions():
    code = codes.five_qubit()
    b = build_bundle(code, [2, 5])
    assert b.J == (1, 3, 4)
    rng = np.random.default_rng(3)
    s = random_secret(2, 1, rng)
    w = encode_advance(b, s)
    assert abs(abs(w.inner(encode_direct(code, s))) - 1) < 1e-9
    # the shares handed out early are qudits 2 and 5 of the final codeword
    np.testing.assert_allclose(reduced_density_matrix(w, [2, 5]), b.advance_shares(), atol=1e-10)


def test_companion_dimension_count(corpus_code):
    """The code shortened at the forbidden set has dimension p^(l+k)."""
    n, p, k = corpus_code.n, corpus_code.p, corpus_code.k
    for jbar in subsets(n):
        if not is_forbidden(corpus_code, jbar):
            continue
        J = [i for i in range(1, n + 1) if i not in jbar]
        ell = corpus_code.shortened(J).k
        assert p ** corpus_code.shortened(jbar).k == p ** (ell + k)
        assert len(J) >= k + ell
