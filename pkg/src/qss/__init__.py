"""Stabilizer-based quantum secret sharing with advance sharing of forbidden sets."""

from .access import (
    AccessReport,
    classify,
    enumerate_access_structure,
    is_eaqecc_shareable,
    is_forbidden,
    is_qualified,
)
from .gfmat import GfMatrix, kernel, rank, rref, row_space_equal
from .pauli import (
    PauliElement,
    StabilizerCode,
    load_stabilizer,
    parse_stabilizer,
    pauli_parse,
    shorten,
    symplectic_dual,
    symplectic_product,
    validate_stabilizer,
)
from .protocol import (
    NotACodeword,
    NotQualified,
    PaddingError,
    ProtocolBundle,
    build_bundle,
    build_unitary,
    companion_basis,
    encode_advance,
    encode_direct,
    initial_state,
    reconstruct,
    shortened_basis,
)
from .simulator import (
    DenseOperator,
    StateVector,
    apply_on_subset,
    codespace_basis,
    forbidden_oracle,
    pauli_matrix,
    reduced_density_matrix,
)

__version__ = "0.1.0"
