# # Sharing four shares before the secret exists
#
# With the 7-qubit running example, shares {1,2,3,4} form a forbidden set.
# We build the protocol bundle for it, hand those four shares out, and only
# afterwards encode a secret into shares {5,6,7}.

import numpy as np

from qss import codes
from qss.protocol import build_bundle, encode_advance, encode_direct, reconstruct
from qss.simulator import StateVector, reduced_density_matrix

code = codes.example_one()
bundle = build_bundle(code, [1, 2, 3, 4])
print(bundle.summary())

# The initial state Phi lives on all n - k = 6 qudits. The first four are the
# advance shares. Their reduced state does not depend on any secret because
# no secret has been chosen yet.

rho_adv = bundle.advance_shares()
print("advance share purity:", np.real(np.trace(rho_adv @ rho_adv)))

# Now the secret arrives.

secret = StateVector(2, 1, np.array([np.cos(0.3), np.exp(0.7j) * np.sin(0.3)]))
late = encode_advance(bundle, secret)
direct = encode_direct(code, secret)
print("fidelity with ordinary encoding:", late.fidelity(direct))

# The four early shares still carry the same reduced state, so they learned nothing.

print(np.allclose(reduced_density_matrix(late, [1, 2, 3, 4]), rho_adv, atol=1e-12))

# The qualified set {5,6,7} undoes U_J and reads the secret off.

out = reconstruct(bundle, late)
print("recovered fidelity:", out.fidelity(secret))

# ## A set that cannot be shared early
#
# {4,5,6,7} is not forbidden, because {1,2,3} alone is not qualified.

from qss.protocol import NotQualified

try:
    build_bundle(code, [4, 5, 6, 7])
except NotQualified as exc:
    print("rejected:", exc)
