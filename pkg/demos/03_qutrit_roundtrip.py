# # A qutrit example
#
# The same construction works over any prime field. Here is the cyclic
# five-qutrit code with generator X Z Z^2 X^2 I and its shifts.

import numpy as np

from qss import codes
from qss.access import enumerate_access_structure, subsets
from qss.protocol import build_bundle, encode_advance, random_secret, reconstruct

code = codes.qutrit_five()
print(f"p = {code.p}, n = {code.n}, k = {code.k}")

report = enumerate_access_structure(code)
print("forbidden sets:", report.sets_of("forbidden"))

# Every forbidden set can be shared in advance. We check a round trip for each one.

rng = np.random.default_rng(11)
for jbar in subsets(code.n):
    if report.classes[jbar] != "forbidden":
        continue
    bundle = build_bundle(code, jbar)
    secret = random_secret(code.p, code.k, rng)
    f = reconstruct(bundle, encode_advance(bundle, secret)).fidelity(secret)
    print(f"{jbar!s:>10}  ell={bundle.ell}  padding={bundle.padding}  fidelity={f:.12f}")
