"""Tabulated reference values bundled for regression comparison.

The reference table lists, for six subtract-kind states pinned to EPR
correlation 1.0, the solved squeezing parameter, the coherent-input
teleportation fidelity, and the entanglement entropy in bits.  The CLI's
``table1`` command recomputes all three and reports diffs against these
values.

Known inconsistency, kept verbatim: the (1,0) entropy entry 2.094 cannot be
reproduced from its own column, since EPR correlation 1.0 forces
r = ln 2 exactly and the Schmidt weights n (1-T)^2 T^{n-1} (T = 9/25) then
sum to 2.096537 bits.  The (0,0) squeezing entry 0.3462 is likewise a
rounding artifact of the exact value ln(2)/2 = 0.34657.
"""

# column order of the reference table
TABLE_SHAPES = ((2, 2), (1, 1), (0, 0), (1, 0), (2, 1), (2, 0))

TABLE_EPR_TARGET = 1.0

# (k, l) -> (r, coherent fidelity, entropy bits)
REFERENCE_TABLE = {
    (2, 2): {"r": 0.1226, "fidelity": 0.6632, "entropy": 0.5841},
    (1, 1): {"r": 0.1798, "fidelity": 0.6637, "entropy": 0.5755},
    (0, 0): {"r": 0.3462, "fidelity": 0.6665, "entropy": 0.5662},
    (1, 0): {"r": 0.6931, "fidelity": 0.6400, "entropy": 2.094},
    (2, 1): {"r": 0.5000, "fidelity": 0.6379, "entropy": 2.0925},
    (2, 0): {"r": 0.8959, "fidelity": 0.6300, "entropy": 3.1624},
}

TOLERANCES = {"r": 1e-3, "fidelity": 1e-3, "entropy": 2e-3}
