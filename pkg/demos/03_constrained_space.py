"""The blockade-constrained state space and its exact integer matrices.

With a hard blockade, the accessible states of an open chain are counted by
the Fibonacci numbers and ordered by a two-block recursion; the drive and
counter matrices inherit that block structure.  Excitation-number parity
anticommutes with the drive, which pins the spectrum symmetric about zero.
"""

import numpy as np

from blockade.basis import (
    blockade_dimension, build_basis, drive_matrix_recursive, dumps_matrix,
    hamiltonian_matrix, observable_matrix, parity_matrix,
)
from blockade.dynamics import spectral_checks
from blockade.series import density
from blockade.words import line, ring

# --- Fibonacci counting -------------------------------------------------------

print("open-chain dimensions (nearest-neighbour blockade):")
print("  ", [blockade_dimension(line(L)) for L in range(1, 13)])

print("ring dimensions:")
print("  ", [blockade_dimension(ring(L)) for L in range(2, 13)])

print("longer blockade thins the space: range-2 open chains:")
print("  ", [blockade_dimension(line(L, 2)) for L in range(1, 13)])

# --- the recursive basis --------------------------------------------------------

b = build_basis(line(5))
print("\n5-site open chain, recursive order (1 = excited):")
print("  ", " ".join(b.state_string(s) for s in b.states))

# --- small matrices --------------------------------------------------------------

print("\ndrive matrix of the 2-site chain:")
print(dumps_matrix(hamiltonian_matrix(line(2), build_basis(line(2)))))
print("total-counter diagonal of the 2-site chain:",
      observable_matrix(line(2), build_basis(line(2)), density()).diagonal())

# The generic bit-flip construction and the block recursion agree exactly.
L = 10
same = hamiltonian_matrix(line(L), build_basis(line(L))) == drive_matrix_recursive(L)
print(f"\nblock recursion == bit-flip construction at {L} sites:", same)

# --- parity structure -------------------------------------------------------------

model = ring(8)
bb = build_basis(model)
h = hamiltonian_matrix(model, bb)
p = parity_matrix(bb).diagonal()
anti = all(p[r] + p[c] == 0 for (r, c) in h.entries)
print(f"\nparity anticommutes with the drive on the 8-site ring: {anti}")

rep = spectral_checks(model)
print("spectrum symmetric about zero to", f"{rep.spectrum_asymmetry:.1e}")
print("nonzero-energy eigenvectors carry even/odd weight 1/2 to",
      f"{rep.parity_weight_defect:.1e}")
print("dimension", rep.dimension, "- zero mode present:" , rep.zero_mode)
