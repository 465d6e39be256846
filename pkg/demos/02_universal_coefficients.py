"""Size-free Taylor coefficients, two independent ways.

The short-time expansion of the excitation density has exact rational
coefficients that do not depend on the lattice size, as long as the order
stays below a threshold set by the commutator reach.  This script computes
them symbolically, re-derives them from exact integer matrix algebra, and
extracts the open-chain boundary deficits.
"""

from fractions import Fraction

from blockade.dynamics import taylor_oracle
from blockade.series import (
    boundary_deficits, correlation_coefficients, density, density_coefficients,
    eval_series, universality_threshold,
)
from blockade.words import infinite_chain, line, ring

# --- the universal density series -------------------------------------------

print("universal density coefficients (coefficient of t^(2j)):")
for lam, jmax in ((1, 5), (2, 4), (3, 3)):
    sc = density_coefficients(infinite_chain(lam), jmax)
    pretty = ", ".join(str(c) for c in sc.even_values())
    print(f"  blockade range {lam}: {pretty}")

# --- the same numbers from exact integer matrices ----------------------------

# On a ring of L sites the coefficients are size-free through order L-1, so a
# 12-site ring pins the first eleven.  The oracle works with exact integer
# vectors; no floating point is involved.
orc = taylor_oracle(ring(12), density(), 5)
sym = density_coefficients(infinite_chain(), 5).even_values()
print("\ninteger-matrix oracle on a 12-site ring:", ", ".join(str(c) for c in orc.coefficients))
print("equal to the symbolic route:", orc.coefficients == sym)

# --- pair counters ------------------------------------------------------------

print("\npair-counter coefficients at distances 2 and 3:")
for d in (2, 3):
    cc = correlation_coefficients(infinite_chain(), d, 5)
    print(f"  d={d}: " + ", ".join(str(c) for c in cc.even_values()))

# --- where universality stops -------------------------------------------------

print("\ncertified-universal threshold on rings (density):")
for L in (6, 9, 18):
    print(f"  {L} sites: orders j <= {universality_threshold(ring(L), density())}")

c5_small = density_coefficients(ring(5), 5).even_values()
print("\na 5-site ring matches the size-free values through j = 4:")
print("  ", ", ".join(str(c) for c in c5_small), " (j = 5 differs)")

# --- open chains: exact boundary deficits --------------------------------------

qs = boundary_deficits(5, L_probe=12)
print("\nopen-chain deficits (coefficient_j = universal_j * (1 - deficit_j / L)):")
print("  ", ", ".join(str(q) for q in qs))
cL = density_coefficients(line(9), 3).even_values()
print("check at 9 sites, j = 2:", cL[1], "==", Fraction(-1) * (1 - qs[1] / 9))

# --- evaluating the series ------------------------------------------------------

sc = density_coefficients(infinite_chain(), 5)
print("\nuniversal density at small times (10-order truncation):")
for t in (0.1, 0.3, 0.5):
    print(f"  t={t}: {eval_series(sc, t):.10f}")
