"""Tour of the exact operator-word algebra.

Everything the package computes rests on a four-letter alphabet per site:
the lowering and raising operators r, rd, the excitation counter n = rd*r
and the ground projector m = 1 - n.  Products of words never leave the
word algebra, so nested commutators with the blockaded drive stay exact.
"""

from blockade.words import (
    LOWER, RAISE, NUM, PROJ,
    OperatorSum, ad_power, commutator_H, dumps_operator, hamiltonian_terms,
    infinite_chain, letter_mul, line, make_word, number_operator, ring,
    vacuum_expectation,
)

# --- single-site products close on {r, rd, n, m, 0} -------------------------

print("single-site products (rows: left factor):")
names = {LOWER: "r", RAISE: "rd", NUM: "n", PROJ: "m", None: "0"}
for a in (LOWER, RAISE, NUM, PROJ):
    row = [names[letter_mul(a, b)] for b in (LOWER, RAISE, NUM, PROJ)]
    print(f"  {names[a]:>2} | " + " ".join(f"{x:>2}" for x in row))

# --- the blockaded drive ----------------------------------------------------

# On a ring, each local term is a flip dressed by its neighbours' ground
# projectors; on a 2-site ring the two neighbours coincide.
for model, label in ((ring(5), "5-site ring"), (ring(2), "2-site ring"), (line(3), "3-site chain")):
    h1 = hamiltonian_terms(model)[0]
    print(f"\ndrive term at site 1 on the {label}:")
    print("  " + dumps_operator(h1).replace("\n", "\n  "))

# --- nested commutators -----------------------------------------------------

chain = infinite_chain()
n0 = number_operator(0)
print("\nnested commutators of the local counter on the infinite chain:")
for j in (1, 2, 3):
    adj = ad_power(n0, chain, j)
    print(f"  order {j}: {len(adj.terms)} words, "
          f"vacuum expectation {vacuum_expectation(adj)}")

ad4 = ad_power(n0, chain, 4)
print(f"  order 4: {len(ad4.terms)} words, "
      f"vacuum expectation {vacuum_expectation(ad4)}  -> second Taylor "
      "coefficient -24/4! = -1")

# --- the 2-site ring, fully worked ------------------------------------------

two = ring(2)
cur = number_operator(1)
print("\nall nested commutators of n_1 on the 2-site ring:")
for j in range(1, 5):
    cur = commutator_H(cur, two)
    print(f"  order {j}:")
    print("    " + dumps_operator(cur).replace("\n", "\n    "))
print("\nvacuum expectation at order 4:", vacuum_expectation(cur),
      "-> coefficient -16/4! = -2/3 of t^4")
