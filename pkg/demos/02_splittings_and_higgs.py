# Splittings of hollow models, the pullback to the unit torus, the
# dependence on the splitting, and the Higgs decomposition.
#
# Run:  python3 demos/02_splittings_and_higgs.py

from fractions import Fraction as F

from logres import (AffineMonoid, LogConnection, LogDifferentials,
                    MonoidIdeal, higgs_conditions, higgs_decompose,
                    pullback_to_cover, splitting_cover, splitting_delta,
                    eps_pullback)
from logres.errors import ConditionsFailed

# The splitting cover of the log point of N: underlying scheme a rank-1
# torus, with the universal splitting (each class goes to its own torus
# character) and the obvious one (trivial monomial part).
N = AffineMonoid([(1,)])
Q, KQ, hs, universal, obvious = splitting_cover(N)
print("cover generators:", Q.generators)
print("universal monomial part:", universal.monomial_part,
      "obvious:", obvious.monomial_part)

# d + U dlog(p) pulled back: the universal splitting sends dlog(p) to the
# torus coordinate dlog(y); the obvious one kills it.
dN = LogDifferentials(N, MonoidIdeal(N, [(1,)]))
conn = LogConnection.constant(dN, [[[F(1, 2)]]])
cover_conn = pullback_to_cover(conn, LogDifferentials(Q, KQ), hs)
print("\nuniversal pullback entry:", eps_pullback(cover_conn, universal).omega[0][0][0])
print("obvious pullback entry:  ", eps_pullback(cover_conn, obvious).omega[0][0][0])

# Two splittings differ by a character map delta; the difference of the
# two pullbacks is exactly (1 (x) delta) composed with the residue map.
delta, ok = splitting_delta(universal, obvious, cover_conn)
print("\ndelta(universal, obvious):", delta, " identity verified:", ok)

# Higgs decomposition: a flat connection on a hollow model is the same as
# a torus connection with commuting horizontal residues.
hd = higgs_decompose(cover_conn, obvious)
print("\nhiggs base rank:", hd.base.rank,
      "residue:", hd.residue_matrices()[0].entries)

# Failure is attributed to a named condition: noncommuting residues on
# the N^2 log point violate condition ii.
N2 = AffineMonoid([(1, 0), (0, 1)])
Q2, KQ2, hs2, univ2, obv2 = splitting_cover(N2)
d2 = LogDifferentials(N2, MonoidIdeal(N2, [(1, 0), (0, 1)]))
bad = LogConnection.constant(d2, [[[0, 1], [0, 0]], [[0, 0], [1, 0]]])
bad_cover = pullback_to_cover(bad, LogDifferentials(Q2, KQ2), hs2)
print("\nconditions on the noncommuting pair:",
      higgs_conditions(bad_cover, obv2)[:3])
try:
    higgs_decompose(bad_cover, obv2)
except ConditionsFailed as e:
    print("higgs_decompose refused, failing conditions:", e.failed)
