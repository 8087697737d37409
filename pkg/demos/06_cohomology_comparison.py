# Koszul complexes of commuting operators, de Rham cohomology of hollow
# constant connections by characters, representations of Z^r in log
# coordinates, and the three-sided comparison.
#
# Run:  python3 demos/06_cohomology_comparison.py

from fractions import Fraction as F

from logres import (AffineMonoid, KoszulInput, LocalSystem, LogConnection,
                    LogDifferentials, Matrix, MonoidIdeal, TauSection,
                    comparison_report, koszul_cohomology,
                    local_system_round_trip, torus_de_rham)
from logres.strata import HollowStructure, Splitting

tau = TauSection()

# Koszul dims: the exterior algebra for zero operators, acyclic as soon
# as one operator is invertible (a non-integral label in log coordinates).
print("two zero operators on C:",
      koszul_cohomology(KoszulInput(operators=[Matrix.zero(1)] * 2)))
print("label 1/2 in log coordinates:",
      koszul_cohomology(KoszulInput(blocks=[((F(1, 2),), (Matrix.zero(1),))])))

# de Rham of G_m with d + a dlog(z): nonzero only for integral a.
Z1 = AffineMonoid([(1,), (-1,)])
KZ = MonoidIdeal(Z1, [])
dZ = LogDifferentials(Z1, KZ)
eps_gm = Splitting(HollowStructure(Z1, KZ), [])
for a in (0, F(1, 2), 1):
    conn = LogConnection.constant(dZ, [[[a]]])
    print("de Rham of (G_m, a=%s):" % a, torus_de_rham(conn, eps_gm))

# The comparison report on the log point: all three sides agree.
N = AffineMonoid([(1,)])
KN = MonoidIdeal(N, [(1,)])
dN = LogDifferentials(N, KN)
eps_pt = Splitting(HollowStructure(N, KN), [[]])
print("\nlog point, residue 0:   ",
      comparison_report(LogConnection.constant(dN, [[[0]]]), eps_pt, tau))
print("log point, residue 1/2: ",
      comparison_report(LogConnection.constant(dN, [[[F(1, 2)]]]), eps_pt, tau))

# The designed counterexample: residues (0, 1) on G_m x log point.  The
# de Rham and V_0 sides vanish, the underlined local system does not, and
# the object is flagged as non-adapted (degree -1 misses the window).
NZ = AffineMonoid([(1, 0), (0, 1), (0, -1)])
KH = MonoidIdeal(NZ, [(1, 0)])
dNZ = LogDifferentials(NZ, KH)
eps_mix = Splitting(HollowStructure(NZ, KH), [[0]])
conn = LogConnection.constant(dNZ, [[[1]], [[0]]])
print("\nG_m x log point, residues (0,1):")
print("  ", comparison_report(conn, eps_mix, tau))

# Local systems of Z^r in log coordinates round-trip through tau-adapted
# graded modules.
W = LocalSystem(2, [((F(-1, 2), 0), (Matrix.zero(1), Matrix.zero(1))),
                    ((0, F(-1, 3)), (Matrix([[0, 1], [0, 0]]),
                                     Matrix([[0, 1], [0, 0]])))])
V, back = local_system_round_trip(W, tau)
print("\nlocal system dim", W.dimension, "->",
      "object rank", V.rank, "-> identity:", back == W.sorted_blocks())
print("cohomology of W:", W.cohomology())
