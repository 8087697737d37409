# The local correspondence between constant log connections and graded
# monodromy modules: d + U dlog(x) on one side, a graded module whose
# monodromy is stored as (label, nilpotent) pairs on the other.
#
# Run:  python3 demos/03_rh_correspondence.py

from fractions import Fraction as F

from logres import (AffineMonoid, LogConnection, LogDifferentials, Matrix,
                    MonoidIdeal, check_axioms, from_lobject, graded_piece,
                    tensor, to_lobject)

N = AffineMonoid([(1,)])
K0 = MonoidIdeal(N, [])
dN = LogDifferentials(N, K0)

# Rank one, U = 1/2: the monodromy of the associated local system is
# exp(-2 pi i / 2) = -1.  The module records degree -1/2 and the symbol
# e(-1/2); nothing transcendental is ever expanded.
conn = LogConnection.constant(dN, [[[F(1, 2)]]])
V = to_lobject(conn)
print("degrees:", [[str(x) for x in d] for d in V.degrees])
print("monodromy blocks:", [(tuple(str(x) for x in deg),
                             [m.entries for m in nils])
                            for deg, nils in V.monodromy_blocks()])

# The inverse functor reproduces the connection on the nose.
print("round trip:", from_lobject(V) == conn)

# A Jordan block: unipotent monodromy, nilpotent part -J.
jordan = LogConnection.constant(dN, [[[0, 1], [0, 0]]])
VJ = to_lobject(jordan)
print("\nJordan block degrees:", [[str(x) for x in d] for d in VJ.degrees])
print("stored nilpotent:", VJ.log_matrices[0].entries)
print("round trip:", from_lobject(VJ) == jordan,
      to_lobject(from_lobject(VJ)) == VJ)

# The functor is monoidal: tensor of connections corresponds to tensor of
# modules (degrees add, nilpotents combine as N (x) 1 + 1 (x) N').
t_conn = conn.tensor(jordan)
lhs = to_lobject(t_conn).canonical_sort()[0]
rhs = tensor(V, VJ).canonical_sort()[0]
print("\nmonoidality:", lhs == rhs)

# Graded modules can carry couplings between classes: a monomial entry
# c * x^(degree difference) in the log matrix.  Axioms are decidable.
W = Matrix([[0, F(3, 7)], [0, 0]])
from logres.lobjects import LObject

coupled = LObject(N, K0, [(0,), (1,)], [W])
print("\ncoupled object valid:", check_axioms(coupled).ok)
piece = graded_piece(coupled, (1,))
print("graded piece at 1: dim", piece.dimension,
      "effective matrix", piece.operators[0][1].entries)
