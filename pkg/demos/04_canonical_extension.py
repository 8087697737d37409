# Canonical extensions across the model embedding A_{P,K} x G_m^r into
# A_{P,K} x A^r: restriction inverts the coordinates at infinity, and a
# section tau of Q/Z picks a preferred extension back.
#
# Run:  python3 demos/04_canonical_extension.py

from fractions import Fraction as F

from logres import (AffineMonoid, GoodEmbeddingModel, Matrix, MonoidIdeal,
                    TauSection, canonical_extension, exponents_report,
                    restrict, tau_normalize)
from logres.lobjects import LObject

tau = TauSection()          # the default window (-1, 0]
print("tau(5/2) =", tau(F(5, 2)), "  tau(0) =", tau(F(0)),
      "  tau(-1) =", tau(F(-1)))

# One coordinate at infinity over the trivial core.
Z0 = AffineMonoid([], ambient_rank=0)
E = GoodEmbeddingModel(Z0, MonoidIdeal(Z0, ()), 1)

# A rank-one object over Q' = Z with degree 5/2: the canonical extension
# rescales the generator by x^-3 so the degree lands at tau(5/2) = -1/2.
Vp = LObject(E.monoid_qp, E.ideal_qp, [(F(5, 2),)], [Matrix([[0]])])
V, shifts = canonical_extension(E, Vp, tau)
print("\nextension degrees:", [[str(x) for x in d] for d in V.degrees],
      "shifts:", shifts)

rep = exponents_report(E, V, tau)
print("exponents at infinity:", [[str(x) for x in e] for e in rep.exponents],
      "adapted:", rep.adapted)

# Round trips are literal identities after tau-normalizing the Q' side.
E2 = GoodEmbeddingModel(Z0, MonoidIdeal(Z0, ()), 2)
Vp2 = LObject(E2.monoid_qp, E2.ideal_qp,
              [(F(3, 2), F(-2)), (F(1, 2), F(-1))],
              [Matrix([[0, 1], [0, 0]]), Matrix.zero(2)])
norm, norm_shifts = tau_normalize(E2, Vp2, tau)
ext, ext_shifts = canonical_extension(E2, norm, tau)
print("\ntwo coordinates at infinity: normalization shifts", norm_shifts)
print("restrict(extend(normalized)) == normalized:",
      restrict(E2, ext) == norm)
ext2, reshifts = canonical_extension(E2, restrict(E2, ext), tau)
print("extend(restrict(adapted)) == adapted:", ext2 == ext,
      " (shifts", reshifts, ")")
