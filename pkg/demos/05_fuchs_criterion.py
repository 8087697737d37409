# Regular singularity of differential modules over the Laurent field:
# the cyclic-vector Fuchs test, pullbacks along curve germs, and the
# closure properties.
#
# Run:  python3 demos/05_fuchs_criterion.py

from fractions import Fraction as F

from logres import (AffineMonoid, DiffModuleGerm, GermMap, LogConnection,
                    LogDifferentials, MonoidIdeal, RatFunc, gauge_transform,
                    germ_direct_sum, germ_dual, germ_tensor, is_fuchsian,
                    pullback_germ, scalar_theta_form)

c = RatFunc.const

# t d/dt + A with constant A keeps the standard lattice: regular.
g = DiffModuleGerm([[c(3), c(1)], [c(0), c(F(1, 2))]])
print("constant system fuchsian:", is_fuchsian(g))

# The classical e^{1/t} example: rank one with A = 1/t.
irr = DiffModuleGerm([[RatFunc.t_power(-1)]])
print("A = 1/t fuchsian:", is_fuchsian(irr))
print("its scalar theta-form coefficient:", scalar_theta_form(irr)[0])

# A regular system whose matrix has a pole: [[0,0],[-2/t,1]].
polar = DiffModuleGerm([[c(0), c(0)], [RatFunc.t_power(-1) * c(-2), c(1)]])
print("\n[[0,0],[-2/t,1]] fuchsian:", is_fuchsian(polar))

# Frame changes do not move the answer (the conjugation carries
# T A T^-1 - t T' T^-1).
T = [[RatFunc.t_power(0), RatFunc.t_power(-2)],
     [RatFunc((F(0),)), RatFunc.t_power(0)]]
print("after a polar gauge:", is_fuchsian(gauge_transform(polar, T)))

# Pullback along a curve germ: dlog directions pick up t f'/f.
N = AffineMonoid([(1,)])
dN = LogDifferentials(N, MonoidIdeal(N, []))
conn = LogConnection.constant(dN, [[[F(2, 3)]]])
open_face = N.faces()[1]
for value, label in [(RatFunc.t_power(1), "x = t"),
                     (RatFunc.t_power(2), "x = t^2"),
                     (RatFunc((F(0), F(1), F(1))), "x = t(1+t)")]:
    m = GermMap(N, open_face, [value], [])
    print("pullback along %-10s ->" % label,
          pullback_germ(conn, m).theta_matrix[0][0])

# Germs with a center (power-series-unit values) always pull back to
# regular modules; and the class is closed under the tensor operations.
print("\ntensor of regular pair fuchsian:", is_fuchsian(germ_tensor(polar, g)))
print("dual fuchsian:", is_fuchsian(germ_dual(polar)))
print("direct sum fuchsian:", is_fuchsian(germ_direct_sum(polar, g)))
print("but the sum with e^{1/t} is not:",
      is_fuchsian(germ_direct_sum(g, irr)))
