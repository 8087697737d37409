"""Exact matrices over Q(i) and simultaneous generalized-eigenspace
decomposition of commuting families.

Eigenvalues are extracted from the characteristic polynomial by a
rational-root search over Q(i): after clearing denominators the candidate
roots are Gaussian integers dividing the constant term, so the search is
bounded by coefficient divisors.  Matrices whose spectrum leaves Q(i)
raise IrrationalEigenvalue.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import IrrationalEigenvalue, NonCommuting
from .field import GaussRat, ZERO, ONE, as_scalar
from .gaussint import UNITS, gi_divisors, gi_mul


class Matrix:
    """Immutable dense matrix with GaussRat entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if entries and any(len(r) != len(entries[0]) for r in entries):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]) if entries else 0)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n):
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(n, m=None):
        m = n if m is None else m
        return Matrix([[ZERO] * m for _ in range(n)])

    @staticmethod
    def from_columns(cols):
        return Matrix(cols).transpose()

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Matrix(%r)" % ([[str(x) for x in r] for r in self.entries],)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.entries])

    def scale(self, s):
        s = as_scalar(s)
        return Matrix([[s * x for x in r] for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.cols)]
            return Matrix([[_dot(r, c) for c in cols] for r in self.entries])
        return self.scale(other)

    __rmul__ = scale

    def transpose(self):
        return Matrix([self.column(j) for j in range(self.cols)])

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(x.is_zero() for r in self.entries for x in r)

    def commutes_with(self, other):
        return (self * other - other * self).is_zero()

    def is_nilpotent(self):
        if not self.is_square():
            return False
        p = self
        for _ in range(self.rows):
            if p.is_zero():
                return True
            p = p * self
        return p.is_zero()

    def kron(self, other):
        """Kronecker (tensor) product, row-major block layout."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append([self.entries[i][j] * other.entries[k][l]
                            for j in range(self.cols) for l in range(other.cols)])
        return Matrix(out)

    def direct_sum(self, other):
        n, m = self.rows + other.rows, self.cols + other.cols
        out = [[ZERO] * m for _ in range(n)]
        for i in range(self.rows):
            for j in range(self.cols):
                out[i][j] = self.entries[i][j]
        for i in range(other.rows):
            for j in range(other.cols):
                out[self.rows + i][self.cols + j] = other.entries[i][j]
        return Matrix(out)

    def submatrix(self, row_idx, col_idx):
        return Matrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    # -- elimination-based operations --------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        a = [list(r) for r in self.entries]
        m, n = self.rows, self.cols
        pivots = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, m) if not a[i][c].is_zero()), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = ONE / a[r][c]
            a[r] = [inv * x for x in a[r]]
            for i in range(m):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == m:
                break
        return Matrix(a), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Columns spanning the right kernel, from the RREF free variables."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        vecs = []
        for fc in free:
            v = [ZERO] * self.cols
            v[fc] = ONE
            for i, pc in enumerate(pivots):
                v[pc] = -red.entries[i][fc]
            vecs.append(v)
        return vecs

    def solve(self, rhs_cols):
        """Solve self * X = B for the column list rhs_cols; None if unsolvable."""
        m, n = self.rows, self.cols
        k = len(rhs_cols)
        aug = [list(self.entries[i]) + [rhs_cols[j][i] for j in range(k)]
               for i in range(m)]
        red, pivots = Matrix(aug).rref()
        for i in range(len(pivots), m):
            if any(not red.entries[i][n + j].is_zero() for j in range(k)):
                return None
        sol = [[ZERO] * k for _ in range(n)]
        for i, pc in enumerate(pivots):
            if pc >= n:
                return None
            for j in range(k):
                sol[pc][j] = red.entries[i][n + j]
        return [tuple(sol[i][j] for i in range(n)) for j in range(k)]

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        cols = self.solve([tuple(ONE if i == j else ZERO for i in range(self.rows))
                           for j in range(self.rows)])
        if cols is None:
            raise ZeroDivisionError("singular matrix")
        return Matrix.from_columns(cols)

    def charpoly(self):
        """Monic characteristic polynomial det(xI - A), low-to-high coefficients.

        Faddeev-LeVerrier; exact since the base field has characteristic 0.
        """
        n = self.rows
        if n == 0:
            return [ONE]
        coeffs = [ZERO] * n + [ONE]  # x^n coefficient
        m = Matrix.identity(n)
        for k in range(1, n + 1):
            am = self * m
            tr = sum((am.entries[i][i] for i in range(n)), ZERO)
            c = -(tr / GaussRat(k))
            coeffs[n - k] = c
            m = am + Matrix.identity(n).scale(c)
        return coeffs


def _dot(u, v):
    out = ZERO
    for a, b in zip(u, v):
        out = out + a * b
    return out


def matrix_rank(m: Matrix) -> int:
    """Rank over Q(i)."""
    return m.rank()


# -- polynomial helpers over Q(i) -------------------------------------------

def _poly_normalize(p):
    while len(p) > 1 and p[-1].is_zero():
        p = p[:-1]
    return p


def _poly_divmod(a, b):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [ZERO] * max(0, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        f = a[i] / lead
        q[i - db] = f
        if not f.is_zero():
            for j in range(db + 1):
                a[i - db + j] = a[i - db + j] - f * b[j]
    return _poly_normalize(q) if q else [ZERO], _poly_normalize(a[:db] or [ZERO])


def _poly_eval(p, x: GaussRat):
    out = ZERO
    for c in reversed(p):
        out = out * x + c
    return out


def gaussian_rational_roots(poly, scale=1, root_norm_cap=None):
    """All roots in Q(i) of a monic polynomial over Q(i), with multiplicity.

    Returns (roots_with_multiplicity: dict, fully_split: bool); fully_split
    is True when the multiplicities sum to the degree.  When the caller
    knows the coefficients become Gaussian integers after substituting
    x = y / scale (e.g. a characteristic polynomial of an integral
    matrix), passing scale plus a norm bound on the scaled roots keeps the
    divisor search small.
    """
    poly = _poly_normalize(list(poly))
    n = len(poly) - 1
    roots = {}
    # strip zero roots
    k = 0
    while k <= n and poly[k].is_zero():
        k += 1
    if k:
        roots[ZERO] = k
        poly = poly[k:]
    if len(poly) == 1:
        return roots, sum(roots.values()) == n
    d = scale
    m = len(poly) - 1
    intcoeffs = [poly[i] * GaussRat(d) ** (m - i) for i in range(m + 1)]
    if any(not c.is_gaussian_integer() for c in intcoeffs):
        # fall back: clear all denominators (adequate for small inputs)
        for c in poly:
            d = _lcm(d, c.re.denominator, c.im.denominator)
        intcoeffs = [poly[i] * GaussRat(d) ** (m - i) for i in range(m + 1)]
        root_norm_cap = None
    const = intcoeffs[0]
    cz = (int(const.re), int(const.im))
    cap = root_norm_cap
    if cap is None:
        # Cauchy: roots of a monic integral polynomial have
        # |y| <= 1 + max |coefficient|
        from math import isqrt

        maxabs = 1
        for c in intcoeffs[:-1]:
            maxabs = max(maxabs, isqrt(int(c.re) ** 2 + int(c.im) ** 2) + 1)
        cap = (1 + maxabs) ** 2
    candidates = set()
    for div in gi_divisors(cz, norm_cap=cap):
        for u in UNITS:
            z = gi_mul(div, u)
            candidates.add(GaussRat(Fraction(z[0], d), Fraction(z[1], d)))
    found = [x for x in candidates if _poly_eval(poly, x).is_zero()]
    for x in found:
        mult = 0
        p = poly
        while True:
            q, r = _poly_divmod(p, [-x, ONE])
            if not (len(r) == 1 and r[0].is_zero()):
                break
            mult += 1
            p = q
        roots[x] = mult
    return roots, sum(roots.values()) == n


def matrix_eigenvalues(m: Matrix):
    """Eigenvalues of m in Q(i) with algebraic multiplicity.

    Scales the matrix to Gaussian-integer entries first: eigenvalues of
    the scaled matrix are Gaussian integers bounded by the max row sum,
    which keeps the divisor search tight.  Returns (roots, fully_split).
    """
    from math import isqrt

    d = 1
    for row in m.entries:
        for x in row:
            d = _lcm(d, x.re.denominator, x.im.denominator)
    scaled = m.scale(GaussRat(d))
    rowsum = 1
    for row in scaled.entries:
        s = sum(isqrt(int(x.re) ** 2 + int(x.im) ** 2) + 1 for x in row)
        rowsum = max(rowsum, s)
    roots, split = gaussian_rational_roots(m.charpoly(), scale=d,
                                           root_norm_cap=rowsum * rowsum)
    return roots, split


def _lcm(*xs):
    from math import lcm

    return lcm(*xs)


# -- joint eigen decomposition ----------------------------------------------

class EigenBlock:
    """One joint generalized eigenspace of a commuting family.

    label      -- tuple of GaussRat, one eigenvalue per operator
    basis      -- Matrix whose columns span the block inside the ambient space
    nilpotents -- per operator, the block restriction of (op - label * I)
    """

    __slots__ = ("label", "basis", "nilpotents")

    def __init__(self, label, basis, nilpotents):
        object.__setattr__(self, "label", tuple(label))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "nilpotents", tuple(nilpotents))

    def __setattr__(self, name, value):
        raise AttributeError("EigenBlock is immutable")

    @property
    def dim(self):
        return self.basis.cols

    def __repr__(self):
        return "EigenBlock(label=%s, dim=%d)" % (
            tuple(str(x) for x in self.label), self.dim)


def _restriction(op: Matrix, basis: Matrix) -> Matrix:
    """Matrix of op restricted to the column span of basis, in that basis."""
    image = op * basis
    coords = basis.solve([image.column(j) for j in range(image.cols)])
    if coords is None:
        raise ValueError("subspace not invariant")
    return Matrix.from_columns(coords)


def _mat_power(m: Matrix, k: int) -> Matrix:
    out = Matrix.identity(m.rows)
    for _ in range(k):
        out = out * m
    return out


def eigen_decompose(ops) -> list:
    """Joint generalized-eigenspace decomposition of commuting matrices.

    Splits along one operator at a time; each operator's characteristic
    polynomial must factor into linear factors over Q(i), otherwise
    IrrationalEigenvalue is raised.  Blocks come back sorted by label.
    """
    ops = list(ops)
    if not ops:
        raise ValueError("need at least one operator")
    n = ops[0].rows
    for op in ops:
        if not op.is_square() or op.rows != n:
            raise ValueError("operators must be square of equal size")
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if not ops[a].commutes_with(ops[b]):
                raise NonCommuting("operators %d and %d do not commute" % (a, b))

    blocks = [(tuple(), Matrix.identity(n))]
    for op in ops:
        refined = []
        for label, basis in blocks:
            rest = _restriction(op, basis)
            roots, split = matrix_eigenvalues(rest)
            if not split:
                raise IrrationalEigenvalue(
                    "characteristic polynomial does not split over Q(i)")
            for lam in sorted(roots, key=GaussRat.sort_key):
                mult = roots[lam]
                shifted = rest - Matrix.identity(rest.rows).scale(lam)
                ker = _mat_power(shifted, mult).kernel_basis()
                if len(ker) != mult:
                    raise ArithmeticError("generalized eigenspace dimension mismatch")
                sub = Matrix.from_columns(ker)
                new_basis = basis * sub
                refined.append((label + (lam,), new_basis))
        blocks = refined

    out = []
    for label, basis in blocks:
        nils = []
        for k, op in enumerate(ops):
            r = _restriction(op, basis)
            nils.append(r - Matrix.identity(r.rows).scale(label[k]))
        out.append(EigenBlock(label, basis, nils))
    out.sort(key=lambda b: tuple(x.sort_key() for x in b.label))
    return out


def reassemble(blocks, k: int) -> Matrix:
    """Rebuild operator k from its blocks: P (diag of label*I + N) P^-1."""
    basis_cols = []
    diag = None
    for b in blocks:
        for j in range(b.basis.cols):
            basis_cols.append(b.basis.column(j))
        piece = b.nilpotents[k] + Matrix.identity(b.dim).scale(b.label[k])
        diag = piece if diag is None else diag.direct_sum(piece)
    p = Matrix.from_columns(basis_cols)
    return p * diag * p.inverse()


def integer_eigenvalues(m: Matrix):
    """The integer eigenvalues of m (as plain ints), from the root search."""
    roots, _ = matrix_eigenvalues(m)
    return sorted(int(x.re) for x in roots if x.is_integer())
