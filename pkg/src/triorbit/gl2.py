"""The group GL2(T_n) of invertible 2x2 block matrices over T_n.

A block matrix [X Y; W Z] with lower triangular blocks is invertible
exactly when x_ii z_ii - y_ii w_ii is nonzero for every index i.  The group
acts on pairs from the right; units of T_n act from the left.  A finite
elementary generating set drives the orbit search in the oracle module.
"""

from .errors import DimensionMismatch, NotAUnit, NotInvertible
from .modpairs import ModulePair
from .trimat import LowerTriMatrix


def gl2_is_invertible(X, Y, W, Z) -> bool:
    """Per-index 2x2 determinant test on the diagonals."""
    if not (X.n == Y.n == W.n == Z.n and X.field == Y.field == W.field == Z.field):
        raise DimensionMismatch("blocks must share dimension and field")
    p = X.field.p
    for x, y, w, z in zip(X.diag(), Y.diag(), W.diag(), Z.diag()):
        if (x * z - y * w) % p == 0:
            return False
    return True


class GL2Element:
    """The block matrix [X Y; W Z]; the invertibility test runs at construction."""

    __slots__ = ("X", "Y", "W", "Z")

    def __init__(self, X, Y, W, Z):
        if not gl2_is_invertible(X, Y, W, Z):
            raise NotInvertible("x_ii z_ii - y_ii w_ii = 0 at some index")
        self.X = X
        self.Y = Y
        self.W = W
        self.Z = Z

    @property
    def n(self):
        return self.X.n

    @property
    def field(self):
        return self.X.field

    @classmethod
    def identity(cls, field, n):
        one = LowerTriMatrix.identity(field, n)
        zero = LowerTriMatrix.zero(field, n)
        return cls(one, zero, zero, one)

    @classmethod
    def swap(cls, field, n):
        one = LowerTriMatrix.identity(field, n)
        zero = LowerTriMatrix.zero(field, n)
        return cls(zero, one, one, zero)

    @classmethod
    def block_diag(cls, U, V):
        """[U 0; 0 V]."""
        zero = LowerTriMatrix.zero(U.field, U.n)
        return cls(U, zero, zero, V)

    @classmethod
    def upper(cls, Y):
        """[I Y; 0 I]."""
        one = LowerTriMatrix.identity(Y.field, Y.n)
        zero = LowerTriMatrix.zero(Y.field, Y.n)
        return cls(one, Y, zero, one)

    @classmethod
    def lower(cls, W):
        """[I 0; W I]."""
        one = LowerTriMatrix.identity(W.field, W.n)
        zero = LowerTriMatrix.zero(W.field, W.n)
        return cls(one, zero, W, one)

    def is_identity(self):
        return (
            self.X == LowerTriMatrix.identity(self.field, self.n)
            and self.Z == self.X
            and self.Y.is_zero()
            and self.W.is_zero()
        )

    def __mul__(self, other):
        if not isinstance(other, GL2Element):
            return NotImplemented
        return GL2Element(
            self.X * other.X + self.Y * other.W,
            self.X * other.Y + self.Y * other.Z,
            self.W * other.X + self.Z * other.W,
            self.W * other.Y + self.Z * other.Z,
        )

    def inverse(self):
        """Invert via the interleaved 2n x 2n matrix.

        Ordering rows and columns as (1, n+1, 2, n+2, ...) turns the block
        matrix into a block lower triangular matrix with invertible 2x2
        diagonal cells, so plain Gauss-Jordan elimination never meets a zero
        pivot column and the inverse has lower triangular blocks again.
        """
        n, f = self.n, self.field
        p = f.p
        size = 2 * n
        M = [[0] * size for _ in range(size)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                M[2 * i - 2][2 * j - 2] = self.X.entry(i, j)
                M[2 * i - 2][2 * j - 1] = self.Y.entry(i, j)
                M[2 * i - 1][2 * j - 2] = self.W.entry(i, j)
                M[2 * i - 1][2 * j - 1] = self.Z.entry(i, j)
        aug = [row + [int(r == c) for c in range(size)] for r, row in enumerate(M)]
        for col in range(size):
            pivot = next(r for r in range(col, size) if aug[r][col] % p)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = f.inv(aug[col][col])
            aug[col] = [v * inv % p for v in aug[col]]
            for r in range(size):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [(a - factor * b) % p for a, b in zip(aug[r], aug[col])]
        inv_rows = [row[size:] for row in aug]

        def block(roff, coff):
            rows = [[inv_rows[2 * i + roff][2 * j + coff] for j in range(n)]
                    for i in range(n)]
            return LowerTriMatrix.from_rows(f, rows)

        return GL2Element(block(0, 0), block(0, 1), block(1, 0), block(1, 1))

    def __eq__(self, other):
        return (
            isinstance(other, GL2Element)
            and self.X == other.X and self.Y == other.Y
            and self.W == other.W and self.Z == other.Z
        )

    def __hash__(self):
        return hash((self.X, self.Y, self.W, self.Z))

    def __repr__(self):
        return (f"GL2Element(X={list(self.X.entries)}, Y={list(self.Y.entries)}, "
                f"W={list(self.W.entries)}, Z={list(self.Z.entries)}, p={self.field.p})")


def act_right(pair: ModulePair, g: GL2Element) -> ModulePair:
    """(A, B) [X Y; W Z] = (AX + BW, AY + BZ)."""
    if pair.n != g.n or pair.field != g.field:
        raise DimensionMismatch("pair and group element must match")
    return ModulePair(pair.A * g.X + pair.B * g.W, pair.A * g.Y + pair.B * g.Z)


def act_left_unit(u: LowerTriMatrix, pair: ModulePair) -> ModulePair:
    """(A, B) -> (UA, UB); generates the same cyclic submodule."""
    if not u.is_unit():
        raise NotAUnit("left action requires a unit of T_n")
    return ModulePair(u * pair.A, u * pair.B)


def unit_generators(field, n):
    """Elementary generators of T_n^*: diagonal scalings and transvections."""
    gens = []
    one = LowerTriMatrix.identity(field, n)
    for i in range(1, n + 1):
        for lam in field.nonzero():
            if lam == 1:
                continue  # d_i(1) is the identity
            gens.append(one.with_entry(i, i, lam))
    for i in range(2, n + 1):
        for j in range(1, i):
            for lam in field.nonzero():
                gens.append(one.with_entry(i, j, lam))
    return gens


def gl2_generators(field, n):
    """Elementary generating set used by the orbit search.

    Unit embeddings on either diagonal block, single-entry transvection
    blocks on either off-diagonal, and the swap.
    """
    gens = []
    seen = set()

    def push(g):
        if g not in seen:
            seen.add(g)
            gens.append(g)

    one = LowerTriMatrix.identity(field, n)
    for u in unit_generators(field, n):
        push(GL2Element.block_diag(u, one))
        push(GL2Element.block_diag(one, u))
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            for lam in field.nonzero():
                E = LowerTriMatrix.single(field, n, i, j, lam)
                push(GL2Element.upper(E))
                push(GL2Element.lower(E))
    push(GL2Element.swap(field, n))
    return gens
