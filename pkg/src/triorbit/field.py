"""Exact arithmetic in the prime field GF(p).

Field elements are canonical integer residues in [0, p).  A ``GF`` instance
carries the modulus and supplies all arithmetic, so matrices store plain
ints and stay cheap to hash and compare.
"""

from .errors import NonPrimeModulus, ZeroInverse


def is_prime(p: int) -> bool:
    """Deterministic trial division; p stays small in this package."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class GF:
    """The prime field GF(p), acting as a context for residue arithmetic."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not is_prime(p):
            raise NonPrimeModulus(f"modulus {p!r} is not prime")
        self.p = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.p == other.p

    def __hash__(self):
        return hash(("GF", self.p))

    def element(self, value: int) -> int:
        """Reduce an arbitrary integer to its canonical residue."""
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        """Multiplicative inverse by extended Euclid.

        Raises ZeroInverse on 0; that always indicates an upstream logic
        error, never bad user input.
        """
        a %= self.p
        if a == 0:
            raise ZeroInverse(f"0 has no inverse in GF({self.p})")
        # Invariant: r = s * a (mod p), nr = ns * a (mod p).
        r, nr = self.p, a
        s, ns = 0, 1
        while nr:
            q = r // nr
            r, nr = nr, r - q * nr
            s, ns = ns, s - q * ns
        assert r == 1
        return s % self.p

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def elements(self):
        """All residues, ascending."""
        return range(self.p)

    def nonzero(self):
        """All nonzero residues, ascending."""
        return range(1, self.p)
