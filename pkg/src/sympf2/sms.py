"""Symplectic vector and metric spaces over GF(2).

A metric space is a pair (V, mu) where mu: V -> GF(2) vanishes at 0 and its
polarization m(x, y) = mu(x) + mu(y) + mu(x+y) is bilinear.  The mu-table is
stored additively: table bit v is mu(v), with bit convention "binary digits
of v = coordinates, least significant bit = first basis vector".

Every space is classified up to isomorphism by the tuple (eps, delta, r, s):
eps = 1 iff mu is nonzero somewhere on ker m, r = dim ker m - eps, delta the
Arf invariant of the descended nondegenerate form (0 when eps = 1), and
s = (dim V/ker m)/2 - delta.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .f2core import F2Matrix, Subspace, nullspace


@dataclass(frozen=True)
class InvariantTuple:
    """Classification signature (eps, delta, r, s) of a metric space."""

    eps: int
    delta: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.eps not in (0, 1) or self.delta not in (0, 1):
            raise ValueError("eps and delta must be 0 or 1")
        if self.eps and self.delta:
            raise ValueError("invalid tuple: eps = 1 forces delta = 0")
        if self.r < 0 or self.s < 0:
            raise ValueError("r and s must be nonnegative")

    @property
    def ambient_rank(self) -> int:
        return self.r + self.eps + 2 * self.delta + 2 * self.s

    @property
    def defect_value(self) -> int:
        """Closed form (1-eps) * (-1)^delta * 2^(r+s+delta)."""
        return (1 - self.eps) * (-1) ** self.delta * (1 << (self.r + self.s + self.delta))

    def label(self) -> str:
        return f"V_{{{self.r},{self.s};{self.eps},{self.delta}}}"


@dataclass(frozen=True)
class DefectIndex:
    """Count of mu=0 elements minus count of mu=1 elements."""

    value: int


@dataclass(frozen=True)
class SymplecticVectorSpace:
    """(V, m) without a quadratic refinement: a symmetric zero-diagonal Gram."""

    rank: int
    gram: F2Matrix

    def __post_init__(self) -> None:
        g = self.gram
        if g.rows != self.rank or g.cols != self.rank:
            raise ValueError("Gram matrix shape mismatch")
        for i in range(self.rank):
            if g.entry(i, i):
                raise ValueError("Gram diagonal must be zero")
            for j in range(i):
                if g.entry(i, j) != g.entry(j, i):
                    raise ValueError("Gram matrix must be symmetric")


@dataclass(frozen=True)
class SymplecticMetricSpace:
    """(V, m, mu) with mu packed into an integer table of 2^rank bits."""

    rank: int
    table: int

    def __post_init__(self) -> None:
        if self.rank < 0 or self.rank > 16:
            raise ValueError("rank outside supported range 0..16")
        if self.table < 0 or self.table >> (1 << self.rank):
            raise ValueError(f"mu-table does not have length 2^{self.rank}")

    @classmethod
    def from_mu_list(cls, mu: list[int]) -> "SymplecticMetricSpace":
        n = len(mu)
        if n == 0 or n & (n - 1):
            raise ValueError(f"mu-table length {n} is not a power of two")
        table = 0
        for v, bit in enumerate(mu):
            if bit not in (0, 1):
                raise ValueError("mu values must be 0 or 1")
            table |= bit << v
        return cls(n.bit_length() - 1, table)

    def mu(self, v: int) -> int:
        return (self.table >> v) & 1

    def mu_list(self) -> list[int]:
        return [self.mu(v) for v in range(1 << self.rank)]

    def m(self, x: int, y: int) -> int:
        """Polarized pairing m(x, y) = mu(x) + mu(y) + mu(x+y)."""
        return self.mu(x) ^ self.mu(y) ^ self.mu(x ^ y)

    def gram(self) -> F2Matrix:
        k = self.rank
        rows = []
        for i in range(k):
            bits = 0
            for j in range(k):
                bits |= self.m(1 << i, 1 << j) << j
            rows.append(bits)
        return F2Matrix.from_row_bits(rows, k)


def _table_from_basis_data(k: int, basis_mu: list[int], gram_rows: list[int]) -> int:
    """Fill a full mu-table from basis values by polarization.

    mu(v + e_i) = mu(v) + mu(e_i) + m(v, e_i) with m(v, e_i) linear in v.
    """
    size = 1 << k
    vals = bytearray(size)
    for v in range(1, size):
        i = (v & -v).bit_length() - 1
        rest = v ^ (1 << i)
        m_bit = (gram_rows[i] & rest).bit_count() & 1
        vals[v] = vals[rest] ^ basis_mu[i] ^ m_bit
    table = 0
    for v in range(size):
        if vals[v]:
            table |= 1 << v
    return table


def validate(space: SymplecticMetricSpace) -> tuple[bool, str]:
    """Check mu(0) = 0 and that the polarization is bilinear.

    The polarization is bilinear exactly when the table is reproduced from
    its basis values and basis Gram matrix by the polarization identity.
    """
    if space.mu(0):
        return False, "mu(0) must be 0"
    k = space.rank
    basis_mu = [space.mu(1 << i) for i in range(k)]
    gram_rows = space.gram().row_bits()
    if _table_from_basis_data(k, basis_mu, gram_rows) != space.table:
        return False, "polarization of mu is not bilinear"
    return True, "valid symplectic metric space"


def require_valid(space: SymplecticMetricSpace) -> None:
    ok, msg = validate(space)
    if not ok:
        raise ValueError(f"not a symplectic metric space: {msg}")


def kernel(space: SymplecticMetricSpace) -> Subspace:
    """ker m, the radical of the polarized pairing."""
    return nullspace(space.gram())


def translation_subgroup(space: SymplecticMetricSpace) -> Subspace:
    """A_V = {x in ker m : mu(x) = 0}; mu is linear on ker m."""
    ker = kernel(space)
    zeros = [v.bits for v in ker.elements() if space.mu(v.bits) == 0]
    return Subspace.spanned_by(zeros, space.rank)


def defect(space: SymplecticMetricSpace) -> DefectIndex:
    """#\\{mu = 0\\} - #\\{mu = 1\\} by direct count over the table."""
    ones = space.table.bit_count()
    return DefectIndex((1 << space.rank) - 2 * ones)


def invariants(space: SymplecticMetricSpace) -> InvariantTuple:
    require_valid(space)
    ker = kernel(space)
    d = ker.dim
    eps = 1 if any(space.mu(v.bits) for v in ker.elements()) else 0
    r = d - eps
    t = (space.rank - d) // 2
    if eps:
        delta = 0
    else:
        # mu is constant on ker-m cosets, so coset counts are table counts
        # shifted by dim ker.  A nondegenerate form takes value 1 on
        # 2^(2t-1) -+ 2^(t-1) vectors; the sign is the Arf invariant.
        ones_cosets = space.table.bit_count() >> d
        if ones_cosets == (1 << max(2 * t - 1, 0)) + (1 << (t - 1) if t else 0):
            delta = 1
        elif t == 0 or ones_cosets == (1 << (2 * t - 1)) - (1 << (t - 1)):
            delta = 0
        else:
            raise AssertionError("descended form is not nondegenerate")
    return InvariantTuple(eps, delta, r, t - delta)


def canonical(t: InvariantTuple) -> SymplecticMetricSpace:
    """The canonical model with basis layout (A^r | eps | delta-pair | s-pairs)."""
    k = t.ambient_rank
    basis_mu = [0] * k
    gram_rows = [0] * k
    pos = t.r
    if t.eps:
        basis_mu[pos] = 1
        pos += 1
    pairs = ([1] if t.delta else []) + [0] * t.s
    for mu_pair in pairs:
        basis_mu[pos] = basis_mu[pos + 1] = mu_pair
        gram_rows[pos] |= 1 << (pos + 1)
        gram_rows[pos + 1] |= 1 << pos
        pos += 2
    return SymplecticMetricSpace(k, _table_from_basis_data(k, basis_mu, gram_rows))


def transport(space: SymplecticMetricSpace, t: F2Matrix) -> SymplecticMetricSpace:
    """Pull the mu-table back along an invertible matrix: mu'(v) = mu(T v)."""
    k = space.rank
    if t.rows != k or t.cols != k:
        raise ValueError("basis change has wrong shape")
    if not t.is_invertible():
        raise ValueError("basis change is singular")
    cols = t.column_bits()
    table = 0
    for v in range(1 << k):
        img = 0
        m = v
        while m:
            j = (m & -m).bit_length() - 1
            img ^= cols[j]
            m &= m - 1
        if space.mu(img):
            table |= 1 << v
    return SymplecticMetricSpace(k, table)


def is_isomorphic(a: SymplecticMetricSpace, b: SymplecticMetricSpace) -> bool:
    """Equal rank and equal invariants decide isomorphism."""
    return a.rank == b.rank and invariants(a) == invariants(b)


def isomorphism_to_canonical(space: SymplecticMetricSpace) -> F2Matrix:
    """An invertible T with transport(space, T) == canonical(invariants(space)).

    Constructive symplectic Gram-Schmidt: translation-subgroup basis first,
    then the eps vector, then hyperbolic pairs with mu normalized to (0, 0)
    on each pair, the unique (1, 1) pair (if any) routed to the delta slot.
    """
    require_valid(space)
    inv = invariants(space)
    k = space.rank
    size = 1 << k

    def span_closure(vecs: list[int]) -> set[int]:
        out = {0}
        for v in vecs:
            out |= {w ^ v for w in out}
        return out

    a_basis = [v.bits for v in translation_subgroup(space).basis]
    ker = kernel(space)
    z = None
    if inv.eps:
        z = min(v.bits for v in ker.elements() if space.mu(v.bits))

    fixed = a_basis + ([z] if z is not None else [])
    pairs: list[tuple[int, int]] = []

    def clear_cross_pairings(v: int) -> int:
        for e, f in pairs:
            v ^= (space.m(v, f) * e) ^ (space.m(v, e) * f)
        return v

    while len(fixed) + 2 * len(pairs) < k:
        used = span_closure(fixed + [c for p in pairs for c in p])
        x = clear_cross_pairings(min(v for v in range(1, size) if v not in used))
        # x is now orthogonal to every earlier pair, so correcting y below
        # cannot disturb m(x, y).
        y = clear_cross_pairings(min(v for v in range(1, size) if space.m(x, v) == 1))
        if space.m(x, y) != 1:
            raise AssertionError("pair reduction lost the pairing")
        # Normalize the mu pattern on the pair to (0, 0) when possible.
        if space.mu(x) == 1 and space.mu(y) == 0:
            x, y = y, x
        if space.mu(x) == 0 and space.mu(y) == 1:
            y ^= x
        if space.mu(x) == 1 and z is not None:
            # eps = 1 absorbs a (1, 1) pair: x + z has mu 0.
            x ^= z
            if space.mu(y) == 1:
                y ^= x
        pairs.append((x, y))

    ones = [p for p in pairs if space.mu(p[0])]
    zeros = [p for p in pairs if not space.mu(p[0])]
    while len(ones) >= 2:
        # Two (1, 1) pairs combine into two (0, 0) pairs.
        (e1, f1), (e2, f2) = ones.pop(), ones.pop()
        a = e1 ^ e2
        p1 = (a, a ^ f1)
        u, w = e2, f1 ^ f2
        if space.mu(u) == 1 and space.mu(w) == 0:
            u, w = w, u
        if space.mu(w) == 1:
            w ^= u
        p2 = (u, w)
        for p in (p1, p2):
            if space.m(*p) != 1 or space.mu(p[0]) or space.mu(p[1]):
                raise AssertionError("pair combination failed")
        zeros.extend([p1, p2])
    if len(ones) != inv.delta:
        raise AssertionError("Arf count disagrees with invariants")

    ordered = list(fixed)
    for e, f in ones + zeros:
        ordered.extend([e, f])
    # Columns of T are the constructed basis in the space's coordinates.
    t = F2Matrix.from_row_bits(ordered, k).transpose()
    if transport(space, t).table != canonical(inv).table:
        raise AssertionError("constructed basis change does not canonicalize")
    return t


# mu-table file format: JSON with fields "rank" and "mu" (length 2^rank,
# index v's binary expansion gives coordinates, LSB = basis vector 1).


def to_mu_table_json(space: SymplecticMetricSpace) -> str:
    return json.dumps({"rank": space.rank, "mu": space.mu_list()}, indent=None)


def parse_mu_table(text: str) -> SymplecticMetricSpace:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "rank" not in doc or "mu" not in doc:
        raise ValueError("mu-table document needs fields 'rank' and 'mu'")
    rank_field = doc["rank"]
    mu = doc["mu"]
    if not isinstance(rank_field, int) or not isinstance(mu, list):
        raise ValueError("'rank' must be an integer and 'mu' an array")
    if len(mu) != 1 << rank_field:
        raise ValueError(f"'mu' must have length 2^rank = {1 << rank_field}, got {len(mu)}")
    space = SymplecticMetricSpace.from_mu_list(mu)
    return space


def load_mu_table(path: str) -> SymplecticMetricSpace:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_mu_table(fh.read())
