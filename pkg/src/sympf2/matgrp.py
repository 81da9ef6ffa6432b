"""Exact projective monomial matrix models.

Elements are monomial matrices with entries in the unit set {1, -1, i, -i,
j, -j, k, -k}, optionally twisted by an antilinear conjugation flag, and
taken modulo the scalar unit group of the field mode (real: +-1, complex:
+-1 and +-i, quaternion: the central +-1 only).  Products, inverses,
squares and commutators stay monomial, so all arithmetic is exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

from .sms import InvariantTuple, SymplecticMetricSpace, require_valid

# Units are encoded 0..7 as axis | sign<<2 with axes (1, i, j, k); the code
# order (+1, +i, +j, +k, -1, -i, -j, -k) is also the canonicalization order.
UNIT_NAMES = ("1", "i", "j", "k", "-1", "-i", "-j", "-k")
UNIT_CODES = {name: code for code, name in enumerate(UNIT_NAMES)}


def _build_unit_table() -> tuple[tuple[int, ...], ...]:
    def mul_axes(a: int, b: int) -> tuple[int, int]:
        if a == 0:
            return b, 0
        if b == 0:
            return a, 0
        if a == b:
            return 0, 1
        cyclic = {
            (1, 2): (3, 0), (2, 1): (3, 1),
            (2, 3): (1, 0), (3, 2): (1, 1),
            (3, 1): (2, 0), (1, 3): (2, 1),
        }
        return cyclic[(a, b)]

    out = []
    for a in range(8):
        row = []
        for b in range(8):
            ax, extra = mul_axes(a & 3, b & 3)
            sign = (a >> 2) ^ (b >> 2) ^ extra
            row.append(ax | (sign << 2))
        out.append(tuple(row))
    return tuple(out)


UNIT_MUL = _build_unit_table()


def unit_mul(a: int, b: int) -> int:
    return UNIT_MUL[a][b]


def unit_conj(a: int) -> int:
    """Quaternion conjugate: fixes +-1, negates i, j, k."""
    return a if (a & 3) == 0 else a ^ 4


def unit_complex_conj(a: int) -> int:
    """Complex conjugation; only the 1 and i axes may appear."""
    if (a & 3) >= 2:
        raise ValueError("complex conjugation applied to a quaternion unit")
    return a ^ 4 if (a & 3) == 1 else a


_MODE_AXES = {"real": {0}, "complex": {0, 1}, "quaternion": {0, 1, 2, 3}}
# scalars defining projective equality; for quaternions only the center
_MODE_SCALARS = {"real": (0, 4), "complex": (0, 1, 4, 5), "quaternion": (0, 4)}


@dataclass(frozen=True)
class MonomialMatrix:
    """n x n monomial matrix: column c holds entries[c] at row perm[c]."""

    n: int
    perm: tuple[int, ...]
    entries: tuple[int, ...]
    field_mode: str

    def __post_init__(self) -> None:
        if self.field_mode not in _MODE_AXES:
            raise ValueError(f"unknown field mode {self.field_mode!r}")
        if sorted(self.perm) != list(range(self.n)) or len(self.entries) != self.n:
            raise ValueError("not a permutation with one entry per column")
        axes = _MODE_AXES[self.field_mode]
        for e in self.entries:
            if not isinstance(e, int) or not 0 <= e < 8 or (e & 3) not in axes:
                raise ValueError(f"entry {e!r} is not a unit of mode {self.field_mode}")

    @classmethod
    def _unchecked(
        cls, n: int, perm: tuple[int, ...], entries: tuple[int, ...], field_mode: str
    ) -> "MonomialMatrix":
        # products and scalings of valid monomials are valid; skip the
        # O(n log n) revalidation on these hot paths
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "perm", perm)
        object.__setattr__(obj, "entries", entries)
        object.__setattr__(obj, "field_mode", field_mode)
        return obj

    @classmethod
    def identity(cls, n: int, field_mode: str) -> "MonomialMatrix":
        return cls(n, tuple(range(n)), (0,) * n, field_mode)

    @classmethod
    def scalar(cls, n: int, unit: int, field_mode: str) -> "MonomialMatrix":
        return cls(n, tuple(range(n)), (unit,) * n, field_mode)

    @classmethod
    def diagonal(cls, units: Iterable[int], field_mode: str) -> "MonomialMatrix":
        us = tuple(units)
        return cls(len(us), tuple(range(len(us))), us, field_mode)

    def __mul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if self.n != other.n or self.field_mode != other.field_mode:
            raise ValueError("size or mode mismatch")
        sp, se, op, oe = self.perm, self.entries, other.perm, other.entries
        mul = UNIT_MUL
        perm = tuple(sp[op[c]] for c in range(self.n))
        entries = tuple(mul[se[op[c]]][oe[c]] for c in range(self.n))
        return MonomialMatrix._unchecked(self.n, perm, entries, self.field_mode)

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.n
        entries = [0] * self.n
        for c in range(self.n):
            perm[self.perm[c]] = c
            entries[self.perm[c]] = unit_conj(self.entries[c])
        return MonomialMatrix._unchecked(self.n, tuple(perm), tuple(entries), self.field_mode)

    def conj_entries(self) -> "MonomialMatrix":
        """Entrywise complex conjugation (the twist across an antilinear factor)."""
        return MonomialMatrix._unchecked(
            self.n, self.perm, tuple(unit_complex_conj(e) for e in self.entries), self.field_mode
        )

    def scale(self, unit: int) -> "MonomialMatrix":
        """Left multiplication by a scalar unit."""
        mul = UNIT_MUL[unit]
        return MonomialMatrix._unchecked(
            self.n, self.perm, tuple(mul[e] for e in self.entries), self.field_mode
        )

    def is_scalar(self) -> bool:
        return all(self.perm[c] == c for c in range(self.n)) and len(set(self.entries)) <= 1

    def scalar_value(self) -> int:
        if not self.is_scalar():
            raise ValueError("matrix is not scalar")
        return self.entries[0] if self.n else 0


def _canonical_scalar_form(m: MonomialMatrix) -> MonomialMatrix:
    best = None
    best_key = None
    for lam in _MODE_SCALARS[m.field_mode]:
        cand = m if lam == 0 else m.scale(lam)
        key = cand.entries
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


@dataclass(frozen=True)
class ProjectiveElement:
    """A monomial matrix modulo scalars, with an optional antilinear flag.

    Instances are stored as the canonical scalar representative: among the
    scalar multiples, the one whose entry tuple is smallest in the unit
    code order (+1, +i, +j, +k, -1, -i, -j, -k), so the first nonzero
    entry in column order is minimized.
    """

    matrix: MonomialMatrix
    conj: bool = False

    def __post_init__(self) -> None:
        if self.conj and self.matrix.field_mode != "complex":
            raise ValueError("antilinear flag only exists in complex mode")
        canon = _canonical_scalar_form(self.matrix)
        if canon is not self.matrix:
            object.__setattr__(self, "matrix", canon)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def field_mode(self) -> str:
        return self.matrix.field_mode


def _raw_mul(
    ma: MonomialMatrix, fa: bool, mb: MonomialMatrix, fb: bool
) -> tuple[MonomialMatrix, bool]:
    rhs = mb.conj_entries() if fa else mb
    return ma * rhs, fa != fb


def _raw_inv(m: MonomialMatrix, f: bool) -> tuple[MonomialMatrix, bool]:
    inv = m.inverse()
    return (inv.conj_entries() if f else inv), f


def multiply(a: ProjectiveElement, b: ProjectiveElement) -> ProjectiveElement:
    """(A, a)(B, b) = (A sigma^a(B), a xor b), sigma = entrywise conjugation."""
    if a.n != b.n or a.field_mode != b.field_mode:
        raise ValueError("size or mode mismatch")
    mat, flag = _raw_mul(a.matrix, a.conj, b.matrix, b.conj)
    return ProjectiveElement(mat, flag)


def inverse(a: ProjectiveElement) -> ProjectiveElement:
    mat, flag = _raw_inv(a.matrix, a.conj)
    return ProjectiveElement(mat, flag)


def identity(n: int, field_mode: str) -> ProjectiveElement:
    return ProjectiveElement(MonomialMatrix.identity(n, field_mode))


def square_scalar(x: ProjectiveElement) -> int:
    """Unit scalar lambda with x^2 = lambda I; errors if x^2 is not scalar.

    Unit scalars have norm one, so lambda does not depend on the scalar
    representative; for antilinear x it distinguishes the two outer classes
    (the square of the associated real structure).
    """
    raw, _ = _raw_mul(x.matrix, x.conj, x.matrix, x.conj)
    if not raw.is_scalar():
        raise ValueError("not a projective involution: square is not scalar")
    return raw.scalar_value()


def commutator_scalar(x: ProjectiveElement, y: ProjectiveElement) -> int:
    """Unit scalar lambda with x y x^-1 y^-1 = lambda I."""
    if x.n != y.n or x.field_mode != y.field_mode:
        raise ValueError("size or mode mismatch")
    m1, f1 = _raw_mul(x.matrix, x.conj, y.matrix, y.conj)
    xi, fxi = _raw_inv(x.matrix, x.conj)
    yi, fyi = _raw_inv(y.matrix, y.conj)
    m2, f2 = _raw_mul(xi, fxi, yi, fyi)
    raw, flag = _raw_mul(m1, f1, m2, f2)
    if flag or not raw.is_scalar():
        raise ValueError("pair does not projectively commute")
    return raw.scalar_value()


def _mu_bit(scalar: int) -> int:
    if scalar == 0:
        return 0
    if scalar == 4:
        return 1
    raise ValueError("scalar is not +-1; element has no mu value")


@dataclass(frozen=True)
class GeneratedSubgroup:
    """Closure of a generator list inside the projective unitary quotient."""

    generators: tuple[ProjectiveElement, ...]
    elements: tuple[ProjectiveElement, ...]

    @classmethod
    def generate(
        cls, generators: Iterable[ProjectiveElement], cap: int = 1 << 13
    ) -> "GeneratedSubgroup":
        gens = tuple(generators)
        if not gens:
            raise ValueError("no generators; use trivial() for the trivial group")
        ident = identity(gens[0].n, gens[0].field_mode)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for cur in frontier:
                for g in gens:
                    prod = multiply(cur, g)
                    if prod not in seen:
                        if len(seen) >= cap:
                            raise ValueError("closure exceeds the size cap")
                        seen.add(prod)
                        nxt.append(prod)
            frontier = nxt
        ordered = sorted(seen, key=lambda e: (e.conj, e.matrix.perm, e.matrix.entries))
        return cls(gens, tuple(ordered))

    @classmethod
    def from_commuting_involutions(
        cls, generators: Iterable[ProjectiveElement]
    ) -> "GeneratedSubgroup":
        """Closure by subset products, for independent commuting involutions.

        One product per element via Gray code instead of a breadth-first
        search; the assumptions are enforced (distinct subset products,
        scalar squares and scalar pairwise commutators), so the result is
        the same subgroup generate() would return.
        """
        gens = tuple(generators)
        if not gens:
            raise ValueError("no generators; use trivial() for the trivial group")
        for i, x in enumerate(gens):
            square_scalar(x)
            for y in gens[i + 1:]:
                commutator_scalar(x, y)
        elems = _subset_products(gens, gens[0].n, gens[0].field_mode)
        distinct = set(elems)
        if len(distinct) != len(elems):
            raise ValueError("generators are not independent")
        ordered = sorted(distinct, key=lambda e: (e.conj, e.matrix.perm, e.matrix.entries))
        return cls(gens, tuple(ordered))

    @classmethod
    def trivial(cls, n: int, field_mode: str) -> "GeneratedSubgroup":
        return cls((), (identity(n, field_mode),))

    def order(self) -> int:
        return len(self.elements)

    def rank(self) -> int:
        o = self.order()
        if o & (o - 1):
            raise ValueError("order is not a power of two")
        return o.bit_length() - 1

    def is_elementary_abelian(self) -> bool:
        try:
            for x in self.elements:
                square_scalar(x)
            for x in self.generators:
                for y in self.generators:
                    commutator_scalar(x, y)
        except ValueError:
            return False
        return True


def _subset_products(
    basis: tuple[ProjectiveElement, ...] | list[ProjectiveElement], n: int, mode: str
) -> list[ProjectiveElement]:
    """All 2^k subset products; index v is the characteristic vector of the subset."""
    k = len(basis)
    elems = [identity(n, mode)] * (1 << k)
    for v in range(1, 1 << k):
        low = (v & -v).bit_length() - 1
        elems[v] = multiply(elems[v ^ (1 << low)], basis[low])
    return elems


def _greedy_basis(group: GeneratedSubgroup) -> list[ProjectiveElement]:
    ident = identity(group.elements[0].n, group.elements[0].field_mode)
    basis: list[ProjectiveElement] = []
    span = {ident}
    for e in group.elements:
        if e in span:
            continue
        basis.append(e)
        span |= {multiply(s, e) for s in span}
    return basis


def extract_sms(
    group: GeneratedSubgroup, basis: Optional[list[ProjectiveElement]] = None
) -> SymplecticMetricSpace:
    """Tabulate mu over an F2 basis of an elementary abelian subgroup.

    mu comes from square scalars, the pairing from commutator scalars; the
    two must satisfy m = polarization of mu, and a mismatch is raised as a
    modeling bug.  The basis defaults to the generator list when it is
    independent, so canonical constructions reproduce canonical tables bit
    for bit.  Groups containing antilinear elements are rejected; their
    inner parts classify through the twisted comparison identities instead.
    """
    if any(e.conj for e in group.elements):
        raise ValueError("antilinear elements present: extract the inner part instead")
    if basis is None:
        basis = list(group.generators)
        if (1 << len(basis)) != group.order():
            basis = _greedy_basis(group)
    k = len(basis)
    if (1 << k) != group.order():
        raise ValueError("basis does not span the subgroup")
    n = group.elements[0].n
    mode = group.elements[0].field_mode
    elem_of = _subset_products(basis, n, mode)
    if len(set(elem_of)) != len(elem_of):
        raise ValueError("basis is not independent")
    table = 0
    for v in range(1 << k):
        if _mu_bit(square_scalar(elem_of[v])):
            table |= 1 << v
    space = SymplecticMetricSpace(k, table)
    require_valid(space)
    for i in range(k):
        for j in range(k):
            got = _mu_bit(commutator_scalar(basis[i], basis[j]))
            if got != space.m(1 << i, 1 << j):
                raise ValueError("mu/m compatibility violation: modeling bug")
    return space


# --- canonical subgroup constructions ---------------------------------------

ORTHOGONAL = "orthogonal"
SYMPLECTIC = "symplectic"
AMBIENT_SIZE_CAP = 64


def _diag_sign_pattern(n: int, bit: int, mode: str) -> ProjectiveElement:
    """Diagonal with -1 exactly where the given bit of the column index is set."""
    units = tuple(4 if (c >> bit) & 1 else 0 for c in range(n))
    return ProjectiveElement(MonomialMatrix.diagonal(units, mode))


def _bitflip_pattern(n: int, bit: int, mode: str) -> ProjectiveElement:
    """Swap the two halves of one tensor slot: a J'-style block, squares to I."""
    perm = tuple(c ^ (1 << bit) for c in range(n))
    return ProjectiveElement(MonomialMatrix(n, perm, (0,) * n, mode))


def _j_pattern(n: int, bit: int, mode: str) -> ProjectiveElement:
    """A J-style block on one tensor slot: squares to -I."""
    perm = tuple(c ^ (1 << bit) for c in range(n))
    entries = tuple(0 if (c >> bit) & 1 else 4 for c in range(n))
    return ProjectiveElement(MonomialMatrix(n, perm, entries, mode))


def _k_pattern(n: int, bit_lo: int, mode: str) -> ProjectiveElement:
    """A K-style block on two tensor slots (4 blocks of n/4).

    Flips the low slot with signs split by the high slot, so it squares to
    -I and anticommutes with the J block that flips the high slot.
    """
    lo, hi = 1 << bit_lo, 1 << (bit_lo + 1)
    perm = tuple(c ^ lo for c in range(n))
    entries = []
    for c in range(n):
        if c & hi:
            entries.append(4 if c & lo else 0)
        else:
            entries.append(0 if c & lo else 4)
    return ProjectiveElement(MonomialMatrix(n, perm, tuple(entries), mode))


def canonical_subgroup(target: str, t: InvariantTuple) -> GeneratedSubgroup:
    """Generators realizing the invariant tuple inside O(n)/<-I> or Sp(n)/<-I>.

    Generator order matches the canonical basis layout (kernel | eps |
    delta-pair | s-pairs), and extract_sms of the result reproduces
    canonical(t) bit for bit.  Orthogonal targets spend one tensor slot on
    the eps block (a J) and two on the delta pair (a J and a K); symplectic
    targets realize those blocks as the quaternion scalars iI and jI.
    """
    if target not in (ORTHOGONAL, SYMPLECTIC):
        raise ValueError(f"unknown target {target!r}")
    if target == SYMPLECTIC:
        mode = "quaternion"
        slots = t.r + t.s
    else:
        mode = "real"
        slots = t.r + t.s + t.eps + 2 * t.delta
    n = 1 << slots
    if n > AMBIENT_SIZE_CAP:
        raise ValueError(f"ambient size {n} exceeds the cap {AMBIENT_SIZE_CAP}")

    gens: list[ProjectiveElement] = []
    for i in range(t.r):
        gens.append(_diag_sign_pattern(n, i, mode))
    pair_base = t.r
    if target == SYMPLECTIC:
        if t.eps:
            gens.append(ProjectiveElement(MonomialMatrix.scalar(n, UNIT_CODES["i"], mode)))
        if t.delta:
            gens.append(ProjectiveElement(MonomialMatrix.scalar(n, UNIT_CODES["i"], mode)))
            gens.append(ProjectiveElement(MonomialMatrix.scalar(n, UNIT_CODES["j"], mode)))
    else:
        if t.eps:
            gens.append(_j_pattern(n, pair_base, mode))
            pair_base += 1
        if t.delta:
            gens.append(_j_pattern(n, pair_base + 1, mode))
            gens.append(_k_pattern(n, pair_base, mode))
            pair_base += 2
    for p in range(t.s):
        gens.append(_diag_sign_pattern(n, pair_base + p, mode))
        gens.append(_bitflip_pattern(n, pair_base + p, mode))
    if not gens:
        return GeneratedSubgroup.trivial(n, mode)
    return GeneratedSubgroup.from_commuting_involutions(gens)


def block_partition(group: GeneratedSubgroup) -> list[tuple[int, ...]]:
    """Column partition of a +-1-diagonal subgroup by column character.

    Requires every nonzero element to be diagonal with exactly n/2 entries
    equal to -1; the 2^rank parts then all have size n / 2^rank.
    """
    elems = list(group.elements)
    n = elems[0].n
    for e in elems:
        m = e.matrix
        if any(m.perm[c] != c for c in range(n)) or any(x not in (0, 4) for x in m.entries):
            raise ValueError("subgroup is not +-1 diagonal")
        negs = sum(1 for x in m.entries if x == 4)
        if negs not in (0, n // 2):
            raise ValueError(
                f"element with {negs} entries -1 violates the half-and-half "
                f"property: {m.entries}"
            )
    r = group.rank()
    buckets: dict[tuple[int, ...], list[int]] = {}
    for c in range(n):
        sig = tuple(e.matrix.entries[c] for e in elems)
        buckets.setdefault(sig, []).append(c)
    parts = sorted(tuple(v) for v in buckets.values())
    if len(parts) != 1 << r or any(len(p) != n >> r for p in parts):
        raise ValueError("partition is not into 2^rank equal parts")
    return parts


# --- twisted (conjugation-extended) checks -----------------------------------


def conjugation_element(n: int) -> ProjectiveElement:
    """The plain antilinear involution (entrywise conjugation) on C^n."""
    return ProjectiveElement(MonomialMatrix.identity(n, "complex"), conj=True)


def diag_involution(n: int, p: int) -> ProjectiveElement:
    """[I_{p,n-p}] = [diag(-I_p, I_{n-p})] as a projective element."""
    units = tuple(4 if c < p else 0 for c in range(n))
    return ProjectiveElement(MonomialMatrix.diagonal(units, "complex"))


@dataclass(frozen=True)
class TwistedCheckReport:
    conjugation_identity: Optional[bool]
    mu_product_identity: Optional[bool]

    @property
    def ok(self) -> bool:
        return self.conjugation_identity is not False and self.mu_product_identity is not False


def twisted_mu_identity_check(z: ProjectiveElement, x: ProjectiveElement) -> TwistedCheckReport:
    """Verify the conjugation recipe tying an antilinear z to z x.

    For plain z (identity matrix part) and x = a +-1 diagonal with negative
    part P, the element u = [diag(i on P, 1 off P)] satisfies u z u^-1 = z x,
    so z and z x are conjugate; and the square scalars then satisfy
    mu(z) mu(zx) = mu-value of x in the z-fixed real form, which for plain z
    is the square scalar of x itself.
    """
    if not z.conj:
        raise ValueError("z must be antilinear")
    commutator_scalar(z, x)  # raises when the pair does not projectively commute
    n = z.n
    is_diag = all(x.matrix.perm[c] == c for c in range(n)) and all(
        e in (0, 4) for e in x.matrix.entries
    )
    z_plain = all(z.matrix.perm[c] == c for c in range(n)) and all(
        e == 0 for e in z.matrix.entries
    )
    if not (is_diag and z_plain):
        return TwistedCheckReport(None, None)
    u_units = tuple(UNIT_CODES["i"] if e == 4 else 0 for e in x.matrix.entries)
    u = ProjectiveElement(MonomialMatrix.diagonal(u_units, "complex"))
    zx = multiply(z, x)
    conj_ok = multiply(multiply(u, z), inverse(u)) == zx
    mu_ok = (_mu_bit(square_scalar(z)) ^ _mu_bit(square_scalar(zx))) == _mu_bit(
        square_scalar(x)
    )
    return TwistedCheckReport(conj_ok, mu_ok)


# --- generator file format ----------------------------------------------------


def parse_generators(text: str) -> GeneratedSubgroup:
    """Generator file: JSON with field_mode, n, and a generator list.

    Each generator is {"perm": [...], "entries": ["1", "-1", "i", ...]} with
    an optional boolean "conj" flag (complex mode only).
    """
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("generator document must be an object")
    for key in ("field_mode", "n", "generators"):
        if key not in doc:
            raise ValueError(f"generator document needs field {key!r}")
    mode = doc["field_mode"]
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise ValueError("'n' must be a positive integer")
    gens = []
    for idx, g in enumerate(doc["generators"]):
        try:
            perm = tuple(int(v) for v in g["perm"])
            entries = tuple(UNIT_CODES[e] for e in g["entries"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"generator {idx}: {exc}") from exc
        conj = bool(g.get("conj", False))
        gens.append(ProjectiveElement(MonomialMatrix(n, perm, entries, mode), conj))
    if not gens:
        return GeneratedSubgroup.trivial(n, mode)
    return GeneratedSubgroup.generate(gens)


def load_generators(path: str) -> GeneratedSubgroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_generators(fh.read())
