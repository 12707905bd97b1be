"""Subsets of F_p^n: group arithmetic, automorphisms, and hyperplane decompositions.

A subset of F_p^n is a bit mask over p^n cells indexed in little-endian mixed
radix: index(x) = sum x_i * p^i, so coordinate 0 is the least significant
digit.  Masks are therefore portable integers; the hex dump used in golden
files is the little-endian byte string of that integer.

A decomposition is a pair (v, K) with K a hyperplane (spanned by n-1 basis
vectors) and v a transversal vector, so every x splits uniquely as
x = i*v + x' with i in Z_p and x' in K.  The induced parts
A_i = (A - i*v) cap K are reported in K-basis coordinates (dimension n-1);
their sizes sorted non-increasingly give the b/B/beta bookkeeping used by the
weight and balance analyses, with beta_i = |B_i| / p^(n-2) kept as an exact
Fraction (for n = 1 the normalization degenerates, so beta_i = |B_i| * p and
all inequality checks clear denominators).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .modmath import is_prime, mod_inverse
from .zpset import ZpSet


class VecSetError(ValueError):
    """Raised for malformed vector sets or incompatible operands."""


class CriterionError(ValueError):
    """Raised when a structural criterion is applied outside its hypotheses."""


# ---------------------------------------------------------------------------
# Linear algebra mod p (tiny dense matrices)


def mat_det(m: list[list[int]], p: int) -> int:
    a = [row[:] for row in m]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col] % p
        inv = mod_inverse(a[col][col], p)
        for r in range(col + 1, n):
            f = a[r][col] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def mat_inverse(m: list[list[int]], p: int) -> list[list[int]]:
    n = len(m)
    a = [[m[r][c] % p for c in range(n)] + [1 if r == c else 0 for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            raise VecSetError("matrix is singular mod p")
        a[col], a[piv] = a[piv], a[col]
        inv = mod_inverse(a[col][col], p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def mat_vec(m: list[list[int]], x: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(sum(mi * xi for mi, xi in zip(row, x)) % p for row in m)


# ---------------------------------------------------------------------------
# VecSet


class VecSet:
    """An immutable subset of F_p^n (n >= 0) backed by a p^n-bit mask."""

    __slots__ = ("p", "n", "mask")

    def __init__(self, p: int, n: int, vectors=()):
        if not is_prime(p):
            raise VecSetError(f"modulus {p} is not prime")
        if n < 0:
            raise VecSetError("dimension must be >= 0")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        mask = 0
        for v in vectors:
            mask |= 1 << self._index(v)
        object.__setattr__(self, "mask", mask)

    def _index(self, v) -> int:
        v = tuple(v)
        if len(v) != self.n:
            raise VecSetError(f"vector {v} has wrong arity for dimension {self.n}")
        idx = 0
        for i in reversed(range(self.n)):
            c = int(v[i])
            if not 0 <= c < self.p:
                raise VecSetError(f"coordinate {c} out of range mod {self.p}")
            idx = idx * self.p + c
        return idx

    @classmethod
    def from_mask(cls, p: int, n: int, mask: int) -> "VecSet":
        if not is_prime(p):
            raise VecSetError(f"modulus {p} is not prime")
        if mask < 0 or mask >> p**n:
            raise VecSetError("mask has bits outside the cell range")
        out = cls.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "n", n)
        object.__setattr__(out, "mask", mask)
        return out

    @classmethod
    def from_indices(cls, p: int, n: int, indices) -> "VecSet":
        mask = 0
        for i in indices:
            mask |= 1 << int(i)
        return cls.from_mask(p, n, mask)

    @classmethod
    def from_zpset(cls, a: ZpSet) -> "VecSet":
        return cls.from_mask(a.p, 1, a.mask)

    @classmethod
    def full(cls, p: int, n: int) -> "VecSet":
        return cls.from_mask(p, n, (1 << p**n) - 1)

    def to_zpset(self) -> ZpSet:
        if self.n != 1:
            raise VecSetError("only 1-dimensional sets round-trip to ZpSet")
        return ZpSet.from_mask(self.p, self.mask)

    def __setattr__(self, *_):
        raise AttributeError("VecSet is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VecSet)
            and (self.p, self.n, self.mask) == (other.p, other.n, other.mask)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def size(self) -> int:
        return self.mask.bit_count()

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.p**self.n) - 1

    def indices(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def vector(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def vectors(self):
        p = self.p
        for idx in self.indices():
            v = []
            for _ in range(self.n):
                v.append(idx % p)
                idx //= p
            yield tuple(v)

    def __iter__(self):
        return self.vectors()

    def __contains__(self, v) -> bool:
        return (self.mask >> self._index(v)) & 1 == 1

    def __repr__(self) -> str:
        return f"VecSet(p={self.p}, n={self.n}, size={len(self)})"

    def complement(self) -> "VecSet":
        return VecSet.from_mask(self.p, self.n, self.mask ^ ((1 << self.p**self.n) - 1))

    def union(self, other: "VecSet") -> "VecSet":
        _check_same_space(self, other)
        return VecSet.from_mask(self.p, self.n, self.mask | other.mask)

    def intersection(self, other: "VecSet") -> "VecSet":
        _check_same_space(self, other)
        return VecSet.from_mask(self.p, self.n, self.mask & other.mask)

    def issubset(self, other: "VecSet") -> bool:
        _check_same_space(self, other)
        return self.mask & ~other.mask == 0

    def translate(self, g) -> "VecSet":
        g = tuple(g)
        arr = self.index_array()
        return VecSet.from_indices(self.p, self.n, _translate_indices(arr, g, self.p, self.n))

    def index_array(self) -> np.ndarray:
        return np.fromiter(self.indices(), dtype=np.int64, count=len(self))

    def bit_array(self) -> np.ndarray:
        """Dense 0/1 array over the p^n cells, little-endian bit order."""
        cells = self.p**self.n
        raw = self.mask.to_bytes((cells + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[:cells]

    @classmethod
    def from_bit_array(cls, p: int, n: int, bits: np.ndarray) -> "VecSet":
        raw = np.packbits(bits.astype(np.uint8), bitorder="little").tobytes()
        return cls.from_mask(p, n, int.from_bytes(raw, "little"))

    def mask_hex(self) -> str:
        cells = self.p**self.n
        return self.mask.to_bytes((cells + 7) // 8, "little").hex()


def _check_same_space(a: VecSet, b: VecSet) -> None:
    if (a.p, a.n) != (b.p, b.n):
        raise VecSetError("incompatible spaces")


def _digits(idx: np.ndarray, p: int, n: int) -> np.ndarray:
    out = np.empty((idx.shape[0], n), dtype=np.int64)
    cur = idx.copy()
    for i in range(n):
        out[:, i] = cur % p
        cur //= p
    return out


def _indices_of(digits: np.ndarray, p: int, n: int) -> np.ndarray:
    idx = np.zeros(digits.shape[0], dtype=np.int64)
    for i in reversed(range(n)):
        idx = idx * p + digits[:, i]
    return idx


def _translate_indices(idx: np.ndarray, g: tuple[int, ...], p: int, n: int) -> np.ndarray:
    d = _digits(idx, p, n)
    for i in range(n):
        d[:, i] = (d[:, i] + g[i]) % p
    return _indices_of(d, p, n)


# ---------------------------------------------------------------------------
# Sumsets over F_p^n

_FFT_THRESHOLD = 64  # below this many shifts, roll-and-OR beats the FFT


def vsumset(a: VecSet, b: VecSet) -> VecSet:
    """Componentwise-mod-p sumset A + B."""
    _check_same_space(a, b)
    if a.is_empty() or b.is_empty():
        return VecSet.from_mask(a.p, a.n, 0)
    if a.n == 0:
        return VecSet.from_mask(a.p, 0, 1)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    if len(small) <= _FFT_THRESHOLD:
        return _sumset_rolls(small, large)
    return _sumset_fft(a, b)


def _sumset_rolls(small: VecSet, large: VecSet) -> VecSet:
    p, n = small.p, small.n
    shape = (p,) * n
    arr = large.bit_array().reshape(shape).astype(bool)
    out = np.zeros(shape, dtype=bool)
    # C-order reshape puts coordinate n-1-k on axis k, so shifts come reversed.
    axes = tuple(range(n))
    for v in small.vectors():
        out |= np.roll(arr, tuple(reversed(v)), axis=axes)
    return VecSet.from_bit_array(p, n, out.reshape(-1))


def _sumset_fft(a: VecSet, b: VecSet) -> VecSet:
    # Support of the cyclic convolution of the indicators.  Counts stay below
    # p^n <= 2^20, far inside exact double range, so the 0.5 threshold is safe.
    p, n = a.p, a.n
    shape = (p,) * n
    fa = np.fft.fftn(a.bit_array().reshape(shape).astype(np.float64))
    fb = fa if b.mask == a.mask else np.fft.fftn(b.bit_array().reshape(shape).astype(np.float64))
    counts = np.fft.ifftn(fa * fb).real
    return VecSet.from_bit_array(p, n, (counts > 0.5).reshape(-1))


def vhfold(a: VecSet, h: int) -> VecSet:
    if h < 1:
        raise VecSetError("h must be positive")
    out = a
    for _ in range(h - 1):
        out = vsumset(out, a)
    return out


def vec_is_kl_sumfree(a: VecSet, k: int, l: int) -> bool:
    if not k > l >= 1:
        raise VecSetError("require k > l")
    if a.is_empty():
        raise VecSetError("sum-freeness is defined for nonempty sets")
    fold = a
    lmask = a.mask if l == 1 else 0
    for h in range(2, k + 1):
        if h == l + 1:
            lmask = fold.mask
        fold = vsumset(fold, a)
    return fold.mask & lmask == 0


def apply_automorphism(a: VecSet, m: list[list[int]]) -> VecSet:
    """Image {Mx : x in A} under an invertible linear map of F_p^n."""
    p, n = a.p, a.n
    if len(m) != n or any(len(row) != n for row in m):
        raise VecSetError("matrix shape does not match the dimension")
    if mat_det(m, p) == 0:
        raise VecSetError("not an automorphism")
    if a.is_empty():
        return a
    d = _digits(a.index_array(), p, n)
    mt = np.array(m, dtype=np.int64)
    imaged = (d @ mt.T) % p
    return VecSet.from_indices(p, n, _indices_of(imaged, p, n))


# ---------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class Params:
    """The tuple (k, l, p, n) with the derived quantities m, lam and theta.

    p = (k+l)*m + 2 + lam with m = floor((p-2)/(k+l)); the standard theorems
    require lam in [0, k+l-3] and that window is what `lambda_in_range`
    reports.  theta = p - (m-1)(k+l) = k + l + lam + 2.
    """

    k: int
    l: int
    p: int
    n: int = 1

    def __post_init__(self):
        if not self.k > self.l >= 1:
            raise VecSetError("require k > l")
        if not is_prime(self.p):
            raise VecSetError(f"modulus {self.p} is not prime")
        if self.n < 1:
            raise VecSetError("dimension must be >= 1")

    @property
    def m(self) -> int:
        return (self.p - 2) // (self.k + self.l)

    @property
    def lam(self) -> int:
        return self.p - 2 - self.m * (self.k + self.l)

    @property
    def theta(self) -> int:
        return self.k + self.l + self.lam + 2

    def lambda_in_range(self) -> bool:
        return self.m >= 1 and self.lam <= self.k + self.l - 3

    def extremal_orbit_count(self) -> int:
        return (self.lam + 2) // 2  # ceil((lam+1)/2)


# ---------------------------------------------------------------------------
# Decompositions (v, K) and part profiles


@dataclass(frozen=True)
class Decomposition:
    """A hyperplane K (given by a basis) plus a transversal vector v."""

    p: int
    n: int
    v: tuple[int, ...]
    kbasis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.kbasis) != self.n - 1:
            raise VecSetError("K must have codimension 1")
        rows = [list(self.v)] + [list(b) for b in self.kbasis]
        if self.n >= 1 and mat_det(rows, self.p) == 0:
            raise VecSetError("v together with the K basis must be a basis of the space")

    def basis_matrix(self) -> list[list[int]]:
        """Columns are v, k_1, ..., k_{n-1}."""
        cols = [self.v, *self.kbasis]
        return [[cols[c][r] for c in range(self.n)] for r in range(self.n)]


def decompositions_2d(p: int):
    """The p+1 decompositions of F_p^2, one per line through the origin.

    K runs over span{(0,1)} then span{(1,t)} for t = 0..p-1; v is the least
    standard basis vector outside K.
    """
    yield Decomposition(p, 2, (1, 0), ((0, 1),))
    for t in range(p):
        v = (0, 1) if t == 0 else (1, 0)
        yield Decomposition(p, 2, v, ((1, t),))


@dataclass(frozen=True)
class DecompProfile:
    """Parts, support and sorted part-size statistics of A under (v, K)."""

    decomposition: Decomposition
    p: int
    n: int
    parts: tuple[VecSet, ...]           # indexed by i in Z_p, in K-basis coordinates
    support: ZpSet
    weight: int
    order: tuple[int, ...]              # b_1..b_p: residues by non-increasing part size
    sizes: tuple[int, ...]              # |B_i| = |A_{b_i}|
    beta: tuple[Fraction, ...] = field(repr=False)

    def part(self, i: int) -> VecSet:
        return self.parts[i % self.p]

    def prefix(self, i: int) -> ZpSet:
        """C_i = {b_1, ..., b_i}."""
        if not 1 <= i <= self.p:
            raise VecSetError("prefix index out of range")
        return ZpSet(self.p, self.order[:i])

    def total(self) -> int:
        return sum(len(x) for x in self.parts)


def beta_value(size: int, p: int, n: int) -> Fraction:
    """|B_i| / p^(n-2) as an exact rational; for n=1 this is |B_i| * p."""
    return Fraction(size * p ** max(0, 2 - n), p ** max(0, n - 2))


def decompose(a: VecSet, d: Decomposition) -> DecompProfile:
    """Split A along (v, K): A_i = (A - i*v) cap K, reported in K coordinates."""
    p, n = a.p, a.n
    if (d.p, d.n) != (p, n):
        raise VecSetError("decomposition does not match the ambient space")
    binv = mat_inverse(d.basis_matrix(), p)
    part_masks = [0] * p
    if not a.is_empty():
        digits = _digits(a.index_array(), p, n)
        coords = (digits @ np.array(binv, dtype=np.int64).T) % p
        if n >= 2:
            rest = _indices_of(coords[:, 1:], p, n - 1)
        else:
            rest = np.zeros(coords.shape[0], dtype=np.int64)
        for i, r in zip(coords[:, 0], rest):
            part_masks[int(i)] |= 1 << int(r)
    parts = tuple(VecSet.from_mask(p, n - 1, m) for m in part_masks)
    sizes_by_i = [len(x) for x in parts]
    assert sum(sizes_by_i) == len(a)
    support = ZpSet(p, [i for i in range(p) if sizes_by_i[i]])
    order = tuple(sorted(range(p), key=lambda i: (-sizes_by_i[i], i)))
    sizes = tuple(sizes_by_i[i] for i in order)
    beta = tuple(beta_value(s, p, n) for s in sizes)
    return DecompProfile(d, p, n, parts, support, len(support), order, sizes, beta)


# ---------------------------------------------------------------------------
# Stabilizers, Kneser's bound, support containment


def sym_group(s: VecSet) -> VecSet:
    """The stabilizer {g : g + A = A}; always a subspace of F_p^n.

    Convention: the whole space stabilizes the empty set, so sym_group of an
    empty input is the full space (callers that care should flag this).
    """
    p, n = s.p, s.n
    if s.is_empty():
        return VecSet.full(p, n)
    if n == 0:
        return VecSet.from_mask(p, 0, 1)
    idx = s.index_array()
    base = _digits(idx[:1], p, n)[0]
    elems = set(int(i) for i in idx)
    members = []
    digits = _digits(idx, p, n)
    for row in digits:
        g = tuple((row - base) % p)
        shifted = _translate_indices(idx, g, p, n)
        if set(int(i) for i in shifted) == elems:
            members.append(g)
    return VecSet(p, n, members)


def kneser_gap(sets: list[VecSet]) -> tuple[int, int]:
    """Both sides of Kneser's bound for |A_1 + ... + A_k|.

    Returns (lhs, rhs) with lhs = |sum of the sets| and
    rhs = sum |A_i + H| - (k-1)|H| where H stabilizes the total sumset.
    """
    if not sets:
        raise VecSetError("need at least one set")
    if any(x.is_empty() for x in sets):
        raise VecSetError("Kneser's bound needs nonempty sets")
    total = sets[0]
    for x in sets[1:]:
        total = vsumset(total, x)
    h = sym_group(total)
    lhs = len(total)
    rhs = sum(len(vsumset(x, h)) for x in sets) - (len(sets) - 1) * len(h)
    assert lhs >= rhs, "Kneser bound violated: implementation bug"
    return lhs, rhs


def max_part_size(profile: DecompProfile) -> int:
    return profile.sizes[0] if profile.sizes else 0


def support_contained(a_profile: DecompProfile, b_profile: DecompProfile):
    """Smallest s != 0 with s*Supp(A) inside Supp(B), or None.

    Sound as a necessary condition for "A embeds into B under an
    automorphism" only when A has a full part (max |A_i| = p^{n-1}) and
    Supp(B) is proper; outside those hypotheses a CriterionError is raised.
    """
    p = a_profile.p
    if a_profile.p != b_profile.p or a_profile.n != b_profile.n:
        raise VecSetError("profiles live in different spaces")
    if max_part_size(a_profile) != p ** (a_profile.n - 1):
        raise CriterionError("criterion needs a full part on the left profile")
    if b_profile.weight >= p:
        raise CriterionError("criterion needs a proper support on the right profile")
    sa, sb = a_profile.support, b_profile.support
    from .zpset import dilate  # local import to avoid cycle noise

    for s in range(1, p):
        if dilate(sa, s).issubset(sb):
            return s
    return None


# ---------------------------------------------------------------------------
# Literal text format: p=<prime>;n=<dim>;{(a,b,...),...}


def parse_vecset(text: str) -> VecSet:
    parts = text.strip().split(";")
    if len(parts) == 2:
        return VecSet.from_zpset(_parse_zp(text))
    if len(parts) != 3:
        raise VecSetError(f"malformed vector-set literal: {text!r}")
    p = _parse_kv(parts[0], "p")
    n = _parse_kv(parts[1], "n")
    body = parts[2].strip()
    if not (body.startswith("{") and body.endswith("}")):
        raise VecSetError(f"malformed vector-set literal: {text!r}")
    inner = body[1:-1].strip()
    vecs = []
    if inner:
        import re

        if "(" in inner:
            for grp in re.findall(r"\(([^()]*)\)", inner):
                vecs.append(tuple(int(c) for c in grp.split(",") if c.strip()))
        else:
            vecs = [(int(tok),) for tok in inner.split(",")]
    seen = set()
    for v in vecs:
        if v in seen:
            raise VecSetError(f"duplicate vector {v} in literal")
        seen.add(v)
    return VecSet(p, n, vecs)


def _parse_kv(tok: str, key: str) -> int:
    k, _, v = tok.partition("=")
    if k.strip() != key:
        raise VecSetError(f"expected {key}=<int>, got {tok!r}")
    return int(v)


def _parse_zp(text: str):
    from .zpset import parse_zpset

    return parse_zpset(text)


def format_vecset(a: VecSet) -> str:
    body = ",".join("(" + ",".join(map(str, v)) + ")" for v in a.vectors())
    return f"p={a.p};n={a.n};{{{body}}}"
