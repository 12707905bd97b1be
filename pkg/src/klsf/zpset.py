"""Value-semantic subsets of Z_p with sumset arithmetic and progression analysis.

A subset of Z_p is stored as a p-bit mask (bit i set iff residue i belongs to
the set).  All operations are pure: they return fresh values and never mutate
their inputs, so values can be shared freely across threads.

Conventions used throughout:
  * hA is the h-fold sumset (all sums of h elements, repetition allowed),
    while c*A denotes the dilation {c*a : a in A}.  The additive-group
    automorphisms of Z_p are exactly the dilations by c != 0.
  * A is (k,l)-sum-free iff kA and lA are disjoint (k > l >= 1).
  * e_d(A) counts pairs (x, y) with x in A, y not in A and x - y = +-d,
    for d in [1, (p-1)/2].  A with 2 <= |A| <= p-2 is an arithmetic
    progression of common difference d iff e_d(A) = 2.  Wrapped differences
    are folded to min(d, p-d) so the index range stays [1, (p-1)/2].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .modmath import is_prime, mod_inverse, rotate_mask


class ZpSetError(ValueError):
    """Raised for malformed residue sets or incompatible operands."""


class ZpSet:
    """An immutable subset of Z_p backed by a bit mask."""

    __slots__ = ("p", "mask")

    def __init__(self, p: int, elements=()):
        if not is_prime(p):
            raise ZpSetError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)
        mask = 0
        for e in elements:
            if not 0 <= e < p:
                raise ZpSetError(f"residue {e} out of range for modulus {p}")
            mask |= 1 << e
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, p: int, mask: int) -> "ZpSet":
        if not is_prime(p):
            raise ZpSetError(f"modulus {p} is not prime")
        if mask < 0 or mask >> p:
            raise ZpSetError("mask has bits outside [0, p)")
        out = cls.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "mask", mask)
        return out

    @classmethod
    def interval(cls, p: int, start: int, length: int) -> "ZpSet":
        """The cyclic interval {start, start+1, ..., start+length-1} mod p."""
        if length < 0 or length > p:
            raise ZpSetError(f"interval length {length} out of range")
        start %= p
        full = (1 << p) - 1
        run = (1 << length) - 1
        return cls.from_mask(p, rotate_mask(run & full, start, p) if length < p else full)

    def __setattr__(self, *_):
        raise AttributeError("ZpSet is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, ZpSet) and self.p == other.p and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.p, self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def size(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, e: int) -> bool:
        return 0 <= e < self.p and (self.mask >> e) & 1 == 1

    def __iter__(self):
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def elements(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"ZpSet(p={self.p}, {{{', '.join(map(str, self))}}})"

    def is_empty(self) -> bool:
        return self.mask == 0

    def is_full(self) -> bool:
        return self.mask == (1 << self.p) - 1

    def complement(self) -> "ZpSet":
        return ZpSet.from_mask(self.p, self.mask ^ ((1 << self.p) - 1))

    def union(self, other: "ZpSet") -> "ZpSet":
        _check_same_modulus(self, other)
        return ZpSet.from_mask(self.p, self.mask | other.mask)

    def intersection(self, other: "ZpSet") -> "ZpSet":
        _check_same_modulus(self, other)
        return ZpSet.from_mask(self.p, self.mask & other.mask)

    def issubset(self, other: "ZpSet") -> bool:
        _check_same_modulus(self, other)
        return self.mask & ~other.mask == 0

    def shift(self, t: int) -> "ZpSet":
        """Translate by t: {a + t mod p}."""
        return ZpSet.from_mask(self.p, rotate_mask(self.mask, t, self.p))

    def neg(self) -> "ZpSet":
        return dilate(self, self.p - 1)


def _check_same_modulus(a: ZpSet, b: ZpSet) -> None:
    if a.p != b.p:
        raise ZpSetError("incompatible moduli")


# ---------------------------------------------------------------------------
# Sumset arithmetic


def sumset(a: ZpSet, b: ZpSet) -> ZpSet:
    """A + B = {x + y mod p}.

    Kernel: OR of b's mask cyclically shifted by every element of a (the
    smaller operand is used as the shift set).  A naive double loop over all
    pairs serves as the independent test oracle.
    """
    _check_same_modulus(a, b)
    if a.is_empty() or b.is_empty():
        return ZpSet.from_mask(a.p, 0)
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    p = a.p
    out = 0
    lm = large.mask
    for x in small:
        out |= rotate_mask(lm, x, p)
    return ZpSet.from_mask(p, out)


def hfold(a: ZpSet, h: int) -> ZpSet:
    """The h-fold sumset hA = (h-1)A + A; hA = A when h = 1."""
    if h < 1:
        raise ZpSetError("h must be positive")
    out = a
    for _ in range(h - 1):
        out = sumset(out, a)
    return out


def dilate(a: ZpSet, c: int) -> ZpSet:
    """The dilation c*A = {c*a mod p}, c != 0: a bijective relabeling of Z_p."""
    p = a.p
    c %= p
    if c == 0:
        raise ZpSetError("dilation by zero")
    if c == 1:
        return a
    out = 0
    for x in a:
        out |= 1 << (c * x % p)
    return ZpSet.from_mask(p, out)


def is_kl_sumfree(a: ZpSet, k: int, l: int) -> bool:
    """True iff kA and lA are disjoint.  Requires k > l >= 1 and A nonempty."""
    if not k > l >= 1:
        raise ZpSetError("require k > l")
    if a.is_empty():
        raise ZpSetError("sum-freeness is defined for nonempty sets")
    fold = a
    lmask = 0
    for h in range(2, k + 1):
        if h == l + 1:
            lmask = fold.mask
        fold = sumset(fold, a)
    if l == 1:
        lmask = a.mask
    return fold.mask & lmask == 0


# ---------------------------------------------------------------------------
# e_d statistics and arithmetic progressions


@dataclass(frozen=True)
class EdProfile:
    """Counts e_d for d in [1, (p-1)/2]; the multiset is dilation-invariant."""

    p: int
    counts: dict

    def multiset(self) -> tuple[int, ...]:
        return tuple(sorted(self.counts.values()))

    def __getitem__(self, d: int) -> int:
        return self.counts[d]


def ed_count(a: ZpSet, d: int) -> int:
    # Pairs (x, y), x in A, y outside, at cyclic difference d: each arc of A
    # along the d-step cycle contributes one pair at each end.
    p = a.p
    shifted = rotate_mask(a.mask, d, p)
    inter = (a.mask & shifted).bit_count()
    return 2 * (len(a) - inter)


def ed_profile(a: ZpSet) -> EdProfile:
    p = a.p
    return EdProfile(p, {d: ed_count(a, d) for d in range(1, (p - 1) // 2 + 1)})


def is_ap(a: ZpSet) -> list[int]:
    """Every admissible common difference d in [1, (p-1)/2] for which A is an AP.

    Degenerate sizes are fixed by convention: 1 and p-1 admit every
    difference, the empty set none, the full set all of them.
    """
    p = a.p
    all_d = list(range(1, (p - 1) // 2 + 1))
    n = len(a)
    if n == 0:
        return []
    if n in (1, p - 1, p):
        return all_d
    return [d for d in all_d if ed_count(a, d) == 2]


# ---------------------------------------------------------------------------
# Interval and AP covers


@dataclass(frozen=True)
class ApCover:
    """The AP {start, start+diff, ..., start+(length-1)*diff} mod p."""

    p: int
    start: int
    diff: int
    length: int

    def __post_init__(self):
        if not 0 <= self.length <= self.p:
            raise ZpSetError("cover length must lie in [0, p]")
        if self.diff % self.p == 0:
            raise ZpSetError("cover difference must be nonzero")

    def positions(self) -> list[int]:
        return [(self.start + i * self.diff) % self.p for i in range(self.length)]

    def as_set(self) -> ZpSet:
        return ZpSet(self.p, self.positions())

    def contains(self, a: ZpSet) -> bool:
        return a.issubset(self.as_set())


def min_interval_cover(a: ZpSet) -> ApCover:
    """Shortest cyclic interval containing A; ties go to the smallest start."""
    p = a.p
    if a.is_empty():
        raise ZpSetError("empty set has no cover")
    if a.is_full():
        return ApCover(p, 0, 1, p)
    # The shortest cover is the complement of the longest run of non-members.
    best_len = -1
    best_start = 0
    comp = a.complement().mask
    for s in range(p):
        if not (comp >> s) & 1:
            continue
        if (comp >> ((s - 1) % p)) & 1:
            continue  # not the head of a run
        g = 1
        while (comp >> ((s + g) % p)) & 1:
            g += 1
        start = (s + g) % p
        length = p - g
        if g > best_len or (g == best_len and start < best_start):
            best_len = g
            best_start = start
    return ApCover(p, best_start, 1, p - best_len)


def min_ap_cover(a: ZpSet) -> ApCover:
    """Shortest AP cover over all differences d in [1, (p-1)/2].

    Realized as the shortest interval cover of d^{-1}*A mapped back through d.
    Ties across differences go to the smallest d.
    """
    p = a.p
    if a.is_empty():
        raise ZpSetError("empty set has no cover")
    diffs = range(1, (p - 1) // 2 + 1) if p > 2 else (1,)
    best = None
    for d in diffs:
        cov = min_interval_cover(dilate(a, mod_inverse(d, p)))
        cand = ApCover(p, d * cov.start % p, d, cov.length)
        if best is None or cand.length < best.length:
            best = cand
    return best


def holes(a: ZpSet, cover: ApCover) -> list[int]:
    """Lengths of the maximal gaps of A strictly inside `cover`.

    A gap is a maximal run of cover positions missing from A whose flanking
    positions (still inside the cover) both belong to A; runs touching either
    end of the cover are not gaps.  Listed in cyclic order from cover.start.
    """
    pos = cover.positions()
    if a.mask & ~ZpSet(a.p, pos).mask:
        raise ZpSetError("cover does not contain the set")
    inside = [x in a for x in pos]
    out: list[int] = []
    j = 0
    L = len(pos)
    while j < L:
        if inside[j]:
            j += 1
            continue
        j2 = j
        while j2 + 1 < L and not inside[j2 + 1]:
            j2 += 1
        if j > 0 and j2 < L - 1:
            out.append(j2 - j + 1)
        j = j2 + 1
    return out


# ---------------------------------------------------------------------------
# (k, l)-sum witnesses


def find_kl_sums(c: ZpSet, k: int, l: int, max_distinct: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (k,l)-sums r_1+...+r_k = s_1+...+s_l with every term in C.

    A solution is a pair of sorted multisets (left with k terms, right with l)
    using at most `max_distinct` distinct values in total.  The result is
    sorted by (left, right) so reports are reproducible.
    """
    if not k > l >= 1:
        raise ZpSetError("require k > l")
    if max_distinct < 1:
        raise ZpSetError("max_distinct must be positive")
    p = c.p
    elems = c.elements()
    by_sum: dict[int, list[tuple[int, ...]]] = {}
    for left in combinations_with_replacement(elems, k):
        by_sum.setdefault(sum(left) % p, []).append(left)
    out = []
    for right in combinations_with_replacement(elems, l):
        for left in by_sum.get(sum(right) % p, ()):
            if len(set(left) | set(right)) <= max_distinct:
                out.append((left, right))
    out.sort()
    return out


def format_kl_sum(sol: tuple[tuple[int, ...], tuple[int, ...]]) -> str:
    left, right = sol
    return "+".join(map(str, left)) + "=" + "+".join(map(str, right))


# ---------------------------------------------------------------------------
# Set-literal text format: p=<prime>;{e1,e2,...} or p=<prime>;[a,b] (cyclic)


def parse_zpset(text: str) -> ZpSet:
    text = text.strip()
    try:
        head, body = text.split(";", 1)
        key, val = head.split("=", 1)
        if key.strip() != "p":
            raise ValueError
        p = int(val)
    except ValueError:
        raise ZpSetError(f"malformed set literal: {text!r}") from None
    body = body.strip()
    if body.startswith("[") and body.endswith("]"):
        a_s, b_s = body[1:-1].split(",")
        a, b = int(a_s), int(b_s)
        if not (0 <= a < p and 0 <= b < p):
            raise ZpSetError(f"interval bounds out of range in {text!r}")
        return ZpSet.interval(p, a, (b - a) % p + 1)
    if body.startswith("{") and body.endswith("}"):
        inner = body[1:-1].strip()
        if not inner:
            return ZpSet(p)
        elems = [int(tok) for tok in inner.split(",")]
        if len(elems) != len(set(elems)):
            raise ZpSetError(f"duplicate residues in {text!r}")
        return ZpSet(p, elems)
    raise ZpSetError(f"malformed set literal: {text!r}")


def format_zpset(a: ZpSet) -> str:
    p = a.p
    if a.is_full():
        return f"p={p};[0,{p - 1}]"
    if len(a) >= 2:
        cov = min_interval_cover(a)
        if cov.length == len(a):
            return f"p={p};[{cov.start},{(cov.start + cov.length - 1) % p}]"
    return f"p={p};{{{','.join(map(str, a))}}}"
