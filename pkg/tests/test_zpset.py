"""Residue-set arithmetic against independent brute-force oracles."""

import random
from itertools import combinations_with_replacement

import pytest

from klsf.zpset import (
    ApCover,
    ZpSet,
    ZpSetError,
    dilate,
    ed_count,
    ed_profile,
    find_kl_sums,
    format_zpset,
    hfold,
    holes,
    is_ap,
    is_kl_sumfree,
    min_ap_cover,
    min_interval_cover,
    parse_zpset,
    sumset,
)
from klsf.modmath import primes_in


# ---------------------------------------------------------------------------
# Oracles: direct definitions, no shared code with the kernels under test


def naive_sumset(a, b):
    return ZpSet(a.p, {(x + y) % a.p for x in a for y in b} if len(a) and len(b) else ())


def naive_hfold(a, h):
    out = a
    for _ in range(h - 1):
        out = naive_sumset(out, a)
    return out


def naive_ed(a, d):
    pairs = 0
    for x in a:
        for y in ((x + d) % a.p, (x - d) % a.p):
            if y not in a:
                pairs += 1
    return pairs


def naive_min_cover_len(a):
    p = a.p
    best = p
    for start in range(p):
        for length in range(1, p + 1):
            if all(((e - start) % p) < length for e in a):
                best = min(best, length)
                break
    return best


# ---------------------------------------------------------------------------
# Frozen spec examples


def test_sumset_examples():
    a = ZpSet(11, [4, 5, 6, 7])
    assert sumset(a, a) == ZpSet(11, [8, 9, 10, 0, 1, 2, 3])  # oracle: double loop
    assert sumset(a, ZpSet(11, [0])) == a
    assert sumset(ZpSet(7, [2]), ZpSet(7, [3])) == ZpSet(7, [5])


def test_sumset_modulus_mismatch():
    with pytest.raises(ZpSetError, match="incompatible moduli"):
        sumset(ZpSet(7, [1]), ZpSet(11, [1]))


def test_hfold_examples():
    a = ZpSet(11, [4, 5, 6, 7])
    assert hfold(a, 2) == naive_hfold(a, 2)
    assert hfold(ZpSet(23, [1]), 3) == ZpSet(23, [3])
    b = ZpSet.interval(23, 15, 6)
    assert hfold(b, 3) == ZpSet(23, [22] + list(range(15)))  # [45,60] mod 23, wrapped
    assert hfold(b, 3) == naive_hfold(b, 3)
    with pytest.raises(ZpSetError, match="h must be positive"):
        hfold(a, 0)


def test_dilate_examples():
    assert dilate(ZpSet(11, [3, 4, 5]), 8) == ZpSet(11, [2, 7, 10])
    a = ZpSet(11, [4, 5, 6, 7])
    assert dilate(a, 1) == a
    assert dilate(a, 10) == a  # symmetric interval fixed by negation
    with pytest.raises(ZpSetError, match="dilation by zero"):
        dilate(a, 0)


def test_is_kl_sumfree_examples():
    assert is_kl_sumfree(ZpSet(11, [4, 5, 6, 7]), 2, 1)
    assert not is_kl_sumfree(ZpSet(11, [0]), 2, 1)
    assert is_kl_sumfree(ZpSet.interval(23, 15, 6), 3, 1)
    with pytest.raises(ZpSetError, match="require k > l"):
        is_kl_sumfree(ZpSet(11, [1]), 1, 1)


def test_ed_and_is_ap_examples():
    a = ZpSet(11, [4, 5, 6, 7])
    prof = ed_profile(a)
    assert prof[1] == 2
    assert is_ap(a) == [1]
    assert is_ap(ZpSet(11, range(1, 11))) == [1, 2, 3, 4, 5]  # F_p minus a point
    assert ed_count(ZpSet(11, [4, 6, 7]), 1) == 4  # pairs (4,3),(4,5),(6,5),(7,8)


def test_is_ap_size_conventions():
    p = 11
    assert is_ap(ZpSet(p)) == []
    assert is_ap(ZpSet(p, [3])) == [1, 2, 3, 4, 5]
    assert is_ap(ZpSet.interval(p, 0, p)) == [1, 2, 3, 4, 5]


def test_cover_examples():
    c = min_interval_cover(ZpSet(13, [0, 1, 2, 4]))
    assert (c.start, c.diff, c.length) == (0, 1, 5)
    mc = min_ap_cover(ZpSet(11, [2, 7, 10]))
    assert mc.length == 3
    assert ZpSet(11, [2, 7, 10]).issubset(mc.as_set())
    c2 = min_interval_cover(ZpSet(13, [x for x in range(13) if x != 5]))
    assert c2.length == 12 and c2.start == 6
    with pytest.raises(ZpSetError, match="empty set has no cover"):
        min_interval_cover(ZpSet(13))


def test_holes_examples():
    assert holes(ZpSet(13, [0, 1, 2]), ApCover(13, 0, 1, 3)) == []
    a = ZpSet(23, [10] + list(range(12, 20)) + [21])
    assert holes(a, ApCover(23, 10, 1, 12)) == [1, 1]
    b = ZpSet(23, [10, 11] + list(range(14, 21)))
    assert holes(b, ApCover(23, 10, 1, 11)) == [2]
    with pytest.raises(ZpSetError, match="cover does not contain"):
        holes(a, ApCover(23, 10, 1, 5))


def test_find_kl_sums_examples():
    assert find_kl_sums(ZpSet.interval(23, 15, 6), 3, 1, 4) == []
    assert find_kl_sums(ZpSet(11, [0]), 2, 1, 1) == [((0, 0), (0,))]
    # the quoted family 3(3m+2) = (2m+1)+(2m+2) at p = 5m+3, m = 8
    sols = find_kl_sums(ZpSet.interval(43, 17, 10), 3, 2, 3)
    assert ((26, 26, 26), (17, 18)) in sols
    assert sols == sorted(sols)


def test_find_kl_sums_against_direct_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        p = rng.choice([7, 11, 13])
        c = ZpSet(p, rng.sample(range(p), rng.randrange(1, 7)))
        k, l = rng.choice([(2, 1), (3, 1), (3, 2)])
        md = rng.randrange(1, 5)
        got = find_kl_sums(c, k, l, md)
        want = set()
        for left in combinations_with_replacement(sorted(c), k):
            for right in combinations_with_replacement(sorted(c), l):
                if sum(left) % p == sum(right) % p and len(set(left) | set(right)) <= md:
                    want.add((left, right))
        assert set(got) == want


def test_literals():
    b = ZpSet.interval(23, 15, 6)
    assert format_zpset(b) == "p=23;[15,20]"
    assert parse_zpset("p=23;[15,20]") == b
    assert parse_zpset("p=11;{4,5,6,7}") == ZpSet(11, [4, 5, 6, 7])
    assert parse_zpset("p=11;{}") == ZpSet(11)
    assert parse_zpset(format_zpset(ZpSet(11, [1, 4, 6]))) == ZpSet(11, [1, 4, 6])
    with pytest.raises(ZpSetError):
        parse_zpset("p=11;{3,3}")
    with pytest.raises(ZpSetError):
        parse_zpset("p=11;{11}")


# ---------------------------------------------------------------------------
# Invariants on random instances


def test_oracle_equivalence_sumset():
    rng = random.Random(2024)
    for p in primes_in(7, 53):
        for _ in range(1000):
            a = ZpSet(p, rng.sample(range(p), rng.randrange(1, p + 1)))
            b = ZpSet(p, rng.sample(range(p), rng.randrange(1, p + 1)))
            assert sumset(a, b) == naive_sumset(a, b)


def test_cauchy_davenport_random():
    rng = random.Random(7)
    for p in primes_in(7, 31):
        for _ in range(400):
            a = ZpSet(p, rng.sample(range(p), rng.randrange(1, p)))
            b = ZpSet(p, rng.sample(range(p), rng.randrange(1, p)))
            assert len(sumset(a, b)) >= min(p, len(a) + len(b) - 1)


def test_vosper_equality_shares_difference():
    rng = random.Random(11)
    hits = 0
    for p in primes_in(7, 31):
        for _ in range(2000):
            a = ZpSet(p, rng.sample(range(p), rng.randrange(2, p - 1)))
            b = ZpSet(p, rng.sample(range(p), rng.randrange(2, p - 1)))
            s = sumset(a, b)
            if len(s) <= p - 2 and len(s) == len(a) + len(b) - 1:
                hits += 1
                assert set(is_ap(a)) & set(is_ap(b))
    assert hits > 0


def test_dilation_equivariance_and_invariance():
    rng = random.Random(13)
    for _ in range(60):
        p = rng.choice([11, 13, 17])
        a = ZpSet(p, rng.sample(range(p), rng.randrange(1, p)))
        c = rng.randrange(1, p)
        h = rng.choice([2, 3])
        assert hfold(dilate(a, c), h) == dilate(hfold(a, h), c)
        k, l = rng.choice([(2, 1), (3, 2)])
        assert is_kl_sumfree(a, k, l) == is_kl_sumfree(dilate(a, c), k, l)


def test_ed_profile_under_dilation():
    rng = random.Random(17)
    for _ in range(50):
        p = rng.choice([11, 13, 17])
        a = ZpSet(p, rng.sample(range(p), rng.randrange(2, p - 1)))
        c = rng.randrange(1, p)
        assert ed_profile(dilate(a, c)).multiset() == ed_profile(a).multiset()
        for d in range(1, (p - 1) // 2 + 1):
            cd = c * d % p
            folded = min(cd, p - cd)
            assert ed_count(dilate(a, c), folded) == ed_count(a, d)


def test_ed_against_pair_counting():
    rng = random.Random(19)
    for _ in range(40):
        p = rng.choice([11, 13])
        a = ZpSet(p, rng.sample(range(p), rng.randrange(1, p)))
        for d in range(1, (p - 1) // 2 + 1):
            assert ed_count(a, d) == naive_ed(a, d)


def test_ap_difference_uniqueness_small():
    for p in primes_in(5, 13):
        for d in range(1, (p - 1) // 2 + 1):
            for start in range(p):
                for length in range(2, p - 1):
                    a = ZpSet(p, [(start + i * d) % p for i in range(length)])
                    want = [d] if length <= p - 2 else list(range(1, (p - 1) // 2 + 1))
                    assert is_ap(a) == want


def test_one_hole_interval_not_ap_small():
    for p in primes_in(7, 13):
        for start in range(p):
            for length in range(4, p - 2):
                cells = [(start + i) % p for i in range(length)]
                for x in cells[1:-1]:
                    assert is_ap(ZpSet(p, [e for e in cells if e != x])) == []


def test_min_cover_against_oracle():
    rng = random.Random(23)
    for _ in range(60):
        p = rng.choice([7, 11, 13])
        a = ZpSet(p, rng.sample(range(p), rng.randrange(1, p + 1)))
        assert min_interval_cover(a).length == naive_min_cover_len(a)
        cover = min_interval_cover(a)
        assert a.issubset(cover.as_set())
        apc = min_ap_cover(a)
        assert apc.length <= cover.length
        assert a.issubset(apc.as_set())
        assert 1 <= apc.diff <= max(1, (p - 1) // 2)
