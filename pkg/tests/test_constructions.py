"""Structure generators: frozen examples, parameter windows, distinctness."""

import pytest

from klsf.zpset import ZpSet, dilate, ed_profile, is_kl_sumfree
from klsf.vecset import Params, VecSet, vec_is_kl_sumfree
from klsf.constructions import (
    CuboidSpec,
    ParameterError,
    TypeSpec,
    available_kinds,
    certify_type_distinctness,
    extremal_interval,
    extremal_intervals,
    gen_cuboid,
    gen_type,
    nontriviality_check,
    type1_a_values,
    type3_a,
    type3_support_profile,
    type5_a,
    type_support,
)


def test_cuboid_examples():
    spec = CuboidSpec(Params(2, 1, 11, 1), 0)
    assert spec.a_j == 4
    assert gen_cuboid(spec).to_zpset() == ZpSet.interval(11, 4, 4)
    spec31 = CuboidSpec(Params(3, 1, 23, 1), 0)
    assert spec31.a_j == 15  # -16 * inv(2) mod 23
    assert gen_cuboid(spec31).to_zpset() == ZpSet.interval(23, 15, 6)
    spec32 = CuboidSpec(Params(3, 2, 17, 1), 0)
    assert spec32.a_j == 7  # -10 mod 17
    assert gen_cuboid(spec32).to_zpset() == ZpSet.interval(17, 7, 4)


def test_cuboid_sizes_and_j_range():
    params = Params(3, 2, 19, 2)  # lam = 2, two orbits
    assert params.extremal_orbit_count() == 2
    for j in range(2):
        out = gen_cuboid(CuboidSpec(params, j))
        assert len(out) == (params.m + 1) * 19
    with pytest.raises(ParameterError):
        CuboidSpec(params, 2)
    with pytest.raises(ParameterError):
        CuboidSpec(Params(2, 1, 13, 1), 0)  # lam = 2 > k+l-3


def test_extremal_intervals_are_sumfree_and_mirrored():
    for k, l, p in ((2, 1, 11), (3, 1, 23), (3, 2, 29), (4, 1, 29)):
        params = Params(k, l, p)
        for iv in extremal_intervals(params):
            assert is_kl_sumfree(iv, k, l)
        # j and lam - j give the same orbit: negation maps one to the other
        lam = params.lam
        for j in range(params.extremal_orbit_count()):
            a_j = CuboidSpec(params, j).a_j
            mirrored = dilate(ZpSet.interval(p, a_j, params.m + 1), p - 1)
            other = -(params.k * params.m + 1 + (lam - j)) * pow(params.k - params.l, -1, p) % p
            assert mirrored == ZpSet.interval(p, other, params.m + 1)


def test_type1_examples():
    assert type1_a_values(Params(3, 1, 23)) == [5]
    out = gen_type(TypeSpec("type1", Params(3, 1, 23, 1), a=5))
    assert out.to_zpset() == ZpSet.interval(23, 5, 5)
    assert type1_a_values(Params(2, 1, 11)) == [6]  # m + 3
    with pytest.raises(ParameterError, match="type 1 requires"):
        TypeSpec("type1", Params(3, 1, 23, 1), a=6)


def test_type3_structure():
    params = Params(3, 2, 23, 1)  # p = 5m+3, m = 4... m=4 < 5 fine for generation
    a = type3_a(params)
    out = gen_type(TypeSpec("type3", params))
    want = {(a - 1) % 23, (a + params.m) % 23} | {(a + i) % 23 for i in range(1, params.m - 1)}
    assert set(out.to_zpset().elements()) == want
    with pytest.raises(ParameterError, match="type 3 requires"):
        TypeSpec("type3", Params(2, 1, 11, 1))


def test_type5_example_p23():
    params = Params(3, 1, 23, 2)
    assert type5_a(params) == (params.m + 2) * pow(2, -1, 23) % 23
    out = gen_type(TypeSpec("type5", params, s=1, pset=((1,),)))
    assert len(out) == params.m * 23
    assert vec_is_kl_sumfree(out, 3, 1)
    a = type5_a(params)
    # five bands: start {0}; co-P; full middle; co-{0}; P
    assert (a - 1, 0) in out and (a - 1, 1) not in out
    assert (a, 1) not in out and (a, 2) in out
    assert all((a + 1, y) in out for y in range(23))
    assert (a + params.m - 1, 0) not in out and (a + params.m - 1, 3) in out
    assert (a + params.m, 1) in out and (a + params.m, 2) not in out


def test_rz_slices():
    out = gen_type(TypeSpec("rz", Params(2, 1, 11, 1), s=0, pset=()))
    assert out.to_zpset() == ZpSet(11, [3, 4, 5])  # the [m, 2m-1] slice
    spec = TypeSpec("rz", Params(2, 1, 11, 2), s=0, pset=())
    assert any("s=0" in note for note in spec.notes)
    full = gen_type(TypeSpec("rz", Params(2, 1, 17, 2), s=1, pset=((3,),)))
    assert len(full) == 5 * 17 and vec_is_kl_sumfree(full, 2, 1)


def test_degenerate_parameter_rejections():
    p5 = Params(3, 1, 23, 2)
    with pytest.raises(ParameterError, match="nonempty P"):
        TypeSpec("type5", p5, s=1, pset=())
    with pytest.raises(ParameterError, match="s = 0 admits no valid P"):
        TypeSpec("type5", p5, s=0, pset=((),))
    with pytest.raises(ParameterError, match="0 not in 3P"):
        TypeSpec("type5", p5, s=1, pset=((0,),))
    with pytest.raises(ParameterError, match="proper subspace"):
        TypeSpec("type4", Params(3, 2, 13, 2), vbasis=((1,),))
    with pytest.raises(ParameterError, match="0 not in P\\+P"):
        TypeSpec("rz", Params(2, 1, 11, 2), s=1, pset=((0,),))
    with pytest.raises(ParameterError, match="type 2 requires l = 1"):
        TypeSpec("type2", Params(3, 2, 23, 2), vbasis=())
    with pytest.raises(ParameterError, match="n >= 2"):
        TypeSpec("type4", Params(3, 2, 13, 1), vbasis=())


def test_generator_sizes_and_verifier():
    # every kind at a representative parameter point has size m*p^{n-1}
    cases = [
        TypeSpec("type1", Params(3, 1, 23, 2), a=5),
        TypeSpec("type2", Params(3, 1, 23, 2), vbasis=()),
        TypeSpec("type3", Params(4, 1, 23, 2)),
        TypeSpec("type4", Params(4, 1, 23, 2), vbasis=()),
        TypeSpec("type5", Params(3, 1, 23, 2), s=1, pset=((1,), (5,))),
        TypeSpec("rz", Params(2, 1, 23, 2), s=1, pset=((1,), (4,))),
    ]
    for spec in cases:
        out = gen_type(spec)
        params = spec.params
        assert len(out) == params.m * params.p ** (params.n - 1)
        assert vec_is_kl_sumfree(out, params.k, params.l)


def test_type_supports_and_weights():
    params = Params(4, 1, 43, 2)
    assert len(type_support(TypeSpec("type1", params, a=type1_a_values(params)[0]))) == params.m
    assert len(type_support(TypeSpec("type2", params, vbasis=()))) == params.m + 1
    assert len(type_support(TypeSpec("type3", params))) == params.m
    assert len(type_support(TypeSpec("type4", params, vbasis=()))) == params.m + 2
    p31 = Params(3, 1, 23, 2)
    assert len(type_support(TypeSpec("type5", p31, s=1, pset=((1,),)))) == p31.m + 2


def test_nontriviality_examples():
    p21 = Params(2, 1, 11, 1)
    r = nontriviality_check(VecSet.from_zpset(ZpSet(11, [2, 7, 10])), p21)
    assert r.status == "nontrivial"
    r2 = nontriviality_check(VecSet.from_zpset(ZpSet(11, [2, 3, 8])), p21)
    assert r2.status == "trivial"
    assert dilate(ZpSet(11, [2, 3, 8]), r2.witness["dilation"]).issubset(
        extremal_interval(p21, r2.witness["j"])
    )
    cub = gen_cuboid(CuboidSpec(Params(2, 1, 11, 2), 0))
    assert nontriviality_check(cub, Params(2, 1, 11, 2)).status == "trivial"
    with pytest.raises(Exception, match="unsupported dimension"):
        nontriviality_check(VecSet(5, 3, [(1, 2, 3)]), Params(2, 1, 5, 3))


def test_nontriviality_of_generated_types():
    specs = [
        TypeSpec("type1", Params(3, 1, 23, 1), a=5),
        TypeSpec("type2", Params(3, 1, 23, 2), vbasis=()),
        TypeSpec("type3", Params(3, 2, 23, 1)),
        TypeSpec("type4", Params(3, 2, 23, 2), vbasis=()),
        TypeSpec("type5", Params(3, 1, 23, 2), s=1, pset=((1,),)),
        TypeSpec("rz", Params(2, 1, 17, 2), s=1, pset=((1,),)),
    ]
    for spec in specs:
        out = gen_type(spec)
        assert nontriviality_check(out, spec.params).status == "nontrivial", spec.which


def test_distinctness_certificates():
    params = Params(4, 1, 43, 2)
    assert set(available_kinds(params)) == {"type1", "type2", "type3", "type4"}
    certs = certify_type_distinctness(params)
    assert len(certs) == 6
    methods = {(c.kind_a, c.kind_b): c.method for c in certs}
    assert methods[("type1", "type3")] == "ed-profile"
    assert methods[("type1", "type2")] == "weight"
    with pytest.raises(ParameterError, match="m >= 5"):
        certify_type_distinctness(Params(4, 1, 13, 2))


def test_spot_checks_p103():
    # selected larger-p emissions: verifier and sizes at p = 103
    p41 = Params(4, 1, 103, 1)   # 103 = 5*20 + 3
    assert len(gen_type(TypeSpec("type3", p41))) == p41.m
    assert len(gen_cuboid(CuboidSpec(p41, 0))) == p41.m + 1
    p31 = Params(3, 1, 103, 2)   # 103 = 4*25 + 3
    out = gen_type(TypeSpec("type5", p31, s=1, pset=((1,), (2,))))
    assert len(out) == p31.m * 103


def test_case_table_sums_have_few_distinct_values():
    # The small-weight case analysis rests on: every (k,l)-sum inside the
    # support uses at most two distinct values when the weight is m+1, and at
    # most three when it is m+2 (for m large enough).
    from klsf.zpset import find_kl_sums

    checks = [
        (TypeSpec("type2", Params(3, 1, 23, 2), vbasis=()), 2),   # omega = m+1
        (TypeSpec("type2", Params(4, 1, 43, 2), vbasis=()), 2),
        (TypeSpec("type4", Params(4, 1, 43, 2), vbasis=()), 3),   # omega = m+2
        (TypeSpec("type4", Params(3, 2, 43, 2), vbasis=()), 3),
        (TypeSpec("type5", Params(3, 1, 103, 2), s=1, pset=((1,),)), 3),
    ]
    for spec, max_distinct in checks:
        params = spec.params
        supp = type_support(spec)
        sols = find_kl_sums(supp, params.k, params.l, params.k + params.l)
        worst = max((len(set(left) | set(right)) for left, right in sols), default=0)
        assert worst <= max_distinct, (spec.which, params.p, worst)


def test_type3_profile_exact():
    for k, l, p in ((4, 1, 43), (3, 2, 43), (6, 1, 47)):
        prof = type3_support_profile(Params(k, l, p, 1))
        assert prof[2] == 4
        assert all(prof[d] >= 6 for d in prof.counts if d != 2)
    # intervals carry e_1 = 2, so the type-3 profile (minimum 4) obstructs them
    m = Params(4, 1, 43).m
    interval_prof = ed_profile(ZpSet.interval(43, 0, m))
    assert min(interval_prof.multiset()) == 2
