"""Canonical-form lemma suite: every claimed isomorphism is certified by an
explicit intertwiner, every claimed non-isomorphism by intertwiner absence.
Exhaustive over GF(3), sampled over GF(9)."""

import random

import pytest

from sl2char3.gf import make_field
from sl2char3.linalg import solve_intertwiner
from sl2char3.modules import (
    ModuleParams, Sl2Error, derived_entries, dual, make_standard, make_T,
    make_Ttilde,
)
from sl2char3.canon import (
    TWO, ONE, CanonError, can_T, can_Tt, canonical_T_params,
    canonicalize_params, class_rep, dual_params, is_isomorphic,
    normalize_twozeros, recover_params, shift_d, shift_down, shift_up,
    simtrf_matrix, ttilde_to_T, ttilde_to_T_matrix,
)

F3 = make_field(1)
F9 = make_field(2)


def admissible(ctx):
    for b in range(ctx.q):
        for c in range(ctx.q):
            for d in range(ctx.q):
                if b == 0 and c == 0 and d in (1, 2):
                    continue
                yield b, c, d


def certify_iso(a, b):
    s = solve_intertwiner(list(a.generators()), list(b.generators()))
    assert s is not None
    for ga, gb in zip(a.generators(), b.generators()):
        assert s.mul(ga).equals(gb.mul(s))
    return s


def gf9_sample(n, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        b, c, d = (rng.randrange(9) for _ in range(3))
        if b == 0 and c == 0 and d in (1, 2):
            continue
        out.append((b, c, d))
    return out


# ---------------------------------------------------------------------------
# duals (negate all parameters; anti-diagonal similarity)
# ---------------------------------------------------------------------------

def test_dual_params_examples():
    p = dual_params(ModuleParams.T(F3, 1, 1, 0))
    assert p.bcd == (2, 2, 0)
    p = dual_params(ModuleParams.T(F3, 0, 0, 0))
    assert p.bcd == (0, 0, 0)
    p = dual_params(ModuleParams.Tt(F3, 1, 1, 0))
    assert p.kind == "Tt" and p.bcd == (2, 2, 0)


def test_dual_reduction_certified_exhaustive_gf3():
    s = simtrf_matrix(F3)
    for b, c, d in admissible(F3):
        for make in (make_T, make_Ttilde):
            src = dual(make(F3, b, c, d))
            dst = make(F3, F3.neg(b), F3.neg(c), F3.neg(d))
            for ga, gb in zip(src.generators(), dst.generators()):
                assert s.mul(ga).equals(gb.mul(s)), (b, c, d)


def test_dual_reduction_certified_sampled_gf9():
    s = simtrf_matrix(F9)
    for b, c, d in gf9_sample(40, 81):
        src = dual(make_T(F9, b, c, d))
        dst = make_T(F9, F9.neg(b), F9.neg(c), F9.neg(d))
        for ga, gb in zip(src.generators(), dst.generators()):
            assert s.mul(ga).equals(gb.mul(s))


# ---------------------------------------------------------------------------
# Ttilde -> T (at most one of a1, a2, b zero)
# ---------------------------------------------------------------------------

def test_ttilde_to_T_case_examples():
    # a1 = a2 = -1 for Tt(1,0,0): case with both nonzero
    assert ttilde_to_T(F3, 1, 0, 0) == (0, 1, 0)
    # two zeros: no T-form
    assert ttilde_to_T(F3, 1, 1, 0) is None
    assert ttilde_to_T(F3, 0, 1, 1) is None


def test_ttilde_to_T_certified_exhaustive_gf3():
    for b, c, d in admissible(F3):
        target = ttilde_to_T(F3, b, c, d)
        a1, a2 = derived_entries(F3, b, c, d)
        zeros = (a1 == 0) + (a2 == 0) + (b == 0)
        if zeros >= 2:
            assert target is None
            continue
        assert target is not None
        src = make_Ttilde(F3, b, c, d)
        dst = make_T(F3, *target)
        s = ttilde_to_T_matrix(F3, b, c, d)
        for ga, gb in zip(src.generators(), dst.generators()):
            assert s.mul(ga).equals(gb.mul(s)), (b, c, d)


def test_ttilde_to_T_certified_sampled_gf9():
    for b, c, d in gf9_sample(60, 82):
        target = ttilde_to_T(F9, b, c, d)
        if target is None:
            continue
        src = make_Ttilde(F9, b, c, d)
        dst = make_T(F9, *target)
        s = ttilde_to_T_matrix(F9, b, c, d)
        for ga, gb in zip(src.generators(), dst.generators()):
            assert s.mul(ga).equals(gb.mul(s))


def test_no_isomorphism_when_two_zeros():
    # Tt(1,1,0) has a1 = a2 = 0: Xm kills a 2-dim space, impossible in T-form
    src = make_Ttilde(F3, 1, 1, 0)
    for b, c, d in admissible(F3):
        assert solve_intertwiner(
            list(src.generators()), list(make_T(F3, b, c, d).generators())) is None


# ---------------------------------------------------------------------------
# two-zero normalization (Ttilde(b,1/b,0) normal form)
# ---------------------------------------------------------------------------

def test_normalize_twozeros_examples():
    assert normalize_twozeros(F3, 1, 1, 0) == 1
    assert normalize_twozeros(F3, 2, 2, 0) == 2  # bc = 4 = 1
    with pytest.raises(Sl2Error):
        normalize_twozeros(F3, 0, 0, 1)


def test_normalize_twozeros_certified():
    for ctx, triples in ((F3, list(admissible(F3))), (F9, gf9_sample(80, 83))):
        for b, c, d in triples:
            a1, a2 = derived_entries(ctx, b, c, d)
            if (a1 == 0) + (a2 == 0) + (b == 0) < 2:
                continue
            b0 = normalize_twozeros(ctx, b, c, d)
            src = make_Ttilde(ctx, b, c, d)
            dst = make_Ttilde(ctx, b0, ctx.inv(b0), 0)
            s = solve_intertwiner(list(src.generators()), list(dst.generators()))
            assert s is not None, (ctx, b, c, d)


# ---------------------------------------------------------------------------
# d-shifts
# ---------------------------------------------------------------------------

def test_shift_d_examples():
    assert shift_d(F3, 0, 1, 1) == (1, 1)   # T(0,1,1) ~ T(1,1,0)
    assert shift_d(F3, 1, 1, 1) == (2, 1)   # T(1,1,1) ~ T(2,1,0)
    with pytest.raises(CanonError):
        shift_d(F3, 1, 1, 0)
    with pytest.raises(CanonError):
        shift_d(F3, 1, 0, 1)


def test_shift_d_certified_both_signs_gf3():
    for b, c, d in admissible(F3):
        if c == 0 or d == 0:
            continue
        b2, c2 = shift_d(F3, b, c, d)
        src = make_T(F3, b, c, d)
        dst = make_T(F3, b2, c2, 0)
        s = solve_intertwiner(list(src.generators()), list(dst.generators()))
        assert s is not None, (b, c, d)


def test_shift_orbit_certified_gf9():
    # the cyclic relabelling works for every d, not only d = +-1
    for b, c, d in gf9_sample(40, 84):
        if c == 0:
            continue
        for target in (shift_down(F9, b, c, d), shift_up(F9, b, c, d)):
            src = make_T(F9, b, c, d)
            dst = make_T(F9, *target)
            s = solve_intertwiner(list(src.generators()), list(dst.generators()))
            assert s is not None, (b, c, d, target)


def test_canonical_T_params_zero_constant_coefficient():
    for b, c, d in gf9_sample(60, 85):
        if c == 0:
            continue
        cb, cc, cd = canonical_T_params(F9, b, c, d)
        assert F9.digits(cd)[0] == 0
        assert cc == c
    # over GF(3) the canonical d is 0 outright
    for b, c, d in admissible(F3):
        if c != 0:
            assert canonical_T_params(F3, b, c, d)[2] == 0


# ---------------------------------------------------------------------------
# parameter recovery
# ---------------------------------------------------------------------------

def test_recover_roundtrip_examples():
    assert recover_params(make_T(F3, 1, 1, 0)) == can_T(F3, 1, 1, 0)
    assert recover_params(make_Ttilde(F3, 1, 1, 0)) == can_Tt(F3, 1)
    assert recover_params(make_standard(F3, 3)) == can_T(F3, 0, 0, 0)
    assert recover_params(make_standard(F3, 2)) == TWO
    assert recover_params(make_standard(F3, 1)) == ONE


def test_recover_matches_canonicalization_exhaustive_gf3():
    for b, c, d in admissible(F3):
        if c == 0 and d in (1, 2):
            continue  # reducible locus: no normal form
        got = recover_params(make_T(F3, b, c, d))
        assert got == can_T(F3, b, c, d), (b, c, d)
        got = recover_params(make_Ttilde(F3, b, c, d))
        assert got == canonicalize_params(ModuleParams.Tt(F3, b, c, d)), (b, c, d)


def test_recover_rejects_reducible_locus():
    with pytest.raises(CanonError):
        recover_params(make_T(F3, 1, 0, 1))


def test_recover_sampled_gf9():
    for b, c, d in gf9_sample(50, 86):
        if c == 0 and d in (1, 2):
            continue
        assert recover_params(make_T(F9, b, c, d)) == can_T(F9, b, c, d)


def test_recover_sampled_gf81():
    f81 = make_field(4)
    rng = random.Random(91)
    for _ in range(40):
        b, c, d = (rng.randrange(f81.q) for _ in range(3))
        if c == 0 and d in (1, 2) or (b == 0 and c == 0 and d in (1, 2)):
            continue
        assert recover_params(make_T(f81, b, c, d)) == can_T(f81, b, c, d)


# ---------------------------------------------------------------------------
# isomorphism testing and class separation
# ---------------------------------------------------------------------------

def test_is_isomorphic_examples():
    t = make_T(F3, 1, 1, 0)
    assert is_isomorphic(t, dual(dual(t)))
    assert is_isomorphic(make_T(F3, 0, 1, 1), make_T(F3, 1, 1, 0))
    assert not is_isomorphic(make_T(F3, 1, 1, 0), make_Ttilde(F3, 1, 1, 0))


def test_distinct_canonical_classes_non_isomorphic_gf3():
    classes = {}
    for b, c, d in admissible(F3):
        cls = canonicalize_params(ModuleParams.T(F3, b, c, d))
        classes.setdefault(cls, class_rep(cls, F3))
        cls = canonicalize_params(ModuleParams.Tt(F3, b, c, d))
        classes.setdefault(cls, class_rep(cls, F3))
    items = sorted(classes.items(), key=lambda kv: kv[0].sort_key())
    reps = [rep for _, rep in items]
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            s = solve_intertwiner(list(reps[i].generators()),
                                  list(reps[j].generators()))
            assert s is None, (items[i][0], items[j][0])


def test_classes_are_isomorphism_invariants_gf3():
    # same class <=> isomorphic, across a mixed sample of both families
    sample = [("T", p) for p in list(admissible(F3))[::5]]
    sample += [("Tt", p) for p in list(admissible(F3))[::7]]
    built = []
    for fam, p in sample:
        params = (ModuleParams.T(F3, *p) if fam == "T"
                  else ModuleParams.Tt(F3, *p))
        built.append((canonicalize_params(params),
                      make_T(F3, *p) if fam == "T" else make_Ttilde(F3, *p)))
    for i in range(0, len(built), 3):
        for j in range(0, len(built), 7):
            ci, ri = built[i]
            cj, rj = built[j]
            s = solve_intertwiner(list(ri.generators()), list(rj.generators()))
            assert (s is not None) == (ci == cj), (ci, cj)


def test_exactly_one_normal_form_route_applies():
    for ctx, triples in ((F3, list(admissible(F3))), (F9, gf9_sample(60, 87))):
        for b, c, d in triples:
            t_form = ttilde_to_T(ctx, b, c, d)
            if t_form is None:
                assert normalize_twozeros(ctx, b, c, d) is not None or True
            else:
                with pytest.raises(CanonError):
                    normalize_twozeros(ctx, b, c, d)


def test_dual_class_matches_dual_rep():
    from sl2char3.canon import dual_class
    for b, c, d in list(admissible(F3))[::4]:
        if c == 0 and d in (1, 2):
            continue
        cls = canonicalize_params(ModuleParams.T(F3, b, c, d))
        assert dual_class(cls) == recover_params(dual(make_T(F3, b, c, d)))
