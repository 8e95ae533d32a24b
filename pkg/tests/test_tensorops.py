import pytest

from sl2char3.gf import make_field
from sl2char3.linalg import Subspace, kernel, minpoly, eigenspaces
from sl2char3.modules import make_standard, make_T, make_Ttilde, validate
from sl2char3.tensorops import (
    cube_scalars, expected_cube_scalars, hw_lw_vectors, tensor,
    weight_spaces, xpxm_on_weight,
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


def tt_units(ctx):
    return [b for b in range(1, ctx.q)]


# ---------------------------------------------------------------------------
# tensor construction
# ---------------------------------------------------------------------------

def test_tensor_with_one_copies_matrices():
    one = make_standard(F3, 1)
    t = make_T(F3, 1, 2, 0)
    v = tensor(one, t)
    assert v.xm.equals(t.xm) and v.h.equals(t.h) and v.xp.equals(t.xp)


def test_tensor_two_two_weights():
    two = make_standard(F3, 2)
    v = tensor(two, two)
    # lex basis q_i q_j: weights 1+1, 1-1, -1+1, -1-1 = 2, 0, 0, 1
    assert v.h.rows == ((2, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1))


def test_tensor_validates():
    v = tensor(make_T(F3, 1, 1, 0), make_T(F3, 1, 1, 0))
    assert v.n == 9
    assert validate(v) is None


def test_weight_spaces_of_two_times_T():
    t = make_T(F3, 1, 2, 0)
    v = tensor(make_standard(F3, 2), t)
    spaces = dict(weight_spaces(v))
    # weights d, d +- 1, each of dimension 2
    assert set(spaces) == {0, 1, 2}
    assert all(s.dim == 2 for s in spaces.values())


def test_weight_spaces_of_T_times_T():
    v = tensor(make_T(F9, 1, 0, 3), make_T(F9, 0, 1, 4))
    spaces = weight_spaces(v)
    assert len(spaces) == 3 and all(s.dim == 3 for _, s in spaces)


def test_single_weight_of_one():
    spaces = weight_spaces(make_standard(F3, 1))
    assert len(spaces) == 1 and spaces[0][0] == 0


def test_weight_shift_property():
    # Xp: V_rho -> V_(rho+2), Xm: V_rho -> V_(rho-2); +-2 = -+1 in char 3
    pairs = [
        (make_standard(F3, 2), make_T(F3, 1, 1, 0)),
        (make_T(F3, 2, 1, 0), make_T(F3, 1, 0, 2)),
        (make_Ttilde(F3, 2, 2, 0), make_T(F3, 0, 1, 1)),
    ]
    for a, b in pairs:
        v = tensor(a, b)
        spaces = dict(weight_spaces(v))
        for rho, space in spaces.items():
            up = spaces.get(F3.add(rho, 2), Subspace(F3, v.n, []))
            down = spaces.get(F3.sub(rho, 2), Subspace(F3, v.n, []))
            for vec in space.basis:
                assert up.contains(v.xp.matvec(vec))
                assert down.contains(v.xm.matvec(vec))


# ---------------------------------------------------------------------------
# highest / lowest weight vectors
# ---------------------------------------------------------------------------

def test_hw_vectors_two_times_two():
    two = make_standard(F3, 2)
    v = tensor(two, two)
    highest, _ = hw_lw_vectors(v)
    hw = {w: s for w, s in highest if s.dim}
    # q1 q1 at weight 2, q2 q1 - q1 q2 at weight 0
    assert set(hw) == {2, 0}
    assert hw[2].contains((1, 0, 0, 0))
    assert hw[0].contains((0, 2, 1, 0))


def test_lw_vectors_two_times_ttilde():
    # q2 t1 and q2 t2 are the weight vectors killed by Xm.  (Xp^3 acts as
    # the nonzero scalar 1/b on this product, so there are no highest
    # weight vectors at all; these two generate the decomposition.)
    t = make_Ttilde(F3, 1, 1, 0)
    v = tensor(make_standard(F3, 2), t)
    highest, lowest = hw_lw_vectors(v)
    lw_total = Subspace(F3, 6, [b for _, s in lowest for b in s.basis])
    assert lw_total.contains((0, 0, 0, 1, 0, 0))
    assert lw_total.contains((0, 0, 0, 0, 1, 0))
    # plus q2 t3 - b q1 t1, matching the Tt (+) T(1/b,0,0) target
    assert lw_total.dim == 3
    assert sum(s.dim for _, s in highest) == 0


def test_lw_space_dimension_with_c_plus_gamma_zero():
    v = tensor(make_T(F3, 1, 1, 0), make_T(F3, 1, 2, 0))
    _, lowest = hw_lw_vectors(v)
    assert sum(s.dim for _, s in lowest) == 3
    assert kernel(v.xm).dim == 3


# ---------------------------------------------------------------------------
# cube scalars (Lemma-style closed forms)
# ---------------------------------------------------------------------------

def test_cube_scalar_examples():
    v = tensor(make_Ttilde(F3, 1, 1, 0), make_Ttilde(F3, 2, 2, 0))
    plus, minus = cube_scalars(v)
    assert plus == 0 and minus == 0  # (1+2)/(1*2) = 0

    v = tensor(make_T(F3, 1, 1, 0), make_T(F3, 1, 1, 0))
    plus, minus = cube_scalars(v)
    assert minus == 2 and plus == 0

    one = make_standard(F3, 1)
    assert cube_scalars(one) == (0, 0)


def test_cube_scalars_match_closed_forms_exhaustive_gf3():
    tts = tt_units(F3)
    ts = list(admissible(F3))
    # Tt (x) Tt
    for b in tts:
        for beta in tts:
            v = tensor(make_Ttilde(F3, b, F3.inv(b), 0),
                       make_Ttilde(F3, beta, F3.inv(beta), 0))
            got = cube_scalars(v)
            want = expected_cube_scalars(F3, ("Tt", b), ("Tt", beta))
            assert got == want, (b, beta)
    # Tt (x) T
    for b in tts:
        for p in ts:
            v = tensor(make_Ttilde(F3, b, F3.inv(b), 0), make_T(F3, *p))
            got = cube_scalars(v)
            want = expected_cube_scalars(F3, ("Tt", b), ("T", p))
            assert got == want, (b, p)
    # T (x) T
    for p in ts:
        for q in ts:
            v = tensor(make_T(F3, *p), make_T(F3, *q))
            got = cube_scalars(v)
            want = expected_cube_scalars(F3, ("T", p), ("T", q))
            assert got == want, (p, q)


def test_hw_lw_existence_iff_cube_scalar_vanishes_gf3():
    import random
    rng = random.Random(6)
    cases = []
    ts = list(admissible(F3))
    for _ in range(80):
        p, q = rng.choice(ts), rng.choice(ts)
        cases.append((make_T(F3, *p), make_T(F3, *q)))
    for b in tt_units(F3):
        for p in ts[:10]:
            cases.append((make_Ttilde(F3, b, F3.inv(b), 0), make_T(F3, *p)))
    for a, bmod in cases:
        v = tensor(a, bmod)
        plus, minus = cube_scalars(v)
        assert plus is not None and minus is not None
        assert (kernel(v.xp).dim > 0) == (plus == 0)
        assert (kernel(v.xm).dim > 0) == (minus == 0)


# ---------------------------------------------------------------------------
# Xp*Xm on weight spaces
# ---------------------------------------------------------------------------

def test_xpxm_on_weight_one_dim():
    one = make_standard(F3, 1)
    m = xpxm_on_weight(one, 0)
    assert m.rows == ((0,),)


def test_xpxm_minpoly_weight1_of_2xT100():
    v = tensor(make_standard(F3, 2), make_T(F3, 1, 0, 0))
    m = xpxm_on_weight(v, 1)
    # minimal polynomial (x-1)^2 = x^2 + x + 1: no eigenbasis here
    assert minpoly(m) == (1, 1, 1)


def test_xpxm_eigenvalues_weight_d_of_2xT210_gf9():
    t = make_T(F9, 2, 1, 0)
    v = tensor(make_standard(F9, 2), t)
    m = xpxm_on_weight(v, 0)  # weight d = 0 space
    eig = [lam for lam, _ in eigenspaces(m)]
    root = F9.sqrt(2)
    want = sorted([F9.add(2, root), F9.sub(2, root)], key=F9.lex_key)
    assert eig == want


def test_xpxm_charpoly_on_top_weight_of_TxT():
    from sl2char3.linalg import charpoly
    b, c, d = 1, 0, 2
    beta, gamma, delta = 2, 1, 0
    v = tensor(make_T(F3, b, c, d), make_T(F3, beta, gamma, delta))
    dd = F3.add(d, delta)
    m = xpxm_on_weight(v, F3.add(dd, 1))
    # char poly: x^3 + x^2 + (1-(d+delta)^2) x - (c+gamma) K
    a1 = F3.sub(F3.add(F3.mul(b, c), d), 1)
    a2 = F3.sub(F3.sub(F3.mul(b, c), d), 1)
    al1 = F3.sub(F3.add(F3.mul(beta, gamma), delta), 1)
    al2 = F3.sub(F3.sub(F3.mul(beta, gamma), delta), 1)
    K = F3.add(F3.mul(b, F3.mul(a1, a2)), F3.mul(beta, F3.mul(al1, al2)))
    want = (
        F3.neg(F3.mul(F3.add(c, gamma), K)),
        F3.sub(1, F3.mul(dd, dd)),
        1,
        1,
    )
    assert charpoly(m) == want


def test_xpxm_wrong_weight_raises():
    from sl2char3.modules import Sl2Error
    one = make_standard(F3, 1)
    with pytest.raises(Sl2Error):
        xpxm_on_weight(one, 1)
