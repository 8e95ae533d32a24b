import pytest

from sl2char3.gf import make_field
from sl2char3.canon import ONE, TWO, can_T, can_Tt, three
from sl2char3.descriptor import DirectSum, Leaf, descriptor_equal, glue_arrow
from sl2char3.modules import ModuleParams
from sl2char3 import oracle

F3 = make_field(1)
F9 = make_field(2)


def T3(b, c, d):
    return ModuleParams.T(F3, b, c, d)


def Tt3(b):
    return ModuleParams.Tt(F3, b, F3.inv(b), 0)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_examples():
    assert oracle.classify(ModuleParams.two(), ModuleParams.two()).text() == "thm:2"
    assert oracle.classify(ModuleParams.two(), T3(0, 0, 0)).text() == "t2:c=0;d=0;b=0"
    # T(1,1,0) (x) T(1,1,0) has b=1/c, d=0, beta=1/gamma, delta=0, so the
    # exceptional row overrides; the K=0 branch needs the conditions broken
    assert oracle.classify(T3(1, 1, 0), T3(1, 1, 0)).text() == "t5:exceptional"
    assert oracle.classify(T3(1, 1, 0), T3(0, 1, 0)).text() == "t5:K=0;dd=0"


def test_classify_order_invariant():
    a, b = ModuleParams.two(), T3(1, 2, 0)
    assert oracle.classify(a, b) == oracle.classify(b, a)


def test_classify_handles_duals():
    d = ModuleParams.dual(T3(1, 1, 0))
    assert oracle.classify(ModuleParams.two(), d).table == "t2"


def test_exhaustive_unique_row_gf3():
    from sl2char3.verify import all_pairs, gf_module_list
    for l, r in all_pairs(gf_module_list(F3)):
        case = oracle.classify(l, r)
        assert case is not None and case.table in ("thm", "t2", "t3", "t4",
                                                   "t5", "t5lw")


# ---------------------------------------------------------------------------
# predictions
# ---------------------------------------------------------------------------

def test_predict_one_times_module():
    d, ctx, case = oracle.predict(ModuleParams.one(), T3(1, 1, 0), F3)
    assert case.text() == "thm:1"
    assert descriptor_equal(d, Leaf(can_T(F3, 1, 1, 0)))


def test_predict_one_times_reducible_member():
    d, _, _ = oracle.predict(ModuleParams.one(), T3(1, 0, 1), F3)
    from sl2char3.descriptor import Semidirect
    from sl2char3.canon import TWO
    assert descriptor_equal(d, Semidirect(Leaf(ONE), Leaf(TWO)))


def test_predict_thm3():
    d, ctx, case = oracle.predict(ModuleParams.two(), Tt3(1), F3)
    assert case.text() == "thm:3"
    want = DirectSum([Leaf(can_Tt(F3, 1)), Leaf(can_T(F3, 1, 0, 0))])
    assert descriptor_equal(d, want)


def test_predict_tt_times_tt_opposite():
    d, ctx, case = oracle.predict(Tt3(1), Tt3(2), F3)
    assert case.text() == "t3:beta=-b"
    want = DirectSum([Leaf(three(F3)),
                      glue_arrow(ONE, TWO, "X+"),
                      glue_arrow(TWO, ONE, "X+")])
    assert descriptor_equal(d, want)


def test_predict_symmetric_sampled():
    import random
    rng = random.Random(5)
    mods = [T3(b, c, d) for b in range(3) for c in range(3) for d in range(3)
            if not (b == 0 and c == 0 and d in (1, 2))]
    mods += [Tt3(1), Tt3(2), ModuleParams.two()]
    for _ in range(60):
        l, r = rng.choice(mods), rng.choice(mods)
        dl, cl, _ = oracle.predict(l, r, F3)
        dr, cr, _ = oracle.predict(r, l, F3)
        assert dl == dr and cl.k == cr.k


def test_prediction_dimension_conservation():
    from sl2char3.verify import all_pairs, gf_module_list

    def dim_of(p):
        return {"One": 1, "Two": 2}.get(p.kind, 3)

    for l, r in all_pairs(gf_module_list(F3)):
        d, _, _ = oracle.predict(l, r, F3)
        assert d.dim() == dim_of(l) * dim_of(r), (l.text(), r.text())


def test_predict_lifts_for_roots():
    d, ctx, case = oracle.predict(ModuleParams.two(), T3(2, 1, 0), F3)
    assert ctx.k == 2 and case.text() == "t2:c!=0;d=0;b!=0,1/c"
    d2, ctx2, _ = oracle.predict(T3(0, 1, 0), T3(1, 0, 0), F3)
    assert ctx2.k == 3  # irreducible mu-cubic


def test_required_degree_matches_engine():
    from sl2char3.engine import decompose_with_lift
    cases = [
        (ModuleParams.two(), T3(2, 1, 0)),
        (T3(0, 1, 0), T3(1, 0, 0)),
        (T3(1, 1, 0), T3(2, 1, 0)),
    ]
    for l, r in cases:
        _, ectx = decompose_with_lift(l, r, F3)
        _, octx, _ = oracle.predict(l, r, F3)
        assert ectx.k == octx.k


# ---------------------------------------------------------------------------
# symbols
# ---------------------------------------------------------------------------

def test_symbols_K_and_J():
    syms = oracle.symbols(F3, ("T", (1, 1, 0)), ("T", (1, 1, 0)))
    assert syms["K"] == 0  # a1 = a2 = alpha1 = alpha2 = 0
    syms = oracle.symbols(F3, ("Tt", 1), ("T", (1, 1, 0)))
    assert syms["J"] == 1  # alpha1 = alpha2 = 0
    syms = oracle.symbols(F3, ("T", (1, 1, 0)), ("T", (2, 2, 0)))
    assert syms["D"] == 0  # d + delta = 0


def test_symbols_literal_K_differs():
    # d != 0 makes a1 != a2, so the repeated-subscript reading diverges
    syms = oracle.symbols(F9, ("T", (1, 0, 2)), ("T", (1, 1, 0)))
    lit = oracle.symbols(F9, ("T", (1, 0, 2)), ("T", (1, 1, 0)),
                         paper_literal=True)
    assert syms["K"] != lit["K"]


def test_symbols_mu_poly_matches_charpoly():
    from sl2char3.linalg import charpoly
    from sl2char3.modules import make_T
    from sl2char3.tensorops import tensor, xpxm_on_weight
    b, c, d = 1, 0, 2
    beta, gamma, delta = 2, 1, 0
    syms = oracle.symbols(F3, ("T", (b, c, d)), ("T", (beta, gamma, delta)))
    v = tensor(make_T(F3, b, c, d), make_T(F3, beta, gamma, delta))
    dd = F3.add(d, delta)
    m = xpxm_on_weight(v, F3.add(dd, 1))
    assert tuple(syms["mu_poly"]) == charpoly(m)


def test_symbols_rho_poly_matches_charpoly():
    # the corrected coefficient order: lambda^3 + lambda^2 + (1-delta^2) x - (g/b) J
    from sl2char3.linalg import charpoly
    from sl2char3.modules import make_T, make_Ttilde
    from sl2char3.tensorops import tensor, xpxm_on_weight
    for b, (beta, gamma, delta) in [(1, (0, 1, 3)), (2, (4, 1, 5)),
                                    (5, (2, 3, 7))]:
        syms = oracle.symbols(F9, ("Tt", b), ("T", (beta, gamma, delta)))
        v = tensor(make_Ttilde(F9, b, F9.inv(b), 0),
                   make_T(F9, beta, gamma, delta))
        m = xpxm_on_weight(v, F9.add(delta, 1))
        assert tuple(syms["rho_poly"]) == charpoly(m), (b, beta, gamma, delta)


# ---------------------------------------------------------------------------
# table dump and row structure
# ---------------------------------------------------------------------------

def test_table_dump_row_counts():
    rows = oracle.table_dump()
    keys = [(r["table"], r["path"]) for r in rows]
    assert len(keys) == len(set(keys))  # unique ids
    by_table = {}
    for t, _ in keys:
        by_table[t] = by_table.get(t, 0) + 1
    assert by_table["t3"] == 2
    # the 2 (x) T table has 15 leaf rows (7 with c=0, 8 with c!=0)
    assert by_table["t2"] == 15
    assert by_table["thm"] == 3


def test_excluded_input_rejected():
    with pytest.raises(Exception):
        oracle.predict(ModuleParams.two(), T3(0, 0, 1), F3)


# ---------------------------------------------------------------------------
# paper-literal toggles
# ---------------------------------------------------------------------------

def test_literal_tensor_row_invalid():
    # Tt(1) (x) T(2,1,0) satisfies b beta (1 - beta gamma)^2 = -1
    with pytest.raises(oracle.LiteralReadingInvalid):
        oracle.predict(Tt3(1), T3(2, 1, 0), F3, paper_literal=True)


def test_literal_rho_leaves_differ():
    l, r = Tt3(1), T3(1, 2, 0)  # g != 0, J != 0, g != 1/b
    d, _, case = oracle.predict(l, r, F3)
    dlit, _, _ = oracle.predict(l, r, F3, paper_literal=True)
    assert case.text() == "t4:g!=0;d=0;J!=0"
    assert d != dlit


def test_literal_K_changes_row():
    # T(1,0,2) has a2 = 0 so K = 0, but the literal K = b a1^2 is nonzero
    l, r = T3(1, 0, 2), T3(0, 1, 0)
    _, _, case = oracle.predict(l, r, F3)
    _, _, case_lit = oracle.predict(l, r, F3, paper_literal=True)
    assert case.path.startswith("K=0") and case_lit.path.startswith("K!=0")


def test_default_mode_not_affected_by_flag_elsewhere():
    for l, r in [(ModuleParams.two(), T3(1, 1, 0)), (Tt3(1), Tt3(2))]:
        d, _, _ = oracle.predict(l, r, F3)
        dlit, _, _ = oracle.predict(l, r, F3, paper_literal=True)
        assert d == dlit
