"""Closed-form predictor for the tensor decompositions: the classification
tables evaluated on canonicalized parameters, without constructing any
matrices.

Inputs are arbitrary ModuleParams; both factors are first reduced to
canonical classes (duals negated, Ttilde converted or normalized, d-shift
orbits collapsed), then the unique matching table row is evaluated.  Rows
whose leaves need square or cubic roots lift to the splitting extension
and report the final field, mirroring the engine's lifting rule.

Known misprints are corrected by default and kept reproducible behind the
paper_literal flag: the T(0,g,-1) row printed with a tensor sign where a
direct sum must stand, the rho-root leaves printed as T(rho_i, c, delta)
where T(rho_i/g, g, delta) is forced by the eigenvalue equations, and the
plus-cube scalar printed with a repeated subscript.  Structural row
corrections established against the engine are permanent and listed in
TABLE_CORRECTIONS.
"""

import os

from .canon import ONE, TWO, can_T, can_Tt, canonicalize_params, three
from .descriptor import (
    DirectSum, Glue, Leaf, Semidirect, glue_arrow, m1_diagram,
)
from .gf import make_field
from .modules import derived_entries


class OracleError(ValueError):
    pass


class LiteralReadingInvalid(OracleError):
    """The paper-literal reading of this row is dimensionally impossible."""


class CaseId:
    __slots__ = ("table", "path")

    def __init__(self, table, path):
        self.table = table
        self.path = path

    def text(self):
        return f"{self.table}:{self.path}"

    def __eq__(self, other):
        return (isinstance(other, CaseId) and self.table == other.table
                and self.path == other.path)

    def __hash__(self):
        return hash((self.table, self.path))

    def __repr__(self):
        return f"CaseId({self.text()})"


class _NeedRoots(Exception):
    def __init__(self, degree):
        self.degree = degree


# rows where the implemented decomposition deviates from the literal table,
# established by the structural engine (see the decisions ledger)
TABLE_CORRECTIONS = {}


# ---------------------------------------------------------------------------
# Table 1 symbols
# ---------------------------------------------------------------------------

def symbols(ctx, left, right, paper_literal=False):
    """The symbol set of the classification tables for a T/Tt pair.

    left/right are ("Tt", b) or ("T", (b, c, d)); entries that need a
    family member that is absent stay None.
    """
    out = {}

    def tdata(tag):
        kind, p = tag
        if kind == "Tt":
            b = p
            return b, ctx.inv(b), 0
        return p

    bl = cl = dl = br = cr = dr = None
    if left is not None:
        bl, cl, dl = tdata(left)
    if right is not None:
        br, cr, dr = tdata(right)
    if left is not None:
        a1, a2 = derived_entries(ctx, bl, cl, dl)
        out["a1"], out["a2"] = a1, a2
    if right is not None:
        al1, al2 = derived_entries(ctx, br, cr, dr)
        out["alpha1"], out["alpha2"] = al1, al2
    if left is not None and right is not None:
        out["J"] = ctx.add(1, ctx.mul(ctx.mul(out["alpha1"], out["alpha2"]),
                                      ctx.mul(bl, br)))
        if paper_literal:
            # the repeated-subscript reading of the plus-cube scalar
            out["K"] = ctx.add(ctx.mul(ctx.mul(out["a1"], out["a1"]), bl),
                               ctx.mul(ctx.mul(out["alpha1"], out["alpha2"]), br))
        else:
            out["K"] = ctx.add(ctx.mul(ctx.mul(out["a1"], out["a2"]), bl),
                               ctx.mul(ctx.mul(out["alpha1"], out["alpha2"]), br))
        dd = ctx.add(dl, dr)
        one_minus = ctx.sub(1, ctx.mul(dd, dd))
        out["D"] = ctx.mul(ctx.mul(dd, dd), ctx.mul(one_minus, one_minus))
        out["Delta"] = ctx.mul(dd, ctx.add(1, dd))
        out["d+delta"] = dd
        # root polynomials (ascending coefficients)
        if left is not None and left[0] == "Tt" and right[0] == "T":
            if bl != 0:
                # charpoly of Xp*Xm on the top weight space; the print
                # swaps the lambda^2 and lambda coefficients
                j = out["J"]
                const = ctx.neg(ctx.mul(ctx.div(cr, bl), j)) if cr is not None else None
                out["rho_poly"] = (const, ctx.sub(1, ctx.mul(dr, dr)), 1, 1)
        csum = ctx.add(cl, cr)
        out["c+gamma"] = csum
        out["mu_poly"] = (ctx.neg(ctx.mul(csum, out["K"])),
                          ctx.sub(1, ctx.mul(dd, dd)), 1, 1)
    return out


# ---------------------------------------------------------------------------
# root helpers (raise _NeedRoots to request a field lift)
# ---------------------------------------------------------------------------

def _sqrt(ctx, a):
    if _CLASSIFY_ONLY:
        return 0  # descriptor is discarded; only the row id matters
    s = ctx.sqrt(a)
    if s is None:
        raise _NeedRoots(2)
    return s


def _cubic_roots(ctx, coeffs):
    if _CLASSIFY_ONLY:
        return [0, 0, 0]
    roots, cof = ctx.poly_roots(list(coeffs))
    if cof:
        raise _NeedRoots(ctx.splitting_degree(list(coeffs)))
    out = []
    for r, m in roots:
        out.extend([r] * m)
    out.sort(key=ctx.lex_key)
    return out


# ---------------------------------------------------------------------------
# prediction
# ---------------------------------------------------------------------------

def normalize_pair(left_params, right_params):
    """Canonical classes, order-normalized: One, Two, Tt, T."""
    lc = canonicalize_params(left_params)
    rc = canonicalize_params(right_params)
    order = {"One": 0, "Two": 1, "Tt": 2, "T": 3}
    if order[lc.kind] > order[rc.kind]:
        lc, rc = rc, lc
    return lc, rc


_CLASSIFY_ONLY = False


def classify(left_params, right_params, paper_literal=False):
    """The unique matching table row for the pair.

    Row selection never depends on root values, so this skips the root
    computations and descriptor construction that predict performs.
    """
    global _CLASSIFY_ONLY
    lc, rc = normalize_pair(left_params, right_params)
    ctx = lc.ctx or rc.ctx or make_field(1)
    _CLASSIFY_ONLY = True
    try:
        _, case = _predict_classes(lc, rc, ctx, paper_literal=paper_literal)
    except LiteralReadingInvalid:
        case = CaseId("t4", "g!=0;d=0;J=0")
    finally:
        _CLASSIFY_ONLY = False
    return case


def predict(left_params, right_params, ctx, paper_literal=False,
            max_degree=None):
    """(descriptor, final ctx, CaseId) for the pair over ctx, lifting for
    roots as needed."""
    if max_degree is None:
        max_degree = int(os.environ.get("SL2_MAX_EXT_DEGREE", "6"))
    lc, rc = normalize_pair(left_params.lift(ctx) if left_params.ctx else left_params,
                            right_params.lift(ctx) if right_params.ctx else right_params)
    while True:
        try:
            descr, case = _predict_classes(lc, rc, ctx, paper_literal)
            return descr.normalize(), ctx, case
        except _NeedRoots as e:
            new_k = ctx.k * e.degree
            if new_k > max_degree:
                raise OracleError(
                    f"required extension degree {new_k} exceeds cap {max_degree}")
            target = make_field(new_k)
            lc = lc.lift(target) if lc.ctx is not None else lc
            rc = rc.lift(target) if rc.ctx is not None else rc
            ctx = target


def required_degree(left_params, right_params, ctx, paper_literal=False):
    """Extension degree the prediction needs over ctx."""
    _, final_ctx, _ = predict(left_params, right_params, ctx,
                              paper_literal=paper_literal)
    return final_ctx.k // ctx.k


def _predict_classes(lc, rc, ctx, paper_literal=False, classify_only=False):
    if lc.kind == "One":
        return _structural_leaf(rc), CaseId("thm", "1")
    if lc.kind == "Two" and rc.kind == "Two":
        return DirectSum([Leaf(ONE), Leaf(three(ctx))]), CaseId("thm", "2")
    if lc.kind == "Two" and rc.kind == "Tt":
        b = rc.params[0]
        return (DirectSum([Leaf(can_Tt(ctx, b)),
                           Leaf(can_T(ctx, ctx.inv(b), 0, 0))]),
                CaseId("thm", "3"))
    if lc.kind == "Two" and rc.kind == "T":
        return _table2(ctx, rc.params, paper_literal)
    if lc.kind == "Tt" and rc.kind == "Tt":
        return _table3(ctx, lc.params[0], rc.params[0])
    if lc.kind == "Tt" and rc.kind == "T":
        return _table4(ctx, lc.params[0], rc.params, paper_literal)
    if lc.kind == "T" and rc.kind == "T":
        return _table5(ctx, lc.params, rc.params, paper_literal)
    raise OracleError(f"unhandled pair {lc.kind} (x) {rc.kind}")


def _leafT(ctx, b, c, d):
    return Leaf(can_T(ctx, b, c, d))


def _structural_leaf(cls):
    """A single module as a descriptor: a Leaf when irreducible, the
    layered structure for the reducible family members T(b,0,+-1)."""
    if cls.kind == "T":
        b, c, d = cls.params
        if c == 0 and d == 1:
            # 1 over 2, glued by both actions (the X+ edge carries b != 0)
            return Semidirect(Leaf(ONE), Leaf(TWO))
        if c == 0 and d == 2:
            return Semidirect(Leaf(TWO), Leaf(ONE))
    return Leaf(cls)


def _square_1221(ctx):
    """The 6-dimensional [1]/[2+2]/[1] tower: the top 1 maps into one
    middle 2 by X+ and the other by X-, each middle 2 maps into the socle
    1 by the opposite action."""
    nodes = [ONE, ONE, TWO, TWO]  # top-1, socle-1, mid-A, mid-B
    edges = [(0, 2, "X+"), (0, 3, "X-"), (2, 1, "X-"), (3, 1, "X+")]
    return Glue(nodes, edges)


def _table2(ctx, bcd, paper_literal):
    b, c, d = bcd
    tid = "t2"
    if c == 0:
        if d == 0:
            if b == 0:
                return m1_diagram(), CaseId(tid, "c=0;d=0;b=0")
            ib = ctx.inv(b)
            leaf = Leaf(can_Tt(ctx, ib))
            return (Semidirect(leaf, leaf),
                    CaseId(tid, "c=0;d=0;b!=0"))
        if d == 1:
            if b == 0:
                raise OracleError("T(0,0,1) is excluded")
            return (DirectSum([Leaf(three(ctx)), Semidirect(Leaf(TWO), Leaf(ONE))]),
                    CaseId(tid, "c=0;d=1;b!=0"))
        if d == 2:
            if b == 0:
                raise OracleError("T(0,0,-1) is excluded")
            return (DirectSum([Leaf(three(ctx)), Semidirect(Leaf(ONE), Leaf(TWO))]),
                    CaseId(tid, "c=0;d=2;b!=0"))
        dm, dp = ctx.sub(d, 1), ctx.add(d, 1)
        bl = ctx.mul(b, ctx.div(dm, d))
        br = ctx.mul(b, ctx.div(dp, d))
        return (DirectSum([_leafT(ctx, bl, 0, dm), _leafT(ctx, br, 0, dp)]),
                CaseId(tid, "c=0;d!=0,1,2"))
    # c != 0: canonical d is 0 or outside the prime field
    if d == 0:
        if b == 0:
            leaf = _leafT(ctx, 0, c, 1)
            return Semidirect(leaf, leaf), CaseId(tid, "c!=0;d=0;b=0")
        if b == ctx.inv(c):
            # print says T(0,c,1) twice; the sqrt-row formula continues to
            # b = 1/c (sqrt(b/c) = 1/c) and the engine confirms its leaves
            s = ctx.inv(c)
            return (DirectSum([_leafT(ctx, ctx.add(b, s), c, 1),
                               _leafT(ctx, ctx.sub(b, s), c, 1)]),
                    CaseId(tid, "c!=0;d=0;b=1/c"))
        s = _sqrt(ctx, ctx.div(b, c))
        return (DirectSum([_leafT(ctx, ctx.add(b, s), c, 1),
                           _leafT(ctx, ctx.sub(b, s), c, 1)]),
                CaseId(tid, "c!=0;d=0;b!=0,1/c"))
    bc = ctx.mul(b, c)
    if b == 0:
        return (DirectSum([_leafT(ctx, 0, c, ctx.add(d, 1)),
                           _leafT(ctx, 0, c, ctx.sub(d, 1))]),
                CaseId(tid, "c!=0;d!=0,1,2;b=0"))
    if ctx.add(ctx.sub(1, bc), d) == 0:
        return (DirectSum([_leafT(ctx, 0, c, d), _leafT(ctx, 0, c, ctx.add(d, 1))]),
                CaseId(tid, "c!=0;d!=0,1,2;1-bc+d=0"))
    if ctx.sub(ctx.sub(1, bc), d) == 0:
        return (DirectSum([_leafT(ctx, 0, c, ctx.sub(d, 1)), _leafT(ctx, 0, c, d)]),
                CaseId(tid, "c!=0;d!=0,1,2;1-bc-d=0"))
    disc = ctx.add(bc, ctx.mul(d, d))
    if disc == 0:
        bb = ctx.add(b, ctx.div(d, c))
        leaf = _leafT(ctx, bb, c, ctx.add(d, 1))
        return Semidirect(leaf, leaf), CaseId(tid, "c!=0;d!=0,1,2;bc+d2=0")
    s = _sqrt(ctx, disc)
    return (DirectSum([
        _leafT(ctx, ctx.add(b, ctx.div(ctx.add(d, s), c)), c, ctx.add(d, 1)),
        _leafT(ctx, ctx.add(b, ctx.div(ctx.sub(d, s), c)), c, ctx.add(d, 1))]),
        CaseId(tid, "c!=0;d!=0,1,2;bc+d2!=0"))


def _table3(ctx, b, beta):
    tid = "t3"
    if beta == ctx.neg(b):
        return (DirectSum([Leaf(three(ctx)),
                           glue_arrow(ONE, TWO, "X+"),
                           glue_arrow(TWO, ONE, "X+")]),
                CaseId(tid, "beta=-b"))
    s = ctx.add(b, beta)
    p = ctx.mul(b, beta)
    tt = Leaf(can_Tt(ctx, ctx.div(p, s)))
    return (DirectSum([_leafT(ctx, ctx.div(s, p), 0, 0), tt, tt]),
            CaseId(tid, "beta!=-b"))


def _table4(ctx, b, bcd, paper_literal):
    beta, gamma, delta = bcd
    tid = "t4"
    if gamma == 0:
        if delta == 0:
            if beta == ctx.neg(ctx.inv(b)):
                return (DirectSum([Leaf(three(ctx)), m1_diagram()]),
                        CaseId(tid, "g=0;d=0;beta=-1/b"))
            # print: Tt c+ (Tt + T); the T-part splits off (engine-certified)
            jp = ctx.add(1, ctx.mul(b, beta))
            tt = Leaf(can_Tt(ctx, ctx.div(b, jp)))
            tleaf = _leafT(ctx, ctx.div(jp, b), 0, 0)
            return (DirectSum([tleaf, Semidirect(tt, tt)]),
                    CaseId(tid, "g=0;d=0;beta!=-1/b"))
        if delta in (1, 2):
            tt = Leaf(can_Tt(ctx, b))
            tleaf = _leafT(ctx, ctx.inv(b), 0, 0)
            return (DirectSum([tleaf, Semidirect(tt, tt)]),
                    CaseId(tid, f"g=0;d={'1' if delta == 1 else '2'}"))
        om = ctx.sub(1, ctx.mul(delta, delta))
        j = ctx.add(1, ctx.mul(ctx.mul(b, beta), om))
        if j == 0:
            return (DirectSum([_leafT(ctx, 0, 0, ctx.sub(delta, 1)),
                               _leafT(ctx, 0, 0, delta),
                               _leafT(ctx, 0, 0, ctx.add(delta, 1))]),
                    CaseId(tid, "g=0;d!=0,1,2;J=0"))
        # print says T(J,0,.) three times, but with c = 0 each leaf's b is
        # pinned by the Xp^3 scalar J/b: b_i = (J/b) / (1 - d_i^2)
        s_plus = ctx.div(j, b)
        leaves = []
        for di in (ctx.sub(delta, 1), delta, ctx.add(delta, 1)):
            denom = ctx.sub(1, ctx.mul(di, di))
            leaves.append(_leafT(ctx, ctx.div(s_plus, denom), 0, di))
        return DirectSum(leaves), CaseId(tid, "g=0;d!=0,1,2;J!=0")
    # gamma != 0: canonical delta is 0 or outside the prime field
    al1, al2 = derived_entries(ctx, beta, gamma, delta)
    j = ctx.add(1, ctx.mul(ctx.mul(al1, al2), ctx.mul(b, beta)))
    if j == 0:
        if delta == 0:
            if paper_literal:
                raise LiteralReadingInvalid(
                    "T(0,g,-1) c+ (T(0,g,0) (x) T(0,g,-1)) is 12-dimensional")
            # corrected tensor sign, and the T(0,g,0) part splits off
            side = _leafT(ctx, 0, gamma, 2)
            return (DirectSum([_leafT(ctx, 0, gamma, 0),
                               Semidirect(side, side)]),
                    CaseId(tid, "g!=0;d=0;J=0"))
        return (DirectSum([_leafT(ctx, 0, gamma, ctx.sub(delta, 1)),
                           _leafT(ctx, 0, gamma, delta),
                           _leafT(ctx, 0, gamma, ctx.add(delta, 1))]),
                CaseId(tid, "g!=0;d!=0,1,2;J=0"))
    om = ctx.sub(1, ctx.mul(delta, delta))
    degen = ctx.mul(ctx.mul(delta, delta), ctx.mul(om, om))
    lhs = ctx.mul(ctx.div(gamma, b), j)
    if delta != 0 and lhs == ctx.neg(degen):
        # double root 1-delta^2, single root -delta^2; the single-root
        # leaf splits off (print nests it inside the semidirect)
        b1 = ctx.div(om, gamma)
        b2 = ctx.div(ctx.neg(ctx.mul(delta, delta)), gamma)
        side = _leafT(ctx, b1, gamma, delta)
        return (DirectSum([_leafT(ctx, b2, gamma, delta),
                           Semidirect(side, side)]),
                CaseId(tid, "g!=0;d!=0,1,2;J!=0;degenerate"))
    # characteristic polynomial of Xp*Xm on the top weight space; the
    # print swaps the quadratic and linear coefficients
    poly = (ctx.neg(lhs), om, 1, 1)
    roots = _cubic_roots(ctx, poly)
    leaves = []
    for r in roots:
        if paper_literal:
            leaves.append(_leafT(ctx, r, ctx.inv(b), delta))
        else:
            leaves.append(_leafT(ctx, ctx.div(r, gamma), gamma, delta))
    path = "g!=0;d=0;J!=0" if delta == 0 else "g!=0;d!=0,1,2;J!=0;split"
    return DirectSum(leaves), CaseId(tid, path)


def _table5(ctx, lparams, rparams, paper_literal):
    b, c, d = lparams
    beta, gamma, delta = rparams
    a1, a2 = derived_entries(ctx, b, c, d)
    al1, al2 = derived_entries(ctx, beta, gamma, delta)
    if paper_literal:
        K = ctx.add(ctx.mul(b, ctx.mul(a1, a1)),
                    ctx.mul(beta, ctx.mul(al1, al2)))
    else:
        K = ctx.add(ctx.mul(b, ctx.mul(a1, a2)),
                    ctx.mul(beta, ctx.mul(al1, al2)))
    dd = ctx.add(d, delta)
    exceptional = (c != 0 and gamma != 0 and d == 0 and delta == 0
                   and b == ctx.inv(c) and beta == ctx.inv(gamma))
    if gamma == ctx.neg(c):
        return _table5_lowest(ctx, lparams, rparams, K, dd, exceptional)
    return _table5_generic(ctx, lparams, rparams, K, dd, exceptional)


def _table5_lowest(ctx, lparams, rparams, K, dd, exceptional):
    """T (x) T with gamma = -c: lowest weight vectors present."""
    b, c, d = lparams
    beta, gamma, delta = rparams
    tid = "t5lw"
    if exceptional:
        return (DirectSum([Leaf(three(ctx)),
                           glue_arrow(ONE, TWO, "X-"),
                           glue_arrow(TWO, ONE, "X-")]),
                CaseId(tid, "exceptional"))
    if dd == 0:
        # P with K = (b+beta) P
        bc = ctx.mul(b, c)
        P = 1
        P = ctx.add(P, bc)
        P = ctx.add(P, ctx.mul(bc, bc))
        P = ctx.sub(P, ctx.mul(d, d))
        P = ctx.sub(P, ctx.mul(c, beta))
        P = ctx.sub(P, ctx.mul(ctx.mul(b, ctx.mul(c, c)), beta))
        P = ctx.add(P, ctx.mul(ctx.mul(c, c), ctx.mul(beta, beta)))
        if beta == ctx.neg(b):
            if P == 0:
                return _row_a(ctx), CaseId(tid, "dd=0;beta=-b;P=0")
            return _row_b(ctx), CaseId(tid, "dd=0;beta=-b;P!=0")
        if P == 0:
            return _row_c(ctx), CaseId(tid, "dd=0;beta!=-b;P=0")
        # K from the printed factorization K = (b+beta) P
        kfact = ctx.mul(ctx.add(b, beta), P)
        return _tt_semi_row(ctx, kfact), CaseId(tid, "dd=0;beta!=-b;P!=0")
    if dd == 1:
        # canonical inputs force c = gamma = 0 here; K comes from the
        # printed factorization K = (1+d)((1-d)b - d beta)
        if d == 2:
            if beta == b:
                return _row_d(ctx), CaseId(tid, "dd=1;d=-1;beta=b")
            return _row_e(ctx), CaseId(tid, "dd=1;d=-1;beta!=b")
        if ctx.mul(ctx.sub(1, d), b) == ctx.mul(d, beta):
            return _row_f(ctx), CaseId(tid, "dd=1;d!=-1;K=0")
        kfact = ctx.mul(ctx.add(1, d),
                        ctx.sub(ctx.mul(ctx.sub(1, d), b), ctx.mul(d, beta)))
        return _tt_semi_row(ctx, kfact), CaseId(tid, "dd=1;d!=-1;K!=0")
    if dd == 2:
        # K = (1-d)((1+d)b + d beta)
        if d == 1:
            if beta == b:
                return _row_i(ctx), CaseId(tid, "dd=2;d=1;beta=b")
            return _row_e(ctx), CaseId(tid, "dd=2;d=1;beta!=b")
        if ctx.mul(ctx.add(1, d), b) == ctx.neg(ctx.mul(d, beta)):
            return _row_h(ctx), CaseId(tid, "dd=2;d!=1;K=0")
        kfact = ctx.mul(ctx.sub(1, d),
                        ctx.add(ctx.mul(ctx.add(1, d), b), ctx.mul(d, beta)))
        return _tt_semi_row(ctx, kfact), CaseId(tid, "dd=2;d!=1;K!=0")
    if K == 0:
        return (DirectSum([_leafT(ctx, 0, 0, ctx.sub(dd, 1)),
                           _leafT(ctx, 0, 0, dd),
                           _leafT(ctx, 0, 0, ctx.add(dd, 1))]),
                CaseId(tid, "dd!=0,1,2;K=0"))
    # here K is the Xp^3 scalar; with c = 0 each leaf has b_i = K/(1-d_i^2)
    leaves = []
    for di in (ctx.sub(dd, 1), dd, ctx.add(dd, 1)):
        denom = ctx.sub(1, ctx.mul(di, di))
        leaves.append(_leafT(ctx, ctx.div(K, denom), 0, di))
    return DirectSum(leaves), CaseId(tid, "dd!=0,1,2;K!=0")


def _table5_generic(ctx, lparams, rparams, K, dd, exceptional):
    """T (x) T with gamma != -c: no lowest weight vectors."""
    b, c, d = lparams
    beta, gamma, delta = rparams
    tid = "t5"
    csum = ctx.add(c, gamma)
    if exceptional:
        return (DirectSum([_leafT(ctx, 0, csum, 2),
                           _leafT(ctx, 0, csum, 0),
                           _leafT(ctx, 0, csum, 1)]),
                CaseId(tid, "exceptional"))
    if K == 0:
        if dd in (0, 1, 2):
            # d+delta = +-1 instances are isomorphic to the d+delta = 0 one
            # (at least one factor has a nonzero c-slot and shifts); the
            # print nests T(0,c+g,0) under the semidirect but it splits off
            side = _leafT(ctx, 0, csum, 2)
            return (DirectSum([_leafT(ctx, 0, csum, 0),
                               Semidirect(side, side)]),
                    CaseId(tid, "K=0;dd=0"))
        return (DirectSum([_leafT(ctx, 0, csum, ctx.sub(dd, 1)),
                           _leafT(ctx, 0, csum, dd),
                           _leafT(ctx, 0, csum, ctx.add(dd, 1))]),
                CaseId(tid, "K=0;dd!=0,1,2"))
    one_minus = ctx.sub(1, ctx.mul(dd, dd))
    D = ctx.mul(ctx.mul(dd, dd), ctx.mul(one_minus, one_minus))
    if D == ctx.neg(ctx.mul(K, csum)):
        cond = (
            ctx.mul(ctx.mul(b, d), csum) == ctx.mul(dd, one_minus)
            and ctx.mul(beta, delta) == ctx.mul(b, d)
            and ctx.mul(gamma, ctx.sub(d, ctx.pow(d, 3)))
            == ctx.mul(c, ctx.sub(delta, ctx.pow(delta, 3)))
        )
        # double root 1-(d+delta)^2, single -(d+delta)^2 (the print's
        # -Delta / -1-Delta values do not satisfy the coefficient match)
        mu_double = one_minus
        mu_single = ctx.neg(ctx.mul(dd, dd))
        if cond:
            leaves = [_leafT(ctx, ctx.div(mu_double, csum), csum, dd),
                      _leafT(ctx, ctx.div(mu_double, csum), csum, dd),
                      _leafT(ctx, ctx.div(mu_single, csum), csum, dd)]
            return DirectSum(leaves), CaseId(tid, "K!=0;D=-K(c+g);split")
        side = _leafT(ctx, ctx.div(mu_double, csum), csum, dd)
        return (DirectSum([_leafT(ctx, ctx.div(mu_single, csum), csum, dd),
                           Semidirect(side, side)]),
                CaseId(tid, "K!=0;D=-K(c+g);semidirect"))
    poly = (ctx.neg(ctx.mul(csum, K)), one_minus, 1, 1)
    roots = _cubic_roots(ctx, poly)
    return (DirectSum([_leafT(ctx, ctx.div(r, csum), csum, dd) for r in roots]),
            CaseId(tid, "K!=0;D!=-K(c+g)"))


# ---------------------------------------------------------------------------
# the small-leaf rows of the gamma = -c table (structures verified against
# the engine; see ledger for the ones corrected relative to the print)
# ---------------------------------------------------------------------------

def _tt_semi_row(ctx, K):
    # print: Tt(1/K) c+ (T(K,0,0) + Tt(1/K)); the T-part splits off
    tt = Leaf(can_Tt(ctx, ctx.inv(K)))
    return DirectSum([_leafT(ctx, K, 0, 0), Semidirect(tt, tt)])


def _row_a(ctx):
    # print: 1 c+ ((2 c+ 1) + 2 + 3); the module splits completely into
    # one 3 and the two opposite mixed extensions (engine-certified, and
    # forced by duality with the dd=2, d=1, beta=b row)
    return DirectSum([Leaf(three(ctx)),
                      Semidirect(Leaf(TWO), Leaf(ONE)),
                      Semidirect(Leaf(ONE), Leaf(TWO))])


def _row_b(ctx):
    # print: 1 c+ (2 c+ (3 + (1 <- 2))); actual: the 3 splits off and the
    # remainder is the [1]/[2+2]/[1] tower
    return DirectSum([Leaf(three(ctx)), _square_1221(ctx)])


def _row_c(ctx):
    # print: 2 c+ (1 c+ (3 + (2 <- 1))); actual: 3 + M1
    return DirectSum([Leaf(three(ctx)), m1_diagram()])


def _row_d(ctx):
    # print: 1 c+ ((2 c+ 1) + 2 + 3); same split as row A
    return _row_a(ctx)


def _row_e(ctx):
    # print: 1 c+ (3 + (2 -> 1 <- 2)); the 3 splits off and the top 1
    # glues into the two middle 2s, giving the [1]/[2+2]/[1] tower
    return DirectSum([Leaf(three(ctx)), _square_1221(ctx)])


def _row_f(ctx):
    # print: 2 c+ (3 + (1 -> 2 <- 1)); actual: 3 + M1 (the top 2 and the
    # 1 -> 2 <- 1 part assemble into the M1 square)
    return DirectSum([Leaf(three(ctx)), m1_diagram()])


def _row_h(ctx):
    # print: 2 c+ (1 c+ ((1 <- 2) + 3)); actual: 3 + M1
    return DirectSum([Leaf(three(ctx)), m1_diagram()])


def _row_i(ctx):
    # printed as is: 3 + (2 c+ 1) + (1 c+ 2)
    return DirectSum([Leaf(three(ctx)),
                      Semidirect(Leaf(TWO), Leaf(ONE)),
                      Semidirect(Leaf(ONE), Leaf(TWO))])


# ---------------------------------------------------------------------------
# table enumeration (docs / coverage accounting)
# ---------------------------------------------------------------------------

TABLE_ROWS = [
    ("thm", "1", "1 (x) V = V"),
    ("thm", "2", "2 (x) 2 = 1 + 3"),
    ("thm", "3", "2 (x) Tt(b) = Tt(b) + T(1/b,0,0)"),
    ("t2", "c=0;d=0;b=0", "M1"),
    ("t2", "c=0;d=0;b!=0", "Tt(1/b) c+ Tt(1/b)"),
    ("t2", "c=0;d=1;b=0", "unreachable: T(0,0,1) excluded"),
    ("t2", "c=0;d=1;b!=0", "3 + (2 c+ 1)"),
    ("t2", "c=0;d=2;b=0", "unreachable: T(0,0,-1) excluded"),
    ("t2", "c=0;d=2;b!=0", "3 + (1 c+ 2)"),
    ("t2", "c=0;d!=0,1,2", "T(b(d-1)/d,0,d-1) + T(b(d+1)/d,0,d+1)"),
    ("t2", "c!=0;d=0;b=0", "T(0,c,1) c+ T(0,c,1)"),
    ("t2", "c!=0;d=0;b=1/c",
     "T(0,c,1) + T(-1/c,c,1) [print: T(0,c,1) twice]"),
    ("t2", "c!=0;d=0;b!=0,1/c", "T(b+sqrt(b/c),c,1) + T(b-sqrt(b/c),c,1)"),
    ("t2", "c!=0;d!=0,1,2;b=0", "T(0,c,d+1) + T(0,c,d-1)"),
    ("t2", "c!=0;d!=0,1,2;1-bc+d=0", "T(0,c,d) + T(0,c,d+1)"),
    ("t2", "c!=0;d!=0,1,2;1-bc-d=0", "T(0,c,d-1) + T(0,c,d)"),
    ("t2", "c!=0;d!=0,1,2;bc+d2=0", "T(b+d/c,c,d+1) c+ T(b+d/c,c,d+1)"),
    ("t2", "c!=0;d!=0,1,2;bc+d2!=0",
     "T(b+(d+s)/c,c,d+1) + T(b+(d-s)/c,c,d+1), s = sqrt(bc+d^2)"),
    ("t3", "beta=-b", "3 + (2 <- 1) + (1 <- 2)"),
    ("t3", "beta!=-b", "T((b+B)/(bB),0,0) + Tt(bB/(b+B)) + Tt(bB/(b+B))"),
    ("t4", "g=0;d=0;beta=-1/b", "3 + M1"),
    ("t4", "g=0;d=0;beta!=-1/b",
     "T(J'/b,0,0) + (Tt(b/J') c+ Tt(b/J')) [print nests the T inside]"),
    ("t4", "g=0;d=1", "T(1/b,0,0) + (Tt(b) c+ Tt(b)) [print nests the T]"),
    ("t4", "g=0;d=2", "T(1/b,0,0) + (Tt(b) c+ Tt(b)) [print nests the T]"),
    ("t4", "g=0;d!=0,1,2;J=0", "T(0,0,d-1) + T(0,0,d) + T(0,0,d+1)"),
    ("t4", "g=0;d!=0,1,2;J!=0",
     "sum of T((J/b)/(1-di^2),0,di), di = d-1,d,d+1 [print: T(J,0,di)]"),
    ("t4", "g!=0;d=0;J=0",
     "T(0,g,0) + (T(0,g,-1) c+ T(0,g,-1)) [print: tensor sign, nested]"),
    ("t4", "g!=0;d=0;J!=0", "T(r1/g,g,0) + T(r2/g,g,0) + T(r3/g,g,0)"),
    ("t4", "g!=0;d!=0,1,2;J=0", "T(0,g,d-1) + T(0,g,d) + T(0,g,d+1)"),
    ("t4", "g!=0;d!=0,1,2;J!=0;degenerate",
     "T(-d2/g,g,d) + (T((1-d2)/g,g,d) c+ T((1-d2)/g,g,d))"),
    ("t4", "g!=0;d!=0,1,2;J!=0;split", "T(r1/g,g,d) + T(r2/g,g,d) + T(r3/g,g,d)"),
    ("t5lw", "exceptional", "3 + (1 -> 2) + (2 -> 1)"),
    ("t5lw", "dd=0;beta=-b;P=0",
     "3 + (2 c+ 1) + (1 c+ 2) [print: 1 c+ ((2 c+ 1) + 2 + 3)]"),
    ("t5lw", "dd=0;beta=-b;P!=0",
     "3 + [1/(2+2)/1 square] [print: 1 c+ (2 c+ (3 + (1 <- 2)))]"),
    ("t5lw", "dd=0;beta!=-b;P=0",
     "3 + M1 [print: 2 c+ (1 c+ (3 + (2 <- 1)))]"),
    ("t5lw", "dd=0;beta!=-b;P!=0",
     "T(K,0,0) + (Tt(1/K) c+ Tt(1/K)) [print nests the T]"),
    ("t5lw", "dd=1;d=-1;beta=b",
     "3 + (2 c+ 1) + (1 c+ 2) [print: 1 c+ ((2 c+ 1) + 2 + 3)]"),
    ("t5lw", "dd=1;d=-1;beta!=b",
     "3 + [1/(2+2)/1 square] [print: 1 c+ (3 + (2 -> 1 <- 2))]"),
    ("t5lw", "dd=1;d!=-1;K=0", "3 + M1 [print: 2 c+ (3 + (1 -> 2 <- 1))]"),
    ("t5lw", "dd=1;d!=-1;K!=0",
     "T(K,0,0) + (Tt(1/K) c+ Tt(1/K)) [print nests the T]"),
    ("t5lw", "dd=2;d=1;beta=b", "3 + (2 c+ 1) + (1 c+ 2)"),
    ("t5lw", "dd=2;d=1;beta!=b",
     "3 + [1/(2+2)/1 square] [print: 1 c+ (3 + (2 -> 1 <- 2))]"),
    ("t5lw", "dd=2;d!=1;K=0",
     "3 + M1 [print: 2 c+ (1 c+ ((1 <- 2) + 3))]"),
    ("t5lw", "dd=2;d!=1;K!=0",
     "T(K,0,0) + (Tt(1/K) c+ Tt(1/K)) [print nests the T]"),
    ("t5lw", "dd!=0,1,2;K=0", "T(0,0,dd-1) + T(0,0,dd) + T(0,0,dd+1)"),
    ("t5lw", "dd!=0,1,2;K!=0",
     "sum of T(K/(1-di^2),0,di), di = dd-1,dd,dd+1 [print: T(K,0,di)]"),
    ("t5", "exceptional", "T(0,c+g,-1) + T(0,c+g,0) + T(0,c+g,1)"),
    ("t5", "K=0;dd=0",
     "T(0,c+g,0) + (T(0,c+g,-1) c+ T(0,c+g,-1)) [print nests the first T]"),
    ("t5", "K=0;dd!=0,1,2", "T(0,c+g,dd-1) + T(0,c+g,dd) + T(0,c+g,dd+1)"),
    ("t5", "K!=0;D=-K(c+g);split",
     "T((1-dd^2)/(c+g),c+g,dd) twice + T(-dd^2/(c+g),c+g,dd)"),
    ("t5", "K!=0;D=-K(c+g);semidirect",
     "T(-dd^2/(c+g),c+g,dd) + (T((1-dd^2)/(c+g),c+g,dd) c+ same)"),
    ("t5", "K!=0;D!=-K(c+g)", "T(m1/(c+g),c+g,dd) + T(m2/(c+g),c+g,dd) + T(m3/(c+g),c+g,dd)"),
]


def table_dump():
    """Machine-readable row enumeration for documentation and coverage."""
    return [{"table": t, "path": p, "decomposition": dsc}
            for t, p, dsc in TABLE_ROWS]
