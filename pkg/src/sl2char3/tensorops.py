"""Tensor products and the weight-space machinery used by both the
decomposition engine and the verification sweeps: weight decompositions,
highest/lowest weight vectors, the scalar actions of Xp^3 and Xm^3, and
Xp*Xm restricted to a weight space.

Kronecker convention: the left factor owns the outer index, so basis
vector (i, j) of V (x) W sits at position i*dim(W) + j.
"""

from .linalg import Mat, kernel, restrict
from .modules import Rep, Sl2Error, validate, weight_decomposition


def kron(a, b):
    ctx = a.ctx
    mul = ctx.mul
    n1, m1 = a.nrows, a.ncols
    n2, m2 = b.nrows, b.ncols
    rows = []
    for i1 in range(n1):
        for i2 in range(n2):
            row = [0] * (m1 * m2)
            ra, rb = a.rows[i1], b.rows[i2]
            for j1 in range(m1):
                x = ra[j1]
                if x:
                    base = j1 * m2
                    for j2 in range(m2):
                        y = rb[j2]
                        if y:
                            row[base + j2] = mul(x, y)
            rows.append(row)
    return Mat(ctx, rows)


def tensor(a, b):
    """V (x) W with each generator acting as G(x)I + I(x)G."""
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise Sl2Error("tensor factors over different contexts")
    ctx = a.ctx
    ia = Mat.identity(ctx, a.n)
    ib = Mat.identity(ctx, b.n)
    xm = kron(a.xm, ib).add(kron(ia, b.xm))
    h = kron(a.h, ib).add(kron(ia, b.h))
    xp = kron(a.xp, ib).add(kron(ia, b.xp))
    out = Rep(ctx, xm, h, xp)
    bad = validate(out)
    if bad is not None:
        raise Sl2Error(f"tensor product violates sl(2) relations at {bad}")
    return out


def weight_spaces(rep):
    """H-eigenspace decomposition covering the whole module."""
    return weight_decomposition(rep)


def hw_lw_vectors(rep):
    """(highest, lowest) weight subspaces per weight:
    lists of (weight, kernel-of-Xp resp. Xm intersected with that space).
    """
    weights = weight_decomposition(rep)
    kp = kernel(rep.xp)
    km = kernel(rep.xm)
    highest = [(w, kp.intersect(s)) for w, s in weights]
    lowest = [(w, km.intersect(s)) for w, s in weights]
    return highest, lowest


def cube_scalars(rep):
    """(s_plus, s_minus): the scalar of Xp^3 resp. Xm^3, or None if the
    cube is not scalar."""
    xp3 = rep.xp.mul(rep.xp).mul(rep.xp)
    xm3 = rep.xm.mul(rep.xm).mul(rep.xm)
    return xp3.is_scalar(), xm3.is_scalar()


def xpxm_on_weight(rep, rho):
    """Matrix of Xp*Xm restricted to the weight space V_rho."""
    weights = dict(weight_decomposition(rep))
    if rho not in weights:
        raise Sl2Error(f"{rho} is not a weight of this module")
    prod = rep.xp.mul(rep.xm)
    return restrict(prod, weights[rho])


# closed forms of Lemma-style cube scalars for the verification sweeps ------

def expected_cube_scalars(ctx, left, right):
    """Predicted (Xp^3, Xm^3) scalars for a pair of family params.

    left/right are canonical ("Tt", b) or ("T", (b, c, d)) tags as used by
    the oracle.  The T(x)T plus-scalar uses b*a1*a2 + beta*alpha1*alpha2;
    the printed form with a repeated subscript fails against brute force.
    """
    kind_l, pl = left
    kind_r, pr = right

    def t_data(p):
        b, c, d = p
        bc = ctx.mul(b, c)
        a1 = ctx.sub(ctx.add(bc, d), 1)
        a2 = ctx.sub(ctx.sub(bc, d), 1)
        return b, c, d, a1, a2

    if kind_l == "Tt" and kind_r == "Tt":
        b, beta = pl, pr
        plus = ctx.div(ctx.add(b, beta), ctx.mul(b, beta))
        return plus, 0
    if kind_l == "Tt" and kind_r == "T":
        b = pl
        beta, gamma, delta, al1, al2 = t_data(pr)
        plus = ctx.add(ctx.inv(b), ctx.mul(beta, ctx.mul(al1, al2)))
        return plus, gamma
    if kind_l == "T" and kind_r == "T":
        b, c, d, a1, a2 = t_data(pl)
        beta, gamma, delta, al1, al2 = t_data(pr)
        plus = ctx.add(ctx.mul(b, ctx.mul(a1, a2)),
                       ctx.mul(beta, ctx.mul(al1, al2)))
        return plus, ctx.add(c, gamma)
    raise Sl2Error(f"no closed form for pair {kind_l} (x) {kind_r}")
