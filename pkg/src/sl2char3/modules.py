"""The sl(2)-modules of characteristic 3: standard 1, 2, 3 and the
three-parameter families T(b,c,d), Ttilde(b,c,d), plus duals.

Matrix conventions (columns are images of basis vectors):

  T(b,c,d):       Xm = [[0,0,c],[1,0,0],[0,1,0]]   H = diag(d-1, d, d+1)
                  Xp = [[0,a1,0],[0,0,a2],[b,0,0]]
  Ttilde(b,c,d):  Xm = [[0,0,b],[a1,0,0],[0,a2,0]]
                  Xp = [[0,1,0],[0,0,1],[c,0,0]]

with a1 = bc+d-1 and a2 = bc-d-1.  The parameter point (b,c,d) = (0,0,+-1)
is excluded for both families: those matrices do not give an irreducible
module.  A raw, unchecked constructor is kept for tests that need the
reducible edge cases.
"""

from .linalg import Mat, commutator, Subspace, kernel, restrict


class Sl2Error(ValueError):
    pass


class Rep:
    """An sl(2)-module: dimension n and exact matrices for Xm, H, Xp."""

    __slots__ = ("ctx", "n", "xm", "h", "xp", "params")

    def __init__(self, ctx, xm, h, xp, params=None):
        self.ctx = ctx
        self.xm = xm
        self.h = h
        self.xp = xp
        self.n = h.nrows
        self.params = params

    def generators(self):
        return (self.xm, self.h, self.xp)

    def lift(self, target):
        return Rep(target, self.xm.lift(target), self.h.lift(target),
                   self.xp.lift(target), self.params)

    def __repr__(self):
        return f"Rep(dim {self.n} over {self.ctx}, params={self.params})"


# --- symbolic identities -----------------------------------------------------

class ModuleParams:
    """Symbolic identity of an input module.

    kind is one of "One", "Two", "T", "Tt", "Dual"; T/Tt carry (b, c, d)
    as elements of a FieldCtx, Dual wraps another ModuleParams.
    """

    __slots__ = ("kind", "bcd", "inner", "ctx")

    def __init__(self, kind, bcd=None, inner=None, ctx=None):
        self.kind = kind
        self.bcd = bcd
        self.inner = inner
        self.ctx = ctx

    @classmethod
    def one(cls):
        return cls("One")

    @classmethod
    def two(cls):
        return cls("Two")

    @classmethod
    def T(cls, ctx, b, c, d):
        check_admissible(ctx, b, c, d, family="T")
        return cls("T", (b, c, d), ctx=ctx)

    @classmethod
    def Tt(cls, ctx, b, c, d):
        check_admissible(ctx, b, c, d, family="Tt")
        return cls("Tt", (b, c, d), ctx=ctx)

    @classmethod
    def dual(cls, inner):
        return cls("Dual", inner=inner, ctx=inner.ctx)

    def lift(self, target):
        if self.kind in ("One", "Two"):
            return self
        if self.kind == "Dual":
            return ModuleParams.dual(self.inner.lift(target))
        table = self.ctx.lift_map(target)
        return ModuleParams(self.kind, tuple(table[x] for x in self.bcd), ctx=target)

    def text(self):
        if self.kind in ("One", "Two"):
            return self.kind
        if self.kind == "Dual":
            return f"Dual({self.inner.text()})"
        b, c, d = self.bcd
        es = self.ctx.elem_str
        return f"{self.kind}({es(b)},{es(c)},{es(d)})"

    def __repr__(self):
        return f"ModuleParams({self.text()})"

    def __eq__(self, other):
        return (isinstance(other, ModuleParams) and self.kind == other.kind
                and self.bcd == other.bcd
                and (self.inner == other.inner))

    def __hash__(self):
        return hash((self.kind, self.bcd, self.inner))


def check_admissible(ctx, b, c, d, family):
    if b == 0 and c == 0 and d in (1, 2):
        name = "T" if family == "T" else "Tt"
        raise Sl2Error(
            f"{name}(0,0,{'1' if d == 1 else '-1'}) is excluded: not irreducible")


# --- constructors ------------------------------------------------------------

def derived_entries(ctx, b, c, d):
    """a1 = bc+d-1, a2 = bc-d-1."""
    bc = ctx.mul(b, c)
    a1 = ctx.sub(ctx.add(bc, d), 1)
    a2 = ctx.sub(ctx.sub(bc, d), 1)
    return a1, a2


def make_T_raw(ctx, b, c, d):
    """The matrices of T(b,c,d) with no exclusion check (testing only)."""
    a1, a2 = derived_entries(ctx, b, c, d)
    xm = Mat(ctx, [[0, 0, c], [1, 0, 0], [0, 1, 0]])
    h = Mat.diag(ctx, [ctx.sub(d, 1), d, ctx.add(d, 1)])
    xp = Mat(ctx, [[0, a1, 0], [0, 0, a2], [b, 0, 0]])
    return Rep(ctx, xm, h, xp, ModuleParams("T", (b, c, d), ctx=ctx))


def make_T(ctx, b, c, d):
    check_admissible(ctx, b, c, d, family="T")
    return make_T_raw(ctx, b, c, d)


def make_Ttilde_raw(ctx, b, c, d):
    a1, a2 = derived_entries(ctx, b, c, d)
    xm = Mat(ctx, [[0, 0, b], [a1, 0, 0], [0, a2, 0]])
    h = Mat.diag(ctx, [ctx.sub(d, 1), d, ctx.add(d, 1)])
    xp = Mat(ctx, [[0, 1, 0], [0, 0, 1], [c, 0, 0]])
    return Rep(ctx, xm, h, xp, ModuleParams("Tt", (b, c, d), ctx=ctx))


def make_Ttilde(ctx, b, c, d):
    # Eq. (10) names only T, but Ttilde(0,0,+-1) is equally reducible.
    check_admissible(ctx, b, c, d, family="Tt")
    return make_Ttilde_raw(ctx, b, c, d)


def make_standard(ctx, n):
    """The modules 1, 2, 3; 3 is constructed as T(0,0,0)."""
    if n == 1:
        z = Mat.zero(ctx, 1)
        return Rep(ctx, z, z, z, ModuleParams.one())
    if n == 2:
        xm = Mat(ctx, [[0, 0], [1, 0]])
        h = Mat.diag(ctx, [1, 2])
        xp = Mat(ctx, [[0, 1], [0, 0]])
        return Rep(ctx, xm, h, xp, ModuleParams.two())
    if n == 3:
        return make_T(ctx, 0, 0, 0)
    raise Sl2Error(f"make_standard: n must be 1, 2 or 3, got {n}")


def dual(rep):
    """Dual module: each generator acts by its negative transpose."""
    r = Rep(rep.ctx,
            rep.xm.transpose().neg(),
            rep.h.transpose().neg(),
            rep.xp.transpose().neg(),
            ModuleParams.dual(rep.params) if rep.params is not None else None)
    bad = validate(r)
    if bad is not None:
        raise Sl2Error(f"dual failed validation: {bad}")
    return r


def build(params, ctx=None):
    """Realize ModuleParams as a Rep over params.ctx (or the given ctx)."""
    if params.kind == "One":
        return make_standard(ctx, 1)
    if params.kind == "Two":
        return make_standard(ctx, 2)
    if params.kind == "Dual":
        return dual(build(params.inner, ctx))
    use = params if ctx is None or ctx == params.ctx else params.lift(ctx)
    b, c, d = use.bcd
    if params.kind == "T":
        return make_T(use.ctx, b, c, d)
    return make_Ttilde(use.ctx, b, c, d)


# --- validation --------------------------------------------------------------

def validate(rep):
    """Check [Xp,Xm] = H, [H,Xp] = 2Xp, [H,Xm] = -2Xm exactly.

    Returns None when all relations hold, else (relation, i, j) for the
    first violated entry.
    """
    ctx = rep.ctx
    two = 2
    checks = (
        ("[Xp,Xm]-H", commutator(rep.xp, rep.xm).sub(rep.h)),
        ("[H,Xp]-2Xp", commutator(rep.h, rep.xp).sub(rep.xp.scale(two))),
        ("[H,Xm]+2Xm", commutator(rep.h, rep.xm).add(rep.xm.scale(two))),
    )
    for name, m in checks:
        for i in range(m.nrows):
            for j in range(m.ncols):
                if m.rows[i][j] != 0:
                    return (name, i, j)
    return None


# --- spinning and irreducibility ---------------------------------------------

def spin(rep, v):
    """Smallest subspace containing v closed under Xm, H, Xp."""
    if not any(v):
        raise Sl2Error("spin of the zero vector")
    ctx = rep.ctx
    space = Subspace(ctx, rep.n, [v])
    gens = rep.generators()
    frontier = [v]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                img = g.matvec(w)
                if any(img) and not space.contains(img):
                    space = Subspace(ctx, rep.n, list(space.basis) + [img])
                    new.append(img)
        frontier = new
    return space


def _projective_vectors(ctx, dim):
    """All projective representatives in k^dim, first nonzero coord 1."""
    from .linalg import _projective_points
    return _projective_points(ctx, dim)


def is_irreducible(rep):
    """No proper nonzero invariant subspace.

    When H has all-distinct eigenvalues (always true for the 2- and
    3-dimensional modules here), every invariant subspace is a sum of
    weight lines, so checking all proper line subsets is exhaustive and
    exact over any field.  Small fields additionally get full projective
    spinning at dim <= 3; larger modules spin the eigenvector candidates.
    """
    if rep.n > 9:
        raise Sl2Error("is_irreducible limited to dim <= 9")
    if rep.n == 1:
        return True
    ctx = rep.ctx
    weights = weight_decomposition(rep)
    if rep.n <= 3 and all(s.dim == 1 for _, s in weights):
        lines = [s.basis[0] for _, s in weights]
        verdict = _irreducible_by_weight_lines(rep, lines)
        if ctx.q <= 27:
            # cross-check with the brute-force definition on small fields
            brute = all(spin(rep, v).dim == rep.n
                        for v in _projective_vectors(ctx, rep.n))
            if brute != verdict:
                raise Sl2Error("weight-line irreducibility disagrees with spinning")
        return verdict
    if rep.n <= 3 and ctx.q <= 27:
        return all(spin(rep, v).dim == rep.n
                   for v in _projective_vectors(ctx, rep.n))
    for v in candidate_generators(rep):
        if spin(rep, v).dim != rep.n:
            return False
    return True


def _irreducible_by_weight_lines(rep, lines):
    ctx = rep.ctx
    n = rep.n
    idx = list(range(len(lines)))
    for size in range(1, n):
        for subset in _subsets(idx, size):
            space = Subspace(ctx, n, [lines[i] for i in subset])
            closed = True
            for g in (rep.xp, rep.xm):
                for i in subset:
                    if not space.contains(g.matvec(lines[i])):
                        closed = False
                        break
                if not closed:
                    break
            if closed:
                return False
    return True


def _subsets(items, size):
    from itertools import combinations
    return combinations(items, size)


def candidate_generators(rep):
    """Deterministic generator candidates: for each weight space, the
    projective points of every eigenspace of Xp*Xm restricted there, plus
    highest/lowest weight vectors.
    """
    from .linalg import eigenspaces
    ctx = rep.ctx
    out = []
    seen = set()
    weights = weight_decomposition(rep)
    prod = rep.xp.mul(rep.xm)
    for _, space in weights:
        if space.dim == 0:
            continue
        act = restrict(prod, space)
        for _, eig in eigenspaces(act):
            for coeffs in _projective_vectors(ctx, eig.dim):
                v = _combine(ctx, coeffs, eig.basis, space)
                if v not in seen:
                    seen.add(v)
                    out.append(v)
    for mat in (rep.xp, rep.xm):
        ker = kernel(mat)
        for _, space in weights:
            inter = ker.intersect(space)
            for coeffs in _projective_vectors(ctx, inter.dim):
                v = _vec_combo(ctx, coeffs, inter.basis)
                if v not in seen:
                    seen.add(v)
                    out.append(v)
    return out


def _vec_combo(ctx, coeffs, basis):
    n = len(basis[0])
    v = [0] * n
    for c, b in zip(coeffs, basis):
        if c:
            for j in range(n):
                if b[j]:
                    v[j] = ctx.add(v[j], ctx.mul(c, b[j]))
    return tuple(v)


def _combine(ctx, coeffs, inner_basis, space):
    """Combine inner coordinates (w.r.t. space basis) into an ambient vector."""
    inner = _vec_combo(ctx, coeffs, inner_basis)
    n = space.ambient
    v = [0] * n
    for c, b in zip(inner, space.basis):
        if c:
            for j in range(n):
                if b[j]:
                    v[j] = ctx.add(v[j], ctx.mul(c, b[j]))
    return tuple(v)


def weight_decomposition(rep):
    """Eigenspace decomposition of H, sorted by eigenvalue encoding.

    Raises when H is not diagonalizable over the context, which does not
    happen for any construction in this package.  H is diagonal in every
    construction here (and stays diagonal under restriction to echelon
    bases of weight-decomposable subspaces), so that path is direct.
    """
    from .linalg import eigenspaces
    h = rep.h
    diag = all(h.rows[i][j] == 0
               for i in range(rep.n) for j in range(rep.n) if i != j)
    if diag:
        by_weight = {}
        for i in range(rep.n):
            by_weight.setdefault(h.rows[i][i], []).append(i)
        out = []
        for w in sorted(by_weight, key=rep.ctx.lex_key):
            vecs = [tuple(1 if j == i else 0 for j in range(rep.n))
                    for i in by_weight[w]]
            out.append((w, Subspace(rep.ctx, rep.n, vecs)))
        return out
    spaces = eigenspaces(rep.h)
    if sum(s.dim for _, s in spaces) != rep.n:
        raise Sl2Error("H not diagonalizable over the field")
    return spaces
