"""The structural decomposition engine.

Given a tensor-product module it produces a ModuleDescriptor tree with no
reference to the closed-form tables: direct summands are split off by
solving for equivariant projections onto spin-generated candidate
submodules, indecomposable pieces are layered by iterated socle/quotient,
small-leaf layers get their glue arrows extracted, and every irreducible
constituent is identified through the canonical-form machinery.

The engine works over the field it is handed.  If an Xp*Xm characteristic
polynomial fails to split on some weight space it raises NeedsExtension
naming the degree; the caller lifts both factors and retries.
"""

from .canon import CanonError, recover_params
from .descriptor import DirectSum, Glue, Leaf, Semidirect
from .linalg import (
    Mat, Subspace, charpoly, eigenspaces, kernel, kernel_of_rows,
    lift_from_quotient, quotient_action, quotient_basis, restrict, rref,
    solve,
)
from .modules import Rep, dual, spin, weight_decomposition
from .tensorops import tensor


class EngineError(RuntimeError):
    pass


class NeedsExtension(Exception):
    """Eigenvalues live outside the working field; lift and retry."""

    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"characteristic roots need a degree-{degree} extension")


# ---------------------------------------------------------------------------
# field sufficiency
# ---------------------------------------------------------------------------

def required_degree(rep):
    """lcm of the splitting degrees of charpoly(Xp*Xm | V_rho) over all
    weight spaces.  1 means the engine can decompose over this field."""
    from math import lcm
    prod = rep.xp.mul(rep.xm)
    need = 1
    for _, space in weight_decomposition(rep):
        if space.dim == 0:
            continue
        act = restrict(prod, space)
        cp = charpoly(act)
        need = lcm(need, rep.ctx.splitting_degree(list(cp)))
    return need


def check_field(rep):
    deg = required_degree(rep)
    if deg != 1:
        raise NeedsExtension(deg)


# ---------------------------------------------------------------------------
# candidate submodules
# ---------------------------------------------------------------------------

def _space_key(s):
    return (s.dim, s.basis)


def _projective_points_of(ctx, basis, ambient):
    """Projective representatives inside span(basis), ambient coordinates."""
    from .linalg import _projective_points
    if not basis:
        return
    m = len(basis)
    if m >= 3 and ctx.q > 27:
        raise EngineError(
            "eigenspace too large to enumerate over this field (unexpected)")
    for coeffs in _projective_points(ctx, m):
        v = [0] * ambient
        for c, b in zip(coeffs, basis):
            if c:
                for j in range(ambient):
                    if b[j]:
                        v[j] = ctx.add(v[j], ctx.mul(c, b[j]))
        yield tuple(v)


def candidate_vectors(rep):
    """Deterministic generator candidates: projective points of every
    Xp*Xm eigenspace inside every weight space, plus highest/lowest weight
    vectors."""
    ctx = rep.ctx
    seen = set()
    out = []
    weights = weight_decomposition(rep)
    prod = rep.xp.mul(rep.xm)
    for _, space in weights:
        act = restrict(prod, space)
        for _, eig in eigenspaces(act):
            ambient_basis = [_combine_in(ctx, b, space) for b in eig.basis]
            for v in _projective_points_of(ctx, ambient_basis, rep.n):
                if v not in seen:
                    seen.add(v)
                    out.append(v)
    for mat in (rep.xp, rep.xm):
        ker = kernel(mat)
        for _, space in weights:
            inter = ker.intersect(space)
            for v in _projective_points_of(ctx, list(inter.basis), rep.n):
                if v not in seen:
                    seen.add(v)
                    out.append(v)
    return out


def _combine_in(ctx, inner, space):
    n = space.ambient
    v = [0] * n
    for c, b in zip(inner, space.basis):
        if c:
            for j in range(n):
                if b[j]:
                    v[j] = ctx.add(v[j], ctx.mul(c, b[j]))
    return tuple(v)


def candidate_spins(rep):
    """Spun candidates, deduplicated, sorted by (dim, basis)."""
    spaces = {}
    for v in candidate_vectors(rep):
        s = spin(rep, v)
        spaces.setdefault(_space_key(s), s)
    return [spaces[k] for k in sorted(spaces)]


def restrict_rep(rep, u):
    return Rep(rep.ctx, restrict(rep.xm, u), restrict(rep.h, u),
               restrict(rep.xp, u))


def quotient_rep(rep, u):
    return Rep(rep.ctx, quotient_action(rep.xm, u), quotient_action(rep.h, u),
               quotient_action(rep.xp, u))


def _is_irreducible_sub(rep, u):
    if u.dim == 0 or u.dim > 3:
        return False
    from .modules import is_irreducible
    return is_irreducible(restrict_rep(rep, u))


def socle_parts(rep, spins=None):
    """A deterministic list of independent irreducible submodules whose sum
    is the socle (candidate spins cover every irreducible submodule)."""
    if spins is None:
        spins = candidate_spins(rep)
    irr = [s for s in spins if _is_irreducible_sub(rep, s)]
    total = Subspace(rep.ctx, rep.n, [b for s in irr for b in s.basis])
    chosen = []
    span = Subspace(rep.ctx, rep.n, [])
    for s in sorted(irr, key=_space_key):
        if span.dim == total.dim:
            break
        merged = span.sum(s)
        if merged.dim == span.dim + s.dim:
            chosen.append(s)
            span = merged
    if span.dim != total.dim:
        # greedy direct choice failed (isotypic overlap); fall back to any
        # independent completion
        for s in sorted(irr, key=_space_key):
            if span.dim == total.dim:
                break
            if not span.contains_space(s):
                merged = span.sum(s)
                if merged.dim == span.dim + s.dim:
                    chosen.append(s)
                    span = merged
    if span.dim != total.dim:
        raise EngineError("socle decomposition could not be completed")
    return chosen, span


def socle(rep):
    """The sum of all irreducible submodules, as a Subspace."""
    _, span = socle_parts(rep)
    return span


def radical(rep):
    """Smallest submodule with semisimple quotient: the annihilator of the
    socle of the dual module."""
    d = dual(rep)
    sock = socle(d)
    if sock.dim == 0:
        raise EngineError("dual socle empty")
    return Subspace(rep.ctx, rep.n,
                    kernel_of_rows(rep.ctx, [list(b) for b in sock.basis], rep.n))


# ---------------------------------------------------------------------------
# splitting off direct summands
# ---------------------------------------------------------------------------

def try_split(rep, w):
    """Invariant complement of the submodule w, or None.

    Solves for an equivariant projection p: V -> w-coordinates with
    p|w = id; its kernel is then an invariant complement.
    """
    ctx = rep.ctx
    n = rep.n
    m = w.dim
    if m == 0 or m == n:
        return None
    gens = rep.generators()
    gens_w = [restrict(g, w) for g in gens]
    rows = []
    rhs = []
    # equivariance: P G = G_w P   (P is m x n, unknowns row-major)
    for g, gw in zip(gens, gens_w):
        for i in range(m):
            for j in range(n):
                row = [0] * (m * n)
                for k in range(n):
                    if g.rows[k][j]:
                        row[i * n + k] = ctx.add(row[i * n + k], g.rows[k][j])
                for k in range(m):
                    if gw.rows[i][k]:
                        row[k * n + j] = ctx.sub(row[k * n + j], gw.rows[i][k])
                rows.append(row)
                rhs.append(0)
    # normalization: P b_t = e_t for each basis vector of w
    for t, b in enumerate(w.basis):
        for i in range(m):
            row = [0] * (m * n)
            for k in range(n):
                if b[k]:
                    row[i * n + k] = b[k]
            rows.append(row)
            rhs.append(1 if i == t else 0)
    aug = [r + [v] for r, v in zip(rows, rhs)]
    red, pivots = rref(ctx, aug)
    x = [0] * (m * n)
    for row, p in zip(red, pivots):
        if p == m * n:
            return None  # inconsistent: no equivariant projection
        x[p] = row[m * n]
    pmat = Mat(ctx, [x[i * n:(i + 1) * n] for i in range(m)])
    comp = kernel(pmat)
    if comp.dim != n - m:
        raise EngineError("projection kernel has wrong dimension")
    # certify invariance of the complement
    for g in gens:
        for b in comp.basis:
            if not comp.contains(g.matvec(b)):
                raise EngineError("complement not invariant (projection bug)")
    return comp


def find_summand(rep, spins):
    """First candidate submodule admitting an invariant complement."""
    for w in spins:
        if 0 < w.dim < rep.n:
            comp = try_split(rep, w)
            if comp is not None:
                return w, comp
    return None


def _quotient_lift_candidates(rep, sock):
    """Spins of canonical lifts of Xp*Xm eigenvectors of V/socle: catches
    generators whose eigen property only holds modulo lower layers."""
    if sock.dim in (0, rep.n):
        return []
    q = quotient_rep(rep, sock)
    out = {}
    for v in candidate_vectors(q):
        lifted = lift_from_quotient(sock, v)
        s = spin(rep, lifted)
        out.setdefault(_space_key(s), s)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# layer graphs for indecomposable pieces
# ---------------------------------------------------------------------------

class _Layer:
    __slots__ = ("parts", "classes")

    def __init__(self, parts, classes):
        self.parts = parts        # constituent subspaces, in quotient coords
        self.classes = classes    # CanonicalClass per constituent


def _adapted_socle_parts(q, image_hints):
    """Socle constituents of q, preferring hinted subspaces (images of the
    layer above) so the glue graph comes out sparse and canonical."""
    spins_all = candidate_spins(q)
    irr = [s for s in spins_all if _is_irreducible_sub(q, s)]
    total = Subspace(q.ctx, q.n, [b for s in irr for b in s.basis])
    hinted = []
    for v in image_hints:
        if not any(v):
            continue
        s = spin(q, v)
        if _is_irreducible_sub(q, s):
            hinted.append(s)
    chosen = []
    span = Subspace(q.ctx, q.n, [])
    for pool in (hinted, sorted(irr, key=_space_key)):
        for s in pool:
            if span.dim == total.dim:
                break
            merged = span.sum(s)
            if merged.dim == span.dim + s.dim:
                chosen.append(s)
                span = merged
    if span.dim != total.dim:
        raise EngineError("adapted socle decomposition incomplete")
    return chosen, span


def layer_analysis(rep):
    """Socle-series layers with constituents and adjacent-layer glue edges.

    Returns (layers, edges): layers[i].parts are the constituents of the
    i-th socle layer (i = 0 is the socle); edges are
    (upper_layer_index, upper_part_index, lower_part_index, action).
    """
    # first pass bottom-up: quotients and raw socle sums
    quotients = [rep]
    sums = []
    while True:
        q = quotients[-1]
        if q.n == 0:
            quotients.pop()
            break
        _, span = socle_parts(q)
        if span.dim == 0:
            raise EngineError("socle vanished before exhausting the module")
        sums.append(span)
        if span.dim == q.n:
            break
        quotients.append(quotient_rep(q, span))

    # second pass top-down: adapted constituent decompositions
    nlayers = len(quotients)
    layers = [None] * nlayers
    upper_parts = None  # constituents of layer i+1, in quotients[i+1] coords
    for i in range(nlayers - 1, -1, -1):
        q = quotients[i]
        sock = sums[i]
        hints = []
        if upper_parts is not None:
            # socle components of the upper constituents' Xp/Xm images
            for part in upper_parts:
                for vec in part.basis:
                    lifted = lift_from_quotient(sock, vec)
                    for mat in (q.xp, q.xm):
                        img = _project_to(sock, mat.matvec(lifted))
                        if any(img):
                            hints.append(img)
        parts, _ = _adapted_socle_parts(q, hints)
        classes = [recover_params(restrict_rep(q, p)) for p in parts]
        order = sorted(range(len(parts)),
                       key=lambda t: (classes[t].sort_key(), parts[t].basis))
        parts = [parts[t] for t in order]
        classes = [classes[t] for t in order]
        layers[i] = _Layer(parts, classes)
        upper_parts = parts

    edges = []
    for i in range(1, nlayers):
        upper = layers[i]
        lower = layers[i - 1]
        sock = sums[i - 1]
        q = quotients[i - 1]
        for a_idx, part in enumerate(upper.parts):
            for vec in part.basis:
                lifted = lift_from_quotient(sock, vec)
                for mat, action in ((q.xp, "X+"), (q.xm, "X-")):
                    img = mat.matvec(lifted)
                    if not sock.contains(img):
                        # component inside this layer's own lift: subtract
                        # the within-layer part by reducing modulo the
                        # upper layer's image is not needed; the socle part
                        # is exactly img reduced by the non-socle component
                        img = _socle_component(sock, upper, part, img, q)
                    if not any(img):
                        continue
                    comps = _decompose_over_parts(q.ctx, lower.parts, img)
                    for b_idx, coeffs in enumerate(comps):
                        if any(coeffs):
                            edges.append((i, a_idx, b_idx, action))
    edges = sorted(set(edges))
    return layers, edges


def _socle_component(sock, upper, part, img, q):
    """Split img = socle part + lift of an upper-layer vector; returns the
    socle part.  The upper component must lie in the upper part itself."""
    proj = _project_to(sock, img)
    residue = tuple(q.ctx.sub(a, b) for a, b in zip(img, proj))
    # residue must be the lift of a vector of the same upper part
    upper_vec = tuple(residue[j] for j in quotient_basis(sock))
    if not part.contains(upper_vec):
        raise EngineError("layer image escaped its own constituent")
    if any(q.ctx.sub(a, b) for a, b in zip(
            residue, lift_from_quotient(sock, upper_vec))):
        raise EngineError("lift residue mismatch in layer analysis")
    return proj


def _project_to(sock, v):
    """Component of v inside sock along the non-pivot coordinates."""
    red = sock.reduce(v)
    return tuple(sock.ctx.sub(a, b) for a, b in zip(v, red))


def _decompose_over_parts(ctx, parts, v):
    """Coordinates of v over the direct sum of the given subspaces."""
    cols = []
    for p in parts:
        cols.extend(p.basis)
    if not cols:
        raise EngineError("empty constituent list")
    m = Mat(ctx, list(zip(*cols)))
    sol = solve(m, v)
    if sol is None:
        raise EngineError("vector not inside the claimed layer sum")
    out = []
    at = 0
    for p in parts:
        out.append(tuple(sol[at:at + p.dim]))
        at += p.dim
    return out


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

SMALL = ("One", "Two")


def _glue_eligible(layers, edges):
    for layer in layers:
        for cls in layer.classes:
            if cls.kind not in SMALL:
                return False
    directions = {}
    for i, a, b, action in edges:
        key = (i, a, b)
        if key in directions and directions[key] != action:
            return False
        directions[key] = action
    return True


def _glue_descriptor(layers, edges):
    nodes = []
    index = {}
    for i, layer in enumerate(layers):
        for j, cls in enumerate(layer.classes):
            index[(i, j)] = len(nodes)
            nodes.append(cls)
    gedges = [(index[(i, a)], index[(i - 1, b)], action)
              for i, a, b, action in edges]
    return Glue(nodes, gedges)


def indecomposable_descriptor(rep):
    layers, edges = layer_analysis(rep)
    if len(layers) == 1:
        if len(layers[0].parts) != 1:
            raise EngineError("semisimple module reached the layer path")
        return Leaf(layers[0].classes[0])
    if _glue_eligible(layers, edges):
        return _glue_descriptor(layers, edges)
    # peel the top: Semidirect(top = V/rad, rad re-decomposed standalone)
    rad = radical(rep)
    if rad.dim in (0, rep.n):
        raise EngineError("radical degenerate for a non-semisimple module")
    top = quotient_rep(rep, rad)
    return Semidirect(decompose(top, _checked=True),
                      decompose(restrict_rep(rep, rad), _checked=True))


def decompose(rep, _checked=False):
    """ModuleDescriptor of rep over its own field (normalized).

    Raises NeedsExtension when eigenvalues are missing; the caller lifts
    both tensor factors and calls again.
    """
    if not _checked:
        check_field(rep)
    if rep.n == 0:
        raise EngineError("cannot decompose the zero module")
    spins = candidate_spins(rep)
    if rep.n <= 3:
        whole = all(s.dim == rep.n for s in spins) and spins
        if whole:
            try:
                return Leaf(recover_params(rep)).normalize()
            except CanonError:
                pass
    pair = find_summand(rep, spins)
    if pair is None:
        _, sock = socle_parts(rep, spins)
        extra = _quotient_lift_candidates(rep, sock)
        pair = find_summand(rep, extra)
    if pair is None:
        return indecomposable_descriptor(rep).normalize()
    w, comp = pair
    left = decompose(restrict_rep(rep, w), _checked=True)
    right = decompose(restrict_rep(rep, comp), _checked=True)
    return DirectSum([left, right]).normalize()


# ---------------------------------------------------------------------------
# public entry point used by the harness
# ---------------------------------------------------------------------------

def decompose_with_lift(left_params, right_params, ctx, max_degree=None):
    """Build the tensor product over ctx, lifting to the splitting field
    when the engine asks for one.  Returns (descriptor, final ctx)."""
    import os
    from .gf import make_field
    from .modules import build

    if max_degree is None:
        max_degree = int(os.environ.get("SL2_MAX_EXT_DEGREE", "6"))
    lp, rp = left_params, right_params
    while True:
        v = tensor(build(lp, ctx), build(rp, ctx))
        try:
            return decompose(v), ctx
        except NeedsExtension as e:
            new_k = ctx.k * e.degree
            if new_k > max_degree:
                raise EngineError(
                    f"needed extension degree {new_k} exceeds cap {max_degree}")
            ctx = make_field(new_k)
