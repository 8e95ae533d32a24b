"""Dense exact matrix algebra over a FieldCtx.

Everything here stays O(n^4)-naive on purpose: dimensions are capped at 9
(the tensor of two 3-dimensional modules), so correctness and determinism
beat cleverness.  Vectors are tuples of ints, subspaces are kept in reduced
row echelon form, which makes subspace equality plain tuple equality.
"""



class LinAlgError(ValueError):
    pass


class Mat:
    """Row-major matrix over one FieldCtx."""

    __slots__ = ("ctx", "rows", "nrows", "ncols")

    def __init__(self, ctx, rows):
        self.ctx = ctx
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise LinAlgError("ragged rows")

    @classmethod
    def zero(cls, ctx, n, m=None):
        m = n if m is None else m
        return cls(ctx, [[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, ctx, entries):
        n = len(entries)
        return cls(ctx, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def _check(self, other):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise LinAlgError("context mismatch")

    def add(self, other):
        self._check(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise LinAlgError("shape mismatch in add")
        add = self.ctx.add
        return Mat(self.ctx, [
            [add(a, b) for a, b in zip(ra, rb)]
            for ra, rb in zip(self.rows, other.rows)])

    def sub(self, other):
        return self.add(other.scale(self.ctx.neg(1)))

    def scale(self, s):
        mul = self.ctx.mul
        return Mat(self.ctx, [[mul(s, a) for a in r] for r in self.rows])

    def mul(self, other):
        self._check(other)
        if self.ncols != other.nrows:
            raise LinAlgError("shape mismatch in mul")
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        bt = list(zip(*other.rows))
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = 0
                for a, b in zip(ra, cb):
                    if a and b:
                        acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(ctx, out)

    def matvec(self, v):
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        out = []
        for r in self.rows:
            acc = 0
            for a, x in zip(r, v):
                if a and x:
                    acc = add(acc, mul(a, x))
            out.append(acc)
        return tuple(out)

    def transpose(self):
        return Mat(self.ctx, list(zip(*self.rows)))

    def neg(self):
        neg = self.ctx.neg
        return Mat(self.ctx, [[neg(a) for a in r] for r in self.rows])

    def lift(self, target):
        table = self.ctx.lift_map(target)
        return Mat(target, [[table[a] for a in r] for r in self.rows])

    def equals(self, other):
        return self.rows == other.rows

    def is_zero(self):
        return all(a == 0 for r in self.rows for a in r)

    def is_scalar(self):
        """The scalar s with self == s*I, or None."""
        if self.nrows != self.ncols:
            return None
        s = self.rows[0][0]
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.rows[i][j] != (s if i == j else 0):
                    return None
        return s

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols} over {self.ctx})"


def commutator(a, b):
    return a.mul(b).sub(b.mul(a))


# ---------------------------------------------------------------------------
# echelon forms and subspaces
# ---------------------------------------------------------------------------

def rref(ctx, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = ctx.inv(rows[r][c])
        rows[r] = [ctx.mul(inv, a) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ctx.sub(a, ctx.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


class Subspace:
    """Subspace of k^n held as a reduced-echelon basis (unique per subspace)."""

    __slots__ = ("ctx", "ambient", "basis", "pivots")

    def __init__(self, ctx, ambient, vectors):
        self.ctx = ctx
        self.ambient = ambient
        basis, pivots = rref(ctx, [v for v in vectors if any(v)])
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        """Canonical representative of v modulo this subspace."""
        ctx = self.ctx
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for j in range(self.ambient):
                    if row[j]:
                        v[j] = ctx.sub(v[j], ctx.mul(c, row[j]))
        return tuple(v)

    def contains(self, v):
        return not any(self.reduce(v))

    def contains_space(self, other):
        return all(self.contains(b) for b in other.basis)

    def sum(self, other):
        return Subspace(self.ctx, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other):
        """Intersection via the kernel of the stacked coefficient system."""
        ctx = self.ctx
        a, b = list(self.basis), list(other.basis)
        if not a or not b:
            return Subspace(ctx, self.ambient, [])
        # rows of the combined system: columns are (coeffs on a | coeffs on b)
        cols = len(a) + len(b)
        system = []
        for i in range(self.ambient):
            system.append([a[r][i] for r in range(len(a))] +
                          [ctx.neg(b[r][i]) for r in range(len(b))])
        ker = kernel_of_rows(ctx, system, cols)
        vecs = []
        for sol in ker:
            v = [0] * self.ambient
            for r in range(len(a)):
                if sol[r]:
                    for j in range(self.ambient):
                        v[j] = ctx.add(v[j], ctx.mul(sol[r], a[r][j]))
            vecs.append(tuple(v))
        return Subspace(ctx, self.ambient, vecs)

    def lift(self, target):
        table = self.ctx.lift_map(target)
        return Subspace(target, self.ambient, [tuple(table[x] for x in b) for b in self.basis])

    def __eq__(self, other):
        return (self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"


def kernel_of_rows(ctx, rows, ncols):
    """Nullspace basis (echelonized) of the linear map given by rows."""
    red, pivots = rref(ctx, rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = ctx.neg(row[f])
        basis.append(tuple(v))
    red2, _ = rref(ctx, basis)
    return red2


def kernel(a):
    """Echelon basis of {v : Av = 0}."""
    return Subspace(a.ctx, a.ncols, kernel_of_rows(a.ctx, list(a.rows), a.ncols))


def solve(a, b):
    """One solution x of Ax = b, or None."""
    ctx = a.ctx
    aug = [list(r) + [bv] for r, bv in zip(a.rows, b)]
    red, pivots = rref(ctx, aug)
    n = a.ncols
    x = [0] * n
    for row, p in zip(red, pivots):
        if p == n:
            return None  # inconsistent
        x[p] = row[n]
    return tuple(x)


def rank(a):
    _, pivots = rref(a.ctx, list(a.rows))
    return len(pivots)


def det(a):
    if a.nrows != a.ncols:
        raise LinAlgError("det of non-square")
    ctx = a.ctx
    rows = [list(r) for r in a.rows]
    n = a.nrows
    d = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            d = ctx.neg(d)
        d = ctx.mul(d, rows[c][c])
        inv = ctx.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = ctx.mul(inv, rows[i][c])
                rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return d


def inverse(a):
    ctx = a.ctx
    n = a.nrows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(a.rows)]
    red, pivots = rref(ctx, aug)
    if list(pivots[:n]) != list(range(n)):
        raise LinAlgError("singular matrix")
    return Mat(ctx, [row[n:] for row in red[:n]])


# ---------------------------------------------------------------------------
# characteristic / minimal polynomials (Berkowitz: division free, exact)
# ---------------------------------------------------------------------------

def charpoly(a):
    """Coefficients of det(xI - A), ascending, monic of degree n."""
    ctx = a.ctx
    n = a.nrows
    if n != a.ncols:
        raise LinAlgError("charpoly of non-square")
    if n == 0:
        return (1,)
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    # Berkowitz iteration over leading principal submatrices
    vect = [1, neg(a.rows[0][0])]  # char poly of the 1x1 block, descending
    for r in range(1, n):
        M = [row[:r] for row in a.rows[:r]]
        R = a.rows[r][:r]
        S = [a.rows[i][r] for i in range(r)]
        corner = a.rows[r][r]
        # toeplitz column: [1, -corner, -R.S, -R.M.S, -R.M^2.S, ...]
        col = [1, neg(corner)]
        cur = S
        for _ in range(r - 1):
            acc = 0
            for x, y in zip(R, cur):
                if x and y:
                    acc = add(acc, mul(x, y))
            col.append(neg(acc))
            nxt = []
            for i in range(r):
                s = 0
                Mi = M[i]
                for j in range(r):
                    if Mi[j] and cur[j]:
                        s = add(s, mul(Mi[j], cur[j]))
                nxt.append(s)
            cur = nxt
        acc = 0
        for x, y in zip(R, cur):
            if x and y:
                acc = add(acc, mul(x, y))
        col.append(neg(acc))
        # lower-triangular Toeplitz product: truncated convolution
        newv = [0] * (r + 2)
        for i, ci in enumerate(col):
            if ci:
                for j, vj in enumerate(vect):
                    if vj and i + j < r + 2:
                        newv[i + j] = add(newv[i + j], mul(ci, vj))
        vect = newv
    vect.reverse()  # ascending
    return tuple(vect)


def poly_mul(ctx, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
    return out


def poly_divmod(ctx, a, b):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise LinAlgError("polynomial division by zero")
    inv_lead = ctx.inv(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b):
        coef = ctx.mul(r[-1], inv_lead)
        deg = len(r) - len(b)
        q[deg] = coef
        for j, bj in enumerate(b):
            r[deg + j] = ctx.sub(r[deg + j], ctx.mul(coef, bj))
        while r and r[-1] == 0:
            r.pop()
    return q, r


def poly_gcd(ctx, a, b):
    a = list(a)
    b = list(b)
    while any(b):
        _, r = poly_divmod(ctx, a, b)
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if a:
        inv = ctx.inv(a[-1])
        a = [ctx.mul(inv, c) for c in a]
    return a


def minpoly(a):
    """Monic minimal polynomial: lcm of the Krylov minimal polynomials of
    the standard basis vectors.  Divides the characteristic polynomial.
    """
    ctx = a.ctx
    n = a.nrows
    m = [1]
    for i in range(n):
        v = tuple(1 if j == i else 0 for j in range(n))
        local = _krylov_minpoly(a, v)
        g = poly_gcd(ctx, m, local)
        q, _ = poly_divmod(ctx, local, g)
        m = poly_mul(ctx, m, q)
        if len(m) == n + 1:
            break
    inv = ctx.inv(m[-1])
    return tuple(ctx.mul(inv, c) for c in m)


def _krylov_minpoly(a, v):
    ctx = a.ctx
    n = a.nrows
    vecs = [v]
    cur = v
    for _ in range(n):
        cur = a.matvec(cur)
        vecs.append(cur)
        # look for a dependence of the last vector on the previous ones
        rows = [list(w) for w in vecs[:-1]]
        sol = solve(Mat(ctx, list(zip(*rows))), vecs[-1])
        if sol is not None:
            deg = len(vecs) - 1
            coeffs = [ctx.neg(sol[i]) for i in range(deg)] + [1]
            return coeffs
    raise LinAlgError("krylov space did not close")


def char_min_poly(a):
    return charpoly(a), minpoly(a)


def eigenspaces(a):
    """(eigenvalue, eigenspace) for each root of the char poly in the field,
    sorted by element encoding.  Eigenvalues outside the field are ignored;
    the caller lifts first when closure is needed.
    """
    ctx = a.ctx
    cp = charpoly(a)
    n = a.nrows
    seen = set()
    out = []
    for lam in range(ctx.q):
        if ctx.poly_eval(cp, lam) == 0 and lam not in seen:
            seen.add(lam)
            shifted = Mat(ctx, [
                [ctx.sub(a.rows[i][j], lam if i == j else 0) for j in range(n)]
                for i in range(n)])
            out.append((lam, kernel(shifted)))
    out.sort(key=lambda t: ctx.lex_key(t[0]))
    return out


# ---------------------------------------------------------------------------
# induced actions
# ---------------------------------------------------------------------------

def restrict(a, u):
    """Matrix of A on the invariant subspace U, in U's echelon basis."""
    ctx = a.ctx
    cols = []
    bmat = Mat(ctx, list(zip(*u.basis))) if u.dim else None
    for b in u.basis:
        img = a.matvec(b)
        coords = solve(bmat, img) if bmat is not None else None
        if coords is None:
            raise LinAlgError("subspace not invariant under A")
        cols.append(coords)
    return Mat(ctx, list(zip(*cols)))


def quotient_basis(u):
    """Non-pivot coordinates: canonical complement coordinates for ambient/U."""
    pivset = set(u.pivots)
    return [c for c in range(u.ambient) if c not in pivset]


def quotient_action(a, u):
    """Induced matrix on ambient/U in the non-pivot coordinate basis."""
    ctx = a.ctx
    qb = quotient_basis(u)
    n = len(qb)
    cols = []
    for c in qb:
        e = tuple(1 if j == c else 0 for j in range(u.ambient))
        img = u.reduce(a.matvec(e))
        if any(img[j] for j in u.pivots):
            raise LinAlgError("quotient reduction left pivot coordinates")
        cols.append([img[j] for j in qb])
    # verify invariance: images of U-basis must stay in U
    for b in u.basis:
        if not u.contains(a.matvec(b)):
            raise LinAlgError("subspace not invariant under A")
    return Mat(ctx, list(zip(*cols)))


def project_to_quotient(u, v):
    qb = quotient_basis(u)
    red = u.reduce(v)
    return tuple(red[j] for j in qb)


def lift_from_quotient(u, w):
    """Canonical coset representative with the given non-pivot coordinates."""
    qb = quotient_basis(u)
    v = [0] * u.ambient
    for c, x in zip(qb, w):
        v[c] = x
    return tuple(v)


# ---------------------------------------------------------------------------
# intertwiners
# ---------------------------------------------------------------------------

INTERTWINER_PROJECTIVE_CAP = 250_000


def intertwiner_space(as_, bs):
    """Echelon basis (as flattened n*n vectors) of {S : S A_i = B_i S}."""
    if len(as_) != len(bs):
        raise LinAlgError("sequence length mismatch")
    ctx = as_[0].ctx
    n = as_[0].nrows
    for m in list(as_) + list(bs):
        if m.nrows != n or m.ncols != n:
            raise LinAlgError("dimension mismatch")
    rows = []
    for a, b in zip(as_, bs):
        # S A - B S = 0, entry (i,j): sum_k S[i,k] A[k,j] - B[i,k] S[k,j]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] = ctx.add(row[i * n + k], a.rows[k][j])
                    row[k * n + j] = ctx.sub(row[k * n + j], b.rows[i][k])
                rows.append(row)
    return kernel_of_rows(ctx, rows, n * n)


def solve_intertwiner(as_, bs):
    """Invertible S with S A_i S^-1 = B_i for all i, or None.

    Searches the projective points of the solution space of the linear
    system; raises on spaces too large to sweep (never hit in practice).
    """
    ctx = as_[0].ctx
    n = as_[0].nrows
    sols = intertwiner_space(as_, bs)
    m = len(sols)
    if m == 0:
        return None
    count = (ctx.q ** m - 1) // (ctx.q - 1)
    if count > INTERTWINER_PROJECTIVE_CAP:
        raise LinAlgError(
            f"intertwiner solution space too large to sweep ({m} dims over {ctx})")
    for coeffs in _projective_points(ctx, m):
        flat = [0] * (n * n)
        for c, sol in zip(coeffs, sols):
            if c:
                for idx in range(n * n):
                    if sol[idx]:
                        flat[idx] = ctx.add(flat[idx], ctx.mul(c, sol[idx]))
        s = Mat(ctx, [flat[i * n:(i + 1) * n] for i in range(n)])
        if det(s) != 0:
            return s
    return None


def _projective_points(ctx, m):
    """Representatives with first nonzero coordinate 1, lexicographic order."""
    def rec(prefix, i):
        if i == m:
            if any(prefix):
                yield tuple(prefix)
            return
        if not any(prefix):
            yield from rec(prefix + [0], i + 1)
            yield from rec(prefix + [1], i + 1)
        else:
            for x in range(ctx.q):
                yield from rec(prefix + [x], i + 1)
    yield from rec([], 0)
