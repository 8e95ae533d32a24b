"""Exact arithmetic in GF(3^k), k <= 6.

Elements are plain ints in range(3**k), encoding the coefficient vector of
the polynomial basis: n = c0 + 3*c1 + 9*c2 + ...  All operations go through
a FieldCtx, which owns the modulus and the precomputed exp/log tables.
Contexts are cached per (k, modulus), so elements of the same field always
share one context object.

Multiplication uses discrete-log tables (q <= 729 keeps them tiny), addition
is carry-free base-3 digit addition done with one shared 27x27 table.
"""

from functools import lru_cache

P = 3
MAX_DEGREE = 6

# carry-free base-3 addition/negation of 3-digit blocks (0..26)
_ADD27 = [[0] * 27 for _ in range(27)]
_NEG27 = [0] * 27
for _a in range(27):
    _d = (_a % 3, _a // 3 % 3, _a // 9)
    _NEG27[_a] = (-_d[0]) % 3 + 3 * ((-_d[1]) % 3) + 9 * ((-_d[2]) % 3)
    for _b in range(27):
        _e = (_b % 3, _b // 3 % 3, _b // 9)
        _ADD27[_a][_b] = ((_d[0] + _e[0]) % 3 + 3 * ((_d[1] + _e[1]) % 3)
                          + 9 * ((_d[2] + _e[2]) % 3))


class FieldError(ValueError):
    pass


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _gf3_poly_mulmod(a, b, modulus):
    """Multiply polynomials over GF(3), reduce by monic modulus (coeff lists)."""
    k = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % 3
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % 3
    out = out[:k]
    out += [0] * (k - len(out))
    return out


def _gf3_poly_divmod(a, b):
    """Divide coefficient lists over GF(3); b need not be monic."""
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise FieldError("polynomial division by zero")
    inv_lead = pow(b[-1], 1, 3)
    inv_lead = {1: 1, 2: 2}[inv_lead]  # inverse mod 3
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and _poly_trim(r):
        r = _poly_trim(r)
        if len(r) < len(b):
            break
        coef = (r[-1] * inv_lead) % 3
        deg = len(r) - len(b)
        q[deg] = coef
        for j, bj in enumerate(b):
            r[deg + j] = (r[deg + j] - coef * bj) % 3
    return q, _poly_trim(r)


def _gf3_irreducibles(max_deg):
    """All monic irreducible polynomials over GF(3) up to max_deg, by trial division."""
    irr = {d: [] for d in range(1, max_deg + 1)}
    for d in range(1, max_deg + 1):
        for enc in range(3 ** d):
            coeffs = [(enc // 3 ** i) % 3 for i in range(d)] + [1]
            if coeffs[0] == 0:
                continue  # divisible by x
            reducible = False
            for dd in range(1, d // 2 + 1):
                for f in irr[dd]:
                    _, rem = _gf3_poly_divmod(coeffs, f)
                    if not rem:
                        reducible = True
                        break
                if reducible:
                    break
            if not reducible:
                irr[d].append(coeffs)
    return irr


@lru_cache(maxsize=None)
def _irreducibles_upto(max_deg):
    return _gf3_irreducibles(max_deg)


def default_modulus(k):
    """Pinned modulus: smallest-encoding monic irreducible of degree k.

    Gives x for k=1 and x^2+1 for k=2; higher degrees are found by the same
    rule so serialized elements are reproducible.
    """
    if k == 1:
        return (0, 1)
    cands = _irreducibles_upto(k)[k]
    return tuple(min(cands, key=lambda c: tuple(c)))


class FieldCtx:
    """GF(3^k) in a fixed polynomial basis.  Immutable after construction."""

    def __init__(self, k, modulus=None):
        if not (1 <= k <= MAX_DEGREE):
            raise FieldError(f"degree k={k} outside 1..{MAX_DEGREE}")
        if modulus is None:
            modulus = default_modulus(k)
        modulus = tuple(int(c) % 3 for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if k > 1:
            for d in range(1, k // 2 + 1):
                for f in _irreducibles_upto(k)[d]:
                    _, rem = _gf3_poly_divmod(list(modulus), f)
                    if not rem:
                        raise FieldError(
                            f"modulus {list(modulus)} reducible (divisible by {f})")
        self.k = k
        self.q = 3 ** k
        self.modulus = modulus
        self._build_tables()
        self._embed_cache = {}

    def _build_tables(self):
        q, k = self.q, self.k
        mod = list(self.modulus)
        # find a multiplicative generator by brute force (q <= 729)
        order_target = q - 1
        gen = None
        for cand in range(2, q):
            digits = self.digits(cand)
            seen = 1
            cur = list(digits)
            n = 0
            enc = cand
            while enc != 1:
                cur = _gf3_poly_mulmod(cur, list(digits), mod)
                enc = sum(c * 3 ** i for i, c in enumerate(cur))
                seen += 1
                if seen > order_target:
                    break
            if seen == order_target:
                gen = cand
                break
        if gen is None:
            raise FieldError("no generator found (modulus not irreducible?)")
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        cur = [1] + [0] * (k - 1)
        for i in range(q - 1):
            enc = sum(c * 3 ** j for j, c in enumerate(cur))
            exp[i] = enc
            exp[i + q - 1] = enc
            log[enc] = i
            cur = _gf3_poly_mulmod(cur, self.digits(gen), mod)
        self.generator = gen
        self._exp = exp
        self._log = log

    # --- basic arithmetic (elements are ints 0..q-1) ---

    def add(self, a, b):
        return _ADD27[a % 27][b % 27] + 27 * _ADD27[a // 27][b // 27]

    def neg(self, a):
        return _NEG27[a % 27] + 27 * _NEG27[a // 27]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise FieldError("inverse of zero")
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise FieldError("negative power of zero")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def scalar(self, n):
        """Embed an integer (element of the prime field) into this field."""
        return n % 3

    # --- encodings ---

    def digits(self, a):
        return tuple((a // 3 ** i) % 3 for i in range(self.k))

    def from_digits(self, ds):
        return sum((int(d) % 3) * 3 ** i for i, d in enumerate(ds))

    def lex_key(self, a):
        """Coefficient sequence, for the lexicographic tie-breaks pinned in docs."""
        return self.digits(a)

    def elem_str(self, a):
        if self.k == 1:
            return str(a)
        return "[" + ",".join(str(d) for d in self.digits(a)) + "]"

    def elem_repr_list(self, a):
        """JSON form: bare int for GF(3), coefficient list otherwise."""
        return a if self.k == 1 else list(self.digits(a))

    # --- roots ---

    def is_square(self, a):
        if a == 0:
            return True
        return self._log[a] % 2 == 0

    def sqrt(self, a):
        """Smaller-encoding square root, or None when a is not a square."""
        if a == 0:
            return 0
        m = self._log[a]
        if m % 2:
            return None
        s = self._exp[m // 2]
        t = self.neg(s)
        return s if self.lex_key(s) <= self.lex_key(t) else t

    def cbrt(self, a):
        """Unique cube root: the cube map is the Frobenius, hence bijective."""
        return self.pow(a, 3 ** (self.k - 1))

    def poly_eval(self, coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_roots(self, coeffs):
        """Roots in this field with multiplicities, plus the degree of the
        rootless cofactor.  Degree must be <= 3, leading coefficient nonzero.
        """
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise FieldError("zero polynomial")
        if len(coeffs) - 1 > 3:
            raise FieldError("poly_roots limited to degree <= 3")
        roots = []
        rem = coeffs
        for x in range(self.q):
            while len(rem) > 1 and self.poly_eval(rem, x) == 0:
                roots.append(x)
                rem = self._poly_div_linear(rem, x)
        roots.sort(key=self.lex_key)
        out = []
        for r in roots:
            if out and out[-1][0] == r:
                out[-1] = (r, out[-1][1] + 1)
            else:
                out.append((r, 1))
        return out, len(rem) - 1

    def _poly_div_linear(self, coeffs, root):
        """Synthetic division by (x - root)."""
        out = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, -1, -1):
            acc = self.add(self.mul(acc, root), coeffs[i])
            if i > 0:
                out[i - 1] = acc
        return out

    def splitting_degree(self, coeffs):
        """Smallest m such that the polynomial splits over GF(3^(k*m)).

        Degree <= 3 only: lcm of the irreducible factor degrees, read off the
        root count in this field.
        """
        roots, cof = self.poly_roots(coeffs)
        if cof == 0:
            return 1
        if cof == 2:
            return 2
        # rootless cubic: irreducible, splits over the cubic extension
        return 3

    # --- embeddings into extensions ---

    def lift_map(self, target):
        """Embedding GF(3^k) -> target, as a tuple indexed by source element.

        Computed once per context pair: smallest-encoding root of the source
        modulus in the target, then evaluate coefficient vectors at it.
        """
        key = id(target)
        cached = self._embed_cache.get(key)
        if cached is not None:
            return cached
        if target.k % self.k != 0:
            raise FieldError(
                f"no embedding GF(3^{self.k}) -> GF(3^{target.k}): degree not a multiple")
        if target is self or (target.k == self.k and target.modulus == self.modulus):
            table = tuple(range(self.q))
            self._embed_cache[key] = table
            return table
        mod_in_target = [c % 3 for c in self.modulus]
        root = None
        for x in range(target.q):
            if target.poly_eval(mod_in_target, x) == 0:
                root = x
                break
        if root is None:
            raise FieldError("embedding root not found")
        table = [0] * self.q
        for a in range(self.q):
            acc = 0
            for c in reversed(self.digits(a)):
                acc = target.add(target.mul(acc, root), c)
            table[a] = acc
        table = tuple(table)
        self._embed_cache[key] = table
        return table

    def lift(self, a, target):
        return self.lift_map(target)[a]

    def __repr__(self):
        return f"GF(3^{self.k})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.k == other.k
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.k, self.modulus))


_CTX_CACHE = {}


def make_field(k, modulus=None):
    """Context for GF(3^k).  Default moduli are pinned for reproducibility."""
    key = (k, tuple(modulus) if modulus is not None else None)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(k, modulus)
        _CTX_CACHE[key] = ctx
    return ctx


def parse_elem(text, ctx):
    """Parse the shared element grammar: int, or [c0,c1,...] coefficient list."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise FieldError(f"unterminated coefficient list: {text!r}")
        parts = [p.strip() for p in text[1:-1].split(",") if p.strip()]
        ds = []
        for p in parts:
            try:
                ds.append(int(p) % 3)
            except ValueError:
                raise FieldError(f"bad coefficient {p!r} in {text!r}") from None
        if len(ds) > ctx.k:
            raise FieldError(
                f"coefficient list {text} too long for GF(3^{ctx.k})")
        ds += [0] * (ctx.k - len(ds))
        return ctx.from_digits(ds)
    try:
        n = int(text)
    except ValueError:
        raise FieldError(f"bad field element literal {text!r}") from None
    return n % 3
