"""Decomposition descriptors: trees of direct sums, semidirect sums and
glue diagrams over canonically identified irreducible leaves.

Node kinds:

  Leaf(cls)                  one irreducible, by CanonicalClass
  DirectSum(children)        flattened, children sorted canonically
  Semidirect(quo, sub)       sub is the submodule, quo the quotient
  Glue(nodes, edges)         arrow diagram between 1/2-dimensional layers;
                             edge (i, j, "X-") means node i maps into node j
                             by acting with Xm (the paper's right arrow),
                             "X+" is the left arrow

Normalization flattens sums, sorts children, and brings glue graphs to the
minimum over node permutations, so structural equality after normalize is
descriptor equality.  The JSON form is bit-stable.
"""

from itertools import permutations



class DescriptorError(ValueError):
    pass


class Leaf:
    __slots__ = ("cls",)
    kind = "leaf"

    def __init__(self, cls):
        self.cls = cls

    def dim(self):
        return self.cls.dim()

    def normalize(self):
        return self

    def key(self):
        return (0, self.cls.sort_key())

    def to_json(self):
        return self.cls.to_json()

    def text(self):
        return self.cls.text()

    def __eq__(self, other):
        return isinstance(other, Leaf) and self.cls == other.cls

    def __hash__(self):
        return hash(("leaf", self.cls))

    def __repr__(self):
        return f"Leaf({self.cls.text()})"


class DirectSum:
    __slots__ = ("children",)
    kind = "sum"

    def __init__(self, children):
        self.children = tuple(children)

    def dim(self):
        return sum(c.dim() for c in self.children)

    def normalize(self):
        flat = []
        for c in self.children:
            c = c.normalize()
            if isinstance(c, DirectSum):
                flat.extend(c.children)
            else:
                flat.append(c)
        if len(flat) == 1:
            return flat[0]
        flat.sort(key=lambda c: c.key())
        return DirectSum(flat)

    def key(self):
        return (1, tuple(c.key() for c in self.children))

    def to_json(self):
        return {"sum": [c.to_json() for c in self.children]}

    def text(self):
        return " ⊕ ".join(
            c.text() if isinstance(c, (Leaf, Glue)) else f"({c.text()})"
            for c in self.children)

    def __eq__(self, other):
        return isinstance(other, DirectSum) and self.children == other.children

    def __hash__(self):
        return hash(("sum", self.children))

    def __repr__(self):
        return f"DirectSum({list(self.children)!r})"


class Semidirect:
    __slots__ = ("quo", "sub")
    kind = "semi"

    def __init__(self, quo, sub):
        self.quo = quo
        self.sub = sub

    def dim(self):
        return self.quo.dim() + self.sub.dim()

    def normalize(self):
        return Semidirect(self.quo.normalize(), self.sub.normalize())

    def key(self):
        return (2, self.quo.key(), self.sub.key())

    def to_json(self):
        return {"semi": {"quo": self.quo.to_json(), "sub": self.sub.to_json()}}

    def text(self):
        quo = self.quo.text() if isinstance(self.quo, Leaf) else f"({self.quo.text()})"
        sub = self.sub.text() if isinstance(self.sub, Leaf) else f"({self.sub.text()})"
        return f"{quo} ⊂+ {sub}"

    def __eq__(self, other):
        return (isinstance(other, Semidirect) and self.quo == other.quo
                and self.sub == other.sub)

    def __hash__(self):
        return hash(("semi", self.quo, self.sub))

    def __repr__(self):
        return f"Semidirect({self.quo!r}, {self.sub!r})"


class Glue:
    """Arrow diagram: nodes are canonical classes of 1/2-dimensional
    constituents, edges carry the acting generator."""

    __slots__ = ("nodes", "edges")
    kind = "glue"

    def __init__(self, nodes, edges):
        self.nodes = tuple(nodes)
        self.edges = tuple(sorted(set(edges)))
        for i, j, act in self.edges:
            if not (0 <= i < len(self.nodes) and 0 <= j < len(self.nodes)):
                raise DescriptorError("glue edge out of range")
            if act not in ("X+", "X-"):
                raise DescriptorError(f"bad glue action {act!r}")

    def dim(self):
        return sum(c.dim() for c in self.nodes)

    def normalize(self):
        if len(self.nodes) > 6:
            raise DescriptorError("glue graphs limited to 6 nodes")
        best = None
        for perm in permutations(range(len(self.nodes))):
            nodes = tuple(self.nodes[p] for p in perm)
            inv = {p: i for i, p in enumerate(perm)}
            edges = tuple(sorted((inv[i], inv[j], act) for i, j, act in self.edges))
            cand = (tuple(n.sort_key() for n in nodes), edges)
            if best is None or cand < best[0]:
                best = ((tuple(n.sort_key() for n in nodes), edges), (nodes, edges))
        nodes, edges = best[1]
        return Glue(nodes, edges)

    def key(self):
        return (3, tuple(n.sort_key() for n in self.nodes), self.edges)

    def to_json(self):
        return {"glue": {"nodes": [n.to_json()["irr"] for n in self.nodes],
                         "edges": [[i, j, act] for i, j, act in self.edges]}}

    def text(self):
        return render_glue(self)

    def __eq__(self, other):
        return (isinstance(other, Glue) and self.nodes == other.nodes
                and self.edges == other.edges)

    def __hash__(self):
        return hash(("glue", self.nodes, self.edges))

    def __repr__(self):
        return f"Glue({[n.text() for n in self.nodes]}, {list(self.edges)})"


def normalize(d):
    return d.normalize()


def descriptor_equal(a, b):
    return a.normalize() == b.normalize()


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

M1_SHAPE = "M1"


def render_glue(g):
    """Paper-style arrow notation for the small diagrams; the exact
    four-node square of the M1 module prints as M1."""
    n = len(g.nodes)
    labels = [node.text() for node in g.nodes]
    if n == 4 and g.normalize() == _m1_normal_form():
        return M1_SHAPE
    if n == 2 and len(g.edges) == 1:
        (i, j, act) = g.edges[0]
        if act == "X-":
            return f"{labels[i]} → {labels[j]}"
        return f"{labels[j]} ← {labels[i]}"
    if n == 3 and len(g.edges) == 2:
        # chains like 1 -> 2 <- 1: both edges share the target
        (i1, j1, a1), (i2, j2, a2) = g.edges
        if j1 == j2 and {a1, a2} == {"X-", "X+"}:
            left = (i1, a1) if a1 == "X-" else (i2, a2)
            right = (i1, a1) if a1 == "X+" else (i2, a2)
            return (f"{labels[left[0]]} → {labels[j1]}"
                    f" ← {labels[right[0]]}")
    if n == 4 and len(g.edges) == 4:
        # the other square seen in the sweeps: a top 1 feeding two middle
        # 2s which feed a socle 1
        tops = [i for i in range(n) if not any(j == i for _, j, _ in g.edges)]
        if len(tops) == 1 and labels[tops[0]] == "1":
            return "[1 / 2⊕2 / 1]"
    # generic fallback
    edges = ", ".join(f"{labels[i]}-{act}->{labels[j]}" for i, j, act in g.edges)
    return f"glue[{'; '.join(labels)} | {edges}]"


def to_json(d):
    return d.normalize().to_json()


def json_dumps(d):
    import json
    return json.dumps(to_json(d), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------

def leaf(cls):
    return Leaf(cls)


def dsum(*children):
    return DirectSum(children)


def semi(quo, sub):
    return Semidirect(quo, sub)


def glue(nodes, edges):
    return Glue(nodes, edges)


def glue_arrow(src_cls, dst_cls, action):
    """Single-arrow diagram: src maps into dst by the given action."""
    return Glue([src_cls, dst_cls], [(0, 1, action)])


def m1_diagram(ctx=None):
    """The 6-dimensional square: top 2 maps into the two middle 1s (X+ to
    one, X- to the other), each middle 1 maps into the bottom 2."""
    from .canon import ONE, TWO
    nodes = [TWO, ONE, ONE, TWO]  # top, left-1, right-1, bottom
    edges = [(0, 1, "X+"), (0, 2, "X-"), (1, 3, "X-"), (2, 3, "X+")]
    return Glue(nodes, edges)


_M1_NF = None


def _m1_normal_form():
    global _M1_NF
    if _M1_NF is None:
        _M1_NF = m1_diagram().normalize()
    return _M1_NF


def lift_descriptor(d, target):
    if isinstance(d, Leaf):
        return Leaf(d.cls.lift(target))
    if isinstance(d, DirectSum):
        return DirectSum([lift_descriptor(c, target) for c in d.children])
    if isinstance(d, Semidirect):
        return Semidirect(lift_descriptor(d.quo, target),
                          lift_descriptor(d.sub, target))
    return Glue([n.lift(target) for n in d.nodes], d.edges)


def dual_descriptor(d):
    """Descriptor of the dual module: leaves dualize, submodule and
    quotient swap, glue arrows reverse (actions stay, since the dual
    pairing turns an Xm-image relation into an Xm-preimage one)."""
    from .canon import dual_class
    if isinstance(d, Leaf):
        return Leaf(dual_class(d.cls))
    if isinstance(d, DirectSum):
        return DirectSum([dual_descriptor(c) for c in d.children])
    if isinstance(d, Semidirect):
        return Semidirect(dual_descriptor(d.sub), dual_descriptor(d.quo))
    return Glue([dual_class(n) for n in d.nodes],
                [(j, i, act) for i, j, act in d.edges])
