"""The module-expression grammar shared by the CLI and the sweeps:

    expr    := One | Two | T(e,e,e) | Tt(e,e,e) | Dual(expr)
    e       := integer | [c0,c1,...]

Field-element literals follow the element grammar: bare integers for the
prime field (and prime-field constants in any field), coefficient lists
for extensions.  Excluded parameter points are rejected with the reason.
"""

from .gf import FieldError, parse_elem
from .modules import ModuleParams, Sl2Error


class ParseError(ValueError):
    def __init__(self, message, pos):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum()
                                             or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos], start

    def element(self, ctx):
        self.skip_ws()
        start = self.pos
        if self.peek() == "[":
            depth = 0
            while self.pos < len(self.text):
                ch = self.text[self.pos]
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                    if depth == 0:
                        self.pos += 1
                        break
                self.pos += 1
            else:
                raise ParseError("unterminated coefficient list", start)
        else:
            if self.peek() == "-":
                self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == start or (self.text[start] == "-" and self.pos == start + 1):
                raise ParseError("expected a field element literal", start)
        literal = self.text[start:self.pos]
        try:
            return parse_elem(literal, ctx)
        except FieldError as e:
            raise ParseError(str(e), start) from None


def parse_module_expr(text, ctx):
    """Parse a module expression over the given field context."""
    sc = _Scanner(text)
    params = _parse(sc, ctx)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("trailing input", sc.pos)
    return params


def _parse(sc, ctx):
    name, start = sc.word()
    if name == "One":
        return ModuleParams.one()
    if name == "Two":
        return ModuleParams.two()
    if name == "Dual":
        sc.expect("(")
        inner = _parse(sc, ctx)
        sc.expect(")")
        return ModuleParams.dual(inner)
    if name in ("T", "Tt"):
        sc.expect("(")
        b = sc.element(ctx)
        sc.expect(",")
        c = sc.element(ctx)
        sc.expect(",")
        d = sc.element(ctx)
        sc.expect(")")
        try:
            if name == "T":
                return ModuleParams.T(ctx, b, c, d)
            return ModuleParams.Tt(ctx, b, c, d)
        except Sl2Error as e:
            raise ParseError(str(e), start) from None
    raise ParseError(f"expected One, Two, T, Tt or Dual, got {name!r}", start)
