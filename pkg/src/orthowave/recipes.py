"""Recipe strings: the textual form of transform constructions.

Grammar (whitespace-insensitive):

    recipe     := wavmat | composite
    wavmat     := "wavmat(" filter ",L=" int ["," "eps=" bits] ["," "n=" int] ")"
    composite  := ("product"|"kron"|"blockdiag"|"similarity") "(" recipe
                  ("," recipe)* ")"

`n=` pins a part's size; kron parts need it (at least on one factor)
because the target length alone does not determine the split.  Parsed
recipes render back to a canonical string, and building one at a target
length yields the corresponding operator.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import compose
from .errors import RecipeSyntaxError, SizeMismatch
from .filters import get_filter
from .wavmat import build_wavmat

PRODUCT = "product"
KRON = "kron"
BLOCK_DIAG = "block_diag"
SIMILARITY = "similarity"

_COMPOSITE_HEADS = {"product": PRODUCT, "kron": KRON,
                    "blockdiag": BLOCK_DIAG, "similarity": SIMILARITY}
_ARITY = {PRODUCT: (2, None), KRON: (2, 2), BLOCK_DIAG: (1, None),
          SIMILARITY: (2, 2)}


@dataclass(frozen=True)
class WavmatRecipe:
    filter_name: str
    levels: int
    eps: tuple | None = None
    n: int | None = None

    def canonical(self):
        eps = self.eps if self.eps is not None else (0,) * self.levels
        text = f"wavmat({self.filter_name},L={self.levels}," \
               f"eps={''.join(str(b) for b in eps)}"
        if self.n is not None:
            text += f",n={self.n}"
        return text + ")"


@dataclass(frozen=True)
class CompositeRecipe:
    kind: str
    parts: tuple

    def canonical(self):
        head = "blockdiag" if self.kind == BLOCK_DIAG else self.kind
        return f"{head}({','.join(p.canonical() for p in self.parts)})"


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise RecipeSyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and \
                (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if self.pos == start:
            self.error("expected a name")
        return self.text[start:self.pos]

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        node = self.recipe()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing characters after recipe")
        return node

    def recipe(self):
        head = self.word().lower()
        if head == "wavmat":
            return self.wavmat_tail()
        if head in _COMPOSITE_HEADS:
            return self.composite_tail(_COMPOSITE_HEADS[head])
        self.error(f"unknown recipe head {head!r}")

    def wavmat_tail(self):
        self.expect("(")
        name = self.word()
        levels, eps, n = None, None, None
        while self.peek() == ",":
            self.expect(",")
            key = self.word().lower()
            self.expect("=")
            if key == "l":
                levels = self.int_value()
            elif key == "eps":
                bits = self.word()
                if set(bits) - {"0", "1"}:
                    self.error("eps must be a bit string")
                eps = tuple(int(b) for b in bits)
            elif key == "n":
                n = self.int_value()
            else:
                self.error(f"unknown wavmat parameter {key!r}")
        self.expect(")")
        if levels is None:
            self.error("wavmat recipe needs L=<levels>")
        if eps is None:
            eps = (0,) * levels  # normalized so canonical forms round-trip
        elif len(eps) != levels:
            self.error(f"eps needs exactly L={levels} bits")
        return WavmatRecipe(filter_name=name.lower(), levels=levels, eps=eps, n=n)

    def composite_tail(self, kind):
        self.expect("(")
        parts = [self.recipe()]
        while self.peek() == ",":
            self.expect(",")
            parts.append(self.recipe())
        self.expect(")")
        lo, hi = _ARITY[kind]
        if len(parts) < lo or (hi is not None and len(parts) > hi):
            self.error(f"{kind} takes {'exactly' if lo == hi else 'at least'} "
                       f"{lo} parts, got {len(parts)}")
        return CompositeRecipe(kind=kind, parts=tuple(parts))

    def int_value(self):
        w = self.word()
        if not w.isdigit():
            self.error(f"expected an integer, got {w!r}")
        return int(w)


def parse_recipe(text):
    """Parse a recipe string; syntax errors carry the offending position."""
    return _Parser(str(text)).parse()


def canonical(recipe):
    if isinstance(recipe, str):
        recipe = parse_recipe(recipe)
    return recipe.canonical()


def _sizes_for_parts(parts, n, kind):
    explicit = [p.n if isinstance(p, WavmatRecipe) else _recipe_size(p)
                for p in parts]
    if kind == KRON:
        a, b = explicit
        if a is None and b is None:
            raise SizeMismatch("kron parts need an explicit n on at least "
                               "one factor")
        if a is None:
            a = n // b if b and n % b == 0 else None
        elif b is None:
            b = n // a if a and n % a == 0 else None
        if a is None or b is None or a * b != n:
            raise SizeMismatch(f"kron factor sizes {explicit} do not multiply "
                               f"to {n}")
        return [a, b]
    if kind == BLOCK_DIAG:
        known = sum(s for s in explicit if s is not None)
        free = [i for i, s in enumerate(explicit) if s is None]
        if free:
            rem = n - known
            if rem <= 0 or rem % len(free):
                raise SizeMismatch(f"block sizes {explicit} do not fit {n}")
            share = rem // len(free)
            explicit = [share if s is None else s for s in explicit]
        if sum(explicit) != n:
            raise SizeMismatch(f"block sizes {explicit} do not sum to {n}")
        return explicit
    # product and similarity share the target size
    for s in explicit:
        if s is not None and s != n:
            raise SizeMismatch(f"part size {s} conflicts with target {n}")
    return [n] * len(parts)


def _recipe_size(recipe):
    """Size pinned by the recipe itself, or None when context decides."""
    if isinstance(recipe, WavmatRecipe):
        return recipe.n
    sizes = [_recipe_size(p) for p in recipe.parts]
    if recipe.kind == KRON:
        if None not in sizes:
            return sizes[0] * sizes[1]
        return None
    if recipe.kind == BLOCK_DIAG:
        return sum(sizes) if None not in sizes else None
    known = [s for s in sizes if s is not None]
    return known[0] if known else None


def build_recipe(recipe, n):
    """Materialize a recipe (tree or text) as an operator of size n."""
    if isinstance(recipe, str):
        recipe = parse_recipe(recipe)
    if isinstance(recipe, WavmatRecipe):
        if recipe.n is not None and recipe.n != n:
            raise SizeMismatch(f"recipe pins n={recipe.n}, target is {n}")
        op = build_wavmat(get_filter(recipe.filter_name), n, recipe.levels,
                          recipe.eps)
        return op if recipe.n is None else _with_recipe(op, recipe.canonical())
    sizes = _sizes_for_parts(recipe.parts, n, recipe.kind)
    built = [build_recipe(p, s) for p, s in zip(recipe.parts, sizes)]
    if recipe.kind == PRODUCT:
        return compose.product(built)
    if recipe.kind == KRON:
        return compose.kron(*built)
    if recipe.kind == BLOCK_DIAG:
        return compose.block_diag(built)
    return compose.similarity(*built)


def _with_recipe(op, text):
    from .wavmat import WaveletOperator
    return WaveletOperator(n=op.n, matrix=op.matrix, layout=op.layout,
                           recipe=text)
