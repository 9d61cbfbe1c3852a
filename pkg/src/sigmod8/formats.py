"""Line-oriented text formats for forms, enhancements, complexes, monodromy.

Every format starts with a keyword line; `#` begins a comment anywhere and
blank lines are ignored.

    z2form <dim>        dim rows of dim 0/1 entries
    z2q <dim>           form rows, then one row of dim values in {0,1}
    z4q <dim>           form rows, then one row of dim values in {0,1,2,3}
    intform <dim>       dim rows of dim integers
    ratform <dim>       dim rows of dim rationals (p/q or integers)
    symcomplex <n>      one row of n+1 ranks, then labeled blocks
                        `d <r>` / `phi0 <r>` / `phi1 <r>`, each followed by
                        its matrix rows (omitted blocks are zero)
    monodromy <h> <g>   2g matrices f1 g1 f2 g2 ..., each 2h rows of
                        2h integers
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .enhancements import Z2Quadratic, Z4Quadratic
from .errors import ParseError
from .fibration import MonodromyData
from .intforms import IntSymForm, RatSymForm
from .symcomplex import SymComplex
from .z2forms import Z2SymForm

__all__ = [
    "load",
    "parse_z2form",
    "parse_z2q",
    "parse_z4q",
    "parse_intform",
    "parse_ratform",
    "parse_symcomplex",
    "parse_monodromy",
    "KINDS",
]

KINDS = ("z2form", "z2q", "z4q", "intform", "ratform", "symcomplex", "monodromy")


class _Lines:
    """Token stream over comment-stripped, non-blank lines."""

    def __init__(self, text: str, path: Optional[str]):
        self.path = path
        self.items: List[Tuple[int, List[str]]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.items.append((lineno, body.split()))
        self.pos = 0

    def peek(self) -> Optional[Tuple[int, List[str]]]:
        if self.pos < len(self.items):
            return self.items[self.pos]
        return None

    def take(self, expected: str) -> Tuple[int, List[str]]:
        item = self.peek()
        if item is None:
            raise ParseError(f"unexpected end of file, expected {expected}", self.path)
        self.pos += 1
        return item

    def fail(self, lineno: int, message: str):
        raise ParseError(message, self.path, lineno)

    def expect_done(self):
        item = self.peek()
        if item is not None:
            self.fail(item[0], f"unexpected trailing line: {' '.join(item[1])}")


def _ints(lines: _Lines, lineno: int, tokens: Sequence[str], count: int, what: str) -> List[int]:
    if len(tokens) != count:
        lines.fail(lineno, f"expected {count} entries for {what}, got {len(tokens)}")
    out = []
    for tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            lines.fail(lineno, f"expected an integer for {what}, got {tok!r}")
    return out


def _header(lines: _Lines, keyword: str, argc: int) -> List[int]:
    lineno, tokens = lines.take(f"`{keyword}` header")
    if tokens[0] != keyword:
        lines.fail(lineno, f"expected keyword {keyword!r}, got {tokens[0]!r}")
    return _ints(lines, lineno, tokens[1:], argc, f"{keyword} header arguments")


def _matrix_rows(lines: _Lines, nrows: int, ncols: int, what: str) -> List[List[int]]:
    rows = []
    for _ in range(nrows):
        lineno, tokens = lines.take(f"row of {what}")
        rows.append(_ints(lines, lineno, tokens, ncols, what))
    return rows


def parse_z2form(text: str, path: Optional[str] = None) -> Z2SymForm:
    lines = _Lines(text, path)
    (dim,) = _header(lines, "z2form", 1)
    rows = _matrix_rows(lines, dim, dim, "z2form matrix")
    lines.expect_done()
    for lineno_row in rows:
        if any(x not in (0, 1) for x in lineno_row):
            raise ParseError("z2form entries must be 0 or 1", path)
    try:
        return Z2SymForm.from_matrix(rows)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_z2q(text: str, path: Optional[str] = None) -> Z2Quadratic:
    lines = _Lines(text, path)
    (dim,) = _header(lines, "z2q", 1)
    rows = _matrix_rows(lines, dim, dim, "z2q form matrix")
    lineno, tokens = lines.take("row of z2q values")
    values = _ints(lines, lineno, tokens, dim, "z2q values")
    lines.expect_done()
    if any(v not in (0, 1) for v in values):
        raise ParseError("z2q values must lie in {0,1}", path, lineno)
    try:
        return Z2Quadratic(Z2SymForm.from_matrix(rows), tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_z4q(text: str, path: Optional[str] = None) -> Z4Quadratic:
    lines = _Lines(text, path)
    (dim,) = _header(lines, "z4q", 1)
    rows = _matrix_rows(lines, dim, dim, "z4q form matrix")
    lineno, tokens = lines.take("row of z4q values")
    values = _ints(lines, lineno, tokens, dim, "z4q values")
    lines.expect_done()
    if any(v not in (0, 1, 2, 3) for v in values):
        raise ParseError("z4q values must lie in {0,1,2,3}", path, lineno)
    try:
        return Z4Quadratic(Z2SymForm.from_matrix(rows), tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_intform(text: str, path: Optional[str] = None) -> IntSymForm:
    lines = _Lines(text, path)
    (dim,) = _header(lines, "intform", 1)
    rows = _matrix_rows(lines, dim, dim, "intform matrix")
    lines.expect_done()
    try:
        return IntSymForm.from_matrix(rows)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_ratform(text: str, path: Optional[str] = None) -> RatSymForm:
    lines = _Lines(text, path)
    (dim,) = _header(lines, "ratform", 1)
    rows = []
    for _ in range(dim):
        lineno, tokens = lines.take("row of ratform matrix")
        if len(tokens) != dim:
            lines.fail(lineno, f"expected {dim} entries, got {len(tokens)}")
        row = []
        for tok in tokens:
            try:
                row.append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                lines.fail(lineno, f"expected a rational p/q, got {tok!r}")
        rows.append(row)
    lines.expect_done()
    try:
        return RatSymForm.from_matrix(rows)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_symcomplex(text: str, path: Optional[str] = None) -> SymComplex:
    lines = _Lines(text, path)
    (n,) = _header(lines, "symcomplex", 1)
    lineno, tokens = lines.take("row of per-degree ranks")
    ranks = _ints(lines, lineno, tokens, n + 1, "per-degree ranks")
    diffs, phi0, phi1 = {}, {}, {}
    while True:
        item = lines.peek()
        if item is None:
            break
        lineno, tokens = item
        if tokens[0] not in ("d", "phi0", "phi1"):
            lines.fail(lineno, f"expected block label d/phi0/phi1, got {tokens[0]!r}")
        lines.pos += 1
        (r,) = _ints(lines, lineno, tokens[1:], 1, f"{tokens[0]} block degree")
        if tokens[0] == "d":
            if not 1 <= r <= n:
                lines.fail(lineno, f"d degree must be in 1..{n}")
            shape = (ranks[r - 1], ranks[r])
            target = diffs
        elif tokens[0] == "phi0":
            if not 0 <= r <= n:
                lines.fail(lineno, f"phi0 degree must be in 0..{n}")
            shape = (ranks[r], ranks[n - r])
            target = phi0
        else:
            if not 0 <= r <= n:
                lines.fail(lineno, f"phi1 degree must be in 0..{n}")
            cols = ranks[n - r + 1] if n - r + 1 <= n else 0
            shape = (ranks[r], cols)
            target = phi1
        if shape[0] == 0 or shape[1] == 0:
            continue  # a block with a zero side is the zero map; no rows follow
        target[r] = _matrix_rows(lines, shape[0], shape[1], f"{tokens[0]} {r} block")
    try:
        return SymComplex(ranks=tuple(ranks), diffs=diffs, phi0=phi0, phi1=phi1)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc


def parse_monodromy(text: str, path: Optional[str] = None) -> MonodromyData:
    lines = _Lines(text, path)
    h, g = _header(lines, "monodromy", 2)
    matrices = []
    for _ in range(2 * g):
        matrices.append(_matrix_rows(lines, 2 * h, 2 * h, "monodromy matrix"))
    lines.expect_done()
    # non-symplectic matrices and commutator violations surface as
    # precondition errors (InvariantError), not parse errors
    return MonodromyData.from_matrices(h, matrices)


def load(text: str, kind: str, path: Optional[str] = None):
    """Parse `text` as the given kind; raises ParseError on malformed input."""
    parsers = {
        "z2form": parse_z2form,
        "z2q": parse_z2q,
        "z4q": parse_z4q,
        "intform": parse_intform,
        "ratform": parse_ratform,
        "symcomplex": parse_symcomplex,
        "monodromy": parse_monodromy,
    }
    if kind not in parsers:
        raise ParseError(f"unknown kind {kind!r}; expected one of {KINDS}", path)
    return parsers[kind](text, path)
