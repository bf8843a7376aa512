"""Plain-text formats: matrix blocks, inline matrices, presentations and input documents."""

import re

from .errors import ParseError, UsageError
from .matrix import Matrix
from .rings import IntegerRing, RationalField, parse_ring

# -- matrices -------------------------------------------------------------------------


def format_matrix(M):
    """``ring R`` header, ``m n`` line, then one line per row."""
    lines = [f"ring {M.ring}", f"{M.nrows} {M.ncols}"]
    for r in M.rows:
        lines.append(" ".join(M.ring.format(e, compact=True) for e in r))
    return "\n".join(lines)


def format_matrix_inline(M):
    return "[" + ", ".join("[" + ", ".join(M.ring.format(e, compact=True) for e in r) + "]"
                           for r in M.rows) + "]"


def _split_entries(text):
    if "," in text:
        return _split_by_comma(text)
    return [(m.group(), m.start()) for m in re.finditer(r"\S+", text)]


def parse_matrix(text, ring=None, order="degrevlex", first_line=1):
    """Parse a matrix block; ``ring`` may replace a missing header line."""
    lines = [(n, l) for n, l in enumerate(text.splitlines(), first_line) if l.strip() and not l.strip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix document", first_line, 1)
    n, head = lines[0]
    if head.strip().startswith("ring"):
        try:
            ring = parse_ring(head.strip()[4:], order)
        except UsageError as e:
            raise ParseError(str(e), n, 1) from None
        lines = lines[1:]
    if ring is None:
        raise ParseError("missing 'ring' header line", n, 1)
    if not lines:
        raise ParseError("missing 'm n' dimension line", n, 1)
    n, dims = lines[0]
    m = re.fullmatch(r"\s*(\d+)\s+(\d+)\s*", dims)
    if not m:
        raise ParseError("expected a dimension line 'm n'", n, 1)
    nrows, ncols = int(m.group(1)), int(m.group(2))
    body = lines[1:]
    if ncols == 0 and not body:
        # rows of width zero print as blank lines, which are skipped above
        return Matrix.zero(ring, nrows, 0)
    if len(body) != nrows:
        where = body[nrows][0] if len(body) > nrows else (body[-1][0] + 1 if body else n + 1)
        raise ParseError(f"expected {nrows} rows, found {len(body)}", where, 1)
    rows = []
    for ln, line in body:
        entries = _split_entries(line)
        if len(entries) != ncols:
            raise ParseError(f"expected {ncols} entries, found {len(entries)}", ln, entries[min(ncols, len(entries) - 1)][1] + 1 if entries else 1)
        rows.append([_parse_entry(ring, e, ln, c) for e, c in entries])
    return Matrix(ring, rows, nrows, ncols)


def _parse_entry(ring, text, line, col):
    from .rings import _ExprParser

    if not text:
        raise ParseError("empty matrix entry", line, col + 1)
    return _ExprParser(text, ring, line, col).parse()


def parse_inline_matrix(text, ring, line=None, col=0, ncols=None):
    """Parse ``[[a, b], [c, d]]``; ``[]`` needs ``ncols``."""
    s = text.strip()
    offset = col + len(text) - len(text.lstrip())
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("expected a matrix in brackets like [[1, 2], [3, 4]]", line, offset + 1)
    inner = s[1:-1]
    rows = []
    depth, start = 0, None
    for k, ch in enumerate(inner):
        if ch == "[":
            if depth:
                raise ParseError("nested brackets inside a matrix row", line, offset + k + 2)
            depth, start = 1, k + 1
        elif ch == "]":
            if not depth:
                raise ParseError("unbalanced ']'", line, offset + k + 2)
            depth = 0
            row_text = inner[start:k]
            base = offset + 1 + start
            entries = [] if not row_text.strip() else _split_by_comma(row_text)
            rows.append([_parse_entry(ring, e, line, base + c) for e, c in entries])
        elif not depth and ch not in " ,\t":
            raise ParseError(f"unexpected {ch!r} between matrix rows", line, offset + k + 2)
    if depth:
        raise ParseError("unterminated matrix row", line, offset + len(s))
    if not rows:
        if ncols is None:
            raise ParseError("an empty matrix needs a known column count", line, offset + 1)
        return Matrix.zero(ring, 0, ncols)
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("matrix rows have different lengths", line, offset + 1)
    if ncols is not None and widths != {ncols}:
        raise ParseError(f"expected rows of length {ncols}", line, offset + 1)
    return Matrix(ring, rows, len(rows), widths.pop())


def _split_by_comma(text):
    out, pos = [], 0
    for chunk in text.split(","):
        lead = len(chunk) - len(chunk.lstrip())
        out.append((chunk.strip(), pos + lead))
        pos += len(chunk) + 1
    return out


# -- presentations ----------------------------------------------------------------------


def format_presentation(M, factors=True):
    rel = M.rel
    ring = rel.ring
    lines = [f"presentation over {ring}: generators {rel.ncols}, relations matrix {rel.nrows}x{rel.ncols}",
             format_matrix(rel)]
    if factors and isinstance(ring, IntegerRing):
        lines.append("invariant_factors: " + _factors(M))
    return "\n".join(lines)


def _factors(M):
    from .fpfunctors import format_factors, invariant_factors

    return format_factors(invariant_factors(M))


def format_module(M, fmt="presentation"):
    ring = M.rel.ring
    if fmt == "factors" and isinstance(ring, (IntegerRing, RationalField)):
        return "invariant_factors: " + _factors(M)
    return format_presentation(M)


def format_module_map(f, fmt="presentation"):
    lines = [f"morphism over {f.mor.ring}: generators {f.mor.nrows} -> generators {f.mor.ncols}",
             "source " + format_module(f.source, fmt),
             "range " + format_module(f.range, fmt),
             "matrix", format_matrix(f.mor)]
    if fmt == "witnesses":
        lines += ["witness", format_matrix(f.witness)]
    return "\n".join(lines)


def format_functor(F):
    """Canonical printing of an fp functor through its relation morphism F -> R_F."""
    u = F.rel.u
    ring = u.mor.ring
    return "\n".join([
        f"functor over {ring}: relation morphism {u.mor.nrows}x{u.mor.ncols}",
        "generators " + format_presentation(u.source, factors=False),
        "relations " + format_presentation(u.range, factors=False),
        "matrix", format_matrix(u.mor),
    ])


# -- documents --------------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"


class Document:
    """Declarations of a ring, modules, maps, functors and complexes, plus one query line."""

    def __init__(self, ring=None, order="degrevlex"):
        self.ring = ring
        self.order = order
        self.modules = {}
        self.maps = {}
        self.functors = {}
        self.complexes = {}
        self.filters = {}
        self.query = None
        self.query_line = None
        self.ideal = None
        self.matrix = None


def split_args(text, line, col):
    """Split a comma-separated argument list at top-level commas; returns (arg, column) pairs."""
    out, depth, start = [], 0, 0
    for k, ch in enumerate(text + ","):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parenthesis", line, col + k + 1)
        elif ch == "," and depth == 0:
            piece = text[start:k]
            lead = len(piece) - len(piece.lstrip())
            if piece.strip():
                out.append((piece.strip(), col + start + lead))
            start = k + 1
    if depth:
        raise ParseError("unbalanced parenthesis", line, col + len(text))
    return out


def parse_document(text, ring=None, order="degrevlex"):
    from .fpfunctors import fpmod, module

    doc = Document(ring, order)
    lines = text.splitlines()
    raw = [(n, l) for n, l in enumerate(lines, 1) if l.strip() and not l.strip().startswith("#")]
    # a bare matrix block (smith, syzygies, groebner on module rows)
    if raw and (re.fullmatch(r"\s*\d+\s+\d+\s*", raw[0][1])
                or (raw[0][1].strip().startswith("ring") and len(raw) > 1
                    and re.fullmatch(r"\s*\d+\s+\d+\s*", raw[1][1]))):
        doc.matrix = parse_matrix(text, ring, order)
        doc.ring = doc.matrix.ring
        return doc
    for n, line in raw:
        s = line.strip()
        col0 = len(line) - len(line.lstrip())
        word = s.split()[0]
        rest_col = col0 + len(word) + 1
        rest = s[len(word):].strip()
        if word == "ring":
            try:
                doc.ring = parse_ring(rest, order)
            except UsageError as e:
                raise ParseError(str(e), n, rest_col + 1) from None
            continue
        if doc.ring is None:
            raise ParseError("declare the ring first (a 'ring' line or --ring)", n, col0 + 1)
        R = doc.ring
        if word == "module":
            m = re.fullmatch(rf"({_NAME})\s*(?:over\s+(\S+)\s*)?[:=]\s*(.*)", rest)
            if not m:
                raise ParseError("expected 'module NAME = ...'", n, rest_col + 1)
            name, over, body = m.groups()
            if over is not None and parse_ring(over, order) != R:
                raise ParseError(f"module ring {over} differs from the document ring {R}", n, rest_col + 1)
            bcol = col0 + len(line.strip()) - len(body) if body else rest_col
            doc.modules[name] = _parse_module(body, R, n, bcol, module, fpmod)
        elif word == "map":
            m = re.fullmatch(rf"({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*=\s*(.*)", rest)
            if not m:
                raise ParseError("expected 'map NAME: M -> N = [[...]]'", n, rest_col + 1)
            name, a, b, body = m.groups()
            A, B = _lookup(doc.modules, a, "module", n, rest_col), _lookup(doc.modules, b, "module", n, rest_col)
            mat = parse_inline_matrix(body, R, n, col0 + len(line.strip()) - len(body), B.gens)
            if mat.nrows != A.gens:
                raise ParseError(f"map matrix needs {A.gens} rows", n, rest_col + 1)
            try:
                doc.maps[name] = A.category.morphism(A, B, mat)
            except UsageError as e:
                raise ParseError(str(e), n, rest_col + 1) from None
        elif word == "functor":
            m = re.fullmatch(rf"({_NAME})\s*=\s*(.*)", rest)
            if not m:
                raise ParseError("expected 'functor NAME = ...'", n, rest_col + 1)
            doc.functors[m.group(1)] = parse_functor(m.group(2), doc, n, rest_col)
        elif word == "complex":
            m = re.fullmatch(rf"({_NAME})\s*=\s*(.*?)(?:\s+at\s+(-?\d+))?", rest)
            if not m:
                raise ParseError("expected 'complex NAME = d0, d1, ... [at DEGREE]'", n, rest_col + 1)
            names = [a for a, _ in split_args(m.group(2), n, rest_col)]
            doc.complexes[m.group(1)] = ([_lookup(doc.maps, x, "map", n, rest_col) for x in names],
                                         int(m.group(3) or 0))
        elif word == "filter":
            m = re.fullmatch(rf"({_NAME})\s+(-?\d+)\s*(?:from\s+(-?\d+)\s*)?=\s*(.*)", rest)
            if not m:
                raise ParseError("expected 'filter COMPLEX DEGREE [from J] = e0, e1, ...'", n, rest_col + 1)
            names = [a for a, _ in split_args(m.group(4), n, rest_col)]
            embs = [_lookup(doc.maps, x, "map", n, rest_col) for x in names]
            doc.filters.setdefault(m.group(1), {})[int(m.group(2))] = (embs, int(m.group(3) or 0))
        elif word == "ideal":
            doc.ideal = [R.parse(a) for a, _ in split_args(rest, n, rest_col)]
        else:
            if doc.query is not None:
                raise ParseError("only one query line is allowed", n, col0 + 1)
            m = re.fullmatch(rf"({_NAME}|Ext\^\d+|Tor_\d+)\s*\((.*)\)", s)
            if not m:
                raise ParseError(f"unknown statement {word!r}", n, col0 + 1)
            doc.query = (m.group(1), split_args(m.group(2), n, col0 + len(m.group(1)) + 1))
            doc.query_line = n
    return doc


def _lookup(table, name, what, line, col):
    if name not in table:
        raise ParseError(f"unknown {what} {name!r}", line, col + 1)
    return table[name]


def _parse_module(body, R, line, col, module, fpmod):
    b = body.strip()
    m = re.fullmatch(r"(?:Z|ZZ)\s*/\s*(\d+)", b)
    if m:
        if not isinstance(R, IntegerRing):
            raise ParseError("Z/n needs ring Z", line, col + 1)
        return module(R, [[int(m.group(1))]])
    m = re.fullmatch(r"free\s+(\d+)", b) or re.fullmatch(r"\S+\^(\d+)", b)
    if m:
        return fpmod(R).free(int(m.group(1)))
    m = re.fullmatch(r"(?:generators\s+(\d+)\s+)?relations\s+(.*)", b)
    if m:
        ngens = int(m.group(1)) if m.group(1) else None
        mat = parse_inline_matrix(m.group(2), R, line, col + b.index(m.group(2)), ngens)
        return module(R, mat)
    raise ParseError("expected 'Z/n', 'free N' or '[generators N] relations [[...]]'", line, col + 1)


def parse_functor(text, doc, line, col):
    from . import fpfunctors as fp

    s = text.strip()
    if s in doc.functors:
        return doc.functors[s]
    m = re.fullmatch(rf"(Hom|Tensor|Ext\^(\d+)|Tor_(\d+))\s*\(\s*({_NAME})\s*(?:,\s*-\s*)?\)", s)
    if not m:
        raise ParseError(f"expected Hom(M,-), Ext^i(M,-), Tensor(M) or Tor_i(M,-), got {s!r}", line, col + 1)
    M = _lookup(doc.modules, m.group(4), "module", line, col)
    head = m.group(1)
    if head == "Hom":
        return fp.representable(M)
    if head == "Tensor":
        return fp.tensor_functor(M)
    if head.startswith("Ext"):
        return fp.ext_functor(M, int(m.group(2)))
    i = int(m.group(3))
    if i < 1:
        raise ParseError("Tor index must be at least 1", line, col + 1)
    return fp.tor_functor(M, i)
