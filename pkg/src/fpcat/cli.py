"""Command line front end: one input document per run, exact deterministic output."""

import argparse
import sys

from . import fpfunctors as fp
from .errors import CapabilityError, UsageError
from .genmor import cohomology_induced, cohomology_object, snake_connecting
from .groebner import groebner
from .linalg import row_syzygies, smith_normal_form
from .matrix import Matrix
from .rings import IntegerRing, RationalField, parse_ring
from .specseq import FilteredComplex
from .textio import (format_functor, format_matrix, format_matrix_inline, format_module, format_module_map,
                     parse_document, parse_functor)

COMMANDS = ("homnat", "ext", "tor", "kernel", "cokernel", "snake", "cohomology", "specseq",
            "smith", "groebner", "syzygies")


class _Parser(argparse.ArgumentParser):
    # bad flags are usage errors (exit 1); exit 2 is reserved for capability errors
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="fpcat", description="Exact homological algebra over Q, Z and Q[x..].")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", default="-", help="input document (default: standard input)")
    p.add_argument("--ring", help="ring used when the document has no 'ring' line (Q, Z or Q[x,y,...])")
    p.add_argument("--format", choices=("presentation", "factors", "witnesses"), default="presentation")
    p.add_argument("--max-page", type=int, default=2, help="last spectral sequence page to print")
    p.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    return p


def _args(doc, name, count):
    if doc.query is None:
        raise UsageError(f"the document needs a query line '{name}(...)'")
    head, args = doc.query
    if isinstance(count, int):
        count = (count,)
    if len(args) not in count:
        raise UsageError(f"{head} expects {' or '.join(map(str, count))} arguments, got {len(args)}")
    return head, args


def _module_result(M, fmt):
    Mp = fp.prune(M)[0]
    return format_module(Mp, fmt)


def _named(table, name, what):
    if name not in table:
        raise UsageError(f"unknown {what} {name!r}")
    return table[name]


def cmd_homnat(doc, opts):
    _, args = _args(doc, "homnat", 2)
    F, G = (parse_functor(a, doc, doc.query_line, c) for a, c in args)
    return _module_result(fp.hom_nat(F, G), opts.format)


def _functor_query(doc, kind):
    head, args = _args(doc, kind, (1, 2))
    if head.startswith(("Ext^", "Tor_")):
        return parse_functor(f"{head}({args[0][0]},-)", doc, doc.query_line, args[0][1])
    M = _named(doc.modules, args[0][0], "module")
    i = int(args[1][0]) if len(args) == 2 else 1
    return fp.ext_functor(M, i) if kind == "ext" else fp.tor_functor(M, i)


def cmd_ext(doc, opts):
    return format_functor(_functor_query(doc, "ext"))


def cmd_tor(doc, opts):
    return format_functor(_functor_query(doc, "tor"))


def cmd_kernel(doc, opts):
    _, args = _args(doc, "kernel", 1)
    f = _named(doc.maps, args[0][0], "map")
    emb = f.category.kernel_embedding(f)
    if opts.format == "witnesses":
        return format_module_map(emb, opts.format)
    return _module_result(emb.source, opts.format)


def cmd_cokernel(doc, opts):
    _, args = _args(doc, "cokernel", 1)
    f = _named(doc.maps, args[0][0], "map")
    proj = f.category.cokernel_projection(f)
    if opts.format == "witnesses":
        return format_module_map(proj, opts.format)
    return _module_result(proj.range, opts.format)


def cmd_snake(doc, opts):
    _, args = _args(doc, "snake", 7)
    maps = [_named(doc.maps, a, "map") for a, _ in args]
    return format_module_map(snake_connecting(*maps), opts.format)


def cmd_cohomology(doc, opts):
    _, args = _args(doc, "cohomology", (2, 5))
    maps = [_named(doc.maps, a, "map") for a, _ in args]
    if len(maps) == 2:
        H, _, _ = cohomology_object(maps[0].category, *maps)
        return _module_result(H, opts.format)
    return format_module_map(cohomology_induced(*maps), opts.format)


def _entry(M, ring):
    if isinstance(ring, (IntegerRing, RationalField)):
        return fp.format_factors(fp.invariant_factors(M))
    rel = fp.prune(M)[0].rel
    return f"generators {rel.ncols}, relations {format_matrix_inline(rel) if rel.nrows else '[]'}"


def cmd_specseq(doc, opts):
    _, args = _args(doc, "specseq", 1)
    name = args[0][0]
    diffs, lo = _named(doc.complexes, name, "complex")
    if not diffs:
        raise UsageError("a complex needs at least one differential")
    cat = diffs[0].category
    objects = [diffs[0].source] + [d.range for d in diffs]
    filters = doc.filters.get(name, {})
    jlo = None
    chains = []
    for k, M in enumerate(objects):
        embs, start = filters.get(lo + k, ([cat.identity(M)], 0))
        if jlo is None:
            jlo = start
        elif start != jlo:
            raise UsageError("all filtrations must start at the same index")
        chains.append(embs)
    fc = FilteredComplex(cat, objects, diffs, chains, lo=lo, jlo=jlo)
    ring = doc.ring
    out = []
    for r in range(opts.max_page + 1):
        for p, q in fc.positions():
            out.append(f"E_{r}[{p}][{q}] = {_entry(fc.E(r, p, q), ring)}")
        for p, q in fc.positions():
            d = fc.differential(r, p, q)
            if not cat.is_zero(d):
                # matrices refer to the pruned presentations
                _, _, back = fp.prune(d.source)
                _, to, _ = fp.prune(d.range)
                d = cat.compose(cat.compose(back, d), to)
                out.append(f"d_{r}[{p}][{q}] = {format_matrix_inline(d.mor)}")
        if r < opts.max_page:
            for p, q in fc.positions():
                fc.page_turn(r, p, q)
    return "\n".join(out)


def cmd_smith(doc, opts):
    A = _matrix(doc)
    if not isinstance(A.ring, IntegerRing):
        raise CapabilityError(f"Smith normal form is only available over Z, not {A.ring}")
    S, U, V = smith_normal_form(A)
    diag = [S.rows[i][i] for i in range(min(S.nrows, S.ncols))]
    factors = [d for d in diag if d and d != 1]
    lines = ["invariant_factors: [" + ", ".join(map(str, factors)) + "]"]
    if opts.format != "factors":
        lines += ["S", format_matrix(S)]
    if opts.format == "witnesses":
        lines += ["U", format_matrix(U), "V", format_matrix(V)]
    return "\n".join(lines)


def cmd_groebner(doc, opts):
    if doc.ideal is not None:
        gb = groebner(doc.ideal, doc.ring)
        return "\n".join(g.format(compact=True) for g in gb) if len(gb) else "0"
    gb = groebner(_matrix(doc))
    return format_matrix(Matrix(doc.ring, list(gb.generators), len(gb), gb.rank))


def cmd_syzygies(doc, opts):
    return format_matrix(row_syzygies(_matrix(doc)))


def _matrix(doc):
    if doc.matrix is None:
        raise UsageError("this command expects a matrix block ('ring R', 'm n', then rows)")
    return doc.matrix


def _query_matches(head, command):
    if head == command:
        return True
    return (command, head[:4]) in (("ext", "Ext^"), ("tor", "Tor_"))


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        opts = build_parser().parse_args(argv)
        ring = parse_ring(opts.ring, opts.order) if opts.ring else None
        if opts.input == "-":
            text = sys.stdin.read()
        else:
            with open(opts.input, encoding="utf-8") as fh:
                text = fh.read()
        doc = parse_document(text, ring, opts.order)
        if doc.query is not None and not _query_matches(doc.query[0], opts.command):
            raise UsageError(f"query {doc.query[0]!r} does not match command {opts.command!r}")
        result = globals()["cmd_" + opts.command](doc, opts)
    except (UsageError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return 1
    except CapabilityError as e:
        print(f"capability error: {e}", file=stderr)
        return 2
    print(result, file=stdout)
    return 0


def main():
    sys.exit(run())
