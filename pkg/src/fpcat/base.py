"""Leaf categories: a commutative ring as a one-object category, and free Q-linear
categories of acyclic quivers."""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .category import Category, HomStructure
from .errors import ParseError, UsageError
from .groebner import normal_form
from .matrix import Matrix
from .rings import QQ

STAR = "*"


class RingMorphism:
    __slots__ = ("category", "value")

    source = STAR
    range = STAR

    def __init__(self, category, value):
        self.category = category
        self.value = value

    def __eq__(self, other):
        return isinstance(other, RingMorphism) and self.category == other.category and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"[{self.value}]"


class RingCat(Category):
    """The ring R viewed as a category with one object; composition is multiplication.

    When ``ideal`` (a reduced Groebner basis) is given, morphisms are compared
    modulo that ideal, which realizes the quotient ring R/I.
    """

    is_additive = False

    def __init__(self, ring, ideal=None):
        self.ring = ring
        self.ideal = ideal

    def __repr__(self):
        return f"RingCat({self.ring}{'' if self.ideal is None else ', I'})"

    def __eq__(self, other):
        return isinstance(other, RingCat) and self.ring == other.ring and self.ideal == other.ideal

    def __hash__(self):
        return hash(("RingCat", self.ring, self.ideal))

    def morphism(self, value):
        return RingMorphism(self, self.ring.coerce(value))

    def _check(self, A):
        if A != STAR:
            raise UsageError(f"{A!r} is not the object of {self}")

    def identity(self, A=STAR):
        self._check(A)
        return self.morphism(1)

    def compose(self, f, g):
        return RingMorphism(self, f.value * g.value)

    def reduce(self, a):
        return a if self.ideal is None else normal_form(a, self.ideal)

    def mor_eq(self, f, g):
        d = f.value - g.value
        return not self.reduce(d)

    def zero_morphism(self, A=STAR, B=STAR):
        self._check(A)
        self._check(B)
        return self.morphism(0)

    def add(self, f, g):
        return RingMorphism(self, f.value + g.value)

    def negate(self, f):
        return RingMorphism(self, -f.value)

    @property
    def hom_structure(self):
        return RingCatHom(self)


class RingCatHom(HomStructure):
    """H(*, *) = *, H(a, b) = a * b and nu = id."""

    def __init__(self, cat):
        self.source = self.target = cat
        self.one = STAR

    def H(self, A, B):
        return STAR

    def H_mor(self, alpha, beta):
        return self.source.compose(alpha, beta)

    def nu(self, f):
        return f

    def nu_inv(self, A, B, g):
        return g


@lru_cache(maxsize=None)
def ring_cat(ring, ideal=None):
    return RingCat(ring, ideal)


# -- quivers -------------------------------------------------------------------------

@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    range: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise UsageError("vertex names must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names) or set(names) & set(self.vertices):
            raise UsageError("arrow names must be distinct from each other and from vertices")
        for a in self.arrows:
            if a.source not in self.vertices or a.range not in self.vertices:
                raise UsageError(f"arrow {a.name} uses an unknown vertex")
        # Kahn's algorithm: every vertex must be removable
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.range] += 1
        ready = [v for v in self.vertices if not indeg[v]]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.range] -= 1
                    if not indeg[a.range]:
                        ready.append(a.range)
        if seen != len(self.vertices):
            raise UsageError("quiver has an oriented cycle")

    @classmethod
    def build(cls, vertices, arrows):
        """arrows: iterable of (name, source, range) triples."""
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise UsageError(f"no arrow named {name!r}")

    def arrow_index(self, name):
        return [a.name for a in self.arrows].index(name)

    def __str__(self):
        parts = ["quiver " + " ".join(self.vertices)]
        parts += [f"{a.name}: {a.source} -> {a.range}" for a in self.arrows]
        return "; ".join(parts)


def parse_quiver(text):
    """Parse ``quiver v1 v2 ...; a: v1 -> v2; ...``."""
    chunks = text.strip().split(";")
    head = chunks[0].split()
    if not head or head[0] != "quiver":
        raise ParseError("quiver description must start with 'quiver'", 1, 1)
    vertices = head[1:]
    arrows = []
    col = len(chunks[0]) + 2
    for chunk in chunks[1:]:
        if chunk.strip():
            m = re.fullmatch(r"\s*(\w+)\s*:\s*(\w+)\s*->\s*(\w+)\s*", chunk)
            if not m:
                raise ParseError(f"bad arrow declaration {chunk.strip()!r}", 1, col)
            arrows.append(m.groups())
        col += len(chunk) + 1
    return Quiver.build(vertices, arrows)


@lru_cache(maxsize=None)
def enumerate_paths(Q, v, w):
    """All paths v -> w ordered by length, then lexicographically by arrow index."""
    out = []

    def walk(at, path):
        if at == w:
            out.append(path)
        for a in Q.arrows:
            if a.source == at:
                walk(a.range, path + (a.name,))

    walk(v, ())
    return tuple(sorted(out, key=lambda p: (len(p), [Q.arrow_index(n) for n in p])))


class PathLinearCombination:
    __slots__ = ("category", "source", "range", "terms")

    def __init__(self, category, source, range_, terms):
        self.category = category
        self.source = source
        self.range = range_
        self.terms = {p: Fraction(c) for p, c in terms.items() if c}
        Q = category.quiver
        for p in self.terms:
            at = source
            for name in p:
                a = Q.arrow(name)
                if a.source != at:
                    raise UsageError(f"path {'.'.join(p)} is not composable")
                at = a.range
            if at != range_:
                raise UsageError(f"path {'.'.join(p) or 'id'} does not run {source} -> {range_}")

    def __eq__(self, other):
        return (isinstance(other, PathLinearCombination) and self.source == other.source
                and self.range == other.range and self.terms == other.terms)

    def __hash__(self):
        return hash((self.source, self.range, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"0:{self.source}->{self.range}"
        return " + ".join(f"{c}*{'.'.join(p) or 'id_' + self.source}" for p, c in self.terms.items())


class QuiverCat(Category):
    """Free Q-linear category on an acyclic quiver."""

    def __init__(self, quiver, field=QQ):
        if field != QQ:
            raise UsageError("quiver categories are defined over Q")
        self.quiver = quiver
        self.field = field

    def __repr__(self):
        return f"QuiverCat({self.quiver})"

    def __eq__(self, other):
        return isinstance(other, QuiverCat) and self.quiver == other.quiver

    def __hash__(self):
        return hash(("QuiverCat", self.quiver))

    def morphism(self, source, range_, terms):
        """terms: {path tuple or 'a.b' string: coefficient}."""
        clean = {}
        for p, c in terms.items():
            if isinstance(p, str):
                p = tuple(x for x in p.split(".") if x)
            clean[tuple(p)] = clean.get(tuple(p), 0) + Fraction(c)
        return PathLinearCombination(self, source, range_, clean)

    def arrow(self, name):
        a = self.quiver.arrow(name)
        return self.morphism(a.source, a.range, {(name,): 1})

    def identity(self, A):
        if A not in self.quiver.vertices:
            raise UsageError(f"{A!r} is not a vertex")
        return PathLinearCombination(self, A, A, {(): 1})

    def compose(self, f, g):
        terms = {}
        for p, c in f.terms.items():
            for q, d in g.terms.items():
                terms[p + q] = terms.get(p + q, 0) + c * d
        return PathLinearCombination(self, f.source, g.range, terms)

    def mor_eq(self, f, g):
        return f.terms == g.terms

    def zero_morphism(self, A, B):
        return PathLinearCombination(self, A, B, {})

    def add(self, f, g):
        terms = dict(f.terms)
        for p, c in g.terms.items():
            terms[p] = terms.get(p, 0) + c
        return PathLinearCombination(self, f.source, f.range, terms)

    def negate(self, f):
        return PathLinearCombination(self, f.source, f.range, {p: -c for p, c in f.terms.items()})

    @property
    def hom_structure(self):
        return QuiverHom(self)


class QuiverHom(HomStructure):
    """Rows_Q-valued structure: H(v, w) is the number of paths v -> w."""

    def __init__(self, cat):
        from .additive import rows

        self.source = cat
        self.target = rows(QQ)
        self.one = 1

    def H(self, A, B):
        return len(enumerate_paths(self.source.quiver, A, B))

    def H_mor(self, alpha, beta):
        Q = self.source.quiver
        src = enumerate_paths(Q, alpha.range, beta.source)
        dst = enumerate_paths(Q, alpha.source, beta.range)
        index = {p: k for k, p in enumerate(dst)}
        rows_ = []
        for x in src:
            row = [Fraction(0)] * len(dst)
            for p, c in alpha.terms.items():
                for q, d in beta.terms.items():
                    row[index[p + x + q]] += c * d
            rows_.append(tuple(row))
        return Matrix.raw(QQ, tuple(rows_), len(src), len(dst))

    def nu(self, f):
        basis = enumerate_paths(self.source.quiver, f.source, f.range)
        row = tuple(f.terms.get(p, Fraction(0)) for p in basis)
        return Matrix.raw(QQ, (row,), 1, len(basis))

    def nu_inv(self, A, B, g):
        basis = enumerate_paths(self.source.quiver, A, B)
        if g.shape != (1, len(basis)):
            raise UsageError("coefficient row does not match the path basis")
        return PathLinearCombination(self.source, A, B, dict(zip(basis, g.rows[0])))
