"""Graded quivers, paths and homogeneous linear combinations of paths.

Paths are stored in traversal order (first arrow first).  The written
string form is the reverse, so ``str(path)`` of the traversal ``a, b``
reads ``"b a"``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping


class PathError(ValueError):
    pass


class NotComposable(PathError):
    pass


class NonHomogeneous(PathError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    degree: int
    kind: str  # 'u' (arrow of Q), 'ustar', 'v', 'vinv', 't'

    def __str__(self):
        return self.name


class GradedQuiver:
    """A quiver whose arrows carry integer degrees.  Immutable by convention."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self._by_name = {}
        for a in self.arrows:
            if a.name in self._by_name:
                raise PathError(f"duplicate arrow name {a.name}")
            self._by_name[a.name] = a
        self._out = {v: tuple(a for a in self.arrows if a.source == v) for v in self.vertices}
        self._in = {v: tuple(a for a in self.arrows if a.target == v) for v in self.vertices}

    def __getitem__(self, name) -> Arrow:
        return self._by_name[name]

    def __contains__(self, name):
        return name in self._by_name

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def __repr__(self):
        return f"GradedQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


@dataclass(frozen=True, order=True)
class Path:
    """A composable arrow sequence; the empty sequence is the idempotent at ``source``."""

    arrows: tuple
    source: int
    target: int
    degree: int

    @classmethod
    def idempotent(cls, v):
        return cls((), v, v, 0)

    @classmethod
    def of(cls, quiver, names, source=None):
        """Build from arrow names in traversal order."""
        names = tuple(names)
        if not names:
            if source is None:
                raise PathError("empty path needs an explicit vertex")
            return cls.idempotent(source)
        arrs = [quiver[n] for n in names]
        for a, b in zip(arrs, arrs[1:]):
            if a.target != b.source:
                raise NotComposable(f"{a.name} then {b.name}")
        if source is not None and arrs[0].source != source:
            raise NotComposable(f"path does not start at {source}")
        return cls(names, arrs[0].source, arrs[-1].target, sum(a.degree for a in arrs))

    @classmethod
    def parse(cls, quiver, text):
        """Parse a whitespace-separated path in written (right-to-left) order."""
        return cls.of(quiver, reversed(text.split()))

    def then(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise NotComposable(f"{self} then {other}")
        return Path(self.arrows + other.arrows, self.source, other.target,
                    self.degree + other.degree)

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e({self.source})"
        return " ".join(reversed(self.arrows))


@dataclass(frozen=True)
class GradedElement:
    """Finite rational combination of paths sharing endpoints and degree."""

    terms: Mapping
    source: int
    target: int
    degree: int
    _hash: int = field(default=0, compare=False, repr=False)

    def __init__(self, terms, source=None, target=None, degree=None):
        clean = {}
        for p, c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[p] = clean.get(p, 0) + c
                if not clean[p]:
                    del clean[p]
        for p in clean:
            if source is None:
                source, target, degree = p.source, p.target, p.degree
            elif (p.source, p.target, p.degree) != (source, target, degree):
                raise NonHomogeneous(f"{p} does not match ({source}->{target}, deg {degree})")
        if source is None:
            raise NonHomogeneous("zero element needs explicit endpoints and degree")
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_hash", hash(tuple(self.terms.items())))

    @classmethod
    def of(cls, path: Path, coeff=1):
        return cls({path: coeff}, path.source, path.target, path.degree)

    @classmethod
    def zero(cls, source, target, degree):
        return cls({}, source, target, degree)

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return self._hash

    def __add__(self, other):
        terms = dict(self.terms)
        for p, c in other.terms.items():
            terms[p] = terms.get(p, 0) + c
        return GradedElement(terms, self.source, self.target, self.degree)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GradedElement({p: c * v for p, v in self.terms.items()},
                             self.source, self.target, self.degree)

    def then(self, other):
        """Concatenate: ``self`` first, then ``other``."""
        if self.target != other.source:
            raise NotComposable(f"({self}) then ({other})")
        terms = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                pq = p.then(q)
                terms[pq] = terms.get(pq, 0) + c * d
        return GradedElement(terms, self.source, other.target, self.degree + other.degree)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for p, c in self.terms.items():
            if c == 1:
                out.append(f"+ {p}")
            elif c == -1:
                out.append(f"- {p}")
            else:
                out.append(f"{'+' if c > 0 else '-'} {abs(c)}*{p}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else s


def vector_of(element: GradedElement):
    return dict(element.terms)
