"""Degreewise linear algebra on graded path algebras with relations.

Two independent routes compute ``e_j (KQ/I) e_i`` in a fixed degree:

* the dense route (:func:`enumerate_paths`, :func:`ideal_subspace`,
  :func:`hom_dim`) lists every path of the degree and eliminates the span
  of all ``p r q``;
* :class:`QuadraticQuotient` exploits that every generator of J is a
  combination of length-2 paths and builds the quotient one path length at
  a time, keeping only normal words.  It is the fast route used for large
  windows.

Both pick pivots as the lexicographically largest path, so their bases
(the standard words) coincide.
"""

import threading
from collections import defaultdict
from fractions import Fraction

from .linalg import RowEchelon, add_scaled
from .paths import GradedElement, NotComposable, Path


class ZeroDegreeCycle(ValueError):
    pass


class NotQuadratic(ValueError):
    pass


def _pivot_key(path):
    return path.arrows


def _check_no_zero_cycles(quiver):
    """Reject quivers with a directed cycle made of degree-0 arrows."""
    succ = defaultdict(list)
    for a in quiver.arrows:
        if a.degree == 0:
            succ[a.source].append(a.target)
    state = {}

    def visit(v):
        state[v] = 1
        for w in succ[v]:
            if state.get(w) == 1 or (w not in state and visit(w)):
                return True
        state[v] = 2
        return False

    if any(v not in state and visit(v) for v in quiver.vertices):
        raise ZeroDegreeCycle("quiver has a degree-0 cycle; use the quotient-side machinery")
    if any(a.degree > 0 for a in quiver.arrows):
        raise ZeroDegreeCycle("quiver has positive-degree arrows; path spaces are infinite")


def paths_from(quiver, source, min_degree):
    """All paths from ``source`` with degree >= ``min_degree`` (all arrow degrees <= 0)."""
    _check_no_zero_cycles(quiver)
    out = []
    stack = [Path.idempotent(source)]
    while stack:
        p = stack.pop()
        out.append(p)
        for a in quiver.out_arrows(p.target):
            if p.degree + a.degree >= min_degree:
                stack.append(Path(p.arrows + (a.name,), p.source, a.target, p.degree + a.degree))
    return out


def enumerate_paths(quiver, source, target, degree):
    """Every path ``source -> target`` of exactly ``degree``, sorted by arrow names."""
    return sorted(p for p in paths_from(quiver, source, degree)
                  if p.target == target and p.degree == degree)


def ideal_subspace(quiver, relations, source, target, degree):
    """Echelon basis of the degree piece of the two-sided ideal, as a RowEchelon."""
    ech = RowEchelon(choose=max, key=_pivot_key)
    for r in relations:
        # p before r (ending at r.source) and q after r (starting at r.target)
        rest = degree - r.degree
        if rest > 0:
            continue
        befores = [p for v in quiver.vertices for p in paths_from(quiver, v, rest)
                   if p.target == r.source]
        afters = paths_from(quiver, r.target, rest)
        for p in befores:
            for q in afters:
                if p.source == source and q.target == target and p.degree + q.degree == rest:
                    elem = GradedElement.of(p).then(r).then(GradedElement.of(q))
                    ech.add(elem.terms)
    return ech


def hom_basis_dense(quiver, relations, source, target, degree):
    paths = enumerate_paths(quiver, source, target, degree)
    pivots = ideal_subspace(quiver, relations, source, target, degree).pivots()
    return [p for p in paths if p not in pivots]


def hom_dim_dense(quiver, relations, source, target, degree):
    """#paths minus the dimension of the ideal piece."""
    if degree > 0:
        return 0
    paths = enumerate_paths(quiver, source, target, degree)
    return len(paths) - len(ideal_subspace(quiver, relations, source, target, degree))


class QuadraticQuotient:
    """``KQ / I`` for I generated by length-2 relations, down to ``min_degree``.

    Level L holds the standard words of length L.  Level L is spanned by
    (standard word of length L-1) + arrow, modulo the images of the
    relations placed at the end of a standard word of length L-2; every
    other ideal element of length L already vanishes by induction.
    """

    def __init__(self, quiver, relations, min_degree):
        _check_no_zero_cycles(quiver)
        for r in relations:
            if any(len(p) != 2 for p in r.terms):
                raise NotQuadratic(f"relation {r} is not a combination of length-2 paths")
        self.quiver = quiver
        self.relations = tuple(relations)
        self.min_degree = min_degree
        self.levels = []   # level -> list of standard Paths
        self.nf = []       # level -> {candidate Path: {standard Path: coeff}}
        self._build()

    def _build(self):
        base = [Path.idempotent(v) for v in self.quiver.vertices]
        self.levels.append(base)
        self.nf.append({p: {p: Fraction(1)} for p in base})
        rels_at = defaultdict(list)
        for r in self.relations:
            rels_at[r.source].append(r)
        while self.levels[-1]:
            prev = self.levels[-1]
            cands = []
            for m in prev:
                for a in self.quiver.out_arrows(m.target):
                    if m.degree + a.degree >= self.min_degree:
                        cands.append(Path(m.arrows + (a.name,), m.source, a.target,
                                          m.degree + a.degree))
            blocks = defaultdict(lambda: RowEchelon(choose=max, key=_pivot_key))
            if len(self.levels) >= 2:
                prev_nf = self.nf[-1]
                for b in self.levels[-2]:
                    for r in rels_at[b.target]:
                        if b.degree + r.degree < self.min_degree:
                            continue
                        vec = {}
                        for term, c in r.terms.items():
                            x, y = term.arrows
                            bx = prev_nf[Path(b.arrows + (x,), b.source, self.quiver[x].target,
                                              b.degree + self.quiver[x].degree)]
                            for m, cm in bx.items():
                                key = Path(m.arrows + (y,), m.source, r.target,
                                           m.degree + self.quiver[y].degree)
                                vec[key] = vec.get(key, 0) + c * cm
                        vec = {k: v for k, v in vec.items() if v}
                        if vec:
                            blocks[(b.source, r.target, b.degree + r.degree)].add(vec)
            nf = {}
            std = []
            for c in cands:
                ech = blocks.get((c.source, c.target, c.degree))
                red = ech.reduce({c: Fraction(1)}) if ech else {c: Fraction(1)}
                nf[c] = red
                if ech is None or c not in ech.rows:
                    std.append(c)
            self.levels.append(std)
            self.nf.append(nf)
        self.levels.pop()
        self.nf.pop()
        self._index = defaultdict(list)
        for level in self.levels:
            for p in level:
                self._index[(p.source, p.target, p.degree)].append(p)
        for k in self._index:
            self._index[k].sort()

    def _check_degree(self, degree):
        if degree < self.min_degree:
            raise ValueError(f"degree {degree} below computed bound {self.min_degree}")

    def basis(self, source, target, degree):
        self._check_degree(degree)
        return list(self._index.get((source, target, degree), ()))

    def dim(self, source, target, degree):
        if degree > 0:
            return 0
        return len(self.basis(source, target, degree))

    def normal_form_path(self, path):
        """Coefficients of ``path`` on the standard words."""
        self._check_degree(path.degree)
        vec = {Path.idempotent(path.source): Fraction(1)}
        for depth, name in enumerate(path.arrows, start=1):
            a = self.quiver[name]
            new = {}
            for m, c in vec.items():
                if depth >= len(self.nf):
                    break
                key = Path(m.arrows + (name,), m.source, a.target, m.degree + a.degree)
                for s, cs in self.nf[depth][key].items():
                    new[s] = new.get(s, 0) + c * cs
            vec = {k: v for k, v in new.items() if v}
            if not vec:
                break
        return vec

    def normal_form(self, element: GradedElement) -> GradedElement:
        out = {}
        for p, c in element.terms.items():
            add_scaled(out, self.normal_form_path(p), c)
        return GradedElement(out, element.source, element.target, element.degree)

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        """``a`` first, then ``b``; the result in normal form."""
        if a.target != b.source:
            raise NotComposable(f"({a}) ends at {a.target}, ({b}) starts at {b.source}")
        return self.normal_form(a.then(b))


_cache = {}
_cache_lock = threading.Lock()


def quotient_engine(omega, min_degree):
    """Shared QuadraticQuotient for ``omega`` valid down to ``min_degree`` (write-once cache)."""
    key = id(omega)
    with _cache_lock:
        hit = _cache.get(key)
        if hit is not None and hit[0] is omega and hit[1].min_degree <= min_degree:
            return hit[1]
    engine = QuadraticQuotient(omega.quiver, omega.relations, min(min_degree, 0))
    with _cache_lock:
        hit = _cache.get(key)
        if hit is None or hit[0] is not omega or hit[1].min_degree > engine.min_degree:
            _cache[key] = (omega, engine)
        return _cache[key][1]


def hom_dim(omega, source, target, degree):
    """dim e_target (K Omega_Q / J)_degree e_source."""
    if degree > 0:
        return 0
    return quotient_engine(omega, degree).dim(source, target, degree)


def hom_basis(omega, source, target, degree):
    if degree > 0:
        return []
    return [GradedElement.of(p) for p in quotient_engine(omega, degree).basis(source, target, degree)]


def multiply(omega, a, b):
    """Product in K Omega_Q / J: ``a`` first, then ``b`` (written ``b a``)."""
    if a.target != b.source:
        raise NotComposable(f"({a}) ends at {a.target}, ({b}) starts at {b.source}")
    return quotient_engine(omega, a.degree + b.degree).multiply(a, b)
