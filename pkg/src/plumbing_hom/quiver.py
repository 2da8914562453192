"""ADE Dynkin quivers and the graded quivers derived from them.

Vertex labels follow Bourbaki-style numbering: A_n is the path 1-2-...-n,
D_n has tail 1..n-2 with fork tips n-1 and n, E_n has long arm
1-3-4-...-n with the short branch 2 attached to 4.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .linalg import inverse, matmul, transpose
from .paths import Arrow, GradedElement, GradedQuiver, Path


class QuiverError(ValueError):
    pass


class NonDynkinShape(QuiverError):
    pass


class DuplicateEdge(QuiverError):
    pass


class OrientationNotPhiCompatible(QuiverError):
    pass


class ConventionFailure(RuntimeError):
    pass


def dynkin_edges(series, rank):
    """Undirected edge set of the Dynkin tree, as sorted pairs."""
    if series == "A" and rank >= 1:
        return {(i, i + 1) for i in range(1, rank)}
    if series == "D" and rank >= 4:
        tail = {(i, i + 1) for i in range(1, rank - 2)}
        return tail | {(rank - 2, rank - 1), (rank - 2, rank)}
    if series == "E" and rank in (6, 7, 8):
        return {(1, 3), (2, 4)} | {(i, i + 1) for i in range(3, rank)}
    raise NonDynkinShape(f"no Dynkin diagram {series}{rank}")


def coxeter_number(series, rank):
    if series == "A":
        return rank + 1
    if series == "D":
        return 2 * rank - 2
    return {6: 12, 7: 18, 8: 30}[rank]


@dataclass(frozen=True)
class DynkinQuiver:
    series: str
    rank: int
    arrows: tuple  # ((src, dst), ...)

    @property
    def name(self):
        return f"{self.series}{self.rank}"

    @property
    def vertices(self):
        return tuple(range(1, self.rank + 1))

    @property
    def coxeter_number(self):
        return coxeter_number(self.series, self.rank)

    def neighbours(self, v):
        return sorted({b for a, b in self.arrows if a == v} | {a for a, b in self.arrows if b == v})


def build_dynkin(series, rank, orientation=None):
    """Validate an orientation of the Dynkin tree ``series``/``rank``.

    ``orientation`` is a list of (src, dst) pairs; ``None`` orients every
    edge from the smaller to the larger label (linear A_n, and the E_6 labelling with 4 trivalent).
    """
    series = series.upper()
    edges = dynkin_edges(series, rank)
    if orientation is None:
        orientation = sorted(edges)
    arrows = tuple((int(a), int(b)) for a, b in orientation)
    seen = set()
    for a, b in arrows:
        e = (min(a, b), max(a, b))
        if e in seen:
            raise DuplicateEdge(f"edge {a}-{b} given twice")
        if e not in edges:
            raise NonDynkinShape(f"{a}-{b} is not an edge of {series}{rank}")
        seen.add(e)
    if seen != edges:
        raise NonDynkinShape(f"missing edges {sorted(edges - seen)} of {series}{rank}")
    return DynkinQuiver(series, rank, tuple(sorted(arrows)))


def parse_quiver_name(text):
    """``"A5"`` -> ``build_dynkin("A", 5)``."""
    text = text.strip().upper()
    if len(text) < 2 or text[0] not in "ADE" or not text[1:].isdigit():
        raise NonDynkinShape(f"cannot parse quiver name {text!r}")
    return build_dynkin(text[0], int(text[1:]))


def quiver_from_config(cfg):
    """Build from the JSON config ``{"series", "rank", "arrows"?}``."""
    try:
        series, rank = cfg["series"], int(cfg["rank"])
    except (KeyError, TypeError, ValueError) as exc:
        raise QuiverError(f"bad quiver config: {exc}") from None
    return build_dynkin(series, rank, cfg.get("arrows"))


def quiver_to_config(q):
    return {"series": q.series, "rank": q.rank, "arrows": [list(a) for a in q.arrows]}


# --- involution -----------------------------------------------------------

def tree_automorphisms(series, rank):
    """All vertex permutations preserving the undirected Dynkin tree (brute force)."""
    edges = dynkin_edges(series, rank)
    verts = list(range(1, rank + 1))
    out = []
    for perm in permutations(verts):
        m = dict(zip(verts, perm))
        if {tuple(sorted((m[a], m[b]))) for a, b in edges} == edges:
            out.append(m)
    return out


def vertex_involution(series, rank):
    if series == "A":
        return {i: rank + 1 - i for i in range(1, rank + 1)}
    phi = {i: i for i in range(1, rank + 1)}
    if series == "D" and rank % 2 == 1:
        phi[rank - 1], phi[rank] = rank, rank - 1
    elif series == "E" and rank == 6:
        phi.update({1: 6, 6: 1, 3: 5, 5: 3})
    return phi


@dataclass(frozen=True)
class Involution:
    """The diagram involution on vertices, with signs for its action on Q-bar arrows.

    phi sends the Q-bar arrow ``(i, j)`` to ``(phi(i), phi(j))``;
    ``sign[(i, j)]`` is the scalar in the commutation relation
    ``u(i,j) v - sign * v u(phi(i),phi(j))``.
    """

    vertex_map: dict
    sign: dict

    def __call__(self, v):
        return self.vertex_map[v]

    def arrow(self, i, j):
        return self.vertex_map[i], self.vertex_map[j]

    @property
    def is_identity(self):
        return all(k == v for k, v in self.vertex_map.items())


def involution(q: DynkinQuiver, flip=None) -> Involution:
    """The type-determined involution, signed so that it preserves the vertex relations.

    phi maps each vertex relation to ``flip`` times the relation at the image
    vertex (``flip`` is a single global +-1).  That forces, on every edge,
    the product of the two arrow signs to be ``flip`` if phi preserves the
    edge's orientation and ``-flip`` if it reverses it.  ``flip`` defaults to
    whichever value needs fewer -1 signs (ties: -1), so linear A_n and any
    orientation with phi = id get all signs +1.  Signs are constant on
    phi-orbits of arrows, which keeps ``v(phi(i),i) v(i,phi(i))`` central.

    Raises OrientationNotPhiCompatible if a commutation relation would not
    be homogeneous.
    """
    phi = vertex_involution(q.series, q.rank)
    arrows = set(q.arrows)
    reversed_ = {e: (phi[e[1]], phi[e[0]]) in arrows for e in q.arrows}
    if flip is None:
        n_rev = sum(reversed_.values())
        flip = -1 if n_rev >= len(q.arrows) - n_rev else 1
    sign = {}
    for (a, b), rev in sorted(reversed_.items()):
        if (a, b) in sign:
            continue
        product = -flip if rev else flip
        image = (phi[a], phi[b])
        if image in ((a, b), (b, a)) and image != (a, b):
            # phi swaps the endpoints: u(a,b) <-> u(b,a)
            if product != 1:
                raise OrientationNotPhiCompatible(
                    f"{q.name}: edge {a}-{b} is flipped by phi but needs sign product {product}")
            sign[(a, b)] = sign[(b, a)] = 1
            continue
        star = -1 if product == -1 else 1
        for s, t in ((a, b), (b, a)):
            val = 1 if (s, t) == (a, b) else star
            sign[(s, t)] = val
            sign[(phi[s], phi[t])] = val
    shifts = shift_exponents(q)
    for a, b in q.arrows:
        for s, t in ((a, b), (b, a)):
            lhs = _ubar_degree(arrows, s, t) - shifts[phi[s]]
            rhs = _ubar_degree(arrows, phi[s], phi[t]) - shifts[phi[t]]
            if lhs != rhs:
                raise OrientationNotPhiCompatible(
                    f"{q.name} orientation {list(q.arrows)}: relation for u({s},{t}) is not homogeneous")
    return Involution(phi, sign)


def _ubar_degree(arrows, s, t):
    return 0 if (s, t) in arrows else -1


# --- Coxeter transformation and shift exponents -----------------------------

@dataclass(frozen=True)
class CoxeterData:
    cartan: tuple       # C[i][j] = number of directed paths i -> j (0-based rows/cols)
    coxeter: tuple      # Phi = -C^T C^{-1}
    coxeter_inverse: tuple
    proj_roots: tuple   # dim P_i, the i-th column of C


def _reach(q):
    succ = {v: [b for a, b in q.arrows if a == v] for v in q.vertices}
    reach = {}
    for v in q.vertices:
        seen, stack = {v}, [v]
        while stack:
            for w in succ[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        reach[v] = seen
    return reach


def coxeter_data(q: DynkinQuiver) -> CoxeterData:
    n = q.rank
    reach = _reach(q)
    cartan = [[1 if (j + 1) in reach[i + 1] else 0 for j in range(n)] for i in range(n)]
    cinv = inverse(cartan)
    phi = [[-x for x in row] for row in matmul(transpose(cartan), cinv)]
    phi_inv = inverse(phi)
    as_int = lambda m: tuple(tuple(int(x) for x in row) for row in m)
    for m in (phi, phi_inv):
        if any(Fraction(x).denominator != 1 for row in m for x in row):
            raise ConventionFailure("Coxeter matrix is not integral")
    proj = tuple(tuple(cartan[r][c] for r in range(n)) for c in range(n))
    return CoxeterData(as_int(cartan), as_int(phi), as_int(phi_inv), proj)


def inverse_ar_step(cox: CoxeterData, obj):
    """One application of tau^{-1} to an indecomposable ``(root, shift)`` of D^b(KQ)."""
    root, shift = obj
    m = cox.coxeter_inverse
    image = tuple(sum(m[r][c] * root[c] for c in range(len(root))) for r in range(len(root)))
    if all(x >= 0 for x in image):
        return image, shift
    if all(x <= 0 for x in image):
        return tuple(-x for x in image), shift + 1
    raise ConventionFailure(f"tau^-1 of {root} is not a root: {image}")


def compute_shift_exponent(q: DynkinQuiver, i, cox=None):
    """Least N >= 1 with tau^{-N} P_{phi(i)} = P_i[1]."""
    cox = cox or coxeter_data(q)
    phi = vertex_involution(q.series, q.rank)
    obj = (cox.proj_roots[phi[i] - 1], 0)
    target = (cox.proj_roots[i - 1], 1)
    for n in range(1, 2 * q.coxeter_number + 1):
        obj = inverse_ar_step(cox, obj)
        if obj == target:
            return n
    raise ConventionFailure(f"no shift exponent for vertex {i} of {q.name}")


def shift_exponents(q: DynkinQuiver):
    cox = coxeter_data(q)
    return {i: compute_shift_exponent(q, i, cox) for i in q.vertices}


# --- derived graded quivers -----------------------------------------------

def u_name(i, j):
    return f"u({i},{j})"


def v_name(i, j):
    return f"v({i},{j})"


def vinv_name(i, j):
    return f"vinv({i},{j})"


def t_name(i):
    return f"t({i})"


def _qbar_arrows(q):
    out = []
    for a, b in q.arrows:
        out.append(Arrow(u_name(a, b), a, b, 0, "u"))
        out.append(Arrow(u_name(b, a), b, a, -1, "ustar"))
    return out


def vertex_relation(quiver, q, i):
    """sum over a: i->j of a* a  minus  sum over b: k->i of b b*  (loops at i, degree -1)."""
    terms = {}
    for a, b in q.arrows:
        if a == i:
            terms[Path.of(quiver, [u_name(a, b), u_name(b, a)])] = 1
        elif b == i:
            terms[Path.of(quiver, [u_name(b, a), u_name(a, b)])] = -1
    return GradedElement(terms, i, i, -1)


@dataclass(frozen=True)
class OmegaData:
    """Omega_Q (or Omega-bar_Q) with its relation generators and the data used to build it."""

    dynkin: DynkinQuiver
    quiver: GradedQuiver
    relations: tuple
    phi: Involution
    shifts: dict
    with_inverses: bool = False

    def v_arrow(self, i):
        return self.quiver[v_name(i, self.phi(i))]

    def vinv_arrow(self, i):
        return self.quiver[vinv_name(i, self.phi(i))]


def build_omega(q: DynkinQuiver, flip=None) -> OmegaData:
    """Omega_Q: Q-bar plus v(i, phi(i)) of degree -N(i)-1, with the ideal J."""
    phi = involution(q, flip)
    shifts = shift_exponents(q)
    arrows = _qbar_arrows(q)
    for i in q.vertices:
        arrows.append(Arrow(v_name(i, phi(i)), i, phi(i), -shifts[i] - 1, "v"))
    quiver = GradedQuiver(q.vertices, arrows)
    rels = [vertex_relation(quiver, q, i) for i in q.vertices]
    for a, b in q.arrows:
        for s, t in ((a, b), (b, a)):
            ps, pt = phi(s), phi(t)
            lhs = Path.of(quiver, [v_name(ps, s), u_name(s, t)])
            rhs = Path.of(quiver, [u_name(ps, pt), v_name(pt, t)])
            rels.append(GradedElement({lhs: 1, rhs: -phi.sign[(s, t)]}))
    return OmegaData(q, quiver, tuple(rels), phi, shifts)


def build_omega_bar(omega: OmegaData) -> OmegaData:
    """Omega-bar_Q: add vinv(i, phi(i)): phi(i) -> i of degree N(i)+1 and the inverse relations."""
    phi, q = omega.phi, omega.dynkin
    arrows = list(omega.quiver.arrows)
    for i in q.vertices:
        arrows.append(Arrow(vinv_name(i, phi(i)), phi(i), i, omega.shifts[i] + 1, "vinv"))
    quiver = GradedQuiver(q.vertices, arrows)
    rels = list(omega.relations)
    for i in q.vertices:
        v, w = v_name(i, phi(i)), vinv_name(i, phi(i))
        rels.append(GradedElement({Path.of(quiver, [v, w]): 1, Path.idempotent(i): -1}))
        rels.append(GradedElement({Path.of(quiver, [w, v]): 1, Path.idempotent(phi(i)): -1}))
    return OmegaData(q, quiver, tuple(rels), phi, omega.shifts, with_inverses=True)


@dataclass(frozen=True)
class GinzburgData:
    dynkin: DynkinQuiver
    quiver: GradedQuiver
    differential: dict  # arrow name -> GradedElement (degree +1) or None for zero


def build_ginzburg(q: DynkinQuiver) -> GinzburgData:
    """Q-hat with dt_i = sum a* a - sum b b*; d vanishes on the other arrows."""
    arrows = _qbar_arrows(q) + [Arrow(t_name(i), i, i, -2, "t") for i in q.vertices]
    quiver = GradedQuiver(q.vertices, arrows)
    diff = {a.name: None for a in arrows}
    for i in q.vertices:
        diff[t_name(i)] = vertex_relation(quiver, q, i)
    return GinzburgData(q, quiver, diff)
