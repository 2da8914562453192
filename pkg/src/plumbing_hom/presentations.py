"""Closed-form descriptions and their Hilbert functions.

These are oracles: they never touch the path algebra.  Type A rings come
from the generators x_i, y_i, z_i and the relations z^k, x^2 - y z^l; the
morphism spaces between different vertices are the End(L_j)-modules
generated by U_ij and V_ij, truncated in z by the rise criterion for
u-paths.  The E_6 rings are the six listed presentations, with the
noncommutative factor at the trivalent vertex handled by
:func:`noncommutative_hilbert`.
"""

from dataclasses import dataclass, field
from itertools import product

from .linalg import RowEchelon


class NotTypeA(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    vertex: int
    generators: dict          # name -> degree
    relations: tuple          # human-readable
    k: int
    l: int
    self_dual: bool           # i == phi(i): x is invertible on the quotient side
    notes: tuple = field(default=())

    def monomials(self, degree, side="wrapped"):
        """Exponents (a, eps, b) of z^a x^eps y^b spanning the given degree."""
        xd, yd = self.generators["x"], self.generators["y"]
        out = []
        for a in range(self.k):
            for eps in (0, 1):
                rest = degree + a - eps * xd
                if rest % yd:
                    continue
                b = rest // yd
                if side == "wrapped" and b < 0:
                    continue
                out.append((a, eps, b))
        return out

    def hilbert(self, degree, side="wrapped"):
        return len(self.monomials(degree, side))


def _require_a(q):
    if q.series != "A":
        raise NotTypeA(f"{q.name} is not of type A")


def closed_form_presentation(q, i):
    """Generators, relations and numerical invariants of End(L_i) for A_n."""
    _require_a(q)
    n = q.rank
    phi_i = n + 1 - i
    k = min(n - i, i - 1) + 1
    l = abs(phi_i - i)
    gens = {"x": min(n - i, i - 1) - n - 1, "y": -n - 3, "z": -1}
    rels = (f"z^{k}", f"x^2 - y*z^{l}" if l else "x^2 - y")
    notes = ()
    if l == 0:
        notes = (f"y = x^2, so the ring is K[x, z]/(z^{k})",)
    return Presentation(i, gens, rels, k, l, l == 0, notes)


def _rise_count(n, c, j):
    return max(0, min(n - c, j - 1) - max(0, j - c) + 1)


def type_a_hilbert(q, i, j, degree, side="wrapped"):
    """dim Hom^degree(L_i, L_j) from the presentations.

    ``side="wrapped"`` is K Omega / J (y^b with b >= 0); ``"quotient"`` is
    K Omega-bar / J-bar (y invertible).
    """
    _require_a(q)
    n = q.rank
    if i == j:
        return closed_form_presentation(q, i).hilbert(degree, side)
    yd = -n - 3
    phi_i = n + 1 - i
    # U_ij: all-increasing or all-decreasing, degree -(number of decreasing arrows)
    u_deg = -max(0, i - j)
    v_deg = -max(0, phi_i - j) - i - 1      # U_{phi(i), j} v_{i, phi(i)}, N(i) = i
    count = 0
    for gen_deg, zcap in ((u_deg, _rise_count(n, i, j)), (v_deg, _rise_count(n, phi_i, j))):
        for a in range(zcap):
            rest = degree - gen_deg + a
            if rest % yd == 0 and (side == "quotient" or rest // yd >= 0):
                count += 1
    return count


# --- noncommutative Hilbert series ---------------------------------------

def noncommutative_hilbert(generators, relations, max_length=40):
    """Graded dimensions of K<generators> / (relations), by word length.

    ``relations`` are dicts {tuple of generator names: coeff}, each
    homogeneous in word length.  Returns {length: dim} for the lengths up to
    the first vanishing one (after which every piece vanishes).
    """
    gens = sorted(generators)
    rels = [(len(next(iter(r))), r) for r in relations]
    dims = {}
    for length in range(max_length + 1):
        words = list(product(gens, repeat=length))
        ech = RowEchelon()
        for rl, r in rels:
            if rl > length:
                continue
            for left in range(length - rl + 1):
                right = length - rl - left
                for u in product(gens, repeat=left):
                    for w in product(gens, repeat=right):
                        ech.add({u + m + w: c for m, c in r.items()})
        dims[length] = len(words) - len(ech)
        if dims[length] == 0:
            return dims
    raise RuntimeError("algebra did not become zero within max_length")


# --- E_6 -----------------------------------------------------------------

E6_RINGS = {
    1: "K[x, y^(+-1)]/(x^2), |x| = -9, |y| = -14",
    2: "K[x^(+-1)], |x| = -7",
    3: "K[x, y^(+-1), z]/(z^2, x^2), |x| = -8, |y| = -14, |z| = -1",
    4: "K<x^(+-1), z, w>/(xz - zx, xw - wx, z^3, w^3, (z - w)^2), |x| = -7, |z| = |w| = -1",
    5: "K[x, y^(+-1), z]/(z^2, x^2), |x| = -8, |y| = -14, |z| = -1",
    6: "K[x, y^(+-1)]/(x^2), |x| = -9, |y| = -14",
}


def _e6_vertex4_finite_part():
    rels = [
        {("z", "z", "z"): 1},
        {("w", "w", "w"): 1},
        {("z", "z"): 1, ("z", "w"): -1, ("w", "z"): -1, ("w", "w"): 1},
    ]
    return noncommutative_hilbert({"z": -1, "w": -1}, rels)


def _laurent_count(degree, finite, period):
    """Number of (f, b) with b in Z and f + b * period == degree, f over ``finite`` {deg: dim}."""
    total = 0
    for fdeg, dim in finite.items():
        rest = degree - fdeg
        if rest % period == 0:
            total += dim
    return total


def e6_ring_dims(vertex, degree):
    """Graded dimension of the listed E_6 ring at ``vertex``."""
    if vertex in (1, 6):
        return _laurent_count(degree, {0: 1, -9: 1}, -14)
    if vertex == 2:
        return _laurent_count(degree, {0: 1}, -7)
    if vertex in (3, 5):
        return _laurent_count(degree, {0: 1, -1: 1, -8: 1, -9: 1}, -14)
    if vertex == 4:
        finite = {-length: d for length, d in _e6_vertex4_finite_part().items() if d}
        return _laurent_count(degree, finite, -7)
    raise ValueError(f"E_6 has no vertex {vertex}")

