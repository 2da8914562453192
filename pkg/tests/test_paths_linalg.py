from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plumbing_hom.linalg import RowEchelon, determinant, inverse, matmul, rank
from plumbing_hom.paths import GradedElement, NonHomogeneous, NotComposable, Path, PathError
from plumbing_hom.quiver import build_dynkin, build_omega


@pytest.fixture(scope="module")
def a5():
    return build_omega(build_dynkin("A", 5)).quiver


def test_path_orders(a5):
    p = Path.parse(a5, "u(2,3) u(1,2)")
    assert p.arrows == ("u(1,2)", "u(2,3)")
    assert (p.source, p.target, p.degree) == (1, 3, 0)
    assert str(p) == "u(2,3) u(1,2)"
    assert str(Path.idempotent(4)) == "e(4)"
    assert Path.of(a5, [], source=2) == Path.idempotent(2)


def test_path_errors(a5):
    with pytest.raises(NotComposable):
        Path.of(a5, ["u(1,2)", "u(3,4)"])
    with pytest.raises(PathError):
        Path.of(a5, [])
    with pytest.raises(NotComposable):
        Path.of(a5, ["u(1,2)"]).then(Path.of(a5, ["u(3,4)"]))
    with pytest.raises(NotComposable):
        Path.of(a5, ["u(1,2)"], source=2)


def test_element_arithmetic(a5):
    x = GradedElement.of(Path.parse(a5, "u(2,1) u(1,2)"))
    y = GradedElement.of(Path.parse(a5, "u(3,2) u(2,3)"))
    with pytest.raises(NonHomogeneous):
        x + y
    z = y - GradedElement.of(Path.parse(a5, "u(3,2) u(2,3)"))
    assert not z and z.degree == -1 and str(z) == "0"
    w = GradedElement.of(Path.parse(a5, "u(1,2) u(2,1)"), 3)
    s = GradedElement.of(Path.parse(a5, "u(3,2) u(2,3)")) - w
    assert str(s) == "- 3*u(1,2) u(2,1) + u(3,2) u(2,3)"
    assert s.scale(0).terms == {}
    assert hash(s) == hash(GradedElement(dict(s.terms)))
    e = GradedElement.of(Path.idempotent(2))
    assert e.then(s) == s
    with pytest.raises(NonHomogeneous):
        GradedElement({})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_rank_matches_determinant_rule(rows):
    vecs = [{k: Fraction(v) for k, v in enumerate(r) if v} for r in rows]
    r = rank(vecs)
    assert r <= min(len(rows), 4)
    if len(rows) == 4:
        assert (determinant(rows) != 0) == (r == 4)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(rows):
    if determinant(rows) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(rows)
        return
    inv = inverse(rows)
    assert matmul(rows, inv) == [[int(i == j) for j in range(3)] for i in range(3)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4), max_size=6),
       st.dictionaries(st.integers(0, 5), st.integers(-4, 4), max_size=4))
def test_reduce_is_a_projection(rows, probe):
    ech = RowEchelon(choose=max)
    for r in rows:
        ech.add(r)
    red = ech.reduce(probe)
    assert ech.reduce(red) == red
    assert not set(red) & ech.pivots()
    # probe - red lies in the span
    diff = {k: Fraction(probe.get(k, 0)) - red.get(k, 0) for k in set(probe) | set(red)}
    assert not ech.reduce(diff)
