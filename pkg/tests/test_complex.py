import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from artinhom.complex import (
    BasedComplex, BoundaryError, HomologyGroup, add_into, check_boundary_squares_to_zero,
    homology, smith_normal_form,
)


def det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)) if m[0][j])


def determinantal_factors(m):
    """Invariant factors via gcds of k×k minors: d_k / d_{k-1}."""
    rows, cols = len(m), len(m[0]) if m else 0
    prev, out = 1, []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in itertools.combinations(range(rows), k):
            for C in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[m[i][j] for j in C] for i in R]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)
    assert smith_normal_form([[-1], [1]]) == ([1], 1)
    assert smith_normal_form([{0: 2}, {1: 4}]) == ([2, 4], 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_snf_matches_minor_gcds(m):
    factors, rank = smith_normal_form(m)
    assert factors == determinantal_factors(m)
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
    assert all(f > 0 for f in factors)


def squier_A2():
    return BasedComplex(
        {0: ["0"], 1: ["a", "b"], 2: ["ab"]},
        {"0": {}, "a": {}, "b": {}, "ab": {"b": 1, "a": -1}},
    )


def test_homology_squier_A2():
    h = homology(squier_A2())
    assert [str(g) for g in h.trimmed()] == ["Z", "Z"]
    assert h[2] == HomologyGroup(0)


def test_homology_torus():
    c = BasedComplex({0: ["0"], 1: ["a", "b"], 2: ["ab"]},
                     {"0": {}, "a": {}, "b": {}, "ab": {}})
    assert homology(c).bettis == (1, 2, 1)


def test_homology_point():
    assert [str(g) for g in homology(BasedComplex({0: ["pt"]}, {"pt": {}})).trimmed()] == ["Z"]


def test_torsion_rp2():
    # cellular RP^2: ∂e2 = 2 e1, ∂e1 = 0
    c = BasedComplex({0: ["v"], 1: ["e"], 2: ["f"]}, {"v": {}, "e": {}, "f": {"e": 2}})
    h = homology(c)
    assert str(h[1]) == "Z/2" and h[2].betti == 0


def test_boundary_check():
    assert check_boundary_squares_to_zero(squier_A2()) is None
    assert check_boundary_squares_to_zero(BasedComplex({0: ["pt"]}, {"pt": {}})) is None
    bad = BasedComplex({0: ["v"], 1: ["e"], 2: ["f"]}, {"v": {}, "e": {"v": 1}, "f": {"e": 1}})
    assert check_boundary_squares_to_zero(bad) == "f"
    with pytest.raises(BoundaryError):
        homology(bad)


def test_euler_characteristic():
    assert squier_A2().euler_characteristic() == 0


def test_add_into_cancels():
    s = {"a": 1}
    add_into(s, {"a": -1, "b": 2})
    assert s == {"b": 2}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=4))
def test_euler_characteristic_equals_alternating_betti_sum(rows):
    # C_2 -> C_1 -> C_0 with ∂_1 = 0, so ∂∂ = 0 for any ∂_2
    n2 = len(rows)
    c = BasedComplex(
        {0: ["p"], 1: ["e0", "e1", "e2"], 2: [f"f{i}" for i in range(n2)]},
        {"p": {}, "e0": {}, "e1": {}, "e2": {},
         **{f"f{i}": {f"e{j}": v for j, v in enumerate(r) if v} for i, r in enumerate(rows)}},
    )
    h = homology(c)
    assert sum((-1) ** n * h[n].betti for n in range(3)) == c.euler_characteristic()
