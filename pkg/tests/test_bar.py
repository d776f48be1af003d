import pytest
from hypothesis import given, settings, strategies as st

from artinhom.bar import BarComplex, subset_chains, total_length
from artinhom.complex import add_into, check_boundary_squares_to_zero, homology
from artinhom.monoid import ArtinMonoid
from artinhom.morse import Kind, validate_matching
from conftest import system


def test_boundary_sign_convention(A2):
    bar = BarComplex(A2)
    cell = bar.parse("[ab|a]")
    assert bar.boundary(cell) == {bar.parse("[ab]"): 1, bar.parse("[aba]"): -1, bar.parse("[a]"): 1}
    assert bar.boundary(()) == {}
    assert bar.boundary(bar.parse("[a]")) == {}


def test_cell_census(A2):
    bar = BarComplex(A2)
    assert bar.enumerate_cells(0) == {0: [()]}
    assert len(bar.enumerate_cells(3)[1]) == 13


def test_truncation_is_a_complex(A2):
    assert check_boundary_squares_to_zero(BarComplex(A2).truncation(4)) is None


@pytest.mark.parametrize("cell, kind, partner", [
    ("[ab|a]", Kind.ESSENTIAL, None),
    ("[b|a]", Kind.COLLAPSIBLE, "[ba]"),
    ("[ba]", Kind.REDUNDANT, "[b|a]"),
])
def test_mu1_examples(A2, cell, kind, partner):
    bar = BarComplex(A2)
    c = bar.mu1_classify(bar.parse(cell))
    assert c.kind is kind
    assert (c.partner and bar.format(c.partner)) == partner


def test_mu1_essential_counts(A2, Iinf, A3):
    for M, ranks in ((A2, [1, 3, 2]), (Iinf, [1, 2])):
        ess = BarComplex(M).mu1_essentials()
        assert [len(ess[n]) for n in sorted(ess)] == ranks
    assert len(BarComplex(A3).mu1_essentials()[3]) == 6


def test_essentials_are_fixed_points(A3):
    bar = BarComplex(A3)
    for cells in bar.mu1_essentials().values():
        for cell in cells:
            assert bar.mu1_classify(cell).kind is Kind.ESSENTIAL
            assert bar.in_K(cell)
            assert bar.chain_to_cell(bar.cell_to_chain(cell)) == cell


def test_in_K(Iinf, A2):
    bar = BarComplex(Iinf)
    assert not bar.in_K(bar.parse("[a|b]"))
    assert bar.in_K(bar.parse("[a|a]"))
    assert BarComplex(A2).in_K(BarComplex(A2).parse("[ab|ba|a]"))


def test_d_theta1_on_degree_one_is_zero(A3):
    bar = BarComplex(A3)
    for cell in bar.mu1_essentials()[1]:
        assert bar.d_theta1(cell) == {}


def test_d_theta1_example(A2):
    bar = BarComplex(A2)
    cell = bar.parse("[ab|a]")
    engine = bar.reducer.theta_infinity(bar.boundary(cell))
    assert bar.d_theta1(cell) == engine
    # θ^∞ lands on essential cells only
    assert all(bar.mu1_classify(z).kind is Kind.ESSENTIAL for z in engine)


def test_mu1_morse_complex_homology(A2):
    h = homology(BarComplex(A2).mu1_morse_complex())
    assert [str(g) for g in h.trimmed()] == ["Z", "Z"]


def test_mu1_validation_L4(A2):
    bar = BarComplex(A2)
    cells = [c for cs in bar.enumerate_cells(4).values() for c in cs]
    rep = validate_matching(cells, len, bar.boundary, bar.mu1_classify,
                            height=bar.mu1_height, weight=total_length)
    assert rep.ok, rep.findings[:3]


def test_subset_chains():
    sf = [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})]
    chains = subset_chains(sf)
    assert [len(chains[n]) for n in sorted(chains)] == [1, 3, 2]


ENTRY = st.lists(st.integers(0, 2), min_size=1, max_size=3).map(tuple)


@settings(max_examples=80, deadline=None)
@given(st.lists(ENTRY, min_size=1, max_size=4))
def test_boundary_squares_to_zero_A3(entries):
    bar = BarComplex(ArtinMonoid(system("A3")))
    cell = tuple(bar.M.canonical(x) for x in entries)
    dd: dict = {}
    for z, c in bar.boundary(cell).items():
        add_into(dd, bar.boundary(z), c)
    assert dd == {}


@settings(max_examples=80, deadline=None)
@given(st.lists(ENTRY, min_size=1, max_size=4))
def test_mu1_partner_involution_A3(entries):
    bar = BarComplex(ArtinMonoid(system("A3")))
    cell = tuple(bar.M.canonical(x) for x in entries)
    c = bar.mu1_classify(cell)
    if c.kind is not Kind.ESSENTIAL:
        back = bar.mu1_classify(c.partner)
        assert back.partner == cell and back.kind is not c.kind
        assert len(c.partner) == len(cell) + (1 if c.kind is Kind.REDUNDANT else -1)
        assert total_length(c.partner) == total_length(cell)
