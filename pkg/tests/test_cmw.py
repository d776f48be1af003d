import pytest

from artinhom.bar import total_length
from artinhom.cmw import CMW, ClosureError, ClosureStatus, build_E, cmw_complex, parse_E_file
from artinhom.complex import check_boundary_squares_to_zero, homology
from artinhom.coxeter import InfiniteTypeError
from artinhom.morse import Kind, validate_matching
from conftest import w


@pytest.fixture(scope="module")
def cmw_A2(A2):
    return CMW(A2, build_E(A2))


def test_square_free_E_A2(A2):
    E = build_E(A2)
    assert E.status is ClosureStatus.VERIFIED
    assert {A2.format(x) for x in E.members} == {"a", "b", "ab", "ba", "aba"}


def test_explicit_missing_generator_fails(A2):
    E = build_E(A2, "explicit", explicit=[(0,)])
    assert E.status is ClosureStatus.FAILED and not E.usable
    with pytest.raises(ClosureError):
        CMW(A2, E)


def test_explicit_D_fails_on_complement(A2):
    E = build_E(A2, "explicit", explicit=[(0,), (1,), w(A2, "aba")])
    assert E.status is ClosureStatus.FAILED
    p, q, missing = E.witness
    assert {p, q} == {(0,), (1,)}
    assert A2.format(missing) in ("ab", "ba")


def test_explicit_square_free_passes(A2):
    E = build_E(A2, "explicit", explicit=parse_E_file(A2, "a\nb\nab  # comment\nba\naba\n"))
    assert E.status is ClosureStatus.VERIFIED


def test_full_square_free_needs_finite_type(Iinf):
    with pytest.raises(InfiniteTypeError):
        build_E(Iinf)
    E = build_E(Iinf, "square-free-truncated", max_len=3)
    assert E.status is ClosureStatus.VERIFIED_WITHIN_BOUND


def test_gamma_psi_examples(A2, cmw_A2):
    aa = w(A2, "aa")
    assert cmw_A2.gamma(aa, ()) == (0,) and cmw_A2.psi(aa, ()) == (0,)
    assert cmw_A2.gamma((0,), (0,)) == () and cmw_A2.psi((0,), (0,)) == (0,)
    for x in cmw_A2.E.members:
        assert cmw_A2.gamma(x, ()) == x and cmw_A2.psi(x, ()) == ()


def test_gamma_preconditions(cmw_A2):
    with pytest.raises(ValueError):
        cmw_A2.gamma((), ())
    with pytest.raises(ValueError):
        cmw_A2.gamma((0,), (0, 0))


def test_E_cell_census_A2(A2, cmw_A2):
    cells = cmw_A2.enumerate_E_cells()
    assert [len(cells[n]) for n in sorted(cells)] == [1, 5, 6, 2]
    fmt = lambda n: sorted(cmw_A2.bar.format(c) for c in cells[n])
    assert fmt(2) == sorted(["[a|b]", "[b|a]", "[ab|a]", "[ba|b]", "[a|ba]", "[b|ab]"])
    assert fmt(3) == sorted(["[a|b|a]", "[b|a|b]"])
    assert cmw_A2.enumerate_E_cells(0) == {0: [()]}
    assert cmw_complex(A2).euler_characteristic() == 0


def test_cmw_homology(A2, A1xA1, A3):
    assert [str(g) for g in homology(cmw_complex(A2)).trimmed()] == ["Z", "Z"]
    assert homology(cmw_complex(A1xA1)).bettis == (1, 2, 1)
    assert [str(g) for g in homology(cmw_complex(A3)).trimmed()] == ["Z", "Z", "Z/2"]


def test_cmw_complex_closed_under_boundary(A3):
    c = cmw_complex(A3)
    assert check_boundary_squares_to_zero(c) is None


@pytest.mark.parametrize("cell, kind, partner", [
    ("[aa]", Kind.REDUNDANT, "[a|a]"),
    ("[a|a]", Kind.COLLAPSIBLE, "[aa]"),
    ("[ab|a]", Kind.ESSENTIAL, None),
])
def test_cmw_matching_examples(cmw_A2, cell, kind, partner):
    bar = cmw_A2.bar
    c = cmw_A2.classify(bar.parse(cell))
    assert c.kind is kind
    assert (c.partner and bar.format(c.partner)) == partner


def test_cmw_essentials_are_E_cells(cmw_A2):
    cells = cmw_A2.bar.enumerate_cells(4)
    for cs in cells.values():
        for c in cs:
            assert (cmw_A2.classify(c).kind is Kind.ESSENTIAL) == cmw_A2.is_E_cell(c)


@pytest.mark.parametrize("L", [4, 5])
def test_cmw_validation_A2(A2, cmw_A2, L):
    cells = [c for cs in cmw_A2.bar.enumerate_cells(L, 4).values() for c in cs]
    rep = validate_matching(cells, len, cmw_A2.bar.boundary, cmw_A2.classify,
                            height=cmw_A2.height, weight=total_length)
    assert rep.ok, rep.findings[:3]
