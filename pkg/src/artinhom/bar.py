"""The normalized bar complex of an Artin monoid and the matching μ1.

A bar cell [x_n|...|x_1] is stored as the tuple ``(x_n, ..., x_1)`` of
canonical non-identity elements, i.e. in written order. ``partial(cell, k)``
is the product x_k···x_1 of the k rightmost entries.

Faces: d_0 drops x_1, d_i (0 < i < n) merges x_{i+1}x_i, d_n drops x_n,
and ∂ = Σ (-1)^i d_i.
"""
from __future__ import annotations

from typing import Iterable

from .complex import BasedComplex, add_term
from .monoid import IDENTITY, ArtinMonoid, Element
from .morse import Classification, Kind, ESSENTIAL, MorseReducer

BarCell = tuple  # tuple[Element, ...]


class CellCapExceeded(RuntimeError):
    pass


def degree(cell: BarCell) -> int:
    return len(cell)


def total_length(cell: BarCell) -> int:
    return sum(len(x) for x in cell)


class BarComplex:
    def __init__(self, monoid: ArtinMonoid):
        self.M = monoid
        self.system = monoid.system
        self._partials: dict = {}
        self._mu1: dict = {}
        self._reducer = None

    # -- helpers ------------------------------------------------------------

    def partial(self, cell: BarCell, k: int) -> Element:
        """x_k···x_1, with x_0 = 1."""
        if k == 0:
            return IDENTITY
        return self.M.multiply(*cell[len(cell) - k:])

    def partials(self, cell: BarCell) -> list[Element]:
        """[p_0, p_1, ..., p_n] with p_k = x_k···x_1."""
        out = self._partials.get(cell)
        if out is None:
            out = [IDENTITY]
            for x in reversed(cell):
                out.append(self.M.multiply(x, out[-1]))
            self._partials[cell] = out
        return out

    def format(self, cell: BarCell) -> str:
        return "[" + "|".join(self.M.format(x) for x in cell) + "]"

    def parse(self, text: str) -> BarCell:
        text = text.strip().strip("[]")
        if not text:
            return ()
        return tuple(self.M.parse(part) for part in text.split("|"))

    # -- the complex -----------------------------------------------------------

    def face(self, cell: BarCell, i: int) -> BarCell:
        n = len(cell)
        if i == 0:
            return cell[:-1]
        if i == n:
            return cell[1:]
        # x_{i+1} sits at position n-i-1, x_i at n-i
        j = n - i - 1
        return cell[:j] + (self.M.multiply(cell[j], cell[j + 1]),) + cell[j + 2:]

    def boundary(self, cell: BarCell) -> dict:
        out: dict = {}
        n = len(cell)
        if n == 0:
            return out
        for i in range(n + 1):
            add_term(out, self.face(cell, i), -1 if i % 2 else 1)
        return out

    def enumerate_cells(self, max_total_length: int, max_degree: int | None = None,
                        cap: int = 5 * 10**6) -> dict[int, list[BarCell]]:
        """All cells with total length <= L (and degree <= n)."""
        L = max_total_length
        n_max = L if max_degree is None else min(max_degree, L)
        by_len = self.M.elements_by_length(L)
        out = {0: [()]}
        # cells grouped by total length, extended on the left
        frontier = {0: [()]}
        count = 1
        for n in range(1, n_max + 1):
            nxt: dict[int, list] = {}
            for tl, cells in frontier.items():
                for ell in range(1, L - tl + 1):
                    for x in by_len[ell]:
                        bucket = nxt.setdefault(tl + ell, [])
                        bucket.extend((x,) + c for c in cells)
                        count += len(cells)
                        if count > cap:
                            raise CellCapExceeded(f"more than {cap} bar cells")
            frontier = nxt
            out[n] = [c for tl in sorted(nxt) for c in nxt[tl]]
            if not out[n]:
                del out[n]
                break
        return out

    def truncation(self, max_total_length: int, max_degree: int | None = None) -> BasedComplex:
        cells = self.enumerate_cells(max_total_length, max_degree)
        return BasedComplex.from_oracle(cells, self.boundary)

    # -- μ1 -----------------------------------------------------------------

    def mu1_height(self, cell: BarCell) -> int:
        ps = self.partials(cell)
        h = 0
        for k in range(1, len(cell) + 1):
            if not self.M.in_D(ps[k]):
                break
            h = k
        return h

    def mu1_classify(self, cell: BarCell) -> Classification:
        cached = self._mu1.get(cell)
        if cached is not None:
            return cached
        M = self.M
        n = len(cell)
        h = self.mu1_height(cell)
        if h == n:
            result = ESSENTIAL
        else:
            ps = self.partials(cell)
            I_h = M.ending_set(ps[h]) if h else frozenset()
            J = M.ending_set(ps[h + 1])
            pos = n - h - 1  # position of x_{h+1}
            if J == I_h:
                merged = M.multiply(cell[pos], cell[pos + 1])
                partner = cell[:pos] + (merged,) + cell[pos + 2:]
                result = Classification(Kind.COLLAPSIBLE, partner)
            else:
                delta_J = M.delta(J)
                z = M.right_quotient(delta_J, M.delta(I_h))
                y = M.right_quotient(ps[h + 1], delta_J)
                partner = cell[:pos] + (y, z) + cell[pos + 1:]
                result = Classification(Kind.REDUNDANT, partner)
        self._mu1[cell] = result
        return result

    def mu1_essentials(self, max_degree: int | None = None) -> dict[int, list[BarCell]]:
        """Essential cells, from strict chains of nonempty finite-type subsets."""
        return {n: [self.chain_to_cell(ch) for ch in chains]
                for n, chains in subset_chains(self.M.sf, max_degree).items()}

    def chain_to_cell(self, chain) -> BarCell:
        """(I_1 ⊊ ... ⊊ I_n) -> [x_n|...|x_1] with x_k = Δ_{I_k}Δ_{I_{k-1}}^{-1}."""
        M = self.M
        entries = []
        prev = IDENTITY
        for I in chain:
            d = M.delta(I)
            entries.append(M.right_quotient(d, prev))
            prev = d
        return tuple(reversed(entries))

    def cell_to_chain(self, cell: BarCell) -> tuple[frozenset, ...]:
        ps = self.partials(cell)
        return tuple(self.M.ending_set(p) for p in ps[1:])

    @property
    def reducer(self) -> MorseReducer:
        if self._reducer is None:
            self._reducer = MorseReducer(self.boundary, self.mu1_classify, weight=total_length)
        return self._reducer

    def d_theta1(self, cell: BarCell) -> dict:
        """Morse differential on a μ1-essential cell.

        Only the d_0 face can fail to be essential, so
        d^θ(x) = ∂x - [x_n|...|x_2] + θ^∞([x_n|...|x_2]).
        """
        out = self.boundary(cell)
        if not cell:
            return out
        front = cell[:-1]
        add_term(out, front, -1)
        for z, c in self.reducer.theta_infinity_cell(front).items():
            add_term(out, z, c)
        return out

    def mu1_morse_complex(self) -> BasedComplex:
        return BasedComplex.from_oracle(self.mu1_essentials(), self.d_theta1)

    def in_K(self, cell: BarCell) -> bool:
        support = frozenset().union(*(frozenset(x) for x in cell)) if cell else frozenset()
        return self.M.is_finite_type(support)


def subset_chains(sf: Iterable[frozenset], max_degree: int | None = None) -> dict[int, list[tuple]]:
    """Strict chains I_1 ⊊ ... ⊊ I_n of nonempty members of ``sf``, by n."""
    members = sorted((I for I in sf if I), key=lambda I: (len(I), sorted(I)))
    out = {0: [()]}
    layer = [(I,) for I in members]
    n = 1
    while layer and (max_degree is None or n <= max_degree):
        out[n] = layer
        layer = [ch + (I,) for ch in layer for I in members if ch[-1] < I]
        n += 1
    return out
