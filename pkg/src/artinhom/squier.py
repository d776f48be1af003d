"""μ2 on the μ1-Morse complex, and Squier's complex on S^f.

A chain cell is a tuple (I_1, ..., I_n) of frozensets with I_1 ⊊ ... ⊊ I_n,
the characterizing sequence of a μ1-essential bar cell. ``order`` is a list
of generator indices, smallest first; it decides what "max" means.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bar import BarComplex, subset_chains
from .complex import BasedComplex, add_term, homology, HomologyResult
from .monoid import ArtinMonoid
from .morse import Classification, ESSENTIAL, Kind, MorseReducer, morse_complex

ChainCell = tuple


class SquierRoutes:
    def __init__(self, monoid: ArtinMonoid, order: Sequence[int] | None = None):
        self.M = monoid
        self.system = monoid.system
        self.bar = BarComplex(monoid)
        self.order = list(range(self.system.rank)) if order is None else list(order)
        if sorted(self.order) != list(range(self.system.rank)):
            raise ValueError("order must be a permutation of the generators")
        self._rank = {s: k for k, s in enumerate(self.order)}
        self._d1: dict = {}
        self._mu2: dict = {}

    def max(self, I) -> int:
        return max(I, key=self._rank.__getitem__)

    def sorted(self, I) -> list[int]:
        return sorted(I, key=self._rank.__getitem__)

    def format_chain(self, chain: ChainCell) -> str:
        return "(" + " < ".join(self.system.format_subset(I) for I in chain) + ")"

    # -- the μ1-Morse complex on characterizing sequences -------------------

    def chain_cells(self) -> dict[int, list[ChainCell]]:
        return subset_chains(self.M.sf)

    def d_theta1(self, chain: ChainCell) -> dict:
        cached = self._d1.get(chain)
        if cached is None:
            cached = {}
            for cell, c in self.bar.d_theta1(self.bar.chain_to_cell(chain)).items():
                add_term(cached, self.bar.cell_to_chain(cell), c)
            self._d1[chain] = cached
        return cached

    def mu1_complex(self) -> BasedComplex:
        return BasedComplex.from_oracle(self.chain_cells(), self.d_theta1)

    # -- μ2 -------------------------------------------------------------------

    def mu2_height(self, chain: ChainCell) -> int:
        h = 0
        prev = frozenset()
        for I in chain:
            new = I - prev
            if len(new) != 1 or self.max(I) not in new:
                break
            h += 1
            prev = I
        return h

    def mu2_classify(self, chain: ChainCell) -> Classification:
        cached = self._mu2.get(chain)
        if cached is not None:
            return cached
        n = len(chain)
        h = self.mu2_height(chain)
        if h == n:
            result = ESSENTIAL
        else:
            nxt = chain[h]  # I_{h+1}
            cur = chain[h - 1] if h else None
            if cur is not None and self.max(nxt) == self.max(cur):
                result = Classification(Kind.COLLAPSIBLE, chain[:h - 1] + chain[h:])
            else:
                b = self.max(nxt)
                base = cur if cur is not None else frozenset()
                result = Classification(Kind.REDUNDANT, chain[:h] + (base | {b},) + chain[h:])
        self._mu2[chain] = result
        return result

    def essential_chain(self, J) -> ChainCell:
        """The unique μ2-essential chain on J: add elements in increasing order."""
        elems = self.sorted(J)
        return tuple(frozenset(elems[:k]) for k in range(1, len(elems) + 1))

    def mu2_essentials(self) -> dict[int, list[ChainCell]]:
        out: dict[int, list] = {}
        for J in self.M.sf:
            out.setdefault(len(J), []).append(self.essential_chain(J))
        return out

    def mu2_reducer(self) -> MorseReducer:
        return MorseReducer(self.d_theta1, self.mu2_classify)

    def mu2_morse_complex(self) -> BasedComplex:
        """Morse complex of μ2, relabelled by subsets J ∈ S^f."""
        c = morse_complex(self.d_theta1, self.mu2_classify, self.mu2_essentials(), self.mu2_reducer())
        return self._relabel(c)

    @staticmethod
    def _relabel(c: BasedComplex) -> BasedComplex:
        top = lambda ch: ch[-1] if ch else frozenset()
        basis = {n: [top(ch) for ch in cells] for n, cells in c.basis.items()}
        boundary = {}
        for ch, d in c.boundary.items():
            boundary[top(ch)] = {top(z): v for z, v in d.items()}
        return BasedComplex(basis, boundary)

    def charseq_less(self, A: ChainCell, B: ChainCell) -> bool:
        """Lexicographic order on characterizing sequences driving noetherianity.

        Compares maxima first (smaller max is smaller), then sizes with the
        larger size counting as smaller. Shorter sequences are padded with
        their last entry.
        """
        L = max(len(A), len(B))
        pad = lambda S, i: S[min(i, len(S) - 1)] if S else frozenset()
        key = lambda I: self._rank[self.max(I)] if I else -1
        for s in range(L - 1):
            a, b = key(pad(A, s)), key(pad(B, s))
            if a != b:
                return a < b
        if any(key(pad(A, i)) != key(pad(B, i)) for i in range(L)):
            return False
        for t in range(L - 1):
            a, b = len(pad(A, t)), len(pad(B, t))
            if a != b:
                return a > b
        return False

    def mu2_successor_increases(self, x: ChainCell, z: ChainCell) -> bool:
        """Monotonicity probe: same-length successors are larger in ``charseq_less``."""
        if self._total_length(z) < self._total_length(x):
            return True
        return self.charseq_less(x, z)

    def _total_length(self, chain: ChainCell) -> int:
        return len(self.M.delta(chain[-1])) if chain else 0

    # -- the direct Squier complex ------------------------------------------

    def squier_boundary_direct(self, J) -> dict:
        """∂[I] = Σ_i (-1)^{i-1} (Σ_{uv = t_i} (-1)^{|u|}) [I∖{a_i}],
        t_i = Δ_I Δ_{I∖{a_i}}^{-1}, elements a_1 < ... < a_k."""
        M = self.M
        J = frozenset(J)
        out: dict = {}
        dJ = M.delta(J)
        for i, a in enumerate(self.sorted(J)):
            face = J - {a}
            t = M.right_quotient(dJ, M.delta(face))
            coef = sum((-1) ** len(u) for u in M.left_divisors(t))
            add_term(out, face, (-1) ** i * coef)
        return out

    def squier_complex(self) -> BasedComplex:
        basis: dict[int, list] = {}
        for J in self.M.sf:
            basis.setdefault(len(J), []).append(J)
        return BasedComplex.from_oracle(basis, self.squier_boundary_direct)


@dataclass
class DifferentialComparison:
    subset: frozenset
    mu2: dict
    direct: dict

    @property
    def equal(self) -> bool:
        return self.mu2 == self.direct

    @property
    def equal_up_to_sign(self) -> bool:
        return self.mu2 == self.direct or self.mu2 == {k: -v for k, v in self.direct.items()}


@dataclass
class ComparisonReport:
    rows: list[DifferentialComparison]
    mu2_homology: HomologyResult
    squier_homology: HomologyResult

    @property
    def homology_agrees(self) -> bool:
        return self.mu2_homology.agrees(self.squier_homology)

    @property
    def global_sign(self) -> int | None:
        """+1 or -1 if every nonzero row satisfies mu2 = sign·squier, else None.

        A sign of -1 means the complexes match under [J] -> (-1)^|J| [J].
        """
        signs = set()
        for row in self.rows:
            if row.equal and not row.direct:
                continue
            if row.equal:
                signs.add(1)
            elif row.equal_up_to_sign:
                signs.add(-1)
            else:
                return None
        if len(signs) > 1:
            return None
        return signs.pop() if signs else 1


def compare_squier_vs_mu2(monoid: ArtinMonoid, order: Sequence[int] | None = None) -> ComparisonReport:
    routes = SquierRoutes(monoid, order)
    c_mu2 = routes.mu2_morse_complex()
    c_sq = routes.squier_complex()
    rows = [DifferentialComparison(J, c_mu2.d(J), c_sq.d(J))
            for J in monoid.sf if J]
    return ComparisonReport(rows, homology(c_mu2), homology(c_sq))
