"""Generating sets closed under left lcm and left complement, the subcomplex
E_* of the bar complex they span, and the matching that collapses onto it.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .bar import BarComplex, BarCell
from .complex import BasedComplex
from .coxeter import InfiniteTypeError, shortlex_key
from .monoid import IDENTITY, ArtinMonoid, Element, LcmInconclusive
from .morse import Classification, ESSENTIAL, Kind


class ClosureStatus(enum.Enum):
    VERIFIED = "verified"
    VERIFIED_WITHIN_BOUND = "verified-within-bound"
    FAILED = "failed"


class ClosureError(ValueError):
    pass


class GreatestDivisorError(RuntimeError):
    """No greatest qualifying right divisor: E is not actually closed."""


@dataclass
class GeneratingSet:
    kind: str  # "square-free", "square-free-truncated", "explicit"
    members: frozenset
    status: ClosureStatus = ClosureStatus.VERIFIED
    witness: tuple | None = None
    inconclusive: list = field(default_factory=list)
    max_len: int | None = None

    def __contains__(self, x) -> bool:
        return x in self.members

    def __len__(self):
        return len(self.members)

    def contains_or_one(self, x) -> bool:
        return not x or x in self.members

    @property
    def usable(self) -> bool:
        return self.status is not ClosureStatus.FAILED


def _check_closure(M: ArtinMonoid, members: frozenset, finite_divisors: bool):
    """Return (status, witness, inconclusive pairs)."""
    inconclusive = []
    ordered = sorted(members, key=shortlex_key)
    pool = None
    if finite_divisors:
        # every member right-divides Δ_S, so lcms are found among the members
        pool = sorted(members, key=shortlex_key)
    for p, q in combinations(ordered, 2):
        if pool is not None:
            c = next((e for e in pool if len(e) >= max(len(p), len(q))
                      and M.is_right_divisor(p, e) and M.is_right_divisor(q, e)), None)
            if c is None:
                return ClosureStatus.FAILED, (p, q, "lcm"), inconclusive
        else:
            try:
                c = M.left_lcm(p, q)
            except LcmInconclusive:
                inconclusive.append((p, q))
                continue
            if c is None:
                continue
        if c not in members:
            return ClosureStatus.FAILED, (p, q, c), inconclusive
        for u, v in ((p, q), (q, p)):
            comp = M.right_quotient(c, v)
            if comp and comp not in members:
                return ClosureStatus.FAILED, (u, v, comp), inconclusive
    status = ClosureStatus.VERIFIED_WITHIN_BOUND if inconclusive else ClosureStatus.VERIFIED
    return status, None, inconclusive


def build_E(M: ArtinMonoid, kind: str = "square-free", max_len: int | None = None,
            explicit: Iterable[Element] | None = None) -> GeneratingSet:
    """Build and closure-check a generating set.

    kind is ``"square-free"`` (all of W(S), finite type only),
    ``"square-free-truncated"`` (square-free elements up to ``max_len``),
    or ``"explicit"``.
    """
    full = M.is_finite_type(range(M.system.rank))
    if kind == "square-free":
        if not full:
            raise InfiniteTypeError("the full square-free set needs finite type; use a truncation")
        members = frozenset(M.square_free_elements())
        status, witness, inc = _check_closure(M, members, finite_divisors=True)
        return GeneratingSet(kind, members, status, witness, inc)
    if kind == "square-free-truncated":
        if max_len is None:
            raise ValueError("square-free-truncated needs max_len")
        members = frozenset(M.square_free_elements(max_len))
        status, witness, inc = _check_closure(M, members, finite_divisors=False)
        if status is ClosureStatus.VERIFIED and not full:
            status = ClosureStatus.VERIFIED_WITHIN_BOUND
        return GeneratingSet(kind, members, status, witness, inc, max_len)
    if kind == "explicit":
        members = frozenset(M.canonical(x) for x in explicit or ())
        if IDENTITY in members:
            raise ValueError("the identity cannot be a member of E")
        for s in range(M.system.rank):
            if (s,) not in members:
                return GeneratingSet(kind, members, ClosureStatus.FAILED,
                                     ((s,), None, "generator missing"))
        status, witness, inc = _check_closure(M, members, finite_divisors=False)
        return GeneratingSet(kind, members, status, witness, inc)
    raise ValueError(f"unknown kind {kind!r}")


def parse_E_file(M: ArtinMonoid, text: str) -> list[Element]:
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(M.parse(line))
    return out


class CMW:
    def __init__(self, monoid: ArtinMonoid, E: GeneratingSet):
        if not E.usable:
            raise ClosureError(f"E failed the closure check: {E.witness}")
        self.M = monoid
        self.E = E
        self.bar = BarComplex(monoid)
        self._gamma: dict = {}
        self._cls: dict = {}

    # -- γ and ψ ------------------------------------------------------------

    def gamma(self, a: Element, b: Element) -> Element:
        """Greatest right divisor d of a with d·b ∈ E ∪ {1}."""
        key = (a, b)
        if key in self._gamma:
            return self._gamma[key]
        if not a:
            raise ValueError("γ(a, b) needs a != 1")
        if b and b not in self.E:
            raise ValueError("γ(a, b) needs b ∈ E ∪ {1}")
        M = self.M
        candidates = [d for d in M.right_divisors(a) if self.E.contains_or_one(M.multiply(d, b))]
        best = max(candidates, key=shortlex_key)
        for d in candidates:
            if not M.is_right_divisor(d, best):
                raise GreatestDivisorError(
                    f"{M.format(d)} and {M.format(best)} both qualify for γ({M.format(a)}, {M.format(b)})"
                )
        self._gamma[key] = best
        return best

    def psi(self, a: Element, b: Element) -> Element:
        return self.M.right_quotient(a, self.gamma(a, b))

    # -- E-cells ----------------------------------------------------------------

    def height(self, cell: BarCell) -> int:
        ps = self.bar.partials(cell)
        h = 0
        for k in range(1, len(cell) + 1):
            if ps[k] not in self.E:
                break
            h = k
        return h

    def is_E_cell(self, cell: BarCell) -> bool:
        return self.height(cell) == len(cell)

    def enumerate_E_cells(self, max_degree: int | None = None) -> dict[int, list[BarCell]]:
        """Strict chains p_1 < p_2 < ... of E under right divisibility, as bar cells."""
        M = self.M
        members = sorted(self.E.members, key=shortlex_key)
        above = {p: [q for q in members if len(q) > len(p) and M.is_right_divisor(p, q)]
                 for p in members}
        out = {0: [()]}
        layer = [((p,), p) for p in members]
        n = 1
        while layer and (max_degree is None or n <= max_degree):
            out[n] = [cell for cell, _ in layer]
            nxt = []
            for cell, top in layer:
                for q in above[top]:
                    nxt.append(((M.right_quotient(q, top),) + cell, q))
            layer = nxt
            n += 1
        return out

    def complex(self, max_degree: int | None = None) -> BasedComplex:
        cells = self.enumerate_E_cells(max_degree)
        return BasedComplex.from_oracle(cells, self.bar.boundary)

    # -- the matching -----------------------------------------------------------

    def classify(self, cell: BarCell) -> Classification:
        cached = self._cls.get(cell)
        if cached is not None:
            return cached
        n = len(cell)
        h = self.height(cell)
        if h == n:
            result = ESSENTIAL
        else:
            ps = self.bar.partials(cell)
            pos = n - h - 1  # x_{h+1}
            x = cell[pos]
            d = self.gamma(x, ps[h])
            if not d:
                merged = self.M.multiply(cell[pos], cell[pos + 1])
                result = Classification(Kind.COLLAPSIBLE, cell[:pos] + (merged,) + cell[pos + 2:])
            else:
                a = self.M.right_quotient(x, d)
                result = Classification(Kind.REDUNDANT, cell[:pos] + (a, d) + cell[pos + 1:])
        self._cls[cell] = result
        return result


def cmw_complex(M: ArtinMonoid, E: GeneratingSet | None = None, max_degree: int | None = None) -> BasedComplex:
    if E is None:
        E = build_E(M, "square-free")
    return CMW(M, E).complex(max_degree)
