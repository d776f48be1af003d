"""Algebraic discrete Morse theory on based complexes given by oracles.

A matching is a function ``classify(cell) -> Classification``. Complexes
may be infinite: only the boundary oracle is required, and θ^∞ visits
just the cells it needs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple

from .complex import BasedComplex, add_into

DEFAULT_EXPANSION_CAP = 10**6


class Kind(enum.Enum):
    ESSENTIAL = "essential"
    COLLAPSIBLE = "collapsible"
    REDUNDANT = "redundant"


class Classification(NamedTuple):
    kind: Kind
    partner: Hashable = None


ESSENTIAL = Classification(Kind.ESSENTIAL)

Boundary = Callable[[Hashable], Mapping]
Matcher = Callable[[Hashable], Classification]


class MatchingError(RuntimeError):
    """The matching is not Z-compatible or not noetherian where it was used."""


def identity_matching(cell) -> Classification:
    return ESSENTIAL


class MorseReducer:
    """θ and θ^∞ for one (boundary, matching) pair, with per-cell memo.

    ``weight`` is optional instrumentation: the largest weight of any cell
    touched during a θ^∞ call is kept in ``max_weight_seen``.
    """

    def __init__(self, boundary: Boundary, classify: Matcher,
                 cap: int = DEFAULT_EXPANSION_CAP, weight: Callable | None = None):
        self.boundary = boundary
        self.classify = classify
        self.cap = cap
        self.weight = weight
        self.expansions = 0
        self.max_weight_seen = None
        self._memo: dict = {}

    def _touch(self, cell):
        if self.weight is not None:
            w = self.weight(cell)
            if self.max_weight_seen is None or w > self.max_weight_seen:
                self.max_weight_seen = w

    def incidence(self, redundant) -> tuple[dict, int]:
        """(∂μ(x), ε) for a redundant x, checking ε = ±1."""
        partner = self.classify(redundant).partner
        dmu = self.boundary(partner)
        eps = dmu.get(redundant, 0)
        if eps not in (1, -1):
            raise MatchingError(
                f"<∂μ(x), x> = {eps} for redundant x = {redundant!r}; matching is not Z-compatible"
            )
        return dmu, eps

    def theta_cell(self, cell) -> dict:
        kind = self.classify(cell).kind
        if kind is Kind.ESSENTIAL:
            return {cell: 1}
        if kind is Kind.COLLAPSIBLE:
            return {}
        dmu, eps = self.incidence(cell)
        out = {cell: 1}
        add_into(out, dmu, -eps)
        return out

    def theta(self, s: Mapping) -> dict:
        out: dict = {}
        for cell, c in s.items():
            add_into(out, self.theta_cell(cell), c)
        return out

    def theta_infinity_cell(self, cell) -> dict:
        memo = self._memo
        if cell in memo:
            return memo[cell]
        # iterative post-order evaluation, to survive deep ⊢-chains
        stack = [(cell, None)]
        active = set()
        while stack:
            x, pending = stack.pop()
            if x in memo and pending is None:
                continue
            if pending is None:
                self._touch(x)
                kind = self.classify(x).kind
                if kind is Kind.ESSENTIAL:
                    memo[x] = {x: 1}
                    continue
                if kind is Kind.COLLAPSIBLE:
                    memo[x] = {}
                    continue
                self.expansions += 1
                if self.expansions > self.cap:
                    raise MatchingError(f"θ^∞ exceeded {self.cap} cell expansions")
                dmu, eps = self.incidence(x)
                terms = [(z, -eps * c) for z, c in dmu.items() if z != x]
                active.add(x)
                stack.append((x, terms))
                for z, _ in terms:
                    if z in active:
                        raise MatchingError(f"θ^∞ revisited {z!r}: matching is not noetherian")
                    if z not in memo:
                        stack.append((z, None))
            else:
                out: dict = {}
                for z, c in pending:
                    add_into(out, memo[z], c)
                memo[x] = out
                active.discard(x)
        return memo[cell]

    def theta_infinity(self, s: Mapping) -> dict:
        out: dict = {}
        for cell, c in s.items():
            add_into(out, self.theta_infinity_cell(cell), c)
        return out

    def morse_boundary(self, cell) -> dict:
        return self.theta_infinity(self.boundary(cell))


def theta(classify: Matcher, boundary: Boundary, s: Mapping) -> dict:
    return MorseReducer(boundary, classify).theta(s)


def theta_infinity(classify: Matcher, boundary: Boundary, s: Mapping,
                   cap: int = DEFAULT_EXPANSION_CAP) -> dict:
    return MorseReducer(boundary, classify, cap).theta_infinity(s)


def morse_complex(boundary: Boundary, classify: Matcher, essentials: Mapping[int, list],
                  reducer: MorseReducer | None = None) -> BasedComplex:
    """Complex on the essential cells with differential θ^∞∘∂."""
    red = reducer or MorseReducer(boundary, classify)
    for cells in essentials.values():
        for cell in cells:
            if classify(cell).kind is not Kind.ESSENTIAL:
                raise MatchingError(f"{cell!r} was listed as essential but is not")
    return BasedComplex.from_oracle({n: list(c) for n, c in essentials.items()}, red.morse_boundary)


# --- validation -----------------------------------------------------------------


@dataclass
class Finding:
    check: str
    cell: object
    detail: str


@dataclass
class ValidationReport:
    cells_checked: int = 0
    counts: dict = field(default_factory=lambda: {k: 0 for k in Kind})
    findings: list[Finding] = field(default_factory=list)
    checks_run: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, check, cell, detail):
        self.findings.append(Finding(check, cell, detail))

    def failed_checks(self) -> set[str]:
        return {f.check for f in self.findings}


def validate_matching(cells: Iterable, degree: Callable[[object], int], boundary: Boundary,
                      classify: Matcher, height: Callable | None = None,
                      weight: Callable | None = None, successor_order: Callable | None = None,
                      fmt: Callable = repr, max_findings: int = 50) -> ValidationReport:
    """Run the matching battery on a finite set of cells.

    Checks involution and degree shifts, Z-compatibility on redundant
    cells, and acyclicity of x ⊢ z among the redundant cells of the set.
    With ``height`` given, every ⊢-successor of equal ``weight`` must have
    strictly larger height; ``successor_order(x, z)`` is an alternative
    monotonicity predicate.
    """
    rep = ValidationReport()
    rep.checks_run = ["involution", "degree-shift", "z-compatibility", "acyclicity"]
    if height is not None or successor_order is not None:
        rep.checks_run.append("monotonicity")
    cells = list(cells)
    redundant = []
    for x in cells:
        rep.cells_checked += 1
        cl = classify(x)
        rep.counts[cl.kind] += 1
        if cl.kind is Kind.ESSENTIAL:
            continue
        y = cl.partner
        back = classify(y)
        if back.partner != x or back.kind is cl.kind or back.kind is Kind.ESSENTIAL:
            rep.add("involution", x, f"partner {fmt(y)} maps to "
                    f"{'itself' if back.partner is None else fmt(back.partner)} ({back.kind.value})")
            continue
        shift = 1 if cl.kind is Kind.REDUNDANT else -1
        if degree(y) != degree(x) + shift:
            rep.add("degree-shift", x, f"{cl.kind.value} partner {fmt(y)} has degree {degree(y)}")
        if cl.kind is Kind.REDUNDANT:
            redundant.append(x)
        if len(rep.findings) >= max_findings:
            return rep

    red_set = set(redundant)
    succ: dict = {}
    for x in redundant:
        partner = classify(x).partner
        dmu = boundary(partner)
        eps = dmu.get(x, 0)
        if eps not in (1, -1):
            rep.add("z-compatibility", x, f"<∂μ(x), x> = {eps}")
        nxt = []
        for z in dmu:
            if z == x or classify(z).kind is not Kind.REDUNDANT:
                continue
            nxt.append(z)
            if successor_order is not None:
                if not successor_order(x, z):
                    rep.add("monotonicity", x, f"successor {fmt(z)} does not increase")
            elif height is not None:
                same = weight is None or weight(z) == weight(x)
                if same and not height(z) > height(x):
                    rep.add("monotonicity", x, f"successor {fmt(z)} has height {height(z)} <= {height(x)}")
        succ[x] = [z for z in nxt if z in red_set]
        if len(rep.findings) >= max_findings:
            return rep

    # cycle detection in the ⊢ digraph
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {x: WHITE for x in redundant}
    for root in redundant:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            for z in it:
                if colour[z] == GREY:
                    rep.add("acyclicity", z, f"⊢-cycle through {fmt(node)}")
                    return rep
                if colour[z] == WHITE:
                    colour[z] = GREY
                    stack.append((z, iter(succ[z])))
                    break
            else:
                colour[node] = BLACK
                stack.pop()
    return rep
