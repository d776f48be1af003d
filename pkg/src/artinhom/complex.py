"""Based chain complexes over Z, Smith normal form, and integral homology.

A formal sum is a plain ``dict`` from cell to nonzero ``int``. Cells are
any hashable labels; a complex records which degree each cell lives in.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Hashable, Mapping

Cell = Hashable
FormalSum = dict


def add_into(target: dict, source: Mapping, coef: int = 1) -> dict:
    """target += coef * source, dropping zeros."""
    if not coef:
        return target
    for cell, c in source.items():
        v = target.get(cell, 0) + coef * c
        if v:
            target[cell] = v
        else:
            target.pop(cell, None)
    return target


def add_term(target: dict, cell, coef: int) -> dict:
    if coef:
        v = target.get(cell, 0) + coef
        if v:
            target[cell] = v
        else:
            del target[cell]
    return target


def linear_extension(f: Callable[[Cell], Mapping], s: Mapping) -> dict:
    out: dict = {}
    for cell, c in s.items():
        add_into(out, f(cell), c)
    return out


@dataclass
class BasedComplex:
    basis: dict[int, list]
    boundary: dict = field(default_factory=dict)

    def __post_init__(self):
        self.degree_of = {}
        for n, cells in self.basis.items():
            for cell in cells:
                if cell in self.degree_of:
                    raise ValueError(f"cell {cell!r} listed twice")
                self.degree_of[cell] = n

    @classmethod
    def from_oracle(cls, basis: dict[int, list], oracle: Callable[[Cell], Mapping]):
        return cls(basis, {cell: dict(oracle(cell)) for cells in basis.values() for cell in cells})

    @property
    def top_degree(self) -> int:
        degs = [n for n, cells in self.basis.items() if cells]
        return max(degs) if degs else 0

    def ranks(self) -> list[int]:
        return [len(self.basis.get(n, [])) for n in range(self.top_degree + 1)]

    def d(self, cell) -> dict:
        return self.boundary.get(cell, {})

    def matrix(self, n: int) -> list[dict]:
        """Sparse rows of ∂_n : C_n -> C_{n-1}, one row per target cell."""
        if n <= 0:
            return []
        targets = {c: i for i, c in enumerate(self.basis.get(n - 1, []))}
        rows: list[dict] = [dict() for _ in targets]
        for j, cell in enumerate(self.basis.get(n, [])):
            for t, v in self.d(cell).items():
                if t not in targets:
                    raise ValueError(f"boundary of {cell!r} leaves the complex at {t!r}")
                rows[targets[t]][j] = v
        return rows

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * r for n, r in enumerate(self.ranks()))


def check_boundary_squares_to_zero(c: BasedComplex):
    """Return None if ∂∂ = 0 on every basis cell, else the first offending cell."""
    for n in sorted(c.basis):
        for cell in c.basis[n]:
            dd = linear_extension(c.d, c.d(cell))
            if dd:
                return cell
    return None


# --- Smith normal form ---------------------------------------------------------


def _diagonal_to_invariant_factors(diag: list[int]) -> list[int]:
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def sparse_diagonalize(rows: list[dict]) -> list[int]:
    """Diagonal entries of an equivalent diagonal matrix (not yet normalized).

    ``rows`` is consumed. Pivots are chosen by minimal absolute value.
    """
    rows = {i: r for i, r in enumerate(rows) if r}
    cols: dict[int, set] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag = []

    def set_entry(i, j, v):
        r = rows[i]
        if v:
            r[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r.pop(j, None)
            s = cols.get(j)
            if s is not None:
                s.discard(i)
                if not s:
                    del cols[j]

    def find_pivot():
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                a = abs(v)
                if best is None or a < best[0] or (a == best[0] and len(r) < len(rows[best[1]])):
                    best = (a, i, j)
                    if a == 1 and len(r) <= 2:
                        return best
        return best

    while rows:
        empty = [i for i, r in rows.items() if not r]
        for i in empty:
            del rows[i]
        if not rows:
            break
        _, pi, pj = find_pivot()
        while True:
            p = rows[pi][pj]
            dirty = False
            # clear column pj with row operations
            for i in list(cols.get(pj, ())):
                if i == pi:
                    continue
                q = rows[i][pj] // p
                if q:
                    for j, v in list(rows[pi].items()):
                        set_entry(i, j, rows[i].get(j, 0) - q * v)
                if rows[i].get(pj, 0):
                    dirty = True
            # clear row pi with column operations
            for j in [j for j in rows[pi] if j != pj]:
                q = rows[pi][j] // p
                if q:
                    for i in list(cols.get(pj, ())):
                        set_entry(i, j, rows[i].get(j, 0) - q * rows[i][pj])
                if rows[pi].get(j, 0):
                    dirty = True
            if not dirty:
                break
            # a remainder survived: move the pivot to a smaller entry
            cand = [(abs(rows[i][pj]), i, pj) for i in cols.get(pj, ()) if i != pi]
            cand += [(abs(v), pi, j) for j, v in rows[pi].items() if j != pj]
            _, pi, pj = min(cand)
        diag.append(rows[pi][pj])
        for i in list(cols.get(pj, ())):
            set_entry(i, pj, 0)
        del rows[pi]
    return diag


def smith_normal_form(matrix) -> tuple[list[int], int]:
    """Invariant factors (divisibility chain) and rank of an integer matrix.

    ``matrix`` may be a list of lists or a list of sparse row dicts.
    """
    rows = []
    for r in matrix:
        if isinstance(r, Mapping):
            rows.append({j: int(v) for j, v in r.items() if v})
        else:
            rows.append({j: int(v) for j, v in enumerate(r) if v})
    factors = _diagonal_to_invariant_factors(sparse_diagonalize(rows))
    return factors, len(factors)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologyResult:
    groups: tuple[HomologyGroup, ...]

    def __getitem__(self, n: int) -> HomologyGroup:
        if n < len(self.groups):
            return self.groups[n]
        return HomologyGroup(0)

    def __len__(self):
        return len(self.groups)

    @property
    def bettis(self) -> tuple[int, ...]:
        return tuple(g.betti for g in self.groups)

    def trimmed(self) -> tuple[HomologyGroup, ...]:
        gs = list(self.groups)
        while len(gs) > 1 and gs[-1] == HomologyGroup(0):
            gs.pop()
        return tuple(gs)

    def agrees(self, other: "HomologyResult") -> bool:
        return self.trimmed() == other.trimmed()

    def __str__(self):
        return ", ".join(f"H{n} = {g}" for n, g in enumerate(self.trimmed()))


class BoundaryError(ValueError):
    pass


def homology(c: BasedComplex, check: bool = True) -> HomologyResult:
    if check:
        bad = check_boundary_squares_to_zero(c)
        if bad is not None:
            raise BoundaryError(f"∂∂ != 0 on {bad!r}")
    top = c.top_degree
    ranks = c.ranks()
    snf = {n: smith_normal_form(c.matrix(n)) for n in range(1, top + 1)}
    groups = []
    for n in range(top + 1):
        r_out = snf[n][1] if n in snf else 0
        factors_in = snf[n + 1][0] if n + 1 in snf else []
        r_in = len(factors_in)
        betti = ranks[n] - r_out - r_in
        groups.append(HomologyGroup(betti, tuple(f for f in factors_in if f > 1)))
    return HomologyResult(tuple(groups))


def reorder(c: BasedComplex, order: Callable[[list], list]) -> BasedComplex:
    return BasedComplex({n: order(list(cells)) for n, cells in c.basis.items()}, c.boundary)
