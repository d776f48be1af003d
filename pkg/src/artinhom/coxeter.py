"""Coxeter systems: parsing, finite-type classification, and the word
problem in the Coxeter group at desk scale.

Words are tuples of generator indices. The letter order used for shortlex
comparisons is the order in which generators were declared.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

INF = math.inf
DEFAULT_CLASS_CAP = 10**6

Word = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ClassSizeExceeded(RuntimeError):
    """A braid-equivalence class outgrew the configured cap."""


class InfiniteTypeError(ValueError):
    """An operation needing a finite Coxeter group got an infinite one."""


@dataclass(frozen=True)
class CoxeterSystem:
    generators: tuple[str, ...]
    matrix: tuple[tuple[float, ...], ...]
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise ValueError("duplicate generator name")
        if any(not g or any(ch.isspace() for ch in g) for g in self.generators):
            raise ValueError("generator names must be nonempty and contain no whitespace")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("Coxeter matrix has the wrong shape")
        for i in range(n):
            if self.matrix[i][i] != 1:
                raise ValueError("diagonal entries must be 1")
            for j in range(i + 1, n):
                m = self.matrix[i][j]
                if m != self.matrix[j][i]:
                    raise ValueError("Coxeter matrix must be symmetric")
                if m != INF and (m != int(m) or m < 2):
                    raise ValueError(
                        f"m({self.generators[i]},{self.generators[j]}) must be an integer >= 2 or inf"
                    )
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.generators)})

    @classmethod
    def from_pairs(cls, generators: Sequence[str], pairs: dict, default: float = 2):
        """Build a system from ``{(s, t): m}``; unlisted pairs get ``default``."""
        gens = tuple(generators)
        idx = {g: i for i, g in enumerate(gens)}
        n = len(gens)
        rows = [[1 if i == j else default for j in range(n)] for i in range(n)]
        for (s, t), m in pairs.items():
            rows[idx[s]][idx[t]] = m
            rows[idx[t]][idx[s]] = m
        return cls(gens, tuple(tuple(r) for r in rows))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> float:
        return self.matrix[i][j]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def subset(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(n) for n in names)

    def names(self, subset: Iterable[int]) -> list[str]:
        return [self.generators[i] for i in sorted(subset)]

    @property
    def single_char(self) -> bool:
        return all(len(g) == 1 for g in self.generators)

    def format_word(self, word: Word) -> str:
        if not word:
            return "1"
        sep = "" if self.single_char else "."
        return sep.join(self.generators[i] for i in word)

    def format_subset(self, subset: Iterable[int]) -> str:
        return "{" + ",".join(self.names(subset)) + "}"

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text in ("", "1"):
            return ()
        if self.single_char and not any(ch in text for ch in " .") :
            return tuple(self.index(ch) for ch in text)
        return tuple(self.index(tok) for tok in text.replace(".", " ").split())

    def parse_subset(self, text: str) -> frozenset[int]:
        text = text.strip().strip("{}")
        tokens = text.replace(",", " ").split()
        if len(tokens) == 1 and self.single_char and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return self.subset(tokens)

    def relations(self, J: Iterable[int] | None = None) -> list[tuple[Word, Word]]:
        """Braid relations <s,t>^m = <t,s>^m among generators in J, both directions."""
        gens = sorted(range(self.rank) if J is None else J)
        rels = []
        for s, t in combinations(gens, 2):
            m = self.matrix[s][t]
            if m == INF:
                continue
            m = int(m)
            u = alternating(s, t, m)
            v = alternating(t, s, m)
            rels.append((u, v))
            rels.append((v, u))
        return rels

    def to_text(self) -> str:
        lines = ["generators = " + " ".join(self.generators)]
        for i, j in combinations(range(self.rank), 2):
            m = self.matrix[i][j]
            lines.append(f"m {self.generators[i]} {self.generators[j]} = {'inf' if m == INF else int(m)}")
        return "\n".join(lines) + "\n"


def alternating(s: int, t: int, m: int) -> Word:
    return tuple(s if k % 2 == 0 else t for k in range(m))


def _parse_order(token: str, lineno: int) -> float:
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        m = int(token)
    except ValueError:
        raise ParseError(f"expected an integer >= 2 or 'inf', got {token!r}", lineno) from None
    if m < 2:
        raise ParseError(f"off-diagonal entry must be >= 2, got {m}", lineno)
    return m


def parse_system(text: str) -> CoxeterSystem:
    generators = None
    default = None
    overrides: dict[frozenset, tuple[float, int]] = {}
    pending = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
        lhs, rhs = (p.strip() for p in line.split("=", 1))
        head = lhs.split()
        if head == ["generators"]:
            if generators is not None:
                raise ParseError("generators declared twice", lineno)
            names = rhs.split()
            if not names:
                raise ParseError("empty generator list", lineno)
            if len(set(names)) != len(names):
                dup = next(n for n in names if names.count(n) > 1)
                raise ParseError(f"duplicate generator {dup!r}", lineno)
            generators = tuple(names)
        elif head == ["default"]:
            if default is not None:
                raise ParseError("default declared twice", lineno)
            default = _parse_order(rhs, lineno)
        elif len(head) == 3 and head[0] == "m":
            pending.append((head[1], head[2], rhs, lineno))
        else:
            raise ParseError(f"unknown directive {lhs!r}", lineno)
    if generators is None:
        raise ParseError("missing 'generators = ...' line")
    for s, t, rhs, lineno in pending:
        for g in (s, t):
            if g not in generators:
                raise ParseError(f"unknown generator {g!r}", lineno)
        if s == t:
            raise ParseError(f"diagonal entry m {s} {s} cannot be set", lineno)
        m = _parse_order(rhs, lineno)
        key = frozenset((s, t))
        if key in overrides and overrides[key][0] != m:
            raise ParseError(
                f"m {s} {t} = {rhs} contradicts line {overrides[key][1]}", lineno
            )
        overrides[key] = (m, lineno)
    idx = {g: i for i, g in enumerate(generators)}
    n = len(generators)
    rows = [[1 if i == j else None for j in range(n)] for i in range(n)]
    for key, (m, _) in overrides.items():
        s, t = sorted(key, key=idx.get)
        rows[idx[s]][idx[t]] = rows[idx[t]][idx[s]] = m
    for i in range(n):
        for j in range(n):
            if rows[i][j] is None:
                if default is None:
                    raise ParseError(
                        f"no entry for pair ({generators[i]}, {generators[j]}) and no default"
                    )
                rows[i][j] = default
    return CoxeterSystem(generators, tuple(tuple(r) for r in rows))


def load_system(path) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


# --- finite type classification -------------------------------------------


@dataclass(frozen=True)
class SubsetClassification:
    subset: frozenset[int]
    finite: bool
    components: tuple[tuple[frozenset[int], str], ...] = ()

    def label(self, system: CoxeterSystem) -> str:
        if not self.finite:
            return "infinite"
        if not self.components:
            return "trivial"
        return " x ".join(lab for _, lab in self.components)


def _check_subset(system: CoxeterSystem, J: Iterable[int]) -> frozenset[int]:
    J = frozenset(J)
    for i in J:
        if not 0 <= i < system.rank:
            raise KeyError(f"unknown generator index {i}")
    return J


def coxeter_components(system: CoxeterSystem, J: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the Coxeter graph (edges where m >= 3) on J."""
    remaining = set(J)
    comps = []
    while remaining:
        start = min(remaining)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in list(remaining):
                if v not in comp and system.m(u, v) >= 3:
                    comp.add(v)
                    queue.append(v)
        remaining -= comp
        comps.append(frozenset(comp))
    return comps


def _classify_component(system: CoxeterSystem, comp: frozenset[int]) -> str | None:
    nodes = sorted(comp)
    n = len(nodes)
    if n == 1:
        return "A1"
    if n == 2:
        m = system.m(*nodes)
        if m == INF:
            return None
        return {3: "A2", 4: "B2"}.get(int(m), f"I2({int(m)})")
    edges = {}
    for u, v in combinations(nodes, 2):
        m = system.m(u, v)
        if m >= 3:
            if m == INF or m >= 6:
                return None
            edges[frozenset((u, v))] = int(m)
    if len(edges) != n - 1:
        return None  # connected with a cycle
    adj = {u: [] for u in nodes}
    for e in edges:
        u, v = tuple(e)
        adj[u].append(v)
        adj[v].append(u)
    degrees = {u: len(adj[u]) for u in nodes}
    branch = [u for u in nodes if degrees[u] >= 3]
    if branch:
        if len(branch) > 1 or degrees[branch[0]] > 3 or any(m != 3 for m in edges.values()):
            return None
        centre = branch[0]
        arms = []
        for start in adj[centre]:
            length, prev, cur = 1, centre, start
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(arms))
    # a path: read its labels end to end
    end = next(u for u in nodes if degrees[u] == 1)
    path = [end]
    while len(path) < n:
        path.append(next(w for w in adj[path[-1]] if w not in path))
    labels = [edges[frozenset((path[k], path[k + 1]))] for k in range(n - 1)]
    special = [(k, m) for k, m in enumerate(labels) if m != 3]
    if not special:
        return f"A{n}"
    if len(special) > 1:
        return None
    k, m = special[0]
    at_end = k in (0, n - 2)
    if m == 4:
        if at_end:
            return f"B{n}"
        if n == 4:
            return "F4"
        return None
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return None


def classify_subset(system: CoxeterSystem, J: Iterable[int]) -> SubsetClassification:
    J = _check_subset(system, J)
    comps = []
    for comp in coxeter_components(system, J):
        label = _classify_component(system, comp)
        if label is None:
            return SubsetClassification(J, False)
        comps.append((comp, label))
    comps.sort(key=lambda c: sorted(c[0]))
    return SubsetClassification(J, True, tuple(comps))


def is_finite_type(system: CoxeterSystem, J: Iterable[int]) -> bool:
    return classify_subset(system, J).finite


def enumerate_sf(system: CoxeterSystem) -> list[frozenset[int]]:
    """All finite-type subsets, ordered by size then lexicographically."""
    out = []
    for k in range(system.rank + 1):
        for J in combinations(range(system.rank), k):
            if is_finite_type(system, J):
                out.append(frozenset(J))
    return out


def family_order(label: str) -> int:
    """Order of the finite Coxeter group with the given family label."""
    if label.startswith("I2("):
        return 2 * int(label[3:-1])
    fixed = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152,
             "H3": 120, "H4": 14400}
    if label in fixed:
        return fixed[label]
    family, n = label[0], int(label[1:])
    if family == "A":
        return math.factorial(n + 1)
    if family == "B":
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    raise ValueError(f"unknown family label {label!r}")


def gram_matrix(system: CoxeterSystem, J: Iterable[int]) -> np.ndarray:
    nodes = sorted(J)
    G = np.eye(len(nodes))
    for a, b in combinations(range(len(nodes)), 2):
        m = system.m(nodes[a], nodes[b])
        G[a, b] = G[b, a] = -1.0 if m == INF else -math.cos(math.pi / m)
    return G


def gram_positive_definite(system: CoxeterSystem, J: Iterable[int]) -> tuple[bool, float]:
    """Floating-point cross-check of finiteness via the cosine form.

    Callers should treat ``abs(estimate) < 1e-6`` as inconclusive.
    """
    J = _check_subset(system, J)
    if not J:
        return True, 1.0
    eig = float(np.linalg.eigvalsh(gram_matrix(system, J)).min())
    return eig > 0, eig


# --- Coxeter group word problem -----------------------------------------------


def shortlex_key(word: Word):
    return (len(word), word)


def braid_class(word: Word, relations: Sequence[tuple[Word, Word]], cap: int = DEFAULT_CLASS_CAP) -> set[Word]:
    """All words reachable from ``word`` by braid substitutions."""
    by_first: dict[int, list[tuple[Word, Word]]] = {}
    for lhs, rhs in relations:
        by_first.setdefault(lhs[0], []).append((lhs, rhs))
    seen = {word}
    queue = deque([word])
    n = len(word)
    while queue:
        w = queue.popleft()
        for i in range(n):
            for lhs, rhs in by_first.get(w[i], ()):
                k = len(lhs)
                if i + k <= n and w[i:i + k] == lhs:
                    v = w[:i] + rhs + w[i + k:]
                    if v not in seen:
                        seen.add(v)
                        if len(seen) > cap:
                            raise ClassSizeExceeded(
                                f"braid class of length-{n} word exceeded {cap} words"
                            )
                        queue.append(v)
    return seen


def has_square(word: Word) -> bool:
    return any(word[i] == word[i + 1] for i in range(len(word) - 1))


@dataclass(frozen=True)
class WElement:
    word: Word

    def __len__(self):
        return len(self.word)


class CoxeterGroup:
    """Word problem in W(J) by braid-move closure plus ss-deletion."""

    def __init__(self, system: CoxeterSystem, J: Iterable[int] | None = None, cap: int = DEFAULT_CLASS_CAP):
        self.system = system
        self.J = frozenset(range(system.rank)) if J is None else _check_subset(system, J)
        self.cap = cap
        self._relations = system.relations(self.J)
        self._memo: dict[Word, Word] = {}

    def canonical(self, word: Iterable[int]) -> WElement:
        word = tuple(word)
        if any(ch not in self.J for ch in word):
            raise ValueError("word uses letters outside J")
        return WElement(self._reduce(word))

    def _reduce(self, word: Word) -> Word:
        if word in self._memo:
            return self._memo[word]
        # fold letter by letter so every closure is of (reduced word)·s
        reduced: Word = ()
        for k, s in enumerate(word):
            reduced = self._reduce_step(reduced + (s,)) if k else (s,)
        self._memo[word] = reduced
        return reduced

    def _reduce_step(self, word: Word) -> Word:
        if word in self._memo:
            return self._memo[word]
        current = word
        while True:
            cls = braid_class(current, self._relations, self.cap)
            squares = sorted((w for w in cls if has_square(w)), key=shortlex_key)
            if not squares:
                result = min(cls, key=shortlex_key)
                for w in cls:
                    self._memo[w] = result
                break
            w = squares[0]
            i = next(i for i in range(len(w) - 1) if w[i] == w[i + 1])
            current = w[:i] + w[i + 2:]
            if current in self._memo:
                result = self._memo[current]
                break
        self._memo[word] = result
        return result

    def multiply(self, x: WElement, y: WElement) -> WElement:
        return WElement(self._reduce(x.word + y.word))

    def length(self, word: Iterable[int]) -> int:
        return len(self._reduce(tuple(word)))

    def longest_element(self) -> WElement:
        if not self.J:
            raise ValueError("longest element of the empty subset is not defined")
        if not is_finite_type(self.system, self.J):
            raise InfiniteTypeError(f"W{self.system.format_subset(self.J)} is infinite")
        w: Word = ()
        gens = sorted(self.J)
        grew = True
        while grew:
            grew = False
            for s in gens:
                v = self._reduce(w + (s,))
                if len(v) > len(w):
                    w, grew = v, True
                    break
        return WElement(w)

    def elements(self, max_len: int | None = None, max_count: int = DEFAULT_CLASS_CAP) -> list[WElement]:
        """Breadth-first enumeration of W(J) (optionally only up to a length)."""
        layer = {()}
        seen = {()}
        gens = sorted(self.J)
        length = 0
        while layer and (max_len is None or length < max_len):
            nxt = set()
            for w in layer:
                for s in gens:
                    v = self._reduce(w + (s,))
                    if len(v) == length + 1 and v not in seen:
                        nxt.add(v)
            seen |= nxt
            if len(seen) > max_count:
                raise ClassSizeExceeded(f"more than {max_count} Coxeter group elements")
            layer = nxt
            length += 1
        return [WElement(w) for w in sorted(seen, key=shortlex_key)]


def w_canonical(system: CoxeterSystem, J: Iterable[int], word: Iterable[int], cap: int = DEFAULT_CLASS_CAP) -> WElement:
    return CoxeterGroup(system, J, cap).canonical(word)


def longest_element(system: CoxeterSystem, J: Iterable[int]) -> WElement:
    return CoxeterGroup(system, J).longest_element()
