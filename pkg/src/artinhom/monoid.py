"""Exact arithmetic in the positive Artin monoid M(S).

Elements are canonical words: tuples of generator indices that are
shortlex-minimal in their braid-equivalence class. The class closure is the
ground truth for equality; everything else (divisibility, lcm, normal
forms) is derived from scanning representatives.
"""
from __future__ import annotations

import hashlib
import os
from collections import defaultdict
from functools import cached_property
from typing import Iterable

from .coxeter import (
    DEFAULT_CLASS_CAP,
    CoxeterGroup,
    CoxeterSystem,
    InfiniteTypeError,
    Word,
    braid_class,
    enumerate_sf,
    has_square,
    is_finite_type,
    shortlex_key,
)

Element = Word
IDENTITY: Element = ()
DEFAULT_LCM_CAP = 24


class NotDivisible(ValueError):
    pass


class LcmInconclusive(RuntimeError):
    """The bounded lcm search ran out of room without deciding."""


class ArtinMonoid:
    """Word arithmetic for M(S).

    A single instance owns the memo tables; share it only between threads
    that tolerate duplicate work (dict updates are atomic under the GIL,
    so the worst case is recomputing a class).
    """

    def __init__(self, system: CoxeterSystem, cap: int = DEFAULT_CLASS_CAP,
                 lcm_cap: int = DEFAULT_LCM_CAP):
        self.system = system
        self.cap = cap
        self.lcm_cap = lcm_cap
        self._relations = system.relations()
        self._canon: dict[Word, Element] = {}
        self._classes: dict[Element, frozenset[Word]] = {}
        self._delta: dict[frozenset, Element] = {}
        self._ending: dict[Element, frozenset[int]] = {}
        self._finite: dict[frozenset, bool] = {}

    # -- equality ---------------------------------------------------------

    def word_class(self, word: Iterable[int]) -> frozenset[Word]:
        word = tuple(word)
        canon = self._canon.get(word)
        if canon is not None and canon in self._classes:
            return self._classes[canon]
        cls = frozenset(braid_class(word, self._relations, self.cap))
        canon = min(cls, key=shortlex_key)
        self._classes[canon] = cls
        for w in cls:
            self._canon[w] = canon
        return cls

    def canonical(self, word: Iterable[int]) -> Element:
        word = tuple(word)
        canon = self._canon.get(word)
        if canon is None:
            self.word_class(word)
            canon = self._canon[word]
        return canon

    def parse(self, text: str) -> Element:
        return self.canonical(self.system.parse_word(text))

    def format(self, x: Element) -> str:
        return self.system.format_word(x)

    def equal(self, u: Iterable[int], v: Iterable[int]) -> bool:
        return self.canonical(u) == self.canonical(v)

    def multiply(self, *factors: Element) -> Element:
        word: Word = ()
        for f in factors:
            word += tuple(f)
        return self.canonical(word)

    def is_finite_type(self, J) -> bool:
        J = frozenset(J)
        if J not in self._finite:
            self._finite[J] = is_finite_type(self.system, J)
        return self._finite[J]

    @cached_property
    def sf(self) -> list[frozenset[int]]:
        return enumerate_sf(self.system)

    # -- divisibility -------------------------------------------------------

    def support(self, x: Element) -> frozenset[int]:
        return frozenset(x)

    def ending_set(self, x: Element) -> frozenset[int]:
        if not x:
            raise ValueError("the identity has no ending letters")
        x = self.canonical(x)
        I = self._ending.get(x)
        if I is None:
            I = frozenset(w[-1] for w in self.word_class(x))
            self._ending[x] = I
        return I

    def starting_set(self, x: Element) -> frozenset[int]:
        if not x:
            raise ValueError("the identity has no starting letters")
        return frozenset(w[0] for w in self.word_class(x))

    def is_right_divisor(self, d: Element, x: Element) -> bool:
        k = len(d)
        if k > len(x):
            return False
        if k == 0:
            return True
        d = self.canonical(d)
        tails = {w[len(w) - k:] for w in self.word_class(x)}
        return any(self.canonical(t) == d for t in tails)

    def is_left_divisor(self, d: Element, x: Element) -> bool:
        k = len(d)
        if k > len(x):
            return False
        if k == 0:
            return True
        d = self.canonical(d)
        heads = {w[:k] for w in self.word_class(x)}
        return any(self.canonical(h) == d for h in heads)

    def right_quotient(self, x: Element, d: Element) -> Element:
        """The q with x = q·d."""
        k = len(d)
        d = self.canonical(d)
        if k <= len(x):
            for w in self.word_class(x):
                cut = len(w) - k
                if self.canonical(w[cut:]) == d:
                    return self.canonical(w[:cut])
        raise NotDivisible(f"{self.format(d)} does not right-divide {self.format(x)}")

    def left_quotient(self, x: Element, d: Element) -> Element:
        """The q with x = d·q."""
        k = len(d)
        d = self.canonical(d)
        if k <= len(x):
            for w in self.word_class(x):
                if self.canonical(w[:k]) == d:
                    return self.canonical(w[k:])
        raise NotDivisible(f"{self.format(d)} does not left-divide {self.format(x)}")

    def left_divisors(self, x: Element) -> set[Element]:
        out = {IDENTITY}
        for w in self.word_class(x):
            for k in range(1, len(w) + 1):
                out.add(self.canonical(w[:k]))
        return out

    def right_divisors(self, x: Element) -> set[Element]:
        out = {IDENTITY}
        for w in self.word_class(x):
            for k in range(len(w)):
                out.add(self.canonical(w[k:]))
        return out

    # -- Garside elements and normal forms ----------------------------------

    def delta(self, J: Iterable[int]) -> Element:
        """Lift of the longest element of W(J); the identity for J empty."""
        J = frozenset(J)
        if J not in self._delta:
            if not J:
                self._delta[J] = IDENTITY
            else:
                if not self.is_finite_type(J):
                    raise InfiniteTypeError(
                        f"{self.system.format_subset(J)} is not of finite type"
                    )
                w0 = CoxeterGroup(self.system, J, self.cap).longest_element()
                self._delta[J] = self.canonical(w0.word)
        return self._delta[J]

    def in_D(self, x: Element) -> bool:
        if not x:
            return False
        return self.delta(self.ending_set(x)) == x

    def bs_normal_form(self, x: Element) -> list[frozenset[int]]:
        """Subsets (I_k, ..., I_1) with x = Δ_{I_k}···Δ_{I_1}."""
        if not x:
            raise ValueError("the identity has an empty normal form")
        factors = []
        rest = self.canonical(x)
        while rest:
            I = self.ending_set(rest)
            factors.append(I)
            rest = self.right_quotient(rest, self.delta(I))
        return factors[::-1]

    # -- common multiples ----------------------------------------------------

    def default_lcm_bound(self, a: Element, b: Element) -> int:
        T = frozenset(a) | frozenset(b)
        if self.is_finite_type(T):
            return len(a) + len(b) + len(self.delta(T))
        return max(self.lcm_cap, len(a), len(b))

    def _layers(self, letters: list[int]):
        layer = {IDENTITY}
        yield layer
        while True:
            layer = {self.canonical(x + (s,)) for x in layer for s in letters}
            yield layer

    def left_lcm(self, a: Element, b: Element, bound: int | None = None) -> Element | None:
        """Least common left multiple of a and b.

        Returns None when no common left multiple exists; raises
        LcmInconclusive if the search reaches ``bound`` letters undecided.
        """
        a, b = self.canonical(a), self.canonical(b)
        if not a:
            return b
        if not b:
            return a
        if self.is_right_divisor(a, b):
            return b
        if self.is_right_divisor(b, a):
            return a
        # any common multiple c has I(c) ⊇ I(a) ∪ I(b) and I(c) is of finite type
        if not self.is_finite_type(self.ending_set(a) | self.ending_set(b)):
            return None
        if bound is None:
            bound = self.default_lcm_bound(a, b)
        # lcms of elements in a parabolic submonoid stay in it
        letters = sorted(frozenset(a) | frozenset(b))
        for k, layer in enumerate(self._layers(letters)):
            ell = k + len(a)
            if ell > bound:
                break
            if ell < len(b):
                continue
            hits = [c for c in (self.canonical(x + a) for x in layer) if self.is_right_divisor(b, c)]
            if hits:
                hits = set(hits)
                if len(hits) > 1:
                    raise AssertionError("two minimal common multiples; monoid is not Gaussian?")
                return hits.pop()
        raise LcmInconclusive(
            f"no common left multiple of {self.format(a)} and {self.format(b)} within {bound} letters"
        )

    def left_complement(self, x: Element, y: Element, bound: int | None = None) -> Element | None:
        """x/y, defined by llcm(x, y) = (x/y)·y; None if no common multiple."""
        c = self.left_lcm(x, y, bound)
        if c is None:
            return None
        return self.right_quotient(c, y)

    # -- square-free elements ---------------------------------------------

    def is_square_free(self, x: Element) -> bool:
        return not any(has_square(w) for w in self.word_class(x))

    def square_free_elements(self, max_len: int | None = None) -> set[Element]:
        """Lifts of Coxeter group elements (identity excluded).

        With ``max_len=None`` the whole of W(S) is enumerated, which needs
        finite type.
        """
        if max_len is None and not self.is_finite_type(range(self.system.rank)):
            raise InfiniteTypeError("full square-free enumeration needs finite type")
        W = CoxeterGroup(self.system, cap=self.cap)
        return {self.canonical(w.word) for w in W.elements(max_len=max_len) if w.word}

    # -- enumeration ----------------------------------------------------------

    def elements_by_length(self, max_len: int) -> list[list[Element]]:
        """Canonical elements grouped by length 0..max_len."""
        out = []
        letters = list(range(self.system.rank))
        for k, layer in enumerate(self._layers(letters)):
            if k > max_len:
                break
            out.append(sorted(layer, key=shortlex_key))
        return out

    # -- on-disk cache ----------------------------------------------------------

    def system_hash(self) -> str:
        return hashlib.sha256(self.system.to_text().encode()).hexdigest()[:16]

    def load_cache(self, directory) -> int:
        path = os.path.join(directory, self.system_hash() + ".tsv")
        if not os.path.exists(path):
            return 0
        groups = defaultdict(set)
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                word, canon = line.rstrip("\n").split("\t")
                w = tuple(int(t) for t in word.split(",") if t)
                c = tuple(int(t) for t in canon.split(",") if t)
                groups[c].add(w)
        for canon, words in groups.items():
            self._classes[canon] = frozenset(words)
            for w in words:
                self._canon[w] = canon
        return len(groups)

    def save_cache(self, directory) -> str:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, self.system_hash() + ".tsv")
        with open(path, "w", encoding="utf-8") as fh:
            for canon in sorted(self._classes, key=shortlex_key):
                c = ",".join(map(str, canon))
                for w in sorted(self._classes[canon]):
                    fh.write(",".join(map(str, w)) + "\t" + c + "\n")
        return path
