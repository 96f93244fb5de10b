"""Chain-level composition of cactus cells written as sequences.

A b/w tree is turned into a word by walking around the outside of the
cactus and recording the lobe seen on each arc. A white vertex with ``w``
black children is visited ``w + 1`` times, so the word length is
``degree + n``. Composition ``u o_i v`` substitutes overlapping pieces of
``v`` for the occurrences of ``i`` in ``u``.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .trees import BWTree, T_sigma, compatible, enumerate_trees

# Splitting rule for u o_i v. With "overlapping", consecutive pieces share the
# letter at the cut. "disjoint" (pieces partition v, none empty) is kept for
# comparison. The overlapping rule reproduces the top-cell identity and both
# iteration statements; see validate_convention().
OVERLAPPING = "overlapping"
DISJOINT = "disjoint"
CONVENTION = OVERLAPPING


@dataclass(frozen=True, order=True)
class CactSequence:
    """A word in the letters ``1..n`` with no two equal neighbours."""

    word: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", w)
        if not w:
            raise ValueError("empty word")
        if any(a == b for a, b in zip(w, w[1:])):
            raise ValueError(f"equal neighbours in {self}")
        if set(w) != set(range(1, max(w) + 1)):
            raise ValueError(f"letters of {self} are not 1..n")

    @classmethod
    def parse(cls, text) -> "CactSequence":
        if isinstance(text, CactSequence):
            return text
        if isinstance(text, str):
            text = text.strip()
            parts = text.split() if " " in text else (text.split(",") if "," in text else list(text))
            return cls(tuple(int(p) for p in parts))
        return cls(tuple(text))

    @property
    def arity(self) -> int:
        return max(self.word)

    @property
    def degree(self) -> int:
        return len(self.word) - self.arity

    def __str__(self):
        sep = "" if self.arity < 10 else ","
        return sep.join(map(str, self.word))

    def __repr__(self):
        return f"CactSequence({self})"

    def __len__(self):
        return len(self.word)


def _seq(x) -> CactSequence:
    return x if isinstance(x, CactSequence) else CactSequence.parse(x)


class FormalSum:
    """Finite sum of cells with nonzero integer multiplicities."""

    def __init__(self, terms: Mapping | Iterable = ()):
        counts = Counter()
        items = terms.items() if isinstance(terms, Mapping) else ((t, 1) for t in terms)
        for k, m in items:
            counts[k] += m
        self.terms = {k: m for k, m in counts.items() if m != 0}

    def __add__(self, other: "FormalSum") -> "FormalSum":
        c = Counter(self.terms)
        c.update(other.terms)
        return FormalSum(c)

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms))

    @property
    def support(self) -> set:
        return set(self.terms)

    def multiplicities(self) -> set[int]:
        return set(self.terms.values())

    def to_trees(self) -> "FormalSum":
        return FormalSum({sequence_to_tree(k): m for k, m in self.terms.items()})

    def lines(self) -> list[str]:
        return [f"{m} × {k}" for k, m in sorted(self.terms.items(), key=lambda km: str(km[0]))]

    def to_dict(self) -> dict:
        return {str(k): m for k, m in sorted(self.terms.items(), key=lambda km: str(km[0]))}

    def __repr__(self):
        return "FormalSum(" + ", ".join(self.lines()) + ")"


# ------------------------------------------------------------ bijection


def _black_word(black) -> list[int]:
    out = []
    for lab, kids in black:
        out.append(lab)
        for k in kids:
            out.extend(_black_word(k))
            out.append(lab)
    return out


def tree_to_sequence(tau: BWTree) -> CactSequence:
    """Record the lobe label on each arc while walking around the cactus."""
    return CactSequence(tuple(_black_word(tau.root)))


def _parse_black_word(w: tuple[int, ...]):
    if not w:
        raise ValueError("empty black vertex")
    whites = []
    pos = 0
    while pos < len(w):
        lab = w[pos]
        end = len(w) - 1 - w[::-1].index(lab)
        chunk = w[pos:end + 1]
        cuts = [j for j, x in enumerate(chunk) if x == lab]
        kids = tuple(_parse_black_word(chunk[a + 1:b]) for a, b in zip(cuts, cuts[1:]))
        whites.append((lab, kids))
        pos = end + 1
    return tuple(whites)


def sequence_to_tree(s) -> BWTree:
    """Inverse of ``tree_to_sequence``; rejects words outside its image."""
    s = _seq(s)
    try:
        tau = BWTree(_parse_black_word(s.word))
        tau.validate()
    except ValueError as exc:
        raise ValueError(f"{s} is not the word of a tree: {exc}") from None
    if tree_to_sequence(tau) != s:
        raise ValueError(f"{s} is not the word of a tree")
    return tau


def has_crossing(word) -> tuple[int, int] | None:
    """A pair ``(i, j)`` with a subword ``i..j..i..j``, or None."""
    w = _seq(word).word
    for i, j in itertools.permutations(set(w), 2):
        state = 0
        pattern = (i, j, i, j)
        for x in w:
            if x == pattern[state]:
                state += 1
                if state == 4:
                    return (i, j)
    return None


# ----------------------------------------------------------- composition


def _splittings(v: tuple[int, ...], k: int, convention: str):
    m = len(v)
    if convention == OVERLAPPING:
        for cuts in itertools.combinations_with_replacement(range(m), k - 1):
            bounds = (0,) + cuts + (m - 1,)
            yield [v[a:b + 1] for a, b in zip(bounds, bounds[1:])]
    elif convention == DISJOINT:
        for cuts in itertools.combinations(range(1, m), k - 1):
            bounds = (0,) + cuts + (m,)
            yield [v[a:b] for a, b in zip(bounds, bounds[1:])]
    else:
        raise ValueError(f"unknown convention {convention!r}")


def compose(u, i: int, v, convention: str | None = None) -> FormalSum:
    """``u o_i v`` on words, with the standard relabelling."""
    u, v = _seq(u), _seq(v)
    convention = convention or CONVENTION
    if i not in u.word:
        raise ValueError(f"{i} is not a letter of {u}")
    p = v.arity
    vv = tuple(x + i - 1 for x in v.word)
    uu = tuple(x if x <= i else x + p - 1 for x in u.word)
    if set(vv) & (set(uu) - {i}):
        raise ValueError("label collision after relabelling")
    k = uu.count(i)
    out = Counter()
    for pieces in _splittings(vv, k, convention):
        it = iter(pieces)
        word = []
        for x in uu:
            word.extend(next(it) if x == i else (x,))
        if any(a == b for a, b in zip(word, word[1:])):
            continue
        out[CactSequence(tuple(word))] += 1
    return FormalSum(out)


def compose_sums(u: FormalSum, i: int, v: FormalSum, convention: str | None = None) -> FormalSum:
    total = Counter()
    for a, ma in u.terms.items():
        for b, mb in v.terms.items():
            for c, mc in compose(a, i, b, convention).terms.items():
                total[c] += ma * mb * mc
    return FormalSum(total)


TWO_LOBE = CactSequence((1, 2, 1))


@lru_cache(maxsize=None)
def _right(n: int, convention: str) -> FormalSum:
    if n == 2:
        return FormalSum({TWO_LOBE: 1})
    return compose_sums(FormalSum({TWO_LOBE: 1}), 1, _right(n - 1, convention), convention)


@lru_cache(maxsize=None)
def _left(n: int, convention: str) -> FormalSum:
    if n == 2:
        return FormalSum({TWO_LOBE: 1})
    return compose_sums(FormalSum({TWO_LOBE: 1}), 2, _left(n - 1, convention), convention)


@dataclass
class IterateReport:
    n: int
    chain: FormalSum
    expected: set
    support_ok: bool
    multiplicities_ok: bool

    @property
    def ok(self) -> bool:
        return self.support_ok and self.multiplicities_ok


def dyer_lashof_right(n: int, convention: str | None = None) -> IterateReport:
    """Right-nested ``t o_1 (t o_1 (... o_1 t))`` for the two-lobe cell ``t``.

    Expected: every top cell of ``T_{12..n}`` once.
    """
    if n < 2:
        raise ValueError("n >= 2")
    chain = _right(n, convention or CONVENTION)
    expected = {tree_to_sequence(t) for t in T_sigma(range(1, n + 1), n - 1)}
    return IterateReport(n, chain, expected, chain.support == expected, chain.multiplicities() <= {1})


def dyer_lashof_left(n: int, convention: str | None = None) -> IterateReport:
    """``t o_2 (t o_2 (...))``; expected to be the single caterpillar ``12..n..21``."""
    if n < 2:
        raise ValueError("n >= 2")
    chain = _left(n, convention or CONVENTION)
    word = tuple(range(1, n + 1)) + tuple(range(n - 1, 0, -1))
    expected = {CactSequence(word)}
    return IterateReport(n, chain, expected, chain.support == expected, chain.multiplicities() <= {1})


def top_cell_check(i: int, convention: str | None = None) -> bool:
    """Support of ``121 o_1 tau'`` over top cells ``tau'`` of ``T_{1..i}`` is the top of ``T_{1..i+1}``."""
    got = set()
    for t in T_sigma(range(1, i + 1), i - 1):
        got |= compose(TWO_LOBE, 1, tree_to_sequence(t), convention).support
    want = {tree_to_sequence(t) for t in T_sigma(range(1, i + 2), i)}
    return got == want


def validate_convention(max_i: int = 4) -> dict[str, bool]:
    """Which splitting rules pass the top-cell identity and the example values."""
    out = {}
    for conv in (OVERLAPPING, DISJOINT):
        ok = all(top_cell_check(i, conv) for i in range(1, max_i + 1))
        ok &= compose("121", 1, "121", conv).to_dict() == {"12131": 1, "12321": 1, "13121": 1}
        ok &= compose("121", 2, "121", conv).to_dict() == {"12321": 1}
        out[conv] = ok
    return out


# ------------------------------------------------------------- properties


def relabel_word(s, mapping: Mapping[int, int]) -> CactSequence:
    return CactSequence(tuple(mapping[x] for x in _seq(s).word))


def equivariance_holds(u, i: int, v, pi: Mapping[int, int], rho: Mapping[int, int]) -> bool:
    """Relabel ``u`` by ``pi`` and ``v`` by ``rho``, compose, and compare."""
    u, v = _seq(u), _seq(v)
    p = v.arity
    j = pi[i]

    def origin(x):
        if x < i:
            return ("u", x)
        if x < i + p:
            return ("v", x - i + 1)
        return ("u", x - p + 1)

    def target(o):
        kind, y = o
        if kind == "v":
            return j - 1 + rho[y]
        y = pi[y]
        return y if y < j else y + p - 1

    lhs = compose(relabel_word(u, pi), j, relabel_word(v, rho))
    rhs = FormalSum({relabel_word(w, {x: target(origin(x)) for x in set(w.word)}): m
                     for w, m in compose(u, i, v).terms.items()})
    return lhs == rhs


def random_equivariance_checks(trials: int = 50, seed: int = 0, max_arity: int = 3) -> list:
    """Spot checks on random pairs of tree words; returns failing inputs."""
    rng = random.Random(seed)
    pools = {n: [tree_to_sequence(t) for t in enumerate_trees(range(1, n + 1))] for n in range(1, max_arity + 1)}
    bad = []
    for _ in range(trials):
        a, b = rng.randint(1, max_arity), rng.randint(1, max_arity)
        u, v = rng.choice(pools[a]), rng.choice(pools[b])
        i = rng.randint(1, a)
        pi = dict(zip(range(1, a + 1), rng.sample(range(1, a + 1), a)))
        rho = dict(zip(range(1, b + 1), rng.sample(range(1, b + 1), b)))
        if not equivariance_holds(u, i, v, pi, rho):
            bad.append((str(u), i, str(v), pi, rho))
    return bad


def degree_additivity_violations(max_arity: int = 3) -> list:
    """Pairs of tree words whose composite has a summand of the wrong degree."""
    words = [tree_to_sequence(t) for n in range(1, max_arity + 1) for t in enumerate_trees(range(1, n + 1))]
    bad = []
    for u in words:
        for v in words:
            for i in range(1, u.arity + 1):
                for w in compose(u, i, v).support:
                    if w.degree != u.degree + v.degree:
                        bad.append((str(u), i, str(v), str(w)))
    return bad


def transport_check(i: int) -> list:
    """Top-cell summands for ``tau'`` in ``T_sigma`` lie in ``T_{sigma, i+1}``; returns violations."""
    bad = []
    for perm in itertools.permutations(range(1, i + 1)):
        ext = perm + (i + 1,)
        for t in T_sigma(perm, i - 1):
            for w in compose(TWO_LOBE, 1, tree_to_sequence(t)).support:
                tree = sequence_to_tree(w)
                if not compatible(tree, ext):
                    bad.append((t.encoding, str(w)))
    return bad


def associativity_defects(max_arity: int = 2) -> list:
    """Measured only: triples where the two bracketings of o_1 differ on supports."""
    words = [tree_to_sequence(t) for n in range(1, max_arity + 1) for t in enumerate_trees(range(1, n + 1))]
    bad = []
    for a, b, c in itertools.product(words, repeat=3):
        left = compose_sums(compose(a, 1, b), 1, FormalSum({c: 1}))
        right = compose_sums(FormalSum({a: 1}), 1, compose(b, 1, c))
        if left.support != right.support:
            bad.append((str(a), str(b), str(c)))
    return bad
