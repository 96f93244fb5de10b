"""Planted planar black/white trees indexing the cells of normalized cacti.

A tree is stored as its black root: a tuple of white nodes. A white node is a
pair ``(label, children)`` whose children are black nodes, i.e. tuples of white
nodes again. The degree of a tree (its cell dimension) is the number of
non-root black vertices.

Text encoding: a black node is written ``[w1,w2,...]`` and a white node is its
label followed by its black children, so ``[1[3][2]]`` is the white root 1
carrying two branches, 3 then 2, and ``[1,2]`` is the corolla ``scc(12)``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .seqcomb import NrSequence, Unshuffle, all_unshuffles, as_sequence, remove_first

White = tuple  # (label, tuple[Black, ...])
Black = tuple  # tuple[White, ...]


def _black_labels(black: Black) -> list[int]:
    out = []
    for label, kids in black:
        out.append(label)
        for k in kids:
            out.extend(_black_labels(k))
    return out


def _black_degree(black: Black) -> int:
    return sum(len(kids) + sum(_black_degree(k) for k in kids) for _, kids in black)


def _black_encode(black: Black) -> str:
    return "[" + ",".join(str(lab) + "".join(_black_encode(k) for k in kids) for lab, kids in black) + "]"


@dataclass(frozen=True)
class BWTree:
    """Planted planar bipartite tree with black root and labelled white vertices."""

    root: Black
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.root))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"BWTree({self.encoding})"

    def __str__(self):
        return self.encoding

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.degree, self.encoding)

    @classmethod
    def parse(cls, text: str) -> "BWTree":
        tree = cls(_parse_black(text))
        tree.validate()
        return tree

    def validate(self) -> None:
        if not self.root:
            raise ValueError("a tree needs at least one white vertex")
        labels = self.labels_list
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated white label in {self.encoding}")

        def check(black, is_root):
            if not is_root and not black:
                raise ValueError("non-root black vertex without white children")
            for lab, kids in black:
                if not isinstance(lab, int) or lab < 1:
                    raise ValueError(f"bad label {lab!r}")
                for k in kids:
                    check(k, False)

        check(self.root, True)

    @property
    def encoding(self) -> str:
        return _black_encode(self.root)

    @property
    def labels_list(self) -> list[int]:
        return _black_labels(self.root)

    @property
    def labels(self) -> frozenset[int]:
        return frozenset(self.labels_list)

    @property
    def n(self) -> int:
        return len(self.labels_list)

    @property
    def degree(self) -> int:
        return _black_degree(self.root)

    @property
    def black_count(self) -> int:
        return self.degree + 1

    def is_white_rooted(self) -> bool:
        return len(self.root) == 1

    @property
    def white_root(self) -> int:
        if not self.is_white_rooted():
            raise ValueError(f"{self.encoding} is black-rooted")
        return self.root[0][0]

    @property
    def initial_branching(self) -> int:
        """Number of incoming edges at the white root; undefined for black-rooted trees."""
        if not self.is_white_rooted():
            raise ValueError(f"initial branching number undefined for black-rooted {self.encoding}")
        return len(self.root[0][1])

    def arities(self) -> dict[int, int]:
        """Label -> number of black children (incoming edges)."""
        out = {}

        def walk(black):
            for lab, kids in black:
                out[lab] = len(kids)
                for k in kids:
                    walk(k)

        walk(self.root)
        return out

    def leaf_paths(self) -> list[tuple[int, ...]]:
        """White labels along each root-to-leaf path."""
        paths = []

        def walk(black, prefix):
            for lab, kids in black:
                here = prefix + (lab,)
                if not kids:
                    paths.append(here)
                for k in kids:
                    walk(k, here)

        walk(self.root, ())
        return paths

    def relabel(self, mapping) -> "BWTree":
        def rb(black):
            return tuple((mapping[lab], tuple(rb(k) for k in kids)) for lab, kids in black)

        return BWTree(rb(self.root))

    def to_dict(self) -> dict:
        return {"label_set": sorted(self.labels), "encoding": self.encoding, "degree": self.degree}


_TOKEN = re.compile(r"\s*(\[|\]|,|\d+)")


def _parse_black(text: str) -> Black:
    tokens = [m.group(1) for m in _TOKEN.finditer(text)]
    if "".join(tokens) != re.sub(r"\s+", "", text):
        raise ValueError(f"cannot parse tree encoding {text!r}")
    pos = 0

    def black():
        nonlocal pos
        if tokens[pos] != "[":
            raise ValueError(f"expected '[' in {text!r}")
        pos += 1
        whites = []
        while tokens[pos] != "]":
            whites.append(white())
            if tokens[pos] == ",":
                pos += 1
        pos += 1
        return tuple(whites)

    def white():
        nonlocal pos
        tok = tokens[pos]
        if not tok.isdigit():
            raise ValueError(f"expected a label in {text!r}")
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] == "[":
            kids.append(black())
        return (int(tok), tuple(kids))

    try:
        out = black()
    except IndexError:
        raise ValueError(f"truncated tree encoding {text!r}") from None
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


def scc(sigma) -> BWTree:
    """Spineless corolla: all white vertices attached to the root in order."""
    sigma = as_sequence(sigma)
    return BWTree(tuple((x, ()) for x in sigma.letters))


def caterpillar(sigma) -> BWTree:
    """The tree ``B+_{s1}(B+_{s2}(...scc(s_n)))`` whose label order is total."""
    sigma = as_sequence(sigma)
    node: Black = ((sigma[-1], ()),)
    for x in reversed(sigma.letters[:-1]):
        node = ((x, (node,)),)
    return BWTree(node)


# ---------------------------------------------------------------- collapses


def _collapse_black(black: Black) -> list[Black]:
    out = []
    for i, (lab, kids) in enumerate(black):
        pre, post = black[:i], black[i + 1:]
        w = len(kids)
        if w:
            out.append(pre + kids[0] + ((lab, kids[1:]),) + post)
            for j in range(w - 1):
                merged = kids[:j] + (kids[j] + kids[j + 1],) + kids[j + 2:]
                out.append(pre + ((lab, merged),) + post)
            out.append(pre + ((lab, kids[:-1]),) + kids[-1] + post)
        for c, kid in enumerate(kids):
            for new_kid in _collapse_black(kid):
                out.append(pre + ((lab, kids[:c] + (new_kid,) + kids[c + 1:]),) + post)
    return out


def collapses(tau: BWTree) -> list[BWTree]:
    """All single angle collapses of ``tau`` (one per angle, repeats kept)."""
    return [BWTree(b) for b in _collapse_black(tau.root)]


def collapse_kinds(tau: BWTree) -> list[tuple[BWTree, str]]:
    """Collapses tagged ``"outer"`` (against the outgoing edge) or ``"inner"``."""
    out = []

    def walk(black, rebuild):
        for i, (lab, kids) in enumerate(black):
            pre, post = black[:i], black[i + 1:]
            w = len(kids)
            if w:
                out.append((rebuild(pre + kids[0] + ((lab, kids[1:]),) + post), "outer"))
                for j in range(w - 1):
                    merged = kids[:j] + (kids[j] + kids[j + 1],) + kids[j + 2:]
                    out.append((rebuild(pre + ((lab, merged),) + post), "inner"))
                out.append((rebuild(pre + ((lab, kids[:-1]),) + kids[-1] + post), "outer"))
            for c in range(w):
                def inner(nb, pre=pre, post=post, lab=lab, kids=kids, c=c):
                    return rebuild(pre + ((lab, kids[:c] + (nb,) + kids[c + 1:]),) + post)

                walk(kids[c], inner)

    walk(tau.root, BWTree)
    return out


def down_closure(trees: Iterable[BWTree]) -> set[BWTree]:
    """All trees reachable by iterated collapses (the trees themselves included)."""
    seen = set(trees)
    stack = list(seen)
    while stack:
        t = stack.pop()
        for c in collapses(t):
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


# ----------------------------------------------------------- label orders


@dataclass(frozen=True)
class LabelOrder:
    """Strict partial order on labels; ``(a, b)`` means ``a`` lies below ``b``."""

    relation: frozenset

    def is_strict_partial_order(self) -> bool:
        rel = self.relation
        if any(a == b for a, b in rel):
            return False
        return all((a, d) in rel for a, b in rel for c, d in rel if b == c)

    def coarser_than(self, other: "LabelOrder") -> bool:
        return self.relation <= other.relation

    def compatible_with(self, phi) -> bool:
        pos = {x: i for i, x in enumerate(as_sequence(phi).letters)}
        return all(pos[a] < pos[b] for a, b in self.relation)

    @classmethod
    def total(cls, phi) -> "LabelOrder":
        letters = as_sequence(phi).letters
        return cls(frozenset(itertools.combinations(letters, 2)))


def partial_order(tau: BWTree) -> LabelOrder:
    """Height order on the white labels: ``b`` above ``a`` iff b descends from a."""
    rel = set()

    def walk(black, ancestors):
        for lab, kids in black:
            rel.update((a, lab) for a in ancestors)
            for k in kids:
                walk(k, ancestors + (lab,))

    walk(tau.root, ())
    return LabelOrder(frozenset(rel))


def compatible(tau: BWTree, phi) -> bool:
    """Every root-to-leaf label path is a subsequence of ``phi``."""
    phi = as_sequence(phi)
    if tau.labels != phi.support:
        raise ValueError(f"label set of {tau} differs from {phi}")
    return all(NrSequence(p).is_subsequence_of(phi.letters) for p in tau.leaf_paths())


# ------------------------------------------------------------- enumeration


def _ordered_partitions(items: tuple[int, ...]):
    """Ordered set partitions of ``items`` into nonempty blocks (blocks keep item order)."""
    if not items:
        yield ()
        return
    n = len(items)
    for k in range(1, n + 1):
        for labels in itertools.product(range(k), repeat=n):
            if len(set(labels)) != k:
                continue
            yield tuple(tuple(x for x, l in zip(items, labels) if l == b) for b in range(k))


@lru_cache(maxsize=None)
def _trees(labels: tuple[int, ...], order: tuple[int, ...] | None) -> tuple[Black, ...]:
    # labels sorted; order, when given, restricts to trees compatible with it
    out = []
    for blocks in _ordered_partitions(labels):
        choices = [_wtrees(b, order) for b in blocks]
        for combo in itertools.product(*choices):
            out.append(tuple(w for w in combo))
    return tuple(out)


@lru_cache(maxsize=None)
def _wtrees(labels: tuple[int, ...], order: tuple[int, ...] | None) -> tuple[White, ...]:
    out = []
    if order is None:
        roots = labels
    else:
        rank = {x: i for i, x in enumerate(order)}
        roots = (min(labels, key=rank.__getitem__),)
    for s in roots:
        rest = tuple(x for x in labels if x != s)
        sub = None if order is None else tuple(x for x in order if x != s)
        for blocks in _ordered_partitions(rest):
            choices = [_trees(b, _restrict(sub, b)) for b in blocks]
            for combo in itertools.product(*choices):
                out.append((s, tuple(combo)))
    return tuple(out)


def _restrict(order, block):
    if order is None:
        return None
    keep = set(block)
    return tuple(x for x in order if x in keep)


def enumerate_trees(labels: Sequence[int], degree: int | None = None) -> list[BWTree]:
    """All trees of ``T_S`` for the label set ``S``, sorted by (degree, encoding)."""
    labels = tuple(labels)
    if not labels:
        raise ValueError("label list must be nonempty")
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate labels in {labels}")
    trees = [BWTree(b) for b in _trees(tuple(sorted(labels)), None)]
    if degree is not None:
        trees = [t for t in trees if t.degree == degree]
    trees.sort(key=BWTree.sort_key)
    return trees


def trees_by_degree(labels: Sequence[int]) -> dict[int, list[BWTree]]:
    out: dict[int, list[BWTree]] = {}
    for t in enumerate_trees(labels):
        out.setdefault(t.degree, []).append(t)
    return out


def T_sigma(sigma, degree: int | None = None) -> list[BWTree]:
    """Trees whose label order is compatible with the total order ``sigma``."""
    sigma = as_sequence(sigma)
    labels = tuple(sorted(sigma.letters))
    trees = [BWTree(b) for b in _trees(labels, sigma.letters)]
    if degree is not None:
        trees = [t for t in trees if t.degree == degree]
    trees.sort(key=BWTree.sort_key)
    return trees


# ------------------------------------------------------------ B operators


def _check_disjoint(forest: Sequence[BWTree], extra: Iterable[int] = ()) -> None:
    seen = set(extra)
    for t in forest:
        if seen & t.labels:
            raise ValueError(f"label clash: {sorted(seen & t.labels)}")
        seen |= t.labels


def b_plus_black(forest: Sequence[BWTree]) -> BWTree:
    """Identify the black roots of an ordered forest (bar notation ``t1|...|tk``)."""
    forest = list(forest)
    if not forest:
        raise ValueError("empty forest")
    _check_disjoint(forest)
    return BWTree(tuple(w for t in forest for w in t.root))


def b_minus_black(tau: BWTree) -> list[BWTree]:
    """Cut every edge at the black root; each branch gets its own black root."""
    return [BWTree((w,)) for w in tau.root]


def b_minus_white(tau: BWTree) -> tuple[int, list[BWTree]]:
    """Cut above the white root; returns its label and the ordered branches."""
    if not tau.is_white_rooted():
        raise ValueError(f"{tau} has no white root")
    label, kids = tau.root[0]
    return label, [BWTree(k) for k in kids]


def b_plus_s(s: int, forest: Sequence[BWTree]) -> BWTree:
    """Graft the forest, in order, onto the corolla ``scc(s)``."""
    forest = list(forest)
    _check_disjoint(forest, (s,))
    return BWTree(((int(s), tuple(t.root for t in forest)),))


# -------------------------------------------------- decomposition of P_n


def branch_unshuffle(tau: BWTree, sigma) -> Unshuffle:
    """Unshuffle of ``sigma`` minus its first letter read off the branches of ``tau``."""
    sigma = as_sequence(sigma)
    _, forest = b_minus_white(tau)
    blocks = []
    for t in forest:
        labs = t.labels
        blocks.append(tuple(x for x in sigma.letters if x in labs))
    return Unshuffle(tuple(blocks))


def decomposition(sigma) -> dict[int, dict[Unshuffle, list[BWTree]]]:
    """Top trees of ``T_sigma`` split by initial branching number and branch unshuffle."""
    sigma = as_sequence(sigma)
    n = len(sigma)
    if n < 2:
        raise ValueError("decomposition needs |sigma| >= 2")
    out: dict[int, dict[Unshuffle, list[BWTree]]] = {}
    for tau in T_sigma(sigma, n - 1):
        k = tau.initial_branching
        out.setdefault(k, {}).setdefault(branch_unshuffle(tau, sigma), []).append(tau)
    return {k: dict(sorted(v.items())) for k, v in sorted(out.items())}


def piece(sigma, l: Unshuffle) -> list[BWTree]:
    """``T^{n-1}_sigma[l]`` built directly by grafting onto ``scc(sigma_1)``."""
    sigma = as_sequence(sigma)
    choices = [T_sigma(NrSequence(b), len(b) - 1) for b in l.blocks]
    return sorted(b_plus_s(sigma[0], combo) for combo in itertools.product(*choices))


def piece_closure(sigma, l: Unshuffle) -> set[BWTree]:
    """``T_sigma[l]``: everything below a top tree of the piece."""
    return down_closure(piece(sigma, l))


def filtration(sigma, k: int) -> list[BWTree]:
    """``T_{sigma,k}``: closure of the top trees with initial branching at most ``k``."""
    sigma = as_sequence(sigma)
    dec = decomposition(sigma)
    tops = [t for q, pieces in dec.items() if q <= k for ts in pieces.values() for t in ts]
    return sorted(down_closure(tops))


def face_trees(phi, k: int) -> list[BWTree]:
    """``T^face_phi(k)``: trees ``t1|...|tk`` with each ``ti`` top-dimensional in ``T_{li}``."""
    phi = as_sequence(phi)
    out = []
    for l in all_unshuffles(phi, k):
        choices = [T_sigma(NrSequence(b), len(b) - 1) for b in l.blocks]
        out.extend(b_plus_black(combo) for combo in itertools.product(*choices))
    return sorted(out)


@dataclass
class FaceTopReport:
    sigma: NrSequence
    domain_sizes: dict[int, int]
    target_sizes: dict[int, int]
    mapping: dict[BWTree, BWTree]
    injective: bool
    surjective: bool
    preserves_k: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective and self.preserves_k


def face_top_bijection(sigma) -> FaceTopReport:
    """Check that ``B+_{sigma_1} o B-_b`` maps face trees of ``sigma minus sigma_1``
    bijectively onto the top trees of ``T_sigma``."""
    sigma = as_sequence(sigma)
    n = len(sigma)
    if n < 2:
        raise ValueError("needs |sigma| >= 2")
    phi = remove_first(sigma)
    mapping = {}
    domain_sizes = {}
    preserves_k = True
    for k in range(1, n):
        dom = face_trees(phi, k)
        domain_sizes[k] = len(dom)
        for f in dom:
            img = b_plus_s(sigma[0], b_minus_black(f))
            mapping[f] = img
            preserves_k &= img.initial_branching == k
    targets = T_sigma(sigma, n - 1)
    target_sizes: dict[int, int] = {}
    for t in targets:
        target_sizes[t.initial_branching] = target_sizes.get(t.initial_branching, 0) + 1
    images = list(mapping.values())
    return FaceTopReport(
        sigma=sigma,
        domain_sizes=domain_sizes,
        target_sizes=dict(sorted(target_sizes.items())),
        mapping=mapping,
        injective=len(set(images)) == len(images),
        surjective=set(images) == set(targets),
        preserves_k=preserves_k,
    )


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out
