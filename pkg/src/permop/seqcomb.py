"""Non-repeating sequences, unshuffles and the posets indexing Milgram's model.

An unshuffle ``l1|l2|...|lk`` of a sequence is an ordered list of disjoint
subsequences covering its letters. Unshuffles of a permutation ``sigma`` are
the faces of one permutahedron; the union over all permutations is the face
poset of Milgram's complex.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True, order=True)
class NrSequence:
    """A finite list of pairwise distinct positive integers."""

    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("a sequence needs at least one letter")
        if len(set(letters)) != len(letters):
            raise ValueError(f"repeated letter in {letters}")
        if min(letters) < 1:
            raise ValueError("letters must be positive integers")

    @classmethod
    def parse(cls, text: str | Sequence[int]) -> "NrSequence":
        """Build from ``"3214"`` (single-digit letters) or an int sequence."""
        if isinstance(text, str):
            if "," in text:
                return cls(tuple(int(t) for t in text.split(",")))
            return cls(tuple(int(c) for c in text))
        return cls(tuple(text))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self):
        return _fmt_block(self.letters)

    def __repr__(self):
        return f"NrSequence({self})"

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.letters)

    def is_permutation(self) -> bool:
        return set(self.letters) == set(range(1, len(self.letters) + 1))

    def is_subsequence_of(self, other: Sequence[int]) -> bool:
        it = iter(other)
        return all(x in it for x in self.letters)


def _fmt_block(block: Sequence[int]) -> str:
    if all(x < 10 for x in block):
        return "".join(str(x) for x in block)
    return ",".join(str(x) for x in block)


def as_sequence(phi) -> NrSequence:
    if isinstance(phi, NrSequence):
        return phi
    return NrSequence.parse(phi)


@dataclass(frozen=True, order=True)
class Unshuffle:
    """Bar-separated list ``l1|...|lk`` of disjoint nonempty subsequences."""

    blocks: tuple[tuple[int, ...], ...]
    _support: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        blocks = tuple(tuple(int(x) for x in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        flat = [x for b in blocks for x in b]
        if len(set(flat)) != len(flat):
            raise ValueError(f"blocks of {self} are not disjoint")
        object.__setattr__(self, "_support", frozenset(flat))

    @classmethod
    def parse(cls, text: str) -> "Unshuffle":
        """Parse ``"153|49|76|28"``; comma-separated letters are also accepted."""
        parts = text.split("|")
        return cls(tuple(as_sequence(p).letters for p in parts))

    @classmethod
    def from_sequences(cls, seqs: Iterable) -> "Unshuffle":
        return cls(tuple(as_sequence(s).letters for s in seqs))

    def __str__(self):
        return "|".join(_fmt_block(b) for b in self.blocks)

    def __repr__(self):
        return f"Unshuffle({self})"

    def __len__(self):
        return len(self.blocks)

    @property
    def support(self) -> frozenset[int]:
        return self._support

    @property
    def size(self) -> int:
        return len(self._support)

    @property
    def degree(self) -> int:
        return self.size - len(self.blocks)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def flatten(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)


def remove_first(sigma) -> NrSequence:
    """Drop the first letter: ``2341 -> 341``."""
    sigma = as_sequence(sigma)
    if len(sigma) < 2:
        raise ValueError("cannot remove the first letter of a length-1 sequence")
    return NrSequence(sigma.letters[1:])


def unshuffles(phi, parts: Sequence[int]) -> list[Unshuffle]:
    """All unshuffles of ``phi`` into subsequences of the given lengths.

    The result is sorted lexicographically by block contents.
    """
    phi = as_sequence(phi)
    parts = tuple(parts)
    if not parts:
        raise ValueError("parts must be nonempty")
    if any(m <= 0 for m in parts):
        raise ValueError(f"parts must be positive, got {parts}")
    if sum(parts) != len(phi):
        raise ValueError(f"parts {parts} do not sum to |phi| = {len(phi)}")
    out = [Unshuffle(bl) for bl in _split(phi.letters, parts)]
    out.sort()
    return out


def _split(letters: tuple[int, ...], parts: tuple[int, ...]) -> Iterator[tuple]:
    if len(parts) == 1:
        yield (letters,)
        return
    m = parts[0]
    for pos in itertools.combinations(range(len(letters)), m):
        chosen = set(pos)
        head = tuple(letters[i] for i in pos)
        rest = tuple(x for i, x in enumerate(letters) if i not in chosen)
        for tail in _split(rest, parts[1:]):
            yield (head,) + tail


def compositions(n: int, k: int | None = None) -> Iterator[tuple[int, ...]]:
    """Compositions of ``n`` (optionally with exactly ``k`` parts)."""
    ks = range(1, n + 1) if k is None else (k,)
    for kk in ks:
        for cuts in itertools.combinations(range(1, n), kk - 1):
            bounds = (0,) + cuts + (n,)
            yield tuple(bounds[i + 1] - bounds[i] for i in range(kk))


def all_unshuffles(phi, k: int | None = None) -> list[Unshuffle]:
    """``dSh_phi`` (or ``dSh_phi(k)``), sorted by (degree, blocks)."""
    phi = as_sequence(phi)
    out = []
    for parts in compositions(len(phi), k):
        out.extend(unshuffles(phi, parts))
    out.sort(key=lambda a: (a.degree, a.blocks))
    return out


def shuffles(a: Sequence[int], b: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All interleavings of ``a`` and ``b`` keeping each internal order."""
    a, b = tuple(a), tuple(b)
    n = len(a) + len(b)
    for pos in itertools.combinations(range(n), len(a)):
        chosen = set(pos)
        ia, ib = iter(a), iter(b)
        yield tuple(next(ia) if i in chosen else next(ib) for i in range(n))


def _is_shuffle_of(target: tuple[int, ...], run: Sequence[tuple[int, ...]]) -> bool:
    index = {x: i for i, x in enumerate(target)}
    for block in run:
        positions = [index[x] for x in block]
        if positions != sorted(positions):
            return False
    return True


def poset_leq(a: Unshuffle, b: Unshuffle) -> bool:
    """``a <= b``: b arises from a by merging consecutive runs of blocks by shuffles."""
    if a.support != b.support:
        raise ValueError(f"{a} and {b} are unshuffles of different sets")
    i = 0
    for target in b.blocks:
        want = set(target)
        got: set[int] = set()
        run = []
        while len(got) < len(want):
            if i >= len(a.blocks):
                return False
            got.update(a.blocks[i])
            run.append(a.blocks[i])
            i += 1
        if got != want or not _is_shuffle_of(target, run):
            return False
    return i == len(a.blocks)


def up_covers(a: Unshuffle, sigma: Sequence[int] | None = None) -> list[Unshuffle]:
    """Elements covering ``a``: merge two adjacent blocks into a shuffle.

    With ``sigma`` given only shuffles that are subsequences of sigma are kept.
    """
    out = []
    blocks = a.blocks
    for i in range(len(blocks) - 1):
        for h in shuffles(blocks[i], blocks[i + 1]):
            if sigma is not None and not NrSequence(h).is_subsequence_of(sigma):
                continue
            out.append(Unshuffle(blocks[:i] + (h,) + blocks[i + 2:]))
    return out


def down_covers(a: Unshuffle) -> list[Unshuffle]:
    """Elements covered by ``a``: split one block into a 2-block unshuffle."""
    out = []
    blocks = a.blocks
    for i, blk in enumerate(blocks):
        for m in range(1, len(blk)):
            for pair in unshuffles(NrSequence(blk), (m, len(blk) - m)):
                out.append(Unshuffle(blocks[:i] + pair.blocks + blocks[i + 1:]))
    return out


class FinitePoset:
    """Finite graded poset given by its elements, grades and covering pairs.

    ``covers`` holds index pairs ``(lower, upper)``.
    """

    def __init__(self, elements, covers, grades):
        self.elements = list(elements)
        self.grades = list(grades)
        self.covers = sorted(set((int(i), int(j)) for i, j in covers))
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate poset elements")
        for i, j in self.covers:
            if self.grades[j] <= self.grades[i]:
                raise ValueError(
                    f"grade does not increase along cover {self.elements[i]} < {self.elements[j]}"
                )
        self._up: list[list[int]] = [[] for _ in self.elements]
        self._down: list[list[int]] = [[] for _ in self.elements]
        for i, j in self.covers:
            self._up[i].append(j)
            self._down[j].append(i)
        self._upsets: list[frozenset[int]] | None = None

    def __len__(self):
        return len(self.elements)

    def __contains__(self, item):
        return item in self.index

    def upper_covers(self, i: int) -> list[int]:
        return self._up[i]

    def lower_covers(self, i: int) -> list[int]:
        return self._down[i]

    def upset(self, i: int) -> frozenset[int]:
        """Indices of all elements ``>= element i``."""
        if self._upsets is None:
            order = sorted(range(len(self)), key=lambda k: -self.grades[k])
            ups: list[frozenset[int]] = [frozenset()] * len(self)
            for k in order:
                acc = {k}
                for j in self._up[k]:
                    acc |= ups[j]
                ups[k] = frozenset(acc)
            self._upsets = ups
        return self._upsets[i]

    def downset(self, i: int) -> set[int]:
        seen = {i}
        stack = [i]
        while stack:
            k = stack.pop()
            for j in self._down[k]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    def leq(self, a, b) -> bool:
        return self.index[b] in self.upset(self.index[a])

    def by_grade(self, g: int) -> list:
        return [e for e, gr in zip(self.elements, self.grades) if gr == g]

    def f_vector(self) -> list[int]:
        if not self.elements:
            return []
        top = max(self.grades)
        return [sum(1 for g in self.grades if g == d) for d in range(top + 1)]

    def maximal(self) -> list:
        return [e for i, e in enumerate(self.elements) if not self._up[i]]

    def minimal(self) -> list:
        return [e for i, e in enumerate(self.elements) if not self._down[i]]

    def is_acyclic(self) -> bool:
        return all(self.grades[i] < self.grades[j] for i, j in self.covers)

    def covers_are_minimal(self) -> bool:
        """No covering pair is implied by a longer chain."""
        for i, j in self.covers:
            for k in self._up[i]:
                if k != j and j in self.upset(k):
                    return False
        return True

    def subposet(self, keep) -> "FinitePoset":
        """Induced subposet on a down-closed or arbitrary subset of elements.

        Covers are recomputed as the Hasse diagram of the restricted order.
        """
        keep_idx = sorted(self.index[e] for e in keep)
        new = {old: new for new, old in enumerate(keep_idx)}
        covers = []
        for old in keep_idx:
            ups = self.upset(old)
            above = [k for k in ups if k in new and k != old]
            for k in above:
                if not any(m != k and k in self.upset(m) for m in above):
                    covers.append((new[old], new[k]))
        return FinitePoset(
            [self.elements[i] for i in keep_idx],
            covers,
            [self.grades[i] for i in keep_idx],
        )

    def to_dict(self, encode=None) -> dict:
        encode = encode or _default_encode
        elems = []
        for i, (e, g) in enumerate(zip(self.elements, self.grades)):
            entry = {"id": i}
            entry.update(encode(e))
            entry["grade"] = g
            elems.append(entry)
        return {"elements": elems, "covers": [list(c) for c in self.covers]}

    def to_json(self, encode=None) -> str:
        return json.dumps(self.to_dict(encode), sort_keys=False)


def _default_encode(e) -> dict:
    if isinstance(e, Unshuffle):
        return {"blocks": [list(b) for b in e.blocks]}
    if hasattr(e, "encoding"):
        return {"encoding": e.encoding}
    return {"value": str(e)}


def _unshuffle_poset(elements: list[Unshuffle], sigma=None) -> FinitePoset:
    elements = sorted(elements, key=lambda a: (a.degree, a.blocks))
    index = {e: i for i, e in enumerate(elements)}
    covers = []
    for i, a in enumerate(elements):
        for b in up_covers(a, sigma):
            j = index.get(b)
            if j is not None:
                covers.append((i, j))
    return FinitePoset(elements, covers, [a.degree for a in elements])


def build_J_sigma(sigma) -> FinitePoset:
    """Poset of all unshuffles of ``sigma``; a copy of the face lattice of P_n."""
    sigma = as_sequence(sigma)
    return _unshuffle_poset(all_unshuffles(sigma), sigma.letters)


def build_J_n(n: int) -> FinitePoset:
    """Union of the posets ``J_sigma`` over all permutations of ``[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    elements = []
    for perm in itertools.permutations(range(1, n + 1)):
        for parts in compositions(n):
            cuts = list(itertools.accumulate(parts))
            starts = [0] + cuts[:-1]
            elements.append(Unshuffle(tuple(perm[s:e] for s, e in zip(starts, cuts))))
    return _unshuffle_poset(elements)


def vertex_sequences(a: Unshuffle) -> list[tuple[int, ...]]:
    """Degree-0 elements below ``a``, written as permutations of its letters."""
    per_block = [itertools.permutations(b) for b in a.blocks]
    return sorted(tuple(x for b in combo for x in b) for combo in itertools.product(*per_block))
