"""Words on the alphabet {f, v}, their rotation classes and primitive roots.

Index convention
----------------
A word of length ``n`` is written ``u_{n-1} ... u_1 u_0``: the *leftmost*
character of the string is ``u_{n-1}`` and the rightmost is ``u_0``.  So
``Word("fv").u(1) == "f"`` and ``Word("fv").u(0) == "v"``.  Every index-based
accessor in this package uses this convention; string rendering never
reverses anything.

Rotating by one step sends ``u_{n-1} ... u_1 u_0`` to ``u_0 u_{n-1} ... u_1``.
"""
from __future__ import annotations

import json
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache, total_ordering

from .errors import BadCharacter, EmptyWord, NotPrimitive

ALPHABET = ("f", "v")
_SWAP = str.maketrans("fv", "vf")


@dataclass(frozen=True, order=True)
class Word:
    """A finite word over {f, v}, stored exactly as rendered."""

    letters: str

    def __post_init__(self):
        for i, ch in enumerate(self.letters):
            if ch not in "fv":
                raise BadCharacter(i, ch)

    def __str__(self):
        return self.letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, e: int) -> "Word":
        return Word(self.letters * e)

    def u(self, j: int) -> str:
        """Letter ``u_j`` (indices taken mod the length)."""
        n = len(self.letters)
        return self.letters[n - 1 - (j % n)]

    def rotate(self, k: int = 1) -> "Word":
        """Apply the rotation ``u_{n-1}...u_0 -> u_0 u_{n-1}...u_1`` ``k`` times."""
        n = len(self.letters)
        if n == 0:
            return self
        k %= n
        return Word(self.letters[n - k :] + self.letters[: n - k]) if k else self

    @classmethod
    def from_letters(cls, us: Iterable[str]) -> "Word":
        """Build from ``u_0, u_1, ...`` in increasing index order."""
        return cls("".join(reversed(list(us))))


def parse_word(text: str) -> Word:
    if not text:
        raise EmptyWord()
    return Word(text)


def _require(w: Word) -> Word:
    if isinstance(w, str):
        w = parse_word(w)
    if len(w) == 0:
        raise EmptyWord()
    return w


def complement(w: Word) -> Word:
    """Swap f and v letter by letter."""
    w = _require(w)
    return Word(w.letters.translate(_SWAP))


@lru_cache(maxsize=1 << 16)
def _least_rotation(s: str) -> str:
    # Booth's algorithm
    ss = s + s
    n = len(ss)
    fail = [-1] * n
    k = 0
    for j in range(1, n):
        c = ss[j]
        i = fail[j - k - 1]
        while i != -1 and c != ss[k + i + 1]:
            if c < ss[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != ss[k + i + 1]:
            if c < ss[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return ss[k : k + len(s)]


@total_ordering
@dataclass(frozen=True)
class CyclicWord:
    """Rotation class of a word, represented by its least rotation (f < v)."""

    representative: Word

    def __str__(self):
        return self.representative.letters

    def __len__(self):
        return len(self.representative)

    def __lt__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return sort_key(str(self)) < sort_key(str(other))

    @property
    def primitive(self) -> bool:
        return primitive_root(self.representative)[1] == 1

    def complement(self) -> "CyclicWord":
        return canonicalize(complement(self.representative))


def canonicalize(w) -> CyclicWord:
    if isinstance(w, CyclicWord):
        return w
    w = _require(w)
    return CyclicWord(Word(_least_rotation(w.letters)))


def sort_key(s: str):
    """Key used to order multiset entries: by length, then lexicographically."""
    return (len(s), s)


@lru_cache(maxsize=1 << 16)
def _period(s: str) -> int:
    n = len(s)
    # smallest period via prefix function
    pi = [0] * n
    for i in range(1, n):
        k = pi[i - 1]
        while k and s[i] != s[k]:
            k = pi[k - 1]
        if s[i] == s[k]:
            k += 1
        pi[i] = k
    per = n - pi[-1]
    return per if n % per == 0 else n


def primitive_root(w) -> tuple[Word, int]:
    """Return ``(root, e)`` with ``w == root * e`` and ``root`` primitive."""
    w = _require(w)
    per = _period(w.letters)
    return Word(w.letters[:per]), len(w) // per


class BT1Multiset(Mapping):
    """Immutable multiset of primitive cyclic words.

    Keys may be given as strings, :class:`Word` or :class:`CyclicWord`; they
    are canonicalized.  Non-primitive keys are rejected; use
    :func:`expand_to_primitive_multiset` for those.
    """

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, entries=None):
        counts = Counter()
        if entries is None:
            entries = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, mult in items:
            cw = key if isinstance(key, CyclicWord) else canonicalize(key)
            if not cw.primitive:
                raise NotPrimitive(f"multiset key {cw} is not primitive")
            if int(mult) != mult or mult < 0:
                raise ValueError(f"multiplicity of {cw} must be a nonnegative integer, got {mult!r}")
            if mult:
                counts[cw] += int(mult)
        self._items = tuple(sorted(counts.items()))
        self._map = dict(self._items)
        self._hash = None

    # Mapping protocol
    def __getitem__(self, key):
        cw = key if isinstance(key, CyclicWord) else canonicalize(key)
        return self._map[cw]

    def get(self, key, default=0):
        try:
            return self[key]
        except KeyError:
            return default

    def __iter__(self):
        return (k for k, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if isinstance(other, BT1Multiset):
            return self._items == other._items
        if isinstance(other, Mapping):
            try:
                return self == BT1Multiset(other)
            except Exception:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._items)
        return self._hash

    def __repr__(self):
        return f"BT1Multiset({self.to_dict()})"

    def __add__(self, other: "BT1Multiset") -> "BT1Multiset":
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return BT1Multiset(c)

    def __sub__(self, other: "BT1Multiset") -> "BT1Multiset":
        c = Counter(dict(self._items))
        c.subtract(dict(other._items))
        return BT1Multiset({k: m for k, m in c.items() if m > 0})

    def __le__(self, other: "BT1Multiset") -> bool:
        """Multiset containment."""
        return all(other.get(k) >= m for k, m in self._items)

    def contains(self, other: "BT1Multiset") -> bool:
        return other <= self

    def scaled(self, e: int) -> "BT1Multiset":
        return BT1Multiset({k: m * e for k, m in self._items})

    @property
    def dimension(self) -> int:
        """Dimension of the module: sum of length times multiplicity."""
        return sum(len(k) * m for k, m in self._items)

    @property
    def total(self) -> int:
        return sum(m for _, m in self._items)

    def to_dict(self) -> dict:
        return {str(k): m for k, m in self._items}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "BT1Multiset":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("multiset JSON must be an object")
        return cls(data)


def expand_to_primitive_multiset(orbit_words) -> BT1Multiset:
    """Each word ``w = r**e`` contributes ``e`` copies of the cyclic class of ``r``."""
    c = Counter()
    for w in orbit_words:
        root, e = primitive_root(w)
        c[canonicalize(root)] += e
    return BT1Multiset(c)
