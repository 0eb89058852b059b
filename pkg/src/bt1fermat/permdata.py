"""Finite sets split into an f-part and a v-part, together with a permutation."""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import NotABijection, UnknownLabel
from .words import BT1Multiset, CyclicWord, Word, canonicalize, expand_to_primitive_multiset


@dataclass(frozen=True)
class PermutationData:
    """Labels, their sector (``"f"`` or ``"v"``) and a permutation ``pi``.

    Labels are opaque hashable, mutually comparable values.  The constructor
    checks that ``pi`` is a bijection of ``elements`` and that every label has
    a sector.
    """

    elements: tuple
    sector: dict = field(hash=False)
    pi: dict = field(hash=False)

    def __post_init__(self):
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        es = set(elems)
        if len(es) != len(elems):
            raise NotABijection("duplicate labels in elements")
        if set(self.sector) != es or any(s not in ("f", "v") for s in self.sector.values()):
            raise NotABijection("sector must map every element to 'f' or 'v'")
        if set(self.pi) != es or set(self.pi.values()) != es:
            raise NotABijection("pi is not a bijection of elements")

    @property
    def size(self):
        return len(self.elements)

    def swapped(self) -> "PermutationData":
        """Same permutation with the f- and v-parts exchanged (the dual data)."""
        flip = {"f": "v", "v": "f"}
        return PermutationData(self.elements, {a: flip[s] for a, s in self.sector.items()}, dict(self.pi))

    def relabeled(self, iota: dict) -> "PermutationData":
        """Transport the data along a bijection ``iota`` of labels."""
        return PermutationData(
            tuple(iota[a] for a in self.elements),
            {iota[a]: s for a, s in self.sector.items()},
            {iota[a]: iota[b] for a, b in self.pi.items()},
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "elements": [_plain(a) for a in self.elements],
                "sector": {_key(a): self.sector[a] for a in self.elements},
                "pi": {_key(a): _plain(self.pi[a]) for a in self.elements},
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PermutationData":
        data = json.loads(text)
        elems = [_label(x) for x in data["elements"]]
        by_key = {_key(a): a for a in elems}
        try:
            sector = {by_key[k]: s for k, s in data["sector"].items()}
            pi = {by_key[k]: _label(b) for k, b in data["pi"].items()}
        except KeyError as exc:
            raise UnknownLabel(str(exc)) from None
        return cls(tuple(elems), sector, pi)


def _plain(a):
    return list(a) if isinstance(a, tuple) else a


def _label(x):
    return tuple(x) if isinstance(x, list) else x


def _key(a):
    return a if isinstance(a, str) else json.dumps(_plain(a), separators=(",", ":"))


@dataclass(frozen=True)
class Orbit:
    """Members ``a, pi(a), pi^2(a), ...`` starting at the least label."""

    members: tuple

    def __len__(self):
        return len(self.members)


def orbits(P: PermutationData) -> list[Orbit]:
    seen = set()
    out = []
    for a in sorted(P.elements):
        if a in seen:
            continue
        cyc = [a]
        b = P.pi[a]
        while b != a:
            cyc.append(b)
            b = P.pi[b]
        seen.update(cyc)
        out.append(Orbit(tuple(cyc)))
    return out


def word_of_orbit(P: PermutationData, a) -> Word:
    """Word ``u_{n-1}...u_0`` with ``u_j = f`` iff ``pi^j(a)`` lies in the f-part."""
    if a not in P.sector:
        raise UnknownLabel(a)
    us = [P.sector[a]]
    b = P.pi[a]
    while b != a:
        us.append(P.sector[b])
        b = P.pi[b]
    return Word.from_letters(us)


def orbit_word_multisets(P: PermutationData) -> tuple[Counter, BT1Multiset]:
    """One cyclic word per orbit (possibly non-primitive), and its primitive expansion."""
    raw = [word_of_orbit(P, o.members[0]) for o in orbits(P)]
    per_orbit = Counter(canonicalize(w) for w in raw)
    return per_orbit, expand_to_primitive_multiset(raw)


def permdata_isomorphic(P: PermutationData, Q: PermutationData) -> bool:
    return orbit_word_multisets(P)[0] == orbit_word_multisets(Q)[0]


def find_isomorphism(P: PermutationData, Q: PermutationData, max_size: int = 12):
    """Brute-force search for a sector-preserving bijection intertwining the permutations.

    Returns the bijection as a dict, or ``None``.  Only for small sets; used as
    an independent check of :func:`permdata_isomorphic`.
    """
    if P.size != Q.size:
        return None
    if P.size > max_size:
        raise ValueError(f"brute-force isomorphism search limited to {max_size} labels")
    src = list(P.elements)
    fs = [a for a in Q.elements if Q.sector[a] == "f"]
    vs = [a for a in Q.elements if Q.sector[a] == "v"]
    pf = [a for a in src if P.sector[a] == "f"]
    pv = [a for a in src if P.sector[a] == "v"]
    if len(fs) != len(pf):
        return None
    for img_f in itertools.permutations(fs):
        for img_v in itertools.permutations(vs):
            iota = dict(zip(pf, img_f))
            iota.update(zip(pv, img_v))
            if all(iota[P.pi[a]] == Q.pi[iota[a]] for a in src):
                return iota
    return None


def cyclic_words_of(per_orbit: Counter) -> dict[str, int]:
    """Render a per-orbit counter of :class:`CyclicWord` as plain strings."""
    return {str(k): m for k, m in sorted(per_orbit.items())}


__all__ = [
    "CyclicWord",
    "Orbit",
    "PermutationData",
    "cyclic_words_of",
    "find_isomorphism",
    "orbit_word_multisets",
    "orbits",
    "permdata_isomorphic",
    "word_of_orbit",
]
