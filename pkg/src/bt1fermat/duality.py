"""Cartier duality on Kraft multisets and the polarized factorization."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import NotSelfDual
from .words import BT1Multiset, CyclicWord

SELF = "self"
PAIR = "pair"

#: Polarizations are never built explicitly; every self-dual BT1 module admits
#: one, unique up to isomorphism, so factor-wise choices assemble compatibly.
POLARIZATION_STATUS = "asserted"


def dual_multiset(ms: BT1Multiset) -> BT1Multiset:
    return BT1Multiset({k.complement(): m for k, m in ms.items()})


def is_self_dual(ms: BT1Multiset) -> bool:
    return dual_multiset(ms) == ms


@dataclass(frozen=True)
class PolarizedFactor:
    kind: str
    w: CyclicWord
    multiplicity: int
    wc: CyclicWord | None = None

    def __post_init__(self):
        if self.kind == SELF:
            if self.w.complement() != self.w or self.wc is not None:
                raise ValueError(f"{self.w} is not self-complementary")
        elif self.kind == PAIR:
            if self.wc != self.w.complement() or self.wc == self.w or not self.w < self.wc:
                raise ValueError(f"({self.w}, {self.wc}) is not an ordered complement pair")
        else:
            raise ValueError(f"unknown factor kind {self.kind!r}")

    @property
    def words(self):
        return (self.w,) if self.kind == SELF else (self.w, self.wc)

    @property
    def log_rank(self) -> int:
        """``log_p`` of the order of one copy of this factor."""
        return sum(len(x) for x in self.words)

    def to_json_obj(self):
        out = {"kind": self.kind, "w": str(self.w)}
        if self.kind == PAIR:
            out["wc"] = str(self.wc)
        out["mult"] = self.multiplicity
        return out

    @classmethod
    def from_json_obj(cls, obj):
        from .words import canonicalize

        wc = canonicalize(obj["wc"]) if obj.get("wc") else None
        return cls(obj["kind"], canonicalize(obj["w"]), int(obj["mult"]), wc)


def polarized_factorization(ms: BT1Multiset) -> list[PolarizedFactor]:
    """Split a self-dual multiset into self-complementary words and complement pairs."""
    out = []
    for k, m in ms.items():
        kc = k.complement()
        if ms.get(kc) != m:
            raise NotSelfDual(str(k))
        if kc == k:
            out.append(PolarizedFactor(SELF, k, m))
        elif k < kc:
            out.append(PolarizedFactor(PAIR, k, m, kc))
    return out


def reassemble(factors) -> BT1Multiset:
    entries = {}
    for fac in factors:
        for w in fac.words:
            entries[w] = entries.get(w, 0) + fac.multiplicity
    return BT1Multiset(entries)


def factorization_to_json(factors) -> str:
    return json.dumps(
        {"factors": [f.to_json_obj() for f in factors], "polarization": POLARIZATION_STATUS},
        separators=(",", ":"),
    )
