"""Kraft's explicit modules M(w) and M(S) with their F and V matrices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import FieldMismatch
from .permdata import PermutationData
from .semilinear import FieldDescriptor, SemilinearMap, intersection_dim, kernel_image, rank
from .words import BT1Multiset, Word, _require, canonicalize, primitive_root


@dataclass(frozen=True)
class KraftModule:
    """Basis ``e_a`` indexed by ``labels``.

    ``F(e_a) = e_{succ(a)}`` when ``letter(a) == "f"`` (else 0) and
    ``V(e_{succ(a)}) = e_a`` when ``letter(a) == "v"`` (else 0).
    """

    p: int
    labels: tuple
    successor: dict = field(hash=False)
    letter: dict = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if set(self.successor.values()) != set(self.labels) or set(self.successor) != set(self.labels):
            raise ValueError("successor must be a bijection of the labels")

    @property
    def dimension(self):
        return len(self.labels)

    def to_json(self):
        def key(a):
            return a if isinstance(a, str) else json.dumps(list(a) if isinstance(a, tuple) else a)

        def plain(a):
            return list(a) if isinstance(a, tuple) else a

        return json.dumps(
            {
                "p": self.p,
                "labels": [plain(a) for a in self.labels],
                "pi": {key(a): plain(self.successor[a]) for a in self.labels},
                "letter": {key(a): self.letter[a] for a in self.labels},
            },
            separators=(",", ":"),
        )


def module_from_word(p: int, w) -> KraftModule:
    w = _require(w)
    n = len(w)
    return KraftModule(
        p,
        tuple(range(n)),
        {j: (j + 1) % n for j in range(n)},
        {j: w.u(j) for j in range(n)},
    )


def module_from_permdata(p: int, P: PermutationData) -> KraftModule:
    return KraftModule(p, P.elements, dict(P.pi), dict(P.sector))


def matrices_of(M: KraftModule, fld: FieldDescriptor) -> tuple[SemilinearMap, SemilinearMap]:
    if fld.p != M.p:
        raise FieldMismatch(f"module lives in characteristic {M.p}, field has characteristic {fld.p}")
    n = M.dimension
    idx = {a: i for i, a in enumerate(M.labels)}
    F = np.zeros((n, n), np.int64)
    V = np.zeros((n, n), np.int64)
    for a in M.labels:
        b = M.successor[a]
        if M.letter[a] == "f":
            F[idx[b], idx[a]] = 1
        else:
            V[idx[a], idx[b]] = 1
    return SemilinearMap(F, 1), SemilinearMap(V, -1)


def _word_a_number(w: Word) -> int:
    n = len(w)
    return sum(1 for j in range(n) if w.u(j) == "v" and w.u(j - 1) == "f")


def a_number(ms) -> int:
    """Count cyclic positions with ``u_j = v`` and ``u_{j-1} = f``.

    Accepts a word (any, primitive or not) or a :class:`BT1Multiset`, for which
    the count is weighted by multiplicity.
    """
    if isinstance(ms, BT1Multiset):
        return sum(_word_a_number(k.representative) * m for k, m in ms.items())
    return _word_a_number(_require(ms))


def p_rank(ms: BT1Multiset) -> int:
    """Multiplicity of the étale word ``f``."""
    return ms.get("f")


def a_number_oracle(M: KraftModule, fld: FieldDescriptor) -> int:
    """``dim(Ker F ∩ Ker V)`` computed by elimination."""
    F, V = matrices_of(M, fld)
    _, kF, _ = kernel_image(F, fld)
    _, kV, _ = kernel_image(V, fld)
    return intersection_dim(kF, kV, fld)


def p_rank_oracle(M: KraftModule, fld: FieldDescriptor) -> int:
    """Rank of ``F^n`` with ``n`` the dimension: the dimension of the étale part."""
    F, _ = matrices_of(M, fld)
    return rank(F.power(M.dimension, fld).matrix, fld)


def module_isomorphic(x: BT1Multiset, y: BT1Multiset) -> bool:
    return x == y


def multiset_of_word(w) -> BT1Multiset:
    """Kraft invariant of ``M(w)``: ``e`` copies of the root of ``w = root**e``."""
    root, e = primitive_root(w)
    return BT1Multiset({canonicalize(root): e})
