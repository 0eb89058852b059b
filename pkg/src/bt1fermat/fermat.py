"""Combinatorial p-torsion of Fermat curves F_d, their quotients C_d and the p=2 auxiliaries.

Index sets
----------
* ``C_d: y^d = x(1-x)``: ``S = Z/d - {0}`` (``d`` odd) or ``Z/d - {0, d/2}``
  (``d`` even).  ``a`` is in the f-sector iff its least positive residue
  exceeds ``d/2``; the permutation is ``a -> p*a``.
* ``F_d: X^d + Y^d = 1``: ``T = {(a, b) : a, b, a + b nonzero mod d}``.
  ``(a, b)`` is in the f-sector iff ``a + b > d`` on least positive residues;
  the permutation is ``(a, b) -> (p*a, p*b)``.

Large index sets are enumerated through :mod:`bt1fermat._accel`; the
``PermutationData`` builders materialize everything and are meant for small
cases and cross-checks.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import _accel
from .errors import BudgetExceeded, DegreeTooSmall, NotCoprime, NotDivisible
from .permdata import PermutationData
from .words import BT1Multiset, CyclicWord, Word, canonicalize, primitive_root

DEFAULT_BUDGET = 10**6

QUOTIENT = "fermat_quotient"
FERMAT = "fermat"
ORDINARY_AS = "ordinary_as"
FIBER_PRODUCT = "fiber_product"
VARIANTS = (QUOTIENT, FERMAT, ORDINARY_AS, FIBER_PRODUCT)


def enumeration_budget() -> int:
    """Largest Fermat index set enumerated; ``BT1FERMAT_BUDGET`` overrides."""
    return int(os.environ.get("BT1FERMAT_BUDGET", DEFAULT_BUDGET))


def _check(p, d):
    if d < 1:
        raise DegreeTooSmall(f"degree must be positive, got {d}")
    if gcd(p, d) != 1:
        raise NotCoprime(f"gcd({p}, {d}) != 1")


@dataclass(frozen=True)
class LowerBound:
    value: int

    def to_json_obj(self):
        return {"lower_bound": self.value}

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class CurveSpec:
    """An explicit curve over F_p.

    ``fermat_quotient`` (``y^d = x(1-x)``) and ``fermat`` (``X^d + Y^d = 1``)
    take ``d``; ``ordinary_as`` is ``(x^2 - x)(z^r - 1) = 1`` and
    ``fiber_product`` is the fiber product of that curve with ``F_d`` over
    the line ``X + Y = 1``; both need ``p = 2`` and odd ``r``.
    """

    variant: str
    p: int
    d: int | None = None
    r: int | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown curve variant {self.variant!r}")
        if self.variant in (QUOTIENT, FERMAT, FIBER_PRODUCT):
            if self.d is None:
                raise ValueError(f"{self.variant} needs a degree d")
            _check(self.p, self.d)
        if self.variant in (ORDINARY_AS, FIBER_PRODUCT):
            if self.p != 2:
                raise ValueError(f"{self.variant} curves are only used for p = 2")
            if self.r is None or self.r < 1 or self.r % 2 == 0:
                raise ValueError(f"{self.variant} needs a positive odd r, got {self.r}")

    def to_json_obj(self):
        out = {"variant": self.variant}
        if self.d is not None:
            out["d"] = self.d
        if self.r is not None:
            out["r"] = self.r
        out["p"] = self.p
        return out

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["variant"], int(obj["p"]), obj.get("d"), obj.get("r"))

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        if self.variant == QUOTIENT:
            return f"C_{self.d}: y^{self.d} = x(1-x)"
        if self.variant == FERMAT:
            return f"F_{self.d}: X^{self.d} + Y^{self.d} = 1"
        if self.variant == ORDINARY_AS:
            return f"X_{self.r}: (x^2-x)(z^{self.r}-1) = 1"
        return f"C = X_{self.r} x_(P^1) F_{self.d}"


# ---------------------------------------------------------------------------
# sectors and single orbits


def quotient_sector(a: int, d: int) -> str | None:
    """``"v"`` below ``d/2``, ``"f"`` above, ``None`` for excluded residues."""
    a %= d
    if a == 0 or 2 * a == d:
        return None
    return "v" if 2 * a < d else "f"


def fermat_sector(a: int, b: int, d: int) -> str | None:
    a %= d
    b %= d
    if a == 0 or b == 0 or (a + b) % d == 0:
        return None
    return "f" if a + b > d else "v"


def orbit_of(p: int, d: int, label):
    """Members of the orbit of ``label`` (an int in S or a pair in T)."""
    if isinstance(label, tuple):
        a, b = label[0] % d, label[1] % d
        out = [(a, b)]
        x = (p * a % d, p * b % d)
        while x != out[0]:
            out.append(x)
            x = (p * x[0] % d, p * x[1] % d)
        return out
    a = label % d
    out = [a]
    x = p * a % d
    while x != a:
        out.append(x)
        x = p * x % d
    return out


def word_at(p: int, d: int, label) -> Word:
    """Word ``u_{n-1}...u_0`` of ``label``; ``u_j`` is the sector of ``p^j * label``."""
    members = orbit_of(p, d, label)
    if isinstance(label, tuple):
        us = [fermat_sector(a, b, d) for a, b in members]
    else:
        us = [quotient_sector(a, d) for a in members]
    if None in us:
        raise ValueError(f"{label} is not in the index set for d = {d}")
    return Word.from_letters(us)


# ---------------------------------------------------------------------------
# permutation data (materialized)


def quotient_perm_data(p: int, d: int) -> PermutationData:
    _check(p, d)
    if d < 3:
        raise DegreeTooSmall(f"C_d needs d >= 3, got {d}")
    elems = tuple(a for a in range(1, d) if 2 * a != d)
    return PermutationData(elems, {a: quotient_sector(a, d) for a in elems}, {a: p * a % d for a in elems})


def fermat_perm_data(p: int, d: int) -> PermutationData:
    _check(p, d)
    if d < 3:
        raise DegreeTooSmall(f"F_d needs d >= 3, got {d}")
    elems = tuple((a, b) for a in range(1, d) for b in range(1, d) if (a + b) % d)
    return PermutationData(
        elems,
        {x: fermat_sector(x[0], x[1], d) for x in elems},
        {x: (p * x[0] % d, p * x[1] % d) for x in elems},
    )


# ---------------------------------------------------------------------------
# enumeration


def index_set_size(family: str, d: int) -> int:
    if family == QUOTIENT:
        return max(d - 1 if d % 2 else d - 2, 0)
    return max((d - 1) * (d - 2), 0)


def _arrays(p, d, family):
    if family == QUOTIENT:
        a = np.arange(d, dtype=np.int64)
        perm = p * a % d
        mask = (a != 0) & (2 * a != d)
        sector_f = 2 * a > d
    else:
        a, b = np.divmod(np.arange(d * d, dtype=np.int64), d)
        perm = (p * a % d) * d + (p * b % d)
        mask = (a != 0) & (b != 0) & ((a + b) % d != 0)
        sector_f = a + b > d
    return perm, mask, sector_f


def orbit_words(p: int, d: int, family: str = QUOTIENT, budget: int | None = None):
    """Yield ``(label, word)`` for each orbit, ordered by least label.

    ``label`` is the least element of the orbit (an int for C_d, a pair for
    F_d) and ``word`` its :class:`Word`.
    """
    _check(p, d)
    size = index_set_size(family, d)
    if family == FERMAT:
        budget = enumeration_budget() if budget is None else budget
        if size > budget:
            raise BudgetExceeded(size, budget)
    if size == 0:
        return
    perm, mask, sector_f = _arrays(p, d, family)
    order, starts = _accel.cycle_decompose(perm, mask)
    letters = np.where(sector_f[order], ord("f"), ord("v")).astype(np.uint8).tobytes().decode("ascii")
    for k in range(len(starts) - 1):
        s, e = int(starts[k]), int(starts[k + 1])
        rep = int(order[s])
        label = rep if family == QUOTIENT else divmod(rep, d)
        yield label, Word(letters[s:e][::-1])


@dataclass(frozen=True)
class Decomposition:
    curve: CurveSpec
    expanded: BT1Multiset
    partial: bool
    per_orbit: Counter = field(default_factory=Counter, compare=False)
    num_orbits: int = 0

    def __iter__(self):
        return iter((self.expanded, self.partial))

    @property
    def genus(self):
        return genus_of(self.curve)

    def report(self) -> dict:
        from .duality import is_self_dual
        from .kraft import a_number, p_rank

        g = self.genus
        return {
            "curve": self.curve.to_json_obj(),
            "genus": g.to_json_obj() if isinstance(g, LowerBound) else g,
            "multiset": self.expanded.to_dict(),
            "p_rank": p_rank(self.expanded),
            "a_number": a_number(self.expanded),
            "self_dual": is_self_dual(self.expanded),
            "partial": self.partial,
            "num_orbits": self.num_orbits,
        }


def _family_decomposition(p, d, family, budget=None):
    per_orbit = Counter()
    expanded = Counter()
    n = 0
    for _, w in orbit_words(p, d, family, budget):
        n += 1
        per_orbit[canonicalize(w)] += 1
    for cw, mult in per_orbit.items():
        root, e = primitive_root(cw.representative)
        expanded[canonicalize(root)] += e * mult
    return per_orbit, BT1Multiset(expanded), n


def ordinary_multiset(r: int) -> BT1Multiset:
    """``(Z/2 + mu_2)^(r-1)``: the 2-torsion of the ordinary curve X_r."""
    return BT1Multiset({"f": r - 1, "v": r - 1})


def decompose(p: int, c: CurveSpec, budget: int | None = None) -> Decomposition:
    """Kraft multiset of ``J_c[p]``; ``partial`` when only a direct factor is known."""
    if c.p != p:
        raise ValueError(f"curve is defined for p = {c.p}, asked for p = {p}")
    if c.variant in (QUOTIENT, FERMAT):
        per, ms, n = _family_decomposition(p, c.d, c.variant, budget)
        return Decomposition(c, ms, False, per, n)
    if c.variant == ORDINARY_AS:
        ms = ordinary_multiset(c.r)
        per = Counter({canonicalize(k): m for k, m in ms.items()})
        return Decomposition(c, ms, False, per, ms.total)
    per, ms, n = _family_decomposition(p, c.d, FERMAT, budget)
    ordinary = ordinary_multiset(c.r)
    for k, m in ordinary.items():
        per[k] += m
    return Decomposition(c, ms + ordinary, True, per, n + ordinary.total)


def genus_of(c: CurveSpec):
    if c.variant == QUOTIENT:
        return (c.d - 1) // 2
    if c.variant == FERMAT:
        return (c.d - 1) * (c.d - 2) // 2
    if c.variant == ORDINARY_AS:
        return c.r - 1
    return LowerBound((c.d - 1) * (c.d - 2) // 2 + c.r - 1)


# ---------------------------------------------------------------------------
# embeddings


def divisibility_embed(p: int, d_small: int, d_big: int) -> dict:
    """``a -> a * (d_big / d_small)`` from S(d_small) into S(d_big)."""
    _check(p, d_small)
    _check(p, d_big)
    if d_big % d_small:
        raise NotDivisible(f"{d_small} does not divide {d_big}")
    k = d_big // d_small
    return {a: a * k for a in range(1, d_small) if 2 * a != d_small}


def fermat_divisibility_embed(p: int, d_small: int, d_big: int) -> dict:
    """``(a, b) -> (k a, k b)`` from T(d_small) into T(d_big)."""
    _check(p, d_small)
    _check(p, d_big)
    if d_big % d_small:
        raise NotDivisible(f"{d_small} does not divide {d_big}")
    k = d_big // d_small
    return {
        (a, b): (a * k, b * k) for a in range(1, d_small) for b in range(1, d_small) if (a + b) % d_small
    }


def diagonal_embed(p: int, d: int) -> dict:
    """``a -> (a, a)`` from S(d) into T(d)."""
    _check(p, d)
    return {a: (a, a) for a in range(1, d) if 2 * a != d}


def embed_label(label, k: int):
    if isinstance(label, tuple):
        return (label[0] * k, label[1] * k)
    return label * k


__all__ = [
    "CurveSpec",
    "CyclicWord",
    "Decomposition",
    "LowerBound",
    "decompose",
    "diagonal_embed",
    "divisibility_embed",
    "fermat_divisibility_embed",
    "fermat_perm_data",
    "genus_of",
    "orbit_words",
    "quotient_perm_data",
    "word_at",
]
