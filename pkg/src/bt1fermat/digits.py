"""p-adic digits of residues modulo d = p^l - 1 and elements with prescribed words.

Multiplication by ``p`` modulo ``p^l - 1`` rotates the base-``p`` digits
``(a_0, ..., a_{l-1})`` cyclically, so the sector of every element of an orbit
can be read off the digits of one element: scanning from ``a_{l-1}`` downward,
the first digit different from ``(p-1)/2`` decides (below: ``v``, above: ``f``).
Comparisons use ``2*digit`` against ``p - 1`` so that ``p = 2`` needs no
special casing.

The constructions below are candidate generators.  Every element or pair they
return has had its word recomputed and compared with the request.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd

from .errors import (
    DegreeOne,
    ExcludedResidue,
    NotRealizable,
    OutOfRange,
    SearchExhausted,
)
from .fermat import FERMAT, QUOTIENT, index_set_size, orbit_words, word_at
from .words import Word, _require, canonicalize, primitive_root

DEFAULT_SEARCH_BUDGET = 10**7


def search_budget() -> int:
    """Sector evaluations allowed in a fallback scan; ``BT1FERMAT_SEARCH_BUDGET`` overrides."""
    return int(os.environ.get("BT1FERMAT_SEARCH_BUDGET", DEFAULT_SEARCH_BUDGET))


@dataclass(frozen=True)
class DigitVector:
    p: int
    digits: tuple  # little-endian: digits[i] is the coefficient of p**i

    @property
    def value(self) -> int:
        return sum(c * self.p**i for i, c in enumerate(self.digits))

    def rotate(self) -> "DigitVector":
        """Digits of ``p * value`` modulo ``p**l - 1``."""
        return DigitVector(self.p, (self.digits[-1],) + self.digits[:-1])


def digits_of(a: int, p: int, ell: int) -> DigitVector:
    d = p**ell - 1
    if not 0 < a < d:
        raise OutOfRange(f"{a} is not a least positive residue in (0, {d})")
    ds = []
    for _ in range(ell):
        a, r = divmod(a, p)
        ds.append(r)
    return DigitVector(p, tuple(ds))


def _digit_sector(digits, p):
    for c in reversed(digits):
        if 2 * c < p - 1:
            return "v"
        if 2 * c > p - 1:
            return "f"
    return None


def sector_of(a: int, p: int, ell: int) -> str | None:
    """Sector of ``a mod p^l - 1`` by the leading-digit rule; ``None`` if excluded."""
    d = p**ell - 1
    a %= d
    if a == 0:
        return None
    return _digit_sector(digits_of(a, p, ell).digits, p)


def sector_archimedean(a: int, p: int, ell: int) -> str | None:
    d = p**ell - 1
    a %= d
    if a == 0 or 2 * a == d:
        return None
    return "v" if 2 * a < d else "f"


def _checked_digits(a, p, ell):
    d = p**ell - 1
    a %= d
    if a == 0 or 2 * a == d:
        raise ExcludedResidue(f"{a} is not in S for d = {d}")
    return digits_of(a, p, ell)


def word_of_element(a: int, p: int, ell: int) -> Word:
    """Word of the orbit of ``a`` in S(p^l - 1), computed by rotating digits."""
    dv = _checked_digits(a, p, ell)
    us = []
    cur = dv
    while True:
        us.append(_digit_sector(cur.digits, p))
        cur = cur.rotate()
        if cur == dv:
            break
    return Word.from_letters(us)


def multiplicative_order(p: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, p % n
    while x != 1:
        x = x * p % n
        k += 1
    return k


def orbit_size_by_order(a: int, p: int, ell: int) -> int:
    d = p**ell - 1
    _checked_digits(a, p, ell)
    return multiplicative_order(p, d // gcd(d, a % d))


def orbit_size_by_iteration(a: int, p: int, ell: int) -> int:
    d = p**ell - 1
    _checked_digits(a, p, ell)
    a %= d
    k, x = 1, p * a % d
    while x != a:
        x = x * p % d
        k += 1
    return k


def orbit_size(a: int, p: int, ell: int) -> int:
    lam = orbit_size_by_order(a, p, ell)
    it = orbit_size_by_iteration(a, p, ell)
    if lam != it:
        raise AssertionError(f"orbit size of {a}: order formula gives {lam}, iteration gives {it}")
    return lam


def _recipe_digits(w: Word, p: int) -> list[int]:
    # a_j = 0 for u_{l-1-j} = v and p - 1 for f, i.e. a_j reads the string left to right
    return [0 if ch == "v" else p - 1 for ch in w.letters]


def _from_digits(ds, p):
    return sum(c * p**i for i, c in enumerate(ds))


def _scan_quotient(w: Word, p: int, budget: int):
    """Least element of S(p^l - 1) whose word is exactly ``w``, or ``None``."""
    ell = len(w)
    d = p**ell - 1
    size = index_set_size(QUOTIENT, d)
    if size > budget:
        raise SearchExhausted(budget, f"(S has {size} elements)")
    target = canonicalize(w)
    for rep, word in orbit_words(p, d, QUOTIENT):
        if len(word) == ell and canonicalize(word) == target:
            x = rep
            for _ in range(ell):
                if word_of_element(x, p, ell) == w:
                    return x
                x = x * p % d
    return None


def element_for_word(w, p: int, budget: int | None = None) -> int:
    """An element ``a`` of S(p^len(w) - 1) whose word is exactly ``w``.

    Constant words use ``a = 1`` (all v) and ``a = d - 1`` (all f), which needs
    ``p > 2``.  Primitive words use the digit recipe ``v -> 0``, ``f -> p-1``.
    Proper powers additionally raise one zero digit to 1, which works for
    ``p > 3``; for ``p <= 3`` the same candidates are tried and then S is
    scanned exhaustively before giving up with :class:`NotRealizable`.
    """
    w = _require(w)
    ell = len(w)
    d = p**ell - 1
    budget = search_budget() if budget is None else budget
    root, e = primitive_root(w)
    if d < 3:
        raise DegreeOne(f"S is empty for p = {p}, length {ell}; use the Fermat or fiber-product routes")
    candidates = []
    if len(root) == 1:
        if p == 2:
            raise NotRealizable(f"{w} is not the word of any element of S({d}) when p = 2")
        candidates.append(1 if root.letters == "v" else d - 1)
    else:
        ds = _recipe_digits(w, p)
        if e == 1:
            candidates.append(_from_digits(ds, p))
        else:
            for j, c in enumerate(ds):
                if c == 0:
                    bumped = list(ds)
                    bumped[j] = 1
                    candidates.append(_from_digits(bumped, p))
                    if p > 3:
                        break
    for a in candidates:
        if 0 < a < d and 2 * a != d and word_of_element(a, p, ell) == w:
            return a
    if p > 3 or e == 1:
        # the recipes are proven for these cases; reaching here is a bug
        raise AssertionError(f"digit recipe failed for w = {w}, p = {p}: candidates {candidates}")
    found = _scan_quotient(w, p, budget)
    if found is None:
        raise NotRealizable(f"no element of S({d}) has word {w} for p = {p}")
    return found


# ---------------------------------------------------------------------------
# pairs in T for the Fermat curve


@dataclass(frozen=True)
class PairWitness:
    """Orbits of T(d) certifying ``M(w)`` as a direct factor of ``M(J_{F_d}[p])``.

    ``pairs`` holds one orbit representative whose word is a rotation of
    ``w`` (``mode == "single"``), or ``e`` representatives of distinct orbits
    each with word a rotation of the primitive root of ``w = root**e``
    (``mode == "multi"``).  ``recipe_matched`` records whether the explicit
    construction, rather than the search, produced the witness.
    """

    word: Word
    p: int
    d: int
    pairs: tuple
    mode: str
    recipe_matched: bool
    recipe_pair: tuple | None = None
    recipe_word: Word | None = None


def _in_T(a, b, d):
    a %= d
    b %= d
    return a != 0 and b != 0 and (a + b) % d != 0


def pair_for_word(w, p: int, budget: int | None = None) -> PairWitness:
    w = _require(w)
    ell = len(w)
    d = p**ell - 1
    budget = search_budget() if budget is None else budget
    if index_set_size(FERMAT, d) == 0:
        raise DegreeOne(f"T is empty for p = {p}, length {ell}")
    target = canonicalize(w)
    root, e = primitive_root(w)

    recipe = None
    if len(root) == 1:
        if p > 2:
            recipe = (d - 1, d - 1) if root.letters == "f" else (1, 1)
    elif e == 1:
        a = element_for_word(w, p, budget)
        recipe = (a, a)
    else:
        a0 = _from_digits(_recipe_digits(w, p), p)
        recipe = ((a0 + 1) % d, (a0 - 1) % d)

    recipe_word = None
    if recipe is not None and _in_T(*recipe, d):
        recipe_word = word_at(p, d, recipe)
        if canonicalize(recipe_word) == target:
            return PairWitness(w, p, d, (recipe,), "single", True, recipe, recipe_word)

    # neighbouring pairs (a' + t, a' - t) for t = p, p^2, ...
    if e > 1 and len(root) > 1:
        t = p
        while t < d:
            cand = ((a0 + t) % d, (a0 - t) % d)
            if _in_T(*cand, d) and canonicalize(word_at(p, d, cand)) == target:
                return PairWitness(w, p, d, (cand,), "single", False, recipe, recipe_word)
            t *= p

    size = index_set_size(FERMAT, d)
    if size > budget:
        raise SearchExhausted(budget, f"(T({d}) has {size} elements)")
    root_cw = canonicalize(root)
    found = []
    for rep, word in orbit_words(p, d, FERMAT, budget=budget):
        cw = canonicalize(word)
        if cw == target:
            return PairWitness(w, p, d, (rep,), "single", False, recipe, recipe_word)
        if cw == root_cw and e > 1:
            found.append(rep)
            if len(found) == e:
                return PairWitness(w, p, d, tuple(found), "multi", False, recipe, recipe_word)
    raise NotRealizable(f"no orbit of T({d}) realizes {w} for p = {p}")
