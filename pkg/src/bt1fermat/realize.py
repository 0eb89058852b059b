"""Target Kraft multiset -> explicit curve, witnesses, and a checkable verification.

Routes
------
``QuotientCd``
    ``p > 3``, and every indecomposable target of length > 1 for any ``p``:
    one element of ``S(p^l_i - 1)`` per factor ``w_i^e_i``, pushed into
    ``S(p^l - 1)`` with ``l = lcm(l_i)`` by ``a -> a * (d / d_i)``.
``FermatFd``
    ``p = 3`` (and ``p = 2`` without étale or multiplicative part): the same
    shape using orbits of ``T`` for the Fermat curve.
``FermatF8Special``
    ``p = 3`` and the target is ``Z/3`` or ``mu_3`` alone; the curve is ``F_8``.
``FiberProductP2``
    ``p = 2`` with copies of ``Z/2`` or ``mu_2``: these come from the
    ordinary curve ``X_r``, the rest from ``F_d``.

Multiplicities are accounted for by containment of expanded multisets: an
orbit with word ``w^e`` and ``e`` distinct orbits with word ``w`` certify the
same direct factor.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from math import lcm

from .digits import element_for_word, pair_for_word, search_budget
from .duality import PAIR, SELF, PolarizedFactor, is_self_dual, polarized_factorization
from .errors import (
    BudgetExceeded,
    NotRealizable,
    NotRealizableByPaper,
    NotSelfDual,
    SearchExhausted,
    VerificationFailed,
)
from .fermat import (
    FERMAT,
    FIBER_PRODUCT,
    ORDINARY_AS,
    QUOTIENT,
    CurveSpec,
    LowerBound,
    decompose,
    embed_label,
    fermat_sector,
    genus_of,
    orbit_of,
    orbit_words,
    ordinary_multiset,
    quotient_sector,
    word_at,
)
from .semilinear import is_prime
from .words import BT1Multiset, canonicalize, expand_to_primitive_multiset, primitive_root

QUOTIENT_CD = "QuotientCd"
FERMAT_FD = "FermatFd"
FERMAT_F8 = "FermatF8Special"
FIBER_P2 = "FiberProductP2"

ELEMENT = "element"
PAIR_KIND = "pair"
ORDINARY = "ordinary"


@dataclass(frozen=True)
class Witness:
    """Evidence for one factor ``w^e`` of the target.

    ``labels`` are orbit representatives in the final curve's index set;
    ``source_d``/``source_labels`` record where they were first found before
    being pushed up by divisibility.  Ordinary witnesses carry ``counts``
    (copies of ``f`` and ``v`` requested) instead of labels.
    """

    factor: str
    kind: str
    labels: tuple = ()
    orbit_sizes: tuple = ()
    source_d: int | None = None
    source_labels: tuple = ()
    recipe_matched: bool | None = None
    counts: dict | None = None

    def to_json_obj(self):
        def plain(x):
            return list(x) if isinstance(x, tuple) else x

        out = {"factor": self.factor, "kind": self.kind}
        if self.kind == ORDINARY:
            out["counts"] = dict(self.counts)
            return out
        out["labels"] = [plain(x) for x in self.labels]
        out["orbit_sizes"] = list(self.orbit_sizes)
        out["source_d"] = self.source_d
        out["source_labels"] = [plain(x) for x in self.source_labels]
        out["recipe_matched"] = self.recipe_matched
        return out

    @classmethod
    def from_json_obj(cls, obj):
        def lab(x):
            return tuple(x) if isinstance(x, list) else x

        if obj["kind"] == ORDINARY:
            return cls(obj["factor"], ORDINARY, counts=dict(obj["counts"]))
        return cls(
            obj["factor"],
            obj["kind"],
            tuple(lab(x) for x in obj["labels"]),
            tuple(obj.get("orbit_sizes", ())),
            obj.get("source_d"),
            tuple(lab(x) for x in obj.get("source_labels", ())),
            obj.get("recipe_matched"),
        )


@dataclass(frozen=True)
class RealizationPlan:
    p: int
    target: BT1Multiset
    curve: CurveSpec
    route: str
    witnesses: tuple
    genus_report: int | LowerBound
    polarized: tuple | None = None
    genus_bound: float | None = None
    notes: tuple = field(default=())

    def to_json_obj(self):
        g = self.genus_report
        out = {
            "p": self.p,
            "target": self.target.to_dict(),
            "route": self.route,
            "curve": self.curve.to_json_obj(),
            "genus": g.to_json_obj() if isinstance(g, LowerBound) else g,
            "genus_bound": self.genus_bound,
            "witnesses": [w.to_json_obj() for w in self.witnesses],
            "polarized": None if self.polarized is None else [f.to_json_obj() for f in self.polarized],
            "polarization": None if self.polarized is None else "asserted",
            "notes": list(self.notes),
        }
        return out

    def to_json(self, indent=None):
        return json.dumps(self.to_json_obj(), indent=indent, separators=None if indent else (",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        g = obj["genus"]
        genus = LowerBound(g["lower_bound"]) if isinstance(g, dict) else g
        pol = obj.get("polarized")
        return cls(
            int(obj["p"]),
            BT1Multiset(obj["target"]),
            CurveSpec.from_json_obj(obj["curve"]),
            obj["route"],
            tuple(Witness.from_json_obj(w) for w in obj["witnesses"]),
            genus,
            None if pol is None else tuple(PolarizedFactor.from_json_obj(f) for f in pol),
            obj.get("genus_bound"),
            tuple(obj.get("notes", ())),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_json_obj(json.loads(text))


def _factors(target: BT1Multiset):
    """``(w_i, e_i)`` pairs with distinct primitive ``w_i``, as full words ``w_i^e_i``."""
    return [(k, m, k.representative * m) for k, m in target.items()]


def _indecomposable_word(target: BT1Multiset):
    if len(target) == 1:
        (k, m), = target.items()
        if m == 1 and len(k) > 1:
            return k.representative
    return None


def _bound(p, ell):
    return (p**ell - 2) / 2


def _quotient_plan(p, target, factors, route=QUOTIENT_CD, notes=()):
    found = []
    for cw, e, W in factors:
        a = element_for_word(W, p)
        found.append((cw, e, W, len(W), a))
    ell = lcm(*(x[3] for x in found))
    d = p**ell - 1
    witnesses = []
    for cw, e, W, li, a in found:
        di = p**li - 1
        lab = embed_label(a, d // di)
        witnesses.append(
            Witness(str(W), ELEMENT, (lab,), (len(orbit_of(p, d, lab)),), di, (a,), True)
        )
    curve = CurveSpec(QUOTIENT, p, d)
    return RealizationPlan(p, target, curve, route, tuple(witnesses), genus_of(curve), notes=tuple(notes))


def _fermat_witnesses(p, factors):
    """Pair witnesses for each factor, before lifting to a common degree."""
    out = []
    for cw, e, W in factors:
        word = W
        if len(W) == 1:
            # Z/3 or mu_3: T(2) is empty, so use the orbit of ff or vv in T(8)
            word = W * 2
        try:
            pw = pair_for_word(word, p)
        except (NotRealizable, SearchExhausted) as exc:
            raise NotRealizableByPaper(
                f"no witness for factor {W} in T({p ** len(word) - 1}) at p = {p}",
                _pair_diagnostics(word, p, exc),
            ) from exc
        out.append((cw, e, W, len(word), pw))
    return out


def _pair_diagnostics(word, p, exc):
    root, e = primitive_root(word)
    d = p ** len(word) - 1
    diag = {"word": str(word), "p": p, "d": d, "error": str(exc)}
    a0 = sum((0 if ch == "v" else p - 1) * p**i for i, ch in enumerate(word.letters))
    if e > 1 and len(root) > 1:
        pair = ((a0 + 1) % d, (a0 - 1) % d)
        diag["recipe_pair"] = list(pair)
        diag["recipe_word"] = str(word_at(p, d, pair))
    if isinstance(exc, NotRealizable):
        counts = Counter()
        for _, w in orbit_words(p, d, FERMAT, budget=search_budget()):
            r, k = primitive_root(w)
            if canonicalize(r) == canonicalize(root):
                counts[str(w)] += 1
        diag["orbits_with_root_word"] = dict(counts)
    return diag


def _lift_fermat(p, found, d):
    witnesses = []
    for cw, e, W, li, pw in found:
        k = d // pw.d
        labels = tuple(embed_label(x, k) for x in pw.pairs)
        witnesses.append(
            Witness(
                str(W),
                PAIR_KIND,
                labels,
                tuple(len(orbit_of(p, d, x)) for x in labels),
                pw.d,
                tuple(pw.pairs),
                pw.recipe_matched,
            )
        )
    return witnesses


def _smallest_odd_at_least(n):
    return n if n % 2 else n + 1


def realize(p: int, target, **options) -> RealizationPlan:
    """Build a curve over F_p whose Jacobian's p-torsion has ``target`` as a direct factor."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    target = target if isinstance(target, BT1Multiset) else BT1Multiset(target)
    if not target:
        raise ValueError("target multiset is empty")

    w = _indecomposable_word(target)
    if w is not None:
        plan = _quotient_plan(p, target, _factors(target))
        return _with_bound(plan, _bound(p, len(w)))

    factors = _factors(target)
    if p > 3:
        return _quotient_plan(p, target, factors)

    if p == 3:
        found = _fermat_witnesses(p, factors)
        d = p ** lcm(*(x[3] for x in found)) - 1
        route = FERMAT_F8 if target in (BT1Multiset({"f": 1}), BT1Multiset({"v": 1})) else FERMAT_FD
        curve = CurveSpec(FERMAT, p, d)
        return RealizationPlan(p, target, curve, route, tuple(_lift_fermat(p, found, d)), genus_of(curve))

    # p == 2
    f1, f2 = target.get("f"), target.get("v")
    rest = [x for x in factors if len(x[0]) > 1]
    witnesses = []
    d = None
    if rest:
        found = _fermat_witnesses(p, rest)
        d = p ** lcm(*(x[3] for x in found)) - 1
        witnesses = _lift_fermat(p, found, d)
    if f1 + f2 == 0:
        curve = CurveSpec(FERMAT, p, d)
        return RealizationPlan(p, target, curve, FERMAT_FD, tuple(witnesses), genus_of(curve))
    r = _smallest_odd_at_least(max(f1, f2) + 1)
    ordinary = Witness("f^%d v^%d" % (f1, f2), ORDINARY, counts={"f": f1, "v": f2, "r": r})
    curve = CurveSpec(FIBER_PRODUCT, p, d, r) if rest else CurveSpec(ORDINARY_AS, p, None, r)
    return RealizationPlan(p, target, curve, FIBER_P2, tuple(witnesses) + (ordinary,), genus_of(curve))


def _with_bound(plan, bound, polarized=None):
    return RealizationPlan(
        plan.p,
        plan.target,
        plan.curve,
        plan.route,
        plan.witnesses,
        plan.genus_report,
        polarized if polarized is not None else plan.polarized,
        bound,
        plan.notes,
    )


def realize_polarized(p: int, target, **options) -> RealizationPlan:
    """Like :func:`realize`, for a self-dual target, recording its polarized factors."""
    target = target if isinstance(target, BT1Multiset) else BT1Multiset(target)
    if not is_self_dual(target):
        bad = next(k for k in target if target.get(k.complement()) != target[k])
        raise NotSelfDual(str(bad))
    factors = tuple(polarized_factorization(target))
    if len(factors) == 1 and factors[0].multiplicity == 1:
        fac = factors[0]
        if fac.kind == PAIR and len(fac.w) > 1:
            # M(w) + M(w^c) sits in C_{d'} with d' = p^len(w) - 1 via a and -a
            w = fac.w.representative
            ell = len(w)
            d = p**ell - 1
            a = element_for_word(w, p)
            b = d - a
            curve = CurveSpec(QUOTIENT, p, d)
            wits = (
                Witness(str(w), ELEMENT, (a,), (len(orbit_of(p, d, a)),), d, (a,), True),
                Witness(str(word_at(p, d, b)), ELEMENT, (b,), (len(orbit_of(p, d, b)),), d, (b,), True),
            )
            plan = RealizationPlan(p, target, curve, QUOTIENT_CD, wits, genus_of(curve))
            return _with_bound(plan, _bound(p, 2 * ell), factors)
    plan = realize(p, target, **options)
    return _with_bound(plan, plan.genus_bound, factors)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    ok: bool
    mode: str
    contained: bool
    distinct_orbits: bool
    labels_valid: bool
    ordinary_ok: bool | None
    genus_ok: bool | None
    full_contained: bool | None = None
    witness_multiset: dict = field(default_factory=dict)
    detail: list = field(default_factory=list)

    def to_json_obj(self):
        return {
            "ok": self.ok,
            "mode": self.mode,
            "contained": self.contained,
            "distinct_orbits": self.distinct_orbits,
            "labels_valid": self.labels_valid,
            "ordinary_ok": self.ordinary_ok,
            "genus_ok": self.genus_ok,
            "full_contained": self.full_contained,
            "witness_multiset": self.witness_multiset,
            "detail": self.detail,
        }


def _label_valid(curve, label):
    d = curve.d
    if d is None:
        return False
    if isinstance(label, tuple):
        return curve.variant in (FERMAT, FIBER_PRODUCT) and fermat_sector(label[0], label[1], d) is not None
    return curve.variant == QUOTIENT and quotient_sector(label, d) is not None


def _genus_value(g):
    return g.value if isinstance(g, LowerBound) else g


def verify_plan(plan: RealizationPlan, mode: str = "witness", budget=None, raise_on_failure=True):
    """Recompute every witness and check that the target is contained.

    ``witness`` mode only trusts recomputed orbit words; ``full`` mode
    additionally decomposes the whole curve.  Raises
    :class:`VerificationFailed` (carrying the report as ``.report``) unless
    ``raise_on_failure`` is false.
    """
    if mode not in ("witness", "full"):
        raise ValueError(f"unknown verification mode {mode!r}")
    p, curve = plan.p, plan.curve
    detail = []
    words = []
    seen = set()
    distinct = True
    labels_valid = True
    ordinary_ok = None
    extra = BT1Multiset()
    for wit in plan.witnesses:
        if wit.kind == ORDINARY:
            r = wit.counts.get("r", curve.r)
            ordinary_ok = (
                curve.variant in (ORDINARY_AS, FIBER_PRODUCT)
                and r == curve.r
                and wit.counts["f"] <= curve.r - 1
                and wit.counts["v"] <= curve.r - 1
            )
            if ordinary_ok:
                extra = extra + ordinary_multiset(curve.r)
            else:
                detail.append(f"ordinary part {wit.counts} does not fit X_r with r = {curve.r}")
            continue
        for lab in wit.labels:
            if not _label_valid(curve, lab):
                labels_valid = False
                detail.append(f"{lab} is not in the index set of {curve}")
                continue
            orbit = orbit_of(p, curve.d, lab)
            key = min(orbit)
            if key in seen:
                distinct = False
                detail.append(f"orbit of {lab} is used twice")
            seen.add(key)
            words.append(word_at(p, curve.d, lab))
    witnessed = expand_to_primitive_multiset(words) + extra
    contained = plan.target <= witnessed
    if not contained:
        detail.append(f"target {plan.target.to_dict()} not contained in witnessed {witnessed.to_dict()}")

    genus_ok = None
    if plan.genus_bound is not None:
        genus_ok = _genus_value(plan.genus_report) <= plan.genus_bound and _genus_value(
            genus_of(curve)
        ) == _genus_value(plan.genus_report)
        if not genus_ok:
            detail.append(f"genus {plan.genus_report} exceeds bound {plan.genus_bound}")

    full = None
    if mode == "full":
        dec = decompose(p, curve, budget)
        full = plan.target <= dec.expanded
        if not full:
            detail.append("target not contained in the full decomposition of the curve")

    ok = contained and distinct and labels_valid and ordinary_ok is not False and genus_ok is not False
    if full is not None:
        ok = ok and full
    report = VerificationReport(
        ok, mode, contained, distinct, labels_valid, ordinary_ok, genus_ok, full, witnessed.to_dict(), detail
    )
    if not ok and raise_on_failure:
        err = VerificationFailed("; ".join(detail) or "unknown")
        err.report = report
        raise err
    return report


__all__ = [
    "BudgetExceeded",
    "RealizationPlan",
    "VerificationReport",
    "Witness",
    "realize",
    "realize_polarized",
    "verify_plan",
    "SELF",
]
