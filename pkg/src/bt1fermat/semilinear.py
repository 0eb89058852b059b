"""Exact arithmetic in GF(p^m) and sigma-semilinear maps.

A :class:`SemilinearMap` with matrix ``A`` and twist ``t`` acts by
``x -> A @ sigma^t(x)`` where ``sigma`` is the Frobenius ``c -> c**p`` applied
coordinate-wise.  Frobenius-linear maps have twist ``+1``, Verschiebung-like
maps twist ``-1``.  Because ``sigma`` is bijective, the image of such a map is
the column space of ``A`` and its kernel is ``sigma^{-t}`` of the null space
of ``A``.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from . import _accel
from .errors import DegreeTooLarge, NotPrime, ShapeMismatch, Singular

MAX_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# polynomials over GF(p): coefficient tuples, lowest degree first


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(deg, p):
    """Monic polynomials of degree ``deg`` in lexicographic order of (c_{deg-1}, ..., c_0)."""
    for top_down in itertools.product(range(p), repeat=deg):
        yield tuple(reversed(top_down)) + (1,)


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree at most half of ``poly``'s."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for k in range(1, deg // 2 + 1):
        for g in _monic_polys(k, p):
            if not _poly_mod(poly, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """GF(p^m) = GF(p)[x]/(modulus); elements are integer codes ``sum(c_i p^i)``."""

    p: int
    m: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.m

    def to_coeffs(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def from_coeffs(self, cs) -> int:
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(cs))

    def _mul_slow(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_coeffs(_poly_mod(prod, self.modulus, p) if m > 1 else [prod[0] % p])

    @cached_property
    def _tables(self):
        q = self.q
        if q == 2:
            return np.array([1], np.int64), np.array([0, 0], np.int64)
        n = q - 1
        factors = prime_factors(n)
        for g in range(2, q):
            ok = True
            for r in factors:
                # g^(n/r) != 1
                e, acc, base = n // r, 1, g
                while e:
                    if e & 1:
                        acc = self._mul_slow(acc, base)
                    base = self._mul_slow(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                break
        exp = np.empty(n, np.int64)
        log = np.zeros(q, np.int64)
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._mul_slow(x, g)
        return exp, log

    @property
    def exp(self):
        return self._tables[0]

    @property
    def log(self):
        return self._tables[1]

    @cached_property
    def frob_table(self):
        """``c -> c**p`` as a lookup array."""
        return self._power_table(self.p)

    @cached_property
    def frob_inv_table(self):
        return self._power_table(self.p ** (self.m - 1))

    def _power_table(self, k):
        exp, log = self._tables
        codes = np.arange(self.q, dtype=np.int64)
        out = exp[(log[codes] * k) % exp.shape[0]]
        out[0] = 0
        return out

    # scalar arithmetic
    def add(self, a, b):
        return int(_accel._vadd(np.int64(a), np.int64(b), self.p, self.m))

    def neg(self, a):
        return int(_accel._vneg(np.int64(a), self.p, self.m))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables
        return int(exp[(log[a] + log[b]) % exp.shape[0]])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        exp, log = self._tables
        return int(exp[(-log[a]) % exp.shape[0]])

    def frob(self, a, k: int = 1):
        """``sigma^k(a)`` for any integer ``k``."""
        return int(self.frob_power_table(k)[a])

    def frob_power_table(self, k: int):
        k %= self.m
        if k == 0:
            return np.arange(self.q, dtype=np.int64)
        if k == 1:
            return self.frob_table
        if k == self.m - 1:
            return self.frob_inv_table
        return self._power_table(self.p**k)

    def apply_frob(self, A, k: int = 1):
        """Entry-wise ``sigma^k`` of an array of codes."""
        return self.frob_power_table(k)[np.asarray(A, np.int64)]

    def random_elements(self, rng, shape):
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


def field_make(p: int, m: int = 1) -> FieldDescriptor:
    """GF(p^m) defined by the lexicographically first monic irreducible of degree ``m``."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    if m > MAX_DEGREE:
        raise DegreeTooLarge(f"extension degree {m} exceeds {MAX_DEGREE}")
    for poly in _monic_polys(m, p):
        if is_irreducible(poly, p):
            return FieldDescriptor(p, m, poly)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


# ---------------------------------------------------------------------------
# matrices over GF(p^m)


def rref(M, field: FieldDescriptor):
    M = np.asarray(M, np.int64)
    if M.ndim != 2:
        raise ShapeMismatch("expected a 2-d matrix")
    if M.shape[0] == 0 or M.shape[1] == 0:
        return M.copy(), np.empty(0, np.int64)
    return _accel.gf_rref(M, field.p, field.m, field.exp, field.log)


def matmul(A, B, field: FieldDescriptor):
    A = np.asarray(A, np.int64)
    B = np.asarray(B, np.int64)
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return _accel.gf_matmul(A, B, field.p, field.m, field.exp, field.log)


def rank(M, field) -> int:
    return len(rref(M, field)[1])


def row_basis(rows, field, n=None):
    """Reduced echelon basis (as rows) of the span of ``rows``."""
    rows = np.asarray(rows, np.int64)
    if rows.size == 0:
        return np.zeros((0, n if n is not None else rows.shape[-1]), np.int64)
    R, piv = rref(rows, field)
    return R[: len(piv)]


def null_space(A, field):
    """Basis rows of ``{x : A x = 0}``."""
    A = np.asarray(A, np.int64)
    n = A.shape[1]
    R, piv = rref(A, field)
    piv = list(piv)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), np.int64)
    for i, fcol in enumerate(free):
        basis[i, fcol] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = field.neg(int(R[r, fcol]))
    return row_basis(basis, field, n)


def inverse(P, field):
    P = np.asarray(P, np.int64)
    n = P.shape[0]
    if P.shape != (n, n):
        raise ShapeMismatch("only square matrices can be inverted")
    aug = np.hstack([P, np.eye(n, dtype=np.int64)])
    R, piv = rref(aug, field)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise Singular("matrix is not invertible")
    return R[:, n:].copy()


def same_span(U, W, field) -> bool:
    """Subspace equality by containment plus dimension."""
    U = np.asarray(U, np.int64)
    W = np.asarray(W, np.int64)
    du = rank(U, field) if U.size else 0
    dw = rank(W, field) if W.size else 0
    if du != dw:
        return False
    if du == 0:
        return True
    return rank(np.vstack([U, W]), field) == du


def intersection_dim(U, W, field) -> int:
    U = np.asarray(U, np.int64)
    W = np.asarray(W, np.int64)
    du = rank(U, field) if U.size else 0
    dw = rank(W, field) if W.size else 0
    if du == 0 or dw == 0:
        return 0
    return du + dw - rank(np.vstack([U, W]), field)


# ---------------------------------------------------------------------------
# semilinear maps


@dataclass(frozen=True, eq=False)
class SemilinearMap:
    matrix: np.ndarray
    twist: int

    def __post_init__(self):
        A = np.asarray(self.matrix, np.int64)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ShapeMismatch(f"semilinear maps need a square matrix, got shape {A.shape}")
        object.__setattr__(self, "matrix", A)

    @property
    def n(self):
        return self.matrix.shape[0]

    def __call__(self, x, field):
        x = field.apply_frob(np.asarray(x, np.int64), self.twist)
        return matmul(self.matrix, x.reshape(-1, 1), field).ravel()

    def then(self, other: "SemilinearMap", field) -> "SemilinearMap":
        """``other o self`` as a single semilinear map."""
        M = matmul(other.matrix, field.apply_frob(self.matrix, other.twist), field)
        return SemilinearMap(M, self.twist + other.twist)

    def power(self, k: int, field) -> "SemilinearMap":
        out = SemilinearMap(np.eye(self.n, dtype=np.int64), 0)
        for _ in range(k):
            out = out.then(self, field)
        return out


def kernel_image(A: SemilinearMap, field: FieldDescriptor):
    """Return ``(rank, kernel_basis, image_basis)`` as echelon row bases."""
    M = A.matrix
    image = row_basis(M.T, field, A.n)
    null = null_space(M, field)
    kernel = row_basis(field.apply_frob(null, -A.twist), field, A.n) if len(null) else null
    return len(image), kernel, image


@dataclass(frozen=True)
class Report:
    kerF_eq_imV: bool
    kerV_eq_imF: bool
    FV_zero: bool
    VF_zero: bool

    @property
    def ok(self) -> bool:
        return self.kerF_eq_imV and self.kerV_eq_imF and self.FV_zero and self.VF_zero

    def to_dict(self):
        d = asdict(self)
        d["bt1"] = self.ok
        return d


def verify_bt1_axioms(Fm: SemilinearMap, Vm: SemilinearMap, field: FieldDescriptor) -> Report:
    if Fm.n != Vm.n:
        raise ShapeMismatch(f"F is {Fm.n}-dimensional but V is {Vm.n}-dimensional")
    if Fm.twist != 1 or Vm.twist != -1:
        raise ValueError("F must have twist +1 and V twist -1")
    _, kerF, imF = kernel_image(Fm, field)
    _, kerV, imV = kernel_image(Vm, field)
    FV = Vm.then(Fm, field).matrix
    VF = Fm.then(Vm, field).matrix
    return Report(
        kerF_eq_imV=same_span(kerF, imV, field),
        kerV_eq_imF=same_span(kerV, imF, field),
        FV_zero=not FV.any(),
        VF_zero=not VF.any(),
    )


def base_change(Fm: SemilinearMap, Vm: SemilinearMap, P, field: FieldDescriptor):
    """Express both maps in the basis given by the columns of ``P``.

    ``A -> P^-1 A sigma^t(P)`` for a map of twist ``t``.
    """
    P = np.asarray(P, np.int64)
    Pinv = inverse(P, field)

    def conj(S):
        if S.n != P.shape[0]:
            raise ShapeMismatch("base change matrix has the wrong size")
        M = matmul(matmul(Pinv, S.matrix, field), field.apply_frob(P, S.twist), field)
        return SemilinearMap(M, S.twist)

    return conj(Fm), conj(Vm)


def random_invertible(n: int, field: FieldDescriptor, rng):
    while True:
        P = field.random_elements(rng, (n, n))
        if rank(P, field) == n:
            return P
