"""Explicit bound functions for generator numbers of induced-module sections.

All values are exact: integers, ``fractions.Fraction`` or ``math.inf``.  The
only irrational quantity, ``floor(b*s/sqrt(x))`` with ``b = sqrt(2/pi)``, is
evaluated by interval arithmetic at increasing precision until the enclosing
interval pins down the floor.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from functools import lru_cache

import threading

import mpmath

_IV_LOCK = threading.Lock()

BoundValue = "int | Fraction | float"   # float only ever as math.inf

INF = math.inf


def factorize(s: int) -> dict[int, int]:
    if s < 1:
        raise ValueError("s must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= s:
        while s % p == 0:
            out[p] = out.get(p, 0) + 1
            s //= p
        p += 1 if p == 2 else 2
    if s > 1:
        out[s] = out.get(s, 0) + 1
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == {p: 1}


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def omega(s: int) -> int:
    return sum(factorize(s).values())


def omega1(s: int) -> int:
    return sum(r * p for p, r in factorize(s).items())


def K(s: int) -> int:
    return omega1(s) - omega(s)


@lru_cache(maxsize=None)
def ws(s: int) -> Fraction:
    k = K(s)
    return Fraction(s * math.comb(k, k // 2), 2 ** k)


def s_part(s: int, p: int) -> int:
    return p ** factorize(s).get(p, 0)


def lpp(s: int) -> int:
    """Largest prime-power part of s; lpp(1) = 1."""
    return max((p ** r for p, r in factorize(s).items()), default=1)


# ---------------------------------------------------------------------------
# certified floor


@lru_cache(maxsize=None)
def floor_b_ratio(s: int, x: int) -> int:
    """floor(b*s/sqrt(x)) for positive integers s, x, with b = sqrt(2/pi)."""
    if x <= 0:
        raise ValueError("x must be positive")
    iv = mpmath.iv
    return _certified_floor(lambda: iv.mpf(s) * iv.sqrt(2 / (iv.pi * x)))


def _certified_floor(expr) -> int:
    """Evaluate an interval expression at 53, 106, ... bits until its floor is unique."""
    iv = mpmath.iv
    prec = 53
    with _IV_LOCK:
        saved = iv.prec
        try:
            while prec <= 1 << 14:
                iv.prec = prec
                val = expr()
                lo, hi = math.floor(val.a), math.floor(val.b)
                if lo == hi:
                    return int(lo)
                prec *= 2
        finally:
            iv.prec = saved
    # an irrational value never sits exactly on an integer
    raise ArithmeticError("floor not resolved")


def E(s: int, p: int):
    """min{floor(b s / sqrt((p-1) log_p s_p)), s / lpp(s/s_p)}; first term is inf when s_p = 1."""
    v = factorize(s).get(p, 0)
    first = INF if v == 0 else floor_b_ratio(s, (p - 1) * v)
    second = Fraction(s, lpp(s // s_part(s, p)))
    return _norm(min(first, second))


def E_sol(s: int, p: int):
    return _norm(min(ws(s), Fraction(s_part(s, p))))


def E_prime(s: int, p: int, soluble_transitive: bool):
    return E_sol(s, p) if soluble_transitive else E(s, p)


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def floor_b_sqrt_log(s: int) -> int:
    """floor(b s / sqrt(log2 s)) for s >= 2 (certified)."""
    if s < 2:
        raise ValueError("s >= 2")
    iv = mpmath.iv
    return _certified_floor(lambda: iv.mpf(s) * iv.sqrt(2 * iv.log(2) / (iv.pi * iv.log(s))))


# ---------------------------------------------------------------------------
# theorem-level bounds


@dataclasses.dataclass(frozen=True)
class BoundResult:
    value: object
    exceptions: dict = dataclasses.field(default_factory=dict)

    def allows(self, name: str | None, observed) -> bool:
        if name is not None and name in self.exceptions:
            return observed == self.exceptions[name]
        return observed <= self.value


def half_n_bound(n: int) -> BoundResult:
    """floor(n/2), with Sym(3) on 3 points as the single exception (value 2)."""
    return BoundResult(n // 2, {"Sym(3)": 2} if n == 3 else {})


def comp_red_bound(n: int, field_size: int | None = None) -> BoundResult:
    if field_size == 2:
        exc = {}
        if n % 2 == 0:
            exc[f"B({n})"] = n // 2 + 1
        if n >= 4:
            exc["Sp4(2)"] = 3
        return BoundResult(Fraction(n, 2), exc)
    if field_size == 3:
        return BoundResult(n)
    return BoundResult(Fraction(3 * n, 2))


def quasiprim_bound(n: int) -> BoundResult:
    """floor(2 log2 n), exact: the largest k with 2^k <= n^2."""
    return BoundResult((n * n).bit_length() - 1, {"Sp4(2)": 3})


def useful_bound_check(a: float, b: float) -> float:
    """(b log a / sqrt(log b)) / (a b / sqrt(log ab)), logs to base 2."""
    la, lb = math.log2(a), math.log2(b)
    return la * math.sqrt((la + lb) / lb) / a


def bounds_row(s: int, p: int) -> dict:
    return {"s": s, "p": p, "s_p": s_part(s, p), "lpp": lpp(s), "ws": ws(s),
            "E_sol": E_sol(s, p), "E": E(s, p)}


def format_value(v) -> str:
    if v == INF:
        return "inf"
    return str(v)
