"""Iterated logarithms, the tower function, gamma and the top-level k.

All logarithms are natural.  Quantities of the form ``(log^(i) x)^x`` are
handled in log space through :func:`log_power`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

REL_TOL = 1e-9
MAX_ITER = 200


def tower(i: int) -> float:
    """τ(0) = 1 and τ(i) = e^τ(i-1)."""
    if i < 0:
        raise DomainError(f"tower undefined for i={i}")
    x = 1.0
    for _ in range(i):
        try:
            x = math.exp(x)
        except OverflowError:
            raise DomainError(f"tower({i}) overflows double precision") from None
    return x


def _tower_lower(i: int) -> float:
    # τ(i-1) with τ(-1) taken as -inf (i=0 has no constraint)
    return -math.inf if i <= 0 else tower(i - 1)


def iter_log(i: int, x: float) -> float:
    """i-fold natural logarithm; requires x > τ(i-1) for i >= 1."""
    if i < 0:
        raise DomainError("iteration count must be nonnegative")
    if i == 0:
        return x
    if not x > _tower_lower(i):
        raise DomainError(f"log^({i}) undefined at {x}")
    for _ in range(i):
        x = math.log(x)
    return x


def log_power(i: int, x: float) -> float:
    """``log((log^(i) x)^x)`` = x * log(log^(i) x)."""
    inner = iter_log(i, x)
    if inner <= 0:
        raise DomainError(f"log^({i})({x}) = {inner} is not positive")
    return x * math.log(inner)


def _bisect(f, lo: float, hi: float) -> float:
    """Root of increasing ``f`` on [lo, hi] with f(lo) <= 0 <= f(hi)."""
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if f(mid) >= 0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= REL_TOL * max(1.0, abs(hi)) * 1e-3:
            break
    return hi


def gamma(i: int, k: float, n: float) -> float:
    """Solve ``(log^(i) k)^k / (log^(i) x)^x = n`` for x in [τ(i), k]."""
    if not k > _tower_lower(i):
        raise DomainError(f"gamma needs k > τ({i - 1}), got {k}")
    lo = tower(i)
    top = log_power(i, k) if k >= lo else -math.inf
    if n < 1 or top < 0 or math.log(n) > top * (1 + 1e-15) + 1e-300:
        raise DomainError(f"n={n} outside [1, (log^({i}) k)^k]")
    log_n = math.log(n)
    if log_n <= 0:
        return float(k)
    target = top - log_n  # want log_power(i, x) == target
    if target <= 0:
        return lo
    return _bisect(lambda x: log_power(i, x) - target, lo, k)


def weight_budget(t: int, k: float, c: float) -> float:
    """``(log^(t-2) k)^k / (log^(t-2) c)^c`` (may overflow to inf)."""
    e = log_power(t - 2, k) - log_power(t - 2, c)
    return math.exp(e) if e < 700 else math.inf


def slack(t: int, c: float) -> float:
    """s = log c / log^(t-1) c."""
    return math.log(c) / iter_log(t - 1, c)


def _snap(k: float, t: int, log_n: float) -> float:
    r = round(k)
    if r >= 1 and abs(k - r) <= REL_TOL * max(1.0, k):
        try:
            if log_power(t - 2, float(r)) >= log_n - 1e-12 * max(1.0, abs(log_n)):
                return float(r)
        except DomainError:
            pass
    return k


def least_k(t: int, log_target: float) -> float:
    """Least k >= τ(t-2) with ``log((log^(t-2) k)^k) >= log_target``."""
    lo = tower(t - 2)
    if log_target <= 0:
        return lo
    hi = max(2.0 * lo, 2.0)
    while log_power(t - 2, hi) < log_target:
        hi *= 2.0
    k = _bisect(lambda x: log_power(t - 2, x) - log_target, lo, hi)
    return _snap(k, t, log_target)


@dataclass(frozen=True)
class KSolution:
    k: float
    closed_form: float | None
    residual: float


def solve_k(t: int, n: float) -> KSolution:
    """Least k with ``(log^(t-2) k)^k >= n`` and the closed form ``2 log n / log^(t) n``."""
    if t < 2:
        raise DomainError("solve_k needs t >= 2")
    if n < 1:
        raise DomainError("n must be at least 1")
    log_n = math.log(n)
    k = least_k(t, log_n)
    try:
        closed = 2 * log_n / iter_log(t, n)
    except (DomainError, ZeroDivisionError):
        closed = None
    if closed is not None and closed <= 0:
        closed = None
    return KSolution(k, closed, log_power(t - 2, k) - log_n)


# --- inequality toolkit -----------------------------------------------------

def eq1_holds(x: float, a: float) -> bool:
    """log(x + a) <= log x + a/x."""
    return math.log(x + a) <= math.log(x) + a / x + 1e-12 * max(1.0, abs(math.log(x)))


def eq2_holds(i: int, x: float, a: float) -> bool:
    """log^(i)(x + a) <= log^(i) x + a / prod_{j<i} log^(j) x."""
    prod = 1.0
    for j in range(i):
        prod *= iter_log(j, x)
    lhs = iter_log(i, x + a)
    rhs = iter_log(i, x) + a / prod
    return lhs <= rhs + 1e-12 * max(1.0, abs(rhs))


def eq3_holds(i: int, x: float, a: float) -> bool:
    """log^(i)(x + a) / log^(i) x <= 1 + a / prod_{j<=i} log^(j) x."""
    prod = 1.0
    for j in range(i + 1):
        prod *= iter_log(j, x)
    lhs = iter_log(i, x + a) / iter_log(i, x)
    rhs = 1 + a / prod
    return lhs <= rhs + 1e-12 * rhs


def heavy_ratio(t: int, c: float) -> float:
    """Ratio bounding |H|/n_X for heavy X: grows like c^4."""
    s = slack(t, c)
    c2 = c + s + slack(t, c + s)
    return math.exp(log_power(t - 2, c2) - log_power(t - 2, c))


def dangerous_ratio(t: int, c: float) -> float:
    """Ratio bounding the number of dangerous vertices: grows like c."""
    s = slack(t, c)
    return math.exp(log_power(t - 2, c + s) - log_power(t - 2, c))
