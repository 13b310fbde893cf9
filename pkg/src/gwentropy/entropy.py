"""Survival and failure entropies of two-parameter order (alpha, beta).

For a lifetime X and a valid order (alpha, beta), write

    gamma = alpha + beta - 1  (> 0)
    delta = beta - alpha      (in (0, 1))

The measures evaluated here are logarithms of power integrals of the
survival or failure function, taken over the support of X:

* gwse: log( integral of x * sf(x)**gamma ) / delta
* gse:  log( integral of     sf(x)**gamma ) / delta
* gwfe: log( integral of x * cdf(x)**gamma ) / delta   (finite support only)
* gfe:  log( integral of     cdf(x)**gamma ) / delta   (finite support only)

plus the dynamic versions conditioned on survival past t (gdwse) or failure
by t (gdwfe), which normalize the integrand by sf(t)**gamma or cdf(t)**gamma.
The dynamic failure measure is evaluated at min(t, support top), so it
reaches the static gwfe value at the top and stays there.

Closed forms exist for the exponential, Pareto, uniform, rayleigh (survival
side) and uniform, power (failure side) families; everything else goes
through adaptive quadrature.  ``method`` selects between them, mainly so the
two routes can be checked against each other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import special

from . import distributions as dist
from ._quad import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    failure_power_integral,
    survival_power_integral,
)
from .errors import DivergenceError, GwentropyError

__all__ = [
    "EntropyOrder",
    "EntropyKind",
    "EntropyValue",
    "QuadratureConfig",
    "gwse",
    "gwfe",
    "gse",
    "gfe",
    "gdwse",
    "gdwfe",
    "gwse_first_order_stat",
    "gdwfe_max_order_stat",
]


@dataclass(frozen=True)
class EntropyOrder:
    """Order pair (alpha, beta) with beta >= 1 and beta - 1 < alpha < beta.

    The constraints make gamma = alpha + beta - 1 positive and keep
    delta = beta - alpha strictly inside (0, 1).
    """

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (math.isfinite(a) and math.isfinite(b)):
            raise GwentropyError("order parameters must be finite")
        if not b >= 1.0:
            raise GwentropyError(f"beta must satisfy beta >= 1, got {b}")
        if not (b - 1.0 < a < b):
            raise GwentropyError(
                f"alpha must satisfy beta - 1 < alpha < beta, got alpha={a}, beta={b}"
            )

    @property
    def gamma(self) -> float:
        return self.alpha + self.beta - 1.0

    @property
    def delta(self) -> float:
        return self.beta - self.alpha


class EntropyKind(enum.Enum):
    GWSE = "gwse"
    GWFE = "gwfe"
    GSE = "gse"
    GFE = "gfe"
    GDWSE = "gdwse"
    GDWFE = "gdwfe"


@dataclass(frozen=True)
class EntropyValue:
    """A computed measure; t is set exactly for the dynamic kinds."""

    value: float
    kind: EntropyKind
    order: EntropyOrder
    t: float | None = None

    def __float__(self) -> float:
        return self.value


# ---------- closed forms for the power integrals ----------


def _closed_survival(d, g: float, t: float, weighted: bool) -> float | None:
    """Closed value of the survival power integral, or None."""
    # sf is 1 at and below the support bottom, so clamping t there is exact
    t = max(t, d.support[0])
    if isinstance(d, dist.Exponential):
        lg = d.rate * g
        return (1.0 + t * lg) / lg**2 if weighted else 1.0 / lg
    if isinstance(d, dist.Pareto):
        s = max(t, d.scale)
        ag = d.shape * g
        return s * s / (ag - 2.0) if weighted else s / (ag - 1.0)
    if isinstance(d, dist.Uniform):
        w = d.upper - max(t, d.lower)
        if weighted:
            return w * (d.upper / (g + 1.0) - w / (g + 2.0))
        return w / (g + 1.0)
    if isinstance(d, dist.Rayleigh):
        lg = d.rate * g
        if weighted:
            return 1.0 / (2.0 * lg)
        # erfcx keeps the normalization by sf(t)**g exact for large t
        return math.sqrt(math.pi / (4.0 * lg)) * special.erfcx(t * math.sqrt(lg))
    return None


def _closed_failure(d, g: float, t: float, weighted: bool) -> float | None:
    """Closed value of the failure power integral, or None."""
    if isinstance(d, dist.Uniform):
        w = min(t, d.upper) - d.lower
        if weighted:
            return w * (d.lower / (g + 1.0) + w / (g + 2.0))
        return w / (g + 1.0)
    if isinstance(d, dist.Power):
        s = min(t, d.upper)
        cg = d.shape * g
        return s * s / (cg + 2.0) if weighted else s / (cg + 1.0)
    return None


def _survival_integral(
    d,
    g: float,
    t: float = 0.0,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
    weighted: bool = True,
) -> float:
    """Integral of w(x) * (sf(x)/sf(t))**g from max(t, support bottom) up."""
    if not float(d.sf(t)) > 0.0:
        raise GwentropyError(f"survival is zero at t={t}")
    d._check_tail(g, weighted=weighted)
    if method not in ("auto", "closed", "quadrature"):
        raise GwentropyError(f"unknown method {method!r}")
    if method != "quadrature":
        closed = _closed_survival(d, g, t, weighted)
        if closed is not None:
            return closed
        if method == "closed":
            raise GwentropyError("no closed form for this family")
    return survival_power_integral(d, g, t, cfg, weighted=weighted, from_support=True)


def _failure_integral(
    d,
    g: float,
    t: float | None = None,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
    weighted: bool = True,
) -> float:
    """Integral of w(x) * (cdf(x)/cdf(s))**g from the support bottom to s,
    where s = min(t, support top), or s = support top when t is None."""
    hi = d.support[1]
    if t is None:
        if math.isinf(hi):
            raise DivergenceError(
                "failure-side measure diverges on an infinite support"
            )
        s = hi
    else:
        s = min(float(t), hi)
        if not float(d.cdf(s)) > 0.0:
            raise GwentropyError(f"cdf is zero at t={t}")
    if method not in ("auto", "closed", "quadrature"):
        raise GwentropyError(f"unknown method {method!r}")
    if method != "quadrature":
        closed = _closed_failure(d, g, s, weighted)
        if closed is not None:
            return closed
        if method == "closed":
            raise GwentropyError("no closed form for this family")
    return failure_power_integral(d, g, s, cfg, weighted=weighted)


# ---------- public measures ----------


def gwse(
    d,
    order: EntropyOrder,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Weighted survival entropy of order (alpha, beta)."""
    value = math.log(_survival_integral(d, order.gamma, 0.0, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GWSE, order)


def gse(
    d,
    order: EntropyOrder,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Unweighted survival entropy of order (alpha, beta)."""
    value = (
        math.log(_survival_integral(d, order.gamma, 0.0, cfg, method, weighted=False))
        / order.delta
    )
    return EntropyValue(value, EntropyKind.GSE, order)


def gwfe(
    d,
    order: EntropyOrder,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Weighted failure entropy; requires a finite support top."""
    value = math.log(_failure_integral(d, order.gamma, None, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GWFE, order)


def gfe(
    d,
    order: EntropyOrder,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Unweighted failure entropy; requires a finite support top."""
    value = (
        math.log(_failure_integral(d, order.gamma, None, cfg, method, weighted=False))
        / order.delta
    )
    return EntropyValue(value, EntropyKind.GFE, order)


def gdwse(
    d,
    order: EntropyOrder,
    t: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Dynamic weighted survival entropy of the residual life past t."""
    if t < 0.0:
        raise GwentropyError("t must be nonnegative")
    value = math.log(_survival_integral(d, order.gamma, t, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GDWSE, order, t=t)


def gdwfe(
    d,
    order: EntropyOrder,
    t: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Dynamic weighted failure entropy of the inactivity time before t.

    Evaluated at min(t, support top): past the top it equals the static
    gwfe and stays constant.
    """
    value = math.log(_failure_integral(d, order.gamma, t, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GDWFE, order, t=t)


def gwse_first_order_stat(
    d,
    order: EntropyOrder,
    n: int,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Weighted survival entropy of the minimum of n iid copies.

    The minimum's survival function is sf**n, so the integrand exponent is
    n * gamma.
    """
    n = _checked_size(n)
    value = math.log(_survival_integral(d, n * order.gamma, 0.0, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GWSE, order)


def gdwfe_max_order_stat(
    d,
    order: EntropyOrder,
    n: int,
    t: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    method: str = "auto",
) -> EntropyValue:
    """Dynamic weighted failure entropy of the maximum of n iid copies.

    The maximum's cdf is cdf**n, so the integrand exponent is n * gamma.
    """
    n = _checked_size(n)
    value = math.log(_failure_integral(d, n * order.gamma, t, cfg, method)) / order.delta
    return EntropyValue(value, EntropyKind.GDWFE, order, t=t)


def _checked_size(n: int) -> int:
    if not isinstance(n, (int,)) or isinstance(n, bool) or n < 1:
        raise GwentropyError(f"n must be a positive integer, got {n!r}")
    return n
