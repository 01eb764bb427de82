"""Credit default swap legs, equilibrium spreads, and batch tabulation.

The protection leg pays (1-R) at the default time if it occurs before
maturity; the premium leg pays the running spread at each payment date the
reference is still alive (no accrual for a default between payment dates).
The equilibrium spread equates the two legs at inception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (ModelParams, adaptive_quad, default_probability,
                   fpt_density, validate)
from .errors import NumericalError, ParameterError

#: relative agreement required between the two protection-leg evaluations
_LEG_AGREEMENT_RTOL = 1e-8


@dataclass(frozen=True)
class CdsContract:
    """Plain-vanilla CDS terms: maturity in years, recovery fraction,
    notional, and number of premium payments per year (accrual fraction
    1/payments_per_year each)."""

    maturity: float
    recovery: float
    notional: float = 1.0
    payments_per_year: int = 2

    def __post_init__(self):
        if not self.maturity > 0.0:
            raise ParameterError("maturity", f"maturity must be > 0, got {self.maturity}")
        if not 0.0 <= self.recovery <= 1.0:
            raise ParameterError("recovery", f"recovery must lie in [0, 1], got {self.recovery}")
        if not self.notional > 0.0:
            raise ParameterError("notional", f"notional must be > 0, got {self.notional}")
        if self.payments_per_year != int(self.payments_per_year) or self.payments_per_year < 1:
            raise ParameterError("payments_per_year",
                                 f"payments_per_year must be a positive integer, "
                                 f"got {self.payments_per_year}")

    def payment_times(self) -> list[float]:
        """Premium dates i/payments_per_year, i = 1..ceil(maturity * payments_per_year)."""
        freq = self.payments_per_year
        n = math.ceil(self.maturity * freq - 1e-12)
        return [i / freq for i in range(1, n + 1)]


@dataclass(frozen=True)
class SpreadCell:
    """One entry of a spread table; hurst is None on classical (beta=0) rows."""

    alpha: float
    beta: float
    hurst: float | None
    maturity: float
    spread_bps: float
    error: str | None = None


@dataclass(frozen=True)
class CurvePoint:
    """A (time, default probability) sample of the term structure."""

    t: float
    q: float


def _protection_leg_unit(contract: CdsContract, params: ModelParams) -> float:
    """Protection value per unit notional, cross-checked two ways.

    The density form integrates e^(-rt) g(t) directly; the

        (1-R) [e^(-rT) Q(T) + r * integral_0^T e^(-rt) Q(t) dt]

    form follows by integration by parts (Q(0) = 0) and is the value
    returned.  Disagreement beyond 1e-8 relative raises NumericalError.
    """
    if contract.recovery == 1.0:
        return 0.0
    lgd = 1.0 - contract.recovery
    horizon = contract.maturity
    r = params.r

    density_integral = adaptive_quad(
        lambda t: math.exp(-r * t) * fpt_density(t, params), 0.0, horizon)
    survival_integral = adaptive_quad(
        lambda t: math.exp(-r * t) * default_probability(t, params), 0.0, horizon)
    v_density = lgd * density_integral
    v_parts = lgd * (math.exp(-r * horizon) * default_probability(horizon, params)
                     + r * survival_integral)

    scale = max(abs(v_density), abs(v_parts))
    if abs(v_density - v_parts) > _LEG_AGREEMENT_RTOL * scale + 1e-15:
        raise NumericalError(
            f"protection-leg evaluations disagree: density form {v_density!r}, "
            f"integration-by-parts form {v_parts!r}")
    return v_parts


def protection_leg(contract: CdsContract, params: ModelParams) -> float:
    """Present value of the protection payment, scaled by the notional."""
    validate(params)
    return contract.notional * _protection_leg_unit(contract, params)


def premium_annuity(contract: CdsContract, params: ModelParams) -> float:
    """Risky annuity: sum of accrual * discount * survival over payment dates.

    Per unit notional and per unit of annual spread, i.e.
    sum_i (1/freq) e^(-r t_i) (1 - Q(t_i)).
    """
    validate(params)
    accrual = 1.0 / contract.payments_per_year
    return sum(accrual * math.exp(-params.r * t_i)
               * (1.0 - default_probability(t_i, params))
               for t_i in contract.payment_times())


def cds_spread(contract: CdsContract, params: ModelParams) -> float:
    """Equilibrium running spread in basis points per year.

    10^4 * protection leg / premium annuity, both per unit notional.
    """
    validate(params)
    annuity = premium_annuity(contract, params)
    if annuity <= 0.0:
        raise NumericalError(
            "premium annuity underflowed to zero (certain default before the "
            "first payment date); the running spread is undefined")
    return 1e4 * _protection_leg_unit(contract, params) / annuity


def spread_table(params_base: ModelParams,
                 alphas: list[float],
                 betas_hursts: list[tuple[float, float | None]],
                 maturities: list[float],
                 *,
                 recovery: float = 0.5,
                 payments_per_year: int = 2) -> list[SpreadCell]:
    """Cartesian spread grid in fixed (beta, hurst, maturity, alpha) order.

    betas_hursts holds (beta, hurst) pairs; hurst may be None only when
    beta == 0 (the classical rows, where it has no effect).  Failures are
    captured per cell (spread NaN, error message set) without aborting.
    """
    cells: list[SpreadCell] = []
    for beta, hurst in betas_hursts:
        if hurst is None and beta != 0.0:
            raise ParameterError("hurst", "hurst may be omitted only when beta = 0")
        for maturity in maturities:
            for alpha in alphas:
                try:
                    params = ModelParams(r=params_base.r, sigma0=params_base.sigma0,
                                         alpha=alpha, beta=beta,
                                         hurst=hurst if hurst is not None else 0.8,
                                         s0=params_base.s0)
                    contract = CdsContract(maturity=maturity, recovery=recovery,
                                           payments_per_year=payments_per_year)
                    spread = cds_spread(contract, params)
                    cells.append(SpreadCell(alpha, beta, hurst, maturity, spread))
                except (ParameterError, NumericalError, ValueError) as exc:
                    cells.append(SpreadCell(alpha, beta, hurst, maturity,
                                            float("nan"), error=str(exc)))
    return cells


def default_curve(params: ModelParams, t_max: float, n_points: int) -> list[CurvePoint]:
    """Default probability sampled on a uniform grid over [0, t_max]."""
    validate(params)
    if not t_max > 0.0:
        raise ParameterError("t_max", f"t_max must be > 0, got {t_max}")
    if n_points < 2:
        raise ParameterError("n_points", f"n_points must be >= 2, got {n_points}")
    step = t_max / (n_points - 1)
    points = []
    for i in range(n_points):
        t = t_max if i == n_points - 1 else i * step
        points.append(CurvePoint(t, default_probability(t, params)))
    return points
