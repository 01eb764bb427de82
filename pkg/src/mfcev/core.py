"""Model parameters, the power transform of the price, and default analytics.

The asset price follows a constant-elasticity-of-variance diffusion whose
noise is a mixture of a standard Brownian motion and an independent
fractional Brownian motion with Hurst exponent in (3/4, 1).  Default is the
first time the price hits zero.  Under the power transform x = S^(2-alpha)
the transformed state is a time-inhomogeneous square-root diffusion

    dx = [A x + B(t)] dt + sqrt(2 C(t) x) dW,

and the probability that x has been absorbed at zero by time t has the
closed form

    Q(t) = Gamma(1-xi, x0 / phi(t)) / Gamma(1-xi),

with xi = (1-alpha)/(2-alpha) and phi the discounted running integral of
C.  This module evaluates phi (closed form and quadrature oracle), the
first-passage density g = dQ/dt, and Q itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import ParameterError, QuadratureError
from .specfun import log_gamma, reg_gamma_upper, whittaker_m

#: below this rate the r -> 0 analytic branch of phi is used
R_ZERO_TOL = 1e-12

#: log-density floor; anything below exp(LOG_FLOOR) is reported as exact 0
LOG_FLOOR = -700.0


@dataclass(frozen=True)
class ModelParams:
    """Mixed-fractional CEV parameter set.

    r       risk-free rate (per year, >= 0)
    sigma0  at-the-money volatility scale (per sqrt(year), > 0)
    alpha   elasticity exponent (< 2 so that zero is attainable)
    beta    fractional mixing weight (>= 0; 0 recovers the classical CEV)
    hurst   Hurst exponent of the fractional component, in (3/4, 1)
    s0      initial price (> 0)

    The volatility coefficient of the price SDE is delta = sigma0 *
    s0^((2-alpha)/2), so sigma0 is the local volatility at inception and
    every default/spread quantity is invariant to the price level.
    """

    r: float
    sigma0: float
    alpha: float
    beta: float
    hurst: float
    s0: float = 50.0

    def __post_init__(self):
        validate(self)

    @property
    def delta_sq(self) -> float:
        """Squared volatility coefficient sigma0^2 * s0^(2-alpha)."""
        return self.sigma0 ** 2 * self.s0 ** (2.0 - self.alpha)


def validate(params: ModelParams) -> ModelParams:
    """Check every model constraint; raise ParameterError naming the first violated one."""
    if not params.alpha < 2.0:
        raise ParameterError("alpha", f"alpha must be < 2, got {params.alpha}")
    if not 0.75 < params.hurst < 1.0:
        raise ParameterError("hurst", f"hurst must lie in (3/4, 1), got {params.hurst}")
    if not params.beta >= 0.0:
        raise ParameterError("beta", f"beta must be >= 0, got {params.beta}")
    if not params.sigma0 > 0.0:
        raise ParameterError("sigma0", f"sigma0 must be > 0, got {params.sigma0}")
    if not params.r >= 0.0:
        raise ParameterError("r", f"r must be >= 0, got {params.r}")
    if not params.s0 > 0.0:
        raise ParameterError("s0", f"s0 must be > 0, got {params.s0}")
    return params


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Coefficients of the transformed-state forward equation.

    a_drift is the linear drift rate A = (2-alpha) r; b_drift and c_diff are
    the time-dependent constant-drift and diffusion coefficients B(t), C(t);
    their ratio theta = (1-alpha)/(2-alpha) is time-independent and equals
    the absorption exponent xi.  variance_clock is the effective quadratic
    variation v(t) = t + beta^2 t^(2H) of the mixed noise.
    """

    a_drift: float
    theta: float
    xi: float
    x0: float
    delta_sq: float
    alpha: float
    beta: float
    hurst: float

    def b_drift(self, t: float) -> float:
        two_a = 2.0 - self.alpha
        return self.delta_sq * (1.0 - self.alpha) * two_a * self._rate_factor(t)

    def c_diff(self, t: float) -> float:
        two_a = 2.0 - self.alpha
        return self.delta_sq * two_a ** 2 * self._rate_factor(t)

    def variance_clock(self, t: float) -> float:
        if t < 0.0:
            raise ValueError(f"variance_clock requires t >= 0, got {t}")
        return t + self.beta ** 2 * t ** (2.0 * self.hurst)

    def _rate_factor(self, t: float) -> float:
        # d(variance_clock)/dt / 2 = 1/2 + beta^2 H t^(2H-1); finite at 0+
        # because 2H-1 > 0.
        if t < 0.0:
            raise ValueError(f"coefficients require t >= 0, got {t}")
        return 0.5 + self.beta ** 2 * self.hurst * t ** (2.0 * self.hurst - 1.0)


def effective_coefficients(params: ModelParams) -> EffectiveCoefficients:
    """Derive the transformed-state coefficients from the model parameters."""
    two_a = 2.0 - params.alpha
    theta = (1.0 - params.alpha) / two_a
    return EffectiveCoefficients(
        a_drift=two_a * params.r,
        theta=theta,
        xi=theta,
        x0=params.s0 ** two_a,
        delta_sq=params.delta_sq,
        alpha=params.alpha,
        beta=params.beta,
        hurst=params.hurst,
    )


def phi_closed(t: float, params: ModelParams) -> float:
    """Closed form of phi(t) = integral_0^t C(u) e^(-(2-alpha) r u) du.

    For r > 0 this is the rate-decay term

        delta^2 (2-alpha) / (2r) * (1 - e^(-(2-alpha) r t))

    plus, for beta > 0, the fractional correction expressed through the
    Whittaker M function with parameters (H, H+1/2) at z = (2-alpha) r t.
    For r ~ 0 the integral is elementary:
    delta^2 (2-alpha)^2 (t + beta^2 t^(2H)) / 2.
    """
    if t < 0.0:
        raise ValueError(f"phi requires t >= 0, got {t}")
    if t == 0.0:
        return 0.0
    two_a = 2.0 - params.alpha
    s2 = params.delta_sq
    hurst = params.hurst
    if params.r < R_ZERO_TOL:
        return 0.5 * s2 * two_a ** 2 * (t + params.beta ** 2 * t ** (2.0 * hurst))
    lam = two_a * params.r
    first = s2 * two_a / (2.0 * params.r) * (-math.expm1(-lam * t))
    if params.beta == 0.0:
        return first
    z = lam * t
    m = whittaker_m(hurst, hurst + 0.5, z)
    if m > 0.0:
        bracket = (2.0 * hurst + 1.0) + math.exp(0.5 * z) * z ** (-hurst) * m
    else:
        # z so small that M underflowed; its contribution is O(z).
        bracket = 2.0 * hurst + 1.0
    second = (params.beta ** 2 * s2 * two_a ** 2 / (2.0 * (2.0 * hurst + 1.0))
              * math.exp(-z) * t ** (2.0 * hurst) * bracket)
    return first + second


def phi_quadrature(t: float, params: ModelParams) -> float:
    """phi(t) by adaptive quadrature of its defining integrand.

    Independent oracle for phi_closed; the two agree to ~1e-10 relative.
    """
    if t < 0.0:
        raise ValueError(f"phi requires t >= 0, got {t}")
    if t == 0.0:
        return 0.0
    coeffs = effective_coefficients(params)
    lam = coeffs.a_drift

    def integrand(u: float) -> float:
        return coeffs.c_diff(u) * math.exp(-lam * u)

    return adaptive_quad(integrand, 0.0, t)


def adaptive_quad(func, lo: float, hi: float, *,
                  epsrel: float = 1e-10, epsabs: float = 1e-16) -> float:
    """Adaptive quadrature with an explicit failure contract.

    Raises QuadratureError (carrying the achieved error estimate) when the
    integrator reports it could not reach the requested tolerance.
    """
    out = quad(func, lo, hi, epsabs=epsabs, epsrel=epsrel,
               limit=200, full_output=True)
    value, abserr = out[0], out[1]
    if len(out) > 3:
        # Warning from the integrator; accept if the estimate still meets
        # the tolerance (it is conservative about roundoff), else fail.
        if abserr > max(epsrel * abs(value), 1e-13):
            raise QuadratureError(
                f"quadrature failed: {out[3]} (achieved abs. error {abserr:.3e})",
                value, abserr)
    return value


def fpt_density(t: float, params: ModelParams) -> float:
    """Density g(t) of the first passage of the price through zero.

    g is the time derivative of default_probability,

        g(t) = C(t) e^(-(2-alpha) r t) / (Gamma(1-xi) phi(t))
               * (x0/phi(t))^(1-xi) * exp(-x0/phi(t)),

    evaluated in log space; values below the exp floor are reported as 0.
    """
    if t <= 0.0:
        raise ValueError(f"fpt_density requires t > 0, got {t}")
    coeffs = effective_coefficients(params)
    s = 1.0 - coeffs.xi
    lam = coeffs.a_drift
    phi = phi_closed(t, params)
    log_phi = math.log(phi)
    u = coeffs.x0 / phi
    log_g = (math.log(coeffs.c_diff(t)) - lam * t - log_phi
             + s * (math.log(coeffs.x0) - log_phi) - u - log_gamma(s))
    if log_g < LOG_FLOOR:
        return 0.0
    return math.exp(log_g)


def default_probability(t: float, params: ModelParams) -> float:
    """Risk-neutral probability that the price has hit zero by time t.

    Q(t) = Gamma(1-xi, x0/phi(t)) / Gamma(1-xi), with Q(0) = 0.  Invariant
    to s0 because x0 and phi carry the same s0^(2-alpha) factor.
    """
    if t < 0.0:
        raise ValueError(f"default_probability requires t >= 0, got {t}")
    if t == 0.0:
        return 0.0
    coeffs = effective_coefficients(params)
    s = 1.0 - coeffs.xi
    return reg_gamma_upper(s, coeffs.x0 / phi_closed(t, params))
