"""Model constants and the velocity-variable machinery.

The kinetic model is parameterized by a single nonnegative slope ``a`` of
the collision frequency ``nu(C) = 1 + a|C|`` (dimensionless thermal speed
``C``).  Everything else -- the orthogonality constant ``beta``, the three
kernel coefficients ``r0, r1, r2``, the half-width ``alpha = 1/a`` of the
continuous spectrum, and the bijection between the transport variable
``mu`` and the speed variable ``C`` -- derives from ``a``.

Conventions
-----------
All formulas use the rescaled slope convention in which the collision
frequency reads ``1 + a|C|`` (no stray ``sqrt(pi)`` in front of ``a``).
An older parameterization that writes the frequency as
``1 + sqrt(pi)*a'|C|`` describes the same family with ``a = sqrt(pi)*a'``;
it is intentionally not exposed as a code path.

Integrals over ``mu`` on ``(-alpha, alpha)`` with weight ``rho(mu)`` are
always performed in the ``C`` variable through the exact identity

    rho(mu) d(mu) = exp(-C**2) * (1 + a*|C|) dC,

which turns the singular-looking endpoint behaviour of ``rho`` into a
smooth Gaussian-weighted integrand on the whole real line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class GasParams:
    """Dimensionless model constants for one value of the frequency slope.

    Attributes
    ----------
    a : float
        Collision-frequency slope, ``a >= 0``.
    alpha : float
        Half-width of the continuous spectrum, ``1/a`` (``inf`` for a=0).
    beta : float
        Orthogonality constant of the energy invariant,
        ``beta = (2a + sqrt(pi)) / (2(a + sqrt(pi)))``.
    r0, r1, r2 : float
        Kernel coefficients of the collision operator.

    Instances are immutable; all operations on them are pure functions and
    safe for unrestricted concurrent use.
    """

    a: float
    alpha: float
    beta: float
    r0: float
    r1: float
    r2: float


def make_params(a: float) -> GasParams:
    """Build the model constants for frequency slope ``a``.

    Parameters
    ----------
    a : float
        Nonnegative, finite collision-frequency slope.  ``a = 0`` gives the
        constant-frequency model (spectrum covering the whole real line);
        large ``a`` approaches the frequency-proportional-to-speed model.

    Returns
    -------
    GasParams

    Raises
    ------
    DomainError
        If ``a`` is negative or not finite.
    """
    a = float(a)
    if not math.isfinite(a) or a < 0.0:
        raise DomainError(f"frequency slope must be finite and >= 0, got {a}")
    alpha = math.inf if a == 0.0 else 1.0 / a
    beta = (2.0 * a + SQRT_PI) / (2.0 * (a + SQRT_PI))
    r0 = 1.0 / (a + SQRT_PI)
    r1 = 2.0 / (2.0 * a + SQRT_PI)
    r2 = 4.0 * (a + SQRT_PI) / (4.0 * a * a + 7.0 * SQRT_PI * a + 2.0 * math.pi)
    return GasParams(a=a, alpha=alpha, beta=beta, r0=r0, r1=r1, r2=r2)


def _check_mu(params: GasParams, mu) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    if np.any(~np.isfinite(mu)) or np.any(np.abs(mu) >= params.alpha):
        raise DomainError(
            f"mu must lie strictly inside (-{params.alpha}, {params.alpha})"
        )
    return mu


def velocity_map(params: GasParams, mu):
    """Map the transport variable to the speed variable, C = mu/(1 - a|mu|).

    Odd and strictly increasing on ``(-alpha, alpha)``, diverging at the
    endpoints.  Accepts scalars or arrays.

    Raises
    ------
    DomainError
        If ``|mu| >= alpha``.
    """
    mu = _check_mu(params, mu)
    c = mu / (1.0 - params.a * np.abs(mu))
    return c if c.ndim else float(c)

def mu_of(params: GasParams, c):
    """Inverse of :func:`velocity_map`: mu = C/(1 + a|C|), defined on all of R."""
    c = np.asarray(c, dtype=float)
    mu = c / (1.0 + params.a * np.abs(c))
    return mu if mu.ndim else float(mu)


def dmu_dc(params: GasParams, c):
    """Jacobian of ``mu_of``: 1/(1 + a|C|)**2."""
    c = np.asarray(c, dtype=float)
    return (1.0 + params.a * np.abs(c)) ** -2.0


@dataclass(frozen=True)
class VelocityMap:
    """The bijection mu <-> C for a fixed parameter set.

    Thin object wrapper around :func:`velocity_map` / :func:`mu_of`, handy
    when the map is passed around as a unit.
    """

    params: GasParams

    def c_of(self, mu):
        return velocity_map(self.params, mu)

    def mu_of(self, c):
        return mu_of(self.params, c)


def weight(params: GasParams, mu):
    """Transport-space weight rho(mu) = exp(-C(mu)**2) * (1 - a|mu|)**-3.

    Even in ``mu``; vanishes together with every product ``rho * C**n`` at
    the interval endpoints, which are handled as limits (value 0) rather
    than as errors.
    """
    mu = np.asarray(mu, dtype=float)
    one_minus = 1.0 - params.a * np.abs(mu)
    inside = one_minus > 0.0
    c = np.where(inside, mu / np.where(inside, one_minus, 1.0), 0.0)
    rho = np.where(inside, np.exp(-c * c) / np.where(inside, one_minus, 1.0) ** 3,
                   0.0)
    return rho if rho.ndim else float(rho)


def weight_c(params: GasParams, c):
    """Speed-space weight w(C) = exp(-C**2) * (1 + a|C|).

    This is ``rho(mu) * dmu/dC``; every weighted ``mu``-integral in the
    package is evaluated against ``w`` on the real line.
    """
    c = np.asarray(c, dtype=float)
    w = np.exp(-c * c) * (1.0 + params.a * np.abs(c))
    return w if w.ndim else float(w)


def rho_of_c(params: GasParams, c):
    """rho at the transport point whose speed image is ``c``: e^{-C^2}(1+a|C|)^3."""
    c = np.asarray(c, dtype=float)
    r = np.exp(-c * c) * (1.0 + params.a * np.abs(c)) ** 3
    return r if r.ndim else float(r)


def kernel_q(params: GasParams, mu, mu_prime):
    """Collision kernel q(mu, mu') of the transport equation.

    q = r0 + r1*C(mu)*C(mu') + r2*(C(mu)^2 - beta)*(C(mu')^2 - beta);
    symmetric in its two arguments.

    Raises
    ------
    DomainError
        If either argument lies outside ``(-alpha, alpha)``.
    """
    c = velocity_map(params, mu)
    cp = velocity_map(params, mu_prime)
    return kernel_q_c(params, c, cp)


def kernel_q_c(params: GasParams, c, c_prime):
    """Collision kernel expressed in speed variables (no domain restriction)."""
    c = np.asarray(c, dtype=float)
    cp = np.asarray(c_prime, dtype=float)
    q = (
        params.r0
        + params.r1 * c * cp
        + params.r2 * (c * c - params.beta) * (cp * cp - params.beta)
    )
    return q if q.ndim else float(q)
