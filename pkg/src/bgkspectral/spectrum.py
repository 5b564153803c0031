"""Discrete solutions, continuum eigenfunctions, and the expansion theorem.

The transport equation

    mu dh/dx + h(x, mu) = int rho(mu') q(mu, mu') h(x, mu') d(mu')

has four polynomial (discrete) solutions attached to the fourth-order
zero of the dispersion function at infinity, and a continuum of singular
eigenfunctions indexed by eta in (-alpha, alpha).  The general solution
is a linear combination of the four discrete solutions plus an integral
of the continuum eigenfunctions against a coefficient density A(eta);
``apply_expansion`` evaluates that representation and ``residual_2_4``
measures how well any candidate h satisfies the equation.

All operations are pure; expansion evaluation over many (x, mu) points
is embarrassingly parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError, EvaluationError
from .dispersion import _assemble, _cofactors, _det3, lambda_matrix
from .moments import moments_pv, tn_pv_array
from .params import GasParams, mu_of, rho_of_c, velocity_map
from .quadrature import QuadratureScheme, integrate_pv, integrate_weighted, pv_interval


def discrete_solution(params: GasParams, k: int, x, mu):
    """The k-th discrete solution, k = 0..3.

    h0 = 1, h1 = C(mu), h2 = C(mu)**2 - 1/2, h3 = (x - mu)(C(mu)**2 - 3/2).
    The constants 1/2 and 3/2 are independent of the frequency slope: the
    cross moments that would couple them to ``beta`` vanish identically in
    the speed variable, which the residual checker confirms numerically.
    """
    c = velocity_map(params, mu)
    if k == 0:
        return np.ones_like(np.asarray(mu, dtype=float)) if np.ndim(mu) else 1.0
    if k == 1:
        return c
    if k == 2:
        return c * c - 0.5
    if k == 3:
        return (np.asarray(x, dtype=float) - np.asarray(mu, dtype=float)) * (
            c * c - 1.5
        )
    raise DomainError(f"discrete index must be 0..3, got {k}")


def discrete_solution_dx(params: GasParams, k: int, x, mu):
    """Analytic x-derivative of the k-th discrete solution."""
    if k in (0, 1, 2):
        return np.zeros_like(np.asarray(mu, dtype=float))
    if k == 3:
        c = velocity_map(params, mu)
        return c * c - 1.5
    raise DomainError(f"discrete index must be 0..3, got {k}")


@dataclass(frozen=True)
class EigenData:
    """Boundary data of the dispersion machinery at one cut point eta.

    ``g`` is the overall normalization freedom of the eigenfunction (the
    homogeneous equation fixes it only up to scale); the shipped default
    is 1.
    """

    eta: float
    lambda_pv: float
    cofactors: np.ndarray
    rho: float
    c_eta: float
    g: float = 1.0


def eigen_data(params: GasParams, scheme: QuadratureScheme, eta: float,
               g: float = 1.0) -> EigenData:
    """Collect rho, C, PV cofactors and PV determinant at ``eta``."""
    eta = float(eta)
    ms = moments_pv(params, scheme, eta)
    m = lambda_matrix(params, ms)
    cof = _cofactors(params, m, eta).real
    det = float(_det3(m).real)
    c = float(velocity_map(params, eta))
    return EigenData(
        eta=eta,
        lambda_pv=det,
        cofactors=cof,
        rho=float(rho_of_c(params, np.asarray(c))),
        c_eta=c,
        g=float(g),
    )


def _q_tilde_from(params: GasParams, data: EigenData, mu):
    c_mu = np.asarray(velocity_map(params, mu), dtype=float)
    l0, l1, l2 = data.cofactors
    return (
        params.r0 * l0
        + params.r1 * c_mu * l1
        + params.r2 * (c_mu * c_mu - params.beta) * (l2 - params.beta * l0)
    )


def eigenfunction_regular(params: GasParams, scheme: QuadratureScheme,
                          eta: float, mu: float, g: float = 1.0):
    """Regular (principal-value) part of the continuum eigenfunction.

    Value of ``g * eta * Q~(eta, mu) * rho(eta) / (lambda_pv(eta) * (eta - mu))``;
    the full eigenfunction additionally carries the delta contribution
    ``g * delta(eta - mu)``, applied distributionally by
    :func:`apply_expansion`.

    Raises
    ------
    DomainError
        At the pole ``eta == mu`` (use the distributional machinery).
    """
    eta, mu = float(eta), float(mu)
    if abs(eta - mu) < 1e-12:
        raise DomainError("eta == mu is the singular point of the eigenfunction")
    data = eigen_data(params, scheme, eta, g=g)
    qt = float(_q_tilde_from(params, data, mu))
    return data.g * eta * qt * data.rho / (data.lambda_pv * (eta - mu))


@dataclass
class SpectralExpansion:
    """Discrete coefficients plus a sampled continuum coefficient A(eta).

    The continuum density is defined by samples on ``eta_grid`` (strictly
    inside the cut) with cubic-spline interpolation; outside the grid hull
    A is taken to vanish, so the grid must cover the support of the
    intended density and its endpoint values should be (near) zero.
    """

    discrete: np.ndarray
    eta_grid: np.ndarray
    a_values: np.ndarray
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        self.discrete = np.asarray(self.discrete, dtype=float)
        self.eta_grid = np.asarray(self.eta_grid, dtype=float)
        self.a_values = np.asarray(self.a_values, dtype=float)
        if self.discrete.shape != (4,):
            raise DomainError("expansion needs exactly four discrete coefficients")
        if self.eta_grid.ndim != 1 or self.eta_grid.size < 4:
            raise DomainError("continuum grid needs at least four points")
        if np.any(np.diff(self.eta_grid) <= 0):
            raise DomainError("continuum grid must be strictly increasing")
        if not np.all(np.isfinite(self.a_values)):
            raise DomainError("continuum samples must be finite")
        self._spline = CubicSpline(self.eta_grid, self.a_values)

    def validate(self, params: GasParams) -> None:
        if np.any(np.abs(self.eta_grid) >= params.alpha):
            raise DomainError("continuum grid must lie strictly inside the cut")

    def a_of(self, eta):
        """Interpolated continuum coefficient, zero outside the grid hull."""
        eta = np.asarray(eta, dtype=float)
        inside = (eta >= self.eta_grid[0]) & (eta <= self.eta_grid[-1])
        out = np.where(inside, self._spline(np.clip(
            eta, self.eta_grid[0], self.eta_grid[-1])), 0.0)
        return out if out.ndim else float(out)


def apply_expansion(params: GasParams, scheme: QuadratureScheme,
                    expansion: SpectralExpansion, x: float, mu: float,
                    derivative: bool = False):
    """Evaluate the general-solution representation at (x, mu).

    h = sum_k A_k h_k(x, mu)
        + PV int exp(-x/eta) [regular part](eta, mu) A(eta) d(eta)
        + exp(-x/mu) A(mu)

    With ``derivative=True`` the analytic x-derivative is returned
    instead.  Decaying exponentials require the continuum support and
    ``x`` to be nonnegative; nothing enforces that, but growing modes are
    the caller's responsibility.

    The PV-normalized eigenfunctions carry a factor 1/lambda_pv(eta), and
    lambda_pv has real zeros inside the cut; a smooth density A must
    vanish at (or keep its support away from) those points, otherwise the
    continuum integral acquires poles the quadrature does not treat.
    """
    expansion.validate(params)
    x, mu = float(x), float(mu)
    if abs(mu) >= params.alpha:
        raise DomainError(f"|mu| must be < {params.alpha}")

    out = 0.0
    for k in range(4):
        coeff = expansion.discrete[k]
        if coeff != 0.0:
            hk = (
                discrete_solution_dx(params, k, x, mu)
                if derivative
                else discrete_solution(params, k, x, mu)
            )
            out += coeff * float(np.asarray(hk))

    lo, hi = expansion.eta_grid[0], expansion.eta_grid[-1]

    # PV-cofactor data on the continuum grid hull, vectorized over eta
    def integrand(eta):
        eta = np.asarray(eta, dtype=float)
        t = tn_pv_array(params, eta).astype(complex)
        m = _assemble(params, t)
        det = _det3(m).real
        c_eta = np.asarray(velocity_map(params, eta), dtype=float)
        col = np.stack([np.ones_like(c_eta), c_eta, c_eta * c_eta]).astype(complex)
        cof = np.empty((3,) + eta.shape)
        for k in range(3):
            mk = m.copy()
            mk[:, k] = col
            cof[k] = _det3(mk).real
        c_mu = float(velocity_map(params, mu))
        qt = (
            params.r0 * cof[0]
            + params.r1 * c_mu * cof[1]
            + params.r2 * (c_mu * c_mu - params.beta) * (cof[2] - params.beta * cof[0])
        )
        rho_eta = rho_of_c(params, c_eta)
        expo = np.exp(-x / eta)
        if derivative:
            expo = expo * (-1.0 / eta)
        return expo * eta * qt * rho_eta * expansion.a_of(eta) / det

    continuum = pv_interval(integrand, lo, hi, mu,
                            n_panels=max(16, scheme.n // 12))

    a_mu = expansion.a_of(mu)
    if a_mu != 0.0:
        delta = np.exp(-x / mu) * a_mu
        if derivative:
            delta *= -1.0 / mu
        continuum += delta
    return out + continuum


def residual_2_4(params: GasParams, scheme: QuadratureScheme, h, x: float,
                 dh_dx=None, mu_grid=None, fd_step: float = 1e-5) -> float:
    """Sup-norm residual of a candidate solution in the transport equation.

    ``h(x, mu)`` must be vectorized over ``mu``.  The x-derivative is
    taken by central differences with step ``fd_step`` unless an analytic
    ``dh_dx(x, mu)`` is supplied.  The default test grid is the image of
    64 uniformly spaced speeds, which keeps it strictly inside the cut
    for every slope.
    """
    if mu_grid is None:
        mu_grid = mu_of(params, np.linspace(-3.5, 3.5, 64))
    mu_grid = np.asarray(mu_grid, dtype=float)
    c_grid = np.asarray(velocity_map(params, mu_grid), dtype=float)

    # collision integral via the factorized kernel: three h-moments suffice
    def f0(c):
        return h(x, mu_of(params, c))

    def f1(c):
        return h(x, mu_of(params, c)) * c

    def f2(c):
        return h(x, mu_of(params, c)) * (c * c - params.beta)

    i0 = integrate_weighted(scheme, f0)
    i1 = integrate_weighted(scheme, f1)
    i2 = integrate_weighted(scheme, f2)
    collision = (
        params.r0 * i0
        + params.r1 * c_grid * i1
        + params.r2 * (c_grid * c_grid - params.beta) * i2
    )

    h_val = np.asarray(h(x, mu_grid), dtype=float)
    if dh_dx is not None:
        dh = np.asarray(dh_dx(x, mu_grid), dtype=float)
    else:
        dh = (
            np.asarray(h(x + fd_step, mu_grid), dtype=float)
            - np.asarray(h(x - fd_step, mu_grid), dtype=float)
        ) / (2.0 * fd_step)

    res = mu_grid * dh + h_val - collision
    if not np.all(np.isfinite(res)):
        raise EvaluationError("residual evaluation produced non-finite values")
    return float(np.max(np.abs(res)))


def normalization_check(params: GasParams, scheme: QuadratureScheme,
                        eta: float) -> np.ndarray:
    """Deviation between direct and closed-form eigenfunction moments.

    Computes n_a(eta) = PV int Phi(eta, mu) C**a rho d(mu) (delta term
    included) by principal-value quadrature and compares with
    rho(eta) L_a(eta) / lambda_pv(eta).  Returns the three absolute
    deviations; their smallness is the self-consistency of the moment
    system with its own solution formula.
    """
    eta = float(eta)
    data = eigen_data(params, scheme, eta)
    prefactor = eta * data.rho / data.lambda_pv

    deviations = np.empty(3)
    for a_idx in range(3):
        def f(c, a_idx=a_idx):
            mu = mu_of(params, c)
            return -_q_tilde_from(params, data, mu) * c**a_idx

        # PV int Q~ C^a rho/(eta-mu) dmu  ==  -PV int w(C) f.../(mu(C)-eta) dC
        pv_part = prefactor * integrate_pv(scheme, f, eta)
        direct = pv_part + data.rho * data.c_eta**a_idx * data.g
        closed = data.rho * data.cofactors[a_idx] / data.lambda_pv
        deviations[a_idx] = abs(direct - closed)
    return deviations
