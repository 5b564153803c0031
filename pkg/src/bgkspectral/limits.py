"""Closed-form limiting cases: constant frequency and frequency ~ speed.

Constant frequency (a = 0)
    The dispersion function collapses to
    ``lambda(z) = -1/2 - (z**2 - 3/2) * lambda_c(z)`` with ``lambda_c``
    the classical plasma dispersion function; both are implemented here
    through the Faddeeva function, with the textbook finite-interval
    formula kept as a numerical cross-check.

Frequency proportional to speed (a -> infinity)
    The kinetic equation closes exactly on the six-function basis
    {1, sgn C, C, |C|, C**2-1, (C**2-1) sgn C}.  The first-order ODE
    system for the coefficient vector is DERIVED here by Galerkin
    projection from exact half-line Gaussian moments, not transcribed:
    commonly quoted versions of this system (and the decay rate
    sqrt(3*pi)/2 they imply) are inconsistent with the projection, which
    yields sqrt(5*pi)/4 instead.  The arbiter is the residual of the
    resulting modes in the kinetic equation itself; see
    DERIVATION_NOTES.md at the repository root for the full comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import dawsn, roots_legendre, wofz

from .errors import DomainError

SQRT_PI = math.sqrt(math.pi)

#: decay rate of the exponential modes of the derived projected system
FM_DECAY_RATE = math.sqrt(5.0 * math.pi) / 4.0

#: decay rate quoted in the literature for this solution (for comparison)
FM_DECAY_RATE_QUOTED = math.sqrt(3.0 * math.pi) / 2.0


# ---------------------------------------------------------------------------
# constant-frequency limit: plasma dispersion function
# ---------------------------------------------------------------------------

def lambda_c(z):
    """Plasma dispersion function lambda_C(z) for z off the real axis.

    lambda_C(z) = 1 + (z/sqrt(pi)) int exp(-mu**2)/(mu - z) d(mu),
    evaluated through the Faddeeva function.  Vectorized; raises for
    points on the real axis (use :func:`lambda_c_boundary` or
    :func:`lambda_c_pv` there).
    """
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0.0):
        raise DomainError("real axis: use lambda_c_boundary / lambda_c_pv")
    out = np.empty_like(z)
    up = z.imag > 0
    out[up] = 1.0 + 1j * SQRT_PI * z[up] * wofz(z[up])
    dn = ~up
    out[dn] = 1.0 - 1j * SQRT_PI * z[dn] * wofz(-z[dn])
    return complex(out) if out.ndim == 0 else out


def lambda_c_pv(x):
    """Principal-value symbol of lambda_C on the real axis: 1 - 2x D(x)."""
    x = np.asarray(x, dtype=float)
    v = 1.0 - 2.0 * x * dawsn(x)
    return float(v) if v.ndim == 0 else v


def lambda_c_boundary(x, side: str):
    """Boundary values lambda_C(x +- i0) = PV +- i sqrt(pi) x exp(-x**2)."""
    x = np.asarray(x, dtype=float)
    if side in ("plus", "+", 1):
        sgn = 1.0
    elif side in ("minus", "-", -1):
        sgn = -1.0
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    v = lambda_c_pv(x) + sgn * 1j * SQRT_PI * x * np.exp(-x * x)
    return complex(v) if np.ndim(v) == 0 else v


def lambda_c_stable(z, n_nodes: int = 96):
    """Finite-interval evaluation of lambda_C, for cross-checking.

    lambda_C(z) = 1 - 2 z**2 int_0^1 exp(-z**2 (1 - t**2)) dt
                  + sign(Im z) * i sqrt(pi) z exp(-z**2)

    Accurate for moderate |z| (growth of the integrand limits it to
    roughly |z| <= 6); the Faddeeva route is the production path.
    """
    z = complex(z)
    if z.imag == 0.0:
        raise DomainError("real axis: use lambda_c_boundary / lambda_c_pv")
    t, w = roots_legendre(n_nodes)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    integral = np.sum(w * np.exp(-z * z * (1.0 - t * t)))
    sgn = 1.0 if z.imag > 0 else -1.0
    return 1.0 - 2.0 * z * z * integral + sgn * 1j * SQRT_PI * z * np.exp(-z * z)


def lambda_a0(z):
    """Constant-frequency dispersion function -1/2 - (z**2 - 3/2) lambda_C(z)."""
    z = np.asarray(z, dtype=complex)
    v = -0.5 - (z * z - 1.5) * lambda_c(z)
    return complex(v) if v.ndim == 0 else v


def lambda_a0_pv(x):
    """PV symbol of the constant-frequency dispersion function on the axis."""
    x = np.asarray(x, dtype=float)
    v = -0.5 - (x * x - 1.5) * lambda_c_pv(x)
    return float(v) if v.ndim == 0 else v


def lambda_a0_boundary(x, side: str):
    """Boundary values of the constant-frequency dispersion function."""
    x = np.asarray(x, dtype=float)
    v = -0.5 - (x * x - 1.5) * lambda_c_boundary(x, side)
    return complex(v) if np.ndim(v) == 0 else v


# ---------------------------------------------------------------------------
# free-molecular limit: exact six-mode solution
# ---------------------------------------------------------------------------

#: basis functions, in coefficient order (a1, a1~, a2, a2~, a3, a3~):
#: 1, sgn C, C, |C|, C**2 - 1, (C**2 - 1) sgn C
_FM_BASIS_POLY = ((1.0,), (1.0,), (0.0, 1.0), (0.0, 1.0),
                  (-1.0, 0.0, 1.0), (-1.0, 0.0, 1.0))
_FM_BASIS_SGN = (0, 1, 0, 1, 0, 1)


def fm_kernel(c, c_prime):
    """Free-molecular collision kernel q1(C, C') = 1 + CC' + (C**2-1)(C'**2-1)."""
    c = np.asarray(c, dtype=float)
    cp = np.asarray(c_prime, dtype=float)
    q = 1.0 + c * cp + (c * c - 1.0) * (cp * cp - 1.0)
    return q if q.ndim else float(q)


def fm_basis(c) -> np.ndarray:
    """The six basis functions evaluated at speeds ``c``; shape (6,) + c.shape."""
    c = np.asarray(c, dtype=float)
    s = np.sign(c)
    return np.stack([
        np.ones_like(c), s, c, c * s, c * c - 1.0, (c * c - 1.0) * s,
    ])


def _half_moment(m: int) -> float:
    """int_R exp(-C**2) |C| C**m dC  (k! for m = 2k, zero for odd m)."""
    return float(math.factorial(m // 2)) if m % 2 == 0 else 0.0


def _gauss_moment(m: int) -> float:
    """int_R exp(-C**2) C**m dC."""
    if m % 2:
        return 0.0
    return float(math.gamma((m + 1) / 2))


def _fm_inner(i: int, j: int, extra_sgn: int = 0, extra_poly=(1.0,)) -> float:
    """<B_i, B_j * extra> with weight exp(-C**2)|C|, from exact moments."""
    pi_, si = _FM_BASIS_POLY[i], _FM_BASIS_SGN[i]
    pj, sj = _FM_BASIS_POLY[j], _FM_BASIS_SGN[j]
    prod = np.polymul(np.polymul(pi_[::-1], pj[::-1]), extra_poly[::-1])[::-1]
    sgn = (si + sj + extra_sgn) % 2
    if sgn:
        return sum(c * _gauss_moment(m + 1) for m, c in enumerate(prod))
    return sum(c * _half_moment(m) for m, c in enumerate(prod))


def fm_projection_inner(i: int, j: int, extra_sgn: int = 0) -> float:
    """Exact projection integral <B_i, B_j> (or with an extra sgn factor).

    Exposed so verification code can re-derive every matrix element of the
    projected system against independent quadrature.
    """
    return _fm_inner(i, j, extra_sgn)


@lru_cache(maxsize=1)
def fm_project_system() -> np.ndarray:
    """The 6x6 generator M of the projected ODE system y' = M y.

    Derived by Galerkin projection of the free-molecular equation onto the
    six-function basis with weight exp(-C**2)|C|, using exact half-line
    Gaussian moments (k!/2) throughout: with G the Gram matrix, S the
    matrix of <B_i, sgn(C) B_j> and R the matrix of <B_i, K[B_j]>, the
    system is  S y' = (R - G) y.
    """
    n = 6
    gram = np.array([[_fm_inner(i, j) for j in range(n)] for i in range(n)])
    s_mat = np.array(
        [[_fm_inner(i, j, extra_sgn=1) for j in range(n)] for i in range(n)]
    )
    # K[B_j] = K0 + K1 C + K2 (C**2 - 1) with the three projection moments
    r_mat = np.zeros((n, n))
    for j in range(n):
        k0 = _fm_inner(0, j)
        k1 = _fm_inner(2, j)
        k2 = _fm_inner(4, j)
        for i in range(n):
            r_mat[i, j] = (
                k0 * _fm_inner(i, 0) + k1 * _fm_inner(i, 2) + k2 * _fm_inner(i, 4)
            )
    return np.linalg.solve(s_mat, r_mat - gram)


@dataclass(frozen=True)
class FreeMolecularSolution:
    """Coefficients of the six-mode general solution plus derived data.

    Mode roles (coefficient -> mode of the derived generator):

    - ``A0``  : decaying exponential  exp(-decay_rate * x)
    - ``A1``  : constant mode in the ``1`` component
    - ``A2``  : constant mode in the ``C`` component
    - ``A3``  : constant mode in the ``C**2 - 1`` component
    - ``At1`` : the linear-in-x Jordan mode (couples the 1- and
      (C**2-1)-components with their sgn partners)
    - ``At3`` : growing exponential  exp(+decay_rate * x), the sixth
      independent solution of the derived system

    ``decay_rate`` is sqrt(5*pi)/4, the derived value; the quoted
    literature rate sqrt(3*pi)/2 does not solve the kinetic equation (see
    DERIVATION_NOTES.md).
    """

    A0: float = 0.0
    A1: float = 0.0
    A2: float = 0.0
    A3: float = 0.0
    At1: float = 0.0
    At3: float = 0.0
    decay_rate: float = FM_DECAY_RATE
    system_matrix: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.system_matrix is None:
            object.__setattr__(self, "system_matrix", fm_project_system())


@lru_cache(maxsize=1)
def fm_modes():
    """Mode table of the derived generator.

    Returns
    -------
    dict with keys:
        "decay"  : (sigma, u_minus)  eigenpair of -sigma
        "grow"   : (sigma, u_plus)   eigenpair of +sigma
        "const"  : (3, 6) array of kernel modes (unit a1, a2, a3 vectors)
        "linear" : (v, d) with y(x) = v + x*d, M v = d, M d = 0
    """
    m = fm_project_system()
    eigvals, eigvecs = np.linalg.eig(m)
    sigma = float(np.max(eigvals.real))
    i_grow = int(np.argmin(np.abs(eigvals - sigma)))
    i_decay = int(np.argmin(np.abs(eigvals + sigma)))
    u_plus = np.real(eigvecs[:, i_grow])
    u_minus = np.real(eigvecs[:, i_decay])
    # normalize on the a2~ slot for comparability
    u_plus = u_plus / u_plus[3]
    u_minus = u_minus / u_minus[3]
    const = np.zeros((3, 6))
    const[0, 0] = 1.0
    const[1, 2] = 1.0
    const[2, 4] = 1.0
    v = np.array([0.0, 1.0, 0.0, 0.0, 0.0, -2.0])
    d = m @ v
    if np.max(np.abs(m @ d)) > 1e-12:
        raise RuntimeError("Jordan structure of the projected system changed")
    return {
        "decay": (sigma, u_minus),
        "grow": (sigma, u_plus),
        "const": const,
        "linear": (v, d),
    }


def fm_coefficient_vector(sol: FreeMolecularSolution, x) -> np.ndarray:
    """Coefficient vector y(x) of the solution; shape (6,) + x.shape."""
    x = np.asarray(x, dtype=float)
    modes = fm_modes()
    sigma, u_minus = modes["decay"]
    _, u_plus = modes["grow"]
    const = modes["const"]
    v, d = modes["linear"]
    y = (
        sol.A0 * np.multiply.outer(u_minus, np.exp(-sigma * x))
        + sol.At3 * np.multiply.outer(u_plus, np.exp(sigma * x))
        + np.multiply.outer(
            sol.A1 * const[0] + sol.A2 * const[1] + sol.A3 * const[2],
            np.ones_like(x),
        )
        + sol.At1 * (np.multiply.outer(v, np.ones_like(x)) + np.multiply.outer(d, x))
    )
    return y


def fm_coefficient_vector_dx(sol: FreeMolecularSolution, x) -> np.ndarray:
    """Analytic x-derivative of the coefficient vector."""
    x = np.asarray(x, dtype=float)
    modes = fm_modes()
    sigma, u_minus = modes["decay"]
    _, u_plus = modes["grow"]
    _, d = modes["linear"]
    return (
        -sigma * sol.A0 * np.multiply.outer(u_minus, np.exp(-sigma * x))
        + sigma * sol.At3 * np.multiply.outer(u_plus, np.exp(sigma * x))
        + sol.At1 * np.multiply.outer(d, np.ones_like(x))
    )


def fm_general_solution(sol: FreeMolecularSolution, x, c):
    """h(x, C) assembled from the mode decomposition of the derived system."""
    x = np.asarray(x, dtype=float)
    c = np.asarray(c, dtype=float)
    y = fm_coefficient_vector(sol, x)
    b = fm_basis(c)
    val = np.tensordot(y, b, axes=(0, 0))
    return val if val.ndim else float(val)


@lru_cache(maxsize=1)
def _fm_quad():
    """Half-line panel rule for weight exp(-C**2) C on (0, inf).

    Integrands are only piecewise smooth across C = 0 (sgn factors), so
    the rule never straddles the origin; symmetrization handles C < 0.
    """
    from .quadrature import gauss_panels

    nodes, wts = gauss_panels(0.0, 8.6, n_panels=10, n_per=20)
    return nodes, wts * np.exp(-nodes * nodes) * nodes


def fm_collision(sol_values_fn, x):
    """Collision integral of the free-molecular kernel applied to h(x, .).

    Returns the triple (K0, K1, K2) so that the integral equals
    K0 + K1*C + (C**2 - 1)*K2.
    """
    nodes, wts = _fm_quad()

    def mom(g):
        return np.sum(wts * (g(nodes) + g(-nodes)))

    h = lambda c: sol_values_fn(x, c)
    k0 = mom(h)
    k1 = mom(lambda c: h(c) * c)
    k2 = mom(lambda c: h(c) * (c * c - 1.0))
    return k0, k1, k2


def fm_residual(sol: FreeMolecularSolution, x: float, c_grid=None) -> float:
    """Sup-norm residual of the solution in the free-molecular equation.

    |sgn(C) dh/dx + h - int exp(-C'**2)|C'| q1(C, C') h(x, C') dC'| over a
    speed grid, with the analytic x-derivative.
    """
    if c_grid is None:
        g = np.linspace(0.1, 3.5, 32)
        c_grid = np.concatenate([-g[::-1], g])
    c_grid = np.asarray(c_grid, dtype=float)
    x = float(x)

    h_val = fm_general_solution(sol, x, c_grid)
    dh = np.tensordot(fm_coefficient_vector_dx(sol, x), fm_basis(c_grid), axes=(0, 0))
    k0, k1, k2 = fm_collision(lambda xx, cc: fm_general_solution(sol, xx, cc), x)
    collision = k0 + k1 * c_grid + (c_grid * c_grid - 1.0) * k2
    res = np.sign(c_grid) * dh + h_val - collision
    return float(np.max(np.abs(res)))
