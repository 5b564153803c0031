"""Dispersion matrix, determinant, cofactors, boundary relations, zeros.

The 3x3 dispersion matrix couples the three weighted moments of a
continuum eigenfunction.  Its entries are assembled from the moment
integrals by the structural rule (column = which moment multiplies,
row = which invariant is projected):

    entry(row, 0) = delta + (r0 + beta**2 r2) t_row - beta r2 t_{row+2}
    entry(row, 1) = delta + r1 t_{row+1}
    entry(row, 2) = delta + r2 (t_{row+2} - beta t_row)

The rule, not any tabulated element list, is ground truth: published
element tables for this family contain internal misprints (an r2 where
the rule yields r0 in the top-left entry, a t3 where it yields t2 in the
middle one), and printed cofactor expansions are similarly unreliable.
All determinants here are computed directly from the assembled matrix.

Evaluation is pure; callers may fan out over many points in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError, IllConditionedContourError
from .moments import (
    MomentSet,
    Region,
    boundary_jump_array,
    moments_boundary,
    moments_pv,
    tn_offcut_array,
    tn_pv_array,
)
from .params import GasParams, rho_of_c, velocity_map
from .quadrature import QuadratureScheme


@dataclass(frozen=True)
class DispersionEval:
    """Matrix, determinant and cofactor determinants at one point.

    ``cofactors`` holds the replaced-column determinants (the solution
    numerators of the moment system); it is None off the cut, where the
    velocity map of the evaluation point is not defined.
    """

    point: complex
    region: Region
    matrix: np.ndarray
    det: complex
    cofactors: np.ndarray | None


@dataclass(frozen=True)
class SpectrumDescription:
    """Continuous interval (-alpha, alpha) plus one discrete point at infinity."""

    params: GasParams
    discrete_multiplicity: int = 4

    @property
    def continuous(self) -> tuple[float, float]:
        return (-self.params.alpha, self.params.alpha)


def _assemble(params: GasParams, t: np.ndarray) -> np.ndarray:
    """Apply the assembly rule to a stack of t-values (shape (5,) + tail)."""
    beta, r0, r1, r2 = params.beta, params.r0, params.r1, params.r2
    tail = t.shape[1:]
    m = np.zeros((3, 3) + tail, dtype=complex)
    for row in range(3):
        m[row, 0] = (r0 + beta**2 * r2) * t[row] - beta * r2 * t[row + 2]
        m[row, 1] = r1 * t[row + 1]
        m[row, 2] = r2 * (t[row + 2] - beta * t[row])
        m[row, row] += 1.0
    return m


def _det3(m: np.ndarray):
    """Determinant of a 3x3 (stack), written out to stay vectorized."""
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def lambda_matrix(params: GasParams, moments: MomentSet) -> np.ndarray:
    """The 3x3 dispersion matrix built from a moment set."""
    return _assemble(params, moments.t)


def _cofactors(params: GasParams, matrix: np.ndarray, point: float) -> np.ndarray:
    c = velocity_map(params, float(point))
    col = np.array([1.0, c, c * c], dtype=complex)
    out = np.empty(3, dtype=complex)
    for k in range(3):
        m = matrix.copy()
        m[:, k] = col
        out[k] = _det3(m)
    return out


def dispersion_eval(params: GasParams, moments: MomentSet) -> DispersionEval:
    """Assemble matrix, determinant and (on the cut) cofactors."""
    m = lambda_matrix(params, moments)
    det = _det3(m)
    cof = None
    pt = moments.point
    if pt.imag == 0.0 and abs(pt.real) < params.alpha:
        cof = _cofactors(params, m, pt.real)
    return DispersionEval(
        point=pt, region=moments.region, matrix=m, det=det, cofactors=cof
    )


def lambda_fn(params: GasParams, scheme: QuadratureScheme, z):
    """Dispersion function lambda(z) = det(matrix) for z off the cut.

    Accepts scalars or arrays.  The determinant is evaluated directly from
    the assembled 3x3 matrix.
    """
    z = np.asarray(z, dtype=complex)
    if z.ndim == 0:
        on_cut = z.imag == 0.0 and abs(z.real) <= params.alpha
    else:
        on_cut = np.any((z.imag == 0.0) & (np.abs(z.real) <= params.alpha))
    if on_cut:
        raise DomainError(
            "point on the cut: use lambda_pv or lambda_boundary for tagged values"
        )
    t = tn_offcut_array(params, z)
    det = _det3(_assemble(params, t))
    return complex(det) if det.ndim == 0 else det


def lambda_pv(params: GasParams, scheme: QuadratureScheme, x):
    """lambda at a cut point with all moments taken as principal values.

    Equals (lambda+ + lambda-)/2 exactly (the boundary perturbation of the
    matrix is rank one, so the even part of the determinant is the PV
    determinant).
    """
    t = tn_pv_array(params, np.asarray(x, dtype=float)).astype(complex)
    det = _det3(_assemble(params, t)).real
    return float(det) if det.ndim == 0 else det


def lambda_boundary(params: GasParams, scheme: QuadratureScheme, x, side: str):
    """Boundary values lambda(x +- i0) on the cut; vectorized over x."""
    if side in ("plus", "+", 1):
        sgn = 1.0
    elif side in ("minus", "-", -1):
        sgn = -1.0
    else:
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")
    x = np.asarray(x, dtype=float)
    t = tn_pv_array(params, x).astype(complex) + sgn * boundary_jump_array(params, x)
    det = _det3(_assemble(params, t))
    return complex(det) if det.ndim == 0 else det


def lambda_alpha(params: GasParams, moments: MomentSet, alpha_index: int, eta: float):
    """Replaced-column determinant: column ``alpha_index`` -> (1, C, C**2).

    ``eta`` must lie inside the cut so the velocity map is defined.
    """
    if alpha_index not in (0, 1, 2):
        raise DomainError(f"column index must be 0, 1 or 2, got {alpha_index}")
    m = lambda_matrix(params, moments)
    return complex(_cofactors(params, m, eta)[alpha_index])


def q_tilde(params: GasParams, moments: MomentSet, eta: float, mu: float):
    """Coupling polynomial Q~(eta, mu) built from the cofactor determinants.

    Q~ = r0 L0 + r1 C(mu) L1 + r2 (C(mu)**2 - beta)(L2 - beta L0), with
    L_a the replaced-column determinants at ``eta``.  Real for real
    moment data (PV region).
    """
    m = lambda_matrix(params, moments)
    cof = _cofactors(params, m, eta)
    c_mu = velocity_map(params, mu)
    val = (
        params.r0 * cof[0]
        + params.r1 * c_mu * cof[1]
        + params.r2 * (c_mu**2 - params.beta) * (cof[2] - params.beta * cof[0])
    )
    if moments.region is Region.ON_CUT_PV:
        return float(val.real)
    return complex(val)


@dataclass(frozen=True)
class SokhotskyJump:
    """Measured boundary jump of lambda against the rank-one prediction.

    ``claimed_jump`` is 2*pi*i*rho(x)*Q~(x, x) (PV cofactors); the measured
    jump carries an extra factor ``x`` relative to it -- ``ratio`` stores
    measured/claimed and is x (to rounding) wherever the claim is nonzero.
    ``average`` is (lambda+ + lambda-)/2 and matches ``pv`` identically.
    """

    x: float
    lambda_plus: complex
    lambda_minus: complex
    jump: complex
    claimed_jump: complex
    ratio: complex
    average: complex
    pv: float


def sokhotsky_jump(params: GasParams, scheme: QuadratureScheme, x: float) -> SokhotskyJump:
    """Boundary values of lambda on the cut and their jump diagnostics."""
    x = float(x)
    lp = complex(lambda_boundary(params, scheme, x, "plus"))
    lm = complex(lambda_boundary(params, scheme, x, "minus"))
    pv_moments = moments_pv(params, scheme, x)
    qt = q_tilde(params, pv_moments, x, x)
    c = velocity_map(params, x)
    rho = float(rho_of_c(params, np.asarray(c)))
    claimed = 2j * math.pi * rho * qt
    jump = lp - lm
    ratio = jump / claimed if claimed != 0 else complex("nan")
    return SokhotskyJump(
        x=x,
        lambda_plus=lp,
        lambda_minus=lm,
        jump=jump,
        claimed_jump=claimed,
        ratio=ratio,
        average=0.5 * (lp + lm),
        pv=float(lambda_pv(params, scheme, x)),
    )


# ---------------------------------------------------------------------------
# argument-principle zero counting
# ---------------------------------------------------------------------------

def _sample_polyline(vertices: np.ndarray, total: int) -> np.ndarray:
    """Sample a closed polyline densely; the closing vertex is appended."""
    v = np.asarray(vertices, dtype=complex)
    if abs(v[0] - v[-1]) > 1e-12:
        v = np.append(v, v[0])
    seg = np.abs(np.diff(v))
    perimeter = seg.sum()
    pts = []
    for z0, z1, ln in zip(v[:-1], v[1:], seg):
        k = max(2, int(np.ceil(total * ln / perimeter)))
        pts.append(z0 + (z1 - z0) * np.arange(k) / k)
    pts = np.concatenate(pts)
    return np.append(pts, pts[0])


def winding_number(values: np.ndarray) -> float:
    """Total unwrapped argument change of a closed sequence, in turns."""
    phase = np.unwrap(np.angle(values))
    return (phase[-1] - phase[0]) / (2.0 * math.pi)


def count_zeros(params: GasParams, scheme: QuadratureScheme, contour,
                min_samples: int = 4096, max_refinements: int = 5) -> int:
    """Number of zeros of lambda enclosed by a closed polyline contour.

    The contour must avoid the cut; lambda is sampled densely along it and
    the winding number of the image curve is tracked with continuous
    argument unwrapping, refining the sampling until the integer is stable
    and every step turns by less than half a radian.

    Raises
    ------
    IllConditionedContourError
        If the contour touches the cut, lambda drops below 1e-8 on it, or
        the winding fails to stabilize.
    """
    v = np.asarray(contour, dtype=complex)
    on_cut = (v.imag == 0.0) & (np.abs(v.real) <= params.alpha)
    if np.any(on_cut):
        raise IllConditionedContourError("contour touches the spectral cut")

    prev = None
    samples = min_samples
    for _ in range(max_refinements):
        pts = _sample_polyline(v, samples)
        vals = lambda_fn(params, scheme, pts)
        if np.min(np.abs(vals)) < 1e-8:
            raise IllConditionedContourError(
                "lambda smaller than 1e-8 on the contour"
            )
        w = winding_number(vals)
        steps = np.abs(np.diff(np.unwrap(np.angle(vals))))
        if abs(w - round(w)) < 0.05 and np.max(steps) < 0.5:
            if prev is not None and round(w) == prev:
                return int(round(w))
            prev = int(round(w))
        samples *= 2
    raise IllConditionedContourError("winding number did not stabilize")


def keyhole_contour(params: GasParams, half_width: float = 3.0,
                    half_height: float = 2.0, margin: float = 1e-2,
                    cap_points: int = 24) -> np.ndarray:
    """Boundary of the rectangle minus a margin-neighbourhood of the cut.

    A single closed polyline: the outer rectangle traversed
    counterclockwise, joined through a doubly-traversed corridor along the
    real axis (off the cut, where lambda is real and analytic) to the
    stadium around the cut traversed clockwise.  Zero enclosed zeros means
    the winding vanishes.  Requires a > 0 and half_width > alpha + margin.
    """
    alpha = params.alpha
    if not math.isfinite(alpha):
        raise DomainError("keyhole contour needs a finite cut (a > 0)")
    if half_width <= alpha + 2 * margin:
        raise DomainError("rectangle too narrow to clear the cut")
    d = margin
    w, h = half_width, half_height
    # stadium around the cut, counterclockwise, starting/ending at (-alpha-d, 0)
    th_l = np.linspace(math.pi, 1.5 * math.pi, cap_points)
    cap_left_lower = -alpha + d * np.exp(1j * th_l)
    th_r = np.linspace(1.5 * math.pi, 2.5 * math.pi, 2 * cap_points)
    cap_right = alpha + d * np.exp(1j * th_r)
    th_l2 = np.linspace(0.5 * math.pi, math.pi, cap_points)
    cap_left_upper = -alpha + d * np.exp(1j * th_l2)
    stadium_ccw = np.concatenate(
        [
            cap_left_lower,
            np.array([alpha - 1j * d]),
            cap_right,
            np.array([-alpha + 1j * d]),
            cap_left_upper,
        ]
    )
    outer_upper = np.array([w, w + 1j * h, -w + 1j * h, -w])
    outer_lower = np.array([-w, -w - 1j * h, w - 1j * h, w])
    corridor_in = np.array([-alpha - d])
    corridor_out = np.array([-w])
    # inner boundary runs clockwise: reverse the stadium
    return np.concatenate(
        [outer_upper, corridor_in, stadium_ccw[::-1], corridor_out, outer_lower]
    )


def semicircle_contour(radius: float = 6.0, base_im: float = 1e-2,
                       arc_points: int = 64) -> np.ndarray:
    """Closed upper-half-plane contour: base just above the axis plus an arc."""
    th = np.linspace(0.0, math.pi, arc_points)
    arc = radius * np.exp(1j * th) + 1j * base_im
    return np.concatenate([np.array([-radius + 1j * base_im]), arc])


def circle_contour(center: complex, radius: float, n: int = 64) -> np.ndarray:
    """Closed circular polyline."""
    th = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    return center + radius * np.exp(1j * th)


def laurent_order_at_infinity(params: GasParams, scheme: QuadratureScheme,
                              radii=None, n_angles: int = 8):
    """Order and leading coefficient of the zero of lambda at infinity.

    Fits ``lambda ~ c / z**k`` by log-log regression of the angular mean
    of |lambda| over the given radii (angles keep clear of the real axis).
    The coefficient is the angular mean of ``z**k lambda(z)`` at the
    largest radius; with the angles equally spaced over the upper
    half-circle the subleading Laurent terms average out to O(R**-2n).

    Default radii are {10, 20, 40}, scaled up when the cut half-width
    exceeds unity so the fit stays in the asymptotic regime.

    Returns
    -------
    (order, coeff) : (int, complex)

    Raises
    ------
    EvaluationError
        If the fitted order is not close to an integer.
    """
    if radii is None:
        scale = max(1.0, params.alpha) if math.isfinite(params.alpha) else 1.0
        radii = (10.0 * scale, 20.0 * scale, 40.0 * scale)
    radii = np.asarray(sorted(radii), dtype=float)
    th = math.pi * (np.arange(n_angles) + 0.5) / n_angles
    ring = np.exp(1j * th)
    log_r, log_mag = [], []
    for r in radii:
        vals = lambda_fn(params, scheme, r * ring)
        log_r.append(math.log(r))
        log_mag.append(np.mean(np.log(np.abs(vals))))
    slope, _ = np.polyfit(log_r, log_mag, 1)
    order = -slope
    k = int(round(order))
    if abs(order - k) > 0.2:
        raise EvaluationError(f"Laurent fit did not converge: slope {order:.3f}")
    z_big = radii[-1] * ring
    coeff = np.mean(z_big**k * lambda_fn(params, scheme, z_big))
    return k, complex(coeff)
