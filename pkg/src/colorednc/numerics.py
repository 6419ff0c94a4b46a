"""Floating-point checks: densities by Stieltjes inversion and Wishart sampling.

For a real discrete ``rho`` the Cauchy transform ``g = G(xi)`` of the
compound free Poisson law solves ``1/g + sum c_i z_i / (1 - g z_i) = xi``,
a polynomial equation of degree ``#atoms + 1`` once denominators are
cleared.  The physical root is tracked along the grid by continuation.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .laws import DiscreteMeasure

log = logging.getLogger(__name__)

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

DEFAULT_ETA = 1e-6
MAX_MATRIX_SIZE = 4000


@dataclass
class DensityCurve:
    grid: np.ndarray
    values: np.ndarray
    eta: float
    atom_at_zero: float = 0.0
    failures: list = field(default_factory=list)

    def integral(self) -> float:
        return float(_trapezoid(self.values, self.grid))

    def moment(self, r: int) -> float:
        """r-th moment of the continuous part plus the atom at zero."""
        cont = float(_trapezoid(self.values * self.grid ** r, self.grid))
        return cont + (self.atom_at_zero if r == 0 else 0.0)

    def to_csv(self) -> str:
        lines = ["x,density"]
        lines += [f"{x:.12g},{v:.12g}" for x, v in zip(self.grid, self.values)]
        return "\n".join(lines) + "\n"


def _active(rho: DiscreteMeasure):
    if not rho.is_real:
        raise ValueError("density needs a real measure")
    return [(float(z), float(w)) for z, w in rho.atoms if abs(float(z)) > 1e-12]


def _poly_parts(atoms) -> tuple[np.ndarray, np.ndarray]:
    """(A, B) with the cleared equation reading A(g) - xi * B(g) = 0."""
    prod_all = np.array([1.0])
    for z, _ in atoms:
        prod_all = P.polymul(prod_all, [1.0, -z])
    A = prod_all
    for i, (z, c) in enumerate(atoms):
        others = np.array([1.0])
        for j, (zj, _) in enumerate(atoms):
            if j != i:
                others = P.polymul(others, [1.0, -zj])
        A = P.polyadd(A, P.polymul([0, c * z], others))
    B = P.polymul([0, 1.0], prod_all)
    return A, B


def cauchy_polynomial(rho: DiscreteMeasure, xi: complex) -> np.ndarray:
    """Coefficients (low to high) of the polynomial in g whose roots solve K(g) = xi."""
    A, B = _poly_parts(_active(rho))
    return P.polysub(A.astype(complex), xi * B)


def _all_roots(A: np.ndarray, B: np.ndarray, xis: np.ndarray) -> np.ndarray:
    """Roots for every xi at once, via stacked companion matrices."""
    deg = len(B) - 1
    A = np.pad(A, (0, deg + 1 - len(A))).astype(complex)
    coeffs = A[None, :] - xis[:, None] * B[None, :]
    lead = coeffs[:, -1]
    comp = np.zeros((len(xis), deg, deg), dtype=complex)
    if deg > 1:
        comp[:, np.arange(1, deg), np.arange(deg - 1)] = 1.0
    comp[:, :, -1] = -coeffs[:, :-1] / lead[:, None]
    return np.linalg.eigvals(comp)


def _select(roots: np.ndarray, previous: complex) -> complex | None:
    """Root with Im g < 0 closest to the previous one, or None."""
    admissible = roots[roots.imag < 0]
    if len(admissible) == 0:
        return None
    return complex(admissible[np.argmin(np.abs(admissible - previous))])


def density_from_measure(rho: DiscreteMeasure, grid, eta: float = DEFAULT_ETA) -> DensityCurve:
    """Density of the compound free Poisson law on ``rho`` sampled on ``grid``.

    The point mass ``max(0, 1 - mass)`` at zero is split off: its share
    ``a / xi`` of the Cauchy transform is removed before taking
    ``-Im g / pi``, and ``a`` is reported in ``atom_at_zero``.
    """
    if not 1e-8 <= eta <= 1e-2:
        raise ValueError("eta must lie in [1e-8, 1e-2]")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing and nonempty")
    atoms = _active(rho)
    mass = sum(c for _, c in atoms)
    atom = max(0.0, 1.0 - mass)
    A, B = _poly_parts(atoms)
    spread = max([abs(z) for z, _ in atoms] + [1.0])
    # warm start far to the left where G(xi) ~ 1/xi, then march onto the grid
    far = grid[0] - 20.0 * spread * (1.0 + mass)
    path = np.linspace(far, grid[0], 400, endpoint=False) + 1j * eta
    g = 1.0 / path[0]
    for roots in _all_roots(A, B, path):
        g = _select(roots, g) or g
    xis = grid + 1j * eta
    values = np.empty_like(grid)
    failures = []
    for idx, roots in enumerate(_all_roots(A, B, xis)):
        root = _select(roots, g)
        if root is None:
            failures.append(float(grid[idx]))
            values[idx] = np.nan
            continue
        g = root
        values[idx] = max(-(g - atom / xis[idx]).imag / math.pi, 0.0)
    if failures:
        log.warning("no admissible root at %d grid points", len(failures))
    return DensityCurve(grid, values, eta, atom, failures)


def support_bounds(rho: DiscreteMeasure) -> tuple[float, float]:
    """An interval containing the support of the law."""
    atoms = _active(rho)
    # each free Poisson(c) summand lives in [0, (1 + sqrt c)^2]
    hi = sum(z * (1 + math.sqrt(c)) ** 2 for z, c in atoms if z > 0)
    lo = sum(z * (1 + math.sqrt(c)) ** 2 for z, c in atoms if z < 0)
    return lo, hi


def clustered_grid(breaks, points: int) -> np.ndarray:
    """Cosine-spaced nodes on each piece between consecutive breakpoints.

    Nodes bunch up quadratically at every breakpoint, which tames
    square-root edges and the inverse square-root edge at zero.
    """
    breaks = sorted(set(float(b) for b in breaks))
    pieces_n = len(breaks) - 1
    if pieces_n < 1:
        raise ValueError("need at least two distinct breakpoints")
    if points < pieces_n + 1:
        raise ValueError(f"need at least {pieces_n + 1} points for {pieces_n} pieces")
    steps, extra = divmod(points - 1, pieces_n)
    pieces = [np.array([breaks[0]])]
    for i, (a, b) in enumerate(zip(breaks, breaks[1:])):
        theta = np.linspace(0.0, math.pi, steps + (i < extra) + 1)
        pieces.append((a + (b - a) * (1 - np.cos(theta)) / 2)[1:])
    return np.concatenate(pieces)


def support_grid(rho: DiscreteMeasure, points: int = 20001, pad: float = 0.05) -> np.ndarray:
    """Clustered grid over the support, padded so smoothed tails are kept."""
    lo, hi = support_bounds(rho)
    if lo == hi:
        lo, hi = -1.0, 1.0
    margin = pad * (hi - lo)
    return clustered_grid([lo - margin, lo, 0.0, hi, hi + margin], points)


# random matrices -----------------------------------------------------------

@dataclass
class EmpiricalSpectrum:
    eigenvalues: np.ndarray
    N: int
    trials: int
    seed: int | None

    def __post_init__(self):
        if len(self.eigenvalues) != self.N * self.trials:
            raise ValueError("sample count must equal N * trials")

    def to_csv(self) -> str:
        lines = ["eigenvalue"] + [f"{x:.12g}" for x in self.eigenvalues]
        return "\n".join(lines) + "\n"


def _wishart(rng: np.random.Generator, N: int, c: float) -> np.ndarray:
    cols = math.ceil(c * N)
    X = rng.standard_normal((N, cols))
    return (X @ X.T) / N


def sample_spectrum(rho: DiscreteMeasure, N: int, trials: int, seed: int | None = 0) -> EmpiricalSpectrum:
    """Eigenvalues of ``sum_i z_i W_i`` with independent Wishart ``W_i`` of ratio ``c_i``.

    Each trial draws from its own stream spawned from ``seed``.
    """
    if not rho.is_real:
        raise ValueError("sampling needs a real measure")
    if N < 1 or N > MAX_MATRIX_SIZE:
        raise ValueError(f"N must lie in 1..{MAX_MATRIX_SIZE}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    atoms = [(float(z), float(w)) for z, w in rho.atoms]
    streams = np.random.SeedSequence(seed).spawn(trials)
    eigs = []
    for stream in streams:
        rng = np.random.default_rng(stream)
        A = np.zeros((N, N))
        for z, c in atoms:
            A += z * _wishart(rng, N, c)
        eigs.append(np.linalg.eigvalsh(A))
    values = np.concatenate(eigs) if eigs else np.empty(0)
    return EmpiricalSpectrum(values, N, trials, seed)


def empirical_moments(spectrum: EmpiricalSpectrum, R: int) -> list[float]:
    """Sample moments r = 1..R of the pooled eigenvalues."""
    if len(spectrum.eigenvalues) == 0:
        return [0.0] * R
    x = spectrum.eigenvalues
    return [float(np.mean(x ** r)) for r in range(1, R + 1)]
