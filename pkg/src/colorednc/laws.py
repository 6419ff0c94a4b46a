"""Discrete measures, compound (free) Poisson cumulants, and the law identities.

A compound free Poisson law built on ``rho = sum c_i delta_{z_i}`` has
R-transform ``sum c_i z_i / (1 - y z_i)``, so its r-th free cumulant is
``sum c_i z_i^r``.  The classical compound Poisson law has the same
numbers as classical cumulants.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import moments as me
from .moments import CumulantSequence
from .series import FormalSeries

INF = math.inf
MERGE_TOL = 1e-12
VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finitely many weighted atoms; positions may be complex before projection."""

    atoms: tuple

    def __post_init__(self):
        merged: list[list] = []
        for z, w in self.atoms:
            if not w > 0:
                raise ValueError(f"atom weights must be positive, got {w!r}")
            for entry in merged:
                if abs(entry[0] - z) <= MERGE_TOL:
                    total = entry[1] + w
                    # keep an exact position when both agree exactly
                    if entry[0] != z:
                        entry[0] = (entry[0] * entry[1] + z * w) / total
                    entry[1] = total
                    break
            else:
                merged.append([z, w])
        object.__setattr__(self, "atoms", tuple((z, w) for z, w in merged))

    @classmethod
    def dirac(cls, t, weight=1) -> DiscreteMeasure:
        return cls(((t, weight),))

    @property
    def mass(self):
        return sum(w for _, w in self.atoms)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(z, complex) or z.imag == 0 for z, _ in self.atoms)

    def positions(self):
        return [z for z, _ in self.atoms]

    def weights(self):
        return [w for _, w in self.atoms]

    def moment(self, r: int):
        return sum(w * z ** r for z, w in self.atoms)

    def to_json(self) -> dict:
        out = []
        for z, w in self.atoms:
            zc = complex(z)
            out.append({"re": zc.real, "im": zc.imag, "w": float(w)})
        return {"atoms": out}

    @classmethod
    def from_json(cls, data: dict) -> DiscreteMeasure:
        atoms = []
        for atom in data["atoms"]:
            re, im, w = float(atom["re"]), float(atom.get("im", 0.0)), float(atom["w"])
            atoms.append((complex(re, im) if im else re, w))
        return cls(tuple(atoms))


EMPTY = DiscreteMeasure(())


def uniform_roots(s: int) -> DiscreteMeasure:
    """Uniform probability measure on the s-th roots of unity."""
    if s < 1:
        raise ValueError("s must be positive")
    atoms = []
    for k in range(1, s + 1):
        theta = 2 * math.pi * k / s
        re, im = (0.0 if abs(v) < MERGE_TOL else v for v in (math.cos(theta), math.sin(theta)))
        atoms.append((complex(re, im), 1 / s))
    return DiscreteMeasure(tuple(atoms))


def project_real(m: DiscreteMeasure) -> DiscreteMeasure:
    """Push atoms forward under z -> Re(z), merging coincident images."""
    return DiscreteMeasure(tuple((z.real if isinstance(z, complex) else z, w) for z, w in m.atoms))


def scale_measure(m: DiscreteMeasure, t) -> DiscreteMeasure:
    """Multiply every weight by ``t`` (positions unchanged)."""
    if not t > 0:
        raise ValueError("scale must be positive")
    return DiscreteMeasure(tuple((z, w * t) for z, w in m.atoms))


def character_measure(s: int) -> DiscreteMeasure:
    """Real part of the uniform root measure, with half its mass."""
    return scale_measure(project_real(uniform_roots(s)), Fraction(1, 2))


def _require_real(rho: DiscreteMeasure):
    if not rho.is_real:
        raise ValueError("compound free Poisson cumulants need a real measure")


def compound_free_poisson_cumulants(rho: DiscreteMeasure, R: int) -> CumulantSequence:
    _require_real(rho)
    values = tuple(sum((w * z ** r for z, w in rho.atoms), 0) for r in range(1, R + 1))
    return CumulantSequence(values, "free", "compound free Poisson")


def compound_classical_poisson_cumulants(rho: DiscreteMeasure, R: int) -> CumulantSequence:
    _require_real(rho)
    values = tuple(sum((w * z ** r for z, w in rho.atoms), 0) for r in range(1, R + 1))
    return CumulantSequence(values, "classical", "compound Poisson")


def dilate_cumulants(kappas: CumulantSequence, a) -> CumulantSequence:
    """Cumulants of ``a X`` from those of ``X``."""
    values = tuple(a ** r * k for r, k in enumerate(kappas.values, start=1))
    return CumulantSequence(values, kappas.kind, kappas.origin)


def free_convolve(k1: CumulantSequence, k2: CumulantSequence) -> CumulantSequence:
    if k1.kind != "free" or k2.kind != "free":
        raise ValueError("free convolution adds free cumulants")
    n = min(len(k1), len(k2))
    return CumulantSequence(tuple(a + b for a, b in zip(k1.values[:n], k2.values[:n])), "free")


def free_poisson_cumulants(c, R: int) -> CumulantSequence:
    return CumulantSequence((c,) * R, "free", f"free Poisson({c})")


def cauchy_series(moments: Sequence, N: int) -> FormalSeries:
    """Coefficients of xi^-1 .. xi^-(N+1) in the Cauchy transform: m_0 .. m_N."""
    return FormalSeries.of(moments[: N + 1], N)


def r_transform_from_moments(moments: Sequence, N: int) -> FormalSeries:
    """R(y) = kappa_1 + kappa_2 y + ... through functional inversion of G.

    With psi(w) = w M(w) we have G(xi) = psi(1/xi), so K(y) = 1/psi^{-1}(y)
    and R(y) = K(y) - 1/y.
    """
    if len(moments) < N + 1:
        raise ValueError(f"need moments m_0..m_{N}")
    psi = FormalSeries.of((0,) + tuple(moments[: N + 1]), N + 1)
    inv = psi.reverse()
    u = FormalSeries.of(inv.coefficients[1:], N)  # inv / y
    return FormalSeries.of((u.reciprocal() - 1).coefficients[1:], N - 1)


# identity checks ----------------------------------------------------------

@dataclass
class VerificationReport:
    claim: str
    s: object
    R: int
    max_abs_err: float
    passed: bool
    detail: dict | None = None

    def to_json(self) -> dict:
        data = {"claim": self.claim, "s": "inf" if self.s == INF else self.s, "R": self.R,
                "max_abs_err": self.max_abs_err, "pass": self.passed}
        if self.detail:
            data["detail"] = self.detail
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _max_err(a, b) -> float:
    return max((abs(float(x) - float(y)) for x, y in zip(a, b)), default=0.0)


def verify_half_character(s: int, R: int, perturb: bool = False, tol: float = VERIFY_TOL) -> VerificationReport:
    """Half the character against the compound free Poisson law of the halved root measure."""
    if s == INF:
        return verify_circle_law(R, perturb=perturb, tol=tol)
    char = me.character_cumulants(s, R)
    if perturb:
        char = CumulantSequence((char.values[0] + 1,) + char.values[1:], "free", char.origin)
    lhs = dilate_cumulants(char, Fraction(1, 2))
    rhs = compound_free_poisson_cumulants(character_measure(s), R)
    err_k = _max_err(lhs.values, rhs.values)
    lm = me.moments_from_free_cumulants(lhs, R)
    rm = me.moments_from_free_cumulants(rhs, R)
    err_m = _max_err(lm, rm)
    err = max(err_k, err_m)
    return VerificationReport("half_character", s, R, err, err < tol,
                              {"cumulant_err": err_k, "moment_err": err_m})


def verify_poisson_sum(s: int, R: int, perturb: bool = False, tol: float = VERIFY_TOL) -> VerificationReport:
    """Character cumulants as a free sum of s scaled free Poisson(1/(2s)) variables."""
    total = CumulantSequence((0,) * R, "free")
    for k in range(1, s + 1):
        scale = 2 * math.cos(2 * math.pi * k / s)
        total = free_convolve(total, dilate_cumulants(free_poisson_cumulants(1 / (2 * s), R), scale))
    char = me.character_cumulants(s, R).values
    if perturb:
        char = (char[0] + 1,) + char[1:]
    err = _max_err(total.values, char)
    return VerificationReport("poisson_sum", s, R, err, err < tol)


def circle_measure_cumulant(r: int, S: int | None = None) -> float:
    """r-th moment of the halved real-projected circle measure, via an S-point root average.

    For S > r the average over S-th roots is exact for cos^r.
    """
    S = r + 1 if S is None else S
    rho = character_measure(S)
    return float(rho.moment(r))


def verify_circle_law(R: int, perturb: bool = False, tol: float = VERIFY_TOL) -> VerificationReport:
    """s = infinity: halved character cumulants against the circle measure, and the closed form."""
    char = me.character_cumulants(INF, R)
    if perturb:
        char = CumulantSequence((char.values[0] + 1,) + char.values[1:], "free", char.origin)
    lhs = dilate_cumulants(char, Fraction(1, 2))
    via_roots = [circle_measure_cumulant(r, S=max(2 * R + 1, 64)) for r in range(1, R + 1)]
    closed = [Fraction(comb(r, r // 2), 2 ** (r + 1)) if r % 2 == 0 else 0 for r in range(1, R + 1)]
    err_roots = _max_err(lhs.values, via_roots)
    err_closed = _max_err(lhs.values, closed)
    err = max(err_roots, err_closed)
    return VerificationReport("circle_law", INF, R, err, err < tol,
                              {"roots_err": err_roots, "closed_form_err": err_closed})
