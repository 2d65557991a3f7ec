"""The alpha-power solver.

The power of order alpha of a law X is the unique P > 0 with

    g(P) = -E[ln p_ref(X / P)] = h(ref)

where ref is the unit-power reference stable law.  g is continuous and
strictly decreasing with the right limit behavior, so a bracketed root
finder is sound.  Closed-form fast paths cover alpha = 2 (root mean
square) and stable inputs at matching alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import density as dens
from . import stable
from .density import Cauchy, Empirical, RandomLaw, SaS, Scaled, Sum
from .gridded import GriddedDensity

__all__ = ["AlphaPowerResult", "g_of_P", "alpha_power"]

ROOT_RTOL = 1e-9
BRACKET_SPAN = 50.0


@dataclass
class AlphaPowerResult:
    value: float
    alpha: float
    method: str  # closed_form_alpha2 | closed_form_stable | numeric_root
    residual: float = 0.0
    bracket: tuple | None = None

    @property
    def finite(self) -> bool:
        return math.isfinite(self.value)


def _g_from_density(f: GriddedDensity, alpha: float, P: float) -> float:
    """g(P) for a realized density, with an analytic correction for the
    mass beyond the grid (the reference log-density is asymptotically
    -ln c1 + (1+alpha) ln|x| there)."""
    gam_ref = stable.reference_gamma(alpha)
    r = f.accurate_radius
    x = f.x
    sel = np.abs(x) <= r
    core = float(
        np.trapezoid(
            f.values[sel] * (-stable.logpdf_sas(alpha, gam_ref, x[sel] / P)),
            dx=f.h,
        )
    )
    if f.tail is None or alpha == 2:
        return core
    m_side = (1.0 - f.mass_within(r)) / 2.0
    if m_side <= 0:
        return core
    a = f.tail.exponent
    c_eff = m_side * a * r**a
    c1_ref = stable._series_coeffs(alpha, gam_ref, 1)[0]
    ra = r ** (-a)
    t1 = (-math.log(c1_ref) - (1.0 + alpha) * math.log(P)) * ra / a
    t2 = (1.0 + alpha) * (ra * math.log(r) / a + ra / a**2)
    return core + 2.0 * c_eff * (t1 + t2)


def _g_from_samples(s: np.ndarray, alpha: float, P: float) -> float:
    gam_ref = stable.reference_gamma(alpha)
    return float(np.mean(-stable.logpdf_sas(alpha, gam_ref, s / P)))


def g_of_P(law: RandomLaw, alpha: float, P: float) -> float:
    """-E[ln p_ref(X/P)] for the reference law of the given alpha."""
    if not P > 0:
        raise ValueError("P must be positive")
    if isinstance(law, Empirical):
        return _g_from_samples(law.as_array(), alpha, P)
    return _g_from_density(dens.realize(law), alpha, P)


def _matching_stable_scale(law: RandomLaw, alpha: float) -> float | None:
    """Effective stable scale if the law is S(alpha, .) in disguise."""
    if isinstance(law, SaS) and law.alpha == alpha:
        return law.gamma
    if isinstance(law, Cauchy) and alpha == 1:
        return law.gamma
    if isinstance(law, dens.Gaussian) and alpha == 2:
        return law.sigma / math.sqrt(2.0)
    if isinstance(law, Scaled):
        inner = _matching_stable_scale(law.law, alpha)
        return None if inner is None else abs(law.c) * inner
    if isinstance(law, Sum):
        g1 = _matching_stable_scale(law.law1, alpha)
        g2 = _matching_stable_scale(law.law2, alpha)
        if g1 is not None and g2 is not None:
            return (g1**alpha + g2**alpha) ** (1.0 / alpha)
    return None


def _hill_exponent(s: np.ndarray) -> float:
    """Hill estimate of the tail exponent from the largest |samples|."""
    a = np.sort(np.abs(s))
    k = max(10, int(math.sqrt(len(a))))
    top = a[-k:]
    if top[0] <= 0:
        return math.inf
    xi = float(np.mean(np.log(top / top[0])))
    return math.inf if xi == 0 else 1.0 / xi


def _is_point_mass_at_zero(law: RandomLaw) -> bool:
    return isinstance(law, Empirical) and not np.any(law.as_array())


def alpha_power(law: RandomLaw, alpha: float) -> AlphaPowerResult:
    """Solve g(P) = h(ref) for the alpha-power of a law.

    Returns an infinite-valued result when alpha = 2 and the law has a
    power tail with exponent below 2 (the second moment diverges).
    """
    if not 0 < alpha <= 2:
        raise ValueError(f"alpha must be in (0, 2], got {alpha}")
    if _is_point_mass_at_zero(law):
        return AlphaPowerResult(0.0, alpha, "closed_form_alpha2")

    if alpha == 2:
        e = law.tail_exponent()
        if e is not None and e < 2:
            return AlphaPowerResult(math.inf, alpha, "closed_form_alpha2", math.nan)
        if isinstance(law, Empirical) and _hill_exponent(law.as_array()) < 2:
            return AlphaPowerResult(math.inf, alpha, "closed_form_alpha2", math.nan)
        m2 = law.second_moment()
        if not math.isfinite(m2):
            return AlphaPowerResult(math.inf, alpha, "closed_form_alpha2", math.nan)
        return AlphaPowerResult(math.sqrt(m2), alpha, "closed_form_alpha2")

    g_match = _matching_stable_scale(law, alpha)
    if g_match is not None:
        return AlphaPowerResult(
            alpha ** (1.0 / alpha) * g_match, alpha, "closed_form_stable"
        )

    h_ref = stable.reference_entropy(alpha)
    if isinstance(law, Empirical):
        s = law.as_array()
        g = lambda P: _g_from_samples(s, alpha, P)
    else:
        f = dens.realize(law)
        g = lambda P: _g_from_density(f, alpha, P)

    scale = law.scale_hint()
    lo, hi = scale / BRACKET_SPAN, scale * BRACKET_SPAN
    f_lo, f_hi = g(lo) - h_ref, g(hi) - h_ref
    # g decreases in P, so widen downward while g(lo) < h and upward
    # while g(hi) > h
    for _ in range(60):
        if f_lo > 0:
            break
        hi, f_hi = lo, f_lo
        lo /= 8.0
        f_lo = g(lo) - h_ref
    for _ in range(60):
        if f_hi < 0:
            break
        lo, f_lo = hi, f_hi
        hi *= 8.0
        f_hi = g(hi) - h_ref
    if not (f_lo > 0 > f_hi):
        raise ArithmeticError(
            f"could not bracket the alpha-power root (alpha={alpha}, law={law})"
        )
    P = brentq(lambda p: g(p) - h_ref, lo, hi, rtol=ROOT_RTOL)
    return AlphaPowerResult(
        float(P), alpha, "numeric_root", abs(g(P) - h_ref), (lo, hi)
    )
