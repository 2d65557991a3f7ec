"""Analytic and empirical random laws on a shared gridded substrate.

A RandomLaw is a small description object (Gaussian, Uniform, Laplace,
Cauchy, SaS, shift/scale/sum compositions, or an empirical sample set);
realize() turns it into a GriddedDensity.  Entropy and logarithmic
moments then run through the tail-corrected quadrature of the grid
container.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import stable
from .gridded import GriddedDensity, GridSpec, TailLaw

__all__ = [
    "RandomLaw",
    "Gaussian",
    "Uniform",
    "Laplace",
    "Cauchy",
    "SaS",
    "Shifted",
    "Scaled",
    "Sum",
    "Empirical",
    "auto_grid",
    "realize",
    "convolve",
    "entropy",
    "log_moment",
]

DEFAULT_N = stable.DEFAULT_N
DEFAULT_EXTENT_FACTOR = stable.DEFAULT_EXTENT_FACTOR


@dataclass(frozen=True)
class RandomLaw:
    def scale_hint(self) -> float:
        """Robust scale proxy used for grid sizing and root brackets."""
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def second_moment(self) -> float:
        """E[X^2]; inf for laws with tail exponent < 2."""
        raise NotImplementedError

    def tail_exponent(self) -> float | None:
        """Power-law tail exponent, or None for light-tailed laws."""
        return None

    def sample(self, n: int, seed) -> np.ndarray:
        raise NotImplementedError

    def _pdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _tail_law(self) -> TailLaw | None:
        return None

    def _realize_on(self, grid: GridSpec) -> GriddedDensity:
        x = grid.points()
        return GriddedDensity(
            float(x[0]), grid.h, np.clip(self._pdf(x), 0.0, None), self._tail_law()
        ).normalize()


@dataclass(frozen=True)
class Gaussian(RandomLaw):
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def scale_hint(self):
        return self.sigma

    def mean(self):
        return 0.0

    def second_moment(self):
        return self.sigma**2

    def sample(self, n, seed):
        return np.random.default_rng(seed).normal(0.0, self.sigma, size=n)

    def _pdf(self, x):
        s2 = self.sigma**2
        return np.exp(-(x**2) / (2 * s2)) / math.sqrt(2 * math.pi * s2)


@dataclass(frozen=True)
class Uniform(RandomLaw):
    """Uniform on [-a, a]."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("a must be positive")

    def scale_hint(self):
        return self.a

    def mean(self):
        return 0.0

    def second_moment(self):
        return self.a**2 / 3.0

    def sample(self, n, seed):
        return np.random.default_rng(seed).uniform(-self.a, self.a, size=n)

    def _pdf(self, x):
        return np.where(np.abs(x) <= self.a, 1.0 / (2 * self.a), 0.0)

    def _realize_on(self, grid):
        # cell-averaged box: exact CDF differences keep the edge cells
        # honest at any resolution
        x = grid.points()
        h = grid.h
        hi = np.clip(x + h / 2.0, -self.a, self.a)
        lo = np.clip(x - h / 2.0, -self.a, self.a)
        p = (hi - lo) / (2.0 * self.a * h)
        from .gridded import GriddedDensity

        return GriddedDensity(float(x[0]), h, p).normalize()


@dataclass(frozen=True)
class Laplace(RandomLaw):
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("b must be positive")

    def scale_hint(self):
        return self.b

    def mean(self):
        return 0.0

    def second_moment(self):
        return 2.0 * self.b**2

    def sample(self, n, seed):
        return np.random.default_rng(seed).laplace(0.0, self.b, size=n)

    def _pdf(self, x):
        return np.exp(-np.abs(x) / self.b) / (2 * self.b)


@dataclass(frozen=True)
class Cauchy(RandomLaw):
    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")

    def scale_hint(self):
        return self.gamma

    def mean(self):
        return 0.0

    def second_moment(self):
        return math.inf

    def tail_exponent(self):
        return 1.0

    def sample(self, n, seed):
        return self.gamma * np.random.default_rng(seed).standard_cauchy(size=n)

    def _pdf(self, x):
        return self.gamma / (math.pi * (self.gamma**2 + x**2))

    def _tail_law(self):
        return TailLaw(exponent=1.0, coefficient=self.gamma / math.pi)


@dataclass(frozen=True)
class SaS(RandomLaw):
    alpha: float
    gamma: float

    def __post_init__(self):
        if not 0 < self.alpha <= 2:
            raise ValueError("alpha must be in (0, 2]")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")

    def scale_hint(self):
        return self.gamma

    def mean(self):
        return 0.0

    def second_moment(self):
        return 2.0 * self.gamma**2 if self.alpha == 2 else math.inf

    def tail_exponent(self):
        return None if self.alpha == 2 else self.alpha

    def sample(self, n, seed):
        return stable.sample_sas(self.alpha, self.gamma, n, seed)

    def _realize_on(self, grid):
        return stable.pdf_grid_sas(self.alpha, self.gamma, grid)


@dataclass(frozen=True)
class Shifted(RandomLaw):
    law: RandomLaw
    delta: float

    def scale_hint(self):
        return self.law.scale_hint()

    def mean(self):
        return self.law.mean() + self.delta

    def second_moment(self):
        m2 = self.law.second_moment()
        m = self.law.mean()
        return m2 + 2 * m * self.delta + self.delta**2

    def tail_exponent(self):
        return self.law.tail_exponent()

    def sample(self, n, seed):
        return self.law.sample(n, seed) + self.delta

    def _realize_on(self, grid):
        base = realize(self.law, grid)
        x = grid.points()
        p = np.exp(base.logpdf(x - self.delta))
        return GriddedDensity(
            float(x[0]), grid.h, np.clip(p, 0.0, None), base.tail
        ).normalize()


@dataclass(frozen=True)
class Scaled(RandomLaw):
    law: RandomLaw
    c: float

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("scale factor must be nonzero")

    def scale_hint(self):
        return abs(self.c) * self.law.scale_hint()

    def mean(self):
        return self.c * self.law.mean()

    def second_moment(self):
        return self.c**2 * self.law.second_moment()

    def tail_exponent(self):
        return self.law.tail_exponent()

    def sample(self, n, seed):
        return self.c * self.law.sample(n, seed)

    def _realize_on(self, grid):
        # realize the inner law on its own natural grid, then sample
        # p(x/c)/c; logpdf covers queries beyond that grid via its tail
        c = abs(self.c)
        base = realize(self.law)
        x = grid.points()
        p = np.exp(base.logpdf(x / c)) / c
        if base.tail is None:
            p[np.abs(x / c) > base.half_extent] = 0.0
        tail = None
        if base.tail is not None:
            tail = TailLaw(
                base.tail.exponent,
                base.tail.coefficient * c**base.tail.exponent,
                tuple((ek, ck * c**ek) for ek, ck in base.tail.extra),
            )
        return GriddedDensity(
            float(x[0]), grid.h, np.clip(p, 0.0, None), tail
        ).normalize()


@dataclass(frozen=True)
class Sum(RandomLaw):
    """Sum of two independent laws."""

    law1: RandomLaw
    law2: RandomLaw

    def scale_hint(self):
        return max(self.law1.scale_hint(), self.law2.scale_hint())

    def mean(self):
        return self.law1.mean() + self.law2.mean()

    def second_moment(self):
        return (
            self.law1.second_moment()
            + self.law2.second_moment()
            + 2 * self.law1.mean() * self.law2.mean()
        )

    def tail_exponent(self):
        e1, e2 = self.law1.tail_exponent(), self.law2.tail_exponent()
        if e1 is None:
            return e2
        if e2 is None:
            return e1
        return min(e1, e2)

    def sample(self, n, seed):
        ss = np.random.SeedSequence(seed).spawn(2)
        return self.law1.sample(n, ss[0]) + self.law2.sample(n, ss[1])

    def _realize_on(self, grid):
        f = realize(self.law1, grid)
        g = realize(self.law2, grid)
        return convolve(f, g)


@dataclass(frozen=True)
class Empirical(RandomLaw):
    samples: tuple

    def __post_init__(self):
        if len(self.samples) == 0:
            raise ValueError("empirical law needs at least one sample")
        object.__setattr__(self, "samples", tuple(float(s) for s in self.samples))

    def as_array(self):
        return np.asarray(self.samples, dtype=float)

    def scale_hint(self):
        s = self.as_array()
        iqr = float(np.subtract(*np.percentile(s, [75, 25])))
        if iqr > 0:
            return iqr / 2.0
        return max(float(np.std(s)), 1e-12)

    def mean(self):
        return float(np.mean(self.as_array()))

    def second_moment(self):
        return float(np.mean(self.as_array() ** 2))

    def sample(self, n, seed):
        return np.random.default_rng(seed).choice(self.as_array(), size=n)

    def bandwidth(self) -> float:
        """Silverman-style rule on the interquartile range; variance is
        useless as a spread measure when the samples are heavy-tailed."""
        s = self.as_array()
        iqr = float(np.subtract(*np.percentile(s, [75, 25])))
        spread = iqr / 1.349 if iqr > 0 else max(float(np.std(s)), 1e-12)
        return 0.9 * spread * len(s) ** (-0.2)

    def _realize_on(self, grid):
        s = self.as_array()
        bw = self.bandwidth()
        x = grid.points()
        lo, hi = x[0], x[-1]
        kept = s[(s >= lo) & (s <= hi)]
        if len(kept) == 0:
            raise ValueError("no samples fall inside the grid")
        # bin, then smooth with a Gaussian kernel via FFT
        edges = np.concatenate([x - grid.h / 2.0, [x[-1] + grid.h / 2.0]])
        counts, _ = np.histogram(kept, bins=edges)
        w = 2.0 * math.pi * np.fft.rfftfreq(grid.n, d=grid.h)
        kernel_ft = np.exp(-0.5 * (bw * w) ** 2)
        smoothed = np.fft.irfft(np.fft.rfft(counts) * kernel_ft, n=grid.n)
        p = np.clip(smoothed, 0.0, None) / (len(kept) * grid.h)
        return GriddedDensity(float(x[0]), grid.h, p).normalize()


def auto_grid(
    law: RandomLaw, n: int = DEFAULT_N, extent_factor: float = DEFAULT_EXTENT_FACTOR
) -> GridSpec:
    """Default grid for a law: extent proportional to its scale."""
    s = law.scale_hint()
    if isinstance(law, Empirical):
        spread = float(np.max(np.abs(law.as_array())))
        return GridSpec(n=n, half_extent=max(20.0 * s, min(spread * 1.1, 1e4 * s)))
    return GridSpec(n=n, half_extent=extent_factor * max(s, 1e-12))


def realize(law: RandomLaw, grid: GridSpec | None = None) -> GriddedDensity:
    if grid is None:
        grid = auto_grid(law)
    return law._realize_on(grid)


def _combine_tails(t1: TailLaw | None, t2: TailLaw | None) -> TailLaw | None:
    # power tails dominate light tails; among two power tails the
    # heavier (smaller exponent) wins, equal exponents add coefficients
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    if t1.exponent < t2.exponent:
        return t1
    if t2.exponent < t1.exponent:
        return t2
    return TailLaw(t1.exponent, t1.coefficient + t2.coefficient)


def convolve(f: GriddedDensity, g: GriddedDensity) -> GriddedDensity:
    """Linear convolution of two symmetric-grid densities via FFT with
    zero padding.

    The zero-padded product grid is exact (no wrap-around), but beyond
    the input extents the result is dominated by what the truncated
    inputs are missing, so the output is cropped back to the larger of
    the two input extents; the combined tail law stands in outside."""
    if not math.isclose(f.h, g.h, rel_tol=1e-12):
        target = GridSpec(
            n=max(f.n, g.n), half_extent=max(f.half_extent, g.half_extent)
        )
        f = f.resample(target)
        g = g.resample(target)
    h = f.h
    L_full = f.half_extent + g.half_extent
    n_out = 1 << math.ceil(math.log2(2.0 * L_full / h + 2))

    def embed(d: GriddedDensity) -> np.ndarray:
        buf = np.zeros(n_out)
        i0 = n_out // 2 - d.n // 2
        buf[i0 : i0 + d.n] = d.values
        return buf

    pf = np.fft.rfft(np.fft.ifftshift(embed(f)))
    pg = np.fft.rfft(np.fft.ifftshift(embed(g)))
    conv = np.fft.fftshift(np.fft.irfft(pf * pg, n=n_out)) * h
    n_keep = max(f.n, g.n)
    i0 = n_out // 2 - n_keep // 2
    vals = conv[i0 : i0 + n_keep]
    x0 = -(n_keep // 2) * h
    out = GriddedDensity(
        x0, h, np.clip(vals, 0.0, None), _combine_tails(f.tail, g.tail)
    )
    return out.normalize()


def entropy(f: GriddedDensity) -> float:
    """Differential entropy in nats (tail-corrected trapezoid)."""
    return f.entropy()


def log_moment(law: RandomLaw) -> float:
    """E[ln(1 + |X|)]; finite for every law implemented here."""
    if isinstance(law, Empirical):
        return float(np.mean(np.log1p(np.abs(law.as_array()))))
    f = realize(law)

    def tail_int(c_eff, a, r):
        # 2 * int_r^inf c x^(-1-a) ln(1+x) dx, with ln(1+x) ~ ln x
        ra = r ** (-a)
        return 2.0 * c_eff * (ra * math.log1p(r) / a + ra / a**2)

    return f.expect(lambda x: np.log1p(np.abs(x)), tail_int)
