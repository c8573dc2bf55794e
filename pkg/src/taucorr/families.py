"""Bivariate distribution families with exact conditional-inversion samplers.

Each model exposes the joint CDF, the joint density, both marginal CDFs,
closed-form population dependence coefficients, and an exact sampler that
inverts the x-marginal and then the conditional CDF of Y given X = x.
The conditional CDFs and their inverses were derived symbolically and are
exposed so the round trip ``conditional_cdf(conditional_inverse(u, x), x)
== u`` can be checked directly.

CDFs use the left-continuous convention P(X < x, Y < y); for these
absolutely continuous families it coincides with the usual convention.
Off-support queries clamp to the support boundary instead of raising, so
Monte Carlo code can evaluate edge points without branching.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

__all__ = [
    "BivariateModel",
    "ExponentialParetoModel",
    "BivariateParetoModel",
    "FgmCopulaModel",
    "make_model",
    "FAMILIES",
]

Support = tuple[tuple[float, float], tuple[float, float]]


def _maybe_scalar(out: np.ndarray) -> float | np.ndarray:
    return float(out) if out.ndim == 0 else out


def _probability(out: np.ndarray) -> float | np.ndarray:
    # cancellation in CDF formulas can leave -1e-17 residue at the boundary
    return _maybe_scalar(np.clip(out, 0.0, 1.0))


class BivariateModel(ABC):
    """Joint distribution with marginals, density, and an exact sampler.

    Immutable after construction; a single instance can be shared across
    threads as long as each caller owns its own random generator.
    """

    support: ClassVar[Support]

    @abstractmethod
    def cdf(self, x, y):
        """Joint CDF, clamped to the support box off-support."""

    @abstractmethod
    def pdf(self, x, y):
        """Joint density; 0 strictly outside the support, continuous
        extension of the formula on the boundary."""

    @abstractmethod
    def marginal_cdf_x(self, x):
        """CDF of the first coordinate."""

    @abstractmethod
    def marginal_cdf_y(self, y):
        """CDF of the second coordinate."""

    @abstractmethod
    def conditional_cdf(self, y, x):
        """P(Y < y | X = x) for x in the open support."""

    @abstractmethod
    def conditional_inverse(self, u, x):
        """Quantile y of the conditional law of Y given X = x at level u."""

    @abstractmethod
    def _draw_x(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """n draws from the x-marginal by inversion."""

    @abstractmethod
    def tau_closed_form(self) -> float | None:
        """Population rank-dependence coefficient, if known in closed form."""

    @abstractmethod
    def rho_closed_form(self) -> float | None:
        """Population product-moment correlation; None when the required
        moments do not exist."""

    def draw(self, rng: np.random.Generator, size: int | None = None):
        """Exact draws: invert the x-marginal, then Y given X = x.

        Returns a single (x, y) pair when size is None, else a pair of
        arrays of length ``size``.
        """
        n = 1 if size is None else int(size)
        if n < 1:
            raise ValueError("size must be positive")
        x = self._draw_x(rng, n)
        y = self.conditional_inverse(rng.random(n), x)
        if size is None:
            return float(x[0]), float(y[0])
        return x, y

    def has_unit_square_support(self) -> bool:
        return self.support == ((0.0, 1.0), (0.0, 1.0))


@dataclass(frozen=True)
class ExponentialParetoModel(BivariateModel):
    """Unit-exponential x-marginal coupled with a power-tail y-marginal.

    On x > 0, y > 0 with tail exponent t > 0:

        F(x, y) = 1 - exp(-x) - (1 - exp(-x (1+y)^t)) / (1+y)^t
        H(x)    = 1 - exp(-x)
        G(y)    = 1 - (1+y)^(-t)

    The dependence is negative for every t: the population rank
    coefficient is -1/2 regardless of the tail exponent, while the
    product-moment correlation only exists for t > 2.
    """

    t: float

    support: ClassVar[Support] = ((0.0, math.inf), (0.0, math.inf))

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")

    def cdf(self, x, y):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        g = (1.0 + y) ** self.t
        return _probability(1.0 - np.exp(-x) - (1.0 - np.exp(-x * g)) / g)

    def pdf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = (x >= 0.0) & (y >= 0.0)
        xc = np.maximum(x, 0.0)
        yc = np.maximum(y, 0.0)
        val = self.t * xc * (1.0 + yc) ** (self.t - 1.0) * np.exp(-xc * (1.0 + yc) ** self.t)
        return _maybe_scalar(np.where(inside, val, 0.0))

    def marginal_cdf_x(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        return _probability(-np.expm1(-x))

    def marginal_cdf_y(self, y):
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        return _probability(1.0 - (1.0 + y) ** (-self.t))

    def conditional_cdf(self, y, x):
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        x = np.asarray(x, dtype=float)
        return _probability(-np.expm1(-x * ((1.0 + y) ** self.t - 1.0)))

    def conditional_inverse(self, u, x):
        u = np.asarray(u, dtype=float)
        x = np.asarray(x, dtype=float)
        return _maybe_scalar((1.0 - np.log1p(-u) / x) ** (1.0 / self.t) - 1.0)

    def _draw_x(self, rng: np.random.Generator, n: int) -> np.ndarray:
        x = -np.log1p(-rng.random(n))
        # x == 0 happens only when the uniform is exactly 0; redraw so the
        # conditional inverse never divides by zero.
        while True:
            zero = np.flatnonzero(x == 0.0)
            if zero.size == 0:
                return x
            x[zero] = -np.log1p(-rng.random(zero.size))

    def tau_closed_form(self) -> float:
        return -0.5

    def rho_closed_form(self) -> float | None:
        if self.t <= 2.0:
            return None
        return -math.sqrt(self.t * (self.t - 2.0)) / (2.0 * self.t - 1.0)


@dataclass(frozen=True)
class BivariateParetoModel(BivariateModel):
    """Bivariate Pareto with joint survival tail (1 + x + y)^(-t).

    On x > 0, y > 0 with tail exponent t > 0:

        F(x, y) = 1 - (1+x)^(-t) - (1+y)^(-t) + (1 + x + y)^(-t)

    Both marginals are power tails 1 - (1+.)^(-t).  Positively dependent
    for every t; the population rank coefficient is 1 / (2t + 1), and the
    product-moment correlation 1/t exists only for t > 2.
    """

    t: float

    support: ClassVar[Support] = ((0.0, math.inf), (0.0, math.inf))

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")

    def cdf(self, x, y):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        return _probability(
            1.0
            - (1.0 + x) ** (-self.t)
            - (1.0 + y) ** (-self.t)
            + (1.0 + x + y) ** (-self.t)
        )

    def pdf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = (x >= 0.0) & (y >= 0.0)
        xc = np.maximum(x, 0.0)
        yc = np.maximum(y, 0.0)
        val = self.t * (self.t + 1.0) * (1.0 + xc + yc) ** (-(self.t + 2.0))
        return _maybe_scalar(np.where(inside, val, 0.0))

    def marginal_cdf_x(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        return _probability(1.0 - (1.0 + x) ** (-self.t))

    def marginal_cdf_y(self, y):
        return self.marginal_cdf_x(y)

    def conditional_cdf(self, y, x):
        y = np.maximum(np.asarray(y, dtype=float), 0.0)
        x = np.asarray(x, dtype=float)
        ratio = (1.0 + x + y) / (1.0 + x)
        return _probability(1.0 - ratio ** (-(self.t + 1.0)))

    def conditional_inverse(self, u, x):
        u = np.asarray(u, dtype=float)
        x = np.asarray(x, dtype=float)
        return _maybe_scalar((x + 1.0) * ((1.0 - u) ** (-1.0 / (self.t + 1.0)) - 1.0))

    def _draw_x(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return (1.0 - rng.random(n)) ** (-1.0 / self.t) - 1.0

    def tau_closed_form(self) -> float:
        return 1.0 / (2.0 * self.t + 1.0)

    def rho_closed_form(self) -> float | None:
        if self.t <= 2.0:
            return None
        return 1.0 / self.t


@dataclass(frozen=True)
class FgmCopulaModel(BivariateModel):
    """Farlie-Gumbel-Morgenstern copula on the unit square.

    For -1 <= alpha <= 1 and 0 < x, y < 1:

        F(x, y) = x y (1 + alpha (1 - x)(1 - y))

    Uniform marginals; alpha = 0 is independence.  The dependence range
    is narrow: the population rank coefficient is 2 alpha / 9 and the
    product-moment correlation is alpha / 3.
    """

    alpha: float

    support: ClassVar[Support] = ((0.0, 1.0), (0.0, 1.0))

    def __post_init__(self) -> None:
        if not -1.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [-1, 1], got {self.alpha}")

    def cdf(self, x, y):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        y = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        return _probability(x * y * (1.0 + self.alpha * (1.0 - x) * (1.0 - y)))

    def pdf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = (x >= 0.0) & (x <= 1.0) & (y >= 0.0) & (y <= 1.0)
        val = 1.0 + self.alpha * (1.0 - 2.0 * np.clip(x, 0.0, 1.0)) * (
            1.0 - 2.0 * np.clip(y, 0.0, 1.0)
        )
        return _maybe_scalar(np.where(inside, val, 0.0))

    def marginal_cdf_x(self, x):
        return _maybe_scalar(np.clip(np.asarray(x, dtype=float), 0.0, 1.0))

    def marginal_cdf_y(self, y):
        return self.marginal_cdf_x(y)

    def conditional_cdf(self, y, x):
        v = np.clip(np.asarray(y, dtype=float), 0.0, 1.0)
        x = np.asarray(x, dtype=float)
        return _probability(v * (1.0 + self.alpha * (1.0 - 2.0 * x) * (1.0 - v)))

    def conditional_inverse(self, u, x):
        w = np.asarray(u, dtype=float)
        x = np.asarray(x, dtype=float)
        b = 1.0 + self.alpha * (1.0 - 2.0 * x)
        # Smaller quadratic root in rationalized form: no cancellation as
        # b -> 1, and the denominator vanishes only at (b = 0, w = 0),
        # where the correct limit is 0.
        denom = b + np.sqrt(b * b - 4.0 * (b - 1.0) * w)
        with np.errstate(invalid="ignore", divide="ignore"):
            v = np.where(denom > 0.0, 2.0 * w / np.where(denom > 0.0, denom, 1.0), 0.0)
        return _maybe_scalar(v)

    def _draw_x(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.random(n)

    def tau_closed_form(self) -> float:
        return 2.0 * self.alpha / 9.0

    def rho_closed_form(self) -> float:
        return self.alpha / 3.0


FAMILIES: dict[str, type[BivariateModel]] = {
    "exp-pareto": ExponentialParetoModel,
    "pareto": BivariateParetoModel,
    "fgm": FgmCopulaModel,
}


def make_model(
    family: str, *, t: float | None = None, alpha: float | None = None
) -> BivariateModel:
    """Build a model from a family name plus its single parameter.

    ``exp-pareto`` and ``pareto`` take ``t > 0``; ``fgm`` takes
    ``alpha`` in [-1, 1].
    """
    key = family.strip().lower()
    if key not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    if key == "fgm":
        if alpha is None:
            raise ValueError("family 'fgm' requires alpha")
        if t is not None:
            raise ValueError("family 'fgm' takes alpha, not t")
        return FgmCopulaModel(alpha)
    if t is None:
        raise ValueError(f"family {family!r} requires t")
    if alpha is not None:
        raise ValueError(f"family {family!r} takes t, not alpha")
    return FAMILIES[key](t)
