"""Closed-form radial functions with exact derivatives.

Everything the residual and operator-algebra checks touch is a finite
linear combination of terms

    coef * r**power * exp(-decay*r) * L_n^alpha(argscale*r),

a family closed under d/dr, multiplication by integer powers of r, and
dilation r -> e^theta r.  Derivatives are therefore exact term
manipulations, so residuals downstream measure floating-point error only,
never differencing error.  Coefficients and decay rates may be complex
(coherent states); Laguerre arguments stay real.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp

import numpy as np

from .errors import DomainError
from .special import laguerre

__all__ = ["LaguerreTerm", "LaguerreSum"]


@dataclass(frozen=True)
class LaguerreTerm:
    coef: complex
    power: float
    decay: complex
    degree: int = 0
    alpha: float = 0.0
    argscale: float = 1.0


class LaguerreSum:
    """A finite linear combination of Laguerre-type radial terms."""

    __slots__ = ("terms", "is_real")

    def __init__(self, terms):
        merged: dict = {}
        for t in terms:
            if t.coef == 0:
                continue
            key = (t.power, complex(t.decay), t.degree, t.alpha, t.argscale)
            merged[key] = merged.get(key, 0.0 + 0.0j) + complex(t.coef)
        self.terms = tuple(
            LaguerreTerm(coef=c, power=k[0], decay=k[1], degree=k[2], alpha=k[3], argscale=k[4])
            for k, c in merged.items()
            if c != 0
        )
        self.is_real = all(
            t.coef.imag == 0.0 and t.decay.imag == 0.0 for t in self.terms
        )

    @classmethod
    def single(cls, coef, power, decay, degree: int = 0, alpha: float = 0.0,
               argscale: float = 1.0) -> "LaguerreSum":
        return cls([LaguerreTerm(coef, power, decay, degree, alpha, argscale)])

    def __call__(self, r):
        scalar = np.isscalar(r)
        rv = np.asarray(r, dtype=float)
        out = np.zeros(rv.shape, dtype=complex)
        for t in self.terms:
            out += (
                t.coef
                * rv ** t.power
                * np.exp(-t.decay * rv)
                * laguerre(t.degree, t.alpha, t.argscale * rv)
            )
        if self.is_real:
            out = out.real
        return out.item() if scalar else out

    def derivative(self) -> "LaguerreSum":
        """Exact d/dr, using d/dx L_n^a(x) = -L_{n-1}^{a+1}(x)."""
        out = []
        for t in self.terms:
            if t.power != 0.0:
                out.append(LaguerreTerm(t.coef * t.power, t.power - 1.0, t.decay,
                                        t.degree, t.alpha, t.argscale))
            out.append(LaguerreTerm(-t.coef * t.decay, t.power, t.decay,
                                    t.degree, t.alpha, t.argscale))
            if t.degree >= 1:
                out.append(LaguerreTerm(-t.coef * t.argscale, t.power, t.decay,
                                        t.degree - 1, t.alpha + 1.0, t.argscale))
        return LaguerreSum(out)

    def times_power(self, k) -> "LaguerreSum":
        """Multiply by r**k (k may be negative or fractional)."""
        return LaguerreSum(
            [LaguerreTerm(t.coef, t.power + k, t.decay, t.degree, t.alpha, t.argscale)
             for t in self.terms]
        )

    def scaled(self, theta: float) -> "LaguerreSum":
        """The dilation image e^theta f(e^theta r)."""
        g = exp(theta)
        return LaguerreSum(
            [LaguerreTerm(t.coef * g ** (t.power + 1.0), t.power, t.decay * g,
                          t.degree, t.alpha, t.argscale * g)
             for t in self.terms]
        )

    def __add__(self, other: "LaguerreSum") -> "LaguerreSum":
        if not isinstance(other, LaguerreSum):
            return NotImplemented
        return LaguerreSum(list(self.terms) + list(other.terms))

    def __sub__(self, other: "LaguerreSum") -> "LaguerreSum":
        if not isinstance(other, LaguerreSum):
            return NotImplemented
        return self + (other * -1.0)

    def __mul__(self, scalar) -> "LaguerreSum":
        if isinstance(scalar, LaguerreSum):
            raise DomainError("products of LaguerreSum objects are not supported; "
                              "evaluate pointwise instead")
        return LaguerreSum(
            [LaguerreTerm(t.coef * scalar, t.power, t.decay, t.degree, t.alpha, t.argscale)
             for t in self.terms]
        )

    __rmul__ = __mul__

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"LaguerreSum({len(self.terms)} terms, real={self.is_real})"
