"""Closed forms and numerical evaluation of F(z) = int_0^a e^{izt} conj(Psi(t)) dt.

For a polynomial density the transform has an exact closed form obtained by
repeated integration by parts,

    F(z) = e^{iaz} * sum_j p_j z^{-j}  +  sum_j q_j z^{-j},    j = 1..deg+1,

with Gaussian-rational Laurent coefficients.  Near z = 0 the closed form
cancels catastrophically, so a truncated Taylor series built from the exact
moments mu_n = int_0^a t^n g(t) dt is used instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .exact import GR, GR_I, Poly, _frac

#: Crossover radius between the moment Taylor series and the Laurent form.
SWITCH_RADIUS = 0.5

#: Extra moment terms beyond the density degree kept for the z ~ 0 series.
EXTRA_MOMENTS = 32

#: |a * Im z| beyond which exp() would overflow double range.
OVERFLOW_LIMIT = 700.0


class EvaluationOverflow(ValueError):
    """e^{|a Im z|} exceeds double range; evaluation refused, not extended."""


@dataclass(frozen=True)
class ClosedTransform:
    """Exact closed form of F(z) = int_0^a e^{izt} g(t) dt.

    `density` is the integrand polynomial g (already conjugated/reflected
    by the constructor helpers below).  `osc` and `plain` hold the Laurent
    coefficients p_j, q_j of z^{-j} (index j-1); `moments` holds mu_n.
    """

    a: Fraction
    density: Poly
    osc: tuple
    plain: tuple
    moments: tuple

    @classmethod
    def from_density(cls, g: Poly, a, n_moments: int | None = None) -> "ClosedTransform":
        a = _frac(a)
        if a <= 0:
            raise ValueError("interval endpoint a must be positive")
        if n_moments is None:
            n_moments = g.degree + 1 + EXTRA_MOMENTS
        osc, plain = [], []
        deriv = g
        minus_i_pow = GR(1)
        sign = GR(1)
        for _ in range(g.degree + 1):
            # p_j = (-1)^{j-1} (-i)^j g^{(j-1)}(a),  q_j = -p_j|_{t=0}
            minus_i_pow = minus_i_pow * GR(0, -1)
            osc.append(sign * minus_i_pow * deriv(a))
            plain.append(-(sign * minus_i_pow * deriv(0)))
            deriv = deriv.derivative()
            sign = -sign
        moments = []
        mono = g
        for _ in range(n_moments):
            moments.append(mono.integral(0, a))
            mono = mono.times_x()
        return cls(a, g, tuple(osc), tuple(plain), tuple(moments))

    def scaled(self, factor) -> "ClosedTransform":
        """Transform of the density multiplied by an exact constant."""
        return ClosedTransform(
            self.a,
            self.density * factor,
            tuple(c * factor for c in self.osc),
            tuple(c * factor for c in self.plain),
            tuple(c * factor for c in self.moments),
        )

    def derivative(self) -> "ClosedTransform":
        """Closed form of F'(z) = i * int_0^a t e^{izt} g(t) dt."""
        return ClosedTransform.from_density(
            self.density.times_x() * GR_I, self.a, len(self.moments))

    # -- float evaluation --------------------------------------------------

    @cached_property
    def _float_data(self):
        a = float(self.a)
        osc = np.array([complex(c) for c in self.osc] or [0j])
        plain = np.array([complex(c) for c in self.plain] or [0j])
        # Taylor coefficients of F at 0: mu_n i^n / n!
        taylor = np.array(
            [complex(m) * (1j ** n) / math.factorial(n)
             for n, m in enumerate(self.moments)]
        )
        return a, osc, plain, taylor

    def eval_many(self, z) -> np.ndarray:
        """Vectorized evaluation at an array of complex points."""
        z = np.asarray(z, dtype=complex)
        a, osc, plain, taylor = self._float_data
        if np.any(np.abs(z.imag) * a > OVERFLOW_LIMIT):
            raise EvaluationOverflow(
                f"|a Im z| exceeds {OVERFLOW_LIMIT}; result would overflow")
        out = np.empty_like(z)
        small = np.abs(z) < SWITCH_RADIUS
        if np.any(small):
            zs = z[small]
            acc = np.zeros_like(zs)
            for c in taylor[::-1]:
                acc = acc * zs + c
            out[small] = acc
        if np.any(~small):
            zl = z[~small]
            w = 1.0 / zl
            acc_o = np.zeros_like(zl)
            acc_p = np.zeros_like(zl)
            for po, pp in zip(osc[::-1], plain[::-1]):
                acc_o = (acc_o + po) * w
                acc_p = (acc_p + pp) * w
            out[~small] = np.exp(1j * a * zl) * acc_o + acc_p
        return out

    def __call__(self, z: complex) -> complex:
        return complex(self.eval_many(np.array([z]))[0])


def closed_form(psi: Poly, a) -> ClosedTransform:
    """Transform of conj(Psi): F(z) = int_0^a e^{izt} conj(Psi(t)) dt."""
    return ClosedTransform.from_density(psi.conjugate(), a)


def reflected_transform(psi2: Poly, a) -> ClosedTransform:
    """F_{2,1}(z) = int_0^a e^{izt} Psi_2(a-t) dt (no conjugation)."""
    return ClosedTransform.from_density(psi2.reflect(a, conjugate=False), a)


def derivative_transform(psi: Poly, a) -> ClosedTransform:
    """Closed form of F'(z) for F = closed_form(psi, a)."""
    return closed_form(psi, a).derivative()


def eval_transform(F: ClosedTransform, z: complex) -> complex:
    return F(z)


@dataclass(frozen=True)
class TrigForm:
    """Exact P, Q, R with z^scale * F(z) = P(z) cos(az) + Q(z) sin(az) + R(z)."""

    P: Poly
    Q: Poly
    R: Poly
    scale: int
    a: Fraction

    def eval_float(self, z) -> complex:
        a = float(self.a)
        return (
            self.P.eval_float(z) * np.cos(a * z)
            + self.Q.eval_float(z) * np.sin(a * z)
            + self.R.eval_float(z)
        )


def trig_form(F: ClosedTransform) -> TrigForm:
    """Split e^{iaz} into cos + i sin over the Laurent parts and clear z^-j."""
    m = len(F.osc)
    # z^m * sum_j c_j z^{-j} has ascending coefficient c_{m-k} at z^k.
    p_coeffs = tuple(F.osc[m - 1 - k] for k in range(m))
    r_coeffs = tuple(F.plain[m - 1 - k] for k in range(m))
    P = Poly(p_coeffs)
    return TrigForm(P, P * GR_I, Poly(r_coeffs), m, F.a)
