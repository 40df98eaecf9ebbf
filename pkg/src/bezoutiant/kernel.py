"""Explicit Bezoutiant construction and its exact structural identities.

Given two polynomial densities Psi_1, Psi_2 on [0, a] (normalized to unit
mass), the Bezoutiant is the integral operator

    (Tf)(x) = c * int_0^a f(t) U(x, t) dt,

where U is given piecewise by exact symbolic integration of

    Psi_2(a-s) conj(Psi_1)(a-s-x+t) - Psi_2(s+x-t) conj(Psi_1)(s)

over s in [t, a] (x < t) resp. [t, a+t-x] (x > t).  Every identity this
module checks (adjoint action on 1, the Phi-difference relation, diagonal
continuity) is verified as an exact polynomial identity, never numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import GR, GR_ONE, GR_ZERO, GaussianRational, MPoly, Poly, _frac

ALPHA_DEFAULT = GR_ONE
BETA_DEFAULT = GR_ZERO


class ZeroMassError(ValueError):
    """A density integrates to zero over [0, a]; the construction needs R != 0."""


class DegenerateChoiceError(ValueError):
    """conj(alpha) + beta = 0 is excluded."""


@dataclass(frozen=True)
class NormalizedPair:
    """Densities scaled to unit mass, with the original normalizers kept."""

    psi1: Poly
    psi2: Poly
    a: Fraction
    r1: GaussianRational
    r2: GaussianRational


@dataclass(frozen=True)
class MFunctions:
    """Phi_k(t) = int_t^a psi_k and the induced M_1, M_2 polynomials."""

    phi1: Poly
    phi2: Poly
    m1: Poly
    m2: Poly
    alpha: GaussianRational
    beta: GaussianRational
    a: Fraction


@dataclass(frozen=True)
class BezoutKernel:
    """Kernel c * U(x, t), with U stored per region as exact bivariate polys.

    Variable order in the MPoly pieces is (x, t) = (var 0, var 1);
    `u_lower` is valid for x < t, `u_upper` for x > t.
    """

    c: GaussianRational
    u_lower: MPoly
    u_upper: MPoly
    a: Fraction

    def u_at(self, x, t) -> GaussianRational:
        piece = self.u_lower if _frac(x) < _frac(t) else self.u_upper
        return piece.eval([x, t])

    def u_float(self, x, t):
        """Float evaluation on scalars or broadcastable arrays."""
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        lower = self.u_lower.eval_float([x, t])
        upper = self.u_upper.eval_float([x, t])
        return np.where(x < t, lower, upper)

    def to_json(self):
        return {
            "a": str(self.a),
            "c": self.c.to_json(),
            "u_lower": self.u_lower.to_json(),
            "u_upper": self.u_upper.to_json(),
        }


def normalize_pair(psi1: Poly, psi2: Poly, a) -> NormalizedPair:
    """Divide each density by its exact mass R_k = int_0^a psi_k."""
    a = _frac(a)
    if a <= 0:
        raise ValueError("interval endpoint a must be positive")
    r1 = psi1.integral(0, a)
    r2 = psi2.integral(0, a)
    if not r1 or not r2:
        raise ZeroMassError("a density has zero mass on [0, a]")
    return NormalizedPair(psi1 * (GR_ONE / r1), psi2 * (GR_ONE / r2), a, r1, r2)


def build_m_functions(
    pair: NormalizedPair,
    alpha: GaussianRational = ALPHA_DEFAULT,
    beta: GaussianRational = BETA_DEFAULT,
) -> MFunctions:
    denom = alpha.conjugate() + beta
    if not denom:
        raise DegenerateChoiceError("conj(alpha) + beta must be nonzero")
    a = pair.a
    phi = []
    for psi in (pair.psi1, pair.psi2):
        P = psi.antiderivative()
        phi.append(Poly.of(P(a)) - P)  # int_t^a psi
    phi1, phi2 = phi
    one = Poly.of(GR_ONE)
    m2 = (phi2 + phi1.reflect(a) - one) * (GR_ONE / denom)
    m1 = phi2 - m2 * beta
    return MFunctions(phi1, phi2, m1, m2, alpha, beta, a)


def _kernel_integrand(pair: NormalizedPair) -> MPoly:
    """Integrand of U in arity-3 variables (s, x, t) = (0, 1, 2)."""
    a = pair.a
    s = MPoly.var(3, 0)
    x = MPoly.var(3, 1)
    t = MPoly.var(3, 2)
    ca = MPoly.const(3, GR(a))
    g1 = pair.psi1.conjugate()
    term1 = MPoly.from_poly(pair.psi2, ca - s) * MPoly.from_poly(g1, ca - s - x + t)
    term2 = MPoly.from_poly(pair.psi2, s + x - t) * MPoly.from_poly(g1, s)
    return term1 - term2


def build_kernel(
    pair: NormalizedPair,
    alpha: GaussianRational = ALPHA_DEFAULT,
    beta: GaussianRational = BETA_DEFAULT,
) -> BezoutKernel:
    """Exact symbolic s-integration of the two region integrals."""
    denom = alpha.conjugate() + beta
    if not denom:
        raise DegenerateChoiceError("conj(alpha) + beta must be nonzero")
    integrand = _kernel_integrand(pair)
    a3 = MPoly.const(3, GR(pair.a))
    s_var = 0
    t3 = MPoly.var(3, 2)
    x3 = MPoly.var(3, 1)
    u_lower = integrand.definite_integral(s_var, t3, a3).drop_var(s_var)
    u_upper = integrand.definite_integral(s_var, t3, a3 + t3 - x3).drop_var(s_var)
    c = -(GR_ONE / denom)  # R_k = 1 after normalization
    return BezoutKernel(c, u_lower, u_upper, pair.a)


def adjoint_apply_to_one(k: BezoutKernel) -> Poly:
    """(T* 1)(x) = conj(c) int_0^a conj(U(t, x)) dt, as an exact polynomial."""
    # swap (x, t) so each piece, read as a function of (x, t), is U(t, x);
    # t < x then selects the original lower region.
    w_lower = k.u_lower.swap_vars(0, 1).conjugate()
    w_upper = k.u_upper.swap_vars(0, 1).conjugate()
    t_var = 1
    x2 = MPoly.var(2, 0)
    zero2 = MPoly.zero(2)
    a2 = MPoly.const(2, GR(k.a))
    total = (
        w_lower.definite_integral(t_var, zero2, x2)
        + w_upper.definite_integral(t_var, x2, a2)
    ).drop_var(t_var)
    return (total * k.c.conjugate()).to_univariate()


def check_adjoint_identity(k: BezoutKernel, mf: MFunctions) -> bool:
    """Exact check of T*1 = conj(M_2(a - x))."""
    return adjoint_apply_to_one(k) == mf.m2.reflect(mf.a)


def check_phi_difference(mf: MFunctions) -> bool:
    """Exact check of Phi_1 - [1 - conj(Phi_2(a-t))] = (alpha + conj(beta)) conj(M_2(a-t))."""
    one = Poly.of(GR_ONE)
    lhs = mf.phi1 - (one - mf.phi2.reflect(mf.a))
    rhs = mf.m2.reflect(mf.a) * (mf.alpha + mf.beta.conjugate())
    return lhs == rhs


def check_diagonal_continuity(k: BezoutKernel) -> bool:
    """u_lower(x, x) = u_upper(x, x) as polynomials."""
    x2 = MPoly.var(2, 0)
    on_diag = lambda u: u.subst_poly(1, x2).drop_var(1)
    return on_diag(k.u_lower) == on_diag(k.u_upper)


@dataclass(frozen=True)
class KernelEnvelope:
    """Numerical majorant h on [-a, a] with |U(x, t)| <= h(x - t)."""

    pair: NormalizedPair
    integral: float

    def __call__(self, u):
        return _envelope_values(self.pair, np.atleast_1d(np.asarray(u, float)))


def _envelope_values(pair: NormalizedPair, us: np.ndarray) -> np.ndarray:
    a = float(pair.a)
    g1 = pair.psi1.conjugate()
    nodes, weights = np.polynomial.legendre.leggauss(48)
    out = np.empty_like(us)
    for i, u in enumerate(us):
        # both products are supported on s in [max(0,-u), min(a, a-u)]
        lo, hi = max(0.0, -u), min(a, a - u)
        if hi <= lo:
            out[i] = 0.0
            continue
        acc = 0.0
        edges = np.linspace(lo, hi, 9)
        for sl, sr in zip(edges[:-1], edges[1:]):
            s = 0.5 * (sr - sl) * nodes + 0.5 * (sr + sl)
            w = 0.5 * (sr - sl) * weights
            v = np.abs(pair.psi2.eval_float(a - s) * g1.eval_float(a - s - u)) + np.abs(
                pair.psi2.eval_float(s + u) * g1.eval_float(s))
            acc += float(np.sum(w * v))
        out[i] = acc
    return out


def kernel_bound(pair: NormalizedPair, n_grid: int = 401) -> KernelEnvelope:
    """Tabulate h and its finite integral over [-a, a] by quadrature."""
    a = float(pair.a)
    us = np.linspace(-a, a, n_grid)
    vals = _envelope_values(pair, us)
    integral = float(np.trapezoid(vals, us))
    return KernelEnvelope(pair, integral)


def kernel_grid_csv(k: BezoutKernel, n: int, path) -> None:
    """Write U on an n x n grid over [0,a]^2 as CSV rows (x, t, re, im)."""
    a = float(k.a)
    xs = np.linspace(0.0, a, n)
    with open(path, "w") as fh:
        fh.write("x,t,u_re,u_im\n")
        for x in xs:
            row = k.u_float(x, xs)
            for t, v in zip(xs, np.atleast_1d(row)):
                fh.write(f"{x!r},{t!r},{v.real!r},{v.imag!r}\n")
