"""Exact arithmetic core: Gaussian rationals and polynomials over them.

Everything in this module is exact.  Coefficients are `fractions.Fraction`
(arbitrary precision), and no operation here ever touches a float except
the explicit `*_float` evaluation helpers, which form the boundary to the
numerical layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

RationalLike = Union[int, Fraction, str]


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal of the form "p/q" or "p".

    Raises ValueError on malformed input or zero denominator.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}: {exc}") from None


def _frac(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, re: RationalLike, im: RationalLike = 0) -> "GaussianRational":
        return cls(_frac(re), _frac(im))

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        """Accepts "p/q" (real) or {"re": "p/q", "im": "r/s"}."""
        if isinstance(obj, (str, int)):
            return cls.of(_frac(obj))
        if isinstance(obj, dict):
            return cls.of(_frac(obj.get("re", 0)), _frac(obj.get("im", 0)))
        raise ValueError(f"bad Gaussian rational literal {obj!r}")

    def to_json(self):
        if self.im == 0:
            return str(self.re)
        return {"re": str(self.re), "im": str(self.im)}

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational.of(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"


GR = GaussianRational.of
GR_ZERO = GR(0)
GR_ONE = GR(1)
GR_I = GR(0, 1)


def _as_gr(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GR(x)
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with Gaussian-rational coefficients.

    Coefficients are stored in ascending powers with trailing zeros
    trimmed; the zero polynomial is the empty tuple (degree -1).
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_as_gr(c) for c in self.coeffs)
        while cs and not cs[-1]:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def of(cls, *coeffs) -> "Poly":
        return cls(tuple(coeffs))

    @classmethod
    def from_json(cls, items: Iterable) -> "Poly":
        return cls(tuple(GaussianRational.from_json(c) for c in items))

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else GR_ZERO

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(k) - other.coeff(k) for k in range(n)))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (GaussianRational, int, Fraction)):
            g = _as_gr(other)
            return Poly(tuple(c * g for c in self.coeffs))
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    # -- calculus ----------------------------------------------------------

    def __call__(self, x) -> GaussianRational:
        x = _as_gr(x)
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "Poly":
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(cs[k] * k for k in range(1, len(cs)))
            if not cs:
                break
        return Poly(cs)

    def antiderivative(self) -> "Poly":
        return Poly((GR_ZERO,) + tuple(
            c * Fraction(1, k + 1) for k, c in enumerate(self.coeffs)))

    def integral(self, lo, hi) -> GaussianRational:
        P = self.antiderivative()
        return P(hi) - P(lo)

    # -- transforms of the argument ---------------------------------------

    def compose_affine(self, c0, c1) -> "Poly":
        """Exact composition p(c0 + c1*t)."""
        c0, c1 = _as_gr(c0), _as_gr(c1)
        lin = Poly.of(c0, c1)
        acc = Poly.of()
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly.of(c)
        return acc

    def conjugate(self) -> "Poly":
        """Coefficient-wise conjugate; equals conj(p(t)) for real t."""
        return Poly(tuple(c.conjugate() for c in self.coeffs))

    def reflect(self, a, conjugate: bool = True) -> "Poly":
        """t -> conj(p(a-t)); with conjugate=False, t -> p(a-t)."""
        q = self.compose_affine(a, -1)
        return q.conjugate() if conjugate else q

    def times_x(self, k: int = 1) -> "Poly":
        if self.is_zero:
            return self
        return Poly((GR_ZERO,) * k + self.coeffs)

    # -- float boundary ----------------------------------------------------

    @cached_property
    def _complex_coeffs(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs] or [0j])

    def eval_float(self, z):
        """Horner evaluation at a complex float or numpy array."""
        acc = np.zeros_like(np.asarray(z, dtype=complex))
        for c in self._complex_coeffs[::-1]:
            acc = acc * z + c
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


# Spec-facing operation aliases for the density-polynomial contract.

def poly_eval(p: Poly, x) -> GaussianRational:
    return p(x)


def poly_definite_integral(p: Poly, lo, hi) -> GaussianRational:
    return p.integral(lo, hi)


def poly_derivative(p: Poly, order: int = 1) -> Poly:
    return p.derivative(order)


def poly_reflect_conj(p: Poly, a, conjugate: bool = True) -> Poly:
    if _frac_sign(a) <= 0:
        raise ValueError("reflection endpoint a must be positive")
    return p.reflect(a, conjugate=conjugate)


def _frac_sign(a) -> int:
    f = _frac(a) if not isinstance(a, Fraction) else a
    return (f > 0) - (f < 0)


@dataclass(frozen=True)
class MPoly:
    """Multivariate polynomial over Gaussian rationals.

    `terms` maps exponent tuples (length `nvars`) to nonzero coefficients.
    Used with nvars=2 as the bivariate kernel carrier and with nvars=3 as
    scratch space for symbolic integration in a third variable.
    """

    nvars: int
    terms: dict

    def __post_init__(self):
        clean = {}
        for exp, c in self.terms.items():
            c = _as_gr(c)
            if len(exp) != self.nvars:
                raise ValueError(f"exponent {exp} has wrong arity")
            if c:
                clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        return cls(nvars, {(0,) * nvars: _as_gr(c)})

    @classmethod
    def var(cls, nvars: int, idx: int) -> "MPoly":
        exp = [0] * nvars
        exp[idx] = 1
        return cls(nvars, {tuple(exp): GR_ONE})

    @classmethod
    def from_poly(cls, p: Poly, arg: "MPoly") -> "MPoly":
        """Compose the univariate p with a multivariate argument (Horner)."""
        acc = cls.zero(arg.nvars)
        for c in reversed(p.coeffs):
            acc = acc * arg + cls.const(arg.nvars, c)
        return acc

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "MPoly") -> "MPoly":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, GR_ZERO) + c
        return MPoly(self.nvars, out)

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __neg__(self) -> "MPoly":
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (GaussianRational, int, Fraction)):
            g = _as_gr(other)
            return MPoly(self.nvars, {e: c * g for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, GR_ZERO) + c1 * c2
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def conjugate(self) -> "MPoly":
        return MPoly(self.nvars, {e: c.conjugate() for e, c in self.terms.items()})

    # -- calculus ----------------------------------------------------------

    def partial(self, var: int) -> "MPoly":
        out = {}
        for exp, c in self.terms.items():
            if exp[var] == 0:
                continue
            e = list(exp)
            e[var] -= 1
            out[tuple(e)] = c * exp[var]
        return MPoly(self.nvars, out)

    def antiderivative(self, var: int) -> "MPoly":
        out = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[var] += 1
            out[tuple(e)] = c * Fraction(1, e[var])
        return MPoly(self.nvars, out)

    def subst_poly(self, var: int, repl: "MPoly") -> "MPoly":
        """Substitute variable `var` by a polynomial of the same arity."""
        acc = MPoly.zero(self.nvars)
        for exp, c in self.terms.items():
            rest = list(exp)
            rest[var] = 0
            term = MPoly(self.nvars, {tuple(rest): c})
            for _ in range(exp[var]):
                term = term * repl
            acc = acc + term
        return acc

    def definite_integral(self, var: int, lo: "MPoly", hi: "MPoly") -> "MPoly":
        G = self.antiderivative(var)
        return G.subst_poly(var, hi) - G.subst_poly(var, lo)

    # -- variable plumbing -------------------------------------------------

    def swap_vars(self, i: int, j: int) -> "MPoly":
        out = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[i], e[j] = e[j], e[i]
            out[tuple(e)] = c
        return MPoly(self.nvars, out)

    def drop_var(self, var: int) -> "MPoly":
        """Remove a variable that no term uses."""
        out = {}
        for exp, c in self.terms.items():
            if exp[var] != 0:
                raise ValueError(f"variable {var} still present in {exp}")
            out[exp[:var] + exp[var + 1:]] = c
        return MPoly(self.nvars - 1, out)

    def to_univariate(self, var: int = 0) -> Poly:
        if self.nvars != 1:
            raise ValueError("to_univariate requires arity 1")
        n = max((e[0] for e in self.terms), default=-1) + 1
        cs = [GR_ZERO] * n
        for exp, c in self.terms.items():
            cs[exp[0]] = c
        return Poly(tuple(cs))

    # -- evaluation --------------------------------------------------------

    def eval(self, values: Sequence) -> GaussianRational:
        vals = [_as_gr(v) for v in values]
        acc = GR_ZERO
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(vals, exp):
                for _ in range(e):
                    term = term * v
            acc = acc + term
        return acc

    def eval_float(self, values: Sequence):
        """Evaluate at complex floats / numpy arrays (broadcasting)."""
        acc = 0j
        for exp, c in self.terms.items():
            term = complex(c)
            for v, e in zip(values, exp):
                if e:
                    term = term * np.asarray(v, dtype=complex) ** e
            acc = acc + term
        return acc

    def to_json(self):
        return [
            {"exp": list(exp), "coeff": c.to_json()}
            for exp, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.terms!r})"


BivariatePoly = MPoly  # arity-2 instances carry the kernel pieces
