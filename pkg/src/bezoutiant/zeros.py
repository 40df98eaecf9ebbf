"""Argument-principle zero localization for the exponential transforms.

Zeros inside a rectangle are counted by the winding integral of F'/F over
the boundary, isolated by recursive quadrisection, and polished by Newton
iteration using the exact closed form of F'.  This is the numerical side
of the artifact: it never trusts the symbolic verdict and vice versa.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .transform import ClosedTransform


class BoundaryZeroError(RuntimeError):
    """Boundary could not be nudged away from a zero of F."""


class NonIntegerWindingError(RuntimeError):
    """Contour quadrature failed to certify an integer winding number."""


class ClusterUnresolvedError(RuntimeError):
    """Subdivision floor reached with more than one unresolved zero."""


@dataclass(frozen=True)
class SearchRect:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    boundary_margin: float = 0.05

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("search rectangle has empty interior")

    def mirrored(self) -> "SearchRect":
        return SearchRect(self.re_min, self.re_max, -self.im_max, -self.im_min,
                          self.boundary_margin)


@dataclass(frozen=True)
class ZeroRecord:
    z: complex
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple
    rect: SearchRect
    total_count: int

    def points(self) -> list:
        return [r.z for r in self.zeros]

    def to_json(self):
        return {
            "rect": vars(self.rect),
            "total_count": self.total_count,
            "zeros": [
                {"re": r.z.real, "im": r.z.imag,
                 "multiplicity": r.multiplicity, "residual": r.residual}
                for r in self.zeros
            ],
        }

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["z_re", "z_im", "multiplicity", "residual"])
            for r in self.zeros:
                w.writerow([repr(r.z.real), repr(r.z.imag),
                            r.multiplicity, repr(r.residual)])


# -- contour machinery ------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


def _box_corners(box):
    x0, x1, y0, y1 = box
    return [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]


def _boundary_samples(box, n_per_edge=128) -> np.ndarray:
    cs = _box_corners(box)
    t = np.linspace(0.0, 1.0, n_per_edge, endpoint=False)
    return np.concatenate([a + (b - a) * t for a, b in zip(cs, cs[1:] + cs[:1])])


def _winding_integral(F, Fp, box, panels_per_edge):
    cs = _box_corners(box)
    total = 0j
    for a, b in zip(cs, cs[1:] + cs[:1]):
        edges = np.linspace(0.0, 1.0, panels_per_edge + 1)
        for t0, t1 in zip(edges[:-1], edges[1:]):
            t = 0.5 * (t1 - t0) * _GL_NODES + 0.5 * (t1 + t0)
            z = a + (b - a) * t
            vals = Fp.eval_many(z) / F.eval_many(z)
            total += (b - a) * 0.5 * (t1 - t0) * np.sum(_GL_WEIGHTS * vals)
    return total / (2j * math.pi)


def _certified_winding(F, Fp, box, stab_tol=1e-3):
    """Winding number with adaptive panel doubling until stable and integral."""
    prev = None
    for panels in (4, 8, 16, 32, 64, 128, 256):
        val = _winding_integral(F, Fp, box, panels)
        if prev is not None and abs(val - prev) < stab_tol:
            n = round(val.real)
            if abs(val - n) <= 0.1:
                return int(n)
        prev = val
    raise NonIntegerWindingError(
        f"winding integral did not certify an integer on {box}: {prev}")


def _guarded_box(F, rect: SearchRect, threshold_rel=1e-8, attempts=5):
    """Expand the box outward until no boundary sample is dangerously small."""
    box = (rect.re_min, rect.re_max, rect.im_min, rect.im_max)
    for k in range(attempts + 1):
        vals = np.abs(F.eval_many(_boundary_samples(box)))
        scale = float(np.max(vals))
        if float(np.min(vals)) > threshold_rel * (1.0 + scale):
            return box, scale
        m = rect.boundary_margin * (k + 1)
        box = (box[0] - m, box[1] + m, box[2] - m, box[3] + m)
    raise BoundaryZeroError(
        f"boundary |F| below threshold after {attempts} nudges")


def count_zeros(F: ClosedTransform, rect: SearchRect) -> int:
    """Number of zeros of F inside the rectangle, with multiplicity."""
    Fp = F.derivative()
    box, _ = _guarded_box(F, rect)
    return _certified_winding(F, Fp, box)


# -- localization -----------------------------------------------------------

def _newton(F, Fp, z0: complex, tol: float, box, max_iter=60):
    x0, x1, y0, y1 = box
    pad = max(x1 - x0, y1 - y0)
    z = z0
    for _ in range(max_iter):
        fp = Fp(z)
        if fp == 0:
            return None
        dz = F(z) / fp
        z = z - dz
        if not (x0 - pad <= z.real <= x1 + pad and y0 - pad <= z.imag <= y1 + pad):
            return None
        if abs(dz) <= tol:
            fp = Fp(z)
            if fp != 0:
                z = z - F(z) / fp
            return z
    return None


def _newton_multiple(F, Fp, Fpp, z0: complex, tol: float, box, max_iter=80):
    """Newton on u = F/F', quadratic also at multiple zeros."""
    x0, x1, y0, y1 = box
    pad = 2.0 * max(x1 - x0, y1 - y0) + 1.0
    z = z0
    for _ in range(max_iter):
        f, fp, fpp = F(z), Fp(z), Fpp(z)
        if fp == 0:
            return None
        u = f / fp
        up = 1.0 - f * fpp / (fp * fp)
        if up == 0:
            return None
        dz = u / up
        z = z - dz
        if not (x0 - pad <= z.real <= x1 + pad and y0 - pad <= z.imag <= y1 + pad):
            return None
        if abs(dz) <= tol:
            return z
    return None


def _split_coord(F, lo, hi, other_lo, other_hi, vertical):
    """Pick a split position whose cut line stays well away from zeros."""
    best, best_min = None, -1.0
    for frac in (0.5, 0.44, 0.56, 0.38, 0.62, 0.32, 0.68):
        c = lo + frac * (hi - lo)
        t = np.linspace(other_lo, other_hi, 33)
        z = (c + 1j * t) if vertical else (t + 1j * c)
        m = float(np.min(np.abs(F.eval_many(z))))
        if m > best_min:
            best, best_min = c, m
    return best


def _in_box(z, box, pad=0.0):
    x0, x1, y0, y1 = box
    return x0 - pad <= z.real <= x1 + pad and y0 - pad <= z.imag <= y1 + pad


def locate_zeros(F: ClosedTransform, rect: SearchRect, tol: float = 1e-10) -> ZeroSet:
    """Isolate every zero in the rectangle by quadrisection, polish by Newton."""
    Fp = F.derivative()
    Fpp = Fp.derivative()
    box, _ = _guarded_box(F, rect)
    total = _certified_winding(F, Fp, box)
    floor = 100.0 * tol

    found: list = []

    def resolve_cluster(b, count):
        x0, x1, y0, y1 = b
        z0 = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        z = _newton_multiple(F, Fp, Fpp, z0, tol, b)
        if z is not None:
            eps = max(20.0 * tol, 1e-9)
            tiny = (z.real - eps, z.real + eps, z.imag - eps, z.imag + eps)
            try:
                if _certified_winding(F, Fp, tiny) == count:
                    found.append((z, count))
                    return
            except (NonIntegerWindingError, ZeroDivisionError):
                pass
        raise ClusterUnresolvedError(
            f"cell {b} holds {count} zeros below the subdivision floor")

    def process(b, count):
        x0, x1, y0, y1 = b
        diam = math.hypot(x1 - x0, y1 - y0)
        if count == 0:
            return
        if count == 1:
            z0 = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
            z = _newton(F, Fp, z0, tol, b)
            if z is not None and _in_box(z, b, pad=0.05 * diam):
                found.append((z, 1))
                return
            # Newton escaped or failed: tighten the cell first.
        if diam < floor:
            resolve_cluster(b, count)
            return
        xs = _split_coord(F, x0, x1, y0, y1, vertical=True)
        ys = _split_coord(F, y0, y1, x0, x1, vertical=False)
        children = [
            (x0, xs, y0, ys), (xs, x1, y0, ys),
            (x0, xs, ys, y1), (xs, x1, ys, y1),
        ]
        counts = [_certified_winding(F, Fp, c) for c in children]
        if sum(counts) != count:
            raise NonIntegerWindingError(
                f"child counts {counts} do not sum to parent count {count}")
        for c, n in zip(children, counts):
            process(c, n)

    process(box, total)

    records = []
    for z, mult in sorted(found, key=lambda p: (p[0].real, p[0].imag)):
        records.append(ZeroRecord(z, mult, abs(F(z))))
    zs = ZeroSet(tuple(records), rect, total)
    if sum(r.multiplicity for r in records) != total:
        raise ClusterUnresolvedError("multiplicity total does not match winding count")
    return zs


# -- set comparison and structure checks ------------------------------------

@dataclass(frozen=True)
class CompareReport:
    min_distance: float
    common: tuple
    delta: float

    @property
    def has_common(self) -> bool:
        return bool(self.common)

    def to_json(self):
        return {
            "min_distance": self.min_distance,
            "delta": self.delta,
            "common": [
                {"z1_re": a.real, "z1_im": a.imag,
                 "z2_re": b.real, "z2_im": b.imag, "distance": d}
                for a, b, d in self.common
            ],
        }


def compare_zero_sets(z1: ZeroSet, z2: ZeroSet, delta: float) -> CompareReport:
    """Pairs of zeros closer than delta; empty list certifies disjointness."""
    best = math.inf
    common = []
    for r1 in z1.zeros:
        for r2 in z2.zeros:
            d = abs(r1.z - r2.z)
            best = min(best, d)
            if d <= delta:
                common.append((r1.z, r2.z, d))
    return CompareReport(best, tuple(common), delta)


@dataclass(frozen=True)
class StructureFlags:
    no_real_zeros: bool
    no_conjugate_pairs: bool

    def to_json(self):
        return {"no_real_zeros": self.no_real_zeros,
                "no_conjugate_pairs": self.no_conjugate_pairs}


def structure_checks(zs: ZeroSet, axis_tol: float = 1e-7) -> StructureFlags:
    pts = zs.points()
    no_real = all(abs(z.imag) > axis_tol for z in pts)
    no_pairs = True
    for i, z in enumerate(pts):
        if abs(z.imag) <= axis_tol:
            continue
        for w in pts[i + 1:]:
            if abs(w - z.conjugate()) <= axis_tol:
                no_pairs = False
    return StructureFlags(no_real, no_pairs)


# -- Bessel reference oracle ------------------------------------------------

def bessel_reference(n: int, x_max: float) -> list:
    """Positive zeros of J_{n+1/2} up to x_max, via the spherical form.

    Spherical j_0 has zeros at k*pi; zeros of successive orders interlace,
    so each level is bracketed between consecutive zeros of the previous
    one and refined with Brent's method.
    """
    from scipy.optimize import brentq
    from scipy.special import spherical_jn

    if not (0 <= n <= 20):
        raise ValueError("order n must be in [0, 20]")
    if not (0 < x_max <= 200):
        raise ValueError("x_max must be in (0, 200]")
    upper = x_max + (n + 2) * math.pi
    zeros = [k * math.pi for k in range(1, int(upper / math.pi) + 2)]
    for order in range(1, n + 1):
        f = lambda x: spherical_jn(order, x)
        zeros = [
            brentq(f, lo, hi, xtol=1e-13, rtol=8.9e-16)
            for lo, hi in zip(zeros[:-1], zeros[1:])
        ]
    return [z for z in zeros if z <= x_max]
