"""Quadrature discretization of the realization operators.

The operators A, B_k, T and the rank-one product N_2 N_1* are replaced by
matrices on a midpoint-rule grid (order 2, robust across the kernel's
diagonal kink).  The structural identity

    T B_1 - B_2* T = N_2 N_1*

then holds up to discretization error, whose decay under grid refinement
is the quantity reported here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import BezoutKernel, MFunctions, NormalizedPair


@dataclass(frozen=True)
class Grid:
    nodes: np.ndarray
    weights: np.ndarray
    a: float

    @property
    def n(self) -> int:
        return len(self.nodes)

    @classmethod
    def uniform(cls, n: int, a) -> "Grid":
        """Composite midpoint rule: interior nodes, weights summing to a."""
        a = float(a)
        h = a / n
        nodes = (np.arange(n) + 0.5) * h
        return cls(nodes, np.full(n, h), a)


@dataclass(frozen=True)
class DiscretizedOperator:
    label: str
    matrix: np.ndarray
    grid: Grid


def kernel_matrix(k: BezoutKernel, grid: Grid) -> np.ndarray:
    """Nystrom matrix of T: T[i, j] = c U(x_i, t_j) w_j."""
    x = grid.nodes[:, None]
    t = grid.nodes[None, :]
    return complex(k.c) * k.u_float(x, t) * grid.weights[None, :]


def _cumulative_matrix(grid: Grid) -> np.ndarray:
    """Midpoint discretization of f -> i * int_0^x f(t) dt."""
    n = grid.n
    m = np.tril(np.ones((n, n)), -1) * grid.weights[None, :]
    m += np.diag(grid.weights) * 0.5
    return 1j * m


def _poly_nodes(p, nodes: np.ndarray) -> np.ndarray:
    return np.asarray(p.eval_float(nodes), dtype=complex)


def discretize_all(
    pair: NormalizedPair,
    k: BezoutKernel,
    mf: MFunctions,
    grid: Grid,
) -> dict:
    """All discretized operators keyed by label."""
    a = float(pair.a)
    t_mat = kernel_matrix(k, grid)
    a_mat = _cumulative_matrix(grid)
    ones = np.ones(grid.n, dtype=complex)
    ops = {"T": t_mat, "A": a_mat}
    for label, phi in (("B1", mf.phi1), ("B2", mf.phi2)):
        # P_k* f = -i int_0^a f(t) conj(Phi_k(t)) dt
        row = -1j * grid.weights * np.conj(_poly_nodes(phi, grid.nodes))
        ops[label] = a_mat + np.outer(ones, row)
    scale = complex(mf.alpha.conjugate() + mf.beta)
    m2_nodes = _poly_nodes(mf.m2, grid.nodes)
    n2 = -1j * scale * m2_nodes
    n1 = np.conj(_poly_nodes(mf.m2, a - grid.nodes))
    ops["N1"] = n1.reshape(-1, 1)
    ops["N2"] = n2.reshape(-1, 1)
    # N_1* f = int f conj(N_1) -> row of weights * conj(N_1)
    ops["N2N1star"] = np.outer(n2, grid.weights * np.conj(n1))
    return {
        label: DiscretizedOperator(label, m, grid) for label, m in ops.items()
    }


def _adjoint(op: np.ndarray, grid: Grid) -> np.ndarray:
    """L^2(0,a) adjoint of a Nystrom matrix: W^{-1} M^H W."""
    w = grid.weights
    return (op.conj().T * w[None, :]) / w[:, None]


def identity_residual(ops: dict, norm: str = "fro") -> float:
    """Norm of T B_1 - B_2* T - N_2 N_1* on the common grid."""
    grid = ops["T"].grid
    t = ops["T"].matrix
    b1 = ops["B1"].matrix
    b2s = _adjoint(ops["B2"].matrix, grid)
    res = t @ b1 - b2s @ t - ops["N2N1star"].matrix
    if norm == "fro":
        return float(np.linalg.norm(res, "fro"))
    if norm == "spectral":
        return float(np.linalg.norm(res, 2))
    raise ValueError(f"unknown norm {norm!r}")


def convergence_study(
    pair: NormalizedPair,
    k: BezoutKernel,
    mf: MFunctions,
    sizes=(32, 64, 128, 256),
    norm: str = "fro",
) -> dict:
    """Residuals and refinement ratios over a sequence of grid sizes."""
    residuals = []
    for n in sizes:
        ops = discretize_all(pair, k, mf, Grid.uniform(n, pair.a))
        residuals.append(identity_residual(ops, norm))
    ratios = [
        residuals[i] / residuals[i + 1] if residuals[i + 1] != 0 else float("inf")
        for i in range(len(residuals) - 1)
    ]
    return {"norm": norm, "sizes": list(sizes),
            "residuals": residuals, "ratios": ratios}


def apply_to_exponential(k: BezoutKernel, z: complex, grid: Grid) -> float:
    """Weighted grid 2-norm of T applied to x -> e^{izx}."""
    t_mat = kernel_matrix(k, grid)
    vec = t_mat @ np.exp(1j * z * grid.nodes)
    return float(np.sqrt(np.sum(grid.weights * np.abs(vec) ** 2)))


def operator_norm_bound(ops: dict) -> float:
    """L^2 operator norm of the discretized T (compare against |c| * int h)."""
    grid = ops["T"].grid
    s = np.sqrt(grid.weights)
    sym = ops["T"].matrix * (s[:, None] / s[None, :])
    return float(np.linalg.norm(sym, 2))
