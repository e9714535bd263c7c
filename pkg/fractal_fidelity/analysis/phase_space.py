"""
Husimi distributions and fractal-dimension tomography of the (theta, n) torus

Grid cells of a G_theta x G_n partition are centred at

    theta_i = 2 pi (2i + 1) / (2 G_theta),   n_j = N (2j + 1) / (2 G_n) - N/2

so grids whose resolutions differ by an odd factor share cell centres exactly.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from fractal_fidelity.analysis.dimension import analyze_series
from fractal_fidelity.analysis.fidelity import compute_fidelity_series
from fractal_fidelity.circuits.floquet_circuit import build_floquet_circuit
from fractal_fidelity.circuits.imperfections import sample_imperfections
from fractal_fidelity.dynamics.classical import island_weight
from fractal_fidelity.dynamics.floquet import to_momentum
from fractal_fidelity.dynamics.sawtooth import MapParams
from fractal_fidelity.dynamics.states import (
    MOMENTUM,
    GaussianPacketSpec,
    StateVector,
    gaussian_packet,
)
from fractal_fidelity.utils.errors import FractalFidelityError, InvalidConfigError
from fractal_fidelity.utils.logger import setup_logger
from fractal_fidelity.utils.seeding import derive_seed

logger = setup_logger(__name__)

TWO_PI = 2.0 * math.pi
MIN_GRID = 2
MAX_GRID = 64
SEED_POLICIES = ("shared", "per_cell")
# Recommended colour map for rendering D grids and Husimi densities (low -> high)
COLOR_MAP = "blue -> yellow -> red (e.g. matplotlib 'jet' or 'turbo')"


def theta_centers(G: int) -> np.ndarray:
    return TWO_PI * ((2 * np.arange(G) + 1) / (2 * G))


def n_centers(G: int, N: int) -> np.ndarray:
    return N * ((2 * np.arange(G) + 1) / (2 * G)) - N / 2


@dataclass(frozen=True, eq=False)
class HusimiGrid:
    """Husimi density on cell centres; values integrate to 1 over the torus"""

    theta: np.ndarray
    n: np.ndarray
    values: np.ndarray
    raw: np.ndarray
    N: int

    @property
    def cell_area(self) -> float:
        return (TWO_PI / len(self.theta)) * (self.N / len(self.n))

    def peak(self) -> Tuple[int, int]:
        i, j = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        return int(i), int(j)

    def metadata(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "G_theta": len(self.theta),
            "G_n": len(self.n),
            "theta_centers": self.theta.tolist(),
            "n_centers": self.n.tolist(),
            "normalization": "sum(values) * cell_area = 1; raw overlaps |<coherent|psi>|^2 kept",
            "coherent_width": "sigma_n = sqrt(N / (4 pi))",
            "color_map": COLOR_MAP,
        }


def husimi(state: StateVector, params: MapParams, G_theta: int, G_n: int) -> HusimiGrid:
    """
    Project a state on minimal-uncertainty packets centred on a G_theta x G_n grid

    A packet centred at (theta0, n0) is the theta0 = 0 packet times exp(-i n theta0), so
    one envelope per momentum centre serves the whole theta row.

    Args:
        state: State in either representation
        params: Map parameters
        G_theta, G_n: Grid resolution, at least 2 each

    Returns:
        HusimiGrid of shape (G_theta, G_n)
    """
    if G_theta < MIN_GRID or G_n < MIN_GRID:
        raise InvalidConfigError(f"Husimi grids need at least {MIN_GRID} cells per axis")
    psi = state if state.representation == MOMENTUM else to_momentum(state)
    if psi.dimension != params.N:
        raise ValueError(f"State dimension {psi.dimension} does not match N={params.N}")

    thetas = theta_centers(G_theta)
    ns = n_centers(G_n, params.N)
    envelopes = np.stack(
        [gaussian_packet(params, GaussianPacketSpec(0.0, float(n0))).amplitudes for n0 in ns]
    )
    momenta = params.momenta()
    rotations = np.exp(1j * np.outer(thetas, momenta))
    overlaps = rotations @ (np.conj(envelopes) * psi.amplitudes[None, :]).T
    raw = np.abs(overlaps) ** 2

    total = float(raw.sum())
    area = (TWO_PI / G_theta) * (params.N / G_n)
    values = raw / (total * area) if total > 0 else raw
    return HusimiGrid(thetas, ns, values, raw, params.N)


@dataclass(frozen=True)
class CellResult:
    """Fractal dimension of the fidelity started from one cell centre"""

    i: int
    j: int
    theta0: float
    n0: float
    seed: int
    D: float
    stderr: Optional[float] = None
    r2: Optional[float] = None
    fit_window: Optional[Tuple[float, float]] = None
    t_star: Optional[int] = None
    saturated: Optional[bool] = None
    t_max: int = 0
    flags: Tuple[str, ...] = ()
    series: Optional[Tuple[float, ...]] = None

    @property
    def reliable(self) -> bool:
        return not math.isnan(self.D) and "unreliable_fit" not in self.flags

    def to_record(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "j": self.j,
            "theta0": self.theta0,
            "n0": self.n0,
            "seed": self.seed,
            "D": self.D,
            "stderr": self.stderr,
            "r2": self.r2,
            "l_min": None if self.fit_window is None else self.fit_window[0],
            "l_max": None if self.fit_window is None else self.fit_window[1],
            "t_star": self.t_star,
            "saturated": self.saturated,
            "t_max": self.t_max,
            "flags": ";".join(self.flags),
        }


def cell_seed(master_seed: int, policy: str, n_q: int, theta0: float, n0: float) -> int:
    """Disorder seed of one cell; cells keyed by their centre so coinciding centres agree"""
    if policy == "shared":
        return derive_seed(master_seed, "realization", n_q, 0)
    if policy == "per_cell":
        return derive_seed(master_seed, "cell", n_q, float(theta0), float(n0))
    raise InvalidConfigError(f"Unknown seed policy {policy!r}; expected one of {SEED_POLICIES}")


def evaluate_cell(
    params: MapParams,
    epsilon: float,
    t_max: int,
    theta0: float,
    n0: float,
    seed: int,
    window: Optional[Tuple[float, float]] = None,
    level_spacing: float = 0.0,
    index: Tuple[int, int] = (0, 0),
    keep_series: bool = False,
) -> CellResult:
    """
    Fidelity series and auto-windowed dimension for a packet centred at (theta0, n0)

    Soft failures (no saturation, degenerate window, failed fit) come back as flags
    with D = NaN; nothing here raises for a well-formed cell.
    """
    config = sample_imperfections(params.n_q, epsilon, seed, level_spacing)
    series = compute_fidelity_series(
        params,
        config,
        GaussianPacketSpec(float(theta0), float(n0)),
        t_max,
        circuit=build_floquet_circuit(params),
    )
    analysis = analyze_series(series.values, window=window, epsilon=epsilon, n_q=params.n_q)
    fit = analysis.fit
    transient = analysis.transient
    return CellResult(
        i=index[0],
        j=index[1],
        theta0=float(theta0),
        n0=float(n0),
        seed=seed,
        D=analysis.D,
        stderr=None if fit is None else fit.stderr,
        r2=None if fit is None else fit.r2,
        fit_window=analysis.window.bounds(),
        t_star=None if transient is None else transient.t_star,
        saturated=None if transient is None else transient.saturated,
        t_max=t_max,
        flags=tuple(analysis.flags),
        series=tuple(series.values.tolist()) if keep_series else None,
    )


def _cell_task(job: Dict[str, Any]) -> CellResult:
    """Picklable per-cell job; hard failures are recorded as a flagged cell"""
    try:
        return evaluate_cell(**job)
    except (FractalFidelityError, ValueError) as e:
        logger.error(f"Cell {job['index']} failed: {e}")
        return CellResult(
            i=job["index"][0],
            j=job["index"][1],
            theta0=job["theta0"],
            n0=job["n0"],
            seed=job["seed"],
            D=math.nan,
            t_max=job["t_max"],
            flags=(f"failed: {e}",),
        )


@dataclass(frozen=True, eq=False)
class TomographyGrid:
    """G x G fractal-dimension map over initial conditions"""

    params: MapParams
    epsilon: float
    t_max: int
    G: int
    seed_policy: str
    master_seed: int
    cells: List[CellResult] = field(default_factory=list)

    @property
    def D(self) -> np.ndarray:
        grid = np.full((self.G, self.G), np.nan)
        for cell in self.cells:
            grid[cell.i, cell.j] = cell.D
        return grid

    @property
    def failed(self) -> List[CellResult]:
        return [c for c in self.cells if any(f.startswith("failed") for f in c.flags)]

    def island_weights(self, samples: int = 5, steps: int = 20000) -> np.ndarray:
        """Classical island weight of every cell, from bounded vs diffusive orbits"""
        cell_theta = TWO_PI / self.G
        cell_n = self.params.N / self.G
        weights = np.empty((self.G, self.G))
        for cell in self.cells:
            weights[cell.i, cell.j] = island_weight(
                self.params.K,
                cell.theta0,
                cell.n0,
                cell_theta,
                cell_n,
                self.params.N,
                samples=samples,
                steps=steps,
            )
        return weights

    def metadata(self) -> Dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "epsilon": self.epsilon,
            "t_max": self.t_max,
            "G": self.G,
            "seed_policy": self.seed_policy,
            "master_seed": self.master_seed,
            "theta_centers": theta_centers(self.G).tolist(),
            "n_centers": n_centers(self.G, self.params.N).tolist(),
            "failed_cells": len(self.failed),
            "color_map": COLOR_MAP,
        }


MapFn = Callable[[Callable[[Dict[str, Any]], CellResult], Iterable[Dict[str, Any]]], Iterable]


def tomography_scan(
    params: MapParams,
    epsilon: float,
    t_max: int,
    G: int,
    seed_policy: str = "shared",
    master_seed: int = 0,
    window: Optional[Tuple[float, float]] = None,
    level_spacing: float = 0.0,
    keep_series: bool = False,
    map_fn: Optional[MapFn] = None,
) -> TomographyGrid:
    """
    Fractal dimension of the fidelity for every cell of a G x G initial-condition grid

    Args:
        params: Map parameters
        epsilon: Imperfection strength
        t_max: Series length per cell
        G: Grid resolution, 2..64
        seed_policy: "shared" (one disorder realization per scan) or "per_cell"
        master_seed: Run seed
        window: Fit window override applied to every cell
        keep_series: Retain each cell's F(t)
        map_fn: Order-preserving map used to schedule cells (builtin map by default)

    Returns:
        TomographyGrid with cells in row-major order
    """
    if not MIN_GRID <= G <= MAX_GRID:
        raise InvalidConfigError(f"G must lie in [{MIN_GRID}, {MAX_GRID}], got {G}")
    thetas = theta_centers(G)
    ns = n_centers(G, params.N)
    jobs = [
        {
            "params": params,
            "epsilon": epsilon,
            "t_max": t_max,
            "theta0": float(thetas[i]),
            "n0": float(ns[j]),
            "seed": cell_seed(master_seed, seed_policy, params.n_q, thetas[i], ns[j]),
            "window": window,
            "level_spacing": level_spacing,
            "index": (i, j),
            "keep_series": keep_series,
        }
        for i in range(G)
        for j in range(G)
    ]
    logger.info(f"Tomography scan: {G}x{G} cells, n_q={params.n_q}, K={params.K}, eps={epsilon}")
    cells = list((map_fn or map)(_cell_task, jobs))
    return TomographyGrid(params, epsilon, t_max, G, seed_policy, master_seed, cells)
