"""Diagnostics for orbits of the prey-predator map.

Covers the monotone orbit functional phi = x1^L1 * x2^L2 * x3^L3 (computed
in log domain throughout), its one-step multiplier psi, the sum-of-squares
form that controls psi's distance from 1, the six rescaled-coordinate
sectors with their cyclic transition audit, iterated running averages of
every order with their coefficient table, sojourn statistics in vertex
neighborhoods, regime classification from the parameter sign pattern, and
finite-horizon convergence / persistence / limit-set estimates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Parameters, SpeedFunction, Trajectory, _growth_terms
from .errors import OrderOverflow, SizeLimit, StrideTooCoarse
from .simplex import SimplexPoint

_NEG_INF = float("-inf")

# Chains of the six sectors: sector k holds points whose rescaled
# coordinates y_i = x_i / L_i satisfy y_first >= y_mid >= y_last. Ties are
# resolved by this fixed priority order, making the classifier total.
SECTOR_ORDERINGS = {
    1: (1, 2, 3),
    2: (1, 3, 2),
    3: (3, 1, 2),
    4: (3, 2, 1),
    5: (2, 3, 1),
    6: (2, 1, 3),
}

REGIME_VERTEX = "vertex_convergence"
REGIME_CYCLING = "non_ergodic_cycling"
REGIME_INTERIOR = "interior_convergence"

MAX_CESARO_ORDER = 32
COEFFICIENT_N_LIMIT = 100_000
COEFFICIENT_K_LIMIT = 8


# ---------------------------------------------------------------------------
# Monotone orbit functional and friends
# ---------------------------------------------------------------------------

def log_phi(p: SimplexPoint, params: Parameters) -> float:
    """log of x1^L1 * x2^L2 * x3^L3; -inf on the boundary."""
    l1, l2, l3 = params.lambdas
    g1, g2, g3 = p.log_coords()
    if g1 == _NEG_INF or g2 == _NEG_INF or g3 == _NEG_INF:
        return _NEG_INF
    return math.fsum((l1 * g1, l2 * g2, l3 * g3))


def lyapunov_phi(p: SimplexPoint, params: Parameters) -> float:
    """x1^L1 * x2^L2 * x3^L3, maximal exactly at the interior fixed point.

    Zero iff the point lies on the boundary. Evaluated through the log
    domain so that products of tiny powers cannot underflow pairwise.
    """
    v = log_phi(p, params)
    return 0.0 if v == _NEG_INF else math.exp(v)


def psi(p: SimplexPoint, params: Parameters, speed: SpeedFunction) -> float:
    """One-step multiplier of phi: phi(step(p)) = phi(p) * psi(p).

    Equals the product of the three update factors raised to the lambda
    weights; <= 1 everywhere when all parameters are positive, >= 1 under
    all-negative parameters with the speed bounded by (5/4) * min L_i/L_j.
    """
    x1, x2, x3 = p.coords
    fval = speed(x1, x2, x3)
    g1, g2, g3 = _growth_terms(x1, x2, x3, params.a, params.b, params.c)
    l1, l2, l3 = params.lambdas
    acc = 0.0
    for lam, g in ((l1, g1), (l2, g2), (l3, g3)):
        t = g * fval
        if t <= -1.0:
            return 0.0
        acc += lam * math.log1p(t)
    return math.exp(acc)


def quad_form(p: SimplexPoint, params: Parameters) -> float:
    """Sum-of-squares form vanishing exactly at the interior fixed point.

    (|a^2 b|^(1/3) x1 - |c^2 a|^(1/3) x2)^2 + (|a^2 b|^(1/3) x1 -
    |b^2 c|^(1/3) x3)^2 + (|c^2 a|^(1/3) x2 - |b^2 c|^(1/3) x3)^2. Controls
    how far psi sits from 1.
    """
    a, b, c = params.a, params.b, params.c
    ca = abs(a * a * b) ** (1.0 / 3.0)
    cb = abs(c * c * a) ** (1.0 / 3.0)
    cc = abs(b * b * c) ** (1.0 / 3.0)
    x1, x2, x3 = p.coords
    d12 = ca * x1 - cb * x2
    d13 = ca * x1 - cc * x3
    d23 = cb * x2 - cc * x3
    return d12 * d12 + d13 * d13 + d23 * d23


# ---------------------------------------------------------------------------
# Sectors
# ---------------------------------------------------------------------------

def sector(p: SimplexPoint, params: Parameters) -> int:
    """Sector index 1..6 of the rescaled coordinates, ties to the lowest index."""
    l1, l2, l3 = params.lambdas
    if p.in_log_domain:
        g = p.logs
        y = (g[0] - math.log(l1), g[1] - math.log(l2), g[2] - math.log(l3))
    else:
        y = (p.coords[0] / l1, p.coords[1] / l2, p.coords[2] / l3)
    for idx in range(1, 7):
        hi, mid, lo = SECTOR_ORDERINGS[idx]
        if y[hi - 1] >= y[mid - 1] >= y[lo - 1]:
            return idx
    raise AssertionError(f"unclassifiable ratios {y}")  # pragma: no cover


def _sector_array_from_ratios(y: np.ndarray) -> np.ndarray:
    conds = []
    for idx in range(1, 7):
        hi, mid, lo = SECTOR_ORDERINGS[idx]
        conds.append((y[:, hi - 1] >= y[:, mid - 1]) & (y[:, mid - 1] >= y[:, lo - 1]))
    out = np.select(conds, range(1, 7), default=0).astype(np.int8)
    if (out == 0).any():  # pragma: no cover - orderings are exhaustive
        raise AssertionError("unclassified sector rows")
    return out


def log_phi_array(traj: Trajectory) -> np.ndarray:
    """Per-sample log phi values of a trajectory."""
    logs = traj.log_coords_array()
    lam = np.asarray(traj.params.lambdas)
    out = logs @ lam
    # rows touching the boundary: -inf * lam + finite stays -inf, but an
    # exact-zero row paired with +0 weights cannot occur (lambdas > 0)
    return out


def sector_array(traj: Trajectory) -> np.ndarray:
    # same representation dispatch as the scalar classifier: log-domain runs
    # compare shifted logs, linear runs compare the ratios themselves
    if traj.logs is not None:
        return _sector_array_from_ratios(traj.logs - np.log(traj.params.lambdas))
    return _sector_array_from_ratios(traj.coords / np.asarray(traj.params.lambdas))


_REGION_INTERIOR = 0


def _region_code_array(coords: np.ndarray, zero_tol: float) -> np.ndarray:
    """Region per row: 0 interior, i vertex, 10*i+j face (i<j 1-based)."""
    out = np.zeros(len(coords), dtype=np.int8)
    vert = coords >= 1.0 - 2.0 * zero_tol
    alive = coords >= zero_tol
    for i in (3, 2, 1):  # ascending priority; vertex 1 wins ties
        out[vert[:, i - 1]] = i
    face_codes = {(1, 2): 12, (1, 3): 13, (2, 3): 23}
    not_vertex = ~vert.any(axis=1)
    for (i, j), code in face_codes.items():
        k = ({1, 2, 3} - {i, j}).pop()
        m = not_vertex & alive[:, i - 1] & alive[:, j - 1] & ~alive[:, k - 1]
        out[m] = code
    only_one = not_vertex & (alive.sum(axis=1) == 1)
    for i in (1, 2, 3):
        out[only_one & alive[:, i - 1]] = i
    return out


def attach_observables(traj: Trajectory, tags) -> None:
    """Compute requested per-sample observables and store them on the trajectory."""
    for tag in tags:
        if tag == "phi":
            lp = log_phi_array(traj)
            traj.observables["log_phi"] = lp
            with np.errstate(over="ignore"):
                traj.observables["phi"] = np.exp(lp)
        elif tag == "sector":
            traj.observables["sector"] = sector_array(traj)
        elif tag == "region":
            traj.observables["region"] = _region_code_array(traj.coords, 1e-12)
        else:
            raise ValueError(f"unknown observable {tag!r}")


# ---------------------------------------------------------------------------
# Iterated running averages (streaming) and their coefficient table
# ---------------------------------------------------------------------------

class CesaroState:
    """Streaming state of the running averages c_0..c_K at the current step.

    c_0 is the orbit itself; c_{k+1}^(n) averages c_k^(0..n). One push costs
    O(K): c_k^(n) = (n * c_k^(n-1) + c_{k-1}^(n)) / (n + 1). Push order
    matters; the state is mutated in place and not thread-safe.
    """

    __slots__ = ("max_order", "n", "_values")

    def __init__(self, max_order: int):
        if not 0 <= max_order <= MAX_CESARO_ORDER:
            raise OrderOverflow(
                f"max_order {max_order} outside [0, {MAX_CESARO_ORDER}]"
            )
        self.max_order = max_order
        self.n = -1  # step index of the latest push
        self._values = [[0.0, 0.0, 0.0] for _ in range(max_order + 1)]

    def push(self, coords) -> "CesaroState":
        x1, x2, x3 = coords
        n = self.n + 1
        vals = self._values
        v0 = vals[0]
        v0[0] = x1
        v0[1] = x2
        v0[2] = x3
        inv = 1.0 / (n + 1)
        prev = v0
        for k in range(1, self.max_order + 1):
            vk = vals[k]
            vk[0] = (n * vk[0] + prev[0]) * inv
            vk[1] = (n * vk[1] + prev[1]) * inv
            vk[2] = (n * vk[2] + prev[2]) * inv
            prev = vk
        self.n = n
        return self

    def value(self, k: int) -> tuple[float, float, float]:
        if not 0 <= k <= self.max_order:
            raise OrderOverflow(f"order {k} outside [0, {self.max_order}]")
        if self.n < 0:
            raise ValueError("no values pushed yet")
        return tuple(self._values[k])


def cesaro_push(state: CesaroState, point) -> CesaroState:
    """Feed the next orbit point (SimplexPoint or coordinate triple)."""
    coords = point.coords if isinstance(point, SimplexPoint) else point
    return state.push(coords)


def cesaro_coefficient_rows(max_order: int, n: int) -> list[np.ndarray]:
    """Rows a_{., k, n} for every k <= max_order.

    Built by the recursion a_{i,0,n} = [i == n],
    a_{i,k+1,n} = (1/(n+1)) * sum_{j=i..n} a_{i,k,j}, carried progressively
    in j so memory stays O(K * n). Test-scale utility.
    """
    if n < 0 or max_order < 0:
        raise ValueError("order and n must be non-negative")
    if n > COEFFICIENT_N_LIMIT or max_order > COEFFICIENT_K_LIMIT:
        raise SizeLimit(
            f"coefficient table k={max_order}, n={n} exceeds supported scale "
            f"({COEFFICIENT_K_LIMIT}, {COEFFICIENT_N_LIMIT})"
        )
    rows: list[np.ndarray] = [np.zeros(n + 1)]
    rows[0][n] = 1.0
    if max_order == 0:
        return rows
    cums = [np.zeros(n + 1) for _ in range(max_order)]
    latest = [None] * (max_order + 1)
    for j in range(n + 1):
        cums[0][j] += 1.0  # order-0 row at j is the indicator of i == j
        prev_cum = cums[0]
        for k in range(1, max_order + 1):
            row = prev_cum[: j + 1] / (j + 1)
            if k < max_order:
                cums[k][: j + 1] += row
                prev_cum = cums[k]
            if j == n:
                full = np.zeros(n + 1)
                full[: j + 1] = row
                latest[k] = full
    rows.extend(latest[1:])
    return rows


def cesaro_coefficients(k: int, n: int) -> np.ndarray:
    """The weight row expressing c_k^(n) over the orbit points x^(0..n)."""
    return cesaro_coefficient_rows(k, n)[k]


def tail_mass(k: int, n: int, eps: float) -> float:
    """Total coefficient weight on indices i >= floor(eps * n).

    Tends to 1 as n grows then eps shrinks; reported as a diagnostic of how
    much the order-k average is driven by the recent orbit.
    """
    row = cesaro_coefficients(k, n)
    i0 = math.floor(eps * n)
    return float(np.sum(row[i0:]))


# ---------------------------------------------------------------------------
# Sector cycle audit
# ---------------------------------------------------------------------------

@dataclass
class SectorAudit:
    """Outcome of auditing one-step sector transitions under a phi filter."""

    gamma: float
    audited_samples: int
    visits: dict
    step_counts: dict
    transitions: dict
    violations: list
    degenerate_filter: bool

    @property
    def violation_count(self) -> int:
        return len(self.violations)


def _legal(i: int, j: int) -> bool:
    return j == i or j == (i % 6) + 1


def _sectors_and_logphi(traj: Trajectory):
    sec = traj.observables.get("sector")
    if sec is None:
        sec = sector_array(traj)
    lp = traj.observables.get("log_phi")
    if lp is None:
        lp = log_phi_array(traj)
    return sec, lp


def sector_cycle_audit(traj: Trajectory, gamma: float) -> SectorAudit:
    """Audit sector transitions among samples with phi <= gamma.

    Only pairs of consecutive recorded steps both passing the filter are
    judged; a transition other than staying put or advancing one sector
    cyclically is a violation. Requires stride-1 samples (a coarser stride
    would fake multi-step transitions as single steps).
    """
    if traj.stride != 1:
        raise StrideTooCoarse(f"audit needs stride 1, trajectory has stride {traj.stride}")
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    sec, lp = _sectors_and_logphi(traj)
    mask = lp <= math.log(gamma)
    idx = np.nonzero(mask)[0]
    visits = {k: 0 for k in range(1, 7)}
    step_counts = {k: 0 for k in range(1, 7)}
    transitions: dict = {}
    violations: list = []
    if idx.size:
        sel = sec[idx]
        vals, counts = np.unique(sel, return_counts=True)
        for v, cnt in zip(vals, counts):
            step_counts[int(v)] = int(cnt)
        entry_mask = np.empty(idx.size, dtype=bool)
        entry_mask[0] = True
        entry_mask[1:] = sel[1:] != sel[:-1]
        vals, counts = np.unique(sel[entry_mask], return_counts=True)
        for v, cnt in zip(vals, counts):
            visits[int(v)] = int(cnt)
        pair_mask = mask[:-1] & mask[1:]
        pk = np.nonzero(pair_mask)[0]
        moved = pk[sec[pk] != sec[pk + 1]]
        for k in moved:
            i, j = int(sec[k]), int(sec[k + 1])
            transitions[(i, j)] = transitions.get((i, j), 0) + 1
            if not _legal(i, j):
                violations.append((int(traj.steps[k]), i, j))
    degenerate = bool(idx.size) and bool(np.all(np.isneginf(lp[idx])))
    return SectorAudit(
        gamma=gamma,
        audited_samples=int(idx.size),
        visits=visits,
        step_counts=step_counts,
        transitions=transitions,
        violations=violations,
        degenerate_filter=degenerate,
    )


def estimate_gamma0(traj: Trajectory, levels: int = 60) -> float | None:
    """Empirical threshold for the cyclic-transition guarantee.

    The guarantee holds below some positive phi level that is not
    constructive; this scans the dyadic grid max_phi * 2^-m and returns the
    largest value whose audit shows zero illegal transitions (cleanliness is
    monotone: smaller gamma audits fewer pairs). None when even the smallest
    grid value is dirty or no positive phi exists.
    """
    _, lp = _sectors_and_logphi(traj)
    finite = lp[np.isfinite(lp)]
    if finite.size == 0:
        return None
    top = float(np.max(finite))
    for m in range(levels + 1):
        gamma = math.exp(top) * 0.5**m
        if gamma <= 0.0:
            break
        if sector_cycle_audit(traj, gamma).violation_count == 0:
            return gamma
    return None


# ---------------------------------------------------------------------------
# Sojourns, regimes, convergence, persistence, limit sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Sojourn:
    vertex: int
    start_step: int
    end_step: int
    length: int
    log_phi_at_start: float


def sojourn_stats(traj: Trajectory, eps: float) -> dict[int, list[Sojourn]]:
    """Maximal runs of consecutive samples inside each vertex neighborhood.

    A sample is in the neighborhood of vertex i when x_i >= 1 - eps. Meant
    for stride-1 trajectories; with coarser samples the runs are reported in
    recorded steps and may merge separate excursions.
    """
    lp = traj.observables.get("log_phi")
    if lp is None:
        lp = log_phi_array(traj)
    out: dict[int, list[Sojourn]] = {1: [], 2: [], 3: []}
    for i in (1, 2, 3):
        inside = traj.coords[:, i - 1] >= 1.0 - eps
        if not inside.any():
            continue
        padded = np.concatenate(([False], inside, [False]))
        d = np.diff(padded.astype(np.int8))
        starts = np.nonzero(d == 1)[0]
        ends = np.nonzero(d == -1)[0] - 1
        for s, e in zip(starts, ends):
            out[i].append(
                Sojourn(
                    vertex=i,
                    start_step=int(traj.steps[s]),
                    end_step=int(traj.steps[e]),
                    length=int(e - s + 1),
                    log_phi_at_start=float(lp[s]),
                )
            )
    return out


@dataclass(frozen=True)
class RegimeReport:
    """Asymptotic regime implied by the sign pattern of (a, b, c)."""

    regime: str
    predicted_limit: SimplexPoint | None
    persistence: str
    description: str


def classify_regime(params: Parameters) -> RegimeReport:
    """Regime from the parameter signs.

    Mixed signs: every orbit converges to one vertex and no species
    persists. All positive: orbits cycle the boundary forever, every
    species keeps resurging (weak persistence) but also keeps crashing. All
    negative: interior orbits settle at the interior fixed point and all
    species persist strongly.
    """
    pattern = params.sign_pattern
    if pattern == "mixed":
        return RegimeReport(
            REGIME_VERTEX,
            None,
            "none",
            "all orbits approach a single vertex; at most one species survives",
        )
    if pattern == "positive":
        return RegimeReport(
            REGIME_CYCLING,
            None,
            "weak",
            "orbits cycle near the boundary with ever longer vertex sojourns; "
            "time averages of every order keep oscillating",
        )
    return RegimeReport(
        REGIME_INTERIOR,
        params.fixed_point,
        "strong",
        "interior orbits converge to the interior fixed point; all species persist",
    )


def detect_convergence(traj: Trajectory, tol: float, window: int) -> SimplexPoint | None:
    """Final point if the last `window` samples have max-norm diameter < tol.

    Returns None otherwise (including when fewer than `window` samples
    exist). Honest tolerances keep this None in the cycling regime, where
    the diameter stays large over full sector cycles.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    if len(traj) < window:
        return None
    tail = traj.coords[-window:]
    diam = float(np.max(tail.max(axis=0) - tail.min(axis=0)))
    if diam < tol:
        return traj.final
    return None


@dataclass(frozen=True)
class PersistenceReport:
    """Finite-horizon proxies for each species' liminf/limsup frequency.

    Estimates only: a finite run cannot certify persistence, merely hint at
    it. ``tail_min``/``tail_max`` are taken over the trailing window.
    """

    global_min: tuple[float, float, float]
    tail_min: tuple[float, float, float]
    tail_max: tuple[float, float, float]
    tail_start_step: int
    tail_fraction: float


def persistence_report(traj: Trajectory, tail_fraction: float = 0.1) -> PersistenceReport:
    count = len(traj)
    tail = max(2, int(count * tail_fraction))
    tail = min(tail, count)
    coords = traj.coords
    return PersistenceReport(
        global_min=tuple(float(v) for v in coords.min(axis=0)),
        tail_min=tuple(float(v) for v in coords[-tail:].min(axis=0)),
        tail_max=tuple(float(v) for v in coords[-tail:].max(axis=0)),
        tail_start_step=int(traj.steps[count - tail]),
        tail_fraction=tail_fraction,
    )


def cell_of(coords, grid: float) -> tuple[int, int]:
    """Barycentric grid cell of a point: floor of (x1, x2) over the grid size."""
    return (int(math.floor(coords[0] / grid)), int(math.floor(coords[1] / grid)))


def omega_limit_estimate(traj: Trajectory, burn_in: int, grid: float) -> frozenset:
    """Grid cells visited after the burn-in step: a crude limit-set proxy.

    In the cycling regime the hit set concentrates near the boundary; in the
    convergent regimes it shrinks to the cell of the limit.
    """
    if grid <= 0.0:
        raise ValueError("grid must be positive")
    mask = traj.steps >= burn_in
    pts = traj.coords[mask]
    cells = np.floor(pts[:, :2] / grid).astype(np.int64)
    return frozenset((int(i), int(j)) for i, j in np.unique(cells, axis=0))


def phi_decay_stats(traj: Trajectory, increase_tol: float = 1e-12) -> dict:
    """Summary of how phi moved along the run.

    Reports the empirical per-step geometric decay (mean log-phi change) and
    whether the sequence was non-increasing up to `increase_tol` per step,
    which is the testable finite-run face of monotonicity.
    """
    lp = traj.observables.get("log_phi")
    if lp is None:
        lp = log_phi_array(traj)
    finite = np.isfinite(lp)
    diffs = np.diff(lp[finite]) if finite.sum() >= 2 else np.array([])
    worst = float(diffs.max()) if diffs.size else 0.0
    return {
        "log_phi_start": float(lp[0]),
        "log_phi_final": float(lp[-1]),
        "mean_log_decay_per_step": float(diffs.mean()) if diffs.size else 0.0,
        "max_single_increase": worst,
        "non_increasing": bool(worst <= increase_tol),
        "finite_samples": int(finite.sum()),
    }
