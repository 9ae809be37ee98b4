"""Adaptive time integration, observable sampling, and steady-state detection.

The propagating method is a Dormand-Prince 5(4) embedded pair with the
standard accept/reject controller; the error norm mixes absolute and
relative tolerance over the 16 real state components, which share a common
[0, 1] scale.  Steps are additionally capped at tau/10 so the pulse
structure can never be skipped, and each recorded sample is checked against
the scenario's trace and positivity tolerances - violations abort the run
rather than being repaired.

A classical fixed-step fourth-order method with an identical sampling
contract is provided as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import IntegrationError, InsufficientDataError, InvalidParameterError, PhysicalityError
from .liouvillian import make_packed_rhs, pack_state, unpack_state
from .model import DensityMatrix, ObservableRecord, Scenario
from .observables import observable_record

__all__ = [
    "TrajectorySample",
    "IntegrationStats",
    "SteadySummary",
    "Trajectory",
    "integrate",
    "integrate_fixed_step",
    "detect_steady_state",
    "sample_times",
    "DEFAULT_STEADY_WINDOW",
    "DEFAULT_STEADY_TOL",
]

DEFAULT_STEADY_WINDOW = 5.0
DEFAULT_STEADY_TOL = 1e-4

# Dormand-Prince 5(4) tableau.  Fifth-order weights propagate; the last row
# of stage coefficients equals them (first-same-as-last), and E holds the
# difference to the embedded fourth-order weights.
_C = (0.2, 0.3, 0.8, 8.0 / 9.0, 1.0)
_A = (
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0),
)
_B = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0)
_E = (
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0


@dataclass(frozen=True)
class TrajectorySample:
    time: float
    state: DensityMatrix
    record: ObservableRecord


@dataclass(frozen=True)
class IntegrationStats:
    steps_accepted: int
    steps_rejected: int
    rhs_evaluations: int
    max_trace_error: float
    min_eigenvalue: float


@dataclass(frozen=True)
class SteadySummary:
    """Late-time values read from the final sample, plus the convergence verdict."""

    converged: bool
    time: float
    state: DensityMatrix
    record: ObservableRecord
    doublet_population: float
    doublet_purity: float
    abs_coherence_21: float
    max_delta: float


@dataclass(frozen=True)
class Trajectory:
    scenario: Scenario
    samples: tuple[TrajectorySample, ...]
    stats: IntegrationStats
    steady: SteadySummary | None = None

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.samples])

    @property
    def final(self) -> TrajectorySample:
        return self.samples[-1]

    def with_steady(self, steady: SteadySummary) -> "Trajectory":
        return replace(self, steady=steady)


def sample_times(scenario: Scenario) -> list[float]:
    """Uniform recording grid t_start + k*sample_interval.

    The row count is floor(span/interval) + 1; the small guard keeps an
    integer quotient from being truncated by floating-point division.
    """
    span = scenario.t_end - scenario.t_start
    n = int(math.floor(span / scenario.sample_interval + 1e-9))
    return [scenario.t_start + k * scenario.sample_interval for k in range(n + 1)]


class _SampleRecorder:
    """Checks physicality at each recorded sample and accumulates extremes."""

    def __init__(self, scenario: Scenario):
        self.scenario = scenario
        self.samples: list[TrajectorySample] = []
        self.max_trace_error = 0.0
        self.min_eigenvalue = math.inf

    def record(self, t: float, y: np.ndarray) -> None:
        state = DensityMatrix(unpack_state(y))
        rec = observable_record(t, state, self.scenario.trace_tol, self.scenario.pos_tol)
        self.max_trace_error = max(self.max_trace_error, rec.trace_error)
        self.min_eigenvalue = min(self.min_eigenvalue, rec.min_eigenvalue)
        if rec.trace_error > self.scenario.trace_tol:
            raise PhysicalityError(
                f"trace error {rec.trace_error:.3e} exceeds {self.scenario.trace_tol:.1e} at t={t:g}"
            )
        if rec.min_eigenvalue < -self.scenario.pos_tol:
            raise PhysicalityError(
                f"minimum eigenvalue {rec.min_eigenvalue:.3e} below -{self.scenario.pos_tol:.1e} at t={t:g}"
            )
        self.samples.append(TrajectorySample(time=t, state=state, record=rec))


def _error_norm(err: np.ndarray, y_old: np.ndarray, y_new: np.ndarray, rtol: float, atol: float) -> float:
    scale = atol + rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    ratio = err / scale
    return float(math.sqrt(float(np.mean(ratio * ratio))))


def integrate(scenario: Scenario) -> Trajectory:
    """Propagate the scenario and record observables on the sample grid.

    Raises PhysicalityError if a recorded sample violates the scenario's
    trace or positivity tolerances, and IntegrationError on step-size
    underflow or a non-finite state.
    """
    rhs = make_packed_rhs(scenario.params, scenario.drive)
    grid = sample_times(scenario)
    recorder = _SampleRecorder(scenario)

    y = pack_state(scenario.initial_state)
    t = grid[0]
    recorder.record(t, y)

    max_step = scenario.drive.tau / 10.0
    h_floor = 1e-13 * max(1.0, abs(grid[0]), abs(grid[-1]))
    rtol, atol = scenario.rtol, scenario.atol

    k1 = rhs(t, y)
    nfev = 1
    accepted = 0
    rejected = 0
    h = min(max_step, scenario.sample_interval)
    just_rejected = False

    ks = [k1] + [None] * 6
    for target in grid[1:]:
        # Boundary landings can leave t a few ulp short of the target;
        # anything closer than the floor counts as arrived.
        while target - t > h_floor:
            h_try = min(h, max_step, target - t)
            if h_try < h_floor:
                raise IntegrationError(f"step size underflow at t={t:g} (h={h_try:.3e})")

            k1 = ks[0]
            k2 = rhs(t + _C[0] * h_try, y + h_try * (_A[0][0] * k1))
            k3 = rhs(t + _C[1] * h_try, y + h_try * (_A[1][0] * k1 + _A[1][1] * k2))
            k4 = rhs(t + _C[2] * h_try, y + h_try * (_A[2][0] * k1 + _A[2][1] * k2 + _A[2][2] * k3))
            k5 = rhs(
                t + _C[3] * h_try,
                y + h_try * (_A[3][0] * k1 + _A[3][1] * k2 + _A[3][2] * k3 + _A[3][3] * k4),
            )
            k6 = rhs(
                t + _C[4] * h_try,
                y
                + h_try
                * (_A[4][0] * k1 + _A[4][1] * k2 + _A[4][2] * k3 + _A[4][3] * k4 + _A[4][4] * k5),
            )
            y_new = y + h_try * (
                _B[0] * k1 + _B[2] * k3 + _B[3] * k4 + _B[4] * k5 + _B[5] * k6
            )
            k7 = rhs(t + h_try, y_new)
            nfev += 6

            err = h_try * (
                _E[0] * k1
                + _E[2] * k3
                + _E[3] * k4
                + _E[4] * k5
                + _E[5] * k6
                + _E[6] * k7
            )

            if not np.all(np.isfinite(y_new)):
                rejected += 1
                just_rejected = True
                h = h_try * _MIN_FACTOR
                continue

            norm = _error_norm(err, y, y_new, rtol, atol)
            if norm <= 1.0:
                t = t + h_try
                y = y_new
                ks[0] = k7
                accepted += 1
                if norm == 0.0:
                    factor = _MAX_FACTOR
                else:
                    factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * norm ** -0.2))
                if just_rejected:
                    factor = min(1.0, factor)
                    just_rejected = False
                h = h_try * factor
            else:
                rejected += 1
                just_rejected = True
                h = h_try * min(1.0, max(_MIN_FACTOR, _SAFETY * norm ** -0.2))
        recorder.record(target, y)

    stats = IntegrationStats(
        steps_accepted=accepted,
        steps_rejected=rejected,
        rhs_evaluations=nfev,
        max_trace_error=recorder.max_trace_error,
        min_eigenvalue=recorder.min_eigenvalue,
    )
    return Trajectory(scenario=scenario, samples=tuple(recorder.samples), stats=stats)


def integrate_fixed_step(scenario: Scenario, dt: float) -> Trajectory:
    """Classical fourth-order propagation with uniform steps; test cross-check.

    Requires dt <= tau/40 so the pulses stay well resolved.
    """
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidParameterError(f"dt must be positive, got {dt!r}")
    if dt > scenario.drive.tau / 40.0:
        raise InvalidParameterError(
            f"dt={dt!r} too coarse: fixed-step runs require dt <= tau/40 = {scenario.drive.tau / 40.0:g}"
        )

    rhs = make_packed_rhs(scenario.params, scenario.drive)
    grid = sample_times(scenario)
    recorder = _SampleRecorder(scenario)

    y = pack_state(scenario.initial_state)
    recorder.record(grid[0], y)

    n_sub = max(1, math.ceil(scenario.sample_interval / dt - 1e-9))
    steps = 0
    for prev, target in zip(grid, grid[1:]):
        h = (target - prev) / n_sub
        t = prev
        for _ in range(n_sub):
            k1 = rhs(t, y)
            k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += h
            steps += 1
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state at t={target:g}")
        recorder.record(target, y)

    stats = IntegrationStats(
        steps_accepted=steps,
        steps_rejected=0,
        rhs_evaluations=4 * steps,
        max_trace_error=recorder.max_trace_error,
        min_eigenvalue=recorder.min_eigenvalue,
    )
    return Trajectory(scenario=scenario, samples=tuple(recorder.samples), stats=stats)


def detect_steady_state(
    traj: Trajectory,
    window: float = DEFAULT_STEADY_WINDOW,
    tol: float = DEFAULT_STEADY_TOL,
) -> SteadySummary:
    """Decide whether the late-time state has stopped evolving.

    Convergence requires the doublet population, |rho21|, and the doublet
    purity to each vary by less than `tol` over the trailing `window`; the
    returned values are read from the final sample.  The trajectory must
    extend at least `window` past the point where both pulse envelopes have
    fallen below 1e-6 of their peaks.
    """
    if not (math.isfinite(window) and window > 0):
        raise InvalidParameterError(f"window must be positive, got {window!r}")
    first = traj.samples[0].time
    last = traj.samples[-1].time
    if window > last - first:
        raise InsufficientDataError(
            f"window {window:g} exceeds trajectory span {last - first:g}"
        )
    pulses_off = traj.scenario.drive.pulses_off_after(1e-6)
    if last - window < pulses_off:
        raise InsufficientDataError(
            f"trajectory ends at t={last:g}, but needs to reach t={pulses_off + window:g} "
            f"(pulses off at t={pulses_off:g} plus window {window:g})"
        )

    cutoff = last - window
    tail = [s for s in traj.samples if s.time >= cutoff - 1e-12]
    pops = [s.record.doublet_population for s in tail]
    cohs = [abs(s.record.c21) for s in tail]
    purs = [s.record.doublet_purity for s in tail]
    max_delta = max(
        max(pops) - min(pops),
        max(cohs) - min(cohs),
        max(purs) - min(purs),
    )
    final = traj.samples[-1]
    return SteadySummary(
        converged=max_delta < tol,
        time=final.time,
        state=final.state,
        record=final.record,
        doublet_population=final.record.doublet_population,
        doublet_purity=final.record.doublet_purity,
        abs_coherence_21=abs(final.record.c21),
        max_delta=max_delta,
    )
