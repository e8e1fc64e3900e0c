"""Floating-point cross-checks of exact certificates.

Trajectories come from classical fixed-step fourth-order Runge-Kutta.
Conservation of a product integral H = prod_i f_i^(b_i) is measured in log
space, L(t) = sum_i b_i log|f_i(x(t))|, which keeps exponents linear and
tolerates negative surface values; the largest relative deviation of L from
its initial value is the drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .polyring import Poly
from .field_forms import PolyVectorField
from .darboux import DarbouxIntegral

DEFAULT_DOMAIN_FLOOR = 1e-12


class NonFiniteError(RuntimeError):
    """Integration produced an overflow or NaN."""

    def __init__(self, step_index: int):
        self.step_index = step_index
        super().__init__(f"state became non-finite at step {step_index}")


class DomainViolationError(RuntimeError):
    """A surface value came too close to zero for a stable logarithm."""


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: times[k] = t0 + k*h, states[k] is the state row."""

    times: np.ndarray
    states: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.states.shape[1])


def compile_poly(p: Poly) -> Callable[[Sequence[float]], float]:
    """Fast float evaluator for one polynomial."""
    names = [f"x{i + 1}" for i in range(p.dim)]
    body = _poly_source(p)
    source = f"def _eval({', '.join(names)}):\n    return {body}\n"
    scope: dict = {}
    exec(source, scope)  # source is generated purely from Poly data
    fn = scope["_eval"]
    return lambda point: fn(*point)


def _poly_source(p: Poly) -> str:
    if p.is_zero():
        return "0.0"
    pieces = []
    for exps, coeff in p:
        factors = [repr(float(coeff))]
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}**{e}")
        pieces.append("*".join(factors))
    return " + ".join(pieces)


def _compile_field(vf: PolyVectorField) -> Callable[[Tuple[float, ...]], Tuple[float, ...]]:
    names = [f"x{i + 1}" for i in range(vf.dim)]
    bodies = [_poly_source(p) for p in vf.components]
    source = (
        f"def _field({', '.join(names)}):\n"
        f"    return ({', '.join(bodies)}{',' if vf.dim == 1 else ''})\n"
    )
    scope: dict = {}
    exec(source, scope)  # source is generated purely from Poly data
    fn = scope["_field"]
    return lambda state: fn(*state)


def integrate_rk4(
    vf: PolyVectorField,
    x0: Sequence[float],
    h: float,
    steps: int,
    t0: float = 0.0,
) -> Trajectory:
    """Classical RK4 with a fixed step; no adaptivity, so reruns are
    bit-reproducible."""
    if len(x0) != vf.dim:
        raise ValueError(f"x0 has {len(x0)} coordinates, field on R^{vf.dim}")
    if h <= 0 or steps < 1:
        raise ValueError("need h > 0 and steps >= 1")
    f = _compile_field(vf)
    d = vf.dim
    state = tuple(float(v) for v in x0)
    rows: List[Tuple[float, ...]] = [state]
    half = h / 2.0
    sixth = h / 6.0
    for step in range(steps):
        try:
            k1 = f(state)
            k2 = f(tuple(state[i] + half * k1[i] for i in range(d)))
            k3 = f(tuple(state[i] + half * k2[i] for i in range(d)))
            k4 = f(tuple(state[i] + h * k3[i] for i in range(d)))
            state = tuple(
                state[i] + sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                for i in range(d)
            )
        except OverflowError as err:
            raise NonFiniteError(step + 1) from err
        if not all(math.isfinite(v) for v in state):
            raise NonFiniteError(step + 1)
        rows.append(state)
    times = t0 + h * np.arange(steps + 1, dtype=np.float64)
    return Trajectory(times=times, states=np.array(rows, dtype=np.float64))


def conservation_report(
    traj: Trajectory,
    integral: DarbouxIntegral,
    floor: float = DEFAULT_DOMAIN_FLOOR,
) -> float:
    """Max relative drift of L(t) = sum_i b_i log|f_i(x(t))| over the
    trajectory: max_t |L(t) - L(0)| / max(1, |L(0)|)."""
    evaluators = [compile_poly(s.defining) for s in integral.surfaces]
    betas = [float(b) for b in integral.exponents]

    def log_value(row) -> float:
        total = 0.0
        for beta, ev in zip(betas, evaluators):
            if beta == 0.0:
                continue
            value = ev(row)
            if abs(value) < floor:
                raise DomainViolationError(
                    f"surface value {value!r} within {floor} of zero"
                )
            total += beta * math.log(abs(value))
        return total

    rows = [tuple(row) for row in traj.states]
    base = log_value(rows[0])
    scale = max(1.0, abs(base))
    return max(abs(log_value(row) - base) for row in rows) / scale


def trajectory_to_csv(traj: Trajectory) -> str:
    """Header t,x1,...,xd; every value with 17 significant digits."""
    header = "t," + ",".join(f"x{i + 1}" for i in range(traj.dim))
    lines = [header]
    for t, row in zip(traj.times, traj.states):
        lines.append(",".join(f"{v:.17g}" for v in (t, *row)))
    return "\n".join(lines) + "\n"
