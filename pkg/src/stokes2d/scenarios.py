"""Shared simulation state and the explicit-Euler stepping machinery.

The three experiment drivers live in tethered.py, motility.py and
blebbing.py; this module holds what they share: SimState, the adaptive
time-step rule, and the generic dispatching step.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


class NonFiniteStateError(RuntimeError):
    pass


@dataclass
class SimState:
    """Everything the time stepper advances for one run."""

    t: float = 0.0
    structures: dict = field(default_factory=dict)
    cycle_phase: str = "protruding"   # motility only
    bound_node: Optional[int] = None  # ECM node index while bound
    bind_time: Optional[float] = None
    cycles: int = 0
    adhesion: Optional[object] = None  # blebbing only
    rng: Optional[np.random.Generator] = None

    def check_finite(self, label=""):
        for name, s in self.structures.items():
            nodes = getattr(s, "nodes", s)
            if not np.all(np.isfinite(nodes)):
                bad = np.argwhere(~np.isfinite(np.asarray(nodes)))[0]
                raise NonFiniteStateError(
                    f"non-finite position in {name!r} at node {bad[0]} {label}"
                )


def adaptive_dt(state, config):
    """Fine time step inside the post-binding window, coarse elsewhere."""
    if state.bind_time is not None and state.t - state.bind_time < config.fine_window:
        return config.dt_fine
    return config.dt


def step_euler(state, dt, config):
    """One forward-Euler step of whichever scenario the config selects."""
    from . import blebbing, motility, tethered

    stepper = {"tethered": tethered.step,
               "motility": motility.step,
               "blebbing": blebbing.step}[config.scenario]
    return stepper(state, dt, config)
