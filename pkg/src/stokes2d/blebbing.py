"""Cellular blebbing: membrane and cortex rings coupled by adhesion springs.

The membrane is fluid-borne (no slip); the cortex moves by a local force
balance against its own drag. Breaking the adhesion links at the top of the
cell removes part of the inward force on the membrane, leaving a net
vertical hydrodynamic force, which is why this model needs a paradox
treatment at all.
"""

from dataclasses import dataclass

import numpy as np

from . import output
from .constraints import total_velocity
from .kernels import FluidParams, PointForceSet, superpose_pressure
from .scenarios import SimState
from .structures import (AdhesionState, ClosedFiber, adhesion_force_density,
                         fiber_force_density)


def initial_state(config):
    p = config.blebbing
    membrane = ClosedFiber.circle((0.0, 0.0), p.r_mem, p.n_nodes, p.k_m,
                                  gamma=p.gamma_m)
    cortex = ClosedFiber.circle((0.0, 0.0), p.r_cortex, p.n_nodes, p.k_c,
                                gamma=p.gamma_c)
    adhesion = AdhesionState.identity(p.n_nodes, p.k_adh)
    return SimState(structures={"membrane": membrane, "cortex": cortex},
                    adhesion=adhesion)


def membrane_forces(state, config):
    """Per-node hydrodynamic forces on the membrane (pN/um)."""
    membrane = state.structures["membrane"]
    cortex = state.structures["cortex"]
    adh_mem, _ = adhesion_force_density(membrane, cortex, state.adhesion)
    density = fiber_force_density(membrane) + adh_mem
    return density * membrane.ref_spacing


def step(state, dt, config):
    p = config.blebbing
    membrane = state.structures["membrane"]
    cortex = state.structures["cortex"]
    adh_mem, adh_cor = adhesion_force_density(membrane, cortex, state.adhesion)

    mem_forces = (fiber_force_density(membrane) + adh_mem) * membrane.ref_spacing
    sources = PointForceSet(membrane.nodes, mem_forces)
    params = FluidParams(config.mu, config.eps)
    u_mem = total_velocity(membrane.nodes, sources, params, config.correction)

    cor_density = fiber_force_density(cortex) + adh_cor
    state.structures["membrane"] = membrane.with_nodes(membrane.nodes + u_mem * dt)
    state.structures["cortex"] = cortex.with_nodes(cortex.nodes + cor_density / p.nu_c * dt)
    state.t += dt
    state.check_finite(f"at t={state.t:.6g} (method={config.method.value})")
    return u_mem


def equilibrate(state, config):
    for _ in range(config.blebbing.equil_steps):
        step(state, config.dt, config)
    state.t = 0.0


def initiate_bleb(state, config):
    """Break the adhesion links at the n_break membrane nodes with largest y."""
    membrane = state.structures["membrane"]
    top = np.argsort(membrane.nodes[:, 1])[-config.blebbing.n_break:]
    state.adhesion.broken[top] = True
    return top


def pressure_profile(state, config):
    """Pressure along x=0 from the membrane forces; near-source samples dropped."""
    p = config.blebbing
    y = np.linspace(-p.pressure_extent, p.pressure_extent, p.pressure_samples)
    samples = np.stack([np.zeros_like(y), y], axis=1)
    sources = PointForceSet(state.structures["membrane"].nodes,
                            membrane_forces(state, config))
    d = samples[:, None, :] - sources.positions[None, :, :]
    keep = np.min(np.sum(d * d, axis=-1), axis=1) > (2 * config.eps) ** 2
    pressures = superpose_pressure(samples[keep], sources, config.eps)
    return y[keep], pressures


def center_pressure(state, config):
    sources = PointForceSet(state.structures["membrane"].nodes,
                            membrane_forces(state, config))
    return float(superpose_pressure(np.zeros((1, 2)), sources, config.eps)[0])


@dataclass
class BlebbingResult:
    trace: output.TimeSeries   # t, p_center, max_y
    shapes: dict               # time -> (membrane nodes, cortex nodes)
    pressures: dict            # time -> (y, p) arrays
    broken_nodes: np.ndarray


def run_blebbing(config):
    """Equilibrate, break the top links at t=0, then evolve to t_end."""
    p = config.blebbing
    state = initial_state(config)
    equilibrate(state, config)

    trace = output.TimeSeries(columns=["t", "p_center", "max_y"])
    shapes, pressures = {}, {}
    sample_times = sorted(t for t in p.sample_times if t <= config.t_end + 1e-9)
    next_sample = 0

    def snapshot(t_label):
        shapes[t_label] = (state.structures["membrane"].nodes.copy(),
                           state.structures["cortex"].nodes.copy())
        pressures[t_label] = pressure_profile(state, config)

    def record():
        mem = state.structures["membrane"].nodes
        trace.append(state.t, center_pressure(state, config), mem[:, 1].max())

    # the t=0 samples describe the equilibrated cell entering bleb initiation
    if sample_times and abs(sample_times[0]) < 1e-12:
        snapshot(sample_times[0])
        next_sample = 1
    record()
    broken = initiate_bleb(state, config)
    step_count = 0
    while state.t < config.t_end - 1e-12:
        step(state, config.dt, config)
        step_count += 1
        if step_count % config.output_every == 0:
            record()
        if next_sample < len(sample_times) and state.t >= sample_times[next_sample] - 1e-9:
            snapshot(sample_times[next_sample])
            next_sample += 1
    record()
    return BlebbingResult(trace=trace, shapes=shapes, pressures=pressures,
                          broken_nodes=broken)
