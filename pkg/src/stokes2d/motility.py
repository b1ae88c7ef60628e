"""Cell motility through an anchored ECM via a finger-like protrusion cycle.

The cortex grows a protrusion toward a randomly chosen front-edge node,
binds to the nearest ECM node when their blobs touch, stiffens and
contracts, and finally releases the node. The ECM is a Delaunay-connected
spring network tied to anchor points, so the pull phase produces a net
hydrodynamic force.
"""

from dataclasses import dataclass, field

import numpy as np

from . import linalg, output
from .constraints import CorrectionConfig, Method, mobility_matrix, total_velocity
from .kernels import FluidParams, PointForceSet
from .scenarios import SimState
from .structures import (ClosedFiber, SpringNetwork, delaunay_edges, ecm_force,
                         fiber_elastic_force, outward_normals)


def protrusion_forces(cortex, j, f0):
    """Per-node protrusion forces (pN/um); the set sums to zero.

    A normal force density f0 acts at node j and f0/2 at its neighbors; the
    exact opposite of their vector sum is spread evenly over the remaining
    nodes so the cell exerts no net force on the fluid.
    """
    n = len(cortex)
    if n < 5:
        raise ValueError(f"cortex needs at least 5 nodes, got {n}")
    normals = outward_normals(cortex)
    ds = cortex.ref_spacing
    forces = np.zeros((n, 2))
    forces[j] = f0 * ds * normals[j]
    forces[(j - 1) % n] = 0.5 * f0 * ds * normals[(j - 1) % n]
    forces[(j + 1) % n] = 0.5 * f0 * ds * normals[(j + 1) % n]
    recoil = -forces.sum(axis=0) / (n - 3)
    mask = np.ones(n, dtype=bool)
    mask[[j, (j - 1) % n, (j + 1) % n]] = False
    forces[mask] += recoil
    return forces


def front_edge_nodes(cortex, sector_deg):
    """Cortex nodes whose outward normal lies within +-sector_deg of +x."""
    normals = outward_normals(cortex)
    angles = np.degrees(np.arctan2(normals[:, 1], normals[:, 0]))
    return np.nonzero(np.abs(angles) <= sector_deg)[0]


def initial_state(config):
    p = config.motility
    cortex = ClosedFiber.circle((0.0, 0.0), p.cortex_diameter / 2, p.n_cortex,
                                p.k_cortex)
    nucleus = ClosedFiber.circle((0.0, 0.0), p.nucleus_diameter / 2, p.n_nucleus,
                                 p.k_nucleus)
    nodes = np.asarray(p.ecm_nodes, dtype=float)
    network = SpringNetwork.from_initial(nodes, delaunay_edges(nodes), p.k_teth)
    rng = np.random.default_rng(config.seed)
    state = SimState(structures={"cortex": cortex, "nucleus": nucleus,
                                 "ecm": network},
                     rng=rng, cycle_phase="protruding")
    state.protrusion_node = _pick_protrusion_node(state, config)
    state.tip_offset = None
    return state


def _pick_protrusion_node(state, config):
    candidates = front_edge_nodes(state.structures["cortex"],
                                  config.motility.sector_deg)
    return int(state.rng.choice(candidates))


def _rigid_noslip_forces(points, sources, params, ecm_positions):
    """Extra forces at the ECM nodes enforcing u = 0 there (rigid ECM)."""
    u_at_nodes = total_velocity(ecm_positions, sources, params, _FREE)
    mob = mobility_matrix(ecm_positions, ecm_positions, params)
    f = linalg.lu_solve(linalg.lu_factor(mob), -u_at_nodes.ravel())
    return f.reshape(-1, 2)


_FREE = CorrectionConfig(method=Method.NONE, R=1.0)


def step(state, dt, config):
    p = config.motility
    cortex = state.structures["cortex"]
    nucleus = state.structures["nucleus"]
    network = state.structures["ecm"]

    f_cortex = fiber_elastic_force(cortex)
    if state.cycle_phase == "protruding":
        f_cortex += protrusion_forces(cortex, state.protrusion_node, p.f0)
    f_nucleus = fiber_elastic_force(nucleus)
    f_ecm = ecm_force(network) if not (p.rigid and p.rigid_mode == "frozen") \
        else np.zeros_like(network.nodes)
    if state.bound_node is not None:
        # the bond transmits the tip's elastic load to the ECM node
        f_ecm[state.bound_node] += f_cortex[state.protrusion_node]
        f_cortex[state.protrusion_node] = 0.0
    if config.method == Method.MEAN_FORCE_SUBTRACTION:
        # the net-force fix is applied structure by structure ("the mean
        # force at each node"), so each body sheds its own imbalance
        f_cortex = f_cortex - f_cortex.mean(axis=0)
        f_nucleus = f_nucleus - f_nucleus.mean(axis=0)
        f_ecm = f_ecm - f_ecm.mean(axis=0)

    all_points = np.concatenate([cortex.nodes, nucleus.nodes, network.nodes])
    all_forces = np.concatenate([f_cortex, f_nucleus, f_ecm])
    params = FluidParams(config.mu, config.eps)
    sources = PointForceSet(all_points, all_forces)

    nc, nn = len(cortex), len(nucleus)
    if p.rigid and p.rigid_mode == "no-slip":
        f_extra = _rigid_noslip_forces(all_points, sources, params, network.nodes)
        aug = PointForceSet(np.concatenate([all_points, network.nodes]),
                            np.concatenate([all_forces, f_extra]))
        u = total_velocity(all_points, aug, params, _FREE)
        u[nc + nn:] = 0.0
    else:
        u = total_velocity(all_points, sources, params, config.correction)
        if p.rigid:  # frozen mode: nodes simply do not move
            u[nc + nn:] = 0.0

    if state.bound_node is not None:
        # rigid link: tip and bound node share the velocity at the node
        tip = state.protrusion_node
        node_row = nc + nn + state.bound_node
        u[tip] = u[node_row]

    new_cortex = cortex.nodes + u[:nc] * dt
    new_nucleus = nucleus.nodes + u[nc:nc + nn] * dt
    new_ecm = network.nodes + u[nc + nn:] * dt
    if state.bound_node is not None:
        new_cortex[state.protrusion_node] = (new_ecm[state.bound_node]
                                             + state.tip_offset)

    state.structures["cortex"] = cortex.with_nodes(new_cortex)
    state.structures["nucleus"] = nucleus.with_nodes(new_nucleus)
    state.structures["ecm"] = network.with_nodes(new_ecm)
    state.t += dt
    state.check_finite(f"at t={state.t:.6g} (method={config.method.value})")
    return u


# relaxation time after the last release, before a run is considered done
SETTLE_TIME = 0.3


@dataclass
class CycleEvent:
    kind: str   # "bind", "release", "no-bind"
    t: float
    node: int = -1


@dataclass
class MotilityResult:
    trace: output.TimeSeries          # t, displacement
    cortex_positions: output.TimeSeries
    nucleus_positions: output.TimeSeries
    ecm_positions: output.TimeSeries
    events: list
    final_ecm: np.ndarray
    initial_ecm: np.ndarray
    completed_cycles: int
    end_time: float


def run_motility(config):
    from .scenarios import adaptive_dt

    p = config.motility
    state = initial_state(config)
    com0 = state.structures["nucleus"].nodes.mean(axis=0)
    initial_ecm = state.structures["ecm"].nodes.copy()

    trace = output.TimeSeries(columns=["t", "displacement"])
    cortex_pos = output.positions_series()
    nucleus_pos = output.positions_series()
    ecm_pos = output.positions_series()
    events = []

    def record():
        com = state.structures["nucleus"].nodes.mean(axis=0)
        trace.append(state.t, float(np.linalg.norm(com - com0)))
        output.record_positions(cortex_pos, state.t, state.structures["cortex"].nodes)
        output.record_positions(nucleus_pos, state.t, state.structures["nucleus"].nodes)
        output.record_positions(ecm_pos, state.t, state.structures["ecm"].nodes)

    record()
    step_count = 0
    settle_until = None
    while state.t < config.t_end - 1e-12:
        if state.cycles >= p.max_cycles:
            # let the released node spring back before the run ends
            if settle_until is None:
                settle_until = min(state.t + SETTLE_TIME, config.t_end)
            if state.t >= settle_until - 1e-12:
                break
        dt = adaptive_dt(state, config)
        u = step(state, dt, config)
        step_count += 1
        if step_count % config.output_every == 0:
            record()

        cortex = state.structures["cortex"]
        network = state.structures["ecm"]
        if state.cycle_phase == "protruding":
            tip = cortex.nodes[state.protrusion_node]
            d = np.linalg.norm(network.nodes - tip, axis=1)
            nearest = int(np.argmin(d))
            if d[nearest] <= 2 * config.eps:
                state.bound_node = nearest
                state.bind_time = state.t
                state.tip_offset = tip - network.nodes[nearest]
                state.structures["cortex"] = cortex.with_stiffness(
                    p.k_cortex * p.bind_stiffen_factor)
                state.cycle_phase = "contracting"
                events.append(CycleEvent("bind", state.t, nearest))
        elif state.cycle_phase == "contracting":
            moving_max = np.abs(u).max()
            past_window = state.t - state.bind_time > config.fine_window
            if past_window and moving_max < config.stop_speed:
                normals = outward_normals(state.structures["cortex"])
                nodes = network.nodes.copy()
                nodes[state.bound_node] += 2 * config.eps * normals[state.protrusion_node]
                state.structures["ecm"] = network.with_nodes(nodes)
                events.append(CycleEvent("release", state.t, state.bound_node))
                state.bound_node = None
                state.tip_offset = None
                state.bind_time = None
                state.structures["cortex"] = state.structures["cortex"].with_stiffness(
                    p.k_cortex)
                state.cycles += 1
                state.cycle_phase = "released"
                if state.cycles < p.max_cycles:
                    state.protrusion_node = _pick_protrusion_node(state, config)
                    state.cycle_phase = "protruding"

    if state.cycles == 0 and state.bound_node is None:
        events.append(CycleEvent("no-bind", state.t))
    record()
    return MotilityResult(trace=trace, cortex_positions=cortex_pos,
                          nucleus_positions=nucleus_pos, ecm_positions=ecm_pos,
                          events=events,
                          final_ecm=state.structures["ecm"].nodes.copy(),
                          initial_ecm=initial_ecm,
                          completed_cycles=state.cycles, end_time=state.t)
