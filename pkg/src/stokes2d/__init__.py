"""2D Stokes-flow library built on regularized Stokeslets, with a
mean-zero-velocity boundary correction that keeps net-nonzero-force
problems well posed."""

__version__ = "0.1.0"

from .blebbing import run_blebbing
from .config import ScenarioConfig, default_config, parse_config
from .constraints import (CorrectionConfig, Method, RadiusBoundsInput,
                          circle_bc_velocity, correction_velocity,
                          mean_circle_velocity, radius_bounds, sigma_u,
                          total_velocity)
from .kernels import (FluidParams, PointForceSet, blob_phi, reg_pressure,
                      reg_velocity, singular_pressure, singular_velocity,
                      superpose_pressure, superpose_velocity)
from .motility import protrusion_forces, run_motility
from .scenarios import SimState, adaptive_dt, step_euler
from .structures import (AdhesionState, ClosedFiber, SpringNetwork,
                         adhesion_forces, compute_anchors, delaunay_edges,
                         ecm_force, fiber_elastic_force, fiber_tension,
                         outward_normals, tether_force)
from .tethered import run_tethered
