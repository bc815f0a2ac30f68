"""Coupled orbital-thermal evolution of a satellite pair near a 3:1 resonance."""

__version__ = "0.1.0"

from .bodies import PlanetModel, BodyPhysical, uranus, miranda, umbriel
from .elements import (
    OrbitalElements,
    SatelliteDynState,
    SystemState,
    mean_motion,
    elements_to_state,
    state_to_elements,
    resonant_angles,
    miranda_elements_j2000,
    umbriel_elements_j2000,
)
from .rheology import RheologyParams, TidalResponse, tidal_response
from .thermal import (
    MixtureProps,
    RadiogenicInventory,
    ThermalGrid,
    mixture_properties,
    calibrated_inventory,
    radiogenic_power,
    step_conduction,
    initial_profiles,
    mean_temperature,
)
from .tides import (
    InertiaMoments,
    TidalRates,
    moments_of_inertia,
    node_rate,
    equilibrium_obliquity,
    dissipation_rate,
    kaula_rates,
    heating_estimate,
)
