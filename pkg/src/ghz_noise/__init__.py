"""Three-qubit GHZ-Werner states under classical power-law noise."""

from .dynamics import (
    LocalField,
    PhasePolynomial,
    Topology,
    averaged_state,
    averaged_state_gh,
    averaged_state_mc,
    evolve_local,
    initial_state,
)
from .measures import WitnessChoice, entanglement_witness, entropy, negativity, purity
from .noise import PowerLawParams, beta_closed, beta_quadrature

__all__ = [
    "LocalField",
    "PhasePolynomial",
    "PowerLawParams",
    "Topology",
    "WitnessChoice",
    "averaged_state",
    "averaged_state_gh",
    "averaged_state_mc",
    "beta_closed",
    "beta_quadrature",
    "entanglement_witness",
    "entropy",
    "evolve_local",
    "initial_state",
    "negativity",
    "purity",
]
