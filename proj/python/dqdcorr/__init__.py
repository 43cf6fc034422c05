"""Hyperfine decoherence of two GaAs quantum-dot spin qubits.

Thin wrapper over the C++ core. Units: ueV, ns, T.
"""

from ._dqdcorr import (
    DotParameters,
    DqdError,
    M_of_B,
    __version__,
    channel,
    concurrence,
    discord_bounds,
    evolve,
    g_ratio,
    long_grid,
    rescaled_discord,
    short_grid,
    state,
    verify,
)

__all__ = [
    "DotParameters",
    "DqdError",
    "M_of_B",
    "__version__",
    "channel",
    "concurrence",
    "discord_bounds",
    "evolve",
    "g_ratio",
    "long_grid",
    "rescaled_discord",
    "short_grid",
    "state",
    "verify",
]
