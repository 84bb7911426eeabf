"""Seeded, stream-split random generators for the simulator."""
from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from sutrack.schema.config import SimParams

_BIT_GENERATORS: dict[str, type[np.random.BitGenerator]] = {
    "philox": np.random.Philox,
    "pcg64": np.random.PCG64,
}


def spawn_generators(params: SimParams) -> tuple[list[np.random.Generator], np.random.Generator]:
    """One independent generator per fish plus one for the detector model.

    Streams are children of ``SeedSequence(params.seed)``; fish ``k`` always
    gets child ``k`` and the detector model child ``n_fish``.
    """
    bit_generator = _BIT_GENERATORS[params.rng_algorithm]
    children = np.random.SeedSequence(params.seed).spawn(params.n_fish + 1)
    generators = [np.random.Generator(bit_generator(child)) for child in children]
    return generators[:-1], generators[-1]
