"""Random probability vectors, unitaries, state vectors and density matrices."""

from .rng import RandomSource, seed_source
from .simplex import sample_rpv
from .states import sample_rdm, sample_rsv
from .unitary import sample_ru

__version__ = "0.1.0"

__all__ = [
    "RandomSource",
    "seed_source",
    "sample_rpv",
    "sample_ru",
    "sample_rsv",
    "sample_rdm",
    "__version__",
]
