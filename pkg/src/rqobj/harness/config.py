"""Experiment configuration and the option-string tables."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UsageError
from ..rng import ALGORITHMS
from ..simplex import RPV_METHODS
from ..states import RDM_METHODS, RSV_METHODS
from ..unitary import RU_METHODS

RN_METHODS = ("unif", "gauss", "exp")

OBJECT_METHODS = {
    "rn": RN_METHODS,
    "rpv": RPV_METHODS,
    "ru": RU_METHODS,
    "rsv": RSV_METHODS,
    "rdm": RDM_METHODS,
}

DEFAULT_METHODS = {"rn": "unif", "rpv": "zhsl", "ru": "gso", "rsv": "std", "rdm": "std"}


@dataclass(frozen=True)
class ExperimentConfig:
    """What to sample, how, and where to write it.

    ``method=None`` resolves to the object's standard method.  ``shards``
    splits the samples of every dimension over that many derived sub-streams;
    ``jobs`` is the number of worker processes used to run them.
    """

    object: str = "rpv"
    method: str | None = None
    rng: str = "mt"
    dims: tuple[int, ...] = (2,)
    samples: int = 1
    seed: int | None = None
    out: str | None = None
    shards: int = 1
    jobs: int = 1
    bins: int = 20
    ancilla_dim: int | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.object not in OBJECT_METHODS:
            raise UsageError(
                f"unknown object {self.object!r}; valid: {', '.join(OBJECT_METHODS)}"
            )
        if self.method is None:
            object.__setattr__(self, "method", DEFAULT_METHODS[self.object])
        valid = OBJECT_METHODS[self.object]
        if self.method not in valid:
            raise UsageError(
                f"method {self.method!r} is not valid for object {self.object!r}; "
                f"valid: {', '.join(valid)}"
            )
        if self.rng not in ALGORITHMS:
            raise UsageError(f"unknown rng {self.rng!r}; valid: {', '.join(ALGORITHMS)}")
        dims = tuple(int(d) for d in self.dims)
        if not dims or min(dims) < 1:
            raise UsageError(f"dimensions must be positive, got {self.dims!r}")
        object.__setattr__(self, "dims", dims)
        for name in ("samples", "shards", "jobs", "bins"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be >= 1")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise UsageError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def dim(self) -> int:
        return self.dims[0]

    def describe(self) -> str:
        dims = ",".join(str(d) for d in self.dims)
        return (
            f"object={self.object} method={self.method} rng={self.rng} "
            f"dims={dims} samples={self.samples} seed={self.seed} shards={self.shards}"
        )
