"""Minimal cosmological bookkeeping: the linear expansion law for the
curvature radius of the closed S^3 spatial model, and the reference count
of ur-alternatives."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "SPATIAL_CURVATURE",
    "UR_COUNT_REFERENCE",
    "NegativeEpochError",
    "ExpansionModel",
    "radius_at",
    "ur_count_reference",
]

# the spatial model is the closed 3-sphere
SPATIAL_CURVATURE = 1.0

# reference number of urs at the present epoch; a quoted estimate, not a
# derived quantity
UR_COUNT_REFERENCE = 1e120


class NegativeEpochError(ValueError):
    """Cosmic epoch must be nonnegative."""


@dataclass(frozen=True)
class ExpansionModel:
    """Linear expansion of the curvature radius: R(T) = r0 + c * T.

    r0 is the radius at epoch zero; c is the limiting velocity.  Units are
    the caller's business, only the ratio structure is fixed here.
    """

    r0: float
    c: float

    def __post_init__(self):
        if not self.r0 >= 0.0:
            raise ValueError(f"initial radius must be nonnegative, got {self.r0!r}")
        if not self.c > 0.0:
            raise ValueError(f"limiting velocity must be positive, got {self.c!r}")


def radius_at(model: ExpansionModel, epoch: float) -> float:
    """Curvature radius at the given epoch; strictly increasing in the epoch."""
    if epoch < 0.0:
        raise NegativeEpochError(f"epoch must be nonnegative, got {epoch!r}")
    return model.r0 + model.c * epoch


def ur_count_reference() -> float:
    """Reference ur count at the present epoch, about 1e120.

    Under open finitism the number of urs at any epoch is finite and grows
    with cosmic time; this quoted estimate is exposed as a constant, with
    no derivation attempted.
    """
    return UR_COUNT_REFERENCE
