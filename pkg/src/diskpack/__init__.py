"""Disk-in-disk packing: worst-case-optimal engine, verifier, density oracles,
and an interval branch-and-bound prover for the ring density bound."""

from .engine import InstanceSpec, PackingResult, pack
from .geometry import ContainerDisk, PlacedDisk, Point, RingShape, Side
from .verifier import VerificationReport, verify

__all__ = [
    "InstanceSpec",
    "PackingResult",
    "pack",
    "ContainerDisk",
    "PlacedDisk",
    "Point",
    "RingShape",
    "Side",
    "VerificationReport",
    "verify",
]

__version__ = "0.1.0"
