import csv
import io
from collections.abc import Iterable, Sequence

from pydantic import BaseModel, ConfigDict

from cribbing_mac_regions.region_geometry.rate_region import Halfspace, RateRegion

__all__ = [
    "HalfspaceModel",
    "RateRegionModel",
    "emit_region_json",
    "parse_region_json",
    "format_rate",
    "frontier_csv",
]

CSV_HEADER = ("scenario", "r1", "r2")


class HalfspaceModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float
    b: float
    c: float


class RateRegionModel(BaseModel):
    """JSON shape of a rate region; mirrors the fields of ``RateRegion``."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    halfspaces: list[HalfspaceModel]
    frontier: list[tuple[float, float]]

    @classmethod
    def from_region(cls, region: RateRegion) -> "RateRegionModel":
        return cls(
            halfspaces=[HalfspaceModel(a=h.a, b=h.b, c=h.c) for h in region.halfspaces],
            frontier=[tuple(p) for p in region.frontier],
        )

    def to_region(self) -> RateRegion:
        return RateRegion(
            halfspaces=tuple(Halfspace(h.a, h.b, h.c) for h in self.halfspaces),
            frontier=tuple(self.frontier),
        )


def emit_region_json(region: RateRegion) -> str:
    return RateRegionModel.from_region(region).model_dump_json()


def parse_region_json(text: str) -> RateRegion:
    return RateRegionModel.model_validate_json(text).to_region()


def format_rate(value: float) -> str:
    """Rates in files use 12 significant digits."""
    return f"{value:.12g}"


def frontier_csv(rows: Iterable[tuple[str, Sequence[tuple[float, float]]]]) -> str:
    """CSV body with one row per frontier point.

    Args:
        rows (Iterable[tuple[str, Sequence[Point]]]) : Pairs of a series name (the scenario column) and its points.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for name, points in rows:
        for r1, r2 in points:
            writer.writerow((name, format_rate(r1), format_rate(r2)))
    return buffer.getvalue()
