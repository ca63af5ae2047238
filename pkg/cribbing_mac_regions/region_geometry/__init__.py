__all__ = [
    "RateTriple",
    "Halfspace",
    "RateRegion",
    "from_points",
    "from_triple",
    "hull_union",
    "contains",
    "RateRegionModel",
    "emit_region_json",
    "parse_region_json",
    "format_rate",
    "frontier_csv",
]

from cribbing_mac_regions.region_geometry.rate_triple import RateTriple
from cribbing_mac_regions.region_geometry.rate_region import (
    Halfspace,
    RateRegion,
    from_points,
    from_triple,
    hull_union,
    contains,
)
from cribbing_mac_regions.region_geometry.emit import (
    RateRegionModel,
    emit_region_json,
    parse_region_json,
    format_rate,
    frontier_csv,
)
