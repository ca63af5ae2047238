from cribbing_mac_regions.misc.files import FileResource
from cribbing_mac_regions.misc.progress import SweepProgress
from cribbing_mac_regions.misc.settings import LOG_LEVEL_VARIABLE, THREADS_VARIABLE, RuntimeSettings

__all__ = [
    "FileResource",
    "SweepProgress",
    "LOG_LEVEL_VARIABLE",
    "THREADS_VARIABLE",
    "RuntimeSettings",
]
