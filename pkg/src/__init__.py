from . import phase_space
from . import maps
from . import dynamics
from . import cli

__all__ = [
    "phase_space",
    "maps",
    "dynamics",
    "cli"
]
