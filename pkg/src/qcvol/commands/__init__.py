from .density import DENSITY_NAMES, cmd_density
from .invariance import cmd_invariance
from .iterate import cmd_iterate
from .push import cmd_push
from .sample import cmd_sample
from .volume import cmd_volume

__all__ = (
    "DENSITY_NAMES",
    "cmd_density",
    "cmd_invariance",
    "cmd_iterate",
    "cmd_push",
    "cmd_sample",
    "cmd_volume",
)
