from .command_strategy import CommandStrategy
from .volume import Volume, MixedVolume
from .reduction import Reduce, Rur
from .roots import Dim, Feasible, Count
from .prime_density import Density
from .bounds_table import Bounds

COMMANDS = ["volume", "mixedvol", "reduce", "rur", "dim", "feasible", "count", "density", "bounds"]


def get_strategy(name: str) -> CommandStrategy:
    """
    Get the strategy running a command.

    Args:
        name (str): The command, one of ``COMMANDS``

    Returns:
        CommandStrategy: The strategy executing the command
    """
    if name == "volume":
        return Volume()
    elif name == "mixedvol":
        return MixedVolume()
    elif name == "reduce":
        return Reduce()
    elif name == "rur":
        return Rur()
    elif name == "dim":
        return Dim()
    elif name == "feasible":
        return Feasible()
    elif name == "count":
        return Count()
    elif name == "density":
        return Density()
    elif name == "bounds":
        return Bounds()
    else:
        raise ValueError(f"Command {name} is not supported.")
