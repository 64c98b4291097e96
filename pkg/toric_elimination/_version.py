"""Version of the ``toric-elimination`` distribution, read by ``pyproject.toml`` and ``toric-elim --version``."""

__version__ = "0.1.0"
