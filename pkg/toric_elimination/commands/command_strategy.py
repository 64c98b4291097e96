from typing import Dict

from ..execution_config import ExecutionConfig
from ..polynomials import PolySystem

Output = Dict[str, object]


class CommandStrategy:
    """One command of the ``toric-elim`` front end."""

    name = ""

    def execute(self, system: PolySystem, cfg, config: ExecutionConfig) -> Output:
        raise NotImplementedError

    def summary(self, output: Output) -> str:
        return ", ".join(f"{key} {value}" for key, value in output.items() if not isinstance(value, list))
