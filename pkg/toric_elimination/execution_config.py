# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""
Contains the :class:`ExecutionConfig` data class.
"""
import os
from dataclasses import dataclass
from typing import Optional, Tuple

SUPPORTED_PROBE_STRATEGIES = ["kronecker", "seeded"]

SUPPORTED_DENSITY_MODES = ["desk", "paper-report"]

WORKERS_ENV_VAR = "TORIC_ELIM_WORKERS"


# pylint: disable=too-many-instance-attributes
@dataclass
class ExecutionConfig:
    """
    A class to configure an elimination run.

    See the Attributes section to learn more about the various configurable options.
    """

    seed: int = 0
    """Seed shared by the subdivision liftings, the perturbation system and seeded probes."""

    max_workers: Optional[int] = None
    """Size of the process pool evaluating independent determinants.

    ``None`` evaluates serially.
    """

    lifting_attempts: int = 8
    """Liftings tried before the dense Macaulay plan is used instead."""

    perturbation_attempts: int = 4
    """Perturbation systems tried before giving up on a nonsingular matrix."""

    square_up_attempts: int = 2
    """Windows of combination weights tried when a system has more equations than unknowns."""

    probe_strategy: str = "seeded"
    """How the probe points of the dimension algorithm are generated"""

    probe_degree: Optional[int] = None
    """Degree parameter of the Kronecker probe points; ``None`` uses 1"""

    density_mode: str = "desk"
    """Either search prime windows (``desk``) or only report the theorem's constants"""

    window_constant: int = 150
    """The constant A of the prime windows (A t^3, A (t+1)^3)"""

    t_range: Tuple[int, int] = (150, 160)
    """Inclusive range the window parameter t is drawn from"""

    budget: int = 50_000_000
    """Largest sieve window width, and largest point count searched by brute force"""

    max_window_primes: int = 200
    """Primes examined per window before the search declares no root found"""

    def __post_init__(self):
        """
        Validate the configured execution options.

        Note that this hook is automatically called after init via the dataclass integration.
        """
        if self.probe_strategy not in SUPPORTED_PROBE_STRATEGIES:
            raise ValueError(
                f"probe_strategy must be in {SUPPORTED_PROBE_STRATEGIES}, got {self.probe_strategy} instead."
            )

        if self.density_mode not in SUPPORTED_DENSITY_MODES:
            raise ValueError(
                f"density_mode must be in {SUPPORTED_DENSITY_MODES}, got {self.density_mode} instead."
            )

        if self.max_workers is not None and self.max_workers < 1:
            raise ValueError(
                f"max_workers must be None or a positive integer. Got {self.max_workers} instead."
            )

        for name in ("lifting_attempts", "perturbation_attempts", "square_up_attempts"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1. Got {getattr(self, name)} instead.")

        if self.probe_degree is not None and self.probe_degree < 1:
            raise ValueError(f"probe_degree must be positive. Got {self.probe_degree} instead.")

        lo, hi = self.t_range
        if not 1 <= lo <= hi:
            raise ValueError(f"t_range must satisfy 1 <= lo <= hi, got {self.t_range} instead.")
        self.t_range = (int(lo), int(hi))

        if self.window_constant < 1 or self.budget < 1 or self.max_window_primes < 1:
            raise ValueError("window_constant, budget and max_window_primes must be positive.")

    @classmethod
    def from_environment(cls, **kwargs) -> "ExecutionConfig":
        """Build a config, taking ``max_workers`` from the environment when not given."""
        if kwargs.get("max_workers") is None and os.environ.get(WORKERS_ENV_VAR):
            kwargs["max_workers"] = int(os.environ[WORKERS_ENV_VAR])
        return cls(**kwargs)


DefaultExecutionConfig = ExecutionConfig()
