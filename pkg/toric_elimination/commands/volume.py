from ..polytope import bezout_number, mixed_volume, newton_polytope, normalized_volume, q_polytope
from .command_strategy import CommandStrategy


class Volume(CommandStrategy):
    name = "volume"

    def execute(self, system, cfg, config):
        Q = q_polytope(system)
        return dict(n=system.nvars, m=system.m, V_F=normalized_volume(Q).normalized_volume, bezout=bezout_number(system))

    def summary(self, output):
        return f"normalized volume of Q_F is {output['V_F']} (Bezout number {output['bezout']})"


class MixedVolume(CommandStrategy):
    name = "mixedvol"

    def execute(self, system, cfg, config):
        if system.m != system.nvars:
            raise ValueError(f"mixed volume needs {system.nvars} polynomials, got {system.m}")
        polytopes = [newton_polytope(f) for f in system]
        return dict(n=system.nvars, mixed_volume=mixed_volume(polytopes, config.max_workers), bezout=bezout_number(system))

    def summary(self, output):
        return f"at most {output['mixed_volume']} isolated roots in the torus"
