from ..dimension import compute_dimension
from ..rur import count_roots, feasibility_check
from .command_strategy import CommandStrategy


class Dim(CommandStrategy):
    name = "dim"

    def execute(self, system, cfg, config):
        result = compute_dimension(system, config)
        output = dict(dim=result.dim, empty=result.is_empty)
        for level, tallies in sorted(result.witness.items()):
            if isinstance(tallies, dict):
                for key in ("feasible", "infeasible", "resampled"):
                    if key in tallies:
                        output[f"{level}_{key}"] = tallies[key]
        return output

    def summary(self, output):
        return "the zero set is empty" if output["empty"] else f"the zero set has dimension {output['dim']}"


class Feasible(CommandStrategy):
    name = "feasible"

    def execute(self, system, cfg, config):
        result = feasibility_check(system, config)
        return dict(feasible=result.feasible, verified_degree=result.verified_factor.degree())

    def summary(self, output):
        return "a complex root exists" if output["feasible"] else "no complex root"


class Count(CommandStrategy):
    name = "count"

    def execute(self, system, cfg, config):
        counts = count_roots(system, config)
        return dict(complex=counts.complex, real=counts.real, rational=counts.rational)

    def summary(self, output):
        return f"{output['complex']} complex roots, {output['real']} real, {output['rational']} rational"
