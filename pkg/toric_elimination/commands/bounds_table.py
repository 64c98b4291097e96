from ..bounds import hF_height_bound, matrix_constants, root_size_bound
from ..density import nullstellensatz_bound
from ..polynomials import height_stats
from ..polytope import normalized_volume, q_polytope
from ..resultant_engine import univariate_reduction
from ..rur import compute_rur, rur_height_report
from .command_strategy import CommandStrategy


class Bounds(CommandStrategy):
    name = "bounds"

    def execute(self, system, cfg, config):
        stats = height_stats(system)
        V_F = normalized_volume(q_polytope(system)).normalized_volume
        constants = matrix_constants(stats.n, V_F)
        output = dict(V_F=V_F, m_F=constants.m_F, r_F=constants.r_F, sigma=stats.sigma, mu=stats.mu, c=stats.c)
        output["nullstellensatz"] = nullstellensatz_bound(stats.n, stats.m, stats.D, V_F, stats.sigma)
        reports = [root_size_bound(stats, V_F)]
        if system.m == system.nvars:
            reduction = univariate_reduction(system, config)
            reports.extend(reduction.bounds)
            reports.append(rur_height_report(compute_rur(system, config, reduction)))
        else:
            reports.append(hF_height_bound(stats, V_F))
        for report in reports:
            output[f"{report.name}.value"] = report.value
            output[f"{report.name}.observed"] = report.checked_against
            output[f"{report.name}.holds"] = report.holds
        return output

    def summary(self, output):
        failed = [key[: -len(".holds")] for key, value in output.items() if key.endswith(".holds") and value is False]
        return f"bounds violated: {' '.join(failed)}" if failed else "every checked bound holds"
