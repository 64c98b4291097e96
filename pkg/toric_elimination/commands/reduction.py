from ..resultant_engine import monomial_reduction, univariate_reduction
from ..rur import feasibility_check
from ..univariate import coefficients
from .command_strategy import CommandStrategy


class Reduce(CommandStrategy):
    name = "reduce"

    def execute(self, system, cfg, config):
        if system.m != system.nvars:
            raise ValueError(f"reduce needs a square system, got {system.m} polynomials in {system.nvars} unknowns")
        if cfg.mono is not None:
            h = monomial_reduction(system, cfg.mono, config)
            return dict(mono=list(cfg.mono), degree=h.degree(), h=coefficients(h))
        reduction = univariate_reduction(system, config)
        output = dict(
            u=list(reduction.u),
            epsilon=reduction.epsilon,
            V_F=reduction.V_F,
            plan_kind=reduction.provenance["plan_kind"],
            plan_size=reduction.provenance["plan_size"],
            degree=reduction.h.degree(),
        )
        for report in reduction.bounds:
            output[f"{report.name}_holds"] = report.holds
        output["h"] = coefficients(reduction.h)
        return output

    def summary(self, output):
        return f"eliminant of degree {output['degree']}"


class Rur(CommandStrategy):
    name = "rur"

    def execute(self, system, cfg, config):
        result = feasibility_check(system, config)
        if result.rur is None:
            return dict(feasible=True, zero_system=True)
        r = result.rur
        output = dict(
            u=list(r.u),
            degree=r.h.degree(),
            verified_degree=r.verified_factor.degree(),
            h=coefficients(r.h),
            verified_factor=coefficients(r.verified_factor),
            a=list(r.a_i),
        )
        for i, p in enumerate(r.h_i, start=1):
            output[f"h_{i}"] = coefficients(p)
        return output

    def summary(self, output):
        if output.get("zero_system"):
            return "every polynomial is zero"
        return f"{output['verified_degree']} verified roots out of {output['degree']}"
