from ..density import density_constants, koiran_test, paper_report, prime_window_count
from .command_strategy import CommandStrategy


class Density(CommandStrategy):
    name = "density"

    def execute(self, system, cfg, config):
        if config.density_mode == "paper-report":
            report = paper_report(system)
            output = dict(mode=config.density_mode)
            for key, value in report.items():
                output[key] = list(value) if isinstance(value, tuple) else value
            return output
        constants = density_constants(system)
        output = dict(mode=config.density_mode, A_F=constants.A_F, a_F=constants.a_F)
        if cfg.t is not None:
            window = prime_window_count(config.window_constant, cfg.t, config.budget)
            output.update(
                t=window.t,
                window=[window.lo, window.hi],
                primes=window.count,
                lemma_bound=window.lemma_bound,
                lemma_applies=window.lemma_applies,
            )
            return output
        verdict = koiran_test(system, config)
        output.update(
            t=verdict.t,
            window=list(verdict.window),
            primes_examined=verdict.primes_examined,
            witness_prime=verdict.witness_prime,
            feasible=verdict.feasible,
        )
        return output

    def summary(self, output):
        if output["mode"] == "paper-report":
            return f"largest candidate prime has {output['digits']} digits"
        if "primes" in output:
            return f"{output['primes']} primes in the window (lemma bound {output['lemma_bound']})"
        return "a root modulo a window prime" if output["feasible"] else "no root modulo the examined primes"
