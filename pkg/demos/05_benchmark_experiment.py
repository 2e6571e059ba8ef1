"""Replicated benchmark runs with success-rate statistics."""

from qals import ExperimentSpec, QalsParams, run_experiment
from qals.fileio import experiment_report_to_csv

spec = ExperimentSpec(
    n=9,
    density=0.5,
    coeff_range=(-1.0, 1.0),
    replicas=12,
    params=QalsParams(i_max=600, seed=17),
    backend="exact",
    graph="complete",
)

report = run_experiment(spec)

print(f"instance n={spec.n}, oracle minimum {report.oracle_value:.4f}")
print(f"success rate over {spec.replicas} replicas: {report.success_rate:.0%}")
if report.iters_to_opt_quantiles:
    q = report.iters_to_opt_quantiles
    print(f"iterations to optimum: p25={q['p25']:.0f} p50={q['p50']:.0f} p90={q['p90']:.0f}")

print("\nper-replica rows (CSV):")
print(experiment_report_to_csv(report))
