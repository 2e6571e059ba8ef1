"""Text formats: QUBO instance files, experiment configs, report JSON/CSV."""

from __future__ import annotations

import dataclasses
import io
import json

import numpy as np

from .core import QalsParams, QuboProblem, SolveReport
from .harness import ExperimentReport, ExperimentSpec


class ParseError(ValueError):
    pass


def parse_qubo_file(text: str) -> QuboProblem:
    """Parse the ``qubo <n>`` instance format.

    Body lines are ``i j value`` with 0-based indices, i <= j; omitted pairs
    are zero and the matrix is completed symmetrically.
    """
    n = None
    q = None
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if n is None:
            if len(tokens) != 2 or tokens[0] != "qubo":
                raise ParseError(f"line {lineno}: expected header 'qubo <n>'")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(f"line {lineno}: size is not an integer") from None
            if n < 1:
                raise ParseError(f"line {lineno}: size must be positive")
            q = np.zeros((n, n))
            continue
        if len(tokens) != 3:
            raise ParseError(f"line {lineno}: expected 'i j value'")
        try:
            i, j = int(tokens[0]), int(tokens[1])
            value = float(tokens[2])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed entry") from None
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"line {lineno}: index out of range for n={n}")
        if i > j:
            raise ParseError(f"line {lineno}: entries must have i <= j")
        if (i, j) in seen:
            raise ParseError(f"line {lineno}: duplicate entry ({i}, {j})")
        seen.add((i, j))
        q[i, j] = q[j, i] = value
    if n is None:
        raise ParseError("missing header line 'qubo <n>'")
    return QuboProblem(q)


def format_qubo_file(problem: QuboProblem, header_comment: str | None = None) -> str:
    """Emit an instance in the ``qubo <n>`` format (nonzero upper triangle)."""
    out = io.StringIO()
    if header_comment:
        out.write(f"# {header_comment}\n")
    out.write(f"qubo {problem.n}\n")
    for i in range(problem.n):
        for j in range(i, problem.n):
            v = float(problem.q[i, j])
            if v != 0.0:
                out.write(f"{i} {j} {v!r}\n")
    return out.getvalue()


def load_qubo_file(path) -> QuboProblem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_qubo_file(fh.read())


_SPEC_KEYS = {
    "n": int,
    "density": float,
    "replicas": int,
    "backend": str,
    "graph": str,
}
_PARAM_KEYS = {
    "p_delta": float,
    "eta": float,
    "q": float,
    "N": int,
    "lambda0": float,
    "k": int,
    "i_max": int,
    "N_max": int,
    "d_min": int,
    "seed": int,
}


def parse_experiment_config(text: str) -> ExperimentSpec:
    """Parse flat ``key = value`` experiment configuration lines."""
    spec_kwargs = {}
    param_kwargs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        try:
            if key in _SPEC_KEYS:
                spec_kwargs[key] = _SPEC_KEYS[key](value)
            elif key in _PARAM_KEYS:
                param_kwargs[key] = _PARAM_KEYS[key](value)
            elif key == "range":
                lo, _, hi = value.partition(":")
                spec_kwargs["coeff_range"] = (float(lo), float(hi))
            elif key == "success":
                if value.lower() not in ("true", "false"):
                    raise ValueError(value)
                spec_kwargs["success_stats"] = value.lower() == "true"
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}")
        except ParseError:
            raise
        except ValueError:
            raise ParseError(f"line {lineno}: bad value for {key!r}") from None
    if "n" not in spec_kwargs:
        raise ParseError("config must set n")
    try:
        return ExperimentSpec(params=QalsParams(**param_kwargs), **spec_kwargs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def solve_report_to_dict(report: SolveReport) -> dict:
    d = {
        "n": report.n,
        "seed": report.seed,
        "z_returned": [int(v) for v in report.z_returned],
        "f_returned": report.f_returned,
        "z_best": [int(v) for v in report.z_best],
        "f_best": report.f_best,
        "iterations": report.iterations,
        "evaluations": report.evaluations,
        "best_found_at": report.best_found_at,
        "tabu_m": report.tabu.m,
    }
    d["trace"] = report.trace
    return d


def solve_report_to_json(report: SolveReport) -> str:
    return json.dumps(solve_report_to_dict(report), indent=2)


def experiment_report_to_dict(report: ExperimentReport) -> dict:
    spec = report.spec
    return {
        "spec": {
            "n": spec.n,
            "density": spec.density,
            "coeff_range": list(spec.coeff_range),
            "replicas": spec.replicas,
            "backend": spec.backend,
            "graph": spec.graph,
            "success_stats": spec.success_stats,
            "params": dataclasses.asdict(spec.params),
        },
        "oracle_value": report.oracle_value,
        "replicas": [dataclasses.asdict(r) for r in report.replicas],
        "aggregates": {
            "success_rate": report.success_rate,
            "iters_to_opt_quantiles": report.iters_to_opt_quantiles,
        },
    }


def experiment_report_to_json(report: ExperimentReport) -> str:
    return json.dumps(experiment_report_to_dict(report), indent=2)


def experiment_report_to_csv(report: ExperimentReport) -> str:
    lines = ["replica,seed,f_best,success,iters_to_opt,millis"]
    for r in report.replicas:
        success = "" if r.success is None else str(r.success).lower()
        iters = "" if r.iters_to_opt is None else str(r.iters_to_opt)
        lines.append(f"{r.replica},{r.seed},{r.f_best!r},{success},{iters},{r.millis:.3f}")
    return "\n".join(lines) + "\n"
