"""Stationary fluid queues fed by Gaussian inputs with stationary increments."""

import json as _json

from . import _fluidq
from ._fluidq import (
    VarianceModel,
    covariance,
    covering_number,
    dkw_threshold,
    dudley_integral,
    estimate_rv_index,
    increment_autocovariances,
    ks_one_sample_exponential,
    ks_two_sample,
    modulus_bound,
    one_sided_sup_q0,
    sample_path,
    stationary_workload,
    workload_from_values,
)

__all__ = [
    "VarianceModel",
    "check_condition_C",
    "covariance",
    "covering_number",
    "delta_exponent_audit",
    "dkw_threshold",
    "dudley_integral",
    "entropy_profile",
    "estimate_rv_index",
    "increment_autocovariances",
    "ks_one_sample_exponential",
    "ks_two_sample",
    "modulus_bound",
    "one_sided_sup_q0",
    "potter_check",
    "run_input_flt",
    "run_workload_flt",
    "sample_path",
    "solve_delta",
    "stationary_workload",
    "workload_from_values",
]


def solve_delta(model, c):
    return _json.loads(_fluidq.solve_delta(model, c))


def delta_exponent_audit(model, regime):
    return _json.loads(_fluidq.delta_exponent_audit(model, regime))


def check_condition_C(model, epsilon=0.5):
    return _json.loads(_fluidq.check_condition_C(model, epsilon))


def potter_check(model, epsilon, a=1.0):
    return _json.loads(_fluidq.potter_check(model, epsilon, a))


def entropy_profile(model, L):
    return _json.loads(_fluidq.entropy_profile(model, L))


def _config(config):
    cfg = dict(config)
    if isinstance(cfg.get("model"), VarianceModel):
        cfg["model"] = _json.loads(cfg["model"].to_json())
    return _json.dumps(cfg)


def run_input_flt(config):
    """Input-process limit experiment; `config` uses the CLI's JSON keys."""
    return _json.loads(_fluidq.run_input_flt(_config(config)))


def run_workload_flt(config):
    """Workload limit experiment; `config` uses the CLI's JSON keys."""
    return _json.loads(_fluidq.run_workload_flt(_config(config)))
