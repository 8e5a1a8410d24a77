"""Degree-distribution dynamics of growing preferential-attachment networks.

Thin Python layer over the native core: composite results come back as
plain dicts and exact constants as ``fractions.Fraction``.
"""

import json as _json
from fractions import Fraction as _Fraction

from . import _core
from ._core import (
    ClosedFormSolution,
    InputError,
    IntegrationError,
    ModelParams,
    SimulationError,
    d_of_t,
    g,
    hyp2f1_terminating,
    n_of_t,
    nk_hypergeometric,
    nk_krapivsky_redner,
)

__version__ = _core.version()

__all__ = [
    "ClosedFormSolution",
    "InputError",
    "IntegrationError",
    "ModelParams",
    "SimulationError",
    "asymptotic_pk",
    "binomial",
    "compare",
    "conservation",
    "d_of_t",
    "decay_fit",
    "ensemble",
    "factorial",
    "g",
    "hyp2f1_terminating",
    "identity_probe",
    "integrate",
    "n_of_t",
    "nk_hypergeometric",
    "nk_krapivsky_redner",
    "scaled_constant",
    "simulate",
    "solve",
]


def _fraction(parts):
    num, den = parts
    return _Fraction(int(num), int(den))


def factorial(n):
    return _fraction(_core.factorial(n))


def binomial(n, k):
    return _fraction(_core.binomial(n, k))


def asymptotic_pk(m, k):
    return _fraction(_core.asymptotic_pk(m, k))


def scaled_constant(solution, i):
    """K_i as an exact fraction."""
    return _fraction(solution.scaled_constant(i))


def solve(params, k_max, times):
    """N_k(t) for k = m..k_max at each time, as {t: [N_m, ..., N_kmax]}."""
    sol = ClosedFormSolution(params, k_max)
    return {t: [sol.nk(k, t) for k in range(params.m, k_max + 1)] for t in times}


def conservation(solution, t, k_max):
    return _json.loads(solution.conservation(t, k_max))


def decay_fit(solution, k, t_grid):
    return _json.loads(solution.decay_fit(k, list(t_grid)))


def integrate(params, times, k_max=400, rel_tol=1e-10, abs_tol=1e-18):
    return _json.loads(_core.integrate(params, list(times), k_max, rel_tol, abs_tol))


def simulate(params, t_end, seed, snapshots, sampling="distinct"):
    return _json.loads(_core.simulate(params, t_end, seed, list(snapshots), sampling))


def ensemble(params, t_end, snapshots, replicas, seed, sampling="distinct", threads=0):
    return _json.loads(_core.ensemble(params, t_end, list(snapshots), replicas, seed, sampling, threads))


def compare(params, a, b, times, k_max=40, tol=1e-6):
    return _json.loads(_core.compare_sources(params, a, b, list(times), k_max, tol))


def identity_probe(m, lam, t, j_max=50, tol=1e-6):
    return _json.loads(_core.identity_probe(m, lam, t, j_max, tol))
