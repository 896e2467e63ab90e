"""Pseudospectral Camassa-Holm laboratory."""

from ._chlab import (
    ApproxParams,
    ApproxSolution,
    Error,
    Field,
    Grid,
    InvalidArgument,
    SolverConfig,
    c1_norm,
    ch_rhs,
    derivative,
    ds_apply,
    fit_slope,
    grid_for,
    high_freq,
    lambda_inv_apply,
    make_bump,
    parse_config,
    residual_h1,
    run,
    sobolev_norm,
    solve,
    sup_norm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
