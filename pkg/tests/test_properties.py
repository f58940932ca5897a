"""Randomized library shakedown.

A session-scoped sweep (conftest.run_momentum_sweep) drives every invariant
that accepts a momentum: 200 random cubic polynomials on [0.3, 1.7], scaled
so |K| stays below 0.95. Each test here pins one invariant's worst observed
error to a frozen bound; the batch as a whole has a wall-clock budget.
"""
import pytest

from conftest import SWEEP_CASES

# worst error allowed per invariant, keyed as recorded by the sweep
BOUNDS = {
    "kp_rel": 1e-12,      # K/x reproduces the prescribed k_p (relative)
    "mean_H": 1e-8,       # mean prescription roundtrip on a 100-point grid
    "mean_K": 5e-8,       # momentum recovered from its own mean curvature
    "mean_c": 1e-12,      # x*(K_c1 - K_c2) == c1 - c2
    "gauss_G": 1e-8,      # gauss prescription roundtrip away from K zeros
    "gauss_K": 1e-6,      # |K| recovered from its own Gauss curvature
    "ident_H": 1e-14,     # H == (k_m + k_p)/2
    "ident_G": 1e-14,     # K_G == k_m * k_p
    "forms": 1e-14,       # II/I diagonal ratios == principal curvatures
    "gfm": 1e-9,          # induced K_G formula vs the constructed momentum
    "constraint": 1e-9,   # (H, K_G) compatibility with coupled constants
    "arc_add": 2e-10,     # arclength additivity
    "ode_z": 1e-9,        # ODE height vs quadrature height
    "round_A": 1e-6,      # measured momentum on interior profile samples
    "round_B": 1e-4,      # measured k_m (second differences, one order looser)
    "transl": 1e-10,      # K measurement under a vertical shift of the input
    "graph_slope": 1e-8,  # graph-height slope vs K/sqrt(1-K^2), after the
                          # stencil's own truncation allowance
}


@pytest.mark.parametrize("key", sorted(BOUNDS))
def test_sweep_invariant(momentum_sweep, key):
    val, case = momentum_sweep["worst"][key]
    assert val <= BOUNDS[key], \
        f"{key}: worst error {val:.3e} (case {case}) exceeds {BOUNDS[key]:.1e}"


def test_sweep_sigma_negation_is_exact(momentum_sweep):
    val, case = momentum_sweep["worst"]["gauss_sig"]
    assert val == 0.0, f"sigma=-1 differs from negation by {val:.3e} (case {case})"


def test_sweep_covers_every_recorded_invariant(momentum_sweep):
    recorded = set(momentum_sweep["worst"])
    assert recorded == set(BOUNDS) | {"gauss_sig"}


def test_sweep_budget(momentum_sweep):
    assert momentum_sweep["n_cases"] == SWEEP_CASES
    assert momentum_sweep["elapsed"] < 30.0, \
        f"sweep took {momentum_sweep['elapsed']:.1f} s"
