"""Shared generators for randomized suites.

Random networks come in two flavors.  Coherent ones have strictly positive
gains, the setting in which the sufficient power condition and the rate
bounds are provable; signed ones draw gains from [-2, 2] away from zero and
exercise the sign bookkeeping of the coefficient algebra.
"""

from __future__ import annotations

import numpy as np

from anclab import GainAssignment, NodeId, build_network, max_safe_gain


def random_network(
    rng: np.random.Generator,
    max_layers: int = 5,
    max_width: int = 6,
    coherent: bool = False,
    gain_lo: float = 0.1,
    gain_hi: float = 2.0,
    budget_lo: float = 0.5,
    budget_hi: float = 4.0,
):
    num_hops = int(rng.integers(2, max_layers + 1))
    sizes = [1] + [int(rng.integers(1, max_width + 1)) for _ in range(num_hops - 1)] + [1]
    matrices = []
    for l in range(num_hops):
        shape = (sizes[l + 1], sizes[l])
        mat = rng.uniform(gain_lo, gain_hi, shape)
        if not coherent:
            mat *= rng.choice([-1.0, 1.0], size=shape)
        matrices.append(mat)
    budgets = rng.uniform(budget_lo, budget_hi, sum(sizes[1:-1]))
    source_power = float(rng.uniform(budget_lo, budget_hi))
    return build_network(sizes, matrices, budgets, source_power)


def box_limits(net) -> list[np.ndarray]:
    return [
        np.array([max_safe_gain(net, NodeId(layer, i)) for i in range(net.layer_sizes[layer])])
        for layer in range(1, net.num_layers)
    ]


def random_box_gains(
    rng: np.random.Generator, net, signed: bool = False
) -> GainAssignment:
    """Betas drawn uniformly inside each node's sufficient-condition box."""
    layers = []
    for limits in box_limits(net):
        fractions = rng.uniform(0.0, 1.0, limits.shape)
        if signed:
            fractions *= rng.choice([-1.0, 1.0], size=limits.shape)
        layers.append(fractions * limits)
    return GainAssignment.from_layers(layers)
