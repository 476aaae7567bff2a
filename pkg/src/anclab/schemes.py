"""Closed-form gain assignment schemes.

full_power_gains puts every relay at its per-node safe maximum, the right
choice when every relay enjoys large received power.  matched_gains handles
a network with one weak (exceptional) layer: relays outside that layer get
the safe maximum computed with the single regime-wide margin, while the
weak layer's gains are chosen so that each node's end-to-end contribution
arrives at the destination with a common positive scale, i.e. the layer
acts as a matched combiner subject to every node's power condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gains import GainAssignment
from .network import LayeredNetwork, NodeId, RegimeSpec
from .power import max_safe_gain, node_delta, received_power, regime_delta


@dataclass(frozen=True)
class SchemeParams:
    """Matched-combiner quantities for the exceptional layer.

    g maps each layer node to its compound downstream coefficient toward the
    destination (excluding the node's own gain); gamma = beta * g is the
    per-node end-to-end scale, equal to c1 * sqrt(received power) > 0.
    """

    c1: float
    g: dict[NodeId, float]
    gamma: dict[NodeId, float]


def full_power_gains(net: LayeredNetwork) -> GainAssignment:
    """Every relay at its per-node safe maximum gain."""
    layers = []
    for layer in range(1, net.num_layers):
        layers.append(
            np.array(
                [max_safe_gain(net, NodeId(layer, i)) for i in range(net.layer_sizes[layer])]
            )
        )
    return GainAssignment.from_layers(layers)


def downstream_gains(
    net: LayeredNetwork, gains: GainAssignment, layer: int
) -> dict[NodeId, float]:
    """Compound coefficient from each layer node's transmission to the destination.

    Multiplies the hop matrices with the already-assigned gains of layers
    layer+1..L-1; the nodes' own gains are excluded, so g_j * beta_j equals
    the propagated noise coefficient from j to the destination.
    """
    if not 1 <= layer <= net.num_layers - 1:
        raise ValueError(f"layer must lie in 1..{net.num_layers - 1}, got {layer}")
    row = net.gain_matrices[net.num_layers - 1].copy()  # shape (1, n_{L-1})
    for m in range(net.num_layers - 1, layer, -1):
        row = (row * gains.layer_array(net, m)) @ net.gain_matrices[m - 1]
    return {NodeId(layer, i): float(row[0, i]) for i in range(net.layer_sizes[layer])}


def matched_gains(
    net: LayeredNetwork, spec: RegimeSpec
) -> tuple[GainAssignment, SchemeParams | None]:
    """Gain assignment for a network with one weak layer.

    Relays outside the exceptional layer transmit at the safe maximum taken
    with the uniform regime margin (never above their per-node maximum).
    Exceptional-layer nodes get beta_j = c1 * sqrt(P_R_j) / g_j with
    c1 = min_j (|g_j| / P_R_j) * sqrt(P_j / (1 + 1/P_R_j)), which equalizes
    the destination-bound scales gamma_j = c1 * sqrt(P_R_j) and keeps every
    node inside its per-node power condition.

    With the exceptional layer set to L the assignment degenerates to the
    full-power form evaluated at the uniform margin and params is None.
    """
    spec.validate(net)
    l = spec.exceptional_layer
    delta = regime_delta(net, spec)

    layers: list[np.ndarray] = []
    for layer in range(1, net.num_layers):
        if layer == l:
            layers.append(np.zeros(net.layer_sizes[layer]))  # assigned below
            continue
        betas = []
        for i in range(net.layer_sizes[layer]):
            k = NodeId(layer, i)
            p_r = received_power(net, k)
            if p_r == 0.0:
                raise ValueError(f"received power at {k} is zero; scheme undefined")
            betas.append(math.sqrt(net.budget(k) / ((1.0 + delta) * p_r)))
        layers.append(np.array(betas))
    assignment = GainAssignment.from_layers(layers)

    if l == net.num_layers:
        return assignment, None

    g = downstream_gains(net, assignment, l)
    c1 = math.inf
    for k, g_k in g.items():
        if g_k == 0.0:
            raise ValueError(f"{k} is invisible at the destination (compound gain zero)")
        p_r = received_power(net, k)
        if p_r == 0.0:
            raise ValueError(f"received power at {k} is zero; scheme undefined")
        c1 = min(c1, abs(g_k) / p_r * math.sqrt(net.budget(k) / (1.0 + node_delta(net, k))))

    exceptional = np.array(
        [
            c1 * math.sqrt(received_power(net, NodeId(l, i))) / g[NodeId(l, i)]
            for i in range(net.layer_sizes[l])
        ]
    )
    arrays = [arr.copy() for arr in assignment.layers]
    arrays[l - 1] = exceptional
    assignment = GainAssignment.from_layers(arrays)

    gamma = {k: assignment.get(net, k) * g_k for k, g_k in g.items()}
    return assignment, SchemeParams(c1=c1, g=g, gamma=gamma)
