"""Signal and noise propagation coefficients.

Each node retransmits a scaled copy of its noisy reception, so the signal
arriving anywhere is a linear combination of the source symbol and every
noise injected upstream.  The coefficient from an origin o to a node k is
the sum over all relay paths of the per-hop products beta * h, with the
origin's own amplification included (the source has beta fixed at 1).

propagate_coefficients computes all coefficients by a forward layer sweep;
path_coefficient recomputes a single one by brute-force path enumeration
and exists as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gains import GainAssignment
from .network import LayeredNetwork, NodeId


class TooManyPathsError(RuntimeError):
    """Raised when path enumeration would exceed the combinatorial guard."""


MAX_ENUMERATED_PATHS = 10**6


@dataclass(frozen=True)
class CodingState:
    """All propagation coefficients of a network under one gain assignment.

    source_coeff[k] is the coefficient multiplying the source symbol at k.
    noise_coeff[(i, k)] is the coefficient multiplying relay i's local noise
    at k; it is 1 at k == i and 0 when k is not strictly downstream of i.
    The unit coefficient of each node's own fresh noise is implicit.
    """

    net: LayeredNetwork
    source_coeff: dict[NodeId, float]
    noise_coeff: dict[tuple[NodeId, NodeId], float]

    def f_source(self, k: NodeId) -> float:
        return self.source_coeff[k]

    def f_noise(self, origin: NodeId, k: NodeId) -> float:
        if origin == k:
            return 1.0
        return self.noise_coeff.get((origin, k), 0.0)

    def noise_second_moment(self, k: NodeId) -> float:
        """Total propagated-plus-local noise power at k (unit variances)."""
        if k.layer == 0:
            raise ValueError("the source receives nothing")
        acc = sum(
            v * v for (i, kk), v in self.noise_coeff.items() if kk == k and i != k
        )
        return acc + 1.0

    def received_second_moment(self, k: NodeId) -> float:
        """Second moment of the reception at k: signal power plus noise power."""
        f = self.source_coeff[k]
        return f * f * self.net.source_power + self.noise_second_moment(k)


def local_coefficient(
    net: LayeredNetwork,
    gains: GainAssignment,
    upstream: tuple[NodeId, NodeId] | None,
    downstream: tuple[NodeId, NodeId],
) -> float:
    """Per-edge-pair scale factor beta_k * h applied at the shared node k.

    upstream is None when the pair starts at the source (whose gain is 1).
    Raises ValueError when the edges are not adjacent channels of one node.
    """
    k, m = downstream
    if m.layer != k.layer + 1:
        raise ValueError(f"edge {k}->{m} does not cross one layer")
    if upstream is None:
        if k.layer != 0:
            raise ValueError("only pairs starting at the source may omit the upstream edge")
    else:
        j, k_up = upstream
        if k_up != k:
            raise ValueError(f"edges {j}->{k_up} and {k}->{m} do not share a node")
        if k_up.layer != j.layer + 1:
            raise ValueError(f"edge {j}->{k_up} does not cross one layer")
    return gains.get(net, k) * net.gain(k, m)


def _propagate_from(
    net: LayeredNetwork, beta_layers: list[np.ndarray], origin: NodeId
) -> dict[NodeId, float]:
    """Forward sweep of coefficients from one origin to all downstream nodes."""
    coeffs: dict[NodeId, float] = {origin: 1.0}
    current = np.zeros(net.layer_sizes[origin.layer])
    current[origin.index] = 1.0
    for layer in range(origin.layer, net.num_layers):
        scaled = current * beta_layers[layer]
        current = net.gain_matrices[layer] @ scaled
        for index, value in enumerate(current):
            coeffs[NodeId(layer + 1, index)] = float(value)
    return coeffs


def propagate_coefficients(net: LayeredNetwork, gains: GainAssignment) -> CodingState:
    """Compute every source and noise coefficient by layered dynamic programming.

    One forward sweep per origin (the source plus each relay); the origin's
    own amplification rides along with the first hop.
    """
    beta_layers = [np.ones(net.layer_sizes[0])]
    for layer in range(1, net.num_layers):
        beta_layers.append(gains.layer_array(net, layer))
    beta_layers.append(np.zeros(1))  # destination never transmits

    source_coeff = _propagate_from(net, beta_layers, net.source)
    noise_coeff: dict[tuple[NodeId, NodeId], float] = {}
    for origin in net.relays():
        for k, value in _propagate_from(net, beta_layers, origin).items():
            noise_coeff[(origin, k)] = value
    return CodingState(net=net, source_coeff=source_coeff, noise_coeff=noise_coeff)


def count_paths(net: LayeredNetwork, origin: NodeId, target: NodeId) -> int:
    """Number of relay paths from origin to target through nonzero gains."""
    if target.layer <= origin.layer:
        return 1 if target == origin else 0
    counts = np.zeros(net.layer_sizes[origin.layer], dtype=np.int64)
    counts[origin.index] = 1
    for layer in range(origin.layer, target.layer):
        adjacency = (net.gain_matrices[layer] != 0.0).astype(np.int64)
        counts = adjacency @ counts
    return int(counts[target.index])


def enumerate_paths(
    net: LayeredNetwork, origin: NodeId, target: NodeId
) -> list[tuple[NodeId, ...]]:
    """All relay paths origin -> target, one layer per hop, nonzero gains only."""
    total = count_paths(net, origin, target)
    if total > MAX_ENUMERATED_PATHS:
        raise TooManyPathsError(
            f"{total} paths from {origin} to {target} exceed the "
            f"{MAX_ENUMERATED_PATHS} enumeration guard"
        )
    paths: list[tuple[NodeId, ...]] = []

    def extend(prefix: list[NodeId]) -> None:
        tail = prefix[-1]
        if tail.layer == target.layer:
            if tail == target:
                paths.append(tuple(prefix))
            return
        column = net.gain_matrices[tail.layer][:, tail.index]
        for nxt in np.flatnonzero(column != 0.0):
            prefix.append(NodeId(tail.layer + 1, int(nxt)))
            extend(prefix)
            prefix.pop()

    if target.layer > origin.layer:
        extend([origin])
    elif target == origin:
        paths.append((origin,))
    return paths


def path_coefficient(
    net: LayeredNetwork, gains: GainAssignment, origin: NodeId, target: NodeId
) -> float:
    """Coefficient from origin to target by explicit path enumeration.

    Sums, over every path, the product of beta * h along the hops, starting
    with the origin's own amplification.  Independent of the layered sweep;
    guarded against combinatorial blow-up.
    """
    if target == origin:
        return 1.0
    total = 0.0
    for path in enumerate_paths(net, origin, target):
        product = 1.0
        for a, b in zip(path, path[1:]):
            product *= gains.get(net, a) * net.gain(a, b)
        total += product
    return total
