"""Received powers, regime margin, and transmit-power feasibility.

received_power(k) is the signal power node k would see with every
in-neighbor transmitting a full-budget symbol coherently; it depends only
on the network, never on the chosen gains.  Gains are signed and enter the
sum before squaring, so mixed signs can drive the value toward zero, which
is a hard error wherever its reciprocal is needed.

max_safe_gain(k) is the largest amplification magnitude for which the
received-power sufficient condition guarantees the transmit budget.  The
condition is one-directional: exact_transmit_power computes the true second
moment so the two can be compared, and check_feasible reports both verdicts
side by side.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .coding import CodingState, propagate_coefficients
from .gains import GainAssignment
from .network import LayeredNetwork, NodeId, RegimeSpec


def received_power(net: LayeredNetwork, k: NodeId) -> float:
    """Full-budget coherent received power (sum_j h[j,k] sqrt(P_j))^2."""
    if k.layer == 0:
        raise ValueError("the source node receives nothing")
    row = net.gain_matrices[k.layer - 1][k.index]
    if k.layer == 1:
        amplitudes = np.array([math.sqrt(net.source_power)])
    else:
        amplitudes = np.sqrt(net.relay_budgets[k.layer - 2])
    total = float(row @ amplitudes)
    return total * total


def node_delta(net: LayeredNetwork, k: NodeId) -> float:
    """Reciprocal received power; the per-node smallness measure."""
    p = received_power(net, k)
    if p == 0.0:
        raise ValueError(f"received power at {k} is zero; its reciprocal is undefined")
    return 1.0 / p


def regime_delta(net: LayeredNetwork, spec: RegimeSpec) -> float:
    """Smallest margin for which every node outside the exceptional layer
    (and the source) has received power at least 1/delta."""
    spec.validate(net)
    worst = math.inf
    for k in net.nodes():
        if k.layer == 0 or k.layer == spec.exceptional_layer:
            continue
        p = received_power(net, k)
        if p == 0.0:
            raise ValueError(f"received power at {k} is zero; regime margin undefined")
        worst = min(worst, p)
    if not math.isfinite(worst):
        raise ValueError("no nodes outside the exceptional layer")
    return 1.0 / worst


def max_safe_gain(net: LayeredNetwork, k: NodeId) -> float:
    """Largest |beta| at k under the sufficient power condition.

    Equals sqrt(P_k / ((1 + 1/P_R) * P_R)) with P_R the received power.
    """
    p_r = received_power(net, k)
    if p_r == 0.0:
        raise ValueError(f"received power at {k} is zero; no safe gain exists")
    return math.sqrt(net.budget(k) / ((1.0 + 1.0 / p_r) * p_r))


@dataclass(frozen=True)
class PowerProfile:
    """Network-only power quantities, optionally with a regime margin."""

    received_power: dict[NodeId, float]
    delta_node: dict[NodeId, float]
    max_gain_sq: dict[NodeId, float]
    regime_delta: float | None = None


def power_profile(net: LayeredNetwork, spec: RegimeSpec | None = None) -> PowerProfile:
    received = {k: received_power(net, k) for k in net.nodes() if k.layer > 0}
    deltas = {k: node_delta(net, k) for k in received}
    max_sq = {
        k: net.budget(k) / ((1.0 + deltas[k]) * received[k])
        for k in net.relays()
    }
    delta = regime_delta(net, spec) if spec is not None else None
    return PowerProfile(
        received_power=received, delta_node=deltas, max_gain_sq=max_sq, regime_delta=delta
    )


def exact_transmit_power(
    net: LayeredNetwork,
    gains: GainAssignment,
    k: NodeId,
    state: CodingState | None = None,
) -> float:
    """True second moment of node k's transmission, beta_k^2 * E[reception^2]."""
    if k.layer == 0:
        return net.source_power
    if k.layer == net.num_layers:
        raise ValueError("destination never transmits")
    if state is None:
        state = propagate_coefficients(net, gains)
    beta = gains.get(net, k)
    return beta * beta * state.received_second_moment(k)


# Slack for float round-trips like beta = sqrt(x) followed by beta^2 <= x.
_PASS_RTOL = 1e-12


@dataclass(frozen=True)
class NodeFeasibility:
    node: NodeId
    beta: float
    beta_max: float
    exact_power: float
    budget: float
    sufficient_ok: bool
    exact_ok: bool


@dataclass(frozen=True)
class FeasibilityReport:
    entries: tuple[NodeFeasibility, ...]

    @property
    def sufficient_ok(self) -> bool:
        return all(e.sufficient_ok for e in self.entries)

    @property
    def exact_ok(self) -> bool:
        return all(e.exact_ok for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "node": str(e.node),
                    "beta": e.beta,
                    "beta_max": e.beta_max,
                    "exact_power": e.exact_power,
                    "budget": e.budget,
                    "sufficient_ok": e.sufficient_ok,
                    "exact_ok": e.exact_ok,
                }
                for e in self.entries
            ],
            "sufficient_ok": self.sufficient_ok,
            "exact_ok": self.exact_ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["node,beta,beta_max,exact_power,budget,sufficient_ok,exact_ok"]
        for e in self.entries:
            lines.append(
                f"{e.node},{e.beta:.12g},{e.beta_max:.12g},{e.exact_power:.12g},"
                f"{e.budget:.12g},{str(e.sufficient_ok).lower()},{str(e.exact_ok).lower()}"
            )
        return "\n".join(lines) + "\n"


def check_feasible(net: LayeredNetwork, gains: GainAssignment) -> FeasibilityReport:
    """Per-relay comparison of the sufficient condition and the exact budget."""
    state = propagate_coefficients(net, gains)
    entries = []
    for k in net.relays():
        beta = gains.get(net, k)
        beta_max = max_safe_gain(net, k)
        exact = exact_transmit_power(net, gains, k, state=state)
        budget = net.budget(k)
        entries.append(
            NodeFeasibility(
                node=k,
                beta=beta,
                beta_max=beta_max,
                exact_power=exact,
                budget=budget,
                sufficient_ok=abs(beta) <= beta_max * (1.0 + _PASS_RTOL),
                exact_ok=exact <= budget * (1.0 + _PASS_RTOL),
            )
        )
    return FeasibilityReport(entries=tuple(entries))
