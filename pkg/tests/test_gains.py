import json

import numpy as np
import pytest

from anclab import GainAssignment, NodeId, gains_from_dict, gains_to_dict
from anclab.presets import asymmetric_three_layer
from conftest import random_box_gains, random_network


def test_round_trip_exact():
    rng = np.random.default_rng(9)
    for _ in range(20):
        net = random_network(rng)
        gains = random_box_gains(rng, net, signed=True)
        data = json.loads(json.dumps(gains_to_dict(net, gains)))
        back = gains_from_dict(net, data)
        for k in net.relays():
            assert back.get(net, k) == gains.get(net, k)


def test_source_gain_fixed_at_one():
    net = asymmetric_three_layer()
    gains = GainAssignment.from_layers([[0.1, 0.2], [0.3, 0.4]])
    assert gains.get(net, net.source) == 1.0
    with pytest.raises(ValueError):
        gains.get(net, net.destination)


def test_incomplete_assignment_rejected():
    net = asymmetric_three_layer()
    with pytest.raises(ValueError, match="every relay"):
        GainAssignment.from_dict(net, {NodeId(1, 0): 0.5})


def test_non_finite_gain_rejected():
    with pytest.raises(ValueError, match="finite"):
        GainAssignment.from_layers([[np.nan]])


def test_unknown_field_rejected():
    net = asymmetric_three_layer()
    with pytest.raises(ValueError, match="unknown"):
        gains_from_dict(net, {"beta": {}, "color": "red"})


def test_optimizer_report_fields_accepted():
    net = asymmetric_three_layer()
    gains = GainAssignment.from_layers([[0.1, 0.2], [0.3, 0.4]])
    data = gains_to_dict(net, gains)
    data["snr"] = 1.0
    data["rate"] = 0.5
    back = gains_from_dict(net, data)
    assert back.get(net, NodeId(2, 1)) == 0.4
