"""Regenerate the shipped network configs from their builders."""

from pathlib import Path

from anclab import save_network
from anclab.presets import (
    asymmetric_three_layer,
    chain_network,
    diamond_network,
    wide_bottleneck_network,
)

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
CONFIGS.mkdir(exist_ok=True)

for name, net in [
    ("chain.json", chain_network(hops=2)),
    ("diamond.json", diamond_network()),
    ("three_layer.json", asymmetric_three_layer()),
    ("wide_bottleneck_base.json", wide_bottleneck_network(1)),
]:
    save_network(net, str(CONFIGS / name))
    print("wrote", CONFIGS / name)
