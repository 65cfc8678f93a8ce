"""Regenerate frozen_logdensities.json (run only after an intended numerical change)."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parents[1]))

from conftest import MU, SIGMA2, mouse_scale_shapes  # noqa: E402

from pwshape.densities import DENSITIES, ModelSpec  # noqa: E402
from pwshape.generators import KotzGenerator  # noqa: E402

CASES = [("gaussian", 1), ("kotz1", 1), ("kotz2", 2), ("kotz3", 3), ("kotz", 2), ("theorem", 3)]


def compute():
    out = {}
    for conv in ("printed", "derived"):
        for name, T in CASES:
            model = ModelSpec(KotzGenerator(T, 0.5, 10), MU, SIGMA2, t_max=120,
                              radial_convention=conv)
            vals = [DENSITIES[name](s, model) for s in mouse_scale_shapes(3, 99)]
            out[f"{name}/T{T}/{conv}"] = [[v.log_magnitude, v.sign] for v in vals]
    return out


if __name__ == "__main__":
    path = Path(__file__).with_name("frozen_logdensities.json")
    path.write_text(json.dumps(compute(), indent=1, sort_keys=True) + "\n")
