"""Relation-head loss on random node vectors, with a finite-difference gradient check."""
import math

import numpy as np

from chronograph.trc_math import TrcParameters, grad_check_detail, random_batch, trc_forward, trc_loss

rng = np.random.default_rng(0)
batch = random_batch(rng, n_nodes=6, d=8, n_edges=20)

zero = trc_loss(batch, TrcParameters.zeros(8, 8))
print(f"zero parameters: loss {zero.loss:.6f} vs 20 ln 3 = {20 * math.log(3):.6f}")

params = TrcParameters.random(8, 16, rng)
result = trc_loss(batch, params)
print(f"random parameters: loss {result.loss:.4f}, per edge {result.mean_loss:.4f}")
print("first edge probabilities:", np.round(trc_forward(batch, params)[0], 4))

for name, err in grad_check_detail(params, batch).items():
    print(f"  {name:<3} relative error {err:.2e}")
