"""
A detector trace with two changes
=================================

Seven thousand observations with changes at 2000 and 5000. The trace is
written as a two-column CSV ready for any plotting tool.
"""

import numpy as np

from moped import DetectorConfig, MultivariateSeries, detector_trace
from moped.simulate import ScenarioSpec, generate_scenario

sim = generate_scenario(ScenarioSpec(n=7000, rho=0.6, change_points=(2000, 5000)), 3)
series = MultivariateSeries.from_pareto(sim.values)
trace = detector_trace(series, DetectorConfig(G=1000, k=100))

# a coarse text rendering, one bar per 250 steps
for t in range(1000, 6001, 250):
    v = trace.at(t)
    print(f"{t:5d} {'#' * int(60 * v / trace.max()):<60s} {v:.3f}")

np.savetxt("trace.csv", np.column_stack([trace.times, trace.values]),
           delimiter=",", header="t,T", comments="")
