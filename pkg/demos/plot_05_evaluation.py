"""
Scoring segmentations
=====================

Covering metric and V-measure on a few hand-made partitions of 100 points.
"""

from moped import Segmentation, covering_metric, qhat_distribution, v_measure

truth = Segmentation(100, (30, 70))
for est in [(30, 70), (35, 70), (50,), (), (10, 30, 50, 70, 90)]:
    e = Segmentation(100, est)
    print(f"{str(est):20s} CM={covering_metric(truth, e):.3f}  VM={v_measure(truth, e):.3f}")

# error in the number of changes over a batch of runs
print(qhat_distribution([0, 0, 1, -1, 0, 2]))
