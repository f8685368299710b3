"""Wall-clock comparison of vemse against mmse.

The composite delay vectors of mmse grow with the channel count, so its
cost climbs much faster than vemse's per-channel passes.
"""

from vemse import timing_benchmark

report = timing_benchmark("channels", [1, 2, 3, 4], n_samples=4000, runs=5)
print("channels   vemse mean   mmse mean   ratio")
for v, ve, mm in zip(report.values, report.vemse_mean, report.mmse_mean):
    print("%8d   %8.3f s   %8.3f s   %5.1fx" % (v, ve, mm, mm / ve))
