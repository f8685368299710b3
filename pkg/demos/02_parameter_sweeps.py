"""Ensemble sweeps over m, N and r for the synthetic model set.

Reproduces the three classic stability views: how many realizations stay
defined as the embedding dimension grows, how model separation improves
with record length, and how the entropy decays as the tolerance widens.
"""

from vemse import ModelBundle, SweepSpec, run_sweep

DUAL = [ModelBundle.homogeneous(k) for k in ("wgn", "ar1", "ar2", "ar3")]


def show(res):
    header = "model".ljust(10) + "".join("%14s" % v for v in res.sweep_values)
    print(header)
    for name in res.model_names:
        mean, std, count = res.row(name)
        cells = []
        for m, s, c in zip(mean, std, count):
            cells.append("     ---     " if m is None
                         else "%6.3f±%.3f" % (m, s) + ("" if c == res.realizations else "*"))
        print(name.ljust(10) + "".join("%14s" % c for c in cells))
    print()


# Definedness vs embedding dimension: vemse stays defined where mmse
# starts losing realizations (asterisks mark defined_count < R).
for estimator in ("vemse", "mmse"):
    print("== %s, m sweep, dual wgn, N=1000 ==" % estimator)
    show(run_sweep(SweepSpec(estimator=estimator, swept_parameter="m",
                             sweep_values=[1, 2, 3, 4, 5],
                             bundles=[ModelBundle.homogeneous("wgn")],
                             n_samples=1000)))

# Separation vs record length.
print("== vemse, N sweep ==")
show(run_sweep(SweepSpec(estimator="vemse", swept_parameter="N",
                         sweep_values=[100, 200, 400, 800], bundles=DUAL)))

# Monotone decay vs tolerance quotient.
print("== vemse, r sweep ==")
show(run_sweep(SweepSpec(estimator="vemse", swept_parameter="r",
                         sweep_values=[0.1, 0.2, 0.4, 0.8], bundles=DUAL,
                         n_samples=1000)))
