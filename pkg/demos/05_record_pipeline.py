"""End-to-end record pipeline through the CLI entry points.

Generates an AR(3) triple record, builds a shuffled surrogate, computes
vemse curves for both, and replays one result file to show byte-exact
reproducibility. Everything lands in a temp directory and the same steps
work from the shell via the `vemse` console script.
"""

import tempfile
from pathlib import Path

from vemse.cli import main, replay
from vemse.dataio import curve_from_resultfile, read_result

with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    rec, shuf = tmp / "rec.csv", tmp / "shuf.csv"
    out0, out1 = tmp / "orig_curve.csv", tmp / "shuf_curve.csv"

    main(["generate", "--kind", "ar3", "--n", "2000", "--channels", "3",
          "--seed", "11", "--output", str(rec)])
    main(["surrogate", "--input", str(rec), "--seed", "11", "--output", str(shuf)])
    for src, dst in ((rec, out0), (shuf, out1)):
        main(["compute", "--estimator", "vemse", "--input", str(src),
              "--scales", "1..10", "--output", str(dst)])

    orig = curve_from_resultfile(read_result(out0))
    surr = curve_from_resultfile(read_result(out1))
    print("\ntau   original   shuffled")
    for t, o, s in zip(orig.scales, orig.values, surr.values):
        print("%3d   %8.4f   %8.4f" % (t, o, s))
    print("\nshuffling destroys temporal correlation: the surrogate decays "
          "toward white noise while the original stays complex at large tau.")

    redo = tmp / "redo.csv"
    replay(out0, redo)
    print("replay byte-identical:", out0.read_bytes() == redo.read_bytes())
