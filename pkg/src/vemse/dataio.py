"""Record ingestion and result serialization.

On-disk format (both records and results): UTF-8 CSV, "," separator,
"\\n" line endings. Metadata lines come first and look like
"# key = value"; then a header row, then data rows. Undefined values are
serialized as empty fields. Floats are written with repr(), the shortest
decimal that round-trips, so replayed runs are bit-faithful.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .experiments import EnsembleResult, TimingReport
from .series import EntropyCurve, MultichannelSeries, RecordParseError, VemseError

__all__ = [
    "ResultFile",
    "load_record",
    "write_record",
    "write_result",
    "read_result",
    "curve_to_resultfile",
    "curve_from_resultfile",
    "ensemble_to_resultfile",
    "ensemble_from_resultfile",
    "timing_to_resultfile",
    "timing_from_resultfile",
]


@dataclass
class ResultFile:
    """A metadata block plus a rectangular table of cells.

    Cells are int, float, str, or None (undefined). The metadata block
    records everything needed to reproduce the run.
    """

    metadata: dict = field(default_factory=dict)
    columns: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_cell(s: str):
    if s == "":
        return None
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def write_result(result: ResultFile, path) -> None:
    """Write a ResultFile; read_result(write_result(r)) == r."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for key, value in result.metadata.items():
                fh.write("# %s = %s\n" % (key, value))
            fh.write(",".join(result.columns) + "\n")
            for row in result.rows:
                fh.write(",".join(_format_cell(v) for v in row) + "\n")
    except OSError as exc:
        raise VemseError("cannot write %s: %s" % (path, exc)) from exc


def read_result(path) -> ResultFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().split("\n")
    except OSError as exc:
        raise VemseError("cannot read %s: %s" % (path, exc)) from exc
    metadata = {}
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        body = lines[i][1:].strip()
        key, _, value = body.partition("=")
        metadata[key.strip()] = value.strip()
        i += 1
    if i >= len(lines) or lines[i] == "":
        raise RecordParseError("%s: missing header row" % (path,))
    columns = lines[i].split(",")
    rows = []
    for line in lines[i + 1:]:
        if line == "":
            continue
        rows.append([_parse_cell(c) for c in line.split(",")])
    return ResultFile(metadata=metadata, columns=columns, rows=rows)


# -- record files (raw multichannel samples) --------------------------------

def write_record(series: MultichannelSeries, path) -> None:
    """Write a multichannel record: one column per channel, one row per sample."""
    labels = series.channel_labels or ["ch%d" % c for c in range(series.n_channels)]
    metadata = {}
    if series.sample_rate_hz is not None:
        metadata["sample_rate_hz"] = repr(float(series.sample_rate_hz))
    rows = [list(map(float, series.channels[:, i])) for i in range(series.n_samples)]
    write_result(ResultFile(metadata=metadata, columns=labels, rows=rows), path)


def load_record(path, columns=None, max_rows=None, offset: int = 0) -> MultichannelSeries:
    """Load a multichannel record from CSV.

    Parameters
    ----------
    columns : list of int or str, optional
        Select and order channels (indices or header labels); selection
        order becomes channel order, which matters for directionality.
    max_rows : int, optional
        Keep at most this many samples.
    offset : int
        Skip this many leading samples before counting max_rows.

    Ragged rows and non-numeric cells raise RecordParseError with the
    offending coordinates; an empty file raises RecordParseError.
    """
    if not os.path.exists(path):
        raise VemseError("no such record file: %s" % (path,))
    rf = read_result(path)
    labels = rf.columns
    if not rf.rows:
        raise RecordParseError("%s: no data rows" % (path,))
    p = len(labels)
    data = np.empty((len(rf.rows), p))
    for rno, row in enumerate(rf.rows):
        if len(row) != p:
            raise RecordParseError(
                "%s: row %d has %d values, expected %d" % (path, rno + 1, len(row), p))
        for cno, cell in enumerate(row):
            if not isinstance(cell, (int, float)) or isinstance(cell, bool) \
                    or not np.isfinite(cell):
                raise RecordParseError(
                    "%s: row %d, column %d: not a finite number: %r"
                    % (path, rno + 1, cno + 1, cell))
            data[rno, cno] = cell
    if columns is not None:
        sel = []
        for col in columns:
            if isinstance(col, str):
                if col not in labels:
                    raise RecordParseError("%s: no column named %r" % (path, col))
                sel.append(labels.index(col))
            else:
                if not 0 <= col < p:
                    raise RecordParseError("%s: column index %d out of range" % (path, col))
                sel.append(int(col))
        data = data[:, sel]
        labels = [labels[i] for i in sel]
    data = data[offset:]
    if max_rows is not None:
        data = data[:max_rows]
    if data.shape[0] < 1:
        raise RecordParseError("%s: selection leaves no samples" % (path,))
    rate = rf.metadata.get("sample_rate_hz")
    return MultichannelSeries(
        channels=data.T.copy(),
        channel_labels=labels,
        sample_rate_hz=float(rate) if rate is not None else None,
    )


# -- converters -------------------------------------------------------------

def curve_to_resultfile(curve: EntropyCurve, metadata=None) -> ResultFile:
    md = dict(metadata or {})
    md.setdefault("kind", "curve")
    md["has_negative"] = str(curve.has_negative()).lower()
    columns = ["scale", "value"]
    with_probs = curve.probs is not None
    if with_probs:
        columns += ["phi_m", "phi_m1"]
    rows = []
    for i, tau in enumerate(curve.scales):
        row = [int(tau), curve.values[i]]
        if with_probs:
            pr = curve.probs[i]
            row += [None, None] if pr is None else [float(pr[0]), float(pr[1])]
        rows.append(row)
    return ResultFile(metadata=md, columns=columns, rows=rows)


def curve_from_resultfile(rf: ResultFile) -> EntropyCurve:
    scales = [r[0] for r in rf.rows]
    values = [None if r[1] is None else float(r[1]) for r in rf.rows]
    probs = None
    if "phi_m" in rf.columns:
        i0 = rf.columns.index("phi_m")
        probs = [None if r[i0] is None else (float(r[i0]), float(r[i0 + 1]))
                 for r in rf.rows]
    return EntropyCurve(scales=scales, values=values, probs=probs)


def ensemble_to_resultfile(result: EnsembleResult, metadata=None) -> ResultFile:
    md = dict(metadata or {})
    md.setdefault("kind", "ensemble")
    for key, value in result.config.items():
        md.setdefault(key, str(value))
    md.setdefault("estimator", result.estimator)
    md.setdefault("vary", result.swept_parameter)
    md.setdefault("realizations", str(result.realizations))
    md.setdefault("seed", str(result.base_seed))
    columns = ["model", "sweep_value", "mean", "std", "defined_count"]
    rows = []
    for mi, model in enumerate(result.model_names):
        for vi, value in enumerate(result.sweep_values):
            rows.append([model, value, result.mean[mi][vi], result.std[mi][vi],
                         int(result.defined_count[mi][vi])])
    return ResultFile(metadata=md, columns=columns, rows=rows)


def ensemble_from_resultfile(rf: ResultFile) -> EnsembleResult:
    models = []
    for row in rf.rows:
        if row[0] not in models:
            models.append(row[0])
    values = []
    for row in rf.rows:
        if row[0] == models[0]:
            values.append(row[1])
    mean = [[None] * len(values) for _ in models]
    std = [[None] * len(values) for _ in models]
    count = [[0] * len(values) for _ in models]
    for row in rf.rows:
        mi = models.index(row[0])
        vi = values.index(row[1])
        mean[mi][vi] = None if row[2] is None else float(row[2])
        std[mi][vi] = None if row[3] is None else float(row[3])
        count[mi][vi] = int(row[4])
    md = rf.metadata
    return EnsembleResult(
        estimator=md.get("estimator", ""),
        swept_parameter=md.get("vary", ""),
        sweep_values=values,
        model_names=models,
        mean=mean,
        std=std,
        defined_count=count,
        realizations=int(md.get("realizations", "0")),
        base_seed=int(md.get("seed", "0")),
        config={k: v for k, v in md.items() if k not in ("kind", "command")},
    )


def timing_to_resultfile(report: TimingReport, metadata=None) -> ResultFile:
    md = dict(metadata or {})
    md.setdefault("kind", "timing")
    for key, value in report.config.items():
        md.setdefault(key, str(value))
    columns = ["sweep_value", "vemse_mean_s", "vemse_median_s",
               "mmse_mean_s", "mmse_median_s", "runs"]
    rows = [[v, report.vemse_mean[i], report.vemse_median[i],
             report.mmse_mean[i], report.mmse_median[i], report.runs]
            for i, v in enumerate(report.values)]
    return ResultFile(metadata=md, columns=columns, rows=rows)


def timing_from_resultfile(rf: ResultFile) -> TimingReport:
    return TimingReport(
        vary=rf.metadata.get("vary", ""),
        values=[r[0] for r in rf.rows],
        vemse_mean=[float(r[1]) for r in rf.rows],
        vemse_median=[float(r[2]) for r in rf.rows],
        mmse_mean=[float(r[3]) for r in rf.rows],
        mmse_median=[float(r[4]) for r in rf.rows],
        runs=int(rf.rows[0][5]) if rf.rows else 0,
        config={k: v for k, v in rf.metadata.items() if k != "kind"},
    )
