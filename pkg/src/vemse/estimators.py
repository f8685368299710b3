"""Entropy estimators: sample entropy, MSE, variational-embedding MSE, MMSE.

All estimators share the same machinery: non-overlapping coarse graining,
delay embedding, template matching under the Chebyshev (max-abs) distance
with an inclusive boundary, and probability aggregation with self-matches
excluded. Matching is counted with a k-d tree, which gives results
identical to the naive double loop (integer counts, same comparisons).

Undefined estimates (no matches at dimension m or m+1, or too few
templates at a scale) are returned as None, never raised and never NaN.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .series import (
    DegenerateToleranceError,
    EntropyCurve,
    EntropyParams,
    InvalidParameterError,
    MultichannelSeries,
    ToleranceRule,
)

__all__ = [
    "coarse_grain",
    "resolve_tolerance",
    "build_templates",
    "chebyshev_distance",
    "match_stats",
    "sampen",
    "mse",
    "vemse",
    "mmse",
    "TemplateSet",
    "MatchStats",
]


def coarse_grain(x, tau: int) -> np.ndarray:
    """Average x over non-overlapping windows of length tau.

    Output element j is the mean of x[j*tau : (j+1)*tau]; the trailing
    N mod tau samples are discarded. tau = 1 is the identity.
    """
    x = np.asarray(x, dtype=float)
    if tau < 1 or tau > x.size:
        raise InvalidParameterError("tau must satisfy 1 <= tau <= len(x), got %r" % (tau,))
    n = x.size // tau
    return x[: n * tau].reshape(n, tau).mean(axis=1)


def resolve_tolerance(data, rule: ToleranceRule) -> float:
    """Turn a tolerance rule into an absolute matching radius.

    In covariance_trace mode the radius is quotient * tr(S), where S is
    the P x P sample covariance matrix (ddof=1) of the channels. Constant
    data makes the trace zero and raises DegenerateToleranceError.
    """
    if rule.mode == "absolute":
        return float(rule.value)
    chans = data.channels if isinstance(data, MultichannelSeries) else np.atleast_2d(
        np.asarray(data, dtype=float))
    if chans.shape[1] < 2:
        raise InvalidParameterError("covariance_trace tolerance needs >= 2 samples per channel")
    trace = float(np.sum(np.var(chans, axis=1, ddof=1)))
    if trace <= 0.0:
        raise DegenerateToleranceError("covariance trace is zero (constant input)")
    return rule.value * trace


@dataclass
class TemplateSet:
    """Delay-embedded windows of one channel: row i is y[i], y[i+L], ..."""

    dimension: int
    lag: int
    templates: np.ndarray
    origin_channel: int | None = None

    def __len__(self):
        return self.templates.shape[0]


def build_templates(y, dim: int, lag: int, origin_channel: int | None = None) -> TemplateSet:
    """Build the delay-vector template set of y at the given dimension and lag.

    Returns len(y) - (dim-1)*lag templates; template i reads indices
    i, i+lag, ..., i+(dim-1)*lag. Fewer than two templates means matching
    is impossible and raises InvalidParameterError; estimators pre-check
    feasibility and turn this situation into an undefined point instead.
    """
    y = np.asarray(y, dtype=float)
    count = y.size - (dim - 1) * lag
    if count < 2:
        raise InvalidParameterError(
            "need at least %d samples for dim=%d lag=%d, got %d"
            % ((dim - 1) * lag + 2, dim, lag, y.size))
    idx = np.arange(count)[:, None] + lag * np.arange(dim)[None, :]
    return TemplateSet(dimension=dim, lag=lag, templates=y[idx], origin_channel=origin_channel)


def chebyshev_distance(a, b) -> float:
    """Maximum absolute componentwise difference between two templates."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise InvalidParameterError("template length mismatch: %s vs %s" % (a.shape, b.shape))
    return float(np.max(np.abs(a - b)))


@dataclass
class MatchStats:
    """Per-template match counts and the aggregated probabilities.

    counts[i] is B(i), the number of templates j != i within the radius;
    local_probabilities[i] = B(i)/(T-1); global_probability is their mean,
    computed as sum(B) / (T*(T-1)) so the aggregation is exact.
    """

    counts: np.ndarray
    local_probabilities: np.ndarray
    global_probability: float


def match_stats(tset: TemplateSet, radius: float) -> MatchStats:
    """Count, per template, the other templates within the Chebyshev radius.

    The boundary is inclusive (distance <= radius) and self-matches are
    excluded. Counting is symmetric by construction.
    """
    if radius <= 0:
        raise InvalidParameterError("radius must be > 0")
    tpl = tset.templates
    t = tpl.shape[0]
    if t < 2:
        raise InvalidParameterError("need at least 2 templates")
    tree = cKDTree(tpl)
    counts = tree.query_ball_point(tpl, r=radius, p=np.inf, return_length=True) - 1
    local = counts / (t - 1)
    phi = int(counts.sum()) / (t * (t - 1))
    return MatchStats(counts=counts, local_probabilities=local, global_probability=phi)


def _phi(y: np.ndarray, dim: int, lag: int, radius: float, cap: int | None = None):
    """Global match probability of y at one embedding dimension.

    Returns None when fewer than two templates exist. cap truncates the
    template list (used by the equal_template_count compatibility mode).
    Uses a pair count, which equals the mean of the per-template local
    probabilities exactly: sum(B) / (T*(T-1)).
    """
    count = y.size - (dim - 1) * lag
    if cap is not None:
        count = min(count, cap)
    if count < 2:
        return None
    idx = np.arange(count)[:, None] + lag * np.arange(dim)[None, :]
    tpl = y[idx]
    tree = cKDTree(tpl)
    ordered_pairs = tree.count_neighbors(tree, radius, p=np.inf)
    return int(ordered_pairs - count) / (count * (count - 1))


def _curve_point(channels, m: int, lag: int, radius: float, equal_template_count: bool):
    """One veMSE point from already coarse-grained channels.

    Channel c (0-based) is embedded at dimension m+c for the first pass
    and m+c+1 for the second; the per-channel probabilities are summed
    before the log ratio. Returns (value_or_None, probs_or_None).
    """
    phi_lo = 0.0
    phi_hi = 0.0
    for c, y in enumerate(channels):
        dim = m + c
        cap = None
        if equal_template_count:
            cap = y.size - dim * lag
        lo = _phi(y, dim, lag, radius, cap=cap)
        hi = _phi(y, dim + 1, lag, radius)
        if lo is None or hi is None:
            return None, None
        phi_lo += lo
        phi_hi += hi
    probs = (phi_lo, phi_hi)
    if phi_lo == 0.0 or phi_hi == 0.0:
        return None, probs
    return -math.log(phi_hi / phi_lo), probs


def _zscore(chans: np.ndarray) -> np.ndarray:
    mean = chans.mean(axis=1, keepdims=True)
    sd = chans.std(axis=1, ddof=1, keepdims=True)
    sd = np.where(sd > 0, sd, 1.0)
    return (chans - mean) / sd


def vemse(
    data: MultichannelSeries,
    params: EntropyParams,
    rule: ToleranceRule | None = None,
    *,
    normalize: bool = False,
    per_scale_tolerance: bool = False,
    equal_template_count: bool = False,
) -> EntropyCurve:
    """Variational-embedding multiscale sample entropy of a multichannel record.

    Per scale tau: every channel is coarse-grained, channel c (in input
    order) is embedded at dimension m+c-1 (1-based c), the global match
    probabilities are summed over channels at those dimensions and again
    with every dimension incremented, and the point value is
    -ln(phi_{m+1} / phi_m). A point is None when a pass is infeasible or
    either probability sum is zero.

    The matching radius is resolved once from the uncoarsened record
    (default) or per scale from the coarse-grained channels when
    per_scale_tolerance is set. Channels are used raw by default;
    normalize applies a per-channel z-score first. equal_template_count
    restricts the first pass to as many templates as the second, the
    classic sample-entropy convention; off by default, which follows the
    literal two-pass counting.

    Returns an EntropyCurve with the probability sums attached.
    """
    if not isinstance(data, MultichannelSeries):
        data = MultichannelSeries(data)
    params.check_feasible(data.n_samples)
    if rule is None:
        rule = ToleranceRule.trace(params.r)
    chans = _zscore(data.channels) if normalize else data.channels
    radius = None
    if not per_scale_tolerance:
        radius = resolve_tolerance(chans, rule)

    values: list[float | None] = []
    probs: list[tuple[float, float] | None] = []
    for tau in params.scales:
        cg = np.stack([coarse_grain(ch, tau) for ch in chans])
        r_abs = radius if radius is not None else resolve_tolerance(cg, rule)
        value, pr = _curve_point(list(cg), params.m, params.L, r_abs, equal_template_count)
        values.append(value)
        probs.append(pr)
    return EntropyCurve(scales=list(params.scales), values=values, probs=probs)


def mse(x, params: EntropyParams, rule: ToleranceRule | None = None, **flags) -> EntropyCurve:
    """Univariate multiscale sample entropy; the single-channel case of vemse."""
    return vemse(MultichannelSeries(np.asarray(x, dtype=float)), params, rule, **flags)


def sampen(x, m: int, r_abs: float, lag: int = 1, *, equal_template_count: bool = False):
    """Single-scale sample entropy with an absolute matching radius.

    Returns -ln(phi_{m+1}/phi_m) or None when either probability is zero
    or the data is too short for two templates at dimension m+1.
    """
    if r_abs <= 0:
        raise InvalidParameterError("r_abs must be > 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidParameterError("input contains non-finite samples")
    value, _ = _curve_point([x], m, lag, r_abs, equal_template_count)
    return value


def _cdv_phi(channels, dims, lags, radius: float):
    """MMSE global probability from composite delay vectors.

    Templates run over i = 0 .. N_t - n - 1 with n = max(dims)*max(lags);
    fewer than two templates returns None.
    """
    n_t = channels[0].size
    n = max(dims) * max(lags)
    count = n_t - n
    if count < 2:
        return None
    cols = []
    for y, m_c, l_c in zip(channels, dims, lags):
        for j in range(m_c):
            cols.append(y[j * l_c: j * l_c + count])
    tpl = np.column_stack(cols)
    tree = cKDTree(tpl)
    ordered_pairs = tree.count_neighbors(tree, radius, p=np.inf)
    return int(ordered_pairs - count) / (count * (count - 1))


def mmse(
    data: MultichannelSeries,
    dims,
    rule: ToleranceRule | None = None,
    lags=None,
    scales=(1,),
) -> EntropyCurve:
    """Multivariate multiscale sample entropy over composite delay vectors.

    Channels are z-scored first (so the covariance trace equals P), then
    per scale: coarse grain, concatenate the per-channel delay vectors
    into composite templates, and match under the Chebyshev distance.
    The second pass increments one channel's dimension at a time (P ways)
    and averages the resulting probabilities before the log ratio.

    Parameters
    ----------
    dims : sequence of int, per-channel embedding dimensions M.
    lags : sequence of int, per-channel time lags; default all ones.
    """
    if not isinstance(data, MultichannelSeries):
        data = MultichannelSeries(data)
    p = data.n_channels
    dims = [int(d) for d in dims]
    if len(dims) != p or any(d < 1 for d in dims):
        raise InvalidParameterError("dims must list a positive dimension per channel")
    lags = [1] * p if lags is None else [int(l) for l in lags]
    if len(lags) != p or any(l < 1 for l in lags):
        raise InvalidParameterError("lags must list a positive lag per channel")
    scales = [int(s) for s in scales]
    if rule is None:
        rule = ToleranceRule.trace(0.15)

    chans = _zscore(data.channels)
    radius = resolve_tolerance(chans, rule)

    values: list[float | None] = []
    probs: list[tuple[float, float] | None] = []
    for tau in scales:
        if tau < 1 or tau > data.n_samples:
            raise InvalidParameterError("scale %r out of range" % (tau,))
        cg = [coarse_grain(ch, tau) for ch in chans]
        phi = _cdv_phi(cg, dims, lags, radius)
        phi_ways = []
        feasible = phi is not None
        if feasible:
            for c_star in range(p):
                bumped = list(dims)
                bumped[c_star] += 1
                w = _cdv_phi(cg, bumped, lags, radius)
                if w is None:
                    feasible = False
                    break
                phi_ways.append(w)
        if not feasible:
            values.append(None)
            probs.append(None)
            continue
        phi_star = math.fsum(phi_ways) / p
        probs.append((phi, phi_star))
        if phi == 0.0 or phi_star == 0.0:
            values.append(None)
        else:
            values.append(-math.log(phi_star / phi))
    return EntropyCurve(scales=scales, values=values, probs=probs)
