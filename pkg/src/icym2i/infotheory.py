"""Discrete information-theoretic core.

All quantities are computed in bits (log base 2) from explicit joint
probability tables over (Y, X1, X2). Continuous modalities are bridged to
this machinery by a seeded k-means quantizer.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError

LOG2 = np.log(2.0)

#: probabilities fed to logarithms are clamped to this range
PROB_CLAMP = 1e-9

_AXIS_OF = {"y": 0, "x1": 1, "x2": 2}


@dataclass(frozen=True)
class DiscreteJoint:
    """Normalized probability table over (Y x X1 x X2)."""

    prob: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.prob, dtype=float)
        if p.ndim != 3:
            raise DataError(f"joint table must be 3-dimensional, got shape {p.shape}")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise DataError("joint table entries must be finite and nonnegative")
        total = p.sum()
        if abs(total - 1.0) > 1e-9:
            raise DataError(f"joint table must sum to 1 (got {total!r})")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "prob", p)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.prob.shape

    def marginal(self, over: tuple[str, ...]) -> np.ndarray:
        """Marginal table over the named variables, in (y, x1, x2) order."""
        keep = sorted({_AXIS_OF[v] for v in over})
        if len(keep) != len(over):
            raise DataError(f"duplicate variables in {over!r}")
        drop = tuple(a for a in range(3) if a not in keep)
        return self.prob.sum(axis=drop)

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "DiscreteJoint":
        c = np.asarray(counts, dtype=float)
        total = c.sum()
        if total <= 0:
            raise DataError("counts must have positive total mass")
        return cls(c / total)

    @classmethod
    def from_samples(
        cls,
        y: np.ndarray,
        x1: np.ndarray,
        x2: np.ndarray,
        shape: tuple[int, int, int],
        sample_weight: np.ndarray | None = None,
    ) -> "DiscreteJoint":
        """Plug-in joint from integer-coded samples, optionally weighted."""
        y = np.asarray(y, dtype=int)
        x1 = np.asarray(x1, dtype=int)
        x2 = np.asarray(x2, dtype=int)
        ny, n1, n2 = shape
        flat = (y * n1 + x1) * n2 + x2
        counts = np.bincount(flat, weights=sample_weight, minlength=ny * n1 * n2)
        return cls.from_counts(counts.reshape(shape))


def _entropy_of_table(p: np.ndarray) -> float:
    p = np.asarray(p, dtype=float).ravel()
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum() / LOG2)


def entropy(joint: DiscreteJoint, over: tuple[str, ...]) -> float:
    """Shannon entropy in bits of the marginal over the named variables."""
    return _entropy_of_table(joint.marginal(over))


#: supported mutual-information forms, each reduced to an entropy identity
_MI_FORMS = ("y:x1x2", "y:x1", "y:x2", "y:x1|x2", "y:x2|x1")


def mutual_info(joint: DiscreteJoint, form: str) -> float:
    """Mutual information in bits, computed via entropy identities.

    ``"y:x1x2"`` is the three-way information I(Y:(X1,X2)); ``"y:x1|x2"``
    and ``"y:x2|x1"`` are the conditional forms.
    """
    h = lambda *v: entropy(joint, v)
    if form == "y:x1x2":
        return h("y") + h("x1", "x2") - h("y", "x1", "x2")
    if form == "y:x1":
        return h("y") + h("x1") - h("y", "x1")
    if form == "y:x2":
        return h("y") + h("x2") - h("y", "x2")
    if form == "y:x1|x2":
        return h("y", "x2") + h("x1", "x2") - h("y", "x1", "x2") - h("x2")
    if form == "y:x2|x1":
        return h("y", "x1") + h("x1", "x2") - h("y", "x1", "x2") - h("x1")
    raise DataError(f"unknown mutual-information form {form!r}; expected one of {_MI_FORMS}")


def coinformation(joint: DiscreteJoint) -> float:
    """Signed three-way overlap in bits; negative values indicate synergy."""
    h = lambda *v: entropy(joint, v)
    return (
        h("y") + h("x1") + h("x2")
        - h("x1", "x2") - h("y", "x1") - h("y", "x2")
        + h("y", "x1", "x2")
    )


def ipw_mutual_info(
    cond_y: np.ndarray,
    stabilized_weights: np.ndarray,
    base_weights: np.ndarray | None = None,
) -> float:
    """Corrected three-way mutual information from per-sample conditionals.

    ``cond_y[i, y]`` is the calibrated estimate of P(y | x1_i, x2_i); rows are
    complete-case samples (or enumerated cells when ``base_weights`` carries
    their probabilities). ``stabilized_weights`` transport the sample
    distribution to the underlying one; the label marginal is reweighted with
    the same weights so the log ratio is taken entirely under the corrected
    distribution.
    """
    cond = np.asarray(cond_y, dtype=float)
    w = np.asarray(stabilized_weights, dtype=float)
    if cond.ndim != 2 or cond.shape[0] != w.shape[0]:
        raise DataError("cond_y must be (n, |Y|) aligned with the weights")
    if base_weights is None:
        base = np.ones(cond.shape[0])
    else:
        base = np.asarray(base_weights, dtype=float)

    if np.any(cond < PROB_CLAMP) or np.any(cond > 1.0 - PROB_CLAMP):
        warnings.warn(
            "probability estimates clamped to [1e-9, 1-1e-9] inside corrected MI",
            RuntimeWarning,
            stacklevel=2,
        )
        cond = np.clip(cond, PROB_CLAMP, 1.0 - PROB_CLAMP)

    bw = base * w
    denom = bw.sum()
    if denom <= 0:
        raise DataError("weights must have positive total mass")
    p_y = bw @ cond / denom
    p_y = np.clip(p_y, PROB_CLAMP, None)
    inner = (cond * (np.log(cond) - np.log(p_y)[None, :])).sum(axis=1)
    return float(bw @ inner / denom / LOG2)


@dataclass(frozen=True)
class Quantizer:
    """Seeded k-means codebook mapping feature rows to bin indices."""

    centroids: np.ndarray
    seed: int
    collapsed: bool = field(default=False)

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def fit_quantizer(features: np.ndarray, k: int, seed: int, iterations: int = 50) -> Quantizer:
    """Lloyd's algorithm with a fixed iteration budget and seeded init."""
    x = np.atleast_2d(np.asarray(features, dtype=float))
    if x.shape[0] < k:
        raise DataError(f"need at least k={k} rows to fit a quantizer, got {x.shape[0]}")
    if k < 2:
        raise DataError("quantizer needs k >= 2 bins")

    unique = np.unique(x, axis=0)
    collapsed = unique.shape[0] < k
    if collapsed:
        warnings.warn(
            f"features admit only {unique.shape[0]} distinct rows; "
            f"quantizer will use fewer than k={k} effective bins",
            RuntimeWarning,
            stacklevel=2,
        )

    rng = np.random.default_rng(seed)
    if collapsed:
        reps = int(np.ceil(k / unique.shape[0]))
        centroids = np.tile(unique, (reps, 1))[:k].astype(float)
    else:
        pick = rng.choice(unique.shape[0], size=k, replace=False)
        centroids = unique[pick].astype(float)

    for _ in range(iterations):
        codes = _assign(x, centroids)
        for j in range(k):
            members = x[codes == j]
            if members.shape[0]:
                centroids[j] = members.mean(axis=0)
    return Quantizer(centroids=centroids, seed=seed, collapsed=collapsed)


def apply_quantizer(quantizer: Quantizer, features: np.ndarray) -> np.ndarray:
    """Nearest-centroid bin index per row; distance ties go to the lowest index."""
    x = np.atleast_2d(np.asarray(features, dtype=float))
    if x.shape[1] != quantizer.centroids.shape[1]:
        raise DataError(
            f"feature dimension {x.shape[1]} does not match quantizer "
            f"dimension {quantizer.centroids.shape[1]}"
        )
    return _assign(x, quantizer.centroids)


def _assign(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    return d2.argmin(axis=1)


def joint_to_csv(joint: DiscreteJoint, path) -> None:
    """Flat (y, x1, x2, prob) columnar text dump of a joint table."""
    ny, n1, n2 = joint.shape
    lines = ["y,x1,x2,prob"]
    for iy in range(ny):
        for i1 in range(n1):
            for i2 in range(n2):
                lines.append(f"{iy},{i1},{i2},{joint.prob[iy, i1, i2]:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def joint_from_csv(path) -> DiscreteJoint:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "y,x1,x2,prob":
            raise DataError(f"unexpected joint table header {header!r}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    ys, x1s, x2s, ps = zip(*rows)
    ny, n1, n2 = max(map(int, ys)) + 1, max(map(int, x1s)) + 1, max(map(int, x2s)) + 1
    table = np.zeros((ny, n1, n2))
    for iy, i1, i2, p in rows:
        table[int(iy), int(i1), int(i2)] = float(p)
    return DiscreteJoint(table / table.sum())
