"""Low-tubal-rank tensor completion by accelerated proximal gradient.

The iteration alternates a momentum extrapolation, a gradient step on the
data-fit term (Lipschitz constant 1, so observed entries of the gradient
point are restored exactly) and a singular-value-thresholding prox step with
a geometrically decaying shrinkage mu_k = max(nu^k mu_0, mu_bar).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .core import fro_norm
from .errors import ParameterError, ShapeError, UnsupportedSpecError
from .linalg import svt
from .transforms import TransformSpec


def project_omega(x, mask) -> np.ndarray:
    """P_Omega(x): keep observed entries, zero the rest."""
    x = np.asarray(x)
    mask = np.asarray(mask, dtype=bool)
    if x.shape != mask.shape:
        raise ShapeError(f"mask shape {mask.shape} does not match data shape {x.shape}")
    return np.where(mask, x, 0.0)


def sample_mask(dims, sr: float, seed: int) -> np.ndarray:
    """Uniform observation mask with exactly round(sr * prod(dims)) entries."""
    if not 0.0 <= sr <= 1.0:
        raise ParameterError(f"sampling ratio must be in [0, 1], got {sr}")
    dims = tuple(int(d) for d in dims)
    total = int(np.prod(dims, dtype=np.int64))
    count = int(round(sr * total))
    rng = np.random.default_rng(seed)
    flat = np.zeros(total, dtype=bool)
    flat[rng.choice(total, size=count, replace=False)] = True
    return flat.reshape(dims, order="F")


def rse(obtained, original, denominator: str = "obtained") -> float:
    """Relative squared error ||original - obtained||_F^2 / ||obtained||_F^2.

    The denominator is the obtained tensor by convention here; pass
    ``denominator='original'`` for the more common normalization.
    """
    obtained = np.asarray(obtained)
    original = np.asarray(original)
    if obtained.shape != original.shape:
        raise ShapeError(f"dimension mismatch: {obtained.shape} vs {original.shape}")
    if denominator not in ("obtained", "original"):
        raise ParameterError(f"unknown RSE denominator {denominator!r}")
    den = fro_norm(obtained if denominator == "obtained" else original) ** 2
    if den == 0.0:
        raise ParameterError("RSE undefined: zero denominator tensor")
    return fro_norm(original - obtained) ** 2 / den


def psnr(obtained, original) -> float:
    """10 log10(Max^2 / ||obtained - original||_F^2), Max over the obtained tensor.

    Identical tensors give +inf.
    """
    obtained = np.asarray(obtained)
    original = np.asarray(original)
    if obtained.shape != original.shape:
        raise ShapeError(f"dimension mismatch: {obtained.shape} vs {original.shape}")
    err = fro_norm(obtained - original) ** 2
    if err == 0.0:
        return math.inf
    peak = float(np.max(obtained))
    if peak == 0.0:
        return -math.inf
    return 10.0 * math.log10(peak**2 / err)


@dataclass
class CompletionConfig:
    """Solver parameters; mu0 defaults to nu * ||M||_F at solve time."""

    spec: TransformSpec
    nu: float = 0.9
    mu0: float | None = None
    mu_bar_ratio: float = 1e-4
    tol: float = 1e-4
    max_iters: int = 100
    reimpose_observed: bool = False
    rse_denominator: str = "obtained"

    def validate(self):
        if not 0.0 < self.nu < 1.0:
            raise ParameterError(f"nu must be in (0, 1), got {self.nu}")
        if self.tol <= 0.0:
            raise ParameterError(f"tol must be > 0, got {self.tol}")
        if self.mu_bar_ratio > 1.0 or self.mu_bar_ratio < 0.0:
            raise ParameterError(f"mu_bar_ratio must be in [0, 1], got {self.mu_bar_ratio}")
        if self.max_iters < 1:
            raise ParameterError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass
class IterationRecord:
    k: int
    mu: float
    t: float
    rel_change: float
    rse: float | None = None
    psnr: float | None = None


@dataclass
class CompletionTrace:
    records: list = field(default_factory=list)
    status: str = "max-iters"

    @property
    def iterations(self) -> int:
        return len(self.records)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iter", "mu", "t", "rel_change", "rse", "psnr"])
            for r in self.records:
                writer.writerow(
                    [
                        r.k,
                        repr(r.mu),
                        repr(r.t),
                        repr(r.rel_change),
                        "" if r.rse is None else repr(r.rse),
                        "" if r.psnr is None else repr(r.psnr),
                    ]
                )


def pga_complete(m, mask, cfg: CompletionConfig, ground_truth=None):
    """Complete the observed tensor P_Omega(m) by accelerated proximal gradient.

    Returns (completed tensor, trace).  Iterates start from X^0 = X^1 = 0 with
    t_0 = t_1 = 1; per iteration Y is the momentum point, G restores the
    observed entries of Y to those of m, and X^{k+1} = svt(G, mu_k).  Stops
    when ||Y^k - X^{k+1}||_F / ||X^{k+1}||_F <= tol or at max_iters.
    """
    cfg.validate()
    if not cfg.spec.unitary_scaled:
        raise UnsupportedSpecError(
            "completion uses SVT, which requires a unitary-scaled transform"
        )
    m = np.asarray(m, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if m.shape != mask.shape:
        raise ShapeError(f"mask shape {mask.shape} does not match data shape {m.shape}")

    p_obs = project_omega(m, mask)
    mu0 = cfg.nu * fro_norm(m) if cfg.mu0 is None else float(cfg.mu0)
    mu_bar = cfg.mu_bar_ratio * mu0

    x_prev = np.zeros_like(m)
    x_cur = np.zeros_like(m)
    t_prev, t_cur = 1.0, 1.0
    trace = CompletionTrace()

    for k in range(1, cfg.max_iters + 1):
        mu_k = max(cfg.nu**k * mu0, mu_bar)
        y = x_cur + ((t_prev - 1.0) / t_cur) * (x_cur - x_prev)
        g = y - (project_omega(y, mask) - p_obs)
        x_next = svt(g, mu_k, cfg.spec)

        num = fro_norm(y - x_next)
        den = fro_norm(x_next)
        if den > 0.0:
            rel = num / den
        elif fro_norm(p_obs) == 0.0:
            rel = 0.0  # zero observation: zeros are the exact solution
        else:
            rel = math.inf  # shrinkage still zeroes everything; keep iterating

        rec = IterationRecord(k=k, mu=mu_k, t=t_cur, rel_change=rel)
        if ground_truth is not None:
            try:
                rec.rse = rse(x_next, ground_truth, denominator=cfg.rse_denominator)
            except ParameterError:
                rec.rse = math.nan  # all-zero iterate, metric undefined
            rec.psnr = psnr(x_next, ground_truth)
        trace.records.append(rec)

        x_prev, x_cur = x_cur, x_next
        t_prev, t_cur = t_cur, (1.0 + math.sqrt(4.0 * t_cur**2 + 1.0)) / 2.0

        if rel <= cfg.tol:
            trace.status = "converged"
            break

    out = x_cur
    if cfg.reimpose_observed:
        out = np.where(mask, m, out)
    return out, trace
