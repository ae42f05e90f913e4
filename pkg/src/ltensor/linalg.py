"""The *_L algebra: product, transpose, SVD, ranks, norms, thresholding.

All operations transform to the L-domain, act slice-wise on the P
representative matrices (batched over p in fixed ascending order) and
transform back.  Real inputs under a complex backend (fft) come back real via
the imaginary-residual contract in :func:`ltensor.transforms.apply_l_inv`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import as_rep_stack, fro_norm, from_rep_stack, num_rep
from .errors import ParameterError, ShapeError, TransformError, UnsupportedSpecError
from .transforms import TransformSpec, apply_l, apply_l_inv

DEFAULT_RANK_THRESHOLD = 1e-10


def _hat_stack(x, spec):
    return as_rep_stack(apply_l(x, spec))


def _from_hat_stack(stack, trailing, spec, assume_real):
    return apply_l_inv(from_rep_stack(stack, trailing), spec, assume_real=assume_real)


def _real_inputs(*tensors):
    return all(np.isrealobj(t) for t in tensors)


def l_product(a, b, spec: TransformSpec) -> np.ndarray:
    """a *_L b = L^{-1}(L(a) facewise L(b))."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[2:] != b.shape[2:]:
        raise ShapeError(f"trailing dims differ: {a.shape[2:]} vs {b.shape[2:]}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"inner dims differ: {a.shape[1]} vs {b.shape[0]}")
    prod = np.matmul(_hat_stack(a, spec), _hat_stack(b, spec))
    return _from_hat_stack(prod, a.shape[2:], spec, _real_inputs(a, b))


def identity_tensor(n: int, trailing_dims, spec: TransformSpec) -> np.ndarray:
    """The tensor with every L-domain representative matrix equal to I_n."""
    trailing = tuple(int(d) for d in trailing_dims)
    P = num_rep((n, n) + trailing)
    stack = np.broadcast_to(np.eye(n), (P, n, n)).copy()
    return _from_hat_stack(stack, trailing, spec, assume_real=True)


def l_transpose(a, spec: TransformSpec) -> np.ndarray:
    """Transpose under *_L: conjugate-transpose of every L-domain slice."""
    a = np.asarray(a)
    stack = _hat_stack(a, spec)
    stack = np.conj(np.swapaxes(stack, 1, 2))
    return _from_hat_stack(stack, a.shape[2:], spec, _real_inputs(a))


def is_orthogonal(q, spec: TransformSpec, tol: float = 1e-10) -> bool:
    """Whether q *_L q^T and q^T *_L q both equal the identity within tol."""
    q = np.asarray(q)
    if q.shape[0] != q.shape[1]:
        raise ShapeError(f"orthogonality needs square first two dims, got {q.shape[:2]}")
    eye = identity_tensor(q.shape[0], q.shape[2:], spec)
    qt = l_transpose(q, spec)
    return (
        fro_norm(l_product(q, qt, spec) - eye) < tol
        and fro_norm(l_product(qt, q, spec) - eye) < tol
    )


@dataclass
class LFactors:
    """The *_L-SVD triple plus the tube norms ||S_i||_F (non-increasing)."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray
    tube_norms: np.ndarray
    spec: TransformSpec


@dataclass
class RankReport:
    tubal: int
    multirank: np.ndarray  # rho_p for p = 1..P
    average: float


def _embed_diag(vals, i1, i2):
    """Stack of diagonal I_1 x I_2 matrices from batched singular values."""
    out = np.zeros((vals.shape[0], i1, i2), dtype=vals.dtype)
    k = min(i1, i2)
    idx = np.arange(k)
    out[:, idx, idx] = vals[:, :k]
    return out


def t_svd(a, spec: TransformSpec) -> LFactors:
    """Slice-wise SVD in the transform domain, inverse-transformed.

    a = u *_L s *_L v^T with u, v orthogonal and s f-diagonal; tube norms are
    the Frobenius norms of the scalar-tensors s(i,i,:,...,:).
    """
    a = np.asarray(a)
    i1, i2 = a.shape[:2]
    hat = _hat_stack(a, spec)
    u_hat, sv, vh_hat = np.linalg.svd(hat, full_matrices=True)
    real = _real_inputs(a)
    u = _from_hat_stack(u_hat, a.shape[2:], spec, real)
    s = _from_hat_stack(_embed_diag(sv, i1, i2), a.shape[2:], spec, real)
    v = _from_hat_stack(np.conj(np.swapaxes(vh_hat, 1, 2)), a.shape[2:], spec, real)
    k = min(i1, i2)
    tube_norms = np.array([fro_norm(s[(i, i)]) for i in range(k)])
    return LFactors(u=u, s=s, v=v, tube_norms=tube_norms, spec=spec)


def truncate(f: LFactors, k: int) -> np.ndarray:
    """Rank-k Eckart-Young truncation u(:,1:k) *_L s(1:k,1:k) *_L v(:,1:k)^T."""
    kmax = min(f.s.shape[0], f.s.shape[1])
    if not 1 <= k <= kmax:
        raise ParameterError(f"truncation rank {k} out of range [1, {kmax}]")
    uk = f.u[:, :k]
    sk = f.s[:k, :k]
    vk = f.v[:, :k]
    return l_product(l_product(uk, sk, f.spec), l_transpose(vk, f.spec), f.spec)


def ranks(a, spec: TransformSpec, threshold: float = DEFAULT_RANK_THRESHOLD) -> RankReport:
    """Tubal rank, multirank vector and average rank at a relative threshold."""
    if threshold < 0:
        raise ParameterError(f"threshold must be >= 0, got {threshold}")
    hat = _hat_stack(np.asarray(a), spec)
    sv = np.linalg.svd(hat, compute_uv=False)  # (P, min(I1, I2)), non-increasing per slice
    smax = float(sv.max(initial=0.0))
    if smax == 0.0:
        return RankReport(tubal=0, multirank=np.zeros(sv.shape[0], dtype=int), average=0.0)
    nonzero = sv > threshold * smax
    multirank = nonzero.sum(axis=1)
    tubal = int(nonzero.any(axis=0).sum())
    return RankReport(tubal=tubal, multirank=multirank, average=float(multirank.mean()))


def _require_unitary(spec, what):
    if not spec.unitary_scaled:
        raise UnsupportedSpecError(
            f"{what} requires a unitary-scaled transform; the {spec.kind!r} kind is not"
        )


def spectral_norm(a, spec: TransformSpec) -> float:
    """Largest transform-domain singular value over all slices."""
    _require_unitary(spec, "spectral_norm")
    sv = np.linalg.svd(_hat_stack(np.asarray(a), spec), compute_uv=False)
    return float(sv.max(initial=0.0))


def nuclear_norm(a, spec: TransformSpec) -> float:
    """alpha^{-1} * sum of all transform-domain singular values."""
    _require_unitary(spec, "nuclear_norm")
    sv = np.linalg.svd(_hat_stack(np.asarray(a), spec), compute_uv=False)
    return float(sv.sum() / spec.alpha)


def svt(a, tau: float, spec: TransformSpec) -> np.ndarray:
    """Singular value thresholding: shrink each slice's spectrum by tau.

    Proximal operator of tau * nuclear_norm for unitary-scaled specs.
    """
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    _require_unitary(spec, "svt")
    a = np.asarray(a)
    hat = _hat_stack(a, spec)
    u, sv, vh = np.linalg.svd(hat, full_matrices=False)
    shrunk = np.maximum(sv - tau, 0.0)
    out = np.matmul(u * shrunk[:, None, :], vh)
    return _from_hat_stack(out, a.shape[2:], spec, _real_inputs(a))
