"""Mode-wise invertible transforms defining the *_L product family.

A :class:`TransformSpec` fixes the operator L: which trailing modes are
transformed and by which matrices.  Three built-in kinds:

* ``fft`` - unnormalized DFT along each transformed mode (t-product family).
* ``dct`` - orthogonal DCT-II matrix (TNN-PGA-C style solving).
* ``cprod`` - M = W^{-1} C (I + Z), the exact cosine-product matrix; not of
  the unitary-scaled form, so the nuclear-norm/SVT theory is disabled for it.

``alpha`` is the product over transformed modes of the unitarity scales s_i
with M_i M_i* = s_i I, so that ||a||_F^2 = alpha^{-1} ||L(a)||_F^2 for
unitary-scaled kinds (alpha = prod I_i for fft, 1 for dct).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .core import mode_n_product
from .errors import ParameterError, NumericConsistencyError, TransformError

_INV_TOL = 1e-10
_UNITARY_TOL = 1e-10
_IMAG_TOL = 1e-9


def build_dct_matrix(n: int) -> np.ndarray:
    """Orthogonal DCT-II matrix: C[i,j] = sqrt((2-d_{i1})/n) cos((i-1)(2j-1)pi/2n)."""
    if n < 1:
        raise ParameterError(f"matrix size must be >= 1, got {n}")
    i = np.arange(1, n + 1)[:, None]
    j = np.arange(1, n + 1)[None, :]
    scale = np.sqrt((2.0 - (i == 1)) / n)
    return scale * np.cos((i - 1) * (2 * j - 1) * np.pi / (2 * n))


def build_fourier_matrix(n: int) -> np.ndarray:
    """Unnormalized DFT matrix with entries omega_n^{(i-1)(j-1)}."""
    if n < 1:
        raise ParameterError(f"matrix size must be >= 1, got {n}")
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n)


def build_cproduct_matrix(n: int) -> np.ndarray:
    """Cosine-product matrix M = W^{-1} C (I + Z), W = diag(C[:, 0]), Z upshift."""
    if n < 1:
        raise ParameterError(f"matrix size must be >= 1, got {n}")
    c = build_dct_matrix(n)
    w_inv = np.diag(1.0 / c[:, 0])
    iz = np.eye(n) + np.diag(np.ones(n - 1), 1)
    return w_inv @ c @ iz


def build_cproduct_inverse(n: int) -> np.ndarray:
    """Closed-form inverse M^{-1} = (I + Z)^{-1} C* W."""
    if n < 1:
        raise ParameterError(f"matrix size must be >= 1, got {n}")
    c = build_dct_matrix(n)
    iz = np.eye(n) + np.diag(np.ones(n - 1), 1)
    return np.linalg.solve(iz, c.T @ np.diag(c[:, 0]))


_BUILDERS = {"fft": build_fourier_matrix, "dct": build_dct_matrix, "cprod": build_cproduct_matrix}


@dataclass(eq=False)
class TransformSpec:
    """The operator L: transformed modes, per-mode matrices, scaling."""

    kind: str
    modes: tuple  # 1-based tensor modes, each >= 3, ascending
    sizes: tuple  # mode sizes, parallel to `modes`
    alpha: float | None
    unitary_scaled: bool
    _matrices: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, TransformSpec):
            return NotImplemented
        return (self.kind, self.modes, self.sizes) == (other.kind, other.modes, other.sizes)

    def mode_matrix(self, mode: int) -> np.ndarray:
        """The explicit transform matrix for one mode (built lazily)."""
        if mode not in self.modes:
            raise TransformError(f"mode {mode} is not transformed by this spec")
        if mode not in self._matrices:
            n = self.sizes[self.modes.index(mode)]
            self._matrices[mode] = _BUILDERS[self.kind](n)
        return self._matrices[mode]

    def mode_inverse(self, mode: int) -> np.ndarray:
        m = self.mode_matrix(mode)
        if self.kind == "cprod":
            return build_cproduct_inverse(m.shape[0])
        return np.linalg.inv(m)


def make_spec(kind: str, shape, modes=None, matrices=None) -> TransformSpec:
    """Build a TransformSpec for tensors of the given shape.

    ``modes`` defaults to all trailing modes 3..N.  ``matrices`` is only for
    kind ``explicit`` and must map mode -> invertible matrix.
    """
    shape = tuple(int(d) for d in shape)
    if len(shape) < 3:
        raise TransformError(f"transforms need order >= 3, got shape {shape}")
    if modes is None:
        modes = tuple(range(3, len(shape) + 1))
    else:
        modes = tuple(sorted(int(m) for m in modes))
    for m in modes:
        if not 3 <= m <= len(shape):
            raise TransformError(f"mode {m} out of range [3, {len(shape)}] for shape {shape}")
    sizes = tuple(shape[m - 1] for m in modes)

    if kind == "fft":
        return TransformSpec("fft", modes, sizes, float(np.prod(sizes)), True)
    if kind == "dct":
        return TransformSpec("dct", modes, sizes, 1.0, True)
    if kind == "cprod":
        spec = TransformSpec("cprod", modes, sizes, None, False)
        for m in modes:
            _check_invertible(spec.mode_matrix(m), spec.mode_inverse(m))
        return spec
    if kind == "explicit":
        if matrices is None:
            raise TransformError("explicit kind requires per-mode matrices")
        mats = {int(m): np.asarray(matrices[m]) for m in matrices}
        if set(mats) != set(modes):
            raise TransformError(f"matrices given for modes {sorted(mats)}, expected {modes}")
        scales = []
        unitary = True
        for m in modes:
            mat = mats[m]
            n = shape[m - 1]
            if mat.shape != (n, n):
                raise TransformError(f"matrix for mode {m} has shape {mat.shape}, expected ({n}, {n})")
            try:
                mat_inv = np.linalg.inv(mat)
            except np.linalg.LinAlgError as exc:
                raise TransformError(f"matrix for mode {m} is singular") from exc
            _check_invertible(mat, mat_inv)
            gram = mat @ mat.conj().T
            s = float(np.trace(gram).real) / n
            if np.linalg.norm(gram - s * np.eye(n)) < _UNITARY_TOL * max(1.0, s):
                scales.append(s)
            else:
                unitary = False
        alpha = float(np.prod(scales)) if unitary else None
        spec = TransformSpec("explicit", modes, sizes, alpha, unitary)
        spec._matrices = mats
        return spec
    raise TransformError(f"unknown transform kind {kind!r}")


def _check_invertible(m, m_inv):
    n = m.shape[0]
    if np.linalg.norm(m @ m_inv - np.eye(n)) >= _INV_TOL * max(1.0, float(np.linalg.norm(m))):
        raise TransformError("transform matrix is not invertible to working precision")


def _check_shape(x, spec):
    for mode, size in zip(spec.modes, spec.sizes):
        if mode > x.ndim or x.shape[mode - 1] != size:
            raise TransformError(
                f"tensor of shape {x.shape} does not match spec modes {spec.modes} "
                f"with sizes {spec.sizes}"
            )


def apply_l(x, spec: TransformSpec, explicit: bool = False) -> np.ndarray:
    """L(x): successive mode products with M_i over spec.modes.

    Fast transforms are used for the fft/dct kinds unless ``explicit`` forces
    the matrix path.
    """
    x = np.asarray(x)
    _check_shape(x, spec)
    out = x
    for mode in spec.modes:
        if spec.kind == "fft" and not explicit:
            out = np.fft.fft(out, axis=mode - 1)
        elif spec.kind == "dct" and not explicit:
            out = scipy.fft.dct(out, type=2, axis=mode - 1, norm="ortho")
        else:
            out = mode_n_product(out, spec.mode_matrix(mode), mode)
    return out


def apply_l_inv(xhat, spec: TransformSpec, explicit: bool = False, assume_real: bool = False) -> np.ndarray:
    """L^{-1}(xhat): inverse mode products in reverse mode order.

    With ``assume_real`` the source is known real: the imaginary residual must
    stay below 1e-9 relative and is discarded; larger residuals signal a
    corrupted transform-domain tensor.
    """
    xhat = np.asarray(xhat)
    _check_shape(xhat, spec)
    out = xhat
    for mode in reversed(spec.modes):
        if spec.kind == "fft" and not explicit:
            out = np.fft.ifft(out, axis=mode - 1)
        elif spec.kind == "dct" and not explicit:
            if np.iscomplexobj(out):
                out = scipy.fft.idct(out.real, type=2, axis=mode - 1, norm="ortho") + 1j * scipy.fft.idct(
                    out.imag, type=2, axis=mode - 1, norm="ortho"
                )
            else:
                out = scipy.fft.idct(out, type=2, axis=mode - 1, norm="ortho")
        else:
            out = mode_n_product(out, spec.mode_inverse(mode), mode)
    if assume_real and np.iscomplexobj(out):
        norm = np.linalg.norm(out.ravel())
        imag = np.linalg.norm(out.imag.ravel())
        if norm > 0 and imag / norm > _IMAG_TOL:
            raise NumericConsistencyError(
                f"imaginary residual {imag / norm:.3e} exceeds {_IMAG_TOL:.0e}; "
                "transform-domain tensor is not the image of a real tensor"
            )
        out = out.real.copy()
    return out
