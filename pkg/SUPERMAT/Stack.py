'''
Description: Grassmann-valued matrices stored as float coefficient stacks.
A stack X has shape (2^L, r, c); X[mask] is the real matrix multiplying the monomial
with that bitmask and X[0] is the body. A Grassmann scalar is a vector of length 2^L.
'''
from __future__ import annotations

import math

import numpy as np

from COMMON.Description import PRODUCT_CHUNK
from COMMON.Errors import GeneratorCountError, NotInvertibleError
from GRASSMANN.Grassmann import GrassmannNumber
from GRASSMANN.Kernel.sign import key_to_mask, mask_to_key, product_table


def _size(num_generators: int) -> int:
    return 1 << num_generators


def check_stack(X: np.ndarray, num_generators: int) -> None:
    if X.ndim != 3 or X.shape[0] != _size(num_generators):
        raise GeneratorCountError(f"stack of shape {X.shape} does not match L={num_generators}")


# ---- Grassmann scalars as coefficient vectors ----
def gvec_from(g: GrassmannNumber) -> np.ndarray:
    v = np.zeros(_size(g.num_generators))
    for key, coef in g.terms.items():
        v[key_to_mask(key)] = float(coef)
    return v


def gvec_to(v: np.ndarray, num_generators: int) -> GrassmannNumber:
    return GrassmannNumber(num_generators, {mask_to_key(int(m)): float(v[m]) for m in np.flatnonzero(v)})


def gvec_mul(x: np.ndarray, y: np.ndarray, num_generators: int) -> np.ndarray:
    I, J, K, S = product_table(num_generators)
    out = np.zeros(_size(num_generators))
    np.add.at(out, K, S * x[I] * y[J])
    return out


def gvec_exp_soul(s: np.ndarray, num_generators: int) -> np.ndarray:
    '''exp of a nilpotent even element: the series ends after L/2 terms.'''
    out = np.zeros(_size(num_generators))
    out[0] = 1.0
    power = out.copy()
    for k in range(1, num_generators + 1):
        power = gvec_mul(power, s, num_generators) / k
        if not power.any():
            break
        out += power
    return out


# ---- stacks ----
def stack_zeros(num_generators: int, rows: int, cols: int = None) -> np.ndarray:
    return np.zeros((_size(num_generators), rows, rows if cols is None else cols))


def stack_eye(num_generators: int, size: int) -> np.ndarray:
    X = stack_zeros(num_generators, size)
    X[0] = np.eye(size)
    return X


def stack_from_body(M, num_generators: int) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    X = stack_zeros(num_generators, M.shape[0], M.shape[1])
    X[0] = M
    return X


def stack_scaled(g: np.ndarray, M) -> np.ndarray:
    '''Grassmann scalar times a real matrix.'''
    return g[:, None, None] * np.asarray(M, dtype=float)[None, :, :]


def is_body_only(X: np.ndarray) -> bool:
    return not X[1:].any()


def stack_matmul(X: np.ndarray, Y: np.ndarray, num_generators: int) -> np.ndarray:
    if is_body_only(X):
        return np.matmul(X[0], Y)
    if is_body_only(Y):
        return np.matmul(X, Y[0])
    I, J, K, S = product_table(num_generators)
    out = np.zeros((X.shape[0], X.shape[1], Y.shape[2]))
    # only the 3^L non-vanishing monomial pairs, a batch at a time
    for lo in range(0, len(I), PRODUCT_CHUNK):
        hi = lo + PRODUCT_CHUNK
        T = np.matmul(X[I[lo:hi]], Y[J[lo:hi]])
        np.add.at(out, K[lo:hi], S[lo:hi, None, None] * T)
    return out


def stack_trace(X: np.ndarray) -> np.ndarray:
    return np.trace(X, axis1=1, axis2=2)


def _body_inverse(X: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.inv(X[0])
    except np.linalg.LinAlgError:
        raise NotInvertibleError("body matrix is singular") from None


def stack_inv(X: np.ndarray, num_generators: int) -> np.ndarray:
    '''(X0 + S)^-1 = sum_k (-X0^-1 S)^k X0^-1, finite because S is nilpotent.'''
    size = X.shape[1]
    if size == 0:
        return X.copy()
    inv0 = _body_inverse(X)
    soul = X.copy()
    soul[0] = 0.0
    step = -np.matmul(inv0, soul)
    total = stack_eye(num_generators, size)
    power = total
    for _ in range(num_generators):
        power = stack_matmul(power, step, num_generators)
        if not power.any():
            break
        total = total + power
    return np.matmul(total, inv0)


def _det_expand(X: np.ndarray, num_generators: int) -> np.ndarray:
    # Laplace expansion along the first row; entries commute
    size = X.shape[1]
    if size == 1:
        return X[:, 0, 0].copy()
    out = np.zeros(_size(num_generators))
    for j in range(size):
        if not X[:, 0, j].any():
            continue
        minor = np.delete(np.delete(X, 0, axis=1), j, axis=2)
        term = gvec_mul(X[:, 0, j], _det_expand(minor, num_generators), num_generators)
        out += term if j % 2 == 0 else -term
    return out


def stack_det(X: np.ndarray, num_generators: int) -> np.ndarray:
    '''
    Determinant of a matrix with even (commuting) entries:
    det(X0) * exp(tr log(I + X0^-1 S)).
    '''
    size = X.shape[1]
    out = np.zeros(_size(num_generators))
    if size == 0:
        out[0] = 1.0
        return out
    det0 = np.linalg.det(X[0])
    if not math.isfinite(det0):
        raise NotInvertibleError("body determinant is not finite")
    if det0 == 0.0:
        return _det_expand(X, num_generators)
    inv0 = _body_inverse(X)
    soul = X.copy()
    soul[0] = 0.0
    N = np.matmul(inv0, soul)
    log_trace = np.zeros(_size(num_generators))
    power = stack_eye(num_generators, size)
    for k in range(1, num_generators + 1):
        power = stack_matmul(power, N, num_generators)
        if not power.any():
            break
        log_trace += ((-1) ** (k + 1) / k) * stack_trace(power)
    return det0 * gvec_exp_soul(log_trace, num_generators)
