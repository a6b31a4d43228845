"""Dense modular polynomial kernels on raw int coefficient arrays.

The QAP pipeline needs interpolation, multiplication, and multipoint
evaluation over nodes {1..m} at sizes where per-element Python arithmetic
is too slow (m in the tens of thousands for the hash-heavy demo circuits).
For word-sized moduli (p < 2^31) every kernel here runs as a sequence of
numpy int64 vector operations: all intermediate products stay below 2^63,
so the arithmetic is exact.  For larger moduli the same algorithms run in
plain Python; those code paths only see desk-scale inputs.

Everything works on low-degree-first lists of ints in [0, p); callers wrap
results into Polynomial objects if they need the public type.
"""

from __future__ import annotations

import numpy as np

_NUMPY_P_LIMIT = 1 << 31   # int64 products of two residues must not overflow
_NUMPY_MIN_SIZE = 64       # below this, numpy call overhead dominates


def _use_numpy(p: int, size: int) -> bool:
    return p < _NUMPY_P_LIMIT and size >= _NUMPY_MIN_SIZE


def batch_inverse(p: int, xs: list[int]) -> list[int]:
    """Montgomery trick: n inverses for 3n multiplications and one pow."""
    n = len(xs)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, x in enumerate(xs):
        prefix[i] = acc
        acc = acc * x % p
    inv_all = pow(acc, -1, p)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = inv_all * prefix[i] % p
        inv_all = inv_all * xs[i] % p
    return out


def newton_interp(p: int, values: list[int], start: int = 1) -> list[int]:
    """Interpolate values at consecutive nodes start, start+1, ...

    Returns monomial-basis coefficients of the unique polynomial of degree
    < len(values) through the points.  Uses forward divided differences,
    which collapse to vector operations because the nodes are equispaced.
    """
    m = len(values)
    if m == 0:
        return []
    if _use_numpy(p, m):
        d = np.array(values, dtype=np.int64)
        for j in range(1, m):
            inv_j = pow(j, -1, p)
            d[j:] = (d[j:] - d[j - 1 : m - 1]) % p * inv_j % p
        # Horner build: poly <- poly*(x - x_j) + d[j], x_j = start + j
        coeffs = np.array([d[m - 1]], dtype=np.int64)
        for j in range(m - 2, -1, -1):
            c = (start + j) % p
            nxt = np.zeros(len(coeffs) + 1, dtype=np.int64)
            nxt[1:] = coeffs
            nxt[: len(coeffs)] = (nxt[: len(coeffs)] - c * coeffs) % p
            nxt[0] = (nxt[0] + d[j]) % p
            coeffs = nxt
        return [int(v) for v in coeffs]
    d = [v % p for v in values]
    for j in range(1, m):
        inv_j = pow(j, -1, p)
        for i in range(m - 1, j - 1, -1):
            d[i] = (d[i] - d[i - 1]) * inv_j % p
    coeffs = [d[m - 1]]
    for j in range(m - 2, -1, -1):
        c = start + j
        nxt = [0] + coeffs
        for i in range(len(coeffs)):
            nxt[i] = (nxt[i] - c * coeffs[i]) % p
        nxt[0] = (nxt[0] + d[j]) % p
        coeffs = nxt
    return coeffs


def eval_at_points(p: int, coeffs: list[int], xs: list[int]) -> list[int]:
    """Horner evaluation of one polynomial at many points."""
    if not xs:
        return []
    if not coeffs:
        return [0] * len(xs)
    if _use_numpy(p, len(xs)):
        xv = np.array([x % p for x in xs], dtype=np.int64)
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in reversed(coeffs):
            acc = (acc * xv + c) % p
        return [int(v) for v in acc]
    out = []
    for x in xs:
        acc = 0
        x %= p
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        out.append(acc)
    return out


def poly_mul_mod(p: int, a: list[int], b: list[int]) -> list[int]:
    """Product of two coefficient arrays mod p."""
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if _use_numpy(p, min(len(a), len(b))):
        # Split into 16-bit limbs so int64 convolutions cannot overflow:
        # each product < 2^32 and at most ~2^20 terms accumulate.
        av = np.array(a, dtype=np.int64)
        bv = np.array(b, dtype=np.int64)
        a_lo, a_hi = av & 0xFFFF, av >> 16
        b_lo, b_hi = bv & 0xFFFF, bv >> 16
        c_ll = np.convolve(a_lo, b_lo) % p
        c_hh = np.convolve(a_hi, b_hi) % p
        c_mid = (np.convolve(a_lo, b_hi) + np.convolve(a_hi, b_lo)) % p
        sh16 = (1 << 16) % p
        sh32 = (1 << 32) % p
        out = (c_hh * sh32 + c_mid * sh16 + c_ll) % p
        return [int(v) for v in out]
    out = [0] * n
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def linear_product(p: int, roots: list[int]) -> list[int]:
    """Coefficients of prod (x - r) over the given roots."""
    m = len(roots)
    if m == 0:
        return [1]
    if _use_numpy(p, m):
        coeffs = np.array([1], dtype=np.int64)
        for r in roots:
            rv = r % p
            nxt = np.zeros(len(coeffs) + 1, dtype=np.int64)
            nxt[1:] = coeffs
            nxt[: len(coeffs)] = (nxt[: len(coeffs)] - rv * coeffs) % p
            coeffs = nxt
        return [int(v) for v in coeffs]
    coeffs = [1]
    for r in roots:
        rv = r % p
        nxt = [0] + coeffs
        for i in range(len(coeffs)):
            nxt[i] = (nxt[i] - rv * coeffs[i]) % p
        coeffs = nxt
    return coeffs


def lagrange_values_at_point(p: int, m: int, z: int) -> list[int]:
    """Values L_q(z) of the Lagrange basis over nodes {1..m}, q = 1..m.

    Requires z not in {1..m} mod p (callers guarantee t(z) != 0).
    Closed form over consecutive nodes: the basis denominators are
    (-1)^(m-q) (q-1)! (m-q)!, so everything is O(m) with one batch inverse.
    """
    z %= p
    t_z = 1
    for q in range(1, m + 1):
        t_z = t_z * (z - q) % p
    fact = [1] * m
    for i in range(1, m):
        fact[i] = fact[i - 1] * i % p
    denoms = []
    for q in range(1, m + 1):
        d = (z - q) * fact[q - 1] % p * fact[m - q] % p
        if (m - q) & 1:
            d = -d % p
        denoms.append(d)
    invs = batch_inverse(p, denoms)
    return [t_z * iv % p for iv in invs]
