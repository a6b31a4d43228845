"""Bilinear group abstraction with two interchangeable backends.

The protocol layer sees one interface: an encoding E from the scalar field
into a group G (multiplicative notation, ``*`` composes, ``**`` raises to
an integer power), and a symmetric pairing e : G x G -> G_T satisfying
e(E(a), E(b)) = e(E(1), E(1))^(a b).  Each backend counts its pairing
evaluations; the counter is part of the public interface because verifier
cost is measured in pairings.

TransparentBackend
    A group element *is* its exponent in F_p, and the pairing is plain
    field multiplication.  Every algebraic law the protocol relies on
    holds exactly, discrete logs are trivial by construction, and nothing
    about it is cryptographic.  It exists so protocol behaviour can be
    tested exactly and fast, and so tests can read exponents back out
    (``GroupElement.exponent``, test-only).

CurveBackend
    The order-p subgroup of the supersingular curve y^2 = x^3 + x over
    F_q, q = 3 (mod 4), with the modified Tate pairing: the second
    argument passes through the distortion map (x, y) -> (-x, i y) into
    E(F_{q^2}), making the pairing symmetric and non-degenerate.  The
    bundled parameters are desk-scale (q of 36 bits) - demonstrative, not
    production-secure.
"""

from __future__ import annotations

import threading

from .errors import BackendMismatch, PointNotOnCurve
from .fields import FieldElement, PrimeField

# Bundled supersingular curve: q = COFACTOR * p - 1 is prime, q = 3 (mod 4),
# the curve y^2 = x^3 + x over F_q has q + 1 points, and GEN generates the
# subgroup of prime order p.  gcd(5, p-1) = 1 so degree-5 permutations are
# available to gadgets over the scalar field.
CURVE_Q = 54735886031
CURVE_P = 1140330959
CURVE_COFACTOR = 48
CURVE_GEN = (30666004199, 50122189468)


def _as_scalar(field: PrimeField, k) -> int:
    if isinstance(k, FieldElement):
        return int(field(k))
    return k % field.p


class GroupElement:
    """Element of G; combine with ``*``, scale with ``** k``."""

    __slots__ = ("backend", "data")

    def __init__(self, backend, data):
        self.backend = backend
        self.data = data

    def _check(self, other):
        if not _same_backend(self.backend, other.backend):
            raise BackendMismatch("group elements from different backends")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.backend, self.backend._op(self.data, other.data))

    def __pow__(self, k) -> "GroupElement":
        k = _as_scalar(self.backend.field, k)
        return GroupElement(self.backend, self.backend._scalar(self.data, k))

    def inverse(self) -> "GroupElement":
        return self ** (self.backend.field.p - 1)

    def is_identity(self) -> bool:
        return self.backend._is_identity(self.data)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and _same_backend(self.backend, other.backend)
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.backend.descriptor, self.data))

    @property
    def exponent(self) -> int:
        """Discrete log of the element.  Transparent backend, tests only."""
        return self.backend._exponent(self.data)

    def to_hex(self) -> str:
        return self.backend._serialize(self.data)

    def __repr__(self):
        return f"G[{self.to_hex()}]"


class TargetElement:
    """Element of G_T."""

    __slots__ = ("backend", "data")

    def __init__(self, backend, data):
        self.backend = backend
        self.data = data

    def _check(self, other):
        if not _same_backend(self.backend, other.backend):
            raise BackendMismatch("target elements from different backends")

    def __mul__(self, other: "TargetElement") -> "TargetElement":
        self._check(other)
        return TargetElement(self.backend, self.backend._gt_op(self.data, other.data))

    def __pow__(self, k: int) -> "TargetElement":
        return TargetElement(self.backend, self.backend._gt_pow(self.data, k))

    def is_identity(self) -> bool:
        return self.data == self.backend._gt_identity()

    def __eq__(self, other):
        return (
            isinstance(other, TargetElement)
            and _same_backend(self.backend, other.backend)
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.backend.descriptor, self.data))

    def __repr__(self):
        return f"GT[{self.data}]"


def _same_backend(a, b) -> bool:
    """Backends interoperate iff their descriptors (and so parameters) agree."""
    return a is b or a.descriptor == b.descriptor


class _BackendBase:
    """Shared plumbing: the scalar field, the descriptor, the counter."""

    def __init__(self, field: PrimeField, descriptor: str):
        self.field = field
        self.descriptor = descriptor
        self._pairings = 0
        self._lock = threading.Lock()

    @property
    def pairing_count(self) -> int:
        return self._pairings

    def _count_pairing(self):
        with self._lock:
            self._pairings += 1

    def encode(self, a) -> GroupElement:
        """E(a) = g^a for the fixed generator g; E(0) is the identity."""
        return GroupElement(self, self._encode(_as_scalar(self.field, a)))

    def identity(self) -> GroupElement:
        return self.encode(0)

    def generator(self) -> GroupElement:
        return self.encode(1)

    def pair(self, x: GroupElement, y: GroupElement) -> TargetElement:
        if not (_same_backend(x.backend, self) and _same_backend(y.backend, self)):
            raise BackendMismatch("pairing arguments from a different backend")
        self._count_pairing()
        return TargetElement(self, self._pair(x.data, y.data))

    def gt_identity(self) -> TargetElement:
        return TargetElement(self, self._gt_identity())

    def msm(self, points: list[GroupElement], scalars: list) -> GroupElement:
        """Multi-scalar combination prod points[i] ** scalars[i]."""
        ks = [_as_scalar(self.field, k) for k in scalars]
        datas = [pt.data for pt in points]
        for pt in points:
            if not _same_backend(pt.backend, self):
                raise BackendMismatch("msm point from a different backend")
        return GroupElement(self, self._msm(datas, ks))

    def element_from_hex(self, text: str) -> GroupElement:
        return GroupElement(self, self._deserialize(text))

    def _exponent(self, data) -> int:
        raise NotImplementedError("exponent introspection is transparent-only")


def pair(x: GroupElement, y: GroupElement) -> TargetElement:
    """Symmetric pairing; both arguments must share a backend."""
    if not _same_backend(x.backend, y.backend):
        raise BackendMismatch("pairing arguments from different backends")
    return x.backend.pair(x, y)


class TransparentBackend(_BackendBase):
    """Exponent-tracking mock group.  NOT cryptographic: E is the identity
    map on F_p written multiplicatively, and e(x, y) multiplies exponents."""

    def __init__(self, field: PrimeField):
        super().__init__(field, f"transparent(p={field.p:x})")

    def _encode(self, a: int) -> int:
        return a

    def _op(self, x: int, y: int) -> int:
        return (x + y) % self.field.p

    def _scalar(self, x: int, k: int) -> int:
        return x * k % self.field.p

    def _is_identity(self, x: int) -> bool:
        return x == 0

    def _msm(self, datas, ks) -> int:
        acc = 0
        for x, k in zip(datas, ks):
            acc += x * k
        return acc % self.field.p

    def _pair(self, x: int, y: int) -> int:
        return x * y % self.field.p

    def _gt_op(self, x: int, y: int) -> int:
        return (x + y) % self.field.p

    def _gt_pow(self, x: int, k: int) -> int:
        return x * k % self.field.p

    def _gt_identity(self) -> int:
        return 0

    def _exponent(self, data: int) -> int:
        return data

    def _serialize(self, data: int) -> str:
        return format(data, "x")

    def _deserialize(self, text: str) -> int:
        return int(text, 16) % self.field.p


class CurveBackend(_BackendBase):
    """Order-p subgroup of y^2 = x^3 + x over F_q with the Tate pairing.

    Group elements are affine points (or the point at infinity, stored as
    None).  Scalar work runs in Jacobian coordinates internally; encode()
    uses a fixed-base window table over the generator, and msm() uses
    Pippenger buckets.
    """

    WINDOW = 8  # window width shared by the fixed-base table and Pippenger

    def __init__(self, q=CURVE_Q, p=CURVE_P, cofactor=CURVE_COFACTOR, gen=CURVE_GEN):
        if (q + 1) != cofactor * p:
            raise PointNotOnCurve("curve cofactor does not match q + 1")
        if q % 4 != 3:
            raise PointNotOnCurve("need q = 3 (mod 4) for the distortion map")
        super().__init__(PrimeField(p), f"supersingular-curve(q={q:x},p={p:x})")
        self.q = q
        self.cofactor = cofactor
        self.gen = gen
        self._validate_affine(gen)
        if self._scalar(gen, p) is not None:
            raise PointNotOnCurve("generator does not have order p")
        self._fixed_table = None
        self._final_exp = (q * q - 1) // p

    # -- affine / jacobian plumbing ------------------------------------

    def _validate_affine(self, pt):
        if pt is None:
            return
        x, y = pt
        if not (0 <= x < self.q and 0 <= y < self.q):
            raise PointNotOnCurve("coordinates out of range")
        if (y * y - (x * x * x + x)) % self.q != 0:
            raise PointNotOnCurve(f"({x}, {y}) is not on y^2 = x^3 + x")

    def _jdouble(self, P):
        q = self.q
        X, Y, Z = P
        if Z == 0 or Y == 0:
            return (1, 1, 0)
        YY = Y * Y % q
        S = 4 * X * YY % q
        Z2 = Z * Z % q
        M = (3 * X * X + Z2 * Z2) % q  # curve coefficient a = 1
        X3 = (M * M - 2 * S) % q
        Y3 = (M * (S - X3) - 8 * YY * YY) % q
        Z3 = 2 * Y * Z % q
        return (X3, Y3, Z3)

    def _jadd_mixed(self, P, A):
        """Jacobian P plus affine A."""
        q = self.q
        if A is None:
            return P
        X1, Y1, Z1 = P
        if Z1 == 0:
            return (A[0], A[1], 1)
        x2, y2 = A
        Z1Z1 = Z1 * Z1 % q
        U2 = x2 * Z1Z1 % q
        S2 = y2 * Z1Z1 % q * Z1 % q
        H = (U2 - X1) % q
        r = (S2 - Y1) % q
        if H == 0:
            if r == 0:
                return self._jdouble(P)
            return (1, 1, 0)
        HH = H * H % q
        HHH = HH * H % q
        V = X1 * HH % q
        X3 = (r * r - HHH - 2 * V) % q
        Y3 = (r * (V - X3) - Y1 * HHH) % q
        Z3 = Z1 * H % q
        return (X3, Y3, Z3)

    def _jadd(self, P, Q):
        q = self.q
        X1, Y1, Z1 = P
        X2, Y2, Z2 = Q
        if Z1 == 0:
            return Q
        if Z2 == 0:
            return P
        Z1Z1 = Z1 * Z1 % q
        Z2Z2 = Z2 * Z2 % q
        U1 = X1 * Z2Z2 % q
        U2 = X2 * Z1Z1 % q
        S1 = Y1 * Z2Z2 % q * Z2 % q
        S2 = Y2 * Z1Z1 % q * Z1 % q
        H = (U2 - U1) % q
        r = (S2 - S1) % q
        if H == 0:
            if r == 0:
                return self._jdouble(P)
            return (1, 1, 0)
        HH = H * H % q
        HHH = HH * H % q
        V = U1 * HH % q
        X3 = (r * r - HHH - 2 * V) % q
        Y3 = (r * (V - X3) - S1 * HHH) % q
        Z3 = Z1 * Z2 % q * H % q
        return (X3, Y3, Z3)

    def _jnormalize(self, P):
        X, Y, Z = P
        if Z == 0:
            return None
        q = self.q
        zi = pow(Z, -1, q)
        zi2 = zi * zi % q
        return (X * zi2 % q, Y * zi2 % q * zi % q)

    def _to_jacobian(self, A):
        if A is None:
            return (1, 1, 0)
        return (A[0], A[1], 1)

    # -- group interface --------------------------------------------------

    def add_points(self, P, Q):
        """Chord-tangent addition on affine points; the curve group law."""
        self._validate_affine(P)
        self._validate_affine(Q)
        return self._jnormalize(self._jadd(self._to_jacobian(P), self._to_jacobian(Q)))

    def _op(self, x, y):
        return self._jnormalize(self._jadd(self._to_jacobian(x), self._to_jacobian(y)))

    def _scalar(self, x, k: int):
        if x is None or k % self.field.p == 0:
            return None
        k %= self.field.p
        acc = (1, 1, 0)
        addend = x
        while k:
            if k & 1:
                acc = self._jadd_mixed(acc, addend)
            k >>= 1
            if k:
                addend = self._jnormalize(self._jdouble(self._to_jacobian(addend)))
        return self._jnormalize(acc)

    def _is_identity(self, x) -> bool:
        return x is None

    def _fixed_base_table(self):
        # table[w][d] = (d << (w * WINDOW)) * gen in affine, d = 1..2^WINDOW - 1
        if self._fixed_table is None:
            nwin = (self.field.p.bit_length() + self.WINDOW - 1) // self.WINDOW
            base = self.gen
            table = []
            for _ in range(nwin):
                row = [None] * (1 << self.WINDOW)
                acc = (1, 1, 0)
                for d in range(1, 1 << self.WINDOW):
                    acc = self._jadd_mixed(acc, base)
                    row[d] = self._jnormalize(acc)
                table.append(row)
                base = row[1 << (self.WINDOW - 1)]
                base = self._jnormalize(
                    self._jdouble(self._to_jacobian(base))
                )  # base * 2^WINDOW
            self._fixed_table = table
        return self._fixed_table

    def _encode(self, a: int):
        if a == 0:
            return None
        table = self._fixed_base_table()
        acc = (1, 1, 0)
        w = 0
        while a:
            d = a & ((1 << self.WINDOW) - 1)
            if d:
                acc = self._jadd_mixed(acc, table[w][d])
            a >>= self.WINDOW
            w += 1
        return self._jnormalize(acc)

    def _msm(self, datas, ks):
        pts = [(d, k) for d, k in zip(datas, ks) if d is not None and k != 0]
        if not pts:
            return None
        if len(pts) == 1:
            return self._scalar(pts[0][0], pts[0][1])
        c = self.WINDOW
        nbits = self.field.p.bit_length()
        nwin = (nbits + c - 1) // c
        acc = (1, 1, 0)
        for w in range(nwin - 1, -1, -1):
            if acc[2] != 0:
                for _ in range(c):
                    acc = self._jdouble(acc)
            shift = w * c
            buckets = [None] * (1 << c)
            for d, k in pts:
                idx = (k >> shift) & ((1 << c) - 1)
                if idx:
                    cur = buckets[idx]
                    buckets[idx] = (
                        self._to_jacobian(d)
                        if cur is None
                        else self._jadd_mixed(cur, d)
                    )
            running = (1, 1, 0)
            window_sum = (1, 1, 0)
            for idx in range((1 << c) - 1, 0, -1):
                if buckets[idx] is not None:
                    running = self._jadd(running, buckets[idx])
                if running[2] != 0:
                    window_sum = self._jadd(window_sum, running)
            acc = self._jadd(acc, window_sum)
        return self._jnormalize(acc)

    # -- F_{q^2} arithmetic (elements (a, b) = a + b i, i^2 = -1) -----------

    def _f2mul(self, u, v):
        q = self.q
        a, b = u
        c, d = v
        return ((a * c - b * d) % q, (a * d + b * c) % q)

    def _f2pow(self, u, e):
        r = (1, 0)
        while e:
            if e & 1:
                r = self._f2mul(r, u)
            u = self._f2mul(u, u)
            e >>= 1
        return r

    def _gt_op(self, x, y):
        return self._f2mul(x, y)

    def _gt_pow(self, x, k):
        k %= self.field.p
        return self._f2pow(x, k)

    def _gt_identity(self):
        return (1, 0)

    # -- modified Tate pairing ------------------------------------------

    def _pair(self, P, Q):
        """e(P, Q) = f_{p,P}(phi(Q)) ^ ((q^2-1)/p), phi(x, y) = (-x, i y).

        Denominator-free Miller loop: vertical-line values land in F_q and
        the final exponentiation kills them, so they are skipped outright.
        """
        if P is None or Q is None:
            return (1, 0)
        q = self.q
        xq = (-Q[0]) % q   # x-coordinate of phi(Q), an F_q value
        yq = Q[1]          # phi(Q) y-coordinate is i * yq
        neg_yq = (-yq) % q
        f = (1, 0)
        T = P
        for bit in bin(self.field.p)[3:]:
            f = self._f2mul(f, f)
            x1, y1 = T
            if y1 != 0:
                lam = (3 * x1 * x1 + 1) * pow(2 * y1, -1, q) % q
                line = ((lam * (xq - x1) + y1) % q, neg_yq)
                f = self._f2mul(f, line)
            T = self.add_points(T, T)
            if bit == "1":
                if T is not None:
                    x1, y1 = T
                    x2, y2 = P
                    if x1 == x2 and (y1 + y2) % q == 0:
                        pass  # vertical line: skipped
                    else:
                        if T == P:
                            lam = (3 * x1 * x1 + 1) * pow(2 * y1, -1, q) % q
                        else:
                            lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
                        line = ((lam * (xq - x1) + y1) % q, neg_yq)
                        f = self._f2mul(f, line)
                T = self.add_points(T, P)
        return self._f2pow(f, self._final_exp)

    # -- serialization ----------------------------------------------------

    def _serialize(self, data) -> str:
        if data is None:
            return "inf"
        return f"{data[0]:x},{data[1]:x}"

    def _deserialize(self, text: str):
        if text == "inf":
            return None
        xs, ys = text.split(",")
        pt = (int(xs, 16), int(ys, 16))
        self._validate_affine(pt)
        if self._scalar(pt, self.field.p) is not None:
            raise PointNotOnCurve("point is not in the order-p subgroup")
        return pt


_BACKEND_CACHE: dict[str, _BackendBase] = {}


def backend_from_descriptor(descriptor: str) -> _BackendBase:
    """Rebuild a backend from its serialized descriptor string (interned)."""
    cached = _BACKEND_CACHE.get(descriptor)
    if cached is not None:
        return cached
    if descriptor.startswith("transparent(p="):
        p = int(descriptor[len("transparent(p=") : -1], 16)
        backend = TransparentBackend(PrimeField(p))
    elif descriptor.startswith("supersingular-curve(q="):
        inner = descriptor[len("supersingular-curve(") : -1]
        parts = dict(kv.split("=") for kv in inner.split(","))
        q = int(parts["q"], 16)
        p = int(parts["p"], 16)
        backend = CurveBackend(q=q, p=p, cofactor=(q + 1) // p)
    else:
        raise BackendMismatch(f"unknown backend descriptor {descriptor!r}")
    _BACKEND_CACHE[descriptor] = backend
    return backend
