"""Reduction of rank-1 constraint systems to quadratic arithmetic programs.

A constraint system with m rows and n wires becomes 3n polynomials of
degree < m — one per wire per matrix — interpolated so that the i-th left
polynomial passes through column i of A at the target points {1..m}, and
likewise for B and C.  A witness s satisfies the system iff

    (sum_i s_i u_i)(sum_i s_i v_i) - (sum_i s_i w_i)  ==  0  mod t(x)

with t the monic vanishing polynomial over the target points.  The
quotient h certifies divisibility and is what the prover later commits to.

The per-wire polynomial families are materialized lazily; the protocol
layer only ever needs column evaluations at one secret point (setup) and
the *combined* witness polynomials (proving), both of which are computed
from the sparse rows directly.
"""

from __future__ import annotations

from . import fastpoly
from .circuit import ConstraintSystem, Witness, check_constraints
from .errors import DimensionMismatch, FieldTooSmall, NotSatisfying
from .polynomials import Polynomial, interpolate, vanishing_poly


class Qap:
    """QAP form of a constraint system: wire polynomials plus target t."""

    def __init__(self, cs: ConstraintSystem):
        self.cs = cs
        self.field = cs.field
        self.n = cs.n
        self.m = cs.m
        self._t_coeffs = None
        self._u = None
        self._v = None
        self._w = None

    # -- vanishing polynomial -------------------------------------------

    @property
    def t(self) -> Polynomial:
        return Polynomial(self.field, self.t_coeffs())

    def t_coeffs(self) -> list[int]:
        if self._t_coeffs is None:
            self._t_coeffs = fastpoly.linear_product(
                self.field.p, list(range(1, self.m + 1))
            )
        return self._t_coeffs

    def t_at(self, z: int) -> int:
        p = self.field.p
        acc = 1
        for q in range(1, self.m + 1):
            acc = acc * (z - q) % p
        return acc

    # -- per-wire polynomial families (lazy; test/desk-scale use) ---------

    def _materialize(self):
        field = self.field
        points = list(range(1, self.m + 1))
        cols_u = [[0] * self.m for _ in range(self.n)]
        cols_v = [[0] * self.m for _ in range(self.n)]
        cols_w = [[0] * self.m for _ in range(self.n)]
        for q, (a, b, c) in enumerate(self.cs.rows):
            for i, coef in a.items():
                cols_u[i][q] = coef
            for i, coef in b.items():
                cols_v[i][q] = coef
            for i, coef in c.items():
                cols_w[i][q] = coef
        def interp_all(cols):
            return tuple(
                interpolate(field, list(zip(points, col))) if any(col) else Polynomial.zero(field)
                for col in cols
            )
        self._u = interp_all(cols_u)
        self._v = interp_all(cols_v)
        self._w = interp_all(cols_w)

    @property
    def u(self) -> tuple[Polynomial, ...]:
        if self._u is None:
            self._materialize()
        return self._u

    @property
    def v(self) -> tuple[Polynomial, ...]:
        if self._v is None:
            self._materialize()
        return self._v

    @property
    def w(self) -> tuple[Polynomial, ...]:
        if self._w is None:
            self._materialize()
        return self._w

    # -- sparse column evaluation (setup path) -----------------------------

    def columns_at(self, z: int):
        """(u_i(z), v_i(z), w_i(z)) for every wire i, via the Lagrange basis.

        Costs O(m + nnz); never touches the materialized polynomials.
        Requires t(z) != 0.
        """
        p = self.field.p
        basis = fastpoly.lagrange_values_at_point(p, self.m, z)
        u_vals = [0] * self.n
        v_vals = [0] * self.n
        w_vals = [0] * self.n
        for q, (a, b, c) in enumerate(self.cs.rows):
            lq = basis[q]
            for i, coef in a.items():
                u_vals[i] = (u_vals[i] + coef * lq) % p
            for i, coef in b.items():
                v_vals[i] = (v_vals[i] + coef * lq) % p
            for i, coef in c.items():
                w_vals[i] = (w_vals[i] + coef * lq) % p
        return u_vals, v_vals, w_vals

    # -- combined witness polynomials (prover path) -------------------------

    def _node_values(self, wit: Witness):
        """((A s)_q, (B s)_q, (C s)_q) for q = 1..m."""
        p = self.field.p
        vals = wit.values
        u_n, v_n, w_n = [], [], []
        for a, b, c in self.cs.rows:
            u_n.append(sum(coef * vals[i] for i, coef in a.items()) % p)
            v_n.append(sum(coef * vals[i] for i, coef in b.items()) % p)
            w_n.append(sum(coef * vals[i] for i, coef in c.items()) % p)
        return u_n, v_n, w_n

    def combination(self, wit: Witness):
        """Coefficient arrays (u, v, w, h) for the witness combination.

        u = sum_i s_i u_i and so on; h is the exact quotient of
        (u v - w) by t.  Raises NotSatisfying when the division would
        leave a remainder, which happens iff some constraint row fails.
        """
        if len(wit) != self.n or wit.field != self.field:
            raise DimensionMismatch(
                f"witness of length {len(wit)} against a QAP with {self.n} wires"
            )
        p = self.field.p
        m = self.m
        u_n, v_n, w_n = self._node_values(wit)
        for q in range(m):
            if u_n[q] * v_n[q] % p != w_n[q]:
                raise NotSatisfying(f"constraint {q} violated by the witness")
        # Divisibility by t = prod (x - q) is exactly vanishing at the nodes,
        # which was just checked, so the quotient below is exact.
        u_c = fastpoly.newton_interp(p, u_n)
        v_c = fastpoly.newton_interp(p, v_n)
        w_c = fastpoly.newton_interp(p, w_n)
        if m == 1:
            return u_c, v_c, w_c, []
        prod = fastpoly.poly_mul_mod(p, u_c, v_c)
        big = list(prod) + [0] * (max(0, len(w_c) - len(prod)))
        for i, coef in enumerate(w_c):
            big[i] = (big[i] - coef) % p
        ys = list(range(m + 1, 2 * m))  # m-1 fresh points clear of the nodes
        p_vals = fastpoly.eval_at_points(p, big, ys)
        t_vals = []
        for y in ys:
            acc = 1
            for q in range(1, m + 1):
                acc = acc * (y - q) % p
            t_vals.append(acc)
        t_inv = fastpoly.batch_inverse(p, t_vals)
        h_vals = [pv * ti % p for pv, ti in zip(p_vals, t_inv)]
        h_c = fastpoly.newton_interp(p, h_vals, start=m + 1)
        while h_c and h_c[-1] == 0:
            h_c.pop()
        return u_c, v_c, w_c, h_c


def reduce(cs: ConstraintSystem) -> Qap:
    """Build the QAP of a constraint system; needs 2m < p for soundness."""
    if 2 * cs.m >= cs.field.p:
        raise FieldTooSmall(f"need 2*{cs.m} < {cs.field.p}")
    return Qap(cs)


def compute_h(qap: Qap, wit: Witness) -> Polynomial:
    """Exact quotient h with (sum s_i u_i)(sum s_i v_i) - sum s_i w_i = h t."""
    _, _, _, h_c = qap.combination(wit)
    return Polynomial(qap.field, h_c)


def qap_satisfied(qap: Qap, wit: Witness) -> bool:
    """True iff the divisibility condition holds for this witness.

    Agrees with check_constraints on the source system by construction.
    """
    try:
        qap.combination(wit)
        return True
    except NotSatisfying:
        return False


__all__ = [
    "Qap",
    "reduce",
    "compute_h",
    "qap_satisfied",
    "check_constraints",
]
