"""The proving protocol: CRS setup, 9-element proofs, 15-pairing verify.

Setup samples six secret scalars (alpha, beta_u, beta_v, beta_w, gamma, z),
publishes group encodings derived from them, and discards the scalars (the
toxic waste).  The evaluation key carries everything a prover needs to
evaluate its witness polynomials at the hidden z by linear combination
alone; the verification key carries the seven elements the verifier pairs
against.

A proof consists of exactly nine group elements:

    pi_u  = E(u(z))   pi_u' = E(alpha u(z))
    pi_v  = E(v(z))   pi_v' = E(alpha v(z))
    pi_w  = E(w(z))   pi_w' = E(alpha w(z))
    pi_h  = E(h(z))   pi_h' = E(alpha h(z))
    pi_k  = E(beta_u u(z) + beta_v v(z) + beta_w w(z))

Verification performs, unconditionally, the four alpha-pair checks (8
pairings), the same-coefficients check against gamma (4 pairings), and the
divisibility check e(pi_u, pi_v) = e(pi_w, E(1)) e(E(t(z)), pi_h) (3
pairings): 15 pairings per call, reflected exactly in the backend counter.

The zero-knowledge variant shifts u, v, w by random multiples of t before
evaluation; the adjusted quotient is

    h_z = h + d1 v + d2 u + d1 d2 t - d3,

which follows from expanding (u + d1 t)(v + d2 t) - (w + d3 t).  With all
deltas zero the output is bit-identical to the plain prover.
"""

from __future__ import annotations

import random

from .errors import DigestMismatch, FieldTooSmall, ModulusMismatch
from .pairing import GroupElement, _BackendBase
from .qap import Qap
from .circuit import Witness


class ToxicWaste:
    """The six setup secrets.  Instances live only inside setup(); the
    returned keys contain group encodings derived from them, never the
    scalars themselves."""

    __slots__ = ("alpha", "beta_u", "beta_v", "beta_w", "gamma", "z")

    def __init__(self, alpha, beta_u, beta_v, beta_w, gamma, z):
        self.alpha = alpha
        self.beta_u = beta_u
        self.beta_v = beta_v
        self.beta_w = beta_w
        self.gamma = gamma
        self.z = z


class EvaluationKey:
    """Prover half of the CRS."""

    __slots__ = (
        "powers", "powers_alpha",
        "u", "u_alpha", "u_beta",
        "v", "v_alpha", "v_beta",
        "w", "w_alpha", "w_beta",
        "t", "t_alpha", "t_beta_u", "t_beta_v", "t_beta_w",
        "digest",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])

    @property
    def backend(self):
        return self.t.backend


class VerificationKey:
    """Verifier half of the CRS: E(1), E(alpha), E(t(z)), E(gamma) and the
    three beta-gamma products."""

    __slots__ = ("one", "alpha", "t", "gamma", "beta_u_gamma", "beta_v_gamma",
                 "beta_w_gamma", "digest")

    def __init__(self, one, alpha, t, gamma, beta_u_gamma, beta_v_gamma,
                 beta_w_gamma, digest):
        self.one = one
        self.alpha = alpha
        self.t = t
        self.gamma = gamma
        self.beta_u_gamma = beta_u_gamma
        self.beta_v_gamma = beta_v_gamma
        self.beta_w_gamma = beta_w_gamma
        self.digest = digest

    @property
    def backend(self):
        return self.one.backend


PROOF_FIELDS = (
    "pi_u", "pi_u_alpha", "pi_v", "pi_v_alpha",
    "pi_w", "pi_w_alpha", "pi_h", "pi_h_alpha", "pi_k",
)


class Proof:
    """Exactly nine group elements plus the circuit digest they speak for."""

    __slots__ = PROOF_FIELDS + ("digest",)

    def __init__(self, pi_u, pi_u_alpha, pi_v, pi_v_alpha, pi_w, pi_w_alpha,
                 pi_h, pi_h_alpha, pi_k, digest=""):
        self.pi_u = pi_u
        self.pi_u_alpha = pi_u_alpha
        self.pi_v = pi_v
        self.pi_v_alpha = pi_v_alpha
        self.pi_w = pi_w
        self.pi_w_alpha = pi_w_alpha
        self.pi_h = pi_h
        self.pi_h_alpha = pi_h_alpha
        self.pi_k = pi_k
        self.digest = digest

    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(getattr(self, f) for f in PROOF_FIELDS)

    def replace(self, index: int, element: GroupElement) -> "Proof":
        """Copy with one element swapped out (tamper-testing helper)."""
        parts = list(self.elements())
        parts[index] = element
        return Proof(*parts, digest=self.digest)

    def __len__(self):
        return len(PROOF_FIELDS)


def setup(qap: Qap, backend: _BackendBase, rng: random.Random, digest: str = ""):
    """Sample the CRS for a QAP over the given backend.

    All randomness flows through ``rng``; the same seed reproduces the same
    keys element for element.  z is resampled until t(z) != 0 - a z hitting
    a target point would void both the divisibility check and the
    zero-knowledge shift.
    """
    field = qap.field
    if backend.field != field:
        raise ModulusMismatch("backend group order differs from the QAP field")
    p = field.p
    if 2 * qap.m >= p:
        raise FieldTooSmall(f"need 2*{qap.m} < {p}")
    waste = ToxicWaste(
        alpha=rng.randrange(1, p),
        beta_u=rng.randrange(1, p),
        beta_v=rng.randrange(1, p),
        beta_w=rng.randrange(1, p),
        gamma=rng.randrange(1, p),
        z=rng.randrange(1, p),
    )
    while qap.t_at(waste.z) == 0:
        waste.z = rng.randrange(1, p)

    E = backend.encode
    al = waste.alpha
    d = max(qap.m, qap.n)
    zp = [1] * (d + 1)
    for i in range(1, d + 1):
        zp[i] = zp[i - 1] * waste.z % p
    u_vals, v_vals, w_vals = qap.columns_at(waste.z)
    t_val = qap.t_at(waste.z)

    ek = EvaluationKey(
        powers=[E(x) for x in zp],
        powers_alpha=[E(al * x % p) for x in zp],
        u=[E(x) for x in u_vals],
        u_alpha=[E(al * x % p) for x in u_vals],
        u_beta=[E(waste.beta_u * x % p) for x in u_vals],
        v=[E(x) for x in v_vals],
        v_alpha=[E(al * x % p) for x in v_vals],
        v_beta=[E(waste.beta_v * x % p) for x in v_vals],
        w=[E(x) for x in w_vals],
        w_alpha=[E(al * x % p) for x in w_vals],
        w_beta=[E(waste.beta_w * x % p) for x in w_vals],
        t=E(t_val),
        t_alpha=E(al * t_val % p),
        t_beta_u=E(waste.beta_u * t_val % p),
        t_beta_v=E(waste.beta_v * t_val % p),
        t_beta_w=E(waste.beta_w * t_val % p),
        digest=digest,
    )
    vk = VerificationKey(
        one=E(1),
        alpha=E(al),
        t=E(t_val),
        gamma=E(waste.gamma),
        beta_u_gamma=E(waste.beta_u * waste.gamma % p),
        beta_v_gamma=E(waste.beta_v * waste.gamma % p),
        beta_w_gamma=E(waste.beta_w * waste.gamma % p),
        digest=digest,
    )
    del waste  # toxic: nothing below may touch the scalars
    return ek, vk


def assemble_proof(ek: EvaluationKey, wit: Witness, h_coeffs: list[int],
                   deltas=(0, 0, 0)) -> Proof:
    """Form the nine proof elements from evaluation-key entries only.

    The prover never sees z: every element is a linear combination of
    published encodings, scaled by witness values, quotient coefficients,
    and the optional shift multiples of E(t(z)).  Shared by the plain and
    zero-knowledge provers (and by dishonest-prover experiments, which feed
    a quotient of their own making).
    """
    backend = ek.backend
    s = list(wit.values)
    d1, d2, d3 = deltas

    def shift(el, delta):
        return el if delta == 0 else el * (ek.t ** delta)

    def shift_alpha(el, delta):
        return el if delta == 0 else el * (ek.t_alpha ** delta)

    pi_u = shift(backend.msm(ek.u, s), d1)
    pi_u_a = shift_alpha(backend.msm(ek.u_alpha, s), d1)
    pi_v = shift(backend.msm(ek.v, s), d2)
    pi_v_a = shift_alpha(backend.msm(ek.v_alpha, s), d2)
    pi_w = shift(backend.msm(ek.w, s), d3)
    pi_w_a = shift_alpha(backend.msm(ek.w_alpha, s), d3)
    pi_h = backend.msm(ek.powers[: len(h_coeffs)], h_coeffs)
    pi_h_a = backend.msm(ek.powers_alpha[: len(h_coeffs)], h_coeffs)
    pi_k = backend.msm(ek.u_beta + ek.v_beta + ek.w_beta, s + s + s)
    if d1:
        pi_k = pi_k * (ek.t_beta_u ** d1)
    if d2:
        pi_k = pi_k * (ek.t_beta_v ** d2)
    if d3:
        pi_k = pi_k * (ek.t_beta_w ** d3)
    return Proof(pi_u, pi_u_a, pi_v, pi_v_a, pi_w, pi_w_a, pi_h, pi_h_a, pi_k,
                 digest=ek.digest)


def prove(ek: EvaluationKey, qap: Qap, wit: Witness) -> Proof:
    """Honest prover: compute the quotient h, then assemble.

    Raises NotSatisfying before emitting anything if the witness violates
    a constraint.
    """
    _, _, _, h_c = qap.combination(wit)
    return assemble_proof(ek, wit, h_c)


def prove_zk(ek: EvaluationKey, qap: Qap, wit: Witness, rng: random.Random) -> Proof:
    """Zero-knowledge prover: mask u, v, w with random multiples of t.

    Draws three deltas from the full field (zero included; all-zero deltas
    reproduce the plain proof exactly) and proves with the shifted
    polynomials u + d1 t, v + d2 t, w + d3 t and the adjusted quotient.
    """
    p = qap.field.p
    u_c, v_c, w_c, h_c = qap.combination(wit)
    d1 = rng.randrange(p)
    d2 = rng.randrange(p)
    d3 = rng.randrange(p)
    t_c = qap.t_coeffs()
    n = max(len(h_c), len(u_c), len(v_c), len(t_c))
    h_z = [0] * n
    for i, c in enumerate(h_c):
        h_z[i] = c
    if d1:
        for i, c in enumerate(v_c):
            h_z[i] = (h_z[i] + d1 * c) % p
    if d2:
        for i, c in enumerate(u_c):
            h_z[i] = (h_z[i] + d2 * c) % p
    if d1 and d2:
        dd = d1 * d2 % p
        for i, c in enumerate(t_c):
            h_z[i] = (h_z[i] + dd * c) % p
    if d3:
        h_z[0] = (h_z[0] - d3) % p
    while h_z and h_z[-1] == 0:
        h_z.pop()
    return assemble_proof(ek, wit, h_z, deltas=(d1, d2, d3))


def verify(vk: VerificationKey, proof: Proof) -> bool:
    """Run all fifteen pairing checks; true iff every one holds.

    Key/proof pairs minted for different circuits are refused outright
    (DigestMismatch) rather than reported as invalid.  All three check
    groups are evaluated unconditionally, so the backend pairing counter
    advances by exactly 15 per call whatever the outcome.
    """
    if vk.digest and proof.digest and vk.digest != proof.digest:
        raise DigestMismatch(
            f"key speaks for circuit {vk.digest[:12]}..., "
            f"proof for {proof.digest[:12]}..."
        )
    backend = vk.backend
    e = backend.pair

    # (a) four alpha-pair checks: each proof element pair shares the same
    # hidden alpha factor, hence was linearly derived from the CRS.
    ok_u = e(proof.pi_u, vk.alpha) == e(proof.pi_u_alpha, vk.one)
    ok_v = e(proof.pi_v, vk.alpha) == e(proof.pi_v_alpha, vk.one)
    ok_w = e(proof.pi_w, vk.alpha) == e(proof.pi_w_alpha, vk.one)
    ok_h = e(proof.pi_h, vk.alpha) == e(proof.pi_h_alpha, vk.one)

    # (b) same-coefficients check: u, v, w were combined with one witness.
    lhs_k = e(proof.pi_k, vk.gamma)
    rhs_k = (
        e(proof.pi_u, vk.beta_u_gamma)
        * e(proof.pi_v, vk.beta_v_gamma)
        * e(proof.pi_w, vk.beta_w_gamma)
    )
    ok_k = lhs_k == rhs_k

    # (c) divisibility check: u(z) v(z) - w(z) = t(z) h(z).
    ok_div = e(proof.pi_u, proof.pi_v) == e(proof.pi_w, vk.one) * e(vk.t, proof.pi_h)

    return ok_u and ok_v and ok_w and ok_h and ok_k and ok_div
