"""Canonical text serialization for every persistent artifact.

One self-describing, line-oriented format covers constraint systems, QAPs,
CRS halves, and proofs: a ``zkpin 1 <kind>`` header, a field-modulus line,
kind-specific sections, and an ``end`` trailer.  All scalars are lowercase
big-endian hex with no prefix; group elements use their backend's hex form
(transparent: the exponent; curve: ``x,y`` affine with ``inf`` for the
identity).  Output is byte-deterministic for equal inputs - term lists are
index-sorted and no section depends on hash order - so fixtures diff
cleanly and digests are stable.

The circuit digest is the SHA-256 of a constraint system's canonical dump
(bindings included).  Keys and proofs carry the digest of the system they
were minted for; ``verify`` refuses mismatched pairs before any pairing
runs.
"""

from __future__ import annotations

import hashlib

from .circuit import ConstraintSystem, Witness
from .errors import SerializationError
from .fields import PrimeField
from .pairing import backend_from_descriptor
from .pinocchio import PROOF_FIELDS, EvaluationKey, Proof, VerificationKey
from .polynomials import Polynomial
from .qap import Qap, reduce as qap_reduce

FORMAT_VERSION = "1"


def _hex(v: int) -> str:
    return format(v, "x")


def _poly_hex(coeffs) -> str:
    return ",".join(_hex(c) for c in coeffs) if coeffs else "-"


def _poly_unhex(text: str) -> list[int]:
    if text == "-":
        return []
    return [int(t, 16) for t in text.split(",")]


def _terms_hex(vec: dict[int, int]) -> str:
    if not vec:
        return "-"
    return ",".join(f"{i}:{_hex(c)}" for i, c in sorted(vec.items()))


def _terms_unhex(text: str) -> dict[int, int]:
    if text == "-":
        return {}
    out = {}
    for part in text.split(","):
        i, c = part.split(":")
        out[int(i)] = int(c, 16)
    return out


class _Reader:
    def __init__(self, text: str, kind: str):
        self.lines = [ln for ln in text.splitlines() if ln.strip()]
        self.pos = 0
        head = self.take().split()
        if len(head) != 3 or head[0] != "zkpin" or head[1] != FORMAT_VERSION:
            raise SerializationError("not a zkpin artifact or wrong version")
        if head[2] != kind:
            raise SerializationError(f"expected a {kind} artifact, found {head[2]}")

    def take(self) -> str:
        if self.pos >= len(self.lines):
            raise SerializationError("unexpected end of artifact")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def field_line(self, key: str) -> str:
        line = self.take()
        tag, _, rest = line.partition(" ")
        if tag != key:
            raise SerializationError(f"expected {key!r} line, found {tag!r}")
        return rest

    def end(self):
        if self.take() != "end":
            raise SerializationError("missing end trailer")


# --- constraint systems -----------------------------------------------------


def dump_cs(cs: ConstraintSystem) -> str:
    out = [f"zkpin {FORMAT_VERSION} r1cs", f"field {_hex(cs.field.p)}"]
    out.append(f"wires {cs.n}")
    for name, vis in cs.wire_meta:
        out.append(f"wire {name} {vis}")
    out.append(f"bindings {len(cs.bindings)}")
    for name, value in cs.bindings:
        out.append(f"bind {name} {_hex(value)}")
    out.append(f"rows {cs.m}")
    for a, b, c in cs.rows:
        out.append(f"row {_terms_hex(a)} {_terms_hex(b)} {_terms_hex(c)}")
    out.append("end")
    return "\n".join(out) + "\n"


def load_cs(text: str) -> ConstraintSystem:
    r = _Reader(text, "r1cs")
    field = PrimeField(int(r.field_line("field"), 16))
    n = int(r.field_line("wires"))
    meta = []
    for _ in range(n):
        name, vis = r.field_line("wire").split(" ")
        meta.append((name, vis))
    nbind = int(r.field_line("bindings"))
    bindings = []
    for _ in range(nbind):
        name, val = r.field_line("bind").split(" ")
        bindings.append((name, int(val, 16)))
    m = int(r.field_line("rows"))
    rows = []
    for _ in range(m):
        a, b, c = r.field_line("row").split(" ")
        rows.append((_terms_unhex(a), _terms_unhex(b), _terms_unhex(c)))
    r.end()
    return ConstraintSystem(field, meta, rows, bindings)


def digest_cs(cs: ConstraintSystem) -> str:
    cached = getattr(cs, "_digest", None)
    if cached is None:
        cached = hashlib.sha256(dump_cs(cs).encode()).hexdigest()
        cs._digest = cached
    return cached


# --- QAPs ---------------------------------------------------------------


def dump_qap(qap: Qap) -> str:
    """Serialize the reduction: source rows plus the polynomial families.

    Materializes all 3n wire polynomials; intended for desk-scale systems
    (the protocol layer never round-trips its large hash circuits).
    """
    out = [f"zkpin {FORMAT_VERSION} qap", f"field {_hex(qap.field.p)}"]
    out.append(f"gates {qap.m}")
    out.append(f"t {_poly_hex(qap.t_coeffs())}")
    for tag, fam in (("u", qap.u), ("v", qap.v), ("w", qap.w)):
        for i, poly in enumerate(fam):
            out.append(f"{tag} {i} {_poly_hex(poly.coeffs)}")
    body = dump_cs(qap.cs)
    out.append("source")
    out.append(body.rstrip("\n"))
    out.append("end")
    return "\n".join(out) + "\n"


def load_qap(text: str) -> Qap:
    r = _Reader(text, "qap")
    field = PrimeField(int(r.field_line("field"), 16))
    m = int(r.field_line("gates"))
    t_coeffs = _poly_unhex(r.field_line("t"))
    polys = {"u": {}, "v": {}, "w": {}}
    while True:
        line = r.take()
        if line == "source":
            break
        tag, idx, coeffs = line.split(" ")
        if tag not in polys:
            raise SerializationError(f"unexpected section {tag!r} in qap artifact")
        polys[tag][int(idx)] = _poly_unhex(coeffs)
    src_lines = []
    while True:
        line = r.take()
        src_lines.append(line)
        if line == "end":
            break
    if r.pos != len(r.lines):
        raise SerializationError("trailing data after qap artifact")
    cs = load_cs("\n".join(src_lines))
    qap = qap_reduce(cs)
    if qap.m != m or qap.t_coeffs() != t_coeffs:
        raise SerializationError("qap artifact disagrees with its source rows")
    qap._u = tuple(Polynomial(field, polys["u"][i]) for i in range(cs.n))
    qap._v = tuple(Polynomial(field, polys["v"][i]) for i in range(cs.n))
    qap._w = tuple(Polynomial(field, polys["w"][i]) for i in range(cs.n))
    return qap


# --- keys and proofs --------------------------------------------------------


def _key_header(kind: str, obj) -> list[str]:
    backend = obj.backend
    return [
        f"zkpin {FORMAT_VERSION} {kind}",
        f"field {_hex(backend.field.p)}",
        f"backend {backend.descriptor}",
        f"digest {obj.digest or '-'}",
    ]


_EK_LISTS = ("powers", "powers_alpha", "u", "u_alpha", "u_beta",
             "v", "v_alpha", "v_beta", "w", "w_alpha", "w_beta")
_EK_SINGLES = ("t", "t_alpha", "t_beta_u", "t_beta_v", "t_beta_w")


def dump_ek(ek: EvaluationKey) -> str:
    out = _key_header("evaluation-key", ek)
    for tag in _EK_LISTS:
        elements = getattr(ek, tag)
        out.append(f"{tag} {len(elements)}")
        for el in elements:
            out.append(el.to_hex())
    for tag in _EK_SINGLES:
        out.append(f"{tag} {getattr(ek, tag).to_hex()}")
    out.append("end")
    return "\n".join(out) + "\n"


def load_ek(text: str) -> EvaluationKey:
    r = _Reader(text, "evaluation-key")
    r.field_line("field")
    backend = backend_from_descriptor(r.field_line("backend"))
    digest = r.field_line("digest")
    kw = {"digest": "" if digest == "-" else digest}
    for tag in _EK_LISTS:
        count = int(r.field_line(tag))
        kw[tag] = [backend.element_from_hex(r.take()) for _ in range(count)]
    for tag in _EK_SINGLES:
        kw[tag] = backend.element_from_hex(r.field_line(tag))
    r.end()
    return EvaluationKey(**kw)


_VK_FIELDS = ("one", "alpha", "t", "gamma", "beta_u_gamma", "beta_v_gamma",
              "beta_w_gamma")


def dump_vk(vk: VerificationKey) -> str:
    out = _key_header("verification-key", vk)
    for tag in _VK_FIELDS:
        out.append(f"{tag} {getattr(vk, tag).to_hex()}")
    out.append("end")
    return "\n".join(out) + "\n"


def load_vk(text: str) -> VerificationKey:
    r = _Reader(text, "verification-key")
    r.field_line("field")
    backend = backend_from_descriptor(r.field_line("backend"))
    digest = r.field_line("digest")
    parts = {tag: backend.element_from_hex(r.field_line(tag)) for tag in _VK_FIELDS}
    r.end()
    return VerificationKey(digest="" if digest == "-" else digest, **parts)


def dump_proof(proof: Proof) -> str:
    backend = proof.pi_u.backend
    out = [
        f"zkpin {FORMAT_VERSION} proof",
        f"field {_hex(backend.field.p)}",
        f"backend {backend.descriptor}",
        f"digest {proof.digest or '-'}",
    ]
    for tag in PROOF_FIELDS:
        out.append(f"{tag} {getattr(proof, tag).to_hex()}")
    out.append("end")
    return "\n".join(out) + "\n"


def load_proof(text: str) -> Proof:
    r = _Reader(text, "proof")
    r.field_line("field")
    backend = backend_from_descriptor(r.field_line("backend"))
    digest = r.field_line("digest")
    parts = [backend.element_from_hex(r.field_line(tag)) for tag in PROOF_FIELDS]
    r.end()
    return Proof(*parts, digest="" if digest == "-" else digest)


# --- witness input maps -------------------------------------------------


def parse_inputs(text: str) -> dict[str, int]:
    """Parse ``name = value`` lines; values decimal or 0x-prefixed hex."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SerializationError(f"line {lineno}: expected 'name = value'")
        name, _, value = line.partition("=")
        name = name.strip()
        value = value.strip()
        try:
            out[name] = int(value, 16) if value.startswith("0x") else int(value)
        except ValueError:
            raise SerializationError(f"line {lineno}: bad value {value!r}") from None
    return out


def dump_witness(wit: Witness) -> str:
    out = [f"zkpin {FORMAT_VERSION} witness", f"field {_hex(wit.field.p)}"]
    out.append(f"values {_poly_hex(wit.values)}")
    out.append("end")
    return "\n".join(out) + "\n"


def load_witness(text: str) -> Witness:
    r = _Reader(text, "witness")
    field = PrimeField(int(r.field_line("field"), 16))
    values = _poly_unhex(r.field_line("values"))
    r.end()
    return Witness(field, values)
