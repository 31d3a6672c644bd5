"""Pauli-sum Hamiltonians, dense matrices and LCU block-encodings.

Qubit order is big-endian: character 0 of a Pauli string acts on the most
significant bit of the basis index. In composite registers the ancillas sit
above the system, so the encoded block occupies the leading ``2^N`` indices.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SizeError, ValidationError

MAX_DENSE_QUBITS = 12
MAX_BLOCK_QUBITS = 14
_PAULI_CHARS = set("IXYZ")


def _masks(pauli: str) -> tuple[int, int, int]:
    """(x_mask, z_mask, number of Y) for a big-endian Pauli string."""
    n = len(pauli)
    xm = zm = 0
    ny = 0
    for pos, ch in enumerate(pauli):
        bit = 1 << (n - 1 - pos)
        if ch in "XY":
            xm |= bit
        if ch in "ZY":
            zm |= bit
        if ch == "Y":
            ny += 1
    return xm, zm, ny


def _popcount_parity(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    out = np.zeros_like(a)
    while np.any(a):
        out ^= a & 1
        a >>= 1
    return out


def pauli_matrix(pauli: str) -> np.ndarray:
    """Dense matrix of one Pauli string, built from ``P = i^{#Y} X^x Z^z``."""
    n = len(pauli)
    if n > MAX_DENSE_QUBITS:
        raise SizeError(f"{n} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    xm, zm, ny = _masks(pauli)
    dim = 1 << n
    cols = np.arange(dim)
    signs = 1 - 2 * _popcount_parity(cols & zm)
    out = np.zeros((dim, dim), dtype=complex)
    out[cols ^ xm, cols] = (1j**ny) * signs
    return out


@dataclass(frozen=True)
class PauliHamiltonian:
    """``H = sum_l kappa_l P_l`` with terms merged and sorted by Pauli string."""

    qubits: int
    terms: tuple  # of (coeff, pauli)

    def __post_init__(self):
        if self.qubits < 1:
            raise ValidationError("a Hamiltonian needs at least one qubit")
        if self.qubits > MAX_DENSE_QUBITS:
            raise ValidationError(
                f"{self.qubits} qubits exceeds the desk-scale cap of {MAX_DENSE_QUBITS}"
            )
        merged: dict[str, float] = {}
        for coeff, pauli in self.terms:
            pauli = str(pauli).upper()
            if set(pauli) - _PAULI_CHARS:
                raise ValidationError(f"bad Pauli character in {pauli!r}")
            if len(pauli) != self.qubits:
                raise ValidationError(
                    f"Pauli string {pauli!r} has length {len(pauli)}, expected {self.qubits}"
                )
            c = float(coeff)
            if not math.isfinite(c):
                raise ValidationError("coefficients must be finite")
            merged[pauli] = merged.get(pauli, 0.0) + c
        terms = tuple((c, p) for p, c in sorted(merged.items()) if c != 0.0)
        if not terms:
            raise ValidationError("Hamiltonian has no nonzero terms")
        object.__setattr__(self, "terms", terms)

    @property
    def alpha(self) -> float:
        return math.fsum(abs(c) for c, _ in self.terms)

    @property
    def J(self) -> int:
        return len(self.terms)

    @property
    def locality(self) -> int:
        return max(sum(ch != "I" for ch in p) for _, p in self.terms)

    k = locality

    @property
    def ancillas(self) -> int:
        return math.ceil(math.log2(self.J)) if self.J > 1 else 0

    def to_dict(self) -> dict:
        return {
            "qubits": self.qubits,
            "terms": [{"pauli": p, "coeff": c} for c, p in self.terms],
        }

    def summary(self) -> dict:
        return {"qubits": self.qubits, "J": self.J, "k": self.locality, "alpha": self.alpha}

    def normalized_terms(self) -> list[tuple[float, str]]:
        a = self.alpha
        return [(c / a, p) for c, p in self.terms]

    @cached_property
    def _eig(self):
        w, v = np.linalg.eigh(dense_matrix(self, normalized=True))
        return np.clip(w, -1.0, 1.0), v

    def spectrum(self):
        """Eigenvalues (clipped into [-1, 1]) and eigenvectors of ``H / alpha``."""
        return self._eig


def parse_hamiltonian(document) -> PauliHamiltonian:
    """Build from JSON text or an already-decoded dict."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"Hamiltonian is not valid JSON: {exc}") from exc
    if not isinstance(document, dict) or "terms" not in document:
        raise ValidationError("Hamiltonian document needs a 'terms' list")
    raw = document["terms"]
    if not isinstance(raw, list) or not raw:
        raise ValidationError("Hamiltonian term list is empty")
    terms = []
    for t in raw:
        if not isinstance(t, dict) or "pauli" not in t or "coeff" not in t:
            raise ValidationError(f"bad term {t!r}; expected {{'pauli': ..., 'coeff': ...}}")
        if isinstance(t["coeff"], bool) or not isinstance(t["coeff"], (int, float)):
            raise ValidationError(f"coefficient of {t['pauli']!r} must be a real number")
        terms.append((t["coeff"], str(t["pauli"]).upper()))
    lengths = {len(p) for _, p in terms}
    if len(lengths) != 1:
        raise ValidationError(f"Pauli strings have inconsistent lengths {sorted(lengths)}")
    n = document.get("qubits", lengths.pop())
    if isinstance(n, bool) or not isinstance(n, int):
        raise ValidationError("'qubits' must be an integer")
    return PauliHamiltonian(n, tuple(terms))


def dense_matrix(h: PauliHamiltonian, normalized: bool = True) -> np.ndarray:
    if h.qubits > MAX_DENSE_QUBITS:
        raise SizeError(f"{h.qubits} qubits exceeds the dense cap of {MAX_DENSE_QUBITS}")
    scale = 1.0 / h.alpha if normalized else 1.0
    out = np.zeros((1 << h.qubits, 1 << h.qubits), dtype=complex)
    for c, p in h.terms:
        out += (c * scale) * pauli_matrix(p)
    return out


def evolution_unitary(h: PauliHamiltonian, t: float) -> np.ndarray:
    """``exp(i t H / alpha)`` via the eigendecomposition."""
    w, v = h.spectrum()
    return (v * np.exp(1j * t * w)) @ v.conj().T


def function_of(h: PauliHamiltonian, f) -> np.ndarray:
    """Apply a scalar function to the spectrum of ``H / alpha``."""
    w, v = h.spectrum()
    return (v * f(w)) @ v.conj().T


@dataclass(frozen=True, eq=False)
class BlockEncoding:
    unitary: np.ndarray
    ancillas: int
    encoded: PauliHamiltonian
    depth_DB: int
    prep: np.ndarray

    @property
    def system_dim(self) -> int:
        return 1 << self.encoded.qubits

    def block(self) -> np.ndarray:
        n = self.system_dim
        return self.unitary[:n, :n]

    def projector_signs(self) -> np.ndarray:
        """Diagonal of ``2|0^M><0^M| - I`` on the full register."""
        s = -np.ones(self.unitary.shape[0])
        s[: self.system_dim] = 1.0
        return s


def householder_prep(amplitudes: np.ndarray) -> np.ndarray:
    """Real orthogonal matrix whose first column is ``amplitudes`` (unit norm)."""
    v = np.asarray(amplitudes, dtype=float)
    e0 = np.zeros_like(v)
    e0[0] = 1.0
    u = e0 - v
    nu = float(u @ u)
    if nu < 1e-30:
        return np.eye(len(v))
    return np.eye(len(v)) - 2.0 * np.outer(u, u) / nu


def depth_DB(h: PauliHamiltonian) -> int:
    """Concrete block-encoding depth estimate ``J (k + ceil(log2 J))``."""
    return h.J * (h.locality + h.ancillas)


def block_encoding(h: PauliHamiltonian) -> BlockEncoding:
    """Prepare-select LCU encoding of ``H / alpha`` at the dense-matrix level."""
    m = h.ancillas
    if h.qubits + m > MAX_BLOCK_QUBITS:
        raise SizeError(
            f"block-encoding needs {h.qubits + m} qubits, above the cap of {MAX_BLOCK_QUBITS}"
        )
    na = 1 << m
    ns = 1 << h.qubits
    amp = np.zeros(na)
    alpha = h.alpha
    for l, (c, _) in enumerate(h.terms):
        amp[l] = math.sqrt(abs(c) / alpha)
    amp /= np.linalg.norm(amp)
    prep = householder_prep(amp)
    select = np.zeros((na * ns, na * ns), dtype=complex)
    for l in range(na):
        sl = slice(l * ns, (l + 1) * ns)
        if l < h.J:
            c, p = h.terms[l]
            select[sl, sl] = np.sign(c) * pauli_matrix(p)
        else:
            select[sl, sl] = np.eye(ns)
    big_prep = np.kron(prep, np.eye(ns))
    unitary = big_prep.T @ select @ big_prep
    return BlockEncoding(unitary, m, h, depth_DB(h), prep)


def random_hamiltonian(qubits: int, n_terms: int, rng=None) -> PauliHamiltonian:
    """Random non-identity Pauli strings with Gaussian coefficients."""
    rng = np.random.default_rng(rng)
    if n_terms > 4**qubits - 1:
        raise ValidationError("more terms requested than distinct non-identity strings")
    chosen: dict[str, float] = {}
    while len(chosen) < n_terms:
        p = "".join(rng.choice(list("IXYZ"), size=qubits))
        if set(p) == {"I"} or p in chosen:
            continue
        chosen[p] = float(rng.normal())
    return PauliHamiltonian(qubits, tuple((c, p) for p, c in chosen.items()))
