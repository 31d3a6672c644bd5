"""QSP phase factors, GQSP angles and the corresponding circuit matrices.

QSP convention::

    U_Phi(x) = e^{i phi_0 Z} prod_{j=1}^{d} W(x) e^{i phi_j Z},
    W(x) = e^{i arccos(x) X}

and a real target ``f`` is matched by ``Re <0|U_Phi(x)|0>``.

GQSP convention::

    R(theta) = [[cos, i sin], [i sin, cos]],  A = diag(z, 1/z)
    R(theta_0) prod_{j=1}^{d} A R(theta_j) = [[L(z), i K(z)], [i K(1/z), L(1/z)]]

for real-coefficient L, K of parity d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import PreconditionError, SizeError, SolverError, UsageError, ValidationError
from .hamiltonian import BlockEncoding
from .polyops import ChebyshevSeries, LaurentPoly, cheb_eval, laurent_eval, poly_from_dict

HEADROOM = 1e-3
QSP_GRID = 2000
GQSP_GRID = 4096
MAX_CIRCUIT_QUBITS = 15
DEFAULT_TOL = 1e-10


def wrap_phase(a):
    """Map angles into (-pi, pi]."""
    a = np.asarray(a, dtype=float)
    out = np.pi - np.mod(np.pi - a, 2.0 * np.pi)
    return out


def chebyshev_nodes(n: int) -> np.ndarray:
    k = np.arange(1, n + 1)
    return np.cos((2 * k - 1) * np.pi / (2 * n))


def _cheb_sup(series: ChebyshevSeries) -> float:
    xs = np.concatenate([np.linspace(-1, 1, 4001), chebyshev_nodes(QSP_GRID)])
    return float(np.max(np.abs(cheb_eval(series, xs))))


def _laurent_sup(poly: LaurentPoly, n: int = GQSP_GRID) -> float:
    th = np.linspace(0, 2 * np.pi, max(n, 8 * poly.degree + 8), endpoint=False)
    return float(np.max(np.abs(laurent_eval(poly, th))))


def headroom_scale(sup: float) -> float:
    """``s = min(1, (1 - headroom) / sup)``."""
    if sup == 0:
        return 1.0
    return min(1.0, (1.0 - HEADROOM) / sup)


@dataclass
class PhaseProgram:
    """Certified QSP phases or GQSP angles.

    ``phases`` holds Phi (QSP) or theta (GQSP). For QSP, ``circuit_phases``
    are the phase-gate angles of the block-encoding circuit and
    ``conjugate_phases`` the angles realizing the conjugate polynomial.
    ``target`` is the scaled polynomial the residual was certified against.
    """

    kind: str
    phases: list
    scale: float
    residual: float
    parity: str | None = None
    conjugate_phases: list | None = None
    circuit_phases: list | None = None
    target: ChebyshevSeries | LaurentPoly | None = None
    meta: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return len(self.phases) - 1

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "phases": [float(p) for p in self.phases],
            "conjugate_phases": None if self.conjugate_phases is None else [float(p) for p in self.conjugate_phases],
            "circuit_phases": None if self.circuit_phases is None else [float(p) for p in self.circuit_phases],
            "scale": float(self.scale),
            "residual": float(self.residual),
            "parity": self.parity,
            "target": None if self.target is None else self.target.to_dict(),
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> PhaseProgram:
        if d.get("kind") not in ("qsp-real", "gqsp-laurent"):
            raise ValidationError(f"unknown phase program kind {d.get('kind')!r}")
        try:
            return cls(
                kind=d["kind"],
                phases=[float(p) for p in d["phases"]],
                scale=float(d["scale"]),
                residual=float(d["residual"]),
                parity=d.get("parity"),
                conjugate_phases=d.get("conjugate_phases"),
                circuit_phases=d.get("circuit_phases"),
                target=poly_from_dict(d["target"]) if d.get("target") else None,
                meta=dict(d.get("meta") or {}),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed phase program: {exc}") from exc


# ------------------------------------------------------------------- QSP

def _rz(phi: float | np.ndarray) -> np.ndarray:
    """Stack of e^{i phi Z} (phi scalar -> shape (2, 2))."""
    e = np.exp(1j * np.asarray(phi))
    out = np.zeros(np.shape(phi) + (2, 2), dtype=complex)
    out[..., 0, 0] = e
    out[..., 1, 1] = np.conj(e)
    return out


def _w_stack(xs: np.ndarray) -> np.ndarray:
    s = np.sqrt(np.clip(1.0 - xs**2, 0.0, None))
    out = np.empty(xs.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = xs
    out[..., 1, 1] = xs
    out[..., 0, 1] = 1j * s
    out[..., 1, 0] = 1j * s
    return out


def _qsp_stack(phases, xs: np.ndarray) -> np.ndarray:
    phases = np.asarray(phases, dtype=float)
    w = _w_stack(xs)
    u = np.broadcast_to(_rz(phases[0]), xs.shape + (2, 2)).copy()
    for phi in phases[1:]:
        u = u @ w @ _rz(phi)
    return u


def qsp_unitary(phases, x):
    """The SU(2) product at one ``x`` (or a stack for an array of x)."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1 + 1e-12):
        raise ValidationError("QSP signal requires |x| <= 1")
    xa = np.clip(xa, -1.0, 1.0)
    out = _qsp_stack(phases, np.atleast_1d(xa))
    return out[0] if xa.ndim == 0 else out


def qsp_poly_values(phases, xs) -> np.ndarray:
    """Top-left entries ``P(x)`` for an array of x."""
    return qsp_unitary(phases, np.asarray(xs, dtype=float))[..., 0, 0]


def _full_from_reduced(red: np.ndarray, d: int) -> np.ndarray:
    j = np.arange(d + 1)
    return np.asarray(red, dtype=float)[np.minimum(j, d - j)]


def _im_and_jac(red: np.ndarray, d: int, xs: np.ndarray):
    """``Re P`` at xs and its Jacobian with respect to the reduced phases."""
    full = _full_from_reduced(red, d)
    w = _w_stack(xs)
    rz = _rz(full)
    k = len(xs)
    pre = np.empty((d + 1, k, 2, 2), dtype=complex)
    acc = np.broadcast_to(rz[0], (k, 2, 2)).copy()
    pre[0] = acc
    for j in range(1, d + 1):
        acc = acc @ w @ rz[j]
        pre[j] = acc
    suf = np.empty((d + 1, k, 2, 2), dtype=complex)
    acc = np.broadcast_to(np.eye(2, dtype=complex), (k, 2, 2)).copy()
    suf[d] = acc
    for j in range(d, 0, -1):
        acc = w @ rz[j] @ acc
        suf[j - 1] = acc
    val = pre[d][:, 0, 0].real
    # dU/dphi_j = pre_j (iZ) suf_j, top-left entry only
    dfull = np.empty((d + 1, k))
    for j in range(d + 1):
        a, b = pre[j], suf[j]
        top = 1j * (a[:, 0, 0] * b[:, 0, 0] - a[:, 0, 1] * b[:, 1, 0])
        dfull[j] = top.real
    nred = len(red)
    jac = np.zeros((k, nred))
    for j in range(d + 1):
        jac[:, min(j, d - j)] += dfull[j]
    return val, jac


def _solve_reduced(f_nodes: np.ndarray, d: int, xs: np.ndarray, max_iter: int, tol: float):
    nred = math.ceil((d + 1) / 2)
    red = np.zeros(nred)
    red[0] = np.pi / 4
    best = (np.inf, red.copy())
    for _ in range(max_iter):
        val, jac = _im_and_jac(red, d, xs)
        res = val - f_nodes
        err = float(np.max(np.abs(res)))
        if err < best[0]:
            best = (err, red.copy())
        if err < tol * 1e-2:
            break
        try:
            step = np.linalg.solve(jac, res)
        except np.linalg.LinAlgError:
            break
        red = red - step
        if not np.all(np.isfinite(red)):
            break
    if best[0] > tol * 1e-2:
        def fun(r):
            return _im_and_jac(r, d, xs)[0] - f_nodes

        def jacf(r):
            return _im_and_jac(r, d, xs)[1]

        sol = optimize.least_squares(
            fun, best[1], jac=jacf, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=max(50, max_iter)
        )
        err = float(np.max(np.abs(sol.fun)))
        if err < best[0]:
            best = (err, sol.x.copy())
    return best[1], best[0]


def qsp_to_circuit_phases(phases) -> np.ndarray:
    """Angles for the phase gates of the block-encoding circuit.

    With ``U_H`` the Hermitian block-encoding, ``W = i e^{-i pi/4 Z} U_H e^{-i pi/4 Z}``
    on each qubitized subspace, which shifts the ends by ``-pi/4`` and the
    interior by ``-pi/2``.
    """
    phases = np.asarray(phases, dtype=float)
    d = len(phases) - 1
    if d == 0:
        return phases.copy()
    shift = np.full(d + 1, np.pi / 2)
    shift[0] = shift[-1] = np.pi / 4
    return wrap_phase(phases - shift)


def conjugate_circuit_phases(circuit_phases) -> np.ndarray:
    """``phi'_j = -phi_j + pi (1 - [j = d])`` on circuit phases."""
    c = np.asarray(circuit_phases, dtype=float)
    out = -c + np.pi
    out[-1] = -c[-1]
    return wrap_phase(out)


def find_qsp_phases(target: ChebyshevSeries, tol: float = DEFAULT_TOL, scale: float | None = None) -> PhaseProgram:
    """Phases with ``Re P(x) = s * target(x)`` certified on a Chebyshev grid."""
    if not isinstance(target, ChebyshevSeries):
        raise ValidationError("QSP target must be a ChebyshevSeries")
    parity = target.parity
    if parity == "mixed":
        raise UsageError("QSP needs a target of definite parity; split even and odd parts first")
    if not (tol > 0):
        raise ValidationError("tol must be positive")
    s = headroom_scale(_cheb_sup(target)) if scale is None else float(scale)
    scaled = ChebyshevSeries(s * np.asarray(target.coeffs))
    d = target.degree
    grid = chebyshev_nodes(QSP_GRID)
    if d == 0:
        c0 = float(scaled.coeffs[0])
        if abs(c0) > 1:
            raise PreconditionError("constant target exceeds 1 after scaling")
        phases = np.array([math.acos(c0)])
        residual = abs(math.cos(phases[0]) - c0)
    else:
        nred = math.ceil((d + 1) / 2)
        k = np.arange(1, nred + 1)
        xs = np.cos((2 * k - 1) * np.pi / (4 * nred))
        f_nodes = cheb_eval(scaled, xs)
        max_iter = max(50, 10 * d * d)
        red, _ = _solve_reduced(np.atleast_1d(f_nodes), d, xs, max_iter, tol)
        phases = wrap_phase(_full_from_reduced(red, d))
        residual = float(np.max(np.abs(qsp_poly_values(phases, grid).real - cheb_eval(scaled, grid))))
    if not residual <= tol:
        raise SolverError(
            f"QSP phase solve did not reach tol={tol:g} at degree {d}", best_residual=residual
        )
    circuit = qsp_to_circuit_phases(phases)
    return PhaseProgram(
        kind="qsp-real",
        phases=[float(p) for p in np.atleast_1d(phases)],
        scale=float(s),
        residual=float(residual),
        parity=parity,
        conjugate_phases=[float(p) for p in conjugate_circuit_phases(circuit)],
        circuit_phases=[float(p) for p in circuit],
        target=scaled,
        meta={"tol": float(tol)},
    )


def qsp_residual(program: PhaseProgram) -> float:
    """Recompute the certificate stored in ``program.residual``."""
    grid = chebyshev_nodes(QSP_GRID)
    return float(np.max(np.abs(qsp_poly_values(program.phases, grid).real - cheb_eval(program.target, grid))))


def _check_circuit_size(qubits: int):
    if qubits > MAX_CIRCUIT_QUBITS:
        raise SizeError(f"circuit needs {qubits} qubits, above the cap of {MAX_CIRCUIT_QUBITS}")


def phase_sequence(circuit_phases, be: BlockEncoding) -> np.ndarray:
    """``i^d prod_{j<d} (e^{i phi_j U_Pi} U_H) e^{i phi_d U_Pi}``; its block is P(H/alpha)."""
    c = np.asarray(circuit_phases, dtype=float)
    d = len(c) - 1
    sig = be.projector_signs()
    out = np.diag(np.exp(1j * c[0] * sig))
    for phi in c[1:]:
        out = out @ be.unitary @ np.diag(np.exp(1j * phi * sig))
    return out * (1j**d)


def real_qsp_circuit(program: PhaseProgram, be: BlockEncoding) -> np.ndarray:
    """Full real-QSP circuit: one signal qubit, M ancillas, N system qubits.

    Hadamard on the signal qubit, then for each step a signal-controlled
    phase ``|0><0| e^{i phi U_Pi} + |1><1| e^{-i phi U_Pi}``, a Z on the
    signal qubit, and one query of ``U_H``; a final controlled phase and
    Hadamard. The ``(-i)^d`` of the sequence is cancelled here, so the
    ``<0|<0^M| . |0>|0^M>`` block equals ``s * f(H/alpha)``.
    """
    if program.kind != "qsp-real":
        raise UsageError("real_qsp_circuit needs a qsp-real program")
    _check_circuit_size(1 + be.ancillas + be.encoded.qubits)
    c = np.asarray(program.circuit_phases, dtype=float)
    d = len(c) - 1
    sig = be.projector_signs()
    dim = len(sig)

    def cphase(phi):
        return np.concatenate([np.exp(1j * phi * sig), np.exp(-1j * phi * sig)])

    z_sig = np.concatenate([np.ones(dim), -np.ones(dim)])
    had = np.kron(np.array([[1, 1], [1, -1]]) / np.sqrt(2), np.eye(dim))
    uh = np.kron(np.eye(2), be.unitary)
    seq = np.eye(2 * dim, dtype=complex)
    for j in range(d):
        seq = (seq * (z_sig * cphase(c[j]))) @ uh
    seq = seq * cphase(c[d])
    return (had @ seq @ had) * (1j**d)


def circuit_block(circuit: np.ndarray, system_dim: int) -> np.ndarray:
    return circuit[:system_dim, :system_dim]


# ------------------------------------------------------------------- GQSP

def _laurent_real(poly: LaurentPoly, what: str) -> np.ndarray:
    c = np.asarray(poly.coeffs)
    if np.max(np.abs(c.imag), initial=0.0) > 1e-12 * max(1.0, np.abs(c).max()):
        raise ValidationError(f"{what} must have real coefficients")
    return c.real.copy()


def _laurent_parity(c: np.ndarray) -> int | None:
    d = (len(c) - 1) // 2
    idx = np.arange(-d, d + 1)
    nz = idx[c != 0]
    if nz.size == 0:
        return None
    par = set((nz % 2).tolist())
    return par.pop() if len(par) == 1 else -1


def _autocorr(g: np.ndarray) -> np.ndarray:
    """``r_k = sum_m g_m g_{m+k}`` for k = 0..len(g)-1."""
    full = np.correlate(g, g, mode="full")
    return full[len(g) - 1 :]


def complementary_poly(L: LaurentPoly) -> LaurentPoly:
    """Real K of parity d with ``|L|^2 + |K|^2 = 1`` on the unit circle.

    ``1 - L(z)L(1/z)`` has only even powers, so it equals ``A(z^2)`` for a
    Laurent polynomial A of degree d. A Fejer-Riesz factor ``A = G(w)G(1/w)``
    is formed from the roots of ``w^d A(w)`` inside the unit disk, polished
    by Newton steps on the autocorrelation equations, and ``K = z^-d G(z^2)``.
    """
    c = _laurent_real(L, "L")
    d = L.degree
    if _laurent_parity(c) not in (None, d % 2):
        raise PreconditionError("L must have parity deg(L) mod 2")
    sup = _laurent_sup(L)
    if sup > 1.0 + 1e-12:
        raise PreconditionError(f"sup |L| = {sup:.6g} exceeds 1; rescale before synthesis")
    if d == 0:
        return LaurentPoly([math.sqrt(max(0.0, 1.0 - c[0] ** 2))])
    # coefficients of L(z)L(1/z) at lags -2d..2d; only even lags are nonzero
    a = -np.convolve(c, c[::-1])
    a[2 * d] += 1.0
    a_even = a[0::2]  # A(w) at powers -d..d of w = z^2
    if np.max(np.abs(a_even)) <= 1e-14:
        return LaurentPoly([0.0])  # |L| = 1 everywhere
    target = a_even[d:]  # autocorrelation lags 0..d
    g = _spectral_factor(a_even, d)
    g *= math.sqrt(target[0] / float(np.dot(g, g)))
    g = _wilson_polish(g, target)
    if g[-1] < 0:
        g = -g
    K = np.zeros(2 * d + 1)
    K[0::2] = g  # z^{-d} G(z^2): powers -d, -d+2, ..., d
    Kp = LaurentPoly(K)
    resid = complement_identity_error(L, Kp)
    if not np.isfinite(resid) or resid > 1e-9:
        raise SolverError(
            "spectral factorization inaccurate (roots near the unit circle?)", best_residual=resid
        )
    return Kp


def _spectral_factor(a_even: np.ndarray, d: int) -> np.ndarray:
    """Monic G (ascending coefficients) whose roots are the disk half of A's roots.

    Roots of ``w^d A(w)`` come in pairs ``r, 1/conj(r)``. Leading zeros
    correspond to roots at infinity; roots on the circle are double and one
    of each pair is kept, projected onto the circle.
    """
    desc = a_even[::-1]
    roots = np.roots(desc)
    missing = 2 * d - roots.size
    if missing > 0:
        roots = np.concatenate([roots, np.full(missing, np.inf)])
    mod = np.abs(roots)
    near = np.abs(mod - 1.0) < 1e-5
    inside = list(roots[(mod < 1.0) & ~near])
    circ = roots[near]
    if circ.size:
        circ = circ[np.argsort(np.angle(circ))]
        inside.extend((circ / np.abs(circ))[::2])
    inside = np.array(inside, dtype=complex)
    if inside.size != d:
        # fall back to plain modulus ordering
        inside = roots[np.argsort(mod)[:d]]
    return np.real(np.poly(inside))[::-1].copy()


def _wilson_polish(g: np.ndarray, target: np.ndarray, iters: int = 8) -> np.ndarray:
    n = len(g)

    def err(v):
        return float(np.max(np.abs(_autocorr(v) - target)))

    cur = err(g)
    for _ in range(iters):
        jac = np.zeros((n, n))
        for k in range(n):
            for m in range(n):
                if m + k < n:
                    jac[k, m] += g[m + k]
                if m - k >= 0:
                    jac[k, m] += g[m - k]
        try:
            step = np.linalg.lstsq(jac, _autocorr(g) - target, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        cand = g - step
        e = err(cand)
        if not e < cur:
            break
        g, cur = cand, e
        if cur < 1e-15:
            break
    return g


def complement_identity_error(L: LaurentPoly, K: LaurentPoly, grid_points: int = GQSP_GRID) -> float:
    th = np.linspace(0, 2 * np.pi, grid_points, endpoint=False)
    return float(np.max(np.abs(np.abs(laurent_eval(L, th)) ** 2 + np.abs(laurent_eval(K, th)) ** 2 - 1.0)))


def _strip_layer(Lc: np.ndarray, Kc: np.ndarray):
    """Peel one ``A R(theta)`` factor; arrays are centred coefficient vectors."""
    d = (len(Lc) - 1) // 2
    top = math.hypot(Kc[-1], Lc[-1])
    bot = math.hypot(Lc[0], Kc[0])
    if max(top, bot) < 1e-300:
        theta = 0.0
    elif top >= bot:
        theta = math.atan2(Kc[-1], Lc[-1])
    else:
        theta = math.atan2(-Lc[0], Kc[0])
    c, s = math.cos(theta), math.sin(theta)
    # L_prev = z^{-1}(c L + s K), K_prev = z (c K - s L); the dropped end
    # entries vanish by the choice of theta and by parity
    lp = (c * Lc + s * Kc)[2:]
    kp = (c * Kc - s * Lc)[:-2]
    return theta, lp, kp, d


def find_gqsp_angles(L: LaurentPoly, K: LaurentPoly, check: bool = True) -> PhaseProgram:
    """Angles ``theta_0..theta_d`` reproducing ``[[L, iK], [iK~, L~]]``."""
    lc = _laurent_real(L, "L")
    kc = _laurent_real(K, "K")
    d = max(L.degree, K.degree)
    Lc = np.zeros(2 * d + 1)
    Kc = np.zeros(2 * d + 1)
    Lc[d - L.degree : d + L.degree + 1] = lc
    Kc[d - K.degree : d + K.degree + 1] = kc
    ident = complement_identity_error(L, K)
    if check and ident > 1e-9:
        raise PreconditionError(f"|L|^2 + |K|^2 deviates from 1 by {ident:.3g}")
    thetas = []
    cur_l, cur_k = Lc, Kc
    for _ in range(d):
        theta, cur_l, cur_k, _ = _strip_layer(cur_l, cur_k)
        thetas.append(theta)
    theta0 = math.atan2(cur_k[0], cur_l[0])
    angles = wrap_phase(np.array([theta0] + thetas[::-1]))
    residual = gqsp_reconstruction_error(angles, L)
    return PhaseProgram(
        kind="gqsp-laurent",
        phases=[float(a) for a in angles],
        scale=1.0,
        residual=residual,
        parity="even" if d % 2 == 0 else "odd",
        target=L,
        meta={"complement": K.to_dict(), "identity_error": ident},
    )


def gqsp_polys(angles) -> tuple[LaurentPoly, LaurentPoly]:
    """Forward recursion: the (L, K) pair produced by the angle sequence."""
    angles = np.asarray(angles, dtype=float)
    d = len(angles) - 1
    L = np.zeros(2 * d + 1)
    K = np.zeros(2 * d + 1)
    L[d] = math.cos(angles[0])
    K[d] = math.sin(angles[0])
    for th in angles[1:]:
        c, s = math.cos(th), math.sin(th)
        zl = np.roll(L, 1)
        izk = np.roll(K, -1)
        L, K = c * zl - s * izk, s * zl + c * izk
    return LaurentPoly(L), LaurentPoly(K)


def gqsp_reconstruction_error(angles, L: LaurentPoly, grid_points: int = GQSP_GRID) -> float:
    """Max over the circle of ``|top-left of the operator product - L|``."""
    th = np.linspace(0, 2 * np.pi, grid_points, endpoint=False)
    z = np.exp(1j * th)
    angles = np.asarray(angles, dtype=float)
    c, s = np.cos(angles[0]), np.sin(angles[0])
    m = np.empty((len(z), 2, 2), dtype=complex)
    m[:, 0, 0] = c
    m[:, 1, 1] = c
    m[:, 0, 1] = 1j * s
    m[:, 1, 0] = 1j * s
    for a in angles[1:]:
        ca, sa = math.cos(a), math.sin(a)
        r = np.array([[ca, 1j * sa], [1j * sa, ca]])
        m[:, :, 0] *= z[:, None]
        m[:, :, 1] /= z[:, None]
        m = m @ r
    return float(np.max(np.abs(m[:, 0, 0] - laurent_eval(L, th))))


def gqsp_circuit(program: PhaseProgram, U: np.ndarray) -> np.ndarray:
    """Unitary ``R(theta_0) prod_j A R(theta_j)`` with ``A = diag(U, U^dagger)``."""
    if program.kind != "gqsp-laurent":
        raise UsageError("gqsp_circuit needs a gqsp-laurent program")
    U = np.asarray(U, dtype=complex)
    n = U.shape[0]
    _check_circuit_size(1 + int(round(math.log2(n))))
    if np.max(np.abs(U.conj().T @ U - np.eye(n))) > 1e-10:
        raise ValidationError("signal operator U is not unitary within 1e-10")
    ud = U.conj().T

    def rot(theta):
        c, s = math.cos(theta), math.sin(theta)
        return np.kron(np.array([[c, 1j * s], [1j * s, c]]), np.eye(n))

    a = np.zeros((2 * n, 2 * n), dtype=complex)
    a[:n, :n] = U
    a[n:, n:] = ud
    out = rot(program.phases[0])
    for th in program.phases[1:]:
        out = out @ a @ rot(th)
    return out


# ------------------------------------------------------- synthesis plans

@dataclass
class SynthesisComponent:
    """One definite-parity, real-coefficient piece and its weight (1 or i)."""

    weight: complex
    program: PhaseProgram

    def to_dict(self) -> dict:
        return {"weight": [self.weight.real, self.weight.imag], "program": self.program.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> SynthesisComponent:
        w = d["weight"]
        return cls(complex(w[0], w[1]), PhaseProgram.from_dict(d["program"]))


def synthesize_chebyshev(series: ChebyshevSeries, tol: float = DEFAULT_TOL) -> list[SynthesisComponent]:
    """Split into parity parts and solve phases for each nonzero part."""
    parts = [series] if series.parity != "mixed" else [series.even_part(), series.odd_part()]
    out = []
    for p in parts:
        if p.degree == 0 and p.coeffs[0] == 0:
            continue
        out.append(SynthesisComponent(1.0 + 0j, find_qsp_phases(p, tol)))
    if not out:
        out.append(SynthesisComponent(1.0 + 0j, find_qsp_phases(series, tol)))
    return out


def split_laurent(L: LaurentPoly) -> list[tuple[complex, LaurentPoly]]:
    """``L = sum w_c L_c`` with real-coefficient, definite-parity ``L_c`` and ``w_c`` in {1, i}."""
    pieces = []
    for parity in (0, 1):
        part = L.parity_part(parity)
        c = np.asarray(part.coeffs)
        for w, vals in ((1.0 + 0j, c.real), (1j, c.imag)):
            if np.any(vals != 0):
                pieces.append((w, LaurentPoly(vals)))
    return pieces


def synthesize_laurent(L: LaurentPoly) -> list[SynthesisComponent]:
    out = []
    for w, piece in split_laurent(L):
        s = headroom_scale(_laurent_sup(piece))
        scaled = s * piece
        K = complementary_poly(scaled)
        prog = find_gqsp_angles(scaled, K)
        prog.scale = float(s)
        out.append(SynthesisComponent(w, prog))
    return out
