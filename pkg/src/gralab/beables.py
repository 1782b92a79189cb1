"""Causal field-mode dynamics behind the splitter and the interferometer.

Two excited traveling-wave coordinates evolve under coupled first-order
equations of motion driven by the field's guiding wave.  From the mode
coordinates the module evaluates the local vector-potential, electric,
magnetic, and intensity beables at spacetime points, in the divided region
(two independent beams) and the recombined region (beams remixed with a
relative phase phi), together with the field quantum potential, the mode
wave-equation residual, and the conserved energy.

Natural units: hbar and c default to 1 and every quantity is expressed in
them; the wavenumber of the excited pair sets the frequency scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class SingularDenominator(ValueError):
    """The guiding denominator q_a - i q_b vanished; the motion is undefined."""


class StepTooLarge(ValueError):
    """Requested integration step cannot resolve the fastest rotation."""


class NodeError(ValueError):
    """The wavefunction modulus vanishes here; no quantum potential exists."""


class EmptyCurve(ValueError):
    """A visibility needs at least one sample."""


_XHAT = np.array([1.0, 0.0, 0.0])
_YHAT = np.array([0.0, 1.0, 0.0])
_ZHAT = np.array([0.0, 0.0, 1.0])


@dataclass
class ModePair:
    """Two excited traveling-wave coordinates with their geometry.

    amp_a and amp_b are the constant moduli of the starting coordinates,
    phase_a and phase_b their initial phases.  The wave vectors must share
    one magnitude (a single optical frequency feeds both beams) and each
    polarization must be a unit vector transverse to its wave vector.
    Defaults place beam a along x, beam b along y, both polarized along z,
    with unit wavenumber.
    """

    amp_a: float
    amp_b: float
    phase_a: float = 0.0
    phase_b: float = 0.0
    k_a: np.ndarray | None = None
    k_b: np.ndarray | None = None
    pol_a: np.ndarray | None = None
    pol_b: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.amp_a <= 0.0 or self.amp_b <= 0.0:
            raise ValueError("mode amplitudes must be positive")
        self.k_a = np.array(_XHAT if self.k_a is None else self.k_a, dtype=float)
        self.k_b = np.array(_YHAT if self.k_b is None else self.k_b, dtype=float)
        self.pol_a = np.array(_ZHAT if self.pol_a is None else self.pol_a, dtype=float)
        self.pol_b = np.array(_ZHAT if self.pol_b is None else self.pol_b, dtype=float)
        for name in ("k_a", "k_b", "pol_a", "pol_b"):
            if getattr(self, name).shape != (3,):
                raise ValueError(f"{name} must be a 3-vector")
        ka, kb = np.linalg.norm(self.k_a), np.linalg.norm(self.k_b)
        if abs(ka - kb) > 1e-12 * max(ka, kb, 1.0):
            raise ValueError("wave vectors must share one magnitude")
        if ka == 0.0:
            raise ValueError("wave vectors must be nonzero")
        for pol, k in ((self.pol_a, self.k_a), (self.pol_b, self.k_b)):
            if abs(np.linalg.norm(pol) - 1.0) > 1e-9:
                raise ValueError("polarizations must be unit vectors")
            if abs(float(np.dot(pol, k))) > 1e-9 * ka:
                raise ValueError("polarizations must be transverse to their wave vectors")

    @property
    def k0(self) -> float:
        return float(np.linalg.norm(self.k_a))

    @classmethod
    def single_frequency(
        cls, amp: float, phase_b: float = 0.0, k0: float = 1.0
    ) -> "ModePair":
        """Equal-amplitude pair with a quarter-cycle phase offset.

        On this manifold both coordinates rotate rigidly at one frequency
        and keep their moduli; it is the regime the closed single-frequency
        solution describes exactly.
        """
        return cls(
            amp_a=amp,
            amp_b=amp,
            phase_a=phase_b + math.pi / 2.0,
            phase_b=phase_b,
            k_a=k0 * _XHAT,
            k_b=k0 * _YHAT,
        )


def mode_frequencies(pair: ModePair, hbar: float = 1.0, c: float = 1.0) -> tuple[float, float]:
    """Nonclassical rotation frequencies hbar c^2 / (4 amp^2) per mode."""
    return (
        hbar * c**2 / (4.0 * pair.amp_a**2),
        hbar * c**2 / (4.0 * pair.amp_b**2),
    )


def region2_frequencies(
    pair: ModePair, phi: float, hbar: float = 1.0, c: float = 1.0
) -> tuple[float, float]:
    """Recombined-beam frequencies, modulated by the interferometer phase.

    The c beam carries weight 1 + cos(phi) and the d beam 1 - cos(phi), so
    an extinguished beam also stops rotating.
    """
    mc = 1.0 + math.cos(phi)
    md = 1.0 - math.cos(phi)
    return (
        hbar * c**2 * mc / (4.0 * pair.amp_a**2),
        hbar * c**2 * md / (4.0 * pair.amp_b**2),
    )


def region1_equations_of_motion(
    q_a: complex, q_b: complex, hbar: float = 1.0, c: float = 1.0
) -> tuple[complex, complex]:
    """Starred-coordinate velocities (dq_a*/dt, dq_b*/dt).

    Both coordinates are driven by the shared denominator q_a - i q_b:
    dq_a*/dt = (hbar c^2 / 2) i / (q_a - i q_b) and dq_b*/dt the same
    without the i.  Raises SingularDenominator on the ray where the
    denominator vanishes.
    """
    denom = q_a - 1j * q_b
    scale = max(1.0, abs(q_a), abs(q_b))
    if abs(denom) < 1e-12 * scale:
        raise SingularDenominator("q_a - i q_b vanished")
    common = 0.5 * hbar * c**2 / denom
    return 1j * common, common


def analytic_region1(pair: ModePair, times, hbar: float = 1.0, c: float = 1.0):
    """Closed-form starred coordinates (q_a*(t), q_b*(t)) for any start.

    The combination w* = q_a* + i q_b* rotates rigidly at hbar c^2 / |w|^2
    while the orthogonal combination stays fixed, so each coordinate moves
    on a circle about an offset center.  Vectorized over times.
    """
    t = np.asarray(times, dtype=float)
    a0 = pair.amp_a * np.exp(1j * pair.phase_a)
    b0 = pair.amp_b * np.exp(1j * pair.phase_b)
    w0 = a0 + 1j * b0
    h2 = abs(w0) ** 2
    if h2 < 1e-24:
        raise SingularDenominator("q_a - i q_b vanishes at the start")
    omega = hbar * c**2 / h2
    turn = np.exp(1j * omega * t) - 1.0
    return a0 + 0.5 * w0 * turn, b0 - 0.5j * w0 * turn


def is_single_frequency(pair: ModePair, tol: float = 1e-9) -> bool:
    """True when the pair sits on the rigid-rotation manifold.

    Requires equal amplitudes and a phase offset of a quarter cycle,
    phase_a - phase_b = pi/2 (mod 2 pi).
    """
    if abs(pair.amp_a - pair.amp_b) > tol * max(pair.amp_a, pair.amp_b):
        return False
    d = (pair.phase_a - pair.phase_b - math.pi / 2.0) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d) <= tol


def single_frequency_solution(pair: ModePair, times, hbar: float = 1.0, c: float = 1.0):
    """Rigid-rotation solution q*(t) = amp e^(i (omega t + phase)).

    Valid only on the single-frequency manifold; elsewhere the coupled
    motion is an offset circle and this form does not solve it.
    """
    if not is_single_frequency(pair):
        raise ValueError("pair is off the single-frequency manifold")
    t = np.asarray(times, dtype=float)
    omega, _ = mode_frequencies(pair, hbar, c)
    return (
        pair.amp_a * np.exp(1j * (omega * t + pair.phase_a)),
        pair.amp_b * np.exp(1j * (omega * t + pair.phase_b)),
    )


@dataclass
class ModeTrajectory:
    """Sampled mode coordinates q_a(t), q_b(t) with their frequencies."""

    pair: ModePair
    region: str
    phi: float | None
    times: np.ndarray
    q_a: np.ndarray
    q_b: np.ndarray
    omega_a: float
    omega_b: float

    def __post_init__(self) -> None:
        if self.region not in ("I", "II"):
            raise ValueError("region must be 'I' or 'II'")
        if self.region == "II" and self.phi is None:
            raise ValueError("recombined-region trajectories need a phase phi")
        self.times = np.asarray(self.times, dtype=float)
        self.q_a = np.asarray(self.q_a, dtype=complex)
        self.q_b = np.asarray(self.q_b, dtype=complex)
        if not (len(self.times) == len(self.q_a) == len(self.q_b)):
            raise ValueError("times and coordinate samples must align")


def integrate_region1(
    pair: ModePair,
    t_end: float,
    dt: float | None = None,
    hbar: float = 1.0,
    c: float = 1.0,
) -> ModeTrajectory:
    """Integrate the coupled equations of motion with fixed-step RK4.

    The default step resolves the fastest of the mode frequencies and the
    rigid-rotation frequency with a thousand steps per cycle; explicit
    steps coarser than an eighth of that cycle raise StepTooLarge.
    """
    if t_end < 0.0:
        raise ValueError("end time must be nonnegative")
    omega_a, omega_b = mode_frequencies(pair, hbar, c)
    a0 = pair.amp_a * np.exp(1j * pair.phase_a)
    b0 = pair.amp_b * np.exp(1j * pair.phase_b)
    w0 = a0 + 1j * b0
    if abs(w0) ** 2 < 1e-24:
        raise SingularDenominator("q_a - i q_b vanishes at the start")
    omega_turn = hbar * c**2 / abs(w0) ** 2
    fastest = max(omega_a, omega_b, omega_turn)
    cycle = 2.0 * math.pi / fastest
    if dt is None:
        dt = cycle / 1000.0
    if dt <= 0.0:
        raise ValueError("step must be positive")
    if dt > cycle / 8.0:
        raise StepTooLarge(f"step {dt:.3e} exceeds an eighth of the fastest cycle {cycle:.3e}")

    def deriv(y: np.ndarray) -> np.ndarray:
        da, db = region1_equations_of_motion(np.conj(y[0]), np.conj(y[1]), hbar, c)
        return np.array([da, db])

    if t_end == 0.0:
        times = np.array([0.0])
        starred = np.array([[a0, b0]])
    else:
        n = max(1, math.ceil(t_end / dt))
        h = t_end / n
        times = np.linspace(0.0, t_end, n + 1)
        starred = np.empty((n + 1, 2), dtype=complex)
        y = np.array([a0, b0])
        starred[0] = y
        for i in range(n):
            k1 = deriv(y)
            k2 = deriv(y + 0.5 * h * k1)
            k3 = deriv(y + 0.5 * h * k2)
            k4 = deriv(y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            starred[i + 1] = y

    return ModeTrajectory(
        pair=pair,
        region="I",
        phi=None,
        times=times,
        q_a=np.conj(starred[:, 0]),
        q_b=np.conj(starred[:, 1]),
        omega_a=omega_a,
        omega_b=omega_b,
    )


def fitted_frequency(trajectory: ModeTrajectory) -> float:
    """Rotation frequency of q_a from a least-squares fit to its phase.

    Meaningful for rigid rotations, where the unwrapped phase is linear
    in time; offset-circle motion has no single frequency to fit.
    """
    if len(trajectory.times) < 2:
        raise ValueError("need at least two samples to fit a frequency")
    phases = np.unwrap(np.angle(trajectory.q_a))
    slope = np.polyfit(trajectory.times, phases, 1)[0]
    return float(abs(slope))


@dataclass
class VacuumModes:
    """Unexcited mode coordinates entering the beables as background noise.

    Each row represents one +k member of a +-k pair (the -k partner is the
    conjugate coordinate, already folded into the sums), so every mode
    contributes a real standing-wave term.  Unexcited coordinates do not
    move, so the fields they source are static.
    """

    k_vectors: np.ndarray
    pols: np.ndarray
    coords: np.ndarray

    def __post_init__(self) -> None:
        self.k_vectors = np.atleast_2d(np.asarray(self.k_vectors, dtype=float))
        self.pols = np.atleast_2d(np.asarray(self.pols, dtype=float))
        self.coords = np.atleast_1d(np.asarray(self.coords, dtype=complex))
        m = len(self.coords)
        if self.k_vectors.shape != (m, 3) or self.pols.shape != (m, 3):
            raise ValueError("need one wave vector and one polarization per coordinate")
        norms = np.linalg.norm(self.k_vectors, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("vacuum wave vectors must be nonzero")
        if np.any(np.abs(np.linalg.norm(self.pols, axis=1) - 1.0) > 1e-9):
            raise ValueError("vacuum polarizations must be unit vectors")
        if np.any(np.abs(np.sum(self.k_vectors * self.pols, axis=1)) > 1e-9 * norms):
            raise ValueError("vacuum polarizations must be transverse")

    @classmethod
    def sample_ground_state(
        cls,
        k_vectors,
        pols,
        rng: np.random.Generator,
        hbar: float = 1.0,
        c: float = 1.0,
    ) -> "VacuumModes":
        """Draw coordinates from the ground-state modulus squared.

        Each complex coordinate is Gaussian with per-quadrature variance
        hbar c / (4 |k|).
        """
        k_vectors = np.atleast_2d(np.asarray(k_vectors, dtype=float))
        std = np.sqrt(hbar * c / (4.0 * np.linalg.norm(k_vectors, axis=1)))
        coords = std * (rng.standard_normal(len(std)) + 1j * rng.standard_normal(len(std)))
        return cls(k_vectors=k_vectors, pols=pols, coords=coords)

    def _im_waves(self, x: np.ndarray) -> np.ndarray:
        return np.imag(self.coords * np.exp(1j * (self.k_vectors @ x)))

    def u(self, x: np.ndarray) -> np.ndarray:
        """Vector-potential background sum(pol 2 Re(q e^(i k.x)))."""
        re = np.real(self.coords * np.exp(1j * (self.k_vectors @ x)))
        return (self.pols * (2.0 * re)[:, None]).sum(axis=0)

    def v(self, x: np.ndarray) -> np.ndarray:
        """Magnetic background, the curl of u."""
        kxe = np.cross(self.k_vectors, self.pols)
        return (kxe * (-2.0 * self._im_waves(x))[:, None]).sum(axis=0)

    def f(
        self,
        x: np.ndarray,
        reference_pol: np.ndarray,
        hbar: float = 1.0,
        c: float = 1.0,
    ) -> np.ndarray:
        """Intensity cross-term vector built against a reference polarization."""
        vecs = np.cross(reference_pol, np.cross(self.k_vectors, self.pols))
        return (vecs * (-2.0 * hbar * c**2 * self._im_waves(x))[:, None]).sum(axis=0)


@dataclass
class BeableFrame:
    """Local field beables at one spacetime point."""

    x: np.ndarray
    t: float
    vector_potential: np.ndarray
    electric_field: np.ndarray
    magnetic_field: np.ndarray
    intensity: np.ndarray


def _background(pair, x, vacuum, reference_pol, hbar, c):
    if vacuum is None:
        zero = np.zeros(3)
        return zero, zero, zero
    ref = pair.pol_a if reference_pol is None else np.asarray(reference_pol, dtype=float)
    return vacuum.u(x), vacuum.v(x), vacuum.f(x, ref, hbar, c)


def beables_region1(
    pair: ModePair,
    x,
    t: float,
    volume: float = 1.0,
    vacuum: VacuumModes | None = None,
    reference_pol=None,
    hbar: float = 1.0,
    c: float = 1.0,
) -> BeableFrame:
    """Field beables in the divided region, two beams plus background.

    The electric field scales inversely with each amplitude because the
    mode frequency does; with the frequency law hbar c^2 / (4 amp^2) the
    frame satisfies E = -(1/c) dA/dt and B = curl A identically.
    """
    x = np.asarray(x, dtype=float)
    if volume <= 0.0:
        raise ValueError("quantization volume must be positive")
    omega_a, omega_b = mode_frequencies(pair, hbar, c)
    th_a = float(np.dot(pair.k_a, x)) - omega_a * t - pair.phase_a
    th_b = float(np.dot(pair.k_b, x)) - omega_b * t - pair.phase_b
    u, v, f_vac = _background(pair, x, vacuum, reference_pol, hbar, c)
    rv = math.sqrt(volume)

    a_field = (2.0 / rv) * (
        pair.pol_a * pair.amp_a * math.cos(th_a) + pair.pol_b * pair.amp_b * math.cos(th_b)
    ) + u / rv
    e_field = (-hbar * c / (2.0 * rv)) * (
        pair.pol_a / pair.amp_a * math.sin(th_a) + pair.pol_b / pair.amp_b * math.sin(th_b)
    )
    b_field = (-2.0 / rv) * (
        np.cross(pair.k_a, pair.pol_a) * pair.amp_a * math.sin(th_a)
        + np.cross(pair.k_b, pair.pol_b) * pair.amp_b * math.sin(th_b)
    ) + v / rv
    g = math.sin(th_a) + math.sin(th_b)
    intensity = (hbar * c**2 / (2.0 * volume)) * (
        pair.k_a + pair.k_b - pair.k_a * math.cos(2.0 * th_a) - pair.k_b * math.cos(2.0 * th_b)
    ) - f_vac * g / volume
    return BeableFrame(x, t, a_field, e_field, b_field, intensity)


def beables_region2(
    pair: ModePair,
    phi: float,
    x,
    t: float,
    volume: float = 1.0,
    vacuum: VacuumModes | None = None,
    reference_pol=None,
    hbar: float = 1.0,
    c: float = 1.0,
) -> BeableFrame:
    """Field beables in the recombined region at interferometer phase phi.

    Each output beam keeps its full vector-potential amplitude while its
    electric field and intensity carry the interference weight 1 +- cos(phi),
    consistent with the phase-modulated frequencies: at phi = 0 the d beam
    freezes and stops transporting energy, at phi = pi the c beam does.
    """
    x = np.asarray(x, dtype=float)
    if volume <= 0.0:
        raise ValueError("quantization volume must be positive")
    mc = 1.0 + math.cos(phi)
    md = 1.0 - math.cos(phi)
    omega_c, omega_d = region2_frequencies(pair, phi, hbar, c)
    th_c = float(np.dot(pair.k_a, x)) - omega_c * t - pair.phase_a
    th_d = float(np.dot(pair.k_b, x)) - omega_d * t - pair.phase_b
    u, v, f_vac = _background(pair, x, vacuum, reference_pol, hbar, c)
    rv = math.sqrt(volume)

    a_field = (2.0 / rv) * (
        pair.pol_a * pair.amp_a * math.cos(th_c) + pair.pol_b * pair.amp_b * math.cos(th_d)
    ) + u / rv
    e_field = (-hbar * c / (2.0 * rv)) * (
        pair.pol_a / pair.amp_a * mc * math.sin(th_c)
        + pair.pol_b / pair.amp_b * md * math.sin(th_d)
    )
    b_field = (-2.0 / rv) * (
        np.cross(pair.k_a, pair.pol_a) * pair.amp_a * math.sin(th_c)
        + np.cross(pair.k_b, pair.pol_b) * pair.amp_b * math.sin(th_d)
    ) + v / rv
    g = mc * math.sin(th_c) + md * math.sin(th_d)
    intensity = (hbar * c**2 / (2.0 * volume)) * (
        pair.k_a * mc
        + pair.k_b * md
        - pair.k_a * mc * math.cos(2.0 * th_c)
        + pair.k_b * md * math.cos(2.0 * th_d)
    ) - (f_vac / volume) * g / volume
    return BeableFrame(x, t, a_field, e_field, b_field, intensity)


def average_intensity_region1(
    pair: ModePair, volume: float = 1.0, hbar: float = 1.0, c: float = 1.0
) -> np.ndarray:
    """Cycle-averaged intensity vector (hbar c^2 / 2V)(k_a + k_b)."""
    return hbar * c**2 / (2.0 * volume) * (pair.k_a + pair.k_b)


def average_intensity_region2(
    pair: ModePair, phi: float, volume: float = 1.0, hbar: float = 1.0, c: float = 1.0
) -> np.ndarray:
    """Cycle-averaged recombined intensity, amplitude-independent.

    The oscillatory and background cross terms average to zero, leaving
    (hbar c^2 / 2V)(k_c (1 + cos phi) + k_d (1 - cos phi)).
    """
    mc = 1.0 + math.cos(phi)
    md = 1.0 - math.cos(phi)
    return hbar * c**2 / (2.0 * volume) * (pair.k_a * mc + pair.k_b * md)


def beam_magnitudes_region2(
    pair: ModePair, phi: float, volume: float = 1.0, hbar: float = 1.0, c: float = 1.0
) -> tuple[float, float]:
    """Averaged intensity magnitude carried along each output beam."""
    mc = 1.0 + math.cos(phi)
    md = 1.0 - math.cos(phi)
    scale = hbar * c**2 / (2.0 * volume)
    return (
        scale * float(np.linalg.norm(pair.k_a)) * mc,
        scale * float(np.linalg.norm(pair.k_b)) * md,
    )


def beam_intensity_curves(
    pair: ModePair, phis, volume: float = 1.0, hbar: float = 1.0, c: float = 1.0
) -> tuple[np.ndarray, np.ndarray]:
    """Averaged per-beam intensities across a phase sweep."""
    pairs = [beam_magnitudes_region2(pair, float(p), volume, hbar, c) for p in phis]
    if not pairs:
        return np.array([]), np.array([])
    i_c, i_d = zip(*pairs)
    return np.array(i_c), np.array(i_d)


def visibility(curve) -> float:
    """Fringe visibility (max - min) / (max + min) of an intensity curve.

    A constant curve has zero visibility; a curve reaching zero has unit
    visibility.  Raises EmptyCurve for no samples and rejects negative
    intensities.
    """
    arr = np.asarray(curve, dtype=float)
    if arr.size == 0:
        raise EmptyCurve("visibility needs at least one sample")
    if np.any(arr < 0.0):
        raise ValueError("intensities must be nonnegative")
    hi = float(arr.max())
    lo = float(arr.min())
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


@dataclass
class ModulusEvaluator:
    """Wavefunction modulus R(q_a, q_b) with per-coordinate mode weights.

    Each traveling-wave coordinate has a conjugate partner at -k whose
    contribution to mode sums duplicates its own, so physical two-beam
    states carry weight 2 per coordinate; a standalone single-coordinate
    state carries weight 1.  The weights multiply each coordinate's term
    in the curvature sum of the quantum potential.
    """

    fn: Callable[[complex, complex], float]
    weights: tuple[float, float] = (2.0, 2.0)


def region1_modulus(pair: ModePair, hbar: float = 1.0, c: float = 1.0) -> ModulusEvaluator:
    """Modulus of the divided-region single-excitation state.

    R = |q_a - i q_b| exp(-(k0 / hbar c)(|q_a|^2 + |q_b|^2)) over the two
    excited coordinates, each weighted twice for its -k partner.
    """
    lam = pair.k0 / (hbar * c)

    def fn(q_a: complex, q_b: complex) -> float:
        rho2 = abs(q_a) ** 2 + abs(q_b) ** 2
        return abs(q_a - 1j * q_b) * math.exp(-lam * rho2)

    return ModulusEvaluator(fn=fn, weights=(2.0, 2.0))


def single_mode_ground_state(kappa: float, hbar: float = 1.0, c: float = 1.0) -> ModulusEvaluator:
    """Ground-state modulus exp(-(kappa / hbar c)|q|^2) of one coordinate."""
    if kappa <= 0.0:
        raise ValueError("wavenumber must be positive")
    lam = kappa / (hbar * c)

    def fn(q_a: complex, q_b: complex) -> float:
        return math.exp(-lam * abs(q_a) ** 2)

    return ModulusEvaluator(fn=fn, weights=(1.0, 0.0))


def quantum_potential(
    state: ModulusEvaluator,
    q_a: complex,
    q_b: complex,
    hbar: float = 1.0,
    c: float = 1.0,
    step: float = 1e-5,
    node_tol: float = 1e-12,
) -> float:
    """Field quantum potential -(hbar^2 c^2 / 2 R) sum_i w_i d2R/dq_i* dq_i.

    The mixed derivative is a quarter of the flat Laplacian over the real
    and imaginary parts of each coordinate, evaluated by central finite
    differences with a relative step.  Raises NodeError where the modulus
    vanishes.
    """
    r0 = state.fn(q_a, q_b)
    if not math.isfinite(r0) or r0 <= node_tol:
        raise NodeError("modulus vanishes; quantum potential undefined")
    q = [complex(q_a), complex(q_b)]
    curvature = 0.0
    for idx, w in enumerate(state.weights):
        if w == 0.0:
            continue
        h = step * max(1.0, abs(q[idx]))
        samples = 0.0
        for delta in (h, -h, 1j * h, -1j * h):
            shifted = list(q)
            shifted[idx] = q[idx] + delta
            samples += state.fn(shifted[0], shifted[1])
        lap = (samples - 4.0 * r0) / h**2
        curvature += w * lap / 4.0
    return -(hbar**2 * c**2 / 2.0) * curvature / r0


def wave_equation_residual(
    pair: ModePair,
    t: float,
    hbar: float = 1.0,
    c: float = 1.0,
    inner_step: float = 1e-4,
    outer_step: float = 3e-3,
) -> float:
    """Relative residual of the mode wave equation along a trajectory.

    Checks (1/c^2) d2q*/dt2 + k0^2 q* + dQ/dq = 0 at the closed-form
    trajectory point for time t, with the quantum-potential gradient taken
    by nested finite differences (inner step inside Q, wider outer step
    for the gradient so the noise stays below the reported scale).
    """
    qa_star, qb_star = analytic_region1(pair, t, hbar, c)
    qa_star = complex(qa_star)
    qb_star = complex(qb_star)
    q_a = np.conj(qa_star)
    q_b = np.conj(qb_star)
    w = q_a - 1j * q_b
    denom = w**2 * np.conj(w)
    d2_a = -(hbar**2 * c**4 / 2.0) / denom
    d2_b = (1j * hbar**2 * c**4 / 2.0) / denom

    state = region1_modulus(pair, hbar, c)

    def grad(idx: int) -> complex:
        base = q_a if idx == 0 else q_b
        h = outer_step * max(1.0, abs(base))

        def q_at(delta: complex) -> float:
            args = [q_a, q_b]
            args[idx] = base + delta
            return quantum_potential(state, args[0], args[1], hbar, c, step=inner_step)

        d_re = (q_at(h) - q_at(-h)) / (2.0 * h)
        d_im = (q_at(1j * h) - q_at(-1j * h)) / (2.0 * h)
        return 0.5 * (d_re - 1j * d_im)

    k2 = pair.k0**2
    res_a = d2_a / c**2 + k2 * qa_star + grad(0)
    res_b = d2_b / c**2 + k2 * qb_star + grad(1)
    scale = max(
        abs(d2_a) / c**2,
        abs(d2_b) / c**2,
        k2 * abs(qa_star),
        k2 * abs(qb_star),
        1e-30,
    )
    return float(math.hypot(abs(res_a), abs(res_b)) / scale)


def classical_wave_residual(q0: complex, kappa: float, t: float, c: float = 1.0) -> float:
    """Residual of the free mode oscillation q*(t) = q*(0) e^(i kappa c t).

    Without the quantum potential the mode equation is a bare oscillator;
    its exponential solution satisfies it to rounding.
    """
    q_star = q0 * np.exp(1j * kappa * c * t)
    d2 = -((kappa * c) ** 2) * q_star
    return float(abs(d2 / c**2 + kappa**2 * q_star))


def total_energy(
    pair: ModePair,
    t: float = 0.0,
    hbar: float = 1.0,
    c: float = 1.0,
    step: float = 1e-5,
) -> float:
    """Kinetic plus oscillator plus quantum-potential energy at time t.

    Each coordinate contributes w (|dq*/dt|^2 / 2c^2 + k0^2 |q|^2 / 2)
    with its mode weight; adding the quantum potential makes the total a
    constant of the motion for every trajectory of the coupled equations.
    """
    qa_star, qb_star = analytic_region1(pair, t, hbar, c)
    q_a = complex(np.conj(qa_star))
    q_b = complex(np.conj(qb_star))
    da, db = region1_equations_of_motion(q_a, q_b, hbar, c)
    state = region1_modulus(pair, hbar, c)
    weights = state.weights
    k2 = pair.k0**2
    kinetic = (abs(da) ** 2 * weights[0] + abs(db) ** 2 * weights[1]) / (2.0 * c**2)
    oscillator = k2 * (abs(q_a) ** 2 * weights[0] + abs(q_b) ** 2 * weights[1]) / 2.0
    return kinetic + oscillator + quantum_potential(state, q_a, q_b, hbar, c, step=step)


def _frame_consistency(build, x, t: float, c: float, dt: float, dx: float, e_floor: float, b_floor: float):
    # Errors are measured against the field envelopes so points where a
    # component passes through zero do not blow up the relative error.
    frame = build(x, t)
    a_plus = build(x, t + dt).vector_potential
    a_minus = build(x, t - dt).vector_potential
    e_fd = -(a_plus - a_minus) / (2.0 * dt * c)
    e_scale = max(float(np.linalg.norm(frame.electric_field)), e_floor, 1e-30)
    e_err = float(np.linalg.norm(e_fd - frame.electric_field)) / e_scale

    partial = np.empty((3, 3))
    for j in range(3):
        shift = np.zeros(3)
        shift[j] = dx
        partial[j] = (
            build(x + shift, t).vector_potential - build(x - shift, t).vector_potential
        ) / (2.0 * dx)
    curl = np.array(
        [
            partial[1][2] - partial[2][1],
            partial[2][0] - partial[0][2],
            partial[0][1] - partial[1][0],
        ]
    )
    b_scale = max(float(np.linalg.norm(frame.magnetic_field)), b_floor, 1e-30)
    b_err = float(np.linalg.norm(curl - frame.magnetic_field)) / b_scale
    return e_err, b_err


def frame_consistency_region1(
    pair: ModePair,
    x,
    t: float,
    volume: float = 1.0,
    vacuum: VacuumModes | None = None,
    hbar: float = 1.0,
    c: float = 1.0,
    dt: float = 1e-5,
    dx: float = 1e-5,
) -> tuple[float, float]:
    """Relative errors of (E vs -(1/c) dA/dt, B vs curl A) in the divided region."""
    x = np.asarray(x, dtype=float)
    rv = math.sqrt(volume)
    e_floor = hbar * c / (2.0 * rv) * (1.0 / pair.amp_a + 1.0 / pair.amp_b)
    b_floor = 2.0 * pair.k0 * (pair.amp_a + pair.amp_b) / rv

    def build(xx, tt):
        return beables_region1(pair, xx, tt, volume, vacuum, None, hbar, c)

    return _frame_consistency(build, x, t, c, dt, dx, e_floor, b_floor)


def frame_consistency_region2(
    pair: ModePair,
    phi: float,
    x,
    t: float,
    volume: float = 1.0,
    vacuum: VacuumModes | None = None,
    hbar: float = 1.0,
    c: float = 1.0,
    dt: float = 1e-5,
    dx: float = 1e-5,
) -> tuple[float, float]:
    """Relative errors of (E vs -(1/c) dA/dt, B vs curl A) in the recombined region."""
    x = np.asarray(x, dtype=float)
    rv = math.sqrt(volume)
    mc = 1.0 + math.cos(phi)
    md = 1.0 - math.cos(phi)
    e_floor = hbar * c / (2.0 * rv) * (mc / pair.amp_a + md / pair.amp_b)
    b_floor = 2.0 * pair.k0 * (pair.amp_a + pair.amp_b) / rv

    def build(xx, tt):
        return beables_region2(pair, phi, xx, tt, volume, vacuum, None, hbar, c)

    return _frame_consistency(build, x, t, c, dt, dx, e_floor, b_floor)
