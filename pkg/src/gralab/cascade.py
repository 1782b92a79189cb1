"""Gated two-photon cascade source: Monte Carlo and the analytic ratio.

A first-photon detection opens a counting gate of width w.  The paired
second photon reaches the splitter with probability f(w) while unrelated
cascades contribute Poisson accidentals at rate N, so the normalized
coincidence ratio interpolates between 0 (isolated gates) and 1 (dense
accidentals) along alpha(Nw) = (2 f Nw + (Nw)^2) / (f + Nw)^2.  The
simulation counts gate-level detection indicators exactly as a counter
rack would, with whole photons routed to one arm or the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .fock import BeamSplitter

_CHUNK = 65536


class ConfigError(ValueError):
    """The run configuration is inconsistent or unusable."""


class InsufficientCounts(ValueError):
    """Too few counts to form the requested estimate."""


@dataclass(frozen=True)
class CascadeConfig:
    """Source, gate, and detection parameters for one run.

    decay_rate is the total cascade rate N (1/s).  The gate defaults to
    twice the intermediate-state lifetime.  correlation_factor a >= 1
    scales the paired-photon arrival probability f = a (1 - e^(-w/tau));
    epsilon_1 collects first photons (it sets the gate rate), epsilon_t
    and epsilon_r are the arm detection efficiencies applied on top of
    the splitter probabilities.  accidental_collection thins unrelated
    photons before the splitter; zero isolates the gates completely.
    Exactly one stopping rule applies: run_time (seconds of source time)
    or target_gates.
    """

    decay_rate: float
    lifetime: float = 4.7e-9
    gate: float | None = None
    correlation_factor: float = 1.0
    epsilon_1: float = 0.1
    epsilon_t: float = 0.05
    epsilon_r: float = 0.05
    bs: BeamSplitter = field(default_factory=BeamSplitter.balanced)
    accidental_collection: float = 1.0
    arrival_mode: str = "analytic"
    run_time: float | None = None
    target_gates: int | None = None
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.gate is None:
            object.__setattr__(self, "gate", 2.0 * self.lifetime)
        if self.decay_rate <= 0.0:
            raise ConfigError("decay rate must be positive")
        if self.lifetime <= 0.0 or self.gate <= 0.0:
            raise ConfigError("lifetime and gate width must be positive")
        if self.correlation_factor < 1.0:
            raise ConfigError("correlation factor must be at least 1")
        if f_omega(self) > 1.0 + 1e-12:
            raise ConfigError("arrival probability a (1 - e^(-w/tau)) exceeds 1")
        for name in ("epsilon_1", "epsilon_t", "epsilon_r", "accidental_collection"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1]")
        if self.arrival_mode not in ("analytic", "physical"):
            raise ConfigError("arrival mode must be 'analytic' or 'physical'")
        if (self.run_time is None) == (self.target_gates is None):
            raise ConfigError("set exactly one of run_time and target_gates")
        if self.target_gates is not None and self.target_gates <= 0:
            raise ConfigError("target gate count must be positive")
        if self.run_time is not None:
            if self.decay_rate * self.epsilon_1 * self.run_time < 1.0:
                raise ConfigError("run time too short for even one expected gate")
        if self.rng_seed < 0:
            raise ConfigError("rng seed must be nonnegative")


def f_omega(cfg: CascadeConfig) -> float:
    """Paired-photon arrival probability a (1 - e^(-w/tau))."""
    return cfg.correlation_factor * (1.0 - math.exp(-cfg.gate / cfg.lifetime))


def correlation_for_f(f_target: float, lifetime: float = 4.7e-9, gate: float | None = None) -> float:
    """Correlation factor that realizes a requested arrival probability."""
    if gate is None:
        gate = 2.0 * lifetime
    base = 1.0 - math.exp(-gate / lifetime)
    a = f_target / base
    if a < 1.0:
        raise ConfigError(f"arrival probability {f_target} needs a < 1 (base {base:.6f})")
    return a


def g2_analytic(n_omega: float, f: float) -> float:
    """Gate-level coincidence ratio (2 f Nw + (Nw)^2) / (f + Nw)^2.

    Vanishing-efficiency limit of the counting model: exactly 0 at Nw = 0
    and approaching 1 as accidentals dominate.
    """
    if n_omega < 0.0:
        raise ValueError("Nw must be nonnegative")
    if not 0.0 < f <= 1.0:
        raise ValueError("arrival probability must lie in (0, 1]")
    return (2.0 * f * n_omega + n_omega**2) / (f + n_omega) ** 2


@dataclass(frozen=True)
class CountRecord:
    """Gate-level counter totals from one run."""

    n1_counts: int
    nt_counts: int
    nr_counts: int
    nc_counts: int
    total_gates: int
    trigger_arrivals: int
    elapsed_sim_time: float

    def __post_init__(self) -> None:
        if self.total_gates != self.n1_counts:
            raise ValueError("every first-photon detection opens exactly one gate")
        counts = (self.nt_counts, self.nr_counts, self.nc_counts, self.trigger_arrivals)
        if any(c < 0 or c > self.n1_counts for c in counts):
            raise ValueError("per-gate indicators cannot exceed the gate count")
        if self.nc_counts > min(self.nt_counts, self.nr_counts):
            raise ValueError("coincidences cannot exceed either singles count")


def simulate(cfg: CascadeConfig) -> CountRecord:
    """Run the gated counting experiment and return the counter totals.

    Per gate: the paired photon arrives with probability f(w) (drawn from
    the exponential delay in 'physical' mode), accidental photons arrive
    Poisson with mean N w and survive collection thinning, and each photon
    at the splitter is routed whole to the transmitted arm (t^2 eps_t),
    the reflected arm (r^2 eps_r), or lost.  Counters record per-gate
    indicators.  Deterministic for a fixed configuration.
    """
    f = f_omega(cfg)
    lam = cfg.decay_rate * cfg.gate
    p_short = 1.0 - math.exp(-cfg.gate / cfg.lifetime)
    a = cfg.correlation_factor
    p_t_det = cfg.bs.t**2 * cfg.epsilon_t
    p_r_det = cfg.bs.r**2 * cfg.epsilon_r
    p_r_rem = p_r_det / (1.0 - p_t_det) if p_t_det < 1.0 else 0.0
    wait_scale = 1.0 / (cfg.decay_rate * cfg.epsilon_1)

    root = np.random.SeedSequence(cfg.rng_seed)
    n1 = nt = nr = nc = arrivals = 0
    elapsed = 0.0
    remaining = cfg.target_gates

    while True:
        if remaining is not None:
            if remaining <= 0:
                break
            g = min(_CHUNK, remaining)
        else:
            g = _CHUNK
        rng = np.random.Generator(np.random.PCG64(root.spawn(1)[0]))

        waits = rng.exponential(wait_scale, g)
        if remaining is None:
            t_cum = elapsed + np.cumsum(waits + cfg.gate)
            fit = int(np.searchsorted(t_cum, cfg.run_time, side="right"))
            if fit == 0:
                break
            g = fit
            waits = waits[:g]

        if cfg.arrival_mode == "analytic":
            arrived = rng.random(g) < f
        else:
            arrived = rng.exponential(cfg.lifetime, g) < cfg.gate
            if a > 1.0 and p_short < 1.0:
                promote = rng.random(g) < (a - 1.0) * p_short / (1.0 - p_short)
                arrived = arrived | (~arrived & promote)

        accidental = rng.poisson(lam, g)
        if cfg.accidental_collection == 0.0:
            accidental = np.zeros(g, dtype=np.int64)
        elif cfg.accidental_collection < 1.0:
            accidental = rng.binomial(accidental, cfg.accidental_collection)

        at_splitter = arrived.astype(np.int64) + accidental
        d_t = rng.binomial(at_splitter, p_t_det)
        d_r = rng.binomial(at_splitter - d_t, p_r_rem)

        hit_t = d_t >= 1
        hit_r = d_r >= 1
        n1 += g
        nt += int(hit_t.sum())
        nr += int(hit_r.sum())
        nc += int((hit_t & hit_r).sum())
        arrivals += int(arrived.sum())
        elapsed += float(waits.sum()) + g * cfg.gate

        if remaining is not None:
            remaining -= g
        elif g < _CHUNK:
            break

    return CountRecord(
        n1_counts=n1,
        nt_counts=nt,
        nr_counts=nr,
        nc_counts=nc,
        total_gates=n1,
        trigger_arrivals=arrivals,
        elapsed_sim_time=elapsed,
    )


def measured_alpha(rec: CountRecord, rate_normalization: float = 1.0) -> float:
    """Coincidence ratio estimate n1 nc / (nt nr) from raw counts.

    The gate and accidental time factors cancel in the count ratio, so the
    normalization defaults to one; a different value simply scales the
    result.
    """
    if rec.nt_counts == 0 or rec.nr_counts == 0:
        raise InsufficientCounts("need at least one count in each arm")
    return rate_normalization * rec.n1_counts * rec.nc_counts / (rec.nt_counts * rec.nr_counts)


def alpha_stderr(rec: CountRecord) -> float:
    """Delta-method standard error of the measured ratio.

    Propagates the binomial variances and covariances of the three
    per-gate indicators through the log of the count ratio.  A zero
    coincidence total is floored at one count inside the variance so
    an all-null run still reports a finite scale.
    """
    if rec.nt_counts == 0 or rec.nr_counts == 0:
        raise InsufficientCounts("need at least one count in each arm")
    g = rec.total_gates
    p_t = rec.nt_counts / g
    p_r = rec.nr_counts / g
    p_c = max(rec.nc_counts, 1) / g
    var_log = (
        (1.0 - p_c) / p_c
        - (1.0 - p_t) / p_t
        - (1.0 - p_r) / p_r
        + 2.0 * p_c / (p_t * p_r)
        - 2.0
    ) / g
    var_log = max(var_log, 0.0)
    alpha_floor = g * max(rec.nc_counts, 1) / (rec.nt_counts * rec.nr_counts)
    return alpha_floor * math.sqrt(var_log)


@dataclass(frozen=True)
class SweepPoint:
    """One point of a measured-versus-analytic ratio curve."""

    n_omega: float
    alpha_mc: float
    alpha_analytic: float
    stderr: float
    gates: int


def sweep_curve(template: CascadeConfig, n_omega_values) -> list[SweepPoint]:
    """Run the simulation across source rates set by Nw values.

    Each point reuses the template with decay_rate = Nw / w and its own
    child seed, so the whole sweep is deterministic in the template seed.
    A zero Nw point is realized exactly by switching off accidental
    collection, which makes the measured ratio structurally zero.
    """
    values = [float(x) for x in n_omega_values]
    if any(x < 0.0 for x in values):
        raise ConfigError("Nw values must be nonnegative")
    f = f_omega(template)
    seeds = np.random.SeedSequence(template.rng_seed).generate_state(
        max(len(values), 1), dtype=np.uint64
    )
    points = []
    for x, seed in zip(values, seeds):
        if x == 0.0:
            cfg = replace(template, accidental_collection=0.0, rng_seed=int(seed))
        else:
            cfg = replace(template, decay_rate=x / template.gate, rng_seed=int(seed))
        rec = simulate(cfg)
        points.append(
            SweepPoint(
                n_omega=x,
                alpha_mc=measured_alpha(rec),
                alpha_analytic=g2_analytic(x, f),
                stderr=alpha_stderr(rec),
                gates=rec.total_gates,
            )
        )
    return points
