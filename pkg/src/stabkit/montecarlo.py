"""Code-cycle Monte Carlo: logical-error-rate estimation, sweeps over
physical rates and threshold-crossing scans.

Determinism contract: trial i draws from a stream seeded by
``derive_seed(point_seed, i)`` and per-point seeds derive from the master
seed, so a report is bit-identical for a fixed master seed no matter how
trials are chunked over workers.  Failure counts are plain sums, so
aggregation order cannot matter either.
"""

from __future__ import annotations

import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .code_library import surface_code
from .decoders import DecoderError, MwpmDecoder
from .noise import NoiseModel, derive_seed, iid_x, iid_xz, depolarizing, sample
from .pauli import PauliOperator, multiply
from .stabilizer_code import ResidualClass, StabilizerCode, Syndrome

_Z95 = 1.959963984540054


@dataclass(frozen=True)
class CycleOutcome:
    error: PauliOperator
    syndrome: Syndrome
    recovery: PauliOperator
    residual: ResidualClass | None
    success: bool
    decoder_failed: bool = False
    discarded: bool = False


@dataclass(frozen=True)
class RatePoint:
    p: float
    trials: int
    failures: int
    p_l: float
    ci_low: float
    ci_high: float
    seed: int
    discarded: int = 0
    decoder_failures: int = 0


@dataclass
class SimulationReport:
    code: str
    decoder: str
    noise: str
    master_seed: int
    points: list[RatePoint]
    wall_time_s: float = 0.0
    version: str = field(default_factory=lambda: f"stabkit-{__version__}")

    def to_csv(self) -> str:
        lines = ["p,trials,failures,p_L,ci_low,ci_high"]
        for pt in self.points:
            lines.append(
                f"{pt.p!r},{pt.trials},{pt.failures},{pt.p_l!r},{pt.ci_low!r},{pt.ci_high!r}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "code": self.code,
                "decoder": self.decoder,
                "noise": self.noise,
                "master_seed": self.master_seed,
                "version": self.version,
                "wall_time_s": self.wall_time_s,
                "points": [vars(pt) | {} for pt in self.points],
            },
            indent=2,
            sort_keys=True,
        )


def wilson_interval(failures: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval; well behaved at the low counts of sub-threshold runs."""
    if trials == 0:
        return 0.0, 1.0
    phat = failures / trials
    denom = 1.0 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4 * trials**2)) / denom
    low = 0.0 if failures == 0 else max(0.0, centre - half)
    high = 1.0 if failures == trials else min(1.0, centre + half)
    return low, high


def classify_cycle(code: StabilizerCode, decoder, error: PauliOperator) -> CycleOutcome:
    """Syndrome, recovery and residual classification for a known error."""
    s = code.syndrome(error)
    if decoder is None:
        recovery = PauliOperator(code.n, 0, 0)
    else:
        try:
            recovery = decoder.decode(s)
        except DecoderError:
            return CycleOutcome(error, s, PauliOperator(code.n, 0, 0), None, False, True)
    residual = multiply(recovery, error)
    rc = code.residual_class(residual)
    return CycleOutcome(error, s, recovery, rc, rc.success)


def run_cycle(code: StabilizerCode, decoder, noise: NoiseModel, rng: random.Random) -> CycleOutcome:
    """One full code cycle: sample error, extract syndrome, decode, classify."""
    return classify_cycle(code, decoder, sample(noise, code.n, rng))


def _run_trials(args) -> tuple[int, int, int, int]:
    code, decoder, noise, point_seed, start, stop, post_select = args
    failures = kept = discarded = decoder_failures = 0
    n = code.n
    decode_value = getattr(decoder, "decode_value", None)
    if decode_value is None and decoder is not None:
        decode_value = lambda v: decoder.decode(Syndrome.from_int(v, code.m))  # noqa: E731
    for trial in range(start, stop):
        rng = random.Random(derive_seed(point_seed, trial))
        error = sample(noise, n, rng)
        s_value = code.syndrome_value(error)
        if post_select:
            # Repeat-until-success: nonzero syndromes are discarded, and the
            # zero-syndrome recovery is the identity, so the residual is the
            # error itself.
            if s_value != 0:
                discarded += 1
            else:
                kept += 1
                if not code.residual_class(error).success:
                    failures += 1
            continue
        kept += 1
        try:
            recovery = decode_value(s_value)
        except DecoderError:
            decoder_failures += 1
            failures += 1
            continue
        # Success iff the residual sits in the stabilizer group (membership
        # implies the zero syndrome, so no second syndrome pass is needed).
        residual = multiply(recovery, error)
        if not code.in_stabilizer_group(residual):
            failures += 1
    return failures, kept, discarded, decoder_failures


def estimate_logical_rate(
    code: StabilizerCode,
    decoder,
    noise: NoiseModel,
    trials: int,
    master_seed: int,
    post_select: bool = False,
    workers: int = 1,
) -> RatePoint:
    """failures/kept with a 95% Wilson interval.

    Post-selected mode (detection codes) discards nonzero-syndrome trials
    and reports them in `discarded`; `trials` in the returned point is then
    the kept count.  A decoder failure counts as a logical failure and is
    also tallied in `decoder_failures`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if decoder is None and not post_select:
        raise ValueError("a decoder is required unless running post-selected")
    chunks = _chunk_ranges(trials, workers)
    args = [(code, decoder, noise, master_seed, a, b, post_select) for a, b in chunks]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trials, args))
    else:
        results = [_run_trials(a) for a in args]
    failures = sum(r[0] for r in results)
    kept = sum(r[1] for r in results)
    discarded = sum(r[2] for r in results)
    decoder_failures = sum(r[3] for r in results)
    p_l = failures / kept if kept else 0.0
    low, high = wilson_interval(failures, kept) if kept else (0.0, 1.0)
    return RatePoint(
        p=noise.headline_rate,
        trials=kept,
        failures=failures,
        p_l=p_l,
        ci_low=low,
        ci_high=high,
        seed=master_seed,
        discarded=discarded,
        decoder_failures=decoder_failures,
    )


def _chunk_ranges(trials: int, workers: int) -> list[tuple[int, int]]:
    pieces = max(1, workers) * 4 if workers > 1 else 1
    size = max(1, math.ceil(trials / pieces))
    return [(a, min(a + size, trials)) for a in range(0, trials, size)]


def _noise_for(kind: str, p: float) -> NoiseModel:
    if kind == "iid_x":
        return iid_x(p)
    if kind == "iid_xz":
        return iid_xz(p, p)
    if kind == "depolarizing":
        return depolarizing(p)
    raise ValueError(f"unknown noise kind {kind!r}")


def sweep(
    code: StabilizerCode,
    decoder,
    noise_kind: str,
    p_values: list[float],
    trials: int,
    master_seed: int,
    post_select: bool = False,
    workers: int = 1,
) -> SimulationReport:
    """One RatePoint per p; the grid must be strictly increasing."""
    if not p_values:
        raise ValueError("empty p grid")
    if any(b <= a for a, b in zip(p_values, p_values[1:])):
        raise ValueError("p grid must be strictly increasing")
    start = time.perf_counter()
    points = []
    for index, p in enumerate(p_values):
        point_seed = derive_seed(master_seed, index)
        points.append(
            estimate_logical_rate(
                code,
                decoder,
                _noise_for(noise_kind, p),
                trials,
                point_seed,
                post_select=post_select,
                workers=workers,
            )
        )
    decoder_name = getattr(decoder, "name", type(decoder).__name__) if decoder else "none"
    return SimulationReport(
        code=code.name,
        decoder=decoder_name,
        noise=noise_kind,
        master_seed=master_seed,
        points=points,
        wall_time_s=time.perf_counter() - start,
    )


# --- threshold scan ----------------------------------------------------------


@dataclass(frozen=True)
class CrossingEstimate:
    lam_a: int
    lam_b: int
    p_cross: float
    sigma: float


@dataclass
class ThresholdScan:
    reports: dict[int, SimulationReport]
    crossings: list[CrossingEstimate]
    p_threshold: float
    sigma: float

    def to_csv(self) -> str:
        lines = ["code,p,trials,failures,p_L,ci_low,ci_high"]
        for lam in sorted(self.reports):
            rep = self.reports[lam]
            for pt in rep.points:
                lines.append(
                    f"{rep.code},{pt.p!r},{pt.trials},{pt.failures},"
                    f"{pt.p_l!r},{pt.ci_low!r},{pt.ci_high!r}"
                )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "reports": {str(l): json.loads(r.to_json()) for l, r in self.reports.items()},
                "crossings": [vars(c) | {} for c in self.crossings],
                "p_threshold": self.p_threshold,
                "sigma": self.sigma,
            },
            indent=2,
            sort_keys=True,
        )


def _log_rate(pt: RatePoint) -> tuple[float, float]:
    """log p_L with its standard error; zero-failure points get a 0.5 floor."""
    failures = max(pt.failures, 0.5)
    p = failures / pt.trials
    sigma = math.sqrt(p * (1.0 - p) / pt.trials) / p
    return math.log(p), sigma


def threshold_scan(
    distances: list[int],
    p_values: list[float],
    trials: int,
    master_seed: int,
    workers: int = 1,
    defect_cap: int = 16,
) -> ThresholdScan:
    """Sweep surface codes of the given distances with MWPM under
    independent X/Z noise, then estimate the threshold as the mean of the
    pairwise crossings of the logical-rate curves (log-linear interpolation
    between adjacent grid points).
    """
    if len(distances) < 2:
        raise ValueError("need at least two distances to locate a crossing")
    reports: dict[int, SimulationReport] = {}
    for lam in distances:
        code = surface_code(lam)
        decoder = MwpmDecoder(code, defect_cap=defect_cap)
        reports[lam] = sweep(
            code,
            decoder,
            "iid_xz",
            p_values,
            trials,
            derive_seed(master_seed, lam),
            workers=workers,
        )
    crossings = []
    for i, lam_a in enumerate(distances):
        for lam_b in distances[i + 1 :]:
            cross = _pair_crossing(reports[lam_a], reports[lam_b], lam_a, lam_b)
            if cross is not None:
                crossings.append(cross)
    if not crossings:
        raise ValueError("no crossing in range: the p grid never reverses the curve order")
    p_th = sum(c.p_cross for c in crossings) / len(crossings)
    sigma = math.sqrt(sum(c.sigma**2 for c in crossings)) / len(crossings)
    return ThresholdScan(reports=reports, crossings=crossings, p_threshold=p_th, sigma=sigma)


def _pair_crossing(
    rep_a: SimulationReport, rep_b: SimulationReport, lam_a: int, lam_b: int
) -> CrossingEstimate | None:
    """First sign change of log p_L(a) - log p_L(b) along the grid."""
    deltas = []
    for pa, pb in zip(rep_a.points, rep_b.points):
        (la, sa), (lb, sb) = _log_rate(pa), _log_rate(pb)
        deltas.append((pa.p, la - lb, math.hypot(sa, sb)))
    for (p0, d0, u0), (p1, d1, u1) in zip(deltas, deltas[1:]):
        if d0 == 0.0:
            denom = abs(d1 - d0) or 1.0
            return CrossingEstimate(lam_a, lam_b, p0, u0 * (p1 - p0) / denom)
        if (d0 > 0.0) != (d1 > 0.0):
            h = p1 - p0
            denom = d0 - d1
            p_cross = p0 + h * d0 / denom
            dda = h * (-d1) / denom**2
            ddb = h * d0 / denom**2
            sigma = math.hypot(dda * u0, ddb * u1)
            return CrossingEstimate(lam_a, lam_b, p_cross, sigma)
    return None
