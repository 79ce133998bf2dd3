"""Seeded sampling of point sets and permutations, and tail-probability estimates."""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from enum import Enum
from statistics import NormalDist
from typing import List, Optional, Tuple

from .errors import UpsetError
from .geometry import LATTICE_BITS, Point
from .permutations import Permutation, lds, lis, perm_of, theorem_threshold, union_bound

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
Z95 = NormalDist().inv_cdf(0.975)


class Mode(str, Enum):
    POINTS = "points"
    PERMUTATION = "perm"


def splitmix64(x: int) -> int:
    """The SplitMix64 finalizer applied to ``x`` (mod 2**64)."""
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial_index: int) -> int:
    """Seed of trial ``t``: splitmix64(master_seed + (t + 1) * golden gamma mod 2**64)."""
    return splitmix64((master_seed + (trial_index + 1) * _GOLDEN) & _MASK64)


def sample_point_set(m: int, seed: int) -> List[Point]:
    """``m`` uniform lattice points with pairwise distinct x and distinct y.

    A point whose x or y collides with an earlier point is redrawn.
    """
    if m < 1:
        raise UpsetError(f"need m >= 1, got {m}")
    bits = random.Random(seed).getrandbits
    xs, ys, pts = set(), set(), []
    while len(pts) < m:
        x, y = bits(LATTICE_BITS), bits(LATTICE_BITS)
        if x in xs or y in ys:
            continue
        xs.add(x)
        ys.add(y)
        pts.append(Point(x, y))
    return pts


def sample_permutation(m: int, seed: int) -> Permutation:
    """Uniform permutation of 1..m via a Fisher-Yates shuffle.

    ``random.shuffle`` draws indices with rejection sampling, so there is no
    modulo bias.
    """
    if m < 1:
        raise UpsetError(f"need m >= 1, got {m}")
    values = list(range(1, m + 1))
    random.Random(seed).shuffle(values)
    return Permutation._trusted(values)


@dataclass(frozen=True)
class TrialConfig:
    m: int
    ell: int
    trials: int
    master_seed: int
    mode: Mode = Mode.POINTS

    def __post_init__(self):
        if self.trials < 1 or self.m < 1 or self.ell < 1:
            raise UpsetError(f"invalid trial config {self}")
        object.__setattr__(self, "mode", Mode(self.mode))


def wilson_interval(hits: int, trials: int, z: float = Z95) -> Tuple[float, float]:
    p = hits / trials
    z2 = z * z
    denom = 1 + z2 / trials
    centre = (p + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / denom
    # clamp so that lo <= p <= hi survives rounding at p in {0, 1}
    return max(0.0, min(centre - half, p)), min(1.0, max(centre + half, p))


@dataclass
class McReport:
    config: TrialConfig
    hits: int
    trials: int
    empirical_p: float
    wilson95: Tuple[float, float]
    bounds: dict
    mean_longest: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["config"]["mode"] = self.config.mode.value
        d["wilson95"] = list(self.wilson95)
        return d


def _longest_in_trial(m: int, mode: Mode, seed: int) -> int:
    if mode is Mode.POINTS:
        p = perm_of(sample_point_set(m, seed))
    else:
        p = sample_permutation(m, seed)
    return max(lis(p), lds(p))


def _run_chunk(args) -> Tuple[int, int]:
    m, ell, mode, master_seed, start, stop = args
    hits = total = 0
    for t in range(start, stop):
        longest = _longest_in_trial(m, mode, trial_seed(master_seed, t))
        total += longest
        if longest >= ell:
            hits += 1
    return hits, total


def _bounds(m: int, ell: int) -> dict:
    claim = 2.0 * 4.0 ** (-ell) if ell >= 2 * math.e * math.sqrt(m) else None
    return {"union": float(union_bound(m, ell)), "claim3": claim}


def run_trials(cfg: TrialConfig, workers: int = 1, chunk: int = 20000) -> McReport:
    """Count trials whose longest monotone subsequence reaches ``cfg.ell``.

    Trial ``t`` uses ``trial_seed(master_seed, t)`` only, so the report does
    not depend on ``workers``; chunk tallies are merged by summation.
    """
    jobs = [
        (cfg.m, cfg.ell, cfg.mode, cfg.master_seed, s, min(s + chunk, cfg.trials))
        for s in range(0, cfg.trials, chunk)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    hits = sum(h for h, _ in parts)
    total = sum(t for _, t in parts)
    return McReport(
        config=cfg,
        hits=hits,
        trials=cfg.trials,
        empirical_p=hits / cfg.trials,
        wilson95=wilson_interval(hits, cfg.trials),
        bounds=_bounds(cfg.m, cfg.ell),
        mean_longest=total / cfg.trials,
    )


@dataclass
class Theorem1Report:
    n: int
    m: int
    ell: int
    vacuous: bool
    tail: float
    report: Optional[McReport] = None
    certificate_rate: Optional[float] = None

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "m": self.m,
            "ell": self.ell,
            "vacuous": self.vacuous,
            "certificate_rate": self.certificate_rate,
        }
        if self.report is not None:
            out.update(self.report.to_json())
        else:
            out.update({"hits": 0, "trials": 0, "empirical_p": None, "wilson95": None,
                        "bounds": {"union": None, "claim3": None}})
        out["bounds"]["tail"] = self.tail
        return out


def theorem1_experiment(
    n: int,
    trials: int,
    master_seed: int,
    m: Optional[int] = None,
    ell: Optional[int] = None,
    workers: int = 1,
) -> Theorem1Report:
    """Sample point sets at the theorem's threshold and count certified ones.

    ``m`` and ``ell`` default to the threshold point count and ``n // 12``;
    overriding them gives the demo regime.  A trial is certified exactly when
    it is not a hit, so ``certificate_rate = 1 - empirical_p``.
    """
    if n < 12:
        raise UpsetError(f"need n >= 12, got {n}")
    th = theorem_threshold(n)
    m = th.m_max if m is None else m
    ell = n // 12 if ell is None else ell
    tail = float(th.tail)
    if m == 0:
        return Theorem1Report(n, 0, ell, True, tail)
    rep = run_trials(TrialConfig(m, ell, trials, master_seed, Mode.POINTS), workers=workers)
    return Theorem1Report(n, m, ell, False, tail, rep, 1 - rep.empirical_p)
