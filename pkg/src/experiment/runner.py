"""
Randomized trial runner.
Draws compressed Gorenstein pairs, classifies their intersections and tallies
the outcomes against the closed-form predictions.
"""

import hashlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from algebra.apolarity import Type2Pair, random_type2_pair
from algebra.graded_ideal import compute_a, compute_b
from algebra.koszul import TorClass, tor_algebra
from algebra.linalg_gf import FieldPrime
from config import get_config
from errors import GenericityError, ParameterRangeError
from theory.predictor import (
    allowed_classes,
    check_socle_pair,
    generic_class,
    initial_degree,
    type2_hilbert,
)
from utils.console import status, warn


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one random trial for the socle pair (s1, s)."""

    seed: int
    index: int
    s1: int
    s: int
    p: int
    attempts: int = 0
    h: Tuple[int, ...] = ()
    t: int = 0
    m: int = 0
    generator_degrees: Dict[int, int] = field(default_factory=dict)
    parameters: Tuple[int, int, int] = (0, 0, 0)
    tor_class: Optional[TorClass] = None
    socle: str = ""
    a: int = 0
    b: int = 0
    compressed: Tuple[bool, bool, bool] = (False, False, False)
    matches_generic: bool = False
    allowed: bool = False
    failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        """True when the trial produced a classified intersection."""
        return self.failure is None

    @property
    def fully_compressed(self) -> bool:
        """Both Gorenstein factors and the intersection are compressed."""
        return self.ok and all(self.compressed)

    @property
    def outcome(self) -> Tuple[TorClass, int]:
        """The observed (class, m) pair."""
        return self.tor_class, self.m

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready view of the trial."""
        return {
            "seed": self.seed,
            "index": self.index,
            "s1": self.s1,
            "s": self.s,
            "p": self.p,
            "attempts": self.attempts,
            "h": list(self.h),
            "t": self.t,
            "m": self.m,
            "generator_degrees": {str(d): n for d, n in sorted(self.generator_degrees.items())},
            "parameters": list(self.parameters),
            "class": str(self.tor_class) if self.tor_class else None,
            "socle": self.socle,
            "a": self.a,
            "b": self.b,
            "compressed": list(self.compressed),
            "matches_generic": self.matches_generic,
            "allowed": self.allowed,
            "failure": self.failure,
        }


def trial_seed(seed: int, s1: int, s: int, index: int) -> int:
    """Derive an independent 64-bit seed for one trial."""
    digest = hashlib.sha256(f"{seed}:{s1}:{s}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def valid_pairs(max_s: int) -> List[Tuple[int, int]]:
    """All (s1, s) with 2 <= s1 <= s <= max_s and s < 2*s1, ordered by s then s1."""
    return [(s1, s) for s in range(2, max_s + 1) for s1 in range(s // 2 + 1, s + 1)]


def run_trial(
    s1: int,
    s: int,
    p: int,
    seed: int,
    index: int = 0,
    retry_cap: Optional[int] = None,
) -> TrialRecord:
    """Generate one pair, classify R = Q/(I1 ∩ I2) and compare with the predictions.

    A genericity failure is recorded in the returned record instead of raised.
    """
    check_socle_pair(s1, s)
    cap = get_config().retry_cap if retry_cap is None else retry_cap
    field_ = FieldPrime(p)
    derived = trial_seed(seed, s1, s, index)
    rng = np.random.default_rng(derived)

    try:
        pair = random_type2_pair(s1, s, field_, rng, retry_cap=cap, require_compressed=False)
    except GenericityError as e:
        warn(f"Trial {index} for ({s1}, {s}) over {field_}: {e}")
        return TrialRecord(derived, index, s1, s, p, attempts=e.attempts, failure=str(e))
    return record_pair(pair, derived, index)


def record_pair(pair: Type2Pair, seed: int, index: int = 0) -> TrialRecord:
    """Classify the intersection of a drawn pair and check it against the predictions."""
    s1 = pair.i1.socle_degree()
    s = pair.i2.socle_degree()
    ideal = pair.intersection
    tor = tor_algebra(ideal)
    m = tor.generator_count()
    predicted, _ = generic_class(s1, s)
    return TrialRecord(
        seed=seed,
        index=index,
        s1=s1,
        s=s,
        p=ideal.field.p,
        attempts=pair.attempts,
        h=ideal.hilbert(),
        t=ideal.initial_degree(),
        m=m,
        generator_degrees=ideal.minimal_generator_degrees(),
        parameters=tor.parameters,
        tor_class=tor.tor_class,
        socle=str(ideal.socle_polynomial()),
        a=compute_a(pair.i1, pair.i2),
        b=compute_b(pair.i1, pair.i2),
        # The Gorenstein draws are compressed by construction
        compressed=(True, True, pair.compressed),
        matches_generic=tor.tor_class == predicted,
        allowed=tor.tor_class in allowed_classes(s1, s, m),
    )


@dataclass
class TallyRow:
    """Aggregated outcomes of the trials for one socle pair (s1, s)."""

    s1: int
    s: int
    p: int
    trials: int
    counts: Counter = field(default_factory=Counter)
    non_compressed: int = 0
    failures: int = 0
    predicted_class: Optional[TorClass] = None
    predicted_m: int = 0
    h: Tuple[int, ...] = ()
    t: int = 0
    records: List[TrialRecord] = field(default_factory=list, repr=False)

    @classmethod
    def from_records(cls, s1: int, s: int, p: int, records: List[TrialRecord]) -> "TallyRow":
        """Tally a list of trial records for one socle pair."""
        predicted, m = generic_class(s1, s)
        h = type2_hilbert(s1, s)
        row = cls(s1, s, p, len(records), predicted_class=predicted, predicted_m=m, h=h, t=initial_degree(h))
        for record in records:
            if not record.ok:
                row.failures += 1
            elif not record.fully_compressed:
                row.non_compressed += 1
            else:
                row.counts[record.outcome] += 1
        row.records = list(records)
        return row

    def _ranked(self) -> List[Tuple[TorClass, int]]:
        return [
            outcome
            for outcome, _ in sorted(
                self.counts.items(), key=lambda item: (-item[1], item[0][1], str(item[0][0]))
            )
        ]

    @property
    def modal(self) -> Optional[Tuple[TorClass, int]]:
        """Most frequent (class, m); ties go to smaller m, then the class label."""
        ranked = self._ranked()
        return ranked[0] if ranked else None

    @property
    def modal_class(self) -> Optional[TorClass]:
        """Class of the modal outcome, if any trial succeeded."""
        return self.modal[0] if self.modal else None

    @property
    def modal_m(self) -> Optional[int]:
        """Generator count of the modal outcome."""
        return self.modal[1] if self.modal else None

    @property
    def other_observed(self) -> List[Tuple[TorClass, int]]:
        """Every observed (class, m) other than the modal one, ordered by m then class."""
        return sorted(self._ranked()[1:], key=lambda outcome: (outcome[1], str(outcome[0])))

    @property
    def agree(self) -> bool:
        """Whether the modal outcome equals the predicted generic class and m."""
        return self.modal == (self.predicted_class, self.predicted_m)

    @property
    def successful(self) -> int:
        """Number of classified, compressed trials."""
        return sum(self.counts.values())


def run_trials(
    s1: int,
    s: int,
    p: Optional[int] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    retry_cap: Optional[int] = None,
) -> TallyRow:
    """Run n independent trials for (s1, s) and tally the outcomes.

    Output is independent of the worker count: every trial owns its generator
    and the records come back in trial order.
    """
    config = get_config()
    p = config.default_prime if p is None else p
    n = config.default_trials if n is None else n
    seed = config.default_seed if seed is None else seed
    workers = config.workers if workers is None else workers

    check_socle_pair(s1, s)
    if n < 1:
        raise ParameterRangeError(f"At least one trial is needed, got n = {n}")
    if workers < 1:
        raise ParameterRangeError(f"At least one worker is needed, got {workers}")

    status(f"🎲 ({s1}, {s}): {n} trials over GF({p}), seed {seed}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        records = list(
            pool.map(lambda index: run_trial(s1, s, p, seed, index, retry_cap), range(n))
        )

    row = TallyRow.from_records(s1, s, p, records)
    if row.modal:
        mark = "✅" if row.agree else "⚠️ "
        status(f"{mark} ({s1}, {s}): modal {row.modal_class} with m = {row.modal_m}")
    else:
        warn(f"({s1}, {s}): no compressed trial out of {n}")
    return row


def reproduce_table1(
    max_s: int,
    p: Optional[int] = None,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> List[TallyRow]:
    """One tally row per valid socle pair with s <= max_s."""
    cap = get_config().max_socle_degree
    if max_s < 2:
        raise ParameterRangeError(f"max_s must be at least 2, got {max_s}")
    if max_s > cap:
        raise ParameterRangeError(f"max_s = {max_s} exceeds the configured cap {cap} (TORCLASS_MAX_S)")
    return [run_trials(s1, s, p, n, seed, workers) for s1, s in valid_pairs(max_s)]
