"""Exhaustive and statistical determinacy experiments on Z/nZ.

Covers three kinds of evidence: exhaustive k-deck sweeps over all 0/1
subsets (grouped by an exact deck fingerprint and split into translation
orbits), the Grunbaum-Moore style pair of non-translate sets with equal
3-decks, and a survey of how often indicator spectra vanish somewhere.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
import time
from fractions import Fraction
from typing import Optional

import numpy as np

from .config import compute_budget
from .cyclic import (CyclicFunction, _deck_int64, deck_equal,
                     equal_up_to_translation, k_deck)
from .cyclotomic import cyclotomic, poly_trim
from .errors import BudgetError, DomainError, TrideckError

_WILSON_Z = 1.959963984540054  # two-sided 95%


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % d for d in range(2, int(math.isqrt(m)) + 1))


def _canonical_mask(mask: int, n: int) -> int:
    best = mask
    full = (1 << n) - 1
    for _ in range(n - 1):
        mask = ((mask << 1) | (mask >> (n - 1))) & full
        if mask < best:
            best = mask
    return best


def _mask_to_subset(mask: int, n: int) -> tuple[int, ...]:
    return tuple(j for j in range(n) if mask >> j & 1)


@dataclasses.dataclass(frozen=True)
class DeterminacyReport:
    n: int
    k: int
    total_sets: int
    ambiguous_classes: tuple[tuple[tuple[int, ...], ...], ...]
    runtime_stats: dict

    def to_json_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "total_sets": self.total_sets,
            "ambiguous_classes": [[list(s) for s in cls]
                                  for cls in self.ambiguous_classes],
            "runtime_stats": self.runtime_stats,
        }


def exhaustive_determinacy(n: int, k: int,
                           budget: Optional[int] = None) -> DeterminacyReport:
    """Group all 2^n subsets by exact k-deck, quotient by rotation, report
    every deck class containing two or more rotation orbits."""
    if n < 1 or k < 2:
        raise DomainError(f"need n >= 1 and k >= 2, got n={n}, k={k}")
    if 2**n * n ** (k - 1) > compute_budget(budget):
        raise BudgetError(
            f"2^{n} * {n}^{k - 1} subsets*deck exceeds the compute budget")
    t0 = time.monotonic()

    reps = sorted({_canonical_mask(m, n) for m in range(1 << n)})
    by_print: dict[bytes, list[int]] = {}
    for mask in reps:
        v = np.array([mask >> j & 1 for j in range(n)], dtype=np.int64)
        deck = _deck_int64(v, n, k)
        fp = hashlib.sha256(np.ascontiguousarray(deck).tobytes()).digest()
        by_print.setdefault(fp, []).append(mask)

    ambiguous = []
    for masks in by_print.values():
        if len(masks) < 2:
            continue
        # re-verify exactly: a hash collision must not fuse distinct decks
        subsets = [_mask_to_subset(m, n) for m in masks]
        decks = [k_deck(CyclicFunction.indicator(n, s), k) for s in subsets]
        groups: list[tuple[list[tuple[int, ...]], object]] = []
        for s, d in zip(subsets, decks):
            for members, ref in groups:
                if deck_equal(ref, d):
                    members.append(s)
                    break
            else:
                groups.append(([s], d))
        for members, _ in groups:
            if len(members) >= 2:
                ambiguous.append(tuple(sorted(members)))

    stats = {"seconds": round(time.monotonic() - t0, 3),
             "orbit_reps": len(reps), "deck_classes": len(by_print)}
    return DeterminacyReport(n, k, 1 << n, tuple(sorted(ambiguous)), stats)


@dataclasses.dataclass(frozen=True)
class CounterexamplePair:
    n: int
    E: frozenset[int]
    F: frozenset[int]
    provenance: dict

    def to_json_dict(self) -> dict:
        return {"n": self.n, "E": sorted(self.E), "F": sorted(self.F),
                "provenance": self.provenance}


def gm_counterexample(p: int, q: int, r: int) -> CounterexamplePair:
    """A pair of subsets of Z/pqrZ with exactly equal 3-decks that are not
    translates of one another (their 4-decks differ).

    Construction: an antipodal set E (one of x, x+n/2 per pair, so that
    E + n/2 is the complement of E) paired with its reflection -E.  The
    spectrum of an antipodal indicator lives on {0} and the odd
    frequencies; three odd indices cannot sum to 0 mod the even n, so every
    nonvanishing bispectrum entry is a real magnitude product, which makes
    the 3-deck reflection-invariant.  The smallest asymmetric choice (in a
    fixed enumeration order) whose 4-decks differ is returned, and all
    claimed properties are re-verified exactly; failure aborts.
    """
    if not (_is_prime(p) and _is_prime(q)) or p == q:
        raise DomainError(f"p={p}, q={q} must be distinct primes")
    if r < 3:
        raise DomainError(f"r must be >= 3, got {r}")
    n = p * q * r
    if n % 2:
        raise DomainError(
            f"n = {n} is odd; the antipodal construction needs an even "
            "modulus (one of p, q, r must be even)")
    m = n // 2
    for mask in range(1 << (m - 1)):
        E = frozenset({0} | {x + m * (mask >> (x - 1) & 1)
                             for x in range(1, m)})
        F = frozenset((-e) % n for e in E)
        fE = CyclicFunction.indicator(n, E)
        fF = CyclicFunction.indicator(n, F)
        if equal_up_to_translation(fE, fF) is not None:
            continue
        if not deck_equal(k_deck(fE, 3), k_deck(fF, 3)):
            raise TrideckError("antipodal pair decks differ; bug")
        if deck_equal(k_deck(fE, 4), k_deck(fF, 4)):
            continue  # want a finite witness of the non-translate status
        return CounterexamplePair(n, E, F, {"p": p, "q": q, "r": r,
                                            "construction": "antipodal",
                                            "mask": mask})
    raise TrideckError("no asymmetric antipodal set found; bug")


# ---------------------------------------------------------------------------
# Zero-proportion survey.

@dataclasses.dataclass(frozen=True)
class SurveyResult:
    n: int
    mode: str  # exhaustive | sampled
    samples: int
    hits: int
    proportion: float
    exact: Optional[Fraction]
    ci_low: float
    ci_high: float
    seed: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {"n": self.n, "mode": self.mode, "samples": self.samples,
                "hits": self.hits, "proportion": self.proportion,
                "exact": None if self.exact is None else str(self.exact),
                "ci": [self.ci_low, self.ci_high], "seed": self.seed}


def _wilson(hits: int, m: int) -> tuple[float, float]:
    z = _WILSON_Z
    phat = hits / m
    denom = 1 + z * z / m
    center = (phat + z * z / (2 * m)) / denom
    half = z * math.sqrt(phat * (1 - phat) / m + z * z / (4 * m * m)) / denom
    return max(center - half, 0.0), min(center + half, 1.0)


def _residue_matrices(n: int) -> list[np.ndarray]:
    """For each divisor d > 1 of n: the matrix of x^j mod Phi_d, so that
    bits @ M == 0 exactly when Phi_d | P_E."""
    mats = []
    for d in range(2, n + 1):
        if n % d:
            continue
        phi = list(cyclotomic(d))
        deg = len(phi) - 1
        M = np.zeros((n, deg), dtype=np.int64)
        row = [0] * deg
        row[0] = 1
        for j in range(n):
            M[j] = row
            # multiply by x modulo the monic Phi_d
            carry = row[-1]
            row = [0] + row[:-1]
            if carry:
                for i in range(deg):
                    row[i] -= carry * phi[i]
        mats.append(M)
    return mats


def _chunk_hits(bits: np.ndarray, mats: list[np.ndarray]) -> np.ndarray:
    has_zero = np.zeros(bits.shape[0], dtype=bool)
    for M in mats:
        res = bits @ M
        has_zero |= np.all(res == 0, axis=1)
    return has_zero


def survey_zero_proportion(n: int, samples: Optional[int] = None,
                           seed: int = 0,
                           mode: str = "auto") -> SurveyResult:
    """Proportion of subsets of Z/nZ whose indicator spectrum vanishes at
    some l != 0.  Exhaustive when 2^n <= 2^20, otherwise seeded sampling
    with a counter-based generator and a 95% Wilson interval."""
    if n < 1:
        raise DomainError(f"modulus must be >= 1, got {n}")
    if mode not in ("auto", "exhaustive", "sampled"):
        raise DomainError(f"unknown survey mode {mode!r}")
    mats = _residue_matrices(n)
    exhaustive = (mode == "exhaustive") or (mode == "auto" and 2**n <= 2**20)
    if exhaustive:
        if 2**n > 2**20:
            raise BudgetError(f"2^{n} subsets exceed the exhaustive limit")
        total = 1 << n
        hits = 0
        chunk = 1 << 14
        shifts = np.arange(n, dtype=np.uint64)
        for start in range(0, total, chunk):
            masks = np.arange(start, min(start + chunk, total),
                              dtype=np.uint64)
            bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.int64)
            hits += int(np.sum(_chunk_hits(bits, mats)))
        lo, hi = hits / total, hits / total
        return SurveyResult(n, "exhaustive", total, hits, hits / total,
                            Fraction(hits, total), lo, hi)
    if samples is None or samples < 1:
        raise DomainError("sampled mode needs samples >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    hits = 0
    done = 0
    while done < samples:
        m = min(samples - done, 1 << 14)
        bits = rng.integers(0, 2, size=(m, n), dtype=np.int64)
        hits += int(np.sum(_chunk_hits(bits, mats)))
        done += m
    lo, hi = _wilson(hits, samples)
    return SurveyResult(n, "sampled", samples, hits, hits / samples,
                        None, lo, hi, seed)


# ---------------------------------------------------------------------------
# All-k uniqueness probe.

@dataclasses.dataclass(frozen=True)
class AllKVerdict:
    n: int
    k_max: int
    first_differing_k: Optional[int]
    translate_shift: Optional[int]

    @property
    def decks_all_equal(self) -> bool:
        return self.first_differing_k is None

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k_max": self.k_max,
                "first_differing_k": self.first_differing_k,
                "translate_shift": self.translate_shift,
                "decks_all_equal": self.decks_all_equal}


def verify_all_k_uniqueness(f: CyclicFunction, g: CyclicFunction,
                            k_max: int,
                            budget: Optional[int] = None) -> AllKVerdict:
    """Smallest k in [2, k_max] at which the k-decks of f and g differ, or
    None if all agree; plus translate status.  A differing k is a finite
    witness that f, g are not translates."""
    if f.n != g.n:
        raise DomainError(f"moduli differ: {f.n} != {g.n}")
    if k_max < 2:
        raise DomainError(f"k_max must be >= 2, got {k_max}")
    first = None
    for k in range(2, k_max + 1):
        if not deck_equal(k_deck(f, k, budget), k_deck(g, k, budget)):
            first = k
            break
    return AllKVerdict(f.n, k_max, first, equal_up_to_translation(f, g))
