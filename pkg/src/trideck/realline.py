"""Sampled-grid 3-decks on R, cosine/Riesz counterexample pairs, the
indicator stability check and the correlation norm-inequality harness.

Quadrature is the left-endpoint Riemann sum everywhere; convergence is
established by refinement studies, not higher-order rules.
"""

from __future__ import annotations

import dataclasses
import struct
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .config import compute_budget
from .errors import BudgetError, DomainError, InvalidExponentsError
from .intervals import IntervalSet


@dataclasses.dataclass(frozen=True, eq=False)
class SampledFunction:
    """Nonnegative samples on a uniform grid; implicit zeros outside."""

    h: float
    origin: float
    values: np.ndarray

    def __post_init__(self):
        if self.h <= 0:
            raise DomainError("grid step must be positive")
        if np.any(self.values < 0):
            raise DomainError("sampled values must be nonnegative")

    def riemann(self, power: float = 1.0) -> float:
        return float(self.h * np.sum(self.values**power))

    def save_csv(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(f"{self.h!r},{self.origin!r},{len(self.values)}\n")
            for v in self.values:
                fh.write(f"{float(v)!r}\n")

    @classmethod
    def load_csv(cls, path: str) -> "SampledFunction":
        with open(path) as fh:
            h, origin, n = fh.readline().strip().split(",")
            vals = np.array([float(line) for line in fh], dtype=np.float64)
        if len(vals) != int(n):
            raise DomainError(f"expected {n} samples, got {len(vals)}")
        return cls(float(h), float(origin), vals)

    def save_binary(self, path: str) -> None:
        with open(path, "wb") as fh:
            fh.write(struct.pack("<ddq", self.h, self.origin,
                                 len(self.values)))
            fh.write(np.ascontiguousarray(self.values,
                                          dtype="<f8").tobytes())

    @classmethod
    def load_binary(cls, path: str) -> "SampledFunction":
        with open(path, "rb") as fh:
            h, origin, n = struct.unpack("<ddq", fh.read(24))
            vals = np.frombuffer(fh.read(), dtype="<f8")
        if len(vals) != n:
            raise DomainError(f"expected {n} samples, got {len(vals)}")
        return cls(h, origin, vals.astype(np.float64))


@dataclasses.dataclass(frozen=True, eq=False)
class GridDeck:
    """3-deck values N(x,y) at offsets (i*h, j*h), i,j in `offsets` (bins)."""

    h: float
    offsets: np.ndarray  # integer bin offsets, ascending
    values: np.ndarray  # shape (len(offsets), len(offsets))


def _shifted(values: np.ndarray, off: int) -> np.ndarray:
    out = np.zeros_like(values)
    if off >= 0:
        if off < len(values):
            out[: len(values) - off] = values[off:]
    else:
        if -off < len(values):
            out[-off:] = values[: len(values) + off]
    return out


def _shift_stack(values: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    S = np.zeros((len(offsets), len(values)))
    for a, off in enumerate(offsets):
        S[a] = _shifted(values, int(off))
    return S


def three_deck_grid(f: SampledFunction, max_offset: Optional[int] = None,
                    stride: int = 1, budget: Optional[int] = None) -> GridDeck:
    """Left-Riemann 3-deck N(i,j) = h * sum_t f_t f_{t+i} f_{t+j} on the
    zero-padded grid, at bin offsets |i|,|j| <= max_offset (default: the
    full support width)."""
    L = len(f.values)
    m = L - 1 if max_offset is None else int(max_offset)
    offsets = np.arange(-m, m + 1, stride)
    cost = len(offsets) ** 2 * L
    if cost > compute_budget(budget):
        raise BudgetError(f"grid deck cost {cost} exceeds budget")
    S = _shift_stack(f.values, offsets)
    N = f.h * ((S * f.values[None, :]) @ S.T)
    return GridDeck(f.h, offsets, N)


def three_deck_grid_fft(f: SampledFunction,
                        budget: Optional[int] = None) -> GridDeck:
    """Convolution-theorem fast path for the full deck; agrees with the
    direct sum to round-off."""
    L = len(f.values)
    M = 2 * L
    if M * M > compute_budget(budget):
        raise BudgetError(f"fft deck size {M * M} exceeds budget")
    fh = np.fft.ifft(f.values, M) * M  # positive-exponent transform
    l = np.arange(M)
    B = fh[:, None] * fh[None, :] * fh[(-(l[:, None] + l[None, :])) % M]
    N = np.real(np.fft.fft2(B)) / M**2 * f.h
    offsets = np.arange(-(L - 1), L)
    return GridDeck(f.h, offsets, N[np.ix_(offsets % M, offsets % M)])


def deck_at(f: SampledFunction, bins: Sequence[int]) -> float:
    """N_f at a single offset tuple (any deck order), bins in grid units."""
    prod = f.values.copy()
    for off in bins:
        prod *= _shifted(f.values, int(off))
    return float(f.h * np.sum(prod))


# ---------------------------------------------------------------------------
# Counterexample generators.

def _psi(x: np.ndarray) -> np.ndarray:
    """(sin(pi x / 2) / (pi x))^2 with the removable singularity psi(0)=1/4."""
    out = np.empty_like(x)
    nz = x != 0
    out[nz] = (np.sin(np.pi * x[nz] / 2) / (np.pi * x[nz])) ** 2
    out[~nz] = 0.25
    return out


def _grid(h: float, half_width: float) -> tuple[np.ndarray, float]:
    n = int(round(2 * half_width / h))
    x = -half_width + h * np.arange(n + 1)
    return x, -half_width


def _check_tail(half_width: float, tail_tol: float) -> None:
    # psi <= 1/(pi x)^2, sup of the trig factors is 2.
    bound = 4.0 / (np.pi**2 * half_width)
    if bound > tail_tol:
        raise DomainError(
            f"insufficient grid extent: truncated mass bound {bound:.3g} "
            f"exceeds {tail_tol:.3g}")


def cos_pair(k: int, h: float = 1 / 256, half_width: float = 64.0,
             tail_tol: float = 1e-2) -> tuple[SampledFunction,
                                              SampledFunction]:
    """The pair (1 +- cos((k+1) pi x)) psi(x): same k-deck, not translates."""
    if k < 3:
        raise DomainError(f"deck order must be >= 3, got {k}")
    _check_tail(half_width, tail_tol)
    x, origin = _grid(h, half_width)
    psi = _psi(x)
    c = np.cos((k + 1) * np.pi * x)
    return (SampledFunction(h, origin, (1 + c) * psi),
            SampledFunction(h, origin, (1 - c) * psi))


def riesz_pair(signs: Sequence[int], amplitudes: Sequence[float], k: int,
               h: float = 1 / 256, half_width: float = 64.0,
               tail_tol: float = 1e-2) -> tuple[SampledFunction,
                                                SampledFunction]:
    """Truncated Riesz products psi * prod(1 + a_i eps_i cos((k+1)^i pi x)).

    Returns the all-plus sign choice and the given sign choice; any flipped
    sign yields an equal k-deck without being a translate.
    """
    if k < 3:
        raise DomainError(f"deck order must be >= 3, got {k}")
    if len(signs) != len(amplitudes):
        raise DomainError("signs and amplitudes must have equal length")
    if any(s not in (-1, 1) for s in signs):
        raise DomainError("signs must be +-1")
    amps = [float(a) for a in amplitudes]
    if any(a <= 0 or a > 1 for a in amps) or any(
            b > a for a, b in zip(amps, amps[1:])):
        raise DomainError("amplitudes must be in (0,1] and nonincreasing")
    _check_tail(half_width, tail_tol)
    x, origin = _grid(h, half_width)
    psi = _psi(x)
    fvals, gvals = psi.copy(), psi.copy()
    for i, (eps, a) in enumerate(zip(signs, amps), start=1):
        c = a * np.cos((k + 1) ** i * np.pi * x)
        fvals *= 1 + c
        gvals *= 1 + eps * c
    return (SampledFunction(h, origin, fvals),
            SampledFunction(h, origin, gvals))


def shift_scan_distance(f: SampledFunction, g: SampledFunction) -> float:
    """min over integer-grid shifts (and half-bin offsets) of
    ||f - g(.-a)||_2 / ||f||_2; the non-translate certificate at grid scale."""
    fv, gv = f.values, g.values
    nf2, ng2 = float(np.dot(fv, fv)), float(np.dot(gv, gv))
    best = np.inf
    for gg in (gv, 0.5 * (gv[:-1] + gv[1:])):  # whole- and half-bin grids
        corr = np.correlate(fv, gg, mode="full")
        n2 = float(np.dot(gg, gg))
        d2 = nf2 + n2 - 2 * float(np.max(corr))
        best = min(best, max(d2, 0.0))
    return float(np.sqrt(best) / np.sqrt(nf2))


# ---------------------------------------------------------------------------
# Stability and appendix property checks.

@dataclasses.dataclass(frozen=True)
class StabilityReport:
    l1: float
    l2sq: float
    l3cubed: float
    cs_defect: float
    is_indicator_like: bool

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def indicator_stability_check(g: SampledFunction,
                              tol: float = 1e-6) -> StabilityReport:
    """Equality chain int g = int g^2 = int g^3 characterizes indicators;
    cs_defect = int g^2 - sqrt(int g * int g^3) <= 0 always."""
    l1 = g.riemann(1)
    l2sq = g.riemann(2)
    l3 = g.riemann(3)
    defect = l2sq - float(np.sqrt(l1 * l3))
    ok = abs(l1 - l2sq) <= tol and abs(defect) <= tol
    return StabilityReport(l1, l2sq, l3, defect, ok)


@dataclasses.dataclass(frozen=True)
class NormTestResult:
    lhs: float
    rhs: float
    holds: bool

    def to_json_dict(self) -> dict:
        return dataclasses.asdict(self)


def _as_exponent(x) -> Fraction:
    if isinstance(x, (Fraction, int, str)):
        return Fraction(x)
    return Fraction(float(x)).limit_denominator(10**6)


def correlation_tensor(fs: Sequence[SampledFunction],
                       budget: Optional[int] = None) -> np.ndarray:
    """N_{f_0..f_k}(x_1..x_k) = h * sum_t f_0(t) prod f_j(t - x_j), full
    offset range, for k in {1,2,3}."""
    if len({f.h for f in fs}) != 1 or len({len(f.values) for f in fs}) != 1:
        raise DomainError("functions must share one grid")
    k = len(fs) - 1
    if k not in (1, 2, 3):
        raise DomainError(f"correlation order k={k} unsupported (use 1..3)")
    h, L = fs[0].h, len(fs[0].values)
    offsets = np.arange(-(L - 1), L)
    if len(offsets) ** k * L > compute_budget(budget):
        raise BudgetError("correlation tensor exceeds budget")
    stacks = [_shift_stack(f.values, -offsets) for f in fs[1:]]
    subs = {1: "t,at->a", 2: "t,at,bt->ab", 3: "t,at,bt,ct->abc"}[k]
    return h * np.einsum(subs, fs[0].values, *stacks)


def norm_inequality_test(fs: Sequence[SampledFunction], r, ps,
                         budget: Optional[int] = None) -> NormTestResult:
    """Grid check of ||N_{f_0..f_k}||_r <= prod ||f_j||_{p_j}, gated by the
    scaling relation 1 + k/r = sum 1/p_j (an if-and-only-if)."""
    k = len(fs) - 1
    r = _as_exponent(r)
    ps = [_as_exponent(p) for p in ps]
    if len(ps) != k + 1:
        raise InvalidExponentsError(f"need {k + 1} exponents, got {len(ps)}")
    if r < 1 or any(p < 1 for p in ps):
        raise InvalidExponentsError("exponents must be >= 1")
    if 1 + Fraction(k) / r != sum(Fraction(1) / p for p in ps):
        raise InvalidExponentsError(
            f"1 + k/r = {1 + Fraction(k) / r} != sum 1/p_j = "
            f"{sum(Fraction(1) / p for p in ps)}")
    N = correlation_tensor(fs, budget=budget)
    h = fs[0].h
    rf = float(r)
    lhs = float((h**k * np.sum(np.abs(N) ** rf)) ** (1 / rf))
    rhs = 1.0
    for f, p in zip(fs, ps):
        pf = float(p)
        rhs *= (h * np.sum(f.values**pf)) ** (1 / pf)
    return NormTestResult(lhs, float(rhs), bool(lhs <= rhs * (1 + 1e-9)))


def continuity_probe(f: SampledFunction, k: int,
                     radii: Sequence[float]) -> list[tuple[float, float]]:
    """max |N_f(x) - int f^(k+1)| over axis and same-sign diagonal probe
    points with |x_i| <= radius, per radius.

    Mixed-sign corners are deliberately excluded: for an indicator they
    deviate by up to (k-1)*radius, while the closed-form benchmark of the
    small-radius limit is the one-sided slope radius itself.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    limit = f.riemann(k + 1)
    out = []
    for rho in radii:
        m = int(round(rho / f.h))
        points: list[tuple[int, ...]] = []
        steps = sorted({t for t in (m, m // 2, m // 4) if t > 0}) if m else []
        for t in steps:
            for sign in (1, -1):
                points.append(tuple([sign * t] * k))  # same-sign diagonal
                for axis in range(k):
                    pt = [0] * k
                    pt[axis] = sign * t
                    points.append(tuple(pt))
        if not points:
            points = [tuple([0] * k)]
        dev = max(abs(deck_at(f, pt) - limit) for pt in points)
        out.append((float(rho), float(dev)))
    return out


def sample_interval_indicator(E: IntervalSet, h: float,
                              margin: float = 0.0) -> SampledFunction:
    """Indicator of an IntervalSet sampled at left grid endpoints."""
    lo = float(min(a for a, _ in E.intervals)) - margin
    hi = float(max(b for _, b in E.intervals)) + margin
    n = int(np.ceil((hi - lo) / h)) + 1
    x = lo + h * np.arange(n)
    vals = np.zeros(n)
    ivs = [(float(a), float(b)) for a, b in E.intervals]
    for a, b in ivs:
        vals[(x >= a) & (x < b)] = 1.0
    return SampledFunction(h, lo, vals)
