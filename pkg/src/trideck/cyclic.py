"""k-decks, DFT and translate-equivalence on Z/nZ.

The DFT here uses the *positive* exponent convention

    fhat(l) = sum_j f_j * zeta**(j*l),   zeta = exp(2*pi*i/n),

which is the opposite of the numpy/FFTW default.  All spectra and bispectra
in this package follow this convention.

Two numeric paths coexist: k_deck() is exact (rational arithmetic, with an
int64 fast path after clearing denominators), while three_deck_fft() is the
double-precision transform route.  The exact path is the oracle for the
float path at small n.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .config import compute_budget
from .errors import BudgetError, DomainError, ShapeMismatchError

MAX_DECK_ORDER = 6  # decks for k > 6 are out of scope

_INT64_SAFE = 2**62


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    raise DomainError(f"cannot interpret {x!r} as a rational value")


@dataclasses.dataclass(frozen=True)
class CyclicFunction:
    """A rational-valued function on Z/nZ, immutable after construction.

    Use .of() to build validated (nonnegative) instances; the raw constructor
    skips the sign check so that internal decompositions (e.g. the p/q split
    of the solution-family enumeration) can carry signed parts.
    """

    n: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"modulus must be >= 1, got {self.n}")
        if len(self.values) != self.n:
            raise DomainError(
                f"expected {self.n} values, got {len(self.values)}")

    @classmethod
    def of(cls, values: Iterable, n: Optional[int] = None) -> "CyclicFunction":
        vals = tuple(_as_fraction(v) for v in values)
        if n is None:
            n = len(vals)
        if any(v < 0 for v in vals):
            raise DomainError("values must be nonnegative")
        return cls(n, vals)

    @classmethod
    def indicator(cls, n: int, subset: Iterable[int]) -> "CyclicFunction":
        members = {j % n for j in subset}
        return cls(n, tuple(Fraction(1 if j in members else 0)
                            for j in range(n)))

    @classmethod
    def from_floats(cls, values: Sequence[float],
                    max_denominator: int = 10**9) -> "CyclicFunction":
        vals = tuple(Fraction(float(v)).limit_denominator(max_denominator)
                     for v in values)
        return cls(len(vals), vals)

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j % self.n]

    def support(self) -> frozenset[int]:
        return frozenset(j for j, v in enumerate(self.values) if v != 0)

    def as_floats(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=np.float64)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "values": [int(v) if v.denominator == 1 else str(v)
                       for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CyclicFunction":
        return cls(int(d["n"]), tuple(_as_fraction(v) for v in d["values"]))


@dataclasses.dataclass(frozen=True, eq=False)
class Spectrum:
    """fhat(0..n-1) under the positive-exponent convention."""

    n: int
    values: np.ndarray  # complex128, length n

    def __getitem__(self, l: int) -> complex:
        return complex(self.values[l % self.n])


@dataclasses.dataclass(frozen=True, eq=False)
class KDeck:
    """N_f^k as a dense row-major tensor over (Z/nZ)^(k-1).

    exact=True tensors hold Fraction entries (object dtype); float tensors
    come from the transform route.
    """

    n: int
    k: int
    values: np.ndarray  # shape (n,)*(k-1)
    exact: bool

    def __post_init__(self):
        expected = (self.n,) * (self.k - 1)
        if self.values.shape != expected:
            raise ShapeMismatchError(
                f"deck shape {self.values.shape} != {expected}")

    def as_floats(self) -> np.ndarray:
        if self.exact:
            return self.values.astype(np.float64)
        return self.values

    def to_json_dict(self) -> dict:
        flat = self.values.reshape(-1)
        if self.exact:
            vals = [int(v) if v.denominator == 1 else str(v) for v in flat]
        else:
            vals = [float(v) for v in flat]
        return {"n": self.n, "k": self.k,
                "convention": "positive-exponent", "values": vals}

    @classmethod
    def from_json_dict(cls, d: dict) -> "KDeck":
        n, k = int(d["n"]), int(d["k"])
        raw = d["values"]
        if any(isinstance(v, str) for v in raw) or all(
                isinstance(v, int) for v in raw):
            arr = np.empty(len(raw), dtype=object)
            for i, v in enumerate(raw):
                arr[i] = _as_fraction(v)
            return cls(n, k, arr.reshape((n,) * (k - 1)), exact=True)
        arr = np.asarray(raw, dtype=np.float64).reshape((n,) * (k - 1))
        return cls(n, k, arr, exact=False)

    def to_csv(self) -> str:
        lines = [f"# n={self.n},k={self.k},convention=positive-exponent"]
        flat = self.values.reshape(self.n ** max(self.k - 2, 0), -1)
        for row in flat:
            lines.append(",".join(str(v) if self.exact else repr(float(v))
                                  for v in row))
        return "\n".join(lines) + "\n"


@dataclasses.dataclass(frozen=True, eq=False)
class Bispectrum:
    """B(l1,l2) = fhat(l1) fhat(l2) fhat(-l1-l2), complex n x n."""

    n: int
    values: np.ndarray

    def __getitem__(self, idx) -> complex:
        l1, l2 = idx
        return complex(self.values[l1 % self.n, l2 % self.n])

    def to_json_dict(self) -> dict:
        return {"n": self.n, "convention": "positive-exponent",
                "values": [[float(v.real), float(v.imag)]
                           for v in self.values.reshape(-1)]}


def dft(f: CyclicFunction) -> Spectrum:
    """Fast transform; positive exponent, so it is n * ifft of the values."""
    vals = f.as_floats()
    return Spectrum(f.n, np.fft.ifft(vals) * f.n)


def dft_direct(f: CyclicFunction) -> Spectrum:
    """Direct summation, kept independent of the FFT path for verification."""
    n = f.n
    out = np.zeros(n, dtype=np.complex128)
    vals = f.as_floats()
    for l in range(n):
        acc = 0j
        for j in range(n):
            acc += vals[j] * np.exp(2j * np.pi * j * l / n)
        out[l] = acc
    return Spectrum(n, out)


def _shift_matrix(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n  # [s, j] -> (j+s) % n


def _deck_int64(v: np.ndarray, n: int, k: int) -> np.ndarray:
    R = v[_shift_matrix(n)]  # R[s, j] = v[(j+s) % n]
    if k == 2:
        return R @ v
    if k == 3:
        return (R * v[None, :]) @ R.T
    letters = "abcde"[: k - 1]
    sub = "j," + ",".join(f"{c}j" for c in letters) + "->" + letters
    return np.einsum(sub, v, *([R] * (k - 1)))


def _deck_object(v: Sequence[int], n: int, k: int) -> np.ndarray:
    out = np.empty((n,) * (k - 1), dtype=object)
    for js in itertools.product(range(n), repeat=k - 1):
        acc = 0
        for t in range(n):
            term = v[t]
            for ji in js:
                term *= v[(t + ji) % n]
            acc += term
        out[js] = acc
    return out


def k_deck(f: CyclicFunction, k: int, budget: Optional[int] = None) -> KDeck:
    """Exact k-deck N_f^k(j_1..j_{k-1}) = sum_j f_j f_{j+j_1} ... f_{j+j_{k-1}}.

    The sum runs over all j in Z/nZ.  Denominators are cleared first so the
    core sum is integer arithmetic (int64 when safe, arbitrary precision
    otherwise).
    """
    if k < 2:
        raise DomainError(f"deck order must be >= 2, got {k}")
    if k > MAX_DECK_ORDER:
        raise DomainError(f"deck order {k} > {MAX_DECK_ORDER} is unsupported")
    n = f.n
    if n**k > compute_budget(budget):
        raise BudgetError(f"k_deck size n^k = {n}^{k} exceeds budget")
    denom = math.lcm(*(v.denominator for v in f.values))
    ints = [int(v * denom) for v in f.values]
    mx = max((abs(x) for x in ints), default=0)
    if n * max(mx, 1) ** k < _INT64_SAFE:
        raw = _deck_int64(np.asarray(ints, dtype=np.int64), n, k)
        it = raw.reshape(-1).tolist()
    else:
        raw = _deck_object(ints, n, k)
        it = raw.reshape(-1).tolist()
    scale = Fraction(1, denom**k)
    out = np.empty(n ** (k - 1), dtype=object)
    for i, x in enumerate(it):
        out[i] = x * scale
    return KDeck(n, k, out.reshape((n,) * (k - 1)), exact=True)


def bispectrum(f: CyclicFunction) -> Bispectrum:
    fh = dft(f).values
    n = f.n
    l = np.arange(n)
    third = fh[(-(l[:, None] + l[None, :])) % n]
    return Bispectrum(n, fh[:, None] * fh[None, :] * third)


def bispectrum_from_deck(deck: KDeck) -> Bispectrum:
    """2-D transform of a 3-deck: B = n^2 * ifft2(N) under our convention."""
    if deck.k != 3:
        raise DomainError(f"expected a 3-deck, got k={deck.k}")
    N = deck.as_floats()
    return Bispectrum(deck.n, np.fft.ifft2(N) * deck.n**2)


def three_deck_fft(f: CyclicFunction) -> KDeck:
    """3-deck via the bispectrum factorization and an inverse 2-D transform."""
    B = bispectrum(f).values
    n = f.n
    N = np.fft.fft2(B) / n**2
    return KDeck(n, 3, np.real(N), exact=False)


def translate(f: CyclicFunction, a: int) -> CyclicFunction:
    """result(j) = f(j - a mod n); every k-deck is invariant under this."""
    n = f.n
    a %= n
    return CyclicFunction(n, tuple(f.values[(j - a) % n] for j in range(n)))


def equal_up_to_translation(f: CyclicFunction,
                            g: CyclicFunction) -> Optional[int]:
    """Least a in [0,n) with g = translate(f, a), or None."""
    if f.n != g.n:
        raise ShapeMismatchError(f"moduli differ: {f.n} != {g.n}")
    n = f.n
    for a in range(n):
        if all(g.values[j] == f.values[(j - a) % n] for j in range(n)):
            return a
    return None


def deck_equal(d1: KDeck, d2: KDeck, tol=0) -> bool:
    if (d1.n, d1.k) != (d2.n, d2.k):
        raise ShapeMismatchError(
            f"deck parameters differ: {(d1.n, d1.k)} != {(d2.n, d2.k)}")
    if tol < 0:
        raise DomainError("tolerance must be nonnegative")
    if tol == 0 and d1.exact and d2.exact:
        return bool(np.all(d1.values == d2.values))
    diff = np.abs(d1.as_floats() - d2.as_floats())
    return bool(np.max(diff) <= tol) if diff.size else True


def canonical_rotation(f: CyclicFunction) -> tuple[CyclicFunction, int]:
    """Lexicographically-smallest rotation and the shift that produces it."""
    best, best_a = f.values, 0
    for a in range(1, f.n):
        cand = tuple(f.values[(j - a) % f.n] for j in range(f.n))
        if cand < best:
            best, best_a = cand, a
    return CyclicFunction(f.n, best), best_a
