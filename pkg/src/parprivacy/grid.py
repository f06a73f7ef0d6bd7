"""Permuted function grids, hyper-rectangles, and exact input distributions.

Everything here is exact: probabilities and thresholds are integer
numerator/denominator pairs, never floats.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .errors import DistributionError, SizeLimitError, TableFormatError

#: Default cap on bits per party, keyed by party count.  2^(d*k) cells must
#: stay at desk scale; callers may override via ``k_cap``.
DEFAULT_K_CAP = {2: 8, 3: 4}


def default_k_cap(d: int) -> int:
    return DEFAULT_K_CAP.get(d, max(1, 16 // d))


@dataclass(frozen=True)
class Permutation:
    """Ordering of one party's inputs on a grid axis.

    ``order[p]`` is the input value displayed at grid position ``p``; the
    inverse direction (input -> position) is available via ``position_of``.
    """

    order: tuple[int, ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise TableFormatError(
                f"permutation must be a bijection on 0..{n - 1}: {self.order!r}"
            )
        inverse = [0] * n
        for pos, value in enumerate(self.order):
            inverse[value] = pos
        object.__setattr__(self, "_inverse", tuple(inverse))

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_sort_key(n: int, key: Callable[[int], object]) -> "Permutation":
        """Order inputs by ``key`` (stable: ties keep numeric order)."""
        return Permutation(tuple(sorted(range(n), key=lambda v: (key(v), v))))

    @property
    def n(self) -> int:
        return len(self.order)

    def input_at(self, pos: int) -> int:
        return self.order[pos]

    def position_of(self, value: int) -> int:
        return self._inverse[value]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.order))


@dataclass(frozen=True)
class HyperRect:
    """Axis-aligned block of grid cells, closed integer intervals per axis."""

    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise TableFormatError("lo/hi dimension mismatch")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise TableFormatError(f"empty interval in {self.lo}..{self.hi}")

    @staticmethod
    def full(d: int, n: int) -> "HyperRect":
        return HyperRect((0,) * d, (n - 1,) * d)

    @staticmethod
    def cell(coords: Sequence[int]) -> "HyperRect":
        c = tuple(coords)
        return HyperRect(c, c)

    @property
    def d(self) -> int:
        return len(self.lo)

    def axis_len(self, axis: int) -> int:
        return self.hi[axis] - self.lo[axis] + 1

    def volume(self) -> int:
        return math.prod(self.axis_len(a) for a in range(self.d))

    def contains(self, coords: Sequence[int]) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.lo, coords, self.hi))

    def contains_rect(self, other: "HyperRect") -> bool:
        return all(sl <= ol and oh <= sh
                   for sl, sh, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def intersects(self, other: "HyperRect") -> bool:
        return all(ol <= sh and sl <= oh
                   for sl, sh, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def cells(self) -> Iterator[tuple[int, ...]]:
        ranges = [range(l, h + 1) for l, h in zip(self.lo, self.hi)]
        return itertools.product(*ranges)

    def split(self, axis: int, cut_after: int) -> tuple["HyperRect", "HyperRect"]:
        """Split into cells with coordinate <= cut_after and the rest."""
        if not self.lo[axis] <= cut_after < self.hi[axis]:
            raise TableFormatError(
                f"cut after {cut_after} not strictly inside axis {axis} of {self}"
            )
        lo, hi = list(self.lo), list(self.hi)
        hi[axis] = cut_after
        low = HyperRect(self.lo, tuple(hi))
        lo[axis] = cut_after + 1
        high = HyperRect(tuple(lo), self.hi)
        return low, high

    def to_json(self) -> list[list[int]]:
        return [list(self.lo), list(self.hi)]

    @staticmethod
    def from_json(data) -> "HyperRect":
        return HyperRect(tuple(data[0]), tuple(data[1]))

    def __str__(self):
        return "x".join(f"[{l},{h}]" for l, h in zip(self.lo, self.hi))


class FunctionTable:
    """A d-ary function laid out as a permuted dense grid.

    ``values`` holds interned alphabet ids in row-major order over grid
    positions; ``perms[a]`` maps axis-``a`` grid positions to the party's
    original input values.  Immutable after construction.
    """

    __slots__ = ("d", "k", "n", "alphabet", "values", "perms", "_strides")

    def __init__(self, d: int, k: int, alphabet: Sequence[str],
                 values: Sequence[int], perms: Sequence[Permutation]):
        if d < 2:
            raise TableFormatError("at least two parties required")
        n = 2 ** k
        if len(perms) != d or any(p.n != n for p in perms):
            raise TableFormatError("need one permutation of 0..2^k-1 per party")
        if len(values) != n ** d:
            raise TableFormatError(
                f"values length {len(values)} != {n}^{d}")
        if len(set(alphabet)) != len(alphabet):
            raise TableFormatError("alphabet symbols must be distinct")
        if any(not (0 <= v < len(alphabet)) for v in values):
            raise TableFormatError("value id out of alphabet range")
        self.d = d
        self.k = k
        self.n = n
        self.alphabet = tuple(alphabet)
        self.values = tuple(values)
        self.perms = tuple(perms)
        self._strides = tuple(n ** (d - 1 - a) for a in range(d))

    # -- lookups -----------------------------------------------------------

    def offset(self, coords: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(coords, self._strides))

    def coords_of(self, offset: int) -> tuple[int, ...]:
        out = []
        for s in self._strides:
            out.append(offset // s)
            offset %= s
        return tuple(out)

    def value_at(self, coords: Sequence[int]) -> int:
        return self.values[self.offset(coords)]

    def symbol_at(self, coords: Sequence[int]) -> str:
        return self.alphabet[self.value_at(coords)]

    def inputs_at(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Original party inputs displayed at a grid position."""
        return tuple(p.input_at(c) for p, c in zip(self.perms, coords))

    def position_of_inputs(self, inputs: Sequence[int]) -> tuple[int, ...]:
        return tuple(p.position_of(v) for p, v in zip(self.perms, inputs))

    def bounds(self) -> HyperRect:
        return HyperRect.full(self.d, self.n)

    def cell_count(self) -> int:
        return self.n ** self.d

    def value_id(self, symbol: str) -> int:
        try:
            return self.alphabet.index(symbol)
        except ValueError:
            raise TableFormatError(f"unknown output symbol {symbol!r}") from None

    def with_perms(self, perms: Sequence[Permutation]) -> "FunctionTable":
        """The same underlying function laid out under different orderings."""
        return build_table(self.d, self.k,
                           lambda inputs: self.alphabet[self.values[
                               self.offset(self.position_of_inputs(inputs))]],
                           perms=perms, alphabet=self.alphabet, k_cap=self.k)

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "alphabet": list(self.alphabet),
            "perms": [list(p.order) for p in self.perms],
            "values": list(self.values),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "FunctionTable":
        try:
            perms = [Permutation(tuple(o)) for o in data["perms"]]
            return FunctionTable(int(data["d"]), int(data["k"]),
                                 [str(s) for s in data["alphabet"]],
                                 [int(v) for v in data["values"]], perms)
        except (KeyError, TypeError) as exc:
            raise TableFormatError(f"bad table JSON: {exc}") from exc

    def __eq__(self, other):
        return (isinstance(other, FunctionTable)
                and self.to_json_dict() == other.to_json_dict())

    def __hash__(self):
        return hash((self.d, self.k, self.alphabet, self.values,
                     tuple(p.order for p in self.perms)))

    def __repr__(self):
        return (f"FunctionTable(d={self.d}, k={self.k}, "
                f"|alphabet|={len(self.alphabet)})")


def build_table(d: int, k: int, raw_values: Callable[[tuple[int, ...]], object],
                perms: Sequence[Permutation] | None = None,
                alphabet: Sequence[str] | None = None,
                k_cap: int | None = None) -> FunctionTable:
    """Evaluate a raw function on all input tuples and lay it out on a grid.

    ``raw_values`` receives the tuple of original party inputs; its results
    are interned as string symbols (first occurrence in row-major grid order
    unless ``alphabet`` pins the ordering).
    """
    cap = default_k_cap(d) if k_cap is None else k_cap
    if k < 0 or k > cap:
        raise SizeLimitError(f"k={k} outside 0..{cap} for d={d} "
                             f"(pass k_cap to override)")
    n = 2 ** k
    if perms is None:
        perms = [Permutation.identity(n)] * d
    perms = list(perms)
    if len(perms) != d:
        raise TableFormatError(f"expected {d} permutations, got {len(perms)}")
    symbols: list[str] = [] if alphabet is None else list(alphabet)
    ids = {s: i for i, s in enumerate(symbols)}
    values = []
    for pos in itertools.product(range(n), repeat=d):
        inputs = tuple(p.input_at(c) for p, c in zip(perms, pos))
        sym = str(raw_values(inputs))
        vid = ids.get(sym)
        if vid is None:
            if alphabet is not None:
                raise TableFormatError(f"value {sym!r} not in supplied alphabet")
            vid = len(symbols)
            ids[sym] = vid
            symbols.append(sym)
        values.append(vid)
    return FunctionTable(d, k, symbols, values, perms)


class Distribution:
    """Exact probability weights over original input tuples.

    Stored as integer numerators over one common positive denominator, in
    row-major input order; always normalized (gcd reduced) so equal
    distributions compare equal.
    """

    __slots__ = ("d", "k", "nums", "den", "kind")

    def __init__(self, d: int, k: int, nums: Sequence[int], den: int,
                 kind: str = "weights"):
        n = 2 ** k
        if len(nums) != n ** d:
            raise DistributionError(
                f"expected {n ** d} weights, got {len(nums)}")
        if den <= 0:
            raise DistributionError("denominator must be positive")
        if any(v < 0 for v in nums):
            raise DistributionError("negative weight")
        if sum(nums) != den:
            raise DistributionError("weights must sum to exactly 1")
        g = math.gcd(den, *nums) if nums else 1
        self.d = d
        self.k = k
        self.nums = tuple(v // g for v in nums)
        self.den = den // g
        self.kind = kind

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def is_uniform(self) -> bool:
        first = self.nums[0]
        return all(v == first for v in self.nums)

    def weight_of(self, inputs: Sequence[int]) -> Fraction:
        n = 2 ** self.k
        off = 0
        for v in inputs:
            off = off * n + v
        return Fraction(self.nums[off], self.den)

    def cell_nums(self, table: FunctionTable) -> list[int]:
        """Numerators indexed by grid cell offset (mapped through perms)."""
        if table.d != self.d or table.k != self.k:
            raise DistributionError("distribution does not match table shape")
        n = table.n
        out = []
        for pos in itertools.product(range(n), repeat=self.d):
            off = 0
            for p, c in zip(table.perms, pos):
                off = off * n + p.input_at(c)
            out.append(self.nums[off])
        return out

    def describe(self) -> str:
        return self.kind

    def to_json_dict(self) -> dict:
        if self.is_uniform():
            return {"kind": "uniform"}
        fracs = self.weights
        return {"kind": "weights",
                "num": [f.numerator for f in fracs],
                "den": [f.denominator for f in fracs]}

    @staticmethod
    def from_json_dict(data: dict, d: int, k: int) -> "Distribution":
        if data.get("kind") == "uniform":
            return uniform_distribution(d, k)
        if data.get("kind") != "weights":
            raise DistributionError(f"unknown distribution kind {data.get('kind')!r}")
        nums = [int(v) for v in data["num"]]
        dens = [int(v) for v in data["den"]]
        if len(nums) != len(dens):
            raise DistributionError("num/den arrays differ in length")
        common = math.lcm(*dens) if dens else 1
        scaled = [a * (common // b) for a, b in zip(nums, dens)]
        return Distribution(d, k, scaled, common)

    def __eq__(self, other):
        return (isinstance(other, Distribution)
                and (self.d, self.k, self.nums, self.den)
                == (other.d, other.k, other.nums, other.den))

    def __repr__(self):
        return f"Distribution(d={self.d}, k={self.k}, kind={self.kind!r})"


def uniform_distribution(d: int, k: int) -> Distribution:
    """Every input tuple gets weight exactly 2^(-d*k)."""
    count = (2 ** k) ** d
    return Distribution(d, k, [1] * count, count, kind="uniform")


@dataclass(frozen=True)
class CApproxCheck:
    """Result of a near-uniformity validation."""

    ok: bool
    max_diff: Fraction
    threshold: Fraction
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None

    def __bool__(self):
        return self.ok


def validate_c_approx(dist: Distribution, c: Fraction | int) -> CApproxCheck:
    """Check that all pairwise weight differences are <= c * 2^(-d*k).

    On violation the witness holds the (max-weight, min-weight) input tuples.
    """
    c = Fraction(c)
    if c < 0:
        raise DistributionError("c must be nonnegative")
    n = 2 ** dist.k
    hi = max(range(len(dist.nums)), key=lambda i: dist.nums[i])
    lo = min(range(len(dist.nums)), key=lambda i: dist.nums[i])
    max_diff = Fraction(dist.nums[hi] - dist.nums[lo], dist.den)
    threshold = c * Fraction(1, n ** dist.d)
    if max_diff <= threshold:
        return CApproxCheck(True, max_diff, threshold, None)

    def unflatten(off: int) -> tuple[int, ...]:
        out = []
        for _ in range(dist.d):
            out.append(off % n)
            off //= n
        return tuple(reversed(out))

    return CApproxCheck(False, max_diff, threshold, (unflatten(hi), unflatten(lo)))


def random_c_approx_distribution(d: int, k: int, c: Fraction | int,
                                 seed: int, resolution: int = 1000) -> Distribution:
    """Seeded random distribution that is exactly c-approximate uniform.

    Cells are paired up and given opposite perturbations of magnitude at most
    c * 2^(-d*k) / 2, so the pairwise-difference bound holds by construction
    and the total stays exactly 1.
    """
    c = Fraction(c)
    if not 0 <= c < 1:
        raise DistributionError("c must be in [0, 1)")
    rng = random.Random(seed)
    count = (2 ** k) ** d
    p, q = c.numerator, c.denominator
    # weight_i = (2*M*q +- r_i*p) / (2*M*q*count) with r_i in 0..M
    m = resolution
    base = 2 * m * q
    nums = [base] * count
    for i in range(0, count - 1, 2):
        r = rng.randrange(0, m + 1)
        nums[i] += r * p
        nums[i + 1] -= r * p
    dist = Distribution(d, k, nums, base * count, kind=f"capprox:{c}")
    check = validate_c_approx(dist, c)
    if not check.ok:  # pragma: no cover - construction guarantees this
        raise DistributionError("generated distribution failed its own bound")
    return dist
