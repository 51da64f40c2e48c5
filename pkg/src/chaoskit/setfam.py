"""Finite-window combinatorics for subsets of the natural numbers.

A WindowSet is the observable part A ∩ [0, N) of a set of non-negative
integers, together with the horizon N.  Family membership questions that are
asymptotic for infinite sets (syndetic: bounded gaps; thick: arbitrarily long
blocks; thickly/piecewise syndetic; co-finite; positive density) are decided
here against explicit surrogate parameters, and every verdict carries the
witness that produced it:

  syndetic(g)          max gap <= g, where gaps are the leading gap a_1 and
                       the successive differences; the trailing gap
                       (horizon - a_k) is censored by default because the
                       window cannot see past the horizon
  thick(L)             some run of L consecutive members
  thickly syndetic     for every block length n <= L the set of n-block
                       start positions is syndetic with gap <= g
  piecewise syndetic   a g-linked stretch of members spanning >= L (or thick,
                       or syndetic with the whole window as the block)
  cofinite(m)          [m, horizon) is contained in the set
  density              min/max of |A ∩ [0, n)| / n over n in [burnin, horizon]

Sets "over N" (positive integers) are embedded by simply not listing 0; no
verdict here gives special meaning to membership of 0.  The empty set is
classified as belonging to none of the families.
"""

from __future__ import annotations

import re
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

CENSORED = "censored"
STRICT = "strict"


@dataclass(frozen=True)
class WindowSet:
    """A subset of [0, horizon), members stored strictly ascending."""

    horizon: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        prev = -1
        for m in self.members:
            if not isinstance(m, int):
                raise ValueError(f"member {m!r} is not an integer")
            if m <= prev:
                raise ValueError("members must be strictly ascending without duplicates")
            if not 0 <= m < self.horizon:
                raise ValueError(f"member {m} outside [0, {self.horizon})")
            prev = m

    def __contains__(self, n: int) -> bool:
        i = bisect_left(self.members, n)
        return i < len(self.members) and self.members[i] == n

    def __len__(self) -> int:
        return len(self.members)

    def count_below(self, n: int) -> int:
        """|A ∩ [0, n)|."""
        return bisect_left(self.members, n)

    def complement(self) -> "WindowSet":
        inside = set(self.members)
        return WindowSet(self.horizon, tuple(n for n in range(self.horizon) if n not in inside))


def window_set(horizon: int, members: Iterable[int]) -> WindowSet:
    """Normalizing constructor: sorts, deduplicates, validates."""
    return WindowSet(horizon, tuple(sorted(set(members))))


def full_window(horizon: int) -> WindowSet:
    return WindowSet(horizon, tuple(range(horizon)))


def empty_window(horizon: int) -> WindowSet:
    return WindowSet(horizon, ())


@dataclass(frozen=True)
class FamilyParams:
    """Surrogate thresholds for the family checks.

    gap: syndeticity bound g >= 1.
    block: thickness length L >= 1 (also the block budget for the thickly /
        piecewise checks).
    cofinite_head: largest admissible head m >= 0 for the co-finite check.
    burnin: density estimates use prefixes of length >= burnin (>= 1).
    tail_policy: 'censored' (default) ignores the trailing gap at the horizon;
        'strict' counts it.
    """

    gap: int = 2
    block: int = 8
    cofinite_head: int = 8
    burnin: int = 8
    tail_policy: str = CENSORED

    def __post_init__(self) -> None:
        if self.gap < 1:
            raise ValueError("gap must be >= 1")
        if self.block < 1:
            raise ValueError("block must be >= 1")
        if self.cofinite_head < 0:
            raise ValueError("cofinite_head must be >= 0")
        if self.burnin < 1:
            raise ValueError("burnin must be >= 1")
        if self.tail_policy not in (CENSORED, STRICT):
            raise ValueError(f"tail_policy must be censored|strict, got {self.tail_policy!r}")


@dataclass(frozen=True)
class FamilyVerdict:
    """Window-scoped family classification with witnesses.

    max_gap is None exactly when the set is empty.  cofinite_head is the least
    m with [m, horizon) contained in the set (horizon when the last point is
    missing).  Densities are exact rationals.
    """

    horizon: int
    syndetic: bool
    max_gap: int | None
    thick: bool
    longest_block: int
    thickly_syndetic: bool
    piecewise_syndetic: bool
    cofinite: bool
    cofinite_head: int
    lower_density: Fraction
    upper_density: Fraction

    def tags(self) -> tuple[str, ...]:
        out = []
        if self.syndetic:
            out.append("syndetic")
        if self.thick:
            out.append("thick")
        if self.thickly_syndetic:
            out.append("thickly_syndetic")
        if self.piecewise_syndetic:
            out.append("piecewise_syndetic")
        if self.cofinite:
            out.append("cofinite")
        return tuple(out)


def max_gap(a: WindowSet, tail_policy: str = CENSORED) -> int:
    """Largest gap of a non-empty window set.

    Gaps are the leading gap a_1 (distance from the window start) and the
    successive differences a_{i+1} - a_i.  Under the strict policy the
    trailing gap horizon - a_k is counted as well.
    """
    if not a.members:
        raise ValueError("max_gap of the empty set is undefined")
    gaps = [a.members[0]]
    gaps.extend(b - c for c, b in zip(a.members, a.members[1:]))
    if tail_policy == STRICT:
        gaps.append(a.horizon - a.members[-1])
    elif tail_policy != CENSORED:
        raise ValueError(f"unknown tail policy {tail_policy!r}")
    return max(gaps)


def longest_block(a: WindowSet) -> int:
    """Length of the longest run of consecutive members (0 for the empty set)."""
    best = 0
    run = 0
    prev = None
    for m in a.members:
        run = run + 1 if prev is not None and m == prev + 1 else 1
        best = max(best, run)
        prev = m
    return best


def least_cofinite_head(a: WindowSet) -> int:
    """Least m with [m, horizon) ⊆ A; horizon if the tail is broken at the end."""
    if not a.members or a.members[-1] != a.horizon - 1:
        return a.horizon
    head = a.horizon - 1
    for m in reversed(a.members[:-1]):
        if m == head - 1:
            head = m
        else:
            break
    return head


def _linked_span(a: WindowSet, g: int) -> int:
    """Longest span first..last of a maximal run whose successive gaps are <= g."""
    best = 0
    start = None
    prev = None
    for m in a.members:
        if prev is None or m - prev > g:
            start = m
        best = max(best, m - start + 1)
        prev = m
    return best


def _block_starts(a: WindowSet, n: int) -> WindowSet:
    """Start positions of runs of n consecutive members, as a WindowSet."""
    width = a.horizon - n + 1
    if width < 1:
        return WindowSet(1, ())
    inside = set(a.members)
    starts = []
    run = 0
    for i in range(a.horizon - 1, -1, -1):
        run = run + 1 if i in inside else 0
        if run >= n and i < width:
            starts.append(i)
    starts.reverse()
    return WindowSet(width, tuple(starts))


def _thickly_syndetic(a: WindowSet, p: FamilyParams) -> bool:
    # Block-start sets are checked tail-censored regardless of the policy:
    # a long tail of missing starts only says the window ran out of room.
    for n in range(1, p.block + 1):
        if n > a.horizon:
            return False
        starts = _block_starts(a, n)
        if not starts.members or max_gap(starts, CENSORED) > p.gap:
            return False
    return True


def classify(a: WindowSet, p: FamilyParams) -> FamilyVerdict:
    """Classify a window set against all families at the given parameters."""
    if p.burnin > a.horizon:
        raise ValueError(f"burnin {p.burnin} exceeds horizon {a.horizon}")
    if not a.members:
        return FamilyVerdict(
            horizon=a.horizon,
            syndetic=False, max_gap=None,
            thick=False, longest_block=0,
            thickly_syndetic=False, piecewise_syndetic=False,
            cofinite=False, cofinite_head=a.horizon,
            lower_density=Fraction(0), upper_density=Fraction(0),
        )
    gap = max_gap(a, p.tail_policy)
    block = longest_block(a)
    syndetic = gap <= p.gap
    thick = block >= p.block
    piecewise = (
        thick
        or (syndetic and a.horizon >= p.block)
        or _linked_span(a, p.gap) >= p.block
    )
    head = least_cofinite_head(a)
    lo, hi = _density_bounds(a, p.burnin)
    return FamilyVerdict(
        horizon=a.horizon,
        syndetic=syndetic, max_gap=gap,
        thick=thick, longest_block=block,
        thickly_syndetic=_thickly_syndetic(a, p),
        piecewise_syndetic=piecewise,
        cofinite=head <= p.cofinite_head, cofinite_head=head,
        lower_density=lo, upper_density=hi,
    )


def _density_bounds(a: WindowSet, burnin: int) -> tuple[Fraction, Fraction]:
    lo = hi = None
    count = a.count_below(burnin)
    idx = count
    for n in range(burnin, a.horizon + 1):
        if n > burnin:
            if idx < len(a.members) and a.members[idx] == n - 1:
                count += 1
                idx += 1
        d = Fraction(count, n)
        lo = d if lo is None or d < lo else lo
        hi = d if hi is None or d > hi else hi
    return lo, hi


# ---------------------------------------------------------------------------
# Arithmetic on window sets.  All binary operations demand equal horizons.

def _same_horizon(a: WindowSet, b: WindowSet) -> None:
    if a.horizon != b.horizon:
        raise ValueError(f"horizon mismatch: {a.horizon} != {b.horizon}")


def union(a: WindowSet, b: WindowSet) -> WindowSet:
    _same_horizon(a, b)
    return window_set(a.horizon, set(a.members) | set(b.members))


def intersection(a: WindowSet, b: WindowSet) -> WindowSet:
    _same_horizon(a, b)
    return window_set(a.horizon, set(a.members) & set(b.members))


def dilate(a: WindowSet, n: int) -> WindowSet:
    """{n*a : a in A, n*a < horizon}, same horizon."""
    if n < 1:
        raise ValueError("dilation factor must be >= 1")
    return WindowSet(a.horizon, tuple(n * m for m in a.members if n * m < a.horizon))


def shift_down(a: WindowSet, q: int) -> WindowSet:
    """A - q elementwise, dropping members that fall below 0."""
    if q < 0:
        raise ValueError("shift must be >= 0")
    return WindowSet(a.horizon, tuple(m - q for m in a.members if m >= q))


def offset_up(a: WindowSet, q: int) -> WindowSet:
    """A + q elementwise, dropping members at or above the horizon."""
    if q < 0:
        raise ValueError("offset must be >= 0")
    return WindowSet(a.horizon, tuple(m + q for m in a.members if m + q < a.horizon))


def with_horizon(a: WindowSet, horizon: int) -> WindowSet:
    """Re-embed on a different horizon, dropping members beyond it."""
    return WindowSet(horizon, tuple(m for m in a.members if m < horizon))


# ---------------------------------------------------------------------------
# Text format and generator grammar.
#
#   horizon=<N>
#   <generator or comma-separated ascending member list>
#
# Generators: all | evens | multiples(k) | complement(powers(2)) | explicit
# (explicit meaning the literal member list form).

_GENERATORS = ("all", "evens", "multiples", "complement(powers(2))")


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


def from_generator(expr: str, horizon: int) -> WindowSet:
    expr = expr.strip()
    if expr == "all":
        return full_window(horizon)
    if expr == "evens":
        return WindowSet(horizon, tuple(range(0, horizon, 2)))
    m = re.fullmatch(r"multiples\((\d+)\)", expr)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ValueError("multiples(k) needs k >= 1")
        return WindowSet(horizon, tuple(range(0, horizon, k)))
    if expr == "complement(powers(2))":
        # The positive integers minus {2, 4, 8, ...}; 0 is not listed because
        # the underlying set lives in the positive integers.
        return WindowSet(horizon, tuple(n for n in range(1, horizon) if not _is_power_of_two(n)))
    raise ValueError(f"unknown set generator {expr!r}")


def parse_window_text(text: str) -> WindowSet:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("horizon="):
        raise ValueError("window set text must start with horizon=<N>")
    try:
        horizon = int(lines[0].split("=", 1)[1])
    except ValueError:
        raise ValueError(f"bad horizon line {lines[0]!r}")
    body = lines[1] if len(lines) > 1 else ""
    if body == "" or body == "explicit":
        return empty_window(horizon)
    if body == "all" or body == "evens" or body.startswith(("multiples(", "complement(")):
        return from_generator(body, horizon)
    try:
        members = [int(tok) for tok in body.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"bad member list {body!r}")
    ws = WindowSet(horizon, tuple(members))
    return ws


def format_window_text(a: WindowSet) -> str:
    return f"horizon={a.horizon}\n" + ",".join(str(m) for m in a.members)
