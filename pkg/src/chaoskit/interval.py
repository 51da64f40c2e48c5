"""Exact piecewise-linear interval maps over the rationals.

Everything in this module is computed with fractions.Fraction: evaluation,
images of closed intervals, composition (breakpoints of f∘g are g's
breakpoints merged with the g-preimages of f's breakpoints), periodic points
(per-piece linear solve), and the hitting sets

  N_f(U, V)     = {n : f^n(U) ∩ V nonempty}          (transitivity)
  N_f(U, delta) = {n : diam(f^n(U)) > delta}         (sensitivity)

computed on an explicit window [1, N].  Intervals are closed; a boundary-only
intersection counts as a hit unless strict=True.  The sensitivity comparison
is strict (>).

Approximate fallbacks for maps given only as point functions live in
SampledMap; everything it reports is labelled approximate and errs one-sided
(sampled diameters and hits are lower bounds, so members are sound and
misses are possible).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import setfam
from .budgets import BudgetError, cap, charge
from .setfam import FamilyParams, FamilyVerdict, WindowSet

Rat = Fraction
Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PLMap:
    """Continuous piecewise-linear self-map of [xs[0], xs[-1]].

    xs are strictly increasing breakpoints; ys the values there.  Linear
    interpolation between breakpoints.  Self-map is enforced: all ys must lie
    inside the domain (extremes of a PL map sit at breakpoints).
    """

    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.xs) < 2 or len(self.xs) != len(self.ys):
            raise ValueError("need matching xs/ys with at least two breakpoints")
        for a, b in zip(self.xs, self.xs[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        lo, hi = self.xs[0], self.xs[-1]
        for y in self.ys:
            if not lo <= y <= hi:
                raise ValueError(f"value {y} escapes the domain [{lo}, {hi}]")

    @property
    def lo(self) -> Fraction:
        return self.xs[0]

    @property
    def hi(self) -> Fraction:
        return self.xs[-1]

    @property
    def domain(self) -> Interval:
        return (self.xs[0], self.xs[-1])


def pl_map(points: Sequence[tuple[Fraction | int | str, Fraction | int | str]]) -> PLMap:
    """Build a PLMap from (x, y) pairs; coordinates coerced to Fraction."""
    xs = tuple(Fraction(x) for x, _ in points)
    ys = tuple(Fraction(y) for _, y in points)
    return PLMap(xs, ys)


def builtin(name: str) -> PLMap:
    """Named maps used throughout the reports and tests.

    S           on [-1, 1]: 2x+2 / -2x / -x; transitive but the two halves
                swap, so same-side returns happen only at even times
    tent        on [0, 1]
    example211  on [0, 1]: slopes ±3, two exchanged... rather two invariant
                halves [0,1/2] and [1/2,1], dense periodic points, no
                shadowing across the midpoint
    identity    on [0, 1]
    """
    if name == "S":
        return pl_map([(-1, 0), (Fraction(-1, 2), 1), (0, 0), (1, -1)])
    if name == "tent":
        return pl_map([(0, 0), (Fraction(1, 2), 1), (1, 0)])
    if name == "example211":
        return pl_map([
            (0, 0), (Fraction(1, 6), Fraction(1, 2)), (Fraction(1, 3), 0),
            (Fraction(2, 3), 1), (Fraction(5, 6), Fraction(1, 2)), (1, 1),
        ])
    if name == "identity":
        return pl_map([(0, 0), (1, 1)])
    raise ValueError(f"unknown builtin map {name!r}")


BUILTIN_NAMES = ("S", "tent", "example211", "identity")


def parse_pl_text(text: str) -> PLMap:
    """Text format: first line domain=a,b then one x:y line per breakpoint."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("domain="):
        raise ValueError("map text must start with domain=a,b")
    try:
        lo_s, hi_s = lines[0].split("=", 1)[1].split(",")
        lo, hi = Fraction(lo_s), Fraction(hi_s)
    except ValueError:
        raise ValueError(f"bad domain line {lines[0]!r}")
    pts = []
    for ln in lines[1:]:
        try:
            x_s, y_s = ln.split(":")
            pts.append((Fraction(x_s), Fraction(y_s)))
        except ValueError:
            raise ValueError(f"bad breakpoint line {ln!r}")
    m = pl_map(pts)
    if (m.lo, m.hi) != (lo, hi):
        raise ValueError("domain line disagrees with breakpoints")
    return m


def format_pl_text(m: PLMap) -> str:
    lines = [f"domain={m.lo},{m.hi}"]
    lines.extend(f"{x}:{y}" for x, y in zip(m.xs, m.ys))
    return "\n".join(lines)


def pl_eval(m: PLMap, x: Fraction | int | str) -> Fraction:
    x = Fraction(x)
    if not m.lo <= x <= m.hi:
        raise ValueError(f"{x} outside domain [{m.lo}, {m.hi}]")
    i = bisect_right(m.xs, x) - 1
    if i == len(m.xs) - 1:
        return m.ys[-1]
    x0, x1 = m.xs[i], m.xs[i + 1]
    y0, y1 = m.ys[i], m.ys[i + 1]
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def pl_iterate(m: PLMap, x: Fraction | int | str, n: int) -> Fraction:
    x = Fraction(x)
    for _ in range(n):
        x = pl_eval(m, x)
    return x


def pl_image(m: PLMap, iv: Interval) -> Interval:
    """Exact image of a closed subinterval: extremes occur at the endpoints
    or at interior breakpoints."""
    c, d = Fraction(iv[0]), Fraction(iv[1])
    if c > d:
        raise ValueError("empty interval")
    vals = [pl_eval(m, c), pl_eval(m, d)]
    i = bisect_right(m.xs, c)
    while i < len(m.xs) and m.xs[i] < d:
        vals.append(m.ys[i])
        i += 1
    return (min(vals), max(vals))


def pl_compose(f: PLMap, g: PLMap, breakpoint_budget: int | None = None) -> PLMap:
    """Exact f∘g (apply g first); domains must agree."""
    if f.domain != g.domain:
        raise ValueError("compose needs maps on the same domain")
    limit = cap("breakpoints") if breakpoint_budget is None else breakpoint_budget
    xs = set(g.xs)
    for i in range(len(g.xs) - 1):
        x0, x1 = g.xs[i], g.xs[i + 1]
        y0, y1 = g.ys[i], g.ys[i + 1]
        if y0 == y1:
            continue
        lo_y, hi_y = (y0, y1) if y0 < y1 else (y1, y0)
        for b in f.xs:
            if lo_y < b < hi_y:
                # solve g(x) = b on this piece
                xs.add(x0 + (b - y0) * (x1 - x0) / (y1 - y0))
        if len(xs) > limit:
            raise BudgetError(f"compose exceeded {limit} breakpoints")
    xs_sorted = tuple(sorted(xs))
    ys = tuple(pl_eval(f, pl_eval(g, x)) for x in xs_sorted)
    return PLMap(xs_sorted, ys)


def pl_power(m: PLMap, n: int, breakpoint_budget: int | None = None) -> PLMap:
    if n < 1:
        raise ValueError("power must be >= 1")
    charge("power", n)
    out = m
    for _ in range(n - 1):
        out = pl_compose(m, out, breakpoint_budget)
    return out


# ---------------------------------------------------------------------------
# Periodic points.

@dataclass(frozen=True)
class PeriodicReport:
    period: int
    points: tuple[tuple[Fraction, int], ...]   # (point, prime period)
    segments: tuple[tuple[Fraction, Fraction], ...]  # slope-1 fixed stretches


def _fixed_of(m: PLMap) -> tuple[list[Fraction], list[Interval]]:
    points: set[Fraction] = set()
    segments: list[Interval] = []
    for i in range(len(m.xs) - 1):
        x0, x1 = m.xs[i], m.xs[i + 1]
        y0, y1 = m.ys[i], m.ys[i + 1]
        slope = (y1 - y0) / (x1 - x0)
        if slope == 1:
            if y0 == x0:
                segments.append((x0, x1))
            continue
        x_star = (y0 - slope * x0) / (1 - slope)
        if x0 <= x_star <= x1:
            points.add(x_star)
    # Points swallowed by a fixed segment are reported once, via the segment.
    points = {p for p in points if not any(a <= p <= b for a, b in segments)}
    return sorted(points), _merge_segments(segments)


def _merge_segments(segs: list[Interval]) -> list[Interval]:
    segs = sorted(segs)
    out: list[Interval] = []
    for a, b in segs:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def periodic_points(m: PLMap, period: int) -> PeriodicReport:
    """Exact fixed points of m^period with prime periods by divisor filtering."""
    power = pl_power(m, period)
    points, segments = _fixed_of(power)
    out = []
    for p in points:
        prime = period
        for d in range(1, period):
            if period % d == 0 and pl_iterate(m, p, d) == p:
                prime = d
                break
        out.append((p, prime))
    return PeriodicReport(period=period, points=tuple(out),
                          segments=tuple((a, b) for a, b in segments))


@dataclass(frozen=True)
class DensityReport:
    epsilon: Fraction
    n_max: int
    covered_fraction: Fraction
    cells: int
    uncovered: tuple[Interval, ...]
    period_reached: int  # coverage completed at this period (or n_max)


def periodic_density_report(m: PLMap, epsilon: Fraction | str,
                            n_max: int) -> DensityReport:
    """Fraction of epsilon-cells containing a periodic point of period <= n_max.

    Periods are accumulated in increasing order with early exit on full
    coverage, which keeps the composed maps small for expanding fixtures.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    charge("power", n_max)
    lo, hi = m.domain
    cells = -((lo - hi) // epsilon)  # ceil((hi-lo)/eps)
    cells = int(cells)
    covered = [False] * cells

    def cell_range(a: Fraction, b: Fraction) -> range:
        first = max(0, int((a - lo) // epsilon))
        last = min(cells - 1, int((b - lo) // epsilon))
        return range(first, last + 1)

    power = None
    reached = 0
    for n in range(1, n_max + 1):
        power = m if power is None else pl_compose(m, power)
        pts, segs = _fixed_of(power)
        for p in pts:
            for c in cell_range(p, p):
                covered[c] = True
        for a, b in segs:
            for c in cell_range(a, b):
                covered[c] = True
        reached = n
        if all(covered):
            break
    uncovered = []
    i = 0
    while i < cells:
        if not covered[i]:
            j = i
            while j + 1 < cells and not covered[j + 1]:
                j += 1
            uncovered.append((lo + i * epsilon, min(hi, lo + (j + 1) * epsilon)))
            i = j + 1
        i += 1
    return DensityReport(
        epsilon=epsilon, n_max=n_max,
        covered_fraction=Fraction(sum(covered), cells),
        cells=cells, uncovered=tuple(uncovered), period_reached=reached,
    )


# ---------------------------------------------------------------------------
# Hitting sets on a window.

@dataclass(frozen=True)
class HittingSet:
    window: WindowSet
    tag: str
    approximate: bool = False


def _iterate_images(m: PLMap, u: Interval, n_max: int) -> list[Interval]:
    charge("iter_steps", n_max)
    images = []
    cur = (Fraction(u[0]), Fraction(u[1]))
    for _ in range(n_max):
        cur = pl_image(m, cur)
        images.append(cur)
    return images


def sensitivity_hitting_set(m: PLMap, u: Interval, delta: Fraction | str,
                            n_max: int) -> HittingSet:
    """{n in [1, N] : diam(f^n(U)) > delta}, exact, strict comparison."""
    delta = Fraction(delta)
    members = []
    for n, (a, b) in enumerate(_iterate_images(m, u, n_max), start=1):
        if b - a > delta:
            members.append(n)
    return HittingSet(WindowSet(n_max + 1, tuple(members)), tag=f"sensitivity(delta={delta})")


def intervals_meet(a: Interval, b: Interval, strict: bool = False) -> bool:
    lo = max(a[0], b[0])
    hi = min(a[1], b[1])
    return lo < hi if strict else lo <= hi


def transitivity_hitting_set(m: PLMap, u: Interval, v: Interval, n_max: int,
                             strict: bool = False) -> HittingSet:
    """{n in [1, N] : f^n(U) meets V}; boundary touches count unless strict."""
    v = (Fraction(v[0]), Fraction(v[1]))
    members = []
    for n, img in enumerate(_iterate_images(m, u, n_max), start=1):
        if intervals_meet(img, v, strict):
            members.append(n)
    return HittingSet(WindowSet(n_max + 1, tuple(members)), tag="transitivity")


def leo_check(m: PLMap, u: Interval, n_max: int) -> int | None:
    """Least n* with f^n(U) equal to the whole domain for all n in [n*, N];
    None when no such stabilization is observed on the window."""
    full = m.domain
    images = _iterate_images(m, u, n_max)
    last_bad = 0
    for n, img in enumerate(images, start=1):
        if img != full:
            last_bad = n
    if last_bad == n_max:
        return None
    return last_bad + 1


# ---------------------------------------------------------------------------
# Sampled fallback for maps given as point functions.

class SampledMap:
    """Grid-sampled stand-in for a map that is not piecewise linear.

    Diameters and hits are estimated from forward orbits of sample points,
    so every reported member is genuine and missed members are possible
    (one-sided error); reports carry approximate=True.
    """

    def __init__(self, func: Callable[[float], float], lo: float, hi: float,
                 mesh: float = 1e-3):
        if not lo < hi:
            raise ValueError("need lo < hi")
        if mesh <= 0 or mesh > (hi - lo):
            raise ValueError("bad sampling mesh")
        self.func = func
        self.lo = float(lo)
        self.hi = float(hi)
        self.mesh = float(mesh)

    def samples(self, u: tuple[float, float]) -> list[float]:
        a, b = max(self.lo, float(u[0])), min(self.hi, float(u[1]))
        if a > b:
            raise ValueError("empty interval")
        n = max(2, int(round((b - a) / self.mesh)) + 1)
        return [a + (b - a) * i / (n - 1) for i in range(n)]


def sampled_sensitivity(sm: SampledMap, u: tuple[float, float], delta: float,
                        n_max: int) -> HittingSet:
    charge("iter_steps", n_max)
    pts = sm.samples(u)
    members = []
    for n in range(1, n_max + 1):
        pts = [sm.func(x) for x in pts]
        if max(pts) - min(pts) > delta:
            members.append(n)
    return HittingSet(WindowSet(n_max + 1, tuple(members)),
                      tag=f"sensitivity(delta={delta})", approximate=True)


def sampled_transitivity(sm: SampledMap, u: tuple[float, float],
                         v: tuple[float, float], n_max: int) -> HittingSet:
    charge("iter_steps", n_max)
    pts = sm.samples(u)
    lo, hi = float(v[0]), float(v[1])
    members = []
    for n in range(1, n_max + 1):
        pts = [sm.func(x) for x in pts]
        if any(lo <= x <= hi for x in pts):
            members.append(n)
    return HittingSet(WindowSet(n_max + 1, tuple(members)),
                      tag="transitivity", approximate=True)


# ---------------------------------------------------------------------------
# Whole-map survey: sensitivity + transitivity over an interval grid, dense
# periodic points, and the per-family chaos verdicts.

@dataclass(frozen=True)
class SurveyParams:
    cells: int = 10
    margin: Fraction = Fraction(1, 100)
    delta: Fraction = Fraction(1, 2)
    n_steps: int = 64
    family: FamilyParams = FamilyParams(gap=16, block=8, cofinite_head=16, burnin=8)
    density_epsilon: Fraction = Fraction(1, 16)
    density_n_max: int = 10

    def grid(self, m: PLMap) -> list[Interval]:
        lo, hi = m.domain
        width = (hi - lo) / self.cells
        if 2 * self.margin >= width:
            raise ValueError("margin too large for the cell width")
        out = []
        for k in range(self.cells):
            a = lo + k * width + self.margin
            b = lo + (k + 1) * width - self.margin
            out.append((a, b))
        return out


@dataclass(frozen=True)
class ChaosSurvey:
    map_name: str
    params: SurveyParams
    fixed_points: tuple[Fraction, ...]
    fixed_segments: tuple[Interval, ...]
    sensitivity: tuple[tuple[Interval, FamilyVerdict], ...]
    transitivity: tuple[tuple[int, int, FamilyVerdict], ...]
    density: DensityReport
    verdicts: dict[str, bool]      # family name -> chaos triple passes
    anomalies: tuple[str, ...]


FAMILY_CHECKS = {
    "Fs": lambda v: v.syndetic,
    "Ft": lambda v: v.thick,
    "Fts": lambda v: v.thickly_syndetic,
    "Fcf": lambda v: v.cofinite,
}


def devaney_report(m: PLMap, params: SurveyParams | None = None,
                   map_name: str = "") -> ChaosSurvey:
    """Window-scoped chaos survey: for each family F, the verdict is pass iff
    every transitivity set and every sensitivity set over the grid lies in F
    and the periodic-point cells are fully covered.

    The consistency flag mirrors the implication "F-transitive + dense
    periodic points => F-sensitive": an anomaly is recorded (never raised)
    when transitivity and density pass but sensitivity fails.
    """
    params = params or SurveyParams()
    grid = params.grid(m)
    sens = []
    for u in grid:
        hs = sensitivity_hitting_set(m, u, params.delta, params.n_steps)
        sens.append((u, setfam.classify(hs.window, params.family)))
    trans = []
    for i, u in enumerate(grid):
        for j, v in enumerate(grid):
            hs = transitivity_hitting_set(m, u, v, params.n_steps)
            trans.append((i, j, setfam.classify(hs.window, params.family)))
    density = periodic_density_report(m, params.density_epsilon, params.density_n_max)
    density_pass = density.covered_fraction == 1
    fixed_pts, fixed_segs = _fixed_of(m)
    verdicts = {}
    anomalies = []
    for fam, check in FAMILY_CHECKS.items():
        all_trans = all(check(v) for _, _, v in trans)
        all_sens = all(check(v) for _, v in sens)
        verdicts[fam] = all_trans and all_sens and density_pass
        if all_trans and density_pass and not all_sens:
            anomalies.append(
                f"{fam}: transitivity and dense periodicity hold on the window "
                f"but sensitivity does not")
    return ChaosSurvey(
        map_name=map_name, params=params,
        fixed_points=tuple(fixed_pts), fixed_segments=tuple(fixed_segs),
        sensitivity=tuple(sens), transitivity=tuple(trans),
        density=density, verdicts=verdicts, anomalies=tuple(anomalies),
    )
