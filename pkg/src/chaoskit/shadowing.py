"""Pseudo-orbit tracing probes and chain-recurrence graphs in binary64.

A delta-pseudo-orbit is a finite point sequence whose consecutive steps obey
d(f(x_n), x_{n+1}) < delta; the trace set of a candidate start x against the
orbit is {n : d(f^n(x), p_n) < eps}.  All float comparisons that sit on the
strict side get FLOAT_SLACK = 2^-40 of headroom so that exact-arithmetic
equalities do not flip on rounding.

The probes are grid searches and their verdicts are grid-relative:

  pass        at some delta of the ladder, every sampled pseudo-orbit had a
              grid tracer meeting the target (evidence, not proof)
  falsified   at every delta, a constructed challenge orbit defeated every
              candidate on the grid; challenges are built so that failure is
              structural (e.g. an orbit that crosses between two invariant
              halves can be traced by no point at all, grid or not)
  undetermined  anything in between (random failures only)

Chain graphs discretize the delta-chain relation: nodes are grid points,
with an edge i -> j whenever d(f(p_i), p_j) < delta.  Chain transitivity is
strong connectivity; chain mixing additionally needs an aperiodic graph
(cycle-length gcd 1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Sequence

import numpy as np

from . import interval, setfam
from .budgets import charge
from .interval import PLMap
from .setfam import CENSORED, FamilyParams, WindowSet

FLOAT_SLACK = 2.0 ** -40

JUMP_FRACTION = 0.9  # jumps are capped at this fraction of delta


class IntervalSystem:
    """A piecewise-linear map pushed down to binary64 for bulk iteration."""

    def __init__(self, m: PLMap, name: str = ""):
        self.pl = m
        self.name = name
        self.xs = np.array([float(x) for x in m.xs])
        self.ys = np.array([float(y) for y in m.ys])
        self.lo = float(m.lo)
        self.hi = float(m.hi)

    def clamp(self, x: float) -> float:
        return min(self.hi, max(self.lo, x))

    def step(self, x: float) -> float:
        return float(np.interp(self.clamp(x), self.xs, self.ys))

    def step_array(self, arr: np.ndarray) -> np.ndarray:
        return np.interp(np.clip(arr, self.lo, self.hi), self.xs, self.ys)

    def grid(self, n: int) -> np.ndarray:
        if n < 2:
            raise ValueError("grid needs at least two points")
        return np.linspace(self.lo, self.hi, n)

    def random_point(self, rng: random.Random) -> float:
        return rng.uniform(self.lo, self.hi)


class DiscreteSystem:
    """A finite metric space (points on the real line) with an index map.

    step snaps its argument to the nearest listed point and returns that
    point's image; useful as a worked fixture where pseudo-orbits with
    delta below the minimum spacing are exact orbits.
    """

    def __init__(self, points: Sequence[float], images: Sequence[int],
                 name: str = ""):
        if len(points) != len(images) or len(points) < 1:
            raise ValueError("need matching points/images")
        if any(not 0 <= i < len(points) for i in images):
            raise ValueError("image indices out of range")
        self.points = np.array([float(p) for p in points])
        self.images = tuple(images)
        self.name = name
        self.lo = float(self.points.min())
        self.hi = float(self.points.max())

    def clamp(self, x: float) -> float:
        return min(self.hi, max(self.lo, x))

    def _nearest(self, x: float) -> int:
        return int(np.abs(self.points - x).argmin())

    def step(self, x: float) -> float:
        return float(self.points[self.images[self._nearest(x)]])

    def step_array(self, arr: np.ndarray) -> np.ndarray:
        idx = np.abs(arr[:, None] - self.points[None, :]).argmin(axis=1)
        image = np.array(self.images)
        return self.points[image[idx]]

    def grid(self, n: int) -> np.ndarray:
        return self.points.copy()

    def random_point(self, rng: random.Random) -> float:
        return float(rng.choice(list(self.points)))


def two_point_swap() -> DiscreteSystem:
    return DiscreteSystem([0.0, 1.0], [1, 0], name="two_point_swap")


def orbit_points(system, x0: float, length: int) -> np.ndarray:
    """True orbit x0, f(x0), ..., f^(length-1)(x0)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    charge("iter_steps", length)
    out = np.empty(length)
    out[0] = system.clamp(x0)
    for n in range(1, length):
        out[n] = system.step(out[n - 1])
    return out


# ---------------------------------------------------------------------------
# Pseudo-orbits.

SCHEMES = ("zero", "uniform", "bounded", "adversarial")


@dataclass(eq=False)
class PseudoOrbit:
    points: np.ndarray
    delta: float
    scheme: str
    seed: str
    label: str
    valid_set: WindowSet = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)


def recompute_valid_set(system, points: np.ndarray, delta: float) -> WindowSet:
    """Indices n with d(f(p_n), p_{n+1}) < delta + slack, horizon len-1."""
    if len(points) < 2:
        raise ValueError("a pseudo-orbit needs at least two points")
    steps = system.step_array(np.asarray(points[:-1], dtype=float))
    hit = np.abs(steps - points[1:]) < delta + FLOAT_SLACK
    return WindowSet(len(points) - 1, tuple(int(i) for i in np.flatnonzero(hit)))


def make_pseudo_orbit(system, delta: float, length: int, scheme: str = "uniform",
                      seed: str = "0", x0: float | None = None,
                      target: float | None = None, label: str = "") -> PseudoOrbit:
    """Generate a delta-pseudo-orbit with jumps capped at 0.9*delta.

    Schemes: zero (true orbit), uniform (jump ~ U[-cap, cap]), bounded
    (random extreme jumps +-cap), adversarial (steer toward the target point
    as fast as the cap allows).  Points are clamped into the space, which can
    only shrink a jump.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if length < 2:
        raise ValueError("length must be >= 2")
    if scheme == "adversarial" and target is None:
        raise ValueError("adversarial scheme needs a target")
    charge("iter_steps", length)
    rng = random.Random(f"{seed}/{scheme}/{length}")
    cap_ = JUMP_FRACTION * delta
    pts = np.empty(length)
    pts[0] = system.clamp(x0 if x0 is not None else system.random_point(rng))
    for n in range(1, length):
        fx = system.step(pts[n - 1])
        if scheme == "zero":
            jump = 0.0
        elif scheme == "uniform":
            jump = rng.uniform(-cap_, cap_)
        elif scheme == "bounded":
            jump = cap_ if rng.random() < 0.5 else -cap_
        else:
            jump = min(cap_, max(-cap_, target - fx))
        pts[n] = system.clamp(fx + jump)
    return PseudoOrbit(
        points=pts, delta=delta, scheme=scheme, seed=seed,
        label=label or scheme,
        valid_set=recompute_valid_set(system, pts, delta),
    )


# ---------------------------------------------------------------------------
# Tracing.

@dataclass(frozen=True)
class TraceReport:
    x0: float
    eps: float
    hits: WindowSet
    cardinality: int
    full: bool


def trace_set(system, orbit: PseudoOrbit, x0: float, eps: float) -> TraceReport:
    """Hit times {n : d(f^n(x0), p_n) < eps + slack} of a single candidate."""
    pts = orbit_points(system, x0, len(orbit))
    hit = np.abs(pts - orbit.points) < eps + FLOAT_SLACK
    hits = WindowSet(len(orbit), tuple(int(i) for i in np.flatnonzero(hit)))
    return TraceReport(x0=float(x0), eps=eps, hits=hits,
                       cardinality=len(hits), full=len(hits) == len(orbit))


def _trace_mask(system, orbit: PseudoOrbit, candidates: np.ndarray,
                eps: float) -> np.ndarray:
    charge("iter_steps", len(orbit))
    tol = eps + FLOAT_SLACK
    cur = np.array(candidates, dtype=float)
    mask = np.empty((len(cur), len(orbit)), dtype=bool)
    for n in range(len(orbit)):
        mask[:, n] = np.abs(cur - orbit.points[n]) < tol
        if n < len(orbit) - 1:
            cur = system.step_array(cur)
    return mask


OBJECTIVES = ("max_cardinality", "min_max_gap", "max_lower_density")


@dataclass(frozen=True)
class BestTracer:
    objective: str
    score: float
    report: TraceReport


def best_tracer(system, orbit: PseudoOrbit, candidates: np.ndarray, eps: float,
                objective: str = "max_cardinality") -> BestTracer:
    """Grid-search the best tracing start among the candidates.

    Ties break toward the first (smallest) candidate, so results are
    deterministic for ascending grids.
    """
    mask = _trace_mask(system, orbit, candidates, eps)
    n_steps = mask.shape[1]
    if objective == "max_cardinality":
        scores = mask.sum(axis=1)
        k = int(scores.argmax())
        score = float(scores[k])
    elif objective == "min_max_gap":
        worst = n_steps + 1
        gaps = np.full(len(candidates), worst)
        for i in range(len(candidates)):
            idx = np.flatnonzero(mask[i])
            if len(idx):
                lead = int(idx[0])
                gaps[i] = max([lead] + list(np.diff(idx))) if len(idx) > 1 else lead
        k = int(gaps.argmin())
        score = float(-gaps[k])
    elif objective == "max_lower_density":
        burnin = min(8, n_steps)
        counts = np.cumsum(mask, axis=1)
        ns = np.arange(burnin, n_steps + 1)
        dens = counts[:, burnin - 1:] / ns
        lows = dens.min(axis=1)
        k = int(lows.argmax())
        score = float(lows[k])
    else:
        raise ValueError(f"unknown objective {objective!r}")
    return BestTracer(objective=objective, score=score,
                      report=trace_set(system, orbit, float(candidates[k]), eps))


TARGETS = ("full", "cofinite", "syndetic", "thick", "thickly_syndetic",
           "piecewise_syndetic")

_TARGET_OBJECTIVE = {
    "full": "max_cardinality",
    "cofinite": "max_cardinality",
    "syndetic": "min_max_gap",
    "thickly_syndetic": "min_max_gap",
    "thick": "max_cardinality",
    "piecewise_syndetic": "max_cardinality",
}


def target_met(hits: WindowSet, target: str, params: FamilyParams) -> bool:
    if target == "full":
        return len(hits) == hits.horizon
    v = setfam.classify(hits, params)
    try:
        return bool(getattr(v, target))
    except AttributeError:
        raise ValueError(f"unknown target {target!r}")


# ---------------------------------------------------------------------------
# The probe.

@dataclass(frozen=True)
class Challenge:
    """A family of adversarial pseudo-orbits, one per delta."""

    name: str
    x0_of_delta: Callable[[float], float]
    scheme: str = "adversarial"
    target: float | None = None


def crossing_challenge() -> Challenge:
    """Defeats tracing for the two-invariant-halves map on [0, 1].

    The start (1/2 - 1.15*delta)/3 maps to just below the midpoint; steered
    upward at the jump cap, the orbit crosses into the upper half by step two
    and is then pushed toward 1 (the upper half is invariant, so it never
    returns).  Any real point within eps of the start has its whole true
    orbit in the lower half, hence misses the later points near 1 whenever
    eps < 1/6; so no tracer exists at all.
    """
    return Challenge(
        name="crossing",
        x0_of_delta=lambda d: (0.5 - 1.15 * d) / 3.0,
        scheme="adversarial",
        target=1.0,
    )


@dataclass(frozen=True)
class ProbeRow:
    delta: float
    label: str
    valid_count: int
    tracer: float
    cardinality: int
    trace_max_gap: int | None
    tags: tuple[str, ...]
    ok: bool
    challenge: bool


@dataclass(frozen=True)
class ProbeResult:
    eps: float
    target: str
    length: int
    n_candidates: int
    trials: int
    params: FamilyParams
    deltas: tuple[float, ...]
    rows: tuple[ProbeRow, ...]
    verdict: str                 # pass | falsified | undetermined
    delta_pass: float | None     # largest ladder delta whose row set passed
    witness: ProbeRow | None


def fg_shadowing_probe(system, eps: float, deltas: Sequence[float], length: int,
                       trials: int, target: str = "full",
                       params: FamilyParams | None = None,
                       n_candidates: int = 1001, seed: str = "probe",
                       challenges: Sequence[Challenge] = ()) -> ProbeResult:
    """Ladder probe: for each delta, sample pseudo-orbits and grid-search
    tracers; the target family is checked on each best trace set.

    The ladder is processed in descending order.  A pass at some delta is a
    pass overall (smaller deltas only shrink the pseudo-orbit supply); the
    probe is falsified when a challenge defeats the grid at every delta.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    params = params or FamilyParams()
    objective = _TARGET_OBJECTIVE[target]
    candidates = system.grid(n_candidates)
    ladder = sorted(set(float(d) for d in deltas), reverse=True)
    if not ladder:
        raise ValueError("empty delta ladder")
    rows = []
    delta_pass = None
    challenge_beaten_everywhere = True
    for delta in ladder:
        orbits = []
        for t in range(trials):
            scheme = ("uniform", "bounded", "adversarial")[t % 3]
            rng = random.Random(f"{seed}/pick/{delta!r}/{t}")
            tgt = system.random_point(rng) if scheme == "adversarial" else None
            orbits.append((make_pseudo_orbit(
                system, delta, length, scheme=scheme,
                seed=f"{seed}/{delta!r}/{t}", target=tgt,
                label=f"trial{t}:{scheme}"), False))
        for ch in challenges:
            orbits.append((make_pseudo_orbit(
                system, delta, length, scheme=ch.scheme,
                seed=f"{seed}/{delta!r}/{ch.name}", x0=ch.x0_of_delta(delta),
                target=ch.target, label=ch.name), True))
        all_ok = True
        challenge_failed_here = False
        for orbit, is_challenge in orbits:
            bt = best_tracer(system, orbit, candidates, eps, objective)
            hits = bt.report.hits
            ok = target_met(hits, target, params)
            gap = setfam.max_gap(hits, CENSORED) if hits.members else None
            verdict = setfam.classify(hits, params) if hits.members else None
            rows.append(ProbeRow(
                delta=delta, label=orbit.label,
                valid_count=len(orbit.valid_set),
                tracer=bt.report.x0, cardinality=bt.report.cardinality,
                trace_max_gap=gap,
                tags=verdict.tags() if verdict else (),
                ok=ok, challenge=is_challenge,
            ))
            if not ok:
                all_ok = False
                if is_challenge:
                    challenge_failed_here = True
        if all_ok and delta_pass is None:
            delta_pass = delta
        if not challenge_failed_here:
            challenge_beaten_everywhere = False
    if delta_pass is not None:
        verdict = "pass"
        witness = None
    elif challenges and challenge_beaten_everywhere:
        verdict = "falsified"
        witness = next(r for r in reversed(rows) if r.challenge and not r.ok)
    else:
        verdict = "undetermined"
        witness = next((r for r in reversed(rows) if not r.ok), None)
    return ProbeResult(
        eps=eps, target=target, length=length, n_candidates=len(candidates),
        trials=trials, params=params, deltas=tuple(ladder), rows=tuple(rows),
        verdict=verdict, delta_pass=delta_pass, witness=witness,
    )


# ---------------------------------------------------------------------------
# Chain graphs.

@dataclass(frozen=True)
class ChainGraph:
    points: tuple[float, ...]
    delta: float
    succ: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)


def chain_graph(system, n_nodes: int, delta: float) -> ChainGraph:
    """Edges i -> j whenever d(f(p_i), p_j) < delta + slack."""
    pts = system.grid(n_nodes)
    charge("enum_nodes", len(pts))
    fx = system.step_array(pts)
    close = np.abs(fx[:, None] - pts[None, :]) < delta + FLOAT_SLACK
    succ = tuple(tuple(int(j) for j in np.flatnonzero(close[i]))
                 for i in range(len(pts)))
    return ChainGraph(points=tuple(float(p) for p in pts), delta=delta, succ=succ)


def _reverse(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    rev: list[list[int]] = [[] for _ in succ]
    for u, outs in enumerate(succ):
        for v in outs:
            rev[v].append(u)
    return rev


def _finish_order(succ: Sequence[Sequence[int]]) -> list[int]:
    n = len(succ)
    seen = [False] * n
    order = []
    for root in range(n):
        if seen[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        seen[root] = True
        while stack:
            u, i = stack.pop()
            if i < len(succ[u]):
                stack.append((u, i + 1))
                v = succ[u][i]
                if not seen[v]:
                    seen[v] = True
                    stack.append((v, 0))
            else:
                order.append(u)
    return order


def strongly_connected_components(g: ChainGraph) -> list[list[int]]:
    """Kosaraju's two-pass algorithm, iterative."""
    order = _finish_order(g.succ)
    rev = _reverse(g.succ)
    comp = [-1] * len(g)
    comps: list[list[int]] = []
    for root in reversed(order):
        if comp[root] != -1:
            continue
        cid = len(comps)
        comps.append([])
        stack = [root]
        comp[root] = cid
        while stack:
            u = stack.pop()
            comps[cid].append(u)
            for v in rev[u]:
                if comp[v] == -1:
                    comp[v] = cid
                    stack.append(v)
    return comps


def chain_transitive_check(g: ChainGraph) -> bool:
    return len(strongly_connected_components(g)) == 1


def chain_period(g: ChainGraph) -> int | None:
    """gcd of cycle lengths of a strongly connected graph (None otherwise).

    Computed as gcd over all edges u->v of dist(u)+1-dist(v) for BFS levels
    from an arbitrary root; 1 means aperiodic.
    """
    if not chain_transitive_check(g):
        return None
    dist = [-1] * len(g)
    dist[0] = 0
    queue = [0]
    while queue:
        nxt = []
        for u in queue:
            for v in g.succ[u]:
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        queue = nxt
    g_val = 0
    for u, outs in enumerate(g.succ):
        for v in outs:
            g_val = gcd(g_val, dist[u] + 1 - dist[v])
    return abs(g_val) if g_val else None


def chain_mixing_check(g: ChainGraph) -> bool:
    return chain_transitive_check(g) and chain_period(g) == 1


def chain_recurrent_nodes(g: ChainGraph) -> tuple[int, ...]:
    """Nodes lying on some cycle: SCC of size > 1, or a self-loop."""
    comps = strongly_connected_components(g)
    out = []
    for comp in comps:
        if len(comp) > 1:
            out.extend(comp)
        else:
            u = comp[0]
            if u in g.succ[u]:
                out.append(u)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Combined periodic-density + tracing report.

@dataclass(frozen=True)
class PChaosReport:
    map_name: str
    density: interval.DensityReport
    probe: ProbeResult
    aux_probe: ProbeResult
    chain_delta: float
    chain_nodes: int
    chain_transitive: bool
    chain_mixing: bool
    evidence: bool
    notes: tuple[str, ...]


def p_chaos_report(m: PLMap, map_name: str, *, eps: float,
                   deltas: Sequence[float], length: int, trials: int,
                   n_candidates: int = 1001, chain_delta: float = 0.02,
                   chain_nodes: int = 129, seed: str = "p-chaos",
                   params: FamilyParams | None = None,
                   density_epsilon=None, density_n_max: int = 10,
                   challenges: Sequence[Challenge] = ()) -> PChaosReport:
    """Dense periodic points (exact) plus tracing probes plus chain structure.

    The headline probe targets full traces; the auxiliary panel relaxes the
    target to piecewise-syndetic trace sets and is reported alongside without
    being folded into the evidence flag, since the relaxed notion is strictly
    weaker and a pass there decides nothing about the headline one.
    """
    from fractions import Fraction
    density_epsilon = Fraction(density_epsilon) if density_epsilon else Fraction(1, 16)
    density = interval.periodic_density_report(m, density_epsilon, density_n_max)
    system = IntervalSystem(m, name=map_name)
    probe = fg_shadowing_probe(system, eps, deltas, length, trials,
                               target="full", params=params,
                               n_candidates=n_candidates, seed=seed,
                               challenges=challenges)
    aux = fg_shadowing_probe(system, eps, deltas, length, trials,
                             target="piecewise_syndetic", params=params,
                             n_candidates=n_candidates, seed=seed + "/aux",
                             challenges=challenges)
    g = chain_graph(system, chain_nodes, chain_delta)
    transitive = chain_transitive_check(g)
    mixing = chain_mixing_check(g)
    evidence = density.covered_fraction == 1 and probe.verdict == "pass"
    notes = (
        f"periodic points cover {density.covered_fraction} of the "
        f"{density.cells} cells at scale {density.epsilon}",
        f"tracing probe (target=full): {probe.verdict}",
        f"auxiliary panel (target=piecewise_syndetic): {aux.verdict} "
        f"(reported, not asserted)",
        f"chain graph ({chain_nodes} nodes, delta={chain_delta}): "
        f"transitive={'true' if transitive else 'false'} "
        f"mixing={'true' if mixing else 'false'}",
    )
    return PChaosReport(
        map_name=map_name, density=density, probe=probe, aux_probe=aux,
        chain_delta=chain_delta, chain_nodes=chain_nodes,
        chain_transitive=transitive, chain_mixing=mixing,
        evidence=evidence, notes=notes,
    )
