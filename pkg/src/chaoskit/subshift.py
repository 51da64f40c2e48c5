"""Binary subshifts at desk scale: spacing shifts, Sturmian words, languages.

Words are plain str over the alphabet {'0','1'}; the empty word is allowed
and spelled '-' in text interfaces.  Shift-space points x, y carry the metric
2^{-J(x,y)} with J the least index where they differ; for equal-length words
word_distance implements the same formula.

A spacing shift is the set of 0/1 sequences whose 1-positions have all
pairwise differences inside a prescribed set P of positive integers.  On a
window, P is a WindowSet and a gap can only be decided when it is below the
horizon of P; otherwise a horizon error is raised rather than guessed.

A Sturmian word is coded from an irrational rotation: x_n = 1 iff
frac(n*alpha) lies in [1-alpha, 1).  The irrational alpha is represented by a
high-precision rational surrogate plus an error bound ulp; every emitted
symbol is certified, meaning the exact rational comparison has margin larger
than the accumulated uncertainty n*ulp (otherwise the spec is rejected or a
precision error is raised).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import setfam
from .budgets import BudgetError, cap, charge
from .setfam import FamilyParams, FamilyVerdict, WindowSet

EMPTY_WORD_TEXT = "-"


def check_word(w: str) -> str:
    if any(c not in "01" for c in w):
        raise ValueError(f"word must be over alphabet 0/1, got {w!r}")
    return w


def parse_word(text: str) -> str:
    """Parse the text spelling of a word ('-' is the empty word)."""
    if text == EMPTY_WORD_TEXT:
        return ""
    return check_word(text)


def format_word(w: str) -> str:
    return w if w else EMPTY_WORD_TEXT


def word_distance(x: str, y: str) -> Fraction:
    """2^(-j) with j the least differing index; 0 for equal words."""
    check_word(x)
    check_word(y)
    if len(x) != len(y) or not x:
        raise ValueError("word_distance needs two non-empty words of equal length")
    for j, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return Fraction(1, 2 ** j)
    return Fraction(0)


def one_positions(w: str) -> list[int]:
    return [i for i, c in enumerate(w) if c == "1"]


def spacing_member(p_set: WindowSet, w: str) -> bool:
    """Gap criterion: every pairwise distance of 1-positions must lie in P.

    Raises a horizon error when some pairwise distance is >= P.horizon, since
    the window cannot decide such a gap.
    """
    check_word(w)
    ones = one_positions(w)
    for a_idx in range(len(ones)):
        for b_idx in range(a_idx + 1, len(ones)):
            g = ones[b_idx] - ones[a_idx]
            if g >= p_set.horizon:
                raise ValueError(
                    f"gap {g} not decidable below horizon {p_set.horizon}")
            if g not in p_set:
                return False
    return True


class FullShift:
    """Every binary sequence; the language is all words."""

    kind = "full"

    def accepts(self, w: str) -> bool:
        check_word(w)
        return True


class SpacingShift:
    """Sequences whose 1-positions have pairwise differences in P."""

    kind = "spacing"

    def __init__(self, p_set: WindowSet):
        self.p_set = p_set

    def accepts(self, w: str) -> bool:
        return spacing_member(self.p_set, w)


@dataclass(frozen=True)
class SturmianSpec:
    """Certified rational surrogate for the rotation number.

    alpha approximates the true irrational to within ulp.  Validity over
    prefix_len symbols requires every comparison frac(n*alpha) vs 1-alpha
    (and the wrap-around at 0/1) to have margin > (n+1)*ulp, which the
    constructor checks; an invalid surrogate is rejected outright.
    """

    alpha: Fraction
    ulp: Fraction
    prefix_len: int

    def __post_init__(self) -> None:
        if not (0 < self.alpha < 1):
            raise ValueError("alpha must lie in (0, 1)")
        if self.ulp <= 0:
            raise ValueError("ulp must be positive")
        if self.prefix_len < 1:
            raise ValueError("prefix_len must be >= 1")
        p, q = self.alpha.numerator, self.alpha.denominator
        threshold = q - p  # frac(n*alpha) >= 1-alpha  <=>  (n*p mod q) >= q-p
        for n in range(1, self.prefix_len):
            r = (n * p) % q
            margin = min(abs(r - threshold), r, q - r)
            if Fraction(margin, q) <= (n + 1) * self.ulp:
                raise ValueError(
                    f"surrogate too coarse: symbol {n} within precision budget "
                    f"of a coding boundary")


def golden_spec(prefix_len: int = 10_000) -> SturmianSpec:
    """Surrogate for alpha = (sqrt(5)-1)/2 from a Fibonacci convergent."""
    a, b = 1, 1
    while b < 4 * prefix_len ** 2:  # convergent error ~ 1/b^2 << 1/(n*b)
        a, b = b, a + b
    # a/b = F_k/F_{k+1} -> alpha, with |alpha - a/b| < 1/b^2.
    return SturmianSpec(alpha=Fraction(a, b), ulp=Fraction(1, b * b), prefix_len=prefix_len)


def sturmian_symbol(spec: SturmianSpec, n: int) -> int:
    """x_n = 1 iff frac(n*alpha) in [1-alpha, 1), certified."""
    if not 0 <= n < spec.prefix_len:
        raise ValueError(f"symbol index {n} outside certified range [0, {spec.prefix_len})")
    p, q = spec.alpha.numerator, spec.alpha.denominator
    return 1 if (n * p) % q >= q - p else 0


@lru_cache(maxsize=8)
def sturmian_prefix(spec: SturmianSpec, length: int | None = None) -> str:
    length = spec.prefix_len if length is None else length
    if length > spec.prefix_len:
        raise ValueError("prefix longer than the certified range")
    p, q = spec.alpha.numerator, spec.alpha.denominator
    t = q - p
    return "".join("1" if (n * p) % q >= t else "0" for n in range(length))


class SturmianShift:
    """Orbit closure of the coded rotation, observed through a finite prefix.

    accepts(w) means w occurs in the certified prefix; this is exact for
    the true Sturmian language up to the usual finite-window caveat (factors
    recur with bounded gaps, so a 10^4 prefix sees every short factor).
    """

    kind = "sturmian"

    def __init__(self, spec: SturmianSpec):
        self.spec = spec
        self._prefix = sturmian_prefix(spec)

    def accepts(self, w: str) -> bool:
        check_word(w)
        if len(w) > self.spec.prefix_len // 4:
            raise BudgetError("word too long for the certified prefix")
        return w == "" or w in self._prefix


Oracle = FullShift | SpacingShift | SturmianShift


def language(oracle, max_len: int, node_budget: int | None = None) -> set[str]:
    """All accepted words of length <= max_len, including the empty word.

    Enumerated by prefix-pruned depth-first search; subshift languages are
    factor-closed, hence prefix-closed, so rejected prefixes never extend.
    """
    charge("word_len", max_len)
    if isinstance(oracle, SturmianShift):
        if max_len > oracle.spec.prefix_len // 4:
            raise BudgetError("max_len too large for the certified prefix")
        prefix = sturmian_prefix(oracle.spec)
        out: set[str] = {""}
        for n in range(1, max_len + 1):
            for i in range(len(prefix) - n + 1):
                out.add(prefix[i:i + n])
        return out
    budget = cap("enum_nodes") if node_budget is None else node_budget
    visited = 0
    out = {""}
    stack = [""]
    while stack:
        w = stack.pop()
        if len(w) == max_len:
            continue
        for c in "01":
            visited += 1
            if visited > budget:
                raise BudgetError(f"language enumeration exceeded {budget} nodes")
            cand = w + c
            if oracle.accepts(cand):
                out.add(cand)
                stack.append(cand)
    return out


def _require_in_language(oracle, w: str) -> None:
    if w and not oracle.accepts(w):
        raise ValueError(f"word {format_word(w)} is not in the language")


def gap_set(oracle, u: str, v: str, n_max: int) -> WindowSet:
    """{|w| <= n_max : u w v is in the language}, as a WindowSet.

    For spacing shifts this is computed directly from the gap criterion
    (cross distances between the 1-positions of u and of v), with no word
    enumeration; the all-zero filler word witnesses admissibility.
    """
    check_word(u), check_word(v)
    charge("iter_steps", n_max)
    _require_in_language(oracle, u)
    _require_in_language(oracle, v)
    horizon = n_max + 1
    if isinstance(oracle, SpacingShift):
        p_set = oracle.p_set
        u_ones = one_positions(u)
        v_ones = one_positions(v)
        if u_ones and v_ones:
            worst = len(u) + n_max + v_ones[-1] - u_ones[0]
            if worst >= p_set.horizon:
                raise ValueError(
                    f"gap {worst} not decidable below horizon {p_set.horizon}")
        members = []
        for s in range(0, n_max + 1):
            if all((len(u) + s + j - i) in p_set for i in u_ones for j in v_ones):
                members.append(s)
        return WindowSet(horizon, tuple(members))
    if isinstance(oracle, FullShift):
        return setfam.full_window(horizon)
    if isinstance(oracle, SturmianShift):
        prefix = sturmian_prefix(oracle.spec)
        occ_u = _occurrences(prefix, u)
        occ_v = set(_occurrences(prefix, v))
        members = []
        for s in range(0, n_max + 1):
            off = len(u) + s
            if any(p + off in occ_v for p in occ_u):
                members.append(s)
        return WindowSet(horizon, tuple(members))
    # Generic fallback: depth-first over filler words, prefix-pruned.
    budget = cap("enum_nodes")
    visited = 0
    members = []
    for s in range(0, n_max + 1):
        stack = [u]
        found = False
        while stack and not found:
            w = stack.pop()
            if len(w) == len(u) + s:
                if oracle.accepts(w + v):
                    found = True
                continue
            for c in "01":
                visited += 1
                if visited > budget:
                    raise BudgetError("gap_set enumeration budget exceeded")
                cand = w + c
                if oracle.accepts(cand):
                    stack.append(cand)
        if found:
            members.append(s)
    return WindowSet(horizon, tuple(members))


def _occurrences(text: str, w: str) -> list[int]:
    if w == "":
        return list(range(len(text) + 1))
    out = []
    i = text.find(w)
    while i != -1:
        out.append(i)
        i = text.find(w, i + 1)
    return out


def _merged_word(u: str, v: str, n: int) -> str | None:
    """Word pinned by u at 0 and v at n, None if the overlap conflicts."""
    length = max(len(u), n + len(v))
    slots: list[str | None] = [None] * length
    for i, c in enumerate(u):
        slots[i] = c
    for j, c in enumerate(v):
        i = n + j
        if slots[i] is not None and slots[i] != c:
            return None
        slots[i] = c
    return "".join(c if c is not None else "0" for c in slots)


def cylinder_hitting_set(oracle, u: str, v: str, n_max: int) -> WindowSet:
    """{1 <= n <= n_max : shift^n(cylinder u) meets cylinder v}.

    For n >= |u| the pinned blocks do not overlap and membership reduces to
    the gap set; smaller n are decided by the direct overlap construction.
    Note the merged word fills free slots with 0, which is sound for spacing
    shifts and the full shift; for Sturmian oracles occurrences are searched
    instead.
    """
    check_word(u), check_word(v)
    _require_in_language(oracle, u)
    _require_in_language(oracle, v)
    horizon = n_max + 1
    members = set()
    if isinstance(oracle, SturmianShift):
        prefix = sturmian_prefix(oracle.spec)
        occ_u = _occurrences(prefix, u)
        occ_v = set(_occurrences(prefix, v))
        for n in range(1, n_max + 1):
            if any(p + n in occ_v for p in occ_u):
                members.add(n)
        return WindowSet(horizon, tuple(sorted(members)))
    for n in range(1, min(len(u), n_max + 1)):
        merged = _merged_word(u, v, n)
        if merged is not None and oracle.accepts(merged):
            members.add(n)
    if n_max >= len(u):
        gaps = gap_set(oracle, u, v, n_max - len(u))
        members.update(len(u) + s for s in gaps.members)
    return WindowSet(horizon, tuple(sorted(members)))


# ---------------------------------------------------------------------------
# Transitivity survey over all short cylinder pairs.

@dataclass(frozen=True)
class PairRow:
    u: str
    v: str
    gaps: WindowSet
    verdict: FamilyVerdict


@dataclass(frozen=True)
class TransitivityReport:
    word_len: int
    n_max: int
    params: FamilyParams
    rows: tuple[PairRow, ...]
    all_syndetic: bool
    all_thick: bool
    all_thickly_syndetic: bool
    all_cofinite: bool
    # For spacing shifts only: the defining set's own verdict, so reports can
    # show the necessity panel (P syndetic) next to the sufficiency panel
    # (P thickly syndetic) without asserting the open equivalence.
    p_verdict: FamilyVerdict | None = None


def fs_transitivity_report(oracle, word_len: int, n_max: int,
                           params: FamilyParams) -> TransitivityReport:
    """Classify gap_set(u, v) for every ordered pair of short language words."""
    words = sorted(w for w in language(oracle, word_len) if w)
    rows = []
    for u in words:
        for v in words:
            g = gap_set(oracle, u, v, n_max)
            rows.append(PairRow(u, v, g, setfam.classify(g, params)))
    p_verdict = None
    if isinstance(oracle, SpacingShift):
        p_verdict = setfam.classify(oracle.p_set, params)
    return TransitivityReport(
        word_len=word_len, n_max=n_max, params=params, rows=tuple(rows),
        all_syndetic=all(r.verdict.syndetic for r in rows),
        all_thick=all(r.verdict.thick for r in rows),
        all_thickly_syndetic=all(r.verdict.thickly_syndetic for r in rows),
        all_cofinite=all(r.verdict.cofinite for r in rows),
        p_verdict=p_verdict,
    )


# ---------------------------------------------------------------------------
# Dense periodic points for spacing shifts.

def dense_periodic_witness_ok(p_set: WindowSet, p: int, k: int) -> bool:
    """Check kN ∪ (kN+p) ∪ (kN-p), restricted to [1, horizon), lies in P."""
    if k < 1 or p < 1:
        raise ValueError("p and k must be positive")
    for m in range(1, (p_set.horizon + p) // k + 2):
        for t in (m * k, m * k + p, m * k - p):
            if 1 <= t < p_set.horizon and t not in p_set:
                return False
    return True


@dataclass(frozen=True)
class DensePeriodicReport:
    passed: bool
    witnesses: dict[int, int]
    failures: tuple[int, ...]
    skipped: tuple[int, ...]
    k_max: int


def spacing_dense_periodic(p_set: WindowSet, k_max: int = 128) -> DensePeriodicReport:
    """Search, for every p in P with p <= horizon/4, a modulus k <= k_max whose
    three arithmetic progressions stay inside P on the window.

    Tested p are capped at horizon/4 so the progressions are observed over a
    meaningful stretch; larger members are reported as skipped.
    """
    witnesses: dict[int, int] = {}
    failures = []
    skipped = []
    for p in p_set.members:
        if p < 1:
            continue
        if p > p_set.horizon // 4:
            skipped.append(p)
            continue
        for k in range(1, k_max + 1):
            if dense_periodic_witness_ok(p_set, p, k):
                witnesses[p] = k
                break
        else:
            failures.append(p)
    return DensePeriodicReport(
        passed=not failures, witnesses=witnesses,
        failures=tuple(failures), skipped=tuple(skipped), k_max=k_max,
    )


@dataclass(frozen=True)
class SpacingWitness:
    word: str
    member: bool
    k: int
    block_start: bool  # k starts a (|u|+|v|)-block of P


def spacing_witness(u: str, k: int, v: str, p_set: WindowSet) -> SpacingWitness:
    """Build z = u 0^k v and verify membership by the gap criterion.

    When k is the start of a (|u|+|v|)-block of P, every cross distance falls
    inside that block and membership is guaranteed; the report records whether
    that sufficient condition held.
    """
    check_word(u), check_word(v)
    if k < 0:
        raise ValueError("k must be >= 0")
    word = u + "0" * k + v
    need = len(u) + len(v)
    block = all(k + t in p_set for t in range(need)) if k + need - 1 < p_set.horizon else False
    return SpacingWitness(
        word=word,
        member=spacing_member(p_set, word),
        k=k,
        block_start=block,
    )


# ---------------------------------------------------------------------------
# Occurrence statistics and periodicity probe.

def occurrence_gaps(spec: SturmianSpec, w: str) -> WindowSet:
    """Start positions of w in the certified prefix, as a WindowSet."""
    check_word(w)
    if not w:
        raise ValueError("occurrence_gaps needs a non-empty word")
    if len(w) > spec.prefix_len // 4:
        raise BudgetError("word too long for the certified prefix")
    prefix = sturmian_prefix(spec)
    horizon = len(prefix) - len(w) + 1
    occ = [i for i in _occurrences(prefix, w) if i < horizon]
    return WindowSet(horizon, tuple(occ))


def periodicity_probe(oracle, max_len: int, power: int) -> bool:
    """True iff some non-empty word w with |w| <= max_len has w^power accepted."""
    if power < 2:
        raise ValueError("power must be >= 2")
    for w in sorted(language(oracle, max_len)):
        if not w:
            continue
        try:
            if oracle.accepts(w * power):
                return True
        except ValueError:
            # Undecidable gap at this horizon: treat as not witnessed.
            continue
    return False
