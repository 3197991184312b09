"""Polygon-level transfer criterion, iterative pipelines, and plan search.

The one-step criterion compares the lattice-point count of 2Q plus the total
reduced component count h of the differences ``P \\ (Q+m)`` against the
interior count of P + Q.  Chains of passing steps end at a polygon of a
minimal-degree toric surface: a Lawrence prism or twice the unit triangle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .lattice import (
    LatticePolygon,
    TranslateContainmentError,
    DegeneratePolygonError,
    dilate,
    interior_lattice_point_count,
    is_lawrence_prism,
    is_twice_unit_triangle,
    lattice_point_count,
    minkowski_sum,
    rectangle,
    reduced_component_total,
    veronese_triangle,
    wide_prism,
)


class ToricTransferError(ValueError):
    """Base error for the toric transfer layer."""


class NoPlanError(ToricTransferError):
    """No valid plan found; carries the best partial chain."""

    def __init__(self, message: str, partial_steps=()):
        super().__init__(message)
        self.partial_steps = tuple(partial_steps)


class PipelineStepError(ToricTransferError):
    """An iterative pipeline step failed its check (transcription bug)."""

    def __init__(self, message: str, p=None, q=None, verdict=None):
        super().__init__(message)
        self.p, self.q, self.verdict = p, q, verdict


@dataclass(frozen=True)
class TransferVerdict:
    """Outcome of the one-step polygon criterion."""

    count_2Q: int
    h: int
    interior_PQ: int
    holds: bool
    margin: int

    def __post_init__(self) -> None:
        if self.margin != self.count_2Q + self.h - self.interior_PQ:
            raise ToricTransferError("margin must equal count_2Q + h - interior_PQ")
        if self.holds != (self.margin > 0):
            raise ToricTransferError("holds must mirror margin > 0")


@dataclass(frozen=True)
class PlanStep:
    p: LatticePolygon
    q: LatticePolygon
    verdict: TransferVerdict
    note: str = ""


@dataclass(frozen=True)
class TransferPlan:
    """A chained transfer: every step passes, consecutive polygons match,
    and the terminal polygon belongs to a minimal-degree toric surface."""

    steps: tuple[PlanStep, ...]
    terminal: LatticePolygon
    terminal_kind: str  # "lawrence_prism" | "twice_unit_triangle"
    total_multiplier_degree: int

    def validate(self) -> None:
        for a, b in itertools.pairwise(self.steps):
            if a.q != b.p:
                raise ToricTransferError("steps must chain: next P is previous Q")
        for s in self.steps:
            if not s.verdict.holds:
                raise ToricTransferError("plan contains a failing step")
        if self.steps and self.steps[-1].q != self.terminal:
            raise ToricTransferError("terminal must be the last step's Q")
        if self.terminal_kind == "lawrence_prism":
            if is_lawrence_prism(self.terminal) is None:
                raise ToricTransferError("terminal is not a Lawrence prism")
        elif self.terminal_kind == "twice_unit_triangle":
            if not is_twice_unit_triangle(self.terminal):
                raise ToricTransferError("terminal is not twice the unit triangle")
        else:
            raise ToricTransferError(f"unknown terminal kind {self.terminal_kind!r}")


def transfer_check(p: LatticePolygon, q: LatticePolygon, workers: int = 1) -> TransferVerdict:
    """One-step criterion: does Q support multipliers for P?

    Requires that no lattice translate of P sits inside Q; when that
    hypothesis fails the criterion is inapplicable (raised, not False).
    """
    if p.dim != 2 or q.dim != 2:
        raise DegeneratePolygonError("the criterion needs full-dimensional polygons")
    return _transfer_check_cached(p, q, workers)


@lru_cache(maxsize=None)
def _transfer_check_cached(p: LatticePolygon, q: LatticePolygon, workers: int) -> TransferVerdict:
    h = reduced_component_total(p, q, workers=workers)
    count_2q = lattice_point_count(dilate(q, 2))
    interior_pq = interior_lattice_point_count(minkowski_sum(p, q))
    margin = count_2q + h - interior_pq
    return TransferVerdict(count_2q, h, interior_pq, margin > 0, margin)


# -- closed forms for the classic ternary iteration ---------------------------


def _binom2(n: int) -> int:
    return n * (n - 1) // 2 if n >= 2 else 0


def veronese_step_counts(d: int) -> tuple[int, int]:
    """Closed-form counts for the classic step dΔ -> (d-2)Δ."""
    if d < 3:
        raise ToricTransferError("classic step needs degree at least 3")
    return _binom2(2 * d - 2), _binom2(2 * d - 3)


def hilbert_classic_bound(d: int) -> int:
    """Total multiplier degree of the classic degree-lowering iteration."""
    if d < 3:
        raise ToricTransferError("classic bound needs degree at least 3")
    return d * (d - 2) // 2 if d % 2 == 0 else (d - 1) ** 2 // 2


def trapezoid(d: int, m: int) -> LatticePolygon:
    """The trapezoid cut from the degree-d triangle: x >= 0, 0 <= y <= d-m,
    x + y <= d.  Twice it holds degree-2d forms vanishing to order 2m at a
    torus-fixed point."""
    if m < 0 or d < 0 or m > d:
        raise ToricTransferError("trapezoid needs 0 <= m <= d")
    return LatticePolygon([(0, 0), (d, 0), (m, d - m), (0, d - m)])


def trapezoid_count_2q(d: int, m: int) -> int:
    """Closed-form lattice count of 2*T(d, m)."""
    return _binom2(2 * d + 2) - _binom2(2 * m + 1)


def _trapezoid_pair_margin0(d1: int, m1: int, d2: int, m2: int) -> int:
    """Criterion margin for T(d1,m1) vs T(d2,m2) with h ignored (a lower bound)."""
    interior = _binom2(d1 + d2 - 1) - _binom2(m1 + m2)
    return trapezoid_count_2q(d2, m2) - interior


# -- degree functional ---------------------------------------------------------


def ternary_degree(q: LatticePolygon) -> int:
    """Minimal k with Q inside a translate of the degree-k triangle."""
    xs = [v.x for v in q.vertices]
    ys = [v.y for v in q.vertices]
    return max(v.x + v.y for v in q.vertices) - min(xs) - min(ys)


def step_multiplier_degree(q: LatticePolygon, context: str) -> int:
    """Declared per-step multiplier degree.

    Ternary context: twice the minimal triangle degree containing Q up to
    translation.  Biform context: the side sum of Q's bounding box (the chain
    through shrinking squares then totals d(d-1), matching the product
    multiplier's degree on the doubled embedding).
    """
    if context == "ternary":
        return 2 * ternary_degree(q)
    if context == "biform":
        xmin, ymin, xmax, ymax = q.bounding_box
        return (xmax - xmin) + (ymax - ymin)
    raise ToricTransferError(f"unknown degree context {context!r}")


def _is_terminal(q: LatticePolygon) -> Optional[str]:
    if is_lawrence_prism(q) is not None:
        return "lawrence_prism"
    if is_twice_unit_triangle(q):
        return "twice_unit_triangle"
    return None


# -- classic pipeline ----------------------------------------------------------


def hilbert_classic_plan(d: int) -> TransferPlan:
    """The classic chain dΔ -> (d-2)Δ -> ... down to Δ or 2Δ, each step checked."""
    if d < 3:
        raise ToricTransferError("classic plan needs degree at least 3")
    steps: list[PlanStep] = []
    cur = d
    while _is_terminal(veronese_triangle(cur)) is None:
        nxt = cur - 2
        p, q = veronese_triangle(cur), veronese_triangle(nxt)
        verdict = transfer_check(p, q)
        if not verdict.holds:
            raise PipelineStepError("classic step failed", p, q, verdict)
        steps.append(PlanStep(p, q, verdict, note="classic"))
        cur = nxt
    terminal = veronese_triangle(cur)
    kind = _is_terminal(terminal)
    total = sum(step_multiplier_degree(s.q, "ternary") for s in steps)
    plan = TransferPlan(tuple(steps), terminal, kind, total)
    plan.validate()
    return plan


# -- improved ternary pipeline -------------------------------------------------

_CLOSE_AT_OR_BELOW = 5
_BITE_PROBE_SLACK = 3

_state_memo: dict[tuple[int, int], tuple[PlanStep, ...]] = {}


def _closing_candidates(dmax: int) -> list[LatticePolygon]:
    """Terminal polygons worth trying from a trapezoid of degree dmax,
    ordered by multiplier degree then shape."""
    cands: list[tuple[tuple[int, int, int], LatticePolygon]] = []
    seen = set()
    for k in (1, 2):
        tri = veronese_triangle(k)
        cands.append(((k, k, k), tri))
        seen.add(tri)
    for h1 in range(1, dmax + 1):
        for h2 in range(0, h1 + 1):
            q = wide_prism(h1, h2)
            if q.dim != 2 or q in seen:
                continue
            seen.add(q)
            cands.append(((max(h1, h2 + 1), h1, h2), q))
    cands.sort(key=lambda t: t[0])
    return [q for _, q in cands]


def _pipeline_from_state(d: int, m: int) -> tuple[PlanStep, ...]:
    """Steps of the corner-biting pipeline from the trapezoid state T(d, m).

    Bites take the largest corner cut whose geometric check passes (probed a
    little above the h-free closed-form bound); degree drops go three at a
    time while the cut lasts; once the degree is small a direct step onto a
    prism or twice the unit triangle closes the chain.
    """
    key = (d, m)
    if key in _state_memo:
        return _state_memo[key]
    cur = trapezoid(d, m)
    if _is_terminal(cur) is not None:
        _state_memo[key] = ()
        return ()
    steps: Optional[tuple[PlanStep, ...]] = None
    if d <= _CLOSE_AT_OR_BELOW:
        for cand in _closing_candidates(d):
            try:
                verdict = transfer_check(cur, cand)
            except TranslateContainmentError:
                continue
            if verdict.holds:
                steps = (PlanStep(cur, cand, verdict, note="close"),)
                break
    if steps is None and m < 3:
        m_formula = m
        for m2 in range(m + 1, d):
            if _trapezoid_pair_margin0(d, m, d, m2) > 0:
                m_formula = m2
        chosen = None
        for m2 in range(min(d - 1, m_formula + _BITE_PROBE_SLACK), m, -1):
            verdict = transfer_check(cur, trapezoid(d, m2))
            if verdict.holds:
                chosen = (m2, verdict)
                break
        if chosen is None:
            raise PipelineStepError(f"no corner bite passes at T({d},{m})", cur)
        m2, verdict = chosen
        steps = (PlanStep(cur, trapezoid(d, m2), verdict, note="bite"),) + _pipeline_from_state(d, m2)
    elif steps is None:
        q = trapezoid(d - 3, m - 3)
        verdict = transfer_check(cur, q)
        if not verdict.holds:
            raise PipelineStepError(f"degree-drop step failed at T({d},{m})", cur, q, verdict)
        steps = (PlanStep(cur, q, verdict, note="reduce"),) + _pipeline_from_state(d - 3, m - 3)
    _state_memo[key] = steps
    return steps


def improved_ternary_bound(d: int) -> tuple[TransferPlan, int]:
    """Corner-biting pipeline for degree-2d ternary forms.

    Returns the validated plan together with its total degree in polygon
    units (the sum over steps of the minimal triangle degree of each
    multiplier's support; the asymptotic leading term of that total is d²/6).
    The plan itself carries the full polynomial-degree total, twice as large.
    """
    if d < 5:
        raise ToricTransferError("improved pipeline needs degree at least 5")
    steps = _pipeline_from_state(d, 0)
    if not steps:
        raise ToricTransferError("pipeline produced no steps")
    terminal = steps[-1].q
    kind = _is_terminal(terminal)
    if kind is None:
        raise PipelineStepError("pipeline terminal is not minimal-degree", terminal)
    full_total = sum(step_multiplier_degree(s.q, "ternary") for s in steps)
    plan = TransferPlan(steps, terminal, kind, full_total)
    plan.validate()
    return plan, full_total // 2


# -- generic planner -----------------------------------------------------------

_FAMILIES = ("squares", "rectangles", "trapezoids", "prisms", "veronese", "exhaustive")


def _infer_context(p: LatticePolygon) -> str:
    xmin, ymin, xmax, ymax = p.bounding_box
    if p == rectangle(xmax - xmin, ymax - ymin).translate((xmin, ymin)):
        return "biform"
    return "ternary"


def _family_candidates(cur: LatticePolygon, families: Sequence[str], context: str) -> list[LatticePolygon]:
    cur_deg = step_multiplier_degree(cur, context)
    out: list[LatticePolygon] = []
    seen: set[LatticePolygon] = set()

    def add(q: LatticePolygon) -> None:
        if q.dim == 2 and q not in seen and step_multiplier_degree(q, context) < cur_deg:
            seen.add(q)
            out.append(q)

    xmin, ymin, xmax, ymax = cur.bounding_box
    w, hgt = xmax - xmin, ymax - ymin
    kmax = ternary_degree(cur)
    for fam in families:
        if fam == "squares":
            for k in range(1, max(w, hgt)):
                add(rectangle(k, k))
        elif fam == "rectangles":
            for a in range(1, w + 1):
                for b in range(1, hgt + 1):
                    add(rectangle(a, b))
        elif fam == "veronese":
            for k in range(1, kmax):
                add(veronese_triangle(k))
        elif fam == "trapezoids":
            for dd in range(2, kmax):
                for mm in range(0, dd):
                    add(trapezoid(dd, mm))
        elif fam == "prisms":
            for h1 in range(1, kmax + 1):
                for h2 in range(0, h1 + 1):
                    add(wide_prism(h1, h2))
        elif fam == "exhaustive":
            for q in iter_convex_subpolygons(min(kmax, 6)):
                add(q)
        else:
            raise ToricTransferError(f"unknown candidate family {fam!r}")
    return out


def plan_transfer(
    p: LatticePolygon,
    families: Sequence[str] = ("trapezoids", "rectangles", "prisms", "veronese"),
    objective: str = "min_total_degree",
    context: Optional[str] = None,
    workers: int = 1,
) -> TransferPlan:
    """Greedy chain search over parametric candidate families.

    At each state the one-step lookahead tries terminal polygons first (by
    ascending multiplier degree); otherwise the cheapest passing candidate is
    taken.  Ties break toward larger margin, then the lexicographically
    smallest canonical vertex list, so plans are reproducible.
    """
    if objective not in ("min_total_degree", "min_steps"):
        raise ToricTransferError(f"unknown objective {objective!r}")
    if not families:
        raise ToricTransferError("candidate families must be nonempty")
    if p.dim != 2:
        raise DegeneratePolygonError("plan source must be full-dimensional")
    ctx = context or _infer_context(p)
    steps: list[PlanStep] = []
    cur = p
    guard = 0
    while _is_terminal(cur) is None:
        guard += 1
        if guard > 10_000:
            raise NoPlanError("no plan: search did not terminate", steps)
        candidates = _family_candidates(cur, families, ctx)
        candidates.sort(key=lambda q: (step_multiplier_degree(q, ctx), q.vertices))
        chosen: Optional[tuple[LatticePolygon, TransferVerdict]] = None
        for terminal_only in (True, False):
            pool = [q for q in candidates if (_is_terminal(q) is not None) == terminal_only]
            level: Optional[int] = None
            best: Optional[tuple[tuple[int, tuple], LatticePolygon, TransferVerdict]] = None
            for q in pool:
                deg = step_multiplier_degree(q, ctx)
                if level is not None and deg > level:
                    break
                try:
                    verdict = transfer_check(cur, q, workers=workers)
                except TranslateContainmentError:
                    continue
                if not verdict.holds:
                    continue
                key = ((-verdict.margin), q.vertices)
                if level is None:
                    level = deg
                if best is None or key < best[0]:
                    best = (key, q, verdict)
            if best is not None:
                chosen = (best[1], best[2])
                break
        if chosen is None:
            raise NoPlanError("no plan", steps)
        q, verdict = chosen
        steps.append(PlanStep(cur, q, verdict))
        cur = q
    kind = _is_terminal(cur)
    total = sum(step_multiplier_degree(s.q, ctx) for s in steps)
    plan = TransferPlan(tuple(steps), cur, kind, total)
    plan.validate()
    return plan


# -- exhaustive enumeration of small convex polygons ---------------------------


def _angular_sorted_primitive_dirs(k: int) -> list[tuple[int, int]]:
    from math import gcd as _g

    dirs = set()
    for x in range(-k, k + 1):
        for y in range(-k, k + 1):
            if (x, y) != (0, 0) and _g(abs(x), abs(y)) == 1:
                dirs.add((x, y))
    import functools

    def cmp(a, b):
        ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
        hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
        if ha != hb:
            return ha - hb
        cr = a[0] * b[1] - a[1] * b[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def iter_convex_subpolygons(k: int) -> Iterator[LatticePolygon]:
    """All full-dimensional convex lattice polygons fitting (up to lattice
    translation) inside the degree-k triangle, k <= 6.

    A canonical convex polygon is an angularly ordered chain of edge vectors
    summing to zero; the chain is built depth-first over primitive directions
    with positive lengths, pruning on the triangle-degree bound.
    """
    if k < 1:
        return
    if k > 6:
        raise ToricTransferError("exhaustive enumeration is limited to degree 6")
    dirs = _angular_sorted_primitive_dirs(k)
    n = len(dirs)
    seen: set[tuple] = set()

    def norm(points: list[tuple[int, int]]) -> Optional[LatticePolygon]:
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        if max(px + py for px, py in points) - min(xs) - min(ys) > k:
            return None
        shift = (-min(xs), -min(ys))
        poly = LatticePolygon([(px + shift[0], py + shift[1]) for px, py in points])
        return poly

    def fits(points: list[tuple[int, int]]) -> bool:
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return max(px + py for px, py in points) - min(xs) - min(ys) <= k

    results: list[LatticePolygon] = []

    def dfs(idx: int, pos: tuple[int, int], points: list[tuple[int, int]], used: int) -> None:
        if used >= 3 and pos == (0, 0):
            poly = norm(points)
            if poly is not None and poly.dim == 2 and poly.vertices not in seen:
                seen.add(poly.vertices)
                results.append(poly)
            # continue: longer chains may also close later with other dirs
        if idx >= n:
            return
        for j in range(idx, n):
            dx, dy = dirs[j]
            length = 1
            while True:
                npos = (pos[0] + dx * length, pos[1] + dy * length)
                npoints = points + [npos]
                if not fits(npoints):
                    break
                dfs(j + 1, npos, npoints, used + 1)
                length += 1

    dfs(0, (0, 0), [(0, 0)], 0)
    yield from results


# -- JSON ----------------------------------------------------------------------


def verdict_to_json_dict(v: TransferVerdict) -> dict:
    return {
        "count2q": v.count_2Q,
        "h": v.h,
        "interior": v.interior_PQ,
        "holds": v.holds,
        "margin": v.margin,
    }


_KIND_TO_JSON = {"lawrence_prism": "lawrence_prism", "twice_unit_triangle": "2delta"}
_KIND_FROM_JSON = {v: k for k, v in _KIND_TO_JSON.items()}


def plan_to_json_dict(plan: TransferPlan) -> dict:
    return {
        "steps": [
            {
                "p": s.p.to_json_dict(),
                "q": s.q.to_json_dict(),
                "count2q": s.verdict.count_2Q,
                "h": s.verdict.h,
                "interior": s.verdict.interior_PQ,
                "margin": s.verdict.margin,
                "note": s.note,
            }
            for s in plan.steps
        ],
        "terminal": plan.terminal.to_json_dict(),
        "terminal_kind": _KIND_TO_JSON[plan.terminal_kind],
        "total_degree": plan.total_multiplier_degree,
    }


def plan_from_json_dict(data: dict) -> TransferPlan:
    steps = []
    for s in data["steps"]:
        margin = s["margin"]
        verdict = TransferVerdict(s["count2q"], s["h"], s["interior"], margin > 0, margin)
        steps.append(
            PlanStep(
                LatticePolygon.from_json_dict(s["p"]),
                LatticePolygon.from_json_dict(s["q"]),
                verdict,
                note=s.get("note", ""),
            )
        )
    return TransferPlan(
        tuple(steps),
        LatticePolygon.from_json_dict(data["terminal"]),
        _KIND_FROM_JSON[data["terminal_kind"]],
        data["total_degree"],
    )
