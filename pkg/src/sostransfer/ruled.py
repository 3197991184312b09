"""Blow-up transfer schedules and quadratic degree bounds for ruled surfaces.

All data is reduced to four integers: the anticanonical degree of the
hyperplane class, the self-pairing of the hyperplane with its adjoint, the
structure-sheaf Euler characteristic of the blow-up, and the nef threshold
ell.  The two margin evaluators decide one-step transfers on the blow-up;
the schedule builder assembles the full ladder from dH down to (d-1)H and
the degree bound replays ladders down to a base degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class RuledDataError(ValueError):
    """Invalid ruled-surface data."""


class ScheduleError(ValueError):
    """No valid schedule at this degree; carries the failing constraint."""


@dataclass(frozen=True)
class RuledData:
    """Numeric invariants of an embedded ruled surface and its blow-up.

    minusK_dot_H is -K.H > 0 (equal on the surface and its blow-up at a
    point), H_dot_HplusK = H.(H+K) = 2g - 2 for the sectional genus g, chiO
    the Euler characteristic of the structure sheaf (1 - genus of the base
    curve), and ell the smallest multiplier making ell*H - K big and nef.
    ell_trusted marks values supplied by the caller rather than derived from
    intersection numbers.
    """

    minusK_dot_H: int
    H_dot_HplusK: int
    chiO: int
    ell: int
    ell_trusted: bool = False

    def __post_init__(self) -> None:
        if self.minusK_dot_H < 1:
            raise RuledDataError("the hyperplane class must pair positively with -K")
        if self.H_dot_HplusK % 2 != 0:
            raise RuledDataError("H.(H+K) must be even (it equals 2g - 2)")
        if self.chiO > 1:
            raise RuledDataError("chi(O) exceeds 1: the surface cannot be ruled")
        if self.ell < 0:
            raise RuledDataError("ell must be nonnegative")

    @property
    def sectional_genus(self) -> int:
        return self.H_dot_HplusK // 2 + 1

    @property
    def elliptic_mode(self) -> bool:
        """Sectional genus one on a nonrational surface: the two-step ladder applies."""
        return self.H_dot_HplusK == 0 and self.chiO <= 0

    def to_json_dict(self) -> dict:
        return {
            "minusK_dot_H": self.minusK_dot_H,
            "H_dot_HplusK": self.H_dot_HplusK,
            "chiO": self.chiO,
            "ell": self.ell,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RuledData":
        try:
            return cls(
                int(data["minusK_dot_H"]),
                int(data["H_dot_HplusK"]),
                int(data["chiO"]),
                int(data["ell"]),
                ell_trusted=True,
            )
        except KeyError as exc:
            raise RuledDataError(f"missing field {exc.args[0]!r}") from None


def nef_threshold(
    a_squared: int,
    a_dot_k: int,
    k_squared: int,
    negative_classes: Sequence[tuple[int, int]] = (),
) -> tuple[int, bool]:
    """Smallest ell >= 0 with (ell*H - K_Z) big and nef on the blow-up.

    The square is ell^2 A^2 - 2 ell A.K + K^2 - 1; positivity of the square
    plus positivity against the supplied negative classes (given as pairs
    (H.N, K_Z.N)) realizes the Nakai test.  Without negative-class data the
    returned flag is False and the value is a square-positivity threshold
    the caller must trust.
    """
    if a_squared <= 0:
        raise RuledDataError("A^2 must be positive for an ample class")
    ell = 0
    while True:
        square = ell * ell * a_squared - 2 * ell * a_dot_k + k_squared - 1
        if square > 0 and all(ell * hn - kn > 0 for hn, kn in negative_classes):
            return ell, bool(negative_classes)
        ell += 1
        if ell > 4 * (abs(a_dot_k) + abs(k_squared) + 2):
            raise RuledDataError("no nef threshold found; data is inconsistent")


def exceptional_margin(data: RuledData, d: int, m: int, k: int) -> int:
    """Margin of the step from dH - mE to dH - (m+k)E.

    Positive means the deeper divisor supports multipliers for the shallower
    one.  Requires d >= 2m + k + ell.
    """
    if k < 1:
        raise ScheduleError("k must be positive")
    if m < 0:
        raise ScheduleError("m must be nonnegative")
    if d < 2 * m + k + data.ell:
        raise ScheduleError("degree too small")
    return 2 * d * data.minusK_dot_H - (2 * m + k) * (k + 1) - data.chiO


def descent_margin(data: RuledData, d: int, m: int) -> int:
    """Margin of the final step from dH - mE to (d-1)H.  Requires d >= 2m + ell."""
    if m < 0:
        raise ScheduleError("m must be nonnegative")
    if d < 2 * m + data.ell:
        raise ScheduleError("degree too small")
    return (1 - 2 * d) * data.H_dot_HplusK + m * (m - 1) - data.chiO


def minimal_transfer_s(data: RuledData) -> int:
    """Smallest positive integer s with s * (-K.H) > H.(H+K)."""
    s = 1
    while s * data.minusK_dot_H <= data.H_dot_HplusK:
        s += 1
    return s


def minimal_transfer_t(s: int) -> int:
    """Smallest t with 1/2 + ... + 1/(t+1) > 2(1 + sqrt(s)), exactly.

    The rational partial sum is tracked through scaled-integer lower/upper
    bounds (the comparison against 2 + 2 sqrt(s) squares both sides, so it
    stays in integers); only if the bounds ever straddle the threshold does
    the code fall back to one exact rational evaluation.  The partial sum is
    never equal to the threshold, so the decision is always exact.
    """
    scale = 1 << 64
    target = 4 * s * scale * scale
    lo = 0  # floor-scaled partial sum; true value lies in [lo, lo + t]
    t = 0
    while True:
        t += 1
        lo += scale // (t + 1)
        hi = lo + t
        lo_shift = lo - 2 * scale
        hi_shift = hi - 2 * scale
        if hi_shift <= 0 or hi_shift * hi_shift <= target:
            continue  # definitely below the threshold
        if lo_shift > 0 and lo_shift * lo_shift > target:
            return t  # definitely above
        total = sum(Fraction(1, i) for i in range(2, t + 2))
        if total > 2 and (total - 2) ** 2 > 4 * s:
            return t


@dataclass(frozen=True)
class Schedule:
    """A validated ladder dH, dH - m_1 E, ..., dH - m_t E, (d-1)H.

    In elliptic mode the ladder is the two-step one (k = [2]); s and
    generic_t always carry the generic ladder parameters for reporting.
    """

    d: int
    s: int
    generic_t: int
    k: tuple[int, ...]
    m: tuple[int, ...]  # m_0 = 0, m_j = k_1 + ... + k_j
    step_margins: tuple[int, ...]
    final_margin: int
    mode: str  # "generic" | "elliptic"

    @property
    def t(self) -> int:
        return len(self.k)

    @property
    def ladder(self) -> tuple[tuple[int, int], ...]:
        """Divisor ladder as (H-coefficient, E-coefficient) pairs."""
        rungs = [(self.d, 0)]
        rungs += [(self.d, -mj) for mj in self.m[1:]]
        rungs.append((self.d - 1, 0))
        return tuple(rungs)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "s": self.s,
            "t": self.t,
            "generic_t": self.generic_t,
            "k": list(self.k),
            "ladder": [list(r) for r in self.ladder],
            "step_margins": list(self.step_margins),
            "final_margin": self.final_margin,
            "mode": self.mode,
        }


def _isqrt_div(value: int, q: int) -> int:
    """floor(sqrt(value)/q) for value >= 0, q >= 1, exactly."""
    return math.isqrt(value // (q * q))


def build_schedule(data: RuledData, d: int) -> Schedule:
    """Construct and verify the transfer ladder from dH to (d-1)H.

    Generic mode picks each k_j as the largest integer at most
    sqrt(L)/2j - 1 for L = 2d(-K.H) - chi(O), verifies the companion lower
    bound sqrt(L)/2(j+1) <= k_j, and evaluates every step margin directly.
    Elliptic mode validates the short ladder dH, dH - 2E, (d-1)H.
    """
    s = minimal_transfer_s(data)
    generic_t = minimal_transfer_t(s)
    if data.elliptic_mode:
        m1 = exceptional_margin(data, d, 0, 2)
        m2 = descent_margin(data, d, 2)
        if m1 <= 0 or m2 <= 0:
            raise ScheduleError(f"d too small: elliptic margins ({m1}, {m2})")
        return Schedule(d, s, generic_t, (2,), (0, 2), (m1,), m2, "elliptic")
    lam = 2 * d * data.minusK_dot_H - data.chiO
    if lam < 0:
        raise ScheduleError("d too small: negative ladder budget")
    ks: list[int] = []
    ms = [0]
    margins: list[int] = []
    for j in range(1, generic_t + 1):
        kj = _isqrt_div(lam, 2 * j) - 1
        if kj < 1:
            raise ScheduleError(f"d too small: empty k-interval at step {j}")
        if 4 * (j + 1) * (j + 1) * kj * kj < lam:
            raise ScheduleError(f"d too small: k_{j} misses its lower bound")
        margin = exceptional_margin(data, d, ms[-1], kj)
        if margin <= 0:
            raise ScheduleError(f"d too small: step {j} margin {margin}")
        ks.append(kj)
        ms.append(ms[-1] + kj)
        margins.append(margin)
    final = descent_margin(data, d, ms[-1])
    if final <= 0:
        raise ScheduleError(f"d too small: final margin {final}")
    return Schedule(d, s, generic_t, tuple(ks), tuple(ms), tuple(margins), final, "generic")


def _schedule_ok(data: RuledData, d: int) -> bool:
    try:
        build_schedule(data, d)
        return True
    except ScheduleError:
        return False


def minimal_d(data: RuledData, window: int = 10) -> int:
    """Smallest d such that schedules exist for every degree in [d, d+window].

    The window guards against non-monotone boundary effects near the first
    working degree; margins grow linearly in d, so a threshold exists.
    """

    def pred(d: int) -> bool:
        return all(_schedule_ok(data, dd) for dd in range(d, d + window + 1))

    hi = 1
    while not pred(hi):
        hi *= 2
        if hi > 1 << 40:
            raise ScheduleError("no working degree found")
    lo = hi // 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class DegreeBound:
    """Total multiplier degree of the replayed ladder chain."""

    d: int
    d0: int
    total_H_degree: int
    steps_counted: int
    steps_per_level: int
    steps_quoted: int  # the looser (t+2)(d-d0) step count quoted alongside the chain


def multiplier_degree_bound(data: RuledData, d: int, d0: int, check_minimal: bool = True) -> DegreeBound:
    """Exact total H-degree of the multiplier chain from dH down to d0 H.

    Every level delta in (d0, d] is transferred by its own validated
    schedule; the multiplier of each step lives on twice the step's target
    divisor, so it contributes that target's H-coefficient.  The base-case
    constant is kept symbolic (zero here).  Two independent accountings (sum
    while building, and a replay over the stored ladders) must agree; both
    are computed and compared.
    """
    if d < d0:
        raise ScheduleError("d must be at least d0")
    if check_minimal:
        dmin = minimal_d(data)
        if d0 < dmin:
            raise ScheduleError(f"d0 below the minimal applicable degree {dmin}")
    schedules = []
    running = 0
    steps = 0
    for delta in range(d, d0, -1):
        sched = build_schedule(data, delta)
        schedules.append(sched)
        running += sched.t * delta + (delta - 1)
        steps += sched.t + 1
    replay = sum(abs(rung[0]) for sched in schedules for rung in sched.ladder[1:])
    if replay != running:
        raise ScheduleError("accumulate and replay accountings disagree")
    t_for_r = schedules[0].generic_t if schedules else minimal_transfer_t(minimal_transfer_s(data))
    return DegreeBound(
        d=d,
        d0=d0,
        total_H_degree=running,
        steps_counted=steps,
        steps_per_level=(schedules[0].t + 1) if schedules else 0,
        steps_quoted=(t_for_r + 2) * (d - d0),
    )


# -- example data ----------------------------------------------------------------


def genus_example_data(kind: str, g: int = 0, m: int = 0) -> RuledData:
    """Preset invariants for the worked ruled-surface families.

    "elliptic_segre": the product of an elliptic curve with a line in its
    degree-6 Segre embedding (sectional genus 1, chi(O) = 0, ell = 1).

    "canonical_times_line": the product of a non-hyperelliptic genus-g curve
    with a line, embedded by m times (section + canonical fiber); here
    -K.H = m(2g-2) and H.(H+K) = (2m^2 - m)(2g-2), so the step count grows
    with m.
    """
    if kind == "elliptic_segre":
        ell, fully_checked = nef_threshold(6, -6, 0, ())
        return RuledData(6, 0, 0, ell, ell_trusted=not fully_checked)
    if kind == "canonical_times_line":
        if g < 3 or m < 1:
            raise RuledDataError("need genus >= 3 and multiplier m >= 1")
        omega = 2 * g - 2
        ell, fully_checked = nef_threshold(m * m * 2 * omega, -m * omega, 8 * (1 - g), ())
        return RuledData(m * omega, (2 * m * m - m) * omega, 1 - g, ell, ell_trusted=not fully_checked)
    raise RuledDataError(f"unknown example kind {kind!r}")
