"""Exact geometry of convex lattice polygons.

Everything in this module is integer or rational arithmetic: convex hulls,
dilations, Minkowski sums, lattice-point counts, translate searches, and the
connected-component bookkeeping for set differences ``P \\ Q'`` that feeds the
toric transfer criterion.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence


class LatticeGeometryError(ValueError):
    """Base class for lattice-geometry errors."""


class EmptyPointSetError(LatticeGeometryError):
    """Raised when a hull is requested for an empty point set."""


class DegeneratePolygonError(LatticeGeometryError):
    """Raised when an operation requires a full-dimensional polygon."""


class EmptyDifferenceError(LatticeGeometryError):
    """Raised when ``P \\ Q'`` is empty because ``Q'`` contains ``P``."""


class TranslateContainmentError(LatticeGeometryError):
    """Raised when some lattice translate of P fits inside Q.

    The transfer criterion is inapplicable in that situation, which callers
    must distinguish from a negative verdict.
    """


class LatticePoint(NamedTuple):
    """A point of the integer lattice."""

    x: int
    y: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(-self.x, -self.y)

    def scaled(self, k: int) -> "LatticePoint":
        return LatticePoint(self.x * k, self.y * k)


def _as_point(p) -> LatticePoint:
    x, y = p
    if isinstance(x, bool) or isinstance(y, bool) or not isinstance(x, int) or not isinstance(y, int):
        raise LatticeGeometryError(f"non-integer coordinates: {p!r}")
    return LatticePoint(x, y)


def _cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> int:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _hull_vertices(points: Sequence[LatticePoint]) -> tuple[LatticePoint, ...]:
    """Strictly convex hull in CCW order, starting at the lex-min vertex.

    Collinear points are dropped so the vertex list is canonical.  Degenerate
    inputs yield a single point or the two endpoints of a segment.
    """
    pts = sorted(set(points))
    if not pts:
        raise EmptyPointSetError("empty point set")
    if len(pts) == 1:
        return (pts[0],)
    lower: list[LatticePoint] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[LatticePoint] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        # All points collinear: keep the two extreme endpoints.
        return (pts[0], pts[-1])
    return tuple(lower[:-1] + upper[:-1])


def _floor_div(num: int, den: int) -> int:
    if den < 0:
        num, den = -num, -den
    return num // den


def _ceil_div(num: int, den: int) -> int:
    if den < 0:
        num, den = -num, -den
    return -((-num) // den)


class LatticePolygon:
    """A convex polygon with integer vertices in canonical CCW form.

    Degenerate polygons (a single point, a segment) are representable; they
    are flagged by :attr:`dim` and rejected by the operations that need full
    dimension.
    """

    def __init__(self, vertices: Iterable) -> None:
        pts = [_as_point(p) for p in vertices]
        self.vertices: tuple[LatticePoint, ...] = _hull_vertices(pts)

    @classmethod
    def _from_canonical(cls, vertices: tuple[LatticePoint, ...]) -> "LatticePolygon":
        poly = object.__new__(cls)
        poly.vertices = vertices
        return poly

    # -- basic structure ---------------------------------------------------

    @property
    def dim(self) -> int:
        n = len(self.vertices)
        return 2 if n >= 3 else n - 1

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == 2

    @cached_property
    def twice_area(self) -> int:
        v = self.vertices
        n = len(v)
        if n < 3:
            return 0
        return sum(v[i].x * v[(i + 1) % n].y - v[(i + 1) % n].x * v[i].y for i in range(n))

    @cached_property
    def edges(self) -> tuple[tuple[LatticePoint, LatticePoint], ...]:
        v = self.vertices
        n = len(v)
        if n == 1:
            return ()
        if n == 2:
            return ((v[0], v[1]),)
        return tuple((v[i], v[(i + 1) % n]) for i in range(n))

    @cached_property
    def bounding_box(self) -> tuple[int, int, int, int]:
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(map(tuple, self.vertices))})"

    # -- point membership --------------------------------------------------

    def contains_point(self, p) -> bool:
        p = LatticePoint(*p)
        v = self.vertices
        if self.dim == 0:
            return p == v[0]
        if self.dim == 1:
            a, b = v
            if _cross(a, b, p) != 0:
                return False
            return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)
        return all(_cross(a, b, p) >= 0 for a, b in self.edges)

    def contains_polygon(self, other: "LatticePolygon") -> bool:
        return all(self.contains_point(p) for p in other.vertices)

    # -- rigid motions and scaling ------------------------------------------

    def translate(self, m) -> "LatticePolygon":
        m = LatticePoint(*m)
        return LatticePolygon._from_canonical(tuple(p + m for p in self.vertices))

    def reflect(self) -> "LatticePolygon":
        """The polygon -P (point reflection through the origin)."""
        return LatticePolygon(tuple(-p for p in self.vertices))

    def apply_unimodular(self, matrix: Sequence[Sequence[int]], shift=(0, 0)) -> "LatticePolygon":
        (a, b), (c, d) = matrix
        if a * d - b * c not in (1, -1):
            raise LatticeGeometryError("matrix is not unimodular")
        sx, sy = shift
        return LatticePolygon(
            [(a * p.x + b * p.y + sx, c * p.x + d * p.y + sy) for p in self.vertices]
        )

    # -- counting ------------------------------------------------------------

    @cached_property
    def boundary_lattice_point_count(self) -> int:
        if self.dim == 0:
            return 1
        if self.dim == 1:
            a, b = self.vertices
            return gcd(abs(b.x - a.x), abs(b.y - a.y)) + 1
        return sum(gcd(abs(b.x - a.x), abs(b.y - a.y)) for a, b in self.edges)

    def _row_span(self, y: int) -> Optional[tuple[int, int]]:
        """Integer x-range [lo, hi] of the slice at height y, or None."""
        lo: Optional[tuple[int, int]] = None  # exact fraction (num, den), den > 0
        hi: Optional[tuple[int, int]] = None

        def update(num: int, den: int) -> None:
            nonlocal lo, hi
            if den < 0:
                num, den = -num, -den
            if lo is None or num * lo[1] < lo[0] * den:
                lo = (num, den)
            if hi is None or num * hi[1] > hi[0] * den:
                hi = (num, den)

        for a, b in self.edges:
            if a.y == b.y:
                if a.y == y:
                    update(a.x, 1)
                    update(b.x, 1)
            elif min(a.y, b.y) <= y <= max(a.y, b.y):
                update(a.x * (b.y - a.y) + (y - a.y) * (b.x - a.x), b.y - a.y)
        if lo is None or hi is None:
            return None
        xlo = _ceil_div(*lo)
        xhi = _floor_div(*hi)
        if xlo > xhi:
            return None
        return xlo, xhi

    @cached_property
    def lattice_point_count(self) -> int:
        """Exact number of lattice points in the closed polygon.

        Computed by an exact row sweep, independently of Pick's identity, so
        the identity can serve as a test invariant.
        """
        if self.dim == 0:
            return 1
        if self.dim == 1:
            return self.boundary_lattice_point_count
        _, ymin, _, ymax = self.bounding_box
        total = 0
        for y in range(ymin, ymax + 1):
            span = self._row_span(y)
            if span is not None:
                total += span[1] - span[0] + 1
        return total

    @cached_property
    def interior_lattice_point_count(self) -> int:
        if self.dim < 2:
            return 0
        return self.lattice_point_count - self.boundary_lattice_point_count

    def lattice_points(self) -> Iterator[LatticePoint]:
        if self.dim == 0:
            yield self.vertices[0]
            return
        if self.dim == 1:
            a, b = self.vertices
            g = gcd(abs(b.x - a.x), abs(b.y - a.y))
            step = LatticePoint((b.x - a.x) // g, (b.y - a.y) // g)
            for i in range(g + 1):
                yield LatticePoint(a.x + i * step.x, a.y + i * step.y)
            return
        _, ymin, _, ymax = self.bounding_box
        for y in range(ymin, ymax + 1):
            span = self._row_span(y)
            if span is not None:
                for x in range(span[0], span[1] + 1):
                    yield LatticePoint(x, y)

    # -- edge data -----------------------------------------------------------

    @cached_property
    def edge_direction_multiset(self) -> dict[tuple[int, int], int]:
        """Primitive edge directions with total lattice length as multiplicity."""
        out: dict[tuple[int, int], int] = {}
        for a, b in self.edges:
            dx, dy = b.x - a.x, b.y - a.y
            g = gcd(abs(dx), abs(dy))
            key = (dx // g, dy // g)
            out[key] = out.get(key, 0) + g
        return out

    # -- JSON ----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"vertices": [[p.x, p.y] for p in self.vertices]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LatticePolygon":
        if not isinstance(data, dict) or "vertices" not in data:
            raise LatticeGeometryError("polygon JSON must be an object with a 'vertices' key")
        verts = data["vertices"]
        if not isinstance(verts, list) or not verts:
            raise LatticeGeometryError("polygon JSON needs a nonempty vertex list")
        return cls(verts)


@dataclass(frozen=True)
class ComponentCount:
    """Number of connected components of a set difference, plus the reduced count."""

    components: int
    reduced: int

    def __post_init__(self) -> None:
        if self.components < 0:
            raise LatticeGeometryError("negative component count")
        if self.reduced != max(self.components, 1) - 1:
            raise LatticeGeometryError("reduced count must be max(components,1) - 1")


# -- public operations -------------------------------------------------------


def convex_hull(points: Iterable) -> LatticePolygon:
    """Canonical CCW convex hull of a nonempty set of lattice points."""
    pts = list(points)
    if not pts:
        raise EmptyPointSetError("empty point set")
    return LatticePolygon(pts)


def dilate(poly: LatticePolygon, k: int) -> LatticePolygon:
    """The dilation kP for k >= 0; k = 0 collapses to the origin."""
    if k < 0:
        raise LatticeGeometryError("dilation factor must be nonnegative")
    if k == 0:
        return LatticePolygon([(0, 0)])
    return LatticePolygon([p.scaled(k) for p in poly.vertices])


def minkowski_sum(p: LatticePolygon, q: LatticePolygon) -> LatticePolygon:
    """Minkowski sum P + Q (hull of pairwise vertex sums)."""
    return LatticePolygon([a + b for a in p.vertices for b in q.vertices])


def lattice_point_count(poly: LatticePolygon) -> int:
    return poly.lattice_point_count


def interior_lattice_point_count(poly: LatticePolygon) -> int:
    return poly.interior_lattice_point_count


def contains_lattice_translate(p: LatticePolygon, q: LatticePolygon) -> Optional[LatticePoint]:
    """A witness m with P + m contained in Q, if one exists.

    The search box is derived from the bounding boxes: each vertex of P has to
    land inside Q, which pins m into a finite rectangle.
    """
    pxmin, pymin, pxmax, pymax = p.bounding_box
    qxmin, qymin, qxmax, qymax = q.bounding_box
    mx_lo, mx_hi = qxmin - pxmin, qxmax - pxmax
    my_lo, my_hi = qymin - pymin, qymax - pymax
    for mx in range(mx_lo, mx_hi + 1):
        for my in range(my_lo, my_hi + 1):
            m = LatticePoint(mx, my)
            if all(q.contains_point(v + m) for v in p.vertices):
                return m
    return None


def _inward_halfplanes(q: LatticePolygon) -> tuple[tuple[int, int, int], ...]:
    """(nx, ny, c) triples with interior given by nx*x + ny*y >= c."""
    planes = []
    for a, b in q.edges:
        nx = -(b.y - a.y)
        ny = b.x - a.x
        planes.append((nx, ny, nx * a.x + ny * a.y))
    return tuple(planes)


def _covered_block_count(
    p_edges: Sequence[tuple[int, int, int, int]],
    n_edges: int,
    planes: Sequence[tuple[int, int, int]],
    mx: int,
    my: int,
) -> int:
    """Number of maximal arcs of the boundary of P covered by Q + (mx, my).

    The boundary of P is parametrized by scalar position i + t along edge i.
    Each edge meets the convex translate in a single closed sub-interval,
    clipped in integer arithmetic; positions are exact fractions.  Touching
    intervals merge (closed-set semantics), including circularly.

    Sorting uses float keys, which is order-exact here: positions are
    fractions with numerator/denominator far below the 2^52 scale at which
    distinct small rationals could collide as floats.
    """
    intervals: list[tuple[int, int, int, int]] = []  # (s_num, s_den, e_num, e_den)
    for i, (ax, ay, dx, dy) in enumerate(p_edges):
        lo_n, lo_d = 0, 1
        hi_n, hi_d = 1, 1
        empty = False
        for nx, ny, c in planes:
            f0 = nx * ax + ny * ay - c - nx * mx - ny * my
            df = nx * dx + ny * dy
            if df == 0:
                if f0 < 0:
                    empty = True
                    break
            elif df > 0:
                # constraint t >= -f0/df
                if -f0 * lo_d > lo_n * df:
                    lo_n, lo_d = -f0, df
            else:
                # constraint t <= f0/(-df)
                if f0 * hi_d < hi_n * (-df):
                    hi_n, hi_d = f0, -df
        if empty or lo_n * hi_d > hi_n * lo_d:
            continue
        intervals.append((i * lo_d + lo_n, lo_d, i * hi_d + hi_n, hi_d))
    if not intervals:
        return 0
    if len(intervals) > 1:
        intervals.sort(key=lambda t: t[0] / t[1])
    first_s_num, first_s_den = intervals[0][0], intervals[0][1]
    cur_n, cur_d = intervals[0][2], intervals[0][3]
    blocks = 1
    for s_num, s_den, e_num, e_den in intervals[1:]:
        if s_num * cur_d <= cur_n * s_den:
            if e_num * cur_d > cur_n * e_den:
                cur_n, cur_d = e_num, e_den
        else:
            blocks += 1
            cur_n, cur_d = e_num, e_den
    if blocks > 1 and cur_n == n_edges * cur_d and first_s_num == 0:
        blocks -= 1
    return blocks


def _edge_tuples(p: LatticePolygon) -> tuple[tuple[int, int, int, int], ...]:
    return tuple((a.x, a.y, b.x - a.x, b.y - a.y) for a, b in p.edges)


def difference_components(p: LatticePolygon, qp: LatticePolygon) -> ComponentCount:
    """Connected components of the closed set difference P \\ Q'.

    Both polygons closed; a region of P touching the rest only at points
    swallowed by Q' counts as a separate component.  The count equals the
    number of maximal arcs of the boundary of P outside Q' (at least one
    component whenever the difference is nonempty).
    """
    if p.dim != 2:
        raise DegeneratePolygonError("P must be full-dimensional")
    if qp.dim != 2:
        raise DegeneratePolygonError("Q' must be full-dimensional")
    if qp.contains_polygon(p):
        raise EmptyDifferenceError("empty difference")
    blocks = _covered_block_count(_edge_tuples(p), len(p.edges), _inward_halfplanes(qp), 0, 0)
    comps = max(1, blocks)
    return ComponentCount(comps, comps - 1)


def _translate_range(p: LatticePolygon, q: LatticePolygon) -> list[tuple[int, int]]:
    """All m with (Q + m) meeting P: the lattice points of P + (-Q)."""
    zone = minkowski_sum(p, q.reflect())
    return [(pt.x, pt.y) for pt in zone.lattice_points()]


def reduced_component_total(p: LatticePolygon, q: LatticePolygon, workers: int = 1) -> int:
    """Total reduced component count over all lattice translates of Q.

    Requires the transfer hypothesis: no lattice translate of P fits inside
    Q.  Translates of Q disjoint from P contribute nothing and are excluded
    by the enumeration range P + (-Q).
    """
    if p.dim != 2 or q.dim != 2:
        raise DegeneratePolygonError("component totals need full-dimensional polygons")
    if contains_lattice_translate(p, q) is not None:
        raise TranslateContainmentError("translate containment")
    p_edges = _edge_tuples(p)
    n_edges = len(p.edges)
    planes = _inward_halfplanes(q)
    translates = _translate_range(p, q)

    def _chunk_sum(chunk) -> int:
        total = 0
        for mx, my in chunk:
            blocks = _covered_block_count(p_edges, n_edges, planes, mx, my)
            if blocks > 1:
                total += blocks - 1
        return total

    if workers <= 1 or len(translates) < 512:
        return _chunk_sum(translates)
    from concurrent.futures import ThreadPoolExecutor

    size = (len(translates) + workers - 1) // workers
    chunks = [translates[i : i + size] for i in range(0, len(translates), size)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_chunk_sum, chunks))


# -- lattice equivalence ------------------------------------------------------


def _mat_vec(m, p: LatticePoint) -> LatticePoint:
    (a, b), (c, d) = m
    return LatticePoint(a * p.x + b * p.y, c * p.x + d * p.y)


def _candidate_map(u1, u2, v1, v2):
    """Integer matrix M with M u_i = v_i, or None."""
    det = u1.x * u2.y - u1.y * u2.x
    if det == 0:
        return None
    # M = V * adj(U) / det with U = [u1 u2], V = [v1 v2] as columns.
    a_num = v1.x * u2.y - v2.x * u1.y
    b_num = -v1.x * u2.x + v2.x * u1.x
    c_num = v1.y * u2.y - v2.y * u1.y
    d_num = -v1.y * u2.x + v2.y * u1.x
    if any(n % det for n in (a_num, b_num, c_num, d_num)):
        return None
    m = ((a_num // det, b_num // det), (c_num // det, d_num // det))
    (a, b), (c, d) = m
    if a * d - b * c not in (1, -1):
        return None
    return m


def is_lattice_equivalent(p: LatticePolygon, q: LatticePolygon) -> bool:
    """Whether an affine unimodular map carries P onto Q.

    One edge-to-edge correspondence is anchored; the finitely many candidate
    linear parts come from matching P's first two edge vectors against
    consecutive edge vectors of Q, in both orientations.
    """
    if p.dim != q.dim:
        return False
    if p.dim == 0:
        return True
    if p.dim == 1:
        a, b = p.vertices
        c, d = q.vertices
        return gcd(abs(b.x - a.x), abs(b.y - a.y)) == gcd(abs(d.x - c.x), abs(d.y - c.y))
    if (
        len(p.vertices) != len(q.vertices)
        or p.twice_area != q.twice_area
        or p.boundary_lattice_point_count != q.boundary_lattice_point_count
        or p.lattice_point_count != q.lattice_point_count
    ):
        return False
    pe = [b - a for a, b in p.edges]
    u1, u2 = pe[0], pe[1]
    n = len(q.vertices)
    for reversed_q in (False, True):
        verts = q.vertices if not reversed_q else tuple(reversed(q.vertices))
        qe = [verts[(i + 1) % n] - verts[i] for i in range(n)]
        for r in range(n):
            m = _candidate_map(u1, u2, qe[r], qe[(r + 1) % n])
            if m is None:
                continue
            image = _mat_vec(m, p.vertices[0])
            shift = verts[r] - image
            mapped = LatticePolygon([_mat_vec(m, v) + shift for v in p.vertices])
            if mapped == q:
                return True
    return False


def standard_prism(h1: int, h2: int) -> LatticePolygon:
    """The prism with vertical fibers of heights h1 and h2 over a unit edge."""
    if h1 < 0 or h2 < 0:
        raise LatticeGeometryError("prism heights must be nonnegative")
    return LatticePolygon([(0, 0), (1, 0), (0, h1), (1, h2)])


def wide_prism(h1: int, h2: int) -> LatticePolygon:
    """Prism presented with unit lattice height: rows of lengths h1 and h2."""
    if h1 < 0 or h2 < 0:
        raise LatticeGeometryError("prism heights must be nonnegative")
    return LatticePolygon([(0, 0), (h1, 0), (0, 1), (h2, 1)])


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, x, y = _extended_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def is_lawrence_prism(p: LatticePolygon) -> Optional[tuple[int, int]]:
    """Heights (h1, h2), h1 >= h2, if P is equivalent to a Lawrence prism.

    A full-dimensional prism has no interior lattice points and lattice
    width one; the width direction is always normal to an edge, because
    every vertex lies on one of the two supporting lattice lines.
    """
    if p.dim == 0:
        return None
    if p.dim == 1:
        a, b = p.vertices
        return (0, 0) if gcd(abs(b.x - a.x), abs(b.y - a.y)) == 1 else None
    if p.interior_lattice_point_count != 0:
        return None
    for a, b in p.edges:
        dx, dy = b.x - a.x, b.y - a.y
        g = gcd(abs(dx), abs(dy))
        ux, uy = -dy // g, dx // g  # primitive normal of this edge
        values = [ux * v.x + uy * v.y for v in p.vertices]
        if max(values) - min(values) != 1:
            continue
        # Complete (ux, uy) to a unimodular map sending the normal functional
        # to the second coordinate, then read off the two fiber lengths.
        _, s, t = _extended_gcd(ux, uy)
        # w = (t, -s) satisfies det [[t, -s], [ux, uy]] = t*uy + s*ux = 1.
        base = min(values)
        rows: dict[int, list[int]] = {0: [], 1: []}
        for v in p.vertices:
            y = ux * v.x + uy * v.y - base
            rows[y].append(t * v.x - s * v.y)
        h_bottom = max(rows[0]) - min(rows[0])
        h_top = max(rows[1]) - min(rows[1])
        return (h_bottom, h_top) if h_bottom >= h_top else (h_top, h_bottom)
    return None


TWICE_UNIT_TRIANGLE = LatticePolygon([(0, 0), (2, 0), (0, 2)])


def is_twice_unit_triangle(p: LatticePolygon) -> bool:
    return is_lattice_equivalent(p, TWICE_UNIT_TRIANGLE)


def rectangle(a: int, b: int) -> LatticePolygon:
    return LatticePolygon([(0, 0), (a, 0), (a, b), (0, b)])


def veronese_triangle(d: int) -> LatticePolygon:
    if d < 0:
        raise LatticeGeometryError("degree must be nonnegative")
    if d == 0:
        return LatticePolygon([(0, 0)])
    return LatticePolygon([(0, 0), (d, 0), (0, d)])
