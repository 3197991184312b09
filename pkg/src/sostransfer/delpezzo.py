"""Totally-real del Pezzo surfaces of degree at least 3.

The catalogue encodes each surface as a Picard lattice with intersection
form, canonical class, and conjugation involution.  On top of that sit the
negative-curve and conic-bundle enumerations, nef/ample tests, and the
transfer-sequence algorithm that walks an effective divisor down to zero or
to a multiple of a conic bundle, verifying an Euler-characteristic
inequality at every ample step.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from ._intlinalg import (
    identity,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank_of,
    solve_in_column_span,
    solve_quadratic_lattice,
)
from .numerics import chi_criterion_holds

Divisor = tuple[int, ...]


class DelPezzoError(ValueError):
    """Base error for the del Pezzo layer."""


class NotCataloguedError(DelPezzoError):
    pass


class NotEffectiveError(DelPezzoError):
    pass


class NotContractibleError(DelPezzoError):
    pass


class NotConjugationFixedError(DelPezzoError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    """A del Pezzo surface as a marked lattice with a real structure.

    gram is the intersection form on the Picard lattice over C, K the
    canonical class, tau the conjugation involution (as a matrix acting on
    coefficient vectors).  chiO = 1 for every del Pezzo surface.
    """

    name: str
    degree: int
    basis_labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    K: Divisor
    tau: tuple[tuple[int, ...], ...]
    chiO: int = 1

    @property
    def rank(self) -> int:
        return len(self.K)

    @property
    def minus_K(self) -> Divisor:
        return tuple(-x for x in self.K)

    def intersect(self, d1: Sequence[int], d2: Sequence[int]) -> int:
        if len(d1) != self.rank or len(d2) != self.rank:
            raise DelPezzoError("divisor length does not match the Picard rank")
        g = self.gram
        return sum(d1[i] * g[i][j] * d2[j] for i in range(self.rank) for j in range(self.rank))

    def tau_image(self, d: Sequence[int]) -> Divisor:
        if len(d) != self.rank:
            raise DelPezzoError("divisor length does not match the Picard rank")
        return mat_vec(self.tau, d)

    def is_real(self, d: Sequence[int]) -> bool:
        return self.tau_image(d) == tuple(d)

    @property
    def extremal_curves(self) -> tuple[Divisor, ...]:
        """Cached extremal test classes of the cone of curves."""
        return cone_generators(self)

    @property
    def real_rank(self) -> int:
        diff = tuple(
            tuple(self.tau[i][j] - (1 if i == j else 0) for j in range(self.rank))
            for i in range(self.rank)
        )
        return self.rank - rank_of(diff)

    def validate(self) -> None:
        n = self.rank
        if mat_mul(self.tau, self.tau) != identity(n):
            raise DelPezzoError(f"{self.name}: involution does not square to the identity")
        taut = tuple(tuple(self.tau[j][i] for j in range(n)) for i in range(n))
        if mat_mul(mat_mul(taut, self.gram), self.tau) != self.gram:
            raise DelPezzoError(f"{self.name}: involution does not preserve the form")
        if self.tau_image(self.K) != self.K:
            raise DelPezzoError(f"{self.name}: involution moves the canonical class")
        if self.intersect(self.K, self.K) != self.degree:
            raise DelPezzoError(f"{self.name}: K.K does not match the declared degree")


# -- catalogue -----------------------------------------------------------------

#: (name, degree, real Picard rank, number of real (-1)-curves).
#: The degree-6 row with one real and one conjugate pair of blown-up points
#: has exactly 2 real (-1)-curves (the real exceptional curve and the line
#: through the conjugate pair).
CATALOGUE_TABLE: tuple[tuple[str, int, int, int], ...] = (
    ("P2", 9, 1, 0),
    ("P2(1,0)", 8, 2, 1),
    ("Q22", 8, 2, 0),
    ("Q31", 8, 1, 0),
    ("P2(2,0)", 7, 3, 3),
    ("P2(0,2)", 7, 2, 1),
    ("P2(3,0)", 6, 4, 6),
    ("P2(1,2)", 6, 3, 2),
    ("Q31(0,2)", 6, 2, 0),
    ("Q22(0,2)", 6, 3, 0),
    ("P2(4,0)", 5, 5, 10),
    ("P2(2,2)", 5, 4, 4),
    ("P2(0,4)", 5, 3, 2),
    ("P2(5,0)", 4, 6, 16),
    ("P2(3,2)", 4, 5, 8),
    ("P2(1,4)", 4, 4, 4),
    ("Q31(0,4)", 4, 3, 0),
    ("Q22(0,4)", 4, 4, 0),
    ("D", 4, 2, 0),
    ("P2(6,0)", 3, 7, 27),
    ("P2(4,2)", 3, 6, 15),
    ("P2(2,4)", 3, 5, 7),
    ("P2(0,6)", 3, 4, 3),
    ("D(1,0)", 3, 3, 3),
)


def _swap_pairs_tau(n: int, first_pair_index: int) -> tuple[tuple[int, ...], ...]:
    """Identity with trailing coordinates swapped in consecutive pairs."""
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    i = first_pair_index
    while i + 1 < n:
        t[i][i] = t[i + 1][i + 1] = 0
        t[i][i + 1] = t[i + 1][i] = 1
        i += 2
    return tuple(tuple(row) for row in t)


def _p2_model(a: int, two_b: int) -> SurfaceModel:
    r = a + two_b
    name = "P2" if r == 0 else f"P2({a},{two_b})"
    labels = ("H",) + tuple(f"E{i}" for i in range(1, r + 1))
    gram = tuple(
        tuple((1 if i == j == 0 else (-1 if i == j else 0)) for j in range(r + 1))
        for i in range(r + 1)
    )
    k = (-3,) + (1,) * r
    tau = _swap_pairs_tau(r + 1, 1 + a)
    return SurfaceModel(name, 9 - r, labels, gram, k, tau)


def _quadric_gram(r: int) -> tuple[tuple[int, ...], ...]:
    gram = [[0] * (r + 2) for _ in range(r + 2)]
    gram[0][1] = gram[1][0] = 1
    for i in range(2, r + 2):
        gram[i][i] = -1
    return tuple(tuple(row) for row in gram)


def _quadric_model(kind: str, two_b: int) -> SurfaceModel:
    name = kind if two_b == 0 else f"{kind}(0,{two_b})"
    labels = ("L1", "L2") + tuple(f"E{i}" for i in range(1, two_b + 1))
    gram = _quadric_gram(two_b)
    k = (-2, -2) + (1,) * two_b
    n = two_b + 2
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if kind == "Q31":
        t[0][0] = t[1][1] = 0
        t[0][1] = t[1][0] = 1
    i = 2
    while i + 1 < n:
        t[i][i] = t[i + 1][i + 1] = 0
        t[i][i + 1] = t[i + 1][i] = 1
        i += 2
    return SurfaceModel(name, 8 - two_b, labels, gram, k, tuple(tuple(row) for row in t))


def _de_jonquieres_model(extra_real_point: bool) -> SurfaceModel:
    """The degree-4 surface with the de Jonquieres involution, optionally
    blown up at one further real point (degree 3).

    The involution is pinned by the images of the exceptional classes; its
    value on the hyperplane class is the unique extension fixing K and
    preserving the form, which the constructor re-checks.
    """
    r = 6 if extra_real_point else 5
    name = "D(1,0)" if extra_real_point else "D"
    labels = ("H",) + tuple(f"E{i}" for i in range(1, r + 1))
    gram = tuple(
        tuple((1 if i == j == 0 else (-1 if i == j else 0)) for j in range(r + 1))
        for i in range(r + 1)
    )
    k = (-3,) + (1,) * r
    n = r + 1
    cols: list[list[int]] = []
    cols.append([3, -2, -1, -1, -1, -1] + ([0] if extra_real_point else []))
    cols.append([2, -1, -1, -1, -1, -1] + ([0] if extra_real_point else []))
    for i in range(2, 6):
        col = [1, -1, 0, 0, 0, 0] + ([0] if extra_real_point else [])
        col[i] = -1
        cols.append(col)
    if extra_real_point:
        cols.append([0, 0, 0, 0, 0, 0, 1])
    tau = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    return SurfaceModel(name, 9 - r, labels, gram, k, tau)


def _build_surface(name: str) -> SurfaceModel:
    if name == "P2":
        return _p2_model(0, 0)
    if name in ("Q22", "Q31"):
        return _quadric_model(name, 0)
    if name == "D":
        return _de_jonquieres_model(False)
    if name == "D(1,0)":
        return _de_jonquieres_model(True)
    import re

    m = re.fullmatch(r"P2\((\d+),(\d+)\)", name)
    if m:
        a, two_b = int(m.group(1)), int(m.group(2))
        if two_b % 2 == 0:
            return _p2_model(a, two_b)
    m = re.fullmatch(r"(Q22|Q31)\(0,(\d+)\)", name)
    if m:
        two_b = int(m.group(2))
        if two_b % 2 == 0:
            return _quadric_model(m.group(1), two_b)
    raise NotCataloguedError(f"not catalogued: {name!r}")


@lru_cache(maxsize=None)
def surface_from_name(name: str) -> SurfaceModel:
    """The catalogued surface with the given name.

    The constructor validates the involution (square, form preservation,
    fixed canonical class), the real Picard rank, and the real negative-curve
    count against the catalogue row.
    """
    rows = {row[0]: row for row in CATALOGUE_TABLE}
    if name not in rows:
        raise NotCataloguedError(f"not catalogued: {name!r}")
    model = _build_surface(name)
    model.validate()
    _, degree, rho, n_real = rows[name]
    if model.degree != degree:
        raise DelPezzoError(f"{name}: degree mismatch")
    if model.real_rank != rho:
        raise DelPezzoError(f"{name}: real Picard rank {model.real_rank} != {rho}")
    reals, _ = real_negative_curves(model)
    if len(reals) != n_real:
        raise DelPezzoError(f"{name}: {len(reals)} real (-1)-curves, expected {n_real}")
    return model


def catalogue() -> list[SurfaceModel]:
    return [surface_from_name(row[0]) for row in CATALOGUE_TABLE]


# -- class enumeration ---------------------------------------------------------


@lru_cache(maxsize=None)
def _classes(gram: tuple, kvec: Divisor, square: int, kdot: int) -> tuple[Divisor, ...]:
    return tuple(solve_quadratic_lattice(gram, kvec, square, kdot))


def minus_one_curves(s: SurfaceModel) -> tuple[Divisor, ...]:
    """All classes with self-intersection -1 and K-degree -1, sorted.

    Empty for the three minimal surfaces of degree 8 and 9.
    """
    return _classes(s.gram, s.K, -1, -1)


def conic_bundle_classes(s: SurfaceModel) -> tuple[Divisor, ...]:
    """All conic bundle classes over C: B.B = 0 and -K.B = 2 (so K.B = -2)."""
    return _classes(s.gram, s.K, 0, -2)


def real_negative_curves(
    s: SurfaceModel,
) -> tuple[tuple[Divisor, ...], tuple[tuple[Divisor, Divisor], ...]]:
    """Conjugation-fixed (-1)-curves and disjoint conjugate pairs."""
    reals = []
    pairs = []
    for c in minus_one_curves(s):
        tc = s.tau_image(c)
        if tc == c:
            reals.append(c)
        elif c < tc and s.intersect(c, tc) == 0:
            pairs.append((c, tc))
    return tuple(reals), tuple(pairs)


_TWO_INTERVAL_SURFACES = frozenset({"D", "D(1,0)"})
_ONE_INTERVAL_SURFACES = frozenset({"Q31(0,2)", "Q31(0,4)"})


def interval_kind(name: str) -> str:
    """Image shape of the conic fibration on the real points, keyed by the
    surface's minimal-model family."""
    if name in _TWO_INTERVAL_SURFACES:
        return "two_intervals"
    if name in _ONE_INTERVAL_SURFACES:
        return "one_interval"
    return "full_line"


@dataclass(frozen=True)
class ConicBundle:
    cls: Divisor
    kind: str


def conic_bundles_real(s: SurfaceModel) -> tuple[ConicBundle, ...]:
    """Conjugation-fixed conic bundles, tagged with their interval kind."""
    kind = interval_kind(s.name)
    return tuple(
        ConicBundle(b, kind) for b in conic_bundle_classes(s) if s.tau_image(b) == b
    )


def _primitive(d: Divisor) -> Divisor:
    from math import gcd

    g = 0
    for x in d:
        g = gcd(g, abs(x))
    return tuple(x // g for x in d) if g > 1 else d


@lru_cache(maxsize=None)
def cone_generators(s: SurfaceModel) -> tuple[Divisor, ...]:
    """Extremal test classes for nefness: the (-1)-curves plus the conic
    bundle classes, or the primitive anticanonical ray on the plane itself."""
    gens = tuple(sorted(set(minus_one_curves(s)) | set(conic_bundle_classes(s))))
    if not gens:
        gens = (_primitive(s.minus_K),)
    return gens


def is_nef(s: SurfaceModel, d: Sequence[int]) -> bool:
    d = tuple(d)
    return all(s.intersect(d, c) >= 0 for c in cone_generators(s))


def is_ample(s: SurfaceModel, d: Sequence[int]) -> bool:
    d = tuple(d)
    if s.intersect(d, d) <= 0:
        return False
    return all(s.intersect(d, c) > 0 for c in cone_generators(s))


def chi(s: SurfaceModel, d: Sequence[int]) -> int:
    """Euler characteristic 1 + (D.D - D.K)/2; the parity is a lattice fact."""
    q = s.intersect(d, d) - s.intersect(d, s.K)
    if q % 2 != 0:
        raise DelPezzoError("D.D - D.K must be even on a surface lattice")
    return s.chiO + q // 2


# -- nef reduction -------------------------------------------------------------


@dataclass(frozen=True)
class ReduceResult:
    residual: Divisor
    subtracted: tuple[Divisor, ...]
    effective: bool


def _vec_sub(a: Sequence[int], b: Sequence[int]) -> Divisor:
    return tuple(x - y for x, y in zip(a, b))


def _vec_add(a: Sequence[int], b: Sequence[int]) -> Divisor:
    return tuple(x + y for x, y in zip(a, b))


def reduce_to_nef(s: SurfaceModel, d: Sequence[int]) -> ReduceResult:
    """Strip negative curves off a real divisor until it is nef.

    Each pass subtracts the lexicographically smallest real (-1)-curve (or
    disjoint conjugate pair) meeting the divisor negatively; sections are
    preserved at every step.  Returns effective=False as soon as the divisor
    pairs negatively with the anticanonical class or with a conic bundle,
    neither of which an effective divisor can do.
    """
    cur = tuple(d)
    if not s.is_real(cur):
        raise NotConjugationFixedError("not conjugation-fixed")
    subtracted: list[Divisor] = []
    minus_k = s.minus_K
    while True:
        if s.intersect(minus_k, cur) < 0:
            return ReduceResult(cur, tuple(subtracted), False)
        negs = [c for c in minus_one_curves(s) if s.intersect(cur, c) < 0]
        if not negs:
            if is_nef(s, cur):
                return ReduceResult(cur, tuple(subtracted), True)
            # negative against a conic bundle or ruling: not effective
            return ReduceResult(cur, tuple(subtracted), False)
        c = min(negs)
        tc = s.tau_image(c)
        if tc == c:
            subtracted.append(c)
            cur = _vec_sub(cur, c)
        elif s.intersect(c, tc) == 0:
            subtracted.append(c)
            subtracted.append(tc)
            cur = _vec_sub(_vec_sub(cur, c), tc)
        else:
            # C + tau(C) is a nef conic bundle pairing negatively with cur
            return ReduceResult(cur, tuple(subtracted), False)


# -- ample step ----------------------------------------------------------------


@dataclass(frozen=True)
class AmpleStep:
    C: Divisor
    E: Divisor
    check: dict


def _scaled(d: Sequence[int], k: int) -> Divisor:
    return tuple(k * x for x in d)


def ample_step(s: SurfaceModel, d: Sequence[int]) -> AmpleStep:
    """One transfer step off an ample divisor.

    The subtracted class C is a real (-1)-curve when the surface has one
    (degree at most 7), else a real conic bundle; the plane and the minimal
    degree-8 surfaces use their hard-coded minimal ample decompositions.
    The residual E = D - C is nef, and the verification record checks the
    Euler-characteristic inequality chi(2E) > chi(-D-E) plus nefness of the
    auxiliary classes.
    """
    cur = tuple(d)
    if not s.is_real(cur):
        raise NotConjugationFixedError("not conjugation-fixed")
    if not is_ample(s, cur):
        raise DelPezzoError("ample_step requires an ample divisor")
    n = s.rank
    zero = (0,) * n
    minus_k = s.minus_K
    if s.degree == 9:
        c = _primitive(minus_k)
        nvec = zero
        mvec = _scaled(c, 2)
    elif s.degree == 8:
        curves = minus_one_curves(s)
        if curves:
            bundles = conic_bundles_real(s)
            c = bundles[0].cls
            nvec = _vec_add(c, curves[0])  # the hyperplane pullback
            mvec = _vec_sub(minus_k, c)
        else:
            c = tuple(x // 2 for x in minus_k)
            nvec = zero
            mvec = c
    else:
        reals, _ = real_negative_curves(s)
        if reals:
            c = min(reals)
        else:
            bundles = conic_bundles_real(s)
            if not bundles:
                raise DelPezzoError(f"{s.name}: no real curve or conic bundle available")
            c = min(b.cls for b in bundles)
        nvec = _vec_sub(minus_k, c)
        mvec = nvec
    evec = _vec_sub(cur, c)
    two_e = _scaled(evec, 2)
    chi_2e = chi(s, two_e)
    minus_de = tuple(-x - y for x, y in zip(cur, evec))
    chi_minus_de = chi(s, minus_de)
    chi_2e_minus_m = chi(s, _vec_sub(two_e, mvec))
    record = {
        "surface": s.name,
        "D": cur,
        "C": c,
        "E": evec,
        "N": nvec,
        "M": mvec,
        "nef_E": is_nef(s, evec),
        "nef_N": is_nef(s, nvec),
        "nef_M": is_nef(s, mvec),
        "two_E_dot_M": s.intersect(two_e, mvec),
        "chi_2E": chi_2e,
        "chi_minus_D_minus_E": chi_minus_de,
        "chi_2E_minus_M": chi_2e_minus_m,
        "h1_E_minus_D": 0,
        "holds": chi_criterion_holds(chi_2e, 0, chi_minus_de),
    }
    if not record["holds"]:
        raise DelPezzoError(f"{s.name}: ample step inequality failed for {cur}")
    return AmpleStep(c, evec, record)


# -- contraction ---------------------------------------------------------------


@dataclass(frozen=True)
class Contraction:
    source: SurfaceModel
    target: SurfaceModel
    contracted: tuple[Divisor, ...]
    _basis: tuple[Divisor, ...]
    _matrix: tuple[tuple[int, ...], ...]  # target coords of the basis columns

    def push(self, d: Sequence[int]) -> Divisor:
        """Pushforward of a class orthogonal to the contracted curves."""
        for c in self.contracted:
            if self.source.intersect(d, c) != 0:
                raise NotContractibleError("class is not orthogonal to the contracted curves")
        y = solve_in_column_span(self._basis, tuple(d))
        if y is None:
            raise DelPezzoError("class does not lie on the contracted sublattice")
        return mat_vec(self._matrix, y)


def _find_marked_isometry(
    gram_s: tuple,
    k_s: Divisor,
    tau_s: tuple,
    dst: SurfaceModel,
) -> Optional[tuple[tuple[int, ...], ...]]:
    """A lattice isomorphism onto dst matching form, canonical class, and
    involution; returned as a matrix sending source coordinates to dst."""
    n = len(k_s)
    if n != dst.rank:
        return None
    gk = [sum(gram_s[i][j] * k_s[j] for j in range(n)) for i in range(n)]
    cands = []
    for i in range(n):
        cands.append(_classes(dst.gram, dst.K, gram_s[i][i], gk[i]))
        if not cands[i]:
            return None
    order = sorted(range(n), key=lambda i: len(cands[i]))
    images: dict[int, Divisor] = {}

    def ok_pairwise(i: int, v: Divisor) -> bool:
        for j, w in images.items():
            if dst.intersect(v, w) != gram_s[i][j]:
                return False
        return True

    def backtrack(pos: int) -> Optional[tuple[tuple[int, ...], ...]]:
        if pos == n:
            cols = [images[i] for i in range(n)]
            m = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
            if mat_vec(m, k_s) != dst.K:
                return None
            if mat_mul(m, tau_s) != mat_mul(dst.tau, m):
                return None
            return m
        i = order[pos]
        for v in cands[i]:
            if ok_pairwise(i, v):
                images[i] = v
                res = backtrack(pos + 1)
                if res is not None:
                    return res
                del images[i]
        return None

    return backtrack(0)


_contraction_cache: dict[tuple, Contraction] = {}


def contract_along(s: SurfaceModel, curves) -> Contraction:
    """Blow down a real (-1)-curve or a disjoint conjugate pair.

    The image lattice is realized as the orthogonal complement of the
    contracted classes (with the induced form, involution, and canonical
    class) and then identified with the catalogued model of the right degree
    by an exact marked-lattice isomorphism.
    """
    if curves and isinstance(curves[0], int):
        curve_list = (tuple(curves),)
    else:
        curve_list = tuple(tuple(c) for c in curves)
    key = (s.name, curve_list)
    if key in _contraction_cache:
        return _contraction_cache[key]
    for c in curve_list:
        if s.intersect(c, c) != -1 or s.intersect(s.K, c) != -1:
            raise NotContractibleError(f"{c} is not a (-1)-class")
    if len(curve_list) == 1:
        c = curve_list[0]
        if s.tau_image(c) != c:
            raise NotContractibleError("single contracted curve must be real")
    elif len(curve_list) == 2:
        c1, c2 = curve_list
        if s.tau_image(c1) != c2 or s.intersect(c1, c2) != 0:
            raise NotContractibleError("pair must be disjoint and conjugate")
    else:
        raise NotContractibleError("contract one real curve or one conjugate pair")
    n = s.rank
    rows = [tuple(sum(s.gram[i][j] * c[j] for j in range(n)) for i in range(n)) for c in curve_list]
    basis = kernel_basis(rows, n)
    k = len(basis)
    gram2 = tuple(
        tuple(s.intersect(basis[i], basis[j]) for j in range(k)) for i in range(k)
    )
    k_shift = tuple(s.K)
    for c in curve_list:
        k_shift = _vec_sub(k_shift, c)
    k2 = solve_in_column_span(basis, k_shift)
    if k2 is None:
        raise DelPezzoError("canonical class did not descend")
    tau_cols = []
    for b in basis:
        img = solve_in_column_span(basis, s.tau_image(b))
        if img is None:
            raise DelPezzoError("involution did not descend")
        tau_cols.append(img)
    tau2 = tuple(tuple(tau_cols[j][i] for j in range(k)) for i in range(k))
    degree2 = sum(k2[i] * gram2[i][j] * k2[j] for i in range(k) for j in range(k))
    # identify the catalogued target, preferring rows with matching counts
    derived = SurfaceModel("?", degree2, ("?",) * k, gram2, k2, tau2)
    reals2, _ = real_negative_curves(derived)
    rho2 = derived.real_rank
    candidates = [row for row in CATALOGUE_TABLE if row[1] == degree2]
    candidates.sort(key=lambda row: (row[2] != rho2, row[3] != len(reals2)))
    for row in candidates:
        target = surface_from_name(row[0])
        m = _find_marked_isometry(gram2, k2, tau2, target)
        if m is not None:
            contraction = Contraction(s, target, curve_list, tuple(basis), m)
            _contraction_cache[key] = contraction
            return contraction
    raise DelPezzoError(f"no catalogued target of degree {degree2} matches the contraction")


# -- transfer sequences ---------------------------------------------------------


@dataclass(frozen=True)
class TransferStep:
    kind: str  # "subtract_negative_curve" | "contract" | "ample_step" | "terminal"
    surface: str
    divisor: Divisor
    witness: tuple[Divisor, ...] = ()
    check: Optional[dict] = None
    result: Optional[Divisor] = None


@dataclass(frozen=True)
class DelPezzoTransfer:
    surface: str
    start: Divisor
    steps: tuple[TransferStep, ...]
    terminal_kind: str  # "zero" | "conic_bundle_multiple"
    certificate_kind: str  # "sos" | "modified_1_interval" | "modified_2_interval"

    @property
    def chain_length(self) -> int:
        """Number of multiplier steps (curve subtractions and ample steps)."""
        return sum(1 for st in self.steps if st.kind in ("subtract_negative_curve", "ample_step"))

    def anticanonical_trace(self) -> list[int]:
        """-K.D before each multiplier step and at the terminal."""
        out = []
        for st in self.steps:
            if st.kind in ("subtract_negative_curve", "ample_step", "terminal"):
                out.append(st.check["minus_K_dot"] if st.check else 0)
        return out


def certificate_kind(name: str) -> str:
    if name in _TWO_INTERVAL_SURFACES:
        return "modified_2_interval"
    if name in _ONE_INTERVAL_SURFACES:
        return "modified_1_interval"
    return "sos"


def _conic_multiple(s: SurfaceModel, d: Divisor) -> Optional[tuple[Divisor, int]]:
    pairing = s.intersect(s.minus_K, d)
    if pairing <= 0 or pairing % 2 != 0:
        return None
    c = pairing // 2
    for bundle in conic_bundles_real(s):
        if tuple(c * x for x in bundle.cls) == d:
            return bundle.cls, c
    return None


def transfer_sequence(s: SurfaceModel, d: Sequence[int]) -> DelPezzoTransfer:
    """Walk a real effective divisor down to zero or to a conic bundle multiple.

    Loop of the descent: subtract negative curves while the divisor is not
    nef; once nef, stop on zero or a conic-bundle multiple; a nef-not-ample
    divisor is pulled back from a higher-degree catalogued surface via a real
    contraction; an ample divisor loses the chosen curve or bundle C with a
    verified Euler-characteristic inequality.  The anticanonical pairing
    strictly decreases at every multiplier step, which bounds the chain
    length by -K.D.
    """
    cur = tuple(d)
    if len(cur) != s.rank:
        raise DelPezzoError("divisor length does not match the Picard rank")
    if not s.is_real(cur):
        raise NotConjugationFixedError("not conjugation-fixed")
    surf = s
    start_name = s.name
    steps: list[TransferStep] = []
    terminal_kind: Optional[str] = None
    zero = lambda: (0,) * surf.rank
    for _ in range(10_000):
        mk_pairing = surf.intersect(surf.minus_K, cur)
        if mk_pairing < 0:
            raise NotEffectiveError("not effective")
        if cur == zero():
            steps.append(
                TransferStep(
                    "terminal", surf.name, cur, check={"terminal_kind": "zero", "minus_K_dot": 0}
                )
            )
            terminal_kind = "zero"
            break
        if not is_nef(surf, cur):
            negs = [c for c in minus_one_curves(surf) if surf.intersect(cur, c) < 0]
            if not negs:
                raise NotEffectiveError("not effective")
            c = min(negs)
            tc = surf.tau_image(c)
            if tc == c:
                witness: tuple[Divisor, ...] = (c,)
            elif surf.intersect(c, tc) == 0:
                witness = (c, tc)
            else:
                raise NotEffectiveError("not effective")
            nxt = cur
            for w in witness:
                nxt = _vec_sub(nxt, w)
            steps.append(
                TransferStep(
                    "subtract_negative_curve",
                    surf.name,
                    cur,
                    witness=witness,
                    check={
                        "pairing": surf.intersect(cur, witness[0]),
                        "minus_K_dot": mk_pairing,
                    },
                    result=nxt,
                )
            )
            cur = nxt
            continue
        cm = _conic_multiple(surf, cur)
        if cm is not None:
            bundle, mult = cm
            steps.append(
                TransferStep(
                    "terminal",
                    surf.name,
                    cur,
                    witness=(bundle,),
                    check={
                        "terminal_kind": "conic_bundle_multiple",
                        "multiple": mult,
                        "interval_kind": interval_kind(surf.name),
                        "minus_K_dot": mk_pairing,
                    },
                )
            )
            terminal_kind = "conic_bundle_multiple"
            break
        if not is_ample(surf, cur):
            reals, pairs = real_negative_curves(surf)
            zero_reals = [c for c in reals if surf.intersect(cur, c) == 0]
            if zero_reals:
                spec = (min(zero_reals),)
            else:
                zero_pairs = [p for p in pairs if surf.intersect(cur, p[0]) == 0]
                if not zero_pairs:
                    raise DelPezzoError(
                        f"{surf.name}: nef-not-ample divisor with no contractible curve"
                    )
                spec = min(zero_pairs)
            contraction = contract_along(surf, spec if len(spec) > 1 else spec[0])
            nxt = contraction.push(cur)
            steps.append(
                TransferStep(
                    "contract",
                    surf.name,
                    cur,
                    witness=tuple(spec),
                    check={"target": contraction.target.name, "minus_K_dot": mk_pairing},
                    result=nxt,
                )
            )
            surf = contraction.target
            cur = nxt
            continue
        ast = ample_step(surf, cur)
        check = dict(ast.check)
        check["minus_K_dot"] = mk_pairing
        steps.append(
            TransferStep(
                "ample_step", surf.name, cur, witness=(ast.C,), check=check, result=ast.E
            )
        )
        cur = ast.E
    else:
        raise DelPezzoError("transfer did not terminate")
    return DelPezzoTransfer(
        surface=start_name,
        start=tuple(d),
        steps=tuple(steps),
        terminal_kind=terminal_kind,
        certificate_kind=certificate_kind(start_name),
    )


# -- randomized effective divisors (test/demo support) --------------------------


def random_effective_divisor(s: SurfaceModel, rng, max_coeff: int = 2) -> Divisor:
    """A nonzero real effective divisor: a random nonnegative combination of
    negative curves and conic bundles, symmetrized under conjugation."""
    pool = list(minus_one_curves(s)) + list(conic_bundle_classes(s))
    if not pool:
        pool = [s.minus_K]
    n = s.rank
    for _ in range(100):
        total = (0,) * n
        for cls in pool:
            coeff = rng.randint(0, max_coeff) if rng.random() < 0.3 else 0
            if coeff:
                total = tuple(t + coeff * x for t, x in zip(total, cls))
        total = _vec_add(total, s.tau_image(total))
        if any(total):
            return total
    return _vec_add(s.minus_K, s.minus_K)


# -- JSON -----------------------------------------------------------------------


def divisor_to_json_dict(s: SurfaceModel, d: Sequence[int]) -> dict:
    return {"surface": s.name, "coeffs": list(d)}


def divisor_from_json_dict(data: dict) -> tuple[SurfaceModel, Divisor]:
    s = surface_from_name(data["surface"])
    coeffs = data["coeffs"]
    if len(coeffs) != s.rank or not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
        raise DelPezzoError("coeffs must be integers matching the Picard rank")
    return s, tuple(coeffs)


def _check_to_json(check: Optional[dict]) -> Optional[dict]:
    if check is None:
        return None
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in check.items()}


def _check_from_json(check: Optional[dict]) -> Optional[dict]:
    if check is None:
        return None
    return {k: (tuple(v) if isinstance(v, list) else v) for k, v in check.items()}


def transfer_from_json_dict(data: dict) -> DelPezzoTransfer:
    steps = tuple(
        TransferStep(
            kind=st["kind"],
            surface=st["surface"],
            divisor=tuple(st["divisor"]),
            witness=tuple(tuple(w) for w in st["witness"]),
            check=_check_from_json(st["check"]),
            result=tuple(st["result"]) if st["result"] is not None else None,
        )
        for st in data["steps"]
    )
    return DelPezzoTransfer(
        surface=data["surface"],
        start=tuple(data["divisor"]),
        steps=steps,
        terminal_kind=data["terminal_kind"],
        certificate_kind=data["certificate_kind"],
    )


def transfer_to_json_dict(t: DelPezzoTransfer) -> dict:
    return {
        "surface": t.surface,
        "divisor": list(t.start),
        "terminal_kind": t.terminal_kind,
        "certificate_kind": t.certificate_kind,
        "chain_length": t.chain_length,
        "steps": [
            {
                "kind": st.kind,
                "surface": st.surface,
                "divisor": list(st.divisor),
                "witness": [list(w) for w in st.witness],
                "check": _check_to_json(st.check),
                "result": list(st.result) if st.result is not None else None,
            }
            for st in t.steps
        ],
    }
