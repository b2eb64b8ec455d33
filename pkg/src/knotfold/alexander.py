"""Knot-type certificates via the Alexander polynomial.

The polynomial is computed from the Wirtinger presentation of a diagram:
one relation row per crossing over the free group on the overpass arcs,
abelianized to integer Laurent polynomials, with one row and one column
deleted before taking the determinant.  The determinant is evaluated
exactly: unit-monomial pivots are eliminated sparsely first (rows have at
most three entries), and whatever dense core remains goes through
fraction-free Bareiss elimination with exact polynomial division.

Lattice knots are turned into diagrams by an integer shear projection so
that sticks parallel to the viewing axis become short slanted segments
instead of points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagram import CrossingPass, PlanarDiagram, build_diagram, cross2
from .errors import MultiComponent, NoRegularShear
from .lattice import LatticeKnot, canonicalize
from .laurent import LaurentPoly

SHEAR_CANDIDATES = ((1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))


@dataclass(frozen=True)
class ProjectionDiagram(PlanarDiagram):
    """Planar diagram obtained from a sheared z-projection of a lattice knot."""

    shear: tuple[int, int] = (0, 0)
    scale: int = 1


# ---------------------------------------------------------------------------
# projection


def _seg_relation(p1, q1, p2, q2):
    """Classify how two integer segments meet: 'none', 'proper', or 'bad'.

    'proper' means transversal interior-interior crossing; every touching,
    endpoint-on-segment, or collinear-overlap configuration is 'bad'
    (irregular for our purposes).
    """
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    s_p2 = cross2(d1, (p2[0] - p1[0], p2[1] - p1[1]))
    s_q2 = cross2(d1, (q2[0] - p1[0], q2[1] - p1[1]))
    s_p1 = cross2(d2, (p1[0] - p2[0], p1[1] - p2[1]))
    s_q1 = cross2(d2, (q1[0] - p2[0], q1[1] - p2[1]))
    if s_p2 == 0 and s_q2 == 0:
        # collinear: any 1D overlap is irregular
        def within(a, b, x):
            return min(a, b) <= x <= max(a, b)

        axis = 0 if d1[0] != 0 else 1
        lo1, hi1 = sorted((p1[axis], q1[axis]))
        lo2, hi2 = sorted((p2[axis], q2[axis]))
        return "bad" if max(lo1, lo2) <= min(hi1, hi2) else "none"
    if s_p2 < 0 < s_q2 or s_q2 < 0 < s_p2:
        if s_p1 < 0 < s_q1 or s_q1 < 0 < s_p1:
            return "proper"
    if 0 in (s_p2, s_q2, s_p1, s_q1):
        # an endpoint lies on the other segment's line; irregular when it
        # also falls inside that segment's extent
        for zero, pt, sa, sb in (
            (s_p2, p2, p1, q1),
            (s_q2, q2, p1, q1),
            (s_p1, p1, p2, q2),
            (s_q1, q1, p2, q2),
        ):
            if zero == 0:
                if min(sa[0], sb[0]) <= pt[0] <= max(sa[0], sb[0]) and min(
                    sa[1], sb[1]
                ) <= pt[1] <= max(sa[1], sb[1]):
                    return "bad"
    return "none"


def _crossing_params(p1, q1, p2, q2) -> tuple[Fraction, Fraction]:
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    denom = cross2(d1, d2)
    w = (p2[0] - p1[0], p2[1] - p1[1])
    t = Fraction(cross2(w, d2), denom)
    s = Fraction(cross2(w, d1), denom)
    return t, s


def project(k: LatticeKnot) -> ProjectionDiagram:
    """Regular planar diagram of a lattice knot via an integer shear.

    Points map to (S*x + a*z, S*y + b*z) for small coprime (a, b) and a
    scale S large enough that segments from different lattice lines cannot
    collide; candidates are tried in a fixed order and the first shear
    giving a regular projection wins.
    """
    k = canonicalize(k)
    corners = k.corners
    n = len(corners)
    spans = [
        max(c[i] for c in corners) - min(c[i] for c in corners) for i in range(3)
    ]
    diam = max(max(spans), 1)
    for a, b in SHEAR_CANDIDATES:
        scale = (a * a + b * b + 2) * (diam + 2)
        pts2 = [(scale * x + a * z, scale * y + b * z) for x, y, z in corners]
        zs = [c[2] for c in corners]
        segs = [(pts2[i], pts2[(i + 1) % n]) for i in range(n)]
        regular = True
        events: dict[int, list] = {i: [] for i in range(n)}
        for i in range(n):
            for j in range(i + 1, n):
                adjacent = j == i + 1 or (i == 0 and j == n - 1)
                if adjacent:
                    continue
                rel = _seg_relation(*segs[i], *segs[j])
                if rel == "bad":
                    regular = False
                    break
                if rel != "proper":
                    continue
                t, s = _crossing_params(*segs[i], *segs[j])
                zi = Fraction(zs[i]) + t * (zs[(i + 1) % n] - zs[i])
                zj = Fraction(zs[j]) + s * (zs[(j + 1) % n] - zs[j])
                if zi == zj:
                    regular = False  # would be a 3D self-intersection
                    break
                key = (i, j)
                i_over = zi > zj
                events[i].append((t, key, i_over, j))
                events[j].append((s, key, not i_over, i))
            if not regular:
                break
        if not regular:
            continue
        passes: list[CrossingPass] = []
        for i in range(n):
            di = (
                segs[i][1][0] - segs[i][0][0],
                segs[i][1][1] - segs[i][0][1],
            )
            for t, key, is_over, j in sorted(events[i], key=lambda e: e[0]):
                dj = (
                    segs[j][1][0] - segs[j][0][0],
                    segs[j][1][1] - segs[j][0][1],
                )
                over_dir = di if is_over else dj
                under_dir = dj if is_over else di
                passes.append(CrossingPass(key, is_over, over_dir, under_dir))
        pd = build_diagram(passes)
        return ProjectionDiagram(
            crossings=pd.crossings,
            n_edges=pd.n_edges,
            components=1,
            shear=(a, b),
            scale=scale,
        )
    raise NoRegularShear(
        f"no candidate shear in {SHEAR_CANDIDATES} projects this knot regularly"
    )


# ---------------------------------------------------------------------------
# determinant machinery


def _plist_trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _plist_mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _plist_trim(out)


def _plist_sub(f: list[int], g: list[int]) -> list[int]:
    out = list(f) + [0] * (len(g) - len(f))
    for j, b in enumerate(g):
        out[j] -= b
    return _plist_trim(out)


def _plist_divexact(f: list[int], d: list[int]) -> list[int]:
    """Exact division in Z[t]; valid because Bareiss quotients are minors."""
    if not f:
        return []
    f = list(f)
    q = [0] * (len(f) - len(d) + 1)
    dlead = d[-1]
    for k in range(len(q) - 1, -1, -1):
        c = f[len(d) - 1 + k]
        if c % dlead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q[k] = c // dlead
        if q[k]:
            for j, b in enumerate(d):
                f[j + k] -= q[k] * b
    if any(f):
        raise ArithmeticError("non-exact polynomial division (remainder)")
    return _plist_trim(q)


def _bareiss_det(mat: list[list[list[int]]]) -> list[int]:
    m = len(mat)
    if m == 0:
        return [1]
    prev = [1]
    for k in range(m - 1):
        if not mat[k][k]:
            for r in range(k + 1, m):
                if mat[r][k]:
                    mat[k], mat[r] = mat[r], mat[k]  # sign irrelevant up to units
                    break
            else:
                return []
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                num = _plist_sub(
                    _plist_mul(mat[i][j], mat[k][k]),
                    _plist_mul(mat[i][k], mat[k][j]),
                )
                mat[i][j] = _plist_divexact(num, prev) if num else []
            mat[i][k] = []
        prev = mat[k][k]
    return mat[m - 1][m - 1]


def _det_up_to_units(rows: dict[int, dict[int, LaurentPoly]]) -> LaurentPoly:
    """Determinant of a sparse Laurent matrix, up to a unit +-t^k.

    Unit-monomial pivots are eliminated first with Markowitz ordering; the
    remaining dense core goes through Bareiss.  Determinant-scaling by
    units is not tracked since callers normalize.
    """
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)

    def eliminate(r0: int, c0: int) -> None:
        pivot_row = rows.pop(r0)
        pivot = pivot_row[c0]
        k = pivot.min_exp
        coef = pivot.coeff(k)  # +-1
        for c in pivot_row:
            col_rows[c].discard(r0)
        for r in list(col_rows.get(c0, ())):
            row = rows[r]
            factor = row[c0].shift(-k) * coef  # entry / pivot
            for c, val in pivot_row.items():
                if c == c0:
                    continue
                newv = row.get(c, LaurentPoly.zero()) - factor * val
                if newv:
                    row[c] = newv
                    col_rows.setdefault(c, set()).add(r)
                else:
                    row.pop(c, None)
                    col_rows.get(c, set()).discard(r)
            row.pop(c0, None)
            col_rows[c0].discard(r)
        col_rows.pop(c0, None)

    singular = False
    while rows and not singular:
        best = None
        for r, row in rows.items():
            if not row:
                singular = True
                break
            for c, val in row.items():
                if val.is_unit_monomial():
                    cost = (len(col_rows[c]) - 1) * (len(row) - 1)
                    cand = (cost, r, c)
                    if best is None or cand < best:
                        best = cand
        if singular or best is None:
            break
        eliminate(best[1], best[2])
    if singular:
        return LaurentPoly.zero()
    if not rows:
        return LaurentPoly.one()
    # dense core: shift each row so exponents start at zero, then Bareiss
    row_ids = sorted(rows)
    col_ids = sorted({c for row in rows.values() for c in row})
    if len(row_ids) != len(col_ids):
        return LaurentPoly.zero()
    dense = []
    for r in row_ids:
        shift = min(p.min_exp for p in rows[r].values())
        row_lists = []
        for c in col_ids:
            p = rows[r].get(c)
            if p is None:
                row_lists.append([])
            else:
                q = p.shift(-shift)
                row_lists.append([q.coeff(e) for e in range(q.max_exp + 1)])
        dense.append(row_lists)
    det = _bareiss_det(dense)
    return LaurentPoly({e: v for e, v in enumerate(det)})


# ---------------------------------------------------------------------------
# the polynomial


def alexander(pd: PlanarDiagram) -> LaurentPoly:
    """Normalized Alexander polynomial of a one-component diagram.

    Raises:
        MultiComponent: if the diagram has more than one component.
        ArithmeticError: if internal self-tests fail (singular matrix,
            asymmetric result, or |value at t=1| != 1), which indicates a
            malformed diagram rather than bad input data.
    """
    if pd.components != 1:
        raise MultiComponent(f"diagram has {pd.components} components")
    n = pd.crossing_count
    if n == 0:
        return LaurentPoly.one()
    arc_of_edge, n_arcs = pd.wirtinger_arcs()
    t = LaurentPoly.t(1)
    one = LaurentPoly.one()
    rows: dict[int, dict[int, LaurentPoly]] = {}
    drop_arc = n_arcs - 1
    for idx, crossing in enumerate(pd.crossings[:-1]):
        o = arc_of_edge[crossing.over_in]
        a = arc_of_edge[crossing.under_in]
        b = arc_of_edge[crossing.under_out]
        if crossing.sign > 0:
            contrib = ((o, one - t), (a, t), (b, -one))
        else:
            # relation row scaled by t to stay in Z[t]
            contrib = ((o, t - one), (a, one), (b, -t))
        row: dict[int, LaurentPoly] = {}
        for arc, val in contrib:
            if arc == drop_arc:
                continue
            acc = row.get(arc, LaurentPoly.zero()) + val
            if acc:
                row[arc] = acc
            else:
                row.pop(arc, None)
        rows[idx] = row
    det = _det_up_to_units(rows)
    if not det:
        raise ArithmeticError("singular Alexander matrix: malformed diagram")
    poly = det.normalize()
    if poly(1) != 1:
        raise ArithmeticError(f"Alexander self-test failed: value at t=1 is {poly(1)}")
    if not poly.is_palindromic():
        raise ArithmeticError(f"Alexander self-test failed: {poly} is not symmetric")
    return poly


def same_knot_certificate(a: LaurentPoly, b: LaurentPoly) -> str:
    """Compare two normalized polynomials: 'consistent' or 'inconsistent'.

    Equality of Alexander polynomials is a necessary condition for two
    curves to be the same knot, never a sufficient one; an 'inconsistent'
    verdict proves the knot type changed, a 'consistent' one does not
    prove it was preserved.
    """
    return "consistent" if a.normalize() == b.normalize() else "inconsistent"
