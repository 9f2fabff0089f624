"""Vector bundles on the projective line from transition matrices.

Charts: ``s`` lives near ``z = 0`` (polynomials in ``z``), ``t`` lives away
from it (polynomials in ``w = 1/z``); on the overlap ``t = g s``.  With this
convention the scalar transition ``z^-d`` glues to ``O(d)``, so
``deg E = -val(det g)``.

Cohomology uses the two-chart atlas and therefore needs ``g`` invertible over
``k[z, 1/z]``: Laurent-polynomial entries and a monomial determinant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _linalg
from .errors import CapExceeded, NotAUnit, NotInvertible, SchemaError, UnsupportedRing, UnsupportedTransition
from .laurent import (BFraction, CrtWitness, LaurentPoly, UnitWitness, classify_series_unit,
                      encode_entry, invert_in_B)
from .matfact import MatLaurent, det_adj, factorize_gdelta
from .ring import Ring

CHART_LABELS = {
    "near_p": "Spec of polynomials in z (localized data as fractions)",
    "away": "Spec of polynomials in w = 1/z",
}


@dataclass
class TransitionDatum:
    """A transition matrix over B together with its invertibility certificate."""

    g: MatLaurent
    det_witness: UnitWitness | CrtWitness
    det_inverse: BFraction

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def ring(self) -> Ring:
        return self.g.ring

    @classmethod
    def certify(cls, g: MatLaurent) -> TransitionDatum:
        if g.kind == "series":
            raise SchemaError("a transition matrix must have exact entries in B")
        g = g.as_fractions()
        d, _ = det_adj(g)
        w = classify_series_unit(d)
        if not isinstance(w, (UnitWitness, CrtWitness)):
            raise NotInvertible("det(g) is not a unit of B", witness=w.to_json())
        try:
            inv = invert_in_B(d)
        except NotAUnit as exc:
            raise NotInvertible(str(exc)) from exc
        return cls(g, w, inv)

    def to_json(self) -> dict:
        return {"n": self.n, "g": self.g.to_json(),
                "det_witness": self.det_witness.to_json(),
                "det_inverse": encode_entry(self.det_inverse)}


@dataclass
class BundleTriple:
    transition: TransitionDatum
    formal_delta: MatLaurent | None = None
    chart_labels: dict = field(default_factory=lambda: dict(CHART_LABELS))

    @property
    def n(self) -> int:
        return self.transition.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "g": self.transition.g.to_json(),
            "delta": self.formal_delta.to_json() if self.formal_delta is not None else None,
        }


def bundle_from_matrix(g: MatLaurent | TransitionDatum) -> BundleTriple:
    if not isinstance(g, TransitionDatum):
        g = TransitionDatum.certify(g)
    return BundleTriple(g)


def transition_of_triple(t: BundleTriple) -> TransitionDatum:
    return t.transition


def formal_from_matrix(gamma: MatLaurent, prec: int) -> BundleTriple:
    """Factor ``gamma = g * delta`` and keep ``g`` as the transition; ``delta``
    records the change of trivialization on the formal disc."""
    res = factorize_gdelta(gamma, prec)
    datum = TransitionDatum.certify(res.g)
    return BundleTriple(datum, formal_delta=res.delta)


# ----------------------------------------------------------------------------------
# Two-chart cohomology
# ----------------------------------------------------------------------------------

@dataclass
class SectionSpace:
    m: int
    dimension: int
    basis: list[tuple[list[LaurentPoly], list[LaurentPoly]]]
    degree_bound: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "dimension": self.dimension,
            "degree_bound": self.degree_bound,
            "basis": [{"s": [encode_entry(p) for p in s], "t": [encode_entry(p) for p in t]}
                      for s, t in self.basis],
        }


def _laurent_pair(g: MatLaurent | TransitionDatum):
    """``(g, g^-1)`` as Laurent-polynomial rows over a field."""
    if isinstance(g, TransitionDatum):
        g = g.g
    ring = g.ring
    if not ring.is_field:
        raise UnsupportedRing(f"cohomology is computed over fields only, got {ring}")
    if g.kind == "series":
        raise UnsupportedTransition("truncated entries are not transition data")
    rows = []
    for r in g.rows:
        row = []
        for x in r:
            if isinstance(x, BFraction):
                if not x.has_trivial_den():
                    raise UnsupportedTransition("denominator is not a power of z")
                x = x.to_laurent()
            row.append(x)
        rows.append(row)
    G = MatLaurent(rows)
    d, adj = det_adj(G)
    if d.is_zero() or len(d.terms) != 1:
        raise UnsupportedTransition(
            f"det(g) = {d!r} is not a monomial, so g is not invertible over k[z, 1/z]")
    (v, c), = d.terms.items()
    dinv = LaurentPoly.monomial(ring, -v, ring.inv(c))
    return G.rows, [[x * dinv for x in r] for r in adj.rows], v


def _span(rows) -> int:
    """Width of the degree range of the entries, the constant term included."""
    terms = [x for r in rows for x in r if not x.is_zero()]
    return max(0, max(x.hi for x in terms)) - min(0, min(x.lo for x in terms))


def _maxdeg(rows) -> int:
    return max(x.hi for r in rows for x in r if not x.is_zero())


def _cap(rows, m: int) -> int:
    return abs(m) + len(rows) * _span(rows) + 4


def _twist(rows, m: int):
    return [[x.shift(-m) for x in r] for r in rows]


def _sections_at(ring: Ring, h, D: int, want_basis: bool):
    """Solve for s in k[z]^n of degree <= D with h s free of positive z-powers."""
    n = len(h)
    ncols = n * (D + 1)
    top = max((x.hi for r in h for x in r if not x.is_zero()), default=0) + D
    eqs = []
    for r in range(n):
        for e in range(1, top + 1):
            row = [ring.zero] * ncols
            nonzero = False
            for i in range(n):
                hri = h[r][i]
                for k in range(D + 1):
                    c = hri.terms.get(e - k)
                    if c is not None:
                        row[i * (D + 1) + k] = c
                        nonzero = True
            if nonzero:
                eqs.append(row)
    if not want_basis:
        return ncols - _linalg.rank(ring, eqs, ncols), []
    basis = []
    for vec in _linalg.nullspace(ring, eqs, ncols):
        s = [LaurentPoly.from_dense(ring, 0, vec[i * (D + 1):(i + 1) * (D + 1)]) for i in range(n)]
        t_z = [sum((h[r][i] * s[i] for i in range(n)), LaurentPoly(ring)) for r in range(n)]
        # t as a polynomial in w = 1/z
        t = [LaurentPoly(ring, {-d: c for d, c in p.terms.items()}) for p in t_z]
        basis.append((s, t))
    return len(basis), basis


def global_sections(g: MatLaurent | TransitionDatum, m: int = 0, *, basis: bool = True) -> SectionSpace:
    """``H^0(E(m))``: pairs ``(s, t)`` with ``t = z^-m g s``."""
    G, Ginv, _ = _laurent_pair(g)
    ring = G[0][0].ring
    h = _twist(G, m)
    hinv = _twist(Ginv, -m)
    cap = _cap(G, m)
    # every section satisfies s = h^-1 t with t regular at infinity, so
    # deg s <= maxdeg(h^-1); stabilization is checked from there on
    D = max(0, _maxdeg(hinv))
    dims = []
    while True:
        if D > cap:
            raise CapExceeded(f"section degree bound exceeded cap {cap}", cap=cap)
        dim, _ = _sections_at(ring, h, D, False)
        dims.append(dim)
        if len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3]:
            break
        D += 1
    D -= 2
    dim, bas = _sections_at(ring, h, D, basis)
    return SectionSpace(m, dim, bas, D)


def _h1_at(ring: Ring, hinv, W: int) -> int:
    """dim of window [-W, -1] modulo projections of h^-1 k[w]^n."""
    n = len(hinv)
    if W <= 0:
        return 0
    Dt = max(0, W + _maxdeg(hinv))
    cols = []
    for i in range(n):
        for d in range(Dt + 1):
            vec = []
            for r in range(n):
                p = hinv[r][i]
                vec.extend(p.terms.get(e + d, ring.zero) for e in range(-W, 0))
            cols.append(vec)
    return n * W - _linalg.rank(ring, cols, n * W)


def cech_h1(g: MatLaurent | TransitionDatum, m: int = 0) -> int:
    """``H^1(E(m))`` as Laurent vectors modulo (z-polynomials + h^-1 w-polynomials)."""
    G, Ginv, _ = _laurent_pair(g)
    ring = G[0][0].ring
    h = _twist(G, m)
    hinv = _twist(Ginv, -m)
    cap = _cap(G, m)
    # anything of degree <= -maxdeg(h) already lies in h^-1 k[w]^n
    W = max(0, _maxdeg(h) - 1)
    dims = []
    while True:
        if W > cap:
            raise CapExceeded(f"window half-width exceeded cap {cap}", cap=cap)
        dims.append(_h1_at(ring, hinv, W))
        if len(dims) >= 3 and dims[-1] == dims[-2] == dims[-3]:
            return dims[-1]
        W += 1


def splitting_type(g: MatLaurent | TransitionDatum) -> tuple[int, ...]:
    """``(d_1 >= ... >= d_n)`` with ``E = O(d_1) + ... + O(d_n)``, read off the
    jumps of ``m -> h^0(E(m))``."""
    G, Ginv, v = _laurent_pair(g)
    n = len(G)
    # h^0(E(m)) = 0 once m + maxdeg(g^-1) < 0
    m = -_maxdeg(Ginv) - 1
    steps = 2 * (n * _span(G) + 4) + 2
    prev = global_sections(g, m, basis=False).dimension
    if prev:
        raise AssertionError("a priori vanishing bound violated")
    counts: list[int] = []
    last_delta = 0
    for _ in range(steps):
        m += 1
        cur = global_sections(g, m, basis=False).dimension
        delta = cur - prev
        # delta(m) = #{i : d_i >= -m}
        counts.extend([-m] * (delta - last_delta))
        last_delta = delta
        prev = cur
        if delta == n:
            out = tuple(sorted(counts, reverse=True))
            if sum(out) != -v:
                raise AssertionError("splitting type violates the degree law")
            return out
    raise CapExceeded(f"h^0 profile did not saturate within {steps} twists")


# ----------------------------------------------------------------------------------
# Random fixtures
# ----------------------------------------------------------------------------------

def _elementary_product(ring: Ring, n: int, rng, lo: int, hi: int, count: int,
                        diag_shift: int = 0) -> MatLaurent:
    diag = []
    for _ in range(n):
        a = rng.randint(-diag_shift, diag_shift)
        diag.append(LaurentPoly.monomial(ring, a, ring.random_unit(rng)))
    M = MatLaurent.diagonal(diag)
    for _ in range(count):
        i, j = rng.sample(range(n), 2)
        rows = [[LaurentPoly.constant(ring, int(a == b)) for b in range(n)] for a in range(n)]
        rows[i][j] = LaurentPoly(ring, {d: ring.random_element(rng) for d in range(lo, hi + 1)})
        M = M * MatLaurent(rows) if rng.random() < 0.5 else MatLaurent(rows) * M
    return M


def random_transition(ring: Ring, n: int, rng, deg: int = 2, shift: int = 2) -> MatLaurent:
    """Random element of ``GL_n(k[z, 1/z])``: monomial diagonal times elementary factors."""
    return _elementary_product(ring, n, rng, -deg, deg, n + 1 if n > 1 else 0, shift)


def random_chart_change(ring: Ring, n: int, rng, side: str, deg: int = 2) -> MatLaurent:
    """Random element of ``GL_n(k[z])`` (``side="z"``) or ``GL_n(k[w])`` (``side="w"``),
    written in the z-coordinate."""
    lo, hi = (0, deg) if side == "z" else (-deg, 0)
    return _elementary_product(ring, n, rng, lo, hi, n + 1 if n > 1 else 0, 0)
