"""Matrices over Laurent polynomials, truncated series and B.

Main entry points:

* :func:`det_adj` -- cofactor determinant and adjugate (exact over any
  commutative ring, precision-tracked on truncated entries);
* :func:`factorize_gdelta` -- write ``gamma = g * delta`` with ``g`` over B and
  ``delta`` invertible over ``R[[z]]`` by searching truncation orders;
* :func:`cartan_type` -- exponents of the Smith form over ``k[z]_(z)``;
* :func:`coset_equal` -- compare ``gamma1 GL_n(R[[z]])`` with ``gamma2 GL_n(R[[z]])``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .errors import (MixedRings, NotAUnit, NotInvertible, PrecisionExhausted, SchemaError,
                     SingularMatrix, UnsupportedRing)
from .laurent import (BFraction, CrtWitness, Entry, LaurentPoly, NotUnit, TruncatedSeries,
                      Undecidable, UnitWitness, classify_series_unit, decode_entry,
                      encode_entry, expand, invert_in_B, invert_series_unit, series_inverse)
from .ring import Ring


KINDS = {LaurentPoly: "laurent", TruncatedSeries: "series", BFraction: "fraction"}


class MatLaurent:
    """Square matrix whose entries all share one ring and one representation kind."""

    __slots__ = ("rows", "ring", "kind")

    def __init__(self, rows: Sequence[Sequence[Entry]]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise SchemaError("matrix must be square and nonempty")
        ring = rows[0][0].ring
        kinds = {KINDS[type(x)] for r in rows for x in r}
        if any(x.ring != ring for r in rows for x in r):
            raise SchemaError("matrix entries live over different rings")
        if len(kinds) != 1:
            raise SchemaError(f"mixed entry kinds {sorted(kinds)}")
        self.rows = rows
        self.ring = ring
        self.kind = kinds.pop()

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Entry:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, ring: Ring, n: int, kind: str = "laurent") -> MatLaurent:
        return cls([[_const(ring, kind, int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[Entry]) -> MatLaurent:
        ring = entries[0].ring
        kind = KINDS[type(entries[0])]
        n = len(entries)
        return cls([[entries[i] if i == j else _const(ring, kind, 0) for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_lists(cls, ring: Ring, rows: Sequence[Sequence[dict | int]]) -> MatLaurent:
        """Build from ``{degree: coeff}`` dicts (or ints) as exact Laurent polynomials."""
        def conv(x):
            if isinstance(x, int):
                return LaurentPoly.constant(ring, x)
            return LaurentPoly(ring, {d: ring.from_int(c) if isinstance(c, int) else c
                                      for d, c in x.items()})
        return cls([[conv(x) for x in r] for r in rows])

    def map(self, fn: Callable[[Entry], Entry]) -> MatLaurent:
        return MatLaurent([[fn(x) for x in r] for r in self.rows])

    def as_fractions(self) -> MatLaurent:
        if self.kind == "series":
            raise TypeError("truncated series are not elements of B")
        return self.map(BFraction.of)

    def expand(self, prec: int) -> MatLaurent:
        """Entries as truncated series ``+ O(z^prec)``."""
        def conv(x):
            if isinstance(x, TruncatedSeries):
                return x.truncate(prec)
            return expand(x, prec)
        return self.map(conv)

    def exact_series(self) -> MatLaurent:
        """Laurent-polynomial entries as exact (infinite-precision) series."""
        if self.kind != "laurent":
            raise TypeError("only Laurent-polynomial matrices have exact series form")
        return self.map(lambda x: x.to_series())

    def transpose(self) -> MatLaurent:
        return MatLaurent([list(c) for c in zip(*self.rows)])

    def __mul__(self, other):
        if isinstance(other, MatLaurent):
            if other.n != self.n:
                raise SchemaError("dimension mismatch")
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = r[0] * c[0]
                    for k in range(1, n):
                        acc = acc + r[k] * c[k]
                    row.append(acc)
                out.append(row)
            return MatLaurent(out)
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def __add__(self, other: MatLaurent) -> MatLaurent:
        return MatLaurent([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: MatLaurent) -> MatLaurent:
        return MatLaurent([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __eq__(self, other):
        if not isinstance(other, MatLaurent):
            return NotImplemented
        return self.n == other.n and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def agrees_with(self, other: MatLaurent, prec: int | None = None) -> bool:
        """Entrywise equality on the common known window."""
        def ser(x):
            if isinstance(x, BFraction):
                raise TypeError("expand fractions before comparing windows")
            return x if isinstance(x, TruncatedSeries) else x.to_series()
        return all(ser(a).agrees_with(ser(b), prec)
                   for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def precision(self) -> int | None:
        """Smallest entry precision (``None`` if every entry is exact)."""
        precs = [x.prec for r in self.rows for x in r
                 if isinstance(x, TruncatedSeries) and x.prec is not None]
        return min(precs) if precs else None

    def to_json(self) -> list:
        return [[encode_entry(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, ring: Ring, obj: Any) -> MatLaurent:
        if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
            raise SchemaError("matrix must be a nonempty list of rows")
        rows = [[decode_entry(ring, x) for x in r] for r in obj]
        kinds = {KINDS[type(x)] for r in rows for x in r}
        if kinds == {"laurent", "fraction"}:
            rows = [[BFraction.of(x) for x in r] for r in rows]
        elif kinds == {"laurent", "series"}:
            rows = [[x.to_series() if isinstance(x, LaurentPoly) else x for x in r] for r in rows]
        return cls(rows)

    def __repr__(self):
        return "[" + ",\n ".join("[" + ", ".join(repr(x) for x in r) + "]" for r in self.rows) + "]"


def _const(ring: Ring, kind: str, c: int) -> Entry:
    p = LaurentPoly.constant(ring, c)
    if kind == "laurent":
        return p
    if kind == "series":
        return p.to_series()
    return BFraction(p)


def block_diag(a: MatLaurent, b: MatLaurent) -> MatLaurent:
    kind = a.kind
    zero = _const(a.ring, kind, 0)
    rows = [list(r) + [zero] * b.n for r in a.rows]
    rows += [[zero] * a.n + list(r) for r in b.rows]
    return MatLaurent(rows)


# ----------------------------------------------------------------------------------
# Determinant and adjugate
# ----------------------------------------------------------------------------------

def _det_sub(rows, cols: tuple[int, ...], memo: dict, start: int, zero, one):
    """Determinant of ``rows[start:]`` restricted to ``cols`` by Laplace expansion."""
    if not cols:
        return one
    key = (start, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    row = rows[start]
    acc = None
    for pos, c in enumerate(cols):
        entry = row[c]
        if _is_zero(entry):
            continue
        minor = _det_sub(rows, cols[:pos] + cols[pos + 1:], memo, start + 1, zero, one)
        term = entry * minor
        if acc is None:
            acc = term if pos % 2 == 0 else -term
        else:
            acc = acc + term if pos % 2 == 0 else acc - term
    if acc is None:
        acc = zero
    memo[key] = acc
    return acc


def _is_zero(x: Entry) -> bool:
    if isinstance(x, TruncatedSeries):
        return x.prec is None and x.valuation() is None
    return x.is_zero()


def det(M: MatLaurent) -> Entry:
    zero, one = _const(M.ring, M.kind, 0), _const(M.ring, M.kind, 1)
    return _det_sub(M.rows, tuple(range(M.n)), {}, 0, zero, one)


def det_adj(M: MatLaurent) -> tuple[Entry, MatLaurent]:
    """Cofactor determinant and adjugate; ``M * adj = det * I`` on the known window."""
    n = M.n
    zero, one = _const(M.ring, M.kind, 0), _const(M.ring, M.kind, 1)
    d = _det_sub(M.rows, tuple(range(n)), {}, 0, zero, one)
    if n == 1:
        return d, MatLaurent([[one]])
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        sub_rows = [r for k, r in enumerate(M.rows) if k != i]
        memo: dict = {}
        for j in range(n):
            cols = tuple(c for c in range(n) if c != j)
            minor = _det_sub(sub_rows, cols, memo, 0, zero, one)
            adj[j][i] = minor if (i + j) % 2 == 0 else -minor
    return d, MatLaurent(adj)


# ----------------------------------------------------------------------------------
# Membership in GL_n(R[[z]])
# ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class Yes:
    def to_json(self) -> dict:
        return {"result": "yes"}


@dataclass(frozen=True)
class No:
    """Either an entry with a nonzero coefficient at negative ``degree``, or a
    determinant whose constant term ``det_constant`` is not a unit."""

    degree: int | None = None
    entry: tuple[int, int] | None = None
    det_constant: Any = None

    def to_json(self, ring: Ring | None = None) -> dict:
        out: dict = {"result": "no"}
        if self.degree is not None:
            out["degree"] = self.degree
            out["entry"] = list(self.entry)
        else:
            c = self.det_constant
            out["det_constant"] = ring.encode(c) if ring is not None else c
        return out


def _window(x: Entry) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    if isinstance(x, LaurentPoly):
        return x.to_series()
    return expand(x, 1)


def membership_gl_power_series(M: MatLaurent) -> Yes | No | Undecidable:
    """Is ``M`` in ``GL_n(R[[z]])``?  Decided from the known windows only."""
    wins = M.map(_window)
    undecided = None
    for i, r in enumerate(wins.rows):
        for j, x in enumerate(r):
            for d in range(x.val, min(0, x.end)):
                if not x.ring.is_zero(x.coeffs[d - x.val]):
                    return No(degree=d, entry=(i, j))
            if x.prec is not None and x.prec < 0:
                undecided = f"entry ({i},{j}) known only below z^{x.prec}"
    if undecided:
        return Undecidable(undecided)
    d = det(wins.map(_drop_negative))
    if not isinstance(d, TruncatedSeries):
        d = d.to_series()
    if d.prec is not None and d.prec <= 0:
        return Undecidable("determinant constant term beyond precision")
    c0 = d.coeff(0)
    if not M.ring.is_unit(c0):
        return No(det_constant=c0)
    return Yes()


# ----------------------------------------------------------------------------------
# gamma = g * delta
# ----------------------------------------------------------------------------------

@dataclass
class FactorizationResult:
    g: MatLaurent
    delta: MatLaurent
    prec: int
    det_g_witness: UnitWitness | CrtWitness
    det_delta_unit: Any
    truncation_order: int
    det_delta_inverse: Any = None

    def to_json(self) -> dict:
        ring = self.g.ring
        return {
            "g": self.g.to_json(),
            "delta": self.delta.to_json(),
            "prec": self.prec,
            "truncation_order": self.truncation_order,
            "certificates": {
                "det_g": self.det_g_witness.to_json(),
                "det_delta_constant": ring.encode(self.det_delta_unit),
                "det_delta_constant_inverse": ring.encode(self.det_delta_inverse),
            },
        }


def _as_series_matrix(M: MatLaurent, prec: int, strict: bool = True) -> MatLaurent:
    def conv(x):
        if isinstance(x, TruncatedSeries):
            if strict and x.prec is not None and x.prec < prec:
                raise PrecisionExhausted(
                    f"input entry known only to O(z^{x.prec}), need {prec}", prec=x.prec)
            return x.truncate(prec)
        return expand(x, prec)
    return M.map(conv)


def _span(G: MatLaurent) -> int:
    spans = [x.prec - x.valuation() for r in G.rows for x in r
             if x.prec is not None and x.valuation() is not None]
    return max(spans, default=1)


def _left_divide(g: MatLaurent, G: MatLaurent):
    """``g^-1 * G`` for an exact Laurent matrix ``g`` invertible over B.

    The inverse is exact, so it is expanded just far enough that ``G``'s own
    precision is the binding constraint.  Returns ``None`` when ``det g`` is
    not certified a unit, else ``(product, det witness)``.
    """
    ring = G.ring
    d, adj = det_adj(g)
    w = classify_series_unit(d)
    if not isinstance(w, (UnitWitness, CrtWitness)):
        return None
    dinv = invert_in_B(d)
    inv_den = invert_series_unit(dinv.den, max(_span(G), 1))
    n = G.n
    left = []
    for r in adj.rows:
        row = []
        for a in r:
            num = a * dinv.num
            if num.is_zero():
                row.append(TruncatedSeries(ring, 0, [], None))
            else:
                row.append(num.to_series() * inv_den)
        left.append(row)
    out = []
    cols = list(zip(*G.rows))
    for r in left:
        out_row = []
        for c in cols:
            acc = r[0] * c[0]
            for k in range(1, n):
                acc = acc + r[k] * c[k]
            out_row.append(acc)
        out.append(out_row)
    return MatLaurent(out), w


def factorize_gdelta(gamma: MatLaurent, prec: int) -> FactorizationResult:
    """Factor ``gamma = g * delta`` with ``g`` over B and ``delta`` in ``GL_n(R[[z]])``.

    Truncation orders ``T`` are tried in increasing order; ``g`` is gamma with
    every entry cut to degrees ``< T``.  ``T`` starts at ``max(1, v + 1)`` for
    ``v`` the lowest represented degree, so the whole principal part and the
    constant term are kept from the first try.
    """
    G = _as_series_matrix(gamma, prec)
    ring = G.ring
    # exact input: decide the determinant exactly rather than on a window
    d_gamma = det(gamma.as_fractions()) if gamma.kind != "series" else det(G)
    cls = classify_series_unit(d_gamma)
    if isinstance(cls, NotUnit):
        raise NotInvertible("det(gamma) is nilpotent", witness=cls.to_json())

    known = [x.valuation() for r in G.rows for x in r if x.valuation() < x.prec]
    if not known:
        raise NotInvertible("gamma is zero on its window")
    v_min = min(known)

    last_failure = "no truncation order tried"
    prev_key = None
    for T in range(max(1, v_min + 1), prec + 1):
        g_rows = [[x.to_laurent().truncate(T) for x in r] for r in G.rows]
        key = tuple(tuple(frozenset(p.terms.items()) for p in r) for r in g_rows)
        if key == prev_key:
            continue
        prev_key = key
        g_T = MatLaurent(g_rows)
        solved = _left_divide(g_T, G)
        if solved is None:
            last_failure = f"T={T}: det(g_T) is not certified a unit"
            continue
        delta, w = solved
        ok, why, c0 = _check_delta(delta)
        if not ok:
            last_failure = f"T={T}: {why}"
            continue
        delta = delta.map(_drop_negative)
        achieved = delta.precision()
        return FactorizationResult(
            g=g_T.as_fractions(),
            delta=delta,
            prec=achieved,
            det_g_witness=w,
            det_delta_unit=c0,
            det_delta_inverse=ring.inv(c0),
            truncation_order=T,
        )
    raise PrecisionExhausted(f"no truncation order up to {prec} certifies; last check: {last_failure}",
                             last_check=last_failure)


def _drop_negative(x: TruncatedSeries) -> TruncatedSeries:
    if x.val >= 0:
        return x
    return TruncatedSeries(x.ring, 0, x.coeffs[-x.val:], x.prec)


def _check_delta(delta: MatLaurent):
    for r in delta.rows:
        for x in r:
            if x.prec is not None and x.prec <= 0:
                return False, f"delta entry known only to O(z^{x.prec})", None
            for d in range(x.val, min(0, x.end)):
                if not x.ring.is_zero(x.coeffs[d - x.val]):
                    return False, f"delta has a nonzero z^{d} coefficient", None
    d = det(delta.map(_drop_negative))
    c0 = d.coeff(0)
    if not delta.ring.is_unit(c0):
        return False, "det(delta)(0) is not a unit", None
    return True, "", c0


# ----------------------------------------------------------------------------------
# Cartan type
# ----------------------------------------------------------------------------------

def _frac_val(x: BFraction) -> int | None:
    return x.num.lo


def cartan_type(M: MatLaurent) -> tuple[int, ...]:
    """Exponents ``a_1 >= ... >= a_n`` with ``M = u diag(z^a_i) v``, ``u, v``
    invertible over ``k[z]_(z)``.  Exact entries over a field only."""
    ring = M.ring
    if not ring.is_field:
        raise UnsupportedRing(f"Cartan type needs a field, got {ring}")
    if M.kind == "series":
        raise TypeError("Cartan type is only computed for exact entries")
    A = [[BFraction.of(x) for x in r] for r in M.rows]
    n = M.n
    exps = []
    for s in range(n):
        best = None
        for i in range(s, n):
            for j in range(s, n):
                v = _frac_val(A[i][j])
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise SingularMatrix("matrix is singular")
        v, i, j = best
        A[s], A[i] = A[i], A[s]
        for row in A:
            row[s], row[j] = row[j], row[s]
        p_inv = invert_in_B(A[s][s])
        for i in range(s + 1, n):
            if A[i][s].is_zero():
                continue
            f = A[i][s] * p_inv
            A[i] = [A[i][c] - f * A[s][c] if c > s else BFraction.zero(ring) if c == s else A[i][c]
                    for c in range(n)]
        exps.append(v)
    return tuple(sorted(exps, reverse=True))


# ----------------------------------------------------------------------------------
# Coset equality
# ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class Equal:
    def to_json(self) -> dict:
        return {"result": "equal"}


@dataclass(frozen=True)
class NotEqual:
    witness: No

    def to_json(self, ring: Ring | None = None) -> dict:
        return {"result": "not_equal", "witness": self.witness.to_json(ring)}


def inverse_matrix(M: MatLaurent, prec: int | None = None) -> MatLaurent:
    """Exact inverse over B, or a windowed inverse for truncated entries."""
    if M.kind == "series":
        d, adj = det_adj(M)
        dinv = series_inverse(d)
        return adj.map(lambda x: x * dinv)
    F = M.as_fractions()
    d, adj = det_adj(F)
    try:
        dinv = invert_in_B(d)
    except NotAUnit as exc:
        raise NotInvertible(str(exc)) from exc
    return adj.map(lambda x: x * dinv)


def coset_equal(g1: MatLaurent, g2: MatLaurent, prec: int | None = None):
    """Equal iff ``g1^-1 g2`` lies in ``GL_n(R[[z]])``."""
    if g1.ring != g2.ring:
        raise MixedRings(f"{g1.ring} vs {g2.ring}")
    exact = g1.kind != "series" and g2.kind != "series"
    if exact:
        X = inverse_matrix(g1) * g2.as_fractions()
    else:
        if prec is None:
            raise SchemaError("prec is required for truncated input")
        # shorter input windows are used as they are; the ball rule accounts for them
        A = _as_series_matrix(g1, prec, strict=False)
        B = _as_series_matrix(g2, prec, strict=False)
        cls = classify_series_unit(det(A))
        if isinstance(cls, NotUnit):
            raise NotInvertible("det(gamma1) is nilpotent")
        if isinstance(cls, Undecidable):
            return Undecidable("det(gamma1): " + cls.reason)
        # gamma1 = g1 delta1 with delta1 in GL_n(R[[z]]), so gamma1^-1 gamma2 is in
        # GL_n(R[[z]]) iff g1^-1 gamma2 is; g1^-1 is exact, which saves precision.
        try:
            res = factorize_gdelta(A, A.precision())
            g1 = res.g.map(BFraction.to_laurent)
            X, _ = _left_divide(g1, B)
        except PrecisionExhausted:
            X = inverse_matrix(A) * B
    m = membership_gl_power_series(X)
    if isinstance(m, Yes):
        return Equal()
    if isinstance(m, No):
        return NotEqual(m)
    return m


# ----------------------------------------------------------------------------------
# Random fixtures
# ----------------------------------------------------------------------------------

def random_poly(ring: Ring, rng: random.Random, lo: int, hi: int) -> LaurentPoly:
    return LaurentPoly(ring, {d: ring.random_element(rng) for d in range(lo, hi + 1)})


def random_b_unit(ring: Ring, rng: random.Random, max_nil_terms: int = 6,
                  max_deg: int = 6, with_den: bool = True) -> BFraction:
    """``(nilpotent low tail) + (unit-leading polynomial)`` over a random admissible denominator."""
    j = rng.randint(-3, 3)
    tail = {j - 1 - rng.randint(0, 5): ring.random_nilpotent(rng)
            for _ in range(rng.randint(0, max_nil_terms))}
    body = {j: ring.random_unit(rng)}
    for d in range(j + 1, j + rng.randint(0, max_deg) + 1):
        body[d] = ring.random_element(rng)
    num = LaurentPoly(ring, tail) + LaurentPoly(ring, body)
    den = LaurentPoly.one(ring)
    if with_den:
        den = LaurentPoly(ring, {0: ring.random_unit(rng)}) + random_poly(
            ring, rng, 1, rng.randint(0, 3))
    return BFraction(num, den)


def _elementary(ring: Ring, n: int, i: int, j: int, x: Entry, kind: str) -> MatLaurent:
    rows = [[_const(ring, kind, int(a == b)) for b in range(n)] for a in range(n)]
    rows[i][j] = x
    return MatLaurent(rows)


def random_power_series_unit(ring: Ring, n: int, rng: random.Random, prec: int) -> MatLaurent:
    M = MatLaurent.diagonal([
        TruncatedSeries(ring, 0, [ring.random_unit(rng)] +
                        [ring.random_element(rng) for _ in range(prec - 1)], prec)
        for _ in range(n)])
    for _ in range(n + 1 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        x = TruncatedSeries(ring, 0, [ring.random_element(rng) for _ in range(prec)], prec)
        M = M * _elementary(ring, n, i, j, x, "series")
    return M


def random_b_matrix(ring: Ring, n: int, rng: random.Random, shift: int = 2,
                    deg: int = 2, with_den: bool = True) -> MatLaurent:
    """Product of z-shift diagonals, unit diagonals in B and elementary unipotents."""
    units = []
    for _ in range(n):
        u = random_b_unit(ring, rng, max_nil_terms=1, max_deg=1, with_den=with_den)
        # keep the poles of the unit factor modest
        units.append(u.shift(-u.num.lo + rng.randint(-shift, shift)) if not u.num.is_zero() else u)
    M = MatLaurent.diagonal(units)
    for _ in range(n + 1 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        M = M * _elementary(ring, n, i, j, BFraction(random_poly(ring, rng, -deg, deg)), "fraction")
    return M


def random_gl(n: int, kind: str, seed: int, ring: Ring, prec: int = 32):
    """Seeded fixture generator.

    ``power_series_unit`` -> matrix in ``GL_n(R[[z]])`` (truncated at ``prec``);
    ``b_matrix`` -> matrix in ``GL_n(B)``;
    ``product`` -> ``(gamma, g0, delta0)`` with ``gamma = g0 * delta0 + O(z^prec)``.
    """
    rng = random.Random(f"{kind}:{n}:{seed}")
    if kind == "power_series_unit":
        return random_power_series_unit(ring, n, rng, prec)
    if kind == "b_matrix":
        return random_b_matrix(ring, n, rng)
    if kind == "product":
        g0 = random_b_matrix(ring, n, rng)
        lo = min(x.num.lo for r in g0.rows for x in r if not x.is_zero())
        work = prec - min(lo, 0)
        d0 = random_power_series_unit(ring, n, rng, work)
        gamma = (g0.expand(work) * d0).map(lambda x: x.truncate(prec))
        if gamma.precision() < prec:
            raise AssertionError("fixture lost precision")
        return gamma, g0, d0
    raise ValueError(f"unknown kind {kind!r}")
