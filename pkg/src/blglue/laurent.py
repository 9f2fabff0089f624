"""Laurent polynomials, z-adically truncated Laurent series, and fractions in B.

``B`` is the subring of ``R((z))`` obtained from ``R[z, 1/z]`` by inverting
every polynomial whose constant term is a unit.  Its elements are stored as
``num/den`` (:class:`BFraction`) with ``den`` such a polynomial.

Truncated series follow the z-adic ball rule: ``f + O(z^prec)``.  For a
product the guaranteed precision is ``min(prec_a + val_b, prec_b + val_a)``
where ``val`` is the lowest nonzero degree actually present in the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Union

from .errors import MixedRings, NotAUnit, SchemaError, UndecidableError, UnsupportedRing
from .ring import Other, Ring, RingElement, Unit


def _check_rings(a, b) -> Ring:
    if a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")
    return a.ring


def _raw(ring: Ring, c):
    if isinstance(c, RingElement):
        if c.ring != ring:
            raise MixedRings(f"{c.ring} vs {ring}")
        return c.value
    if isinstance(c, int):
        return ring.from_int(c)
    return c


def _fmt_terms(ring: Ring, items: Iterable[tuple[int, Any]]) -> list[str]:
    out = []
    for d, c in items:
        if ring.is_zero(c):
            continue
        mono = "1" if d == 0 else ("z" if d == 1 else f"z^{d}")
        if c == ring.one:
            out.append(mono)
        elif d == 0:
            out.append(ring.format(c))
        else:
            out.append(f"{ring.format(c)}*{mono}")
    return out


class LaurentPoly:
    """Exact element of ``R[z, 1/z]`` stored as a sparse ``{degree: coeff}`` map."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict[int, Any] | None = None):
        self.ring = ring
        self.terms = {d: c for d, c in (terms or {}).items() if not ring.is_zero(c)}

    @classmethod
    def from_dense(cls, ring: Ring, low: int, coeffs: Iterable) -> LaurentPoly:
        return cls(ring, {low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, ring: Ring, degree: int, c=None) -> LaurentPoly:
        return cls(ring, {degree: ring.one if c is None else _raw(ring, c)})

    @classmethod
    def constant(cls, ring: Ring, c) -> LaurentPoly:
        return cls(ring, {0: _raw(ring, c)})

    @classmethod
    def zero(cls, ring: Ring) -> LaurentPoly:
        return cls(ring)

    @classmethod
    def one(cls, ring: Ring) -> LaurentPoly:
        return cls(ring, {0: ring.one})

    @property
    def lo(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        return max(self.terms) if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, d: int):
        return self.terms.get(d, self.ring.zero)

    def dense(self, lo: int, hi: int) -> list:
        zero = self.ring.zero
        return [self.terms.get(d, zero) for d in range(lo, hi + 1)]

    def valuation(self) -> int | None:
        return self.lo

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.ring, {d + k: c for d, c in self.terms.items()})

    def scale(self, c) -> LaurentPoly:
        c = _raw(self.ring, c)
        mul = self.ring.mul
        return LaurentPoly(self.ring, {d: mul(c, v) for d, v in self.terms.items()})

    def truncate(self, T: int) -> LaurentPoly:
        """Monomials of degree ``< T``."""
        return LaurentPoly(self.ring, {d: c for d, c in self.terms.items() if d < T})

    def tail(self, T: int) -> LaurentPoly:
        """Monomials of degree ``>= T``."""
        return LaurentPoly(self.ring, {d: c for d, c in self.terms.items() if d >= T})

    def map_coeffs(self, ring: Ring, fn) -> LaurentPoly:
        return LaurentPoly(ring, {d: fn(c) for d, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, RingElement)):
            other = LaurentPoly.constant(self.ring, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        ring = _check_rings(self, other)
        out = dict(self.terms)
        add = ring.add
        for d, c in other.terms.items():
            out[d] = add(out[d], c) if d in out else c
        return LaurentPoly(ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.neg
        return LaurentPoly(self.ring, {d: neg(c) for d, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RingElement)):
            other = LaurentPoly.constant(self.ring, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, RingElement)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        ring = _check_rings(self, other)
        if not self.terms or not other.terms:
            return LaurentPoly(ring)
        if len(self.terms) == 1 or len(other.terms) == 1:
            mul, add = ring.mul, ring.add
            out: dict[int, Any] = {}
            for d1, c1 in self.terms.items():
                for d2, c2 in other.terms.items():
                    d = d1 + d2
                    p = mul(c1, c2)
                    out[d] = add(out[d], p) if d in out else p
            return LaurentPoly(ring, out)
        a_lo, b_lo = self.lo, other.lo
        prod = ring.poly_mul(self.dense(a_lo, self.hi), other.dense(b_lo, other.hi))
        return LaurentPoly.from_dense(ring, a_lo + b_lo, prod)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> LaurentPoly:
        result = LaurentPoly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, RingElement)):
            other = LaurentPoly.constant(self.ring, other)
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (TruncatedSeries, BFraction)):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def to_series(self, prec: int | None = None) -> TruncatedSeries:
        if not self.terms:
            low = 0 if prec is None else prec
            return TruncatedSeries(self.ring, low, [], prec)
        lo = self.lo
        hi = self.hi if prec is None else min(self.hi, prec - 1)
        if prec is not None and lo >= prec:
            return TruncatedSeries(self.ring, prec, [], prec)
        return TruncatedSeries(self.ring, lo, self.dense(lo, hi), prec)

    def __repr__(self):
        terms = _fmt_terms(self.ring, sorted(self.terms.items()))
        return " + ".join(terms) if terms else "0"


class TruncatedSeries:
    """``sum coeffs[i] z^(val+i) + O(z^prec)``; ``prec=None`` means exact.

    ``val`` is a floor: coefficients below it are zero, the coefficient at
    ``val`` itself may also be zero.  A window with ``prec == val`` is empty
    (nothing known beyond "no terms below ``prec``").
    """

    __slots__ = ("ring", "val", "coeffs", "prec")

    def __init__(self, ring: Ring, val: int, coeffs: list, prec: int | None):
        self.ring = ring
        self.val = val
        self.coeffs = list(coeffs)
        self.prec = prec
        if prec is not None:
            if prec < val:
                raise ValueError(f"precision {prec} below valuation floor {val}")
            want = prec - val
            if len(self.coeffs) > want:
                del self.coeffs[want:]
            elif len(self.coeffs) < want:
                self.coeffs.extend([ring.zero] * (want - len(self.coeffs)))

    @classmethod
    def exact(cls, poly: LaurentPoly) -> TruncatedSeries:
        return poly.to_series(None)

    @classmethod
    def from_dict(cls, ring: Ring, terms: dict[int, Any], prec: int | None) -> TruncatedSeries:
        return LaurentPoly(ring, {d: _raw(ring, c) for d, c in terms.items()}).to_series(prec)

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def end(self) -> int:
        """One past the last stored degree."""
        return self.val + len(self.coeffs)

    def coeff(self, d: int):
        if d < self.val:
            return self.ring.zero
        if self.prec is not None and d >= self.prec:
            raise UndecidableError(f"coefficient of z^{d} is beyond precision {self.prec}")
        i = d - self.val
        return self.coeffs[i] if i < len(self.coeffs) else self.ring.zero

    def valuation(self) -> int | None:
        """First nonzero degree in the window; ``prec`` if none, ``None`` for exact 0."""
        is_zero = self.ring.is_zero
        for i, c in enumerate(self.coeffs):
            if not is_zero(c):
                return self.val + i
        return self.prec

    def normalized(self) -> TruncatedSeries:
        """Drop leading and (for exact series) trailing zero coefficients."""
        v = self.valuation()
        if v is None:
            return TruncatedSeries(self.ring, 0, [], None)
        coeffs = self.coeffs[v - self.val:]
        if self.prec is None:
            is_zero = self.ring.is_zero
            while coeffs and is_zero(coeffs[-1]):
                coeffs.pop()
        return TruncatedSeries(self.ring, v, coeffs, self.prec)

    def truncate(self, prec: int) -> TruncatedSeries:
        if self.prec is not None and self.prec <= prec:
            return self
        if prec <= self.val:
            return TruncatedSeries(self.ring, prec, [], prec)
        return TruncatedSeries(self.ring, self.val, self.coeffs[: prec - self.val], prec)

    def shift(self, k: int) -> TruncatedSeries:
        return TruncatedSeries(self.ring, self.val + k, self.coeffs,
                               None if self.prec is None else self.prec + k)

    def scale(self, c) -> TruncatedSeries:
        c = _raw(self.ring, c)
        mul = self.ring.mul
        return TruncatedSeries(self.ring, self.val, [mul(c, x) for x in self.coeffs], self.prec)

    def to_laurent(self) -> LaurentPoly:
        """The known part of the window as an exact Laurent polynomial."""
        return LaurentPoly.from_dense(self.ring, self.val, self.coeffs)

    def map_coeffs(self, ring: Ring, fn) -> TruncatedSeries:
        return TruncatedSeries(ring, self.val, [fn(c) for c in self.coeffs], self.prec)

    @staticmethod
    def _coerce(ring: Ring, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, LaurentPoly):
            return other.to_series()
        if isinstance(other, (int, RingElement)):
            return LaurentPoly.constant(ring, other).to_series()
        if isinstance(other, BFraction):
            raise TypeError("expand a BFraction before mixing it with truncated series")
        return None

    def _add(self, other: TruncatedSeries, negate: bool) -> TruncatedSeries:
        ring = _check_rings(self, other)
        prec = _min_prec(self.prec, other.prec)
        val = min(self.val, other.val)
        end = max(self.end, other.end) if prec is None else prec
        if prec is not None:
            val = min(val, prec)
        zero = ring.zero
        out = [zero] * (end - val)
        for i, c in enumerate(self.coeffs):
            k = self.val + i - val
            if k >= len(out):
                break
            out[k] = c
        op = ring.sub if negate else ring.add
        for i, c in enumerate(other.coeffs):
            k = other.val + i - val
            if k >= len(out):
                break
            out[k] = op(out[k], c)
        return TruncatedSeries(ring, val, out, prec)

    def __add__(self, other):
        other = self._coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return self._add(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(self.ring, other)
        if other is None:
            return NotImplemented
        return self._add(other, True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        neg = self.ring.neg
        return TruncatedSeries(self.ring, self.val, [neg(c) for c in self.coeffs], self.prec)

    def __mul__(self, other):
        other = self._coerce(self.ring, other)
        if other is None:
            return NotImplemented
        ring = _check_rings(self, other)
        va, vb = self.valuation(), other.valuation()
        if (va is None and self.prec is None) or (vb is None and other.prec is None):
            return TruncatedSeries(ring, 0, [], None)
        prec = None
        if self.prec is not None:
            prec = self.prec + vb
        if other.prec is not None:
            p2 = other.prec + va
            prec = p2 if prec is None else min(prec, p2)
        val = va + vb
        if prec is not None and prec <= val:
            return TruncatedSeries(ring, prec, [], prec)
        a = self.coeffs[va - self.val:]
        b = other.coeffs[vb - other.val:]
        if prec is not None:
            need = prec - val
            a, b = a[:need], b[:need]
        prod = ring.poly_mul(a, b)
        return TruncatedSeries(ring, val, prod, prec)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncatedSeries:
        result = LaurentPoly.one(self.ring).to_series()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def agrees_with(self, other, prec: int | None = None) -> bool:
        """Coefficientwise equality on the common window (optionally capped at ``prec``)."""
        other = self._coerce(self.ring, other)
        if self.ring != other.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")
        top = _min_prec(self.prec, other.prec)
        if prec is not None:
            top = prec if top is None else min(top, prec)
        if top is None:
            top = max(self.end, other.end)
        lo = min(self.val, other.val)
        return all(self.coeff(d) == other.coeff(d) for d in range(lo, top))

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int, RingElement)):
            other = self._coerce(self.ring, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.ring != other.ring or self.prec != other.prec:
            return False
        return self.agrees_with(other)

    def __hash__(self):
        n = self.normalized()
        return hash((self.ring, n.val, tuple(n.coeffs), n.prec))

    def __repr__(self):
        terms = _fmt_terms(self.ring, ((self.val + i, c) for i, c in enumerate(self.coeffs)))
        if self.prec is not None:
            terms.append(f"O(z^{self.prec})")
        return " + ".join(terms) if terms else "0"


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class BFraction:
    """``num/den`` in ``B``: ``den`` is a polynomial with unit constant term.

    Not reduced to lowest terms; equality is cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        ring = num.ring
        if den is None:
            den = LaurentPoly.one(ring)
        _check_rings(num, den)
        if den.is_zero() or den.lo < 0 or not ring.is_unit(den.coeff(0)):
            raise NotAUnit(f"denominator {den!r} is not a polynomial with unit constant term")
        self.num = num
        self.den = den

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @classmethod
    def of(cls, x) -> BFraction:
        if isinstance(x, BFraction):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x)
        raise TypeError(f"cannot view {type(x).__name__} as an element of B")

    @classmethod
    def zero(cls, ring: Ring) -> BFraction:
        return cls(LaurentPoly(ring))

    @classmethod
    def one(cls, ring: Ring) -> BFraction:
        return cls(LaurentPoly.one(ring))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def has_trivial_den(self) -> bool:
        return self.den.hi == 0

    def to_laurent(self) -> LaurentPoly:
        """Exact Laurent polynomial when the denominator is a constant."""
        if not self.has_trivial_den():
            raise ValueError("denominator is not constant")
        return self.num.scale(self.ring.inv(self.den.coeff(0)))

    def valuation_floor(self) -> int | None:
        return self.num.lo

    def _coerce(self, other):
        if isinstance(other, BFraction):
            return other
        if isinstance(other, LaurentPoly):
            return BFraction(other)
        if isinstance(other, (int, RingElement)):
            return BFraction(LaurentPoly.constant(self.ring, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        _check_rings(self.num, other.num)
        if self.den == other.den:
            return BFraction(self.num + other.num, self.den)
        return BFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BFraction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        _check_rings(self.num, other.num)
        if other.has_trivial_den() and other.den == LaurentPoly.one(self.ring):
            return BFraction(self.num * other.num, self.den)
        if self.has_trivial_den() and self.den == LaurentPoly.one(self.ring):
            return BFraction(self.num * other.num, other.den)
        return BFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BFraction:
        return BFraction(self.num**e, self.den**e)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return False
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is not structural

    def shift(self, k: int) -> BFraction:
        return BFraction(self.num.shift(k), self.den)

    def map_coeffs(self, ring: Ring, fn) -> BFraction:
        return BFraction(self.num.map_coeffs(ring, fn), self.den.map_coeffs(ring, fn))

    def expand(self, prec: int) -> TruncatedSeries:
        return expand(self, prec)

    def __repr__(self):
        if self.den == LaurentPoly.one(self.ring):
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


Entry = Union[LaurentPoly, TruncatedSeries, BFraction]


# ----------------------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------------------

def series_arith(a: Entry, b: Entry, op: str) -> Entry:
    """``op`` in {add, sub, mul}; same-kind operands (LaurentPoly mixes with either)."""
    _check_rings(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def invert_series_unit(f: TruncatedSeries | LaurentPoly, prec: int) -> TruncatedSeries:
    """Inverse of a power series with unit constant term, to ``O(z^prec)``."""
    if isinstance(f, LaurentPoly):
        f = f.to_series()
    ring = f.ring
    if f.val < 0 and any(not ring.is_zero(c) for c in f.coeffs[: -f.val]):
        raise NotAUnit("series has negative-degree terms")
    c0 = f.coeff(0) if (f.prec is None or f.prec > 0) else None
    if c0 is None:
        raise UndecidableError("constant term is not known")
    u = ring.classify(c0)
    if not isinstance(u, Unit):
        raise NotAUnit(f"constant term {ring.format(c0)} is not a unit")
    if f.prec is not None:
        prec = min(prec, f.prec)
    if prec <= 0:
        return TruncatedSeries(ring, prec, [], prec)
    fc = [f.coeff(d) for d in range(0, min(prec, f.end if f.prec is None else f.prec))]
    g = [u.inverse]
    cur = 1
    two = ring.from_int(2)
    # Newton iteration g <- g (2 - f g), doubling the correct prefix each step.
    while cur < prec:
        nxt = min(2 * cur, prec)
        e = ring.poly_mul(fc[:nxt], g)[:nxt]
        e = [ring.neg(c) for c in e]
        e[0] = ring.add(e[0], two)
        g = ring.poly_mul(g, e)[:nxt]
        cur = nxt
    return TruncatedSeries(ring, 0, g, prec)


def expand(b: BFraction | LaurentPoly, prec: int) -> TruncatedSeries:
    """``num * den^-1 + O(z^prec)``."""
    if isinstance(b, LaurentPoly):
        return b.to_series(prec)
    ring = b.ring
    if b.num.is_zero():
        return TruncatedSeries(ring, prec, [], prec)
    lo = b.num.lo
    if lo >= prec:
        return TruncatedSeries(ring, prec, [], prec)
    if b.den == LaurentPoly.one(ring):
        return b.num.to_series(prec)
    inv = invert_series_unit(b.den, prec - lo)
    return (b.num.to_series() * inv).truncate(prec)


# -- unit classification -------------------------------------------------------------

@dataclass(frozen=True)
class UnitWitness:
    """``f = -N + Q``: N collects the (nilpotent) monomials below degree ``j``,
    Q the rest; Q's coefficient at ``j`` is a unit."""

    j: int
    N: LaurentPoly
    Q: LaurentPoly | TruncatedSeries

    def to_json(self) -> dict:
        return {"kind": "unit", "j": self.j, "N": encode_entry(self.N), "Q": encode_entry(self.Q)}


@dataclass(frozen=True)
class CrtWitness:
    """Unit witnesses for each local factor of a product ring."""

    parts: tuple[tuple[Ring, UnitWitness], ...]

    def to_json(self) -> dict:
        return {"kind": "crt", "parts": [
            {"ring": r.to_json(), "witness": w.to_json()} for r, w in self.parts]}


@dataclass(frozen=True)
class NotUnit:
    """f is nilpotent (or nilpotent in one local factor): ``f^index = 0`` there."""

    index: int
    component: Ring | None = None

    def to_json(self) -> dict:
        out = {"kind": "not_unit", "nilpotency_index": self.index}
        if self.component is not None:
            out["component"] = self.component.to_json()
        return out


@dataclass(frozen=True)
class Undecidable:
    reason: str = ""

    def to_json(self) -> dict:
        return {"kind": "undecidable", "reason": self.reason}


def _project(f, ring: Ring, idx: int, comp: Ring):
    fn = lambda c: ring.project(c)[idx]  # noqa: E731
    return f.map_coeffs(comp, fn)


def classify_series_unit(f: Entry) -> UnitWitness | CrtWitness | NotUnit | Undecidable:
    """Decide from the known coefficients whether ``f`` is a unit of ``R((z))``."""
    if isinstance(f, BFraction):
        f = f.num
    ring = f.ring
    comps = ring.components()
    if len(comps) > 1:
        parts = []
        for idx, comp in enumerate(comps):
            w = classify_series_unit(_project(f, ring, idx, comp))
            if isinstance(w, NotUnit):
                return NotUnit(w.index, comp)
            if isinstance(w, Undecidable):
                return w
            parts.append((comp, w))
        return CrtWitness(tuple(parts))

    if isinstance(f, LaurentPoly):
        items = sorted(f.terms.items())
        exact = True
    else:
        items = [(f.val + i, c) for i, c in enumerate(f.coeffs)]
        exact = f.prec is None
    classify = ring.classify
    low: dict[int, Any] = {}
    for d, c in items:
        if ring.is_zero(c):
            continue
        k = classify(c)
        if isinstance(k, Unit):
            N = -LaurentPoly(ring, low)
            if isinstance(f, LaurentPoly):
                Q = f.tail(d)
            else:
                Q = TruncatedSeries(ring, d, f.coeffs[d - f.val:], f.prec)
            return UnitWitness(d, N, Q)
        if isinstance(k, Other):
            raise UnsupportedRing(f"coefficient {ring.format(c)} is neither a unit nor nilpotent")
        low[d] = c
    if not exact:
        return Undecidable(f"no unit coefficient in window [{f.val}, {f.prec})")
    whole = LaurentPoly(ring, low)
    power = whole
    for index in range(1, ring.nilradical_exponent + 1):
        if power.is_zero():
            return NotUnit(index)
        power = power * whole
    raise AssertionError("nilradical exponent bound violated")


def _telescope(N: LaurentPoly, Q):
    """Return (M, Q^i) with (-N + Q) * M = Q^i, using N^i = 0."""
    ring = N.ring
    one = LaurentPoly.one(ring)
    if isinstance(Q, TruncatedSeries):
        one = one.to_series()
    M = one
    Npow = LaurentPoly.one(ring)
    Qpow = Q
    limit = ring.nilradical_exponent
    for i in range(1, limit + 1):
        Npow = Npow * N
        if Npow.is_zero():
            return M, Qpow
        # M_{i+1} = N^i + Q * M_i
        M = Q * M + Npow
        Qpow = Qpow * Q
    raise AssertionError("nilradical exponent bound violated")


def invert_in_B(f: BFraction | LaurentPoly) -> BFraction:
    """Inverse of a unit of ``B``, by the telescoping identity
    ``(-N + Q)(N^(i-1) + N^(i-2) Q + ... + Q^(i-1)) = Q^i`` followed by a
    shift making ``Q^i`` a polynomial with unit constant term."""
    f = BFraction.of(f)
    ring = f.ring
    w = classify_series_unit(f.num)
    if isinstance(w, NotUnit):
        raise NotAUnit(f"{f!r} is not a unit (nilpotent, index {w.index})", witness=w.to_json())
    if isinstance(w, Undecidable):
        raise UndecidableError(w.reason)
    if isinstance(w, CrtWitness):
        comps = ring.components()
        invs = []
        for idx, comp in enumerate(comps):
            invs.append(invert_in_B(_project(f, ring, idx, comp)))
        return BFraction(_lift_poly(ring, [b.num for b in invs]),
                         _lift_poly(ring, [b.den for b in invs]))
    M, Qi = _telescope(w.N, w.Q)
    lowest = Qi.lo
    shift = -lowest
    P = Qi.shift(shift)
    return BFraction(f.den * M.shift(shift), P)


def _lift_poly(ring: Ring, parts: list[LaurentPoly]) -> LaurentPoly:
    degrees = sorted(set().union(*(p.terms for p in parts)))
    return LaurentPoly(ring, {d: ring.lift([p.coeff(d) for p in parts]) for d in degrees})


def series_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse in ``R((z))`` of a truncated unit, with honest precision."""
    if f.prec is None:
        raise ValueError("exact input has no finite-window inverse; use invert_in_B")
    ring = f.ring
    w = classify_series_unit(f)
    if isinstance(w, NotUnit):
        raise NotAUnit(f"{f!r} is nilpotent")
    if isinstance(w, Undecidable):
        raise UndecidableError(w.reason)
    if isinstance(w, CrtWitness):
        comps = ring.components()
        invs = [series_inverse(_project(f, ring, i, c)) for i, c in enumerate(comps)]
        prec = None
        for s in invs:
            prec = _min_prec(prec, s.prec)
        lo = min(s.val for s in invs)
        hi = prec if prec is not None else max(s.end for s in invs)
        coeffs = [ring.lift([s.coeff(d) for s in invs]) for d in range(lo, hi)]
        return TruncatedSeries(ring, lo, coeffs, prec)
    M, Qi = _telescope(w.N, w.Q)
    low = Qi.valuation()
    unit_part = Qi.shift(-low)
    inv = invert_series_unit(unit_part, unit_part.prec)
    return M * inv.shift(-low)


# -- JSON ----------------------------------------------------------------------------

def encode_entry(x: Entry) -> dict:
    if isinstance(x, BFraction):
        return {"num": encode_entry(x.num), "den": encode_entry(x.den)}
    if isinstance(x, LaurentPoly):
        x = x.to_series()
    x = x.normalized() if x.prec is None else x
    enc = x.ring.encode
    return {"val": x.val, "coeffs": [enc(c) for c in x.coeffs], "prec": x.prec}


def decode_entry(ring: Ring, obj: Any) -> Entry:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return LaurentPoly.constant(ring, ring.decode(obj) if isinstance(obj, str) else ring.from_int(obj))
    if not isinstance(obj, dict):
        raise SchemaError(f"bad series object {obj!r}")
    if "num" in obj:
        num = decode_entry(ring, obj["num"])
        den = decode_entry(ring, obj.get("den", 1))
        if not isinstance(num, LaurentPoly) or not isinstance(den, LaurentPoly):
            raise SchemaError("fraction parts must be exact (\"prec\": null)")
        return BFraction(num, den)
    try:
        val = obj["val"]
        coeffs = obj["coeffs"]
        prec = obj.get("prec")
    except KeyError as exc:
        raise SchemaError(f"series object missing {exc}") from exc
    if isinstance(val, bool) or not isinstance(val, int) or not isinstance(coeffs, list):
        raise SchemaError(f"bad series object {obj!r}")
    if prec is not None and (isinstance(prec, bool) or not isinstance(prec, int) or prec < val):
        raise SchemaError(f"bad precision {prec!r}")
    values = [ring.decode(c) for c in coeffs]
    if prec is None:
        return LaurentPoly.from_dense(ring, val, values)
    return TruncatedSeries(ring, val, values, prec)
