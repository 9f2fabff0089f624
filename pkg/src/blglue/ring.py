"""Coefficient rings.

A ring descriptor is an immutable, hashable object that knows how to do
arithmetic on *raw* values (``int`` residues, ``Fraction``, tuples for dual
numbers).  Series code works on raw values for speed; :class:`RingElement`
is the checked, operator-overloaded wrapper for public use.

Supported rings: ``Q``, ``F_p``, ``Z/m`` (factorization stored) and
``base[eps]/(eps^k)`` over any supported base.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import MixedRings, NotAUnit, SchemaError


@dataclass(frozen=True)
class Unit:
    inverse: Any


@dataclass(frozen=True)
class Nilpotent:
    index: int


@dataclass(frozen=True)
class Other:
    pass


def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Trial-division factorization, ``((p, e), ...)`` with p increasing."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def _is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == ((p, 1),)


class Ring:
    """Base class for ring descriptors.  Subclasses are frozen dataclasses."""

    nilradical_exponent: int
    local_artinian: bool
    is_field: bool

    # -- arithmetic on raw values -------------------------------------------------
    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def classify(self, a) -> Unit | Nilpotent | Other:
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return isinstance(self.classify(a), Unit)

    def inv(self, a):
        c = self.classify(a)
        if not isinstance(c, Unit):
            raise NotAUnit(f"{self.format(a)} is not a unit in {self}")
        return c.inverse

    def pow(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def poly_mul(self, a: Sequence, b: Sequence) -> list:
        """Dense convolution of two coefficient lists."""
        if not a or not b:
            return []
        zero, add, mul = self.zero, self.add, self.mul
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return out

    # -- CRT decomposition ----------------------------------------------------------
    def components(self) -> tuple[Ring, ...]:
        """Local factors in a product decomposition (just ``(self,)`` if local)."""
        return (self,)

    def project(self, a) -> tuple:
        return (a,)

    def lift(self, parts: Sequence):
        return parts[0]

    # -- random sampling ------------------------------------------------------------
    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def random_unit(self, rng: random.Random):
        raise NotImplementedError

    def random_nilpotent(self, rng: random.Random):
        raise NotImplementedError

    # -- serialization --------------------------------------------------------------
    def to_json(self) -> dict:
        raise NotImplementedError

    def encode(self, a):
        raise NotImplementedError

    def decode(self, x):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def __call__(self, x) -> RingElement:
        if isinstance(x, int):
            return RingElement(self, self.from_int(x))
        return RingElement(self, self.decode(x))


@dataclass(frozen=True)
class Rationals(Ring):
    nilradical_exponent: int = field(default=1, init=False)
    local_artinian: bool = field(default=True, init=False)
    is_field: bool = field(default=True, init=False)

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def classify(self, a):
        if a == 0:
            return Nilpotent(1)
        return Unit(1 / a)

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 6))

    def random_unit(self, rng):
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 6))

    def random_nilpotent(self, rng):
        return Fraction(0)

    def to_json(self):
        return {"type": "Q"}

    def encode(self, a):
        return str(a)

    def decode(self, x):
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise SchemaError(f"bad rational {x!r}")
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {x!r}") from exc

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class _Modular(Ring):
    """Shared arithmetic for residues modulo ``m``."""

    m: int

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.m

    def from_int(self, n):
        return n % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def neg(self, a):
        return -a % self.m

    def mul(self, a, b):
        return a * b % self.m

    def is_zero(self, a):
        return a == 0

    def poly_mul(self, a, b):
        la, lb = len(a), len(b)
        if not la or not lb:
            return []
        if min(la, lb) <= 3:
            return Ring.poly_mul(self, a, b)
        m = self.m
        if min(la, lb) * (m - 1) ** 2 < 2**62:
            return (np.convolve(a, b) % m).tolist()
        # Kronecker substitution: pack into one integer, multiply, unpack.
        width = ((min(la, lb) * (m - 1) ** 2).bit_length() + 8) // 8
        pa = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
        pb = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
        n = la + lb - 1
        raw = (pa * pb).to_bytes(width * n, "little")
        return [int.from_bytes(raw[i * width:(i + 1) * width], "little") % m for i in range(n)]

    def random_element(self, rng):
        return rng.randrange(self.m)

    def random_unit(self, rng):
        while True:
            a = rng.randrange(self.m)
            if math.gcd(a, self.m) == 1:
                return a

    def random_nilpotent(self, rng):
        rad = math.prod(p for p, _ in self.factors)
        return rad * rng.randrange(self.m // rad) % self.m

    def encode(self, a):
        return a

    def decode(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise SchemaError(f"bad residue {x!r}")
        return x % self.m

    def classify(self, a):
        if math.gcd(a, self.m) == 1:
            return Unit(pow(a, -1, self.m))
        index = 1
        for p, e in self.factors:
            if a % p:
                return Other()
            v = 0
            t = a % p**e
            while t and t % p == 0 and v < e:
                t //= p
                v += 1
            if t:
                index = max(index, -(-e // v))
        return Nilpotent(index)


@dataclass(frozen=True)
class PrimeField(_Modular):
    def __post_init__(self):
        if not _is_prime(self.m):
            raise SchemaError(f"{self.m} is not prime")

    @property
    def p(self) -> int:
        return self.m

    @property
    def factors(self):
        return ((self.m, 1),)

    nilradical_exponent = 1
    local_artinian = True
    is_field = True

    def classify(self, a):
        if a == 0:
            return Nilpotent(1)
        return Unit(pow(a, -1, self.m))

    def random_nilpotent(self, rng):
        return 0

    def to_json(self):
        return {"type": "Fp", "p": self.m}

    def __str__(self):
        return f"F_{self.m}"


@dataclass(frozen=True)
class IntegersMod(_Modular):
    factors: tuple[tuple[int, int], ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 2:
            raise SchemaError(f"modulus must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "factors", factorize(self.m))

    @property
    def nilradical_exponent(self) -> int:
        return max(e for _, e in self.factors)

    @property
    def local_artinian(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_field(self) -> bool:
        return self.factors == ((self.m, 1),)

    def components(self):
        if len(self.factors) == 1:
            return (self,)
        return tuple(IntegersMod(p**e) for p, e in self.factors)

    def project(self, a):
        if len(self.factors) == 1:
            return (a,)
        return tuple(a % p**e for p, e in self.factors)

    def lift(self, parts):
        if len(self.factors) == 1:
            return parts[0]
        m = self.m
        x = 0
        for (p, e), r in zip(self.factors, parts):
            q = p**e
            rest = m // q
            x += r * rest * pow(rest, -1, q)
        return x % m

    def to_json(self):
        return {"type": "Zmod", "m": self.m}

    def __str__(self):
        return f"Z/{self.m}"


@dataclass(frozen=True)
class DualExtension(Ring):
    """``base[eps]/(eps^k)``; values are k-tuples in ascending eps-degree."""

    base: Ring
    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 2:
            raise SchemaError(f"dual extension needs k >= 2, got {self.k!r}")

    @property
    def nilradical_exponent(self) -> int:
        return self.base.nilradical_exponent + self.k - 1

    @property
    def local_artinian(self) -> bool:
        return self.base.local_artinian

    is_field = False

    @property
    def zero(self):
        return (self.base.zero,) * self.k

    @property
    def one(self):
        return (self.base.one,) + (self.base.zero,) * (self.k - 1)

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.k - 1)

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        add, mul = base.add, base.mul
        out = [base.zero] * self.k
        for i, x in enumerate(a):
            if base.is_zero(x):
                continue
            for j in range(self.k - i):
                out[i + j] = add(out[i + j], mul(x, b[j]))
        return tuple(out)

    def poly_mul(self, a, b):
        if not a or not b:
            return []
        base, k = self.base, self.k
        if isinstance(base, _Modular) and min(len(a), len(b)) * k * (base.m - 1) ** 2 < 2**62:
            # eps folded into z with stride 2k-1 so no eps-degree overflows into the next block
            s = 2 * k - 1
            fa = np.zeros(len(a) * s, dtype=np.int64)
            fb = np.zeros(len(b) * s, dtype=np.int64)
            fa.reshape(len(a), s)[:, :k] = a
            fb.reshape(len(b), s)[:, :k] = b
            n = len(a) + len(b) - 1
            c = np.convolve(fa, fb)[: n * s] % base.m
            return list(map(tuple, c.reshape(n, s)[:, :k].tolist()))
        cols_a = [[c[t] for c in a] for t in range(k)]
        cols_b = [[c[t] for c in b] for t in range(k)]
        n = len(a) + len(b) - 1
        out = [[base.zero] * n for _ in range(k)]
        nonzero_a = [any(not base.is_zero(x) for x in col) for col in cols_a]
        nonzero_b = [any(not base.is_zero(x) for x in col) for col in cols_b]
        for s in range(k):
            if not nonzero_a[s]:
                continue
            for t in range(k - s):
                if not nonzero_b[t]:
                    continue
                prod = base.poly_mul(cols_a[s], cols_b[t])
                acc = out[s + t]
                out[s + t] = [base.add(x, y) for x, y in zip(acc, prod)]
        return [tuple(out[t][i] for t in range(k)) for i in range(n)]

    def classify(self, a):
        base = self.base
        c0 = base.classify(a[0])
        if isinstance(c0, Unit):
            u = c0.inverse
            inv = [u]
            for t in range(1, self.k):
                acc = base.zero
                for s in range(1, t + 1):
                    acc = base.add(acc, base.mul(a[s], inv[t - s]))
                inv.append(base.neg(base.mul(u, acc)))
            return Unit(tuple(inv))
        if isinstance(c0, Nilpotent):
            power = a
            for index in range(1, self.nilradical_exponent + 1):
                if power == self.zero:
                    return Nilpotent(index)
                power = self.mul(power, a)
            raise AssertionError("nilradical exponent bound violated")
        return Other()

    def components(self):
        parts = self.base.components()
        if len(parts) == 1:
            return (self,)
        return tuple(DualExtension(b, self.k) for b in parts)

    def project(self, a):
        if len(self.base.components()) == 1:
            return (a,)
        per_coeff = [self.base.project(x) for x in a]
        return tuple(tuple(pc[i] for pc in per_coeff) for i in range(len(per_coeff[0])))

    def lift(self, parts):
        if len(self.base.components()) == 1:
            return parts[0]
        return tuple(self.base.lift([p[t] for p in parts]) for t in range(self.k))

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.k))

    def random_unit(self, rng):
        return (self.base.random_unit(rng),) + tuple(
            self.base.random_element(rng) for _ in range(self.k - 1))

    def random_nilpotent(self, rng):
        return (self.base.random_nilpotent(rng),) + tuple(
            self.base.random_element(rng) for _ in range(self.k - 1))

    def to_json(self):
        return {"type": "dual", "base": self.base.to_json(), "k": self.k}

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, x):
        if isinstance(x, int) and not isinstance(x, bool):
            return self.from_int(x)
        if not isinstance(x, list) or len(x) > self.k:
            raise SchemaError(f"bad dual-number element {x!r}")
        vals = [self.base.decode(c) for c in x]
        return tuple(vals) + (self.base.zero,) * (self.k - len(vals))

    def format(self, a):
        terms = []
        for t, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            s = self.base.format(c)
            terms.append(s if t == 0 else (f"eps^{t}" if c == self.base.one else f"{s}*eps^{t}"))
        return "(" + " + ".join(terms) + ")" if len(terms) > 1 else (terms[0] if terms else "0")

    def __str__(self):
        return f"{self.base}[eps]/(eps^{self.k})"


def ring_from_json(obj: Any) -> Ring:
    if not isinstance(obj, dict) or "type" not in obj:
        raise SchemaError(f"bad ring descriptor {obj!r}")
    kind = obj["type"]
    try:
        if kind == "Q":
            return Rationals()
        if kind == "Fp":
            return PrimeField(obj["p"])
        if kind == "Zmod":
            return IntegersMod(obj["m"])
        if kind == "dual":
            return DualExtension(ring_from_json(obj["base"]), obj["k"])
    except KeyError as exc:
        raise SchemaError(f"ring descriptor missing field {exc}") from exc
    raise SchemaError(f"unknown ring type {kind!r}")


@dataclass(frozen=True)
class RingElement:
    """A value tagged with its ring.  Operators refuse to mix rings."""

    ring: Ring
    value: Any

    def _check(self, other) -> Any:
        if isinstance(other, int):
            return self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")
        return other.value

    def __add__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(self.value, v))

    def __rsub__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.sub(v, self.value))

    def __mul__(self, other):
        v = self._check(other)
        return NotImplemented if v is NotImplemented else RingElement(self.ring, self.ring.mul(self.value, v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring} vs {other.ring}")
        return self.value == other.value

    def __hash__(self):
        return hash((self.ring, self.value))

    def __repr__(self):
        return f"{self.ring.format(self.value)} in {self.ring}"


def ring_arith(a: RingElement, b: RingElement, op: str):
    """Checked binary arithmetic; ``op`` is one of add, mul, neg, eq."""
    if a.ring != b.ring:
        raise MixedRings(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


def classify_element(a: RingElement) -> Unit | Nilpotent | Other:
    c = a.ring.classify(a.value)
    if isinstance(c, Unit):
        return Unit(RingElement(a.ring, c.inverse))
    return c
