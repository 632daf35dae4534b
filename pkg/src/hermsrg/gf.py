"""Exact arithmetic in small finite fields GF(p^m) via discrete-log tables.

Elements are stored as table indices: ``0`` is zero and ``k + 1`` is the
``k``-th power of the fixed primitive element.  So index ``1`` is always the
multiplicative identity.  Every operation is a table lookup, which also makes
the tables usable directly as numpy gather arrays on whole coordinate blocks.

The modulus for each ``(p, m)`` is read from ``data/primitive_polys.txt``: the
lexicographically smallest monic primitive polynomial, comparing coefficient
lists written from degree ``m - 1`` down to the constant term.
"""
from __future__ import annotations

import functools
from importlib import resources
from itertools import product

import numpy as np

FIELD_ORDER_CAP = 81


class FieldError(ValueError):
    """Raised for unsupported fields or operands from the wrong field."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(order: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``p**m == order``, or raise FieldError."""
    for p in range(2, order + 1):
        if order % p == 0:
            m, r = 0, order
            while r % p == 0:
                r //= p
                m += 1
            if r != 1 or not is_prime(p):
                break
            return p, m
    raise FieldError(f"{order} is not a prime power")


# -- polynomial helpers over GF(p); coefficient lists are low degree first --

def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for tail in product(range(p), repeat=d):
            if not _poly_mod(poly, list(tail) + [1], p):
                return False
    return True


def _power_vectors(poly: list[int], p: int) -> list[int] | None:
    """Powers x^0, x^1, ... modulo ``poly`` as base-p integers.

    Returns None unless x has multiplicative order exactly p^m - 1.
    """
    m = len(poly) - 1
    order = p**m
    vec = [0] * m
    vec[0] = 1
    out = []
    seen = set()
    for _ in range(order - 1):
        code = sum(c * p**i for i, c in enumerate(vec))
        if code in seen:
            return None
        seen.add(code)
        out.append(code)
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [(v - top * c) % p for v, c in zip(vec, poly[:-1])]
    if sum(c * p**i for i, c in enumerate(vec)) != 1:
        return None
    return out


def search_primitive_poly(p: int, m: int) -> list[int]:
    """Brute-force the lexicographically smallest monic primitive polynomial.

    Candidates are ordered by ``(c_{m-1}, ..., c_0)``.  Used to generate and to
    audit the shipped table.
    """
    for high_to_low in product(range(p), repeat=m):
        coeffs = list(reversed(high_to_low)) + [1]
        if coeffs[0] == 0:
            continue
        if _power_vectors(coeffs, p) is not None:
            return coeffs
    raise FieldError(f"no primitive polynomial of degree {m} over GF({p})")


@functools.lru_cache(maxsize=None)
def _shipped_table() -> dict[tuple[int, int], tuple[int, ...]]:
    text = resources.files("hermsrg").joinpath("data/primitive_polys.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        p, m, *coeffs = (int(t) for t in line.split())
        table[p, m] = tuple(coeffs)
    return table


class FieldTable:
    """GF(p^m) with log/exp tables and full addition/multiplication tables.

    Immutable after construction; the numpy tables are marked read-only.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.order = p**m
        self.modulus_poly = tuple(modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not is_irreducible(list(modulus), p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        powers = _power_vectors(list(modulus), p)
        if powers is None:
            raise FieldError(f"modulus {modulus} is not primitive")

        Q = self.order
        self.exp_table = np.array(powers, dtype=np.int64)  # log -> base-p code
        self.log_table = np.full(Q, -1, dtype=np.int64)  # base-p code -> log
        self.log_table[self.exp_table] = np.arange(Q - 1)

        # index <-> base-p code
        self.code_of = np.zeros(Q, dtype=np.int64)
        self.code_of[1:] = self.exp_table
        self.index_of_code = np.zeros(Q, dtype=np.int64)
        self.index_of_code[self.exp_table] = np.arange(1, Q)

        digits = np.array([[(c // p**i) % p for i in range(m)] for c in range(Q)])
        weights = p ** np.arange(m)
        codes = self.code_of
        sum_digits = (digits[codes][:, None, :] + digits[codes][None, :, :]) % p
        add = self.index_of_code[sum_digits @ weights]
        neg = self.index_of_code[((-digits[codes]) % p) @ weights]

        idx = np.arange(Q)
        la = (idx[:, None] - 1) + (idx[None, :] - 1)
        mul = np.where((idx[:, None] == 0) | (idx[None, :] == 0), 0, 1 + la % (Q - 1))
        inv = np.zeros(Q, dtype=np.int64)
        inv[1:] = 1 + (-(idx[1:] - 1)) % (Q - 1)

        small = np.uint8 if Q <= 256 else np.int32
        self.add_table = add.astype(small)
        self.mul_table = mul.astype(small)
        self.neg_table = neg.astype(small)
        self.inv_table = inv.astype(small)
        self.sub_table = self.add_table[:, self.neg_table]
        for arr in (self.exp_table, self.log_table, self.code_of, self.index_of_code,
                    self.add_table, self.mul_table, self.neg_table, self.inv_table,
                    self.sub_table):
            arr.setflags(write=False)

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __reduce__(self):
        return make_field, (self.p, self.m)

    # -- scalar / array operations on indices --------------------------------

    def add(self, a, b):
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.sub_table[a, b]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.inv_table[a]

    def div(self, a, b):
        return self.mul_table[a, self.inv(b)]

    def power(self, a, e: int):
        """a**e for index arrays (0**0 == 1)."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise ZeroDivisionError("negative power of zero")
        out = np.where(a == 0, 1 if e == 0 else 0, 1 + ((a - 1) * e) % (self.order - 1))
        return out if out.ndim else int(out)

    def power_map(self, e: int) -> np.ndarray:
        """Lookup array x -> x**e over all indices."""
        return np.asarray(self.power(np.arange(self.order), e), dtype=self.mul_table.dtype)

    def from_int(self, code: int) -> int:
        """Index of the element whose base-p coefficient code is ``code``.

        For prime fields this is the usual residue ``code mod p``.
        """
        if not 0 <= code < self.order:
            raise FieldError(f"code {code} out of range for {self}")
        return int(self.index_of_code[code])

    def to_int(self, idx: int) -> int:
        return int(self.code_of[idx])

    def element(self, idx: int) -> FieldElement:
        return FieldElement(self, int(idx))

    def __call__(self, code: int) -> FieldElement:
        return FieldElement(self, self.from_int(code))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.order)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self, 2 if self.order > 2 else 1)

    # -- subfield structure ----------------------------------------------------

    def check_square_order(self, q: int) -> None:
        if q * q != self.order:
            raise FieldError(f"{self} is not GF({q}^2)")

    def subfield_indices(self, q: int) -> np.ndarray:
        """Indices of GF(q), realised as the fixed points of x -> x^q."""
        fixed = np.nonzero(self.power_map(q) == np.arange(self.order))[0]
        if len(fixed) != q:
            raise FieldError(f"GF({q}) is not a subfield of {self}")
        return fixed

    @functools.cached_property
    def _subfield_cache(self) -> dict:
        return {}

    def subfield_embedding(self, q: int) -> tuple[FieldTable, np.ndarray]:
        """Standalone GF(q) and the index map embedding it into this field.

        The image of the standalone primitive element is a root, inside this
        field, of the standalone modulus; the map is a field monomorphism.
        """
        if q in self._subfield_cache:
            return self._subfield_cache[q]
        sp, sm = prime_power(q)
        if sp != self.p or self.m % sm:
            raise FieldError(f"GF({q}) is not a subfield of {self}")
        sub = make_field(sp, sm)
        step = (self.order - 1) // (q - 1)
        for j in range(1, q):
            if np.gcd(j, q - 1) != 1:
                continue
            rho = 1 + (step * j) % (self.order - 1)
            acc = 0  # evaluate modulus at rho by Horner
            for c in reversed(sub.modulus_poly):
                acc = int(self.add_table[self.mul_table[acc, rho], self.from_int(c)])
            if acc == 0:
                emb = np.zeros(q, dtype=np.int64)
                emb[1:] = 1 + ((np.arange(q - 1) * step * j) % (self.order - 1))
                emb.setflags(write=False)
                self._subfield_cache[q] = (sub, emb)
                return sub, emb
        raise FieldError(f"no embedding of GF({q}) into {self}")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def make_field(p: int, m: int = 1) -> FieldTable:
    """GF(p^m) built from the shipped primitive-polynomial table."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be positive")
    if p**m > FIELD_ORDER_CAP:
        raise FieldError(f"GF({p}^{m}) exceeds the order cap {FIELD_ORDER_CAP}")
    try:
        modulus = _shipped_table()[p, m]
    except KeyError:
        raise FieldError(f"no shipped modulus for GF({p}^{m})") from None
    return FieldTable(p, m, modulus)


def gf_q2(q: int) -> FieldTable:
    """The field GF(q^2) for a prime power q."""
    p, m = prime_power(q)
    return make_field(p, 2 * m)


class FieldElement:
    """A single field element; convenience wrapper over table indices."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldTable, value: int):
        self.field = field
        self.value = int(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixing {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other) % self.field.p)
        return NotImplemented

    def _wrap(self, idx) -> FieldElement:
        return FieldElement(self.field, int(idx))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add_table[self.value, o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub_table[self.value, o])

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub_table[o, self.value])

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul_table[self.value, o])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg_table[self.value])

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field.power(self.value, e))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other) % self.field.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.value))

    def __bool__(self):
        return self.value != 0

    def __index__(self):
        return self.value

    def __repr__(self):
        if self.value == 0:
            return f"{self.field}(0)"
        if self.value == 1:
            return f"{self.field}(1)"
        return f"{self.field}(g^{self.value - 1})"


def _field_of(x: FieldElement, q: int) -> FieldTable:
    x.field.check_square_order(q)
    return x.field


def frobenius(x: FieldElement, q: int) -> FieldElement:
    """x -> x^q on GF(q^2)."""
    F = _field_of(x, q)
    return FieldElement(F, F.power(x.value, q))


def norm(x: FieldElement, q: int) -> FieldElement:
    """Relative norm x^(q+1) from GF(q^2) onto GF(q)."""
    F = _field_of(x, q)
    return FieldElement(F, F.power(x.value, q + 1))


def trace(x: FieldElement, q: int) -> FieldElement:
    """Relative trace x + x^q from GF(q^2) onto GF(q)."""
    return x + frobenius(x, q)


def in_subfield(y: FieldElement, q: int) -> bool:
    return y.field.power(y.value, q) == y.value


def is_square_in_subfield(y: FieldElement, q: int) -> bool:
    """Whether y in GF(q) is a square in GF(q); zero counts as a square."""
    if not in_subfield(y, q):
        raise FieldError(f"{y} is not in GF({q})")
    if y.value == 0 or q % 2 == 0:
        return True
    return y.field.power(y.value, (q - 1) // 2) == 1


def absolute_trace(y: FieldElement, q: int) -> int:
    """GF(2)-trace y + y^2 + ... + y^(q/2) of y in GF(q), q = 2^h."""
    p, h = prime_power(q)
    if p != 2:
        raise FieldError("absolute trace is only used for even q")
    if not in_subfield(y, q):
        raise FieldError(f"{y} is not in GF({q})")
    acc = y.field.zero
    z = y
    for _ in range(h):
        acc = acc + z
        z = z * z
    return acc.value  # index 0 is zero, index 1 is one
