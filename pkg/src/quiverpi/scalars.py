"""Exact scalar arithmetic: GF(p^k) with explicit moduli, and the rationals.

Finite fields are represented by residue polynomials modulo a monic
irreducible polynomial over GF(p).  Small fields (order <= TABLE_CAP) get
precomputed operation tables; larger ones fall back to polynomial
arithmetic.  Rational arithmetic is arbitrary precision via Fraction.
"""

from __future__ import annotations

from fractions import Fraction

TABLE_CAP = 64


class ScalarError(ValueError):
    pass


class FieldMismatchError(ScalarError):
    pass


class ZeroInverseError(ScalarError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mulmod(a, b, modulus, p):
    # a, b, modulus little-endian coefficient lists over GF(p); modulus monic.
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for j in range(k):
                prod[d - k + j] = (prod[d - k + j] - c * modulus[j]) % p
    return _poly_trim(prod[:k] if len(prod) > k else prod)


def _poly_is_irreducible(modulus, p):
    """Exhaustive trial division; adequate for the small degrees in scope."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] != 1:
        return False
    if k == 1:
        return True
    # no roots
    for r in range(p):
        acc = 0
        for c in reversed(modulus):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    if k <= 3:
        return True
    # trial division by monic polynomials of degree 2 .. k//2
    for d in range(2, k // 2 + 1):
        for code in range(p ** d):
            div = []
            v = code
            for _ in range(d):
                div.append(v % p)
                v //= p
            div.append(1)
            if _poly_divides(div, modulus, p):
                return False
    return True


def _poly_divides(div, num, p):
    rem = list(num)
    dd = len(div) - 1
    inv_lead = pow(div[-1], -1, p)
    while len(_poly_trim(rem)) - 1 >= dd:
        rem = _poly_trim(rem)
        shift = len(rem) - 1 - dd
        factor = (rem[-1] * inv_lead) % p
        for j in range(dd + 1):
            rem[shift + j] = (rem[shift + j] - factor * div[j]) % p
    return not _poly_trim(rem)


_DEFAULT_MODULI = {}


def default_modulus(p, k):
    """Deterministic modulus table: lexicographically smallest monic irreducible.

    Fixed once per (p, k) so encodings are reproducible across runs.
    """
    key = (p, k)
    if key not in _DEFAULT_MODULI:
        if k == 1:
            _DEFAULT_MODULI[key] = (0, 1)
        else:
            found = None
            for code in range(p ** k):
                cand = []
                v = code
                for _ in range(k):
                    cand.append(v % p)
                    v //= p
                cand.append(1)
                if _poly_is_irreducible(cand, p):
                    found = tuple(cand)
                    break
            if found is None:
                raise ScalarError(f"no irreducible modulus of degree {k} over GF({p})")
            _DEFAULT_MODULI[key] = found
    return _DEFAULT_MODULI[key]


class FieldSpec:
    """A field: GF(p^k) given by a monic irreducible modulus, or the rationals."""

    __slots__ = ("p", "k", "modulus", "_elems", "_add", "_mul", "_neg", "_inv",
                 "_zero", "_one")

    def __init__(self, p, k=1, modulus=None):
        if p == 0:
            if k != 1:
                raise ScalarError("characteristic 0 requires extension degree 1")
            self.p, self.k, self.modulus = 0, 1, None
        else:
            if not _is_prime(p):
                raise ScalarError(f"characteristic {p} is not prime")
            if k < 1:
                raise ScalarError("extension degree must be >= 1")
            if modulus is None:
                modulus = default_modulus(p, k)
            modulus = tuple(c % p for c in modulus[:-1]) + (modulus[-1],)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ScalarError("modulus must be monic of degree k")
            if not _poly_is_irreducible(list(modulus), p):
                raise ScalarError(f"modulus {list(modulus)} is reducible over GF({p})")
            self.p, self.k, self.modulus = p, k, modulus
        self._elems = None
        self._add = self._mul = self._neg = self._inv = None
        self._zero = self.element(0)
        self._one = self.element(1)

    @staticmethod
    def gf(p, k=1, modulus=None):
        return FieldSpec(p, k, modulus)

    @staticmethod
    def rationals():
        return FieldSpec(0)

    @property
    def is_finite(self):
        return self.p != 0

    @property
    def order(self):
        if not self.is_finite:
            raise ScalarError("rational field is infinite")
        return self.p ** self.k

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if not self.is_finite:
            return "QQ"
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- element construction ------------------------------------------------

    def element(self, value):
        """Coerce an int, Fraction, coefficient tuple, or text into this field."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatchError("element from a different field")
            return value
        if not self.is_finite:
            return FieldElement(self, Fraction(value))
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, (tuple, list)):
            coeffs = tuple(int(c) % self.p for c in value)
            if len(coeffs) > self.k:
                raise ScalarError("residue degree exceeds field degree")
            coeffs = coeffs + (0,) * (self.k - len(coeffs))
        else:
            coeffs = (int(value) % self.p,) + (0,) * (self.k - 1)
        return self._intern(coeffs)

    def _intern(self, coeffs):
        if self.order <= TABLE_CAP:
            if self._elems is None:
                self._build_tables()
            idx = 0
            for c in reversed(coeffs):
                idx = idx * self.p + c
            return self._elems[idx]
        return FieldElement(self, coeffs)

    def _index_coeffs(self, idx):
        out = []
        for _ in range(self.k):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def _build_tables(self):
        q = self.order
        elems = []
        for idx in range(q):
            e = FieldElement(self, self._index_coeffs(idx))
            e.idx = idx
            elems.append(e)
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        neg = [0] * q
        inv = [0] * q
        coeffs = [e.rep for e in elems]

        def enc(c):
            idx = 0
            for x in reversed(c):
                idx = idx * self.p + x
            return idx

        for i in range(q):
            neg[i] = enc(tuple((-x) % self.p for x in coeffs[i]))
            for j in range(i, q):
                s = tuple((a + b) % self.p for a, b in zip(coeffs[i], coeffs[j]))
                add[i][j] = add[j][i] = enc(s)
                m = _poly_mulmod(list(coeffs[i]), list(coeffs[j]), list(self.modulus), self.p)
                mi = enc(tuple(m) + (0,) * (self.k - len(m)))
                mul[i][j] = mul[j][i] = mi
        for i in range(1, q):
            # brute-force inverse; q <= TABLE_CAP
            for j in range(1, q):
                if mul[i][j] == 1:
                    inv[i] = j
                    break
        self._elems, self._add, self._mul, self._neg, self._inv = elems, add, mul, neg, inv

    def elements(self):
        """All field elements (finite fields only), in index order."""
        if not self.is_finite:
            raise ScalarError("cannot enumerate the rationals")
        return [self._intern(self._index_coeffs(i)) for i in range(self.order)]

    def nonzero_elements(self):
        return [e for e in self.elements() if not e.is_zero()]


class FieldElement:
    """Immutable field scalar.  rep is a coefficient tuple (finite) or Fraction."""

    __slots__ = ("spec", "rep", "idx")

    def __init__(self, spec, rep):
        self.spec = spec
        self.rep = rep
        self.idx = None

    def is_zero(self):
        if self.spec.is_finite:
            return all(c == 0 for c in self.rep)
        return self.rep == 0

    def is_one(self):
        if self.spec.is_finite:
            return self.rep[0] == 1 and all(c == 0 for c in self.rep[1:])
        return self.rep == 1

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise FieldMismatchError(f"cannot combine field element with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError("mismatched field specs")
        return other

    def __add__(self, other):
        other = self._check(other)
        s = self.spec
        if s.is_finite:
            if self.idx is not None:
                return s._elems[s._add[self.idx][other.idx]]
            return FieldElement(s, tuple((a + b) % s.p for a, b in zip(self.rep, other.rep)))
        return FieldElement(s, self.rep + other.rep)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        s = self.spec
        if s.is_finite:
            if self.idx is not None:
                return s._elems[s._neg[self.idx]]
            return FieldElement(s, tuple((-a) % s.p for a in self.rep))
        return FieldElement(s, -self.rep)

    def __mul__(self, other):
        other = self._check(other)
        s = self.spec
        if s.is_finite:
            if self.idx is not None:
                return s._elems[s._mul[self.idx][other.idx]]
            m = _poly_mulmod(list(self.rep), list(other.rep), list(s.modulus), s.p)
            return FieldElement(s, tuple(m) + (0,) * (s.k - len(m)))
        return FieldElement(s, self.rep * other.rep)

    def inverse(self):
        if self.is_zero():
            raise ZeroInverseError("division by zero")
        s = self.spec
        if s.is_finite:
            if self.idx is not None:
                return s._elems[s._inv[self.idx]]
            return self ** (s.order - 2)
        return FieldElement(s, 1 / self.rep)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.rep == other.rep

    def __hash__(self):
        return hash((self.spec.p, self.spec.k, self.rep))

    def __repr__(self):
        return render_scalar(self)


def field_arith(a, b, op):
    """Dispatch {add, mul, inv, neg} on field elements; inv/neg ignore b."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ScalarError(f"unknown op {op!r}")


def frobenius(a, e, q=None):
    """a^(q^e).  q defaults to the order of a's own field.

    Pass q explicitly when the ambient base subfield differs from the
    element's field (the quiver realization does this).
    """
    if not a.spec.is_finite:
        raise ScalarError("Frobenius undefined in characteristic 0")
    if e < 0:
        raise ScalarError("Frobenius exponent must be >= 0")
    if q is None:
        q = a.spec.order
    return a ** (q ** e)


# -- textual syntax ----------------------------------------------------------
#
# integers, fractions a/b, and extension elements as polynomials in u,
# e.g. "u+1", "2*u^2+u".  Interpreted against the ambient FieldSpec.

def parse_scalar(text, spec):
    text = text.strip().replace(" ", "")
    if not text:
        raise ScalarError("empty scalar")
    if not spec.is_finite:
        try:
            return FieldElement(spec, Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarError(f"bad rational literal {text!r}") from exc
    coeffs = [0] * spec.k
    sign = 1
    i = 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    term = ""
    tokens = []
    while i <= len(text):
        ch = text[i] if i < len(text) else None
        if ch in ("+", "-", None):
            tokens.append((sign, term))
            if ch is None:
                break
            sign = -1 if ch == "-" else 1
            term = ""
        else:
            term += ch
        i += 1
    for sgn, term in tokens:
        if not term:
            raise ScalarError(f"bad scalar syntax in {text!r}")
        coef, power = 1, 0
        if "u" in term:
            head, _, tail = term.partition("u")
            if head:
                if not head.endswith("*"):
                    raise ScalarError(f"bad scalar term {term!r}")
                coef = int(head[:-1])
            if tail:
                if not tail.startswith("^"):
                    raise ScalarError(f"bad scalar term {term!r}")
                power = int(tail[1:])
            else:
                power = 1
        else:
            coef = int(term)
        if power >= spec.k:
            raise ScalarError(f"u^{power} out of range for degree-{spec.k} field")
        coeffs[power] = (coeffs[power] + sgn * coef) % spec.p
    return spec.element(tuple(coeffs))


def render_scalar(a):
    """Canonical text form; parse_scalar inverts this exactly."""
    if not a.spec.is_finite:
        return str(a.rep)
    if a.spec.k == 1:
        return str(a.rep[0])
    terms = []
    for power in range(a.spec.k - 1, -1, -1):
        c = a.rep[power]
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        else:
            base = "u" if power == 1 else f"u^{power}"
            terms.append(base if c == 1 else f"{c}*{base}")
    return "+".join(terms) if terms else "0"
