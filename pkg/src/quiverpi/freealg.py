"""The free associative algebra F{x}: classed variables, words, polynomials.

Polynomials are canonical maps word -> nonzero coefficient (no expression
trees).  Six variable families are fixed: x (core), y/w (dock and Capelli),
z, z' (rendered zp), v (hiking).  Commutator sugar [a,b] expands at parse
time; every downstream algorithm sees plain words.
"""

from __future__ import annotations

from .scalars import FieldElement, FieldMismatchError, ScalarError, parse_scalar, render_scalar

FAMILIES = ("x", "y", "z", "v", "w", "zp")
_FAMILY_RANK = {f: i for i, f in enumerate(FAMILIES)}


class FreeAlgebraError(ValueError):
    pass


class ParseError(FreeAlgebraError):
    def __init__(self, message, pos=None):
        suffix = f" at position {pos}" if pos is not None else ""
        super().__init__(message + suffix)
        self.pos = pos


_VAR_CACHE = {}


class Variable:
    """A classed indeterminate: family letter, index, optional second index."""

    __slots__ = ("family", "index", "sub", "_key")

    def __new__(cls, family, index, sub=None):
        key = (family, index, sub)
        cached = _VAR_CACHE.get(key)
        if cached is not None:
            return cached
        if family not in _FAMILY_RANK:
            raise FreeAlgebraError(f"unknown variable family {family!r}")
        if index < 1:
            raise FreeAlgebraError("variable index must be positive")
        self = object.__new__(cls)
        self.family = family
        self.index = index
        self.sub = sub
        self._key = (_FAMILY_RANK[family], index, -1 if sub is None else sub)
        _VAR_CACHE[key] = self
        return self

    def sort_key(self):
        return self._key

    def __lt__(self, other):
        return self._key < other._key

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        base = f"{self.family}{self.index}"
        return base if self.sub is None else f"{base}_{self.sub}"


def var(family, index, sub=None):
    return Variable(family, index, sub)


def word_key(word):
    return (len(word), tuple(v.sort_key() for v in word))


class NcPoly:
    """Noncommutative polynomial: finite map word -> nonzero FieldElement."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec, terms=None):
        self.spec = spec
        self.terms = {}
        if terms:
            for word, coef in terms.items():
                if not coef.is_zero():
                    self.terms[word] = coef

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec)

    @classmethod
    def unit(cls, spec):
        return cls(spec, {(): spec.one})

    @classmethod
    def constant(cls, spec, coef):
        return cls(spec, {(): spec.element(coef)})

    @classmethod
    def variable(cls, spec, v):
        return cls(spec, {(v,): spec.one})

    @classmethod
    def word(cls, spec, variables, coef=None):
        c = spec.one if coef is None else spec.element(coef)
        return cls(spec, {tuple(variables): c})

    # -- predicates -----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def variables(self):
        seen = set()
        for word in self.terms:
            seen.update(word)
        return sorted(seen)

    def _check(self, other):
        if not isinstance(other, NcPoly):
            raise FreeAlgebraError(f"cannot combine NcPoly with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError("polynomials over different fields")
        return other

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for word, coef in other.terms.items():
            if word in out:
                s = out[word] + coef
                if s.is_zero():
                    del out[word]
                else:
                    out[word] = s
            else:
                out[word] = coef
        result = NcPoly(self.spec)
        result.terms = out
        return result

    def __neg__(self):
        result = NcPoly(self.spec)
        result.terms = {w: -c for w, c in self.terms.items()}
        return result

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                c = c1 * c2
                if word in out:
                    s = out[word] + c
                    if s.is_zero():
                        del out[word]
                    else:
                        out[word] = s
                elif not c.is_zero():
                    out[word] = c
        result = NcPoly(self.spec)
        result.terms = out
        return result

    def scale(self, coef):
        c = self.spec.element(coef) if not isinstance(coef, FieldElement) else coef
        if c.is_zero():
            return NcPoly.zero(self.spec)
        result = NcPoly(self.spec)
        result.terms = {w: k * c for w, k in self.terms.items()}
        return result

    def __pow__(self, n):
        if n < 0:
            raise FreeAlgebraError("negative power of a polynomial")
        result = NcPoly.unit(self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, NcPoly) and self.spec == other.spec
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __repr__(self):
        return render(self)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: word_key(kv[0]))


def poly_arith(f, g, op):
    """Dispatch {add, mul, scale}; scale expects g to be a scalar."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise FreeAlgebraError(f"unknown op {op!r}")


def commutator(f, g):
    return f * g - g * f


def substitute(f, sigma):
    """Image of f under the algebra endomorphism sending v -> sigma[v].

    Unmapped variables are fixed.  Values may be NcPoly or Variable.
    """
    images = {}
    for v, g in sigma.items():
        if isinstance(g, Variable):
            g = NcPoly.variable(f.spec, g)
        if g.spec != f.spec:
            raise FieldMismatchError("substitution image over a different field")
        images[v] = g
    out = NcPoly.zero(f.spec)
    cache = {}
    for word, coef in f.terms.items():
        prod = _word_image(word, images, f.spec, cache)
        out = out + prod.scale(coef)
    return out


def _word_image(word, images, spec, cache):
    if word in cache:
        return cache[word]
    if not word:
        return NcPoly.unit(spec)
    if len(word) == 1:
        v = word[0]
        result = images.get(v) or NcPoly.variable(spec, v)
    else:
        mid = len(word) // 2
        result = _word_image(word[:mid], images, spec, cache) * _word_image(word[mid:], images, spec, cache)
    cache[word] = result
    return result


def degrees(f):
    """Map variable -> maximal degree over the monomials of f."""
    out = {}
    for word in f.terms:
        counts = {}
        for v in word:
            counts[v] = counts.get(v, 0) + 1
        for v, d in counts.items():
            if d > out.get(v, 0):
                out[v] = d
    return out


def multidegree(word):
    counts = {}
    for v in word:
        counts[v] = counts.get(v, 0) + 1
    return frozenset(counts.items())


def homogeneous_components(f):
    """Partition of f by multidegree vector; the parts sum back to f."""
    groups = {}
    for word, coef in f.terms.items():
        groups.setdefault(multidegree(word), {})[word] = coef
    parts = []
    for key in sorted(groups, key=lambda k: sorted((repr(v), d) for v, d in k)):
        part = NcPoly(f.spec)
        part.terms = groups[key]
        parts.append(part)
    return parts


def monomial_presence_split(f, v):
    """(f with v -> 0, the rest); the second part has v in every monomial."""
    absent, present = {}, {}
    for word, coef in f.terms.items():
        (present if v in word else absent)[word] = coef
    f0 = NcPoly(f.spec)
    f0.terms = absent
    f1 = NcPoly(f.spec)
    f1.terms = present
    return f0, f1


def evaluate(f, assignment, ring_one):
    """Evaluate f at matrices (or any ring values supporting * + and .scale).

    Words are evaluated by halving with a shared prefix/subword cache, which
    matters for hiked polynomials with long repeated segments.
    """
    cache = {}
    acc = None
    for word, coef in f.terms.items():
        value = _word_value(word, assignment, ring_one, cache).scale(coef)
        acc = value if acc is None else acc + value
    if acc is None:
        return ring_one.scale(f.spec.zero)
    return acc


def _word_value(word, assignment, ring_one, cache):
    if not word:
        return ring_one
    if word in cache:
        return cache[word]
    if len(word) == 1:
        value = assignment[word[0]]
    else:
        mid = len(word) // 2
        value = _word_value(word[:mid], assignment, ring_one, cache) * _word_value(word[mid:], assignment, ring_one, cache)
    cache[word] = value
    return value


# -- .ncp grammar ------------------------------------------------------------
#
#   polynomial := term (('+'|'-') term)*
#   term       := atom (('*'|'/') atom | '^' int)*
#   atom       := number | 'u'-scalar | var | '(' polynomial ')'
#                 | '[' polynomial ',' polynomial ']'
#   var        := family letter(s) + index ['_' subindex]

_SYMBOLS = "+-*/^()[],"


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


def _parse_var_name(name, pos):
    family = None
    if name.startswith("zp"):
        family, rest = "zp", name[2:]
    elif name[0] in "xyzvw":
        family, rest = name[0], name[1:]
    else:
        raise ParseError(f"unknown variable family in {name!r}", pos)
    if not rest:
        raise ParseError(f"variable {name!r} missing index", pos)
    if "_" in rest:
        idx_text, _, sub_text = rest.partition("_")
        if not idx_text.isdigit() or not sub_text.isdigit():
            raise ParseError(f"bad variable {name!r}", pos)
        return Variable(family, int(idx_text), int(sub_text))
    if not rest.isdigit():
        raise ParseError(f"bad variable {name!r}", pos)
    return Variable(family, int(rest))


class _Parser:
    def __init__(self, tokens, spec):
        self.tokens = tokens
        self.spec = spec
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse_polynomial(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        result = self.parse_term()
        if sign < 0:
            result = -result
        while self.peek()[0] in "+-":
            op = self.take()[0]
            term = self.parse_term()
            result = result - term if op == "-" else result + term
        return result

    def parse_term(self):
        result = self.parse_powered()
        while self.peek()[0] in "*/":
            op = self.take()[0]
            rhs = self.parse_powered()
            if op == "*":
                result = result * rhs
            else:
                if list(rhs.terms.keys()) != [()]:
                    raise ParseError("division only by nonzero constants", self.peek()[2])
                result = result.scale(rhs.terms[()].inverse())
        return result

    def parse_powered(self):
        result = self.parse_atom()
        while self.peek()[0] == "^":
            self.take("^")
            exp = int(self.take("int")[1])
            result = result ** exp
        return result

    def parse_atom(self):
        kind, text, pos = self.peek()
        if kind == "int":
            self.take()
            return NcPoly.constant(self.spec, int(text))
        if kind == "name":
            if text == "u":
                self.take()
                if not self.spec.is_finite or self.spec.k == 1:
                    raise ParseError("scalar u needs an extension field", pos)
                return NcPoly.constant(self.spec, self.spec.element((0, 1)))
            self.take()
            return NcPoly.variable(self.spec, _parse_var_name(text, pos))
        if kind == "(":
            self.take("(")
            inner = self.parse_polynomial()
            self.take(")")
            return inner
        if kind == "[":
            self.take("[")
            left = self.parse_polynomial()
            self.take(",")
            right = self.parse_polynomial()
            self.take("]")
            return commutator(left, right)
        raise ParseError(f"unexpected token {text!r}", pos)


def parse(text, spec):
    """Parse .ncp text into an NcPoly over the ambient field."""
    parser = _Parser(_tokenize(text), spec)
    poly = parser.parse_polynomial()
    parser.take("end")
    return poly


def _render_word(word):
    if not word:
        return "1"
    parts = []
    run_var, run_len = word[0], 1
    for v in word[1:]:
        if v is run_var:
            run_len += 1
        else:
            parts.append(repr(run_var) if run_len == 1 else f"{run_var!r}^{run_len}")
            run_var, run_len = v, 1
    parts.append(repr(run_var) if run_len == 1 else f"{run_var!r}^{run_len}")
    return "*".join(parts)


def _coef_pieces(coef, spec):
    # returns (sign, magnitude text or None); None magnitude means coefficient 1
    if not spec.is_finite:
        frac = coef.rep
        sign = "-" if frac < 0 else "+"
        mag = abs(frac)
        return sign, None if mag == 1 else str(mag)
    text = render_scalar(coef)
    if coef.is_one():
        return "+", None
    needs_parens = "+" in text
    return "+", f"({text})" if needs_parens else text


def render(f):
    """Canonical textual form: words in degree-then-lex order."""
    if f.is_zero():
        return "0"
    pieces = []
    for word, coef in f.sorted_terms():
        sign, mag = _coef_pieces(coef, f.spec)
        body = _render_word(word)
        if mag is not None:
            body = mag if not word else f"{mag}*{body}"
        elif not word:
            body = "1"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}" if sign == "-" else f" + {body}"
    return out
