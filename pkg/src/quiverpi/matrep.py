"""Exact dense matrices and division-free characteristic coefficients.

charcoeffs uses the Berkowitz vector recurrence, which stays valid in small
characteristic (no Newton identities, no division).  principal_minor_sum is
an independent cofactor-expansion oracle for the same coefficients.  The
matrix-unit basis is ordered row-major everywhere; left_mult_operator and
Peirce indexing rely on that ordering bit-exactly.
"""

from __future__ import annotations

from .scalars import FieldElement, FieldMismatchError, parse_scalar, render_scalar


class MatrixError(ValueError):
    pass


class Mat:
    """Square matrix over one FieldSpec; immutable after construction."""

    __slots__ = ("spec", "n", "rows")

    def __init__(self, spec, rows):
        self.spec = spec
        self.rows = tuple(tuple(r) for r in rows)
        self.n = len(self.rows)
        for r in self.rows:
            if len(r) != self.n:
                raise MatrixError("matrix must be square")

    @classmethod
    def from_values(cls, spec, rows):
        return cls(spec, [[spec.element(v) for v in row] for row in rows])

    @classmethod
    def zero(cls, spec, n):
        z = spec.zero
        return cls(spec, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, spec, n):
        z, o = spec.zero, spec.one
        return cls(spec, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, spec, n, i, j):
        """Matrix unit e_{ij}, zero-based indices."""
        z, o = spec.zero, spec.one
        return cls(spec, [[o if (r == i and c == j) else z for c in range(n)] for r in range(n)])

    def _check(self, other):
        if not isinstance(other, Mat):
            raise MatrixError(f"cannot combine Mat with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError("matrices over different fields")
        if other.n != self.n:
            raise MatrixError("dimension mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Mat(self.spec, [[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        other = self._check(other)
        return Mat(self.spec, [[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.spec, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        other = self._check(other)
        n = self.n
        spec = self.spec
        if spec.is_finite and self.rows and self.rows[0][0].idx is not None:
            return self._mul_tables(other)
        cols = list(zip(*other.rows))
        zero = spec.zero
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(spec, out)

    def _mul_tables(self, other):
        # table-indexed fast path for small finite fields
        spec = self.spec
        add_t, mul_t, elems = spec._add, spec._mul, spec._elems
        a_idx = [[e.idx for e in r] for r in self.rows]
        b_cols = [[other.rows[i][j].idx for i in range(self.n)] for j in range(self.n)]
        out = []
        for r in a_idx:
            row = []
            for c in b_cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc = add_t[acc][mul_t[a][b]]
                row.append(elems[acc])
            out.append(row)
        return Mat(spec, out)

    def scale(self, coef):
        c = coef if isinstance(coef, FieldElement) else self.spec.element(coef)
        if c.is_zero():
            return Mat.zero(self.spec, self.n)
        return Mat(self.spec, [[a * c for a in r] for r in self.rows])

    def __pow__(self, k):
        if k < 0:
            raise MatrixError("negative matrix power")
        result = Mat.identity(self.spec, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def inverse(self):
        """Gauss-Jordan inverse; raises MatrixError when singular."""
        n = self.n
        spec = self.spec
        aug = [list(r) + [spec.one if i == j else spec.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
            if pivot is None:
                raise MatrixError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv_p = aug[col][col].inverse()
            aug[col] = [e * inv_p for e in aug[col]]
            for r in range(n):
                if r != col and not aug[r][col].is_zero():
                    factor = aug[r][col]
                    aug[r] = [e - factor * p for e, p in zip(aug[r], aug[col])]
        return Mat(spec, [row[n:] for row in aug])

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def trace(self):
        acc = self.spec.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.spec == other.spec
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return render_matrix(self)


def charpoly(a):
    """Coefficients [1, c_1, ..., c_n] of det(lambda*I - a), by Berkowitz."""
    n = a.n
    spec = a.spec
    one, zero = spec.one, spec.zero
    coeffs = [one]
    for r in range(1, n + 1):
        diag = a.rows[r - 1][r - 1]
        row = a.rows[r - 1][:r - 1]
        col = [a.rows[i][r - 1] for i in range(r - 1)]
        # Toeplitz entries t_0..t_r: 1, -a_rr, -(R S), -(R M S), -(R M^2 S), ...
        ts = [one, -diag]
        vec = list(col)
        for _ in range(r - 1):
            acc = zero
            for x, y in zip(row, vec):
                acc = acc + x * y
            ts.append(-acc)
            if len(ts) <= r:
                vec = [_dot_row(a.rows[i][:r - 1], vec, zero) for i in range(r - 1)]
        new = []
        for i in range(r + 1):
            acc = zero
            for j in range(len(coeffs)):
                if 0 <= i - j <= r:
                    if i - j < len(ts):
                        acc = acc + ts[i - j] * coeffs[j]
            new.append(acc)
        coeffs = new
    return coeffs


def _dot_row(row, vec, zero):
    acc = zero
    for x, y in zip(row, vec):
        acc = acc + x * y
    return acc


def charcoeffs(a):
    """[alpha_1, ..., alpha_n]: alpha_k is the k-th elementary symmetric
    function of the eigenvalues, so det(lambda*I - a) =
    lambda^n + sum (-1)^k alpha_k lambda^(n-k)."""
    cs = charpoly(a)
    return [cs[k] if k % 2 == 0 else -cs[k] for k in range(1, len(cs))]


def left_mult_operator(a):
    """The matrix of x -> a*x on M_n in the row-major unit basis: a (x) I."""
    n = a.n
    spec = a.spec
    zero = spec.zero
    big = [[zero] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for k in range(n):
            v = a.rows[i][k]
            if not v.is_zero():
                for l in range(n):
                    big[i * n + l][k * n + l] = v
    return Mat(spec, big)


def _det_laplace(rows, spec):
    n = len(rows)
    if n == 0:
        return spec.one
    if n == 1:
        return rows[0][0]
    acc = spec.zero
    for j in range(n):
        c = rows[0][j]
        if c.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        sub = _det_laplace(minor, spec)
        term = c * sub
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def principal_minor_sum(a, k):
    """Sum of all k x k principal minors; equals charcoeffs(a)[k-1].

    Independent of the Berkowitz path: cofactor expansion only.
    """
    if not 1 <= k <= a.n:
        raise MatrixError(f"minor order {k} out of range for n={a.n}")
    from itertools import combinations

    acc = a.spec.zero
    for subset in combinations(range(a.n), k):
        rows = [tuple(a.rows[i][j] for j in subset) for i in subset]
        acc = acc + _det_laplace([list(r) for r in rows], a.spec)
    return acc


def matrix_unit_sum(a, k, experimental=False):
    """Literal matrix-unit realization of the displayed coefficient sum.

    The printed index pattern appears garbled in its source; this computes it
    verbatim and reports whether it matches the principal-minor coefficient.
    Only available behind experimental=True.
    """
    if not experimental:
        raise MatrixError("matrix_unit_sum is experimental; pass experimental=True")
    n = a.n
    spec = a.spec
    from itertools import product as iproduct

    total = Mat.zero(spec, n)
    for j in range(n):
        for vec in iproduct(range(n), repeat=k):
            term = Mat.unit(spec, n, j, vec[0])
            term = term * a
            for idx in vec[1:]:
                term = term * Mat.unit(spec, n, idx, idx)
                term = term * a
            term = term * Mat.unit(spec, n, vec[0], j)
            total = total + term
    expected = Mat.identity(spec, n).scale(charcoeffs(a)[k - 1])
    return total, total == expected


def poly_coeff_power(coeffs, m, spec):
    """Power of a commutative polynomial given by its coefficient list."""
    result = [spec.one]
    base = list(coeffs)
    while m:
        if m & 1:
            result = _poly_coeff_mul(result, base, spec)
        m >>= 1
        if m:
            base = _poly_coeff_mul(base, base, spec)
    return result


def _poly_coeff_mul(a, b, spec):
    out = [spec.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


# -- serialization: bracketed rows of scalar syntax ---------------------------

def render_matrix(m):
    return "[" + ",".join("[" + ",".join(render_scalar(e) for e in row) + "]"
                          for row in m.rows) + "]"


def parse_matrix(text, spec):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise MatrixError("matrix text must be bracketed rows")
    inner = text[1:-1]
    rows, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        if ch == "]":
            depth -= 1
            if depth == 0:
                rows.append([parse_scalar(p, spec) for p in cur.split(",") if p.strip()])
                continue
        if depth >= 1:
            cur += ch
    return Mat(spec, rows)


def random_matrix(spec, n, rng):
    """Seeded random matrix; rationals draw small integers."""
    if spec.is_finite:
        elems = spec.elements()
        return Mat(spec, [[rng.choice(elems) for _ in range(n)] for _ in range(n)])
    return Mat.from_values(spec, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
