"""Exact linear algebra over the Laurent polynomial ring F_q[t, t^-1].

Determinants use fraction-free (Bareiss) elimination, so every intermediate
entry is a minor of the input and every division is exact.  Pivots are
chosen by minimal t-adic valuation, ties broken by lowest row index, which
both fixes the algorithm deterministically and keeps supports small.

Kernels use reduced row echelon form over the fraction field F_q(t) with
gcd-reduced fractions, then clear denominators and strip monomial content.

Internally the hot determinant path works on dense integer coefficient
blocks (numpy int64 convolutions mod p); the quotient of each Bareiss step
is computed by a Newton-inverted power series and re-verified against the
numerator, so a failed exact division can never pass silently.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InputError, InternalCheckFailed, NonSquare
from .finite_field import FieldParams, FqElem
from .laurent import INFINITY, LaurentPoly


class LaurentMatrix:
    """Dense rectangular matrix of LaurentPoly entries over one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldParams, rows: Sequence[Sequence[LaurentPoly]]):
        grid = tuple(tuple(row) for row in rows)
        ncols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != ncols:
                raise InputError("ragged matrix")
            for entry in row:
                if not isinstance(entry, LaurentPoly) or entry.field != field:
                    raise InputError("matrix entry over the wrong field")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "nrows", len(grid))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", grid)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]]) -> LaurentMatrix:
        if not rows or not rows[0]:
            raise InputError("cannot infer field from an empty matrix")
        return cls(rows[0][0].field, rows)

    def __getitem__(self, idx: tuple[int, int]) -> LaurentPoly:
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def matvec(self, vec: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        if len(vec) != self.ncols:
            raise InputError("vector length does not match column count")
        zero = LaurentPoly.zero(self.field)
        out = []
        for row in self.rows:
            acc = zero
            for entry, x in zip(row, vec):
                acc = acc + entry * x
            out.append(acc)
        return out

    def matmul(self, other: LaurentMatrix) -> LaurentMatrix:
        if self.ncols != other.nrows:
            raise InputError("inner dimensions do not match")
        zero = LaurentPoly.zero(self.field)
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(row)
        return LaurentMatrix(self.field, rows)

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.nrows}x{self.ncols} over F_{self.field.q})"


# ---------------------------------------------------------------------------
# dense coefficient blocks
#
# A block is None (zero) or a pair (off, arr): arr has shape (n, W) with
# arr[b, k] the F_p coordinate of w^b in the coefficient of t^(off + k),
# trimmed so the first and last columns are nonzero.


class _Ctx:
    __slots__ = ("field", "p", "n", "red", "packable")

    def __init__(self, field: FieldParams):
        self.field = field
        self.p = field.p
        self.n = field.n
        self.red = np.array(field._red, dtype=np.int64).reshape(field.n - 1, field.n) \
            if field.n > 1 else np.zeros((0, field.n), dtype=np.int64)
        self.packable = field.n == 2


_CTX_CACHE: dict[FieldParams, _Ctx] = {}


def _ctx(field: FieldParams) -> _Ctx:
    ctx = _CTX_CACHE.get(field)
    if ctx is None:
        ctx = _Ctx(field)
        _CTX_CACHE[field] = ctx
    return ctx


def _to_dense(f: LaurentPoly, ctx: _Ctx):
    if f.is_zero():
        return None
    lo = f.terms[0][0]
    hi = f.terms[-1][0]
    arr = np.zeros((ctx.n, hi - lo + 1), dtype=np.int64)
    for e, c in f.terms:
        arr[:, e - lo] = c.coeffs
    return lo, arr


def _to_poly(block, ctx: _Ctx) -> LaurentPoly:
    if block is None:
        return LaurentPoly.zero(ctx.field)
    off, arr = block
    terms = []
    for k in np.flatnonzero(arr.any(axis=0)):
        terms.append((off + int(k), FqElem(ctx.field, tuple(int(v) for v in arr[:, k]))))
    return LaurentPoly(ctx.field, terms)


def _trim(off: int, arr: np.ndarray):
    nz = np.flatnonzero(arr.any(axis=0))
    if nz.size == 0:
        return None
    lo, hi = int(nz[0]), int(nz[-1])
    return off + lo, np.ascontiguousarray(arr[:, lo:hi + 1])


_PACK_SHIFT = 21
_PACK_MASK = (1 << _PACK_SHIFT) - 1
# The middle packed digit accumulates two cross products, so digit capacity
# needs 2*(p-1)^2*overlap < 2^21; the int64 budget is far looser than that.
_PACK_BUDGET = 1 << 20


def _raw_mul(a: np.ndarray, b: np.ndarray, ctx: _Ctx) -> np.ndarray:
    """Multiply two coefficient blocks (no offsets), result reduced mod p."""
    p, n = ctx.p, ctx.n
    if ctx.packable and (p - 1) * (p - 1) * min(a.shape[1], b.shape[1]) <= _PACK_BUDGET:
        pa = a[0] + (a[1] << _PACK_SHIFT)
        pb = b[0] + (b[1] << _PACK_SHIFT)
        conv = np.convolve(pa, pb)
        d0 = conv & _PACK_MASK
        d1 = (conv >> _PACK_SHIFT) & _PACK_MASK
        d2 = conv >> (2 * _PACK_SHIFT)
        r0, r1 = int(ctx.red[0, 0]), int(ctx.red[0, 1])
        return np.stack(((d0 + r0 * d2) % p, (d1 + r1 * d2) % p))
    out = np.zeros((n, a.shape[1] + b.shape[1] - 1), dtype=np.int64)
    for i in range(n):
        if not a[i].any():
            continue
        for j in range(n):
            if not b[j].any():
                continue
            conv = np.convolve(a[i], b[j])
            k = i + j
            if k < n:
                out[k] += conv
            else:
                for m in range(n):
                    r = int(ctx.red[k - n, m])
                    if r:
                        out[m] += r * conv
    return out % p


def _dmul(x, y, ctx: _Ctx):
    if x is None or y is None:
        return None
    return _trim(x[0] + y[0], _raw_mul(x[1], y[1], ctx))


def _dsub(x, y, ctx: _Ctx):
    if y is None:
        return x
    if x is None:
        return y[0], (-y[1]) % ctx.p
    off = min(x[0], y[0])
    hi = max(x[0] + x[1].shape[1], y[0] + y[1].shape[1])
    arr = np.zeros((ctx.n, hi - off), dtype=np.int64)
    arr[:, x[0] - off:x[0] - off + x[1].shape[1]] += x[1]
    arr[:, y[0] - off:y[0] - off + y[1].shape[1]] -= y[1]
    return _trim(off, arr % ctx.p)


def _series_inv(unit: np.ndarray, width: int, ctx: _Ctx) -> np.ndarray:
    """Inverse of a unit power series block mod t^width (constant term must
    be invertible; blocks are trimmed so it is)."""
    c0 = FqElem(ctx.field, tuple(int(v) for v in unit[:, 0]))
    inv = np.zeros((ctx.n, 1), dtype=np.int64)
    inv[:, 0] = c0.inv().coeffs
    have = 1
    one = np.zeros((ctx.n, 1), dtype=np.int64)
    one[0, 0] = 1
    while have < width:
        have = min(2 * have, width)
        prod = _raw_mul(unit[:, :have], inv, ctx)[:, :have]
        err = -prod
        err[:, :1] += one
        err %= ctx.p
        corr = _raw_mul(inv, err, ctx)[:, :have]
        new = np.zeros((ctx.n, have), dtype=np.int64)
        new[:, :inv.shape[1]] += inv
        new[:, :corr.shape[1]] += corr
        inv = new % ctx.p
    return inv


def _ddiv_exact(num, den, ctx: _Ctx, den_inv: np.ndarray | None = None):
    """Exact quotient num / den; raises InternalCheckFailed if not exact."""
    if num is None:
        return None
    if den is None:
        raise ZeroDivisionError("division by the zero series")
    qwidth = num[1].shape[1] - den[1].shape[1] + 1
    if qwidth < 1:
        raise InternalCheckFailed("inexact division: quotient would be shorter than 1")
    if den_inv is None or den_inv.shape[1] < qwidth:
        den_inv = _series_inv(den[1], qwidth, ctx)
    q = _raw_mul(num[1], den_inv[:, :qwidth], ctx)[:, :qwidth]
    check = _raw_mul(q, den[1], ctx)
    if check.shape != num[1].shape or not np.array_equal(check, num[1]):
        raise InternalCheckFailed("inexact division in fraction-free elimination")
    return _trim(num[0] - den[0], q)


def det(M: LaurentMatrix) -> LaurentPoly:
    """Determinant by fraction-free elimination, exact over F_q[t, t^-1]."""
    if M.nrows != M.ncols:
        raise NonSquare(f"determinant of a {M.nrows}x{M.ncols} matrix")
    n = M.nrows
    field = M.field
    if n == 0:
        return LaurentPoly.one(field)
    ctx = _ctx(field)
    D = [[_to_dense(M.rows[i][j], ctx) for j in range(n)] for i in range(n)]
    sign = 1
    prev = None
    for k in range(n - 1):
        cand = [(D[i][k][0], i) for i in range(k, n) if D[i][k] is not None]
        if not cand:
            return LaurentPoly.zero(field)
        pivot_row = min(cand)[1]
        if pivot_row != k:
            D[k], D[pivot_row] = D[pivot_row], D[k]
            sign = -sign
        piv = D[k][k]
        nums = {}
        max_q = 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _dsub(_dmul(D[i][j], piv, ctx), _dmul(D[i][k], D[k][j], ctx), ctx)
                nums[i, j] = num
                if prev is not None and num is not None:
                    max_q = max(max_q, num[1].shape[1] - prev[1].shape[1] + 1)
        inv = _series_inv(prev[1], max_q, ctx) if prev is not None and max_q > 0 else None
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = nums[i, j]
                D[i][j] = num if prev is None else _ddiv_exact(num, prev, ctx, inv)
            D[i][k] = None
        prev = piv
    result = _to_poly(D[n - 1][n - 1], ctx)
    if sign < 0:
        result = -result
    return result


# ---------------------------------------------------------------------------
# fractions over F_q[t] for kernel computation


def _poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division with remainder in F_q[t]; inputs must have valuation >= 0."""
    field = a.field
    rem = dict(a.terms)
    db = b.degree()
    lead = b.coeff(db).inv()
    quo: dict[int, FqElem] = {}
    while rem:
        da = max(rem)
        if da < db:
            break
        c = rem[da] * lead
        quo[da - db] = c
        for e, bc in b.terms:
            k = e + da - db
            cur = rem.get(k, field.zero()) - c * bc
            if cur.is_zero():
                rem.pop(k, None)
            else:
                rem[k] = cur
    return LaurentPoly(field, quo), LaurentPoly(field, rem)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd in F_q[t] of two polynomials with valuation >= 0."""
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    return a * a.coeff(a.degree()).inv()


class _Frac:
    """num/den with den a polynomial normalized to valuation 0, monic top
    coefficient, and gcd(num shifted to valuation 0, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        field = num.field
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = LaurentPoly.one(field)
            return
        shift = -den.valuation()
        den = den.shift(shift)
        num = num.shift(shift)
        num0 = num.shift(-num.valuation())
        g = _poly_gcd(num0, den)
        if g.degree() > 0:
            num_shift = num.valuation()
            num0, r1 = _poly_divmod(num0, g)
            den, r2 = _poly_divmod(den, g)
            assert r1.is_zero() and r2.is_zero()
            num = num0.shift(num_shift)
        lead = den.coeff(den.degree())
        if lead != field.one():
            inv = lead.inv()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, f: LaurentPoly) -> _Frac:
        fr = object.__new__(cls)
        fr.num = f
        fr.den = LaurentPoly.one(f.field)
        return fr

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: _Frac) -> _Frac:
        return _Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: _Frac) -> _Frac:
        return _Frac(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: _Frac) -> _Frac:
        return _Frac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: _Frac) -> _Frac:
        return _Frac(self.num * other.den, self.den * other.num)

    def __neg__(self) -> _Frac:
        fr = object.__new__(_Frac)
        fr.num = -self.num
        fr.den = self.den
        return fr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Frac):
            return NotImplemented
        return self.num == other.num and self.den == other.den


def _poly_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    g = _poly_gcd(a, b)
    q, r = _poly_divmod(a, g)
    assert r.is_zero()
    return q * b


def kernel(M: LaurentMatrix, column_order: Sequence[int] | None = None) -> list[list[LaurentPoly]]:
    """Basis of the right kernel, one vector per free coordinate.

    Vectors come out in reduced echelon shape with respect to column_order
    (default: natural order): processing the coordinates in that order, each
    basis vector carries one free coordinate, has zeros at the other free
    coordinates, and its entries at earlier pivot coordinates are the
    negated echelon entries.  Denominators are cleared and each vector is
    divided by c * t^e where e is the minimal valuation over its entries and
    c is the lowest coefficient of the free coordinate, so that coordinate
    becomes t^k times a series with lowest coefficient 1 (exactly a power of
    t when the cleared denominator is a monomial, in particular whenever the
    matrix entries are constants).
    """
    field = M.field
    order = list(range(M.ncols)) if column_order is None else list(column_order)
    if sorted(order) != list(range(M.ncols)):
        raise InputError("column_order must be a permutation of the column indices")
    nr, nc = M.nrows, M.ncols
    R = [[_Frac.from_poly(M.rows[i][order[c]]) for c in range(nc)] for i in range(nr)]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if not R[i][c].is_zero()), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = _Frac.from_poly(LaurentPoly.one(field)) / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(nr):
            if i != r and not R[i][c].is_zero():
                factor = R[i][c]
                R[i] = [R[i][j] - factor * R[r][j] for j in range(nc)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    basis = []
    pivot_set = set(pivots)
    one = LaurentPoly.one(field)
    for f in range(nc):
        if f in pivot_set:
            continue
        coords = [_Frac.from_poly(LaurentPoly.zero(field)) for _ in range(nc)]
        coords[f] = _Frac.from_poly(one)
        for row_idx, c in enumerate(pivots):
            if c < f:
                coords[c] = -R[row_idx][f]
        common = one
        for fr in coords:
            if not fr.is_zero():
                common = _poly_lcm(common, fr.den)
        vec = [LaurentPoly.zero(field)] * nc
        for c in range(nc):
            fr = coords[c]
            if not fr.is_zero():
                q, rem = _poly_divmod(common, fr.den)
                assert rem.is_zero()
                vec[order[c]] = fr.num * q
        lead_entry = vec[order[f]]
        scale = lead_entry.coeff(lead_entry.valuation()).inv()
        shift = min(v.valuation() for v in vec if not v.is_zero())
        basis.append([(x * scale).shift(-shift) if not x.is_zero() else x for x in vec])
    return basis
