"""Exact arithmetic in F_p and in the rational function field K = F_p(t1,...,tr).

Elements of K are `RatFunc` values: reduced fractions of multivariate
polynomials (`MPoly`) over the prime field.  Polynomials are stored as maps
from exponent vectors to nonzero coefficients in {1, ..., p-1}; the term
order is graded lexicographic throughout.  Canonical form (gcd reduced,
denominator with leading coefficient 1) makes equality a plain
representation comparison.

The module also provides the Frobenius-decomposition machinery: every f in K
has a unique expansion f = sum_e g_e^p t^e over the K^p-basis
{t^e : 0 <= e_i < p}, and most membership/independence questions downstream
reduce to exact K-linear algebra on these decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import DivisionByZero, PpolError, TruncationOverflow

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class FieldCtx:
    """The coefficient field K = F_p(vars), with a degree bound for safety.

    The variables are a p-basis of K, so r = len(vars) is the degree of
    imperfection of the modeled field.  r = 0 gives the prime field itself.
    """

    p: int
    vars: tuple[str, ...]
    max_degree: int = 64

    def __post_init__(self):
        if self.p not in _SMALL_PRIMES:
            raise PpolError(f"p must be a prime in {_SMALL_PRIMES}, got {self.p}")
        if len(set(self.vars)) != len(self.vars):
            raise PpolError(f"variable names must be distinct: {self.vars}")
        object.__setattr__(self, "vars", tuple(self.vars))

    @property
    def r(self) -> int:
        return len(self.vars)

    def zero(self) -> "RatFunc":
        return RatFunc._make(self, MPoly.zero(self), MPoly.one(self))

    def one(self) -> "RatFunc":
        return self.const(1)

    def const(self, c: int) -> "RatFunc":
        return RatFunc._make(self, MPoly.const(self, c), MPoly.one(self))

    def gen(self, which) -> "RatFunc":
        """The variable t_i as a field element; accepts an index or a name."""
        if isinstance(which, str):
            which = self.vars.index(which)
        return RatFunc._make(self, MPoly.gen(self, which), MPoly.one(self))

    def gens(self) -> tuple["RatFunc", ...]:
        return tuple(self.gen(i) for i in range(self.r))

    def var_index(self, name: str) -> int:
        return self.vars.index(name)


def _exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _grlex_key(e):
    return (sum(e), e)


class MPoly:
    """Polynomial over F_p in the ctx variables; exponent-vector -> coeff map.

    Invariants: no zero coefficients are stored, all coefficients lie in
    {1, ..., p-1}, and all exponent vectors have length ctx.r.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(ctx: FieldCtx) -> "MPoly":
        return MPoly(ctx, {})

    @staticmethod
    def one(ctx: FieldCtx) -> "MPoly":
        return MPoly.const(ctx, 1)

    @staticmethod
    def const(ctx: FieldCtx, c: int) -> "MPoly":
        c %= ctx.p
        if c == 0:
            return MPoly(ctx, {})
        return MPoly(ctx, {(0,) * ctx.r: c})

    @staticmethod
    def gen(ctx: FieldCtx, i: int, power: int = 1) -> "MPoly":
        e = [0] * ctx.r
        e[i] = power
        return MPoly(ctx, {tuple(e): 1})

    @staticmethod
    def from_dict(ctx: FieldCtx, d: dict) -> "MPoly":
        terms = {}
        for e, c in d.items():
            c %= ctx.p
            if c:
                terms[tuple(e)] = c
        return MPoly(ctx, terms)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.ctx.r: 1}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.ctx.r in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading(self):
        """(exponent, coeff) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _check_degree(self):
        if self.terms and self.total_degree() > self.ctx.max_degree:
            e = max(self.terms, key=sum)
            raise TruncationOverflow(
                f"monomial of total degree {sum(e)} exceeds the degree bound "
                f"{self.ctx.max_degree}",
                monomial=e,
            )
        return self

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "MPoly") -> "MPoly":
        p = self.ctx.p
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = (terms.get(e, 0) + c) % p
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly(self.ctx, terms)

    def __neg__(self) -> "MPoly":
        p = self.ctx.p
        return MPoly(self.ctx, {e: (-c) % p for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        p = self.ctx.p
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_add(e1, e2)
                s = (terms.get(e, 0) + c1 * c2) % p
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        out = MPoly(self.ctx, terms)
        return out._check_degree()

    def scale(self, c: int) -> "MPoly":
        c %= self.ctx.p
        if c == 0:
            return MPoly.zero(self.ctx)
        if c == 1:
            return self
        p = self.ctx.p
        return MPoly(self.ctx, {e: (k * c) % p for e, k in self.terms.items()})

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise PpolError("negative power of a polynomial")
        result = MPoly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def frobenius(self, e: int) -> "MPoly":
        """Raise to the p^e power: exponents scale, F_p coefficients are fixed."""
        q = self.ctx.p ** e
        out = MPoly(self.ctx, {tuple(x * q for x in exp): c for exp, c in self.terms.items()})
        return out._check_degree()

    def shift(self, exp: tuple) -> "MPoly":
        """Multiply by the monomial t^exp."""
        return MPoly(self.ctx, {_exp_add(e, exp): c for e, c in self.terms.items()})

    def subs_var(self, i: int, value: "RatFunc") -> "RatFunc":
        """Substitute variable i by a field element of value's own context."""
        ctx2 = value.ctx
        out = ctx2.zero()
        powers: dict[int, RatFunc] = {0: ctx2.one()}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * value
            return powers[k]

        for e, c in self.terms.items():
            rest = [x for j, x in enumerate(e) if j != i]
            mono = MPoly.from_dict(ctx2, {tuple(rest): c})
            out = out + RatFunc._make(ctx2, mono, MPoly.one(ctx2)) * power(e[i])
        return out

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, MPoly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.ctx.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


# -- gcd machinery -----------------------------------------------------


def _is_monomial(a: MPoly) -> bool:
    return len(a.terms) == 1


def _monomial_gcd_with(a: MPoly, b: MPoly) -> MPoly:
    (ea,) = a.terms
    exp = tuple(min(ea[i], min(e[i] for e in b.terms)) for i in range(a.ctx.r))
    return MPoly(a.ctx, {exp: 1})


def _main_var(a: MPoly, b: MPoly) -> Optional[int]:
    for i in reversed(range(a.ctx.r)):
        if a.degree_in(i) > 0 or b.degree_in(i) > 0:
            return i
    return None


def _coeffs_in(a: MPoly, i: int) -> dict[int, MPoly]:
    """View a as a univariate polynomial in variable i with MPoly coefficients."""
    out: dict[int, MPoly] = {}
    for e, c in a.terms.items():
        d = e[i]
        rest = tuple(x if j != i else 0 for j, x in enumerate(e))
        cur = out.setdefault(d, MPoly.zero(a.ctx))
        out[d] = cur + MPoly(a.ctx, {rest: c})
    return {d: c for d, c in out.items() if not c.is_zero()}


def _from_coeffs(ctx: FieldCtx, i: int, coeffs: dict[int, MPoly]) -> MPoly:
    out = MPoly.zero(ctx)
    for d, c in coeffs.items():
        e = [0] * ctx.r
        e[i] = d
        out = out + c.shift(tuple(e))
    return out


def mp_divexact(a: MPoly, b: MPoly) -> MPoly:
    """Exact division a / b; raises if b does not divide a."""
    if b.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if a.is_zero():
        return a
    p = a.ctx.p
    quot: dict = {}
    rem = a
    eb, cb = b.leading()
    cb_inv = pow(cb, p - 2, p)
    while not rem.is_zero():
        ea, ca = rem.leading()
        e = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in e):
            raise PpolError("inexact polynomial division")
        c = (ca * cb_inv) % p
        quot[e] = c
        rem = rem - b.shift(e).scale(c)
    return MPoly(a.ctx, quot)


def _prem(a: dict[int, MPoly], b: dict[int, MPoly], ctx: FieldCtx) -> dict[int, MPoly]:
    """Pseudo-remainder of a by b, both as coefficient maps in the main variable."""
    da, db = max(a), max(b)
    lb = b[db]
    rem = dict(a)
    while rem and max(rem) >= db:
        dr = max(rem)
        lr = rem[dr]
        new: dict[int, MPoly] = {}
        for d, c in rem.items():
            if d == dr:
                continue
            new[d] = c * lb
        for d, c in b.items():
            if d == db:
                continue
            k = d + dr - db
            cur = new.get(k, MPoly.zero(ctx))
            val = cur - c * lr
            if val.is_zero():
                new.pop(k, None)
            else:
                new[k] = val
        rem = new
    return rem


def mp_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Monic gcd (leading graded-lex coefficient 1) via primitive PRS recursion."""
    ctx = a.ctx
    if a.is_zero() and b.is_zero():
        return MPoly.zero(ctx)
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return MPoly.one(ctx)
    if a == b:
        return _monic(a)
    if _is_monomial(a):
        return _monomial_gcd_with(a, b)
    if _is_monomial(b):
        return _monomial_gcd_with(b, a)

    i = _main_var(a, b)
    if i is None:
        return MPoly.one(ctx)
    ca_map, cb_map = _coeffs_in(a, i), _coeffs_in(b, i)
    cont_a = _content(ca_map, ctx)
    cont_b = _content(cb_map, ctx)
    cont = mp_gcd(cont_a, cont_b)
    pa = {d: mp_divexact(c, cont_a) for d, c in ca_map.items()}
    pb = {d: mp_divexact(c, cont_b) for d, c in cb_map.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        rem = _prem(pa, pb, ctx)
        if not rem:
            break
        cont_r = _content(rem, ctx)
        pa, pb = pb, {d: mp_divexact(c, cont_r) for d, c in rem.items()}
        if max(pb) == 0:
            return _monic(cont)
    result = cont * _from_coeffs(ctx, i, pb)
    return _monic(result)


def _content(coeffs: dict[int, MPoly], ctx: FieldCtx) -> MPoly:
    g = MPoly.zero(ctx)
    for d in sorted(coeffs):
        g = mp_gcd(g, coeffs[d])
        if g.is_one():
            break
    return g


def _monic(a: MPoly) -> MPoly:
    if a.is_zero():
        return a
    _, c = a.leading()
    if c == 1:
        return a
    return a.scale(pow(c, a.ctx.p - 2, a.ctx.p))


def mp_lcm(a: MPoly, b: MPoly) -> MPoly:
    if a.is_zero() or b.is_zero():
        return MPoly.zero(a.ctx)
    return _monic(mp_divexact(a * b, mp_gcd(a, b)))


class RatFunc:
    """Element of K = F_p(t1,...,tr) as a reduced fraction num/den.

    Invariants: den != 0, gcd(num, den) = 1, den has graded-lex leading
    coefficient 1, and zero is stored as 0/1.
    """

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: FieldCtx, num: MPoly, den: MPoly):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num, den = MPoly.zero(ctx), MPoly.one(ctx)
        else:
            g = mp_gcd(num, den)
            if not g.is_one():
                num, den = mp_divexact(num, g), mp_divexact(den, g)
            _, lc = den.leading()
            if lc != 1:
                inv = pow(lc, ctx.p - 2, ctx.p)
                num, den = num.scale(inv), den.scale(inv)
        self.ctx = ctx
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _make(ctx, num, den) -> "RatFunc":
        return RatFunc(ctx, num, den)

    @staticmethod
    def from_mpoly(num: MPoly) -> "RatFunc":
        return RatFunc(num.ctx, num, MPoly.one(num.ctx))

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den == other.den:
            return RatFunc(self.ctx, self.num + other.num, self.den)
        return RatFunc(
            self.ctx, self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc._negated(self)

    @staticmethod
    def _negated(a: "RatFunc") -> "RatFunc":
        out = object.__new__(RatFunc)
        out.ctx, out.num, out.den, out._hash = a.ctx, -a.num, a.den, None
        return out

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return self.ctx.zero()
        # cross-cancel first to keep gcds small
        g1 = mp_gcd(self.num, other.den)
        g2 = mp_gcd(other.num, self.den)
        n1 = self.num if g1.is_one() else mp_divexact(self.num, g1)
        d2 = other.den if g1.is_one() else mp_divexact(other.den, g1)
        n2 = other.num if g2.is_one() else mp_divexact(other.num, g2)
        d1 = self.den if g2.is_one() else mp_divexact(self.den, g2)
        return RatFunc(self.ctx, n1 * n2, d1 * d2)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.ctx, self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def frobenius_power(self, e: int) -> "RatFunc":
        """f^(p^e) by scaling exponent vectors; F_p coefficients are Frobenius-fixed."""
        if e < 0:
            raise PpolError("Frobenius power must be nonnegative")
        if e == 0:
            return self
        out = object.__new__(RatFunc)
        out.ctx = self.ctx
        out.num = self.num.frobenius(e)
        out.den = self.den.frobenius(e)
        out._hash = None
        return out

    def scale_int(self, c: int) -> "RatFunc":
        c %= self.ctx.p
        if c == 0:
            return self.ctx.zero()
        out = object.__new__(RatFunc)
        out.ctx, out.num, out.den, out._hash = self.ctx, self.num.scale(c), self.den, None
        return out

    def subs_var(self, i: int, value: "RatFunc") -> "RatFunc":
        return self.num.subs_var(i, value) / self.den.subs_var(i, value)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.ctx == other.ctx
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        ds = str(self.den)
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field arithmetic dispatch used by the CLI; op in {add, sub, mul, div}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise PpolError(f"unknown operation {op!r}")


# -- Frobenius decomposition -------------------------------------------


@dataclass(frozen=True)
class FrobDecomp:
    """The unique expansion f = sum_e g_e^p t^e over {t^e : 0 <= e_i < p}."""

    ctx: FieldCtx
    parts: tuple  # tuple of (exponent tuple, RatFunc), sorted, nonzero parts only

    def as_dict(self) -> dict:
        return dict(self.parts)

    def part(self, e) -> RatFunc:
        return dict(self.parts).get(tuple(e), self.ctx.zero())

    def reconstruct(self) -> RatFunc:
        out = self.ctx.zero()
        for e, g in self.parts:
            mono = RatFunc.from_mpoly(MPoly.from_dict(self.ctx, {e: 1}))
            out = out + g.frobenius_power(1) * mono
        return out

    def vector(self, classes: Sequence[tuple]) -> list[RatFunc]:
        d = self.as_dict()
        return [d.get(tuple(e), self.ctx.zero()) for e in classes]


def residue_classes(ctx: FieldCtx) -> list[tuple]:
    """All exponent classes e in {0,...,p-1}^r, in lexicographic order."""
    classes = [()]
    for _ in range(ctx.r):
        classes = [e + (k,) for e in classes for k in range(ctx.p)]
    return classes


def frobenius_decompose(f: RatFunc) -> FrobDecomp:
    """Split f = num/den as sum_e (G_e/den)^p t^e using f = num*den^(p-1) / den^p."""
    ctx = f.ctx
    p = ctx.p
    n = f.num * f.den ** (p - 1)
    buckets: dict[tuple, dict] = {}
    for e, c in n.terms.items():
        cls = tuple(x % p for x in e)
        root = tuple((x - m) // p for x, m in zip(e, cls))
        buckets.setdefault(cls, {})[root] = c  # F_p coefficients are their own p-th roots
    parts = []
    for cls in sorted(buckets):
        g = RatFunc(ctx, MPoly(ctx, buckets[cls]), f.den)
        if not g.is_zero():
            parts.append((cls, g))
    return FrobDecomp(ctx, tuple(parts))


def p_root(f: RatFunc, e: int = 1) -> RatFunc:
    """The p^e-th root of f; raises if f is not in K^(p^e)."""
    out = f
    for _ in range(e):
        d = frobenius_decompose(out)
        zero_cls = (0,) * out.ctx.r
        if any(cls != zero_cls for cls, _ in d.parts):
            raise PpolError("element has no p-th root in K")
        out = d.part(zero_cls)
    return out


# -- exact K-linear algebra ---------------------------------------------


def k_nullvector(rows: list[list[RatFunc]], ctx: FieldCtx) -> Optional[list[RatFunc]]:
    """A nonzero K-vector x with sum_i x_i * rows[i] = 0, or None if rows are independent."""
    if not rows:
        return None
    ncols = len(rows[0])
    # eliminate on an augmented identity to track the combination
    work = [list(r) + [ctx.one() if j == i else ctx.zero() for j in range(len(rows))]
            for i, r in enumerate(rows)]
    pivot_rows: list[int] = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(work)):
            if not work[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = work[row][col].inverse()
        work[row] = [v * inv for v in work[row]]
        for r in range(len(work)):
            if r != row and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        pivot_rows.append(col)
        row += 1
    for r in range(row, len(work)):
        if all(work[r][c].is_zero() for c in range(ncols)):
            comb = work[r][ncols:]
            if any(not v.is_zero() for v in comb):
                return comb
    return None


def k_solve(rows: list[list[RatFunc]], rhs: list[RatFunc], ctx: FieldCtx) -> Optional[list[RatFunc]]:
    """One K-solution x of rows * x = rhs, or None if the system is inconsistent."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    work = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if not work[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = work[row][col].inverse()
        work[row] = [v * inv for v in work[row]]
        for r in range(nrows):
            if r != row and not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
    for r in range(row, nrows):
        if not work[r][ncols].is_zero():
            return None
    x = [ctx.zero()] * ncols
    for r, col in enumerate(pivots):
        x[col] = work[r][ncols]
    return x


def k_rank(rows: list[list[RatFunc]]) -> int:
    if not rows:
        return 0
    work = [list(r) for r in rows]
    ncols = len(work[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, len(work)):
            if not work[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        inv = work[row][col].inverse()
        work[row] = [v * inv for v in work[row]]
        for r in range(row + 1, len(work)):
            if not work[r][col].is_zero():
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        rank += 1
        row += 1
    return rank


# -- p-independence and K^p-module membership ---------------------------


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    degree: int  # [K^p(elems) : K^p]
    certificate: Optional[tuple] = None  # ((subset exponents, coeff), ...) with
    # sum c_a^p * prod(elems^a) = 0 when dependent

    def __bool__(self):
        return self.independent


def _subset_exponents(m: int, p: int) -> list[tuple]:
    out = [()]
    for _ in range(m):
        out = [e + (k,) for e in out for k in range(p)]
    return out


def p_independent(elems: Sequence[RatFunc]) -> IndependenceResult:
    """Decide [K^p(elems) : K^p] = p^len(elems), with a dependence certificate.

    The products prod elems_i^{a_i}, 0 <= a_i < p, span K^p(elems) over K^p;
    their K^p-linear independence is equivalent to K-linear independence of
    their Frobenius decompositions.
    """
    if not elems:
        return IndependenceResult(True, 1)
    ctx = elems[0].ctx
    for f in elems:
        if f.is_zero():
            raise PpolError("p_independent requires nonzero elements")
    exps = _subset_exponents(len(elems), ctx.p)
    classes = residue_classes(ctx)
    products = []
    for a in exps:
        prod = ctx.one()
        for f, k in zip(elems, a):
            prod = prod * f ** k
        products.append(prod)
    rows = [frobenius_decompose(f).vector(classes) for f in products]
    degree = k_rank(rows)
    if degree == len(exps):
        return IndependenceResult(True, degree)
    comb = k_nullvector(rows, ctx)
    cert = tuple((a, c) for a, c in zip(exps, comb) if not c.is_zero())
    return IndependenceResult(False, degree, cert)


def kp_module_membership(f: RatFunc, gens: Sequence[RatFunc]) -> Optional[list[RatFunc]]:
    """Coordinates (a_i) with f = sum a_i^p * gens_i, or None when not a member.

    Uniqueness of Frobenius decompositions turns the question into a K-linear
    solve: per residue class e, sum_i a_i * decomp(gens_i)_e = decomp(f)_e.
    """
    if not gens:
        raise PpolError("kp_module_membership requires at least one generator")
    ctx = f.ctx
    classes = residue_classes(ctx)
    gvecs = [frobenius_decompose(g).vector(classes) for g in gens]
    fvec = frobenius_decompose(f).vector(classes)
    rows = [[gvecs[i][e] for i in range(len(gens))] for e in range(len(classes))]
    rhs = [fvec[e] for e in range(len(classes))]
    return k_solve(rows, rhs, ctx)


# -- monomial truncations ------------------------------------------------


@dataclass(frozen=True)
class MonomialBasis:
    """A finite F_p-linear truncation of K: the span of monomials/denominator.

    `monomials` are exponent vectors; when `denominator` is set the spanned
    elements are t^a / denominator, which is how searches reach the rational
    points that carry denominators like (1 - t).
    """

    monomials: tuple
    description: str = ""
    denominator: Optional[MPoly] = None

    def __post_init__(self):
        if len(set(self.monomials)) != len(self.monomials):
            raise PpolError("monomial basis entries must be distinct")
        if not self.monomials:
            raise PpolError("monomial basis must be nonempty")

    def __len__(self):
        return len(self.monomials)

    def elements(self, ctx: FieldCtx) -> list[RatFunc]:
        den = self.denominator if self.denominator is not None else MPoly.one(ctx)
        return [RatFunc(ctx, MPoly.from_dict(ctx, {e: 1}), den) for e in self.monomials]


def total_degree_basis(ctx: FieldCtx, bound: int, denominator: Optional[MPoly] = None) -> MonomialBasis:
    """All monomials of total degree <= bound, graded-lex sorted."""
    monos = [()]
    for _ in range(ctx.r):
        monos = [e + (k,) for e in monos for k in range(bound + 1)]
    monos = [e for e in monos if sum(e) <= bound]
    monos.sort(key=_grlex_key)
    return MonomialBasis(tuple(monos), f"total degree <= {bound}", denominator)


def expand_in_basis(f: RatFunc, basis: MonomialBasis) -> Optional[list[int]]:
    """F_p coordinates of f over the basis span, or None when f is outside it."""
    ctx = f.ctx
    den = basis.denominator if basis.denominator is not None else MPoly.one(ctx)
    g = f * RatFunc.from_mpoly(den)
    if not g.is_polynomial():
        return None
    index = {e: i for i, e in enumerate(basis.monomials)}
    coords = [0] * len(basis.monomials)
    for e, c in g.num.terms.items():
        if e not in index:
            return None
        coords[index[e]] = c
    return coords


def fp_expand(values: Sequence[RatFunc], ctx: FieldCtx):
    """Exact joint F_p-coordinates of K elements over an automatic monomial frame.

    Returns (rows, monomials, denominator): rows[i] are the coefficients of
    values[i]*denominator, indexed by the shared sorted monomial list.  This
    is the workhorse that turns K-valued linear conditions into F_p rows.
    """
    den = MPoly.one(ctx)
    for v in values:
        den = mp_lcm(den, v.den)
    numerators = []
    monomials = set()
    for v in values:
        n = v.num * mp_divexact(den, v.den)
        numerators.append(n)
        monomials.update(n.terms)
    index = sorted(monomials, key=_grlex_key)
    pos = {e: i for i, e in enumerate(index)}
    rows = []
    for n in numerators:
        row = [0] * len(index)
        for e, c in n.terms.items():
            row[pos[e]] = c
        rows.append(row)
    return rows, index, den
