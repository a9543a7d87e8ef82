"""Additive (p-)polynomials in several variables, and general polynomial maps.

A `PPoly` is a sum of terms c * X_i^(p^e) stored as a map (i, e) -> c; it
induces an additive map on tuples and is closed under composition.  Powers
are stored as the exponent e, not the expanded integer p^e, so degree
bookkeeping matches statements about p^(n-1) / p^n directly.

`GPoly`/`PolyMap` carry general (non-additive) polynomials in the ambient
variables with coefficients in K; they house bi-additive maps such as the
coordinatewise product map into the group W, and support the symbolic
expansions used by the multi-additivity and image checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PpolError, ShapeError, TruncationOverflow
from .fields import (
    FieldCtx,
    MonomialBasis,
    RatFunc,
    fp_expand,
    frobenius_decompose,
    k_nullvector,
    p_root,
    residue_classes,
)
from .linalg import fp_span_dim, nullspace_fp, rref_fp

_MAX_POWER_INDEX = 40  # p^e exponent indices beyond this indicate runaway rewriting


class PPoly:
    """p-polynomial sum of c * X_i^(p^e) terms; no cross terms, no constant.

    Invariants: terms maps (var index, power index e) to a nonzero RatFunc,
    0 <= var index < arity.
    """

    __slots__ = ("ctx", "arity", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, arity: int, terms: dict):
        self.ctx = ctx
        self.arity = arity
        self.terms = terms
        self._hash = None

    @staticmethod
    def zero(ctx: FieldCtx, arity: int) -> "PPoly":
        return PPoly(ctx, arity, {})

    @staticmethod
    def term(ctx: FieldCtx, arity: int, var: int, e: int, coeff: RatFunc) -> "PPoly":
        if not 0 <= var < arity:
            raise ShapeError(f"variable index {var} out of range for arity {arity}")
        if e < 0:
            raise PpolError("power index must be nonnegative")
        if coeff.is_zero():
            return PPoly.zero(ctx, arity)
        return PPoly(ctx, arity, {(var, e): coeff})

    @staticmethod
    def variable(ctx: FieldCtx, arity: int, var: int) -> "PPoly":
        return PPoly.term(ctx, arity, var, 0, ctx.one())

    @staticmethod
    def from_terms(ctx: FieldCtx, arity: int, items) -> "PPoly":
        out: dict = {}
        for (var, e), c in items:
            if c.is_zero():
                continue
            key = (var, e)
            cur = out.get(key)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return PPoly(ctx, arity, out)

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, var: int, e: int) -> RatFunc:
        return self.terms.get((var, e), self.ctx.zero())

    def support_vars(self) -> set:
        return {v for v, _ in self.terms}

    def max_power(self) -> int:
        return max((e for _, e in self.terms), default=0)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "PPoly") -> "PPoly":
        if other.arity != self.arity:
            raise ShapeError("arity mismatch in p-polynomial addition")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            cur = terms.get(key)
            s = c if cur is None else cur + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return PPoly(self.ctx, self.arity, terms)

    def __neg__(self) -> "PPoly":
        return PPoly(self.ctx, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PPoly") -> "PPoly":
        return self + (-other)

    def scale(self, c: RatFunc) -> "PPoly":
        if c.is_zero():
            return PPoly.zero(self.ctx, self.arity)
        return PPoly(self.ctx, self.arity, {k: v * c for k, v in self.terms.items()})

    def frobenius(self, k: int) -> "PPoly":
        """The composite Frob^k o self: coefficients to the p^k, powers shifted."""
        if k == 0:
            return self
        return PPoly(
            self.ctx,
            self.arity,
            {(v, e + k): c.frobenius_power(k) for (v, e), c in self.terms.items()},
        )

    def compose(self, subs: Sequence["PPoly"]) -> "PPoly":
        """Exact composition self(subs_0, ..., subs_{arity-1}); stays additive."""
        if len(subs) != self.arity:
            raise ShapeError(
                f"composition needs {self.arity} substituends, got {len(subs)}"
            )
        tgt_arity = subs[0].arity if subs else 0
        for s in subs:
            if s.arity != tgt_arity:
                raise ShapeError("substituends must share one ambient arity")
        out: dict = {}
        for (i, e), c in self.terms.items():
            for (j, e2), d in subs[i].terms.items():
                key = (j, e + e2)
                if e + e2 > _MAX_POWER_INDEX:
                    raise TruncationOverflow(
                        f"power index {e + e2} exceeds the working bound"
                    )
                add = c * d.frobenius_power(e)
                cur = out.get(key)
                s = add if cur is None else cur + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return PPoly(self.ctx, tgt_arity, out)

    def evaluate(self, point: Sequence[RatFunc]) -> RatFunc:
        if len(point) != self.arity:
            raise ShapeError("evaluation point has wrong length")
        out = self.ctx.zero()
        for (i, e), c in self.terms.items():
            out = out + c * point[i].frobenius_power(e)
        return out

    def rename_into(self, arity: int, var_map: Sequence[int]) -> "PPoly":
        """Reindex variables: old index i becomes var_map[i] in a wider ambient."""
        return PPoly(
            self.ctx, arity, {(var_map[v], e): c for (v, e), c in self.terms.items()}
        )

    def to_gpoly(self) -> "GPoly":
        out: dict = {}
        p = self.ctx.p
        for (i, e), c in self.terms.items():
            exp = [0] * self.arity
            exp[i] = p**e
            key = tuple(exp)
            cur = out.get(key)
            s = c if cur is None else cur + c
            if not s.is_zero():
                out[key] = s
            else:
                out.pop(key, None)
        return GPoly(self.ctx, self.arity, out)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (v, e) in sorted(self.terms, key=lambda k: (k[0], k[1])):
            c = self.terms[(v, e)]
            power = self.ctx.p**e
            var = names[v] if power == 1 else f"{names[v]}^{power}"
            if c.is_one():
                parts.append(var)
            else:
                cs = str(c)
                if "+" in cs or "/" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{var}")
        return " + ".join(parts)

    def __repr__(self):
        names = [f"X{i}" for i in range(self.arity)]
        return f"PPoly({self.format(names)})"


@dataclass(frozen=True)
class PrincipalPart:
    """Highest-power term per occurring variable: var -> (e, coeff)."""

    leading: tuple  # sorted tuple of (var, e, coeff)

    def as_dict(self):
        return {v: (e, c) for v, e, c in self.leading}

    def powers(self):
        return {e for _, e, _ in self.leading}

    def to_ppoly(self, ctx: FieldCtx, arity: int) -> PPoly:
        return PPoly.from_terms(ctx, arity, [((v, e), c) for v, e, c in self.leading])


def principal_part(F: PPoly) -> PrincipalPart:
    if F.is_zero():
        raise PpolError("the zero p-polynomial has no principal part")
    best: dict = {}
    for (v, e), c in F.terms.items():
        if v not in best or e > best[v][0]:
            best[v] = (e, c)
    return PrincipalPart(tuple(sorted((v, e, c) for v, (e, c) in best.items())))


# -- reducedness --------------------------------------------------------


@dataclass(frozen=True)
class ReducedResult:
    reduced: bool
    exact: bool  # True for the diagonal criterion, False for a truncated search
    witness: Optional[tuple] = None  # nontrivial zero of the principal part

    def __bool__(self):
        return self.reduced


def _kpe_nullvector(vectors, e: int, ctx: FieldCtx):
    """x (over K, not all zero) with sum_i x_i^(p^e) * vectors[i] = 0, else None."""
    if e == 0:
        return k_nullvector([list(v) for v in vectors], ctx)
    expanded = []
    classes = residue_classes(ctx)
    for vec in vectors:
        row = []
        for entry in vec:
            row.extend(frobenius_decompose(entry).vector(classes))
        expanded.append(row)
    return _kpe_nullvector(expanded, e - 1, ctx)


def reduced_diagonal(F: PPoly) -> ReducedResult:
    """Exact reducedness when every leading power equals one p^e.

    The principal part sum c_i X_i^(p^e) has a nontrivial zero over K exactly
    when the c_i are K^(p^e)-linearly dependent; the dependence, when found,
    is converted into an explicit witness zero.
    """
    pp = principal_part(F)
    powers = pp.powers()
    if len(powers) != 1:
        raise PpolError(
            "diagonal criterion needs equal leading powers; use reduced_within"
        )
    (e,) = powers
    ctx = F.ctx
    entries = list(pp.leading)
    if e == 0:
        if len(entries) == 1:
            return ReducedResult(True, True)
        v0, _, c0 = entries[0]
        v1, _, c1 = entries[1]
        witness = [ctx.zero()] * F.arity
        witness[v0] = c1
        witness[v1] = -c0
        return ReducedResult(False, True, tuple(witness))
    coeffs = [[c] for _, _, c in entries]
    null = _kpe_nullvector(coeffs, e, ctx)
    if null is None:
        return ReducedResult(True, True)
    witness = [ctx.zero()] * F.arity
    for (v, _, _), x in zip(entries, null):
        witness[v] = x
    assert pp.to_ppoly(ctx, F.arity).evaluate(witness).is_zero()
    return ReducedResult(False, True, tuple(witness))


def reduced_within(F: PPoly, basis: MonomialBasis) -> ReducedResult:
    """Search the principal part for zeros with all coordinates in span(basis).

    The principal part is additive, so its zero set on span(basis)-tuples is
    an F_p-linear space computed exactly; NO_ZERO_IN_B is certified, not
    sampled.
    """
    pp = principal_part(F)
    ctx = F.ctx
    elems = basis.elements(ctx)
    unknowns = [(v, m) for v, _, _ in pp.leading for m in range(len(elems))]
    lead = pp.as_dict()
    values = [lead[v][1] * elems[m].frobenius_power(lead[v][0]) for v, m in unknowns]
    rows, _, _ = fp_expand(values, ctx)
    # constraint matrix: one row per monomial of the expansion
    matrix = [[rows[j][k] for j in range(len(values))] for k in range(len(rows[0]))] if rows else []
    if not matrix:
        return ReducedResult(True, False)
    kernel = nullspace_fp(matrix, ctx.p)
    for vec in kernel:
        if any(vec):
            witness = [ctx.zero()] * F.arity
            for (v, m), u in zip(unknowns, vec):
                if u:
                    witness[v] = witness[v] + elems[m].scale_int(u)
            if any(not w.is_zero() for w in witness):
                assert pp.to_ppoly(ctx, F.arity).evaluate(witness).is_zero()
                return ReducedResult(False, False, tuple(witness))
    return ReducedResult(True, False)


def universal_within(F: PPoly, basis_dom: MonomialBasis, basis_tgt: MonomialBasis) -> bool:
    """Truncated surjectivity evidence: span(basis_tgt) inside F(span(basis_dom)^n).

    This is evidence only (the honest decision is over all of K); the image of
    span(basis_dom)-tuples is an exact F_p-subspace of K, and membership of
    every target basis element is decided exactly.
    """
    ctx = F.ctx
    dom = basis_dom.elements(ctx)
    gens = []
    for i in range(F.arity):
        for b in dom:
            val = ctx.zero()
            for (v, e), c in F.terms.items():
                if v == i:
                    val = val + c * b.frobenius_power(e)
            gens.append(val)
    targets = basis_tgt.elements(ctx)
    rows, _, _ = fp_expand(gens + targets, ctx)
    gen_rows = rows[: len(gens)]
    base_rank = fp_span_dim(gen_rows, ctx.p) if gen_rows else 0
    for t_row in rows[len(gens):]:
        if fp_span_dim(gen_rows + [t_row], ctx.p) != base_rank:
            return False
    return True


# -- general polynomials in ambient variables ---------------------------


class GPoly:
    """Polynomial in the ambient variables with coefficients in K."""

    __slots__ = ("ctx", "arity", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, arity: int, terms: dict):
        self.ctx = ctx
        self.arity = arity
        self.terms = terms
        self._hash = None

    @staticmethod
    def zero(ctx: FieldCtx, arity: int) -> "GPoly":
        return GPoly(ctx, arity, {})

    @staticmethod
    def const(ctx: FieldCtx, arity: int, c: RatFunc) -> "GPoly":
        if c.is_zero():
            return GPoly.zero(ctx, arity)
        return GPoly(ctx, arity, {(0,) * arity: c})

    @staticmethod
    def variable(ctx: FieldCtx, arity: int, i: int) -> "GPoly":
        e = [0] * arity
        e[i] = 1
        return GPoly(ctx, arity, {tuple(e): ctx.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def __add__(self, other: "GPoly") -> "GPoly":
        if other.arity != self.arity:
            raise ShapeError("arity mismatch")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            s = c if cur is None else cur + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return GPoly(self.ctx, self.arity, terms)

    def __neg__(self) -> "GPoly":
        return GPoly(self.ctx, self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "GPoly") -> "GPoly":
        return self + (-other)

    def __mul__(self, other: "GPoly") -> "GPoly":
        terms: dict = {}
        bound = self.ctx.max_degree
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > bound:
                    raise TruncationOverflow(
                        f"ambient monomial degree {sum(e)} exceeds bound {bound}",
                        monomial=e,
                    )
                add = c1 * c2
                cur = terms.get(e)
                s = add if cur is None else cur + add
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return GPoly(self.ctx, self.arity, terms)

    def scale(self, c: RatFunc) -> "GPoly":
        if c.is_zero():
            return GPoly.zero(self.ctx, self.arity)
        return GPoly(self.ctx, self.arity, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "GPoly":
        out = GPoly.const(self.ctx, self.arity, self.ctx.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def subs(self, subs: Sequence["GPoly"]) -> "GPoly":
        if len(subs) != self.arity:
            raise ShapeError("substitution tuple has wrong length")
        arity2 = subs[0].arity if subs else 0
        out = GPoly.zero(self.ctx, arity2)
        cache: dict = {}

        def power(i, k):
            if k == 0:
                return GPoly.const(self.ctx, arity2, self.ctx.one())
            if (i, k) not in cache:
                cache[(i, k)] = power(i, k - 1) * subs[i]
            return cache[(i, k)]

        for e, c in self.terms.items():
            term = GPoly.const(self.ctx, arity2, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence[RatFunc]) -> RatFunc:
        out = self.ctx.zero()
        for e, c in self.terms.items():
            val = c
            for x, k in zip(point, e):
                if k:
                    val = val * x**k
            out = out + val
        return out

    def rename_into(self, arity: int, var_map: Sequence[int]) -> "GPoly":
        out: dict = {}
        for e, c in self.terms.items():
            e2 = [0] * arity
            for i, k in enumerate(e):
                e2[var_map[i]] += k
            out[tuple(e2)] = c
        return GPoly(self.ctx, arity, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self.terms.items())))
        return self._hash

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda x: (sum(x), x), reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            cs = str(c)
            if "+" in cs or "/" in cs:
                cs = f"({cs})"
            if not factors:
                parts.append(cs)
            elif c.is_one():
                parts.append("*".join(factors))
            else:
                parts.append(f"{cs}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"GPoly({self.format([f'X{i}' for i in range(self.arity)])})"


@dataclass(frozen=True)
class PolyMap:
    """Tuple of general polynomials: a map G_a^src_arity -> G_a^(len components)."""

    components: tuple  # of GPoly, all with the same arity

    def __post_init__(self):
        arities = {c.arity for c in self.components}
        if len(arities) > 1:
            raise ShapeError("polynomial map components must share one source arity")

    @property
    def src_arity(self) -> int:
        return self.components[0].arity

    @property
    def tgt_arity(self) -> int:
        return len(self.components)

    def evaluate(self, point: Sequence[RatFunc]):
        return tuple(c.evaluate(point) for c in self.components)

    def subs(self, subs: Sequence[GPoly]) -> "PolyMap":
        return PolyMap(tuple(c.subs(subs) for c in self.components))


def polymap_multiadditive_check(b: PolyMap, arg_partition: Sequence[Sequence[int]]) -> bool:
    """Verify additivity in each argument block as exact polynomial identities.

    For block B the check doubles the B-variables and compares
    b(..., x + x', ...) with b(..., x, ...) + b(..., x', ...) symbolically.
    """
    ctx = b.components[0].ctx
    n = b.src_arity
    seen = [i for block in arg_partition for i in block]
    if sorted(seen) != list(range(n)):
        raise ShapeError("argument partition must cover each source variable once")
    for block in arg_partition:
        block = set(block)
        wide = n + len(block)
        primed = {}
        k = n
        for i in sorted(block):
            primed[i] = k
            k += 1
        sum_subs = []
        primed_subs = []
        for i in range(n):
            xi = GPoly.variable(ctx, wide, i)
            if i in block:
                sum_subs.append(xi + GPoly.variable(ctx, wide, primed[i]))
                primed_subs.append(GPoly.variable(ctx, wide, primed[i]))
            else:
                sum_subs.append(xi)
                primed_subs.append(xi)
        id_subs = [GPoly.variable(ctx, wide, i) for i in range(n)]
        for comp in b.components:
            lhs = comp.subs(sum_subs)
            rhs = comp.subs(id_subs) + comp.subs(primed_subs)
            if lhs != rhs:
                return False
    return True


# -- named p-polynomials -------------------------------------------------


def surjection_F(alpha: RatFunc) -> PPoly:
    """-X_{p-1} + sum_i alpha^i X_i^p on p variables; its kernel is the
    one-step group attached to alpha."""
    ctx = alpha.ctx
    p = ctx.p
    terms = [((p - 1, 0), -ctx.one())]
    for i in range(p):
        terms.append(((i, 1), alpha**i))
    return PPoly.from_terms(ctx, p, terms)


def surjection_FW(lam: RatFunc, mu: RatFunc) -> PPoly:
    """-Z_{p-1,p-1} + sum_{i,j} lam^i mu^j Z_{i,j}^p on p^2 variables,
    index (i, j) flattened as i*p + j."""
    ctx = lam.ctx
    p = ctx.p
    terms = [((p * p - 1, 0), -ctx.one())]
    for i in range(p):
        for j in range(p):
            terms.append(((i * p + j, 1), lam**i * mu**j))
    return PPoly.from_terms(ctx, p * p, terms)
