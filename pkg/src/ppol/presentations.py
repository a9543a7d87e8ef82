"""Group presentations as kernels of p-polynomial relations, with rewriting.

A `Presentation` is an ambient coordinate space together with additive
relations, each carrying a designated leading term (variable v, power p^e,
invertible coefficient c).  Rewriting v^(p^e) := c^(-1) * (rest) is
confluent for the triangular systems built here (designated variables are
distinct and each rewrite strictly lowers the designated powers), so normal
forms exist and are unique; `reduce` is the canonical-form step that turns
"equal as maps on the group" into "equal p-polynomials".

The same rules drive division of general polynomials (`reduce_gpoly`), which
is what membership checks for non-additive maps such as bi-additive cocycles
use.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotInvertible, PpolError, ShapeError, TruncationOverflow
from .fields import FieldCtx, MonomialBasis, MPoly, RatFunc, fp_expand, frobenius_decompose
from .linalg import nullspace_fp
from .ppoly import GPoly, PPoly, surjection_F, surjection_FW

_REDUCE_CAP = 200_000


class HypothesisWarning(UserWarning):
    """A construction was run outside the hypotheses it was designed for."""


@dataclass(frozen=True)
class Designation:
    var: int
    e: int  # power index: the designated term is coeff * var^(p^e)
    coeff: RatFunc


@dataclass(frozen=True)
class Presentation:
    ctx: FieldCtx
    var_names: tuple
    relations: tuple  # of PPoly over the ambient variables
    designations: tuple  # of Designation, one per relation, distinct variables

    def __post_init__(self):
        arity = len(self.var_names)
        if len(set(self.var_names)) != arity:
            raise PpolError("ambient variable names must be distinct")
        for rel in self.relations:
            if rel.arity != arity:
                raise ShapeError("relation arity does not match the ambient space")
            if rel.is_zero():
                raise PpolError("zero relation in presentation")
        if len(self.designations) != len(self.relations):
            raise PpolError("need exactly one leading designation per relation")
        seen = set()
        for rel, d in zip(self.relations, self.designations):
            if d.var in seen:
                raise PpolError("designated variables must be distinct across relations")
            seen.add(d.var)
            if rel.coeff(d.var, d.e) != d.coeff or d.coeff.is_zero():
                raise PpolError("designation does not match its relation")
            for (v, e) in rel.terms:
                if v == d.var and e > d.e:
                    raise PpolError(
                        "designated variable occurs above its designated power"
                    )
        object.__setattr__(self, "_rules", self._build_rules())
        for rel in self.relations:
            if not self.reduce(rel).is_zero():
                raise PpolError("relation does not reduce to zero; system not triangular")

    # -- basic structure -------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.var_names)

    def var_index(self, name: str) -> int:
        return self.var_names.index(name)

    def designated_vars(self) -> set:
        return {d.var for d in self.designations}

    def _build_rules(self):
        rules = {}
        for rel, d in zip(self.relations, self.designations):
            rest = PPoly.from_terms(
                self.ctx,
                rel.arity,
                [(k, c) for k, c in rel.terms.items() if k != (d.var, d.e)],
            )
            rhs = rest.scale(-(d.coeff.inverse()))
            rules[d.var] = (d.e, rhs)
        return rules

    # -- rewriting --------------------------------------------------------

    def reduce(self, F: PPoly) -> PPoly:
        """Unique normal form of F modulo the relations.

        Designated variables end up only at powers strictly below their
        designation; the map is additive and idempotent.
        """
        if F.arity != self.arity:
            raise ShapeError("p-polynomial arity does not match the presentation")
        rules = self._rules
        work = dict(F.terms)
        steps = 0
        while True:
            key = None
            for (v, e) in work:
                rule = rules.get(v)
                if rule is not None and e >= rule[0]:
                    if key is None or (v, e) < key:
                        key = (v, e)
            if key is None:
                break
            steps += 1
            if steps > _REDUCE_CAP:
                raise TruncationOverflow("rewriting did not terminate within the cap")
            v, e = key
            c = work.pop(key)
            e0, rhs = rules[v]
            for (w, e2), d in rhs.frobenius(e - e0).terms.items():
                k2 = (w, e2)
                cur = work.get(k2)
                s = c * d if cur is None else cur + c * d
                if s.is_zero():
                    work.pop(k2, None)
                else:
                    work[k2] = s
        return PPoly(self.ctx, self.arity, work)

    def reduce_gpoly(self, G: GPoly) -> GPoly:
        """Normal form of a general polynomial modulo the relations.

        Division by the relations: the designated monomials v^(p^e) are
        pairwise coprime, so the relation set is a Groebner basis and the
        remainder is canonical.
        """
        if G.arity != self.arity:
            raise ShapeError("polynomial arity does not match the presentation")
        p = self.ctx.p
        rules = {}
        for d in self.designations:
            e0, rhs = self._rules[d.var]
            rules[d.var] = (p**e0, rhs.to_gpoly())
        work = G
        steps = 0
        while True:
            target = None
            for exp in sorted(work.terms):
                for v, (q, _) in rules.items():
                    if exp[v] >= q:
                        target = (exp, v)
                        break
                if target:
                    break
            if target is None:
                return work
            steps += 1
            if steps > _REDUCE_CAP:
                raise TruncationOverflow("polynomial division did not terminate")
            exp, v = target
            q, rhs_g = rules[v]
            c = work.terms[exp]
            rest_exp = tuple(x - q if i == v else x for i, x in enumerate(exp))
            mono = GPoly(self.ctx, self.arity, {rest_exp: c})
            work = work - GPoly(self.ctx, self.arity, {exp: c}) + mono * rhs_g

    # -- renaming / restriction -------------------------------------------

    def rename(self, new_names: Sequence[str]) -> "Presentation":
        if len(new_names) != self.arity:
            raise ShapeError("renaming must preserve the number of variables")
        return Presentation(self.ctx, tuple(new_names), self.relations, self.designations)

    def restrict_to_support(self):
        """Drop ambient variables not occurring in any relation.

        Returns (presentation on the support, names of dropped variables);
        the dropped variables are free additive factors.
        """
        used = set()
        for rel in self.relations:
            used.update(rel.support_vars())
        keep = [i for i in range(self.arity) if i in used]
        dropped = [self.var_names[i] for i in range(self.arity) if i not in used]
        index = {old: new for new, old in enumerate(keep)}
        rels = tuple(
            PPoly(self.ctx, len(keep), {(index[v], e): c for (v, e), c in r.terms.items()})
            for r in self.relations
        )
        desigs = tuple(
            Designation(index[d.var], d.e, d.coeff) for d in self.designations
        )
        sub = Presentation(self.ctx, tuple(self.var_names[i] for i in keep), rels, desigs)
        return sub, tuple(dropped)

    def map_coefficients(self, new_ctx: FieldCtx, values: dict) -> "Presentation":
        """Reinterpret over new_ctx, sending each old field variable to values[name]."""

        def conv(f: RatFunc) -> RatFunc:
            out = new_ctx.zero()
            for e, c in f.num.terms.items():
                term = new_ctx.const(c)
                for name, k in zip(self.ctx.vars, e):
                    if k:
                        term = term * values[name] ** k
                out = out + term
            den = new_ctx.zero()
            for e, c in f.den.terms.items():
                term = new_ctx.const(c)
                for name, k in zip(self.ctx.vars, e):
                    if k:
                        term = term * values[name] ** k
                den = den + term
            return out / den

        rels = tuple(
            PPoly(new_ctx, r.arity, {k: conv(c) for k, c in r.terms.items()})
            for r in self.relations
        )
        desigs = tuple(Designation(d.var, d.e, conv(d.coeff)) for d in self.designations)
        return Presentation(new_ctx, self.var_names, rels, desigs)

    def __repr__(self):
        rels = "; ".join(r.format(self.var_names) + " = 0" for r in self.relations)
        return f"Presentation[{', '.join(self.var_names)} | {rels}]"


def auto_designate(ctx: FieldCtx, arity: int, relations: Sequence[PPoly]):
    """Choose a leading designation per relation.

    Preference order per relation: a variable occurring only at power 0
    (plain elimination), then a variable with a power-0 occurrence designated
    at its highest power, then the lowest-index unused variable at its
    highest power.
    """
    used: set = set()
    out = []
    for rel in relations:
        powers: dict = {}
        for (v, e) in rel.terms:
            powers.setdefault(v, set()).add(e)
        choice = None
        for v in sorted(powers):
            if v not in used and powers[v] == {0}:
                choice = Designation(v, 0, rel.coeff(v, 0))
                break
        if choice is None:
            for v in sorted(powers):
                if v not in used and 0 in powers[v]:
                    e = max(powers[v])
                    choice = Designation(v, e, rel.coeff(v, e))
                    break
        if choice is None:
            for v in sorted(powers):
                if v not in used:
                    e = max(powers[v])
                    choice = Designation(v, e, rel.coeff(v, e))
                    break
        if choice is None:
            raise PpolError("no designatable variable left for a relation")
        used.add(choice.var)
        out.append(choice)
    return tuple(out)


def presentation(ctx: FieldCtx, var_names: Sequence[str], relations: Sequence[PPoly]) -> Presentation:
    """Build a presentation with automatically chosen designations."""
    return Presentation(
        ctx, tuple(var_names), tuple(relations), auto_designate(ctx, len(var_names), relations)
    )


def free_presentation(ctx: FieldCtx, var_names: Sequence[str]) -> Presentation:
    """The additive group G_a^n with no relations."""
    return Presentation(ctx, tuple(var_names), (), ())


def product_presentation(parts: Sequence[Presentation]) -> Presentation:
    """Direct product; variable names of the factors must stay distinct."""
    ctx = parts[0].ctx
    names: list = []
    rels: list = []
    desigs: list = []
    offset = 0
    total = sum(p.arity for p in parts)
    for part in parts:
        if part.ctx != ctx:
            raise ShapeError("product factors must share a field context")
        var_map = [offset + i for i in range(part.arity)]
        names.extend(part.var_names)
        for r, d in zip(part.relations, part.designations):
            rels.append(r.rename_into(total, var_map))
            desigs.append(Designation(var_map[d.var], d.e, d.coeff))
        offset += part.arity
    return Presentation(ctx, tuple(names), tuple(rels), tuple(desigs))


# -- the group family V_{n,alpha} and the other named groups ---------------


def vn_indices(p: int, n: int) -> list:
    """The subscript set {0 <= j < p^n : j != -1 mod p}."""
    return [j for j in range(p**n) if j % p != p - 1]


def make_Vn_alpha(n: int, alpha: RatFunc, letter: str = "S") -> Presentation:
    """The group -S + alpha^(p-1) S^p + sum_j alpha^j S_j^(p^n) = 0.

    Ambient dimension is p^n - p^(n-1) + 1.  When alpha is a p-th power the
    relation is still constructible but the group degenerates; a warning is
    emitted because every statement downstream assumes alpha outside K^p.
    """
    if n < 1:
        raise PpolError("level n must be at least 1")
    ctx = alpha.ctx
    p = ctx.p
    decomp = frobenius_decompose(alpha)
    if alpha.is_zero() or all(cls == (0,) * ctx.r for cls, _ in decomp.parts):
        warnings.warn(
            "alpha is a p-th power; the one-step group hypotheses fail",
            HypothesisWarning,
            stacklevel=2,
        )
    idx = vn_indices(p, n)
    names = [letter] + [f"{letter}{j}" for j in idx]
    arity = len(names)
    terms = [((0, 0), -ctx.one()), ((0, 1), alpha ** (p - 1))]
    for pos, j in enumerate(idx):
        terms.append(((1 + pos, n), alpha**j))
    rel = PPoly.from_terms(ctx, arity, terms)
    desig = (Designation(0, 1, alpha ** (p - 1)),)
    return Presentation(ctx, tuple(names), (rel,), desig)


def make_named_group(name: str, ctx: FieldCtx, **params) -> Presentation:
    """Constructors for the named groups, bit-exact to their display equations.

    Names: Vn (n, alpha), V1_kerF (alpha), W_diag (alpha), W_biadd (lam, mu),
    U_ext (lam, mu), U_prime_char2 (lam, mu).
    """
    p = ctx.p
    if name == "Vn":
        return make_Vn_alpha(params["n"], params["alpha"], params.get("letter", "S"))
    if name == "V1_kerF":
        alpha = params["alpha"]
        letter = params.get("letter", "X")
        F = surjection_F(alpha)
        names = tuple(f"{letter}{i}" for i in range(p))
        return Presentation(
            ctx, names, (F,), (Designation(p - 1, 1, alpha ** (p - 1)),)
        )
    if name == "W_diag":
        alpha = params["alpha"]
        letter = params.get("letter", "X")
        terms = [((i, 1), alpha**i) for i in range(p)]
        rel = PPoly.from_terms(ctx, p, terms)
        names = tuple(f"{letter}{i}" for i in range(p))
        return Presentation(ctx, names, (rel,), (Designation(0, 1, ctx.one()),))
    if name == "W_biadd":
        lam, mu = params["lam"], params["mu"]
        F = surjection_FW(lam, mu)
        names = tuple(f"Z{i}{j}" for i in range(p) for j in range(p))
        return Presentation(
            ctx,
            names,
            (F,),
            (Designation(p * p - 1, 1, lam ** (p - 1) * mu ** (p - 1)),),
        )
    if name == "U_ext":
        lam, mu = params["lam"], params["mu"]
        if p == 2:
            warnings.warn(
                "at p = 2 this group is a smooth quadric and the descent "
                "argument does not apply; see the char-2 variant",
                HypothesisWarning,
                stacklevel=2,
            )
        names = ("Y",) + tuple(f"X{i}" for i in range(p))
        arity = p + 1
        terms = [((p, 0), -ctx.one()), ((0, 1), mu)]
        for i in range(p):
            terms.append(((1 + i, 1), lam**i))
        rel = PPoly.from_terms(ctx, arity, terms)
        return Presentation(ctx, names, (rel,), (Designation(p, 1, lam ** (p - 1)),))
    if name == "U_prime_char2":
        if p != 2:
            raise PpolError("the char-2 variant group is defined only at p = 2")
        lam, mu = params["lam"], params["mu"]
        names = ("Y", "X0", "X1")
        terms = [((0, 2), mu), ((2, 0), -ctx.one()), ((1, 1), ctx.one()), ((2, 1), lam)]
        rel = PPoly.from_terms(ctx, 3, terms)
        return Presentation(ctx, names, (rel,), (Designation(2, 1, lam),))
    raise PpolError(f"unknown group name {name!r}")


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class HomTuple:
    """A candidate homomorphism: one p-polynomial in src variables per tgt variable."""

    src: Presentation
    tgt: Presentation
    coords: tuple  # of PPoly with arity src.arity, length tgt.arity

    def __post_init__(self):
        if len(self.coords) != self.tgt.arity:
            raise ShapeError("coordinate count must match the target ambient")
        for c in self.coords:
            if c.arity != self.src.arity:
                raise ShapeError("coordinate arity must match the source ambient")

    def apply(self, point: Sequence[RatFunc]):
        return tuple(c.evaluate(point) for c in self.coords)


def identity_hom(P: Presentation) -> HomTuple:
    return HomTuple(P, P, tuple(PPoly.variable(P.ctx, P.arity, i) for i in range(P.arity)))


def zero_hom(src: Presentation, tgt: Presentation) -> HomTuple:
    return HomTuple(src, tgt, tuple(PPoly.zero(src.ctx, src.arity) for _ in range(tgt.arity)))


def hom_verify(t: HomTuple) -> Optional[PPoly]:
    """None when every target relation pulls back to normal form 0, else the
    first nonzero residue."""
    for rel in t.tgt.relations:
        residue = t.src.reduce(rel.compose(t.coords))
        if not residue.is_zero():
            return residue
    return None


def hom_compose(t1: HomTuple, t2: HomTuple) -> HomTuple:
    """The composite t2 o t1, with coordinates reduced to normal form."""
    if t1.tgt is not t2.src and t1.tgt != t2.src:
        raise ShapeError("middle presentations of a composition must agree")
    coords = tuple(t1.src.reduce(c.compose(t1.coords)) for c in t2.coords)
    return HomTuple(t1.src, t2.tgt, coords)


def make_fm(alpha: RatFunc, m: int, letter: str = "S") -> HomTuple:
    """The level-lowering surjection from the (m+1)-step group to the m-step
    group: Z := S and Z_j := sum_i alpha^i S_{j+p^m i}^p."""
    ctx = alpha.ctx
    p = ctx.p
    src = make_Vn_alpha(m + 1, alpha, letter)
    tgt = make_Vn_alpha(m, alpha, letter)
    src_pos = {j: 1 + k for k, j in enumerate(vn_indices(p, m + 1))}
    coords = [PPoly.variable(ctx, src.arity, 0)]
    for j in vn_indices(p, m):
        terms = []
        for i in range(p):
            terms.append(((src_pos[j + p**m * i], 1), alpha**i))
        coords.append(PPoly.from_terms(ctx, src.arity, terms))
    return HomTuple(src, tgt, tuple(coords))


# -- exact points within a truncation ---------------------------------------


@dataclass(frozen=True)
class PointSpace:
    """F_p-basis of the solutions of the relations with coordinates in a span."""

    basis_points: tuple  # of coordinate tuples (RatFunc)
    truncation: MonomialBasis

    @property
    def dim(self) -> int:
        return len(self.basis_points)


def points(P: Presentation, basis: MonomialBasis) -> PointSpace:
    """All solutions with every coordinate in span(basis), solved exactly.

    Relations are additive and F_p-homogeneous, so the solution set within
    the span is an F_p-vector space; its basis is returned and every basis
    point is checked against the relations exactly.
    """
    ctx = P.ctx
    elems = basis.elements(ctx)
    unknowns = [(i, m) for i in range(P.arity) for m in range(len(elems))]
    rows: list = []
    for rel in P.relations:
        values = []
        for (i, m) in unknowns:
            val = ctx.zero()
            for (v, e), c in rel.terms.items():
                if v == i:
                    val = val + c * elems[m].frobenius_power(e)
            values.append(val)
        expansion, _, _ = fp_expand(values, ctx)
        if expansion:
            width = len(expansion[0])
            for k in range(width):
                rows.append([expansion[j][k] for j in range(len(unknowns))])
    if rows:
        kernel = nullspace_fp(rows, ctx.p)
    else:
        kernel = tuple(
            tuple(1 if j == i else 0 for j in range(len(unknowns)))
            for i in range(len(unknowns))
        )
    pts = []
    for vec in kernel:
        coords = [ctx.zero()] * P.arity
        for (i, m), u in zip(unknowns, vec):
            if u:
                coords[i] = coords[i] + elems[m].scale_int(u)
        for rel in P.relations:
            if not rel.evaluate(coords).is_zero():
                raise PpolError("internal error: point basis fails a relation")
        pts.append(tuple(coords))
    return PointSpace(tuple(pts), basis)


# -- change of variables and inseparable base change -------------------------


def invert_substitution(ctx: FieldCtx, subs: Sequence[PPoly]) -> tuple:
    """Inverse of a triangular additive substitution X_i := subs_i(new vars).

    Requires each subs_i to contain the diagonal term X_i at power 0 with an
    invertible coefficient; iterates the fixed-point form and then checks the
    two-sided identity exactly.
    """
    arity = len(subs)
    diag = []
    off = []
    for i, s in enumerate(subs):
        d = s.coeff(i, 0)
        if d.is_zero():
            raise NotInvertible(f"substitution lacks a diagonal term for variable {i}")
        diag.append(d)
        off.append(s - PPoly.term(ctx, arity, i, 0, d))
    identity = [PPoly.variable(ctx, arity, i) for i in range(arity)]
    guess = [identity[i].scale(diag[i].inverse()) for i in range(arity)]
    for _ in range(arity + 2):
        nxt = [
            (identity[i] - off[i].compose(guess)).scale(diag[i].inverse())
            for i in range(arity)
        ]
        if nxt == guess:
            break
        guess = nxt
    for i in range(arity):
        if subs[i].compose(guess) != identity[i] or guess[i].compose(subs) != identity[i]:
            raise NotInvertible("substitution is not invertible as a change of variables")
    return tuple(guess)


def change_of_variables(
    P: Presentation,
    subs: Sequence[PPoly],
    scalar: Optional[RatFunc] = None,
    new_names: Optional[Sequence[str]] = None,
):
    """Apply X_i := subs_i(new vars) to all relations, then multiply by scalar.

    Returns (new presentation, inverse substitution).  The inverse is
    computed and checked, so non-invertible substitutions are rejected.
    """
    ctx = P.ctx
    if len(subs) != P.arity:
        raise ShapeError("substitution tuple must cover every ambient variable")
    inverse = invert_substitution(ctx, subs)
    scale = scalar if scalar is not None else ctx.one()
    if scale.is_zero():
        raise PpolError("scalar must be nonzero")
    rels = []
    for rel in P.relations:
        new_rel = rel.compose(list(subs)).scale(scale)
        if new_rel.is_zero():
            raise PpolError("a relation became trivial under the substitution")
        rels.append(new_rel)
    names = tuple(new_names) if new_names is not None else P.var_names
    out = Presentation(ctx, names, tuple(rels), auto_designate(ctx, P.arity, rels))
    return out, inverse


def base_extend_inseparable(
    P: Presentation, alpha_name: str, n: int, new_symbol: str = "s"
) -> Presentation:
    """Model the purely inseparable extension K(alpha^(1/p^n)).

    The field variable alpha is replaced by new_symbol^(p^n), so alpha^(1/p^n)
    becomes the honest element new_symbol of the new rational function field.
    n = 0 renames only.
    """
    ctx = P.ctx
    if alpha_name not in ctx.vars:
        raise PpolError(f"{alpha_name!r} is not a field indeterminate")
    new_vars = tuple(new_symbol if v == alpha_name else v for v in ctx.vars)
    new_ctx = FieldCtx(ctx.p, new_vars, ctx.max_degree)
    values = {}
    for v in ctx.vars:
        if v == alpha_name:
            values[v] = new_ctx.gen(new_symbol) ** (ctx.p**n)
        else:
            values[v] = new_ctx.gen(v)
    return P.map_coefficients(new_ctx, values)


# -- kernels ------------------------------------------------------------------


def kernel_presentation(t: HomTuple) -> Presentation:
    """Presentation of the kernel: source relations plus coordinates set to 0.

    Variables pinned by a power-0-only relation are eliminated by
    substitution, and relations that reduce to zero modulo the others are
    dropped, leaving the minimal triangular relation set.
    """
    ctx = t.src.ctx
    arity = t.src.arity
    names = list(t.src.var_names)
    rels = [r for r in t.src.relations] + [c for c in t.coords if not c.is_zero()]

    # plain elimination of variables that occur only at power 0 in some relation
    changed = True
    while changed:
        changed = False
        for k, rel in enumerate(rels):
            pin = None
            for (v, e) in rel.terms:
                powers = {e2 for (v2, e2) in rel.terms if v2 == v}
                if e == 0 and powers == {0}:
                    pin = v
                    break
            if pin is None:
                continue
            c = rel.coeff(pin, 0)
            rest = rel - PPoly.term(ctx, rel.arity, pin, 0, c)
            value = rest.scale(-(c.inverse()))
            subs = [
                value if i == pin else PPoly.variable(ctx, rel.arity, i)
                for i in range(rel.arity)
            ]
            new_rels = []
            for j, other in enumerate(rels):
                if j == k:
                    continue
                composed = other.compose(subs)
                if not composed.is_zero():
                    new_rels.append(composed)
            # drop the pinned variable from the ambient
            keep = [i for i in range(len(names)) if i != pin]
            index = {old: new for new, old in enumerate(keep)}
            rels = [
                PPoly(ctx, len(keep), {(index[v], e): cc for (v, e), cc in r.terms.items()})
                for r in new_rels
            ]
            names = [names[i] for i in keep]
            changed = True
            break

    # deduplicate and drop relations implied by the rest
    uniq: list = []
    for r in rels:
        if r not in uniq:
            uniq.append(r)
    rels = uniq
    k = 0
    while k < len(rels):
        others = rels[:k] + rels[k + 1:]
        if others:
            try:
                probe = Presentation(
                    ctx,
                    tuple(names),
                    tuple(others),
                    auto_designate(ctx, len(names), others),
                )
                if probe.reduce(rels[k]).is_zero():
                    rels = others
                    continue
            except PpolError:
                pass
        k += 1
    return Presentation(ctx, tuple(names), tuple(rels), auto_designate(ctx, len(names), rels))


def matches_diagonal_copies(kernel: Presentation, alpha: RatFunc) -> bool:
    """Check that the kernel relations are disjoint renamed copies of the
    diagonal relation sum_i alpha^i X_i^p."""
    p = kernel.ctx.p
    seen: set = set()
    for rel in kernel.relations:
        per_var: dict = {}
        for (v, e), c in rel.terms.items():
            if e != 1 or v in seen:
                return False
            per_var[v] = c
        if len(per_var) != p:
            return False
        seen.update(per_var)
        ordered = sorted(per_var)
        scale = per_var[ordered[0]]  # the i = 0 slot fixes the overall scalar
        for i, v in enumerate(ordered):
            if per_var[v] != scale * alpha**i:
                return False
    return True
