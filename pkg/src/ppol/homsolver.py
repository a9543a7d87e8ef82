"""F_p-linear solving for homomorphism spaces between presentations.

The method is coefficient comparison: substitute a p-polynomial tuple with
unknown coefficients into every target relation, reduce modulo the source
relations, and require each remaining (variable, power) coefficient to
vanish.  Because unknown coefficients range over F_p-spans of monomials and
(sum u_m m)^(p^e) = sum u_m m^(p^e) for u_m in F_p, every equation is
F_p-linear in the unknowns after expanding over a cleared common denominator.
The computed space is complete and exact *within the ansatz*: it equals the
set of all homomorphisms whose coefficients lie in the declared span with
powers up to the declared bound.

Symbolic coefficients travel as linear forms (unknown index -> K
coefficient); reduction multiplies them by K scalars and Frobenius twists
only the scalars, so linearity is preserved throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PpolError, ShapeError
from .fields import FieldCtx, MonomialBasis, MPoly, RatFunc, fp_expand
from .linalg import AffineSolutionSpace, RowCollector
from .ppoly import PPoly
from .presentations import HomTuple, Presentation, hom_verify


@dataclass(frozen=True)
class Ansatz:
    """Shape of the unknown maps: powers up to max_power, coefficients in
    span(coeff_basis)/denominator."""

    max_power: int
    coeff_basis: MonomialBasis
    denominator: Optional[MPoly] = None

    def __post_init__(self):
        if self.max_power < 0:
            raise PpolError("max_power must be nonnegative")

    def coeff_elements(self, ctx: FieldCtx):
        basis = self.coeff_basis
        if self.denominator is not None:
            basis = MonomialBasis(basis.monomials, basis.description, self.denominator)
        return basis.elements(ctx)

    def enlarged(self, extra_degree: int, ctx: FieldCtx) -> "Ansatz":
        """Same shape with every monomial of total degree up to (old max + extra)."""
        from .fields import total_degree_basis

        old = max(sum(e) for e in self.coeff_basis.monomials)
        bigger = total_degree_basis(ctx, old + extra_degree)
        return Ansatz(self.max_power, bigger, self.denominator)


# -- symbolic coefficients: F_p-linear forms with K coefficients -----------


def _lin_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        s = v if cur is None else cur + v
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


def _lin_scale(a: dict, c: RatFunc) -> dict:
    if c.is_zero():
        return {}
    return {k: v * c for k, v in a.items()}


def _lin_frob(a: dict, e: int) -> dict:
    # unknowns take values in F_p, so (sum u_k kappa_k)^(p^e) = sum u_k kappa_k^(p^e)
    if e == 0:
        return a
    return {k: v.frobenius_power(e) for k, v in a.items()}


class _SymPPoly:
    """p-polynomial whose coefficients are linear forms in the unknowns."""

    __slots__ = ("ctx", "arity", "terms")

    def __init__(self, ctx, arity, terms=None):
        self.ctx = ctx
        self.arity = arity
        self.terms = terms if terms is not None else {}

    def add_term(self, var, e, linform):
        if not linform:
            return
        key = (var, e)
        cur = self.terms.get(key)
        s = linform if cur is None else _lin_add(cur, linform)
        if s:
            self.terms[key] = s
        else:
            self.terms.pop(key, None)

    def accumulate(self, other: "_SymPPoly", scalar: RatFunc, e_shift: int):
        """self += scalar * Frob^e_shift(other)."""
        for (v, e), lf in other.terms.items():
            self.add_term(v, e + e_shift, _lin_scale(_lin_frob(lf, e_shift), scalar))

    def reduce(self, P: Presentation) -> "_SymPPoly":
        rules = P._rules
        work = dict(self.terms)
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
            if steps > 200_000:
                raise PpolError("symbolic rewriting did not terminate")
            v, e = key
            lf = work.pop(key)
            e0, rhs = rules[v]
            for (w, e2), d in rhs.frobenius(e - e0).terms.items():
                k2 = (w, e2)
                add = _lin_scale(lf, d)
                cur = work.get(k2)
                s = add if cur is None else _lin_add(cur, add)
                if s:
                    work[k2] = s
                else:
                    work.pop(k2, None)
        out = _SymPPoly(self.ctx, self.arity)
        out.terms = work
        return out


# -- unknown bookkeeping ----------------------------------------------------


@dataclass(frozen=True)
class UnknownKey:
    """(coordinate, source variable, power index, basis monomial index).

    `coord` is the target variable name for homomorphism unknowns and an
    "h<i>" label for lift unknowns.
    """

    coord: str
    src_var: int
    e: int
    mono: int


@dataclass(frozen=True)
class HomSpace:
    """Solutions of the coefficient-comparison system, with decoding data."""

    src: Presentation
    tgt: Presentation
    ansatz: Ansatz
    unknowns: tuple  # of UnknownKey, in canonical order
    space: AffineSolutionSpace
    lift_arity: int = 0  # number of extra G_a coordinates solved jointly

    @property
    def dim(self) -> int:
        return self.space.dim

    def _coords_from(self, vec, labels, arity) -> tuple:
        ctx = self.src.ctx
        elems = self.ansatz.coeff_elements(ctx)
        coords = {label: PPoly.zero(ctx, arity) for label in labels}
        for key, u in zip(self.unknowns, vec):
            if u and key.coord in coords:
                term = PPoly.term(
                    ctx, arity, key.src_var, key.e, elems[key.mono].scale_int(u)
                )
                coords[key.coord] = coords[key.coord] + term
        return tuple(coords[label] for label in labels)

    def decode(self, vec) -> HomTuple:
        coords = self._coords_from(vec, self.tgt.var_names, self.src.arity)
        return HomTuple(self.src, self.tgt, coords)

    def decode_lift(self, vec) -> tuple:
        labels = [f"h{i}" for i in range(self.lift_arity)]
        return self._coords_from(vec, labels, self.src.arity)

    def sample_vectors(self, limit: int = 64):
        """Particular plus the homogeneous basis (enough to test functionals)."""
        out = []
        if self.space.particular is not None:
            out.append(self.space.particular)
            out.extend(self.space.basis[:limit])
        return out


def _slot_powers(src: Presentation, ansatz: Ansatz):
    """Allowed power indices per source variable: normal-form slots only.

    A designated variable may appear only below its designated power, so the
    unknown tuple parameterizes normal forms; this makes decoding injective
    and keeps coefficient functionals honest (a non-normal representative of
    the zero map would otherwise carry spurious nonzero raw coefficients).
    """
    caps = {d.var: d.e for d in src.designations}
    out = {}
    for v in range(src.arity):
        cap = caps.get(v)
        if cap is None:
            out[v] = range(ansatz.max_power + 1)
        else:
            out[v] = range(min(ansatz.max_power + 1, cap))
    return out


def _hom_unknowns(tgt_labels, src: Presentation, ansatz, nmono):
    slots = _slot_powers(src, ansatz)
    keys = []
    for label in tgt_labels:
        for v in range(src.arity):
            for e in slots[v]:
                for m in range(nmono):
                    keys.append(UnknownKey(label, v, e, m))
    return keys


def _symbolic_coords(ctx, labels, src, ansatz, elems, index_of):
    slots = _slot_powers(src, ansatz)
    coords = {}
    for label in labels:
        sp = _SymPPoly(ctx, src.arity)
        for v in range(src.arity):
            for e in slots[v]:
                for m, elem in enumerate(elems):
                    sp.add_term(v, e, {index_of[(label, v, e, m)]: elem})
        coords[label] = sp
    return coords


def _pullback(rel: PPoly, coords: dict, labels, ctx, src_arity) -> _SymPPoly:
    out = _SymPPoly(ctx, src_arity)
    for (w, e), c in rel.terms.items():
        out.accumulate(coords[labels[w]], c, e)
    return out


def _equations_to_rows(linforms, nunknowns, ctx, collector: RowCollector):
    """Expand K-valued linear forms over a cleared common denominator."""
    for lf in linforms:
        if not lf:
            continue
        keys = sorted(lf, key=lambda k: (isinstance(k, str), k))
        values = [lf[k] for k in keys]
        rows, _, _ = fp_expand(values, ctx)
        width = len(rows[0]) if rows else 0
        for col in range(width):
            row = [0] * nunknowns
            rhs = 0
            for k, r in zip(keys, rows):
                if k == "const":
                    rhs = (-r[col]) % ctx.p
                else:
                    row[k] = r[col]
            if any(row) or rhs:
                collector.add(row, rhs)


def hom_space(src: Presentation, tgt: Presentation, ansatz: Ansatz) -> HomSpace:
    """The affine F_p-space of homomorphisms src -> tgt within the ansatz."""
    if src.ctx != tgt.ctx:
        raise ShapeError("source and target must share a field context")
    ctx = src.ctx
    elems = ansatz.coeff_elements(ctx)
    labels = list(tgt.var_names)
    keys = _hom_unknowns(labels, src, ansatz, len(elems))
    index_of = {(k.coord, k.src_var, k.e, k.mono): i for i, k in enumerate(keys)}
    coords = _symbolic_coords(ctx, labels, src, ansatz, elems, index_of)
    collector = RowCollector(len(keys), ctx.p)
    for rel in tgt.relations:
        residue = _pullback(rel, coords, labels, ctx, src.arity).reduce(src)
        _equations_to_rows(residue.terms.values(), len(keys), ctx, collector)
    space = collector.solve()
    return HomSpace(src, tgt, ansatz, tuple(keys), space)


def lift_space(
    src: Presentation,
    tgt: Presentation,
    f: PPoly,
    F: PPoly,
    ansatz: Ansatz,
    restrict_terms: Optional[Sequence[tuple]] = None,
) -> HomSpace:
    """Joint space of (g, h): g in Hom(src, tgt) and f o g = F(h).

    f is a p-polynomial functional on the target's ambient space; F has its
    own arity M and h is an unknown tuple of M maps src -> G_a.  When
    restrict_terms is given, only the lift-identity coefficients at those
    (source variable, power) slots are imposed: that is the single
    coefficient-comparison step the nonexistence arguments hinge on, exposed
    separately as a control.
    """
    if f.arity != tgt.arity:
        raise ShapeError("the functional must live on the target ambient space")
    ctx = src.ctx
    elems = ansatz.coeff_elements(ctx)
    g_labels = list(tgt.var_names)
    h_labels = [f"h{i}" for i in range(F.arity)]
    keys = _hom_unknowns(g_labels + h_labels, src, ansatz, len(elems))
    index_of = {(k.coord, k.src_var, k.e, k.mono): i for i, k in enumerate(keys)}
    coords = _symbolic_coords(
        ctx, g_labels + h_labels, src, ansatz, elems, index_of
    )
    collector = RowCollector(len(keys), ctx.p)
    for rel in tgt.relations:
        residue = _pullback(rel, coords, g_labels, ctx, src.arity).reduce(src)
        _equations_to_rows(residue.terms.values(), len(keys), ctx, collector)
    lift = _pullback(f, coords, g_labels, ctx, src.arity)
    F_of_h = _pullback(F, coords, h_labels, ctx, src.arity)
    for (v, e), lf in F_of_h.terms.items():
        lift.add_term(v, e, _lin_scale(lf, -ctx.one()))
    lift = lift.reduce(src)
    if restrict_terms is not None:
        wanted = set(restrict_terms)
        forms = [lf for key, lf in lift.terms.items() if key in wanted]
    else:
        forms = list(lift.terms.values())
    _equations_to_rows(forms, len(keys), ctx, collector)
    space = collector.solve()
    return HomSpace(src, tgt, ansatz, tuple(keys), space, lift_arity=F.arity)


# -- functionals and forced-zero certificates --------------------------------


@dataclass(frozen=True)
class Functional:
    """An F_p-linear functional block on the unknown vector: the listed
    coordinates, e.g. every unknown feeding 'the coefficient of S in Y'."""

    name: str
    indices: tuple

    @staticmethod
    def coefficient(space: HomSpace, coord: str, src_var: int, e: Optional[int] = 0) -> "Functional":
        """All unknowns contributing to the coefficient of src_var^(p^e) in coord;
        e=None selects every power."""
        idx = tuple(
            i
            for i, k in enumerate(space.unknowns)
            if k.coord == coord and k.src_var == src_var and (e is None or k.e == e)
        )
        return Functional(f"{coord}[{src_var}^p^{e}]", idx)

    @staticmethod
    def coordinate(space: HomSpace, coord: str) -> "Functional":
        """Every unknown of one target coordinate (the whole-coordinate functional)."""
        idx = tuple(i for i, k in enumerate(space.unknowns) if k.coord == coord)
        return Functional(f"{coord}[*]", idx)


@dataclass(frozen=True)
class ForcedZeroReport:
    forced: bool
    functional: Functional
    witness: Optional[tuple] = None  # a solution vector with nonzero functional

    @property
    def status(self) -> str:
        return "PROVED_ZERO_WITHIN_ANSATZ" if self.forced else "WITNESS_FOUND"


def functional_forced_zero(space: HomSpace, functional: Functional) -> ForcedZeroReport:
    """Certify that the functional vanishes on the whole solution space, or
    return a decoded witness vector where it does not."""
    sol = space.space
    if sol.particular is None:
        return ForcedZeroReport(True, functional)
    if any(sol.particular[i] for i in functional.indices):
        return ForcedZeroReport(False, functional, tuple(sol.particular))
    for bv in sol.basis:
        if any(bv[i] for i in functional.indices):
            witness = tuple(
                (p + b) % space.src.ctx.p for p, b in zip(sol.particular, bv)
            )
            return ForcedZeroReport(False, functional, witness)
    return ForcedZeroReport(True, functional)


# -- structural report for maps out of V_{n,alpha} ---------------------------


@dataclass(frozen=True)
class StructureReport:
    linear_in_lead: bool  # no coordinate touches S at powers >= 1
    tail_homogeneous: bool  # every S_j occurrence sits exactly at power p^(n-1)
    designated_is_scalar_lead: bool  # designated coordinate equals a*S, a != 0

    def all_ok(self) -> bool:
        return self.linear_in_lead and self.tail_homogeneous and self.designated_is_scalar_lead


def structure_check(t: HomTuple, n: int) -> StructureReport:
    """Shape facts for maps out of the n-step group: linearity in the lead
    variable, p^(n-1)-homogeneity in the tail, and a scalar lead coordinate."""
    lead = 0  # the source lead variable S is index 0 by construction
    linear = True
    homogeneous = True
    for c in t.coords:
        for (v, e) in c.terms:
            if v == lead and e >= 1:
                linear = False
            if v != lead and e != n - 1:
                homogeneous = False
    d = t.tgt.designations[0] if t.tgt.designations else None
    scalar_lead = False
    if d is not None:
        coord = t.coords[d.var]
        keys = set(coord.terms)
        scalar_lead = keys == {(lead, 0)} and not coord.coeff(lead, 0).is_zero()
    return StructureReport(linear, homogeneous, scalar_lead)


# -- brute-force oracle (used by tests and the acceptance gate) ---------------


def enumerate_hom_space(src: Presentation, tgt: Presentation, ansatz: Ansatz):
    """All coefficient assignments whose decode passes hom_verify, by exhaustion.

    Deliberately independent of the linear-algebra path: candidates are
    materialized as plain homomorphism tuples and checked by substitution and
    reduction.  Exponential in the unknown count; only for small instances.
    """
    ctx = src.ctx
    elems = ansatz.coeff_elements(ctx)
    keys = _hom_unknowns(list(tgt.var_names), src, ansatz, len(elems))
    n = len(keys)
    if ctx.p**n > 1 << 22:
        raise PpolError(f"enumeration of p^{n} assignments is not feasible")
    good = []
    assignment = [0] * n
    while True:
        coords = []
        for w in range(tgt.arity):
            acc = PPoly.zero(ctx, src.arity)
            for key, u in zip(keys, assignment):
                if u and key.coord == tgt.var_names[w]:
                    acc = acc + PPoly.term(
                        ctx, src.arity, key.src_var, key.e, elems[key.mono].scale_int(u)
                    )
            coords.append(acc)
        t = HomTuple(src, tgt, tuple(coords))
        if hom_verify(t) is None:
            good.append(tuple(assignment))
        i = 0
        while i < n:
            assignment[i] += 1
            if assignment[i] < ctx.p:
                break
            assignment[i] = 0
            i += 1
        else:
            return good, keys
