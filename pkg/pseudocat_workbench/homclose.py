"""Hom pseudo-categories, products, curry/uncurry and horizontal composition.

For pseudo-categories C and C' the pseudo-functors C -> C' and their
transformations form a pseudo-category Hom(C, C'):

- objects: pseudo-functors; vertical morphisms: natural transformations;
- horizontal arrows: pseudo-natural transformations;
- cells: pseudo-modifications.

Every piece of data is enumerated exhaustively and given a string label;
the hom structure keeps lookup tables from transformation values to labels.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

from pseudocat_workbench.ambient import (
    FIN_CAT,
    BoundaryMismatch,
    FinCategory,
    FinFunctor,
    Ident,
)
from pseudocat_workbench.config import (
    DEFAULT_CURRY_CONVENTION,
    CurryConvention,
    resolve_search_bound,
)
from pseudocat_workbench.models import discrete_pseudocategory, terminal_category
from pseudocat_workbench.pfunctor import (
    PseudoFunctor,
    compose_pseudofunctors,
    validate_pseudofunctor,
)
from pseudocat_workbench.pseudocat import PseudoCategory, validate_pseudocategory
from pseudocat_workbench.ptransform import (
    NaturalTransformation,
    PseudoModification,
    PseudoNaturalTransformation,
    associator_modification,
    compose_modifications,
    enumerate_naturals,
    enumerate_pseudofunctors,
    enumerate_pseudomodifications,
    enumerate_pseudonaturals,
    identity_modification,
    identity_modification_of_natural,
    identity_natural,
    identity_pseudonatural,
    pcomp_modifications,
    unitor_modifications,
    validate_pseudomodification,
    validate_pseudonatural,
    vcomp_natural,
    vcomp_pseudonatural,
)
from pseudocat_workbench.report import ValidationReport

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Fixtures
# ----------------------------------------------------------------------


def terminal_pseudocategory() -> PseudoCategory:
    """One object, one horizontal arrow, identity structure; realized in FinCat."""
    return discrete_pseudocategory(terminal_category(), name="1", ambient=FIN_CAT)


def point_pseudofunctor(p: PseudoCategory, a: Ident, terminal: PseudoCategory) -> PseudoFunctor:
    """The pseudo-functor 1 -> p picking the object ``a``.

    mu is the inverse of the left unitor at e(a); epsilon is the identity.
    """
    (star,) = terminal.c0.objects
    (arrow,) = terminal.c1.objects
    unit = p.unit(a)
    return PseudoFunctor(
        name=f"pt({a})",
        source=terminal,
        target=p,
        f0=FinFunctor(terminal.c0, p.c0, {star: a}, {star: p.c0.identity(a)}, f"pt({a})0"),
        f1=FinFunctor(terminal.c1, p.c1, {arrow: unit}, {arrow: p.one(unit)}, f"pt({a})1"),
        mu={(arrow, arrow): p.inv(p.left_unitor(unit))},
        eps={star: p.one(unit)},
    )


def product_pseudocategory(
    left: PseudoCategory, right: PseudoCategory, name: str | None = None
) -> PseudoCategory:
    """Componentwise product; both factors must live in the same ambient."""
    if left.ambient != right.ambient:
        raise BoundaryMismatch(
            f"{left.name} and {right.name} live in different ambients", (left.name, right.name)
        )
    c0 = FinCategory.product(left.c0, right.c0)
    c1 = FinCategory.product(left.c1, right.c1)

    d = FinFunctor.from_rule(
        c1, c0, lambda x: (left.d.ob(x[0]), right.d.ob(x[1])),
        lambda u: (left.d.mor(u[0]), right.d.mor(u[1])), "d",
    )
    c = FinFunctor.from_rule(
        c1, c0, lambda x: (left.c.ob(x[0]), right.c.ob(x[1])),
        lambda u: (left.c.mor(u[0]), right.c.mor(u[1])), "c",
    )
    e = FinFunctor.from_rule(
        c0, c1, lambda x: (left.unit(x[0]), right.unit(x[1])),
        lambda u: (left.unit_cell(u[0]), right.unit_cell(u[1])), "e",
    )
    return PseudoCategory.build(
        name or f"{left.name}x{right.name}",
        c0,
        c1,
        d,
        c,
        e,
        tensor=lambda g, f: (left.tensor(g[0], f[0]), right.tensor(g[1], f[1])),
        tensor_cells=lambda g, f: (
            left.tensor_cells(g[0], f[0]),
            right.tensor_cells(g[1], f[1]),
        ),
        alpha=lambda h, g, f: (
            left.associator(h[0], g[0], f[0]),
            right.associator(h[1], g[1], f[1]),
        ),
        lam=lambda f: (left.left_unitor(f[0]), right.left_unitor(f[1])),
        rho=lambda f: (left.right_unitor(f[0]), right.right_unitor(f[1])),
        ambient=left.ambient,
    )


def projection_pseudofunctor(
    product: PseudoCategory, factor: PseudoCategory, index: int
) -> PseudoFunctor:
    """The strict projection of a product onto its ``index``-th factor."""
    return PseudoFunctor(
        name=f"pi{index + 1}",
        source=product,
        target=factor,
        f0=FinFunctor.from_rule(
            product.c0, factor.c0, lambda x: x[index], lambda u: u[index], f"pi{index + 1}0"
        ),
        f1=FinFunctor.from_rule(
            product.c1, factor.c1, lambda x: x[index], lambda u: u[index], f"pi{index + 1}1"
        ),
        mu={
            (g, f): factor.one(factor.tensor(g[index], f[index]))
            for g, f in product.pairs.apex.objects
        },
        eps={a: factor.one(factor.unit(a[index])) for a in product.c0.objects},
    )


# ----------------------------------------------------------------------
# Hom pseudo-categories
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomPseudoCategory:
    """Hom(source, target) with its labelled transformation tables."""

    pseudocategory: PseudoCategory
    source: PseudoCategory
    target: PseudoCategory
    functors: Mapping[str, PseudoFunctor]
    naturals: Mapping[str, NaturalTransformation]
    pseudonaturals: Mapping[str, PseudoNaturalTransformation]
    modifications: Mapping[str, PseudoModification]
    _labels: dict[Any, str] = field(repr=False, default_factory=dict)

    def label_of(self, value: Any) -> str:
        """The hom identifier of a functor or transformation value.

        Raises:
            BoundaryMismatch: If the value was not enumerated
        """
        try:
            return self._labels[value.key()]
        except KeyError:
            raise BoundaryMismatch(
                f"{value.name} is not in Hom({self.source.name}, {self.target.name})",
                (value.name,),
            ) from None


def _label_all(prefix: str, values: Sequence[Any], labels: dict[Any, str]) -> dict[str, Any]:
    table: dict[str, Any] = {}
    for value in values:
        key = value.key()
        if key in labels:
            continue
        label = f"{prefix}{len(table)}"
        labels[key] = label
        table[label] = value
    return table


def build_hom_pseudocategory(
    source: PseudoCategory,
    target: PseudoCategory,
    functors: Sequence[PseudoFunctor] | None = None,
    bound: int | None = None,
    name: str | None = None,
) -> HomPseudoCategory:
    """Enumerate Hom(source, target) over ``functors`` (all pseudo-functors if None).

    Raises:
        SearchSpaceTooLarge: If some enumeration exceeds ``bound``
        BoundaryMismatch: If a functor does not go from source to target
    """
    bound = resolve_search_bound(bound)
    if functors is None:
        functors = enumerate_pseudofunctors(source, target, bound)
    for F in functors:
        if F.source is not source or F.target is not target:
            raise BoundaryMismatch(
                f"{F.name} is not a pseudo-functor {source.name} -> {target.name}", (F.name,)
            )
    labels: dict[Any, str] = {}
    functor_table: dict[str, PseudoFunctor] = {}
    for F in functors:
        key = F.key()
        if key not in labels:
            labels[key] = F.name if F.name not in functor_table else f"{F.name}~{len(functor_table)}"
            functor_table[labels[key]] = F

    naturals = [
        theta
        for F in functor_table.values()
        for G in functor_table.values()
        for theta in enumerate_naturals(F, G, bound)
    ]
    natural_table = _label_all("n", naturals, labels)
    pseudonaturals = [
        T
        for F in functor_table.values()
        for G in functor_table.values()
        for T in enumerate_pseudonaturals(F, G, bound)
    ]
    pseudonatural_table = _label_all("T", pseudonaturals, labels)

    def naturals_between(F: PseudoFunctor, G: PseudoFunctor) -> list[NaturalTransformation]:
        return [n for n in natural_table.values() if n.source == F and n.target == G]

    modifications = [
        phi
        for T in pseudonatural_table.values()
        for T2 in pseudonatural_table.values()
        for lower in naturals_between(T.source, T2.source)
        for upper in naturals_between(T.target, T2.target)
        for phi in enumerate_pseudomodifications(T, T2, lower, upper, bound)
    ]
    modification_table = _label_all("M", modifications, labels)
    logger.info(
        "Hom(%s, %s): %d functors, %d naturals, %d pseudo-naturals, %d modifications",
        source.name,
        target.name,
        len(functor_table),
        len(natural_table),
        len(pseudonatural_table),
        len(modification_table),
    )

    def label(value: Any) -> str:
        try:
            return labels[value.key()]
        except KeyError:
            raise BoundaryMismatch(
                f"{value.name} escapes the enumerated hom structure", (value.name,)
            ) from None

    nat, pn, mod = natural_table, pseudonatural_table, modification_table

    @lru_cache(maxsize=None)
    def vcomp_nat(second: str, first: str) -> str:
        return label(vcomp_natural(nat[second], nat[first]))

    @lru_cache(maxsize=None)
    def vcomp_mod(second: str, first: str) -> str:
        return label(compose_modifications(mod[second], mod[first]))

    @lru_cache(maxsize=None)
    def tensor(second: str, first: str) -> str:
        return label(vcomp_pseudonatural(pn[second], pn[first]))

    @lru_cache(maxsize=None)
    def tensor_cells(second: str, first: str) -> str:
        return label(pcomp_modifications(mod[second], mod[first]))

    hom_name = name or f"Hom({source.name},{target.name})"
    c0 = FinCategory(
        name=f"{hom_name}0",
        objects=tuple(functor_table),
        morphisms={k: (label(v.source), label(v.target)) for k, v in nat.items()},
        identities={k: label(identity_natural(F)) for k, F in functor_table.items()},
        composer=vcomp_nat,
    )
    c1 = FinCategory(
        name=f"{hom_name}1",
        objects=tuple(pn),
        morphisms={k: (label(v.source), label(v.target)) for k, v in mod.items()},
        identities={k: label(identity_modification(T)) for k, T in pn.items()},
        composer=vcomp_mod,
    )
    d = FinFunctor.from_rule(
        c1, c0, lambda k: label(pn[k].source), lambda k: label(mod[k].lower), "d"
    )
    c = FinFunctor.from_rule(
        c1, c0, lambda k: label(pn[k].target), lambda k: label(mod[k].upper), "c"
    )
    e = FinFunctor.from_rule(
        c0,
        c1,
        lambda k: label(identity_pseudonatural(functor_table[k])),
        lambda k: label(identity_modification_of_natural(nat[k])),
        "e",
    )
    pseudocategory = PseudoCategory.build(
        hom_name,
        c0,
        c1,
        d,
        c,
        e,
        tensor=tensor,
        tensor_cells=tensor_cells,
        alpha=lambda u, t, s: label(associator_modification(pn[u], pn[t], pn[s])),
        lam=lambda t: label(unitor_modifications(pn[t])[0]),
        rho=lambda t: label(unitor_modifications(pn[t])[1]),
    )
    return HomPseudoCategory(
        pseudocategory, source, target, functor_table, nat, pn, mod, labels
    )


# ----------------------------------------------------------------------
# Curry and uncurry
# ----------------------------------------------------------------------


def _slice_functor(
    h: PseudoFunctor, left: PseudoCategory, right: PseudoCategory, a: Ident
) -> PseudoFunctor:
    """h(a, -): right -> target."""
    tgt = h.target
    ea = left.unit(a)
    one_a = left.c0.identity(a)

    def mu(g2: Ident, g: Ident) -> Ident:
        return tgt.then(
            h.cell((left.inv(left.left_unitor(ea)), right.one(right.tensor(g2, g)))),
            h.mu_at((ea, g2), (ea, g)),
        )

    return PseudoFunctor(
        name=f"{h.name}({a},-)",
        source=right,
        target=tgt,
        f0=FinFunctor.from_rule(
            right.c0, tgt.c0, lambda b: h.point((a, b)), lambda v: h.vertical((one_a, v))
        ),
        f1=FinFunctor.from_rule(
            right.c1, tgt.c1, lambda g: h.arrow((ea, g)), lambda psi: h.cell((left.one(ea), psi))
        ),
        mu={(g2, g): mu(g2, g) for g2, g in right.pairs.apex.objects},
        eps={b: h.eps_at((a, b)) for b in right.c0.objects},
    )


@dataclass(frozen=True, eq=False)
class Curried:
    """H: left -> Hom(right, target) together with the hom it lands in.

    ``product`` is the source of the uncurried functor.  ``original`` is the
    functor that was curried, when there is one; only the round-trip report
    reads it.
    """

    functor: PseudoFunctor
    hom: HomPseudoCategory
    left: PseudoCategory
    right: PseudoCategory
    product: PseudoCategory
    original: PseudoFunctor | None = None


def curry(
    h: PseudoFunctor, left: PseudoCategory, right: PseudoCategory, bound: int | None = None
) -> Curried:
    """Transpose ``h: left x right -> C`` into ``H: left -> Hom(right, C)``.

    ``H0(a) = h(a, -)``; ``H1(f)`` is the pseudo-natural transformation with
    components ``h(f, e b)``; cells map to pseudo-modifications with
    components ``h(phi, 1_{e b})``.
    """
    tgt = h.target
    slices = {a: _slice_functor(h, left, right, a) for a in left.c0.objects}
    hom = build_hom_pseudocategory(
        right, tgt, list(slices.values()), bound, name=f"Hom({right.name},{tgt.name})"
    )

    def vertical(v: Ident) -> NaturalTransformation:
        a, a2 = left.c0.morphisms[v]
        ev = left.unit_cell(v)
        return NaturalTransformation(
            name=f"{h.name}({v},-)",
            source=slices[a],
            target=slices[a2],
            theta0={b: h.vertical((v, right.c0.identity(b))) for b in right.c0.objects},
            theta1={g: h.cell((ev, right.one(g))) for g in right.c1.objects},
        )

    def horizontal(f: Ident) -> PseudoNaturalTransformation:
        a, a2 = left.d.ob(f), left.c.ob(f)
        ea, ea2 = left.unit(a), left.unit(a2)
        one_f = left.one(f)
        t = FinFunctor.from_rule(
            right.c0,
            tgt.c1,
            lambda b: h.arrow((f, right.unit(b))),
            lambda beta: h.cell((one_f, right.unit_cell(beta))),
            f"{h.name}({f},e-)",
        )
        tau = {}
        for g in right.c1.objects:
            b, b2 = right.d.ob(g), right.c.ob(g)
            eb, eb2 = right.unit(b), right.unit(b2)
            tau[g] = tgt.then(
                tgt.inv(h.mu_at((ea2, g), (f, eb))),
                h.cell((left.left_unitor(f), right.right_unitor(g))),
                h.cell((left.inv(left.right_unitor(f)), right.inv(right.left_unitor(g)))),
                h.mu_at((f, eb2), (ea, g)),
            )
        return PseudoNaturalTransformation(f"{h.name}({f},-)", slices[a], slices[a2], t, tau)

    def cell(phi: Ident) -> PseudoModification:
        f, f2 = left.c1.morphisms[phi]
        return PseudoModification(
            name=f"{h.name}({phi},-)",
            source=horizontal(f),
            target=horizontal(f2),
            lower=vertical(left.d.mor(phi)),
            upper=vertical(left.c.mor(phi)),
            components={
                b: h.cell((phi, right.one(right.unit(b)))) for b in right.c0.objects
            },
        )

    hp = hom.pseudocategory
    H0 = FinFunctor.from_rule(
        left.c0,
        hp.c0,
        lambda a: hom.label_of(slices[a]),
        lambda v: hom.label_of(vertical(v)),
        f"{h.name}^0",
    )
    H1 = FinFunctor.from_rule(
        left.c1,
        hp.c1,
        lambda f: hom.label_of(horizontal(f)),
        lambda phi: hom.label_of(cell(phi)),
        f"{h.name}^1",
    )

    def mu(f2: Ident, f: Ident) -> str:
        a, a3 = left.d.ob(f), left.c.ob(f2)
        comparison = PseudoModification(
            name=f"mu({f2},{f})",
            source=horizontal(left.tensor(f2, f)),
            target=vcomp_pseudonatural(horizontal(f2), horizontal(f)),
            lower=identity_natural(slices[a]),
            upper=identity_natural(slices[a3]),
            components={
                b: tgt.then(
                    h.cell(
                        (
                            left.one(left.tensor(f2, f)),
                            right.inv(right.left_unitor(right.unit(b))),
                        )
                    ),
                    h.mu_at((f2, right.unit(b)), (f, right.unit(b))),
                )
                for b in right.c0.objects
            },
        )
        return hom.label_of(comparison)

    def eps(a: Ident) -> str:
        comparison = PseudoModification(
            name=f"eps({a})",
            source=horizontal(left.unit(a)),
            target=identity_pseudonatural(slices[a]),
            lower=identity_natural(slices[a]),
            upper=identity_natural(slices[a]),
            components={b: h.eps_at((a, b)) for b in right.c0.objects},
        )
        return hom.label_of(comparison)

    H = PseudoFunctor(
        name=f"curry({h.name})",
        source=left if left.ambient == hp.ambient else left.replace(ambient=hp.ambient),
        target=hp,
        f0=H0,
        f1=H1,
        mu={(f2, f): mu(f2, f) for f2, f in left.pairs.apex.objects},
        eps={a: eps(a) for a in left.c0.objects},
    )
    return Curried(H, hom, left, right, h.source, original=h)


@dataclass(frozen=True, eq=False)
class Uncurried:
    """The pseudo-functor h'' on the product, rebuilt from a transpose H."""

    functor: PseudoFunctor
    convention: CurryConvention


def uncurry(
    curried: Curried, convention: CurryConvention = DEFAULT_CURRY_CONVENTION
) -> Uncurried:
    """Rebuild a pseudo-functor on the product from its transpose H.

    With the ``b-first`` convention ``h''(f, g) = H(c f)(g) (x) H(f)_{d g}``;
    ``a-first`` uses ``H(f)_{c g} (x) H(d f)(g)``.  Every component is read
    off the hom tables H points at: the slice functors, the natural and
    pseudo-natural transformations and the modifications.  mu pastes the
    slice's mu and H's mu with the tau of one transformation; epsilon
    combines the slice's epsilon with H's epsilon and a unitor.
    """
    H, hom, left, right = curried.functor, curried.hom, curried.left, curried.right
    src, tgt = curried.product, hom.target
    b_first = convention == "b-first"
    name = f"uncurry({H.name})"

    def at(a: Ident) -> PseudoFunctor:
        return hom.functors[H.point(a)]

    def nat(v: Ident) -> NaturalTransformation:
        return hom.naturals[H.vertical(v)]

    def pn(f: Ident) -> PseudoNaturalTransformation:
        return hom.pseudonaturals[H.arrow(f)]

    def point(x: Ident) -> Ident:
        a, b = x  # type: ignore[misc]
        return at(a).point(b)

    def vertical(x: Ident) -> Ident:
        v, w = x  # type: ignore[misc]
        a2, b = left.c0.target(v), right.c0.source(w)
        return tgt.c0.then(nat(v).at_point(b), at(a2).vertical(w))

    def arrow(x: Ident) -> Ident:
        f, g = x  # type: ignore[misc]
        T = pn(f)
        if b_first:
            return tgt.tensor(at(left.c.ob(f)).arrow(g), T.arrow(right.d.ob(g)))
        return tgt.tensor(T.arrow(right.c.ob(g)), at(left.d.ob(f)).arrow(g))

    def cell(x: Ident) -> Ident:
        phi, psi = x  # type: ignore[misc]
        f, f2 = left.c1.morphisms[phi]
        g, g2 = right.c1.morphisms[psi]
        M, T2 = hom.modifications[H.cell(phi)], pn(f2)
        if b_first:
            later = tgt.then(at(left.c.ob(f)).cell(psi), nat(left.c.mor(phi)).at_arrow(g2))
            earlier = tgt.then(M.components[right.d.ob(g)], T2.cell(right.d.mor(psi)))
        else:
            later = tgt.then(M.components[right.c.ob(g)], T2.cell(right.c.mor(psi)))
            earlier = tgt.then(at(left.d.ob(f)).cell(psi), nat(left.d.mor(phi)).at_arrow(g2))
        return tgt.tensor_cells(later, earlier)

    def mu(x2: Ident, x: Ident) -> Ident:
        (f2, g2), (f, g) = x2, x  # type: ignore[misc]
        T, T2 = pn(f), pn(f2)
        split = hom.modifications[H.mu_at(f2, f)].components
        if b_first:
            P2, b, b2 = at(left.c.ob(f2)), right.d.ob(g), right.c.ob(g)
            X2, X1 = P2.arrow(g2), P2.arrow(g)
            Y2, Y1 = T2.arrow(b), T.arrow(b)
            Z, W = T2.arrow(b2), at(left.c.ob(f)).arrow(g)
            return tgt.then(
                tgt.tensor_cells(P2.mu_at(g2, g), split[b]),
                tgt.associator(tgt.tensor(X2, X1), Y2, Y1),
                tgt.tensor_cells(tgt.inv(tgt.associator(X2, X1, Y2)), tgt.one(Y1)),
                tgt.inv(tgt.associator(X2, tgt.tensor(X1, Y2), Y1)),
                tgt.tensor_cells(tgt.one(X2), tgt.tensor_cells(T2.tau_at(g), tgt.one(Y1))),
                tgt.tensor_cells(tgt.one(X2), tgt.inv(tgt.associator(Z, W, Y1))),
                tgt.associator(X2, Z, tgt.tensor(W, Y1)),
            )
        P, b2, b3 = at(left.d.ob(f)), right.c.ob(g), right.c.ob(g2)
        A, B = T2.arrow(b3), T.arrow(b3)
        C, D = P.arrow(g2), P.arrow(g)
        E, F = at(left.c.ob(f)).arrow(g2), T.arrow(b2)
        return tgt.then(
            tgt.tensor_cells(split[b3], P.mu_at(g2, g)),
            tgt.associator(tgt.tensor(A, B), C, D),
            tgt.tensor_cells(tgt.inv(tgt.associator(A, B, C)), tgt.one(D)),
            tgt.tensor_cells(tgt.tensor_cells(tgt.one(A), tgt.inv(T.tau_at(g2))), tgt.one(D)),
            tgt.tensor_cells(tgt.associator(A, E, F), tgt.one(D)),
            tgt.inv(tgt.associator(tgt.tensor(A, E), F, D)),
        )

    def eps(x: Ident) -> Ident:
        a, b = x  # type: ignore[misc]
        P = at(a)
        unit = tgt.unit(P.point(b))
        counit = hom.modifications[H.eps_at(a)].components[b]
        if b_first:
            return tgt.then(tgt.tensor_cells(P.eps_at(b), counit), tgt.left_unitor(unit))
        return tgt.then(tgt.tensor_cells(counit, P.eps_at(b)), tgt.right_unitor(unit))

    rebuilt = PseudoFunctor(
        name=name,
        source=src,
        target=tgt,
        f0=FinFunctor.from_rule(src.c0, tgt.c0, point, vertical, f"{name}0"),
        f1=FinFunctor.from_rule(src.c1, tgt.c1, arrow, cell, f"{name}1"),
        mu={(x2, x): mu(x2, x) for x2, x in src.pairs.apex.objects},
        eps={x: eps(x) for x in src.c0.objects},
    )
    logger.debug("Uncurried %s with the %s convention", H.name, convention)
    return Uncurried(rebuilt, convention)


def round_trip_comparison(
    curried: Curried, convention: CurryConvention = DEFAULT_CURRY_CONVENTION
) -> dict[Ident, Ident]:
    """The special cells kappa: h(f, g) => h''(f, g) built from the curried functor h.

    ``b-first``: ``mu_h((e a', g), (f, e b)) . h(lambda_f^-1, rho_g^-1)``;
    ``a-first``: ``mu_h((f, e b'), (e a, g)) . h(rho_f^-1, lambda_g^-1)``.

    Raises:
        BoundaryMismatch: If the transpose was not produced by ``curry``
    """
    h, left, right = curried.original, curried.left, curried.right
    if h is None:
        raise BoundaryMismatch(
            f"{curried.functor.name} has no original functor", (curried.functor.name,)
        )
    tgt = h.target

    def kappa(x: Ident) -> Ident:
        f, g = x  # type: ignore[misc]
        a, a2 = left.d.ob(f), left.c.ob(f)
        b, b2 = right.d.ob(g), right.c.ob(g)
        if convention == "b-first":
            return tgt.then(
                h.cell((left.inv(left.left_unitor(f)), right.inv(right.right_unitor(g)))),
                h.mu_at((left.unit(a2), g), (f, right.unit(b))),
            )
        return tgt.then(
            h.cell((left.inv(left.right_unitor(f)), right.inv(right.left_unitor(g)))),
            h.mu_at((f, right.unit(b2)), (left.unit(a), g)),
        )

    return {x: kappa(x) for x in h.source.c1.objects}


def round_trip_report(curried: Curried, uncurried: Uncurried) -> ValidationReport:
    """Validate h'' and compare it with the functor that was curried.

    The comparison cells kappa must run from h to h'' on every arrow, be
    invertible and commute with the images of every cell.
    """
    h, rebuilt = curried.original, uncurried.functor
    comparison = round_trip_comparison(curried, uncurried.convention)
    assert h is not None
    tgt = rebuilt.target
    report = validate_pseudofunctor(rebuilt)
    report.structure = f"round-trip({h.name})"

    def objects_agree() -> Iterator[tuple[Ident, ...]]:
        for o in h.source.c0.objects:
            if rebuilt.point(o) != h.point(o):
                yield (o,)
        for x, kappa in comparison.items():
            if tgt.c1.morphisms.get(kappa) != (h.arrow(x), rebuilt.arrow(x)):
                yield x

    def comparisons_invertible() -> Iterator[tuple[Ident, ...]]:
        for x, kappa in comparison.items():
            if tgt.c1.inverse(kappa) is None:
                yield (x,)

    def comparisons_natural() -> Iterator[tuple[Ident, ...]]:
        for phi, (x, x2) in h.source.c1.morphisms.items():
            try:
                lhs = tgt.then(h.cell(phi), comparison[x2])
                rhs = tgt.then(comparison[x], rebuilt.cell(phi))
            except BoundaryMismatch:
                yield (phi,)
                continue
            if lhs != rhs:
                yield (phi,)

    report.check("curry.round-trip-objects", objects_agree())
    report.check("curry.comparison-invertible", comparisons_invertible())
    report.check("curry.comparison-natural", comparisons_natural())
    return report


# ----------------------------------------------------------------------
# Horizontal composition of pseudo-natural transformations
# ----------------------------------------------------------------------


def hcomp_pseudonatural_w1(
    S: PseudoNaturalTransformation, T: PseudoNaturalTransformation
) -> PseudoNaturalTransformation:
    """First horizontal composite of ``T: F => G`` (C -> C') and ``S: F' => G'`` (C' -> C'').

    Components ``s_{G a} (x) F'(t_a)`` from F'F to G'G.
    """
    return _hcomp(S, T, "w1")


def hcomp_pseudonatural_w2(
    S: PseudoNaturalTransformation, T: PseudoNaturalTransformation
) -> PseudoNaturalTransformation:
    """Second horizontal composite: components ``G'(t_a) (x) s_{F a}``."""
    return _hcomp(S, T, "w2")


def _hcomp(
    S: PseudoNaturalTransformation, T: PseudoNaturalTransformation, variant: str
) -> PseudoNaturalTransformation:
    F, G = T.source, T.target
    F2, G2 = S.source, S.target
    if F.target is not F2.source:
        raise BoundaryMismatch(f"{S.name} does not start where {T.name} lands", (S.name, T.name))
    src, out = F.source, F2.target

    if variant == "w1":

        def on_object(a: Ident) -> Ident:
            return out.tensor(S.arrow(G.point(a)), F2.arrow(T.arrow(a)))

        def on_vertical(v: Ident) -> Ident:
            return out.tensor_cells(S.cell(G.vertical(v)), F2.cell(T.cell(v)))

    else:

        def on_object(a: Ident) -> Ident:
            return out.tensor(G2.arrow(T.arrow(a)), S.arrow(F.point(a)))

        def on_vertical(v: Ident) -> Ident:
            return out.tensor_cells(G2.cell(T.cell(v)), S.cell(F.vertical(v)))

    t = FinFunctor.from_rule(src.c0, out.c1, on_object, on_vertical, f"{S.name}{variant}{T.name}")
    tau = {}
    for f in src.c1.objects:
        a, b = src.d.ob(f), src.c.ob(f)
        ta, tb = T.arrow(a), T.arrow(b)
        if variant == "w1":
            sGa, sGb = S.arrow(G.point(a)), S.arrow(G.point(b))
            Fta, Ftb = F2.arrow(ta), F2.arrow(tb)
            GGf, FGf, FFf = G2.arrow(G.arrow(f)), F2.arrow(G.arrow(f)), F2.arrow(F.arrow(f))
            tau[f] = out.then(
                out.associator(GGf, sGa, Fta),
                out.tensor_cells(S.tau_at(G.arrow(f)), out.one(Fta)),
                out.inv(out.associator(sGb, FGf, Fta)),
                out.tensor_cells(out.one(sGb), out.inv(F2.mu_at(G.arrow(f), ta))),
                out.tensor_cells(out.one(sGb), F2.cell(T.tau_at(f))),
                out.tensor_cells(out.one(sGb), F2.mu_at(tb, F.arrow(f))),
                out.associator(sGb, Ftb, FFf),
            )
        else:
            sFa, sFb = S.arrow(F.point(a)), S.arrow(F.point(b))
            Gta, Gtb = G2.arrow(ta), G2.arrow(tb)
            GGf, GFf, FFf = G2.arrow(G.arrow(f)), G2.arrow(F.arrow(f)), F2.arrow(F.arrow(f))
            tau[f] = out.then(
                out.associator(GGf, Gta, sFa),
                out.tensor_cells(out.inv(G2.mu_at(G.arrow(f), ta)), out.one(sFa)),
                out.tensor_cells(G2.cell(T.tau_at(f)), out.one(sFa)),
                out.tensor_cells(G2.mu_at(tb, F.arrow(f)), out.one(sFa)),
                out.inv(out.associator(Gtb, GFf, sFa)),
                out.tensor_cells(out.one(Gtb), S.tau_at(F.arrow(f))),
                out.associator(Gtb, sFb, FFf),
            )
    return PseudoNaturalTransformation(
        f"{S.name}{variant}{T.name}",
        compose_pseudofunctors(F2, F),
        compose_pseudofunctors(G2, G),
        t,
        tau,
    )


def find_invertible_modification(
    first: PseudoNaturalTransformation,
    second: PseudoNaturalTransformation,
    bound: int | None = None,
) -> PseudoModification | None:
    """An invertible pseudo-modification with identity boundaries, or None.

    The candidate with the lexicographically least component list (by repr)
    is returned.
    """
    if first.source != second.source or first.target != second.target:
        raise BoundaryMismatch(
            f"{first.name} and {second.name} are not parallel", (first.name, second.name)
        )
    tgt = first.source.target
    found = [
        phi
        for phi in enumerate_pseudomodifications(
            first,
            second,
            identity_natural(first.source),
            identity_natural(first.target),
            bound,
        )
        if all(tgt.c1.inverse(cell) is not None for cell in phi.components.values())
    ]
    if not found:
        return None
    objects = first.source.source.c0.objects
    return min(found, key=lambda phi: repr([phi.components[a] for a in objects]))


def check_in_hom(hom: HomPseudoCategory) -> ValidationReport:
    """Validate every enumerated transformation, then the hom pseudo-category itself."""
    report = ValidationReport(hom.pseudocategory.name)
    for T in hom.pseudonaturals.values():
        report.extend(validate_pseudonatural(T))
    for phi in hom.modifications.values():
        report.extend(validate_pseudomodification(phi))
    report.extend(validate_pseudocategory(hom.pseudocategory))
    return report


