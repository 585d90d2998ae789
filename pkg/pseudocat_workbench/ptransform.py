"""Natural and pseudo-natural transformations, and pseudo-modifications.

For pseudo-functors ``F, G: C -> C'``:

- a natural transformation ``theta: F => G`` is a pair of natural
  transformations ``theta0: F0 => G0`` and ``theta1: F1 => G1`` compatible
  with d, c, mu and epsilon;
- a pseudo-natural transformation ``T: F => G`` is a functor
  ``t: C0 -> C1'`` with ``d' t = F0`` and ``c' t = G0`` together with
  invertible special cells ``tau[f]: G f (x) t_a -> t_b (x) F f`` for
  ``f: a -> b``;
- a pseudo-modification ``Phi: T => T'`` with boundaries ``theta: F => H``
  and ``theta': G => K`` assigns to every object a a cell
  ``Phi[a]: t_a -> t'_a``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from math import prod
from typing import Any

from pseudocat_workbench.ambient import (
    BoundaryMismatch,
    FinFunctor,
    FinNat2Cell,
    Ident,
    LawViolation,
    functor_violations,
)
from pseudocat_workbench.config import resolve_search_bound
from pseudocat_workbench.pfunctor import (
    PseudoFunctor,
    check_boundaries,
    compose_pseudofunctors,
    validate_pseudofunctor,
)
from pseudocat_workbench.pseudocat import PseudoCategory
from pseudocat_workbench.report import ValidationReport

logger = logging.getLogger(__name__)


class SearchSpaceTooLarge(Exception):
    """Raised when an exhaustive enumeration would exceed the configured bound."""

    def __init__(self, bound: int, count: int, what: str = "candidates") -> None:
        super().__init__(f"{count} {what} exceed the search bound {bound}")
        self.bound = bound
        self.count = count


def _require_parallel(F: PseudoFunctor, G: PseudoFunctor) -> None:
    """Raise BoundaryMismatch unless F and G are well-typed and share source and target."""
    if F.source is not G.source or F.target is not G.target:
        raise BoundaryMismatch(f"{F.name} and {G.name} are not parallel", (F.name, G.name))
    for functor in (F,) if F is G else (F, G):
        check_boundaries(functor)


def _freeze(mapping: Mapping[Ident, Ident]) -> frozenset[tuple[Ident, Ident]]:
    return frozenset(mapping.items())


# ----------------------------------------------------------------------
# Natural transformations
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class NaturalTransformation:
    """The pair (theta0, theta1) stored as component tables."""

    name: str
    source: PseudoFunctor
    target: PseudoFunctor
    theta0: Mapping[Ident, Ident]
    theta1: Mapping[Ident, Ident]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NaturalTransformation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.theta0) == dict(other.theta0)
            and dict(self.theta1) == dict(other.theta1)
        )

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> Ident:
        return (self.source.key(), self.target.key(), _freeze(self.theta0), _freeze(self.theta1))

    def at_point(self, a: Ident) -> Ident:
        try:
            return self.theta0[a]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no component at {a!r}", (a,)) from None

    def at_arrow(self, f: Ident) -> Ident:
        try:
            return self.theta1[f]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no component at {f!r}", (f,)) from None

    def as_2cells(self) -> tuple[FinNat2Cell, FinNat2Cell]:
        return (
            FinNat2Cell(self.source.f0, self.target.f0, dict(self.theta0)),
            FinNat2Cell(self.source.f1, self.target.f1, dict(self.theta1)),
        )


def _check_natural_boundaries(theta: NaturalTransformation) -> None:
    F, G = theta.source, theta.target
    _require_parallel(F, G)
    tgt = F.target
    for a in F.source.c0.objects:
        if tgt.c0.morphisms.get(theta.at_point(a)) != (F.point(a), G.point(a)):
            raise BoundaryMismatch(f"{theta.name}: theta0 at {a!r} has the wrong ends", (a,))
    for f in F.source.c1.objects:
        if tgt.c1.morphisms.get(theta.at_arrow(f)) != (F.arrow(f), G.arrow(f)):
            raise BoundaryMismatch(f"{theta.name}: theta1 at {f!r} has the wrong ends", (f,))


def _natural_squares(
    theta: NaturalTransformation, level: int
) -> Iterator[tuple[Ident, ...]]:
    F, G = theta.source, theta.target
    if level == 0:
        cat, apply_f, apply_g, comp = F.source.c0, F.vertical, G.vertical, theta.at_point
        target = F.target.c0
    else:
        cat, apply_f, apply_g, comp = F.source.c1, F.cell, G.cell, theta.at_arrow
        target = F.target.c1
    for v, (a, b) in cat.morphisms.items():
        if target.then(apply_f(v), comp(b)) != target.then(comp(a), apply_g(v)):
            yield (v,)


def _natural_ends(theta: NaturalTransformation, leg: str) -> Iterator[tuple[Ident, ...]]:
    src, tgt = theta.source.source, theta.source.target
    src_leg, tgt_leg = (src.d, tgt.d) if leg == "d" else (src.c, tgt.c)
    for f in src.c1.objects:
        if tgt_leg.mor(theta.at_arrow(f)) != theta.at_point(src_leg.ob(f)):
            yield (f,)


def _natural_mu_square(theta: NaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    F, G = theta.source, theta.target
    src, tgt = F.source, F.target
    for g, f in src.pairs.apex.objects:
        lhs = tgt.then(theta.at_arrow(src.tensor(g, f)), G.mu_at(g, f))
        rhs = tgt.then(
            F.mu_at(g, f), tgt.tensor_cells(theta.at_arrow(g), theta.at_arrow(f))
        )
        if lhs != rhs:
            yield (g, f)


def _natural_eps_square(theta: NaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    F, G = theta.source, theta.target
    src, tgt = F.source, F.target
    for a in src.c0.objects:
        lhs = tgt.then(theta.at_arrow(src.unit(a)), G.eps_at(a))
        rhs = tgt.then(F.eps_at(a), tgt.unit_cell(theta.at_point(a)))
        if lhs != rhs:
            yield (a,)


def validate_natural(theta: NaturalTransformation) -> ValidationReport:
    """Raises:
    BoundaryMismatch: If the functors are not parallel or a component is ill-typed
    """
    _check_natural_boundaries(theta)
    report = ValidationReport(theta.name)
    report.check("natural.theta0-natural", _natural_squares(theta, 0))
    report.check("natural.theta1-natural", _natural_squares(theta, 1))
    report.check("natural.source-boundary", _natural_ends(theta, "d"))
    report.check("natural.target-boundary", _natural_ends(theta, "c"))
    report.check("natural.mu-square", _natural_mu_square(theta))
    report.check("natural.epsilon-square", _natural_eps_square(theta))
    return report


def identity_natural(F: PseudoFunctor) -> NaturalTransformation:
    tgt = F.target
    return NaturalTransformation(
        name=f"1_{F.name}",
        source=F,
        target=F,
        theta0={a: tgt.c0.identity(F.point(a)) for a in F.source.c0.objects},
        theta1={f: tgt.one(F.arrow(f)) for f in F.source.c1.objects},
    )


def vcomp_natural(
    second: NaturalTransformation, first: NaturalTransformation
) -> NaturalTransformation:
    """``second . first`` for ``first: F => G`` and ``second: G => H``."""
    if first.target != second.source:
        raise BoundaryMismatch(
            f"{second.name} does not start where {first.name} ends", (second.name, first.name)
        )
    tgt = first.source.target
    return NaturalTransformation(
        name=f"{second.name}.{first.name}",
        source=first.source,
        target=second.target,
        theta0={a: tgt.c0.then(x, second.at_point(a)) for a, x in first.theta0.items()},
        theta1={f: tgt.c1.then(x, second.at_arrow(f)) for f, x in first.theta1.items()},
    )


def hcomp_natural(
    second: NaturalTransformation, first: NaturalTransformation
) -> NaturalTransformation:
    """``second o first`` for ``first: F => G`` on C -> C' and ``second: F' => G'`` on C' -> C''.

    Components are ``second[G a] . F'(first[a])``.
    """
    if first.source.target is not second.source.source:
        raise BoundaryMismatch(
            f"{second.name} does not start where {first.name} lands", (second.name, first.name)
        )
    outer = second.source.target
    G, F2 = first.target, second.source
    return NaturalTransformation(
        name=f"{second.name}o{first.name}",
        source=compose_pseudofunctors(second.source, first.source),
        target=compose_pseudofunctors(second.target, first.target),
        theta0={
            a: outer.c0.then(F2.vertical(x), second.at_point(G.point(a)))
            for a, x in first.theta0.items()
        },
        theta1={
            f: outer.c1.then(F2.cell(x), second.at_arrow(G.arrow(f)))
            for f, x in first.theta1.items()
        },
    )


# ----------------------------------------------------------------------
# Pseudo-natural transformations
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoNaturalTransformation:
    """The pair (t, tau)."""

    name: str
    source: PseudoFunctor
    target: PseudoFunctor
    t: FinFunctor
    tau: Mapping[Ident, Ident]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoNaturalTransformation):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.t == other.t
            and dict(self.tau) == dict(other.tau)
        )

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> Ident:
        return (
            self.source.key(),
            self.target.key(),
            _freeze(self.t.object_map),
            _freeze(self.t.morphism_map),
            _freeze(self.tau),
        )

    def arrow(self, a: Ident) -> Ident:
        return self.t.ob(a)

    def cell(self, v: Ident) -> Ident:
        return self.t.mor(v)

    def tau_at(self, f: Ident) -> Ident:
        try:
            return self.tau[f]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no tau at {f!r}", (f,)) from None


def _check_pseudonatural_boundaries(T: PseudoNaturalTransformation) -> None:
    F, G = T.source, T.target
    _require_parallel(F, G)
    src, tgt = F.source, F.target
    if T.t.source is not src.c0 or T.t.target is not tgt.c1:
        raise BoundaryMismatch(f"{T.name}: t is not a map {src.name}0 -> {tgt.name}1", (T.name,))
    for f in src.c1.objects:
        a, b = src.d.ob(f), src.c.ob(f)
        expected = (
            tgt.tensor(G.arrow(f), T.arrow(a)),
            tgt.tensor(T.arrow(b), F.arrow(f)),
        )
        if tgt.c1.morphisms.get(T.tau_at(f)) != expected:
            raise BoundaryMismatch(f"{T.name}: tau at {f!r} is not {expected!r}", (f,))


def _t_ends(T: PseudoNaturalTransformation, leg: str) -> Iterator[tuple[Ident, ...]]:
    functor = T.source if leg == "d" else T.target
    tgt = functor.target
    tgt_leg = tgt.d if leg == "d" else tgt.c
    for a in functor.source.c0.objects:
        if tgt_leg.ob(T.arrow(a)) != functor.point(a):
            yield (a,)
    for v in functor.source.c0.morphisms:
        if tgt_leg.mor(T.cell(v)) != functor.vertical(v):
            yield (v,)


def _tau_special(T: PseudoNaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    src, tgt = T.source.source, T.source.target
    for f, cell in T.tau.items():
        lower = tgt.c0.identity(T.source.point(src.d.ob(f)))
        upper = tgt.c0.identity(T.target.point(src.c.ob(f)))
        if tgt.d.mor(cell) != lower or tgt.c.mor(cell) != upper:
            yield (f,)


def _tau_natural(T: PseudoNaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    F, G = T.source, T.target
    src, tgt = F.source, F.target
    for phi, (f, f2) in src.c1.morphisms.items():
        a, b = src.d.mor(phi), src.c.mor(phi)
        lhs = tgt.then(tgt.tensor_cells(G.cell(phi), T.cell(a)), T.tau_at(f2))
        rhs = tgt.then(T.tau_at(f), tgt.tensor_cells(T.cell(b), F.cell(phi)))
        if lhs != rhs:
            yield (phi,)


def _tau_invertible(T: PseudoNaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    for f, cell in T.tau.items():
        if T.source.target.c1.inverse(cell) is None:
            yield (f,)


def _octagon(T: PseudoNaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    F, G = T.source, T.target
    src, tgt = F.source, F.target
    for g, f in src.pairs.apex.objects:
        a, b, c = src.d.ob(f), src.d.ob(g), src.c.ob(g)
        ta, tb, tc = T.arrow(a), T.arrow(b), T.arrow(c)
        Fg, Ff, Gg, Gf = F.arrow(g), F.arrow(f), G.arrow(g), G.arrow(f)
        lhs = tgt.then(
            tgt.tensor_cells(tgt.inv(G.mu_at(g, f)), tgt.one(ta)),
            T.tau_at(src.tensor(g, f)),
            tgt.tensor_cells(tgt.one(tc), F.mu_at(g, f)),
            tgt.associator(tc, Fg, Ff),
        )
        rhs = tgt.then(
            tgt.inv(tgt.associator(Gg, Gf, ta)),
            tgt.tensor_cells(tgt.one(Gg), T.tau_at(f)),
            tgt.associator(Gg, tb, Ff),
            tgt.tensor_cells(T.tau_at(g), tgt.one(Ff)),
        )
        if lhs != rhs:
            yield (g, f)


def _unit_pentagon(T: PseudoNaturalTransformation) -> Iterator[tuple[Ident, ...]]:
    F, G = T.source, T.target
    src, tgt = F.source, F.target
    for a in src.c0.objects:
        ta = T.arrow(a)
        lhs = tgt.then(
            T.tau_at(src.unit(a)),
            tgt.tensor_cells(tgt.one(ta), F.eps_at(a)),
            tgt.right_unitor(ta),
        )
        rhs = tgt.then(tgt.tensor_cells(G.eps_at(a), tgt.one(ta)), tgt.left_unitor(ta))
        if lhs != rhs:
            yield (a,)


def validate_pseudonatural(T: PseudoNaturalTransformation) -> ValidationReport:
    """Check the pseudo-natural transformation laws.

    Raises:
        BoundaryMismatch: If the functors are not parallel or tau is ill-typed
    """
    _check_pseudonatural_boundaries(T)
    report = ValidationReport(T.name)
    report.check("pseudonatural.t-functor", functor_violations(T.t))
    report.check("pseudonatural.source-boundary", _t_ends(T, "d"))
    report.check("pseudonatural.target-boundary", _t_ends(T, "c"))
    report.check("pseudonatural.tau-special", _tau_special(T))
    report.check("pseudonatural.tau-natural", _tau_natural(T))
    report.check("pseudonatural.tau-invertible", _tau_invertible(T))
    report.check("pseudonatural.octagon", _octagon(T))
    report.check("pseudonatural.unit-pentagon", _unit_pentagon(T))
    return report


def identity_pseudonatural(F: PseudoFunctor) -> PseudoNaturalTransformation:
    """id_F with ``t_a = e'(F0 a)`` and ``tau_f = lambda'^-1 . rho'`` at F f."""
    tgt = F.target
    t = FinFunctor.from_rule(
        F.source.c0,
        tgt.c1,
        lambda a: tgt.unit(F.point(a)),
        lambda v: tgt.unit_cell(F.vertical(v)),
        f"e{F.name}0",
    )
    tau = {
        f: tgt.then(tgt.right_unitor(F.arrow(f)), tgt.inv(tgt.left_unitor(F.arrow(f))))
        for f in F.source.c1.objects
    }
    return PseudoNaturalTransformation(f"id_{F.name}", F, F, t, tau)


def vcomp_pseudonatural(
    S: PseudoNaturalTransformation, T: PseudoNaturalTransformation
) -> PseudoNaturalTransformation:
    """S (x) T for ``T: F => G`` and ``S: G => H``.

    ``(s t)_a = s_a (x) t_a`` and the cell at ``f: a -> b`` is the paste
    ``alpha . (sigma_f (x) 1) . alpha^-1 . (1 (x) tau_f) . alpha``.
    """
    if T.target != S.source:
        raise BoundaryMismatch(f"{S.name} does not start where {T.name} ends", (S.name, T.name))
    F, G, H = T.source, T.target, S.target
    src, tgt = F.source, F.target
    t = FinFunctor.from_rule(
        src.c0,
        tgt.c1,
        lambda a: tgt.tensor(S.arrow(a), T.arrow(a)),
        lambda v: tgt.tensor_cells(S.cell(v), T.cell(v)),
        f"{S.name}{T.name}",
    )
    tau = {}
    for f in src.c1.objects:
        a, b = src.d.ob(f), src.c.ob(f)
        sa, ta, sb, tb = S.arrow(a), T.arrow(a), S.arrow(b), T.arrow(b)
        tau[f] = tgt.then(
            tgt.associator(H.arrow(f), sa, ta),
            tgt.tensor_cells(S.tau_at(f), tgt.one(ta)),
            tgt.inv(tgt.associator(sb, G.arrow(f), ta)),
            tgt.tensor_cells(tgt.one(sb), T.tau_at(f)),
            tgt.associator(sb, tb, F.arrow(f)),
        )
    return PseudoNaturalTransformation(f"{S.name}*{T.name}", F, H, t, tau)


# ----------------------------------------------------------------------
# Pseudo-modifications
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PseudoModification:
    """Components ``Phi[a]: t_a -> t'_a`` with natural boundaries ``lower`` and ``upper``."""

    name: str
    source: PseudoNaturalTransformation
    target: PseudoNaturalTransformation
    lower: NaturalTransformation
    upper: NaturalTransformation
    components: Mapping[Ident, Ident]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoModification):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.lower == other.lower
            and self.upper == other.upper
            and dict(self.components) == dict(other.components)
        )

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> Ident:
        return (
            self.source.key(),
            self.target.key(),
            self.lower.key(),
            self.upper.key(),
            _freeze(self.components),
        )

    def at(self, a: Ident) -> Ident:
        try:
            return self.components[a]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no component at {a!r}", (a,)) from None


def _check_modification_boundaries(phi: PseudoModification) -> None:
    T, T2 = phi.source, phi.target
    _require_parallel(T.source, T2.source)
    _require_parallel(T.target, T2.target)
    if phi.lower.source != T.source or phi.lower.target != T2.source:
        raise BoundaryMismatch(f"{phi.name}: lower boundary does not join the sources", (phi.name,))
    if phi.upper.source != T.target or phi.upper.target != T2.target:
        raise BoundaryMismatch(f"{phi.name}: upper boundary does not join the targets", (phi.name,))
    tgt = T.source.target
    for a in T.source.source.c0.objects:
        if tgt.c1.morphisms.get(phi.at(a)) != (T.arrow(a), T2.arrow(a)):
            raise BoundaryMismatch(f"{phi.name}: component at {a!r} has the wrong ends", (a,))


def _modification_ends(phi: PseudoModification, leg: str) -> Iterator[tuple[Ident, ...]]:
    tgt = phi.source.source.target
    tgt_leg, theta = (tgt.d, phi.lower) if leg == "d" else (tgt.c, phi.upper)
    for a, cell in phi.components.items():
        if tgt_leg.mor(cell) != theta.at_point(a):
            yield (a,)


def _modification_natural(phi: PseudoModification) -> Iterator[tuple[Ident, ...]]:
    T, T2 = phi.source, phi.target
    src, tgt = T.source.source, T.source.target
    for v, (a, b) in src.c0.morphisms.items():
        if tgt.then(T.cell(v), phi.at(b)) != tgt.then(phi.at(a), T2.cell(v)):
            yield (v,)


def _modification_tau_square(phi: PseudoModification) -> Iterator[tuple[Ident, ...]]:
    T, T2 = phi.source, phi.target
    src, tgt = T.source.source, T.source.target
    for f in src.c1.objects:
        a, b = src.d.ob(f), src.c.ob(f)
        lhs = tgt.then(
            tgt.tensor_cells(phi.upper.at_arrow(f), phi.at(a)), T2.tau_at(f)
        )
        rhs = tgt.then(T.tau_at(f), tgt.tensor_cells(phi.at(b), phi.lower.at_arrow(f)))
        if lhs != rhs:
            yield (f,)


def validate_pseudomodification(phi: PseudoModification) -> ValidationReport:
    """Raises:
    BoundaryMismatch: If the boundaries do not frame the square or a component is ill-typed
    """
    _check_modification_boundaries(phi)
    report = ValidationReport(phi.name)
    report.check("modification.source-boundary", _modification_ends(phi, "d"))
    report.check("modification.target-boundary", _modification_ends(phi, "c"))
    report.check("modification.natural", _modification_natural(phi))
    report.check("modification.tau-square", _modification_tau_square(phi))
    return report


def compose_modifications(
    second: PseudoModification, first: PseudoModification
) -> PseudoModification:
    """Vertical composite: componentwise ``second[a] . first[a]``."""
    if first.target != second.source:
        raise BoundaryMismatch(
            f"{second.name} does not start where {first.name} ends", (second.name, first.name)
        )
    tgt = first.source.source.target
    return PseudoModification(
        name=f"{second.name}.{first.name}",
        source=first.source,
        target=second.target,
        lower=vcomp_natural(second.lower, first.lower),
        upper=vcomp_natural(second.upper, first.upper),
        components={a: tgt.then(cell, second.at(a)) for a, cell in first.components.items()},
    )


def pcomp_modifications(
    second: PseudoModification, first: PseudoModification
) -> PseudoModification:
    """Pseudo-composite ``second (x) first``: components ``second[a] (x) first[a]``.

    The upper boundary of ``first`` must be the lower boundary of ``second``.
    """
    if first.upper != second.lower:
        raise BoundaryMismatch(
            f"{second.name} and {first.name} do not share a boundary", (second.name, first.name)
        )
    tgt = first.source.source.target
    return PseudoModification(
        name=f"{second.name}*{first.name}",
        source=vcomp_pseudonatural(second.source, first.source),
        target=vcomp_pseudonatural(second.target, first.target),
        lower=first.lower,
        upper=second.upper,
        components={
            a: tgt.tensor_cells(second.at(a), cell) for a, cell in first.components.items()
        },
    )


def identity_modification(T: PseudoNaturalTransformation) -> PseudoModification:
    """1_T, with identity natural boundaries."""
    tgt = T.source.target
    return PseudoModification(
        name=f"1_{T.name}",
        source=T,
        target=T,
        lower=identity_natural(T.source),
        upper=identity_natural(T.target),
        components={a: tgt.one(T.arrow(a)) for a in T.source.source.c0.objects},
    )


def identity_modification_of_natural(theta: NaturalTransformation) -> PseudoModification:
    """id_theta: id_F => id_G with components e'(theta0[a])."""
    tgt = theta.source.target
    return PseudoModification(
        name=f"id_{theta.name}",
        source=identity_pseudonatural(theta.source),
        target=identity_pseudonatural(theta.target),
        lower=theta,
        upper=theta,
        components={a: tgt.unit_cell(x) for a, x in theta.theta0.items()},
    )


def associator_modification(
    U: PseudoNaturalTransformation, T: PseudoNaturalTransformation, S: PseudoNaturalTransformation
) -> PseudoModification:
    """U (x) (T (x) S) => (U (x) T) (x) S with components alpha'[u_a, t_a, s_a]."""
    tgt = S.source.target
    return PseudoModification(
        name=f"a({U.name},{T.name},{S.name})",
        source=vcomp_pseudonatural(U, vcomp_pseudonatural(T, S)),
        target=vcomp_pseudonatural(vcomp_pseudonatural(U, T), S),
        lower=identity_natural(S.source),
        upper=identity_natural(U.target),
        components={
            a: tgt.associator(U.arrow(a), T.arrow(a), S.arrow(a))
            for a in S.source.source.c0.objects
        },
    )


def unitor_modifications(
    T: PseudoNaturalTransformation,
) -> tuple[PseudoModification, PseudoModification]:
    """(lambda_T: id_G (x) T => T, rho_T: T (x) id_F => T)."""
    tgt = T.source.target
    objects = T.source.source.c0.objects
    lower, upper = identity_natural(T.source), identity_natural(T.target)
    left = PseudoModification(
        name=f"l({T.name})",
        source=vcomp_pseudonatural(identity_pseudonatural(T.target), T),
        target=T,
        lower=lower,
        upper=upper,
        components={a: tgt.left_unitor(T.arrow(a)) for a in objects},
    )
    right = PseudoModification(
        name=f"r({T.name})",
        source=vcomp_pseudonatural(T, identity_pseudonatural(T.source)),
        target=T,
        lower=lower,
        upper=upper,
        components={a: tgt.right_unitor(T.arrow(a)) for a in objects},
    )
    return left, right


# ----------------------------------------------------------------------
# Exhaustive enumeration
# ----------------------------------------------------------------------


def _guard(choices: Sequence[Sequence[Any]], bound: int, what: str) -> None:
    count = prod(len(c) for c in choices)
    if count > bound:
        raise SearchSpaceTooLarge(bound, count, what)


def _assignments(
    keys: Sequence[Ident], choices: Sequence[Sequence[Ident]]
) -> Iterator[dict[Ident, Ident]]:
    for picked in itertools.product(*choices):
        yield dict(zip(keys, picked, strict=True))


def _passes(validate: Any, candidate: Any) -> bool:
    try:
        return bool(validate(candidate).passed)
    except LawViolation:
        return False


def enumerate_naturals(
    F: PseudoFunctor, G: PseudoFunctor, bound: int | None = None
) -> list[NaturalTransformation]:
    """Every natural transformation F => G, in enumeration order.

    Raises:
        SearchSpaceTooLarge: If the candidate space exceeds ``bound``
    """
    _require_parallel(F, G)
    bound = resolve_search_bound(bound)
    src, tgt = F.source, F.target
    points = src.c0.objects
    point_choices = [tgt.c0.hom(F.point(a), G.point(a)) for a in points]
    _guard(point_choices, bound, "object components")
    arrows = src.c1.objects
    found = []
    for theta0 in _assignments(points, point_choices):
        arrow_choices = [
            [
                x
                for x in tgt.c1.hom(F.arrow(f), G.arrow(f))
                if tgt.d.mor(x) == theta0[src.d.ob(f)] and tgt.c.mor(x) == theta0[src.c.ob(f)]
            ]
            for f in arrows
        ]
        _guard(arrow_choices, bound, "arrow components")
        for theta1 in _assignments(arrows, arrow_choices):
            candidate = NaturalTransformation(
                f"{F.name}=>{G.name}#{len(found)}", F, G, theta0, theta1
            )
            if _passes(validate_natural, candidate):
                found.append(candidate)
    logger.debug("Found %d natural transformations %s => %s", len(found), F.name, G.name)
    return found


def _t_functors(
    F: PseudoFunctor, G: PseudoFunctor, bound: int
) -> Iterator[FinFunctor]:
    src, tgt = F.source, F.target
    points = src.c0.objects
    object_choices = [
        [x for x in tgt.c1.objects if tgt.d.ob(x) == F.point(a) and tgt.c.ob(x) == G.point(a)]
        for a in points
    ]
    _guard(object_choices, bound, "component arrows")
    verticals = tuple(src.c0.morphisms)
    for objects in _assignments(points, object_choices):
        cell_choices = [
            [
                phi
                for phi in tgt.c1.hom(objects[a], objects[b])
                if tgt.d.mor(phi) == F.vertical(v) and tgt.c.mor(phi) == G.vertical(v)
            ]
            for v, (a, b) in src.c0.morphisms.items()
        ]
        _guard(cell_choices, bound, "component cells")
        for cells in _assignments(verticals, cell_choices):
            t = FinFunctor(src.c0, tgt.c1, objects, cells, "t")
            if next(functor_violations(t), None) is None:
                yield t


def enumerate_pseudonaturals(
    F: PseudoFunctor, G: PseudoFunctor, bound: int | None = None
) -> list[PseudoNaturalTransformation]:
    """Every pseudo-natural transformation F => G, in enumeration order.

    Raises:
        SearchSpaceTooLarge: If some stage of the candidate space exceeds ``bound``
    """
    _require_parallel(F, G)
    bound = resolve_search_bound(bound)
    src, tgt = F.source, F.target
    arrows = src.c1.objects
    found = []
    for t in _t_functors(F, G, bound):
        tau_choices = []
        for f in arrows:
            a, b = src.d.ob(f), src.c.ob(f)
            lower = tgt.c0.identity(F.point(a))
            upper = tgt.c0.identity(G.point(b))
            tau_choices.append(
                [
                    x
                    for x in tgt.c1.hom(
                        tgt.tensor(G.arrow(f), t.ob(a)), tgt.tensor(t.ob(b), F.arrow(f))
                    )
                    if tgt.d.mor(x) == lower
                    and tgt.c.mor(x) == upper
                    and tgt.c1.inverse(x) is not None
                ]
            )
        _guard(tau_choices, bound, "tau assignments")
        for tau in _assignments(arrows, tau_choices):
            candidate = PseudoNaturalTransformation(
                f"{F.name}~>{G.name}#{len(found)}", F, G, t, tau
            )
            if _passes(validate_pseudonatural, candidate):
                found.append(candidate)
    logger.debug("Found %d pseudo-natural transformations %s => %s", len(found), F.name, G.name)
    return found


def enumerate_pseudomodifications(
    T: PseudoNaturalTransformation,
    T2: PseudoNaturalTransformation,
    lower: NaturalTransformation,
    upper: NaturalTransformation,
    bound: int | None = None,
) -> list[PseudoModification]:
    """Every pseudo-modification T => T2 over the given boundaries.

    Raises:
        SearchSpaceTooLarge: If the candidate space exceeds ``bound``
    """
    bound = resolve_search_bound(bound)
    src, tgt = T.source.source, T.source.target
    points = src.c0.objects
    choices = [
        [
            x
            for x in tgt.c1.hom(T.arrow(a), T2.arrow(a))
            if tgt.d.mor(x) == lower.at_point(a) and tgt.c.mor(x) == upper.at_point(a)
        ]
        for a in points
    ]
    _guard(choices, bound, "modification components")
    found = []
    for components in _assignments(points, choices):
        candidate = PseudoModification(
            f"{T.name}=>{T2.name}#{len(found)}", T, T2, lower, upper, components
        )
        if _passes(validate_pseudomodification, candidate):
            found.append(candidate)
    return found


def enumerate_pseudofunctors(
    source: PseudoCategory, target: PseudoCategory, bound: int | None = None
) -> list[PseudoFunctor]:
    """Every pseudo-functor source -> target, in enumeration order.

    Raises:
        SearchSpaceTooLarge: If some stage of the candidate space exceeds ``bound``
    """
    bound = resolve_search_bound(bound)
    found: list[PseudoFunctor] = []
    for f0 in _functors(source.c0, target.c0, bound):
        arrow_choices = [
            [
                y
                for y in target.c1.objects
                if target.d.ob(y) == f0.ob(source.d.ob(x))
                and target.c.ob(y) == f0.ob(source.c.ob(x))
            ]
            for x in source.c1.objects
        ]
        for f1 in _functors(source.c1, target.c1, bound, arrow_choices):
            mu_keys = source.pairs.apex.objects
            mu_choices = [
                _special_isos(
                    target,
                    f1.ob(source.tensor(g, f)),
                    target.tensor(f1.ob(g), f1.ob(f)),
                )
                for g, f in mu_keys
            ]
            eps_keys = source.c0.objects
            eps_choices = [
                _special_isos(target, f1.ob(source.unit(a)), target.unit(f0.ob(a)))
                for a in eps_keys
            ]
            _guard([*mu_choices, *eps_choices], bound, "comparison cells")
            for mu in _assignments(mu_keys, mu_choices):
                for eps in _assignments(eps_keys, eps_choices):
                    candidate = PseudoFunctor(
                        f"{source.name}->{target.name}#{len(found)}",
                        source,
                        target,
                        f0,
                        f1,
                        mu,
                        eps,
                    )
                    if _passes(validate_pseudofunctor, candidate):
                        found.append(candidate)
    logger.debug("Found %d pseudo-functors %s -> %s", len(found), source.name, target.name)
    return found


def _special_isos(p: PseudoCategory, x: Ident, y: Ident) -> list[Ident]:
    return [
        cell
        for cell in p.c1.hom(x, y)
        if p.c0.is_identity(p.d.mor(cell))
        and p.c0.is_identity(p.c.mor(cell))
        and p.c1.inverse(cell) is not None
    ]


def _functors(
    source: Any,
    target: Any,
    bound: int,
    object_choices: Iterable[Sequence[Ident]] | None = None,
) -> Iterator[FinFunctor]:
    objects = source.objects
    choices = (
        [list(target.objects) for _ in objects]
        if object_choices is None
        else [list(c) for c in object_choices]
    )
    _guard(choices, bound, "object assignments")
    morphisms = tuple(source.morphisms)
    for object_map in _assignments(objects, choices):
        morphism_choices = [
            target.hom(object_map[a], object_map[b]) for a, b in source.morphisms.values()
        ]
        _guard(morphism_choices, bound, "morphism assignments")
        for morphism_map in _assignments(morphisms, morphism_choices):
            functor = FinFunctor(source, target, object_map, morphism_map)
            if next(functor_violations(functor), None) is None:
                yield functor
