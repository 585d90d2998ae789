"""Pseudo-functors between pseudo-categories.

A pseudo-functor ``F: C -> C'`` is a pair of functors ``F0: C0 -> C0'`` and
``F1: C1 -> C1'`` together with invertible special comparison cells

    mu[(g, f)]: F1(g f) -> F1(g) F1(f)
    eps[a]:     F1(e a) -> e'(F0 a)

Lax and colax variants (non-invertible comparisons) are not supported.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from pseudocat_workbench.ambient import (
    BoundaryMismatch,
    FinFunctor,
    Ident,
    LawViolation,
    compose_functors,
    functor_violations,
)
from pseudocat_workbench.pseudocat import PseudoCategory
from pseudocat_workbench.report import ValidationReport

logger = logging.getLogger(__name__)


class CompositionTypeMismatch(LawViolation):
    """Raised when composing pseudo-functors whose middle pseudo-categories differ."""

    law_id = "pseudofunctor.composable"


class LaxComparisonRejected(LawViolation):
    """Raised when a comparison cell mu or epsilon has no inverse."""

    law_id = "pseudofunctor.lax-rejected"


@dataclass(frozen=True, eq=False)
class PseudoFunctor:
    """The system (F0, F1, mu, eps) from ``source`` to ``target``.

    Equality is componentwise; source and target pseudo-categories are
    compared by identity.
    """

    name: str
    source: PseudoCategory
    target: PseudoCategory
    f0: FinFunctor
    f1: FinFunctor
    mu: Mapping[Ident, Ident]
    eps: Mapping[Ident, Ident]

    def __post_init__(self) -> None:
        c1 = self.target.c1
        for label, cells in (("mu", self.mu), ("epsilon", self.eps)):
            for x, cell in cells.items():
                if c1.has_morphism(cell) and c1.inverse(cell) is None:
                    raise LaxComparisonRejected(
                        f"{self.name}: {label} at {x!r} is not invertible", (label, x)
                    )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PseudoFunctor):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.f0 == other.f0
            and self.f1 == other.f1
            and dict(self.mu) == dict(other.mu)
            and dict(self.eps) == dict(other.eps)
        )

    __hash__ = None  # type: ignore[assignment]

    def key(self) -> Ident:
        """Hashable value identity, used for lookups in hom structures."""
        return (
            id(self.source),
            id(self.target),
            frozenset(self.f0.object_map.items()),
            frozenset(self.f0.morphism_map.items()),
            frozenset(self.f1.object_map.items()),
            frozenset(self.f1.morphism_map.items()),
            frozenset(self.mu.items()),
            frozenset(self.eps.items()),
        )

    def point(self, a: Ident) -> Ident:
        return self.f0.ob(a)

    def vertical(self, v: Ident) -> Ident:
        return self.f0.mor(v)

    def arrow(self, f: Ident) -> Ident:
        return self.f1.ob(f)

    def cell(self, phi: Ident) -> Ident:
        return self.f1.mor(phi)

    def mu_at(self, g: Ident, f: Ident) -> Ident:
        try:
            return self.mu[(g, f)]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no mu at {(g, f)!r}", (g, f)) from None

    def eps_at(self, a: Ident) -> Ident:
        try:
            return self.eps[a]
        except KeyError:
            raise BoundaryMismatch(f"{self.name}: no epsilon at {a!r}", (a,)) from None


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------


def check_boundaries(F: PseudoFunctor) -> None:
    """Raise BoundaryMismatch unless mu and epsilon have the required ends."""
    src, tgt = F.source, F.target
    if src.ambient != tgt.ambient:
        raise BoundaryMismatch(
            f"{F.name}: {src.name} and {tgt.name} live in different ambients", (F.name,)
        )
    if F.f0.source is not src.c0 or F.f0.target is not tgt.c0:
        raise BoundaryMismatch(f"{F.name}: F0 is not a map {src.name}0 -> {tgt.name}0", (F.name,))
    if F.f1.source is not src.c1 or F.f1.target is not tgt.c1:
        raise BoundaryMismatch(f"{F.name}: F1 is not a map {src.name}1 -> {tgt.name}1", (F.name,))
    for g, f in src.pairs.apex.objects:
        cell = F.mu_at(g, f)
        expected = (F.arrow(src.tensor(g, f)), tgt.tensor(F.arrow(g), F.arrow(f)))
        if tgt.c1.morphisms.get(cell) != expected:
            raise BoundaryMismatch(f"{F.name}: mu at {(g, f)!r} is not {expected!r}", (g, f))
    for a in src.c0.objects:
        cell = F.eps_at(a)
        expected = (F.arrow(src.unit(a)), tgt.unit(F.point(a)))
        if tgt.c1.morphisms.get(cell) != expected:
            raise BoundaryMismatch(f"{F.name}: epsilon at {a!r} is not {expected!r}", (a,))


def _membership(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    ambient = F.target.ambient
    for label, cells in (("mu", F.mu), ("epsilon", F.eps)):
        if not ambient.admits_2cell(F.target.c1, cells):
            yield (label,)


def _compatible(F: PseudoFunctor, leg: str) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    src_leg, tgt_leg = (src.d, tgt.d) if leg == "d" else (src.c, tgt.c)
    for f in src.c1.objects:
        if tgt_leg.ob(F.arrow(f)) != F.point(src_leg.ob(f)):
            yield (f,)
    for phi in src.c1.morphisms:
        if tgt_leg.mor(F.cell(phi)) != F.vertical(src_leg.mor(phi)):
            yield (phi,)


def _mu_special(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for (g, f), cell in F.mu.items():
        if tgt.d.mor(cell) != tgt.c0.identity(F.point(src.d.ob(f))):
            yield (g, f)
        elif tgt.c.mor(cell) != tgt.c0.identity(F.point(src.c.ob(g))):
            yield (g, f)


def _eps_special(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    tgt = F.target
    for a, cell in F.eps.items():
        unit = tgt.c0.identity(F.point(a))
        if tgt.d.mor(cell) != unit or tgt.c.mor(cell) != unit:
            yield (a,)


def _mu_natural(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for (psi, phi), (before, after) in src.pairs.apex.morphisms.items():
        lhs = tgt.then(F.cell(src.tensor_cells(psi, phi)), F.mu_at(*after))
        rhs = tgt.then(F.mu_at(*before), tgt.tensor_cells(F.cell(psi), F.cell(phi)))
        if lhs != rhs:
            yield (psi, phi)


def _eps_natural(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for v, (a, b) in src.c0.morphisms.items():
        lhs = tgt.then(F.cell(src.unit_cell(v)), F.eps_at(b))
        rhs = tgt.then(F.eps_at(a), tgt.unit_cell(F.vertical(v)))
        if lhs != rhs:
            yield (v,)


def _invertible(F: PseudoFunctor, cells: Mapping[Ident, Ident]) -> Iterator[tuple[Ident, ...]]:
    for x, cell in cells.items():
        if F.target.c1.inverse(cell) is None:
            yield (x,)


def _hexagon(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for h, g, f in src.chains(3):
        Fh, Fg, Ff = F.arrow(h), F.arrow(g), F.arrow(f)
        lhs = tgt.then(
            F.mu_at(h, src.tensor(g, f)),
            tgt.tensor_cells(tgt.one(Fh), F.mu_at(g, f)),
            tgt.associator(Fh, Fg, Ff),
        )
        rhs = tgt.then(
            F.cell(src.associator(h, g, f)),
            F.mu_at(src.tensor(h, g), f),
            tgt.tensor_cells(F.mu_at(h, g), tgt.one(Ff)),
        )
        if lhs != rhs:
            yield (h, g, f)


def _left_unit_square(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for f in src.c1.objects:
        b = src.c.ob(f)
        Ff = F.arrow(f)
        lhs = F.cell(src.left_unitor(f))
        rhs = tgt.then(
            F.mu_at(src.unit(b), f),
            tgt.tensor_cells(F.eps_at(b), tgt.one(Ff)),
            tgt.left_unitor(Ff),
        )
        if lhs != rhs:
            yield (f,)


def _right_unit_square(F: PseudoFunctor) -> Iterator[tuple[Ident, ...]]:
    src, tgt = F.source, F.target
    for f in src.c1.objects:
        a = src.d.ob(f)
        Ff = F.arrow(f)
        lhs = F.cell(src.right_unitor(f))
        rhs = tgt.then(
            F.mu_at(f, src.unit(a)),
            tgt.tensor_cells(tgt.one(Ff), F.eps_at(a)),
            tgt.right_unitor(Ff),
        )
        if lhs != rhs:
            yield (f,)


def validate_pseudofunctor(F: PseudoFunctor) -> ValidationReport:
    """Check every pseudo-functor law and return one entry per law.

    Raises:
        BoundaryMismatch: If mu or epsilon are not typed as required
    """
    check_boundaries(F)
    report = ValidationReport(F.name)
    report.check("pseudofunctor.ambient-membership", _membership(F))
    report.check("pseudofunctor.f0-functor", functor_violations(F.f0))
    report.check("pseudofunctor.f1-functor", functor_violations(F.f1))
    report.check("pseudofunctor.source-compatible", _compatible(F, "d"))
    report.check("pseudofunctor.target-compatible", _compatible(F, "c"))
    report.check("pseudofunctor.mu-special", _mu_special(F))
    report.check("pseudofunctor.epsilon-special", _eps_special(F))
    report.check("pseudofunctor.mu-natural", _mu_natural(F))
    report.check("pseudofunctor.epsilon-natural", _eps_natural(F))
    report.check("pseudofunctor.mu-invertible", _invertible(F, F.mu))
    report.check("pseudofunctor.epsilon-invertible", _invertible(F, F.eps))
    report.check("pseudofunctor.hexagon", _hexagon(F))
    report.check("pseudofunctor.left-unit-square", _left_unit_square(F))
    report.check("pseudofunctor.right-unit-square", _right_unit_square(F))
    logger.info(
        "Validated pseudo-functor %s: %d/%d laws hold",
        F.name,
        report.summary()["passed"],
        report.summary()["total"],
    )
    return report


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------


def identity_pseudofunctor(p: PseudoCategory) -> PseudoFunctor:
    return PseudoFunctor(
        name=f"1_{p.name}",
        source=p,
        target=p,
        f0=FinFunctor.identity(p.c0),
        f1=FinFunctor.identity(p.c1),
        mu={(g, f): p.one(p.tensor(g, f)) for g, f in p.pairs.apex.objects},
        eps={a: p.one(p.unit(a)) for a in p.c0.objects},
    )


def compose_pseudofunctors(G: PseudoFunctor, F: PseudoFunctor) -> PseudoFunctor:
    """G after F.

    ``mu[(g, f)] = mu^G[(F g, F f)] . G(mu^F[(g, f)])`` and
    ``eps[a] = eps^G[F0 a] . G(eps^F[a])``.

    Raises:
        CompositionTypeMismatch: If F does not land where G starts
    """
    if F.target is not G.source:
        raise CompositionTypeMismatch(
            f"cannot compose {G.name} after {F.name}: {F.target.name} is not {G.source.name}",
            (G.name, F.name),
        )
    tgt = G.target
    return PseudoFunctor(
        name=f"{G.name}{F.name}",
        source=F.source,
        target=tgt,
        f0=compose_functors(G.f0, F.f0),
        f1=compose_functors(G.f1, F.f1),
        mu={
            (g, f): tgt.then(G.cell(cell), G.mu_at(F.arrow(g), F.arrow(f)))
            for (g, f), cell in F.mu.items()
        },
        eps={a: tgt.then(G.cell(cell), G.eps_at(F.point(a))) for a, cell in F.eps.items()},
    )


def make_pseudofunctor(
    name: str,
    source: PseudoCategory,
    target: PseudoCategory,
    f0: FinFunctor,
    f1: FinFunctor,
    mu: Mapping[Ident, Ident],
    eps: Mapping[Ident, Ident],
) -> tuple[PseudoFunctor, ValidationReport]:
    """Construct and validate; law failures are returned in the report."""
    F = PseudoFunctor(name, source, target, f0, f1, dict(mu), dict(eps))
    return F, validate_pseudofunctor(F)
