"""Pseudo-categories internal to a finite ambient 2-category.

A pseudo-category is a reflexive graph ``d, c: C1 -> C0``, ``e: C0 -> C1``
with a composition functor ``m`` on composable pairs and invertible
structural 2-cells alpha, lambda and rho.  Since every ambient instance is
realized by finite categories, the structural 2-cells are stored as
component tables and every coherence law is evaluated pointwise.

Conventions:
    - a composable pair is ``(g, f)`` with ``d(g) = c(f)``; ``m(g, f)`` is g after f
    - ``alpha[(h, g, f)]: h (g f) -> (h g) f``
    - ``lam[f]: e(c f) f -> f`` and ``rho[f]: f e(d f) -> f``
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from pseudocat_workbench.ambient import (
    FIN_CAT,
    Ambient2Cat,
    BoundaryMismatch,
    FinCategory,
    FinFunctor,
    FinNat2Cell,
    Ident,
    PullbackData,
    chain_objects,
    compose_functors,
    functor_violations,
    iterated_pullback,
    pullback,
)
from pseudocat_workbench.report import ValidationReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PseudoCategory:
    """The system (C0, C1, d, c, e, m, alpha, lambda, rho)."""

    name: str
    ambient: Ambient2Cat
    c0: FinCategory
    c1: FinCategory
    d: FinFunctor
    c: FinFunctor
    e: FinFunctor
    pairs: PullbackData
    m: FinFunctor
    alpha: Mapping[Ident, Ident]
    lam: Mapping[Ident, Ident]
    rho: Mapping[Ident, Ident]

    @classmethod
    def build(
        cls,
        name: str,
        c0: FinCategory,
        c1: FinCategory,
        d: FinFunctor,
        c: FinFunctor,
        e: FinFunctor,
        tensor: Callable[[Ident, Ident], Ident],
        tensor_cells: Callable[[Ident, Ident], Ident],
        alpha: Callable[[Ident, Ident, Ident], Ident],
        lam: Callable[[Ident], Ident],
        rho: Callable[[Ident], Ident],
        ambient: Ambient2Cat = FIN_CAT,
    ) -> PseudoCategory:
        """Assemble a pseudo-category from rules.

        The composition functor is tabulated on the pullback of ``d`` and
        ``c``; the structural cells are tabulated on composable triples and
        on the horizontal arrows.  Nothing is validated here.
        """
        pairs = pullback(d, c, name=f"{name}.pairs")
        m = FinFunctor.from_rule(
            pairs.apex,
            c1,
            lambda p: tensor(p[0], p[1]),
            lambda p: tensor_cells(p[0], p[1]),
            name="m",
        )
        triples = tuple(chain_objects(d, c, 3))
        return cls(
            name=name,
            ambient=ambient,
            c0=c0,
            c1=c1,
            d=d,
            c=c,
            e=e,
            pairs=pairs,
            m=m,
            alpha={t: alpha(*t) for t in triples},
            lam={f: lam(f) for f in c1.objects},
            rho={f: rho(f) for f in c1.objects},
        )

    def replace(self, **changes: object) -> PseudoCategory:
        """Copy with some fields replaced (used to derive mutants)."""
        fields = {
            key: getattr(self, key)
            for key in ("name", "ambient", "c0", "c1", "d", "c", "e", "pairs", "m")
        }
        fields.update(alpha=dict(self.alpha), lam=dict(self.lam), rho=dict(self.rho))
        fields.update(changes)
        return PseudoCategory(**fields)  # type: ignore[arg-type]

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------

    @cached_property
    def triples(self) -> FinCategory:
        return iterated_pullback(self.d, self.c, 3, name=f"{self.name}.triples")

    def chains(self, length: int) -> Iterator[tuple[Ident, ...]]:
        return chain_objects(self.d, self.c, length)

    # ------------------------------------------------------------------
    # Evaluation helpers
    # ------------------------------------------------------------------

    def tensor(self, g: Ident, f: Ident) -> Ident:
        return self.m.ob((g, f))

    def tensor_cells(self, psi: Ident, phi: Ident) -> Ident:
        return self.m.mor((psi, phi))

    def unit(self, a: Ident) -> Ident:
        return self.e.ob(a)

    def unit_cell(self, v: Ident) -> Ident:
        return self.e.mor(v)

    def one(self, f: Ident) -> Ident:
        return self.c1.identity(f)

    def then(self, *cells: Ident) -> Ident:
        return self.c1.then(*cells)

    def inv(self, cell: Ident) -> Ident:
        return self.c1.invert(cell)

    def associator(self, h: Ident, g: Ident, f: Ident) -> Ident:
        try:
            return self.alpha[(h, g, f)]
        except KeyError:
            raise BoundaryMismatch(f"no associator component at {(h, g, f)!r}", (h, g, f)) from None

    def left_unitor(self, f: Ident) -> Ident:
        try:
            return self.lam[f]
        except KeyError:
            raise BoundaryMismatch(f"no left unitor component at {f!r}", (f,)) from None

    def right_unitor(self, f: Ident) -> Ident:
        try:
            return self.rho[f]
        except KeyError:
            raise BoundaryMismatch(f"no right unitor component at {f!r}", (f,)) from None

    # ------------------------------------------------------------------
    # Structural 2-cells as ambient 2-cells
    # ------------------------------------------------------------------

    def alpha_2cell(self) -> FinNat2Cell:
        """alpha as a 2-cell m (1 x m) => m (m x 1) on the triple pullback."""
        triples = self.triples
        inner = FinFunctor.from_rule(
            triples,
            self.pairs.apex,
            lambda t: (t[0], self.tensor(t[1], t[2])),
            lambda t: (t[0], self.tensor_cells(t[1], t[2])),
            "1xm",
        )
        outer = FinFunctor.from_rule(
            triples,
            self.pairs.apex,
            lambda t: (self.tensor(t[0], t[1]), t[2]),
            lambda t: (self.tensor_cells(t[0], t[1]), t[2]),
            "mx1",
        )
        return FinNat2Cell(
            compose_functors(self.m, inner), compose_functors(self.m, outer), self.alpha, True
        )

    def unitor_2cells(self) -> tuple[FinNat2Cell, FinNat2Cell]:
        """lambda: m <e c, 1> => 1 and rho: m <1, e d> => 1 on C1."""
        ident = FinFunctor.identity(self.c1)
        left = FinFunctor.from_rule(
            self.c1,
            self.c1,
            lambda f: self.tensor(self.unit(self.c.ob(f)), f),
            lambda u: self.tensor_cells(self.unit_cell(self.c.mor(u)), u),
            "m<ec,1>",
        )
        right = FinFunctor.from_rule(
            self.c1,
            self.c1,
            lambda f: self.tensor(f, self.unit(self.d.ob(f))),
            lambda u: self.tensor_cells(u, self.unit_cell(self.d.mor(u))),
            "m<1,ed>",
        )
        return FinNat2Cell(left, ident, self.lam, True), FinNat2Cell(right, ident, self.rho, True)


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------


def check_boundaries(p: PseudoCategory) -> None:
    """Raise BoundaryMismatch unless alpha, lambda and rho have the required types."""
    c1 = p.c1
    for h, g, f in p.chains(3):
        cell = p.alpha.get((h, g, f))
        expected = (p.tensor(h, p.tensor(g, f)), p.tensor(p.tensor(h, g), f))
        if cell is None or c1.morphisms.get(cell) != expected:
            raise BoundaryMismatch(f"alpha at {(h, g, f)!r} is not {expected!r}", (h, g, f))
    for f in c1.objects:
        cell = p.lam.get(f)
        expected = (p.tensor(p.unit(p.c.ob(f)), f), f)
        if cell is None or c1.morphisms.get(cell) != expected:
            raise BoundaryMismatch(f"lambda at {f!r} is not {expected!r}", (f,))
        cell = p.rho.get(f)
        expected = (p.tensor(f, p.unit(p.d.ob(f))), f)
        if cell is None or c1.morphisms.get(cell) != expected:
            raise BoundaryMismatch(f"rho at {f!r} is not {expected!r}", (f,))


def _unit_sections(p: PseudoCategory, leg: FinFunctor) -> Iterator[tuple[Ident, ...]]:
    for a in p.c0.objects:
        if leg.ob(p.unit(a)) != a:
            yield (a,)
    for v in p.c0.morphisms:
        if leg.mor(p.unit_cell(v)) != v:
            yield (v,)


def _composite_ends(p: PseudoCategory, leg: FinFunctor, factor: int) -> Iterator[tuple[Ident, ...]]:
    apex = p.pairs.apex
    for pair in apex.objects:
        if leg.ob(p.m.ob(pair)) != leg.ob(pair[factor]):
            yield pair
    for pair in apex.morphisms:
        if leg.mor(p.m.mor(pair)) != leg.mor(pair[factor]):
            yield pair


def _special(
    p: PseudoCategory,
    components: Mapping[Ident, Ident],
    lower: Callable[[Ident], Ident],
    upper: Callable[[Ident], Ident],
) -> Iterator[tuple[Ident, ...]]:
    for x, cell in components.items():
        if p.d.mor(cell) != p.c0.identity(lower(x)) or p.c.mor(cell) != p.c0.identity(upper(x)):
            yield (x,)


def _invertible(p: PseudoCategory, components: Mapping[Ident, Ident]) -> Iterator[tuple[Ident, ...]]:
    for x, cell in components.items():
        if p.c1.inverse(cell) is None:
            yield (x,)


def _associator_natural(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    triples = p.triples
    for (chi, psi, phi), (src, tgt) in triples.morphisms.items():
        lhs = p.then(p.tensor_cells(chi, p.tensor_cells(psi, phi)), p.alpha[tgt])
        rhs = p.then(p.alpha[src], p.tensor_cells(p.tensor_cells(chi, psi), phi))
        if lhs != rhs:
            yield (chi, psi, phi)


def _left_unitor_natural(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for phi, (src, tgt) in p.c1.morphisms.items():
        whiskered = p.tensor_cells(p.unit_cell(p.c.mor(phi)), phi)
        if p.then(whiskered, p.lam[tgt]) != p.then(p.lam[src], phi):
            yield (phi,)


def _right_unitor_natural(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for phi, (src, tgt) in p.c1.morphisms.items():
        whiskered = p.tensor_cells(phi, p.unit_cell(p.d.mor(phi)))
        if p.then(whiskered, p.rho[tgt]) != p.then(p.rho[src], phi):
            yield (phi,)


def _unitors_agree(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for a in p.c0.objects:
        unit = p.unit(a)
        if p.lam[unit] != p.rho[unit]:
            yield (a,)


def _pentagon(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for k, h, g, f in p.chains(4):
        kh, hg, gf = p.tensor(k, h), p.tensor(h, g), p.tensor(g, f)
        lhs = p.then(p.associator(k, h, gf), p.associator(kh, g, f))
        rhs = p.then(
            p.tensor_cells(p.one(k), p.associator(h, g, f)),
            p.associator(k, hg, f),
            p.tensor_cells(p.associator(k, h, g), p.one(f)),
        )
        if lhs != rhs:
            yield (k, h, g, f)


def _triangle(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for g, f in p.pairs.apex.objects:
        unit = p.unit(p.d.ob(g))
        lhs = p.then(p.associator(g, unit, f), p.tensor_cells(p.right_unitor(g), p.one(f)))
        rhs = p.tensor_cells(p.one(g), p.left_unitor(f))
        if lhs != rhs:
            yield (g, f)


def _membership(p: PseudoCategory) -> Iterator[tuple[Ident, ...]]:
    for cat in (p.c0, p.c1):
        if not p.ambient.admits_object(cat):
            yield (cat.name,)
    for label, cells in (("alpha", p.alpha), ("lambda", p.lam), ("rho", p.rho)):
        if not p.ambient.admits_2cell(p.c1, cells):
            yield (label,)


def validate_pseudocategory(p: PseudoCategory) -> ValidationReport:
    """Check every pseudo-category law and return one entry per law.

    Raises:
        BoundaryMismatch: If alpha, lambda or rho are not typed as required
    """
    check_boundaries(p)
    report = ValidationReport(p.name)
    report.check("pseudocat.ambient-membership", _membership(p))
    report.check("pseudocat.d-functor", functor_violations(p.d))
    report.check("pseudocat.c-functor", functor_violations(p.c))
    report.check("pseudocat.e-functor", functor_violations(p.e))
    report.check("pseudocat.source-of-unit", _unit_sections(p, p.d))
    report.check("pseudocat.target-of-unit", _unit_sections(p, p.c))
    report.check("pseudocat.source-of-composite", _composite_ends(p, p.d, 1))
    report.check("pseudocat.target-of-composite", _composite_ends(p, p.c, 0))
    report.check("pseudocat.interchange", functor_violations(p.m))
    report.check(
        "pseudocat.associator-special",
        _special(p, p.alpha, lambda t: p.d.ob(t[2]), lambda t: p.c.ob(t[0])),
    )
    report.check("pseudocat.left-unitor-special", _special(p, p.lam, p.d.ob, p.c.ob))
    report.check("pseudocat.right-unitor-special", _special(p, p.rho, p.d.ob, p.c.ob))
    report.check("pseudocat.associator-natural", _associator_natural(p))
    report.check("pseudocat.left-unitor-natural", _left_unitor_natural(p))
    report.check("pseudocat.right-unitor-natural", _right_unitor_natural(p))
    report.check("pseudocat.associator-invertible", _invertible(p, p.alpha))
    report.check("pseudocat.left-unitor-invertible", _invertible(p, p.lam))
    report.check("pseudocat.right-unitor-invertible", _invertible(p, p.rho))
    report.check("pseudocat.unitors-agree-on-identities", _unitors_agree(p))
    report.check("pseudocat.pentagon", _pentagon(p))
    report.check("pseudocat.triangle", _triangle(p))
    logger.info(
        "Validated pseudo-category %s: %d/%d laws hold",
        p.name,
        report.summary()["passed"],
        report.summary()["total"],
    )
    return report


# ----------------------------------------------------------------------
# The four-sorted view
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CellFrame:
    """The four boundaries of a cell: horizontal top/bottom, vertical left/right."""

    top: Ident
    bottom: Ident
    left: Ident
    right: Ident


@dataclass(frozen=True, eq=False)
class DoubleView:
    """Objects, vertical morphisms, horizontal arrows and cells of a pseudo-category."""

    source: PseudoCategory
    objects: tuple[Ident, ...]
    vertical: Mapping[Ident, tuple[Ident, Ident]]
    horizontal: Mapping[Ident, tuple[Ident, Ident]]
    cells: Mapping[Ident, CellFrame]

    def tensor(self, g: Ident, f: Ident) -> Ident:
        return self.source.tensor(g, f)

    def identity_arrow(self, a: Ident) -> Ident:
        return self.source.unit(a)

    def associator(self, h: Ident, g: Ident, f: Ident) -> Ident:
        return self.source.associator(h, g, f)

    def left_unitor(self, f: Ident) -> Ident:
        return self.source.left_unitor(f)

    def right_unitor(self, f: Ident) -> Ident:
        return self.source.right_unitor(f)

    def is_special(self, cell: Ident) -> bool:
        frame = self.cells[cell]
        c0 = self.source.c0
        return c0.is_identity(frame.left) and c0.is_identity(frame.right)

    def interchange_holds(
        self, upper_left: Ident, lower_left: Ident, upper_right: Ident, lower_right: Ident
    ) -> bool:
        """Compare both evaluations of a 2x2 grid of cells.

        In each column the lower cell is applied first; the right column is
        composed after the left one horizontally.
        """
        p = self.source
        rows_first = compose_cells_vertical(
            p,
            compose_cells_pseudo(p, upper_right, upper_left),
            compose_cells_pseudo(p, lower_right, lower_left),
        )
        columns_first = compose_cells_pseudo(
            p,
            compose_cells_vertical(p, upper_right, lower_right),
            compose_cells_vertical(p, upper_left, lower_left),
        )
        return rows_first == columns_first


def unpack_double(p: PseudoCategory) -> DoubleView:
    """The four-sorted view of a pseudo-category realized in finite categories."""
    return DoubleView(
        source=p,
        objects=p.c0.objects,
        vertical=dict(p.c0.morphisms),
        horizontal={f: (p.d.ob(f), p.c.ob(f)) for f in p.c1.objects},
        cells={
            phi: CellFrame(top=src, bottom=tgt, left=p.d.mor(phi), right=p.c.mor(phi))
            for phi, (src, tgt) in p.c1.morphisms.items()
        },
    )


def compose_cells_vertical(p: PseudoCategory, psi: Ident, phi: Ident) -> Ident:
    """psi after phi: the bottom of phi must be the top of psi."""
    if p.c1.target(phi) != p.c1.source(psi):
        raise BoundaryMismatch(f"cells {psi!r} and {phi!r} do not stack", (psi, phi))
    return p.c1.compose(psi, phi)


def compose_cells_pseudo(p: PseudoCategory, gamma: Ident, phi: Ident) -> Ident:
    """gamma tensor phi: the left edge of gamma must be the right edge of phi."""
    if p.d.mor(gamma) != p.c.mor(phi):
        raise BoundaryMismatch(f"cells {gamma!r} and {phi!r} are not side by side", (gamma, phi))
    return p.tensor_cells(gamma, phi)
