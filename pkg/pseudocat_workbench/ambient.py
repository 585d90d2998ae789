"""Finite instances of the ambient 2-category.

Every ambient instance is realized through finite categories: sets become
discrete or codiscrete categories and groups become one-object categories.
Functors and natural transformations between those categories are then the
1-cells and 2-cells of the instance, and pullbacks are computed on the
categories themselves.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Any

logger = logging.getLogger(__name__)

Ident = Hashable
Witness = tuple[Any, ...]


class LawViolation(Exception):
    """Raised when a finite structure breaks one of its laws.

    Attributes:
        law_id: Registry identifier of the broken law
        witness: Identifiers of the diagram instance that fails
    """

    law_id = "structure"

    def __init__(self, message: str, witness: Witness = ()) -> None:
        super().__init__(message)
        self.witness = witness


class BoundaryMismatch(LawViolation):
    """Raised when cells or functors are combined along incompatible boundaries."""

    law_id = "boundary"


class NotAssociative(LawViolation):
    """Raised when a composition table is not associative."""

    law_id = "category.associativity"


class UnitLawFails(LawViolation):
    """Raised when an identity morphism is missing or not neutral."""

    law_id = "category.unit"


class IllTypedComposite(LawViolation):
    """Raised when a composite has the wrong source or target."""

    law_id = "category.typed-composite"


class MissingComposite(LawViolation):
    """Raised when a composable pair has no entry in the composition table."""

    law_id = "category.total-composition"


class FunctorLawFails(LawViolation):
    """Raised when a map of finite categories is not a functor."""

    law_id = "functor.laws"


class NotNatural(LawViolation):
    """Raised when a family of components is not a natural transformation."""

    law_id = "2cell.naturality"


class NotInvertible(LawViolation):
    """Raised when a 2-cell required to be invertible has a non-invertible component."""

    law_id = "2cell.invertible"


class GroupAxiomFails(LawViolation):
    """Raised when a finite multiplication table is not a group."""

    law_id = "group.axioms"


class NotHomomorphism(LawViolation):
    """Raised when a map of finite groups does not preserve products."""

    law_id = "group.homomorphism"


# ----------------------------------------------------------------------
# Finite categories
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category.

    Morphisms are keyed by identifier and carry their (source, target) pair.
    Composition is delegated to ``composer(g, f)`` meaning "g after f".
    """

    name: str
    objects: tuple[Ident, ...]
    morphisms: Mapping[Ident, tuple[Ident, Ident]]
    identities: Mapping[Ident, Ident]
    composer: Callable[[Ident, Ident], Ident] = field(repr=False)

    @cached_property
    def _object_set(self) -> frozenset[Ident]:
        return frozenset(self.objects)

    @cached_property
    def _outgoing(self) -> dict[Ident, list[Ident]]:
        out: dict[Ident, list[Ident]] = {a: [] for a in self.objects}
        for f, (src, _tgt) in self.morphisms.items():
            out.setdefault(src, []).append(f)
        return out

    @cached_property
    def _homs(self) -> dict[tuple[Ident, Ident], list[Ident]]:
        homs: dict[tuple[Ident, Ident], list[Ident]] = {}
        for f, ends in self.morphisms.items():
            homs.setdefault(ends, []).append(f)
        return homs

    def has_object(self, a: Ident) -> bool:
        return a in self._object_set

    def has_morphism(self, f: Ident) -> bool:
        return f in self.morphisms

    def source(self, f: Ident) -> Ident:
        try:
            return self.morphisms[f][0]
        except KeyError:
            raise BoundaryMismatch(f"{f!r} is not a morphism of {self.name}", (f,)) from None

    def target(self, f: Ident) -> Ident:
        try:
            return self.morphisms[f][1]
        except KeyError:
            raise BoundaryMismatch(f"{f!r} is not a morphism of {self.name}", (f,)) from None

    def identity(self, a: Ident) -> Ident:
        try:
            return self.identities[a]
        except KeyError:
            raise BoundaryMismatch(f"{a!r} is not an object of {self.name}", (a,)) from None

    def hom(self, a: Ident, b: Ident) -> tuple[Ident, ...]:
        return tuple(self._homs.get((a, b), ()))

    def outgoing(self, a: Ident) -> tuple[Ident, ...]:
        return tuple(self._outgoing.get(a, ()))

    def compose(self, g: Ident, f: Ident) -> Ident:
        """Return g after f, raising BoundaryMismatch when they are not composable."""
        if self.target(f) != self.source(g):
            raise BoundaryMismatch(
                f"cannot compose {g!r} after {f!r} in {self.name}", (g, f)
            )
        return self.composer(g, f)

    def then(self, *arrows: Ident) -> Ident:
        """Compose arrows in diagrammatic order: ``then(f, g, h) = h g f``."""
        result = arrows[0]
        for arrow in arrows[1:]:
            result = self.compose(arrow, result)
        return result

    def composable_pairs(self) -> Iterator[tuple[Ident, Ident]]:
        for f, (_src, tgt) in self.morphisms.items():
            for g in self._outgoing.get(tgt, ()):
                yield g, f

    def _ends(self, f: Ident) -> tuple[Ident, Ident]:
        try:
            return self.morphisms[f]
        except KeyError:
            raise BoundaryMismatch(f"{f!r} is not a morphism of {self.name}", (f,)) from None

    def is_identity(self, f: Ident) -> bool:
        src, tgt = self._ends(f)
        return src == tgt and self.identities.get(src) == f

    @cached_property
    def _inverse_table(self) -> dict[Ident, Ident | None]:
        table: dict[Ident, Ident | None] = {}
        for f, (src, tgt) in self.morphisms.items():
            table[f] = None
            for g in self.hom(tgt, src):
                try:
                    if self.composer(g, f) == self.identities[src] and self.composer(
                        f, g
                    ) == self.identities[tgt]:
                        table[f] = g
                        break
                except LawViolation:
                    continue
        return table

    def inverse(self, f: Ident) -> Ident | None:
        """Return the two-sided inverse of f, or None if f is not invertible.

        Raises:
            BoundaryMismatch: f is not a morphism of this category
        """
        self._ends(f)
        return self._inverse_table[f]

    def invert(self, f: Ident) -> Ident:
        g = self.inverse(f)
        if g is None:
            raise NotInvertible(f"{f!r} has no inverse in {self.name}", (f,))
        return g

    # ------------------------------------------------------------------
    # Trusted constructors
    # ------------------------------------------------------------------

    @classmethod
    def discrete(cls, name: str, elements: Iterable[Ident]) -> FinCategory:
        """The discrete category on a finite set: only identity morphisms."""
        items = tuple(elements)
        return cls(
            name=name,
            objects=items,
            morphisms={x: (x, x) for x in items},
            identities={x: x for x in items},
            composer=_discrete_composer,
        )

    @classmethod
    def codiscrete(
        cls, name: str, elements: Iterable[Ident]
    ) -> FinCategory:
        """The codiscrete category on a finite set: exactly one morphism (x, y): x -> y."""
        items = tuple(elements)
        return cls(
            name=name,
            objects=items,
            morphisms={(x, y): (x, y) for x in items for y in items},
            identities={x: (x, x) for x in items},
            composer=_codiscrete_composer,
        )

    @classmethod
    def product(cls, left: FinCategory, right: FinCategory, name: str | None = None) -> FinCategory:
        def composer(g: Ident, f: Ident) -> Ident:
            return (left.compose(g[0], f[0]), right.compose(g[1], f[1]))

        return cls(
            name=name or f"{left.name}x{right.name}",
            objects=tuple(itertools.product(left.objects, right.objects)),
            morphisms={
                (u, v): ((us, vs), (ut, vt))
                for u, (us, ut) in left.morphisms.items()
                for v, (vs, vt) in right.morphisms.items()
            },
            identities={
                (a, b): (left.identities[a], right.identities[b])
                for a in left.objects
                for b in right.objects
            },
            composer=composer,
        )


def _discrete_composer(g: Ident, f: Ident) -> Ident:
    return f


def _codiscrete_composer(g: Ident, f: Ident) -> Ident:
    return (f[0], g[1])  # type: ignore[index]


def category_violations(cat: FinCategory) -> Iterator[LawViolation]:
    """Yield every violation of the category axioms, typing first."""
    for a in cat.objects:
        unit = cat.identities.get(a)
        if unit is None or cat.morphisms.get(unit) != (a, a):
            yield UnitLawFails(f"{a!r} has no identity morphism", (a,))
    for f, (src, tgt) in cat.morphisms.items():
        if not (cat.has_object(src) and cat.has_object(tgt)):
            yield IllTypedComposite(f"{f!r} has undeclared endpoints", (f,))

    for g, f in cat.composable_pairs():
        try:
            h = cat.composer(g, f)
        except LawViolation as exc:
            yield exc
            continue
        if cat.morphisms.get(h) != (cat.source(f), cat.target(g)):
            yield IllTypedComposite(f"{g!r} after {f!r} gives ill-typed {h!r}", (g, f))

    for f, (src, tgt) in cat.morphisms.items():
        try:
            left = cat.composer(cat.identities[tgt], f)
            right = cat.composer(f, cat.identities[src])
        except (LawViolation, KeyError):
            continue
        if left != f or right != f:
            yield UnitLawFails(f"identities are not neutral for {f!r}", (f,))

    for g, f in cat.composable_pairs():
        for h in cat.outgoing(cat.target(g)):
            try:
                lhs = cat.composer(h, cat.composer(g, f))
                rhs = cat.composer(cat.composer(h, g), f)
            except LawViolation:
                continue
            if lhs != rhs:
                yield NotAssociative(
                    f"({h!r} {g!r}) {f!r} = {rhs!r} but {h!r} ({g!r} {f!r}) = {lhs!r}",
                    (h, g, f),
                )


def validate_category(cat: FinCategory) -> FinCategory:
    for violation in category_violations(cat):
        raise violation
    return cat


def make_fin_category(
    objects: tuple[Ident, ...] | list[Ident],
    morphisms: Mapping[Ident, tuple[Ident, Ident]],
    comp: Mapping[tuple[Ident, Ident], Ident],
    identities: Mapping[Ident, Ident],
    name: str = "C",
) -> FinCategory:
    """Build and validate a finite category from explicit tables.

    Identity morphisms named in ``identities`` are added to the morphism table
    when missing. Composites involving an identity fall back to the other
    factor unless the table lists them explicitly.

    Raises:
        NotAssociative, UnitLawFails, IllTypedComposite, MissingComposite
    """
    typed = dict(morphisms)
    for a, unit in identities.items():
        typed.setdefault(unit, (a, a))
    unit_set = frozenset(identities.values())
    table = dict(comp)

    def composer(g: Ident, f: Ident) -> Ident:
        if (g, f) in table:
            return table[(g, f)]
        if g in unit_set and typed[g][0] == typed[g][1]:
            return f
        if f in unit_set and typed[f][0] == typed[f][1]:
            return g
        raise MissingComposite(f"no composite for {g!r} after {f!r}", (g, f))

    cat = FinCategory(
        name=name,
        objects=tuple(objects),
        morphisms=typed,
        identities=dict(identities),
        composer=composer,
    )
    validate_category(cat)
    logger.debug("Validated category %s (%d objects, %d morphisms)", name, len(cat.objects), len(typed))
    return cat


# ----------------------------------------------------------------------
# Functors
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinFunctor:
    """A map of finite categories given by its object and morphism tables."""

    source: FinCategory
    target: FinCategory
    object_map: Mapping[Ident, Ident]
    morphism_map: Mapping[Ident, Ident]
    name: str = ""

    def ob(self, x: Ident) -> Ident:
        try:
            return self.object_map[x]
        except KeyError:
            raise BoundaryMismatch(
                f"{x!r} is not an object of {self.source.name}", (self.name, x)
            ) from None

    def mor(self, f: Ident) -> Ident:
        try:
            return self.morphism_map[f]
        except KeyError:
            raise BoundaryMismatch(
                f"{f!r} is not a morphism of {self.source.name}", (self.name, f)
            ) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and dict(self.object_map) == dict(other.object_map)
            and dict(self.morphism_map) == dict(other.morphism_map)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_rule(
        cls,
        source: FinCategory,
        target: FinCategory,
        on_object: Callable[[Ident], Ident],
        on_morphism: Callable[[Ident], Ident],
        name: str = "",
    ) -> FinFunctor:
        return cls(
            source=source,
            target=target,
            object_map={x: on_object(x) for x in source.objects},
            morphism_map={f: on_morphism(f) for f in source.morphisms},
            name=name,
        )

    @classmethod
    def identity(cls, cat: FinCategory) -> FinFunctor:
        return cls(cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms}, f"1_{cat.name}")

    @classmethod
    def into_codiscrete(
        cls,
        source: FinCategory,
        target: FinCategory,
        on_object: Callable[[Ident], Ident],
        name: str = "",
    ) -> FinFunctor:
        """Extend an object function to a functor into a codiscrete category."""
        objects = {x: on_object(x) for x in source.objects}
        return cls(
            source=source,
            target=target,
            object_map=objects,
            morphism_map={
                f: (objects[src], objects[tgt]) for f, (src, tgt) in source.morphisms.items()
            },
            name=name,
        )


def functor_violations(functor: FinFunctor) -> Iterator[LawViolation]:
    """Yield every way in which ``functor`` fails to be a functor."""
    src, tgt = functor.source, functor.target
    for x in src.objects:
        if not tgt.has_object(functor.object_map.get(x)):
            yield FunctorLawFails(f"{functor.name} sends {x!r} outside {tgt.name}", (x,))
    for f, (a, b) in src.morphisms.items():
        image = functor.morphism_map.get(f)
        if not tgt.has_morphism(image):
            yield FunctorLawFails(f"{functor.name} sends {f!r} outside {tgt.name}", (f,))
            continue
        if tgt.morphisms[image] != (functor.object_map.get(a), functor.object_map.get(b)):
            yield FunctorLawFails(f"{functor.name} does not preserve the ends of {f!r}", (f,))
    for a in src.objects:
        try:
            if functor.mor(src.identity(a)) != tgt.identity(functor.ob(a)):
                yield FunctorLawFails(f"{functor.name} does not preserve the identity of {a!r}", (a,))
        except LawViolation:
            continue
    for g, f in src.composable_pairs():
        try:
            lhs = functor.mor(src.compose(g, f))
            rhs = tgt.compose(functor.mor(g), functor.mor(f))
        except LawViolation:
            continue
        if lhs != rhs:
            yield FunctorLawFails(f"{functor.name} does not preserve {g!r} after {f!r}", (g, f))


def make_fin_functor(
    source: FinCategory,
    target: FinCategory,
    object_map: Mapping[Ident, Ident],
    morphism_map: Mapping[Ident, Ident],
    name: str = "F",
) -> FinFunctor:
    functor = FinFunctor(source, target, dict(object_map), dict(morphism_map), name)
    for violation in functor_violations(functor):
        raise violation
    return functor


def compose_functors(second: FinFunctor, first: FinFunctor) -> FinFunctor:
    """Return ``second`` after ``first``."""
    if first.target is not second.source:
        raise BoundaryMismatch(
            f"cannot compose {second.name} after {first.name}", (second.name, first.name)
        )
    return FinFunctor(
        source=first.source,
        target=second.target,
        object_map={x: second.ob(y) for x, y in first.object_map.items()},
        morphism_map={f: second.mor(g) for f, g in first.morphism_map.items()},
        name=f"{second.name}{first.name}",
    )


# ----------------------------------------------------------------------
# 2-cells
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinNat2Cell:
    """A natural transformation between parallel finite functors."""

    source: FinFunctor
    target: FinFunctor
    components: Mapping[Ident, Ident]
    invertible: bool = False

    def at(self, x: Ident) -> Ident:
        try:
            return self.components[x]
        except KeyError:
            raise BoundaryMismatch(f"no component at {x!r}", (x,)) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinNat2Cell):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.components) == dict(other.components)
        )

    __hash__ = None  # type: ignore[assignment]


def naturality_violations(cell: FinNat2Cell) -> Iterator[LawViolation]:
    first, second = cell.source, cell.target
    if first.source is not second.source or first.target is not second.target:
        yield BoundaryMismatch("2-cell between non-parallel functors", (first.name, second.name))
        return
    domain, codomain = first.source, first.target
    for x in domain.objects:
        component = cell.components.get(x)
        if not codomain.has_morphism(component) or codomain.morphisms[component] != (
            first.ob(x),
            second.ob(x),
        ):
            yield BoundaryMismatch(f"component at {x!r} is ill-typed", (x,))
            return
    for f, (a, b) in domain.morphisms.items():
        lhs = codomain.compose(second.mor(f), cell.components[a])
        rhs = codomain.compose(cell.components[b], first.mor(f))
        if lhs != rhs:
            yield NotNatural(f"naturality square at {f!r} does not commute", (f,))
    if cell.invertible:
        for x in domain.objects:
            if codomain.inverse(cell.components[x]) is None:
                yield NotInvertible(f"component at {x!r} is not invertible", (x,))


def make_nat_2cell(
    source: FinFunctor,
    target: FinFunctor,
    components: Mapping[Ident, Ident],
    invertible: bool = False,
) -> FinNat2Cell:
    cell = FinNat2Cell(source, target, dict(components), invertible)
    for violation in naturality_violations(cell):
        raise violation
    return cell


def identity_2cell(functor: FinFunctor) -> FinNat2Cell:
    return FinNat2Cell(
        functor,
        functor,
        {x: functor.target.identity(functor.ob(x)) for x in functor.source.objects},
        invertible=True,
    )


def vcomp_2cells(beta: FinNat2Cell, alpha: FinNat2Cell) -> FinNat2Cell:
    """Vertical composite: beta after alpha, componentwise."""
    if alpha.target != beta.source:
        raise BoundaryMismatch("vertical composite of non-adjacent 2-cells", ())
    codomain = alpha.source.target
    return FinNat2Cell(
        alpha.source,
        beta.target,
        {x: codomain.compose(beta.at(x), alpha.at(x)) for x in alpha.source.source.objects},
        alpha.invertible and beta.invertible,
    )


def hcomp_2cells(beta: FinNat2Cell, alpha: FinNat2Cell) -> FinNat2Cell:
    """Horizontal composite of alpha: F => F' (X -> Y) and beta: G => G' (Y -> Z)."""
    if alpha.source.target is not beta.source.source:
        raise BoundaryMismatch("horizontal composite of non-composable 2-cells", ())
    outer = beta.source
    codomain = outer.target
    return FinNat2Cell(
        compose_functors(beta.source, alpha.source),
        compose_functors(beta.target, alpha.target),
        {
            x: codomain.compose(beta.at(alpha.target.ob(x)), outer.mor(alpha.at(x)))
            for x in alpha.source.source.objects
        },
        alpha.invertible and beta.invertible,
    )


def whisker(first: FinFunctor | FinNat2Cell, second: FinFunctor | FinNat2Cell) -> FinNat2Cell:
    """Whisker a 2-cell by a functor on either side.

    ``whisker(G, alpha)`` is G alpha with components G(alpha_x);
    ``whisker(alpha, H)`` is alpha H with components alpha_{H x}.
    """
    if isinstance(first, FinFunctor) and isinstance(second, FinNat2Cell):
        if second.source.target is not first.source:
            raise BoundaryMismatch("functor does not follow the 2-cell", (first.name,))
        return FinNat2Cell(
            compose_functors(first, second.source),
            compose_functors(first, second.target),
            {x: first.mor(c) for x, c in second.components.items()},
            second.invertible,
        )
    if isinstance(first, FinNat2Cell) and isinstance(second, FinFunctor):
        if second.target is not first.source.source:
            raise BoundaryMismatch("functor does not precede the 2-cell", (second.name,))
        return FinNat2Cell(
            compose_functors(first.source, second),
            compose_functors(first.target, second),
            {x: first.at(second.ob(x)) for x in second.source.objects},
            first.invertible,
        )
    raise TypeError("whisker expects one functor and one 2-cell")


def two_cells(first: FinFunctor, second: FinFunctor) -> list[FinNat2Cell]:
    """Enumerate every 2-cell between two parallel finite functors."""
    domain, codomain = first.source, first.target
    choices = [codomain.hom(first.ob(x), second.ob(x)) for x in domain.objects]
    cells = []
    for picked in itertools.product(*choices):
        cell = FinNat2Cell(first, second, dict(zip(domain.objects, picked, strict=True)))
        if next(naturality_violations(cell), None) is None:
            cells.append(cell)
    return cells


# ----------------------------------------------------------------------
# Ambient instances
# ----------------------------------------------------------------------


class AmbientKind(str, Enum):
    CAT = "cat"
    SET_DISCRETE = "discrete"
    SET_CODISCRETE = "codiscrete"
    GRP = "grp"


@dataclass(frozen=True)
class Ambient2Cat:
    """Tag selecting which finite 2-category a structure lives in."""

    kind: AmbientKind

    def admits_object(self, cat: FinCategory) -> bool:
        if self.kind is AmbientKind.SET_DISCRETE:
            return all(cat.is_identity(f) for f in cat.morphisms)
        if self.kind is AmbientKind.SET_CODISCRETE:
            return all(len(cat.hom(a, b)) == 1 for a in cat.objects for b in cat.objects)
        if self.kind is AmbientKind.GRP:
            return as_group(cat) is not None
        return True

    def admits_2cell(self, codomain: FinCategory, components: Mapping[Ident, Ident]) -> bool:
        if self.kind is AmbientKind.SET_DISCRETE:
            return all(codomain.is_identity(c) for c in components.values())
        if self.kind is AmbientKind.GRP:
            return as_group(codomain) is not None and all(
                codomain.has_morphism(c) for c in components.values()
            )
        return True


FIN_CAT = Ambient2Cat(AmbientKind.CAT)
FIN_SET_DISCRETE = Ambient2Cat(AmbientKind.SET_DISCRETE)
FIN_SET_CODISCRETE = Ambient2Cat(AmbientKind.SET_CODISCRETE)
FIN_GRP = Ambient2Cat(AmbientKind.GRP)


# ----------------------------------------------------------------------
# Finite groups
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinGroup:
    """A finite group given by its elements and multiplication."""

    name: str
    elements: tuple[Ident, ...]
    operation: Callable[[Ident, Ident], Ident] = field(repr=False)
    neutral: Ident = 0

    @cached_property
    def _inverse_table(self) -> dict[Ident, Ident]:
        table: dict[Ident, Ident] = {}
        for x in self.elements:
            for y in self.elements:
                if self.operation(x, y) == self.neutral:
                    table[x] = y
                    break
        return table

    def mul(self, a: Ident, b: Ident) -> Ident:
        return self.operation(a, b)

    def product(self, *items: Ident) -> Ident:
        result = self.neutral
        for item in items:
            result = self.operation(result, item)
        return result

    def inverse(self, a: Ident) -> Ident:
        try:
            return self._inverse_table[a]
        except KeyError:
            raise GroupAxiomFails(f"{a!r} has no inverse in {self.name}", (a,)) from None

    def conjugate(self, tau: Ident, x: Ident) -> Ident:
        return self.product(tau, x, self.inverse(tau))

    @cached_property
    def category(self) -> FinCategory:
        """The one-object category with the group elements as morphisms."""
        return FinCategory(
            name=self.name,
            objects=("*",),
            morphisms={g: ("*", "*") for g in self.elements},
            identities={"*": self.neutral},
            composer=self.operation,
        )

    @classmethod
    def cyclic(cls, order: int) -> FinGroup:
        return cls(f"Z{order}", tuple(range(order)), lambda a, b: (a + b) % order, 0)

    @classmethod
    def trivial(cls) -> FinGroup:
        return cls("1", (0,), lambda a, b: 0, 0)

    @classmethod
    def symmetric(cls, degree: int) -> FinGroup:
        """Permutations as image tuples; ``mul(p, q)`` applies q first."""
        return cls(
            f"S{degree}",
            tuple(itertools.permutations(range(degree))),
            lambda p, q: tuple(p[i] for i in q),
            tuple(range(degree)),
        )

    @classmethod
    def semidirect(
        cls,
        normal: FinGroup,
        acting: FinGroup,
        action: Callable[[Ident, Ident], Ident],
        name: str | None = None,
    ) -> FinGroup:
        """X semidirect B with (x, b)(x', b') = (x (b . x'), b b')."""

        def operation(left: Ident, right: Ident) -> Ident:
            (x, b), (x2, b2) = left, right  # type: ignore[misc]
            return (normal.mul(x, action(b, x2)), acting.mul(b, b2))

        return cls(
            name or f"{normal.name}x|{acting.name}",
            tuple(itertools.product(normal.elements, acting.elements)),
            operation,
            (normal.neutral, acting.neutral),
        )


def group_violations(group: FinGroup) -> Iterator[LawViolation]:
    members = frozenset(group.elements)
    for a in group.elements:
        if group.mul(group.neutral, a) != a or group.mul(a, group.neutral) != a:
            yield GroupAxiomFails(f"{group.neutral!r} is not neutral for {a!r}", (a,))
        for b in group.elements:
            if group.mul(a, b) not in members:
                yield GroupAxiomFails(f"{a!r}{b!r} leaves {group.name}", (a, b))
    for a, b, c in itertools.product(group.elements, repeat=3):
        if group.mul(a, group.mul(b, c)) != group.mul(group.mul(a, b), c):
            yield GroupAxiomFails("multiplication is not associative", (a, b, c))
    for a in group.elements:
        try:
            group.inverse(a)
        except GroupAxiomFails as exc:
            yield exc


def validate_group(group: FinGroup) -> FinGroup:
    for violation in group_violations(group):
        raise violation
    return group


@lru_cache(maxsize=128)
def as_group(cat: FinCategory) -> FinGroup | None:
    """Read a one-object category as a group, or return None if it is not one.

    The composition table is checked against every group axiom, so a
    trusted table that is not closed or not associative is rejected even when
    each morphism has a two-sided inverse.
    """
    if len(cat.objects) != 1:
        return None
    group = FinGroup(
        cat.name, tuple(cat.morphisms), cat.composer, cat.identities.get(cat.objects[0])
    )
    try:
        if next(group_violations(group), None) is not None:
            return None
    except LawViolation:
        return None
    if any(cat.inverse(f) is None for f in cat.morphisms):
        return None
    return group


@dataclass(frozen=True, eq=False)
class GroupHom:
    """A homomorphism of finite groups."""

    source: FinGroup
    target: FinGroup
    mapping: Mapping[Ident, Ident]
    name: str = ""

    def __call__(self, x: Ident) -> Ident:
        return self.mapping[x]

    @classmethod
    def from_rule(
        cls, source: FinGroup, target: FinGroup, rule: Callable[[Ident], Ident], name: str = ""
    ) -> GroupHom:
        return cls(source, target, {x: rule(x) for x in source.elements}, name)

    @classmethod
    def zero(cls, source: FinGroup, target: FinGroup, name: str = "0") -> GroupHom:
        return cls(source, target, {x: target.neutral for x in source.elements}, name)

    def as_functor(self) -> FinFunctor:
        return FinFunctor(
            self.source.category,
            self.target.category,
            {"*": "*"},
            dict(self.mapping),
            self.name,
        )


def validate_hom(hom: GroupHom) -> GroupHom:
    members = frozenset(hom.target.elements)
    for x in hom.source.elements:
        if hom.mapping.get(x) not in members:
            raise NotHomomorphism(f"{hom.name} sends {x!r} outside {hom.target.name}", (x,))
    for x, y in itertools.product(hom.source.elements, repeat=2):
        if hom(hom.source.mul(x, y)) != hom.target.mul(hom(x), hom(y)):
            raise NotHomomorphism(f"{hom.name} does not preserve {x!r}{y!r}", (x, y))
    return hom


def grp_2cell_check(tau: Ident, first: GroupHom, second: GroupHom) -> bool:
    """True iff ``second(x) = tau first(x) tau^-1`` for every x of the domain."""
    codomain = first.target
    return all(
        second(x) == codomain.conjugate(tau, first(x)) for x in first.source.elements
    )


def group_2cells(first: GroupHom, second: GroupHom) -> list[Ident]:
    return [tau for tau in first.target.elements if grp_2cell_check(tau, first, second)]


# ----------------------------------------------------------------------
# Pullbacks
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PullbackData:
    """The pullback of ``left`` and ``right`` over their common codomain.

    Apex objects and morphisms are pairs ``(x, y)`` with ``left(x) = right(y)``;
    ``pi1`` projects onto the left factor.
    """

    left: FinFunctor
    right: FinFunctor
    apex: FinCategory
    pi1: FinFunctor
    pi2: FinFunctor

    def pair(self, first: FinFunctor, second: FinFunctor) -> FinFunctor:
        """The mediating functor of a commuting cone."""
        if first.source is not second.source:
            raise BoundaryMismatch("cone legs have different domains", (first.name, second.name))
        domain = first.source
        objects = {}
        for w in domain.objects:
            image = (first.ob(w), second.ob(w))
            if not self.apex.has_object(image):
                raise BoundaryMismatch(f"cone does not commute at {w!r}", (w,))
            objects[w] = image
        morphisms = {}
        for f in domain.morphisms:
            image = (first.mor(f), second.mor(f))
            if not self.apex.has_morphism(image):
                raise BoundaryMismatch(f"cone does not commute at {f!r}", (f,))
            morphisms[f] = image
        return FinFunctor(domain, self.apex, objects, morphisms, f"<{first.name},{second.name}>")


def pullback(left: FinFunctor, right: FinFunctor, name: str | None = None) -> PullbackData:
    if left.target is not right.target:
        raise BoundaryMismatch("pullback legs have different codomains", (left.name, right.name))
    lcat, rcat = left.source, right.source

    over_object: dict[Ident, list[Ident]] = {}
    for y in rcat.objects:
        over_object.setdefault(right.ob(y), []).append(y)
    over_morphism: dict[Ident, list[Ident]] = {}
    for v in rcat.morphisms:
        over_morphism.setdefault(right.mor(v), []).append(v)

    objects = tuple((x, y) for x in lcat.objects for y in over_object.get(left.ob(x), ()))
    morphisms = {}
    for u, (us, ut) in lcat.morphisms.items():
        for v in over_morphism.get(left.mor(u), ()):
            vs, vt = rcat.morphisms[v]
            morphisms[(u, v)] = ((us, vs), (ut, vt))

    def composer(g: Ident, f: Ident) -> Ident:
        return (lcat.compose(g[0], f[0]), rcat.compose(g[1], f[1]))  # type: ignore[index]

    apex = FinCategory(
        name=name or f"{lcat.name}x{rcat.name}",
        objects=objects,
        morphisms=morphisms,
        identities={(x, y): (lcat.identity(x), rcat.identity(y)) for x, y in objects},
        composer=composer,
    )
    logger.debug("Pullback %s: %d objects, %d morphisms", apex.name, len(objects), len(morphisms))
    pi1 = FinFunctor(apex, lcat, {o: o[0] for o in objects}, {f: f[0] for f in morphisms}, "pi1")
    pi2 = FinFunctor(apex, rcat, {o: o[1] for o in objects}, {f: f[1] for f in morphisms}, "pi2")
    return PullbackData(left, right, apex, pi1, pi2)


def product_over_base(
    first: FinFunctor, second: FinFunctor, source: PullbackData, target: PullbackData
) -> FinFunctor:
    """The functor ``first x_base second`` between two pullback apexes."""

    def image_of(pair: Ident, on: str) -> Ident:
        x, y = pair  # type: ignore[misc]
        if on == "object":
            result = (first.ob(x), second.ob(y))
            if not target.apex.has_object(result):
                raise BoundaryMismatch(f"{pair!r} leaves the target pullback", (pair,))
        else:
            result = (first.mor(x), second.mor(y))
            if not target.apex.has_morphism(result):
                raise BoundaryMismatch(f"{pair!r} leaves the target pullback", (pair,))
        return result

    return FinFunctor.from_rule(
        source.apex,
        target.apex,
        lambda p: image_of(p, "object"),
        lambda p: image_of(p, "morphism"),
        f"{first.name}x{second.name}",
    )


def chain_objects(
    left: FinFunctor, right: FinFunctor, length: int
) -> Iterator[tuple[Ident, ...]]:
    """Flat chains (x1, ..., xn) of objects with left(x_i) = right(x_{i+1})."""
    cat = left.source
    over: dict[Ident, list[Ident]] = {}
    for y in cat.objects:
        over.setdefault(right.ob(y), []).append(y)

    def extend(chain: tuple[Ident, ...]) -> Iterator[tuple[Ident, ...]]:
        if len(chain) == length:
            yield chain
            return
        for y in over.get(left.ob(chain[-1]), ()):
            yield from extend(chain + (y,))

    for x in cat.objects:
        yield from extend((x,))


def iterated_pullback(
    left: FinFunctor, right: FinFunctor, length: int, name: str | None = None
) -> FinCategory:
    """The category of composable chains of the given length, as flat tuples."""
    if left.source is not right.source or left.target is not right.target:
        raise BoundaryMismatch("iterated pullback needs parallel functors", (left.name, right.name))
    cat = left.source
    over: dict[Ident, list[Ident]] = {}
    for v in cat.morphisms:
        over.setdefault(right.mor(v), []).append(v)

    def extend(chain: tuple[Ident, ...]) -> Iterator[tuple[Ident, ...]]:
        if len(chain) == length:
            yield chain
            return
        for v in over.get(left.mor(chain[-1]), ()):
            yield from extend(chain + (v,))

    objects = tuple(chain_objects(left, right, length))
    morphisms = {}
    for u in cat.morphisms:
        for chain in extend((u,)):
            morphisms[chain] = (
                tuple(cat.source(f) for f in chain),
                tuple(cat.target(f) for f in chain),
            )

    def composer(g: Ident, f: Ident) -> Ident:
        return tuple(cat.compose(a, b) for a, b in zip(g, f, strict=True))  # type: ignore[arg-type]

    return FinCategory(
        name=name or f"{cat.name}^{length}",
        objects=objects,
        morphisms=morphisms,
        identities={chain: tuple(cat.identity(x) for x in chain) for chain in objects},
        composer=composer,
    )
