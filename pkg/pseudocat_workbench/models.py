"""Concrete pseudo-categories used as fixtures and reachable from the CLI.

Group operations are written multiplicatively; the additive notation of
abelian examples is translated at the constructor boundary.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from functools import cached_property

from pseudocat_workbench.ambient import (
    FIN_CAT,
    FIN_GRP,
    FIN_SET_CODISCRETE,
    FIN_SET_DISCRETE,
    Ambient2Cat,
    BoundaryMismatch,
    FinCategory,
    FinFunctor,
    FinGroup,
    GroupHom,
    Ident,
    LawViolation,
    make_fin_category,
    validate_group,
    validate_hom,
)
from pseudocat_workbench.config import MAX_SPAN_SIZE
from pseudocat_workbench.pfunctor import PseudoFunctor
from pseudocat_workbench.pseudocat import PseudoCategory

logger = logging.getLogger(__name__)


class InvalidAction(LawViolation):
    """Raised when a group action breaks the crossed-module conditions."""

    law_id = "model.group-action"


class DeltaNotInKernel(LawViolation):
    """Raised when the unit element does not lie in the kernel of the boundary map."""

    law_id = "model.delta-in-kernel"


class KLambdaNotZero(LawViolation):
    """Raised when k1 does not annihilate lambda, rho or eta."""

    law_id = "model.k-lambda-zero"


class SquareNotCommutative(LawViolation):
    """Raised when k0 d differs from d' k1."""

    law_id = "model.square-commutes"


class UnitorNotCycle(LawViolation):
    """Raised when the unitor homomorphisms do not produce cells."""

    law_id = "model.unitor-cycle"


# ----------------------------------------------------------------------
# Small categories
# ----------------------------------------------------------------------


def terminal_category() -> FinCategory:
    return make_fin_category(("*",), {}, {}, {"*": "1"}, name="1")


def walking_arrow() -> FinCategory:
    """Two objects and one non-identity arrow f: A -> B."""
    return make_fin_category(
        ("A", "B"), {"f": ("A", "B")}, {}, {"A": "id_A", "B": "id_B"}, name="2"
    )


def discrete_category(name: str, size: int) -> FinCategory:
    objects = tuple(str(i) for i in range(size))
    return make_fin_category(objects, {}, {}, {x: f"id_{x}" for x in objects}, name=name)


# ----------------------------------------------------------------------
# Sets: discrete and codiscrete 2-cells
# ----------------------------------------------------------------------


def discrete_pseudocategory(
    cat: FinCategory, name: str | None = None, ambient: Ambient2Cat = FIN_SET_DISCRETE
) -> PseudoCategory:
    """An ordinary category as a pseudo-category with identity structure cells."""
    c0 = FinCategory.discrete(f"{cat.name}.objects", cat.objects)
    c1 = FinCategory.discrete(f"{cat.name}.arrows", tuple(cat.morphisms))
    d = FinFunctor.from_rule(c1, c0, cat.source, cat.source, "d")
    c = FinFunctor.from_rule(c1, c0, cat.target, cat.target, "c")
    e = FinFunctor.from_rule(c0, c1, cat.identity, cat.identity, "e")
    return PseudoCategory.build(
        name or f"disc({cat.name})",
        c0,
        c1,
        d,
        c,
        e,
        tensor=cat.compose,
        tensor_cells=cat.compose,
        alpha=lambda h, g, f: cat.compose(h, cat.compose(g, f)),
        lam=lambda f: f,
        rho=lambda f: f,
        ambient=ambient,
    )


@dataclass(frozen=True)
class Precategory:
    """A reflexive graph with a composition that need not be associative or unital."""

    name: str
    objects: tuple[Ident, ...]
    arrows: Mapping[Ident, tuple[Ident, Ident]]
    units: Mapping[Ident, Ident]
    composition: Mapping[tuple[Ident, Ident], Ident]

    @classmethod
    def from_category(cls, cat: FinCategory) -> Precategory:
        return cls(
            cat.name,
            cat.objects,
            dict(cat.morphisms),
            dict(cat.identities),
            {(g, f): cat.compose(g, f) for g, f in cat.composable_pairs()},
        )


def codiscrete_pseudocategory(pre: Precategory, name: str | None = None) -> PseudoCategory:
    """A precategory with the unique codiscrete 2-cells as alpha, lambda and rho.

    Raises:
        BoundaryMismatch: If units or composites have the wrong ends
    """
    for a, unit in pre.units.items():
        if pre.arrows.get(unit) != (a, a):
            raise BoundaryMismatch(f"unit {unit!r} is not an arrow {a!r} -> {a!r}", (a,))
    for g, (g_src, g_tgt) in pre.arrows.items():
        for f, (f_src, f_tgt) in pre.arrows.items():
            if f_tgt != g_src:
                continue
            h = pre.composition.get((g, f))
            if h is None or pre.arrows.get(h) != (f_src, g_tgt):
                raise BoundaryMismatch(f"composite of {g!r} after {f!r} is ill-typed", (g, f))

    c0 = FinCategory.codiscrete(f"{pre.name}.objects", pre.objects)
    c1 = FinCategory.codiscrete(f"{pre.name}.arrows", tuple(pre.arrows))
    d = FinFunctor.into_codiscrete(c1, c0, lambda f: pre.arrows[f][0], "d")
    c = FinFunctor.into_codiscrete(c1, c0, lambda f: pre.arrows[f][1], "c")
    e = FinFunctor.into_codiscrete(c0, c1, lambda a: pre.units[a], "e")

    def tensor(g: Ident, f: Ident) -> Ident:
        return pre.composition[(g, f)]

    def tensor_cells(psi: Ident, phi: Ident) -> Ident:
        return (tensor(psi[0], phi[0]), tensor(psi[1], phi[1]))  # type: ignore[index]

    return PseudoCategory.build(
        name or f"codisc({pre.name})",
        c0,
        c1,
        d,
        c,
        e,
        tensor=tensor,
        tensor_cells=tensor_cells,
        alpha=lambda h, g, f: (tensor(h, tensor(g, f)), tensor(tensor(h, g), f)),
        lam=lambda f: (tensor(pre.units[pre.arrows[f][1]], f), f),
        rho=lambda f: (tensor(f, pre.units[pre.arrows[f][0]]), f),
        ambient=FIN_SET_CODISCRETE,
    )


# ----------------------------------------------------------------------
# Groups
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupModel:
    """A homomorphism d: X -> B, an action of B on X and delta in ker d."""

    normal: FinGroup
    base: FinGroup
    boundary: GroupHom
    delta: Ident
    action: Callable[[Ident, Ident], Ident]

    @cached_property
    def semidirect(self) -> FinGroup:
        return FinGroup.semidirect(self.normal, self.base, self.action)


def validate_group_model(gm: GroupModel) -> GroupModel:
    """Check the crossed-module conditions and delta in ker d exhaustively.

    Raises:
        InvalidAction: If the action is not by automorphisms, or equivariance
            or the Peiffer identity fails
        DeltaNotInKernel: If d(delta) is not neutral
    """
    x_group, b_group, boundary, act = gm.normal, gm.base, gm.boundary, gm.action
    validate_group(x_group)
    validate_group(b_group)
    validate_hom(boundary)
    members = frozenset(x_group.elements)
    for b in b_group.elements:
        images = [act(b, x) for x in x_group.elements]
        if frozenset(images) != members or len(set(images)) != len(images):
            raise InvalidAction(f"{b!r} does not act bijectively", (b,))
        for x, y in itertools.product(x_group.elements, repeat=2):
            if act(b, x_group.mul(x, y)) != x_group.mul(act(b, x), act(b, y)):
                raise InvalidAction(f"{b!r} does not act by automorphisms", (b, x, y))
    for x in x_group.elements:
        if act(b_group.neutral, x) != x:
            raise InvalidAction("the neutral element does not act trivially", (x,))
    for b, b2, x in itertools.product(b_group.elements, b_group.elements, x_group.elements):
        if act(b_group.mul(b, b2), x) != act(b, act(b2, x)):
            raise InvalidAction("the action does not respect products", (b, b2, x))
    for b, x in itertools.product(b_group.elements, x_group.elements):
        if boundary(act(b, x)) != b_group.conjugate(b, boundary(x)):
            raise InvalidAction("the boundary map is not equivariant", (b, x))
    for x, y in itertools.product(x_group.elements, repeat=2):
        if act(boundary(x), y) != x_group.conjugate(x, y):
            raise InvalidAction("the Peiffer identity fails", (x, y))
    if gm.delta not in members or boundary(gm.delta) != b_group.neutral:
        raise DeltaNotInKernel(f"d({gm.delta!r}) is not neutral", (gm.delta,))
    return gm


def group_pseudocategory(gm: GroupModel, name: str = "grp") -> PseudoCategory:
    """Objects are elements of B and arrows (x, b): b -> d(x) b.

    Composition is ``(x', d(x) b) (x, b) = (x' x delta^-1 (b . delta), b)``; alpha
    is the identity and both unitors are the element (delta, 1) of X x| B.
    """
    validate_group_model(gm)
    x_group, b_group, act = gm.normal, gm.base, gm.action
    semi = gm.semidirect
    delta_inverse = x_group.inverse(gm.delta)

    d = GroupHom.from_rule(semi, b_group, lambda xb: xb[1], "d")
    c = GroupHom.from_rule(semi, b_group, lambda xb: b_group.mul(gm.boundary(xb[0]), xb[1]), "c")
    e = GroupHom.from_rule(b_group, semi, lambda b: (x_group.neutral, b), "e")

    def tensor_cells(later: Ident, earlier: Ident) -> Ident:
        x2, _b2 = later  # type: ignore[misc]
        x, b = earlier  # type: ignore[misc]
        return (x_group.product(x2, x, delta_inverse, act(b, gm.delta)), b)

    unit_cell = (gm.delta, b_group.neutral)
    return PseudoCategory.build(
        name,
        b_group.category,
        semi.category,
        d.as_functor(),
        c.as_functor(),
        e.as_functor(),
        tensor=lambda g, f: "*",
        tensor_cells=tensor_cells,
        alpha=lambda h, g, f: semi.neutral,
        lam=lambda f: unit_cell,
        rho=lambda f: unit_cell,
        ambient=FIN_GRP,
    )


def cyclic_group_model(order: int, delta: int) -> GroupModel:
    """X = Z_order over the trivial group, with trivial action."""
    x_group, b_group = FinGroup.cyclic(order), FinGroup.trivial()
    return GroupModel(
        x_group, b_group, GroupHom.zero(x_group, b_group, "d"), delta, lambda b, x: x
    )


def negation_group_model(delta: int, boundary_mod_two: bool = False) -> GroupModel:
    """X = Z4 with B = Z2 acting by negation.

    With ``boundary_mod_two`` the boundary map is reduction mod 2, which
    breaks the Peiffer identity.
    """
    x_group, b_group = FinGroup.cyclic(4), FinGroup.cyclic(2)
    if boundary_mod_two:
        boundary = GroupHom.from_rule(x_group, b_group, lambda x: x % 2, "d")
    else:
        boundary = GroupHom.zero(x_group, b_group, "d")
    return GroupModel(
        x_group, b_group, boundary, delta, lambda b, x: (-x) % 4 if b else x
    )


def identity_crossed_module(order: int) -> GroupModel:
    """The identity map of Z_order with trivial action and delta neutral."""
    x_group, b_group = FinGroup.cyclic(order), FinGroup.cyclic(order)
    return GroupModel(
        x_group, b_group, GroupHom.from_rule(x_group, b_group, lambda x: x, "d"), 0, lambda b, x: x
    )


# ----------------------------------------------------------------------
# Morphisms of abelian groups
# ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MorAbModel:
    """A commutative square of abelian groups with unitor data.

    ``boundary: A1 -> A0``, ``base_boundary: B1 -> B0``, ``k1: A1 -> B1``,
    ``k0: A0 -> B0``; ``lam, rho: A0 -> A1`` and ``eta: B0 -> A1``.
    """

    a1: FinGroup
    a0: FinGroup
    b1: FinGroup
    b0: FinGroup
    boundary: GroupHom
    base_boundary: GroupHom
    k1: GroupHom
    k0: GroupHom
    lam: GroupHom
    rho: GroupHom
    eta: GroupHom


def validate_morab_model(mm: MorAbModel) -> MorAbModel:
    """Raises:
        SquareNotCommutative: If k0 d differs from d' k1
        KLambdaNotZero: If k1 lambda, k1 rho or k1 eta is non-zero
        UnitorNotCycle: If the unitor data does not produce cells
    """
    for group in (mm.a1, mm.a0, mm.b1, mm.b0):
        validate_group(group)
    for hom in (mm.boundary, mm.base_boundary, mm.k1, mm.k0, mm.lam, mm.rho, mm.eta):
        validate_hom(hom)
    for y in mm.a1.elements:
        if mm.k0(mm.boundary(y)) != mm.base_boundary(mm.k1(y)):
            raise SquareNotCommutative(f"k0 d and d' k1 differ at {y!r}", (y,))
    for label, hom in (("lambda", mm.lam), ("rho", mm.rho), ("eta", mm.eta)):
        for x in hom.source.elements:
            if mm.k1(hom(x)) != mm.b1.neutral:
                raise KLambdaNotZero(f"k1 {label} is non-zero at {x!r}", (label, x))
            if mm.boundary(hom(x)) != mm.a0.neutral:
                raise UnitorNotCycle(f"d {label} is non-zero at {x!r}", (label, x))
    for label, hom in (("lambda", mm.lam), ("rho", mm.rho)):
        for y in mm.a1.elements:
            if hom(mm.boundary(y)) != mm.a1.neutral:
                raise UnitorNotCycle(f"{label} d is non-zero at {y!r}", (label, y))
    for d in mm.b1.elements:
        if mm.eta(mm.base_boundary(d)) != mm.a1.neutral:
            raise UnitorNotCycle(f"eta d' is non-zero at {d!r}", ("eta", d))
    return mm


def morab_pseudocategory(mm: MorAbModel, name: str = "morab") -> PseudoCategory:
    """Objects b, vertical arrows (b, d), horizontal arrows (b, x) and squares (b, x, d, y).

    The square (b, x, d, y) has top (b, x), left (b, d), bottom
    (b + d'(d), x + d(y)) and right (b + k0(x), d + k1(y)).
    """
    validate_morab_model(mm)
    a0, a1, b0, b1 = mm.a0, mm.a1, mm.b0, mm.b1

    c0 = FinCategory(
        name=f"{name}.vertical",
        objects=b0.elements,
        morphisms={
            (b, d): (b, b0.mul(b, mm.base_boundary(d)))
            for b in b0.elements
            for d in b1.elements
        },
        identities={b: (b, b1.neutral) for b in b0.elements},
        composer=lambda g, f: (f[0], b1.mul(f[1], g[1])),
    )
    c1 = FinCategory(
        name=f"{name}.squares",
        objects=tuple(itertools.product(b0.elements, a0.elements)),
        morphisms={
            (b, x, d, y): (
                (b, x),
                (b0.mul(b, mm.base_boundary(d)), a0.mul(x, mm.boundary(y))),
            )
            for b, x, d, y in itertools.product(b0.elements, a0.elements, b1.elements, a1.elements)
        },
        identities={
            (b, x): (b, x, b1.neutral, a1.neutral) for b in b0.elements for x in a0.elements
        },
        composer=lambda g, f: (f[0], f[1], b1.mul(f[2], g[2]), a1.mul(f[3], g[3])),
    )
    d = FinFunctor.from_rule(c1, c0, lambda h: h[0], lambda s: (s[0], s[2]), "d")
    c = FinFunctor.from_rule(
        c1,
        c0,
        lambda h: b0.mul(h[0], mm.k0(h[1])),
        lambda s: (b0.mul(s[0], mm.k0(s[1])), b1.mul(s[2], mm.k1(s[3]))),
        "c",
    )
    e = FinFunctor.from_rule(
        c0, c1, lambda b: (b, a0.neutral), lambda v: (v[0], a0.neutral, v[1], a1.neutral), "e"
    )

    def unitor(hom: GroupHom) -> Callable[[Ident], Ident]:
        def component(h: Ident) -> Ident:
            b, x = h  # type: ignore[misc]
            return (b, x, b1.neutral, a1.mul(hom(x), mm.eta(b)))

        return component

    return PseudoCategory.build(
        name,
        c0,
        c1,
        d,
        c,
        e,
        tensor=lambda g, f: (f[0], a0.mul(f[1], g[1])),
        tensor_cells=lambda g, f: (f[0], a0.mul(f[1], g[1]), f[2], a1.mul(f[3], g[3])),
        alpha=lambda h, g, f: (f[0], a0.product(f[1], g[1], h[1]), b1.neutral, a1.neutral),
        lam=unitor(mm.lam),
        rho=unitor(mm.rho),
        ambient=FIN_CAT,
    )


def morab_preset(preset: str) -> MorAbModel:
    """Named Mor(Ab) fixtures: ``zero``, ``z2z4`` and ``klambda``."""
    z2, z4 = FinGroup.cyclic(2), FinGroup.cyclic(4)
    zero = GroupHom.zero
    if preset == "zero":
        return MorAbModel(
            z2, z2, z2, z2, zero(z2, z2), zero(z2, z2), zero(z2, z2), zero(z2, z2),
            zero(z2, z2), zero(z2, z2), zero(z2, z2),
        )
    if preset == "z2z4":
        return MorAbModel(
            z2,
            z2,
            z2,
            z4,
            zero(z2, z2, "d"),
            zero(z2, z4, "d'"),
            zero(z2, z2, "k1"),
            GroupHom.from_rule(z2, z4, lambda x: (2 * x) % 4, "k0"),
            zero(z2, z2, "lambda"),
            zero(z2, z2, "rho"),
            GroupHom.from_rule(z4, z2, lambda b: b % 2, "eta"),
        )
    if preset == "klambda":
        ident = GroupHom.from_rule(z2, z2, lambda x: x, "1")
        return MorAbModel(
            z2, z2, z2, z2, zero(z2, z2), zero(z2, z2), ident, zero(z2, z2),
            ident, zero(z2, z2), zero(z2, z2),
        )
    raise ValueError(f"unknown Mor(Ab) preset {preset!r}")


# ----------------------------------------------------------------------
# Spans
# ----------------------------------------------------------------------

Perm = tuple[int, ...]
ApexElement = tuple[int, int, int]


def _compose_perm(second: Perm, first: Perm) -> Perm:
    return tuple(second[i] for i in first)


def _invert_perm(perm: Perm) -> Perm:
    inverse = [0] * len(perm)
    for i, image in enumerate(perm):
        inverse[image] = i
    return tuple(inverse)


@dataclass(frozen=True, eq=False)
class SpanFixture:
    """Spans between the level sets L0 = {0}, L1 = L2 = {0..n-1}, L3 = {0}.

    A span from level i to level j (i <= j) is stored in normal form by its
    multiplicity matrix; apex elements are triples (a, c, k) with
    ``k < N(a, c)`` and the legs are the first two coordinates.  Composite
    apexes number the pullback pairs of each block in lexicographic order of
    (later element, earlier element).

    The fixture is a finite sub-double-category of spans of finite sets: one
    span per pair of levels and only the cells that fix a span.  The family
    is closed under pullback composition (S_jk after S_ij is S_ik, with the
    apex of S_ik numbering the actual pullback pairs), so alpha, lambda and
    rho are the genuine reassociation and unit bijections.  Spans between
    sets of bounded size still have apexes of unbounded size, so the full
    collection is infinite and cannot be tabulated.
    """

    size: int

    @cached_property
    def levels(self) -> tuple[tuple[int, ...], ...]:
        n = self.size
        return ((0,), tuple(range(n)), tuple(range(n)), (0,))

    def level_name(self, i: int) -> str:
        return f"L{i}"

    def span_name(self, i: int, j: int) -> str:
        return f"S{i}{j}"

    @cached_property
    def span_levels(self) -> dict[str, tuple[int, int]]:
        return {self.span_name(i, j): (i, j) for i in range(4) for j in range(i, 4)}

    def _generator(self, i: int) -> dict[tuple[int, int], int]:
        n = self.size
        if i == 0:
            return {(0, b): 1 for b in range(n)}
        if i == 1:
            return {(a, b): 1 if b == n - 1 - a else 0 for a in range(n) for b in range(n)}
        return {(b, 0): 1 for b in range(n)}

    @cached_property
    def matrices(self) -> dict[tuple[int, int], dict[tuple[int, int], int]]:
        levels = self.levels
        found: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
        for i in range(4):
            found[(i, i)] = {(a, c): int(a == c) for a in levels[i] for c in levels[i]}
            for j in range(i + 1, 4):
                earlier, step = found[(i, j - 1)], self._generator(j - 1)
                found[(i, j)] = {
                    (a, c): sum(earlier[(a, b)] * step[(b, c)] for b in levels[j - 1])
                    for a in levels[i]
                    for c in levels[j]
                }
        return found

    def apex(self, i: int, j: int) -> tuple[ApexElement, ...]:
        return self._apexes[(i, j)]

    @cached_property
    def _apexes(self) -> dict[tuple[int, int], tuple[ApexElement, ...]]:
        return {
            key: tuple(sorted((a, c, k) for (a, c), count in matrix.items() for k in range(count)))
            for key, matrix in self.matrices.items()
        }

    @cached_property
    def _positions(self) -> dict[tuple[int, int], dict[ApexElement, int]]:
        return {
            key: {element: idx for idx, element in enumerate(elements)}
            for key, elements in self._apexes.items()
        }

    def position(self, i: int, j: int, element: ApexElement) -> int:
        return self._positions[(i, j)][element]

    def composite(
        self, i: int, j: int, k: int
    ) -> tuple[dict[tuple[ApexElement, ApexElement], ApexElement], dict[ApexElement, tuple[ApexElement, ApexElement]]]:
        """Label the pullback of S_jk after S_ij by elements of the apex of S_ik."""
        return self._composites(i, j, k)

    def _composites(self, i: int, j: int, k: int) -> tuple[dict, dict]:
        cache = self.__dict__.setdefault("_composite_cache", {})
        if (i, j, k) in cache:
            return cache[(i, j, k)]
        blocks: dict[tuple[int, int], list[tuple[ApexElement, ApexElement]]] = {}
        for x in self.apex(j, k):
            for y in self.apex(i, j):
                if x[0] == y[1]:
                    blocks.setdefault((y[0], x[1]), []).append((x, y))
        label: dict[tuple[ApexElement, ApexElement], ApexElement] = {}
        for (a, c), members in blocks.items():
            for rank, pair in enumerate(sorted(members)):
                label[pair] = (a, c, rank)
        result = (label, {v: p for p, v in label.items()})
        cache[(i, j, k)] = result
        return result

    def cells(self, i: int, j: int) -> list[tuple[str, Perm, Perm, Perm]]:
        """Every cell (h, k, l) from S_ij to itself."""
        matrix = self.matrices[(i, j)]
        elements = self.apex(i, j)
        found = []
        for h in itertools.permutations(range(len(self.levels[i]))):
            for l_perm in itertools.permutations(range(len(self.levels[j]))):
                if any(matrix[(h[a], l_perm[c])] != count for (a, c), count in matrix.items()):
                    continue
                blocks = [(a, c) for (a, c), count in matrix.items() if count]
                choices = [
                    itertools.permutations(range(matrix[block])) for block in blocks
                ]
                for picked in itertools.product(*choices):
                    shuffle = dict(zip(blocks, picked, strict=True))
                    k_map = tuple(
                        self.position(i, j, (h[a], l_perm[c], shuffle[(a, c)][r]))
                        for a, c, r in elements
                    )
                    found.append((self.span_name(i, j), h, k_map, l_perm))
        return found


def span_pseudocategory(size_bound: int, name: str | None = None) -> PseudoCategory:
    """Spans of finite sets composed by pullback, in normal form.

    Vertical morphisms are permutations of a level, horizontal arrows are the
    spans S_ij (i <= j) and cells are triples (h, k, l) acting on apexes.
    alpha is the reassociation bijection of iterated pullbacks, which is not
    the identity once ``size_bound >= 2``.
    """
    if not 1 <= size_bound <= MAX_SPAN_SIZE:
        raise ValueError(f"span size bound must lie in 1..{MAX_SPAN_SIZE}, got {size_bound}")
    fx = SpanFixture(size_bound)
    levels, lvl = fx.levels, fx.span_levels
    level_index = {fx.level_name(i): i for i in range(4)}

    c0 = FinCategory(
        name=f"span{size_bound}.vertical",
        objects=tuple(fx.level_name(i) for i in range(4)),
        morphisms={
            (fx.level_name(i), perm): (fx.level_name(i), fx.level_name(i))
            for i in range(4)
            for perm in itertools.permutations(range(len(levels[i])))
        },
        identities={fx.level_name(i): (fx.level_name(i), tuple(range(len(levels[i])))) for i in range(4)},
        composer=lambda g, f: (f[0], _compose_perm(g[1], f[1])),
    )
    cells = [cell for (i, j) in sorted(fx.matrices) if i <= j for cell in fx.cells(i, j)]
    c1 = FinCategory(
        name=f"span{size_bound}.cells",
        objects=tuple(fx.span_name(i, j) for i in range(4) for j in range(i, 4)),
        morphisms={cell: (cell[0], cell[0]) for cell in cells},
        identities={
            fx.span_name(i, j): (
                fx.span_name(i, j),
                tuple(range(len(levels[i]))),
                tuple(range(len(fx.apex(i, j)))),
                tuple(range(len(levels[j]))),
            )
            for i in range(4)
            for j in range(i, 4)
        },
        composer=lambda g, f: (
            f[0],
            _compose_perm(g[1], f[1]),
            _compose_perm(g[2], f[2]),
            _compose_perm(g[3], f[3]),
        ),
    )
    d = FinFunctor.from_rule(
        c1, c0, lambda s: fx.level_name(lvl[s][0]), lambda u: (fx.level_name(lvl[u[0]][0]), u[1]), "d"
    )
    c = FinFunctor.from_rule(
        c1, c0, lambda s: fx.level_name(lvl[s][1]), lambda u: (fx.level_name(lvl[u[0]][1]), u[3]), "c"
    )

    def unit_cell(v: Ident) -> Ident:
        i = level_index[v[0]]  # type: ignore[index]
        h: Perm = v[1]  # type: ignore[index]
        k_map = tuple(fx.position(i, i, (h[a], h[a], 0)) for a, _c, _k in fx.apex(i, i))
        return (fx.span_name(i, i), h, k_map, h)

    e = FinFunctor.from_rule(
        c0, c1, lambda a: fx.span_name(level_index[a], level_index[a]), unit_cell, "e"
    )

    def tensor(g: Ident, f: Ident) -> Ident:
        return fx.span_name(lvl[f][0], lvl[g][1])

    def tensor_cells(psi: Ident, phi: Ident) -> Ident:
        j, k = lvl[psi[0]]  # type: ignore[index]
        i, _ = lvl[phi[0]]  # type: ignore[index]
        label, pairs = fx.composite(i, j, k)
        later, earlier = fx.apex(j, k), fx.apex(i, j)
        k_map = []
        for element in fx.apex(i, k):
            x, y = pairs[element]
            image = (later[psi[2][fx.position(j, k, x)]], earlier[phi[2][fx.position(i, j, y)]])
            k_map.append(fx.position(i, k, label[image]))
        return (fx.span_name(i, k), phi[1], tuple(k_map), psi[3])

    def alpha(u: Ident, t: Ident, s: Ident) -> Ident:
        k, l_level = lvl[u]
        j, _ = lvl[t]
        i, _ = lvl[s]
        outer_right, pairs_right = fx.composite(i, k, l_level)
        _, inner_right = fx.composite(i, j, k)
        left_label, _ = fx.composite(j, k, l_level)
        outer_left, _ = fx.composite(i, j, l_level)
        k_map = []
        for element in fx.apex(i, l_level):
            x_u, v = pairs_right[element]
            x_t, x_s = inner_right[v]
            w = left_label[(x_u, x_t)]
            k_map.append(fx.position(i, l_level, outer_left[(w, x_s)]))
        return (
            fx.span_name(i, l_level),
            tuple(range(len(levels[i]))),
            tuple(k_map),
            tuple(range(len(levels[l_level]))),
        )

    def unitor(side: str) -> Callable[[Ident], Ident]:
        def component(f: Ident) -> Ident:
            i, j = lvl[f]
            if side == "left":
                _, pairs = fx.composite(i, j, j)
                pick = 1
            else:
                _, pairs = fx.composite(i, i, j)
                pick = 0
            k_map = tuple(
                fx.position(i, j, pairs[element][pick]) for element in fx.apex(i, j)
            )
            return (f, tuple(range(len(levels[i]))), k_map, tuple(range(len(levels[j]))))

        return component

    logger.debug("Span fixture of size %d: %d cells", size_bound, len(cells))
    return PseudoCategory.build(
        name or f"span{size_bound}",
        c0,
        c1,
        d,
        c,
        e,
        tensor=tensor,
        tensor_cells=tensor_cells,
        alpha=alpha,
        lam=unitor("left"),
        rho=unitor("right"),
        ambient=FIN_CAT,
    )


def span_relabel_pseudofunctor(
    spans: PseudoCategory, permutation: Perm, name: str | None = None
) -> PseudoFunctor:
    """Direct image of the span fixture along a bijection of the base sets.

    ``permutation`` acts on L1; L2 is permuted compatibly with the
    anti-diagonal span and L0, L3 are fixed.  Apex elements are transported
    with their labels, so the comparison mu re-sorts composite apexes and is
    not the identity in general.
    """
    size = len(permutation)
    fx = SpanFixture(size)
    if spans.c0.objects != tuple(fx.level_name(i) for i in range(4)) or len(
        spans.c0.hom("L1", "L1")
    ) != len(list(itertools.permutations(range(size)))):
        raise BoundaryMismatch("relabelling needs the span fixture of the same size", (spans.name,))
    lvl = fx.span_levels
    reverse = tuple(range(size - 1, -1, -1))
    moves: dict[int, Perm] = {
        0: (0,),
        1: permutation,
        2: _compose_perm(reverse, _compose_perm(permutation, reverse)),
        3: (0,),
    }
    level_index = {fx.level_name(i): i for i in range(4)}

    def conj(i: int, perm: Perm) -> Perm:
        return _compose_perm(moves[i], _compose_perm(perm, _invert_perm(moves[i])))

    def relabel(i: int, j: int, element: ApexElement) -> ApexElement:
        a, c, k = element
        return (moves[i][a], moves[j][c], k)

    def on_cell(cell: Ident) -> Ident:
        span, h, k_map, l_perm = cell  # type: ignore[misc]
        i, j = lvl[span]
        elements = fx.apex(i, j)
        new_k = [0] * len(elements)
        for idx, element in enumerate(elements):
            source = fx.position(i, j, relabel(i, j, element))
            image = fx.position(i, j, relabel(i, j, elements[k_map[idx]]))
            new_k[source] = image
        return (span, conj(i, h), tuple(new_k), conj(j, l_perm))

    f0 = FinFunctor.from_rule(
        spans.c0, spans.c0, lambda a: a, lambda v: (v[0], conj(level_index[v[0]], v[1])), "R0"
    )
    f1 = FinFunctor.from_rule(spans.c1, spans.c1, lambda s: s, on_cell, "R1")

    def comparison(g: Ident, f: Ident) -> Ident:
        j, k = lvl[g]
        i, _ = lvl[f]
        label, pairs = fx.composite(i, j, k)
        k_map = [0] * len(fx.apex(i, k))
        for element in fx.apex(i, k):
            x, y = pairs[element]
            source = fx.position(i, k, relabel(i, k, element))
            target = label[(relabel(j, k, x), relabel(i, j, y))]
            k_map[source] = fx.position(i, k, target)
        return (
            fx.span_name(i, k),
            tuple(range(len(fx.levels[i]))),
            tuple(k_map),
            tuple(range(len(fx.levels[k]))),
        )

    return PseudoFunctor(
        name=name or f"relabel{permutation}",
        source=spans,
        target=spans,
        f0=f0,
        f1=f1,
        mu={(g, f): comparison(g, f) for g, f in spans.pairs.apex.objects},
        eps={a: spans.one(spans.unit(a)) for a in spans.c0.objects},
    )
