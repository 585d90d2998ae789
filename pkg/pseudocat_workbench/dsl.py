"""Text format for finite structures (``.pdc`` files).

A document is a sequence of declarations and directives::

    category C { objects A B; arrows f: A -> B; compose g.f = h; }
    pseudocategory P { objects ...; horizontal ...; tensor g*f = h; alpha identity; }
    pseudofunctor F : P -> Q { objects A -> X; horizontal f -> g; mu identity; eps identity; }
    natural th : F => G { objects A = v; horizontal f = phi; }
    pseudonatural T : F => G { objects A = f; tau g = cell; }
    modification M : T => U over th, th2 { objects A = cell; }
    model S = span(2);
    check P;
    compose G F;
    hom P Q;

Identity morphisms are implicit and named ``id_X``.  ``#`` starts a comment.
See docs/dsl.md for the full grammar.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field, replace
from typing import Any

import pyparsing as pp

from pseudocat_workbench.ambient import (
    FIN_CAT,
    FIN_GRP,
    FIN_SET_CODISCRETE,
    FIN_SET_DISCRETE,
    Ambient2Cat,
    FinCategory,
    FinFunctor,
    Ident,
    make_fin_category,
)
from pseudocat_workbench.homclose import (
    point_pseudofunctor,
    product_pseudocategory,
    terminal_pseudocategory,
)
from pseudocat_workbench.models import (
    Precategory,
    codiscrete_pseudocategory,
    cyclic_group_model,
    discrete_pseudocategory,
    group_pseudocategory,
    identity_crossed_module,
    morab_preset,
    morab_pseudocategory,
    negation_group_model,
    span_pseudocategory,
    span_relabel_pseudofunctor,
)
from pseudocat_workbench.pfunctor import (
    PseudoFunctor,
    compose_pseudofunctors,
    identity_pseudofunctor,
)
from pseudocat_workbench.pseudocat import PseudoCategory
from pseudocat_workbench.ptransform import (
    NaturalTransformation,
    PseudoModification,
    PseudoNaturalTransformation,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Errors
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Location:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class DslError(Exception):
    """Raised when a document cannot be turned into structures."""

    def __init__(self, message: str, location: Location | None = None) -> None:
        prefix = f"{location}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.message = message
        self.location = location


class DslSyntaxError(DslError):
    """Raised when the text does not match the grammar."""


class UnresolvedReference(DslError):
    """Raised when a declaration names something that was never declared."""

    def __init__(self, name: str, location: Location | None = None) -> None:
        super().__init__(f"unresolved reference {name!r}", location)
        self.name = name


class DuplicateName(DslError):
    """Raised when a name is declared twice."""

    def __init__(self, name: str, location: Location | None = None) -> None:
        super().__init__(f"duplicate name {name!r}", location)
        self.name = name


# ----------------------------------------------------------------------
# Syntax tree
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Item:
    """One ``keyword entries;`` line inside a block."""

    keyword: str
    entries: tuple[Any, ...]
    location: Location


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    header: tuple[str, ...]
    items: tuple[Item, ...]
    location: Location

    def entries(self, keyword: str) -> Iterator[tuple[Any, Location]]:
        for item in self.items:
            if item.keyword == keyword:
                for entry in item.entries:
                    yield entry, item.location

    def has(self, keyword: str) -> bool:
        return any(item.keyword == keyword for item in self.items)


@dataclass(frozen=True)
class Directive:
    command: str
    arguments: tuple[str, ...]
    location: Location


@dataclass
class Document:
    declarations: list[Declaration] = field(default_factory=list)
    directives: list[Directive] = field(default_factory=list)


# ----------------------------------------------------------------------
# Grammar
# ----------------------------------------------------------------------


def _plain(value: Any) -> Any:
    if isinstance(value, pp.ParseResults):
        return tuple(_plain(v) for v in value)
    return value


def _locate(text: str, loc: int) -> Location:
    return Location(pp.lineno(loc, text), pp.col(loc, text))


def _build_grammar() -> pp.ParserElement:
    LBRACE, RBRACE, SEMI, COLON, COMMA = map(pp.Suppress, "{};:,")
    LPAR, RPAR, EQ, DOT, STAR = map(pp.Suppress, "()=.*")
    LBRACK, RBRACK = map(pp.Suppress, "[]")
    ARROW, DARROW = pp.Suppress("->"), pp.Suppress("=>")
    ident = pp.Word(pp.alphanums + "_'").set_name("identifier")
    K = pp.Keyword

    arrow_decl = pp.Group(ident + COLON + ident + ARROW + ident)
    cell_decl = pp.Group(
        ident + COLON + ident + DARROW + ident + LBRACK + ident + COMMA + ident + RBRACK
    )
    composite = pp.Group(ident + DOT + ident + EQ + ident)
    tensor_eq = pp.Group(ident + STAR + ident + EQ + ident)
    triple_eq = pp.Group(ident + COMMA + ident + COMMA + ident + EQ + ident)
    pair_eq = pp.Group(ident + COMMA + ident + EQ + ident)
    assign = pp.Group(ident + EQ + ident)
    maps_to = pp.Group(ident + ARROW + ident)
    identity_kw = K("identity")

    def item(keyword: str, body: pp.ParserElement) -> pp.ParserElement:
        expr = K(keyword) + body + SEMI

        def action(s: str, loc: int, toks: pp.ParseResults) -> Item:
            return Item(keyword, tuple(_plain(t) for t in toks[1:]), _locate(s, loc))

        return expr.set_parse_action(action)

    def listed(entry: pp.ParserElement) -> pp.ParserElement:
        return pp.DelimitedList(entry)

    def structural(keyword: str, entry: pp.ParserElement) -> pp.ParserElement:
        return item(keyword, identity_kw | listed(entry))

    objects_item = item("objects", pp.OneOrMore(ident))
    category_body = objects_item | item("arrows", listed(arrow_decl)) | item(
        "compose", listed(composite)
    )
    pseudocat_body = (
        objects_item
        | item("vertical", listed(arrow_decl))
        | item("vcompose", listed(composite))
        | item("horizontal", listed(arrow_decl))
        | item("cells", listed(cell_decl))
        | item("ccompose", listed(composite))
        | item("unit", listed(assign))
        | item("unitcell", listed(assign))
        | item("tensor", listed(tensor_eq))
        | item("tensorcell", listed(tensor_eq))
        | structural("alpha", triple_eq)
        | structural("lambda", assign)
        | structural("rho", assign)
        | item("ambient", K("cat") | K("discrete") | K("codiscrete") | K("grp"))
    )
    functor_body = (
        item("objects", listed(maps_to))
        | item("vertical", listed(maps_to))
        | item("horizontal", listed(maps_to))
        | item("cells", listed(maps_to))
        | structural("mu", pair_eq)
        | structural("eps", assign)
    )
    natural_body = item("objects", listed(assign)) | item("horizontal", listed(assign))
    pseudonatural_body = (
        item("objects", listed(assign))
        | item("vertical", listed(assign))
        | item("tau", listed(assign))
    )
    modification_body = item("objects", listed(assign))

    def block(body: pp.ParserElement) -> pp.ParserElement:
        return LBRACE + pp.Group(pp.ZeroOrMore(body)) + RBRACE

    def declaration(kind: str, header: pp.ParserElement, body: pp.ParserElement) -> pp.ParserElement:
        expr = K(kind) + ident + pp.Group(header) + block(body)

        def action(s: str, loc: int, toks: pp.ParseResults) -> Declaration:
            return Declaration(
                kind, toks[1], tuple(_plain(toks[2])), tuple(toks[3]), _locate(s, loc)
            )

        return expr.set_parse_action(action)

    functor_header = COLON + ident + ARROW + ident
    transformation_header = COLON + ident + DARROW + ident
    modification_header = transformation_header + K("over").suppress() + ident + COMMA + ident
    declarations = (
        declaration("category", pp.Empty(), category_body)
        | declaration("pseudocategory", pp.Empty(), pseudocat_body)
        | declaration("pseudofunctor", functor_header, functor_body)
        | declaration("natural", transformation_header, natural_body)
        | declaration("pseudonatural", transformation_header, pseudonatural_body)
        | declaration("modification", modification_header, modification_body)
    )

    model = K("model") + ident + EQ + ident + LPAR + pp.Group(pp.Opt(listed(ident))) + RPAR + SEMI

    def model_action(s: str, loc: int, toks: pp.ParseResults) -> Declaration:
        return Declaration(
            "model", toks[1], (toks[2], *_plain(toks[3])), (), _locate(s, loc)
        )

    model.set_parse_action(model_action)

    def directive(command: str, arity: int) -> pp.ParserElement:
        expr = K(command) + pp.Group(ident * arity) + SEMI

        def action(s: str, loc: int, toks: pp.ParseResults) -> Directive:
            return Directive(command, tuple(_plain(toks[1])), _locate(s, loc))

        return expr.set_parse_action(action)

    directives = directive("check", 1) | directive("compose", 2) | directive("hom", 2)
    document = pp.ZeroOrMore(declarations | model | directives)
    document.ignore(pp.python_style_comment)
    return document


_GRAMMAR: pp.ParserElement | None = None


def parse(text: str) -> Document:
    """Parse a document.

    Raises:
        DslSyntaxError: With the line and column of the first unexpected token
    """
    global _GRAMMAR
    if _GRAMMAR is None:
        _GRAMMAR = _build_grammar()
    try:
        parsed = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise DslSyntaxError(e.msg, Location(e.lineno, e.col)) from e
    document = Document()
    for node in parsed:
        if isinstance(node, Directive):
            document.directives.append(node)
        else:
            document.declarations.append(node)
    logger.debug(
        "Parsed %d declarations, %d directives",
        len(document.declarations),
        len(document.directives),
    )
    return document


# ----------------------------------------------------------------------
# Resolution
# ----------------------------------------------------------------------

_AMBIENTS: dict[str, Ambient2Cat] = {
    "cat": FIN_CAT,
    "discrete": FIN_SET_DISCRETE,
    "codiscrete": FIN_SET_CODISCRETE,
    "grp": FIN_GRP,
}


@dataclass
class Workspace:
    """Every structure declared by a document, by name."""

    categories: dict[str, FinCategory] = field(default_factory=dict)
    pseudocategories: dict[str, PseudoCategory] = field(default_factory=dict)
    functors: dict[str, PseudoFunctor] = field(default_factory=dict)
    naturals: dict[str, NaturalTransformation] = field(default_factory=dict)
    pseudonaturals: dict[str, PseudoNaturalTransformation] = field(default_factory=dict)
    modifications: dict[str, PseudoModification] = field(default_factory=dict)
    directives: list[Directive] = field(default_factory=list)
    # product name -> (left, right) factors, for currying
    factors: dict[str, tuple[PseudoCategory, PseudoCategory]] = field(default_factory=dict)
    _terminal: PseudoCategory | None = None

    def tables(self) -> tuple[dict[str, Any], ...]:
        return (
            self.categories,
            self.pseudocategories,
            self.functors,
            self.naturals,
            self.pseudonaturals,
            self.modifications,
        )

    def lookup(self, name: str, location: Location | None = None) -> Any:
        for table in self.tables():
            if name in table:
                return table[name]
        raise UnresolvedReference(name, location)

    def get(self, table: dict[str, Any], name: str, location: Location | None = None) -> Any:
        try:
            return table[name]
        except KeyError:
            raise UnresolvedReference(name, location) from None

    def declare(self, table: dict[str, Any], name: str, value: Any, location: Location) -> None:
        if any(name in t for t in self.tables()):
            raise DuplicateName(name, location)
        table[name] = value

    @property
    def terminal(self) -> PseudoCategory:
        if self._terminal is None:
            self._terminal = terminal_pseudocategory()
        return self._terminal


def _lookup_entry(table: dict[Ident, Ident], key: Ident, what: str, location: Location) -> Ident:
    try:
        return table[key]
    except KeyError:
        raise UnresolvedReference(f"{what} {key}", location) from None


def _declared(decl: Declaration, keyword: str) -> dict[str, tuple[Any, Location]]:
    found: dict[str, tuple[Any, Location]] = {}
    for entry, location in decl.entries(keyword):
        if entry[0] in found:
            raise DuplicateName(entry[0], location)
        found[entry[0]] = (entry[1:], location)
    return found


def _category(
    decl: Declaration, objects_kw: str, arrows_kw: str, compose_kw: str, name: str
) -> FinCategory:
    objects = tuple(o for o, _ in decl.entries(objects_kw))
    arrows = _declared(decl, arrows_kw)
    return make_fin_category(
        objects,
        {f: (src, tgt) for f, ((src, tgt), _) in arrows.items()},
        {(g, f): h for (g, f, h), _ in decl.entries(compose_kw)},
        {a: f"id_{a}" for a in objects},
        name=name,
    )


def _resolve_category(ws: Workspace, decl: Declaration) -> None:
    cat = _category(decl, "objects", "arrows", "compose", decl.name)
    ws.declare(ws.categories, decl.name, cat, decl.location)


def _structural_rule(
    decl: Declaration, keyword: str, arity: int, default: Callable[..., Ident]
) -> Callable[..., Ident]:
    """Component rule for ``alpha``, ``lambda`` or ``rho``; ``identity`` selects ``default``."""
    if not decl.has(keyword):
        raise UnresolvedReference(keyword, decl.location)
    entries = [entry for entry, _ in decl.entries(keyword)]
    if "identity" in entries:
        return default
    table = {(tuple(e[:arity]) if arity > 1 else e[0]): e[arity] for e in entries}

    def rule(*args: Ident) -> Ident:
        key = tuple(args) if arity > 1 else args[0]
        return _lookup_entry(table, key, keyword, decl.location)

    return rule


def _resolve_pseudocategory(ws: Workspace, decl: Declaration) -> None:
    loc = decl.location
    c0 = _category(decl, "objects", "vertical", "vcompose", f"{decl.name}0")
    horizontal = _declared(decl, "horizontal")
    cells = _declared(decl, "cells")
    c1 = make_fin_category(
        tuple(horizontal),
        {phi: (src, tgt) for phi, ((src, tgt, _d, _c), _) in cells.items()},
        {(g, f): h for (g, f, h), _ in decl.entries("ccompose")},
        {f: f"id_{f}" for f in horizontal},
        name=f"{decl.name}1",
    )

    def end(index: int, label: str) -> FinFunctor:
        objects = {f: spec[index] for f, (spec, _) in horizontal.items()}
        morphisms = {phi: spec[2 + index] for phi, (spec, _) in cells.items()}
        for f, a in objects.items():
            if not c0.has_object(a):
                raise UnresolvedReference(a, loc)
            morphisms[c1.identity(f)] = c0.identity(a)
        return FinFunctor(c1, c0, objects, morphisms, label)

    units = {a: u for (a, u), _ in decl.entries("unit")}
    unit_cells = {v: phi for (v, phi), _ in decl.entries("unitcell")}
    for a in c0.objects:
        unit = _lookup_entry(units, a, "unit of", loc)
        if not c1.has_object(unit):
            raise UnresolvedReference(unit, loc)
        unit_cells.setdefault(c0.identity(a), c1.identity(unit))
    e = FinFunctor(c0, c1, units, _total(unit_cells, c0, decl), "e")

    tensor = {(g, f): h for (g, f, h), _ in decl.entries("tensor")}
    tensor_cells = {(g, f): h for (g, f, h), _ in decl.entries("tensorcell")}
    cell_units = frozenset(c1.identities.values())

    def tensor_rule(g: Ident, f: Ident) -> Ident:
        return _lookup_entry(tensor, (g, f), "tensor", loc)

    def tensor_cell_rule(psi: Ident, phi: Ident) -> Ident:
        if (psi, phi) in tensor_cells:
            return tensor_cells[(psi, phi)]
        if psi in cell_units and phi in cell_units:
            return c1.identity(tensor_rule(c1.source(psi), c1.source(phi)))
        raise UnresolvedReference(f"tensorcell {psi}*{phi}", loc)

    ambient = FIN_CAT
    for entry, _ in decl.entries("ambient"):
        ambient = _AMBIENTS[entry]

    p = PseudoCategory.build(
        decl.name,
        c0,
        c1,
        end(0, "d"),
        end(1, "c"),
        e,
        tensor=tensor_rule,
        tensor_cells=tensor_cell_rule,
        alpha=_structural_rule(
            decl, "alpha", 3, lambda h, g, f: c1.identity(tensor_rule(h, tensor_rule(g, f)))
        ),
        lam=_structural_rule(decl, "lambda", 1, c1.identity),
        rho=_structural_rule(decl, "rho", 1, c1.identity),
        ambient=ambient,
    )
    ws.declare(ws.pseudocategories, decl.name, p, loc)


def _resolve_pseudofunctor(ws: Workspace, decl: Declaration) -> None:
    src = ws.get(ws.pseudocategories, decl.header[0], decl.location)
    tgt = ws.get(ws.pseudocategories, decl.header[1], decl.location)
    points = {a: x for (a, x), _ in decl.entries("objects")}
    verticals = {v: w for (v, w), _ in decl.entries("vertical")}
    arrows = {f: g for (f, g), _ in decl.entries("horizontal")}
    cells = {phi: psi for (phi, psi), _ in decl.entries("cells")}
    for a in src.c0.objects:
        point = _lookup_entry(points, a, "object image", decl.location)
        verticals.setdefault(src.c0.identity(a), tgt.c0.identity(point))
    for f in src.c1.objects:
        arrow = _lookup_entry(arrows, f, "arrow image", decl.location)
        cells.setdefault(src.c1.identity(f), tgt.c1.identity(arrow))
    f0 = FinFunctor(src.c0, tgt.c0, points, _total(verticals, src.c0, decl), f"{decl.name}0")
    f1 = FinFunctor(src.c1, tgt.c1, arrows, _total(cells, src.c1, decl), f"{decl.name}1")

    if any(entry == "identity" for entry, _ in decl.entries("mu")):
        mu = {
            (g, f): tgt.one(arrows[src.tensor(g, f)]) for g, f in src.pairs.apex.objects
        }
    else:
        mu = {(g, f): cell for (g, f, cell), _ in decl.entries("mu")}
    if any(entry == "identity" for entry, _ in decl.entries("eps")):
        eps = {a: tgt.one(arrows[src.unit(a)]) for a in src.c0.objects}
    else:
        eps = {a: cell for (a, cell), _ in decl.entries("eps")}
    F = PseudoFunctor(decl.name, src, tgt, f0, f1, mu, eps)
    ws.declare(ws.functors, decl.name, F, decl.location)


def _total(table: dict[Ident, Ident], cat: FinCategory, decl: Declaration) -> dict[Ident, Ident]:
    for f in cat.morphisms:
        if f not in table:
            raise UnresolvedReference(f"image of {f}", decl.location)
    return table


def _resolve_natural(ws: Workspace, decl: Declaration) -> None:
    F = ws.get(ws.functors, decl.header[0], decl.location)
    G = ws.get(ws.functors, decl.header[1], decl.location)
    theta = NaturalTransformation(
        decl.name,
        F,
        G,
        {a: v for (a, v), _ in decl.entries("objects")},
        {f: phi for (f, phi), _ in decl.entries("horizontal")},
    )
    ws.declare(ws.naturals, decl.name, theta, decl.location)


def _resolve_pseudonatural(ws: Workspace, decl: Declaration) -> None:
    F = ws.get(ws.functors, decl.header[0], decl.location)
    G = ws.get(ws.functors, decl.header[1], decl.location)
    src, tgt = F.source, F.target
    arrows = {a: f for (a, f), _ in decl.entries("objects")}
    cells = {v: phi for (v, phi), _ in decl.entries("vertical")}
    for a in src.c0.objects:
        arrow = _lookup_entry(arrows, a, "component", decl.location)
        cells.setdefault(src.c0.identity(a), tgt.c1.identity(arrow))
    t = FinFunctor(src.c0, tgt.c1, arrows, _total(cells, src.c0, decl), f"{decl.name}.t")
    tau = {f: cell for (f, cell), _ in decl.entries("tau")}
    T = PseudoNaturalTransformation(decl.name, F, G, t, tau)
    ws.declare(ws.pseudonaturals, decl.name, T, decl.location)


def _resolve_modification(ws: Workspace, decl: Declaration) -> None:
    source, target, lower, upper = decl.header
    phi = PseudoModification(
        decl.name,
        ws.get(ws.pseudonaturals, source, decl.location),
        ws.get(ws.pseudonaturals, target, decl.location),
        ws.get(ws.naturals, lower, decl.location),
        ws.get(ws.naturals, upper, decl.location),
        {a: cell for (a, cell), _ in decl.entries("objects")},
    )
    ws.declare(ws.modifications, decl.name, phi, decl.location)


def _int(value: str, location: Location) -> int:
    try:
        return int(value)
    except ValueError:
        raise DslError(f"expected an integer, got {value!r}", location) from None


def _resolve_model(ws: Workspace, decl: Declaration) -> None:
    kind, *args = decl.header
    loc = decl.location

    def arity(n: int) -> None:
        if len(args) != n:
            raise DslError(f"{kind} takes {n} argument(s), got {len(args)}", loc)

    if kind == "span":
        arity(1)
        try:
            spans = span_pseudocategory(_int(args[0], loc), decl.name)
        except ValueError as e:
            raise DslError(str(e), loc) from e
        ws.declare(ws.pseudocategories, decl.name, spans, loc)
    elif kind == "group":
        arity(2)
        model = cyclic_group_model(_int(args[0], loc), _int(args[1], loc))
        ws.declare(ws.pseudocategories, decl.name, group_pseudocategory(model, decl.name), loc)
    elif kind == "negation":
        arity(1)
        model = negation_group_model(_int(args[0], loc))
        ws.declare(ws.pseudocategories, decl.name, group_pseudocategory(model, decl.name), loc)
    elif kind == "peiffer_broken":
        arity(1)
        model = negation_group_model(_int(args[0], loc), boundary_mod_two=True)
        ws.declare(ws.pseudocategories, decl.name, group_pseudocategory(model, decl.name), loc)
    elif kind == "crossed":
        arity(1)
        model = identity_crossed_module(_int(args[0], loc))
        ws.declare(ws.pseudocategories, decl.name, group_pseudocategory(model, decl.name), loc)
    elif kind == "morab":
        arity(1)
        try:
            preset = morab_preset(args[0])
        except ValueError as e:
            raise DslError(str(e), loc) from e
        ws.declare(ws.pseudocategories, decl.name, morab_pseudocategory(preset, decl.name), loc)
    elif kind in ("discrete", "codiscrete"):
        arity(1)
        cat = ws.get(ws.categories, args[0], loc)
        p = (
            discrete_pseudocategory(cat, decl.name)
            if kind == "discrete"
            else codiscrete_pseudocategory(Precategory.from_category(cat), decl.name)
        )
        ws.declare(ws.pseudocategories, decl.name, p, loc)
    elif kind == "terminal":
        arity(0)
        ws.declare(ws.pseudocategories, decl.name, ws.terminal, loc)
    elif kind == "product":
        arity(2)
        left = ws.get(ws.pseudocategories, args[0], loc)
        right = ws.get(ws.pseudocategories, args[1], loc)
        product = product_pseudocategory(left, right, decl.name)
        ws.declare(ws.pseudocategories, decl.name, product, loc)
        ws.factors[decl.name] = (left, right)
    elif kind == "identity":
        arity(1)
        p = ws.get(ws.pseudocategories, args[0], loc)
        F = replace(identity_pseudofunctor(p), name=decl.name)
        ws.declare(ws.functors, decl.name, F, loc)
    elif kind == "relabel":
        if not args:
            raise DslError("relabel needs a span fixture and a permutation", loc)
        spans = ws.get(ws.pseudocategories, args[0], loc)
        perm = tuple(_int(a, loc) for a in args[1:])
        if sorted(perm) != list(range(len(perm))):
            raise DslError(f"{perm} is not a permutation", loc)
        F = span_relabel_pseudofunctor(spans, perm, decl.name)
        ws.declare(ws.functors, decl.name, F, loc)
    elif kind == "point":
        arity(2)
        p = ws.get(ws.pseudocategories, args[0], loc)
        if not p.c0.has_object(args[1]):
            raise UnresolvedReference(args[1], loc)
        F = replace(point_pseudofunctor(p, args[1], ws.terminal), name=decl.name)
        ws.declare(ws.functors, decl.name, F, loc)
    elif kind == "compose":
        arity(2)
        G = ws.get(ws.functors, args[0], loc)
        F = ws.get(ws.functors, args[1], loc)
        GF = replace(compose_pseudofunctors(G, F), name=decl.name)
        ws.declare(ws.functors, decl.name, GF, loc)
    else:
        raise DslError(f"unknown model constructor {kind!r}", loc)


_RESOLVERS = {
    "category": _resolve_category,
    "pseudocategory": _resolve_pseudocategory,
    "pseudofunctor": _resolve_pseudofunctor,
    "natural": _resolve_natural,
    "pseudonatural": _resolve_pseudonatural,
    "modification": _resolve_modification,
    "model": _resolve_model,
}


def resolve(document: Document) -> Workspace:
    """Build every declared structure in declaration order.

    Raises:
        UnresolvedReference: If a declaration names an unknown structure or entry
        DuplicateName: If a name is declared twice
        LawViolation: If a structure cannot be built (e.g. a missing composite)
    """
    ws = Workspace(directives=list(document.directives))
    for decl in document.declarations:
        _RESOLVERS[decl.kind](ws, decl)
    for directive in document.directives:
        for name in directive.arguments:
            ws.lookup(name, directive.location)
    return ws


def load(text: str) -> Workspace:
    return resolve(parse(text))
