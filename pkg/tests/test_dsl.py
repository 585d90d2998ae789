"""Tests for dsl.py - parsing and resolving .pdc documents."""

import pytest

from pseudocat_workbench.ambient import FIN_GRP, FIN_SET_DISCRETE, IllTypedComposite
from pseudocat_workbench.dsl import (
    DslError,
    DslSyntaxError,
    DuplicateName,
    UnresolvedReference,
    load,
    parse,
)
from pseudocat_workbench.models import InvalidAction
from pseudocat_workbench.pfunctor import validate_pseudofunctor
from pseudocat_workbench.pseudocat import validate_pseudocategory
from pseudocat_workbench.ptransform import (
    validate_natural,
    validate_pseudomodification,
    validate_pseudonatural,
)

TWIST = """\
# one object, one arrow, and unitors given by the cell z of order two
pseudocategory Twist {
  objects X;
  horizontal u: X -> X;
  cells z: u => u [id_X, id_X];
  ccompose z.z = id_u;
  unit X = u;
  tensor u*u = u;
  tensorcell z*z = id_u, z*id_u = z, id_u*z = z;
  alpha identity;
  lambda u = z;
  rho u = z;
}
"""

TRANSFORMATIONS = """
pseudofunctor I : Twist -> Twist { objects X -> X; horizontal u -> u; cells z -> z; mu identity; eps identity; }
natural th : I => I { objects X = id_X; horizontal u = id_u; }
pseudonatural T : I => I { objects X = u; tau u = id_u; }
modification M : T => T over th, th { objects X = z; }
check Twist;
compose I I;
"""


def _twist(**changes: str) -> str:
    text = TWIST
    for old, new in changes.items():
        text = text.replace(old, new)
    return text


class TestParse:
    """Tests for the grammar."""

    def test_declarations_and_directives(self):
        document = parse(TWIST + TRANSFORMATIONS)
        assert [d.kind for d in document.declarations] == [
            "pseudocategory",
            "pseudofunctor",
            "natural",
            "pseudonatural",
            "modification",
        ]
        assert [(d.command, d.arguments) for d in document.directives] == [
            ("check", ("Twist",)),
            ("compose", ("I", "I")),
        ]

    def test_locations_skip_comments(self):
        declaration = parse(TWIST).declarations[0]
        assert declaration.location.line == 2
        assert declaration.name == "Twist"

    def test_entries(self):
        declaration = parse(TWIST).declarations[0]
        assert [e for e, _ in declaration.entries("cells")] == [("z", "u", "u", "id_X", "id_X")]
        assert [e for e, _ in declaration.entries("tensorcell")] == [
            ("z", "z", "id_u"),
            ("z", "id_u", "z"),
            ("id_u", "z", "z"),
        ]
        assert [e for e, _ in declaration.entries("alpha")] == ["identity"]

    def test_model_header(self):
        declaration = parse("model G = group(4, 2);").declarations[0]
        assert declaration.kind == "model"
        assert declaration.header == ("group", "4", "2")

    def test_syntax_error_has_a_location(self):
        with pytest.raises(DslSyntaxError) as excinfo:
            parse("category C { objects A; }\ncategory D { objects B }\n")
        assert excinfo.value.location.line == 2
        assert str(excinfo.value).startswith("2:")


class TestResolve:
    """Tests for building structures from declarations."""

    def test_twist_is_a_pseudocategory(self):
        p = load(TWIST).pseudocategories["Twist"]
        assert p.left_unitor("u") == "z"
        assert p.m.mor(("z", "z")) == "id_u"
        assert validate_pseudocategory(p).passed

    def test_disagreeing_unitors_are_reported(self):
        p = load(_twist(**{"rho u = z;": "rho u = id_u;"})).pseudocategories["Twist"]
        report = validate_pseudocategory(p)
        assert report.status("pseudocat.unitors-agree-on-identities") is False

    def test_transformations(self):
        ws = load(TWIST + TRANSFORMATIONS)
        assert validate_pseudofunctor(ws.functors["I"]).passed
        assert validate_natural(ws.naturals["th"]).passed
        assert validate_pseudonatural(ws.pseudonaturals["T"]).passed
        assert validate_pseudomodification(ws.modifications["M"]).passed
        assert ws.modifications["M"].at("X") == "z"

    def test_collapsing_functor_breaks_the_unit_squares(self):
        text = TWIST + (
            "pseudofunctor K : Twist -> Twist "
            "{ objects X -> X; horizontal u -> u; cells z -> id_u; mu identity; eps identity; }"
        )
        report = validate_pseudofunctor(load(text).functors["K"])
        assert report.status("pseudofunctor.f1-functor") is True
        assert report.status("pseudofunctor.left-unit-square") is False

    def test_ambient_keyword(self):
        text = "category C { objects A; }\nmodel D = discrete(C);\n"
        assert load(text).pseudocategories["D"].ambient is FIN_SET_DISCRETE
        twist = load(_twist(**{"alpha identity;": "alpha identity; ambient grp;"}))
        assert twist.pseudocategories["Twist"].ambient is FIN_GRP


class TestResolveErrors:
    """Documents that name or omit things are rejected with a location."""

    def test_missing_alpha(self):
        with pytest.raises(UnresolvedReference, match="alpha"):
            load(_twist(**{"alpha identity;": ""}))

    def test_missing_tensor(self):
        with pytest.raises(UnresolvedReference, match="tensor"):
            load(_twist(**{"tensor u*u = u;": ""}))

    def test_missing_tensor_of_cells(self):
        with pytest.raises(UnresolvedReference, match="tensorcell z\\*z"):
            load(_twist(**{"z*z = id_u, ": ""}))

    def test_duplicate_name(self):
        text = "category C { objects A; }\ncategory C { objects B; }\n"
        with pytest.raises(DuplicateName) as excinfo:
            load(text)
        assert excinfo.value.name == "C"
        assert excinfo.value.location.line == 2

    def test_names_are_unique_across_kinds(self):
        with pytest.raises(DuplicateName):
            load("category C { objects A; }\nmodel C = span(1);\n")

    def test_unknown_directive_target(self):
        with pytest.raises(UnresolvedReference) as excinfo:
            load(TWIST + "check Nope;\n")
        assert excinfo.value.name == "Nope"

    def test_missing_arrow_image(self):
        text = TWIST + "pseudofunctor F : Twist -> Twist { objects X -> X; mu identity; eps identity; }"
        with pytest.raises(UnresolvedReference, match="arrow image"):
            load(text)

    def test_ill_typed_composite(self):
        text = "category C { objects A B; arrows f: A -> B, g: B -> A; compose g.f = f, f.g = id_B; }"
        with pytest.raises(IllTypedComposite) as excinfo:
            load(text)
        assert excinfo.value.witness == ("g", "f")


class TestModels:
    """Tests for ``model`` declarations."""

    def test_built_in_constructors(self):
        ws = load(
            """
            model S = span(1);
            model R = relabel(S, 0);
            model P = point(S, L1);
            model G = group(4, 2);
            model N = negation(2);
            model X = crossed(3);
            model A = morab(zero);
            model One = terminal();
            model GG = product(G, G);
            model Id = identity(G);
            model RR = compose(R, R);
            """
        )
        assert set(ws.pseudocategories) == {"S", "G", "N", "X", "A", "One", "GG"}
        assert set(ws.functors) == {"R", "P", "Id", "RR"}
        assert ws.factors["GG"] == (ws.pseudocategories["G"], ws.pseudocategories["G"])
        assert ws.functors["P"].point("*") == "L1"
        assert ws.pseudocategories["S"].name == "S"
        assert [ws.functors[n].name for n in ("R", "P", "Id", "RR")] == ["R", "P", "Id", "RR"]

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("model G = group(4);", "takes 2"),
            ("model G = group(4, two);", "expected an integer"),
            ("model G = frob(1);", "unknown model constructor"),
            ("model A = morab(nope);", "unknown Mor"),
            ("model S = span(4);", "span size bound"),
            ("model S = span(1);\nmodel R = relabel(S, 0, 0);", "not a permutation"),
        ],
    )
    def test_bad_model(self, text, message):
        with pytest.raises(DslError, match=message):
            load(text)

    def test_point_of_unknown_object(self):
        with pytest.raises(UnresolvedReference):
            load("model S = span(1);\nmodel P = point(S, L9);")

    def test_model_laws_still_apply(self):
        with pytest.raises(InvalidAction):
            load("model B = peiffer_broken(0);")
