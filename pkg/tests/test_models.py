"""Tests for models.py - the fixture pseudo-categories and their constructor checks."""

import itertools

import pytest

from pseudocat_workbench.ambient import BoundaryMismatch, FinGroup, GroupHom
from pseudocat_workbench.models import (
    DeltaNotInKernel,
    GroupModel,
    InvalidAction,
    KLambdaNotZero,
    MorAbModel,
    Precategory,
    SpanFixture,
    SquareNotCommutative,
    UnitorNotCycle,
    codiscrete_pseudocategory,
    cyclic_group_model,
    discrete_category,
    group_pseudocategory,
    identity_crossed_module,
    morab_preset,
    morab_pseudocategory,
    negation_group_model,
    span_pseudocategory,
    span_relabel_pseudofunctor,
    terminal_category,
)
from pseudocat_workbench.pfunctor import validate_pseudofunctor
from pseudocat_workbench.pseudocat import validate_pseudocategory


def _precategory(composition):
    """One object, a unit u and two further loops a, b."""
    arrows = {x: ("A", "A") for x in ("u", "a", "b")}
    table = {("u", x): x for x in arrows} | {(x, "u"): x for x in arrows}
    table.update(composition)
    return Precategory("loops", ("A",), arrows, {"A": "u"}, table)


class TestSmallCategories:
    """Tests for the plain categories used as building blocks."""

    def test_terminal(self):
        point = terminal_category()
        assert point.objects == ("*",)
        assert point.identity("*") == "1"

    def test_discrete_category(self):
        cat = discrete_category("D", 3)
        assert cat.objects == ("0", "1", "2")
        assert cat.hom("0", "1") == ()


class TestCodiscreteModel:
    """Tests for precategories with codiscrete 2-cells."""

    def test_non_associative_precategory_gives_a_pseudocategory(self):
        pre = _precategory({("a", "a"): "b", ("a", "b"): "u", ("b", "a"): "a", ("b", "b"): "b"})
        p = codiscrete_pseudocategory(pre)
        assert p.tensor("a", p.tensor("a", "b")) != p.tensor(p.tensor("a", "a"), "b")
        assert p.associator("a", "a", "b") == ("a", "b")
        assert validate_pseudocategory(p).passed

    def test_missing_composite_is_rejected(self):
        pre = Precategory("bad", ("A",), {"u": ("A", "A")}, {"A": "u"}, {})
        with pytest.raises(BoundaryMismatch, match="ill-typed"):
            codiscrete_pseudocategory(pre)

    def test_ill_typed_unit_is_rejected(self):
        pre = Precategory("bad", ("A", "B"), {"u": ("A", "B")}, {"A": "u"}, {})
        with pytest.raises(BoundaryMismatch):
            codiscrete_pseudocategory(pre)


class TestGroupModel:
    """Tests for pseudo-categories from crossed modules with a chosen delta."""

    def test_cyclic_model_objects_and_cells(self):
        p = group_pseudocategory(cyclic_group_model(4, 1))
        assert p.c0.objects == ("*",)
        assert len(p.c1.morphisms) == 4
        assert p.left_unitor("*") == (1, 0)
        assert validate_pseudocategory(p).passed

    def test_negation_model(self):
        p = group_pseudocategory(negation_group_model(2), name="neg")
        assert p.name == "neg"
        assert len(p.c0.morphisms) == 2
        assert validate_pseudocategory(p).passed

    def test_identity_crossed_module(self):
        p = group_pseudocategory(identity_crossed_module(3))
        assert p.c.mor((1, 2)) == 0
        assert validate_pseudocategory(p).passed

    def test_peiffer_failure(self):
        with pytest.raises(InvalidAction, match="Peiffer") as excinfo:
            group_pseudocategory(negation_group_model(0, boundary_mod_two=True))
        assert excinfo.value.witness == (1, 1)
        assert excinfo.value.law_id == "model.group-action"

    def test_delta_outside_kernel(self):
        z2 = FinGroup.cyclic(2)
        model = GroupModel(
            z2, z2, GroupHom.from_rule(z2, z2, lambda x: x, "d"), 1, lambda b, x: x
        )
        with pytest.raises(DeltaNotInKernel):
            group_pseudocategory(model)

    def test_delta_outside_the_group(self):
        with pytest.raises(DeltaNotInKernel):
            group_pseudocategory(cyclic_group_model(3, 5))


class TestMorAbModel:
    """Tests for squares of abelian groups."""

    def test_z2z4_preset(self):
        p = morab_pseudocategory(morab_preset("z2z4"))
        assert len(p.c0.objects) == 4
        assert p.left_unitor((1, 0)) == (1, 0, 0, 1)
        assert validate_pseudocategory(p).passed

    def test_zero_preset(self):
        assert validate_pseudocategory(morab_pseudocategory(morab_preset("zero"))).passed

    def test_k_lambda_must_vanish(self):
        with pytest.raises(KLambdaNotZero) as excinfo:
            morab_pseudocategory(morab_preset("klambda"))
        assert excinfo.value.witness == ("lambda", 1)
        assert excinfo.value.law_id == "model.k-lambda-zero"

    def test_unknown_preset(self):
        with pytest.raises(ValueError, match="unknown Mor"):
            morab_preset("nope")

    def _model(self, boundary, k0, lam):
        z2 = FinGroup.cyclic(2)
        zero = GroupHom.zero(z2, z2)
        return MorAbModel(z2, z2, z2, z2, boundary, zero, zero, k0, lam, zero, zero)

    def test_square_must_commute(self):
        z2 = FinGroup.cyclic(2)
        ident = GroupHom.from_rule(z2, z2, lambda x: x)
        with pytest.raises(SquareNotCommutative):
            morab_pseudocategory(self._model(ident, ident, GroupHom.zero(z2, z2)))

    def test_unitor_must_be_a_cycle(self):
        z2 = FinGroup.cyclic(2)
        ident = GroupHom.from_rule(z2, z2, lambda x: x)
        with pytest.raises(UnitorNotCycle) as excinfo:
            morab_pseudocategory(self._model(ident, GroupHom.zero(z2, z2), ident))
        assert excinfo.value.witness == ("lambda", 1)


class TestSpans:
    """Tests for the span fixture."""

    def test_multiplicities(self):
        fx = SpanFixture(2)
        assert fx.matrices[(0, 3)] == {(0, 0): 2}
        assert fx.matrices[(1, 2)] == {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0}
        assert fx.apex(0, 3) == ((0, 0, 0), (0, 0, 1))

    def test_endomorphism_cells_of_the_anti_diagonal(self):
        fx = SpanFixture(2)
        cells = fx.cells(1, 2)
        assert len(cells) == 2
        assert {cell[1] for cell in cells} == {(0, 1), (1, 0)}

    def test_size_one_is_strict(self):
        p = span_pseudocategory(1)
        assert all(p.c1.is_identity(cell) for cell in p.alpha.values())
        assert p.c0.objects == ("L0", "L1", "L2", "L3")

    def test_size_two_objects_and_name(self):
        p = span_pseudocategory(2)
        assert p.name == "span2"
        assert len(p.c1.objects) == 10
        assert p.tensor("S23", "S12") == "S13"

    @pytest.mark.parametrize("size", [1, 2, 3])
    def test_composites_are_pullbacks(self, size):
        fx = SpanFixture(size)
        for i, j, k in itertools.combinations_with_replacement(range(4), 3):
            label, _ = fx.composite(i, j, k)
            matching = {(x, y) for x in fx.apex(j, k) for y in fx.apex(i, j) if x[0] == y[1]}
            assert set(label) == matching
            assert sorted(label.values()) == list(fx.apex(i, k))

    def test_family_is_closed_under_composition(self):
        p = span_pseudocategory(2)
        for g, f in p.pairs.apex.objects:
            assert p.c1.has_object(p.tensor(g, f))
        assert all(src == tgt for src, tgt in p.c1.morphisms.values())

    @pytest.mark.parametrize("bound", [0, 4])
    def test_size_bound_is_enforced(self, bound):
        with pytest.raises(ValueError):
            span_pseudocategory(bound)


class TestSpanRelabel:
    """Tests for the relabelling pseudo-functors of the span fixture."""

    @pytest.fixture(scope="class")
    def spans(self):
        return span_pseudocategory(2)

    @pytest.mark.parametrize("permutation", [(0, 1), (1, 0)])
    def test_relabelling_is_a_pseudofunctor(self, spans, permutation):
        functor = span_relabel_pseudofunctor(spans, permutation)
        assert functor.name == f"relabel{permutation}"
        assert validate_pseudofunctor(functor).passed

    def test_identity_relabelling_has_identity_comparisons(self, spans):
        functor = span_relabel_pseudofunctor(spans, (0, 1))
        assert all(spans.c1.is_identity(cell) for cell in functor.mu.values())

    def test_size_mismatch(self, spans):
        with pytest.raises(BoundaryMismatch, match="same size"):
            span_relabel_pseudofunctor(spans, (0, 1, 2))
