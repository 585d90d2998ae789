"""Tests for pseudocat.py - pseudo-categories, their validator and the four-sorted view."""

import itertools

import pytest

from pseudocat_workbench.ambient import (
    FIN_CAT,
    FIN_GRP,
    FIN_SET_DISCRETE,
    BoundaryMismatch,
    FinFunctor,
)
from pseudocat_workbench.models import (
    Precategory,
    codiscrete_pseudocategory,
    cyclic_group_model,
    discrete_pseudocategory,
    group_pseudocategory,
    morab_preset,
    morab_pseudocategory,
    span_pseudocategory,
    walking_arrow,
)
from pseudocat_workbench.pseudocat import (
    PseudoCategory,
    compose_cells_pseudo,
    compose_cells_vertical,
    unpack_double,
    validate_pseudocategory,
)


def _detects(p: PseudoCategory) -> bool:
    """A mutant is detected when a law fails or its boundaries are rejected."""
    try:
        return not validate_pseudocategory(p).passed
    except BoundaryMismatch:
        return True


def _with_m(p: PseudoCategory, objects=None, morphisms=None) -> PseudoCategory:
    m = FinFunctor(
        p.m.source,
        p.m.target,
        {**p.m.object_map, **(objects or {})},
        {**p.m.morphism_map, **(morphisms or {})},
        "m",
    )
    return p.replace(m=m)


def structural_mutants(p: PseudoCategory, tables=("alpha", "lam", "rho")):
    """Every single-component change of alpha, lambda or rho."""
    cells = list(p.c1.morphisms)
    for table_name in tables:
        table = getattr(p, table_name)
        for key, cell in table.items():
            for other in cells:
                if other != cell:
                    yield f"{table_name}[{key!r}]", p.replace(**{table_name: {**table, key: other}})


def cell_table_mutants(p: PseudoCategory):
    """Every single-entry change of the composition table on cells."""
    cells = list(p.c1.morphisms)
    for key, cell in p.m.morphism_map.items():
        for other in cells:
            if other != cell:
                yield f"m[{key!r}]", _with_m(p, morphisms={key: other})


def _visible_changes(p: PseudoCategory, cell):
    """Cells that differ from ``cell`` in a vertical edge or in their horizontal ends."""
    ends = p.c1.morphisms[cell]
    edges = (p.d.mor(cell), p.c.mor(cell))
    same = [
        o
        for o in p.c1.morphisms
        if o != cell and p.c1.morphisms[o] == ends and (p.d.mor(o), p.c.mor(o)) != edges
    ]
    other = [o for o in p.c1.morphisms if p.c1.morphisms[o] != ends]
    return same[:1] + other[:1]


@pytest.fixture(scope="module")
def discrete():
    return discrete_pseudocategory(walking_arrow())


@pytest.fixture(scope="module")
def codiscrete():
    return codiscrete_pseudocategory(Precategory.from_category(walking_arrow()))


@pytest.fixture(scope="module")
def grp():
    return group_pseudocategory(cyclic_group_model(4, 2))


@pytest.fixture(scope="module")
def morab():
    return morab_pseudocategory(morab_preset("z2z4"))


@pytest.fixture(scope="module")
def spans():
    return span_pseudocategory(2)


class TestFixturesValidate:
    """Every shipped model passes the full validator."""

    @pytest.mark.parametrize("fixture", ["discrete", "codiscrete", "grp", "morab", "spans"])
    def test_fixture_passes(self, fixture, request):
        report = validate_pseudocategory(request.getfixturevalue(fixture))
        assert report.failures == []
        assert report.status("pseudocat.pentagon") is True
        assert report.status("pseudocat.triangle") is True

    def test_neutral_delta_group_model(self):
        assert validate_pseudocategory(group_pseudocategory(cyclic_group_model(4, 0))).passed

    def test_span_size_one_and_three_bounds(self):
        assert validate_pseudocategory(span_pseudocategory(1)).passed
        with pytest.raises(ValueError, match="span size bound"):
            span_pseudocategory(4)

    def test_report_covers_every_law(self, discrete):
        report = validate_pseudocategory(discrete)
        ids = [r.law_id for r in report.results]
        assert len(ids) == len(set(ids)) == 21
        assert report.summary() == {"failed": 0, "passed": 21, "total": 21}


class TestComposablePairs:
    """Tests for the pullback of d and c."""

    def test_discrete_pairs_are_the_composable_pairs(self, discrete):
        pairs = set(discrete.pairs.apex.objects)
        assert pairs == {("f", "id_A"), ("id_B", "f"), ("id_A", "id_A"), ("id_B", "id_B")}

    def test_tensor_is_composition(self, discrete):
        assert discrete.tensor("f", "id_A") == "f"
        assert discrete.unit("A") == "id_A"

    def test_triples_and_chains(self, discrete):
        assert ("id_B", "f", "id_A") in set(discrete.chains(3))
        assert discrete.triples.has_object(("id_B", "f", "id_A"))


class TestStructuralCells:
    """Tests for alpha, lambda and rho of the non-strict models."""

    def test_group_model_is_strictly_associative(self, grp):
        neutral = (0, 0)
        assert set(grp.alpha.values()) == {neutral}
        assert grp.tensor("*", grp.tensor("*", "*")) == grp.tensor(grp.tensor("*", "*"), "*")

    def test_group_model_unitors_are_delta(self, grp):
        assert grp.left_unitor("*") == (2, 0)
        assert grp.right_unitor("*") == (2, 0)
        assert not grp.c1.is_identity(grp.left_unitor("*"))

    def test_span_associator_is_not_trivial(self, spans):
        assert any(not spans.c1.is_identity(cell) for cell in spans.alpha.values())

    def test_missing_component_is_boundary_mismatch(self, discrete):
        with pytest.raises(BoundaryMismatch):
            discrete.associator("f", "f", "f")
        with pytest.raises(BoundaryMismatch):
            discrete.left_unitor("nope")

    def test_structural_cells_as_ambient_2cells(self, grp):
        alpha = grp.alpha_2cell()
        lam, rho = grp.unitor_2cells()
        assert alpha.invertible and lam.invertible and rho.invertible
        assert lam.components == {"*": (2, 0)}

    def test_ill_typed_alpha_raises_before_laws(self, discrete):
        key = ("id_B", "f", "id_A")
        mutant = discrete.replace(alpha={**discrete.alpha, key: "id_A"})
        with pytest.raises(BoundaryMismatch) as excinfo:
            validate_pseudocategory(mutant)
        assert excinfo.value.witness == key

    def test_ambient_membership(self, discrete, codiscrete):
        assert validate_pseudocategory(discrete.replace(ambient=FIN_CAT)).passed
        report = validate_pseudocategory(codiscrete.replace(ambient=FIN_SET_DISCRETE))
        assert report.status("pseudocat.ambient-membership") is False

    def test_group_ambient_needs_a_group(self, discrete, grp):
        assert validate_pseudocategory(grp).status("pseudocat.ambient-membership") is True
        report = validate_pseudocategory(discrete.replace(ambient=FIN_GRP))
        assert report.status("pseudocat.ambient-membership") is False


class TestMutationSensitivity:
    """Single-entry changes to the tables are always caught."""

    def test_group_structural_mutations(self, grp):
        mutants = list(structural_mutants(grp))
        assert len(mutants) == 9
        for label, mutant in mutants:
            assert _detects(mutant), label

    def test_group_pentagon_witness(self, grp):
        mutant = grp.replace(alpha={("*", "*", "*"): (1, 0)})
        report = validate_pseudocategory(mutant)
        assert report.status("pseudocat.pentagon") is False
        failure = next(r for r in report.failures if r.law_id == "pseudocat.pentagon")
        assert failure.witness == ("*", "*", "*", "*")

    def test_group_cell_table_mutations(self, grp):
        mutants = list(cell_table_mutants(grp))
        assert len(mutants) == 48
        for label, mutant in mutants:
            assert _detects(mutant), label

    def test_discrete_mutations(self, discrete):
        mutants = list(structural_mutants(discrete))
        arrows = list(discrete.c1.objects)
        for key, value in discrete.m.object_map.items():
            for other in arrows:
                if other != value:
                    mutants.append((f"m[{key!r}]", _with_m(discrete, objects={key: other})))
        assert len(mutants) >= 20
        for label, mutant in mutants:
            assert _detects(mutant), label

    def test_codiscrete_mutations(self, codiscrete):
        mutants = list(itertools.islice(structural_mutants(codiscrete), 40))
        assert len(mutants) >= 20
        for label, mutant in mutants:
            assert _detects(mutant), label

    def test_morab_mutations(self, morab):
        mutants = []
        for b in morab.c0.objects:
            unit = morab.unit(b)
            for table_name in ("lam", "rho"):
                table = getattr(morab, table_name)
                for cell in morab.c1.hom(unit, unit):
                    if cell != table[unit]:
                        mutants.append(
                            (f"{table_name}[{unit!r}]", morab.replace(**{table_name: {**table, unit: cell}}))
                        )
        mutants += list(itertools.islice(cell_table_mutants(morab), 20))
        assert len(mutants) >= 20
        for label, mutant in mutants:
            assert _detects(mutant), label

    def test_span_unitor_mutations(self, spans):
        mutants = []
        for a in spans.c0.objects:
            unit = spans.unit(a)
            for cell in spans.c1.hom(unit, unit):
                if cell != spans.lam[unit]:
                    mutants.append(spans.replace(lam={**spans.lam, unit: cell}))
        assert mutants
        for mutant in mutants:
            report = validate_pseudocategory(mutant)
            assert report.status("pseudocat.unitors-agree-on-identities") is False

    def test_span_table_mutations(self, spans):
        mutants = []
        for table_name in ("alpha", "lam", "rho"):
            table = getattr(spans, table_name)
            for key, cell in table.items():
                for other in _visible_changes(spans, cell):
                    mutants.append(
                        (f"{table_name}[{key!r}]", spans.replace(**{table_name: {**table, key: other}}))
                    )
        for key, cell in itertools.islice(spans.m.morphism_map.items(), 15):
            for other in _visible_changes(spans, cell):
                mutants.append((f"m[{key!r}]", _with_m(spans, morphisms={key: other})))
        arrows = list(spans.c1.objects)
        for key, value in spans.m.object_map.items():
            other = next(a for a in arrows if a != value)
            mutants.append((f"m[{key!r}]", _with_m(spans, objects={key: other})))
        assert len(mutants) >= 20
        assert {label.split("[")[0] for label, _ in mutants} == {"alpha", "lam", "rho", "m"}
        for label, mutant in mutants:
            assert _detects(mutant), label


class TestDoubleView:
    """Tests for the four-sorted view."""

    def test_strict_view_has_only_special_identity_cells(self, discrete):
        view = unpack_double(discrete)
        assert set(view.horizontal) == {"f", "id_A", "id_B"}
        assert view.horizontal["f"] == ("A", "B")
        assert all(view.is_special(cell) for cell in view.cells)
        assert view.identity_arrow("B") == "id_B"

    def test_interchange_holds_in_group_model(self, grp):
        view = unpack_double(grp)
        cells = list(grp.c1.morphisms)
        for grid in itertools.product(cells, repeat=4):
            assert view.interchange_holds(*grid)

    def test_cell_composition_checks_boundaries(self, spans):
        cell = next(c for c in spans.c1.morphisms if c[0] == "S12")
        other = next(c for c in spans.c1.morphisms if c[0] == "S01")
        with pytest.raises(BoundaryMismatch):
            compose_cells_vertical(spans, cell, other)
        with pytest.raises(BoundaryMismatch):
            compose_cells_pseudo(spans, other, cell)
        assert compose_cells_pseudo(spans, cell, spans.one("S01"))[0] == "S02"
