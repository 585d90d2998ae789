"""Tests for pfunctor.py - pseudo-functors, their laws and their composition."""

import itertools

import pytest

from pseudocat_workbench.ambient import FIN_CAT, BoundaryMismatch, FinFunctor, make_fin_category
from pseudocat_workbench.models import (
    cyclic_group_model,
    discrete_pseudocategory,
    group_pseudocategory,
    span_pseudocategory,
    span_relabel_pseudofunctor,
    terminal_category,
    walking_arrow,
)
from pseudocat_workbench.pfunctor import (
    CompositionTypeMismatch,
    LaxComparisonRejected,
    PseudoFunctor,
    compose_pseudofunctors,
    identity_pseudofunctor,
    make_pseudofunctor,
    validate_pseudofunctor,
)
from pseudocat_workbench.pseudocat import PseudoCategory, validate_pseudocategory


def idempotent_pseudocategory() -> PseudoCategory:
    """One object, one horizontal arrow u and an idempotent cell z: u => u."""
    c0 = terminal_category()
    c1 = make_fin_category(("u",), {"z": ("u", "u")}, {("z", "z"): "z"}, {"u": "1u"}, "idem")
    return PseudoCategory.build(
        "idem",
        c0,
        c1,
        FinFunctor.from_rule(c1, c0, lambda f: "*", lambda phi: "1", "d"),
        FinFunctor.from_rule(c1, c0, lambda f: "*", lambda phi: "1", "c"),
        FinFunctor.from_rule(c0, c1, lambda a: "u", lambda v: "1u", "e"),
        tensor=lambda g, f: "u",
        tensor_cells=lambda psi, phi: "z" if "z" in (psi, phi) else "1u",
        alpha=lambda h, g, f: "1u",
        lam=lambda f: "1u",
        rho=lambda f: "1u",
        ambient=FIN_CAT,
    )


def scaling(p: PseudoCategory, k: int, m: int, eps: int | None = None) -> PseudoFunctor:
    """x -> kx on the cells of the Z4 model, with mu = m and eps = -m unless given."""
    f1 = FinFunctor.from_rule(p.c1, p.c1, lambda f: f, lambda x: ((k * x[0]) % 4, 0), f"x{k}")
    eps_value = (-m) % 4 if eps is None else eps
    return PseudoFunctor(
        name=f"s{k}{m}",
        source=p,
        target=p,
        f0=FinFunctor.identity(p.c0),
        f1=f1,
        mu={("*", "*"): (m, 0)},
        eps={"*": (eps_value, 0)},
    )


@pytest.fixture(scope="module")
def grp():
    return group_pseudocategory(cyclic_group_model(4, 0))


@pytest.fixture(scope="module")
def endos(grp):
    return [scaling(grp, k, m) for k in range(4) for m in range(4)]


@pytest.fixture(scope="module")
def spans():
    return span_pseudocategory(2)


class TestValidation:
    """Tests for validate_pseudofunctor."""

    def test_identity_pseudofunctors_validate(self, grp, spans):
        for p in (grp, spans, discrete_pseudocategory(walking_arrow())):
            functor = identity_pseudofunctor(p)
            assert functor.name == f"1_{p.name}"
            assert validate_pseudofunctor(functor).passed

    def test_scaling_family_validates(self, endos):
        assert len(endos) == 16
        for functor in endos:
            report = validate_pseudofunctor(functor)
            assert report.failures == [], functor.name

    def test_unit_squares_catch_a_wrong_epsilon(self, grp):
        functor, report = make_pseudofunctor(
            "bad", grp, grp, FinFunctor.identity(grp.c0), FinFunctor.identity(grp.c1),
            {("*", "*"): (1, 0)}, {"*": (1, 0)},
        )
        assert functor.name == "bad"
        assert report.status("pseudofunctor.left-unit-square") is False
        assert report.status("pseudofunctor.right-unit-square") is False
        assert report.status("pseudofunctor.hexagon") is True

    def test_ill_typed_mu_is_a_boundary_mismatch(self, spans):
        relabel = span_relabel_pseudofunctor(spans, (1, 0))
        broken = PseudoFunctor(
            "broken",
            spans,
            spans,
            relabel.f0,
            relabel.f1,
            {**relabel.mu, ("S12", "S01"): spans.one("S01")},
            relabel.eps,
        )
        with pytest.raises(BoundaryMismatch) as excinfo:
            validate_pseudofunctor(broken)
        assert excinfo.value.witness == ("S12", "S01")

    def test_different_ambients_are_a_boundary_mismatch(self):
        p = discrete_pseudocategory(walking_arrow())
        other = p.replace(ambient=FIN_CAT)
        functor = identity_pseudofunctor(p)
        moved = PseudoFunctor("moved", p, other, functor.f0, functor.f1, functor.mu, functor.eps)
        with pytest.raises(BoundaryMismatch, match="different ambients"):
            validate_pseudofunctor(moved)

    def test_missing_comparison_cell(self, grp):
        functor = scaling(grp, 1, 0)
        with pytest.raises(BoundaryMismatch):
            functor.mu_at("*", "x")
        with pytest.raises(BoundaryMismatch):
            functor.eps_at("nope")


class TestLaxRejected:
    """Non-invertible comparison cells are refused at construction."""

    def test_idempotent_model_is_a_pseudocategory(self):
        assert validate_pseudocategory(idempotent_pseudocategory()).passed

    def test_non_invertible_mu(self):
        p = idempotent_pseudocategory()
        identity = identity_pseudofunctor(p)
        with pytest.raises(LaxComparisonRejected) as excinfo:
            PseudoFunctor("lax", p, p, identity.f0, identity.f1, {("u", "u"): "z"}, identity.eps)
        assert excinfo.value.witness == ("mu", ("u", "u"))
        assert excinfo.value.law_id == "pseudofunctor.lax-rejected"

    def test_non_invertible_epsilon(self):
        p = idempotent_pseudocategory()
        identity = identity_pseudofunctor(p)
        with pytest.raises(LaxComparisonRejected, match="epsilon"):
            PseudoFunctor("lax", p, p, identity.f0, identity.f1, identity.mu, {"*": "z"})

    def test_non_invertible_associator_is_reported(self):
        p = idempotent_pseudocategory()
        report = validate_pseudocategory(p.replace(alpha={("u", "u", "u"): "z"}))
        assert report.status("pseudocat.associator-invertible") is False


class TestComposition:
    """Tests for compose_pseudofunctors."""

    def test_composites_validate(self, endos):
        pairs = list(itertools.islice(itertools.product(endos, repeat=2), 0, None, 9))
        assert len(pairs) >= 10
        for second, first in pairs:
            composite = compose_pseudofunctors(second, first)
            assert composite.name == f"{second.name}{first.name}"
            assert validate_pseudofunctor(composite).passed

    def test_composite_comparison_cells(self, grp):
        composite = compose_pseudofunctors(scaling(grp, 3, 1), scaling(grp, 2, 3))
        assert composite.mu_at("*", "*") == ((3 * 3 + 1) % 4, 0)
        assert composite.eps_at("*") == ((3 * 1 + 3) % 4, 0)

    def test_associative(self, endos):
        triples = [(endos[3], endos[6], endos[13]), (endos[15], endos[4], endos[9])]
        for h, g, f in triples:
            left = compose_pseudofunctors(h, compose_pseudofunctors(g, f))
            right = compose_pseudofunctors(compose_pseudofunctors(h, g), f)
            assert left == right

    def test_unital(self, grp, endos):
        identity = identity_pseudofunctor(grp)
        for functor in endos[::5]:
            assert compose_pseudofunctors(identity, functor) == functor
            assert compose_pseudofunctors(functor, identity) == functor

    def test_span_relabellings_compose(self, spans):
        swap = span_relabel_pseudofunctor(spans, (1, 0))
        twice = compose_pseudofunctors(swap, swap)
        assert validate_pseudofunctor(twice).passed
        assert twice.f1 == FinFunctor.identity(spans.c1)

    def test_mismatched_middle(self, grp, spans):
        with pytest.raises(CompositionTypeMismatch):
            compose_pseudofunctors(identity_pseudofunctor(grp), identity_pseudofunctor(spans))

    def test_equality_ignores_names_but_not_tables(self, grp):
        assert scaling(grp, 2, 1) == scaling(grp, 2, 1)
        assert scaling(grp, 2, 1) != scaling(grp, 2, 2)
