"""Validation reports, the law registry and canonical JSON output."""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from pseudocat_workbench.ambient import LawViolation

logger = logging.getLogger(__name__)

# Every law checked anywhere in the package, with a one-line description.
LAW_REGISTRY: dict[str, str] = {
    # finite substrate
    "structure": "the structure could be built at all",
    "boundary": "cells and functors meet along matching boundaries",
    "category.associativity": "composition is associative",
    "category.unit": "identities exist and are neutral",
    "category.typed-composite": "composites have the expected source and target",
    "category.total-composition": "every composable pair has a composite",
    "functor.laws": "maps of finite categories preserve ends, identities and composites",
    "2cell.naturality": "naturality squares of 2-cells commute",
    "2cell.invertible": "required 2-cells have inverse components",
    "group.axioms": "finite multiplication tables are groups",
    "group.homomorphism": "maps of groups preserve products",
    # pseudo-categories
    "pseudocat.ambient-membership": "C0, C1 and the structural 2-cells live in the ambient instance",
    "pseudocat.d-functor": "d is a functor",
    "pseudocat.c-functor": "c is a functor",
    "pseudocat.e-functor": "e is a functor",
    "pseudocat.source-of-unit": "d e = 1",
    "pseudocat.target-of-unit": "c e = 1",
    "pseudocat.source-of-composite": "d m = d pi2",
    "pseudocat.target-of-composite": "c m = c pi1",
    "pseudocat.interchange": "m is a functor (interchange of cell compositions)",
    "pseudocat.associator-special": "d alpha and c alpha are identities",
    "pseudocat.left-unitor-special": "d lambda and c lambda are identities",
    "pseudocat.right-unitor-special": "d rho and c rho are identities",
    "pseudocat.associator-natural": "alpha is natural",
    "pseudocat.left-unitor-natural": "lambda is natural",
    "pseudocat.right-unitor-natural": "rho is natural",
    "pseudocat.associator-invertible": "alpha is invertible",
    "pseudocat.left-unitor-invertible": "lambda is invertible",
    "pseudocat.right-unitor-invertible": "rho is invertible",
    "pseudocat.unitors-agree-on-identities": "lambda e = rho e",
    "pseudocat.pentagon": "pentagon coherence of alpha",
    "pseudocat.triangle": "triangle coherence of alpha, lambda and rho",
    # pseudo-functors
    "pseudofunctor.ambient-membership": "mu and epsilon live in the ambient instance",
    "pseudofunctor.f0-functor": "F0 is a functor",
    "pseudofunctor.f1-functor": "F1 is a functor",
    "pseudofunctor.source-compatible": "d' F1 = F0 d",
    "pseudofunctor.target-compatible": "c' F1 = F0 c",
    "pseudofunctor.mu-special": "d' mu and c' mu are identities",
    "pseudofunctor.epsilon-special": "d' epsilon and c' epsilon are identities",
    "pseudofunctor.mu-natural": "mu is natural",
    "pseudofunctor.epsilon-natural": "epsilon is natural",
    "pseudofunctor.mu-invertible": "mu is invertible",
    "pseudofunctor.epsilon-invertible": "epsilon is invertible",
    "pseudofunctor.hexagon": "mu is coherent with the associators",
    "pseudofunctor.left-unit-square": "mu and epsilon are coherent with lambda",
    "pseudofunctor.right-unit-square": "mu and epsilon are coherent with rho",
    "pseudofunctor.lax-rejected": "comparison cells are invertible",
    "pseudofunctor.composable": "composed pseudo-functors share the middle pseudo-category",
    # natural transformations
    "natural.theta0-natural": "theta0 is natural",
    "natural.theta1-natural": "theta1 is natural",
    "natural.source-boundary": "d' theta1 = theta0 d",
    "natural.target-boundary": "c' theta1 = theta0 c",
    "natural.mu-square": "theta is compatible with mu",
    "natural.epsilon-square": "theta is compatible with epsilon",
    # pseudo-natural transformations
    "pseudonatural.t-functor": "t is a functor",
    "pseudonatural.source-boundary": "d' t = F0",
    "pseudonatural.target-boundary": "c' t = G0",
    "pseudonatural.tau-special": "d' tau and c' tau are identities",
    "pseudonatural.tau-natural": "tau is natural in the horizontal arrow",
    "pseudonatural.tau-invertible": "tau is invertible",
    "pseudonatural.octagon": "tau is coherent with composition",
    "pseudonatural.unit-pentagon": "tau is coherent with identities",
    # pseudo-modifications
    "modification.source-boundary": "d' Phi = theta0",
    "modification.target-boundary": "c' Phi = theta0'",
    "modification.natural": "Phi commutes with t on vertical morphisms",
    "modification.tau-square": "Phi is compatible with tau and tau'",
    # models
    "model.group-action": "the action is by automorphisms and satisfies equivariance and Peiffer",
    "model.delta-in-kernel": "delta lies in the kernel of the boundary map",
    "model.k-lambda-zero": "k1 kills lambda, rho and eta",
    "model.square-commutes": "the structure square of abelian groups commutes",
    "model.unitor-cycle": "unitor components are cells",
    # curry / uncurry
    "curry.round-trip-objects": "the comparison cells run from h to the uncurried functor",
    "curry.comparison-invertible": "the round-trip comparison cells are invertible",
    "curry.comparison-natural": "the comparison cells commute with the images of every cell",
    # searches
    "search.invertible-modification": "an invertible pseudo-modification links the two transformations",
}


@dataclass(frozen=True)
class LawResult:
    """Outcome of one law over every instance it quantifies over."""

    law_id: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict[str, Any]:
        entry: dict[str, Any] = {"id": self.law_id, "status": "pass" if self.passed else "fail"}
        if not self.passed:
            entry["witness"] = jsonable(self.witness)
        return entry


@dataclass
class ValidationReport:
    """Ordered law results for one named structure."""

    structure: str
    results: list[LawResult] = field(default_factory=list)

    def check(self, law_id: str, instances: Iterable[Any]) -> bool:
        """Record ``law_id`` using the first failing instance, if any.

        ``instances`` yields witnesses (or LawViolation objects) of failures.
        A LawViolation raised while evaluating the law counts as a failure.
        """
        if law_id not in LAW_REGISTRY:
            raise KeyError(f"unregistered law id {law_id!r}")
        try:
            failure = next(iter(instances), None)
        except LawViolation as exc:
            failure = exc
        if failure is None:
            self.results.append(LawResult(law_id, True))
            return True
        if isinstance(failure, LawViolation):
            self.results.append(LawResult(law_id, False, failure.witness, str(failure)))
        else:
            self.results.append(LawResult(law_id, False, failure))
        logger.debug("%s fails %s at %r", self.structure, law_id, self.results[-1].witness)
        return False

    def record_violation(self, violation: LawViolation) -> None:
        law_id = violation.law_id if violation.law_id in LAW_REGISTRY else "structure"
        self.results.append(LawResult(law_id, False, violation.witness, str(violation)))

    def extend(self, other: ValidationReport) -> None:
        self.results.extend(other.results)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[LawResult]:
        return [r for r in self.results if not r.passed]

    def status(self, law_id: str) -> bool | None:
        for result in self.results:
            if result.law_id == law_id:
                return result.passed
        return None

    def summary(self) -> dict[str, int]:
        failed = len(self.failures)
        return {"failed": failed, "passed": len(self.results) - failed, "total": len(self.results)}

    def to_dict(self) -> dict[str, Any]:
        return {
            "structure": self.structure,
            "laws": [r.to_dict() for r in self.results],
            "summary": self.summary(),
        }

    def render(self) -> str:
        """Human-readable multi-line rendering."""
        lines = [f"{self.structure}:"]
        for result in self.results:
            mark = "pass" if result.passed else "FAIL"
            line = f"  [{mark}] {result.law_id}"
            if not result.passed:
                line += f"  witness={jsonable(result.witness)}"
            lines.append(line)
        counts = self.summary()
        lines.append(f"  {counts['passed']} passed, {counts['failed']} failed")
        return "\n".join(lines)


def jsonable(value: Any) -> Any:
    """Convert identifiers (nested tuples of strings and ints) to JSON values."""
    if isinstance(value, LawViolation):
        return {"law": value.law_id, "witness": jsonable(value.witness)}
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (tuple, list)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=repr)
    return str(value)


def dump_json(payload: Any) -> bytes:
    return (json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def emit_json(report: ValidationReport) -> bytes:
    """Serialize one report with canonical key order."""
    return dump_json(report.to_dict())


def emit_json_many(reports: Iterable[ValidationReport]) -> bytes:
    return dump_json([r.to_dict() for r in reports])
