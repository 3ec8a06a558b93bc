"""Batch verification of the counting identities over a (front, q, m) matrix."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from legcard.aug import enumerate_augmentations, euler_data, normalized_count
from legcard.augcat import (
    class_data,
    build_hom,
    count_unit_cocycles,
    euler_of_hom,
    homotopy_cardinality,
    candidate_cardinality_2m,
    conjecture_harness,
    ruling_side,
    duality_violations,
    theorem_rhs,
    transport_chords,
)
from legcard.dga import Dga, build_dga, check_dga
from legcard.front import PlatFront
from legcard.ruling import hr_weighted_count, normalized_ruling_value, ruling_polynomial, verify_return_formula

# the unit-morphism count enumerates Hom^0(e, e') for every target e'; above this many
# augmentations only class representatives are used as sources
UNIT_ALL_SOURCES = 64
# m1 o m1 = 0 is checked on every ordered pair up to this many pairs, and on
# a seeded random sample of this size beyond it
PAIR_BUDGET = 400


@dataclass(frozen=True)
class Check:
    name: str
    lhs: str
    rhs: str
    ok: bool

    def line(self) -> str:
        rel = "=" if self.ok else "!="
        return f"{self.name}: {self.lhs} {rel} {self.rhs} {'pass' if self.ok else 'FAIL'}"


@dataclass
class CaseReport:
    label: str
    q: int
    m: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, lhs, rhs, ok=None):
        self.checks.append(Check(name, str(lhs), str(rhs), lhs == rhs if ok is None else ok))


@dataclass
class VerifyReport:
    cases: list[CaseReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def counts(self) -> tuple[int, int]:
        checks = [c for case in self.cases for c in case.checks]
        return sum(c.ok for c in checks), len(checks)

    def to_dict(self) -> dict:
        passed, total = self.counts
        return {
            "cases": [
                {
                    "input": c.label,
                    "q": c.q,
                    "m": c.m,
                    "checks": [{"name": k.name, "lhs": k.lhs, "rhs": k.rhs, "pass": k.ok} for k in c.checks],
                }
                for c in self.cases
            ],
            "summary": {"passed": passed, "total": total, "ok": self.ok},
        }


def verify_case(
    label: str, q: int, m: int, front: PlatFront | None = None, dga: Dga | None = None, seed: int = 0
) -> CaseReport:
    if dga is None:
        dga = build_dga(front)
    rep = CaseReport(label, q, m)
    problems = check_dga(dga)
    rep.add("dga", "; ".join(problems) or "sound", "sound")

    augs = enumerate_augmentations(dga, q, m)
    chi = euler_data(dga, m).chi_star
    ell = dga.n_components
    norm = normalized_count(dga, q, m, len(augs))

    if front is not None:
        rep.add("normalized-count", norm, normalized_ruling_value(front, q, m))
        rep.add("hr-count", len(augs), hr_weighted_count(front, q, m))
        lemma = verify_return_formula(front, m, chi)
        rep.add("returns", len(lemma.violations), 0)
        if m >= 1:
            rep.add("index-steps", len(lemma.index_violations), 0)
        tb = dga.tb()
        rside = ruling_side(tb, q, ruling_polynomial(front, m))

    pairs = list(itertools.product(augs, repeat=2))
    if len(pairs) > PAIR_BUDGET:
        pairs = random.Random(seed).sample(pairs, PAIR_BUDGET)
    rep.add("m1-squared", sum(not build_hom(dga, a, b).squares_to_zero() for a, b in pairs), 0)

    cards = class_data(dga, q, m)
    rep.add("class-total", sum(c.size for c in cards.classes), len(augs))
    # class size from |Aut| and coboundaries
    bad_sizes = 0
    for c in cards.classes:
        co = c.cohomology
        predicted = (q - 1) ** ell * q ** (co.Hom(0) - co.B(0) - ell)
        if predicted != c.size * c.aut:
            bad_sizes += 1
    rep.add("class-size", bad_sizes, 0)

    # closed unit-y morphisms out of e, over all targets
    expected_units = (q - 1) ** ell * q ** len(transport_chords(dga, m))
    sources = augs if len(augs) <= UNIT_ALL_SOURCES else [c.representative for c in cards.classes]
    bad_units = sum(
        sum(count_unit_cocycles(build_hom(dga, e, other)) for other in augs) != expected_units for e in sources
    )
    rep.add("unit-morphisms", bad_units, 0)

    if m == 0:
        homotopy_cardinality(dga, q, 0, cards)
        rep.add("homotopy-card", cards.homotopy_cardinality, theorem_rhs(dga, q, len(augs), chi))
        if front is not None:
            rep.add("card-vs-ruling", cards.homotopy_cardinality, rside)
        dual = sum(len(duality_violations(dga, a)) for a in augs)
        rep.add("duality", dual, 0)
        tbbad = sum(euler_of_hom(build_hom(dga, a, a)) != -dga.tb() for a in augs)
        rep.add("-tb", tbbad, 0)
    else:
        cand = candidate_cardinality_2m(dga, q, m, cards)
        if front is not None:
            rep.add("card-vs-ruling-2m", cand.prop_form, rside)
    cases = conjecture_harness(dga, q, m, augs)
    rep.add("z-graded-identity", sum(not c.ok for c in cases if c.z_graded), 0)
    return rep


def verify(inputs, qs, ms, seed: int = 0) -> VerifyReport:
    """``inputs``: iterable of (label, front or None, dga or None)."""
    report = VerifyReport()
    for label, front, dga in inputs:
        for q in qs:
            for m in ms:
                report.cases.append(verify_case(label, q, m, front, dga, seed))
    return report


