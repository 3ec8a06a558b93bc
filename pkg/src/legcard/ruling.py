"""Graded normal rulings of plat fronts.

A ruling is recorded by its switch set together with the pairing of strand
positions on every slice between events.  Rulings are found by a left-to-right
sweep that branches at each crossing on switch/pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from legcard.arith import LaurentPoly, QSqrt, qsqrt_eval_laurent
from legcard.front import PlatFront

DEPARTURE, RETURN, SWITCH = "departure", "return", "switch"


def degree_vanishes(degree: int, m: int) -> bool:
    """degree == 0 (mod 2m); for m == 0 this means degree == 0."""
    return degree == 0 if m == 0 else degree % (2 * m) == 0


def initial_pairing(n_strands: int) -> tuple[int, ...]:
    """Pairing (1,2),(3,4),... as a 0-based partner tuple."""
    return tuple(i + 1 if i % 2 == 0 else i - 1 for i in range(n_strands))


def is_normal_pair(pairing, p: int) -> bool:
    """Whether the disks through 0-based positions p and p+1 are disjoint or nested."""
    i0, i1 = sorted((p, pairing[p]))
    j0, j1 = sorted((p + 1, pairing[p + 1]))
    disjoint = i1 < j0 or j1 < i0
    nested = (i0 < j0 and j1 < i1) or (j0 < i0 and i1 < j1)
    return disjoint or nested


def _pass(pairing, p: int) -> tuple[int, ...]:
    new = list(pairing)
    a, b = pairing[p], pairing[p + 1]
    new[p + 1], new[a] = a, p + 1
    new[p], new[b] = b, p
    return tuple(new)


@dataclass(frozen=True)
class NormalRuling:
    switches: frozenset[int]
    pairings: tuple[tuple[int, ...], ...]  # one per slice, 0-based partners
    n_right_cusps: int

    @property
    def chi(self) -> int:
        return self.n_right_cusps - len(self.switches)

    def disks(self, j: int) -> list[tuple[int, int]]:
        """(lower, upper) 0-based positions of the disks on slice j."""
        pairing = self.pairings[j]
        return [(i, pairing[i]) for i in range(len(pairing)) if i < pairing[i]]


def enumerate_rulings(front: PlatFront, m: int = 0) -> list[NormalRuling]:
    degrees = [front.crossing_degree(c) for c in front.crossings]
    events = front.events
    n = len(events)
    start = initial_pairing(front.n_strands)
    out: list[NormalRuling] = []

    def sweep(j, pairing, trail, switches):
        if j == n:
            if pairing == start:
                out.append(NormalRuling(frozenset(switches), tuple(trail), front.n_cusps))
            return
        p = events[j] - 1
        if pairing[p] == p + 1:
            return  # the two strands of one disk would cross
        passed = _pass(pairing, p)
        sweep(j + 1, passed, trail + [passed], switches)
        if degree_vanishes(degrees[j], m) and is_normal_pair(pairing, p):
            sweep(j + 1, pairing, trail + [pairing], switches + [j + 1])

    sweep(0, start, [start], [])
    out.sort(key=lambda r: sorted(r.switches))
    return out


def ruling_polynomial(front: PlatFront, m: int = 0) -> LaurentPoly:
    out: dict[int, int] = {}
    for r in enumerate_rulings(front, m):
        out[-r.chi] = out.get(-r.chi, 0) + 1
    return LaurentPoly(out)


@dataclass(frozen=True)
class CrossingClassification:
    labels: dict[int, str]  # crossing index -> departure/return/switch
    counts: dict[int, dict[str, int]]  # degree -> label -> count

    def total(self, label: str) -> int:
        return sum(c.get(label, 0) for c in self.counts.values())


def classify_crossings(front: PlatFront, ruling: NormalRuling, m: int = 0) -> CrossingClassification:
    labels: dict[int, str] = {}
    counts: dict[int, dict[str, int]] = {}
    for c in front.crossings:
        deg = front.crossing_degree(c)
        if not degree_vanishes(deg, m):
            continue
        if c.index in ruling.switches:
            label = SWITCH
        elif is_normal_pair(ruling.pairings[c.index - 1], c.position - 1):
            label = DEPARTURE
        else:
            label = RETURN
        labels[c.index] = label
        bucket = counts.setdefault(deg, {})
        bucket[label] = bucket.get(label, 0) + 1
    return CrossingClassification(labels, counts)


def hr_weighted_count(front: PlatFront, q: int, m: int = 0) -> int:
    """Sum over rulings of (q-1)^(l - chi(R)) q^#returns."""
    ell = front.n_components
    total = Fraction(0)
    for r in enumerate_rulings(front, m):
        returns = classify_crossings(front, r, m).total(RETURN)
        total += Fraction(q - 1) ** (ell - r.chi) * q**returns
    if total.denominator != 1:
        raise ArithmeticError("non-integral weighted ruling count")
    return int(total)


def normalized_ruling_value(front: PlatFront, q: int, m: int = 0) -> QSqrt:
    return qsqrt_eval_laurent(ruling_polynomial(front, m), q)


# -- the index function I(x) -----------------------------------------------------


def index_function(front: PlatFront, ruling: NormalRuling, m: int, j: int) -> int:
    """I = I1 + I2 + I3 on slice ``j`` (after ``j`` events); needs m >= 1."""
    if m < 1:
        raise ValueError("the index function needs m >= 1")
    mu = front.slice_potentials(j)
    period = 2 * m
    disks = [(lo, hi, mu[hi], mu[lo]) for lo, hi in ruling.disks(j)]  # (lo, hi, a, b)
    i1 = i2 = i3 = 0
    for lo_i, hi_i, a_i, b_i in disks:
        i3 += (a_i - b_i) // period
        for lo_j, hi_j, a_j, b_j in disks:
            if lo_j < lo_i < hi_j < hi_i:  # interlaced, D_i the upper one
                e = b_i - a_j
                i1 += (-1) ** (e % 2) * (2 * (e // period) + 1)
            if lo_j < lo_i and hi_i < hi_j:  # D_i nested inside D_j
                i2 += 2 * (-1) ** ((a_i - a_j) % 2) * ((a_i - b_i) // period)
    return i1 + i2 + i3


def expected_index_step(label: str | None, degree: int, m: int) -> int:
    if label is None:
        return (-1) ** (degree % 2) * (2 * (degree // (2 * m)) + 1)
    base = degree // m
    return {DEPARTURE: base + 1, RETURN: base - 1, SWITCH: base}[label]


@dataclass
class ReturnFormulaReport:
    chi_star: int
    checked: int
    violations: list[str]
    index_violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.index_violations


def verify_return_formula(front: PlatFront, m: int, chi_star: int) -> ReturnFormulaReport:
    """Check #returns = (chi_* + chi(R))/2 on every ruling; for m >= 1 also
    the per-crossing step of the index function and its vanishing at the ends."""
    violations: list[str] = []
    index_violations: list[str] = []
    rulings = enumerate_rulings(front, m)
    for r in rulings:
        cls = classify_crossings(front, r, m)
        returns = cls.total(RETURN)
        if 2 * returns != chi_star + r.chi:
            violations.append(
                f"ruling {sorted(r.switches)}: #returns = {returns}, (chi_* + chi)/2 = {Fraction(chi_star + r.chi, 2)}"
            )
        if m >= 1:
            values = [index_function(front, r, m, j) for j in range(len(front.events) + 1)]
            if values[0] != 0 or values[-1] != 0:
                index_violations.append(f"ruling {sorted(r.switches)}: I = {values[0]}, {values[-1]} at the ends")
            for c in front.crossings:
                step = values[c.index] - values[c.index - 1]
                want = expected_index_step(cls.labels.get(c.index), front.crossing_degree(c), m)
                if step != want:
                    index_violations.append(
                        f"ruling {sorted(r.switches)}, crossing {c.index}: step {step}, expected {want}"
                    )
    return ReturnFormulaReport(chi_star, len(rulings), violations, index_violations)
