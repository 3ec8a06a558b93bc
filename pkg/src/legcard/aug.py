"""Augmentations A(L) -> F_q, graded mod 2m, and the shifted Euler characteristic."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from legcard.arith import FiniteField, QSqrt, field_of_order, rational_power_of_sqrt
from legcard.dga import Dga, is_t_letter, t_index
from legcard.ruling import degree_vanishes


@dataclass(frozen=True)
class Augmentation:
    q: int
    m: int
    values: tuple[tuple[str, int], ...]  # (letter, field code) for chords and t_i

    @property
    def field(self) -> FiniteField:
        return field_of_order(self.q)

    def __getitem__(self, letter: str) -> int:
        return self.as_dict()[letter]

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)

    def evaluate(self, letter: str) -> int:
        if letter[0] == "T":
            return self.field.inv(self["t" + letter[1:]])
        return self[letter]

def evaluate_word(F: FiniteField, values: dict[str, int], word) -> int:
    mul = F.mul_table
    r = 1
    for x in word:
        if x[0] == "T":
            r = mul[r][F.inv(values["t" + x[1:]])]
        else:
            r = mul[r][values[x]]
        if not r:
            return 0
    return r


def evaluate_poly(F: FiniteField, values: dict[str, int], poly) -> int:
    total = 0
    for w, c in poly.terms.items():
        v = evaluate_word(F, values, w)
        if v:
            total = F.add(total, F.mul(F.from_int(c), v))
    return total


def is_augmentation(dga: Dga, F: FiniteField, values: dict[str, int], m: int) -> list[str]:
    """Violations of the augmentation axioms (empty list: valid)."""
    bad = []
    for i in range(1, dga.n_components + 1):
        if not values.get(f"t{i}"):
            bad.append(f"t{i} is not invertible")
    if bad:
        return bad
    for g in dga.generators:
        if values[g.name] and not degree_vanishes(g.degree, m):
            bad.append(f"{g.name} has degree {g.degree} but nonzero value")
    for g in dga.generators:
        dg = dga.differential.get(g.name)
        if dg is not None and evaluate_poly(F, values, dg):
            bad.append(f"eps(d{g.name}) != 0")
    return bad


class _Problem:
    """Augmentation equations as commutative polynomials over F_q in the
    free variables (t-values and chords of degree 0 mod 2m)."""

    def __init__(self, dga: Dga, F: FiniteField, m: int):
        self.F = F
        self.t_names = [f"t{i}" for i in range(1, dga.n_components + 1)]
        self.chord_vars = [g.name for g in dga.generators if degree_vanishes(g.degree, m)]
        self.var_names = self.t_names + self.chord_vars
        index = {v: i for i, v in enumerate(self.var_names)}
        self.n_t = len(self.t_names)
        self.constraints = []
        for g in dga.generators:
            terms = []
            dg = dga.differential.get(g.name)
            for w, c in dg.terms.items() if dg is not None else ():
                if any(not is_t_letter(x) and x not in index for x in w):
                    continue
                coeff = F.from_int(c)
                if not coeff:
                    continue
                letters = tuple(
                    (index["t" + x[1:]], x[0] == "T") if is_t_letter(x) else (index[x], False) for x in w
                )
                terms.append((coeff, letters))
            if terms:
                vars_ = sorted({v for _, ls in terms for v, _ in ls})
                self.constraints.append((terms, vars_))

    def value(self, terms, assign) -> int:
        F = self.F
        add, mul, inv = F.add_table, F.mul_table, F.inv_table
        total = 0
        for coeff, letters in terms:
            r = coeff
            for v, inverse in letters:
                x = assign[v]
                r = mul[r][inv[x] if inverse else x]
                if not r:
                    break
            if r:
                total = add[total][r]
        return total

    def solve(self) -> list[tuple[int, ...]]:
        F = self.F
        n = len(self.var_names)
        assign: list[int | None] = [None] * n
        results: list[tuple[int, ...]] = []
        constraints = self.constraints
        constrained = {v for _, vs in constraints for v in vs}
        loose = [v for v in range(self.n_t, n) if v not in constrained]
        units = F.units
        all_vals = list(range(F.q))

        def domain(v):
            return units if v < self.n_t else all_vals

        def search():
            best = None
            for terms, vs in constraints:
                open_ = [v for v in vs if assign[v] is None]
                if not open_:
                    if self.value(terms, assign):
                        return
                    continue
                if best is None or len(open_) < len(best[1]):
                    best = (terms, open_)
            if best is None:
                for extra in itertools.product(all_vals, repeat=len(loose)):
                    for v, x in zip(loose, extra):
                        assign[v] = x
                    results.append(tuple(assign))
                for v in loose:
                    assign[v] = None
                return
            terms, open_ = best
            # branch on a t-variable first, then on the latest chord
            v = open_[0] if open_[0] < self.n_t else open_[-1]
            if len(open_) == 1:
                for x in domain(v):
                    assign[v] = x
                    if not self.value(terms, assign):
                        search()
                assign[v] = None
                return
            for x in domain(v):
                assign[v] = x
                search()
            assign[v] = None

        search()
        results.sort()
        return results


def enumerate_augmentations(dga: Dga, q: int, m: int = 0) -> list[Augmentation]:
    """All 2m-graded augmentations to F_q, sorted by (t values, chord values)."""
    F = field_of_order(q)
    prob = _Problem(dga, F, m)
    names = prob.var_names
    out = []
    for sol in prob.solve():
        vals = dict(zip(names, sol))
        full = tuple((g.name, vals.get(g.name, 0)) for g in dga.generators) + tuple(
            (t, vals[t]) for t in prob.t_names
        )
        out.append(Augmentation(q, m, full))
    return out


def brute_force_augmentations(dga: Dga, q: int, m: int = 0) -> list[Augmentation]:
    """Exhaustive search over every assignment; an oracle for small DGAs."""
    F = field_of_order(q)
    t_names = [f"t{i}" for i in range(1, dga.n_components + 1)]
    free = [g.name for g in dga.generators if degree_vanishes(g.degree, m)]
    out = []
    for tv in itertools.product(F.units, repeat=len(t_names)):
        for cv in itertools.product(range(q), repeat=len(free)):
            vals = {g.name: 0 for g in dga.generators}
            vals.update(zip(free, cv))
            vals.update(zip(t_names, tv))
            if all(
                evaluate_poly(F, vals, dga.differential[g.name]) == 0
                for g in dga.generators
                if g.name in dga.differential
            ):
                full = tuple((g.name, vals[g.name]) for g in dga.generators) + tuple(
                    (t, vals[t]) for t in t_names
                )
                out.append(Augmentation(q, m, full))
    return out


@dataclass(frozen=True)
class EulerData:
    m: int
    r: dict[int, int]
    s: dict[int, int]
    chi_star: int


def euler_data(dga: Dga, m: int = 0) -> EulerData:
    r = dga.degree_tally()
    if m == 0:
        chi = sum((-1) ** (i % 2) * n if i >= 0 else (-1) ** ((i + 1) % 2) * n for i, n in r.items())
        return EulerData(0, r, {}, chi)
    period = 2 * m
    s: dict[int, int] = {}
    for i, n in r.items():
        k, off = divmod(i, period)
        s[k] = s.get(k, 0) + (-1) ** off * n
    s = dict(sorted(s.items()))
    return EulerData(m, r, s, sum((2 * k + 1) * v for k, v in s.items()))


def normalized_count(dga: Dga, q: int, m: int = 0, count: int | None = None) -> QSqrt:
    """q^(-chi_*/2) (q-1)^(-l) #{A -> F_q}."""
    if count is None:
        count = len(enumerate_augmentations(dga, q, m))
    chi = euler_data(dga, m).chi_star
    return rational_power_of_sqrt(q, -chi) * Fraction(count, (q - 1) ** dga.n_components)
