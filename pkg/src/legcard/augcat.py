"""The augmentation category at the level of m_1: Hom complexes between
augmentations, their cohomology, automorphism counts, the transport
construction, isomorphism classes and the cardinalities built from them.

Hom(e1, e2) has basis y_1..y_l (degree 0), x_1..x_l (degree 1) and one a_j^+
per chord (degree |a_j| + 1, reduced mod 2m when m >= 1).  Elements are lists
of field codes in that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from legcard.arith import FiniteField, QSqrt, field_of_order, qsqrt_eval_laurent, rational_power_of_sqrt
from legcard.aug import Augmentation, enumerate_augmentations, euler_data, is_augmentation
from legcard.dga import Dga, is_t_letter, t_index
from legcard.ruling import degree_vanishes


class AugCatError(RuntimeError):
    pass


def reduce_degree(degree: int, m: int) -> int:
    return degree if m == 0 else degree % (2 * m)


# -- compiled differential ------------------------------------------------------


@dataclass(frozen=True)
class _Compiled:
    """The differential as integer-indexed words, for fast evaluation.

    Letters are encoded as (kind, index): kind 0 a chord (index into the
    generator list), kind 1 t_i, kind 2 t_i^-1 (index i - 1).
    """

    words: tuple  # per generator k: tuple of (coeff, letters)

    @classmethod
    def of(cls, dga: Dga) -> "_Compiled":
        pos = {g.name: i for i, g in enumerate(dga.generators)}
        out = []
        for g in dga.generators:
            ws = []
            for w, c in dga.differential.get(g.name, {}).terms.items() if g.name in dga.differential else ():
                letters = tuple(
                    ((1 if x[0] == "t" else 2), t_index(x) - 1) if is_t_letter(x) else (0, pos[x]) for x in w
                )
                ws.append((c, letters))
            out.append(tuple(ws))
        return cls(tuple(out))


_CACHE: dict[int, tuple[Dga, _Compiled]] = {}


def _compiled(dga: Dga) -> _Compiled:
    hit = _CACHE.get(id(dga))
    if hit is None or hit[0] is not dga:
        hit = (dga, _Compiled.of(dga))
        _CACHE[id(dga)] = hit
    return hit[1]


def _letter_values(F: FiniteField, dga: Dga, aug: Augmentation):
    """(chord values, t values, t inverse values) as lists of codes."""
    vals = aug.as_dict()
    chords = [vals.get(g.name, 0) for g in dga.generators]
    ts = [vals[f"t{i}"] for i in range(1, dga.n_components + 1)]
    return chords, ts, [F.inv(t) for t in ts]


def _value(letter, chords, ts, tinv):
    kind, i = letter
    return chords[i] if kind == 0 else ts[i] if kind == 1 else tinv[i]


# -- Hom complexes ---------------------------------------------------------------


@dataclass(frozen=True)
class HomComplex:
    q: int
    m: int
    n_components: int
    labels: tuple[str, ...]
    degrees: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]  # matrix[i][j]: coefficient of basis i in m1(basis j)

    @property
    def field(self) -> FiniteField:
        return field_of_order(self.q)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def indices(self, degree: int) -> list[int]:
        d = reduce_degree(degree, self.m)
        return [i for i, e in enumerate(self.degrees) if e == d]

    def graded_degrees(self) -> list[int]:
        if self.m:
            return list(range(2 * self.m))
        return sorted(set(self.degrees))

    def apply(self, vec) -> list[int]:
        F = self.field
        add, mul = F.add_table, F.mul_table
        out = [0] * self.dim
        for j, v in enumerate(vec):
            if v:
                for i in range(self.dim):
                    c = self.matrix[i][j]
                    if c:
                        out[i] = add[out[i]][mul[c][v]]
        return out

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.matrix]

    def squared(self) -> list[list[int]]:
        """The matrix of m1 o m1."""
        F = self.field
        add, mul = F.add_table, F.mul_table
        n = self.dim
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            row = self.matrix[i]
            for k in range(n):
                a = row[k]
                if a:
                    other = self.matrix[k]
                    for j in range(n):
                        if other[j]:
                            out[i][j] = add[out[i][j]][mul[a][other[j]]]
        return out

    def squares_to_zero(self) -> bool:
        return not any(any(r) for r in self.squared())

    def degree_violations(self) -> list[str]:
        bad = []
        for j in range(self.dim):
            for i in range(self.dim):
                if self.matrix[i][j] and self.degrees[i] != reduce_degree(self.degrees[j] + 1, self.m):
                    bad.append(f"m1({self.labels[j]}) hits {self.labels[i]}")
        return bad

    def filtration_level(self, i: int) -> int:
        """-1 for y, 0 for x, the height index h >= 1 for a_h^+."""
        lab = self.labels[i]
        if lab[0] == "y":
            return -1
        if lab[0] == "x":
            return 0
        return i - 2 * self.n_components + 1

    def filtration_violations(self) -> list[str]:
        """m1(F^i) must lie in F^(i+1)."""
        bad = []
        for j in range(self.dim):
            lj = self.filtration_level(j)
            for i in range(self.dim):
                if self.matrix[i][j] and self.filtration_level(i) < lj + 1:
                    bad.append(f"m1({self.labels[j]}) has a {self.labels[i]} component")
        return bad


def build_hom(dga: Dga, e1: Augmentation, e2: Augmentation, m: int | None = None, x_rule: str = "basepoint") -> HomComplex:
    """The complex Hom(e1, e2) with its differential m1.

    ``x_rule`` selects the linearization of t-letters giving m1(x_i^+):
    "basepoint" (the default, e1(t) on t and -e2(t)^-1 on t^-1) or "none"
    (m1(x^+) = 0, kept for negative controls).
    """
    if (e1.q, e1.m) != (e2.q, e2.m):
        raise ValueError("augmentations over different fields or gradings")
    if m is None:
        m = e1.m
    q = e1.q
    F = field_of_order(q)
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    ell = dga.n_components
    gens = dga.generators
    r = len(gens)
    n = 2 * ell + r
    labels = tuple([f"y{i}" for i in range(1, ell + 1)] + [f"x{i}" for i in range(1, ell + 1)] + [g.name + "+" for g in gens])
    degrees = tuple([0] * ell + [reduce_degree(1, m)] * ell + [reduce_degree(g.degree + 1, m) for g in gens])
    M = [[0] * n for _ in range(n)]
    c1, t1, ti1 = _letter_values(F, dga, e1)
    c2, t2, ti2 = _letter_values(F, dga, e2)
    A = 2 * ell  # offset of the chord block

    # m1(y_i^+)
    for i in range(ell):
        M[ell + i][i] = add[mul[ti1[i]][t2[i]]][neg[1]]
    for j, g in enumerate(gens):
        if c2[j]:
            M[A + j][g.r - 1] = add[M[A + j][g.r - 1]][c2[j]]
        if c1[j]:
            v = c1[j] if g.degree % 2 == 0 else neg[c1[j]]
            M[A + j][g.c - 1] = add[M[A + j][g.c - 1]][neg[v]]

    # m1(a_j^+) and m1(x_i^+) from the words of each d a_k
    words = _compiled(dga).words
    for k in range(r):
        for coeff, letters in words[k]:
            s = F.from_int(coeff)
            if not s:
                continue
            L = len(letters)
            pre = [1] * (L + 1)  # e1 of the first l letters
            for l, x in enumerate(letters):
                pre[l + 1] = mul[pre[l]][_value(x, c1, t1, ti1)]
            suf = [1] * (L + 1)  # e2 of the letters after position l
            for l in range(L - 1, -1, -1):
                suf[l] = mul[_value(letters[l], c2, t2, ti2)][suf[l + 1]]
            for l, (kind, idx) in enumerate(letters):
                base = mul[mul[s][pre[l]]][suf[l + 1]]
                if not base:
                    continue
                if kind == 0:
                    M[A + k][A + idx] = add[M[A + k][A + idx]][base]
                elif x_rule == "basepoint":
                    c = t1[idx] if kind == 1 else neg[inv[t2[idx]]]
                    M[A + k][ell + idx] = add[M[A + k][ell + idx]][mul[base][c]]
                elif x_rule != "none":
                    raise ValueError(f"unknown x_rule {x_rule!r}")
    return HomComplex(q, m, ell, labels, degrees, tuple(tuple(row) for row in M))


# -- cohomology ------------------------------------------------------------------


@dataclass(frozen=True)
class Cohomology:
    m: int
    hom: dict[int, int]
    boundaries: dict[int, int]  # dim B^i
    cocycles: dict[int, int]  # dim Z^i
    h: dict[int, int]  # dim H^i

    def H(self, i: int) -> int:
        return self.h.get(reduce_degree(i, self.m), 0)

    def B(self, i: int) -> int:
        return self.boundaries.get(reduce_degree(i, self.m), 0)

    def Hom(self, i: int) -> int:
        return self.hom.get(reduce_degree(i, self.m), 0)


def _rank_of_columns(hc: HomComplex, cols: list[int]) -> int:
    if not cols:
        return 0
    return hc.field.rank([hc.column(j) for j in cols])


def cohomology(hc: HomComplex) -> Cohomology:
    degs = hc.graded_degrees()
    hom = {d: len(hc.indices(d)) for d in degs}
    rank = {d: _rank_of_columns(hc, hc.indices(d)) for d in degs}
    b = {}
    for d in degs:
        prev = reduce_degree(d - 1, hc.m)
        b[d] = rank.get(prev, 0)
    z = {d: hom[d] - rank[d] for d in degs}
    h = {d: z[d] - b[d] for d in degs}
    return Cohomology(hc.m, hom, b, z, h)


def count_unit_cocycles(hc: HomComplex) -> int:
    """Number of closed degree-0 elements whose y-coefficients are all units
    (inclusion-exclusion over the coordinate subspaces y_S = 0)."""
    F = hc.field
    q = F.q
    ell = hc.n_components
    cols0 = hc.indices(0)
    total = 0
    for size in range(ell + 1):
        for S in itertools.combinations(range(ell), size):
            cols = [j for j in cols0 if j not in S]
            kernel = len(cols) - _rank_of_columns(hc, cols)
            total += (-1) ** size * q**kernel
    return total


def aut_count(dga: Dga, aug: Augmentation, m: int | None = None, x_rule: str = "basepoint") -> int:
    """|Aut(e)|: closed unit-y degree-0 self-morphisms modulo coboundaries."""
    hc = build_hom(dga, aug, aug, m, x_rule)
    units = count_unit_cocycles(hc)
    b0 = cohomology(hc).B(0)
    n, rem = divmod(units, hc.q**b0)
    if rem:
        raise AugCatError("unit count is not a multiple of the coboundary count")
    return n


# -- transport ---------------------------------------------------------------------


def transport_chords(dga: Dga, m: int) -> list[str]:
    """Chords of degree -1 (mod 2m): the free a^+ coefficients in Hom^0."""
    return [g.name for g in dga.generators if degree_vanishes(g.degree + 1, m)]


@dataclass(frozen=True)
class Transport:
    target: Augmentation
    homotopy: dict[str, int]  # K on chords
    intermediate: dict[str, int]  # e' on chords
    alpha: tuple[int, ...]  # in the basis of Hom(e1, target)


def transport(dga: Dga, e1: Augmentation, d, k: dict[str, int] | None = None, check: bool = True) -> Transport:
    """Build the unique target e2 making a = sum d_i y_i + sum k_j a_j^+ closed.

    e' is defined by height induction, e'(a) = e1(a) - K(d a), where K is the
    (e1, e')-derivation with K(a_j) = k_j / d_c(a_j); then
    e2(a_j) = d_c(a_j) / d_r(a_j) * e'(a_j) and e2(t) = e1(t).
    """
    F = e1.field
    add, mul, neg, inv = F.add_table, F.mul_table, F.neg_table, F.inv_table
    m = e1.m
    k = dict(k or {})
    d = list(d)
    if len(d) != dga.n_components or not all(d):
        raise ValueError("d needs one unit per component")
    free = set(transport_chords(dga, m))
    if set(k) - free:
        raise ValueError(f"k given on chords {sorted(set(k) - free)} not of degree -1")
    gens = dga.generators
    c1, t1, ti1 = _letter_values(F, dga, e1)
    ep = [0] * len(gens)
    K = [0] * len(gens)
    words = _compiled(dga).words
    for i, g in enumerate(gens):
        # K(d a_i) = sum over words of e1(prefix) K(letter) e'(suffix)
        kd = 0
        for coeff, letters in words[i]:
            s = F.from_int(coeff)
            if not s:
                continue
            L = len(letters)
            suf = [1] * (L + 1)
            for l in range(L - 1, -1, -1):
                suf[l] = mul[_value(letters[l], ep, t1, ti1)][suf[l + 1]]
            pre = s
            for l, (kind, idx) in enumerate(letters):
                if kind == 0 and K[idx]:
                    kd = add[kd][mul[mul[pre][K[idx]]][suf[l + 1]]]
                pre = mul[pre][_value((kind, idx), c1, t1, ti1)]
                if not pre:
                    break
        ep[i] = add[c1[i]][neg[kd]]
        K[i] = mul[k.get(g.name, 0)][inv[d[g.c - 1]]] if g.name in k else 0
    vals = {g.name: mul[mul[d[g.c - 1]][inv[d[g.r - 1]]]][ep[i]] for i, g in enumerate(gens)}
    for i in range(dga.n_components):
        vals[f"t{i + 1}"] = t1[i]
    target = Augmentation(e1.q, m, tuple((g.name, vals[g.name]) for g in gens) + tuple(
        (f"t{i}", vals[f"t{i}"]) for i in range(1, dga.n_components + 1)
    ))
    alpha = tuple(d) + (0,) * dga.n_components + tuple(k.get(g.name, 0) for g in gens)
    if check:
        bad = is_augmentation(dga, F, target.as_dict(), m)
        if bad:
            raise AugCatError(f"transport produced a non-augmentation: {bad}")
        hc = build_hom(dga, e1, target)
        if any(hc.apply(alpha)):
            raise AugCatError("transported morphism is not closed")
    return Transport(
        target,
        {g.name: K[i] for i, g in enumerate(gens)},
        {g.name: ep[i] for i, g in enumerate(gens)},
        alpha,
    )


def transport_parameters(dga: Dga, q: int, m: int):
    """All (d, k) choices: (q-1)^l q^r' of them."""
    F = field_of_order(q)
    names = transport_chords(dga, m)
    for d in itertools.product(F.units, repeat=dga.n_components):
        for ks in itertools.product(range(q), repeat=len(names)):
            yield d, dict(zip(names, ks))


def n_transport_parameters(dga: Dga, q: int, m: int) -> int:
    return (q - 1) ** dga.n_components * q ** len(transport_chords(dga, m))


# -- isomorphism classes -----------------------------------------------------------


def isomorphic(dga: Dga, e1: Augmentation, e2: Augmentation) -> bool:
    """Whether Hom^0(e1, e2) holds a closed element with unit y-coefficients."""
    return count_unit_cocycles(build_hom(dga, e1, e2)) > 0


TRANSPORT_LIMIT = 1024


def iso_classes(dga: Dga, q: int, m: int = 0, augs: list[Augmentation] | None = None, method: str = "auto") -> list[list[Augmentation]]:
    """Partition the augmentations into isomorphism classes.

    "transport" takes orbits of the transport map over every (d, k);
    "hom" tests each augmentation against one representative per class by
    looking for a unit cocycle in Hom^0; "auto" uses transport unless the
    parameter space exceeds TRANSPORT_LIMIT.
    """
    if augs is None:
        augs = enumerate_augmentations(dga, q, m)
    if method == "auto":
        method = "transport" if n_transport_parameters(dga, q, m) <= TRANSPORT_LIMIT else "hom"
    classes: list[list[Augmentation]] = []
    if method == "transport":
        index = {a: i for i, a in enumerate(augs)}
        seen: set[Augmentation] = set()
        for a in augs:
            if a in seen:
                continue
            orbit = {transport(dga, a, d, k, check=False).target for d, k in transport_parameters(dga, q, m)}
            missing = orbit - set(index)
            if missing:
                raise AugCatError("transport left the augmentation set")
            seen |= orbit
            classes.append(sorted(orbit, key=index.__getitem__))
    elif method == "hom":
        for a in augs:
            for cls in classes:
                if isomorphic(dga, cls[0], a):
                    cls.append(a)
                    break
            else:
                classes.append([a])
    else:
        raise ValueError(f"unknown method {method!r}")
    return classes


def predicted_class_size(dga: Dga, aug: Augmentation, m: int | None = None) -> Fraction:
    """(q-1)^l q^(dim Hom^0 - dim B^0 - l) / |Aut(e)|."""
    hc = build_hom(dga, aug, aug, m)
    co = cohomology(hc)
    ell = dga.n_components
    q = aug.q
    return Fraction((q - 1) ** ell * q ** (co.Hom(0) - co.B(0) - ell), aut_count(dga, aug, m))


def unit_morphism_total(dga: Dga, aug: Augmentation, augs: list[Augmentation]) -> int:
    """Closed unit-y degree-0 morphisms out of ``aug``, summed over all targets."""
    return sum(count_unit_cocycles(build_hom(dga, aug, other)) for other in augs)


# -- cardinalities -------------------------------------------------------------------


@dataclass
class ClassInfo:
    representative: Augmentation
    size: int
    aut: int
    cohomology: Cohomology


@dataclass
class CardReport:
    q: int
    m: int
    n_augmentations: int
    classes: list[ClassInfo]
    homotopy_cardinality: QSqrt | None = None
    groupoid_cardinality: Fraction | None = None
    extras: dict = field(default_factory=dict)

    @property
    def sizes_consistent(self) -> bool:
        return sum(c.size for c in self.classes) == self.n_augmentations


def class_data(dga: Dga, q: int, m: int = 0, method: str = "auto") -> CardReport:
    augs = enumerate_augmentations(dga, q, m)
    infos = []
    for cls in iso_classes(dga, q, m, augs, method):
        rep = cls[0]
        hc = build_hom(dga, rep, rep)
        infos.append(ClassInfo(rep, len(cls), aut_count(dga, rep), cohomology(hc)))
    return CardReport(q, m, len(augs), infos)


def _h_factor_exponent(co: Cohomology) -> int:
    """Exponent e with prod_{k odd} |H^-k| / prod_{k even >= 2} |H^-k| = q^e."""
    return sum(n if d % 2 else -n for d, n in co.h.items() if d < 0)


def homotopy_cardinality(dga: Dga, q: int, m: int = 0, report: CardReport | None = None) -> CardReport:
    """Homotopy cardinality of the Z-graded groupoid, plus the groupoid cardinality."""
    if m != 0:
        raise ValueError("the homotopy cardinality is defined for m = 0; use candidate_cardinality_2m")
    rep = report or class_data(dga, q, 0)
    total = QSqrt(q)
    groupoid = Fraction(0)
    for c in rep.classes:
        e = _h_factor_exponent(c.cohomology)
        total = total + QSqrt(q, Fraction(q) ** e / c.aut)
        groupoid += Fraction(1, c.aut)
    rep.homotopy_cardinality = total
    rep.groupoid_cardinality = groupoid
    return rep


def theorem_rhs(dga: Dga, q: int, count: int, chi_star: int) -> QSqrt:
    """q^((tb - chi_*)/2) (q-1)^(-l) #augs."""
    return rational_power_of_sqrt(q, dga.tb() - chi_star) * Fraction(count, (q - 1) ** dga.n_components)


def ruling_side(tb: int, q: int, poly) -> QSqrt:
    """q^(tb/2) R(q^(1/2) - q^(-1/2))."""
    return rational_power_of_sqrt(q, tb) * qsqrt_eval_laurent(poly, q)


@dataclass
class CandidateReport:
    q: int
    m: int
    prop_form: QSqrt
    cor_form: QSqrt
    even_form: QSqrt | None
    tb_checks: list[str]


def candidate_cardinality_2m(dga: Dga, q: int, m: int, report: CardReport | None = None) -> CandidateReport:
    """The two 2m-graded candidates (and for m = 1 the |H^ev| form)."""
    if m < 1:
        raise ValueError("candidate_cardinality_2m needs m >= 1")
    rep = report or class_data(dga, q, m)
    ell = dga.n_components
    tb = dga.tb()
    chi = euler_data(dga, m).chi_star
    prop = QSqrt(q)
    cor = QSqrt(q)
    even = QSqrt(q) if m == 1 else None
    notes = []
    for c in rep.classes:
        co = c.cohomology
        w = Fraction(1, c.aut)
        prop = prop + rational_power_of_sqrt(q, 2 * (co.Hom(0) - co.B(0) - ell) - (chi - tb)) * w
        cor = cor + rational_power_of_sqrt(q, 2 * co.H(0) - co.H(1) + tb - ell) * w
        if m == 1:
            even = even + rational_power_of_sqrt(q, co.H(0) - ell) * w
            if tb != co.H(1) - co.H(0):
                notes.append(f"tb = {tb} but dim H^1 - dim H^0 = {co.H(1) - co.H(0)}")
    return CandidateReport(q, m, prop, cor, even, notes)


# -- the conjectural identity ----------------------------------------------------------


@dataclass(frozen=True)
class ConjectureCase:
    augmentation: Augmentation
    z_graded: bool
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def is_z_graded(dga: Dga, aug: Augmentation) -> bool:
    vals = aug.as_dict()
    return all(vals[g.name] == 0 for g in dga.generators if g.degree != 0)


def conjecture_harness(dga: Dga, q: int, m: int, augs: list[Augmentation] | None = None, x_rule: str = "basepoint") -> list[ConjectureCase]:
    """2 dim Hom^0 - 2 dim B^0 - l - chi_* against 2 dim H^0 - dim H^1, per augmentation."""
    if augs is None:
        augs = enumerate_augmentations(dga, q, m)
    chi = euler_data(dga, m).chi_star
    ell = dga.n_components
    out = []
    for a in augs:
        co = cohomology(build_hom(dga, a, a, m, x_rule))
        lhs = 2 * co.Hom(0) - 2 * co.B(0) - ell - chi
        rhs = 2 * co.H(0) - co.H(1)
        out.append(ConjectureCase(a, is_z_graded(dga, a), lhs, rhs))
    return out


# -- duality and Euler characteristic checks ------------------------------------------


def duality_violations(dga: Dga, aug: Augmentation, x_rule: str = "basepoint") -> list[str]:
    """dim H^i = dim H^(2-i) for i != 0, 2 and dim H^0 = dim H^2 + l on a
    Z-graded self-Hom."""
    co = cohomology(build_hom(dga, aug, aug, 0, x_rule))
    bad = []
    degs = set(co.h) | {2 - i for i in co.h}
    for i in sorted(degs):
        if i in (0, 2):
            continue
        if co.H(i) != co.H(2 - i):
            bad.append(f"dim H^{i} = {co.H(i)} but dim H^{2 - i} = {co.H(2 - i)}")
    if co.H(0) != co.H(2) + dga.n_components:
        bad.append(f"dim H^0 = {co.H(0)} but dim H^2 + l = {co.H(2) + dga.n_components}")
    return bad


def euler_of_hom(hc: HomComplex) -> int:
    """sum (-1)^i dim Hom^i (Z-graded degrees)."""
    return sum(-1 if d % 2 else 1 for d in hc.degrees)
