"""The Chekanov-Eliashberg DGA of the resolution of a plat front.

Generators are the crossings ``a1..an`` (left to right) followed by the right
cusps (bottom to top); the height index is this order.  Invertible generators
``t1..tl`` sit at one base point per component, on the loop of a right cusp;
``Ti`` denotes ``ti^-1`` in words.

The differential counts admissible disks of the front: immersed disks whose
boundary runs along the front, with a single left cusp, the positive corner
at the right end (a crossing, disk in its left quadrant, or a right cusp), and
convex negative corners at crossings (top quadrant on the lower boundary,
bottom quadrant on the upper boundary).  A right cusp also bounds its own small
loop, which contributes ``1`` (or ``ti`` when the loop carries the base point).
A disk's word lists the upper-boundary corners from right to left, then the
lower-boundary corners from left to right.

Orientation signs: at a crossing of even degree the bottom quadrant (and the
unused right quadrant) is negative; all other quadrants are positive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from legcard.front import PlatFront

Word = tuple[str, ...]

NEGATIVE_QUADRANTS = frozenset({"bottom"})


class DgaError(ValueError):
    pass


def is_t_letter(letter: str) -> bool:
    return letter[0] in "tT"


def t_index(letter: str) -> int:
    return int(letter[1:])


class NcPoly:
    """Z-linear combination of words in noncommuting letters."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, int] | None = None):
        self.terms = {tuple(w): c for w, c in (terms or {}).items() if c}

    @classmethod
    def from_pairs(cls, pairs) -> "NcPoly":
        out: dict[Word, int] = {}
        for c, w in pairs:
            w = tuple(w)
            out[w] = out.get(w, 0) + c
        return cls(out)

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return NcPoly(out)

    def scale(self, k: int) -> "NcPoly":
        return NcPoly({w: k * c for w, c in self.terms.items()})

    def __mul__(self, other: "NcPoly") -> "NcPoly":
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _reduce_word(w1 + w2)
                out[w] = out.get(w, 0) + c1 * c2
        return NcPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0])):
            mono = "*".join(w) if w else "1"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}" if w else str(abs(c))
            if not parts:
                parts.append(("-" if c < 0 else "") + mono)
            else:
                parts.append(("- " if c < 0 else "+ ") + mono)
        return " ".join(parts)

    __repr__ = __str__


def _reduce_word(w: Word) -> Word:
    """Cancel adjacent t_i T_i pairs."""
    out: list[str] = []
    for x in w:
        if out and is_t_letter(x) and is_t_letter(out[-1]) and out[-1][1:] == x[1:] and out[-1][0] != x[0]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    r: int
    c: int
    height: int


@dataclass(frozen=True)
class Disk:
    sign: int
    word: Word
    corners: tuple = ()  # ((crossing index, quadrant), ...) for negative corners


@dataclass
class Dga:
    n_components: int
    generators: list[Generator]
    differential: dict[str, NcPoly]
    disks: dict[str, list[Disk]] = field(default_factory=dict)

    def __post_init__(self):
        self.generators = sorted(self.generators, key=lambda g: g.height)
        self.by_name = {g.name: g for g in self.generators}

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def letter_degree(self, letter: str) -> int:
        return 0 if is_t_letter(letter) else self.by_name[letter].degree

    def word_degree(self, w: Word) -> int:
        return sum(self.letter_degree(x) for x in w)

    def d_word(self, w: Word) -> NcPoly:
        out = NcPoly()
        deg = 0
        for i, x in enumerate(w):
            if not is_t_letter(x):
                dx = self.differential.get(x, NcPoly())
                if dx:
                    left = NcPoly({w[:i]: -1 if deg % 2 else 1})
                    out = out + left * dx * NcPoly({w[i + 1:]: 1})
            deg += self.letter_degree(x)
        return out

    def d(self, poly: NcPoly) -> NcPoly:
        out = NcPoly()
        for w, c in poly.terms.items():
            out = out + self.d_word(w).scale(c)
        return out

    def d_squared(self, name: str) -> NcPoly:
        return self.d(self.differential.get(name, NcPoly()))

    def tb(self) -> int:
        return sum(-1 if g.degree % 2 else 1 for g in self.generators)

    def degree_tally(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.generators:
            out[g.degree] = out.get(g.degree, 0) + 1
        return dict(sorted(out.items()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Dga)
            and self.n_components == other.n_components
            and self.generators == other.generators
            and {k: v for k, v in self.differential.items() if v}
            == {k: v for k, v in other.differential.items() if v}
        )


# -- construction from a front ---------------------------------------------


def _quadrant_sign(degree: int, quadrant: str, negative=NEGATIVE_QUADRANTS) -> int:
    return -1 if degree % 2 == 0 and quadrant in negative else 1


def _enumerate_disks(front: PlatFront, start_slice: int, upper: int, lower: int):
    """Sweep leftwards from ``start_slice`` with boundary positions
    ``upper > lower``; yield (upper corners right-to-left, lower corners
    right-to-left) for every admissible completion at a left cusp."""
    events = front.events

    def walk(j, u, l, up_c, lo_c):
        if j == 0:
            if l % 2 == 1 and u == l + 1:
                yield up_c, lo_c
            return
        p = events[j - 1]
        hit_u, hit_l = u in (p, p + 1), l in (p, p + 1)
        if hit_u and hit_l:
            return
        if not hit_u and not hit_l:
            yield from walk(j - 1, u, l, up_c, lo_c)
        elif hit_u:
            if u == p + 1:
                yield from walk(j - 1, p, l, up_c, lo_c)
            else:
                yield from walk(j - 1, p + 1, l, up_c, lo_c)
                yield from walk(j - 1, p, l, up_c + ((j, "bottom"),), lo_c)
        else:
            if l == p:
                yield from walk(j - 1, u, p + 1, up_c, lo_c)
            else:
                yield from walk(j - 1, u, p, up_c, lo_c)
                yield from walk(j - 1, u, p + 1, up_c, lo_c + ((j, "top"),))

    yield from walk(start_slice, upper, lower, (), ())


def build_dga(front: PlatFront, negative_quadrants=NEGATIVE_QUADRANTS) -> Dga:
    """DGA of the resolved plat front (raises RotationError if no grading)."""
    mu = front.maslov
    comp = front.strand_component
    n = len(front.crossings)
    gens: list[Generator] = []
    crossing_deg: dict[int, int] = {}
    for c in front.crossings:
        deg = mu[c.upper] - mu[c.lower]
        crossing_deg[c.index] = deg
        gens.append(Generator(f"a{c.index}", deg, comp[c.upper], comp[c.lower], c.index))
    cusp_comp = {}
    for i in range(1, front.n_cusps + 1):
        k = comp[front.right_cusp_strands(i)[0]]
        cusp_comp[i] = k
        gens.append(Generator(f"a{n + i}", 1, k, k, n + i))

    def corner_sign(corners):
        s = 1
        for j, quad in corners:
            s *= _quadrant_sign(crossing_deg[j], quad, negative_quadrants)
        return s

    disks: dict[str, list[Disk]] = {}
    for c in front.crossings:
        pos_sign = _quadrant_sign(crossing_deg[c.index], "left", negative_quadrants)
        found = []
        for up_c, lo_c in _enumerate_disks(front, c.index - 1, c.position + 1, c.position):
            corners = up_c + tuple(reversed(lo_c))
            word = tuple(f"a{j}" for j, _ in corners)
            found.append(Disk(pos_sign * corner_sign(corners), word, corners))
        disks[f"a{c.index}"] = found
    for i in range(1, front.n_cusps + 1):
        name = f"a{n + i}"
        loop = (f"t{cusp_comp[i]}",) if front.basepoints[cusp_comp[i]] == i else ()
        found = [Disk(1, loop, ())]
        for up_c, lo_c in _enumerate_disks(front, n, 2 * i, 2 * i - 1):
            corners = up_c + tuple(reversed(lo_c))
            word = tuple(f"a{j}" for j, _ in corners)
            found.append(Disk(corner_sign(corners), word, corners))
        disks[name] = found

    differential = {
        name: NcPoly.from_pairs((d.sign, d.word) for d in ds) for name, ds in disks.items()
    }
    return Dga(front.n_components, gens, differential, disks)


# -- checks -------------------------------------------------------------------


def check_dga(dga: Dga) -> list[str]:
    """Return a list of violated invariants (empty means the DGA is sound)."""
    problems: list[str] = []
    names = set(dga.by_name)
    for g in dga.generators:
        for w in dga.differential.get(g.name, NcPoly()).terms:
            for x in w:
                if is_t_letter(x):
                    if not 1 <= t_index(x) <= dga.n_components:
                        problems.append(f"{g.name}: unknown invertible letter {x}")
                elif x not in names:
                    problems.append(f"{g.name}: unknown letter {x}")
    if problems:
        return problems
    for g in dga.generators:
        dg = dga.differential.get(g.name, NcPoly())
        for w in dg.terms:
            if dga.word_degree(w) != g.degree - 1:
                problems.append(f"degree: word {'*'.join(w) or '1'} in d{g.name} has degree {dga.word_degree(w)}, expected {g.degree - 1}")
            chords = [x for x in w if not is_t_letter(x)]
            if any(dga.by_name[x].height >= g.height for x in chords):
                problems.append(f"filtration: d{g.name} contains {'*'.join(w)}")
            # walk the boundary: each letter must start on the component the
            # previous one ended on (t_i sits on component i)
            cur = g.r
            ok = True
            for x in w:
                if is_t_letter(x):
                    ok = ok and t_index(x) == cur
                else:
                    ok = ok and dga.by_name[x].r == cur
                    cur = dga.by_name[x].c
            if not ok or cur != g.c:
                problems.append(f"link grading: word {'*'.join(w) or '1'} in d{g.name}")
        d2 = dga.d_squared(g.name)
        if d2:
            problems.append(f"d^2({g.name}) = {d2} != 0")
    return problems


# -- interchange format ---------------------------------------------------------


def save_dga(dga: Dga) -> str:
    data = {
        "components": dga.n_components,
        "generators": [
            {"name": g.name, "degree": g.degree, "r": g.r, "c": g.c, "height": g.height}
            for g in dga.generators
        ],
        "differential": {
            g.name: [[c, list(w)] for w, c in sorted(dga.differential.get(g.name, NcPoly()).terms.items())]
            for g in dga.generators
        },
    }
    return json.dumps(data, indent=1, sort_keys=False) + "\n"


def load_dga(text: str, check: bool = True) -> Dga:
    try:
        data = json.loads(text)
        gens = [
            Generator(str(g["name"]), int(g["degree"]), int(g["r"]), int(g["c"]), int(g["height"]))
            for g in data["generators"]
        ]
        diff = {
            str(k): NcPoly.from_pairs((int(c), tuple(str(x) for x in w)) for c, w in v)
            for k, v in data["differential"].items()
        }
        dga = Dga(int(data["components"]), gens, diff)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise DgaError(f"malformed DGA file: {exc}") from exc
    unknown = set(diff) - set(dga.by_name)
    if unknown:
        raise DgaError(f"differential given for unknown generators {sorted(unknown)}")
    if len(dga.by_name) != len(gens):
        raise DgaError("duplicate generator names")
    if check:
        problems = check_dga(dga)
        if problems:
            raise DgaError("; ".join(problems))
    return dga
