"""Plat-position front diagrams.

A plat front on ``2n`` strands has ``n`` left cusps at the far left joining
positions ``(1,2), (3,4), ...`` and ``n`` right cusps at the far right joining
the same pairs.  In between sits a sequence of crossings; the event ``p`` swaps
the strands at positions ``p`` and ``p+1`` (positions counted from the bottom).

Strands are named by their left-end position.  Around a crossing the strand
that is on top just to the left of it (``T``) has the more negative slope and
passes in front; the other one is ``B``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources


class FrontError(ValueError):
    pass


class RotationError(FrontError):
    """Raised when a component has nonzero rotation number (no Z-valued
    Maslov potential exists)."""


@dataclass(frozen=True)
class Crossing:
    index: int  # 1-based, left to right
    position: int  # swaps positions p, p+1
    upper: int  # strand T (upper-left, passes in front)
    lower: int  # strand B


@dataclass(frozen=True)
class PlatFront:
    n_cusps: int
    events: tuple[int, ...]
    name: str = ""
    maslov_shift: dict = field(default_factory=dict, compare=False, hash=False)
    basepoint_cusp: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(int(e) for e in self.events))
        object.__setattr__(
            self, "maslov_shift", {int(k): int(v) for k, v in self.maslov_shift.items()}
        )
        object.__setattr__(
            self, "basepoint_cusp", {int(k): int(v) for k, v in self.basepoint_cusp.items()}
        )
        if self.n_cusps < 1:
            raise FrontError("a front needs at least one left cusp")
        top = 2 * self.n_cusps - 1
        for k, p in enumerate(self.events, 1):
            if not 1 <= p <= top:
                raise FrontError(f"crossing {k} at position {p} is out of range 1..{top}")
        for comp, cusp in self.basepoint_cusp.items():
            if not 1 <= comp <= self.n_components:
                raise FrontError(f"basepoint given for unknown component {comp}")
            if self.right_cusp_component(cusp) != comp:
                raise FrontError(f"right cusp {cusp} does not lie on component {comp}")
        for comp in self.maslov_shift:
            if not 1 <= comp <= self.n_components:
                raise FrontError(f"maslov shift given for unknown component {comp}")

    # -- combinatorics of the strands -------------------------------------
    @property
    def n_strands(self) -> int:
        return 2 * self.n_cusps

    @cached_property
    def slices(self) -> list[tuple[int, ...]]:
        """``slices[j][pos-1]`` is the strand at ``pos`` after ``j`` events."""
        cur = list(range(1, self.n_strands + 1))
        out = [tuple(cur)]
        for p in self.events:
            cur[p - 1], cur[p] = cur[p], cur[p - 1]
            out.append(tuple(cur))
        return out

    @cached_property
    def crossings(self) -> list[Crossing]:
        out = []
        for k, p in enumerate(self.events, 1):
            before = self.slices[k - 1]
            out.append(Crossing(k, p, upper=before[p], lower=before[p - 1]))
        return out

    def right_position(self, strand: int) -> int:
        return self.slices[-1].index(strand) + 1

    def _cusp_partner_left(self, strand: int) -> int:
        return strand + 1 if strand % 2 else strand - 1

    def _cusp_partner_right(self, strand: int) -> int:
        r = self.right_position(strand)
        r2 = r + 1 if r % 2 else r - 1
        return self.slices[-1][r2 - 1]

    @cached_property
    def _traversals(self) -> list[list[tuple[int, int]]]:
        """Per component: the strands in traversal order with direction
        (+1 rightwards), starting rightwards on the lower strand of the
        component's lowest left cusp."""
        seen: set[int] = set()
        comps = []
        for k in range(1, self.n_cusps + 1):
            start = 2 * k - 1
            if start in seen:
                continue
            path = []
            s, d = start, 1
            while True:
                path.append((s, d))
                seen.add(s)
                s = self._cusp_partner_right(s) if d == 1 else self._cusp_partner_left(s)
                d = -d
                if (s, d) == (start, 1):
                    break
            comps.append(path)
        return comps

    @property
    def n_components(self) -> int:
        return len(self._traversals)

    @cached_property
    def strand_component(self) -> dict[int, int]:
        return {s: i for i, path in enumerate(self._traversals, 1) for s, _ in path}

    def right_cusp_strands(self, cusp: int) -> tuple[int, int]:
        """(lower, upper) strands meeting at right cusp ``cusp``."""
        last = self.slices[-1]
        return last[2 * cusp - 2], last[2 * cusp - 1]

    def right_cusp_component(self, cusp: int) -> int:
        if not 1 <= cusp <= self.n_cusps:
            raise FrontError(f"no right cusp {cusp}")
        return self.strand_component[self.right_cusp_strands(cusp)[0]]

    @cached_property
    def basepoints(self) -> dict[int, int]:
        """Component -> right cusp carrying its base point."""
        out = {}
        for cusp in range(1, self.n_cusps + 1):
            out.setdefault(self.right_cusp_component(cusp), cusp)
        out.update(self.basepoint_cusp)
        return out

    # -- rotation and Maslov potential ------------------------------------
    def _cusp_steps(self, path):
        """Yield (from_strand, to_strand, up) for each cusp along ``path``."""
        for i, (s, d) in enumerate(path):
            nxt = path[(i + 1) % len(path)][0]
            if d == 1:
                up = self.right_position(s) % 2 == 1
            else:
                up = s % 2 == 1
            yield s, nxt, up

    @cached_property
    def rotation_numbers(self) -> list[int]:
        out = []
        for path in self._traversals:
            ups = sum(1 for _, _, up in self._cusp_steps(path) if up)
            downs = len(path) - ups
            out.append((downs - ups) // 2)
        return out

    @cached_property
    def maslov(self) -> dict[int, int]:
        """Maslov potential, strand -> integer."""
        mu: dict[int, int] = {}
        for comp, path in enumerate(self._traversals, 1):
            if self.rotation_numbers[comp - 1] != 0:
                raise RotationError(
                    f"component {comp} has rotation number {self.rotation_numbers[comp - 1]}; "
                    "no Z-valued Maslov potential exists"
                )
            vals = {path[0][0]: 0}
            for s, nxt, up in self._cusp_steps(path):
                vals[nxt] = vals[s] + (1 if up else -1)
            lower, _ = self.right_cusp_strands(self.basepoints[comp])
            shift = self.maslov_shift.get(comp, 0) - vals[lower]
            mu.update({s: v + shift for s, v in vals.items()})
        return mu

    def has_maslov_potential(self) -> bool:
        return all(r == 0 for r in self.rotation_numbers)

    def orientation(self, strand: int) -> int:
        """+1 if the strand is oriented rightwards; induced by potential parity."""
        return 1 if self.maslov[strand] % 2 == 0 else -1

    def crossing_degree(self, c: Crossing) -> int:
        return self.maslov[c.upper] - self.maslov[c.lower]

    def crossing_sign(self, c: Crossing) -> int:
        # over strand T has direction (1,-1) when oriented rightwards, B has (1,1)
        ox, oy = self.orientation(c.upper), -self.orientation(c.upper)
        ux, uy = self.orientation(c.lower), self.orientation(c.lower)
        return 1 if ox * uy - oy * ux > 0 else -1

    def writhe(self) -> int:
        return sum(self.crossing_sign(c) for c in self.crossings)

    def slice_potentials(self, j: int) -> list[int]:
        return [self.maslov[s] for s in self.slices[j]]

    # -- I/O ----------------------------------------------------------------
    def to_dict(self) -> dict:
        d = {"name": self.name, "left_cusps": self.n_cusps, "events": list(self.events)}
        if self.maslov_shift:
            d["maslov_shift"] = {str(k): v for k, v in sorted(self.maslov_shift.items())}
        if self.basepoint_cusp:
            d["basepoint_cusp"] = {str(k): v for k, v in sorted(self.basepoint_cusp.items())}
        return d

    def with_shift(self, shifts: dict[int, int]) -> "PlatFront":
        return PlatFront(self.n_cusps, self.events, self.name, dict(shifts), dict(self.basepoint_cusp))


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rotation: tuple[int, ...]
    n_components: int


def classical_invariants(front: PlatFront) -> ClassicalInvariants:
    """tb = writhe - #right cusps; rotation numbers per component.

    The writhe needs an orientation; when every component has rotation 0 the
    orientation induced by the Maslov potential is used, otherwise the
    traversal orientation.
    """
    if front.has_maslov_potential():
        w = front.writhe()
    else:
        direction = {}
        for path in front._traversals:
            direction.update(dict(path))
        w = 0
        for c in front.crossings:
            o_t, o_b = direction[c.upper], direction[c.lower]
            w += 1 if o_t == o_b else -1
    return ClassicalInvariants(w - front.n_cusps, tuple(front.rotation_numbers), front.n_components)


def maslov(front: PlatFront) -> dict[int, int]:
    return front.maslov


def parse_front(text: str) -> PlatFront:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrontError(f"malformed front file: {exc}") from exc
    return front_from_dict(data)


def front_from_dict(data: dict) -> PlatFront:
    if not isinstance(data, dict) or "left_cusps" not in data or "events" not in data:
        raise FrontError("front needs 'left_cusps' and 'events'")
    if not isinstance(data["left_cusps"], int) or not isinstance(data["events"], list):
        raise FrontError("'left_cusps' must be an integer and 'events' a list")
    if not all(isinstance(e, int) for e in data["events"]):
        raise FrontError("events must be integers")
    front = PlatFront(
        n_cusps=data["left_cusps"],
        events=tuple(data["events"]),
        name=data.get("name", ""),
        maslov_shift=data.get("maslov_shift") or {},
        basepoint_cusp=data.get("basepoint_cusp") or {},
    )
    if not front.has_maslov_potential():
        bad = [i for i, r in enumerate(front.rotation_numbers, 1) if r]
        raise RotationError(f"components {bad} have nonzero rotation number")
    return front


def serialize_front(front: PlatFront) -> str:
    return json.dumps(front.to_dict(), indent=2) + "\n"


EXAMPLES = ("unknot", "unlink", "hopf", "trefoil", "m821", "m945")


def load_example(name: str) -> PlatFront:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    text = resources.files("legcard.data").joinpath(f"{name}.json").read_text()
    return parse_front(text)
