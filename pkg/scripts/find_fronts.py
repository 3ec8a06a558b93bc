"""Search plat fronts on six strands for Legendrian representatives with a
prescribed Alexander polynomial, shifted Euler characteristic and F_2
augmentation count.  Used to build the m(8_21) and m(9_45) data files.

    python scripts/find_fronts.py --alexander 1,-4,5,-4,1 --chi 3 --augs 16 --max-len 12
"""

import argparse
import sys
from fractions import Fraction

from legcard.aug import euler_data
from legcard.dga import build_dga
from legcard.front import PlatFront
from legcard.ruling import hr_weighted_count


def alexander_at(front: PlatFront, t: Fraction) -> Fraction:
    """Determinant of a Wirtinger-Fox minor at the value t (a knot is assumed)."""
    path = front._traversals[0]
    # passages along the knot: (crossing index, is_over)
    passages = []
    for s, d in path:
        hits = [c for c in front.crossings if s in (c.upper, c.lower)]
        if d == -1:
            hits.reverse()
        passages += [(c.index, c.upper == s) for c in hits]
    n = len(front.crossings)
    if n == 0:
        return Fraction(1)
    # arc numbering: a new arc starts after each under-passage
    unders = [i for i, (_, over) in enumerate(passages) if not over]
    arc_of = {}
    arc = 0
    start = unders[-1]
    L = len(passages)
    for step in range(1, L + 1):
        i = (start + step) % L
        arc_of[i] = arc
        if not passages[i][1]:
            arc_of[("in", passages[i][0])] = arc
            arc = (arc + 1) % len(unders)
            arc_of[("out", passages[i][0])] = arc
    for i, (c, over) in enumerate(passages):
        if over:
            arc_of[("over", c)] = arc_of[i]
    rows = []
    for c in front.crossings:
        row = [Fraction(0)] * len(unders)
        sign = front.crossing_sign(c)
        k, a, b = arc_of[("over", c.index)], arc_of[("in", c.index)], arc_of[("out", c.index)]
        row[k] += 1 - t
        if sign > 0:
            row[a] += t
            row[b] -= 1
        else:
            row[a] -= 1
            row[b] += t
        rows.append(row)
    m = [r[1:] for r in rows[1:]]
    return _det(m)


def _det(m):
    m = [list(r) for r in m]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[i])]
    return det


def matches_alexander(front, coeffs) -> bool:
    exps = None
    for t in (Fraction(2), Fraction(3), Fraction(5)):
        want = sum(c * t**i for i, c in enumerate(coeffs))
        got = alexander_at(front, t)
        if got == 0:
            return False
        ratio = got / want
        e, r = 0, abs(ratio)
        while r.denominator % t.numerator == 0 and r != 1:
            r *= t
            e -= 1
        while r.numerator % t.numerator == 0 and r != 1:
            r /= t
            e += 1
        if r != 1:
            return False
        if exps is not None and e != exps:
            return False
        exps = e
    return True


def words(length, letters=5):
    """Normal forms for the commutation of far-apart crossings."""
    def rec(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for e in range(1, letters + 1):
            if prefix and abs(prefix[-1] - e) >= 2 and e < prefix[-1]:
                continue
            prefix.append(e)
            yield from rec(prefix)
            prefix.pop()
    yield from rec([])


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--alexander", required=True)
    ap.add_argument("--chi", type=int, required=True)
    ap.add_argument("--augs", type=int, required=True)
    ap.add_argument("--min-len", type=int, default=8)
    ap.add_argument("--max-len", type=int, default=12)
    args = ap.parse_args(argv)
    coeffs = [int(x) for x in args.alexander.split(",")]
    for length in range(args.min_len, args.max_len + 1):
        for ev in words(length):
            if ev[0] % 2 == 1 or ev[-1] % 2 == 1:
                continue
            f = PlatFront(3, ev)
            if f.n_components != 1 or not f.has_maslov_potential():
                continue
            dga = build_dga(f)
            if euler_data(dga).chi_star != args.chi:
                continue
            if hr_weighted_count(f, 2) != args.augs:
                continue
            if matches_alexander(f, coeffs):
                print(length, list(ev), flush=True)


if __name__ == "__main__":
    sys.exit(main())
