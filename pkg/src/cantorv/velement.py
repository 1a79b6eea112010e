"""Exact arithmetic in Thompson's group V.

An element is a bijection between two complete prefix codes, acting on
Cantor space by prefix replacement: the pair (u, v) sends every point
u + x to v + x.  The canonical form (pairs sorted by domain word, no
mergeable sibling pair) makes element equality a syntactic check; its
soundness against pointwise behavior is established by the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError
from .words import (
    CylinderSet,
    Point,
    PrefixCode,
    cylinderset_reduce,
    grow_antichain,
    kraft_is_complete,
    point_bit,
    point_normalize,
    point_prefix,
    point_shift,
    refine_common,
    words_comparable,
)


@dataclass(frozen=True)
class VElement:
    """Element of Thompson's V in canonical reduced form."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValidationError("element needs at least one pair")
        dom = PrefixCode(tuple(u for u, _ in self.pairs))
        ran = PrefixCode(tuple(v for _, v in self.pairs))
        if len(dom) != len(self.pairs) or len(ran) != len(self.pairs):
            raise ValidationError("domain/range words must be distinct")
        if not kraft_is_complete(dom):
            raise ValidationError(f"domain code is not complete (Kraft sum != 1): {list(dom.words)}")
        if not kraft_is_complete(ran):
            raise ValidationError(f"range code is not complete (Kraft sum != 1): {list(ran.words)}")
        if self.pairs != tuple(sorted(self.pairs)):
            raise ValidationError("pairs must be sorted by domain word")
        m = dict(self.pairs)
        for u, v in self.pairs:
            if u.endswith("0") and v.endswith("0") and m.get(u[:-1] + "1") == v[:-1] + "1":
                raise ValidationError(f"reducible sibling pair at stems ({u[:-1]!r}, {v[:-1]!r})")

    def domain_code(self) -> PrefixCode:
        return PrefixCode(tuple(u for u, _ in self.pairs))

    def range_code(self) -> PrefixCode:
        return PrefixCode(tuple(v for _, v in self.pairs))


def _reduce_pairs(mapping: dict[str, str]) -> tuple[tuple[str, str], ...]:
    """Merge sibling pairs (u0->v0, u1->v1) => (u->v) to a fixed point."""
    m = dict(mapping)
    merged = True
    while merged:
        merged = False
        for u, v in list(m.items()):
            if u.endswith("0") and v.endswith("0"):
                us, vs = u[:-1], v[:-1]
                if m.get(us + "1") == vs + "1":
                    del m[u]
                    del m[us + "1"]
                    m[us] = vs
                    merged = True
                    break
    return tuple(sorted(m.items()))


def v_from_pairs(pairs: Iterable[tuple[str, str]]) -> VElement:
    """Canonical element from (domain word, range word) pairs.

    The pairs may be unreduced; codes must be complete and the map a
    bijection.
    """
    items = list(pairs)
    m = dict(items)
    if len(m) != len(items):
        raise ValidationError("duplicate domain word in pairs")
    return VElement(_reduce_pairs(m))


def v_make(domain: PrefixCode, range_: PrefixCode, bijection: Sequence[tuple[int, int]]) -> VElement:
    """Element sending domain.words[i] to range_.words[j] for each (i, j)."""
    for code, name in ((domain, "domain"), (range_, "range")):
        if not kraft_is_complete(code):
            raise ValidationError(f"{name} code is not complete (Kraft sum != 1): {list(code.words)}")
    if len(domain) != len(range_):
        raise ValidationError(f"cardinality mismatch: {len(domain)} vs {len(range_)}")
    n = len(domain)
    firsts = [i for i, _ in bijection]
    seconds = [j for _, j in bijection]
    if sorted(firsts) != list(range(n)) or sorted(seconds) != list(range(n)):
        raise ValidationError("bijection must pair each index exactly once")
    return v_from_pairs((domain.words[i], range_.words[j]) for i, j in bijection)


def v_identity() -> VElement:
    return VElement((("", ""),))


def v_is_identity(f: VElement) -> bool:
    return f.pairs == (("", ""),)


def v_equals(f: VElement, g: VElement) -> bool:
    return f.pairs == g.pairs


def v_invert(f: VElement) -> VElement:
    return v_from_pairs((v, u) for u, v in f.pairs)


def v_compose(g: VElement, f: VElement) -> VElement:
    """The element acting as x -> g(f(x))."""
    mid = refine_common(f.range_code(), g.domain_code())
    pairs = []
    for c in mid.words:
        u1, v1 = next(p for p in f.pairs if c.startswith(p[1]))
        u2, v2 = next(p for p in g.pairs if c.startswith(p[0]))
        pairs.append((u1 + c[len(v1):], v2 + c[len(u2):]))
    return v_from_pairs(pairs)


def v_conjugate(f: VElement, by: VElement) -> VElement:
    """by^-1 . f . by"""
    return v_compose(v_compose(v_invert(by), f), by)


def v_commutator(f: VElement, g: VElement) -> VElement:
    """f . g . f^-1 . g^-1"""
    return v_compose(v_compose(v_compose(f, g), v_invert(f)), v_invert(g))


def v_power(f: VElement, n: int) -> VElement:
    if n < 0:
        return v_power(v_invert(f), -n)
    acc = v_identity()
    for _ in range(n):
        acc = v_compose(acc, f)
    return acc


def v_order(f: VElement, bound: int = 12) -> int | None:
    """Order of f if at most bound, else None."""
    acc = f
    for n in range(1, bound + 1):
        if v_is_identity(acc):
            return n
        acc = v_compose(acc, f)
    return None


def _matching_pair(f: VElement, x: Point) -> tuple[str, str]:
    depth = max(len(u) for u, _ in f.pairs)
    px = point_prefix(x, depth)
    return next(p for p in f.pairs if px.startswith(p[0]))


def v_act_point(f: VElement, x: Point) -> Point:
    """Image of an eventually periodic point; again eventually periodic."""
    u, v = _matching_pair(f, x)
    tail = point_shift(x, len(u))
    return point_normalize(v + tail.pre, tail.per)


def v_eval_bit(f: VElement, x: Point, n: int) -> str:
    """Bit n of f(x) computed by the prefix-replacement transducer.

    Reads only max |u| bits of x to find the matching pair (u, v), then
    either outputs a bit of v or copies the input bit at n - |v| + |u|.
    """
    if n < 0:
        raise ValidationError("bit index must be >= 0")
    u, v = _matching_pair(f, x)
    if n < len(v):
        return v[n]
    return point_bit(x, n - len(v) + len(u))


def v_image_of_cylinderset(f: VElement, s: CylinderSet) -> CylinderSet:
    """Image of a clopen set, as a reduced cylinder set."""
    out: list[str] = []
    for w in s.words:
        hit = next((p for p in f.pairs if w.startswith(p[0])), None)
        if hit is not None:
            u, v = hit
            out.append(v + w[len(u):])
        else:
            # [w] splits across several domain cylinders
            out.extend(v for u, v in f.pairs if u.startswith(w))
    return cylinderset_reduce(out)


def v_displaced_cylinder(f: VElement) -> str:
    """A word c with f([c]) disjoint from [c].

    Scan pairs in canonical order for the first with u != v.  If u, v
    are prefix-incomparable, [u] itself is displaced; if one extends
    the other by a suffix s, step off the overlap by appending the
    flipped first bit of s.
    """
    if v_is_identity(f):
        raise ValidationError("the identity displaces no cylinder")
    for u, v in f.pairs:
        if u == v:
            continue
        if not words_comparable(u, v):
            return u
        s = v[len(u):] if len(v) > len(u) else u[len(v):]
        return u + ("1" if s[0] == "0" else "0")
    raise AssertionError("non-identity element with all pairs fixed")


def v_moved_point(f: VElement) -> Point:
    """An eventually periodic point not fixed by f."""
    return point_normalize(v_displaced_cylinder(f), "0")


def pingpong_generators() -> tuple[VElement, VElement]:
    """The order-2 first-bit swap and the order-3 cycle [0]->[10]->[11]->[0].

    Together they generate a copy of Z2 * Z3 inside V, certified by the
    ping-pong inclusions a([10] u [11]) in [0] and (b u b^2)([0]) in
    [10] u [11].
    """
    a = v_from_pairs([("0", "1"), ("1", "0")])
    b = v_from_pairs([("0", "10"), ("10", "11"), ("11", "0")])
    return a, b


def _random_complete_code(size: int, rng: random.Random) -> PrefixCode:
    ws = [""]
    while len(ws) < size:
        w = ws.pop(rng.randrange(len(ws)))
        ws += [w + "0", w + "1"]
    return PrefixCode(tuple(ws))


def v_random(depth: int, rng: random.Random) -> VElement:
    """Random element from two random subdivisions of size <= 2**depth.

    Deterministic given the generator state.
    """
    if depth < 1:
        raise ValidationError("depth must be >= 1")
    size = rng.randint(1, 2 ** depth)
    dom = _random_complete_code(size, rng)
    ran = _random_complete_code(size, rng)
    perm = list(range(size))
    rng.shuffle(perm)
    return v_make(dom, ran, list(enumerate(perm)))
