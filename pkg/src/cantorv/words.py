"""Binary words, eventually periodic points, prefix codes, cylinder sets.

Words are plain Python strings over "0"/"1".  An eventually periodic
point pre + per + per + ... stands for an element of Cantor space
{0,1}^N; these points are dense, closed under prefix replacement, and
support exact equality tests, which is what makes the whole engine
exact.  Kraft sums are computed in integer arithmetic, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable

from .errors import ValidationError


def check_word(w: str) -> str:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValidationError(f"not a binary word: {w!r}")
    return w


def words_comparable(u: str, v: str) -> bool:
    """True iff one word is a prefix of the other, i.e. [u] and [v] intersect."""
    return u.startswith(v) or v.startswith(u)


def check_antichain(words: Iterable[str]) -> tuple[str, ...]:
    """Sort and return the words, rejecting duplicates and prefix pairs."""
    ws = tuple(sorted(check_word(w) for w in words))
    for i in range(len(ws) - 1):
        # in lex order a word's extensions immediately follow it
        if ws[i + 1].startswith(ws[i]):
            raise ValidationError(
                f"not an antichain: {ws[i]!r} is a prefix of {ws[i + 1]!r}"
            )
    return ws


@dataclass(frozen=True)
class PrefixCode:
    """A finite antichain of binary words, kept sorted.

    Completeness (the cylinders partition Cantor space) is a property
    checked by kraft_is_complete, not an invariant of the type.
    """

    words: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", check_antichain(self.words))

    def __len__(self) -> int:
        return len(self.words)


def kraft_is_complete(code: PrefixCode) -> bool:
    """Exact test of sum over the code of 2^(-|u|) == 1."""
    if not code.words:
        return False
    top = max(len(w) for w in code.words)
    return sum(1 << (top - len(w)) for w in code.words) == 1 << top


def _require_complete(code: PrefixCode, op: str) -> None:
    if not kraft_is_complete(code):
        raise ValidationError(f"{op} requires a complete prefix code, got {list(code.words)}")


def refine_common(a: PrefixCode, b: PrefixCode) -> PrefixCode:
    """Coarsest complete prefix code refining both a and b.

    For complete codes, [u] and [v] intersect iff comparable, and then
    the intersection is the cylinder of the longer word; collecting all
    such intersections partitions the space.
    """
    _require_complete(a, "refine_common")
    _require_complete(b, "refine_common")
    out = set()
    for u in a.words:
        for v in b.words:
            if words_comparable(u, v):
                out.add(u if len(u) >= len(v) else v)
    return PrefixCode(tuple(out))


def grow_antichain(words: Iterable[str], m: int) -> tuple[str, ...]:
    """Split words (lex-smallest among the shortest first) until there are m."""
    ws = list(words)
    if m < len(ws):
        raise ValidationError(f"cannot shrink {len(ws)} words to {m}")
    while len(ws) < m:
        w = min(ws, key=lambda t: (len(t), t))
        ws.remove(w)
        ws += [w + "0", w + "1"]
    return tuple(sorted(ws))


def subdivide_to_size(code: PrefixCode, m: int) -> PrefixCode:
    """Complete prefix code of exactly m words refining code.

    Deterministic rule: repeatedly split the lexicographically smallest
    word among those of minimal length.
    """
    _require_complete(code, "subdivide_to_size")
    return PrefixCode(grow_antichain(code.words, m))


@dataclass(frozen=True)
class Point:
    """Eventually periodic point pre + per^infinity, in canonical form.

    Canonical means: per is primitive (not a power of a shorter word)
    and pre is as short as possible (its last letter cannot be absorbed
    into a rotation of per).  Two points denote the same sequence iff
    their canonical forms are equal, so dataclass equality is exact.
    """

    pre: str
    per: str

    def __post_init__(self):
        check_word(self.pre)
        check_word(self.per)
        if not self.per:
            raise ValidationError("period must be nonempty")
        if self.per != _primitive_root(self.per):
            raise ValidationError(f"period {self.per!r} is not primitive")
        if self.pre and self.pre[-1] == self.per[-1]:
            raise ValidationError(f"preperiod {self.pre!r} not minimal for period {self.per!r}")


def _primitive_root(per: str) -> str:
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per[:d] * (n // d) == per:
            return per[:d]
    raise AssertionError("unreachable")


def point_normalize(pre: str, per: str) -> Point:
    """Canonical Point denoting pre followed by per repeated forever."""
    check_word(pre)
    check_word(per)
    if not per:
        raise ValidationError("period must be nonempty")
    per = _primitive_root(per)
    while pre and pre[-1] == per[-1]:
        # pre' c + (s c)^w  =  pre' + (c s)^w
        pre, per = pre[:-1], per[-1] + per[:-1]
    return Point(pre, per)


def point_bit(x: Point, n: int) -> str:
    if n < 0:
        raise ValidationError("bit index must be >= 0")
    if n < len(x.pre):
        return x.pre[n]
    return x.per[(n - len(x.pre)) % len(x.per)]


def point_prefix(x: Point, n: int) -> str:
    """First n bits of the sequence."""
    if n < 0:
        raise ValidationError("prefix length must be >= 0")
    if n <= len(x.pre):
        return x.pre[:n]
    reps = -(-(n - len(x.pre)) // len(x.per))
    return (x.pre + x.per * reps)[:n]


def point_shift(x: Point, k: int) -> Point:
    """The point with the first k bits dropped."""
    if k <= len(x.pre):
        return point_normalize(x.pre[k:], x.per)
    r = (k - len(x.pre)) % len(x.per)
    return point_normalize("", x.per[r:] + x.per[:r])


def point_first_difference(x: Point, y: Point) -> int | None:
    """Index of the first differing bit, or None if the points are equal.

    Scanning up to |pre_x| + |pre_y| + 2*lcm of the period lengths
    decides equality.
    """
    bound = len(x.pre) + len(y.pre) + 2 * lcm(len(x.per), len(y.per))
    for i in range(bound):
        if point_bit(x, i) != point_bit(y, i):
            return i
    return None


def points_equal_by_prefix(x: Point, y: Point) -> bool:
    return point_first_difference(x, y) is None


@dataclass(frozen=True)
class CylinderSet:
    """A clopen subset of Cantor space as a reduced sorted antichain.

    Reduced means no two sibling words u0, u1 are both present; the
    canonical form is unique for each clopen set.  The empty word
    denotes the whole space; the empty set is empty.
    """

    words: tuple[str, ...]

    def __post_init__(self):
        ws = check_antichain(self.words)
        s = set(ws)
        for w in ws:
            if w and w[:-1] + ("1" if w[-1] == "0" else "0") in s:
                raise ValidationError(f"not reduced: siblings {w[:-1]}0/{w[:-1]}1 both present")
        object.__setattr__(self, "words", ws)

    def __len__(self) -> int:
        return len(self.words)


def cylinderset_reduce(words: Iterable[str]) -> CylinderSet:
    """Canonical reduced form of an antichain of cylinder words."""
    ws = set(check_antichain(words))
    merged = True
    while merged:
        merged = False
        for w in sorted(ws, key=len, reverse=True):
            if not w:
                continue
            sib = w[:-1] + ("1" if w[-1] == "0" else "0")
            if sib in ws:
                ws.discard(w)
                ws.discard(sib)
                ws.add(w[:-1])
                merged = True
                break
    return CylinderSet(tuple(ws))


def cylinders_union(a: CylinderSet, b: CylinderSet) -> CylinderSet:
    ws = set(a.words) | set(b.words)
    minimal = {w for w in ws if not any(p != w and w.startswith(p) for p in ws)}
    return cylinderset_reduce(minimal)


def cylinders_disjoint(a: CylinderSet, b: CylinderSet) -> bool:
    return not any(words_comparable(u, v) for u in a.words for v in b.words)


def cylinders_subset(a: CylinderSet, b: CylinderSet) -> bool:
    """True iff the set denoted by a is contained in the set denoted by b.

    Valid because b is reduced: a reduced antichain cannot cover a
    cylinder [w] with strict extensions of w alone.
    """
    return all(any(w.startswith(v) for v in b.words) for w in a.words)


def complement_words(words: Iterable[str]) -> tuple[str, ...]:
    """Coarsest antichain covering the complement of the given cylinders."""
    s = set(check_antichain(words))
    out: list[str] = []

    def walk(w: str) -> None:
        if w in s:
            return
        if not any(x.startswith(w) for x in s):
            out.append(w)
            return
        walk(w + "0")
        walk(w + "1")

    walk("")
    return tuple(sorted(out))
