"""k-Stirling posets and order polynomials Omega(P, m), Omega-bar(P, m)."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .arith import Polynomial, interpolate
from .errors import BudgetExceeded
from .shapes import Shape

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class LabeledPoset:
    """Poset on labels 1..size given by its cover relation (lower, upper)."""

    size: int
    covers: frozenset[tuple[int, int]]

    def __post_init__(self):
        covers = frozenset((int(x), int(y)) for x, y in self.covers)
        object.__setattr__(self, "covers", covers)
        for x, y in covers:
            if not (1 <= x <= self.size and 1 <= y <= self.size) or x == y:
                raise ValueError(f"bad cover ({x}, {y}) for poset of size {self.size}")
        order = self.linear_extension()  # raises on cycles
        below = self._strict_down_sets(order)
        for x, y in covers:
            # (x, y) is redundant if x lies below some other lower cover of y
            if any(x in below[z] for z in self.lower_covers[y] if z != x):
                raise ValueError(f"cover ({x}, {y}) is implied by transitivity")

    @classmethod
    def chain(cls, size: int) -> "LabeledPoset":
        return cls(size, frozenset((i, i + 1) for i in range(1, size)))

    @classmethod
    def antichain(cls, size: int) -> "LabeledPoset":
        return cls(size, frozenset())

    @cached_property
    def lower_covers(self) -> dict[int, tuple[int, ...]]:
        low = defaultdict(list)
        for x, y in sorted(self.covers):
            low[y].append(x)
        return {v: tuple(low[v]) for v in range(1, self.size + 1)}

    @cached_property
    def upper_covers(self) -> dict[int, tuple[int, ...]]:
        up = defaultdict(list)
        for x, y in sorted(self.covers):
            up[x].append(y)
        return {v: tuple(up[v]) for v in range(1, self.size + 1)}

    def linear_extension(self) -> list[int]:
        """Topological order, smallest available label first."""
        indeg = {v: 0 for v in range(1, self.size + 1)}
        up = defaultdict(list)
        for x, y in self.covers:
            indeg[y] += 1
            up[x].append(y)
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for y in up[v]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    ready.append(y)
            ready.sort()
        if len(order) != self.size:
            raise ValueError("cover relation has a cycle")
        return order

    def _strict_down_sets(self, order: list[int]) -> dict[int, set[int]]:
        below: dict[int, set[int]] = {}
        low = defaultdict(list)
        for x, y in self.covers:
            low[y].append(x)
        for v in order:
            s: set[int] = set()
            for x in low[v]:
                s.add(x)
                s |= below[x]
            below[v] = s
        return below

    def less_than(self, x: int, y: int) -> bool:
        return x in self._strict_down_sets(self.linear_extension())[y]

    def to_dot(self, name: str = "P") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        lines += [f"  {v};" for v in range(1, self.size + 1)]
        lines += [f"  {x} -> {y};" for x, y in sorted(self.covers)]
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KStirlingPoset:
    base: LabeledPoset
    shape: Shape
    anchors: tuple[int, ...]


def build_poset(shape: Shape) -> KStirlingPoset:
    """The k-Stirling poset P_k.

    For block i of the weight decomposition, with s = s_{i-1}:

    * labels s+1 .. s+a_i sit directly below the block's spine element s+a_i+1;
    * the spine continues as a chain through labels s+a_i+2 .. s_i
      (t_i - 2 of them);
    * the top of block i lies directly below the spine element of block i+1.

    The trailing ones become isolated labels s_l+1 .. s_l+a.
    """
    w = shape.weight
    anchors = w.anchors()
    covers: set[tuple[int, int]] = set()
    prev_top = None
    for i, (a, t) in enumerate(zip(w.a, w.t)):
        s = anchors[i]
        spine = s + a + 1
        covers.update((p, spine) for p in range(s + 1, s + a + 1))
        if prev_top is not None:
            covers.add((prev_top, spine))
        top = spine
        for y in range(spine + 1, anchors[i + 1] + 1):
            covers.add((top, y))
            top = y
        prev_top = top
    size = anchors[-1] + w.trailing
    assert size == shape.K
    return KStirlingPoset(LabeledPoset(size, frozenset(covers)), shape, anchors)


def _plan(p: LabeledPoset):
    """Linear extension plus, per step, which earlier elements retire."""
    order = p.linear_extension()
    pos = {v: i for i, v in enumerate(order)}
    last_use = {v: max((pos[y] for y in p.upper_covers[v]), default=-1) for v in order}
    return order, pos, last_use


def is_forest(p: LabeledPoset) -> bool:
    """True when every element has at most one upper cover."""
    return all(len(up) <= 1 for up in p.upper_covers.values())


def _omega_forest(p: LabeledPoset, m: int, strict: bool) -> int:
    # f[v][x] = maps of the down-set of v sending v to x; children feed prefix sums
    f: dict[int, list[int]] = {}
    for v in p.linear_extension():
        row = [1] * (m + 1)
        row[0] = 0
        for c in p.lower_covers[v]:
            acc = 0
            below = [0] * (m + 1)
            for x in range(1, m + 1):
                if not strict:
                    acc += f[c][x]
                below[x] = acc
                if strict:
                    acc += f[c][x]
            row = [r * b for r, b in zip(row, below)]
        f[v] = row
    return prod(sum(f[v]) for v in range(1, p.size + 1) if not p.upper_covers[v])


def omega_work_estimate(p: LabeledPoset, m: int, frontier: bool | None = None) -> int:
    """Upper bound on DP transitions: |P| m for forests, otherwise the sum over
    steps of m^(frontier + 1) along the linear extension."""
    if frontier is None:
        frontier = not is_forest(p)
    if not frontier:
        return max(p.size * max(m, 1), 1)
    order, pos, last_use = _plan(p)
    width = 0
    work = 0
    for i, v in enumerate(order):
        work += max(m, 1) ** (width + 1)
        width -= sum(1 for x in p.lower_covers[v] if last_use[x] == i)
        if last_use[v] > i:
            width += 1
    return work


def omega(
    p: LabeledPoset, m: int, strict: bool = False, cap: int = DEFAULT_CAP, method: str = "auto"
) -> int:
    """Count (strict) order-preserving maps P -> {1..m}.

    Forests (every element has at most one upper cover, as for k-Stirling
    posets) use a tree DP. Anything else runs a DP along a linear extension
    whose state is the tuple of values on elements that still have an
    unplaced upper cover. ``method`` forces "forest" or "frontier".
    """
    if method not in ("auto", "forest", "frontier"):
        raise ValueError(f"unknown counting method {method!r}")
    if method == "forest" and not is_forest(p):
        raise ValueError("forest counting needs at most one upper cover per element")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if p.size == 0:
        return 1
    if m == 0:
        return 0
    use_forest = method == "forest" or (method == "auto" and is_forest(p))
    est = omega_work_estimate(p, m, frontier=not use_forest)
    if est > cap:
        raise BudgetExceeded(f"counting budget exceeded: estimate {est} > cap {cap}")
    if use_forest:
        return _omega_forest(p, m, strict)
    return _omega_frontier(p, m, strict)


def _omega_frontier(p: LabeledPoset, m: int, strict: bool) -> int:
    order, pos, last_use = _plan(p)
    live: tuple[int, ...] = ()  # elements currently in the frontier, in order
    states: dict[tuple[int, ...], int] = {(): 1}
    for i, v in enumerate(order):
        lows = [live.index(x) for x in p.lower_covers[v]]
        keep = [j for j, x in enumerate(live) if last_use[x] > i]
        stays = last_use[v] > i
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for state, cnt in states.items():
            lo = max((state[j] for j in lows), default=1 if not strict else 0)
            lo = lo + 1 if strict else lo
            if lo > m:
                continue
            base = tuple(state[j] for j in keep)
            if stays:
                for val in range(lo, m + 1):
                    nxt[base + (val,)] += cnt
            else:
                nxt[base] += cnt * (m - lo + 1)
        live = tuple(live[j] for j in keep) + ((v,) if stays else ())
        states = nxt
    return sum(states.values())


def omega_brute(p: LabeledPoset, m: int, strict: bool = False, cap: int = DEFAULT_CAP) -> int:
    """Depth-first enumeration of the maps one by one; any poset, small sizes only.

    Values are assigned along a linear extension, each starting just above
    (or at) the largest value on its lower covers, so every leaf reached is a
    valid map and is counted once.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m**p.size > cap:
        raise BudgetExceeded(f"counting budget exceeded: {m}^{p.size} > cap {cap}")
    order = p.linear_extension()
    lows = [p.lower_covers[v] for v in order]
    step = 1 if strict else 0
    value = [0] * (p.size + 1)

    def walk(i: int) -> int:
        if i == len(order):
            return 1
        lo = max((value[x] + step for x in lows[i]), default=1)
        v = order[i]
        total = 0
        for val in range(lo, m + 1):
            value[v] = val
            total += walk(i + 1)
        return total

    return walk(0)


def order_polynomial(p: LabeledPoset, strict: bool = False, cap: int = DEFAULT_CAP) -> Polynomial:
    """Interpolate Omega (or Omega-bar) at m = 0..|P|."""
    return interpolate([(m, omega(p, m, strict, cap)) for m in range(p.size + 1)])


def poset_json(kp: KStirlingPoset) -> dict:
    return {
        "shape": list(kp.shape.ks),
        "size": kp.base.size,
        "anchors": list(kp.anchors),
        "covers": [list(c) for c in sorted(kp.base.covers)],
    }

