"""Finite strict partial orders over string labels.

A :class:`Poset` stores its elements in a fixed order together with the
strict relation ``lt`` kept transitively closed.  Everything else in the
package (pattern posets, inclusion orders of set systems, enumerated test
posets) is expressed as a ``Poset``.

Searches are deterministic: they only ever iterate elements in their stored
order, so identical inputs always produce identical embeddings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .config import ENUM_BOUND
from .errors import BoundExceeded, CycleDetected, UnknownElement

Pair = tuple[str, str]


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    lt: frozenset[Pair]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "lt", frozenset((a, b) for a, b in self.lt))
        if len(set(self.elements)) != len(self.elements):
            dupes = sorted({x for x in self.elements if self.elements.count(x) > 1})
            raise ValueError(f"duplicate element labels: {dupes}")
        known = set(self.elements)
        for a, b in self.lt:
            for x in (a, b):
                if x not in known:
                    raise UnknownElement(x)
            if a == b:
                raise CycleDetected([a, a])
        up = self._up_sets
        for a, b in self.lt:
            if not up[b] <= up[a]:
                c = next(iter(sorted(up[b] - up[a])))
                raise ValueError(f"relation is not transitive: {a}<{b}<{c} but not {a}<{c}")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"Poset({len(self.elements)} elements, {len(self.lt)} relations)"

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.elements)}

    @cached_property
    def _up_sets(self) -> dict[str, set[str]]:
        up: dict[str, set[str]] = {x: set() for x in self.elements}
        for a, b in self.lt:
            up[a].add(b)
        return up

    @cached_property
    def _down_sets(self) -> dict[str, set[str]]:
        down: dict[str, set[str]] = {x: set() for x in self.elements}
        for a, b in self.lt:
            down[b].add(a)
        return down

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.lt

    def above(self, x: str) -> frozenset[str]:
        """Elements strictly above ``x``."""
        return frozenset(self._up_sets[x])

    def below(self, x: str) -> frozenset[str]:
        """Elements strictly below ``x``."""
        return frozenset(self._down_sets[x])

    def comparable(self, a: str, b: str) -> bool:
        return (a, b) in self.lt or (b, a) in self.lt

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(
            sum(1 << idx[y] for y in self._up_sets[x]) for x in self.elements
        )

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(
            sum(1 << idx[y] for y in self._down_sets[x]) for x in self.elements
        )

    def sorted_pairs(self) -> list[Pair]:
        idx = self.index
        return sorted(self.lt, key=lambda p: (idx[p[0]], idx[p[1]]))

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "lt": [list(p) for p in self.sorted_pairs()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Poset":
        return close_strict_pairs(data["elements"], [tuple(p) for p in data["lt"]])


@dataclass(frozen=True)
class OrderEmbedding:
    """Injective map that preserves and reflects the strict order."""

    source: Poset
    target: Poset
    map: Mapping[str, str]

    def __call__(self, x: str) -> str:
        return self.map[x]

    def __repr__(self):
        return f"OrderEmbedding({len(self.map)} points)"

    def compose(self, other: "OrderEmbedding") -> "OrderEmbedding":
        """``other`` after ``self``."""
        return OrderEmbedding(
            self.source, other.target, {x: other.map[y] for x, y in self.map.items()}
        )

    def to_json(self) -> dict:
        return {"map": {x: self.map[x] for x in self.source.elements}}


def close_strict_pairs(elements: Iterable[str], pairs: Iterable[Pair]) -> Poset:
    """Transitive closure of ``pairs`` as a :class:`Poset`.

    Raises :class:`CycleDetected` (with a witness cycle) if the closure would
    contain a reflexive pair.
    """
    elements = tuple(elements)
    idx = {x: i for i, x in enumerate(elements)}
    succ: list[set[int]] = [set() for _ in elements]
    for a, b in pairs:
        for x in (a, b):
            if x not in idx:
                raise UnknownElement(x)
        succ[idx[a]].add(idx[b])

    cycle = _find_cycle(succ)
    if cycle is not None:
        raise CycleDetected([elements[i] for i in cycle])

    # reachability masks, computed in reverse topological order
    reach = [0] * len(elements)
    for i in _topological_order(succ)[::-1]:
        m = 0
        for j in succ[i]:
            m |= (1 << j) | reach[j]
        reach[i] = m
    lt = set()
    for i, m in enumerate(reach):
        while m:
            low = m & -m
            lt.add((elements[i], elements[low.bit_length() - 1]))
            m ^= low
    return Poset(elements, frozenset(lt))


def _find_cycle(succ: list[set[int]]):
    WHITE, GREY, BLACK = 0, 1, 2
    color = [WHITE] * len(succ)
    for root in range(len(succ)):
        if color[root] != WHITE:
            continue
        path = [root]
        stack = [iter(sorted(succ[root]))]
        color[root] = GREY
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                color[path.pop()] = BLACK
                stack.pop()
            elif color[nxt] == GREY:
                start = path.index(nxt)
                return path[start:] + [nxt]
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append(iter(sorted(succ[nxt])))
    return None


def _topological_order(succ: list[set[int]]) -> list[int]:
    indeg = [0] * len(succ)
    for s in succ:
        for j in s:
            indeg[j] += 1
    ready = [i for i, d in enumerate(indeg) if d == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order


def heights(p: Poset) -> dict[str, int]:
    """Length of the longest strictly descending chain below each element."""
    h: dict[str, int] = {}
    for x in sorted(p.elements, key=lambda x: len(p.below(x))):
        # |below(x)| strictly grows along <, so predecessors are already done
        h[x] = max((h[y] + 1 for y in p.below(x)), default=0)
    return h


def depths(p: Poset) -> dict[str, int]:
    """Length of the longest strictly ascending chain above each element."""
    return heights(dual(p))


def levels(p: Poset) -> list[list[str]]:
    h = heights(p)
    out: list[list[str]] = [[] for _ in range(max(h.values(), default=-1) + 1)]
    for x in p.elements:
        out[h[x]].append(x)
    return out


def dual(p: Poset) -> Poset:
    return Poset(p.elements, frozenset((b, a) for a, b in p.lt))


def transitive_reduction(p: Poset) -> list[Pair]:
    """Covering pairs of ``p`` (the Hasse diagram), in stored element order."""
    return [
        (a, b)
        for a, b in p.sorted_pairs()
        if not (p._up_sets[a] & p._down_sets[b])
    ]


def induced(p: Poset, subset: Iterable[str]) -> Poset:
    keep = set(subset)
    for x in keep:
        if x not in p.index:
            raise UnknownElement(x)
    return Poset(
        tuple(x for x in p.elements if x in keep),
        frozenset((a, b) for a, b in p.lt if a in keep and b in keep),
    )


def relabel(p: Poset, names: Mapping[str, str]) -> Poset:
    return Poset(
        tuple(names[x] for x in p.elements),
        frozenset((names[a], names[b]) for a, b in p.lt),
    )


def disjoint_sum(parts: Iterable[Poset], prefix: str = "s") -> Poset:
    """Disjoint union of posets; element ``x`` of part ``k`` becomes ``{prefix}{k}.{x}``."""
    elements: list[str] = []
    lt: set[Pair] = set()
    for k, part in enumerate(parts):
        tag = f"{prefix}{k}."
        elements.extend(tag + x for x in part.elements)
        lt.update((tag + a, tag + b) for a, b in part.lt)
    return Poset(tuple(elements), frozenset(lt))


def chain(n: int, prefix: str = "c") -> Poset:
    labels = [f"{prefix}{i}" for i in range(n)]
    return Poset(tuple(labels), frozenset(itertools.combinations(labels, 2)))


def antichain(n: int, prefix: str = "x") -> Poset:
    return Poset(tuple(f"{prefix}{i}" for i in range(n)), frozenset())


# ---------------------------------------------------------------------------
# embeddings


def embedding_violations(source: Poset, target: Poset, mapping: Mapping[str, str]) -> list[dict]:
    """All reasons why ``mapping`` fails to be an order embedding.

    Works directly on the pair sets, independently of the bitmask search.
    An empty list means ``mapping`` is an embedding.
    """
    out: list[dict] = []
    missing = [x for x in source.elements if x not in mapping]
    if missing:
        out.append({"kind": "undefined", "elements": missing})
        return out
    for x in source.elements:
        if mapping[x] not in target.index:
            out.append({"kind": "outside-target", "element": x, "image": mapping[x]})
    if out:
        return out
    seen: dict[str, str] = {}
    for x in source.elements:
        y = mapping[x]
        if y in seen:
            out.append({"kind": "not-injective", "pair": [seen[y], x], "image": y})
        seen[y] = x
    for a in source.elements:
        for b in source.elements:
            if a == b:
                continue
            src = (a, b) in source.lt
            tgt = (mapping[a], mapping[b]) in target.lt
            if src and not tgt:
                out.append({"kind": "not-preserved", "pair": [a, b]})
            elif tgt and not src:
                out.append({"kind": "not-reflected", "pair": [a, b]})
    return out


def is_embedding(source: Poset, target: Poset, mapping: Mapping[str, str]) -> bool:
    return not embedding_violations(source, target, mapping)


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def find_embedding(sub: Poset, sup: Poset) -> OrderEmbedding | None:
    """Search for an order embedding of ``sub`` into ``sup``.

    Backtracking over bitmask domains with forward checking.  Initial domains
    are pruned by height, depth and up/down degree; the next variable is the
    one with the smallest remaining domain (ties broken by element order).
    """
    n, m = len(sub), len(sup)
    if n > m:
        return None
    if n == 0:
        return OrderEmbedding(sub, sup, {})

    hs, ds = heights(sub), depths(sub)
    ht, dt = heights(sup), depths(sup)
    s_up, s_down = sub.up_masks, sub.down_masks
    t_up, t_down = sup.up_masks, sup.down_masks
    t_info = [
        (ht[y], dt[y], t_up[j].bit_count(), t_down[j].bit_count())
        for j, y in enumerate(sup.elements)
    ]
    domains = []
    for i, x in enumerate(sub.elements):
        need = (hs[x], ds[x], s_up[i].bit_count(), s_down[i].bit_count())
        mask = 0
        for j, info in enumerate(t_info):
            if all(have >= want for have, want in zip(info, need)):
                mask |= 1 << j
        if not mask:
            return None
        domains.append(mask)

    assignment = [-1] * n

    def solve(doms: list[int], left: int) -> bool:
        if left == 0:
            return True
        # most constrained unassigned variable
        best, best_size = -1, m + 1
        for i in range(n):
            if assignment[i] < 0:
                size = doms[i].bit_count()
                if size < best_size:
                    best, best_size = i, size
        x = best
        for y in _iter_bits(doms[x]):
            ybit = 1 << y
            up_y, down_y = t_up[y], t_down[y]
            unrelated = ~(up_y | down_y | ybit)
            new = list(doms)
            ok = True
            for z in range(n):
                if assignment[z] >= 0 or z == x:
                    continue
                if (s_up[x] >> z) & 1:
                    d = new[z] & up_y
                elif (s_down[x] >> z) & 1:
                    d = new[z] & down_y
                else:
                    d = new[z] & unrelated
                if not d:
                    ok = False
                    break
                new[z] = d
            if not ok:
                continue
            assignment[x] = y
            new[x] = ybit
            if solve(new, left - 1):
                return True
            assignment[x] = -1
        return False

    if not solve(domains, n):
        return None
    mapping = {sub.elements[i]: sup.elements[assignment[i]] for i in range(n)}
    return OrderEmbedding(sub, sup, mapping)


def _invariant_signature(p: Poset) -> list:
    h, d = heights(p), depths(p)
    return sorted(
        (h[x], d[x], len(p.above(x)), len(p.below(x))) for x in p.elements
    )


def is_isomorphic(a: Poset, b: Poset) -> bool:
    if len(a) != len(b) or len(a.lt) != len(b.lt):
        return False
    if _invariant_signature(a) != _invariant_signature(b):
        return False
    # equal size and relation count: an embedding is a bijection reflecting <
    return find_embedding(a, b) is not None


# ---------------------------------------------------------------------------
# enumeration up to isomorphism


def canonical_code(down: list[int]) -> tuple[int, ...]:
    """Canonical form of a poset on ``0..n-1`` given by strict down-set masks.

    Minimises the relabelled mask tuple over all permutations that respect a
    sorted invariant partition (height, depth, degrees); exact for any size,
    practical up to about eight points.
    """
    n = len(down)
    up = [0] * n
    for b in range(n):
        for a in _iter_bits(down[b]):
            up[a] |= 1 << b
    h = [0] * n
    for b in sorted(range(n), key=lambda i: down[i].bit_count()):
        h[b] = max((h[a] + 1 for a in _iter_bits(down[b])), default=0)
    dep = [0] * n
    for a in sorted(range(n), key=lambda i: up[i].bit_count()):
        dep[a] = max((dep[b] + 1 for b in _iter_bits(up[a])), default=0)
    key = [(h[i], dep[i], down[i].bit_count(), up[i].bit_count()) for i in range(n)]
    groups: list[list[int]] = []
    for _, grp in itertools.groupby(sorted(range(n), key=lambda i: key[i]), key=lambda i: key[i]):
        groups.append(list(grp))

    best = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [i for perm in perms for i in perm]
        pos = [0] * n
        for new, old in enumerate(order):
            pos[old] = new
        code = tuple(
            sum(1 << pos[a] for a in _iter_bits(down[old])) for old in order
        )
        if best is None or code < best:
            best = code
    return best if best is not None else ()


def _down_sets_of(n: int, down: list[int]):
    """All order ideals of the poset on ``0..n-1`` as bitmasks."""
    for mask in range(1 << n):
        if all((down[i] & ~mask) == 0 for i in _iter_bits(mask)):
            yield mask


def enumerate_posets(n: int, bound: int = ENUM_BOUND) -> list[Poset]:
    """All ``n``-element posets up to isomorphism.

    Grows posets one maximal element at a time (every poset arises by adding
    a new maximal element above an order ideal of a smaller one) and keeps
    one representative per canonical code.  Element labels are ``p0..p{n-1}``.
    """
    if n > bound:
        raise BoundExceeded("n", n, bound)
    if n < 0:
        raise ValueError("n must be non-negative")
    layer: set[tuple[int, ...]] = {()}
    for k in range(n):
        nxt: set[tuple[int, ...]] = set()
        for code in sorted(layer):
            for ideal in _down_sets_of(k, list(code)):
                nxt.add(canonical_code(list(code) + [ideal]))
        layer = nxt
    return [_poset_from_code(code) for code in sorted(layer)]


def _poset_from_code(code: tuple[int, ...]) -> Poset:
    labels = [f"p{i}" for i in range(len(code))]
    lt = {(labels[a], labels[b]) for b, m in enumerate(code) for a in _iter_bits(m)}
    return Poset(tuple(labels), frozenset(lt))
