"""Consistency patterns ``(J, I, C)``: axiom checks and the named generators.

``J`` is a list of index labels, ``I`` a set of two-element inconsistent
pairs and ``C`` a list of distinct consistent sets.  The generators produce
finite fragments of the tree-like index sets behind TP1, TP2, ATP, SOP3 and
the (non-maximal) tree property TP.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import DegenerateParameter, PatternError
from .poset import Poset
from .report import Report


@dataclass(frozen=True)
class ConsistencyPattern:
    indices: tuple[str, ...]
    inconsistent: frozenset[frozenset[str]]
    consistent: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(
            self, "inconsistent", frozenset(frozenset(p) for p in self.inconsistent)
        )
        object.__setattr__(self, "consistent", tuple(frozenset(c) for c in self.consistent))
        if len(set(self.indices)) != len(self.indices):
            raise PatternError("duplicate index labels")
        known = set(self.indices)
        for pair in self.inconsistent:
            if len(pair) != 2:
                raise PatternError(f"inconsistent member {sorted(pair)} is not a pair of distinct indices")
            if not pair <= known:
                raise PatternError(f"inconsistent pair {sorted(pair)} uses unknown indices {sorted(pair - known)}")
        seen = set()
        for c in self.consistent:
            if not c <= known:
                raise PatternError(f"consistent set uses unknown indices {sorted(c - known)}")
            if c in seen:
                raise PatternError(f"duplicate consistent set {self.ordered(c)}")
            seen.add(c)

    def __repr__(self):
        return (
            f"ConsistencyPattern(|J|={len(self.indices)}, |I|={len(self.inconsistent)}, "
            f"|C|={len(self.consistent)})"
        )

    @cached_property
    def position(self) -> dict[str, int]:
        return {j: k for k, j in enumerate(self.indices)}

    def ordered(self, s: Iterable[str]) -> tuple[str, ...]:
        """Members of ``s`` in index order."""
        return tuple(sorted(s, key=self.position.__getitem__))

    def set_label(self, s: Iterable[str]) -> str:
        return "{" + ",".join(self.ordered(s)) + "}"

    def is_inconsistent(self, i: str, j: str) -> bool:
        return frozenset((i, j)) in self.inconsistent

    @cached_property
    def partners(self) -> dict[str, frozenset[str]]:
        """For each index, the indices it forms an inconsistent pair with."""
        out: dict[str, set[str]] = {j: set() for j in self.indices}
        for pair in self.inconsistent:
            a, b = tuple(pair)
            out[a].add(b)
            out[b].add(a)
        return {j: frozenset(v) for j, v in out.items()}

    def restrict(self, indices: Iterable[str], consistent: Iterable[Iterable[str]]) -> "ConsistencyPattern":
        """Sub-pattern on a subset of ``J`` with a chosen family of consistent sets."""
        keep = set(indices)
        return ConsistencyPattern(
            tuple(j for j in self.indices if j in keep),
            frozenset(p for p in self.inconsistent if p <= keep),
            tuple(frozenset(c) for c in consistent),
        )

    def to_json(self) -> dict:
        pairs = sorted(self.ordered(p) for p in self.inconsistent)
        pairs.sort(key=lambda p: (self.position[p[0]], self.position[p[1]]))
        return {
            "indices": list(self.indices),
            "inconsistent": [list(p) for p in pairs],
            "consistent": [list(self.ordered(c)) for c in self.consistent],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ConsistencyPattern":
        return cls(
            tuple(data["indices"]),
            frozenset(frozenset(p) for p in data["inconsistent"]),
            tuple(frozenset(c) for c in data["consistent"]),
        )


# ---------------------------------------------------------------------------
# axiom checks


def validate_pattern(p: ConsistencyPattern) -> Report:
    """Check (C1) nonemptiness and (C2) no inconsistent pair is comparable with a consistent set."""
    report = Report()
    empty = [name for name, part in (("J", p.indices), ("I", p.inconsistent), ("C", p.consistent)) if not part]
    report.add("C1", empty)
    bad = []
    for pair in sorted(p.inconsistent, key=lambda s: p.ordered(s)):
        for c in p.consistent:
            if pair <= c or c <= pair:
                bad.append((p.ordered(pair), p.ordered(c)))
    report.add("C2", bad)
    return report


def check_maximality(p: ConsistencyPattern) -> Report:
    report = Report()

    undecided = []
    for i, j in itertools.combinations(p.indices, 2):
        if p.is_inconsistent(i, j):
            continue
        if not any(i in c and j in c for c in p.consistent):
            undecided.append((i, j))
    report.add("M1", undecided)

    extendable = []
    for c in p.consistent:
        for j in p.indices:
            if j not in c and not (p.partners[j] & c):
                extendable.append((p.ordered(c), j))
    report.add("M2", extendable)

    lonely = [j for j in p.indices if len(p.partners[j]) < 2]
    report.add("M3", lonely)
    return report


def check_weak_maximality(p: ConsistencyPattern) -> Report:
    """Any two distinct consistent sets contain an inconsistent pair across them."""
    bad = []
    for c, d in itertools.combinations(p.consistent, 2):
        if not any(p.partners[i] & d for i in c):
            bad.append((p.ordered(c), p.ordered(d)))
    report = Report()
    report.add("weak", bad)
    return report


def check_coverage(p: ConsistencyPattern) -> Report:
    covered = set().union(*p.consistent) if p.consistent else set()
    report = Report()
    report.add("coverage", [j for j in p.indices if j not in covered])
    return report


def is_maximal(p: ConsistencyPattern) -> bool:
    return check_maximality(p).ok


def full_report(p: ConsistencyPattern) -> Report:
    report = validate_pattern(p)
    report.extend(check_maximality(p))
    report.extend(check_weak_maximality(p))
    report.extend(check_coverage(p))
    return report


# ---------------------------------------------------------------------------
# generators


def _strings(alphabet: int, max_len: int) -> list[str]:
    sep = "" if alphabet <= 10 else "."
    out = []
    for length in range(1, max_len + 1):
        for word in itertools.product(range(alphabet), repeat=length):
            out.append(sep.join(map(str, word)))
    return out


def _prefixes(word: str, alphabet: int) -> list[str]:
    if alphabet <= 10:
        return [word[:k] for k in range(1, len(word) + 1)]
    parts = word.split(".")
    return [".".join(parts[:k]) for k in range(1, len(parts) + 1)]


def _is_proper_prefix(a: str, b: str, alphabet: int) -> bool:
    pa, pb = _prefixes(a, alphabet), _prefixes(b, alphabet)
    return len(pa) < len(pb) and pb[len(pa) - 1] == a


def _branches(nodes: list[str], depth: int, alphabet: int) -> list[frozenset[str]]:
    leaves = [w for w in nodes if len(_prefixes(w, alphabet)) == depth]
    return [frozenset(_prefixes(leaf, alphabet)) for leaf in leaves]


def gen_tp1(depth: int) -> ConsistencyPattern:
    """Binary tree without root; incomparable nodes are inconsistent, branches are consistent."""
    if depth < 2:
        raise DegenerateParameter("gen_tp1 needs depth >= 2 (depth 1 leaves every node with one partner)")
    nodes = _strings(2, depth)
    inconsistent = frozenset(
        frozenset((a, b))
        for a, b in itertools.combinations(nodes, 2)
        if not (_is_proper_prefix(a, b, 2) or _is_proper_prefix(b, a, 2))
    )
    return ConsistencyPattern(tuple(nodes), inconsistent, tuple(_branches(nodes, depth, 2)))


def gen_tp2(rows: int, cols: int) -> ConsistencyPattern:
    """``rows x cols`` grid; cells in one row are pairwise inconsistent, transversals are consistent."""
    if rows < 2 or cols < 3:
        raise DegenerateParameter("gen_tp2 needs rows >= 2 and cols >= 3")
    cell = [[f"({r},{c})" for c in range(cols)] for r in range(rows)]
    indices = tuple(x for row in cell for x in row)
    inconsistent = frozenset(
        frozenset(pair) for row in cell for pair in itertools.combinations(row, 2)
    )
    consistent = tuple(
        frozenset(cell[r][c] for r, c in enumerate(choice))
        for choice in itertools.product(range(cols), repeat=rows)
    )
    return ConsistencyPattern(indices, inconsistent, consistent)


def _maximal_antichains(node: str, children: Mapping[str, list[str]]) -> list[frozenset[str]]:
    # a maximal antichain of a rooted tree is the root alone or a union of
    # maximal antichains of the child subtrees
    kids = children[node]
    if not kids:
        return [frozenset((node,))]
    out = [frozenset((node,))]
    for combo in itertools.product(*(_maximal_antichains(k, children) for k in kids)):
        out.append(frozenset().union(*combo))
    return out


def gen_atp(depth: int) -> ConsistencyPattern:
    """Binary tree without root; comparable nodes are inconsistent, maximal antichains are consistent."""
    if depth < 3:
        raise DegenerateParameter("gen_atp needs depth >= 3 (a leaf at depth 2 has one comparable node)")
    nodes = _strings(2, depth)
    inconsistent = frozenset(
        frozenset((a, b))
        for a, b in itertools.combinations(nodes, 2)
        if _is_proper_prefix(a, b, 2) or _is_proper_prefix(b, a, 2)
    )
    children = {w: [w + "0", w + "1"] if len(w) < depth else [] for w in nodes}
    consistent = []
    for combo in itertools.product(*(_maximal_antichains(r, children) for r in ("0", "1"))):
        consistent.append(frozenset().union(*combo))
    return ConsistencyPattern(tuple(nodes), inconsistent, tuple(consistent))


def sop3_index(i: int, level: int) -> str:
    return f"({i},{level})"


def gen_sop3(n: int) -> ConsistencyPattern:
    """The SOP3 pattern on ``{-n..n} x {0,1}``.

    ``(i,0)`` and ``(j,1)`` are inconsistent iff ``i >= j``; the consistent
    sets are ``C_k = {(i,0) : i < k} | {(j,1) : j >= k}`` for
    ``-n <= k <= n+1``.  The two boundary indices ``(-n,0)`` and ``(n,1)``
    have a single inconsistent partner, so M3 fails there and nowhere else.
    """
    if n < 1:
        raise DegenerateParameter("gen_sop3 needs n >= 1")
    rng = range(-n, n + 1)
    indices = tuple(sop3_index(i, 0) for i in rng) + tuple(sop3_index(j, 1) for j in rng)
    inconsistent = frozenset(
        frozenset((sop3_index(i, 0), sop3_index(j, 1))) for i in rng for j in rng if i >= j
    )
    consistent = tuple(
        frozenset(
            [sop3_index(i, 0) for i in rng if i < k] + [sop3_index(j, 1) for j in rng if j >= k]
        )
        for k in range(-n, n + 2)
    )
    return ConsistencyPattern(indices, inconsistent, consistent)


def gen_tp(depth: int, branching: int) -> ConsistencyPattern:
    """``branching``-ary tree without root; siblings are inconsistent, branches consistent.

    This pattern is not maximal: incomparable non-siblings are neither
    inconsistent nor together in a branch.
    """
    if depth < 2 or branching < 2:
        raise DegenerateParameter("gen_tp needs depth >= 2 and branching >= 2")
    nodes = _strings(branching, depth)
    parent = {w: tuple(_prefixes(w, branching)[:-1]) for w in nodes}
    inconsistent = frozenset(
        frozenset((a, b))
        for a, b in itertools.combinations(nodes, 2)
        if len(parent[a]) == len(parent[b]) and parent[a] == parent[b]
    )
    return ConsistencyPattern(tuple(nodes), inconsistent, tuple(_branches(nodes, depth, branching)))


def gen_chain(n: int) -> Poset:
    if n < 1:
        raise DegenerateParameter("gen_chain needs n >= 1")
    labels = [f"c{i}" for i in range(n)]
    return Poset(tuple(labels), frozenset(itertools.combinations(labels, 2)))


GENERATORS = {
    "tp1": gen_tp1,
    "tp2": gen_tp2,
    "atp": gen_atp,
    "sop3": gen_sop3,
    "tp": gen_tp,
}
