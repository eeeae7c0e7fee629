"""Finite set families standing in for uniformly definable sets.

A :class:`SetSystem` names subsets of a finite universe.  Its inclusion
poset (extensionally equal sets identified) is where target posets get
embedded.  "Implies" becomes set inclusion and "consistent" becomes
"nonempty intersection", so each construction below can be checked pair by
pair.  Constructions return the system together with the intended map from
target-poset labels to set names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .config import ENUM_BOUND, IP_SETS_BOUND
from .errors import BoundExceeded, InvalidEmbedding, SetSystemError
from .patterns import ConsistencyPattern, validate_pattern
from .poset import OrderEmbedding, Poset, embedding_violations, enumerate_posets, find_embedding, heights
from .report import Report
from .sigma import SigmaLabels, ip_beta, op_alpha, op_beta, sigma_op, sigma_pattern, subsets


@dataclass(frozen=True, eq=False)
class SetSystem:
    universe: tuple[str, ...]
    sets: Mapping[str, frozenset[str]]
    intended: Mapping[str, str] | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        object.__setattr__(self, "sets", {k: frozenset(v) for k, v in self.sets.items()})
        if len(set(self.universe)) != len(self.universe):
            raise SetSystemError("duplicate universe points")
        known = set(self.universe)
        for name, members in self.sets.items():
            if not members <= known:
                raise SetSystemError(f"set {name!r} has points outside the universe: {sorted(members - known)}")
        if self.intended is not None:
            object.__setattr__(self, "intended", dict(self.intended))
            for src, name in self.intended.items():
                if name not in self.sets:
                    raise SetSystemError(f"intended map sends {src!r} to unknown set {name!r}")

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        return (self.universe, dict(self.sets), self.intended) == (
            other.universe, dict(other.sets), other.intended,
        )

    def __repr__(self):
        return f"SetSystem(|U|={len(self.universe)}, {len(self.sets)} sets)"

    def ordered(self, members: Iterable[str]) -> list[str]:
        pos = {x: i for i, x in enumerate(self.universe)}
        return sorted(members, key=pos.__getitem__)

    def to_json(self) -> dict:
        out = {
            "universe": list(self.universe),
            "sets": {name: self.ordered(m) for name, m in self.sets.items()},
        }
        if self.intended is not None:
            out["intended"] = dict(self.intended)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SetSystem":
        return cls(tuple(data["universe"]), {k: frozenset(v) for k, v in data["sets"].items()},
                   data.get("intended"))


@dataclass(frozen=True)
class PatternWitness:
    """Sets indexed by ``J``: inconsistent pairs disjoint, consistent sets jointly intersecting."""

    system: SetSystem
    pattern: ConsistencyPattern


def check_pattern_witness(w: PatternWitness) -> Report:
    p, sets = w.pattern, w.system.sets
    report = Report()
    report.add("indexed-by-J", [j for j in p.indices if j not in sets])
    if not report.ok:
        return report
    overlapping = []
    for pair in sorted(p.inconsistent, key=p.ordered):
        i, j = p.ordered(pair)
        common = sets[i] & sets[j]
        if common:
            overlapping.append((i, j, w.system.ordered(common)))
    report.add("inconsistent-disjoint", overlapping)
    empty = []
    for c in p.consistent:
        members = p.ordered(c)
        if not frozenset.intersection(*(sets[j] for j in members)):
            empty.append(members)
    report.add("consistent-intersecting", empty)
    return report


# ---------------------------------------------------------------------------
# inclusion orders


def inclusion_poset(s: SetSystem) -> tuple[Poset, dict[str, str]]:
    """Strict inclusion order on the distinct sets of ``s``.

    Each class of extensionally equal sets is represented by its
    lexicographically least name; the returned dict sends every set name to
    its representative.  Classes keep the order in which they first occur.
    """
    by_extension: dict[frozenset[str], list[str]] = {}
    for name, members in s.sets.items():
        by_extension.setdefault(members, []).append(name)
    rep_of: dict[str, str] = {}
    classes: list[tuple[str, frozenset[str]]] = []
    for members, names in by_extension.items():
        rep = min(names)
        classes.append((rep, members))
        for name in names:
            rep_of[name] = rep
    lt = frozenset(
        (a, b) for a, sa in classes for b, sb in classes if sa < sb
    )
    return Poset(tuple(rep for rep, _ in classes), lt), rep_of


def verify_intended_map(s: SetSystem, sigma: Poset, intended: Mapping[str, str] | None = None) -> Report:
    """Check pair by pair that ``x -> S_intended(x)`` is an order embedding.

    Works on raw set inclusion, not on :func:`inclusion_poset`.  Unwanted
    inclusions are reported with the heights of both endpoints in ``sigma``.
    """
    intended = s.intended if intended is None else intended
    report = Report()
    report.add("defined", [x for x in sigma.elements if x not in (intended or {})])
    if not report.ok:
        return report
    h = heights(sigma)
    sets = {x: s.sets[intended[x]] for x in sigma.elements}
    seen: dict[frozenset[str], str] = {}
    clashes = []
    for x in sigma.elements:
        if sets[x] in seen:
            clashes.append((seen[sets[x]], x))
        seen.setdefault(sets[x], x)
    report.add("injective", clashes)
    lost, extra = [], []
    for a in sigma.elements:
        for b in sigma.elements:
            if a == b:
                continue
            included = sets[a] < sets[b]
            related = (a, b) in sigma.lt
            if related and not included:
                lost.append({"pair": [a, b], "levels": [h[a], h[b]]})
            elif included and not related:
                extra.append({"pair": [a, b], "levels": [h[a], h[b]]})
    report.add("preserves", lost)
    report.add("reflects", extra)
    return report


def intended_embedding(s: SetSystem, sigma: Poset, intended: Mapping[str, str] | None = None) -> OrderEmbedding:
    """The intended map, composed with the quotient, as a checked :class:`OrderEmbedding`."""
    intended = s.intended if intended is None else intended
    target, rep_of = inclusion_poset(s)
    mapping = {x: rep_of[intended[x]] for x in sigma.elements}
    violations = embedding_violations(sigma, target, mapping)
    if violations:
        raise InvalidEmbedding("intended map is not an order embedding", violations)
    return OrderEmbedding(sigma, target, mapping)


def has_sop(s: SetSystem, sigma: Poset) -> OrderEmbedding | None:
    target, _ = inclusion_poset(s)
    return find_embedding(sigma, target)


def has_sup(s: SetSystem, k: int, bound: int = ENUM_BOUND) -> Report:
    """Does every poset with at most ``k`` points embed into the inclusion order of ``s``?"""
    if k > bound:
        raise BoundExceeded("k", k, bound)
    target, _ = inclusion_poset(s)
    report = Report()
    for m in range(1, k + 1):
        for idx, p in enumerate(enumerate_posets(m, bound=bound)):
            e = find_embedding(p, target)
            witness = [] if e is not None else [p.to_json()]
            report.add(f"size{m}#{idx}", witness)
    return report


def down_set_system(p: Poset) -> SetSystem:
    """``x -> {y : y <= x}``; realises ``p`` as an inclusion order."""
    sets = {x: frozenset(p.below(x) | {x}) for x in p.elements}
    return SetSystem(p.elements, sets, {x: x for x in p.elements})


# ---------------------------------------------------------------------------
# order property


def _point(i: int) -> str:
    return f"a{i}"


def op_half_graph_sets(n: int) -> SetSystem:
    """``B_j = {a_i : i < j}`` over ``a_{-n}..a_n``: nested initial segments."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = range(-n, n + 1)
    universe = tuple(_point(i) for i in rng)
    return SetSystem(universe, {f"B{j}": frozenset(_point(i) for i in rng if i < j) for j in rng})


def op_sigma_sets(n: int) -> tuple[SetSystem, dict[str, str]]:
    """Singletons ``{a_i}`` and the sets ``{a_i : i ∈ (-∞,-j) ∪ [0,j)}``, ``0 < i, j <= n``.

    ``αi``/``βj`` of the order poset are sent to the sets with index ``i+1``
    and ``j+1``, which shifts the construction's positive indices to ``0..n-1``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = range(-n, n + 1)
    universe = tuple(_point(i) for i in rng)
    sets: dict[str, frozenset[str]] = {}
    for i in range(1, n + 1):
        sets[f"Sα{i}"] = frozenset({_point(i)})
    for j in range(1, n + 1):
        sets[f"Sβ{j}"] = frozenset(_point(i) for i in rng if i < -j or 0 <= i < j)
    intended = {op_alpha(i): f"Sα{i + 1}" for i in range(n)}
    intended.update({op_beta(j): f"Sβ{j + 1}" for j in range(n)})
    return SetSystem(universe, sets, intended), intended


def extract_half_graph(s: SetSystem, e: OrderEmbedding) -> list[list[bool]]:
    """``M[i][j] = S_e(αi) ⊆ S_e(βj)``; raises unless this is exactly ``i < j``."""
    n = len(e.source) // 2
    _check_embedding_into(s, e)
    if e.source != sigma_op(n):
        raise InvalidEmbedding("embedding source is not the order poset")
    sets = s.sets
    matrix = [
        [sets[e(op_alpha(i))] <= sets[e(op_beta(j))] for j in range(n)] for i in range(n)
    ]
    bad = [(i, j) for i in range(n) for j in range(n) if matrix[i][j] != (i < j)]
    if bad:
        raise InvalidEmbedding("matrix is not a half graph", bad)
    return matrix


# ---------------------------------------------------------------------------
# independence property


def ip_sigma_sets(n: int, bound: int = IP_SETS_BOUND) -> tuple[SetSystem, dict[str, str]]:
    """Singletons ``{a_i}`` and ``{a_i : i ∈ V} ∪ {tail_k}`` for each ``V ⊆ n`` with code ``k``.

    The one-point tails are pairwise disjoint, which keeps distinct β-sets
    incomparable: a finite stand-in for an almost disjoint family.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > bound:
        raise BoundExceeded("n", n, bound)
    ws = subsets(n)
    universe = tuple(_point(i) for i in range(n)) + tuple(f"tail{k}" for k in range(len(ws)))
    sets: dict[str, frozenset[str]] = {}
    intended: dict[str, str] = {}
    for i in range(n):
        sets[f"Sα{i}"] = frozenset({_point(i)})
        intended[op_alpha(i)] = f"Sα{i}"
    for code, w in enumerate(ws):
        name = "S" + ip_beta(w)
        sets[name] = frozenset(_point(i) for i in w) | {f"tail{code}"}
        intended[ip_beta(w)] = name
    return SetSystem(universe, sets, intended), intended


def extract_shattering(s: SetSystem, e: OrderEmbedding, n: int) -> dict[tuple[int, ...], list[bool]]:
    """Row ``V`` lists ``S_e(αi) ⊆ S_e(βV)`` for ``i < n``; raises unless it is ``i ∈ V``."""
    _check_embedding_into(s, e)
    sets = s.sets
    out = {}
    bad = []
    for w in subsets(n):
        row = [sets[e(op_alpha(i))] <= sets[e(ip_beta(w))] for i in range(n)]
        out[w] = row
        bad.extend((i, w) for i in range(n) if row[i] != (i in w))
    if bad:
        raise InvalidEmbedding("subsets are not shattered", bad)
    return out


# ---------------------------------------------------------------------------
# tree properties


def _model_points(p: ConsistencyPattern):
    lab = SigmaLabels(p)
    a_pts = {c: "a" + p.set_label(c) for c in p.consistent}
    e_pts = {j: "e" + j for j in p.indices}
    return lab, a_pts, e_pts


def canonical_pattern_model(p: ConsistencyPattern, padding: bool = True) -> PatternWitness:
    """One point ``a_C`` per consistent set, ``set_j = {a_C : j ∈ C}``.

    The universe also holds a point ``e_j`` per index lying in no ``set_j``
    and, with ``padding``, two points lying in nothing at all.
    """
    report = validate_pattern(p)
    if not report.ok:
        raise SetSystemError("pattern fails C1/C2: " + report.to_text())
    _, a_pts, e_pts = _model_points(p)
    universe = tuple(a_pts.values()) + tuple(e_pts.values())
    if padding:
        universe += ("pad0", "pad1")
    sets = {j: frozenset(a_pts[c] for c in p.consistent if j in c) for j in p.indices}
    return PatternWitness(SetSystem(universe, sets), p)


def pattern_sigma_sets(p: ConsistencyPattern, padding: bool = True) -> tuple[SetSystem, dict[str, str]]:
    """Sets realising the pattern poset over the canonical model.

    ``α{C} -> {a_C}``, ``βj -> set_j ∪ {e_j}``, ``γj -> U ∖ S_βj`` and
    ``δ{C} -> U ∖ {a_C}``.  Set names coincide with the pattern-poset labels.
    For maximal patterns the intended map is an order embedding; for others
    it is only order preserving and :func:`verify_intended_map` names the
    unwanted inclusions.
    """
    model = canonical_pattern_model(p, padding=padding)
    lab, a_pts, e_pts = _model_points(p)
    universe = frozenset(model.system.universe)
    sets: dict[str, frozenset[str]] = {}
    for c in p.consistent:
        sets[lab.alpha(c)] = frozenset({a_pts[c]})
    for j in p.indices:
        sets[lab.beta(j)] = model.system.sets[j] | {e_pts[j]}
    for j in p.indices:
        sets[lab.gamma(j)] = universe - sets[lab.beta(j)]
    for c in p.consistent:
        sets[lab.delta(c)] = universe - {a_pts[c]}
    intended = {name: name for name in sets}
    return SetSystem(model.system.universe, sets, intended), intended


def _check_embedding_into(s: SetSystem, e: OrderEmbedding) -> None:
    target, rep_of = inclusion_poset(s)
    if e.target != target:
        raise InvalidEmbedding("embedding target is not the inclusion poset of the system")
    violations = embedding_violations(e.source, target, e.map)
    if violations:
        raise InvalidEmbedding("not an order embedding", violations)


def extract_pattern_witness(s: SetSystem, e: OrderEmbedding, p: ConsistencyPattern) -> PatternWitness:
    """Sets ``S_e(βj) ∖ S_e(γj)`` indexed by ``J``, from an embedding of the pattern poset.

    Inconsistent pairs come out disjoint since ``βj < γi`` forces
    ``S_e(βj) ⊆ S_e(γi)``.  A consistent ``C`` intersects: were
    ``S_e(α{C})`` covered by the sets ``S_e(γj)``, ``j ∈ C``, it would lie
    inside ``S_e(δ{C})``, and ``α{C}`` is not below ``δ{C}``.
    """
    if e.source != sigma_pattern(p).poset:
        raise InvalidEmbedding("embedding source is not the pattern poset of p")
    _check_embedding_into(s, e)
    lab = SigmaLabels(p)
    sets = {
        j: s.sets[e(lab.beta(j))] - s.sets[e(lab.gamma(j))] for j in p.indices
    }
    return PatternWitness(SetSystem(s.universe, sets), p)


def roundtrip(p: ConsistencyPattern, padding: bool = True, search: bool = True) -> Report:
    """Pattern -> pattern poset -> sets -> embedding(s) -> extracted pattern witness.

    Checks the intended map, optionally re-finds an embedding by search, and
    validates the witness extracted from every embedding obtained.
    """
    report = Report()
    sp = sigma_pattern(p)
    system, intended = pattern_sigma_sets(p, padding=padding)
    report.extend(verify_intended_map(system, sp.poset, intended), prefix="intended.")
    embeddings = []
    if report.ok:
        embeddings.append(("intended", intended_embedding(system, sp.poset, intended)))
    if search:
        found = has_sop(system, sp.poset)
        report.add("search", [] if found is not None else ["no embedding found"])
        if found is not None:
            embeddings.append(("search", found))
    for name, e in embeddings:
        w = extract_pattern_witness(system, e, p)
        report.extend(check_pattern_witness(w), prefix=f"extract[{name}].")
    return report
