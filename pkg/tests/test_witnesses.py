import itertools

import pytest

from sigmasop.errors import BoundExceeded, InvalidEmbedding, SetSystemError
from sigmasop.patterns import gen_atp, gen_sop3, gen_tp, gen_tp1, gen_tp2
from sigmasop.poset import (
    OrderEmbedding,
    antichain,
    chain,
    disjoint_sum,
    enumerate_posets,
    find_embedding,
    is_embedding,
    is_isomorphic,
)
from sigmasop.sigma import SigmaLabels, ip_beta, op_alpha, op_beta, sigma_ip, sigma_op, sigma_pattern, subsets
from sigmasop.witnesses import (
    PatternWitness,
    SetSystem,
    canonical_pattern_model,
    check_pattern_witness,
    down_set_system,
    extract_half_graph,
    extract_pattern_witness,
    extract_shattering,
    has_sop,
    has_sup,
    inclusion_poset,
    intended_embedding,
    ip_sigma_sets,
    op_half_graph_sets,
    op_sigma_sets,
    pattern_sigma_sets,
    roundtrip,
    verify_intended_map,
)

MAXIMAL = [gen_tp1(2), gen_tp1(3), gen_tp2(2, 3), gen_tp2(3, 3), gen_atp(3), gen_sop3(1), gen_sop3(2), gen_sop3(3)]
NON_MAXIMAL = [gen_tp(2, 2), gen_tp(3, 2), gen_tp(2, 3), gen_tp(3, 3)]


def system(sets, universe=None):
    universe = universe or sorted(set().union(*map(set, sets.values())))
    return SetSystem(tuple(universe), {k: frozenset(v) for k, v in sets.items()})


def test_set_system_rejects_foreign_points():
    with pytest.raises(SetSystemError):
        SetSystem(("x",), {"A": frozenset({"y"})})


def test_inclusion_poset_quotient():
    s = system({"A": {1}, "B": {1, 2}, "C": {1}}, universe=[1, 2])
    p, rep = inclusion_poset(s)
    assert p.elements == ("A", "B") and p.lt == {("A", "B")}
    assert rep == {"A": "A", "B": "B", "C": "A"}


def test_inclusion_poset_disjoint_is_antichain():
    p, _ = inclusion_poset(system({"A": {1}, "B": {2}, "C": {3}}))
    assert not p.lt and len(p) == 3


@pytest.mark.parametrize("s", [op_sigma_sets(3)[0], ip_sigma_sets(3)[0], pattern_sigma_sets(gen_tp2(2, 3))[0]])
def test_quotient_classes_distinct(s):
    p, rep = inclusion_poset(s)
    exts = [s.sets[x] for x in p.elements]
    assert len(set(exts)) == len(exts)
    assert all(s.sets[name] == s.sets[r] for name, r in rep.items())


def test_has_sop_basic():
    assert has_sop(system({"A": {1}, "B": {2}, "C": {3}}), chain(2)) is None
    p = sigma_op(4)
    assert has_sop(op_sigma_sets(4)[0], p) is not None
    e = has_sop(down_set_system(p), p)
    assert e is not None and is_embedding(e.source, e.target, e.map)


def test_down_set_system():
    s = down_set_system(chain(2, "x"))
    assert s.sets == {"x0": {"x0"}, "x1": {"x0", "x1"}}
    assert down_set_system(antichain(2)).sets == {"x0": {"x0"}, "x1": {"x1"}}


@pytest.mark.parametrize("n", range(1, 6))
def test_down_set_roundtrip(n):
    for p in enumerate_posets(n):
        q, _ = inclusion_poset(down_set_system(p))
        assert is_isomorphic(p, q)


def test_has_sup():
    realizer = down_set_system(disjoint_sum(enumerate_posets(3)))
    assert has_sup(realizer, 3).ok
    r = has_sup(down_set_system(chain(4)), 2)
    assert not r.ok and len(r.failed) == 1
    assert has_sup(SetSystem(("x",), {"E": frozenset()}), 1).ok
    with pytest.raises(BoundExceeded):
        has_sup(realizer, 9)


def test_half_graph_sets():
    s = op_half_graph_sets(1)
    assert s.sets == {"B-1": set(), "B0": {"a-1"}, "B1": {"a-1", "a0"}}
    for n in (1, 2, 3):
        s = op_half_graph_sets(n)
        p, _ = inclusion_poset(s)
        assert len(p) == 2 * n + 1 and is_isomorphic(p, chain(2 * n + 1))
        for i, j in itertools.product(range(-n, n + 1), repeat=2):
            assert (f"a{i}" in s.sets[f"B{j}"]) == (i < j)


def test_op_sigma_sets_instances():
    s, intended = op_sigma_sets(2)
    assert s.sets["Sβ1"] == {"a-2", "a0"}
    assert s.sets["Sβ2"] == {"a0", "a1"}
    assert s.sets["Sα1"] <= s.sets["Sβ2"] and not s.sets["Sα1"] <= s.sets["Sβ1"]


@pytest.mark.parametrize("n", range(2, 6))
def test_op_beta_sets_pairwise_incomparable(n):
    s, _ = op_sigma_sets(n)
    for j0, j1 in itertools.combinations(range(1, n + 1), 2):
        b0, b1 = s.sets[f"Sβ{j0}"], s.sets[f"Sβ{j1}"]
        assert f"a{j0}" in b1 - b0
        assert f"a{-j1}" in b0 - b1


@pytest.mark.parametrize("n", range(1, 6))
def test_op_sigma_sets_realise_sigma_op(n):
    s, intended = op_sigma_sets(n)
    assert verify_intended_map(s, sigma_op(n), intended).ok
    assert is_isomorphic(inclusion_poset(s)[0], sigma_op(n))
    assert has_sop(s, sigma_op(n)) is not None


def test_extract_half_graph():
    s, intended = op_sigma_sets(3)
    e = intended_embedding(s, sigma_op(3))
    assert extract_half_graph(s, e) == [[False, True, True], [False, False, True], [False, False, False]]
    s1, _ = op_sigma_sets(1)
    assert extract_half_graph(s1, intended_embedding(s1, sigma_op(1))) == [[False]]


def test_extract_half_graph_rejects_bad_embedding():
    s, _ = op_sigma_sets(2)
    target, _ = inclusion_poset(s)
    bogus = OrderEmbedding(sigma_op(2), target, {op_alpha(0): "Sα1", op_alpha(1): "Sα2", op_beta(0): "Sβ2", op_beta(1): "Sβ1"})
    with pytest.raises(InvalidEmbedding):
        extract_half_graph(s, bogus)


def test_ip_sets_n1():
    s, intended = ip_sigma_sets(1)
    assert s.sets[intended[ip_beta(())]] == {"tail0"}
    assert s.sets[intended[ip_beta((0,))]] == {"a0", "tail1"}
    p, _ = inclusion_poset(s)
    assert p.lt == {(intended[op_alpha(0)], intended[ip_beta((0,))])}


@pytest.mark.parametrize("n", range(1, 5))
def test_ip_sets_realise_sigma_ip(n):
    s, intended = ip_sigma_sets(n)
    sig = sigma_ip(n)
    assert verify_intended_map(s, sig, intended).ok
    for i, w in itertools.product(range(n), subsets(n)):
        assert (s.sets[intended[op_alpha(i)]] <= s.sets[intended[ip_beta(w)]]) == (i in w)
    for v, w in itertools.permutations(subsets(n), 2):
        assert not s.sets[intended[ip_beta(v)]] <= s.sets[intended[ip_beta(w)]]
    assert len(inclusion_poset(s)[0]) == n + 2 ** n


def test_ip_bound():
    with pytest.raises(BoundExceeded):
        ip_sigma_sets(5)


def test_extract_shattering():
    s, _ = ip_sigma_sets(2)
    rows = extract_shattering(s, intended_embedding(s, sigma_ip(2)), 2)
    assert rows == {(): [False, False], (0,): [True, False], (1,): [False, True], (0, 1): [True, True]}


def test_canonical_model():
    p = gen_tp2(2, 3)
    w = canonical_pattern_model(p)
    assert len(w.system.sets["(0,0)"]) == 3
    assert all(a.startswith("a{(0,0),") for a in w.system.sets["(0,0)"])
    assert check_pattern_witness(w).ok
    for c in p.consistent:
        a = "a" + p.set_label(c)
        assert all(a in w.system.sets[j] for j in c)


@pytest.mark.parametrize("p", MAXIMAL + NON_MAXIMAL, ids=repr)
def test_canonical_model_disjointness(p):
    w = canonical_pattern_model(p)
    for pair in p.inconsistent:
        i, j = tuple(pair)
        assert not w.system.sets[i] & w.system.sets[j]


def test_pattern_sets_tp2_levels():
    p = gen_tp2(2, 3)
    s, _ = pattern_sigma_sets(p)
    lab = SigmaLabels(p)
    for c, j in itertools.product(p.consistent, p.indices):
        assert (s.sets[lab.alpha(c)] <= s.sets[lab.beta(j)]) == (j in c)
    for i, j in itertools.product(p.indices, repeat=2):
        assert (s.sets[lab.beta(j)] <= s.sets[lab.gamma(i)]) == p.is_inconsistent(i, j)


@pytest.mark.parametrize("p", MAXIMAL, ids=repr)
@pytest.mark.parametrize("padding", [True, False])
def test_pattern_sets_embed(p, padding):
    s, intended = pattern_sigma_sets(p, padding=padding)
    sig = sigma_pattern(p).poset
    report = verify_intended_map(s, sig, intended)
    assert report.ok, report.to_text()
    e = intended_embedding(s, sig)
    assert is_embedding(sig, e.target, e.map)
    assert has_sop(s, sig) is not None


@pytest.mark.parametrize("p", MAXIMAL, ids=repr)
def test_pattern_set_shapes(p):
    s, _ = pattern_sigma_sets(p)
    lab = SigmaLabels(p)
    u = frozenset(s.universe)
    for j in p.indices:
        assert s.sets[lab.gamma(j)] == u - s.sets[lab.beta(j)]
    for c in p.consistent:
        assert len(s.sets[lab.alpha(c)]) == 1
        assert len(s.sets[lab.delta(c)]) == len(u) - 1
    assert all(x and x != u for x in s.sets.values())


@pytest.mark.parametrize("p", NON_MAXIMAL, ids=repr)
def test_non_maximal_is_homomorphism_only(p):
    s, intended = pattern_sigma_sets(p)
    r = verify_intended_map(s, sigma_pattern(p).poset, intended)
    assert r["preserves"].passed
    assert r["reflects"].status == "fail"
    assert any(w["levels"] == [1, 2] for w in r["reflects"].witnesses)


def test_tp_unwanted_inclusion_witness():
    p = gen_tp(3, 3)
    s, _ = pattern_sigma_sets(p)
    lab = SigmaLabels(p)
    # incomparable non-siblings: disjoint sets, so β_j lands inside γ_i
    assert s.sets[lab.beta("10")] <= s.sets[lab.gamma("00")]
    assert (lab.beta("10"), lab.gamma("00")) not in sigma_pattern(p).poset.lt


@pytest.mark.parametrize("p", MAXIMAL, ids=repr)
def test_extract_roundtrip(p):
    s, _ = pattern_sigma_sets(p)
    sig = sigma_pattern(p).poset
    for e in (intended_embedding(s, sig), has_sop(s, sig)):
        w = extract_pattern_witness(s, e, p)
        assert check_pattern_witness(w).ok


def test_extract_roundtrip_point_is_a_c():
    p = gen_tp2(2, 3)
    s, _ = pattern_sigma_sets(p)
    w = extract_pattern_witness(s, intended_embedding(s, sigma_pattern(p).poset), p)
    for c in p.consistent:
        common = frozenset.intersection(*(w.system.sets[j] for j in c))
        assert common == {"a" + p.set_label(c)}


@pytest.mark.parametrize("p", MAXIMAL + NON_MAXIMAL, ids=repr)
def test_extract_from_down_set_realiser(p):
    # any pattern poset realises itself by principal ideals
    sig = sigma_pattern(p).poset
    s = down_set_system(sig)
    e = intended_embedding(s, sig)
    w = extract_pattern_witness(s, e, p)
    assert check_pattern_witness(w).ok


def test_extract_rejects_wrong_source():
    p = gen_tp2(2, 3)
    s, _ = pattern_sigma_sets(p)
    e = intended_embedding(s, sigma_pattern(p).poset)
    with pytest.raises(InvalidEmbedding):
        extract_pattern_witness(s, e, gen_tp2(2, 4))


def test_check_pattern_witness_failures():
    p = gen_tp2(2, 3)
    sets = {j: frozenset({"x"}) for j in p.indices}
    r = check_pattern_witness(PatternWitness(SetSystem(("x",), sets), p))
    assert r.status("inconsistent-disjoint") == "fail"
    sets = {j: frozenset() for j in p.indices}
    r = check_pattern_witness(PatternWitness(SetSystem(("x",), sets), p))
    assert r.status("consistent-intersecting") == "fail"


def test_roundtrip_report():
    assert roundtrip(gen_tp2(2, 3)).ok
    r = roundtrip(gen_tp(3, 3))
    assert not r.ok
    assert any(w["levels"] == [1, 2] for w in r["intended.reflects"].witnesses)


def test_set_system_json():
    s, _ = pattern_sigma_sets(gen_sop3(1))
    assert SetSystem.from_json(s.to_json()) == s
