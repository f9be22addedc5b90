from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CARTAN, LANDAU, LANDAU_L1, LANDAU_L2
from orejordan import (EmptyFactorList, Gauge, InvalidChain, MismatchedTop, analyze, buchberger,
                       chain_from_right_factorization, compare_quotient_gauges, group_intersect,
                       group_sum, make_chain, member, parse_operator, refine, validate_chain)
from orejordan.series import same_ideal


@pytest.fixture
def chains(op, plane_order):
    c13 = chain_from_right_factorization([op("dx+1"), op("dx+1"), op("dx+x*dy")], plane_order)
    c14 = chain_from_right_factorization(
        [op("dx^2 + x*dx*dy + dx + (x+2)*dy"), op("dx+1")], plane_order)
    return c13, c14


@pytest.fixture
def cartan(heat, heat_order):
    P = lambda t: parse_operator(t, heat)  # noqa: E731
    k1 = chain_from_right_factorization([P("x*dx - x^2*dt - 2"), P("dx^2 - dt")], heat_order)
    k2 = chain_from_right_factorization([P("x*dx^2 - x*dt - 2*dx"), P("dx - x*dt")], heat_order)
    return k1, k2


def _gauges(report):
    return [tuple(g) for g in report.step_gauges]


def test_chain_from_factorization(op, plane_order, chains):
    c13, _ = chains
    expected = [LANDAU, "(dx+1)*(dx+x*dy)", "dx+x*dy", "1"]
    for B, text in zip(c13.ideals, expected):
        assert same_ideal(B, buchberger([op(text)], plane_order))
    single = chain_from_right_factorization([op("dx + y")], plane_order)
    assert len(single) == 2 and single.ideals[-1].is_unit()
    with pytest.raises(EmptyFactorList):
        chain_from_right_factorization([], plane_order)


def test_cartan_chain(heat, heat_order, cartan):
    _, k2 = cartan
    P = lambda t: parse_operator(t, heat)  # noqa: E731
    assert same_ideal(k2.ideals[0], buchberger([P(CARTAN)], heat_order))
    assert same_ideal(k2.ideals[1], buchberger([P("dx - x*dt")], heat_order))


def test_group_dictionary(op, plane_order, heat, heat_order):
    H1 = group_sum([op("dx+1")], [op("dx+x*dy")], plane_order)
    assert same_ideal(H1, buchberger([op(LANDAU_L1), op(LANDAU_L2)], plane_order))
    I = buchberger([op("dx + x*dy")], plane_order)
    assert group_sum(I, [op("1")], plane_order) == I
    assert group_intersect([op("dx+1")], [op("dx+x*dy")], plane_order).is_unit()
    assert group_intersect(I, I, plane_order) == I
    P = lambda t: parse_operator(t, heat)  # noqa: E731
    K = group_sum([P("dx^2 - dt")], [P("dx - x*dt")], heat_order)
    assert same_ideal(K, buchberger([P(CARTAN)], heat_order))


def test_kernel_inside_g1(op, plane_order):
    # G1 meet H1 contains G2 but is not all of G1
    S = group_intersect([op("(dx+1)*(dx+x*dy)")], [op(LANDAU_L1), op(LANDAU_L2)], plane_order)
    G1 = buchberger([op("(dx+1)*(dx+x*dy)")], plane_order)
    G2 = buchberger([op("dx + x*dy")], plane_order)
    assert all(member(g, S) for g in G1) and not all(member(g, G1) for g in S)
    assert all(member(g, G2) for g in S) and not member(op("dx + x*dy"), S)
    assert analyze(make_chain([S, [op("1")]], plane_order)).step_gauges[0] == Gauge(1, 1)


def test_analyze_landau(chains):
    report = analyze(chains[0])
    assert _gauges(report) == [(1, 3), (1, 2), (1, 1), (-1, 0)]
    assert [tuple(q) for q in report.quotient_gauges] == [(1, 1)] * 3
    assert report.strictly_decreasing and report.strongly_tau_uniform and report.consistent
    assert len(report.annotations) == 3
    assert "consistent with the Jordan-Hölder theorem" in report.verdict()
    assert report.to_dict()["omegas"] == ["3*s", "2*s + 1", "s + 1", "0"]


def test_analyze_explicit_chain(op, plane_order):
    H1 = [op(LANDAU_L1), op(LANDAU_L2)]
    chain = make_chain([[op(LANDAU)], H1, [op("dx+1")], [op("1")]], plane_order)
    report = analyze(chain)
    assert _gauges(report) == [(1, 3), (1, 2), (1, 1), (-1, 0)]
    assert [tuple(q) for q in report.quotient_gauges] == [(1, 1)] * 3
    assert report.annotations == []
    trivial = analyze(make_chain([[op("dx^2 + y")], [op("1")]], plane_order))
    assert [tuple(q) for q in trivial.quotient_gauges] == [(1, 2)]


def test_lower_type_step(op, plane_order):
    chain = make_chain([[op("dx + 1")], [op("dy"), op("dx + 1")], [op("1")]], plane_order)
    report = analyze(chain)
    assert _gauges(report) == [(1, 1), (0, 1), (-1, 0)]
    assert [tuple(q) for q in report.quotient_gauges] == [(1, 1), (1, 0)]
    assert not report.strongly_tau_uniform and not report.consistent
    assert "not strongly-tau-uniform" in report.annotations[0]
    assert report.verdict() == "does not meet the Jordan-Hölder gauge conditions"


def test_invalid_chains(op, plane_order):
    with pytest.raises(InvalidChain):
        make_chain([], plane_order)
    with pytest.raises(InvalidChain):
        analyze(make_chain([[op("dx+1")], [op("dx")], [op("1")]], plane_order))
    with pytest.raises(InvalidChain):
        validate_chain(make_chain([[op("dx+1")]], plane_order))


def test_refine_landau(chains, op, plane_order):
    c13, c14 = chains
    ref = refine(c13, c14)
    H = ref.essential_h
    assert _gauges(analyze(H)) == [(1, 3), (1, 2), (1, 1), (-1, 0)]
    assert same_ideal(H.ideals[1], buchberger([op(LANDAU_L1), op(LANDAU_L2)], plane_order))
    assert same_ideal(H.ideals[2], buchberger([op("dx+1")], plane_order))
    # the full refinement keeps a type-0 step between H2 and {0}
    assert _gauges(analyze(ref.full_h)) == [(1, 3), (1, 2), (1, 1), (0, 1), (-1, 0)]
    assert all(same_ideal(a, b) for a, b in zip(ref.essential_g.ideals, c13.ideals))
    assert ref.pairing_g == [[1], [0], [0]]
    assert not ref.unique_pairing
    verdict = compare_quotient_gauges(c13, H)
    assert verdict.verdict == "CONSISTENT"
    assert verdict.multiset_a == [[1, 1]] * 3
    assert compare_quotient_gauges(c13, c14).verdict == "INCONSISTENT"


def test_refine_cartan(cartan):
    k1, k2 = cartan
    ref = refine(k1, k2)
    assert len(ref.essential_g) == 3 and len(ref.essential_h) == 3
    assert ref.unique_pairing
    g = Counter(map(tuple, analyze(ref.essential_g).quotient_gauges))
    h = Counter(map(tuple, analyze(ref.essential_h).quotient_gauges))
    assert g == h == Counter({(1, 2): 1, (1, 1): 1})
    result = compare_quotient_gauges(k1, k2)
    assert result.consistent and result.multiset_a == [[1, 1], [1, 2]]


def test_refine_same_chain(chains):
    c13, _ = chains
    ref = refine(c13, c13)
    for side in (ref.full_g, ref.full_h, ref.essential_g, ref.essential_h):
        assert len(side) == len(c13)
        assert all(same_ideal(a, b) for a, b in zip(side.ideals, c13.ideals))


def test_refine_mismatched_top(chains, op, plane_order):
    other = chain_from_right_factorization([op("dx + y")], plane_order)
    with pytest.raises(MismatchedTop):
        refine(chains[0], other)


def test_compare_ordinary(line, line_order):
    P = lambda t: parse_operator(t, line)  # noqa: E731
    a = chain_from_right_factorization([P("d^2")], line_order)
    b = chain_from_right_factorization([P("d^3")], line_order)
    assert compare_quotient_gauges(a, b).verdict == "INCONSISTENT"
    c = chain_from_right_factorization([P("d"), P("d")], line_order)
    assert compare_quotient_gauges(a, c).verdict == "INCONSISTENT"
    assert compare_quotient_gauges(a, a).verdict == "CONSISTENT"


def test_chain_properties(chains, cartan):
    all_chains = list(chains) + list(cartan)
    for chain in all_chains:
        validate_chain(chain)
        report = analyze(chain)
        if report.strongly_tau_uniform:
            assert sum(q.a_tau for q in report.quotient_gauges) == report.step_gauges[0].a_tau
    for a in all_chains:
        assert compare_quotient_gauges(a, a).consistent
        for b in all_chains:
            if a.spec == b.spec:
                assert (compare_quotient_gauges(a, b).verdict
                        == compare_quotient_gauges(b, a).verdict)
    for a, b in (chains, cartan):
        ref = refine(a, b)
        for side, orig in ((ref.full_g, a), (ref.full_h, b), (ref.essential_g, a),
                           (ref.essential_h, b)):
            validate_chain(side)
            assert same_ideal(side.ideals[0], orig.ideals[0])
            assert side.ideals[-1].is_unit()


def test_duality_round_trip(op, plane_order, heat, heat_order):
    P = lambda t: parse_operator(t, heat)  # noqa: E731
    pairs = [([op("dx+1")], [op("dx+x*dy")], plane_order),
             ([P("dx^2 - dt")], [P("dx - x*dt")], heat_order)]
    for f, g, order in pairs:
        both = group_sum(f, g, order)
        assert same_ideal(group_intersect(both, f, order), buchberger(f, order))


PLANE_OPS = st.sampled_from(["dx + 1", "dx + x*dy", "dy - x", "dx - y", "dx + dy"])


@settings(max_examples=15, deadline=None)
@given(st.lists(PLANE_OPS, min_size=1, max_size=3))
def test_factor_chains_telescope(factors):
    from orejordan import TermOrder, load_spec
    spec = load_spec("derivations = dx, dy\nvariables = x, y")
    order = TermOrder.grlex(spec, "dx > dy")
    chain = chain_from_right_factorization([parse_operator(t, spec) for t in factors], order)
    report = analyze(chain)
    assert report.strongly_tau_uniform
    assert [tuple(q) for q in report.quotient_gauges] == [(1, 1)] * len(factors)
    assert sum(q.a_tau for q in report.quotient_gauges) == len(factors)
