import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arithdyn.degrees import (degree_sequence, estimate_delta1, hyperbolicity_report,
                              lemma_constants, topological_degree)
from arithdyn.errors import InvalidParameterError
from arithdyn.maps import AffinePolyMap, compose, iterate
from arithdyn.zoo import monomial_projective, zoo_get

XY = ("x", "y")


def affine(*strings):
    return AffinePolyMap.from_strings(list(strings), XY[:len(strings)])


# -- degree sequences ---------------------------------------------------------

def test_henon_degree_sequence():
    seq = degree_sequence(zoo_get("henon"), 5)
    assert seq.degrees == [2, 4, 8, 16, 32]
    est = estimate_delta1(seq)
    assert est.stable and est.delta1_exact == 2


def test_gs02_degree_sequences():
    g = zoo_get("gs02", d=2)
    assert degree_sequence(g.projective, 3).degrees == [3, 9, 27]
    assert degree_sequence(g.projective_inverse, 2).degrees == [7, 49]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_gs02_family_degrees(d):
    # forward degree d + 1, inverse degree d^2 + d + 1
    g = zoo_get("gs02", d=d)
    assert degree_sequence(g.projective, 2).degrees == [d + 1, (d + 1) ** 2]
    assert degree_sequence(g.projective_inverse, 1).degrees == [d * d + d + 1]


def test_cremona_not_stable():
    seq = degree_sequence(zoo_get("cremona"), 6)
    assert seq.degrees == [2, 1, 2, 1, 2, 1]
    est = estimate_delta1(seq)
    assert not est.stable and est.delta1_exact is None
    assert len(set(est.ratios)) == 2
    assert est.roots[-1] < est.roots[1] + 1e-12 and abs(est.roots[-1] - 1) < 1e-12


def test_term_cap_truncates():
    seq = degree_sequence(zoo_get("henon"), 12, term_count_cap=50)
    assert seq.truncated and "term_count_cap" in seq.reason
    assert seq.degrees == [2 ** n for n in range(1, len(seq.degrees) + 1)]


def test_estimate_needs_two_entries():
    with pytest.raises(ValueError):
        estimate_delta1(degree_sequence(zoo_get("henon"), 1))


@pytest.mark.parametrize("name,params,n", [
    ("henon", {}, 5), ("cremona", {}, 6), ("gs02", {"d": 2}, 3),
    ("monomial", {"matrix": [[1, 1], [1, 0]]}, 6), ("swap", {}, 4)])
def test_submultiplicative(name, params, n):
    seq = degree_sequence(zoo_get(name, **params), n)
    deg = dict(seq.entries)
    for m, k in itertools.product(deg, deg):
        if m + k in deg:
            assert deg[m + k] <= deg[m] * deg[k]
    if estimate_delta1(seq).stable:
        for m in deg:
            if 2 * m in deg:
                assert deg[2 * m] == deg[m] ** 2


def test_monomial_degrees_follow_matrix_powers():
    # deg of x^M on P^N: [1,1],[1,0] has Fibonacci-growth degrees
    seq = degree_sequence(zoo_get("monomial", matrix=[[1, 1], [1, 0]]), 6)
    assert seq.degrees == [2, 3, 5, 8, 13, 21]


# -- topological degree -----------------------------------------------------------

def _brute_fiber_max(components, p):
    """Independent oracle: max preimage count over images of non-critical points."""
    f = [eval(f"lambda x, y: {c}") for c in components]  # noqa: S307
    table = {}
    for x, y in itertools.product(range(p), repeat=2):
        img = (f[0](x, y) % p, f[1](x, y) % p)
        table[img] = table.get(img, 0) + 1
    return table


def test_fiber_sampling_squares():
    est = topological_degree(affine("x^2", "y^2"), method="fiber-sampling", seed=1)
    assert est.value == 4 and est.method == "fiber-sampling" and est.heuristic
    assert all(c == 4 for _, _, c in est.samples)
    assert est.discarded == 0
    # oracle over a small prime: non-critical targets have exactly 4 preimages
    table = _brute_fiber_max(["x**2", "y**2"], 11)
    assert {table[(a * a % 11, b * b % 11)] for a in range(1, 11) for b in range(1, 11)} == {4}


@pytest.mark.parametrize("comps,expected", [(("x^2 + y", "y^2"), 4), (("y", "x^2"), 2),
                                            (("x^3", "y"), 3)])
def test_fiber_sampling_known_degrees(comps, expected):
    f = affine(*comps)
    est = topological_degree(f, method="fiber-sampling", prime_count=2,
                             samples_per_prime=15, seed=3)
    assert est.value == expected
    d = max(c.degree for c in f.components)
    assert all(c <= d ** 2 for _, _, c in est.samples)
    assert all(c <= est.value for _, _, c in est.samples)


def test_fiber_sampling_deterministic_for_seed():
    f = affine("x^2 + y", "y^2")
    a = topological_degree(f, method="fiber-sampling", prime_count=2, seed=9)
    b = topological_degree(f, method="fiber-sampling", prime_count=2, seed=9)
    assert a == b


def test_birational_and_monomial_methods():
    h = topological_degree(zoo_get("henon"))
    assert (h.value, h.method) == (1, "birational-unit")
    m = topological_degree(zoo_get("monomial", matrix=[[1, 1], [1, 0]]))
    assert (m.value, m.method) == (1, "exact-monomial")
    assert topological_degree(zoo_get("monomial", matrix=[[2, 1], [0, 3]])).value == 6


def test_monomial_degree_multiplicative():
    rng = random.Random(5)
    for _ in range(10):
        A = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        B = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        if A[0][0] * A[1][1] - A[0][1] * A[1][0] == 0 or \
                B[0][0] * B[1][1] - B[0][1] * B[1][0] == 0:
            continue
        FA, FB = monomial_projective(A), monomial_projective(B)
        tA = topological_degree(FA).value
        tB = topological_degree(FB).value
        assert topological_degree(compose(FA, FB)).value == tA * tB


def test_unknown_method_rejected():
    with pytest.raises(InvalidParameterError):
        topological_degree(zoo_get("henon"), method="guess")


# -- hyperbolicity ------------------------------------------------------------------

def test_hyperbolicity_examples():
    h = hyperbolicity_report(zoo_get("henon"))
    assert h.hyperbolic and h.confidence == "exact" and h.delta1 == 2 and h.delta2 == 1
    sq = hyperbolicity_report(affine("x^2", "y^2"))
    assert not sq.hyperbolic and sq.delta2 == 4 and sq.confidence == "exact"
    g = hyperbolicity_report(zoo_get("gs02", d=2), n_max=2)
    assert g.hyperbolic and (g.delta1, g.delta2) == (3, 7) and g.confidence == "exact"


def test_hyperbolicity_dimension_checks():
    with pytest.raises(InvalidParameterError):
        hyperbolicity_report(zoo_get("shift", n=1))
    with pytest.raises(InvalidParameterError):
        hyperbolicity_report(AffinePolyMap.from_strings(["x^2", "y^2", "z^2"],
                                                        ("x", "y", "z")))


# -- lemma constants ---------------------------------------------------------------

def test_lemma_examples():
    c = lemma_constants(3, 1, 1, 1)
    golden = (3 + math.sqrt(5)) / 2
    assert math.isclose(c.alpha, golden, rel_tol=1e-12)
    assert math.isclose(c.beta, golden, rel_tol=1e-12)
    assert math.isclose(c.alpha + 1 / c.alpha, 3, rel_tol=1e-12)
    c = lemma_constants(3, 2, 1, 1)
    assert math.isclose(c.alpha, 3 + math.sqrt(7), rel_tol=1e-12)
    assert math.isclose(c.beta, (3 + math.sqrt(7)) / 2, rel_tol=1e-12)


def test_lemma_boundary_rejected_with_inequality():
    with pytest.raises(InvalidParameterError, match="1/d1 \\+ 1/d2"):
        lemma_constants(2, 1, 1, 1)
    with pytest.raises(InvalidParameterError):
        lemma_constants(1.5, 2, 1, 1)
    with pytest.raises(InvalidParameterError):
        lemma_constants(5, 1, 1, 0)


admissible = st.tuples(st.floats(0.05, 50), st.floats(0.05, 50), st.floats(1.0001, 20)) \
    .map(lambda t: (t[2] * (1 / t[0] + 1 / t[1]), t[0], t[1]))


@settings(max_examples=1000, deadline=None)
@given(admissible)
def test_lemma_identities(args):
    zeta, d1, d2 = args
    c = lemma_constants(zeta, d1, d2, 1.0)
    assert c.alpha > 1 and c.beta > 1
    assert abs(c.alpha / d1 + 1 / (c.alpha * d2) - zeta) <= 1e-9 * zeta
    assert abs(c.beta / d2 + 1 / (c.beta * d1) - zeta) <= 1e-9 * zeta
    assert abs(c.alpha * d2 - c.beta * d1) <= 1e-9 * c.alpha * d2
    assert c.alpha >= zeta * d1 / 2 * (1 - 1e-9)
