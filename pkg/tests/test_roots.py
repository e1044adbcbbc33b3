import pytest

from clusteraut.dynkin import coxeter_number, parse_label
from clusteraut.roots import (
    NotAlmostPositive,
    build_root_system,
    d_vector_walk,
    format_root,
    longest_involution,
    sigma,
    simple_reflection,
    standard_sign,
    tau,
    tau_as_sigma_product,
    tau_group,
    window_cover,
)

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]


def rotation_oracle(label):
    """Order of tau_- tau_+ read from the classical table, by family."""
    t = parse_label(label)
    fam, n = t.family, t.rank
    if fam == "A":
        return n + 3
    if fam in "BC":
        return n + 1
    if fam == "D":
        return n if n % 2 == 0 else 2 * n
    return {"E6": 14, "E7": 10, "E8": 16, "F4": 7, "G2": 4}[label]


# types where the longest Weyl element acts as -1
W0_MINUS_ONE = {"A1", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "E7", "E8"}


def both_signs(rs):
    eps = standard_sign(rs)
    return [eps, -eps]


def test_build_examples():
    a2 = build_root_system("A2")
    assert len(a2.almost_positive) == 5 and a2.coxeter_number == 3
    b3 = build_root_system("B3")
    assert b3.coxeter_number == 6 and len(b3.positives) == 9
    g2 = build_root_system("G2")
    assert g2.coxeter_number == 6 and len(g2.almost_positive) == 8


def test_almost_positive_order():
    a2 = build_root_system("A2")
    assert a2.almost_positive == ((-1, 0), (0, -1), (1, 0), (0, 1), (1, 1))


@pytest.mark.parametrize("label", SMALL + ["E7", "E8"])
def test_positive_root_count(label):
    rs = build_root_system(label)
    n = rs.n
    assert len(rs.positives) == n * coxeter_number(label) // 2
    assert all(min(r) >= 0 for r in rs.positives)


def test_highest_roots():
    assert max(build_root_system("G2").positives, key=sum) == (3, 2)
    assert max(build_root_system("B3").positives, key=sum) == (1, 2, 2)
    assert max(build_root_system("E8").positives, key=sum) == (2, 4, 6, 5, 4, 3, 2, 3)


def test_simple_reflection():
    a2 = build_root_system("A2")
    assert simple_reflection(a2, 0, (0, 1)) == (1, 1)
    assert simple_reflection(a2, 0, (1, 0)) == (-1, 0)
    for label in ("B3", "G2"):
        rs = build_root_system(label)
        for i in range(rs.n):
            for a in rs.positives:
                assert simple_reflection(rs, i, simple_reflection(rs, i, a)) == a


def test_sigma_examples():
    a2 = build_root_system("A2")
    assert sigma(a2, 0, (0, -1)) == (0, -1)
    assert sigma(a2, 0, (-1, 0)) == (1, 0)
    assert sigma(a2, 0, (0, 1)) == (1, 1)


def test_sigma_rejects_other_vectors():
    a2 = build_root_system("A2")
    with pytest.raises(NotAlmostPositive):
        sigma(a2, 0, (-1, -1))
    with pytest.raises(NotAlmostPositive):
        tau(a2, standard_sign(a2), 1, (2, 0))


def test_tau_minus_a2():
    a2 = build_root_system("A2")
    eps = standard_sign(a2)
    assert eps.signs == (1, -1)
    assert tau(a2, eps, -1, (0, 1)) == (0, -1)
    assert tau(a2, eps, -1, (1, 0)) == (1, 1)


@pytest.mark.parametrize("label", SMALL)
def test_tau_involution_preserves_almost_positive(label):
    rs = build_root_system(label)
    for eps in both_signs(rs):
        for sign in (1, -1):
            images = [tau(rs, eps, sign, a) for a in rs.almost_positive]
            assert sorted(images) == sorted(rs.almost_positive)
            for a, b in zip(rs.almost_positive, images):
                assert tau(rs, eps, sign, b) == a
                assert tau_as_sigma_product(rs, eps, sign, a) == b


@pytest.mark.parametrize("label", ["B3", "C3", "G2", "F4", "B4"])
def test_tau_commutes_with_coroots(label):
    rs = build_root_system(label)
    dual = rs.dual
    for eps in both_signs(rs):
        for sign in (1, -1):
            for a in rs.almost_positive:
                assert rs.coroot(tau(rs, eps, sign, a)) == tau(dual, eps, sign, rs.coroot(a))


def test_dual_swaps_b_and_c():
    assert str(build_root_system("B3").dual.label) == "C3"
    assert build_root_system("G2").dual.cartan.entries == build_root_system("G2").cartan.transpose().entries


@pytest.mark.parametrize("label", SMALL[1:] + ["E7"])
def test_tau_group_matches_table(label):
    rs = build_root_system(label)
    for eps in both_signs(rs):
        tg = tau_group(rs, eps)
        assert tg.rotation_order == rotation_oracle(label)
        assert tg.order == 2 * tg.rotation_order
        h = rs.coxeter_number
        expected = (h + 2) // 2 if label in W0_MINUS_ONE else h + 2
        assert tg.rotation_order == expected


def test_rank_one_tau_group_is_degenerate():
    # tau_- fixes both roots when the only vertex is a source
    rs = build_root_system("A1")
    tg = tau_group(rs, standard_sign(rs))
    assert tg.tau_minus == (0, 1) and tg.tau_plus == (1, 0)
    assert (tg.order, tg.rotation_order) == (2, 2)


def test_tau_group_examples():
    assert tau_group(build_root_system("A2"), standard_sign(build_root_system("A2"))).dihedral_name == "D5"
    rs = build_root_system("D4")
    tg = tau_group(rs, standard_sign(rs))
    assert (tg.order, tg.rotation_order) == (8, 4)


@pytest.mark.parametrize("label", SMALL)
def test_every_rotation_orbit_meets_negative_simples(label):
    rs = build_root_system(label)
    neg = set(rs.negative_simples)
    for eps in both_signs(rs):
        for a in rs.almost_positive:
            orbit, b = set(), a
            while b not in orbit:
                orbit.add(b)
                b = tau(rs, eps, -1, tau(rs, eps, 1, b))
            assert orbit & neg


def test_longest_involution_examples():
    a2 = build_root_system("A2")
    assert longest_involution(a2, standard_sign(a2)) == (1, 0)
    b3 = build_root_system("B3")
    assert longest_involution(b3, standard_sign(b3)) == (0, 1, 2)
    e6 = build_root_system("E6")
    star = longest_involution(e6, standard_sign(e6))
    assert star == (4, 3, 2, 1, 0, 5)


@pytest.mark.parametrize("label", SMALL)
def test_longest_involution_is_identity_exactly_when_w0_is_minus_one(label):
    rs = build_root_system(label)
    for eps in both_signs(rs):
        star = longest_involution(rs, eps)
        assert sorted(star) == list(range(rs.n))
        assert all(star[star[i]] == i for i in range(rs.n))
        assert (star == tuple(range(rs.n))) == (label in W0_MINUS_ONE)


def test_d5_swaps_the_fork():
    rs = build_root_system("D5")
    assert longest_involution(rs, standard_sign(rs)) == (0, 1, 2, 4, 3)


def test_d_vector_walk():
    rs = build_root_system("A3")
    eps = standard_sign(rs)
    src = eps.indices(1)[0]
    assert d_vector_walk(rs, eps, src, 0) == tuple(-1 if j == src else 0 for j in range(3))
    with pytest.raises(ValueError):
        d_vector_walk(rs, eps, src, 1)


@pytest.mark.parametrize("label", SMALL)
def test_walk_reaches_negative_starred_simple(label):
    rs = build_root_system(label)
    h = rs.coxeter_number
    for eps in both_signs(rs):
        star = longest_involution(rs, eps)
        for i in range(rs.n):
            if eps[i] == (-1) ** (h + 1):
                want = tuple(-1 if j == star[i] else 0 for j in range(rs.n))
                assert d_vector_walk(rs, eps, i, h + 1) == want


@pytest.mark.parametrize("label", SMALL)
def test_window_is_a_disjoint_cover(label):
    rs = build_root_system(label)
    for eps in both_signs(rs):
        roots = [d for _, _, d in window_cover(rs, eps)]
        assert len(roots) == len(rs.almost_positive)
        assert set(roots) == set(rs.almost_positive)


def test_format_root():
    assert format_root((1, 2)) == "alpha1 + 2*alpha2"
    assert format_root((0, -1)) == "-alpha2"
