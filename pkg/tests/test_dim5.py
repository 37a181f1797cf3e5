from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

import pytest

from gacable.dim5 import SIGMA_SCALED, Dim5Error, residue_case
from gacable.exact_poly import Bigrade, parse_poly, try_divide
from gacable.linalg_graded import VectorSpaceBasis, span_rank

H0 = "6*x^3*z - 3*x^2*y^2"


def test_context_identities(d5):
    assert d5.D(d5.F).is_zero() and d5.D(d5.G).is_zero() and d5.D(d5.h).is_zero()
    assert d5.h.subs({"a": 0}) == parse_poly(H0, d5.varset)
    assert d5.bigrade(d5.G) == Bigrade(9, 3)
    assert d5.bigrade(d5.F) == (6, 2)
    assert d5.bigrade(d5.h) == (12, 6)


def test_hardcoded_roots(d5):
    assert d5.sigma(0) == d5.a
    assert d5.sigma(1) == d5.a * d5.v - d5.x
    assert d5.sigma(3) == parse_poly("a*v^3 - 3*x*v^2 + 6*a^2*y*v - 6*a^4*z", d5.varset) / 6
    assert len(parse_poly(SIGMA_SCALED[5], d5.varset)) == 9


def test_low_relations(d5):
    s = d5.sigmas(6)
    assert 2 * d5.a * s[4] == 2 * s[1] * s[3] - s[2] ** 2
    assert 7 * d5.a * s[6] == 2 * s[1] * s[5] + s[2] * s[4] - s[3] ** 2


@pytest.mark.parametrize("n", range(4, 20))
def test_recursion_consistency(d5, n):
    assert d5.sigma_from_rhs(n) == d5.sigma(n)


def test_residue_cases():
    assert [residue_case(n) for n in range(6, 12)] == ["0", "1", "2,4", "3,5", "2,4", "3,5"]


@pytest.mark.parametrize("n", range(0, 20))
def test_cable_laws(d5, n):
    s = d5.sigma(n)
    assert d5.D(s).is_zero()
    assert d5.bigrade(s) == (2 * n + 1, n)
    if n:
        assert d5.partial_v(s) == d5.sigma(n - 1)
        assert d5.check_congruence(n)


def test_congruence_examples(d5):
    a, x, v, y = d5.a, d5.x, d5.v, d5.y
    assert d5.sigma(1) + x == a * v
    assert 2 * d5.sigma(2) + 2 * x * v == a * v ** 2 + 2 * a ** 2 * y
    with pytest.raises(Dim5Error):
        d5.check_congruence(0)


def test_specialisation_at_a_zero(d5):
    for n in range(1, 14):
        assert d5.sigma(n).subs({"a": 0}) == -(d5.x * d5.v ** (n - 1)) / factorial(n - 1)


def test_fg_identities(d5):
    s = d5.sigmas(5)
    assert d5.F == 2 * s[0] * s[2] - s[1] ** 2
    assert -d5.G == 3 * s[0] ** 2 * s[3] - 3 * s[0] * s[1] * s[2] + s[1] ** 3
    assert 2 * s[0] * s[4] == 2 * s[1] * s[3] - s[2] ** 2
    assert 5 * s[0] * s[5] == 3 * s[1] * s[4] - s[2] * s[3]


def test_sigma_cable_object(d5):
    c = d5.sigma_cable(8)
    assert len(c) == 9 and c.kernel_of == d5.D
    assert c.extended(10)[9] == d5.sigma(9)


def test_dixmier_route(d5):
    assert d5.sigma_via_dixmier(0) == d5.a
    for n in range(6):
        assert d5.sigma_via_dixmier(n) == d5.sigma(n)
    for n in range(6, 9):
        q = try_divide(d5.sigma_via_dixmier(n) - d5.sigma(n), d5.h)
        assert q is not None
        assert q in d5.kernel(2 * (n - 6) + 1, n - 6)


def test_w_sequence_is_a_chain(d5):
    ws = d5.w_sequence(9)
    assert ws[0].is_constant()
    assert all(not w.is_zero() for w in ws)


def test_dimension_examples(d5):
    assert d5.dim_A(13, 6) == 2
    assert d5.dim_A(3, 1) == 1
    assert d5.dim_A(25, 12) == 3
    assert d5.dim_A(-1, 0) == 0


def test_dimension_table(d5):
    assert [d5.dim_A(2 * n + 1, n) for n in range(18)] == [n // 6 + 1 for n in range(18)]


def test_top_slice_basis(d5):
    # A_(2n+1, n) = k sigma_n + h A_(2n-11, n-6)
    for n in range(6, 14):
        lower = d5.kernel(2 * (n - 6) + 1, n - 6)
        want = VectorSpaceBasis(d5.varset, [d5.sigma(n)] + [d5.h * p for p in lower.vectors])
        assert d5.kernel(2 * n + 1, n) == want


def test_rcap_slices(d5):
    ah = d5.rcap_A_slice(6)
    assert ah.dim == 1 and d5.a * d5.h in ah
    f = d5.rcap_A_slice(2, "b")
    assert f.dim == 1 and d5.F in f
    assert d5.rcap_A_slice(1).dim == 0
    for n in range(13):
        for part in "ab":
            assert d5.rcap_A_slice(n, part) == VectorSpaceBasis(d5.varset, d5.rcap_prediction(n, part))


def test_generated_by_h_and_sigmas(d5):
    # finite evidence that A is spanned by products of h and the sigma_i
    for s in range(0, 7):
        for r in range(s, 2 * s + 4):
            prods = []
            for e in range(s // 6 + 1):
                for k in range(0, r - 12 * e + 1):
                    for idx in combinations_with_replacement(range(s - 6 * e + 1), k):
                        if sum(idx) != s - 6 * e or sum(2 * i + 1 for i in idx) != r - 12 * e:
                            continue
                        p = d5.h ** e
                        for i in idx:
                            p = p * d5.sigma(i)
                        prods.append(p)
            assert span_rank(prods) == d5.dim_A(r, s), (r, s)


def test_phi_sigma(d5, om, omt):
    assert d5.phi_sigma(om.theta0(2)) == d5.F
    assert d5.phi_sigma(om.lift(parse_poly("7*x0*x6 - 2*x1*x5 - x2*x4 + x3^2"))).is_zero()
    assert d5.phi_sigma(omt.t()) == d5.h


@pytest.mark.parametrize("n", [4, 8, 10, 14, 16])
def test_theta_vanishing(d5, om, n):
    assert d5.phi_sigma(om.theta0(n)).is_zero()
    assert d5.phi_sigma(om.theta1(n)).is_zero()


def test_non_vanishing_guard(d5, om):
    for j in range(7):
        assert not d5.phi_sigma(om.beta(0, j)).is_zero()
    # theta_0 and theta_2 vertices stay independent, so no combination dies
    for j in range(2, 5):
        ims = [d5.phi_sigma(om.beta(0, j)), d5.phi_sigma(om.beta(2, j - 2))]
        assert span_rank(ims) == 2
    assert not d5.phi_sigma(om.theta0(6)).is_zero()


def test_eta4_images_divisible_by_h(d5, om):
    for j in range(7):
        img = d5.phi_sigma(om.eta(4, j))
        assert try_divide(img, d5.h) is not None


def test_chi_image(d5, om):
    chi = om.lift(parse_poly("9*x0^2*x3^2 - 3*x1^2*x2^2 + 8*x0*x2^3 - 18*x0*x1*x2*x3 + 6*x1^3*x3"))
    img = d5.phi_sigma(chi)
    assert try_divide(img, d5.h) is not None
    # the actual value
    assert img == d5.a ** 4 * d5.h


@pytest.mark.parametrize("n", [4, 10, 16])
def test_intro_relations_at_shifted_index(d5, n):
    for kind in ("i", "ii", "iii", "iv"):
        assert d5.intro_relation(kind, n).is_zero(), kind


def test_intro_relations_fail_at_multiples_of_six(d5):
    for n in (6, 12):
        assert not d5.intro_relation("i", n).is_zero()
    with pytest.raises(Dim5Error):
        d5.intro_relation("v", 4)


def test_big_roots(d5, omt):
    phi = d5.phi_sigma
    root, c = omt.theta_big_root_data(4, phi)
    assert root == omt.theta0(4) and c == 0
    root, c = omt.theta_big_root_data(8, phi)
    assert c == 0
    consts = {n: omt.theta_big_root_data(n, phi)[1] for n in (6, 12, 18)}
    assert consts == {6: Fraction(-1, 7), 12: Fraction(1, 637), 18: Fraction(-1, 84721)}
    for n in (6, 12):
        root = omt.theta_big_root(n, phi)
        e = n // 6
        assert root == omt.theta0(n) - (omt.t() ** e * omt.theta0(0)).scale(consts[n])
        assert phi(root).is_zero()
