
import pytest

from gacable.cables import (
    CableError,
    CablePrefix,
    add,
    check_elements,
    exp_transport,
    limit_combine,
    phi_map,
    scale,
    shifted_sum,
    verify,
)
from gacable.derivations import Derivation
from gacable.exact_poly import VarSet, parse_poly

XV = VarSet(["x", "v"])
xx, vv = XV.gens()
DV = Derivation.partial(XV, "v")
OMV = VarSet([f"x{i}" for i in range(4)])


def s_hat(n):
    # (1, v, v^2/2, ...)
    out, cur = [], XV.one()
    for i in range(n):
        out.append(cur)
        cur = cur * vv / (i + 1)
    return CablePrefix(DV, out)


def test_verify_reports(d5):
    c = CablePrefix(d5.partial_v, d5.sigmas(2), kernel_of=d5.D)
    assert verify(c)
    rep = check_elements(d5.partial_v, [d5.a, d5.x])
    assert not rep and rep.index == 1
    rep = check_elements(d5.partial_v, [d5.varset.zero(), d5.a])
    assert not rep and rep.index == 0 and "zero root" in rep.reason
    rep = check_elements(d5.partial_v, [d5.v], kernel_of=d5.D)
    assert not rep and "kernel" in rep.reason
    with pytest.raises(CableError):
        CablePrefix(d5.partial_v, [d5.a, d5.x])


def test_scale():
    c = scale(xx, s_hat(3))
    assert list(c) == [xx, xx * vv, xx * vv ** 2 / 2]
    assert scale(1, s_hat(3)) == s_hat(3)
    with pytest.raises(CableError):
        scale(vv, s_hat(3))
    with pytest.raises(CableError):
        scale(0, s_hat(3))


def test_scale_sigma_by_h(d5):
    c = scale(d5.h, d5.sigma_cable(4))
    assert c.root == d5.h * d5.a
    assert verify(c)


def test_add():
    c = s_hat(3)
    with pytest.raises(CableError):
        add(c, scale(-1, c))
    assert list(add(s_hat(2), s_hat(2))) == [2 * XV.one(), 2 * vv]
    assert len(add(s_hat(2), s_hat(5))) == 2


def test_shifted_sum():
    c = shifted_sum(s_hat(4), scale(xx, s_hat(2)), 2)
    assert c[2] == xx + vv ** 2 / 2
    assert c[3] == xx * vv + vv ** 3 / 6
    assert len(c) == 4
    assert verify(c)
    # a shift past the second cable leaves the overlap untouched
    c = shifted_sum(s_hat(3), s_hat(1), 3)
    assert list(c) == list(s_hat(3))
    with pytest.raises(CableError):
        shifted_sum(s_hat(3), s_hat(3), 0)


def test_limit_combine_collapses():
    base = s_hat(6)
    assert limit_combine([base], [], [], 4) == base.truncate(4)
    two = limit_combine([base, s_hat(4)], [2], [xx], 6)
    assert two == shifted_sum(base, scale(xx, s_hat(4)), 2)


def test_limit_combine_three_terms():
    base = s_hat(8)
    u = limit_combine([base, s_hat(6), s_hat(3)], [2, 5], [xx, 3], 8)
    want = shifted_sum(shifted_sum(base, scale(xx, s_hat(6)), 2), scale(3, s_hat(3)), 5)
    assert u == want
    with pytest.raises(CableError):
        limit_combine([base, s_hat(6), s_hat(3)], [5, 2], [1, 1], 8)
    with pytest.raises(CableError):
        limit_combine([base, s_hat(2)], [2], [vv], 4)


def test_psi4_prefix_from_shifted_sum(om):
    b4, b6 = om.beta_cable(4, 8), om.beta_cable(6, 6)
    u = shifted_sum(b4, CablePrefix(om.delta, [p.scale(-4) for p in b6]), 2)
    assert list(u) == list(om.reduce_basis(4, 8))
    assert u[2] == om.lift(parse_poly("7*x0*x6 - 2*x1*x5 - x2*x4 + x3^2"))


def test_phi_map(d5):
    c = d5.sigma_cable(4)
    assert phi_map(c, parse_poly("2*x0*x2 - x1^2", OMV)) == d5.F
    assert phi_map(c, parse_poly("3*x0^2*x3 - 3*x0*x1*x2 + x1^3", OMV)) == -d5.G
    assert phi_map(c, parse_poly("x0", OMV)) == d5.a
    with pytest.raises(CableError):
        phi_map(d5.sigma_cable(1), parse_poly("x3", OMV))


def test_phi_map_extra_binding(d5):
    vs = VarSet(["x0", "t"])
    assert phi_map(d5.sigma_cable(0), parse_poly("t*x0", vs), {"t": d5.h}) == d5.h * d5.a


def test_exp_transport(d5):
    c = s_hat(3)
    assert exp_transport(c, XV.zero()) == c
    moved = exp_transport(c, xx)
    assert list(moved) == [XV.one(), vv + xx, (vv + xx) ** 2 / 2]
    sc = exp_transport(d5.sigma_cable(5), d5.F)
    assert sc.root == d5.a
    assert verify(sc)
    with pytest.raises(CableError):
        exp_transport(c, vv)


def test_json_round_trip(d5):
    c = d5.sigma_cable(3)
    back = CablePrefix.from_json(c.to_json())
    assert back == c
    assert back.kernel_of == d5.D
    assert c.to_json() == back.to_json()


def test_extended(d5):
    c = d5.sigma_cable(2).extended(6)
    assert len(c) == 6 and c[5] == d5.sigma(5)
    with pytest.raises(CableError):
        s_hat(2).extended(3)
    with pytest.raises(CableError):
        s_hat(2).truncate(0)
