import pytest

from quiverext.ext1 import (
    ArrowCochain,
    RelationCochain,
    b_space,
    coboundary,
    ext1,
    z_space,
)
from quiverext.ext2 import (
    HypothesisError,
    b_prime,
    compose_cocycles,
    exhibit_phi_kernel_boundary,
    ext2_small_model,
    ext2_via_omega,
    gldim_le2_check,
    is_projective,
    phi,
    proj_presentation,
    syzygy,
    top_dims,
    yoneda_left,
    yoneda_left_omega,
)
from quiverext.fields import QQ
from quiverext.iso import iso_test
from quiverext.linalg import kernel_basis, linear_map_matrix
from quiverext.quiver import validate_bound_quiver
from quiverext.rep import simple


def combine(field, basis, coeffs):
    vec = [field.zero] * basis.ambient_dim
    for c, bvec in zip(coeffs, basis.vectors):
        vec = [field.add(x, field.mul(c, y)) for x, y in zip(vec, bvec)]
    return vec


@pytest.mark.parametrize("name, p_dims, omega_name", [
    ("P2", {"1": 2, "2": 1, "3": 0}, "S1"),
    ("P3", {"1": 1, "2": 2, "3": 1}, "P2"),
    ("S3", {"1": 0, "2": 1, "3": 1}, "S2"),
])
def test_presentation_shapes(f2, name, p_dims, omega_name):
    pres = proj_presentation(f2.modules[name])
    assert pres.P.dim_vector() == p_dims
    assert iso_test(pres.omega, f2.modules[omega_name]).verdict == "yes"
    assert pres.incl.is_morphism() and pres.proj.is_morphism()


def test_presentation_of_the_square_corner(f3):
    pres = proj_presentation(f3.modules["S4"])
    assert iso_test(pres.P, f3.modules["P4"]).verdict == "yes"
    assert iso_test(pres.omega, f3.modules["R4"]).verdict == "yes"


def test_second_extension_spot_values(f2, f3):
    m = f2.modules
    assert ext2_via_omega(m["S3"], m["S1"]).dim == 1
    assert ext2_via_omega(m["S3"], m["S2"]).dim == 0
    assert ext2_via_omega(m["P3"], m["S1"]).dim == 0
    assert ext2_via_omega(f3.modules["S4"], f3.modules["S1"]).dim == 1


def test_the_two_models_agree(f2, f3):
    pairs = [("S3", "S1"), ("S3", "S2"), ("P3", "S1"), ("M", "M"), ("N", "N")]
    for n_name, m_name in pairs:
        N, M = f2.modules[n_name], f2.modules[m_name]
        assert ext2_small_model(N, M).dim == ext2_via_omega(N, M).dim
    N, M = f3.modules["S4"], f3.modules["S1"]
    assert ext2_small_model(N, M).dim == ext2_via_omega(N, M).dim == 1


def test_relation_cochain_spaces(f2):
    m = f2.modules
    assert RelationCochain.space_dim(m["S3"], m["S1"]) == 1
    assert b_prime(m["S3"], m["S1"]).dim == 0
    # for (P3, S1) the boundaries fill the whole ambient space
    full = RelationCochain.space_dim(m["P3"], m["S1"])
    assert b_prime(m["P3"], m["S1"]).dim == full == 1


def test_transport_sends_the_generator_to_a_generator(f2):
    N, M = f2.modules["S3"], f2.modules["S1"]
    pres = proj_presentation(N)
    space = ext1(pres.omega, M)
    assert space.dim == 1
    Z = space.basis_cocycles()[0]
    assert not space.class_of(Z).is_zero
    model = ext2_small_model(N, M)
    assert not model.class_of(phi(N, M, Z, pres)).is_zero


def test_transport_kernel_vectors_are_exhibited_boundaries(f3):
    """Each cocycle killed by the transport is certified as a coboundary.

    The exhibiting cochain is rebuilt into an arrow cochain and compared
    entry for entry, so the certificate is checked, not trusted.
    """
    N, M = f3.modules["S4"], f3.modules["S1"]
    pres = proj_presentation(N)
    zs = z_space(pres.omega, M)
    field = M.field

    def apply(coeffs):
        Z = ArrowCochain.from_vector(pres.omega, M, combine(field, zs, coeffs))
        return phi(N, M, Z, pres).to_vector()

    codom = RelationCochain.space_dim(N, M)
    system = linear_map_matrix(field, zs.dim, codom, apply)
    kernel = kernel_basis(system)
    assert kernel.dim == 1
    for coeffs in kernel.vectors:
        Z = ArrowCochain.from_vector(pres.omega, M, combine(field, zs, coeffs))
        h = exhibit_phi_kernel_boundary(N, M, Z, pres)
        assert coboundary(h).to_vector() == Z.to_vector()


def test_yoneda_product_of_the_simple_chain(f2):
    m = f2.modules
    Zxi = ext1(m["S2"], m["S1"]).basis_cocycles()[0]
    eta_space = ext1(m["S3"], m["S2"])
    cls = eta_space.class_of(eta_space.basis_cocycles()[0])
    model = ext2_small_model(m["S3"], m["S1"])
    product = yoneda_left(Zxi, cls, model)
    assert not product.is_zero
    assert not yoneda_left_omega(Zxi, cls).is_zero
    assert model.zero_class().add(product) == product


def test_yoneda_product_ignores_boundary_shifts(f3):
    m = f3.modules
    space = ext1(m["R4"], m["S1"])
    assert space.dim == 1
    Zxi = next(Z for Z in space.basis_cocycles()
               if not space.class_of(Z).is_zero)
    boundary = ArrowCochain.from_vector(
        m["R4"], m["S1"], b_space(m["R4"], m["S1"]).vectors[0])
    xi3 = ext1(m["S4"], m["R4"])
    rep = xi3.class_of(xi3.basis_cocycles()[0]).representative()
    model = ext2_small_model(m["S4"], m["S1"])
    plain = model.class_of(compose_cocycles(Zxi, rep))
    shifted = model.class_of(compose_cocycles(Zxi.add(boundary), rep))
    assert not plain.is_zero
    assert plain == shifted
    assert model.class_of(compose_cocycles(boundary, rep)).is_zero


def test_projectivity_detector(f2):
    m = f2.modules
    for name in ("S1", "P2", "P3", "M"):
        assert is_projective(m[name])
    for name in ("S2", "S3", "N", "V"):
        assert not is_projective(m[name])


def test_top_dimensions(f2):
    assert top_dims(f2.modules["M"]) == {"1": 0, "2": 1, "3": 1}
    assert top_dims(f2.modules["P2"]) == {"1": 0, "2": 1, "3": 0}


def test_syzygies_of_the_deep_simple(f2):
    m = f2.modules
    first, incl = syzygy(m["S3"])
    assert incl.is_morphism()
    assert iso_test(first, m["S2"]).verdict == "yes"
    second, _ = syzygy(first)
    assert iso_test(second, m["S1"]).verdict == "yes"
    assert is_projective(second)


def test_syzygies_over_the_commutative_square(f3):
    m = f3.modules
    first, _ = syzygy(m["S4"])
    assert iso_test(first, m["R4"]).verdict == "yes"
    second, _ = syzygy(first)
    assert iso_test(second, m["S1"]).verdict == "yes"
    assert is_projective(second)


def test_global_dimension_gate(f2, f3):
    assert gldim_le2_check(f2.bound_quiver, QQ)
    assert gldim_le2_check(f3.bound_quiver, QQ)


def test_small_model_refuses_a_deep_algebra():
    bq = validate_bound_quiver(
        "deep", ["1", "2", "3", "4"],
        [("a", "2", "1"), ("b", "3", "2"), ("c", "4", "3")],
        [("r", [(1, ["a", "b"])]), ("s", [(1, ["b", "c"])])])
    assert not gldim_le2_check(bq, QQ)
    N, M = simple(bq, QQ, "4"), simple(bq, QQ, "1")
    with pytest.raises(HypothesisError, match="dimension"):
        ext2_small_model(N, M)
    # the syzygy route stays available regardless
    assert ext2_via_omega(N, M).dim >= 0


def test_small_model_refuses_an_oriented_cycle():
    bq = validate_bound_quiver(
        "cycle", ["1", "2"],
        [("a", "1", "2"), ("b", "2", "1")],
        [("r", [(1, ["a", "b"])]), ("s", [(1, ["b", "a"])])])
    with pytest.raises(HypothesisError, match="cycle"):
        ext2_small_model(simple(bq, QQ, "1"), simple(bq, QQ, "2"))
