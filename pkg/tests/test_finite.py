import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbit_berezin.finite import (
    IllConditionedVectorError,
    PreconditionError,
    berezin_matrix,
    character_inner_product,
    convolve,
    fourier_coefficient,
    gelfand_check,
    inverse_fourier,
    irreps_of,
    left_cosets,
    make_group,
    normalized,
    orbit_povm,
    phase_stabilizer,
    predicted_spectrum_gelfand,
    predicted_spectrum_general,
    rank_one_check,
    verification_report,
)
from orbit_berezin.numerics import symmetric_eigenvalues

CATALOG = ["cyclic(1)", "cyclic(5)", "cyclic(12)", "dihedral(3)", "dihedral(4)", "dihedral(5)",
           "dihedral(6)", "symmetric3", "quaternion8", "frobenius21"]


# -- groups -----------------------------------------------------------------

@pytest.mark.parametrize("spec, order, center", [
    ("cyclic(5)", 5, 5),
    ("dihedral(3)", 6, 1),
    ("dihedral(4)", 8, 2),
    ("dihedral(6)", 12, 2),
    ("symmetric3", 6, 1),
    ("quaternion8", 8, 2),
    ("frobenius21", 21, 1),
])
def test_group_orders_and_centers(spec, order, center):
    G = make_group(spec)
    assert G.order == order
    assert len(G.center()) == center


def test_group_spec_forms():
    assert make_group("dihedral", 4).order == 8
    assert make_group(" Dihedral( 4 ) ").order == 8
    for bad in ["dihedral(2)", "cyclic(0)", "cyclic", "symmetric3(3)", "alternating(4)", "dihedral(4"]:
        with pytest.raises(ValueError):
            make_group(bad)
    with pytest.raises(ValueError):
        make_group("cyclic(4)", 5)


def test_abelian_flags():
    assert make_group("cyclic(7)").is_abelian()
    assert not make_group("quaternion8").is_abelian()


@pytest.mark.parametrize("spec", CATALOG)
def test_character_orthogonality(spec):
    G = make_group(spec)
    irreps = irreps_of(G)
    chars = np.array([r.character for r in irreps])
    gram = chars.conj() @ chars.T / G.order
    assert np.allclose(gram, np.eye(len(irreps)), atol=1e-12)
    assert sum(r.dimension ** 2 for r in irreps) == G.order


# -- Fourier analysis -------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(spec=st.sampled_from(["symmetric3", "quaternion8", "frobenius21", "dihedral(5)"]),
       seed=st.integers(0, 2 ** 32 - 1))
def test_fourier_inversion(spec, seed):
    G = make_group(spec)
    irreps = irreps_of(G)
    u = np.random.default_rng(seed).normal(size=G.order)
    back = inverse_fourier([fourier_coefficient(u, r) for r in irreps], irreps)
    assert np.allclose(back, u, atol=1e-12)


@pytest.mark.parametrize("spec", ["cyclic(5)", "symmetric3", "frobenius21"])
def test_convolution_theorem_order(spec):
    # with these conventions the transform of F * u is u_hat F_hat
    G = make_group(spec)
    rng = np.random.default_rng(7)
    F = rng.normal(size=G.order)
    u = rng.normal(size=G.order)
    for rho in irreps_of(G):
        lhs = fourier_coefficient(convolve(G, F, u), rho)
        rhs = fourier_coefficient(u, rho) @ fourier_coefficient(F, rho)
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_convolution_order_matters_for_nonabelian():
    G = make_group("symmetric3")
    rng = np.random.default_rng(7)
    F, u = rng.normal(size=6), rng.normal(size=6)
    rho = irreps_of(G)[2]
    lhs = fourier_coefficient(convolve(G, F, u), rho)
    wrong = fourier_coefficient(F, rho) @ fourier_coefficient(u, rho)
    assert not np.allclose(lhs, wrong, atol=1e-6)


def test_convolution_identity():
    G = make_group("dihedral(4)")
    delta = np.zeros(G.order)
    delta[G.identity] = G.order
    f = np.arange(G.order, dtype=float)
    assert np.allclose(convolve(G, delta, f), f)
    assert np.allclose(convolve(G, f, delta), f)


# -- stabilizers and POVMs --------------------------------------------------

def test_dihedral4_stabilizer():
    G = make_group("dihedral(4)")
    rho = irreps_of(G)[-1]
    K = phase_stabilizer(rho, [1.0, 0.0])
    # {e, r^2, s, r^2 s}
    assert K == [0, 2, 4, 6]
    assert [G.labels[k] for k in K] == [(0, 0), (2, 0), (0, 1), (2, 1)]


def test_one_dimensional_irrep_stabilizes_everything():
    G = make_group("cyclic(6)")
    povm = orbit_povm(irreps_of(G)[1], [1.0])
    assert povm.stabilizer == list(range(6))
    assert povm.omega_size == 1
    assert berezin_matrix(povm).tolist() == [[1.0]]


def test_ambiguous_vector_is_rejected():
    rho = irreps_of(make_group("dihedral(4)"))[-1]
    with pytest.raises(IllConditionedVectorError):
        phase_stabilizer(rho, normalized([1.0, 1e-8]))


def test_vector_validation():
    rho = irreps_of(make_group("symmetric3"))[2]
    with pytest.raises(ValueError):
        orbit_povm(rho, [1.0, 1.0])
    with pytest.raises(ValueError):
        orbit_povm(rho, [1.0, 0.0, 0.0])


def test_left_cosets_partition():
    G = make_group("frobenius21")
    K = [0, 7, 14]  # the subgroup generated by b
    cosets = left_cosets(G, K)
    assert len(cosets) == 7
    assert sorted(x for c in cosets for x in c) == list(range(21))


def _cases():
    generic = [1.0, 0.5, 1.0 / 3.0]
    for spec in CATALOG:
        G = make_group(spec)
        irreps = irreps_of(G)
        for idx, rho in enumerate(irreps):
            d = rho.dimension
            yield pytest.param(spec, idx, np.eye(d)[0], id=f"{spec}-{idx}-e1")
            if d > 1:
                yield pytest.param(spec, idx, normalized(generic[:d]), id=f"{spec}-{idx}-generic")


@pytest.mark.parametrize("spec, idx, v", list(_cases()))
def test_berezin_matrix_against_state_overlaps(spec, idx, v):
    G = make_group(spec)
    rho = irreps_of(G)[idx]
    povm = orbit_povm(rho, v)
    n = rho.dimension
    weight = len(povm.stabilizer) / G.order
    states = np.array([rho(g) @ povm.vector for g in povm.coset_reps])
    # the POVM resolves the identity
    frame = n * weight * np.einsum("ai,aj->ij", states, states.conj())
    assert np.allclose(frame, np.eye(n), atol=1e-12)
    expected = n * weight * np.abs(states.conj() @ states.T) ** 2
    M = berezin_matrix(povm)
    assert np.allclose(M, expected, atol=1e-12)
    assert np.allclose(M.sum(axis=1), 1.0, atol=1e-12)


@pytest.mark.parametrize("spec, idx, v", list(_cases()))
def test_spectrum_matches_general_prediction(spec, idx, v):
    G = make_group(spec)
    rep = verification_report(G, idx, v)
    assert rep["max_deviation"] <= 1e-9
    if rep["gelfand"]:
        assert rep["rank_one"]


def test_gelfand_examples():
    G = make_group("symmetric3")
    assert not gelfand_check(G, [0])
    assert gelfand_check(G, list(range(6)))
    assert gelfand_check(make_group("cyclic(9)"), [0])
    with pytest.raises(ValueError):
        gelfand_check(G, [0, 3])  # 3-cycle without its square


def test_dihedral4_spectrum():
    G = make_group("dihedral(4)")
    irreps = irreps_of(G)
    povm = orbit_povm(irreps[-1], [1.0, 0.0])
    M = berezin_matrix(povm)
    assert np.allclose(M, np.eye(2), atol=1e-12)
    pred = predicted_spectrum_gelfand(povm.u_values, irreps, povm.stabilizer)
    assert np.allclose(pred, [1.0, 1.0], atol=1e-12)
    assert all(rank_one_check(povm.u_values, r) for r in irreps)


def test_non_gelfand_prediction_rejected():
    G = make_group("frobenius21")
    irreps = irreps_of(G)
    povm = orbit_povm(irreps[3], normalized([1.0, 0.5, 1 / 3]))
    assert povm.stabilizer == [0]
    with pytest.raises(PreconditionError):
        predicted_spectrum_gelfand(povm.u_values, irreps, povm.stabilizer)
    computed = symmetric_eigenvalues(berezin_matrix(povm))
    general = predicted_spectrum_general(povm.u_values, irreps, povm.stabilizer)
    assert np.allclose(computed, general.real, atol=1e-9)
    assert np.max(np.abs(general.imag)) <= 1e-9


def test_character_inner_product_of_trivial_irrep():
    # <u, 1> is the mean of u, which is 1 for every orbit POVM
    G = make_group("quaternion8")
    irreps = irreps_of(G)
    povm = orbit_povm(irreps[-1], normalized([1.0, 0.5]))
    assert abs(character_inner_product(povm.u_values, irreps[0]) - 1.0) <= 1e-12


def test_catalog_examples():
    assert make_group("cyclic(1)").order == 1
    assert not make_group("dihedral(3)").is_abelian()
    assert [r.dimension for r in irreps_of(make_group("cyclic(4)"))] == [1, 1, 1, 1]
    assert sorted(r.dimension for r in irreps_of(make_group("dihedral(4)"))) == [1, 1, 1, 1, 2]
    assert sorted(r.dimension for r in irreps_of(make_group("frobenius21"))) == [1, 1, 1, 3, 3]


def test_trivial_irrep_cases():
    G = make_group("symmetric3")
    trivial = irreps_of(G)[0]
    assert phase_stabilizer(trivial, [1.0]) == list(range(6))
    povm = orbit_povm(trivial, [1.0])
    assert np.allclose(povm.u_values, 1.0)
    assert berezin_matrix(povm).tolist() == [[1.0]]


def test_symmetric3_generic_stabilizer_is_trivial():
    rho = irreps_of(make_group("symmetric3"))[2]
    assert phase_stabilizer(rho, normalized([1.0, 0.5])) == [0]


def test_cyclic4_u_is_constant():
    rho = irreps_of(make_group("cyclic(4)"))[1]
    povm = orbit_povm(rho, [1.0])
    assert np.allclose(povm.u_values, 1.0)


def test_fourier_of_constants():
    G = make_group("dihedral(5)")
    irreps = irreps_of(G)
    ones = np.ones(G.order)
    assert np.allclose(fourier_coefficient(ones, irreps[0]), [[1.0]])
    for rho in irreps[1:]:
        assert np.allclose(fourier_coefficient(ones, rho), 0.0, atol=1e-14)
        assert rank_one_check(ones, rho)
    u = np.arange(G.order, dtype=float)
    assert fourier_coefficient(u, irreps[0])[0, 0] == pytest.approx(u.mean())


def test_dihedral4_gelfand_pair():
    G = make_group("dihedral(4)")
    assert gelfand_check(G, [0, 2, 4, 6])
    assert gelfand_check(make_group("cyclic(6)"), [0, 3])
