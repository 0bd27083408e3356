import numpy as np
import pytest

from sixvertex.errors import DegreeZero, SingularSystem
from sixvertex.numkit import (
    CPoly,
    eig_general,
    fit_poly,
    from_roots,
    kron,
    kron_chain,
    poly_roots,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_builds_site_operator():
    op = kron(SX, np.eye(2))
    op = kron(op, np.eye(2))
    assert op.shape == (8, 8)
    vec = np.zeros(8)
    vec[0] = 1.0
    # flipping site 1 of |000> gives |100>
    assert np.argmax(np.abs(op @ vec)) == 4


def test_kron_mixed_product():
    rng = np.random.default_rng(0)
    a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                  for _ in range(4))
    lhs = kron(a, b) @ kron(c, d)
    rhs = kron(a @ c, b @ d)
    assert np.linalg.norm(lhs - rhs) < 1e-12


def test_kron_associativity():
    rng = np.random.default_rng(1)
    mats = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            for _ in range(3)]
    lhs = kron(kron(mats[0], mats[1]), mats[2])
    rhs = kron(mats[0], kron(mats[1], mats[2]))
    assert np.linalg.norm(lhs - rhs) < 1e-12
    assert np.array_equal(kron_chain(*mats), lhs)


def test_eig_diagonal():
    trips = eig_general(np.diag([1.0, 2.0j]))
    assert sorted((t.value.real, t.value.imag) for t in trips) == [(0, 2), (1, 0)]


def test_eig_sigma_x():
    vals = sorted(t.value.real for t in eig_general(SX))
    assert vals == pytest.approx([-1.0, 1.0])


def test_eig_reconstruction_and_residuals():
    rng = np.random.default_rng(2)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    trips = eig_general(m)
    scale = np.linalg.norm(m, 2)
    recon = np.zeros_like(m)
    for t in trips:
        assert np.linalg.norm(m @ t.right - t.value * t.right) < 1e-10 * scale
        assert np.linalg.norm(t.left @ m - t.value * t.left) < 1e-10 * scale
        recon += t.value * np.outer(t.right, t.left) / (t.left @ t.right)
    assert np.linalg.norm(recon - m) / np.linalg.norm(m) < 1e-9


def test_eig_trace_sum():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(12, 12)) + 1j * rng.normal(size=(12, 12))
    total = sum(t.value for t in eig_general(m))
    assert abs(total - np.trace(m)) / abs(np.trace(m)) < 1e-9


def test_eig_degenerate_block_pairing():
    # eigenvalue 1 twice, in a non-normal matrix
    m = np.array([[1, 0, 1], [0, 1, 2], [0, 0, 3]], dtype=complex)
    trips = eig_general(m)
    for t in trips:
        assert abs(t.left @ t.right) > 1e-8


def test_fit_poly_square():
    poly = fit_poly([(0, 0), (1, 1), (2, 4)], 2)
    assert np.allclose(poly.coeffs, [0, 0, 1], atol=1e-12)


def test_fit_poly_constant():
    poly = fit_poly([(0.3 + 0.1j, 5.0)], 0)
    assert poly.degree == 0
    assert poly(17.0) == pytest.approx(5.0)


def test_fit_poly_round_trip():
    rng = np.random.default_rng(4)
    coeffs = rng.normal(size=6) + 1j * rng.normal(size=6)
    ref = CPoly(tuple(coeffs))
    xs = np.exp(2j * np.pi * np.arange(6) / 6) * 1.1
    fitted = fit_poly([(x, ref(x)) for x in xs], 5)
    probe = 0.37 - 0.82j
    assert abs(fitted(probe) - ref(probe)) / abs(ref(probe)) < 1e-9


def test_fit_poly_singular():
    with pytest.raises(SingularSystem):
        fit_poly([(1.0, 1.0), (1.0 + 1e-14, 2.0)], 1)


def test_poly_roots_quadratic():
    roots = poly_roots(CPoly((-1.0, 0.0, 1.0)))
    assert np.allclose(sorted(r.real for r in roots), [-1, 1], atol=1e-12)


def test_poly_roots_linear():
    c = 0.3 - 2.2j
    roots = poly_roots(CPoly((-c, 1.0)))
    assert abs(roots[0] - c) < 1e-12


def test_poly_roots_from_known_roots():
    rng = np.random.default_rng(5)
    true = sorted(
        (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(5)),
        key=lambda z: (z.real, z.imag),
    )
    poly = from_roots(true, leading=1.7 - 0.4j)
    got = poly_roots(poly)
    assert max(abs(a - b) for a, b in zip(true, got)) < 1e-8


def test_poly_roots_degree_zero():
    with pytest.raises(DegreeZero):
        poly_roots(CPoly((3.0,)))


@pytest.mark.parametrize("degree", [2, 4, 6, 8])
def test_roots_round_trip_degrees(degree):
    rng = np.random.default_rng(degree)
    true = sorted(
        (complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(degree)),
        key=lambda z: (z.real, z.imag),
    )
    got = poly_roots(from_roots(true))
    assert max(abs(a - b) for a, b in zip(true, got)) < 1e-8


def test_fit_poly_validates_extra_samples():
    ref = CPoly((1.0, 2.0, 3.0))
    xs = [0.5, 1.5, -0.7, 2.0]
    samples = [(x, ref(x)) for x in xs]
    fitted = fit_poly(samples, 2)
    assert abs(fitted(2.0) - ref(2.0)) < 1e-10
    samples[-1] = (2.0, ref(2.0) + 1.0)
    with pytest.raises(ValueError):
        fit_poly(samples, 2)


def test_eig_dimension_cap_configurable():
    m = np.eye(4, dtype=complex)
    with pytest.raises(ValueError):
        eig_general(m, dim_cap=2)
