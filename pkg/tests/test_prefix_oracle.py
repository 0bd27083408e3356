import numpy as np
import pytest

from sixvertex.functional_system import (
    even_floor,
    gamma_coeff,
    m_coeff,
    n_coeff,
    omega_coeff,
    v_coeff,
)
from sixvertex.prefix_oracle import (
    Interp,
    oracle_gamma,
    oracle_m,
    oracle_n,
    oracle_omega,
    oracle_v,
    read,
)
from sixvertex.vertex_core import ModelParams, generic_points, sample_mu


def test_interpreter_arithmetic():
    it = Interp((1 + 0j,), (0j,), 0.5)
    assert it.run(read("(+ 1 2 3)")) == 6
    assert it.run(read("(* 2 (- 5 1))")) == 8
    assert it.run(read("(/ 1 4)")) == 0.25
    assert it.run(read("(- 3)")) == -3


def test_interpreter_weight_functions():
    g = 0.3 + 0.1j
    it = Interp((0.7 - 0.2j,), (0j,), g)
    assert abs(it.run(read("(a (v 0))")) - np.sinh(0.7 - 0.2j + g)) < 1e-15
    assert abs(it.run(read("(b (v 0))")) - np.sinh(0.7 - 0.2j)) < 1e-15
    assert abs(it.run(read("(c)")) - np.sinh(g)) < 1e-15


def test_interpreter_sets_and_loops():
    it = Interp((0j,) * 4, (0j,), 0.5)
    assert it.run(read("(prod t (range 1 4) t)")) == 24
    assert it.run(read("(sum t (omit (range 0 3) 1) t)")) == 0 + 2 + 3
    assert it.run(read("(sum-subsets J (range 1 3) 2 (elem J 2))")) == 2 + 3 + 3
    assert it.run(read("(sum-perms K (range 1 3) (elem K 1))")) == 12
    assert it.run(read("(prod-pairs r s (range 1 3) (- s r))")) == 1 * 2 * 1
    assert it.run(read("(with ((x 2) (y 3)) (* x y))")) == 6


def _random_instance(rng):
    L = int(rng.integers(1, 5))
    gamma = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    params = ModelParams(L, gamma, sample_mu(L, gamma, rng))
    return params


@pytest.mark.parametrize("which", ["gamma", "omega", "m", "n", "v"])
def test_oracle_agreement_100_instances(which):
    rng = np.random.default_rng(hash(which) % 2**32)
    done = 0
    while done < 100:
        p = _random_instance(rng)
        n = int(rng.integers(1 if which in ("gamma", "m") else 2, 5))
        v = generic_points(n + 1, rng)
        if which == "gamma":
            i = int(rng.integers(1, n + 1))
            j, k = ((0, i), (i, 0))[int(rng.integers(0, 2))]
            ref = gamma_coeff(i, j, k, v, p)
            alt = oracle_gamma(i, j, k, v, p)
        elif which == "omega":
            i = int(rng.integers(1, n))
            j = int(rng.integers(i + 1, n + 1))
            ref = omega_coeff(i, j, v, p)
            alt = oracle_omega(i, j, v, p)
        elif which == "m":
            i = int(rng.integers(1, n + 1))
            ref = m_coeff(i, v, p)
            alt = oracle_m(i, v, p)
        elif which == "n":
            i = int(rng.integers(1, n))
            j = int(rng.integers(i + 1, n + 1))
            ref = n_coeff(j, i, v, p)
            alt = oracle_n(j, i, v, p)
        else:
            nv = int(rng.integers(2, 6))
            vv = generic_points(nv, rng)
            mm = int(rng.integers(1, even_floor(nv) // 2 + 1))
            idx = tuple(sorted(rng.choice(nv, size=2 * mm,
                                          replace=False).tolist()))
            ref = v_coeff(mm, idx, vv, p)
            alt = oracle_v(mm, idx, vv, p)
        assert abs(ref - alt) <= 1e-12 * max(abs(ref), 1e-30)
        done += 1


def test_oracle_v_trivial_order():
    p = _random_instance(np.random.default_rng(0))
    assert oracle_v(0, (), (0.1, 0.2), p) == 1.0
