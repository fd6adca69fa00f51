import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from entlab import (
    CutoffOverflow,
    InvalidVariant,
    ZeroState,
    as_overlap_state,
    bell_like_limit,
    concurrence_closed_form,
    fidelity,
    fock_coefficients,
    limit_convergence_scan,
    numeric_concurrence,
    parity_transform,
    quartet,
    truncation_cutoff,
)
from entlab.coherent import CoherentPairState, cat_triple
from entlab.fock import LIMIT_TARGET, coherent_vector, parity_on_grid

from conftest import angles, polar

small_labels = st.builds(polar, st.floats(0, 2), angles)


def direct_amplitude(s, m, n):
    """Single grid entry from exact factorials, no recurrence."""
    def branch(c, x, y):
        return c * math.exp(-(abs(x) ** 2 + abs(y) ** 2) / 2) * x ** m * y ** n / math.sqrt(
            math.factorial(m) * math.factorial(n))
    return branch(s.mu, s.alpha, s.beta) + branch(s.nu, s.gamma, s.delta)


# -- cutoff ----------------------------------------------------------------

def test_cutoff_examples():
    assert truncation_cutoff([1, 0.5j]) == 21
    assert truncation_cutoff([0]) == 20
    with pytest.raises(CutoffOverflow):
        truncation_cutoff([31])


def test_cutoff_tail_mass():
    # Poisson(1) tail beyond n = 21
    tail = sum(math.exp(-1) / math.factorial(n) for n in range(22, 80))
    assert tail < 1e-12


@pytest.mark.parametrize("m", [0.5, 1, 2, 5, 10, 20, 30])
def test_cutoff_tail_mass_across_range(m):
    n_cut = truncation_cutoff([m])
    lam = m * m
    tail = sum(math.exp(-lam + k * math.log(lam) - math.lgamma(k + 1)) for k in range(n_cut + 1, n_cut + 400))
    assert tail < 1e-12


# -- amplitudes ------------------------------------------------------------

def test_coherent_vector_against_factorials():
    a = 1.3 - 0.4j
    v = coherent_vector(a, 15)
    expected = [math.exp(-abs(a) ** 2 / 2) * a ** n / math.sqrt(math.factorial(n)) for n in range(16)]
    np.testing.assert_allclose(v, expected, rtol=1e-13)


@given(small_labels, small_labels, small_labels, small_labels)
def test_grid_against_direct_formula(a, b, g, d):
    assume(a != g and b != d)
    s = CoherentPairState(0.3 + 1j, -1.2, a, b, g, d)
    t = fock_coefficients(s, 12)
    for m, n in [(0, 0), (1, 0), (0, 1), (3, 5), (12, 12), (7, 2)]:
        assert t.amps[m, n] == pytest.approx(direct_amplitude(s, m, n), rel=1e-12, abs=1e-300)


def test_quartet_has_no_vacuum_term():
    t = fock_coefficients(quartet(1, 1), 21)
    assert t.amps[0, 0] == 0
    e = math.exp(-1)
    assert t.amps[1, 0] == pytest.approx(e * (1 - 1j), rel=1e-15)
    assert t.amps[0, 1] == pytest.approx(e * (-1 - 1j), rel=1e-15)


def test_quartet_expansion_bracket():
    """Entry (m, n) is e^{-|a|^2} a^{m+n} [(-1)^n - i^{m+n}] / sqrt(m! n!)."""
    a = 0.8
    t = fock_coefficients(quartet(a, 1), 25)
    for m in range(8):
        for n in range(8):
            expected = math.exp(-a * a) * a ** (m + n) * ((-1) ** n - 1j ** (m + n)) / math.sqrt(
                math.factorial(m) * math.factorial(n))
            assert t.amps[m, n] == pytest.approx(expected, abs=1e-15)


def test_vacuum_product():
    s = CoherentPairState(1, 0, 0, 0, 1, 1)
    t = fock_coefficients(s, 5)
    assert t.amps[0, 0] == 1
    assert np.count_nonzero(t.amps) == 1


@given(small_labels, small_labels, small_labels, small_labels)
def test_captured_norm(a, b, g, d):
    assume(abs(a - g) > 0.05 and abs(b - d) > 0.05)
    s = CoherentPairState(1, 0.5j, a, b, g, d)
    t = fock_coefficients(s)
    assert t.cutoff == truncation_cutoff(s.labels)
    assert 1 - 1e-10 <= t.captured_norm <= 1


# -- concurrence -----------------------------------------------------------

@pytest.mark.parametrize("which", [1, 2, 3, 4])
def test_quartet_numeric_concurrence(which):
    assert numeric_concurrence(fock_coefficients(quartet(1, which), 21)) == pytest.approx(1, abs=1e-8)


def test_product_state_numeric_concurrence():
    s = CoherentPairState(1, 0, 0.7, -0.2j, 1, 1)
    assert numeric_concurrence(fock_coefficients(s, 15)) < 1e-12


def test_non_mes_matches_closed_form():
    s = CoherentPairState(1, 1, 1, 1, -1, 1.5)
    c = concurrence_closed_form(as_overlap_state(s))
    assert 0 < c < 0.999
    assert numeric_concurrence(fock_coefficients(s)) == pytest.approx(c, abs=1e-8)


@given(small_labels, small_labels, small_labels, small_labels,
       st.builds(polar, st.floats(0.1, 3), angles))
def test_truncation_oracle_equivalence(a, b, g, d, mu):
    assume(abs(a - g) > 1e-3 and abs(b - d) > 1e-3)
    s = CoherentPairState(mu, 1, a, b, g, d)
    ov = as_overlap_state(s)
    assume(ov.norm_squared() > 1e-3)
    assert abs(numeric_concurrence(fock_coefficients(s, 30)) - concurrence_closed_form(ov)) < 1e-8


@given(small_labels, small_labels, small_labels, small_labels, angles)
def test_ket_phase_folds_into_coefficient(a, b, g, d, phi):
    """e^{i phi}|alpha> as an explicit vector equals mu -> mu e^{i phi}."""
    assume(a != g and b != d)
    n = 20
    explicit = (np.outer(cmath.exp(1j * phi) * coherent_vector(a, n), coherent_vector(b, n))
                + 0.5 * np.outer(coherent_vector(g, n), coherent_vector(d, n)))
    folded = fock_coefficients(CoherentPairState(cmath.exp(1j * phi), 0.5, a, b, g, d), n).amps
    np.testing.assert_allclose(folded, explicit, atol=1e-15)


# -- parity ----------------------------------------------------------------

@given(small_labels, small_labels, small_labels, small_labels)
def test_parity_on_grid_matches_label_flip(a, b, g, d):
    assume(a != g and b != d)
    s = CoherentPairState(1, -0.4 + 0.3j, a, b, g, d)
    t = fock_coefficients(s, 20)
    u = fock_coefficients(parity_transform(s), 20)
    np.testing.assert_allclose(parity_on_grid(t), u.amps, rtol=0, atol=1e-14)


@pytest.mark.parametrize("src, dst", [(1, 3), (2, 4)])
def test_parity_maps_quartet_grids(src, dst):
    a = 0.9 * cmath.exp(0.4j)
    t = parity_on_grid(fock_coefficients(quartet(a, src), 25))
    u = fock_coefficients(quartet(a, dst), 25).amps
    np.testing.assert_allclose(t / np.linalg.norm(t), u / np.linalg.norm(u), atol=1e-12)


# -- Bell-like limits and fidelity -------------------------------------------

def test_bell_like_values():
    b1 = bell_like_limit(1)
    assert b1[0, 1] == pytest.approx(cmath.exp(1j * math.pi / 4) / math.sqrt(2))
    assert b1[1, 0] == pytest.approx(-cmath.exp(-1j * math.pi / 4) / math.sqrt(2))
    np.testing.assert_allclose(bell_like_limit(3), [[0, 1 / math.sqrt(2)], [-1 / math.sqrt(2), 0]])
    with pytest.raises(InvalidVariant):
        bell_like_limit(0)


@pytest.mark.parametrize("which", [1, 2, 3, 4])
def test_bell_like_normalized_and_maximal(which):
    b = bell_like_limit(which)
    assert np.linalg.norm(b) == pytest.approx(1, abs=1e-15)
    assert numeric_concurrence(b) == pytest.approx(1, abs=1e-15)


def test_bell_like_overlaps():
    # the +- partners are orthogonal; across the two pairs the fidelity is 1/2
    expected = np.array([[1, 0, .5, .5], [0, 1, .5, .5], [.5, .5, 1, 0], [.5, .5, 0, 1]])
    got = np.array([[fidelity(bell_like_limit(i), bell_like_limit(j)) for j in range(1, 5)]
                    for i in range(1, 5)])
    np.testing.assert_allclose(got, expected, atol=1e-15)


def test_fidelity_zero_grid():
    with pytest.raises(ZeroState):
        fidelity(np.zeros((2, 2)), bell_like_limit(1))


@given(st.integers(0, 2**32 - 1), angles)
def test_fidelity_symmetric_phase_invariant(seed, phi):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    b = rng.normal(size=(5, 2)) + 1j * rng.normal(size=(5, 2))
    f = fidelity(a, b)
    assert 0 <= f <= 1
    assert fidelity(b, a) == pytest.approx(f, abs=1e-14)
    assert fidelity(cmath.exp(1j * phi) * a, b) == pytest.approx(f, abs=1e-14)


def test_quartet_small_alpha_fidelity():
    t = fock_coefficients(quartet(0.1, 1))
    infid = 1 - fidelity(t.amps, bell_like_limit(1))
    assert 0.005 < infid < 0.02


@pytest.mark.parametrize("which, coefficient", [(1, 1), (2, 3), (3, 1), (4, 3)])
def test_leading_infidelity_coefficient(which, coefficient):
    """Infidelity / |a|^2 from the m + n <= 2 amplitudes.

    Members 2 and 4 also pick up |0>|0> weight from 1 - e^{-2i|a|^2}, which
    raises their coefficient from 2 to 3.
    """
    rows = limit_convergence_scan(which, [0.01])
    assert rows[0].infidelity / 0.01 ** 2 == pytest.approx(coefficient, rel=1e-3)


@pytest.mark.parametrize("which, literal", [(2, 2), (3, 3)])
def test_literal_respective_ordering_misses(which, literal):
    """Paired in listed order, members 2 and 3 sit at fidelity 1/2 from their limit."""
    rows = limit_convergence_scan(which, [0.01], target=literal)
    assert 1 - rows[0].infidelity == pytest.approx(0.5, abs=1e-3)


def test_limit_targets():
    assert LIMIT_TARGET == {1: 1, 2: 3, 3: 2, 4: 4, "cat_antisymmetric": 3, "cat_triple": 4}


def test_limit_scan_decreasing():
    rows = limit_convergence_scan(1, [1, 0.5, 0.1])
    inf = [r.infidelity for r in rows]
    assert inf[0] > inf[1] > inf[2]
    assert all(abs(r.concurrence - 1) < 1e-8 for r in rows)


def test_limit_scan_tiny_alpha():
    assert limit_convergence_scan(1, [0.01])[0].infidelity < 2e-4


def test_cat_triple_limit():
    row = limit_convergence_scan("cat_triple", [0.01])[0]
    assert 1 - row.infidelity > 0.999


def test_cat_antisymmetric_is_singlet_in_limit():
    row = limit_convergence_scan("cat_antisymmetric", [0.01])[0]
    assert row.infidelity < 1e-8
    # exchange-antisymmetric at every alpha, so orthogonal to the symmetric state
    sym = limit_convergence_scan("cat_antisymmetric", [0.01], target=4)[0]
    assert sym.infidelity == pytest.approx(1, abs=1e-12)


def test_scan_bounded_ratio():
    alphas = list(np.geomspace(1, 0.01, 9))
    for which in LIMIT_TARGET:
        rows = limit_convergence_scan(which, alphas)
        assert max(r.infidelity / r.alpha ** 2 for r in rows) < 10


def test_scan_input_validation():
    with pytest.raises(ValueError):
        limit_convergence_scan(1, [0.1, 0.5])
    with pytest.raises(ValueError):
        limit_convergence_scan(1, [0])
    with pytest.raises(InvalidVariant):
        limit_convergence_scan("nope", [0.1])


def test_cat_triple_state_is_mes_in_fock():
    t = fock_coefficients(cat_triple(0.7))
    assert numeric_concurrence(t) == pytest.approx(1, abs=1e-8)
