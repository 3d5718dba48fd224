import itertools
import math

import numpy as np
import pytest

from qombi import (
    DegenerateInputError,
    DimensionError,
    ValidationError,
    evaluate_cost,
    gen_ris_instance,
    gen_star_maxcut,
    maxcut_to_ising,
    ris_snr,
    ris_to_ising,
)
from qombi.classical import exhaustive, ground_states
from qombi.ising import cost_table
from qombi.problems import Graph, RisInstance
from qombi.validation import basis_spins


def test_star_matches_toy_instance():
    g = gen_star_maxcut(4)
    assert g.node_count == 5
    assert g.edges == ((0, 4), (1, 4), (2, 4), (3, 4))


def test_star_single_edge():
    assert gen_star_maxcut(1).edges == ((0, 1),)


def test_star_degrees():
    assert sorted(gen_star_maxcut(7).degrees()) == [1, 1, 1, 1, 1, 1, 1, 7]


def test_star_needs_a_leaf():
    with pytest.raises(DegenerateInputError):
        gen_star_maxcut(0)


@pytest.mark.parametrize("edges", [((0, 0),), ((0, 1), (1, 0)), ((0, 3),)])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(ValidationError):
        Graph(3, edges)


def test_star_ising_minimum():
    m = maxcut_to_ising(gen_star_maxcut(4))
    assert not np.any(m.h)
    gs = ground_states(m)
    assert [r.energy for r in gs] == [-4.0, -4.0]


def test_single_edge_ground_states():
    m = maxcut_to_ising(gen_star_maxcut(1))
    assert {r.bitstring for r in ground_states(m)} == {"01", "10"}
    assert ground_states(m)[0].energy == -1


def test_triangle_frustration():
    g = Graph(3, ((0, 1), (1, 2), (0, 2)))
    m = maxcut_to_ising(g)
    best = min(itertools.product((1, -1), repeat=3), key=lambda s: evaluate_cost(m, s))
    assert evaluate_cost(m, best) == -1
    assert g.cut_size(best) == 2


@pytest.mark.parametrize("graph", [gen_star_maxcut(5), Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2)))])
def test_cut_identity(graph):
    m = maxcut_to_ising(graph)
    for s in itertools.product((1, -1), repeat=graph.node_count):
        assert graph.cut_size(s) == (len(graph.edges) - evaluate_cost(m, s)) / 2


def test_ris_setup_dimensions():
    inst = gen_ris_instance(10, 1.0, 1.0, seed=0)
    assert inst.n == 10 and inst.h_chan.shape == (10,) and inst.g_chan.shape == (10,)
    assert inst.power == 1.0 and inst.noise_var == 1.0


def test_ris_determinism():
    a, b = gen_ris_instance(10, seed=42), gen_ris_instance(10, seed=42)
    assert a.h_chan.tobytes() == b.h_chan.tobytes()
    assert a.g_chan.tobytes() == b.g_chan.tobytes()
    assert gen_ris_instance(10, seed=43).h_chan.tobytes() != a.h_chan.tobytes()


def test_ris_generator_is_documented_box_muller():
    inst = gen_ris_instance(3, seed=9)
    rng = np.random.Generator(np.random.PCG64(9))
    expected = []
    for _ in range(6):
        u1, u2 = rng.random(2)
        r = math.sqrt(-2 * math.log(1 - u1))
        expected.append(complex(r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2)) / math.sqrt(2))
    np.testing.assert_allclose(inst.h_chan, expected[:3], rtol=1e-14)
    np.testing.assert_allclose(inst.g_chan, expected[3:], rtol=1e-14)


def test_ris_unit_variance():
    inst = gen_ris_instance(100_000, seed=1)
    assert np.mean(np.abs(inst.h_chan) ** 2) == pytest.approx(1.0, abs=0.02)
    assert np.mean(np.abs(inst.g_chan) ** 2) == pytest.approx(1.0, abs=0.02)
    assert abs(np.mean(inst.h_chan)) < 0.02


@pytest.mark.parametrize("bad", [dict(n=0), dict(n=3, power=0.0), dict(n=3, noise_var=-1.0)])
def test_ris_invalid(bad):
    with pytest.raises(ValidationError):
        gen_ris_instance(**bad)


def _instance(a):
    a = np.asarray(a, dtype=complex)
    return RisInstance(a.size, a, np.ones(a.size))


def test_snr_global_phase():
    inst = _instance([0.3 + 0.7j])
    assert ris_snr(inst, [1]) == ris_snr(inst, [-1])


def test_snr_examples():
    assert ris_snr(_instance([1, 1]), [1, 1]) == 4
    assert ris_snr(_instance([1, -1]), [1, -1]) == 4


def test_snr_dimension_mismatch():
    with pytest.raises(DimensionError):
        ris_snr(_instance([1, 1]), [1])


def test_ris_single_element_model():
    inst = _instance([0.6 + 0.8j])
    m = ris_to_ising(inst)
    assert not m.J and m.offset == pytest.approx(-1.0)
    assert len(ground_states(m)) == 2


def _snr_brute(inst):
    """Oracle: SNR of every config straight from the channel sum."""
    a = inst.h_chan * inst.g_chan
    s = basis_spins(inst.n)
    return inst.power * np.abs(s @ a) ** 2 / inst.noise_var


@pytest.mark.parametrize("seed", range(10))
def test_ris_cost_is_negative_snr(seed):
    n = 2 + seed % 9
    inst = gen_ris_instance(n, power=1.0 + seed, noise_var=0.5 + seed / 10, seed=seed)
    snr = _snr_brute(inst)
    cost = cost_table(ris_to_ising(inst))
    np.testing.assert_allclose(cost, -snr, rtol=1e-12, atol=1e-12 * snr.max())


def test_ris_argmin_equals_argmax():
    inst = gen_ris_instance(10, seed=123)
    m = ris_to_ising(inst)
    best = exhaustive(m, limit=1)[0]
    assert ris_snr(inst, best.config) == pytest.approx(_snr_brute(inst).max(), rel=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_ris_ground_states_come_in_pairs(seed):
    m = ris_to_ising(gen_ris_instance(2 + seed, seed=seed))
    gs = ground_states(m)
    assert len(gs) % 2 == 0
    bits = {r.bitstring for r in gs}
    assert all("".join("1" if c == "0" else "0" for c in b) in bits for b in bits)


def test_instance_round_trip():
    inst = gen_ris_instance(4, 2.0, 0.5, seed=3)
    back = RisInstance.from_dict(inst.to_dict())
    np.testing.assert_array_equal(back.h_chan, inst.h_chan)
    assert (back.power, back.noise_var, back.seed) == (2.0, 0.5, 3)
