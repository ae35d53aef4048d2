import numpy as np
import pytest

from dyadic_means.instances import generate_instance, random_length

# seed 0, index 0, frozen at first generation
GOLDEN_SCALAR = (454.5956935736111, 0.07907203470091317, 0.7223425886498254)
GOLDEN_MATRIX = {
    "A": [[1.1969211087647618, -1.3829444164261693], [-1.3829444164261693, 3.2047919440100046]],
    "B": [[24.498339638582664, 6.499401422332389], [6.499401422332389, 1.7488057903189693]],
    "X": [[-0.7154629986103774, -0.75365736470695], [1.3136695404977983, -0.06850941016974993]],
    "nu": 0.6683727641332018,
}
GOLDEN_VECTOR = {
    "values": [8.858751057657589, -3.6732569522900382, 4.4468517729965065],
    "weights": [0.17832251097962235, 0.7013789459107894, 1.97731652170507],
    "pqr": (0.562541612977224, 1.7584358738812746, 6.236479133353804),
}


def test_golden_scalar():
    inst = generate_instance("scalar", 1, 0, 0)
    assert (inst.data["pair"].x, inst.data["pair"].y, inst.nu) == GOLDEN_SCALAR


def test_golden_matrix():
    inst = generate_instance("matrix", 2, 0, 0)
    for key in ("A", "B", "X"):
        # QR goes through LAPACK, so allow last-bit differences across builds
        assert np.allclose(inst.data[key], GOLDEN_MATRIX[key], rtol=1e-12, atol=0)
    assert inst.nu == GOLDEN_MATRIX["nu"]


def test_golden_vector():
    inst = generate_instance("vector", 3, 0, 0)
    v, tr = inst.data["vector"], inst.data["triple"]
    assert v.values.tolist() == GOLDEN_VECTOR["values"]
    assert v.weights.tolist() == GOLDEN_VECTOR["weights"]
    assert (tr.p, tr.q, tr.r) == GOLDEN_VECTOR["pqr"]


@pytest.mark.parametrize("kind", ["scalar", "matrix", "vector"])
def test_same_seed_and_index_is_identical(kind):
    a, b = (generate_instance(kind, 4, 99, 7) for _ in range(2))
    assert a.nu == b.nu
    for key in a.data:
        va, vb = a.data[key], b.data[key]
        if isinstance(va, np.ndarray):
            assert np.array_equal(va, vb)
        elif hasattr(va, "values"):
            assert np.array_equal(va.values, vb.values)
        else:
            assert va == vb


@pytest.mark.parametrize("kind", ["scalar", "matrix", "vector"])
def test_different_index_differs(kind):
    assert generate_instance(kind, 3, 5, 0).nu != generate_instance(kind, 3, 5, 1).nu


def test_ranges():
    for i in range(200):
        p = generate_instance("scalar", 1, 3, i).data["pair"]
        assert 1e-3 <= p.x <= 1e3 and 1e-3 <= p.y <= 1e3
        v = generate_instance("vector", 8, 3, i).data["vector"]
        assert np.all(np.abs(v.values) <= 10) and v.nonzero
        assert 1 <= random_length(3, i) <= 64


def test_bad_arguments():
    with pytest.raises(ValueError):
        generate_instance("tensor", 2, 0, 0)
    with pytest.raises(ValueError):
        generate_instance("matrix", 0, 0, 0)
    with pytest.raises(ValueError):
        generate_instance("scalar", 1, -1, 0)
