import json
import math

import pytest

import hyperan


def test_version():
    assert hyperan.__version__ == "0.1.0"


def test_quaternion_products():
    i = hyperan.unit(4, 1)
    j = hyperan.unit(4, 2)
    k = hyperan.unit(4, 3)
    assert i * j == k
    assert j * i == -k
    assert (i * i).components() == [-1.0, 0.0, 0.0, 0.0]
    assert hyperan.commutator(i, j) == 2.0 * k

    a = hyperan.Hypercomplex([1.0, 1.0, 0.0, 0.0])
    b = hyperan.Hypercomplex([1.0, 0.0, 1.0, 0.0])
    assert (a * b).components() == [1.0, 1.0, 1.0, 1.0]


def test_octonion_alternativity_and_associator():
    e1 = hyperan.unit(8, 1)
    e2 = hyperan.unit(8, 2)
    e4 = hyperan.unit(8, 4)
    assoc = hyperan.associator(e1, e2, e4)
    assert assoc == 2.0 * hyperan.unit(8, 7)
    assert hyperan.associator(e1, e1, e4).norm() == 0.0


def test_element_protocol():
    q = hyperan.Hypercomplex([1.0, 2.0, -2.0, 0.0])
    assert len(q) == 4
    assert q[1] == 2.0
    assert q.dim == 4
    assert q.norm() == 3.0
    assert q.conjugate().components() == [1.0, -2.0, 2.0, -0.0]
    assert (q * q.inverse() - hyperan.Hypercomplex([1, 0, 0, 0])).norm() < 1e-15
    with pytest.raises(IndexError):
        q[4]
    with pytest.raises(hyperan.DimensionError):
        hyperan.Hypercomplex([1.0, 2.0])


def test_basis_table():
    table = hyperan.basis_table(4)
    assert table[1][2] == "+3"
    assert table[2][1] == "-3"
    assert table[0] == ["+0", "+1", "+2", "+3"]
    parsed = json.loads(hyperan.table_json(8))
    assert parsed["algebra"] == "octonion"
    assert len(parsed["cells"]) == 8


def test_function_spec_round_trip():
    text = '{"type": "right_poly", "dim": 4, "coeffs": [[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]]}'
    spec = hyperan.FunctionSpec.from_json(text)
    assert spec.dim == 4
    assert not spec.plane_restricted
    assert hyperan.FunctionSpec.from_json(spec.to_json()).to_json() == spec.to_json()

    q = hyperan.Hypercomplex([1.0, 1.0, 0.0, 0.0])
    assert spec(q).components() == [0.0, 2.0, 0.0, 0.0]

    with pytest.raises(hyperan.ParseError):
        hyperan.FunctionSpec.from_json('{"type": "right_poly"}')


def test_apply_operator():
    identity = hyperan.FunctionSpec.from_json(
        '{"type": "builtin", "name": "identity", "dim": 4}'
    )
    q = hyperan.Hypercomplex([0.3, 0.7, -0.4, 0.2])
    values = hyperan.apply_operator(identity, "crf", q)
    assert len(values) == 1
    assert (values[0] - hyperan.Hypercomplex([-2, 0, 0, 0])).norm() < 1e-9

    trio = hyperan.apply_operator(identity, "holomorphy_trio", q)
    assert len(trio) == 3
    assert hyperan.residual_norm(trio) < 1e-9

    with pytest.raises(hyperan.ConfigError):
        hyperan.apply_operator(identity, "nonsense", q)
    with pytest.raises(hyperan.RealAxisError):
        hyperan.apply_operator(
            identity, "local_conj_radial", hyperan.Hypercomplex([1, 0, 0, 0])
        )


def test_unit_imaginary():
    iota = hyperan.unit_imaginary(hyperan.Hypercomplex([5.0, 1.0, 1.0, 1.0]))
    s = 1.0 / math.sqrt(3.0)
    assert all(abs(c - x) < 1e-15 for c, x in zip(iota.components(), [0.0, s, s, s]))
    with pytest.raises(hyperan.RealAxisError):
        hyperan.unit_imaginary(hyperan.Hypercomplex([1.0, 0.0, 0.0, 0.0]))


def test_classify_json():
    conj = '{"type": "builtin", "name": "conj_q", "dim": 4}'
    report = json.loads(hyperan.classify_json(conj))
    assert report["command"] == "classify"
    assert report["point_count"] == 620
    verdicts = {row["operator"]: row["verdict"] for row in report["operators"]}
    assert verdicts["global_left"] == "regular"
    assert verdicts["crf"] == "not_regular"
    assert verdicts["holomorphy_trio"] == "not_regular"
    assert verdicts["third_order_probe"] == "not_applicable"
    assert hyperan.classify_json(conj) == hyperan.classify_json(conj)


def test_operator_names():
    names = hyperan.operator_names()
    assert "crf" in names
    assert "local_conj_radial" in names
    assert len(names) == 7
