import json
from fractions import Fraction

import pytest

import ltnn

STEP = {
    "dim": 1,
    "cells": [
        {"dim": 1, "leq": [[1, 0]], "value": "1"},
        {"dim": 0, "eq": [[1, 0]], "value": "2"},
        {"dim": 1, "leq": [[-1, 0], [1, 1]], "value": "2"},
        {"dim": 0, "eq": [[1, 1]], "value": "2"},
        {"dim": 1, "leq": [[-1, -1]], "value": "3"},
    ],
}


def test_xor_optimum_is_zero():
    r = ltnn.train([[0, 0], [1, 0], [0, 1], [1, 1]], [0, 1, 1, 0], [2, 1])
    assert r["optimum"] == 0
    net = r["network"]
    assert ltnn.evaluate(net, [[0, 0], [1, 0], [1, 1]]) == [0, 1, 0]


def test_fractions_round_trip():
    r = ltnn.train([[0], [1], [2]], [Fraction(1, 3), Fraction(1, 3), Fraction(-5, 2)], [1], output_bias=True)
    assert r["optimum"] == 0
    assert ltnn.evaluate(r["network"], [[Fraction(1, 2)]]) == [Fraction(1, 3)]
    with pytest.raises(TypeError):
        ltnn.train([[0.5]], [1], [1])


def test_compile_and_verify():
    spec = json.dumps(STEP)
    report = ltnn.compile(spec, "exact")
    assert report["within_bound"]
    assert ltnn.evaluate(report["network"], [[-1], [0], ["1/2"], [1], [5]]) == [1, 2, 2, 2, 3]
    assert ltnn.verify(report["network"], spec, samples=500)["ok"]


def test_counts_and_generators():
    assert ltnn.count_separable([[0, 0], [1, 0], [0, 1], [1, 1]]) == 14
    assert ltnn.count_collections(3) == 104
    parity = ltnn.generate("parity", 3)
    assert ltnn.evaluate(parity, [[1, 1, 1], [-1, 1, 1]]) == [1, 0]


def test_errors():
    with pytest.raises(ltnn.RefusalError):
        ltnn.count_collections(5)
    with pytest.raises(ltnn.ParseError):
        ltnn.compile("{not json")
    with pytest.raises(ValueError):
        ltnn.train([[1], [1]], [0, 1], [1])
