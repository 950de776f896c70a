"""Text grammar: rendering and parsing round-trips."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from doublelie.exact import Tensor2, Vec, esym, tsym, ysym
from doublelie.grammar import (parse_poly, parse_sym, parse_tensor2,
                               render_poly, render_sym, render_tensor2,
                               render_vec)


def test_symbol_rendering():
    assert render_sym(tsym(3)) == "t^3"
    assert render_sym(tsym(-2)) == "t^-2"
    assert render_sym(esym(1)) == "e1"
    assert render_sym(ysym(2, 1, 3)) == "Y[2,1,3]"


def test_symbol_parsing_roundtrip():
    for sym in (tsym(0), tsym(-7), esym(4), ysym(5, 2, 2)):
        assert parse_sym(render_sym(sym)) == sym
    with pytest.raises(ValueError):
        parse_sym("t^^2")


def test_tensor_rendering_examples():
    u = Tensor2({(tsym(2), tsym(0)): Fraction(3, 2),
                 (tsym(1), tsym(1)): Fraction(-1)})
    assert render_tensor2(u) == "-t^1(x)t^1 + 3/2*t^2(x)t^0"
    assert render_tensor2(Tensor2()) == "0"


def test_tensor_roundtrip_random_sweep():
    rng = random.Random(23)
    for _ in range(60):
        u = Tensor2({(tsym(rng.randrange(-4, 6)), tsym(rng.randrange(-4, 6))):
                     Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                     for _ in range(rng.randrange(1, 7))})
        assert parse_tensor2(render_tensor2(u)) == u
    assert parse_tensor2("0") == Tensor2()


def test_tensor_parse_rejects_missing_separator():
    with pytest.raises(ValueError):
        parse_tensor2("t^1 t^2")


def test_poly_rendering_examples():
    v = Vec({tsym(2): Fraction(1), tsym(1): Fraction(-3, 2),
             tsym(0): Fraction(1)})
    assert render_poly(v) == "t^2 - 3/2*t + 1"
    assert render_poly(Vec()) == "0"


def test_poly_roundtrip_random_sweep():
    rng = random.Random(31)
    for _ in range(60):
        v = Vec({tsym(rng.randrange(9)):
                 Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                 for _ in range(rng.randrange(1, 6))})
        assert parse_poly(render_poly(v)) == v


def test_poly_parse_explicit_forms():
    assert parse_poly("t") == Vec.basis(tsym(1))
    assert parse_poly("-2*t^3 + 1/2") == Vec({tsym(3): Fraction(-2),
                                              tsym(0): Fraction(1, 2)})
    with pytest.raises(ValueError):
        parse_poly("t + cow")


def test_vec_rendering_uses_symbol_grammar():
    v = Vec({esym(2): Fraction(-1), esym(1): Fraction(2)})
    assert render_vec(v) == "2*e1 - e2"
