"""Finitary matrices and locally finite operators: products, rays,
transposes, projections, and the trace pairing.

Oracles: small dense multiplication over explicit windows, and the unit
product rule e_ij e_kl = delta_jk e_il."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from doublelie.exact import Vec, tsym
from doublelie.matrices import (INTEGERS, NATURALS, Domain, FinitaryMatrix,
                                LocallyFiniteOperator, StridedRayOperator,
                                commutator, mul_mixed, trace_pair)


def dense_window(op, n):
    return {(i, j): op.entry(i, j) for i in range(n) for j in range(n)
            if op.entry(i, j)}


def dense_mul(a, b, n):
    out = {}
    for (i, j), c in a.items():
        for k in range(n):
            d = b.get((j, k), 0)
            if d:
                out[(i, k)] = out.get((i, k), 0) + c * d
    return {k: v for k, v in out.items() if v}


def random_finitary(rng, n=6):
    return FinitaryMatrix({(rng.randrange(n), rng.randrange(n)):
                           Fraction(rng.randint(-4, 4)) for _ in range(7)})


def test_unit_product_rule():
    for j in range(4):
        for k in range(4):
            p = mul_mixed(FinitaryMatrix.unit(0, j), FinitaryMatrix.unit(k, 2))
            if j == k:
                assert p == FinitaryMatrix.unit(0, 2)
            else:
                assert p.is_zero()


def test_finitary_products_match_dense_oracle():
    rng = random.Random(3)
    for _ in range(30):
        a, b = random_finitary(rng), random_finitary(rng)
        got = mul_mixed(a, b)
        assert dict(got.entries) == dense_mul(dict(a.entries),
                                              dict(b.entries), 12)


def test_ray_entries_and_apply():
    # finite ray starting at (2, 0), three steps down the diagonal
    r = LocallyFiniteOperator.ray(Fraction(1), 2, 0, length=3)
    assert dense_window(r, 6) == {(2, 0): 1, (3, 1): 1, (4, 2): 1}
    assert r.apply_index(1) == {3: 1}
    assert r.apply_index(5) == {}
    # infinite ray: every column below col0 hits exactly once
    rinf = LocallyFiniteOperator.ray(Fraction(-2), 1, 4)
    assert rinf.entry(1, 4) == -2 and rinf.entry(100, 103) == -2
    assert rinf.apply_index(7) == {4: -2}


def test_backward_ray_clips_to_domain():
    # over the naturals only the endpoint with nonnegative column survives
    r = LocallyFiniteOperator.ray(Fraction(1), 3, 0, back=True)
    assert dense_window(r, 6) == {(3, 0): 1}
    r = LocallyFiniteOperator.ray(Fraction(1), 3, 0, back=True,
                                  domain=INTEGERS)
    assert r.entry(3, 0) == 1 and r.entry(-5, -8) == 1 and r.entry(4, 1) == 0


def test_operator_product_matches_dense_oracle_on_window():
    # both operators only move column indices downward, so the window product
    # is exact for the upper-left block
    a = LocallyFiniteOperator.ray(Fraction(1), 0, 0) \
        + LocallyFiniteOperator.ray(Fraction(2), 3, 1, length=4)
    b = LocallyFiniteOperator.ray(Fraction(-1), 2, 0)
    got = mul_mixed(a, b)
    da, db = dense_window(a, 20), dense_window(b, 20)
    expect = dense_mul(da, db, 20)
    window = {k: v for k, v in dense_window(got, 20).items()
              if k[0] < 14 and k[1] < 14}
    expect = {k: v for k, v in expect.items() if k[0] < 14 and k[1] < 14}
    assert window == expect


def test_transpose_is_entrywise():
    rng = random.Random(9)
    a = LocallyFiniteOperator.ray(Fraction(3), 1, 2) \
        + LocallyFiniteOperator.unit(0, 5)
    for i in range(8):
        for j in range(8):
            assert a.transpose().entry(i, j) == a.entry(j, i)
    m = random_finitary(rng)
    assert m.transpose().transpose() == m


def test_product_transpose_identity():
    a = LocallyFiniteOperator.ray(Fraction(1), 2, 0)
    b = FinitaryMatrix.unit(4, 1) + FinitaryMatrix.unit(2, 0).scale(3)
    left = mul_mixed(a, b).transpose()
    right = mul_mixed(b.transpose(), a.transpose())
    for i in range(10):
        for j in range(10):
            assert left.entry(i, j) == right.entry(i, j)


def test_trace_pairing_symmetry_and_units():
    # <e_ij, e_kl> = delta_jk delta_il
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    v = trace_pair(FinitaryMatrix.unit(i, j),
                                   FinitaryMatrix.unit(k, l))
                    assert v == (1 if j == k and i == l else 0)
    rng = random.Random(17)
    for _ in range(10):
        x, y = random_finitary(rng), random_finitary(rng)
        assert trace_pair(x, y) == trace_pair(y, x)


def test_commutator_antisymmetry():
    rng = random.Random(21)
    x, y = random_finitary(rng), random_finitary(rng)
    assert commutator(x, y) == commutator(y, x).scale(-1)


def test_projection_truncates_exactly():
    a = LocallyFiniteOperator.ray(Fraction(1), 0, 1)
    p = a.project_to_block(4)
    assert dense_window(p, 6) == {(0, 1): 1, (1, 2): 1, (2, 3): 1}


def test_apply_to_vector_with_tag():
    a = LocallyFiniteOperator.ray(Fraction(2), 1, 0, length=2)
    v = Vec({tsym(0): Fraction(1), tsym(1): Fraction(3)})
    out = a.apply(v, tag="t")
    assert out == Vec({tsym(1): Fraction(2), tsym(2): Fraction(6)})


def test_strided_ray_skips_intermediate_diagonentries():
    s = StridedRayOperator(Fraction(1), 0, 2, 3)
    assert s.entry(0, 2) == 1 and s.entry(3, 5) == 1 and s.entry(1, 3) == 0
    assert s.apply_index(5) == {3: 1}
    assert s.transpose().entry(2, 0) == 1
    assert dense_window(s.project_to_block(6), 6) == {(0, 2): 1, (3, 5): 1}


def test_record_roundtrip():
    a = LocallyFiniteOperator.ray(Fraction(-3, 2), 2, 0) \
        + LocallyFiniteOperator.unit(0, 1)
    assert LocallyFiniteOperator.from_record(a.to_record()) == a


def test_domain_membership():
    assert NATURALS.contains(0) and not NATURALS.contains(-1)
    assert INTEGERS.contains(-5)
    fin = Domain.finite(3)
    assert fin.contains(2) and not fin.contains(3)
