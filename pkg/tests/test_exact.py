"""Sparse exact vectors and tensors: algebra laws and permutation behavior."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from doublelie.exact import (S, SWAP12, SWAP12_3, SWAP23_3, Tensor2, Tensor3,
                             Vec, check_same_tags, esym, outer, tensor_permute,
                             tsym, ysym)


def random_vec(rng, tag="t", size=5):
    return Vec({(tag, rng.randrange(8)): Fraction(rng.randint(-5, 5))
                for _ in range(size)})


def random_tensor2(rng, size=6):
    return Tensor2({(tsym(rng.randrange(6)), tsym(rng.randrange(6))):
                    Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                    for _ in range(size)})


def test_scalar_coercion():
    assert S("3/2") == Fraction(3, 2)
    assert S(7) == 7
    assert S(Fraction(1, 3)) == Fraction(1, 3)


def test_zero_pruning_makes_equality_structural():
    a = Vec({tsym(0): Fraction(1), tsym(1): Fraction(2)})
    b = Vec({tsym(1): Fraction(2), tsym(0): Fraction(1), tsym(3): Fraction(0)})
    assert a == b
    assert (a - b).is_zero()


def test_addition_group_laws_random_sweep():
    rng = random.Random(11)
    for _ in range(50):
        u, v, w = (random_tensor2(rng) for _ in range(3))
        assert (u + v) + w == u + (v + w)
        assert u + v == v + u
        assert u + Tensor2.zero() == u
        assert (u - u).is_zero()
        assert u.scale(3).scale(Fraction(1, 3)) == u


def test_outer_product_shapes_and_bilinearity():
    rng = random.Random(5)
    a, b = random_vec(rng), random_vec(rng)
    t = outer(a, b)
    assert isinstance(t, Tensor2)
    # coefficient oracle: product of the input coefficients
    for (s1, s2), c in t.items():
        assert c == a.terms[s1] * b.terms[s2]
    assert outer(a + b, b) == outer(a, b) + outer(b, b)
    t3 = outer(a, t)
    assert isinstance(t3, Tensor3)
    assert outer(t, a) == tensor_permute(outer(a, t), (3, 1, 2))


def test_swap_is_an_involution():
    rng = random.Random(7)
    for _ in range(20):
        u = random_tensor2(rng)
        assert u.permute(SWAP12).permute(SWAP12) == u


def test_three_slot_permutations_compose():
    u = Tensor3.pure(tsym(0), tsym(1), tsym(2), Fraction(5))
    # moving slot contents by (2,1,3) then (1,3,2) equals the 3-cycle sending
    # slot 1 to 3, 2 to 1, 3 to 2
    v = tensor_permute(tensor_permute(u, SWAP12_3), SWAP23_3)
    assert v == tensor_permute(u, (3, 1, 2))


def test_permutation_rejects_non_permutations():
    u = Tensor2.pure(tsym(0), tsym(1))
    with pytest.raises(ValueError):
        tensor_permute(u, (1, 1))


def test_tag_mixing_is_detected():
    mixed = Vec({tsym(0): Fraction(1), esym(1): Fraction(1)})
    with pytest.raises(ValueError):
        check_same_tags(mixed)
    check_same_tags(Vec.basis(tsym(2)), Vec.basis(tsym(5)))


def test_composite_symbol_ordering_is_stable():
    syms = [ysym(1, 2, 1), ysym(0, 1, 1), ysym(1, 1, 2)]
    v = Vec({s: Fraction(1) for s in syms})
    assert [s for s, _ in v.sorted_items()] == sorted(syms,
                                                     key=lambda s: s[1])
