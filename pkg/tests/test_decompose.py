"""Amalgam decomposition into affine and triangular letters, exact
inversion, and the polydegree invariant."""

import pytest

from planeaut.corpus import random_affine, random_tame_word
from planeaut.decompose import TameDecomposition, decompose, invert, polydegree
from planeaut.errors import NotAnAutomorphism
from planeaut.fields import FieldDescriptor, mpq
from planeaut.plane import AffineMap, BiPoly, PlaneEndo

QQ = FieldDescriptor.rationals()


def _endo(c1, c2):
    return PlaneEndo(QQ, BiPoly(QQ, c1), BiPoly(QQ, c2))


def test_affine_maps_have_empty_polydegree():
    assert polydegree(PlaneEndo.identity(QQ)) == ()
    rot = _endo({(0, 1): mpq(-1)}, {(1, 0): mpq(1)})
    assert polydegree(rot) == ()


def test_henon_map_decomposes_with_one_syllable():
    # (z2, z1 - z2^2): one quadratic syllable between two affine letters
    h = _endo({(0, 1): mpq(1)}, {(1, 0): mpq(1), (0, 2): mpq(-1)})
    dec = decompose(h)
    assert dec.polydegree() == (2,)
    assert dec.compose_endo() == h


def test_triangular_inverse_is_exact():
    f = _endo({(1, 0): mpq(1), (0, 2): mpq(1)}, {(0, 1): mpq(1)})
    aut = invert(f)
    assert aut.inv == _endo({(1, 0): mpq(1), (0, 2): mpq(-1)},
                            {(0, 1): mpq(1)})


def test_decompose_rejects_non_automorphisms():
    with pytest.raises(NotAnAutomorphism):
        decompose(_endo({(2, 0): mpq(1)}, {(0, 1): mpq(1)}))
    with pytest.raises(NotAnAutomorphism):
        decompose(_endo({(1, 0): mpq(1)}, {(1, 1): mpq(1)}))
    with pytest.raises(NotAnAutomorphism):
        invert(_endo({(1, 0): mpq(1), (0, 1): mpq(1)},
                     {(1, 0): mpq(1), (0, 1): mpq(1)}))


def _peel(word, g):
    # apply the word one letter at a time; composing whole inverses
    # directly would square the degree for nothing
    g = word.affines[0].to_endo().compose(g)
    for e, a in zip(word.elementaries, word.affines[1:]):
        g = a.to_endo().compose(e.to_endo().compose(g))
    return g


def test_random_words_round_trip(rng):
    for _ in range(25):
        word = random_tame_word(QQ, rng, max_syllables=2, degrees=(2, 3))
        f = word.compose_endo()
        dec = decompose(f)
        assert dec.compose_endo() == f
        assert dec.polydegree() == word.polydegree()
        aut = invert(f)
        assert _peel(dec, aut.inv).is_identity()
        assert _peel(decompose(aut.inv), f).is_identity()


def test_polydegree_reverses_under_inversion(rng):
    for _ in range(10):
        word = random_tame_word(QQ, rng, max_syllables=2, degrees=(2, 3))
        f = word.compose_endo()
        pd = word.polydegree()
        assert polydegree(invert(f).inv) == tuple(reversed(pd))


def test_polydegree_ignores_affine_factors(rng):
    for _ in range(10):
        word = random_tame_word(QQ, rng, max_syllables=2, degrees=(2, 3))
        a = random_affine(QQ, rng).to_endo()
        b = random_affine(QQ, rng).to_endo()
        f = a.compose(word.compose_endo()).compose(b)
        assert polydegree(f) == word.polydegree()


def test_decomposition_letters_are_normalized(rng):
    # interior affine letters must sit outside the triangular subgroup,
    # otherwise adjacent syllables could merge and shrink the word
    for _ in range(10):
        word = random_tame_word(QQ, rng)
        dec = decompose(word.compose_endo())
        for aff in dec.affines[1:-1]:
            assert not aff.in_S()


def test_bare_affine_word():
    aff = AffineMap.diagonal(QQ, mpq(2), mpq(-1))
    word = TameDecomposition(QQ, (aff,), ())
    assert word.polydegree() == ()
    assert word.compose_endo() == aff.to_endo()
