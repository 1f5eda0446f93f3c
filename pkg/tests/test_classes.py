import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netmotifs.classes import (ALL_CLASSES, FOUR_COMPLETE, THREE_STAR, TRIANGLE, SubgraphClass,
                               TemplateError, canonical_code, gamma_ratio, get_class,
                               matrix_to_mask)

from oracles import TEMPLATES


def template(b, edges):
    t = np.zeros((b, b), dtype=bool)
    for u, v in edges:
        t[u, v] = t[v, u] = True
    return t


@pytest.mark.parametrize("key", sorted(TEMPLATES))
def test_named_templates_get_expected_codes(key):
    b, edges = TEMPLATES[key]
    a = int(key.split("_")[1])
    assert canonical_code(template(b, edges)) == (b, a)


def test_four_star_labellings():
    seen = set()
    for centre in range(4):
        t = template(4, [(centre, k) for k in range(4) if k != centre])
        seen.add(matrix_to_mask(t))
        assert canonical_code(t) == (4, 11)
    assert seen == {56, 38, 21, 11}


def test_six_star():
    assert canonical_code(template(6, [(0, k) for k in range(1, 6)])) == (6, 1099)


def brute_canonical(t):
    b = len(t)
    best = None
    for perm in itertools.permutations(range(b)):
        bits = "".join("1" if t[perm[i], perm[j]] else "0" for i in range(b) for j in range(i + 1, b))
        v = int(bits, 2)
        best = v if best is None else min(best, v)
    return best


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(TEMPLATES)), st.randoms(use_true_random=False))
def test_code_invariant_under_relabelling(key, rnd):
    b, edges = TEMPLATES[key]
    perm = list(range(b))
    rnd.shuffle(perm)
    t = template(b, [(perm[u], perm[v]) for u, v in edges])
    assert canonical_code(t) == (b, brute_canonical(t))


def test_disconnected_template_rejected():
    with pytest.raises(TemplateError):
        canonical_code(template(4, [(0, 1), (2, 3)]))


def test_size_out_of_range():
    with pytest.raises(TemplateError):
        canonical_code(template(2, [(0, 1)]))
    with pytest.raises(TemplateError):
        canonical_code(template(7, [(0, k) for k in range(1, 7)]))


def test_non_canonical_code_rejected():
    with pytest.raises(TemplateError):
        SubgraphClass(4, 56)


def test_gamma_ratio():
    assert gamma_ratio(TRIANGLE) == 1
    assert gamma_ratio(THREE_STAR) == Fraction(2, 3)
    assert gamma_ratio(FOUR_COMPLETE) == Fraction(3, 2)


def test_class_lookup():
    assert get_class("M_7_3") is TRIANGLE
    assert get_class("triangle") is TRIANGLE
    assert get_class("Mt_7_3") is TRIANGLE
    assert get_class((4, 63)) == FOUR_COMPLETE
    with pytest.raises(KeyError):
        get_class("hexagon")


def test_class_properties():
    for c in ALL_CLASSES:
        assert c.template.sum() // 2 == c.edge_count
        assert c.key == f"M_{c.a}_{c.b}"
    assert FOUR_COMPLETE.is_complete and not THREE_STAR.is_complete
    assert THREE_STAR.is_star and get_class("6-star").is_star
