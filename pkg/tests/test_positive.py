import pytest
from helpers import DYADIC, elements, positives
from hypothesis import given

from fullgroup.element import Element, validate
from fullgroup.errors import NotPositive
from fullgroup.odometer import ClopenSet, parse_clopen
from fullgroup.orbits import is_positive, minimal_periodic_partition
from fullgroup.positive import (
    canonical_conjugator,
    fixed_points_meet_components,
    generator_conjugacy,
    positive_form,
    positive_form_by_window,
    strong_sign_form,
    strongly_positive_domain,
)

g = Element.generator(DYADIC)
ident = Element.identity(DYADIC)
f = validate(DYADIC, 1, [1, -1])
h = validate(DYADIC, 1, [3, -1])
hhp = validate(DYADIC, 1, [-2, 6])
g0 = validate(DYADIC, 1, [2, 0])
g1 = validate(DYADIC, 1, [0, 2])


def test_strongly_positive_domain_examples():
    assert strongly_positive_domain(h) == parse_clopen(DYADIC, "[0]")
    assert strongly_positive_domain(g).is_whole()
    assert strongly_positive_domain(g0).is_whole()
    with pytest.raises(NotPositive):
        strongly_positive_domain(f)


@pytest.mark.parametrize("elem, expected", [(h, g), (g0, g0), (~g, g), (f, ident)])
def test_positive_form_examples(elem, expected):
    assert positive_form(elem) == expected


@pytest.mark.parametrize("elem, k", [(h, g1), (g, ident), (g0, ident)])
def test_canonical_conjugator_examples(elem, k):
    assert canonical_conjugator(elem) == k
    assert positive_form(elem).conjugate(k) == elem


def test_conjugator_requires_positive():
    with pytest.raises(NotPositive):
        canonical_conjugator(hhp)


def test_strong_sign_form_examples():
    ssf = strong_sign_form(h)
    assert (ssf.h_p, ssf.h_gt, ssf.k_gt, ssf.h_lt, ssf.k_lt) == (ident, g, g1, ident, ident)
    ssf = strong_sign_form(f)
    assert (ssf.h_p, ssf.h_gt, ssf.k_gt, ssf.h_lt, ssf.k_lt) == (f, ident, ident, ident, ident)
    ssf = strong_sign_form(hhp)
    assert ssf.h_p == ident
    assert ssf.h_gt.support() == parse_clopen(DYADIC, "[1]")
    assert ssf.h_lt.support() == parse_clopen(DYADIC, "[0]")
    assert ssf.recompose() == hhp


def test_generator_conjugacy_examples():
    assert generator_conjugacy(h).kind == "ConjugateOfG"
    assert generator_conjugacy(h).conjugator == g1
    assert generator_conjugacy(g0).kind == "Neither"
    verdict = generator_conjugacy(~g)
    assert verdict.kind == "ConjugateOfGinv" and verdict.conjugator == ident


# properties


@given(elements())
def test_closed_form_matches_window_enumeration(a):
    assert positive_form(a) == positive_form_by_window(a)


@given(elements())
def test_positive_form_is_idempotent(a):
    p = positive_form(a)
    assert p.is_strongly_positive()
    assert positive_form(p) == p


@given(elements())
def test_positive_form_keeps_the_infinite_part(a):
    mpp_a, mpp_p = minimal_periodic_partition(a), minimal_periodic_partition(positive_form(a))
    assert mpp_a.components == mpp_p.components


@given(positives())
def test_positive_elements_are_conjugate_to_their_form(a):
    k = canonical_conjugator(a)
    assert k.is_strongly_positive()
    assert positive_form(a).conjugate(k) == a
    assert fixed_points_meet_components(k, positive_form(a))


@given(positives())
def test_conjugator_uniqueness_under_perturbation(a):
    # k h'^j also conjugates but its fixed points miss some component
    h_gt = positive_form(a)
    k = canonical_conjugator(a)
    for j in (1, 2):
        k2 = k * h_gt ** j
        assert h_gt.conjugate(k2) == a
        assert not (k2.is_strongly_positive() and fixed_points_meet_components(k2, h_gt))


@given(positives())
def test_forward_orbit_of_y_plus_covers(a):
    Y = strongly_positive_domain(a)
    cover = ClopenSet.empty(a.system)
    step = ~a
    image = Y
    for _ in range(a.size + 1):
        cover = cover | image
        image = step.image(image)
    assert cover.is_whole()


@given(elements())
def test_strong_sign_form_recomposes(a):
    ssf = strong_sign_form(a)
    assert ssf.recompose() == a
    assert ssf.h_gt.is_strongly_positive() and ssf.k_gt.is_strongly_positive()
    assert all(n <= 0 for n in ssf.h_lt.table) and all(n <= 0 for n in ssf.k_lt.table)


@given(elements())
def test_generator_conjugacy_verdicts(a):
    verdict = generator_conjugacy(a)
    if verdict.kind == "ConjugateOfG":
        assert Element.generator(a.system).conjugate(verdict.conjugator) == a
    elif verdict.kind == "ConjugateOfGinv":
        assert (~Element.generator(a.system)).conjugate(verdict.conjugator) == a
    else:
        assert not (is_positive(a) and minimal_periodic_partition(a).m == 1 and positive_form(a).depth == 0)
