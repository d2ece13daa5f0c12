import random

import pytest
from hypothesis import given, settings, strategies as st

from brunnian.braid import BraidWord, StringLinkPresentation, expand_pure_generator, is_brunnian
from brunnian.generators import (
    CONVENTION, FamilySpecError, NotBrunnianConstruction, calibrate, closure, family_generators,
    milnor_string_link, random_pure_braid, scheme_family, stack,
)
from brunnian.milnor import milnor_vector, mu, mu_sigma_all
from brunnian.treealg import TreeVector, perms


def test_calibration_is_unique_and_recorded():
    assert calibrate((2, 3)) == [CONVENTION]


def test_beta_id_is_the_borromean_commutator():
    a13, a23 = expand_pure_generator(1, 3, 3), expand_pure_generator(2, 3, 3)
    b = milnor_string_link(2, (1,))
    assert b.braid == a13 * a23 * a13.inverse() * a23.inverse()
    assert b.brunnian is True
    assert mu(b.braid, (1, 2, 3)) == 1


def test_hopf_case():
    b = milnor_string_link(1)
    assert b.braid == expand_pure_generator(1, 2, 2)
    assert milnor_vector(b) == TreeVector.unit(1, ())


def test_invalid_sigma():
    with pytest.raises(ValueError):
        milnor_string_link(3, (1, 1))
    with pytest.raises(ValueError):
        milnor_string_link(0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_duality(n):
    for t in perms(n):
        row = mu_sigma_all(milnor_string_link(n, t))
        assert row == {s: int(s == t) for s in perms(n)}


def test_stack_examples():
    b = milnor_string_link(3, (1, 2))
    assert stack(b, StringLinkPresentation.identity(3)).braid == b.braid
    assert milnor_vector(stack(b, b)) == 2 * TreeVector.unit(3, (1, 2))
    assert milnor_vector(stack(b, b.inverse())) == TreeVector.zero(3)
    with pytest.raises(ValueError):
        stack(b, milnor_string_link(2, (1,)))


def test_closure_examples():
    assert len(closure(StringLinkPresentation.identity(2)).crossings) == 0
    b = milnor_string_link(2, (1,))
    assert len(closure(b).crossings) == 12
    pd = closure(stack(b, b))
    assert (len(pd.crossings), pd.components) == (24, 3)


def test_scheme_family():
    u, a, b, ab = scheme_family(2, (1,), (1,))
    assert len(u.braid) == 0 and u.n == 2
    assert a == b
    assert milnor_vector(ab) == 2 * TreeVector.unit(2, (1,))
    u, a, b, ab = scheme_family(3, (1, 2), (2, 1))
    assert milnor_vector(ab) == TreeVector.unit(3, (1, 2)) + TreeVector.unit(3, (2, 1))


def test_family_examples():
    fam = family_generators(2, "powers:1:-2..2")
    assert [e.milnor[(1,)] for e in fam] == [-2, -1, 0, 1, 2]
    assert len(family_generators(2, [])) == 0
    conj = family_generators(2, ["conj:1:5:4"]).entries[0]
    assert conj.milnor[(1,)] == 1
    for e in family_generators(3, "mix:12^1,21^-2;cancel:21:1:3;unlink"):
        assert e.link.brunnian and e.pd.components == 4


@pytest.mark.parametrize("spec", ["bogus", "powers:1:3", "powers:3:1..2", "mix:1", "conj:1:x:3", "conj:1:2"])
def test_family_spec_errors(spec):
    with pytest.raises(FamilySpecError):
        family_generators(2, spec)


def test_rejects_non_brunnian_construction():
    from brunnian.generators import LinkFamily
    fam = LinkFamily(2)
    with pytest.raises(NotBrunnianConstruction):
        fam.add("bad", StringLinkPresentation(expand_pure_generator(1, 2, 3), 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(perms(3)), st.integers(1, 4))
def test_conjugates_stay_brunnian_with_same_vector(seed, sigma, length):
    g = random_pure_braid(4, length, random.Random(seed))
    beta = milnor_string_link(3, sigma)
    s = StringLinkPresentation(g * beta.braid * g.inverse(), 3)
    assert is_brunnian(s)
    assert milnor_vector(s) == milnor_vector(beta)
