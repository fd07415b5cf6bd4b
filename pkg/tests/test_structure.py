import itertools

import pytest

from pgforge.core import PcPresentation
from pgforge.errors import CapExceeded, DomainError
from pgforge.structure import (
    abelian_basis,
    abelian_invariants,
    agemo,
    center,
    center_of_subgroup,
    centralizer,
    central_quotient,
    coclass,
    commutator_image_subgroup,
    d_abelian,
    derived_subgroup,
    ds_condition,
    exponent,
    frattini,
    is_abelian,
    is_p_central,
    is_powerful,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
    omega1,
    omega1_general,
    profile,
    rank_d,
    upper_central_series,
)
from pgforge.subgroups import enumerate_subgroups, full_subgroup, subgroup_closure
from pgforge import corpus


def sweep_center(P):
    gens = P.gens()
    return {
        x.vec for x in P.elements()
        if all(x.commutator(g).is_identity for g in gens)
    }


def test_center_examples(d8, q8, c4xc2):
    assert center(d8).order == 2
    assert center(q8).order == 2
    assert center(c4xc2).order == 8  # abelian: the whole group
    for P in (d8, q8):
        assert {x.vec for x in center(P).elements()} == sweep_center(P)


def test_centralizer_examples(d8):
    g2 = d8.gen(1)
    C = centralizer(d8, g2)
    assert C.order == 4
    assert C == subgroup_closure(d8, [g2])


def test_derived_and_frattini(q8, d8):
    assert derived_subgroup(q8).order == 2
    elem_ab = corpus.abelian(2, [1, 1, 1]).presentation
    assert frattini(elem_ab).order == 1
    assert frattini(d8).order == 2


def test_frattini_equals_maximal_intersection(small_corpus):
    for entry in small_corpus:
        P = entry.presentation
        if P.order > 2 ** 7:
            continue
        phi = frattini(P)
        maxes = maximal_subgroups(P)
        common = [
            x for x in P.elements()
            if all(M.membership(x) for M in maxes)
        ]
        assert subgroup_closure(P, common) == phi


def test_omega1(c4xc2, q8):
    om = omega1(full_subgroup(c4xc2))
    assert om.order == 4
    assert {x.vec for x in om.elements()} == {
        x.vec for x in c4xc2.elements() if x.order() <= 2
    }
    assert omega1_general(q8).order == 2  # the unique involution
    elem = corpus.abelian(3, [1, 1]).presentation
    assert omega1(full_subgroup(elem)) == full_subgroup(elem)


def test_omega1_requires_abelian(d8):
    with pytest.raises(DomainError):
        omega1(full_subgroup(d8))


def test_series_and_class(d8, es27):
    assert nilpotency_class(d8) == 2
    assert coclass(d8) == 1
    assert nilpotency_class(corpus.abelian(2, [1, 1]).presentation) == 1
    ucs = upper_central_series(es27)
    assert nilpotency_class(es27) == 2
    assert ucs[2].order // ucs[1].order == 9


def test_series_lengths_agree(small_corpus):
    for entry in small_corpus:
        P = entry.presentation
        ucs = upper_central_series(P)
        lcs = lower_central_series(P)
        assert len(ucs) - 1 == len(lcs) - 1 == nilpotency_class(P)
        # upper strictly increases to G, lower strictly decreases to 1
        assert [s.order for s in ucs] == sorted({s.order for s in ucs})
        assert ucs[-1].order == P.order and ucs[0].order == 1
        assert lcs[0].order == P.order and lcs[-1].order == 1


def test_upper_series_matches_quotient_centers(small_corpus):
    """Z_{i+1}/Z_i is the center of G/Z_i, checked through independent
    quotient presentations."""
    from pgforge.subgroups import quotient

    for entry in small_corpus:
        P = entry.presentation
        ucs = upper_central_series(P)
        for i in range(len(ucs) - 1):
            qp, _ = quotient(P, ucs[i]).presentation()
            assert center(qp).order == ucs[i + 1].order // ucs[i].order


def test_coclass_needs_big_enough_group():
    with pytest.raises(DomainError):
        coclass(corpus.abelian(2, [1, 1]).presentation)


def test_rank_examples(d8):
    assert rank_d(d8) == 2
    assert rank_d(corpus.abelian(3, [2]).presentation) == 1
    assert rank_d(corpus.abelian(2, [1, 1, 1, 1]).presentation) == 4


def test_abelian_invariants(c4xc2):
    assert abelian_invariants(full_subgroup(c4xc2)) == [4, 2]
    assert abelian_invariants(full_subgroup(corpus.abelian(3, [2, 1, 1]).presentation)) == [9, 3, 3]


def test_d_equals_d_of_omega1_for_abelian_sections(small_corpus):
    for entry in small_corpus:
        P = entry.presentation
        for S in enumerate_subgroups(P):
            if not S.is_abelian() or S.is_trivial():
                continue
            assert d_abelian(S) == d_abelian(omega1(S))


def test_abelian_basis_is_direct(c4xc2):
    basis = abelian_basis(full_subgroup(c4xc2))
    assert sorted((b.order() for b in basis), reverse=True) == [4, 2]
    seen = set()
    for exps in itertools.product(*(range(b.order()) for b in basis)):
        x = c4xc2.identity()
        for b, e in zip(basis, exps):
            x = x * b ** e
        seen.add(x.vec)
    assert len(seen) == 8


def test_powerful_and_p_central(d8, q8, g64_pres):
    assert is_powerful(corpus.abelian(2, [2, 1]).presentation)
    assert is_powerful(g64_pres)
    assert not is_powerful(d8)
    assert is_p_central(q8)
    assert not is_p_central(d8)


def test_ds_condition(d8, c4xc2, l128_pres):
    assert not ds_condition(c4xc2)  # abelian: centralizer is everything
    assert not ds_condition(d8)
    assert ds_condition(l128_pres)


def test_commutator_image_subgroup(d8, es27):
    g1 = d8.gen(0)
    z = center(d8)
    # central x gives the trivial image
    assert commutator_image_subgroup(full_subgroup(corpus.abelian(2, [2]).presentation),
                                     corpus.abelian(2, [2]).presentation.gen(0)).order == 1
    M = subgroup_closure(d8, [d8.gen(1)])  # cyclic maximal
    img = commutator_image_subgroup(M, g1)
    assert img == z
    # extraspecial: [A, x] is the center for abelian maximal A, x outside
    A = maximal_subgroups(es27)[0]
    x = next(g for g in es27.elements() if not A.membership(g))
    assert commutator_image_subgroup(A, x) == center(es27)


def test_commutator_image_closure_sweep(small_corpus):
    """The commutator image set is closed under product and inverse."""
    for entry in small_corpus:
        P = entry.presentation
        if P.order > 2 ** 6:
            continue
        normal_abelians = [
            S for S in enumerate_subgroups(P)
            if S.is_abelian() and not S.is_trivial()
            and all(S.membership(e.conjugate(g)) for e in S.igs for g in P.gens())
        ]
        for A in normal_abelians[:6]:
            for x in list(P.elements())[:12]:
                image = {a.commutator(x) for a in A.elements()}
                for u, v in itertools.product(image, repeat=2):
                    assert u * v in image
                for u in image:
                    assert u.inverse() in image


def test_maximal_subgroups(d8, es27):
    assert len(maximal_subgroups(corpus.abelian(2, [1]).presentation)) == 1
    assert len(maximal_subgroups(d8)) == 3
    assert len(maximal_subgroups(es27)) == 4
    for M in maximal_subgroups(d8):
        assert M.order == 4


def test_metacyclic_structure_facts():
    for (r, s, t) in [(2, 2, 2), (3, 2, 2), (3, 3, 2)]:
        P = corpus.metacyclic(r, s, t).presentation
        a, b = P.gens()
        assert P.order == 2 ** (r + s + t)
        assert exponent(P) == 2 ** (r + t) == a.order()
        assert b.order() == 2 ** (s + t)
        zp = 2 ** s
        assert center(P) == subgroup_closure(P, [a ** zp, b ** zp])
        if t == s:
            der = derived_subgroup(P)
            assert all(center(P).membership(x) for x in der.igs)


def test_two_generator_class2_center_shape(q8, es27, m27):
    """For 2-generated class-2 groups the center is generated by a^k, b^k
    and [a, b], with k the commutator order, and has rank at most 3."""
    for P in (q8, es27, m27, corpus.g64().presentation):
        assert rank_d(P) == 2 and nilpotency_class(P) == 2
        a, b = P.gens()[0], P.gens()[1]
        assert subgroup_closure(P, [a, b]).order == P.order
        k = a.commutator(b).order()
        assert subgroup_closure(P, [a ** k, b ** k, a.commutator(b)]) == center(P)
        assert d_abelian(center(P)) <= 3


def test_profile_roundtrip(d8):
    prof = profile(d8)
    doc = prof.to_dict()
    assert doc["order"] == 8 and doc["class"] == 2 and doc["coclass"] == 1
    assert doc["d"] == 2 and doc["center_invariants"] == [2]


def test_central_quotient_presentation(g64_pres):
    cq = central_quotient(g64_pres)
    assert cq.order == 16
    assert is_abelian(cq)
    assert cq.consistency_check() == []


def test_trivial_group_profile():
    from pgforge.core import parse_presentation

    T = parse_presentation("group t\nprime 2\ngens 0\n")
    doc = profile(T).to_dict()
    assert doc["order"] == 1
    assert doc["class"] == 0
    assert doc["coclass"] is None
    assert doc["d"] == 0
    assert doc["exponent"] == 1


def test_sweep_caps():
    from pgforge.caps import DeskCaps

    P = corpus.dihedral(16).presentation
    with pytest.raises(CapExceeded):
        center(PcPresentation(2, [2] * 13, None, {}, name="big"),
               DeskCaps(element_sweep=16))
