import random

import pytest

from pgforge.autos import (
    AutWitness,
    Automorphism,
    central_socle_automorphisms,
    cohomological_witness,
    compose,
    coset_shift_scan,
    identity_automorphism,
    inner_automorphism,
    is_inner,
    liebeck_sigma,
    make_automorphism,
    maximal_coset_shift,
    powerful_quotient_witness,
    search_order_p_automorphisms,
    validation_error,
)
from pgforge.core import PcPresentation
from pgforge.errors import CapExceeded, DomainError, HypothesesUnmet
from pgforge.structure import (
    center,
    centralizer,
    frattini,
    is_abelian,
    maximal_subgroups,
    omega1,
)
from pgforge.subgroups import full_subgroup, subgroup_closure
from pgforge.caps import DeskCaps
from pgforge import corpus


def naive_is_inner(G, alpha):
    for h in G.elements():
        if all(x.conjugate(h) == alpha.apply(x) for x in G.gens()):
            return h
    return None


def test_identity_and_inner(d8):
    ident = identity_automorphism(d8)
    assert ident.order() == 1
    assert is_inner(d8, ident) is not None
    g2 = d8.gen(1)
    conj = inner_automorphism(d8, g2)
    assert validation_error(d8, conj.images) is None
    h = is_inner(d8, conj)
    assert h is not None
    assert all(x.conjugate(h) == conj.apply(x) for x in d8.gens())


def test_d8_shift_example_is_inner(d8):
    """g1 -> g1 g3, g2 -> g2, g3 -> g3 is a valid order-2 automorphism and
    conjugation by g2 realizes it."""
    g1, g2, g3 = d8.gens()
    alpha = make_automorphism(d8, [g1 * g3, g2, g3])
    assert alpha.order() == 2
    conj = is_inner(d8, alpha)
    assert conj is not None
    assert conj == g2 or conj == g2 * g3  # either representative works
    assert inner_automorphism(d8, conj) == alpha


def test_make_automorphism_rejects_bad_images(d8):
    g1, g2, g3 = d8.gens()
    with pytest.raises(DomainError, match="relation"):
        make_automorphism(d8, [g1, g1, g3])
    with pytest.raises(DomainError, match="generate"):
        make_automorphism(d8, [d8.identity(), d8.identity(), d8.identity()])
    with pytest.raises(DomainError):
        make_automorphism(d8, [g1, g2])


def test_compose_order_inverse(q8):
    x, y = q8.gens()
    alpha = make_automorphism(q8, [y, x.inverse() * y.inverse() * x * y * x])
    # sanity: composition against the inverse gives the identity
    inv = alpha.inverse()
    assert compose(alpha, inv) == identity_automorphism(q8)
    k = alpha.order()
    acc = alpha
    for _ in range(k - 1):
        acc = compose(acc, alpha)
    assert acc == identity_automorphism(q8)


def test_is_inner_matches_naive_sweep(small_corpus):
    rng = random.Random(9)
    for entry in small_corpus:
        G = entry.presentation
        if G.order > 2 ** 6:
            continue
        els = list(G.elements())
        autos = [identity_automorphism(G),
                 inner_automorphism(G, rng.choice(els))]
        autos += [w.automorphism for w in
                  search_order_p_automorphisms(G, frattini(G))[:3]]
        for alpha in autos:
            fast = is_inner(G, alpha)
            slow = naive_is_inner(G, alpha)
            assert (fast is None) == (slow is None)


def test_fixes_pointwise(d8):
    g1, g2, g3 = d8.gens()
    alpha = make_automorphism(d8, [g1 * g3, g2, g3])
    M = subgroup_closure(d8, [g2])
    assert alpha.fixes_pointwise(M)
    assert not alpha.fixes_pointwise(full_subgroup(d8))


# -- coset shift -------------------------------------------------------------


def test_coset_shift_identity_when_z_trivial(d8):
    M = subgroup_closure(d8, [d8.gen(1)])
    alpha = maximal_coset_shift(d8, M, d8.gen(0), d8.identity())
    assert alpha == identity_automorphism(d8)


def test_coset_shift_d8_cyclic_maximal_inner(d8):
    """z = g3 lies inside [Z(M), g], so the shift is inner."""
    g1, g2, g3 = d8.gens()
    M = subgroup_closure(d8, [g2])
    zm = M  # M is abelian
    image = {a.commutator(g1) for a in zm.elements()}
    assert g3 in image
    alpha = maximal_coset_shift(d8, M, g1, g3)
    assert alpha.order() == 2
    assert alpha.fixes_pointwise(M)
    assert is_inner(d8, alpha) is not None


def test_coset_shift_rejects_bad_input(d8):
    g1, g2, g3 = d8.gens()
    M = subgroup_closure(d8, [g2])
    with pytest.raises(DomainError):
        maximal_coset_shift(d8, M, g2, g3)  # g inside M
    with pytest.raises(DomainError):
        maximal_coset_shift(d8, M, g1, g2)  # shift element not central


def test_coset_shift_has_order_p_and_fixes_m(small_corpus):
    for entry in small_corpus:
        G = entry.presentation
        if is_abelian(G) or G.order > 2 ** 5:
            continue
        p = G.prime
        om = omega1(center(G))
        for M in maximal_subgroups(G):
            g = next(x for x in G.elements() if not M.membership(x))
            for z in om.elements():
                if z.is_identity or not M.membership(z):
                    continue
                alpha = maximal_coset_shift(G, M, g, z)
                assert alpha.order() == p
                assert alpha.fixes_pointwise(M)


def test_scan_dichotomy(small_corpus):
    """Per (M, g): either some central order-p element escapes [Z(M), g]
    (and the shift by it is noninner), or the socle lies inside."""
    from pgforge.structure import center_of_subgroup

    for entry in small_corpus:
        G = entry.presentation
        if is_abelian(G) or G.order > 2 ** 5:
            continue
        witnesses = coset_shift_scan(G)
        for (M, g, z, alpha) in witnesses:
            assert alpha.order() == G.prime
            assert alpha.fixes_pointwise(M)
            assert is_inner(G, alpha) is None
        if not witnesses:
            om = omega1(center(G))
            for M in maximal_subgroups(G):
                zm = center_of_subgroup(G, M)
                for g in G.elements():
                    if M.membership(g):
                        continue
                    image = {a.commutator(g) for a in zm.elements()}
                    for z in om.elements():
                        if not M.membership(z):
                            continue
                        assert z in image


def test_scan_rejects_abelian():
    with pytest.raises(HypothesesUnmet):
        coset_shift_scan(corpus.abelian(2, [1, 1]).presentation)


def test_scan_empty_on_extraspecial(es27):
    """Every maximal of the order-27 group is abelian, so [Z(M), g] is the
    whole center and no shift witness can exist."""
    assert coset_shift_scan(es27) == []


def test_scan_nonempty_with_noncyclic_center():
    G = corpus.dihedral16_x_c2().presentation
    ws = coset_shift_scan(G)
    assert ws
    for (M, g, z, alpha) in ws[:5]:
        assert alpha.order() == 2
        assert is_inner(G, alpha) is None
        assert alpha.fixes_pointwise(frattini(G))


# -- central socle automorphisms ----------------------------------------------


def test_socle_group_counts(es27, q8):
    members, homs = central_socle_automorphisms(es27)
    assert len(members) == 9
    members, homs = central_socle_automorphisms(q8)
    assert len(members) == 4
    v4 = corpus.abelian(2, [1, 1]).presentation
    assert len(central_socle_automorphisms(v4)[0]) == 1


def test_socle_members_fix_frattini_and_socle(es27):
    members, _ = central_socle_automorphisms(es27)
    phi = frattini(es27)
    om = omega1(center(es27))
    for alpha in members:
        assert alpha.fixes_pointwise(phi)
        assert alpha.fixes_pointwise(om)
        assert alpha.order() in (1, 3)


def test_socle_group_closed_under_composition(q8):
    members, _ = central_socle_automorphisms(q8)
    keys = {m.key() for m in members}
    for a in members:
        for b in members:
            assert compose(a, b).key() in keys


# -- exhaustive search ----------------------------------------------------------


def test_search_d8_finds_noninner(d8):
    ws = search_order_p_automorphisms(d8, frattini(d8))
    assert any(w.is_noninner for w in ws)
    for w in ws:
        assert w.order == 2
        assert w.automorphism.fixes_pointwise(frattini(d8))
        assert validation_error(d8, w.automorphism.images) is None
        assert (w.inner is None) == (naive_is_inner(d8, w.automorphism) is None)


def test_search_deterministic(d8):
    a = search_order_p_automorphisms(d8, frattini(d8))
    b = search_order_p_automorphisms(d8, frattini(d8))
    assert [w.automorphism.key() for w in a] == [w.automorphism.key() for w in b]


def test_search_complete_against_defect_enumeration(q8):
    """Independent completeness oracle on Q8: enumerate all image tuples
    outright and compare."""
    import itertools

    phi = frattini(q8)
    els = list(q8.elements())
    expected = set()
    for imgs in itertools.product(els, repeat=2):
        if validation_error(q8, list(imgs)):
            continue
        alpha = Automorphism(q8, list(imgs), _validated=True)
        if alpha.order() == 2 and alpha.fixes_pointwise(phi):
            expected.add(alpha.key())
    found = {w.automorphism.key() for w in search_order_p_automorphisms(q8, phi)}
    assert found == expected


def test_search_fixing_omega1(g64_pres):
    om = omega1(center(g64_pres))
    ws = search_order_p_automorphisms(g64_pres, om)
    assert any(w.is_noninner for w in ws)
    for w in ws:
        assert w.automorphism.fixes_pointwise(om)


def test_search_cap_refuses():
    P = corpus.metacyclic(3, 3, 2).presentation  # order 256
    with pytest.raises(CapExceeded):
        search_order_p_automorphisms(P, frattini(P))
    with pytest.raises(CapExceeded):
        search_order_p_automorphisms(
            corpus.dihedral(16).presentation,
            frattini(corpus.dihedral(16).presentation),
            DeskCaps(auto_search=8),
        )


# -- fixture claims --------------------------------------------------------------


def test_g64_frattini_fixers_all_inner(g64_pres):
    ws = search_order_p_automorphisms(g64_pres, frattini(g64_pres))
    assert ws, "inner Frattini-fixing involutions must exist"
    assert all(not w.is_noninner for w in ws)


def test_liebeck_sigma_set(l128_pres):
    phi = frattini(l128_pres)
    ws = search_order_p_automorphisms(l128_pres, phi)
    sigmas = {
        liebeck_sigma(l128_pres, r, s).key()
        for (r, s) in ((0, 1), (1, 0), (1, 1))
    }
    assert {w.automorphism.key() for w in ws} == sigmas
    assert all(not w.is_noninner for w in ws)
    assert liebeck_sigma(l128_pres, 0, 0) == identity_automorphism(l128_pres)
    for (r, s) in ((0, 1), (1, 0), (1, 1)):
        sig = liebeck_sigma(l128_pres, r, s)
        assert sig.order() == 2
        assert sig.fixes_pointwise(phi)
        assert is_inner(l128_pres, sig) is not None


def test_liebeck_sigma_rejects_other_groups(d8):
    with pytest.raises(DomainError):
        liebeck_sigma(d8, 1, 0)


# -- the construction machine ----------------------------------------------------


def test_witness_odd_extraspecial(es27):
    w = powerful_quotient_witness(es27)
    assert w.order == 3 and w.is_noninner
    assert w.fixed_set == "frattini"
    assert w.automorphism.fixes_pointwise(frattini(es27))
    assert naive_is_inner(es27, w.automorphism) is None


def test_witness_g64_fixes_omega1_not_frattini(g64_pres):
    w = powerful_quotient_witness(g64_pres)
    assert w.order == 2 and w.is_noninner
    assert w.fixed_set == "omega1-center"


def test_witness_rejects_abelian():
    with pytest.raises(HypothesesUnmet):
        powerful_quotient_witness(corpus.abelian(2, [2, 1]).presentation)


def test_witness_rejects_nonpowerful_quotient():
    with pytest.raises(HypothesesUnmet):
        powerful_quotient_witness(corpus.dihedral(16).presentation)


@pytest.mark.parametrize(
    "entry_fn,expected_path",
    [
        (lambda: corpus.extraspecial(3, "p"), "odd-coset-shift"),
        (lambda: corpus.extraspecial(5, "p"), "odd-coset-shift"),
        (lambda: corpus.metacyclic(3, 3, 2), "two-generator-shift-both"),
        (lambda: corpus.metacyclic(4, 3, 2), "two-generator-shift-a"),
        (lambda: corpus.g243(), "odd-coset-shift"),
    ],
)
def test_witness_construction_paths(entry_fn, expected_path):
    entry = entry_fn()
    w = powerful_quotient_witness(entry.presentation)
    assert w.path == expected_path
    assert w.is_noninner and w.order == entry.presentation.prime


def test_witness_search_fallback_validated(l128_pres):
    w = powerful_quotient_witness(l128_pres)
    assert w.path in ("search-fallback",)
    assert w.is_noninner
    assert w.fixed_set == "omega1-center"
    assert w.automorphism.fixes_pointwise(omega1(center(l128_pres)))


# -- the cohomological route -------------------------------------------------------


def test_cohomological_witness_bridge_path():
    entry = corpus.g243()
    w = cohomological_witness(entry.presentation)
    assert w.path == "cocycle-bridge"
    assert w.is_noninner and w.order == 3
    assert w.fixed_set == "frattini"


def test_cohomological_witness_fallback(es27):
    w = cohomological_witness(es27)
    assert w.path == "ds-fallback-search"
    assert w.is_noninner and w.order == 3


def test_cohomological_witness_hypotheses():
    with pytest.raises(HypothesesUnmet):
        cohomological_witness(corpus.dihedral(8).presentation)  # p = 2
    with pytest.raises(HypothesesUnmet):
        cohomological_witness(corpus.abelian(3, [1, 1]).presentation)


def test_witness_serialization(es27):
    w = powerful_quotient_witness(es27)
    doc = w.to_dict()
    assert doc["order"] == 3
    assert doc["inner"] is None
    assert doc["fixed_set"] == "frattini"
    assert len(doc["images"]) == es27.n_gens
