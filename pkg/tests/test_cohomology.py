import itertools
import random

import pytest

from pgforge.autos import identity_automorphism, inner_automorphism, is_inner
from pgforge.cohomology import (
    CrossedHom,
    b1,
    c_aut_slice,
    cocycle_exponent_report,
    cocycle_to_automorphism,
    automorphism_to_cocycle,
    condition_check,
    fixed_point_centralizer_report,
    fixed_points,
    h0,
    h1,
    module_of,
    nonvanishing_report,
    norm_element,
    norm_identity_report,
    order_p_nonprincipal_cocycle,
    trace_image,
    z1,
)
from pgforge.errors import CapExceeded, DomainError, HypothesesUnmet
from pgforge.structure import center, center_of_subgroup, frattini
from pgforge.subgroups import (
    enumerate_normal_subgroups,
    enumerate_subgroups,
    full_subgroup,
    quotient,
    subgroup_closure,
)
from pgforge import corpus


def z1_table_filter_oracle(M):
    """The defining filter: all A-valued tables satisfying the law."""
    out = []
    for vals in itertools.product(M.a_elements, repeat=len(M.q_elements)):
        f = CrossedHom(M, vals)
        if f.satisfies_law():
            out.append(f.key())
    return sorted(out)


def test_module_trivial_quotient(d8):
    M = module_of(d8, full_subgroup(d8))
    assert M.Q.order == 1
    assert h0(M) == ()
    assert len(z1(M)) == 1


def test_module_d8_frattini(d8):
    phi = frattini(d8)
    M = module_of(d8, phi)
    assert M.A.order == 2 and M.Q.order == 4
    M.verify()
    # trivial action: every action matrix is the identity
    for q in M.q_elements:
        assert M.action_matrix(q) == ((1,),) if M.invariants == (2,) else True
    assert h0(M) == (2,)


def test_module_extraspecial_center(es27):
    Z = center(es27)
    M = module_of(es27, Z)
    assert M.A.order == 3 and M.Q.order == 9
    assert h0(M) == (3,)
    assert h1(M) != ()


def test_module_action_well_defined(small_corpus):
    rng = random.Random(2)
    for entry in small_corpus:
        G = entry.presentation
        if G.order > 2 ** 5:
            continue
        for N in enumerate_normal_subgroups(G)[:6]:
            if N.is_trivial():
                continue
            M = module_of(G, N)
            M.verify(rng, pairs=60)


def test_module_action_thousand_pair_verification(d8, es27):
    """Representative independence at the documented sampling depth."""
    rng = random.Random(17)
    for G in (d8, es27):
        maximal_n = max(
            enumerate_normal_subgroups(G), key=lambda s: s.order if s.order < G.order else 0
        )
        M = module_of(G, maximal_n)
        M.verify(rng, pairs=1000)


def test_trace_lands_in_fixed_points(small_corpus):
    for entry in small_corpus:
        G = entry.presentation
        if G.order > 2 ** 5:
            continue
        for N in enumerate_normal_subgroups(G)[:8]:
            if N.is_trivial():
                continue
            M = module_of(G, N)
            tr, fp = trace_image(M), fixed_points(M)
            assert all(fp.membership(x) for x in tr.igs)


def test_inversion_module(d8):
    """The cyclic maximal subgroup with the flip action: fixed points of
    order 2, trivial trace, so H0 is C2."""
    N = subgroup_closure(d8, [d8.gen(1)])
    M = module_of(d8, N)
    assert M.invariants == (4,)
    assert fixed_points(M).order == 2
    assert trace_image(M).order == 1
    assert h0(M) == (2,)


def test_trivial_action_forced_by_exponent():
    """|Q| = 4 acting trivially on C2: the trace is a fourth power, hence
    trivial, and the fixed points are everything."""
    G = corpus.abelian(2, [1, 1, 1]).presentation
    N = subgroup_closure(G, [G.gen(0)])
    M = module_of(G, N)
    assert M.Q.order == 4
    assert fixed_points(M).order == 2
    assert trace_image(M).order == 1
    assert h0(M) == (2,)


# -- cocycles ------------------------------------------------------------------


def test_z1_matches_table_filter_oracle(d8, q8, es27):
    cases = [
        (d8, frattini(d8)),
        (d8, subgroup_closure(d8, [d8.gen(1)])),  # inversion action
        (q8, subgroup_closure(q8, [q8.gen(1) ** 2])),
        (es27, center(es27)),
    ]
    for G, N in cases:
        M = module_of(G, N)
        assert [f.key() for f in z1(M)] == z1_table_filter_oracle(M)


def test_h1_inversion_module(d8):
    """Q = C2 inverting C4: every table is a cocycle (the law collapses),
    the principal ones are the squares, so H1 is C2."""
    N = subgroup_closure(d8, [d8.gen(1)])
    M = module_of(d8, N)
    assert len(z1(M)) == 4
    assert len(b1(M)) == 2
    assert h1(M) == (2,)


def test_z1_hom_shape_for_trivial_action():
    """Trivial action makes crossed homomorphisms plain homomorphisms:
    Q = C_p on A = C_p gives Z1 of size p with trivial B1."""
    for p in (2, 3):
        G = corpus.abelian(p, [1, 1]).presentation
        N = subgroup_closure(G, [G.gen(0)])
        M = module_of(G, N)
        zs = z1(M)
        assert len(zs) == p
        assert len(b1(M)) == 1
        assert h1(M) == (p,)


def test_z1_group_closure_and_law(d8):
    M = module_of(d8, frattini(d8))
    zs = z1(M)
    keys = {f.key() for f in zs}
    for f in zs:
        assert f.satisfies_law()
        assert f.value_at(d8.identity()).is_identity
        for g in zs:
            assert f.mul(g).key() in keys


def test_b1_size_is_a_over_fixed_points(small_corpus):
    for entry in small_corpus:
        G = entry.presentation
        if G.order > 2 ** 5:
            continue
        for N in enumerate_normal_subgroups(G)[:6]:
            if N.is_trivial():
                continue
            M = module_of(G, N)
            bs = b1(M)
            assert len(bs) == M.A.order // fixed_points(M).order


def test_z1_b1_h1_sizes_consistent(d8, q8):
    for G, N in [(d8, frattini(d8)), (q8, subgroup_closure(q8, [q8.gen(1) ** 2]))]:
        M = module_of(G, N)
        zs, bs = z1(M), b1(M)
        inv = h1(M)
        size = 1
        for f in inv:
            size *= f
        assert len(zs) == len(bs) * size


# -- the bridge -----------------------------------------------------------------


def test_trivial_cocycle_gives_identity(d8):
    M = module_of(d8, frattini(d8))
    f = CrossedHom(M, [d8.identity()] * len(M.q_elements))
    assert cocycle_to_automorphism(M, f) == identity_automorphism(d8)


def test_principal_cocycle_gives_conjugation(q8, es27):
    for G, N in [(q8, subgroup_closure(q8, [q8.gen(1) ** 2])), (es27, center(es27))]:
        M = module_of(G, N)
        for a in M.a_elements:
            f = CrossedHom(M, [a.inverse() * M.act(a, q) for q in M.q_elements])
            assert cocycle_to_automorphism(M, f) == inner_automorphism(G, a)


def test_bridge_bijection_with_slice(d8, q8):
    for G, N in [(d8, frattini(d8)), (q8, subgroup_closure(q8, [q8.gen(1) ** 2]))]:
        M = module_of(G, N)
        zs = z1(M)
        slice_ = c_aut_slice(G, N)
        assert len(zs) == len(slice_)
        bridge = {cocycle_to_automorphism(M, f).key() for f in zs}
        assert bridge == {a.key() for a in slice_}
        # multiplicative: the bridge of a product is the composition
        for f in zs[:3]:
            for g in zs[:3]:
                lhs = cocycle_to_automorphism(M, f.mul(g))
                rhs = cocycle_to_automorphism(M, f).compose(
                    cocycle_to_automorphism(M, g)
                )
                assert lhs == rhs
        # and the inverse direction recovers the cocycle
        for f in zs:
            assert automorphism_to_cocycle(M, cocycle_to_automorphism(M, f)) == f


def test_slice_of_whole_group(d8):
    assert [a.key() for a in c_aut_slice(d8, full_subgroup(d8))] == [
        identity_automorphism(d8).key()
    ]


def test_bridge_rejects_bad_table(d8):
    M = module_of(d8, frattini(d8))
    vals = [d8.identity()] * len(M.q_elements)
    vals[1] = frattini(d8).igs[0]
    f = CrossedHom(M, vals)
    if not f.satisfies_law():
        with pytest.raises(DomainError):
            cocycle_to_automorphism(M, f)


def test_condition_check_extraspecial(es27):
    """An order-3 cocycle escapes the principal subgroup; the centralizer
    condition fails here (the Frattini subgroup is the center), so no
    noninner witness is promised through this route."""
    escaped, witness = condition_check(es27, frattini(es27))
    assert escaped
    assert witness is None


def test_condition_check_produces_witness_when_centralizer_matches():
    entry = corpus.g243()
    G = entry.presentation
    phi = frattini(G)
    escaped, witness = condition_check(G, phi)
    assert escaped and witness is not None
    assert witness.order() == 3
    assert is_inner(G, witness) is None
    assert all(witness.apply(u) == u for u in phi.igs)


def test_condition_check_trivial_quotient(d8):
    escaped, witness = condition_check(d8, full_subgroup(d8))
    assert not escaped


# -- norm elements -----------------------------------------------------------------


def test_norm_element_examples(es27):
    a, g = es27.gen(0), es27.gen(2)  # g central
    assert norm_element(a, g, 3) == a ** 3
    assert norm_element(a, es27.gen(1), 1) == a


def test_norm_element_class2_defect_central(es27):
    rng = random.Random(7)
    Z = center(es27)
    els = list(es27.elements())
    for _ in range(100):
        a, g = rng.choice(els), rng.choice(els)
        n = rng.randint(1, 9)
        defect = norm_element(a, g, n) * (a ** n).inverse()
        assert Z.membership(defect)


@pytest.mark.parametrize(
    "case,entry_fn",
    [
        ("pcentral-odd", lambda: corpus.extraspecial(3, "p")),
        ("pcentral-odd", lambda: corpus.extraspecial(5, "p")),
        ("class3-odd", lambda: corpus.heisenberg_like(3)),
        ("class3-even", lambda: corpus.dihedral(16)),
        ("class3-even", lambda: corpus.dihedral16_x_c2()),
        ("class2", lambda: corpus.quaternion(8)),
        ("class2", lambda: corpus.abelian(2, [2, 1])),
    ],
)
def test_norm_identity_sweeps_pass(case, entry_fn):
    rep = norm_identity_report(entry_fn().presentation, case)
    assert rep["status"] == "pass"
    assert rep["tuples_checked"] > 0


def test_norm_identity_hypotheses():
    with pytest.raises(HypothesesUnmet):
        norm_identity_report(corpus.dihedral(8).presentation, "pcentral-odd")
    with pytest.raises(HypothesesUnmet):
        norm_identity_report(corpus.extraspecial(3, "p").presentation, "class3-even")
    with pytest.raises(HypothesesUnmet):
        norm_identity_report(corpus.dihedral(16).presentation, "class2")
    with pytest.raises(DomainError):
        norm_identity_report(corpus.dihedral(8).presentation, "bogus")


def test_norm_identity_abelian_defect_trivial():
    """For abelian groups the norm is exactly the power, so the class-2
    sweep passes with every defect trivial."""
    rep = norm_identity_report(corpus.abelian(3, [1, 1]).presentation, "class2")
    assert rep["status"] == "pass"


# -- fixed-point centralizers --------------------------------------------------------


def test_prop35_free_module_shape(d8):
    """The Klein maximal subgroup of the dihedral group with the swap
    action: H0 vanishes, and both subgroups of Q pass the centralizer
    test."""
    klein = [
        S for S in enumerate_subgroups(d8)
        if S.order == 4 and all(x.order() <= 2 for x in S.elements())
    ]
    assert klein
    M = module_of(d8, klein[0])
    assert h0(M) == () and h1(M) == ()
    rep = fixed_point_centralizer_report(M)
    assert rep["status"] == "pass"
    assert rep["subgroups_verified"] == 2


def test_prop35_skips_nontrivial_cohomology(d8):
    M = module_of(d8, frattini(d8))
    rep = fixed_point_centralizer_report(M)
    assert rep["status"] == "skip"
    assert rep["reason"] == "not cohomologically trivial"


# -- nonvanishing ---------------------------------------------------------------------


def test_nonvanishing_extraspecial(es27):
    rep = nonvanishing_report(es27, center(es27))
    assert rep["status"] == "pass"
    assert rep["h0"] == [3] and rep["h1"] != []


def test_nonvanishing_d8(d8):
    rep = nonvanishing_report(d8, frattini(d8))
    assert rep["status"] == "pass"
    assert rep["h0"] == [2]


def test_nonvanishing_skips_cyclic_quotient(g64_pres):
    b = g64_pres.gen(1)
    N = subgroup_closure(g64_pres, [b])  # G/<b> is cyclic
    with pytest.raises(HypothesesUnmet, match="cyclic"):
        nonvanishing_report(g64_pres, N)


def test_nonvanishing_skips_trivial_n(d8):
    from pgforge.subgroups import trivial_subgroup

    with pytest.raises(HypothesesUnmet):
        nonvanishing_report(d8, trivial_subgroup(d8))


def test_degree_consistency_on_all_modules(small_corpus):
    """Vanishing in degree zero and in degree one agree, module by
    module, including modules outside the nonvanishing hypotheses."""
    for entry in small_corpus:
        G = entry.presentation
        if G.order > 2 ** 5:
            continue
        for N in enumerate_normal_subgroups(G):
            if N.is_trivial():
                continue
            M = module_of(G, N)
            assert (h0(M) == ()) == (h1(M) == ())


# -- cocycle exponent -------------------------------------------------------------------


def test_cocycle_exponent_extraspecial(es27, m27):
    for G in (es27, m27):
        rep = cocycle_exponent_report(G)
        assert rep["status"] == "pass"
        assert rep["z1_size"] == 9


def test_cocycle_exponent_skips_p2(d8):
    with pytest.raises(HypothesesUnmet):
        cocycle_exponent_report(d8)
