"""Degree-zero and degree-one cohomology of center modules.

For a normal subgroup N of G, the quotient Q = G/N acts on A = Z(N) by
conjugation.  This module computes the fixed points A_Q, the trace image
A^tau, H0 = A_Q / A^tau, the group Z1 of crossed homomorphisms (total
tables on Q, solved from generator values and the cocycle law
f(qr) = f(q)^r f(r)), the principal subgroup B1, H1 = Z1/B1, and the
bridge sending a cocycle f to the automorphism g -> g (gN)^f.

For p-groups, vanishing of H0 or H1 in one degree forces vanishing in the
other; the nonvanishing checks assert both sides and that equivalence.
"""

from __future__ import annotations

import itertools

from pgforge import kernel
from pgforge.caps import DEFAULT_CAPS
from pgforge.core import Element, PcPresentation
from pgforge.errors import CapExceeded, DomainError, HypothesesUnmet
from pgforge import structure
from pgforge.subgroups import (
    QuotientGroup,
    Subgroup,
    enumerate_subgroups,
    is_normal,
    quotient,
    subgroup_closure,
    trivial_subgroup,
)


class GModule:
    """Z(N) as a Q = G/N module under conjugation."""

    __slots__ = (
        "G",
        "N",
        "A",
        "Q",
        "q_elements",
        "basis",
        "basis_orders",
        "_coords",
        "a_elements",
    )

    def __init__(self, G, N, A, Q, caps=DEFAULT_CAPS):
        self.G = G
        self.N = N
        self.A = A
        self.Q = Q
        self.q_elements = sorted(Q.elements(), key=lambda e: e.vec)
        self.a_elements = sorted(A.elements(), key=lambda e: e.vec)
        self.basis = structure.abelian_basis(A, caps)
        self.basis_orders = tuple(b.order() for b in self.basis)
        coords = {}
        for exps in itertools.product(*(range(o) for o in self.basis_orders)):
            x = G.identity()
            for b, e in zip(self.basis, exps):
                if e:
                    x = x * b ** e
            coords[x.vec] = exps
        self._coords = coords

    @property
    def invariants(self):
        return self.basis_orders

    def act(self, a: Element, q: Element) -> Element:
        """a^q, conjugation by the canonical representative."""
        return a.conjugate(q)

    def coords(self, a: Element):
        return self._coords[a.vec]

    def action_matrix(self, q: Element):
        """Row i = coordinates of basis[i]^q, entries mod the column
        orders."""
        rows = []
        for b in self.basis:
            img = self.act(b, q)
            rows.append(tuple(self.coords(img)))
        return tuple(rows)

    def verify(self, rng=None, pairs=200):
        """Action is a homomorphism and does not depend on coset
        representatives."""
        import random

        rng = rng or random.Random(0)
        qs = self.q_elements
        for _ in range(pairs):
            q, r = rng.choice(qs), rng.choice(qs)
            qr = self.Q.canonical(q * r)
            for b in self.basis:
                if self.act(self.act(b, q), r) != self.act(b, qr):
                    raise DomainError("action fails to be a homomorphism")
        for _ in range(pairs):
            q = rng.choice(qs)
            nrep = self.N.random_element(rng)
            alt = q * nrep
            for b in self.basis:
                if self.act(b, q) != b.conjugate(alt):
                    raise DomainError("action depends on the representative")
        return True

    def to_dict(self):
        gen_reps = self.Q.generator_reps()
        return {
            "a_invariants": list(self.basis_orders),
            "q_order": self.Q.order,
            "action_matrices": {
                g.word_str(): [list(r) for r in self.action_matrix(g)]
                for g in gen_reps
            },
        }


def module_of(G: PcPresentation, N: Subgroup, caps=DEFAULT_CAPS) -> GModule:
    if not is_normal(N):
        raise DomainError("module_of needs a normal subgroup")
    A = structure.center_of_subgroup(G, N, caps)
    Q = quotient(G, N)
    if Q.order * A.order > caps.cohomology:
        raise CapExceeded("cohomology table", Q.order * A.order, caps.cohomology)
    return GModule(G, N, A, Q, caps)


def trace_image(M: GModule) -> Subgroup:
    """Image of a -> prod over Q of a^x; lands inside the fixed points."""
    imgs = []
    for b in M.basis:
        acc = M.G.identity()
        for q in M.q_elements:
            acc = acc * M.act(b, q)
        imgs.append(acc)
    return subgroup_closure(M.G, imgs)


def fixed_points(M: GModule) -> Subgroup:
    gen_reps = M.Q.generator_reps()
    members = [
        a for a in M.a_elements
        if all(M.act(a, q) == a for q in gen_reps)
    ]
    return subgroup_closure(M.G, members)


def h0(M: GModule):
    """Invariant factors of fixed points modulo the trace image."""
    fp = fixed_points(M)
    tr = trace_image(M)
    if not all(fp.membership(x) for x in tr.igs):
        raise DomainError("trace image escaped the fixed points")
    return structure.section_invariants(M.G, fp, tr)


class CrossedHom:
    """A total table Q -> A satisfying f(qr) = f(q)^r f(r)."""

    __slots__ = ("module", "values")

    def __init__(self, module: GModule, values):
        self.module = module
        self.values = tuple(values)

    def __call__(self, q: Element) -> Element:
        return self.values[self.module.q_elements.index(q)]

    def value_at(self, x: Element) -> Element:
        """f at the coset of an arbitrary group element."""
        return self(self.module.Q.canonical(x))

    def key(self):
        return tuple(v.vec for v in self.values)

    def __eq__(self, other):
        return isinstance(other, CrossedHom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def mul(self, other: "CrossedHom") -> "CrossedHom":
        return CrossedHom(
            self.module, [a * b for a, b in zip(self.values, other.values)]
        )

    def power(self, k: int) -> "CrossedHom":
        return CrossedHom(self.module, [v ** k for v in self.values])

    def is_trivial(self):
        return all(v.is_identity for v in self.values)

    def order(self) -> int:
        p = self.module.G.prime
        o = 1
        f = self
        while not f.is_trivial():
            f = f.power(p)
            o *= p
        return o

    def satisfies_law(self) -> bool:
        M = self.module
        idx = {q.vec: i for i, q in enumerate(M.q_elements)}
        for q in M.q_elements:
            fq = self.values[idx[q.vec]]
            for r in M.q_elements:
                qr = M.Q.canonical(q * r)
                lhs = self.values[idx[qr.vec]]
                rhs = M.act(fq, r) * self.values[idx[r.vec]]
                if lhs != rhs:
                    return False
        return True


def z1(M: GModule, caps=DEFAULT_CAPS):
    """All crossed homomorphisms, found by assigning values on a greedy
    generating set of Q and extending along the Cayley graph; assignments
    that close inconsistently are rejected.  Equivalent to filtering all
    A-valued tables by the cocycle law, which the tests do as an oracle."""
    picks = M.Q.generator_reps()
    qs = M.q_elements
    idx = {q.vec: i for i, q in enumerate(qs)}
    n = len(qs)
    if M.A.order ** max(len(picks), 0) * n > 50_000_000:
        raise CapExceeded(
            "cocycle solver", M.A.order ** len(picks) * n, 50_000_000
        )
    ident_idx = idx[M.Q.canonical(M.G.identity()).vec]
    out = []
    pick_idx = [idx[p.vec] for p in picks]
    for assignment in itertools.product(M.a_elements, repeat=len(picks)):
        table = [None] * n
        table[ident_idx] = M.G.identity()
        for i, a in zip(pick_idx, assignment):
            if table[i] is None:
                table[i] = a
            elif table[i] != a:
                table = None
                break
        if table is None:
            continue
        # BFS: extend along right multiplication by the picks
        ok = True
        frontier = [ident_idx]
        seen = {ident_idx}
        while frontier and ok:
            nxt = []
            for qi in frontier:
                q = qs[qi]
                fq = table[qi]
                for s, a in zip(picks, assignment):
                    qs_next = M.Q.canonical(q * s)
                    ni = idx[qs_next.vec]
                    val = M.act(fq, s) * a
                    if table[ni] is None:
                        table[ni] = val
                        if ni not in seen:
                            seen.add(ni)
                            nxt.append(ni)
                    elif table[ni] != val:
                        ok = False
                        break
                    elif ni not in seen:
                        seen.add(ni)
                        nxt.append(ni)
                if not ok:
                    break
            frontier = nxt
        if not ok or any(v is None for v in table):
            continue
        f = CrossedHom(M, table)
        out.append(f)
    out.sort(key=lambda f: f.key())
    return out


def b1(M: GModule):
    """Principal crossed homomorphisms q -> a^{-1} a^q."""
    seen = {}
    for a in M.a_elements:
        ai = a.inverse()
        vals = [ai * M.act(a, q) for q in M.q_elements]
        f = CrossedHom(M, vals)
        seen[f.key()] = f
    return sorted(seen.values(), key=lambda f: f.key())


def h1(M: GModule, caps=DEFAULT_CAPS):
    """Invariant factors of Z1/B1 under pointwise product."""
    zs = z1(M, caps)
    bs = {f.key() for f in b1(M)}
    if len(zs) % len(bs):
        raise DomainError("principal subgroup does not divide the cocycle group")
    p = M.G.prime
    orders = []
    for f in zs:
        o = 1
        g = f
        while g.key() not in bs:
            g = g.power(p)
            o *= p
        orders.append(o)
    n = len(zs) // len(bs)
    if n == 1:
        return ()
    kmax = 0
    while p ** kmax < max(orders):
        kmax += 1
    jumps = []
    prev = 0
    for k in range(1, kmax + 1):
        cnt = sum(1 for o in orders if o <= p ** k) // len(bs)
        lk = 0
        c = cnt
        while c % p == 0:
            c //= p
            lk += 1
        jumps.append(lk - prev)
        prev = lk
    jumps.append(0)
    out = []
    for k in range(1, kmax + 1):
        out.extend([p ** k] * (jumps[k - 1] - jumps[k]))
    return tuple(sorted(out, reverse=True))


# -- the automorphism bridge ---------------------------------------------------


def cocycle_to_automorphism(M: GModule, f: CrossedHom):
    """The automorphism g -> g (gN)^f; lands in the slice of automorphisms
    fixing N pointwise and trivial on G/N."""
    from pgforge.autos import make_automorphism

    if not f.satisfies_law():
        raise DomainError("table violates the cocycle law")
    images = [g * f.value_at(g) for g in M.G.gens()]
    return make_automorphism(M.G, images)


def automorphism_to_cocycle(M: GModule, alpha) -> CrossedHom:
    vals = []
    for q in M.q_elements:
        vals.append(q.inverse() * alpha.apply(q))
    f = CrossedHom(M, vals)
    if not f.satisfies_law():
        raise DomainError("automorphism is not in the pointwise-fixing slice")
    return f


def c_aut_slice(G: PcPresentation, N: Subgroup, caps=DEFAULT_CAPS):
    """All automorphisms fixing N pointwise with every defect g^{-1} g^a
    in N, by direct search over defect tuples."""
    from pgforge.autos import Automorphism, validation_error

    gens = G.gens()
    free = [i for i, g in enumerate(gens) if not N.membership(g)]
    n_elements = sorted(N.elements(), key=lambda e: e.vec)
    if len(n_elements) ** len(free) > 2_000_000:
        raise CapExceeded(
            "pointwise-fixing slice", len(n_elements) ** len(free), 2_000_000
        )
    out = []
    for defects in itertools.product(n_elements, repeat=len(free)):
        images = list(gens)
        for i, t in zip(free, defects):
            images[i] = gens[i] * t
        if validation_error(G, images):
            continue
        alpha = Automorphism(G, images, _validated=True)
        if all(alpha.apply(u) == u for u in N.igs):
            out.append(alpha)
    out.sort(key=lambda a: a.key())
    return out


def order_p_nonprincipal_cocycle(M: GModule, caps=DEFAULT_CAPS):
    """A cocycle of order exactly p outside the principal subgroup, or
    None.  Existence is the executable form of the escape condition on
    omega1(Z1)."""
    p = M.G.prime
    bs = {f.key() for f in b1(M)}
    for f in z1(M, caps):
        if f.key() in bs:
            continue
        if f.power(p).is_trivial():
            return f
    return None


def condition_check(G: PcPresentation, N: Subgroup, caps=DEFAULT_CAPS):
    """True iff some order-p cocycle escapes the principal subgroup; when
    the centralizer condition C_G(N) = Z(N) also holds, the bridge image
    of that cocycle is a validated noninner automorphism of order p fixing
    N pointwise, returned alongside."""
    from pgforge.autos import is_inner

    M = module_of(G, N, caps)
    f = order_p_nonprincipal_cocycle(M, caps)
    if f is None:
        return False, None
    witness = None
    ZN = structure.center_of_subgroup(G, N, caps)
    if structure.centralizer(G, N, caps) == ZN:
        alpha = cocycle_to_automorphism(M, f)
        if alpha.order() != G.prime:
            raise DomainError("bridge image has the wrong order")
        if not all(alpha.apply(u) == u for u in N.igs):
            raise DomainError("bridge image moved the fixed subgroup")
        if is_inner(G, alpha, caps) is not None:
            raise DomainError("bridge image is inner against the criterion")
        witness = alpha
    return True, witness


# -- norm elements and the identity sweeps --------------------------------------


def norm_element(a: Element, g: Element, n: int) -> Element:
    """a^{g^{n-1}} ... a^{g} a, evaluated left to right."""
    acc = a.pres.identity()
    for i in range(n - 1, -1, -1):
        acc = acc * a.conjugate(g ** i)
    return acc


NORM_CASES = ("pcentral-odd", "class3-odd", "class3-even", "class2")


def norm_identity_report(G: PcPresentation, case: str, caps=DEFAULT_CAPS):
    """Exhaustive sweep of the norm identity in its case-exact form.

    pcentral-odd: p odd and G/Z(G) p-central; for p > 3 the norm equals
    a^p exactly, for p = 3 up to a central defect.
    class3-odd: p odd, class <= 3; defect central.
    class3-even: p = 2, class <= 3; a^{xy} a^y a^x a = a^4 z, z central.
    class2: class <= 2; a^{g^{n-1}+...+1} = a^n z for a range of n.

    Returns a report dict; raises HypothesesUnmet when the case does not
    apply to G.
    """
    if case not in NORM_CASES:
        raise DomainError(f"unknown norm case {case!r}")
    p = G.prime
    if G.order > caps.element_sweep:
        raise CapExceeded("norm sweep", G.order, caps.element_sweep)
    if case == "pcentral-odd":
        if p == 2:
            raise HypothesesUnmet("odd p required")
        if not structure.is_p_central(structure.central_quotient(G, caps), caps):
            raise HypothesesUnmet("central quotient not p-central")
    elif case == "class3-odd":
        if p == 2:
            raise HypothesesUnmet("odd p required")
        if structure.nilpotency_class(G) > 3:
            raise HypothesesUnmet("class exceeds 3")
    elif case == "class3-even":
        if p != 2:
            raise HypothesesUnmet("p = 2 required")
        if structure.nilpotency_class(G) > 3:
            raise HypothesesUnmet("class exceeds 3")
    else:
        if structure.nilpotency_class(G) > 2:
            raise HypothesesUnmet("class exceeds 2")

    Z = structure.center(G, caps)
    abelian_normals = [
        S for S in enumerate_subgroups(G, caps)
        if not S.is_trivial() and S.is_abelian() and is_normal(S)
    ]
    checked = 0
    for A in abelian_normals:
        # conjugation of A and the admissibility conditions only depend on
        # cosets modulo the (normal) centralizer of A, so sweeping the
        # canonical coset representatives is still exhaustive
        cent = structure.centralizer(G, A, caps)
        Qc = quotient(G, cent)
        reps = sorted(Qc.elements(), key=lambda e: e.vec)
        if case == "class3-even":
            xs = [x for x in reps if cent.membership(x ** 2)]
            for a in A.elements():
                a4inv = (a ** 4).inverse()
                for x in xs:
                    ax = a.conjugate(x)
                    for y in xs:
                        if not cent.membership((x * y) ** 2):
                            continue
                        val = ax.conjugate(y) * a.conjugate(y) * ax * a
                        defect = val * a4inv
                        if not Z.membership(defect):
                            return {
                                "status": "fail",
                                "counterexample": {
                                    "A": A.key(),
                                    "a": a.vec,
                                    "x": x.vec,
                                    "y": y.vec,
                                    "defect": defect.vec,
                                },
                            }
                        checked += 1
        else:
            gs = [g for g in reps if cent.membership(g ** p)]
            ns = [p] if case != "class2" else sorted({1, 2, p, p + 1, p * p})
            for a in A.elements():
                for g in gs:
                    for n in ns:
                        val = norm_element(a, g, n)
                        defect = val * (a ** n).inverse()
                        exact = case == "pcentral-odd" and p > 3 and n == p
                        bad = (
                            not defect.is_identity
                            if exact
                            else not Z.membership(defect)
                        )
                        if bad:
                            return {
                                "status": "fail",
                                "counterexample": {
                                    "A": A.key(),
                                    "a": a.vec,
                                    "g": g.vec,
                                    "n": n,
                                    "defect": defect.vec,
                                },
                            }
                        checked += 1
    return {"status": "pass", "tuples_checked": checked,
            "abelian_normal_count": len(abelian_normals)}


# -- fixed-point centralizers and nonvanishing ----------------------------------


def fixed_point_centralizer_report(M: GModule, caps=DEFAULT_CAPS):
    """When H0 vanishes the module is cohomologically trivial, and then
    for every subgroup H of Q the centralizer of the H-fixed points is H
    itself.  Modules with H0 nonzero are recorded and skipped."""
    if h0(M) != ():
        return {"status": "skip", "reason": "not cohomologically trivial"}
    G = M.G
    subs_over_n = [
        S for S in enumerate_subgroups(G, caps)
        if all(S.membership(u) for u in M.N.igs)
    ]
    verified = 0
    for S in subs_over_n:
        h_reps = sorted({M.Q.canonical(x).vec for x in S.elements()})
        h_set = set(h_reps)
        fixed = [
            a for a in M.a_elements
            if all(M.act(a, Element(G, h)) == a for h in h_reps)
        ]
        centralizer_reps = {
            q.vec
            for q in M.q_elements
            if all(M.act(a, q) == a for a in fixed)
        }
        if centralizer_reps != h_set:
            return {
                "status": "fail",
                "counterexample": {"H": h_reps, "centralizer": sorted(centralizer_reps)},
            }
        verified += 1
    return {"status": "pass", "subgroups_verified": verified}


def nonvanishing_report(G: PcPresentation, N: Subgroup, caps=DEFAULT_CAPS):
    """H0 and H1 of the Z(N) module both nonzero, for nontrivial normal N
    with noncyclic quotient, under the class/p-central hypotheses."""
    if N.is_trivial():
        raise HypothesesUnmet("N is trivial")
    if not is_normal(N):
        raise DomainError("N must be normal")
    Q = quotient(G, N)
    if Q.is_cyclic():
        raise HypothesesUnmet("quotient is cyclic")
    p = G.prime
    cls = structure.nilpotency_class(G)
    cond2 = cls <= 2
    cond1 = False
    if p > 2:
        cq = structure.central_quotient(G, caps)
        cond1 = structure.nilpotency_class(cq) <= 2 or structure.is_p_central(cq, caps)
    if not (cond1 or cond2):
        raise HypothesesUnmet("neither hypothesis branch applies")
    M = module_of(G, N, caps)
    i0 = h0(M)
    i1 = h1(M, caps)
    report = {
        "group_order": G.order,
        "quotient_order": Q.order,
        "h0": list(i0),
        "h1": list(i1),
        "h0_nonzero": i0 != (),
        "h1_nonzero": i1 != (),
        "status": "pass" if (i0 != () and i1 != ()) else "fail",
    }
    # one-degree vanishing forces the other; record the cross check
    report["degree_consistency"] = (i0 == ()) == (i1 == ())
    return report


def cocycle_exponent_report(G: PcPresentation, caps=DEFAULT_CAPS):
    """For odd p with G/Z(G) p-central, every crossed homomorphism of
    G/frattini into Z(frattini) has order dividing p."""
    p = G.prime
    if p == 2:
        raise HypothesesUnmet("odd p required")
    if not structure.is_p_central(structure.central_quotient(G, caps), caps):
        raise HypothesesUnmet("central quotient not p-central")
    phi = structure.frattini(G, caps)
    M = module_of(G, phi, caps)
    zs = z1(M, caps)
    for f in zs:
        if not f.power(p).is_trivial():
            return {"status": "fail", "z1_size": len(zs),
                    "counterexample": {"values": [list(v.vec) for v in f.values]}}
    return {"status": "pass", "z1_size": len(zs)}
