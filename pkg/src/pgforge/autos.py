"""Automorphisms: construction, validation, the exhaustive order-p search,
and the explicit witness constructions for the theorem harness.

Every automorphism is validated at construction: the generator images must
satisfy all power and conjugation relations and generate the group.  The
inner test searches conjugators over a transversal of G/Z(G); conjugation
factors through the center, so that search is exact and exhaustive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from pgforge import kernel
from pgforge.caps import DEFAULT_CAPS
from pgforge.core import Element, PcPresentation
from pgforge.errors import CapExceeded, DomainError, HypothesesUnmet
from pgforge import structure
from pgforge.subgroups import (
    Subgroup,
    full_subgroup,
    is_normal,
    quotient,
    subgroup_closure,
    trivial_subgroup,
)


class Automorphism:
    """A generator-image map validated against the presentation."""

    __slots__ = ("pres", "images", "_inverse_images")

    def __init__(self, pres, images, _validated=False):
        self.pres = pres
        self.images = tuple(images)
        self._inverse_images = None
        if not _validated:
            err = validation_error(pres, self.images)
            if err:
                raise DomainError(err)

    def apply(self, x: Element) -> Element:
        out = self.pres.identity()
        for img, e in zip(self.images, x.vec):
            if e:
                out = out * img ** e
        return out

    __call__ = apply

    def compose(self, other: "Automorphism") -> "Automorphism":
        """x -> other(self(x))"""
        if self.pres != other.pres:
            raise DomainError("automorphisms of different presentations")
        return Automorphism(
            self.pres, [other.apply(img) for img in self.images], _validated=True
        )

    def order(self, cap=2 ** 20) -> int:
        ident = identity_automorphism(self.pres)
        k = 1
        a = self
        while a != ident:
            a = a.compose(self)
            k += 1
            if k > cap:
                raise DomainError("automorphism order exceeds cap")
        return k

    def is_identity(self) -> bool:
        return self == identity_automorphism(self.pres)

    def inverse_images(self):
        """Preimages of the generators, by a full element sweep."""
        if self._inverse_images is None:
            lookup = {}
            for x in self.pres.elements():
                lookup[self.apply(x).vec] = x
            self._inverse_images = tuple(
                lookup[g.vec] for g in self.pres.gens()
            )
        return self._inverse_images

    def inverse(self) -> "Automorphism":
        return Automorphism(self.pres, self.inverse_images(), _validated=True)

    def fixes_pointwise(self, S: Subgroup) -> bool:
        return all(self.apply(u) == u for u in S.igs)

    def key(self):
        return tuple(img.vec for img in self.images)

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.pres == other.pres
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<Automorphism {self.key()}>"

    def to_dict(self):
        return {"images": [list(v) for v in self.key()]}


def validation_error(pres: PcPresentation, images):
    """None if the images define an automorphism, else a description."""
    n = pres.n_gens
    if len(images) != n:
        return "one image per generator required"
    t = pres._tables

    def eval_word(word):
        out = pres.identity()
        for g, e in word:
            out = out * images[g] ** e
        return out

    for i in range(n):
        m = pres.rel_orders[i]
        if images[i] ** m != eval_word(pres.pow_words[i]):
            return f"power relation of x{i + 1} violated"
    for i in range(n):
        for j in range(i + 1, n):
            w = pres.conj_words[i * n + j]
            lhs = images[j].conjugate(images[i])
            rhs = images[j] if w is None else eval_word(w)
            if lhs != rhs:
                return f"conjugation relation of x{j + 1} by x{i + 1} violated"
    if subgroup_closure(pres, images).order != pres.order:
        return "images do not generate the group"
    return None


def make_automorphism(G: PcPresentation, images) -> Automorphism:
    return Automorphism(G, images)


def identity_automorphism(G: PcPresentation) -> Automorphism:
    return Automorphism(G, G.gens(), _validated=True)


def inner_automorphism(G: PcPresentation, g: Element) -> Automorphism:
    return Automorphism(
        G, [x.conjugate(g) for x in G.gens()], _validated=True
    )


def compose(a: Automorphism, b: Automorphism) -> Automorphism:
    return a.compose(b)


def automorphism_order(a: Automorphism) -> int:
    return a.order()


def fixes_pointwise(a: Automorphism, S: Subgroup) -> bool:
    return a.fixes_pointwise(S)


def is_inner(G: PcPresentation, alpha: Automorphism, caps=DEFAULT_CAPS):
    """The conjugating element, or None.  Conjugation by g depends only on
    gZ(G), so representatives of G/Z(G) are searched, exhaustively."""
    Z = structure.center(G, caps)
    Q = quotient(G, Z)
    gens = G.gens()
    for rep in Q.elements():
        if all(x.conjugate(rep) == alpha.apply(x) for x in gens):
            return rep
    return None


@dataclass(frozen=True)
class AutWitness:
    """A found automorphism plus everything the harness reports about it."""

    automorphism: Automorphism
    order: int
    fixed_set: str
    inner: object  # conjugating Element or None
    exhaustive_inner_test: bool
    path: str = "search"

    @property
    def is_noninner(self):
        return self.inner is None

    def to_dict(self):
        return {
            "images": [list(v) for v in self.automorphism.key()],
            "order": self.order,
            "fixed_set": self.fixed_set,
            "noninner": self.is_noninner,
            "inner": list(self.inner.vec) if self.inner is not None else None,
            "exhaustive_inner_test": self.exhaustive_inner_test,
            "path": self.path,
        }


def witness_for(G, alpha, fixed: Subgroup, fixed_name: str, path="construction",
                caps=DEFAULT_CAPS) -> AutWitness:
    """Re-validate an automorphism independently of how it was built."""
    err = validation_error(G, alpha.images)
    if err:
        raise DomainError(f"constructed map is not an automorphism: {err}")
    if not alpha.fixes_pointwise(fixed):
        raise DomainError("constructed map does not fix the required subgroup")
    return AutWitness(
        automorphism=alpha,
        order=alpha.order(),
        fixed_set=fixed_name,
        inner=is_inner(G, alpha, caps),
        exhaustive_inner_test=True,
        path=path,
    )


# -- exhaustive search --------------------------------------------------------


def search_order_p_automorphisms(G: PcPresentation, fixed: Subgroup,
                                 caps=DEFAULT_CAPS, order=None):
    """All automorphisms of order exactly `order` (default p) fixing the
    given subgroup pointwise.

    Backtracks over generator images from the highest index down; at each
    level every power and conjugation relation supported on the assigned
    suffix is checked.  When the fixed subgroup contains the Frattini
    subgroup, images must preserve p-th powers and commutators against
    already-fixed data, which prunes hard.  Each completed map is
    re-validated from scratch and classified by the exhaustive inner test.
    """
    if G.order > caps.auto_search:
        raise CapExceeded("automorphism search", G.order, caps.auto_search)
    G.require_consistent()
    p = G.prime
    order = order if order is not None else p
    n = G.n_gens
    gens = G.gens()
    all_elements = list(G.elements())
    phi = structure.frattini(G, caps)
    contains_phi = all(fixed.membership(u) for u in phi.igs)
    orders_of = {x.vec: x.order() for x in all_elements}

    # power constraints from the fixed subgroup: if g^k lands in it, the
    # image must reproduce g^k exactly
    def candidates(i):
        g = gens[i]
        if fixed.membership(g):
            return [g]
        want_order = orders_of[g.vec]
        out = []
        gp = g ** p
        for h in all_elements:
            if orders_of[h.vec] != want_order:
                continue
            if contains_phi and h ** p != gp:
                continue
            ok = True
            k = p
            while k < want_order:
                gk = g ** k
                if fixed.membership(gk) and h ** k != gk:
                    ok = False
                    break
                k *= p
            if ok:
                out.append(h)
        return out

    cand = [candidates(i) for i in range(n)]
    t = G._tables

    def eval_word_suffix(word, images):
        out = G.identity()
        for gidx, e in word:
            out = out * images[gidx] ** e
        return out

    found = []
    images = [None] * n

    def level_ok(i):
        # relations fully supported on indices >= i
        m = G.rel_orders[i]
        if images[i] ** m != eval_word_suffix(G.pow_words[i], images):
            return False
        for j in range(i + 1, n):
            w = G.conj_words[i * n + j]
            rhs = images[j] if w is None else eval_word_suffix(w, images)
            if images[j].conjugate(images[i]) != rhs:
                return False
        if contains_phi:
            for j in range(i + 1, n):
                if images[i].commutator(images[j]) != gens[i].commutator(gens[j]):
                    return False
        return True

    def descend(i):
        if i < 0:
            found.append(tuple(images))
            return
        for h in cand[i]:
            images[i] = h
            if level_ok(i):
                descend(i - 1)
        images[i] = None

    descend(n - 1)

    witnesses = []
    for imgs in found:
        err = validation_error(G, imgs)
        if err:
            continue
        alpha = Automorphism(G, imgs, _validated=True)
        if not alpha.fixes_pointwise(fixed):
            continue
        if alpha.order() != order:
            continue
        witnesses.append(
            AutWitness(
                automorphism=alpha,
                order=order,
                fixed_set=_fixed_name(G, fixed),
                inner=is_inner(G, alpha, caps),
                exhaustive_inner_test=True,
                path="search",
            )
        )
    witnesses.sort(key=lambda w: w.automorphism.key())
    return witnesses


def _fixed_name(G, S: Subgroup) -> str:
    if S == structure.frattini(G):
        return "frattini"
    try:
        if S == structure.omega1(structure.center(G)):
            return "omega1-center"
    except Exception:
        pass
    return "igs:" + ";".join(u.word_str() for u in S.igs)


def fixed_set_by_name(G, name: str, caps=DEFAULT_CAPS) -> Subgroup:
    if name == "frattini":
        return structure.frattini(G, caps)
    if name in ("omega1", "omega1-center"):
        return structure.omega1(structure.center(G, caps), caps)
    raise DomainError(f"unknown fixed-set name {name!r}")


# -- the coset-shift construction ---------------------------------------------


def coset_exponent(G, M: Subgroup, g: Element, x: Element) -> int:
    """i with x in M g^i, for a maximal M and g outside it."""
    p = G.prime
    probe = x
    ginv = g.inverse()
    for i in range(p):
        if M.membership(probe):
            return i
        probe = probe * ginv
    raise DomainError("element fell outside the coset decomposition")


def maximal_coset_shift(G: PcPresentation, M: Subgroup, g: Element,
                        z: Element, caps=DEFAULT_CAPS) -> Automorphism:
    """The automorphism sending m g^i to m g^i z^i for m in M.

    Fixes M pointwise; has order p when z is nontrivial.  Requires z of
    order dividing p inside the center and g outside the maximal M."""
    p = G.prime
    Z = structure.center(G, caps)
    if not (Z.membership(z) and (z ** p).is_identity):
        raise DomainError("shift element must be central of order dividing p")
    if M.membership(g):
        raise DomainError("coset generator must lie outside the maximal subgroup")
    if M.order * p != G.order:
        raise DomainError("subgroup is not maximal")
    images = []
    for x in G.gens():
        i = coset_exponent(G, M, g, x)
        images.append(x * z ** i)
    return make_automorphism(G, images)


def coset_shift_scan(G: PcPresentation, caps=DEFAULT_CAPS):
    """All triples (M, g, z) with z central of order p outside the
    commutator image [Z(M), g] for which the coset shift is a validated
    noninner automorphism of order p fixing M (hence frattini) pointwise.

    An empty scan certifies omega1(Z(G)) <= [Z(M), g] for every maximal M
    and every g outside it."""
    if structure.is_abelian(G):
        raise HypothesesUnmet("abelian")
    if G.order > caps.element_sweep:
        raise CapExceeded("coset shift scan", G.order, caps.element_sweep)
    p = G.prime
    Z = structure.center(G, caps)
    om = structure.omega1(Z, caps)
    witnesses = []
    for M in structure.maximal_subgroups(G, caps):
        zm = structure.center_of_subgroup(G, M, caps)
        outside = [g for g in G.elements() if not M.membership(g)]
        for g in outside:
            image = {a.commutator(g) for a in zm.elements()}
            for z in sorted(om.elements(), key=lambda e: e.vec):
                if z.is_identity or z in image:
                    continue
                try:
                    alpha = maximal_coset_shift(G, M, g, z, caps)
                except DomainError:
                    continue
                if alpha.order() != p or not alpha.fixes_pointwise(M):
                    continue
                if is_inner(G, alpha, caps) is None:
                    witnesses.append((M, g, z, alpha))
    return witnesses


# -- central automorphisms with socle defects ----------------------------------


def central_socle_automorphisms(G: PcPresentation, caps=DEFAULT_CAPS):
    """All automorphisms whose defects x^{-1} x^phi lie in omega1(Z(G))
    and which fix omega1(Z(G)) pointwise, together with the corresponding
    homomorphisms from G/omega1(Z(G)) into omega1(Z(G)).

    The count must be |omega1(Z(G))| ** rank(G / omega1(Z(G)) G') and every
    member must fix the Frattini subgroup pointwise; both facts are
    verified here before returning."""
    if G.order > caps.element_sweep:
        raise CapExceeded("central socle sweep", G.order, caps.element_sweep)
    om = structure.omega1(structure.center(G, caps), caps)
    socle = sorted(om.elements(), key=lambda e: e.vec)
    gens = G.gens()
    members = []
    hom_tables = []
    for shifts in itertools.product(socle, repeat=len(gens)):
        images = [g * s for g, s in zip(gens, shifts)]
        if validation_error(G, images):
            continue
        alpha = Automorphism(G, images, _validated=True)
        if not alpha.fixes_pointwise(om):
            continue
        members.append(alpha)
        hom_tables.append(tuple(s.vec for s in shifts))
    members_sorted = sorted(
        zip(members, hom_tables), key=lambda mh: mh[0].key()
    )
    members = [m for m, _ in members_sorted]
    hom_tables = [h for _, h in members_sorted]

    # expected size: |socle| ** d', d' the rank of G / (omega1(Z) G')
    der = structure.derived_subgroup(G)
    omd = subgroup_closure(G, list(om.igs) + list(der.igs))
    Qp, _ = quotient(G, omd).presentation()
    if Qp.n_gens == 0:
        dprime = 0
    else:
        dprime = structure.rank_d(Qp, caps)
    expected = om.order ** dprime
    if len(members) != expected:
        raise DomainError(
            f"central socle group has size {len(members)}, expected {expected}"
        )
    phi = structure.frattini(G, caps)
    for m in members:
        if not m.fixes_pointwise(phi):
            raise DomainError("central socle member moved the Frattini subgroup")
    return members, hom_tables


# -- theorem constructions ------------------------------------------------------


def _transversal_map_automorphism(G, U: Subgroup, x: Element, x_new: Element):
    """Images for the map u x^i -> u x_new^i on the coset decomposition
    over a maximal subgroup U."""
    images = []
    for g in G.gens():
        i = coset_exponent(G, U, x, g)
        u = g * (x ** i).inverse()
        images.append(u * x_new ** i)
    return make_automorphism(G, images)


def _pair_map_automorphism(G, U: Subgroup, xi, xj, xi_new, xj_new):
    """Images for u xi^l xj^k -> u xi_new^l xj_new^k when G/U is a
    2x2 elementary abelian coset grid."""
    images = []
    for g in G.gens():
        for l, k in itertools.product(range(2), repeat=2):
            u = g * (xj ** k).inverse() * (xi ** l).inverse()
            if U.membership(u):
                images.append(u * xi_new ** l * xj_new ** k)
                break
        else:
            raise DomainError("coset grid decomposition failed")
    return make_automorphism(G, images)


def _metacyclic_shape(G: PcPresentation):
    """(r, s, t) when the presentation literally has the two-generator
    shape a^{2^r} = b^{2^s}, b^{2^{s+t}} = 1, b^a = b^{2^t + 1}."""
    from pgforge.core import p_valuation

    if G.prime != 2 or G.n_gens != 2:
        return None
    r = p_valuation(G.rel_orders[0], 2)
    st = p_valuation(G.rel_orders[1], 2)
    pw = G.pow_words[0]
    if len(pw) != 1 or pw[0][0] != 1:
        return None
    s = p_valuation(pw[0][1], 2)
    if s is None:
        return None
    cw = G.conj_words[0 * G.n_gens + 1]
    if cw is None or len(cw) != 1:
        return None
    t = p_valuation(cw[0][1] - 1, 2)
    if t is None or s + t != st or not (r >= s >= t >= 2):
        return None
    if G.pow_words[1]:
        return None
    return (r, s, t)


def powerful_quotient_witness(G: PcPresentation, caps=DEFAULT_CAPS) -> AutWitness:
    """A validated noninner automorphism of order p for a nonabelian G
    whose central quotient is powerful.

    For odd p, or for p = 2 with noncyclic center, the witness fixes the
    Frattini subgroup pointwise; for p = 2 with cyclic center it fixes
    either the Frattini subgroup or omega1(Z(G)) pointwise.  Branches with
    no explicit map fall back to the exhaustive search; every returned
    witness is re-validated independently of its construction."""
    if structure.is_abelian(G):
        raise HypothesesUnmet("abelian")
    cq = structure.central_quotient(G, caps)
    if not structure.is_powerful(cq, caps):
        raise HypothesesUnmet("central quotient not powerful")
    p = G.prime
    Z = structure.center(G, caps)
    phi = structure.frattini(G, caps)
    z_cyclic = structure.d_abelian(Z, caps) == 1

    if not z_cyclic:
        # noncyclic center: a rank count forces a noninner member among the
        # central automorphisms with socle defects; find it directly
        try:
            members, _ = central_socle_automorphisms(G, caps)
            for alpha in members:
                if alpha.is_identity() or alpha.order() != p:
                    continue
                if is_inner(G, alpha, caps) is None:
                    return witness_for(G, alpha, phi, "frattini",
                                       path="socle-search", caps=caps)
        except CapExceeded:
            pass
        w = _search_noninner(G, phi, "frattini", caps)
        if w is not None:
            return w
        raise DomainError("no witness found with noncyclic center")

    try:
        if p > 2:
            return _odd_coset_witness(G, caps)
        return _even_cyclic_center_witness(G, caps)
    except DomainError:
        # a constructive branch misfired on an unusual shape; the search
        # is still exact, so stand in with it before giving up
        w = _search_noninner(G, phi, "frattini", caps)
        if w is None and p == 2:
            om = structure.omega1(Z, caps)
            w = _search_noninner(G, om, "omega1-center", caps)
        if w is not None:
            return w
        raise


def _search_noninner(G, fixed, fixed_name, caps):
    for w in search_order_p_automorphisms(G, fixed, caps):
        if w.is_noninner:
            return AutWitness(
                automorphism=w.automorphism,
                order=w.order,
                fixed_set=fixed_name,
                inner=None,
                exhaustive_inner_test=True,
                path="search-fallback",
            )
    return None


def _socle_pairing_subgroup(G, caps):
    """H with H/Z(G) = omega1(Z_2(G)/Z(G)): elements of Z_2 whose p-th
    power is central."""
    p = G.prime
    Z = structure.center(G, caps)
    ucs = structure.upper_central_series(G, caps)
    Z2 = ucs[2] if len(ucs) > 2 else ucs[-1]
    members = [x for x in Z2.elements() if Z.membership(x ** p)]
    return subgroup_closure(G, members)


def _odd_coset_witness(G, caps) -> AutWitness:
    """p odd, cyclic center: locate an order-p element h of H outside the
    center, then shift the transversal of its centralizer by h."""
    p = G.prime
    Z = structure.center(G, caps)
    if not structure.is_p_central(structure.central_quotient(G, caps), caps):
        w = _search_noninner(G, structure.frattini(G, caps), "frattini", caps)
        if w is not None:
            return w
        raise DomainError("odd case: quotient not p-central and search found nothing")
    H = _socle_pairing_subgroup(G, caps)
    h = None
    # the difference trick: for independent a, b with a^p = b^{ps} the
    # element a b^{-s} has order p and stays outside the center
    hz = [x for x in H.elements() if not Z.membership(x)]
    for a in hz:
        if (a ** p).is_identity:
            h = a
            break
    if h is None:
        for a, b in itertools.product(hz, repeat=2):
            if subgroup_closure(G, [a, b, *Z.igs]).order == Z.order * p * p:
                ap, bp = a ** p, b ** p
                for s in range(Z.order):
                    if ap == bp ** s:
                        cand = a * (b ** s).inverse()
                        if (cand ** p).is_identity and not Z.membership(cand):
                            h = cand
                        break
                if h is not None:
                    break
    if h is None:
        raise DomainError("odd case: no order-p element outside the center")
    U = structure.centralizer(G, h, caps)
    if U.order * p != G.order:
        raise DomainError("odd case: centralizer is not maximal")
    x = next(g for g in G.elements() if not U.membership(g))
    if (x * h) ** p != x ** p:
        raise DomainError("odd case: transversal shift does not preserve p-th powers")
    beta = _transversal_map_automorphism(G, U, x, x * h)
    return witness_for(G, beta, structure.frattini(G, caps), "frattini",
                       path="odd-coset-shift", caps=caps)


def _even_cyclic_center_witness(G, caps) -> AutWitness:
    p = 2
    Z = structure.center(G, caps)
    phi = structure.frattini(G, caps)
    om = structure.omega1(Z, caps)
    cq = structure.central_quotient(G, caps)
    if not structure.is_p_central(cq, caps):
        return _even_fallback(G, caps)
    H = _socle_pairing_subgroup(G, caps)
    if not H.is_abelian():
        # no explicit map for a non-abelian pairing subgroup; the
        # exhaustive search stands in
        return _even_fallback(G, caps)
    # decompose H: either C2^d x Z (case one) or C2^{d-1} x <h> with
    # h^2 generating Z (case two)
    d = structure.rank_d(G, caps)
    expH = max(x.order() for x in H.elements())
    case_two = expH == 2 * Z.order
    hs = _socle_decomposition(G, H, Z, d, case_two, caps)
    scan = hs[:-1] if case_two else hs[:d]
    limit = len(scan) if (not case_two or len(scan) >= 2 and d >= 3) else 0
    cents = [structure.centralizer(G, h, caps) for h in scan[:limit]]
    for i in range(limit):
        for j in range(i + 1, limit):
            if cents[i] != cents[j]:
                xi = next(x for x in cents[i].elements() if not cents[j].membership(x))
                xj = next(x for x in cents[j].elements() if not cents[i].membership(x))
                U = subgroup_closure(
                    G,
                    [x for x in cents[i].elements() if cents[j].membership(x)],
                )
                phi_map = _pair_map_automorphism(
                    G, U, xi, xj, xi * scan[i], xj * scan[j]
                )
                return witness_for(G, phi_map, phi, "frattini",
                                   path="even-pair-shift", caps=caps)
    if limit >= 2:
        # all centralizers agree: shift by the product of two involutions
        h12 = scan[0] * scan[1]
        M = cents[0]
        x = next(g for g in G.elements() if not M.membership(g))
        if (x * h12) ** 2 == x ** 2:
            alpha = _transversal_map_automorphism(G, M, x, x * h12)
            return witness_for(G, alpha, phi, "frattini",
                               path="even-coset-shift", caps=caps)
    shape = _metacyclic_shape(G)
    if shape is not None:
        r, s, t = shape
        if s > t:
            a, b = G.gens()
            h = b ** (2 ** (s - 1)) * (a ** (2 ** (r - 1))).inverse()
            if r > s:
                delta = make_automorphism(G, [a * h, b])
                fixed = subgroup_closure(G, [b])
                w = witness_for(G, delta, fixed, "igs:" + b.word_str(),
                                path="two-generator-shift-a", caps=caps)
                # the cyclic part contains omega1(Z); report against it
                return AutWitness(w.automorphism, w.order, "omega1-center",
                                  w.inner, True, "two-generator-shift-a")
            delta = make_automorphism(G, [a * h, b * h])
            return witness_for(G, delta, om, "omega1-center",
                               path="two-generator-shift-both", caps=caps)
    return _even_fallback(G, caps)


def _even_fallback(G, caps) -> AutWitness:
    phi = structure.frattini(G, caps)
    w = _search_noninner(G, phi, "frattini", caps)
    if w is not None:
        return w
    om = structure.omega1(structure.center(G, caps), caps)
    w = _search_noninner(G, om, "omega1-center", caps)
    if w is not None:
        return w
    raise DomainError("even case: exhaustive fallback found no witness")


def _socle_decomposition(G, H, Z, d, case_two, caps):
    """Independent involutions spanning H over Z, plus the final factor."""
    p = G.prime
    picks = []
    span = Z
    target = d - 1 if case_two else d
    for x in sorted(H.elements(), key=lambda e: e.vec):
        if len(picks) == target:
            break
        if x.order() == 2 and not span.membership(x):
            picks.append(x)
            span = subgroup_closure(G, list(span.igs) + [x])
    if len(picks) != target:
        raise DomainError("socle decomposition failed to span")
    if case_two:
        big = max(H.elements(), key=lambda e: (e.order(), e.vec))
        picks.append(big)
    else:
        zgen = max(Z.elements(), key=lambda e: (e.order(), e.vec))
        picks.append(zgen)
    return picks


def liebeck_sigma(G: PcPresentation, r: int, s: int,
                  caps=DEFAULT_CAPS) -> Automorphism:
    """For the order-128 fixture: a -> a v^{2r}, b -> b v^{2s} with
    v = [a, b]."""
    if G.n_gens != 2 or G.order != 128:
        raise DomainError("liebeck_sigma is defined for the order-128 fixture")
    a, b = G.gens()
    v = a.commutator(b)
    if v != b ** 8:
        raise DomainError("liebeck_sigma is defined for the order-128 fixture")
    if r not in (0, 1) or s not in (0, 1):
        raise DomainError("r and s must be 0 or 1")
    return make_automorphism(G, [a * v ** (2 * r), b * v ** (2 * s)])


# -- the cohomological route ----------------------------------------------------


def cohomological_witness(G: PcPresentation, caps=DEFAULT_CAPS) -> AutWitness:
    """Noninner order-p automorphism fixing the Frattini subgroup
    pointwise, produced through the cocycle bridge: nonvanishing of the
    degree-one cohomology of the Frattini module plus an order-p cocycle
    outside the principal ones."""
    from pgforge import cohomology

    p = G.prime
    if p == 2:
        raise HypothesesUnmet("odd p required")
    if structure.is_abelian(G):
        raise HypothesesUnmet("abelian")
    cq = structure.central_quotient(G, caps)
    if not structure.is_powerful(cq, caps):
        raise HypothesesUnmet("central quotient not powerful")
    phi0 = structure.frattini(G, caps)
    if not structure.ds_condition(G, caps):
        # the reduction guarantees a witness exists in this regime but
        # gives no map; the exhaustive search stands in
        w = _search_noninner(G, phi0, "frattini", caps)
        if w is None:
            raise DomainError("reduction fallback found no witness")
        return AutWitness(w.automorphism, w.order, w.fixed_set, None, True,
                          "ds-fallback-search")
    if not (structure.nilpotency_class(cq) <= 2 or structure.is_p_central(cq, caps)):
        raise HypothesesUnmet("central quotient outside the cohomology hypotheses")
    phi = structure.frattini(G, caps)
    M = cohomology.module_of(G, phi, caps)
    rep = cohomology.nonvanishing_report(G, phi, caps)
    if not (rep["h0_nonzero"] and rep["h1_nonzero"]):
        raise DomainError("cohomology vanished against the hypotheses")
    f = cohomology.order_p_nonprincipal_cocycle(M)
    if f is None:
        raise DomainError("no order-p cocycle outside the principal ones")
    alpha = cohomology.cocycle_to_automorphism(M, f)
    return witness_for(G, alpha, phi, "frattini", path="cocycle-bridge", caps=caps)
