"""Subgroups as induced (echelonized) generating sequences, quotients with
canonical coset representatives, and desk-scale lattice enumeration.

An induced generating sequence (IGS) holds at most one entry per generator
index; the entry at pivot i has leading exponent exactly p^v for the layer
it generates, and is fully reduced at every later pivot.  That canonical
form is unique per subgroup, so subgroup equality is tuple equality and
membership is decided by stripping, never by enumeration.
"""

from __future__ import annotations

import itertools
from math import gcd

from pgforge import kernel
from pgforge.caps import DEFAULT_CAPS
from pgforge.core import Element, PcPresentation
from pgforge.errors import CapExceeded, DomainError, MixedPresentationError


def _leading(vec):
    for i, e in enumerate(vec):
        if e:
            return i
    return None


def _modinv(a, m):
    # extended euclid; callers guarantee a is a unit mod m
    r0, r1, s0, s1 = a % m, m, 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    return s0 % m


class _IgsBuilder:
    """Noncommutative row reduction over the polycyclic layers."""

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        self.t = pres._tables
        self.table = [None] * pres.n_gens

    def _normalize(self, vec):
        """Unit power of vec so the leading exponent is exactly a p-power."""
        i = _leading(vec)
        m = self.pres.rel_orders[i]
        e = vec[i]
        g = gcd(e, m)
        if e == g:
            return vec
        u = _modinv(e // g, m // g)
        return kernel.power(self.t, vec, u)

    def sift(self, vec):
        """Strip vec through the table; identity means membership."""
        t = self.t
        while True:
            i = _leading(vec)
            if i is None:
                return vec
            u = self.table[i]
            if u is None:
                return vec
            step = u[i]  # a p-power by normalization
            if vec[i] % step:
                return vec
            q = vec[i] // step
            vec = kernel.mul(t, kernel.power(t, u, -q), vec)

    def add(self, vec):
        """Insert vec, displacing weaker pivots; returns True if changed."""
        queue = [vec]
        changed = False
        while queue:
            v = self.sift(queue.pop())
            i = _leading(v)
            if i is None:
                continue
            v = self._normalize(v)
            old = self.table[i]
            self.table[i] = v
            changed = True
            if old is not None:
                queue.append(old)
        return changed

    def close(self):
        """Iterate power and conjugation obligations until stable."""
        t = self.t
        orders = self.pres.rel_orders
        while True:
            entries = [v for v in self.table if v is not None]
            residues = []
            for v in entries:
                i = _leading(v)
                r = orders[i] // v[i]
                residues.append(kernel.power(t, v, r))
            for u in entries:
                ui = kernel.inv(t, u)
                for v in entries:
                    if u is v:
                        continue
                    residues.append(kernel.mul(t, kernel.mul(t, ui, v), u))
                    residues.append(kernel.mul(t, kernel.mul(t, u, v), ui))
            changed = False
            for r in residues:
                if self.add(r):
                    changed = True
            if not changed:
                return

    def reduce_entries(self):
        """Canonical form: each entry reduced at every later pivot."""
        t = self.t
        idxs = [i for i, v in enumerate(self.table) if v is not None]
        for pos, i in enumerate(idxs):
            v = self.table[i]
            for j in idxs[pos + 1:]:
                w = self.table[j]
                step = w[j]
                q = v[j] // step
                if q:
                    v = kernel.mul(t, v, kernel.power(t, w, -q))
            self.table[i] = v

    def finish(self):
        self.close()
        self.reduce_entries()
        igs = tuple(
            Element(self.pres, v) for v in self.table if v is not None
        )
        order = 1
        for e in igs:
            i = e.leading_index()
            order *= self.pres.rel_orders[i] // e.vec[i]
        return Subgroup(self.pres, igs, order)


class Subgroup:
    """A subgroup held as a canonical induced generating sequence."""

    __slots__ = ("pres", "igs", "order")

    def __init__(self, pres, igs, order):
        self.pres = pres
        self.igs = igs
        self.order = order

    @property
    def generators(self):
        return list(self.igs)

    def membership(self, x: Element) -> bool:
        if not (x.pres is self.pres or x.pres == self.pres):
            raise MixedPresentationError("element belongs to another presentation")
        t = self.pres._tables
        table = {e.leading_index(): e.vec for e in self.igs}
        vec = x.vec
        while True:
            i = _leading(vec)
            if i is None:
                return True
            u = table.get(i)
            if u is None or vec[i] % u[i]:
                return False
            q = vec[i] // u[i]
            vec = kernel.mul(t, kernel.power(t, u, -q), vec)

    __contains__ = membership

    def elements(self):
        """All elements, as ordered products over the IGS layers."""
        pres = self.pres
        t = pres._tables
        layers = []
        for e in self.igs:
            i = e.leading_index()
            layers.append(range(pres.rel_orders[i] // e.vec[i]))
        for exps in itertools.product(*layers):
            vec = t.identity
            for e, q in zip(self.igs, exps):
                if q:
                    vec = kernel.mul(t, vec, kernel.power(t, e.vec, q))
            yield Element(pres, vec)

    def random_element(self, rng):
        pres = self.pres
        t = pres._tables
        vec = t.identity
        for e in self.igs:
            i = e.leading_index()
            q = rng.randrange(pres.rel_orders[i] // e.vec[i])
            if q:
                vec = kernel.mul(t, vec, kernel.power(t, e.vec, q))
        return Element(pres, vec)

    def is_trivial(self):
        return self.order == 1

    def is_abelian(self):
        return all(
            u.commutator(v).is_identity
            for u in self.igs
            for v in self.igs
        )

    def key(self):
        return tuple(e.vec for e in self.igs)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.pres == other.pres
            and self.key() == other.key()
        )

    def __le__(self, other):
        return all(other.membership(e) for e in self.igs)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.pres.name!r}>"


def subgroup_closure(P: PcPresentation, gens) -> Subgroup:
    b = _IgsBuilder(P)
    for g in gens:
        if isinstance(g, Element):
            if not (g.pres is P or g.pres == P):
                raise MixedPresentationError("generator from another presentation")
            b.add(g.vec)
        else:
            b.add(tuple(g))
    return b.finish()


def trivial_subgroup(P: PcPresentation) -> Subgroup:
    return subgroup_closure(P, [])


def full_subgroup(P: PcPresentation) -> Subgroup:
    return subgroup_closure(P, P.gens())


def normal_closure(P: PcPresentation, gens) -> Subgroup:
    S = subgroup_closure(P, gens)
    while True:
        b = _IgsBuilder(P)
        for e in S.igs:
            b.add(e.vec)
        changed = False
        for e in S.igs:
            for g in P.gens():
                for h in (g, g.inverse()):
                    c = e.conjugate(h)
                    if not S.membership(c):
                        b.add(c.vec)
                        changed = True
        if not changed:
            return S
        S = b.finish()


def is_normal(S: Subgroup) -> bool:
    P = S.pres
    return all(
        S.membership(e.conjugate(g))
        for e in S.igs
        for g in P.gens()
    )


def centralizes(S: Subgroup, x: Element) -> bool:
    return all(e.commutator(x).is_identity for e in S.igs)


def subgroup_from_set(P: PcPresentation, elements) -> Subgroup:
    """Closure of a set known to already be a subgroup (or not; closed
    either way)."""
    return subgroup_closure(P, elements)


# -- quotients -------------------------------------------------------------


class QuotientGroup:
    """G/N with canonical coset representatives.

    Multiplication is parent multiplication followed by reduction to the
    canonical representative; the kernel's coset reduces to the identity.
    """

    __slots__ = ("parent", "kernel_subgroup", "_layers", "_pres", "_proj")

    def __init__(self, parent: PcPresentation, N: Subgroup):
        if not (N.pres is parent or N.pres == parent):
            raise MixedPresentationError("kernel from another presentation")
        if not is_normal(N):
            raise DomainError("quotient kernel must be normal")
        self.parent = parent
        self.kernel_subgroup = N
        # layer sizes for representative vectors: p^v at pivots, full
        # relative order elsewhere
        layers = list(parent.rel_orders)
        for e in N.igs:
            i = e.leading_index()
            layers[i] = e.vec[i]
        self._layers = tuple(layers)
        self._pres = None
        self._proj = None

    @property
    def order(self) -> int:
        n = 1
        for l in self._layers:
            n *= l
        return n

    def canonical(self, x: Element) -> Element:
        t = self.parent._tables
        vec = x.vec
        for e in self.kernel_subgroup.igs:
            i = e.leading_index()
            step = e.vec[i]
            q = vec[i] // step
            if q:
                vec = kernel.mul(t, vec, kernel.power(t, e.vec, -q))
        return Element(self.parent, vec)

    def multiply(self, x: Element, y: Element) -> Element:
        return self.canonical(x * y)

    def elements(self):
        for vec in itertools.product(*(range(l) for l in self._layers)):
            yield Element(self.parent, vec)

    def generator_reps(self):
        """Greedy generating set of the quotient, as parent elements."""
        picks = []
        span = self.kernel_subgroup
        for g in self.parent.gens():
            if not span.membership(g):
                picks.append(self.canonical(g))
                span = subgroup_closure(
                    self.parent, list(span.igs) + [g]
                )
        return picks

    def is_cyclic(self) -> bool:
        n = self.order
        if n == 1:
            return True
        return any(self.rep_order(q) == n for q in self.elements())

    def rep_order(self, x: Element) -> int:
        """Order of xN in G/N."""
        p = self.parent.prime
        ord_ = 1
        y = self.canonical(x)
        while not y.is_identity:
            y = self.canonical(y ** p)
            ord_ *= p
        return ord_

    def presentation(self):
        """A power-commutator presentation of the quotient, with the
        projection from parent normal forms."""
        if self._pres is None:
            self._pres, self._proj = _quotient_presentation(self)
        return self._pres, self._proj

    def __repr__(self):
        return f"<Quotient order={self.order} of {self.parent.name!r}>"


def quotient(G: PcPresentation, N: Subgroup) -> QuotientGroup:
    return QuotientGroup(G, N)


def _quotient_presentation(Q: QuotientGroup):
    """Build a presentation on the surviving layers of the parent.

    Canonical representatives are supported on layers of size > 1, and the
    reduction at a pivot only touches indices at or above it, so the
    induced relations stay in higher generators.
    """
    parent = Q.parent
    keep = [i for i, l in enumerate(Q._layers) if l > 1]
    pos = {i: k for k, i in enumerate(keep)}

    def project_vec(vec):
        rep = Q.canonical(Element(parent, vec)).vec
        return tuple(rep[i] for i in keep)

    def word_of(vec):
        return tuple((pos[i], e) for i, e in enumerate(vec) if e and i in pos)

    rel_orders = [Q._layers[i] for i in keep]
    pows = []
    for i in keep:
        g = parent.gen(i)
        w = Q.canonical(g ** Q._layers[i]).vec
        pows.append(word_of(w))
    conjs = {}
    for bpos, i in enumerate(keep):
        for apos, j in enumerate(keep):
            if j <= i:
                continue
            w = Q.canonical(parent.gen(j).conjugate(parent.gen(i))).vec
            word = word_of(w)
            if word != ((pos[j], 1),):
                conjs[(pos[j], pos[i])] = word
    pres = PcPresentation(
        parent.prime,
        rel_orders,
        pows,
        conjs,
        name=f"{parent.name}/N",
    )
    return pres, project_vec


# -- lattice enumeration ----------------------------------------------------


def enumerate_subgroups(G: PcPresentation, caps=DEFAULT_CAPS):
    """Complete, duplicate-free list of subgroups, smallest first."""
    if G.order > caps.subgroup_enum:
        raise CapExceeded("subgroup enumeration", G.order, caps.subgroup_enum)
    G.require_consistent()
    seen = {}
    triv = trivial_subgroup(G)
    seen[triv.key()] = triv
    frontier = [triv]
    all_elements = list(G.elements())
    while frontier:
        nxt = []
        for S in frontier:
            for x in all_elements:
                if S.membership(x):
                    continue
                T = subgroup_closure(G, list(S.igs) + [x])
                k = T.key()
                if k not in seen:
                    seen[k] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (s.order, s.key()))


def enumerate_normal_subgroups(G: PcPresentation, caps=DEFAULT_CAPS):
    return [S for S in enumerate_subgroups(G, caps) if is_normal(S)]


def membership(S: Subgroup, x: Element) -> bool:
    return S.membership(x)
