"""Characteristic subgroups, series, numeric invariants and the predicates
(powerful, p-central, the centralizer condition) that gate theorem checks.

Everything is a pure function of an immutable presentation; expensive
results are memoized per presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from pgforge import kernel
from pgforge.caps import DEFAULT_CAPS
from pgforge.core import Element, PcPresentation, p_valuation
from pgforge.errors import CapExceeded, DomainError
from pgforge.subgroups import (
    QuotientGroup,
    Subgroup,
    enumerate_subgroups,
    full_subgroup,
    is_normal,
    normal_closure,
    quotient,
    subgroup_closure,
    trivial_subgroup,
)


def _memo(P: PcPresentation, key, fn):
    cache = P._cache
    if key not in cache:
        cache[key] = fn()
    return cache[key]


def _sweep(P: PcPresentation, caps):
    if P.order > caps.element_sweep:
        raise CapExceeded("element sweep", P.order, caps.element_sweep)
    return P.elements()


def center(G: PcPresentation, caps=DEFAULT_CAPS) -> Subgroup:
    def compute():
        gens = G.gens()
        members = [
            x for x in _sweep(G, caps)
            if all(x.commutator(g).is_identity for g in gens)
        ]
        return subgroup_closure(G, members)

    return _memo(G, "center", compute)


def centralizer(G: PcPresentation, target, caps=DEFAULT_CAPS) -> Subgroup:
    """Centralizer of an element or a subgroup, by element sweep."""
    if isinstance(target, Element):
        tgens = [target]
    elif isinstance(target, Subgroup):
        tgens = list(target.igs)
    else:
        raise DomainError("centralizer target must be an Element or Subgroup")
    members = [
        x for x in _sweep(G, caps)
        if all(x.commutator(t).is_identity for t in tgens)
    ]
    return subgroup_closure(G, members)


def derived_subgroup(G: PcPresentation) -> Subgroup:
    def compute():
        gens = G.gens()
        comms = [
            gens[i].commutator(gens[j])
            for i in range(len(gens))
            for j in range(i + 1, len(gens))
        ]
        return normal_closure(G, comms)

    return _memo(G, "derived", compute)


def agemo(G: PcPresentation, i: int = 1, caps=DEFAULT_CAPS) -> Subgroup:
    """Subgroup generated by all p^i-th powers."""
    def compute():
        q = G.prime ** i
        return subgroup_closure(G, [x ** q for x in _sweep(G, caps)])

    return _memo(G, ("agemo", i), compute)


def frattini(G: PcPresentation, caps=DEFAULT_CAPS) -> Subgroup:
    """G' G^p.  Cross-checked against the maximal-subgroup intersection in
    the test suite."""
    def compute():
        d = derived_subgroup(G)
        a = agemo(G, 1, caps)
        return subgroup_closure(G, list(d.igs) + list(a.igs))

    return _memo(G, "frattini", compute)


def omega1(S: Subgroup, caps=DEFAULT_CAPS) -> Subgroup:
    """Subgroup generated by the elements of order dividing p; the input
    must be abelian."""
    if not S.is_abelian():
        raise DomainError("omega1 requires an abelian subgroup")
    p = S.pres.prime
    if S.order > caps.element_sweep:
        raise CapExceeded("omega1 sweep", S.order, caps.element_sweep)
    members = [x for x in S.elements() if (x ** p).is_identity]
    return subgroup_closure(S.pres, members)


def omega1_general(G: PcPresentation, caps=DEFAULT_CAPS) -> Subgroup:
    def compute():
        p = G.prime
        members = [x for x in _sweep(G, caps) if (x ** p).is_identity]
        return subgroup_closure(G, members)

    return _memo(G, "omega1", compute)


def upper_central_series(G: PcPresentation, caps=DEFAULT_CAPS):
    """1 = Z_0 < Z_1 < ... terminating at G."""
    def compute():
        series = [trivial_subgroup(G)]
        gens = G.gens()
        while series[-1].order < G.order:
            prev = series[-1]
            members = [
                x for x in _sweep(G, caps)
                if all(prev.membership(x.commutator(g)) for g in gens)
            ]
            nxt = subgroup_closure(G, members)
            if nxt.order == prev.order:
                raise DomainError("upper central series stalled; group not nilpotent?")
            series.append(nxt)
        return series

    return _memo(G, "ucs", compute)


def lower_central_series(G: PcPresentation):
    """G = gamma_1 > gamma_2 > ... terminating at 1."""
    def compute():
        series = [full_subgroup(G)]
        gens = G.gens()
        while not series[-1].is_trivial():
            prev = series[-1]
            comms = [u.commutator(g) for u in prev.igs for g in gens]
            nxt = normal_closure(G, comms)
            if nxt.order == prev.order:
                raise DomainError("lower central series stalled; group not nilpotent?")
            series.append(nxt)
        return series

    return _memo(G, "lcs", compute)


def nilpotency_class(G: PcPresentation) -> int:
    return len(lower_central_series(G)) - 1


def coclass(G: PcPresentation) -> int:
    n = p_valuation(G.order, G.prime)
    if n is None or n <= 2:
        raise DomainError("coclass is defined for order p^n with n > 2")
    return n - nilpotency_class(G)


def rank_d(G: PcPresentation, caps=DEFAULT_CAPS) -> int:
    """Minimal generator count, log_p |G / frattini|."""
    idx = G.order // frattini(G, caps).order
    return p_valuation(idx, G.prime)


def abelian_invariants(A: Subgroup, caps=DEFAULT_CAPS):
    """Invariant factors of an abelian subgroup, largest first.

    Counts elements of order dividing p^k: the k-th count jump gives the
    number of factors of order >= p^k.
    """
    if not A.is_abelian():
        raise DomainError("abelian_invariants requires an abelian subgroup")
    if A.order > caps.element_sweep:
        raise CapExceeded("abelian invariants sweep", A.order, caps.element_sweep)
    p = A.pres.prime
    orders = [x.order() for x in A.elements()]
    if len(orders) == 1:
        return []
    kmax = p_valuation(max(orders), p)
    # jumps[k] = number of invariant factors of order >= p^k
    jumps = []
    prev = 0
    for k in range(1, kmax + 1):
        cnt = sum(1 for o in orders if o <= p ** k)
        lk = p_valuation(cnt, p)
        jumps.append(lk - prev)
        prev = lk
    jumps.append(0)
    factors = []
    for k in range(1, kmax + 1):
        factors.extend([p ** k] * (jumps[k - 1] - jumps[k]))
    return sorted(factors, reverse=True)


def d_abelian(A: Subgroup, caps=DEFAULT_CAPS) -> int:
    return len(abelian_invariants(A, caps))


def section_invariants(G: PcPresentation, big: Subgroup, small: Subgroup):
    """Invariant factors of big/small for an abelian section big >= small."""
    p = G.prime
    Q = quotient(G, small)
    reps = sorted({Q.canonical(x).vec for x in big.elements()})
    if len(reps) == 1:
        return ()
    orders = []
    for vec in reps:
        x = Element(G, vec)
        o = 1
        y = Q.canonical(x)
        while not y.is_identity:
            y = Q.canonical(y ** p)
            o *= p
        orders.append(o)
    kmax = p_valuation(max(orders), p)
    jumps = []
    prev = 0
    for k in range(1, kmax + 1):
        cnt = sum(1 for o in orders if o <= p ** k)
        lk = p_valuation(cnt, p)
        jumps.append(lk - prev)
        prev = lk
    jumps.append(0)
    out = []
    for k in range(1, kmax + 1):
        out.extend([p ** k] * (jumps[k - 1] - jumps[k]))
    return tuple(sorted(out, reverse=True))


def abelian_basis(A: Subgroup, caps=DEFAULT_CAPS):
    """An independent generating list (b_1, ..., b_m) with descending
    orders whose direct product is A."""
    if not A.is_abelian():
        raise DomainError("abelian_basis requires an abelian subgroup")
    if A.order > caps.element_sweep:
        raise CapExceeded("abelian basis sweep", A.order, caps.element_sweep)
    P = A.pres
    basis = []
    span = trivial_subgroup(P)
    remaining = sorted(A.elements(), key=lambda x: (-x.order(), x.vec))
    while span.order < A.order:
        for x in remaining:
            if span.membership(x):
                continue
            # keep the decomposition direct: an independent pick has
            # <x> meeting the span trivially
            o = x.order()
            cand_ok = True
            y = x
            for _ in range(1, o):
                if span.membership(y) and not y.is_identity:
                    cand_ok = False
                    break
                y = y * x
            if cand_ok:
                basis.append(x)
                span = subgroup_closure(P, list(span.igs) + [x])
                break
        else:
            raise DomainError("no independent pick; input was not abelian?")
    return basis


def is_abelian(G: PcPresentation) -> bool:
    gens = G.gens()
    return all(
        gens[i].commutator(gens[j]).is_identity
        for i in range(len(gens))
        for j in range(i + 1, len(gens))
    )


def is_powerful(G: PcPresentation, caps=DEFAULT_CAPS) -> bool:
    """G' <= G^p for odd p, G' <= G^4 for p = 2."""
    def compute():
        d = derived_subgroup(G)
        target = agemo(G, 2 if G.prime == 2 else 1, caps)
        return all(target.membership(x) for x in d.igs)

    return _memo(G, "powerful", compute)


def is_p_central(G: PcPresentation, caps=DEFAULT_CAPS) -> bool:
    """Every element of order p is central."""
    def compute():
        om = omega1_general(G, caps)
        zc = omega1(center(G, caps), caps)
        return om == zc

    return _memo(G, "p_central", compute)


def ds_condition(G: PcPresentation, caps=DEFAULT_CAPS) -> bool:
    """C_G(Z(frattini(G))) equals frattini(G)."""
    def compute():
        phi = frattini(G, caps)
        z_phi = center_of_subgroup(G, phi, caps)
        return centralizer(G, z_phi, caps) == phi

    return _memo(G, "ds", compute)


def center_of_subgroup(G: PcPresentation, S: Subgroup, caps=DEFAULT_CAPS) -> Subgroup:
    if S.order > caps.element_sweep:
        raise CapExceeded("subgroup center sweep", S.order, caps.element_sweep)
    members = [
        x for x in S.elements()
        if all(x.commutator(u).is_identity for u in S.igs)
    ]
    return subgroup_closure(G, members)


def commutator_image_subgroup(A: Subgroup, x: Element, caps=DEFAULT_CAPS) -> Subgroup:
    """The set {[a, x] : a in A} for a normal abelian A; it is closed
    under the group operations, which is re-verified here."""
    if not A.is_abelian():
        raise DomainError("commutator image needs an abelian subgroup")
    if not is_normal(A):
        raise DomainError("commutator image needs a normal subgroup")
    if A.order > caps.element_sweep:
        raise CapExceeded("commutator image sweep", A.order, caps.element_sweep)
    image = {a.commutator(x) for a in A.elements()}
    S = subgroup_closure(A.pres, image)
    if S.order != len(image):
        raise DomainError("commutator image failed to be a subgroup")
    return S


def maximal_subgroups(G: PcPresentation, caps=DEFAULT_CAPS):
    """All index-p subgroups: pullbacks of the hyperplanes of G/frattini."""
    phi = frattini(G, caps)
    Q = quotient(G, phi)
    p = G.prime
    d = rank_d(G, caps)
    if d == 0:
        return []
    reps = [x for x in Q.elements() if not x.is_identity]
    # coordinates in the elementary abelian quotient
    basis = []
    span = phi
    for g in G.gens():
        if not span.membership(g):
            basis.append(g)
            span = subgroup_closure(G, list(span.igs) + [g])
    coords = {}
    for exps in itertools.product(range(p), repeat=d):
        x = G.identity()
        for b, e in zip(basis, exps):
            x = x * b ** e
        coords[Q.canonical(x).vec] = exps
    out = []
    seen = set()
    # hyperplanes = kernels of nonzero functionals, up to scalar
    for func in itertools.product(range(p), repeat=d):
        if not any(func):
            continue
        lead = next(i for i, c in enumerate(func) if c)
        if func[lead] != 1:
            continue  # normalize the functional
        gens = list(phi.igs)
        for vec, exps in coords.items():
            if sum(c * e for c, e in zip(func, exps)) % p == 0:
                gens.append(Element(G, vec))
        M = subgroup_closure(G, gens)
        if M.key() not in seen:
            seen.add(M.key())
            out.append(M)
    out.sort(key=lambda s: s.key())
    expected = (p ** d - 1) // (p - 1)
    if len(out) != expected:
        raise DomainError(
            f"maximal subgroup count {len(out)} != {expected}"
        )
    return out


@dataclass(frozen=True)
class GroupProfile:
    """The serializable structural summary of a group."""

    name: str
    prime: int
    order: int
    is_abelian: bool
    nilpotency_class: int
    coclass: object  # int, or None when |G| <= p^2
    d: int
    d_center: int
    center_invariants: tuple
    exponent: int
    is_powerful: bool
    is_p_central: bool
    ds_condition: bool
    upper_series_orders: tuple
    lower_series_orders: tuple

    def to_dict(self):
        return {
            "name": self.name,
            "prime": self.prime,
            "order": self.order,
            "abelian": self.is_abelian,
            "class": self.nilpotency_class,
            "coclass": self.coclass,
            "d": self.d,
            "d_center": self.d_center,
            "center_invariants": list(self.center_invariants),
            "exponent": self.exponent,
            "powerful": self.is_powerful,
            "p_central": self.is_p_central,
            "ds_condition": self.ds_condition,
            "upper_series_orders": list(self.upper_series_orders),
            "lower_series_orders": list(self.lower_series_orders),
        }


def exponent(G: PcPresentation, caps=DEFAULT_CAPS) -> int:
    def compute():
        return max(x.order() for x in _sweep(G, caps))

    return _memo(G, "exponent", compute)


def profile(G: PcPresentation, caps=DEFAULT_CAPS) -> GroupProfile:
    def compute():
        G.require_consistent()
        Z = center(G, caps)
        n = p_valuation(G.order, G.prime)
        cls = nilpotency_class(G)
        return GroupProfile(
            name=G.name,
            prime=G.prime,
            order=G.order,
            is_abelian=is_abelian(G),
            nilpotency_class=cls,
            coclass=(n - cls) if n > 2 else None,
            d=rank_d(G, caps),
            d_center=d_abelian(Z, caps),
            center_invariants=tuple(abelian_invariants(Z, caps)),
            exponent=exponent(G, caps),
            is_powerful=is_powerful(G, caps),
            is_p_central=is_p_central(G, caps),
            ds_condition=ds_condition(G, caps),
            upper_series_orders=tuple(s.order for s in upper_central_series(G, caps)),
            lower_series_orders=tuple(s.order for s in lower_central_series(G)),
        )

    return _memo(G, "profile", compute)


def quotient_presentation(G: PcPresentation, N: Subgroup):
    """Presentation of G/N plus the projection map on exponent vectors."""
    return quotient(G, N).presentation()


def central_quotient(G: PcPresentation, caps=DEFAULT_CAPS) -> PcPresentation:
    """Presentation of G/Z(G)."""
    def compute():
        pres, _ = quotient_presentation(G, center(G, caps))
        return pres

    return _memo(G, "central_quotient", compute)
