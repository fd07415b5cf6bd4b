"""Theorem-check registry, runners, and JSON reporting.

Each check id maps one verifiable claim to an executable test over a
corpus entry.  Statuses: pass, fail (with a concrete counterexample
payload), skip (named unmet hypothesis), refused (cap).  Results are
canonically ordered so reports are stable across runs and schedules;
timings are informational and excluded from stability comparisons.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from pgforge import cohomology, structure
from pgforge.autos import (
    central_socle_automorphisms,
    cohomological_witness,
    coset_shift_scan,
    is_inner,
    liebeck_sigma,
    powerful_quotient_witness,
    search_order_p_automorphisms,
)
from pgforge.caps import DEFAULT_CAPS
from pgforge.core import PcPresentation, p_valuation
from pgforge.corpus import CorpusEntry, builtin_corpus
from pgforge.errors import CapExceeded, DomainError, ForgeError, HypothesesUnmet
from pgforge.subgroups import (
    enumerate_normal_subgroups,
    full_subgroup,
    quotient,
    subgroup_closure,
)


@dataclass
class CheckResult:
    check_id: str
    group_id: str
    status: str  # pass | fail | skip | refused
    reason: str = ""
    witness: object = None
    counterexample: object = None
    timing_ms: int = 0

    def to_dict(self):
        out = {
            "check_id": self.check_id,
            "group_id": self.group_id,
            "status": self.status,
            "timing_ms": self.timing_ms,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _witness_payload(w):
    return w.to_dict()


# -- individual checks ---------------------------------------------------------


def check_prop_1_3(entry, caps):
    """For every normal N: the cocycle group and the pointwise-fixing
    automorphism slice biject, and principal cocycles map exactly onto the
    conjugations by Z(N)."""
    G = entry.presentation
    if G.order > caps.bijection:
        return ("skip", f"order {G.order} above the bijection cap {caps.bijection}", None, None)
    from pgforge.autos import inner_automorphism

    pairs = 0
    for N in enumerate_normal_subgroups(G, caps):
        M = cohomology.module_of(G, N, caps)
        zs = cohomology.z1(M, caps)
        slice_ = cohomology.c_aut_slice(G, N, caps)
        if len(zs) != len(slice_):
            return ("fail", "", None,
                    {"N": N.key(), "z1": len(zs), "slice": len(slice_)})
        bridge = {cohomology.cocycle_to_automorphism(M, f).key() for f in zs}
        if bridge != {a.key() for a in slice_}:
            return ("fail", "", None, {"N": N.key(), "mismatch": "bridge image"})
        principal = {cohomology.cocycle_to_automorphism(M, f).key()
                     for f in cohomology.b1(M)}
        zn = structure.center_of_subgroup(G, N, caps)
        conj = {inner_automorphism(G, z).key() for z in zn.elements()}
        if principal != conj:
            return ("fail", "", None, {"N": N.key(), "mismatch": "principal image"})
        pairs += 1
    return ("pass", "", {"pairs": pairs}, None)


def check_lemma_2_1(entry, caps):
    """When no noninner automorphism of order p fixes the Frattini
    subgroup pointwise, omega1(Z(G)) lies inside [Z(M), g] for every
    maximal M and g outside it; scan witnesses are cross-validated."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    if G.order > caps.auto_search:
        return ("skip", f"order {G.order} above the search cap", None, None)
    phi = structure.frattini(G, caps)
    witnesses = search_order_p_automorphisms(G, phi, caps)
    noninner = [w for w in witnesses if w.is_noninner]
    scan = coset_shift_scan(G, caps)
    for (M, g, z, alpha) in scan:
        if alpha.order() != G.prime or not alpha.fixes_pointwise(phi):
            return ("fail", "", None, {"scan witness failed validation": z.vec})
    if noninner:
        return ("pass", "", {"noninner_exists": True,
                             "scan_witnesses": len(scan)}, None)
    # hypothesis holds: the inclusion must be exact everywhere
    if scan:
        return ("fail", "", None,
                {"scan found a shift witness but the search found no noninner map": len(scan)})
    om = structure.omega1(structure.center(G, caps), caps)
    for M in structure.maximal_subgroups(G, caps):
        zm = structure.center_of_subgroup(G, M, caps)
        for g in G.elements():
            if M.membership(g):
                continue
            image = {a.commutator(g).vec for a in zm.elements()}
            missing = [z.vec for z in om.elements() if z.vec not in image]
            if missing:
                return ("fail", "", None,
                        {"M": M.key(), "g": g.vec, "outside": missing})
    return ("pass", "", {"noninner_exists": False, "inclusion": "verified"}, None)


def check_lemma_2_2(entry, caps):
    """The central automorphisms with socle defects fixing the socle form
    a group of size |socle|^rank(G / socle G') whose members all fix the
    Frattini subgroup pointwise (verified inside the constructor)."""
    G = entry.presentation
    if G.order > caps.element_sweep:
        return ("skip", "above the sweep cap", None, None)
    members, homs = central_socle_automorphisms(G, caps)
    return ("pass", "", {"size": len(members)}, None)


def check_cor_2_3(entry, caps):
    """Either d(Z_2/Z) = d(Z) * d(G), or the search exhibits a noninner
    order-p automorphism fixing the Frattini subgroup pointwise."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    if G.order > caps.auto_search:
        return ("skip", f"order {G.order} above the search cap", None, None)
    ucs = structure.upper_central_series(G, caps)
    Z = ucs[1]
    Z2 = ucs[2] if len(ucs) > 2 else ucs[-1]
    lhs = len(structure.section_invariants(G, Z2, Z))
    rhs = structure.d_abelian(Z, caps) * structure.rank_d(G, caps)
    if lhs == rhs:
        return ("pass", "", {"d_z2_mod_z": lhs, "product": rhs}, None)
    phi = structure.frattini(G, caps)
    for w in search_order_p_automorphisms(G, phi, caps):
        if w.is_noninner:
            return ("pass", "", {"d_z2_mod_z": lhs, "product": rhs,
                                 "witness": _witness_payload(w)}, None)
    return ("fail", "", None, {"d_z2_mod_z": lhs, "product": rhs,
                               "witness": "none found"})


def check_cor_2_4(entry, caps):
    """Coclass one forces a noninner order-p automorphism fixing the
    Frattini subgroup pointwise; exhibit and validate one."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    n = p_valuation(G.order, G.prime)
    if n <= 2:
        return ("skip", "order at most p^2", None, None)
    if structure.coclass(G) != 1:
        return ("skip", "coclass is not 1", None, None)
    if G.order > caps.auto_search:
        return ("skip", f"order {G.order} above the search cap", None, None)
    phi = structure.frattini(G, caps)
    for w in search_order_p_automorphisms(G, phi, caps):
        if w.is_noninner:
            return ("pass", "", _witness_payload(w), None)
    return ("fail", "", None, {"witness": "none found"})


def check_thm_2_5(entry, caps):
    """Either d(Z)(d(G)+1) <= coclass+1, or a noninner order-p
    automorphism fixing the Frattini subgroup pointwise exists."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    n = p_valuation(G.order, G.prime)
    if n <= 2:
        return ("skip", "order at most p^2", None, None)
    if G.order > caps.auto_search:
        return ("skip", f"order {G.order} above the search cap", None, None)
    ell = structure.d_abelian(structure.center(G, caps), caps)
    d = structure.rank_d(G, caps)
    c = structure.coclass(G)
    if ell * (d + 1) <= c + 1:
        return ("pass", "", {"bound": f"{ell}*({d}+1) <= {c}+1"}, None)
    phi = structure.frattini(G, caps)
    for w in search_order_p_automorphisms(G, phi, caps):
        if w.is_noninner:
            return ("pass", "", {"bound_failed": f"{ell}*({d}+1) > {c}+1",
                                 "witness": _witness_payload(w)}, None)
    return ("fail", "", None, {"bound_failed": f"{ell}*({d}+1) > {c}+1",
                               "witness": "none found"})


def check_thm_2_6(entry, caps):
    """Nonabelian G with powerful central quotient has a noninner
    automorphism of order p fixing the Frattini subgroup pointwise (odd p,
    or p = 2 with noncyclic center) or fixing omega1(Z(G)) pointwise
    (p = 2, cyclic center)."""
    G = entry.presentation
    try:
        w = powerful_quotient_witness(G, caps)
    except HypothesesUnmet as e:
        return ("skip", e.reason, None, None)
    except CapExceeded as e:
        return ("refused", str(e), None, None)
    if not w.is_noninner or w.order != G.prime:
        return ("fail", "", None, _witness_payload(w))
    ok_sets = {"frattini"}
    if G.prime == 2 and structure.d_abelian(structure.center(G, caps), caps) == 1:
        ok_sets.add("omega1-center")
    if w.fixed_set not in ok_sets:
        return ("fail", "", None, _witness_payload(w))
    return ("pass", "", _witness_payload(w), None)


def check_lemma_2_8(entry, caps):
    """Two-generated class-2 groups: the center is generated by a^k, b^k
    and [a, b] with k the order of [a, b], and d(Z) <= 3."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    if structure.rank_d(G, caps) != 2:
        return ("skip", "not 2-generated", None, None)
    if structure.nilpotency_class(G) > 2:
        return ("skip", "class exceeds 2", None, None)
    if G.order > caps.element_sweep:
        return ("skip", "above the sweep cap", None, None)
    # find a generating pair among elements (pc generators first)
    Z = structure.center(G, caps)
    pairs = []
    gens = G.gens()
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if subgroup_closure(G, [gens[i], gens[j]]).order == G.order:
                pairs.append((gens[i], gens[j]))
    if not pairs:
        import itertools

        for a, b in itertools.product(G.elements(), repeat=2):
            if subgroup_closure(G, [a, b]).order == G.order:
                pairs.append((a, b))
                break
    for a, b in pairs[:4]:
        k = a.commutator(b).order()
        gen = subgroup_closure(G, [a ** k, b ** k, a.commutator(b)])
        if gen != Z:
            return ("fail", "", None,
                    {"a": a.vec, "b": b.vec, "k": k,
                     "generated": gen.key(), "center": Z.key()})
    if structure.d_abelian(Z, caps) > 3:
        return ("fail", "", None, {"d_center": structure.d_abelian(Z, caps)})
    return ("pass", "", {"pairs_checked": min(len(pairs), 4)}, None)


def check_thm_2_9(entry, caps):
    """Class 3, 2-generated central quotient, noncyclic center: a noninner
    order-p automorphism fixing the Frattini subgroup pointwise exists."""
    G = entry.presentation
    if structure.is_abelian(G):
        return ("skip", "abelian", None, None)
    if structure.nilpotency_class(G) != 3:
        return ("skip", "class is not 3", None, None)
    cq = structure.central_quotient(G, caps)
    if structure.rank_d(cq, caps) != 2:
        return ("skip", "central quotient not 2-generated", None, None)
    if structure.d_abelian(structure.center(G, caps), caps) == 1:
        return ("skip", "center is cyclic", None, None)
    if G.order > caps.auto_search:
        return ("skip", f"order {G.order} above the search cap", None, None)
    phi = structure.frattini(G, caps)
    for w in search_order_p_automorphisms(G, phi, caps):
        if w.is_noninner:
            return ("pass", "", _witness_payload(w), None)
    return ("fail", "", None, {"witness": "none found"})


def _norm_check(case):
    def run(entry, caps):
        G = entry.presentation
        if G.order > caps.element_sweep or G.order > caps.subgroup_enum:
            return ("skip", "above the sweep cap", None, None)
        try:
            rep = cohomology.norm_identity_report(G, case, caps)
        except HypothesesUnmet as e:
            return ("skip", e.reason, None, None)
        if rep["status"] != "pass":
            return ("fail", "", None, rep["counterexample"])
        return ("pass", "", {"tuples_checked": rep["tuples_checked"]}, None)

    return run


def check_prop_3_5(entry, caps):
    """Every center module with vanishing degree-zero cohomology has
    fixed-point centralizers equal to the acting subgroup."""
    G = entry.presentation
    if G.order > caps.subgroup_enum:
        return ("skip", "above the enumeration cap", None, None)
    verified = 0
    skipped = 0
    for N in enumerate_normal_subgroups(G, caps):
        if N.is_trivial():
            continue
        try:
            M = cohomology.module_of(G, N, caps)
        except CapExceeded:
            skipped += 1
            continue
        rep = cohomology.fixed_point_centralizer_report(M, caps)
        if rep["status"] == "fail":
            return ("fail", "", None, {"N": N.key(), **rep["counterexample"]})
        if rep["status"] == "skip":
            skipped += 1
        else:
            verified += 1
    return ("pass", "", {"modules_verified": verified,
                         "not_cohomologically_trivial": skipped}, None)


def check_thm_3_6(entry, caps):
    """For every nontrivial normal N with noncyclic quotient, both H0 and
    H1 of the center module are nonzero, and vanishing in one degree
    matches vanishing in the other."""
    G = entry.presentation
    p = G.prime
    cls = structure.nilpotency_class(G)
    applies = cls <= 2
    if not applies and p > 2:
        cq = structure.central_quotient(G, caps)
        applies = structure.nilpotency_class(cq) <= 2 or structure.is_p_central(cq, caps)
    if not applies:
        return ("skip", "neither hypothesis branch applies", None, None)
    if G.order > caps.subgroup_enum:
        return ("skip", "above the enumeration cap", None, None)
    modules = 0
    for N in enumerate_normal_subgroups(G, caps):
        if N.is_trivial() or quotient(G, N).is_cyclic():
            continue
        try:
            rep = cohomology.nonvanishing_report(G, N, caps)
        except HypothesesUnmet:
            continue
        except CapExceeded:
            continue
        if rep["status"] != "pass" or not rep["degree_consistency"]:
            return ("fail", "", None, {"N": N.key(), "h0": rep["h0"], "h1": rep["h1"]})
        modules += 1
    if modules == 0:
        return ("skip", "no admissible normal subgroup", None, None)
    return ("pass", "", {"modules": modules}, None)


def check_lemma_3_7(entry, caps):
    G = entry.presentation
    try:
        rep = cohomology.cocycle_exponent_report(G, caps)
    except HypothesesUnmet as e:
        return ("skip", e.reason, None, None)
    except CapExceeded as e:
        return ("refused", str(e), None, None)
    if rep["status"] != "pass":
        return ("fail", "", None, rep["counterexample"])
    return ("pass", "", {"z1_size": rep["z1_size"]}, None)


def check_second_proof(entry, caps):
    """The cohomological route and the direct construction agree in
    existence; the route's witness is validated."""
    G = entry.presentation
    try:
        w = cohomological_witness(G, caps)
    except HypothesesUnmet as e:
        return ("skip", e.reason, None, None)
    except CapExceeded as e:
        return ("refused", str(e), None, None)
    if not w.is_noninner or w.order != G.prime:
        return ("fail", "", None, _witness_payload(w))
    direct = powerful_quotient_witness(G, caps)
    if not direct.is_noninner:
        return ("fail", "", None, {"direct construction disagreed": direct.path})
    return ("pass", "", _witness_payload(w), None)


def check_liebeck(entry, caps):
    """The order-128 fixture: the order-2 automorphisms fixing the
    Frattini subgroup pointwise are exactly the three sigma shifts, all
    inner."""
    G = entry.presentation
    if G.order != 128 or entry.id != "liebeck128":
        return ("skip", "only the order-128 fixture", None, None)
    phi = structure.frattini(G, caps)
    ws = search_order_p_automorphisms(G, phi, caps)
    sigmas = {liebeck_sigma(G, r, s).key()
              for (r, s) in ((0, 1), (1, 0), (1, 1))}
    found = {w.automorphism.key() for w in ws}
    if found != sigmas:
        return ("fail", "", None, {"found": sorted(found), "expected": sorted(sigmas)})
    if any(w.is_noninner for w in ws):
        return ("fail", "", None, {"noninner sigma": True})
    return ("pass", "", {"count": len(ws)}, None)


CHECKS = {
    "prop-1.3": (check_prop_1_3,
                 "cocycle group bijects with the pointwise-fixing automorphism slice"),
    "lemma-2.1": (check_lemma_2_1,
                  "no noninner Frattini-fixing map forces the socle inside every [Z(M), g]"),
    "lemma-2.2": (check_lemma_2_2,
                  "central socle automorphism count and Frattini fixing"),
    "cor-2.3": (check_cor_2_3,
                "second-center rank product or an exhibited noninner witness"),
    "cor-2.4": (check_cor_2_4,
                "coclass one yields a noninner order-p witness fixing Frattini"),
    "thm-2.5": (check_thm_2_5,
                "coclass bound or an exhibited noninner witness"),
    "thm-2.6": (check_thm_2_6,
                "powerful central quotient yields a validated noninner witness"),
    "lemma-2.8": (check_lemma_2_8,
                  "two-generator class-2 center generation and rank bound"),
    "thm-2.9": (check_thm_2_9,
                "class-3 with 2-generated central quotient and noncyclic center"),
    "lemma-3.1": (_norm_check("pcentral-odd"),
                  "norm identity, odd p with p-central central quotient"),
    "lemma-3.2": (_norm_check("class3-odd"),
                  "norm identity, odd p, class at most 3"),
    "lemma-3.3": (_norm_check("class3-even"),
                  "norm identity, p = 2, class at most 3"),
    "lemma-3.4": (_norm_check("class2"),
                  "norm identity, class at most 2"),
    "prop-3.5": (check_prop_3_5,
                 "fixed-point centralizers for cohomologically trivial modules"),
    "thm-3.6": (check_thm_3_6,
                "H0 and H1 nonvanishing over all admissible normal subgroups"),
    "lemma-3.7": (check_lemma_3_7,
                  "cocycle group of the Frattini module is elementary abelian"),
    "second-proof": (check_second_proof,
                     "cohomological witness route agrees with the direct construction"),
    "liebeck-sigma": (check_liebeck,
                      "order-128 fixture: Frattini-fixing involutions are the sigma shifts"),
}


def run_check(check_id, entries=None, caps=DEFAULT_CAPS, group_id=None):
    if check_id not in CHECKS:
        raise DomainError(f"unknown check id {check_id!r}")
    entries = entries if entries is not None else builtin_corpus()
    if group_id is not None:
        entries = [e for e in entries if e.id == group_id]
        if not entries:
            raise DomainError(f"no corpus entry named {group_id!r}")
    fn, _ = CHECKS[check_id]
    results = []
    for entry in sorted(entries, key=lambda e: e.id):
        t0 = time.perf_counter()
        try:
            status, reason, witness, counterexample = fn(entry, caps)
        except CapExceeded as e:
            status, reason, witness, counterexample = "refused", str(e), None, None
        except HypothesesUnmet as e:
            status, reason, witness, counterexample = "skip", e.reason, None, None
        ms = int((time.perf_counter() - t0) * 1000)
        results.append(
            CheckResult(check_id, entry.id, status, reason, witness,
                        counterexample, ms)
        )
    return results


def run_all(entries=None, caps=DEFAULT_CAPS, check_ids=None):
    entries = entries if entries is not None else builtin_corpus()
    ids = sorted(check_ids if check_ids is not None else CHECKS)
    results = []
    for cid in ids:
        results.extend(run_check(cid, entries, caps))
    results.sort(key=lambda r: (r.check_id, r.group_id))
    return results


def report_dict(results, caps=DEFAULT_CAPS):
    from pgforge.kernel import BACKEND

    summary = {"pass": 0, "fail": 0, "skip": 0, "refused": 0}
    for r in results:
        summary[r.status] += 1
    return {
        "schema": "forge-report/1",
        "kernel_backend": BACKEND,
        "caps": {
            "element_sweep": caps.element_sweep,
            "subgroup_enum": caps.subgroup_enum,
            "auto_search": caps.auto_search,
            "cohomology": caps.cohomology,
            "bijection": caps.bijection,
        },
        "results": [r.to_dict() for r in results],
        "summary": summary,
        "exit_code": exit_code(results),
    }


def exit_code(results) -> int:
    if any(r.status == "fail" for r in results):
        return 1
    if any(r.status == "refused" for r in results):
        return 2
    return 0


def report_json(results, caps=DEFAULT_CAPS, strip_timing=False) -> str:
    doc = report_dict(results, caps)
    if strip_timing:
        for r in doc["results"]:
            r["timing_ms"] = 0
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
