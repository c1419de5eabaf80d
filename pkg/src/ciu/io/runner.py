"""Execute the task blocks of a parsed document and collect a report tree."""

from __future__ import annotations

from dataclasses import asdict

from ..errors import CIUError, GateError, HypothesisError, TheoremContradiction
from ..liaison import CIPair, inverse_construction, run_pipeline
from ..pfaffian import PolyMatrix, identity_suite
from ..reports import (
    cancellation_analysis,
    corollary_check,
    degree_equation,
    generator_degree_facts,
    hf_closed_form_table,
    initial_degree,
    product_generator_check,
    prop_gen_pipeline,
    regularity_bound,
    resolution_degrees,
    socle_degree_bound,
    table,
)
from ..groebner import Ideal
from .parser import InputDocument, SemanticError
from .report import new_report, to_tree


def _pair(doc: InputDocument, name: str) -> CIPair:
    members = doc.ideals[name]
    if len(members) != 2:
        raise SemanticError(f"ideal {name} must have exactly two generators, has {len(members)}")
    return CIPair(doc.polys[members[0]], doc.polys[members[1]])


def _resolution(rd) -> dict:
    return {"generators": list(rd.generators), "syzygies": list(rd.syzygies), "twists": rd.render()}


def hilbert_section(K: Ideal, degrees, pi, hypothesis_ok: bool) -> dict:
    """Closed-form and computed numerical data of the union ``K``."""
    d1, e1, d2, e2 = degrees
    out = {"hf_computed": table(K.artinian_hf()).values, "degree_computed": K.degree()}
    if not hypothesis_ok:
        out["closed_form"] = "skipped: minimum-degree hypothesis violated"
        return out
    closed = hf_closed_form_table(d1, e1, d2, e2, pi)
    rd = resolution_degrees(d1, e1, d2, e2, pi)
    sb = socle_degree_bound(d1, e1, d2, e2, pi)
    lhs, rhs = degree_equation(d1, e1, d2, e2, pi)
    out.update(
        hf_closed_form=closed.values,
        hf_agree=closed.values == tuple(out["hf_computed"]),
        socle={"bound": sb.bound, "case": sb.case, "sharp": sb.sharp, "tie": sb.tie, "actual": closed.socle},
        resolution=_resolution(rd),
        regularity_bound=regularity_bound(rd),
        initial_degree=initial_degree(rd),
        degree_equation={"sum_of_squares": lhs, "symbolic": rhs, "computed": 2 * out["degree_computed"]},
    )
    try:
        out["lowest_generators"] = list(generator_degree_facts(d1, e1, d2, e2, pi))
    except HypothesisError as exc:
        out["lowest_generators"] = f"guard failed: {exc}"
    return out


def _pipeline(doc, task, failures):
    X1, X2 = _pair(doc, task.args["X1"]), _pair(doc, task.args["X2"])
    rep = run_pipeline(X1, X2, seed=task.args.get("seed", 0))
    N = rep.normalized
    sec = {
        "normalized": {"f1": N.f1, "g1": N.g1, "f2": N.f2, "g2": N.g2, "degrees": list(N.degrees)},
        "hypothesis_ok": N.hypothesis_ok,
        "notes": list(N.notes),
        "IG": list(rep.IG.generators),
        "n": rep.n,
        "pi": rep.pi,
        "degree_identity": list(rep.degree_identity),
        "flags": rep.flags,
        "skipped": rep.skipped,
    }
    P = rep.presentation
    if P is not None:
        sec["presentation"] = {
            "A": P.A,
            "alpha": P.alpha,
            "beta": P.beta,
            "gamma": P.gamma,
            "g2_reconstructed": P.g2_reconstructed,
            "minors": P.minors,
        }
        sec["verdicts"] = asdict(rep.verdicts)
        sec["g2_relation"] = rep.g2
        sec["syzygy_residual"] = rep.syzygy_residual
        sec["minor_identities"] = list(rep.minor_checks)
    failures.extend(rep.hard_failures)
    K = rep.intersection()
    sec["numerics"] = hilbert_section(K, N.degrees, rep.pi, N.hypothesis_ok)
    if N.hypothesis_ok:
        d1, e1, d2, e2 = N.degrees
        rd = resolution_degrees(d1, e1, d2, e2, rep.pi)
        ca = cancellation_analysis(rd, K, d1, e1, d2, e2, strict=False)
        sec["cancellations"] = {
            "actual": {"generators": list(ca.actual.generators), "syzygies": list(ca.actual.syzygies)},
            "cancelled": ca.cancellations,
            "permitted": ca.permitted,
            "ok": ca.ok,
            "problems": ca.problems,
        }
        failures.extend(ca.problems)
        pr = product_generator_check(N.f1, N.g1, N.f2, N.g2, K, strict=False)
        sec["products"] = {"minimal": pr.minimal, "chosen": list(pr.chosen or ()), "ok": pr.ok}
        if not pr.ok:
            failures.append("no two of the products f1f2, f1g2, g1f2, g1g2 are jointly minimal generators")
    return sec


def _inverse(doc, task, failures):
    ring = doc.ring
    A = PolyMatrix(ring, doc.matrices[task.args["A"]])
    vecs = [doc.vectors[task.args[k]] for k in ("alpha", "beta", "gamma")]
    try:
        res = inverse_construction(A, *vecs)
    except GateError as exc:
        return {"status": "rejected", "gate": exc.gate, "message": str(exc)}
    V = res.verdicts
    if not V.all_true():
        failures.append("inverse construction: union verdicts failed")
    return {
        "X1": [res.X1.f, res.X1.g],
        "X2": [res.X2.f, res.X2.g],
        "verdicts": asdict(V),
    }


def _identities(doc, task, failures):
    a = task.args
    res = identity_suite(a["size"], a["trials"], a["seed"])
    for name in ("cayley", "heymans", "bordered"):
        ok, total = getattr(res, name)
        if ok != total:
            failures.append(f"{name} identity failed on {total - ok} of {total} instances")
    return {
        "size": res.size,
        "trials": res.trials,
        "seed": res.seed,
        "cayley": list(res.cayley),
        "heymans": list(res.heymans),
        "bordered": list(res.bordered),
        "bordered_plus_form": [res.bordered_plus_holds, res.bordered_plus_total],
    }


def _hilbert(doc, task, failures):
    I = Ideal(doc.ring, [doc.polys[m] for m in doc.ideals[task.args["I"]]])
    dim = task.args.get("dim")
    num = I.hilbert_numerator()
    sec = {
        "dimension": I.dimension(),
        "numerator": list(num),
        "hf": [I.hilbert_function(t) for t in range(len(num) + I.ring.nvars)],
    }
    try:
        sec["hf_artinian"] = table(I.artinian_hf(dim)).values
        sec["degree"] = I.degree(dim)
    except CIUError as exc:
        sec["hf_artinian"] = f"unavailable: {exc}"
    return sec


def _propgen(doc, task, failures):
    X1, X2 = _pair(doc, task.args["X1"]), _pair(doc, task.args["X2"])
    f1, g1, f2, g2 = X1.f, X1.g, X2.f, X2.g
    data = prop_gen_pipeline(f1, g1, f2, g2)
    sec = {"applicable": data is not None}
    if data is not None:
        sec.update(
            witness=list(data.witness),
            matrix=data.matrix,
            generators=list(data.generators),
            minors=list(data.minors),
            minors_match=data.minors_match,
            equals_intersection=data.equals_intersection,
            resolution=_resolution(data.resolution),
            hf=data.hf.values,
            hf_X1=data.hf_X1.values,
            hf_X2=data.hf_X2.values,
            additivity=data.additivity,
        )
        if not (data.minors_match and data.equals_intersection and data.additivity):
            failures.append("Hilbert-Burch data inconsistent with the intersection")
    cor = corollary_check(f1, g1, f2, g2)
    sec["corollary"] = {"gate": cor.gate, "reason": cor.reason, "member": cor.member,
                        "decreasing_type": cor.decreasing, "flat_degrees": cor.flats}
    return sec


RUNNERS = {
    "pipeline": _pipeline,
    "inverse": _inverse,
    "identities": _identities,
    "hilbert": _hilbert,
    "propgen": _propgen,
}


def run(doc: InputDocument) -> dict:
    """Run every task in order. ``report["hard_failures"]`` lists contradictions."""
    report = new_report()
    for task in doc.tasks:
        failures = []
        head = {"task": task.kind, "line": task.line}
        try:
            body = RUNNERS[task.kind](doc, task, failures)
            status = body.pop("status", "failed" if failures else "ok")
        except TheoremContradiction as exc:
            body, status = {"message": str(exc)}, "contradiction"
            failures.append(str(exc))
        except CIUError as exc:
            body, status = {"error": type(exc).__name__, "message": str(exc)}, "error"
        sec = dict(head, status=status, **body)
        sec["failures"] = failures
        report["sections"].append(to_tree(sec))
        report["hard_failures"] += [f"line {task.line} ({task.kind}): {f}" for f in failures]
    return report
