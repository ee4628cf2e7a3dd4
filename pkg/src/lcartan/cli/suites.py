"""The verification suites behind each subcommand."""

from __future__ import annotations

import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..cohomology import (ce_complex, composition_accounting, g0_lie_algebra, koszul_complex,
                          resolution_differential, ulc_cohomology_windowed)
from ..g0rep.weights import check_dominant
from ..lcmod.base import GradedLCModule, Window
from ..lcmod.modules import build_delta, prolong_v_lambda, tensor_with_R
from ..lcmod.ops import freeness_check, hom_dimension, irreducible_lc_check, lc_axiom_check, radical_lc
from ..natalg import axiom_suite
from ..vecfields.algebra import AlgebraKind, algebra_suite, exceptional_weights, get_algebra
from .config import ConfigError, RunConfig
from .report import VerificationReport

__all__ = ["algebra_report", "module_report", "hom_report", "cohomology_report", "natalg_report",
           "parse_module_spec", "build_module", "SUITES"]


def _timed(rep: VerificationReport, key: str, fn: Callable):
    t = time.perf_counter()
    out = fn()
    rep.timing[key] = time.perf_counter() - t
    return out


def algebra_report(cfg: RunConfig) -> VerificationReport:
    kind = cfg.algebra_kind
    rep = VerificationReport("algebra", cfg.echo())
    lo, hi = cfg.window
    res = _timed(rep, "suite", lambda: algebra_suite(kind, lo, hi))
    rep.add("grading", not res["grading_failures"], {"pairs": res["pairs_checked"]}, res["grading_failures"])
    rep.add("closure", not res["closure_failures"], {"pairs": res["pairs_checked"]}, res["closure_failures"])
    rep.add("jacobi", res["jacobi_failure_count"] == 0, {"triples": res["triples_checked"]}, res["jacobi_failures"])
    rep.add(f"g0 isomorphic to {res['g0_target']}", res["g0_isomorphism"])
    alg = get_algebra(kind)
    rep.artifacts["dims"] = res["dims"]
    rep.artifacts["basis"] = {str(k): [X.to_text() for X in alg.basis(k)] for k in range(max(lo, -1), hi + 1)}
    return rep


# ---------------------------------------------------------------------------
# module specs: "V:1,0@0" (prolongation, depth 0), "D:0,0@1" (standard), "DR:0,0@1" (standard ⊗ R)
# ---------------------------------------------------------------------------

def parse_module_spec(kind: AlgebraKind, spec: str) -> Tuple[str, Tuple[int, ...], int]:
    try:
        tag, rest = spec.split(":", 1)
        if "@" in rest:
            w, d = rest.split("@", 1)
            depth = int(d)
        else:
            w, depth = rest, 0
        lam = tuple(int(x) for x in w.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigError(f"bad module spec {spec!r}; expected TAG:w1,w2[@depth] with TAG in V, D, DR") from exc
    tag = tag.upper()
    if tag not in ("V", "D", "DR"):
        raise ConfigError(f"bad module tag {tag!r}")
    try:
        lam = check_dominant(kind, lam)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return tag, lam, depth


def build_module(kind: AlgebraKind, spec: str, window: Window) -> GradedLCModule:
    tag, lam, depth = parse_module_spec(kind, spec)
    if tag == "V":
        return prolong_v_lambda(kind, lam, depth, window)
    D = build_delta(kind, lam, depth, window)
    return tensor_with_R(D) if tag == "DR" else D


def module_report(cfg: RunConfig, v_lambdas: Sequence[Sequence[int]] = (), delta_r: Sequence[Sequence[int]] = ()
                  ) -> VerificationReport:
    kind = cfg.algebra_kind
    W = cfg.window_obj
    rep = VerificationReport("module", cfg.echo())
    lams = [tuple(l) for l in v_lambdas] or [tuple(w) for w in cfg.weights] or [(0,) * kind.weight_length]
    exc = set(exceptional_weights(kind))
    bundles = {}
    for lam in lams:
        lam = check_dominant(kind, lam)
        tag = f"V{list(lam)}"
        V = prolong_v_lambda(kind, lam, 0, W)
        ax = _timed(rep, f"{tag} axioms", lambda: lc_axiom_check(V))
        rep.add(f"{tag} LC-1", ax["lc1_ok"], {"triples": ax["checked_triples"]}, ax["lc1_violations"])
        rep.add(f"{tag} theta commute", ax["theta_commute_ok"], None, ax["theta_commute_violations"])
        rep.add(f"{tag} LC-2", ax["lc2_ok"])
        fr = freeness_check(V)
        rep.add(f"{tag} freeness", fr["ok"], {k: v["rank"] for k, v in fr["degrees"].items()})
        irr = irreducible_lc_check(V, "lc")
        rep.add(f"{tag} LC-irreducible", irr["irreducible"], None, irr.get("witness"))
        irr_g = irreducible_lc_check(V, "g")
        if kind.family in ("W", "S"):
            expected = lam not in exc
            rep.add(f"{tag} g-irreducible == (non-exceptional)", irr_g["irreducible"] == expected,
                    {"g_irreducible": irr_g["irreducible"], "exceptional": not expected, "reason": irr_g["reason"]},
                    irr_g.get("witness"))
        else:
            rep.add(f"{tag} g-irreducibility reported", True,
                    {"g_irreducible": irr_g["irreducible"], "reason": irr_g["reason"],
                     "witness": irr_g.get("witness")})
        bundles[tag] = V.to_json_obj()
    for lam in delta_r:
        lam = check_dominant(kind, lam)
        tag = f"DR{list(lam)}"
        M = tensor_with_R(build_delta(kind, lam, 0, W))
        rad = _timed(rep, f"{tag} radical", lambda: radical_lc(M))
        rep.add(f"{tag} radical closed", rad["closed_in_window"], None, rad["closure_witness"])
        rep.add(f"{tag} M = D + Rad", rad["M_equals_D_plus_N"], rad["D_plus_N_dims"])
        rep.add(f"{tag} quotient dims = V(lambda) dims", rad["quotient_matches_prediction"],
                {"quotient": rad["quotient_dims"], "predicted": rad["quotient_dims_predicted"]})
        V = prolong_v_lambda(kind, lam, 0, W)
        rep.add(f"{tag} quotient dims = built V(lambda)",
                all(rad["quotient_dims"][str(i)] == V.dim(i) for i in W.degrees()))
        bundles[tag] = {"dims": {str(i): M.dim(i) for i in W.degrees()}, "radical_dims": rad["radical_dims"]}
    rep.artifacts["modules"] = bundles
    return rep


def hom_report(cfg: RunConfig, sources: Sequence[str], targets: Sequence[str], mode: str = "lc"
               ) -> VerificationReport:
    kind = cfg.algebra_kind
    W = cfg.window_obj
    rep = VerificationReport("hom", dict(cfg.echo(), mode=mode))
    table = []
    mods: Dict[str, GradedLCModule] = {}
    for s in list(sources) + list(targets):
        if s not in mods:
            mods[s] = build_module(kind, s, W)
    for s in sources:
        for t in targets:
            B = _timed(rep, f"{s}->{t}", lambda: hom_dimension(mods[s], mods[t], mode))
            table.append({"source": s, "target": t, "dim": B.dim, "stable": B.stable, "dim_next_window": B.dim_next})
            rep.add(f"hom({s}, {t}) stable", bool(B.stable), {"dim": B.dim, "next": B.dim_next})
    rep.artifacts["table"] = table
    return rep


def cohomology_report(cfg: RunConfig, ce: Optional[str] = None, koszul: Optional[str] = None,
                      strands: Tuple[int, int] = (0, 6), ulc: Optional[str] = None, q: Tuple[int, int] = (0, 1),
                      resolution: Optional[str] = None, accounting: Optional[str] = None) -> VerificationReport:
    rep = VerificationReport("cohomology", cfg.echo())
    if ce:
        name = ce.lower().replace("(", "").replace(")", "")
        fam = {"gl": "W", "sl": "S", "sp": "H"}.get(name[:2])
        if fam is None:
            raise ConfigError(f"--ce expects gl<n>, sl<n> or sp<n>, got {ce!r}")
        kind = AlgebraKind(fam, int(name[2:]))
        L = g0_lie_algebra(kind)
        if L.dim > 10:
            rep.skip(f"CE {L.name}", f"dim {L.name} = {L.dim} exceeds the cap 10")
        else:
            C = _timed(rep, "ce", lambda: ce_complex(L))
            r = C.report()
            rep.add(f"CE {L.name} d∘d = 0", r.dd_zero)
            rep.add(f"CE {L.name} Euler consistency", r.euler_consistent)
            rep.artifacts["ce"] = {"algebra": L.name, "betti": r.betti, "csv": r.betti_csv()}
    if koszul:
        kind = AlgebraKind.parse(koszul)
        C = _timed(rep, "koszul", lambda: koszul_complex(kind, range(strands[0], strands[1] + 1)))
        r = C.report()
        rep.add(f"Koszul {kind.label} d∘d = 0", r.dd_zero)
        for s in r.strands:
            exp = [1] + [0] * (len(s["homology"]) - 1) if s["index"] == 0 else [0] * len(s["homology"])
            rep.add(f"Koszul {kind.label} strand {s['index']} homology", s["homology"] == exp,
                    {"dims": s["dims"], "homology": s["homology"]}, {"expected": exp})
        rep.artifacts["koszul"] = r.to_json_obj()
    if accounting:
        kind = AlgebraKind.parse(accounting)
        a = composition_accounting(kind, max_degree=cfg.window[1] if kind.family != "H" else 6,
                                   window=cfg.window_obj)
        if kind.family == "H":
            rep.add(f"{kind.label} V(omega_1) g-reducible", a["g_reducible"], {"limitation": a["limitation"]},
                    a["witness"])
            rep.artifacts["accounting"] = a
        else:
            rep.add(f"{kind.label} composition conservation", a["conservation_ok"])
            rep.artifacts["accounting"] = a["factors"]
    if ulc:
        kind = AlgebraKind.parse(ulc)
        r = _timed(rep, "ulc", lambda: ulc_cohomology_windowed(kind, cfg.caps, q[1]))
        rep.add(f"ULC {kind.label} d∘d = 0", r.stability["dd_zero_all"])
        rep.add(f"ULC {kind.label} stable at consecutive caps", r.stability["stable"], r.stability["per_cap"])
        if "matches_gl" in r.annotations:
            rep.add(f"ULC {kind.label} matches H(gl({kind.n}))", r.annotations["matches_gl"],
                    {"ulc": r.betti, "gl": r.annotations["gl_betti"]})
        rep.artifacts["ulc"] = r.to_json_obj()
    if resolution:
        kind = AlgebraKind.parse(resolution)
        res = _timed(rep, "resolution", lambda: resolution_differential(kind, q_max=min(cfg.q_max, 2)))
        rep.add("kappa ∘ d0 = 0", res["kappa_d0"]["ok"], {"checked": res["kappa_d0"]["checked"]},
                res["kappa_d0"]["witness"])
        for q_ in range(1, min(cfg.q_max, 2) + 1):
            key = f"d{q_ - 1}_d{q_}"
            rep.add(f"d{q_ - 1} ∘ d{q_} = 0", res[key]["ok"], {"checked": res[key]["checked"]}, res[key]["witness"])
        rep.artifacts["resolution"] = res
    return rep


def natalg_report(cfg: RunConfig, samples: int = 200) -> VerificationReport:
    kind = cfg.algebra_kind
    rep = VerificationReport("natalg", cfg.echo())
    lo, hi = cfg.window
    res = _timed(rep, "axioms", lambda: axiom_suite(kind, lo, hi, word_cap=3, samples=samples, seed=cfg.seed))
    plus = res["associativity"]["plus"]
    rep.add("associativity on generator triples", plus["witness"] is None, {"triples": plus["checked_triples"]},
            plus["witness"])
    rep.add("associativity on seeded composite sample", plus["sampled"]["witness"] is None,
            {"sampled": plus["sampled"]["sampled"], "seed": cfg.seed}, plus["sampled"]["witness"])
    rep.add("(N2) U(g) embeds multiplicatively", res["N2"])
    rep.add("(N3) R embeds multiplicatively", res["N3"])
    rep.add("(N4) (a⊗1)(1⊗X) = a⊗X", res["N4"])
    rep.add("(N5) plus-sign convention", res["N5_plus"]["holds"], None, res["N5_plus"]["witness"])
    rep.add("R is a module over the naturalized algebra", res["R_module_ok"])
    minus = res["associativity"]["minus"]
    rep.add("(N5) sign audit is definitive", plus["assoc_ok"] != minus["assoc_ok"],
            {"finding": res["N5_finding"], "minus_sign_witness": minus["witness"],
             "minus_sign_table_check": res["N5_minus"]["witness"]})
    return rep


SUITES = ("algebra", "module", "hom", "cohomology", "natalg")
