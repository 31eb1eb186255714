"""wmbkit command line: verify | antipode | base.

Exit codes: 0 all laws pass (skips allowed), 1 a law failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import algebra as al
from . import antipode as ap
from . import base, constructors, wmb
from .wmb import Sampler

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    catalog: Optional[str] = None
    cat: Optional[str] = None
    construction: str = "span"
    laws: str = "all"
    seed: int = 0
    samples: int = 200
    fmt: str = "text"
    out: Optional[str] = None
    expect_found: bool = False

    @property
    def sampler(self) -> Sampler:
        return Sampler(self.seed, self.samples)


def load_instance(cfg: RunConfig) -> wmb.WMBInstance:
    if cfg.catalog:
        try:
            return constructors.catalog(cfg.catalog)
        except KeyError as exc:
            raise InputError(f"unknown catalog instance {cfg.catalog!r}; "
                             f"known: {', '.join(constructors.CATALOG_NAMES)}") from exc
    try:
        with open(cfg.cat, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.cat}: {exc.strerror}") from exc
    try:
        p = constructors.parse_presentation(text)
        return constructors.build(p, cfg.construction)
    except constructors.PresentationSyntaxError as exc:
        raise InputError(f"SyntaxError: {cfg.cat}:{exc.line}:{exc.col}: {exc.msg}") from exc
    except constructors.ValidationError as exc:
        raise InputError(f"ValidationError: {cfg.cat}: {exc}") from exc
    except constructors.FiberNotFinite as exc:
        raise InputError(f"FiberNotFinite: {cfg.cat}: {exc}") from exc


def _instance_meta(w: wmb.WMBInstance) -> dict:
    d = {"name": w.name, "backend": w.alg.backend, "flags": {"regular": w.regular}}
    if w.dense:
        d["dim"] = len(w.basis)
    for k, v in sorted(w.declared.items()):
        d["flags"][k] = v
    return d


def _law_json(r: wmb.LawResult, sampler: Sampler) -> dict:
    d = r.to_json()
    if r.mode.startswith("sampled"):
        d["samples"] = sampler.n
        d["seed"] = sampler.seed
    return d


def _laws_failed(*reports) -> bool:
    return any(not rep.ok for rep in reports)


def cmd_verify(cfg: RunConfig, w: wmb.WMBInstance) -> tuple:
    s = cfg.sampler
    try:
        law_ids = "axioms" if cfg.laws == "axioms" else cfg.laws
        wmb.resolve_laws(law_ids)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from exc
    rep = wmb.verify(w, law_ids, s)
    cl = wmb.classify(w, s)
    vi = wmb.verify_vi_equivalents(w, s)
    agree = {"right_full": cl.right_agree, "left_full": cl.left_agree, "multiplier_bialgebra": cl.mb_agree}
    cls = cl.to_json()
    cls["criteria_agree"] = agree
    report = {"instance": _instance_meta(w), "classification": cls,
              "laws": [_law_json(r, s) for r in rep.results],
              "axiom_vi_equivalents": [_law_json(r, s) for r in vi.results]}
    failed = _laws_failed(rep, vi) or not all(agree.values())
    return report, EXIT_FAIL if failed else EXIT_OK


def _axioms_first(w, s) -> Optional[wmb.LawReport]:
    rep = wmb.verify(w, "axioms", s)
    return None if rep.ok else rep


def cmd_antipode(cfg: RunConfig, w: wmb.WMBInstance) -> tuple:
    s = cfg.sampler
    report = {"instance": _instance_meta(w)}
    bad = _axioms_first(w, s)
    if bad is not None:
        report["laws"] = [_law_json(r, s) for r in bad.results]
        report["antipode"] = {"status": "not run: axioms fail"}
        return report, EXIT_FAIL
    if not w.regular:
        report["antipode"] = {"status": "not run: instance is not regular"}
        return report, EXIT_FAIL if cfg.expect_found else EXIT_OK
    res = ap.antipode(w, s)
    report["antipode"] = res.to_json(w)
    code = EXIT_OK
    if res.found:
        props = wmb.verify(w, list(ap.AXIOM_IDS + ap.PROPERTY_IDS + ap.ENDOMAP_IDS),
                           ctx=ap.antipode_ctx(w, res.S, s, res.R))
        report["laws"] = [_law_json(r, s) for r in props.results]
        if not props.ok:
            code = EXIT_FAIL
    elif cfg.expect_found:
        code = EXIT_FAIL
    return report, code


def cmd_base(cfg: RunConfig, w: wmb.WMBInstance) -> tuple:
    s = cfg.sampler
    report = {"instance": _instance_meta(w)}
    bad = _axioms_first(w, s)
    if bad is not None:
        report["laws"] = [_law_json(r, s) for r in bad.results]
        return report, EXIT_FAIL
    rep = wmb.verify(w, "base", s)
    report["laws"] = [_law_json(r, s) for r in rep.results]
    fs = al.fmt_scalar
    if not w.dense:
        report["base"] = {"status": "not materialised on the lazy backend"}
    else:
        try:
            bc = base.base_coalgebra(w, "R")
            block = {"dim": bc.dim}
            try:
                block["nakayama"] = [[fs(c) for c in row] for row in base.nakayama(w, "R")]
            except base.DegenerateForm as exc:
                block["nakayama"] = f"DegenerateForm: {exc}"
            block["coalgebra"] = bc.to_json()
            try:
                sm = base.sigma_maps(w)
                block["sigma"] = {k: v[0] for k, v in sorted(sm.certificates.items())}
                block["nakayama_via_sigma"] = [[fs(c) for c in row] for row in base.nakayama_via_sigma(w)]
                block["E_F"] = "pass" if base.e_f_relation(w) is None else base.e_f_relation(w)
            except base.NotFull as exc:
                block["sigma"] = f"NotFull: {exc}"
            report["base"] = block
        except (base.NotFull, wmb.NotRegular) as exc:
            report["base"] = {"status": f"{type(exc).__name__}: {exc}"}
    return report, EXIT_FAIL if not rep.ok else EXIT_OK


# ---------------------------------------------------------------- output

def _text(report: dict) -> str:
    lines = []
    meta = report["instance"]
    dim = f", dim {meta['dim']}" if "dim" in meta else ""
    lines.append(f"instance {meta['name']} ({meta['backend']}{dim})")
    if "classification" in report:
        c = report["classification"]
        lines.append("classification: " + ", ".join(
            f"{k}={c[k]}" for k in ("regular", "left_full", "right_full", "multiplier_bialgebra")))
        lines.append("criteria agree: " + ", ".join(f"{k}={v}" for k, v in c["criteria_agree"].items()))
    for key in ("laws", "axiom_vi_equivalents"):
        for r in report.get(key, []):
            extra = f" ({r['reason']})" if r.get("reason") else ""
            lines.append(f"{r['status'].upper():7} {r['id']:18} {r.get('mode', '')} {r.get('checked', 0)}{extra}")
            if r.get("witness"):
                lines.append("        witness: " + json.dumps(r["witness"], sort_keys=True, default=str))
    if "antipode" in report:
        a = report["antipode"]
        lines.append(f"antipode: {a['status']}")
        for row in a.get("S", []):
            lines.append(f"  S({row[0]}) = {json.dumps(row[1], default=str)}")
        if a.get("witness"):
            lines.append("  witness: " + json.dumps(a["witness"], sort_keys=True, default=str))
    if "base" in report:
        b = report["base"]
        if "dim" in b:
            lines.append(f"base dim {b['dim']}")
            lines.append(f"nakayama: {b['nakayama']}")
            if isinstance(b.get("sigma"), dict):
                lines.append("sigma certificates: " + ", ".join(f"{k}={v}" for k, v in b["sigma"].items()))
                lines.append(f"nakayama via sigma: {b['nakayama_via_sigma']}")
                lines.append(f"(id(x)sigma)(E) = F: {b['E_F']}")
            if b["coalgebra"].get("group_like_basis") is not None:
                lines.append(f"group-like basis: {b['coalgebra']['group_like_basis']}")
        else:
            lines.append(f"base: {b['status']}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    return _text(report)


def build_parser() -> argparse.ArgumentParser:
    ap_ = argparse.ArgumentParser(prog="wmbkit", description="Exact checks for weak multiplier bialgebras.")
    sub = ap_.add_subparsers(dest="command", required=True)
    for name, hlp in (("verify", "run the law suite"), ("antipode", "construct and check the antipode"),
                      ("base", "base algebras, base coalgebra, Nakayama map")):
        p = sub.add_parser(name, help=hlp)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--catalog", metavar="NAME")
        src.add_argument("--cat", metavar="PATH", help="category presentation file")
        p.add_argument("--construction", choices=("span", "functional"), default="span")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="PATH")
        if name == "verify":
            p.add_argument("--laws", default="all", help="comma separated ids, a group, 'axioms' or 'all'")
        if name == "antipode":
            p.add_argument("--expect-found", action="store_true")
    return ap_


COMMANDS = {"verify": cmd_verify, "antipode": cmd_antipode, "base": cmd_base}


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    cfg = RunConfig(catalog=ns.catalog, cat=ns.cat, construction=ns.construction,
                    laws=getattr(ns, "laws", "all"), seed=ns.seed, samples=ns.samples, fmt=ns.fmt,
                    out=ns.out, expect_found=getattr(ns, "expect_found", False))
    try:
        w = load_instance(cfg)
        report, code = COMMANDS[ns.command](cfg, w)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    text = render(report, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
