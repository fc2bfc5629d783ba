"""Command-line interface: ``modpchar <command> [options]``.

Exit codes: 0 success, 1 a verification returned false, 2 usage or
configuration error, 3 a resource bound was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import alcove, char_ring, jantzen, redmodp, sl2_lab
from .errors import BoundError, ConfigError
from .kl import VARIABLE_CONVENTION, kl_table
from .root_system import RootSystem, builtin, load_cartan_file, pairing

CONFIG_ENV = "MODPCHAR_CONFIG"
FORMATS = ("json", "csv", "text")


class VerificationFailed(Exception):
    """A check ran to completion and returned false."""


@dataclass(frozen=True)
class Config:
    type_label: str = "A1"
    cartan_file: str | None = None
    p: int = 3
    r: int = 1
    max_length: int = redmodp.DEFAULT_MAX_LENGTH
    max_weight: int = 60
    format: str = "json"
    simple_table: str | None = None
    threads: int = 1

    def root_system(self) -> RootSystem:
        if self.cartan_file:
            return load_cartan_file(self.cartan_file)
        return builtin(self.type_label)

    def validate(self, sys: RootSystem) -> None:
        if self.p < 3 or not _is_prime(self.p):
            raise ConfigError(f"p must be an odd prime, got {self.p}")
        if self.r < 1:
            raise ConfigError("r must be >= 1")
        if self.max_length < 1:
            raise ConfigError("max-length must be >= 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if sys.type_label == "G2" and self.p == 3:
            raise ConfigError("G2 with p = 3 is unsupported")


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = set(Config.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def parse_weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in text.split(",") if c.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weight {text!r}; use comma-separated integers") from None


def parse_word(text: str) -> tuple[int, ...]:
    return parse_weight(text) if text.strip() else ()


# ---------------------------------------------------------------------------
# output


def assumptions(kl: bool = False) -> list[str]:
    out = [f"KL variable: {VARIABLE_CONVENTION}"]
    if kl:
        out.insert(0, redmodp.ASSUMES_KL_GOOD)
    return out


def _char_text(ch: char_ring.Character, sys: RootSystem) -> str:
    terms = ch.to_json(sys)["terms"]
    return " + ".join(f"{t['mult']}*e({','.join(map(str, t['wt']))})" for t in terms) or "0"


def _wt(w: Sequence[int]) -> str:
    return ",".join(str(c) for c in w)


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def payload(self, data: dict, text: Callable[[], Iterable[str]], rows: Callable[[], tuple[list, list]]):
        if self.fmt == "json":
            self.out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
        elif self.fmt == "text":
            for line in text():
                self.out.write(line + "\n")
        else:
            header, body = rows()
            w = csv.writer(self.out, lineterminator="\n")
            w.writerow(header)
            w.writerows(body)


def _char_payload(ch, sys, **extra) -> dict:
    return {**extra, "character": ch.to_json(sys)}


def _char_rows(ch, sys):
    return ["wt", "mult"], [[_wt(t["wt"]), t["mult"]] for t in ch.to_json(sys)["terms"]]


def _weyl_rows(coeffs: dict):
    return ["mu", "coeff"], [[_wt(mu), c] for mu, c in sorted(coeffs.items())]


def _weyl_json(coeffs: dict) -> list[dict]:
    return [{"wt": list(mu), "coeff": c} for mu, c in sorted(coeffs.items())]


# ---------------------------------------------------------------------------
# commands


def cmd_chi(args, cfg, sys_, em):
    ch = char_ring.weyl_char(args.gamma, sys_)
    em.payload(_char_payload(ch, sys_, gamma=list(args.gamma), assumptions=assumptions()),
               lambda: [f"chi({_wt(args.gamma)}) = {_char_text(ch, sys_)}",
                        f"dim = {char_ring.dim_eval(ch)}"],
               lambda: _char_rows(ch, sys_))


def cmd_decompose(args, cfg, sys_, em):
    if args.char_file:
        try:
            ch = char_ring.Character.from_json(json.loads(Path(args.char_file).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot read character {args.char_file}: {exc}") from exc
        coeffs = char_ring.decompose_weyl_basis(ch, sys_)
        basis = "weyl"
    else:
        if args.gamma is None:
            raise ConfigError("decompose needs --gamma or --char-file")
        if sys_.type_label != "A1":
            raise ConfigError("decomposition numbers are built in for A1 only")
        if args.quantum:
            coeffs = sl2_lab.a1_quantum_decomposition_numbers(args.gamma, cfg.p, cfg.r)
            basis = f"quantum simple, l = {cfg.p}^{cfg.r}"
        else:
            coeffs = sl2_lab.a1_decomposition_numbers(args.gamma, cfg.p)
            basis = f"simple, p = {cfg.p}"
    data = {"basis": basis, "coefficients": _weyl_json(coeffs), "assumptions": assumptions()}
    em.payload(data, lambda: [f"{basis}: " + ", ".join(f"[{_wt(m)}]:{c}" for m, c in sorted(coeffs.items()))],
               lambda: _weyl_rows(coeffs))


def _level(args, cfg) -> int:
    return args.l if args.l else cfg.p ** cfg.r


def cmd_facet(args, cfg, sys_, em):
    l = _level(args, cfg)
    f = alcove.facet_of(args.gamma, l, sys_)
    u = alcove.upper_closure_facet_of(args.gamma, l, sys_)
    walls = alcove.facet_walls(f, sys_)
    data = {"gamma": list(args.gamma), "l": l, "facet": f.to_json(), "alcove": f.is_alcove,
            "upper_closure_of": u.to_json(),
            "walls": [{"root": a, "value": v} for a, v in walls], "assumptions": assumptions()}
    em.payload(data,
               lambda: [f"facet of {_wt(args.gamma)} at l={l}: {list(f.windows)}",
                        f"upper closure of: {list(u.windows)}", f"walls: {walls}"],
               lambda: (["root", "kind", "n"], [[i, k, n] for i, (k, n) in enumerate(f.windows)]))


def cmd_canon(args, cfg, sys_, em):
    l = _level(args, cfg)
    grp = alcove.affine_weyl_group(sys_, l, cfg.max_length)
    lam, w, J = grp.canonical_form(args.gamma)
    data = {"gamma": list(args.gamma), "l": l, "lambda": list(lam), "w": list(w.word),
            "length": w.length, "J": sorted(J),
            "generators": [{"root": a, "value": v} for a, v in grp.generators],
            "assumptions": assumptions()}
    em.payload(data,
               lambda: [f"{_wt(args.gamma)} = w.({_wt(lam)}), w = s{list(w.word)}, "
                        f"l(w) = {w.length}, J = {sorted(J)}"],
               lambda: (["gamma", "lambda", "w", "length", "J"],
                        [[_wt(args.gamma), _wt(lam), " ".join(map(str, w.word)), w.length,
                          " ".join(map(str, sorted(J)))]]))


def cmd_orbit(args, cfg, sys_, em):
    l = _level(args, cfg)
    orb = alcove.orbit_dominant(args.lam, l, args.bound, sys_)
    data = {"lambda": list(args.lam), "l": l, "bound": args.bound,
            "orbit": [{"wt": list(g), "length": n} for g, n in orb], "assumptions": assumptions()}
    em.payload(data, lambda: [f"{_wt(g)}  length {n}" for g, n in orb],
               lambda: (["wt", "length"], [[_wt(g), n] for g, n in orb]))


def _group(args, cfg, sys_):
    return alcove.affine_weyl_group(sys_, _level(args, cfg), cfg.max_length)


def _poly_out(em, data, poly):
    em.payload(data, lambda: [repr(poly)],
               lambda: (["exp", "coeff"], [[e, c] for e, c in poly.items()]))


def cmd_kl(args, cfg, sys_, em):
    grp = _group(args, cfg, sys_)
    x, y = grp.from_word(args.x), grp.from_word(args.y)
    poly = kl_table(grp).poly(x, y)
    _poly_out(em, {"x": list(x.word), "y": list(y.word), "l": grp.l, **poly.to_json(),
                   "assumptions": assumptions()}, poly)


def cmd_pkl(args, cfg, sys_, em):
    grp = _group(args, cfg, sys_)
    y, w = grp.from_word(args.y), grp.from_word(args.w)
    poly = kl_table(grp).parabolic_kl(args.J, y, w)
    _poly_out(em, {"J": sorted(args.J), "y": list(y.word), "w": list(w.word), "l": grp.l,
                   **poly.to_json(), "value_at_minus_one": poly(-1),
                   "assumptions": assumptions()}, poly)


def cmd_ext_series(args, cfg, sys_, em):
    grp = _group(args, cfg, sys_)
    y, w = grp.from_word(args.y), grp.from_word(args.w)
    table = kl_table(grp)
    if args.kind == "delta-L":
        poly = table.ext_series_delta_L(y, w, args.J)
    else:
        if args.lam is None:
            raise ConfigError("L-L series needs --lam")
        poly = table.ext_series_LL(y, w, args.J, args.lam)
    _poly_out(em, {"kind": args.kind, "J": sorted(args.J), "y": list(y.word), "w": list(w.word),
                   "l": grp.l, **poly.to_json(), "assumptions": assumptions(kl=True)}, poly)


def cmd_jantzen(args, cfg, sys_, em):
    if args.r:
        coeffs = jantzen.chi_J_level_weyl(args.gamma, cfg.p, args.r, sys_)
        label = f"chi_J({_wt(args.gamma)}, {cfg.p}^{args.r})"
    else:
        coeffs = jantzen.chi_J_weyl(args.gamma, cfg.p, sys_)
        label = f"chi_J({_wt(args.gamma)})"
    data = {"gamma": list(args.gamma), "p": cfg.p, "r": args.r}
    if args.decompose:
        data["weyl_basis"] = _weyl_json(coeffs)
    data["character"] = char_ring.from_weyl_basis(coeffs, sys_).to_json(sys_)
    data["assumptions"] = assumptions()
    em.payload(data, lambda: [label + " = " + (" + ".join(f"{c}*chi({_wt(m)})" for m, c
                                                          in sorted(coeffs.items())) or "0")],
               lambda: _weyl_rows(coeffs))


def _simple_table(cfg):
    return redmodp.load_simple_table(cfg.simple_table) if cfg.simple_table else None


def cmd_redchar(args, cfg, sys_, em):
    if args.kind == "red":
        coeffs = redmodp.red_delta_weyl(args.gamma, cfg.p, cfg.r, sys_, cfg.max_length)
        ch = char_ring.from_weyl_basis(coeffs, sys_)
        names = ["Delta_red", "nabla_red"]
        kl = True
    else:
        ch = redmodp.delta_pr_char(args.gamma, cfg.p, cfg.r, sys_, _simple_table(cfg))
        coeffs = char_ring.decompose_weyl_basis(ch, sys_)
        names = ["Delta^{p^r}", "nabla_{p^r}"]
        kl = False
    data = {"gamma": list(args.gamma), "p": cfg.p, "r": cfg.r, "modules": names,
            "weyl_basis": _weyl_json(coeffs), "character": ch.to_json(sys_),
            "assumptions": assumptions(kl=kl)}
    em.payload(data, lambda: [f"ch {names[0]}({_wt(args.gamma)}) = ch {names[1]} = "
                              + _char_text(ch, sys_)],
               lambda: _char_rows(ch, sys_))


def cmd_predict(args, cfg, sys_, em):
    if args.what == "homs":
        if args.gamma is None:
            raise ConfigError("predict homs needs --gamma")
        preds = redmodp.predicted_nonzero_hom_ext(args.gamma, cfg.p, cfg.r, sys_, cfg.max_length)
        data = {"gamma": list(args.gamma), "p": cfg.p, "r": cfg.r,
                "predictions": [{"target": list(g), "claims": list(tags)} for g, tags in preds],
                "assumptions": assumptions(kl=True)}
        em.payload(data, lambda: [f"Delta({_wt(args.gamma)}) -> Delta({_wt(g)}): {', '.join(t)}"
                                  for g, t in preds],
                   lambda: (["gamma", "target", "claims"],
                            [[_wt(args.gamma), _wt(g), " ".join(t)] for g, t in preds]))
    else:
        if args.lam is None or args.s is None:
            raise ConfigError("predict parabolic needs --lam and --s")
        pairs = redmodp.predicted_homs_parabolic(args.lam, args.s, args.w, cfg.p, cfg.r, sys_,
                                                 cfg.max_length)
        data = {"lambda": list(args.lam), "s": args.s, "w": list(args.w), "p": cfg.p, "r": cfg.r,
                "pairs": [{"source": list(a), "target": list(b)} for a, b in pairs],
                "assumptions": assumptions(kl=True)}
        em.payload(data, lambda: [f"Hom(Delta({_wt(a)}), Delta({_wt(b)})) != 0" for a, b in pairs],
                   lambda: (["source", "target"], [[_wt(a), _wt(b)] for a, b in pairs]))


def cmd_bounds(args, cfg, sys_, em):
    poly = redmodp.quantum_ext_lower_bounds(args.gamma, args.gamma2, cfg.p, cfg.r, sys_,
                                            args.kind, cfg.max_length)
    data = {"gamma": list(args.gamma), "gamma2": list(args.gamma2), "kind": args.kind,
            "p": cfg.p, "r": cfg.r, "lower_bounds": [{"n": e, "dim_at_least": c} for e, c in poly.items()],
            **poly.to_json(), "assumptions": assumptions(kl=True)}
    _poly_out(em, data, poly)


def _dominant_box(sys_: RootSystem, bound: int, by_pairing: bool):
    """Dominant weights with coordinates <= bound, or with max <gamma+rho, beta^vee> <= bound."""
    import itertools
    for g in itertools.product(range(bound + 1), repeat=sys_.rank):
        if by_pairing:
            x = tuple(c + 1 for c in g)
            if max(pairing(x, i, sys_) for i in range(len(sys_.positive_roots))) > bound:
                continue
        yield g


def _stream(rows_fn, items, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            yield from pool.map(rows_fn, items)
    else:
        yield from map(rows_fn, items)


def cmd_scan(args, cfg, sys_, em):
    out = csv.writer(em.out, lineterminator="\n")
    failed = False
    if args.what == "jantzen-identity":
        def row(g):
            ok, rep = jantzen.check_sum_decomposition(g, cfg.p, sys_)
            return [_wt(g), "true" if ok else "false", rep["max_abs_coeff"]]
        out.writerow(["gamma", "ok", "max_abs_coeff"])
        for r in _stream(row, list(_dominant_box(sys_, args.max, by_pairing=True)), cfg.threads):
            out.writerow(r)
            em.out.flush()
            failed |= r[1] == "false"
    else:
        def row(g):
            a = redmodp.red_delta_char(g, cfg.p, args.r1, sys_, cfg.max_length)
            b = redmodp.red_delta_char(g, cfg.p, args.r2, sys_, cfg.max_length)
            ok = char_ring.dominates(a, b)
            chars = ("", "") if ok else (json.dumps(a.to_json(sys_)["terms"]),
                                         json.dumps(b.to_json(sys_)["terms"]))
            return [_wt(g), "true" if ok else "false", *chars]
        out.writerow(["gamma", "dominates", f"char_r{args.r1}", f"char_r{args.r2}"])
        for r in _stream(row, list(_dominant_box(sys_, args.max, by_pairing=False)), cfg.threads):
            out.writerow(r)
            em.out.flush()
            if args.first and r[1] == "false":
                break
    if failed:
        raise VerificationFailed("Jantzen identity failed for at least one weight")


def verify_a1(p: int, max_weight: int, max_length: int = redmodp.DEFAULT_MAX_LENGTH) -> list[dict]:
    """Run the A1 sweep suites; each entry has a name, ok flag and first counterexample."""
    A1 = builtin("A1")
    checks: list[tuple[str, Callable[[int], bool]]] = [
        ("decomposition soundness", lambda g: sum(
            (sl2_lab.a1_simple_char(m, p) * c for m, c in sl2_lab.a1_decomposition_numbers(g, p).items()),
            char_ring.Character.zero(1)) == sl2_lab.chi(g)),
        ("jantzen identity", lambda g: jantzen.check_sum_decomposition((g,), p, A1)[0]),
    ]
    for r in (1, 2):
        checks += [
            (f"red_delta = quantum simple (r={r})", lambda g, r=r: redmodp.red_delta_char(
                (g,), p, r, A1, max_length) == sl2_lab.a1_quantum_simple_char(g, p, r)),
            (f"Lin identity (r={r})", lambda g, r=r: redmodp.lin_identity_check((g,), p, r, A1, max_length)),
            (f"chain domination (r={r})", lambda g, r=r: redmodp.chain_domination_check((g,), p, r, A1)),
            (f"red_delta >= Delta^(p^r) (r={r})", lambda g, r=r: char_ring.dominates(
                redmodp.red_delta_char((g,), p, r, A1, max_length), redmodp.delta_pr_char((g,), p, r, A1))),
            (f"quantum factors within classical (r={r})", lambda g, r=r: set(
                sl2_lab.a1_quantum_decomposition_numbers(g, p, r)) <= set(sl2_lab.a1_decomposition_numbers(g, p))),
            (f"wall mirrors are factors (r={r})", lambda g, r=r: set(
                jantzen.predicted_factors_jscor((g,), p, r, A1)) <= set(sl2_lab.a1_decomposition_numbers(g, p))),
        ]
    results = []
    for name, fn in checks:
        bad = next((g for g in range(max_weight + 1) if not fn(g)), None)
        results.append({"check": name, "ok": bad is None, "counterexample": bad})
    return results


def cmd_verify_a1(args, cfg, sys_, em):
    results = verify_a1(cfg.p, args.max, cfg.max_length)
    data = {"p": cfg.p, "max": args.max, "results": results, "assumptions": assumptions(kl=True)}
    em.payload(data, lambda: [f"{'PASS' if r['ok'] else 'FAIL'}  {r['check']}"
                              + ("" if r["ok"] else f" (gamma={r['counterexample']})") for r in results],
               lambda: (["check", "ok", "counterexample"],
                        [[r["check"], r["ok"], "" if r["counterexample"] is None else r["counterexample"]]
                         for r in results]))
    if not all(r["ok"] for r in results):
        raise VerificationFailed("A1 sweep failed")


def worked_example_report() -> dict:
    ex = sl2_lab.builtin_paper_example()
    A1 = builtin("A1")
    res = ex.resolution
    weights = sorted({wt for wt, _ in res.entries}, reverse=True)
    triangles, peeled = ex.run()
    return {
        "p": ex.p, "r": ex.r,
        "decomposition_numbers": {_wt(g): {_wt(m): c for m, c in sl2_lab.a1_decomposition_numbers(g, ex.p).items()}
                                  for g in weights},
        "quantum_decomposition_numbers": {
            _wt(g): {_wt(m): c for m, c in sl2_lab.a1_quantum_decomposition_numbers(g, ex.p, ex.r).items()}
            for g in weights},
        "red_delta_10": redmodp.red_delta_char((10,), ex.p, ex.r, A1).to_json(A1),
        "loewy": {_wt(g): ex.loewy[g].to_json() for g in sorted(ex.loewy)},
        "triangles": [{"mu": list(t.mu), "cones": [{"wt": list(w), "shift": k} for w, k in t.cones],
                       "remaining": [{"module": str(m), "shift": k} for m, k in t.after]}
                      for t in triangles],
        "resolution": res.to_json(),
        "resolution_valid": sl2_lab.validate_resolution(res),
        "peel_reproduces_resolution": sorted(peeled.entries) == sorted(res.entries),
        "ext": {_wt(g): {str(n): d for n, d in sl2_lab.ext_dims(res, g).items()} for g in weights},
        "lengths": {_wt(g): alcove.canonical_length(g, ex.p, A1) for g in weights},
        "parity_violations": [{"wt": list(w), "n": n} for w, n in sl2_lab.parity_report(res, ex.p)],
        "assumptions": assumptions(kl=True),
    }


def cmd_worked_example(args, cfg, sys_, em):
    rep = worked_example_report()

    def text():
        yield f"SL2, p = {rep['p']}, r = {rep['r']}"
        for g, d in rep["decomposition_numbers"].items():
            yield f"[Delta({g})] = " + " + ".join(f"{c} L({m})" for m, c in d.items())
        for t in rep["triangles"]:
            cones = ", ".join(f"Delta({c['wt'][0]})[{c['shift']}]" for c in t["cones"])
            rest = ", ".join(f"({r['module']})[{r['shift']}]" for r in t["remaining"]) or "0"
            yield f"peel {cones} -> remaining {rest}"
        yield "resolution: " + ", ".join(f"({e['wt'][0]},{e['shift']})" for e in rep["resolution"]["entries"])
        for g, d in rep["ext"].items():
            yield f"Ext^n(L(10), nabla({g})): " + ", ".join(f"n={n}: {v}" for n, v in d.items())
        yield "parity violations: " + ", ".join(f"({v['wt'][0]}, {v['n']})" for v in rep["parity_violations"])

    em.payload(rep, text, lambda: (["wt", "shift"], [[_wt(e["wt"]), e["shift"]]
                                                     for e in rep["resolution"]["entries"]]))
    if not (rep["resolution_valid"] and rep["peel_reproduces_resolution"]):
        raise VerificationFailed("builtin resolution failed validation")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("configuration")
    g.add_argument("--type", dest="type_label", default=None, help="A1, A2, B2 or G2")
    g.add_argument("--cartan-file", default=None, help="JSON file with a Cartan matrix")
    g.add_argument("--p", type=int, default=None)
    g.add_argument("--r", type=int, default=None)
    g.add_argument("--max-length", type=int, default=None, help="Coxeter length bound")
    g.add_argument("--format", choices=FORMATS, default=None)
    g.add_argument("--simple-table", default=None, help="JSON table of restricted simple characters")
    g.add_argument("--threads", type=int, default=None)
    g.add_argument("--config", default=None, help=f"JSON config file (default: ${CONFIG_ENV})")

    parser = argparse.ArgumentParser(prog="modpchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    weight = dict(type=parse_weight, required=True)
    word = dict(type=parse_word, default=())

    add("chi", cmd_chi, "Weyl character").add_argument("--gamma", **weight)
    sp = add("decompose", cmd_decompose, "decomposition numbers (A1) or Weyl-basis coefficients")
    sp.add_argument("--gamma", type=parse_weight)
    sp.add_argument("--quantum", action="store_true")
    sp.add_argument("--char-file")
    for name, fn, h in (("facet", cmd_facet, "facet and upper closure"),
                        ("canon", cmd_canon, "canonical form gamma = w.lambda")):
        sp = add(name, fn, h)
        sp.add_argument("--gamma", **weight)
        sp.add_argument("--l", type=int, help="level (default p^r)")
    sp = add("orbit", cmd_orbit, "dominant part of a W_l-orbit")
    sp.add_argument("--lam", **weight)
    sp.add_argument("--l", type=int)
    sp.add_argument("--bound", type=int, default=30)
    sp = add("kl", cmd_kl, "Kazhdan-Lusztig polynomial P_{x,y}")
    sp.add_argument("--x", **word)
    sp.add_argument("--y", **word)
    sp.add_argument("--l", type=int)
    sp = add("pkl", cmd_pkl, "parabolic KL polynomial")
    sp.add_argument("--J", type=parse_word, default=())
    sp.add_argument("--y", **word)
    sp.add_argument("--w", **word)
    sp.add_argument("--l", type=int)
    sp = add("ext-series", cmd_ext_series, "quantum Ext generating series from words")
    sp.add_argument("--J", type=parse_word, default=())
    sp.add_argument("--y", **word)
    sp.add_argument("--w", **word)
    sp.add_argument("--lam", type=parse_weight)
    sp.add_argument("--kind", choices=("delta-L", "L-L"), default="delta-L")
    sp.add_argument("--l", type=int)
    sp = add("jantzen", cmd_jantzen, "Jantzen sum character")
    sp.add_argument("--gamma", **weight)
    sp.add_argument("--decompose", action="store_true", help="include Weyl-basis coefficients")
    sp.set_defaults(jantzen_r=True)
    sp = add("redchar", cmd_redchar, "characters of Delta_red^r or Delta^{p^r}")
    sp.add_argument("--gamma", **weight)
    sp.add_argument("--kind", choices=("red", "pr"), default="red")
    sp = add("predict", cmd_predict, "Hom/Ext predictions")
    sp.add_argument("what", choices=("homs", "parabolic"))
    sp.add_argument("--gamma", type=parse_weight)
    sp.add_argument("--lam", type=parse_weight)
    sp.add_argument("--s", type=int)
    sp.add_argument("--w", **word)
    sp = add("bounds", cmd_bounds, "quantum lower bounds for G-side Ext")
    sp.add_argument("what", choices=("ext",))
    sp.add_argument("--gamma", **weight)
    sp.add_argument("--gamma2", **weight)
    sp.add_argument("--kind", choices=("delta-L", "L-L"), default="delta-L")
    sp = add("scan", cmd_scan, "CSV sweeps")
    sp.add_argument("what", choices=("jantzen-identity", "non-domination"))
    sp.add_argument("--max", type=int, default=None, help="weight bound (default: config max_weight)")
    sp.add_argument("--r1", type=int, default=2)
    sp.add_argument("--r2", type=int, default=1)
    sp.add_argument("--first", action="store_true", help="stop at the first non-domination witness")
    sp = add("verify-a1", cmd_verify_a1, "A1 sweep suites")
    sp.add_argument("--max", type=int, default=None, help="weight bound (default: config max_weight)")
    add("paper-example", cmd_worked_example, "the worked SL2 example at p = 3, r = 2")
    return parser


def resolve_config(args) -> Config:
    merged = load_config(args.config)
    for name in Config.__dataclass_fields__:
        val = getattr(args, name, None)
        if val is not None and name != "r":
            merged[name] = val
    # jantzen treats --r as an optional level filter, everything else as the global r
    if args.r is not None:
        if getattr(args, "jantzen_r", False):
            args.r_level = args.r
        else:
            merged["r"] = args.r
    if getattr(args, "max", "unset") is None:
        args.max = merged.get("max_weight", Config.max_weight)
    try:
        return Config(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def run(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    err = sys.stderr
    try:
        cfg = resolve_config(args)
        if getattr(args, "jantzen_r", False):
            args.r = getattr(args, "r_level", None)
        sys_ = cfg.root_system()
        cfg.validate(sys_)
        args.func(args, cfg, sys_, Emitter(cfg.format, out))
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=err)
        return 1
    except BoundError as exc:
        print(f"bound exceeded: {exc}", file=err)
        return 3
    except (ConfigError, ValueError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    return 0


def main() -> None:
    sys.exit(run())
