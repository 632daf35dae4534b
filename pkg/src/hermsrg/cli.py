"""``hermsrg`` command line: build, verify, compare, census, replay.

Exit codes: 0 success or pass, 1 mathematical failure (a witness is printed),
2 usage or input error, 3 time budget exhausted.  Every file written is paired
with a ``*.manifest.json`` that ``hermsrg replay`` re-executes and compares
byte for byte.
"""
from __future__ import annotations

import argparse
import contextlib
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import (BMParams, UnitalError, build_gamma_u, build_nu, build_unital_bm,
                            build_unital_bm_alt, build_unital_bt, build_unital_classical,
                            dual_unital, find_dual_onan, read_unital, validate_unital)
from .graphcore import (BudgetExceeded, DisconnectedGraph, Graph, Graph6Error, IsoTimeout,
                        NotStronglyRegular, SampledTriples, check_srg, export_graph6,
                        import_graph6, is_isomorphic, maximal_cliques, triple_census)
from .graphcore.srg import gamma_u_params, nu_params
from .projgeom import SUPPORTED_Q, GeometryError, hermitian_geometry, random_frame_gram

log = logging.getLogger("hermsrg")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "HERMSRG_BUDGET_SECS"
DEFAULT_BUDGET = 1800.0
SCHEMA = "hermsrg/1"


class UsageError(ValueError):
    pass


class MathFailure(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("reason", "failure"))
        self.payload = payload


# -- manifests -------------------------------------------------------------------

def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    """What was run and what it produced; replaying it must reproduce the bytes."""

    argv: list[str]
    seed: int | None
    geometry: dict | None
    outputs: dict[str, str]  # file name -> sha256
    inputs: dict[str, str] = field(default_factory=dict)  # absolute path -> sha256
    timings: dict[str, float] = field(default_factory=dict)
    tool_version: str = __version__
    schema: str = "hermsrg.manifest/1"

    def to_json(self) -> dict:
        return asdict(self)

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n")

    @classmethod
    def load(cls, path) -> RunManifest:
        d = json.loads(Path(path).read_text())
        if d.get("schema") != "hermsrg.manifest/1":
            raise UsageError(f"{path} is not a hermsrg run manifest")
        return cls(**d)


def _manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def _dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


class Run:
    """Per-invocation context: argv for the manifest, files written, timings."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.t0 = time.perf_counter()
        self.outputs: list[Path] = []
        self.inputs: dict[str, str] = {}
        self.geometry = None
        self.timings: dict[str, float] = {}

    def budget(self) -> float:
        b = getattr(self.args, "budget", None)
        if b is not None:
            return float(b)
        env = os.environ.get(BUDGET_ENV)
        return float(env) if env else DEFAULT_BUDGET

    def read_graph(self, path: str) -> Graph:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"no such file: {path}")
        self.inputs[str(p.resolve())] = sha256_file(p)
        return import_graph6(p.read_bytes())

    def write_bytes(self, path: Path, data: bytes) -> None:
        path.write_bytes(data)
        self.outputs.append(path)

    def emit(self, payload: dict) -> None:
        """The command's JSON result to --out (with a manifest) or stdout."""
        out = getattr(self.args, "out", None)
        text = _dumps(payload)
        if out:
            self.write_bytes(Path(out), text.encode())
        else:
            sys.stdout.write(text)

    def finish(self) -> None:
        if not self.outputs:
            return
        self.timings["total"] = round(time.perf_counter() - self.t0, 3)
        anchor = self.outputs[0]
        m = RunManifest(self._portable_argv(), getattr(self.args, "seed", None), self.geometry,
                        {p.name: sha256_file(p) for p in self.outputs}, self.inputs, self.timings)
        m.write(_manifest_path(anchor))

    def _portable_argv(self) -> list[str]:
        """argv with input paths made absolute so replay works from anywhere."""
        out, absolute_next = [], False
        for a in self.argv:
            if absolute_next:
                out.append(str(Path(a).resolve()))
                absolute_next = False
                continue
            out.append(a)
            absolute_next = a in ("--graph", "--file")
        if out and out[0] == "compare":
            out = [out[0]] + [str(Path(a).resolve()) if a.endswith(".g6") else a for a in out[1:]]
        return out


# -- geometry and constructions -------------------------------------------------------

def _gram(args, n: int):
    seed = getattr(args, "gram_seed", None)
    if seed is None:
        return None
    return random_frame_gram(n, args.q, seed)


def _field_json(F) -> dict:
    return {"p": F.p, "m": F.m, "order": F.order, "modulus": list(F.modulus_poly),
            "encoding": "index 0 is zero, index k+1 is g^k for the primitive root g of the modulus"}


def _geometry_json(H) -> dict:
    return {"n": H.n, "q": H.q, "gram": H.gram.tolist(), "gram_id": H.gram_id}


def _check_q(q: int) -> None:
    if q not in SUPPORTED_Q:
        raise UsageError(f"q must be one of {SUPPORTED_Q}")


def _build_unital(args):
    q = args.q
    kind = args.unital
    if kind == "classical":
        U = build_unital_classical(q)
    elif kind in ("bm", "bm-alt"):
        if args.alpha_idx is None or args.beta_idx is None:
            raise UsageError("--alpha-idx and --beta-idx are required for BM unitals")
        p = BMParams(args.alpha_idx, args.beta_idx)
        U = build_unital_bm(q, p) if kind == "bm" else build_unital_bm_alt(q, p)
    elif kind == "bt":
        U = build_unital_bt(q)
    else:
        raise UsageError(f"unknown unital {kind!r}")
    if getattr(args, "dual", False):
        U = dual_unital(U)
    return U


def cmd_build(run: Run) -> int:
    args = run.args
    _check_q(args.q)
    out = Path(args.out)
    if out.suffix != ".g6":
        raise UsageError("--out must name a .g6 file")
    construction: dict = {"kind": args.kind}
    extra: dict = {}
    t = time.perf_counter()
    if args.kind == "nu":
        H = hermitian_geometry(args.n, args.q, _gram(args, args.n))
        G = build_nu(args.n, args.q, geometry=H)
        expected = nu_params(args.n, args.q)
        space, geom = H.space, _geometry_json(H)
    elif args.kind == "gamma-u":
        if args.n != 2:
            raise UsageError("gamma-u graphs live in the plane: use --n 2")
        U = _build_unital(args)
        G = build_gamma_u(U)
        expected = gamma_u_params(args.q)
        space = U.space
        geom = {"n": 2, "q": args.q, "unital": U.kind, "unital_params": U.params}
        construction.update(unital=args.unital, dual=bool(args.dual), unital_kind=U.kind,
                            unital_points=U.points.tolist())
    elif args.kind == "switched":
        from .switching import build_switched, special_triples
        if not args.variant:
            raise UsageError("--variant is required for switched graphs")
        b = build_switched(args.n, args.q, args.variant, _gram(args, args.n), parts=True)
        G = b.switched
        expected = nu_params(args.n, args.q)
        space, geom = b.config.geometry.space, _geometry_json(b.config.geometry)
        construction.update(variant=args.variant, switching=b.config.to_json(),
                            sets=b.sets.sizes(), d_values=sorted(b.report.d_values))
        if args.n == 4:
            extra["special_triples"] = [list(st.triple) for st in
                                        special_triples(b.base, b.config, b.sets, limit=3)]
    else:
        raise UsageError(f"unknown kind {args.kind!r}")
    run.timings["construct"] = round(time.perf_counter() - t, 3)
    t = time.perf_counter()
    try:
        params = check_srg(G)
    except (NotStronglyRegular, DisconnectedGraph) as e:
        raise MathFailure({"reason": str(e), "witness": getattr(e, "witness", None)})
    run.timings["check_srg"] = round(time.perf_counter() - t, 3)
    if params.as_tuple() != expected.as_tuple():
        raise MathFailure({"reason": "parameters differ from the closed form",
                           "observed": list(params.as_tuple()), "expected": list(expected.as_tuple())})
    run.geometry = geom
    data = export_graph6(G) + b"\n"
    run.write_bytes(out, data)
    labels = G.labels
    sidecar = {
        "schema": "hermsrg.sidecar/1",
        "graph": {"name": G.name, "n_vertices": G.n_vertices, "n_edges": G.n_edges,
                  "graph6_sha256": hashlib.sha256(data).hexdigest()},
        "srg": list(params.as_tuple()),
        "field": _field_json(space.field),
        "geometry": geom,
        "construction": construction,
        "vertex_points": [int(x) for x in labels],
        "point_coords": space.coords[labels].tolist(),
        **extra,
    }
    run.write_bytes(out.with_suffix(".json"), _dumps(sidecar).encode())
    sys.stdout.write(_dumps({"graph6": str(out), "srg": list(params.as_tuple()), "name": G.name}))
    return EXIT_OK


# -- verify ------------------------------------------------------------------------------

def cmd_verify(run: Run) -> int:
    args = run.args
    target = args.target
    if target == "srg":
        return _verify_srg(run)
    if target == "lemma":
        return _verify_lemma(run)
    if target == "wqh":
        return _verify_wqh(run)
    if target == "unital":
        return _verify_unital(run)
    raise UsageError(f"unknown verify target {target!r}")


def _verify_srg(run: Run) -> int:
    args = run.args
    if not args.graph:
        raise UsageError("verify srg needs --graph")
    G = run.read_graph(args.graph)
    rep = {"schema": "hermsrg.verify/1", "target": "srg", "graph": Path(args.graph).name,
           "n_vertices": G.n_vertices}
    try:
        p = check_srg(G)
    except NotStronglyRegular as e:
        rep.update(status="fail", reason=str(e), witness=_plain(e.witness))
        run.emit(rep)
        return EXIT_FAIL
    except DisconnectedGraph as e:
        rep.update(status="fail", reason=str(e), witness={"pair": list(e.witness),
                                                          "components": e.n_components})
        run.emit(rep)
        return EXIT_FAIL
    rep.update(status="pass", params=list(p.as_tuple()))
    if args.expect:
        want = [int(x) for x in args.expect.split(",")]
        if want != list(p.as_tuple()):
            rep.update(status="fail", reason="parameters differ from --expect", expected=want)
    run.emit(rep)
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAIL


def _verify_lemma(run: Run) -> int:
    from .oracles import run_suite, verify_lemma
    args = run.args
    budget = run.budget()
    if args.all:
        qs = [args.q] if args.q else None
        m = run_suite(plane_qs=qs or (2, 3, 4, 5), space_qs=[q for q in (qs or (2, 3)) if q in (2, 3)],
                      seed=args.seed, budget_seconds=budget,
                      progress=lambda r: log.info(r.summary()))
        run.timings.update(m.pop("timings"))
        m["schema"] = "hermsrg.lemma-suite/1"
        run.emit(m)
        status = m["status"]
    else:
        if not args.id or not args.q:
            raise UsageError("verify lemma needs --id and --q (or --all)")
        r = verify_lemma(args.id.lower(), args.q, args.sample_budget, seed=args.seed, budget_seconds=budget)
        run.timings["lemma"] = round(r.seconds, 3)
        payload = r.to_json(timings=False)
        payload["schema"] = "hermsrg.lemma-report/1"
        log.info(r.summary())
        run.emit(payload)
        status = r.status
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "partial": EXIT_BUDGET}[status]


def _verify_wqh(run: Run) -> int:
    from .switching import choose_config, compute_sets, expected_sizes, verify_wqh_hypotheses
    args = run.args
    _check_q(args.q)
    if not args.variant:
        raise UsageError("verify wqh needs --variant")
    H = hermitian_geometry(args.n, args.q, _gram(args, args.n))
    run.geometry = _geometry_json(H)
    cfg = choose_config(args.n, args.q, args.variant, geometry=H)
    G = build_nu(args.n, args.q, geometry=H)
    sets = compute_sets(G, cfg)
    rep = verify_wqh_hypotheses(G, cfg, sets, strict=False)
    payload = {"schema": "hermsrg.verify/1", "target": "wqh", "config": cfg.to_json(),
               "sizes": sets.sizes(), **rep.to_json()}
    ok = rep.ok
    if args.n == 4:
        exp = expected_sizes(args.q, args.variant)
        payload["expected_sizes"] = exp
        ok = ok and all(sets.sizes()[k] == v for k, v in exp.items())
    payload["status"] = "pass" if ok else "fail"
    run.emit(payload)
    return EXIT_OK if ok else EXIT_FAIL


def _verify_unital(run: Run) -> int:
    args = run.args
    if args.file:
        p = Path(args.file)
        if not p.exists():
            raise UsageError(f"no such file: {args.file}")
        run.inputs[str(p.resolve())] = sha256_file(p)
        U = read_unital(p)
    else:
        if not args.q or not args.unital:
            raise UsageError("verify unital needs --file, or --q and --unital")
        _check_q(args.q)
        U = _build_unital(args)
    rep = validate_unital(U.points, U.space, U.q)
    payload = {"schema": "hermsrg.verify/1", "target": "unital", "q": U.q, "kind": U.kind,
               "params": _plain(U.params), "n_points": rep.n_points, "n_tangent": rep.n_tangent,
               "n_secant": rep.n_secant, "violation": rep.violation,
               "status": "pass" if rep.ok else "fail"}
    if rep.ok and args.onan:
        cfg = find_dual_onan(U)
        payload["dual_onan"] = None if cfg is None else cfg.to_json(U.space)
    run.emit(payload)
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- compare -------------------------------------------------------------------------------

def _sidecar_hints(path: str) -> list[tuple[int, int, int]]:
    side = Path(path).with_suffix(".json")
    if not side.exists():
        return []
    try:
        d = json.loads(side.read_text())
    except json.JSONDecodeError:
        return []
    return [tuple(int(x) for x in t) for t in d.get("special_triples", [])]


def cmd_compare(run: Run) -> int:
    from .oracles import distinguish
    args = run.args
    G1, G2 = run.read_graph(args.graph1), run.read_graph(args.graph2)
    budget = run.budget()
    payload = {"schema": "hermsrg.compare/1", "graphs": [Path(args.graph1).name, Path(args.graph2).name],
               "mode": args.mode}
    t = time.perf_counter()
    if G1.n_vertices == G2.n_vertices and G1.same_edges(G2):
        payload.update(verdict="isomorphic", identical=True, bijection=list(range(G1.n_vertices)),
                       method="identical edge sets")
        run.emit(payload)
        return EXIT_OK
    verdict = None
    if args.mode in ("invariants", "both"):
        hints = {h: _sidecar_hints(p) for h, p in ((1, args.graph1), (2, args.graph2))}
        methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
        res = distinguish(G1, G2, methods=methods, budget_seconds=budget,
                          hints={k: v for k, v in hints.items() if v}, clique_budget=budget)
        run.timings["invariants"] = round(time.perf_counter() - t, 3)
        payload["invariants"] = {k: v for k, v in res.to_json().items() if k != "seconds"}
        if res.distinguished:
            verdict = "non-isomorphic"
            payload["certificate"] = res.certificate.to_json()
    if verdict is None and args.mode in ("iso", "both"):
        try:
            r = is_isomorphic(G1, G2, timeout=budget)
        except IsoTimeout as e:
            payload.update(verdict="undecided", reason=str(e))
            run.emit(payload)
            return EXIT_BUDGET
        run.timings["iso"] = round(time.perf_counter() - t, 3)
        verdict = "isomorphic" if r.isomorphic else "non-isomorphic"
        payload["certificate"] = _plain(r.certificate)
        payload["search_nodes"] = r.nodes
        if r.isomorphic:
            payload["bijection"] = [int(x) for x in r.bijection]
    if verdict is None:
        verdict = "indistinguishable"
    payload["verdict"] = verdict
    run.emit(payload)
    return EXIT_OK


# -- census ---------------------------------------------------------------------------------

def _parse_triples(text: str) -> list[tuple[int, int, int]]:
    try:
        out = [tuple(int(x) for x in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise UsageError("--triples expects 'a,b,c;d,e,f'")
    if any(len(t) != 3 for t in out):
        raise UsageError("--triples expects 'a,b,c;d,e,f'")
    return out


def cmd_census(run: Run) -> int:
    args = run.args
    G = run.read_graph(args.graph)
    budget = run.budget()
    payload = {"schema": "hermsrg.census/1", "graph": Path(args.graph).name,
               "graph_sha256": run.inputs[str(Path(args.graph).resolve())],
               "what": args.what, "scope": args.scope}
    t = time.perf_counter()
    try:
        if args.what == "triples":
            if args.scope == "full":
                c = triple_census(G, budget_seconds=budget)
            elif args.scope == "sample":
                if not args.n:
                    raise UsageError("--scope sample needs --n")
                c = triple_census(G, SampledTriples(args.n, args.seed))
            else:
                if not args.triples:
                    raise UsageError("--scope targeted needs --triples")
                c = triple_census(G, _parse_triples(args.triples))
                payload["samples"] = [[list(tr), v] for tr, v in c.samples]
            payload.update(c.to_json())
            payload["values"] = sorted(c.counts)
        else:
            if args.scope != "full":
                raise UsageError("clique census supports --scope full only")
            sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else None
            c = maximal_cliques(G, size_filter=sizes, budget_seconds=budget)
            payload.update(c.to_json())
            payload["total"] = c.total
    except BudgetExceeded as e:
        payload.update(status="refused", reason=str(e))
        sys.stderr.write(f"hermsrg: refusing census: {e}\n")
        run.emit(payload)
        return EXIT_BUDGET
    run.timings["census"] = round(time.perf_counter() - t, 3)
    run.emit(payload)
    return EXIT_OK


# -- replay ----------------------------------------------------------------------------------

def cmd_replay(run: Run) -> int:
    m = RunManifest.load(run.args.manifest)
    report = {"schema": "hermsrg.replay/1", "manifest": Path(run.args.manifest).name,
              "argv": m.argv, "inputs_changed": [], "outputs": {}}
    for path, h in m.inputs.items():
        if not Path(path).exists() or sha256_file(path) != h:
            report["inputs_changed"].append(path)
    with tempfile.TemporaryDirectory() as tmp:
        argv = list(m.argv)
        if "--out" not in argv:
            raise UsageError("manifest has no --out to redirect")
        i = argv.index("--out") + 1
        argv[i] = str(Path(tmp) / Path(argv[i]).name)
        with contextlib.redirect_stdout(io.StringIO()):
            rc = main(argv)
        report["exit_code"] = rc
        for name, h in m.outputs.items():
            p = Path(tmp) / name
            got = sha256_file(p) if p.exists() else None
            report["outputs"][name] = {"expected": h, "observed": got, "identical": got == h}
    ok = not report["inputs_changed"] and all(o["identical"] for o in report["outputs"].values())
    report["status"] = "identical" if ok else "differs"
    sys.stdout.write(_dumps(report))
    return EXIT_OK if ok else EXIT_FAIL


# -- plumbing ------------------------------------------------------------------------------

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermsrg", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"hermsrg {__version__}")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a graph, write graph6 + JSON sidecar")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--kind", choices=("nu", "gamma-u", "switched"), required=True)
    b.add_argument("--variant", choices=("pencil", "line"))
    b.add_argument("--unital", choices=("classical", "bm", "bm-alt", "bt"), default="classical")
    b.add_argument("--alpha-idx", type=int)
    b.add_argument("--beta-idx", type=int)
    b.add_argument("--dual", action="store_true", help="use the dual unital (tangent lines as points)")
    b.add_argument("--gram-seed", type=int, help="build in a seeded random projective frame")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a graph, lemma, switching hypotheses or unital")
    v.add_argument("target", choices=("srg", "lemma", "wqh", "unital"))
    v.add_argument("--graph")
    v.add_argument("--expect", help="v,k,lambda,mu to compare against")
    v.add_argument("--id")
    v.add_argument("--all", action="store_true", help="run the whole lemma suite")
    v.add_argument("--q", type=int)
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--variant", choices=("pencil", "line"))
    v.add_argument("--unital", choices=("classical", "bm", "bm-alt", "bt"))
    v.add_argument("--alpha-idx", type=int)
    v.add_argument("--beta-idx", type=int)
    v.add_argument("--dual", action="store_true")
    v.add_argument("--file", help="unital point file")
    v.add_argument("--onan", action="store_true", help="also search for a dual O'Nan configuration")
    v.add_argument("--gram-seed", type=int)
    v.add_argument("--sample-budget", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=float, help=f"seconds (default ${BUDGET_ENV} or {DEFAULT_BUDGET:.0f})")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="separate two graphs by invariants or decide isomorphism")
    c.add_argument("graph1")
    c.add_argument("graph2")
    c.add_argument("--mode", choices=("invariants", "iso", "both"), default="both")
    c.add_argument("--methods", default="triples,cliques,refinement",
                   help="invariants to try, in order (comma separated)")
    c.add_argument("--budget", type=float)
    c.add_argument("--out")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("census", help="triple or maximal-clique census of a graph6 file")
    s.add_argument("--graph", required=True)
    s.add_argument("--what", choices=("triples", "cliques"), required=True)
    s.add_argument("--scope", choices=("full", "targeted", "sample"), default="full")
    s.add_argument("--n", type=int, help="sample size")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--triples", help="'a,b,c;d,e,f' for --scope targeted")
    s.add_argument("--sizes", help="clique sizes to record, e.g. 5,9")
    s.add_argument("--budget", type=float)
    s.add_argument("--out")
    s.set_defaults(func=cmd_census)

    r = sub.add_parser("replay", help="re-run a manifest and compare output bytes")
    r.add_argument("manifest")
    r.set_defaults(func=cmd_replay)
    return p


def _set_threads(n: int | None) -> None:
    if n is None:
        return
    if n < 1:
        raise UsageError("--threads must be positive")
    import numba
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    # the command itself, without global flags, is what a manifest replays
    cmd_argv = argv[argv.index(args.command):]
    run = Run(args, cmd_argv)
    try:
        _set_threads(args.threads)
        rc = args.func(run)
    except MathFailure as e:
        sys.stdout.write(_dumps({"status": "fail", **_plain(e.payload)}))
        return EXIT_FAIL
    except (BudgetExceeded, IsoTimeout) as e:
        sys.stderr.write(f"hermsrg: budget exhausted: {e}\n")
        return EXIT_BUDGET
    except (UsageError, UnitalError, GeometryError, Graph6Error, ValueError) as e:
        sys.stderr.write(f"hermsrg: error: {e}\n")
        return EXIT_USAGE
    run.finish()
    return rc


if __name__ == "__main__":
    sys.exit(main())
