"""Command-line entry point: single computations, lemma checks, and corpus suites.

Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on an
operational error (bad input, cap exceeded, unmet precondition).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from . import perm as P
from .config import caps, override_caps
from .errors import FrattiniLabError
from .groups import FiniteGroup, Subgroup, as_group
from .homs import identity_hom
from .io import format_element, load_group, load_hom, parse_elements
from .lattice import frattini, maximal_subgroups
from .reports import LemmaReport

SUITES = ("frattini", "lemmas", "reduction", "symplectic", "presentation")
LEMMAS = ("frattini-nilpotent", "hom-inclusion", "ffn", "km", "residual", "allenby", "profinite-center")
KM_SAMPLES_PER_GROUP = 8


@dataclass(frozen=True)
class RunConfig:
    lattice_cap: int = 2000
    enumeration_cap: int = 1_000_000
    parallel: int = 1
    paper_strict: bool = False
    output: str = "text"

    def __post_init__(self):
        if self.lattice_cap < 1 or self.enumeration_cap < 1:
            raise ValueError("caps must be positive")
        if self.parallel < 1:
            raise ValueError("parallelism must be at least 1")
        if self.output not in ("text", "json"):
            raise ValueError("output must be 'text' or 'json'")

    def caps_scope(self):
        return override_caps(lattice=self.lattice_cap, enumeration=self.enumeration_cap)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    path: Path
    order: int | None = None
    frattini_order: int | None = None
    tags: tuple[str, ...] = field(default=())

    def load(self) -> FiniteGroup:
        return load_group(self.path)


def data_dir() -> Path:
    return Path(str(resources.files("frattini_lab") / "data"))


def load_corpus(manifest: str | Path | None = None) -> list[CorpusEntry]:
    manifest = Path(manifest) if manifest else data_dir() / "corpus.json"
    raw = json.loads(manifest.read_text(encoding="utf-8"))
    out = []
    for e in raw["groups"]:
        path = manifest.parent / e["file"]
        if not path.exists():
            raise FileNotFoundError(f"corpus entry {e['id']}: {path} not found")
        out.append(CorpusEntry(e["id"], path, e.get("order"), e.get("frattini_order"), tuple(e.get("tags", ()))))
    return out


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _corpus_task(kind: str, entry: CorpusEntry, seed: int) -> list[LemmaReport]:
    from . import lemmas as L

    G = entry.load()
    if kind == "frattini":
        rep = L.check_frattini_nilpotent(G)
        if entry.order is not None:
            rep.check("declared order matches", G.order() == entry.order, {"declared": entry.order, "computed": G.order()})
        if entry.frattini_order is not None:
            phi = frattini(G).order()
            rep.check("declared Phi order matches", phi == entry.frattini_order, {"declared": entry.frattini_order, "computed": phi})
        return [rep]
    if kind == "ffn":
        from .lattice import all_subgroups

        return [L.check_fFN(G, N) for N in all_subgroups(G).normal_subgroups()]
    if kind == "profinite-center":
        return [L.check_profinite_center(G)]
    if kind == "km":
        rng = random.Random(f"{seed}:{entry.id}")
        return [L.verify_km_identity(G, K, N, M) for K, N, M in L.random_km_instances(G, KM_SAMPLES_PER_GROUP, rng)]
    if kind == "hom-inclusion":
        return [L.check_hom_frattini_inclusion(a) for a in L.quotient_epimorphisms(G)]
    raise ValueError(f"unknown corpus task {kind!r}")


def _residual_instances(corpus: dict[str, CorpusEntry]) -> list[LemmaReport]:
    from .homs import Homomorphism, quotient
    from .lemmas import QuotientFamily, residual_instance_check
    from .structure import center

    G = corpus["s3xz5"].load()
    S3 = FiniteGroup(3, ["(1 2 3)", "(1 2)"], name="S3")
    Z5 = FiniteGroup(5, ["(1 2 3 4 5)"], name="Z5")
    p1 = Homomorphism(G, S3, [g[:3] for g in G.generators], name="proj_S3")
    p2 = Homomorphism(G, Z5, [g[3:] - 3 for g in G.generators], name="proj_Z5")
    Q8 = corpus["q8"].load()
    _, to_v4 = quotient(Q8, center(Q8), name="V4")
    trivial = corpus["trivial"].load()
    return [
        residual_instance_check(QuotientFamily(G, [p1, p2])),
        residual_instance_check(QuotientFamily(Q8, [to_v4])),
        residual_instance_check(QuotientFamily(trivial, [])),
    ]


def _allenby_instances(corpus: dict[str, CorpusEntry]) -> list[LemmaReport]:
    from .homs import Homomorphism
    from .lemmas import allenby_pipeline

    out = []
    S5 = corpus["s5"].load()
    A5 = FiniteGroup(5, ["(1 2 3)", "(1 2 3 4 5)"], name="A5")
    out.append(allenby_pipeline(S5, Subgroup(S5, A5.generators, name="A5"), identity_hom(A5), P.parse_cycles("(1 2 3)", 5)))
    G = corpus["z2xa5"].load()
    N = Subgroup(G, ["(3 4 5)", "(3 4 5 6 7)"], name="A5")
    Ng = as_group(N, "A5")
    f = Homomorphism(Ng, A5, [g[2:] - 2 for g in Ng.generators], name="proj")
    out.append(allenby_pipeline(G, N, f, P.parse_cycles("(3 4 5)", 7)))
    return out


def _reduction_task(name: str, q: int, strict: bool) -> list[LemmaReport]:
    from .repmod import ingest_rep, reduction_check

    rep = ingest_rep(data_dir() / "reps" / f"{name}.rep", strict=strict)
    out = reduction_check(rep, q)
    out.inputs["entry"] = name
    return [out]


def _symplectic_task(g: int, p: int) -> list[LemmaReport]:
    from .repmod import sp_generation_check

    return [sp_generation_check(g, p)]


def presentation_report(path: Path) -> LemmaReport:
    from .presentation import abelianization, alternating_obstruction, parse_presentation

    rep = LemmaReport("presentation", inputs={"entry": path.stem})
    pres = parse_presentation(path.read_text(encoding="utf-8"))
    inv = abelianization(pres)
    rep.inputs.update({"rank": inv.rank, "torsion": list(inv.torsion)})
    obs = alternating_obstruction(inv)
    rep.check(
        "invariant factors form a divisibility chain",
        all(b % a == 0 for a, b in zip(inv.torsion, inv.torsion[1:])),
        {"rank": inv.rank, **{f"d{i + 1}": d for i, d in enumerate(inv.torsion)}},
    )
    rep.check("blocks A3 iff blocks A4", obs["blocks_A3"] == obs["blocks_A4"], {})
    rep.check(f"blocks_A3={obs['blocks_A3']} blocks_A4={obs['blocks_A4']}", True, {}, kind="observation")
    return rep


def _presentation_task(path: str) -> list[LemmaReport]:
    return [presentation_report(Path(path))]


def suite_tasks(name: str, config: RunConfig, seed: int = 0) -> list[tuple]:
    corpus = load_corpus()
    names = SUITES if name == "all" else (name,)
    tasks: list[tuple] = []
    for s in names:
        if s == "frattini":
            tasks += [("corpus", "frattini", e, seed) for e in corpus]
        elif s == "lemmas":
            for kind in ("ffn", "profinite-center", "km", "hom-inclusion"):
                tasks += [("corpus", kind, e, seed) for e in corpus]
            tasks += [("residual",), ("allenby",)]
        elif s == "reduction":
            tasks += [("reduction", "elem_p5_q11", 11, config.paper_strict), ("reduction", "elem_p7_q29", 29, config.paper_strict)]
        elif s == "symplectic":
            tasks += [("symplectic", 1, 3), ("symplectic", 1, 5), ("symplectic", 2, 3)]
        elif s == "presentation":
            tasks += [("presentation", str(p)) for p in sorted((data_dir() / "presentations").glob("*.pres"))]
        else:
            raise ValueError(f"unknown suite {s!r}")
    return tasks


def _task_label(task: tuple) -> tuple[str, str]:
    kind = task[0]
    if kind == "corpus":
        return task[1], task[2].id
    if kind == "reduction":
        return "reduction", task[1]
    if kind == "symplectic":
        return "sp-generation", f"g={task[1]},p={task[2]}"
    if kind == "presentation":
        return "presentation", Path(task[1]).stem
    return kind, kind


def run_task(task: tuple, caps_kwargs: dict | None = None) -> list[LemmaReport]:
    """Run one suite task; operational errors become error reports."""
    if caps_kwargs:
        with override_caps(**caps_kwargs):
            return _run_task(task)
    return _run_task(task)


def _run_task(task: tuple) -> list[LemmaReport]:
    lemma, label = _task_label(task)
    try:
        kind = task[0]
        if kind == "corpus":
            reports = _corpus_task(task[1], task[2], task[3])
        elif kind == "residual":
            reports = _residual_instances({e.id: e for e in load_corpus()})
        elif kind == "allenby":
            reports = _allenby_instances({e.id: e for e in load_corpus()})
        elif kind == "reduction":
            reports = _reduction_task(task[1], task[2], task[3])
        elif kind == "symplectic":
            reports = _symplectic_task(task[1], task[2])
        elif kind == "presentation":
            reports = _presentation_task(task[1])
        else:
            raise ValueError(f"unknown task {kind!r}")
    except (FrattiniLabError, OSError) as exc:
        return [LemmaReport(lemma, inputs={"entry": label}, error=f"{type(exc).__name__}: {exc}")]
    for r in reports:
        r.inputs.setdefault("entry", label)
    return reports


def run_suite(name: str, config: RunConfig, seed: int = 0) -> tuple[list[LemmaReport], int]:
    with config.caps_scope():
        tasks = suite_tasks(name, config, seed)
        kw = asdict(caps())
        if config.parallel > 1:
            with ProcessPoolExecutor(max_workers=config.parallel) as ex:
                results = list(ex.map(run_task, tasks, [kw] * len(tasks)))
        else:
            results = [run_task(t) for t in tasks]
    reports = [r for batch in results for r in batch]
    return reports, exit_code(reports)


def exit_code(reports: list[LemmaReport]) -> int:
    if any(r.verdict == "error" for r in reports):
        return 2
    if any(r.verdict == "fail" for r in reports):
        return 1
    return 0


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

_RANK = {"error": 0, "fail": 1, "pass": 2}


def _subject(r: LemmaReport) -> str:
    for key in ("entry", "group", "source"):
        if r.inputs.get(key):
            return str(r.inputs[key])
    return ",".join(f"{k}={v}" for k, v in r.inputs.items()) or "-"


def render_report(reports: list[LemmaReport], fmt: str = "text") -> str:
    ordered = sorted(reports, key=lambda r: _RANK[r.verdict])
    if fmt == "json":
        return "".join(json.dumps(r.to_dict(), default=str) + "\n" for r in ordered)
    counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "error")}
    lines = [f"# {len(reports)} reports: {counts['pass']} pass, {counts['fail']} fail, {counts['error']} error"]
    for r in ordered:
        if r.error is not None:
            lines.append(f"ERROR {r.lemma} {_subject(r)} {r.error}")
            continue
        orders = " ".join(f"{k}={v}" for k, v in r.summary_orders().items())
        lines.append(f"{r.verdict.upper()} {r.lemma} {_subject(r)} {orders}".rstrip())
        for s in r.failing_steps():
            lines.append(f"    failed: {s.description} {' '.join(s.witnesses)}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _emit(payload, args) -> None:
    if args.json:
        print(json.dumps(payload, default=str))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")


def cmd_frattini(args) -> int:
    G = load_group(args.group)
    res = frattini(G)
    payload = res.report()
    payload["generators"] = [format_element(G, g) for g in res.frattini.generators]
    _emit(payload, args)
    return 0


def cmd_maximals(args) -> int:
    G = load_group(args.group)
    maxes = sorted(maximal_subgroups(G), key=lambda M: M.order())
    if args.json:
        print(json.dumps([{"order": M.order(), "generators": [format_element(G, g) for g in M.generators]} for M in maxes]))
    else:
        for M in maxes:
            print(f"{M.order():>6}  " + " ; ".join(format_element(G, g) for g in M.generators))
    return 0


def _subgroup_arg(G: FiniteGroup, text: str | None, what: str) -> Subgroup:
    if text is None:
        raise FrattiniLabError(f"--{what} is required")
    return Subgroup(G, parse_elements(G, text), name=what)


def build_lemma_report(args) -> list[LemmaReport]:
    from . import lemmas as L

    lemma = args.lemma
    if lemma == "hom-inclusion":
        return [L.check_hom_frattini_inclusion(load_hom(args.hom[0]))]
    if lemma == "residual":
        homs = [load_hom(h) for h in args.hom]
        if not homs:
            raise FrattiniLabError("--hom is required (repeat for each family member)")
        src = homs[0].source
        return [L.residual_instance_check(L.QuotientFamily(src, homs))]
    G = load_group(args.group)
    if lemma == "frattini-nilpotent":
        return [L.check_frattini_nilpotent(G)]
    if lemma == "profinite-center":
        return [L.check_profinite_center(G)]
    if lemma == "ffn":
        return [L.check_fFN(G, _subgroup_arg(G, args.normal, "normal"))]
    if lemma == "km":
        return [L.verify_km_identity(G, _subgroup_arg(G, args.K, "K"), _subgroup_arg(G, args.normal, "normal"), _subgroup_arg(G, args.M, "M"))]
    if lemma == "allenby":
        N = _subgroup_arg(G, args.normal, "normal")
        f = load_hom(args.hom[0]) if args.hom else identity_hom(as_group(N, "N"))
        if args.x is None:
            raise FrattiniLabError("--x is required")
        return [L.allenby_pipeline(G, N, f, parse_elements(G, args.x)[0])]
    raise FrattiniLabError(f"unknown lemma {lemma!r}")


def cmd_verify(args) -> int:
    try:
        reports = build_lemma_report(args)
    except FrattiniLabError as exc:
        reports = [LemmaReport(args.lemma, error=f"{type(exc).__name__}: {exc}")]
    sys.stdout.write(render_report(reports, "json" if args.json else "text"))
    return exit_code(reports)


def cmd_reduce(args) -> int:
    from .repmod import ingest_rep, reduce_rep

    rep = ingest_rep(args.rep, strict=args.paper_strict)
    G = reduce_rep(rep, args.q)
    payload = {"p": rep.p, "q": args.q, "N": rep.N, "order": G.order()}
    if args.out:
        from .io import format_group

        Path(args.out).write_text(format_group(G), encoding="utf-8")
        payload["written"] = args.out
    _emit(payload, args)
    return 0


def cmd_recognize(args) -> int:
    from .repmod import classical_group_order, ingest_rep, psl_image, recognize_image, reduce_rep

    if args.rep:
        if args.q is None:
            raise FrattiniLabError("--q is required with --rep")
        G = reduce_rep(ingest_rep(args.rep, strict=args.paper_strict), args.q)
    elif args.group:
        G = load_group(args.group)
    else:
        raise FrattiniLabError("give --group or --rep")
    if G.matrix is None:
        raise FrattiniLabError("recognition needs a matrix group")
    info = G.matrix
    if args.kind == "sp":
        expected = classical_group_order("sp", g=info.N // 2, q=info.q)
    else:
        expected = classical_group_order(args.kind, N=info.N, q=info.q)
    ok = recognize_image(G, args.kind)
    order = psl_image(G).order() if args.kind == "psl" else G.order()
    _emit({"kind": args.kind, "N": info.N, "q": info.q, "order": order, "expected": expected, "recognized": ok}, args)
    return 0 if ok else 1


def cmd_sp_check(args) -> int:
    from .repmod import sp_generation_check

    rep = sp_generation_check(args.g, args.p)
    sys.stdout.write(render_report([rep], "json" if args.json else "text"))
    return exit_code([rep])


def cmd_abelianize(args) -> int:
    from .presentation import abelianization, parse_presentation

    inv = abelianization(parse_presentation(Path(args.file).read_text(encoding="utf-8")))
    _emit({"rank": inv.rank, "torsion": list(inv.torsion), "group": str(inv)}, args)
    return 0


def cmd_obstruct(args) -> int:
    from .presentation import abelianization, alternating_obstruction, parse_presentation

    inv = abelianization(parse_presentation(Path(args.file).read_text(encoding="utf-8")))
    _emit(alternating_obstruction(inv), args)
    return 0


def cmd_suite(args, config: RunConfig) -> int:
    reports, code = run_suite(args.name, config, seed=args.seed)
    sys.stdout.write(render_report(reports, config.output))
    return code


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    allowed = {"lattice_cap", "enumeration_cap", "parallel", "paper_strict", "output"}
    unknown = set(data) - allowed
    if unknown:
        raise FrattiniLabError(f"unknown config keys: {sorted(unknown)}")
    return data


def make_config(args) -> RunConfig:
    base = _load_config_file(args.config)
    over = {
        "lattice_cap": args.lattice_cap,
        "enumeration_cap": args.cap,
        "parallel": args.parallel,
        "paper_strict": True if args.paper_strict else None,
        "output": "json" if args.json else None,
    }
    merged = {"enumeration_cap": caps().enumeration, **base, **{k: v for k, v in over.items() if v is not None}}
    return RunConfig(**merged)


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the subcommand from being reset by the subparser
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, help="element enumeration cap")
    common.add_argument("--lattice-cap", type=int, help="largest group order for full lattice enumeration")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--parallel", type=int, help="worker processes for suites")
    common.add_argument("--paper-strict", action="store_true", help="require p = 3 mod 4 for representations")
    common.add_argument("--config", help="JSON file with defaults (flags win)")

    ap = argparse.ArgumentParser(prog="frattini-lab", description=__doc__.splitlines()[0], parents=[common], allow_abbrev=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frattini", parents=[common], allow_abbrev=False, help="exact Frattini subgroup of a group file")
    p.add_argument("group")
    p = sub.add_parser("maximals", parents=[common], allow_abbrev=False, help="maximal subgroups of a group file")
    p.add_argument("group")

    p = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="run one lemma check")
    p.add_argument("--lemma", required=True, choices=LEMMAS)
    p.add_argument("--group")
    p.add_argument("--normal", help="generators of N, separated by ';'")
    p.add_argument("--K", help="generators of K, separated by ';'")
    p.add_argument("--M", help="generators of M, separated by ';'")
    p.add_argument("--hom", action="append", default=[], help="homomorphism file (repeatable)")
    p.add_argument("--x", help="element of N separated by f")

    p = sub.add_parser("reduce", parents=[common], allow_abbrev=False, help="reduce a cyclotomic representation mod q")
    p.add_argument("--rep", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", help="write the image as a group file")

    p = sub.add_parser("recognize", parents=[common], allow_abbrev=False, help="compare a matrix group with SL, PSL or Sp")
    p.add_argument("--kind", required=True, choices=("sl", "psl", "sp"))
    p.add_argument("--group")
    p.add_argument("--rep")
    p.add_argument("--q", type=int)

    p = sub.add_parser("sp-check", parents=[common], allow_abbrev=False, help="transvections generate Sp(2g, p)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--p", type=int, required=True)

    p = sub.add_parser("abelianize", parents=[common], allow_abbrev=False, help="abelian invariants of a presentation file")
    p.add_argument("file")
    p = sub.add_parser("obstruct", parents=[common], allow_abbrev=False, help="A3/A4 surjection obstruction of a presentation file")
    p.add_argument("file")

    p = sub.add_parser("suite", parents=[common], allow_abbrev=False, help="run a corpus suite")
    p.add_argument("name", choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0, help="seed for sampled instances")
    return ap


COMMANDS = {
    "frattini": cmd_frattini,
    "maximals": cmd_maximals,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "recognize": cmd_recognize,
    "sp-check": cmd_sp_check,
    "abelianize": cmd_abelianize,
    "obstruct": cmd_obstruct,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for key, default in (("cap", None), ("lattice_cap", None), ("json", False), ("parallel", None), ("paper_strict", False), ("config", None)):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        config = make_config(args)
        if args.command == "suite":
            return cmd_suite(args, config)
        with config.caps_scope():
            return COMMANDS[args.command](args)
    except (FrattiniLabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
