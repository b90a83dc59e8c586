"""Command-line driver: model files in, verification suites and scans out.

Exit codes: 0 pass, 1 property/certification failure, 2 config error,
3 resource (budget) error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .errors import BudgetError, ChainsepError, ConfigError
from .expansionals import (
    contraction_check,
    covering_bound,
    estimate_uniform_bound,
)
from .gibbs import (
    check_partition_ratios,
    factorization_error,
    gibbs,
    marginal,
    marginal_inverse_norm,
    mutual_information,
)
from .linalg import LocalOperator, op_norm, trace_norm
from .model import ModelSpec, RegionsABC
from .separability import (
    VERDICT_SEPARABLE,
    certify_marginal,
    negativity,
    tail_norm_bound,
    tail_term,
)

_FMT = "%.17g"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return _FMT % x
    return str(x)


def _config_hash(cfg: dict) -> str:
    text = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _write_csv(path: Path, header_meta: dict, columns, rows):
    lines = [f"# chainsep {__version__}"]
    for key in sorted(header_meta):
        lines.append(f"# {key}={_fmt(header_meta[key])}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _pmap(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Config handling
# ---------------------------------------------------------------------------

_DEFAULTS = {
    "s": 0.5,
    "seed": 0,
    "jobs": 1,
    "budget": 4096,
    "instances": 100,
    "k_range": [1, 3],
    "tolerances": {"negativity_zero": 1e-12},
    "corpus": {"max_range": 2, "strength": 2.0, "min_sites": 4, "max_sites": 8},
}


def load_config(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    cfg = dict(_DEFAULTS)
    cfg.update(raw)
    tol = dict(_DEFAULTS["tolerances"])
    tol.update(raw.get("tolerances", {}))
    cfg["tolerances"] = tol
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    for key in ("seed", "jobs", "budget", "instances"):
        if not isinstance(cfg[key], int) or cfg[key] < 0:
            raise ConfigError(f"{key!r} must be a nonnegative integer")
    if cfg["jobs"] < 1:
        raise ConfigError("'jobs' must be >= 1")
    for name, value in cfg["tolerances"].items():
        if not isinstance(value, (int, float)) or value <= 0:
            raise ConfigError(f"tolerance {name!r} must be positive")
    if not isinstance(cfg["s"], (int, float)) or abs(cfg["s"]) > 1:
        raise ConfigError("'s' must be a real number with |s| <= 1")
    kr = cfg["k_range"]
    if (
        not isinstance(kr, list)
        or len(kr) != 2
        or not all(isinstance(k, int) and k >= 0 for k in kr)
        or kr[0] > kr[1]
    ):
        raise ConfigError("'k_range' must be [k_min, k_max] with 0 <= k_min <= k_max")
    if "geometry" in cfg:
        geo = cfg["geometry"]
        if not isinstance(geo, dict) or not all(k in geo for k in ("a", "b", "c")):
            raise ConfigError("'geometry' must have lists 'a', 'b', 'c'")
        for part in ("a", "b", "c"):
            sizes = geo[part]
            if not sizes or not all(isinstance(v, int) and v >= 1 for v in sizes):
                raise ConfigError(f"geometry '{part}' must be a list of sizes >= 1")
        model = _model_spec(cfg) if "model" in cfg else None
        d = 2
        for na in geo["a"]:
            for nb in geo["b"]:
                for nc in geo["c"]:
                    if d ** (na + nb + nc) > cfg["budget"]:
                        raise ConfigError(
                            f"grid point |A|={na},|B|={nb},|C|={nc} exceeds "
                            f"budget {cfg['budget']}"
                        )
    if "model" in cfg:
        _model_spec(cfg)


def _model_spec(cfg: dict) -> ModelSpec:
    model = cfg["model"]
    if not isinstance(model, dict):
        raise ConfigError("'model' must be an object")
    return ModelSpec.from_dict(model)


def _meta(cfg: dict, **extra) -> dict:
    meta = {"config_hash": _config_hash(cfg), "seed": cfg["seed"]}
    meta.update(extra)
    return meta


def _random_spec(seed: int, corpus: dict) -> ModelSpec:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(corpus["min_sites"], corpus["max_sites"] + 1))
    r = int(rng.integers(1, corpus["max_range"] + 1))
    return ModelSpec(
        "random",
        {"range": r, "strength": corpus["strength"]},
        sites=n,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_check_config(cfg: dict, out: Path) -> int:
    print("config ok")
    return 0


def cmd_verify_lemmas(cfg: dict, out: Path) -> int:
    corpus = dict(_DEFAULTS["corpus"])
    corpus.update(cfg.get("corpus", {}))
    budget = cfg["budget"]
    base_seed = cfg["seed"]

    def run_instance(i: int):
        seed = base_seed * 100003 + i
        spec = _random_spec(seed, corpus)
        ia = spec.build()
        n = len(ia.sites)
        rng = np.random.default_rng(seed + 1)
        na = int(rng.integers(1, max(2, n - 1)))
        nc = int(rng.integers(1, max(2, n - na)))
        nb = n - na - nc
        if nb < 1:
            na, nb, nc = 1, n - 2, 1
        regions = RegionsABC.from_sizes(na, nb, nc)

        pr = check_partition_ratios(ia, regions.a, regions.b, budget)
        g = gibbs(ia, regions.all_sites, budget)
        rho_ac = marginal(g, regions.ac)
        rho_a = marginal(g, regions.a)
        rho_c = marginal(g, regions.c)
        from .linalg import embed

        diff = rho_ac - (embed(rho_a, regions.ac) @ embed(rho_c, regions.ac))
        t1 = trace_norm(diff)
        mi = mutual_information(ia, regions, budget)
        pinsker_ok = t1**2 <= 2 * mi + 1e-9
        norm_order_ok = op_norm(diff) <= t1 + 1e-12

        dim = 2 ** len(regions.ac)
        x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        x_op = LocalOperator(regions.ac, (x + x.conj().T) / 2, 2)
        # reuse rho on A as a state for the contraction map over the A sites
        contr = contraction_check(rho_a, x_op)

        floor = marginal_inverse_norm(ia, regions, budget)
        return (
            i,
            seed,
            n,
            na,
            nb,
            nc,
            pr.ratio_bound_ok,
            pr.size_bounds_ok,
            pr.split_bounds_ok,
            pinsker_ok,
            contr.ok,
            floor.ok,
            norm_order_ok,
        )

    rows = _pmap(run_instance, range(cfg["instances"]), cfg["jobs"])
    columns = [
        "instance",
        "seed",
        "n",
        "n_a",
        "n_b",
        "n_c",
        "z_ratio_bound",
        "z_size_bounds",
        "z_split_bounds",
        "pinsker",
        "contraction",
        "marginal_floor",
        "norm_ordering",
    ]
    _write_csv(out / "verify_lemmas.csv", _meta(cfg), columns, rows)
    all_ok = all(all(bool(v) for v in row[6:]) for row in rows)
    print(f"verify-lemmas: {'PASS' if all_ok else 'FAIL'} ({len(rows)} instances)")
    return 0 if all_ok else 1


def _geometry_grid(cfg: dict):
    geo = cfg.get("geometry")
    if geo is None:
        raise ConfigError("this subcommand requires a 'geometry' section")
    return [
        (na, nb, nc)
        for na in geo["a"]
        for nb in geo["b"]
        for nc in geo["c"]
    ]


def cmd_scan_negativity(cfg: dict, out: Path) -> int:
    spec = _model_spec(cfg)
    budget = cfg["budget"]
    model_id = hashlib.sha256(spec.canonical_json().encode()).hexdigest()[:12]

    def run_point(point):
        na, nb, nc = point
        n = na + nb + nc
        ia = ModelSpec(spec.family, spec.params, n, spec.seed).build()
        regions = RegionsABC.from_sizes(na, nb, nc)
        g = gibbs(ia, regions.all_sites, budget)
        rho_ac = marginal(g, regions.ac)
        neg = negativity(rho_ac, (regions.a, regions.c))
        mi = mutual_information(ia, regions, budget)
        fe = factorization_error(ia, regions, budget)
        if nb >= ia.interaction_range:
            verdict = certify_marginal(ia, regions, budget=budget, s=cfg["s"]).verdict
        else:
            verdict = "SkippedSmallB"
        ppt_exact = 2 ** (na + nc) <= 6
        return (
            model_id,
            na,
            nb,
            nc,
            neg.negativity,
            neg.min_pt_eig,
            mi,
            fe.op_norm_err,
            verdict,
            ppt_exact,
        )

    rows = _pmap(run_point, _geometry_grid(cfg), cfg["jobs"])
    columns = [
        "model_id",
        "n_a",
        "n_b",
        "n_c",
        "negativity",
        "min_pt_eig",
        "mutual_information",
        "factorization_op_norm",
        "certificate_verdict",
        "ppt_exact",
    ]
    _write_csv(out / "scan_negativity.csv", _meta(cfg), columns, rows)
    print(f"scan-negativity: wrote {len(rows)} rows")
    return 0


def cmd_scan_decay(cfg: dict, out: Path) -> int:
    spec = _model_spec(cfg)
    budget = cfg["budget"]
    geo = cfg.get("geometry")
    if geo is None:
        raise ConfigError("scan-decay requires a 'geometry' section")
    na, nc = geo["a"][0], geo["c"][0]
    k_lo, k_hi = cfg["k_range"]

    # tail-term scan at the largest gap in the grid
    nb = max(geo["b"])
    n = na + nb + nc
    ia = ModelSpec(spec.family, spec.params, n, spec.seed).build()
    regions = RegionsABC.from_sizes(na, nb, nc)
    g_emp = covering_bound(ia, regions, range(k_lo, k_hi + 2), cfg["s"], budget)
    tail_rows = []
    for k in range(k_lo, k_hi + 1):
        t = tail_term(ia, regions, k, cfg["s"], budget)
        bound = tail_norm_bound(g_emp, k, ia.interaction_range)
        tail_rows.append((k, t.norm, bound))
    _write_csv(
        out / "decay_tail.csv",
        _meta(cfg, g_emp=g_emp, n_a=na, n_b=nb, n_c=nc),
        ["k", "tail_norm", "bound"],
        tail_rows,
    )

    def run_gap(nb: int):
        n = na + nb + nc
        ia = ModelSpec(spec.family, spec.params, n, spec.seed).build()
        regions = RegionsABC.from_sizes(na, nb, nc)
        fe = factorization_error(ia, regions, budget)
        mi = mutual_information(ia, regions, budget)
        return (nb, fe.op_norm_err, fe.trace_norm_err, mi)

    gap_rows = _pmap(run_gap, sorted(geo["b"]), cfg["jobs"])
    points = [(nb, mi) for nb, _, _, mi in gap_rows if mi > 1e-14]
    if len(points) >= 2:
        xs = np.array([p[0] for p in points], dtype=float)
        ys = np.log([p[1] for p in points])
        slope, intercept = np.polyfit(xs, ys, 1)
        fit = {"fit_C": float(np.exp(intercept)), "fit_alpha": float(-slope)}
    else:
        fit = {"fit_C": float("nan"), "fit_alpha": float("nan")}
    _write_csv(
        out / "decay_gap.csv",
        _meta(cfg, g_emp=g_emp, **fit),
        ["n_b", "factorization_op_norm", "factorization_trace_norm", "mutual_information"],
        gap_rows,
    )
    print(f"scan-decay: wrote {len(tail_rows)} tail rows, {len(gap_rows)} gap rows")
    return 0


def cmd_certify(cfg: dict, out: Path) -> int:
    spec = _model_spec(cfg)
    budget = cfg["budget"]

    def run_point(point):
        na, nb, nc = point
        n = na + nb + nc
        ia = ModelSpec(spec.family, spec.params, n, spec.seed).build()
        regions = RegionsABC.from_sizes(na, nb, nc)
        if nb < ia.interaction_range:
            return point, None
        rep = certify_marginal(ia, regions, budget=budget, s=cfg["s"])
        return point, rep

    results = _pmap(run_point, _geometry_grid(cfg), cfg["jobs"])
    rows = []
    margins_rows = []
    for (na, nb, nc), rep in results:
        if rep is None:
            rows.append((na, nb, nc, -1, "SkippedSmallB", float("nan"), float("nan")))
            continue
        rows.append(
            (
                na,
                nb,
                nc,
                rep.k0,
                rep.verdict,
                rep.reconstruction_rel_err,
                rep.negativity_cross_check,
            )
        )
        for chk in rep.per_k:
            margins_rows.append(
                (na, nb, nc, rep.k0, chk.k, chk.norm, chk.identity_budget, chk.ball_margin)
            )
        report_path = out / f"certify_a{na}_b{nb}_c{nc}.json"
        report_path.write_text(
            json.dumps(
                {
                    "verdict": rep.verdict,
                    "k0": rep.k0,
                    "attempted_k0": list(rep.attempted_k0),
                    "gamma_k0": rep.gamma_k0,
                    "z_ratio": rep.z_ratio,
                    "reconstruction_rel_err": rep.reconstruction_rel_err,
                    "negativity_cross_check": rep.negativity_cross_check,
                    "k0_closed_form": rep.k0_closed_form,
                    "constants_used": rep.constants_used,
                    "per_k": [
                        {
                            "k": c.k,
                            "tail_norm": c.norm,
                            "identity_budget": c.identity_budget,
                            "ball_margin": c.ball_margin,
                            "factorial_bound": c.factorial_bound,
                        }
                        for c in rep.per_k
                    ],
                },
                indent=2,
            )
        )
    _write_csv(
        out / "certify_summary.csv",
        _meta(cfg),
        ["n_a", "n_b", "n_c", "k0", "verdict", "reconstruction_rel_err", "negativity"],
        rows,
    )
    if margins_rows:
        _write_csv(
            out / "certify_margins.csv",
            _meta(cfg),
            ["n_a", "n_b", "n_c", "k0", "k", "tail_norm", "identity_budget", "ball_margin"],
            margins_rows,
        )

    # exit 0 iff, per (|A|,|C|) group, the certified points form a nonempty
    # suffix of the |B| scan
    groups: dict[tuple[int, int], list[tuple[int, str]]] = {}
    for na, nb, nc, _, verdict, _, _ in rows:
        groups.setdefault((na, nc), []).append((nb, verdict))
    all_ok = True
    for key, entries in groups.items():
        entries.sort()
        verdicts = [v for _, v in entries]
        certified = [v == VERDICT_SEPARABLE for v in verdicts]
        last_bad = max((i for i, c in enumerate(certified) if not c), default=-1)
        all_ok &= bool(certified) and last_bad < len(certified) - 1
    print(f"certify: {'PASS' if all_ok else 'FAIL'} ({len(rows)} grid points)")
    return 0 if all_ok else 1


def cmd_estimate_g(cfg: dict, out: Path) -> int:
    spec = _model_spec(cfg)
    ia = spec.build()
    size_grid = [tuple(p) for p in cfg.get("size_grid", [[2, 2], [2, 3], [3, 3]])]
    s_grid = cfg.get("s_grid", [0.25, 0.5, 1.0])
    est = estimate_uniform_bound(ia, size_grid, s_grid, cfg["budget"])
    rows = [
        (nx, ny, s, ne, ni) for nx, ny, s, ne, ni in est.entries
    ]
    _write_csv(
        out / "estimate_g.csv",
        _meta(cfg, g_emp=est.value),
        ["n_x", "n_y", "s", "norm_e", "norm_e_inv"],
        rows,
    )
    print(f"estimate-g: g_emp = {est.value:.12g}")
    return 0


_COMMANDS = {
    "verify-lemmas": cmd_verify_lemmas,
    "scan-negativity": cmd_scan_negativity,
    "scan-decay": cmd_scan_decay,
    "certify": cmd_certify,
    "estimate-g": cmd_estimate_g,
    "check-config": cmd_check_config,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chainsep",
        description="Verification suites and scans for thermal-chain separability.",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("--config", required=True, help="path to a JSON config file")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--jobs", type=int, help="override the worker count")
    parser.add_argument("--budget", type=int, help="override the dense-size budget")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        for key in ("seed", "jobs", "budget"):
            value = getattr(args, key)
            if value is not None:
                cfg[key] = value
        validate_config(cfg)
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        return _COMMANDS[args.command](cfg, out)
    except BudgetError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ChainsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
